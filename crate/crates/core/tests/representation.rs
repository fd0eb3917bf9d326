use proptest::prelude::*;
use xcorr::field::build_field;
use xcorr::spectrum::{spectrum, DecimationCase, Method, SpectrumOptions};
use xcorr::ternary::{ternary_params, verify_theorem4, Variant};

/// First monic primitive polynomial of degree `n` over GF(p) other than `skip`,
/// in lexicographic order of the lower coefficients.
fn another_primitive(p: u32, n: u32, skip: &[u32]) -> Vec<u32> {
    let total = (p as u64).pow(n);
    for k in 1..total {
        let mut poly = Vec::with_capacity(n as usize + 1);
        let mut v = k;
        for _ in 0..n {
            poly.push((v % p as u64) as u32);
            v /= p as u64;
        }
        poly.push(1);
        if poly != skip && build_field(p, n, Some(&poly)).is_ok() {
            return poly;
        }
    }
    panic!("no second primitive polynomial for GF({p}^{n})");
}

#[test]
fn ternary_r2_spectrum_does_not_depend_on_the_polynomial() {
    let params = ternary_params(2, Variant::R).unwrap();
    let conway = params.field().unwrap();
    let other_poly = another_primitive(3, params.n, conway.poly());
    let other = build_field(3, params.n, Some(&other_poly)).unwrap();
    assert_ne!(conway.poly(), other.poly());

    let opts = SpectrumOptions::default();
    let a = spectrum(&params.case(&conway).unwrap(), &opts, true).unwrap();
    let b = spectrum(&params.case(&other).unwrap(), &opts, true).unwrap();
    assert_eq!(a, b);

    let rep = verify_theorem4(&params, &other, &opts).unwrap();
    assert!(rep.passed(), "{:?}", rep.verdict);
}

#[test]
fn binary_spectrum_does_not_depend_on_the_polynomial() {
    let conway = build_field(2, 8, None).unwrap();
    let other = build_field(2, 8, Some(&another_primitive(2, 8, conway.poly()))).unwrap();
    let opts = SpectrumOptions::default();
    for d in [7, 11, 13, 127] {
        let a = spectrum(&DecimationCase::new(&conway, d).unwrap(), &opts, true).unwrap();
        let b = spectrum(&DecimationCase::new(&other, d).unwrap(), &opts, true).unwrap();
        assert_eq!(a, b, "d = {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn naive_and_fast_agree(
        (p, n) in prop::sample::select(vec![(2u32, 6u32), (2, 7), (3, 4), (3, 5), (5, 3), (7, 3)]),
        d_seed in any::<u64>(),
        include_zero in any::<bool>(),
    ) {
        let ctx = build_field(p, n, None).unwrap();
        let d = 1 + d_seed % (ctx.order() - 2);
        let case = DecimationCase::new(&ctx, d).unwrap();
        let naive = spectrum(&case, &SpectrumOptions::with_method(Method::Naive), include_zero).unwrap();
        let fast = spectrum(&case, &SpectrumOptions::with_method(Method::Fast), include_zero).unwrap();
        prop_assert_eq!(naive, fast);
    }
}
