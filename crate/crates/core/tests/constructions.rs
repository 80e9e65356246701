// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use graphcodes::concat::{concat_rs, triple_concat, triple_sizes};
use graphcodes::descriptor::{self, Descriptor};
use graphcodes::dualbch::{weil_sampled, TracePolynomial};
use graphcodes::metric::natural_metric;
use graphcodes::report::Certification;
use graphcodes::{
    character_sum, code_distance, dualbch_codeword, frobenius_reduce, rs_generate, singleton_check, stczd_basis,
    stczd_rs_explicit, tensor_code, warmup_codeword, DistanceOptions, Error, FieldContext, FieldElement, Metric,
    Polynomial, Rational,
};

#[test]
fn weil_bound_randomized_up_to_t10() {
    for t in [7u32, 8, 9, 10] {
        let ctx = FieldContext::new(t).unwrap();
        for e in [3usize, 5, 7, 9] {
            let r = weil_sampled(&ctx, e, 300, 1000 + t as u64).unwrap();
            assert!(r.pass, "t={t} e={e} max |S|={} bound {}", r.max_abs, r.bound);
        }
    }
}

#[test]
fn reduction_agrees_on_long_polynomials() {
    let ctx = FieldContext::new(7).unwrap();
    let coeffs: Vec<FieldElement> = (0..21u32).map(|i| FieldElement(((i * 37 + 11) % 128) | 1)).collect();
    let p = Polynomial::new(coeffs);
    let r = frobenius_reduce(&p, &ctx);
    assert_eq!(character_sum(&p, &ctx).unwrap(), character_sum(&r, &ctx).unwrap());
    assert!(r.degree().unwrap() < p.degree().unwrap());
}

#[test]
fn warmup_words_for_every_alpha_are_codewords() {
    let ctx = FieldContext::new(5).unwrap();
    let code = graphcodes::dualbch_basis(ctx, 3).unwrap().code;
    for a in ctx.elements() {
        let w = warmup_codeword(a, &ctx).unwrap();
        assert!(code.contains(w.matrix()));
        let f = TracePolynomial::monomial(ctx, 3, 3, a).unwrap();
        assert_eq!(dualbch_codeword(&f), w);
    }
}

#[test]
fn descriptors_round_trip_through_disk() {
    let dir = std::env::temp_dir().join(format!("graphcodes-it-{}", std::process::id()));
    let ctx = FieldContext::new(3).unwrap();
    let code = stczd_rs_explicit(6, 4, ctx).unwrap();
    let mut desc = Descriptor::describe(
        "stczd-rs-explicit",
        BTreeMap::from([("n".into(), "6".into())]),
        &code,
        "x.basis",
    );
    desc.config.insert("seed".into(), 0.into());
    let path = descriptor::save(&dir, "x", &desc, &code).unwrap();
    let first = std::fs::read(&path).unwrap();
    let (back, again) = descriptor::load(&path).unwrap();
    assert_eq!(back, desc);
    assert_eq!(again.basis(), code.basis());
    descriptor::save(&dir, "x", &back, &again).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tensor_code_contains_stczd() {
    let rs = rs_generate(5, 3, FieldContext::new(3).unwrap()).unwrap();
    let tc = tensor_code(&rs).unwrap();
    let s = stczd_basis(&rs).unwrap();
    assert!(s.basis().iter().all(|w| tc.contains(w)));
    assert_eq!(tc.len(), 9);
}

#[test]
fn concat_rs_composite_is_certified() {
    let c = concat_rs(
        Rational::new(1, 2),
        10,
        2,
        3,
        Rational::new(2, 3),
        4,
        &DistanceOptions::default(),
    )
    .unwrap();
    assert_eq!(c.layers.len(), 2);
    assert_eq!(c.code.n(), 30);
    let r = code_distance(&c.code, Metric::Directed, &DistanceOptions::default()).unwrap();
    assert!(r.value().unwrap() >= c.code.claimed_distance().unwrap());
    assert!(singleton_check(&c.code, &r).unwrap());
}

#[test]
fn triple_concatenation_sizes_and_bounds() {
    let s = triple_sizes(Rational::new(1, 2), 8).unwrap();
    assert_eq!((s.n1, s.n2, s.n3), (4, 4, 9));
    assert!(matches!(
        triple_concat(Rational::new(1, 2), 4, 0, &DistanceOptions::default()),
        Err(Error::InvalidParameter(_))
    ));
    let c = triple_concat(Rational::new(1, 2), 8, 0, &DistanceOptions::default()).unwrap();
    assert_eq!(c.layers.len(), 4);
    assert_eq!(c.code.n(), 8 * 4 * 4 * 9);
    // too large to enumerate: sampled upper bound must respect the claimed lower bound
    let r = code_distance(&c.code, natural_metric(&c.code), &DistanceOptions::sampled(20, 1)).unwrap();
    assert_eq!(r.mode, Certification::Sampled);
    assert!(r.upper >= c.code.claimed_distance().unwrap());
}
