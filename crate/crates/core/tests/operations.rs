//! Worked examples for each public operation.

use std::collections::BTreeMap;

use wnalg::element::Element;
use wnalg::engine::{
    check_identity, classify_multilinear, left_nilpotency_index, nilpotency_profile, operator_word_apply, verify_bound, AlgebraKind,
    CheckOptions, ClassVerdict, EngineError, LeftNilpotency, OperatorWord,
};
use wnalg::frontend::{parse_expr, parse_identity, render_poly};
use wnalg::oracle::{IdentitySet, Oracle};
use wnalg::poly::MagmaPoly;
use wnalg::scalar::{Field, Scalar};
use wnalg::wlc::{canonicalize_l, wlc_basis, wlc_eval, wlc_mul, WlcMonomial};
use wnalg::wn::{is_annihilator, wn_basis, wn_eval, wn_mul, Wn, WnBasisElement, WnElement};
use wnalg::word::{enumerate_words, Multidegree, Word};

use WnBasisElement::{Gen, Pair, T1};

fn p(s: &str) -> MagmaPoly {
    parse_expr(s).unwrap()
}

fn md(m: &[u32]) -> Multidegree {
    Multidegree::from_multiplicities(m)
}

fn wlc(base: u32, l: &[u32], r: &[u32]) -> WlcMonomial {
    WlcMonomial::new(base, l, r).unwrap()
}

fn q(terms: Vec<(WnBasisElement, i64)>) -> WnElement {
    Element::from_terms(Field::Rational, terms)
}

#[test]
fn magma_products() {
    assert_eq!(p("x1").magma_mul(&p("x2")).unwrap(), p("(x1*x2)"));
    assert_eq!(p("x1 + x2").magma_mul(&p("x3")).unwrap(), p("(x1*x3) + (x2*x3)"));
    assert!(MagmaPoly::zero(Field::Rational).magma_mul(&p("x1")).unwrap().is_zero());
}

#[test]
fn substitution() {
    let asg = |pairs: &[(u32, &str)]| pairs.iter().map(|&(k, s)| (k, p(s))).collect::<BTreeMap<_, _>>();
    let f = parse_identity("v1*v2 = 0").unwrap();
    assert_eq!(f.substitute(&asg(&[(1, "x1"), (2, "x2*x3")])).unwrap(), p("x1*(x2*x3)"));
    let g = parse_identity("v1*v2 - v2*v1 = 0").unwrap();
    assert!(g.substitute(&asg(&[(1, "x1"), (2, "x1")])).unwrap().is_zero());
    let m = parse_identity("(v1*v2)*(v3*v4) = 0").unwrap();
    let r = m.substitute(&asg(&[(1, "x3"), (2, "x1"), (3, "x4"), (4, "x2")])).unwrap();
    assert_eq!(render_poly(&r), "(x3*x1)*(x4*x2)");
}

#[test]
fn word_enumeration() {
    assert_eq!(enumerate_words(&md(&[1, 1])).len(), 2);
    assert_eq!(enumerate_words(&md(&[1, 1, 1])).len(), 12);
    assert_eq!(enumerate_words(&md(&[1, 1, 1, 1])).len(), 120);
}

#[test]
fn sugar_expansion() {
    assert!(p("C(x1,x1)").is_zero());
    assert_eq!(p("A(x1,x2,x3)"), p("(x1*x2)*x3 - x1*(x2*x3)"));
    let t = p("T(x1,x2,x3,x4)");
    assert_eq!(t, p("A(x1*x2, x3, x4) - A(x2, x1*x3, x4) - 2 A(x1, x2*x3, x4)"));
    assert_eq!(t.len(), 6);
    let (w, _) = p("x1*((x2*x3)*x4)").terms().next().map(|(w, c)| (w.clone(), c.clone())).unwrap();
    assert_eq!(t.coeff(&w), Some(&Scalar::from_int(Field::Rational, 2)));
}

#[test]
fn l_part_canonicalization() {
    assert_eq!(canonicalize_l(&[3, 2, 4, 5]), vec![2, 3, 5, 4]);
    assert_eq!(canonicalize_l(&[2, 2, 5, 3]), vec![2, 2, 3, 5]);
    assert_eq!(canonicalize_l(&[3, 1, 2]), vec![3, 1, 2]);
}

#[test]
fn wlc_table() {
    let g = WlcMonomial::generator;
    assert_eq!(
        wlc_mul(&g(2), &g(1)),
        Element::from_terms(Field::Rational, [(wlc(1, &[2], &[]), 1)])
    );
    assert_eq!(
        wlc_mul(&g(4), &wlc(1, &[2], &[3])),
        Element::from_terms(Field::Rational, [(wlc(3, &[1, 2, 4], &[]), 1), (wlc(3, &[4, 1, 2], &[]), -1)])
    );
    assert!(wlc_mul(&wlc(1, &[2], &[3]), &wlc(4, &[5], &[])).is_zero());
}

#[test]
fn wlc_evaluation() {
    assert!(wlc_eval(&p("(x1*x2)*(x3*x4)")).unwrap().is_zero());
    assert_eq!(wlc_eval(&p("x1*(x2*x3)")).unwrap().to_string(), "x3 L[x2,x1]");
    assert_eq!(wlc_eval(&p("(x2*x1)*x3")).unwrap().to_string(), "x1 L[x2] R[x3]");
}

#[test]
fn wlc_basis_sizes() {
    assert_eq!(wlc_basis(&md(&[1, 1, 1])).len(), 12);
    assert_eq!(wlc_basis(&md(&[1, 1, 1, 1])).len(), 72);
    assert_eq!(wlc_basis(&md(&[1, 1])), vec![wlc(1, &[2], &[]), wlc(2, &[1], &[])]);
}

#[test]
fn wn_symmetries() {
    assert_eq!(
        WnBasisElement::t3(1, 2, 5, 3).to_string(),
        WnBasisElement::t3(1, 2, 3, 5).to_string()
    );
    assert_eq!(WnBasisElement::t4(1, 4, 2, 3), WnBasisElement::t4(1, 2, 3, 4));
    let t5 = WnBasisElement::t5(3, &[5, 1, 4, 2]).unwrap();
    assert_eq!(t5.to_string(), "(x3*x1) R[x2,x4,x5]");
}

#[test]
fn wn_table() {
    assert_eq!(wn_mul(&Gen(1), &T1(2, 3, 4)), q(vec![(WnBasisElement::t3(1, 3, 2, 4), -1)]));
    assert_eq!(
        wn_mul(&WnBasisElement::t2(1, 2, 3), &Gen(4)),
        q(vec![
            (WnBasisElement::t4(1, 2, 3, 4), 1),
            (WnBasisElement::t3(1, 2, 3, 4), 1),
            (WnBasisElement::t3(1, 3, 2, 4), 1),
        ])
    );
    assert_eq!(
        wn_mul(&WnBasisElement::t4(1, 2, 3, 4), &Gen(5)),
        q(vec![(WnBasisElement::t5(1, &[2, 3, 4, 5]).unwrap(), 1)])
    );
    // symmetric index groups give identical products
    assert_eq!(
        wn_mul(&WnBasisElement::T2(1, [2, 3]), &Gen(4)),
        wn_mul(&WnBasisElement::T2(1, [3, 2]), &Gen(4))
    );
}

#[test]
fn wn_evaluation() {
    assert!(wn_eval(&p("(x1*x2)*(x3*x4)")).unwrap().is_zero());
    assert_eq!(wn_eval(&p("x1*(x2*(x3*x4))")).unwrap().to_string(), "-1 A(x1, x3*x2, x4)");
    assert_eq!(
        wn_eval(&p("((x1*x2)*x3)*x4")).unwrap(),
        q(vec![
            (WnBasisElement::t4(1, 2, 3, 4), 1),
            (WnBasisElement::t3(1, 2, 3, 4), 2),
            (WnBasisElement::t3(2, 1, 3, 4), 1),
        ])
    );
}

#[test]
fn wn_basis_sizes() {
    let count = |m: &[u32], pred: fn(&WnBasisElement) -> bool| wn_basis(&md(m)).iter().filter(|b| pred(b)).count();
    assert_eq!(wn_basis(&md(&[1, 1, 1])).len(), 9);
    assert_eq!(count(&[1, 1, 1], |b| matches!(b, T1(..))), 6);
    assert_eq!(wn_basis(&md(&[1, 1, 1, 1])).len(), 16);
    assert_eq!(count(&[1, 1, 1, 1], |b| matches!(b, WnBasisElement::T3(..))), 12);
    assert_eq!(wn_basis(&md(&[1, 1, 1, 1, 1])).len(), 5);
}

#[test]
fn annihilators() {
    assert!(is_annihilator(&q(vec![(WnBasisElement::t3(1, 2, 3, 4), 1)])));
    assert!(!is_annihilator(&q(vec![(Pair(1, 2), 1)])));
    assert!(is_annihilator(&WnElement::zero(Field::Rational)));
}

#[test]
fn relation_matrices() {
    let met = IdentitySet::preset("met").unwrap();
    let o = Oracle::default();
    assert!(o.relation_rows(&met, &md(&[1, 1, 1])).unwrap().rows.is_empty());
    let m4 = o.relation_rows(&met, &md(&[1, 1, 1, 1])).unwrap();
    assert_eq!(m4.rows.len(), 24);
    assert!(m4.rows.iter().all(|r| r.len() == 1));
    let wnov2 = IdentitySet::preset("wnov2").unwrap();
    let m3 = o.relation_rows(&wnov2, &md(&[1, 1, 1])).unwrap();
    assert_eq!(m3.columns.len(), 12);
    assert_eq!(m3.rank(Field::Rational), 3);
}

#[test]
fn quotient_dimensions() {
    let o = Oracle::default();
    let wlc2 = IdentitySet::preset("wlc2").unwrap();
    let wnov2 = IdentitySet::preset("wnov2").unwrap();
    assert_eq!(o.quotient_dimension(&wlc2, &md(&[1, 1, 1])).unwrap(), 12);
    assert_eq!(o.quotient_dimension(&wnov2, &md(&[1, 1, 1, 1])).unwrap(), 16);
    assert_eq!(o.quotient_dimension(&wnov2, &md(&[1, 1, 1, 1, 1])).unwrap(), 5);
}

#[test]
fn memberships() {
    let o = Oracle::default();
    let met = IdentitySet::preset("met").unwrap();
    let nov2 = IdentitySet::preset("nov2").unwrap();
    assert!(o.membership(&p("(x1*x2)*(x3*x4)"), &met).unwrap());
    assert!(o.membership(&p("x1*(x2*(x3*(x4*x5)))"), &nov2).unwrap());
    assert!(!o.membership(&p("x1*(x2*(x3*x4))"), &nov2).unwrap());
}

#[test]
fn quotient_bases() {
    let o = Oracle::default();
    let met = IdentitySet::preset("met").unwrap();
    let words: Vec<String> = o.quotient_basis(&met, &md(&[1, 1])).unwrap().iter().map(Word::to_string).collect();
    assert_eq!(words, ["x1*x2", "x2*x1"]);
    let wnov2 = IdentitySet::preset("wnov2").unwrap();
    assert_eq!(o.quotient_basis(&wnov2, &md(&[1, 1, 1])).unwrap().len(), 9);
    assert_eq!(o.quotient_basis(&wnov2, &md(&[1, 1, 1, 1, 1])).unwrap().len(), 5);
}

#[test]
fn identity_checks() {
    let opts = CheckOptions {
        max_degree: 5,
        ..CheckOptions::default()
    };
    let rs = parse_identity("A(v1,v2,v3) - A(v1,v3,v2) = 0").unwrap();
    let wn = parse_identity("v1*A(v2,v3,v4) - A(v2,v3,v1*v4) = 0").unwrap();
    assert!(check_identity(AlgebraKind::Wnov, &rs, opts).unwrap().holds());
    assert!(check_identity(AlgebraKind::Wnov, &wn, opts).unwrap().holds());

    let lc = parse_identity("v1*(v2*v3) - v2*(v1*v3) = 0").unwrap();
    let report = check_identity(AlgebraKind::Wlc, &lc, opts).unwrap();
    assert!(!report.holds());
    let value = report.recheck().unwrap().unwrap();
    assert_eq!(value, wlc_eval(&p("x1*(x2*x3) - x2*(x1*x3)")).unwrap().to_string());
    assert_eq!(value, "-1 x3 L[x1,x2] + x3 L[x2,x1]");
}

#[test]
fn left_nilpotency() {
    match left_nilpotency_index(AlgebraKind::Wnov, 6).unwrap() {
        LeftNilpotency::Index { index, witness, value } => {
            assert_eq!(index, 5);
            assert_eq!(witness.to_string(), "x1*(x2*(x3*x4))");
            assert_eq!(value, "-1 A(x1, x3*x2, x4)");
        }
        other => panic!("{other}"),
    }
    // x1(x2(...(x5x6))) keeps a nonzero L-chain in the weakly left commutative table
    let wlc = left_nilpotency_index(AlgebraKind::Wlc, 6).unwrap();
    assert_eq!(wlc.index(), None);
    assert_eq!(wlc.witness().to_string(), "x1*(x2*(x3*(x4*(x5*x6))))");
    // independently: the degree-5 left-normed product is not in the T-ideal of wlc2
    let wlc2 = IdentitySet::preset("wlc2").unwrap();
    assert!(!Oracle::default().membership(&p("x1*(x2*(x3*(x4*x5)))"), &wlc2).unwrap());
    assert!(matches!(
        left_nilpotency_index(AlgebraKind::Wnov, 8),
        Err(EngineError::CapTooLarge { .. })
    ));
}

#[test]
fn nilpotency_profiles() {
    let o = Oracle::over(Field::Prime(1009));
    let flex = IdentitySet::resolve("wlc2+flex").unwrap();
    let lie = IdentitySet::resolve("wlc2+lie-nilp:2").unwrap();
    assert!(nilpotency_profile(&flex, 5, &o).unwrap().all_zero());
    assert!(nilpotency_profile(&lie, 5, &o).unwrap().all_zero());
    let wnov2 = IdentitySet::preset("wnov2").unwrap();
    let prof = nilpotency_profile(&wnov2, 5, &o).unwrap();
    assert!(!prof.all_zero());
    assert_eq!(prof.components.last().unwrap().1, 5);
}

#[test]
fn classification() {
    for lambda in ["0", "1", "-1", "3/2"] {
        let c = classify_multilinear(&p(&format!("x1*x2 + {lambda} x2*x1"))).unwrap();
        assert_eq!(c.bound(), Some(5), "lambda = {lambda}");
    }
    // an alternating sum over A4 of (x_a, x_b x_c, x_d)
    let a4: [[u32; 4]; 12] = [
        [1, 2, 3, 4],
        [1, 3, 4, 2],
        [1, 4, 2, 3],
        [2, 1, 4, 3],
        [2, 3, 1, 4],
        [2, 4, 3, 1],
        [3, 1, 2, 4],
        [3, 2, 4, 1],
        [3, 4, 1, 2],
        [4, 1, 3, 2],
        [4, 2, 1, 3],
        [4, 3, 2, 1],
    ];
    let terms: Vec<String> = a4
        .iter()
        .enumerate()
        .map(|(i, d)| format!("{} A(x{}, x{}*x{}, x{})", i + 1, d[0], d[1], d[2], d[3]))
        .collect();
    let c = classify_multilinear(&p(&terms.join(" + "))).unwrap();
    assert!(matches!(c.verdict, ClassVerdict::NonNilpotentCandidate { .. }), "{c}");

    let assoc = classify_multilinear(&p("A(x1,x2,x3)")).unwrap();
    assert_eq!(assoc.bound(), Some(5));
    let prof = verify_bound(&assoc, &Oracle::over(Field::Prime(1009))).unwrap().unwrap();
    assert!(prof.all_zero());

    assert!(matches!(
        classify_multilinear(&p("(x1*x2)*(x3*x4)")),
        Err(EngineError::HoldsInVariety(_))
    ));
    assert!(matches!(
        classify_multilinear(&p("x1*(x1*x2)")),
        Err(EngineError::NotMultilinear(_))
    ));
}

#[test]
fn operator_words() {
    let pair = WnElement::basis(Pair(1, 2), Field::Rational);
    let apply = |ops: &str| operator_word_apply::<Wn>(&pair, &ops.parse::<OperatorWord>().unwrap());
    assert_eq!(apply("Rx3 Rx4 Rx5"), q(vec![(WnBasisElement::t5(1, &[2, 3, 4, 5]).unwrap(), 1)]));
    assert!(apply("Rx3 Rx4 Lx5").is_zero());
    assert_eq!(
        apply("Hx3"),
        q(vec![(WnBasisElement::t2(1, 2, 3), 1), (T1(1, 2, 3), 1), (T1(3, 1, 2), -1)])
    );
}

#[test]
fn parsing_and_rendering() {
    let w = p("(x1*x2)*(x3*x4)");
    assert_eq!(w.len(), 1);
    assert_eq!(render_poly(&w), "(x1*x2)*(x3*x4)");
    let rs = parse_identity("A(v1,v2,v3) - A(v1,v3,v2) = 0").unwrap();
    assert_eq!(rs.len(), 4);
    assert_eq!(render_poly(&MagmaPoly::zero(Field::Rational)), "0");
    assert!(parse_expr("x1*x2*x3").is_err());
    assert!(parse_expr("x1 x2").is_err());
}
