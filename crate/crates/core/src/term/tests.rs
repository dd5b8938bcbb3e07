use proptest::prelude::*;

use super::*;

fn p(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn n(s: &str) -> Term {
    normalize(&p(s))
}

#[test]
fn parse_examples() {
    assert_eq!(p("w*2 + 1"), Term::Sum(vec![Term::prod(Term::Omega, Term::Fin(2)), Term::Fin(1)]));
    assert_eq!(p("geomrev(w)"), Term::geom_rev(Term::Omega));
    assert_eq!(p("(q + 1)~"), Term::rev(Term::Sum(vec![Term::Eta, Term::Fin(1)])));
    assert_eq!(p("ω + ζ + η + λ"), p("w + z + q + r"));
    assert_eq!(p("  w *  2+1 "), p("w*2 + 1"));
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_term("w + "), Err(crate::Error::Syntax { pos: 4, .. })));
    assert!(matches!(parse_term("w^(q)"), Err(crate::Error::Type(_))));
    assert!(matches!(parse_term("foo"), Err(crate::Error::Syntax { pos: 0, .. })));
    assert!(matches!(parse_term("(w"), Err(crate::Error::Syntax { .. })));
    assert!(matches!(parse_term("sum[; fund(w + 1)]"), Err(crate::Error::Type(_))));
}

#[test]
fn normalize_examples() {
    assert_eq!(normalize(&Term::rev(Term::Sum(vec![Term::Omega, Term::Fin(1)]))), Term::Sum(vec![Term::Fin(1), Term::OmegaStar]));
    assert_eq!(
        normalize(&Term::rev(Term::prod(Term::Omega, Term::Omega))),
        Term::prod(Term::OmegaStar, Term::OmegaStar)
    );
    assert_eq!(normalize(&Term::Sum(vec![Term::Fin(2), Term::Fin(3)])), Term::Fin(5));
    assert_eq!(n("1 + w"), Term::Omega);
    assert_eq!(n("w~ + w"), Term::Zeta);
    assert_eq!(n("q*1"), Term::Eta);
    assert_eq!(n("q*0 + 3"), Term::Fin(3));
    assert_eq!(n("geom(2)"), Term::Omega);
    assert_eq!(n("geomrev(3)"), Term::OmegaStar);
    assert_eq!(n("geom(w)"), Term::Ord("w^(w)".parse().unwrap()));
    assert_eq!(n("geom(w)~"), Term::OrdRev("w^(w)".parse().unwrap()));
    assert_eq!(n("geomrev(w)"), Term::geom_rev(Term::Omega));
    assert_eq!(n("sum[; const(z)]"), Term::prod(Term::Zeta, Term::Omega));
    assert_eq!(n("sumrev[; fund(w^(w))]"), Term::geom_rev(Term::Omega));
    assert_eq!(n("shuffle(1)"), Term::Eta);
    assert_eq!(n("shuffle(1, 0, 1, 2)"), Term::Shuffle(vec![Term::Fin(1), Term::Fin(2)]));
}

#[test]
fn ordinal_folding() {
    assert_eq!(n("w*w + w*3 + 2"), Term::Ord("w^(2) + w*3 + 2".parse().unwrap()));
    assert_eq!(n("(w*w)~"), Term::prod(Term::OmegaStar, Term::OmegaStar));
    assert_eq!(n("w~ + w~"), Term::prod(Term::OmegaStar, Term::Fin(2)));
    assert_eq!(as_ordinal(&n("geom(w + 1)")), Some("w^(w)".parse().unwrap()));
}

#[test]
fn printing() {
    assert_eq!(n("w*2 + 1").to_string(), "w*2 + 1");
    assert_eq!(n("(w + 1)~").to_string(), "1 + w~");
    assert_eq!(n("z*(q + 1)").to_string(), "z*(q + 1)");
    assert_eq!(n("(q + 1)*z").to_string(), "(q + 1)*z");
    assert_eq!(n("geomrev(w)").to_string(), "geomrev(w)");
    assert_eq!(n("sumrev[; fund(w*2)]").to_string(), "sumrev[; fund(w*2)]");
    assert_eq!(n("w^(w)~").to_string(), "(w^(w))~");
}

#[test]
fn double_reversal() {
    for s in ["w + 1", "geomrev(w + 2)", "(q + 1)*z", "sum[3; cycle(w, 2)]", "shuffle(w, w~)"] {
        assert_eq!(normalize(&Term::rev(Term::rev(p(s)))), n(s), "{s}");
    }
}

fn leaf() -> impl Strategy<Value = Term> {
    prop_oneof![
        (0u64..4).prop_map(Term::Fin),
        Just(Term::Omega),
        Just(Term::OmegaStar),
        Just(Term::Zeta),
        Just(Term::Eta),
        Just(Term::Ord("w^(2)".parse().unwrap())),
    ]
}

pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Term::Sum),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::prod(a, b)),
            inner.clone().prop_map(Term::rev),
            leaf().prop_map(Term::geom),
            leaf().prop_map(Term::geom_rev),
        ]
    })
}

proptest! {
    #[test]
    fn normalize_idempotent(t in arb_term()) {
        let once = normalize(&t);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn print_parse_roundtrip(t in arb_term()) {
        let once = normalize(&t);
        let back = parse_term(&once.to_string()).unwrap();
        prop_assert_eq!(normalize(&back), once);
    }

    #[test]
    fn reversal_involution(t in arb_term()) {
        prop_assert_eq!(normalize(&Term::rev(Term::rev(t.clone()))), normalize(&t));
    }

    #[test]
    fn normalized_has_no_rev(t in arb_term()) {
        let once = normalize(&t);
        prop_assert!(!once.any_leaf(&|x| matches!(x, Term::Rev(_))));
    }
}

#[test]
fn serde_uses_printed_form() {
    let t = n("w*q + geomrev(w)");
    let j = serde_json::to_string(&t).unwrap();
    assert_eq!(j, format!("\"{t}\""));
    assert_eq!(serde_json::from_str::<Term>(&j).unwrap(), t);
}
