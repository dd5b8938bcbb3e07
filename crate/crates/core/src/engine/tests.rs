use super::*;
use crate::term::parse_term;

fn t(s: &str) -> Term {
    normalize(&parse_term(s).unwrap())
}

fn embeds(a: &str, b: &str) -> Answer {
    let mut e = Engine::default();
    let v = e.embeds(&t(a), &t(b));
    if let Some(c) = &v.certificate {
        replay(c).unwrap();
    }
    v.answer
}

#[test]
fn reference_embeddings() {
    assert_eq!(embeds("geomrev(w)", "w^(w)*w~"), Answer::Yes);
    assert_eq!(embeds("geomrev(w)", "w^(w)"), Answer::No);
    assert_eq!(embeds("w~*2", "geomrev(w)"), Answer::No);
    assert_eq!(embeds("q + q", "q"), Answer::Yes);
    assert_eq!(embeds("2*r", "r"), Answer::No);
    assert_eq!(embeds("r*2", "r"), Answer::Yes);
    assert_eq!(embeds("r*r", "r"), Answer::No);
    assert_eq!(embeds("w*2", "w"), Answer::No);
    assert_eq!(embeds("w", "w*2"), Answer::Yes);
    assert_eq!(embeds("z", "q"), Answer::Yes);
    assert_eq!(embeds("q", "z*w"), Answer::No);
}

#[test]
fn reference_equimorphisms() {
    let mut e = Engine::default();
    for (a, b, want) in [("1 + q", "q", Answer::Yes), ("w", "w + 1", Answer::No), ("z*q", "q", Answer::Yes)] {
        let v = e.equimorphic(&t(a), &t(b));
        assert_eq!(v.answer, want, "{a} == {b}");
        replay(v.certificate.as_ref().unwrap()).unwrap();
    }
}

#[test]
fn reversal_conjugation() {
    let mut e = Engine::default();
    for (a, b) in [("w*2", "w"), ("q + 1", "q"), ("geomrev(w)", "w^(w)*w~"), ("w~*2", "geomrev(w)")] {
        let fwd = e.embeds(&t(a), &t(b)).answer;
        let (ra, rb) = reversed(&t(a), &t(b));
        assert_eq!(e.embeds(&ra, &rb).answer, fwd, "{a} <= {b}");
    }
}

#[test]
fn corrupted_certificates_are_rejected() {
    let mut e = Engine::default();
    let v = e.embeds(&t("q + q"), &t("q"));
    let mut c = v.certificate.unwrap();
    c.answer = Answer::No;
    assert!(replay(&c).is_err());
    let mut d = e.embeds(&t("w*2"), &t("w")).certificate.unwrap();
    d.rule = "R-REFL".into();
    assert!(replay(&d).is_err());
    let mut f = e.embeds(&t("geomrev(w)"), &t("w^(w)*w~")).certificate.unwrap();
    f.claim = embeds_claim(&t("w^(w)*w~"), &t("geomrev(w)"));
    assert!(replay(&f).is_err());
}

#[test]
fn classical_rule_can_be_disabled() {
    let mut e = Engine::new(EngineConfig { classical: false, ..EngineConfig::default() });
    let v = e.embeds(&t("w*z + 3"), &t("q"));
    if let Some(c) = &v.certificate {
        assert!(!c.all_axioms().contains(&"classical".to_string()));
    }
    let mut d = Engine::default();
    let c = d.embeds(&t("w*z + 3"), &t("q")).certificate.unwrap();
    assert!(c.all_axioms().contains(&"classical".to_string()));
}

fn profile(s: &str) -> TypeProfile {
    let p = Engine::default().classify_type(&t(s)).unwrap();
    for f in Flag::ALL {
        if let Some(c) = &p.get(f).certificate {
            replay(c).unwrap_or_else(|e| panic!("{s} {f}: {e}"));
        }
    }
    p
}

#[test]
fn classify_eta() {
    let p = profile("q");
    assert_eq!(p.indecomposable.answer, Answer::Yes);
    assert_eq!(p.s_untranscendable.answer, Answer::Yes);
    assert_eq!(p.product_closed.answer, Answer::Yes);
    assert_eq!(p.strongly_indecomposable.answer, Answer::Yes);
    assert_eq!(p.strictly_indec_left.answer, Answer::No);
    assert_eq!(p.strictly_indec_right.answer, Answer::No);
}

#[test]
fn classify_lambda() {
    let p = profile("r");
    assert_eq!(p.untranscendable.answer, Answer::Yes);
    assert_eq!(p.product_closed.answer, Answer::No);
    assert_eq!(p.strongly_indecomposable.answer, Answer::No);
    assert!(p.strongly_indecomposable.certificate.unwrap().all_axioms().contains(&"AC".to_string()));
    let q = Engine::new(EngineConfig { choice: false, ..EngineConfig::default() }).classify_type(&Term::Lambda).unwrap();
    assert_eq!(q.strongly_indecomposable.answer, Answer::Unknown);
    assert_eq!(q.product_closed.answer, Answer::Unknown);
}

#[test]
fn classify_phi_star() {
    let p = profile("geomrev(w)");
    assert_eq!(p.untranscendable.answer, Answer::Yes);
    assert_eq!(p.s_untranscendable.answer, Answer::No);
    assert_eq!(p.product_closed.answer, Answer::No);
    assert_eq!(p.strongly_indecomposable.answer, Answer::Yes);
    assert_eq!(p.sum_closed.answer, Answer::No);
    assert_eq!(p.strictly_indec_left.answer, Answer::Yes);
    let r = profile("geom(w~)");
    assert_eq!(r.strictly_indec_right.answer, Answer::Yes);
    assert_eq!(r.strictly_indec_right.certificate.unwrap().rule, "C-REV");
}

#[test]
fn classify_two_and_omega_squared() {
    let p = profile("2");
    assert_eq!(p.untranscendable.answer, Answer::Yes);
    assert_eq!(p.indecomposable.answer, Answer::No);
    let q = profile("w^(2)");
    assert_eq!(q.strongly_indecomposable.answer, Answer::Yes);
    assert_eq!(q.untranscendable.answer, Answer::No);
    let r = profile("w^(w)");
    assert_eq!(r.strongly_indecomposable.certificate.unwrap().rule, "C-SIGMA-SI");
}

#[test]
fn square_pipeline_examples() {
    let mut e = Engine::default();
    let eta = e.square_pipeline(&Term::Eta).unwrap();
    assert!(eta.verdict.is_yes());
    assert_eq!(eta.verdict.certificate.as_ref().unwrap().rule, "C-GARRETT");
    replay(eta.verdict.certificate.as_ref().unwrap()).unwrap();
    for s in ["r", "w", "w*r"] {
        let rep = e.square_pipeline(&t(s)).unwrap();
        assert_eq!(rep.failing, 1, "{s}: {:?}", rep.hypotheses);
        assert!(!rep.verdict.is_yes(), "{s}");
    }
    assert!(e.square_pipeline(&Term::Lambda).unwrap().verdict.is_no());
}

#[test]
fn trichotomy_examples() {
    let mut e = Engine::default();
    let w = e.trichotomy_check(&Term::Omega).unwrap();
    assert_eq!((w.double, w.strictly_left, w.strictly_right), (Answer::No, Answer::No, Answer::Yes));
    let q = e.trichotomy_check(&Term::Eta).unwrap();
    assert_eq!((q.double, q.strictly_left, q.strictly_right), (Answer::Yes, Answer::No, Answer::No));
    let one = e.trichotomy_check(&Term::Fin(1)).unwrap();
    assert!(one.exception && one.violation.is_none());
    assert!(e.trichotomy_check(&Term::Fin(3)).is_err());
}
