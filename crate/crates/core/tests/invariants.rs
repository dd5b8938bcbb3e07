//! Property tests for the algebraic, engine and game invariants.

use proptest::prelude::*;

use ordtypes::condensation::{e_y_condense, window_condensation};
use ordtypes::engine::{replay, rules::reversed, Engine, EngineConfig};
use ordtypes::finite::{count_embeddings, embeds, FiniteOrder};
use ordtypes::game::{e0_equiv, flip, verify_random, BitWord};
use ordtypes::ordinal::{classify_ordinal, transcendability_witness, Ordinal};
use ordtypes::{normalize, parse_term, Answer, Term};

fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..4).prop_map(Ordinal::nat);
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec((inner, 1u64..4), 1..3).prop_map(|parts| {
            parts.into_iter().fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::monomial(e, c)))
        })
    })
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (1u64..4).prop_map(Term::Fin),
        Just(Term::Omega),
        Just(Term::OmegaStar),
        Just(Term::Zeta),
        Just(Term::Eta),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::Sum(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::prod(a, b)),
            inner.prop_map(Term::rev),
        ]
    })
    .prop_map(|t| normalize(&t))
}

fn arb_word(len: usize) -> impl Strategy<Value = BitWord> {
    prop::collection::vec(any::<bool>(), len).prop_map(BitWord::new)
}

fn small_engine() -> Engine {
    Engine::new(EngineConfig { depth: 5, ..EngineConfig::default() })
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ordinal_addition_is_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn ordinal_multiplication_distributes_on_the_left(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn ordinal_sums_are_monotone(a in arb_ordinal(), b in arb_ordinal()) {
        prop_assert!(a <= a.add(&b));
        prop_assert!(b <= a.add(&b));
    }

    #[test]
    fn ordinal_flags_are_consistent(a in arb_ordinal()) {
        let p = classify_ordinal(&a);
        prop_assert!(!p.s_untranscendable || p.untranscendable);
        prop_assert!(!p.delta_number || p.multiplicatively_principal);
        match transcendability_witness(&a) {
            None => prop_assert!(p.untranscendable),
            Some((psi, tau)) => prop_assert!(psi < a && tau < a && a <= psi.mul(&tau)),
        }
    }

    #[test]
    fn ordinal_terms_embed_like_ordinals(a in arb_ordinal(), b in arb_ordinal()) {
        let mut e = small_engine();
        let (ta, tb) = (normalize(&Term::Ord(a.clone())), normalize(&Term::Ord(b.clone())));
        let v = e.embeds(&ta, &tb);
        let expected = if a <= b { Answer::Yes } else { Answer::No };
        prop_assert_eq!(v.answer, expected, "{} <= {}", a, b);
    }

    #[test]
    fn flip_is_an_involution(w in (0usize..8).prop_flat_map(arb_word)) {
        prop_assert_eq!(flip(&flip(&w)), w.clone());
        prop_assert_eq!(flip(&w).len(), w.len());
    }

    #[test]
    fn e0_is_an_equivalence_on_equal_lengths(
        (x, y, z) in (0usize..6).prop_flat_map(|n| (arb_word(n), arb_word(n), arb_word(n)))
    ) {
        let eq = |a: &BitWord, b: &BitWord| e0_equiv(a, b).unwrap().equivalent;
        prop_assert!(eq(&x, &x));
        prop_assert_eq!(eq(&x, &y), eq(&y, &x));
        if eq(&x, &y) && eq(&y, &z) {
            prop_assert!(eq(&x, &z));
        }
        prop_assert_eq!(eq(&flip(&x), &flip(&y)), eq(&x, &y));
    }

    #[test]
    fn flip_identity_holds_for_random_strategies(seed in any::<u64>(), rounds in 1usize..4) {
        let s = verify_random(seed, 20, rounds, 3);
        prop_assert_eq!(s.failures, 0);
    }

    #[test]
    fn finite_embeddings_are_binomial(m in 0usize..7, n in 0usize..7) {
        let (x, y) = (FiniteOrder::new(m), FiniteOrder::new(n));
        prop_assert_eq!(embeds(x, y), m <= n);
        let expected = if m <= n { binomial(n as u128, m as u128) } else { 0 };
        prop_assert_eq!(count_embeddings(x, y), expected);
    }

    #[test]
    fn run_condensation_embeds(n in 1usize..7, mask in any::<u8>()) {
        let y: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!y.is_empty());
        let r = e_y_condense(FiniteOrder::new(n), &y).unwrap();
        prop_assert!(r.verified);
        prop_assert!(r.result.is_partition());
    }

    #[test]
    fn windows_partition_the_carrier(t in arb_term(), k in 1u64..4) {
        if let Ok(r) = window_condensation(&t, k) {
            prop_assert!(r.is_partition());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn printed_terms_reparse(t in arb_term()) {
        let back = normalize(&parse_term(&t.to_string()).unwrap());
        prop_assert_eq!(back, t);
    }

    #[test]
    fn embedding_is_reflexive_and_reversal_conjugate(s in arb_term(), t in arb_term()) {
        let mut e = small_engine();
        prop_assert_ne!(e.embeds(&s, &s).answer, Answer::No);
        let v = e.embeds(&s, &t);
        let (rs, rt) = reversed(&s, &t);
        prop_assert_eq!(e.embeds(&rs, &rt).answer, v.answer);
        if let Some(c) = &v.certificate {
            prop_assert!(replay(c).is_ok(), "{} <= {} does not replay", s, t);
        }
    }

    #[test]
    fn embedding_into_a_sum_summand(s in arb_term(), t in arb_term()) {
        let mut e = small_engine();
        let sum = normalize(&Term::Sum(vec![s.clone(), t.clone()]));
        prop_assert_ne!(e.embeds(&s, &sum).answer, Answer::No);
        prop_assert_ne!(e.embeds(&t, &sum).answer, Answer::No);
    }
}
