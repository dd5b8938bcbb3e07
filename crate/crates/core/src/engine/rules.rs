//! Embedding rules. Each rule is either decided outright from the shape of
//! the pair, or reduces the pair to a list of premise obligations. The same
//! functions drive both the search and certificate replay.

use std::fmt;

use crate::ordinal::Ordinal;
use crate::term::{as_ordinal, card, from_ordinal, mk_sum, normalize, Term};
use crate::verdict::{Answer, Certificate, Claim};

use super::helpers::{
    ccc, children, is_countable, is_scattered, iso_splits, not_wo, ord_blocks, uncountable_disjoint_pairs,
};

/// Size above which the refutation rules that enumerate splits are skipped.
pub const SPLIT_SIZE_LIMIT: usize = 12;
/// Maximum number of splits taken from either side.
const SPLIT_LIMIT: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    Refl,
    Zero,
    Ord,
    Fin,
    Subterm,
    Card,
    Scat,
    Wo,
    LambdaSep,
    WoRevsum,
    Cof,
    Dense,
    PsiTau,
    Absorb,
    SumMono,
    ProdMono,
    Blocks,
    Eta,
    Shuffle,
    EtaUniv,
    Geom,
    GeomShift,
    SepSum,
    SepSumStrong,
    SepProd,
    SepProdStrong,
}

impl Rule {
    pub const ALL: [Rule; 26] = [
        Rule::Refl,
        Rule::Zero,
        Rule::Ord,
        Rule::Fin,
        Rule::Subterm,
        Rule::Card,
        Rule::Scat,
        Rule::Wo,
        Rule::LambdaSep,
        Rule::WoRevsum,
        Rule::Cof,
        Rule::Dense,
        Rule::PsiTau,
        Rule::Absorb,
        Rule::SumMono,
        Rule::ProdMono,
        Rule::Blocks,
        Rule::Eta,
        Rule::Shuffle,
        Rule::EtaUniv,
        Rule::Geom,
        Rule::GeomShift,
        Rule::SepSum,
        Rule::SepSumStrong,
        Rule::SepProd,
        Rule::SepProdStrong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Refl => "R-REFL",
            Rule::Zero => "R-ZERO",
            Rule::Ord => "R-ORD",
            Rule::Fin => "R-FIN",
            Rule::Subterm => "R-SUBTERM",
            Rule::Card => "R-CARD",
            Rule::Scat => "R-SCAT",
            Rule::Wo => "R-WO",
            Rule::LambdaSep => "R-LAMBDA-SEP",
            Rule::WoRevsum => "R-WO-REVSUM",
            Rule::Cof => "R-COF",
            Rule::Dense => "R-DENSE",
            Rule::PsiTau => "R-PSI-TAU",
            Rule::Absorb => "R-ABSORB",
            Rule::SumMono => "R-SUM-MONO",
            Rule::ProdMono => "R-PROD-MONO",
            Rule::Blocks => "R-BLOCKS",
            Rule::Eta => "R-ETA",
            Rule::Shuffle => "R-SHUFFLE",
            Rule::EtaUniv => "R-ETA-UNIV",
            Rule::Geom => "R-GEOM",
            Rule::GeomShift => "R-GEOM-SHIFT",
            Rule::SepSum => "R-SEP-SUM",
            Rule::SepSumStrong => "R-SEP-SUM-STRONG",
            Rule::SepProd => "R-SEP-PROD",
            Rule::SepProdStrong => "R-SEP-PROD-STRONG",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Whether the rule is decided without premises.
    pub fn is_direct(self) -> bool {
        matches!(
            self,
            Rule::Refl
                | Rule::Zero
                | Rule::Ord
                | Rule::Fin
                | Rule::Subterm
                | Rule::Card
                | Rule::Scat
                | Rule::Wo
                | Rule::LambdaSep
                | Rule::WoRevsum
                | Rule::Cof
                | Rule::Dense
                | Rule::PsiTau
        )
    }

    /// Whether the rule relies on the classical setting.
    pub fn is_classical(self) -> bool {
        self == Rule::EtaUniv
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reduction of `sub ⩽ sup` to premises, each of which must receive its stated answer.
#[derive(Clone, Debug)]
pub struct Obligation {
    pub answer: Answer,
    pub premises: Vec<(Term, Term, Answer)>,
    pub binds: Vec<(&'static str, String)>,
}

pub fn embeds_claim(s: &Term, t: &Term) -> Claim {
    Claim::Embeds { sub: s.clone(), sup: t.clone() }
}

fn node(rule: Rule, answer: Answer, s: &Term, t: &Term) -> Certificate {
    let c = Certificate::new(answer, rule.name(), embeds_claim(s, t));
    if rule.is_classical() {
        c.axiom("classical")
    } else {
        c
    }
}

/// The splits of `s` the rules consider.
fn splits(t: &Term) -> Vec<(Term, Term)> {
    let mut v = iso_splits(t);
    v.truncate(SPLIT_LIMIT);
    v
}

/// Premise-free decision of `s ⩽ t` by `rule`.
pub fn direct(rule: Rule, s: &Term, t: &Term) -> Option<Certificate> {
    let yes = |c: Certificate| Some(c);
    match rule {
        Rule::Refl => (s == t).then(|| node(rule, Answer::Yes, s, t)),
        Rule::Zero => {
            if s.is_zero() {
                yes(node(rule, Answer::Yes, s, t))
            } else if t.is_zero() {
                yes(node(rule, Answer::No, s, t))
            } else {
                None
            }
        }
        Rule::Ord => {
            let (a, b) = (as_ordinal(s)?, as_ordinal(t)?);
            Some(node(rule, Answer::from_bool(a <= b), s, t).bind("alpha", &a).bind("beta", &b))
        }
        Rule::Fin => match (card(s), card(t)) {
            (Some(m), Some(n)) => Some(node(rule, Answer::from_bool(m <= n), s, t)),
            (Some(_), None) => yes(node(rule, Answer::Yes, s, t)),
            (None, Some(_)) => yes(node(rule, Answer::No, s, t)),
            (None, None) => None,
        },
        Rule::Subterm => children(t).contains(s).then(|| node(rule, Answer::Yes, s, t)),
        Rule::Card => (!is_countable(s) && is_countable(t)).then(|| node(rule, Answer::No, s, t)),
        Rule::Scat => (!is_scattered(s) && is_scattered(t)).then(|| node(rule, Answer::No, s, t)),
        Rule::Wo => (not_wo(s) && as_ordinal(t).is_some()).then(|| node(rule, Answer::No, s, t)),
        Rule::LambdaSep => (uncountable_disjoint_pairs(s) && ccc(t)).then(|| node(rule, Answer::No, s, t)),
        Rule::WoRevsum => {
            let blocks = ord_blocks(t).filter(|b| b.star)?;
            if let Some(a) = as_ordinal(s) {
                if a.omega_power_exponent().is_some() && blocks.all_below(&a) {
                    return Some(node(rule, Answer::No, s, t).bind("alpha", &a));
                }
            }
            let (s1, s2) = splits(s).into_iter().find(|(_, s2)| not_wo(s2))?;
            Some(node(rule, Answer::No, s, t).bind("head", s1).bind("tail", s2))
        }
        Rule::Cof => {
            let a = as_ordinal(s).filter(Ordinal::is_limit)?;
            let Term::Prod(rho, idx) = t else { return None };
            if **idx != Term::Omega {
                return None;
            }
            let sup = ord_blocks(rho)?.sup();
            (sup >= a).then(|| node(rule, Answer::Yes, s, t).bind("alpha", &a).bind("sup", &sup))
        }
        Rule::Dense => (*s == Term::Eta && t.has_dense_leaf()).then(|| node(rule, Answer::Yes, s, t)),
        Rule::PsiTau => splits(s).into_iter().find_map(|(psi, tau)| {
            let target = normalize(&Term::prod(psi.clone(), mk_sum(vec![Term::Fin(1), tau.clone()])));
            (target == *t).then(|| node(rule, Answer::Yes, s, t).bind("psi", psi).bind("tau", tau))
        }),
        _ => None,
    }
}

/// Premise obligations for `s ⩽ t` under `rule`.
pub fn obligations(rule: Rule, s: &Term, t: &Term) -> Vec<Obligation> {
    let yes = |premises: Vec<(Term, Term, Answer)>| Obligation { answer: Answer::Yes, premises, binds: Vec::new() };
    let no = |premises: Vec<(Term, Term, Answer)>| Obligation { answer: Answer::No, premises, binds: Vec::new() };
    let y = Answer::Yes;
    let n = Answer::No;
    match rule {
        Rule::Absorb => children(t).into_iter().map(|c| yes(vec![(s.clone(), c, y)])).collect(),
        Rule::SumMono => {
            let mut out = Vec::new();
            let ts = splits(t);
            for (a, b) in splits(s) {
                for (c, d) in &ts {
                    out.push(yes(vec![(a.clone(), c.clone(), y), (b.clone(), d.clone(), y)]));
                }
            }
            out
        }
        Rule::ProdMono => match (s, t) {
            (Term::Prod(a, b), Term::Prod(c, d)) => {
                vec![yes(vec![((**a).clone(), (**c).clone(), y), ((**b).clone(), (**d).clone(), y)])]
            }
            _ => Vec::new(),
        },
        Rule::Blocks => {
            let (Some(blocks), Term::Prod(x, idx)) = (ord_blocks(s), t) else { return Vec::new() };
            let index = if blocks.star { Term::OmegaStar } else { Term::Omega };
            let mut o = yes(vec![(from_ordinal(&blocks.sup()), (**x).clone(), y), (index, (**idx).clone(), y)]);
            o.binds.push(("sup", blocks.sup().to_string()));
            vec![o]
        }
        Rule::Eta => match (s, t) {
            (Term::Prod(a, b), Term::Eta) => vec![yes(vec![((**a).clone(), Term::Eta, y), ((**b).clone(), Term::Eta, y)])],
            _ => Vec::new(),
        },
        Rule::Shuffle => match (s, t) {
            (Term::Shuffle(cs), Term::Prod(x, idx)) if **idx == Term::Eta => {
                vec![yes(cs.iter().map(|c| (c.clone(), (**x).clone(), y)).collect())]
            }
            _ => Vec::new(),
        },
        Rule::EtaUniv if is_countable(s) && *t != Term::Eta => vec![yes(vec![(Term::Eta, t.clone(), y)])],
        Rule::Geom => match s {
            Term::GeomOmega(rho) => {
                let lhs = normalize(&Term::Sum(vec![Term::Fin(1), Term::prod((**rho).clone(), t.clone())]));
                if lhs == *t {
                    Vec::new()
                } else {
                    vec![yes(vec![(lhs, t.clone(), y)])]
                }
            }
            _ => Vec::new(),
        },
        // `Σₙ x·bⁿ ⩽ Σₙ bⁿ⁺¹`, a segment of the geometric sum.
        Rule::GeomShift => match s {
            Term::Prod(x, g) if **g == *t => match t {
                Term::GeomOmega(b) | Term::GeomOmegaStar(b) => vec![yes(vec![((**x).clone(), (**b).clone(), y)])],
                _ => Vec::new(),
            },
            _ => Vec::new(),
        },
        Rule::SepSum if s.size() <= SPLIT_SIZE_LIMIT && t.size() <= SPLIT_SIZE_LIMIT => {
            let mut out = Vec::new();
            let ts = splits(t);
            for (phi, psi) in splits(s) {
                for (rho, tau) in &ts {
                    out.push(no(vec![(phi.clone(), rho.clone(), n), (psi.clone(), tau.clone(), n)]));
                }
            }
            out
        }
        Rule::SepSumStrong if s.size() <= SPLIT_SIZE_LIMIT && t.size() <= SPLIT_SIZE_LIMIT => {
            // An embedding of φ+ψ into ρ+τ cuts φ+ψ into a part in ρ and a part in τ;
            // a cut inside φ gives 1+ψ ⩽ τ, a cut inside ψ gives φ+1 ⩽ ρ.
            let one = Term::Fin(1);
            let mut out = Vec::new();
            let ts = splits(t);
            for (phi, psi) in splits(s) {
                let head = mk_sum(vec![phi.clone(), one.clone()]);
                let tail = mk_sum(vec![one.clone(), psi.clone()]);
                for (rho, tau) in &ts {
                    for exact in [(phi.clone(), rho.clone(), n), (psi.clone(), tau.clone(), n)] {
                        out.push(no(vec![
                            (head.clone(), rho.clone(), n),
                            (tail.clone(), tau.clone(), n),
                            exact,
                        ]));
                    }
                }
            }
            out
        }
        Rule::SepProdStrong => match (s, t) {
            // Either 1+ρ ⩽ φ and ρ+1 ⩽ φ, or τ ⩽ ψ.
            (Term::Prod(rho, tau), Term::Prod(phi, psi)) => {
                let one = Term::Fin(1);
                let sides = [
                    mk_sum(vec![one.clone(), (**rho).clone()]),
                    mk_sum(vec![(**rho).clone(), one.clone()]),
                ];
                sides
                    .into_iter()
                    .map(|side| no(vec![(side, (**phi).clone(), n), ((**tau).clone(), (**psi).clone(), n)]))
                    .collect()
            }
            _ => Vec::new(),
        },
        Rule::SepProd => match (s, t) {
            (Term::Prod(rho, tau), Term::Prod(phi, psi)) => {
                vec![no(vec![((**rho).clone(), (**phi).clone(), n), ((**tau).clone(), (**psi).clone(), n)])]
            }
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

/// Builds the certificate for a discharged obligation.
pub fn discharge(rule: Rule, s: &Term, t: &Term, o: &Obligation, premises: Vec<Certificate>) -> Certificate {
    let mut c = node(rule, o.answer, s, t).premises(premises);
    for (k, v) in &o.binds {
        c = c.bind(k, v);
    }
    c
}

/// The reversed pair `(s*, t*)`, normalized.
pub fn reversed(s: &Term, t: &Term) -> (Term, Term) {
    (normalize(&Term::rev(s.clone())), normalize(&Term::rev(t.clone())))
}

/// Product of a term with two, used by doubling hypotheses.
pub fn doubled(t: &Term) -> Term {
    normalize(&Term::prod(t.clone(), Term::Fin(2)))
}
