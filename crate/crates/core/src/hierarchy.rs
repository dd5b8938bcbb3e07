//! Regular unbounded sums over ω and ω*, shuffles over η, and equimorphic
//! representatives without finite condensation classes.
//!
//! A sum `Σ_{α∈κ} φ_α` is regular unbounded when every summand recurs up to
//! embedding arbitrarily far along the index. A shuffle is an η-indexed sum in
//! which every listed summand type occurs densely. Generators come from a
//! closed catalogue of four shapes, which keeps validation decidable.

use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::ordinal::{fundamental_sequence, Ordinal};
use crate::term::{
    as_ordinal, card, f_class_profile, from_ordinal, mk_omega_star_sum, mk_omega_sum, mk_prod, mk_shuffle, normalize,
    parse_term, power, FStatus, Generator, Tail, Term,
};
use crate::verdict::{Answer, Certificate, Claim, Verdict};

/// Index type of a sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumKind {
    OmegaSum,
    OmegaStarSum,
    Shuffle,
}

/// A generator shape, with terms written in the term grammar.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Constant { term: String },
    EventuallyConstant { prefix: Vec<String>, term: String },
    /// `n ↦ baseⁿ`.
    Geometric { base: String },
    PrefixTail { prefix: Vec<String>, tail: TailSpec },
}

/// Tail rule of a `prefix-tail` generator.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum TailSpec {
    Constant { term: String },
    Cycle { terms: Vec<String> },
    Geometric { base: String },
    /// The fundamental sequence of a limit ordinal.
    Fundamental { ordinal: String },
}

/// A sum description as read from JSON.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SumSpec {
    pub kind: SumKind,
    pub generator: GeneratorSpec,
    /// Shuffle index: `q` (the default) or `1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<String>,
}

impl SumSpec {
    pub fn from_json(s: &str) -> Result<SumSpec> {
        let spec: SumSpec = serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("sum spec: {e}")))?;
        spec.resolve()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sum specs serialize")
    }

    fn resolve(&self) -> Result<Resolved> {
        let term = |s: &String| parse_term(s).map(|t| normalize(&t));
        let terms = |v: &Vec<String>| v.iter().map(term).collect::<Result<Vec<_>>>();
        let generator = match &self.generator {
            GeneratorSpec::Constant { term: t } => Generator::constant(term(t)?),
            GeneratorSpec::EventuallyConstant { prefix, term: t } => {
                Generator::constant(term(t)?).with_prefix(terms(prefix)?)
            }
            GeneratorSpec::Geometric { base } => Generator::geometric(term(base)?),
            GeneratorSpec::PrefixTail { prefix, tail } => {
                let g = match tail {
                    TailSpec::Constant { term: t } => Generator::constant(term(t)?),
                    TailSpec::Cycle { terms: ts } if ts.is_empty() => {
                        return Err(Error::InvalidArgument("empty cycle".into()))
                    }
                    TailSpec::Cycle { terms: ts } => Generator::cycle(terms(ts)?),
                    TailSpec::Geometric { base } => Generator::geometric(term(base)?),
                    TailSpec::Fundamental { ordinal } => {
                        let t = term(ordinal)?;
                        let a = as_ordinal(&t)
                            .filter(Ordinal::is_limit)
                            .ok_or_else(|| Error::InvalidArgument(format!("{t} is not a limit ordinal")))?;
                        Generator::fundamental(a)
                    }
                };
                g.with_prefix(terms(prefix)?)
            }
        };
        let index_one = match (self.kind, self.index.as_deref()) {
            (_, None) => false,
            (SumKind::Shuffle, Some("q" | "η" | "eta")) => false,
            (SumKind::Shuffle, Some("1")) => true,
            (SumKind::Shuffle, Some(other)) => {
                return Err(Error::InvalidArgument(format!("unsupported shuffle index {other}; only q and 1 are supported")))
            }
            (_, Some(_)) => return Err(Error::InvalidArgument("only shuffles take an index".into())),
        };
        Ok(Resolved { kind: self.kind, generator, index_one })
    }
}

struct Resolved {
    kind: SumKind,
    generator: Generator,
    index_one: bool,
}

impl Resolved {
    /// Summand types of a shuffle, or `None` when there are infinitely many.
    fn colors(&self) -> Option<Vec<Term>> {
        let mut cs = self.generator.prefix.clone();
        match &self.generator.tail {
            Tail::Constant(t) => cs.push((**t).clone()),
            Tail::Cycle(ts) => cs.extend(ts.iter().cloned()),
            Tail::Geometric(_) | Tail::Fundamental(..) => return None,
        }
        let mut out: Vec<Term> = Vec::new();
        for c in cs.iter().map(normalize) {
            if !c.is_zero() && !out.contains(&c) {
                out.push(c);
            }
        }
        Some(out)
    }

    fn realize(&self) -> Result<Term> {
        let g = self.generator.clone();
        Ok(match self.kind {
            SumKind::OmegaSum => normalize(&mk_omega_sum(g)),
            SumKind::OmegaStarSum => normalize(&mk_omega_star_sum(g)),
            SumKind::Shuffle => {
                let cs = self
                    .colors()
                    .ok_or_else(|| Error::Capacity("shuffles of infinitely many types are not expressible".into()))?;
                if self.index_one {
                    match cs.as_slice() {
                        [] => Term::Fin(0),
                        [c] => c.clone(),
                        _ => return Err(Error::InvalidArgument("a sum over 1 has a single summand".into())),
                    }
                } else {
                    normalize(&mk_shuffle(cs))
                }
            }
        })
    }
}

fn flag(name: &str, term: &Term) -> Claim {
    Claim::Flag { name: name.into(), term: term.clone() }
}

/// Decides whether the spec describes a regular unbounded sum or a shuffle.
///
/// Errors only on a malformed spec.
pub fn validate_sum_spec(engine: &mut Engine, spec: &SumSpec) -> Result<Verdict> {
    let r = spec.resolve()?;
    let term = r.realize().ok();
    match r.kind {
        SumKind::Shuffle => Ok(validate_shuffle(&r, term)),
        _ => Ok(validate_blocks(engine, &r.generator, &term.expect("block sums are expressible"))),
    }
}

fn validate_shuffle(r: &Resolved, term: Option<Term>) -> Verdict {
    let (Some(cs), Some(term)) = (r.colors(), term) else {
        return Verdict::unknown(vec!["infinitely many summand types".into()]);
    };
    if r.index_one {
        let answer = Answer::from_bool(cs.len() <= 1);
        return Verdict::decided(
            Certificate::new(answer, "H-SHUFFLE-INDEX", flag("dense_shuffle", &term)).bind("types", cs.len()),
        );
    }
    Verdict::decided(Certificate::new(Answer::Yes, "H-SHUFFLE-DENSE", flag("dense_shuffle", &term)).bind("types", cs.len()))
}

fn validate_blocks(engine: &mut Engine, g: &Generator, term: &Term) -> Verdict {
    let claim = flag("regular_unbounded", term);
    let refute = |index: usize, certs: Vec<Certificate>| {
        Verdict::decided(Certificate::new(Answer::No, "H-NOT-RECURRING", claim.clone()).premises(certs).bind("index", index))
    };
    let mut premises = Vec::new();
    if let Tail::Geometric(b) = &g.tail {
        let v = engine.embeds(&Term::Fin(1), b);
        match v.answer {
            Answer::Yes => premises.push(v.certificate.unwrap()),
            Answer::No => return refute(g.prefix.len(), vec![v.certificate.unwrap()]),
            Answer::Unknown => return Verdict::unknown(v.frontier),
        }
    }
    let mut frontier = Vec::new();
    for (i, p) in g.prefix.iter().enumerate() {
        let (answer, certs) = recurs_in_tail(engine, &normalize(p), &g.tail);
        match answer {
            Answer::Yes => premises.extend(certs),
            Answer::No => return refute(i, certs),
            Answer::Unknown => frontier.push(format!("prefix summand {i}")),
        }
    }
    if !frontier.is_empty() {
        return Verdict::unknown(frontier);
    }
    Verdict::decided(Certificate::new(Answer::Yes, "H-REGULAR", claim).premises(premises))
}

/// Whether `p` embeds into tail summands arbitrarily far out.
fn recurs_in_tail(engine: &mut Engine, p: &Term, tail: &Tail) -> (Answer, Vec<Certificate>) {
    let mut into = |sup: &Term| engine.embeds(p, sup);
    match tail {
        Tail::Constant(c) => {
            let v = into(c);
            (v.answer, v.certificate.into_iter().collect())
        }
        Tail::Cycle(cs) => {
            let mut refutations = Vec::new();
            for c in cs {
                let v = into(c);
                match v.answer {
                    Answer::Yes => return (Answer::Yes, vec![v.certificate.unwrap()]),
                    Answer::No => refutations.push(v.certificate.unwrap()),
                    Answer::Unknown => {}
                }
            }
            if refutations.len() == cs.len() {
                (Answer::No, refutations)
            } else {
                (Answer::Unknown, Vec::new())
            }
        }
        Tail::Geometric(b) => {
            let b = normalize(b);
            let mut refutations = Vec::new();
            for n in 0..=3 {
                let v = into(&power(&b, n));
                match v.answer {
                    Answer::Yes => return (Answer::Yes, vec![v.certificate.unwrap()]),
                    Answer::No => refutations.push(v.certificate.unwrap()),
                    Answer::Unknown => {}
                }
            }
            // With `b ⩽ 1` every tail summand is at most 1.
            if b == Term::Fin(1) && refutations.len() == 4 {
                (Answer::No, refutations)
            } else {
                (Answer::Unknown, Vec::new())
            }
        }
        Tail::Fundamental(a, _) => match as_ordinal(p) {
            Some(o) if o < *a => {
                let n = (0..).find(|&n| fundamental_sequence(a, n).is_ok_and(|x| o <= x)).expect("cofinal sequence");
                let v = into(&from_ordinal(&fundamental_sequence(a, n).unwrap()));
                (v.answer, v.certificate.into_iter().collect())
            }
            // Every tail summand lies strictly below `a`, which embeds into `p`.
            Some(_) => {
                let v = engine.embeds(&from_ordinal(a), p);
                match v.answer {
                    Answer::Yes => (Answer::No, vec![v.certificate.unwrap()]),
                    _ => (Answer::Unknown, Vec::new()),
                }
            }
            None => {
                let v = into(&from_ordinal(a));
                match v.answer {
                    Answer::No => (Answer::No, vec![v.certificate.unwrap()]),
                    _ => (Answer::Unknown, Vec::new()),
                }
            }
        },
    }
}

/// The term a spec denotes.
pub fn realize(spec: &SumSpec) -> Result<Term> {
    spec.resolve()?.realize()
}

/// Result of the witness construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    pub realized: Term,
    pub witness: Option<Term>,
    /// `H-WITNESS` node over the engine's equimorphism certificate.
    pub certificate: Option<Certificate>,
    pub diagnostics: Vec<String>,
}

/// Finds a type equimorphic to the realized sum whose condensation has no finite classes.
///
/// Fails unless the spec validates as YES.
pub fn no_finite_f_witness(engine: &mut Engine, spec: &SumSpec) -> Result<WitnessReport> {
    let v = validate_sum_spec(engine, spec)?;
    if !v.is_yes() {
        return Err(Error::InvalidArgument(format!("spec does not validate (answer {})", v.answer)));
    }
    let r = spec.resolve()?;
    let t = r.realize()?;
    let mut diagnostics = Vec::new();
    for (construction, cand) in candidates(&r, &t) {
        let profile = f_class_profile(&cand);
        if profile.status != FStatus::AllInfinite {
            diagnostics.push(format!("{construction}: {cand} has finite classes or is undecided"));
            continue;
        }
        let eq = engine.equimorphic(&t, &cand);
        match eq.answer {
            Answer::Yes => {
                let cert = Certificate::new(Answer::Yes, "H-WITNESS", Claim::Equimorphic { left: t.clone(), right: cand.clone() })
                    .premise(eq.certificate.unwrap())
                    .bind("construction", construction);
                return Ok(WitnessReport { realized: t, witness: Some(cand), certificate: Some(cert), diagnostics });
            }
            a => diagnostics.push(format!("{construction}: equimorphism with {cand} is {a}")),
        }
    }
    Ok(WitnessReport { realized: t, witness: None, certificate: None, diagnostics })
}

/// Candidate witnesses in order of preference, each labelled by its construction.
fn candidates(r: &Resolved, t: &Term) -> Vec<(&'static str, Term)> {
    let mut out = vec![("self", t.clone())];
    if r.kind == SumKind::Shuffle && !r.index_one && r.colors().as_deref() == Some(&[Term::Fin(1)]) {
        out.push(("omega-index", mk_prod(Term::Omega, Term::Eta)));
    }
    if let Some(d) = drop_small(r) {
        out.push(("drop-small", d));
    }
    out.push(("omega-index", normalize(&mk_prod(Term::Omega, t.clone()))));
    out.push(("zeta-pad", normalize(&mk_prod(Term::Zeta, t.clone()))));
    out.dedup_by(|a, b| a.1 == b.1);
    out
}

/// Replaces every summand by a known representative without finite classes
/// and drops summands with at most one point.
fn drop_small(r: &Resolved) -> Option<Term> {
    let fix = |p: &Term| -> Option<Term> {
        if card(p).is_some_and(|n| n <= 1) {
            return None;
        }
        let fp = f_class_profile(p);
        Some(fp.equimorphic_no_finite_witness.unwrap_or_else(|| p.clone()))
    };
    let g = &r.generator;
    let prefix: Vec<Term> = g.prefix.iter().filter_map(fix).collect();
    let tail = match &g.tail {
        Tail::Constant(c) => Tail::Constant(Box::new(fix(c)?)),
        Tail::Cycle(cs) => {
            let kept: Vec<Term> = cs.iter().filter_map(fix).collect();
            if kept.is_empty() {
                return None;
            }
            Tail::Cycle(kept)
        }
        // The geometric tail loses its first summand: `Σ bⁿ⁺¹` is a copy of `b` per point of `Σ bⁿ`.
        Tail::Geometric(b) if g.prefix.is_empty() => {
            let whole = Resolved { kind: r.kind, generator: g.clone(), index_one: false };
            return Some(normalize(&mk_prod((**b).clone(), whole.realize().ok()?)));
        }
        Tail::Geometric(_) => return None,
        Tail::Fundamental(..) => g.tail.clone(),
    };
    let generator = Generator { prefix, tail };
    Resolved { kind: r.kind, generator, index_one: r.index_one }.realize().ok()
}
