//! Condensations: the finite condensation on finite chains and on sampled
//! term windows, the `E_Y` condensation with its explicit embedding into
//! `y·(x//y)`, and the self-similar condensation driven by an injected
//! interval oracle.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{embeds as finite_embeds, is_embedding, FiniteOrder};
use crate::term::{compare_points, interval_is_finite, mk_prod, mk_sum, sample_window, Point, Term};
use crate::verdict::Answer;

/// Order type of one class of the finite condensation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Finite(u128),
    Omega,
    OmegaStar,
    Zeta,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Finite(n) => write!(f, "{n}"),
            ClassTag::Omega => f.write_str("w"),
            ClassTag::OmegaStar => f.write_str("w~"),
            ClassTag::Zeta => f.write_str("z"),
        }
    }
}

/// A convex class, given as the inclusive index range `start..=end` of the carrier.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Class {
    pub start: usize,
    pub end: usize,
    pub first: String,
    pub last: String,
    pub tag: Option<ClassTag>,
}

impl Class {
    /// Number of carrier points in the class.
    pub fn size(&self) -> usize {
        self.end - self.start + 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quotient {
    Finite { size: usize },
    Term { term: Term },
    /// A sampled window: only the number of sampled classes is known.
    Window { classes: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CondensationResult {
    pub carrier_size: usize,
    pub classes: Vec<Class>,
    pub quotient: Quotient,
    /// `witness_map[x] = (i, c)` sends point `x` to the `i`-th point of copy `c`.
    pub witness_map: Option<Vec<(usize, usize)>>,
}

impl CondensationResult {
    /// Classes are nonempty, consecutive, and cover the carrier.
    pub fn is_partition(&self) -> bool {
        let mut next = 0;
        for c in &self.classes {
            if c.start != next || c.end < c.start {
                return false;
            }
            next = c.end + 1;
        }
        next == self.carrier_size
    }

    /// Index of the class containing carrier point `x`.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.start <= x && x <= c.end)
    }
}

fn ranges<T: fmt::Display>(
    points: &[T],
    same: impl Fn(usize) -> bool,
    tag: impl Fn(usize, usize) -> Option<ClassTag>,
) -> Vec<Class> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..points.len() {
        if i + 1 == points.len() || !same(i) {
            out.push(Class {
                start,
                end: i,
                first: points[start].to_string(),
                last: points[i].to_string(),
                tag: tag(start, i),
            });
            start = i + 1;
        }
    }
    out
}

/// The finite condensation of a finite chain: a single class.
pub fn finite_condensation(x: FiniteOrder) -> CondensationResult {
    let pts: Vec<usize> = (0..x.size).collect();
    let classes = ranges(&pts, |_| true, |s, e| Some(ClassTag::Finite((e - s + 1) as u128)));
    CondensationResult {
        carrier_size: x.size,
        quotient: Quotient::Finite { size: classes.len() },
        classes,
        witness_map: None,
    }
}

/// Finite condensation of the sampled window of `t` at cut `k`.
///
/// Consecutive window points share a class when the interval between them is
/// finite. A class is tagged by comparing with the window at cut `k + 2`: it is
/// finite when it does not grow, and grows rightwards for `ω`, leftwards for
/// `ω*`, and both ways for `ζ`.
pub fn window_condensation(t: &Term, k: u64) -> Result<CondensationResult> {
    let pts = sample_window(t, k);
    let big = sample_window(t, k + 2);
    let linked = |ps: &[Point]| -> Result<Vec<bool>> {
        ps.windows(2).map(|w| interval_is_finite(t, &w[0], &w[1]).map(|r| r.0)).collect()
    };
    let small_links = linked(&pts)?;
    let big_links = linked(&big)?;
    let big_classes = ranges(&big, |i| big_links[i], |_, _| None);
    let position = |p: &Point| -> Result<usize> {
        big.binary_search_by(|q| compare_points(t, q, p).unwrap_or(Ordering::Equal))
            .map_err(|_| Error::Inconsistency(format!("window point {p} missing from the larger window")))
    };
    let mut tags = Vec::new();
    {
        let mut start = 0;
        for i in 0..pts.len() {
            if i + 1 == pts.len() || !small_links[i] {
                let (a, b) = (position(&pts[start])?, position(&pts[i])?);
                let c = &big_classes[big_classes.iter().position(|c| c.start <= a && a <= c.end).unwrap()];
                let left = c.start < a;
                let right = c.end > b;
                tags.push(match (left, right) {
                    (false, false) => ClassTag::Finite((i - start + 1) as u128),
                    (false, true) => ClassTag::Omega,
                    (true, false) => ClassTag::OmegaStar,
                    (true, true) => ClassTag::Zeta,
                });
                start = i + 1;
            }
        }
    }
    let mut classes = ranges(&pts, |i| small_links[i], |_, _| None);
    for (c, tag) in classes.iter_mut().zip(tags) {
        c.tag = Some(tag);
    }
    Ok(CondensationResult {
        carrier_size: pts.len(),
        quotient: Quotient::Window { classes: classes.len() },
        classes,
        witness_map: None,
    })
}

/// Which side of the dichotomy `x ⩽ y` or `x ⩽ x//y` holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arm {
    IntoSubset,
    IntoQuotient,
    Both,
    Neither,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EyCondensation {
    pub subset: Vec<usize>,
    pub result: CondensationResult,
    /// The embedding flattened into `y·(x//y)`, where copy `c` occupies `c·|y| .. (c+1)·|y|`.
    pub embedding: Vec<usize>,
    pub verified: bool,
    /// Reported when `x` is untranscendable, i.e. `|x| ≤ 2`.
    pub dichotomy: Option<Arm>,
}

/// Collapses the maximal runs of `y` inside the chain `x` and embeds `x` into `y·(x//y)`.
pub fn e_y_condense(x: FiniteOrder, y: &[usize]) -> Result<EyCondensation> {
    let mut y = y.to_vec();
    y.sort_unstable();
    y.dedup();
    if y.is_empty() {
        return Err(Error::InvalidArgument("the subset must be nonempty".into()));
    }
    if let Some(bad) = y.iter().find(|&&v| v >= x.size) {
        return Err(Error::InvalidArgument(format!("point {bad} is outside the chain of size {}", x.size)));
    }
    let pts: Vec<usize> = (0..x.size).collect();
    let in_y = |p: usize| y.binary_search(&p).is_ok();
    let classes = ranges(&pts, |i| in_y(i) && in_y(i + 1), |s, e| Some(ClassTag::Finite((e - s + 1) as u128)));
    let q = classes.len();
    let mut result =
        CondensationResult { carrier_size: x.size, classes, quotient: Quotient::Finite { size: q }, witness_map: None };
    let map: Vec<(usize, usize)> = pts
        .iter()
        .map(|&p| {
            let c = result.class_of(p).unwrap();
            (y.binary_search(&p).unwrap_or(0), c)
        })
        .collect();
    let ny = y.len();
    let embedding: Vec<usize> = map.iter().map(|&(i, c)| c * ny + i).collect();
    let verified = is_embedding(x, FiniteOrder::new(ny * q), &embedding);
    result.witness_map = Some(map);
    let dichotomy = (x.size <= 2).then(|| {
        match (finite_embeds(x, FiniteOrder::new(ny)), finite_embeds(x, FiniteOrder::new(q))) {
            (true, true) => Arm::Both,
            (true, false) => Arm::IntoSubset,
            (false, true) => Arm::IntoQuotient,
            (false, false) => Arm::Neither,
        }
    });
    Ok(EyCondensation { subset: y, result, embedding, verified, dichotomy })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SelfSimilarCondensation {
    pub result: CondensationResult,
    /// For each pair of classes `A < B`, the claim that the quotient embeds in `[A, B]`.
    pub obligations: Vec<String>,
    pub notes: Vec<String>,
}

/// Classes of `x E x'` iff the whole order does not embed in `[x, x']`.
///
/// `carrier` must be sorted. `oracle(p, q)` answers whether the order embeds in
/// `[p, q]`; the hypothesis `x·2 ⩽ x` that makes `E` a convex equivalence is the
/// caller's responsibility and is re-checked on each class's endpoints.
pub fn self_similar_condense<P: fmt::Display>(
    carrier: &[P],
    mut oracle: impl FnMut(&P, &P) -> Answer,
) -> Result<SelfSimilarCondensation> {
    let mut ask = |p: &P, q: &P| match oracle(p, q) {
        Answer::Unknown => Err(Error::OracleUnknown(format!("embedding into [{p}, {q}]"))),
        a => Ok(a),
    };
    let mut links = Vec::new();
    for w in carrier.windows(2) {
        links.push(ask(&w[0], &w[1])? == Answer::No);
    }
    let classes = ranges(carrier, |i| links[i], |_, _| None);
    for c in &classes {
        if c.start < c.end && ask(&carrier[c.start], &carrier[c.end])? == Answer::Yes {
            return Err(Error::Inconsistency(format!(
                "the relation is not transitive on [{}, {}]; the doubling hypothesis fails",
                c.first, c.last
            )));
        }
    }
    let mut obligations = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            obligations.push(format!("X/E <= [{}, {}]", a.first, b.last));
        }
    }
    let notes = if classes.len() == 1 && !carrier.is_empty() {
        vec!["single class: the doubling hypothesis fails for this carrier".to_string()]
    } else {
        Vec::new()
    };
    let result = CondensationResult {
        carrier_size: carrier.len(),
        quotient: Quotient::Window { classes: classes.len() },
        classes,
        witness_map: None,
    };
    Ok(SelfSimilarCondensation { result, obligations, notes })
}

/// Self-similar condensation of a finite chain; every class is the whole chain.
pub fn self_similar_condense_finite(
    x: FiniteOrder,
    oracle: impl FnMut(&usize, &usize) -> Answer,
) -> Result<SelfSimilarCondensation> {
    let pts: Vec<usize> = (0..x.size).collect();
    let mut out = self_similar_condense(&pts, oracle)?;
    out.notes.push("finite carrier: x·2 ⩽ x fails".to_string());
    out.result.quotient = Quotient::Finite { size: out.result.classes.len() };
    Ok(out)
}

fn sum(parts: Vec<Term>) -> Term {
    mk_sum(parts)
}

/// Points strictly after `p`.
fn after(t: &Term, p: &Point) -> Option<Term> {
    Some(match (t, p) {
        (Term::Fin(n), Point::Int(i)) => Term::Fin(*n - 1 - *i as u64),
        (Term::Omega | Term::Zeta, Point::Int(_)) => Term::Omega,
        (Term::OmegaStar, Point::Int(i)) => Term::Fin(i.unsigned_abs()),
        (Term::Eta | Term::Lambda, Point::Dyadic(..)) => t.clone(),
        (Term::Sum(ps), Point::Part(i, x)) => {
            let mut v = vec![after(&ps[*i], x)?];
            v.extend(ps[i + 1..].iter().cloned());
            sum(v)
        }
        (Term::Prod(a, b), Point::Pair { index, inner }) => {
            sum(vec![after(a, inner)?, mk_prod((**a).clone(), after(b, index)?)])
        }
        (Term::Rev(a), _) => Term::rev(before(a, p)?),
        _ => return None,
    })
}

/// Points strictly before `p`.
fn before(t: &Term, p: &Point) -> Option<Term> {
    Some(match (t, p) {
        (Term::Fin(_) | Term::Omega, Point::Int(i)) => Term::Fin(*i as u64),
        (Term::OmegaStar | Term::Zeta, Point::Int(_)) => Term::OmegaStar,
        (Term::Eta | Term::Lambda, Point::Dyadic(..)) => t.clone(),
        (Term::Sum(ps), Point::Part(i, x)) => {
            let mut v = ps[..*i].to_vec();
            v.push(before(&ps[*i], x)?);
            sum(v)
        }
        (Term::Prod(a, b), Point::Pair { index, inner }) => {
            sum(vec![mk_prod((**a).clone(), before(b, index)?), before(a, inner)?])
        }
        (Term::Rev(a), _) => Term::rev(after(a, p)?),
        _ => return None,
    })
}

/// Points strictly between `p < q`.
fn between(t: &Term, p: &Point, q: &Point) -> Option<Term> {
    Some(match (t, p, q) {
        (Term::Fin(_) | Term::Omega | Term::OmegaStar | Term::Zeta, Point::Int(i), Point::Int(j)) => {
            Term::Fin((j - i - 1) as u64)
        }
        (Term::Eta | Term::Lambda, Point::Dyadic(..), Point::Dyadic(..)) => t.clone(),
        (Term::Sum(ps), Point::Part(i, x), Point::Part(j, y)) => {
            if i == j {
                between(&ps[*i], x, y)?
            } else {
                let mut v = vec![after(&ps[*i], x)?];
                v.extend(ps[i + 1..*j].iter().cloned());
                v.push(before(&ps[*j], y)?);
                sum(v)
            }
        }
        (Term::Prod(a, b), Point::Pair { index: i, inner: x }, Point::Pair { index: j, inner: y }) => {
            if i == j {
                between(a, x, y)?
            } else {
                sum(vec![after(a, x)?, mk_prod((**a).clone(), between(b, i, j)?), before(a, y)?])
            }
        }
        (Term::Rev(a), _, _) => Term::rev(between(a, q, p)?),
        _ => return None,
    })
}

/// The order type of the closed interval `[p, q]` of `t`, for the shapes built
/// from finite, `ω`, `ω*`, `ζ`, `η`, `λ` leaves by sums, products and reversal.
pub fn interval_term(t: &Term, p: &Point, q: &Point) -> Result<Option<Term>> {
    Ok(match compare_points(t, p, q)? {
        Ordering::Greater => return Err(Error::InvalidArgument("interval endpoints out of order".into())),
        Ordering::Equal => Some(Term::Fin(1)),
        Ordering::Less => between(t, p, q).map(|m| crate::term::normalize(&sum(vec![Term::Fin(1), m, Term::Fin(1)]))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;
    use crate::term::{normalize, parse_term};

    fn t(s: &str) -> Term {
        normalize(&parse_term(s).unwrap())
    }

    #[test]
    fn finite_chain_is_one_class() {
        let r = finite_condensation(FiniteOrder::new(5));
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].tag, Some(ClassTag::Finite(5)));
        assert!(r.is_partition());
    }

    #[test]
    fn window_tags() {
        let r = window_condensation(&t("w + 1"), 10).unwrap();
        let tags: Vec<_> = r.classes.iter().map(|c| c.tag.unwrap()).collect();
        assert_eq!(tags, vec![ClassTag::Omega, ClassTag::Finite(1)]);
        assert!(r.classes[0].size() >= 10);
        let z = window_condensation(&t("z*3"), 3).unwrap();
        assert_eq!(z.classes.iter().map(|c| c.tag.unwrap()).collect::<Vec<_>>(), vec![ClassTag::Zeta; 3]);
        let s = window_condensation(&t("w~ + 2 + w"), 4).unwrap();
        let tags: Vec<_> = s.classes.iter().map(|c| c.tag.unwrap()).collect();
        assert_eq!(tags, vec![ClassTag::Zeta]);
        assert!(s.is_partition());
    }

    #[test]
    fn e_y_example() {
        let r = e_y_condense(FiniteOrder::new(4), &[1, 2]).unwrap();
        let spans: Vec<_> = r.result.classes.iter().map(|c| (c.start, c.end)).collect();
        assert_eq!(spans, vec![(0, 0), (1, 2), (3, 3)]);
        assert_eq!(r.result.quotient, Quotient::Finite { size: 3 });
        assert!(r.verified);
        let one = e_y_condense(FiniteOrder::new(1), &[0]).unwrap();
        assert_eq!(one.result.quotient, Quotient::Finite { size: 1 });
        assert!(matches!(e_y_condense(FiniteOrder::new(3), &[]), Err(Error::InvalidArgument(_))));
        assert!(matches!(e_y_condense(FiniteOrder::new(3), &[3]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn e_y_dichotomy_for_two() {
        for y in [vec![0], vec![1], vec![0, 1]] {
            let r = e_y_condense(FiniteOrder::new(2), &y).unwrap();
            assert!(matches!(r.dichotomy, Some(Arm::IntoSubset | Arm::IntoQuotient | Arm::Both)));
        }
        assert_eq!(e_y_condense(FiniteOrder::new(3), &[1]).unwrap().dichotomy, None);
    }

    #[test]
    fn self_similar_eta() {
        let pts = sample_window(&Term::Eta, 2);
        let r = self_similar_condense(&pts, |p, q| Answer::from_bool(p != q)).unwrap();
        assert_eq!(r.result.classes.len(), pts.len());
        assert!(r.result.classes.iter().all(|c| c.size() == 1));
    }

    #[test]
    fn self_similar_zeta_eta_from_engine() {
        let zq = t("z*q");
        let pts = sample_window(&zq, 1);
        let mut e = Engine::default();
        let r = self_similar_condense(&pts, |p, q| match interval_term(&zq, p, q).unwrap() {
            Some(i) => e.embeds(&zq, &i).answer,
            None => Answer::Unknown,
        })
        .unwrap();
        // Window cut 1 samples 3 ζ points in each of 6 dyadic blocks.
        assert_eq!(r.result.classes.len(), 6);
        assert!(r.result.classes.iter().all(|c| c.size() == 3));
    }

    #[test]
    fn self_similar_degenerate_and_unknown() {
        let r = self_similar_condense_finite(FiniteOrder::new(4), |_, _| Answer::No).unwrap();
        assert_eq!(r.result.classes.len(), 1);
        assert!(!r.notes.is_empty());
        let e = self_similar_condense(&[1, 2], |_, _| Answer::Unknown);
        assert!(matches!(e, Err(Error::OracleUnknown(_))));
    }

    #[test]
    fn interval_terms() {
        let w = t("z*2");
        let p = Point::Pair { index: Box::new(Point::Int(0)), inner: Box::new(Point::Int(3)) };
        let q = Point::Pair { index: Box::new(Point::Int(1)), inner: Box::new(Point::Int(2)) };
        assert_eq!(interval_term(&w, &p, &q).unwrap(), Some(t("1 + w + w~ + 1")));
        let e = Point::Dyadic(0, 0);
        let f = Point::Dyadic(1, 0);
        assert_eq!(interval_term(&Term::Eta, &e, &f).unwrap(), Some(t("1 + q + 1")));
    }
}
