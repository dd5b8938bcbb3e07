//! Structural analysis: endpoints, cardinality, scatteredness and the
//! finite-condensation profile.
//!
//! The finite condensation identifies `x` and `y` when `[x, y]` is finite.
//! Every term gets a compositional [`Summary`]: point-level adjacency counts
//! (used when the term indexes a product) together with the kinds of its
//! leftmost and rightmost classes and the sizes of the finite classes between.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{normalize, power, Generator, Tail, Term};
use crate::ordinal::Ordinal;
use crate::verdict::{Answer, Certificate, Claim, Verdict};

/// Number of leading blocks summarized exactly before the tail is assumed uniform.
const UNROLL: u64 = 8;
/// Deepest nesting of geometric sums the profile analyses.
const MAX_GEOM_NESTING: usize = 2;

type Count = Option<u128>;

fn add(a: Count, b: Count) -> Count {
    Some(a?.checked_add(b?).expect("count overflow"))
}

fn mul(a: Count, b: Count) -> Count {
    match (a, b) {
        (Some(0), _) | (_, Some(0)) => Some(0),
        (Some(x), Some(y)) => Some(x.checked_mul(y).expect("count overflow")),
        _ => None,
    }
}

fn sub1(a: Count) -> Count {
    a.map(|v| v - 1)
}

fn ind(b: bool) -> Count {
    Some(b as u128)
}

/// Order type of an F-class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Finite(u128),
    Omega,
    OmegaStar,
    Zeta,
}

impl Kind {
    fn mirror(self) -> Kind {
        match self {
            Kind::Omega => Kind::OmegaStar,
            Kind::OmegaStar => Kind::Omega,
            k => k,
        }
    }

    /// The class formed when a class with a maximum meets a class with a minimum.
    fn join(self, next: Kind) -> Kind {
        match (self, next) {
            (Kind::Finite(a), Kind::Finite(b)) => Kind::Finite(a + b),
            (Kind::Finite(_), _) => Kind::Omega,
            (_, Kind::Finite(_)) => Kind::OmegaStar,
            _ => Kind::Zeta,
        }
    }

    fn finite(self) -> Option<u128> {
        match self {
            Kind::Finite(n) => Some(n),
            _ => None,
        }
    }
}

/// Multiset of finite class sizes; `None` when there are infinitely many.
type Sizes = Option<BTreeMap<u128, u128>>;

fn sizes_add(a: &Sizes, b: &Sizes) -> Sizes {
    let mut out = a.clone()?;
    for (k, v) in b.as_ref()? {
        *out.entry(*k).or_insert(0) += v;
    }
    Some(out)
}

fn sizes_of(k: Option<Kind>, times: Count) -> Sizes {
    match k.and_then(Kind::finite) {
        None => Some(BTreeMap::new()),
        Some(_) if times == Some(0) => Some(BTreeMap::new()),
        Some(n) => times.map(|t| BTreeMap::from([(n, t)])),
    }
}

fn sizes_times(s: &Sizes, times: Count) -> Sizes {
    match (s, times) {
        (_, Some(0)) => Some(BTreeMap::new()),
        (Some(m), _) if m.is_empty() => Some(BTreeMap::new()),
        (Some(m), Some(t)) => Some(m.iter().map(|(k, v)| (*k, v * t)).collect()),
        _ => None,
    }
}

fn sizes_scale(s: &Sizes, n: u128) -> Sizes {
    s.as_ref().map(|m| m.iter().map(|(k, v)| (k * n, *v)).collect())
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Shape {
    Empty,
    /// The whole order is one class.
    Single(Kind),
    /// At least two classes; `inner` excludes the leftmost and rightmost ones.
    Multi { left: Option<Kind>, right: Option<Kind>, inner: Sizes },
}

/// Compositional summary of a term.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Summary {
    size: Count,
    min: bool,
    max: bool,
    /// Pairs of consecutive points.
    adj: Count,
    /// Points without an immediate predecessor.
    lp: Count,
    /// Points without an immediate successor.
    rs: Count,
    shape: Shape,
}

impl Summary {
    fn empty() -> Summary {
        Summary { size: Some(0), min: false, max: false, adj: Some(0), lp: Some(0), rs: Some(0), shape: Shape::Empty }
    }

    fn fin(n: u64) -> Summary {
        if n == 0 {
            return Summary::empty();
        }
        let n = n as u128;
        Summary {
            size: Some(n),
            min: true,
            max: true,
            adj: Some(n - 1),
            lp: Some(1),
            rs: Some(1),
            shape: Shape::Single(Kind::Finite(n)),
        }
    }

    fn omega() -> Summary {
        Summary { size: None, min: true, max: false, adj: None, lp: Some(1), rs: Some(0), shape: Shape::Single(Kind::Omega) }
    }

    fn zeta() -> Summary {
        Summary { size: None, min: false, max: false, adj: None, lp: Some(0), rs: Some(0), shape: Shape::Single(Kind::Zeta) }
    }

    fn dense() -> Summary {
        Summary {
            size: None,
            min: false,
            max: false,
            adj: Some(0),
            lp: None,
            rs: None,
            shape: Shape::Multi { left: None, right: None, inner: None },
        }
    }

    /// `ω^e` for `e ≥ 1`.
    fn omega_pow(e: &Ordinal) -> Summary {
        if *e == Ordinal::one() {
            return Summary::omega();
        }
        Summary {
            size: None,
            min: true,
            max: false,
            adj: None,
            lp: None,
            rs: Some(0),
            shape: Shape::Multi { left: Some(Kind::Omega), right: None, inner: Some(BTreeMap::new()) },
        }
    }

    fn ordinal(o: &Ordinal) -> Summary {
        o.cnf().iter().fold(Summary::empty(), |acc, (e, c)| {
            let mono = if e.is_zero() {
                Summary::fin(*c)
            } else {
                Summary::omega_pow(e).times(&Summary::fin(*c))
            };
            acc.plus(&mono)
        })
    }

    fn mirror(&self) -> Summary {
        let shape = match &self.shape {
            Shape::Empty => Shape::Empty,
            Shape::Single(k) => Shape::Single(k.mirror()),
            Shape::Multi { left, right, inner } => Shape::Multi {
                left: right.map(Kind::mirror),
                right: left.map(Kind::mirror),
                inner: inner.clone(),
            },
        };
        Summary { min: self.max, max: self.min, lp: self.rs, rs: self.lp, shape, ..self.clone() }
    }

    fn ends(&self) -> (Option<Kind>, Option<Kind>) {
        match &self.shape {
            Shape::Empty => (None, None),
            Shape::Single(k) => (Some(*k), Some(*k)),
            Shape::Multi { left, right, .. } => (*left, *right),
        }
    }

    fn inner(&self) -> Sizes {
        match &self.shape {
            Shape::Multi { inner, .. } => inner.clone(),
            _ => Some(BTreeMap::new()),
        }
    }

    /// Concatenation `self + b`.
    fn plus(&self, b: &Summary) -> Summary {
        if self.shape == Shape::Empty {
            return b.clone();
        }
        if b.shape == Shape::Empty {
            return self.clone();
        }
        let j = self.max && b.min;
        let size = add(self.size, b.size);
        let adj = add(add(self.adj, b.adj), ind(j));
        let lp = if j { sub1(add(self.lp, b.lp)) } else { add(self.lp, b.lp) };
        let rs = if j { sub1(add(self.rs, b.rs)) } else { add(self.rs, b.rs) };
        let a_single = matches!(self.shape, Shape::Single(_));
        let b_single = matches!(b.shape, Shape::Single(_));
        let (a_left, a_right) = self.ends();
        let (b_left, b_right) = b.ends();
        let both_inner = sizes_add(&self.inner(), &b.inner());
        let shape = if j {
            let m = a_right.expect("maximum lies in a class").join(b_left.expect("minimum lies in a class"));
            if a_single && b_single {
                Shape::Single(m)
            } else {
                let middle = if a_single || b_single { Some(BTreeMap::new()) } else { sizes_of(Some(m), Some(1)) };
                Shape::Multi {
                    left: if a_single { Some(m) } else { a_left },
                    right: if b_single { Some(m) } else { b_right },
                    inner: sizes_add(&both_inner, &middle),
                }
            }
        } else {
            let a_edge = if a_single { Some(BTreeMap::new()) } else { sizes_of(a_right, Some(1)) };
            let b_edge = if b_single { Some(BTreeMap::new()) } else { sizes_of(b_left, Some(1)) };
            Shape::Multi { left: a_left, right: b_right, inner: sizes_add(&sizes_add(&both_inner, &a_edge), &b_edge) }
        };
        Summary { size, min: self.min, max: b.max, adj, lp, rs, shape }
    }

    /// Product `self · index`: a copy of `self` for every point of `index`.
    fn times(&self, index: &Summary) -> Summary {
        if self.shape == Shape::Empty || index.shape == Shape::Empty {
            return Summary::empty();
        }
        let a = self;
        let i = index;
        let both = a.min && a.max;
        let size = mul(a.size, i.size);
        let adj = add(mul(a.adj, i.size), if both { i.adj } else { Some(0) });
        let lp = if a.min {
            add(mul(sub1(a.lp), i.size), if a.max { i.lp } else { i.size })
        } else {
            mul(a.lp, i.size)
        };
        let rs = if a.max {
            add(mul(sub1(a.rs), i.size), if a.min { i.rs } else { i.size })
        } else {
            mul(a.rs, i.size)
        };
        let shape = match &a.shape {
            Shape::Single(Kind::Finite(n)) => match &i.shape {
                Shape::Single(k) => Shape::Single(scale_kind(*k, *n)),
                Shape::Multi { left, right, inner } => Shape::Multi {
                    left: left.map(|k| scale_kind(k, *n)),
                    right: right.map(|k| scale_kind(k, *n)),
                    inner: sizes_scale(inner, *n),
                },
                Shape::Empty => unreachable!(),
            },
            Shape::Single(k) => {
                if i.size == Some(1) {
                    Shape::Single(*k)
                } else {
                    Shape::Multi {
                        left: i.min.then_some(*k),
                        right: i.max.then_some(*k),
                        inner: Some(BTreeMap::new()),
                    }
                }
            }
            Shape::Multi { left, right, inner } => {
                let copies = sizes_times(inner, i.size);
                let edges = if both {
                    let m = right.unwrap().join(left.unwrap());
                    sizes_add(
                        &sizes_add(&sizes_of(Some(m), i.adj), &sizes_of(*left, sub(i.lp, i.min))),
                        &sizes_of(*right, sub(i.rs, i.max)),
                    )
                } else {
                    sizes_add(&sizes_of(*left, sub(i.size, i.min)), &sizes_of(*right, sub(i.size, i.max)))
                };
                Shape::Multi {
                    left: if i.min { *left } else { None },
                    right: if i.max { *right } else { None },
                    inner: sizes_add(&copies, &edges),
                }
            }
            Shape::Empty => unreachable!(),
        };
        Summary { size, min: a.min && i.min, max: a.max && i.max, adj, lp, rs, shape }
    }

    /// Every finite class size with its multiplicity; `None` when infinitely many.
    fn finite_classes(&self) -> Sizes {
        match &self.shape {
            Shape::Empty => Some(BTreeMap::new()),
            Shape::Single(k) => sizes_of(Some(*k), Some(1)),
            Shape::Multi { left, right, inner } => {
                sizes_add(&sizes_add(inner, &sizes_of(*left, Some(1))), &sizes_of(*right, Some(1)))
            }
        }
    }
}

fn sub(a: Count, b: bool) -> Count {
    if b {
        sub1(a)
    } else {
        a
    }
}

fn scale_kind(k: Kind, n: u128) -> Kind {
    match k {
        Kind::Finite(m) => Kind::Finite(m * n),
        other => other,
    }
}

fn geom_nesting(t: &Term) -> usize {
    match t {
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => 1 + geom_nesting(r),
        Term::Sum(ps) | Term::Shuffle(ps) => ps.iter().map(geom_nesting).max().unwrap_or(0),
        Term::Prod(a, b) => geom_nesting(a).max(geom_nesting(b)),
        Term::Rev(a) => geom_nesting(a),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
            let tail = match &g.tail {
                Tail::Constant(t) | Tail::Geometric(t) => geom_nesting(t),
                Tail::Cycle(cs) => cs.iter().map(geom_nesting).max().unwrap_or(0),
                Tail::Fundamental(..) => 0,
            };
            g.prefix.iter().map(geom_nesting).max().unwrap_or(0).max(tail)
        }
        _ => 0,
    }
}

fn summarize(t: &Term) -> Option<Summary> {
    Some(match t {
        Term::Fin(n) => Summary::fin(*n),
        Term::Omega => Summary::omega(),
        Term::OmegaStar => Summary::omega().mirror(),
        Term::Zeta => Summary::zeta(),
        Term::Eta | Term::Lambda => Summary::dense(),
        Term::Ord(o) => Summary::ordinal(o),
        Term::OrdRev(o) => Summary::ordinal(o).mirror(),
        Term::Sum(ps) => {
            let mut acc = Summary::empty();
            for p in ps {
                acc = acc.plus(&summarize(p)?);
            }
            acc
        }
        Term::Prod(a, b) => summarize(a)?.times(&summarize(b)?),
        Term::Rev(a) => summarize(a)?.mirror(),
        Term::Shuffle(cs) => {
            let mut out = Summary::dense();
            let copies: Vec<Summary> =
                cs.iter().map(|c| Some(summarize(c)?.times(&Summary::dense()))).collect::<Option<_>>()?;
            let any_inf = |f: &dyn Fn(&Summary) -> Count| {
                if copies.iter().all(|s| f(s) == Some(0)) {
                    Some(0)
                } else {
                    None
                }
            };
            out.adj = any_inf(&|s| s.adj);
            out.lp = any_inf(&|s| s.lp);
            out.rs = any_inf(&|s| s.rs);
            let all_infinite = copies.iter().all(|s| s.finite_classes().is_some_and(|m| m.is_empty()));
            out.shape = Shape::Multi { left: None, right: None, inner: if all_infinite { Some(BTreeMap::new()) } else { None } };
            out
        }
        Term::GeomOmega(r) => block_sum(&|n| power(&normalize(r), n), false, None)?,
        Term::GeomOmegaStar(r) => block_sum(&|n| power(&normalize(r), n), true, None)?,
        Term::OmegaSum(g) => block_sum(&|n| g.at(n), false, period(g))?,
        Term::OmegaStarSum(g) => block_sum(&|n| g.at(n), true, period(g))?,
    })
}

/// Prefix length and cycle length of a cyclic generator.
fn period(g: &Generator) -> Option<(u64, u64)> {
    match &g.tail {
        Tail::Cycle(cs) => Some((g.prefix.len() as u64, cs.len() as u64)),
        _ => None,
    }
}

/// Summary of `Σ_{n∈ω} B_n`, or of `Σ_{n∈ω*} B_n` when `star`.
///
/// Cyclic generators are grouped into whole periods. Otherwise the blocks from
/// `UNROLL` on must share the summary of the last three sampled blocks; when
/// they do not, the analysis gives up.
fn block_sum(block: &dyn Fn(u64) -> Term, star: bool, cycle: Option<(u64, u64)>) -> Option<Summary> {
    let (head, tail) = match cycle {
        Some((start, len)) => {
            let head: Vec<Summary> = (0..start).map(|n| summarize(&block(n))).collect::<Option<_>>()?;
            let mut period = Summary::empty();
            for j in 0..len {
                let s = summarize(&block(start + j))?;
                period = if star { s.plus(&period) } else { period.plus(&s) };
            }
            (head, period)
        }
        None => {
            let sums: Vec<Summary> = (0..=UNROLL + 2).map(|n| summarize(&block(n))).collect::<Option<_>>()?;
            let tail = sums[UNROLL as usize].clone();
            if sums[UNROLL as usize + 1] != tail || sums[UNROLL as usize + 2] != tail {
                return None;
            }
            (sums[..UNROLL as usize].to_vec(), tail)
        }
    };
    if star {
        let mut acc = tail.times(&Summary::omega().mirror());
        for s in head.iter().rev() {
            acc = acc.plus(s);
        }
        Some(acc)
    } else {
        let mut acc = Summary::empty();
        for s in &head {
            acc = acc.plus(s);
        }
        Some(acc.plus(&tail.times(&Summary::omega())))
    }
}

/// Outcome of the finite-condensation analysis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FStatus {
    AllInfinite,
    /// `classes` lists each occurring finite class type with its multiplicity.
    FinitelyManyFinite { count: u128, classes: Vec<String> },
    InfinitelyManyFinite,
    Unknown,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FProfile {
    pub status: FStatus,
    /// An equimorphic type without finite classes, when one is known here.
    pub equimorphic_no_finite_witness: Option<Term>,
}

impl FProfile {
    /// Number of finite classes: `Some(Some(n))` finite, `Some(None)` infinite, `None` unknown.
    pub fn finite_count(&self) -> Option<Option<u128>> {
        match &self.status {
            FStatus::AllInfinite => Some(Some(0)),
            FStatus::FinitelyManyFinite { count, .. } => Some(Some(*count)),
            FStatus::InfinitelyManyFinite => Some(None),
            FStatus::Unknown => None,
        }
    }
}

/// Counts the finite classes of the finite condensation of `t`.
pub fn f_class_profile(t: &Term) -> FProfile {
    let t = normalize(t);
    let witness = match &t {
        Term::Eta => Some(Term::prod(Term::Zeta, Term::Eta)),
        _ => None,
    };
    if geom_nesting(&t) > MAX_GEOM_NESTING {
        return FProfile { status: FStatus::Unknown, equimorphic_no_finite_witness: None };
    }
    let status = match summarize(&t).map(|s| s.finite_classes()) {
        None => FStatus::Unknown,
        Some(None) => FStatus::InfinitelyManyFinite,
        Some(Some(m)) if m.is_empty() => FStatus::AllInfinite,
        Some(Some(m)) => FStatus::FinitelyManyFinite {
            count: m.values().sum(),
            classes: m.iter().map(|(size, mult)| format!("{mult} x {size}")).collect(),
        },
    };
    let witness = match status {
        FStatus::AllInfinite => Some(t),
        _ => witness,
    };
    FProfile { status, equimorphic_no_finite_witness: witness }
}

/// Number of pairs of consecutive points: `Some(None)` when infinite, `None` when the analysis fails.
pub fn adjacent_pairs(t: &Term) -> Option<Option<u128>> {
    summarize(&normalize(t)).map(|s| s.adj)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "class", content = "n")]
pub enum Cardinality {
    Finite(u128),
    CountablyInfinite,
    Continuum,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructuralFacts {
    pub has_left_endpoint: bool,
    pub has_right_endpoint: bool,
    pub cardinality: Cardinality,
    pub scattered: Verdict,
    pub sigma_scattered: Verdict,
}

fn endpoints(t: &Term) -> (bool, bool) {
    match t {
        Term::Fin(n) => (*n > 0, *n > 0),
        Term::Omega => (true, false),
        Term::Ord(o) => (true, o.is_successor()),
        Term::OmegaStar | Term::OrdRev(_) => (false, true),
        Term::Zeta | Term::Eta | Term::Lambda | Term::Shuffle(_) => (false, false),
        Term::Sum(ps) => {
            let nz: Vec<&Term> = ps.iter().filter(|p| cardinality(p) != Cardinality::Finite(0)).collect();
            match (nz.first(), nz.last()) {
                (Some(a), Some(b)) => (endpoints(a).0, endpoints(b).1),
                _ => (false, false),
            }
        }
        Term::Prod(a, b) => {
            let (al, ar) = endpoints(a);
            let (bl, br) = endpoints(b);
            (al && bl, ar && br)
        }
        Term::Rev(a) => {
            let (l, r) = endpoints(a);
            (r, l)
        }
        Term::GeomOmega(_) => (true, false),
        Term::GeomOmegaStar(_) => (false, true),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
            let star = matches!(t, Term::OmegaStarSum(_));
            let first_nonempty = (0..=UNROLL).map(|n| g.at(n)).find(|b| cardinality(b) != Cardinality::Finite(0));
            let finitely_many = super::points::card(t).is_some();
            match first_nonempty {
                None => (false, false),
                Some(b) => {
                    let (l, r) = endpoints(&b);
                    // the last nonempty block matters only when the sum is finite
                    let far = finitely_many && {
                        let n = (0..=UNROLL).rev().map(|n| g.at(n)).find(|b| cardinality(b) != Cardinality::Finite(0));
                        n.map(|b| if star { endpoints(&b).0 } else { endpoints(&b).1 }).unwrap_or(false)
                    };
                    if star {
                        (far, r)
                    } else {
                        (l, far)
                    }
                }
            }
        }
    }
}

fn cardinality(t: &Term) -> Cardinality {
    if t.has_lambda() && super::points::card(t) != Some(0) {
        Cardinality::Continuum
    } else {
        match super::points::card(t) {
            Some(n) => Cardinality::Finite(n),
            None => Cardinality::CountablyInfinite,
        }
    }
}

/// Whether a dense leaf survives in a nonempty context, making the type non-scattered.
pub(crate) fn embeds_eta(t: &Term) -> bool {
    let t = normalize(t);
    t.has_dense_leaf() && !t.is_zero()
}

/// Endpoints, cardinality and scatteredness of `t`, computed by structural recursion.
pub fn structural_facts(t: &Term) -> StructuralFacts {
    let t = normalize(t);
    let (l, r) = endpoints(&t);
    let cardinality = cardinality(&t);
    let scat = Claim::Flag { name: "scattered".into(), term: t.clone() };
    let scattered = if embeds_eta(&t) {
        Verdict::decided(Certificate::new(Answer::No, "S-DENSE-LEAF", scat))
    } else {
        Verdict::decided(Certificate::new(Answer::Yes, "S-NO-DENSE-LEAF", scat))
    };
    let sig = Claim::Flag { name: "sigma_scattered".into(), term: t.clone() };
    let sigma_scattered = match cardinality {
        Cardinality::Continuum => {
            Verdict::decided(Certificate::new(Answer::No, "S-CONTINUUM-DENSE", sig).axiom("classical"))
        }
        _ => Verdict::decided(Certificate::new(Answer::Yes, "S-COUNTABLE", sig)),
    };
    StructuralFacts { has_left_endpoint: l, has_right_endpoint: r, cardinality, scattered, sigma_scattered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> Term {
        normalize(&parse_term(s).unwrap())
    }

    fn count(s: &str) -> Option<Option<u128>> {
        f_class_profile(&t(s)).finite_count()
    }

    #[test]
    fn profile_examples() {
        assert_eq!(f_class_profile(&Term::Zeta).status, FStatus::AllInfinite);
        assert_eq!(count("w + 1"), Some(Some(1)));
        assert_eq!(count("geomrev(w)"), Some(Some(1)));
        let eta = f_class_profile(&Term::Eta);
        assert_eq!(eta.status, FStatus::InfinitelyManyFinite);
        assert_eq!(eta.equimorphic_no_finite_witness, Some(Term::prod(Term::Zeta, Term::Eta)));
        let lam = f_class_profile(&Term::Lambda);
        assert_eq!(lam.equimorphic_no_finite_witness, None);
        assert_eq!(f_class_profile(&Term::Fin(0)).status, FStatus::AllInfinite);
    }

    #[test]
    fn sums_and_products() {
        assert_eq!(count("3"), Some(Some(1)));
        assert_eq!(count("w~ + 2 + w"), Some(Some(0)));
        assert_eq!(count("(w + 1)*3"), Some(Some(1)));
        assert_eq!(count("(z + 1)*3"), Some(Some(3)));
        assert_eq!(count("(z + 1)*w"), Some(None));
        assert_eq!(count("(1 + w~)*w"), Some(Some(1)));
        assert_eq!(count("w*w~ + 5"), Some(Some(1)));
        assert_eq!(count("z*q"), Some(Some(0)));
        assert_eq!(count("(q + 1)*z"), Some(None));
        assert_eq!(count("w^(w)"), Some(Some(0)));
        assert_eq!(count("w^(3) + w*2 + 4"), Some(Some(1)));
    }

    #[test]
    fn geometric_nesting_limit() {
        assert!(count("geom(geom(w~))").is_some());
        assert_eq!(count("geom(geom(geom(w~)))"), None);
    }

    #[test]
    fn class_descriptions() {
        match f_class_profile(&t("(z + 2)*3")).status {
            FStatus::FinitelyManyFinite { count, classes } => {
                assert_eq!(count, 3);
                assert_eq!(classes, vec!["3 x 2".to_string()]);
            }
            s => panic!("unexpected {s:?}"),
        }
    }

    #[test]
    fn structural_examples() {
        let f = structural_facts(&t("w + 1"));
        assert!(f.has_left_endpoint && f.has_right_endpoint);
        assert_eq!(f.cardinality, Cardinality::CountablyInfinite);
        assert!(f.scattered.is_yes());
        assert!(structural_facts(&t("q*w")).scattered.is_no());
        let phi = structural_facts(&t("geomrev(w)"));
        assert!(phi.scattered.is_yes() && phi.has_right_endpoint && !phi.has_left_endpoint);
        let lam = structural_facts(&Term::Lambda);
        assert_eq!(lam.cardinality, Cardinality::Continuum);
        assert!(lam.sigma_scattered.is_no());
        assert_eq!(structural_facts(&t("4")).cardinality, Cardinality::Finite(4));
    }
}
