//! Constructive presentation of terms: points as paths, comparison, and
//! exact interval cardinalities.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{normalize, power, Generator, Tail, Term};
use crate::error::{Error, Result};
use crate::ordinal::{fundamental_sequence, Ordinal};

/// A point of a term-presented order.
///
/// `Int` serves `Fin` (`0..n`), `Omega` (`≥ 0`), `OmegaStar` (`≤ 0`) and `Zeta`;
/// `Dyadic(m, e)` is the rational `m/2^e` inside `Eta` or `Lambda`;
/// `Ord` is an ordinal below an ordinal leaf (read backwards in `OrdRev`).
/// Points of `Rev(t)` are points of `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Point {
    Int(i64),
    Dyadic(i64, u32),
    Ord(Ordinal),
    Part(usize, Box<Point>),
    Pair { index: Box<Point>, inner: Box<Point> },
    Block(u64, Box<Point>),
    Colored(i64, u32, Box<Point>),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Int(k) => write!(f, "{k}"),
            Point::Dyadic(m, 0) => write!(f, "{m}"),
            Point::Dyadic(m, e) => write!(f, "{m}/2^{e}"),
            Point::Ord(o) => write!(f, "[{o}]"),
            Point::Part(i, p) => write!(f, "#{i}.{p}"),
            Point::Pair { index, inner } => write!(f, "({inner} @ {index})"),
            Point::Block(n, p) => write!(f, "b{n}.{p}"),
            Point::Colored(m, e, p) => write!(f, "<{m}/2^{e}>.{p}"),
        }
    }
}

const MAX_DYADIC_EXP: u32 = 60;

fn reduced_exp(m: i64, e: u32) -> u32 {
    let (mut m, mut e) = (m, e);
    while e > 0 && m % 2 == 0 {
        m /= 2;
        e -= 1;
    }
    e
}

fn dyadic_cmp(a: (i64, u32), b: (i64, u32)) -> Ordering {
    let l = (a.0 as i128) << b.1;
    let r = (b.0 as i128) << a.1;
    l.cmp(&r)
}

fn malformed(t: &Term, p: &Point) -> Error {
    Error::MalformedPoint(format!("{p} is not a point of {t}"))
}

/// Color of a shuffle position: the exponent of its reduced dyadic form, modulo the color count.
fn shuffle_color(m: i64, e: u32, colors: usize) -> usize {
    reduced_exp(m, e) as usize % colors
}

/// The `n`-th block of a block-indexed term.
fn block(t: &Term, n: u64) -> Term {
    match t {
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => power(&normalize(r), n),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => g.at(n),
        _ => unreachable!("not a block sum"),
    }
}

fn is_star_block(t: &Term) -> bool {
    matches!(t, Term::GeomOmegaStar(_) | Term::OmegaStarSum(_))
}

/// Checks that `p` is a point of `t`.
pub fn check_point(t: &Term, p: &Point) -> Result<()> {
    let ok = match (t, p) {
        (Term::Rev(a), _) => return check_point(a, p),
        (Term::Fin(n), Point::Int(k)) => *k >= 0 && (*k as u64) < *n,
        (Term::Omega, Point::Int(k)) => *k >= 0,
        (Term::OmegaStar, Point::Int(k)) => *k <= 0,
        (Term::Zeta, Point::Int(_)) => true,
        (Term::Eta | Term::Lambda, Point::Dyadic(_, e)) => *e <= MAX_DYADIC_EXP,
        (Term::Ord(o) | Term::OrdRev(o), Point::Ord(b)) => b < o,
        (Term::Sum(ps), Point::Part(i, x)) => {
            return match ps.get(*i) {
                Some(part) => check_point(part, x),
                None => Err(malformed(t, p)),
            }
        }
        (Term::Prod(a, b), Point::Pair { index, inner }) => {
            check_point(b, index)?;
            return check_point(a, inner);
        }
        (
            Term::GeomOmega(_) | Term::GeomOmegaStar(_) | Term::OmegaSum(_) | Term::OmegaStarSum(_),
            Point::Block(n, x),
        ) => return check_point(&block(t, *n), x),
        (Term::Shuffle(cs), Point::Colored(m, e, x)) => {
            if *e > MAX_DYADIC_EXP {
                return Err(malformed(t, p));
            }
            return check_point(&cs[shuffle_color(*m, *e, cs.len())], x);
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(malformed(t, p))
    }
}

/// Compares two points of `t`.
pub fn compare_points(t: &Term, p: &Point, q: &Point) -> Result<Ordering> {
    check_point(t, p)?;
    check_point(t, q)?;
    Ok(cmp(t, p, q))
}

fn cmp(t: &Term, p: &Point, q: &Point) -> Ordering {
    match (t, p, q) {
        (Term::Rev(a), _, _) => cmp(a, q, p),
        (_, Point::Int(a), Point::Int(b)) => a.cmp(b),
        (_, Point::Dyadic(a, x), Point::Dyadic(b, y)) => dyadic_cmp((*a, *x), (*b, *y)),
        (Term::OrdRev(_), Point::Ord(a), Point::Ord(b)) => b.cmp(a),
        (_, Point::Ord(a), Point::Ord(b)) => a.cmp(b),
        (Term::Sum(ps), Point::Part(i, x), Point::Part(j, y)) => {
            i.cmp(j).then_with(|| cmp(&ps[*i], x, y))
        }
        (Term::Prod(a, b), Point::Pair { index: i, inner: x }, Point::Pair { index: j, inner: y }) => {
            cmp(b, i, j).then_with(|| cmp(a, x, y))
        }
        (_, Point::Block(n, x), Point::Block(m, y)) => {
            let o = if is_star_block(t) { m.cmp(n) } else { n.cmp(m) };
            o.then_with(|| cmp(&block(t, *n), x, y))
        }
        (Term::Shuffle(cs), Point::Colored(a, e, x), Point::Colored(b, f, y)) => {
            dyadic_cmp((*a, *e), (*b, *f))
                .then_with(|| cmp(&cs[shuffle_color(*a, *e, cs.len())], x, y))
        }
        _ => unreachable!("points checked against the term"),
    }
}

type Count = Option<u128>;

fn add(a: Count, b: Count) -> Count {
    Some(a?.checked_add(b?).expect("interval count overflow"))
}

fn mul(a: Count, b: Count) -> Count {
    match (a, b) {
        (Some(0), _) | (_, Some(0)) => Some(0),
        (Some(x), Some(y)) => Some(x.checked_mul(y).expect("interval count overflow")),
        _ => None,
    }
}

fn sub(a: Count, k: u128) -> Count {
    a.map(|v| v - k)
}

/// Whether the generator has only finitely many nonempty elements.
fn eventually_empty(g: &Generator) -> bool {
    match &g.tail {
        Tail::Constant(t) | Tail::Geometric(t) => normalize(t).is_zero(),
        Tail::Cycle(cs) => cs.iter().all(|c| normalize(c).is_zero()),
        Tail::Fundamental(..) => false,
    }
}

/// Number of leading blocks that can be nonempty, `None` when unbounded.
fn block_count(t: &Term) -> Option<u64> {
    match t {
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => normalize(r).is_zero().then_some(1),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
            eventually_empty(g).then(|| g.prefix.len() as u64 + 1)
        }
        _ => None,
    }
}

fn blocks_card(t: &Term, range: std::ops::Range<u64>) -> Count {
    range.into_iter().try_fold(0, |acc, k| add(Some(acc), card(&block(t, k))))
}

/// Total number of points, `None` when infinite.
pub fn card(t: &Term) -> Count {
    match t {
        Term::Fin(n) => Some(*n as u128),
        Term::Omega | Term::OmegaStar | Term::Zeta | Term::Eta | Term::Lambda => None,
        Term::Ord(o) | Term::OrdRev(o) => o.as_finite().map(|n| n as u128),
        Term::Sum(ps) => ps.iter().try_fold(0, |acc, p| add(Some(acc), card(p))),
        Term::Prod(a, b) => mul(card(a), card(b)),
        Term::Rev(a) => card(a),
        Term::Shuffle(cs) => cs.iter().all(|c| card(c) == Some(0)).then_some(0),
        _ => blocks_card(t, 0..block_count(t)?),
    }
}

/// Number of points `≥ p`.
fn count_from(t: &Term, p: &Point) -> Count {
    match (t, p) {
        (Term::Rev(a), _) => count_upto(a, p),
        (Term::Fin(n), Point::Int(k)) => Some((*n as i128 - *k as i128) as u128),
        (Term::OmegaStar, Point::Int(k)) => Some((1 - *k) as u128),
        (Term::Omega | Term::Zeta | Term::Eta | Term::Lambda | Term::Shuffle(_), _) => None,
        (Term::Ord(o), Point::Ord(b)) => {
            let (lo, m) = o.split_finite();
            let (lb, j) = b.split_finite();
            (lo == lb).then(|| (m - j) as u128)
        }
        (Term::OrdRev(_), Point::Ord(b)) => b.as_finite().map(|n| n as u128 + 1),
        (Term::Sum(ps), Point::Part(i, x)) => {
            ps[i + 1..].iter().fold(count_from(&ps[*i], x), |acc, q| add(acc, card(q)))
        }
        (Term::Prod(a, b), Point::Pair { index, inner }) => {
            add(count_from(a, inner), mul(card(a), sub(count_from(b, index), 1)))
        }
        (_, Point::Block(n, x)) => {
            let here = count_from(&block(t, *n), x);
            if is_star_block(t) {
                add(here, blocks_card(t, 0..*n))
            } else {
                let last = block_count(t)?;
                add(here, blocks_card(t, *n + 1..last.max(*n + 1)))
            }
        }
        _ => unreachable!("points checked against the term"),
    }
}

/// Number of points `≤ q`.
fn count_upto(t: &Term, q: &Point) -> Count {
    match (t, q) {
        (Term::Rev(a), _) => count_from(a, q),
        (Term::Fin(_) | Term::Omega, Point::Int(k)) => Some(*k as u128 + 1),
        (Term::OmegaStar | Term::Zeta | Term::Eta | Term::Lambda | Term::Shuffle(_), _) => None,
        (Term::Ord(_), Point::Ord(b)) => b.as_finite().map(|n| n as u128 + 1),
        (Term::OrdRev(o), Point::Ord(b)) => {
            let (lo, m) = o.split_finite();
            let (lb, j) = b.split_finite();
            (lo == lb).then(|| (m - j) as u128)
        }
        (Term::Sum(ps), Point::Part(i, x)) => {
            ps[..*i].iter().fold(count_upto(&ps[*i], x), |acc, q| add(acc, card(q)))
        }
        (Term::Prod(a, b), Point::Pair { index, inner }) => {
            add(count_upto(a, inner), mul(card(a), sub(count_upto(b, index), 1)))
        }
        (_, Point::Block(n, x)) => {
            let here = count_upto(&block(t, *n), x);
            if is_star_block(t) {
                let last = block_count(t)?;
                add(here, blocks_card(t, *n + 1..last.max(*n + 1)))
            } else {
                add(here, blocks_card(t, 0..*n))
            }
        }
        _ => unreachable!("points checked against the term"),
    }
}

fn interval(t: &Term, p: &Point, q: &Point) -> Count {
    match (t, p, q) {
        (Term::Rev(a), _, _) => interval(a, q, p),
        (_, Point::Int(a), Point::Int(b)) => Some((*b as i128 - *a as i128) as u128 + 1),
        (_, Point::Dyadic(..), Point::Dyadic(..)) => (cmp(t, p, q) == Ordering::Equal).then_some(1),
        (Term::OrdRev(_), Point::Ord(a), Point::Ord(b)) => ord_interval(b, a),
        (_, Point::Ord(a), Point::Ord(b)) => ord_interval(a, b),
        (Term::Sum(ps), Point::Part(i, x), Point::Part(j, y)) => {
            if i == j {
                interval(&ps[*i], x, y)
            } else {
                let mid = ps[i + 1..*j].iter().try_fold(0, |acc, r| add(Some(acc), card(r)));
                add(add(count_from(&ps[*i], x), mid), count_upto(&ps[*j], y))
            }
        }
        (Term::Prod(a, b), Point::Pair { index: i, inner: x }, Point::Pair { index: j, inner: y }) => {
            if cmp(b, i, j) == Ordering::Equal {
                interval(a, x, y)
            } else {
                let between = mul(card(a), sub(interval(b, i, j), 2));
                add(add(count_from(a, x), between), count_upto(a, y))
            }
        }
        (_, Point::Block(n, x), Point::Block(m, y)) => {
            if n == m {
                return interval(&block(t, *n), x, y);
            }
            let (lo, hi) = if n < m { (*n, *m) } else { (*m, *n) };
            let mid = blocks_card(t, lo + 1..hi);
            add(add(count_from(&block(t, *n), x), mid), count_upto(&block(t, *m), y))
        }
        (Term::Shuffle(cs), Point::Colored(a, e, x), Point::Colored(b, f, y)) => {
            if dyadic_cmp((*a, *e), (*b, *f)) == Ordering::Equal {
                interval(&cs[shuffle_color(*a, *e, cs.len())], x, y)
            } else {
                None
            }
        }
        _ => unreachable!("points checked against the term"),
    }
}

fn ord_interval(a: &Ordinal, b: &Ordinal) -> Count {
    let (la, i) = a.split_finite();
    let (lb, j) = b.split_finite();
    (la == lb).then(|| (j - i) as u128 + 1)
}

/// Decides whether `[p, q]` is finite, returning its cardinality when it is.
pub fn interval_is_finite(t: &Term, p: &Point, q: &Point) -> Result<(bool, Option<u128>)> {
    if compare_points(t, p, q)? == Ordering::Greater {
        return Err(Error::InvalidArgument("interval endpoints out of order".into()));
    }
    let c = interval(t, p, q);
    Ok((c.is_some(), c))
}

/// Ordinals below `ω^e` whose CNF coordinates stay below `k`.
fn sample_omega_pow(e: &Ordinal, k: u64) -> Vec<Ordinal> {
    if e.is_zero() {
        return vec![Ordinal::zero()];
    }
    match e.pred() {
        Some(p) => {
            let inner = sample_omega_pow(&p, k);
            let unit = Ordinal::omega_pow(p);
            (0..k)
                .flat_map(|j| {
                    let base = unit.mul(&Ordinal::nat(j));
                    inner.iter().map(move |y| base.add(y)).collect::<Vec<_>>()
                })
                .collect()
        }
        None => {
            let mut out: Vec<Ordinal> = (0..k)
                .flat_map(|n| sample_omega_pow(&fundamental_sequence(e, n).unwrap(), k))
                .collect();
            out.sort();
            out.dedup();
            out
        }
    }
}

fn sample_ordinal(o: &Ordinal, k: u64) -> Vec<Ordinal> {
    let mut out = Vec::new();
    let mut prefix = Ordinal::zero();
    for (e, c) in o.cnf() {
        let unit = Ordinal::omega_pow(e.clone());
        let inner = sample_omega_pow(e, k);
        for j in 0..*c {
            let base = prefix.add(&unit.mul(&Ordinal::nat(j)));
            out.extend(inner.iter().map(|y| base.add(y)));
        }
        prefix = prefix.add(&Ordinal::monomial(e.clone(), *c));
    }
    out
}

fn sample(t: &Term, k: u64) -> Vec<Point> {
    let ki = k as i64;
    match t {
        Term::Fin(n) => (0..*n as i64).map(Point::Int).collect(),
        Term::Omega => (0..=ki).map(Point::Int).collect(),
        Term::OmegaStar => (-ki..=0).map(Point::Int).collect(),
        Term::Zeta => (-ki..=ki).map(Point::Int).collect(),
        Term::Eta | Term::Lambda => (-ki..=ki)
            .flat_map(|m| [Point::Dyadic(m, 0), Point::Dyadic(2 * m + 1, 1)])
            .collect(),
        Term::Ord(o) | Term::OrdRev(o) => sample_ordinal(o, k).into_iter().map(Point::Ord).collect(),
        Term::Sum(ps) => ps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| sample(p, k).into_iter().map(move |x| Point::Part(i, Box::new(x))))
            .collect(),
        Term::Prod(a, b) => {
            let inner = sample(a, k);
            sample(b, k)
                .into_iter()
                .flat_map(|i| {
                    inner.iter().map(move |x| Point::Pair {
                        index: Box::new(i.clone()),
                        inner: Box::new(x.clone()),
                    })
                })
                .collect()
        }
        Term::Rev(a) => sample(a, k),
        Term::Shuffle(cs) => (1..=cs.len() as u32)
            .flat_map(|e| (-ki..ki).map(move |m| (2 * m + 1, e)))
            .flat_map(|(m, e)| {
                let c = &cs[shuffle_color(m, e, cs.len())];
                sample(c, k).into_iter().map(move |x| Point::Colored(m, e, Box::new(x)))
            })
            .collect(),
        _ => {
            let n = block_count(t).unwrap_or(k + 1).min(k + 1);
            (0..n)
                .flat_map(|b| sample(&block(t, b), k).into_iter().map(move |x| Point::Block(b, Box::new(x))))
                .collect()
        }
    }
}

/// A finite window of points of `t`, sorted, with every infinite coordinate cut at `k`.
pub fn sample_window(t: &Term, k: u64) -> Vec<Point> {
    let mut pts = sample(t, k);
    pts.sort_by(|a, b| cmp(t, a, b));
    pts.dedup_by(|a, b| cmp(t, a, b) == Ordering::Equal);
    pts
}
