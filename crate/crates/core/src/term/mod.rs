//! Symbolic order types: the term grammar, normalization and printing.
//!
//! `Prod(inner, index)` replaces every point of `index` by a copy of `inner`.
//! Beyond the basic constructors the algebra carries ordinal leaves in Cantor
//! normal form, reversed ordinal powers, generator-driven ω- and ω*-sums, and
//! dense η-shuffles of finitely many types.

mod fclass;
mod parse;
mod points;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ordinal::{fundamental_sequence, Ordinal};

pub use fclass::{adjacent_pairs, f_class_profile, structural_facts, Cardinality, FProfile, FStatus, StructuralFacts};
pub use parse::parse_term;
pub use points::{card, compare_points, interval_is_finite, sample_window, Point};

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let src = String::deserialize(d)?;
        parse_term(&src).map(|t| normalize(&t)).map_err(serde::de::Error::custom)
    }
}

/// A symbolic linear order type.
///
/// Serializes as its printed form; deserialization parses and normalizes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Fin(u64),
    Omega,
    OmegaStar,
    Zeta,
    Eta,
    Lambda,
    /// An infinite ordinal other than ω, in Cantor normal form.
    Ord(Ordinal),
    /// The reverse of `ω^e` for a limit exponent `e`.
    OrdRev(Ordinal),
    Sum(Vec<Term>),
    Prod(Box<Term>, Box<Term>),
    Rev(Box<Term>),
    /// `Σ_{n∈ω} ρⁿ`.
    GeomOmega(Box<Term>),
    /// `Σ_{n∈ω*} ρⁿ`.
    GeomOmegaStar(Box<Term>),
    /// `g(0) + g(1) + …`.
    OmegaSum(Generator),
    /// `… + g(1) + g(0)`.
    OmegaStarSum(Generator),
    /// The dense η-indexed shuffle in which every listed type occurs densely.
    Shuffle(Vec<Term>),
}

/// A finitely described sequence `n ↦ Term`: an explicit prefix followed by a tail rule.
///
/// Tail rules index from the end of the prefix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub prefix: Vec<Term>,
    pub tail: Tail,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Tail {
    Constant(Box<Term>),
    /// `j ↦ tʲ`.
    Geometric(Box<Term>),
    /// `j ↦ cs[j mod k]`.
    Cycle(Vec<Term>),
    /// `j ↦ a[j]`, reversed when the flag is set.
    Fundamental(Ordinal, bool),
}

impl Generator {
    pub fn constant(t: Term) -> Self {
        Generator { prefix: Vec::new(), tail: Tail::Constant(Box::new(t)) }
    }

    pub fn geometric(t: Term) -> Self {
        Generator { prefix: Vec::new(), tail: Tail::Geometric(Box::new(t)) }
    }

    pub fn cycle(cs: Vec<Term>) -> Self {
        Generator { prefix: Vec::new(), tail: Tail::Cycle(cs) }
    }

    pub fn fundamental(a: Ordinal) -> Self {
        Generator { prefix: Vec::new(), tail: Tail::Fundamental(a, false) }
    }

    pub fn with_prefix(mut self, prefix: Vec<Term>) -> Self {
        self.prefix = prefix;
        self
    }

    /// The normalized `n`-th element.
    pub fn at(&self, n: u64) -> Term {
        if let Some(p) = self.prefix.get(n as usize) {
            return normalize(p);
        }
        let j = n - self.prefix.len() as u64;
        match &self.tail {
            Tail::Constant(t) => normalize(t),
            Tail::Geometric(t) => power(&normalize(t), j),
            Tail::Cycle(cs) => normalize(&cs[(j % cs.len() as u64) as usize]),
            Tail::Fundamental(a, rev) => {
                let o = fundamental_sequence(a, j).expect("fundamental tail needs a limit");
                if *rev {
                    rev_ordinal(&o)
                } else {
                    from_ordinal(&o)
                }
            }
        }
    }

    fn map(&self, f: &impl Fn(&Term) -> Term, rev: bool) -> Generator {
        let prefix = self.prefix.iter().map(f).collect();
        let tail = match &self.tail {
            Tail::Constant(t) => Tail::Constant(Box::new(f(t))),
            Tail::Geometric(t) => Tail::Geometric(Box::new(f(t))),
            Tail::Cycle(cs) => Tail::Cycle(cs.iter().map(f).collect()),
            Tail::Fundamental(a, r) => Tail::Fundamental(a.clone(), *r != rev),
        };
        Generator { prefix, tail }
    }
}

impl Term {
    pub fn prod(a: Term, b: Term) -> Term {
        Term::Prod(Box::new(a), Box::new(b))
    }

    pub fn rev(a: Term) -> Term {
        Term::Rev(Box::new(a))
    }

    pub fn geom(a: Term) -> Term {
        Term::GeomOmega(Box::new(a))
    }

    pub fn geom_rev(a: Term) -> Term {
        Term::GeomOmegaStar(Box::new(a))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Fin(0))
    }

    /// Number of constructors, used to bound searches.
    pub fn size(&self) -> usize {
        match self {
            Term::Sum(ps) | Term::Shuffle(ps) => 1 + ps.iter().map(Term::size).sum::<usize>(),
            Term::Prod(a, b) => 1 + a.size() + b.size(),
            Term::Rev(a) | Term::GeomOmega(a) | Term::GeomOmegaStar(a) => 1 + a.size(),
            Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
                2 + g.prefix.iter().map(Term::size).sum::<usize>()
            }
            _ => 1,
        }
    }

    /// Whether an `Eta`, `Lambda` or shuffle occurs anywhere.
    pub fn has_dense_leaf(&self) -> bool {
        self.any_leaf(&|t| matches!(t, Term::Eta | Term::Lambda | Term::Shuffle(_)))
    }

    pub fn has_lambda(&self) -> bool {
        self.any_leaf(&|t| matches!(t, Term::Lambda))
    }

    fn any_leaf(&self, p: &impl Fn(&Term) -> bool) -> bool {
        if p(self) {
            return true;
        }
        match self {
            Term::Sum(ps) | Term::Shuffle(ps) => ps.iter().any(|x| x.any_leaf(p)),
            Term::Prod(a, b) => a.any_leaf(p) || b.any_leaf(p),
            Term::Rev(a) | Term::GeomOmega(a) | Term::GeomOmegaStar(a) => a.any_leaf(p),
            Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
                g.prefix.iter().any(|x| x.any_leaf(p))
                    || match &g.tail {
                        Tail::Constant(t) | Tail::Geometric(t) => t.any_leaf(p),
                        Tail::Cycle(cs) => cs.iter().any(|x| x.any_leaf(p)),
                        Tail::Fundamental(..) => false,
                    }
            }
            _ => false,
        }
    }
}

/// Canonical leaf for an ordinal: `Fin` when finite, `Omega` for ω, `Ord` otherwise.
pub fn from_ordinal(o: &Ordinal) -> Term {
    if let Some(n) = o.as_finite() {
        Term::Fin(n)
    } else if *o == Ordinal::omega() {
        Term::Omega
    } else {
        Term::Ord(o.clone())
    }
}

/// Canonical term for the reverse of an ordinal.
pub fn rev_ordinal(o: &Ordinal) -> Term {
    if let Some(n) = o.as_finite() {
        return Term::Fin(n);
    }
    let mut parts: Vec<Term> = o
        .cnf()
        .iter()
        .rev()
        .map(|(e, c)| {
            let base = rev_omega_pow(e);
            if e.is_zero() {
                Term::Fin(*c)
            } else if *c == 1 {
                base
            } else {
                Term::prod(base, Term::Fin(*c))
            }
        })
        .collect();
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Term::Sum(parts)
    }
}

fn rev_omega_pow(e: &Ordinal) -> Term {
    if e.is_zero() {
        Term::Fin(1)
    } else if *e == Ordinal::one() {
        Term::OmegaStar
    } else if let Some(p) = e.pred() {
        Term::prod(rev_omega_pow(&p), Term::OmegaStar)
    } else {
        Term::OrdRev(Ordinal::omega_pow(e.clone()))
    }
}

/// The value of a pure-ordinal term.
pub fn as_ordinal(t: &Term) -> Option<Ordinal> {
    match t {
        Term::Fin(n) => Some(Ordinal::nat(*n)),
        Term::Omega => Some(Ordinal::omega()),
        Term::Ord(o) => Some(o.clone()),
        Term::Sum(ps) => ps.iter().try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&as_ordinal(p)?))),
        Term::Prod(a, b) => Some(as_ordinal(a)?.mul(&as_ordinal(b)?)),
        Term::Rev(a) => as_coordinal(a),
        Term::GeomOmega(r) => geom_value(&as_ordinal(r)?),
        Term::GeomOmegaStar(r) => match as_ordinal(r)?.as_finite() {
            Some(0) => Some(Ordinal::one()),
            _ => None,
        },
        Term::OmegaSum(g) => omega_sum_value(g),
        Term::OmegaStarSum(g) => match &g.tail {
            Tail::Constant(c) if c.is_zero() => g
                .prefix
                .iter()
                .rev()
                .try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&as_ordinal(p)?))),
            _ => None,
        },
        Term::Shuffle(cs) if cs.iter().all(Term::is_zero) => Some(Ordinal::zero()),
        _ => None,
    }
}

/// The value `o` when the term is the reverse of an ordinal `o`.
pub fn as_coordinal(t: &Term) -> Option<Ordinal> {
    match t {
        Term::Fin(n) => Some(Ordinal::nat(*n)),
        Term::OmegaStar => Some(Ordinal::omega()),
        Term::OrdRev(o) => Some(o.clone()),
        Term::Rev(a) => as_ordinal(a),
        _ => as_ordinal(&normalize_with(t, true)),
    }
}

fn geom_value(r: &Ordinal) -> Option<Ordinal> {
    match r.as_finite() {
        Some(0) => Some(Ordinal::one()),
        Some(_) => Some(Ordinal::omega()),
        None => r.pow(&Ordinal::omega()).ok(),
    }
}

fn omega_sum_value(g: &Generator) -> Option<Ordinal> {
    let head = g.prefix.iter().try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&as_ordinal(p)?)))?;
    let tail = match &g.tail {
        Tail::Constant(c) => as_ordinal(c)?.mul(&Ordinal::omega()),
        Tail::Cycle(cs) => cs
            .iter()
            .try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&as_ordinal(p)?)))?
            .mul(&Ordinal::omega()),
        Tail::Geometric(r) => geom_value(&as_ordinal(r)?)?,
        Tail::Fundamental(a, false) => {
            if a.omega_power_exponent().is_some() {
                a.clone()
            } else {
                Ordinal::omega_pow(a.leading_exponent()?.succ())
            }
        }
        Tail::Fundamental(_, true) => return None,
    };
    Some(head.add(&tail))
}

/// `tⁿ` as a normalized term.
pub fn power(t: &Term, n: u64) -> Term {
    let mut acc = Term::Fin(1);
    for _ in 0..n {
        acc = mk_prod(acc, t.clone());
    }
    acc
}

/// The left-nested factor chain of a product; a non-product is a single factor.
pub fn factors(t: &Term) -> Vec<Term> {
    match t {
        Term::Prod(a, b) => {
            let mut out = factors(a);
            out.extend(factors(b));
            out
        }
        _ => vec![t.clone()],
    }
}

/// Builds a left-nested product from a factor chain without normalizing.
pub fn prod_of(fs: &[Term]) -> Term {
    match fs {
        [] => Term::Fin(1),
        [x] => x.clone(),
        _ => {
            let (last, init) = fs.split_last().unwrap();
            Term::prod(prod_of(init), last.clone())
        }
    }
}

/// Summands of a sum; a non-sum is a single summand.
pub fn summands(t: &Term) -> Vec<Term> {
    match t {
        Term::Sum(ps) => ps.clone(),
        _ => vec![t.clone()],
    }
}

/// Builds a sum from summands without normalizing.
pub fn sum_of(ps: &[Term]) -> Term {
    match ps {
        [] => Term::Fin(0),
        [x] => x.clone(),
        _ => Term::Sum(ps.to_vec()),
    }
}

pub fn normalize(t: &Term) -> Term {
    normalize_with(t, false)
}

fn normalize_with(t: &Term, rev: bool) -> Term {
    let n = |x: &Term| normalize_with(x, rev);
    match t {
        Term::Fin(k) => Term::Fin(*k),
        Term::Omega if rev => Term::OmegaStar,
        Term::OmegaStar if rev => Term::Omega,
        Term::Omega | Term::OmegaStar | Term::Zeta | Term::Eta | Term::Lambda => t.clone(),
        Term::Ord(o) if rev => rev_ordinal(o),
        Term::Ord(o) => from_ordinal(o),
        Term::OrdRev(o) if rev => from_ordinal(o),
        Term::OrdRev(o) => rev_ordinal(o),
        Term::Sum(ps) => {
            let mut parts: Vec<Term> = ps.iter().map(n).collect();
            if rev {
                parts.reverse();
            }
            mk_sum(parts)
        }
        Term::Prod(a, b) => mk_prod(n(a), n(b)),
        Term::Rev(a) => normalize_with(a, !rev),
        Term::GeomOmega(r) if rev => mk_geom_star(n(r)),
        Term::GeomOmega(r) => mk_geom(n(r)),
        Term::GeomOmegaStar(r) if rev => mk_geom(n(r)),
        Term::GeomOmegaStar(r) => mk_geom_star(n(r)),
        Term::OmegaSum(g) if rev => mk_omega_star_sum(g.map(&n, rev)),
        Term::OmegaSum(g) => mk_omega_sum(g.map(&n, rev)),
        Term::OmegaStarSum(g) if rev => mk_omega_sum(g.map(&n, rev)),
        Term::OmegaStarSum(g) => mk_omega_star_sum(g.map(&n, rev)),
        Term::Shuffle(cs) => mk_shuffle(cs.iter().map(n).collect()),
    }
}

/// Splices the canonical form of `t` into a sum.
fn push_summand(out: &mut Vec<Term>, t: Term) {
    match t {
        Term::Sum(ps) => out.extend(ps),
        Term::Fin(0) => {}
        other => out.push(other),
    }
}

fn fold_runs(
    items: Vec<Term>,
    value: impl Fn(&Term) -> Option<Ordinal>,
    combine: impl Fn(&Ordinal, &Ordinal) -> Ordinal,
    unit: Ordinal,
    emit: impl Fn(&Ordinal) -> Term,
    splice: impl Fn(&mut Vec<Term>, Term),
) -> Vec<Term> {
    let mut out = Vec::new();
    let mut run: Option<Ordinal> = None;
    let mut run_len = 0usize;
    let mut pending = Vec::new();
    let flush = |out: &mut Vec<Term>, run: &mut Option<Ordinal>, len: &mut usize, pending: &mut Vec<Term>| {
        if let Some(v) = run.take() {
            if *len == 1 {
                for p in pending.drain(..) {
                    splice(out, p);
                }
            } else {
                pending.clear();
                splice(out, emit(&v));
            }
        }
        *len = 0;
    };
    for it in items {
        match value(&it) {
            Some(v) => {
                let acc = run.take().unwrap_or_else(|| unit.clone());
                run = Some(combine(&acc, &v));
                run_len += 1;
                pending.push(it);
            }
            None => {
                flush(&mut out, &mut run, &mut run_len, &mut pending);
                splice(&mut out, it);
            }
        }
    }
    flush(&mut out, &mut run, &mut run_len, &mut pending);
    out
}

/// Normalized sum of already normalized parts.
pub fn mk_sum(parts: Vec<Term>) -> Term {
    let mut flat = Vec::new();
    for p in parts {
        push_summand(&mut flat, p);
    }
    let mut cur = flat;
    loop {
        let ord = fold_runs(
            cur.clone(),
            as_ordinal_leaf,
            |a, b| a.add(b),
            Ordinal::zero(),
            from_ordinal,
            push_summand,
        );
        let co = fold_runs(
            ord,
            as_coordinal_leaf,
            |a, b| b.add(a),
            Ordinal::zero(),
            rev_ordinal,
            push_summand,
        );
        let mut zeta = Vec::with_capacity(co.len());
        for t in co {
            if t == Term::Omega && zeta.last() == Some(&Term::OmegaStar) {
                zeta.pop();
                zeta.push(Term::Zeta);
            } else {
                zeta.push(t);
            }
        }
        if zeta == cur {
            break;
        }
        cur = zeta;
    }
    sum_of(&cur)
}

/// Ordinal value of a normalized summand or factor.
fn as_ordinal_leaf(t: &Term) -> Option<Ordinal> {
    match t {
        Term::Fin(_) | Term::Omega | Term::Ord(_) => as_ordinal(t),
        _ => None,
    }
}

/// Coordinal value of a normalized summand or factor built from reversed ordinals.
fn as_coordinal_leaf(t: &Term) -> Option<Ordinal> {
    match t {
        Term::Fin(n) => Some(Ordinal::nat(*n)),
        Term::OmegaStar => Some(Ordinal::omega()),
        Term::OrdRev(o) => Some(o.clone()),
        Term::Prod(a, b) => Some(as_coordinal_leaf(a)?.mul(&as_coordinal_leaf(b)?)),
        Term::Sum(ps) => ps
            .iter()
            .rev()
            .try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&as_coordinal_leaf(p)?))),
        _ => None,
    }
}

fn push_factor(out: &mut Vec<Term>, t: Term) {
    match t {
        Term::Prod(..) => out.extend(factors(&t)),
        Term::Fin(1) => {}
        other => out.push(other),
    }
}

/// Normalized product of already normalized factors.
pub fn mk_prod(a: Term, b: Term) -> Term {
    let mut fs = Vec::new();
    push_factor(&mut fs, a);
    push_factor(&mut fs, b);
    if fs.iter().any(Term::is_zero) {
        return Term::Fin(0);
    }
    let mut cur = fs;
    loop {
        let ord = fold_runs(
            cur.clone(),
            as_ordinal_leaf,
            |a, b| a.mul(b),
            Ordinal::one(),
            from_ordinal,
            push_factor,
        );
        let co = fold_runs(
            ord,
            as_coordinal_leaf,
            |a, b| a.mul(b),
            Ordinal::one(),
            rev_ordinal,
            push_factor,
        );
        if co == cur {
            break;
        }
        cur = co;
    }
    prod_of(&cur)
}

pub fn mk_geom(r: Term) -> Term {
    if let Some(o) = as_ordinal(&r) {
        if let Some(v) = geom_value(&o) {
            return from_ordinal(&v);
        }
    }
    Term::geom(r)
}

pub fn mk_geom_star(r: Term) -> Term {
    match r {
        Term::Fin(0) => return Term::Fin(1),
        Term::Fin(_) => return Term::OmegaStar,
        _ => {}
    }
    if let Some(o) = as_coordinal_leaf(&r) {
        if let Some(v) = geom_value(&o) {
            return rev_ordinal(&v);
        }
    }
    Term::geom_rev(r)
}

fn tail_sum(tail: Tail, star: bool) -> Term {
    let index = if star { Term::OmegaStar } else { Term::Omega };
    match tail {
        Tail::Constant(t) => mk_prod(*t, index),
        Tail::Cycle(mut cs) => {
            if star {
                cs.reverse();
            }
            mk_prod(mk_sum(cs), index)
        }
        Tail::Geometric(t) if star => mk_geom_star(*t),
        Tail::Geometric(t) => mk_geom(*t),
        Tail::Fundamental(a, rev) => {
            // a = ω^(ω^(β+1)) gives a[n] = (ω^(ω^β))ⁿ
            let geometric_base = a
                .omega_power_exponent()
                .and_then(|e| e.omega_power_exponent())
                .and_then(|b| b.pred())
                .map(|b| Ordinal::omega_pow(Ordinal::omega_pow(b)));
            if let Some(base) = geometric_base {
                let base = if rev { rev_ordinal(&base) } else { from_ordinal(&base) };
                return if star { mk_geom_star(base) } else { mk_geom(base) };
            }
            let g = Generator { prefix: Vec::new(), tail: Tail::Fundamental(a.clone(), rev) };
            match (star, rev) {
                (false, false) => from_ordinal(&omega_sum_value(&g).expect("ordinal sum")),
                (true, true) => {
                    let plain = Generator { prefix: Vec::new(), tail: Tail::Fundamental(a, false) };
                    rev_ordinal(&omega_sum_value(&plain).expect("ordinal sum"))
                }
                (false, true) => Term::OmegaSum(g),
                (true, false) if a == Ordinal::omega() => Term::OmegaStar,
                (true, false) => Term::OmegaStarSum(g),
            }
        }
    }
}

pub fn mk_omega_sum(g: Generator) -> Term {
    let mut parts = g.prefix;
    parts.push(tail_sum(g.tail, false));
    mk_sum(parts)
}

pub fn mk_omega_star_sum(g: Generator) -> Term {
    let mut parts = vec![tail_sum(g.tail, true)];
    parts.extend(g.prefix.into_iter().rev());
    mk_sum(parts)
}

pub fn mk_shuffle(colors: Vec<Term>) -> Term {
    let mut cs: Vec<Term> = Vec::new();
    for c in colors {
        if !c.is_zero() && !cs.contains(&c) {
            cs.push(c);
        }
    }
    match cs.len() {
        0 => Term::Fin(0),
        1 => mk_prod(cs.pop().unwrap(), Term::Eta),
        _ => Term::Shuffle(cs),
    }
}

// Printing precedence: 0 summand list, 1 left factor, 2 right factor, 3 operand of `~`.
fn fmt_prec(t: &Term, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let wrap = |f: &mut fmt::Formatter<'_>, needed: bool, body: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
        if needed {
            write!(f, "(")?;
            body(f)?;
            write!(f, ")")
        } else {
            body(f)
        }
    };
    match t {
        Term::Fin(n) => write!(f, "{n}"),
        Term::Omega => write!(f, "w"),
        Term::OmegaStar => wrap(f, prec >= 3, &|f| write!(f, "w~")),
        Term::Zeta => write!(f, "z"),
        Term::Eta => write!(f, "q"),
        Term::Lambda => write!(f, "r"),
        Term::Ord(o) => {
            let terms = o.cnf().len();
            let coeff = o.cnf().first().is_some_and(|(_, c)| *c != 1);
            let needed = (terms > 1 && prec >= 1) || (coeff && prec >= 2);
            wrap(f, needed, &|f| write!(f, "{o}"))
        }
        Term::OrdRev(o) => wrap(f, prec >= 3, &|f| write!(f, "({o})~")),
        Term::Sum(ps) => wrap(f, prec >= 1, &|f| {
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                fmt_prec(p, 0, f)?;
            }
            Ok(())
        }),
        Term::Prod(a, b) => wrap(f, prec >= 2, &|f| {
            fmt_prec(a, 1, f)?;
            write!(f, "*")?;
            fmt_prec(b, 2, f)
        }),
        Term::Rev(a) => wrap(f, prec >= 3, &|f| {
            fmt_prec(a, 3, f)?;
            write!(f, "~")
        }),
        Term::GeomOmega(r) => write!(f, "geom({r})"),
        Term::GeomOmegaStar(r) => write!(f, "geomrev({r})"),
        Term::OmegaSum(g) => write!(f, "sum[{g}]"),
        Term::OmegaStarSum(g) => write!(f, "sumrev[{g}]"),
        Term::Shuffle(cs) => {
            write!(f, "shuffle(")?;
            write_list(cs, f)?;
            write!(f, ")")
        }
    }
}

fn write_list(ts: &[Term], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(&self.prefix, f)?;
        write!(f, "; ")?;
        match &self.tail {
            Tail::Constant(t) => write!(f, "const({t})"),
            Tail::Geometric(t) => write!(f, "pow({t})"),
            Tail::Cycle(cs) => {
                write!(f, "cycle(")?;
                write_list(cs, f)?;
                write!(f, ")")
            }
            Tail::Fundamental(a, false) => write!(f, "fund({a})"),
            Tail::Fundamental(a, true) => write!(f, "fundrev({a})"),
        }
    }
}

#[cfg(test)]
mod tests;
