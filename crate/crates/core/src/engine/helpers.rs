//! Structural predicates the rules rely on. Every predicate is conservative:
//! `true` is only returned when the property certainly holds.

use crate::ordinal::Ordinal;
use crate::term::{
    as_coordinal, as_ordinal, card, mk_prod, mk_sum, normalize, power, sum_of, Generator, Tail, Term,
};

/// Whether `t` is certainly not well-ordered, i.e. `ω* ⩽ t`.
pub fn not_wo(t: &Term) -> bool {
    match t {
        Term::OmegaStar
        | Term::Zeta
        | Term::Eta
        | Term::Lambda
        | Term::OrdRev(_)
        | Term::GeomOmegaStar(_)
        | Term::OmegaStarSum(_)
        | Term::Shuffle(_) => true,
        Term::Fin(_) | Term::Omega | Term::Ord(_) => false,
        Term::Sum(ps) => ps.iter().any(not_wo),
        Term::Prod(a, b) => not_wo(a) || not_wo(b),
        Term::Rev(a) => card(a).is_none(),
        Term::GeomOmega(r) => not_wo(r),
        Term::OmegaSum(g) => {
            g.prefix.iter().any(not_wo)
                || match &g.tail {
                    Tail::Constant(x) | Tail::Geometric(x) => not_wo(x),
                    Tail::Cycle(cs) => cs.iter().any(not_wo),
                    Tail::Fundamental(_, rev) => *rev,
                }
        }
    }
}

/// Whether `ω ⩽ t` certainly holds.
pub fn not_rwo(t: &Term) -> bool {
    not_wo(&normalize(&Term::rev(t.clone())))
}

pub fn is_countable(t: &Term) -> bool {
    !t.has_lambda()
}

pub fn is_scattered(t: &Term) -> bool {
    !t.has_dense_leaf()
}

/// Terms that certainly embed in `t` (and differ from it), from its syntax alone.
pub fn children(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    match t {
        Term::Sum(ps) => {
            out.extend(ps.iter().cloned());
            for i in 0..ps.len() {
                for j in i + 2..=ps.len() {
                    if j - i < ps.len() {
                        out.push(sum_of(&ps[i..j]));
                    }
                }
            }
        }
        Term::Prod(a, b) => {
            out.push((**a).clone());
            out.push((**b).clone());
            for c in children(b) {
                out.push(mk_prod((**a).clone(), c));
            }
            for c in children(a) {
                out.push(mk_prod(c, (**b).clone()));
            }
        }
        Term::Zeta => out.extend([Term::Omega, Term::OmegaStar]),
        Term::Lambda => out.push(Term::Eta),
        Term::Shuffle(cs) => {
            out.push(Term::Eta);
            for c in cs {
                out.push(c.clone());
                out.push(mk_prod(c.clone(), Term::Eta));
            }
        }
        Term::GeomOmega(_) | Term::GeomOmegaStar(_) | Term::OmegaSum(_) | Term::OmegaStarSum(_) => {
            let star = matches!(t, Term::GeomOmegaStar(_) | Term::OmegaStarSum(_));
            if infinitely_many_blocks(t) {
                out.push(if star { Term::OmegaStar } else { Term::Omega });
            }
            let blocks: Vec<Term> = (0..4).map(|n| block(t, n)).collect();
            for k in 1..4 {
                out.push(blocks[k].clone());
                let mut seg: Vec<Term> = blocks[..=k].to_vec();
                if star {
                    seg.reverse();
                }
                out.push(mk_sum(seg));
            }
        }
        _ => {}
    }
    let mut uniq = Vec::new();
    for c in out.iter().map(normalize) {
        if c == *t || c.is_zero() {
            continue;
        }
        if !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    uniq
}

/// The `n`-th block of a block sum.
pub fn block(t: &Term, n: u64) -> Term {
    match t {
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => power(&normalize(r), n),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => g.at(n),
        _ => panic!("not a block sum"),
    }
}

/// A block sum with infinitely many nonempty blocks: one point per block gives its index type.
pub fn infinitely_many_blocks(t: &Term) -> bool {
    match t {
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => !r.is_zero(),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => match &g.tail {
            Tail::Constant(x) | Tail::Geometric(x) => !x.is_zero(),
            Tail::Cycle(cs) => cs.iter().any(|c| !c.is_zero()),
            Tail::Fundamental(..) => true,
        },
        _ => false,
    }
}

/// Decompositions `t ≅ ψ + τ` with both parts nonzero.
pub fn iso_splits(t: &Term) -> Vec<(Term, Term)> {
    let mut out = Vec::new();
    match t {
        Term::Sum(ps) => {
            for i in 1..ps.len() {
                out.push((sum_of(&ps[..i]), sum_of(&ps[i..])));
            }
            for (i, p) in ps.iter().enumerate() {
                for (a, b) in leaf_splits(p) {
                    let mut left = ps[..i].to_vec();
                    left.push(a);
                    let mut right = vec![b];
                    right.extend(ps[i + 1..].iter().cloned());
                    out.push((mk_sum(left), mk_sum(right)));
                }
            }
        }
        Term::Prod(a, b) => {
            for (b1, b2) in iso_splits(b) {
                out.push((mk_prod((**a).clone(), b1), mk_prod((**a).clone(), b2)));
            }
        }
        _ => out.extend(leaf_splits(t)),
    }
    let mut uniq = Vec::new();
    for s in out.iter().map(|(a, b)| (normalize(a), normalize(b))) {
        if s.0.is_zero() || s.1.is_zero() {
            continue;
        }
        if !uniq.contains(&s) {
            uniq.push(s);
        }
    }
    uniq
}

fn leaf_splits(t: &Term) -> Vec<(Term, Term)> {
    let sum = |a: Term, b: Term| mk_sum(vec![a, b]);
    match t {
        Term::Fin(k) if *k >= 2 => vec![(Term::Fin(1), Term::Fin(k - 1)), (Term::Fin(k - 1), Term::Fin(1))],
        Term::Omega => vec![(Term::Fin(1), Term::Omega)],
        Term::OmegaStar => vec![(Term::OmegaStar, Term::Fin(1))],
        Term::Zeta => vec![(Term::OmegaStar, Term::Omega)],
        Term::Eta => vec![
            (Term::Eta, Term::Eta),
            (Term::Eta, sum(Term::Fin(1), Term::Eta)),
            (sum(Term::Eta, Term::Fin(1)), Term::Eta),
        ],
        Term::Lambda => vec![
            (Term::Lambda, sum(Term::Fin(1), Term::Lambda)),
            (sum(Term::Lambda, Term::Fin(1)), Term::Lambda),
        ],
        Term::Shuffle(cs) => {
            let mut v = vec![(t.clone(), t.clone())];
            for c in cs {
                v.push((t.clone(), sum(c.clone(), t.clone())));
                v.push((sum(t.clone(), c.clone()), t.clone()));
            }
            v
        }
        Term::Ord(o) => {
            let terms = o.cnf();
            let mono = |(e, c): &(Ordinal, u64)| Ordinal::monomial(e.clone(), *c);
            let mut v = Vec::new();
            for i in 0..terms.len() {
                let head = terms[..i].iter().map(mono).fold(Ordinal::zero(), |a, m| a.add(&m));
                let rest = terms[i + 1..].iter().map(mono).fold(Ordinal::zero(), |a, m| a.add(&m));
                let (e, c) = &terms[i];
                for j in 1..=*c {
                    if j != 1 && j != *c {
                        continue;
                    }
                    let left = head.add(&Ordinal::monomial(e.clone(), j));
                    let right = if j == *c { rest.clone() } else { Ordinal::monomial(e.clone(), c - j).add(&rest) };
                    if !right.is_zero() {
                        v.push((crate::term::from_ordinal(&left), crate::term::from_ordinal(&right)));
                    }
                }
            }
            if terms.len() == 1 && terms[0].1 == 1 {
                v.push((Term::Fin(1), t.clone()));
            }
            v
        }
        Term::OrdRev(_) => vec![(t.clone(), Term::Fin(1))],
        Term::OmegaSum(g) if !g.prefix.is_empty() => {
            let rest = Generator { prefix: g.prefix[1..].to_vec(), tail: g.tail.clone() };
            vec![(normalize(&g.prefix[0]), normalize(&Term::OmegaSum(rest)))]
        }
        Term::OmegaStarSum(g) if !g.prefix.is_empty() => {
            let rest = Generator { prefix: g.prefix[1..].to_vec(), tail: g.tail.clone() };
            vec![(normalize(&Term::OmegaStarSum(rest)), normalize(&g.prefix[0]))]
        }
        _ => Vec::new(),
    }
}

/// Whether `t ≅ a + b` is one of the decompositions the rules may use.
pub fn is_split(t: &Term, a: &Term, b: &Term) -> bool {
    !a.is_zero()
        && !b.is_zero()
        && (normalize(&Term::Sum(vec![a.clone(), b.clone()])) == *t
            || iso_splits(t).iter().any(|(x, y)| x == a && y == b))
}

/// An ω- or ω*-indexed sum whose blocks are all ordinals.
#[derive(Clone, Debug)]
pub struct OrdBlocks {
    pub star: bool,
    pub prefix: Vec<Ordinal>,
    pub tail: OrdTail,
}

#[derive(Clone, Debug)]
pub enum OrdTail {
    Constant(Ordinal),
    Cycle(Vec<Ordinal>),
    Geometric(Ordinal),
    Fundamental(Ordinal),
}

pub fn ord_blocks(t: &Term) -> Option<OrdBlocks> {
    let (star, prefix, tail) = match t {
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => {
            (matches!(t, Term::GeomOmegaStar(_)), Vec::new(), OrdTail::Geometric(as_ordinal(r)?))
        }
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
            let prefix = g.prefix.iter().map(as_ordinal).collect::<Option<Vec<_>>>()?;
            let tail = match &g.tail {
                Tail::Constant(c) => OrdTail::Constant(as_ordinal(c)?),
                Tail::Cycle(cs) => OrdTail::Cycle(cs.iter().map(as_ordinal).collect::<Option<_>>()?),
                Tail::Geometric(b) => OrdTail::Geometric(as_ordinal(b)?),
                Tail::Fundamental(a, false) => OrdTail::Fundamental(a.clone()),
                Tail::Fundamental(_, true) => return None,
            };
            (matches!(t, Term::OmegaStarSum(_)), prefix, tail)
        }
        _ => return None,
    };
    Some(OrdBlocks { star, prefix, tail })
}

impl OrdBlocks {
    /// An ordinal bounding every block, and the supremum of the blocks.
    pub fn sup(&self) -> Ordinal {
        let tail = match &self.tail {
            OrdTail::Constant(c) => c.clone(),
            OrdTail::Cycle(cs) => cs.iter().max().cloned().unwrap_or_else(Ordinal::zero),
            OrdTail::Geometric(b) => match b.as_finite() {
                Some(0) | Some(1) => Ordinal::one(),
                Some(_) => Ordinal::omega(),
                None => b.pow(&Ordinal::omega()).expect("geometric supremum within the depth cap"),
            },
            OrdTail::Fundamental(a) => a.clone(),
        };
        self.prefix.iter().cloned().fold(tail, |m, p| m.max(p))
    }

    /// Every block is strictly below `a`.
    pub fn all_below(&self, a: &Ordinal) -> bool {
        self.prefix.iter().all(|p| p < a)
            && match &self.tail {
                OrdTail::Constant(c) => c < a,
                OrdTail::Cycle(cs) => cs.iter().all(|c| c < a),
                OrdTail::Geometric(b) => match b.as_finite() {
                    Some(0) | Some(1) => Ordinal::one() < *a,
                    _ => self.sup() <= *a,
                },
                OrdTail::Fundamental(x) => x <= a,
            }
    }

    /// Blocks form a non-decreasing sequence, starting with a nonzero block.
    pub fn monotone_nonempty(&self) -> bool {
        let first_tail = match &self.tail {
            OrdTail::Constant(c) => c.clone(),
            OrdTail::Cycle(cs) => cs[0].clone(),
            OrdTail::Geometric(_) => Ordinal::one(),
            OrdTail::Fundamental(a) => crate::ordinal::fundamental_sequence(a, 0).expect("limit"),
        };
        let tail_ok = match &self.tail {
            OrdTail::Constant(c) => !c.is_zero(),
            OrdTail::Cycle(cs) => cs.iter().all(|c| *c == cs[0]) && !cs[0].is_zero(),
            OrdTail::Geometric(b) => !b.is_zero(),
            OrdTail::Fundamental(_) => true,
        };
        let mut seq = self.prefix.clone();
        seq.push(first_tail);
        tail_ok && !seq[0].is_zero() && seq.windows(2).all(|w| w[0] <= w[1])
    }

    /// Infinitely many blocks are nonzero.
    pub fn infinitely_many_nonempty(&self) -> bool {
        match &self.tail {
            OrdTail::Constant(c) => !c.is_zero(),
            OrdTail::Cycle(cs) => cs.iter().any(|c| !c.is_zero()),
            OrdTail::Geometric(b) => !b.is_zero(),
            OrdTail::Fundamental(_) => true,
        }
    }
}

/// Every family of pairwise disjoint non-degenerate closed intervals of `t` is countable.
pub fn ccc(t: &Term) -> bool {
    if is_countable(t) {
        return true;
    }
    match t {
        Term::Lambda => true,
        Term::Sum(ps) => ps.iter().all(ccc),
        Term::Prod(a, b) => ccc(a) && is_countable(b),
        Term::Rev(a) => ccc(a),
        Term::Shuffle(cs) => cs.iter().all(ccc),
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
            g.prefix.iter().all(ccc)
                && match &g.tail {
                    Tail::Constant(x) => ccc(x),
                    Tail::Cycle(cs) => cs.iter().all(ccc),
                    Tail::Geometric(x) => is_countable(x),
                    Tail::Fundamental(..) => true,
                }
        }
        _ => false,
    }
}

/// `t` contains uncountably many pairwise disjoint two-point intervals.
pub fn uncountable_disjoint_pairs(t: &Term) -> bool {
    let two_points = |x: &Term| card(x).is_none_or(|n| n >= 2);
    match t {
        Term::Prod(a, b) => {
            (two_points(a) && !is_countable(b)) || uncountable_disjoint_pairs(a) || uncountable_disjoint_pairs(b)
        }
        Term::Sum(ps) | Term::Shuffle(ps) => ps.iter().any(uncountable_disjoint_pairs),
        Term::Rev(a) => uncountable_disjoint_pairs(a),
        Term::GeomOmega(r) | Term::GeomOmegaStar(r) => {
            uncountable_disjoint_pairs(r) || (!is_countable(r) && two_points(r))
        }
        Term::OmegaSum(g) | Term::OmegaStarSum(g) => {
            g.prefix.iter().any(uncountable_disjoint_pairs)
                || match &g.tail {
                    Tail::Constant(x) => uncountable_disjoint_pairs(x),
                    Tail::Cycle(cs) => cs.iter().any(uncountable_disjoint_pairs),
                    Tail::Geometric(x) => uncountable_disjoint_pairs(x) || (!is_countable(x) && two_points(x)),
                    Tail::Fundamental(..) => false,
                }
        }
        _ => false,
    }
}

/// `t` is certainly not equimorphic to `2`.
pub fn not_two(t: &Term) -> bool {
    card(t) != Some(2)
}

/// The value of `t` when it is a coordinal, reversed.
pub fn coordinal(t: &Term) -> Option<Ordinal> {
    as_coordinal(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> Term {
        normalize(&parse_term(s).unwrap())
    }

    #[test]
    fn well_order_detection() {
        assert!(not_wo(&t("geomrev(w)")));
        assert!(!not_wo(&t("w^(w) + 3")));
        assert!(not_wo(&t("1 + w~")));
        assert!(not_rwo(&t("w~ + w")));
        assert!(!not_rwo(&t("w~*3")));
    }

    #[test]
    fn splits_are_valid() {
        for s in ["w*2 + 1", "q", "z*3", "(q + 1)*w", "shuffle(1, 2)", "r", "w^(2)*3 + w"] {
            let term = t(s);
            for (a, b) in iso_splits(&term) {
                assert!(is_split(&term, &a, &b), "{s}: {a} | {b}");
            }
            assert!(!iso_splits(&term).is_empty(), "{s}");
        }
        assert!(is_split(&Term::Eta, &Term::Eta, &Term::Eta));
        assert!(!is_split(&Term::Omega, &Term::Omega, &Term::Fin(1)));
    }

    #[test]
    fn ordinal_block_sums() {
        let phi = ord_blocks(&t("geomrev(w)")).unwrap();
        assert!(phi.star && phi.monotone_nonempty() && phi.infinitely_many_nonempty());
        assert_eq!(phi.sup(), "w^(w)".parse().unwrap());
        assert!(phi.all_below(&"w^(w)".parse().unwrap()));
        assert!(!phi.all_below(&"w^(3)".parse().unwrap()));
        let rho = ord_blocks(&t("sumrev[; fund(w^(2))]")).unwrap();
        assert_eq!(rho.sup(), "w^(2)".parse().unwrap());
    }

    #[test]
    fn separability() {
        assert!(uncountable_disjoint_pairs(&t("2*r")));
        assert!(uncountable_disjoint_pairs(&t("r*r")));
        assert!(!uncountable_disjoint_pairs(&t("r*2")));
        assert!(ccc(&t("r + q + r")));
        assert!(!ccc(&t("w*r")));
    }
}
