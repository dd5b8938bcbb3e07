//! Ordinals below ε₀ in Cantor normal form, with the arithmetic and the
//! closed-form classification predicates for ordinal types.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the nesting depth of exponents.
pub const DEFAULT_DEPTH_CAP: usize = 32;

/// An ordinal `ω^e₀·c₀ + ω^e₁·c₁ + …` with `e₀ > e₁ > …` and every `cᵢ ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

fn checked(v: Option<u64>) -> u64 {
    v.expect("ordinal coefficient overflow")
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// `ω^e·c`, zero when `c = 0`.
    pub fn monomial(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(e, c)] }
        }
    }

    /// Evaluates `Σ ω^eᵢ·cᵢ` left to right as an ordinal sum.
    pub fn from_cnf(pairs: &[(Ordinal, i64)]) -> Result<Self> {
        let mut acc = Self::zero();
        for (e, c) in pairs {
            if *c <= 0 {
                return Err(Error::InvalidArgument(format!("coefficient {c} is not positive")));
            }
            acc = acc.add(&Self::monomial(e.clone(), *c as u64));
        }
        Ok(acc)
    }

    /// The canonical `(exponent, coefficient)` list.
    pub fn cnf(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if !e.is_zero())
    }

    /// Exponent `β` when the ordinal is exactly `ω^β`.
    pub fn omega_power_exponent(&self) -> Option<&Ordinal> {
        match self.terms.as_slice() {
            [(e, 1)] => Some(e),
            _ => None,
        }
    }

    /// Leading exponent, `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Nesting depth: 0 for zero, one more than the deepest exponent otherwise.
    pub fn depth(&self) -> usize {
        self.terms.iter().map(|(e, _)| 1 + e.depth()).max().unwrap_or(0)
    }

    fn check_depth(self, cap: usize) -> Result<Self> {
        if self.depth() > cap {
            Err(Error::Capacity(format!("ordinal nesting depth exceeds {cap}")))
        } else {
            Ok(self)
        }
    }

    /// Immediate predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Self::one())
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((e, c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let mut merged = *c;
        for (se, sc) in &self.terms {
            match se.cmp(e) {
                Ordering::Greater => terms.push((se.clone(), *sc)),
                Ordering::Equal => merged = checked(merged.checked_add(*sc)),
                Ordering::Less => break,
            }
        }
        terms.push((e.clone(), merged));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// Ordinal product `self·other`: `other` copies of `self`.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (lead, lead_c) = &self.terms[0];
        let mut acc = Self::zero();
        for (e, c) in &other.terms {
            let part = if e.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = checked(lead_c.checked_mul(*c));
                Ordinal { terms }
            } else {
                Self::monomial(lead.add(e), *c)
            };
            acc = acc.add(&part);
        }
        acc
    }

    /// `self^n` for finite `n` by repeated multiplication.
    fn pow_nat(&self, n: u64) -> Result<Ordinal> {
        if let Some(a) = self.as_finite() {
            let v = u32::try_from(n)
                .ok()
                .and_then(|n| a.checked_pow(n))
                .ok_or_else(|| Error::Capacity("finite power overflows".into()))?;
            return Ok(Self::nat(v));
        }
        if n > 4096 {
            return Err(Error::Capacity("finite exponent too large".into()));
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Ordinal exponentiation with the default depth cap.
    pub fn pow(&self, b: &Ordinal) -> Result<Ordinal> {
        self.pow_capped(b, DEFAULT_DEPTH_CAP)
    }

    /// Ordinal exponentiation `self^b`, failing when the result nests deeper than `cap`.
    pub fn pow_capped(&self, b: &Ordinal, cap: usize) -> Result<Ordinal> {
        if b.is_zero() {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if *self == Self::one() {
            return Ok(Self::one());
        }
        let (limit_part, m) = b.split_finite();
        let result = if let Some(_a) = self.as_finite() {
            // a^(ω·γ + m) = ω^γ · a^m
            let gamma = Ordinal {
                terms: limit_part
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let g = match e.as_finite() {
                            Some(k) => Self::nat(k - 1),
                            None => e.clone(),
                        };
                        (g, *c)
                    })
                    .collect(),
            };
            Self::omega_pow(gamma).mul(&self.pow_nat(m)?)
        } else {
            // (ω^a₀·k + …)^(L + m) = ω^(a₀·L) · self^m
            let a0 = self.terms[0].0.clone();
            Self::omega_pow(a0.mul(&limit_part)).mul(&self.pow_nat(m)?)
        };
        result.check_depth(cap)
    }

    /// Splits into the limit part and the trailing natural number.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        if self.is_successor() {
            let mut terms = self.terms.clone();
            let (_, m) = terms.pop().unwrap();
            (Ordinal { terms }, m)
        } else {
            (self.clone(), 0)
        }
    }

    /// The sum of the first `k` CNF terms (the leading part).
    fn head(&self, k: usize) -> Ordinal {
        Ordinal { terms: self.terms[..k].to_vec() }
    }

    /// The ordinal without its leading CNF monomial.
    pub fn tail(&self) -> Ordinal {
        Ordinal { terms: self.terms.get(1..).unwrap_or(&[]).to_vec() }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

/// Total comparison of ordinals.
pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if *e == Ordinal::one() {
                write!(f, "w")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c != 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = crate::term::parse_term(s)?;
        crate::term::as_ordinal(&crate::term::normalize(&t))
            .ok_or_else(|| Error::Type(format!("`{s}` is not an ordinal")))
    }
}

/// Closed-form classification flags of an ordinal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinalProfile {
    pub additively_indecomposable: bool,
    pub sum_closed: bool,
    pub strongly_indecomposable: bool,
    pub untranscendable: bool,
    pub product_closed: bool,
    pub s_untranscendable: bool,
    pub delta_number: bool,
    pub multiplicatively_principal: bool,
    pub multiplicatively_indecomposable: bool,
    pub cofinality: Ordinal,
}

/// 0 for 0, 1 for successors, ω for limits.
pub fn cofinality(a: &Ordinal) -> Ordinal {
    if a.is_zero() {
        Ordinal::zero()
    } else if a.is_successor() {
        Ordinal::one()
    } else {
        Ordinal::omega()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `a = ω^(ω^β)` for some `β`.
fn is_omega_omega_power(a: &Ordinal) -> bool {
    a.omega_power_exponent()
        .and_then(|e| e.omega_power_exponent())
        .is_some()
}

/// `a = 0` or `a = ω^β`.
pub fn is_additively_indecomposable(a: &Ordinal) -> bool {
    a.is_zero() || a.omega_power_exponent().is_some()
}

/// `a ∈ {0,1,2}` or `a = ω^(ω^β)`.
pub fn is_untranscendable(a: &Ordinal) -> bool {
    matches!(a.as_finite(), Some(0..=2)) || is_omega_omega_power(a)
}

pub fn classify_ordinal(a: &Ordinal) -> OrdinalProfile {
    let ai = is_additively_indecomposable(a);
    let ut = is_untranscendable(a);
    let delta = *a == Ordinal::one() || is_omega_omega_power(a);
    let mp = *a < Ordinal::nat(3) || delta;
    let prime = a.as_finite().is_some_and(is_prime);
    let succ_of_indec = a
        .pred()
        .is_some_and(|b| !b.is_zero() && b.omega_power_exponent().is_some());
    OrdinalProfile {
        additively_indecomposable: ai,
        sum_closed: ai,
        strongly_indecomposable: ai,
        untranscendable: ut,
        product_closed: ut,
        s_untranscendable: ut && !(a.is_limit() && *a != Ordinal::omega()),
        delta_number: delta,
        multiplicatively_principal: mp,
        multiplicatively_indecomposable: mp || prime || succ_of_indec,
        cofinality: cofinality(a),
    }
}

/// The canonical fundamental sequence element `a[n]` of a limit ordinal.
pub fn fundamental_sequence(a: &Ordinal, n: u64) -> Result<Ordinal> {
    if !a.is_limit() {
        return Err(Error::InvalidArgument(format!("{a} is not a limit ordinal")));
    }
    let last = a.terms.len() - 1;
    let (gamma, k) = &a.terms[last];
    let mut out = a.head(last).add(&Ordinal::monomial(gamma.clone(), k - 1));
    let step = match gamma.pred() {
        Some(delta) => Ordinal::monomial(delta, n),
        None => Ordinal::omega_pow(fundamental_sequence(gamma, n)?),
    };
    out = out.add(&step);
    Ok(out)
}

/// A pair `(ψ, τ)` with `ψ, τ < a ⩽ ψ·τ`, or `None` when `a` is untranscendable.
pub fn transcendability_witness(a: &Ordinal) -> Option<(Ordinal, Ordinal)> {
    if is_untranscendable(a) {
        return None;
    }
    if let Some(n) = a.as_finite() {
        let p = Ordinal::nat(n - 1);
        return Some((p.clone(), p));
    }
    // a = ω^(ω^β·k + γ)·n + δ
    let (e, n) = &a.terms[0];
    let delta = a.tail();
    let (beta, k) = e.terms[0].clone();
    let gamma = e.tail();
    let base = |k: u64| Ordinal::omega_pow(Ordinal::monomial(beta.clone(), k));
    let psi = if *n >= 2 || !gamma.is_zero() || !delta.is_zero() {
        base(k)
    } else {
        base(k - 1)
    };
    Some((psi.clone(), psi))
}

/// For a singular limit `a`, the reverse sum `ρ = Σ_{n∈ω*} a[n]` together with `ω`.
pub fn s_untranscendability_witness(a: &Ordinal) -> Result<(crate::term::Term, Ordinal)> {
    if !a.is_limit() || *a == Ordinal::omega() {
        return Err(Error::InvalidArgument(format!("{a} is not a singular limit")));
    }
    let rho = crate::term::Term::OmegaStarSum(crate::term::Generator::fundamental(a.clone()));
    Ok((crate::term::normalize(&rho), Ordinal::omega()))
}
