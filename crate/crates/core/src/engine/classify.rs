//! Classification flags of order types, the square pipeline and the
//! trichotomy report for indecomposable types.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::classify_ordinal;
use crate::term::{as_ordinal, card, f_class_profile, normalize, structural_facts, Term};
use crate::verdict::{Answer, Certificate, Claim, Verdict};

use super::helpers::{is_countable, iso_splits, ord_blocks};
use super::rules::{doubled, embeds_claim};
use super::Engine;

/// Maximum number of decompositions examined by the split rules.
const MAX_SPLITS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Indecomposable,
    StrictlyIndecLeft,
    StrictlyIndecRight,
    SumClosed,
    StronglyIndecomposable,
    Untranscendable,
    SUntranscendable,
    ProductClosed,
    Homogeneous,
}

impl Flag {
    pub const ALL: [Flag; 9] = [
        Flag::Indecomposable,
        Flag::StrictlyIndecLeft,
        Flag::StrictlyIndecRight,
        Flag::SumClosed,
        Flag::StronglyIndecomposable,
        Flag::Untranscendable,
        Flag::SUntranscendable,
        Flag::ProductClosed,
        Flag::Homogeneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Indecomposable => "indecomposable",
            Flag::StrictlyIndecLeft => "strictly_indec_left",
            Flag::StrictlyIndecRight => "strictly_indec_right",
            Flag::SumClosed => "sum_closed",
            Flag::StronglyIndecomposable => "strongly_indecomposable",
            Flag::Untranscendable => "untranscendable",
            Flag::SUntranscendable => "s_untranscendable",
            Flag::ProductClosed => "product_closed",
            Flag::Homogeneous => "homogeneous",
        }
    }

    pub fn from_name(name: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.name() == name)
    }

    /// The flag describing the reversed type.
    pub fn mirror(self) -> Flag {
        match self {
            Flag::StrictlyIndecLeft => Flag::StrictlyIndecRight,
            Flag::StrictlyIndecRight => Flag::StrictlyIndecLeft,
            f => f,
        }
    }

    /// Rules that can decide the flag, reported when it stays undecided.
    fn candidate_rules(self) -> &'static [&'static str] {
        match self {
            Flag::Indecomposable => &["C-ORD", "C-DOUBLE", "C-SPLIT", "C-UT-INDEC", "C-SI-INDEC"],
            Flag::StrictlyIndecLeft | Flag::StrictlyIndecRight => &["C-ORD", "C-SIDES-REVSUM", "C-SPLIT"],
            Flag::SumClosed => &["C-ORD", "C-DOUBLE", "C-SUMC-WITNESS"],
            Flag::StronglyIndecomposable => &["C-SIGMA-SI", "C-FF", "C-SIERPINSKI", "C-ORD"],
            Flag::Untranscendable => &["C-ORD", "C-GEOM", "C-SUT-UT", "C-2ONLY", "C-PROD-SPLIT"],
            Flag::SUntranscendable => &["C-ORD", "C-SQUARE", "C-HOMOG", "C-SUT-WITNESS"],
            Flag::ProductClosed => &["C-ORD", "C-SQUARE", "C-PC-WITNESS"],
            Flag::Homogeneous => &["C-HOMOG-CAT", "C-HOMOG-JUMP"],
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The nine classification verdicts of a type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeProfile {
    pub term: Term,
    pub indecomposable: Verdict,
    pub strictly_indec_left: Verdict,
    pub strictly_indec_right: Verdict,
    pub sum_closed: Verdict,
    pub strongly_indecomposable: Verdict,
    pub untranscendable: Verdict,
    pub s_untranscendable: Verdict,
    pub product_closed: Verdict,
    pub homogeneous: Verdict,
}

impl TypeProfile {
    pub fn get(&self, f: Flag) -> &Verdict {
        match f {
            Flag::Indecomposable => &self.indecomposable,
            Flag::StrictlyIndecLeft => &self.strictly_indec_left,
            Flag::StrictlyIndecRight => &self.strictly_indec_right,
            Flag::SumClosed => &self.sum_closed,
            Flag::StronglyIndecomposable => &self.strongly_indecomposable,
            Flag::Untranscendable => &self.untranscendable,
            Flag::SUntranscendable => &self.s_untranscendable,
            Flag::ProductClosed => &self.product_closed,
            Flag::Homogeneous => &self.homogeneous,
        }
    }

    pub fn answer(&self, f: Flag) -> Answer {
        self.get(f).answer
    }

    fn from_fn(term: Term, mut v: impl FnMut(Flag) -> Verdict) -> TypeProfile {
        TypeProfile {
            term,
            indecomposable: v(Flag::Indecomposable),
            strictly_indec_left: v(Flag::StrictlyIndecLeft),
            strictly_indec_right: v(Flag::StrictlyIndecRight),
            sum_closed: v(Flag::SumClosed),
            strongly_indecomposable: v(Flag::StronglyIndecomposable),
            untranscendable: v(Flag::Untranscendable),
            s_untranscendable: v(Flag::SUntranscendable),
            product_closed: v(Flag::ProductClosed),
            homogeneous: v(Flag::Homogeneous),
        }
    }

    /// Checks the implications that must hold between decided flags.
    pub fn check_consistency(&self) -> Result<()> {
        use Answer::{No, Yes};
        let a = |f| self.answer(f);
        let not_two = card(&self.term) != Some(2);
        let mut bad = Vec::new();
        if a(Flag::StronglyIndecomposable) == Yes && a(Flag::Indecomposable) == No {
            bad.push("strongly indecomposable but decomposable");
        }
        if a(Flag::SUntranscendable) == Yes && a(Flag::Untranscendable) == No {
            bad.push("s-untranscendable but transcendable");
        }
        if a(Flag::ProductClosed) == Yes && a(Flag::Untranscendable) == No {
            bad.push("product closed but transcendable");
        }
        if not_two && a(Flag::Untranscendable) == Yes && a(Flag::Indecomposable) == No {
            bad.push("untranscendable and decomposable but not 2");
        }
        match bad.first() {
            Some(m) => Err(Error::Inconsistency(format!("{}: {m}", self.term))),
            None => Ok(()),
        }
    }
}

/// Outcome of the square pipeline on `t² ⩽ t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareReport {
    pub term: Term,
    /// `(name, verdict)` for the three hypotheses.
    pub hypotheses: Vec<(String, Verdict)>,
    /// Number of hypotheses refuted.
    pub failing: usize,
    pub verdict: Verdict,
}

/// Which of the three mutually exclusive alternatives an indecomposable type satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyReport {
    pub term: Term,
    /// `t + t ≡ t`.
    pub double: Answer,
    pub strictly_left: Answer,
    pub strictly_right: Answer,
    /// Number of alternatives answered YES.
    pub alternatives: usize,
    /// `t ≡ 1`, where all alternatives but doubling hold.
    pub exception: bool,
    pub violation: Option<String>,
}

/// `(rule, premise flag, premise answer, conclusion flag, conclusion answer, needs t ≢ 2)`.
const IMPLICATIONS: [(&str, Flag, Answer, Flag, Answer, bool); 14] = [
    ("C-SUT-UT", Flag::SUntranscendable, Answer::Yes, Flag::Untranscendable, Answer::Yes, false),
    ("C-SUT-UT", Flag::Untranscendable, Answer::No, Flag::SUntranscendable, Answer::No, false),
    ("C-PC-UT", Flag::ProductClosed, Answer::Yes, Flag::Untranscendable, Answer::Yes, false),
    ("C-PC-UT", Flag::Untranscendable, Answer::No, Flag::ProductClosed, Answer::No, false),
    ("C-UT-INDEC", Flag::Untranscendable, Answer::Yes, Flag::Indecomposable, Answer::Yes, true),
    ("C-2ONLY", Flag::Indecomposable, Answer::No, Flag::Untranscendable, Answer::No, true),
    ("C-SI-INDEC", Flag::StronglyIndecomposable, Answer::Yes, Flag::Indecomposable, Answer::Yes, false),
    ("C-SI-INDEC", Flag::Indecomposable, Answer::No, Flag::StronglyIndecomposable, Answer::No, false),
    ("C-STRICT-INDEC", Flag::StrictlyIndecLeft, Answer::Yes, Flag::Indecomposable, Answer::Yes, false),
    ("C-STRICT-INDEC", Flag::StrictlyIndecRight, Answer::Yes, Flag::Indecomposable, Answer::Yes, false),
    ("C-STRICT-INDEC", Flag::Indecomposable, Answer::No, Flag::StrictlyIndecLeft, Answer::No, false),
    ("C-STRICT-INDEC", Flag::Indecomposable, Answer::No, Flag::StrictlyIndecRight, Answer::No, false),
    ("C-SUMC-INDEC", Flag::SumClosed, Answer::Yes, Flag::Indecomposable, Answer::Yes, false),
    ("C-SUMC-INDEC", Flag::Indecomposable, Answer::No, Flag::SumClosed, Answer::No, false),
];

fn nprod(a: Term, b: Term) -> Term {
    normalize(&Term::prod(a, b))
}

fn flag_claim(f: Flag, t: &Term) -> Claim {
    Claim::Flag { name: f.name().to_string(), term: t.clone() }
}

fn flag_cert(answer: Answer, rule: &str, f: Flag, t: &Term) -> Certificate {
    Certificate::new(answer, rule, flag_claim(f, t))
}

/// Small types used to search for closure counterexamples.
fn catalogue() -> Vec<Term> {
    vec![Term::Fin(1), Term::Fin(2), Term::Omega, Term::OmegaStar, Term::Zeta, Term::Eta]
}

/// Whether the flag derivations may use a rule tagged `AC`.
fn ac_note(engine: &Engine) -> Option<&'static str> {
    (!engine.config.choice).then_some("AC disabled")
}

struct Builder<'e> {
    engine: &'e mut Engine,
    t: Term,
    flags: BTreeMap<Flag, Certificate>,
    notes: BTreeMap<Flag, Vec<String>>,
}

impl Builder<'_> {
    fn get(&self, f: Flag) -> Answer {
        self.flags.get(&f).map_or(Answer::Unknown, |c| c.answer)
    }

    fn decided(&self, f: Flag) -> bool {
        self.flags.contains_key(&f)
    }

    fn set(&mut self, f: Flag, cert: Certificate) -> Result<()> {
        match self.flags.get(&f) {
            Some(old) if old.answer != cert.answer => Err(Error::Inconsistency(format!(
                "{f}({}): {} says {} but {} says {}",
                self.t, old.rule, old.answer, cert.rule, cert.answer
            ))),
            Some(_) => Ok(()),
            None => {
                self.flags.insert(f, cert);
                Ok(())
            }
        }
    }

    fn embeds(&mut self, s: &Term, t: &Term) -> Verdict {
        self.engine.embeds(s, t)
    }

    fn not_two(&self) -> bool {
        card(&self.t) != Some(2)
    }

    fn run(&mut self) -> Result<()> {
        let t = self.t.clone();
        if t.is_zero() {
            for f in [Flag::StrictlyIndecLeft, Flag::StrictlyIndecRight] {
                self.set(f, flag_cert(Answer::No, "C-ZERO", f, &t))?;
            }
        }
        self.ordinal_rules()?;
        if matches!(t, Term::GeomOmega(_) | Term::GeomOmegaStar(_)) {
            self.set(Flag::Untranscendable, flag_cert(Answer::Yes, "C-GEOM", Flag::Untranscendable, &t))?;
        }
        self.homogeneity()?;
        self.double_and_square()?;
        self.revsum_sides()?;
        self.splits()?;
        self.product_witnesses()?;
        self.closure_witnesses()?;
        if t == Term::Lambda && !self.decided(Flag::ProductClosed) {
            if self.engine.config.choice {
                let c = flag_cert(Answer::No, "C-PC-CAT", Flag::ProductClosed, &t).axiom("AC");
                self.set(Flag::ProductClosed, c)?;
            } else {
                self.notes.entry(Flag::ProductClosed).or_default().push("AC disabled".into());
            }
        }
        self.implications()?;
        self.strong_indecomposability()?;
        self.implications()?;
        if let Some(a) = as_ordinal(&t) {
            let p = classify_ordinal(&a);
            let f = Flag::StronglyIndecomposable;
            self.set(f, flag_cert(Answer::from_bool(p.strongly_indecomposable), "C-ORD", f, &t))?;
        }
        Ok(())
    }

    fn ordinal_rules(&mut self) -> Result<()> {
        let t = self.t.clone();
        let Some(a) = as_ordinal(&t) else { return Ok(()) };
        let p = classify_ordinal(&a);
        let indec = p.additively_indecomposable && !a.is_zero();
        let ord = |f: Flag, b: bool| flag_cert(Answer::from_bool(b), "C-ORD", f, &t).bind("alpha", &a);
        self.set(Flag::Indecomposable, ord(Flag::Indecomposable, p.additively_indecomposable))?;
        self.set(Flag::SumClosed, ord(Flag::SumClosed, p.sum_closed))?;
        self.set(Flag::Untranscendable, ord(Flag::Untranscendable, p.untranscendable))?;
        self.set(Flag::SUntranscendable, ord(Flag::SUntranscendable, p.s_untranscendable))?;
        self.set(Flag::ProductClosed, ord(Flag::ProductClosed, p.product_closed))?;
        self.set(Flag::StrictlyIndecRight, ord(Flag::StrictlyIndecRight, indec))?;
        self.set(Flag::StrictlyIndecLeft, ord(Flag::StrictlyIndecLeft, indec && a == crate::ordinal::Ordinal::one()))?;
        Ok(())
    }

    fn homogeneity(&mut self) -> Result<()> {
        let t = self.t.clone();
        let f = Flag::Homogeneous;
        let small = card(&t).is_some_and(|n| n <= 2);
        if small || t == Term::Eta || t == Term::Lambda {
            return self.set(f, flag_cert(Answer::Yes, "C-HOMOG-CAT", f, &t));
        }
        let jump = matches!(crate::term::adjacent_pairs(&t), Some(None)) || matches!(crate::term::adjacent_pairs(&t), Some(Some(n)) if n > 0);
        if jump && card(&t).is_none_or(|n| n >= 3) {
            self.set(f, flag_cert(Answer::No, "C-HOMOG-JUMP", f, &t))?;
        }
        Ok(())
    }

    fn double_and_square(&mut self) -> Result<()> {
        let t = self.t.clone();
        let two = self.embeds(&doubled(&t), &t);
        if let (Answer::Yes, Some(c)) = (two.answer, two.certificate) {
            for f in [Flag::Indecomposable, Flag::SumClosed] {
                self.set(f, flag_cert(Answer::Yes, "C-DOUBLE", f, &t).premise(c.clone()))?;
            }
        }
        let sq = self.embeds(&nprod(t.clone(), t.clone()), &t);
        if let (Answer::Yes, Some(c)) = (sq.answer, sq.certificate) {
            for f in [Flag::SUntranscendable, Flag::ProductClosed] {
                self.set(f, flag_cert(Answer::Yes, "C-SQUARE", f, &t).premise(c.clone()))?;
            }
        }
        if self.get(Flag::Homogeneous) == Answer::Yes {
            let h = self.flags[&Flag::Homogeneous].clone();
            let f = Flag::SUntranscendable;
            self.set(f, flag_cert(Answer::Yes, "C-HOMOG", f, &t).premise(h))?;
        }
        Ok(())
    }

    fn revsum_sides(&mut self) -> Result<()> {
        let t = self.t.clone();
        let Some(b) = ord_blocks(&t) else { return Ok(()) };
        if b.star && b.monotone_nonempty() && b.infinitely_many_nonempty() {
            self.set(Flag::StrictlyIndecLeft, flag_cert(Answer::Yes, "C-SIDES-REVSUM", Flag::StrictlyIndecLeft, &t))?;
            self.set(Flag::StrictlyIndecRight, flag_cert(Answer::No, "C-SIDES-REVSUM", Flag::StrictlyIndecRight, &t))?;
        }
        Ok(())
    }

    fn splits(&mut self) -> Result<()> {
        let t = self.t.clone();
        let targets = [Flag::Indecomposable, Flag::StrictlyIndecLeft, Flag::StrictlyIndecRight];
        for (psi, tau) in iso_splits(&t).into_iter().take(MAX_SPLITS) {
            if targets.iter().all(|f| self.decided(*f)) {
                break;
            }
            let a = self.embeds(&t, &psi);
            let b = self.embeds(&t, &tau);
            let node = |f: Flag, answer: Answer, ps: Vec<&Verdict>| {
                flag_cert(answer, "C-SPLIT", f, &t)
                    .bind("psi", &psi)
                    .bind("tau", &tau)
                    .premises(ps.into_iter().map(|v| v.certificate.clone().unwrap()))
            };
            if a.is_no() && b.is_no() {
                for f in [Flag::Indecomposable, Flag::SumClosed] {
                    self.set(f, node(f, Answer::No, vec![&a, &b]))?;
                }
            }
            let right_no = if a.is_yes() { Some(&a) } else if b.is_no() { Some(&b) } else { None };
            if let Some(v) = right_no {
                self.set(Flag::StrictlyIndecRight, node(Flag::StrictlyIndecRight, Answer::No, vec![v]))?;
            }
            let left_no = if b.is_yes() { Some(&b) } else if a.is_no() { Some(&a) } else { None };
            if let Some(v) = left_no {
                self.set(Flag::StrictlyIndecLeft, node(Flag::StrictlyIndecLeft, Answer::No, vec![v]))?;
            }
        }
        Ok(())
    }

    /// Candidate factorizations `t ⩽ ψτ` refuting (s-)untranscendability.
    fn product_witnesses(&mut self) -> Result<()> {
        let t = self.t.clone();
        if self.decided(Flag::SUntranscendable) && self.decided(Flag::Untranscendable) {
            return Ok(());
        }
        let mut candidates = Vec::new();
        if let Term::Prod(a, b) = &t {
            candidates.push(((**a).clone(), (**b).clone()));
        }
        if let Some(b) = ord_blocks(&t) {
            let idx = if b.star { Term::OmegaStar } else { Term::Omega };
            candidates.push((crate::term::from_ordinal(&b.sup()), idx));
        }
        for (psi, tau) in candidates {
            let cover = self.embeds(&t, &nprod(psi.clone(), tau.clone()));
            let a = self.embeds(&t, &psi);
            let b = self.embeds(&t, &tau);
            if !(cover.is_yes() && a.is_no() && b.is_no()) {
                continue;
            }
            let ps: Vec<Certificate> = [&cover, &a, &b].iter().map(|v| v.certificate.clone().unwrap()).collect();
            let f = Flag::SUntranscendable;
            self.set(f, flag_cert(Answer::No, "C-SUT-WITNESS", f, &t).bind("psi", &psi).bind("tau", &tau).premises(ps.clone()))?;
            let pa = self.embeds(&psi, &t);
            let pb = self.embeds(&tau, &t);
            if pa.is_yes() && pb.is_yes() {
                let f = Flag::Untranscendable;
                let mut all = ps;
                all.push(pa.certificate.unwrap());
                all.push(pb.certificate.unwrap());
                self.set(f, flag_cert(Answer::No, "C-PROD-SPLIT", f, &t).bind("psi", &psi).bind("tau", &tau).premises(all))?;
            }
        }
        Ok(())
    }

    /// Pairs of strictly smaller catalogue types whose sum or product is not strictly smaller.
    fn closure_witnesses(&mut self) -> Result<()> {
        let t = self.t.clone();
        if self.decided(Flag::SumClosed) && self.decided(Flag::ProductClosed) {
            return Ok(());
        }
        let mut below = Vec::new();
        for c in catalogue() {
            let up = self.embeds(&c, &t);
            let down = self.embeds(&t, &c);
            if up.is_yes() && down.is_no() {
                below.push((c, up.certificate.unwrap(), down.certificate.unwrap()));
            }
        }
        for (psi, p1, p2) in &below {
            for (tau, q1, q2) in &below {
                let base = vec![p1.clone(), p2.clone(), q1.clone(), q2.clone()];
                for (f, rule, combo) in [
                    (Flag::SumClosed, "C-SUMC-WITNESS", normalize(&Term::Sum(vec![psi.clone(), tau.clone()]))),
                    (Flag::ProductClosed, "C-PC-WITNESS", nprod(psi.clone(), tau.clone())),
                ] {
                    if self.decided(f) {
                        continue;
                    }
                    let v = self.embeds(&combo, &t);
                    if v.is_no() {
                        let mut ps = base.clone();
                        ps.push(v.certificate.unwrap());
                        self.set(f, flag_cert(Answer::No, rule, f, &t).bind("psi", psi).bind("tau", tau).premises(ps))?;
                    }
                }
            }
        }
        Ok(())
    }

    fn strong_indecomposability(&mut self) -> Result<()> {
        let t = self.t.clone();
        let f = Flag::StronglyIndecomposable;
        if self.get(Flag::Untranscendable) == Answer::Yes && self.not_two() {
            let ut = self.flags[&Flag::Untranscendable].clone();
            let sigma = structural_facts(&t).sigma_scattered;
            if let (Answer::Yes, Some(sc)) = (sigma.answer, sigma.certificate) {
                return self.set(f, flag_cert(Answer::Yes, "C-SIGMA-SI", f, &t).premise(ut).premise(sc));
            }
            if let Some(w) = f_class_profile(&t).equimorphic_no_finite_witness {
                let eq = self.engine.equimorphic(&t, &w);
                if let (Answer::Yes, Some(ec)) = (eq.answer, eq.certificate) {
                    return self.set(f, flag_cert(Answer::Yes, "C-FF", f, &t).bind("witness", &w).premise(ut).premise(ec));
                }
            }
        }
        if !is_countable(&t) && !self.decided(f) {
            if let Some(note) = ac_note(self.engine) {
                self.notes.entry(f).or_default().push(note.into());
                return Ok(());
            }
            let v = self.embeds(&t, &Term::Lambda);
            if let (Answer::Yes, Some(c)) = (v.answer, v.certificate) {
                self.set(f, flag_cert(Answer::No, "C-SIERPINSKI", f, &t).axiom("AC").premise(c))?;
            }
        }
        Ok(())
    }

    /// Closes the flags under the implications between them.
    fn implications(&mut self) -> Result<()> {
        let t = self.t.clone();
        let not_two = self.not_two();
        loop {
            let mut changed = false;
            for (rule, pf, pa, cf, ca, need) in IMPLICATIONS {
                if self.get(pf) != pa || (need && !not_two) {
                    continue;
                }
                if self.decided(cf) {
                    if self.get(cf) != ca {
                        let old = &self.flags[&cf];
                        return Err(Error::Inconsistency(format!(
                            "{cf}({t}): {} says {} but {rule} says {ca}",
                            old.rule, old.answer
                        )));
                    }
                    continue;
                }
                let p = self.flags[&pf].clone();
                self.set(cf, flag_cert(ca, rule, cf, &t).premise(p))?;
                changed = true;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn finish(self) -> TypeProfile {
        let t = self.t.clone();
        TypeProfile::from_fn(t, |f| match self.flags.get(&f) {
            Some(c) => Verdict::decided(c.clone()),
            None => {
                let mut frontier: Vec<String> = f.candidate_rules().iter().map(|s| s.to_string()).collect();
                frontier.extend(self.notes.get(&f).cloned().unwrap_or_default());
                Verdict::unknown(frontier)
            }
        })
    }
}

impl Engine {
    /// Computes the classification profile of `t`.
    pub fn classify_type(&mut self, t: &Term) -> Result<TypeProfile> {
        let n = normalize(t);
        let r = normalize(&Term::rev(n.clone()));
        // Prefer the orientation the structural rules are phrased for.
        let rank = |x: &Term| (as_ordinal(x).is_none(), ord_blocks(x).is_none(), x.to_string());
        if r == n || rank(&n) <= rank(&r) {
            return self.classify_canonical(&n);
        }
        let base = self.classify_canonical(&r)?;
        let profile = TypeProfile::from_fn(n.clone(), |f| {
            let v = base.get(f.mirror());
            match &v.certificate {
                Some(c) => Verdict::decided(flag_cert(v.answer, "C-REV", f, &n).premise(c.clone())),
                None => v.clone(),
            }
        });
        Ok(profile)
    }

    fn classify_canonical(&mut self, t: &Term) -> Result<TypeProfile> {
        let mut b = Builder { engine: self, t: t.clone(), flags: BTreeMap::new(), notes: BTreeMap::new() };
        b.run()?;
        let p = b.finish();
        p.check_consistency()?;
        Ok(p)
    }

    /// Decides `t² ⩽ t`, preferring the route through homogenization.
    pub fn square_pipeline(&mut self, t: &Term) -> Result<SquareReport> {
        let t = normalize(t);
        let profile = self.classify_type(&t)?;
        let sut = profile.s_untranscendable.clone();
        let right = self.embeds(&doubled(&t), &t);
        let left = self.embeds(&nprod(Term::Fin(2), t.clone()), &t);
        let hypotheses = vec![
            ("s_untranscendable".to_string(), sut.clone()),
            (format!("{} <= {t}", doubled(&t)), right.clone()),
            (format!("{} <= {t}", nprod(Term::Fin(2), t.clone())), left.clone()),
        ];
        let failing = hypotheses.iter().filter(|(_, v)| v.is_no()).count();
        let square = nprod(t.clone(), t.clone());
        let verdict = if sut.is_yes() && right.is_yes() && left.is_yes() {
            let homog = Certificate::new(
                Answer::Yes,
                "C-HOMOGENIZE",
                Claim::Flag { name: "homogeneous_condensation".into(), term: t.clone() },
            )
            .premise(sut.certificate.unwrap())
            .premise(right.certificate.unwrap());
            Verdict::decided(
                Certificate::new(Answer::Yes, "C-GARRETT", embeds_claim(&square, &t))
                    .premise(homog)
                    .premise(left.certificate.unwrap()),
            )
        } else {
            self.embeds(&square, &t)
        };
        Ok(SquareReport { term: t, hypotheses, failing, verdict })
    }

    /// Evaluates the three alternatives for an indecomposable type.
    pub fn trichotomy_check(&mut self, t: &Term) -> Result<TrichotomyReport> {
        let t = normalize(t);
        let profile = self.classify_type(&t)?;
        if !profile.indecomposable.is_yes() {
            return Err(Error::InvalidArgument(format!("{t} is not certified indecomposable")));
        }
        let double = self.embeds(&doubled(&t), &t).answer;
        let strictly_left = profile.strictly_indec_left.answer;
        let strictly_right = profile.strictly_indec_right.answer;
        let answers = [double, strictly_left, strictly_right];
        let alternatives = answers.iter().filter(|a| **a == Answer::Yes).count();
        let exception = card(&t) == Some(1);
        let all_decided = answers.iter().all(|a| a.is_decided());
        let violation = if exception {
            None
        } else if alternatives > 1 {
            Some(format!("{alternatives} alternatives hold"))
        } else if all_decided && alternatives == 0 {
            Some("no alternative holds".to_string())
        } else {
            None
        };
        Ok(TrichotomyReport { term: t, double, strictly_left, strictly_right, alternatives, exception, violation })
    }
}

fn embedding_of(c: &Certificate) -> Option<(&Term, &Term, Answer)> {
    match &c.claim {
        Claim::Embeds { sub, sup } => Some((sub, sup, c.answer)),
        _ => None,
    }
}

fn flag_of(c: &Certificate) -> Option<(&str, &Term, Answer)> {
    match &c.claim {
        Claim::Flag { name, term } => Some((name.as_str(), term, c.answer)),
        _ => None,
    }
}

/// Re-checks a flag node against its rule; premises are checked by the caller.
pub(crate) fn replay_flag(cert: &Certificate) -> Result<()> {
    use Answer::{No, Yes};
    let Some((name, t, answer)) = flag_of(cert) else { unreachable!() };
    let fail = |msg: &str| Err(Error::Inconsistency(format!("{}: {msg} at {}", cert.rule, cert.claim)));
    let ps = &cert.premises;
    let emb = |i: usize| ps.get(i).and_then(embedding_of);
    let is_emb = |i: usize, s: &Term, u: &Term, a: Answer| emb(i) == Some((s, u, a));
    let bound = |k: &str| cert.instantiation.get(k).map(|s| crate::term::parse_term(s).map(|x| normalize(&x)));
    let pair = || -> Option<(Term, Term)> { Some((bound("psi")?.ok()?, bound("tau")?.ok()?)) };
    if matches!(name, "scattered" | "sigma_scattered") {
        let facts = structural_facts(t);
        let v = if name == "scattered" { facts.scattered } else { facts.sigma_scattered };
        return match v.certificate {
            Some(c) if c.rule == cert.rule && c.answer == answer => Ok(()),
            _ => fail("structural fact does not match"),
        };
    }
    if cert.rule == "C-HOMOGENIZE" {
        let ok = name == "homogeneous_condensation"
            && answer == Yes
            && ps.len() == 2
            && flag_of(&ps[0]) == Some(("s_untranscendable", t, Yes))
            && is_emb(1, &doubled(t), t, Yes);
        return if ok { Ok(()) } else { fail("hypotheses do not match") };
    }
    let Some(flag) = Flag::from_name(name) else { return fail("unknown flag") };
    let ok = match cert.rule.as_str() {
        "C-ZERO" => t.is_zero() && answer == No && matches!(flag, Flag::StrictlyIndecLeft | Flag::StrictlyIndecRight),
        "C-ORD" => match as_ordinal(t) {
            Some(a) => {
                let p = classify_ordinal(&a);
                let indec = p.additively_indecomposable && !a.is_zero();
                let expect = match flag {
                    Flag::Indecomposable => p.additively_indecomposable,
                    Flag::SumClosed => p.sum_closed,
                    Flag::Untranscendable => p.untranscendable,
                    Flag::SUntranscendable => p.s_untranscendable,
                    Flag::ProductClosed => p.product_closed,
                    Flag::StronglyIndecomposable => p.strongly_indecomposable,
                    Flag::StrictlyIndecRight => indec,
                    Flag::StrictlyIndecLeft => indec && a == crate::ordinal::Ordinal::one(),
                    Flag::Homogeneous => return fail("not an ordinal rule"),
                };
                Answer::from_bool(expect) == answer
            }
            None => false,
        },
        "C-GEOM" => {
            flag == Flag::Untranscendable && answer == Yes && matches!(t, Term::GeomOmega(_) | Term::GeomOmegaStar(_))
        }
        "C-HOMOG-CAT" => {
            flag == Flag::Homogeneous
                && answer == Yes
                && (card(t).is_some_and(|n| n <= 2) || *t == Term::Eta || *t == Term::Lambda)
        }
        "C-HOMOG-JUMP" => {
            let jump = matches!(crate::term::adjacent_pairs(t), Some(None))
                || matches!(crate::term::adjacent_pairs(t), Some(Some(n)) if n > 0);
            flag == Flag::Homogeneous && answer == No && jump && card(t).is_none_or(|n| n >= 3)
        }
        "C-DOUBLE" => {
            matches!(flag, Flag::Indecomposable | Flag::SumClosed)
                && answer == Yes
                && ps.len() == 1
                && is_emb(0, &doubled(t), t, Yes)
        }
        "C-SQUARE" => {
            matches!(flag, Flag::SUntranscendable | Flag::ProductClosed)
                && answer == Yes
                && ps.len() == 1
                && is_emb(0, &nprod(t.clone(), t.clone()), t, Yes)
        }
        "C-HOMOG" => {
            flag == Flag::SUntranscendable && answer == Yes && ps.len() == 1 && flag_of(&ps[0]) == Some(("homogeneous", t, Yes))
        }
        "C-SIDES-REVSUM" => {
            let ok_blocks =
                ord_blocks(t).is_some_and(|b| b.star && b.monotone_nonempty() && b.infinitely_many_nonempty());
            ok_blocks
                && ((flag == Flag::StrictlyIndecLeft && answer == Yes) || (flag == Flag::StrictlyIndecRight && answer == No))
        }
        "C-SPLIT" => match pair() {
            Some((psi, tau)) if super::helpers::is_split(t, &psi, &tau) && answer == No => match flag {
                Flag::Indecomposable | Flag::SumClosed => {
                    ps.len() == 2 && is_emb(0, t, &psi, No) && is_emb(1, t, &tau, No)
                }
                Flag::StrictlyIndecRight => ps.len() == 1 && (is_emb(0, t, &psi, Yes) || is_emb(0, t, &tau, No)),
                Flag::StrictlyIndecLeft => ps.len() == 1 && (is_emb(0, t, &tau, Yes) || is_emb(0, t, &psi, No)),
                _ => false,
            },
            _ => false,
        },
        "C-SUT-WITNESS" | "C-PROD-SPLIT" => match pair() {
            Some((psi, tau)) => {
                let core = answer == No
                    && is_emb(0, t, &nprod(psi.clone(), tau.clone()), Yes)
                    && is_emb(1, t, &psi, No)
                    && is_emb(2, t, &tau, No);
                if cert.rule == "C-SUT-WITNESS" {
                    core && flag == Flag::SUntranscendable && ps.len() == 3
                } else {
                    core && flag == Flag::Untranscendable
                        && ps.len() == 5
                        && is_emb(3, &psi, t, Yes)
                        && is_emb(4, &tau, t, Yes)
                }
            }
            None => false,
        },
        "C-SUMC-WITNESS" | "C-PC-WITNESS" => match pair() {
            Some((psi, tau)) => {
                let (want, combo) = if cert.rule == "C-SUMC-WITNESS" {
                    (Flag::SumClosed, normalize(&Term::Sum(vec![psi.clone(), tau.clone()])))
                } else {
                    (Flag::ProductClosed, nprod(psi.clone(), tau.clone()))
                };
                flag == want
                    && answer == No
                    && ps.len() == 5
                    && is_emb(0, &psi, t, Yes)
                    && is_emb(1, t, &psi, No)
                    && is_emb(2, &tau, t, Yes)
                    && is_emb(3, t, &tau, No)
                    && is_emb(4, &combo, t, No)
            }
            None => false,
        },
        "C-PC-CAT" => flag == Flag::ProductClosed && answer == No && *t == Term::Lambda && cert.axioms.iter().any(|a| a == "AC"),
        "C-SIERPINSKI" => {
            flag == Flag::StronglyIndecomposable
                && answer == No
                && !is_countable(t)
                && cert.axioms.iter().any(|a| a == "AC")
                && ps.len() == 1
                && is_emb(0, t, &Term::Lambda, Yes)
        }
        "C-SIGMA-SI" => {
            flag == Flag::StronglyIndecomposable
                && answer == Yes
                && card(t) != Some(2)
                && ps.len() == 2
                && flag_of(&ps[0]) == Some(("untranscendable", t, Yes))
                && flag_of(&ps[1]) == Some(("sigma_scattered", t, Yes))
        }
        "C-FF" => {
            let w = bound("witness").and_then(|r| r.ok());
            flag == Flag::StronglyIndecomposable
                && answer == Yes
                && card(t) != Some(2)
                && w.is_some()
                && w == f_class_profile(t).equimorphic_no_finite_witness
                && ps.len() == 2
                && flag_of(&ps[0]) == Some(("untranscendable", t, Yes))
                && ps[1].answer == Yes
                && ps[1].claim == Claim::Equimorphic { left: t.clone(), right: w.unwrap() }
        }
        "C-REV" => {
            let r = normalize(&Term::rev(t.clone()));
            ps.len() == 1 && flag_of(&ps[0]) == Some((flag.mirror().name(), &r, answer))
        }
        rule => {
            ps.len() == 1
                && IMPLICATIONS.iter().any(|&(r, pf, pa, cf, ca, need)| {
                    r == rule
                        && cf == flag
                        && ca == answer
                        && (!need || card(t) != Some(2))
                        && flag_of(&ps[0]) == Some((pf.name(), t, pa))
                })
        }
    };
    if ok {
        Ok(())
    } else {
        fail("rule does not validate")
    }
}

/// Replays a square-pipeline certificate rooted at `C-GARRETT`.
pub(crate) fn replay_garrett(cert: &Certificate) -> bool {
    let Claim::Embeds { sub, sup } = &cert.claim else { return false };
    cert.answer == Answer::Yes
        && *sub == nprod(sup.clone(), sup.clone())
        && cert.premises.len() == 2
        && cert.premises[0].rule == "C-HOMOGENIZE"
        && flag_of(&cert.premises[0]) == Some(("homogeneous_condensation", sup, Answer::Yes))
        && embedding_of(&cert.premises[1]) == Some((&nprod(Term::Fin(2), sup.clone()), sup, Answer::Yes))
}
