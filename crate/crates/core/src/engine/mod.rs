//! Certificate-producing decision procedure for embeddability of terms.
//!
//! The search is an iterative-deepening proof search over the rules in
//! [`rules`]. Both `s ⩽ t` and the reversed pair `s* ⩽ t*` are searched
//! together under a canonical key, so reversal never changes an answer.

mod classify;
pub mod helpers;
pub mod rules;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::{normalize, Term};
use crate::verdict::{Answer, Certificate, Claim, Verdict};

pub use classify::{Flag, SquareReport, TrichotomyReport, TypeProfile};
pub use rules::Rule;

use rules::{direct, discharge, embeds_claim, obligations, reversed};

/// Search parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Maximum height of a derivation tree.
    pub depth: usize,
    /// Whether facts that rely on the axiom of choice may be used.
    pub choice: bool,
    /// Whether rules that rely on the classical setting may be used.
    pub classical: bool,
    /// Upper bound on search nodes per query.
    pub node_budget: usize,
    /// Order in which the rules are tried.
    #[serde(skip, default = "default_rules")]
    pub rule_order: Vec<Rule>,
}

fn default_rules() -> Vec<Rule> {
    Rule::ALL.to_vec()
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { depth: 8, choice: true, classical: true, node_budget: 20_000, rule_order: default_rules() }
    }
}

type Pair = (Term, Term);

/// Decision engine with a memo shared across queries.
#[derive(Debug)]
pub struct Engine {
    config: EngineConfig,
    decided: HashMap<Pair, Certificate>,
    unknown: HashMap<Pair, usize>,
    stack: HashSet<Pair>,
    cycle_hits: usize,
    nodes: usize,
    exhausted: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Engine {
        Engine {
            config,
            decided: HashMap::new(),
            unknown: HashMap::new(),
            stack: HashSet::new(),
            cycle_hits: 0,
            nodes: 0,
            exhausted: false,
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Decides `s ⩽ t`.
    pub fn embeds(&mut self, s: &Term, t: &Term) -> Verdict {
        let (s, t) = (normalize(s), normalize(t));
        self.nodes = 0;
        self.exhausted = false;
        for d in 0..=self.config.depth {
            if let Some(c) = self.search(&s, &t, d) {
                return Verdict::decided(c);
            }
            if self.exhausted {
                break;
            }
        }
        Verdict::unknown(self.frontier(&s, &t))
    }

    /// Decides `s ≡ t` (mutual embeddability).
    pub fn equimorphic(&mut self, s: &Term, t: &Term) -> Verdict {
        let (s, t) = (normalize(s), normalize(t));
        let fwd = self.embeds(&s, &t);
        let bwd = self.embeds(&t, &s);
        let claim = Claim::Equimorphic { left: s, right: t };
        let cert = |answer, premises: Vec<Certificate>| {
            Verdict::decided(Certificate::new(answer, "R-EQUI", claim.clone()).premises(premises))
        };
        match (fwd.answer, bwd.answer) {
            (Answer::Yes, Answer::Yes) => cert(Answer::Yes, vec![fwd.certificate.unwrap(), bwd.certificate.unwrap()]),
            (Answer::No, _) => cert(Answer::No, vec![fwd.certificate.unwrap()]),
            (_, Answer::No) => cert(Answer::No, vec![bwd.certificate.unwrap()]),
            _ => {
                let mut frontier = fwd.frontier;
                frontier.extend(bwd.frontier);
                frontier.dedup();
                Verdict::unknown(frontier)
            }
        }
    }

    /// Rules that apply to the pair in either orientation but did not decide it.
    fn frontier(&self, s: &Term, t: &Term) -> Vec<String> {
        let (rs, rt) = reversed(s, t);
        let mut out = Vec::new();
        for &r in &self.config.rule_order {
            let applies = !r.is_direct()
                && (!obligations(r, s, t).is_empty() || !obligations(r, &rs, &rt).is_empty());
            if applies && !out.contains(&r.name().to_string()) {
                out.push(r.name().to_string());
            }
        }
        if self.exhausted {
            out.push("node budget".to_string());
        }
        out
    }

    fn search(&mut self, s: &Term, t: &Term, depth: usize) -> Option<Certificate> {
        let (rs, rt) = reversed(s, t);
        let forward = format!("{s}|{t}") <= format!("{rs}|{rt}");
        let key: Pair = if forward { (s.clone(), t.clone()) } else { (rs.clone(), rt.clone()) };
        let found = self.search_key(&key, depth)?;
        let Claim::Embeds { sub, sup } = &found.claim else { unreachable!() };
        if sub == s && sup == t {
            return Some(found);
        }
        Some(Certificate::new(found.answer, "R-REV", embeds_claim(s, t)).premise(found))
    }

    fn search_key(&mut self, key: &Pair, depth: usize) -> Option<Certificate> {
        if let Some(c) = self.decided.get(key) {
            return Some(c.clone());
        }
        if self.unknown.get(key).is_some_and(|&d| d >= depth) {
            return None;
        }
        if self.stack.contains(key) {
            self.cycle_hits += 1;
            return None;
        }
        self.nodes += 1;
        if self.nodes > self.config.node_budget {
            self.exhausted = true;
            return None;
        }
        let (s, t) = key.clone();
        let (rs, rt) = reversed(&s, &t);
        let orientations = if rs == s && rt == t { vec![(s, t)] } else { vec![(s, t), (rs, rt)] };
        let classical = self.config.classical;
        let order = self.config.rule_order.clone();
        for &r in order.iter().filter(|r| r.is_direct()) {
            for (a, b) in &orientations {
                if let Some(c) = direct(r, a, b) {
                    self.decided.insert(key.clone(), c.clone());
                    return Some(c);
                }
            }
        }
        if depth == 0 {
            return None;
        }
        let hits = self.cycle_hits;
        self.stack.insert(key.clone());
        let mut result = None;
        'rules: for &r in order.iter().filter(|r| !r.is_direct() && (classical || !r.is_classical())) {
            for (a, b) in &orientations {
                for o in obligations(r, a, b) {
                    if let Some(ps) = self.discharge_all(&o.premises, depth - 1) {
                        result = Some(discharge(r, a, b, &o, ps));
                        break 'rules;
                    }
                    if self.exhausted {
                        break 'rules;
                    }
                }
            }
        }
        self.stack.remove(key);
        match &result {
            Some(c) => {
                self.decided.insert(key.clone(), c.clone());
            }
            None if hits == self.cycle_hits && !self.exhausted => {
                self.unknown.insert(key.clone(), depth);
            }
            None => {}
        }
        result
    }

    fn discharge_all(&mut self, premises: &[(Term, Term, Answer)], depth: usize) -> Option<Vec<Certificate>> {
        let mut out = Vec::new();
        for (a, b, want) in premises {
            let c = self.search(a, b, depth)?;
            if c.answer != *want {
                return None;
            }
            out.push(c);
        }
        Some(out)
    }
}

/// Re-derives every node of an embedding certificate from its rule.
pub fn replay(cert: &Certificate) -> Result<()> {
    let bad = |msg: &str| Err(Error::Inconsistency(format!("{}: {msg} at {}", cert.rule, cert.claim)));
    if !cert.answer.is_decided() {
        return bad("undecided node");
    }
    for p in &cert.premises {
        replay(p)?;
    }
    match &cert.claim {
        Claim::Equimorphic { left, right } => {
            if cert.rule != "R-EQUI" {
                return bad("unexpected rule");
            }
            let claims: Vec<(&Claim, Answer)> = cert.premises.iter().map(|p| (&p.claim, p.answer)).collect();
            let fwd = embeds_claim(left, right);
            let bwd = embeds_claim(right, left);
            let ok = match cert.answer {
                Answer::Yes => claims.len() == 2 && claims.contains(&(&fwd, Answer::Yes)) && claims.contains(&(&bwd, Answer::Yes)),
                _ => claims.len() == 1 && (claims[0] == (&fwd, Answer::No) || claims[0] == (&bwd, Answer::No)),
            };
            if ok {
                Ok(())
            } else {
                bad("premises do not match")
            }
        }
        Claim::Embeds { sub, sup } => {
            if cert.rule == "C-GARRETT" {
                return if classify::replay_garrett(cert) { Ok(()) } else { bad("hypotheses do not match") };
            }
            if cert.rule == "R-REV" {
                let (rs, rt) = reversed(sub, sup);
                return match cert.premises.as_slice() {
                    [p] if p.answer == cert.answer && p.claim == embeds_claim(&rs, &rt) => Ok(()),
                    _ => bad("premise is not the reversed claim"),
                };
            }
            let Some(rule) = Rule::from_name(&cert.rule) else { return bad("unknown rule") };
            if rule.is_direct() {
                return match direct(rule, sub, sup) {
                    Some(c) if c.answer == cert.answer && cert.premises.is_empty() => Ok(()),
                    _ => bad("rule does not apply"),
                };
            }
            let got: Vec<(Term, Term, Answer)> = cert
                .premises
                .iter()
                .map(|p| match &p.claim {
                    Claim::Embeds { sub, sup } => Some((sub.clone(), sup.clone(), p.answer)),
                    _ => None,
                })
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Inconsistency(format!("{}: non-embedding premise", cert.rule)))?;
            if obligations(rule, sub, sup).iter().any(|o| o.answer == cert.answer && o.premises == got) {
                Ok(())
            } else {
                bad("no matching obligation")
            }
        }
        Claim::Flag { .. } => classify::replay_flag(cert),
    }
}

#[cfg(test)]
mod tests;
