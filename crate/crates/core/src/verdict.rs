//! Three-valued answers and the derivation trees that justify them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_decided(self) -> bool {
        self != Answer::Unknown
    }

    pub fn negate(self) -> Answer {
        match self {
            Answer::Yes => Answer::No,
            Answer::No => Answer::Yes,
            Answer::Unknown => Answer::Unknown,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Unknown => "UNKNOWN",
        })
    }
}

/// The statement a certificate node establishes (or refutes, when its answer is NO).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `sub ⩽ sup`.
    Embeds { sub: Term, sup: Term },
    /// `left ⩽ right` and `right ⩽ left`.
    Equimorphic { left: Term, right: Term },
    /// A named classification flag of a term.
    Flag { name: String, term: Term },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Embeds { sub, sup } => write!(f, "{sub} <= {sup}"),
            Claim::Equimorphic { left, right } => write!(f, "{left} == {right}"),
            Claim::Flag { name, term } => write!(f, "{name}({term})"),
        }
    }
}

/// A node of a derivation tree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub answer: Answer,
    pub rule: String,
    pub claim: Claim,
    pub premises: Vec<Certificate>,
    pub instantiation: BTreeMap<String, String>,
    pub axioms: Vec<String>,
}

impl Certificate {
    pub fn new(answer: Answer, rule: &str, claim: Claim) -> Certificate {
        Certificate {
            answer,
            rule: rule.to_string(),
            claim,
            premises: Vec::new(),
            instantiation: BTreeMap::new(),
            axioms: Vec::new(),
        }
    }

    pub fn premise(mut self, c: Certificate) -> Certificate {
        self.premises.push(c);
        self
    }

    pub fn premises(mut self, cs: impl IntoIterator<Item = Certificate>) -> Certificate {
        self.premises.extend(cs);
        self
    }

    pub fn bind(mut self, key: &str, value: impl fmt::Display) -> Certificate {
        self.instantiation.insert(key.to_string(), value.to_string());
        self
    }

    pub fn axiom(mut self, a: &str) -> Certificate {
        if !self.axioms.iter().any(|x| x == a) {
            self.axioms.push(a.to_string());
        }
        self
    }

    /// Every axiom tag used anywhere in the tree.
    pub fn all_axioms(&self) -> Vec<String> {
        let mut out = self.axioms.clone();
        for p in &self.premises {
            for a in p.all_axioms() {
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Certificate::node_count).sum::<usize>()
    }

    /// Every rule name used anywhere in the tree.
    pub fn rules(&self) -> Vec<String> {
        let mut out = vec![self.rule.clone()];
        for p in &self.premises {
            for r in p.rules() {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }
}

/// An answer, its certificate when decided, and the attempted rules when not.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub certificate: Option<Certificate>,
    pub frontier: Vec<String>,
}

impl Verdict {
    pub fn decided(cert: Certificate) -> Verdict {
        Verdict { answer: cert.answer, certificate: Some(cert), frontier: Vec::new() }
    }

    pub fn unknown(frontier: Vec<String>) -> Verdict {
        Verdict { answer: Answer::Unknown, certificate: None, frontier }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}
