//! Banach–Mazur style games on binary sequences and the flip conjugation of strategies.
//!
//! Players alternately play finite nonempty binary words whose concatenation is
//! the outcome. No payoff is evaluated here: the module checks the finitary
//! identities by which flipping a play conjugates one strategy into another.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitWord(pub Vec<bool>);

impl BitWord {
    pub fn new(bits: Vec<bool>) -> BitWord {
        BitWord(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat<'a>(words: impl IntoIterator<Item = &'a BitWord>) -> BitWord {
        BitWord(words.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// Every word of length `1..=max_len`, shortest first.
    pub fn all_nonempty(max_len: usize) -> Vec<BitWord> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for code in 0..(1u64 << len) {
                out.push(BitWord((0..len).rev().map(|i| code >> i & 1 == 1).collect()));
            }
        }
        out
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<BitWord> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidArgument(format!("{c:?} is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord)
    }
}

impl TryFrom<String> for BitWord {
    type Error = Error;

    fn try_from(s: String) -> Result<BitWord> {
        s.parse()
    }
}

impl From<BitWord> for String {
    fn from(w: BitWord) -> String {
        w.to_string()
    }
}

/// The pointwise complement; an involution.
pub fn flip(w: &BitWord) -> BitWord {
    BitWord(w.0.iter().map(|b| !b).collect())
}

/// Eventual agreement of two words of equal length, judged on a finite window.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct E0Result {
    pub equivalent: bool,
    /// Start of the longest common final segment.
    pub agree_from: usize,
    /// A finite window can refute eventual agreement but never prove it.
    pub bounded: bool,
}

/// Whether `x` and `y` agree on a nonempty final segment (or are both empty).
pub fn e0_equiv(x: &BitWord, y: &BitWord) -> Result<E0Result> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!("lengths differ: {} and {}", x.len(), y.len())));
    }
    let common = x.0.iter().rev().zip(y.0.iter().rev()).take_while(|(a, b)| a == b).count();
    Ok(E0Result { equivalent: x.is_empty() || common > 0, agree_from: x.len() - common, bounded: true })
}

/// Key of a position: its moves joined by commas.
pub fn position_key(pos: &[BitWord]) -> String {
    pos.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

/// A map from positions (the moves played so far) to the next move.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Strategy {
    /// The same move at every position with at most `depth` moves.
    Constant { depth: usize, mv: BitWord },
    /// Explicit moves keyed by [`position_key`].
    Table { depth: usize, table: BTreeMap<String, BitWord> },
    /// A move determined by the number of moves played so far.
    ByLength { moves: BTreeMap<usize, BitWord> },
    /// The `k`-th listed move in the `k`-th round, whatever the history.
    Sequence { moves: Vec<BitWord> },
    /// `inner(prefix ⌢ position)`.
    Shifted { prefix: Vec<BitWord>, inner: Box<Strategy> },
    /// The flip conjugate produced by [`transform_strategy`].
    Transformed { inner: Box<Strategy> },
    /// Pseudorandom moves of length `1..=max_move`, a pure function of seed and position.
    Random { seed: u64, max_move: usize, depth: usize },
}

/// A position at which a strategy has no move.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Undefined(Vec<BitWord>);

type Lookup<T> = std::result::Result<T, Undefined>;

impl From<Undefined> for Error {
    fn from(u: Undefined) -> Error {
        Error::InvalidArgument(format!("strategy undefined at position [{}]", position_key(&u.0)))
    }
}

impl Strategy {
    pub fn constant(mv: BitWord, depth: usize) -> Strategy {
        Strategy::Constant { depth, mv }
    }

    /// Largest number of moves in a position the strategy answers.
    pub fn depth(&self) -> usize {
        match self {
            Strategy::Constant { depth, .. } | Strategy::Table { depth, .. } | Strategy::Random { depth, .. } => *depth,
            Strategy::ByLength { moves } => moves.keys().next_back().map_or(0, |&k| k),
            Strategy::Sequence { moves } => 2 * moves.len(),
            Strategy::Shifted { prefix, inner } => inner.depth().saturating_sub(prefix.len()),
            Strategy::Transformed { inner } => inner.depth().saturating_sub(1),
        }
    }

    /// The move at `pos`.
    pub fn respond(&self, pos: &[BitWord]) -> Result<BitWord> {
        Ok(self.lookup(pos)?)
    }

    fn lookup(&self, pos: &[BitWord]) -> Lookup<BitWord> {
        let undefined = || Undefined(pos.to_vec());
        let mv = match self {
            Strategy::Constant { depth, mv } if pos.len() <= *depth => mv.clone(),
            Strategy::Constant { .. } => return Err(undefined()),
            Strategy::Table { depth, table } if pos.len() <= *depth => {
                table.get(&position_key(pos)).cloned().ok_or_else(undefined)?
            }
            Strategy::Table { .. } => return Err(undefined()),
            Strategy::ByLength { moves } => moves.get(&pos.len()).cloned().ok_or_else(undefined)?,
            Strategy::Sequence { moves } => moves.get(pos.len() / 2).cloned().ok_or_else(undefined)?,
            Strategy::Shifted { prefix, inner } => {
                let full: Vec<BitWord> = prefix.iter().chain(pos).cloned().collect();
                inner.lookup(&full)?
            }
            Strategy::Transformed { inner } => transformed_move(inner, pos)?,
            Strategy::Random { seed, max_move, depth } if pos.len() <= *depth => {
                let mut h = DefaultHasher::new();
                position_key(pos).hash(&mut h);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h.finish());
                let len = rng.gen_range(1..=(*max_move).max(1));
                BitWord((0..len).map(|_| rng.gen()).collect())
            }
            Strategy::Random { .. } => return Err(undefined()),
        };
        if mv.is_empty() {
            return Err(undefined());
        }
        Ok(mv)
    }
}

/// The strategy `σ` with `σ(⟨⟩) = ⟨1⟩ ⌢ f(ρ(⟨0⟩))` and
/// `σ(⟨s₀, …, sₘ⟩) = f(ρ(⟨f(⟨j⟩), f(s′₀), f(s₁), …, f(sₘ)⟩))` where `s₀ = ⟨j⟩ ⌢ s′₀`.
///
/// An empty `s′₀` contributes no move. The result answers one move less deep than `rho`.
pub fn transform_strategy(rho: &Strategy) -> Strategy {
    Strategy::Transformed { inner: Box::new(rho.clone()) }
}

fn transformed_move(rho: &Strategy, pos: &[BitWord]) -> Lookup<BitWord> {
    let Some((s0, rest)) = pos.split_first() else {
        let answer = rho.lookup(&[BitWord(vec![false])])?;
        return Ok(BitWord::concat([&BitWord(vec![true]), &flip(&answer)]));
    };
    let Some((&j, s0_rest)) = s0.0.split_first() else {
        return Err(Undefined(pos.to_vec()));
    };
    let mut query = vec![BitWord(vec![!j])];
    if !s0_rest.is_empty() {
        query.push(flip(&BitWord(s0_rest.to_vec())));
    }
    query.extend(rest.iter().map(flip));
    Ok(flip(&rho.lookup(&query)?))
}

fn play_moves(p1: &Strategy, p2: &Strategy, rounds: usize) -> Lookup<Vec<BitWord>> {
    let mut moves = Vec::with_capacity(2 * rounds);
    for _ in 0..rounds {
        moves.push(p1.lookup(&moves)?);
        moves.push(p2.lookup(&moves)?);
    }
    Ok(moves)
}

/// `prefix ⌢ s₀ ⌢ s₁ ⌢ …` over `rounds` rounds, Player 1 moving first.
pub fn play(prefix: &BitWord, p1: &Strategy, p2: &Strategy, rounds: usize) -> Result<BitWord> {
    let moves = play_moves(p1, p2, rounds)?;
    Ok(BitWord::concat(std::iter::once(prefix).chain(&moves)))
}

/// The plays compared by [`verify_flip_identity`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FlipReport {
    pub holds: bool,
    /// `s′ ⌢ y`: the play of `rho` against the adversary.
    pub rho_play: BitWord,
    /// `y`: the adversary against the shifted strategy `σ(h) = rho(⟨s′⟩ ⌢ h)`.
    pub shifted_play: BitWord,
    /// The transform of `σ` played against `σ`.
    pub lemma_play: BitWord,
    /// Player 1 opens `⟨0⟩` and then mirrors the flipped moves of `σ` from the lemma play.
    pub conjugate_play: BitWord,
    /// `s′ ⌢ f(y)` against `f(s′ ⌢ y)`.
    pub prefix_e0: Option<E0Result>,
}

/// Checks the flip conjugation identities for `rho` and a sequence of adversary moves.
///
/// With `s′ = rho(⟨⟩)` and `σ(h) = rho(⟨s′⟩ ⌢ h)`, the adversary's play `y`
/// against `σ` must satisfy `s′ ⌢ y` = the play of `rho` against the
/// adversary. With `τ` the transform of `σ` and `x` the play of `τ` against
/// `σ`, the play in which Player 1 opens `⟨0⟩` and then plays `f(s₂ₖ₋₁)`
/// against `σ` must equal `f(x)`. Finally `s′ ⌢ f(y)` and `f(s′ ⌢ y)` differ
/// only inside the prefix, so they are eventually equal.
pub fn verify_flip_identity(rho: &Strategy, adversary: &[BitWord], rounds: usize) -> Result<FlipReport> {
    Ok(flip_identity(rho, adversary, rounds)?)
}

fn flip_identity(rho: &Strategy, adversary: &[BitWord], rounds: usize) -> Lookup<FlipReport> {
    if adversary.len() < rounds {
        return Err(Undefined(adversary.to_vec()));
    }
    let empty = BitWord::default();
    if rounds == 0 {
        return Ok(FlipReport {
            holds: true,
            rho_play: empty.clone(),
            shifted_play: empty.clone(),
            lemma_play: empty.clone(),
            conjugate_play: empty,
            prefix_e0: None,
        });
    }
    let opening = rho.lookup(&[])?;
    let sigma = Strategy::Shifted { prefix: vec![opening.clone()], inner: Box::new(rho.clone()) };
    let adv = Strategy::Sequence { moves: adversary[..rounds].to_vec() };

    let y = BitWord::concat(&play_moves(&adv, &sigma, rounds)?);
    // In the game of `rho` the adversary answers second, after the opening.
    let mut rho_moves = vec![opening.clone()];
    for m in &adversary[..rounds] {
        rho_moves.push(m.clone());
        rho_moves.push(rho.lookup(&rho_moves)?);
    }
    let rho_play = BitWord::concat(&rho_moves);
    let shifted_ok = rho_play == BitWord::concat([&opening, &y]);

    let tau = transform_strategy(&sigma);
    let lemma = play_moves(&tau, &sigma, rounds)?;
    let mut conj = vec![BitWord(vec![false])];
    conj.push(sigma.lookup(&conj)?);
    for k in 1..rounds {
        conj.push(flip(&lemma[2 * k - 1]));
        conj.push(sigma.lookup(&conj)?);
    }
    conj.push(flip(&lemma[2 * rounds - 1]));
    let lemma_play = BitWord::concat(&lemma);
    let conjugate_play = BitWord::concat(&conj);
    let lemma_ok = conjugate_play == flip(&lemma_play);

    let e0 = e0_equiv(&BitWord::concat([&opening, &flip(&y)]), &flip(&BitWord::concat([&opening, &y])))
        .expect("equal lengths");
    Ok(FlipReport {
        holds: shifted_ok && lemma_ok && e0.equivalent,
        rho_play,
        shifted_play: y,
        lemma_play,
        conjugate_play,
        prefix_e0: Some(e0),
    })
}

/// Summary of an exhaustive or sampled verification run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerifySummary {
    pub instances: usize,
    pub failures: usize,
    /// Position keys and moves of the first failing strategy, if any.
    pub first_failure: Option<BTreeMap<String, BitWord>>,
}

/// Which strategies an exhaustive run enumerates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategySpace {
    /// Every table from positions to moves.
    Tables,
    /// Every strategy whose move depends only on the number of moves played.
    ByLength,
}

/// Verifies the identity for every strategy in `space` and every adversary
/// with moves of length at most `max_move`, for each round count up to `rounds`.
///
/// Strategies are enumerated lazily: only their moves at positions the
/// verification actually visits are branched on, which covers every full table.
pub fn verify_exhaustive(space: StrategySpace, rounds: usize, max_move: usize) -> VerifySummary {
    let words = BitWord::all_nonempty(max_move);
    let mut summary = VerifySummary { instances: 0, failures: 0, first_failure: None };
    for r in 0..=rounds {
        for adversary in (0..r).map(|_| words.iter().cloned()).multi_cartesian_product() {
            let mut run = Exhaustive { space, adversary: &adversary, rounds: r, words: &words, summary: &mut summary };
            run.explore(&mut BTreeMap::new());
        }
        if r == 0 {
            // `multi_cartesian_product` of nothing yields nothing; the empty adversary still counts.
            let mut run = Exhaustive { space, adversary: &[], rounds: 0, words: &words, summary: &mut summary };
            run.explore(&mut BTreeMap::new());
        }
    }
    summary
}

struct Exhaustive<'a> {
    space: StrategySpace,
    adversary: &'a [BitWord],
    rounds: usize,
    words: &'a [BitWord],
    summary: &'a mut VerifySummary,
}

impl Exhaustive<'_> {
    fn strategy(&self, table: &BTreeMap<String, BitWord>) -> Strategy {
        match self.space {
            StrategySpace::Tables => Strategy::Table { depth: usize::MAX, table: table.clone() },
            StrategySpace::ByLength => Strategy::ByLength {
                moves: table.iter().map(|(k, v)| (k.parse().expect("length key"), v.clone())).collect(),
            },
        }
    }

    fn explore(&mut self, table: &mut BTreeMap<String, BitWord>) {
        match flip_identity(&self.strategy(table), self.adversary, self.rounds) {
            Ok(rep) => {
                self.summary.instances += 1;
                if !rep.holds {
                    self.summary.failures += 1;
                    self.summary.first_failure.get_or_insert_with(|| table.clone());
                }
            }
            Err(Undefined(pos)) => {
                let key = match self.space {
                    StrategySpace::Tables => position_key(&pos),
                    StrategySpace::ByLength => pos.len().to_string(),
                };
                for w in self.words {
                    table.insert(key.clone(), w.clone());
                    self.explore(table);
                }
                table.remove(&key);
            }
        }
    }
}

/// Verifies the identity on `count` pseudorandom strategies and adversaries.
pub fn verify_random(seed: u64, count: usize, rounds: usize, max_move: usize) -> VerifySummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = VerifySummary { instances: 0, failures: 0, first_failure: None };
    for _ in 0..count {
        let rho = Strategy::Random { seed: rng.gen(), max_move, depth: 2 * rounds + 1 };
        let adversary: Vec<BitWord> = (0..rounds)
            .map(|_| BitWord((0..rng.gen_range(1..=max_move.max(1))).map(|_| rng.gen()).collect()))
            .collect();
        summary.instances += 1;
        match flip_identity(&rho, &adversary, rounds) {
            Ok(rep) if rep.holds => {}
            _ => {
                summary.failures += 1;
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip(&w("101")), w("010"));
        assert_eq!(flip(&w("")), w(""));
        assert_eq!(flip(&w("0000")), w("1111"));
    }

    #[test]
    fn e0_examples() {
        assert!(e0_equiv(&w("0111"), &w("1111")).unwrap().equivalent);
        assert!(!e0_equiv(&w("0101"), &w("1010")).unwrap().equivalent);
        assert!(!e0_equiv(&w("0110"), &flip(&w("0110"))).unwrap().equivalent);
        assert!(e0_equiv(&w("01"), &w("011")).is_err());
        assert!(e0_equiv(&w("01"), &w("01")).unwrap().bounded);
    }

    #[test]
    fn transform_examples() {
        let mut table = BTreeMap::new();
        table.insert("0".to_string(), w("1"));
        let rho = Strategy::Table { depth: 3, table };
        assert_eq!(transform_strategy(&rho).respond(&[]).unwrap(), w("10"));
        let zero = Strategy::constant(w("0"), 4);
        let sigma = transform_strategy(&zero);
        assert_eq!(sigma.respond(&[w("11")]).unwrap(), w("1"));
        assert_eq!(sigma.depth(), 3);
        assert!(Strategy::Table { depth: 3, table: BTreeMap::new() }.respond(&[]).is_err());
    }

    #[test]
    fn play_examples() {
        let zero = Strategy::constant(w("0"), 8);
        let one = Strategy::constant(w("1"), 8);
        assert_eq!(play(&w(""), &zero, &zero, 2).unwrap(), w("0000"));
        assert_eq!(play(&w(""), &one, &zero, 2).unwrap(), w("1010"));
        assert_eq!(play(&w("11"), &one, &zero, 1).unwrap(), w("1110"));
    }

    #[test]
    fn flip_identity_examples() {
        let zero = Strategy::constant(w("0"), 5);
        assert!(verify_flip_identity(&zero, &[w("1"), w("1")], 2).unwrap().holds);
        assert!(verify_flip_identity(&zero, &[], 0).unwrap().holds);
        assert!(verify_flip_identity(&Strategy::constant(w("0"), 1), &[w("1"), w("1")], 2).is_err());
    }

    #[test]
    fn exhaustive_small_space() {
        let s = verify_exhaustive(StrategySpace::Tables, 1, 2);
        assert_eq!(s.failures, 0);
        assert!(s.instances > 100);
    }

    #[test]
    fn strategies_round_trip_through_json() {
        let s = Strategy::Shifted { prefix: vec![w("01")], inner: Box::new(Strategy::constant(w("1"), 3)) };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Strategy>(&j).unwrap(), s);
    }
}
