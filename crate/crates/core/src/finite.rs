//! Brute-force ground truth on explicit finite chains.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The chain `0 < 1 < … < size−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteOrder {
    pub size: usize,
}

impl FiniteOrder {
    pub fn new(size: usize) -> Self {
        FiniteOrder { size }
    }

    /// Concatenation `self + other`.
    pub fn sum(self, other: FiniteOrder) -> FiniteOrder {
        FiniteOrder::new(self.size + other.size)
    }

    /// Replacement product: `other` copies of `self`.
    pub fn product(self, other: FiniteOrder) -> FiniteOrder {
        FiniteOrder::new(self.size * other.size)
    }
}

/// Enumeration limits for the exhaustive searches.
#[derive(Debug, Clone, Copy)]
pub struct FiniteCaps {
    pub embed: usize,
    pub partition: usize,
}

impl Default for FiniteCaps {
    fn default() -> Self {
        FiniteCaps { embed: 12, partition: 16 }
    }
}

/// A boolean fact with an optional re-checkable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

/// Exhaustively computed profile of a finite chain.
///
/// The `strongly_indecomposable` witness, when present, is a 2-coloring of the
/// points in which neither color class embeds the whole chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteProfile {
    pub size: usize,
    pub decomposable: Witnessed<(usize, usize)>,
    pub transcendable: Witnessed<(usize, usize)>,
    pub strongly_indecomposable: Witnessed<Vec<u8>>,
}

/// All embeddings of `x` into `y`, each given as the increasing list of image points.
pub fn embeddings(x: FiniteOrder, y: FiniteOrder) -> impl Iterator<Item = Vec<usize>> {
    (0..y.size).combinations(x.size)
}

/// Number of order embeddings of `x` into `y`.
pub fn count_embeddings(x: FiniteOrder, y: FiniteOrder) -> u128 {
    if x.size > y.size {
        return 0;
    }
    let k = x.size.min(y.size - x.size) as u128;
    let n = y.size as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Checks that `map` is a strictly increasing map from `x` into `y`.
pub fn is_embedding(x: FiniteOrder, y: FiniteOrder, map: &[usize]) -> bool {
    map.len() == x.size && map.iter().all(|&v| v < y.size) && map.windows(2).all(|w| w[0] < w[1])
}

/// Whether some embedding of `x` into `y` exists, by enumeration.
pub fn embeds(x: FiniteOrder, y: FiniteOrder) -> bool {
    embeddings(x, y).next().is_some()
}

pub fn finite_profile(x: FiniteOrder) -> Result<FiniteProfile> {
    finite_profile_with(x, FiniteCaps::default())
}

pub fn finite_profile_with(x: FiniteOrder, caps: FiniteCaps) -> Result<FiniteProfile> {
    let n = x.size;
    if n > caps.embed || n > caps.partition || caps.partition > 20 {
        return Err(Error::Capacity(format!("finite profile of size {n} exceeds the cap")));
    }
    let fo = FiniteOrder::new;

    let split = (1..n).find(|&i| !embeds(x, fo(i)) && !embeds(x, fo(n - i)));
    let decomposable = Witnessed { holds: split.is_some(), witness: split.map(|i| (i, n - i)) };

    let pair = (0..n)
        .cartesian_product(0..n)
        .find(|&(p, q)| p * q >= n && embeds(x, fo(p).product(fo(q))));
    let transcendable = Witnessed { holds: pair.is_some(), witness: pair };

    let bad = (0u32..(1u32 << n)).find_map(|mask| {
        let colors: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
        let ones = colors.iter().filter(|&&c| c == 1).count();
        (!embeds(x, fo(ones)) && !embeds(x, fo(n - ones))).then_some(colors)
    });
    let strongly_indecomposable = Witnessed { holds: bad.is_none(), witness: bad };

    Ok(FiniteProfile { size: n, decomposable, transcendable, strongly_indecomposable })
}

/// Re-checks every witness in a profile by direct recomputation.
pub fn verify_profile(p: &FiniteProfile) -> bool {
    let n = p.size;
    let x = FiniteOrder::new(n);
    let dec_ok = match p.decomposable.witness {
        Some((a, b)) => a + b == n && a < n && b < n && p.decomposable.holds,
        None => !p.decomposable.holds,
    };
    let tr_ok = match p.transcendable.witness {
        Some((a, b)) => a < n && b < n && a * b >= n && p.transcendable.holds,
        None => !p.transcendable.holds,
    };
    let si_ok = match &p.strongly_indecomposable.witness {
        Some(c) => {
            let ones = c.iter().filter(|&&v| v == 1).count();
            c.len() == n
                && !embeds(x, FiniteOrder::new(ones))
                && !embeds(x, FiniteOrder::new(n - ones))
                && !p.strongly_indecomposable.holds
        }
        None => p.strongly_indecomposable.holds,
    };
    dec_ok && tr_ok && si_ok
}
