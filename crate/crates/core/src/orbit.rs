//! Order embeddings of ℕ* = {1, 2, …} with co-finite image, subsequence
//! chains and their index tuples, and the face maps of the orbit complex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nerve::{check_bar_identities, IdentityReport, Monoid};

/// Strictly increasing `η : ℕ* → ℕ*` whose image misses a finite set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CofiniteEmbedding {
    missing: Vec<u64>,
}

impl CofiniteEmbedding {
    pub fn new(mut missing: Vec<u64>) -> Result<Self> {
        if missing.contains(&0) {
            return Err(Error::InvalidInput("embeddings live on ℕ* = {1, 2, ...}; 0 cannot be missing".into()));
        }
        missing.sort_unstable();
        missing.dedup();
        Ok(CofiniteEmbedding { missing })
    }

    pub fn identity() -> Self {
        CofiniteEmbedding { missing: Vec::new() }
    }

    /// `n ↦ n + k`.
    pub fn shift(k: u64) -> Self {
        CofiniteEmbedding { missing: (1..=k).collect() }
    }

    pub fn missing(&self) -> &[u64] {
        &self.missing
    }

    pub fn is_identity(&self) -> bool {
        self.missing.is_empty()
    }

    /// The `n`-th smallest element of ℕ* outside `missing`.
    pub fn eval(&self, n: u64) -> u64 {
        assert!(n >= 1, "embeddings are defined on ℕ*");
        let mut m = n;
        for &x in &self.missing {
            if x <= m {
                m += 1;
            } else {
                break;
            }
        }
        m
    }

    /// Position of `m` in the image, if it is hit.
    pub fn rank(&self, m: u64) -> Option<u64> {
        if m == 0 || self.missing.binary_search(&m).is_ok() {
            return None;
        }
        Some(m - self.missing.partition_point(|&x| x < m) as u64)
    }

    pub fn prefix(&self, len: usize) -> Vec<u64> {
        (1..=len as u64).map(|n| self.eval(n)).collect()
    }

    /// `self` first, then `then`: `n ↦ then(self(n))`.
    pub fn compose(&self, then: &CofiniteEmbedding) -> CofiniteEmbedding {
        let mut missing: Vec<u64> = then.missing.clone();
        missing.extend(self.missing.iter().map(|&x| then.eval(x)));
        missing.sort_unstable();
        missing.dedup();
        CofiniteEmbedding { missing }
    }
}

/// Embedding multiplication on co-finite embeddings, `η·ζ = η then ζ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EmbeddingMonoid;

impl Monoid for EmbeddingMonoid {
    type Elem = CofiniteEmbedding;
    fn mul(&self, a: &CofiniteEmbedding, b: &CofiniteEmbedding) -> CofiniteEmbedding {
        a.compose(b)
    }
}

/// `d_i d_j = d_{j-1} d_i` on bar tuples of co-finite embeddings.
pub fn monoid_simplicial_identities(tuples: &[Vec<CofiniteEmbedding>]) -> IdentityReport {
    check_bar_identities(&EmbeddingMonoid, tuples)
}

/// An embedding known either exactly or only on a prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    Cofinite(CofiniteEmbedding),
    /// `η(1), …, η(len)`.
    Window(Vec<u64>),
}

impl Embedding {
    pub fn eval(&self, n: u64) -> Option<u64> {
        match self {
            Embedding::Cofinite(e) => Some(e.eval(n)),
            Embedding::Window(v) => v.get(n as usize - 1).copied(),
        }
    }

    /// Number of known values; `None` when exact.
    pub fn known(&self) -> Option<usize> {
        match self {
            Embedding::Cofinite(_) => None,
            Embedding::Window(v) => Some(v.len()),
        }
    }

    pub fn compose(&self, then: &Embedding) -> Embedding {
        match (self, then) {
            (Embedding::Cofinite(a), Embedding::Cofinite(b)) => Embedding::Cofinite(a.compose(b)),
            _ => {
                let mut out = Vec::new();
                let mut n = 1;
                while let Some(v) = self.eval(n).and_then(|m| then.eval(m)) {
                    out.push(v);
                    n += 1;
                }
                Embedding::Window(out)
            }
        }
    }

    /// Compares two embeddings: exactly when both are co-finite, otherwise on
    /// their first `window` values. Returns (equal, exact).
    pub fn agrees(&self, other: &Embedding, window: usize) -> Result<(bool, bool)> {
        if let (Embedding::Cofinite(a), Embedding::Cofinite(b)) = (self, other) {
            return Ok((a == b, true));
        }
        let common = [self.known(), other.known()].into_iter().flatten().min().unwrap_or(window);
        if common < window {
            return Err(Error::WindowTooShort(format!("only {common} values known, {window} needed")));
        }
        let same = (1..=window as u64).all(|n| self.eval(n) == other.eval(n));
        Ok((same, false))
    }
}

/// Positions (in the ground sequence) selected by a subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Indices {
    Cofinite(CofiniteEmbedding),
    /// Strictly increasing prefix of the position stream.
    Stream(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedSequence {
    pub ground: String,
    pub indices: Indices,
}

impl IndexedSequence {
    pub fn cofinite(ground: impl Into<String>, e: CofiniteEmbedding) -> Self {
        IndexedSequence { ground: ground.into(), indices: Indices::Cofinite(e) }
    }

    pub fn stream(ground: impl Into<String>, positions: Vec<u64>) -> Result<Self> {
        if positions.first() == Some(&0) || positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("index stream must be strictly increasing in ℕ*".into()));
        }
        Ok(IndexedSequence { ground: ground.into(), indices: Indices::Stream(positions) })
    }

    /// Ground position of the `k`-th entry.
    fn position(&self, k: u64) -> Option<u64> {
        match &self.indices {
            Indices::Cofinite(e) => Some(e.eval(k)),
            Indices::Stream(v) => v.get(k as usize - 1).copied(),
        }
    }

    /// Rank of a ground position among the selected ones. `Err(())` means the
    /// materialized stream ends before `m`.
    fn rank(&self, m: u64) -> std::result::Result<Option<u64>, ()> {
        match &self.indices {
            Indices::Cofinite(e) => Ok(e.rank(m)),
            Indices::Stream(v) => {
                if v.last().map_or(true, |&l| l < m) {
                    return Err(());
                }
                Ok(v.binary_search(&m).ok().map(|k| k as u64 + 1))
            }
        }
    }
}

/// `x_0 ⪯ x_1 ⪯ … ⪯ x_p`, all over one ground sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsequenceChain {
    pub members: Vec<IndexedSequence>,
}

impl SubsequenceChain {
    pub fn new(members: Vec<IndexedSequence>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("a chain needs at least one sequence".into()));
        }
        if members.iter().any(|m| m.ground != members[0].ground) {
            return Err(Error::InvalidInput("chain members use different ground sequences".into()));
        }
        Ok(SubsequenceChain { members })
    }

    pub fn level(&self) -> usize {
        self.members.len() - 1
    }

    /// The chain with `x_i` removed.
    pub fn face(&self, i: usize) -> SubsequenceChain {
        let mut members = self.members.clone();
        members.remove(i);
        SubsequenceChain { members }
    }
}

fn index_of(small: &IndexedSequence, big: &IndexedSequence, window: usize) -> Result<Embedding> {
    if let (Indices::Cofinite(a), Indices::Cofinite(b)) = (&small.indices, &big.indices) {
        if let Some(m) = b.missing().iter().find(|m| a.missing().binary_search(m).is_err()) {
            return Err(Error::InvalidInput(format!("ground position {m} is selected by the smaller sequence only")));
        }
        let missing = a.missing().iter().filter_map(|&m| b.rank(m)).collect();
        return CofiniteEmbedding::new(missing).map(Embedding::Cofinite);
    }
    let mut values = Vec::new();
    let mut k = 1;
    while let Some(m) = small.position(k) {
        match big.rank(m) {
            Ok(Some(r)) => values.push(r),
            Ok(None) => return Err(Error::InvalidInput(format!("ground position {m} is selected by the smaller sequence only"))),
            Err(()) => break,
        }
        k += 1;
    }
    if values.len() < window {
        return Err(Error::WindowTooShort(format!("containment certified on {} entries, {window} needed", values.len())));
    }
    Ok(Embedding::Window(values))
}

/// `(η_1, …, η_p)` with `η_i` the position in `x_i` of each entry of `x_{i-1}`.
pub fn orbit_index(chain: &SubsequenceChain, window: usize) -> Result<Vec<Embedding>> {
    chain.members.windows(2).map(|w| index_of(&w[0], &w[1], window)).collect()
}

/// `d_i` on index tuples: drop the first or last entry, or merge `η_i η_{i+1}`.
pub fn tuple_face(tuple: &[Embedding], i: usize) -> Vec<Embedding> {
    let p = tuple.len();
    if i == 0 {
        tuple[1..].to_vec()
    } else if i == p {
        tuple[..p - 1].to_vec()
    } else {
        let mut out = tuple[..i - 1].to_vec();
        out.push(tuple[i - 1].compose(&tuple[i]));
        out.extend_from_slice(&tuple[i + 1..]);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCheck {
    pub face: usize,
    pub holds: bool,
    /// False when equality was only checked on the window.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub level: usize,
    pub faces: Vec<FaceCheck>,
}

impl FaceReport {
    pub fn holds(&self) -> bool {
        self.faces.iter().all(|f| f.holds)
    }
}

/// Checks `I_{p-1}(d_i x) = d_i(I_p x)` for every face.
pub fn verify_face_commutation(chain: &SubsequenceChain, window: usize) -> Result<FaceReport> {
    let p = chain.level();
    let top = orbit_index(chain, window)?;
    let mut faces = Vec::new();
    if p == 0 {
        return Ok(FaceReport { level: 0, faces });
    }
    for i in 0..=p {
        let direct = orbit_index(&chain.face(i), window)?;
        let via = tuple_face(&top, i);
        let mut holds = direct.len() == via.len();
        let mut exact = true;
        for (a, b) in direct.iter().zip(&via) {
            let (same, ex) = a.agrees(b, window)?;
            holds &= same;
            exact &= ex;
        }
        faces.push(FaceCheck { face: i, holds, exact });
    }
    Ok(FaceReport { level: p, faces })
}
