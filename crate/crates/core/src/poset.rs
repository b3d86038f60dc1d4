//! Finite posets stored as their reflexive-transitive closure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// `{"elements": [...], "leq": [[a, b], ...]}`; the closure is taken on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `relations` (given as index pairs
    /// `(a, b)` meaning `a ⪯ b`) and rejects cycles.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!("{} and {} are mutually below each other", labels[i], labels[j])));
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// Poset on `0..n` with default labels.
    pub fn from_pairs(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        Self::from_relations((0..n).map(|i| i.to_string()).collect(), relations)
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let find = |l: &str| file.elements.iter().position(|e| e == l).ok_or_else(|| Error::InvalidPoset(format!("unknown element {l:?}")));
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = file.elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(Error::InvalidPoset(format!("duplicate element {dup:?}")));
        }
        let rel = file.leq.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
        Self::from_relations(file.elements.clone(), &rel)
    }

    pub fn to_file(&self) -> PosetFile {
        let mut leq = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.covers(a, b) {
                    leq.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        PosetFile { elements: self.labels.clone(), leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// Minimal elements of `subset`, in the order they appear there.
    pub fn minimal_in(&self, subset: &[usize]) -> Vec<usize> {
        subset.iter().copied().filter(|&x| !subset.iter().any(|&y| self.lt(y, x))).collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|x| self.leq(m, x)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|x| self.leq(x, m)))
    }

    /// A linear extension of the order (every element after everything below it).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (0..self.len()).filter(|&y| self.lt(y, x)).count());
        order
    }

    /// The induced subposet on `subset` (order of `subset` becomes the new indexing).
    pub fn induced(&self, subset: &[usize]) -> FinitePoset {
        let labels = subset.iter().map(|&x| self.labels[x].clone()).collect();
        let leq = subset.iter().map(|&a| subset.iter().map(|&b| self.leq[a][b]).collect()).collect();
        FinitePoset { labels, leq }
    }

    /// Checks reflexivity, antisymmetry, and transitivity of the stored relation.
    pub fn is_valid(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.leq[i][i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
            && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(self.leq[i][j] && self.leq[j][k]) || self.leq[i][k])))
    }

    /// True when `map` (indexed by this poset) is order-preserving into `target`.
    pub fn is_monotone_into(&self, target: &FinitePoset, map: &[usize]) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| !self.leq(a, b) || target.leq(map[a], map[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycle_rejection() {
        let p = FinitePoset::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(p.is_valid());
        assert!(p.covers(0, 1) && !p.covers(0, 2));
        assert!(FinitePoset::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn minimal_elements_and_extremes() {
        let v = FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(v.minimal_in(&[0, 1, 2]), vec![0, 1]);
        assert_eq!(v.minimum(), None);
        assert_eq!(v.maximum(), Some(2));
        let ext = v.linear_extension();
        assert_eq!(ext.last(), Some(&2));
    }

    #[test]
    fn file_round_trip_keeps_order() {
        let file =
            PosetFile { elements: vec!["a".into(), "b".into(), "c".into()], leq: vec![("a".into(), "c".into()), ("b".into(), "c".into())] };
        let p = FinitePoset::from_file(&file).unwrap();
        assert_eq!(FinitePoset::from_file(&p.to_file()).unwrap(), p);
        let bad = PosetFile { elements: vec!["a".into()], leq: vec![("a".into(), "z".into())] };
        assert!(FinitePoset::from_file(&bad).is_err());
    }
}
