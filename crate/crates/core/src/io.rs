//! Text formats for complexes, chains and homotopies.
//!
//! Complex: `{"max_dim": D, "levels": [[labels]...], "faces": {"p,s": [d_0, ..., d_p]}}`.
//! Chain: `{"level": p, "coeffs": [[index, "num/den"], ...]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Chain, SemisimplicialSet};
use crate::error::{Error, Result};
use crate::homotopy::HomotopyTables;
use crate::rational::{format_rat, parse_rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub max_dim: usize,
    pub levels: Vec<Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(x: &SemisimplicialSet) -> Self {
        let mut faces = BTreeMap::new();
        for p in 1..=x.max_dim() {
            for s in 0..x.count(p) {
                faces.insert(format!("{p},{s}"), x.faces_of(p, s).to_vec());
            }
        }
        ComplexFile { max_dim: x.max_dim(), levels: (0..=x.max_dim()).map(|p| x.labels(p).to_vec()).collect(), faces }
    }

    pub fn to_complex(&self) -> Result<SemisimplicialSet> {
        if self.levels.len() != self.max_dim + 1 {
            return Err(Error::LevelMismatch(format!("max_dim {} but {} levels listed", self.max_dim, self.levels.len())));
        }
        let mut faces: Vec<Vec<Option<Vec<usize>>>> = self.levels.iter().map(|l| vec![None; l.len()]).collect();
        for (key, list) in &self.faces {
            let (p, s) = key
                .split_once(',')
                .and_then(|(p, s)| Some((p.trim().parse::<usize>().ok()?, s.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("face key {key:?} is not \"p,s\"")))?;
            let slot = faces
                .get_mut(p)
                .and_then(|l| l.get_mut(s))
                .ok_or_else(|| Error::LevelMismatch(format!("face key {key:?} names no simplex")))?;
            if p == 0 {
                return Err(Error::LevelMismatch("vertices have no faces".into()));
            }
            *slot = Some(list.clone());
        }
        let faces = faces
            .into_iter()
            .enumerate()
            .map(|(p, l)| {
                if p == 0 {
                    return Ok(Vec::new());
                }
                l.into_iter()
                    .enumerate()
                    .map(|(s, f)| f.ok_or_else(|| Error::LevelMismatch(format!("simplex {p},{s} has no face list"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SemisimplicialSet::new(self.levels.iter().map(Vec::len).collect(), faces, Some(self.levels.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    pub level: usize,
    pub coeffs: Vec<(usize, String)>,
}

impl ChainFile {
    pub fn from_chain(c: &Chain) -> Self {
        ChainFile { level: c.level, coeffs: c.terms().map(|(s, q)| (s, format_rat(q))).collect() }
    }

    pub fn to_chain(&self) -> Result<Chain> {
        let mut c = Chain::zero(self.level);
        for (s, q) in &self.coeffs {
            c.add_term(*s, &parse_rat(q)?);
        }
        Ok(c)
    }
}

/// One level of a homotopy as sparse columns `source simplex -> chain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyLevel {
    pub level: usize,
    pub columns: Vec<(usize, Vec<(usize, String)>)>,
    pub norm: String,
    pub claimed: String,
}

pub fn homotopy_levels(h: &HomotopyTables) -> Vec<HomotopyLevel> {
    h.columns
        .iter()
        .enumerate()
        .map(|(p, cols)| HomotopyLevel {
            level: p,
            columns: cols.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(s, c)| (s, ChainFile::from_chain(c).coeffs)).collect(),
            norm: format_rat(&h.norms[p]),
            claimed: format_rat(&h.claimed[p]),
        })
        .collect()
}

pub fn read_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::frac;

    #[test]
    fn complex_round_trip() {
        let x = fixtures::filled_triangle(2);
        let f = ComplexFile::from_complex(&x);
        let text = serde_json::to_string(&f).unwrap();
        let back: ComplexFile = read_json(&text).unwrap();
        let y = back.to_complex().unwrap();
        assert_eq!(y.counts(), x.counts());
        for p in 1..=2 {
            for s in 0..x.count(p) {
                assert_eq!(y.faces_of(p, s), x.faces_of(p, s));
            }
        }
    }

    #[test]
    fn missing_faces_are_rejected() {
        let f = ComplexFile { max_dim: 1, levels: vec![vec!["a".into(), "b".into()], vec!["ab".into()]], faces: BTreeMap::new() };
        assert!(matches!(f.to_complex(), Err(Error::LevelMismatch(_))));
        let bad: Result<ComplexFile> = read_json("{\"max_dim\": 0}");
        assert!(bad.is_err());
    }

    #[test]
    fn chain_round_trip() {
        let c = Chain::from_terms(1, [(0, frac(-3, 4)), (2, frac(1, 1))]);
        let f = ChainFile::from_chain(&c);
        assert_eq!(f.coeffs[0].1, "-3/4");
        assert_eq!(f.to_chain().unwrap(), c);
        assert!(ChainFile { level: 0, coeffs: vec![(0, "x".into())] }.to_chain().is_err());
    }
}
