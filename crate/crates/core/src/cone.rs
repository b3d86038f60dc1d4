//! Simplicial cones and their explicit fillings.

use crate::complex::{Chain, SemisimplicialSet};
use crate::error::{Error, Result};

/// `CX`: the base `X` plus an apex `v` and a join `(v, σ)` for every simplex `σ`.
///
/// Level `p` lists the base simplices first, then the joins over level `p - 1`
/// (the apex itself is the join over the empty simplex, last in level 0).
#[derive(Debug, Clone)]
pub struct Cone {
    base_counts: Vec<usize>,
    complex: SemisimplicialSet,
}

pub fn cone(x: &SemisimplicialSet, apex_label: &str) -> Cone {
    let d = x.max_dim();
    let base = |p: usize| if p <= d { x.count(p) } else { 0 };
    let counts: Vec<usize> = (0..=d + 1).map(|p| base(p) + if p == 0 { 1 } else { x.count(p - 1) }).collect();
    let mut faces = vec![Vec::new()];
    let mut labels = vec![x.labels(0).to_vec()];
    labels[0].push(apex_label.to_string());
    for p in 1..=d + 1 {
        let mut rows = Vec::with_capacity(counts[p]);
        let mut names = Vec::with_capacity(counts[p]);
        for s in 0..base(p) {
            rows.push(x.faces_of(p, s).to_vec());
            names.push(x.labels(p)[s].clone());
        }
        for s in 0..x.count(p - 1) {
            let mut row = vec![s];
            for i in 1..=p {
                let sub = if p == 1 { 0 } else { x.face(p - 1, s, i - 1) };
                row.push(base(p - 1) + sub);
            }
            rows.push(row);
            names.push(format!("{apex_label}*{}", x.labels(p - 1)[s]));
        }
        faces.push(rows);
        labels.push(names);
    }
    let complex = SemisimplicialSet::new(counts, faces, Some(labels)).expect("cones over valid complexes are valid");
    Cone { base_counts: (0..=d + 1).map(base).collect(), complex }
}

impl Cone {
    pub fn complex(&self) -> &SemisimplicialSet {
        &self.complex
    }

    pub fn apex(&self) -> usize {
        self.base_counts[0]
    }

    pub fn base_dim(&self) -> usize {
        self.complex.max_dim() - 1
    }

    pub fn is_base(&self, p: usize, s: usize) -> bool {
        s < self.base_counts[p]
    }

    /// Id in level `p + 1` of the join of the apex with base simplex `s` of level `p`.
    pub fn join(&self, p: usize, s: usize) -> usize {
        self.base_counts[p + 1] + s
    }

    /// Pushes a chain of the base complex into the cone (ids are unchanged).
    pub fn include(&self, z: &Chain) -> Chain {
        debug_assert!(z.support().all(|s| self.is_base(z.level, s)));
        z.clone()
    }

    /// Fills a reduced cycle by joining its base part with the apex.
    ///
    /// With `z = w + v*u` (`w` on the base), `c = v*w` satisfies `∂c = z`,
    /// so `‖c‖ = ‖w‖ ≤ ‖z‖`, with equality when `z` lies on the base.
    pub fn fill(&self, z: &Chain) -> Result<Chain> {
        if z.level > self.base_dim() {
            return Err(Error::TruncationTooShallow { needed: z.level + 1, max_dim: self.complex.max_dim() });
        }
        self.complex.require_cycle(z)?;
        let p = z.level;
        let c = Chain::from_terms(p + 1, z.terms().filter(|&(s, _)| self.is_base(p, s)).map(|(s, q)| (self.join(p, s), q.clone())));
        debug_assert!(self.boundary_matches(&c, z));
        Ok(c)
    }

    fn boundary_matches(&self, c: &Chain, z: &Chain) -> bool {
        self.complex.boundary(c).map(|b| &b == z).unwrap_or(false)
    }
}

pub fn cone_fill(cx: &Cone, z: &Chain) -> Result<Chain> {
    cx.fill(z)
}
