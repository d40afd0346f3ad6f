//! Links of cone complexes and their reduced rational cohomology.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::cones::{pulling_triangulation, triangulate, Fan};
use crate::error::{Error, Result};
use crate::exactlin::{integer_rank, IntegerVector};
use crate::katofan::AbstractConeComplex;

/// A finite abstract simplicial complex, stored with all faces (including
/// the empty simplex) as sorted vertex-index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// The complex generated by `maximal`. Every vertex must occur in some
    /// simplex.
    pub fn new(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let names: BTreeSet<&String> = vertices.iter().collect();
        if names.len() != vertices.len() {
            return Err(Error::InvalidComplex("duplicate vertex labels".into()));
        }
        let mut simplices = BTreeSet::new();
        simplices.insert(Vec::new());
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "simplex {s:?} repeats a vertex"
                )));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidComplex(format!("unknown vertex index {v}")));
            }
            if simplices.contains(&s) {
                continue;
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: Vec<usize> = (0..s.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                simplices.insert(face);
            }
        }
        let used: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
        if used.len() != vertices.len() {
            let missing = (0..vertices.len()).find(|v| !used.contains(v)).unwrap();
            return Err(Error::InvalidComplex(format!(
                "vertex {} lies in no simplex",
                vertices[missing]
            )));
        }
        Ok(SimplicialComplex {
            vertices,
            simplices,
        })
    }

    /// The complex `{∅}`.
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            vertices: Vec::new(),
            simplices: [Vec::new()].into_iter().collect(),
        }
    }

    /// Builds a complex from maximal simplices given by vertex labels.
    pub fn from_labels(
        vertices: Vec<String>,
        maximal: &[Vec<String>],
    ) -> Result<SimplicialComplex> {
        let index: BTreeMap<&String, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut idx = Vec::with_capacity(maximal.len());
        for s in maximal {
            let mut t = Vec::with_capacity(s.len());
            for v in s {
                t.push(
                    *index
                        .get(v)
                        .ok_or_else(|| Error::InvalidComplex(format!("unknown vertex {v}")))?,
                );
            }
            idx.push(t);
        }
        SimplicialComplex::new(vertices, &idx)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// All simplices, the empty one first.
    pub fn simplices(&self) -> &BTreeSet<Vec<usize>> {
        &self.simplices
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))
            })
            .filter(|s| !s.is_empty() || self.simplices.len() == 1)
            .cloned()
            .collect()
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.simplices
            .iter()
            .map(|s| s.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// `f[k + 1]` is the number of `k`-simplices, starting at `k = -1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 2) as usize];
        for s in &self.simplices {
            f[s.len()] += 1;
        }
        f
    }

    /// `Σ_{k ≥ -1} (-1)^k f_k`, the reduced Euler characteristic.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 })
            .sum()
    }
}

/// The link of a fan: its triangulation's rays as vertices and the ray sets
/// of its positive-dimensional cones as simplices. Simplicial fans are used
/// as they are.
pub fn link(f: &Fan) -> SimplicialComplex {
    let f = triangulate(f);
    let vertices = f.rays().iter().map(ToString::to_string).collect();
    let maximal: Vec<Vec<usize>> = f.maximal_cones().iter().map(|c| c.rays.clone()).collect();
    SimplicialComplex::new(vertices, &maximal).expect("fans give simplicial complexes")
}

/// The link of an abstract cone complex. Vertices are the one-dimensional
/// cells; non-simplicial cells are pulled in the global vertex order, which
/// makes the triangulations agree on shared faces.
pub fn link_complex(c: &AbstractConeComplex) -> SimplicialComplex {
    let rays: Vec<usize> = (0..c.len()).filter(|&x| c.cell(x).dim() == 1).collect();
    let vertex: BTreeMap<usize, usize> = rays.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut maximal = Vec::new();
    for y in 0..c.len() {
        if c.cell(y).dim() == 0 {
            continue;
        }
        let cell = c.cell(y);
        let mut of_ray: BTreeMap<IntegerVector, usize> = BTreeMap::new();
        for (x, idx) in c.faces_of(y) {
            if let Some(&v) = vertex.get(&x) {
                of_ray.insert(cell.rays()[idx[0]].clone(), v);
            }
        }
        let key = |r: &IntegerVector| of_ray[r];
        for s in pulling_triangulation(cell, &key) {
            maximal.push(
                s.iter()
                    .map(|&i| of_ray[&cell.rays()[i]])
                    .collect::<Vec<_>>(),
            );
        }
    }
    let vertices = rays.iter().map(|&x| c.names()[x].clone()).collect();
    SimplicialComplex::new(vertices, &maximal).expect("cone complexes give simplicial complexes")
}

/// Reduced Betti numbers `b̃^{-1}, b̃^0, b̃^1, …` over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub reduced_betti: Vec<usize>,
}

impl BettiTable {
    /// `b̃^i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.reduced_betti.get(k).copied())
            .unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.reduced_betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { -(b as i64) } else { b as i64 })
            .sum()
    }
}

/// Ranks of the augmented coboundary maps give the reduced cohomology.
pub fn reduced_cohomology(s: &SimplicialComplex) -> BettiTable {
    let d = s.dim();
    let by_size: Vec<Vec<&Vec<usize>>> = (0..=(d + 1) as usize)
        .map(|k| s.simplices.iter().filter(|t| t.len() == k).collect())
        .collect();
    // rank of δ: C^{k} → C^{k+1}, k = -1..d-1, indexed by k + 1.
    let mut ranks = vec![0usize; by_size.len()];
    for k in 0..by_size.len().saturating_sub(1) {
        let lower = &by_size[k];
        let index: BTreeMap<&Vec<usize>, usize> =
            lower.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let rows: Vec<IntegerVector> = by_size[k + 1]
            .iter()
            .map(|t| {
                let mut row = vec![BigInt::from(0); lower.len()];
                for j in 0..t.len() {
                    let mut face = (*t).clone();
                    face.remove(j);
                    row[index[&face]] = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
                }
                IntegerVector::new(row)
            })
            .collect();
        ranks[k] = integer_rank(&rows, lower.len());
    }
    let reduced_betti = (0..by_size.len())
        .map(|k| {
            let before = if k == 0 { 0 } else { ranks[k - 1] };
            by_size[k].len() - ranks[k] - before
        })
        .collect();
    BettiTable { reduced_betti }
}

/// Predicted dimensions of the weight-zero part of compactly supported
/// cohomology: `dim W_0 H_c^i = b̃^{i-1}` of the link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W0Report {
    /// `dims[i] = dim W_0 H_c^i`.
    pub dims: Vec<usize>,
}

impl W0Report {
    pub fn get(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }
}

pub fn w0_report(link_betti: &BettiTable) -> W0Report {
    W0Report {
        dims: link_betti.reduced_betti.clone(),
    }
}
