use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{CellComplex, CellularMap};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// Finite abstract simplicial complex. Simplices are sorted vertex lists,
/// oriented by increasing vertex label; the face omitting position `i`
/// appears in the boundary with sign `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSimplicial", into = "RawSimplicial")]
pub struct SimplicialComplex {
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawSimplicial {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<RawSimplicial> for SimplicialComplex {
    type Error = Error;

    fn try_from(raw: RawSimplicial) -> Result<Self> {
        SimplicialComplex::new(raw.vertices, raw.facets)
    }
}

impl From<SimplicialComplex> for RawSimplicial {
    fn from(k: SimplicialComplex) -> Self {
        RawSimplicial {
            vertices: k.simplices.first().map_or(0, |v| v.len()),
            facets: k.facets,
        }
    }
}

fn faces_of(s: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    if s.is_empty() || !out.insert(s.to_vec()) {
        return;
    }
    for i in 0..s.len() {
        let mut f = s.to_vec();
        f.remove(i);
        faces_of(&f, out);
    }
}

impl SimplicialComplex {
    /// Complex on vertices `0..vertices` (all present as 0-simplices)
    /// spanned by `facets`.
    pub fn new(vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        for f in &facets {
            if let Some(&v) = f.iter().find(|&&v| v >= vertices) {
                return Err(Error::InvalidSimplicialComplex(format!(
                    "vertex {v} out of range 0..{vertices}"
                )));
            }
        }
        let mut all: Vec<Vec<usize>> = facets;
        all.extend((0..vertices).map(|v| vec![v]));
        Self::from_simplices(all)
    }

    /// Downward closure of the given simplices; only vertices that occur are present.
    pub fn from_simplices(simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut closed = BTreeSet::new();
        for s in simplices {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() {
                return Err(Error::InvalidSimplicialComplex(format!(
                    "simplex {s:?} repeats a vertex"
                )));
            }
            if sorted.is_empty() {
                return Err(Error::InvalidSimplicialComplex("empty simplex".into()));
            }
            faces_of(&sorted, &mut closed);
        }
        let top = closed.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top.max(1)];
        for s in &closed {
            by_dim[s.len() - 1].push(s.clone());
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = by_dim
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let facets: Vec<Vec<usize>> = closed
            .iter()
            .filter(|s| {
                by_dim
                    .get(s.len())
                    .is_none_or(|up| !up.iter().any(|t| is_face(s, t)))
            })
            .cloned()
            .collect();
        Ok(SimplicialComplex {
            facets,
            simplices: by_dim,
            index,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.simplices[0].is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices[0].iter().map(|s| s[0]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices[0].len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex_count(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.simplices(k as usize).len()
        }
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.simplices.len())
            .map(|k| {
                let c = self.simplices[k].len() as i64;
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// `∂_k` on ordered simplices.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        let rows = self.simplex_count(k as i64 - 1);
        let cols = self.simplex_count(k as i64);
        let mut m = IntMatrix::zeros(rows, cols);
        if k == 0 {
            return m;
        }
        for (c, s) in self.simplices(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = self.index[k - 1][&face];
                m.set(r, c, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    }

    /// Simplicial chains as a cell complex, based at the first vertex.
    pub fn to_cell_complex(&self) -> CellComplex {
        let cells: Vec<usize> = self.simplices.iter().map(|l| l.len()).collect();
        let boundaries = (1..cells.len()).map(|k| self.boundary(k)).collect();
        let base = (!self.is_empty()).then_some(0);
        CellComplex::new(cells, boundaries, base).expect("simplicial boundaries square to zero")
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.iter().flatten().all(|s| other.contains(s))
    }

    /// Simplices common to both complexes.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let common: Vec<Vec<usize>> = self
            .simplices
            .iter()
            .flatten()
            .filter(|s| other.contains(s))
            .cloned()
            .collect();
        Self::from_simplices(common).expect("faces of valid simplices")
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let all: Vec<Vec<usize>> = self.facets.iter().chain(&other.facets).cloned().collect();
        Self::from_simplices(all).expect("faces of valid simplices")
    }

    /// `C_k(self) -> C_k(other)` for a subcomplex.
    pub fn inclusion_matrix(&self, other: &SimplicialComplex, k: usize) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(other.simplex_count(k as i64), self.simplex_count(k as i64));
        for (c, s) in self.simplices(k).iter().enumerate() {
            let r = other.index_of(s).ok_or_else(|| {
                Error::InvalidCover(format!("simplex {s:?} is missing from the ambient complex"))
            })?;
            m.set(r, c, BigInt::from(1));
        }
        Ok(m)
    }

    /// The inclusion of a subcomplex as a chain map.
    pub fn inclusion_map(&self, other: &SimplicialComplex) -> Result<CellularMap> {
        let top = self.dim().max(other.dim());
        let comps = (0..=top)
            .map(|k| self.inclusion_matrix(other, k))
            .collect::<Result<_>>()?;
        CellularMap::new(self.to_cell_complex(), other.to_cell_complex(), comps)
    }

    /// Relabel vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|s| s.iter().map(|&v| f(v)).collect())
            .collect();
        Self::from_simplices(facets).expect("relabeling is injective")
    }

    /// Wedge at the first vertex of each summand.
    pub fn wedge(parts: &[SimplicialComplex]) -> SimplicialComplex {
        let mut facets = Vec::new();
        let mut next = 1;
        for p in parts {
            let verts = p.vertices();
            let base = verts.first().copied().unwrap_or(0);
            let mut map = HashMap::new();
            for &v in &verts {
                if v == base {
                    map.insert(v, 0);
                } else {
                    map.insert(v, next);
                    next += 1;
                }
            }
            facets.extend(
                p.facets
                    .iter()
                    .map(|s| s.iter().map(|v| map[v]).collect::<Vec<_>>()),
            );
        }
        if facets.is_empty() {
            facets.push(vec![0]);
        }
        Self::from_simplices(facets).expect("relabeled facets are valid")
    }

    /// Unreduced suspension: the join with two new vertices.
    pub fn suspension(&self) -> SimplicialComplex {
        let n = self.vertices().last().map_or(0, |v| v + 1);
        let mut facets = Vec::new();
        for s in &self.facets {
            for apex in [n, n + 1] {
                let mut t = s.clone();
                t.push(apex);
                facets.push(t);
            }
        }
        Self::from_simplices(facets).expect("cone facets are valid")
    }
}

fn is_face(s: &[usize], t: &[usize]) -> bool {
    s.iter().all(|v| t.binary_search(v).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary_is_a_circle() {
        let k = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        let c = k.to_cell_complex();
        assert_eq!(c.homology(1).to_string(), "Z");
        assert_eq!(k.boundary(1).to_string(), "[-1 -1 0; 1 0 -1; 0 1 1]");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SimplicialComplex::new(2, vec![vec![0, 0]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0, 2]]).is_err());
        assert!(SimplicialComplex::from_json(r#"{"vertices":3,"facets":[[0,1,5]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"vertices":4,"facets":[[0,1,2],[2,3]]}"#);
        assert_eq!(SimplicialComplex::from_json(&s).unwrap(), k);
    }

    #[test]
    fn facets_are_maximal() {
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1, 2], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn suspension_of_circle_is_sphere() {
        let k = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let s = k.suspension().to_cell_complex();
        assert_eq!(s.homology(2).to_string(), "Z");
        assert_eq!(s.homology(1).to_string(), "0");
    }
}
