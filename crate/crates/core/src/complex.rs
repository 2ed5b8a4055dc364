//! Finite chain complexes of free abelian groups, thought of as cellular
//! chains of a space, and their (co)homology with arbitrary finitely
//! generated coefficients.
//!
//! Cochains with coefficients in `G` on `k` cells live in `G^k`, laid out
//! with coordinate `j * k + i` for generator `j` of `G` and cell `i` (see
//! [`FgAbGroup::power`]). Coboundaries are transposed boundaries acting
//! on each generator block.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroup::{direct_sum, ext_group, hom_group, FgAbGroup, GroupHom, Subquotient};
use crate::error::{Error, Result};
use crate::intmat::{rank_mod_p, IntMatrix};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct CellComplex {
    cells: Vec<usize>,
    /// `boundaries[i]` is the boundary from dimension `i + 1` to dimension `i`.
    boundaries: Vec<IntMatrix>,
    basepoint: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    cells: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoint: Option<usize>,
}

impl TryFrom<RawComplex> for CellComplex {
    type Error = Error;

    fn try_from(raw: RawComplex) -> Result<Self> {
        CellComplex::new(raw.cells, raw.boundaries, raw.basepoint)
    }
}

impl From<CellComplex> for RawComplex {
    fn from(c: CellComplex) -> Self {
        RawComplex {
            cells: c.cells,
            boundaries: c.boundaries,
            basepoint: c.basepoint,
        }
    }
}

/// Tensor an integer matrix with the coefficient group: one copy of `m`
/// per generator of `g`, in the cochain layout.
pub fn extend_coefficients(m: &IntMatrix, g: &FgAbGroup) -> IntMatrix {
    let blocks = vec![m.clone(); g.num_generators()];
    if blocks.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::block_diagonal(&blocks)
}

impl CellComplex {
    /// `boundaries[i]` maps dimension `i + 1` chains to dimension `i` chains,
    /// so it must be `cells[i] x cells[i + 1]`. Missing trailing boundaries
    /// are zero.
    pub fn new(
        cells: Vec<usize>,
        mut boundaries: Vec<IntMatrix>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        if boundaries.len() + 1 > cells.len().max(1) {
            return Err(Error::Shape(format!(
                "{} boundary matrices for {} cell dimensions",
                boundaries.len(),
                cells.len()
            )));
        }
        while boundaries.len() + 1 < cells.len() {
            let i = boundaries.len();
            boundaries.push(IntMatrix::zeros(cells[i], cells[i + 1]));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != cells[i] || b.cols() != cells[i + 1] {
                return Err(Error::Shape(format!(
                    "boundary from dimension {} is {}x{}, expected {}x{}",
                    i + 1,
                    b.rows(),
                    b.cols(),
                    cells[i],
                    cells[i + 1]
                )));
            }
        }
        for i in 1..boundaries.len() {
            let prod = &boundaries[i - 1] * &boundaries[i];
            if let Some((row, col)) = first_nonzero(&prod) {
                return Err(Error::NotAComplex {
                    dim: i,
                    next: i + 1,
                    row,
                    col,
                });
            }
        }
        if let Some(b) = basepoint {
            if b >= cells.first().copied().unwrap_or(0) {
                return Err(Error::Shape(format!("basepoint {b} is not a 0-cell")));
            }
        }
        Ok(CellComplex {
            cells,
            boundaries,
            basepoint,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| {
            let msg = e.to_string();
            Error::Json(msg)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn point() -> Self {
        CellComplex::new(vec![1], vec![], Some(0)).unwrap()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Number of cells in dimension `n` (zero out of range).
    pub fn cell_count(&self, n: i64) -> usize {
        if n < 0 {
            return 0;
        }
        self.cells.get(n as usize).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.cells.len() as i64 - 1
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn with_basepoint(mut self, b: usize) -> Result<Self> {
        if b >= self.cell_count(0) {
            return Err(Error::Shape(format!("basepoint {b} is not a 0-cell")));
        }
        self.basepoint = Some(b);
        Ok(self)
    }

    /// `∂_n : C_n -> C_{n-1}`, zero outside the stored range.
    pub fn boundary(&self, n: i64) -> IntMatrix {
        if n >= 1 && ((n - 1) as usize) < self.boundaries.len() {
            self.boundaries[(n - 1) as usize].clone()
        } else {
            IntMatrix::zeros(self.cell_count(n - 1), self.cell_count(n))
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The subcomplex of cells of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> CellComplex {
        let cells: Vec<usize> = self.cells.iter().take(k + 1).copied().collect();
        let boundaries = self.boundaries.iter().take(k).cloned().collect();
        CellComplex {
            cells,
            boundaries,
            basepoint: self.basepoint,
        }
    }

    fn boundary_hom(&self, n: i64) -> GroupHom {
        GroupHom::new(
            FgAbGroup::free(self.cell_count(n)),
            FgAbGroup::free(self.cell_count(n - 1)),
            self.boundary(n),
        )
        .expect("free source")
    }

    /// Integral homology `H_n`.
    pub fn homology(&self, n: i64) -> FgAbGroup {
        Subquotient::new(&self.boundary_hom(n + 1), &self.boundary_hom(n))
            .expect("boundary of boundary vanishes")
            .group
    }

    pub fn cochain_group(&self, n: i64, g: &FgAbGroup) -> FgAbGroup {
        g.power(self.cell_count(n))
    }

    /// `δ^n : C^n(X; G) -> C^{n+1}(X; G)`.
    pub fn coboundary(&self, n: i64, g: &FgAbGroup) -> GroupHom {
        let m = extend_coefficients(&self.boundary(n + 1).transpose(), g);
        GroupHom::new(
            self.cochain_group(n, g),
            self.cochain_group(n + 1, g),
            m,
        )
        .expect("coboundaries are well defined")
    }

    /// Coboundary of the augmented complex; degree `-1` is the coaugmentation
    /// `G -> C^0(X; G)`.
    fn reduced_coboundary(&self, n: i64, g: &FgAbGroup) -> GroupHom {
        if n == -1 {
            let ones = IntMatrix::new(
                self.cell_count(0),
                1,
                vec![BigInt::one(); self.cell_count(0)],
            )
            .expect("column of ones");
            GroupHom::new(
                g.clone(),
                self.cochain_group(0, g),
                extend_coefficients(&ones, g),
            )
            .expect("coaugmentation is well defined")
        } else if n < -1 {
            GroupHom::zero(&FgAbGroup::trivial(), &self.reduced_cochain_group(n + 1, g))
        } else {
            self.coboundary(n, g)
        }
    }

    fn reduced_cochain_group(&self, n: i64, g: &FgAbGroup) -> FgAbGroup {
        if n == -1 {
            g.clone()
        } else {
            self.cochain_group(n, g)
        }
    }

    /// `H^n(X; G)` computed on cochains, with representative cocycles.
    pub fn cohomology(&self, n: i64, g: &FgAbGroup) -> CohomologyResult {
        let sq = Subquotient::new(&self.coboundary(n - 1, g), &self.coboundary(n, g))
            .expect("coboundary of coboundary vanishes");
        CohomologyResult::from_subquotient(sq, n, g.clone(), self.cell_count(n))
    }

    /// `H̃^n(X; G)` via the augmented cochain complex.
    pub fn reduced_cohomology_result(&self, n: i64, g: &FgAbGroup) -> Result<CohomologyResult> {
        self.basepoint.ok_or(Error::MissingBasepoint)?;
        let sq = Subquotient::new(
            &self.reduced_coboundary(n - 1, g),
            &self.reduced_coboundary(n, g),
        )
        .expect("augmented complex is a complex");
        let cells = if n == -1 { 1 } else { self.cell_count(n) };
        Ok(CohomologyResult::from_subquotient(sq, n, g.clone(), cells))
    }

    pub fn reduced_cohomology(&self, n: i64, g: &FgAbGroup) -> Result<FgAbGroup> {
        Ok(self.reduced_cohomology_result(n, g)?.group)
    }

    /// `Hom(H_n, G) + Ext(H_{n-1}, G)`, assembled from integral homology.
    pub fn uct_cohomology(&self, n: i64, g: &FgAbGroup) -> FgAbGroup {
        let hom = hom_group(&self.homology(n), g);
        let ext = ext_group(&self.homology(n - 1), g);
        direct_sum(&[hom, ext]).group
    }

    /// `dim H^n(X; Z/p)` from ranks of boundary matrices mod `p`.
    pub fn cohomology_direct_mod_p(&self, n: i64, p: u64) -> Result<usize> {
        let c = self.cell_count(n);
        let out = rank_mod_p(&self.boundary(n + 1).transpose(), p)?;
        let inc = rank_mod_p(&self.boundary(n).transpose(), p)?;
        Ok(c - out - inc)
    }

    /// Reduced suspension: one 0-cell, and every cell of `X` other than the
    /// basepoint raised one dimension.
    pub fn suspension(&self) -> Result<CellComplex> {
        let b = self.basepoint.ok_or(Error::MissingBasepoint)?;
        let c0 = self.cell_count(0);
        let mut cells = vec![1, c0 - 1];
        cells.extend(self.cells.iter().skip(1));
        let keep: Vec<usize> = (0..c0).filter(|&v| v != b).collect();
        let mut boundaries = vec![IntMatrix::zeros(1, c0 - 1)];
        for n in 1..=self.dim() {
            let d = self.boundary(n);
            boundaries.push(if n == 1 { d.select_rows(&keep) } else { d });
        }
        CellComplex::new(cells, boundaries, Some(0))
    }

    /// Iterated suspension.
    pub fn suspension_n(&self, k: usize) -> Result<CellComplex> {
        let mut x = self.clone();
        for _ in 0..k {
            x = x.suspension()?;
        }
        Ok(x)
    }

    /// Wedge sum at the basepoints.
    pub fn wedge(parts: &[CellComplex]) -> Result<CellComplex> {
        Ok(Self::wedge_with_inclusions(parts)?.0)
    }

    /// Wedge sum together with the inclusion of each summand.
    pub fn wedge_with_inclusions(parts: &[CellComplex]) -> Result<(CellComplex, Vec<CellularMap>)> {
        let bases: Vec<usize> = parts
            .iter()
            .map(|p| p.basepoint.ok_or(Error::MissingBasepoint))
            .collect::<Result<_>>()?;
        let top = parts.iter().map(|p| p.dim()).max().unwrap_or(0).max(0);
        let mut cells = vec![1 + parts.iter().map(|p| p.cell_count(0) - 1).sum::<usize>()];
        for n in 1..=top {
            cells.push(parts.iter().map(|p| p.cell_count(n)).sum());
        }

        // Vertex map for each part.
        let mut vmaps = Vec::new();
        let mut next = 1;
        for (p, &b) in parts.iter().zip(&bases) {
            let vm: Vec<usize> = (0..p.cell_count(0))
                .map(|v| {
                    if v == b {
                        0
                    } else {
                        next += 1;
                        next - 1
                    }
                })
                .collect();
            vmaps.push(vm);
        }

        let mut offsets = vec![vec![0usize; parts.len()]; (top + 1) as usize];
        for n in 1..=top {
            let mut acc = 0;
            for (i, p) in parts.iter().enumerate() {
                offsets[n as usize][i] = acc;
                acc += p.cell_count(n);
            }
        }
        let chain_map = |i: usize, n: i64| -> IntMatrix {
            let p = &parts[i];
            let mut m = IntMatrix::zeros(cells[n as usize], p.cell_count(n));
            for c in 0..p.cell_count(n) {
                let r = if n == 0 {
                    vmaps[i][c]
                } else {
                    offsets[n as usize][i] + c
                };
                m.set(r, c, BigInt::one());
            }
            m
        };

        let mut boundaries = Vec::new();
        for n in 1..=top {
            let mut m = IntMatrix::zeros(cells[n as usize - 1], cells[n as usize]);
            for (i, p) in parts.iter().enumerate() {
                let inc_lo = chain_map(i, n - 1);
                let block = &inc_lo * &p.boundary(n);
                for c in 0..p.cell_count(n) {
                    let col = offsets[n as usize][i] + c;
                    for r in 0..block.rows() {
                        let v = block.get(r, c);
                        if !v.is_zero() {
                            m.set(r, col, v + m.get(r, col));
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let wedge = CellComplex::new(cells.clone(), boundaries, Some(0))?;
        let inclusions = (0..parts.len())
            .map(|i| {
                let comps = (0..=parts[i].dim().max(0)).map(|n| chain_map(i, n)).collect();
                CellularMap::new(parts[i].clone(), wedge.clone(), comps)
            })
            .collect::<Result<_>>()?;
        Ok((wedge, inclusions))
    }

    /// Tensor product of chain complexes, with `∂(a ⊗ b) = ∂a ⊗ b + (-1)^p a ⊗ ∂b`.
    /// Cells in each total degree are ordered by `p` and then
    /// lexicographically by `(a, b)`.
    pub fn tensor_complex(x: &CellComplex, y: &CellComplex) -> Result<CellComplex> {
        let top = (x.dim() + y.dim()).max(0);
        let offset = |n: i64, p: i64| -> usize {
            (0..p)
                .map(|pp| x.cell_count(pp) * y.cell_count(n - pp))
                .sum()
        };
        let cells: Vec<usize> = (0..=top).map(|n| offset(n, n + 1)).collect();
        let mut boundaries = Vec::new();
        for n in 1..=top {
            let mut m = IntMatrix::zeros(cells[n as usize - 1], cells[n as usize]);
            for p in 0..=n {
                let q = n - p;
                let (cp, cq) = (x.cell_count(p), y.cell_count(q));
                let base = offset(n, p);
                let dx = x.boundary(p);
                let dy = y.boundary(q);
                for a in 0..cp {
                    for b in 0..cq {
                        let col = base + a * cq + b;
                        if p >= 1 {
                            let lo = offset(n - 1, p - 1);
                            for a2 in 0..x.cell_count(p - 1) {
                                let v = dx.get(a2, a);
                                if !v.is_zero() {
                                    m.set(lo + a2 * cq + b, col, v.clone());
                                }
                            }
                        }
                        if q >= 1 {
                            let lo = offset(n - 1, p);
                            let cq2 = y.cell_count(q - 1);
                            for b2 in 0..cq2 {
                                let v = dy.get(b2, b);
                                if !v.is_zero() {
                                    let v = if p % 2 == 0 { v.clone() } else { -v };
                                    m.set(lo + a * cq2 + b2, col, v);
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let basepoint = match (x.basepoint, y.basepoint) {
            (Some(a), Some(b)) => Some(a * y.cell_count(0) + b),
            _ => None,
        };
        CellComplex::new(cells, boundaries, basepoint)
    }

    /// Identity chain map.
    pub fn identity_map(&self) -> CellularMap {
        let comps = (0..=self.dim().max(0))
            .map(|n| IntMatrix::identity(self.cell_count(n)))
            .collect();
        CellularMap::new(self.clone(), self.clone(), comps).expect("identity is a chain map")
    }
}

fn first_nonzero(m: &IntMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !m.get(r, c).is_zero())
}

impl fmt::Display for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "cells ({})", cells.join(", "))
    }
}

/// Chain map between cell complexes; `components[n]` is `C_n(source) -> C_n(target)`.
#[derive(Clone, Debug)]
pub struct CellularMap {
    source: CellComplex,
    target: CellComplex,
    components: Vec<IntMatrix>,
}

impl CellularMap {
    pub fn new(source: CellComplex, target: CellComplex, mut components: Vec<IntMatrix>) -> Result<Self> {
        let top = source.dim().max(target.dim()).max(0) as usize;
        while components.len() <= top {
            let n = components.len() as i64;
            components.push(IntMatrix::zeros(target.cell_count(n), source.cell_count(n)));
        }
        for (n, f) in components.iter().enumerate() {
            let n = n as i64;
            if f.rows() != target.cell_count(n) || f.cols() != source.cell_count(n) {
                return Err(Error::Shape(format!(
                    "component in dimension {n} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.cell_count(n),
                    source.cell_count(n)
                )));
            }
        }
        for n in 1..components.len() {
            let lhs = &target.boundary(n as i64) * &components[n];
            let rhs = &components[n - 1] * &source.boundary(n as i64);
            if let Some((row, col)) = first_nonzero(&(&lhs - &rhs)) {
                return Err(Error::NotAChainMap { dim: n, row, col });
            }
        }
        Ok(CellularMap {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &CellComplex {
        &self.source
    }

    pub fn target(&self) -> &CellComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> IntMatrix {
        if n >= 0 && (n as usize) < self.components.len() {
            self.components[n as usize].clone()
        } else {
            IntMatrix::zeros(self.target.cell_count(n), self.source.cell_count(n))
        }
    }

    pub fn compose(&self, first: &CellularMap) -> Result<CellularMap> {
        if first.target != self.source {
            return Err(Error::Shape("maps are not composable".into()));
        }
        let top = first.source.dim().max(self.target.dim()).max(0);
        let comps = (0..=top)
            .map(|n| &self.component(n) * &first.component(n))
            .collect();
        CellularMap::new(first.source.clone(), self.target.clone(), comps)
    }

    /// True if the basepoint of the source goes to the basepoint of the target.
    pub fn is_pointed(&self) -> bool {
        match (self.source.basepoint, self.target.basepoint) {
            (Some(a), Some(b)) => {
                let col = self.component(0).column(a);
                col.iter()
                    .enumerate()
                    .all(|(i, v)| if i == b { v.is_one() } else { v.is_zero() })
            }
            _ => false,
        }
    }

    /// The cochain map `C^n(target; G) -> C^n(source; G)`.
    pub fn cochain_map(&self, n: i64, g: &FgAbGroup) -> GroupHom {
        GroupHom::new(
            self.target.cochain_group(n, g),
            self.source.cochain_group(n, g),
            extend_coefficients(&self.component(n).transpose(), g),
        )
        .expect("cochain maps are well defined")
    }

    /// `f^*` between already computed cohomology of target and source.
    pub fn induced_with(
        &self,
        n: i64,
        g: &FgAbGroup,
        on_target: &CohomologyResult,
        on_source: &CohomologyResult,
    ) -> GroupHom {
        let f = self.cochain_map(n, g);
        let cols: Vec<Vec<BigInt>> = on_target
            .representatives
            .iter()
            .map(|rep| {
                on_source
                    .class_of(&f.apply_coords(rep))
                    .expect("chain maps send cocycles to cocycles")
            })
            .collect();
        GroupHom::new(
            on_target.group.clone(),
            on_source.group.clone(),
            IntMatrix::from_columns(on_source.group.num_generators(), &cols),
        )
        .expect("induced maps are well defined")
    }

    /// `f^* : H^n(target; G) -> H^n(source; G)`.
    pub fn induced_cohomology(&self, n: i64, g: &FgAbGroup) -> GroupHom {
        let t = self.target.cohomology(n, g);
        let s = self.source.cohomology(n, g);
        self.induced_with(n, g, &t, &s)
    }

    /// `f^*` on reduced cohomology. Requires a map preserving augmentation.
    pub fn induced_reduced_cohomology(&self, n: i64, g: &FgAbGroup) -> Result<GroupHom> {
        let t = self.target.reduced_cohomology_result(n, g)?;
        let s = self.source.reduced_cohomology_result(n, g)?;
        if n == -1 {
            return Ok(GroupHom::zero(&t.group, &s.group));
        }
        Ok(self.induced_with(n, g, &t, &s))
    }

    /// Reduced mapping cone of a pointed map, with the inclusion of the target.
    pub fn cofiber(&self) -> Result<(CellComplex, CellularMap)> {
        if !self.is_pointed() {
            return Err(if self.source.basepoint.is_none() || self.target.basepoint.is_none() {
                Error::MissingBasepoint
            } else {
                Error::NotPointed
            });
        }
        let x = &self.source;
        let y = &self.target;
        let b = x.basepoint.unwrap();
        let keep: Vec<usize> = (0..x.cell_count(0)).filter(|&v| v != b).collect();
        // cells of the reduced cone beyond the base, indexed by their original dimension
        let xr = |k: i64| -> usize {
            if k == 0 {
                keep.len()
            } else {
                x.cell_count(k)
            }
        };
        let top = y.dim().max(x.dim() + 1).max(0);
        let cells: Vec<usize> = (0..=top).map(|n| y.cell_count(n) + xr(n - 1)).collect();

        let f0 = self.component(0);
        let shifted = |k: i64| -> IntMatrix {
            // the part of the boundary of cone cells landing in Y
            if k == 0 {
                let base_col = f0.column(b);
                let mut m = f0.select_columns(&keep);
                for c in 0..m.cols() {
                    for r in 0..m.rows() {
                        let v = m.get(r, c) - &base_col[r];
                        m.set(r, c, v);
                    }
                }
                m
            } else {
                self.component(k)
            }
        };
        let reduced_dx = |k: i64| -> IntMatrix {
            // X'_k -> X'_{k-1}
            let d = x.boundary(k).select_columns(&if k == 0 {
                keep.clone()
            } else {
                (0..x.cell_count(k)).collect::<Vec<_>>()
            });
            if k == 1 {
                d.select_rows(&keep)
            } else {
                d
            }
        };

        let mut boundaries = Vec::new();
        for n in 1..=top {
            let dy = y.boundary(n);
            let f = shifted(n - 1);
            let top_row = dy.hstack(&f)?;
            let neg_dx = if n >= 2 {
                -&reduced_dx(n - 1)
            } else {
                IntMatrix::zeros(0, xr(n - 1))
            };
            let bottom = IntMatrix::zeros(xr(n - 2), y.cell_count(n)).hstack(&neg_dx)?;
            boundaries.push(top_row.vstack(&bottom)?);
        }
        let cone = CellComplex::new(cells, boundaries, y.basepoint)?;
        let comps = (0..=y.dim().max(0))
            .map(|n| {
                IntMatrix::identity(y.cell_count(n))
                    .vstack(&IntMatrix::zeros(xr(n - 1), y.cell_count(n)))
                    .expect("column counts agree")
            })
            .collect();
        let inclusion = CellularMap::new(y.clone(), cone.clone(), comps)?;
        Ok((cone, inclusion))
    }
}

/// `H^n(X; G)` with representative cocycles for its canonical generators.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub group: FgAbGroup,
    pub degree: i64,
    pub coefficients: FgAbGroup,
    /// Cochain coordinates (in `G^cells` layout) for each canonical generator.
    pub representatives: Vec<Vec<BigInt>>,
    cells: usize,
    sq: Subquotient,
}

impl CohomologyResult {
    fn from_subquotient(sq: Subquotient, degree: i64, coefficients: FgAbGroup, cells: usize) -> Self {
        CohomologyResult {
            group: sq.group.clone(),
            degree,
            coefficients,
            representatives: sq.representatives.clone(),
            cells,
            sq,
        }
    }

    pub fn cochain_group(&self) -> &FgAbGroup {
        &self.sq.ambient
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    /// Class of a cochain, or `None` if it is not a cocycle.
    pub fn class_of(&self, cochain: &[BigInt]) -> Option<Vec<BigInt>> {
        self.sq.class_of(cochain)
    }

    pub fn is_cocycle(&self, cochain: &[BigInt]) -> bool {
        self.class_of(cochain).is_some()
    }

    /// Replace the representative of generator `i` by another cocycle in the same class.
    pub fn set_representative(&mut self, i: usize, cochain: Vec<BigInt>) -> Result<()> {
        let class = self
            .class_of(&cochain)
            .ok_or_else(|| Error::CochainMismatch("not a cocycle".into()))?;
        if class != self.group.generator(i).into_coords() {
            return Err(Error::CochainMismatch(format!(
                "cochain is not in the class of generator {i}"
            )));
        }
        self.representatives[i] = cochain;
        Ok(())
    }
}
