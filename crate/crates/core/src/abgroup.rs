//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group `Z^r + Z/d_1 + ... + Z/d_t` with `d_1 | d_2 | ... | d_t` has
//! canonical generators ordered free part first, then torsion in chain
//! order. Homomorphisms are integer matrices over these generators.
//! Subgroups and quotients come back as abstract groups together with
//! their structure maps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{kernel_basis, smith, IntMatrix, SmithDecomposition};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    /// Validates the invariant-factor chain: each factor at least 2, each
    /// dividing the next.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if let Some(bad) = torsion.iter().find(|d| **d < two) {
            return Err(Error::IllDefinedHom(format!(
                "invariant factor {bad} is smaller than 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::IllDefinedHom(format!(
                "invariant factors {} and {} do not form a chain",
                w[0], w[1]
            )));
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = 1` the trivial group.
    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        let d: BigInt = d.into();
        Self::from_cyclics(&[d])
    }

    /// Canonical form of a direct sum of cyclic groups `Z/o_i` (`o_i = 0` for `Z`).
    pub fn from_cyclics(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let rel = IntMatrix::diagonal(n, n, orders);
        from_presentation(n, &rel)
            .expect("square diagonal presentation")
            .group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Order of the `i`-th canonical generator; zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// Orders of all canonical generators (zero marks a free generator).
    pub fn generator_orders(&self) -> Vec<BigInt> {
        (0..self.num_generators())
            .map(|i| self.generator_order(i))
            .collect()
    }

    /// Relation columns of the torsion generators, `ngens x t`.
    pub fn torsion_relations(&self) -> IntMatrix {
        let n = self.num_generators();
        let t = self.torsion.len();
        let mut m = IntMatrix::zeros(n, t);
        for (j, d) in self.torsion.iter().enumerate() {
            m.set(self.free_rank + j, j, d.clone());
        }
        m
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        debug_assert_eq!(coords.len(), self.num_generators());
        for (j, d) in self.torsion.iter().enumerate() {
            let x = &mut coords[self.free_rank + j];
            *x = x.mod_floor(d);
        }
    }

    pub fn reduced(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        self.reduce(&mut coords);
        coords
    }

    pub fn zero_coords(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_generators()]
    }

    pub fn is_zero_coords(&self, coords: &[BigInt]) -> bool {
        self.reduced(coords.to_vec()).iter().all(Zero::is_zero)
    }

    /// `G^k`. The canonical coordinate of copy `c`, generator `j` is
    /// `j * k + c`, which keeps the invariant factors in chain order.
    pub fn power(&self, k: usize) -> FgAbGroup {
        let torsion = self
            .torsion
            .iter()
            .flat_map(|d| std::iter::repeat_n(d.clone(), k))
            .collect();
        FgAbGroup {
            free_rank: self.free_rank * k,
            torsion,
        }
    }

    /// Orders of the cyclic summands in canonical order (zero for `Z`).
    pub fn summands(&self) -> Vec<BigInt> {
        self.generator_orders()
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        GroupElement::new(self.clone(), coords)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: self.zero_coords(),
        }
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = self.zero_coords();
        coords[i] = BigInt::one();
        GroupElement {
            group: self.clone(),
            coords: self.reduced(coords),
        }
    }

    /// Every element, for finite groups small enough to list.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d: usize = d.try_into().ok()?;
            let mut next = Vec::with_capacity(out.len() * d);
            for prefix in &out {
                for a in 0..d {
                    let mut v = prefix.clone();
                    v.push(BigInt::from(a));
                    next.push(v);
                }
            }
            out = next;
        }
        Some(out)
    }
}

impl fmt::Display for FgAbGroup {
    /// `0`, or `Z^r` then `Z/d` factors joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FgAbGroup {
    type Err = Error;

    /// Accepts sums of `0`, `Z`, `Z^k`, `Z/d` (optionally `Z/dZ`).
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let number = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().unwrap())
        };

        let mut orders: Vec<BigInt> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                return Err(Error::parse(pos, "expected a group term"));
            }
            match chars[pos] {
                '0' => {
                    pos += 1;
                }
                'Z' => {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos < chars.len() && chars[pos] == '/' {
                        pos += 1;
                        skip_ws(&mut pos);
                        let d = number(&mut pos)
                            .ok_or_else(|| Error::parse(pos, "expected a modulus after `/`"))?;
                        if d.is_zero() {
                            return Err(Error::parse(pos - 1, "modulus must be positive"));
                        }
                        skip_ws(&mut pos);
                        if pos < chars.len() && chars[pos] == 'Z' {
                            pos += 1;
                        }
                        orders.push(d);
                    } else if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        skip_ws(&mut pos);
                        let k = number(&mut pos)
                            .ok_or_else(|| Error::parse(pos, "expected an exponent after `^`"))?;
                        let k: usize = (&k)
                            .try_into()
                            .map_err(|_| Error::parse(pos, "exponent too large"))?;
                        orders.extend(std::iter::repeat_n(BigInt::zero(), k));
                    } else {
                        orders.push(BigInt::zero());
                    }
                }
                c => return Err(Error::parse(pos, format!("unexpected `{c}`"))),
            }
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            if chars[pos] != '+' {
                return Err(Error::parse(pos, format!("expected `+`, found `{}`", chars[pos])));
            }
            pos += 1;
        }
        Ok(FgAbGroup::from_cyclics(&orders))
    }
}

/// A group presented as `Z^n / im(relations)` in canonical form, with the
/// coordinate changes in both directions.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FgAbGroup,
    /// Canonical coordinates of each presentation generator (`ngens x n`).
    pub to_canonical: IntMatrix,
    /// Each canonical generator as a combination of presentation generators (`n x ngens`).
    pub from_canonical: IntMatrix,
}

impl Presentation {
    /// Canonical coordinates of the class of `x` in `Z^n`.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.reduced(self.to_canonical.mul_vec(x))
    }
}

/// Canonical form of the cokernel of `relations : Z^m -> Z^n`.
pub fn from_presentation(n_generators: usize, relations: &IntMatrix) -> Result<Presentation> {
    if relations.rows() != n_generators {
        return Err(Error::Shape(format!(
            "relation matrix has {} rows for {} generators",
            relations.rows(),
            n_generators
        )));
    }
    let s = smith(relations);
    let diag = s.diagonal();
    let d_at = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let one = BigInt::one();

    let free_idx: Vec<usize> = (0..n_generators).filter(|&i| d_at(i).is_zero()).collect();
    let tors_idx: Vec<usize> = (0..n_generators)
        .filter(|&i| {
            let d = d_at(i);
            !d.is_zero() && d != one
        })
        .collect();
    let torsion: Vec<BigInt> = tors_idx.iter().map(|&i| d_at(i)).collect();
    let group = FgAbGroup {
        free_rank: free_idx.len(),
        torsion,
    };
    let idx: Vec<usize> = free_idx.iter().chain(&tors_idx).copied().collect();
    let mut to_canonical = s.u().select_rows(&idx);
    for (j, d) in group.torsion.iter().enumerate() {
        let r = group.free_rank + j;
        for c in 0..to_canonical.cols() {
            let v = to_canonical.get(r, c).mod_floor(d);
            to_canonical.set(r, c, v);
        }
    }
    let from_canonical = s.u_inv().select_columns(&idx);
    Ok(Presentation {
        group,
        to_canonical,
        from_canonical,
    })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupElement {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(group: FgAbGroup, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != group.num_generators() {
            return Err(Error::Shape(format!(
                "{} coordinates for an element of {}",
                coords.len(),
                group
            )));
        }
        let coords = group.reduced(coords);
        Ok(GroupElement { group, coords })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_owner(&self, other: &GroupElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::OwnerMismatch {
                expected: self.group.to_string(),
                found: other.group.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_owner(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        GroupElement::new(self.group.clone(), coords)
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self.coords.iter().map(|a| -a).collect();
        GroupElement::new(self.group.clone(), coords).expect("same shape")
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let coords = self.coords.iter().map(|a| a * k).collect();
        GroupElement::new(self.group.clone(), coords).expect("same shape")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Homomorphism between canonical groups, given on canonical generators
/// (`target.ngens x source.ngens`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

/// A subgroup as an abstract group plus its inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbGroup,
    pub inclusion: GroupHom,
}

/// A quotient as an abstract group plus its projection, with a set-theoretic
/// section giving one preimage (in the parent) per canonical generator.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbGroup,
    pub projection: GroupHom,
    pub section: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        for (j, d) in target.torsion.iter().enumerate() {
            let r = target.free_rank + j;
            for c in 0..matrix.cols() {
                let v = matrix.get(r, c).mod_floor(d);
                matrix.set(r, c, v);
            }
        }
        for (j, d) in source.torsion.iter().enumerate() {
            let c = source.free_rank + j;
            let image: Vec<BigInt> = matrix.column(c).iter().map(|x| x * d).collect();
            if !target.is_zero_coords(&image) {
                return Err(Error::IllDefinedHom(format!(
                    "generator of order {d} sent to an element whose {d}-fold multiple is nonzero"
                )));
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom::new(g.clone(), g.clone(), IntMatrix::identity(g.num_generators()))
            .expect("identity is well defined")
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.num_generators(), source.num_generators()),
        }
    }

    /// Multiplication by `n` on `g`.
    pub fn scalar(g: &FgAbGroup, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        let k = g.num_generators();
        GroupHom::new(g.clone(), g.clone(), IntMatrix::identity(k).scale(&n))
            .expect("scalar maps are well defined")
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduced(self.matrix.mul_vec(x))
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group != self.source {
            return Err(Error::OwnerMismatch {
                expected: self.source.to_string(),
                found: x.group.to_string(),
            });
        }
        GroupElement::new(self.target.clone(), self.matrix.mul_vec(&x.coords))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if other.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        GroupHom::new(
            other.source.clone(),
            self.target.clone(),
            &self.matrix * &other.matrix,
        )
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding maps with different endpoints".into()));
        }
        GroupHom::new(
            self.source.clone(),
            self.target.clone(),
            &self.matrix + &other.matrix,
        )
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), -&self.matrix)
            .expect("negation preserves well-definedness")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `[M | R_target]`: solutions of this system are exactly the pairs
    /// `(x, z)` with `M x = 0` in the target.
    fn augmented(&self) -> IntMatrix {
        self.matrix
            .hstack(&self.target.torsion_relations())
            .expect("row counts agree")
    }

    pub fn kernel(&self) -> Subgroup {
        let ns = self.source.num_generators();
        let k = kernel_basis(&self.augmented());
        let top: Vec<usize> = (0..ns).collect();
        // Projection to source coordinates is injective on this kernel since
        // the target relation columns are independent.
        let lattice = k.select_rows(&top);
        let lattice_smith = smith(&lattice);
        let src_rel = self.source.torsion_relations();
        let coeffs: Vec<Vec<BigInt>> = src_rel
            .columns()
            .iter()
            .map(|r| {
                lattice_smith
                    .solve(r)
                    .expect("source relations lie in the kernel lattice")
            })
            .collect();
        let rel = IntMatrix::from_columns(lattice.cols(), &coeffs);
        let pres = from_presentation(lattice.cols(), &rel).expect("shape is consistent");
        let incl = &lattice * &pres.from_canonical;
        let inclusion = GroupHom::new(pres.group.clone(), self.source.clone(), incl)
            .expect("kernel inclusion is well defined");
        Subgroup {
            group: pres.group,
            inclusion,
        }
    }

    pub fn cokernel(&self) -> Quotient {
        let nt = self.target.num_generators();
        let pres = from_presentation(nt, &self.augmented()).expect("shape is consistent");
        let projection = GroupHom::new(self.target.clone(), pres.group.clone(), pres.to_canonical)
            .expect("projection is well defined");
        Quotient {
            group: pres.group,
            projection,
            section: pres.from_canonical,
        }
    }

    /// `im f = ker(coker f)`.
    pub fn image(&self) -> Subgroup {
        self.cokernel().projection.kernel()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn solver(&self) -> HomSolver {
        HomSolver {
            source: self.source.clone(),
            smith: smith(&self.augmented()),
        }
    }

    /// Some `x` with `f(x) = y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver().preimage(y)
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {}", self.source, self.target, self.matrix)
    }
}

/// Cached factorisation for repeated preimage queries against one map.
#[derive(Clone, Debug)]
pub struct HomSolver {
    source: FgAbGroup,
    smith: SmithDecomposition,
}

impl HomSolver {
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let sol = self.smith.solve(y)?;
        let ns = self.source.num_generators();
        Some(self.source.reduced(sol[..ns].to_vec()))
    }
}

/// `ker(outgoing) / im(incoming)` at the middle of `A -> B -> C`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    /// `B`
    pub ambient: FgAbGroup,
    pub cycles: Subgroup,
    /// `cycles.group -> group`
    pub projection: GroupHom,
    /// One representative in `B` per canonical generator of `group`.
    pub representatives: Vec<Vec<BigInt>>,
    cycle_solver: HomSolver,
}

impl Subquotient {
    pub fn new(incoming: &GroupHom, outgoing: &GroupHom) -> Result<Self> {
        if incoming.target != outgoing.source {
            return Err(Error::Shape(format!(
                "incoming map lands in {} but outgoing map starts at {}",
                incoming.target, outgoing.source
            )));
        }
        let cycles = outgoing.kernel();
        let cycle_solver = cycles.inclusion.solver();
        let lifted: Vec<Vec<BigInt>> = incoming
            .matrix
            .columns()
            .iter()
            .map(|col| {
                cycle_solver.preimage(col).ok_or_else(|| {
                    Error::Sequence("composite of consecutive maps is nonzero".into())
                })
            })
            .collect::<Result<_>>()?;
        let into_cycles = GroupHom::new(
            incoming.source.clone(),
            cycles.group.clone(),
            IntMatrix::from_columns(cycles.group.num_generators(), &lifted),
        )?;
        let q = into_cycles.cokernel();
        let representatives = q
            .section
            .columns()
            .iter()
            .map(|c| cycles.inclusion.apply_coords(c))
            .collect();
        Ok(Subquotient {
            group: q.group,
            ambient: incoming.target.clone(),
            cycles,
            projection: q.projection,
            representatives,
            cycle_solver,
        })
    }

    /// Class of `x` in the subquotient, or `None` when `x` is not a cycle.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let lifted = self.cycle_solver.preimage(x)?;
        Some(self.projection.apply_coords(&lifted))
    }
}

/// `G_1 + ... + G_k` with injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

pub fn direct_sum(groups: &[FgAbGroup]) -> DirectSum {
    let blocks: Vec<IntMatrix> = groups.iter().map(|g| g.torsion_relations()).collect();
    let rel = IntMatrix::block_diagonal(&blocks);
    let n = rel.rows();
    let pres = from_presentation(n, &rel).expect("block diagonal presentation");
    let mut offset = 0;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for g in groups {
        let k = g.num_generators();
        let idx: Vec<usize> = (offset..offset + k).collect();
        injections.push(
            GroupHom::new(
                g.clone(),
                pres.group.clone(),
                pres.to_canonical.select_columns(&idx),
            )
            .expect("injection is well defined"),
        );
        projections.push(
            GroupHom::new(
                pres.group.clone(),
                g.clone(),
                pres.from_canonical.select_rows(&idx),
            )
            .expect("projection is well defined"),
        );
        offset += k;
    }
    DirectSum {
        group: pres.group,
        injections,
        projections,
    }
}

pub fn is_isomorphic(g: &FgAbGroup, h: &FgAbGroup) -> bool {
    g == h
}

/// `G[n]`, the elements killed by `n`, with its inclusion. `G[0] = G`.
pub fn torsion_sub(g: &FgAbGroup, n: impl Into<BigInt>) -> Subgroup {
    GroupHom::scalar(g, n).kernel()
}

/// `G/nG` with its projection. `G/0 = G`.
pub fn quotient_by_n(g: &FgAbGroup, n: impl Into<BigInt>) -> Quotient {
    GroupHom::scalar(g, n).cokernel()
}

/// `G ⊗ H` from `Z/a ⊗ Z/b = Z/gcd(a, b)` on cyclic summands (`Z = Z/0`).
pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for a in g.summands() {
        for b in h.summands() {
            orders.push(a.gcd(&b));
        }
    }
    FgAbGroup::from_cyclics(&orders)
}

/// `Hom(G, H)`: each `Z` summand of `G` contributes `H`, each `Z/a` contributes `H[a]`.
pub fn hom_group(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let parts: Vec<FgAbGroup> = g
        .summands()
        .iter()
        .map(|a| {
            if a.is_zero() {
                h.clone()
            } else {
                torsion_sub(h, a.clone()).group
            }
        })
        .collect();
    direct_sum(&parts).group
}

/// `Ext(G, H)`: each `Z/a` summand of `G` contributes `H/a`.
pub fn ext_group(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let parts: Vec<FgAbGroup> = g
        .invariant_factors()
        .iter()
        .map(|a| quotient_by_n(h, a.clone()).group)
        .collect();
    direct_sum(&parts).group
}

/// True if `x` lies in the image of `f`.
pub fn in_image(f: &GroupHom, x: &[BigInt]) -> bool {
    f.preimage(x).is_some()
}

/// Nonnegative integers `0 < u < m` prime to `m`; `{1, -1}` when `m = 0`.
pub fn units(m: &BigInt) -> Vec<BigInt> {
    if m.is_zero() {
        return vec![BigInt::one(), -BigInt::one()];
    }
    let mut out = Vec::new();
    let mut u = BigInt::one();
    while &u < m {
        if u.gcd(m).is_one() {
            out.push(u.clone());
        }
        u += 1;
    }
    if out.is_empty() {
        out.push(BigInt::zero());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn presentations() {
        let p = from_presentation(1, &IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(p.group, g("Z/2"));
        let p = from_presentation(2, &IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(p.group, g("Z^2"));
        let p = from_presentation(2, &IntMatrix::from_rows(&[[2, 0], [0, 3]])).unwrap();
        assert_eq!(p.group, g("Z/6"));
        assert!(from_presentation(3, &IntMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn presentation_coordinates_invert() {
        let rel = IntMatrix::from_rows(&[[2, 4], [6, 8], [0, 0]]);
        let p = from_presentation(3, &rel).unwrap();
        let round = &p.to_canonical * &p.from_canonical;
        for j in 0..p.group.num_generators() {
            let col = p.group.reduced(round.column(j));
            assert_eq!(col, p.group.generator(j).into_coords());
        }
        for c in rel.columns() {
            assert!(p.group.is_zero_coords(&p.project(&c)));
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(g("Z").to_string(), "Z");
        assert_eq!(g("Z+Z+Z/2+Z/6").to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(g("Z/2 + Z/3").to_string(), "Z/6");
        assert_eq!(g("Z/4+Z/2").to_string(), "Z/2 + Z/4");
        assert_eq!(g("Z/2Z").to_string(), "Z/2");
        assert_eq!(g("Z^3").to_string(), "Z^3");
        assert_eq!(g("0").to_string(), "0");
        assert_eq!(g("Z/1").to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "Z + Q".parse::<FgAbGroup>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match "Z/".parse::<FgAbGroup>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!("Z/0".parse::<FgAbGroup>().is_err());
        assert!("".parse::<FgAbGroup>().is_err());
        assert!("Z Z".parse::<FgAbGroup>().is_err());
    }

    #[test]
    fn torsion_subgroups() {
        assert!(torsion_sub(&g("Z"), 2).group.is_trivial());
        assert_eq!(torsion_sub(&g("Z/4"), 2).group, g("Z/2"));
        for s in ["Z", "Z/6", "Z^2 + Z/4"] {
            assert!(torsion_sub(&g(s), 1).group.is_trivial());
            assert_eq!(torsion_sub(&g(s), 0).group, g(s));
        }
    }

    #[test]
    fn quotients() {
        assert_eq!(quotient_by_n(&g("Z"), 2).group, g("Z/2"));
        assert_eq!(quotient_by_n(&g("Z/6"), 2).group, g("Z/2"));
        for s in ["Z", "Z/6", "Z^2 + Z/4"] {
            assert!(quotient_by_n(&g(s), 1).group.is_trivial());
            assert_eq!(quotient_by_n(&g(s), 0).group, g(s));
        }
    }

    #[test]
    fn tensor_hom_ext() {
        assert_eq!(tensor(&g("Z"), &g("Z/4 + Z")), g("Z/4 + Z"));
        assert_eq!(tensor(&g("Z/4"), &g("Z/6")), g("Z/2"));
        assert_eq!(tensor(&g("Z^2"), &g("Z/2")), g("Z/2 + Z/2"));
        assert!(hom_group(&g("Z/2"), &g("Z")).is_trivial());
        assert_eq!(ext_group(&g("Z/2"), &g("Z")), g("Z/2"));
        assert_eq!(hom_group(&g("Z"), &g("Z/12")), g("Z/12"));
        assert!(ext_group(&g("Z^3"), &g("Z/5")).is_trivial());
    }

    #[test]
    fn kernels_and_cokernels() {
        let z = g("Z");
        let two = GroupHom::scalar(&z, 2);
        assert!(two.kernel().group.is_trivial());
        assert_eq!(two.cokernel().group, g("Z/2"));
        let h = g("Z/6 + Z");
        let zero = GroupHom::zero(&h, &z);
        assert_eq!(zero.kernel().group, h);
        assert_eq!(zero.image().group, FgAbGroup::trivial());
        assert_eq!(two.image().group, z);
    }

    #[test]
    fn ill_defined_maps_rejected() {
        // Z/2 -> Z sending the generator to 1
        let r = GroupHom::new(g("Z/2"), g("Z"), IntMatrix::from_rows(&[[1]]));
        assert!(matches!(r, Err(Error::IllDefinedHom(_))));
        // Z/4 -> Z/6 sending 1 to 1 is ill defined, 1 to 3 is fine
        assert!(GroupHom::new(g("Z/4"), g("Z/6"), IntMatrix::from_rows(&[[1]])).is_err());
        assert!(GroupHom::new(g("Z/4"), g("Z/6"), IntMatrix::from_rows(&[[3]])).is_ok());
    }

    #[test]
    fn isomorphism_is_field_equality() {
        assert!(is_isomorphic(&g("Z/2 + Z/3"), &g("Z/6")));
        assert!(!is_isomorphic(&g("Z/2 + Z/2"), &g("Z/4")));
    }

    #[test]
    fn element_arithmetic() {
        let z = g("Z");
        let gen = z.generator(0);
        let id = GroupHom::identity(&z);
        assert_eq!(id.apply(&gen).unwrap().coords(), bi(&[1]).as_slice());
        let twice = gen.add(&gen).unwrap();
        assert_eq!(id.apply(&twice).unwrap().coords(), bi(&[2]).as_slice());
        assert_eq!(id.apply(&gen.neg()).unwrap().coords(), bi(&[-1]).as_slice());
        assert!(gen.add(&gen.neg()).unwrap().is_zero());

        let z2 = g("Z/2");
        let x = z2.generator(0);
        assert!(x.add(&x).unwrap().is_zero());
        assert_eq!(x.neg(), x);
        assert!(matches!(gen.add(&x), Err(Error::OwnerMismatch { .. })));
        assert!(id.apply(&x).is_err());
    }

    #[test]
    fn direct_sums_split() {
        let parts = [g("Z/2"), g("Z"), g("Z/3")];
        let s = direct_sum(&parts);
        assert_eq!(s.group, g("Z + Z/6"));
        for (i, inj) in s.injections.iter().enumerate() {
            for (j, proj) in s.projections.iter().enumerate() {
                let c = proj.compose(inj).unwrap();
                if i == j {
                    assert_eq!(c, GroupHom::identity(&parts[i]));
                } else {
                    assert!(c.is_zero());
                }
            }
        }
        assert_eq!(direct_sum(&[]).group, FgAbGroup::trivial());
    }

    #[test]
    fn subquotient_of_two_on_z() {
        // Z --2--> Z --0--> 0 gives Z/2
        let z = g("Z");
        let sq = Subquotient::new(&GroupHom::scalar(&z, 2), &GroupHom::zero(&z, &FgAbGroup::trivial()))
            .unwrap();
        assert_eq!(sq.group, g("Z/2"));
        assert_eq!(sq.class_of(&bi(&[3])), Some(bi(&[1])));
        assert_eq!(sq.class_of(&bi(&[4])), Some(bi(&[0])));
    }

    #[test]
    fn power_layout() {
        let p = g("Z + Z/2 + Z/4").power(3);
        assert_eq!(p, g("Z^3 + Z/2 + Z/2 + Z/2 + Z/4 + Z/4 + Z/4"));
    }

    #[test]
    fn units_of_small_moduli() {
        assert_eq!(units(&BigInt::from(0)), bi(&[1, -1]));
        assert_eq!(units(&BigInt::from(2)), bi(&[1]));
        assert_eq!(units(&BigInt::from(12)), bi(&[1, 5, 7, 11]));
    }
}
