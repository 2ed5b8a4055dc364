//! Long exact sequences: a generic window type with exactness checking and
//! a small deduction engine, the Mayer-Vietoris sequence of a simplicial
//! cover (connecting map via the snake lemma), the Gysin sequence taken at
//! its interface, and the Eilenberg-Steenrod axiom checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::abgroup::{direct_sum, in_image, is_isomorphic, FgAbGroup, GroupHom};
use crate::complex::{extend_coefficients, CellComplex, CellularMap, CohomologyResult};
use crate::cup::GradedRing;
use crate::error::{Error, Result};
use crate::spaces::{catalog_maps, Cover, SpaceId};

/// A node of a sequence: a known group, an unknown, or an unknown filled in
/// by [`LongExactSequence::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSlot {
    Known(FgAbGroup),
    Unknown,
    Solved { group: FgAbGroup, rule: String },
}

impl SequenceSlot {
    pub fn group(&self) -> Option<&FgAbGroup> {
        match self {
            SequenceSlot::Known(g) | SequenceSlot::Solved { group: g, .. } => Some(g),
            SequenceSlot::Unknown => None,
        }
    }

    fn is_trivial(&self) -> bool {
        self.group().is_some_and(|g| g.is_trivial())
    }
}

impl From<Option<FgAbGroup>> for SequenceSlot {
    fn from(g: Option<FgAbGroup>) -> Self {
        g.map_or(SequenceSlot::Unknown, SequenceSlot::Known)
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub label: String,
    pub slot: SequenceSlot,
}

/// Edge `i` goes from node `i` to node `i + 1`. `map` is `None` when unknown.
#[derive(Clone, Debug)]
pub struct Edge {
    pub label: String,
    pub map: Option<GroupHom>,
}

/// A finite window of a long exact sequence. Nodes sharing a label stand for
/// the same group.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    pub truncated_start: bool,
    pub truncated_end: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum NodeStatus {
    Exact,
    NotExact(String),
    Unchecked(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeExactness {
    pub index: usize,
    pub label: String,
    #[serde(flatten)]
    pub status: NodeStatus,
}

/// Exactness at every interior node.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeExactness>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.status == NodeStatus::Exact)
    }

    pub fn failures(&self) -> Vec<&NodeExactness> {
        self.nodes
            .iter()
            .filter(|n| n.status != NodeStatus::Exact)
            .collect()
    }
}

impl LongExactSequence {
    pub fn starting_at(label: impl Into<String>, slot: SequenceSlot) -> Self {
        LongExactSequence {
            nodes: vec![Node {
                label: label.into(),
                slot,
            }],
            edges: Vec::new(),
            truncated_start: false,
            truncated_end: false,
        }
    }

    /// Append an edge and the node it lands in.
    pub fn push(
        &mut self,
        edge_label: impl Into<String>,
        map: Option<GroupHom>,
        label: impl Into<String>,
        slot: SequenceSlot,
    ) -> Result<()> {
        let label = label.into();
        let mut slot = slot;
        if let Some(other) = self.nodes.iter().find(|n| n.label == label) {
            match (other.slot.group(), slot.group()) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Sequence(format!(
                        "{label} is given as both {a} and {b}"
                    )))
                }
                (Some(_), None) => slot = other.slot.clone(),
                _ => {}
            }
        }
        if let Some(f) = &map {
            let prev = self.nodes.last().expect("sequence is never empty");
            let ok = prev.slot.group() == Some(f.source()) && slot.group() == Some(f.target());
            if !ok {
                return Err(Error::Sequence(format!(
                    "map {} -> {} does not fit between {} and {label}",
                    f.source(),
                    f.target(),
                    prev.label
                )));
            }
        }
        self.edges.push(Edge {
            label: edge_label.into(),
            map,
        });
        self.nodes.push(Node { label, slot });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn group(&self, i: usize) -> Option<&FgAbGroup> {
        self.nodes.get(i)?.slot.group()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    pub fn group_of(&self, label: &str) -> Option<&FgAbGroup> {
        self.group(self.find(label)?)
    }

    /// Replace every node labelled like node `i` by an unknown, dropping the
    /// maps into and out of it.
    pub fn forget(&mut self, i: usize) {
        let label = self.nodes[i].label.clone();
        for j in 0..self.nodes.len() {
            if self.nodes[j].label == label {
                self.nodes[j].slot = SequenceSlot::Unknown;
                if j > 0 {
                    self.edges[j - 1].map = None;
                }
                if j < self.edges.len() {
                    self.edges[j].map = None;
                }
            }
        }
    }

    /// The map on edge `i`, or the zero map when an end is trivial.
    pub fn effective_map(&self, i: usize) -> Option<GroupHom> {
        if let Some(f) = &self.edges[i].map {
            return Some(f.clone());
        }
        let s = self.nodes[i].slot.group()?;
        let t = self.nodes[i + 1].slot.group()?;
        (s.is_trivial() || t.is_trivial()).then(|| GroupHom::zero(s, t))
    }

    /// Compare image of the incoming map with the kernel of the outgoing map
    /// at every interior node.
    pub fn check_exact(&self) -> ExactnessReport {
        let mut nodes = Vec::new();
        for i in 1..self.nodes.len().saturating_sub(1) {
            let status = match (self.effective_map(i - 1), self.effective_map(i)) {
                (Some(f), Some(g)) => exact_at(&f, &g),
                _ => NodeStatus::Unchecked("an adjacent map is unknown".into()),
            };
            nodes.push(NodeExactness {
                index: i,
                label: self.nodes[i].label.clone(),
                status,
            });
        }
        ExactnessReport { nodes }
    }

    fn trivial_at(&self, i: isize) -> bool {
        i >= 0 && (i as usize) < self.nodes.len() && self.nodes[i as usize].slot.is_trivial()
    }

    fn fill(&mut self, i: usize, group: FgAbGroup, rule: String) {
        let label = self.nodes[i].label.clone();
        for n in self.nodes.iter_mut().filter(|n| n.label == label) {
            n.slot = SequenceSlot::Solved {
                group: group.clone(),
                rule: rule.clone(),
            };
        }
    }

    /// Fill unknowns using only two rules: a sandwich `0 -> ? -> C -> 0` or
    /// `0 -> A -> ? -> 0` makes the middle edge an isomorphism, and
    /// `0 -> ? -> 0` forces `? = 0`. Everything else stays unknown.
    pub fn solve(&self) -> LongExactSequence {
        let mut seq = self.clone();
        loop {
            let mut progress = false;
            for p in 0..seq.nodes.len() {
                if seq.nodes[p].slot.group().is_some() {
                    continue;
                }
                let ip = p as isize;
                let label = |q: usize| seq.nodes[q].label.clone();
                if seq.trivial_at(ip - 1) && seq.trivial_at(ip + 1) {
                    let rule = format!("0 → ? → 0 between {} and {}", label(p - 1), label(p + 1));
                    seq.fill(p, FgAbGroup::trivial(), rule);
                    progress = true;
                } else if seq.trivial_at(ip - 1)
                    && seq.trivial_at(ip + 2)
                    && seq.group(p + 1).is_some()
                {
                    let c = seq.group(p + 1).unwrap().clone();
                    let rule = format!(
                        "0 → ? → {} → 0, so {} is an isomorphism",
                        label(p + 1),
                        seq.edges[p].label
                    );
                    seq.fill(p, c.clone(), rule);
                    seq.edges[p].map = Some(GroupHom::identity(&c));
                    progress = true;
                } else if p >= 1
                    && seq.trivial_at(ip - 2)
                    && seq.trivial_at(ip + 1)
                    && seq.group(p - 1).is_some()
                {
                    let a = seq.group(p - 1).unwrap().clone();
                    let rule = format!(
                        "0 → {} → ? → 0, so {} is an isomorphism",
                        label(p - 1),
                        seq.edges[p - 1].label
                    );
                    seq.fill(p, a.clone(), rule);
                    seq.edges[p - 1].map = Some(GroupHom::identity(&a));
                    progress = true;
                }
            }
            if !progress {
                return seq;
            }
        }
    }

    /// Indices of nodes that are still unknown.
    pub fn indeterminate(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].slot.group().is_none())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|n| {
                let (state, rule) = match &n.slot {
                    SequenceSlot::Known(_) => ("known", None),
                    SequenceSlot::Unknown => ("unknown", None),
                    SequenceSlot::Solved { rule, .. } => ("solved", Some(rule.clone())),
                };
                serde_json::json!({
                    "label": n.label,
                    "group": n.slot.group().map(|g| g.to_string()),
                    "state": state,
                    "rule": rule,
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "label": e.label,
                    "matrix": e.map.as_ref().map(|f| f.matrix().to_string()),
                })
            })
            .collect();
        serde_json::json!({
            "truncated_start": self.truncated_start,
            "truncated_end": self.truncated_end,
            "nodes": nodes,
            "edges": edges,
        })
    }
}

fn exact_at(f: &GroupHom, g: &GroupHom) -> NodeStatus {
    match g.compose(f) {
        Ok(gf) if !gf.is_zero() => return NodeStatus::NotExact("image is not inside the kernel".into()),
        Err(e) => return NodeStatus::NotExact(e.to_string()),
        _ => {}
    }
    let ker = g.kernel();
    for col in ker.inclusion.matrix().columns() {
        if !in_image(f, &col) {
            return NodeStatus::NotExact("kernel is larger than the image".into());
        }
    }
    NodeStatus::Exact
}

impl fmt::Display for LongExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.nodes.iter().map(|n| n.label.chars().count()).max().unwrap_or(0);
        if self.truncated_start {
            writeln!(f, "  ⋮")?;
        }
        for (i, n) in self.nodes.iter().enumerate() {
            let group = n.slot.group().map_or("?".to_string(), |g| g.to_string());
            let pad = w - n.label.chars().count();
            write!(f, "  {}{}   {group}", n.label, " ".repeat(pad))?;
            if let SequenceSlot::Solved { rule, .. } = &n.slot {
                write!(f, "   [solved: {rule}]")?;
            }
            writeln!(f)?;
            if let Some(e) = self.edges.get(i) {
                let m = e.map.as_ref().map_or(String::new(), |m| format!("  {}", m.matrix()));
                writeln!(f, "    ↓ {}{m}", e.label)?;
            }
        }
        if self.truncated_end {
            writeln!(f, "  ⋮")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris

struct MvData {
    g: FgAbGroup,
    reduced: bool,
    x: CellComplex,
    a: CellComplex,
    b: CellComplex,
    ab: CellComplex,
    inc_a: CellularMap,
    inc_b: CellularMap,
    res_a: CellularMap,
    res_b: CellularMap,
}

impl MvData {
    fn new(cover: &Cover, g: &FgAbGroup, reduced: bool) -> Result<Self> {
        let ab_s = cover.intersection();
        if reduced && (ab_s.is_empty() || cover.a.is_empty() || cover.b.is_empty()) {
            return Err(Error::InvalidCover(
                "the reduced sequence needs nonempty pieces and intersection".into(),
            ));
        }
        let inc_a = cover.a.inclusion_map(&cover.space)?;
        let inc_b = cover.b.inclusion_map(&cover.space)?;
        let res_a = ab_s.inclusion_map(&cover.a)?;
        let res_b = ab_s.inclusion_map(&cover.b)?;
        let x = inc_a.target().clone();
        let a = inc_a.source().clone();
        let b = inc_b.source().clone();
        let ab = res_a.source().clone();
        Ok(MvData {
            g: g.clone(),
            reduced,
            x,
            a,
            b,
            ab,
            inc_a,
            inc_b,
            res_a,
            res_b,
        })
    }

    fn h(&self, c: &CellComplex, n: i64) -> CohomologyResult {
        if self.reduced {
            c.reduced_cohomology_result(n, &self.g)
                .expect("pieces are based")
        } else {
            c.cohomology(n, &self.g)
        }
    }

    fn ext(&self, m: &CellularMap, n: i64, v: &[BigInt]) -> Vec<BigInt> {
        extend_coefficients(&m.component(n), &self.g).mul_vec(v)
    }

    /// `d : H^n(A∩B) -> H^{n+1}(X)`. The lift of a cocycle `c` is
    /// `(ext_A(c) + u|A, u|B)` for an offset `u` on `X` chosen by `offset`.
    fn connecting(
        &self,
        n: i64,
        hab: &CohomologyResult,
        hx_next: &CohomologyResult,
        offset: &mut dyn FnMut(usize) -> Vec<BigInt>,
    ) -> GroupHom {
        let g = &self.g;
        let cx = self.x.cochain_group(n, g);
        let cols: Vec<Vec<BigInt>> = hab
            .representatives
            .iter()
            .map(|c| {
                let u = cx.reduced(offset(cx.num_generators()));
                let ua = self.inc_a.cochain_map(n, g).apply_coords(&u);
                let ub = self.inc_b.cochain_map(n, g).apply_coords(&u);
                let a: Vec<BigInt> = self
                    .ext(&self.res_a, n, c)
                    .iter()
                    .zip(&ua)
                    .map(|(p, q)| p + q)
                    .collect();
                let da = self.a.coboundary(n, g).apply_coords(&a);
                let db = self.b.coboundary(n, g).apply_coords(&ub);
                let db_ab = self.res_b.cochain_map(n + 1, g).apply_coords(&db);
                let on_a = self.ext(&self.inc_a, n + 1, &da);
                let on_b = self.ext(&self.inc_b, n + 1, &db);
                let on_ab = self.ext(&self.inc_a, n + 1, &self.ext(&self.res_a, n + 1, &db_ab));
                let x: Vec<BigInt> = (0..on_a.len())
                    .map(|i| &on_a[i] + &on_b[i] - &on_ab[i])
                    .collect();
                hx_next
                    .class_of(&x)
                    .expect("snake lemma produces a cocycle")
            })
            .collect();
        GroupHom::new(
            hab.group.clone(),
            hx_next.group.clone(),
            crate::intmat::IntMatrix::from_columns(hx_next.group.num_generators(), &cols),
        )
        .expect("connecting map is well defined")
    }
}

fn mv_label(reduced: bool, n: i64, what: &str) -> String {
    if reduced && n == 0 {
        format!("H~0({what})")
    } else {
        format!("H^{n}({what})")
    }
}

fn build_mv(
    cover: &Cover,
    g: &FgAbGroup,
    max_deg: usize,
    reduced: bool,
    offset: &mut dyn FnMut(usize) -> Vec<BigInt>,
) -> Result<LongExactSequence> {
    let d = MvData::new(cover, g, reduced)?;
    let mut seq = LongExactSequence::starting_at("0", SequenceSlot::Known(FgAbGroup::trivial()));
    let mut hx = d.h(&d.x, 0);
    seq.push(
        "",
        None,
        mv_label(reduced, 0, "X"),
        SequenceSlot::Known(hx.group.clone()),
    )?;
    for n in 0..=max_deg as i64 {
        let ha = d.h(&d.a, n);
        let hb = d.h(&d.b, n);
        let hab = d.h(&d.ab, n);
        let sum = direct_sum(&[ha.group.clone(), hb.group.clone()]);
        let ia = d.inc_a.induced_with(n, g, &hx, &ha);
        let ib = d.inc_b.induced_with(n, g, &hx, &hb);
        let i = sum.injections[0].compose(&ia)?.add(&sum.injections[1].compose(&ib)?)?;
        let ra = d.res_a.induced_with(n, g, &ha, &hab);
        let rb = d.res_b.induced_with(n, g, &hb, &hab);
        let delta = ra
            .compose(&sum.projections[0])?
            .add(&rb.compose(&sum.projections[1])?.neg())?;
        let hx_next = d.h(&d.x, n + 1);
        let conn = d.connecting(n, &hab, &hx_next, offset);
        seq.push(
            "i",
            Some(i),
            format!("{}+{}", mv_label(reduced, n, "A"), mv_label(reduced, n, "B")),
            SequenceSlot::Known(sum.group),
        )?;
        seq.push(
            "Δ",
            Some(delta),
            mv_label(reduced, n, "A∩B"),
            SequenceSlot::Known(hab.group.clone()),
        )?;
        seq.push(
            "d",
            Some(conn),
            mv_label(reduced, n + 1, "X"),
            SequenceSlot::Known(hx_next.group.clone()),
        )?;
        hx = hx_next;
    }
    seq.truncated_end = true;
    Ok(seq)
}

/// `0 -> H^0(X) -> H^0(A)+H^0(B) -> H^0(A∩B) -> H^1(X) -> ...` up to
/// `H^{max_deg+1}(X)`, with `i = (incl_A^*, incl_B^*)`,
/// `Δ(α, β) = α|A∩B - β|A∩B` and `d` from the snake lemma.
pub fn mayer_vietoris(cover: &Cover, g: &FgAbGroup, max_deg: usize) -> Result<LongExactSequence> {
    build_mv(cover, g, max_deg, false, &mut |k| vec![BigInt::zero(); k])
}

/// The same sequence on augmented cochains, starting at `H̃^0`.
pub fn reduced_mayer_vietoris(
    cover: &Cover,
    g: &FgAbGroup,
    max_deg: usize,
) -> Result<LongExactSequence> {
    build_mv(cover, g, max_deg, true, &mut |k| vec![BigInt::zero(); k])
}

/// The connecting map `H^n(A∩B) -> H^{n+1}(X)` computed with cochain lifts
/// shifted by offsets drawn from `offset` (one cochain on `X` per class).
pub fn connecting_map_with_offsets(
    cover: &Cover,
    g: &FgAbGroup,
    n: usize,
    reduced: bool,
    offset: &mut dyn FnMut(usize) -> Vec<BigInt>,
) -> Result<GroupHom> {
    let d = MvData::new(cover, g, reduced)?;
    let n = n as i64;
    let hab = d.h(&d.ab, n);
    let hx = d.h(&d.x, n + 1);
    Ok(d.connecting(n, &hab, &hx, offset))
}

// ---------------------------------------------------------------------------
// Gysin

/// Input to the Gysin sequence of a sphere fibration `S^{n-1} -> E -> B`
/// with `B` connected: groups of `B` (unreduced), reduced groups of `E`, and
/// whichever maps are known. Unknown groups are `None`.
#[derive(Clone, Debug, Default)]
pub struct GysinData {
    /// `0` for `Z`, otherwise `m` for `Z/m`.
    pub modulus: u64,
    pub n: usize,
    pub max_deg: usize,
    /// `H^k(B)` for `k = 0..=max_deg`.
    pub base: Vec<Option<FgAbGroup>>,
    /// `H̃^k(E)` for `k = 0..=max_deg`.
    pub total: Vec<Option<FgAbGroup>>,
    /// `(-) ⌣ e : H^k(B) -> H^{k+n}(B)`, keyed by `k`.
    pub cup_e: BTreeMap<usize, GroupHom>,
    /// `p^* : H̃^k(B) -> H̃^k(E)`, keyed by `k`.
    pub pullback: BTreeMap<usize, GroupHom>,
    /// `H̃^k(E) -> H^{k+1-n}(B)`, keyed by `k`.
    pub transfer: BTreeMap<usize, GroupHom>,
}

fn base_label(k: i64) -> String {
    format!("H^{k}(B)")
}

fn middle_label(i: usize) -> String {
    if i == 0 {
        "H~0(B)".into()
    } else {
        format!("H^{i}(B)")
    }
}

fn total_label(i: usize) -> String {
    format!("H~{i}(E)")
}

/// `... -> H̃^{i-1}(E) -> H^{i-n}(B) -⌣e-> H̃^i(B) -p*-> H̃^i(E) -> H^{i+1-n}(B) -> ...`
/// for `i = 0..=max_deg`.
pub fn gysin(data: &GysinData) -> Result<LongExactSequence> {
    let m = data.max_deg;
    if data.n == 0 {
        return Err(Error::Sequence("the Euler class must have positive degree".into()));
    }
    if data.base.len() != m + 1 || data.total.len() != m + 1 {
        return Err(Error::Sequence(format!(
            "expected groups in degrees 0..={m} for base and total space"
        )));
    }
    for &k in data.cup_e.keys() {
        if k + data.n > m {
            return Err(Error::Sequence(format!(
                "cup with e from degree {k} lands past degree {m}"
            )));
        }
    }
    if data.transfer.keys().any(|&k| k + 1 > m) {
        return Err(Error::Sequence("transfer map outside the window".into()));
    }
    let n = data.n as i64;
    let base_slot = |k: i64| -> SequenceSlot {
        if k < 0 {
            SequenceSlot::Known(FgAbGroup::trivial())
        } else {
            data.base[k as usize].clone().into()
        }
    };
    let mut seq = LongExactSequence::starting_at(base_label(-n), base_slot(-n));
    for i in 0..=m {
        let k = i as i64 - n;
        if i > 0 {
            let t = data.transfer.get(&(i - 1)).cloned();
            seq.push("δ", t, base_label(k), base_slot(k))?;
        }
        let cup = (k >= 0).then(|| data.cup_e.get(&(k as usize)).cloned()).flatten();
        let mid = if i == 0 {
            SequenceSlot::Known(FgAbGroup::trivial())
        } else {
            data.base[i].clone().into()
        };
        seq.push("⌣e", cup, middle_label(i), mid)?;
        seq.push(
            "p*",
            data.pullback.get(&i).cloned(),
            total_label(i),
            data.total[i].clone().into(),
        )?;
    }
    seq.truncated_end = true;
    Ok(seq)
}

/// `S^1 -> S^5 -> CP^2` with integer coefficients: `B` known to be
/// connected and simply connected, `E` a sphere.
pub fn cp2_preset() -> GysinData {
    let max_deg = 4;
    let mut base = vec![None; max_deg + 1];
    base[0] = Some(FgAbGroup::integers());
    base[1] = Some(FgAbGroup::trivial());
    GysinData {
        modulus: 0,
        n: 2,
        max_deg,
        base,
        total: vec![Some(FgAbGroup::trivial()); max_deg + 1],
        ..Default::default()
    }
}

/// `S^0 -> S^∞ -> RP^∞` with `Z/2` coefficients, up to `max_deg`.
pub fn rp_infinity_preset(max_deg: usize) -> GysinData {
    let mut base = vec![None; max_deg + 1];
    base[0] = Some(FgAbGroup::cyclic(2));
    GysinData {
        modulus: 2,
        n: 1,
        max_deg,
        base,
        total: vec![Some(FgAbGroup::trivial()); max_deg + 1],
        ..Default::default()
    }
}

/// The `⌣e` map out of `H^k(B)`, when the window contains and knows it.
pub fn cup_e_map(seq: &LongExactSequence, k: usize) -> Option<GroupHom> {
    let src = base_label(k as i64);
    (0..seq.edges().len())
        .find(|&i| seq.edges()[i].label == "⌣e" && seq.nodes()[i].label == src)
        .and_then(|i| seq.effective_map(i))
}

/// For each `k` with `H^k(B) -⌣e-> H^{k+n}(B)` in the window: whether that map
/// is known to be an isomorphism.
pub fn cup_e_isomorphisms(seq: &LongExactSequence, data: &GysinData) -> Vec<(usize, bool)> {
    (0..=data.max_deg.saturating_sub(data.n))
        .map(|k| (k, cup_e_map(seq, k).is_some_and(|f| f.is_isomorphism())))
        .collect()
}

/// Powers `e^j` of the Euler class, `e^0 = 1`, as coordinates in
/// `H^{jn}(B)`, while the window determines them.
pub fn euler_powers(seq: &LongExactSequence, data: &GysinData) -> Result<Vec<Vec<BigInt>>> {
    let h0 = seq
        .group_of(&base_label(0))
        .ok_or_else(|| Error::Sequence("H^0(B) is unknown".into()))?;
    if h0.num_generators() != 1 {
        return Err(Error::Sequence("H^0(B) is not cyclic".into()));
    }
    let mut powers = vec![vec![BigInt::one()]];
    let mut k = 0;
    while k + data.n <= data.max_deg {
        let f = cup_e_map(seq, k)
            .ok_or_else(|| Error::Sequence(format!("cup with e from degree {k} is unknown")))?;
        let next = f.apply_coords(powers.last().unwrap());
        powers.push(next);
        k += data.n;
    }
    Ok(powers)
}

fn unit_inverse(c: &BigInt, order: &BigInt) -> Option<BigInt> {
    if order.is_zero() {
        return (c.abs().is_one()).then(|| c.clone());
    }
    let e = c.extended_gcd(order);
    e.gcd.is_one().then(|| e.x.mod_floor(order))
}

/// The cohomology ring of `B` when the solved window shows it is generated
/// by `e`: each `H^{jn}(B)` cyclic with `e^j` a generator, all other
/// degrees trivial.
pub fn gysin_ring(seq: &LongExactSequence, data: &GysinData) -> Result<GradedRing> {
    let groups: Vec<FgAbGroup> = (0..=data.max_deg)
        .map(|k| {
            seq.group_of(&base_label(k as i64))
                .or_else(|| seq.group_of(&middle_label(k)).filter(|_| k > 0))
                .cloned()
                .ok_or_else(|| Error::Sequence(format!("H^{k}(B) is not determined")))
        })
        .collect::<Result<_>>()?;
    let powers = euler_powers(seq, data)?;
    let mut scale = Vec::new();
    for (k, g) in groups.iter().enumerate() {
        if k % data.n != 0 {
            if !g.is_trivial() {
                return Err(Error::Sequence(format!(
                    "H^{k}(B) = {g} is not reached by powers of e"
                )));
            }
            continue;
        }
        let j = k / data.n;
        let p = &powers[j];
        if g.num_generators() != 1 {
            return Err(Error::Sequence(format!("H^{k}(B) = {g} is not cyclic")));
        }
        let c = unit_inverse(&p[0], &g.generator_order(0))
            .ok_or_else(|| Error::Sequence(format!("e^{j} does not generate H^{k}(B)")))?;
        scale.push((k, c));
    }
    // e^j = c_j^{-1} g_j, so g_a g_b = c_a c_b c_{a+b}^{-1} g_{a+b}.
    let inv: BTreeMap<usize, BigInt> = scale.into_iter().collect();
    let mut products = BTreeMap::new();
    for (&a, ca) in &inv {
        for (&b, cb) in &inv {
            if let Some(cab) = inv.get(&(a + b)) {
                let ord = groups[a + b].generator_order(0);
                let c_ab = unit_inverse(cab, &ord).expect("inverse of a unit");
                products.insert((a, 0, b, 0), vec![ca * cb * c_ab]);
            }
        }
    }
    GradedRing::from_parts(data.modulus, groups, products, vec![BigInt::one()])
}

// ---------------------------------------------------------------------------
// Eilenberg-Steenrod

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Suspension,
    Exactness,
    Dimension,
    Additivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Suspension => "suspension",
            Axiom::Exactness => "exactness",
            Axiom::Dimension => "dimension",
            Axiom::Additivity => "additivity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub space: String,
    pub coefficients: String,
    pub checks: Vec<AxiomCheck>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.checks.len()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} with coefficients {}", self.space, self.coefficients)?;
        for c in &self.checks {
            writeln!(f, "  {:<11} {}", c.axiom, if c.passed { "pass" } else { "FAIL" })?;
            for d in &c.details {
                writeln!(f, "      {d}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "{}/{} axioms pass", self.passed(), self.checks.len())
    }
}

const AXIOM_MAX_DEG: i64 = 3;

fn reduced(c: &CellComplex, n: i64, g: &FgAbGroup) -> Result<CohomologyResult> {
    c.reduced_cohomology_result(n, g)
}

fn check_suspension(x: &CellComplex, g: &FgAbGroup) -> Result<AxiomCheck> {
    let sx = x.suspension()?;
    let mut details = Vec::new();
    let mut passed = true;
    for n in -1..=AXIOM_MAX_DEG {
        let lhs = sx.reduced_cohomology(n + 1, g)?;
        let rhs = x.reduced_cohomology(n, g)?;
        if !is_isomorphic(&lhs, &rhs) {
            passed = false;
            details.push(format!("H~{}(ΣX) = {lhs} but H~{n}(X) = {rhs}", n + 1));
        }
    }
    Ok(AxiomCheck {
        axiom: Axiom::Suspension,
        passed,
        details,
    })
}

/// `H̃^n(C_f) -> H̃^n(Y) -> H̃^n(X)` for the cofiber `C_f` of `f : X -> Y`.
pub fn cofiber_sequence(f: &CellularMap, g: &FgAbGroup, n: i64) -> Result<LongExactSequence> {
    let (cone, j) = f.cofiber()?;
    let hc = reduced(&cone, n, g)?;
    let hy = reduced(f.target(), n, g)?;
    let hx = reduced(f.source(), n, g)?;
    let (jm, fm) = if n < 0 {
        (
            GroupHom::zero(&hc.group, &hy.group),
            GroupHom::zero(&hy.group, &hx.group),
        )
    } else {
        (j.induced_with(n, g, &hc, &hy), f.induced_with(n, g, &hy, &hx))
    };
    let mut seq = LongExactSequence::starting_at(format!("H~{n}(Cf)"), SequenceSlot::Known(hc.group));
    seq.push("j*", Some(jm), format!("H~{n}(Y)"), SequenceSlot::Known(hy.group))?;
    seq.push("f*", Some(fm), format!("H~{n}(X)"), SequenceSlot::Known(hx.group))?;
    seq.truncated_start = true;
    seq.truncated_end = true;
    Ok(seq)
}

fn check_exactness(id: &SpaceId, g: &FgAbGroup) -> Result<AxiomCheck> {
    let mut details = Vec::new();
    let mut passed = true;
    for (name, f) in catalog_maps(id)? {
        for n in -1..=AXIOM_MAX_DEG {
            let seq = cofiber_sequence(&f, g, n)?;
            if !seq.check_exact().is_exact() {
                passed = false;
                details.push(format!("cofiber of {name} not exact in degree {n}"));
            }
        }
    }
    Ok(AxiomCheck {
        axiom: Axiom::Exactness,
        passed,
        details,
    })
}

fn check_dimension(g: &FgAbGroup, notes: &mut Vec<String>) -> Result<AxiomCheck> {
    let s0 = SpaceId::Sphere(0).cellular()?;
    let mut details = Vec::new();
    let mut passed = true;
    for n in -2..=4 {
        let h = s0.reduced_cohomology(n, g)?;
        if n == 0 {
            notes.push(format!("H~0(S^0) = {h}"));
        } else if !h.is_trivial() {
            passed = false;
            details.push(format!("H~{n}(S^0) = {h}"));
        }
    }
    Ok(AxiomCheck {
        axiom: Axiom::Dimension,
        passed,
        details,
    })
}

/// `H̃^n(X_1 ∨ ... ∨ X_k) -> H̃^n(X_1) + ... + H̃^n(X_k)` from the inclusions.
pub fn wedge_comparison(parts: &[CellComplex], g: &FgAbGroup, n: i64) -> Result<GroupHom> {
    let (w, incs) = CellComplex::wedge_with_inclusions(parts)?;
    let hw = reduced(&w, n, g)?;
    let hs: Vec<CohomologyResult> = parts.iter().map(|p| reduced(p, n, g)).collect::<Result<_>>()?;
    let sum = direct_sum(&hs.iter().map(|h| h.group.clone()).collect::<Vec<_>>());
    let mut total = GroupHom::zero(&hw.group, &sum.group);
    if n < 0 {
        return Ok(total);
    }
    for (k, inc) in incs.iter().enumerate() {
        let r = inc.induced_with(n, g, &hw, &hs[k]);
        total = total.add(&sum.injections[k].compose(&r)?)?;
    }
    Ok(total)
}

fn check_additivity(id: &SpaceId, x: &CellComplex, g: &FgAbGroup) -> Result<AxiomCheck> {
    let mut families: Vec<(String, Vec<CellComplex>)> = vec![
        (format!("{id} ∨ {id}"), vec![x.clone(), x.clone()]),
        (
            format!("{id} ∨ s1 ∨ s2"),
            vec![
                x.clone(),
                SpaceId::Sphere(1).cellular()?,
                SpaceId::Sphere(2).cellular()?,
            ],
        ),
    ];
    if let SpaceId::Wedge(parts) = id {
        let cs = parts.iter().map(|p| p.cellular()).collect::<Result<Vec<_>>>()?;
        families.push((id.to_string(), cs));
    }
    let mut details = Vec::new();
    let mut passed = true;
    for (name, parts) in &families {
        for n in 0..=AXIOM_MAX_DEG {
            let f = wedge_comparison(parts, g, n)?;
            if !f.is_isomorphism() {
                passed = false;
                details.push(format!(
                    "{name}: H~{n} = {} is not the sum {}",
                    f.source(),
                    f.target()
                ));
            }
        }
    }
    Ok(AxiomCheck {
        axiom: Axiom::Additivity,
        passed,
        details,
    })
}

/// Run the four Eilenberg-Steenrod checks for a catalog space.
pub fn axiom_suite(id: &SpaceId, g: &FgAbGroup) -> Result<AxiomReport> {
    let x = id.cellular()?;
    let mut notes = Vec::new();
    let checks = vec![
        check_suspension(&x, g)?,
        check_exactness(id, g)?,
        check_dimension(g, &mut notes)?,
        check_additivity(id, &x, g)?,
    ];
    Ok(AxiomReport {
        space: id.to_string(),
        coefficients: g.to_string(),
        checks,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::IntMatrix;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn hom(src: &str, dst: &str, rows: &[&[i64]]) -> GroupHom {
        GroupHom::new(g(src), g(dst), IntMatrix::from_rows(rows)).unwrap()
    }

    fn short(f: GroupHom, gm: GroupHom) -> LongExactSequence {
        let mut s = LongExactSequence::starting_at("0", SequenceSlot::Known(g("0")));
        let a = f.source().clone();
        s.push("", None, "A", SequenceSlot::Known(a)).unwrap();
        let b = f.target().clone();
        s.push("f", Some(f), "B", SequenceSlot::Known(b)).unwrap();
        let c = gm.target().clone();
        s.push("g", Some(gm), "C", SequenceSlot::Known(c)).unwrap();
        s.push("", None, "0'", SequenceSlot::Known(g("0"))).unwrap();
        s
    }

    #[test]
    fn identity_is_exact() {
        let mut s = LongExactSequence::starting_at("0", SequenceSlot::Known(g("0")));
        s.push("", None, "G", SequenceSlot::Known(g("Z/6"))).unwrap();
        s.push("id", Some(GroupHom::identity(&g("Z/6"))), "G'", SequenceSlot::Known(g("Z/6")))
            .unwrap();
        s.push("", None, "0'", SequenceSlot::Known(g("0"))).unwrap();
        assert!(s.check_exact().is_exact());
    }

    #[test]
    fn doubling_then_projection() {
        let s = short(hom("Z", "Z", &[&[2]]), hom("Z", "Z/2", &[&[1]]));
        assert!(s.check_exact().is_exact());
        let bad = short(hom("Z", "Z", &[&[2]]), hom("Z", "Z/2", &[&[0]]));
        let r = bad.check_exact();
        assert!(!r.is_exact());
        let failed: Vec<&str> = r.failures().iter().map(|n| n.label.as_str()).collect();
        assert_eq!(failed, vec!["B", "C"]);
    }

    #[test]
    fn push_rejects_misfit_maps() {
        let mut s = LongExactSequence::starting_at("A", SequenceSlot::Known(g("Z")));
        assert!(s
            .push("f", Some(hom("Z/2", "Z/2", &[&[1]])), "B", SequenceSlot::Known(g("Z/2")))
            .is_err());
    }

    #[test]
    fn solve_rules() {
        let mut s = LongExactSequence::starting_at("0", SequenceSlot::Known(g("0")));
        s.push("", None, "A", SequenceSlot::Known(g("Z/3"))).unwrap();
        s.push("f", None, "?", SequenceSlot::Unknown).unwrap();
        s.push("", None, "0'", SequenceSlot::Known(g("0"))).unwrap();
        s.push("", None, "??", SequenceSlot::Unknown).unwrap();
        s.push("", None, "0''", SequenceSlot::Known(g("0"))).unwrap();
        let t = s.solve();
        assert_eq!(t.group(2), Some(&g("Z/3")));
        assert_eq!(t.group(4), Some(&g("0")));
        assert!(t.indeterminate().is_empty());
        assert!(t.check_exact().is_exact());

        let mut e = LongExactSequence::starting_at("0", SequenceSlot::Known(g("0")));
        e.push("", None, "A", SequenceSlot::Known(g("Z/2"))).unwrap();
        e.push("", None, "?", SequenceSlot::Unknown).unwrap();
        e.push("", None, "C", SequenceSlot::Known(g("Z/2"))).unwrap();
        e.push("", None, "0'", SequenceSlot::Known(g("0"))).unwrap();
        assert_eq!(e.solve().indeterminate(), vec![2]);
    }

    #[test]
    fn gysin_cp2() {
        let data = cp2_preset();
        let seq = gysin(&data).unwrap().solve();
        assert_eq!(seq.group_of("H^2(B)"), Some(&g("Z")));
        assert_eq!(seq.group_of("H^3(B)"), Some(&g("0")));
        assert_eq!(seq.group_of("H^4(B)"), Some(&g("Z")));
        assert!(seq.check_exact().is_exact());
        let powers = euler_powers(&seq, &data).unwrap();
        assert_eq!(powers[2], vec![BigInt::one()]);
        let ring = gysin_ring(&seq, &data).unwrap();
        assert_eq!(ring.product(2, 0, 2, 0).coords, vec![BigInt::one()]);
    }

    #[test]
    fn gysin_rp_infinity() {
        let data = rp_infinity_preset(6);
        let seq = gysin(&data).unwrap().solve();
        for k in 0..=6 {
            assert_eq!(seq.group_of(&format!("H^{k}(B)")), Some(&g("Z/2")), "k={k}");
        }
        assert!(cup_e_isomorphisms(&seq, &data).iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn gysin_rejects_misaligned() {
        let mut data = cp2_preset();
        data.cup_e.insert(3, GroupHom::identity(&g("Z")));
        assert!(gysin(&data).is_err());
        let mut data = cp2_preset();
        data.base.pop();
        assert!(gysin(&data).is_err());
    }

    #[test]
    fn mv_circle() {
        let id: SpaceId = "s1".parse().unwrap();
        let cover = id.covering_pair().unwrap();
        let seq = mayer_vietoris(&cover, &g("Z"), 1).unwrap();
        assert!(seq.check_exact().is_exact(), "{seq}");
        assert_eq!(seq.group_of("H^1(X)"), Some(&g("Z")));

        let mut r = reduced_mayer_vietoris(&cover, &g("Z/4"), 1).unwrap();
        assert!(r.check_exact().is_exact(), "{r}");
        let i = r.find("H^1(X)").unwrap();
        r.forget(i);
        let solved = r.solve();
        assert_eq!(solved.group_of("H^1(X)"), Some(&g("Z/4")));
    }

    #[test]
    fn axioms_on_circle() {
        let r = axiom_suite(&"s1".parse().unwrap(), &g("Z")).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.passed(), 4);
    }
}
