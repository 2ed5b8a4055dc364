//! Cup products on simplicial cochains (Alexander-Whitney), cohomology
//! rings as structure constants, and checking ring presentations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abgroup::{from_presentation, FgAbGroup, GroupHom};
use crate::complex::CohomologyResult;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::spaces::SimplicialComplex;

/// A cochain on ordered simplices with coefficients in `Z` (`modulus = 0`)
/// or `Z/m`.
#[derive(Clone, Debug)]
pub struct Cochain {
    complex: Arc<SimplicialComplex>,
    degree: usize,
    modulus: u64,
    values: Vec<BigInt>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.modulus == other.modulus
            && self.values == other.values
            && same_complex(&self.complex, &other.complex)
    }
}

impl Eq for Cochain {}

fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn reduce(x: BigInt, m: u64) -> BigInt {
    if m == 0 {
        x
    } else {
        x.mod_floor(&BigInt::from(m))
    }
}

impl Cochain {
    pub fn new(
        complex: Arc<SimplicialComplex>,
        degree: usize,
        modulus: u64,
        values: Vec<BigInt>,
    ) -> Result<Self> {
        if modulus == 1 {
            return Err(Error::CochainMismatch("modulus 1 gives the zero ring".into()));
        }
        let n = complex.simplex_count(degree as i64);
        if values.len() != n {
            return Err(Error::CochainMismatch(format!(
                "{} values for {n} simplices of dimension {degree}",
                values.len()
            )));
        }
        let values = values.into_iter().map(|v| reduce(v, modulus)).collect();
        Ok(Cochain {
            complex,
            degree,
            modulus,
            values,
        })
    }

    pub fn zero(complex: Arc<SimplicialComplex>, degree: usize, modulus: u64) -> Self {
        let n = complex.simplex_count(degree as i64);
        Cochain::new(complex, degree, modulus, vec![BigInt::zero(); n]).expect("valid shape")
    }

    /// The degree-0 cochain with value 1 on every vertex.
    pub fn constant_one(complex: Arc<SimplicialComplex>, modulus: u64) -> Self {
        let n = complex.vertex_count();
        Cochain::new(complex, 0, modulus, vec![BigInt::one(); n]).expect("valid shape")
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Value on the simplex with the given (sorted) vertices.
    pub fn value_on(&self, simplex: &[usize]) -> Option<&BigInt> {
        if simplex.len() != self.degree + 1 {
            return None;
        }
        self.complex.index_of(simplex).map(|i| &self.values[i])
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if !same_complex(&self.complex, &other.complex) {
            return Err(Error::CochainMismatch("cochains live on different complexes".into()));
        }
        if self.modulus != other.modulus {
            return Err(Error::CochainMismatch(format!(
                "coefficients Z/{} and Z/{} differ",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::CochainMismatch("adding cochains of different degrees".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Cochain::new(self.complex.clone(), self.degree, self.modulus, values)
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let values = self.values.iter().map(|a| a * k).collect();
        Cochain::new(self.complex.clone(), self.degree, self.modulus, values).expect("same shape")
    }

    /// `(δα)(v_0..v_{n+1}) = Σ (-1)^i α(v_0..v̂_i..v_{n+1})`
    pub fn coboundary(&self) -> Cochain {
        let k = &self.complex;
        let values = k
            .simplices(self.degree + 1)
            .iter()
            .map(|s| {
                let mut acc = BigInt::zero();
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let v = &self.values[k.index_of(&face).expect("faces are present")];
                    if i % 2 == 0 {
                        acc += v;
                    } else {
                        acc -= v;
                    }
                }
                acc
            })
            .collect();
        Cochain::new(k.clone(), self.degree + 1, self.modulus, values).expect("valid shape")
    }

    /// Alexander-Whitney cup product: front `p`-face times back `q`-face.
    pub fn cup(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let (p, q) = (self.degree, other.degree);
        let k = &self.complex;
        let values = k
            .simplices(p + q)
            .iter()
            .map(|s| {
                let a = &self.values[k.index_of(&s[..=p]).expect("front face present")];
                if a.is_zero() {
                    return BigInt::zero();
                }
                let b = &other.values[k.index_of(&s[p..]).expect("back face present")];
                a * b
            })
            .collect();
        Cochain::new(k.clone(), p + q, self.modulus, values)
    }
}

/// `α ⌣ β`
pub fn aw_cup(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    alpha.cup(beta)
}

pub fn coefficient_group(modulus: u64) -> FgAbGroup {
    FgAbGroup::cyclic(modulus)
}

fn coefficient_name(modulus: u64) -> String {
    if modulus == 0 {
        "Z".into()
    } else {
        format!("Z/{modulus}")
    }
}

/// `H^n` of a simplicial complex with ring coefficients, with representatives
/// shrunk towards small support.
pub fn cohomology_with_small_representatives(
    complex: &SimplicialComplex,
    n: usize,
    modulus: u64,
) -> CohomologyResult {
    let cells = complex.to_cell_complex();
    let g = coefficient_group(modulus);
    let mut h = cells.cohomology(n as i64, &g);
    let coboundaries: Vec<Vec<BigInt>> = if n == 0 {
        Vec::new()
    } else {
        let d = cells.coboundary(n as i64 - 1, &g);
        d.matrix().columns()
    };
    for i in 0..h.representatives.len() {
        let rep = shrink_support(&h.representatives[i], &coboundaries, modulus);
        h.set_representative(i, rep)
            .expect("adding coboundaries keeps the class");
    }
    h
}

fn support_key(v: &[BigInt]) -> (usize, BigInt, Vec<BigInt>) {
    let support = v.iter().filter(|x| !x.is_zero()).count();
    let weight: BigInt = v.iter().map(|x| x.abs()).sum();
    (support, weight, v.to_vec())
}

/// Greedy descent: add `±` single-simplex coboundaries while the support
/// (then total weight, then lexicographic order) decreases.
fn shrink_support(rep: &[BigInt], coboundaries: &[Vec<BigInt>], modulus: u64) -> Vec<BigInt> {
    let mut best: Vec<BigInt> = rep.iter().map(|x| reduce(x.clone(), modulus)).collect();
    let mut key = support_key(&best);
    for _ in 0..64 {
        let mut improved = false;
        for c in coboundaries {
            for sign in [1i64, -1] {
                let cand: Vec<BigInt> = best
                    .iter()
                    .zip(c)
                    .map(|(a, b)| reduce(a + b * sign, modulus))
                    .collect();
                let k = support_key(&cand);
                if k < key {
                    best = cand;
                    key = k;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    best
}

/// Element of a graded ring: a degree and canonical coordinates there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub coords: Vec<BigInt>,
}

/// A graded ring known through the canonical generators of each degree and
/// the products of pairs of them.
#[derive(Clone, Debug)]
pub struct GradedRing {
    modulus: u64,
    groups: Vec<FgAbGroup>,
    /// `products[(p, i, q, j)]` = coordinates of `g_p,i * g_q,j` in degree `p + q`.
    products: BTreeMap<(usize, usize, usize, usize), Vec<BigInt>>,
    unit: Vec<BigInt>,
    representatives: Vec<Vec<Cochain>>,
}

impl GradedRing {
    /// Assemble a ring from structure constants. Missing products are zero.
    pub fn from_parts(
        modulus: u64,
        groups: Vec<FgAbGroup>,
        products: BTreeMap<(usize, usize, usize, usize), Vec<BigInt>>,
        unit: Vec<BigInt>,
    ) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Shape("a graded ring needs degree 0".into()));
        }
        if unit.len() != groups[0].num_generators() {
            return Err(Error::Shape("unit has the wrong number of coordinates".into()));
        }
        let mut clean = BTreeMap::new();
        for ((p, i, q, j), v) in products {
            let Some(target) = groups.get(p + q) else {
                continue;
            };
            if i >= groups[p].num_generators() || j >= groups[q].num_generators() {
                return Err(Error::Shape(format!("product of missing generators ({p},{i}) ({q},{j})")));
            }
            if v.len() != target.num_generators() {
                return Err(Error::Shape(format!("product ({p},{i}) ({q},{j}) has wrong length")));
            }
            clean.insert((p, i, q, j), target.reduced(v));
        }
        Ok(GradedRing {
            modulus,
            unit: groups[0].reduced(unit),
            groups,
            products: clean,
            representatives: Vec::new(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn max_degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, degree: usize) -> FgAbGroup {
        self.groups.get(degree).cloned().unwrap_or_else(FgAbGroup::trivial)
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    /// Representative cocycles, when the ring came from a simplicial complex.
    pub fn representatives(&self, degree: usize) -> &[Cochain] {
        self.representatives.get(degree).map_or(&[], |v| v.as_slice())
    }

    /// Label of the `i`-th generator in degree `d`, 1-based: `g1_2`.
    pub fn label(degree: usize, i: usize) -> String {
        format!("g{degree}_{}", i + 1)
    }

    pub fn unit(&self) -> RingElement {
        RingElement {
            degree: 0,
            coords: self.unit.clone(),
        }
    }

    pub fn generator(&self, degree: usize, i: usize) -> Option<RingElement> {
        let g = self.groups.get(degree)?;
        (i < g.num_generators()).then(|| RingElement {
            degree,
            coords: g.generator(i).into_coords(),
        })
    }

    pub fn zero(&self, degree: usize) -> RingElement {
        RingElement {
            degree,
            coords: self.group(degree).zero_coords(),
        }
    }

    pub fn element(&self, degree: usize, coords: Vec<BigInt>) -> Result<RingElement> {
        let g = self.group(degree);
        let coords = g.element(coords)?.into_coords();
        Ok(RingElement { degree, coords })
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        if a.degree != b.degree {
            return Err(Error::Shape(format!(
                "adding elements of degrees {} and {}",
                a.degree, b.degree
            )));
        }
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.element(a.degree, coords)
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        let coords = a.coords.iter().map(|x| -x).collect();
        self.element(a.degree, coords).expect("same shape")
    }

    pub fn scale(&self, a: &RingElement, k: &BigInt) -> RingElement {
        let coords = a.coords.iter().map(|x| x * k).collect();
        self.element(a.degree, coords).expect("same shape")
    }

    /// Bilinear extension of the structure constants. Products landing past
    /// the top degree are zero.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let d = a.degree + b.degree;
        let target = self.group(d);
        let mut acc = target.zero_coords();
        if d < self.groups.len() {
            for (i, x) in a.coords.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.coords.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    if let Some(v) = self.products.get(&(a.degree, i, b.degree, j)) {
                        let xy = x * y;
                        for (t, c) in acc.iter_mut().zip(v) {
                            *t += &xy * c;
                        }
                    }
                }
            }
        }
        RingElement {
            degree: d,
            coords: target.reduced(acc),
        }
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        self.group(a.degree).is_zero_coords(&a.coords)
    }

    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> RingElement {
        let a = self.generator(p, i).unwrap_or_else(|| self.zero(p));
        let b = self.generator(q, j).unwrap_or_else(|| self.zero(q));
        self.mul(&a, &b)
    }

    /// All listed generator elements, in degree order.
    pub fn generators(&self) -> Vec<(String, RingElement)> {
        let mut out = Vec::new();
        for (d, g) in self.groups.iter().enumerate() {
            for i in 0..g.num_generators() {
                out.push((Self::label(d, i), self.generator(d, i).unwrap()));
            }
        }
        out
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "coefficients {}", coefficient_name(self.modulus))?;
        for (d, g) in self.groups.iter().enumerate() {
            let labels: Vec<String> = (0..g.num_generators()).map(|i| Self::label(d, i)).collect();
            if labels.is_empty() {
                writeln!(f, "H^{d} = {g}")?;
            } else {
                writeln!(f, "H^{d} = {g}  [{}]", labels.join(", "))?;
            }
        }
        writeln!(f, "unit = {}", fmt_coords(&self.unit))?;
        for (d1, g1) in self.groups.iter().enumerate().skip(1) {
            for (d2, g2) in self.groups.iter().enumerate().skip(d1) {
                if d1 + d2 >= self.groups.len() {
                    continue;
                }
                for i in 0..g1.num_generators() {
                    for j in 0..g2.num_generators() {
                        let p = self.product(d1, i, d2, j);
                        writeln!(
                            f,
                            "{} * {} = {}",
                            Self::label(d1, i),
                            Self::label(d2, j),
                            fmt_coords(&p.coords)
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn fmt_coords(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Cohomology ring of a simplicial complex with coefficients `Z` or `Z/m`
/// through degree `max_deg` (the complex dimension when `None`).
pub fn cohomology_ring(
    complex: &SimplicialComplex,
    modulus: u64,
    max_deg: Option<usize>,
) -> Result<GradedRing> {
    if modulus == 1 {
        return Err(Error::CochainMismatch("modulus 1 gives the zero ring".into()));
    }
    let max_deg = max_deg.unwrap_or(complex.dim());
    let arc = Arc::new(complex.clone());
    let results: Vec<CohomologyResult> = (0..=max_deg)
        .map(|n| cohomology_with_small_representatives(complex, n, modulus))
        .collect();
    let reps: Vec<Vec<Cochain>> = results
        .iter()
        .enumerate()
        .map(|(n, h)| {
            h.representatives
                .iter()
                .map(|v| Cochain::new(arc.clone(), n, modulus, v.clone()).expect("valid shape"))
                .collect()
        })
        .collect();
    let mut products = BTreeMap::new();
    for p in 0..=max_deg {
        for q in 0..=max_deg - p {
            for (i, a) in reps[p].iter().enumerate() {
                for (j, b) in reps[q].iter().enumerate() {
                    let c = a.cup(b)?;
                    let class = results[p + q]
                        .class_of(c.values())
                        .expect("cup of cocycles is a cocycle");
                    products.insert((p, i, q, j), class);
                }
            }
        }
    }
    let one = Cochain::constant_one(arc.clone(), modulus);
    let unit = results[0]
        .class_of(one.values())
        .expect("constants are cocycles");
    let groups = results.iter().map(|h| h.group.clone()).collect();
    let mut ring = GradedRing::from_parts(modulus, groups, products, unit)?;
    ring.representatives = reps;
    Ok(ring)
}

/// A commutative polynomial term: coefficient and exponent per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub exponents: Vec<u32>,
}

/// `R[x_1..x_k]/(relations)` with `R = Z` or `Z/m` and a degree per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub modulus: u64,
    pub generators: Vec<String>,
    /// Declared degrees; `None` when left for inference.
    pub degrees: Vec<Option<usize>>,
    pub relations: Vec<Vec<Term>>,
}

impl RingPresentation {
    fn term_degree(&self, t: &Term, degrees: &[usize]) -> usize {
        t.exponents
            .iter()
            .zip(degrees)
            .map(|(&e, &d)| e as usize * d)
            .sum()
    }

    /// Degree of each relation under `degrees`, or `None` if some relation
    /// is not homogeneous.
    fn relation_degrees(&self, degrees: &[usize]) -> Option<Vec<usize>> {
        self.relations
            .iter()
            .map(|r| {
                let ds: Vec<usize> = r.iter().map(|t| self.term_degree(t, degrees)).collect();
                let first = *ds.first()?;
                ds.iter().all(|&d| d == first).then_some(first)
            })
            .collect()
    }

    /// Monomials (exponent vectors) of total degree `k`.
    fn monomials(degrees: &[usize], k: usize) -> Vec<Vec<u32>> {
        fn go(degrees: &[usize], k: usize, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == degrees.len() {
                if k == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let d = degrees[i];
            let max_e = k.checked_div(d).unwrap_or(0);
            for e in 0..=max_e {
                cur.push(e as u32);
                go(degrees, k - e * d, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(degrees, k, 0, &mut Vec::new(), &mut out);
        out
    }

    /// The degree-`k` part of the presented ring as an abelian group,
    /// together with its monomial basis and the change of coordinates.
    fn graded_piece(&self, degrees: &[usize], k: usize) -> (Vec<Vec<u32>>, crate::abgroup::Presentation) {
        let monos = Self::monomials(degrees, k);
        let pos = |e: &[u32]| monos.iter().position(|m| m == e);
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        let rel_degs = self.relation_degrees(degrees).unwrap_or_default();
        for (r, &rd) in self.relations.iter().zip(&rel_degs) {
            if rd > k {
                continue;
            }
            for u in Self::monomials(degrees, k - rd) {
                let mut col = vec![BigInt::zero(); monos.len()];
                for t in r {
                    let e: Vec<u32> = t.exponents.iter().zip(&u).map(|(a, b)| a + b).collect();
                    if let Some(i) = pos(&e) {
                        col[i] += &t.coeff;
                    }
                }
                cols.push(col);
            }
        }
        if self.modulus != 0 {
            for i in 0..monos.len() {
                let mut col = vec![BigInt::zero(); monos.len()];
                col[i] = BigInt::from(self.modulus);
                cols.push(col);
            }
        }
        let rel = IntMatrix::from_columns(monos.len(), &cols);
        let pres = from_presentation(monos.len(), &rel).expect("consistent shape");
        (monos, pres)
    }

    /// Degree assignments to try: the declared ones, or every homogeneous
    /// assignment with degrees in `1..=max_deg`.
    fn degree_assignments(&self, max_deg: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for d in &self.degrees {
            let choices: Vec<usize> = match d {
                Some(d) => vec![*d],
                None => (1..=max_deg.max(1)).collect(),
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out.retain(|a| self.relation_degrees(a).is_some());
        out
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", coefficient_name(self.modulus), self.generators.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.fmt_poly(r)).collect();
            write!(f, "/({})", rels.join(","))?;
        }
        let degs: Vec<String> = self
            .generators
            .iter()
            .zip(&self.degrees)
            .filter_map(|(g, d)| d.map(|d| format!("deg {g}={d}")))
            .collect();
        if !degs.is_empty() {
            write!(f, " {}", degs.join(", "))?;
        }
        Ok(())
    }
}

impl RingPresentation {
    fn fmt_poly(&self, terms: &[Term]) -> String {
        let mut s = String::new();
        for (k, t) in terms.iter().enumerate() {
            let mut mono = String::new();
            for (g, &e) in self.generators.iter().zip(&t.exponents) {
                match e {
                    0 => {}
                    1 => mono.push_str(g),
                    e => mono.push_str(&format!("{g}^{e}")),
                }
            }
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k > 0 {
                s.push_str(if neg { "-" } else { "+" });
            } else if neg {
                s.push('-');
            }
            if !abs.is_one() || mono.is_empty() {
                s.push_str(&abs.to_string());
            }
            s.push_str(&mono);
        }
        s
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (start < self.pos).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    /// A letter followed by digits.
    fn name(&mut self) -> Option<String> {
        self.skip_ws();
        let c = *self.chars.get(self.pos)?;
        if !c.is_ascii_alphabetic() {
            return None;
        }
        let start = self.pos;
        self.pos += 1;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        (start < self.pos).then(|| self.chars[start..self.pos].iter().collect())
    }
}

impl FromStr for RingPresentation {
    type Err = Error;

    /// `Z[x,y]/(2y,x^2,y^2,xy)`, `Z/2[x]`, optionally followed by degree
    /// annotations `deg x=1, deg y=2`. A bare `Z` or `Z/m` is the ring with
    /// no generators.
    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer::new(s);
        lx.expect('Z')?;
        let mut modulus = 0u64;
        if lx.eat('/') {
            let pos = lx.pos;
            let m = lx
                .number()
                .ok_or_else(|| Error::parse(lx.pos, "expected a modulus"))?;
            modulus = m
                .to_u64()
                .filter(|&m| m >= 2)
                .ok_or_else(|| Error::parse(pos, "modulus must be at least 2"))?;
            // `Z/2Z[x]` spelling
            if lx.peek() == Some('Z') {
                lx.pos += 1;
            }
        }
        let mut generators: Vec<String> = Vec::new();
        if lx.eat('[') {
            if !lx.eat(']') {
                loop {
                    let pos = lx.pos;
                    let g = lx.name().ok_or_else(|| Error::parse(lx.pos, "expected a generator name"))?;
                    if generators.contains(&g) {
                        return Err(Error::parse(pos, format!("generator `{g}` repeated")));
                    }
                    generators.push(g);
                    if lx.eat(']') {
                        break;
                    }
                    lx.expect(',')?;
                }
            }
        }
        let mut relations = Vec::new();
        if lx.eat('/') {
            lx.expect('(')?;
            loop {
                relations.push(parse_poly(&mut lx, &generators)?);
                if lx.eat(')') {
                    break;
                }
                lx.expect(',')?;
            }
        }
        let mut degrees = vec![None; generators.len()];
        loop {
            while lx.eat(',') || lx.eat(';') {}
            if lx.peek().is_none() {
                break;
            }
            let pos = lx.pos;
            if lx.word().as_deref() != Some("deg") {
                return Err(Error::parse(pos, "expected `deg <generator>=<degree>`"));
            }
            let pos = lx.pos;
            let g = lx.name().ok_or_else(|| Error::parse(lx.pos, "expected a generator name"))?;
            let i = generators
                .iter()
                .position(|x| *x == g)
                .ok_or_else(|| Error::parse(pos, format!("unknown generator `{g}`")))?;
            lx.expect('=')?;
            let pos = lx.pos;
            let d = lx
                .number()
                .and_then(|d| d.to_usize())
                .ok_or_else(|| Error::parse(pos, "expected a degree"))?;
            degrees[i] = Some(d);
        }
        Ok(RingPresentation {
            modulus,
            generators,
            degrees,
            relations,
        })
    }
}

fn parse_poly(lx: &mut Lexer, gens: &[String]) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigInt::one();
        if lx.eat('-') {
            sign = -sign;
        } else if !first && !lx.eat('+') {
            break;
        }
        first = false;
        let coeff = lx.number();
        lx.eat('*');
        let mut exponents = vec![0u32; gens.len()];
        let mut any = false;
        loop {
            let pos = lx.pos;
            let save = lx.pos;
            let Some(name) = lx.name() else {
                lx.pos = save;
                break;
            };
            let i = gens
                .iter()
                .position(|g| *g == name)
                .ok_or_else(|| Error::parse(pos, format!("unknown generator `{name}`")))?;
            let mut e = 1u32;
            if lx.eat('^') {
                let pos = lx.pos;
                e = lx
                    .number()
                    .and_then(|n| n.to_u32())
                    .ok_or_else(|| Error::parse(pos, "expected an exponent"))?;
            }
            exponents[i] += e;
            any = true;
            lx.eat('*');
        }
        if coeff.is_none() && !any {
            return Err(Error::parse(lx.pos, "expected a term"));
        }
        let coeff = coeff.unwrap_or_else(BigInt::one) * sign;
        terms.push(Term { coeff, exponents });
    }
    Ok(terms)
}

/// Outcome of a presentation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatch {
    pub matched: bool,
    /// Degrees used for the claim's generators.
    pub degrees: Vec<usize>,
    /// Image of each claim generator, when matched.
    pub witness: Vec<(String, RingElement)>,
    pub reason: Option<String>,
}

const MAX_CANDIDATES: usize = 4096;

/// Candidate images for a generator of degree `d`: unit multiples of the
/// canonical generators first, then other elements with free coordinates
/// in `{-1, 0, 1}` and every torsion residue.
fn candidates(ring: &GradedRing, d: usize) -> Vec<Vec<BigInt>> {
    let g = ring.group(d);
    let n = g.num_generators();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        for u in crate::abgroup::units(&g.generator_order(i)) {
            let mut v = g.zero_coords();
            v[i] = u;
            let v = g.reduced(v);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    let mut all = vec![Vec::new()];
    for i in 0..n {
        let order = g.generator_order(i);
        let range: Vec<BigInt> = if order.is_zero() {
            vec![BigInt::zero(), BigInt::one(), -BigInt::one()]
        } else {
            let m = order.to_usize().unwrap_or(usize::MAX).min(64);
            (0..m).map(BigInt::from).collect()
        };
        all = all
            .into_iter()
            .flat_map(|p: Vec<BigInt>| {
                range.iter().map(move |r| {
                    let mut v = p.clone();
                    v.push(r.clone());
                    v
                })
            })
            .take(MAX_CANDIDATES)
            .collect();
    }
    for v in all {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn evaluate_monomial(ring: &GradedRing, images: &[RingElement], e: &[u32]) -> RingElement {
    let mut acc = ring.unit();
    for (img, &k) in images.iter().zip(e) {
        for _ in 0..k {
            acc = ring.mul(&acc, img);
        }
    }
    acc
}

fn check_assignment(
    ring: &GradedRing,
    claim: &RingPresentation,
    degrees: &[usize],
    images: &[RingElement],
    max_deg: usize,
) -> bool {
    for r in &claim.relations {
        let d = claim.term_degree(&r[0], degrees);
        if d > max_deg {
            continue;
        }
        let mut acc = ring.zero(d);
        for t in r {
            let m = evaluate_monomial(ring, images, &t.exponents);
            acc = ring.add(&acc, &ring.scale(&m, &t.coeff)).expect("same degree");
        }
        if !ring.is_zero(&acc) {
            return false;
        }
    }
    for k in 0..=max_deg {
        let (monos, pres) = claim.graded_piece(degrees, k);
        let target = ring.group(k);
        let mono_images: Vec<Vec<BigInt>> = monos
            .iter()
            .map(|m| evaluate_monomial(ring, images, m).coords)
            .collect();
        let cols: Vec<Vec<BigInt>> = (0..pres.group.num_generators())
            .map(|j| {
                let mut acc = target.zero_coords();
                for (i, img) in mono_images.iter().enumerate() {
                    let c = pres.from_canonical.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    for (a, b) in acc.iter_mut().zip(img) {
                        *a += c * b;
                    }
                }
                acc
            })
            .collect();
        let m = IntMatrix::from_columns(target.num_generators(), &cols);
        match GroupHom::new(pres.group.clone(), target, m) {
            Ok(f) if f.is_isomorphism() => {}
            _ => return false,
        }
    }
    true
}

/// Decide whether `ring` is presented by `claim` through degree `max_deg`:
/// search generator images (unit multiples and small combinations of the
/// computed generators) so that the relations hold and the induced map
/// from each graded piece of the claim is an isomorphism.
pub fn match_presentation(
    ring: &GradedRing,
    claim: &RingPresentation,
    max_deg: Option<usize>,
) -> PresentationMatch {
    let max_deg = max_deg.unwrap_or(ring.max_degree()).min(ring.max_degree());
    let fail = |reason: String| PresentationMatch {
        matched: false,
        degrees: Vec::new(),
        witness: Vec::new(),
        reason: Some(reason),
    };
    if claim.modulus != ring.modulus {
        return fail(format!(
            "claim is over {} but the ring is over {}",
            coefficient_name(claim.modulus),
            coefficient_name(ring.modulus)
        ));
    }
    let assignments = claim.degree_assignments(max_deg);
    if assignments.is_empty() {
        return fail("relations are not homogeneous for any degree assignment".into());
    }
    for degrees in assignments {
        let cands: Vec<Vec<Vec<BigInt>>> = degrees.iter().map(|&d| candidates(ring, d)).collect();
        if cands.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; degrees.len()];
        let mut tried = 0usize;
        loop {
            let images: Vec<RingElement> = idx
                .iter()
                .zip(&degrees)
                .zip(&cands)
                .map(|((&i, &d), c)| RingElement {
                    degree: d,
                    coords: c[i].clone(),
                })
                .collect();
            if check_assignment(ring, claim, &degrees, &images, max_deg) {
                return PresentationMatch {
                    matched: true,
                    witness: claim.generators.iter().cloned().zip(images).collect(),
                    degrees,
                    reason: None,
                };
            }
            tried += 1;
            if tried > 200_000 {
                break;
            }
            // odometer over candidate lists
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < cands[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    fail("no assignment of generators realizes the claimed presentation".into())
}
