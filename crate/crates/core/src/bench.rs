//! Element expressions such as `g1(1) cup g2(1)` evaluated in the canonical
//! form of a cohomology group, and the built-in benchmark suite.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroup::FgAbGroup;
use crate::cup::{cohomology_ring, GradedRing, RingElement};
use crate::error::{Error, Result};
use crate::sequences::{cp2_preset, gysin, gysin_ring};
use crate::spaces::SpaceId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `g_index^(degree)`, `index` counted from 1.
    Gen { index: usize, degree: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Cup(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn has_cup(&self) -> bool {
        match self {
            Expr::Gen { .. } => false,
            Expr::Cup(..) => true,
            Expr::Neg(a) => a.has_cup(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.has_cup() || b.has_cup(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen { index, degree } => write!(f, "g{index}({degree})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Cup(a, b) => write!(f, "({a} cup {b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat("cup") || self.eat("⌣") || self.eat("∪") {
            lhs = Expr::Cup(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return Err(Error::parse(self.pos, "expected `)`"));
            }
            return Ok(e);
        }
        self.skip_ws();
        let at = self.pos;
        if !self.eat("g") {
            return Err(Error::parse(at, "expected a generator like g(1) or g2(1)"));
        }
        let index = self.number().unwrap_or(1);
        if index == 0 {
            return Err(Error::parse(at, "generators are numbered from 1"));
        }
        if !self.eat("(") {
            return Err(Error::parse(self.pos, "expected `(` and a degree"));
        }
        self.skip_ws();
        let degree = self
            .number()
            .ok_or_else(|| Error::parse(self.pos, "expected a degree"))?;
        if !self.eat(")") {
            return Err(Error::parse(self.pos, "expected `)`"));
        }
        Ok(Expr::Gen { index, degree })
    }
}

/// Parse `g(1)`, `g2(1)`, sums, differences, negation, `cup` and parentheses.
pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { src: s, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != s.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

/// `0` for `Z`, `m` for `Z/m`, `None` for other coefficient groups.
pub fn ring_modulus(g: &FgAbGroup) -> Option<u64> {
    match (g.free_rank(), g.invariant_factors()) {
        (1, []) => Some(0),
        (0, [m]) => m.to_u64(),
        _ => None,
    }
}

/// Groups (and, when available, products) used to evaluate expressions.
pub struct Evaluator {
    groups: Vec<FgAbGroup>,
    ring: Option<GradedRing>,
}

impl Evaluator {
    /// Prefers the simplicial cohomology ring; falls back to cellular groups
    /// when no products are needed, and to the Gysin ring for `cp2`.
    pub fn new(space: &SpaceId, coeff: &FgAbGroup, need_cup: bool) -> Result<Self> {
        let modulus = ring_modulus(coeff);
        if let Some(m) = modulus {
            if space.has_simplicial_model() {
                let ring = cohomology_ring(&space.simplicial()?, m, None)?;
                return Ok(Evaluator {
                    groups: ring.groups().to_vec(),
                    ring: Some(ring),
                });
            }
            if *space == SpaceId::Cp2 && m == 0 && need_cup {
                let data = cp2_preset();
                let seq = gysin(&data)?.solve();
                let ring = gysin_ring(&seq, &data)?;
                return Ok(Evaluator {
                    groups: ring.groups().to_vec(),
                    ring: Some(ring),
                });
            }
        }
        if need_cup {
            return Err(if modulus.is_none() {
                Error::Expression(format!("cup products need Z or Z/m coefficients, not {coeff}"))
            } else {
                Error::NoSimplicialModel(space.to_string())
            });
        }
        let x = space.cellular()?;
        let groups = (0..=x.dim().max(0)).map(|n| x.cohomology(n, coeff).group).collect();
        Ok(Evaluator { groups, ring: None })
    }

    pub fn group(&self, degree: usize) -> FgAbGroup {
        self.groups.get(degree).cloned().unwrap_or_else(FgAbGroup::trivial)
    }

    pub fn eval(&self, e: &Expr) -> Result<RingElement> {
        match e {
            Expr::Gen { index, degree } => {
                let g = self.group(*degree);
                if *index > g.num_generators() {
                    return Err(Error::Expression(format!(
                        "g{index}({degree}) does not exist: H^{degree} = {g}"
                    )));
                }
                Ok(RingElement {
                    degree: *degree,
                    coords: g.generator(index - 1).into_coords(),
                })
            }
            Expr::Add(a, b) => self.combine(a, b, false),
            Expr::Sub(a, b) => self.combine(a, b, true),
            Expr::Neg(a) => {
                let x = self.eval(a)?;
                let g = self.group(x.degree);
                Ok(RingElement {
                    degree: x.degree,
                    coords: g.reduced(x.coords.iter().map(|v| -v).collect()),
                })
            }
            Expr::Cup(a, b) => {
                let ring = self
                    .ring
                    .as_ref()
                    .ok_or_else(|| Error::Expression("no cup product available".into()))?;
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                Ok(ring.mul(&x, &y))
            }
        }
    }

    fn combine(&self, a: &Expr, b: &Expr, subtract: bool) -> Result<RingElement> {
        let (x, y) = (self.eval(a)?, self.eval(b)?);
        if x.degree != y.degree {
            return Err(Error::Expression(format!(
                "cannot add degrees {} and {}",
                x.degree, y.degree
            )));
        }
        let g = self.group(x.degree);
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(p, q)| if subtract { p - q } else { p + q })
            .collect();
        Ok(RingElement {
            degree: x.degree,
            coords: g.reduced(coords),
        })
    }
}

/// Expected value of a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Coords(Vec<i64>),
    UpToSign(Vec<i64>),
    Zero,
    /// Generates a cyclic group.
    Generator,
}

impl Expected {
    pub fn holds(&self, group: &FgAbGroup, value: &[BigInt]) -> bool {
        let big = |v: &[i64]| group.reduced(v.iter().map(|&x| BigInt::from(x)).collect());
        match self {
            Expected::Coords(v) => v.len() == value.len() && big(v) == value,
            Expected::UpToSign(v) => {
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                v.len() == value.len() && (big(v) == value || big(&neg) == value)
            }
            Expected::Zero => group.is_zero_coords(value),
            Expected::Generator => {
                group.num_generators() == 1 && {
                    let ord = group.generator_order(0);
                    if ord.is_zero() {
                        value[0].abs().is_one()
                    } else {
                        num_integer::Integer::gcd(&value[0], &ord).is_one()
                    }
                }
            }
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Coords(v) => write!(f, "{v:?}"),
            Expected::UpToSign(v) => write!(f, "±{v:?}"),
            Expected::Zero => write!(f, "0"),
            Expected::Generator => write!(f, "generator"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchCase {
    pub space: String,
    pub coeff: String,
    pub degree: usize,
    pub expr: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl BenchCase {
    pub fn new(space: &str, coeff: &str, degree: usize, expr: &str, expected: Option<Expected>) -> Self {
        BenchCase {
            space: space.into(),
            coeff: coeff.into(),
            degree,
            expr: expr.into(),
            expected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    Match { group: String, value: Vec<i64> },
    Mismatch { group: String, value: Vec<i64>, expected: Expected },
    Computed { group: String, value: Vec<i64> },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: BenchCase,
    #[serde(flatten)]
    pub status: CaseStatus,
    pub elapsed_us: u64,
}

impl CaseResult {
    pub fn is_failure(&self) -> bool {
        matches!(self.status, CaseStatus::Mismatch { .. } | CaseStatus::Error { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub cases: Vec<CaseResult>,
}

impl RunReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| c.is_failure()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

fn evaluate(case: &BenchCase) -> Result<(FgAbGroup, Vec<BigInt>)> {
    let space: SpaceId = case.space.parse()?;
    let coeff: FgAbGroup = case.coeff.parse()?;
    let expr = parse_expr(&case.expr)?;
    let ev = Evaluator::new(&space, &coeff, expr.has_cup())?;
    let value = ev.eval(&expr)?;
    if value.degree != case.degree {
        return Err(Error::Expression(format!(
            "expression has degree {} but the case is in degree {}",
            value.degree, case.degree
        )));
    }
    Ok((ev.group(case.degree), value.coords))
}

fn to_small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Expression(format!("coordinate {x} does not fit in 64 bits")))
        })
        .collect()
}

/// Evaluate one case. Never panics on bad input; failures become
/// [`CaseStatus::Error`].
pub fn run_case(case: &BenchCase) -> CaseResult {
    let start = Instant::now();
    let outcome = evaluate(case).and_then(|(g, v)| Ok((g.clone(), to_small(&v)?, v)));
    let status = match outcome {
        Err(e) => CaseStatus::Error {
            message: e.to_string(),
        },
        Ok((g, value, big)) => {
            let group = g.to_string();
            match &case.expected {
                None => CaseStatus::Computed { group, value },
                Some(exp) if exp.holds(&g, &big) => CaseStatus::Match { group, value },
                Some(exp) => CaseStatus::Mismatch {
                    group,
                    value,
                    expected: exp.clone(),
                },
            }
        }
    };
    CaseResult {
        case: case.clone(),
        status,
        elapsed_us: start.elapsed().as_micros() as u64,
    }
}

pub fn parse_suite(json: &str) -> Result<Vec<BenchCase>> {
    serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))
}

/// Group arithmetic on spheres, tori, wedges and projective planes, the torus/wedge and `RP^2` cup
/// computations, and the `CP^2` square of the generator.
pub fn builtin_suite() -> Vec<BenchCase> {
    use Expected::*;
    let c = |v: &[i64]| Some(Coords(v.to_vec()));
    let mut out = Vec::new();
    for n in 1..=3usize {
        let s = format!("s{n}");
        let g = format!("g({n})");
        out.push(BenchCase::new(&s, "Z", n, &g, c(&[1])));
        out.push(BenchCase::new(&s, "Z", n, &format!("{g} + {g}"), c(&[2])));
        out.push(BenchCase::new(&s, "Z", n, &format!("-{g}"), c(&[-1])));
        out.push(BenchCase::new(&s, "Z/2", n, &g, c(&[1])));
        out.push(BenchCase::new(&s, "Z/2", n, &format!("{g} + {g}"), c(&[0])));
        out.push(BenchCase::new(&s, "Z/2", n, &format!("-{g}"), c(&[1])));
    }
    for (space, cup_nonzero) in [("torus", true), ("wedge:s2,s1,s1", false)] {
        for coeff in ["Z", "Z/2"] {
            out.push(BenchCase::new(space, coeff, 1, "g1(1) + g2(1)", c(&[1, 1])));
            out.push(BenchCase::new(space, coeff, 1, "g1(1) - g2(1)", c(&[1, -1])));
            out.push(BenchCase::new(space, coeff, 2, "g(2)", c(&[1])));
            let (single, double) = match (cup_nonzero, coeff) {
                (false, _) => (Zero, Zero),
                (true, "Z") => (Generator, UpToSign(vec![2])),
                (true, _) => (Generator, Zero),
            };
            out.push(BenchCase::new(space, coeff, 2, "g1(1) cup g2(1)", Some(single)));
            out.push(BenchCase::new(
                space,
                coeff,
                2,
                "(g1(1) + g1(1)) cup g2(1)",
                Some(double),
            ));
        }
    }
    out.push(BenchCase::new("rp2", "Z/2", 1, "g(1)", c(&[1])));
    out.push(BenchCase::new("rp2", "Z/2", 1, "g(1) + g(1)", c(&[0])));
    out.push(BenchCase::new("rp2", "Z/2", 1, "-g(1)", c(&[1])));
    out.push(BenchCase::new("rp2", "Z", 2, "g(2)", c(&[1])));
    out.push(BenchCase::new("rp2", "Z", 2, "g(2) + g(2)", c(&[0])));
    out.push(BenchCase::new("rp2", "Z", 2, "-g(2)", c(&[1])));
    out.push(BenchCase::new("rp2", "Z/2", 2, "g(2)", c(&[1])));
    out.push(BenchCase::new("rp2", "Z/2", 2, "g1(1) cup g1(1)", c(&[1])));
    out.push(BenchCase::new("klein", "Z", 1, "g(1)", c(&[1])));
    out.push(BenchCase::new("klein", "Z", 1, "g(1) + g(1)", c(&[2])));
    out.push(BenchCase::new("klein", "Z", 1, "-g(1)", c(&[-1])));
    out.push(BenchCase::new("klein", "Z/2", 1, "g1(1) + g2(1)", c(&[1, 1])));
    out.push(BenchCase::new("klein", "Z/2", 1, "g1(1) - g2(1)", c(&[1, 1])));
    out.push(BenchCase::new("klein", "Z", 2, "g(2)", c(&[1])));
    out.push(BenchCase::new("klein", "Z", 2, "g1(1) cup g1(1)", Some(Zero)));
    out.push(BenchCase::new("klein", "Z/2", 2, "g(2)", c(&[1])));
    // depends on the chosen basis of H^1
    out.push(BenchCase::new("klein", "Z/2", 2, "g1(1) cup g2(1)", None));
    out.push(BenchCase::new("klein", "Z/2", 2, "(g1(1) + g1(1)) cup g2(1)", Some(Zero)));
    for e in ["g(1)", "g(1) + g(1)", "-g(1)"] {
        let v = if e.contains('+') { 0 } else { 1 };
        out.push(BenchCase::new("rpN:4", "Z/2", 1, e, c(&[v])));
    }
    out.push(BenchCase::new("cp2", "Z", 4, "g(2) cup g(2)", Some(Generator)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expressions() {
        let e = parse_expr("(g1(1) + g1(1)) cup g2(1)").unwrap();
        assert!(e.has_cup());
        assert_eq!(e.to_string(), "((g1(1) + g1(1)) cup g2(1))");
        assert_eq!(parse_expr("-g(2)").unwrap().to_string(), "-g1(2)");
        assert!(matches!(parse_expr("g(1) +"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_expr("h(1)"), Err(Error::Parse { pos: 0, .. })));
        assert!(parse_expr("g0(1)").is_err());
    }

    #[test]
    fn circle_arithmetic() {
        let r = run_case(&BenchCase::new("s1", "Z", 1, "g(1) + g(1)", Some(Expected::Coords(vec![2]))));
        assert!(matches!(r.status, CaseStatus::Match { .. }), "{r:?}");
        let r = run_case(&BenchCase::new("s1", "Z", 1, "g2(1)", None));
        assert!(matches!(r.status, CaseStatus::Error { .. }));
        let r = run_case(&BenchCase::new("s1", "Z", 2, "g(1)", None));
        assert!(r.is_failure());
    }

    #[test]
    fn report_round_trip() {
        let cases = vec![
            BenchCase::new("s2", "Z/2", 2, "g(2)", Some(Expected::UpToSign(vec![1]))),
            BenchCase::new("s2", "Z", 2, "g(2) cup g(2)", None),
        ];
        let report = RunReport {
            cases: cases.iter().map(run_case).collect(),
        };
        assert_eq!(RunReport::from_json(&report.to_json()).unwrap(), report);
        let suite = serde_json::to_string(&cases).unwrap();
        assert_eq!(parse_suite(&suite).unwrap(), cases);
    }
}
