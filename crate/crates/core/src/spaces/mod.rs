//! Built-in spaces: minimal cellular models for group computations and
//! small triangulations for cup products and Mayer-Vietoris covers.

mod simplicial;

pub use simplicial::SimplicialComplex;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::complex::{CellComplex, CellularMap};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SpaceId {
    Point,
    Sphere(usize),
    /// Real projective space of the given dimension.
    Rp(usize),
    Cp2,
    Torus,
    Klein,
    Wedge(Vec<SpaceId>),
    Suspension(Box<SpaceId>),
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::Point => write!(f, "pt"),
            SpaceId::Sphere(n) => write!(f, "s{n}"),
            SpaceId::Rp(n) => write!(f, "rp{n}"),
            SpaceId::Cp2 => write!(f, "cp2"),
            SpaceId::Torus => write!(f, "torus"),
            SpaceId::Klein => write!(f, "klein"),
            SpaceId::Wedge(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "wedge:{}", names.join(","))
            }
            SpaceId::Suspension(x) => write!(f, "susp:{x}"),
        }
    }
}

impl FromStr for SpaceId {
    type Err = Error;

    /// `pt`, `s<n>`, `rp<n>` (also `rpN:<n>`), `cp2`, `torus`, `klein`,
    /// `wedge:<id>,<id>,...`, `susp:<id>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownSpace(s.to_string());
        if let Some(rest) = s.strip_prefix("wedge:") {
            let parts = rest
                .split(',')
                .map(|p| p.parse())
                .collect::<Result<Vec<SpaceId>>>()?;
            if parts.is_empty() {
                return Err(unknown());
            }
            return Ok(SpaceId::Wedge(parts));
        }
        if let Some(rest) = s.strip_prefix("susp:") {
            return Ok(SpaceId::Suspension(Box::new(rest.parse()?)));
        }
        let number = |t: &str| -> Result<usize> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(unknown());
            }
            t.parse().map_err(|_| unknown())
        };
        match s {
            "pt" | "point" => Ok(SpaceId::Point),
            "cp2" => Ok(SpaceId::Cp2),
            "torus" => Ok(SpaceId::Torus),
            "klein" => Ok(SpaceId::Klein),
            _ => {
                if let Some(k) = s.strip_prefix("rpN:") {
                    Ok(SpaceId::Rp(number(k)?))
                } else if let Some(k) = s.strip_prefix("rp") {
                    Ok(SpaceId::Rp(number(k)?))
                } else if let Some(k) = s.strip_prefix('s') {
                    Ok(SpaceId::Sphere(number(k)?))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

fn single(d: i64) -> IntMatrix {
    IntMatrix::from_rows(&[[d]])
}

impl SpaceId {
    pub fn wedge_of(parts: &[&str]) -> SpaceId {
        SpaceId::Wedge(parts.iter().map(|p| p.parse().unwrap()).collect())
    }

    /// The minimal cellular model.
    pub fn cellular(&self) -> Result<CellComplex> {
        match self {
            SpaceId::Point => Ok(CellComplex::point()),
            SpaceId::Sphere(0) => CellComplex::new(vec![2], vec![], Some(0)),
            SpaceId::Sphere(n) => {
                let mut cells = vec![0; n + 1];
                cells[0] = 1;
                cells[*n] = 1;
                CellComplex::new(cells, vec![], Some(0))
            }
            SpaceId::Rp(n) => {
                let boundaries = (1..=*n)
                    .map(|k| single(if k % 2 == 0 { 2 } else { 0 }))
                    .collect();
                CellComplex::new(vec![1; n + 1], boundaries, Some(0))
            }
            SpaceId::Cp2 => CellComplex::new(vec![1, 0, 1, 0, 1], vec![], Some(0)),
            SpaceId::Torus => CellComplex::new(vec![1, 2, 1], vec![], Some(0)),
            // 1-cells ordered (l2, l1); the 2-cell is attached along l1 l2 l1 l2^-1
            SpaceId::Klein => CellComplex::new(
                vec![1, 2, 1],
                vec![IntMatrix::zeros(1, 2), IntMatrix::from_rows(&[[0], [2]])],
                Some(0),
            ),
            SpaceId::Wedge(parts) => {
                let models = parts.iter().map(|p| p.cellular()).collect::<Result<Vec<_>>>()?;
                CellComplex::wedge(&models)
            }
            SpaceId::Suspension(x) => x.cellular()?.suspension(),
        }
    }

    /// The built-in triangulation, where one exists.
    pub fn simplicial(&self) -> Result<SimplicialComplex> {
        let none = || Error::NoSimplicialModel(self.to_string());
        match self {
            SpaceId::Point => SimplicialComplex::new(1, vec![]),
            SpaceId::Sphere(0) => SimplicialComplex::new(2, vec![]),
            SpaceId::Sphere(n) if *n <= 4 => {
                // boundary of the (n+1)-simplex
                let facets = (0..n + 2)
                    .map(|skip| (0..n + 2).filter(|&v| v != skip).collect())
                    .collect();
                SimplicialComplex::new(n + 2, facets)
            }
            SpaceId::Torus => SimplicialComplex::new(7, torus_facets()),
            SpaceId::Rp(2) => SimplicialComplex::new(6, to_vecs(&RP2_FACETS)),
            SpaceId::Klein => SimplicialComplex::new(9, to_vecs(&KLEIN_FACETS)),
            SpaceId::Wedge(parts) => {
                let models = parts.iter().map(|p| p.simplicial()).collect::<Result<Vec<_>>>()?;
                Ok(SimplicialComplex::wedge(&models))
            }
            SpaceId::Suspension(x) => Ok(x.simplicial()?.suspension()),
            _ => Err(none()),
        }
    }

    pub fn has_simplicial_model(&self) -> bool {
        self.simplicial().is_ok()
    }

    /// Two subcomplexes covering the built-in triangulation.
    pub fn covering_pair(&self) -> Result<Cover> {
        let x = self.simplicial()?;
        let (a, b): (Vec<Vec<usize>>, Vec<Vec<usize>>) = match self {
            SpaceId::Sphere(1) => (vec![vec![0, 1], vec![1, 2]], vec![vec![0, 2]]),
            SpaceId::Sphere(2) => (
                vec![vec![0, 1, 2], vec![0, 1, 3]],
                vec![vec![0, 2, 3], vec![1, 2, 3]],
            ),
            SpaceId::Torus => {
                let a = to_vecs(&TORUS_CYLINDER);
                let b = x
                    .facets()
                    .iter()
                    .filter(|f| !a.contains(f))
                    .cloned()
                    .collect();
                (a, b)
            }
            _ => {
                return Err(Error::InvalidCover(format!(
                    "no built-in cover for {self}"
                )))
            }
        };
        Cover::new(
            x,
            SimplicialComplex::from_simplices(a)?,
            SimplicialComplex::from_simplices(b)?,
        )
    }
}

fn torus_facets() -> Vec<Vec<usize>> {
    // the 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
    let mut facets = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            let mut f = vec![i, (i + a) % 7, (i + b) % 7];
            f.sort_unstable();
            facets.push(f);
        }
    }
    facets
}

fn to_vecs<const N: usize>(rows: &[[usize; N]]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

// half of the 7-vertex torus; an annulus whose complement is another annulus
const TORUS_CYLINDER: [[usize; 3]; 6] = [
    [0, 1, 3],
    [0, 2, 3],
    [1, 2, 4],
    [1, 3, 4],
    [2, 3, 5],
    [2, 4, 5],
];

// 6-vertex projective plane (antipodal quotient of the icosahedron)
const RP2_FACETS: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 1, 5],
    [1, 2, 4],
    [2, 3, 5],
    [1, 3, 4],
    [2, 4, 5],
    [1, 3, 5],
];

// 3x3 grid on the square, sides glued as a Klein bottle
const KLEIN_FACETS: [[usize; 3]; 18] = [
    [0, 3, 4],
    [0, 1, 4],
    [1, 4, 5],
    [1, 2, 5],
    [2, 5, 6],
    [0, 2, 6],
    [3, 6, 7],
    [3, 4, 7],
    [4, 7, 8],
    [4, 5, 8],
    [3, 5, 8],
    [3, 5, 6],
    [0, 1, 6],
    [1, 6, 7],
    [1, 2, 7],
    [2, 7, 8],
    [0, 2, 8],
    [0, 3, 8],
];

/// Two subcomplexes `A`, `B` with `A ∪ B = X`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub space: SimplicialComplex,
    pub a: SimplicialComplex,
    pub b: SimplicialComplex,
}

impl Cover {
    pub fn new(space: SimplicialComplex, a: SimplicialComplex, b: SimplicialComplex) -> Result<Self> {
        if !a.is_subcomplex_of(&space) || !b.is_subcomplex_of(&space) {
            return Err(Error::InvalidCover("piece is not a subcomplex".into()));
        }
        if a.union(&b) != space.union(&space) {
            return Err(Error::InvalidCover("pieces do not cover the space".into()));
        }
        Ok(Cover { space, a, b })
    }

    pub fn intersection(&self) -> SimplicialComplex {
        self.a.intersection(&self.b)
    }
}

/// Spaces exercised by the axiom checks and cross-model tests.
pub fn catalog() -> Vec<SpaceId> {
    [
        "pt", "s0", "s1", "s2", "s3", "s4", "torus", "klein", "rp2", "rp3", "rp4", "cp2",
        "wedge:s2,s1,s1", "susp:torus",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

/// Spaces with built-in triangulations.
pub fn simplicial_catalog() -> Vec<SpaceId> {
    ["s1", "s2", "s3", "torus", "rp2", "klein", "wedge:s2,s1,s1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Pointed cellular maps into (and out of) a catalog space: identity,
/// basepoint inclusion, skeleton inclusions, and a degree-two self map
/// for spheres of positive dimension.
pub fn catalog_maps(id: &SpaceId) -> Result<Vec<(String, CellularMap)>> {
    let x = id.cellular()?;
    let b = x.basepoint().ok_or(Error::MissingBasepoint)?;
    let mut maps = vec![("identity".to_string(), x.identity_map())];

    let pt = CellComplex::point();
    let mut e = IntMatrix::zeros(x.cell_count(0), 1);
    e.set(b, 0, BigInt::from(1));
    maps.push((
        "basepoint".to_string(),
        CellularMap::new(pt, x.clone(), vec![e])?,
    ));

    for k in 0..x.dim().max(0) as usize {
        let skel = x.skeleton(k);
        let comps = (0..=k).map(|n| IntMatrix::identity(x.cell_count(n as i64))).collect();
        maps.push((
            format!("skeleton {k}"),
            CellularMap::new(skel, x.clone(), comps)?,
        ));
    }

    if let SpaceId::Sphere(n) = id {
        if *n >= 1 {
            let mut comps: Vec<IntMatrix> = (0..=*n)
                .map(|k| IntMatrix::identity(x.cell_count(k as i64)))
                .collect();
            comps[*n] = single(2);
            maps.push((
                "degree 2".to_string(),
                CellularMap::new(x.clone(), x.clone(), comps)?,
            ));
        }
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> SpaceId {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render() {
        for s in ["pt", "s0", "s4", "rp2", "rp7", "cp2", "torus", "klein", "wedge:s2,s1,s1", "susp:rp2"] {
            assert_eq!(id(s).to_string(), s);
        }
        assert_eq!(id("rpN:5"), SpaceId::Rp(5));
        assert_eq!(id("susp:wedge:s1,s1"), SpaceId::Suspension(Box::new(SpaceId::wedge_of(&["s1", "s1"]))));
        for bad in ["", "s", "sx", "rp", "moebius", "wedge:", "susp:q"] {
            assert!(bad.parse::<SpaceId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cellular_models() {
        assert_eq!(id("s2").cellular().unwrap().cells(), &[1, 0, 1]);
        let rp3 = id("rp3").cellular().unwrap();
        assert_eq!(rp3.cells(), &[1, 1, 1, 1]);
        let degrees: Vec<String> = (1..=3).map(|k| rp3.boundary(k).to_string()).collect();
        assert_eq!(degrees, ["[0]", "[2]", "[0]"]);
        let w = id("wedge:s2,s1,s1").cellular().unwrap();
        assert_eq!(w.cells(), &[1, 2, 1]);
        assert!((1..=2).all(|k| w.boundary(k).is_zero()));
    }

    #[test]
    fn fixtures_have_expected_shape() {
        let s2 = id("s2").simplicial().unwrap();
        assert_eq!((s2.vertex_count(), s2.facets().len()), (4, 4));
        let t = id("torus").simplicial().unwrap();
        assert_eq!(t.vertex_count(), 7);
        assert_eq!(t.euler_characteristic(), 0);
        let rp2 = id("rp2").simplicial().unwrap();
        assert_eq!(rp2.vertex_count(), 6);
        assert_eq!(rp2.euler_characteristic(), 1);
        assert!(matches!(id("cp2").simplicial(), Err(Error::NoSimplicialModel(_))));
    }

    #[test]
    fn simplicial_and_cellular_homology_agree() {
        for s in simplicial_catalog() {
            let a = s.simplicial().unwrap().to_cell_complex();
            let b = s.cellular().unwrap();
            assert_eq!(a.euler_characteristic(), b.euler_characteristic(), "{s}");
            for n in 0..5 {
                assert_eq!(a.homology(n), b.homology(n), "{s} H_{n}");
            }
        }
    }

    #[test]
    fn covers() {
        let circle = id("s1").covering_pair().unwrap();
        let i = circle.intersection().to_cell_complex();
        assert_eq!(i.homology(0).to_string(), "Z^2");
        assert_eq!(circle.a.to_cell_complex().homology(1).to_string(), "0");

        let sphere = id("s2").covering_pair().unwrap();
        let eq = sphere.intersection().to_cell_complex();
        assert_eq!(eq.homology(1).to_string(), "Z");
        assert_eq!(eq.homology(0).to_string(), "Z");

        let torus = id("torus").covering_pair().unwrap();
        for piece in [&torus.a, &torus.b] {
            let c = piece.to_cell_complex();
            assert_eq!((c.homology(0).to_string(), c.homology(1).to_string()), ("Z".into(), "Z".into()));
            assert_eq!(c.homology(2).to_string(), "0");
        }
        let both = torus.intersection().to_cell_complex();
        assert_eq!(both.homology(0).to_string(), "Z^2");
        assert_eq!(both.homology(1).to_string(), "Z^2");

        assert!(id("klein").covering_pair().is_err());
    }

    #[test]
    fn catalog_maps_are_chain_maps() {
        for s in catalog() {
            let maps = catalog_maps(&s).unwrap();
            assert!(maps.len() >= 2);
            for (_, f) in maps {
                assert!(f.is_pointed());
            }
        }
    }
}
