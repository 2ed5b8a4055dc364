use cohom::abgroup::{direct_sum, is_isomorphic, tensor, FgAbGroup};
use cohom::complex::CellComplex;
use cohom::spaces::{catalog, simplicial_catalog, SpaceId};
use num_integer::Integer;

fn g(s: &str) -> FgAbGroup {
    s.parse().unwrap()
}

/// `Tor(A, B)` for finitely generated groups: one `Z/gcd` per pair of
/// torsion summands.
fn tor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for x in a.invariant_factors() {
        for y in b.invariant_factors() {
            orders.push(x.gcd(y));
        }
    }
    FgAbGroup::from_cyclics(&orders)
}

#[test]
fn uct_and_mod_p_agree_on_the_catalog() {
    for id in catalog() {
        let x = id.cellular().unwrap();
        for p in [2u64, 3, 5] {
            let zp = FgAbGroup::cyclic(p);
            for n in 0..=4 {
                let direct = x.cohomology(n, &zp).group;
                let uct = x.uct_cohomology(n, &zp);
                let dim = x.cohomology_direct_mod_p(n, p).unwrap();
                assert_eq!(direct, uct, "{id} n={n} p={p}");
                assert_eq!(direct, zp.power(dim), "{id} n={n} p={p}");
            }
        }
        for coeff in ["Z", "Z/4", "Z + Z/6"] {
            let c = g(coeff);
            for n in 0..=4 {
                assert_eq!(x.cohomology(n, &c).group, x.uct_cohomology(n, &c), "{id} {coeff} n={n}");
            }
        }
    }
}

#[test]
fn cellular_and_simplicial_models_agree() {
    for id in simplicial_catalog() {
        let cw = id.cellular().unwrap();
        let simp = id.simplicial().unwrap().to_cell_complex();
        assert_eq!(cw.euler_characteristic(), simp.euler_characteristic(), "{id}");
        for coeff in ["Z", "Z/2", "Z/3", "Z + Z/4"] {
            let c = g(coeff);
            for n in 0..=4 {
                assert_eq!(cw.cohomology(n, &c).group, simp.cohomology(n, &c).group, "{id} {coeff} n={n}");
            }
        }
    }
}

#[test]
fn kunneth_for_products_of_catalog_spaces() {
    let names = ["s1", "s2", "rp2", "klein", "rp3"];
    for a in names {
        for b in names {
            let x = a.parse::<SpaceId>().unwrap().cellular().unwrap();
            let y = b.parse::<SpaceId>().unwrap().cellular().unwrap();
            let xy = CellComplex::tensor_complex(&x, &y).unwrap();
            for n in 0..=(x.dim() + y.dim()) {
                let mut parts = Vec::new();
                for i in 0..=n {
                    parts.push(tensor(&x.homology(i), &y.homology(n - i)));
                }
                for i in 0..n {
                    parts.push(tor(&x.homology(i), &y.homology(n - 1 - i)));
                }
                let expected = direct_sum(&parts).group;
                assert!(is_isomorphic(&xy.homology(n), &expected), "{a} x {b} n={n}");
            }
        }
    }
}

#[test]
fn suspension_shifts_reduced_cohomology() {
    for id in catalog() {
        let x = id.cellular().unwrap();
        let s = x.suspension().unwrap();
        assert_eq!(s.euler_characteristic(), 2 - x.euler_characteristic(), "{id}");
        for n in 0..=4 {
            let z6 = g("Z/6");
            assert_eq!(
                s.reduced_cohomology(n + 1, &z6).unwrap(),
                x.reduced_cohomology(n, &z6).unwrap(),
                "{id} n={n}"
            );
        }
    }
}

#[test]
fn euler_characteristic_from_betti_numbers() {
    for id in catalog() {
        let x = id.cellular().unwrap();
        let chi: i64 = (0..=x.dim())
            .map(|n| {
                let b = x.homology(n).free_rank() as i64;
                if n % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        assert_eq!(chi, x.euler_characteristic(), "{id}");
    }
}

#[test]
fn cochain_representatives_are_cocycles() {
    for id in catalog() {
        let x = id.cellular().unwrap();
        for coeff in ["Z", "Z/2 + Z/4"] {
            let c = g(coeff);
            for n in 0..=x.dim() {
                let h = x.cohomology(n, &c);
                let d = x.coboundary(n, &c);
                for (i, rep) in h.representatives.iter().enumerate() {
                    let out = d.apply_coords(rep);
                    assert!(d.target().is_zero_coords(&out), "{id} n={n}");
                    assert_eq!(h.class_of(rep).unwrap(), h.group.generator(i).into_coords());
                }
                // coboundaries are zero in cohomology
                if n > 0 {
                    let prev = x.coboundary(n - 1, &c);
                    for col in prev.matrix().columns() {
                        let cls = h.class_of(&col).unwrap();
                        assert!(h.group.is_zero_coords(&cls));
                    }
                }
            }
        }
    }
}

#[test]
fn json_round_trip_of_catalog_complexes() {
    for id in catalog() {
        let x = id.cellular().unwrap();
        let back = CellComplex::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
    }
    let bad = r#"{"cells":[2,1,1],"boundaries":[
        {"rows":2,"cols":1,"entries":["-1","1"]},
        {"rows":1,"cols":1,"entries":["1"]}]}"#;
    let err = CellComplex::from_json(bad).unwrap_err();
    assert!(err.to_string().contains("not a chain complex"), "{err}");
}
