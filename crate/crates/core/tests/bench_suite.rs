use cohom::bench::{builtin_suite, run_case, CaseStatus};

#[test]
fn builtin_suite_matches() {
    let mut bad = Vec::new();
    for case in builtin_suite() {
        let r = run_case(&case);
        if r.is_failure() {
            bad.push(r);
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn klein_mod_two_square_is_basis_dependent_but_defined() {
    let case = builtin_suite()
        .into_iter()
        .find(|c| c.space == "klein" && c.expr == "g1(1) cup g2(1)")
        .unwrap();
    assert!(matches!(run_case(&case).status, CaseStatus::Computed { .. }));
}
