use monideal_wasm::{
    has_monomial, largest_agraded, largest_agraded_value, staircase, staircase_value, GradingMode,
};

const CIRCLE: &str = "vars x y\npoly x^2 + y^2\npoly x*y\n";

#[test]
fn monomial_subideal_of_the_circle_example() {
    let r = largest_agraded_value(CIRCLE, "identity").unwrap();
    assert_eq!(r.basis, ["x*y", "y^3", "x^3"]);
    assert_eq!(r.grading, [[1, 0], [0, 1]]);
    assert!(r.report.contains("output_basis_size: 3"));
}

#[test]
fn grading_from_file_and_zero() {
    let text = "vars x y\npoly x + y\ngrading 1 2\n1 -1\n";
    assert!(largest_agraded_value(text, "file")
        .unwrap()
        .basis
        .is_empty());
    assert_eq!(
        largest_agraded_value(text, "zero").unwrap().basis,
        ["x + y"]
    );
    assert!(largest_agraded_value(CIRCLE, "file").is_err());
    assert!(GradingMode::parse("diagonal").is_err());
}

#[test]
fn staircase_points() {
    let s = staircase_value(CIRCLE, 3).unwrap();
    assert_eq!(s.generators, [vec![1, 1], vec![0, 3], vec![3, 0]]);
    assert_eq!(
        s.monomials,
        [vec![1, 1], vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]
    );
    assert!(staircase_value(CIRCLE, 41).is_err());
}

#[test]
fn json_layer() {
    assert_eq!(has_monomial(CIRCLE), r#"{"contains_monomial":true}"#);
    assert_eq!(
        has_monomial("vars x y\npoly x + y\n"),
        r#"{"contains_monomial":false}"#
    );
    let err = staircase("vars x y\npoly x^2 + z\n", 4);
    assert_eq!(
        err,
        r#"{"error":"line 2, column 12: unknown variable `z`"}"#
    );
    let ok: String = largest_agraded(CIRCLE, "identity");
    assert!(
        ok.starts_with(
            r#"{"variables":["x","y"],"grading":[[1,0],[0,1]],"basis":["x*y","y^3","x^3"]"#
        ),
        "{ok}"
    );
}
