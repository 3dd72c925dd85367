use hilbcheck_core::kernel::{Field, MinorValuation};
use hilbcheck_core::tangent::*;
use hilbcheck_core::{Ideal, Ring};

fn j_ideal(field: Field, d: usize) -> Ideal {
    let ring = Ring::standard(field, d);
    let mut gens: Vec<String> = [
        "x1^2",
        "x1*x2",
        "x2^2",
        "x3^2",
        "x3*x4",
        "x4^2",
        "x1*x4 + x2*x3",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for i in 5..=d {
        gens.push(format!("x{i}"));
    }
    let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    Ideal::from_strs(&ring, &refs)
}

#[test]
fn j_tangent_grows_by_eight() {
    for (d, want) in [(4, 25), (5, 33), (6, 41)] {
        assert_eq!(
            tangent_dimension(&j_ideal(Field::Rational, d)).unwrap(),
            want,
            "d = {d}"
        );
    }
    for p in [5, 7] {
        assert_eq!(
            tangent_dimension(&j_ideal(Field::prime(p).unwrap(), 4)).unwrap(),
            25
        );
    }
}

#[test]
fn named_tangent_dimensions() {
    let r3 = Ring::xyz(Field::Rational, 3);
    assert_eq!(
        tangent_dimension(&Ideal::from_strs(&r3, &["x^2", "y^2", "z^2", "x*y*z"])).unwrap(),
        21
    );
    assert_eq!(
        tangent_dimension(&Ideal::from_strs(
            &r3,
            &["x^2", "x*y - z^4", "y^2 - x*z", "y*z"]
        ))
        .unwrap(),
        24
    );
    let r4 = Ring::standard(Field::Rational, 4);
    let i = Ideal::from_strs(
        &r4,
        &["x1^2", "x1*x2", "x2^2", "x3^2", "x3*x4", "x4^2", "x1*x4"],
    );
    assert_eq!(tangent_dimension(&i).unwrap(), 33);
}

#[test]
fn j_machine_splits_by_degree() {
    let j = j_ideal(Field::Rational, 4);
    let m = build_tangent_machine(&j).unwrap();
    assert!(m.translations_in_kernel());
    assert_eq!(m.hom_minus_one(), graded_tangent_dimension(&j, -1).unwrap());
    let split: Vec<(i64, usize)> = graded_tangent_dimensions(&j).unwrap().into_iter().collect();
    assert_eq!(split, vec![(-1, 4), (0, 21)]);
}

#[test]
fn curve_meets_with_multiplicity_sixteen() {
    let c = curve_multiplicity(32, 7).unwrap();
    assert_eq!(c.valuation, MinorValuation::Finite(16));
    assert!(c.sampled.is_monomial());
    assert_eq!(c.sampled.valuation(), Some(16));
}
