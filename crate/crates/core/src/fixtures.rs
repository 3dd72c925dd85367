//! Bundled example ideals and the Gröbner degenerations used to check them.
//!
//! Every ideal here is over Q unless stated otherwise.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{ideal_from_inverse_system, DualElement};
use crate::artin::order_ideals;
use crate::error::Result;
use crate::groebner::points_ideal;
use crate::kernel::{DenseMatrix, Field, FieldElement};
use crate::poly::{parse_ideal_file, Ideal, Monomial, Ring};

/// `(file name, contents)` of every bundled `.ideal` file.
pub const IDEAL_FILES: &[(&str, &str)] = &[
    (
        "colength3.ideal",
        include_str!("../fixtures/colength3.ideal"),
    ),
    ("curve.ideal", include_str!("../fixtures/curve.ideal")),
    ("curve_t0.ideal", include_str!("../fixtures/curve_t0.ideal")),
    ("curve_t1.ideal", include_str!("../fixtures/curve_t1.ideal")),
    (
        "curve_tinf.ideal",
        include_str!("../fixtures/curve_tinf.ideal"),
    ),
    ("j_d4.ideal", include_str!("../fixtures/j_d4.ideal")),
    ("j_d5.ideal", include_str!("../fixtures/j_d5.ideal")),
    ("j_d6.ideal", include_str!("../fixtures/j_d6.ideal")),
    ("u_point.ideal", include_str!("../fixtures/u_point.ideal")),
    (
        "w0_monomial.ideal",
        include_str!("../fixtures/w0_monomial.ideal"),
    ),
    ("x2y2z2.ideal", include_str!("../fixtures/x2y2z2.ideal")),
    (
        "x2y2z2xyz.ideal",
        include_str!("../fixtures/x2y2z2xyz.ideal"),
    ),
    ("z_point.ideal", include_str!("../fixtures/z_point.ideal")),
];

pub const EIGHT_POINTS: &str = include_str!("../fixtures/eight_points.pts");

/// Parses a bundled fixture by file name.
///
/// # Panics
/// If `name` is not bundled.
pub fn load(name: &str) -> Ideal {
    let (_, text) = IDEAL_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no bundled fixture `{name}`"));
    parse_ideal_file(text).expect("bundled fixtures parse")
}

/// `J = (x1^2, x1x2, x2^2, x3^2, x3x4, x4^2, x1x4 + x2x3) + (x5, ..., xd)`.
pub fn j_ideal(field: Field, d: usize) -> Ideal {
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
    gens.extend((5..=d).map(|i| format!("x{i}")));
    let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    Ideal::from_strs(&ring, &refs)
}

/// The (1,4,3) ideal whose degree-2 inverse system is spanned by three first
/// partials of one cubic in four variables.
pub fn salmon_ideal() -> Result<Ideal> {
    let ring = Ring::standard(Field::Rational, 4);
    // Partials along y1, y2, y3 of y1^2 y2 + y2^2 y3 + y3^2 y4 + y4^2 y1 + y1 y3 y4.
    let gens = [
        "2*y1*y2 + y4^2 + y3*y4",
        "y1^2 + 2*y2*y3",
        "y2^2 + 2*y3*y4 + y1*y4",
    ]
    .iter()
    .map(|s| DualElement::parse(&ring, s))
    .collect::<Result<Vec<_>>>()?;
    ideal_from_inverse_system(&ring, &gens)
}

/// Same construction with a cubic in `y1, y2, y3` only; `y4` is added to the
/// inverse system so that all four linear forms survive.
pub fn salmon_ideal_three_variables() -> Result<Ideal> {
    let ring = Ring::standard(Field::Rational, 4);
    // Partials of y1^3 + y2^3 + y3^3 + y1 y2 y3.
    let gens = ["3*y1^2 + y2*y3", "3*y2^2 + y1*y3", "3*y3^2 + y1*y2", "y4"]
        .iter()
        .map(|s| DualElement::parse(&ring, s))
        .collect::<Result<Vec<_>>>()?;
    ideal_from_inverse_system(&ring, &gens)
}

/// Homogeneous ideals with Hilbert function (1,4,3) generated by quadrics.
pub fn g0_prime_fixtures() -> Result<Vec<(&'static str, Ideal)>> {
    Ok(vec![
        ("curve_t0", load("curve_t0.ideal")),
        ("curve_t1", load("curve_t1.ideal")),
        ("curve_tinf", load("curve_tinf.ideal")),
        ("j_d4", load("j_d4.ideal")),
        ("w0_monomial", load("w0_monomial.ideal")),
        ("salmon", salmon_ideal()?),
    ])
}

/// A flat degeneration `target = in_w(source)`, where `source` is usually an
/// intersection of a smaller local ideal with a reduced point.
#[derive(Clone, Debug)]
pub struct Degeneration {
    pub name: String,
    pub weight: Vec<i64>,
    pub source: Ideal,
    pub target: Ideal,
    /// Ideals whose intersection should equal `source`.
    pub pieces: Vec<Ideal>,
}

fn deg(
    name: String,
    ring: &Ring,
    weight: Vec<i64>,
    target: &[String],
    pieces: &[Vec<String>],
    source: Option<&[String]>,
) -> Degeneration {
    let ideal = |gens: &[String]| {
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        Ideal::from_strs(ring, &refs)
    };
    let pieces: Vec<Ideal> = pieces.iter().map(|p| ideal(p)).collect();
    let source = match source {
        Some(s) => ideal(s),
        None => pieces[1..].iter().fold(pieces[0].clone(), |acc, p| {
            crate::groebner::intersect(&acc, p).expect("same ring")
        }),
    };
    Degeneration {
        name,
        weight,
        source,
        target: ideal(target),
        pieces,
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn mixed_products(d: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            out.push(format!("x{i}*x{j}"));
        }
    }
    out
}

fn reduced_point(d: usize, sign: &str) -> Vec<String> {
    let mut v = vec![format!("x1 {sign} 1")];
    v.extend((2..=d).map(|i| format!("x{i}")));
    v
}

/// `(1,d,1,...,1)` with top degree `m`, weight `(m, ..., m, 2)`.
pub fn curvilinear_degeneration(d: usize, m: u32) -> Degeneration {
    let ring = Ring::standard(Field::Rational, d);
    let xd = format!("x{d}");
    let mut target: Vec<String> = (1..d).map(|i| format!("x{i}^2 - {xd}^{m}")).collect();
    target.push(format!("{xd}^{}", m + 1));
    target.extend(mixed_products(d));
    let mut local: Vec<String> = vec![format!("x1 - {xd}^{m}")];
    local.extend((2..d).map(|i| format!("x{i}^2 - {xd}^{m}")));
    local.push(format!("{xd}^{}", m + 1));
    local.extend(mixed_products(d));
    let mut source: Vec<String> = vec![format!("x1^2 + x1 - {xd}^{m}")];
    source.extend(target[1..].iter().cloned());
    let mut weight = vec![m as i64; d];
    weight[d - 1] = 2;
    deg(
        format!("curvilinear_d{d}_m{m}"),
        &ring,
        weight,
        &target,
        &[reduced_point(d, "+"), local],
        Some(&source),
    )
}

/// `(1,3,2)`: a pencil of conics plus a reduced point, weight `(1,1,1)`.
pub fn pencil_degeneration() -> Degeneration {
    let ring = Ring::standard(Field::Rational, 3);
    let mut target = mixed_products(3);
    target.push("x1^2 - 2*x2^2 - 3*x3^2".into());
    let mut local = mixed_products(3);
    local.push("x1 + 2*x2^2 + 3*x3^2".into());
    deg(
        "pencil_d3".into(),
        &ring,
        vec![1, 1, 1],
        &target,
        &[local, reduced_point(3, "-")],
        None,
    )
}

/// `(1,3,2,1)` with the square-type quadrics, weight `(2,2,3)`.
pub fn p_degeneration() -> Degeneration {
    let ring = Ring::standard(Field::Rational, 3);
    let mut target = mixed_products(3);
    target.extend(strings(&["x3^2 + x1^3", "x1^3 - x2^3"]));
    let mut local = mixed_products(3);
    local.extend(strings(&["x3^2 + x1^2", "x1^2 - x2^3"]));
    deg(
        "p_d3".into(),
        &ring,
        vec![2, 2, 3],
        &target,
        &[reduced_point(3, "+"), local],
        None,
    )
}

/// `(1,3,2,1)` with `x1` annihilating the other variables, weight `(2,3,3)`.
pub fn q_degeneration() -> Degeneration {
    let ring = Ring::standard(Field::Rational, 3);
    let target = strings(&["x1*x2", "x1*x3", "x2*x3 + x1^3", "x2^2 - x3^2 + 2*x1^3"]);
    let local = strings(&["x1*x2", "x1*x3", "x2*x3 + x1^2", "x2^2 - x3^2 + 2*x1^2"]);
    deg(
        "q_d3".into(),
        &ring,
        vec![2, 3, 3],
        &target,
        &[local, reduced_point(3, "+")],
        None,
    )
}

/// `(1,3,2,2)`, weight `(2,2,3)`.
pub fn two_two_degeneration() -> Degeneration {
    let ring = Ring::standard(Field::Rational, 3);
    let mut target = strings(&["x3^2 - 2*x1^3 - 3*x2^3", "x1^4", "x2^4"]);
    target.extend(mixed_products(3));
    let mut local = strings(&["x3^2 - 2*x1^2 - 3*x2^3", "x1^3", "x2^4"]);
    local.extend(mixed_products(3));
    deg(
        "two_two_d3".into(),
        &ring,
        vec![2, 2, 3],
        &target,
        &[local, reduced_point(3, "+")],
        None,
    )
}

/// `(1,3,4)`, weight `(1,1,1)`; the source splits into lengths 3 and 5.
pub fn one_three_four_degeneration() -> Degeneration {
    let ring = Ring::xyz(Field::Rational, 3);
    deg(
        "one_three_four".into(),
        &ring,
        vec![1, 1, 1],
        &strings(&["y^2 + z^2", "x^2 + z^2", "z^3", "y*z^2", "x*z^2", "x*y*z"]),
        &[
            strings(&["x + 1", "y^2", "y*z", "z^2"]),
            strings(&["x + z^2", "y^2 + z^2", "z^3", "y*z^2"]),
        ],
        Some(&strings(&[
            "y^2 + z^2",
            "x + x^2 + z^2",
            "z^3",
            "y*z^2",
            "x*z^2",
            "x*y*z",
        ])),
    )
}

/// `(1,3,1,1,1,1)`-type point `Z`, weight `(1,0,0)`.
pub fn z_degeneration() -> Degeneration {
    let ring = Ring::xyz(Field::Rational, 3);
    deg(
        "z_point".into(),
        &ring,
        vec![1, 0, 0],
        &strings(&["x^2", "x*y", "x*z", "y*z", "z^3 - y^4"]),
        &[
            strings(&["x + 1", "y", "z"]),
            strings(&["x", "y*z", "z^3 - y^4"]),
        ],
        None,
    )
}

/// `(1,3,2,1,1)` point `U`, weight `(7,5,3)`.
pub fn u_degeneration() -> Degeneration {
    let ring = Ring::xyz(Field::Rational, 3);
    deg(
        "u_point".into(),
        &ring,
        vec![7, 5, 3],
        &strings(&["x^2", "x*y - z^4", "y^2 - x*z", "y*z"]),
        &[
            strings(&["x", "y", "z - 1"]),
            strings(&["x^2", "x*y - z^3", "y^2 - x*z", "y*z"]),
        ],
        None,
    )
}

/// The same family with the reduced point at `z = -1`. As written with the
/// point at `z = 1`, the limit contains `xy + z^4` instead of `xy - z^4`; the
/// two limits differ by `y -> -y`.
pub fn u_degeneration_shifted() -> Degeneration {
    let ring = Ring::xyz(Field::Rational, 3);
    deg(
        "u_point_shifted".into(),
        &ring,
        vec![7, 5, 3],
        &strings(&["x^2", "x*y - z^4", "y^2 - x*z", "y*z"]),
        &[
            strings(&["x", "y", "z + 1"]),
            strings(&["x^2", "x*y - z^3", "y^2 - x*z", "y*z"]),
        ],
        None,
    )
}

/// Every bundled degeneration, in a fixed order.
pub fn degenerations() -> Vec<Degeneration> {
    let mut out = vec![
        curvilinear_degeneration(2, 3),
        curvilinear_degeneration(3, 3),
        curvilinear_degeneration(3, 4),
        pencil_degeneration(),
        p_degeneration(),
        q_degeneration(),
        two_two_degeneration(),
    ];
    out.extend([
        one_three_four_degeneration(),
        z_degeneration(),
        u_degeneration(),
        u_degeneration_shifted(),
    ]);
    out
}

/// Monomial ideal whose standard monomials are `staircase`.
pub fn staircase_ideal(ring: &Ring, staircase: &[Vec<u8>]) -> Ideal {
    let d = ring.nvars();
    let inside = |e: &[u32]| {
        staircase
            .iter()
            .any(|s| s.iter().zip(e).all(|(&a, &b)| a as u32 == b))
    };
    let mut gens = Vec::new();
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for s in staircase {
        for i in 0..d {
            let mut e: Vec<u32> = s.iter().map(|&x| x as u32).collect();
            e[i] += 1;
            candidates.push(e);
        }
    }
    candidates.sort();
    candidates.dedup();
    for e in candidates {
        if inside(&e) {
            continue;
        }
        let minimal = (0..d).filter(|&j| e[j] > 0).all(|j| {
            let mut below = e.clone();
            below[j] -= 1;
            inside(&below)
        });
        if minimal {
            gens.push(ring.monomial(Monomial::new(e)));
        }
    }
    Ideal::new(ring.clone(), gens)
}

/// All monomial ideals of colength `n` in `d` variables that use the first
/// `k` variables for some `k`.
pub fn monomial_ideals(d: usize, n: usize) -> Result<Vec<Ideal>> {
    let ring = Ring::standard(Field::Rational, d);
    Ok(order_ideals(d, n)?
        .iter()
        .map(|s| staircase_ideal(&ring, s))
        .collect())
}

/// `n` distinct points of `Q^d` with small integer coordinates.
pub fn random_points(d: usize, n: usize, seed: u64) -> Vec<Vec<FieldElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Vec<i64>> = Vec::with_capacity(n);
    while pts.len() < n {
        let p: Vec<i64> = (0..d).map(|_| rng.gen_range(-20..=20)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts.iter()
        .map(|p| p.iter().map(|&c| Field::Rational.from_i64(c)).collect())
        .collect()
}

/// Vanishing ideal of `n` seeded random points.
pub fn random_points_ideal(d: usize, n: usize, seed: u64) -> Result<Ideal> {
    let ring = Ring::standard(Field::Rational, d);
    Ok(points_ideal(&ring, &random_points(d, n, seed))?.ideal())
}

/// Random invertible integer matrix: a shuffled unipotent product, so the
/// determinant is `±1`.
pub fn random_invertible(d: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Field::Rational;
    let mut lower = DenseMatrix::identity(f, d);
    let mut upper = DenseMatrix::identity(f, d);
    for i in 0..d {
        for j in 0..i {
            lower.set(i, j, f.from_i64(rng.gen_range(-3..=3)));
            upper.set(j, i, f.from_i64(rng.gen_range(-3..=3)));
        }
    }
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(&mut rng);
    let p = DenseMatrix::from_rows(
        f,
        perm.iter()
            .map(|&k| {
                (0..d)
                    .map(|c| if c == k { f.one() } else { f.zero() })
                    .collect()
            })
            .collect(),
    )
    .expect("square");
    p.mul(&lower).and_then(|m| m.mul(&upper)).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::local_hilbert_function;

    #[test]
    fn bundled_files_parse() {
        for (name, _) in IDEAL_FILES {
            let i = load(name);
            assert!(!i.generators().is_empty(), "{name}");
        }
    }

    #[test]
    fn salmon_ideals_have_expected_hf() {
        for i in [
            salmon_ideal().unwrap(),
            salmon_ideal_three_variables().unwrap(),
        ] {
            assert_eq!(local_hilbert_function(&i).unwrap().to_string(), "(1,4,3)");
        }
    }

    #[test]
    fn staircase_round_trip() {
        let ideals = monomial_ideals(2, 4).unwrap();
        // Partitions of 4 with both parts used, plus the line.
        assert!(ideals
            .iter()
            .all(|i| crate::groebner::groebner(i).colength().unwrap() == 4));
    }

    #[test]
    fn random_matrices_are_invertible() {
        for s in 0..10 {
            assert!(!random_invertible(4, s).determinant().unwrap().is_zero());
        }
    }
}
