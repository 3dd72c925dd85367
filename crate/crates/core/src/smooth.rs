//! The Salmon–Turnbull Pfaffian of a (1,4,3) ideal and the smoothability
//! classifier for colength at most 8.

use std::fmt;

use serde::Serialize;

use crate::apolarity::{pairing, perp, DualElement};
use crate::artin::{
    embedding_reduction, is_primary_at_origin, local_hilbert_function, split_rational_support,
    translate_ideal,
};
use crate::error::{Error, Result};
use crate::groebner::{groebner, ideal_equal, initial_ideal};
use crate::kernel::{DenseMatrix, Field, FieldElement};
use crate::poly::{Ideal, Monomial, Polynomial, Ring};

fn check_characteristic(field: Field) -> Result<()> {
    match field.characteristic() {
        p @ (2 | 3) => Err(Error::UnsupportedCharacteristic(p)),
        _ => Ok(()),
    }
}

/// Both presentations of the Pfaffian for one (1,4,3) ideal.
#[derive(Clone, Debug)]
pub struct PfaffianReport {
    /// Reduced row echelon basis `Q_1, Q_2, Q_3` of `I_2^perp`.
    pub quadrics: Vec<DualElement>,
    /// `Q_i = y^t A_i y`.
    pub symmetric: Vec<DenseMatrix>,
    /// `[[0, A1, -A2], [-A1, 0, A3], [A2, -A3, 0]]`.
    pub block_matrix: DenseMatrix,
    /// `<x_j (x) m_i, x_j' (x) m_i'> = (x_j x_j') ^ m_i ^ m_i'` in the basis
    /// `x_1 (x) m_3, ..., x_4 (x) m_3, x_1 (x) m_2, ..., x_4 (x) m_1`, where
    /// `m_1, m_2, m_3` are the standard degree-2 monomials.
    pub intrinsic_matrix: DenseMatrix,
    pub cobasis: Vec<Monomial>,
    pub pfaffian_block: FieldElement,
    pub pfaffian_intrinsic: FieldElement,
    /// `det(<m_i, Q_k>)`.
    pub pairing_determinant: FieldElement,
    pub vanishes: bool,
}

impl PfaffianReport {
    /// `pfaffian_block / (pfaffian_intrinsic * det(C)^2)`, which does not
    /// depend on the ideal.
    pub fn normalized_ratio(&self) -> Option<FieldElement> {
        if self.vanishes {
            return None;
        }
        let d2 = &self.pairing_determinant * &self.pairing_determinant;
        let denom = &self.pfaffian_intrinsic * &d2;
        Some(&self.pfaffian_block * &denom.inv()?)
    }
}

/// The symmetric matrix `A` with `q = y^t A y`.
fn symmetric_matrix(q: &DualElement, d: usize) -> DenseMatrix {
    let field = q.poly().field();
    let half = field.from_ratio(1, 2).expect("characteristic is not 2");
    let mut a = DenseMatrix::zeros(field, d, d);
    for (m, c) in q.poly().terms() {
        let e = m.exponents();
        let idx: Vec<usize> = (0..d)
            .flat_map(|i| std::iter::repeat_n(i, e[i] as usize))
            .collect();
        if let [i, j] = idx[..] {
            if i == j {
                a.set(i, i, c.clone());
            } else {
                let v = c * &half;
                a.set(i, j, v.clone());
                a.set(j, i, v);
            }
        }
    }
    a
}

fn block_matrix(field: Field, a: &[DenseMatrix]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(field, 12, 12);
    let minus_one = field.from_i64(-1);
    let mut put = |bi: usize, bj: usize, src: &DenseMatrix, negate: bool| {
        for i in 0..4 {
            for j in 0..4 {
                let v = src.get(i, j).clone();
                m.set(
                    4 * bi + i,
                    4 * bj + j,
                    if negate { &v * &minus_one } else { v },
                );
            }
        }
    };
    put(0, 1, &a[0], false);
    put(0, 2, &a[1], true);
    put(1, 0, &a[0], true);
    put(1, 2, &a[2], false);
    put(2, 0, &a[1], false);
    put(2, 1, &a[2], true);
    m
}

fn det3(rows: [&[FieldElement]; 3]) -> FieldElement {
    let field = rows[0][0].field();
    DenseMatrix::from_rows(field, rows.iter().map(|r| r.to_vec()).collect())
        .and_then(|m| m.determinant())
        .expect("3 x 3")
}

fn intrinsic_matrix(ideal: &Ideal, cobasis: &[Monomial]) -> DenseMatrix {
    let ring = ideal.ring();
    let field = ring.field();
    let g = groebner(ideal);
    let unit = |k: usize| -> Vec<FieldElement> {
        (0..3)
            .map(|i| if i == k { field.one() } else { field.zero() })
            .collect()
    };
    // Basis position p = 4 * b + j stands for x_j (x) m_{2 - b}.
    let mut m = DenseMatrix::zeros(field, 12, 12);
    for p in 0..12 {
        let (mi, j) = (2 - p / 4, p % 4);
        for q in 0..12 {
            let (mi2, j2) = (2 - q / 4, q % 4);
            if mi == mi2 {
                continue;
            }
            let prod = g.normal_form(&(&ring.var(j) * &ring.var(j2)));
            let coords: Vec<FieldElement> = cobasis.iter().map(|c| prod.coeff(c)).collect();
            m.set(p, q, det3([&coords, &unit(mi), &unit(mi2)]));
        }
    }
    m
}

/// The Salmon–Turnbull Pfaffian of a homogeneous ideal in four variables with
/// `dim I_2 = 7`.
pub fn salmon_turnbull_pfaffian(ideal: &Ideal) -> Result<PfaffianReport> {
    let ring = ideal.ring();
    let field = ring.field();
    check_characteristic(field)?;
    if ring.nvars() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "the Pfaffian needs 4 variables, got {}",
            ring.nvars()
        )));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let quadrics = perp(ideal, 2)?;
    if quadrics.len() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "I_2^perp has dimension {}, expected 3",
            quadrics.len()
        )));
    }
    let symmetric: Vec<DenseMatrix> = quadrics.iter().map(|q| symmetric_matrix(q, 4)).collect();
    let block = block_matrix(field, &symmetric);
    let g = groebner(ideal);
    let cobasis: Vec<Monomial> = Monomial::all_of_degree(4, 2)
        .into_iter()
        .filter(|m| g.normal_form(&ring.monomial(m.clone())).coeff(m).is_one())
        .collect();
    let intrinsic = intrinsic_matrix(ideal, &cobasis);
    let mut c = DenseMatrix::zeros(field, 3, 3);
    for (i, m) in cobasis.iter().enumerate() {
        for (k, q) in quadrics.iter().enumerate() {
            c.set(i, k, pairing(&ring.monomial(m.clone()), q)?);
        }
    }
    let pfaffian_block = block.pfaffian()?;
    let pfaffian_intrinsic = intrinsic.pfaffian()?;
    let vanishes = pfaffian_block.is_zero();
    Ok(PfaffianReport {
        quadrics,
        symmetric,
        block_matrix: block,
        intrinsic_matrix: intrinsic,
        cobasis,
        pfaffian_block,
        pfaffian_intrinsic,
        pairing_determinant: c.determinant()?,
        vanishes,
    })
}

/// Homogeneous (1,4,3) ideal attached to a colength-8 ideal in four variables.
///
/// For an ideal supported at the origin this is the weight `(-1, ..., -1)`
/// initial ideal, which for Hilbert function (1,4,3) is the ideal itself.
/// Otherwise (e.g. eight distinct points) it is the weight `(1, ..., 1)`
/// initial ideal, the limit under scaling towards the origin; the result must
/// again have Hilbert function (1,4,3).
pub fn project_to_graded(ideal: &Ideal) -> Result<Ideal> {
    if ideal.nvars() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected 4 variables, got {}",
            ideal.nvars()
        )));
    }
    let wrong = |found: String| Error::WrongHilbertFunction {
        expected: "(1,4,3)".into(),
        found,
    };
    if is_primary_at_origin(ideal)? {
        let hf = local_hilbert_function(ideal)?;
        if hf.values() != [1, 4, 3] {
            return Err(wrong(hf.to_string()));
        }
        return initial_ideal(ideal, &[-1; 4]);
    }
    let graded = initial_ideal(ideal, &[1; 4])?;
    match local_hilbert_function(&graded) {
        Ok(hf) if hf.values() == [1, 4, 3] => Ok(graded),
        Ok(hf) => Err(wrong(hf.to_string())),
        Err(Error::NotPrimaryAtOrigin) => Err(wrong("not local".into())),
        Err(e) => Err(e),
    }
}

/// The image of `I` under `x -> g x`, i.e. each generator `f` becomes
/// `f(g^{-1} x)`.
pub fn change_coordinates(ideal: &Ideal, g: &DenseMatrix) -> Result<Ideal> {
    let ring = ideal.ring();
    let d = ring.nvars();
    if g.rows() != d || g.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for {d} variables",
            g.rows(),
            g.cols()
        )));
    }
    let inv = g.inverse().map_err(|_| Error::SingularMatrix)?;
    let images: Vec<Polynomial> = (0..d)
        .map(|i| {
            let mut p = ring.zero();
            for j in 0..d {
                p = &p + &ring.var(j).scale(inv.get(i, j));
            }
            p
        })
        .collect();
    Ok(ideal.map(ring.clone(), |f| f.substitute(&images)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "reason")]
pub enum Outcome {
    Smoothable,
    NotSmoothable,
    Indeterminate(String),
}

/// One step of the classifier, kept for the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Evidence {
    Colength {
        n: usize,
    },
    Split {
        points: Vec<Vec<String>>,
        multiplicities: Vec<usize>,
    },
    SmallPiece {
        point: Vec<String>,
        multiplicity: usize,
    },
    Recentered {
        point: Vec<String>,
    },
    HilbertFunction {
        point: Vec<String>,
        hf: String,
    },
    EmbeddingReduction {
        from: usize,
        to: usize,
    },
    Projection {
        already_homogeneous: bool,
    },
    Pfaffian {
        value: String,
        vanishes: bool,
    },
    Indeterminate {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothabilityVerdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub evidence: Vec<Evidence>,
}

impl SmoothabilityVerdict {
    pub fn is_smoothable(&self) -> bool {
        self.outcome == Outcome::Smoothable
    }
}

impl fmt::Display for SmoothabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Smoothable => f.write_str("Smoothable"),
            Outcome::NotSmoothable => f.write_str("NotSmoothable (Pfaffian ≠ 0)"),
            Outcome::Indeterminate(r) => write!(f, "Indeterminate ({r})"),
        }
    }
}

fn show(point: &[FieldElement]) -> Vec<String> {
    point.iter().map(|c| c.to_string()).collect()
}

/// Decides smoothability of a zero-dimensional ideal of colength at most 8.
pub fn classify_smoothable(ideal: &Ideal) -> Result<SmoothabilityVerdict> {
    check_characteristic(ideal.ring().field())?;
    let n = groebner(ideal).colength()?;
    if n > 8 {
        return Err(Error::ColengthOutOfRange(n));
    }
    let mut evidence = vec![Evidence::Colength { n }];
    let pieces = match split_rational_support(ideal) {
        Ok(p) => p,
        Err(Error::SupportNotRational) => {
            let reason = "support not rational".to_string();
            evidence.push(Evidence::Indeterminate {
                reason: reason.clone(),
            });
            return Ok(SmoothabilityVerdict {
                outcome: Outcome::Indeterminate(reason),
                evidence,
            });
        }
        Err(e) => return Err(e),
    };
    evidence.push(Evidence::Split {
        points: pieces.iter().map(|p| show(&p.point)).collect(),
        multiplicities: pieces.iter().map(|p| p.multiplicity).collect(),
    });
    for piece in &pieces {
        if piece.multiplicity <= 7 {
            evidence.push(Evidence::SmallPiece {
                point: show(&piece.point),
                multiplicity: piece.multiplicity,
            });
            continue;
        }
        let centered = translate_ideal(&piece.ideal, &piece.point)?;
        evidence.push(Evidence::Recentered {
            point: show(&piece.point),
        });
        let hf = local_hilbert_function(&centered)?;
        evidence.push(Evidence::HilbertFunction {
            point: show(&piece.point),
            hf: hf.to_string(),
        });
        if hf.values() != [1, 4, 3] {
            continue;
        }
        let reduced = embedding_reduction(&centered)?;
        evidence.push(Evidence::EmbeddingReduction {
            from: centered.nvars(),
            to: reduced.nvars(),
        });
        let graded = project_to_graded(&reduced)?;
        evidence.push(Evidence::Projection {
            already_homogeneous: ideal_equal(&graded, &reduced),
        });
        let report = salmon_turnbull_pfaffian(&graded)?;
        evidence.push(Evidence::Pfaffian {
            value: report.pfaffian_block.to_string(),
            vanishes: report.vanishes,
        });
        if !report.vanishes {
            return Ok(SmoothabilityVerdict {
                outcome: Outcome::NotSmoothable,
                evidence,
            });
        }
    }
    Ok(SmoothabilityVerdict {
        outcome: Outcome::Smoothable,
        evidence,
    })
}

/// The same ideal over a different ring with the same variables.
pub fn over_field(ideal: &Ideal, field: Field) -> Result<Ideal> {
    let ring = Ring::new(field, ideal.ring().names())?;
    let text = ideal
        .generators()
        .iter()
        .map(|g| ideal.ring().format(g))
        .collect::<Vec<_>>();
    let gens = text
        .iter()
        .map(|t| ring.parse(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{j_ideal, load, salmon_ideal, salmon_ideal_three_variables};

    #[test]
    fn j_pfaffian_is_nonzero_and_salmon_vanishes() {
        let j = salmon_turnbull_pfaffian(&j_ideal(Field::Rational, 4)).unwrap();
        assert!(!j.vanishes);
        assert!(!j.pfaffian_intrinsic.is_zero());
        for i in [
            salmon_ideal().unwrap(),
            salmon_ideal_three_variables().unwrap(),
        ] {
            let r = salmon_turnbull_pfaffian(&i).unwrap();
            assert!(r.vanishes);
            assert!(r.pfaffian_intrinsic.is_zero());
        }
    }

    #[test]
    fn block_matrix_is_skew() {
        let r = salmon_turnbull_pfaffian(&load("curve_t1.ideal")).unwrap();
        let t = r.block_matrix.transpose();
        assert_eq!(t.scale(&Field::Rational.from_i64(-1)), r.block_matrix);
        let t = r.intrinsic_matrix.transpose();
        assert_eq!(t.scale(&Field::Rational.from_i64(-1)), r.intrinsic_matrix);
    }

    #[test]
    fn small_characteristics_never_reach_the_pfaffian() {
        // Fields of characteristic 2 or 3 cannot be constructed at all.
        assert!(matches!(Field::prime(3), Err(Error::InvalidField(_))));
        assert!(matches!(Field::prime(2), Err(Error::InvalidField(_))));
        assert!(check_characteristic(Field::prime(5).unwrap()).is_ok());
        let j = over_field(&j_ideal(Field::Rational, 4), Field::prime(7).unwrap()).unwrap();
        assert!(!salmon_turnbull_pfaffian(&j).unwrap().vanishes);
    }

    #[test]
    fn identity_change_is_trivial() {
        let j = j_ideal(Field::Rational, 4);
        let same = change_coordinates(&j, &DenseMatrix::identity(Field::Rational, 4)).unwrap();
        assert!(ideal_equal(&same, &j));
        assert_eq!(
            change_coordinates(&j, &DenseMatrix::zeros(Field::Rational, 4, 4)).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn verdicts_on_small_examples() {
        let v = classify_smoothable(&j_ideal(Field::Rational, 4)).unwrap();
        assert_eq!(v.to_string(), "NotSmoothable (Pfaffian ≠ 0)");
        assert!(classify_smoothable(&load("x2y2z2xyz.ideal"))
            .unwrap()
            .is_smoothable());
        assert!(classify_smoothable(&load("w0_monomial.ideal"))
            .unwrap()
            .is_smoothable());
        let r = Ring::xyz(Field::Rational, 1);
        let v = classify_smoothable(&Ideal::from_strs(&r, &["x^2 - 2"])).unwrap();
        assert_eq!(
            v.outcome,
            Outcome::Indeterminate("support not rational".into())
        );
        let big = Ideal::from_strs(&r, &["x^9"]);
        assert_eq!(
            classify_smoothable(&big).unwrap_err(),
            Error::ColengthOutOfRange(9)
        );
    }
}
