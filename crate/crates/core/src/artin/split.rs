use super::model::LocalAlgebraModel;
use crate::error::{Error, Result};
use crate::groebner::groebner;
use crate::kernel::{characteristic_polynomial, DenseMatrix, FieldElement};
use crate::poly::Ideal;

/// A primary component of `I` supported at a rational point.
#[derive(Clone, Debug)]
pub struct SupportPiece {
    pub point: Vec<FieldElement>,
    pub multiplicity: usize,
    pub ideal: Ideal,
}

/// Decomposes `S/I` along the common generalized eigenspaces of the
/// multiplication operators.
///
/// Each support coordinate must be a root of the corresponding characteristic
/// polynomial in the base field; otherwise the result is
/// [`Error::SupportNotRational`]. Pieces come out ordered lexicographically by
/// point, using the root order of each coordinate.
pub fn split_rational_support(ideal: &Ideal) -> Result<Vec<SupportPiece>> {
    let model = LocalAlgebraModel::from_ideal(ideal)?;
    let ring = ideal.ring();
    let field = ring.field();
    let n = model.colength();
    let mut roots_per_var = Vec::with_capacity(ring.nvars());
    for x in model.operators() {
        let chi = characteristic_polynomial(x)?;
        let roots = match chi.roots() {
            Ok(r) => r,
            Err(Error::UnsupportedRootFinding(_)) => return Err(Error::SupportNotRational),
            Err(e) => return Err(e),
        };
        let total: usize = roots.iter().map(|r| chi.root_multiplicity(r)).sum();
        if total < n {
            return Err(Error::SupportNotRational);
        }
        roots_per_var.push(roots);
    }
    // Each entry: point prefix and a basis (as columns) of the joint eigenspace.
    let mut pieces: Vec<(Vec<FieldElement>, DenseMatrix)> =
        vec![(Vec::new(), DenseMatrix::identity(field, n))];
    for (x, roots) in model.operators().iter().zip(&roots_per_var) {
        let mut next = Vec::new();
        for (prefix, b) in &pieces {
            for r in roots {
                let shifted = x.sub(&DenseMatrix::identity(field, n).scale(r))?;
                let mut power = DenseMatrix::identity(field, n);
                for _ in 0..b.cols() {
                    power = power.mul(&shifted)?;
                }
                let kernel = power.mul(b)?.kernel_basis();
                if kernel.is_empty() {
                    continue;
                }
                let coeffs = DenseMatrix::from_rows(field, kernel)?.transpose();
                let mut point = prefix.clone();
                point.push(r.clone());
                next.push((point, b.mul(&coeffs)?));
            }
        }
        pieces = next;
    }
    let mut out = Vec::with_capacity(pieces.len());
    for (point, b) in pieces {
        let mult = b.cols();
        let mut gens = ideal.generators().to_vec();
        for (i, p) in point.iter().enumerate() {
            let lin = &ring.var(i) - &ring.constant(p.clone());
            gens.push(lin.pow(mult as u32));
        }
        let piece = groebner(&Ideal::new(ring.clone(), gens)).ideal();
        out.push(SupportPiece {
            point,
            multiplicity: mult,
            ideal: piece,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{ideal_equal, intersect};
    use crate::kernel::Field;
    use crate::poly::Ring;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn two_simple_points() {
        let r = Ring::xyz(q(), 1);
        let parts = split_rational_support(&Ideal::from_strs(&r, &["x^2 - x"])).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].point, vec![q().zero()]);
        assert_eq!(parts[1].point, vec![q().one()]);
        assert!(parts.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn primary_ideal_is_one_piece() {
        let r = Ring::xyz(q(), 2);
        let i = Ideal::from_strs(&r, &["x^2", "x*y", "y^3"]);
        let parts = split_rational_support(&i).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(ideal_equal(&parts[0].ideal, &i));
    }

    #[test]
    fn fat_point_and_reduced_point() {
        let r = Ring::xyz(q(), 3);
        let a = Ideal::from_strs(&r, &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]);
        let b = Ideal::from_strs(&r, &["x + 1", "y", "z"]);
        let i = intersect(&a, &b).unwrap();
        let parts = split_rational_support(&i).unwrap();
        let mults: Vec<usize> = parts.iter().map(|p| p.multiplicity).collect();
        assert_eq!(mults, vec![1, 4]);
        assert!(ideal_equal(&parts[0].ideal, &b));
        assert!(ideal_equal(&parts[1].ideal, &a));
        let back = intersect(&parts[0].ideal, &parts[1].ideal).unwrap();
        assert!(ideal_equal(&back, &i));
    }

    #[test]
    fn irrational_support_is_reported() {
        let r = Ring::xyz(q(), 1);
        assert!(matches!(
            split_rational_support(&Ideal::from_strs(&r, &["x^2 - 2"])),
            Err(Error::SupportNotRational)
        ));
    }
}
