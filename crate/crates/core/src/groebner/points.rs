//! Vanishing ideals of points (Buchberger-Möller) and the chart coordinates
//! given by ratios of evaluation determinants.

use std::collections::BTreeMap;

use super::basis::{GroebnerBasis, QuotientBasis};
use super::engine::Keyer;
use crate::error::{Error, Result};
use crate::kernel::{DenseMatrix, FieldElement};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Kernel of a linear map `k[x] -> V` determined on monomials by
/// `vec(1) = start` and `vec(x_i m) = step(vec(m), i)`.
///
/// Walks monomials in increasing order; each new monomial either extends the
/// echelon basis of the image (standard monomial) or yields a new element of
/// the reduced Gröbner basis of the kernel. The image must be finite-dimensional.
pub(crate) fn linear_basis_engine(
    ring: &Ring,
    order: &MonomialOrder,
    start: Vec<FieldElement>,
    step: impl Fn(&[FieldElement], usize) -> Vec<FieldElement>,
) -> (GroebnerBasis, QuotientBasis) {
    let field = ring.field();
    let n = ring.nvars();
    let keyer = Keyer::new(order);
    // Echelon rows: (pivot index, normalized vector, polynomial in standard monomials).
    let mut rows: Vec<(usize, Vec<FieldElement>, Polynomial)> = Vec::new();
    let mut standard: Vec<Monomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut queue: BTreeMap<Vec<i64>, (Monomial, Vec<FieldElement>)> = BTreeMap::new();
    let one = Monomial::one(n);
    queue.insert(keyer.key(&one), (one, start));
    while let Some((_, (m, vec))) = queue.pop_first() {
        if leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let mut v = vec.clone();
        let mut p = Polynomial::monomial(field, m.clone());
        for (piv, row, poly) in &rows {
            let c = v[*piv].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
            p = &p - &poly.scale(&c);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                leads.push(m);
                basis.push(p);
            }
            Some(piv) => {
                let inv = v[piv].inv().unwrap();
                let v: Vec<FieldElement> = v.iter().map(|x| x * &inv).collect();
                let p = p.scale(&inv);
                // Keep earlier rows reduced at the new pivot so reductions stay exact.
                for (_, row, poly) in rows.iter_mut() {
                    let c = row[piv].clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x = &*x - &(&c * y);
                    }
                    *poly = &*poly - &p.scale(&c);
                }
                rows.push((piv, v, p));
                for i in 0..n {
                    let next = m.mul(&Monomial::var(n, i));
                    let key = keyer.key(&next);
                    queue.entry(key).or_insert_with(|| (next, step(&vec, i)));
                }
                standard.push(m);
            }
        }
    }
    // Express each kernel element in terms of monomials: the polynomials built above are
    // m - (combination of standard monomials) with the combination determined by the rows.
    let gb = GroebnerBasis::from_reduced(ring.clone(), order.clone(), basis);
    let mut std_sorted = standard;
    std_sorted.sort_by_key(|m| keyer.key(m));
    (gb, QuotientBasis::new(std_sorted))
}

/// Reduced grevlex basis of the ideal of a finite set of distinct points.
pub fn points_ideal(ring: &Ring, points: &[Vec<FieldElement>]) -> Result<GroebnerBasis> {
    points_ideal_with_order(ring, points, &MonomialOrder::Grevlex)
}

pub fn points_ideal_with_order(
    ring: &Ring,
    points: &[Vec<FieldElement>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis> {
    let field = ring.field();
    for p in points {
        if p.len() != ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates in {} variables",
                p.len(),
                ring.nvars()
            )));
        }
        if let Some(bad) = p.iter().find(|c| c.field() != field) {
            return Err(Error::MixedDomains(
                field.to_string(),
                bad.field().to_string(),
            ));
        }
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint);
        }
    }
    if !order.is_global() {
        return Err(Error::Precondition(
            "Buchberger-Möller needs a global order".into(),
        ));
    }
    let start = vec![field.one(); points.len()];
    let (gb, _) = linear_basis_engine(ring, order, start, |v, i| {
        v.iter().zip(points).map(|(x, p)| x * &p[i]).collect()
    });
    Ok(gb)
}

fn evaluation_matrix(
    points: &[Vec<FieldElement>],
    monomials: &[Monomial],
    ring: &Ring,
) -> Result<DenseMatrix> {
    let rows = monomials
        .iter()
        .map(|m| {
            let p = ring.monomial(m.clone());
            points.iter().map(|q| p.eval(q)).collect()
        })
        .collect();
    DenseMatrix::from_rows(ring.field(), rows)
}

/// The chart coordinate `c^m_{m'} = Δ_{λ - m' + m} / Δ_λ`, where `Δ_λ` is the
/// determinant of `[λ_i(q_j)]` and `m` takes the place of `m'`.
pub fn delta_ratio(
    ring: &Ring,
    points: &[Vec<FieldElement>],
    lambda: &QuotientBasis,
    m: &Monomial,
    m_prime: &Monomial,
) -> Result<FieldElement> {
    if points.len() != lambda.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} points for {} standard monomials",
            points.len(),
            lambda.len()
        )));
    }
    let Some(pos) = lambda.position(m_prime) else {
        return Err(Error::Precondition("m' must be a standard monomial".into()));
    };
    if lambda.contains(m) {
        return Err(Error::Precondition(
            "m must lie outside the standard monomials".into(),
        ));
    }
    let base = evaluation_matrix(points, lambda.monomials(), ring)?.determinant()?;
    if base.is_zero() {
        return Err(Error::SingularChart);
    }
    let mut swapped = lambda.monomials().to_vec();
    swapped[pos] = m.clone();
    let num = evaluation_matrix(points, &swapped, ring)?.determinant()?;
    Ok(&num / &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::basis::groebner;
    use crate::kernel::Field;
    use crate::poly::Ideal;

    fn q() -> Field {
        Field::Rational
    }

    fn pts(v: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        v.iter()
            .map(|p| p.iter().map(|&x| q().from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn single_point_and_line() {
        let r = Ring::xyz(q(), 2);
        let g = points_ideal(&r, &pts(&[&[0, 0]])).unwrap();
        assert_eq!(
            g.elements(),
            groebner(&Ideal::from_strs(&r, &["x", "y"])).elements()
        );
        let r1 = Ring::xyz(q(), 1);
        let g = points_ideal(&r1, &pts(&[&[0], &[1]])).unwrap();
        assert_eq!(g.elements(), r1.polys(&["x^2 - x"]).as_slice());
        assert_eq!(
            points_ideal(&r1, &pts(&[&[1], &[1]])),
            Err(Error::DuplicatePoint)
        );
    }

    #[test]
    fn agrees_with_buchberger() {
        let r = Ring::xyz(q(), 3);
        let p = pts(&[&[1, 0, 2], &[0, 3, -1], &[2, 2, 2], &[-1, 5, 0], &[4, 1, 1]]);
        let bm = points_ideal(&r, &p).unwrap();
        assert_eq!(bm.colength().unwrap(), 5);
        let again = groebner(&bm.ideal());
        assert_eq!(again.elements(), bm.elements());
        for g in bm.elements() {
            for pt in &p {
                assert!(g.eval(pt).is_zero());
            }
        }
    }

    #[test]
    fn delta_ratio_small_cases() {
        let r = Ring::xyz(q(), 1);
        let one_pt = pts(&[&[3]]);
        let lam = QuotientBasis::new(vec![Monomial::one(1)]);
        let c = delta_ratio(
            &r,
            &one_pt,
            &lam,
            &Monomial::new(vec![2]),
            &Monomial::one(1),
        )
        .unwrap();
        assert_eq!(c, q().from_i64(9));
        // Points 0, 1 with λ = {1, x}: x^2 = x, so c_x = 1 and c_1 = 0.
        let two = pts(&[&[0], &[1]]);
        let lam = QuotientBasis::new(vec![Monomial::one(1), Monomial::new(vec![1])]);
        let x2 = Monomial::new(vec![2]);
        assert!(delta_ratio(&r, &two, &lam, &x2, &Monomial::new(vec![1]))
            .unwrap()
            .is_one());
        assert!(delta_ratio(&r, &two, &lam, &x2, &Monomial::one(1))
            .unwrap()
            .is_zero());
        let bad = pts(&[&[2], &[2]]);
        assert_eq!(
            delta_ratio(&r, &bad, &lam, &x2, &Monomial::one(1)),
            Err(Error::SingularChart)
        );
    }
}
