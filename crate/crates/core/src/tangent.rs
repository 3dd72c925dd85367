//! Tangent spaces `Hom_S(I, S/I)` and the degree `-1` machinery for ideals
//! with Hilbert function (1,4,3).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::artin::{local_hilbert_function, LocalAlgebraModel};
use crate::error::{Error, Result};
use crate::groebner::{
    groebner, linear_syzygies, schreyer_syzygies, GroebnerBasis, QuotientBasis, SyzygyBasis,
};
use crate::kernel::{
    sampled_minor_gcd, t_adic_minor_valuation, DenseMatrix, Field, FieldElement, MinorValuation,
    SampledMinorGcd,
};
use crate::poly::{Ideal, Monomial, Polynomial, Ring};

/// The constraint map whose kernel is `Hom_S(I, S/I)`: an assignment
/// `g_k -> a_k` is a homomorphism iff `sum_k s_k a_k = 0` in `S/I` for every syzygy `s`.
struct HomSystem {
    gb: GroebnerBasis,
    basis: QuotientBasis,
    matrix: DenseMatrix,
}

impl HomSystem {
    fn new(ideal: &Ideal) -> Result<Self> {
        let gb = groebner(ideal);
        let basis = gb.quotient_basis()?;
        let field = ideal.ring().field();
        let ring = gb.ring().clone();
        let n = basis.len();
        let r = gb.len();
        let syz = schreyer_syzygies(&gb);
        let mut m = DenseMatrix::zeros(field, syz.len() * n, r * n);
        for (s, rel) in syz.relations.iter().enumerate() {
            for (k, coeff) in rel.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (j, lam) in basis.monomials().iter().enumerate() {
                    let prod = coeff * &ring.monomial(lam.clone());
                    for (row, c) in gb.coordinates(&prod, &basis).into_iter().enumerate() {
                        if !c.is_zero() {
                            m.set(s * n + row, k * n + j, c);
                        }
                    }
                }
            }
        }
        Ok(HomSystem {
            gb,
            basis,
            matrix: m,
        })
    }

    fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    fn kernel_dimension(&self) -> usize {
        if self.matrix.rows() == 0 {
            return self.unknowns();
        }
        self.unknowns() - self.matrix.rank()
    }

    /// Degree of each unknown: `deg(lambda_j) - deg(g_k)`.
    fn column_degrees(&self) -> Vec<i64> {
        let n = self.basis.len();
        let mut out = Vec::with_capacity(self.unknowns());
        for g in self.gb.elements() {
            let dg = g.degree().unwrap_or(0) as i64;
            for j in 0..n {
                out.push(self.basis.monomials()[j].degree() as i64 - dg);
            }
        }
        out
    }

    fn graded_kernel_dimension(&self, e: i64) -> usize {
        let cols: Vec<usize> = self
            .column_degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == e)
            .map(|(i, _)| i)
            .collect();
        if cols.is_empty() {
            return 0;
        }
        if self.matrix.rows() == 0 {
            return cols.len();
        }
        let rows: Vec<usize> = (0..self.matrix.rows()).collect();
        cols.len() - self.matrix.submatrix(&rows, &cols).rank()
    }
}

/// `dim_k Hom_S(I, S/I)`.
pub fn tangent_dimension(ideal: &Ideal) -> Result<usize> {
    Ok(HomSystem::new(ideal)?.kernel_dimension())
}

/// Dimension of the degree-`e` part of `Hom_S(I, S/I)` for homogeneous `I`.
pub fn graded_tangent_dimension(ideal: &Ideal, e: i64) -> Result<usize> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(HomSystem::new(ideal)?.graded_kernel_dimension(e))
}

/// All nonzero graded pieces of `Hom_S(I, S/I)`.
pub fn graded_tangent_dimensions(ideal: &Ideal) -> Result<BTreeMap<i64, usize>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let sys = HomSystem::new(ideal)?;
    let mut degrees = sys.column_degrees();
    degrees.sort();
    degrees.dedup();
    Ok(degrees
        .into_iter()
        .map(|e| (e, sys.graded_kernel_dimension(e)))
        .filter(|&(_, dim)| dim > 0)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub total: usize,
    pub graded: Option<BTreeMap<i64, usize>>,
    pub expected: Option<usize>,
    /// `total == expected` when an expected component dimension was supplied.
    pub smooth_point: Option<bool>,
}

/// Total tangent dimension, the graded split for homogeneous ideals, and a
/// comparison against an expected component dimension.
pub fn tangent_report(ideal: &Ideal, expected: Option<usize>) -> Result<TangentReport> {
    let sys = HomSystem::new(ideal)?;
    let total = sys.kernel_dimension();
    let graded = if ideal.is_homogeneous() {
        let mut degrees = sys.column_degrees();
        degrees.sort();
        degrees.dedup();
        Some(
            degrees
                .into_iter()
                .map(|e| (e, sys.graded_kernel_dimension(e)))
                .filter(|&(_, d)| d > 0)
                .collect(),
        )
    } else {
        None
    };
    Ok(TangentReport {
        total,
        graded,
        expected,
        smooth_point: expected.map(|x| x == total),
    })
}

/// Builds the matrix of `phi -> (sigma_j -> sum_i phi(q_i) l_ij mod I_2)` on
/// degree `-1` assignments `phi(q_i) = sum_k c_ik x_k`. Rows are indexed by
/// `(syzygy, cobasis element)`, columns by `(quadric i, variable k)` as `4i + k`.
fn psi_matrix(
    field: Field,
    syzygies: &[Vec<Polynomial>],
    reduce: impl Fn(&Polynomial) -> Vec<FieldElement>,
) -> Result<DenseMatrix> {
    let mut m = DenseMatrix::zeros(field, syzygies.len() * 3, 28);
    for (j, rel) in syzygies.iter().enumerate() {
        for (i, l) in rel.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for k in 0..4 {
                let prod = l.mul_term(&Monomial::var(4, k), &field.one());
                for (c, v) in reduce(&prod).into_iter().enumerate() {
                    if !v.is_zero() {
                        let old = m.get(j * 3 + c, i * 4 + k).clone();
                        m.set(j * 3 + c, i * 4 + k, &old + &v);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// The translation homomorphisms `t_a : q -> dq/dx_a` as 28-vectors.
fn translation_vectors(field: Field, quadrics: &[Polynomial]) -> Vec<Vec<FieldElement>> {
    (0..4)
        .map(|a| {
            let mut v = vec![field.zero(); 28];
            for (i, q) in quadrics.iter().enumerate() {
                let dq = q.derivative(a);
                for k in 0..4 {
                    v[i * 4 + k] = dq.coeff(&Monomial::var(4, k));
                }
            }
            v
        })
        .collect()
}

/// Columns completing the span of `vectors` to the whole space, chosen greedily
/// among coordinate vectors.
fn complement_columns(field: Field, vectors: &[Vec<FieldElement>], dim: usize) -> Vec<usize> {
    let mut acc: Vec<Vec<FieldElement>> = vectors.to_vec();
    let mut rank = DenseMatrix::from_rows(field, acc.clone())
        .map(|m| m.rank())
        .unwrap_or(0);
    let mut chosen = Vec::new();
    for c in 0..dim {
        let mut e = vec![field.zero(); dim];
        e[c] = field.one();
        acc.push(e);
        let r = DenseMatrix::from_rows(field, acc.clone())
            .expect("rectangular")
            .rank();
        if r > rank {
            rank = r;
            chosen.push(c);
        } else {
            acc.pop();
        }
    }
    chosen
}

/// The degree `-1` tangent computation for an ideal generated by seven
/// quadrics in four variables with Hilbert function (1,4,3).
#[derive(Clone, Debug)]
pub struct TangentMachine143 {
    pub quadrics: Vec<Polynomial>,
    pub syzygies: SyzygyBasis,
    pub cobasis: Vec<Monomial>,
    /// 24 x 28.
    pub psi: DenseMatrix,
    pub translations: Vec<Vec<FieldElement>>,
    /// 24 x 24: `psi` on a complement of the translations.
    pub h_bar: DenseMatrix,
}

impl TangentMachine143 {
    /// `dim Hom_S(I, S/I)_{-1}`.
    pub fn hom_minus_one(&self) -> usize {
        28 - self.psi.rank()
    }

    pub fn corank_h_bar(&self) -> usize {
        24 - self.h_bar.rank()
    }

    pub fn det_h_bar(&self) -> FieldElement {
        self.h_bar.determinant().expect("square")
    }

    /// Singular in the Hilbert scheme iff there is a degree `-1` tangent vector
    /// beyond the four translations.
    pub fn is_singular(&self) -> bool {
        self.hom_minus_one() >= 5
    }

    /// Whether every translation vector lies in the kernel of `psi`.
    pub fn translations_in_kernel(&self) -> bool {
        self.translations
            .iter()
            .all(|t| self.psi.mul_vec(t).iter().all(|x| x.is_zero()))
    }
}

/// Basis of `I_2` in reduced echelon form over the degree-2 monomials.
pub fn quadric_basis(ideal: &Ideal) -> Vec<Polynomial> {
    let ring = ideal.ring();
    let field = ring.field();
    let d = ring.nvars();
    let g = groebner(ideal);
    let monos = Monomial::all_of_degree(d, 2);
    let rows: Vec<Vec<FieldElement>> = monos
        .iter()
        .map(|m| {
            let p = ring.monomial(m.clone());
            let q = &p - &g.normal_form(&p);
            monos.iter().map(|mm| q.coeff(mm)).collect()
        })
        .filter(|v: &Vec<FieldElement>| v.iter().any(|x| !x.is_zero()))
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let e = DenseMatrix::from_rows(field, rows)
        .expect("rectangular")
        .rref();
    (0..e.pivots.len())
        .map(|r| {
            Polynomial::from_terms(
                field,
                d,
                monos.iter().cloned().zip(e.matrix.row(r).iter().cloned()),
            )
        })
        .collect()
}

pub fn build_tangent_machine(ideal: &Ideal) -> Result<TangentMachine143> {
    let ring = ideal.ring();
    if ring.nvars() != 4 {
        return Err(Error::Precondition(
            "the (1,4,3) machine works in four variables".into(),
        ));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let hf = local_hilbert_function(ideal)?;
    if hf.values() != [1, 4, 3] {
        return Err(Error::WrongHilbertFunction {
            expected: "(1,4,3)".into(),
            found: hf.to_string(),
        });
    }
    let field = ring.field();
    let quadrics = quadric_basis(ideal);
    let syzygies = linear_syzygies(&quadrics, ring)?;
    let gb = groebner(ideal);
    let cobasis: Vec<Monomial> = gb
        .quotient_basis()?
        .monomials()
        .iter()
        .filter(|m| m.degree() == 2)
        .cloned()
        .collect();
    let reduce = |p: &Polynomial| {
        let nf = gb.normal_form(p);
        cobasis.iter().map(|m| nf.coeff(m)).collect()
    };
    let psi = psi_matrix(field, &syzygies.relations, reduce)?;
    let translations = translation_vectors(field, &quadrics);
    let cols = complement_columns(field, &translations, 28);
    let rows: Vec<usize> = (0..psi.rows()).collect();
    let h_bar = psi.submatrix(&rows, &cols);
    Ok(TangentMachine143 {
        quadrics,
        syzygies,
        cobasis,
        psi,
        translations,
        h_bar,
    })
}

/// Outcome of the rational-curve intersection computation.
#[derive(Clone, Debug)]
pub struct CurveMultiplicity {
    pub valuation: MinorValuation,
    pub sampled: SampledMinorGcd,
    /// The 24 x 28 matrix over Q(t).
    pub matrix: DenseMatrix,
}

/// Ring `x1..x4` over Q(t) and the seven generators of the curve ideal
/// `I_t = (x1^2, x2^2, x3^2, x4^2, x1x2, x2x3 + t x3x4, x1x4 + t x3x4)`
/// evaluated at a given `t`.
pub fn curve_ideal(t: &FieldElement) -> (Ring, Vec<Polynomial>) {
    let field = t.field();
    let ring = Ring::standard(field, 4);
    let x = ring.vars();
    let tt = ring.constant(t.clone());
    let x34 = &x[2] * &x[3];
    let gens = vec![
        &x[0] * &x[0],
        &x[1] * &x[1],
        &x[2] * &x[2],
        &x[3] * &x[3],
        &x[0] * &x[1],
        &(&x[1] * &x[2]) + &(&tt * &x34),
        &(&x[0] * &x[3]) + &(&tt * &x34),
    ];
    (ring, gens)
}

/// The eight linear syzygies of the curve ideal, as coefficient lists over
/// `q1..q7`.
pub fn curve_syzygies(ring: &Ring, t: &FieldElement) -> Vec<Vec<Polynomial>> {
    let x = ring.vars();
    let z = ring.zero();
    let c = |v: &FieldElement| ring.constant(v.clone());
    let t2 = t * t;
    let mut rows = Vec::new();
    let mut push = |entries: &[(usize, Polynomial)]| {
        let mut rel = vec![z.clone(); 7];
        for (i, p) in entries {
            rel[*i] = &rel[*i] + p;
        }
        rows.push(rel);
    };
    // Indices are 0-based: q1 -> 0, ..., q7 -> 6.
    push(&[(0, x[1].clone()), (4, -&x[0])]);
    push(&[
        (0, x[3].clone()),
        (6, &(-&x[0]) + &(&c(t) * &x[2])),
        (2, -&(&c(&t2) * &x[3])),
    ]);
    push(&[(1, x[0].clone()), (4, -&x[1])]);
    push(&[
        (1, x[2].clone()),
        (5, &(-&x[1]) + &(&c(t) * &x[3])),
        (3, -&(&c(&t2) * &x[2])),
    ]);
    push(&[(2, &x[1] + &(&c(t) * &x[3])), (5, -&x[2])]);
    push(&[(3, &x[0] + &(&c(t) * &x[2])), (6, -&x[3])]);
    push(&[
        (4, x[2].clone()),
        (5, -&x[0]),
        (6, &c(t) * &x[2]),
        (2, -&(&c(&t2) * &x[3])),
    ]);
    push(&[
        (4, x[3].clone()),
        (6, -&x[1]),
        (5, &c(t) * &x[3]),
        (3, -&(&c(&t2) * &x[2])),
    ]);
    rows
}

/// The 24 x 28 matrix of the degree `-1` constraint map along the curve, using
/// the cobasis `x1x3, x2x4, x3x4` of `S_2 / I_2`.
pub fn curve_matrix(t: &FieldElement) -> Result<DenseMatrix> {
    let field = t.field();
    let (ring, gens) = curve_ideal(t);
    let syz = curve_syzygies(&ring, t);
    let cobasis = [
        Monomial::new(vec![1, 0, 1, 0]),
        Monomial::new(vec![0, 1, 0, 1]),
        Monomial::new(vec![0, 0, 1, 1]),
    ];
    let quads = Monomial::all_of_degree(4, 2);
    // Columns: q1..q7 then the cobasis monomials, all as coordinate vectors on S_2.
    let mut cols: Vec<Vec<FieldElement>> = gens
        .iter()
        .map(|q| quads.iter().map(|m| q.coeff(m)).collect())
        .collect();
    for m in &cobasis {
        cols.push(
            quads
                .iter()
                .map(|mm| if mm == m { field.one() } else { field.zero() })
                .collect(),
        );
    }
    let change = DenseMatrix::from_rows(field, cols)?.transpose().inverse()?;
    let reduce = |p: &Polynomial| {
        let v: Vec<FieldElement> = quads.iter().map(|m| p.coeff(m)).collect();
        change.mul_vec(&v)[7..].to_vec()
    };
    psi_matrix(field, &syz, reduce)
}

/// Valuation at `t = 0` of the ideal of maximal minors of the curve matrix,
/// together with the gcd of `samples` seeded random minors.
pub fn curve_multiplicity(samples: usize, seed: u64) -> Result<CurveMultiplicity> {
    let t = Field::RationalFunction
        .parameter()
        .expect("Q(t) has a parameter");
    let matrix = curve_matrix(&t)?;
    let valuation = t_adic_minor_valuation(&matrix, 24)?;
    let sampled = sampled_minor_gcd(&matrix, 24, samples, seed)?;
    Ok(CurveMultiplicity {
        valuation,
        sampled,
        matrix,
    })
}

/// Whether each hardcoded curve syzygy really is a relation among the generators.
pub fn curve_syzygies_hold(t: &FieldElement) -> bool {
    let (ring, gens) = curve_ideal(t);
    SyzygyBasis {
        relations: curve_syzygies(&ring, t),
    }
    .verify(&gens)
}

/// Local model helper kept for callers that already hold one.
pub fn tangent_dimension_of_model(model: &LocalAlgebraModel) -> Result<usize> {
    tangent_dimension(&model.gb().ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::points_ideal;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn simple_tangent_spaces() {
        let r = Ring::xyz(q(), 2);
        // A reduced point in the plane has a 2-dimensional tangent space.
        assert_eq!(
            tangent_dimension(&Ideal::from_strs(&r, &["x", "y"])).unwrap(),
            2
        );
        // Fat point (x, y)^2 in the plane: Hom has dimension 6.
        assert_eq!(
            tangent_dimension(&Ideal::from_strs(&r, &["x^2", "x*y", "y^2"])).unwrap(),
            6
        );
        let pts = vec![
            vec![q().from_i64(0), q().from_i64(1)],
            vec![q().from_i64(2), q().from_i64(3)],
            vec![q().from_i64(5), q().from_i64(-1)],
        ];
        assert_eq!(
            tangent_dimension(&points_ideal(&r, &pts).unwrap().ideal()).unwrap(),
            6
        );
    }

    #[test]
    fn graded_pieces_sum_to_total() {
        let r = Ring::xyz(q(), 3);
        let i = Ideal::from_strs(&r, &["x^2", "y^2", "z^2", "x*y*z"]);
        let g = graded_tangent_dimensions(&i).unwrap();
        assert_eq!(g.values().sum::<usize>(), tangent_dimension(&i).unwrap());
        assert_eq!(tangent_dimension(&i).unwrap(), 21);
    }

    #[test]
    fn curve_syzygies_are_relations() {
        let t = Field::RationalFunction.parameter().unwrap();
        assert!(curve_syzygies_hold(&t));
        assert!(curve_syzygies_hold(&q().from_i64(3)));
    }

    #[test]
    fn machine_on_monomial_point() {
        let r = Ring::standard(q(), 4);
        let i0 = Ideal::from_strs(
            &r,
            &["x1^2", "x2^2", "x3^2", "x4^2", "x1*x2", "x2*x3", "x1*x4"],
        );
        let m = build_tangent_machine(&i0).unwrap();
        assert_eq!(m.psi.rows(), 24);
        assert!(m.translations_in_kernel());
        assert_eq!(
            m.hom_minus_one(),
            graded_tangent_dimension(&i0, -1).unwrap()
        );
    }
}
