//! t-adic valuation of the ideal of maximal minors of a matrix over Q(t).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::FieldElement;
use super::matrix::DenseMatrix;
use super::ratfunc::QPoly;
use crate::error::{Error, Result};

/// Valuation of the gcd of all `size x size` minors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinorValuation {
    Finite(u64),
    /// Every minor vanishes identically: the rank over Q(t) is below `size`.
    Infinite,
}

type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn ival(p: &IntPoly) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

fn ieval(p: &IntPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn imul_trunc(a: &IntPoly, b: &IntPoly, prec: usize) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = (a.len() + b.len() - 1).min(prec);
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn isub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: IntPoly = (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

/// Converts the matrix into integer polynomial rows whose maximal minors have
/// the same t-adic valuations as the original, up to the returned shift
/// (to be subtracted from each minor valuation).
fn integer_polynomial_rows(m: &DenseMatrix, size: usize) -> Result<(Vec<Vec<IntPoly>>, u64)> {
    let mut rows: Vec<Vec<(QPoly, usize)>> = Vec::with_capacity(m.rows());
    let mut max_shift = 0usize;
    for i in 0..m.rows() {
        let funcs = m
            .row(i)
            .iter()
            .map(|e| {
                e.to_function().ok_or_else(|| {
                    Error::Precondition("minor valuation needs entries in Q or Q(t)".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // Multiply the row by the unit part of the common denominator; what
        // remains is a pure power of t in each denominator.
        let mut unit = QPoly::one();
        for f in &funcs {
            let d = f.den();
            let v = d.valuation().unwrap();
            let u = QPoly::from_coeffs(d.coeffs()[v..].to_vec());
            let g = unit.gcd(&u);
            unit = unit.mul(&u.div_rem(&g).0);
        }
        let mut row = Vec::with_capacity(funcs.len());
        for f in &funcs {
            let d = f.den();
            let v = d.valuation().unwrap();
            let u = QPoly::from_coeffs(d.coeffs()[v..].to_vec());
            let num = f.num().mul(&unit.div_rem(&u).0);
            max_shift = max_shift.max(v);
            row.push((num, v));
        }
        rows.push(row);
    }
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let polys: Vec<QPoly> = row
            .into_iter()
            .map(|(num, v)| num.mul(&QPoly::monomial(BigRational::one(), max_shift - v)))
            .collect();
        let lcm = polys
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = BigRational::from_integer(lcm);
        out.push(
            polys
                .iter()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .map(|c| (c * &scale).to_integer())
                        .collect()
                })
                .collect(),
        );
    }
    Ok((out, (max_shift * size) as u64))
}

/// Determinant of an integer matrix by Bareiss elimination (exact divisions).
fn bareiss_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut neg = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            neg = !neg;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pr = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                row[j] = (&pr[k] * &row[j] - &row[k] * &pr[j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// Pivot rows and columns of a maximal nonsingular square submatrix.
fn independent_rows_cols(m: &[Vec<BigInt>]) -> (Vec<usize>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let to_q = |v: &BigInt| BigRational::from_integer(v.clone());
    let echelon_pivots = |mat: Vec<Vec<BigRational>>, ncols: usize| -> Vec<usize> {
        let mut mat = mat;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
                continue;
            };
            mat.swap(r, p);
            let pr = mat[r].clone();
            for row in mat[r + 1..].iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pr[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    };
    let q: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(to_q).collect()).collect();
    let pcols = echelon_pivots(q.clone(), cols);
    let transposed: Vec<Vec<BigRational>> = pcols
        .iter()
        .map(|&c| (0..rows).map(|i| q[i][c].clone()).collect())
        .collect();
    let prows = echelon_pivots(transposed, rows);
    (prows, pcols)
}

/// Exact polynomial of the minor on `rows x cols`, by evaluation at
/// `0..=bound` and Newton interpolation.
fn minor_polynomial(m: &[Vec<IntPoly>], rows: &[usize], cols: &[usize], bound: usize) -> QPoly {
    let values: Vec<BigRational> = (0..=bound)
        .map(|x| {
            let x = BigInt::from(x);
            let sub = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| ieval(&m[i][j], &x)).collect())
                .collect();
            BigRational::from_integer(bareiss_int(sub))
        })
        .collect();
    interpolate(&values)
}

/// Interpolating polynomial through `(k, values[k])` for `k = 0..n`.
fn interpolate(values: &[BigRational]) -> QPoly {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    // Horner on the Newton form with nodes 0, 1, 2, ...
    let mut acc = QPoly::zero();
    for k in (0..n).rev() {
        let node = QPoly::from_coeffs(vec![
            BigRational::from_integer(-BigInt::from(k)),
            BigRational::one(),
        ]);
        acc = acc.mul(&node).add(&QPoly::constant(dd[k].clone()));
    }
    acc
}

fn check_shape(m: &DenseMatrix, size: usize) -> Result<()> {
    if size > m.rows() || size > m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{size}x{size} minors of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// t-adic valuation of the gcd of all `size x size` minors, by local
/// elimination over the polynomials localized at `t`.
///
/// The rank over Q(t) is first certified by specialization (a polynomial of
/// degree at most `size * D` that vanishes at `size * D + 1` points is zero).
/// One nonzero minor then bounds the answer, which fixes the working precision.
pub fn t_adic_minor_valuation(m: &DenseMatrix, size: usize) -> Result<MinorValuation> {
    check_shape(m, size)?;
    if size == 0 {
        return Ok(MinorValuation::Finite(0));
    }
    let (mat, shift) = integer_polynomial_rows(m, size)?;
    let max_deg = mat
        .iter()
        .flatten()
        .map(|p| p.len().saturating_sub(1))
        .max()
        .unwrap_or(0);
    let bound = size * max_deg;

    let mut witness = None;
    for x in 0..=bound {
        let xb = BigInt::from(x);
        let spec: Vec<Vec<BigInt>> = mat
            .iter()
            .map(|r| r.iter().map(|p| ieval(p, &xb)).collect())
            .collect();
        let (prows, pcols) = independent_rows_cols(&spec);
        if prows.len() >= size {
            witness = Some((prows[..size].to_vec(), pcols[..size].to_vec()));
            break;
        }
    }
    let Some((wrows, wcols)) = witness else {
        return Ok(MinorValuation::Infinite);
    };
    let upper = minor_polynomial(&mat, &wrows, &wcols, bound)
        .valuation()
        .expect("witness minor is nonzero");

    let mut prec = upper + 1;
    let mut work: Vec<Vec<IntPoly>> = mat
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|mut p| {
                    p.truncate(prec);
                    trim(&mut p);
                    p
                })
                .collect()
        })
        .collect();
    let mut rows: Vec<usize> = (0..work.len()).collect();
    let mut cols: Vec<usize> = (0..work[0].len()).collect();
    let mut total = 0usize;
    for _ in 0..size {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, &i) in rows.iter().enumerate() {
            for (ci, &j) in cols.iter().enumerate() {
                if let Some(v) = ival(&work[i][j]) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, ri, ci));
                    }
                }
            }
        }
        let Some((v, ri, ci)) = best else {
            return Err(Error::Precondition(
                "local elimination lost precision".into(),
            ));
        };
        total += v;
        let pi = rows.remove(ri);
        let pj = cols.remove(ci);
        let unit: IntPoly = work[pi][pj][v..].to_vec();
        let new_prec = prec - v;
        for &r in &rows {
            let e = &work[r][pj];
            let Some(_) = ival(e) else { continue };
            let e_shift: IntPoly = e[v..].to_vec();
            let mut new_row = Vec::with_capacity(cols.len());
            for &c in &cols {
                let a = imul_trunc(&unit, &work[r][c], new_prec);
                let b = imul_trunc(&e_shift, &work[pi][c], new_prec);
                new_row.push(isub(&a, &b));
            }
            let content = new_row
                .iter()
                .flatten()
                .fold(BigInt::zero(), |acc, c| acc.gcd(c));
            for (k, &c) in cols.iter().enumerate() {
                let mut p = std::mem::take(&mut new_row[k]);
                if content > BigInt::one() {
                    for x in p.iter_mut() {
                        *x = &*x / &content;
                    }
                }
                work[r][c] = p;
            }
            work[r][pj] = Vec::new();
        }
        prec = new_prec;
        for &r in &rows {
            for &c in &cols {
                let p = &mut work[r][c];
                p.truncate(prec);
                trim(p);
            }
        }
    }
    let total = total as u64;
    if total < shift {
        return Err(Error::Precondition("negative minor valuation".into()));
    }
    Ok(MinorValuation::Finite(total - shift))
}

fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
        .collect()
}

fn constant_polys(m: &[Vec<i64>]) -> Vec<Vec<IntPoly>> {
    m.iter()
        .map(|r| r.iter().map(|&x| vec![BigInt::from(x)]).collect())
        .collect()
}

fn int_poly_product(a: &[Vec<IntPoly>], b: &[Vec<IntPoly>]) -> Vec<Vec<IntPoly>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc: IntPoly = Vec::new();
                    for k in 0..inner {
                        let (p, q) = (&row[k], &b[k][j]);
                        if p.iter().all(|c| c.is_zero()) || q.iter().all(|c| c.is_zero()) {
                            continue;
                        }
                        if acc.len() < p.len() + q.len() - 1 {
                            acc.resize(p.len() + q.len() - 1, BigInt::zero());
                        }
                        for (i, x) in p.iter().enumerate() {
                            for (l, y) in q.iter().enumerate() {
                                acc[i + l] += x * y;
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Result of sampling maximal minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledMinorGcd {
    /// Monic gcd of the nonzero samples (zero if all vanished).
    pub gcd: QPoly,
    pub samples: usize,
    /// Samples that vanished identically.
    pub zero_minors: usize,
}

impl SampledMinorGcd {
    /// Whether the gcd is `c * t^k` for some constant `c`.
    pub fn is_monomial(&self) -> bool {
        !self.gcd.is_zero() && self.gcd.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn valuation(&self) -> Option<usize> {
        self.gcd.valuation()
    }
}

/// Gcd of `samples` seeded random combinations of the `size x size` minors.
///
/// Each sample is `det(L M R)` for random small-integer `L` (`size x rows`) and
/// `R` (`cols x size`); by Cauchy-Binet this is an integer combination of all
/// maximal minors, so the sampled gcd agrees with the gcd of every minor with
/// high probability. Entries must be polynomials in `t`.
pub fn sampled_minor_gcd(
    m: &DenseMatrix,
    size: usize,
    samples: usize,
    seed: u64,
) -> Result<SampledMinorGcd> {
    check_shape(m, size)?;
    let polys: Vec<Vec<QPoly>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e: &FieldElement| {
                    e.to_qpoly().ok_or_else(|| {
                        Error::Precondition("sampled minors need polynomial entries".into())
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    // Clearing rational coefficient denominators per row only rescales minors by constants.
    let mat: Vec<Vec<IntPoly>> = polys
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .flat_map(|p| p.coeffs().iter())
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let s = BigRational::from_integer(lcm);
            row.iter()
                .map(|p| p.coeffs().iter().map(|c| (c * &s).to_integer()).collect())
                .collect()
        })
        .collect();
    let max_deg = mat
        .iter()
        .flatten()
        .map(|p| p.len().saturating_sub(1))
        .max()
        .unwrap_or(0);
    let bound = size * max_deg;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gcd = QPoly::zero();
    let mut zero_minors = 0;
    let all: Vec<usize> = (0..size).collect();
    for _ in 0..samples {
        let left = random_int_matrix(&mut rng, size, m.rows());
        let right = random_int_matrix(&mut rng, m.cols(), size);
        let mixed = int_poly_product(
            &int_poly_product(&constant_polys(&left), &mat),
            &constant_polys(&right),
        );
        let minor = minor_polynomial(&mixed, &all, &all, bound);
        if minor.is_zero() {
            zero_minors += 1;
            continue;
        }
        gcd = gcd.gcd(&minor);
    }
    Ok(SampledMinorGcd {
        gcd,
        samples,
        zero_minors,
    })
}
