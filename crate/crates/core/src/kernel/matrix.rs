//! Dense matrices over a single coefficient field.

use std::fmt;

use super::field::{Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: DenseMatrix,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, checking length and domain.
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.field() != field) {
            return Err(Error::MixedDomains(
                field.to_string(),
                bad.field().to_string(),
            ));
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, data).expect("well-formed integer rows")
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    /// Panics if the value lies in another field.
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        DenseMatrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::MixedDomains(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        if self.field != other.field {
            return Err(Error::MixedDomains(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(DenseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        DenseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    pub fn trace(&self) -> Result<FieldElement> {
        self.require_square()?;
        Ok((0..self.rows).fold(self.field.zero(), |acc, i| &acc + self.get(i, i)))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Reduced row echelon form by pivoted Gauss-Jordan elimination.
    pub fn rref(&self) -> Echelon {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().unwrap();
            if !inv.is_one() {
                for x in m[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = m.into_iter().flatten().collect();
        Echelon {
            matrix: DenseMatrix {
                field: self.field,
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    /// Rank over the entry field.
    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full RREF.
        let mut m = self.to_rows();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().unwrap();
            let pivot_row = m[r].clone();
            for row in m[r + 1..].iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let ech = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = (0..self.cols).map(|c| ech.pivots.contains(&c)).collect();
        for free in (0..self.cols).filter(|&c| !pivot_set[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.matrix.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        let mut m = self.to_rows();
        let mut sign = false;
        let mut prev = self.field.one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(self.field.zero());
                };
                m.swap(k, p);
                sign = !sign;
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                for j in k + 1..n {
                    let v = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                    row[j] = &v / &prev;
                }
                row[k] = self.field.zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign { -det } else { det })
    }

    /// Pfaffian by skew-symmetric elimination, normalized so that
    /// `pf([[0, a], [-a, 0]]) = a`.
    pub fn pfaffian(&self) -> Result<FieldElement> {
        if !self.is_skew_symmetric() || !self.rows.is_multiple_of(2) {
            return Err(Error::NotSkewSymmetric);
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut pf = self.field.one();
        for k in (0..n).step_by(2) {
            let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
                return Ok(self.field.zero());
            };
            if j != k + 1 {
                a.swap(k + 1, j);
                for row in a.iter_mut() {
                    row.swap(k + 1, j);
                }
                pf = -pf;
            }
            let p = a[k][k + 1].clone();
            pf = &pf * &p;
            let pinv = p.inv().unwrap();
            // Congruence that clears rows/columns k, k+1 outside the pivot block.
            let alpha: Vec<FieldElement> = (0..n).map(|i| &a[i][k + 1] * &pinv).collect();
            let beta: Vec<FieldElement> = (0..n).map(|i| &a[i][k] * &pinv).collect();
            let row_k = a[k].clone();
            let row_k1 = a[k + 1].clone();
            for i in k + 2..n {
                for j in k + 2..n {
                    let mut v = a[i][j].clone();
                    if !alpha[i].is_zero() && !row_k[j].is_zero() {
                        v = &v - &(&alpha[i] * &row_k[j]);
                    }
                    if !beta[i].is_zero() && !row_k1[j].is_zero() {
                        v = &v + &(&beta[i] * &row_k1[j]);
                    }
                    a[i][j] = v;
                }
            }
        }
        Ok(pf)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Vec::with_capacity(n * 2 * n);
        for i in 0..n {
            aug.extend(self.row(i).iter().cloned());
            aug.extend((0..n).map(|j| {
                if i == j {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            }));
        }
        let ech = DenseMatrix {
            field: self.field,
            rows: n,
            cols: 2 * n,
            data: aug,
        }
        .rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(ech.matrix.submatrix(&rows, &cols))
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.push(b[i].clone());
        }
        let aug = DenseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols + 1,
            data,
        };
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.matrix.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_and_kernel_basics() {
        assert_eq!(DenseMatrix::identity(q(), 3).rank(), 3);
        assert_eq!(DenseMatrix::zeros(q(), 4, 4).rank(), 0);
        assert!(DenseMatrix::identity(q(), 3).kernel_basis().is_empty());
        let m = DenseMatrix::from_i64_rows(q(), &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -&k[0][1]);
    }

    #[test]
    fn determinant_basics() {
        assert!(DenseMatrix::identity(q(), 4)
            .determinant()
            .unwrap()
            .is_one());
        let d = DenseMatrix::from_i64_rows(q(), &[&[2, 0], &[0, 3]]);
        assert_eq!(d.determinant().unwrap(), q().from_i64(6));
        let skew = DenseMatrix::from_i64_rows(q(), &[&[0, 1, 2], &[-1, 0, 3], &[-2, -3, 0]]);
        assert!(skew.determinant().unwrap().is_zero());
        let perm = DenseMatrix::from_i64_rows(q(), &[&[0, 1], &[1, 0]]);
        assert_eq!(perm.determinant().unwrap(), q().from_i64(-1));
        assert!(matches!(
            DenseMatrix::zeros(q(), 2, 3).determinant(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn pfaffian_basics() {
        let m = DenseMatrix::from_i64_rows(q(), &[&[0, 1], &[-1, 0]]);
        assert!(m.pfaffian().unwrap().is_one());
        let (a, b) = (5, -7);
        let blocks = DenseMatrix::from_i64_rows(
            q(),
            &[&[0, a, 0, 0], &[-a, 0, 0, 0], &[0, 0, 0, b], &[0, 0, -b, 0]],
        );
        assert_eq!(blocks.pfaffian().unwrap(), q().from_i64(a * b));
        // pf of the generic 4x4 skew matrix is a12 a34 - a13 a24 + a14 a23.
        let g = DenseMatrix::from_i64_rows(
            q(),
            &[
                &[0, 2, 3, 5],
                &[-2, 0, 7, 11],
                &[-3, -7, 0, 13],
                &[-5, -11, -13, 0],
            ],
        );
        assert_eq!(g.pfaffian().unwrap(), q().from_i64(2 * 13 - 3 * 11 + 5 * 7));
        assert!(DenseMatrix::from_i64_rows(q(), &[&[0, 1], &[1, 0]])
            .pfaffian()
            .is_err());
        assert!(DenseMatrix::zeros(q(), 3, 3).pfaffian().is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let m = DenseMatrix::from_i64_rows(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(q(), 2));
        let x = m.solve(&[q().from_i64(3), q().from_i64(2)]).unwrap();
        assert_eq!(x, vec![q().one(), q().one()]);
        let sing = DenseMatrix::from_i64_rows(q(), &[&[1, 1], &[1, 1]]);
        assert_eq!(sing.inverse(), Err(Error::SingularMatrix));
        assert!(sing.solve(&[q().one(), q().zero()]).is_none());
    }

    #[test]
    fn mixed_domains_rejected() {
        let f5 = Field::prime(5).unwrap();
        let r = DenseMatrix::new(q(), 1, 2, vec![q().one(), f5.one()]);
        assert!(matches!(r, Err(Error::MixedDomains(_, _))));
    }

    #[test]
    fn prime_field_rank() {
        let f5 = Field::prime(5).unwrap();
        // Rank 2 over Q, rank 1 mod 5.
        let m = DenseMatrix::from_i64_rows(f5, &[&[1, 2], &[3, 1]]);
        assert_eq!(m.rank(), 1);
        let m = DenseMatrix::from_i64_rows(q(), &[&[1, 2], &[3, 1]]);
        assert_eq!(m.rank(), 2);
    }
}
