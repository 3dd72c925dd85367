//! Univariate polynomials over a kernel field: characteristic polynomials and
//! root finding for the rational-support splitting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldElement};
use super::matrix::DenseMatrix;
use super::ratfunc::QPoly;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Self::new(field, vec![])
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The polynomial `x - a`.
    pub fn linear(a: &FieldElement) -> Self {
        Self::new(a.field(), vec![-a, a.field().one()])
    }

    pub fn x(field: Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.field,
            (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.field,
            (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect(),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.field, out)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().unwrap()),
        }
    }

    /// Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let inv = d.coeffs[dd].inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(self.field, quot), Self::new(self.field, rem))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.from_i64(k as i64))
            .collect();
        Self::new(self.field, cs)
    }

    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.div_rem(m).1;
        let mut acc = Self::constant(self.field.one()).div_rem(m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(m).1;
            }
            base = base.mul(&base).div_rem(m).1;
            e >>= 1;
        }
        acc
    }

    /// Distinct roots lying in the coefficient field, in canonical order
    /// (ascending for Q, ascending residues for F_p).
    ///
    /// Over Q(t) only the case of a single root at zero (`x^n`) is handled;
    /// anything else yields [`Error::UnsupportedRootFinding`].
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match self.field {
            Field::Rational => Ok(rational_roots(self)),
            Field::Prime(p) => Ok(prime_roots(self, p)),
            Field::RationalFunction => {
                let n = self.coeffs.len() - 1;
                if self.coeffs[..n].iter().all(|c| c.is_zero()) {
                    Ok(if n > 0 {
                        vec![self.field.zero()]
                    } else {
                        vec![]
                    })
                } else {
                    Err(Error::UnsupportedRootFinding("Q(t)".into()))
                }
            }
        }
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &FieldElement) -> usize {
        let lin = Self::linear(a);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

/// Characteristic polynomial `det(x I - A)` via reduction to Hessenberg form.
pub fn characteristic_polynomial(a: &DenseMatrix) -> Result<UniPoly> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let f = a.field();
    let n = a.rows();
    let mut h = a.to_rows();
    // Similarity transformations to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = h[m][m - 1].inv().unwrap();
        for i in m + 1..n {
            let u = &h[i][m - 1] * &inv;
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = &h[m][j] * &u;
                h[i][j] = &h[i][j] - &v;
            }
            for row in h.iter_mut() {
                let v = &row[i] * &u;
                row[m] = &row[m] + &v;
            }
        }
    }
    let x = UniPoly::x(f);
    let mut p: Vec<UniPoly> = vec![UniPoly::constant(f.one())];
    for m in 0..n {
        let mut next = x.sub(&UniPoly::constant(h[m][m].clone())).mul(&p[m]);
        let mut prod = f.one();
        for i in (0..m).rev() {
            prod = &prod * &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = &prod * &h[i][m];
            next = next.sub(&p[i].scale(&c));
        }
        p.push(next);
    }
    Ok(p.pop().unwrap())
}

fn rational_roots(f: &UniPoly) -> Vec<FieldElement> {
    let coeffs: Vec<BigRational> = f
        .coeffs
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let qp = QPoly::from_coeffs(coeffs);
    let sqfree = qp.div_rem(&qp.gcd(&derivative_q(&qp))).0.monic();
    let n = match sqfree.degree() {
        Some(n) if n > 0 => n,
        _ => return vec![],
    };
    // Substituting x = s/D with D the common denominator gives a monic integer
    // polynomial whose rational roots are integers.
    let den = sqfree.coeffs().iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let dq = BigRational::from_integer(den.clone());
    let mut scaled = Vec::with_capacity(n + 1);
    let mut pw = BigRational::one();
    for k in (0..=n).rev() {
        scaled.push(sqfree.coeff(k) * &pw);
        pw = &pw * &dq;
    }
    scaled.reverse();
    let h = QPoly::from_coeffs(scaled);
    let bound = h
        .coeffs()
        .iter()
        .map(|c| c.abs().to_integer())
        .max()
        .unwrap()
        + BigInt::one();
    let sturm = sturm_sequence(&h);
    let half = BigRational::new(1.into(), 2.into());
    let mut roots = Vec::new();
    let lo = BigRational::from_integer(-&bound) - &half;
    let hi = BigRational::from_integer(bound) + &half;
    isolate_integer_roots(&h, &sturm, lo, hi, &mut roots);
    roots
        .into_iter()
        .map(|s| FieldElement::Rational(s / dq.clone()))
        .collect()
}

fn derivative_q(p: &QPoly) -> QPoly {
    QPoly::from_coeffs(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect(),
    )
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), derivative_q(p)];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Integer roots of the square-free `h` inside `(lo, hi)`, where both endpoints
/// are half-integers and therefore never roots.
fn isolate_integer_roots(
    h: &QPoly,
    sturm: &[QPoly],
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<BigRational>,
) {
    let count = sign_changes(sturm, &lo) - sign_changes(sturm, &hi);
    if count == 0 {
        return;
    }
    let width = &hi - &lo;
    if width <= BigRational::one() {
        let mid = &lo + BigRational::new(1.into(), 2.into());
        if h.eval(&mid).is_zero() {
            out.push(mid);
        }
        return;
    }
    let half_width = (width / BigRational::from_integer(2.into())).floor();
    let mid = &lo + half_width;
    isolate_integer_roots(h, sturm, lo, mid.clone(), out);
    isolate_integer_roots(h, sturm, mid, hi, out);
}

fn prime_roots(f: &UniPoly, p: u64) -> Vec<FieldElement> {
    let field = f.field;
    let monic = f.monic();
    if monic.degree() == Some(0) {
        return vec![];
    }
    // gcd(f, x^p - x) is the product of the distinct linear factors.
    let xp = UniPoly::x(field).pow_mod(p, &monic);
    let g = monic.gcd(&xp.sub(&UniPoly::x(field)));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    split_linear(&g, p, &mut rng, &mut roots);
    roots.sort_by_key(|r| match r {
        FieldElement::Prime { value, .. } => *value,
        _ => 0,
    });
    roots
}

/// Cantor-Zassenhaus equal-degree splitting for a product of distinct linear factors.
fn split_linear(g: &UniPoly, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElement>) {
    let field = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-&g.monic().coeffs[0]),
        Some(_) => loop {
            let a = field.from_i64(rng.gen_range(0..p) as i64);
            let shifted = UniPoly::x(field).add(&UniPoly::constant(a));
            let pw = shifted
                .pow_mod((p - 1) / 2, g)
                .sub(&UniPoly::constant(field.one()));
            let d = g.gcd(&pw);
            let deg = d.degree().unwrap_or(0);
            if deg > 0 && Some(deg) < g.degree() {
                let other = g.div_rem(&d).0;
                split_linear(&d, p, rng, out);
                split_linear(&other, p, rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(cs: &[i64]) -> UniPoly {
        let f = Field::Rational;
        UniPoly::new(f, cs.iter().map(|&c| f.from_i64(c)).collect())
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (x - 1/2)(x + 3)^2 (x^2 + 1) scaled by 2
        let p = qpoly(&[-1, 2])
            .mul(&qpoly(&[3, 1]))
            .mul(&qpoly(&[3, 1]))
            .mul(&qpoly(&[1, 0, 1]));
        let roots = p.roots().unwrap();
        let f = Field::Rational;
        assert_eq!(roots, vec![f.from_i64(-3), f.from_ratio(1, 2).unwrap()]);
        assert_eq!(p.root_multiplicity(&f.from_i64(-3)), 2);
    }

    #[test]
    fn irrational_roots_are_skipped() {
        assert!(qpoly(&[-2, 0, 1]).roots().unwrap().is_empty());
        assert_eq!(
            qpoly(&[0, 0, 0, 1]).roots().unwrap(),
            vec![Field::Rational.zero()]
        );
    }

    #[test]
    fn prime_field_roots() {
        let f = Field::prime(7).unwrap();
        // (x - 2)(x - 5)(x^2 + 1): x^2 + 1 is irreducible mod 7.
        let lin = |a: i64| UniPoly::linear(&f.from_i64(a));
        let quad = UniPoly::new(f, vec![f.one(), f.zero(), f.one()]);
        let p = lin(2).mul(&lin(5)).mul(&quad).mul(&lin(5));
        assert_eq!(p.roots().unwrap(), vec![f.from_i64(2), f.from_i64(5)]);
    }

    #[test]
    fn charpoly_matches_cayley_hamilton() {
        let f = Field::Rational;
        let a = DenseMatrix::from_i64_rows(f, &[&[2, 1, 0], &[0, 2, 0], &[1, -1, 3]]);
        let cp = characteristic_polynomial(&a).unwrap();
        // (x - 2)^2 (x - 3)
        assert_eq!(
            cp,
            qpoly(&[-2, 1]).mul(&qpoly(&[-2, 1])).mul(&qpoly(&[-3, 1]))
        );
        let nil = DenseMatrix::from_i64_rows(f, &[&[0, 1], &[0, 0]]);
        assert_eq!(characteristic_polynomial(&nil).unwrap(), qpoly(&[0, 0, 1]));
    }
}
