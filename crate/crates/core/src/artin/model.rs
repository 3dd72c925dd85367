use crate::error::{Error, Result};
use crate::groebner::{groebner, GroebnerBasis, QuotientBasis};
use crate::kernel::{DenseMatrix, FieldElement};
use crate::poly::{Ideal, Polynomial};

/// The quotient algebra `S/I` presented by its standard monomials and the
/// matrices of multiplication by each variable.
#[derive(Clone, Debug)]
pub struct LocalAlgebraModel {
    gb: GroebnerBasis,
    basis: QuotientBasis,
    operators: Vec<DenseMatrix>,
    primary_at_origin: bool,
}

/// Builds the multiplication operators of `S/I` from a Gröbner basis of `I`.
///
/// Column `j` of `X_i` holds the coordinates of `NF(x_i * λ_j)`.
pub fn multiplication_operators(gb: &GroebnerBasis) -> Result<LocalAlgebraModel> {
    let basis = gb.quotient_basis()?;
    let ring = gb.ring();
    let field = ring.field();
    let n = basis.len();
    let mut operators = Vec::with_capacity(ring.nvars());
    for i in 0..ring.nvars() {
        let x = ring.var(i);
        let mut m = DenseMatrix::zeros(field, n, n);
        for (j, lam) in basis.monomials().iter().enumerate() {
            let prod = &x * &ring.monomial(lam.clone());
            for (r, c) in gb.coordinates(&prod, &basis).into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(r, j, c);
                }
            }
        }
        operators.push(m);
    }
    let primary_at_origin = operators.iter().all(|x| is_nilpotent(x, n));
    Ok(LocalAlgebraModel {
        gb: gb.clone(),
        basis,
        operators,
        primary_at_origin,
    })
}

fn is_nilpotent(x: &DenseMatrix, n: usize) -> bool {
    let mut p = x.clone();
    let mut k = 1;
    while k < n {
        p = p.mul(&p).expect("square");
        k *= 2;
    }
    p.is_zero()
}

impl LocalAlgebraModel {
    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        multiplication_operators(&groebner(ideal))
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn colength(&self) -> usize {
        self.basis.len()
    }

    pub fn operators(&self) -> &[DenseMatrix] {
        &self.operators
    }

    pub fn operator(&self, i: usize) -> &DenseMatrix {
        &self.operators[i]
    }

    /// True when every `X_i` is nilpotent, i.e. `I` is primary to `(x_1..x_d)`.
    pub fn is_primary_at_origin(&self) -> bool {
        self.primary_at_origin
    }

    /// Coordinates of the class of `1`.
    pub fn unit_vector(&self) -> Vec<FieldElement> {
        let field = self.gb.ring().field();
        let mut v = vec![field.zero(); self.colength()];
        if let Some(i) = self
            .basis
            .position(&crate::poly::Monomial::one(self.gb.ring().nvars()))
        {
            v[i] = field.one();
        }
        v
    }

    /// Whether all operators commute pairwise.
    pub fn operators_commute(&self) -> bool {
        let x = &self.operators;
        (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x[i].mul(&x[j]).ok() == x[j].mul(&x[i]).ok()))
    }

    pub fn traces(&self) -> Vec<FieldElement> {
        self.operators
            .iter()
            .map(|x| x.trace().expect("square"))
            .collect()
    }

    /// `(tr X_1 / n, ..., tr X_d / n)`, the mean of the support points counted
    /// with multiplicity.
    pub fn centroid(&self) -> Result<Vec<FieldElement>> {
        let field = self.gb.ring().field();
        let n = self.colength();
        if field.divides_characteristic(n) {
            return Err(Error::CharacteristicDivides {
                p: field.characteristic(),
                n,
            });
        }
        let inv = field.from_i64(n as i64).inv().expect("n is a unit");
        Ok(self.traces().iter().map(|t| t * &inv).collect())
    }
}

pub fn centroid(model: &LocalAlgebraModel) -> Result<Vec<FieldElement>> {
    model.centroid()
}

/// Image of `I` under `x_i -> x_i + a_i`.
pub fn translate_ideal(ideal: &Ideal, a: &[FieldElement]) -> Result<Ideal> {
    let ring = ideal.ring();
    if a.len() != ring.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "shift of length {} for {} variables",
            a.len(),
            ring.nvars()
        )));
    }
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| &ring.var(i) + &ring.constant(a[i].clone()))
        .collect();
    Ok(ideal.map(ring.clone(), |g| g.substitute(&images)))
}

/// Moves the centroid of the support to the origin. Returns the translated
/// ideal and the centroid `c`; the new ideal is the image under `x_i -> x_i + c_i`.
pub fn recenter(ideal: &Ideal) -> Result<(Ideal, Vec<FieldElement>)> {
    let model = LocalAlgebraModel::from_ideal(ideal)?;
    let c = model.centroid()?;
    Ok((translate_ideal(ideal, &c)?, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{ideal_equal, points_ideal};
    use crate::kernel::Field;
    use crate::poly::Ring;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn jordan_block_and_scalar() {
        let r = Ring::xyz(q(), 1);
        let m = LocalAlgebraModel::from_ideal(&Ideal::from_strs(&r, &["x^2"])).unwrap();
        assert_eq!(
            m.operator(0),
            &DenseMatrix::from_i64_rows(q(), &[&[0, 0], &[1, 0]])
        );
        assert!(m.is_primary_at_origin());
        let m = LocalAlgebraModel::from_ideal(&Ideal::from_strs(&r, &["x - 5"])).unwrap();
        assert_eq!(m.operator(0), &DenseMatrix::from_i64_rows(q(), &[&[5]]));
        assert!(!m.is_primary_at_origin());
    }

    #[test]
    fn centroid_of_two_points() {
        let r = Ring::xyz(q(), 2);
        let pts = vec![
            vec![q().from_i64(0), q().from_i64(0)],
            vec![q().from_i64(2), q().from_i64(4)],
        ];
        let m = multiplication_operators(&points_ideal(&r, &pts).unwrap()).unwrap();
        assert_eq!(
            m.centroid().unwrap(),
            vec![q().from_i64(1), q().from_i64(2)]
        );
        assert!(m.operators_commute());
    }

    #[test]
    fn centroid_needs_invertible_length() {
        let r = Ring::xyz(Field::prime(5).unwrap(), 1);
        let m = LocalAlgebraModel::from_ideal(&Ideal::from_strs(&r, &["x^5"])).unwrap();
        assert_eq!(
            m.centroid(),
            Err(Error::CharacteristicDivides { p: 5, n: 5 })
        );
    }

    #[test]
    fn translation_round_trip() {
        let r = Ring::xyz(q(), 1);
        let i = Ideal::from_strs(&r, &["x - 1"]);
        let moved = translate_ideal(&i, &[q().from_i64(1)]).unwrap();
        assert!(ideal_equal(&moved, &Ideal::from_strs(&r, &["x"])));
        let r2 = Ring::xyz(q(), 2);
        let i = Ideal::from_strs(&r2, &["x^2 - y", "y^2 - 3*x + 1"]);
        let a = [q().from_i64(2), q().from_ratio(-1, 3).unwrap()];
        let back = translate_ideal(&translate_ideal(&i, &a).unwrap(), &[-&a[0], -&a[1]]).unwrap();
        assert!(ideal_equal(&back, &i));
    }

    #[test]
    fn recentering_kills_traces() {
        let r = Ring::xyz(q(), 2);
        let i = Ideal::from_strs(&r, &["(x - 3)^2", "y + 2"]);
        let (c, shift) = recenter(&i).unwrap();
        assert_eq!(shift, vec![q().from_i64(3), q().from_i64(-2)]);
        let m = LocalAlgebraModel::from_ideal(&c).unwrap();
        assert!(m.traces().iter().all(|t| t.is_zero()));
        assert!(m.is_primary_at_origin());
    }
}
