use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::kernel::{Field, FieldElement};

/// Multivariate polynomial with nonzero coefficients in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: FieldElement) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn term(field: Field, m: Monomial, c: FieldElement) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(field, nvars);
        p.add_term(m, c);
        p
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    /// The variable `x_i` (zero-based).
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i))
    }

    /// Sums the given terms, combining like monomials.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Polynomial from `(coefficient, exponents)` pairs with integer coefficients.
    pub fn from_i64_terms(field: Field, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), field.from_i64(*c))),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(m.nvars(), self.nvars, "monomial length mismatch");
        assert_eq!(c.field(), self.field, "coefficient from a different field");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Terms sorted in descending order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, FieldElement)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, deg: u32) -> Self {
        self.filter(|m| m.degree() == deg)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Product with the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Sum of the terms of maximal `w`-weight.
    pub fn weight_initial_form(&self, w: &[i64]) -> Result<Self> {
        if w.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "weight of length {} for {} variables",
                w.len(),
                self.nvars
            )));
        }
        let Some(top) = self.terms.keys().map(|m| m.weight(w)).max() else {
            return Err(Error::ZeroInput);
        };
        Ok(self.filter(|m| m.weight(w) == top))
    }

    /// Formal partial derivative in `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            p.add_term(Monomial::new(ex), c * &self.field.from_i64(e as i64));
        }
        p
    }

    /// Substitutes `x_i -> images[i]`; the images may live in a different number of variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(self.field, target), p.clone()])
            .collect();
        let mut out = Self::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.field, target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = &v * &x.pow(e as u64);
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Maps every coefficient through `f` into `field`.
    pub fn map_coeffs(&self, field: Field, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Re-embeds into more or fewer variables via an index map (`None` drops the term's variable
    /// only if its exponent is zero; panics otherwise).
    pub fn remap_vars(&self, nvars: usize, map: &[Option<usize>]) -> Self {
        Self::from_terms(
            self.field,
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[map[i].expect("dropped variable occurs")] += x;
                    }
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn arithmetic_cancels() {
        let x = Polynomial::var(q(), 2, 0);
        let y = Polynomial::var(q(), 2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expect);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn initial_forms() {
        // x + x^2 + z^2 with w = (1,1,1) -> x^2 + z^2
        let f = Polynomial::from_i64_terms(
            q(),
            3,
            &[(1, &[1, 0, 0]), (1, &[2, 0, 0]), (1, &[0, 0, 2])],
        );
        let g = Polynomial::from_i64_terms(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 0, 2])]);
        assert_eq!(f.weight_initial_form(&[1, 1, 1]).unwrap(), g);
        let xy = Polynomial::from_i64_terms(q(), 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        assert_eq!(xy.weight_initial_form(&[1, 1]).unwrap(), xy);
        assert_eq!(
            Polynomial::zero(q(), 2).weight_initial_form(&[1, 1]),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn substitution_and_derivative() {
        // (x + y)^2 under x -> x + 1 is x^2 + 2xy + y^2 + 2x + 2y + 1
        let f = Polynomial::from_i64_terms(q(), 2, &[(1, &[2, 0]), (2, &[1, 1]), (1, &[0, 2])]);
        let x1 = &Polynomial::var(q(), 2, 0) + &Polynomial::one(q(), 2);
        let g = f.substitute(&[x1, Polynomial::var(q(), 2, 1)]);
        assert_eq!(g.constant_term(), q().one());
        assert_eq!(g.len(), 6);
        assert_eq!(
            f.derivative(0),
            Polynomial::from_i64_terms(q(), 2, &[(2, &[1, 0]), (2, &[0, 1])])
        );
    }
}
