use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `x^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weight(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Self) -> Option<Self> {
        self.divides(o)
            .then(|| Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in grevlex-descending order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(0, deg, &mut cur, &mut out);
        out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        out
    }

    /// All monomials of total degree below `deg`, grevlex ascending.
    pub fn all_below_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for k in 0..deg {
            let mut layer = Self::all_of_degree(nvars, k);
            layer.reverse();
            out.extend(layer);
        }
        out
    }
}

/// Tie-breaking order for weight-refined comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tiebreak {
    Grevlex,
    Lex,
}

/// Monomial order. `Weighted` compares `w . a` first and falls back to the tiebreak.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Weighted {
        weight: Vec<i64>,
        tiebreak: Tiebreak,
    },
}

impl MonomialOrder {
    pub fn weighted(weight: Vec<i64>) -> Self {
        MonomialOrder::Weighted {
            weight,
            tiebreak: Tiebreak::Grevlex,
        }
    }

    /// Total comparison of two monomials of the same length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Weighted { weight, tiebreak } => a
                .weight(weight)
                .cmp(&b.weight(weight))
                .then_with(|| match tiebreak {
                    Tiebreak::Grevlex => grevlex(a, b),
                    Tiebreak::Lex => a.0.cmp(&b.0),
                }),
        }
    }

    /// Comparison that checks the monomials (and weight) have matching lengths.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "monomials in {} and {} variables",
                a.nvars(),
                b.nvars()
            )));
        }
        if let MonomialOrder::Weighted { weight, .. } = self {
            if weight.len() != a.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "weight of length {} for {} variables",
                    weight.len(),
                    a.nvars()
                )));
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Whether `1` is the smallest monomial (all weights nonnegative).
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::Weighted { weight, .. } => weight.iter().all(|&w| w >= 0),
            _ => true,
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_and_lex() {
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[2, 0]), &m(&[1, 1])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 1])),
            Ordering::Greater
        );
        // grevlex: x1*x3 < x2^2 in 3 variables
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn weight_ties_fall_to_tiebreak() {
        let w = MonomialOrder::weighted(vec![7, 5, 3]);
        let z4 = m(&[0, 0, 4]);
        let xy = m(&[1, 1, 0]);
        assert_eq!(z4.weight(&[7, 5, 3]), 12);
        assert_eq!(xy.weight(&[7, 5, 3]), 12);
        // Same weight; grevlex then puts the degree-4 monomial first.
        assert_eq!(w.cmp(&z4, &xy), Ordering::Greater);
        assert!(w.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn degree_enumeration() {
        let quads = Monomial::all_of_degree(4, 2);
        assert_eq!(quads.len(), 10);
        assert_eq!(quads[0], m(&[2, 0, 0, 0]));
        assert_eq!(quads[9], m(&[0, 0, 0, 2]));
        assert_eq!(Monomial::all_below_degree(3, 3).len(), 10);
    }
}
