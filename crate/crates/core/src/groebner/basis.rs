use std::collections::{BTreeSet, HashMap};

use super::engine::{self, IPoly, Keyer};
use crate::error::{Error, Result};
use crate::kernel::FieldElement;
use crate::poly::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};

/// Reduced Gröbner basis: monic, auto-reduced, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    internal: Vec<IPoly>,
    keyer: Keyer,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.elements == other.elements
    }
}

/// Standard monomials spanning `S/I`, in ascending order of the basis' monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl QuotientBasis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        QuotientBasis { monomials, index }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
///
/// Weight-refined orders with negative weights are not well-orders; use
/// [`initial_ideal`](super::initial_ideal) for those.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    if !order.is_global() {
        return Err(Error::Precondition(
            "Buchberger's algorithm needs a global monomial order".into(),
        ));
    }
    if let MonomialOrder::Weighted { weight, .. } = order {
        if weight.len() != ideal.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "weight of length {} for {} variables",
                weight.len(),
                ideal.nvars()
            )));
        }
    }
    let keyer = Keyer::new(order);
    let gens: Vec<IPoly> = ideal
        .generators()
        .iter()
        .map(|g| IPoly::from_poly(g, &keyer))
        .collect();
    let internal = engine::buchberger(&gens, &keyer);
    Ok(GroebnerBasis::from_internal(
        ideal.ring().clone(),
        order.clone(),
        internal,
        keyer,
    ))
}

/// Reduced Gröbner basis under grevlex.
pub fn groebner(ideal: &Ideal) -> GroebnerBasis {
    buchberger(ideal, &MonomialOrder::Grevlex).expect("grevlex is global")
}

impl GroebnerBasis {
    pub(crate) fn from_internal(
        ring: Ring,
        order: MonomialOrder,
        internal: Vec<IPoly>,
        keyer: Keyer,
    ) -> Self {
        let elements = internal
            .iter()
            .map(|p| p.to_poly(ring.field(), ring.nvars()))
            .collect();
        GroebnerBasis {
            ring,
            order,
            elements,
            internal,
            keyer,
        }
    }

    /// Trusts that `elements` already form a reduced Gröbner basis.
    pub(crate) fn from_reduced(
        ring: Ring,
        order: MonomialOrder,
        elements: Vec<Polynomial>,
    ) -> Self {
        let keyer = Keyer::new(&order);
        let mut internal: Vec<IPoly> = elements
            .iter()
            .map(|p| IPoly::from_poly(p, &keyer))
            .collect();
        internal.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
        Self::from_internal(ring, order, internal, keyer)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.ring.clone(), self.elements.clone())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal
            .iter()
            .map(|p| p.lead().mono.clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.internal.iter().any(|p| p.lead().mono.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let r = engine::reduce(&IPoly::from_poly(f, &self.keyer), &self.internal, None);
        r.to_poly(self.ring.field(), self.ring.nvars())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Division with remainder: `f = sum q_i g_i + r` with `r` fully reduced.
    pub fn divide(&self, f: &Polynomial) -> (Vec<Polynomial>, Polynomial) {
        let mut qs = vec![Vec::new(); self.internal.len()];
        let r = engine::reduce(
            &IPoly::from_poly(f, &self.keyer),
            &self.internal,
            Some(&mut qs),
        );
        let field = self.ring.field();
        let n = self.ring.nvars();
        let quotients = qs
            .into_iter()
            .map(|terms| Polynomial::from_terms(field, n, terms))
            .collect();
        (quotients, r.to_poly(field, n))
    }

    /// Standard monomials, or [`Error::InfiniteColength`].
    pub fn quotient_basis(&self) -> Result<QuotientBasis> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        for i in 0..n {
            let pure = lms.iter().any(|m| {
                m.exponents()[i] > 0
                    && m.exponents()
                        .iter()
                        .enumerate()
                        .all(|(j, &e)| j == i || e == 0)
            });
            if !pure {
                return Err(Error::InfiniteColength);
            }
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut frontier = vec![Monomial::one(n)];
        while let Some(m) = frontier.pop() {
            if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for i in 0..n {
                frontier.push(m.mul(&Monomial::var(n, i)));
            }
            seen.insert(m);
        }
        let mut monomials: Vec<Monomial> = seen.into_iter().collect();
        monomials.sort_by_key(|m| self.keyer.key(m));
        Ok(QuotientBasis::new(monomials))
    }

    pub fn colength(&self) -> Result<usize> {
        self.quotient_basis().map(|q| q.len())
    }

    /// Coordinates of `NF(f)` in the standard-monomial basis.
    pub fn coordinates(&self, f: &Polynomial, basis: &QuotientBasis) -> Vec<FieldElement> {
        let nf = self.normal_form(f);
        let mut v = vec![self.ring.field().zero(); basis.len()];
        for (m, c) in nf.terms() {
            let i = basis
                .position(m)
                .expect("normal form lies in the span of standard monomials");
            v[i] = c.clone();
        }
        v
    }
}

/// Whether two ideals coincide (reduced grevlex bases agree).
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    a.ring() == b.ring() && groebner(a) == groebner(b)
}
