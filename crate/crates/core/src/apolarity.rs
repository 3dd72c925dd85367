//! Macaulay duality: `k[x]` acts on `k[y]` by `x_i . f = df/dy_i`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::groebner;
use crate::kernel::{DenseMatrix, Field, FieldElement};
use crate::poly::{Ideal, Monomial, Polynomial, Ring};

/// A polynomial in the dual variables `y_1..y_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement {
    ring: Ring,
    poly: Polynomial,
}

impl DualElement {
    /// Wraps `poly`, which must live in the dual ring of `primal`.
    pub fn new(primal: &Ring, poly: Polynomial) -> Result<Self> {
        if poly.nvars() != primal.nvars() || poly.field() != primal.field() {
            return Err(Error::DimensionMismatch(
                "dual element does not match the primal ring".into(),
            ));
        }
        Ok(DualElement {
            ring: primal.dual(),
            poly,
        })
    }

    /// Parses text in the dual variables `y1..yd` of `primal`.
    pub fn parse(primal: &Ring, text: &str) -> Result<Self> {
        let dual = primal.dual();
        let poly = dual.parse(text)?;
        Ok(DualElement { ring: dual, poly })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }
}

impl std::fmt::Display for DualElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.ring.format(&self.poly))
    }
}

fn guard(field: Field, degree: u32) -> Result<()> {
    let p = field.characteristic();
    if p != 0 && degree as u64 >= p {
        return Err(Error::CharacteristicBound { degree, p });
    }
    Ok(())
}

/// `alpha!` for a monomial exponent.
fn factorial_weight(field: Field, m: &Monomial) -> FieldElement {
    let mut acc = field.one();
    for &e in m.exponents() {
        for k in 2..=e {
            acc = &acc * &field.from_i64(k as i64);
        }
    }
    acc
}

/// `f` acting on `g` as a constant-coefficient differential operator.
pub fn apply_operator(f: &Polynomial, g: &DualElement) -> Result<DualElement> {
    let field = g.poly.field();
    guard(field, g.degree().unwrap_or(0))?;
    let mut out = Polynomial::zero(field, g.poly.nvars());
    for (a, c) in f.terms() {
        let mut h = g.poly.clone();
        for (i, &e) in a.exponents().iter().enumerate() {
            for _ in 0..e {
                h = h.derivative(i);
            }
        }
        out = &out + &h.scale(c);
    }
    Ok(DualElement {
        ring: g.ring.clone(),
        poly: out,
    })
}

/// The pairing `<f, g>`, i.e. the constant term of `f . g` when degrees agree.
pub fn pairing(f: &Polynomial, g: &DualElement) -> Result<FieldElement> {
    Ok(apply_operator(f, g)?.poly.constant_term())
}

/// Kernel of the pairing against `forms` inside degree `j`, returned in
/// coordinates over `Monomial::all_of_degree(d, j)`.
fn orthogonal(field: Field, d: usize, j: u32, forms: &[Polynomial]) -> Vec<Vec<FieldElement>> {
    let monos = Monomial::all_of_degree(d, j);
    if forms.is_empty() {
        return (0..monos.len())
            .map(|k| {
                (0..monos.len())
                    .map(|i| if i == k { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
    }
    let weights: Vec<FieldElement> = monos.iter().map(|m| factorial_weight(field, m)).collect();
    let rows = forms
        .iter()
        .map(|p| {
            monos
                .iter()
                .zip(&weights)
                .map(|(m, w)| &p.coeff(m) * w)
                .collect()
        })
        .collect();
    DenseMatrix::from_rows(field, rows)
        .expect("rectangular")
        .kernel_basis()
}

fn from_coords(field: Field, d: usize, j: u32, v: &[FieldElement]) -> Polynomial {
    Polynomial::from_terms(
        field,
        d,
        Monomial::all_of_degree(d, j)
            .into_iter()
            .zip(v.iter().cloned()),
    )
}

/// Basis of `I_j` as homogeneous polynomials.
fn graded_piece(ideal: &Ideal, j: u32) -> Vec<Polynomial> {
    let g = groebner(ideal);
    let ring = ideal.ring();
    Monomial::all_of_degree(ring.nvars(), j)
        .into_iter()
        .map(|m| {
            let p = ring.monomial(m);
            &p - &g.normal_form(&p)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// Basis of `I_j^perp` inside the degree-`j` dual forms.
pub fn perp(ideal: &Ideal, j: u32) -> Result<Vec<DualElement>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = ideal.ring();
    let field = ring.field();
    guard(field, j)?;
    let piece = graded_piece(ideal, j);
    let d = ring.nvars();
    let dual = ring.dual();
    let kernel = orthogonal(field, d, j, &piece);
    // Present the answer in reduced echelon form for determinism.
    let basis = if kernel.is_empty() {
        kernel
    } else {
        let e = DenseMatrix::from_rows(field, kernel)
            .expect("rectangular")
            .rref();
        (0..e.pivots.len())
            .map(|r| e.matrix.row(r).to_vec())
            .collect()
    };
    Ok(basis
        .iter()
        .map(|v| DualElement {
            ring: dual.clone(),
            poly: from_coords(field, d, j, v),
        })
        .collect())
}

/// Graded inverse system `I^perp = sum_j I_j^perp` of a homogeneous ideal of finite colength.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    pub components: BTreeMap<u32, Vec<DualElement>>,
}

impl InverseSystem {
    pub fn of_ideal(ideal: &Ideal) -> Result<Self> {
        let g = groebner(ideal);
        g.colength()?;
        let mut components = BTreeMap::new();
        let mut j = 0;
        loop {
            let c = perp(ideal, j)?;
            if c.is_empty() {
                break;
            }
            components.insert(j, c);
            j += 1;
        }
        Ok(InverseSystem { components })
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.components.values().map(|c| c.len()).collect()
    }

    pub fn generators(&self) -> Vec<DualElement> {
        self.components.values().flatten().cloned().collect()
    }

    /// `d/dy_i` of every degree-`j` element lies in the degree `j - 1` span.
    pub fn is_closed_under_differentiation(&self) -> bool {
        for (&j, comp) in &self.components {
            if j == 0 {
                continue;
            }
            let below: Vec<Polynomial> = self
                .components
                .get(&(j - 1))
                .map_or(vec![], |c| c.iter().map(|e| e.poly.clone()).collect());
            for e in comp {
                for i in 0..e.poly.nvars() {
                    let der = e.poly.derivative(i);
                    if !der.is_zero() && !in_span(&der, &below) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn in_span(p: &Polynomial, span: &[Polynomial]) -> bool {
    if span.is_empty() {
        return p.is_zero();
    }
    let field = p.field();
    let mut monos: Vec<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    for s in span {
        monos.extend(s.terms().map(|(m, _)| m.clone()));
    }
    monos.sort();
    monos.dedup();
    let row = |q: &Polynomial| monos.iter().map(|m| q.coeff(m)).collect::<Vec<_>>();
    let base: Vec<Vec<FieldElement>> = span.iter().map(row).collect();
    let r = DenseMatrix::from_rows(field, base.clone())
        .expect("rectangular")
        .rank();
    let mut with = base;
    with.push(row(p));
    DenseMatrix::from_rows(field, with)
        .expect("rectangular")
        .rank()
        == r
}

/// The ideal annihilating the derivative closure of the given homogeneous dual
/// forms, together with every form of degree above the largest generator degree.
pub fn ideal_from_inverse_system(ring: &Ring, gens: &[DualElement]) -> Result<Ideal> {
    let field = ring.field();
    let d = ring.nvars();
    for g in gens {
        if g.poly.nvars() != d || g.poly.field() != field {
            return Err(Error::DimensionMismatch(
                "dual generator does not match the ring".into(),
            ));
        }
        if !g.poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let top = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let nonzero = gens.iter().any(|g| !g.is_zero());
    guard(field, top)?;
    let mut levels: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        levels
            .entry(g.degree().unwrap())
            .or_default()
            .push(g.poly.clone());
    }
    for j in (1..=top).rev() {
        let derived: Vec<Polynomial> = levels
            .get(&j)
            .map(|forms| {
                forms
                    .iter()
                    .flat_map(|f| (0..d).map(move |i| f.derivative(i)))
                    .filter(|p| !p.is_zero())
                    .collect()
            })
            .unwrap_or_default();
        levels.entry(j - 1).or_default().extend(derived);
    }
    let mut out = Vec::new();
    let upper = if nonzero { top } else { 0 };
    for j in 0..=upper {
        let forms = if nonzero {
            levels.get(&j).cloned().unwrap_or_default()
        } else {
            vec![]
        };
        for v in orthogonal(field, d, j, &forms) {
            out.push(from_coords(field, d, j, &v));
        }
    }
    if nonzero {
        out.extend(
            Monomial::all_of_degree(d, top + 1)
                .into_iter()
                .map(|m| ring.monomial(m)),
        );
    }
    Ok(groebner(&Ideal::new(ring.clone(), out)).ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::local_hilbert_function;
    use crate::groebner::ideal_equal;

    fn ring(d: usize) -> Ring {
        Ring::standard(Field::Rational, d)
    }

    #[test]
    fn differentiation() {
        let r = Ring::standard(Field::Rational, 2);
        let y2 = DualElement::parse(&r, "y1^2").unwrap();
        assert_eq!(
            apply_operator(&r.parse("x1").unwrap(), &y2).unwrap(),
            DualElement::parse(&r, "2*y1").unwrap()
        );
        let y = DualElement::parse(&r, "y2").unwrap();
        assert!(apply_operator(&r.parse("x1").unwrap(), &y)
            .unwrap()
            .is_zero());
        let m = DualElement::parse(&r, "y1^2*y2^3").unwrap();
        assert_eq!(
            pairing(&r.parse("x1^2*x2^3").unwrap(), &m).unwrap(),
            Field::Rational.from_i64(12)
        );
    }

    #[test]
    fn characteristic_guard() {
        let r = Ring::standard(Field::prime(5).unwrap(), 2);
        let g = DualElement::parse(&r, "y1^5").unwrap();
        assert_eq!(
            apply_operator(&r.parse("x1").unwrap(), &g),
            Err(Error::CharacteristicBound { degree: 5, p: 5 })
        );
    }

    #[test]
    fn perp_dimensions() {
        let r = ring(3);
        assert!(perp(&Ideal::from_strs(&r, &["1"]), 2).unwrap().is_empty());
        let i = Ideal::from_strs(&r, &["x1^2", "x2^2", "x3^2"]);
        let dims: Vec<usize> = (0..5).map(|j| perp(&i, j).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 3, 3, 1, 0]);
        assert_eq!(
            perp(&Ideal::from_strs(&r, &["x1 - x2^2"]), 1),
            Err(Error::NotHomogeneous)
        );
    }

    #[test]
    fn apolar_ideals() {
        let r = ring(3);
        let f = DualElement::parse(&r, "y1*y2*y3").unwrap();
        let i = ideal_from_inverse_system(&r, &[f]).unwrap();
        assert_eq!(local_hilbert_function(&i).unwrap().to_string(), "(1,3,3,1)");
        let l3 = DualElement::parse(&r, "(y1 + 2*y2 - y3)^3").unwrap();
        let i = ideal_from_inverse_system(&r, &[l3]).unwrap();
        assert_eq!(local_hilbert_function(&i).unwrap().to_string(), "(1,1,1,1)");
    }

    #[test]
    fn double_perp() {
        let r = ring(3);
        let i = Ideal::from_strs(&r, &["x1^2", "x1*x2", "x2^2 - x1*x3", "x2*x3", "x3^4"]);
        let sys = InverseSystem::of_ideal(&i).unwrap();
        assert!(sys.is_closed_under_differentiation());
        let back = ideal_from_inverse_system(&r, &sys.generators()).unwrap();
        assert!(ideal_equal(&back, &i));
    }
}
