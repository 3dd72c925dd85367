use super::basis::{buchberger, groebner, GroebnerBasis};
use crate::error::{Error, Result};
use crate::kernel::{DenseMatrix, FieldElement};
use crate::poly::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};

/// Smallest `N` with `m^N` contained in the ideal, if the ideal is primary to
/// the origin (then `N` is at most the colength).
pub fn maximal_ideal_power(g: &GroebnerBasis) -> Result<Option<u32>> {
    let n = g.colength()?;
    let nv = g.ring().nvars();
    for k in 0..=n as u32 {
        if Monomial::all_of_degree(nv, k)
            .iter()
            .all(|m| g.contains(&g.ring().monomial(m.clone())))
        {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Basis of `I ∩ S_{<N}` as `mu - NF(mu)` over monomials of degree below `N`
/// (using a degree-compatible basis, so degrees never increase).
fn truncated_span(g: &GroebnerBasis, bound: u32) -> Vec<Polynomial> {
    let ring = g.ring();
    Monomial::all_below_degree(ring.nvars(), bound)
        .into_iter()
        .map(|m| {
            let p = ring.monomial(m);
            &p - &g.normal_form(&p)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// Row-reduces polynomials so that leading monomials (under `order`) are
/// distinct; zero rows are dropped.
pub(crate) fn echelon_polys(polys: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for p in polys {
        let mut p = p.clone();
        loop {
            let Some((lm, lc)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) else {
                break;
            };
            match basis
                .iter()
                .find(|b| b.leading_monomial(order) == Some(&lm))
            {
                Some(b) => p = &p - &b.scale(&lc),
                None => {
                    basis.push(p.scale(&lc.inv().unwrap()));
                    break;
                }
            }
        }
    }
    basis
}

/// The ideal generated by `w`-initial forms of all elements of `I`.
///
/// Nonnegative `w` uses a Gröbner basis under the `w`-refined grevlex order.
/// Weights with negative entries are allowed when `I` contains a power `m^N`
/// of the maximal ideal; the computation then happens in `S / m^N`.
pub fn initial_ideal(ideal: &Ideal, w: &[i64]) -> Result<Ideal> {
    let ring = ideal.ring();
    if w.len() != ring.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "weight of length {} for {} variables",
            w.len(),
            ring.nvars()
        )));
    }
    if w.iter().all(|&x| x >= 0) {
        let g = buchberger(ideal, &MonomialOrder::weighted(w.to_vec()))?;
        let gens = g
            .elements()
            .iter()
            .map(|p| p.weight_initial_form(w))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Ideal::new(ring.clone(), gens));
    }
    let g = groebner(ideal);
    let bound = match g.colength() {
        Ok(_) => maximal_ideal_power(&g)?,
        Err(_) => None,
    };
    let Some(bound) = bound else {
        return Err(Error::Precondition(
            "negative weights need an ideal containing a power of the maximal ideal".into(),
        ));
    };
    let order = MonomialOrder::weighted(w.to_vec());
    let span = echelon_polys(&truncated_span(&g, bound), &order);
    let mut gens = span
        .iter()
        .map(|p| p.weight_initial_form(w))
        .collect::<Result<Vec<_>>>()?;
    gens.extend(
        Monomial::all_of_degree(ring.nvars(), bound)
            .into_iter()
            .map(|m| ring.monomial(m)),
    );
    let reduced = groebner(&Ideal::new(ring.clone(), gens));
    Ok(reduced.ideal())
}

/// `I ∩ J` by eliminating `T` from `T I + (1 - T) J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.ring() != b.ring() {
        return Err(Error::Precondition("ideals live in different rings".into()));
    }
    let ring = a.ring();
    let n = ring.nvars();
    let field = ring.field();
    let lift = |p: &Polynomial| p.remap_vars(n + 1, &(1..=n).map(Some).collect::<Vec<_>>());
    let t = Polynomial::var(field, n + 1, 0);
    let one_minus_t = &Polynomial::one(field, n + 1) - &t;
    let mut gens: Vec<Polynomial> = a.generators().iter().map(|g| &t * &lift(g)).collect();
    gens.extend(b.generators().iter().map(|g| &one_minus_t * &lift(g)));
    let mut names = vec!["T_".to_string()];
    names.extend(ring.names().iter().cloned());
    let big = Ring::new(field, &names).unwrap_or_else(|_| Ring::standard(field, n + 1));
    let mut weight = vec![0; n + 1];
    weight[0] = 1;
    let g = buchberger(&Ideal::new(big, gens), &MonomialOrder::weighted(weight))?;
    let out = g
        .elements()
        .iter()
        .filter(|p| p.terms().all(|(m, _)| m.exponents()[0] == 0))
        .map(|p| {
            Polynomial::from_terms(
                field,
                n,
                p.terms()
                    .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone())),
            )
        })
        .collect();
    Ok(Ideal::new(ring.clone(), out))
}

/// Relations `sum_i a_i g_i = 0` among a list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub relations: Vec<Vec<Polynomial>>,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Checks every relation by direct substitution.
    pub fn verify(&self, generators: &[Polynomial]) -> bool {
        self.relations.iter().all(|rel| {
            rel.len() == generators.len()
                && rel
                    .iter()
                    .zip(generators)
                    .fold(
                        Polynomial::zero(generators[0].field(), generators[0].nvars()),
                        |acc, (a, g)| &acc + &(a * g),
                    )
                    .is_zero()
        })
    }
}

/// Generators of the syzygy module of a reduced basis, from S-pair reduction
/// traces. Pairs made redundant by a third leading monomial are skipped.
pub fn schreyer_syzygies(g: &GroebnerBasis) -> SyzygyBasis {
    let elems = g.elements();
    let lms = g.leading_monomials();
    let s = elems.len();
    let ring = g.ring();
    let field = ring.field();
    let mut relations = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            let lij = lms[i].lcm(&lms[j]);
            let redundant = (0..s).any(|k| {
                k != i
                    && k != j
                    && lms[k].divides(&lij)
                    && lms[i].lcm(&lms[k]) != lij
                    && lms[j].lcm(&lms[k]) != lij
            });
            if redundant {
                continue;
            }
            let mi = lms[i].quotient_of(&lij).unwrap();
            let mj = lms[j].quotient_of(&lij).unwrap();
            let sp = &elems[i].mul_term(&mi, &field.one()) - &elems[j].mul_term(&mj, &field.one());
            let (qs, r) = g.divide(&sp);
            debug_assert!(
                r.is_zero(),
                "S-polynomial of a Gröbner basis reduces to zero"
            );
            let mut rel: Vec<Polynomial> = qs.iter().map(|q| -q).collect();
            rel[i] = &rel[i] + &Polynomial::monomial(field, mi);
            rel[j] = &rel[j] - &Polynomial::monomial(field, mj);
            relations.push(rel);
        }
    }
    SyzygyBasis { relations }
}

/// Linear syzygies of seven quadrics in four variables: the kernel of the
/// multiplication map `(S_1)^7 -> S_3`.
pub fn linear_syzygies(quadrics: &[Polynomial], ring: &Ring) -> Result<SyzygyBasis> {
    if ring.nvars() != 4 || quadrics.len() != 7 {
        return Err(Error::Precondition(
            "linear syzygies need seven quadrics in four variables".into(),
        ));
    }
    if quadrics
        .iter()
        .any(|q| q.is_zero() || !q.is_homogeneous() || q.degree() != Some(2))
    {
        return Err(Error::NotHomogeneous);
    }
    let field = ring.field();
    let quads = Monomial::all_of_degree(4, 2);
    let coeffs: Vec<Vec<FieldElement>> = quadrics
        .iter()
        .map(|q| quads.iter().map(|m| q.coeff(m)).collect())
        .collect();
    if DenseMatrix::from_rows(field, coeffs)?.rank() != 7 {
        return Err(Error::DependentQuadrics);
    }
    let cubics = Monomial::all_of_degree(4, 3);
    let mut cols = Vec::with_capacity(28);
    for q in quadrics {
        for k in 0..4 {
            let p = q.mul_term(&Monomial::var(4, k), &field.one());
            cols.push(cubics.iter().map(|m| p.coeff(m)).collect::<Vec<_>>());
        }
    }
    let mult = DenseMatrix::from_rows(field, cols)?.transpose();
    if mult.rank() != 20 {
        return Err(Error::RequiresCubicGenerator);
    }
    let relations = mult
        .kernel_basis()
        .into_iter()
        .map(|v| {
            (0..7)
                .map(|i| {
                    Polynomial::from_terms(
                        field,
                        4,
                        (0..4).map(|k| (Monomial::var(4, k), v[i * 4 + k].clone())),
                    )
                })
                .collect()
        })
        .collect();
    Ok(SyzygyBasis { relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::basis::ideal_equal;
    use crate::kernel::Field;

    fn ring(d: usize) -> Ring {
        Ring::xyz(Field::Rational, d)
    }

    #[test]
    fn initial_ideal_with_unit_weights() {
        let r = ring(3);
        let j = Ideal::from_strs(
            &r,
            &[
                "y^2 + z^2",
                "x + x^2 + z^2",
                "z^3",
                "y*z^2",
                "x*z^2",
                "x*y*z",
            ],
        );
        let expect = Ideal::from_strs(
            &r,
            &["y^2 + z^2", "x^2 + z^2", "z^3", "y*z^2", "x*z^2", "x*y*z"],
        );
        assert!(ideal_equal(
            &initial_ideal(&j, &[1, 1, 1]).unwrap(),
            &expect
        ));
    }

    #[test]
    fn initial_of_monomial_ideal_is_itself() {
        let r = ring(2);
        let i = Ideal::from_strs(&r, &["x^3", "x*y", "y^2"]);
        for w in [[1, 1], [3, 1], [0, 2], [-1, -1], [-2, 1]] {
            assert!(ideal_equal(&initial_ideal(&i, &w).unwrap(), &i), "{w:?}");
        }
    }

    #[test]
    fn negative_weights_give_lowest_forms() {
        let r = ring(2);
        // x - y^2, y^3: local algebra k[y]/y^3, tangent cone (x, y^3).
        let i = Ideal::from_strs(&r, &["x - y^2", "y^3"]);
        let lowest = initial_ideal(&i, &[-1, -1]).unwrap();
        assert!(ideal_equal(&lowest, &Ideal::from_strs(&r, &["x", "y^3"])));
        let not_local = Ideal::from_strs(&r, &["x - 1", "y"]);
        assert!(initial_ideal(&not_local, &[-1, -1]).is_err());
    }

    #[test]
    fn intersections() {
        let r = ring(2);
        let x = Ideal::from_strs(&r, &["x"]);
        let y = Ideal::from_strs(&r, &["y"]);
        assert!(ideal_equal(
            &intersect(&x, &y).unwrap(),
            &Ideal::from_strs(&r, &["x*y"])
        ));
        let i = Ideal::from_strs(&r, &["x^2", "y - x"]);
        assert!(ideal_equal(&intersect(&i, &i).unwrap(), &i));
    }

    #[test]
    fn syzygies_verify() {
        let r = ring(2);
        let g = groebner(&Ideal::from_strs(&r, &["x", "y"]));
        let s = schreyer_syzygies(&g);
        assert_eq!(s.len(), 1);
        assert!(s.verify(g.elements()));
        let p = groebner(&Ideal::from_strs(&r, &["x^2 + y"]));
        assert!(schreyer_syzygies(&p).is_empty());
        let r3 = ring(3);
        let g = groebner(&Ideal::from_strs(
            &r3,
            &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y", "x*y*z"],
        ));
        assert!(schreyer_syzygies(&g).verify(g.elements()));
    }

    #[test]
    fn linear_syzygy_errors() {
        let r = Ring::standard(Field::Rational, 4);
        let dep = r.polys(&[
            "x1^2",
            "x2^2",
            "x3^2",
            "x4^2",
            "x1*x2",
            "x1*x3",
            "x1^2 + x2^2",
        ]);
        assert_eq!(linear_syzygies(&dep, &r), Err(Error::DependentQuadrics));
        let mono = r.polys(&["x1^2", "x1*x2", "x2^2", "x3^2", "x3*x4", "x4^2", "x1*x4"]);
        let s = linear_syzygies(&mono, &r).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.verify(&mono));
    }
}
