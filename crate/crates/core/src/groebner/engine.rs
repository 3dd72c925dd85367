//! Internal term-list representation used by the Buchberger engine.
//!
//! Each monomial carries an integer key vector whose lexicographic order is the
//! active monomial order; keys are additive, so products never re-sort.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::kernel::{Field, FieldElement};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Tiebreak};

#[derive(Clone, Debug)]
pub(crate) struct Keyer {
    pub order: MonomialOrder,
}

impl Keyer {
    pub fn new(order: &MonomialOrder) -> Self {
        Keyer {
            order: order.clone(),
        }
    }

    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exponents();
        let grevlex = || {
            let mut k = Vec::with_capacity(e.len() + 1);
            k.push(m.degree() as i64);
            k.extend(e.iter().rev().map(|&x| -(x as i64)));
            k
        };
        match &self.order {
            MonomialOrder::Grevlex => grevlex(),
            MonomialOrder::Lex => e.iter().map(|&x| x as i64).collect(),
            MonomialOrder::Weighted { weight, tiebreak } => {
                let mut k = vec![m.weight(weight)];
                match tiebreak {
                    Tiebreak::Grevlex => k.extend(grevlex()),
                    Tiebreak::Lex => k.extend(e.iter().map(|&x| x as i64)),
                }
                k
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Vec<i64>,
    pub mono: Monomial,
    pub coeff: FieldElement,
}

impl Term {
    fn times(&self, key: &[i64], mono: &Monomial, c: &FieldElement) -> Term {
        Term {
            key: self.key.iter().zip(key).map(|(a, b)| a + b).collect(),
            mono: self.mono.mul(mono),
            coeff: &self.coeff * c,
        }
    }
}

/// Polynomial as terms sorted ascending; the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    pub terms: Vec<Term>,
}

impl IPoly {
    pub fn from_poly(p: &Polynomial, keyer: &Keyer) -> Self {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: keyer.key(m),
                mono: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| a.key.cmp(&b.key));
        IPoly { terms }
    }

    pub fn to_poly(&self, field: Field, nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            field,
            nvars,
            self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        self.terms.last().expect("leading term of zero polynomial")
    }

    pub fn make_monic(&mut self) {
        let inv = self.lead().coeff.inv().unwrap();
        if !inv.is_one() {
            for t in self.terms.iter_mut() {
                t.coeff = &t.coeff * &inv;
            }
        }
    }

    /// `self - c * m * g`.
    pub fn sub_mul(&self, c: &FieldElement, key: &[i64], mono: &Monomial, g: &IPoly) -> IPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let neg = -c;
        let mut b = g.terms.iter().map(|t| t.times(key, mono, &neg)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => x.key.cmp(&y.key),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = &x.coeff + &y.coeff;
                    if !s.is_zero() {
                        out.push(Term {
                            key: y.key,
                            mono: y.mono,
                            coeff: s,
                        });
                    }
                }
            }
        }
        IPoly { terms: out }
    }
}

fn key_diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `f` by `basis`. When `quotients` is given, records the
/// cofactors so that `f = sum q_i g_i + remainder`.
pub(crate) fn reduce(
    f: &IPoly,
    basis: &[IPoly],
    mut quotients: Option<&mut Vec<Vec<(Monomial, FieldElement)>>>,
) -> IPoly {
    let mut f = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = f.terms.last() {
        let hit = basis
            .iter()
            .enumerate()
            .find(|(_, g)| g.lead().mono.divides(&lt.mono));
        match hit {
            Some((i, g)) => {
                let gl = g.lead();
                let q = gl.mono.quotient_of(&lt.mono).unwrap();
                let c = &lt.coeff / &gl.coeff;
                let key = key_diff(&lt.key, &gl.key);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[i].push((q.clone(), c.clone()));
                }
                f = f.sub_mul(&c, &key, &q, g);
            }
            None => rem.push(f.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    IPoly { terms: rem }
}

struct Pair {
    key: Vec<i64>,
    lcm: Monomial,
    i: usize,
    j: usize,
}

fn spoly(gi: &IPoly, gj: &IPoly, lcm: &Monomial, keyer: &Keyer) -> IPoly {
    let (li, lj) = (gi.lead(), gj.lead());
    let lkey = keyer.key(lcm);
    let mi = li.mono.quotient_of(lcm).unwrap();
    let mj = lj.mono.quotient_of(lcm).unwrap();
    let ci = li.coeff.inv().unwrap();
    let cj = lj.coeff.inv().unwrap();
    let zero = IPoly { terms: vec![] };
    let a = zero.sub_mul(&-&ci, &key_diff(&lkey, &li.key), &mi, gi);
    a.sub_mul(&cj, &key_diff(&lkey, &lj.key), &mj, gj)
}

/// Buchberger's algorithm with the normal selection strategy, the coprime
/// criterion and the chain criterion. Returns the reduced, monic basis sorted
/// by ascending leading monomial.
pub(crate) fn buchberger(gens: &[IPoly], keyer: &Keyer) -> Vec<IPoly> {
    let mut g: Vec<IPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: IPoly,
               g: &mut Vec<IPoly>,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>| {
        let idx = g.len();
        for (i, gi) in g.iter().enumerate() {
            let lcm = gi.lead().mono.lcm(&h.lead().mono);
            pairs.push(Pair {
                key: keyer.key(&lcm),
                lcm,
                i,
                j: idx,
            });
            pending.insert((i, idx));
        }
        g.push(h);
    };

    for f in gens {
        let mut r = reduce(f, &g, None);
        if !r.is_zero() {
            r.make_monic();
            add(r, &mut g, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (x, y) = (&pairs[a], &pairs[b]);
                x.key.cmp(&y.key).then((x.i, x.j).cmp(&(y.i, y.j)))
            })
            .unwrap();
        let Pair { lcm, i, j, .. } = pairs.swap_remove(best);
        pending.remove(&(i, j));
        let (li, lj) = (&g[i].lead().mono, &g[j].lead().mono);
        if li.is_coprime(lj) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lead().mono.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&g[i], &g[j], &lcm, keyer);
        let mut r = reduce(&s, &g, None);
        if !r.is_zero() {
            r.make_monic();
            add(r, &mut g, &mut pairs, &mut pending);
        }
    }
    interreduce(g)
}

/// Minimalizes and fully interreduces a Gröbner basis.
pub(crate) fn interreduce(g: Vec<IPoly>) -> Vec<IPoly> {
    let mut keep: Vec<IPoly> = Vec::new();
    for (i, gi) in g.iter().enumerate() {
        let lm = &gi.lead().mono;
        let redundant = g.iter().enumerate().any(|(k, gk)| {
            k != i && gk.lead().mono.divides(lm) && (gk.lead().mono != *lm || k < i)
        });
        if !redundant {
            keep.push(gi.clone());
        }
    }
    for i in 0..keep.len() {
        let mut gi = keep[i].clone();
        let lead = gi.terms.pop().unwrap();
        let others: Vec<IPoly> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let mut tail = reduce(&gi, &others, None);
        tail.terms.push(lead);
        tail.make_monic();
        keep[i] = tail;
    }
    keep.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    keep
}
