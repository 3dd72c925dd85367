//! Coefficient fields: Q, F_p for primes p >= 5, and Q(t).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ratfunc::{QPoly, RatFunc};
use crate::error::{Error, Result};

/// Descriptor of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
    RationalFunction,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // These bases are deterministic for all 64-bit inputs.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

impl Field {
    /// The prime field F_p; rejects composites and p in {2, 3}.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 5 {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not supported (need p >= 5)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Prime {
                value: 0,
                modulus: *p,
            },
            Field::RationalFunction => FieldElement::Function(RatFunc::zero()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n % BigInt::from(*p);
                let r = if r.is_negative() {
                    r + BigInt::from(*p)
                } else {
                    r
                };
                FieldElement::Prime {
                    value: r.to_u64().unwrap(),
                    modulus: *p,
                }
            }
            Field::RationalFunction => {
                FieldElement::Function(RatFunc::from_rational(BigRational::from_integer(n.clone())))
            }
        }
    }

    /// Image of a rational number; fails in F_p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Rational => Ok(FieldElement::Rational(q.clone())),
            Field::RationalFunction => {
                Ok(FieldElement::Function(RatFunc::from_rational(q.clone())))
            }
            Field::Prime(p) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::InvalidField(format!("{q} is not defined in F_{p}")));
                }
                Ok(num / den)
            }
        }
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Result<FieldElement> {
        self.from_rational(&BigRational::new(n.into(), d.into()))
    }

    /// The parameter `t`, available only in Q(t).
    pub fn parameter(&self) -> Option<FieldElement> {
        matches!(self, Field::RationalFunction).then(|| FieldElement::Function(RatFunc::t()))
    }

    /// Whether the integer `n` is zero in this field.
    pub fn divides_characteristic(&self, n: usize) -> bool {
        match self {
            Field::Prime(p) => (n as u64).is_multiple_of(*p),
            _ => n == 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
            Field::RationalFunction => write!(f, "Qt"),
        }
    }
}

/// An exact scalar. Arithmetic between elements of different fields panics;
/// containers such as [`DenseMatrix`](super::DenseMatrix) validate domains up front.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
    Function(RatFunc),
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
            FieldElement::Function(_) => Field::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
            FieldElement::Function(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Prime { value, .. } => *value == 1,
            FieldElement::Function(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            FieldElement::Function(r) => FieldElement::Function(r.inv().unwrap()),
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&RatFunc> {
        match self {
            FieldElement::Function(r) => Some(r),
            _ => None,
        }
    }

    /// Whether the printed form needs parentheses when used as a coefficient.
    pub fn is_compound(&self) -> bool {
        match self {
            FieldElement::Function(r) => {
                !r.is_polynomial() || r.num().coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            }
            _ => false,
        }
    }

    /// True when the printed form starts with a minus sign that can be
    /// pulled out of the term (used by the polynomial printer).
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Prime { .. } => false,
            FieldElement::Function(r) => r.num().leading_coeff().is_negative(),
        }
    }

    /// Element embedded into Q(t), when the source is Q or Q(t).
    pub fn to_function(&self) -> Option<RatFunc> {
        match self {
            FieldElement::Rational(q) => Some(RatFunc::from_rational(q.clone())),
            FieldElement::Function(r) => Some(r.clone()),
            FieldElement::Prime { .. } => None,
        }
    }

    /// Polynomial in Q[t] when the element is a polynomial (or rational).
    pub fn to_qpoly(&self) -> Option<QPoly> {
        let r = self.to_function()?;
        r.is_polynomial().then(|| r.num().clone())
    }

    fn check_same(&self, other: &FieldElement) {
        if self.field() != other.field() {
            panic!(
                "{}",
                Error::MixedDomains(self.field().to_string(), other.field().to_string())
            );
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
            FieldElement::Function(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (FieldElement::Function(a), FieldElement::Function(b)) => {
                FieldElement::Function(a.add(b))
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            FieldElement::Function(a) => FieldElement::Function(a.neg()),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Function(a), FieldElement::Function(b)) => {
                FieldElement::Function(a.sub(b))
            }
            _ => self + &(-rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            (FieldElement::Function(a), FieldElement::Function(b)) => {
                FieldElement::Function(a.mul(b))
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                assert!(!b.is_zero(), "division by zero");
                FieldElement::Rational(a / b)
            }
            _ => self * &rhs.inv().expect("division by zero"),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
