use serde::Serialize;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::kernel::{Field, FieldElement};

/// Coefficient field plus ordered variable names. The `dual` flag marks the
/// ring of differential operands `k[y_1..y_d]` used by apolarity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ring {
    field: Field,
    names: Vec<String>,
    dual: bool,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: Field, names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Precondition(
                "at least one variable is required".into(),
            ));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::Precondition(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!(
                    "duplicate variable name `{n}`"
                )));
            }
            if field == Field::RationalFunction && n == "t" {
                return Err(Error::Precondition(
                    "`t` is reserved for the field parameter".into(),
                ));
            }
        }
        Ok(Ring {
            field,
            names,
            dual: false,
        })
    }

    /// Variables named `x1..xd`.
    pub fn standard(field: Field, d: usize) -> Self {
        let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        Ring::new(field, &names).expect("standard names are valid")
    }

    /// Variables named `x, y, z` (d <= 3) or `x1..xd` otherwise.
    pub fn xyz(field: Field, d: usize) -> Self {
        if d <= 3 {
            Ring::new(field, &["x", "y", "z"][..d]).unwrap()
        } else {
            Self::standard(field, d)
        }
    }

    /// The dual ring `k[y_1..y_d]`.
    pub fn dual(&self) -> Self {
        let names = (1..=self.nvars()).map(|i| format!("y{i}")).collect();
        Ring {
            field: self.field,
            names,
            dual: true,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_field(&self, field: Field) -> Self {
        Ring {
            field,
            names: self.names.clone(),
            dual: self.dual,
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field, self.nvars())
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        Polynomial::constant(self.field, self.nvars(), c)
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::monomial(self.field, m)
    }

    pub fn from_i64(&self, n: i64) -> Polynomial {
        self.constant(self.field.from_i64(n))
    }

    /// Parses a polynomial in this ring.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(text, self)
    }

    /// Parses several polynomials; panics with the parse error on failure.
    /// Intended for literals in tests and fixtures.
    pub fn polys(&self, texts: &[&str]) -> Vec<Polynomial> {
        texts
            .iter()
            .map(|t| self.parse(t).unwrap_or_else(|e| panic!("{t}: {e}")))
            .collect()
    }

    pub fn format(&self, p: &Polynomial) -> String {
        super::parse::format_polynomial(p, self)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        super::parse::format_monomial(m, self)
    }
}
