//! Monomials, monomial orders, polynomials and their text syntax.

mod ideal;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder, Tiebreak};
pub use parse::{
    format_ideal_file, format_monomial, format_polynomial, parse_header, parse_ideal_file,
    parse_polynomial,
};
pub use polynomial::Polynomial;
pub use ring::Ring;
