//! Exact multivariate rational functions over the rationals.

mod field;
mod monomial;
mod parse;
mod polynomial;

pub use field::ScalarField;
pub use monomial::{monomials_up_to, Monomial};
pub use parse::parse_scalar;
pub use polynomial::{gcd, Polynomial};

use thiserror::Error;

/// Exact rational coefficient.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("point is a pole of the function")]
    PoleAtPoint,
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
}

/// `p` or `p/q`, the textual form of exact rationals in reports and input.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coordinate chart `x1..xn`: the dimension-aware entry points of this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new(dim: usize) -> Self {
        Chart {
            names: (1..=dim).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coordinate(&self, i: usize) -> Result<ScalarField, ScalarError> {
        self.check_index(i)?;
        Ok(ScalarField::var(i))
    }

    pub fn parse(&self, text: &str) -> Result<ScalarField, ScalarError> {
        parse_scalar(text, &self.names)
    }

    /// Partial derivative along the 0-based coordinate `i`.
    pub fn partial(&self, f: &ScalarField, i: usize) -> Result<ScalarField, ScalarError> {
        self.check_index(i)?;
        Ok(f.partial(i))
    }

    pub fn eval(&self, f: &ScalarField, point: &[Rational]) -> Result<Rational, ScalarError> {
        if point.len() != self.dim() {
            return Err(ScalarError::IndexOutOfRange {
                index: point.len(),
                dim: self.dim(),
            });
        }
        f.eval(point)
    }

    fn check_index(&self, i: usize) -> Result<(), ScalarError> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(ScalarError::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_bounds() {
        let chart = Chart::new(2);
        let f = chart.parse("x1^2*x2").unwrap();
        assert_eq!(chart.partial(&f, 0).unwrap().to_string(), "2*x1*x2");
        assert!(matches!(
            chart.partial(&f, 2),
            Err(ScalarError::IndexOutOfRange { index: 2, dim: 2 })
        ));
        assert!(chart.eval(&f, &[Rational::from_integer(1.into())]).is_err());
    }
}
