use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::polynomial::{gcd, Polynomial};
use super::{Rational, ScalarError};

/// Exact rational function `num / den` in the chart coordinates.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has graded-lex leading
/// coefficient 1, and zero is `0 / 1`. Derived equality is therefore equality
/// of rational functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarField {
    num: Polynomial,
    den: Polynomial,
}

impl Default for ScalarField {
    fn default() -> Self {
        Self::zero()
    }
}

impl ScalarField {
    pub fn zero() -> Self {
        ScalarField {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    /// The coordinate `x_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::from_poly(Polynomial::var(var))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        ScalarField {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn from_parts(num: Polynomial, den: Polynomial) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalized(num, den)
    }

    /// Scales so the denominator's leading coefficient is 1; assumes the
    /// parts are already coprime.
    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            ScalarField { num, den }
        } else {
            let inv = lc.recip();
            ScalarField {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// One past the highest coordinate index used.
    pub fn width(&self) -> usize {
        self.num.width().max(self.den.width())
    }

    pub fn scale(&self, c: &Rational) -> ScalarField {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarField {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<ScalarField, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &ScalarField) -> Result<ScalarField, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> ScalarField {
        // Powers of coprime parts stay coprime.
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    /// Partial derivative with respect to the 0-based coordinate `var`.
    pub fn partial(&self, var: usize) -> ScalarField {
        let dn = self.num.partial(var);
        if self.is_polynomial() {
            return Self::from_poly(dn);
        }
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        // With num/den reduced, dividing through by gcd(den, dd) already
        // leaves coprime parts.
        let g = gcd(&self.den, &dd);
        let den_g = self.den.div_exact(&g).expect("gcd divides denominator");
        let dd_g = dd.div_exact(&g).expect("gcd divides derivative");
        let num = &(&dn * &den_g) - &(&self.num * &dd_g);
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalized(num, &self.den * &den_g)
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ScalarError> {
        if point.len() < self.width() {
            return Err(ScalarError::IndexOutOfRange {
                index: self.width() - 1,
                dim: point.len(),
            });
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.is_polynomial() {
                return ScalarField::from_poly(num);
            }
            return ScalarField::reduce(num, self.den.clone());
        }
        if self.is_polynomial() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return ScalarField::normalized(num, rhs.den.clone());
        }
        if rhs.is_polynomial() {
            let num = &self.num + &(&rhs.num * &self.den);
            return ScalarField::normalized(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let ld = self.den.div_exact(&g).expect("gcd divides");
        let rd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        ScalarField::reduce(num, &(&ld * &rd) * &g)
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        self + &(-rhs)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: &ScalarField) -> ScalarField {
        if self.is_zero() || rhs.is_zero() {
            return ScalarField::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return ScalarField::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel so the product is already reduced.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        ScalarField::normalized(&a * &c, &b * &d)
    }
}

/// Panics on division by zero; use [`ScalarField::checked_div`] to recover.
impl Div for &ScalarField {
    type Output = ScalarField;
    fn div(self, rhs: &ScalarField) -> ScalarField {
        self.checked_div(rhs).expect("division by the zero field")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: ScalarField) -> ScalarField {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: &ScalarField) -> ScalarField {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

impl std::iter::Sum for ScalarField {
    fn sum<I: Iterator<Item = ScalarField>>(iter: I) -> Self {
        // Numerators over a shared denominator are added as polynomials and
        // reduced once.
        let mut groups: Vec<(Polynomial, Polynomial)> = Vec::new();
        for x in iter {
            if x.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(den, _)| *den == x.den) {
                Some((_, num)) => *num = &*num + &x.num,
                None => groups.push((x.den, x.num)),
            }
        }
        groups
            .into_iter()
            .map(|(den, num)| {
                if den.is_one() {
                    ScalarField::from_poly(num)
                } else {
                    ScalarField::reduce(num, den)
                }
            })
            .fold(ScalarField::zero(), |acc, x| &acc + &x)
    }
}

impl From<Rational> for ScalarField {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Display for Polynomial {
    /// Prints in the scalar grammar, highest graded-lex term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(super::format_rational(&mag));
            }
            for (var, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", var + 1)),
                    _ => factors.push(format!("x{}^{}", var + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
