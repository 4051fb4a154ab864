use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::Rational;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by graded-lex ordered monomials; zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// The coordinate `x_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::term(Rational::one(), Monomial::var_pow(var, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in iter {
            accumulate(&mut terms, m, c);
        }
        Polynomial { terms }
    }

    /// Integer numerators over the least common denominator.
    fn integer_parts(&self) -> (Vec<(&Monomial, BigInt)>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(m, c)| (m, c.numer() * (&den / c.denom())))
            .collect();
        (nums, den)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// One past the highest variable index present.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            (e > 0).then(|| (m.with_exp(var, e - 1), c * Rational::from_integer(e.into())))
        }))
    }

    /// Evaluates at `point`; variables beyond its length are an error of the
    /// caller and panic.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (var, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[var].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().expect("nonzero");
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            accumulate(&mut quot, qm, qc);
        }
        Some(Polynomial { terms: quot })
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, itself free of `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            out[e].insert(m.with_exp(var, 0), c.clone());
        }
        out.into_iter().map(|terms| Polynomial { terms }).collect()
    }

    pub fn from_univariate(var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (k, p) in coeffs.iter().enumerate() {
            let shift = Monomial::var_pow(var, k as u32);
            for (m, c) in &p.terms {
                accumulate(&mut terms, m.mul(&shift), c.clone());
            }
        }
        Polynomial { terms }
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Polynomial { terms }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, m.clone(), -c);
        }
        Polynomial { terms }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // Products are accumulated over the integers and divided once per
        // output term.
        let (a, da) = self.integer_parts();
        let (b, db) = rhs.integer_parts();
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, den.clone())))
            .collect();
        Polynomial { terms }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Greatest common divisor, normalized to leading coefficient 1 (the zero
/// polynomial only when both inputs are zero).
///
/// Recursive: a variable present in only one argument is eliminated by taking
/// the content with respect to it; otherwise a primitive pseudo-remainder
/// sequence runs in the lowest shared variable over the coefficient ring of
/// the remaining ones.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.monic();
    }
    let width = a.width().max(b.width());
    let in_a: Vec<bool> = (0..width).map(|v| a.contains_var(v)).collect();
    let in_b: Vec<bool> = (0..width).map(|v| b.contains_var(v)).collect();
    let only_a: Vec<bool> = (0..width).map(|v| in_a[v] && !in_b[v]).collect();
    if only_a.contains(&true) {
        return gcd_with_coefficients(b, &coefficients_over(a, &only_a));
    }
    let only_b: Vec<bool> = (0..width).map(|v| in_b[v] && !in_a[v]).collect();
    if only_b.contains(&true) {
        return gcd_with_coefficients(a, &coefficients_over(b, &only_b));
    }
    let (small, large) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }
    let var = (0..width)
        .find(|&v| in_a[v] && in_b[v])
        .expect("both nonconstant with identical variable sets");

    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    let ca = univariate_content(&ua);
    let cb = univariate_content(&ub);
    let content = gcd(&ca, &cb);
    let mut r0 = divide_coeffs(&ua, &ca);
    let mut r1 = divide_coeffs(&ub, &cb);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    if r0.iter().chain(&r1).any(|c| !c.is_constant()) {
        match specialized_degree(&r0, &r1, var, width) {
            Some(0) => return content.monic(),
            Some(d) if d + 1 == r1.len() => {
                let small = Polynomial::from_univariate(var, &r1);
                if Polynomial::from_univariate(var, &r0).div_exact(&small).is_some() {
                    return (&content * &small).monic();
                }
            }
            _ => {}
        }
    }
    loop {
        let r = pseudo_remainder(&r0, &r1);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // Primitive parts are coprime.
            return content.monic();
        }
        let c = univariate_content(&r);
        r0 = r1;
        r1 = divide_coeffs(&r, &c);
    }
    let g = Polynomial::from_univariate(var, &r1);
    (&content * &g).monic()
}

/// Degree in `var` of the gcd of two primitive polynomials after
/// substituting small integers for every other variable. With both leading
/// coefficients nonzero at the point this bounds the degree of the true gcd
/// from above.
fn specialized_degree(a: &[Polynomial], b: &[Polynomial], var: usize, width: usize) -> Option<usize> {
    let (lead_a, lead_b) = (a.last()?, b.last()?);
    for attempt in 0..4i64 {
        let point: Vec<Rational> = (0..width)
            .map(|v| Rational::from_integer((2 + 3 * v as i64 + 7 * attempt).into()))
            .collect();
        if lead_a.eval(&point).is_zero() || lead_b.eval(&point).is_zero() {
            continue;
        }
        let specialize = |cs: &[Polynomial]| {
            let consts: Vec<Polynomial> = cs.iter().map(|c| Polynomial::constant(c.eval(&point))).collect();
            Polynomial::from_univariate(var, &consts)
        };
        return Some(gcd(&specialize(a), &specialize(b)).degree_in(var) as usize);
    }
    None
}

/// Coefficients of `p` viewed as a polynomial in the variables flagged in
/// `split`, with coefficients in the remaining ones.
fn coefficients_over(p: &Polynomial, split: &[bool]) -> Vec<Polynomial> {
    let mut groups: BTreeMap<Monomial, BTreeMap<Monomial, Rational>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut outer = vec![0; m.width()];
        let mut inner = vec![0; m.width()];
        for v in 0..m.width() {
            if split.get(v).copied().unwrap_or(false) {
                outer[v] = m.exp(v);
            } else {
                inner[v] = m.exp(v);
            }
        }
        groups
            .entry(Monomial::from_exponents(outer))
            .or_default()
            .insert(Monomial::from_exponents(inner), c.clone());
    }
    groups
        .into_values()
        .map(|t| Polynomial::from_terms(t))
        .collect()
}

/// `gcd(p, c_1, c_2, ...)`, cheapest coefficients first.
fn gcd_with_coefficients(p: &Polynomial, coeffs: &[Polynomial]) -> Polynomial {
    let mut sorted: Vec<&Polynomial> = coeffs.iter().collect();
    sorted.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut g = p.clone();
    for c in sorted {
        g = gcd(&g, c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g.monic()
}


fn univariate_content(coeffs: &[Polynomial]) -> Polynomial {
    let mut nonzero: Vec<&Polynomial> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    // Cheap terms first tend to collapse the content to 1 quickly.
    nonzero.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut g = Polynomial::zero();
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

fn divide_coeffs(coeffs: &[Polynomial], by: &Polynomial) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect();
    // Normalize the scalar factor so coefficient growth stays bounded.
    if let Some(top) = out.last() {
        let lc = top.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            out = out.iter().map(|c| c.scale(&inv)).collect();
        }
    }
    out
}

fn pseudo_remainder(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Polynomial> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        for (k, c) in r.iter_mut().enumerate() {
            let mut next = lcb * &*c;
            if k >= shift {
                next = &next - &(&lcr * &b[k - shift]);
            }
            *c = next;
        }
        while r.last().is_some_and(Polynomial::is_zero) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(q(n))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
        assert_eq!(p, Polynomial::zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &c(1)) * &(&x(0) - &c(1));
        assert_eq!(p, &x(0).pow(2) - &c(1));
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &(&c(2) * &x(2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(x(0).div_exact(&x(1)), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = &(&x(0).pow(2) + &c(1)) * &x(1);
        let a = &g * &(&x(0) + &x(2));
        let b = &g * &(&x(1) - &c(3));
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = &x(0).pow(2) + &c(1);
        let b = &(&x(0) * &x(1)) + &c(2);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_is_monic() {
        let a = (&x(0) + &c(1)).scale(&q(6));
        let b = (&x(0).pow(2) - &c(1)).scale(&q(4));
        assert_eq!(gcd(&a, &b), &x(0) + &c(1));
    }

    #[test]
    fn gcd_of_powers() {
        let base = &x(0).pow(2) + &c(1);
        let a = &base.pow(3) * &x(1);
        let b = &base.pow(2) * &(&x(1) + &x(0));
        assert_eq!(gcd(&a, &b), base.pow(2));
    }
}
