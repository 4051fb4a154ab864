use std::cmp::Ordering;

/// Exponent vector `[e0, e1, ...]` for `x1^e0 * x2^e1 * ...`.
///
/// Trailing zero exponents are never stored, so the constant monomial is the
/// empty vector and two equal monomials always have identical storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The monomial `x_{var+1}^exp` (variables are 0-based internally).
    pub fn var_pow(var: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut e = vec![0; var + 1];
        e[var] = exp;
        Monomial(e)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variable slots in use (one past the highest variable present).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (slot, x) in e.iter_mut().zip(&short.0) {
            *slot += x;
        }
        Monomial(e)
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (slot, x) in e.iter_mut().zip(&other.0) {
            if *slot < *x {
                return None;
            }
            *slot -= x;
        }
        Some(Monomial::from_exponents(e))
    }

    /// The same monomial with the exponent of `var` replaced.
    pub fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() <= var {
            e.resize(var + 1, 0);
        }
        e[var] = exp;
        Monomial::from_exponents(e)
    }
}

/// Graded lexicographic order: total degree first, then the exponent of `x1`,
/// then `x2`, and so on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.0.len().max(other.0.len());
                (0..n)
                    .map(|i| self.exp(i).cmp(&other.exp(i)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree at most `degree`, in
/// ascending graded-lex order.
pub fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(var: usize, nvars: usize, budget: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == nvars {
            out.push(Monomial::from_exponents(acc.clone()));
            return;
        }
        for e in 0..=budget {
            acc.push(e);
            rec(var + 1, nvars, budget - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, nvars, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}
