//! Coordinate Cartan calculus on a chart of R^n, up to 2-forms.

use crate::scalar::ScalarField;
use crate::Error;

/// `X = Σ X^i ∂_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField(pub Vec<ScalarField>);

/// `ξ = Σ ξ_i dx^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm(pub Vec<ScalarField>);

/// Antisymmetric component matrix `ω_{ij}`, stored in full.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm(Vec<Vec<ScalarField>>);

fn same_dim(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        })
    }
}

fn add_vec(a: &[ScalarField], b: &[ScalarField]) -> Vec<ScalarField> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[ScalarField], b: &[ScalarField]) -> Vec<ScalarField> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

macro_rules! component_vector {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(dim: usize) -> Self {
                $ty(vec![ScalarField::zero(); dim])
            }

            /// The `i`-th coordinate basis element.
            pub fn basis(dim: usize, i: usize) -> Self {
                let mut c = vec![ScalarField::zero(); dim];
                c[i] = ScalarField::one();
                $ty(c)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn components(&self) -> &[ScalarField] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(ScalarField::is_zero)
            }

            pub fn add(&self, other: &Self) -> Self {
                debug_assert_eq!(self.dim(), other.dim());
                $ty(add_vec(&self.0, &other.0))
            }

            pub fn sub(&self, other: &Self) -> Self {
                debug_assert_eq!(self.dim(), other.dim());
                $ty(sub_vec(&self.0, &other.0))
            }

            pub fn neg(&self) -> Self {
                $ty(self.0.iter().map(|x| -x).collect())
            }

            pub fn scale(&self, f: &ScalarField) -> Self {
                $ty(self.0.iter().map(|x| x * f).collect())
            }
        }
    };
}

component_vector!(VectorField);
component_vector!(OneForm);

impl VectorField {
    /// Directional derivative `X f = Σ X^i ∂_i f`.
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, xi)| !xi.is_zero())
            .map(|(i, xi)| xi * &f.partial(i))
            .sum()
    }
}

impl TwoForm {
    /// Validates antisymmetry (including a zero diagonal).
    pub fn new(components: Vec<Vec<ScalarField>>) -> Result<Self, Error> {
        let n = components.len();
        for row in &components {
            same_dim(n, row.len())?;
        }
        for i in 0..n {
            for j in i..n {
                if !(&components[i][j] + &components[j][i]).is_zero() {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(TwoForm(components))
    }

    pub fn zero(dim: usize) -> Self {
        TwoForm(vec![vec![ScalarField::zero(); dim]; dim])
    }

    /// `dx^i ∧ dx^j` with the convention `(dx^i ∧ dx^j)_{ij} = 1`.
    pub fn elementary(dim: usize, i: usize, j: usize) -> Self {
        let mut w = Self::zero(dim);
        if i != j {
            w.0[i][j] = ScalarField::one();
            w.0[j][i] = -ScalarField::one();
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarField {
        &self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<ScalarField>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(ScalarField::is_zero)
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        TwoForm(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| add_vec(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, f: &ScalarField) -> TwoForm {
        TwoForm(
            self.0
                .iter()
                .map(|r| r.iter().map(|x| x * f).collect())
                .collect(),
        )
    }
}

/// `[X,Y]^k = Σ_i (X^i ∂_i Y^k − Y^i ∂_i X^k)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, Error> {
    same_dim(x.dim(), y.dim())?;
    Ok(VectorField(
        (0..x.dim())
            .map(|k| &x.apply(&y.0[k]) - &y.apply(&x.0[k]))
            .collect(),
    ))
}

/// `df`, with `(df)_i = ∂_i f`.
pub fn d_scalar(f: &ScalarField, dim: usize) -> OneForm {
    OneForm((0..dim).map(|i| f.partial(i)).collect())
}

/// `dξ`, with `(dξ)_{ij} = ∂_i ξ_j − ∂_j ξ_i`.
pub fn d_oneform(xi: &OneForm) -> TwoForm {
    let n = xi.dim();
    let mut w = TwoForm::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let c = &xi.0[j].partial(i) - &xi.0[i].partial(j);
            w.0[j][i] = -&c;
            w.0[i][j] = c;
        }
    }
    w
}

/// `(L_X η)_j = Σ_i (X^i ∂_i η_j + η_i ∂_j X^i)`.
pub fn lie_derivative_oneform(x: &VectorField, eta: &OneForm) -> Result<OneForm, Error> {
    same_dim(x.dim(), eta.dim())?;
    let n = x.dim();
    Ok(OneForm(
        (0..n)
            .map(|j| {
                let transport = x.apply(&eta.0[j]);
                let twist: ScalarField = (0..n)
                    .filter(|&i| !eta.0[i].is_zero())
                    .map(|i| &eta.0[i] * &x.0[i].partial(j))
                    .sum();
                &transport + &twist
            })
            .collect(),
    ))
}

/// `(ι_Y ω)_j = Σ_i Y^i ω_{ij}`.
pub fn interior_product(y: &VectorField, omega: &TwoForm) -> Result<OneForm, Error> {
    same_dim(y.dim(), omega.dim())?;
    let n = y.dim();
    Ok(OneForm(
        (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| !y.0[i].is_zero())
                    .map(|i| &y.0[i] * &omega.0[i][j])
                    .sum()
            })
            .collect(),
    ))
}

/// `ξ(Y) = Σ ξ_i Y^i`.
pub fn pair_form_vector(xi: &OneForm, y: &VectorField) -> Result<ScalarField, Error> {
    same_dim(xi.dim(), y.dim())?;
    Ok(xi.0.iter().zip(&y.0).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Chart;

    fn parse_vf(chart: &Chart, comps: &[&str]) -> VectorField {
        VectorField(comps.iter().map(|c| chart.parse(c).unwrap()).collect())
    }

    fn parse_form(chart: &Chart, comps: &[&str]) -> OneForm {
        OneForm(comps.iter().map(|c| chart.parse(c).unwrap()).collect())
    }

    #[test]
    fn bracket_examples() {
        let c = Chart::new(2);
        let x = parse_vf(&c, &["x2", "0"]);
        let d2 = VectorField::basis(2, 1);
        assert_eq!(lie_bracket(&x, &d2).unwrap(), parse_vf(&c, &["-1", "0"]));
        assert!(lie_bracket(&x, &x).unwrap().is_zero());
        // [x1∂1, x1x2∂2] = x1 ∂1(x1x2) ∂2 − x1x2 ∂2(x1) ∂1 = x1x2 ∂2
        let a = parse_vf(&c, &["x1", "0"]);
        let b = parse_vf(&c, &["0", "x1*x2"]);
        assert_eq!(lie_bracket(&a, &b).unwrap(), parse_vf(&c, &["0", "x1*x2"]));
    }

    #[test]
    fn dimension_mismatch() {
        let err = lie_bracket(&VectorField::zero(2), &VectorField::zero(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, found: 3 }));
        assert!(interior_product(&VectorField::zero(2), &TwoForm::zero(3)).is_err());
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = Chart::new(2);
        let f = c.parse("x1*x2").unwrap();
        assert_eq!(d_scalar(&f, 2), parse_form(&c, &["x2", "x1"]));
        let xi = parse_form(&c, &["0", "x1"]);
        let w = d_oneform(&xi);
        assert!(w.get(0, 1).is_one());
        assert_eq!(w, TwoForm::elementary(2, 0, 1));
        assert!(d_oneform(&d_scalar(&f, 2)).is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let c = Chart::new(2);
        let d1 = VectorField::basis(2, 0);
        let eta = parse_form(&c, &["0", "x1"]);
        assert_eq!(lie_derivative_oneform(&d1, &eta).unwrap(), OneForm::basis(2, 1));
        assert!(lie_derivative_oneform(&d1, &OneForm::zero(2)).unwrap().is_zero());
        // L_{x1∂1} dx1 = d(x1) = dx1
        let x = parse_vf(&c, &["x1", "0"]);
        assert_eq!(
            lie_derivative_oneform(&x, &OneForm::basis(2, 0)).unwrap(),
            OneForm::basis(2, 0)
        );
    }

    #[test]
    fn interior_product_examples() {
        let w = TwoForm::elementary(2, 0, 1);
        assert_eq!(
            interior_product(&VectorField::basis(2, 0), &w).unwrap(),
            OneForm::basis(2, 1)
        );
        assert!(interior_product(&VectorField::basis(2, 0), &TwoForm::zero(2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn pairing_examples() {
        let c = Chart::new(2);
        let one = pair_form_vector(&OneForm::basis(2, 0), &VectorField::basis(2, 0)).unwrap();
        assert!(one.is_one());
        assert!(pair_form_vector(&OneForm::basis(2, 0), &VectorField::basis(2, 1))
            .unwrap()
            .is_zero());
        let v = pair_form_vector(&parse_form(&c, &["x2", "0"]), &parse_vf(&c, &["x1", "0"])).unwrap();
        assert_eq!(v, c.parse("x1*x2").unwrap());
    }

    #[test]
    fn two_form_validation() {
        let one = ScalarField::one();
        let zero = ScalarField::zero();
        let bad = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        assert!(matches!(
            TwoForm::new(bad),
            Err(Error::NotAntisymmetric { row: 0, col: 1 })
        ));
        let diag = vec![vec![one, zero.clone()], vec![zero.clone(), zero]];
        assert!(TwoForm::new(diag).is_err());
    }
}
