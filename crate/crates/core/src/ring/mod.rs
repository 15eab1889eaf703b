//! Coefficient fields and the three graded polynomial rings: `R = k[x0,x1]`,
//! `S = R[T1..Tn]` and the scroll ring `R[w1..ws]` with `deg wi = (-σi, 1)`.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;

use crate::error::{Error, Result};
use crate::syzygy::GradedMatrix;

pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{format_poly, parse_poly};
pub use poly::Poly;

/// Which ring a polynomial lives in. All three share the variable layout
/// `x0, x1, (T|w)1, (T|w)2, ...`, so an element of `R` is also an element of
/// `S` and of the scroll ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    R,
    S { n: usize },
    Scroll { sigma: Vec<i64> },
}

impl Ring {
    pub fn scroll(sigma: &[i64]) -> Self {
        Ring::Scroll {
            sigma: sigma.to_vec(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Ring::R => 2,
            Ring::S { n } => 2 + n,
            Ring::Scroll { sigma } => 2 + sigma.len(),
        }
    }

    /// Number of `T` (or `w`) variables.
    pub fn n_outer(&self) -> usize {
        self.nvars() - 2
    }

    pub fn var_name(&self, k: usize) -> String {
        match (k, self) {
            (0, _) => "x0".into(),
            (1, _) => "x1".into(),
            (_, Ring::Scroll { .. }) => format!("w{}", k - 1),
            _ => format!("T{}", k - 1),
        }
    }

    /// `(x-degree, T-degree)`; in the scroll ring `wi` counts `-σi` in x.
    pub fn monomial_bidegree(&self, m: &Monomial) -> (i64, i64) {
        let x = m.x_degree() as i64;
        let t = m.t_degree() as i64;
        match self {
            Ring::Scroll { sigma } => {
                let tw: i64 = sigma
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s * m.exp(2 + i) as i64)
                    .sum();
                (x - tw, t)
            }
            _ => (x, t),
        }
    }

    pub fn bidegree<F: Field>(&self, p: &Poly<F>) -> Result<(i64, i64)> {
        match p.leading() {
            None => Err(Error::ZeroDegree),
            Some((m, _)) => Ok(self.monomial_bidegree(m)),
        }
    }

    /// Checks that every term has the same bidegree.
    pub fn is_homogeneous<F: Field>(&self, p: &Poly<F>) -> bool {
        let mut it = p.terms().iter().map(|(m, _)| self.monomial_bidegree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn parse<F: Field>(&self, field: &F, text: &str) -> Result<Poly<F>> {
        parse_poly(self, field, text)
    }

    pub fn format<F: Field>(&self, p: &Poly<F>) -> String {
        format_poly(self, p)
    }
}

/// Images of `x0, x1, T1..Tn` under `[T1 .. Tn] = [w1 .. ws]·ξ`.
pub fn substitution_images<F: Field>(xi: &GradedMatrix<F>) -> Vec<Poly<F>> {
    let f = xi.field();
    let mut images = vec![Poly::var(f, 0), Poly::var(f, 1)];
    for j in 0..xi.ncols() {
        let mut t = Poly::zero(f);
        for i in 0..xi.nrows() {
            t = t.add(&xi.get(i, j).mul(&Poly::var(f, 2 + i)));
        }
        images.push(t);
    }
    images
}

/// Rewrites an element of `S` in scroll coordinates via `[T] = [w]·ξ`.
pub fn substitute_t_with_w<F: Field>(p: &Poly<F>, xi: &GradedMatrix<F>) -> Result<Poly<F>> {
    if p.support_width() > 2 + xi.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial uses more than the {} T-variables of xi",
            xi.ncols()
        )));
    }
    Ok(p.substitute(&substitution_images(xi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex2n_xi(f: &PrimeField) -> GradedMatrix<PrimeField> {
        GradedMatrix::parse(f, &[vec!["-x1", "x0", "0"], vec!["0", "-x1", "x0"]], &[0, 0, 0], &[1, 1])
            .unwrap()
    }

    #[test]
    fn bidegrees() {
        let f = PrimeField::default();
        let s = Ring::S { n: 3 };
        assert_eq!(s.bidegree(&s.parse(&f, "T1*T2").unwrap()).unwrap(), (0, 2));
        assert_eq!(s.bidegree(&Poly::zero(&f)), Err(Error::ZeroDegree));
    }

    #[test]
    fn substitution_examples() {
        let f = PrimeField::default();
        let s = Ring::S { n: 3 };
        let sc = Ring::scroll(&[1, 1]);
        let xi = ex2n_xi(&f);
        let g1 = s.parse(&f, "x0^2*T1 + x0*x1*T2 + x1^2*T3").unwrap();
        assert!(substitute_t_with_w(&g1, &xi).unwrap().is_zero());
        let t1 = s.parse(&f, "T1").unwrap();
        assert_eq!(
            substitute_t_with_w(&t1, &xi).unwrap(),
            sc.parse(&f, "-x1*w1").unwrap()
        );
        let h = s
            .parse(&f, "-x1^2*T1^2 + x0^2*T2*T3 + x0*x1*T3^2")
            .unwrap();
        let g2 = s.parse(&f, "x1^3*T1 + x0^3*T3").unwrap();
        let img = substitute_t_with_w(&h, &xi).unwrap();
        assert_eq!(img, sc.parse(&f, "-x1^4*w1^2 + x0^4*w1*w2").unwrap());
        let w1 = sc.parse(&f, "w1").unwrap();
        assert_eq!(img, substitute_t_with_w(&g2, &xi).unwrap().mul(&w1));
        let t4 = Ring::S { n: 4 }.parse(&f, "T4").unwrap();
        assert!(matches!(
            substitute_t_with_w(&t4, &xi),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
