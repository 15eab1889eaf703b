use std::collections::HashMap;

use super::field::Field;
use super::monomial::Monomial;

/// Sparse polynomial with terms sorted in descending monomial order and no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F) -> Self {
        Poly {
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::term(field, Monomial::ONE, c)
    }

    pub fn term(field: &F, m: Monomial, c: F::Elem) -> Self {
        let terms = if field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Poly {
            field: field.clone(),
            terms,
        }
    }

    pub fn monomial(field: &F, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    pub fn var(field: &F, k: usize) -> Self {
        Self::monomial(field, Monomial::var(k))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly {
            field: field.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        f.sub(&self.terms[i].1, &other.terms[j].1)
                    } else {
                        f.add(&self.terms[i].1, &other.terms[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            field: f.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        Poly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, self.field.mul(a, c)))
                .collect(),
        }
    }

    /// Multiplication by a monomial preserves the order, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        Poly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(m, &self.field.one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = acc.entry(a.mul(b)).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(ca, cb));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly {
            field: f.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Ring homomorphism sending variable `k` to `images[k]`. Variables
    /// beyond `images.len()` must not occur.
    pub fn substitute(&self, images: &[Poly<F>]) -> Self {
        let mut powers: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|p| vec![Poly::one(&self.field), p.clone()])
            .collect();
        let mut out = Poly::zero(&self.field);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&self.field, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                assert!(k < images.len(), "variable {k} has no image");
                let pk = &mut powers[k];
                while pk.len() <= e as usize {
                    let next = pk.last().unwrap().mul(&pk[1]);
                    pk.push(next);
                }
                t = t.mul(&pk[e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Largest index of a variable that occurs, plus one.
    pub fn support_width(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("nonzero")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::PrimeField;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn sums_cancel_and_stay_sorted() {
        let f = f();
        let x0 = Poly::var(&f, 0);
        let x1 = Poly::var(&f, 1);
        let p = x0.add(&x1);
        let q = p.sub(&x1);
        assert_eq!(q, x0);
        assert!(p.sub(&p).is_zero());
        let sq = p.mul(&p);
        assert_eq!(sq.len(), 3);
        assert!(sq.terms().windows(2).all(|w| w[0].0 > w[1].0));
        assert_eq!(sq.coeff(&Monomial::from_exps(&[1, 1])), 2);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let f = f();
        let x0 = Poly::var(&f, 0);
        let x1 = Poly::var(&f, 1);
        let t1 = Poly::var(&f, 2);
        let p = x0.mul(&t1).add(&x1);
        let images = vec![x0.clone(), x1.clone(), x0.add(&x1)];
        let lhs = p.mul(&p).substitute(&images);
        let rhs = p.substitute(&images).pow(2);
        assert_eq!(lhs, rhs);
    }
}
