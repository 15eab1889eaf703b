//! Terms and polynomials private to the Gröbner engine.
//!
//! Slot layout: `0` is the elimination tag `t`, then `x1, x0, Tn, ..., T1`.
//! The order compares `t` first, then total degree of the remaining slots,
//! then reverse lex from slot 1 on. On `t`-free terms this is grevlex with
//! `T1 > ... > Tn > x0 > x1`.

use std::cmp::Ordering;

use crate::ring::Field;

pub const SLOTS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub e: [u16; SLOTS],
    pub deg: u16,
    pub mask: u32,
}

impl Term {
    pub const ONE: Term = Term {
        e: [0; SLOTS],
        deg: 0,
        mask: 0,
    };

    pub fn from_slots(e: [u16; SLOTS]) -> Term {
        let deg = e[1..].iter().sum();
        let mask = e
            .iter()
            .enumerate()
            .fold(0u32, |m, (k, &x)| if x > 0 { m | (1 << k) } else { m });
        Term { e, deg, mask }
    }

    pub fn slot(k: usize) -> Term {
        let mut e = [0; SLOTS];
        e[k] = 1;
        Term::from_slots(e)
    }

    pub fn has_tag(&self) -> bool {
        self.e[0] > 0
    }

    pub fn mul(&self, o: &Term) -> Term {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a += b;
        }
        Term {
            e,
            deg: self.deg + o.deg,
            mask: self.mask | o.mask,
        }
    }

    pub fn divides(&self, o: &Term) -> bool {
        self.mask & !o.mask == 0 && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    pub fn quo(&self, d: &Term) -> Term {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&d.e) {
            *a -= b;
        }
        Term::from_slots(e)
    }

    pub fn lcm(&self, o: &Term) -> Term {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a = (*a).max(*b);
        }
        Term::from_slots(e)
    }

    pub fn coprime(&self, o: &Term) -> bool {
        self.mask & o.mask == 0
    }
}

impl Ord for Term {
    fn cmp(&self, o: &Self) -> Ordering {
        self.e[0]
            .cmp(&o.e[0])
            .then(self.deg.cmp(&o.deg))
            .then_with(|| {
                for k in 1..SLOTS {
                    match self.e[k].cmp(&o.e[k]) {
                        Ordering::Equal => continue,
                        c => return c.reverse(),
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Terms sorted strictly descending, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly<F: Field> {
    pub terms: Vec<(Term, F::Elem)>,
}

impl<F: Field> TPoly<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> &Term {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F::Elem {
        &self.terms[0].1
    }

    pub fn monic(mut self, f: &F) -> Self {
        if let Some((_, c)) = self.terms.first() {
            let inv = f.inv(c).expect("nonzero leading coefficient");
            for (_, x) in &mut self.terms {
                *x = f.mul(x, &inv);
            }
        }
        self
    }

    pub fn mul_term(&self, f: &F, m: &Term, c: &F::Elem) -> Self {
        TPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (t.mul(m), f.mul(x, c)))
                .collect(),
        }
    }

    /// `self[from..] - c·m·g`, keeping `self[..from]`.
    pub fn sub_mul_from(&mut self, f: &F, from: usize, c: &F::Elem, m: &Term, g: &TPoly<F>) {
        let tail = self.terms.split_off(from);
        let mut out = Vec::with_capacity(tail.len() + g.terms.len());
        let mut a = tail.into_iter().peekable();
        let mut b = g.terms.iter().map(|(t, x)| (t.mul(m), f.neg(&f.mul(x, c)))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (t, u) = a.next().unwrap();
                        let (_, v) = b.next().unwrap();
                        let s = f.add(&u, &v);
                        if !f.is_zero(&s) {
                            out.push((t, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        self.terms.extend(out);
    }

    pub fn add(&self, f: &F, o: &TPoly<F>) -> Self {
        let mut r = self.clone();
        r.sub_mul_from(f, 0, &f.neg(&f.one()), &Term::ONE, o);
        r
    }

    pub fn from_unsorted(f: &F, mut terms: Vec<(Term, F::Elem)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Term, F::Elem)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((u, d)) if *u == t => *d = f.add(d, &c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        TPoly { terms: out }
    }
}
