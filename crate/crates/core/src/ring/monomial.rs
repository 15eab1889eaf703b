use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables in any ring context.
pub const MAX_VARS: usize = 16;

/// Exponent vector. Variable 0 is `x0`, variable 1 is `x1`, variable `1 + k`
/// is `Tk` (or `wk` in the scroll ring).
///
/// `Ord` is degree-reverse-lexicographic with `x0 > x1 > T1 > T2 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(k: usize) -> Self {
        Self::var_pow(k, 1)
    }

    pub fn var_pow(k: usize, e: u16) -> Self {
        let mut m = Self::ONE;
        m.0[k] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, k: usize) -> u16 {
        self.0[k]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree in `x0, x1`.
    pub fn x_degree(&self) -> u32 {
        self.0[0] as u32 + self.0[1] as u32
    }

    /// Degree in all variables after `x0, x1`.
    pub fn t_degree(&self) -> u32 {
        self.0[2..].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        r
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(r)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        r
    }

    /// Inserts the `x0,x1` part of `self` with the `T`-part of `other`.
    pub fn with_t_part(&self, other: &Monomial) -> Monomial {
        let mut r = *other;
        r.0[0] = self.0[0];
        r.0[1] = self.0[1];
        r
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for k in (0..MAX_VARS).rev() {
            match self.0[k].cmp(&other.0[k]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "Mon{:?}", &self.0[..last.max(2)])
    }
}

/// All exponent vectors of length `nvars` with total degree `deg`, in
/// lexicographic order (first coordinate largest first).
pub fn compositions(nvars: usize, deg: u32) -> Vec<Vec<u16>> {
    fn rec(nvars: usize, deg: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if nvars == 1 {
            cur.push(deg as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=deg).rev() {
            cur.push(e as u16);
            rec(nvars - 1, deg - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drevlex_orders_x_before_t() {
        let x0sq_t1 = Monomial::from_exps(&[2, 0, 1]);
        let x0x1_t2 = Monomial::from_exps(&[1, 1, 0, 1]);
        assert!(x0sq_t1 > x0x1_t2);
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        assert!(x0 > x1);
        assert!(Monomial::from_exps(&[2]) > Monomial::from_exps(&[1, 1]));
        assert!(Monomial::from_exps(&[0, 3]) < Monomial::from_exps(&[1, 2]));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exps(&[1, 2]);
        let b = Monomial::from_exps(&[2, 1, 1]);
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::from_exps(&[2, 2, 1]));
        assert_eq!(l.div(&a), Some(Monomial::from_exps(&[1, 0, 1])));
        assert_eq!(a.div(&b), None);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 3).len(), 4);
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(0, 0).len(), 1);
        assert!(compositions(0, 1).is_empty());
        assert_eq!(compositions(2, 2)[0], vec![2, 0]);
    }
}
