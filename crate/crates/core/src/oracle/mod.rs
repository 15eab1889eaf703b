//! Ground truth for the pipeline: a bihomogeneous Gröbner engine over `S`,
//! ideal quotients, saturation by `𝔪 = (x0, x1)`, bigraded Hilbert
//! functions and minimal-generator counts.
//!
//! Nothing here depends on the tower or the generator modules; the engine
//! has its own term representation and order.

mod groebner;
mod term;

use std::collections::{BTreeMap, HashMap};

use crate::combinat::BidegreeTable;
use crate::error::{Error, Result};
use crate::ring::{Field, Monomial, Poly};
use groebner::{groebner, is_groebner, reduce};
use term::{TPoly, Term, SLOTS};

const TAG: usize = 0;
const SATURATION_CAP: usize = 100;

fn x_slot(k: usize) -> usize {
    // x0 -> 2, x1 -> 1
    2 - k
}

fn t_slot(n: usize, k: usize) -> usize {
    // T_k (1-based) -> 3 + n - k
    3 + n - k
}

/// A reduced Gröbner basis of an ideal of `S = k[x0,x1,T1..Tn]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    n: usize,
    gens: Vec<TPoly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> Vec<Poly<F>> {
        self.gens.iter().map(|p| from_tpoly(&self.field, self.n, p)).collect()
    }

    pub fn is_groebner(&self) -> bool {
        is_groebner(&self.field, &self.gens)
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        let r = reduce(&self.field, to_tpoly(&self.field, self.n, p), &self.gens);
        from_tpoly(&self.field, self.n, &r)
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    fn leading_terms(&self) -> Vec<Term> {
        self.gens.iter().map(|g| *g.lt()).collect()
    }
}

fn to_tpoly<F: Field>(f: &F, n: usize, p: &Poly<F>) -> TPoly<F> {
    assert!(p.support_width() <= 2 + n, "polynomial uses more than {n} T-variables");
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = [0u16; SLOTS];
            e[x_slot(0)] = m.exp(0);
            e[x_slot(1)] = m.exp(1);
            for k in 1..=n {
                e[t_slot(n, k)] = m.exp(1 + k);
            }
            (Term::from_slots(e), c.clone())
        })
        .collect();
    TPoly::from_unsorted(f, terms)
}

fn from_tpoly<F: Field>(f: &F, n: usize, p: &TPoly<F>) -> Poly<F> {
    assert!(p.terms.iter().all(|(t, _)| !t.has_tag()), "tag variable left over");
    Poly::from_terms(
        f,
        p.terms.iter().map(|(t, c)| {
            let mut m = Monomial::ONE;
            m.0[0] = t.e[x_slot(0)];
            m.0[1] = t.e[x_slot(1)];
            for k in 1..=n {
                m.0[1 + k] = t.e[t_slot(n, k)];
            }
            (m, c.clone())
        }),
    )
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `k[x0,x1,T1..Tn]`.
pub fn buchberger<F: Field>(field: &F, n: usize, gens: &[Poly<F>]) -> GroebnerBasis<F> {
    assert!(3 + n <= SLOTS, "too many variables for the oracle");
    let input = gens.iter().map(|p| to_tpoly(field, n, p)).collect();
    GroebnerBasis {
        field: field.clone(),
        n,
        gens: groebner(field, input),
    }
}

fn from_tpolys<F: Field>(field: &F, n: usize, gens: Vec<TPoly<F>>) -> GroebnerBasis<F> {
    GroebnerBasis {
        field: field.clone(),
        n,
        gens: groebner(field, gens),
    }
}

/// `A ∩ B` as the `t`-free part of `t·A + (1 - t)·B`.
pub fn intersect<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> GroebnerBasis<F> {
    let f = &a.field;
    let t = Term::slot(TAG);
    let one = f.one();
    let mut input: Vec<TPoly<F>> = a.gens.iter().map(|g| g.mul_term(f, &t, &one)).collect();
    for g in &b.gens {
        let tg = g.mul_term(f, &t, &one);
        input.push(g.add(f, &tg.mul_term(f, &Term::ONE, &f.neg(&one))));
    }
    let gens = groebner(f, input).into_iter().filter(|p| !p.lt().has_tag()).collect();
    GroebnerBasis {
        field: f.clone(),
        n: a.n,
        gens,
    }
}

/// Exact division of `p` by `d`.
fn divide<F: Field>(f: &F, p: &TPoly<F>, d: &TPoly<F>) -> Option<TPoly<F>> {
    let mut rem = p.clone();
    let mut quo = Vec::new();
    while !rem.is_zero() {
        if !d.lt().divides(rem.lt()) {
            return None;
        }
        let m = rem.lt().quo(d.lt());
        let c = f.div(rem.lc(), d.lc()).unwrap();
        quo.push((m, c.clone()));
        rem.sub_mul_from(f, 0, &c, &m, d);
    }
    Some(TPoly::from_unsorted(f, quo))
}

/// `J : (p) = (J ∩ (p)) / p`.
pub fn colon<F: Field>(j: &GroebnerBasis<F>, p: &Poly<F>) -> GroebnerBasis<F> {
    let f = &j.field;
    let tp = to_tpoly(f, j.n, p);
    let principal = GroebnerBasis {
        field: f.clone(),
        n: j.n,
        gens: vec![tp.clone().monic(f)],
    };
    let inter = intersect(j, &principal);
    let quotients = inter
        .gens
        .iter()
        .map(|g| divide(f, g, &tp).expect("element of (p) divisible by p"))
        .collect();
    from_tpolys(f, j.n, quotients)
}

/// `J : 𝔪^∞` by iterating `J := (J : x0) ∩ (J : x1)` to a fixed point.
pub fn saturate_m<F: Field>(j: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    let f = &j.field;
    let x0 = Poly::var(f, 0);
    let x1 = Poly::var(f, 1);
    let mut cur = j.clone();
    for _ in 0..SATURATION_CAP {
        let (a, b) = std::thread::scope(|s| {
            let h = s.spawn(|| colon(&cur, &x0));
            let b = colon(&cur, &x1);
            (h.join().expect("colon thread"), b)
        });
        let next = intersect(&a, &b);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::IterationCap(SATURATION_CAP))
}

/// Exponent vectors of `S_{i,j}`, as oracle terms.
fn piece_terms(n: usize, i: i64, j: i64) -> Vec<Term> {
    fn comps(k: usize, d: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k == 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=d {
            cur.push(a);
            comps(k - 1, d - a, cur, out);
            cur.pop();
        }
    }
    if i < 0 || j < 0 {
        return Vec::new();
    }
    let mut xs = Vec::new();
    comps(2, i as u16, &mut Vec::new(), &mut xs);
    let mut ts = Vec::new();
    if n == 0 {
        if j == 0 {
            ts.push(Vec::new());
        }
    } else {
        comps(n, j as u16, &mut Vec::new(), &mut ts);
    }
    let mut out = Vec::new();
    for x in &xs {
        for t in &ts {
            let mut e = [0u16; SLOTS];
            e[x_slot(0)] = x[0];
            e[x_slot(1)] = x[1];
            for (k, &a) in t.iter().enumerate() {
                e[t_slot(n, k + 1)] = a;
            }
            out.push(Term::from_slots(e));
        }
    }
    out
}

/// `dim J_{i,j}` for every `(i, j)` in the window, as
/// `dim S_{i,j} - #standard monomials`.
pub fn bigraded_hilbert<F: Field>(
    g: &GroebnerBasis<F>,
    x_range: (i64, i64),
    t_range: (i64, i64),
) -> BTreeMap<(i64, i64), usize> {
    let lts = g.leading_terms();
    let mut out = BTreeMap::new();
    for i in x_range.0..=x_range.1 {
        for j in t_range.0..=t_range.1 {
            let count = piece_terms(g.n, i, j)
                .iter()
                .filter(|m| lts.iter().any(|l| l.divides(m)))
                .count();
            out.insert((i, j), count);
        }
    }
    out
}

/// Echelon form keyed by leading term.
struct LeadEchelon<F: Field> {
    rows: HashMap<Term, TPoly<F>>,
}

impl<F: Field> LeadEchelon<F> {
    fn new() -> Self {
        LeadEchelon { rows: HashMap::new() }
    }

    fn insert(&mut self, f: &F, mut p: TPoly<F>) {
        while !p.is_zero() {
            let Some(r) = self.rows.get(p.lt()) else {
                self.rows.insert(*p.lt(), p.monic(f));
                return;
            };
            let c = p.lc().clone();
            p.sub_mul_from(f, 0, &c, &Term::ONE, r);
        }
    }
}

/// Basis `{(μ / LT g)·g}` of `J_{i,j}`, one element per nonstandard `μ`.
fn piece_basis_of<F: Field>(g: &GroebnerBasis<F>, i: i64, j: i64) -> Vec<TPoly<F>> {
    let f = &g.field;
    let one = f.one();
    piece_terms(g.n, i, j)
        .into_iter()
        .filter_map(|m| {
            g.gens
                .iter()
                .find(|p| p.lt().divides(&m))
                .map(|p| p.mul_term(f, &m.quo(p.lt()), &one))
        })
        .collect()
}

/// Which module structure minimal generators are counted for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorCount {
    /// The ideal `J ⊂ S`: quotient by `x·J_{i-1,j} + T·J_{i,j-1}`.
    Ideal,
    /// Each slice `J_{i,*}` as a module over `U = k[T1..Tn]`: quotient by
    /// `T·J_{i,j-1}` only.
    Slice,
}

/// Bidegrees of a minimal bihomogeneous generating set, restricted to the
/// window: `dim J_{i,j} - dim(x·J_{i-1,j} + T·J_{i,j-1})`.
pub fn minimal_generator_bidegrees<F: Field>(
    g: &GroebnerBasis<F>,
    x_range: (i64, i64),
    t_range: (i64, i64),
) -> BidegreeTable {
    minimal_generators(g, x_range, t_range, GeneratorCount::Ideal)
}

/// Minimal generator bidegrees of `J` or of its slices `J_{i,*}` over `U`.
pub fn minimal_generators<F: Field>(
    g: &GroebnerBasis<F>,
    x_range: (i64, i64),
    t_range: (i64, i64),
    mode: GeneratorCount,
) -> BidegreeTable {
    let f = &g.field;
    let one = f.one();
    let mut table = BidegreeTable::default();
    for i in x_range.0..=x_range.1 {
        for j in t_range.0..=t_range.1 {
            let dim = piece_basis_of(g, i, j).len();
            if dim == 0 {
                continue;
            }
            let mut ech = LeadEchelon::new();
            let below = match mode {
                GeneratorCount::Ideal => piece_basis_of(g, i - 1, j),
                GeneratorCount::Slice => Vec::new(),
            };
            for p in below {
                for k in 0..2 {
                    ech.insert(f, p.mul_term(f, &Term::slot(x_slot(k)), &one));
                }
            }
            for p in piece_basis_of(g, i, j - 1) {
                for k in 1..=g.n {
                    ech.insert(f, p.mul_term(f, &Term::slot(t_slot(g.n, k)), &one));
                }
            }
            table.add((i, j), dim - ech.rows.len());
        }
    }
    table
}

/// `dim ker(S_{a,b} → R, T_k ↦ f_k)` for forms `f_k` of a common degree:
/// the Rees ideal piece computed without any Gröbner basis.
pub fn rees_kernel_dim<F: Field>(forms: &[Poly<F>], a: i64, b: i64) -> usize {
    let n = forms.len();
    let Some(f) = forms.first().map(|p| p.field().clone()) else {
        return 0;
    };
    let mut images = vec![Poly::var(&f, 0), Poly::var(&f, 1)];
    images.extend(forms.iter().cloned());
    let terms = piece_terms(n, a, b);
    let mut ech = LeadEchelon::new();
    let mut rank = 0;
    for t in &terms {
        let mut m = Monomial::ONE;
        m.0[0] = t.e[x_slot(0)];
        m.0[1] = t.e[x_slot(1)];
        for k in 1..=n {
            m.0[1 + k] = t.e[t_slot(n, k)];
        }
        let img = Poly::monomial(&f, m).substitute(&images);
        let before = ech.rows.len();
        ech.insert(&f, to_tpoly(&f, 0, &img));
        rank += ech.rows.len() - before;
    }
    terms.len() - rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Ring};

    fn s(n: usize, text: &str) -> Poly<PrimeField> {
        Ring::S { n }.parse(&PrimeField::default(), text).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let f = PrimeField::default();
        let g = buchberger(&f, 3, &[s(3, "T1"), s(3, "T2")]);
        assert_eq!(g.generators(), vec![s(3, "T2"), s(3, "T1")]);
        let g = buchberger(&f, 3, &[s(3, "x0*T1 - x1*T2")]);
        assert_eq!(g.len(), 1);
        assert_eq!(g.normal_form(&s(3, "T1")), s(3, "T1"));
    }

    #[test]
    fn saturation_of_m_times_t1() {
        let f = PrimeField::default();
        let j = buchberger(&f, 3, &[s(3, "x0*T1"), s(3, "x1*T1")]);
        let sat = saturate_m(&j).unwrap();
        assert_eq!(sat.generators(), vec![s(3, "T1")]);
    }

    #[test]
    fn ex2n_saturation_contains_h10() {
        let f = PrimeField::default();
        let g1 = s(3, "x0^2*T1 + x0*x1*T2 + x1^2*T3");
        let g2 = s(3, "x1^3*T1 + x0^3*T3");
        let k1 = saturate_m(&buchberger(&f, 3, &[g1.clone()])).unwrap();
        assert_eq!(k1.generators(), vec![g1.clone()]);
        let k = saturate_m(&buchberger(&f, 3, &[g1.clone(), g2])).unwrap();
        assert!(k.is_groebner());
        assert!(k.contains(&s(3, "-x1^2*T1^2 + x0^2*T2*T3 + x0*x1*T3^2")));
        assert!(k.contains(&g1));
        let x0 = Poly::var(&f, 0);
        assert_eq!(colon(&k, &x0), k);
        // Against the kernel of T -> minors.
        let signed = crate::syzygy::signed_maximal_minors(
            &crate::syzygy::GradedMatrix::parse(
                &f,
                &[vec!["x0^2", "x1^3"], vec!["x0*x1", "0"], vec!["x1^2", "x0^3"]],
                &[2, 3],
                &[0, 0, 0],
            )
            .unwrap(),
        )
        .unwrap();
        let h = bigraded_hilbert(&k, (0, 4), (0, 4));
        for ((a, b), dim) in h {
            assert_eq!(dim, rees_kernel_dim(&signed, a, b), "({a},{b})");
        }
    }

    #[test]
    fn hilbert_of_t1() {
        let f = PrimeField::default();
        let g = buchberger(&f, 3, &[s(3, "T1")]);
        let h = bigraded_hilbert(&g, (0, 1), (1, 1));
        assert_eq!(h[&(0, 1)], 1);
        assert_eq!(h[&(1, 1)], 2);
        let empty = buchberger(&f, 3, &[]);
        assert!(bigraded_hilbert(&empty, (0, 2), (0, 2)).values().all(|&v| v == 0));
    }

    #[test]
    fn principal_ideal_has_one_generator() {
        let f = PrimeField::default();
        let g1 = s(3, "x0^2*T1 + x0*x1*T2 + x1^2*T3");
        let g = buchberger(&f, 3, &[g1]);
        let t = minimal_generator_bidegrees(&g, (0, 4), (0, 3));
        assert_eq!(t.counts.into_iter().collect::<Vec<_>>(), vec![((2, 1), 1)]);
    }

    #[test]
    fn idempotent() {
        let f = PrimeField::default();
        let g = buchberger(&f, 3, &[s(3, "x0^2*T1 + x0*x1*T2 + x1^2*T3"), s(3, "x1^3*T1 + x0^3*T3")]);
        let again = buchberger(&f, 3, &g.generators());
        assert_eq!(g, again);
    }
}
