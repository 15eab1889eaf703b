//! Degreewise exact linear algebra over graded pieces of `R`, `S` and the
//! scroll ring.

use std::collections::HashMap;

use crate::ring::monomial::compositions;
use crate::ring::{Field, Monomial, Poly, Ring};

/// Ordered monomial basis of one graded piece, with a reverse index.
#[derive(Clone, Debug)]
pub struct PieceBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl PieceBasis {
    pub fn new(mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        PieceBasis { monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinate vector of `p`, or `None` if `p` has a term outside the piece.
    pub fn coords<F: Field>(&self, p: &Poly<F>) -> Option<Vec<F::Elem>> {
        let f = p.field();
        let mut v = vec![f.zero(); self.dim()];
        for (m, c) in p.terms() {
            v[self.position(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly<F: Field>(&self, field: &F, v: &[F::Elem]) -> Poly<F> {
        let terms: Vec<_> = self
            .monomials
            .iter()
            .zip(v)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Poly::from_terms(field, terms)
    }
}

/// Monomials of `R` of degree `d` (empty for `d < 0`).
pub fn x_monomials(d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    (0..=d as u16)
        .rev()
        .map(|a| Monomial::from_exps(&[a, d as u16 - a]))
        .collect()
}

/// Monomials in the outer variables `(T|w)1..(T|w)k` of total degree `d`.
pub fn outer_monomials(k: usize, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    compositions(k, d as u32)
        .into_iter()
        .map(|e| {
            let mut m = Monomial::ONE;
            m.0[2..2 + k].copy_from_slice(&e);
            m
        })
        .collect()
}

/// Monomial basis of the piece of `ring` in bidegree `(i, j)`. For `R` the
/// second component must be 0.
pub fn piece_basis(ring: &Ring, (i, j): (i64, i64)) -> PieceBasis {
    let mut out = Vec::new();
    match ring {
        Ring::R => {
            if j == 0 {
                out = x_monomials(i);
            }
        }
        Ring::S { n } => {
            for t in outer_monomials(*n, j) {
                out.extend(x_monomials(i).into_iter().map(|x| x.mul(&t)));
            }
        }
        Ring::Scroll { sigma } => {
            for t in outer_monomials(sigma.len(), j) {
                let tw: i64 = sigma
                    .iter()
                    .enumerate()
                    .map(|(k, s)| s * t.exp(2 + k) as i64)
                    .sum();
                out.extend(x_monomials(i + tw).into_iter().map(|x| x.mul(&t)));
            }
        }
    }
    PieceBasis::new(out)
}

/// Dense row-major matrix.
#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    pub field: F,
    pub ncols: usize,
    pub rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: &F, ncols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix {
            field: field.clone(),
            ncols,
            rows,
        }
    }

    /// In-place reduced row echelon form with pivots chosen left to right.
    /// Zero rows are removed; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !f.is_zero(&self.rows[i][c])) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = f.inv(&self.rows[r][c]).expect("nonzero pivot");
            for x in self.rows[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : A v = 0}`: one vector per free column, with that free
    /// coordinate equal to 1.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.ncols];
            v[free] = f.one();
            for (row, &pc) in m.rows.iter().zip(&pivots) {
                v[pc] = f.neg(&row[free]);
            }
            out.push(v);
        }
        out
    }
}

/// Solves `A x = b` where `A` is given by its columns. Pivots are chosen
/// left to right and free unknowns are set to 0.
pub fn solve_columns<F: Field>(
    field: &F,
    columns: &[Vec<F::Elem>],
    b: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let nrows = b.len();
    let ncols = columns.len();
    let rows: Vec<Vec<F::Elem>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<F::Elem> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut m = Matrix::new(field, ncols + 1, rows);
    let pivots = m.rref();
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &pc) in m.rows.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Writes `target = Σ a_j gens_j` with each `a_j` homogeneous of the
/// complementary bidegree in `ring`. Deterministic: unknown coefficients are
/// ordered generator by generator, monomials in descending order, and free
/// unknowns are zero. Returns `None` if no such writing exists.
pub fn solve_combination<F: Field>(
    ring: &Ring,
    target: &Poly<F>,
    gens: &[Poly<F>],
) -> Option<Vec<Poly<F>>> {
    let f = target.field();
    if target.is_zero() {
        return Some(gens.iter().map(|_| Poly::zero(f)).collect());
    }
    let tdeg = ring.bidegree(target).ok()?;
    let mut cols: Vec<Poly<F>> = Vec::new();
    let mut owners: Vec<(usize, Monomial)> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let Ok(gdeg) = ring.bidegree(g) else { continue };
        let cdeg = (tdeg.0 - gdeg.0, tdeg.1 - gdeg.1);
        for m in piece_basis(ring, cdeg).monomials {
            cols.push(g.mul_monomial(&m));
            owners.push((j, m));
        }
    }
    let mut all: Vec<Monomial> = target.terms().iter().map(|(m, _)| *m).collect();
    for c in &cols {
        all.extend(c.terms().iter().map(|(m, _)| *m));
    }
    let basis = PieceBasis::new(all);
    let columns: Vec<Vec<F::Elem>> = cols.iter().map(|c| basis.coords(c).unwrap()).collect();
    let x = solve_columns(f, &columns, &basis.coords(target).unwrap())?;
    let mut out: Vec<Poly<F>> = gens.iter().map(|_| Poly::zero(f)).collect();
    for ((j, m), c) in owners.iter().zip(x) {
        if !f.is_zero(&c) {
            out[*j] = out[*j].add(&Poly::term(f, *m, c));
        }
    }
    #[cfg(debug_assertions)]
    {
        let mut check = Poly::zero(f);
        for (a, g) in out.iter().zip(gens) {
            check = check.add(&a.mul(g));
        }
        debug_assert_eq!(&check, target, "solve_combination re-expansion");
    }
    Some(out)
}

/// Rank of a family of polynomials, viewed as coordinate vectors.
pub fn span_dim<F: Field>(vectors: &[Poly<F>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let field = first.field();
    let basis = PieceBasis::new(
        vectors
            .iter()
            .flat_map(|p| p.terms().iter().map(|(m, _)| *m))
            .collect(),
    );
    let rows = vectors.iter().map(|p| basis.coords(p).unwrap()).collect();
    Matrix::new(field, basis.dim(), rows).rank()
}

/// Incrementally maintained echelon basis of a subspace of `k^ncols`. Rows
/// have distinct pivots (first nonzero entry, normalized to 1) and are kept
/// sorted by pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        Echelon {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v[*p..].iter_mut().zip(&row[*p..]) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).unwrap();
        for x in r[p..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }
}
