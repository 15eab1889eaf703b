//! Graded matrices over `R = k[x0,x1]`: Hilbert–Burch minors, minimal
//! kernels, σ-invariants and the scroll matrix Γ.

use crate::error::{Error, Result};
use crate::gradedlin::{x_monomials, Echelon, Matrix, PieceBasis};
use crate::ring::{Field, Monomial, Poly, Ring};

/// Matrix over `R` whose entry `(i, j)` is zero or a form of degree
/// `col_degrees[j] + row_twists[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<F: Field> {
    field: F,
    entries: Vec<Vec<Poly<F>>>,
    nrows: usize,
    ncols: usize,
    pub col_degrees: Vec<i64>,
    pub row_twists: Vec<i64>,
}

impl<F: Field> GradedMatrix<F> {
    pub fn new(
        field: &F,
        entries: Vec<Vec<Poly<F>>>,
        col_degrees: Vec<i64>,
        row_twists: Vec<i64>,
    ) -> Result<Self> {
        let nrows = row_twists.len();
        let ncols = col_degrees.len();
        if entries.len() != nrows || entries.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {nrows}x{ncols} matrix"
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.support_width() > 2 {
                    return Err(Error::Invalid(format!("entry ({i},{j}) is not in k[x0,x1]")));
                }
                if !Ring::R.is_homogeneous(e) {
                    return Err(Error::NotHomogeneous);
                }
                if let Some((m, _)) = e.leading() {
                    let want = col_degrees[j] + row_twists[i];
                    if m.total_degree() as i64 != want {
                        return Err(Error::Degree(format!(
                            "entry ({},{}) has degree {}, expected {want}",
                            i + 1,
                            j + 1,
                            m.total_degree()
                        )));
                    }
                }
            }
        }
        Ok(GradedMatrix {
            field: field.clone(),
            entries,
            nrows,
            ncols,
            col_degrees,
            row_twists,
        })
    }

    pub fn parse(
        field: &F,
        rows: &[Vec<&str>],
        col_degrees: &[i64],
        row_twists: &[i64],
    ) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| Ring::R.parse(field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, entries, col_degrees.to_vec(), row_twists.to_vec())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[Poly<F>] {
        &self.entries[i]
    }

    pub fn column(&self, j: usize) -> Vec<Poly<F>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn entries(&self) -> &[Vec<Poly<F>>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.ncols).map(|j| self.column(j)).collect();
        GradedMatrix {
            field: self.field.clone(),
            entries,
            nrows: self.ncols,
            ncols: self.nrows,
            col_degrees: self.row_twists.clone(),
            row_twists: self.col_degrees.clone(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        GradedMatrix {
            field: self.field.clone(),
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
            nrows: rows.len(),
            ncols: self.ncols,
            col_degrees: self.col_degrees.clone(),
            row_twists: rows.iter().map(|&i| self.row_twists[i]).collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        GradedMatrix {
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                .collect(),
            nrows: self.nrows,
            ncols: cols.len(),
            col_degrees: cols.iter().map(|&j| self.col_degrees[j]).collect(),
            row_twists: self.row_twists.clone(),
        }
    }

    pub fn delete_row(&self, i: usize) -> Self {
        let rows: Vec<usize> = (0..self.nrows).filter(|&k| k != i).collect();
        self.select_rows(&rows)
    }

    /// Plain matrix product (degrees are not tracked).
    pub fn mul_entries(&self, other: &Self) -> Vec<Vec<Poly<F>>> {
        assert_eq!(self.ncols, other.nrows, "shape mismatch");
        (0..self.nrows)
            .map(|i| {
                (0..other.ncols)
                    .map(|j| {
                        (0..self.ncols).fold(Poly::zero(&self.field), |acc, k| {
                            acc.add(&self.entries[i][k].mul(&other.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Row vector times this matrix.
    pub fn left_mul(&self, v: &[Poly<F>]) -> Vec<Poly<F>> {
        (0..self.ncols)
            .map(|j| {
                v.iter()
                    .zip(&self.entries)
                    .fold(Poly::zero(&self.field), |acc, (a, r)| acc.add(&a.mul(&r[j])))
            })
            .collect()
    }

    pub fn format(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| Ring::R.format(p)).collect())
            .collect()
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<F: Field>(field: &F, m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    match n {
        0 => Poly::one(field),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = Poly::zero(field);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly<F>>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&determinant(field, &minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Univariate polynomial as a coefficient list, lowest degree first.
fn trim<F: Field>(f: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
    v
}

fn univariate_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = a.to_vec();
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = f.mul(r.last().unwrap(), &lead_inv);
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = f.sub(&r[shift + k], &f.mul(&q, c));
        }
        r = trim(f, r);
    }
    r
}

fn univariate_gcd<F: Field>(f: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Vec<F::Elem> {
    let (mut a, mut b) = (trim(f, a), trim(f, b));
    while !b.is_empty() {
        let r = univariate_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Greatest common divisor of binary forms, monic in `x0` after removing
/// the `x1`-power. Zero forms are ignored; returns zero if all vanish.
pub fn binary_form_gcd<F: Field>(field: &F, forms: &[Poly<F>]) -> Poly<F> {
    let nonzero: Vec<&Poly<F>> = forms.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Poly::zero(field);
    }
    let v = nonzero
        .iter()
        .flat_map(|p| p.terms().iter().map(|(m, _)| m.exp(1)))
        .min()
        .unwrap();
    let mut g: Vec<F::Elem> = Vec::new();
    for p in &nonzero {
        let d = p.leading().unwrap().0.total_degree() as usize;
        let mut u = vec![field.zero(); d + 1];
        for (m, c) in p.terms() {
            u[m.exp(0) as usize] = c.clone();
        }
        g = if g.is_empty() {
            trim(field, u)
        } else {
            univariate_gcd(field, g, u)
        };
    }
    let inv = field.inv(g.last().unwrap()).unwrap();
    let deg = g.len() - 1;
    let terms = g.iter().enumerate().map(|(a, c)| {
        (
            Monomial::from_exps(&[a as u16, (deg - a) as u16 + v]),
            field.mul(c, &inv),
        )
    });
    Poly::from_terms(field, terms.collect::<Vec<_>>())
}

/// `f_i = (-1)^(i+1) det(φ without row i)` for an `n x (n-1)` matrix; fails
/// if the minors all vanish or share a nonconstant factor.
pub fn signed_maximal_minors<F: Field>(phi: &GradedMatrix<F>) -> Result<Vec<Poly<F>>> {
    let n = phi.nrows();
    if phi.ncols() + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "presentation matrix must be n x (n-1), got {}x{}",
            n,
            phi.ncols()
        )));
    }
    let f = phi.field();
    let minors: Vec<Poly<F>> = (0..n)
        .map(|i| {
            let rows: Vec<Vec<Poly<F>>> = (0..n)
                .filter(|&k| k != i)
                .map(|k| phi.row(k).to_vec())
                .collect();
            let d = determinant(f, &rows);
            if i % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
        .collect();
    let g = binary_form_gcd(f, &minors);
    if g.is_zero() {
        return Err(Error::ZeroMinors);
    }
    if g.leading().unwrap().0.total_degree() > 0 {
        return Err(Error::HeightLessThanTwo(Ring::R.format(&g)));
    }
    Ok(minors)
}

/// Minimal homogeneous generators of `ker M`, computed degree by degree.
///
/// A generator of degree `l` has `j`-th entry of degree `l - col_degrees[j]`.
/// The result has one column per generator, degrees nondecreasing; within
/// one degree the columns come from the reduced echelon form of the new
/// solutions taken with the pivot at the last nonzero coordinate.
pub fn graded_kernel<F: Field>(
    m: &GradedMatrix<F>,
    expected_rank: usize,
    degree_budget: i64,
) -> Result<GradedMatrix<F>> {
    let f = m.field().clone();
    let c = &m.col_degrees;
    let t = &m.row_twists;
    let mut gens: Vec<(i64, Vec<Poly<F>>)> = Vec::new();
    let start = c.iter().copied().min().unwrap_or(0);
    let mut l = start;
    while gens.len() < expected_rank {
        if l > degree_budget {
            return Err(Error::BudgetExhausted {
                found: gens.len(),
                expected: expected_rank,
                budget: degree_budget,
            });
        }
        // Unknown coordinates: entry j, monomial of degree l - c_j.
        let slots: Vec<Vec<Monomial>> = c.iter().map(|cj| x_monomials(l - cj)).collect();
        let offsets: Vec<usize> = slots
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.len();
                Some(o)
            })
            .collect();
        let nunk: usize = slots.iter().map(Vec::len).sum();
        if nunk == 0 {
            l += 1;
            continue;
        }
        let mut eq_rows = Vec::new();
        for i in 0..m.nrows() {
            let target = PieceBasis::new(x_monomials(l + t[i]));
            let mut block = vec![vec![f.zero(); nunk]; target.dim()];
            for (j, mons) in slots.iter().enumerate() {
                let e = m.get(i, j);
                for (k, mono) in mons.iter().enumerate() {
                    for (tm, tc) in e.terms() {
                        let pos = target.position(&tm.mul(mono)).expect("degree bookkeeping");
                        block[pos][offsets[j] + k] = f.add(&block[pos][offsets[j] + k], tc);
                    }
                }
            }
            eq_rows.extend(block);
        }
        let null = Matrix::new(&f, nunk, eq_rows).nullspace();
        let to_vec = |entries: &[Poly<F>]| -> Vec<F::Elem> {
            let mut v = vec![f.zero(); nunk];
            for (j, p) in entries.iter().enumerate() {
                let basis = PieceBasis::new(slots[j].clone());
                for (mono, coef) in p.terms() {
                    v[offsets[j] + basis.position(mono).expect("degree")] = coef.clone();
                }
            }
            v.reverse();
            v
        };
        let mut old = Echelon::new(&f, nunk);
        for (dg, g) in &gens {
            for u in x_monomials(l - dg) {
                let shifted: Vec<Poly<F>> = g.iter().map(|p| p.mul_monomial(&u)).collect();
                old.insert(&to_vec(&shifted));
            }
        }
        let fresh: Vec<Vec<F::Elem>> = null
            .iter()
            .map(|v| {
                let mut r = v.clone();
                r.reverse();
                old.reduce(&r)
            })
            .collect();
        let mut fm = Matrix::new(&f, nunk, fresh);
        fm.rref();
        for row in fm.rows.iter().rev() {
            let mut nat = row.clone();
            nat.reverse();
            let entries: Vec<Poly<F>> = slots
                .iter()
                .enumerate()
                .map(|(j, mons)| {
                    let terms = mons
                        .iter()
                        .enumerate()
                        .map(|(k, mono)| (*mono, nat[offsets[j] + k].clone()));
                    Poly::from_terms(&f, terms.collect::<Vec<_>>())
                })
                .collect();
            gens.push((l, entries));
        }
        l += 1;
    }
    if gens.len() > expected_rank {
        return Err(Error::Precondition(format!(
            "kernel has more than the expected {expected_rank} generators"
        )));
    }
    let total: i64 = gens.iter().map(|(d, _)| d).sum();
    if total != degree_budget {
        return Err(Error::DegreeSumMismatch {
            found: total,
            expected: degree_budget,
        });
    }
    let entries = (0..m.ncols())
        .map(|j| gens.iter().map(|(_, g)| g[j].clone()).collect())
        .collect();
    GradedMatrix::new(
        &f,
        entries,
        gens.iter().map(|(d, _)| *d).collect(),
        c.iter().map(|x| -x).collect(),
    )
}

/// The twists `σ1 ≥ ... ≥ σs ≥ 0` of the free hull at level `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaInvariants {
    pub sigma: Vec<i64>,
    pub r: usize,
    pub s: usize,
}

impl SigmaInvariants {
    pub fn new(sigma: Vec<i64>) -> Result<Self> {
        if sigma.windows(2).any(|w| w[0] < w[1]) || sigma.iter().any(|&x| x < 0) {
            return Err(Error::Invalid(format!(
                "sigma must be nonincreasing and nonnegative, got {sigma:?}"
            )));
        }
        let r = sigma.iter().filter(|&&x| x > 0).count();
        Ok(SigmaInvariants {
            s: sigma.len(),
            r,
            sigma,
        })
    }

    pub fn total(&self) -> i64 {
        self.sigma.iter().sum()
    }

    /// `⟨α, σ⟩`.
    pub fn weight(&self, alpha: &[u32]) -> i64 {
        alpha
            .iter()
            .zip(&self.sigma)
            .map(|(a, s)| *a as i64 * s)
            .sum()
    }
}

/// `ξ` for level `m`: the transpose of the minimal kernel of `φ_mᵀ`, rows
/// sorted by degree descending.
pub fn xi_matrix<F: Field>(
    phi: &GradedMatrix<F>,
    m: usize,
) -> Result<(GradedMatrix<F>, SigmaInvariants)> {
    let n = phi.nrows();
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!("need 1 <= m <= {}", n - 1)));
    }
    let cols: Vec<usize> = (0..m).collect();
    let phi_m_t = phi.select_cols(&cols).transpose();
    let budget: i64 = phi.col_degrees[..m].iter().sum();
    let k = graded_kernel(&phi_m_t, n - m, budget)?;
    let xi = k.transpose();
    let mut order: Vec<usize> = (0..xi.nrows()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(xi.row_twists[i]));
    let xi = xi.select_rows(&order);
    let sigma = SigmaInvariants::new(xi.row_twists.clone())?;
    debug_assert_eq!(sigma.total(), budget);
    Ok((xi, sigma))
}

pub fn sigma_invariants<F: Field>(phi: &GradedMatrix<F>, m: usize) -> Result<SigmaInvariants> {
    xi_matrix(phi, m).map(|(_, s)| s)
}

/// The 2 x (1 + Σσ) matrix Γ over `V = R[v_{i,j}]` and its 2x2 minors.
///
/// `v_{i,j}` (`1 ≤ i ≤ s`, `0 ≤ j ≤ σi`) is stored as the outer variable
/// with index `vars.iter().position(|&p| p == (i, j))`, in the ring
/// `Ring::S { n: vars.len() }`.
#[derive(Clone, Debug)]
pub struct ScrollMatrix<F: Field> {
    pub sigma: Vec<i64>,
    pub vars: Vec<(usize, usize)>,
    pub gamma: [Vec<Poly<F>>; 2],
    pub minors: Vec<Poly<F>>,
}

impl<F: Field> ScrollMatrix<F> {
    pub fn ring(&self) -> Ring {
        Ring::S { n: self.vars.len() }
    }

    pub fn var_index(&self, i: usize, j: usize) -> usize {
        2 + self.vars.iter().position(|&p| p == (i, j)).expect("scroll variable")
    }
}

pub fn scroll_matrix<F: Field>(field: &F, sigma: &SigmaInvariants) -> ScrollMatrix<F> {
    let mut vars = Vec::new();
    for (i, &s) in sigma.sigma.iter().enumerate() {
        for j in 0..=s as usize {
            vars.push((i + 1, j));
        }
    }
    let var = |i: usize, j: usize| -> Poly<F> {
        let k = vars.iter().position(|&p| p == (i, j)).unwrap();
        Poly::var(field, 2 + k)
    };
    let mut top = vec![Poly::var(field, 0)];
    let mut bottom = vec![Poly::var(field, 1)];
    for (i, &s) in sigma.sigma.iter().enumerate() {
        for j in 0..s as usize {
            top.push(var(i + 1, j));
            bottom.push(var(i + 1, j + 1));
        }
    }
    let mut minors = Vec::new();
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            minors.push(top[a].mul(&bottom[b]).sub(&top[b].mul(&bottom[a])));
        }
    }
    ScrollMatrix {
        sigma: sigma.sigma.clone(),
        vars,
        gamma: [top, bottom],
        minors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn minors_of_linear_matrix() {
        let f = f();
        let phi = GradedMatrix::parse(
            &f,
            &[vec!["x0", "0"], vec!["x1", "x0"], vec!["0", "x1"]],
            &[1, 1],
            &[0, 0, 0],
        )
        .unwrap();
        let m = signed_maximal_minors(&phi).unwrap();
        let r = Ring::R;
        assert_eq!(m[0], r.parse(&f, "x1^2").unwrap());
        assert_eq!(m[1], r.parse(&f, "-x0*x1").unwrap());
        assert_eq!(m[2], r.parse(&f, "x0^2").unwrap());
    }

    #[test]
    fn minors_reject_common_factor() {
        let f = f();
        let phi = GradedMatrix::parse(
            &f,
            &[vec!["x0", "0"], vec!["x1", "0"], vec!["0", "0"]],
            &[1, 1],
            &[0, 0, 0],
        )
        .unwrap();
        assert!(matches!(signed_maximal_minors(&phi), Err(Error::ZeroMinors)));
        let phi = GradedMatrix::parse(
            &f,
            &[vec!["x0", "0"], vec!["x1", "x0"], vec!["0", "x0"]],
            &[1, 1],
            &[0, 0, 0],
        )
        .unwrap();
        assert!(matches!(
            signed_maximal_minors(&phi),
            Err(Error::HeightLessThanTwo(_))
        ));
    }

    #[test]
    fn entry_degree_is_validated() {
        let f = f();
        let r = GradedMatrix::parse(&f, &[vec!["x0^2", "x1^7"], vec!["x0^2*x1^2", "0"]], &[2, 7], &[0, 0]);
        assert!(matches!(r, Err(Error::Degree(_))));
    }

    #[test]
    fn kernel_of_rational_normal_curve_row() {
        let f = f();
        let m = GradedMatrix::parse(&f, &[vec!["x0^2", "x0*x1", "x1^2"]], &[0, 0, 0], &[2]).unwrap();
        let k = graded_kernel(&m, 2, 2).unwrap();
        let xi = k.transpose();
        assert_eq!(
            xi.format(),
            vec![vec!["32002*x1", "x0", "0"], vec!["0", "32002*x1", "x0"]]
        );
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let f = f();
        let id = GradedMatrix::parse(&f, &[vec!["1", "0"], vec!["0", "1"]], &[0, 0], &[0, 0]).unwrap();
        let k = graded_kernel(&id, 0, 0).unwrap();
        assert_eq!((k.nrows(), k.ncols()), (2, 0));
    }

    #[test]
    fn scroll_matrix_counts() {
        let f = f();
        let g = scroll_matrix(&f, &SigmaInvariants::new(vec![1, 1]).unwrap());
        assert_eq!(g.gamma[0].len(), 3);
        assert_eq!(g.minors.len(), 3);
        let g = scroll_matrix(&f, &SigmaInvariants::new(vec![0, 0]).unwrap());
        assert!(g.minors.is_empty());
        let g = scroll_matrix(&f, &SigmaInvariants::new(vec![3, 0]).unwrap());
        let ring = g.ring();
        let mut lin = 0;
        let mut quad = 0;
        for mnr in &g.minors {
            match ring.bidegree(mnr).unwrap() {
                (1, 1) => lin += 1,
                (0, 2) => quad += 1,
                d => panic!("{d:?}"),
            }
        }
        assert_eq!((lin, quad), (3, 3));
    }
}
