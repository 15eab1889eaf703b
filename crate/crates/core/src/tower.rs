//! The approximation tower: symmetric-algebra equations, the embedding `ξ`
//! of `E_m` into its free hull, its normalization, and the multiplication
//! data `ρ^i, p^i_j, q^i_j`.

use crate::error::{Error, Result};
use crate::gradedlin::{piece_basis, solve_combination, span_dim, x_monomials, Matrix};
use crate::ring::{substitution_images, Field, Monomial, Poly, Ring};
use crate::syzygy::{graded_kernel, signed_maximal_minors, xi_matrix, GradedMatrix, SigmaInvariants};

/// A validated Hilbert–Burch presentation `φ` (`n x (n-1)`).
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub field: F,
    pub n: usize,
    pub col_degrees: Vec<i64>,
    pub phi: GradedMatrix<F>,
    pub minors: Vec<Poly<F>>,
}

impl<F: Field> Presentation<F> {
    pub fn new(phi: GradedMatrix<F>) -> Result<Self> {
        let n = phi.nrows();
        if n < 3 {
            return Err(Error::Invalid(format!("need n >= 3, got {n}")));
        }
        if phi.ncols() + 1 != n {
            return Err(Error::DimensionMismatch(format!(
                "phi must have n-1 = {} columns, got {}",
                n - 1,
                phi.ncols()
            )));
        }
        if phi.row_twists.iter().any(|&t| t != 0) {
            return Err(Error::Invalid("presentation rows must be untwisted".into()));
        }
        let d = phi.col_degrees.clone();
        if d.iter().any(|&x| x < 1) {
            return Err(Error::Degree("column degrees must be >= 1".into()));
        }
        if d.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Degree("column degrees must be nondecreasing".into()));
        }
        for j in 0..phi.ncols() {
            if phi.column(j).iter().all(Poly::is_zero) {
                return Err(Error::Invalid(format!("column {} is zero", j + 1)));
            }
        }
        let minors = signed_maximal_minors(&phi)?;
        Ok(Presentation {
            field: phi.field().clone(),
            n,
            col_degrees: d,
            phi,
            minors,
        })
    }

    pub fn from_rows(field: &F, rows: &[Vec<String>], col_degrees: &[i64]) -> Result<Self> {
        let n = rows.len();
        let refs: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        let phi = GradedMatrix::parse(field, &refs, col_degrees, &vec![0; n])?;
        Self::new(phi)
    }

    pub fn ring(&self) -> Ring {
        Ring::S { n: self.n }
    }

    /// `[g1 .. g_{n-1}] = [T1 .. Tn]·φ`.
    pub fn sym_equations(&self) -> Vec<Poly<F>> {
        let t: Vec<Poly<F>> = (0..self.n).map(|k| Poly::var(&self.field, 2 + k)).collect();
        self.phi.left_mul(&t)
    }

    pub fn level(&self, m: usize) -> Result<TowerLevel<F>> {
        build_level(self, m)
    }
}

/// Constant change of `T`-coordinates `T' = T·χ` together with the row
/// operation `P` that brings `ξ` to `[[A, 0], [0, I]]`.
#[derive(Clone, Debug)]
pub struct Normalization<F: Field> {
    pub chi: Vec<Vec<F::Elem>>,
    pub chi_inv: Vec<Vec<F::Elem>>,
    /// `[w] = [w']·P`.
    pub row_op: Vec<Vec<Poly<F>>>,
    pub xi: GradedMatrix<F>,
}

/// All derived data for one level `m` of the tower.
#[derive(Clone, Debug)]
pub struct TowerLevel<F: Field> {
    pub m: usize,
    pub n: usize,
    pub d: Vec<i64>,
    pub xi: GradedMatrix<F>,
    pub sigma: SigmaInvariants,
    pub normalization: Normalization<F>,
    pub rho: Vec<GradedMatrix<F>>,
    pub p: Vec<Vec<Poly<F>>>,
    pub q: Vec<Vec<Poly<F>>>,
}

fn identity<F: Field>(f: &F, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

fn invert<F: Field>(f: &F, a: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = a.len();
    let rows = a
        .iter()
        .zip(identity(f, n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let mut m = Matrix::new(f, 2 * n, rows);
    let piv = m.rref();
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(m.rows.iter().map(|r| r[n..].to_vec()).collect())
}

fn normalize<F: Field>(
    xi: &GradedMatrix<F>,
    sigma: &SigmaInvariants,
) -> Result<Normalization<F>> {
    let f = xi.field().clone();
    let n = xi.ncols();
    let (s, r) = (sigma.s, sigma.r);
    if r == s {
        let row_op = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| if i == j { Poly::one(&f) } else { Poly::zero(&f) })
                    .collect()
            })
            .collect();
        return Ok(Normalization {
            chi: identity(&f, n),
            chi_inv: identity(&f, n),
            row_op,
            xi: xi.clone(),
        });
    }
    let k = s - r;
    let constant = |p: &Poly<F>| p.coeff(&Monomial::ONE);
    let c: Vec<Vec<F::Elem>> = (r..s)
        .map(|i| (0..n).map(|j| constant(xi.get(i, j))).collect())
        .collect();
    let mut ech = Matrix::new(&f, n, c.clone());
    let pivots = ech.rref();
    if pivots.len() < k {
        return Err(Error::NormalizationFailed {
            rank: pivots.len(),
            needed: k,
        });
    }
    let nonpiv: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    // Q puts the non-pivot columns first.
    let order: Vec<usize> = nonpiv.iter().chain(&pivots).copied().collect();
    let cp: Vec<Vec<F::Elem>> = c.iter().map(|row| pivots.iter().map(|&j| row[j].clone()).collect()).collect();
    let cp_inv = invert(&f, &cp).expect("pivot block is invertible");
    let nn = n - k;
    // Block matrix [[I, 0], [-Cp^{-1} Cn, Cp^{-1}]] in the permuted basis.
    let mut block = identity(&f, n);
    for a in 0..k {
        for b in 0..nn {
            let mut acc = f.zero();
            for (t, row) in c.iter().enumerate() {
                acc = f.add(&acc, &f.mul(&cp_inv[a][t], &row[nonpiv[b]]));
            }
            block[nn + a][b] = f.neg(&acc);
        }
        for b in 0..k {
            block[nn + a][nn + b] = cp_inv[a][b].clone();
        }
    }
    let mut chi = vec![vec![f.zero(); n]; n];
    for (pos, &orig) in order.iter().enumerate() {
        chi[orig] = block[pos].clone();
    }
    let chi_inv = invert(&f, &chi).expect("chi is invertible");
    // ξχ
    let xichi: Vec<Vec<Poly<F>>> = (0..s)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Poly::zero(&f), |acc, t| {
                        acc.add(&xi.get(i, t).scale(&chi[t][j]))
                    })
                })
                .collect()
        })
        .collect();
    let mut row_op: Vec<Vec<Poly<F>>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| if i == j { Poly::one(&f) } else { Poly::zero(&f) })
                .collect()
        })
        .collect();
    let mut out = xichi.clone();
    for i in 0..r {
        for a in 0..k {
            let b = xichi[i][nn + a].clone();
            if b.is_zero() {
                continue;
            }
            row_op[i][r + a] = b.neg();
            for j in 0..n {
                out[i][j] = out[i][j].sub(&b.mul(&xichi[r + a][j]));
            }
        }
    }
    for i in r..s {
        for j in 0..n {
            let want = if j == nn + (i - r) { Poly::one(&f) } else { Poly::zero(&f) };
            if out[i][j] != want {
                return Err(Error::NormalizationFailed { rank: k - 1, needed: k });
            }
        }
    }
    let xi_n = GradedMatrix::new(&f, out, xi.col_degrees.clone(), xi.row_twists.clone())?;
    Ok(Normalization {
        chi,
        chi_inv,
        row_op,
        xi: xi_n,
    })
}

impl<F: Field> Normalization<F> {
    fn linear_change(&self, f: &F, n: usize, mat: &[Vec<F::Elem>]) -> Vec<Poly<F>> {
        let mut images = vec![Poly::var(f, 0), Poly::var(f, 1)];
        for j in 0..n {
            let mut t = Poly::zero(f);
            for k in 0..n {
                t = t.add(&Poly::var(f, 2 + k).scale(&mat[k][j]));
            }
            images.push(t);
        }
        images
    }

    /// Rewrites `p(T)` in the coordinates `T' = T·χ`.
    pub fn to_normalized(&self, p: &Poly<F>) -> Poly<F> {
        let f = p.field();
        let n = self.chi.len();
        p.substitute(&self.linear_change(f, n, &self.chi_inv))
    }

    /// Inverse of [`Self::to_normalized`].
    pub fn from_normalized(&self, p: &Poly<F>) -> Poly<F> {
        let f = p.field();
        let n = self.chi.len();
        p.substitute(&self.linear_change(f, n, &self.chi))
    }

    /// Rewrites a scroll-ring element from `w` to `w'` where `[w] = [w']·P`.
    pub fn w_to_normalized(&self, p: &Poly<F>) -> Poly<F> {
        let f = p.field();
        let s = self.row_op.len();
        let mut images = vec![Poly::var(f, 0), Poly::var(f, 1)];
        for k in 0..s {
            let mut t = Poly::zero(f);
            for l in 0..s {
                t = t.add(&self.row_op[l][k].mul(&Poly::var(f, 2 + l)));
            }
            images.push(t);
        }
        p.substitute(&images)
    }
}

pub fn sym_equations<F: Field>(input: &Presentation<F>) -> Vec<Poly<F>> {
    input.sym_equations()
}

pub fn build_level<F: Field>(input: &Presentation<F>, m: usize) -> Result<TowerLevel<F>> {
    let (xi, sigma) = xi_matrix(&input.phi, m)?;
    let normalization = normalize(&xi, &sigma)?;
    let f = &input.field;
    let t: Vec<Poly<F>> = (0..input.n).map(|k| Poly::var(f, 2 + k)).collect();
    let mut rho = Vec::new();
    let mut p = Vec::new();
    let mut q = Vec::new();
    for i in 0..sigma.s {
        let budget = sigma.total() - sigma.sigma[i];
        let r = graded_kernel(&xi.delete_row(i), m + 1, budget)?;
        let xi_i = xi.select_rows(&[i]);
        p.push(xi_i.mul_entries(&r).remove(0));
        q.push(r.left_mul(&t));
        rho.push(r);
    }
    Ok(TowerLevel {
        m,
        n: input.n,
        d: input.col_degrees.clone(),
        xi,
        sigma,
        normalization,
        rho,
        p,
        q,
    })
}

impl<F: Field> TowerLevel<F> {
    pub fn field(&self) -> &F {
        self.xi.field()
    }

    pub fn scroll_ring(&self) -> Ring {
        Ring::scroll(&self.sigma.sigma)
    }

    pub fn s_ring(&self) -> Ring {
        Ring::S { n: self.n }
    }

    /// `d_m` (1-based `m`).
    pub fn d_m(&self) -> i64 {
        self.d[self.m - 1]
    }

    /// `d_{m+1}`, absent at the top of the tower.
    pub fn d_next(&self) -> Option<i64> {
        self.d.get(self.m).copied()
    }

    pub fn images(&self) -> Vec<Poly<F>> {
        substitution_images(&self.xi)
    }

    pub fn subst(&self, p: &Poly<F>) -> Poly<F> {
        p.substitute(&self.images())
    }

    /// Every monomial of degree `d_m - 1 + σ_i` lies in `(p^i_1, ..)`.
    pub fn wmult_surjective(&self, i: usize) -> bool {
        let deg = self.d_m() - 1 + self.sigma.sigma[i];
        let f = self.field();
        x_monomials(deg).into_iter().all(|mono| {
            solve_combination(&Ring::R, &Poly::monomial(f, mono), &self.p[i]).is_some()
        })
    }

    /// `ξ·φ_m = 0`.
    pub fn xi_kills_phi(&self, input: &Presentation<F>) -> bool {
        let cols: Vec<usize> = (0..self.m).collect();
        let prod = self.xi.mul_entries(&input.phi.select_cols(&cols));
        prod.iter().flatten().all(Poly::is_zero)
    }

    /// `subst(q^i_j) = p^i_j·w_i` for all `i, j`.
    pub fn wmult_identity_holds(&self) -> bool {
        let f = self.field();
        (0..self.sigma.s).all(|i| {
            let wi = Poly::var(f, 2 + i);
            self.p[i]
                .iter()
                .zip(&self.q[i])
                .all(|(p, q)| self.subst(q) == p.mul(&wi))
        })
    }

    /// `w'^α` is the image of a `T'`-monomial for every `α` with `α⁺ = 0`,
    /// checked for `|α| ≤ max_deg`.
    pub fn zero_part_in_image(&self, max_deg: u32) -> bool {
        let f = self.field();
        let (s, r) = (self.sigma.s, self.sigma.r);
        let k = s - r;
        let images = substitution_images(&self.normalization.xi);
        let nn = self.n - k;
        (0..=max_deg as i64).all(|deg| {
            crate::gradedlin::outer_monomials(k, deg).into_iter().all(|e| {
                let mut tmon = Monomial::ONE;
                let mut wmon = Monomial::ONE;
                for a in 0..k {
                    tmon.0[2 + nn + a] = e.0[2 + a];
                    wmon.0[2 + r + a] = e.0[2 + a];
                }
                Poly::monomial(f, tmon).substitute(&images) == Poly::monomial(f, wmon)
            })
        })
    }
}

/// Per-bidegree comparison of `ℛ(E)_{i,j}` with `ℛ(M)_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationRow {
    pub i: i64,
    pub j: i64,
    pub dim_e: usize,
    pub dim_m: usize,
}

impl TruncationRow {
    pub fn equal(&self) -> bool {
        self.dim_e == self.dim_m
    }
}

/// Dimension of `ℛ(E)_{i,j}` as the span of the images of `S_{i,j}`.
pub fn rees_e_dim<F: Field>(level: &TowerLevel<F>, i: i64, j: i64) -> usize {
    let images = level.images();
    let basis = piece_basis(&level.s_ring(), (i, j));
    let vecs: Vec<Poly<F>> = basis
        .monomials
        .iter()
        .map(|mono| Poly::monomial(level.field(), *mono).substitute(&images))
        .collect();
    span_dim(&vecs)
}

pub fn check_truncation_equality<F: Field>(
    level: &TowerLevel<F>,
    x_window: (i64, i64),
    t_max: i64,
) -> Result<Vec<TruncationRow>> {
    if x_window.0 < level.d_m() - 1 {
        return Err(Error::Precondition(format!(
            "window must start at x-degree >= d_m - 1 = {}",
            level.d_m() - 1
        )));
    }
    let scroll = level.scroll_ring();
    let mut out = Vec::new();
    for i in x_window.0..=x_window.1 {
        for j in 0..=t_max {
            out.push(TruncationRow {
                i,
                j,
                dim_e: rees_e_dim(level, i, j),
                dim_m: piece_basis(&scroll, (i, j)).dim(),
            });
        }
    }
    Ok(out)
}

/// Hilbert function of `F/E` read off the resolution
/// `0 → ⊕R(-d_k) → R^n → ⊕R(σ_k) → F/E → 0`.
#[derive(Clone, Debug)]
pub struct HilbertFE {
    sigma: Vec<i64>,
    n: usize,
    d: Vec<i64>,
}

fn dim_r(a: i64) -> i64 {
    (a + 1).max(0)
}

impl HilbertFE {
    pub fn eval(&self, i: i64) -> i64 {
        let free: i64 = self.sigma.iter().map(|s| dim_r(s + i)).sum();
        let rel: i64 = self.d.iter().map(|dk| dim_r(i - dk)).sum();
        free - self.n as i64 * dim_r(i) + rel
    }
}

pub fn hilbert_fe<F: Field>(level: &TowerLevel<F>) -> HilbertFE {
    let h = HilbertFE {
        sigma: level.sigma.sigma.clone(),
        n: level.n,
        d: level.d[..level.m].to_vec(),
    };
    if level.n == 3 && level.m == 1 {
        let d1 = level.d[0];
        for i in -1..=d1 - 1 {
            assert_eq!(h.eval(i), d1 - i - 1, "H_F/E({i})");
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    fn pres(rows: &[[&str; 2]], d: [i64; 2]) -> Presentation<PrimeField> {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        Presentation::from_rows(&PrimeField::default(), &rows, &d).unwrap()
    }

    fn ex2n() -> Presentation<PrimeField> {
        pres(&[["x0^2", "x1^3"], ["x0*x1", "0"], ["x1^2", "x0^3"]], [2, 3])
    }

    #[test]
    fn ex2n_level_matches_hand_computation() {
        let p = ex2n();
        let lv = p.level(1).unwrap();
        let f = &p.field;
        let r = Ring::R;
        let s = p.ring();
        assert_eq!(lv.sigma.sigma, vec![1, 1]);
        // r counts the strictly positive sigma_i, so r = 2 here, not 0.
        assert_eq!(lv.sigma.r, 2);
        let rp = |t: &str| r.parse(f, t).unwrap();
        let sp = |t: &str| s.parse(f, t).unwrap();
        assert_eq!(lv.p[0], vec![rp("-x1"), rp("x0^2")]);
        assert_eq!(lv.p[1], vec![rp("x0"), rp("-x1^2")]);
        assert_eq!(lv.q[0], vec![sp("T1"), sp("x0*T2 + x1*T3")]);
        assert_eq!(lv.q[1], vec![sp("T3"), sp("x0*T1 + x1*T2")]);
        assert!(lv.xi_kills_phi(&p));
        assert!(lv.wmult_identity_holds());
        assert!(lv.wmult_surjective(0) && lv.wmult_surjective(1));
    }

    #[test]
    fn sym_equations_of_final_example() {
        let p = pres(&[["x0^4", "x1^7"], ["x0^2*x1^2", "0"], ["x1^4", "x0^7"]], [4, 7]);
        let g = p.sym_equations();
        let s = p.ring();
        assert_eq!(g[0], s.parse(&p.field, "x0^4*T1 + x0^2*x1^2*T2 + x1^4*T3").unwrap());
        assert_eq!(g[1], s.parse(&p.field, "x1^7*T1 + x0^7*T3").unwrap());
    }

    #[test]
    fn dependent_column_gives_sigma_zero() {
        // First column (γ1, γ2, 0) with γ's of degree 2.
        let p = pres(&[["x0^2", "x1^5"], ["x1^2", "x0^5"], ["0", "x0^2*x1^3 + x1^5"]], [2, 5]);
        let lv = p.level(1).unwrap();
        assert_eq!(lv.sigma.sigma, vec![2, 0]);
        assert_eq!(lv.sigma.r, 1);
        let f = &p.field;
        let r = Ring::R;
        assert_eq!(lv.p[0], vec![r.parse(f, "-x1^2").unwrap(), r.parse(f, "x0^2").unwrap()]);
        assert_eq!(lv.q[0][0], p.ring().parse(f, "T1").unwrap());
        assert_eq!(lv.q[0][1], p.ring().parse(f, "T2").unwrap());
        assert!(lv.zero_part_in_image(3));
    }

    #[test]
    fn normalization_round_trips() {
        // Constant row of ξ with a nontrivial χ.
        let p = pres(&[["x0^2", "x1^5"], ["x1^2", "x0^5"], ["x1^2", "x0^2*x1^3 + x1^5"]], [2, 5]);
        let lv = p.level(1).unwrap();
        assert_eq!(lv.sigma.r, 1);
        let nz = &lv.normalization;
        let s = p.ring();
        let g = p.sym_equations()[1].clone();
        assert_eq!(nz.from_normalized(&nz.to_normalized(&g)), g);
        let lhs = nz.w_to_normalized(&lv.subst(&g));
        let rhs = nz.to_normalized(&g).substitute(&substitution_images(&nz.xi));
        assert_eq!(lhs, rhs);
        assert!(lv.zero_part_in_image(3));
        let t1 = s.parse(&p.field, "T1").unwrap();
        assert_eq!(nz.to_normalized(&nz.from_normalized(&t1)), t1);
    }

    #[test]
    fn top_level_has_single_sigma() {
        let p = ex2n();
        let lv = p.level(2).unwrap();
        assert_eq!(lv.sigma.sigma, vec![5]);
        assert_eq!(lv.rho.len(), 1);
    }

    #[test]
    fn truncation_window_precondition() {
        let p = ex2n();
        let lv = p.level(1).unwrap();
        assert!(matches!(check_truncation_equality(&lv, (0, 3), 3), Err(Error::Precondition(_))));
        let rows = check_truncation_equality(&lv, (1, 3), 3).unwrap();
        assert!(rows.iter().all(TruncationRow::equal));
    }

    #[test]
    fn hilbert_function_of_f_mod_e() {
        let p = pres(&[["x0^4", "x1^7"], ["x0^2*x1^2", "0"], ["x1^4", "x0^7"]], [4, 7]);
        let h = hilbert_fe(&p.level(1).unwrap());
        let vals: Vec<i64> = (-1..=3).map(|i| h.eval(i)).collect();
        assert_eq!(vals, vec![4, 3, 2, 1, 0]);
    }
}
