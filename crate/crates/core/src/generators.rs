//! Generators of the defining ideal: the `h_α` recursion, Sylvester forms,
//! the plane-curve slices `𝒦_{i,*}` and the almost linearly presented case.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::combinat::{enumerate_a, enumerate_b, enumerate_omega, ExpVec};
use crate::error::{Error, Result};
use crate::gradedlin::{
    outer_monomials, piece_basis, solve_columns, solve_combination, x_monomials, Echelon,
    Matrix, PieceBasis,
};
use crate::ring::{Field, Monomial, Poly, Ring};
use crate::syzygy::{binary_form_gcd, scroll_matrix};
use crate::tower::{Presentation, TowerLevel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Recursion,
    Sylvester,
    Slice,
    Scroll,
    SymEquation,
}

/// What a record stands for in the scroll ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tag {
    /// `g_{m+1}·w^α`.
    Alpha { alpha: ExpVec },
    /// `g·x0^j x1^k w^α`, an element of `g·ℬ_c`.
    B { j: u32, k: u32, alpha: ExpVec },
    /// `g1·x0^j x1^k`.
    G1 { j: u32, k: u32 },
    /// `g2·x0^j x1^k` (slices past `d2`).
    G2 { j: u32, k: u32 },
    /// `g2·p_{ℓ,index}·w^α`.
    P { ell: i64, index: usize, alpha: ExpVec },
    /// `g2·m` for a scroll monomial `m` of T-degree one.
    G2Times { monomial: String },
    /// 2x2 minor of Γ on columns `a < b`.
    Minor { a: usize, b: usize },
    /// Symmetric-algebra equation `g_j`.
    Sym { j: usize },
}

/// A generator together with its expected image in the scroll ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord<F: Field> {
    pub tag: Tag,
    pub bidegree: (i64, i64),
    pub poly: Poly<F>,
    pub provenance: Provenance,
    pub image: Poly<F>,
}

impl<F: Field> GeneratorRecord<F> {
    /// `subst(poly) = image` under the level's `ξ`.
    pub fn certify(&self, level: &TowerLevel<F>) -> bool {
        level.subst(&self.poly) == self.image
    }

    pub fn t_degree(&self) -> i64 {
        self.bidegree.1
    }
}

fn w_power<F: Field>(f: &F, alpha: &[u32]) -> Poly<F> {
    let mut m = Monomial::ONE;
    for (i, &a) in alpha.iter().enumerate() {
        m.0[2 + i] = a as u16;
    }
    Poly::monomial(f, m)
}

fn x_power<F: Field>(f: &F, j: u32, k: u32) -> Poly<F> {
    Poly::monomial(f, Monomial::from_exps(&[j as u16, k as u16]))
}

/// One step of the recursion: writes `h = Σ a_j p^i_j` and returns `Σ a_j q^i_j`.
pub fn wmult_step<F: Field>(level: &TowerLevel<F>, h: &Poly<F>, i: usize) -> Result<Poly<F>> {
    let a = solve_combination(&level.s_ring(), h, &level.p[i]).ok_or_else(|| {
        Error::Unsolvable(format!("element not in (p^{}_j)", i + 1))
    })?;
    Ok(a.iter()
        .zip(&level.q[i])
        .fold(Poly::zero(level.field()), |acc, (a, q)| acc.add(&a.mul(q))))
}

/// Memoized `h_α` for one level.
pub struct Recursion<'a, F: Field> {
    level: &'a TowerLevel<F>,
    g_next: Poly<F>,
    memo: BTreeMap<ExpVec, Poly<F>>,
}

impl<'a, F: Field> Recursion<'a, F> {
    pub fn new(level: &'a TowerLevel<F>, g_next: Poly<F>) -> Self {
        Recursion {
            level,
            g_next,
            memo: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> &TowerLevel<F> {
        self.level
    }

    /// `h_α` with the smallest pivot at every step.
    pub fn h(&mut self, alpha: &[u32]) -> Result<Poly<F>> {
        if let Some(p) = self.memo.get(alpha) {
            return Ok(p.clone());
        }
        let p = match alpha.iter().position(|&a| a > 0) {
            None => self.g_next.clone(),
            Some(i) => self.h_with_pivot(alpha, i)?,
        };
        self.memo.insert(alpha.to_vec(), p.clone());
        Ok(p)
    }

    /// `h_α` computed from `h_{α-e_i}` (itself memoized) by one step with pivot `i`.
    pub fn h_with_pivot(&mut self, alpha: &[u32], i: usize) -> Result<Poly<F>> {
        if alpha.get(i).copied().unwrap_or(0) == 0 {
            return Err(Error::Precondition(format!("alpha_{} is zero", i + 1)));
        }
        let mut prev = alpha.to_vec();
        prev[i] -= 1;
        let h = self.h(&prev)?;
        wmult_step(self.level, &h, i)
    }
}

/// `h_α` for `α⁰ = 0`, `⟨α,σ⟩ ≤ d_{m+1} - d_m`, with certificates.
pub fn recursion_generators<F: Field>(
    level: &TowerLevel<F>,
    g_next: &Poly<F>,
) -> Result<Vec<GeneratorRecord<F>>> {
    let d_next = level
        .d_next()
        .ok_or_else(|| Error::Precondition("no g_{m+1} at the top of the tower".into()))?;
    let c = d_next - level.d_m() + 1;
    let f = level.field();
    let base = level.subst(g_next);
    let mut rec = Recursion::new(level, g_next.clone());
    let mut out = Vec::new();
    for alpha in enumerate_a(c, &level.sigma)? {
        let poly = rec.h(&alpha)?;
        let bidegree = (
            d_next - level.sigma.weight(&alpha),
            alpha.iter().map(|&a| a as i64).sum::<i64>() + 1,
        );
        out.push(GeneratorRecord {
            image: base.mul(&w_power(f, &alpha)),
            tag: Tag::Alpha { alpha },
            bidegree,
            poly,
            provenance: Provenance::Recursion,
        });
    }
    Ok(out)
}

/// `det [[f1, g1], [f2, g2]]` for the canonical writings `f = f1 p1 + f2 p2`,
/// `g = g1 p1 + g2 p2`.
pub fn sylvester_form<F: Field>(
    p1: &Poly<F>,
    p2: &Poly<F>,
    f: &Poly<F>,
    g: &Poly<F>,
) -> Result<Poly<F>> {
    let field = f.field();
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::NotRegularSequence);
    }
    let gcd = binary_form_gcd(field, &[p1.clone(), p2.clone()]);
    if gcd.terms().iter().any(|(m, _)| !m.is_one()) {
        return Err(Error::NotRegularSequence);
    }
    let width = f.support_width().max(g.support_width()).max(2);
    let ring = Ring::S { n: width - 2 };
    let gens = [p1.clone(), p2.clone()];
    let fw = solve_combination(&ring, f, &gens).ok_or(Error::NotInIdeal)?;
    let gw = solve_combination(&ring, g, &gens).ok_or(Error::NotInIdeal)?;
    Ok(fw[0].mul(&gw[1]).sub(&gw[0].mul(&fw[1])))
}

/// Lifts scroll-ring elements to `S` through `subst`, caching the images of
/// each piece `S_{i,j}`.
pub struct Lifter<'a, F: Field> {
    level: &'a TowerLevel<F>,
    images: Vec<Poly<F>>,
    cache: HashMap<(i64, i64), (PieceBasis, PieceBasis, Vec<Vec<F::Elem>>)>,
}

impl<'a, F: Field> Lifter<'a, F> {
    pub fn new(level: &'a TowerLevel<F>) -> Self {
        Lifter {
            level,
            images: level.images(),
            cache: HashMap::new(),
        }
    }

    /// Some `h ∈ S_{i,j}` with `subst(h) = target`.
    pub fn lift(&mut self, target: &Poly<F>, bideg: (i64, i64)) -> Result<Poly<F>> {
        let level = self.level;
        let images = &self.images;
        let (src, dst, cols) = self.cache.entry(bideg).or_insert_with(|| {
            let src = piece_basis(&level.s_ring(), bideg);
            let dst = piece_basis(&level.scroll_ring(), bideg);
            let cols = src
                .monomials
                .iter()
                .map(|m| {
                    let img = Poly::monomial(level.field(), *m).substitute(images);
                    dst.coords(&img).expect("image stays in its bidegree")
                })
                .collect();
            (src, dst, cols)
        });
        let b = dst
            .coords(target)
            .ok_or_else(|| Error::Unsolvable(format!("target not of bidegree {bideg:?}")))?;
        let x = solve_columns(level.field(), cols, &b)
            .ok_or_else(|| Error::Unsolvable(format!("no lift in bidegree {bideg:?}")))?;
        Ok(src.poly(level.field(), &x))
    }
}

/// Lifts `p_{ℓ,1..d1-ℓ-1}`: monomials of `F_ℓ = ℛ(F)_{ℓ,1}` completing a
/// basis modulo `E_ℓ`.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub by_ell: Vec<Vec<Monomial>>,
}

impl SliceBasis {
    pub fn get(&self, ell: i64) -> &[Monomial] {
        usize::try_from(ell)
            .ok()
            .and_then(|l| self.by_ell.get(l))
            .map_or(&[], Vec::as_slice)
    }
}

pub fn slice_basis<F: Field>(level: &TowerLevel<F>) -> SliceBasis {
    let f = level.field();
    let scroll = level.scroll_ring();
    let images = level.images();
    let mut by_ell = Vec::new();
    for ell in 0..=level.d_m() - 2 {
        let fl = piece_basis(&scroll, (ell, 1));
        let mut ech = Echelon::new(f, fl.dim());
        for m in piece_basis(&level.s_ring(), (ell, 1)).monomials {
            let img = Poly::monomial(f, m).substitute(&images);
            ech.insert(&fl.coords(&img).expect("E_l sits in F_l"));
        }
        let mut chosen = Vec::new();
        for m in &fl.monomials {
            if ech.insert(&fl.coords(&Poly::monomial(f, *m)).unwrap()) {
                chosen.push(*m);
            }
        }
        by_ell.push(chosen);
    }
    SliceBasis { by_ell }
}

fn t_count(alpha: &[u32]) -> i64 {
    alpha.iter().map(|&a| a as i64).sum()
}

/// A (not necessarily minimal) `U`-generating set of `𝒦_{i,*}` for `n = 3`.
pub fn slice_generators<F: Field>(input: &Presentation<F>, i: i64) -> Result<Vec<GeneratorRecord<F>>> {
    if input.n != 3 {
        return Err(Error::Precondition(format!("slices need n = 3, got n = {}", input.n)));
    }
    let level = input.level(1)?;
    let g = input.sym_equations();
    slice_generators_at(&level, &g[0], &g[1], i)
}

pub fn slice_generators_at<F: Field>(
    level: &TowerLevel<F>,
    g1: &Poly<F>,
    g2: &Poly<F>,
    i: i64,
) -> Result<Vec<GeneratorRecord<F>>> {
    let f = level.field();
    let d1 = level.d[0];
    let d2 = level.d[1];
    if i < d1 - 1 {
        return Err(Error::Precondition(format!("slice x-degree must be >= d1 - 1 = {}", d1 - 1)));
    }
    let c = d2 - i;
    let sg2 = level.subst(g2);
    let mut lifter = Lifter::new(level);
    let mut out = Vec::new();
    for mu in x_monomials(i - d1) {
        let (j, k) = (mu.exp(0) as u32, mu.exp(1) as u32);
        out.push(GeneratorRecord {
            tag: Tag::G1 { j, k },
            bidegree: (i, 1),
            poly: g1.mul_monomial(&mu),
            provenance: Provenance::SymEquation,
            image: Poly::zero(f),
        });
    }
    if c > 0 {
        let sb = slice_basis(level);
        for b in enumerate_b(c, &level.sigma)? {
            let image = sg2.mul(&x_power(f, b.j, b.k)).mul(&w_power(f, &b.alpha));
            let bidegree = (i, t_count(&b.alpha) + 1);
            out.push(GeneratorRecord {
                poly: lifter.lift(&image, bidegree)?,
                tag: Tag::B { j: b.j, k: b.k, alpha: b.alpha },
                bidegree,
                provenance: Provenance::Slice,
                image,
            });
        }
        for alpha in enumerate_omega(c, &level.sigma)? {
            let ell = level.sigma.weight(&alpha) - c;
            for (index, p) in sb.get(ell).iter().enumerate() {
                let image = sg2.mul(&Poly::monomial(f, *p)).mul(&w_power(f, &alpha));
                let bidegree = (i, t_count(&alpha) + 2);
                out.push(GeneratorRecord {
                    poly: lifter.lift(&image, bidegree)?,
                    tag: Tag::P { ell, index: index + 1, alpha: alpha.clone() },
                    bidegree,
                    provenance: Provenance::Slice,
                    image,
                });
            }
        }
    } else {
        for mu in x_monomials(-c) {
            let (j, k) = (mu.exp(0) as u32, mu.exp(1) as u32);
            out.push(GeneratorRecord {
                tag: Tag::G2 { j, k },
                bidegree: (i, 1),
                poly: g2.mul_monomial(&mu),
                provenance: Provenance::SymEquation,
                image: sg2.mul_monomial(&mu),
            });
        }
        let scroll = level.scroll_ring();
        for m in piece_basis(&scroll, (-c, 1)).monomials {
            let image = sg2.mul(&Poly::monomial(f, m));
            let bidegree = (i, 2);
            out.push(GeneratorRecord {
                poly: lifter.lift(&image, bidegree)?,
                tag: Tag::G2Times { monomial: crate::ring::parse::format_monomial(&scroll, &m) },
                bidegree,
                provenance: Provenance::Slice,
                image,
            });
        }
    }
    Ok(out)
}

/// Dimension of `U_t`-span of the given bihomogeneous elements in `S_{i,t}`,
/// all sharing the x-degree `i` (`n` = number of T-variables).
pub fn u_span_dim<F: Field>(field: &F, n: usize, polys: &[(Poly<F>, i64)], i: i64, t: i64) -> usize {
    u_span(field, n, polys, i, t).0.dim()
}

fn u_span<F: Field>(
    field: &F,
    n: usize,
    polys: &[(Poly<F>, i64)],
    i: i64,
    t: i64,
) -> (Echelon<F>, PieceBasis) {
    let basis = piece_basis(&Ring::S { n }, (i, t));
    let mut ech = Echelon::new(field, basis.dim());
    for (p, tp) in polys {
        if *tp > t || p.is_zero() {
            continue;
        }
        for m in outer_monomials(n, t - tp) {
            let v = basis.coords(&p.mul_monomial(&m)).expect("product in S_{i,t}");
            ech.insert(&v);
        }
    }
    (ech, basis)
}

/// Greedy minimalization over `U = k[T]`: from the highest T-degree down
/// (later records first within a degree), drop every record lying in the
/// `U`-span of the surviving others.
pub fn trim_slice<F: Field>(records: Vec<GeneratorRecord<F>>, n: usize) -> Vec<GeneratorRecord<F>> {
    let Some(first) = records.first() else {
        return records;
    };
    let f = first.poly.field().clone();
    let mut alive = vec![true; records.len()];
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| records[b].t_degree().cmp(&records[a].t_degree()).then(b.cmp(&a)));
    for &idx in &order {
        let r = &records[idx];
        if r.poly.is_zero() {
            alive[idx] = false;
            continue;
        }
        let others: Vec<(Poly<F>, i64)> = records
            .iter()
            .enumerate()
            .filter(|&(k, o)| k != idx && alive[k] && o.t_degree() <= r.t_degree())
            .map(|(_, o)| (o.poly.clone(), o.t_degree()))
            .collect();
        let (ech, basis) = u_span(&f, n, &others, r.bidegree.0, r.t_degree());
        if ech.contains(&basis.coords(&r.poly).expect("record in its bidegree")) {
            alive[idx] = false;
        }
    }
    records
        .into_iter()
        .zip(alive)
        .filter_map(|(r, a)| a.then_some(r))
        .collect()
}

/// `[T] = [v]·Ξ` with `v_{i,k} = x0^{σi-k} x1^k w_i`; returns `Ξ⁻¹`.
fn scroll_coordinates<F: Field>(level: &TowerLevel<F>, vars: &[(usize, usize)]) -> Result<Vec<Vec<F::Elem>>> {
    let f = level.field();
    let n = level.n;
    if vars.len() != n {
        return Err(Error::Precondition("E is not isomorphic to M at this level".into()));
    }
    let mut rows = Vec::new();
    for &(i, k) in vars {
        let s = level.sigma.sigma[i - 1] as u16;
        let mono = Monomial::from_exps(&[s - k as u16, k as u16]);
        rows.push((0..n).map(|j| level.xi.get(i - 1, j).coeff(&mono)).collect::<Vec<_>>());
    }
    let aug = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if c == r { f.one() } else { f.zero() }));
            v
        })
        .collect();
    let mut m = Matrix::new(f, 2 * n, aug);
    let piv = m.rref();
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::Certificate("scroll coordinates are not a basis".into()));
    }
    Ok(m.rows.iter().map(|r| r[n..].to_vec()).collect())
}

/// The full set of generators for `d1 = … = d_{n-2} = 1`: the scroll minors,
/// `g_{n-1}·𝒜_c` from the recursion and `g_{n-1}·ℬ_c`.
pub fn almost_linear_generators<F: Field>(input: &Presentation<F>) -> Result<Vec<GeneratorRecord<F>>> {
    let n = input.n;
    if input.col_degrees[..n - 2].iter().any(|&d| d != 1) {
        return Err(Error::Precondition("needs d1 = ... = d_{n-2} = 1".into()));
    }
    let level = input.level(n - 2)?;
    let f = &input.field;
    let g = input.sym_equations();
    let g_last = &g[n - 2];
    let mut out = Vec::new();

    let sm = scroll_matrix(f, &level.sigma);
    let inv = scroll_coordinates(&level, &sm.vars)?;
    let mut images = vec![Poly::var(f, 0), Poly::var(f, 1)];
    for k in 0..n {
        images.push((0..n).fold(Poly::zero(f), |acc, j| {
            acc.add(&Poly::var(f, 2 + j).scale(&inv[j][k]))
        }));
    }
    let cols = sm.gamma[0].len();
    let mut idx = 0;
    for a in 0..cols {
        for b in a + 1..cols {
            let poly = sm.minors[idx].substitute(&images);
            idx += 1;
            out.push(GeneratorRecord {
                tag: Tag::Minor { a, b },
                bidegree: input.ring().bidegree(&poly)?,
                poly,
                provenance: Provenance::Scroll,
                image: Poly::zero(f),
            });
        }
    }

    out.extend(recursion_generators(&level, g_last)?);

    let c = input.col_degrees[n - 2];
    let sg = level.subst(g_last);
    let mut rec = Recursion::new(&level, g_last.clone());
    for b in enumerate_b(c, &level.sigma)? {
        let i = b.alpha.iter().rposition(|&a| a > 0).expect("alpha in Omega is nonzero");
        let mut prev = b.alpha.clone();
        prev[i] -= 1;
        let h = rec.h(&prev)?.mul(&x_power(f, b.j, b.k));
        let poly = wmult_step(&level, &h, i)?;
        out.push(GeneratorRecord {
            image: sg.mul(&x_power(f, b.j, b.k)).mul(&w_power(f, &b.alpha)),
            bidegree: (0, t_count(&b.alpha) + 1),
            tag: Tag::B { j: b.j, k: b.k, alpha: b.alpha },
            poly,
            provenance: Provenance::Recursion,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::exalp_bookkeeping;
    use crate::ring::PrimeField;

    fn pres(rows: &[&[&str]], d: &[i64]) -> Presentation<PrimeField> {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        Presentation::from_rows(&PrimeField::default(), &rows, d).unwrap()
    }

    fn ex2n() -> Presentation<PrimeField> {
        pres(&[&["x0^2", "x1^3"], &["x0*x1", "0"], &["x1^2", "x0^3"]], &[2, 3])
    }

    #[test]
    fn ex2n_recursion() {
        let p = ex2n();
        let lv = p.level(1).unwrap();
        let g = p.sym_equations();
        let recs = recursion_generators(&lv, &g[1]).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].poly, g[1]);
        assert_eq!(recs[0].bidegree, (3, 1));
        let h10 = recs.iter().find(|r| r.tag == Tag::Alpha { alpha: vec![1, 0] }).unwrap();
        let want = p.ring().parse(&p.field, "-x1^2*T1^2 + x0^2*T2*T3 + x0*x1*T3^2").unwrap();
        assert_eq!(h10.poly, want);
        assert!(recs.iter().all(|r| r.certify(&lv)));
        assert!(recs.iter().all(|r| p.ring().bidegree(&r.poly).unwrap() == r.bidegree));
    }

    #[test]
    fn sylvester_matches_recursion() {
        let p = ex2n();
        let lv = p.level(1).unwrap();
        let g = p.sym_equations();
        let syl = sylvester_form(&lv.p[0][0], &lv.p[0][1], &g[0], &g[1]).unwrap();
        let h10 = Recursion::new(&lv, g[1].clone()).h(&[1, 0]).unwrap();
        let w1 = Poly::var(&p.field, 2);
        let img = lv.subst(&syl);
        let want = lv.subst(&h10);
        assert_eq!(lv.subst(&g[1]).mul(&w1), want);
        // Nonzero scalar multiple of h·w1 in R(E).
        let (m, c) = want.leading().unwrap();
        let scale = p.field.div(&img.coeff(m), c).unwrap();
        assert!(!p.field.is_zero(&scale));
        assert_eq!(img, want.scale(&scale));
        let one = Poly::one(&p.field);
        let x0 = Poly::var(&p.field, 0);
        let x1 = Poly::var(&p.field, 1);
        assert_eq!(sylvester_form(&x0, &x1, &x0, &x1).unwrap(), one);
        assert_eq!(sylvester_form(&x0, &x0, &x0, &x1), Err(Error::NotRegularSequence));
    }

    #[test]
    fn table1_instance_bidegrees() {
        // Dependent first column gives sigma = (3, 0).
        let p = pres(
            &[&["x0^3", "x1^16"], &["x1^3", "x0^16"], &["0", "x0^8*x1^8"]],
            &[3, 16],
        );
        let lv = p.level(1).unwrap();
        assert_eq!(lv.sigma.sigma, vec![3, 0]);
        let g = p.sym_equations();
        let recs = recursion_generators(&lv, &g[1]).unwrap();
        let degs: Vec<(i64, i64)> = recs.iter().map(|r| r.bidegree).collect();
        assert_eq!(degs, vec![(16, 1), (13, 2), (10, 3), (7, 4), (4, 5)]);
        assert!(recs.iter().all(|r| r.certify(&lv)));
    }

    #[test]
    fn slice_ex2n_trims_to_b() {
        let p = pres(&[&["x0^2", "x1^4"], &["x0*x1", "0"], &["x1^2", "x0^4"]], &[2, 4]);
        let lv = p.level(1).unwrap();
        let recs = slice_generators(&p, 1).unwrap();
        assert!(recs.iter().all(|r| r.certify(&lv)));
        let kept = trim_slice(recs, 3);
        assert_eq!(kept.len(), 4);
        assert!(kept.iter().all(|r| matches!(r.tag, Tag::B { .. })));
    }

    #[test]
    fn slice_basis_counts() {
        let p = pres(&[&["x0^4", "x1^7"], &["x0^2*x1^2", "0"], &["x1^4", "x0^7"]], &[4, 7]);
        let lv = p.level(1).unwrap();
        let sb = slice_basis(&lv);
        let counts: Vec<usize> = sb.by_ell.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![3, 2, 1]);
    }

    #[test]
    fn slice_past_d2() {
        let p = ex2n();
        let lv = p.level(1).unwrap();
        for i in [3, 4] {
            let recs = slice_generators(&p, i).unwrap();
            assert!(recs.iter().all(|r| r.certify(&lv)));
        }
        assert!(slice_generators(&p, 0).is_err());
    }

    #[test]
    fn almost_linear_counts() {
        // n = 4, d = (1, 1, 3).
        let p = pres(
            &[&["x0", "0", "x1^3"], &["x1", "x0", "0"], &["0", "x1", "x0^3"], &["0", "0", "x0*x1^2"]],
            &[1, 1, 3],
        );
        let recs = almost_linear_generators(&p).unwrap();
        let lv = p.level(2).unwrap();
        assert!(recs.iter().all(|r| r.certify(&lv)), "certificates");
        let minors: Vec<_> = recs.iter().filter(|r| r.provenance == Provenance::Scroll).collect();
        assert_eq!(minors.iter().filter(|r| r.bidegree == (1, 1)).count(), 2);
        assert_eq!(minors.iter().filter(|r| r.bidegree == (0, 2)).count(), 1);
        let c = 3;
        let b: Vec<_> = recs.iter().filter(|r| matches!(r.tag, Tag::B { .. })).collect();
        let expect: usize = exalp_bookkeeping(c, &lv.sigma)
            .unwrap()
            .iter()
            .map(|e| e.ell as usize + 1)
            .sum();
        assert_eq!(b.len(), expect);
        for e in exalp_bookkeeping(c, &lv.sigma).unwrap() {
            let t = t_count(&e.alpha) + 1;
            let k = b
                .iter()
                .filter(|r| matches!(&r.tag, Tag::B { alpha, .. } if *alpha == e.alpha))
                .count();
            assert_eq!(k, e.ell as usize + 1);
            assert!(b.iter().all(|r| r.bidegree.0 == 0));
            assert!(b.iter().any(|r| r.bidegree.1 == t));
        }
    }
}
