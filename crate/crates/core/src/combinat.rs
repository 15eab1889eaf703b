//! Exponent-vector combinatorics of the scroll ring: `Λ_c`, `Ω_c`, `𝒜_c`,
//! `ℬ_c`, and the closed-form bidegree tables at the top of the tower.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::syzygy::SigmaInvariants;

/// Exponent vector `α ∈ N^s` of a scroll monomial `w^α`.
pub type ExpVec = Vec<u32>;

pub fn alpha_plus(alpha: &[u32], r: usize) -> ExpVec {
    alpha.iter().enumerate().map(|(i, &a)| if i < r { a } else { 0 }).collect()
}

pub fn alpha_zero(alpha: &[u32], r: usize) -> ExpVec {
    alpha.iter().enumerate().map(|(i, &a)| if i < r { 0 } else { a }).collect()
}

/// Weight ascending, then lex descending.
fn sort_canonical(v: &mut [ExpVec], sigma: &SigmaInvariants) {
    v.sort_by(|a, b| sigma.weight(a).cmp(&sigma.weight(b)).then_with(|| b.cmp(a)));
}

/// All `α` supported on the first `r` coordinates with `⟨α,σ⟩ < bound`.
fn below_weight(sigma: &SigmaInvariants, bound: i64) -> Vec<ExpVec> {
    fn rec(sig: &[i64], r: usize, pos: usize, cur: &mut ExpVec, left: i64, out: &mut Vec<ExpVec>) {
        if pos == r {
            out.push(cur.clone());
            return;
        }
        let mut a = 0;
        while a as i64 * sig[pos] < left {
            cur[pos] = a;
            rec(sig, r, pos + 1, cur, left - a as i64 * sig[pos], out);
            a += 1;
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if bound > 0 {
        rec(&sigma.sigma, sigma.r, 0, &mut vec![0; sigma.s], bound, &mut out);
    }
    out
}

/// `𝒜_c`: `α⁰ = 0` and `⟨α,σ⟩ < c`.
pub fn enumerate_a(c: i64, sigma: &SigmaInvariants) -> Result<Vec<ExpVec>> {
    if c < 0 {
        return Err(Error::Precondition(format!("A_c needs c >= 0, got {c}")));
    }
    let mut v = below_weight(sigma, c);
    sort_canonical(&mut v, sigma);
    Ok(v)
}

/// `Ω_c = ⋃_{i ≤ r} Ω_{c,i}`, the minimal elements of `Λ_c`.
pub fn enumerate_omega(c: i64, sigma: &SigmaInvariants) -> Result<Vec<ExpVec>> {
    if c <= 0 {
        return Err(Error::Precondition(format!("Omega_c needs c > 0, got {c}")));
    }
    let top = sigma.sigma.first().copied().unwrap_or(0);
    let mut v: Vec<ExpVec> = below_weight(sigma, c + top)
        .into_iter()
        .filter(|a| {
            let w = sigma.weight(a);
            match a.iter().rposition(|&x| x > 0) {
                Some(i) => c <= w && w < c + sigma.sigma[i],
                None => false,
            }
        })
        .collect();
    sort_canonical(&mut v, sigma);
    Ok(v)
}

/// One element `x0^j x1^k w^α` of `ℬ_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BElement {
    pub j: u32,
    pub k: u32,
    pub alpha: ExpVec,
}

/// `ℬ_c`: for each `α ∈ Ω_c`, all `(j, k)` with `j + k = ⟨α,σ⟩ - c`, `j` descending.
pub fn enumerate_b(c: i64, sigma: &SigmaInvariants) -> Result<Vec<BElement>> {
    let mut out = Vec::new();
    for alpha in enumerate_omega(c, sigma)? {
        let l = (sigma.weight(&alpha) - c) as u32;
        for j in (0..=l).rev() {
            out.push(BElement {
                j,
                k: l - j,
                alpha: alpha.clone(),
            });
        }
    }
    Ok(out)
}

/// `α ∈ Λ_c`.
pub fn in_lambda(alpha: &[u32], c: i64, sigma: &SigmaInvariants) -> bool {
    alpha_zero(alpha, sigma.r).iter().all(|&a| a == 0) && sigma.weight(alpha) >= c
}

/// `h' | h` in the scroll ring with a quotient of twisted x-degree `≥ 0`.
pub fn twisted_divides(hp: &BElement, h: &BElement, sigma: &SigmaInvariants) -> bool {
    if hp.j > h.j || hp.k > h.k || hp.alpha.iter().zip(&h.alpha).any(|(a, b)| a > b) {
        return false;
    }
    let dx = |e: &BElement| (e.j + e.k) as i64 - sigma.weight(&e.alpha);
    dx(h) - dx(hp) >= 0
}

/// One entry of the closed-form description of `ℬ_c` for `s = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExalpEntry {
    pub alpha: ExpVec,
    /// `j + k` for the attached `x0^j x1^k`.
    pub ell: u32,
}

/// `Ω_c` with its `ℓ` values from the ceiling formulas (`s = 2`):
/// `(k, 0)` with `k = ⌈c/σ1⌉`, `ℓ = kσ1 - c`, and when `σ2 > 0` the pairs
/// `(i, v(i))`, `v(i) = ⌈(c - iσ1)/σ2⌉ ≥ 1`, `ℓ(i) = iσ1 + v(i)σ2 - c`.
pub fn exalp_bookkeeping(c: i64, sigma: &SigmaInvariants) -> Result<Vec<ExalpEntry>> {
    if sigma.s != 2 || sigma.r == 0 {
        return Err(Error::Precondition("closed form needs s = 2 and sigma1 > 0".into()));
    }
    if c <= 0 {
        return Err(Error::Precondition(format!("needs c > 0, got {c}")));
    }
    let (s1, s2) = (sigma.sigma[0], sigma.sigma[1]);
    let k = Integer::div_ceil(&c, &s1);
    let mut out = vec![ExalpEntry {
        alpha: vec![k as u32, 0],
        ell: (k * s1 - c) as u32,
    }];
    if s2 > 0 {
        let top = Integer::div_ceil(&(c + s2), &s1);
        for i in 0..top {
            let v = Integer::div_ceil(&(c - i * s1), &s2);
            if v < 1 {
                continue;
            }
            out.push(ExalpEntry {
                alpha: vec![i as u32, v as u32],
                ell: (i * s1 + v * s2 - c) as u32,
            });
        }
    }
    Ok(out)
}

/// Counts of minimal generators by `(x-degree, T-degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BidegreeTable {
    pub counts: BTreeMap<(i64, i64), usize>,
}

impl BidegreeTable {
    pub fn add(&mut self, bideg: (i64, i64), k: usize) {
        if k > 0 {
            *self.counts.entry(bideg).or_default() += k;
        }
    }

    pub fn get(&self, bideg: (i64, i64)) -> usize {
        self.counts.get(&bideg).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// ASCII grid: rows are T-degrees `max_row..1`, columns x-degrees
    /// `0..=max_col`, with a bar after column `sep_after`.
    pub fn render(&self, max_row: i64, max_col: i64, sep_after: i64) -> String {
        let w = max_col.to_string().len().max(
            self.counts.values().map(|v| v.to_string().len()).max().unwrap_or(1),
        );
        let lw = max_row.to_string().len();
        let mut out = String::new();
        let line = |label: &str, cells: &dyn Fn(i64) -> String, out: &mut String| {
            let _ = write!(out, "{label:>lw$} |");
            for col in 0..=max_col {
                let _ = write!(out, " {:>w$}", cells(col));
                if col == sep_after {
                    out.push_str(" |");
                }
            }
            let trimmed = out.trim_end_matches(' ').len();
            out.truncate(trimmed);
            out.push('\n');
        };
        for row in (1..=max_row).rev() {
            line(
                &row.to_string(),
                &|col| match self.get((col, row)) {
                    0 => String::new(),
                    k => k.to_string(),
                },
                &mut out,
            );
        }
        let width = lw + 2 + (max_col as usize + 1) * (w + 1) + if sep_after >= 0 { 2 } else { 0 };
        let _ = writeln!(out, "{}", "-".repeat(width));
        line("", &|col| col.to_string(), &mut out);
        out
    }
}

/// Minimal generators of `𝒦` in x-degree `≥ d_{n-2}` from the closed
/// formulas for the three shapes of `(σ1, σ2)`.
pub fn bidegree_table(d: &[i64], sigma: &SigmaInvariants) -> Result<BidegreeTable> {
    if sigma.s != 2 {
        return Err(Error::Precondition(format!(
            "the closed-form table needs m = n-2 (s = 2), got s = {}",
            sigma.s
        )));
    }
    if d.len() < 2 {
        return Err(Error::Precondition("need at least two column degrees".into()));
    }
    let top = d[d.len() - 1];
    let low = d[d.len() - 2];
    let (s1, s2) = (sigma.sigma[0], sigma.sigma[1]);
    let gap = top - low;
    let mut t = BidegreeTable::default();
    t.add((low, 1), d[..d.len() - 1].iter().filter(|&&x| x == low).count());
    if s2 == 0 {
        let mut j = 0;
        while j * s1 <= gap {
            t.add((top - j * s1, j + 1), 1);
            j += 1;
        }
    } else if s1 > s2 {
        let mut j = 0;
        while j * s2 <= gap {
            let mut i = 0;
            while i <= j && i * (s1 - s2) <= gap - j * s2 {
                t.add((top - i * s1 - (j - i) * s2, j + 1), 1);
                i += 1;
            }
            j += 1;
        }
    } else {
        let mut j = 0;
        while j * s1 <= gap {
            t.add((top - j * s1, j + 1), (j + 1) as usize);
            j += 1;
        }
    }
    Ok(t)
}
