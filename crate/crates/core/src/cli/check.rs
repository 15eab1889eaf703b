//! Composite self-check of one instance.

use serde::Serialize;

use crate::error::Result;
use crate::generators::{recursion_generators, slice_generators_at, GeneratorRecord};
use crate::oracle::{buchberger, saturate_m};
use crate::ring::Field;
use crate::tower::{hilbert_fe, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            ok,
            detail: detail.into(),
        }
    }
}

/// Every recursion record for `m = 1..=n-2`, with its level index.
pub fn all_recursion_records<F: Field>(p: &Presentation<F>) -> Result<Vec<(usize, GeneratorRecord<F>)>> {
    let g = p.sym_equations();
    let mut out = Vec::new();
    for m in 1..=p.n - 2 {
        let level = p.level(m)?;
        for r in recursion_generators(&level, &g[m])? {
            out.push((m, r));
        }
    }
    Ok(out)
}

/// Runs the structural checks, the substitution certificates and, when
/// `oracle` is set, the Gröbner normal forms against `(g)^sat`.
pub fn check_instance<F: Field>(p: &Presentation<F>, oracle: bool) -> Result<Vec<CheckLine>> {
    let n = p.n;
    let mut out = Vec::new();
    for m in 1..n {
        let level = p.level(m)?;
        let sum: i64 = p.col_degrees[..m].iter().sum();
        let ok = level.sigma.total() == sum && level.sigma.s == n - m;
        out.push(CheckLine::new(
            format!("sigma m={m}"),
            ok,
            format!("sigma={:?} r={} s={}", level.sigma.sigma, level.sigma.r, level.sigma.s),
        ));
        out.push(CheckLine::new(format!("xi*phi_m=0 m={m}"), level.xi_kills_phi(p), ""));
        if m + 1 < n {
            let surj: Vec<bool> = (0..level.sigma.s).map(|i| level.wmult_surjective(i)).collect();
            out.push(CheckLine::new(
                format!("wmult m={m}"),
                surj.iter().all(|&b| b) && level.wmult_identity_holds(),
                format!("surjective per i: {surj:?}"),
            ));
        }
    }
    if n == 3 {
        let level = p.level(1)?;
        let h = hilbert_fe(&level);
        let d1 = p.col_degrees[0];
        let ok = (-1..d1).all(|i| h.eval(i) == d1 - i - 1);
        out.push(CheckLine::new("H_F/E", ok, format!("d1={d1}")));
    }

    let recs = all_recursion_records(p)?;
    let mut bad = Vec::new();
    for (m, r) in &recs {
        let level = p.level(*m)?;
        let bideg_ok = p.ring().bidegree(&r.poly).ok() == Some(r.bidegree);
        if !r.certify(&level) || !bideg_ok {
            bad.push(format!("{:?}", r.tag));
        }
    }
    out.push(CheckLine::new(
        "certificates",
        bad.is_empty(),
        format!("{} records, failing: {bad:?}", recs.len()),
    ));

    if oracle {
        let g = p.sym_equations();
        let k = saturate_m(&buchberger(&p.field, n, &g))?;
        let mut polys: Vec<_> = recs.into_iter().map(|(_, r)| r.poly).collect();
        if n == 3 {
            let level = p.level(1)?;
            for i in p.col_degrees[0] - 1..=p.col_degrees[1] {
                polys.extend(slice_generators_at(&level, &g[0], &g[1], i)?.into_iter().map(|r| r.poly));
            }
        }
        let nonzero = polys.iter().filter(|q| !k.contains(q)).count();
        out.push(CheckLine::new(
            "oracle normal forms",
            nonzero == 0,
            format!("{} generators, {nonzero} outside the saturation", polys.len()),
        ));
    }
    Ok(out)
}
