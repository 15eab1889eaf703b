//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.

use super::term::{TPoly, Term};
use crate::ring::Field;

/// Full reduction of `p` by `basis` (leading terms need not be distinct).
pub fn reduce<F: Field>(f: &F, mut p: TPoly<F>, basis: &[TPoly<F>]) -> TPoly<F> {
    let mut pos = 0;
    while pos < p.terms.len() {
        let (t, c) = p.terms[pos].clone();
        match basis.iter().find(|g| g.lt().divides(&t)) {
            Some(g) => {
                let m = t.quo(g.lt());
                let coef = f.div(&c, g.lc()).expect("nonzero leading coefficient");
                p.sub_mul_from(f, pos, &coef, &m, g);
            }
            None => pos += 1,
        }
    }
    p
}

fn top_reduce<F: Field>(f: &F, mut p: TPoly<F>, basis: &[&TPoly<F>]) -> TPoly<F> {
    while !p.is_zero() {
        let t = *p.lt();
        let Some(g) = basis.iter().find(|g| g.lt().divides(&t)) else {
            break;
        };
        let m = t.quo(g.lt());
        let coef = f.div(p.lc(), g.lc()).expect("nonzero leading coefficient");
        p.sub_mul_from(f, 0, &coef, &m, g);
    }
    p
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    a: usize,
    b: usize,
    lcm: Term,
}

fn spoly<F: Field>(f: &F, g: &TPoly<F>, h: &TPoly<F>, lcm: &Term) -> TPoly<F> {
    let mut s = g.mul_term(f, &lcm.quo(g.lt()), &f.div(&f.one(), g.lc()).unwrap());
    let c = f.div(&f.one(), h.lc()).unwrap();
    s.sub_mul_from(f, 0, &c, &lcm.quo(h.lt()), h);
    s
}

/// Reduced Gröbner basis, monic, sorted by leading term ascending.
pub fn groebner<F: Field>(f: &F, input: Vec<TPoly<F>>) -> Vec<TPoly<F>> {
    let mut store: Vec<TPoly<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut queue: Vec<TPoly<F>> = input
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic(f))
        .collect();
    queue.sort_by(|a, b| b.lt().cmp(a.lt()));

    let update = |h: TPoly<F>, store: &mut Vec<TPoly<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        let hi = store.len();
        let ht = *h.lt();
        let cand: Vec<(usize, Term)> = (0..hi)
            .filter(|&k| active[k])
            .map(|k| (k, store[k].lt().lcm(&ht)))
            .collect();
        // Chain criterion among the new pairs.
        let mut keep: Vec<(usize, Term)> = Vec::new();
        for (idx, &(k, l)) in cand.iter().enumerate() {
            let gt = store[k].lt();
            if gt.coprime(&ht) {
                keep.push((k, l));
                continue;
            }
            let dominated = cand.iter().enumerate().any(|(j, &(_, l2))| {
                j != idx && l2.divides(&l) && (l2 != l || j < idx)
            });
            if !dominated {
                keep.push((k, l));
            }
        }
        // Product criterion.
        let new_pairs: Vec<Pair> = keep
            .into_iter()
            .filter(|&(k, _)| !store[k].lt().coprime(&ht))
            .map(|(k, l)| Pair { a: k, b: hi, lcm: l })
            .collect();
        // Chain criterion for the old pairs.
        pairs.retain(|p| {
            !(ht.divides(&p.lcm)
                && store[p.a].lt().lcm(&ht) != p.lcm
                && store[p.b].lt().lcm(&ht) != p.lcm)
        });
        pairs.extend(new_pairs);
        for k in 0..hi {
            if active[k] && ht.divides(store[k].lt()) {
                active[k] = false;
            }
        }
        store.push(h);
        active.push(true);
    };

    while let Some(p) = queue.pop() {
        let basis: Vec<&TPoly<F>> = (0..store.len()).filter(|&k| active[k]).map(|k| &store[k]).collect();
        let h = top_reduce(f, p, &basis);
        if !h.is_zero() {
            update(h.monic(f), &mut store, &mut active, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.lcm.deg.cmp(&y.1.lcm.deg).then(x.1.lcm.cmp(&y.1.lcm)))
            .unwrap();
        let pr = pairs.swap_remove(best);
        let s = spoly(f, &store[pr.a], &store[pr.b], &pr.lcm);
        let basis: Vec<&TPoly<F>> = (0..store.len()).filter(|&k| active[k]).map(|k| &store[k]).collect();
        let h = top_reduce(f, s, &basis);
        if !h.is_zero() {
            update(h.monic(f), &mut store, &mut active, &mut pairs);
        }
    }

    let mut g: Vec<TPoly<F>> = store
        .into_iter()
        .zip(active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    g.sort_by(|a, b| a.lt().cmp(b.lt()));
    let mut out: Vec<TPoly<F>> = Vec::with_capacity(g.len());
    for k in 0..g.len() {
        let others: Vec<TPoly<F>> = g
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let head = TPoly {
            terms: vec![g[k].terms[0].clone()],
        };
        let tail = TPoly {
            terms: g[k].terms[1..].to_vec(),
        };
        let r = reduce(f, tail, &others);
        out.push(head.add(f, &r));
    }
    out
}

/// Every S-polynomial of `g` reduces to zero.
pub fn is_groebner<F: Field>(f: &F, g: &[TPoly<F>]) -> bool {
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            let l = g[a].lt().lcm(g[b].lt());
            if !reduce(f, spoly(f, &g[a], &g[b], &l), g).is_zero() {
                return false;
            }
        }
    }
    true
}
