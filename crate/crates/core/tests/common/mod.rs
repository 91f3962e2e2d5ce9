//! Naive reference implementations used as oracles. They use nothing but
//! the group multiplication and itertools.

#![allow(dead_code)]

use itertools::Itertools;
use unisets::{Group, Subset};

/// Some `g` with `gW ⊆ U` for every k-subset `W` of `X`; returns the first
/// k-subset (in lexicographic order) without one.
pub fn universal_for(g: &Group, u: &[usize], x: &[usize], k: usize) -> Result<(), Vec<usize>> {
    let in_u = membership(g, u);
    for w in x.iter().copied().combinations(k) {
        let ok = (0..g.order()).any(|h| w.iter().all(|&v| in_u[g.op(h, v)]));
        if !ok {
            return Err(w);
        }
    }
    Ok(())
}

/// Direct tuple definition over all of `D^k`.
pub fn tuple_universal(g: &Group, sets: &[Vec<usize>], domain: &[usize]) -> bool {
    let members: Vec<Vec<bool>> = sets.iter().map(|s| membership(g, s)).collect();
    let k = sets.len();
    (0..k).map(|_| domain.iter().copied()).multi_cartesian_product().all(|w| {
        domain
            .iter()
            .any(|&h| w.iter().zip(&members).all(|(&v, m)| m[g.op(h, v)]))
    })
}

/// Difference characterization: `{(u_1⁻¹u_2, .., u_{k-1}⁻¹u_k)} = G^(k-1)`.
pub fn tuple_by_differences(g: &Group, sets: &[Vec<usize>]) -> bool {
    let k = sets.len();
    if k == 1 {
        return !sets[0].is_empty();
    }
    let n = g.order();
    let mut seen = vec![false; n.pow((k - 1) as u32)];
    for us in sets.iter().map(|s| s.iter().copied()).multi_cartesian_product() {
        let code = us
            .windows(2)
            .fold(0, |acc, p| acc * n + g.op(g.inv(p[0]), p[1]));
        seen[code] = true;
    }
    seen.into_iter().all(|b| b)
}

pub fn basis_covers(g: &Group, b: &[usize], a: &[usize]) -> bool {
    a.iter()
        .all(|&t| b.iter().any(|&x| b.iter().any(|&y| g.op(x, y) == t)))
}

pub fn product(g: &Group, s: &[usize], t: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = s
        .iter()
        .flat_map(|&a| t.iter().map(move |&b| g.op(a, b)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn membership(g: &Group, s: &[usize]) -> Vec<bool> {
    let mut m = vec![false; g.order()];
    for &v in s {
        m[v] = true;
    }
    m
}

pub fn subset(g: &Group, items: &[usize]) -> Subset {
    Subset::from_indices(g, items.iter().copied()).unwrap()
}
