//! Exact and sampled verifiers for universal sets, universal tuples and bases.
//!
//! Exact sweeps enumerate k-subsets (or tuples) by rank in fixed-size chunks;
//! the parallel schedule only changes which chunks run concurrently, never the
//! returned witness, which is always the first failure in rank order.
//!
//! Translation dedup: when `X = G`, every k-set has a translate containing the
//! identity, so only those are enumerated. Tuples are normalised to `w_1 = e`.

use fixedbitset::{Block, FixedBitSet};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{product_set, Group, Subset};
use crate::par::{find_first_chunk, Exec};
use crate::rng::{child_seed, stream, SeededRng};
use crate::universal::UniversalTuple;

const CHUNK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exact,
    Sampled,
}

/// What the caller asks for. `Auto` is exact when the cost estimate fits
/// the budget and sampled otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Auto,
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Exact-feasibility budget in elementary steps (bitset words touched).
    pub budget: u64,
    /// Trial count for sampled verification.
    pub trials: u64,
    /// Memory allowed for precomputed translate rows, in bytes.
    pub row_memory: usize,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            budget: 100_000_000,
            trials: 100_000,
            row_memory: 256 << 20,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub mode: VerifyMode,
    pub pass: bool,
    /// First failing k-set or tuple, as element indices.
    pub witness: Option<Vec<usize>>,
    /// Number of k-sets or tuples examined.
    pub checked: u64,
    pub trials: Option<u64>,
    /// Probability that a sampled pass hides at least one failing instance,
    /// assuming exactly one instance fails.
    pub failure_bound: Option<f64>,
    pub seed: Option<u64>,
    /// For tuples: whether the difference characterization was also
    /// evaluated (it always agreed when present).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_checked: Option<bool>,
}

impl Verdict {
    fn exact(pass: bool, witness: Option<Vec<usize>>, checked: u64) -> Verdict {
        Verdict {
            mode: VerifyMode::Exact,
            pass,
            witness,
            checked,
            trials: None,
            failure_bound: None,
            seed: None,
            cross_checked: None,
        }
    }

    /// Passed under exact verification.
    pub fn is_certified(&self) -> bool {
        self.pass && self.mode == VerifyMode::Exact
    }
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

fn unrank_combination(mut rank: u64, m: usize, r: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut c = 0usize;
    for i in 0..r {
        loop {
            let cnt = binom((m - c - 1) as u64, (r - i - 1) as u64) as u64;
            if rank < cnt {
                break;
            }
            rank -= cnt;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
}

fn next_combination(comb: &mut [usize], m: usize) -> bool {
    let r = comb.len();
    for i in (0..r).rev() {
        if comb[i] < m - r + i {
            comb[i] += 1;
            for j in i + 1..r {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn words(n: usize) -> u64 {
    n.div_ceil(Block::BITS as usize) as u64
}

/// Bitset rows `R_w = {g in D : g w in U}` for each `w` of a row domain,
/// or a scan fallback when the rows would not fit in memory.
struct TranslateRows<'a> {
    group: &'a Group,
    targets: Vec<&'a Subset>,
    candidates: Option<&'a FixedBitSet>,
    rows: Option<Vec<FixedBitSet>>,
}

impl<'a> TranslateRows<'a> {
    /// `targets[j]` is the set the translate of the j-th row element must hit.
    fn build(
        group: &'a Group,
        elems: &[usize],
        targets: Vec<&'a Subset>,
        candidates: Option<&'a FixedBitSet>,
        opts: &VerifyOptions,
    ) -> Self {
        let n = group.order();
        let bytes = elems.len() as u128 * words(n) as u128 * 8;
        let rows = (bytes <= opts.row_memory as u128).then(|| {
            elems
                .iter()
                .zip(&targets)
                .map(|(&w, u)| {
                    let winv = group.inv(w);
                    let mut row = FixedBitSet::with_capacity(n);
                    for x in u.iter() {
                        row.insert(group.op(x, winv));
                    }
                    if let Some(c) = candidates {
                        row.intersect_with(c);
                    }
                    row
                })
                .collect()
        });
        TranslateRows { group, targets, candidates, rows }
    }

    fn has_rows(&self) -> bool {
        self.rows.is_some()
    }

    /// Whether some `g` satisfies `g * elems[p] in targets[p]` for all `p`.
    fn common(&self, positions: &[usize], elems: &[usize]) -> bool {
        match &self.rows {
            Some(rows) => {
                let first = rows[positions[0]].as_slice();
                (0..first.len()).any(|i| {
                    positions[1..]
                        .iter()
                        .fold(first[i], |acc, &p| acc & rows[p].as_slice()[i])
                        != 0
                })
            }
            None => (0..self.group.order()).any(|g| {
                self.candidates.is_none_or(|c| c.contains(g))
                    && positions
                        .iter()
                        .all(|&p| self.targets[p].contains(self.group.op(g, elems[p])))
            }),
        }
    }
}

fn failure_bound(instances: f64, trials: u64) -> f64 {
    if instances <= 1.0 {
        return 0.0;
    }
    (trials as f64 * (-1.0 / instances).ln_1p()).exp()
}

fn chunk_rng(seed: u64, chunk: u64) -> SeededRng {
    SeededRng::seed_from_u64(child_seed(seed, stream::VERIFY, chunk))
}

/// Checks that `U` contains a left translate of every k-subset of `X`.
/// Passing `X = G` checks plain k-universality.
pub fn verify_universal_for(
    u: &Subset,
    x: &Subset,
    k: usize,
    strategy: Strategy,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    if u.group() != x.group() {
        return Err(Error::GroupMismatch);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let group = u.group();
    let n = group.order();
    let xs = x.to_vec();
    if k > xs.len() || u.is_full() {
        return Ok(Verdict::exact(true, None, 0));
    }
    let whole = x.is_full();
    // With X = G, enumerate {e} plus a (k-1)-subset of G \ {e}.
    let (pool, fixed): (Vec<usize>, Option<usize>) = if whole {
        let e = group.identity();
        (xs.iter().copied().filter(|&g| g != e).collect(), Some(e))
    } else {
        (xs.clone(), None)
    };
    let r = if whole { k - 1 } else { k };
    let subsets = binom(pool.len() as u64, r as u64);

    let targets = vec![u; xs.len()];
    let rows = TranslateRows::build(group, &xs, targets, None, opts);
    let per = if rows.has_rows() { words(n) } else { n as u64 };
    let cost = subsets.saturating_mul((k as u128) * per as u128);

    let use_exact = match strategy {
        Strategy::Exact => {
            if cost > opts.budget as u128 {
                return Err(Error::ExactInfeasible { cost, budget: opts.budget });
            }
            true
        }
        Strategy::Auto => cost <= opts.budget as u128,
        Strategy::Sampled => false,
    };

    // Position of each group element inside xs (xs is sorted).
    let pos_of = |g: usize| xs.binary_search(&g).expect("element of X");
    let fixed_pos = fixed.map(pos_of);
    let pool_pos: Vec<usize> = pool.iter().map(|&g| pos_of(g)).collect();

    let witness_of = |positions: &[usize]| {
        let mut w: Vec<usize> = positions.iter().map(|&p| xs[p]).collect();
        w.sort_unstable();
        w
    };

    if use_exact {
        let total = subsets as u64;
        let failure = find_first_chunk(opts.exec, total, CHUNK, |range| {
            let mut comb = Vec::with_capacity(r);
            unrank_combination(range.start, pool.len(), r, &mut comb);
            let mut positions = Vec::with_capacity(k);
            for _ in range.clone() {
                positions.clear();
                positions.extend(fixed_pos);
                positions.extend(comb.iter().map(|&c| pool_pos[c]));
                if !rows.common(&positions, &xs) {
                    return Some(witness_of(&positions));
                }
                next_combination(&mut comb, pool.len());
            }
            None
        });
        return Ok(Verdict::exact(failure.is_none(), failure, total));
    }

    let trials = opts.trials.max(1);
    let failure = find_first_chunk(opts.exec, trials, CHUNK, |range| {
        let mut rng = chunk_rng(seed, range.start / CHUNK);
        for _ in range {
            let positions = index::sample(&mut rng, xs.len(), k).into_vec();
            if !rows.common(&positions, &xs) {
                return Some(witness_of(&positions));
            }
        }
        None
    });
    let instances = binom(xs.len() as u64, k as u64) as f64;
    Ok(Verdict {
        mode: VerifyMode::Sampled,
        pass: failure.is_none(),
        witness: failure,
        checked: trials,
        trials: Some(trials),
        failure_bound: Some(failure_bound(instances, trials)),
        seed: Some(seed),
        cross_checked: None,
    })
}

/// Plain k-universality: `verify_universal_for(U, G, ..)`.
pub fn verify_universal(
    u: &Subset,
    k: usize,
    strategy: Strategy,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    verify_universal_for(u, &Subset::full(u.group()), k, strategy, seed, opts)
}

/// Checks a universal tuple against its domain (the whole group unless the
/// tuple was embedded from a subgroup).
pub fn verify_tuple(
    t: &UniversalTuple,
    strategy: Strategy,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    verify_tuple_sets(&t.sets, Some(&t.domain), strategy, seed, opts)
}

/// Tuple check by the direct definition: for every `(w_1, .., w_k)` in `D^k`
/// some `g in D` has `g w_i in U_i`. When it is affordable the difference
/// characterization `{(u_1^-1 u_2, ..)} = D^(k-1)` is evaluated as well and
/// must agree.
pub fn verify_tuple_sets(
    sets: &[Subset],
    domain: Option<&Subset>,
    strategy: Strategy,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    let Some(first) = sets.first() else {
        return Err(Error::InvalidArgument("empty tuple".into()));
    };
    let group = first.group().clone();
    if sets.iter().any(|s| s.group() != &group) {
        return Err(Error::GroupMismatch);
    }
    let full = Subset::full(&group);
    let domain = domain.unwrap_or(&full);
    if domain.group() != &group {
        return Err(Error::GroupMismatch);
    }
    let k = sets.len();
    let n = group.order();
    let hs = domain.to_vec();
    let h = hs.len() as u64;
    let e = group.identity();
    if !domain.contains(e) {
        return Err(Error::InvalidArgument("tuple domain must contain the identity".into()));
    }

    // Row block i (for i >= 1) holds R_w = {g in D : g w in U_i}, w in D;
    // row 0 is U_1 restricted to D.
    let mut elems = vec![e];
    let mut targets: Vec<&Subset> = vec![&sets[0]];
    for s in &sets[1..] {
        elems.extend_from_slice(&hs);
        targets.extend(std::iter::repeat_n(s, hs.len()));
    }
    let rows = TranslateRows::build(&group, &elems, targets, Some(domain.bits()), opts);
    let per = if rows.has_rows() { words(n) } else { h };
    let tuples = (h as u128).saturating_pow((k - 1) as u32);
    let cost = tuples.saturating_mul(k as u128 * per as u128);

    let use_exact = match strategy {
        Strategy::Exact => {
            if cost > opts.budget as u128 {
                return Err(Error::ExactInfeasible { cost, budget: opts.budget });
            }
            true
        }
        Strategy::Auto => cost <= opts.budget as u128,
        Strategy::Sampled => false,
    };

    let witness_of = |digits: &[usize]| {
        let mut w = vec![e];
        w.extend(digits.iter().map(|&d| hs[d]));
        w
    };
    let check = |digits: &[usize], positions: &mut Vec<usize>| {
        positions.clear();
        positions.push(0);
        for (i, &d) in digits.iter().enumerate() {
            positions.push(1 + i * hs.len() + d);
        }
        rows.common(positions, &elems)
    };

    if use_exact {
        let total = tuples as u64;
        let failure = find_first_chunk(opts.exec, total, CHUNK, |range| {
            let mut digits = vec![0usize; k - 1];
            let mut rest = range.start;
            for d in digits.iter_mut().rev() {
                *d = (rest % h) as usize;
                rest /= h;
            }
            let mut positions = Vec::with_capacity(k);
            for _ in range.clone() {
                if !check(&digits, &mut positions) {
                    return Some(witness_of(&digits));
                }
                for d in digits.iter_mut().rev() {
                    *d += 1;
                    if (*d as u64) < h {
                        break;
                    }
                    *d = 0;
                }
            }
            None
        });
        let mut verdict = Verdict::exact(failure.is_none(), failure, total);
        if let Some(diff_pass) = difference_characterization(sets, domain, &hs, opts) {
            if diff_pass != verdict.pass {
                return Err(Error::VerificationFailed(
                    "direct and difference characterizations disagree".into(),
                ));
            }
            verdict.cross_checked = Some(true);
        } else {
            verdict.cross_checked = Some(false);
        }
        return Ok(verdict);
    }

    let trials = opts.trials.max(1);
    let failure = find_first_chunk(opts.exec, trials, CHUNK, |range| {
        let mut rng = chunk_rng(seed, range.start / CHUNK);
        let mut digits = vec![0usize; k - 1];
        let mut positions = Vec::with_capacity(k);
        for _ in range {
            for d in digits.iter_mut() {
                *d = rng.gen_range(0..hs.len());
            }
            if !check(&digits, &mut positions) {
                return Some(witness_of(&digits));
            }
        }
        None
    });
    Ok(Verdict {
        mode: VerifyMode::Sampled,
        pass: failure.is_none(),
        witness: failure,
        checked: trials,
        trials: Some(trials),
        failure_bound: Some(failure_bound(tuples as f64, trials)),
        seed: Some(seed),
        cross_checked: None,
    })
}

/// `Some(pass)` when `{(u_1^-1 u_2, .., u_{k-1}^-1 u_k) : u_i in U_i cap D}`
/// could be enumerated within budget.
fn difference_characterization(
    sets: &[Subset],
    domain: &Subset,
    hs: &[usize],
    opts: &VerifyOptions,
) -> Option<bool> {
    let group = domain.group();
    let k = sets.len();
    let lists: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| s.iter().filter(|&x| domain.contains(x)).collect())
        .collect();
    let work = lists
        .iter()
        .fold(1u128, |acc, l| acc.saturating_mul(l.len().max(1) as u128));
    let h = hs.len() as u128;
    let cells = h.checked_pow((k - 1) as u32)?;
    if work > opts.budget as u128 || cells > (1u128 << 32) {
        return None;
    }
    if lists.iter().any(|l| l.is_empty()) {
        return Some(false);
    }
    let mut pos = vec![usize::MAX; group.order()];
    for (i, &x) in hs.iter().enumerate() {
        pos[x] = i;
    }
    let mut seen = FixedBitSet::with_capacity(cells as usize);
    fn walk(
        i: usize,
        prev_inv: usize,
        code: usize,
        lists: &[Vec<usize>],
        group: &Group,
        pos: &[usize],
        h: usize,
        seen: &mut FixedBitSet,
    ) {
        if i == lists.len() {
            seen.insert(code);
            return;
        }
        for &u in &lists[i] {
            let d = group.op(prev_inv, u);
            walk(i + 1, group.inv(u), code * h + pos[d], lists, group, pos, h, seen);
        }
    }
    for &u in &lists[0] {
        walk(1, group.inv(u), 0, &lists, group, &pos, hs.len(), &mut seen);
    }
    Some(seen.is_full())
}

/// Exact check of `A ⊆ BB`; the witness is the smallest uncovered `a`.
pub fn verify_basis(b: &Subset, a: &Subset) -> Result<Verdict> {
    let bb = product_set(b, b)?;
    let missing = a.iter().find(|&x| !bb.contains(x));
    Ok(Verdict::exact(missing.is_none(), missing.map(|x| vec![x]), a.len() as u64))
}

/// Checks that the integer set `Y` contains an integer translate of every
/// k-subset of `{1, .., r}`. Exact only.
pub fn verify_interval_universal(
    y: &[u64],
    r: u64,
    k: usize,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if (k as u64) > r {
        return Ok(Verdict::exact(true, None, 0));
    }
    let mut ys = y.to_vec();
    ys.sort_unstable();
    ys.dedup();
    let set: std::collections::HashSet<u64> = ys.iter().copied().collect();
    // Normalise min W = 1: W = {1} ∪ S with S a (k-1)-subset of 2..=r.
    let m = (r - 1) as usize;
    let subsets = binom(m as u64, (k - 1) as u64);
    let cost = subsets.saturating_mul((ys.len() * k) as u128);
    if cost > opts.budget as u128 {
        return Err(Error::ExactInfeasible { cost, budget: opts.budget });
    }
    let total = subsets as u64;
    let failure = find_first_chunk(opts.exec, total, CHUNK, |range| {
        let mut comb = Vec::with_capacity(k - 1);
        unrank_combination(range.start, m, k - 1, &mut comb);
        for _ in range.clone() {
            let ok = ys.iter().any(|&top| {
                // translate taking 1 to `top`
                let c = top - 1;
                comb.iter().all(|&s| set.contains(&(s as u64 + 2 + c)))
            });
            if !ok {
                let mut w = vec![1u64];
                w.extend(comb.iter().map(|&s| s as u64 + 2));
                return Some(w.into_iter().map(|x| x as usize).collect());
            }
            next_combination(&mut comb, m);
        }
        None
    });
    Ok(Verdict::exact(failure.is_none(), failure, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact() -> (Strategy, VerifyOptions) {
        (Strategy::Exact, VerifyOptions::default())
    }

    #[test]
    fn combination_ranking() {
        let mut all = Vec::new();
        let mut c = vec![0, 1, 2];
        loop {
            all.push(c.clone());
            if !next_combination(&mut c, 6) {
                break;
            }
        }
        assert_eq!(all.len() as u128, binom(6, 3));
        let mut out = Vec::new();
        for (rank, comb) in all.iter().enumerate() {
            unrank_combination(rank as u64, 6, 3, &mut out);
            assert_eq!(&out, comb);
        }
    }

    #[test]
    fn full_set_is_universal() {
        let g = Group::cyclic(9).unwrap();
        let (s, o) = exact();
        let v = verify_universal(&Subset::full(&g), 4, s, 0, &o).unwrap();
        assert!(v.is_certified());
    }

    #[test]
    fn singer_set_mod_7() {
        let g = Group::cyclic(7).unwrap();
        let u = Subset::from_indices(&g, [1, 2, 4]).unwrap();
        let (s, o) = exact();
        assert!(verify_universal(&u, 2, s, 0, &o).unwrap().pass);
    }

    #[test]
    fn failing_pair_mod_7() {
        let g = Group::cyclic(7).unwrap();
        let u = Subset::from_indices(&g, [0, 1]).unwrap();
        let (s, o) = exact();
        let x = Subset::from_indices(&g, [0, 3]).unwrap();
        let v = verify_universal_for(&u, &x, 2, s, 0, &o).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness, Some(vec![0, 3]));
        // Over the whole group the first failure in rank order is {0, 2}.
        let v = verify_universal(&u, 2, s, 0, &o).unwrap();
        assert_eq!(v.witness, Some(vec![0, 2]));
        // The witness re-fails when rechecked on its own.
        let w = Subset::from_indices(&g, v.witness.unwrap()).unwrap();
        assert!(!verify_universal_for(&u, &w, 2, s, 0, &o).unwrap().pass);
    }

    #[test]
    fn infeasible_exact_is_an_error() {
        let g = Group::cyclic(1000).unwrap();
        let u = Subset::from_indices(&g, 0..500).unwrap();
        let o = VerifyOptions { budget: 10, ..Default::default() };
        assert!(matches!(
            verify_universal(&u, 3, Strategy::Exact, 0, &o),
            Err(Error::ExactInfeasible { .. })
        ));
        let v = verify_universal(&u, 3, Strategy::Auto, 5, &o).unwrap();
        assert_eq!(v.mode, VerifyMode::Sampled);
        assert_eq!(v.seed, Some(5));
    }

    #[test]
    fn tuple_examples() {
        let g = Group::cyclic(4).unwrap();
        let full = Subset::full(&g);
        let (s, o) = exact();
        let v = verify_tuple_sets(&[full.clone(), full], None, s, 0, &o).unwrap();
        assert!(v.pass);
        assert_eq!(v.cross_checked, Some(true));

        let z = Subset::singleton(&g, 0).unwrap();
        let v = verify_tuple_sets(&[z.clone(), z], None, s, 0, &o).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness, Some(vec![0, 1]));
        assert_eq!(v.cross_checked, Some(true));

        let y1 = Subset::from_indices(&g, [0, 2]).unwrap();
        let y2 = Subset::from_indices(&g, [0, 1]).unwrap();
        let v = verify_tuple_sets(&[y1, y2], None, s, 0, &o).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn tuple_in_subgroup_domain() {
        let g = Group::cyclic(6).unwrap();
        let h = Subset::from_indices(&g, [0, 2, 4]).unwrap();
        let (s, o) = exact();
        // ({0}, H) is universal inside H but not inside G.
        let e = Subset::singleton(&g, 0).unwrap();
        let v = verify_tuple_sets(&[e.clone(), h.clone()], Some(&h), s, 0, &o).unwrap();
        assert!(v.pass);
        let v = verify_tuple_sets(&[e, h], None, s, 0, &o).unwrap();
        assert!(!v.pass);
    }

    #[test]
    fn basis_examples() {
        let g = Group::cyclic(10).unwrap();
        let a = Subset::singleton(&g, 5).unwrap();
        let b = Subset::from_indices(&g, [2, 3]).unwrap();
        assert!(verify_basis(&b, &a).unwrap().pass);
        assert!(verify_basis(&Subset::full(&g), &a).unwrap().pass);
        let v = verify_basis(
            &Subset::singleton(&g, 0).unwrap(),
            &Subset::singleton(&g, 1).unwrap(),
        )
        .unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness, Some(vec![1]));
    }

    #[test]
    fn interval_check() {
        let o = VerifyOptions::default();
        // {1,2,4} ∪ {8,9,11}: X = {1,2,4} in Z/7 lifted.
        let v = verify_interval_universal(&[1, 2, 4, 8, 9, 11], 7, 2, &o).unwrap();
        assert!(v.pass);
        let v = verify_interval_universal(&[1, 2, 4], 7, 2, &o).unwrap();
        assert!(!v.pass);
    }

    #[test]
    fn sampled_is_seed_determined() {
        let g = Group::cyclic(101).unwrap();
        let u = Subset::from_indices(&g, (0..101).filter(|x| x % 3 != 0)).unwrap();
        let o = VerifyOptions { trials: 5000, ..Default::default() };
        for exec in [Exec::Sequential, Exec::Parallel] {
            let o = VerifyOptions { exec, ..o };
            let a = verify_universal(&u, 3, Strategy::Sampled, 9, &o).unwrap();
            let b = verify_universal(&u, 3, Strategy::Sampled, 9, &o).unwrap();
            assert_eq!(a, b);
        }
    }
}
