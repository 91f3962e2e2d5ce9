//! Constructions of k-universal sets and universal k-tuples.
//!
//! Every construction re-verifies its output with [`crate::verify`] before
//! returning it; the verdict travels with the result.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{self, FieldCtx};
use crate::group::{is_non_doubling, product_set, Group, GroupSpec, Subset};
use crate::rng::{child_seed, stream, SeededRng};
use crate::verify::{
    verify_tuple_sets, verify_universal_for, Strategy, Verdict, VerifyOptions,
};

const TOL: f64 = 1e-9;

/// Knobs shared by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstructOptions {
    pub verify: VerifyOptions,
    /// Resample cap for Las Vegas constructions.
    pub retry_cap: u32,
    pub field_limit: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            verify: VerifyOptions::default(),
            retry_cap: 64,
            field_limit: ff::DEFAULT_FIELD_LIMIT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Random,
    Singer,
    Cyclic,
    TupleUnion,
    Symmetric,
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    WholeGroup,
    ForSet(Subset),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeBound {
    pub value: f64,
    /// Whether the construction guarantees `|U| <= value` at this instance.
    pub guaranteed: bool,
}

/// Construction-specific metadata kept for audit.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Details {
    Random {
        /// Inclusion probability (capped at 1 in the degenerate case).
        probability: f64,
        carrier_product_size: usize,
        non_doubling: bool,
    },
    Cyclic {
        prime: u64,
        r: u64,
        singer_size: usize,
        prime_bound_holds: Option<bool>,
    },
    Tuple {
        targets: Vec<f64>,
        sizes: Vec<usize>,
        cost: f64,
    },
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniversalSetResult {
    pub set: Subset,
    pub k: usize,
    pub scope: Scope,
    pub method: Method,
    pub size_bound: SizeBound,
    /// `½|G|^(1-1/k)`, the counting lower bound for plain k-universality.
    pub lower_bound: f64,
    pub seed: Option<u64>,
    pub attempts: u32,
    /// The instance was below the regime of the randomized construction and
    /// the input set itself was returned.
    pub degenerate: bool,
    pub details: Details,
    pub verdict: Verdict,
}

impl UniversalSetResult {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn lower_bound_ratio(&self) -> f64 {
        self.set.len() as f64 / self.lower_bound
    }
}

pub fn lower_bound(order: usize, k: usize) -> f64 {
    0.5 * (order as f64).powf(1.0 - 1.0 / k as f64)
}

/// How a tuple was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum TupleConstruction {
    Binary { exponents: Vec<u32>, total_bits: u32 },
    Lift { index: usize, coset_reps: Vec<usize>, inner_cost: f64, cost: f64 },
    Cartesian { factor_targets: Vec<Vec<f64>> },
    Trivial,
    Embedded,
}

/// A k-tuple `(U_1, .., U_k)` universal within `domain` (a subgroup of
/// `group`, usually the whole group).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniversalTuple {
    pub group: Group,
    pub domain: Subset,
    pub sets: Vec<Subset>,
    pub targets: Vec<f64>,
    pub construction: TupleConstruction,
    pub verdict: Option<Verdict>,
}

/// Lower-bound and cost diagnostics of a tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleCertificate {
    /// `prod |U_i|` in decimal.
    pub size_product: String,
    /// `|D|^(k-1)` in decimal.
    pub required_product: String,
    pub product_bound_holds: bool,
    /// `sum |U_i| / s_i`.
    pub cost: f64,
    pub cost_at_least_k: bool,
}

impl UniversalTuple {
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Subset::len).collect()
    }

    /// `sum |U_i| / s_i`.
    pub fn cost(&self) -> f64 {
        self.sets
            .iter()
            .zip(&self.targets)
            .map(|(u, s)| u.len() as f64 / s)
            .sum()
    }

    pub fn is_verified(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| v.pass)
    }

    pub fn certificate(&self) -> TupleCertificate {
        let product = self
            .sets
            .iter()
            .fold(BigUint::from(1u32), |acc, u| acc * BigUint::from(u.len()));
        let required = BigUint::from(self.domain.len()).pow((self.k() - 1) as u32);
        let cost = self.cost();
        TupleCertificate {
            product_bound_holds: product >= required,
            size_product: product.to_string(),
            required_product: required.to_string(),
            cost,
            cost_at_least_k: cost >= self.k() as f64 - TOL,
        }
    }

    /// Runs the verifier and stores the verdict.
    pub fn verify(&mut self, strategy: Strategy, seed: u64, opts: &VerifyOptions) -> Result<&Verdict> {
        let v = verify_tuple_sets(&self.sets, Some(&self.domain), strategy, seed, opts)?;
        Ok(self.verdict.insert(v))
    }

    fn verify_or_fail(&mut self, what: &str, opts: &ConstructOptions) -> Result<()> {
        let v = self.verify(Strategy::Auto, 0, &opts.verify)?;
        if !v.pass {
            return Err(Error::VerificationFailed(format!(
                "{what} produced a non-universal tuple (witness {:?})",
                v.witness
            )));
        }
        Ok(())
    }
}

/// Validates `1 <= s_i <= order` and `prod s_i = order^(k-1)` (relative 1e-9).
pub fn check_targets(order: usize, targets: &[f64]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::BadTargets("empty target vector".into()));
    }
    let n = order as f64;
    for &s in targets {
        if !s.is_finite() || s < 1.0 - TOL || s > n * (1.0 + TOL) {
            return Err(Error::BadTargets(format!("target {s} outside [1, {order}]")));
        }
    }
    let k = targets.len() as f64;
    let log_ratio: f64 = targets.iter().map(|s| s.ln()).sum::<f64>() - (k - 1.0) * n.ln();
    if (log_ratio.exp() - 1.0).abs() > TOL {
        return Err(Error::BadTargets(format!(
            "product of targets differs from {order}^{} (log ratio {log_ratio:e})",
            targets.len() - 1
        )));
    }
    Ok(())
}

/// Uniform targets `s_i = order^(1-1/k)`.
pub fn uniform_targets(order: usize, k: usize) -> Vec<f64> {
    vec![(order as f64).powf(1.0 - 1.0 / k as f64); k]
}

// ---------------------------------------------------------------------------
// Randomized construction

/// Random subset of `Z = X*X` (default `X* = X`), each element kept with
/// probability `p = (|X| / (2k^3 ln|X|))^(-1/k)`. Resampled until it is both
/// at most `3p|Z|` in size and verified k-universal for `X`.
pub fn random_universal_for(
    x: &Subset,
    k: usize,
    seed: u64,
    carrier: Option<&Subset>,
    opts: &ConstructOptions,
) -> Result<UniversalSetResult> {
    let group = x.group();
    let m = x.len();
    if m <= 1 {
        return Err(Error::InvalidArgument("need |X| > 1".into()));
    }
    if k == 0 || k > m {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={m}")));
    }
    if let Some(c) = carrier {
        if c.group() != group {
            return Err(Error::GroupMismatch);
        }
        if c.len() != m {
            return Err(Error::InvalidArgument("carrier must have the size of X".into()));
        }
    }
    let scope = if x.is_full() { Scope::WholeGroup } else { Scope::ForSet(x.clone()) };
    let (non_doubling, xx) = is_non_doubling(x)?;
    let z = product_set(carrier.unwrap_or(x), x)?;
    let mf = m as f64;
    let kf = k as f64;
    let log_term = mf.ln().powf(1.0 / kf);
    let size_bound = match carrier {
        None if non_doubling => 36.0 * mf.powf(1.0 - 1.0 / kf) * log_term,
        _ => 12.0 * z.len() as f64 * log_term / mf.powf(1.0 / kf),
    };
    let _ = xx;
    let base = |set: Subset, p: f64, attempts: u32, degenerate: bool, verdict: Verdict| {
        UniversalSetResult {
            set,
            k,
            scope: scope.clone(),
            method: Method::Random,
            size_bound: SizeBound { value: size_bound, guaranteed: true },
            lower_bound: lower_bound(group.order(), k),
            seed: Some(seed),
            attempts,
            degenerate,
            details: Details::Random {
                probability: p.min(1.0),
                carrier_product_size: z.len(),
                non_doubling,
            },
            verdict,
        }
    };
    let vseed = |attempt: u32| child_seed(seed, stream::VERIFY, attempt as u64);

    if k == 1 {
        // Any single element is 1-universal.
        let u = Subset::singleton(group, group.identity())?;
        let v = verify_universal_for(&u, x, 1, Strategy::Auto, vseed(0), &opts.verify)?;
        return Ok(base(u, 0.0, 1, false, v));
    }
    let p = (mf / (2.0 * kf.powi(3) * mf.ln())).powf(-1.0 / kf);
    if p > 1.0 {
        let v = verify_universal_for(x, x, k, Strategy::Auto, vseed(0), &opts.verify)?;
        return Ok(base(x.clone(), p, 1, true, v));
    }
    let zs = z.to_vec();
    let size_cap = 3.0 * p * zs.len() as f64;
    for attempt in 0..opts.retry_cap {
        let mut rng = SeededRng::seed_from_u64(child_seed(seed, stream::UNIVERSAL, attempt as u64));
        let mut u = Subset::empty(group);
        for &g in &zs {
            if rng.gen_bool(p) {
                u.insert(g)?;
            }
        }
        if u.len() as f64 > size_cap {
            continue;
        }
        let v = verify_universal_for(&u, x, k, Strategy::Auto, vseed(attempt), &opts.verify)?;
        if v.pass {
            return Ok(base(u, p, attempt + 1, false, v));
        }
    }
    Err(Error::RetryBudgetExhausted { attempts: opts.retry_cap })
}

// ---------------------------------------------------------------------------
// Singer-type construction for cyclic groups

#[derive(Clone, Debug, Serialize)]
pub struct SingerResult {
    pub p: u64,
    pub k: usize,
    /// `(p^(k+1) - 1) / (p - 1)`.
    pub r: u64,
    /// Subset of `Z/rZ`: indices of the lines inside the fixed hyperplane.
    pub x: Subset,
    /// `X ∪ (X + r)` as integers in `1..=2r`, residue 0 read as `r`.
    pub y: Vec<u64>,
    pub field: FieldCtx,
    pub verdict: Verdict,
}

pub fn singer_universal(p: u64, k: usize, opts: &ConstructOptions) -> Result<SingerResult> {
    if k < 2 {
        return Err(Error::InvalidArgument("the Singer construction needs k >= 2".into()));
    }
    let m = u32::try_from(k + 1).map_err(|_| Error::InvalidArgument("k too large".into()))?;
    let field = FieldCtx::with_limit(p, m, opts.field_limit)?;
    let r = field.line_count();
    let zr = Group::cyclic(r)?;
    let mut x = Subset::empty(&zr);
    for v in ff::subspace_lines(&field)? {
        x.insert(field.line_index(v)? as usize)?;
    }
    let expected = (p.pow(k as u32) - 1) / (p - 1);
    if x.len() as u64 != expected {
        return Err(Error::VerificationFailed(format!(
            "hyperplane produced {} line indices, expected {expected}",
            x.len()
        )));
    }
    let mut y: Vec<u64> = x
        .iter()
        .map(|t| if t == 0 { r } else { t as u64 })
        .flat_map(|t| [t, t + r])
        .collect();
    y.sort_unstable();
    let full = Subset::full(&zr);
    let verdict = verify_universal_for(&x, &full, k, Strategy::Auto, 0, &opts.verify)?;
    if !verdict.pass {
        return Err(Error::VerificationFailed(format!(
            "Singer set for p = {p}, k = {k} failed verification"
        )));
    }
    Ok(SingerResult { p, k, r, x, y, field, verdict })
}

/// Smallest prime `p` with `p^k >= n`.
pub fn smallest_prime_root(n: u64, k: usize) -> u64 {
    let mut root = (n as f64).powf(1.0 / k as f64).floor() as u64;
    while root > 1 && (root - 1).checked_pow(k as u32).is_none_or(|v| v >= n) {
        root -= 1;
    }
    while root.checked_pow(k as u32).is_some_and(|v| v < n) {
        root += 1;
    }
    let mut p = ff::next_prime(root);
    while p.checked_pow(k as u32).is_some_and(|v| v < n) {
        p = ff::next_prime(p + 1);
    }
    p
}

/// k-universal set for `Z/nZ` from the Singer set of the smallest prime
/// `p >= n^(1/k)`, reduced mod `n`.
pub fn cyclic_universal(n: u64, k: usize, opts: &ConstructOptions) -> Result<UniversalSetResult> {
    if n < 2 || k < 2 {
        return Err(Error::InvalidArgument("need n >= 2 and k >= 2".into()));
    }
    let group = Group::cyclic(n)?;
    let nf = n as f64;
    let kf = k as f64;
    let in_regime = nf.ln() >= 2f64.powi(k as i32);
    let size_bound = SizeBound {
        value: 72.0 * nf.powf(1.0 - 1.0 / kf),
        guaranteed: in_regime,
    };
    if n <= k as u64 {
        let set = Subset::full(&group);
        let verdict = verify_universal_for(&set, &set, k, Strategy::Auto, 0, &opts.verify)?;
        return Ok(UniversalSetResult {
            set,
            k,
            scope: Scope::WholeGroup,
            method: Method::Cyclic,
            size_bound,
            lower_bound: lower_bound(n as usize, k),
            seed: None,
            attempts: 1,
            degenerate: true,
            details: Details::Trivial,
            verdict,
        });
    }
    let p = smallest_prime_root(n, k);
    let singer = singer_universal(p, k, opts)?;
    let set = Subset::from_indices(&group, singer.y.iter().map(|&v| (v % n) as usize))?;
    let verdict = verify_universal_for(&set, &Subset::full(&group), k, Strategy::Auto, 0, &opts.verify)?;
    if !verdict.pass {
        return Err(Error::VerificationFailed(format!(
            "reduced Singer set failed for n = {n}, k = {k}"
        )));
    }
    let prime_bound_holds =
        in_regime.then(|| (p as f64) <= nf.powf(1.0 / kf) * (1.0 + 2.0 * kf / nf.ln()));
    Ok(UniversalSetResult {
        set,
        k,
        scope: Scope::WholeGroup,
        method: Method::Cyclic,
        size_bound,
        lower_bound: lower_bound(n as usize, k),
        seed: None,
        attempts: 1,
        degenerate: false,
        details: Details::Cyclic {
            prime: p,
            r: singer.r,
            singer_size: singer.x.len(),
            prime_bound_holds,
        },
        verdict,
    })
}

// ---------------------------------------------------------------------------
// Universal tuples

/// Greedy exponents with `½t_i <= 2^(p_i) <= 2t_i` and the running-product
/// condition `prod_{i<=r} t_i <= 2^(sum p_i) <= 2 prod_{i<=r} t_i`.
pub fn binary_exponents(ts: &[f64]) -> Vec<u32> {
    let mut ratio = 1.0;
    ts.iter()
        .map(|&t| {
            let x = 2.0 * t * ratio;
            let mut a = 0u32;
            while 2f64.powi(a as i32) < 0.5 * x * (1.0 - 1e-12) {
                a += 1;
            }
            ratio *= t / 2f64.powi(a as i32);
            a
        })
        .collect()
}

/// Whether the running-product condition holds for every prefix.
pub fn prefix_condition_holds(ts: &[f64], exps: &[u32]) -> bool {
    let mut tp = 0.0;
    let mut pp = 0.0;
    ts.iter().zip(exps).all(|(&t, &p)| {
        tp += t.ln();
        pp += p as f64 * std::f64::consts::LN_2;
        pp >= tp - TOL && pp <= tp + std::f64::consts::LN_2 + TOL
    })
}

/// Universal tuple in a cyclic group from binary digit blocks.
pub fn binary_tuple(group: &Group, targets: &[f64], opts: &ConstructOptions) -> Result<UniversalTuple> {
    if !group.is_cyclic_kind() {
        return Err(Error::WrongGroupKind("cyclic"));
    }
    let n = group.order();
    check_targets(n, targets)?;
    let ts: Vec<f64> = targets.iter().map(|s| n as f64 / s).collect();
    let exps = binary_exponents(&ts);
    let total: u32 = exps.iter().sum();
    let modulus = 1u64
        .checked_shl(total)
        .filter(|&m| m >= n as u64 && m <= 2 * n as u64)
        .ok_or_else(|| {
            Error::VerificationFailed(format!("2^{total} is not within [{n}, {}]", 2 * n))
        })?;
    if !prefix_condition_holds(&ts, &exps) {
        return Err(Error::VerificationFailed("running-product condition violated".into()));
    }
    let mut sets = Vec::with_capacity(targets.len());
    let mut offset = 0u32;
    for (&p, &s) in exps.iter().zip(targets) {
        let mask = ((1u64 << p) - 1) << offset;
        let mut u = Subset::empty(group);
        for m in 1..=modulus + n as u64 {
            if (m % modulus) & mask == 0 {
                u.insert((m % n as u64) as usize)?;
            }
        }
        if u.len() as f64 > 8.0 * s + TOL {
            return Err(Error::VerificationFailed(format!(
                "|U_i| = {} exceeds 8 s_i = {}",
                u.len(),
                8.0 * s
            )));
        }
        sets.push(u);
        offset += p;
    }
    let mut t = UniversalTuple {
        group: group.clone(),
        domain: Subset::full(group),
        sets,
        targets: targets.to_vec(),
        construction: TupleConstruction::Binary { exponents: exps, total_bits: total },
        verdict: None,
    };
    t.verify_or_fail("binary_tuple", opts)?;
    Ok(t)
}

/// Locates the lifting index `j` (smallest valid) and the subgroup targets
/// `t_i = s_i |H| / |G|` for `i != j`, `t_j = s_j`.
pub fn lift_targets(group_order: usize, sub_order: usize, targets: &[f64]) -> Result<(usize, Vec<f64>)> {
    let g = group_order as f64;
    let h = sub_order as f64;
    let index = g / h;
    let j = (0..targets.len())
        .find(|&j| {
            targets[j] <= h * (1.0 + TOL)
                && targets
                    .iter()
                    .enumerate()
                    .all(|(i, &s)| i == j || s >= index * (1.0 - TOL))
        })
        .ok_or_else(|| Error::NoValidIndex(targets.to_vec()))?;
    let inner = targets
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let t = if i == j { s } else { s / index };
            t.clamp(1.0, h)
        })
        .collect();
    Ok((j, inner))
}

/// Greedy right-coset representatives of `H` in `G`, in index order.
pub fn right_coset_reps(h: &Subset) -> Vec<usize> {
    let group = h.group();
    let mut covered = Subset::empty(group);
    let hs = h.to_vec();
    let mut reps = Vec::new();
    for g in group.elements() {
        if covered.contains(g) {
            continue;
        }
        reps.push(g);
        for &x in &hs {
            let _ = covered.insert(group.op(x, g));
        }
    }
    reps
}

/// Lifts a tuple universal within the subgroup `H` to one universal in `G`.
pub fn lift_tuple(
    group: &Group,
    h: &Subset,
    inner: &UniversalTuple,
    targets: &[f64],
    opts: &ConstructOptions,
) -> Result<UniversalTuple> {
    if h.group() != group || &inner.group != group {
        return Err(Error::GroupMismatch);
    }
    if !group.is_subgroup(h) {
        return Err(Error::InvalidArgument("H is not a subgroup of G".into()));
    }
    if &inner.domain != h {
        return Err(Error::InvalidArgument("inner tuple is not universal within H".into()));
    }
    let k = targets.len();
    if inner.k() != k {
        return Err(Error::InvalidArgument("inner tuple has a different length".into()));
    }
    let n = group.order();
    let needed = (n as f64).powf(1.0 - 1.0 / k as f64);
    if (h.len() as f64) < needed * (1.0 - TOL) {
        return Err(Error::SubgroupTooSmall { subgroup: h.len(), needed });
    }
    check_targets(n, targets)?;
    let mut inner = inner.clone();
    if inner.verdict.is_none() {
        inner.verify(Strategy::Auto, 0, &opts.verify)?;
    }
    if !inner.is_verified() {
        return Err(Error::UnverifiedTuple);
    }
    let (j, ts) = lift_targets(n, h.len(), targets)?;
    let reps = right_coset_reps(h);
    let t1 = Subset::from_indices(group, reps.iter().copied())?;
    let sets = inner
        .sets
        .iter()
        .enumerate()
        .map(|(i, u)| if i == j { Ok(u.clone()) } else { product_set(u, &t1) })
        .collect::<Result<Vec<_>>>()?;
    let inner_cost: f64 = inner.sets.iter().zip(&ts).map(|(u, t)| u.len() as f64 / t).sum();
    let mut out = UniversalTuple {
        group: group.clone(),
        domain: Subset::full(group),
        sets,
        targets: targets.to_vec(),
        construction: TupleConstruction::Lift { index: j, coset_reps: reps, inner_cost, cost: 0.0 },
        verdict: None,
    };
    let cost = out.cost();
    if cost > inner_cost * (1.0 + TOL) + TOL {
        return Err(Error::VerificationFailed(format!(
            "lift increased the cost from {inner_cost} to {cost}"
        )));
    }
    if let TupleConstruction::Lift { cost: c, .. } = &mut out.construction {
        *c = cost;
    }
    out.verify_or_fail("lift_tuple", opts)?;
    Ok(out)
}

/// Pushes a tuple through an injective homomorphism `map: K -> G`. The image
/// of the domain becomes the new domain. The verdict is kept only when the
/// homomorphism property could be checked on all pairs.
pub fn embed_tuple<F>(tuple: &UniversalTuple, into: &Group, map: F) -> Result<UniversalTuple>
where
    F: Fn(usize) -> usize,
{
    let src = &tuple.group;
    let image = |s: &Subset| Subset::from_indices(into, s.iter().map(&map));
    let domain = image(&tuple.domain)?;
    if domain.len() != tuple.domain.len() {
        return Err(Error::InvalidArgument("embedding is not injective".into()));
    }
    let ds = tuple.domain.to_vec();
    let checked = ds.len() <= 2048
        && ds.iter().all(|&a| {
            ds.iter()
                .all(|&b| map(src.op(a, b)) == into.op(map(a), map(b)))
        });
    Ok(UniversalTuple {
        group: into.clone(),
        domain,
        sets: tuple.sets.iter().map(image).collect::<Result<Vec<_>>>()?,
        targets: tuple.targets.clone(),
        construction: TupleConstruction::Embedded,
        verdict: if checked { tuple.verdict.clone() } else { None },
    })
}

/// Route used by [`abelian_tuple_with_route`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianRoute {
    /// Drop a small cyclic factor by lifting while there are at least `k`
    /// factors, then assemble per-factor binary tuples.
    Reduce,
    /// Assemble per-factor binary tuples directly.
    Cartesian,
}

pub fn abelian_tuple(group: &Group, targets: &[f64], opts: &ConstructOptions) -> Result<UniversalTuple> {
    abelian_tuple_with_route(group, targets, AbelianRoute::Reduce, opts)
}

pub fn abelian_tuple_with_route(
    group: &Group,
    targets: &[f64],
    route: AbelianRoute,
    opts: &ConstructOptions,
) -> Result<UniversalTuple> {
    let orders = group
        .cyclic_factor_orders()
        .ok_or(Error::WrongGroupKind("a direct product of cyclic groups"))?;
    check_targets(group.order(), targets)?;
    if group.is_cyclic_kind() {
        return binary_tuple(group, targets, opts);
    }
    let k = targets.len();
    let t = orders.len();
    if route == AbelianRoute::Reduce && t >= k && t >= 2 {
        // The smallest factor has order <= |G|^(1/t) <= |G|^(1/k).
        let drop = (0..t).min_by_key(|&i| (orders[i], i)).unwrap_or(0);
        let rest: Vec<u64> = orders
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &o)| o as u64)
            .collect();
        let sub = if rest.len() == 1 {
            Group::cyclic(rest[0])?
        } else {
            Group::abelian(&rest)?
        };
        let (_, inner_targets) = lift_targets(group.order(), sub.order(), targets)?;
        let inner = abelian_tuple_with_route(&sub, &inner_targets, route, opts)?;
        let embed = |x: usize| {
            let mut comps = if rest.len() == 1 { vec![x] } else { sub.components(x).unwrap_or_default() };
            comps.insert(drop, 0);
            group.from_components(&comps).expect("components in range")
        };
        let inner = embed_tuple(&inner, group, embed)?;
        let h = inner.domain.clone();
        return lift_tuple(group, &h, &inner, targets, opts);
    }

    let log_g = (group.order() as f64).ln();
    let mut factor_tuples = Vec::with_capacity(t);
    let mut factor_targets = Vec::with_capacity(t);
    for &order in &orders {
        let share = if log_g > 0.0 { (order as f64).ln() / log_g } else { 0.0 };
        let ft: Vec<f64> = targets
            .iter()
            .map(|s| s.powf(share).clamp(1.0, order as f64))
            .collect();
        let fg = Group::cyclic(order as u64)?;
        factor_tuples.push(binary_tuple(&fg, &ft, opts)?);
        factor_targets.push(ft);
    }
    let mut sets = Vec::with_capacity(k);
    for i in 0..k {
        let lists: Vec<Vec<usize>> = factor_tuples.iter().map(|ft| ft.sets[i].to_vec()).collect();
        let mut u = Subset::empty(group);
        let mut comps = vec![0usize; t];
        cartesian(&lists, 0, &mut comps, &mut |c| {
            let _ = u.insert(group.from_components(c).expect("components in range"));
        });
        sets.push(u);
    }
    let mut out = UniversalTuple {
        group: group.clone(),
        domain: Subset::full(group),
        sets,
        targets: targets.to_vec(),
        construction: TupleConstruction::Cartesian { factor_targets },
        verdict: None,
    };
    out.verify_or_fail("abelian_tuple", opts)?;
    Ok(out)
}

fn cartesian(lists: &[Vec<usize>], i: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == lists.len() {
        f(cur);
        return;
    }
    for &x in &lists[i] {
        cur[i] = x;
        cartesian(lists, i + 1, cur, f);
    }
}

/// Degree at which the point-stabilizer descent from `S_n` stops: the
/// smallest `m` such that `|S_{m'-1}| >= |S_{m'}|^(1-1/k)` for every
/// `m < m' <= n`.
pub fn symmetric_base_degree(n: usize, k: usize) -> usize {
    let lnfact = |m: usize| (1..=m).map(|i| (i as f64).ln()).sum::<f64>();
    let mut m = n;
    while m > 1 && lnfact(m - 1) >= (1.0 - 1.0 / k as f64) * lnfact(m) - 1e-12 {
        m -= 1;
    }
    m
}

/// Universal tuple in `S_n` by lifting along `S_n ⊃ S_{n-1} ⊃ ..` (point
/// stabilizers of the last point) down to [`symmetric_base_degree`], where
/// the trivial tuple is used.
pub fn symmetric_tuple(n: u32, targets: &[f64], opts: &ConstructOptions) -> Result<UniversalTuple> {
    let group = Group::symmetric(n)?;
    check_targets(group.order(), targets)?;
    let k = targets.len();
    let base = symmetric_base_degree(n as usize, k);
    if n as usize <= base {
        let full = Subset::full(&group);
        let mut t = UniversalTuple {
            group: group.clone(),
            domain: full.clone(),
            sets: vec![full; k],
            targets: targets.to_vec(),
            construction: TupleConstruction::Trivial,
            verdict: None,
        };
        t.verify_or_fail("symmetric_tuple", opts)?;
        return Ok(t);
    }
    let sub = Group::symmetric(n - 1)?;
    let (_, inner_targets) = lift_targets(group.order(), sub.order(), targets)?;
    let inner = symmetric_tuple(n - 1, &inner_targets, opts)?;
    let embed = |x: usize| {
        let mut p = sub.permutation(x).unwrap_or_default();
        p.push(n as usize - 1);
        group.from_permutation(&p).expect("valid permutation")
    };
    let inner = embed_tuple(&inner, &group, embed)?;
    let h = inner.domain.clone();
    lift_tuple(&group, &h, &inner, targets, opts)
}

/// k-universal set in `S_n` as the union of [`symmetric_tuple`] with uniform
/// targets.
pub fn symmetric_universal(n: u32, k: usize, opts: &ConstructOptions) -> Result<UniversalSetResult> {
    if k < 2 {
        return Err(Error::InvalidArgument("need k >= 2".into()));
    }
    let group = Group::symmetric(n)?;
    let tuple = symmetric_tuple(n, &uniform_targets(group.order(), k), opts)?;
    let mut res = tuple_to_universal_set(&tuple, opts)?;
    res.method = Method::Symmetric;
    res.size_bound = SizeBound {
        value: factorial_f64(3 * k + 1) * (group.order() as f64).powf(1.0 - 1.0 / k as f64),
        guaranteed: true,
    };
    Ok(res)
}

fn factorial_f64(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

/// Union of a verified tuple; k-universal for the tuple's domain.
pub fn tuple_to_universal_set(t: &UniversalTuple, opts: &ConstructOptions) -> Result<UniversalSetResult> {
    if !t.is_verified() {
        return Err(Error::UnverifiedTuple);
    }
    let group = &t.group;
    let k = t.k();
    let mut set = Subset::empty(group);
    for s in &t.sets {
        set = set.union(s)?;
    }
    let verdict = verify_universal_for(&set, &t.domain, k, Strategy::Auto, 0, &opts.verify)?;
    if !verdict.pass {
        return Err(Error::VerificationFailed("tuple union is not k-universal".into()));
    }
    let scope = if t.domain.is_full() { Scope::WholeGroup } else { Scope::ForSet(t.domain.clone()) };
    let order = t.domain.len();
    let abelian = group.cyclic_factor_orders();
    let size_bound = match (&t.construction, abelian) {
        (TupleConstruction::Binary { .. }, _) => SizeBound {
            value: 8.0 * t.targets.iter().sum::<f64>(),
            guaranteed: true,
        },
        (_, Some(orders)) => SizeBound {
            value: 8f64.powi(orders.len().min(k.saturating_sub(1)).max(1) as i32)
                * t.targets.iter().sum::<f64>(),
            guaranteed: true,
        },
        _ => SizeBound { value: t.cost() * order as f64, guaranteed: true },
    };
    Ok(UniversalSetResult {
        set,
        k,
        scope,
        method: Method::TupleUnion,
        size_bound,
        lower_bound: lower_bound(order, k),
        seed: None,
        attempts: 1,
        degenerate: false,
        details: Details::Tuple { targets: t.targets.clone(), sizes: t.sizes(), cost: t.cost() },
        verdict,
    })
}

/// Convenience: union of [`abelian_tuple`] with uniform targets.
pub fn abelian_universal(group: &Group, k: usize, opts: &ConstructOptions) -> Result<UniversalSetResult> {
    let tuple = abelian_tuple(group, &uniform_targets(group.order(), k), opts)?;
    let mut res = tuple_to_universal_set(&tuple, opts)?;
    res.method = Method::Abelian;
    Ok(res)
}

/// Spec of the complement of factor `i` in a direct product of cyclic groups.
pub fn complement_spec(orders: &[u64], i: usize) -> GroupSpec {
    let rest: Vec<u64> = orders
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &o)| o)
        .collect();
    if rest.len() == 1 {
        GroupSpec::cyclic(rest[0])
    } else {
        GroupSpec::abelian(&rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> ConstructOptions {
        ConstructOptions::default()
    }

    fn exact(v: &Verdict) {
        assert!(v.pass);
        assert_eq!(v.mode, crate::verify::VerifyMode::Exact);
    }

    #[test]
    fn singer_sizes() {
        for (p, k, r, size) in [(2, 2, 7, 3), (3, 2, 13, 4), (2, 3, 15, 7)] {
            let s = singer_universal(p, k, &opts()).unwrap();
            assert_eq!((s.r, s.x.len()), (r, size));
            exact(&s.verdict);
            assert_eq!(s.y.len(), 2 * size);
            assert!(s.y.iter().all(|&v| (1..=2 * r).contains(&v)));
            let iv = crate::verify::verify_interval_universal(&s.y, r, k, &VerifyOptions::default()).unwrap();
            assert!(iv.pass);
        }
        assert!(singer_universal(2, 1, &opts()).is_err());
    }

    #[test]
    fn singer_k2_is_a_perfect_difference_set() {
        let s = singer_universal(5, 2, &opts()).unwrap();
        let r = s.r as usize;
        let mut reps = vec![0; r];
        for a in s.x.iter() {
            for b in s.x.iter() {
                if a != b {
                    reps[(a + r - b) % r] += 1;
                }
            }
        }
        assert!(reps[1..].iter().all(|&c| c == 1));
    }

    #[test]
    fn prime_roots() {
        assert_eq!(smallest_prime_root(7, 2), 3);
        assert_eq!(smallest_prime_root(100, 2), 11);
        assert_eq!(smallest_prime_root(121, 2), 11);
        assert_eq!(smallest_prime_root(122, 2), 13);
        assert_eq!(smallest_prime_root(9, 3), 3);
        assert_eq!(smallest_prime_root(2, 2), 2);
    }

    #[test]
    fn cyclic_examples() {
        let r = cyclic_universal(7, 2, &opts()).unwrap();
        exact(&r.verdict);
        assert!(matches!(r.details, Details::Cyclic { prime: 3, r: 13, .. }));

        let r = cyclic_universal(100, 2, &opts()).unwrap();
        exact(&r.verdict);
        assert!(r.size() <= 24);
        assert!(matches!(r.details, Details::Cyclic { prime: 11, singer_size: 12, .. }));
        assert_eq!(r.size_bound.value, 720.0);
        assert!(r.size_bound.guaranteed);
        assert!(!cyclic_universal(7, 2, &opts()).unwrap().size_bound.guaranteed);

        let r = cyclic_universal(2, 2, &opts()).unwrap();
        assert_eq!(r.set.to_vec(), vec![0, 1]);
        assert!(r.degenerate);
    }

    #[test]
    fn cyclic_small_range_is_exactly_verified() {
        for n in 7..=60 {
            for k in [2, 3] {
                let r = cyclic_universal(n, k, &opts()).unwrap();
                exact(&r.verdict);
            }
        }
    }

    #[test]
    fn random_construction() {
        let g = Group::cyclic(12).unwrap();
        let x = Subset::full(&g);
        let r = random_universal_for(&x, 1, 3, None, &opts()).unwrap();
        assert_eq!(r.size(), 1);

        // Small X: p > 1, X itself comes back.
        let r = random_universal_for(&x, 2, 3, None, &opts()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.size(), 12);

        let g = Group::cyclic(101).unwrap();
        let x = Subset::full(&g);
        let r = random_universal_for(&x, 2, 9, None, &opts()).unwrap();
        exact(&r.verdict);
        assert!(!r.degenerate);
        assert!(r.size() as f64 <= r.size_bound.value);
        let again = random_universal_for(&x, 2, 9, None, &opts()).unwrap();
        assert_eq!(r.set, again.set);
    }

    #[test]
    fn random_rejects_bad_input() {
        let g = Group::cyclic(10).unwrap();
        let one = Subset::singleton(&g, 0).unwrap();
        assert!(random_universal_for(&one, 1, 0, None, &opts()).is_err());
        let x = Subset::from_indices(&g, [0, 1, 2]).unwrap();
        assert!(random_universal_for(&x, 4, 0, None, &opts()).is_err());
        let c = Subset::from_indices(&g, [0, 1]).unwrap();
        assert!(random_universal_for(&x, 2, 0, Some(&c), &opts()).is_err());
    }

    #[test]
    fn binary_n4() {
        let g = Group::cyclic(4).unwrap();
        let t = binary_tuple(&g, &[2.0, 2.0], &opts()).unwrap();
        assert_eq!(
            t.construction,
            TupleConstruction::Binary { exponents: vec![1, 1], total_bits: 2 }
        );
        exact(t.verdict.as_ref().unwrap());
        let u = tuple_to_universal_set(&t, &opts()).unwrap();
        exact(&u.verdict);
        assert_eq!(u.method, Method::TupleUnion);
    }

    #[test]
    fn binary_invariants() {
        for n in [4u64, 12, 30, 64, 97] {
            for k in 1..=3 {
                let g = Group::cyclic(n).unwrap();
                let s = uniform_targets(n as usize, k);
                let t = binary_tuple(&g, &s, &opts()).unwrap();
                let TupleConstruction::Binary { exponents, total_bits } = &t.construction else {
                    panic!()
                };
                let ts: Vec<f64> = s.iter().map(|v| n as f64 / v).collect();
                assert!(prefix_condition_holds(&ts, exponents));
                assert!(n <= 1 << total_bits && 1 << total_bits <= 2 * n);
                for (u, s) in t.sets.iter().zip(&s) {
                    assert!(u.len() as f64 <= 8.0 * s);
                }
                let c = t.certificate();
                assert!(c.product_bound_holds && c.cost_at_least_k);
            }
        }
    }

    #[test]
    fn bad_targets() {
        let g = Group::cyclic(12).unwrap();
        assert!(matches!(binary_tuple(&g, &[2.0, 2.0], &opts()), Err(Error::BadTargets(_))));
        assert!(matches!(binary_tuple(&g, &[0.5, 24.0], &opts()), Err(Error::BadTargets(_))));
        let s = Group::symmetric(3).unwrap();
        assert!(matches!(binary_tuple(&s, &[6.0], &opts()), Err(Error::WrongGroupKind(_))));
    }

    #[test]
    fn lift_in_z6() {
        let g = Group::cyclic(6).unwrap();
        let h = Subset::from_indices(&g, [0, 2, 4]).unwrap();
        let targets = [2.0, 3.0];
        let (j, inner_targets) = lift_targets(6, 3, &targets).unwrap();
        assert_eq!(j, 0);
        let z3 = Group::cyclic(3).unwrap();
        let inner = binary_tuple(&z3, &inner_targets, &opts()).unwrap();
        let inner = embed_tuple(&inner, &g, |x| 2 * x).unwrap();
        assert!(inner.is_verified());
        let out = lift_tuple(&g, &h, &inner, &targets, &opts()).unwrap();
        exact(out.verdict.as_ref().unwrap());
        let TupleConstruction::Lift { inner_cost, cost, ref coset_reps, .. } = out.construction else {
            panic!()
        };
        assert_eq!(coset_reps, &vec![0, 1]);
        assert!(cost <= inner_cost + 1e-9);
    }

    #[test]
    fn lift_with_h_equal_g_is_identity() {
        let g = Group::cyclic(8).unwrap();
        let t = binary_tuple(&g, &[8f64.sqrt(); 2], &opts()).unwrap();
        let out = lift_tuple(&g, &Subset::full(&g), &t, &t.targets, &opts()).unwrap();
        assert_eq!(out.sets, t.sets);
    }

    #[test]
    fn lift_preconditions() {
        let g = Group::abelian(&[4, 4]).unwrap();
        let h = Subset::from_indices(&g, (0..4).map(|a| 4 * a)).unwrap();
        assert!(g.is_subgroup(&h));
        let z4 = Group::cyclic(4).unwrap();
        let inner = binary_tuple(&z4, &[1.0, 4.0], &opts()).unwrap();
        let inner = embed_tuple(&inner, &g, |x| 4 * x).unwrap();
        // |H| = 4 = 16^(1/2) is accepted at equality.
        let out = lift_tuple(&g, &h, &inner, &[4.0, 4.0], &opts()).unwrap();
        exact(out.verdict.as_ref().unwrap());

        let small = Subset::from_indices(&g, [0, 8]).unwrap();
        let z2 = Group::cyclic(2).unwrap();
        let t2 = binary_tuple(&z2, &[2f64.sqrt(); 2], &opts()).unwrap();
        let t2 = embed_tuple(&t2, &g, |x| 8 * x).unwrap();
        assert!(matches!(
            lift_tuple(&g, &small, &t2, &[4.0, 4.0], &opts()),
            Err(Error::SubgroupTooSmall { .. })
        ));
        assert!(matches!(lift_targets(16, 4, &[8.0, 2.0]), Ok((1, _))));
        assert!(matches!(lift_targets(16, 4, &[2.0, 2.0, 64.0]), Err(Error::NoValidIndex(_))));
    }

    #[test]
    fn abelian_routes() {
        let z8 = Group::cyclic(8).unwrap();
        let t = abelian_tuple(&z8, &[8f64.sqrt(); 2], &opts()).unwrap();
        assert!(matches!(t.construction, TupleConstruction::Binary { .. }));

        let g = Group::abelian(&[4, 4]).unwrap();
        for route in [AbelianRoute::Reduce, AbelianRoute::Cartesian] {
            let t = abelian_tuple_with_route(&g, &[4.0, 4.0], route, &opts()).unwrap();
            exact(t.verdict.as_ref().unwrap());
            assert!(t.certificate().product_bound_holds);
            for u in &t.sets {
                assert!(u.len() <= 256);
            }
        }
        let t = abelian_tuple_with_route(&g, &[4.0, 4.0], AbelianRoute::Cartesian, &opts()).unwrap();
        let TupleConstruction::Cartesian { factor_targets } = &t.construction else { panic!() };
        assert!(factor_targets.iter().flatten().all(|&s| (s - 2.0).abs() < 1e-9));

        let g = Group::abelian(&[2, 3]).unwrap();
        let s = [6f64.sqrt(); 2];
        for route in [AbelianRoute::Reduce, AbelianRoute::Cartesian] {
            let t = abelian_tuple_with_route(&g, &s, route, &opts()).unwrap();
            exact(t.verdict.as_ref().unwrap());
            exact(&tuple_to_universal_set(&t, &opts()).unwrap().verdict);
        }
        let z6 = Group::cyclic(6).unwrap();
        exact(binary_tuple(&z6, &s, &opts()).unwrap().verdict.as_ref().unwrap());

        let g = Group::abelian(&[3, 3, 3]).unwrap();
        let r = abelian_universal(&g, 3, &opts()).unwrap();
        exact(&r.verdict);
    }

    #[test]
    fn symmetric_chain() {
        assert_eq!(symmetric_base_degree(3, 2), 3);
        assert_eq!(symmetric_base_degree(4, 2), 3);
        assert_eq!(symmetric_base_degree(5, 2), 3);
        assert_eq!(symmetric_base_degree(6, 3), 5);

        let r = symmetric_universal(3, 2, &opts()).unwrap();
        assert_eq!(r.size(), 6);
        let r = symmetric_universal(4, 2, &opts()).unwrap();
        exact(&r.verdict);
        assert!(r.size() as f64 <= r.size_bound.value);
    }

    #[test]
    fn unverified_tuple_is_rejected() {
        let g = Group::cyclic(4).unwrap();
        let mut t = binary_tuple(&g, &[2.0, 2.0], &opts()).unwrap();
        t.verdict = None;
        assert!(matches!(tuple_to_universal_set(&t, &opts()), Err(Error::UnverifiedTuple)));
    }

    #[test]
    fn equal_entries_union_to_that_set() {
        let g = Group::cyclic(5).unwrap();
        let full = Subset::full(&g);
        let mut t = UniversalTuple {
            group: g.clone(),
            domain: full.clone(),
            sets: vec![full.clone(); 2],
            targets: uniform_targets(5, 2),
            construction: TupleConstruction::Trivial,
            verdict: None,
        };
        t.verify(Strategy::Exact, 0, &VerifyOptions::default()).unwrap();
        assert_eq!(tuple_to_universal_set(&t, &opts()).unwrap().set, full);
    }
}
