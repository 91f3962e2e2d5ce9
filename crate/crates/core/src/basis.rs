//! Covering sets, non-doubling sets from normal series, and small bases
//! `B` with `A ⊆ BB` assembled from a universal set and translators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_non_doubling, Group, Subset};
use crate::par::{map_collect, Exec};
use crate::rng::{child_seed, stream, SeededRng};
use crate::universal::{random_universal_for, ConstructOptions, UniversalSetResult};
use crate::verify::{verify_basis, Verdict, VerifyMode};

/// `G = G_0 ⊃ G_1 ⊃ .. ⊃ G_m = {e}` with each `G_{i+1}` normal in `G_i` and
/// `G_i / G_{i+1}` cyclic, generated by the coset of `generators[i]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalSeries {
    subgroups: Vec<Subset>,
    generators: Vec<usize>,
}

impl NormalSeries {
    pub fn new(subgroups: Vec<Subset>, generators: Vec<usize>) -> Result<Self> {
        let s = Self { subgroups, generators };
        s.validate()?;
        Ok(s)
    }

    pub fn group(&self) -> &Group {
        self.subgroups[0].group()
    }

    pub fn subgroups(&self) -> &[Subset] {
        &self.subgroups
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSeries(m));
        let Some(first) = self.subgroups.first() else {
            return bad("empty series".into());
        };
        let g = first.group();
        if !first.is_full() {
            return bad("series must start at the whole group".into());
        }
        let last = self.subgroups.last().expect("nonempty");
        if last.len() != 1 || !last.contains(g.identity()) {
            return bad("series must end at the trivial subgroup".into());
        }
        if self.generators.len() + 1 != self.subgroups.len() {
            return bad("need one generator per step".into());
        }
        let commutative = g.cyclic_factor_orders().is_some();
        for (i, pair) in self.subgroups.windows(2).enumerate() {
            let (big, small) = (&pair[0], &pair[1]);
            if small.group() != g {
                return Err(Error::GroupMismatch);
            }
            if !g.is_subgroup(small) || !small.is_subset(big) || small.len() == big.len() {
                return bad(format!("step {i} is not a proper subgroup"));
            }
            if !commutative {
                let members = small.to_vec();
                for h in big.iter() {
                    let hi = g.inv(h);
                    if members.iter().any(|&x| !small.contains(g.op(g.op(h, x), hi))) {
                        return bad(format!("G_{} is not normal in G_{i}", i + 1));
                    }
                }
            }
            let h = self.generators[i];
            if h >= g.order() || !big.contains(h) {
                return bad(format!("generator {h} of step {i} lies outside G_{i}"));
            }
            let t = big.len() / small.len();
            let mut orbit = Subset::empty(g);
            let mut power = g.identity();
            for _ in 0..t {
                orbit = orbit.union(&small.left_translate(power))?;
                power = g.op(power, h);
            }
            if orbit != *big {
                return bad(format!("cosets of generator {h} do not exhaust G_{i}"));
            }
        }
        Ok(())
    }
}

/// Known normal series with cyclic quotients: cyclic groups, direct products
/// of cyclic groups and `S_n` for `n <= 4`.
pub fn builtin_series(g: &Group) -> Result<NormalSeries> {
    if g.is_cyclic_kind() {
        let mut subgroups = vec![Subset::full(g)];
        let mut generators = vec![];
        if g.order() > 1 {
            subgroups.push(Subset::singleton(g, 0)?);
            generators.push(1);
        }
        return NormalSeries::new(subgroups, generators);
    }
    if let Some(orders) = g.cyclic_factor_orders() {
        let t = orders.len();
        let mut subgroups = vec![Subset::full(g)];
        let mut generators = Vec::new();
        // Drop factors from the last: step `live` zeroes factor `live`.
        for live in (0..t).rev().filter(|&i| orders[i] > 1) {
            let mut unit = vec![0; t];
            unit[live] = 1;
            generators.push(g.from_components(&unit)?);
            let next = g.elements().filter(|&x| {
                g.components(x).is_some_and(|c| c[live..].iter().all(|&v| v == 0))
            });
            subgroups.push(Subset::from_indices(g, next)?);
        }
        return NormalSeries::new(subgroups, generators);
    }
    if let Some(d) = g.symmetric_degree().filter(|&d| d <= 4) {
        let perm = |p: &[usize]| g.from_permutation(p);
        let set = |f: &dyn Fn(&[usize]) -> bool| {
            Subset::from_indices(
                g,
                g.elements().filter(|&x| f(&g.permutation(x).expect("symmetric"))),
            )
        };
        let even = |p: &[usize]| parity(p) == 0;
        let trivial = Subset::singleton(g, g.identity())?;
        let (subgroups, generators) = match d {
            1 => (vec![Subset::full(g)], vec![]),
            2 => (vec![Subset::full(g), trivial], vec![perm(&[1, 0])?]),
            3 => (
                vec![Subset::full(g), set(&even)?, trivial],
                vec![perm(&[1, 0, 2])?, perm(&[1, 2, 0])?],
            ),
            _ => {
                let v4 = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
                let klein = Subset::from_indices(g, v4.iter().map(|p| perm(p).expect("valid")))?;
                let z2 = Subset::from_indices(g, [g.identity(), perm(&[1, 0, 3, 2])?])?;
                (
                    vec![Subset::full(g), set(&even)?, klein, z2, trivial],
                    vec![
                        perm(&[1, 0, 2, 3])?,
                        perm(&[1, 2, 0, 3])?,
                        perm(&[2, 3, 0, 1])?,
                        perm(&[1, 0, 3, 2])?,
                    ],
                )
            }
        };
        return NormalSeries::new(subgroups, generators);
    }
    Err(Error::NoKnownSeries(g.spec().to_string()))
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// Union of `t = ⌈x/|G_{i+1}|⌉` consecutive cosets `h^j G_{i+1}` for the
/// first `i` with `|G_{i+1}| < x`. Satisfies `x <= |X| < 2x` and
/// `|XX| <= 3|X|`.
pub fn non_doubling_in_solvable(series: &NormalSeries, x: f64) -> Result<Subset> {
    let g = series.group();
    let order = g.order();
    if !(x > 1.0 && x <= order as f64) {
        return Err(Error::XOutOfRange { x, order });
    }
    let subs = series.subgroups();
    let i = (0..series.len())
        .find(|&i| (subs[i + 1].len() as f64) < x)
        .expect("last subgroup is trivial");
    let small = &subs[i + 1];
    let t = (x / small.len() as f64).ceil() as usize;
    let h = series.generators()[i];
    let mut out = Subset::empty(g);
    let mut power = g.identity();
    for _ in 0..t {
        out = out.union(&small.left_translate(power))?;
        power = g.op(power, h);
    }
    let (ok, _) = is_non_doubling(&out)?;
    if !ok || (out.len() as f64) < x || out.len() as f64 > 2.0 * x {
        return Err(Error::VerificationFailed(format!(
            "extracted set of size {} is not non-doubling in [x, 2x]",
            out.len()
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Covering {
    /// Translators in the order they were chosen.
    pub y: Vec<usize>,
    /// `|X| >= √n ln²n`, where a random set of size `⌈√n/ln n⌉` is tried.
    pub in_regime: bool,
    /// `⌈√n/ln n⌉`.
    pub target_size: usize,
    /// `(n/|X|) ln n`.
    pub expected_size: f64,
    pub seed: u64,
}

impl Covering {
    pub fn set(&self, g: &Group) -> Subset {
        Subset::from_indices(g, self.y.iter().copied()).expect("indices in range")
    }
}

const COVER_ROUNDS: u64 = 64;

/// Finds `Y` with `YX = G`.
pub fn covering_set(x: &Subset, seed: u64) -> Result<Covering> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = x.group();
    let n = g.order();
    let nf = n as f64;
    let xs = x.to_vec();
    let ln = nf.ln();
    let in_regime = n > 1 && x.len() as f64 >= nf.sqrt() * ln * ln;
    let target_size = if n > 1 { (nf.sqrt() / ln).ceil() as usize } else { 1 };
    let expected_size = nf / x.len() as f64 * ln.max(1.0);
    let cover = |y: &[usize]| {
        let mut c = Subset::empty(g);
        for &a in y {
            for &b in &xs {
                let _ = c.insert(g.op(a, b));
            }
        }
        c
    };
    let result = |y: Vec<usize>| Covering { y, in_regime, target_size, expected_size, seed };

    if x.is_full() {
        return Ok(result(vec![g.identity()]));
    }
    if in_regime {
        for round in 0..COVER_ROUNDS {
            let mut rng = SeededRng::seed_from_u64(child_seed(seed, stream::COVERING, round));
            let mut y: Vec<usize> = rand::seq::index::sample(&mut rng, n, target_size.min(n)).into_vec();
            y.sort_unstable();
            if cover(&y).is_full() {
                return Ok(result(y));
            }
        }
    }
    let mut rng = SeededRng::seed_from_u64(child_seed(seed, stream::COVERING, COVER_ROUNDS));
    let mut y = vec![g.identity()];
    let mut covered = x.clone();
    while !covered.is_full() {
        let uncovered: Vec<usize> = g.elements().filter(|&v| !covered.contains(v)).collect();
        let u = *uncovered.choose(&mut rng).expect("not full");
        let w = xs[rng.gen_range(0..xs.len())];
        let t = g.op(u, g.inv(w));
        y.push(t);
        for &b in &xs {
            covered.insert(g.op(t, b))?;
        }
    }
    Ok(result(y))
}

#[derive(Clone, Debug, Default)]
pub struct BasisConfig {
    /// Block size; defaults to `max(1, round(ln n / (30 ln ln n)))`.
    pub k: Option<usize>,
    /// Non-doubling set to use instead of extracting one from a series.
    pub x: Option<Subset>,
    /// Carrier `X*` passed through to the universal-set construction.
    pub carrier: Option<Subset>,
    pub seed: u64,
    pub construct: ConstructOptions,
    pub exec: Exec,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Translator {
    /// Index into the covering list.
    pub cover: usize,
    pub block: Vec<usize>,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisResult {
    pub group: Group,
    pub basis: Subset,
    pub target: Subset,
    pub k: usize,
    pub non_doubling: Subset,
    pub covering: Covering,
    pub universal: UniversalSetResult,
    pub translators: Vec<Translator>,
    /// `50 √n ln ln n / ln n`.
    pub size_budget: f64,
    pub en_bound_applicable: bool,
    pub seed: u64,
    /// Universal sets drawn before all translators were found.
    pub attempts: u32,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
}

pub fn default_block_size(n: usize) -> usize {
    let ln = (n as f64).ln();
    let k = (ln / (30.0 * ln.ln())).round();
    if k.is_finite() && k >= 1.0 { k as usize } else { 1 }
}

pub fn size_budget(n: usize) -> f64 {
    let nf = n as f64;
    let ln = nf.ln();
    if n < 3 {
        return 0.0;
    }
    50.0 * nf.sqrt() * ln.ln() / ln
}

/// Basis `B ⊇ U` with `A ⊆ BB`.
pub fn en_basis(a: &Subset, cfg: &BasisConfig) -> Result<BasisResult> {
    let g = a.group();
    let n = g.order();
    let nf = n as f64;
    let ln = nf.ln();
    let mut warnings = Vec::new();
    if a.len() as f64 > nf.sqrt() {
        warnings.push(format!("|A| = {} exceeds sqrt(n); size budget does not apply", a.len()));
    }
    let window_low = nf.sqrt() * ln * ln;
    let x = match &cfg.x {
        Some(x) => {
            if x.group() != g {
                return Err(Error::GroupMismatch);
            }
            if !is_non_doubling(x)?.0 {
                warnings.push("supplied X is not non-doubling".into());
            }
            x.clone()
        }
        None if n == 1 => Subset::full(g),
        None => non_doubling_in_solvable(&builtin_series(g)?, window_low.clamp(2.0, nf))?,
    };
    let covering = covering_set(&x, child_seed(cfg.seed, stream::COVERING, 0))?;

    let mut assigned = Subset::empty(g);
    let mut parts: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &y) in covering.y.iter().enumerate() {
        let yi = g.inv(y);
        let part: Vec<usize> = a
            .iter()
            .filter(|&v| !assigned.contains(v) && x.contains(g.op(yi, v)))
            .collect();
        for &v in &part {
            assigned.insert(v)?;
        }
        if !part.is_empty() {
            parts.push((i, part));
        }
    }
    if assigned.len() != a.len() {
        return Err(Error::VerificationFailed("covering does not reach all of A".into()));
    }

    let mut k = cfg.k.unwrap_or_else(|| default_block_size(n));
    if k == 0 {
        return Err(Error::InvalidArgument("block size must be at least 1".into()));
    }
    if x.len() < 2 {
        return Err(Error::InvalidArgument("X must have at least two elements".into()));
    }
    if k > x.len() {
        warnings.push(format!("block size {k} capped at |X| = {}", x.len()));
        k = x.len();
    }
    let blocks: Vec<(usize, Vec<usize>)> = parts
        .iter()
        .flat_map(|(i, part)| part.chunks(k).map(move |c| (*i, c.to_vec())))
        .collect();

    let mut attempts = 0;
    let (universal, translators) = loop {
        attempts += 1;
        let useed = child_seed(cfg.seed, stream::BASIS, attempts as u64);
        let u = random_universal_for(&x, k, useed, cfg.carrier.as_ref(), &cfg.construct)?;
        let found = map_collect(cfg.exec, &blocks, |(i, block)| {
            find_translator(g, covering.y[*i], block, &u.set).map(|element| Translator {
                cover: *i,
                block: block.clone(),
                element,
            })
        });
        match found.iter().position(Option::is_none) {
            None => break (u, found.into_iter().flatten().collect::<Vec<_>>()),
            Some(bad) => {
                let exact = u.verdict.mode == VerifyMode::Exact;
                if exact || attempts >= cfg.construct.retry_cap {
                    return Err(Error::TranslatorNotFound { block: blocks[bad].1.clone() });
                }
            }
        }
    };

    let mut basis = universal.set.clone();
    for t in &translators {
        basis.insert(t.element)?;
    }
    let verdict = verify_basis(&basis, a)?;
    if !verdict.pass {
        return Err(Error::VerificationFailed(format!(
            "A is not covered by BB (witness {:?})",
            verdict.witness
        )));
    }
    let budget = size_budget(n);
    let en_bound_applicable = budget > 0.0
        && a.len() as f64 <= nf.sqrt()
        && window_low <= nf
        && ln / (30.0 * ln.ln()) >= 1.0;
    Ok(BasisResult {
        group: g.clone(),
        basis,
        target: a.clone(),
        k,
        non_doubling: x,
        covering,
        universal,
        translators,
        size_budget: budget,
        en_bound_applicable,
        seed: cfg.seed,
        attempts,
        warnings,
        verdict,
    })
}

/// `y·h⁻¹` for the first `h` (by index) with `h·(y⁻¹T) ⊆ U`.
fn find_translator(g: &Group, y: usize, block: &[usize], u: &Subset) -> Option<usize> {
    let yi = g.inv(y);
    let w: Vec<usize> = block.iter().map(|&t| g.op(yi, t)).collect();
    let w0 = g.inv(*w.first()?);
    // Any valid h maps w_0 into U, so h ∈ U·w_0⁻¹.
    let mut candidates: Vec<usize> = u.iter().map(|v| g.op(v, w0)).collect();
    candidates.sort_unstable();
    candidates
        .into_iter()
        .find(|&h| w.iter().all(|&v| u.contains(g.op(h, v))))
        .map(|h| g.op(y, g.inv(h)))
}
