use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use unisets::basis::{en_basis, BasisConfig};
use unisets::powers::{
    build_basis_graph, enumerate_walks, exceeds_walk_lower_bound, lower_bound_exponent,
    min_degree_subgraph, power_set, rational_to_f64, walk_bound_applies, walk_lower_bound,
    PeelOrder, WalkQuery,
};
use unisets::universal::{
    abelian_tuple, abelian_universal, binary_tuple, cyclic_universal, random_universal_for,
    symmetric_tuple, symmetric_universal, tuple_to_universal_set, uniform_targets,
    ConstructOptions, Scope, UniversalSetResult,
};
use unisets::verify::verify_universal_for;
use unisets::{make_group, Error, Exec, Group, Strategy, Subset};

use crate::args::{BasisArgs, Cli, Command, Method, PowersArgs, UniversalArgs};
use crate::exit;
use crate::report::{BoundComparison, RunReport};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: exit::USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VerificationFailed(_) => exit::VERIFICATION_FAILED,
            Error::InvalidArgument(_)
            | Error::BadTargets(_)
            | Error::WrongGroupKind(_)
            | Error::DegreeTooSmall(_)
            | Error::XOutOfRange { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NotAGroup(_)
            | Error::OverflowingOrder { .. }
            | Error::DegreeCapExceeded { .. }
            | Error::NoKnownSeries(_)
            | Error::UnknownVertex(_)
            | Error::ExactInfeasible { .. } => exit::USAGE,
            _ => exit::CONSTRUCTION_FAILED,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = Result<RunReport, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Universal(a) => universal(a, cli)?,
        Command::Basis(a) => basis(a, cli)?,
        Command::Powers(a) => powers(a, cli.exec.into())?,
    };
    report.settle();
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn to_value(v: &impl serde::Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("result serializes")
}

fn universal(a: &UniversalArgs, cli: &Cli) -> Outcome {
    let group = make_group(&a.group)?;
    let vopts = a.verify.options(cli.exec);
    let opts = ConstructOptions { verify: vopts, ..ConstructOptions::default() };
    let mut report = RunReport::new("universal", Some(a.group.clone()), Some(a.seed));
    report.param("k", a.k);
    report.param("method", format!("{:?}", a.method).to_lowercase());
    if a.k == 0 {
        return Err(Failure::usage("k must be at least 1"));
    }
    let cyclic_order = group.is_cyclic_kind().then(|| group.order() as u64);
    let full = Subset::full(&group);
    let method = match a.method {
        Method::Auto if group.is_cyclic_kind() => Method::Singer,
        Method::Auto if group.cyclic_factor_orders().is_some() => Method::Abelian,
        Method::Auto if group.symmetric_degree().is_some() => Method::Symmetric,
        Method::Auto => Method::Random,
        m => m,
    };
    report.param("resolved_method", format!("{method:?}").to_lowercase());
    let result: UniversalSetResult = match method {
        Method::Random => random_universal_for(&full, a.k, a.seed, None, &opts)?,
        Method::Singer => {
            let n = cyclic_order.ok_or_else(|| Failure::usage("singer needs a cyclic group"))?;
            cyclic_universal(n, a.k, &opts)?
        }
        Method::Abelian => abelian_universal(&group, a.k, &opts)?,
        Method::Symmetric => {
            let d = group
                .symmetric_degree()
                .ok_or_else(|| Failure::usage("symmetric needs a symmetric group"))?;
            symmetric_universal(d as u32, a.k, &opts)?
        }
        Method::Tuple => {
            let targets = uniform_targets(group.order(), a.k);
            let tuple = if group.is_cyclic_kind() {
                binary_tuple(&group, &targets, &opts)?
            } else if group.cyclic_factor_orders().is_some() {
                abelian_tuple(&group, &targets, &opts)?
            } else if let Some(d) = group.symmetric_degree() {
                symmetric_tuple(d as u32, &targets, &opts)?
            } else {
                return Err(Failure::usage("tuple needs a cyclic, abelian or symmetric group"));
            };
            let cert = tuple.certificate();
            report.checks.insert("tuple_product_bound".into(), cert.product_bound_holds);
            report.checks.insert("tuple_cost_at_least_k".into(), cert.cost_at_least_k);
            if let Some(v) = &tuple.verdict {
                report.verdicts.insert("tuple".into(), v.clone());
            }
            tuple_to_universal_set(&tuple, &opts)?
        }
        Method::Auto => unreachable!("resolved above"),
    };
    let verdict = match Strategy::from(a.verify.strategy) {
        Strategy::Auto => result.verdict.clone(),
        s => {
            let scope = match &result.scope {
                Scope::WholeGroup => full.clone(),
                Scope::ForSet(x) => x.clone(),
            };
            verify_universal_for(&result.set, &scope, a.k, s, a.seed, &vopts)?
        }
    };
    report.verdicts.insert("universal".into(), verdict);
    report.sizes.insert("group".into(), group.order() as u64);
    report.sizes.insert("set".into(), result.size() as u64);
    let size = result.size() as f64;
    report.bounds.push(BoundComparison::new("counting", "lower", result.lower_bound, size, None));
    report.bounds.push(BoundComparison::new(
        "construction",
        "upper",
        result.size_bound.value,
        size,
        Some(result.size_bound.guaranteed),
    ));
    report.checks.insert(
        "size_within_guaranteed_bound".into(),
        !result.size_bound.guaranteed || size <= result.size_bound.value,
    );
    report.result = to_value(&result);
    Ok(report)
}

fn parse_list<T: std::str::FromStr>(text: &str, sep: &[char]) -> Result<Vec<T>, Failure> {
    text.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty() && !t.starts_with('#'))
        .map(|t| t.parse().map_err(|_| Failure::usage(format!("cannot parse {t:?}"))))
        .collect()
}

fn read_list<T: std::str::FromStr>(path: &Path) -> Result<Vec<T>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_list(&text, &['\n'])
}

fn subset(group: &Group, items: Vec<usize>) -> Result<Subset, Failure> {
    Ok(Subset::from_indices(group, items)?)
}

fn basis(a: &BasisArgs, cli: &Cli) -> Outcome {
    let group = make_group(&a.group)?;
    let items: Vec<usize> = match (&a.a, &a.a_file) {
        (Some(s), _) => parse_list(s, &[','])?,
        (None, Some(p)) => read_list(p)?,
        (None, None) => Vec::new(),
    };
    let target = subset(&group, items)?;
    let x = a.x.as_deref().map(|s| subset(&group, parse_list(s, &[','])?)).transpose()?;
    let vopts = a.verify.options(cli.exec);
    let cfg = BasisConfig {
        k: a.k,
        x,
        carrier: None,
        seed: a.seed,
        construct: ConstructOptions { verify: vopts, ..ConstructOptions::default() },
        exec: cli.exec.into(),
    };
    let r = en_basis(&target, &cfg)?;
    let mut report = RunReport::new("basis", Some(a.group.clone()), Some(a.seed));
    report.param("k", r.k);
    report.param("k_override", a.k);
    report.param("x_override", a.x.is_some());
    report.param("en_bound_applicable", r.en_bound_applicable);
    report.param("warnings", &r.warnings);
    let sizes = [
        ("group", group.order()),
        ("a", target.len()),
        ("basis", r.basis.len()),
        ("universal", r.universal.size()),
        ("covering", r.covering.y.len()),
        ("non_doubling", r.non_doubling.len()),
        ("translators", r.translators.len()),
    ];
    for (k, v) in sizes {
        report.sizes.insert(k.into(), v as u64);
    }
    report.bounds.push(BoundComparison::new(
        "basis_budget",
        "upper",
        r.size_budget,
        r.basis.len() as f64,
        Some(r.en_bound_applicable),
    ));
    let translator_bound = target.len() as f64 / r.k as f64 + r.covering.y.len() as f64;
    report.bounds.push(BoundComparison::new(
        "translators",
        "upper",
        translator_bound,
        r.translators.len() as f64,
        Some(true),
    ));
    report
        .checks
        .insert("translator_count".into(), r.translators.len() as f64 <= translator_bound + 1e-9);
    report.verdicts.insert("basis".into(), r.verdict.clone());
    report.verdicts.insert("universal".into(), r.universal.verdict.clone());
    report.result = to_value(&r);
    Ok(report)
}

#[derive(serde::Serialize)]
struct WalkSample {
    vertex: String,
    walks: u64,
    truncated: bool,
    identities_hold: bool,
    lower_bound: Option<f64>,
}

fn powers(a: &PowersArgs, exec: Exec) -> Outcome {
    let vertices: Vec<BigUint> = match &a.basis_file {
        Some(p) => read_list(p)?,
        None => {
            let mut v = vec![BigUint::from(0u32)];
            v.extend(power_set(a.d, a.n)?);
            v
        }
    };
    let bg = build_basis_graph(&vertices, a.d, a.n)?;
    let delta = bg.density();
    let core = bg.core(&delta, PeelOrder::Fifo)?;
    let seeded = min_degree_subgraph(&bg.graph, &delta, PeelOrder::Seeded(a.seed))?;
    let fifo = min_degree_subgraph(&bg.graph, &delta, PeelOrder::Fifo)?;

    let mut report = RunReport::new("powers", None, Some(a.seed));
    report.param("d", a.d);
    report.param("n", a.n);
    report.param("k", a.k);
    report.param("basis", if a.basis_file.is_some() { "file" } else { "trivial" });
    report.param("delta", delta.to_string());
    report.param("basis_complete", bg.is_complete());
    report.param("exponent", lower_bound_exponent(a.d)?);
    report.sizes.insert("vertices".into(), bg.vertices.len() as u64);
    report.sizes.insert("edges".into(), bg.graph.edges().len() as u64);
    report.sizes.insert("missing_powers".into(), bg.missing.len() as u64);
    report.sizes.insert("core_vertices".into(), core.vertices.len() as u64);
    report.sizes.insert("core_edges".into(), core.graph.edges().len() as u64);
    report.checks.insert("core_order_independent".into(), seeded.vertices == fifo.vertices);
    if bg.is_complete() {
        report.checks.insert("core_nonempty".into(), !core.vertices.is_empty());
    }

    let k = a.k as usize;
    let m = core.vertices.len();
    let picks: Vec<usize> = if m == 0 || a.samples == 0 {
        Vec::new()
    } else {
        let s = a.samples.min(m);
        (0..s).map(|i| i * m / s).collect()
    };
    let bound = walk_lower_bound(&delta, k);
    let bound_applies = walk_bound_applies(&delta, k);
    let mut samples = Vec::new();
    let mut identities = true;
    let mut lower_bound_ok = true;
    for v in picks {
        let q = WalkQuery { start: v, end: None, length: k, budget: a.budget };
        let (walks, truncated) = match enumerate_walks(&core.graph, &q, exec) {
            Ok(w) => (w, false),
            Err(Error::BudgetExceeded { .. }) => (Vec::new(), true),
            Err(e) => return Err(e.into()),
        };
        let holds = walks.iter().all(|w| core.alternating_identity_holds(w));
        identities &= holds;
        let count = walks.len() as u64;
        if bound_applies && !truncated {
            lower_bound_ok &= exceeds_walk_lower_bound(count, &delta, k);
        }
        samples.push(WalkSample {
            vertex: core.vertices[v].to_string(),
            walks: count,
            truncated,
            identities_hold: holds,
            lower_bound: bound_applies.then(|| rational_to_f64(&bound)),
        });
    }
    report.checks.insert("alternating_identity".into(), identities);
    if bound_applies {
        report.checks.insert("walk_lower_bound".into(), lower_bound_ok);
    }
    report.result = serde_json::json!({
        "graph": to_value(&bg),
        "core_vertices": core.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "walk_samples": to_value(&samples),
    });
    Ok(report)
}
