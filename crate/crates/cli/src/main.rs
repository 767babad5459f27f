//! `colourlab`: sample graphs, count colourings, evaluate moments and run the
//! seeded experiments.
//!
//! Exit status is 0 on success, 1 when an experiment verdict fails and 2 on
//! usage or input errors. Without `--out`, files go to `$COLOURLAB_OUT_DIR`
//! when it is set and to stdout otherwise.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use colourlab_core::colouring::{count_balanced_colourings, count_colourings, BalanceParams};
use colourlab_core::cycles::{cycle_census, has_intersecting_cycles};
use colourlab_core::graph::{
    format_colouring, read_graph, sample_bichromatic_multigraph, sample_gnm_multigraph,
    sample_gnm_simple, sample_planted_pair, write_graph, Graph,
};
use colourlab_core::moments::{self, ModelParams};
use colourlab_core::overlap::{
    achlioptas_naor_gap, an_constant, classify_stability_with_kappa, det_check, kappa, maximize_f,
    sample_balanced_overlap, Domain, MaximizeOptions, OverlapMatrix,
};
use colourlab_core::{colouring, RandomSource};
use colourlab_experiments::cycle_laws::balanced_colouring;
use colourlab_experiments::record::{num, round_value, CSV_HEADER};
use colourlab_experiments::{run_experiment, ExperimentConfig, EXPERIMENTS};

const OUT_DIR_VAR: &str = "COLOURLAB_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "colourlab",
    version,
    about = "Colourings of sparse random graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a graph (and colouring, where the model has one) and write it in
    /// edge-list form.
    Sample(SampleArgs),
    /// Count proper k-colourings of a graph file exactly.
    Count(CountArgs),
    /// Count cycles of each length 2..=L.
    Census(CensusArgs),
    /// Evaluate a closed form or exact moment.
    Moment(MomentArgs),
    /// Overlap landscape tools.
    Overlap(OverlapArgs),
    /// Run a seeded experiment and emit its record.
    Experiment(ExperimentArgs),
}

/// Edge count, given directly or through `m = ⌈dn/2⌉`.
#[derive(Args, Debug, Clone, Copy)]
struct Size {
    #[arg(long, conflicts_with = "d")]
    m: Option<usize>,
    /// Average degree.
    #[arg(long)]
    d: Option<f64>,
}

impl Size {
    fn params(&self, n: usize, k: usize) -> Result<ModelParams> {
        Ok(match (self.m, self.d) {
            (Some(m), _) => ModelParams::from_m(n, m, k)?,
            (None, Some(d)) => ModelParams::from_d(n, d, k)?,
            (None, None) => bail!("one of --m or --d is required"),
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    /// Multigraph, m edges drawn uniformly with replacement.
    Gnm,
    /// Uniform simple graph with m edges.
    Simple,
    /// Uniform map, then a uniform simple graph it colours properly.
    Planted,
    /// k-colourable G(n,m), then a uniform colouring of it.
    Rc,
    /// Multigraph on the bichromatic pairs of the balanced colouring v mod k.
    Bichromatic,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("size").required(true).args(["m", "d"])))]
struct SampleArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    size: Size,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    colouring_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Also count the (ω,n)-balanced colourings.
    #[arg(long)]
    omega: Option<f64>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long = "L", default_value_t = 3)]
    max_len: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum MomentName {
    Alpha,
    B,
    DConst,
    #[value(name = "c_n")]
    CN,
    #[value(name = "big_c_n")]
    BigCN,
    AnConstant,
    Kappa,
    Threshold,
    CondBound,
    SscClosedForm,
    SscSeries,
    Lambda,
    Delta,
    Mu,
    ConditionedRatio,
    FirstTotal,
    FirstTotalSimple,
    FirstBalanced,
    FirstTotalAsymptotic,
    SecondBalancedAsymptotic,
    BalancedRatioExact,
    BalancedRatioAsymptotic,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long, value_enum)]
    name: MomentName,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: Option<usize>,
    /// Cycle length.
    #[arg(long)]
    l: Option<u32>,
    /// Balance parameter; defaults to ln n.
    #[arg(long)]
    omega: Option<f64>,
    /// Cycle counts x_2, x_3, ... for the conditioned ratio.
    #[arg(long, value_delimiter = ',')]
    x: Vec<u64>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OverlapName {
    /// Multi-start maximisation of the second moment exponent.
    Maximize,
    /// Determinant of the constrained Hessian.
    Hessian,
    /// Smallest gap in the Achlioptas-Naor inequality over random balanced overlaps.
    AnGap,
    /// Stability class of a given overlap matrix.
    Stability,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DomainArg {
    Full,
    Balanced,
}

#[derive(Args, Debug)]
struct OverlapArgs {
    #[arg(long, value_enum)]
    name: OverlapName,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long, value_enum, default_value_t = DomainArg::Full)]
    domain: DomainArg,
    #[arg(long, default_value_t = 64)]
    starts: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, required_if_eq_any([("name", "maximize"), ("name", "an-gap")]))]
    seed: Option<u64>,
    /// Row-major entries of a k x k overlap matrix.
    #[arg(long, value_delimiter = ',')]
    matrix: Vec<f64>,
    #[arg(long)]
    kappa: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(EXPERIMENTS))]
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long = "L")]
    max_len: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<u64>>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    w_trials: Option<u64>,
    #[arg(long)]
    eps_tail: Option<f64>,
    #[arg(long)]
    events: Option<usize>,
    /// Extra omega values for the conditioned ratio.
    #[arg(long, value_delimiter = ',')]
    sensitivity: Option<Vec<f64>>,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a failed verdict.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Sample(a) => sample(&a).map(|_| true),
        Command::Count(a) => print_json(count(&a)?).map(|_| true),
        Command::Census(a) => print_json(census(&a)?).map(|_| true),
        Command::Moment(a) => print_json(moment(&a)?).map(|_| true),
        Command::Overlap(a) => print_json(overlap(&a)?).map(|_| true),
        Command::Experiment(a) => experiment(&a),
    }
}

fn print_json(v: Value) -> Result<()> {
    println!("{}", round_value(v));
    Ok(())
}

/// Writes to `out`, else to `$COLOURLAB_OUT_DIR/default_name`, else to stdout.
fn emit(text: &str, out: Option<&PathBuf>, default_name: &str) -> Result<()> {
    let path = match out {
        Some(p) => Some(p.clone()),
        None => std::env::var_os(OUT_DIR_VAR).map(|dir| PathBuf::from(dir).join(default_name)),
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text).with_context(|| format!("in {}", path.display()))
}

fn sample(a: &SampleArgs) -> Result<()> {
    let p = a.size.params(a.n, a.k)?;
    let src = RandomSource::new(a.seed, 0);
    let (graph, colouring) = match a.model {
        Model::Gnm => (sample_gnm_multigraph(a.n, p.m, src)?, None),
        Model::Simple => (sample_gnm_simple(a.n, p.m, src)?, None),
        Model::Planted => {
            let pair = sample_planted_pair(a.n, p.m, a.k, src)?;
            (pair.graph, Some(pair.colouring))
        }
        Model::Rc => {
            let (g, c) = colouring::sample_rc_pair(a.n, p.m, a.k, src)?;
            (g, Some(c))
        }
        Model::Bichromatic => {
            let sigma = balanced_colouring(a.n, a.k)?;
            (
                sample_bichromatic_multigraph(&sigma, p.m, src)?,
                Some(sigma),
            )
        }
    };
    let model = format!("{:?}", a.model).to_lowercase();
    let stem = format!("{model}-n{}-m{}-seed{}", a.n, p.m, a.seed);
    emit(
        &write_graph(&graph),
        a.out.as_ref(),
        &format!("{stem}.edges"),
    )?;
    if let Some(c) = colouring {
        let path = match &a.colouring_out {
            Some(p) => Some(p.clone()),
            None => std::env::var_os(OUT_DIR_VAR)
                .map(|dir| PathBuf::from(dir).join(format!("{stem}.colouring"))),
        };
        if let Some(path) = path {
            emit(
                &format!("{}\n", format_colouring(&c).trim_end()),
                Some(&path),
                "",
            )?;
        }
    } else if a.colouring_out.is_some() {
        bail!("model {model} has no colouring");
    }
    Ok(())
}

fn count(a: &CountArgs) -> Result<Value> {
    let g = load_graph(&a.graph)?;
    let mut v = json!({
        "n": g.n(),
        "m": g.m(),
        "k": a.k,
        "count": count_colourings(&g, a.k)?.to_string(),
    });
    if let Some(omega) = a.omega {
        let c = count_balanced_colourings(&g, a.k, &BalanceParams::new(omega)?)?;
        v["omega"] = json!(omega);
        v["balanced_count"] = json!(c.to_string());
    }
    Ok(v)
}

fn census(a: &CensusArgs) -> Result<Value> {
    let g = load_graph(&a.graph)?;
    let c = cycle_census(&g, a.max_len)?;
    Ok(json!({
        "n": g.n(),
        "m": g.m(),
        "L": a.max_len,
        "lengths": (2..=a.max_len).collect::<Vec<_>>(),
        "counts": c.counts(),
        "intersecting": has_intersecting_cycles(&g, a.max_len)?,
    }))
}

fn need<T: Copy>(x: Option<T>, flag: &str, name: MomentName) -> Result<T> {
    x.ok_or_else(|| anyhow!("moment {} needs --{flag}", name_str(name)))
}

fn moment(a: &MomentArgs) -> Result<Value> {
    use MomentName as M;
    let name = a.name;
    let mut params = Map::new();
    let mut put = |key: &str, v: Value| {
        params.insert(key.to_string(), v);
    };
    let d = || need(a.size.d, "d", name);
    let k = || need(a.k, "k", name);
    let n = || need(a.n, "n", name);
    let l = || need(a.l, "l", name);

    let mut log_value = None;
    let value: Value = match name {
        M::Alpha | M::B | M::DConst | M::AnConstant | M::SscClosedForm => {
            let (d, k) = (d()?, k()?);
            put("d", num(d));
            put("k", json!(k));
            num(match name {
                M::Alpha => moments::alpha(d, k),
                M::B => moments::b_const(d, k),
                M::DConst => moments::d_const(d, k),
                M::AnConstant => an_constant(d, k),
                _ => moments::ssc_closed_form(d, k)?,
            })
        }
        M::SscSeries => {
            let (d, k) = (d()?, k()?);
            put("d", num(d));
            put("k", json!(k));
            put("tol", num(a.tol));
            let s = moments::ssc_series(d, k, a.tol)?;
            put("closed_form", num(s.closed_form));
            put("terms", json!(s.terms));
            put("tail_bound", num(s.tail_bound));
            num(s.partial_sum)
        }
        M::Kappa => {
            let k = k()?;
            put("k", json!(k));
            num(kappa(k))
        }
        M::Threshold => {
            let k = k()?;
            put("k", json!(k));
            num(moments::first_moment_threshold(k)?)
        }
        M::CondBound => {
            let k = k()?;
            put("k", json!(k));
            let (lo, hi) = moments::cond_bound_display(k);
            json!([num(lo), num(hi)])
        }
        M::CN => {
            let (k, n) = (k()?, n()?);
            put("k", json!(k));
            put("n", json!(n));
            num(moments::c_n(k, n))
        }
        M::BigCN => {
            let (d, k, n) = (d()?, k()?, n()?);
            put("d", num(d));
            put("k", json!(k));
            put("n", json!(n));
            num(moments::big_c_n(d, k, n))
        }
        M::Lambda => {
            let (l, d) = (l()?, d()?);
            put("l", json!(l));
            put("d", num(d));
            num(moments::lambda(l, d))
        }
        M::Delta => {
            let (l, k) = (l()?, k()?);
            put("l", json!(l));
            put("k", json!(k));
            num(moments::delta(l, k))
        }
        M::Mu => {
            let (l, d, k) = (l()?, d()?, k()?);
            put("l", json!(l));
            put("d", num(d));
            put("k", json!(k));
            num(moments::mu(l, d, k))
        }
        M::ConditionedRatio => {
            let (d, k) = (d()?, k()?);
            if a.x.is_empty() {
                bail!("moment {} needs --x", name_str(name));
            }
            put("d", num(d));
            put("k", json!(k));
            put("x", json!(a.x));
            num(moments::conditioned_ratio(&a.x, d, k))
        }
        M::FirstTotal | M::FirstTotalSimple | M::FirstBalanced | M::BalancedRatioExact => {
            let (n, k) = (n()?, k()?);
            let p = a.size.params(n, k)?;
            put("n", json!(n));
            put("m", json!(p.m));
            put("d", num(p.d));
            put("k", json!(k));
            let omega = a.omega.unwrap_or((n as f64).ln());
            match name {
                M::FirstTotal => log_value = Some(moments::first_moment_total_ln(&p)),
                M::FirstTotalSimple => log_value = Some(moments::first_moment_total_simple_ln(&p)?),
                M::FirstBalanced => {
                    put("omega", num(omega));
                    log_value = Some(moments::first_moment_balanced_ln(&p, omega));
                }
                _ => put("omega", num(omega)),
            }
            match log_value {
                Some(lv) => num(lv.exp()),
                None => num(moments::balanced_ratio_exact(&p, omega)),
            }
        }
        M::FirstTotalAsymptotic => {
            let (d, k, n) = (d()?, k()?, n()?);
            put("d", num(d));
            put("k", json!(k));
            put("n", json!(n));
            let lv = moments::first_moment_total_asymptotic_ln(d, k, n);
            log_value = Some(lv);
            num(lv.exp())
        }
        M::SecondBalancedAsymptotic | M::BalancedRatioAsymptotic => {
            let (d, k, n) = (d()?, k()?, n()?);
            let omega = a.omega.unwrap_or((n as f64).ln());
            put("d", num(d));
            put("k", json!(k));
            put("n", json!(n));
            put("omega", num(omega));
            if name == M::BalancedRatioAsymptotic {
                num(moments::balanced_ratio_asymptotic(d, k, n, omega))
            } else {
                let lv = moments::second_moment_balanced_asymptotic_ln(d, k, n, omega)?;
                log_value = Some(lv);
                num(lv.exp())
            }
        }
    };
    let label = serde_json::to_value(name_str(name))?;
    let mut out = json!({ "name": label, "params": params, "value": value });
    if let Some(lv) = log_value {
        out["log_value"] = num(lv);
    }
    Ok(out)
}

fn name_str(name: MomentName) -> String {
    name.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn overlap(a: &OverlapArgs) -> Result<Value> {
    let k = a.k;
    match a.name {
        OverlapName::Maximize => {
            let d = a.d.ok_or_else(|| anyhow!("maximize needs --d"))?;
            let domain = match a.domain {
                DomainArg::Full => Domain::Full,
                DomainArg::Balanced => Domain::Balanced,
            };
            let opts = MaximizeOptions {
                starts: a.starts,
                seed: a.seed.unwrap_or(0),
                ..MaximizeOptions::default()
            };
            let report = maximize_f(d, k, domain, &opts)?;
            Ok(json!({ "name": "maximize", "d": d, "k": k, "domain": domain, "report": report }))
        }
        OverlapName::Hessian => {
            let (det, expected) = det_check(k)?;
            Ok(json!({
                "name": "hessian",
                "k": k,
                "det": det,
                "expected": expected,
                "relative_error": (det / expected - 1.0).abs(),
            }))
        }
        OverlapName::AnGap => {
            let km1 = (k.max(2) - 1) as f64;
            let d = a.d.unwrap_or(0.99 * 2.0 * km1 * km1.ln());
            let mut rng = RandomSource::new(a.seed.unwrap_or(0), 0).rng();
            let mut worst = f64::INFINITY;
            for i in 0..a.trials {
                let shape = if i % 2 == 0 { 1.0 } else { 0.2 };
                worst = worst.min(achlioptas_naor_gap(
                    &sample_balanced_overlap(k, shape, &mut rng),
                    d,
                )?);
            }
            Ok(json!({
                "name": "an_gap",
                "d": d,
                "k": k,
                "trials": a.trials,
                "an_constant": an_constant(d, k),
                "min_gap": num(worst),
            }))
        }
        OverlapName::Stability => {
            let rho = OverlapMatrix::new(k, a.matrix.clone())?;
            let kap = a.kappa.unwrap_or_else(|| kappa(k));
            let class = classify_stability_with_kappa(&rho, kap);
            Ok(json!({ "name": "stability", "k": k, "kappa": num(kap), "class": class }))
        }
    }
}

fn experiment(a: &ExperimentArgs) -> Result<bool> {
    let cfg = ExperimentConfig {
        name: a.name.clone(),
        n: a.n,
        n_list: a.n_list.clone(),
        m: a.size.m,
        d: a.size.d,
        k: a.k,
        omega: a.omega,
        max_len: a.max_len,
        x: a.x.clone(),
        trials: a.trials,
        w_trials: a.w_trials,
        eps_tail: a.eps_tail,
        events: a.events,
        sensitivity: a.sensitivity.clone(),
        seed: a.seed,
    };
    let rec = run_experiment(&cfg)?;
    let (text, ext) = match a.format {
        Format::Json => (format!("{}\n", rec.to_json_line()), "jsonl"),
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for row in rec.csv_rows() {
                s.push_str(&row);
                s.push('\n');
            }
            (s, "csv")
        }
    };
    emit(
        &text,
        a.out.as_ref(),
        &format!("{}-seed{}.{ext}", a.name, a.seed),
    )?;
    eprintln!("{}: {}", a.name, if rec.passed() { "pass" } else { "fail" });
    Ok(rec.passed())
}
