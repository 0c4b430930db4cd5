use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rankmetric::adversary::{auto_tau, build_adversary, verify_adversary, Strategy};
use rankmetric::codes::{default_alpha, RankCode};
use rankmetric::constructions::{pigeonhole_family, shift_compose, trace_family, trinomial_family};
use rankmetric::descriptor::{
    AlphaSpec, CodeDescriptor, ExperimentConfig, FamilyJson, FieldSpec, OutputFormat, ReportJson, TauSpec,
};
use rankmetric::galois::{is_prime, Fe, FieldTower, NormTarget};
use rankmetric::linearized::Subspace;
use rankmetric::oracle::{ball_count_if_enumerable, ball_intersection_count, EnumGuard};
use rankmetric::selftest;

#[derive(Parser)]
#[command(name = "rankmetric", version, about = "Rank-metric codes and large decoding lists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFamily {
    Trace,
    Trinomial,
    Pigeonhole,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a family of subspace polynomials as JSON.
    Construct {
        #[arg(long, value_enum)]
        family: ConstructFamily,
        /// Field spec p^ell:n:m[:modulus_hex]
        #[arg(long)]
        field: String,
        /// Trace: t | n. Trinomial: n = (t-1)t+1.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Pigeonhole subspace dimension.
        #[arg(long)]
        r: Option<usize>,
        /// Pigeonhole: number of agreed top coefficients (leading one included).
        #[arg(long)]
        g: Option<usize>,
        /// Compose every member with x^σ.
        #[arg(long)]
        shift: bool,
    },
    /// Build a received word with a large list and report it as JSON.
    Attack {
        /// Code descriptor JSON, or @file.
        #[arg(long)]
        code: String,
        #[arg(long)]
        strategy: String,
        /// Radius, or "auto".
        #[arg(long, default_value = "auto")]
        tau: String,
        /// Also count the ball by enumerating the code.
        #[arg(long)]
        oracle: bool,
    },
    /// Re-check a saved report from scratch.
    Verify {
        #[arg(long)]
        report: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Sweep n and emit one CSV row per experiment.
    Table {
        /// G, H, Hbar or D.
        #[arg(long, default_value = "G")]
        family: String,
        #[arg(long)]
        q: u64,
        /// Comma-separated lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma-separated extension degrees (default m = n); one per n or a single value.
        #[arg(long, value_delimiter = ',')]
        m: Vec<usize>,
        /// Default depends on the strategy.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        strategy: String,
        #[arg(long, default_value = "auto")]
        tau: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let guard = EnumGuard::from_env()?;
    match cli.command {
        Command::Construct { family, field, t, s, r, g, shift } => construct(family, &field, t, s, r, g, shift, &guard),
        Command::Attack { code, strategy, tau, oracle } => {
            let desc = CodeDescriptor::from_json(&read_arg(&code)?)?;
            let config =
                ExperimentConfig { code: desc, strategy: strategy.parse()?, tau: tau.parse()?, oracle, format: OutputFormat::Json };
            attack(&config, &guard)
        }
        Command::Verify { report, oracle } => verify(&report, oracle, &guard),
        Command::Table { family, q, n, m, k, strategy, tau, oracle } => {
            table(&family, q, &n, &m, k, strategy.parse()?, tau.parse()?, oracle, &guard)
        }
        Command::Selftest => {
            let results = selftest::run_all();
            for r in &results {
                println!("{r}");
            }
            Ok(results.iter().all(|r| r.passed))
        }
    }
}

/// A literal argument, or the contents of a file when prefixed with `@`.
fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(arg.to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: ConstructFamily,
    field: &str,
    t: Option<usize>,
    s: usize,
    r: Option<usize>,
    g: Option<usize>,
    shift: bool,
    guard: &EnumGuard,
) -> Result<bool> {
    let spec: FieldSpec = field.parse()?;
    let tower = spec.build()?;
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required for this family"));
    let fam = match family {
        ConstructFamily::Trace => trace_family(&tower, need(t, "t")?, s)?,
        ConstructFamily::Trinomial => trinomial_family(&tower, need(t, "t")?)?,
        ConstructFamily::Pigeonhole => {
            let space = match Subspace::subfield(&tower) {
                Ok(sub) => sub,
                Err(_) => Subspace::new(&tower, default_alpha(&tower))?,
            };
            let ph = pigeonhole_family(&tower, &space, need(r, "r")?, need(g, "g")?, s, guard)?;
            eprintln!(
                "{} subspaces in {} classes; largest class {} (guaranteed {})",
                ph.total,
                ph.class_sizes.len(),
                ph.largest.len(),
                ph.bound
            );
            ph.largest
        }
    };
    let fam = if shift { shift_compose(&tower, &fam)? } else { fam };
    println!("{}", serde_json::to_string_pretty(&FamilyJson::new(&spec, &fam))?);
    Ok(true)
}

fn resolve_tau(code: &RankCode, strategy: Strategy, tau: TauSpec) -> Result<usize> {
    Ok(match tau {
        TauSpec::Fixed(t) => t,
        TauSpec::Auto => auto_tau(code, strategy)?,
    })
}

fn attack(config: &ExperimentConfig, guard: &EnumGuard) -> Result<bool> {
    let code = config.code.build()?;
    let tau = resolve_tau(&code, config.strategy, config.tau)?;
    let mut report = build_adversary(&code, config.strategy, tau, guard)?;
    if config.oracle {
        report.oracle_count = Some(ball_intersection_count(&code, &report.center, report.radius, guard)?);
    }
    let json = ReportJson::new(config, &code, &report);
    println!("{}", json.to_json_pretty());
    Ok(json.valid)
}

fn verify(path: &str, oracle: bool, guard: &EnumGuard) -> Result<bool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let saved = ReportJson::from_json(&text)?;
    let code = saved.config.code.build()?;
    let checked = verify_adversary(&code, &saved.to_report()?, oracle, guard)?;
    let json = ReportJson::new(&saved.config, &code, &checked);
    println!("{}", json.to_json_pretty());
    for w in &checked.witnesses {
        match w.index {
            Some(i) => eprintln!("failed {} at list index {i}: {}", w.check, w.detail),
            None => eprintln!("failed {}: {}", w.check, w.detail),
        }
    }
    Ok(json.valid)
}

/// `(p, ell)` with `p^ell = q`.
fn prime_power(q: u64) -> Result<(u32, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(|| anyhow!("q={q} is not a prime power"))?;
    let (mut x, mut ell) = (q, 0);
    while x % p == 0 {
        x /= p;
        ell += 1;
    }
    if x != 1 || !is_prime(p) {
        bail!("q={q} is not a prime power");
    }
    Ok((p as u32, ell))
}

fn default_k(strategy: Strategy, n: usize) -> usize {
    match strategy {
        Strategy::Trinomial => 2,
        _ => (n / 2).max(1),
    }
}

/// The smallest `η` making `family` valid at these parameters.
fn default_eta(tower: &FieldTower, family: &str, k: usize) -> Option<Fe> {
    let m = tower.m();
    let sign = if (m * k).is_multiple_of(2) { Fe::ONE } else { tower.minus_one() };
    let top = tower.top();
    top.nonzero_elements().find(|&e| match family {
        "H" => tower.norm(e, NormTarget::Fq) != sign,
        "Hbar" => tower.norm(e, NormTarget::Fp) != sign,
        "D" => top.pow(tower.norm(e, NormTarget::Fq), (tower.q() - 1) / 2) != Fe::ONE,
        _ => false,
    })
}

fn table_descriptor(family: &str, spec: &FieldSpec, k: usize) -> Result<CodeDescriptor> {
    let mut desc = CodeDescriptor::gabidulin(spec, k, 1);
    desc.family = family.to_string();
    desc.alpha = AlphaSpec::default();
    if family != "G" {
        let tower = spec.build()?;
        let eta = default_eta(&tower, family, k).ok_or_else(|| anyhow!("no valid eta for {family} at {spec}"))?;
        desc.eta = Some(eta.0.to_string());
        if family != "D" {
            desc.h = Some(1);
        }
    }
    Ok(desc)
}

#[allow(clippy::too_many_arguments)]
fn table(
    family: &str,
    q: u64,
    ns: &[usize],
    ms: &[usize],
    k: Option<usize>,
    strategy: Strategy,
    tau: TauSpec,
    oracle: bool,
    guard: &EnumGuard,
) -> Result<bool> {
    let (p, ell) = prime_power(q)?;
    if !ms.is_empty() && ms.len() != 1 && ms.len() != ns.len() {
        bail!("--m takes one value or one per --n");
    }
    println!("family,q,n,m,k,d,tau,claimed_bound,achieved_list,oracle_count,valid");
    let mut all_valid = true;
    for (i, &n) in ns.iter().enumerate() {
        let m = match ms.len() {
            0 => n,
            1 => ms[0],
            _ => ms[i],
        };
        let k = k.unwrap_or_else(|| default_k(strategy, n));
        let d = (n + 1).saturating_sub(k);
        let row = (|| -> Result<(usize, String, usize, String, bool)> {
            let spec = FieldSpec::new(p, ell, n, m);
            let code = table_descriptor(family, &spec, k)?.build()?;
            let tau = resolve_tau(&code, strategy, tau)?;
            let mut report = build_adversary(&code, strategy, tau, guard)?;
            let count = if oracle { ball_count_if_enumerable(&code, &report.center, report.radius, guard)? } else { None };
            report.oracle_count = count.clone();
            let count = count.map_or("-".to_string(), |c| c.to_string());
            Ok((tau, report.claimed_bound.to_string(), report.list.len(), count, report.valid()))
        })();
        match row {
            Ok((tau, claimed, achieved, count, valid)) => {
                all_valid &= valid;
                println!("{family},{q},{n},{m},{k},{d},{tau},{claimed},{achieved},{count},{valid}");
            }
            Err(e) => {
                all_valid = false;
                eprintln!("n={n}, m={m}, k={k}: {e:#}");
                println!("{family},{q},{n},{m},{k},{d},-,-,-,-,false");
            }
        }
    }
    Ok(all_valid)
}
