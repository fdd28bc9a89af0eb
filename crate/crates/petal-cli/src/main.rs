//! `petal` — build Petal consensus networks, compute SLEMs, reproduce the
//! published tables, verify weight optimality, and simulate convergence.
//!
//! Exit codes: 0 success, 1 tolerance gate failed (tables/verify), 2 invalid
//! spec or arguments, 3 internal numeric failure.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use petal_core::{
    assemble_matrix, audit_paper_formulas, build_certificate_nearest, build_graph, impulse_x0,
    metropolis_hastings_weights, optimal_weights, optimality_oracle, run_consensus,
    simulate::asymptotic_rate,
    slackness_check, slem_quotient,
    spectral::quotient_matrices,
    tables::{COMPLETE_CORE_TABLE, SINGLE_HUB_TABLE, TABLE_TOL},
    CoreKind, PetalError, PetalSpec, Scheme, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "petal", version, about = "Petal consensus network toolkit")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
    /// RNG seed (random initial vectors)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance override for the tables/verify gates
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct SpecArgs {
    /// Core kind
    #[arg(long, value_parser = parse_core, default_value = "hub")]
    core: CoreKind,
    /// Number of leaves
    #[arg(short = 'n', long, default_value_t = 2)]
    n: usize,
    /// Path length (path-bundle leaves)
    #[arg(short = 'm', long)]
    m: Option<usize>,
    /// Path multiplicity (path-bundle leaves)
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// JSON spec file; the only way to express composite/G leaves
    #[arg(long, conflicts_with_all = ["m", "k"])]
    spec_file: Option<String>,
}

fn parse_core(s: &str) -> Result<CoreKind, String> {
    match s {
        "hub" | "single_hub" => Ok(CoreKind::SingleHub),
        "complete" | "complete_core" | "ccs" => Ok(CoreKind::CompleteCore),
        other => Err(format!("unknown core kind '{other}' (hub|complete)")),
    }
}

impl SpecArgs {
    fn resolve(&self) -> Result<PetalSpec, CliError> {
        if let Some(path) = &self.spec_file {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))?;
            let spec: PetalSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("bad spec file {path}: {e}")))?;
            spec.validate()?;
            return Ok(spec);
        }
        let (m, k) = match (self.m, self.k) {
            (Some(m), Some(k)) => (m, k),
            _ => {
                return Err(CliError::Validation(
                    "need -m and -k, or --spec-file".into(),
                ))
            }
        };
        Ok(PetalSpec::path_bundle(self.core, self.n, m, k)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph and emit its structure
    Build(SpecArgs),
    /// Compute the SLEM via the stratified quotients
    Slem(SpecArgs),
    /// Emit the analytic or Metropolis-Hastings weight classes
    Weights {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_parser = ["optimal", "mh"], default_value = "optimal")]
        scheme: String,
    },
    /// Reproduce the published SLEM tables; nonzero exit on any deviation
    Tables,
    /// Run consensus with optimal and Metropolis-Hastings weights
    Simulate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Rate-estimate window
        #[arg(long, default_value_t = 50)]
        window: usize,
        /// Initial vector: deterministic impulse or seeded uniform noise
        #[arg(long, value_parser = ["impulse", "random"], default_value = "impulse")]
        initial: String,
    },
    /// Compare the printed closed forms against computed SLEMs
    Audit,
    /// Slackness certificate + optimization oracle; nonzero exit on failure
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Perturb one class weight, e.g. --perturb w2=+0.05
        #[arg(long)]
        perturb: Option<String>,
        /// Skip the (slower) derivative-free oracle
        #[arg(long)]
        no_oracle: bool,
    },
}

enum CliError {
    Validation(String),
    Numeric(String),
    Gate(String),
}

impl From<PetalError> for CliError {
    fn from(e: PetalError) -> CliError {
        match e {
            PetalError::InvalidSpec(_) => CliError::Validation(e.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let payload = if output.ends_with('\n') {
                output
            } else {
                format!("{output}\n")
            };
            match &cli.out {
                None => {
                    print!("{payload}");
                    ExitCode::SUCCESS
                }
                Some(path) => match fs::write(path, payload) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: cannot write {path}: {e}");
                        ExitCode::from(2)
                    }
                },
            }
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Gate(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Build(spec) => cmd_build(cli, &spec.resolve()?),
        Command::Slem(spec) => cmd_slem(cli, &spec.resolve()?),
        Command::Weights { spec, scheme } => cmd_weights(cli, &spec.resolve()?, scheme),
        Command::Tables => cmd_tables(cli),
        Command::Simulate {
            spec,
            steps,
            window,
            initial,
        } => cmd_simulate(cli, &spec.resolve()?, *steps, *window, initial),
        Command::Audit => cmd_audit(cli),
        Command::Verify {
            spec,
            perturb,
            no_oracle,
        } => cmd_verify(cli, &spec.resolve()?, perturb.as_deref(), *no_oracle),
    }
}

fn json_doc(body: serde_json::Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    if let serde_json::Value::Object(map) = body {
        doc.extend(map);
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(doc)).unwrap()
}

fn cmd_build(cli: &Cli, spec: &PetalSpec) -> Result<String, CliError> {
    let g = build_graph(spec)?;
    Ok(match cli.format {
        Format::Json => json_doc(serde_json::json!({
            "spec": spec.describe(),
            "graph": g.to_json(),
        })),
        Format::Csv => {
            let mut s = String::from("u,v,class\n");
            for (e, &(u, v)) in g.edges.iter().enumerate() {
                s.push_str(&format!("{u},{v},{}\n", g.edge_class[e]));
            }
            s
        }
        Format::Md => {
            let mut s = format!(
                "# {}\n\nnodes: {}  edges: {}  strata: {}\n\n```dot\n",
                spec.describe(),
                g.node_count,
                g.edges.len(),
                g.stratum_count()
            );
            s.push_str(&g.to_dot());
            s.push_str("```\n");
            s
        }
    })
}

fn cmd_slem(cli: &Cli, spec: &PetalSpec) -> Result<String, CliError> {
    let weights = optimal_weights(spec)?;
    let report = slem_quotient(&quotient_matrices(spec, &weights)?)?;
    Ok(match cli.format {
        Format::Json => json_doc(report.to_json(Some(spec))),
        Format::Csv => format!(
            "spec,slem,theta,convergence_factor\n{},{:.10},{:.10},{:.10}\n",
            spec.describe(),
            report.slem,
            report.theta,
            report.convergence_factor
        ),
        Format::Md => format!(
            "| spec | slem | theta |\n|---|---|---|\n| {} | {:.5} | {:.5} |\n",
            spec.describe(),
            report.slem,
            report.theta
        ),
    })
}

fn cmd_weights(cli: &Cli, spec: &PetalSpec, scheme: &str) -> Result<String, CliError> {
    let assignment = match scheme {
        "optimal" => optimal_weights(spec)?,
        _ => metropolis_hastings_weights(&build_graph(spec)?)?,
    };
    Ok(match cli.format {
        Format::Json => json_doc(serde_json::json!({
            "spec": spec.describe(),
            "weights": assignment.to_json(),
        })),
        Format::Csv => {
            let mut s = String::from("class,weight\n");
            if assignment.core_weight.is_some() {
                s.push_str(&format!("w0,{}\n", assignment.class_weight(0).unwrap()));
            }
            for (i, w) in assignment.depth_weights.iter().enumerate() {
                s.push_str(&format!("w{},{w}\n", i + 1));
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| class | weight |\n|---|---|\n");
            if let Some(w) = assignment.core_weight {
                s.push_str(&format!("| w0 (core) | {w} |\n"));
            }
            for (i, w) in assignment.depth_weights.iter().enumerate() {
                s.push_str(&format!("| w{} | {w} |\n", i + 1));
            }
            s
        }
    })
}

fn cmd_tables(cli: &Cli) -> Result<String, CliError> {
    let tol = cli.tol.unwrap_or(TABLE_TOL);
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for (core, table) in [
        (CoreKind::SingleHub, &SINGLE_HUB_TABLE),
        (CoreKind::CompleteCore, &COMPLETE_CORE_TABLE),
    ] {
        for &(n, m, k, published) in table.iter() {
            let spec = PetalSpec::path_bundle(core, n, m, k)?;
            let computed =
                slem_quotient(&quotient_matrices(&spec, &optimal_weights(&spec)?)?)?.slem;
            let diff = (computed - published).abs();
            worst = worst.max(diff);
            rows.push((core, n, m, k, computed, published, diff));
        }
    }
    let body = match cli.format {
        Format::Json => json_doc(serde_json::json!({
            "tolerance": tol,
            "worst_difference": worst,
            "pass": worst <= tol,
            "rows": rows.iter().map(|(c, n, m, k, comp, publ, d)| serde_json::json!({
                "core": c.to_string(), "n": n, "m": m, "k": k,
                "computed": comp, "published": publ, "difference": d,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("core,n,m,k,computed,published,difference\n");
            for (c, n, m, k, comp, publ, d) in &rows {
                s.push_str(&format!("{c},{n},{m},{k},{comp:.10},{publ},{d:.2e}\n"));
            }
            s
        }
        Format::Md => {
            let mut s =
                String::from("| core | n | m | k | computed | published | diff |\n|---|---|---|---|---|---|---|\n");
            for (c, n, m, k, comp, publ, d) in &rows {
                s.push_str(&format!(
                    "| {c} | {n} | {m} | {k} | {comp:.5} | {publ} | {d:.2e} |\n"
                ));
            }
            s
        }
    };
    if worst > tol {
        return Err(CliError::Gate(format!(
            "{body}\ntable reproduction failed: worst difference {worst:.2e} > {tol:.0e}"
        )));
    }
    Ok(body)
}

fn cmd_simulate(
    cli: &Cli,
    spec: &PetalSpec,
    steps: usize,
    window: usize,
    initial: &str,
) -> Result<String, CliError> {
    let g = build_graph(spec)?;
    let x0 = match initial {
        "impulse" => impulse_x0(&g),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            (0..g.node_count)
                .map(|_| rng.random_range(0.0..1.0))
                .collect()
        }
    };
    let w_opt = assemble_matrix(&g, &optimal_weights(spec)?)?;
    let w_mh = assemble_matrix(&g, &metropolis_hastings_weights(&g)?)?;
    let opt = run_consensus(&w_opt, &x0, steps, "optimal", initial)?;
    let mh = run_consensus(&w_mh, &x0, steps, "metropolis_hastings", initial)?;
    let rate = |t: &petal_core::Trajectory| asymptotic_rate(t, window.min(steps)).ok();
    Ok(match cli.format {
        Format::Json => json_doc(serde_json::json!({
            "spec": spec.describe(),
            "steps": steps,
            "initial": initial,
            "rate_optimal": rate(&opt),
            "rate_metropolis_hastings": rate(&mh),
            "mass_drift_optimal": opt.mass_drift,
            "mass_drift_metropolis_hastings": mh.mass_drift,
            "distances_optimal": opt.distances,
            "distances_metropolis_hastings": mh.distances,
        })),
        Format::Csv | Format::Md => {
            let mut s = String::from("t,distance_optimal,distance_metropolis_hastings\n");
            for (t, (a, b)) in opt.distances.iter().zip(&mh.distances).enumerate() {
                s.push_str(&format!("{t},{a:.16e},{b:.16e}\n"));
            }
            s
        }
    })
}

fn cmd_audit(cli: &Cli) -> Result<String, CliError> {
    let mut specs = Vec::new();
    for (core, table) in [
        (CoreKind::SingleHub, &SINGLE_HUB_TABLE),
        (CoreKind::CompleteCore, &COMPLETE_CORE_TABLE),
    ] {
        for &(n, m, k, _) in table.iter() {
            specs.push(PetalSpec::path_bundle(core, n, m, k)?);
        }
    }
    let report = audit_paper_formulas(&specs)?;
    Ok(match cli.format {
        Format::Json => json_doc(serde_json::json!({
            "tolerance": report.tolerance,
            "matches": report.match_count(),
            "records": report.records,
        })),
        Format::Md | Format::Csv => report.to_markdown(),
    })
}

fn cmd_verify(
    cli: &Cli,
    spec: &PetalSpec,
    perturb: Option<&str>,
    no_oracle: bool,
) -> Result<String, CliError> {
    let tol = cli.tol.unwrap_or(1e-4);
    let mut weights = optimal_weights(spec)?;
    if let Some(p) = perturb {
        let (class, delta) = parse_perturb(p)?;
        let delta = Ratio::approximate_float(delta)
            .ok_or_else(|| CliError::Validation(format!("bad perturbation '{p}'")))?;
        weights = weights.perturbed(class, delta)?;
    }
    let pair = quotient_matrices(spec, &weights)?;
    let s = slem_quotient(&pair)?.slem;
    let cert = build_certificate_nearest(&pair, s)?;
    let slack = slackness_check(&cert);
    let gap_ok = cert.gap <= tol.max(slack.tolerance);

    let oracle = if no_oracle || weights.scheme == Scheme::Custom {
        None
    } else {
        Some(optimality_oracle(spec, 400)?)
    };
    let oracle_ok = oracle.as_ref().is_none_or(|o| o.improvement <= tol);
    let pass = slack.pass && gap_ok && oracle_ok;

    let body = match cli.format {
        Format::Json => json_doc(serde_json::json!({
            "spec": spec.describe(),
            "slem": s,
            "certificate": cert,
            "slackness": slack,
            "oracle": oracle,
            "pass": pass,
        })),
        Format::Csv => format!(
            "spec,slem,residual_primal,residual_dual,gap,orthogonality,oracle_improvement,pass\n{},{s:.10},{:.2e},{:.2e},{:.2e},{:.2e},{},{pass}\n",
            spec.describe(),
            cert.residual_primal,
            cert.residual_dual,
            cert.gap,
            cert.orthogonality,
            oracle.as_ref().map_or("-".into(), |o| format!("{:.2e}", o.improvement)),
        ),
        Format::Md => format!(
            "| spec | slem | gap | slackness | oracle | verdict |\n|---|---|---|---|---|---|\n| {} | {s:.5} | {:.2e} | {} | {} | {} |\n",
            spec.describe(),
            cert.gap,
            if slack.pass { "pass" } else { "fail" },
            oracle
                .as_ref()
                .map_or("skipped".into(), |o| format!("{:+.2e}", o.improvement)),
            if pass { "optimal" } else { "not optimal" },
        ),
    };
    if pass {
        Ok(body)
    } else {
        Err(CliError::Gate(format!("{body}\nverification failed")))
    }
}

/// "w2=+0.05" -> (2, 0.05)
fn parse_perturb(s: &str) -> Result<(usize, f64), CliError> {
    let bad = || CliError::Validation(format!("bad --perturb '{s}', expected wN=+delta"));
    let (name, value) = s.split_once('=').ok_or_else(bad)?;
    let class: usize = name
        .strip_prefix('w')
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    let delta: f64 = value.parse().map_err(|_| bad())?;
    Ok((class, delta))
}
