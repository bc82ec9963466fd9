//! Command-line front end: generate character tables and crystal graphs,
//! verify the crystal axioms and the highest-weight characterization, and
//! run the quiver-side samplers and invariant checks.
//!
//! Exit codes: 0 all requested checks passed, 1 a check failed, 2 input or
//! parse error, 3 internal verification failure (postcondition or retry
//! budget). Failures print a JSON diagnostic naming the violated invariant.

use clap::{Parser, Subcommand, ValueEnum};
use quivercrystal::binfinity::{generate_binf_tensor_graph, generate_blambda_default};
use quivercrystal::cartan::{CartanDatum, WeightVector};
use quivercrystal::crystal::{
    check_axioms, generate_graph, verify_highest_weight_characterization, FiniteCrystal,
    TensorProduct,
};
use quivercrystal::error::Error;
use quivercrystal::quiver::{
    dimension_identity, free_action_checks, sample_lagrangian_point, ADHMDatum, DoubledQuiver,
    GradedDims,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcr", about = "crystal and quiver-representation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct TypeArgs {
    /// Cartan preset name (A1, A2, ..., D4, ..., E8).
    #[arg(long = "type", value_name = "PRESET")]
    type_name: Option<String>,
    /// Path to a JSON file {"rank": n, "matrix": [[..]]}.
    #[arg(long, value_name = "PATH", conflicts_with = "type_name")]
    matrix: Option<PathBuf>,
}

impl TypeArgs {
    fn cartan(&self) -> Result<CartanDatum, Error> {
        match (&self.type_name, &self.matrix) {
            (Some(name), None) => CartanDatum::preset(name),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                CartanDatum::from_spec_str(&text)
            }
            _ => Err(Error::Parse(
                "exactly one of --type or --matrix is required".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the truncated character table of the highest-weight module.
    Character {
        #[command(flatten)]
        ty: TypeArgs,
        /// Comma-separated fundamental-weight coefficients of lambda.
        #[arg(long)]
        lam: String,
        /// Height cutoff for listed weights.
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the highest-weight crystal graph.
    Crystal {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        lam: String,
        /// Height-distance cap on generated elements.
        #[arg(long, default_value_t = 30)]
        depth: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run axiom, character, and characterization checks on a generated crystal.
    Verify {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        lam: String,
        #[arg(long, default_value_t = 30)]
        depth: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose the tensor product of two generated crystals into components.
    Tensor {
        #[command(flatten)]
        ty: TypeArgs,
        /// Left factor highest weight.
        #[arg(long)]
        lam: String,
        /// Right factor highest weight.
        #[arg(long)]
        lam2: String,
        #[arg(long, default_value_t = 30)]
        depth: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a stable zero of the moment map with nilpotent B, as JSON.
    QuiverSample {
        #[command(flatten)]
        ty: TypeArgs,
        /// Dimension vectors, e.g. "v=1,1;w=2,1".
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite on sampled points (or a datum file).
    QuiverCheck {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, required_unless_present = "datum")]
        dims: Option<String>,
        /// Check an existing datum JSON instead of sampling.
        #[arg(long)]
        datum: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled points to check.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep random dimension vectors and test the dimension identity.
    DimIdentity {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper bound on each v_i and w_i.
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_lam(cartan: &CartanDatum, text: &str) -> Result<WeightVector, Error> {
    let coeffs: Result<Vec<i64>, _> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect();
    let coeffs = coeffs.map_err(|e| Error::Parse(format!("bad weight list '{text}': {e}")))?;
    if coeffs.len() != cartan.rank() {
        return Err(Error::Parse(format!(
            "weight has {} entries, rank is {}",
            coeffs.len(),
            cartan.rank()
        )));
    }
    Ok(WeightVector::from_lam(coeffs))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => println!("{content}"),
    }
    Ok(())
}

/// A command outcome: the report to print and whether every check passed.
struct Outcome {
    report: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out_path, result) = run(cli.command);
    match result {
        Ok(outcome) => {
            if emit(&out_path, &outcome.report).is_err() {
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let code = match &err {
                Error::PostconditionFailed(_)
                | Error::RetryBudgetExhausted(_)
                | Error::DepthTooSmall { .. } => 3u8,
                _ => 2u8,
            };
            let diag = json!({
                "error": err.to_string(),
                "exit_code": code,
            });
            println!("{diag}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> (Option<PathBuf>, Result<Outcome, Error>) {
    match command {
        Command::Character {
            ty,
            lam,
            bound,
            format,
            out,
        } => (out, cmd_character(&ty, &lam, bound, format)),
        Command::Crystal {
            ty,
            lam,
            depth,
            format,
            out,
        } => (out, cmd_crystal(&ty, &lam, depth, format)),
        Command::Verify {
            ty,
            lam,
            depth,
            out,
        } => (out, cmd_verify(&ty, &lam, depth)),
        Command::Tensor {
            ty,
            lam,
            lam2,
            depth,
            out,
        } => (out, cmd_tensor(&ty, &lam, &lam2, depth)),
        Command::QuiverSample {
            ty,
            dims,
            seed,
            out,
        } => (out, cmd_quiver_sample(&ty, &dims, seed)),
        Command::QuiverCheck {
            ty,
            dims,
            datum,
            seed,
            count,
            out,
        } => (out, cmd_quiver_check(&ty, dims.as_deref(), &datum, seed, count)),
        Command::DimIdentity {
            ty,
            count,
            seed,
            max_dim,
            out,
        } => (out, cmd_dim_identity(&ty, count, seed, max_dim)),
    }
}

fn cmd_character(
    ty: &TypeArgs,
    lam: &str,
    bound: i64,
    format: TableFormat,
) -> Result<Outcome, Error> {
    let cartan = ty.cartan()?;
    let lam = parse_lam(&cartan, lam)?;
    let table = cartan.weyl_kac_character(&lam, bound)?;
    let report = match format {
        TableFormat::Json => serde_json::to_string_pretty(&table.to_json())?,
        TableFormat::Csv => {
            let mut lines = vec!["nu,multiplicity".to_string()];
            for (nu, mult) in &table.entries {
                let nu_str: Vec<String> = nu.iter().map(|c| c.to_string()).collect();
                lines.push(format!("\"{}\",{}", nu_str.join(" "), mult));
            }
            lines.join("\n")
        }
    };
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn cmd_crystal(
    ty: &TypeArgs,
    lam: &str,
    depth: i64,
    format: GraphFormat,
) -> Result<Outcome, Error> {
    let cartan = ty.cartan()?;
    let lam = parse_lam(&cartan, lam)?;
    let graph = generate_blambda_default(&cartan, &lam, depth)?;
    let report = match format {
        GraphFormat::Json => serde_json::to_string_pretty(&graph.to_json())?,
        GraphFormat::Dot => graph.to_dot(),
    };
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn cmd_verify(ty: &TypeArgs, lam_text: &str, depth: i64) -> Result<Outcome, Error> {
    let cartan = ty.cartan()?;
    let lam = parse_lam(&cartan, lam_text)?;
    let graph = generate_blambda_default(&cartan, &lam, depth)?;

    let axiom_report = check_axioms(&graph, &cartan)?;
    let axiom_violations: Vec<String> = axiom_report
        .violations
        .iter()
        .map(|v| format!("[{}] {}: {}", v.axiom, v.element, v.detail))
        .collect();

    // Character comparison: the census of the generated graph against the
    // truncated character table, weight by weight.
    let mut character_mismatches = Vec::new();
    let char_ok = if cartan.is_finite_type() {
        let used_depth = graph.max_ht_distance(&lam);
        let table = cartan.weyl_kac_character(&lam, used_depth)?;
        let census = graph.weight_census(&lam);
        for (nu, mult) in &table.entries {
            let got = census.get(nu).copied().unwrap_or(0);
            if got != *mult {
                character_mismatches
                    .push(format!("weight {nu:?}: graph {got}, character {mult}"));
            }
        }
        for (nu, got) in &census {
            if table.multiplicity(nu) != *got {
                let expect = table.multiplicity(nu);
                if expect == 0 {
                    character_mismatches
                        .push(format!("weight {nu:?}: graph {got}, character {expect}"));
                }
            }
        }
        character_mismatches.is_empty()
    } else {
        true
    };

    // Highest-weight characterization against the unguarded truncation.
    let iota = quivercrystal::binfinity::IotaSequence::default_cycle(cartan.rank());
    let used_depth = graph.max_ht_distance(&lam);
    let domain = generate_binf_tensor_graph(&cartan, &iota, &lam, used_depth + 1)?;
    let top_key = quivercrystal::binfinity::tensor_key(
        &quivercrystal::binfinity::StringElement::b0(),
        &lam,
    );
    let characterization =
        verify_highest_weight_characterization(&cartan, &graph, &top_key, &lam, &domain, &top_key)?;

    let passed =
        axiom_violations.is_empty() && char_ok && characterization.pass() && !graph.truncated;
    let report = serde_json::to_string_pretty(&json!({
        "elements": graph.len(),
        "truncated": graph.truncated,
        "axiom_violations": axiom_violations,
        "character_mismatches": character_mismatches,
        "characterization_witnesses": characterization.witnesses(),
        "passed": passed,
    }))?;
    Ok(Outcome { report, passed })
}

fn cmd_tensor(ty: &TypeArgs, lam1: &str, lam2: &str, depth: i64) -> Result<Outcome, Error> {
    let cartan = ty.cartan()?;
    let w1 = parse_lam(&cartan, lam1)?;
    let w2 = parse_lam(&cartan, lam2)?;
    let g1 = generate_blambda_default(&cartan, &w1, depth)?;
    let g2 = generate_blambda_default(&cartan, &w2, depth)?;
    let left = FiniteCrystal::new(g1);
    let right = FiniteCrystal::new(g2);
    let seeds: Vec<(usize, usize)> = left
        .indices()
        .flat_map(|a| right.indices().map(move |b| (a, b)))
        .collect();
    let product = TensorProduct::new(cartan.clone(), left, right);
    let graph = generate_graph(
        &product,
        seeds,
        |_, _| true,
        |_, _, _| true,
        |_, _, _| true,
    )?;
    let components = graph.connected_components();
    let sizes: Vec<usize> = components.iter().map(|c| c.len()).collect();
    let tops: Vec<Value> = components
        .iter()
        .map(|c| {
            // The component's source elements (no incoming edges).
            let sources: Vec<&str> = (0..c.len())
                .filter(|&idx| (0..c.rank()).all(|i| c.e_edge(idx, i).is_none()))
                .map(|idx| c.element(idx).key.as_str())
                .collect();
            json!({
                "size": c.len(),
                "sources": sources,
            })
        })
        .collect();
    let report = serde_json::to_string_pretty(&json!({
        "total_elements": graph.len(),
        "component_sizes": sizes,
        "components": tops,
    }))?;
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn cmd_quiver_sample(ty: &TypeArgs, dims: &str, seed: u64) -> Result<Outcome, Error> {
    let cartan = ty.cartan()?;
    let quiver = DoubledQuiver::from_cartan(&cartan);
    let dims = GradedDims::parse(dims)?;
    if dims.rank() != cartan.rank() {
        return Err(Error::RankMismatch {
            expected: cartan.rank(),
            got: dims.rank(),
        });
    }
    let datum = sample_lagrangian_point(&quiver, &dims, seed)?;
    Ok(Outcome {
        report: serde_json::to_string_pretty(&datum.to_json())?,
        passed: true,
    })
}

fn check_one_datum(
    cartan: &CartanDatum,
    quiver: &DoubledQuiver,
    datum: &ADHMDatum,
    label: &str,
) -> Result<(Value, bool), Error> {
    let mu_zero = datum.moment_map_is_zero(quiver);
    let stability = datum.is_stable(quiver);
    let nilpotent = datum.is_nilpotent(quiver);
    let mut eps = Vec::new();
    let mut bounds_ok = true;
    for i in 0..cartan.rank() {
        let e = datum.eps_i(quiver, i);
        let pairing = cartan.pairing(i, &datum.dims.lam_plus_nu())?;
        if e + pairing < 0 {
            bounds_ok = false;
        }
        eps.push(json!({"vertex": i, "eps": e, "eps_plus_pairing": e + pairing}));
    }
    let free_action = if mu_zero && stability.stable {
        let rep = free_action_checks(quiver, datum)?;
        let ok = rep.passes();
        (
            json!({
                "stabilizer_dim": rep.stabilizer_dim,
                "rank_dmu": rep.rank_dmu,
                "expected_rank": rep.expected_rank,
            }),
            ok,
        )
    } else {
        (Value::Null, false)
    };
    let identity = dimension_identity(cartan, quiver, &datum.dims)?;
    let passed = mu_zero && stability.stable && nilpotent && bounds_ok && free_action.1
        && identity.equal;
    let value = json!({
        "label": label,
        "moment_map_zero": mu_zero,
        "stable": stability.stable,
        "nilpotent": nilpotent,
        "eps": eps,
        "eps_bounds_hold": bounds_ok,
        "free_action": free_action.0,
        "dimension_identity_equal": identity.equal,
        "passed": passed,
    });
    Ok((value, passed))
}

fn cmd_quiver_check(
    ty: &TypeArgs,
    dims: Option<&str>,
    datum_path: &Option<PathBuf>,
    seed: u64,
    count: u64,
) -> Result<Outcome, Error> {
    let cartan = ty.cartan()?;
    let quiver = DoubledQuiver::from_cartan(&cartan);
    let mut reports = Vec::new();
    let mut all_passed = true;
    if let Some(path) = datum_path {
        let text = std::fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text)?;
        let datum = ADHMDatum::from_json(&quiver, &value)?;
        let (value, passed) = check_one_datum(&cartan, &quiver, &datum, "file")?;
        all_passed &= passed;
        reports.push(value);
    } else {
        let dims = GradedDims::parse(dims.expect("clap enforces dims without datum"))?;
        for k in 0..count {
            let datum = sample_lagrangian_point(&quiver, &dims, seed.wrapping_add(k))?;
            let (value, passed) =
                check_one_datum(&cartan, &quiver, &datum, &format!("seed {}", seed + k))?;
            all_passed &= passed;
            reports.push(value);
        }
    }
    let report = serde_json::to_string_pretty(&json!({
        "checks": reports,
        "passed": all_passed,
    }))?;
    Ok(Outcome {
        report,
        passed: all_passed,
    })
}

fn cmd_dim_identity(
    ty: &TypeArgs,
    count: u64,
    seed: u64,
    max_dim: usize,
) -> Result<Outcome, Error> {
    use rand::{Rng, SeedableRng};
    let cartan = ty.cartan()?;
    let quiver = DoubledQuiver::from_cartan(&cartan);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let v: Vec<usize> = (0..cartan.rank()).map(|_| rng.gen_range(0..=max_dim)).collect();
        let w: Vec<usize> = (0..cartan.rank()).map(|_| rng.gen_range(0..=max_dim)).collect();
        let dims = GradedDims::new(v, w)?;
        let id = dimension_identity(&cartan, &quiver, &dims)?;
        if !id.equal {
            failures.push(json!({
                "v": dims.v,
                "w": dims.w,
                "lhs": id.lhs,
                "rhs": id.rhs.to_string(),
            }));
        }
    }
    let passed = failures.is_empty();
    let report = serde_json::to_string_pretty(&json!({
        "cases": count,
        "failures": failures,
        "passed": passed,
    }))?;
    Ok(Outcome { report, passed })
}
