use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclic_orders::acceptance;
use cyclic_orders::coding::{
    delta_min_search, det_lemma_study, encode, hamming_distance, lift_codeword, CodeSpec, DeltaReport, OuterCode,
    OuterWord, SearchOptions,
};
use cyclic_orders::exec::Execution;
use cyclic_orders::extension::IdealSpec;
use cyclic_orders::io::load_algebra;
use cyclic_orders::order::AlgebraSpec;
use cyclic_orders::residue::CrtDecomposition;
use cyclic_orders::structure::{
    check_ideal_lattice, identify_quotient_with, verify_isomorphism, StructureReport, VerifyMode, VerifyOptions,
};
use cyclic_orders::AlgebraError;

#[derive(Parser, Debug)]
#[command(name = "cyclic-orders", version, about = "Natural orders in cyclic algebras, their quotients, and coset codes")]
struct Cli {
    /// Algebra description (JSON file, or the name of a shipped algebra such as golden_u_i.json).
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Ideal as generator[:exponent]; a comma-separated list of coprime
    /// prime powers is split by the Chinese remainder theorem.
    #[arg(long, global = true)]
    ideal: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Coordinate bound B of the search box.
    #[arg(long, global = true)]
    box_bound: Option<u32>,
    /// Worker threads; 1 forces the sequential path. Defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize an algebra: base ring, degree, u, σ and sample determinants.
    Describe,
    /// Reduce an order element modulo the ideal.
    Reduce {
        /// Element as `x_0; x_1; …`, each block the O_F-coordinates of x_j.
        element: String,
    },
    /// Reduced norm (determinant of the matrix embedding) of an element.
    Det { element: String },
    /// Matrix embedding of an element.
    Embed { element: String },
    /// Identify the quotient ring and, optionally, verify the certificate.
    Structure {
        #[arg(long)]
        verify: bool,
        /// Verification mode; by default exhaustive up to 2^16 elements.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// List the two-sided ideals of the quotient.
    Ideals {
        /// Also compare with an exhaustive ideal search.
        #[arg(long)]
        brute_force: bool,
    },
    /// Encode a message with a code spec and lift it to Λ^L.
    Encode {
        #[arg(long)]
        code: PathBuf,
        /// Symbols separated by `|`: order elements for ring codes,
        /// field element indices for first-coefficient codes.
        #[arg(long)]
        message: String,
    },
    /// Bound and search the minimum determinant of a coset code.
    Deltamin {
        #[arg(long)]
        code: PathBuf,
        /// Fall back to random sampling when the exhaustive search is over budget.
        #[arg(long)]
        allow_random: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Monte Carlo check of |det Σ X_i X_i*| ≥ (Σ |det X_i|)².
    CheckLemma {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Matrix size; by default cycles through 2, 3, 4.
        #[arg(long)]
        n: Option<usize>,
        /// Number of matrices; by default cycles through 1, 2, 3.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the acceptance suite.
    Selftest,
}

/// What a command produced: its report and whether a check failed.
struct Outcome {
    json: Value,
    human: String,
    failed_check: bool,
}

impl Outcome {
    fn ok(json: Value, human: String) -> Self {
        Outcome {
            json,
            human,
            failed_check: false,
        }
    }
}

type Res<T> = Result<T, AlgebraError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let exec = match configure_threads(cli.threads) {
        Ok(e) => e,
        Err(e) => return fail(&cli, &e),
    };
    match run(&cli, exec) {
        Ok(out) => {
            match cli.output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize")),
                Output::Human => println!("{}", out.human.trim_end()),
            }
            if out.failed_check {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(&cli, &e),
    }
}

fn fail(cli: &Cli, e: &AlgebraError) -> ExitCode {
    match cli.output {
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({"error": e.name(), "message": e.to_string()})).unwrap()
        ),
        Output::Human => eprintln!("error [{}]: {e}", e.name()),
    }
    if matches!(e, AlgebraError::VerificationFailed { .. }) {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn configure_threads(threads: Option<usize>) -> Res<Execution> {
    match threads {
        Some(0) => Err(AlgebraError::invalid("--threads must be positive")),
        Some(1) => Ok(Execution::Sequential),
        #[cfg(feature = "parallel")]
        Some(t) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|e| AlgebraError::invalid(format!("thread pool: {e}")))?;
            Ok(Execution::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Execution::Sequential),
        None => Ok(Execution::default()),
    }
}

fn algebra(cli: &Cli) -> Res<AlgebraSpec> {
    let path = cli
        .algebra
        .as_ref()
        .ok_or_else(|| AlgebraError::invalid("--algebra is required"))?;
    load_algebra(path)
}

fn ideals(cli: &Cli, a: &AlgebraSpec) -> Res<Vec<IdealSpec>> {
    let text = cli
        .ideal
        .as_deref()
        .ok_or_else(|| AlgebraError::invalid("--ideal is required"))?;
    let parts = text
        .split(',')
        .map(|p| IdealSpec::parse(a.base(), p.trim()))
        .collect::<Res<Vec<_>>>()?;
    if parts.len() > 1 {
        // rejects repeated or non-coprime factors
        CrtDecomposition::new(a, &parts)?;
    }
    Ok(parts)
}

fn run(cli: &Cli, exec: Execution) -> Res<Outcome> {
    match &cli.command {
        Command::Describe => describe(&algebra(cli)?),
        Command::Reduce { element } => reduce(cli, element),
        Command::Det { element } => det(&algebra(cli)?, element),
        Command::Embed { element } => embed(&algebra(cli)?, element),
        Command::Structure { verify, mode } => structure(cli, exec, *verify, *mode),
        Command::Ideals { brute_force } => list_ideals(cli, exec, *brute_force),
        Command::Encode { code, message } => encode_message(code, message),
        Command::Deltamin {
            code,
            allow_random,
            samples,
        } => deltamin(cli, exec, code, *allow_random, *samples),
        Command::CheckLemma { trials, n, k } => check_lemma(cli, exec, *trials, *n, *k),
        Command::Selftest => selftest(),
    }
}

fn describe(a: &AlgebraSpec) -> Res<Outcome> {
    let e = a.extension();
    let n = a.degree();
    let sigma: Vec<Vec<String>> = e
        .sigma_matrix()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let z_dets = (1..=n)
        .map(|j| a.reduced_det(&a.pow(&a.z(), j as u64)).map(|d| d.to_string()))
        .collect::<Res<Vec<_>>>()?;
    let json = json!({
        "name": a.name(),
        "description": a.description(),
        "base_ring": a.base(),
        "degree": n,
        "basis": e.basis_names(),
        "u": a.u().to_string(),
        "u_norm": a.u().norm().to_string(),
        "sigma_matrix": sigma,
        "claims_division": a.claims_division(),
        "det_z_powers": z_dets,
    });
    let human = format!(
        "{} ({})\n  base ring {}, degree {n}, basis [{}]\n  u = {} (norm {})\n  σ = {:?}\n  division claimed: {}\n  det M(z^j), j = 1..{n}: {}\n",
        a.name(),
        a.description(),
        a.base().name(),
        e.basis_names().join(", "),
        a.u(),
        a.u().norm(),
        sigma,
        a.claims_division(),
        z_dets.join(", "),
    );
    Ok(Outcome::ok(json, human))
}

fn reduce(cli: &Cli, element: &str) -> Res<Outcome> {
    let a = algebra(cli)?;
    let parts = ideals(cli, &a)?;
    let x = a.parse_element(element)?;
    let mut comps = Vec::new();
    let mut human = format!("x = {x}\n");
    for p in &parts {
        let q = cyclic_orders::residue::QuotientRing::new(&a, p)?;
        let r = q.reduce(&x);
        let lift = q.lift(&r);
        human.push_str(&format!("  mod {p}: {} (canonical lift {lift})\n", q.display(&r)));
        comps.push(json!({
            "ideal": p.to_string(),
            "residue": q.display(&r),
            "index": q.index(&r),
            "canonical_lift": lift.to_string(),
        }));
    }
    Ok(Outcome::ok(json!({"element": x.to_string(), "components": comps}), human))
}

fn det(a: &AlgebraSpec, element: &str) -> Res<Outcome> {
    let x = a.parse_element(element)?;
    let d = a.reduced_det(&x)?;
    let abs = a.abs_det_sq(&x)?;
    let json = json!({"element": x.to_string(), "reduced_det": d.to_string(), "abs_det_sq": abs});
    Ok(Outcome::ok(json, format!("det M({x}) = {d}, |det|² = {abs}\n")))
}

fn embed(a: &AlgebraSpec, element: &str) -> Res<Outcome> {
    let x = a.parse_element(element)?;
    let m = a.matrix_embedding(&x);
    let rows: Vec<Vec<String>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect();
    let human = rows.iter().map(|r| format!("  {}\n", r.join("  "))).collect::<String>();
    Ok(Outcome::ok(
        json!({"element": x.to_string(), "matrix": rows}),
        format!("M({x}) =\n{human}"),
    ))
}

fn structure_human(r: &StructureReport) -> String {
    let mut s = format!(
        "Λ/{}Λ for {}: case {:?} (g = {}, e = {}, f = {})\n  target {} with {} elements\n",
        r.ideal, r.algebra, r.case, r.g, r.e, r.f, r.target.description, r.cardinality
    );
    if let Some(alt) = &r.target.coefficient_ring_alt {
        s.push_str(&format!("  coefficient ring ≅ {alt}\n"));
    }
    if let Some(chain) = &r.skew_chain {
        for c in chain {
            s.push_str(&format!(
                "  ideal ⟨{}⟩: {} elements, quotient {} ({} elements)\n",
                c.generator, c.size, c.quotient, c.quotient_size
            ));
        }
    }
    s
}

fn structure(cli: &Cli, exec: Execution, verify: bool, mode: Option<Mode>) -> Res<Outcome> {
    let a = algebra(cli)?;
    let mut json_parts = Vec::new();
    let mut human = String::new();
    let mut failed = false;
    for p in ideals(cli, &a)? {
        let mut r = identify_quotient_with(&a, &p, exec)?;
        human.push_str(&structure_human(&r));
        let mut verification = Value::Null;
        if verify {
            let mode = match mode {
                Some(Mode::Exhaustive) => VerifyMode::Exhaustive,
                Some(Mode::Sampled) => VerifyMode::Sampled,
                None if r.cardinality <= 1 << 16 => VerifyMode::Exhaustive,
                None => VerifyMode::Sampled,
            };
            let opts = VerifyOptions::new(mode).exec(exec);
            let opts = VerifyOptions { seed: cli.seed, ..opts };
            match r.iso.as_mut() {
                Some(cert) => {
                    let v = verify_isomorphism(cert, &r.quotient, &opts)?;
                    failed |= !v.verified;
                    human.push_str(&format!(
                        "  verification ({:?}): {}, {} elements mapped, {} pairs checked, rank {}/{}\n",
                        v.mode,
                        if v.verified { "verified" } else { "FAILED" },
                        v.elements_mapped,
                        v.pairs_checked,
                        v.rank,
                        v.rank_required
                    ));
                    verification = serde_json::to_value(&v).unwrap();
                }
                None => {
                    let c = check_ideal_lattice(&r, exec)?;
                    failed |= !c.equal;
                    human.push_str(&format!(
                        "  no matrix target; ideal lattice vs exhaustive search: {}\n",
                        if c.equal { "equal" } else { "DIFFERENT" }
                    ));
                    verification = serde_json::to_value(&c).unwrap();
                }
            }
        }
        let mut v = serde_json::to_value(&r).unwrap();
        v["verification"] = verification;
        json_parts.push(v);
    }
    let json = if json_parts.len() == 1 {
        json_parts.pop().unwrap()
    } else {
        json!({"crt_components": json_parts})
    };
    Ok(Outcome {
        json,
        human,
        failed_check: failed,
    })
}

fn list_ideals(cli: &Cli, exec: Execution, brute_force: bool) -> Res<Outcome> {
    let a = algebra(cli)?;
    let mut out = Vec::new();
    let mut human = String::new();
    let mut failed = false;
    for p in ideals(cli, &a)? {
        let r = identify_quotient_with(&a, &p, exec)?;
        human.push_str(&format!("two-sided ideals of Λ/{p}Λ ({:?}):\n", r.case));
        for d in &r.ideal_lattice {
            human.push_str(&format!("  {}: generated by [{}], {} elements\n", d.name, d.generators.join(", "), d.size));
        }
        let mut v = json!({
            "ideal": p.to_string(),
            "case": r.case,
            "ideals": r.ideal_lattice,
            "skew_chain": r.skew_chain,
            "monomial_ideals": r.monomial_ideals,
        });
        if brute_force {
            let c = check_ideal_lattice(&r, exec)?;
            failed |= !c.equal;
            human.push_str(&format!(
                "  exhaustive search: {} ideals, {}\n",
                c.brute_force_count,
                if c.equal { "equal" } else { "DIFFERENT" }
            ));
            v["brute_force"] = serde_json::to_value(&c).unwrap();
        }
        out.push(v);
    }
    let json = if out.len() == 1 { out.pop().unwrap() } else { json!({"crt_components": out}) };
    Ok(Outcome {
        json,
        human,
        failed_check: failed,
    })
}

fn parse_message(code: &OuterCode, text: &str) -> Res<OuterWord> {
    let symbols: Vec<&str> = text.split('|').map(str::trim).collect();
    match code {
        OuterCode::ParityOverRing { quotient, .. } => {
            let a = quotient.algebra();
            symbols
                .iter()
                .map(|s| a.parse_element(s).map(|x| quotient.reduce(&x)))
                .collect::<Res<Vec<_>>>()
                .map(OuterWord::Ring)
        }
        _ => symbols
            .iter()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| AlgebraError::invalid(format!("{s:?} is not a field element index")))
            })
            .collect::<Res<Vec<_>>>()
            .map(OuterWord::Field),
    }
}

fn encode_message(path: &PathBuf, message: &str) -> Res<Outcome> {
    let spec = CodeSpec::load(path)?;
    let (_, code) = spec.build()?;
    let msg = parse_message(&code, message)?;
    let word = encode(&code, &msg)?;
    let lifted = lift_codeword(&code, &word, spec.lift_strategy)?;
    let json = json!({
        "code": code.describe(),
        "message": msg.display(&code),
        "codeword": word.display(&code),
        "lift_strategy": spec.lift_strategy,
        "lifted": lifted,
        "lifted_outer_image": lifted.outer_image.display(&code),
    });
    let human = format!(
        "{}\n  codeword  {}\n  lifted    ({})\n",
        code.describe(),
        word.display(&code).join(" | "),
        lifted.display().join(", ")
    );
    Ok(Outcome::ok(json, human))
}

fn delta_human(r: &DeltaReport) -> String {
    let mut s = format!(
        "bound ({:?}): {} = min|det|² {} · min(d_H² = {}, {})\n",
        r.bound_formula,
        r.lower_bound,
        r.min_det_sq,
        r.d_h * r.d_h,
        r.ideal_term
    );
    if let Some(m) = r.search_min {
        s.push_str(&format!(
            "search ({:?}, B = {}): Δ_min = {m}, {} minimizers, {} evaluations\n",
            r.search_mode.unwrap(),
            r.box_bound.unwrap_or(0),
            r.minimizer_count,
            r.evaluations
        ));
        if let Some(c) = &r.argmin {
            s.push_str(&format!("  argmin ({})\n", c.display().join(", ")));
        }
        s.push_str(&format!("  search ≥ bound: {}\n", r.consistent()));
    }
    s
}

fn deltamin(cli: &Cli, exec: Execution, path: &PathBuf, allow_random: bool, samples: u64) -> Res<Outcome> {
    let spec = CodeSpec::load(path)?;
    let (_, code) = spec.build()?;
    let mut opts = SearchOptions::new(cli.box_bound.unwrap_or(spec.box_bound)).exec(exec);
    if allow_random {
        opts = opts.randomized_fallback(cli.seed, samples);
    }
    let r = delta_min_search(&code, &opts)?;
    let mut json = serde_json::to_value(&r).unwrap();
    json["code"] = json!(code.describe());
    json["hamming_distance"] = json!(hamming_distance(&code)?);
    let human = format!("{}\n{}", code.describe(), delta_human(&r));
    Ok(Outcome {
        json,
        human,
        failed_check: !r.consistent(),
    })
}

fn check_lemma(cli: &Cli, exec: Execution, trials: u64, n: Option<usize>, k: Option<usize>) -> Res<Outcome> {
    let sizes = n.map_or(vec![2, 3, 4], |n| vec![n]);
    let ks = k.map_or(vec![1, 2, 3], |k| vec![k]);
    let r = det_lemma_study(trials, &sizes, &ks, cli.seed, exec)?;
    let human = format!(
        "{}/{} hold, {} violations, {} singular draws; min lhs/rhs = {:.6}{}\n",
        r.holds,
        r.trials,
        r.violations,
        r.singular,
        r.min_ratio,
        r.max_equality_gap
            .map(|g| format!("; k = 1 relative gap ≤ {g:.1e}"))
            .unwrap_or_default()
    );
    Ok(Outcome {
        json: serde_json::to_value(&r).unwrap(),
        failed_check: r.violations > 0,
        human,
    })
}

fn selftest() -> Res<Outcome> {
    let reports = acceptance::run_all();
    let mut human = String::new();
    for r in &reports {
        human.push_str(&format!(
            "criterion {:>2} {} [{:.3}s] {}: {}\n",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.title,
            r.detail
        ));
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    human.push_str(&format!("{}/{} passed\n", reports.len() - failed, reports.len()));
    // timings vary between runs, so the JSON keeps only the verdicts
    let json = json!({
        "passed": failed == 0,
        "criteria": reports.iter().map(|r| json!({"id": r.id, "title": r.title, "passed": r.passed})).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        json,
        human,
        failed_check: failed > 0,
    })
}
