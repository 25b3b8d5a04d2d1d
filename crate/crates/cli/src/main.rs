use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use frobkern::algrep::{IsoVerdict, Module, ModuleFile, OracleConfig, RepError, DEFAULT_SEED};
use frobkern::gacohom::{cohom_dim, cohom_dim_by_enumeration, TruncatedPolyAlgebra};
use frobkern::sl2dist::Sl2Algebra;
use frobkern::verify::{self, Suite, VerifyParams};
use frobkern::weightcomb::{
    block_members, block_of, classify_block_type, classify_component, heart_weights, heller_orbit_verma,
    simple_complexity, steinberg_ph, verma_period, verma_projective_height, BlockId, BlockKind, CombError, Context,
    Evidence, ProjectiveHeight, RootDatum, Weight, STANDARD_HYPOTHESES,
};

#[derive(Parser, Debug)]
#[command(name = "frobkern", version, about = "Frobenius kernel combinatorics and module oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, env = "FROBKERN_SEED")]
    seed: Option<u64>,
    /// Wall-clock budget for verification runs.
    #[arg(long = "budget-ms", global = true)]
    budget_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Pr {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
}

#[derive(Args, Debug, Clone)]
struct PrLambda {
    #[command(flatten)]
    pr: Pr,
    #[arg(long, allow_hyphen_values = true)]
    lambda: i64,
    /// Cross-check against the module oracle where one is available.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug, Clone)]
struct BlockSel {
    #[command(flatten)]
    pr: Pr,
    /// A weight in the block.
    #[arg(long, conflicts_with_all = ["i", "s", "steinberg"])]
    lambda: Option<u64>,
    #[arg(long, requires = "s")]
    i: Option<u32>,
    #[arg(long, requires = "i")]
    s: Option<u32>,
    #[arg(long)]
    steinberg: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ContextArg {
    Gr,
    Grt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvidenceArg {
    Periodic,
    SimpleCx2,
    Verma,
    Generic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    ClosedForm,
    Enumeration,
    Resolution,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModuleKind {
    Simple,
    Verma,
    Pim,
    GradedSimple,
    GradedVerma,
    GradedPim,
    Heart,
    Regular,
    GaTrivial,
    GaRegular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block containing a weight.
    Block {
        #[command(flatten)]
        pr: Pr,
        #[arg(long)]
        lambda: u64,
    },
    /// Weights of a block.
    BlockMembers(BlockSel),
    /// Complexity of a simple module.
    Complexity(PrLambda),
    /// Depth of a weight; `--cartan` and `--weight` select a general root system.
    Depth {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, requires = "weight")]
        cartan: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Projective height of a baby Verma module, or of `St_d` with `--d`.
    Ph {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "d")]
        lambda: Option<i64>,
        #[arg(long, conflicts_with = "lambda")]
        d: Option<u32>,
        #[arg(long)]
        check: bool,
    },
    /// Heller period of a baby Verma module.
    Period(PrLambda),
    /// Weight of the graded Verma module `Ω^{2n} Ẑ_r(λ)`.
    HellerOrbit {
        #[command(flatten)]
        base: PrLambda,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Composition factor weights of the heart of `P_r(λ)`.
    HeartWeights(PrLambda),
    /// Representation type of a block.
    ClassifyBlock(BlockSel),
    /// Permitted stable AR-component shapes.
    ClassifyComponent {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_enum)]
        context: ContextArg,
        #[arg(long, value_enum)]
        evidence: EvidenceArg,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        rank_variety_dim: Option<u32>,
        /// The group is SL(2).
        #[arg(long)]
        sl2: bool,
    },
    /// `dim H^n(G_a(r), k)`.
    Cohom {
        #[command(flatten)]
        pr: Pr,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
        method: Method,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Build a module and write it as JSON.
    Module {
        #[arg(long, value_enum)]
        kind: ModuleKind,
        #[command(flatten)]
        pr: Pr,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lambda: i64,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Structural summary of a module read from JSON.
    Inspect {
        #[arg(long)]
        load: PathBuf,
    },
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
enum Failure {
    User(String),
    Inconsistent(String),
}

impl From<CombError> for Failure {
    fn from(e: CombError) -> Self {
        match e {
            CombError::Rep(r) => r.into(),
            e => Failure::User(e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Linalg(_) | RepError::NotSubmodule(_) => Failure::Inconsistent(e.to_string()),
            e => Failure::User(e.to_string()),
        }
    }
}

struct Report {
    query: Value,
    result: Value,
    hypotheses: Vec<&'static str>,
    verified: bool,
    /// Set when the oracle contradicts the formula.
    mismatch: Option<String>,
}

impl Report {
    fn new(query: Value, result: Value) -> Self {
        Report {
            query,
            result,
            hypotheses: Vec::new(),
            verified: false,
            mismatch: None,
        }
    }

    fn hypotheses(mut self, h: &[&'static str]) -> Self {
        self.hypotheses = h.to_vec();
        self
    }

    fn oracle(mut self, outcome: Option<Result<bool, String>>) -> Self {
        match outcome {
            Some(Ok(true)) => self.verified = true,
            Some(Ok(false)) => self.mismatch = Some("oracle disagrees with formula".into()),
            Some(Err(e)) => self.result["oracle_error"] = json!(e),
            None => {}
        }
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print(&cli, &report);
            match report.mismatch {
                Some(msg) => {
                    eprintln!("inconsistency: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print(cli: &Cli, report: &Report) {
    let doc = json!({
        "schema": 1,
        "query": report.query,
        "result": report.result,
        "hypotheses": report.hypotheses,
        "verified_by_oracle": report.verified,
    });
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable")),
        Format::Text => {
            println!("query: {}", report.query);
            match &report.result {
                Value::Object(map) => {
                    for (k, v) in map {
                        println!("{k}: {}", text_value(v));
                    }
                }
                v => println!("result: {}", text_value(v)),
            }
            if !report.hypotheses.is_empty() {
                println!("hypotheses: {}", report.hypotheses.join(", "));
            }
            println!("verified_by_oracle: {}", report.verified);
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn config(cli: &Cli) -> OracleConfig {
    OracleConfig {
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        ..OracleConfig::default()
    }
}

fn restricted(p: u32, r: u32, lambda: i64) -> Result<u64, Failure> {
    let bound = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
    u64::try_from(lambda)
        .ok()
        .filter(|&l| l < bound)
        .ok_or_else(|| Failure::User(format!("λ = {lambda} outside [0, {bound})")))
}

fn iso(v: IsoVerdict) -> Result<bool, String> {
    match v {
        IsoVerdict::Isomorphic(_) => Ok(true),
        IsoVerdict::NotIsomorphic => Ok(false),
        IsoVerdict::Inconclusive => Err("isomorphism test inconclusive".into()),
    }
}

fn block_json(id: &BlockId) -> Value {
    match id.kind {
        BlockKind::Regular { i, s } => json!({ "i": i, "s": s }),
        BlockKind::Steinberg => json!("steinberg"),
    }
}

fn select_block(sel: &BlockSel) -> Result<BlockId, Failure> {
    let Pr { p, r } = sel.pr;
    Ok(match (sel.lambda, sel.i, sel.s, sel.steinberg) {
        (Some(l), _, _, _) => block_of(p, r, l)?,
        (None, Some(i), Some(s), false) => BlockId::regular(p, r, i, s)?,
        (None, None, None, true) => BlockId::steinberg(p, r)?,
        _ => return Err(Failure::User("select a block with --lambda, --i/--s or --steinberg".into())),
    })
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Failure::User(format!("bad integer `{x}`"))))
        .collect()
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = config(cli);
    Ok(match &cli.command {
        Command::Block { pr, lambda } => {
            let id = block_of(pr.p, pr.r, *lambda)?;
            Report::new(
                json!({ "command": "block", "p": pr.p, "r": pr.r, "lambda": lambda }),
                json!({ "block": block_json(&id) }),
            )
        }
        Command::BlockMembers(sel) => {
            let id = select_block(sel)?;
            Report::new(
                json!({ "command": "block-members", "p": sel.pr.p, "r": sel.pr.r, "block": block_json(&id) }),
                json!({ "block": block_json(&id), "members": block_members(&id) }),
            )
        }
        Command::ClassifyBlock(sel) => {
            let id = select_block(sel)?;
            Report::new(
                json!({ "command": "classify-block", "p": sel.pr.p, "r": sel.pr.r, "block": block_json(&id) }),
                json!({ "block": block_json(&id), "type": classify_block_type(&id) }),
            )
        }
        Command::Complexity(a) => {
            let Pr { p, r } = a.pr;
            let lambda = restricted(p, r, a.lambda)?;
            let cx = simple_complexity(p, r, lambda)?;
            let check = (a.check && r == 1).then(|| -> Result<bool, String> {
                let sl2 = Sl2Algebra::with_config(p, 1, cfg).map_err(|e| e.to_string())?;
                let alg = sl2.algebra();
                let m = sl2.simple_module(lambda).map_err(|e| e.to_string())?;
                let trace = alg.resolution_trace(&m, cfg.min_trace_length, false).map_err(|e| e.to_string())?;
                Ok(alg.estimate_complexity(&trace).map_err(|e| e.to_string())? == cx)
            });
            Report::new(
                json!({ "command": "complexity", "p": p, "r": r, "lambda": lambda }),
                json!({ "complexity": cx }),
            )
            .oracle(check)
        }
        Command::Depth { p, lambda, cartan, weight } => {
            let (rd, w) = match (cartan, weight, lambda) {
                (Some(c), Some(w), _) => {
                    let rows = c.split(';').map(parse_ints).collect::<Result<Vec<_>, _>>()?;
                    (RootDatum::from_cartan(rows, *p)?, Weight(parse_ints(w)?))
                }
                (None, None, Some(l)) => (RootDatum::sl2(*p)?, Weight::sl2(*l)),
                _ => return Err(Failure::User("give --lambda, or --cartan with --weight".into())),
            };
            let dep = rd.depth(&w)?;
            Report::new(
                json!({ "command": "depth", "p": p, "weight": w.0, "rank": rd.rank() }),
                json!({ "depth": dep }),
            )
        }
        Command::Ph { p, r, lambda, d, check } => {
            if let Some(d) = d {
                return Ok(Report::new(
                    json!({ "command": "ph", "steinberg": d, "r": r }),
                    json!({ "ph": steinberg_ph(*d, *r)? }),
                ));
            }
            let p = p.ok_or_else(|| Failure::User("--p is required".into()))?;
            let lambda = lambda.expect("required by clap");
            let rd = RootDatum::sl2(p)?;
            let ph = verma_projective_height(&rd, &Weight::sl2(lambda), *r)?;
            let check = (*check && *r == 1).then(|| -> Result<bool, String> {
                let l = restricted(p, 1, lambda).map_err(|_| "λ outside the restricted range".to_string())?;
                let sl2 = Sl2Algebra::with_config(p, 1, cfg).map_err(|e| e.to_string())?;
                let z = sl2.verma_module(l).map_err(|e| e.to_string())?;
                let projective = sl2.algebra().is_projective(&z).map_err(|e| e.to_string())?;
                Ok(projective == (ph == ProjectiveHeight::Projective))
            });
            Report::new(json!({ "command": "ph", "p": p, "r": r, "lambda": lambda }), json!({ "ph": ph }))
                .hypotheses(&STANDARD_HYPOTHESES)
                .oracle(check)
        }
        Command::Period(a) => {
            let Pr { p, r } = a.pr;
            let rd = RootDatum::sl2(p)?;
            let per = verma_period(&rd, &Weight::sl2(a.lambda), r)?;
            let check = (a.check && r == 1).then(|| -> Result<bool, String> {
                let l = restricted(p, 1, a.lambda).map_err(|_| "λ outside the restricted range".to_string())?;
                let sl2 = Sl2Algebra::with_config(p, 1, cfg).map_err(|e| e.to_string())?;
                let alg = sl2.algebra();
                let z = sl2.verma_module(l).map_err(|e| e.to_string())?;
                let mut cur = z.clone();
                for k in 1..=per {
                    cur = alg.heller(&cur).map_err(|e| e.to_string())?;
                    let same = iso(alg.is_isomorphic(&cur, &z).map_err(|e| e.to_string())?)?;
                    if same != (k == per) {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            Report::new(
                json!({ "command": "period", "p": p, "r": r, "lambda": a.lambda }),
                json!({ "period": per }),
            )
            .hypotheses(&STANDARD_HYPOTHESES)
            .oracle(check)
        }
        Command::HellerOrbit { base, n } => {
            let Pr { p, r } = base.pr;
            let rd = RootDatum::sl2(p)?;
            let mu = heller_orbit_verma(&rd, &Weight::sl2(base.lambda), r, *n)?.0[0];
            let check = (base.check && r == 1).then(|| -> Result<bool, String> {
                let sl2 = Sl2Algebra::with_config(p, 1, cfg).map_err(|e| e.to_string())?;
                let alg = sl2.algebra();
                let z = sl2.graded_verma(base.lambda).map_err(|e| e.to_string())?;
                let omega = alg.heller_power(&z, 2 * n).map_err(|e| e.to_string())?;
                let target = sl2.graded_verma(mu).map_err(|e| e.to_string())?;
                iso(alg.is_isomorphic(&omega, &target).map_err(|e| e.to_string())?)
            });
            Report::new(
                json!({ "command": "heller-orbit", "p": p, "r": r, "lambda": base.lambda, "n": n }),
                json!({ "weight": mu }),
            )
            .hypotheses(&["reductive", "defined-over-Fp", "good-prime", "depth-equals-r"])
            .oracle(check)
        }
        Command::HeartWeights(a) => {
            let Pr { p, r } = a.pr;
            let lambda = restricted(p, r, a.lambda)?;
            let weights = heart_weights(p, r, lambda)?;
            let mut multiplicities = Value::Null;
            let check = a.check.then(|| -> Result<bool, String> {
                let sl2 = Sl2Algebra::with_config(p, r, cfg).map_err(|e| e.to_string())?;
                let ht = sl2.heart(lambda).map_err(|e| e.to_string())?;
                let factors = sl2.composition_weights(&ht).map_err(|e| e.to_string())?;
                let ok = factors.keys().copied().eq(weights.iter().copied());
                multiplicities = json!(factors);
                Ok(ok)
            });
            let mut report = Report::new(
                json!({ "command": "heart-weights", "p": p, "r": r, "lambda": lambda }),
                json!({ "weights": weights }),
            )
            .oracle(check);
            if !multiplicities.is_null() {
                report.result["oracle_multiplicities"] = multiplicities;
            }
            report
        }
        Command::ClassifyComponent { p, r, context, evidence, s, rank_variety_dim, sl2 } => {
            let ctx = match context {
                ContextArg::Gr => Context::Gr,
                ContextArg::Grt => Context::GrT,
            };
            let ev = match evidence {
                EvidenceArg::Periodic => Evidence::Periodic {
                    s: s.ok_or_else(|| Failure::User("periodic evidence needs --s".into()))?,
                },
                EvidenceArg::SimpleCx2 => Evidence::SimpleCx2 { r: *r, sl2: *sl2 },
                EvidenceArg::Verma => Evidence::Verma {
                    rank_variety_dim: rank_variety_dim
                        .ok_or_else(|| Failure::User("verma evidence needs --rank-variety-dim".into()))?,
                },
                EvidenceArg::Generic => Evidence::Generic,
            };
            Report::new(
                json!({ "command": "classify-component", "p": p, "r": r, "context": ctx, "evidence": format!("{ev:?}") }),
                json!({ "shapes": classify_component(*p, ctx, ev) }),
            )
        }
        Command::Cohom { pr, n, method } => {
            let Pr { p, r } = *pr;
            let (dim, name, verified) = match method {
                Method::ClosedForm => (cohom_dim(r, *n), "closed-form", None),
                Method::Enumeration => (cohom_dim_by_enumeration(r, *n), "enumeration", None),
                Method::Resolution => {
                    let ga = TruncatedPolyAlgebra::with_config(p, r, cfg)?;
                    let res = ga.minimal_resolution(*n as usize)?;
                    let d = res.ranks[*n as usize] as u64;
                    (d, "resolution", Some(Ok(d == cohom_dim(r, *n))))
                }
            };
            Report::new(
                json!({ "command": "cohom", "p": p, "r": r, "n": n, "method": name }),
                json!({ "p": p, "r": r, "n": n, "dim": dim, "method": name }),
            )
            .oracle(verified)
        }
        Command::Verify { suite, p, r } => {
            let suite: Suite = suite.parse().map_err(Failure::User)?;
            let params = VerifyParams {
                p: *p,
                r: *r,
                seed: cfg.seed,
                budget: cli.budget_ms.map(Duration::from_millis),
            };
            let reports = verify::run(suite, &params)?;
            let passed = reports.iter().all(|r| r.passed());
            let partial = reports.iter().any(|r| r.partial);
            let mut report = Report::new(
                json!({ "command": "verify", "suite": suite.name(), "p": p, "r": r }),
                json!({ "passed": passed, "partial": partial, "reports": reports }),
            );
            report.verified = passed && !partial;
            if !passed {
                report.mismatch = Some(format!("suite {} has failing cases", suite.name()));
            }
            report
        }
        Command::Module { kind, pr, lambda, dump } => {
            let m = build_module(*kind, pr, *lambda, cfg)?;
            let text = serde_json::to_string(&m.to_file()).expect("serializable");
            let query = json!({ "command": "module", "kind": format!("{kind:?}"), "p": pr.p, "r": pr.r, "lambda": lambda });
            match dump {
                Some(path) => {
                    fs::write(path, text).map_err(|e| Failure::User(format!("{}: {e}", path.display())))?;
                    Report::new(query, json!({ "dim": m.dim(), "written": path.display().to_string() }))
                }
                None => Report::new(query, json!({ "dim": m.dim(), "module": m.to_file() })),
            }
        }
        Command::Inspect { load } => {
            let text = fs::read_to_string(load).map_err(|e| Failure::User(format!("{}: {e}", load.display())))?;
            let file: ModuleFile = serde_json::from_str(&text).map_err(|e| Failure::User(e.to_string()))?;
            let alg = frobkern::algebra_by_id(&file.algebra, cfg)?;
            let m = Module::from_file(&file, alg.presentation().clone())?;
            let summands: Vec<usize> = alg.meataxe_split(&m)?.iter().map(|s| s.module.dim()).collect();
            Report::new(
                json!({ "command": "inspect", "file": load.display().to_string() }),
                json!({
                    "algebra": file.algebra,
                    "dim": m.dim(),
                    "graded": m.is_graded(),
                    "top": alg.top(&m)?,
                    "socle": alg.socle(&m)?,
                    "composition_factors": alg.composition_factors(&m)?,
                    "summand_dims": summands,
                    "projective": alg.is_projective(&m)?,
                    "heller_dim": alg.heller(&m)?.dim(),
                }),
            )
        }
    })
}

fn build_module(kind: ModuleKind, pr: &Pr, lambda: i64, cfg: OracleConfig) -> Result<Module, Failure> {
    let Pr { p, r } = *pr;
    if matches!(kind, ModuleKind::GaTrivial | ModuleKind::GaRegular) {
        let ga = TruncatedPolyAlgebra::with_config(p, r, cfg)?;
        return Ok(if matches!(kind, ModuleKind::GaTrivial) { ga.trivial()? } else { ga.regular()? });
    }
    let sl2 = Sl2Algebra::with_config(p, r, cfg)?;
    Ok(match kind {
        ModuleKind::Simple => sl2.simple_module(restricted(p, r, lambda)?)?,
        ModuleKind::Verma => sl2.verma_module(restricted(p, r, lambda)?)?,
        ModuleKind::Pim => sl2.principal_indecomposable(restricted(p, r, lambda)?)?,
        ModuleKind::GradedSimple => sl2.graded_simple(lambda)?,
        ModuleKind::GradedVerma => sl2.graded_verma(lambda)?,
        ModuleKind::GradedPim => sl2.graded_principal_indecomposable(lambda)?,
        ModuleKind::Heart => sl2.heart(restricted(p, r, lambda)?)?,
        ModuleKind::Regular => sl2.regular_module()?,
        ModuleKind::GaTrivial | ModuleKind::GaRegular => unreachable!("handled above"),
    })
}
