//! Verification suites: closed-form predictions checked against the module
//! oracle, case by case.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::algrep::{IsoVerdict, OracleConfig, RepError};
use crate::gacohom::{cohom_dim, cohom_dim_by_enumeration, TruncatedPolyAlgebra};
use crate::sl2dist::Sl2Algebra;
use crate::weightcomb::{
    block_members, block_of, heart_weights, heller_orbit_verma, morita_weight_map, simple_complexity,
    ub1_bound_check, valuation, verma_period, BlockId, CombError, Depth, RootDatum, Weight,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub input: Value,
    pub expected: Value,
    /// Where the expected value comes from.
    pub source: &'static str,
    pub got: Value,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub cases: Vec<Case>,
    pub wall_ms: u128,
    /// Set when the time budget ran out before every case was run.
    pub partial: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    VermaPeriod,
    GradedOrbit,
    Heart,
    Cohom,
    Blocks,
    Ub1,
    MeataxeRegular,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::VermaPeriod,
        Suite::GradedOrbit,
        Suite::Heart,
        Suite::Cohom,
        Suite::Blocks,
        Suite::Ub1,
        Suite::MeataxeRegular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::VermaPeriod => "verma-period",
            Suite::GradedOrbit => "graded-orbit",
            Suite::Heart => "heart",
            Suite::Cohom => "cohom",
            Suite::Blocks => "blocks",
            Suite::Ub1 => "ub1",
            Suite::MeataxeRegular => "meataxe-regular",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    pub p: u32,
    /// Height override; each suite has its own default.
    pub r: Option<u32>,
    pub seed: u64,
    pub budget: Option<Duration>,
}

/// Run a suite (or every suite, for `All`).
pub fn run(suite: Suite, params: &VerifyParams) -> Result<Vec<VerifyReport>, CombError> {
    let deadline = params.budget.map(|b| Instant::now() + b);
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    suites.into_iter().map(|s| run_one(s, params, deadline)).collect()
}

struct Runner {
    cases: Vec<Case>,
    deadline: Option<Instant>,
    partial: bool,
}

impl Runner {
    fn out_of_time(&mut self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.partial = true;
        }
        self.partial
    }

    /// Record a case; oracle errors become inconclusive or failing cases.
    fn push(&mut self, input: Value, expected: Value, source: &'static str, got: Result<(Value, bool), CombError>) {
        let (got, status) = match got {
            Ok((v, true)) => (v, Status::Pass),
            Ok((v, false)) => (v, Status::Fail),
            Err(e @ (CombError::Inconclusive(_) | CombError::Rep(RepError::Inconclusive(_)))) => {
                (json!(e.to_string()), Status::Inconclusive)
            }
            Err(e) => (json!(format!("error: {e}")), Status::Fail),
        };
        self.cases.push(Case {
            input,
            expected,
            source,
            got,
            status,
        });
    }
}

fn config(params: &VerifyParams) -> OracleConfig {
    OracleConfig {
        seed: params.seed,
        ..OracleConfig::default()
    }
}

fn run_one(suite: Suite, params: &VerifyParams, deadline: Option<Instant>) -> Result<VerifyReport, CombError> {
    let start = Instant::now();
    let mut runner = Runner {
        cases: Vec::new(),
        deadline,
        partial: false,
    };
    match suite {
        Suite::VermaPeriod => verma_period_suite(&mut runner, params)?,
        Suite::GradedOrbit => graded_orbit_suite(&mut runner, params)?,
        Suite::Heart => heart_suite(&mut runner, params)?,
        Suite::Cohom => cohom_suite(&mut runner, params)?,
        Suite::Blocks => blocks_suite(&mut runner, params)?,
        Suite::Ub1 => ub1_suite(&mut runner, params)?,
        Suite::MeataxeRegular => meataxe_suite(&mut runner, params)?,
        Suite::All => unreachable!("expanded by run"),
    }
    Ok(VerifyReport {
        suite: suite.name(),
        cases: runner.cases,
        wall_ms: start.elapsed().as_millis(),
        partial: runner.partial,
    })
}

fn iso(v: IsoVerdict) -> Result<bool, CombError> {
    match v {
        IsoVerdict::Isomorphic(_) => Ok(true),
        IsoVerdict::NotIsomorphic => Ok(false),
        IsoVerdict::Inconclusive => Err(CombError::Inconclusive("isomorphism test".into())),
    }
}

fn verma_period_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let r = params.r.unwrap_or(1);
    let rd = RootDatum::sl2(p)?;
    // Depth and period table against the valuation of λ + 1.
    for r in 1..=r.max(2) {
        for lambda in 0..(p as u64).pow(r) {
            let dep = valuation(lambda as i64 + 1, p).unwrap() + 1;
            if dep > r {
                continue;
            }
            let want = 2 * (p as u64).pow(r - dep);
            let got = verma_period(&rd, &Weight::sl2(lambda as i64), r)
                .map(|per| (json!({ "depth": rd.depth(&Weight::sl2(lambda as i64)).ok(), "period": per }), per == want));
            run.push(
                json!({ "p": p, "r": r, "lambda": lambda }),
                json!({ "depth": Depth::Finite(dep), "period": want }),
                "valuation of lambda + 1",
                got,
            );
        }
    }
    let sl2 = Sl2Algebra::with_config(p, 1, config(params))?;
    let alg = sl2.algebra();
    for lambda in 0..p as u64 - 1 {
        if run.out_of_time() {
            return Ok(());
        }
        let got = (|| {
            let z = sl2.verma_module(lambda)?;
            let w1 = iso(alg.is_isomorphic(&alg.heller(&z)?, &z)?)?;
            let w2 = iso(alg.is_isomorphic(&alg.heller_power(&z, 2)?, &z)?)?;
            let per = verma_period(&rd, &Weight::sl2(lambda as i64), 1)?;
            let ok = !w1 && w2 && per == 2;
            Ok((json!({ "omega1_iso": w1, "omega2_iso": w2, "period": per }), ok))
        })();
        run.push(
            json!({ "p": p, "r": 1, "lambda": lambda }),
            json!({ "omega1_iso": false, "omega2_iso": true, "period": 2 }),
            "period formula, ungraded oracle",
            got,
        );
    }
    let got = (|| {
        let st = sl2.verma_module(p as u64 - 1)?;
        let d = alg.heller(&st)?.dim();
        Ok((json!({ "heller_dim": d }), d == 0))
    })();
    run.push(
        json!({ "p": p, "r": 1, "lambda": p - 1 }),
        json!({ "heller_dim": 0 }),
        "depth exceeds height",
        got,
    );
    Ok(())
}

fn graded_orbit_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let rd = RootDatum::sl2(p)?;
    let sl2 = Sl2Algebra::with_config(p, 1, config(params))?;
    let alg = sl2.algebra();
    for lambda in 0..p as i64 - 1 {
        for n in [1i64, -1] {
            if run.out_of_time() {
                return Ok(());
            }
            let target = heller_orbit_verma(&rd, &Weight::sl2(lambda), 1, n)?.0[0];
            let got = (|| {
                let z = sl2.graded_verma(lambda)?;
                let omega = alg.heller_power(&z, 2 * n)?;
                let ok = iso(alg.is_isomorphic(&omega, &sl2.graded_verma(target)?)?)?;
                Ok((json!({ "isomorphic_to": if ok { json!(target) } else { Value::Null } }), ok))
            })();
            run.push(
                json!({ "p": p, "lambda": lambda, "omega_power": 2 * n }),
                json!({ "isomorphic_to": target }),
                "Heller orbit formula, graded oracle",
                got,
            );
        }
        let got = (|| {
            let z = sl2.graded_verma(lambda)?;
            let mut bad = Vec::new();
            let mut cur = z;
            for n in 1..=4 {
                cur = alg.heller(&cur)?;
                if cur.grading().unwrap().iter().any(|d| (d - lambda).rem_euclid(2) != 0) {
                    bad.push(n);
                }
            }
            Ok((json!({ "off_coset_powers": bad }), bad.is_empty()))
        })();
        run.push(
            json!({ "p": p, "lambda": lambda, "powers": "1..=4" }),
            json!({ "off_coset_powers": [] }),
            "weights stay in lambda + 2Z",
            got,
        );
    }
    Ok(())
}

fn heart_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let r = params.r.unwrap_or(2);
    let sl2 = Sl2Algebra::with_config(p, r, config(params))?;
    let alg = sl2.algebra();
    let high: u64 = (1..r).map(|i| (p as u64 - 1) * (p as u64).pow(i)).sum();
    for lambda0 in 0..p as u64 - 1 {
        if run.out_of_time() {
            return Ok(());
        }
        let lambda = lambda0 + high;
        let want = heart_weights(p, r, lambda)?;
        let got = (|| {
            let ht = sl2.heart(lambda)?;
            let factors = sl2.composition_weights(&ht)?;
            let weights: Vec<u64> = factors.keys().copied().collect();
            let indec = alg.is_indecomposable(&ht.forget_grading())?;
            let socle: usize = alg.socle(&ht.forget_grading())?.values().sum();
            let ok = weights == want && indec && socle == 1;
            Ok((
                json!({ "weights": weights, "multiplicities": factors, "indecomposable": indec, "socle_length": socle }),
                ok,
            ))
        })();
        run.push(
            json!({ "p": p, "r": r, "lambda": lambda }),
            json!({ "weights": want, "indecomposable": true, "socle_length": 1 }),
            "heart weight list, oracle heart",
            got,
        );
    }
    Ok(())
}

fn cohom_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let r = params.r.unwrap_or(2);
    let n = 2 * p as u64;
    let closed = cohom_dim(r, n);
    let enumerated = cohom_dim_by_enumeration(r, n);
    let got = (|| {
        let res = TruncatedPolyAlgebra::with_config(p, r, config(params))?.minimal_resolution(n as usize)?;
        let ranks: Vec<u64> = res.ranks.iter().map(|&k| k as u64).collect();
        let all = (0..=n).all(|k| ranks[k as usize] == cohom_dim(r, k));
        let resolved = ranks[n as usize];
        Ok((
            json!({ "closed_form": closed, "enumeration": enumerated, "resolution": resolved, "ranks": ranks }),
            all && closed == enumerated && closed == resolved,
        ))
    })();
    let expected = if r == 2 { json!(2 * p + 1) } else { json!(closed) };
    run.push(
        json!({ "p": p, "r": r, "n": n }),
        json!({ "dim": expected }),
        "closed form, enumeration and minimal resolution",
        got,
    );
    Ok(())
}

fn blocks_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let heights: Vec<u32> = params.r.map_or(vec![1, 2], |r| vec![r]);
    for &r in &heights {
        let top = (p as u64).pow(r);
        let mut seen = BTreeMap::new();
        let mut overlap = false;
        for id in BlockId::all(p, r)? {
            for w in block_members(&id) {
                overlap |= seen.insert(w, id).is_some();
            }
        }
        let consistent = seen.iter().all(|(&w, id)| block_of(p, r, w).map_or(false, |b| b == *id));
        let covers = seen.len() as u64 == top && seen.keys().copied().eq(0..top);
        let st = block_members(&block_of(p, r, top - 1)?);
        run.push(
            json!({ "p": p, "r": r }),
            json!({ "partition": true, "steinberg_block": [top - 1] }),
            "digit description of blocks",
            Ok((
                json!({ "partition": covers && !overlap && consistent, "steinberg_block": st }),
                covers && !overlap && consistent && st == vec![top - 1],
            )),
        );
        if r >= 2 {
            for i in 0..=(p - 3) / 2 {
                let id = BlockId::regular(p, r, i, 0)?;
                let cx2: BTreeSet<u64> = block_members(&id)
                    .into_iter()
                    .filter(|&w| simple_complexity(p, r, w).unwrap() == 2)
                    .collect();
                let want = BTreeSet::from([top - p as u64 + i as u64, top - 2 - i as u64]);
                run.push(
                    json!({ "p": p, "r": r, "block": { "i": i, "s": 0 } }),
                    json!({ "complexity_two": want }),
                    "complexity-two simples listed per block",
                    Ok((json!({ "complexity_two": cx2 }), cx2 == want)),
                );
            }
            if run.out_of_time() {
                return Ok(());
            }
            let got = (|| {
                let big = Sl2Algebra::with_config(p, r, config(params))?;
                let small = Sl2Algebra::with_config(p, r - 1, config(params))?;
                let mut bad = Vec::new();
                for n in 0..(p as u64).pow(r - 1) {
                    let Ok(w) = morita_weight_map(p, r, 1, n) else { continue };
                    if big.simple_module(w)?.dim() != p as usize * small.simple_module(n)?.dim() {
                        bad.push(n);
                    }
                }
                Ok((json!({ "mismatches": bad }), bad.is_empty()))
            })();
            run.push(
                json!({ "p": p, "r": r, "s": 1 }),
                json!({ "mismatches": [] }),
                "Morita weight map, oracle simple dimensions",
                got,
            );
        }
    }
    Ok(())
}

fn ub1_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let cfg = config(params);
    let sl2 = Sl2Algebra::with_config(p, 1, cfg)?;
    let alg = sl2.algebra();
    for kind in ["simple", "verma"] {
        for lambda in 0..p as u64 {
            if run.out_of_time() {
                return Ok(());
            }
            let got = (|| {
                let m = if kind == "simple" { sl2.simple_module(lambda)? } else { sl2.verma_module(lambda)? };
                let trace = alg.ext_dims(&m, cfg.min_trace_length.max(6))?;
                let mut reports = Vec::new();
                let mut ok = true;
                for n in 1..=3 {
                    let rep = ub1_bound_check(&trace, 1, n, cfg.min_trace_length)?;
                    ok &= rep.inequality_holds;
                    reports.push(rep);
                }
                Ok((json!(reports), ok))
            })();
            run.push(
                json!({ "p": p, "r": 1, "module": kind, "lambda": lambda, "n": [1, 2, 3] }),
                json!({ "inequality_holds": true }),
                "complexity bounded by Ext in degree 2n",
                got,
            );
        }
    }
    Ok(())
}

fn meataxe_suite(run: &mut Runner, params: &VerifyParams) -> Result<(), CombError> {
    let p = params.p;
    let sl2 = Sl2Algebra::with_config(p, 1, config(params))?;
    let alg = sl2.algebra();
    let mut want: BTreeMap<i64, (usize, usize)> = (0..p as i64 - 1).map(|l| (l, (2 * p as usize, l as usize + 1))).collect();
    want.insert(p as i64 - 1, (p as usize, p as usize));
    let got = (|| {
        let reg = sl2.regular_module()?;
        let mut found: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
        for s in alg.meataxe_split(&reg)? {
            let top = alg.top(&s.module)?;
            let label = match top.iter().collect::<Vec<_>>()[..] {
                [(&l, &1)] => l,
                _ => -1,
            };
            let entry = found.entry(label).or_insert((s.module.dim(), 0));
            if entry.0 != s.module.dim() {
                entry.0 = 0;
            }
            entry.1 += 1;
        }
        let ok = found == want;
        Ok((json!(table(&found)), ok))
    })();
    run.push(
        json!({ "p": p, "algebra": "u(sl2)", "dim": (p as usize).pow(3) }),
        json!(table(&want)),
        "Wedderburn multiplicities dim L(lambda)",
        got,
    );
    Ok(())
}

fn table(m: &BTreeMap<i64, (usize, usize)>) -> Value {
    Value::Array(
        m.iter()
            .map(|(l, (d, k))| json!({ "top": l, "dim": d, "count": k }))
            .collect(),
    )
}
