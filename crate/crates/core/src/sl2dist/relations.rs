//! Presentations of u(sl_2) and Dist(SL(2)_r) with their relation checkers.

use std::sync::Arc;

use crate::algrep::Presentation;
use crate::fplinalg::{binom_mod, FpMatrix};

use super::build::DividedPowers;

pub fn algebra_id(p: u32, r: u32) -> String {
    if r == 1 {
        format!("u-sl2-p{p}")
    } else {
        format!("dist-sl2-p{p}-r{r}")
    }
}

/// Parse an id produced by [`algebra_id`].
pub fn parse_algebra_id(id: &str) -> Option<(u32, u32)> {
    if let Some(p) = id.strip_prefix("u-sl2-p") {
        return p.parse().ok().map(|p| (p, 1));
    }
    let rest = id.strip_prefix("dist-sl2-p")?;
    let (p, r) = rest.split_once("-r")?;
    Some((p.parse().ok()?, r.parse().ok()?))
}

pub fn presentation(p: u32, r: u32) -> Arc<Presentation> {
    let pp = p as i64;
    let (names, degrees): (Vec<String>, Vec<i64>) = if r == 1 {
        (
            vec!["e".into(), "f".into(), "h".into()],
            vec![2, -2, 0],
        )
    } else {
        (0..r)
            .flat_map(|k| {
                let w = 2 * pp.pow(k);
                [(format!("e{k}"), w), (format!("f{k}"), -w)]
            })
            .unzip()
    };
    let antipode = vec![-1; names.len()];
    let checker: Box<dyn crate::algrep::RelationChecker> = if r == 1 {
        Box::new(move |a: &[FpMatrix], g: Option<&[i64]>| check_restricted(p, a, g))
    } else {
        Box::new(move |a: &[FpMatrix], g: Option<&[i64]>| check_divided(p, r, a, g))
    };
    Arc::new(Presentation::new(algebra_id(p, r), p, names, degrees, antipode, checker))
}

fn expect_eq(lhs: &FpMatrix, rhs: &FpMatrix, what: &str) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("relation {what} fails"))
    }
}

fn commutator(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    &(a * b) - &(b * a)
}

fn sl2_relations(e: &FpMatrix, f: &FpMatrix, h: &FpMatrix, p: u32) -> Result<(), String> {
    expect_eq(&commutator(h, e), &e.scale(2), "[h,e]=2e")?;
    expect_eq(&commutator(h, f), &f.scale(-2), "[h,f]=-2f")?;
    expect_eq(&commutator(e, f), h, "[e,f]=h")?;
    let zero = FpMatrix::zeros(e.rows(), e.cols(), p);
    expect_eq(&e.pow(p as u64), &zero, "e^p=0")?;
    expect_eq(&f.pow(p as u64), &zero, "f^p=0")?;
    expect_eq(&h.pow(p as u64), h, "h^p=h")
}

fn check_restricted(p: u32, a: &[FpMatrix], grading: Option<&[i64]>) -> Result<(), String> {
    let (e, f, h) = (&a[0], &a[1], &a[2]);
    sl2_relations(e, f, h, p)?;
    if let Some(g) = grading {
        let weights = FpMatrix::from_fn(g.len(), g.len(), p, |i, j| if i == j { g[i] } else { 0 });
        expect_eq(h, &weights, "h = weight")?;
    }
    Ok(())
}

fn check_divided(p: u32, r: u32, a: &[FpMatrix], grading: Option<&[i64]>) -> Result<(), String> {
    let n = a[0].rows();
    let zero = FpMatrix::zeros(n, n, p);
    let es: Vec<&FpMatrix> = (0..r as usize).map(|k| &a[2 * k]).collect();
    let fs: Vec<&FpMatrix> = (0..r as usize).map(|k| &a[2 * k + 1]).collect();
    for k in 0..r as usize {
        expect_eq(&es[k].pow(p as u64), &zero, "e^(p^k) nilpotency")?;
        expect_eq(&fs[k].pow(p as u64), &zero, "f^(p^k) nilpotency")?;
        for l in 0..k {
            expect_eq(&commutator(es[k], es[l]), &zero, "e's commute")?;
            expect_eq(&commutator(fs[k], fs[l]), &zero, "f's commute")?;
        }
    }
    let h = commutator(es[0], fs[0]);
    sl2_relations(es[0], fs[0], &h, p)?;
    for k in 1..r as usize {
        expect_eq(&commutator(&h, es[k]), &zero, "[h, e^(p^k)] = 0")?;
        expect_eq(&commutator(&h, fs[k]), &zero, "[h, f^(p^k)] = 0")?;
    }
    if let Some(g) = grading {
        let weights = FpMatrix::from_fn(n, n, p, |i, j| if i == j { g[i] } else { 0 });
        expect_eq(&h, &weights, "h = weight")?;
        check_kostant(p, r, a, g)?;
    }
    Ok(())
}

/// `e^(m) f^(n) = sum_j f^(n-j) binom(H-m-n+2j, j) e^(m-j)` for all
/// generator pairs `m = p^k`, `n = p^l`, with `H` acting by the weights.
fn check_kostant(p: u32, r: u32, a: &[FpMatrix], weights: &[i64]) -> Result<(), String> {
    let dp = DividedPowers::new(p, r, a);
    let dim = weights.len();
    let pp = p as u64;
    for k in 0..r {
        for l in 0..r {
            let m = pp.pow(k);
            let n = pp.pow(l);
            let lhs = &dp.e(m) * &dp.f(n);
            let mut rhs = FpMatrix::zeros(dim, dim, p);
            for j in 0..=m.min(n) {
                let em = dp.e(m - j);
                let fnj = dp.f(n - j);
                // binomial evaluated on the weight of e^(m-j) v
                let diag = FpMatrix::from_fn(dim, dim, p, |i, c| {
                    if i == c {
                        binom_mod(weights[i] - m as i64 - n as i64 + 2 * j as i64, j, p) as i64
                    } else {
                        0
                    }
                });
                rhs = &rhs + &(&fnj * &(&diag * &em));
            }
            if lhs != rhs {
                return Err(format!("Kostant rule fails for e^({m}) f^({n})"));
            }
        }
    }
    Ok(())
}
