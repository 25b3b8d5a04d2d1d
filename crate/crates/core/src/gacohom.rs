//! Cohomology of the Frobenius kernels `G_a(r)`: the truncated polynomial
//! algebra `F_p[u_0, …, u_{r-1}] / (u_i^p)`, its minimal resolution of the
//! trivial module and the graded dimensions of `H^*(G_a(r), k)`.

use std::sync::Arc;

use serde::Serialize;

use crate::algrep::{FixedCatalog, GenAlgebra, Module, OracleConfig, Presentation, RepError};
use crate::fplinalg::{is_prime, FpMatrix};
use crate::weightcomb::Weight;

pub fn algebra_id(p: u32, r: u32) -> String {
    format!("ga-p{p}-r{r}")
}

pub fn parse_algebra_id(id: &str) -> Option<(u32, u32)> {
    let (p, r) = id.strip_prefix("ga-p")?.split_once("-r")?;
    Some((p.parse().ok()?, r.parse().ok()?))
}

/// Generators `u_0, …, u_{r-1}`, commuting, with `u_i^p = 0`.
pub fn presentation(p: u32, r: u32) -> Arc<Presentation> {
    let names = (0..r).map(|i| format!("u{i}")).collect();
    let degrees = (0..r).map(|i| -2 * (p as i64).pow(i)).collect();
    let checker = move |action: &[FpMatrix], _: Option<&[i64]>| -> Result<(), String> {
        for (i, a) in action.iter().enumerate() {
            if !a.pow(p as u64).is_zero() {
                return Err(format!("u{i}^p != 0"));
            }
            for (j, b) in action.iter().enumerate().skip(i + 1) {
                if !(&(a * b) - &(b * a)).is_zero() {
                    return Err(format!("u{i} and u{j} do not commute"));
                }
            }
        }
        Ok(())
    };
    Arc::new(Presentation::new(
        algebra_id(p, r),
        p,
        names,
        degrees,
        vec![-1; r as usize],
        Box::new(checker),
    ))
}

/// `kG_a(r)` with its only simple (trivial) and only projective (regular).
#[derive(Clone, Debug)]
pub struct TruncatedPolyAlgebra {
    p: u32,
    r: u32,
    alg: Arc<GenAlgebra>,
}

impl TruncatedPolyAlgebra {
    pub fn new(p: u32, r: u32) -> Result<Self, RepError> {
        Self::with_config(p, r, OracleConfig::default())
    }

    pub fn with_config(p: u32, r: u32, config: OracleConfig) -> Result<Self, RepError> {
        if !is_prime(p as u64) {
            return Err(RepError::OutOfRange(format!("{p} is not prime")));
        }
        if r == 0 || (p as u64).checked_pow(r).map_or(true, |n| n as usize > config.max_dim) {
            return Err(RepError::OutOfRange(format!("height {r} out of range")));
        }
        let pres = presentation(p, r);
        let trivial = trivial_module(&pres, r);
        let regular = regular_module(&pres, p, r)?;
        let catalog = FixedCatalog::new(vec![(0, trivial, regular)]);
        Ok(TruncatedPolyAlgebra {
            p,
            r,
            alg: Arc::new(GenAlgebra::new(pres, Box::new(catalog), config)),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn algebra(&self) -> &Arc<GenAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.r)
    }

    pub fn trivial(&self) -> Result<Module, RepError> {
        Ok((*self.alg.simple(0, false)?).clone())
    }

    pub fn regular(&self) -> Result<Module, RepError> {
        Ok(self.alg.projective(0, false)?.module.clone())
    }

    /// Ranks of the terms of the minimal free resolution of `k`, degrees
    /// `0..=length`, with the dimensions of the syzygies.
    pub fn minimal_resolution(&self, length: usize) -> Result<Resolution, RepError> {
        let mut cur = self.trivial()?;
        let mut ranks = Vec::with_capacity(length + 1);
        let mut syzygy_dims = Vec::with_capacity(length + 1);
        for _ in 0..=length {
            let cover = self.alg.projective_cover(&cur)?;
            ranks.push(cover.summands.len());
            syzygy_dims.push(cur.dim());
            cur = cover.module.submodule(&cover.map.kernel_basis())?;
        }
        Ok(Resolution { ranks, syzygy_dims })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub ranks: Vec<usize>,
    pub syzygy_dims: Vec<usize>,
}

fn trivial_module(pres: &Arc<Presentation>, r: u32) -> Module {
    let p = pres.modulus();
    Module::new(pres.clone(), vec![FpMatrix::zeros(1, 1, p); r as usize], None).expect("trivial action")
}

/// Monomial basis `u^a`, `a ∈ [0, p)^r`, indexed with `a_0` least significant.
fn regular_module(pres: &Arc<Presentation>, p: u32, r: u32) -> Result<Module, RepError> {
    let q = p as usize;
    let dim = q.pow(r);
    let action = (0..r as usize)
        .map(|i| {
            let step = q.pow(i as u32);
            FpMatrix::from_fn(dim, dim, p, |row, col| {
                let a_i = (col / step) % q;
                (a_i + 1 < q && row == col + step) as i64
            })
        })
        .collect();
    Module::new(pres.clone(), action, None)
}

/// `dim H^n(G_a(r), k) = binom(n + r - 1, r - 1)`.
pub fn cohom_dim(r: u32, n: u64) -> u64 {
    let k = r as u64 - 1;
    (0..k).fold(1u64, |acc, i| acc * (n + k - i) / (i + 1))
}

/// Count the monomials `x^a y^ε` with `2 Σ a + Σ ε = n` one by one.
pub fn cohom_dim_by_enumeration(r: u32, n: u64) -> u64 {
    fn polys(vars: u32, budget: u64) -> u64 {
        if vars == 0 {
            return (budget == 0) as u64;
        }
        (0..=budget / 2).map(|a| polys(vars - 1, budget - 2 * a)).sum()
    }
    let mut total = 0;
    for mask in 0u32..(1 << r) {
        let eps = mask.count_ones() as u64;
        if eps <= n {
            total += polys(r, n - eps);
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CohomGenerator {
    X(u32),
    Y(u32),
}

/// T-weight `-p^i α` of `x_i` (`1 ≤ i ≤ r`) or `y_i` (`0 ≤ i < r`).
pub fn weight_of_generator(p: u32, r: u32, gen: CohomGenerator, alpha: &Weight) -> Result<Weight, RepError> {
    let i = match gen {
        CohomGenerator::X(i) if (1..=r).contains(&i) => i,
        CohomGenerator::Y(i) if i < r => i,
        _ => return Err(RepError::OutOfRange(format!("{gen:?} with r = {r}"))),
    };
    let scale = -(p as i64).pow(i);
    Ok(Weight(alpha.0.iter().map(|a| scale * a).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepFiniteVerdict {
    Diagonalizable,
    RepresentationFinite,
    Neither,
}

/// Verdict from `hdim = dim H^{2np^{r-1}}(G, k)`.
pub fn repfinite_criterion(hdim: u64) -> RepFiniteVerdict {
    match hdim {
        0 => RepFiniteVerdict::Diagonalizable,
        1 => RepFiniteVerdict::RepresentationFinite,
        _ => RepFiniteVerdict::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(cohom_dim(2, 6), 7);
        assert_eq!(cohom_dim(2, 5), 6);
        assert_eq!(cohom_dim(3, 0), 1);
        assert_eq!(cohom_dim(1, 9), 1);
        assert_eq!(cohom_dim(3, 4), 15);
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for r in 1..=4 {
            for n in 0..=12 {
                assert_eq!(cohom_dim_by_enumeration(r, n), cohom_dim(r, n), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn regular_module_relations() {
        let ga = TruncatedPolyAlgebra::new(3, 2).unwrap();
        let reg = ga.regular().unwrap();
        assert_eq!(reg.dim(), 9);
        reg.check_relations().unwrap();
        assert_eq!(parse_algebra_id(&algebra_id(5, 3)), Some((5, 3)));
    }

    #[test]
    fn resolution_p3() {
        let r1 = TruncatedPolyAlgebra::new(3, 1).unwrap().minimal_resolution(5).unwrap();
        assert_eq!(r1.ranks, vec![1; 6]);
        assert_eq!(r1.syzygy_dims, vec![1, 2, 1, 2, 1, 2]);
        let r2 = TruncatedPolyAlgebra::new(3, 2).unwrap().minimal_resolution(6).unwrap();
        assert_eq!(r2.ranks, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn generator_weights() {
        let alpha = Weight::sl2(2);
        assert_eq!(weight_of_generator(3, 2, CohomGenerator::X(1), &alpha).unwrap(), Weight::sl2(-6));
        assert_eq!(weight_of_generator(3, 2, CohomGenerator::Y(0), &alpha).unwrap(), Weight::sl2(-2));
        assert_eq!(weight_of_generator(3, 2, CohomGenerator::X(2), &alpha).unwrap(), Weight::sl2(-18));
        assert!(weight_of_generator(3, 2, CohomGenerator::X(0), &alpha).is_err());
        assert!(weight_of_generator(3, 2, CohomGenerator::Y(2), &alpha).is_err());
    }

    #[test]
    fn verdicts() {
        assert_eq!(repfinite_criterion(cohom_dim(1, 2)), RepFiniteVerdict::RepresentationFinite);
        assert_eq!(repfinite_criterion(cohom_dim(2, 6)), RepFiniteVerdict::Neither);
        assert_eq!(repfinite_criterion(0), RepFiniteVerdict::Diagonalizable);
    }
}
