//! SL(2): u(sl_2), the divided-power algebras Dist(SL(2)_r) and their
//! standard modules.
//!
//! Generators are `e`, `f`, `h` for `r = 1` and `e0, f0, e1, f1, …` (the
//! divided powers `e^(p^k)`, `f^(p^k)`) for `r ≥ 2`. Weights are integers
//! with `α = 2`; graded modules carry their weights as degrees. Induced
//! modules use the upper Borel: `Z_r(λ)` has basis `f^(a) v_λ` and
//! `e^(m) f^(n) = Σ_j f^(n-j) binom(h-m-n+2j, j) e^(m-j)`.

mod build;
mod catalog;
mod relations;

pub use build::{frobenius_twist, leaf, regular_module, tensor, verma};
pub use catalog::Sl2Catalog;
pub use relations::{algebra_id, parse_algebra_id, presentation};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algrep::{GenAlgebra, Module, OracleConfig, Presentation, RepError};
use crate::fplinalg::is_prime;

/// A weight `0 ≤ λ < p^r` with its base-`p` digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    lambda: u64,
    digits: Vec<u32>,
}

impl HighestWeight {
    pub fn new(p: u32, r: u32, lambda: u64) -> Result<Self, RepError> {
        let bound = (p as u64).pow(r);
        if lambda >= bound {
            return Err(RepError::OutOfRange(format!("weight {lambda} outside [0, {bound})")));
        }
        let mut digits = Vec::with_capacity(r as usize);
        let mut x = lambda;
        for _ in 0..r {
            digits.push((x % p as u64) as u32);
            x /= p as u64;
        }
        Ok(HighestWeight { lambda, digits })
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// Digits `λ_0, …, λ_{r-1}`, least significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }
}

/// Dist(SL(2)_r) over F_p as an algebra with designated simples.
#[derive(Clone, Debug)]
pub struct Sl2Algebra {
    p: u32,
    r: u32,
    alg: Arc<GenAlgebra>,
}

impl Sl2Algebra {
    pub fn new(p: u32, r: u32) -> Result<Self, RepError> {
        Self::with_config(p, r, OracleConfig::default())
    }

    pub fn with_config(p: u32, r: u32, config: OracleConfig) -> Result<Self, RepError> {
        if p < 3 || !is_prime(p as u64) {
            return Err(RepError::OutOfRange(format!("{p} is not an odd prime")));
        }
        if r == 0 || (p as u64).checked_pow(r).map_or(true, |n| n > 1 << 20) {
            return Err(RepError::OutOfRange(format!("height {r} out of range")));
        }
        let alg = GenAlgebra::new(presentation(p, r), Box::new(Sl2Catalog::new(p, r)), config);
        Ok(Sl2Algebra {
            p,
            r,
            alg: Arc::new(alg),
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

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.alg.presentation()
    }

    pub fn highest_weight(&self, lambda: u64) -> Result<HighestWeight, RepError> {
        HighestWeight::new(self.p, self.r, lambda)
    }

    fn p_r(&self) -> i64 {
        (self.p as i64).pow(self.r)
    }

    /// `L_r(λ)`.
    pub fn simple_module(&self, lambda: u64) -> Result<Module, RepError> {
        self.highest_weight(lambda)?;
        Ok((*self.alg.simple(lambda as i64, false)?).clone())
    }

    /// `L̂_r(μ)` for any integer `μ`.
    pub fn graded_simple(&self, mu: i64) -> Result<Module, RepError> {
        Ok((*self.alg.simple(mu, true)?).clone())
    }

    /// `Z_r(λ)`, `0 ≤ λ < p^r`.
    pub fn verma_module(&self, lambda: u64) -> Result<Module, RepError> {
        verma(self.presentation(), lambda as i64, false)
    }

    /// `Ẑ_r(λ)` for any integer `λ`, graded by weight.
    pub fn graded_verma(&self, lambda: i64) -> Result<Module, RepError> {
        verma(self.presentation(), lambda, true)
    }

    /// `P_r(λ)`; for `r ≥ 2` only weights whose higher digits are all `p-1`.
    pub fn principal_indecomposable(&self, lambda: u64) -> Result<Module, RepError> {
        self.highest_weight(lambda)?;
        Ok(self.alg.projective(lambda as i64, false)?.module.clone())
    }

    /// `P̂_r(μ)`, the projective cover of `L̂_r(μ)`.
    pub fn graded_principal_indecomposable(&self, mu: i64) -> Result<Module, RepError> {
        Ok(self.alg.projective(mu, true)?.module.clone())
    }

    /// The summand of the regular module of u(sl_2) with top `L_1(λ)`.
    pub fn pim_from_regular(&self, lambda: u64) -> Result<Module, RepError> {
        self.highest_weight(lambda)?;
        let reg = self.regular_module()?;
        for s in self.alg.meataxe_split(&reg)? {
            let top = self.alg.top(&s.module)?;
            if top.len() == 1 && top.get(&(lambda as i64)) == Some(&1) {
                return Ok(s.module);
            }
        }
        Err(RepError::Inconclusive(format!("no summand with top L({lambda})")))
    }

    pub fn regular_module(&self) -> Result<Module, RepError> {
        regular_module(self.presentation())
    }

    pub fn tensor(&self, a: &Module, b: &Module) -> Result<Module, RepError> {
        tensor(a, b)
    }

    /// `M^{[i]}` as a module over this algebra.
    pub fn frobenius_twist(&self, m: &Module, i: u32) -> Result<Module, RepError> {
        frobenius_twist(self.presentation(), m, i)
    }

    /// Graded heart `rad P̂_r(λ) / soc P̂_r(λ)`.
    pub fn heart(&self, lambda: u64) -> Result<Module, RepError> {
        let hw = self.highest_weight(lambda)?;
        if hw.digits().iter().all(|&d| d == self.p - 1) {
            return Err(RepError::Unsupported("the Steinberg module is simple projective".into()));
        }
        let p = self.graded_principal_indecomposable(lambda as i64)?;
        let rad = self.alg.radical(&p)?;
        let soc = self.alg.socle_basis(&p)?;
        let radical = p.submodule(&rad)?;
        let coords = rad
            .solve_matrix(&soc)?
            .ok_or_else(|| RepError::Inconclusive("socle not inside radical".into()))?;
        Ok(radical.quotient(&coords)?.0)
    }

    /// Composition factors keyed by highest weight reduced mod `p^r`.
    pub fn composition_weights(&self, m: &Module) -> Result<BTreeMap<u64, usize>, RepError> {
        let mut out = BTreeMap::new();
        for (label, k) in self.alg.composition_factors(m)? {
            *out.entry(label.rem_euclid(self.p_r()) as u64).or_insert(0) += k;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
