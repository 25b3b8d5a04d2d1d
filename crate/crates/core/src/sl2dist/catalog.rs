use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algrep::{Catalog, GenAlgebra, Module, Presentation, RepError};

use super::build::{leaf, tensor};
use super::HighestWeight;

/// Designated simples `L_r(λ)` and their projective covers.
///
/// Graded labels are arbitrary integers `μ`: `L̂_r(μ)` is `L_r(μ mod p^r)`
/// with degrees shifted by `μ - (μ mod p^r)`.
pub struct Sl2Catalog {
    p: u32,
    r: u32,
}

impl Sl2Catalog {
    pub fn new(p: u32, r: u32) -> Self {
        Sl2Catalog { p, r }
    }

    fn modulus_r(&self) -> i64 {
        (self.p as i64).pow(self.r)
    }

    /// Split `μ` into its restricted part and the degree shift.
    fn split_label(&self, mu: i64) -> (u64, i64) {
        let lambda = mu.rem_euclid(self.modulus_r());
        (lambda as u64, mu - lambda)
    }

    /// Weights of `L_r(λ)` with multiplicity ignored.
    pub fn simple_weights(&self, lambda: u64) -> BTreeSet<i64> {
        let hw = HighestWeight::new(self.p, self.r, lambda).expect("label reduced mod p^r");
        let mut out = BTreeSet::from([0i64]);
        for (i, &d) in hw.digits().iter().enumerate() {
            let scale = (self.p as i64).pow(i as u32);
            out = out
                .iter()
                .flat_map(|w| (0..=d as i64).map(move |t| w + scale * (d as i64 - 2 * t)))
                .collect();
        }
        out
    }
}

/// `L_r(λ) = ⊗_i L(λ_i)^{[i]}`.
pub(crate) fn steinberg_product(pres: &Arc<Presentation>, hw: &HighestWeight, graded: bool) -> Result<Module, RepError> {
    let mut acc: Option<Module> = None;
    for (i, &d) in hw.digits().iter().enumerate() {
        let l = leaf(pres, d, i as u32, graded)?;
        acc = Some(match acc {
            None => l,
            Some(m) => tensor(&m, &l)?,
        });
    }
    Ok(acc.expect("at least one digit"))
}

/// The graded principal indecomposable with top `L̂(λ0)` for `λ0 < p`: the
/// summand of `St ⊗ L(p-1-λ0)` containing its highest weight.
fn restricted_pim(alg: &GenAlgebra, lambda0: u32) -> Result<Module, RepError> {
    let pres = alg.presentation();
    let p = pres.modulus();
    let st = leaf(pres, p - 1, 0, true)?;
    if lambda0 == p - 1 {
        return Ok(st);
    }
    let x = tensor(&st, &leaf(pres, p - 1 - lambda0, 0, true)?)?;
    let top = 2 * (p as i64 - 1) - lambda0 as i64;
    for s in alg.meataxe_split(&x)? {
        if s.module.grading().unwrap().contains(&top) {
            return Ok(s.module);
        }
    }
    unreachable!("some summand contains the highest weight")
}

impl Catalog for Sl2Catalog {
    fn labels(&self) -> Vec<i64> {
        (0..self.modulus_r()).collect()
    }

    fn simple_labels_for(&self, _alg: &GenAlgebra, m: &Module) -> Result<Vec<i64>, RepError> {
        let Some(g) = m.grading() else {
            return Ok(self.labels());
        };
        let degrees: BTreeSet<i64> = g.iter().copied().collect();
        Ok(degrees
            .iter()
            .copied()
            .filter(|&mu| {
                let (lambda, shift) = self.split_label(mu);
                self.simple_weights(lambda).iter().all(|w| degrees.contains(&(w + shift)))
            })
            .collect())
    }

    fn simple(&self, alg: &GenAlgebra, label: i64, graded: bool) -> Result<Module, RepError> {
        let (lambda, shift) = self.split_label(label);
        if !graded && shift != 0 {
            return Err(RepError::OutOfRange(format!("ungraded simple label {label}")));
        }
        let hw = HighestWeight::new(self.p, self.r, lambda)?;
        Ok(steinberg_product(alg.presentation(), &hw, graded)?.shift(shift))
    }

    fn projective(&self, alg: &GenAlgebra, label: i64, graded: bool) -> Result<Module, RepError> {
        let (lambda, shift) = self.split_label(label);
        if !graded && shift != 0 {
            return Err(RepError::OutOfRange(format!("ungraded simple label {label}")));
        }
        let hw = HighestWeight::new(self.p, self.r, lambda)?;
        let digits = hw.digits();
        if digits[1..].iter().any(|&d| d != self.p - 1) {
            return Err(RepError::Unsupported(format!(
                "projective cover of L_{}({lambda}) outside the tensor-formula family",
                self.r
            )));
        }
        let pres = alg.presentation();
        let mut acc = restricted_pim(alg, digits[0])?;
        for i in 1..self.r {
            acc = tensor(&acc, &leaf(pres, self.p - 1, i, true)?)?;
        }
        let acc = acc.shift(shift);
        Ok(if graded { acc } else { acc.forget_grading() })
    }
}
