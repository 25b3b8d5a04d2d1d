use serde::{Deserialize, Serialize};

use super::{GenAlgebra, Module, RepError};
use crate::fplinalg::{Echelon, FpMatrix};

/// A projective cover `P -> M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub module: Module,
    /// Surjection `P -> M` as a `dim M x dim P` matrix.
    pub map: FpMatrix,
    /// Labels of the indecomposable projective summands of `P`, in order.
    pub summands: Vec<i64>,
}

/// Dimensions along a minimal projective resolution.
#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    pub module: Module,
    pub length: usize,
    pub omega_dims: Vec<usize>,
    pub ext_dims: Option<Vec<usize>>,
}

/// Serialized form of a resolution trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub omega_dims: Vec<usize>,
    pub ext_dims: Vec<usize>,
    pub complexity_estimate: serde_json::Value,
}

impl ResolutionTrace {
    pub fn report(&self, min_length: usize) -> TraceReport {
        let complexity_estimate = match estimate_complexity(self, min_length) {
            Ok(c) => serde_json::json!(c),
            Err(_) => serde_json::json!("inconclusive"),
        };
        TraceReport {
            omega_dims: self.omega_dims.clone(),
            ext_dims: self.ext_dims.clone().unwrap_or_default(),
            complexity_estimate,
        }
    }
}

/// Polynomial growth rate of the Heller dimensions.
///
/// Returns 0 when some term vanishes, otherwise `1 + s` where `s` is the
/// least-squares slope of `log dim` against `log n` on the second half of
/// the trace, provided it lies within 0.3 of an integer.
pub fn estimate_complexity(trace: &ResolutionTrace, min_length: usize) -> Result<u32, RepError> {
    let dims = &trace.omega_dims;
    if dims.contains(&0) {
        return Ok(0);
    }
    let len = dims.len().saturating_sub(1);
    if len < min_length.max(2) {
        return Err(RepError::Inconclusive(format!(
            "trace of length {len} is shorter than {min_length}"
        )));
    }
    let pts: Vec<(f64, f64)> = (len / 2..=len)
        .filter(|&n| n >= 1)
        .map(|n| ((n as f64).ln(), (dims[n] as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|q| q.0).sum::<f64>() / k;
    let my = pts.iter().map(|q| q.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|q| (q.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let nearest = slope.round();
    if (slope - nearest).abs() > 0.3 || nearest < 0.0 {
        return Err(RepError::Inconclusive(format!("growth exponent {slope:.3} is not near an integer")));
    }
    Ok(nearest as u32 + 1)
}

impl GenAlgebra {
    pub fn projective_cover(&self, m: &Module) -> Result<Cover, RepError> {
        self.check_module(m)?;
        let p = m.modulus();
        let graded = m.is_graded();
        if m.dim() == 0 {
            return Ok(Cover {
                module: Module::zero(self.presentation().clone(), graded),
                map: FpMatrix::zeros(0, 0, p),
                summands: Vec::new(),
            });
        }
        let mut rad = Echelon::new(m.dim(), p);
        let mut top_labels = Vec::new();
        for (label, s) in self.candidate_simples(m)? {
            let homs = self.hom_space(m, &s)?;
            if !homs.is_empty() {
                top_labels.push(label);
            }
            for f in homs {
                for i in 0..f.rows() {
                    rad.insert(f.row(i));
                }
            }
        }
        let radical = rad.null_space();
        let mut span = Echelon::new(m.dim(), p);
        for c in radical.columns() {
            span.insert(&c);
        }
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        let mut summands = Vec::new();
        for label in top_labels {
            let proj = self.projective(label, graded)?;
            for phi in self.hom_space(&proj.module, m)? {
                let v = phi.mul_vec(&proj.generator);
                if !span.contains(&v) {
                    for c in phi.columns() {
                        span.insert(&c);
                    }
                    parts.push(proj.module.clone());
                    maps.push(phi);
                    summands.push(label);
                }
            }
        }
        if !span.is_full() {
            return Err(RepError::Inconclusive("designated projectives do not cover the top".into()));
        }
        let module = Module::direct_sum(&parts.iter().collect::<Vec<_>>())?;
        let map = FpMatrix::hstack(&maps.iter().collect::<Vec<_>>())?;
        Ok(Cover { module, map, summands })
    }

    /// Kernel of the projective cover.
    pub fn heller(&self, m: &Module) -> Result<Module, RepError> {
        let cover = self.projective_cover(m)?;
        if cover.module.dim() == 0 {
            return Ok(cover.module);
        }
        cover.module.submodule(&cover.map.kernel_basis())
    }

    /// `Ω^n(M)`; negative powers go through duals.
    pub fn heller_power(&self, m: &Module, n: i64) -> Result<Module, RepError> {
        if n < 0 {
            return Ok(self.heller_power(&m.dual(), -n)?.dual());
        }
        let mut cur = m.clone();
        for _ in 0..n {
            cur = self.heller(&cur)?;
        }
        Ok(cur)
    }

    pub fn is_projective(&self, m: &Module) -> Result<bool, RepError> {
        Ok(self.projective_cover(m)?.module.dim() == m.dim())
    }

    /// `M` with all projective summands removed.
    pub fn strip_projectives(&self, m: &Module) -> Result<Module, RepError> {
        if m.dim() == 0 {
            return Ok(m.clone());
        }
        let mut kept = Vec::new();
        for s in self.meataxe_split(m)? {
            if !self.is_projective(&s.module)? {
                kept.push(s.module);
            }
        }
        if kept.is_empty() {
            return Ok(Module::zero(self.presentation().clone(), m.is_graded()));
        }
        Module::direct_sum(&kept.iter().collect::<Vec<_>>())
    }

    /// Dimension of the space of homomorphisms modulo those factoring
    /// through a projective.
    pub fn stable_hom_dim(&self, x: &Module, n: &Module) -> Result<usize, RepError> {
        let homs = self.hom_space(x, n)?;
        if homs.is_empty() {
            return Ok(0);
        }
        let cover = self.projective_cover(n)?;
        let mut ech = Echelon::new(n.dim() * x.dim(), n.modulus());
        for psi in self.hom_space(x, &cover.module)? {
            ech.insert((&cover.map * &psi).as_slice());
            if ech.rank() == homs.len() {
                break;
            }
        }
        Ok(homs.len() - ech.rank())
    }

    /// Heller dimensions of `M` (projective summands removed) up to `length`,
    /// optionally with the stable self-extension dimensions.
    pub fn resolution_trace(&self, m: &Module, length: usize, with_ext: bool) -> Result<ResolutionTrace, RepError> {
        if length > self.config().max_trace_length {
            return Err(RepError::BudgetExceeded(format!(
                "trace length {length} above bound {}",
                self.config().max_trace_length
            )));
        }
        let m0 = self.strip_projectives(m)?;
        let mut omega_dims = Vec::with_capacity(length + 1);
        let mut ext = Vec::with_capacity(length + 1);
        let mut cur = m0.clone();
        for n in 0..=length {
            if n > 0 {
                cur = self.heller(&cur)?;
            }
            omega_dims.push(cur.dim());
            if with_ext {
                ext.push(if cur.dim() == 0 { 0 } else { self.stable_hom_dim(&cur, &m0)? });
            }
        }
        Ok(ResolutionTrace {
            module: m.clone(),
            length,
            omega_dims,
            ext_dims: with_ext.then_some(ext),
        })
    }

    pub fn ext_dims(&self, m: &Module, length: usize) -> Result<ResolutionTrace, RepError> {
        self.resolution_trace(m, length, true)
    }

    pub fn estimate_complexity(&self, trace: &ResolutionTrace) -> Result<u32, RepError> {
        estimate_complexity(trace, self.config().min_trace_length)
    }
}
