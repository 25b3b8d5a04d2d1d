//! Finite-dimensional modules over generator-presented algebras.
//!
//! An algebra is a [`Presentation`] (generators, degrees, relations) plus a
//! [`Catalog`] that designates its simple modules and their projective
//! covers. Everything else (Hom spaces, radicals, socles, indecomposable
//! splitting, projective covers, Heller translates, isomorphism tests and
//! Ext dimensions) is computed here by exact linear algebra.

mod catalog;
mod heller;
mod hom;
mod iso;
mod meataxe;
mod module;
mod structure;

pub use catalog::{Catalog, FixedCatalog};
pub use heller::{estimate_complexity, Cover, ResolutionTrace, TraceReport};
pub use hom::hom_space;
pub use iso::IsoVerdict;
pub use meataxe::Summand;
pub use module::{Module, ModuleFile, Presentation, RelationChecker};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fplinalg::{FpMatrix, LinalgError};

pub const DEFAULT_SEED: u64 = 0xF0B;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("invalid action: {0}")]
    BadAction(String),
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("not a submodule: {0}")]
    NotSubmodule(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("module file: {0}")]
    Json(String),
}

/// Knobs for the randomized parts of the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub seed: u64,
    /// Random endomorphisms tried before a module is declared indecomposable.
    pub split_trials: usize,
    /// Random homomorphisms tried when looking for an isomorphism.
    pub iso_trials: usize,
    pub max_dim: usize,
    pub min_trace_length: usize,
    pub max_trace_length: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: DEFAULT_SEED,
            split_trials: 64,
            iso_trials: 64,
            max_dim: 2000,
            min_trace_length: 12,
            max_trace_length: 256,
        }
    }
}

/// A designated projective indecomposable with a vector generating it.
#[derive(Clone, Debug)]
pub struct Projective {
    pub label: i64,
    pub module: Module,
    pub generator: Vec<u32>,
}

type Cache<T> = Mutex<HashMap<(i64, bool), Arc<T>>>;

/// A presented algebra together with its designated simples and projectives.
pub struct GenAlgebra {
    pres: Arc<Presentation>,
    catalog: Box<dyn Catalog>,
    config: OracleConfig,
    simples: Cache<Module>,
    projectives: Cache<Projective>,
}

impl GenAlgebra {
    pub fn new(pres: Arc<Presentation>, catalog: Box<dyn Catalog>, config: OracleConfig) -> Self {
        GenAlgebra {
            pres,
            catalog,
            config,
            simples: Mutex::new(HashMap::new()),
            projectives: Mutex::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn id(&self) -> &str {
        self.pres.id()
    }

    pub fn modulus(&self) -> u32 {
        self.pres.modulus()
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    /// Labels of the full set of ungraded simples.
    pub fn simple_labels(&self) -> Vec<i64> {
        self.catalog.labels()
    }

    pub(crate) fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub(crate) fn random_combination(&self, basis: &[FpMatrix], rng: &mut ChaCha8Rng) -> Option<FpMatrix> {
        let first = basis.first()?;
        let p = self.modulus();
        let mut acc = FpMatrix::zeros(first.rows(), first.cols(), p);
        for b in basis {
            let c = rng.gen_range(0..p) as i64;
            if c != 0 {
                acc = &acc + &b.scale(c);
            }
        }
        Some(acc)
    }

    pub(crate) fn check_module(&self, m: &Module) -> Result<(), RepError> {
        if m.presentation().id() != self.pres.id() || m.modulus() != self.modulus() {
            return Err(RepError::AlgebraMismatch {
                left: self.pres.id().to_string(),
                right: m.presentation().id().to_string(),
            });
        }
        if m.dim() > self.config.max_dim {
            return Err(RepError::BudgetExceeded(format!(
                "dimension {} above bound {}",
                m.dim(),
                self.config.max_dim
            )));
        }
        Ok(())
    }

    /// The designated simple with the given label.
    pub fn simple(&self, label: i64, graded: bool) -> Result<Arc<Module>, RepError> {
        if let Some(s) = self.simples.lock().unwrap().get(&(label, graded)) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.catalog.simple(self, label, graded)?);
        self.simples.lock().unwrap().insert((label, graded), s.clone());
        Ok(s)
    }

    /// Designated simples that can occur as composition factors of `m`.
    pub fn candidate_simples(&self, m: &Module) -> Result<Vec<(i64, Arc<Module>)>, RepError> {
        self.check_module(m)?;
        let graded = m.is_graded();
        self.catalog
            .simple_labels_for(self, m)?
            .into_iter()
            .map(|l| Ok((l, self.simple(l, graded)?)))
            .collect()
    }

    /// The projective cover of the designated simple with the given label.
    pub fn projective(&self, label: i64, graded: bool) -> Result<Arc<Projective>, RepError> {
        if let Some(p) = self.projectives.lock().unwrap().get(&(label, graded)) {
            return Ok(p.clone());
        }
        let module = self.catalog.projective(self, label, graded)?;
        self.check_module(&module)?;
        let generator = self.top_generator(&module)?;
        let proj = Arc::new(Projective {
            label,
            module,
            generator,
        });
        self.projectives.lock().unwrap().insert((label, graded), proj.clone());
        Ok(proj)
    }

    /// A standard basis vector outside the radical; it generates a module
    /// with simple top.
    fn top_generator(&self, m: &Module) -> Result<Vec<u32>, RepError> {
        let rad = self.radical(m)?;
        let mut ech = crate::fplinalg::Echelon::new(m.dim(), m.modulus());
        for c in rad.columns() {
            ech.insert(&c);
        }
        for i in 0..m.dim() {
            let mut e = vec![0u32; m.dim()];
            e[i] = 1;
            if !ech.contains(&e) {
                return Ok(e);
            }
        }
        Err(RepError::BadAction("projective has no top".into()))
    }
}

impl fmt::Debug for GenAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenAlgebra")
            .field("id", &self.pres.id())
            .field("config", &self.config)
            .finish()
    }
}
