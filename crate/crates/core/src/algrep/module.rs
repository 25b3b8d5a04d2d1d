use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::RepError;
use crate::fplinalg::{Echelon, FpMatrix};

/// Verifies the defining relations of an algebra on candidate action matrices.
pub trait RelationChecker: Send + Sync {
    fn check(&self, action: &[FpMatrix], grading: Option<&[i64]>) -> Result<(), String>;
}

impl<F> RelationChecker for F
where
    F: Fn(&[FpMatrix], Option<&[i64]>) -> Result<(), String> + Send + Sync,
{
    fn check(&self, action: &[FpMatrix], grading: Option<&[i64]>) -> Result<(), String> {
        self(action, grading)
    }
}

/// A finite presentation: named generators, the degree each one shifts by
/// in graded modules, the sign of the antipode on each generator (used to
/// form dual modules) and a relation checker.
pub struct Presentation {
    id: String,
    p: u32,
    generators: Vec<String>,
    degrees: Vec<i64>,
    antipode: Vec<i64>,
    checker: Box<dyn RelationChecker>,
}

impl Presentation {
    pub fn new(
        id: impl Into<String>,
        p: u32,
        generators: Vec<String>,
        degrees: Vec<i64>,
        antipode: Vec<i64>,
        checker: Box<dyn RelationChecker>,
    ) -> Self {
        assert_eq!(generators.len(), degrees.len());
        assert_eq!(generators.len(), antipode.len());
        Presentation {
            id: id.into(),
            p,
            generators,
            degrees,
            antipode,
            checker,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn check(&self, action: &[FpMatrix], grading: Option<&[i64]>) -> Result<(), String> {
        self.checker.check(action, grading)
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("id", &self.id)
            .field("p", &self.p)
            .field("generators", &self.generators)
            .finish()
    }
}

/// A module over a presented algebra: one action matrix per generator and an
/// optional integer degree per basis vector.
#[derive(Clone)]
pub struct Module {
    pres: Arc<Presentation>,
    dim: usize,
    action: Vec<FpMatrix>,
    grading: Option<Vec<i64>>,
}

impl Module {
    /// Validated constructor: shapes, grading compatibility and relations.
    pub fn new(pres: Arc<Presentation>, action: Vec<FpMatrix>, grading: Option<Vec<i64>>) -> Result<Self, RepError> {
        let m = Self::from_parts(pres, action, grading)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Shape and grading checks only; used for modules derived from
    /// already-validated ones (submodules, quotients, sums).
    pub(crate) fn from_parts(
        pres: Arc<Presentation>,
        action: Vec<FpMatrix>,
        grading: Option<Vec<i64>>,
    ) -> Result<Self, RepError> {
        if action.len() != pres.generators.len() {
            return Err(RepError::BadAction(format!(
                "{} action matrices for {} generators",
                action.len(),
                pres.generators.len()
            )));
        }
        let dim = match (&grading, action.first()) {
            (Some(g), _) => g.len(),
            (None, Some(a)) => a.rows(),
            (None, None) => 0,
        };
        for (name, a) in pres.generators.iter().zip(&action) {
            if a.rows() != dim || a.cols() != dim {
                return Err(RepError::BadAction(format!("generator {name} is not {dim}x{dim}")));
            }
            if a.modulus() != pres.p {
                return Err(RepError::BadAction(format!("generator {name} has wrong modulus")));
            }
        }
        let m = Module {
            pres,
            dim,
            action,
            grading,
        };
        m.check_grading()?;
        Ok(m)
    }

    pub fn zero(pres: Arc<Presentation>, graded: bool) -> Self {
        let p = pres.p;
        let action = pres.generators.iter().map(|_| FpMatrix::zeros(0, 0, p)).collect();
        Module {
            pres,
            dim: 0,
            action,
            grading: graded.then(Vec::new),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.pres.p
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    pub fn generator(&self, name: &str) -> Option<&FpMatrix> {
        self.pres.generator_index(name).map(|i| &self.action[i])
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.pres, &other.pres) || (self.pres.id == other.pres.id && self.pres.p == other.pres.p)
    }

    pub fn check_relations(&self) -> Result<(), RepError> {
        self.pres
            .check(&self.action, self.grading.as_deref())
            .map_err(|e| RepError::BadAction(format!("{}: {e}", self.pres.id)))
    }

    fn check_grading(&self) -> Result<(), RepError> {
        let Some(deg) = &self.grading else {
            return Ok(());
        };
        for ((name, a), shift) in self.pres.generators.iter().zip(&self.action).zip(&self.pres.degrees) {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if a.get(i, j) != 0 && deg[i] != deg[j] + shift {
                        return Err(RepError::Grading(format!(
                            "generator {name} maps degree {} to {} (shift {shift})",
                            deg[j], deg[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Degree of a homogeneous vector, `None` for the zero vector.
    pub fn degree_of(&self, v: &[u32]) -> Option<i64> {
        let deg = self.grading.as_ref()?;
        let mut found = None;
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                match found {
                    None => found = Some(deg[i]),
                    Some(d) => debug_assert_eq!(d, deg[i], "vector is not homogeneous"),
                }
            }
        }
        found
    }

    pub fn forget_grading(&self) -> Module {
        Module {
            grading: None,
            ..self.clone()
        }
    }

    pub fn with_grading(&self, grading: Vec<i64>) -> Result<Module, RepError> {
        Module::from_parts(self.pres.clone(), self.action.clone(), Some(grading))
    }

    /// Twist by a degree shift (graded modules only; a no-op otherwise).
    pub fn shift(&self, by: i64) -> Module {
        Module {
            grading: self.grading.as_ref().map(|g| g.iter().map(|d| d + by).collect()),
            ..self.clone()
        }
    }

    /// Dual module: each generator acts by the transpose of its antipode image.
    pub fn dual(&self) -> Module {
        let action = self
            .action
            .iter()
            .zip(&self.pres.antipode)
            .map(|(a, &s)| a.transpose().scale(s))
            .collect();
        Module {
            pres: self.pres.clone(),
            dim: self.dim,
            action,
            grading: self.grading.as_ref().map(|g| g.iter().map(|d| -d).collect()),
        }
    }

    pub fn direct_sum(parts: &[&Module]) -> Result<Module, RepError> {
        let first = parts.first().ok_or_else(|| RepError::BadAction("empty direct sum".into()))?;
        for m in parts {
            if !first.same_algebra(m) {
                return Err(RepError::AlgebraMismatch {
                    left: first.pres.id.clone(),
                    right: m.pres.id.clone(),
                });
            }
        }
        let graded = parts.iter().all(|m| m.is_graded());
        let p = first.modulus();
        let action = (0..first.action.len())
            .map(|g| FpMatrix::block_diag(&parts.iter().map(|m| &m.action[g]).collect::<Vec<_>>(), p))
            .collect();
        let grading = graded.then(|| parts.iter().flat_map(|m| m.grading.clone().unwrap()).collect());
        Module::from_parts(first.pres.clone(), action, grading)
    }

    /// The submodule spanned by the (independent) columns of `basis`.
    pub fn submodule(&self, basis: &FpMatrix) -> Result<Module, RepError> {
        let k = basis.cols();
        if k == 0 {
            return Ok(Module::zero(self.pres.clone(), self.is_graded()));
        }
        let rows = basis.transpose().pivot_columns();
        if rows.len() != k {
            return Err(RepError::NotSubmodule("basis columns are dependent".into()));
        }
        let square_inv = basis.select_rows(&rows).inverse().expect("pivot rows are independent");
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let image = a * basis;
            let x = &square_inv * &image.select_rows(&rows);
            if &(basis * &x) != &image {
                return Err(RepError::NotSubmodule("span is not closed under the action".into()));
            }
            action.push(x);
        }
        let grading = match &self.grading {
            Some(_) => Some(
                basis
                    .columns()
                    .iter()
                    .map(|c| self.degree_of(c).expect("basis vectors are nonzero"))
                    .collect(),
            ),
            None => None,
        };
        Module::from_parts(self.pres.clone(), action, grading)
    }

    /// Quotient by the submodule spanned by `basis`, with the projection map
    /// (a `dim(Q) x dim(M)` matrix).
    pub fn quotient(&self, basis: &FpMatrix) -> Result<(Module, FpMatrix), RepError> {
        let p = self.modulus();
        let n = self.dim;
        let k = basis.cols();
        let mut ech = Echelon::new(n, p);
        for c in basis.columns() {
            ech.insert(&c);
        }
        if ech.rank() != k {
            return Err(RepError::NotSubmodule("basis columns are dependent".into()));
        }
        let mut complement = Vec::new();
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            if ech.insert(&e) {
                complement.push(i);
            }
        }
        let comp = FpMatrix::identity(n, p).select_columns(&complement);
        let change = FpMatrix::hstack(&[basis, &comp])?;
        let inv = change.inverse().expect("basis plus complement is a basis");
        let proj = inv.select_rows(&(k..n).collect::<Vec<_>>());
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            // the image of the submodule must vanish in the quotient
            if !(&proj * &(a * basis)).is_zero() {
                return Err(RepError::NotSubmodule("span is not closed under the action".into()));
            }
            action.push(&proj * &(a * &comp));
        }
        let grading = self
            .grading
            .as_ref()
            .map(|g| complement.iter().map(|&i| g[i]).collect());
        Ok((Module::from_parts(self.pres.clone(), action, grading)?, proj))
    }

    /// Does `map` (a `dim(N) x dim(M)` matrix) intertwine `self` with `target`?
    pub fn is_homomorphism(&self, target: &Module, map: &FpMatrix) -> bool {
        if map.rows() != target.dim || map.cols() != self.dim {
            return false;
        }
        let commutes = self
            .action
            .iter()
            .zip(&target.action)
            .all(|(a, b)| map * a == b * map);
        let degree_zero = match (&self.grading, &target.grading) {
            (Some(ds), Some(dt)) => {
                (0..map.rows()).all(|i| (0..map.cols()).all(|j| map.get(i, j) == 0 || dt[i] == ds[j]))
            }
            _ => true,
        };
        commutes && degree_zero
    }

    pub fn to_file(&self) -> ModuleFile {
        let mut action = BTreeMap::new();
        for (name, a) in self.pres.generators.iter().zip(&self.action) {
            action.insert(name.clone(), a.to_rows());
        }
        ModuleFile {
            p: self.pres.p,
            algebra: self.pres.id.clone(),
            dim: self.dim,
            generators: self.pres.generators.clone(),
            action,
            grading: self.grading.clone(),
        }
    }

    /// Rebuild a module from its file form against a known presentation.
    pub fn from_file(file: &ModuleFile, pres: Arc<Presentation>) -> Result<Module, RepError> {
        if file.algebra != pres.id || file.p != pres.p {
            return Err(RepError::AlgebraMismatch {
                left: file.algebra.clone(),
                right: pres.id.clone(),
            });
        }
        if file.generators != pres.generators {
            return Err(RepError::Json(format!(
                "generator list {:?} does not match {:?}",
                file.generators, pres.generators
            )));
        }
        let mut action = Vec::with_capacity(file.generators.len());
        for name in &file.generators {
            let rows = file
                .action
                .get(name)
                .ok_or_else(|| RepError::Json(format!("missing action for {name}")))?;
            if rows.len() != file.dim {
                return Err(RepError::Json(format!("action for {name} has {} rows", rows.len())));
            }
            let data: Vec<u32> = rows.iter().flatten().copied().collect();
            action.push(FpMatrix::new(file.dim, file.dim, file.p, data)?);
        }
        if let Some(g) = &file.grading {
            if g.len() != file.dim {
                return Err(RepError::Json("grading length differs from dim".into()));
            }
        }
        Module::new(pres, action, file.grading.clone())
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("algebra", &self.pres.id)
            .field("dim", &self.dim)
            .field("grading", &self.grading)
            .finish()
    }
}

/// On-disk JSON form of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub p: u32,
    pub algebra: String,
    pub dim: usize,
    pub generators: Vec<String>,
    pub action: BTreeMap<String, Vec<Vec<u32>>>,
    pub grading: Option<Vec<i64>>,
}
