use super::{GenAlgebra, Module, RepError};

/// Designated simples and projective covers of an algebra.
///
/// Simples are labelled by integers; for graded modules a label also fixes
/// the degrees.
pub trait Catalog: Send + Sync {
    /// Labels of a full set of ungraded simples.
    fn labels(&self) -> Vec<i64>;

    /// Labels of every simple that may occur as a composition factor of `m`.
    fn simple_labels_for(&self, alg: &GenAlgebra, m: &Module) -> Result<Vec<i64>, RepError>;

    fn simple(&self, alg: &GenAlgebra, label: i64, graded: bool) -> Result<Module, RepError>;

    /// Projective cover of `simple(label, graded)`.
    fn projective(&self, alg: &GenAlgebra, label: i64, graded: bool) -> Result<Module, RepError>;
}

/// A catalog given by explicit ungraded lists.
pub struct FixedCatalog {
    entries: Vec<(i64, Module, Module)>,
}

impl FixedCatalog {
    /// `entries` holds (label, simple, projective cover) triples.
    pub fn new(entries: Vec<(i64, Module, Module)>) -> Self {
        FixedCatalog { entries }
    }

    fn find(&self, label: i64, graded: bool) -> Result<&(i64, Module, Module), RepError> {
        if graded {
            return Err(RepError::Unsupported("graded modules over a fixed catalog".into()));
        }
        self.entries
            .iter()
            .find(|e| e.0 == label)
            .ok_or_else(|| RepError::OutOfRange(format!("no simple labelled {label}")))
    }
}

impl Catalog for FixedCatalog {
    fn labels(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    fn simple_labels_for(&self, _alg: &GenAlgebra, m: &Module) -> Result<Vec<i64>, RepError> {
        if m.is_graded() {
            return Err(RepError::Unsupported("graded modules over a fixed catalog".into()));
        }
        Ok(self.labels())
    }

    fn simple(&self, _alg: &GenAlgebra, label: i64, graded: bool) -> Result<Module, RepError> {
        Ok(self.find(label, graded)?.1.clone())
    }

    fn projective(&self, _alg: &GenAlgebra, label: i64, graded: bool) -> Result<Module, RepError> {
        Ok(self.find(label, graded)?.2.clone())
    }
}
