use std::collections::BTreeMap;

use super::{GenAlgebra, Module, RepError};
use crate::fplinalg::{Echelon, FpMatrix};

/// Basis (as columns) of the span of the given column vectors.
pub(crate) fn column_span(cols: &[Vec<u32>], dim: usize, p: u32) -> FpMatrix {
    let mut ech = Echelon::new(dim, p);
    let mut kept = Vec::new();
    for c in cols {
        if ech.insert(c) {
            kept.push(c.clone());
            if ech.is_full() {
                break;
            }
        }
    }
    FpMatrix::from_columns(p, dim, &kept)
}

impl GenAlgebra {
    /// Basis of the radical: the common kernel of all maps to simples.
    pub fn radical(&self, m: &Module) -> Result<FpMatrix, RepError> {
        let p = m.modulus();
        let mut ech = Echelon::new(m.dim(), p);
        for (_, s) in self.candidate_simples(m)? {
            for f in self.hom_space(m, &s)? {
                for i in 0..f.rows() {
                    ech.insert(f.row(i));
                }
            }
        }
        Ok(ech.null_space())
    }

    pub fn radical_module(&self, m: &Module) -> Result<Module, RepError> {
        m.submodule(&self.radical(m)?)
    }

    /// Simple constituents of `M / rad M` with multiplicities.
    pub fn top(&self, m: &Module) -> Result<BTreeMap<i64, usize>, RepError> {
        let mut out = BTreeMap::new();
        for (label, s) in self.candidate_simples(m)? {
            let d = self.hom_space(m, &s)?.len();
            if d > 0 {
                let end = self.hom_space(&s, &s)?.len();
                out.insert(label, d / end);
            }
        }
        Ok(out)
    }

    /// Simple submodules with multiplicities.
    pub fn socle(&self, m: &Module) -> Result<BTreeMap<i64, usize>, RepError> {
        let mut out = BTreeMap::new();
        for (label, s) in self.candidate_simples(m)? {
            let d = self.hom_space(&s, m)?.len();
            if d > 0 {
                let end = self.hom_space(&s, &s)?.len();
                out.insert(label, d / end);
            }
        }
        Ok(out)
    }

    /// Basis of the socle: the span of all images of simples.
    pub fn socle_basis(&self, m: &Module) -> Result<FpMatrix, RepError> {
        let mut cols = Vec::new();
        for (_, s) in self.candidate_simples(m)? {
            for f in self.hom_space(&s, m)? {
                cols.extend(f.columns());
            }
        }
        Ok(column_span(&cols, m.dim(), m.modulus()))
    }

    /// Composition factors with multiplicities, by peeling off socles.
    pub fn composition_factors(&self, m: &Module) -> Result<BTreeMap<i64, usize>, RepError> {
        let mut out = BTreeMap::new();
        let mut cur = m.clone();
        while cur.dim() > 0 {
            let soc = self.socle(&cur)?;
            if soc.is_empty() {
                return Err(RepError::Inconclusive(
                    "module has no designated simple submodule".into(),
                ));
            }
            for (l, k) in soc {
                *out.entry(l).or_insert(0) += k;
            }
            let basis = self.socle_basis(&cur)?;
            cur = cur.quotient(&basis)?.0;
        }
        Ok(out)
    }
}

impl Module {
    /// Whether the action matrices generate the full matrix algebra, which
    /// holds exactly for absolutely simple modules.
    pub fn is_absolutely_simple(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return false;
        }
        let p = self.modulus();
        let mut ech = Echelon::new(n * n, p);
        let mut words = vec![FpMatrix::identity(n, p)];
        ech.insert(words[0].as_slice());
        let mut next = 0;
        while next < words.len() && !ech.is_full() {
            for a in self.action() {
                let w = a * &words[next];
                if ech.insert(w.as_slice()) {
                    words.push(w);
                }
            }
            next += 1;
        }
        ech.is_full()
    }
}
