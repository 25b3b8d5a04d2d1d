use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{GenAlgebra, Module, RepError};
use crate::fplinalg::FpMatrix;

const SPLIT_SALT: u64 = 1;

/// An indecomposable direct summand with its inclusion into the parent.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    /// `dim(parent) x dim(summand)` matrix whose columns span the summand.
    pub embedding: FpMatrix,
}

enum Fitting {
    Split { kernel: FpMatrix, image: FpMatrix },
    Nilpotent,
    Invertible,
}

/// Fitting decomposition of `M` under a single endomorphism.
fn fitting(theta: &FpMatrix) -> Fitting {
    let n = theta.rows();
    let mut b = theta.clone();
    let mut rank = b.rank();
    if rank == n {
        return Fitting::Invertible;
    }
    loop {
        if rank == 0 {
            return Fitting::Nilpotent;
        }
        let b2 = &b * &b;
        let r2 = b2.rank();
        if r2 == rank {
            break;
        }
        b = b2;
        rank = r2;
    }
    let pivots = b.pivot_columns();
    Fitting::Split {
        kernel: b.kernel_basis(),
        image: b.select_columns(&pivots),
    }
}

impl GenAlgebra {
    /// Decompose `M` into indecomposable summands.
    ///
    /// A module is declared indecomposable once `split_trials` random
    /// endomorphisms, each shifted by every scalar, failed to split it.
    pub fn meataxe_split(&self, m: &Module) -> Result<Vec<Summand>, RepError> {
        self.check_module(m)?;
        let mut rng = self.rng(SPLIT_SALT);
        let mut out = Vec::new();
        let id = FpMatrix::identity(m.dim(), m.modulus());
        self.split_into(m, id, &mut rng, &mut out)?;
        Ok(out)
    }

    pub fn is_indecomposable(&self, m: &Module) -> Result<bool, RepError> {
        Ok(m.dim() > 0 && self.meataxe_split(m)?.len() == 1)
    }

    fn split_into(
        &self,
        m: &Module,
        embedding: FpMatrix,
        rng: &mut ChaCha8Rng,
        out: &mut Vec<Summand>,
    ) -> Result<(), RepError> {
        if m.dim() == 0 {
            return Ok(());
        }
        match self.find_split(m, rng)? {
            None => out.push(Summand {
                module: m.clone(),
                embedding,
            }),
            Some((kernel, image)) => {
                for basis in [kernel, image] {
                    let sub = m.submodule(&basis)?;
                    let emb = &embedding * &basis;
                    self.split_into(&sub, emb, rng, out)?;
                }
            }
        }
        Ok(())
    }

    fn find_split(&self, m: &Module, rng: &mut ChaCha8Rng) -> Result<Option<(FpMatrix, FpMatrix)>, RepError> {
        let end = self.hom_space(m, m)?;
        if end.len() <= 1 {
            return Ok(None);
        }
        let p = self.modulus();
        let n = m.dim();
        let shifts: Vec<u32> = if p <= 16 {
            (0..p).collect()
        } else {
            let mut s = vec![0];
            s.extend((0..15).map(|_| rng.gen_range(1..p)));
            s
        };
        // basis elements first, then random combinations
        let candidates = end.iter().cloned().map(Some).chain(std::iter::repeat(None));
        let mut saw_non_invertible = false;
        for (trial, fixed) in candidates.enumerate() {
            if trial >= self.config.split_trials + end.len() {
                break;
            }
            let theta = match fixed {
                Some(t) => t,
                None => self.random_combination(&end, rng).expect("nonempty basis"),
            };
            for &c in &shifts {
                let shifted = &theta - &FpMatrix::identity(n, p).scale(c as i64);
                match fitting(&shifted) {
                    Fitting::Split { kernel, image } => return Ok(Some((kernel, image))),
                    Fitting::Nilpotent => {
                        saw_non_invertible = true;
                        break;
                    }
                    Fitting::Invertible => {}
                }
            }
        }
        if !saw_non_invertible && end.len() > 1 {
            return Err(RepError::BudgetExceeded(format!(
                "no local evidence for a {n}-dimensional module after {} trials",
                self.config.split_trials
            )));
        }
        Ok(None)
    }
}
