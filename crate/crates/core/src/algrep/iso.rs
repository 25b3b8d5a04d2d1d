use rand_chacha::ChaCha8Rng;

use super::{GenAlgebra, Module, RepError};
use crate::fplinalg::FpMatrix;

const ISO_SALT: u64 = 2;
const MAX_PAIRS: usize = 4096;

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// An invertible intertwiner `M -> N` (a `dim N x dim M` matrix).
    Isomorphic(FpMatrix),
    NotIsomorphic,
    /// Random search failed although Hom dimensions are consistent with an
    /// isomorphism.
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&FpMatrix> {
        match self {
            IsoVerdict::Isomorphic(x) => Some(x),
            _ => None,
        }
    }
}

fn degree_multiset(m: &Module) -> Option<Vec<i64>> {
    m.grading().map(|g| {
        let mut v = g.to_vec();
        v.sort_unstable();
        v
    })
}

impl GenAlgebra {
    /// Decide whether `M` and `N` are isomorphic (graded-isomorphic when
    /// both are graded).
    pub fn is_isomorphic(&self, m: &Module, n: &Module) -> Result<IsoVerdict, RepError> {
        self.check_module(m)?;
        self.check_module(n)?;
        let (m, n) = if m.is_graded() && n.is_graded() {
            (m.clone(), n.clone())
        } else {
            (m.forget_grading(), n.forget_grading())
        };
        if m.dim() != n.dim() || degree_multiset(&m) != degree_multiset(&n) {
            return Ok(IsoVerdict::NotIsomorphic);
        }
        if m.dim() == 0 {
            return Ok(IsoVerdict::Isomorphic(FpMatrix::zeros(0, 0, m.modulus())));
        }
        let mut rng = self.rng(ISO_SALT);
        let homs = self.hom_space(&m, &n)?;
        if homs.is_empty() {
            return Ok(IsoVerdict::NotIsomorphic);
        }
        if let Some(x) = self.random_invertible(&homs, &mut rng) {
            return Ok(IsoVerdict::Isomorphic(x));
        }
        self.match_summands(&m, &n, &mut rng)
    }

    fn random_invertible(&self, homs: &[FpMatrix], rng: &mut ChaCha8Rng) -> Option<FpMatrix> {
        if homs.is_empty() || !homs[0].is_square() {
            return None;
        }
        for h in homs {
            if h.is_invertible() {
                return Some(h.clone());
            }
        }
        for _ in 0..self.config().iso_trials {
            let x = self.random_combination(homs, rng)?;
            if x.is_invertible() {
                return Some(x);
            }
        }
        None
    }

    fn indecomposable_iso(&self, a: &Module, b: &Module, rng: &mut ChaCha8Rng) -> Result<IsoVerdict, RepError> {
        if a.dim() != b.dim() || degree_multiset(a) != degree_multiset(b) {
            return Ok(IsoVerdict::NotIsomorphic);
        }
        let homs = self.hom_space(a, b)?;
        if let Some(x) = self.random_invertible(&homs, rng) {
            return Ok(IsoVerdict::Isomorphic(x));
        }
        // End(a) is local, so a ≅ b iff some ψ∘φ over basis pairs is a unit;
        // then φ itself is invertible.
        let back = self.hom_space(b, a)?;
        if homs.len() * back.len() <= MAX_PAIRS {
            for phi in &homs {
                if back.iter().any(|psi| (psi * phi).is_invertible()) {
                    return Ok(IsoVerdict::Isomorphic(phi.clone()));
                }
            }
            return Ok(IsoVerdict::NotIsomorphic);
        }
        let end = self.hom_space(a, a)?.len();
        if !homs.is_empty() && homs.len() == back.len() && back.len() == end {
            Ok(IsoVerdict::Inconclusive)
        } else {
            Ok(IsoVerdict::NotIsomorphic)
        }
    }

    /// Krull-Schmidt matching of indecomposable summands.
    fn match_summands(&self, m: &Module, n: &Module, rng: &mut ChaCha8Rng) -> Result<IsoVerdict, RepError> {
        let sm = self.meataxe_split(m)?;
        let sn = self.meataxe_split(n)?;
        if sm.len() != sn.len() {
            return Ok(IsoVerdict::NotIsomorphic);
        }
        let p = m.modulus();
        let mut used = vec![false; sn.len()];
        let mut blocks = Vec::with_capacity(sm.len());
        let mut targets = Vec::with_capacity(sm.len());
        let mut inconclusive = false;
        for a in &sm {
            let mut found = false;
            for (j, b) in sn.iter().enumerate() {
                if used[j] {
                    continue;
                }
                match self.indecomposable_iso(&a.module, &b.module, rng)? {
                    IsoVerdict::Isomorphic(x) => {
                        used[j] = true;
                        blocks.push(x);
                        targets.push(b.embedding.clone());
                        found = true;
                        break;
                    }
                    IsoVerdict::Inconclusive => inconclusive = true,
                    IsoVerdict::NotIsomorphic => {}
                }
            }
            if !found {
                return Ok(if inconclusive {
                    IsoVerdict::Inconclusive
                } else {
                    IsoVerdict::NotIsomorphic
                });
            }
        }
        let e = FpMatrix::hstack(&sm.iter().map(|s| &s.embedding).collect::<Vec<_>>())?;
        let f = FpMatrix::hstack(&targets.iter().collect::<Vec<_>>())?;
        let phi = FpMatrix::block_diag(&blocks.iter().collect::<Vec<_>>(), p);
        let e_inv = e.inverse().expect("summand embeddings form a basis");
        let x = &(&f * &phi) * &e_inv;
        debug_assert!(m.is_homomorphism(n, &x) && x.is_invertible());
        Ok(IsoVerdict::Isomorphic(x))
    }
}
