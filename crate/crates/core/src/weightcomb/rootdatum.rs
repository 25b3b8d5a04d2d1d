use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::CombError;
use crate::fplinalg::is_prime;

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn sl2(lambda: i64) -> Self {
        Weight(vec![lambda])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

/// A root with its coroot, both in simple (co)root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
    pub coroot: Vec<i64>,
}

/// Depth of a weight: a finite value or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Finite(u32),
    Infinite,
}

/// Root datum of a simply connected semisimple group from its Cartan matrix
/// `A[i][j] = <α_i, α_j^∨>`, with hypothesis flags.
#[derive(Clone, Debug)]
pub struct RootDatum {
    p: u32,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    pub is_reductive: bool,
    pub defined_over_fp: bool,
    pub good_prime: bool,
}

impl RootDatum {
    pub fn from_cartan(cartan: Vec<Vec<i64>>, p: u32) -> Result<Self, CombError> {
        if !is_prime(p as u64) {
            return Err(CombError::OutOfRange(format!("{p} is not prime")));
        }
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|row| row.len() != n) {
            return Err(CombError::OutOfRange("Cartan matrix must be square and nonempty".into()));
        }
        if (0..n).any(|i| cartan[i][i] != 2) {
            return Err(CombError::OutOfRange("Cartan diagonal must be 2".into()));
        }
        let roots = reflection_closure(&cartan)?;
        let mut rd = RootDatum {
            p,
            cartan,
            roots,
            is_reductive: true,
            defined_over_fp: true,
            good_prime: true,
        };
        rd.good_prime = rd.highest_root().iter().all(|&c| c % p as i64 != 0);
        Ok(rd)
    }

    pub fn sl2(p: u32) -> Result<Self, CombError> {
        Self::from_cartan(vec![vec![2]], p)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots, positive and negative.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn simple_roots(&self) -> Vec<&Root> {
        self.roots
            .iter()
            .filter(|r| r.coords.iter().sum::<i64>() == 1 && r.coords.iter().all(|&c| c >= 0))
            .collect()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    fn highest_root(&self) -> Vec<i64> {
        self.roots
            .iter()
            .max_by_key(|r| r.coords.iter().sum::<i64>())
            .map(|r| r.coords.clone())
            .unwrap()
    }

    /// The simple root `α_j` as a weight.
    pub fn simple_root_weight(&self, j: usize) -> Weight {
        Weight(self.cartan[j].clone())
    }

    /// `<λ, α^∨>`.
    pub fn pairing(&self, lambda: &Weight, root: &Root) -> i64 {
        lambda.0.iter().zip(&root.coroot).map(|(l, c)| l * c).sum()
    }

    fn check_weight(&self, lambda: &Weight) -> Result<(), CombError> {
        if lambda.0.len() != self.rank() {
            return Err(CombError::OutOfRange(format!(
                "weight has {} coordinates, rank is {}",
                lambda.0.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    fn shifted_pairing(&self, lambda: &Weight, root: &Root) -> i64 {
        root.coroot.iter().zip(&lambda.0).map(|(c, l)| c * (l + 1)).sum()
    }

    /// `Ψ^s_λ = {α : <λ+ρ, α^∨> ∈ p^s Z}`.
    pub fn psi_s(&self, lambda: &Weight, s: u32) -> Result<Vec<&Root>, CombError> {
        self.check_weight(lambda)?;
        let m = (self.p as i64).checked_pow(s).ok_or_else(|| CombError::OutOfRange("p^s overflows".into()))?;
        Ok(self
            .roots
            .iter()
            .filter(|r| self.shifted_pairing(lambda, r) % m == 0)
            .collect())
    }

    /// `dep(λ) = min{s : Ψ^s_λ ≠ Ψ}`.
    pub fn depth(&self, lambda: &Weight) -> Result<Depth, CombError> {
        self.check_weight(lambda)?;
        let min_val = self
            .roots
            .iter()
            .filter_map(|r| valuation(self.shifted_pairing(lambda, r), self.p))
            .min();
        Ok(match min_val {
            Some(v) => Depth::Finite(v + 1),
            None => Depth::Infinite,
        })
    }

    /// Refuse theorem-backed evaluation when a standing hypothesis fails.
    pub fn require_standard(&self) -> Result<(), CombError> {
        if !self.is_reductive {
            return Err(CombError::Hypothesis {
                name: "reductive",
                detail: "group is not reductive".into(),
            });
        }
        if !self.defined_over_fp {
            return Err(CombError::Hypothesis {
                name: "defined-over-Fp",
                detail: "group is not defined over F_p".into(),
            });
        }
        if !self.good_prime {
            return Err(CombError::Hypothesis {
                name: "good-prime",
                detail: format!("p = {} is bad for this root system", self.p),
            });
        }
        Ok(())
    }

    pub fn require_p_at_least_7(&self) -> Result<(), CombError> {
        if self.p < 7 {
            return Err(CombError::Hypothesis {
                name: "p-at-least-7",
                detail: format!("p = {} < 7", self.p),
            });
        }
        Ok(())
    }
}

/// `v_p(x)`, `None` for zero.
pub fn valuation(x: i64, p: u32) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let (mut x, p) = (x.abs(), p as i64);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// Roots and coroots as orbits of the simple ones under simple reflections.
fn reflection_closure(cartan: &[Vec<i64>]) -> Result<Vec<Root>, CombError> {
    let n = cartan.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let root = Root {
            coords: e.clone(),
            coroot: e,
        };
        seen.insert(root.clone());
        queue.push_back(root);
    }
    while let Some(root) = queue.pop_front() {
        for j in 0..n {
            // <α, α_j^∨> and <α_j, α^∨>
            let a: i64 = (0..n).map(|i| root.coords[i] * cartan[i][j]).sum();
            let b: i64 = (0..n).map(|i| root.coroot[i] * cartan[j][i]).sum();
            let mut coords = root.coords.clone();
            coords[j] -= a;
            let mut coroot = root.coroot.clone();
            coroot[j] -= b;
            let next = Root { coords, coroot };
            if seen.insert(next.clone()) {
                if seen.len() > 10_000 {
                    return Err(CombError::OutOfRange("Cartan matrix is not of finite type".into()));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cartan_b2() -> Vec<Vec<i64>> {
        vec![vec![2, -2], vec![-1, 2]]
    }

    #[test]
    fn root_counts() {
        assert_eq!(RootDatum::sl2(3).unwrap().roots().len(), 2);
        let a2 = RootDatum::from_cartan(vec![vec![2, -1], vec![-1, 2]], 5).unwrap();
        assert_eq!(a2.roots().len(), 6);
        let b2 = RootDatum::from_cartan(cartan_b2(), 5).unwrap();
        assert_eq!(b2.roots().len(), 8);
        let g2 = RootDatum::from_cartan(vec![vec![2, -3], vec![-1, 2]], 5).unwrap();
        assert_eq!(g2.roots().len(), 12);
    }

    #[test]
    fn rho_pairs_to_one_on_simple_coroots() {
        for cartan in [vec![vec![2]], cartan_b2(), vec![vec![2, -3], vec![-1, 2]]] {
            let rd = RootDatum::from_cartan(cartan, 7).unwrap();
            for a in rd.simple_roots() {
                assert_eq!(rd.pairing(&rd.rho(), a), 1);
            }
        }
    }

    #[test]
    fn bad_primes() {
        assert!(!RootDatum::from_cartan(cartan_b2(), 2).unwrap().good_prime);
        assert!(RootDatum::from_cartan(cartan_b2(), 3).unwrap().good_prime);
        let g2 = RootDatum::from_cartan(vec![vec![2, -3], vec![-1, 2]], 3).unwrap();
        assert!(!g2.good_prime);
        assert!(matches!(g2.require_standard(), Err(CombError::Hypothesis { name: "good-prime", .. })));
    }

    #[test]
    fn sl2_depth_matches_valuation() {
        let rd = RootDatum::sl2(3).unwrap();
        assert_eq!(rd.depth(&Weight::sl2(0)).unwrap(), Depth::Finite(1));
        assert_eq!(rd.depth(&Weight::sl2(5)).unwrap(), Depth::Finite(2));
        assert_eq!(rd.depth(&Weight::sl2(8)).unwrap(), Depth::Finite(3));
        assert_eq!(rd.depth(&Weight::sl2(-1)).unwrap(), Depth::Infinite);
        assert_eq!(rd.psi_s(&Weight::sl2(5), 0).unwrap().len(), 2);
        assert_eq!(rd.psi_s(&Weight::sl2(5), 1).unwrap().len(), 2);
        assert!(rd.psi_s(&Weight::sl2(5), 2).unwrap().is_empty());
    }
}
