//! Explicit module constructions over u(sl_2) and Dist(SL(2)_r).

use std::sync::Arc;

use crate::algrep::{Module, Presentation, RepError};
use crate::fplinalg::{binom_mod, inv_mod, pow_mod, reduce, FpMatrix};

use super::relations::parse_algebra_id;

pub(crate) fn height(pres: &Presentation) -> u32 {
    parse_algebra_id(pres.id()).expect("sl2 presentation").1
}

/// All divided powers `e^(a)`, `f^(a)` (`a < p^r`) of a module, rebuilt from
/// the generators `e^(p^k)`, `f^(p^k)` digit by digit.
pub(crate) struct DividedPowers {
    p: u32,
    dim: usize,
    e_pow: Vec<Vec<FpMatrix>>,
    f_pow: Vec<Vec<FpMatrix>>,
}

impl DividedPowers {
    /// `action` uses the shared layout: `e^(p^k)` at `2k`, `f^(p^k)` at `2k+1`.
    pub(crate) fn new(p: u32, r: u32, action: &[FpMatrix]) -> Self {
        let dim = action[0].rows();
        let scaled_powers = |g: &FpMatrix| {
            let mut out = vec![FpMatrix::identity(dim, p)];
            let mut fact = 1u32;
            let mut cur = FpMatrix::identity(dim, p);
            for i in 1..p {
                cur = &cur * g;
                fact = (fact as u64 * i as u64 % p as u64) as u32;
                out.push(cur.scale(inv_mod(fact, p).unwrap() as i64));
            }
            out
        };
        let e_pow = (0..r as usize).map(|k| scaled_powers(&action[2 * k])).collect();
        let f_pow = (0..r as usize).map(|k| scaled_powers(&action[2 * k + 1])).collect();
        DividedPowers { p, dim, e_pow, f_pow }
    }

    fn assemble(&self, pows: &[Vec<FpMatrix>], mut a: u64) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.dim, self.p);
        for level in pows {
            let d = (a % self.p as u64) as usize;
            a /= self.p as u64;
            if d > 0 {
                acc = &acc * &level[d];
            }
        }
        if a > 0 {
            return FpMatrix::zeros(self.dim, self.dim, self.p);
        }
        acc
    }

    pub(crate) fn e(&self, a: u64) -> FpMatrix {
        self.assemble(&self.e_pow, a)
    }

    pub(crate) fn f(&self, a: u64) -> FpMatrix {
        self.assemble(&self.f_pow, a)
    }
}

fn diag(values: &[i64], p: u32) -> FpMatrix {
    FpMatrix::from_fn(values.len(), values.len(), p, |i, j| if i == j { values[i] } else { 0 })
}

fn commutator(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    &(a * b) - &(b * a)
}

/// Assemble the action list for a presentation from per-level `e`, `f`.
fn assemble_action(r: u32, p: u32, es: Vec<FpMatrix>, fs: Vec<FpMatrix>, h: Option<FpMatrix>) -> Vec<FpMatrix> {
    let mut action = Vec::with_capacity(2 * r as usize + 1);
    for (e, f) in es.into_iter().zip(fs) {
        action.push(e);
        action.push(f);
    }
    if r == 1 {
        let h = h.unwrap_or_else(|| commutator(&action[0], &action[1]));
        debug_assert_eq!(h.modulus(), p);
        action.push(h);
    }
    action
}

/// `L(λ0)^{[j]}`: the simple module of restricted highest weight `λ0 < p`
/// twisted `j` times, basis `v_t` of weight `p^j (λ0 - 2t)`.
pub fn leaf(pres: &Arc<Presentation>, lambda0: u32, j: u32, graded: bool) -> Result<Module, RepError> {
    let p = pres.modulus();
    let r = height(pres);
    if lambda0 >= p || j >= r {
        return Err(RepError::OutOfRange(format!("leaf L({lambda0})^[{j}] over height {r}")));
    }
    let l = lambda0 as i64;
    let dim = lambda0 as usize + 1;
    let e = FpMatrix::from_fn(dim, dim, p, |i, t| if i + 1 == t { l - t as i64 + 1 } else { 0 });
    let f = FpMatrix::from_fn(dim, dim, p, |i, t| if i == t + 1 { t as i64 + 1 } else { 0 });
    let scale = (p as i64).pow(j);
    let weights: Vec<i64> = (0..dim as i64).map(|t| scale * (l - 2 * t)).collect();
    let zero = FpMatrix::zeros(dim, dim, p);
    let es = (0..r).map(|k| if k == j { e.clone() } else { zero.clone() }).collect();
    let fs = (0..r).map(|k| if k == j { f.clone() } else { zero.clone() }).collect();
    let h = (r == 1).then(|| diag(&weights, p));
    let action = assemble_action(r, p, es, fs, h);
    Module::new(pres.clone(), action, graded.then_some(weights))
}

/// Tensor product through the coproduct `Δe^(n) = Σ e^(a) ⊗ e^(n-a)`.
pub fn tensor(a: &Module, b: &Module) -> Result<Module, RepError> {
    if !a.same_algebra(b) {
        return Err(RepError::AlgebraMismatch {
            left: a.presentation().id().to_string(),
            right: b.presentation().id().to_string(),
        });
    }
    let pres = a.presentation();
    let p = pres.modulus();
    let r = height(pres);
    let da = DividedPowers::new(p, r, a.action());
    let db = DividedPowers::new(p, r, b.action());
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for k in 0..r {
        let n = (p as u64).pow(k);
        let mut e = FpMatrix::zeros(a.dim() * b.dim(), a.dim() * b.dim(), p);
        let mut f = e.clone();
        for c in 0..=n {
            e = &e + &da.e(c).kron(&db.e(n - c))?;
            f = &f + &da.f(c).kron(&db.f(n - c))?;
        }
        es.push(e);
        fs.push(f);
    }
    let h = if r == 1 {
        let ia = FpMatrix::identity(a.dim(), p);
        let ib = FpMatrix::identity(b.dim(), p);
        Some(&a.action()[2].kron(&ib)? + &ia.kron(&b.action()[2])?)
    } else {
        None
    };
    let grading = match (a.grading(), b.grading()) {
        (Some(ga), Some(gb)) => Some(ga.iter().flat_map(|x| gb.iter().map(move |y| x + y)).collect()),
        _ => None,
    };
    Module::new(pres.clone(), assemble_action(r, p, es, fs, h), grading)
}

/// Pull back along the `i`-th Frobenius: `e^(p^k)` acts as `e^(p^(k-i))` of
/// `m` and as zero for `k < i`. Divided powers beyond the height of `m` act
/// by zero, which is exact for modules with weights in `(-p, p)`.
pub fn frobenius_twist(target: &Arc<Presentation>, m: &Module, i: u32) -> Result<Module, RepError> {
    let p = target.modulus();
    if m.modulus() != p {
        return Err(RepError::AlgebraMismatch {
            left: target.id().to_string(),
            right: m.presentation().id().to_string(),
        });
    }
    let r = height(target);
    let src_r = height(m.presentation());
    let dim = m.dim();
    let zero = FpMatrix::zeros(dim, dim, p);
    let pick = |k: u32, off: usize| {
        if k >= i && k - i < src_r {
            m.action()[2 * (k - i) as usize + off].clone()
        } else {
            zero.clone()
        }
    };
    let es = (0..r).map(|k| pick(k, 0)).collect();
    let fs = (0..r).map(|k| pick(k, 1)).collect();
    let h = match (i, src_r) {
        (0, 1) => Some(m.action()[2].clone()),
        _ => None,
    };
    let scale = (p as i64).pow(i);
    let grading = m.grading().map(|g| g.iter().map(|d| d * scale).collect());
    Module::new(target.clone(), assemble_action(r, p, es, fs, h), grading)
}

/// Baby Verma module with basis `f^(a) v`, `a < p^r`, of weight `λ - 2a`.
pub fn verma(pres: &Arc<Presentation>, lambda: i64, graded: bool) -> Result<Module, RepError> {
    let p = pres.modulus();
    let r = height(pres);
    let n = (p as i64).pow(r);
    if !graded && !(0..n).contains(&lambda) {
        return Err(RepError::OutOfRange(format!("weight {lambda} outside [0, {n})")));
    }
    let dim = n as usize;
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for k in 0..r {
        let q = (p as i64).pow(k);
        es.push(FpMatrix::from_fn(dim, dim, p, |i, a| {
            if i as i64 + q == a as i64 {
                binom_mod(lambda - a as i64 + q, q as u64, p) as i64
            } else {
                0
            }
        }));
        fs.push(FpMatrix::from_fn(dim, dim, p, |i, a| {
            if i as i64 == a as i64 + q {
                binom_mod(a as i64 + q, q as u64, p) as i64
            } else {
                0
            }
        }));
    }
    let weights: Vec<i64> = (0..n).map(|a| lambda - 2 * a).collect();
    let h = (r == 1).then(|| diag(&weights, p));
    Module::new(pres.clone(), assemble_action(r, p, es, fs, h), graded.then_some(weights))
}

/// Left regular module of u(sl_2) on the PBW basis `f^a h^b e^c`.
pub fn regular_module(pres: &Arc<Presentation>) -> Result<Module, RepError> {
    let p = pres.modulus();
    if height(pres) != 1 {
        return Err(RepError::Unsupported("regular module only for u(sl_2)".into()));
    }
    let q = p as usize;
    let dim = q * q * q;
    let idx = |a: usize, b: usize, c: usize| a * q * q + b * q + c;
    // h^k with h^p = h
    let hpow = |mut k: usize| {
        while k >= q {
            k -= q - 1;
        }
        k
    };
    let mut e = vec![vec![0i64; dim]; dim];
    let mut f = e.clone();
    let mut h = e.clone();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let src = idx(a, b, c);
                if a + 1 < q {
                    f[idx(a + 1, b, c)][src] += 1;
                }
                h[idx(a, hpow(b + 1), c)][src] += 1;
                h[idx(a, b, c)][src] -= 2 * a as i64;
                // e f^a = f^a e + a f^(a-1) (h - a + 1), and e h = (h - 2) e
                if c + 1 < q {
                    for i in 0..=b {
                        let coeff = binom_mod(b as i64, i as u64, p) as i64 * pow_mod(p - 2, (b - i) as u64, p) as i64;
                        e[idx(a, hpow(i), c + 1)][src] += coeff;
                    }
                }
                if a >= 1 {
                    let ai = a as i64;
                    e[idx(a - 1, hpow(b + 1), c)][src] += ai;
                    e[idx(a - 1, b, c)][src] += ai * (1 - ai);
                }
            }
        }
    }
    let to_matrix = |m: Vec<Vec<i64>>| {
        FpMatrix::from_fn(dim, dim, p, |i, j| reduce(m[i][j], p) as i64)
    };
    Module::new(pres.clone(), vec![to_matrix(e), to_matrix(f), to_matrix(h)], None)
}
