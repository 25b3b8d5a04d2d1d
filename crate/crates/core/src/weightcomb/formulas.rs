use serde::Serialize;

use super::blocks::check_pr;
use super::{digits, CombError, Depth, RootDatum, Weight};
use crate::algrep::{estimate_complexity, ResolutionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectiveHeight {
    Height(u32),
    Projective,
}

/// `ph(Z_r(λ)) = dep(λ)`, or `Projective` when `dep(λ) > r`.
pub fn verma_projective_height(rd: &RootDatum, lambda: &Weight, r: u32) -> Result<ProjectiveHeight, CombError> {
    rd.require_standard()?;
    Ok(match rd.depth(lambda)? {
        Depth::Finite(d) if d <= r => ProjectiveHeight::Height(d),
        _ => ProjectiveHeight::Projective,
    })
}

/// `2 p^{r - dep(λ)}`.
pub fn verma_period(rd: &RootDatum, lambda: &Weight, r: u32) -> Result<u64, CombError> {
    match verma_projective_height(rd, lambda, r)? {
        ProjectiveHeight::Height(d) => Ok(2 * (rd.p() as u64).pow(r - d)),
        ProjectiveHeight::Projective => Err(CombError::Projective),
    }
}

/// `λ + n p^r α` where `α` is the unique simple root outside `Ψ^r_λ`.
pub fn heller_orbit_verma(rd: &RootDatum, lambda: &Weight, r: u32, n: i64) -> Result<Weight, CombError> {
    rd.require_standard()?;
    let dep = rd.depth(lambda)?;
    if dep != Depth::Finite(r) {
        return Err(CombError::Hypothesis {
            name: "depth-equals-r",
            detail: format!("dep(λ) = {dep:?}, r = {r}"),
        });
    }
    let psi = rd.psi_s(lambda, r)?;
    let outside: Vec<usize> = (0..rd.rank())
        .filter(|&j| {
            !psi.iter()
                .any(|root| root.coords.iter().enumerate().all(|(i, &c)| c == (i == j) as i64))
        })
        .collect();
    let [j] = outside[..] else {
        return Err(CombError::Hypothesis {
            name: "unique-simple-root",
            detail: format!("{} simple roots lie outside Ψ^r_λ", outside.len()),
        });
    };
    let step = n
        .checked_mul((rd.p() as i64).pow(r))
        .ok_or_else(|| CombError::OutOfRange("n p^r overflows".into()))?;
    let alpha = rd.simple_root_weight(j);
    Ok(Weight(lambda.0.iter().zip(&alpha.0).map(|(l, a)| l + step * a).collect()))
}

/// `ph(St_d) = d + 1` for `d < r`.
pub fn steinberg_ph(d: u32, r: u32) -> Result<u32, CombError> {
    if d >= r {
        return Err(CombError::Projective);
    }
    Ok(d + 1)
}

/// `cx L_r(λ)`: 0 for the Steinberg weight, else one more than the number of
/// digits below `p-1`.
pub fn simple_complexity(p: u32, r: u32, lambda: u64) -> Result<u32, CombError> {
    check_pr(p, r)?;
    if lambda >= (p as u64).pow(r) {
        return Err(CombError::OutOfRange(format!("weight {lambda} outside [0, p^r)")));
    }
    let low = digits(p, r, lambda).iter().filter(|&&d| d != p - 1).count() as u32;
    Ok(if low == 0 { 0 } else { low + 1 })
}

/// Highest weights of the composition factors of `rad P_r(λ) / soc P_r(λ)`
/// for `λ = λ_0 + Σ_{i≥1} (p-1) p^i`.
pub fn heart_weights(p: u32, r: u32, lambda: u64) -> Result<Vec<u64>, CombError> {
    check_pr(p, r)?;
    if r < 2 {
        return Err(CombError::OutOfRange("heart weights need r >= 2".into()));
    }
    let d = digits(p, r, lambda);
    if lambda >= (p as u64).pow(r) || d[0] > p - 2 || d[1..].iter().any(|&x| x != p - 1) {
        return Err(CombError::OutOfRange(format!(
            "λ = {lambda} is not λ_0 + Σ (p-1)p^i with λ_0 <= p-2"
        )));
    }
    let p64 = p as u64;
    let base = p64 - 2 - d[0] as u64;
    let mut out = vec![base];
    for l in 2..=r {
        let tail: u64 = (l..r).map(|i| (p64 - 1) * p64.pow(i)).sum();
        out.push(base + (p64 - 2) * p64.pow(l - 1) + tail);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ub1Report {
    pub degree: usize,
    pub complexity_estimate: u32,
    pub ext_dim_at_degree: usize,
    pub inequality_holds: bool,
}

/// Compare the complexity estimate of a trace with `dim Ext^{2np^{r-1}}(M, M)`.
pub fn ub1_bound_check(trace: &ResolutionTrace, r: u32, n: u32, min_length: usize) -> Result<Ub1Report, CombError> {
    let p = trace.module.modulus() as usize;
    let degree = 2 * n as usize * p.pow(r.saturating_sub(1));
    let ext = trace
        .ext_dims
        .as_ref()
        .ok_or_else(|| CombError::Inconclusive("trace carries no Ext dimensions".into()))?;
    let ext_dim_at_degree = *ext
        .get(degree)
        .ok_or_else(|| CombError::Inconclusive(format!("trace does not reach degree {degree}")))?;
    let complexity_estimate =
        estimate_complexity(trace, min_length).map_err(|e| CombError::Inconclusive(e.to_string()))?;
    Ok(Ub1Report {
        degree,
        complexity_estimate,
        ext_dim_at_degree,
        inequality_holds: complexity_estimate as usize <= ext_dim_at_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(p: u32) -> RootDatum {
        RootDatum::sl2(p).unwrap()
    }

    #[test]
    fn ph_and_period() {
        let rd = sl2(3);
        let w = |l| Weight::sl2(l);
        assert_eq!(verma_projective_height(&rd, &w(0), 2).unwrap(), ProjectiveHeight::Height(1));
        assert_eq!(verma_projective_height(&rd, &w(5), 2).unwrap(), ProjectiveHeight::Height(2));
        assert_eq!(verma_projective_height(&rd, &w(2), 1).unwrap(), ProjectiveHeight::Projective);
        assert_eq!(verma_period(&rd, &w(0), 1).unwrap(), 2);
        assert_eq!(verma_period(&rd, &w(0), 2).unwrap(), 6);
        assert_eq!(verma_period(&rd, &w(5), 2).unwrap(), 2);
        assert!(matches!(verma_period(&rd, &w(8), 2), Err(CombError::Projective)));
    }

    #[test]
    fn orbit() {
        let rd = sl2(3);
        assert_eq!(heller_orbit_verma(&rd, &Weight::sl2(0), 1, 1).unwrap(), Weight::sl2(6));
        assert_eq!(heller_orbit_verma(&rd, &Weight::sl2(1), 1, 0).unwrap(), Weight::sl2(1));
        assert_eq!(heller_orbit_verma(&rd, &Weight::sl2(1), 1, -1).unwrap(), Weight::sl2(-5));
        assert!(matches!(
            heller_orbit_verma(&rd, &Weight::sl2(0), 2, 1),
            Err(CombError::Hypothesis { name: "depth-equals-r", .. })
        ));
    }

    #[test]
    fn bad_prime_is_refused() {
        let g2 = RootDatum::from_cartan(vec![vec![2, -3], vec![-1, 2]], 3).unwrap();
        assert!(matches!(
            verma_projective_height(&g2, &Weight(vec![0, 0]), 1),
            Err(CombError::Hypothesis { name: "good-prime", .. })
        ));
    }

    #[test]
    fn steinberg_heights() {
        assert_eq!(steinberg_ph(0, 1).unwrap(), 1);
        assert_eq!(steinberg_ph(1, 2).unwrap(), 2);
        assert!(steinberg_ph(2, 2).is_err());
    }

    #[test]
    fn complexities() {
        assert_eq!(simple_complexity(3, 2, 8).unwrap(), 0);
        assert_eq!(simple_complexity(3, 2, 5).unwrap(), 2);
        assert_eq!(simple_complexity(3, 2, 4).unwrap(), 3);
        assert_eq!(simple_complexity(5, 1, 3).unwrap(), 2);
    }

    #[test]
    fn hearts() {
        assert_eq!(heart_weights(3, 2, 6).unwrap(), vec![1, 4]);
        assert_eq!(heart_weights(3, 2, 7).unwrap(), vec![0, 3]);
        assert_eq!(heart_weights(5, 2, 20).unwrap(), vec![3, 18]);
        assert_eq!(heart_weights(3, 3, 24).unwrap(), vec![1, 10, 22]);
        assert!(heart_weights(3, 2, 5).is_err());
        assert!(heart_weights(3, 1, 0).is_err());
    }

    /// `F_9 = F_3[i] / (i^2 + 1)` as pairs.
    fn f9_mul(a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
        ((a.0 * b.0 + 2 * a.1 * b.1) % 3, (a.0 * b.1 + a.1 * b.0) % 3)
    }

    fn f9_add(a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
        ((a.0 + b.0) % 3, (a.1 + b.1) % 3)
    }

    /// Traceless 2x2 matrices `[[a, b], [c, -a]]` over `F_q`, nilpotent iff
    /// `a^2 + bc = 0`; two commute iff their cross terms vanish.
    fn commuting_nilpotent_tuples(field: &[(u32, u32)], m: usize) -> usize {
        let neg = |x: (u32, u32)| ((3 - x.0) % 3, (3 - x.1) % 3);
        let zero = (0, 0);
        let mut nil = Vec::new();
        for &a in field {
            for &b in field {
                for &c in field {
                    if f9_add(f9_mul(a, a), f9_mul(b, c)) == zero {
                        nil.push((a, b, c));
                    }
                }
            }
        }
        type M = ((u32, u32), (u32, u32), (u32, u32));
        let commute = |x: &M, y: &M| {
            let ab = f9_add(f9_mul(x.0, y.1), neg(f9_mul(x.1, y.0)));
            let ac = f9_add(f9_mul(x.0, y.2), neg(f9_mul(x.2, y.0)));
            let bc = f9_add(f9_mul(x.1, y.2), neg(f9_mul(x.2, y.1)));
            ab == zero && ac == zero && bc == zero
        };
        fn count(nil: &[M], chosen: &mut Vec<M>, m: usize, commute: &dyn Fn(&M, &M) -> bool) -> usize {
            if chosen.len() == m {
                return 1;
            }
            let mut total = 0;
            for x in nil {
                if chosen.iter().all(|y| commute(x, y)) {
                    chosen.push(*x);
                    total += count(nil, chosen, m, commute);
                    chosen.pop();
                }
            }
            total
        }
        count(&nil, &mut Vec::new(), m, &commute)
    }

    #[test]
    fn rank_variety_point_counts() {
        let f3: Vec<(u32, u32)> = (0..3).map(|a| (a, 0)).collect();
        let f9: Vec<(u32, u32)> = (0..9).map(|a| (a % 3, a / 3)).collect();
        for (field, q) in [(&f3, 3usize), (&f9, 9)] {
            for m in 1..=3usize {
                if q == 9 && m == 3 {
                    continue;
                }
                let expected = 1 + (q + 1) * (q.pow(m as u32) - 1);
                assert_eq!(commuting_nilpotent_tuples(field, m), expected, "q={q} m={m}");
            }
        }
        // The counts grow like q^{m+1}, so the variety has dimension m + 1,
        // which is the complexity for m non-maximal digits.
        for (p, r) in [(3, 2), (3, 3), (5, 2)] {
            for lambda in 0..(p as u64).pow(r) {
                let m = digits(p, r, lambda).iter().filter(|&&d| d != p - 1).count() as u32;
                let want = if m == 0 { 0 } else { m + 1 };
                assert_eq!(simple_complexity(p, r, lambda).unwrap(), want);
            }
        }
    }
}
