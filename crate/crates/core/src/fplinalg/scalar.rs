//! Scalars of a prime field F_p with the modulus carried alongside the value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Trial-division primality test; moduli in scope are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, p - b % p, p)
}

pub fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // extended Euclid on i64 to avoid the exponentiation cost
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    Some(reduce(t, p))
}

/// Binomial coefficient `binom(x, k)` reduced mod `p`, for any integer `x`.
///
/// Negative upper arguments use `binom(x, k) = (-1)^k binom(k - x - 1, k)`;
/// the non-negative case goes through Lucas' theorem.
pub fn binom_mod(x: i64, k: u64, p: u32) -> u32 {
    if x < 0 {
        let n = (k as i64 - x - 1) as u64;
        let v = lucas(n, k, p);
        if k % 2 == 1 {
            (p - v) % p
        } else {
            v
        }
    } else {
        lucas(x as u64, k, p)
    }
}

fn lucas(mut n: u64, mut k: u64, p: u32) -> u32 {
    let pp = p as u64;
    let mut acc = 1u32;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % pp, k % pp);
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, small_binom(nd, kd, p), p);
        n /= pp;
        k /= pp;
    }
    acc
}

fn small_binom(n: u64, k: u64, p: u32) -> u32 {
    let k = k.min(n - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = mul_mod(num, ((n - i) % p as u64) as u32, p);
        den = mul_mod(den, ((i + 1) % p as u64) as u32, p);
    }
    mul_mod(num, inv_mod(den, p).expect("digit factorials are units"), p)
}

/// An element of F_p. Arithmetic between scalars of different moduli panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        FpScalar {
            value: reduce(value, p),
            p,
        }
    }

    pub fn zero(p: u32) -> Self {
        Self::new(0, p)
    }

    pub fn one(p: u32) -> Self {
        Self::new(1, p)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        inv_mod(self.value, self.p).map(|v| FpScalar { value: v, p: self.p })
    }

    pub fn pow(self, exp: u64) -> Self {
        FpScalar {
            value: pow_mod(self.value, exp, self.p),
            p: self.p,
        }
    }

    fn check(self, other: Self) {
        assert_eq!(
            self.p, other.p,
            "F_p arithmetic across moduli {} and {}",
            self.p, other.p
        );
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        FpScalar {
            value: add_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        FpScalar {
            value: sub_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        FpScalar {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_exact(n: i64, k: u64) -> i128 {
        // generalized binomial via the falling factorial, exact in i128
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..k as i128 {
            num *= n as i128 - i;
            den *= i + 1;
        }
        num / den
    }

    #[test]
    fn binomials_match_exact_values() {
        for p in [3u32, 5, 7] {
            for n in -12i64..20 {
                for k in 0u64..8 {
                    let want = binom_exact(n, k).rem_euclid(p as i128) as u32;
                    assert_eq!(binom_mod(n, k, p), want, "binom({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn inverses() {
        for p in [3u32, 5, 101] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p).unwrap(), p), 1);
            }
            assert_eq!(inv_mod(0, p), None);
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    #[should_panic(expected = "across moduli")]
    fn mixed_moduli_panic() {
        let _ = FpScalar::new(1, 3) + FpScalar::new(1, 5);
    }

    #[test]
    fn scalar_reduction() {
        let a = FpScalar::new(-1, 5);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!((-a).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 4);
    }
}
