use std::fmt;

use serde::Serialize;

use super::{digits, CombError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Regular { i: u32, s: u32 },
    Steinberg,
}

/// A block of Dist(SL(2)_r): `B_{i,s}` (low digits `p-1` up to position
/// `s`, digit `s` in `{i, p-2-i}`) or the Steinberg block `{p^r - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockId {
    pub kind: BlockKind,
    pub p: u32,
    pub r: u32,
}

impl BlockId {
    pub fn regular(p: u32, r: u32, i: u32, s: u32) -> Result<Self, CombError> {
        check_pr(p, r)?;
        if 2 * i + 3 > p || s >= r {
            return Err(CombError::OutOfRange(format!(
                "B_({i},{s}) needs 0 <= i <= (p-3)/2 and s < r"
            )));
        }
        Ok(BlockId {
            kind: BlockKind::Regular { i, s },
            p,
            r,
        })
    }

    pub fn steinberg(p: u32, r: u32) -> Result<Self, CombError> {
        check_pr(p, r)?;
        Ok(BlockId {
            kind: BlockKind::Steinberg,
            p,
            r,
        })
    }

    /// Every block for the given `p` and `r`.
    pub fn all(p: u32, r: u32) -> Result<Vec<BlockId>, CombError> {
        let mut out = Vec::new();
        for s in 0..r {
            for i in 0..=(p - 3) / 2 {
                out.push(Self::regular(p, r, i, s)?);
            }
        }
        out.push(Self::steinberg(p, r)?);
        Ok(out)
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BlockKind::Regular { i, s } => write!(f, "B_({i},{s})"),
            BlockKind::Steinberg => write!(f, "B_St"),
        }
    }
}

pub(crate) fn check_pr(p: u32, r: u32) -> Result<(), CombError> {
    if p < 3 || !crate::fplinalg::is_prime(p as u64) {
        return Err(CombError::OutOfRange(format!("{p} is not an odd prime")));
    }
    if r == 0 || (p as u64).checked_pow(r).map_or(true, |n| n > 1 << 40) {
        return Err(CombError::OutOfRange(format!("height {r} out of range")));
    }
    Ok(())
}

fn check_weight(p: u32, r: u32, lambda: u64) -> Result<(), CombError> {
    check_pr(p, r)?;
    let bound = (p as u64).pow(r);
    if lambda >= bound {
        return Err(CombError::OutOfRange(format!("weight {lambda} outside [0, {bound})")));
    }
    Ok(())
}

pub fn block_of(p: u32, r: u32, lambda: u64) -> Result<BlockId, CombError> {
    check_weight(p, r, lambda)?;
    let d = digits(p, r, lambda);
    match d.iter().position(|&x| x != p - 1) {
        None => BlockId::steinberg(p, r),
        Some(s) => BlockId::regular(p, r, d[s].min(p - 2 - d[s]), s as u32),
    }
}

pub fn block_members(id: &BlockId) -> Vec<u64> {
    let (p, r) = (id.p as u64, id.r);
    let top = p.pow(r);
    match id.kind {
        BlockKind::Steinberg => vec![top - 1],
        BlockKind::Regular { i, s } => {
            let low = p.pow(s) - 1;
            let unit = p.pow(s);
            let high_unit = p.pow(s + 1);
            let mut out = Vec::new();
            for high in 0..p.pow(r - s - 1) {
                for d in [i as u64, p - 2 - i as u64] {
                    out.push(low + d * unit + high * high_unit);
                }
            }
            out.sort_unstable();
            out
        }
    }
}

/// `n ↦ n p^s + p^s - 1`, from `B_{i,0}^{(r-s)}` to `B_{i,s}^{(r)}`.
pub fn morita_weight_map(p: u32, r: u32, s: u32, n: u64) -> Result<u64, CombError> {
    check_pr(p, r)?;
    if s >= r {
        return Err(CombError::OutOfRange(format!("s = {s} must be below r = {r}")));
    }
    let ps = (p as u64).pow(s);
    let bound = (p as u64).pow(r - s);
    if n >= bound {
        return Err(CombError::OutOfRange(format!("n = {n} outside [0, {bound})")));
    }
    if n % p as u64 == p as u64 - 1 {
        return Err(CombError::OutOfRange(format!("n = {n} lies in no regular block of height {}", r - s)));
    }
    Ok(n * ps + ps - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Finite,
    Tame,
    Wild,
}

pub fn classify_block_type(id: &BlockId) -> RepType {
    match id.kind {
        BlockKind::Steinberg => RepType::Finite,
        BlockKind::Regular { s, .. } if id.r - s == 1 => RepType::Tame,
        BlockKind::Regular { .. } => RepType::Wild,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_small() {
        assert_eq!(block_members(&BlockId::regular(3, 2, 0, 0).unwrap()), vec![0, 1, 3, 4, 6, 7]);
        assert_eq!(block_members(&BlockId::regular(3, 2, 0, 1).unwrap()), vec![2, 5]);
        assert_eq!(block_of(3, 2, 8).unwrap().kind, BlockKind::Steinberg);
        assert_eq!(block_of(3, 2, 5).unwrap().kind, BlockKind::Regular { i: 0, s: 1 });
    }

    #[test]
    fn morita() {
        assert_eq!(morita_weight_map(3, 2, 0, 4).unwrap(), 4);
        assert_eq!(morita_weight_map(3, 2, 1, 0).unwrap(), 2);
        assert!(morita_weight_map(3, 2, 2, 0).is_err());
    }

    #[test]
    fn block_types() {
        assert_eq!(classify_block_type(&BlockId::regular(3, 1, 0, 0).unwrap()), RepType::Tame);
        assert_eq!(classify_block_type(&BlockId::regular(3, 2, 0, 1).unwrap()), RepType::Tame);
        assert_eq!(classify_block_type(&BlockId::regular(3, 2, 0, 0).unwrap()), RepType::Wild);
        assert_eq!(classify_block_type(&BlockId::steinberg(3, 2).unwrap()), RepType::Finite);
    }
}
