use super::matrix::{kernel_from_rref, FpMatrix};
use super::scalar::inv_mod;

/// Incrementally grown semi-echelon basis of a subspace of F_p^width.
///
/// Each stored row has a normalized pivot and vanishes on the pivots of
/// every row stored before it, so a single ordered sweep reduces a vector.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize, p: u32) -> Self {
        Echelon {
            width,
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduce `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let nf = (self.p - f) as u64;
            for (x, &y) in v[c..].iter_mut().zip(&row[c..]) {
                if y != 0 {
                    *x = ((*x as u64 + nf * y as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[c], self.p).unwrap() as u64;
        let p = self.p as u64;
        for x in &mut w[c..] {
            *x = (*x as u64 * inv % p) as u32;
        }
        self.rows.push(w);
        self.pivots.push(c);
        true
    }

    /// Stored rows as a matrix (rank x width).
    pub fn to_matrix(&self) -> FpMatrix {
        let data = self.rows.iter().flatten().copied().collect();
        FpMatrix::new(self.rows.len(), self.width, self.p, data).expect("echelon rows are reduced")
    }

    /// Basis (as columns) of the vectors annihilated by every stored row.
    pub fn null_space(&self) -> FpMatrix {
        if self.rows.is_empty() {
            return FpMatrix::identity(self.width, self.p);
        }
        let r = self.to_matrix().rref();
        kernel_from_rref(&r.matrix, &r.pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_tracks_rank() {
        let mut e = Echelon::new(3, 5);
        assert!(e.insert(&[1, 2, 3]));
        assert!(!e.insert(&[2, 4, 1]));
        assert!(e.insert(&[0, 1, 0]));
        assert!(e.contains(&[1, 0, 3]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.rank(), 2);
        let ns = e.null_space();
        assert_eq!(ns.cols(), 1);
        assert!((&e.to_matrix() * &ns).is_zero());
    }
}
