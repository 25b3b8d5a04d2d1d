use std::collections::HashSet;

use super::{GenAlgebra, Module, RepError};
use crate::fplinalg::{Echelon, FpMatrix};

/// Sparse rows of an action matrix.
struct Sparse {
    rows: Vec<Vec<(usize, u32)>>,
}

impl Sparse {
    fn new(a: &FpMatrix) -> Self {
        let rows = (0..a.rows())
            .map(|i| {
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| (j, x))
                    .collect()
            })
            .collect();
        Sparse { rows }
    }

    /// `self * phi` where `phi` is `n x u`, row-major.
    fn apply(&self, phi: &[u32], u: usize, p: u32) -> Vec<u32> {
        let pp = p as u64;
        let mut out = vec![0u32; phi.len()];
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let dst = &mut out[i * u..(i + 1) * u];
            for &(j, x) in row {
                let src = &phi[j * u..(j + 1) * u];
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d = ((*d as u64 + x as u64 * s as u64) % pp) as u32;
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Origin {
    Seed(usize),
    Child { parent: usize, gen: usize },
}

/// A basis of `M` obtained by applying generators to standard basis seeds.
struct Spin {
    vectors: Vec<Vec<u32>>,
    origins: Vec<Origin>,
}

fn spin(m: &Module) -> Spin {
    let n = m.dim();
    let p = m.modulus();
    let mut ech = Echelon::new(n, p);
    let mut vectors = Vec::new();
    let mut origins = Vec::new();
    let mut next = 0;
    for i in 0..n {
        if ech.is_full() {
            break;
        }
        let mut e = vec![0u32; n];
        e[i] = 1;
        if !ech.insert(&e) {
            continue;
        }
        vectors.push(e);
        origins.push(Origin::Seed(i));
        while next < vectors.len() {
            for (g, a) in m.action().iter().enumerate() {
                let w = a.mul_vec(&vectors[next]);
                if ech.insert(&w) {
                    vectors.push(w);
                    origins.push(Origin::Child { parent: next, gen: g });
                }
            }
            next += 1;
        }
    }
    Spin { vectors, origins }
}

/// Basis of the module homomorphisms `M -> N`, each a `dim N x dim M` matrix.
///
/// When both modules are graded only degree-preserving maps are returned.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<FpMatrix>, RepError> {
    if !m.same_algebra(n) {
        return Err(RepError::AlgebraMismatch {
            left: m.presentation().id().to_string(),
            right: n.presentation().id().to_string(),
        });
    }
    let p = m.modulus();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let graded = match (m.grading(), n.grading()) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    };

    let sp = spin(m);
    // unknowns: coordinates of each seed's image
    let mut seed_vars: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut u = 0;
    for o in &sp.origins {
        if let Origin::Seed(i) = *o {
            let targets: Vec<usize> = match graded {
                Some((gm, gn)) => (0..dn).filter(|&j| gn[j] == gm[i]).collect(),
                None => (0..dn).collect(),
            };
            seed_vars.push((u, targets.clone()));
            u += targets.len();
        }
    }
    if u == 0 {
        return Ok(Vec::new());
    }

    let t = FpMatrix::from_columns(p, dm, &sp.vectors);
    let t_inv = t.inverse().expect("spin vectors form a basis");
    let n_sparse: Vec<Sparse> = n.action().iter().map(Sparse::new).collect();

    // phi[k] = image of spin vector k as an (dn x u) matrix in the unknowns
    let mut phi: Vec<Vec<u32>> = Vec::with_capacity(sp.vectors.len());
    let mut seed_no = 0;
    for o in &sp.origins {
        match *o {
            Origin::Seed(_) => {
                let (off, targets) = &seed_vars[seed_no];
                seed_no += 1;
                let mut f = vec![0u32; dn * u];
                for (c, &j) in targets.iter().enumerate() {
                    f[j * u + off + c] = 1;
                }
                phi.push(f);
            }
            Origin::Child { parent, gen } => {
                let f = n_sparse[gen].apply(&phi[parent], u, p);
                phi.push(f);
            }
        }
    }

    let definitions: HashSet<(usize, usize)> = sp
        .origins
        .iter()
        .filter_map(|o| match *o {
            Origin::Child { parent, gen } => Some((parent, gen)),
            Origin::Seed(_) => None,
        })
        .collect();

    let pp = p as u64;
    let mut constraints = Echelon::new(u, p);
    'outer: for (g, a) in m.action().iter().enumerate() {
        for k in 0..sp.vectors.len() {
            if definitions.contains(&(k, g)) {
                continue;
            }
            let coords = t_inv.mul_vec(&a.mul_vec(&sp.vectors[k]));
            let mut lhs = n_sparse[g].apply(&phi[k], u, p);
            for (l, &c) in coords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let neg = (p - c) as u64;
                for (x, &y) in lhs.iter_mut().zip(&phi[l]) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % pp) as u32;
                    }
                }
            }
            for row in lhs.chunks(u) {
                if row.iter().any(|&x| x != 0) {
                    constraints.insert(row);
                    if constraints.is_full() {
                        break 'outer;
                    }
                }
            }
        }
    }
    let solutions = constraints.null_space();
    let mut out = Vec::with_capacity(solutions.cols());
    for z in solutions.columns() {
        let cols: Vec<Vec<u32>> = phi
            .iter()
            .map(|f| {
                f.chunks(u)
                    .map(|row| {
                        row.iter()
                            .zip(&z)
                            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % pp) as u32
                    })
                    .collect()
            })
            .collect();
        let f = FpMatrix::from_columns(p, dn, &cols);
        out.push(&f * &t_inv);
    }
    Ok(out)
}

impl GenAlgebra {
    pub fn hom_space(&self, m: &Module, n: &Module) -> Result<Vec<FpMatrix>, RepError> {
        self.check_module(m)?;
        self.check_module(n)?;
        hom_space(m, n)
    }
}
