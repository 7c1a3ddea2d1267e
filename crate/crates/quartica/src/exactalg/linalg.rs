//! Small exact linear algebra over a generic field: reduced row echelon
//! form, kernels, solving, determinants. Everything is deterministic; the
//! kernel basis follows the free-variable convention (free variable set to
//! one, remaining free variables zero) in increasing column order.

use crate::exactalg::ring::{Field, Ring};

pub type Mat<F> = Vec<Vec<<F as Ring>::Elem>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(ring: &F, mat: &mut Mat<F>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !ring.is_zero(&mat[i][c])) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = ring.inv(&mat[r][c]).expect("pivot is nonzero");
        for j in c..cols {
            mat[r][j] = ring.mul(&mat[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !ring.is_zero(&mat[i][c]) {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let t = ring.mul(&f, &mat[r][j]);
                    mat[i][j] = ring.sub(&mat[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel of `mat`.
pub fn kernel_basis<F: Field>(ring: &F, mat: &Mat<F>) -> Vec<Vec<F::Elem>> {
    if mat.is_empty() {
        return vec![];
    }
    let cols = mat[0].len();
    let mut m = mat.clone();
    let pivots = rref(ring, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![ring.zero(); cols];
        v[fc] = ring.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = ring.neg(&m[ri][fc]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `mat * x = rhs`, or None if inconsistent. Free
/// variables are set to zero.
pub fn solve<F: Field>(ring: &F, mat: &Mat<F>, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let rows = mat.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = mat[0].len();
    let mut aug: Mat<F> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(ring, &mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![ring.zero(); cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][cols].clone();
    }
    Some(x)
}

pub fn rank<F: Field>(ring: &F, mat: &Mat<F>) -> usize {
    let mut m = mat.clone();
    rref(ring, &mut m).len()
}

/// Determinant by exact Gaussian elimination.
pub fn det<F: Field>(ring: &F, mat: &Mat<F>) -> F::Elem {
    let n = mat.len();
    let mut m = mat.clone();
    let mut acc = ring.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !ring.is_zero(&m[i][c])) else {
            return ring.zero();
        };
        if pr != c {
            m.swap(pr, c);
            acc = ring.neg(&acc);
        }
        acc = ring.mul(&acc, &m[c][c]);
        let inv = ring.inv(&m[c][c]).expect("pivot nonzero");
        for i in (c + 1)..n {
            if ring.is_zero(&m[i][c]) {
                continue;
            }
            let f = ring.mul(&m[i][c], &inv);
            for j in c..n {
                let t = ring.mul(&f, &m[c][j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
    }
    acc
}
