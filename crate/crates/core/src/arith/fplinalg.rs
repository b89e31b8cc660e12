//! Small dense linear algebra over F_p: row reduction, rank, kernel.

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref_mod_p(m: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        if let Some(r) = (row..rows).find(|&r| m[r][col] % p != 0) {
            m.swap(row, r);
            let inv = inv_mod(m[row][col] % p, p);
            for c in 0..cols {
                m[row][c] = mul_mod(m[row][c] % p, inv, p);
            }
            for r2 in 0..rows {
                if r2 != row && m[r2][col] % p != 0 {
                    let f = m[r2][col] % p;
                    for c in 0..cols {
                        let sub = mul_mod(f, m[row][c], p);
                        m[r2][c] = add_mod(m[r2][c] % p, neg_mod(sub, p), p);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    pivots
}

pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut copy: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    rref_mod_p(&mut copy, p).len()
}

/// Basis of the right kernel {v : M v = 0} of an r x c matrix over F_p.
pub fn kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut copy: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let pivots = rref_mod_p(&mut copy, p);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = neg_mod(copy[r][free], p);
        }
        basis.push(v);
    }
    basis
}
