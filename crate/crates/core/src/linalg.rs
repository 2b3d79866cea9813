//! Exact nullspace computation by Gaussian elimination over a field.
//! Deliberately naive: desk-scale systems with rational-function entries.

use crate::field::Field;

/// Reduced row echelon form in place; returns the pivot column of each row.
fn rref<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// First nullspace basis vector in the deterministic elimination order
/// (free columns scanned in ascending index), or `None` when the kernel is
/// trivial.
pub fn nullspace_first<F: Field>(rows: &[Vec<F>], ncols: usize) -> Option<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.iter().map(|r| r.to_vec()).collect();
    let pivots = rref(&mut m, ncols);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free = (0..ncols).find(|c| !pivot_set.contains(c))?;
    let mut v = vec![F::zero(); ncols];
    v[free] = F::one();
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = m[i][free].neg();
    }
    Some(v)
}

/// All nullspace basis vectors (one per free column, ascending).
pub fn nullspace_basis<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.iter().map(|r| r.to_vec()).collect();
    let pivots = rref(&mut m, ncols);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = m[i][free].neg();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, BigRat};

    #[test]
    fn kernel_of_rank_deficient_system() {
        // x + y + z = 0; x + 2y + 3z = 0 -> kernel spanned by (1, -2, 1)
        let rows = vec![
            vec![int(1), int(1), int(1)],
            vec![int(1), int(2), int(3)],
        ];
        let v = nullspace_first::<BigRat>(&rows, 3).unwrap();
        let scaled: Vec<_> = v.iter().map(|x| x.mul(&v[2].inv())).collect();
        assert_eq!(scaled, vec![int(1), int(-2), int(1)]);
    }

    #[test]
    fn trivial_kernel() {
        let rows = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(nullspace_first::<BigRat>(&rows, 2).is_none());
    }
}
