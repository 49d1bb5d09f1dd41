//! Brute-force linear complexity straight from the minimal-denominator definition.
//!
//! `L(n)` is the least `L` for which some monic `v` of degree `L` satisfies
//! `sum_{j=0..L} v_j a[s-L+j][m] = 0` for every sequence `m` and every
//! `L+1 <= s <= n`. Each candidate `L` is a linear system in `v_0..v_{L-1}`
//! solved by Gaussian elimination. This is `O(n^4)` per position and only
//! meant for checking the engine.

use crate::algebra::{Field, FieldElement, SequencePrefix};

/// Least `L` such that a degree-`L` monic denominator approximates every
/// sequence of `seq` through position `n`.
pub fn min_lc(seq: &SequencePrefix, n: usize) -> usize {
    assert!(n <= seq.len(), "prefix shorter than {n}");
    (0..=n)
        .find(|&l| solvable(seq, n, l))
        .expect("L = n is always solvable")
}

/// `min_lc` at every position `1..=n`.
pub fn profile_oracle(seq: &SequencePrefix, n: usize) -> Vec<usize> {
    (1..=n).map(|t| min_lc(seq, t)).collect()
}

fn solvable(seq: &SequencePrefix, n: usize, l: usize) -> bool {
    let field = seq.field();
    // Augmented rows: [a[s-L+0] .. a[s-L+L-1] | -a[s]].
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for m in 0..seq.sequences() {
        for s in l + 1..=n {
            let mut row: Vec<FieldElement> = (0..l)
                .map(|j| seq.get(s as i64 - l as i64 + j as i64, m))
                .collect();
            row.push(field.neg(seq.get(s as i64, m)));
            rows.push(row);
        }
    }
    consistent(field, rows, l)
}

/// Whether the augmented system with `cols` unknowns has a solution.
fn consistent(field: &Field, mut rows: Vec<Vec<FieldElement>>, cols: usize) -> bool {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<FieldElement> = rows[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rows[rank..].iter().all(|row| row[cols].is_zero())
}
