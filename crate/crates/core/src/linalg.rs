//! Exact dense linear algebra over a coefficient field.
//!
//! The only consumer is the telescoper search, which needs one nonzero
//! nullspace vector of a small matrix over ℚ(x); everything is plain
//! Gauss-Jordan elimination with a caller-supplied pivot weight.

use crate::algebra::field::Field;

/// One nonzero solution of `M·e = 0`, or `None` when the columns are
/// independent. `weight` rates candidate pivots; smaller is preferred
/// (use entry degrees to keep rational-function arithmetic flat).
pub fn nullspace_vector_by<F: Field>(
    matrix: &[Vec<F>],
    cols: usize,
    weight: impl Fn(&F) -> usize,
) -> Option<Vec<F>> {
    let mut rows: Vec<Vec<F>> = matrix
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    for r in &rows {
        assert_eq!(r.len(), cols, "ragged matrix");
    }

    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let pick = (rank..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| weight(&rows[i][col]));
        let Some(p) = pick else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv();
        for c in col..cols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..cols {
                    rows[i][c] = rows[i][c].sub(&f.mul(&rows[rank][c]));
                }
            }
        }
        pivot_row_of_col[col] = Some(rank);
        rank += 1;
    }

    // Highest-index free column, so the solution engages the last unknown
    // whenever the system leaves it free.
    let free = (0..cols).rev().find(|&c| pivot_row_of_col[c].is_none())?;
    let mut e = vec![F::zero(); cols];
    e[free] = F::one();
    for col in 0..cols {
        if let Some(r) = pivot_row_of_col[col] {
            e[col] = rows[r][free].neg();
        }
    }
    Some(e)
}

/// `nullspace_vector_by` with no pivot preference.
pub fn nullspace_vector<F: Field>(matrix: &[Vec<F>], cols: usize) -> Option<Vec<F>> {
    nullspace_vector_by(matrix, cols, |_| 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, Rat};
    use crate::rng::XorShift;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
            .collect()
    }

    fn mul(matrix: &[Vec<Rat>], e: &[Rat]) -> Vec<Rat> {
        matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(e)
                    .fold(Rat::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    #[test]
    fn independent_columns_have_trivial_nullspace() {
        assert!(nullspace_vector(&m(&[&[1, 0], &[0, 1]]), 2).is_none());
        assert!(nullspace_vector(&m(&[&[1, 2], &[3, 4], &[5, 6]]), 2).is_none());
    }

    #[test]
    fn single_relation() {
        let matrix = m(&[&[1, 2]]);
        let e = nullspace_vector(&matrix, 2).unwrap();
        assert!(e.iter().any(|c| !c.is_zero()));
        assert!(mul(&matrix, &e).iter().all(|c| c.is_zero()));
        assert_eq!(e, vec![rat(-2, 1), rat(1, 1)]);
    }

    #[test]
    fn zero_matrix_frees_everything() {
        let e = nullspace_vector::<Rat>(&[], 3).unwrap();
        assert_eq!(e, vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        let e = nullspace_vector(&m(&[&[0, 0, 0]]), 3).unwrap();
        assert_eq!(e, vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn echelon_back_substitution() {
        let matrix = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let e = nullspace_vector(&matrix, 3).unwrap();
        assert_eq!(e, vec![rat(1, 1), rat(-1, 1), rat(1, 1)]);
        assert!(mul(&matrix, &e).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn wide_random_matrices_always_solve() {
        let mut rng = XorShift::new(0xBEEF);
        for _ in 0..50 {
            let rows = rng.range_i64(0, 4) as usize;
            let cols = rows + 1 + rng.range_i64(0, 2) as usize;
            let matrix: Vec<Vec<Rat>> = (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.range_i64(-5, 6), 1)).collect())
                .collect();
            let e = nullspace_vector(&matrix, cols).expect("wide system must solve");
            assert!(e.iter().any(|c| !c.is_zero()));
            assert!(mul(&matrix, &e).iter().all(|c| c.is_zero()));
        }
    }
}
