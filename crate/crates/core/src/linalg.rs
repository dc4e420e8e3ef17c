//! Exact dense linear algebra over a [`Field`].

use crate::scalars::Field;

/// Outcome of fraction-free elimination with complete pivoting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    /// Original row index of each pivot, in elimination order.
    pub pivot_rows: Vec<usize>,
    /// Original column index of each pivot, in elimination order.
    pub pivot_cols: Vec<usize>,
}

/// Bareiss elimination. Pivots are searched column by column, so the
/// pivot columns form the lexicographically first independent set.
pub fn rank_profile<F: Field>(matrix: &[Vec<F>]) -> RankProfile {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = matrix.iter().map(|row| integral_row(row)).collect();
    let mut row_alive = vec![true; rows];
    let mut col_alive = vec![true; cols];
    let mut prev = F::one();
    let mut profile = RankProfile { rank: 0, pivot_rows: Vec::new(), pivot_cols: Vec::new() };

    loop {
        let pivot = (0..cols)
            .filter(|&c| col_alive[c])
            .find_map(|c| (0..rows).find(|&r| row_alive[r] && !m[r][c].is_zero()).map(|r| (r, c)));
        let Some((pr, pc)) = pivot else { break };
        row_alive[pr] = false;
        col_alive[pc] = false;
        profile.rank += 1;
        profile.pivot_rows.push(pr);
        profile.pivot_cols.push(pc);

        let p = m[pr][pc].clone();
        for r in 0..rows {
            if !row_alive[r] {
                continue;
            }
            let factor = m[r][pc].clone();
            for c in 0..cols {
                if !col_alive[c] {
                    continue;
                }
                let lhs = p.times(&m[r][c]);
                let value = if factor.is_zero() { lhs } else { lhs.minus(&factor.times(&m[pr][c])) };
                m[r][c] = value.quotient(&prev).expect("previous pivot is nonzero");
            }
            m[r][pc] = F::zero();
        }
        prev = p;
    }
    profile
}

pub fn rank<F: Field>(matrix: &[Vec<F>]) -> usize {
    rank_profile(matrix).rank
}

/// `row` times the product of its distinct denominators.
fn integral_row<F: Field>(row: &[F]) -> Vec<F> {
    let mut dens: Vec<F> = Vec::new();
    for x in row {
        let d = x.denominator();
        if !d.is_one() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    if dens.is_empty() {
        return row.to_vec();
    }
    let scale = dens.iter().fold(F::one(), |acc, d| acc.times(d));
    row.iter().map(|x| x.times(&scale)).collect()
}

/// Solves `A X = B` for square invertible `A`; `None` if `A` is singular.
///
/// Fraction-free Gauss-Jordan: after step `k` every entry is a minor of the
/// augmented matrix, so divisions by the previous pivot are exact and no
/// fractions appear until the final division by `det A`.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let k = b.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| integral_row(&ra.iter().chain(rb).cloned().collect::<Vec<_>>()))
        .collect();
    let mut prev = F::one();
    for col in 0..n {
        let pr = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pr);
        let p = aug[col][col].clone();
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in 0..n + k {
                if c == col {
                    continue;
                }
                let lhs = p.times(&aug[r][c]);
                let value = if factor.is_zero() { lhs } else { lhs.minus(&factor.times(&aug[col][c])) };
                aug[r][c] = value.quotient(&prev).expect("previous pivot is nonzero");
            }
            aug[r][col] = F::zero();
        }
        prev = p;
    }
    let det = prev;
    Some(aug.into_iter().map(|row| row[n..].iter().map(|x| x.quotient(&det).expect("nonzero determinant")).collect()).collect())
}

/// `A · B`.
pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>], inner: usize, cols: usize) -> Vec<Vec<F>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(F::zero(), |acc, j| {
                        if row[j].is_zero() || b[j][c].is_zero() {
                            acc
                        } else {
                            acc.plus(&row[j].times(&b[j][c]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `A · x`.
pub fn mat_vec<F: Field>(a: &[Vec<F>], x: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(F::zero(), |acc, (r, v)| {
                if r.is_zero() || v.is_zero() {
                    acc
                } else {
                    acc.plus(&r.times(v))
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Scalar};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(&q(&[&[0, 0], &[0, 0]])), 0);
        let p = rank_profile(&q(&[&[0, 1, 1], &[0, 2, 3]]));
        assert_eq!(p.rank, 2);
        assert_eq!(p.pivot_cols, vec![1, 2]);
    }

    #[test]
    fn rank_over_function_field() {
        let v = Scalar::v();
        let one = Scalar::from_int(1);
        // [[v, 1], [v^2, v]] is singular; [[v, 1], [1, v]] is not.
        let sing = vec![vec![v.clone(), one.clone()], vec![&v * &v, v.clone()]];
        let reg = vec![vec![v.clone(), one.clone()], vec![one.clone(), v.clone()]];
        assert_eq!(rank(&sing), 1);
        assert_eq!(rank(&reg), 2);
    }

    #[test]
    fn solve_recovers_inverse_action() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let b = q(&[&[3], &[2]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, q(&[&[1], &[1]]));
        assert!(solve(&q(&[&[1, 1], &[1, 1]]), &b).is_none());
    }

    proptest! {
        #[test]
        fn rank_matches_naive_elimination(entries in prop::collection::vec(-2i64..3, 12)) {
            let m: Vec<Vec<BigRational>> = entries.chunks(4).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let t: Vec<Vec<BigRational>> = (0..4).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect();
            prop_assert_eq!(rank(&m), rank(&t));
            let p = rank_profile(&m);
            let sub: Vec<Vec<BigRational>> = p.pivot_rows.iter()
                .map(|&r| p.pivot_cols.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            let id: Vec<Vec<BigRational>> = (0..p.rank)
                .map(|i| (0..p.rank).map(|j| int((i == j) as i64)).collect())
                .collect();
            prop_assert!(solve(&sub, &id).is_some());
        }

        #[test]
        fn solve_satisfies_system_over_function_field(
            entries in prop::collection::vec((-2i64..3, -2i64..3), 9),
            rhs in prop::collection::vec((-2i64..3, 1i64..3), 6),
        ) {
            let v = Scalar::v();
            let a: Vec<Vec<Scalar>> = entries
                .chunks(3)
                .map(|r| r.iter().map(|&(x, y)| Scalar::from_int(x).plus(&v.times(&Scalar::from_int(y)))).collect())
                .collect();
            let b: Vec<Vec<Scalar>> = rhs
                .chunks(2)
                .map(|r| r.iter().map(|&(x, y)| Scalar::from_int(x).quotient(&v.plus(&Scalar::from_int(y))).unwrap()).collect())
                .collect();
            match solve(&a, &b) {
                Some(x) => prop_assert_eq!(mat_mul(&a, &x, 3, 2), b),
                None => prop_assert!(rank(&a) < 3),
            }
        }
    }
}
