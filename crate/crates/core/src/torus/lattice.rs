//! Exact integer and rational linear algebra for relation lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Rank over Q of a rational matrix (rows of equal length).
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in (rank + 1)..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..ncols].iter_mut().zip(&top[rank][col..ncols]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Scales each rational row by the lcm of its denominators.
pub fn clear_row_denominators(rows: &[Vec<BigRational>]) -> IntMatrix {
    rows.iter()
        .map(|row| {
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect()
}

/// A basis of `{ m in Z^c : A m = 0 }` for an integer `r x c` matrix `A`.
///
/// Column operations bring `A` to column echelon form while the same
/// unimodular operations are applied to the identity; the columns of the
/// transform that end up opposite zero columns span the integer kernel.
pub fn integer_kernel(a: &IntMatrix, ncols: usize) -> IntMatrix {
    let mut m: IntMatrix = a.to_vec();
    let mut u: IntMatrix = (0..ncols)
        .map(|i| (0..ncols).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    // u is stored column-major: u[j] is column j of the transform
    let mut pivot_col = 0;
    for row in 0..m.len() {
        if pivot_col >= ncols {
            break;
        }
        loop {
            // smallest nonzero |entry| in this row among remaining columns
            let best = (pivot_col..ncols)
                .filter(|&j| !m[row][j].is_zero())
                .min_by(|&x, &y| m[row][x].abs().cmp(&m[row][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut m, &mut u, pivot_col, best);
            let mut done = true;
            for j in (pivot_col + 1)..ncols {
                if m[row][j].is_zero() {
                    continue;
                }
                let f = m[row][j].div_floor(&m[row][pivot_col]);
                col_axpy(&mut m, &mut u, j, pivot_col, &f);
                if !m[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[row][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }
    u[pivot_col..].to_vec()
}

fn swap_cols(m: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

/// column `dst -= f * column src`, on both the matrix and the transform
fn col_axpy(m: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let delta = f * &row[src];
        row[dst] -= delta;
    }
    let src_col = u[src].clone();
    for (x, s) in u[dst].iter_mut().zip(&src_col) {
        *x -= f * s;
    }
}

/// Row Hermite normal form: echelon rows with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &IntMatrix) -> IntMatrix {
    let mut m: IntMatrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r >= m.len() {
            break;
        }
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&x, &y| m[x][col].abs().cmp(&m[y][col].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            let mut done = true;
            for i in (r + 1)..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = m[i][col].div_floor(&m[r][col]);
                row_axpy(&mut m, i, r, &f);
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let f = m[i][col].div_floor(&m[r][col]);
            if !f.is_zero() {
                row_axpy(&mut m, i, r, &f);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(&src_row) {
        *x -= f * s;
    }
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// gcd of all maximal (`r x r`) minors of an `r x n` integer matrix of rank `r`.
///
/// Equals the order of the torsion part of `Z^n / rowspace`.
pub fn maximal_minor_gcd(rows: &IntMatrix, ncols: usize) -> BigInt {
    let r = rows.len();
    if r == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    if ncols < r {
        return BigInt::zero();
    }
    let mut cols: Vec<usize> = (0..r).collect();
    'combos: loop {
        let sub: IntMatrix = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        g = g.gcd(&determinant(&sub));
        if g.is_one() {
            return g;
        }
        let mut i = r;
        while i > 0 {
            i -= 1;
            if cols[i] < ncols - r + i {
                cols[i] += 1;
                for j in (i + 1)..r {
                    cols[j] = cols[j - 1] + 1;
                }
                continue 'combos;
            }
        }
        return g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    #[test]
    fn kernel_then_hnf() {
        // 3 m1 + 2 m2 + 6 m3 = 0
        let a = im(&[&[3, 2, 6]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
        assert_eq!(hermite_normal_form(&k), im(&[&[2, 0, -1], &[0, 3, -1]]));
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        let a = im(&[&[1, 0], &[0, 1]]);
        assert!(integer_kernel(&a, 2).is_empty());
    }

    #[test]
    fn kernel_is_saturated() {
        // 2 m1 + 4 m2 = 0 has kernel generated by (2, -1), not (4, -2)
        let k = hermite_normal_form(&integer_kernel(&im(&[&[2, 4]]), 2));
        assert_eq!(k, im(&[&[2, -1]]));
    }

    #[test]
    fn determinants_and_minors() {
        assert_eq!(determinant(&im(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(&im(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&im(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(maximal_minor_gcd(&im(&[&[2, -2]]), 2), BigInt::from(2));
        assert_eq!(maximal_minor_gcd(&im(&[&[1, -2]]), 2), BigInt::one());
        assert_eq!(maximal_minor_gcd(&im(&[&[3]]), 1), BigInt::from(3));
        // Z^3 / <(2,0,0),(0,2,4)> torsion = Z/2 x Z/2
        assert_eq!(maximal_minor_gcd(&im(&[&[2, 0, 0], &[0, 2, 4]]), 3), BigInt::from(4));
    }

    #[test]
    fn ranks() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let rows = vec![vec![r(1, 2), r(1, 3), r(1, 1)], vec![r(1, 1), r(2, 3), r(2, 1)]];
        assert_eq!(rational_rank(&rows), 1);
        assert_eq!(rational_rank(&[]), 0);
    }
}
