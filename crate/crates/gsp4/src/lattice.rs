//! Integer lattice helpers: Hermite normal form reduction and exact solving
//! of small integer linear systems.

use num_rational::Ratio;

/// Row-style Hermite normal form of a full-rank square integer basis.
/// Rows are upper triangular with positive pivots and entries above a pivot
/// reduced into [0, pivot).
pub fn hnf(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    for col in 0..n {
        // gcd-combine rows col..n in this column
        loop {
            let nonzero: Vec<usize> = (col..n).filter(|&r| a[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    a.swap(col, r);
                }
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&r| a[r][col].abs()).unwrap();
            a.swap(col, piv);
            for r in col + 1..n {
                let q = a[r][col].div_euclid(a[col][col]);
                if q != 0 {
                    for k in 0..n {
                        let v = a[col][k];
                        a[r][k] -= q * v;
                    }
                }
            }
        }
        assert!(a[col][col] != 0, "lattice basis must have full rank");
        if a[col][col] < 0 {
            for k in 0..n {
                a[col][k] = -a[col][k];
            }
        }
        for r in 0..col {
            let q = a[r][col].div_euclid(a[col][col]);
            if q != 0 {
                for k in 0..n {
                    let v = a[col][k];
                    a[r][k] -= q * v;
                }
            }
        }
    }
    a
}

/// Canonical representative of v modulo the lattice with Hermite basis h:
/// the unique vector with 0 <= v_i < h_ii.
pub fn reduce(h: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    let mut out = v.to_vec();
    for (i, row) in h.iter().enumerate() {
        let q = out[i].div_euclid(row[i]);
        if q != 0 {
            for k in 0..out.len() {
                out[k] -= q * row[k];
            }
        }
    }
    out
}

/// Exact solution of M x = b over Q, for square invertible M.
pub fn solve_rational(m: &[Vec<i128>], b: &[i128]) -> Option<Vec<Ratio<i128>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().chain(std::iter::once(bi)).map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| *a[r][c].numer() != 0)?;
        a.swap(c, piv);
        let inv = Ratio::from_integer(1) / a[c][c];
        for k in c..=n {
            a[c][k] *= inv;
        }
        for r in 0..n {
            if r != c && *a[r][c].numer() != 0 {
                let f = a[r][c];
                for k in c..=n {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
            }
        }
    }
    Some(a.iter().map(|row| row[n]).collect())
}

/// Integer solution of M x = b, if one exists (M square invertible).
pub fn solve_integer(m: &[Vec<i128>], b: &[i128]) -> Option<Vec<i128>> {
    let x = solve_rational(m, b)?;
    x.iter().map(|r| if r.is_integer() { Some(r.to_integer()) } else { None }).collect()
}

/// The matrix p·I − S of size f, where (S x)_j = x_{j+1 mod f}.
pub fn p_minus_shift(p: i128, f: usize) -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; f]; f];
    for j in 0..f {
        m[j][j] += p;
        m[j][(j + 1) % f] -= 1;
    }
    m
}

/// Rows spanning the lattice (p − π)Z^f, i.e. the columns of p·I − S.
pub fn p_minus_shift_lattice(p: i128, f: usize) -> Vec<Vec<i128>> {
    let m = p_minus_shift(p, f);
    (0..f).map(|c| (0..f).map(|r| m[r][c]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_circulant() {
        let rows = p_minus_shift_lattice(5, 2);
        let h = hnf(&rows);
        // determinant p^f − 1 = 24
        assert_eq!(h[0][0] * h[1][1], 24);
        let v = vec![100, -7];
        let r = reduce(&h, &v);
        let diff: Vec<i128> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        let m = p_minus_shift(5, 2);
        assert!(solve_integer(&m, &diff).is_some());
    }

    #[test]
    fn f_one() {
        let h = hnf(&p_minus_shift_lattice(37, 1));
        assert_eq!(h, vec![vec![36]]);
        assert_eq!(reduce(&h, &[-1]), vec![35]);
    }
}
