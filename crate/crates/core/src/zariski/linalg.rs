//! Exact linear algebra over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Vector = Vec<Q>;
/// Row-major.
pub type Matrix = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

/// Matrix whose columns are the given vectors, each of length `rows`.
pub fn from_columns(cols: &[Vector], rows: usize) -> Matrix {
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(m: &Matrix, cols: usize) -> usize {
    let mut m = m.clone();
    rref(&mut m, cols).len()
}

/// Some `x` with `m x = b`, if the system is consistent.
pub fn solve(m: &Matrix, b: &[Q], cols: usize) -> Option<Vector> {
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = zeros(cols);
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

/// A basis of the null space of `m` (with `cols` columns).
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut r = m.clone();
    let pivots = rref(&mut r, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(cols);
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Row-reduced basis of the span of the given vectors, with pivot positions.
pub fn span_basis(vectors: &[Vector], dim: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = vectors.to_vec();
    let pivots = rref(&mut m, dim);
    (m, pivots)
}

/// Reduces `v` modulo a row-reduced span, zeroing the pivot coordinates.
pub fn reduce(v: &[Q], reduced: &Matrix, pivots: &[usize]) -> Vector {
    let mut out = v.to_vec();
    for (row, &p) in reduced.iter().zip(pivots) {
        if !out[p].is_zero() {
            let c = out[p].clone();
            out = sub(&out, &scale(&c, row));
        }
    }
    out
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn show_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_kernel() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&m, &[q(1), q(1)], 2).is_none());
        let x = solve(&m, &[q(1), q(2)], 2).unwrap();
        assert_eq!(mat_vec(&m, &x), vec![q(1), q(2)]);
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        assert!(is_zero(&mat_vec(&m, &k[0])));
        assert_eq!(rank(&m, 2), 1);
    }

    #[test]
    fn rationals_parse_and_print() {
        assert_eq!(parse_rational("-3/4"), Some(ratio(-3, 4)));
        assert_eq!(parse_rational("5"), Some(q(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(show_rational(&ratio(6, 4)), "3/2");
    }
}
