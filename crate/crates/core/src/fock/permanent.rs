use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest size accepted by [`permanent`].
pub const MAX_PERMANENT: usize = 12;

/// Size up to which permutations are enumerated directly.
const DIRECT_LIMIT: usize = 4;

/// Permanent of a square matrix given as rows.
///
/// Small matrices sum over permutations in lexicographic order; larger ones
/// use Ryser's inclusion–exclusion formula with Gray-code updates.
pub fn permanent(rows: &[Vec<Complex64>]) -> Result<Complex64> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
    }
    match n {
        0 => Ok(Complex64::new(1.0, 0.0)),
        _ if n <= DIRECT_LIMIT => Ok(permanent_direct(rows)),
        _ if n <= MAX_PERMANENT => Ok(permanent_ryser(rows)),
        _ => Err(Error::Unsupported(format!("permanent of size {n} exceeds {MAX_PERMANENT}"))),
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub(crate) fn permanent_direct(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let mut term = Complex64::new(1.0, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            term *= rows[i][j];
        }
        total += term;
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn permanent_ryser(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray = 0usize;
    for k in 1..(1usize << n) {
        let next = k ^ (k >> 1);
        let col = (gray ^ next).trailing_zeros() as usize;
        let added = next & (1 << col) != 0;
        for (s, row) in row_sums.iter_mut().zip(rows) {
            if added {
                *s += row[col];
            } else {
                *s -= row[col];
            }
        }
        gray = next;
        let product: Complex64 = row_sums.iter().product();
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn all_ones_is_factorial() {
        for n in 1..=8usize {
            let rows = vec![vec![c(1.0); n]; n];
            let expected: f64 = (1..=n).map(|k| k as f64).product();
            assert!((permanent(&rows).unwrap().re - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn ryser_matches_direct() {
        let rows: Vec<Vec<Complex64>> = (0..4)
            .map(|i| (0..4).map(|j| Complex64::new((i * 3 + j) as f64 * 0.1, (i as f64 - j as f64) * 0.2)).collect())
            .collect();
        let a = permanent_direct(&rows);
        let b = permanent_ryser(&rows);
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn too_large() {
        let rows = vec![vec![c(1.0); 13]; 13];
        assert!(permanent(&rows).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]);
    }
}
