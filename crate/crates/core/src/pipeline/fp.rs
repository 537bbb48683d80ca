//! Small dense linear algebra over a word-size prime, for sampling.

use crate::exactmath::modp::inv_mod;

/// Reduces `rows` in place and returns the pivot columns.
pub fn echelon(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
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

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    echelon(&mut rows.to_vec(), p).len()
}

pub fn kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, p);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let pivots = echelon(&mut aug, p);
    (pivots.len() == n && pivots.iter().all(|&c| c < n)).then(|| aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_inverse() {
        let p = 101;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&m, 3, p);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v, p).iter().all(|&x| x == 0));
        }
        let a = vec![vec![2, 1], vec![1, 1]];
        let inv = inverse(&a, p).unwrap();
        assert_eq!(mat_vec(&a, &mat_vec(&inv, &[5, 7], p), p), vec![5, 7]);
        assert!(inverse(&[vec![1, 2], vec![2, 4]], p).is_none());
    }
}
