//! Dense linear algebra over a word-size prime field.
//!
//! Only ranks are computed here. A rank mod p is a lower bound for the rank
//! over the rationals of any p-integral matrix, which is how the graded
//! dimension certificates use it.

/// Primes below 2^31, so products fit in a `u64`.
pub const PRIMES: [u64; 4] = [MERSENNE_31, 2_147_483_629, 2_147_483_587, 2_147_483_579];

const MERSENNE_31: u64 = (1 << 31) - 1;

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Row-major matrix with entries in `[0, p)`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        ModMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(self) -> usize {
        if self.p == MERSENNE_31 {
            self.rank_with(|x| {
                let r = (x & MERSENNE_31) + (x >> 31);
                let r = (r & MERSENNE_31) + (r >> 31);
                if r >= MERSENNE_31 {
                    r - MERSENNE_31
                } else {
                    r
                }
            })
        } else {
            let p = self.p;
            self.rank_with(move |x| x % p)
        }
    }

    fn rank_with(mut self, reduce: impl Fn(u64) -> u64) -> usize {
        let p = self.p;
        let cols = self.cols;
        let mut rank = 0;
        for col in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    self.data.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = inv_mod(self.data[rank * cols + col], p);
            for c in col..cols {
                let v = self.data[rank * cols + c];
                self.data[rank * cols + c] = reduce(v * inv);
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols + col..(rank + 1) * cols];
            for row in tail.chunks_mut(cols) {
                let f = row[col];
                if f == 0 {
                    continue;
                }
                let nf = p - f;
                for (x, &pv) in row[col..].iter_mut().zip(pivot_row) {
                    *x = reduce(*x + nf * pv);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse() {
        let p = PRIMES[0];
        for a in [1u64, 2, 12345, p - 1] {
            assert_eq!(a * inv_mod(a, p) % p, 1);
        }
    }

    #[test]
    fn small_rank() {
        let p = 7;
        let mut m = ModMatrix::zeros(3, 3, p);
        // [[1,2,3],[2,4,6],[0,1,1]] has rank 2
        for (r, row) in [[1, 2, 3], [2, 4, 6], [0, 1, 1]].iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn mersenne_path_matches_generic() {
        // same integer matrix, rank checked with the fast and the generic reduction
        let vals: Vec<u64> = (0..48u64).map(|i| (i * i * 7919 + 13) % 1000).collect();
        let mut a = ModMatrix::zeros(6, 8, PRIMES[0]);
        let mut b = ModMatrix::zeros(6, 8, PRIMES[1]);
        for (k, v) in vals.iter().enumerate() {
            a.set(k / 8, k % 8, *v);
            b.set(k / 8, k % 8, *v);
        }
        assert_eq!(a.rank(), b.rank());
    }

    #[test]
    fn rank_drops_mod_p() {
        // det = 7, full rank over Q but singular mod 7
        let mut m = ModMatrix::zeros(2, 2, 7);
        m.set(0, 0, 3);
        m.set(0, 1, 1);
        m.set(1, 0, 1);
        m.set(1, 1, 5);
        // 3*5 - 1*1 = 14 = 0 mod 7
        assert_eq!(m.rank(), 1);
    }
}
