use serde::Serialize;

use super::DivisorClass;
use crate::error::{ForgeError, Result};
use crate::exactmath::rational::to_text;
use crate::exactmath::{frac, rat};

/// Candidate count for one value of the `L`-coordinate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SliceCount {
    pub x: i64,
    pub sum_w: i64,
    pub sum_w_sq: i64,
    pub scanned: u64,
    pub matches: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SearchCertificate {
    pub selfint: i64,
    pub hdeg: i64,
    /// `P^2` for the component orthogonal to `H`; must be `<= 0`.
    pub orthogonal_sq: String,
    pub hodge_obstructed: bool,
    pub derivation: Vec<String>,
    pub x_range: Option<(i64, i64)>,
    /// Bound on `|y|` and every `|z_i|` over all slices.
    pub coord_abs_bound: i64,
    pub slices: Vec<SliceCount>,
    pub total_scanned: u64,
    pub matches: usize,
}

fn derivation() -> Vec<String> {
    [
        "D = xL + ym + z1 n1 + ... + z7 n7",
        "D.H = 14x + 4y + sum z = c",
        "D^2 = 14x^2 - 2Q with Q = 2y^2 + y sum z + sum z^2",
        "4Q = y^2 + sum_i (2 z_i + y)^2",
        "w = (y, 2z_1 + y, ..., 2z_7 + y), all of one parity",
        "sum w = 2(c - 14x), sum w^2 = 2(14x^2 - n)",
        "(sum w)^2 <= 8 sum w^2 gives 140x^2 - 28cx + c^2 + 4n <= 0",
        "real x exists iff c^2 >= 10n (Hodge index)",
        "|w_i| <= sqrt(sum w^2), so |y|, |z_i| <= sqrt(sum w^2)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All classes with `D^2 = selfint` and `D.H = hdeg`, with a certificate of exhaustiveness.
pub fn enumerate_classes(selfint: i64, hdeg: i64) -> Result<(Vec<DivisorClass>, SearchCertificate)> {
    if hdeg < 0 {
        return Err(ForgeError::Dimension(format!("H-degree must be non-negative, got {hdeg}")));
    }
    let (n, c) = (selfint as i128, hdeg as i128);
    let orth = rat(selfint) - frac(hdeg * hdeg, 10);
    let mut cert = SearchCertificate {
        selfint,
        hdeg,
        orthogonal_sq: to_text(&orth),
        hodge_obstructed: c * c < 10 * n,
        derivation: derivation(),
        x_range: None,
        coord_abs_bound: 0,
        slices: vec![],
        total_scanned: 0,
        matches: 0,
    };
    if cert.hodge_obstructed {
        return Ok((vec![], cert));
    }
    let disc = 224 * c * c - 2240 * n;
    let root = isqrt(disc);
    let admissible = |x: i128| 140 * x * x - 28 * c * x + c * c + 4 * n <= 0;
    let lo = (28 * c - root - 1).div_euclid(280) - 1;
    let hi = (28 * c + root + 1).div_euclid(280) + 1;
    let xs: Vec<i128> = (lo..=hi).filter(|&x| admissible(x)).collect();
    if let (Some(a), Some(b)) = (xs.first(), xs.last()) {
        cert.x_range = Some((*a as i64, *b as i64));
    }
    let mut found = Vec::new();
    for x in xs {
        let sum_w = 2 * (c - 14 * x);
        let sum_sq = 2 * (14 * x * x - n);
        let bound = isqrt(sum_sq);
        cert.coord_abs_bound = cert.coord_abs_bound.max(bound as i64);
        let mut w = [0i128; 8];
        let mut scanned = 0u64;
        let before = found.len();
        walk(0, sum_w, sum_sq, &mut w, &mut scanned, &mut |w| {
            let y = w[0];
            let z: [i64; 7] = std::array::from_fn(|i| ((w[i + 1] - y) / 2) as i64);
            found.push(DivisorClass::new(x as i64, y as i64, z));
        });
        cert.total_scanned += scanned;
        cert.slices.push(SliceCount {
            x: x as i64,
            sum_w: sum_w as i64,
            sum_w_sq: sum_sq as i64,
            scanned,
            matches: found.len() - before,
        });
    }
    found.sort();
    debug_assert!(found
        .iter()
        .all(|d| super::pair(d, d) == selfint && super::pair(d, &super::named_class("H").unwrap()) == hdeg));
    cert.matches = found.len();
    Ok((found, cert))
}

/// Integer vectors extending `w[..k]` with prescribed remaining sum and sum of squares,
/// all entries congruent to `w[0]` mod 2.
fn walk(k: usize, sum: i128, sq: i128, w: &mut [i128; 8], scanned: &mut u64, emit: &mut impl FnMut(&[i128; 8])) {
    let left = (8 - k) as i128;
    if sq < 0 || sum * sum > left * sq {
        return;
    }
    if k == 7 {
        *scanned += 1;
        let last = sum;
        if last * last == sq && (last - w[0]).rem_euclid(2) == 0 {
            w[7] = last;
            emit(w);
        }
        return;
    }
    let b = isqrt(sq);
    for v in -b..=b {
        if k > 0 && (v - w[0]).rem_euclid(2) != 0 {
            continue;
        }
        w[k] = v;
        walk(k + 1, sum - v, sq - v * v, w, scanned, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::niklattice::named_class;

    #[test]
    fn exclusions() {
        for (n, c) in [(0, 3), (2, 5), (0, 4)] {
            let (m, cert) = enumerate_classes(n, c).unwrap();
            assert!(m.is_empty(), "({n},{c})");
            assert!(!cert.hodge_obstructed);
        }
    }

    #[test]
    fn positive_control() {
        let (m, cert) = enumerate_classes(-2, 6).unwrap();
        assert_eq!(m, vec![named_class("A").unwrap()]);
        assert_eq!(cert.x_range, Some((1, 1)));
    }

    #[test]
    fn hodge_obstruction() {
        let (m, cert) = enumerate_classes(4, 6).unwrap();
        assert!(m.is_empty());
        assert!(cert.hodge_obstructed);
        assert!(enumerate_classes(0, -1).is_err());
    }

    #[test]
    fn nodal_classes_found() {
        // the N_i have N^2 = -2 and N.H = 1
        let (m, _) = enumerate_classes(-2, 1).unwrap();
        for n in crate::niklattice::nodal_classes() {
            assert!(m.contains(&n));
        }
    }
}
