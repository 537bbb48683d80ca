//! Brute-force check of `enumerate_classes` inside a coordinate box.

use std::collections::BTreeSet;

use forge_core::niklattice::{enumerate_classes, gram, named_class, DivisorClass, GENUS};

const BOX: i64 = 8;

fn gram_pair(u: &[i64; 9], v: &[i64; 9]) -> i64 {
    let g = gram(GENUS);
    (0..9).map(|i| (0..9).map(|j| u[i] * g[i][j] * v[j]).sum::<i64>()).sum()
}

/// Classes with `|coords| <= BOX`, `D^2 = n`, `D.H = c`, with the `z` block sorted.
///
/// The form is symmetric in `z`, so sorted representatives cover every orbit.
fn box_oracle(n: i64, c: i64) -> BTreeSet<[i64; 9]> {
    let h = named_class("H").unwrap().coords();
    let mut out = BTreeSet::new();
    let mut z = [0i64; 7];
    for x in -BOX..=BOX {
        for y in -BOX..=BOX {
            let need = c - 14 * x - 4 * y;
            rec(0, -BOX, need, &mut z, &mut |z| {
                let mut d = [0i64; 9];
                d[0] = x;
                d[1] = y;
                d[2..].copy_from_slice(z);
                if gram_pair(&d, &d) == n && gram_pair(&d, &h) == c {
                    out.insert(d);
                }
            });
        }
    }
    out
}

fn rec(k: usize, lo: i64, need: i64, z: &mut [i64; 7], emit: &mut impl FnMut(&[i64; 7])) {
    let left = (7 - k) as i64;
    if k == 7 {
        if need == 0 {
            emit(z);
        }
        return;
    }
    if need < lo * left || need > BOX * left {
        return;
    }
    for v in lo..=BOX {
        z[k] = v;
        rec(k + 1, v, need - v, z, emit);
    }
}

fn sorted(c: &DivisorClass) -> [i64; 9] {
    let mut d = c.coords();
    d[2..].sort_unstable();
    d
}

#[test]
fn searches_match_the_box() {
    for (n, c) in [(0, 3), (2, 5), (0, 4), (-2, 6), (-2, 1), (-2, 0), (0, 8)] {
        let (found, cert) = enumerate_classes(n, c).unwrap();
        let oracle = box_oracle(n, c);
        let inside: BTreeSet<[i64; 9]> = found
            .iter()
            .filter(|d| d.coords().iter().all(|v| v.abs() <= BOX))
            .map(sorted)
            .collect();
        assert_eq!(inside, oracle, "({n}, {c})");
        if cert.coord_abs_bound <= BOX {
            assert!(found.iter().all(|d| d.coords().iter().all(|v| v.abs() <= BOX)), "({n}, {c})");
        }
    }
}

#[test]
fn exclusions_are_empty_and_control_is_a() {
    for (n, c) in [(0, 3), (2, 5), (0, 4)] {
        assert!(box_oracle(n, c).is_empty(), "({n}, {c})");
    }
    let a = named_class("A").unwrap().coords();
    assert_eq!(box_oracle(-2, 6), BTreeSet::from([a]));
}
