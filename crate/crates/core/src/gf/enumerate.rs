use rayon::prelude::*;

use super::rowops::Row;
use super::{Endo, Field, Subspace};
use crate::{Error, Result};

pub const SUBSPACE_GUARD: u128 = 4096;
/// Limit on the number of subspaces produced.
pub const SUBSPACE_COUNT_GUARD: u128 = 200_000;
pub const ENDO_GUARD: u128 = 1 << 20;

fn checked_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Every subspace of GF(p)^n (or every proper one, zero included), sorted by
/// dimension and then by canonical basis.
pub fn enumerate_subspaces(field: Field, n: usize, proper_only: bool) -> Result<Vec<Subspace>> {
    let size = checked_pow(field.p() as u128, n);
    if size > SUBSPACE_GUARD {
        return Err(Error::GuardExceeded {
            what: "ambient vectors",
            size,
            limit: SUBSPACE_GUARD,
        });
    }
    let max_dim = if proper_only { n.saturating_sub(1) } else { n };
    let count: u128 = (0..=max_dim)
        .map(|k| gaussian_binomial(field.p() as u128, n, k))
        .fold(0u128, u128::saturating_add);
    if count > SUBSPACE_COUNT_GUARD {
        return Err(Error::GuardExceeded {
            what: "subspaces",
            size: count,
            limit: SUBSPACE_COUNT_GUARD,
        });
    }
    let mut out = Vec::new();
    for k in 0..=max_dim {
        if proper_only && k == n {
            break;
        }
        for pivots in combinations(n, k) {
            // free slots: row i, column j > pivot_i that is not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..n)
                        .filter(move |j| !pivots.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let p = field.order();
            for mut idx in 0..p.pow(free.len() as u32) {
                let mut rows: Vec<Row> = pivots
                    .iter()
                    .map(|&pc| {
                        let mut r = vec![0u8; n];
                        r[pc] = 1;
                        r
                    })
                    .collect();
                for &(i, j) in free.iter().rev() {
                    rows[i][j] = (idx % p) as u8;
                    idx /= p;
                }
                out.push(Subspace::span_unchecked(field, n, rows));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All n×n matrices (or only the singular ones) in lexicographic order.
pub fn enumerate_endos(field: Field, n: usize, singular_only: bool) -> Result<Vec<Endo>> {
    let size = checked_pow(field.p() as u128, n * n);
    if size > ENDO_GUARD {
        return Err(Error::GuardExceeded {
            what: "n×n matrices",
            size,
            limit: ENDO_GUARD,
        });
    }
    let p = field.order();
    let out = (0..size as usize)
        .into_par_iter()
        .map(|mut idx| {
            let mut flat = vec![0u8; n * n];
            for slot in flat.iter_mut().rev() {
                *slot = (idx % p) as u8;
                idx /= p;
            }
            let rows = if n == 0 {
                Vec::new()
            } else {
                flat.chunks(n).map(|c| c.to_vec()).collect()
            };
            Endo::from_rows_unchecked(field, rows)
        })
        .filter(|e| !singular_only || e.is_singular())
        .collect();
    Ok(out)
}

/// The invertible matrices, in lexicographic order.
pub fn enumerate_automorphisms(field: Field, n: usize) -> Result<Vec<Endo>> {
    Ok(enumerate_endos(field, n, false)?
        .into_iter()
        .filter(Endo::is_invertible)
        .collect())
}

/// `|GL(n, p)| = ∏_{i<n} (pⁿ − pⁱ)`.
pub fn general_linear_order(p: u128, n: usize) -> u128 {
    let pn = checked_pow(p, n);
    (0..n).map(|i| pn - checked_pow(p, i)).product()
}

/// Number of singular n×n matrices: `p^(n²) − |GL(n,p)|`.
pub fn singular_count(p: u128, n: usize) -> u128 {
    checked_pow(p, n * n) - general_linear_order(p, n)
}

/// Gaussian binomial `[n choose k]_p`.
/// Saturates at `u128::MAX`.
pub fn gaussian_binomial(p: u128, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // every partial product is itself a Gaussian binomial, so each division is exact
    let mut acc: u128 = 1;
    for j in 0..k {
        let num = checked_pow(p, n - j) - 1;
        let den = checked_pow(p, j + 1) - 1;
        match acc.checked_mul(num) {
            Some(x) => acc = x / den,
            None => return u128::MAX,
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u8) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(gf(2), 2, true).unwrap().len(), 4);
        assert_eq!(enumerate_subspaces(gf(2), 3, false).unwrap().len(), 16);
        assert_eq!(enumerate_subspaces(gf(3), 2, false).unwrap().len(), 6);
    }

    #[test]
    fn subspace_guard() {
        assert!(matches!(
            enumerate_subspaces(gf(2), 13, true),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            enumerate_subspaces(gf(2), 12, true),
            Err(Error::GuardExceeded { what: "subspaces", .. })
        ));
        assert!(enumerate_subspaces(gf(7), 4, false).is_ok());
    }

    #[test]
    fn endo_counts() {
        assert_eq!(enumerate_endos(gf(2), 2, true).unwrap().len(), 10);
        assert_eq!(enumerate_endos(gf(3), 2, true).unwrap().len(), 33);
        assert_eq!(enumerate_endos(gf(2), 3, true).unwrap().len(), 344);
        assert_eq!(enumerate_automorphisms(gf(2), 2).unwrap().len(), 6);
    }

    #[test]
    fn endo_guard() {
        assert!(matches!(
            enumerate_endos(gf(2), 5, false),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            enumerate_endos(gf(2), 9, true),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(singular_count(2, 2), 10);
        assert_eq!(singular_count(3, 2), 33);
        assert_eq!(singular_count(2, 3), 344);
        assert_eq!(gaussian_binomial(2, 3, 1), 7);
        assert_eq!(gaussian_binomial(3, 2, 1), 4);
    }

    #[test]
    fn output_is_sorted_and_unique() {
        let s = enumerate_subspaces(gf(3), 3, false).unwrap();
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        let e = enumerate_endos(gf(2), 2, false).unwrap();
        assert!(e.windows(2).all(|w| w[0] < w[1]));
    }
}
