//! Hermite and Smith normal forms with unimodular transforms.
//!
//! Row HNF convention: pivots are positive, entries above a pivot lie in
//! `[0, pivot)`, zero rows come last. This makes the HNF a canonical name for
//! the row lattice, which is what subring bases rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    pub form: IntMatrix,
    /// `left_transform · input (· right_transform) = form`.
    pub left_transform: IntMatrix,
    /// Present only for SNF.
    pub right_transform: Option<IntMatrix>,
    /// Nonzero diagonal of the SNF, each dividing the next. Empty for HNF.
    pub invariant_factors: Vec<BigInt>,
}

/// Row Hermite normal form `U·M = H` with `U` unimodular.
pub fn hnf(m: &IntMatrix) -> NormalFormResult {
    let mut form = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hnf_in_place(&mut form, Some(&mut u));
    NormalFormResult {
        form,
        left_transform: u,
        right_transform: None,
        invariant_factors: Vec::new(),
    }
}

/// Reduces `m` to row HNF, mirroring every row operation on `u` when given.
/// Returns the pivot column of each nonzero row.
pub(crate) fn hnf_in_place(m: &mut IntMatrix, mut u: Option<&mut IntMatrix>) -> Vec<usize> {
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                let x = &m[(i, c)];
                if !x.is_zero() && best.is_none_or(|b| x.magnitude() < m[(b, c)].magnitude()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(r, b);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(r, b);
            }
            let mut clean = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = m[(i, c)].div_floor(&m[(r, c)]);
                m.row_sub(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.row_sub(i, r, &q);
                }
                if !m[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            m.negate_row(r);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q = m[(i, c)].div_floor(&m[(r, c)]);
            m.row_sub(i, r, &q);
            if let Some(u) = u.as_deref_mut() {
                u.row_sub(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Smith normal form `U·M·V = D`, diagonal with each factor dividing the next.
pub fn snf(m: &IntMatrix) -> NormalFormResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, k..rows, k..cols) else {
            break;
        };
        move_to_pivot(&mut a, &mut u, &mut v, k, pi, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = a[(i, k)].div_floor(&a[(k, k)]);
                a.row_sub(i, k, &q);
                u.row_sub(i, k, &q);
                dirty |= !a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = a[(k, j)].div_floor(&a[(k, k)]);
                a.col_sub(j, k, &q);
                v.col_sub(j, k, &q);
                dirty |= !a[(k, j)].is_zero();
            }
            if dirty {
                // A nonzero remainder is strictly smaller than the pivot.
                let (pi, pj) = min_cross_entry(&a, k);
                move_to_pivot(&mut a, &mut u, &mut v, k, pi, pj);
                continue;
            }
            let pivot = a[(k, k)].clone();
            let bad_row = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    a.row_sub(k, i, &minus_one);
                    u.row_sub(k, i, &minus_one);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    let invariant_factors = (0..k).map(|i| a[(i, i)].clone()).collect();
    NormalFormResult {
        form: a,
        left_transform: u,
        right_transform: Some(v),
        invariant_factors,
    }
}

fn min_entry(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[(i, j)];
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude() < a[(bi, bj)].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_cross_entry(a: &IntMatrix, k: usize) -> (usize, usize) {
    let mut best = (k, k);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &a[(i, j)];
        if !x.is_zero() && (a[*best].is_zero() || x.magnitude() < a[*best].magnitude()) {
            *best = (i, j);
        }
    };
    for i in k + 1..a.rows() {
        consider(i, k, &mut best);
    }
    for j in k + 1..a.cols() {
        consider(k, j, &mut best);
    }
    best
}

fn move_to_pivot(
    a: &mut IntMatrix,
    u: &mut IntMatrix,
    v: &mut IntMatrix,
    k: usize,
    pi: usize,
    pj: usize,
) {
    a.swap_rows(k, pi);
    u.swap_rows(k, pi);
    a.swap_cols(k, pj);
    v.swap_cols(k, pj);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    /// Brute-force oracle: the unique reduced upper-triangular basis of the row
    /// lattice of a nonsingular 2x2 matrix, found by enumeration.
    fn brute_hnf_2x2(input: &IntMatrix) -> IntMatrix {
        let rows: Vec<[i64; 2]> = input
            .row_iter()
            .map(|r| [i64::try_from(&r[0]).unwrap(), i64::try_from(&r[1]).unwrap()])
            .collect();
        // v lies in the lattice spanned by {p, q} iff the Cramer coefficients are integral.
        let in_span = |p: [i64; 2], q: [i64; 2], v: [i64; 2]| {
            let det = p[0] * q[1] - p[1] * q[0];
            let x = v[0] * q[1] - v[1] * q[0];
            let y = p[0] * v[1] - p[1] * v[0];
            det != 0 && x % det == 0 && y % det == 0
        };
        let mut found = Vec::new();
        for a in 1..=20 {
            for d in 1..=20 {
                for b in 0..d {
                    let (p, q) = ([a, b], [0, d]);
                    let same = rows.iter().all(|&r| in_span(p, q, r))
                        && in_span(rows[0], rows[1], p)
                        && in_span(rows[0], rows[1], q);
                    if same {
                        found.push(IntMatrix::from_i64(&[&[a, b], &[0, d]]));
                    }
                }
            }
        }
        assert_eq!(found.len(), 1, "reduced basis must be unique");
        found.pop().unwrap()
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let i3 = IntMatrix::identity(3);
        let r = hnf(&i3);
        assert_eq!(r.form, i3);
        assert_eq!(r.left_transform, i3);
    }

    #[test]
    fn hnf_permutation() {
        let r = hnf(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.form, IntMatrix::identity(2));
        assert_eq!(r.left_transform.mul(&m(&[&[0, 1], &[1, 0]])), r.form);
    }

    #[test]
    fn hnf_matches_brute_force_lattice_basis() {
        let input = m(&[&[2, 4], &[6, 8]]);
        let expected = brute_hnf_2x2(&input);
        assert_eq!(expected, m(&[&[2, 0], &[0, 4]]));
        let r = hnf(&input);
        assert_eq!(r.form, expected);
        assert_eq!(r.left_transform.mul(&input), r.form);
    }

    #[test]
    fn hnf_puts_zero_rows_last() {
        let input = m(&[&[0, 0, 0], &[2, 4, 6], &[1, 2, 3]]);
        let r = hnf(&input);
        assert_eq!(r.form, m(&[&[1, 2, 3], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(r.left_transform.mul(&input), r.form);
    }

    #[test]
    fn snf_zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let r = snf(&z);
        assert!(r.form.is_zero());
        assert!(r.invariant_factors.is_empty());
    }

    #[test]
    fn snf_coprime_diagonal() {
        // gcd of entries is 1, the 2x2 minor is 15.
        let input = m(&[&[3, 0], &[0, 5]]);
        let r = snf(&input);
        assert_eq!(r.form, m(&[&[1, 0], &[0, 15]]));
        assert_eq!(r.invariant_factors, vec![BigInt::from(1), BigInt::from(15)]);
        let v = r.right_transform.as_ref().unwrap();
        assert_eq!(r.left_transform.mul(&input).mul(v), r.form);
    }

    #[test]
    fn snf_gcd_of_minors() {
        // gcd of entries 2, |det| = 8.
        let input = m(&[&[2, 4], &[6, 8]]);
        let r = snf(&input);
        assert_eq!(r.form, m(&[&[2, 0], &[0, 4]]));
        let v = r.right_transform.as_ref().unwrap();
        assert_eq!(r.left_transform.mul(&input).mul(v), r.form);
    }

    #[test]
    fn snf_forces_divisibility() {
        let input = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        let r = snf(&input);
        assert_eq!(
            r.invariant_factors,
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(12)]
        );
    }
}
