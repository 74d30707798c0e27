//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! linear algebra under test; everything is enumeration.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use centralizer::linalg::{IntMatrix, Moduli};
use centralizer::rings::{BasedRing, CayleyTable, RingHom};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn reduce(v: &[BigInt], moduli: &[u64]) -> Vec<BigInt> {
    v.iter()
        .zip(moduli)
        .map(|(x, &m)| if m == 0 { x.clone() } else { x.mod_floor(&BigInt::from(m)) })
        .collect()
}

fn finite_moduli(moduli: &Moduli) -> Vec<u64> {
    moduli
        .iter()
        .map(|m| m.to_u64().filter(|&m| m > 0).expect("enumeration needs finite moduli"))
        .collect()
}

/// Every vector of `⊕ ℤ/mᵢ` in lexicographic order.
pub fn enumerate_group(moduli: &Moduli) -> Vec<Vec<BigInt>> {
    let m = finite_moduli(moduli);
    let mut out = vec![Vec::new()];
    for &mi in &m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..mi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(BigInt::from(x));
                    v
                })
            })
            .collect();
    }
    out
}

/// Plain structure-constant product, independent of `BasedRing::mul`.
pub fn naive_mul(ring: &BasedRing, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = ring.dim();
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n) {
            if y.is_zero() {
                continue;
            }
            let coeff = x * y;
            for (k, c) in ring.basis_product(i, j).iter().enumerate() {
                out[k] += &coeff * c;
            }
        }
    }
    reduce(&out, &finite_moduli(ring.moduli()))
}

pub fn naive_apply(f: &RingHom, x: &[BigInt]) -> Vec<BigInt> {
    let t = f.target();
    let mut out = vec![BigInt::zero(); t.dim()];
    for (i, xi) in x.iter().enumerate() {
        for (k, c) in f.image(i).iter().enumerate() {
            out[k] += xi * c;
        }
    }
    reduce(&out, &finite_moduli(t.moduli()))
}

/// `{s ∈ S : s·f(r) = f(r)·s for every basis element r}` by enumeration.
pub fn brute_centralizer(f: &RingHom) -> BTreeSet<Vec<BigInt>> {
    let s = f.target();
    let images: Vec<Vec<BigInt>> = (0..f.source().dim())
        .map(|i| naive_apply(f, &f.source().basis_vector(i)))
        .collect();
    enumerate_group(s.moduli())
        .into_iter()
        .filter(|x| images.iter().all(|y| naive_mul(s, x, y) == naive_mul(s, y, x)))
        .collect()
}

pub fn brute_center(ring: &BasedRing) -> BTreeSet<Vec<BigInt>> {
    let basis: Vec<Vec<BigInt>> = (0..ring.dim()).map(|i| ring.basis_vector(i)).collect();
    enumerate_group(ring.moduli())
        .into_iter()
        .filter(|x| basis.iter().all(|y| naive_mul(ring, x, y) == naive_mul(ring, y, x)))
        .collect()
}

/// The subgroup of `⊕ ℤ/mᵢ` generated by `rows`, by closure under addition.
pub fn span_closure(rows: &[Vec<BigInt>], moduli: &Moduli) -> BTreeSet<Vec<BigInt>> {
    let m = finite_moduli(moduli);
    let zero = vec![BigInt::zero(); m.len()];
    let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| reduce(r, &m)).collect();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y: Vec<BigInt> = reduce(&x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>(), &m);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// `{x ∈ ⊕ ℤ/sᵢ : x·A ≡ 0 mod target}` by enumeration.
pub fn brute_kernel(a: &IntMatrix, target: &Moduli, source: &Moduli) -> BTreeSet<Vec<BigInt>> {
    let t = finite_moduli(target);
    enumerate_group(source)
        .into_iter()
        .filter(|x| {
            let mut y = vec![BigInt::zero(); a.cols()];
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter_mut().enumerate() {
                    *yj += xi * &a[(i, j)];
                }
            }
            reduce(&y, &t).iter().all(Zero::is_zero)
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).abs().is_one()
}

/// Conjugacy classes of a finite group as sorted index lists.
pub fn conjugacy_classes(g: &CayleyTable) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let class: BTreeSet<usize> = (0..g.order()).map(|h| g.mul(g.mul(h, x), g.inverse(h))).collect();
        for &c in &class {
            seen[c] = true;
        }
        out.push(class.into_iter().collect());
    }
    out
}
