use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BasedRing, CayleyTable};
use crate::linalg::{modulus_gcd, Moduli};

fn coefficient_prefix(modulus: u64) -> String {
    if modulus == 0 {
        "Z".into()
    } else {
        format!("Z/{modulus}")
    }
}

fn indicator(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::one();
    v
}

/// ℤ (modulus 0) or ℤ/m on a single basis element `1`.
pub fn make_ground_ring(modulus: u64) -> BasedRing {
    BasedRing::new(
        coefficient_prefix(modulus),
        vec!["1".into()],
        Moduli::uniform(modulus, 1),
        vec![vec![BigInt::one()]],
        vec![BigInt::one()],
    )
    .expect("ground ring is a ring")
}

/// The group ring with coefficients in ℤ/m (ℤ when `m = 0`), basis the group elements.
pub fn make_group_ring(group: &CayleyTable, modulus: u64) -> BasedRing {
    let n = group.order();
    let products = (0..n * n)
        .map(|p| indicator(n, group.mul(p / n, p % n)))
        .collect();
    BasedRing::new(
        format!("{}[{}]", coefficient_prefix(modulus), group.label()),
        group.names().to_vec(),
        Moduli::uniform(modulus, n),
        products,
        indicator(n, group.identity()),
    )
    .expect("group ring of a valid group is a ring")
}

fn matrix_unit_name(n: usize, a: usize, b: usize) -> String {
    if n < 10 {
        format!("E{}{}", a + 1, b + 1)
    } else {
        format!("E{}_{}", a + 1, b + 1)
    }
}

/// Ring spanned by the matrix units `E_ab` with `(a, b)` in `units`, in that order.
fn matrix_unit_ring(name: String, n: usize, modulus: u64, units: Vec<(usize, usize)>) -> BasedRing {
    let d = units.len();
    let index = |a: usize, b: usize| units.iter().position(|&u| u == (a, b));
    let mut products = Vec::with_capacity(d * d);
    for &(a, b) in &units {
        for &(c, e) in &units {
            let mut v = vec![BigInt::zero(); d];
            if b == c {
                let k = index(a, e).expect("matrix unit set is closed under products");
                v[k] = BigInt::one();
            }
            products.push(v);
        }
    }
    let mut unit = vec![BigInt::zero(); d];
    for a in 0..n {
        unit[index(a, a).expect("diagonal units are present")] = BigInt::one();
    }
    BasedRing::new(
        name,
        units.iter().map(|&(a, b)| matrix_unit_name(n, a, b)).collect(),
        Moduli::uniform(modulus, d),
        products,
        unit,
    )
    .expect("matrix unit ring is a ring")
}

/// `n×n` matrices over ℤ/m, basis `E_ab` in row-major order.
pub fn make_matrix_ring(n: usize, modulus: u64) -> BasedRing {
    assert!(n >= 1, "matrix size must be at least 1");
    let units = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    matrix_unit_ring(format!("Mat{n}({})", coefficient_prefix(modulus)), n, modulus, units)
}

/// Upper triangular `n×n` matrices over ℤ/m, basis `E_ab` (`a ≤ b`) in row-major order.
pub fn make_upper_triangular(n: usize, modulus: u64) -> BasedRing {
    assert!(n >= 1, "matrix size must be at least 1");
    let units = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    matrix_unit_ring(format!("UT{n}({})", coefficient_prefix(modulus)), n, modulus, units)
}

/// `R × S` with componentwise operations; the basis of `R` comes first.
pub fn make_product_ring(r: &BasedRing, s: &BasedRing) -> BasedRing {
    let (nr, ns) = (r.dim(), s.dim());
    let n = nr + ns;
    let mut products = vec![vec![BigInt::zero(); n]; n * n];
    for i in 0..nr {
        for j in 0..nr {
            products[i * n + j][..nr].clone_from_slice(r.basis_product(i, j));
        }
    }
    for i in 0..ns {
        for j in 0..ns {
            products[(nr + i) * n + nr + j][nr..].clone_from_slice(s.basis_product(i, j));
        }
    }
    let names = r
        .basis_names()
        .iter()
        .map(|x| format!("({x},0)"))
        .chain(s.basis_names().iter().map(|y| format!("(0,{y})")))
        .collect();
    BasedRing::new(
        format!("{} x {}", r.name(), s.name()),
        names,
        r.moduli().concat(s.moduli()),
        products,
        r.unit().iter().chain(s.unit()).cloned().collect(),
    )
    .expect("product of rings is a ring")
}

/// `A ⊗_ℤ C` on the basis `eᵢ⊗f_p` (index `i·dim C + p`), with the additive
/// order of `eᵢ⊗f_p` equal to `gcd(mᵢ, m_p)`.
pub fn ring_tensor_z(a: &BasedRing, c: &BasedRing) -> BasedRing {
    let (na, nc) = (a.dim(), c.dim());
    let n = na * nc;
    let moduli = Moduli::new(
        (0..n)
            .map(|x| modulus_gcd(&a.moduli().as_slice()[x / nc], &c.moduli().as_slice()[x % nc]))
            .collect(),
    );
    let tensor = |u: &[BigInt], v: &[BigInt]| -> Vec<BigInt> {
        u.iter()
            .flat_map(|x| v.iter().map(move |y| x * y))
            .collect()
    };
    let mut products = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            products.push(tensor(
                a.basis_product(x / nc, y / nc),
                c.basis_product(x % nc, y % nc),
            ));
        }
    }
    let names = (0..n)
        .map(|x| format!("{}⊗{}", a.basis_names()[x / nc], c.basis_names()[x % nc]))
        .collect();
    BasedRing::new(
        format!("{} ⊗ {}", a.name(), c.name()),
        names,
        moduli,
        products,
        tensor(a.unit(), c.unit()),
    )
    .expect("tensor product of rings is a ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::validate_ring;

    #[test]
    fn group_ring_of_c2() {
        let r = make_group_ring(&CayleyTable::cyclic(2), 0);
        assert_eq!(r.basis_names(), ["[0]", "[1]"]);
        assert_eq!(r.basis_product(1, 1), [BigInt::one(), BigInt::zero()]);
        assert_eq!(r.unit(), [BigInt::one(), BigInt::zero()]);
    }

    #[test]
    fn trivial_group_ring_is_integers() {
        let r = make_group_ring(&CayleyTable::trivial(), 0);
        assert!(r.structurally_eq(&make_ground_ring(0)));
    }

    #[test]
    fn dihedral_group_ring_shape() {
        let d = CayleyTable::dihedral(6);
        let r = make_group_ring(&d, 0);
        assert_eq!(r.dim(), 6);
        assert_eq!(r.unit(), r.basis_vector(d.identity()).as_slice());
        assert!(!r.is_commutative());
    }

    #[test]
    fn matrix_rings() {
        assert!(make_matrix_ring(1, 0).structurally_eq(&make_ground_ring(0)));
        let m = make_matrix_ring(2, 2);
        assert_eq!(m.order(), Some(BigInt::from(16)));
        let m0 = make_matrix_ring(2, 0);
        // E12 E21 = E11 and E21 E12 = E22.
        assert_eq!(m0.basis_product(1, 2), m0.basis_vector(0).as_slice());
        assert_eq!(m0.basis_product(2, 1), m0.basis_vector(3).as_slice());
    }

    #[test]
    fn upper_triangular_rings() {
        assert!(make_upper_triangular(1, 0).structurally_eq(&make_ground_ring(0)));
        let ut = make_upper_triangular(2, 2);
        assert_eq!(ut.basis_names(), ["E11", "E12", "E22"]);
        assert_eq!(ut.order(), Some(BigInt::from(8)));
        assert_eq!(ut.unit(), [BigInt::one(), BigInt::zero(), BigInt::one()]);
        assert!(validate_ring(&make_upper_triangular(3, 0)).is_ok());
    }

    #[test]
    fn product_rings() {
        let z = make_ground_ring(0);
        let r = make_product_ring(&make_ground_ring(5), &z);
        assert_eq!(r.unit(), [BigInt::one(), BigInt::one()]);
        let f2 = make_ground_ring(2);
        let p = make_product_ring(&f2, &f2);
        assert_eq!(p.order(), Some(BigInt::from(4)));
        let e1 = p.basis_vector(0);
        let e2 = p.basis_vector(1);
        assert_eq!(p.mul(&e1, &e1), e1);
        assert_eq!(p.mul(&e2, &e2), e2);
        assert!(p.mul(&e1, &e2).iter().all(Zero::is_zero));
    }

    #[test]
    fn tensor_with_integers_is_identity() {
        let a = make_group_ring(&CayleyTable::dihedral(6), 3);
        let t = ring_tensor_z(&a, &make_ground_ring(0));
        assert!(t.structurally_eq(&a));
    }

    #[test]
    fn coprime_tensor_collapses() {
        // Every bilinear pairing Z/2 x Z/3 -> A has image killed by both 2 and 3.
        let t = ring_tensor_z(&make_ground_ring(2), &make_ground_ring(3));
        assert_eq!(t.moduli().as_slice(), [BigInt::one()]);
        assert_eq!(t.order(), Some(BigInt::one()));
        assert!(validate_ring(&t).is_ok());
    }

    #[test]
    fn tensor_of_group_rings_is_group_ring_of_product() {
        let c2 = CayleyTable::cyclic(2);
        let t = ring_tensor_z(&make_group_ring(&c2, 0), &make_group_ring(&c2, 0));
        let p = make_group_ring(&CayleyTable::direct_product(&c2, &c2), 0);
        assert!(t.structurally_eq(&p));
    }
}
