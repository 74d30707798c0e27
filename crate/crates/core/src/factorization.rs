//! Centralizers `Z(f) = {s ∈ S : s·f(r) = f(r)·s}` of ring homomorphisms, centers,
//! and the universal property of `(Z(f), μ_f)` among factorizations of `f`.
//!
//! A factorization of `f: A → B` is a ring `C` with a homomorphism
//! `g: A ⊗ C → B` such that `g(a ⊗ 1) = f(a)`. The centralizer with
//! `μ_f(a ⊗ z) = f(a)·z` is the final such object; [`universal_factor`]
//! computes the comparison map `C → Z(f)` and checks that it is the only one.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{kernel_mod, present_subgroup, IntMatrix, LatticeSolver, Moduli};
use crate::rings::{make_hom, ring_tensor_z, BasedRing, RingError, RingHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a subring: {0}")]
    NotASubring(String),
    #[error("triangle fails: g(e{basis} ⊗ 1) differs from f(e{basis})")]
    TriangleFails { basis: usize },
    #[error("g(1 ⊗ c{basis}) does not lie in the centralizer")]
    NotInCentralizer { basis: usize },
    #[error("μ_f ∘ (id ⊗ τ) differs from g on basis pair ({left}, {right})")]
    Mismatch { left: usize, right: usize },
    #[error("the comparison map is not forced on basis element {basis}")]
    NotUnique { basis: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A subring of a based ring, stored as a subgroup of the ambient additive group.
#[derive(Clone, Debug)]
pub struct Subring {
    ambient: Arc<BasedRing>,
    basis: IntMatrix,
    generators: IntMatrix,
    as_ring: Arc<BasedRing>,
    embedding: RingHom,
    solver: LatticeSolver,
}

impl Subring {
    /// The subring additively generated by `rows`. Fails unless the span is
    /// closed under multiplication and contains the unit.
    pub fn from_generators(
        ambient: Arc<BasedRing>,
        rows: &IntMatrix,
        name: impl Into<String>,
    ) -> Result<Self, FactorizationError> {
        let presentation = present_subgroup(rows, ambient.moduli())
            .map_err(|e| FactorizationError::Shape(e.to_string()))?;
        let generators = presentation.generators;
        let orders = presentation.orders;
        let solver = LatticeSolver::with_moduli(&generators, ambient.moduli())
            .expect("generators live in the ambient coordinates");
        let coords = |x: &[BigInt]| {
            solver.solve(x).map(|mut c| {
                orders.reduce(&mut c);
                c
            })
        };
        let unit = coords(ambient.unit())
            .ok_or_else(|| FactorizationError::NotASubring("the unit is not in the span".into()))?;
        let k = generators.rows();
        let mut products = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let p = ambient.mul(generators.row(i), generators.row(j));
                products.push(coords(&p).ok_or_else(|| {
                    FactorizationError::NotASubring(format!(
                        "product of generators {i} and {j} leaves the span"
                    ))
                })?);
            }
        }
        let names = generators
            .row_iter()
            .map(|g| ambient.format_element(g))
            .collect();
        let as_ring = Arc::new(BasedRing::new(name, names, orders, products, unit)?);
        let embedding = make_hom(as_ring.clone(), ambient.clone(), generators.clone())?;
        Ok(Self {
            ambient,
            basis: presentation.canonical,
            generators,
            as_ring,
            embedding,
            solver,
        })
    }

    pub fn ambient(&self) -> &Arc<BasedRing> {
        &self.ambient
    }

    /// Canonical row HNF of the subgroup; equal subrings have equal bases.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Direct-sum generators; row `i` is the image of basis element `i` of [`Self::as_ring`].
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn moduli(&self) -> &Moduli {
        self.as_ring.moduli()
    }

    pub fn rank(&self) -> usize {
        self.generators.rows()
    }

    pub fn as_ring(&self) -> &Arc<BasedRing> {
        &self.as_ring
    }

    pub fn embedding(&self) -> &RingHom {
        &self.embedding
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solver.contains(x)
    }

    /// Coordinates of an ambient element with respect to the generators.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver.solve(x).map(|mut c| {
            self.moduli().reduce(&mut c);
            c
        })
    }

    /// Ambient element with the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.embedding.apply(coords)
    }

    /// Same ambient ring and same subgroup.
    pub fn same_as(&self, other: &Subring) -> bool {
        self.ambient.structurally_eq(&other.ambient) && self.basis == other.basis
    }

    pub fn is_whole_ring(&self) -> bool {
        (0..self.ambient.dim()).all(|k| self.contains(&self.ambient.basis_vector(k)))
    }

    /// Whether the subring is commutative (checked on its generators).
    pub fn is_commutative(&self) -> bool {
        self.as_ring.is_commutative()
    }

    /// Restricts `h` to a map from this subring into `target` (a subring of
    /// `h`'s target), or `None` when some image leaves `target`.
    pub fn restrict(&self, h: &RingHom, target: &Subring) -> Option<RingHom> {
        assert!(h.source().structurally_eq(&self.ambient), "hom source is not the ambient ring");
        assert!(h.target().structurally_eq(&target.ambient), "hom target is not the target ambient ring");
        let rows = self
            .generators
            .row_iter()
            .map(|g| target.coords(&h.apply(g)))
            .collect::<Option<Vec<_>>>()?;
        make_hom(
            self.as_ring.clone(),
            target.as_ring.clone(),
            IntMatrix::from_rows(target.rank(), rows),
        )
        .ok()
    }
}

/// The matrix of `x ↦ x·y − y·x` for each `y` in `images`, side by side.
fn commutator_system(ring: &BasedRing, images: impl Iterator<Item = Vec<BigInt>>) -> (IntMatrix, usize) {
    let n = ring.dim();
    let images: Vec<Vec<BigInt>> = images.collect();
    let mut rows = vec![Vec::with_capacity(n * images.len()); n];
    for y in &images {
        for (k, row) in rows.iter_mut().enumerate() {
            let e = ring.basis_vector(k);
            row.extend(ring.sub(&ring.mul(&e, y), &ring.mul(y, &e)));
        }
    }
    (IntMatrix::from_rows(n * images.len(), rows), images.len())
}

/// `Z(f)`: the elements of the target commuting with the whole image of `f`.
pub fn centralizer(f: &RingHom) -> Result<Subring, FactorizationError> {
    let s = f.target();
    let (system, blocks) = commutator_system(s, (0..f.source().dim()).map(|i| f.image(i).to_vec()));
    let kernel = kernel_mod(&system, &s.moduli().repeat(blocks), s.moduli())
        .expect("commutator system matches the ring");
    let name = format!("Z({} -> {})", f.source().name(), s.name());
    Subring::from_generators(s.clone(), &kernel, name)
}

/// `Z(R) = Z(id_R)`.
pub fn center(ring: &Arc<BasedRing>) -> Result<Subring, FactorizationError> {
    let z = centralizer(&RingHom::identity(ring.clone()))?;
    let name = format!("Z({})", ring.name());
    let as_ring = Arc::new((*z.as_ring).clone().renamed(name));
    let embedding = make_hom(as_ring.clone(), z.ambient.clone(), z.generators.clone())?;
    Ok(Subring {
        as_ring,
        embedding,
        ..z
    })
}

/// `μ_f: R ⊗ Z(f) → S`, `eᵢ ⊗ z ↦ f(eᵢ)·z`, for a precomputed centralizer.
pub fn mu_with(f: &RingHom, z: &Subring) -> Result<RingHom, FactorizationError> {
    let (r, s) = (f.source(), f.target());
    let source = Arc::new(ring_tensor_z(r, z.as_ring()));
    let rows = (0..r.dim())
        .flat_map(|i| (0..z.rank()).map(move |j| (i, j)))
        .map(|(i, j)| s.mul(f.image(i), z.generators().row(j)));
    Ok(make_hom(source, s.clone(), IntMatrix::from_rows(s.dim(), rows))?)
}

/// `μ_f: R ⊗ Z(f) → S`.
pub fn mu_f(f: &RingHom) -> Result<RingHom, FactorizationError> {
    mu_with(f, &centralizer(f)?)
}

/// Coordinates of `x ⊗ y` in `A ⊗ C`.
pub fn pure_tensor(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

fn check_shapes(c: &BasedRing, g: &RingHom, f: &RingHom) -> Result<(), FactorizationError> {
    let expected = ring_tensor_z(f.source(), c);
    if !g.source().structurally_eq(&expected) {
        return Err(FactorizationError::Shape(format!(
            "source of g is not {}",
            expected.name()
        )));
    }
    if !g.target().structurally_eq(f.target()) {
        return Err(FactorizationError::Shape("g and f have different targets".into()));
    }
    Ok(())
}

/// `Ok(None)` when `g(eᵢ ⊗ 1_C) = f(eᵢ)` for every basis element, otherwise
/// the first failing index.
pub fn is_factorization_object(
    c: &BasedRing,
    g: &RingHom,
    f: &RingHom,
) -> Result<Option<usize>, FactorizationError> {
    check_shapes(c, g, f)?;
    let r = f.source();
    Ok((0..r.dim()).find(|&i| g.apply(&pure_tensor(&r.basis_vector(i), c.unit())) != f.image(i)))
}

/// The comparison map `τ: C → Z(f)`, `τ(c) = g(1 ⊗ c)`, from a factorization
/// `(C, g)` of `f`. Membership, the factorization identity
/// `μ_f ∘ (id ⊗ τ) = g` and uniqueness are all checked before returning.
pub fn universal_factor(
    c: &Arc<BasedRing>,
    g: &RingHom,
    f: &RingHom,
) -> Result<RingHom, FactorizationError> {
    if let Some(basis) = is_factorization_object(c, g, f)? {
        return Err(FactorizationError::TriangleFails { basis });
    }
    let z = centralizer(f)?;
    let (r, s) = (f.source(), f.target());
    let forced: Vec<Vec<BigInt>> = (0..c.dim())
        .map(|p| g.apply(&pure_tensor(r.unit(), &c.basis_vector(p))))
        .collect();
    let rows = forced
        .iter()
        .enumerate()
        .map(|(p, v)| z.coords(v).ok_or(FactorizationError::NotInCentralizer { basis: p }))
        .collect::<Result<Vec<_>, _>>()?;
    let tau = make_hom(c.clone(), z.as_ring().clone(), IntMatrix::from_rows(z.rank(), rows))?;

    for i in 0..r.dim() {
        for p in 0..c.dim() {
            let via_mu = s.mul(f.image(i), &z.element(tau.image(p)));
            if via_mu != g.apply(&pure_tensor(&r.basis_vector(i), &c.basis_vector(p))) {
                return Err(FactorizationError::Mismatch { left: i, right: p });
            }
        }
    }

    // Any σ with μ_f ∘ (id ⊗ σ) = g satisfies f(1)·σ(c) = σ(c) = g(1 ⊗ c) at r = 1;
    // the embedding is injective, so σ(c) is the unique preimage of g(1 ⊗ c).
    let embedding_kernel = kernel_mod(z.generators(), s.moduli(), z.moduli())
        .expect("embedding matrix matches its rings");
    for (p, v) in forced.iter().enumerate() {
        let sigma = z.coords(v);
        if embedding_kernel.rows() > 0 || sigma.as_deref() != Some(tau.image(p)) {
            return Err(FactorizationError::NotUnique { basis: p });
        }
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{
        make_ground_ring, make_group_ring, make_group_ring_hom, make_matrix_ring, make_product_ring,
        make_upper_triangular, unit_hom, CayleyTable,
    };

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn diag_inclusion() -> RingHom {
        let f2 = make_ground_ring(2);
        let r = Arc::new(make_product_ring(&f2, &f2));
        let ut = Arc::new(make_upper_triangular(2, 2));
        make_hom(r, ut, IntMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1]])).unwrap()
    }

    #[test]
    fn scalar_map_into_matrices_has_everything_as_centralizer() {
        let m = Arc::new(make_matrix_ring(2, 2));
        let phi = unit_hom(m, 2).unwrap();
        let z = centralizer(&phi).unwrap();
        assert!(z.is_whole_ring());
        assert_eq!(z.as_ring().order(), Some(int(16)));
        assert!(!z.is_commutative());
    }

    #[test]
    fn center_of_matrix_ring_is_scalars() {
        let m = Arc::new(make_matrix_ring(2, 2));
        let z = center(&m).unwrap();
        assert_eq!(z.basis(), &IntMatrix::from_i64(&[&[1, 0, 0, 1]]));
        assert_eq!(z.as_ring().order(), Some(int(2)));
    }

    #[test]
    fn diagonal_inclusion_centralizer_is_diagonal() {
        let z = centralizer(&diag_inclusion()).unwrap();
        assert_eq!(z.basis(), &IntMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(z.as_ring().order(), Some(int(4)));
    }

    #[test]
    fn center_of_dihedral_group_ring_has_rank_three() {
        let d6 = CayleyTable::dihedral(6);
        let zd6 = Arc::new(make_group_ring(&d6, 0));
        let z = center(&zd6).unwrap();
        // Class sums e, r + r2, s + sr + sr2.
        assert_eq!(
            z.basis(),
            &IntMatrix::from_i64(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]])
        );
        assert_eq!(z.moduli(), &Moduli::free(3));
        assert!(z.is_commutative());
        assert_eq!(z.as_ring().name(), "Z(Z[D6])");
    }

    #[test]
    fn commutative_rings_are_their_own_center() {
        let r = Arc::new(make_group_ring(&CayleyTable::cyclic(4), 3));
        assert!(center(&r).unwrap().is_whole_ring());
    }

    #[test]
    fn mu_of_identity_is_multiplication() {
        let m = Arc::new(make_matrix_ring(2, 0));
        let mu = mu_f(&RingHom::identity(m.clone())).unwrap();
        let z = center(&m).unwrap();
        // e_i ⊗ (scalar 1) ↦ e_i
        for i in 0..4 {
            assert_eq!(mu.apply(&pure_tensor(&m.basis_vector(i), z.as_ring().unit())), m.basis_vector(i));
        }
    }

    #[test]
    fn mu_of_scalar_map() {
        let m = Arc::new(make_matrix_ring(2, 2));
        let phi = unit_hom(m.clone(), 2).unwrap();
        let z = centralizer(&phi).unwrap();
        let mu = mu_with(&phi, &z).unwrap();
        let e12 = z.coords(&m.basis_vector(1)).unwrap();
        assert_eq!(mu.apply(&pure_tensor(&[int(1)], &e12)), m.basis_vector(1));
        let one = pure_tensor(&[int(1)], z.as_ring().unit());
        assert_eq!(mu.apply(&one), m.unit());
    }

    #[test]
    fn centralizer_is_a_factorization() {
        let f = diag_inclusion();
        let z = centralizer(&f).unwrap();
        let mu = mu_with(&f, &z).unwrap();
        assert_eq!(is_factorization_object(z.as_ring(), &mu, &f).unwrap(), None);
        let tau = universal_factor(z.as_ring(), &mu, &f).unwrap();
        assert!(tau.same_as(&RingHom::identity(z.as_ring().clone())));
    }

    #[test]
    fn initial_factorization_gives_unit_map() {
        let f = diag_inclusion();
        let z_ring = Arc::new(make_ground_ring(0));
        // g(a ⊗ n) = n·f(a)
        let g = make_hom(
            Arc::new(ring_tensor_z(f.source(), &z_ring)),
            f.target().clone(),
            f.matrix().clone(),
        )
        .unwrap();
        assert_eq!(is_factorization_object(&z_ring, &g, &f).unwrap(), None);
        let tau = universal_factor(&z_ring, &g, &f).unwrap();
        let z = centralizer(&f).unwrap();
        assert_eq!(tau.image(0), z.as_ring().unit());
    }

    #[test]
    fn scalars_into_matrices_factor_through_scalar_inclusion() {
        let m = Arc::new(make_matrix_ring(2, 2));
        let phi = unit_hom(m.clone(), 2).unwrap();
        let c = Arc::new(make_ground_ring(2));
        let g = make_hom(
            Arc::new(ring_tensor_z(phi.source(), &c)),
            m.clone(),
            IntMatrix::from_rows(4, [m.unit().to_vec()]),
        )
        .unwrap();
        let tau = universal_factor(&c, &g, &phi).unwrap();
        let z = centralizer(&phi).unwrap();
        assert_eq!(z.element(tau.image(0)), v(&[1, 0, 0, 1]));
    }

    #[test]
    fn corrupted_factorization_names_the_basis_element() {
        let f = diag_inclusion();
        let z = centralizer(&f).unwrap();
        let mu = mu_with(&f, &z).unwrap();
        let mut rows = mu.matrix().to_rows();
        // Kill the image of e0 ⊗ z0, so g(e0 ⊗ 1) = e0·z1 = 0.
        rows[0] = v(&[0, 0, 0]);
        let bad = RingHom::from_parts_unchecked(mu.source().clone(), mu.target().clone(), IntMatrix::from_rows(3, rows));
        assert_eq!(is_factorization_object(z.as_ring(), &bad, &f).unwrap(), Some(0));
        assert!(matches!(
            universal_factor(z.as_ring(), &bad, &f),
            Err(FactorizationError::TriangleFails { basis: 0 })
        ));
    }

    #[test]
    fn centralizer_of_group_ring_inclusion() {
        let d6 = CayleyTable::dihedral(6);
        let zc2 = Arc::new(make_group_ring(&CayleyTable::cyclic(2), 0));
        let zd6 = Arc::new(make_group_ring(&d6, 0));
        let s = d6.index_of("s").unwrap();
        let phi = make_group_ring_hom(zc2, zd6.clone(), &[0, s]).unwrap();
        let z = centralizer(&phi).unwrap();
        // Centralizer of s in D6 is {e, s}, plus the class sums r + r2 and sr + sr2... checked by
        // containment of the center and of the image of phi.
        let center = center(&zd6).unwrap();
        for row in center.generators().row_iter() {
            assert!(z.contains(row));
        }
        assert!(z.contains(&zd6.basis_vector(s)));
        assert!(!z.contains(&zd6.basis_vector(d6.index_of("r").unwrap())));
    }

    #[test]
    fn non_subrings_are_rejected() {
        let m = Arc::new(make_matrix_ring(2, 0));
        let err = Subring::from_generators(m.clone(), &IntMatrix::from_i64(&[&[0, 1, 0, 0]]), "x").unwrap_err();
        assert!(matches!(err, FactorizationError::NotASubring(_)));
        let err = Subring::from_generators(m, &IntMatrix::from_i64(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]), "x")
            .unwrap_err();
        assert!(matches!(err, FactorizationError::NotASubring(_)));
    }
}
