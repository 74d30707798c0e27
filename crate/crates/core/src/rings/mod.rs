//! Based rings: rings whose additive group is `⊕ ℤ/mᵢ` on a finite basis, with
//! multiplication given by integer structure constants.

mod constructors;
mod group;
mod hom;

pub use constructors::{
    make_ground_ring, make_group_ring, make_matrix_ring, make_product_ring,
    make_upper_triangular, ring_tensor_z,
};
pub use group::CayleyTable;
pub use hom::{hom_compose, hom_is_iso, make_group_ring_hom, make_hom, unit_hom, HomFailure, RingHom};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{IntMatrix, Moduli};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("malformed ring data: {0}")]
    Malformed(String),
    #[error("ring axioms fail: {0}")]
    Axioms(ValidationReport),
    #[error("invalid Cayley table: {0}")]
    InvalidGroup(String),
    #[error("not a ring homomorphism: {0}")]
    Hom(HomFailure),
    #[error("homomorphisms are not composable: {0}")]
    NotComposable(String),
}

/// A ring presented on a finite additive basis.
#[derive(Clone, Debug)]
pub struct BasedRing {
    name: String,
    basis_names: Vec<String>,
    moduli: Moduli,
    /// `products[i * n + j]` is the coefficient vector of `eᵢ·eⱼ`.
    products: Vec<Vec<BigInt>>,
    unit: Vec<BigInt>,
}

impl BasedRing {
    /// Builds a ring and checks every axiom on the basis.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        moduli: Moduli,
        products: Vec<Vec<BigInt>>,
        unit: Vec<BigInt>,
    ) -> Result<Self, RingError> {
        let ring = Self::from_parts(name, basis_names, moduli, products, unit)?;
        let report = validate_ring(&ring);
        if report.is_ok() {
            Ok(ring)
        } else {
            Err(RingError::Axioms(report))
        }
    }

    /// Builds a ring checking only shapes. Coefficients are reduced modulo the
    /// moduli; axioms are not checked (see [`validate_ring`]).
    pub fn from_parts(
        name: impl Into<String>,
        basis_names: Vec<String>,
        moduli: Moduli,
        mut products: Vec<Vec<BigInt>>,
        mut unit: Vec<BigInt>,
    ) -> Result<Self, RingError> {
        let n = basis_names.len();
        if moduli.len() != n {
            return Err(RingError::Malformed(format!(
                "{} basis names but {} moduli",
                n,
                moduli.len()
            )));
        }
        if products.len() != n * n {
            return Err(RingError::Malformed(format!(
                "expected {} structure constant vectors, found {}",
                n * n,
                products.len()
            )));
        }
        if let Some(bad) = products.iter().position(|p| p.len() != n) {
            return Err(RingError::Malformed(format!(
                "structure constant vector for pair ({}, {}) has length {}, expected {n}",
                bad / n,
                bad % n,
                products[bad].len()
            )));
        }
        if unit.len() != n {
            return Err(RingError::Malformed(format!(
                "unit has length {}, expected {n}",
                unit.len()
            )));
        }
        for p in &mut products {
            moduli.reduce(p);
        }
        moduli.reduce(&mut unit);
        Ok(Self {
            name: name.into(),
            basis_names,
            moduli,
            products,
            unit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn moduli(&self) -> &Moduli {
        &self.moduli
    }

    pub fn unit(&self) -> &[BigInt] {
        &self.unit
    }

    /// Coefficients of `eᵢ·eⱼ`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[BigInt] {
        &self.products[i * self.dim() + j]
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero();
        v[i] = BigInt::one();
        self.moduli.reduce(&mut v);
        v
    }

    pub fn reduce(&self, v: &mut [BigInt]) {
        self.moduli.reduce(v);
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim();
        debug_assert!(a.len() == n && b.len() == n);
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coeff = ai * bj;
                for (o, c) in out.iter_mut().zip(&self.products[i * n + j]) {
                    if !c.is_zero() {
                        *o += &coeff * c;
                    }
                }
            }
        }
        self.reduce(&mut out);
        out
    }

    /// Equality of elements modulo the moduli.
    pub fn elements_eq(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.moduli
            .is_zero(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
    }

    /// Matrix of `x ↦ x·y` in the row-vector convention.
    pub fn right_mul_matrix(&self, y: &[BigInt]) -> IntMatrix {
        IntMatrix::from_rows(
            self.dim(),
            (0..self.dim()).map(|k| self.mul(&self.basis_vector(k), y)),
        )
    }

    /// Matrix of `x ↦ y·x` in the row-vector convention.
    pub fn left_mul_matrix(&self, y: &[BigInt]) -> IntMatrix {
        IntMatrix::from_rows(
            self.dim(),
            (0..self.dim()).map(|k| self.mul(y, &self.basis_vector(k))),
        )
    }

    /// Same presentation, ignoring the display names.
    pub fn structurally_eq(&self, other: &BasedRing) -> bool {
        self.moduli == other.moduli && self.products == other.products && self.unit == other.unit
    }

    /// Whether all basis elements commute.
    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Number of elements, or `None` for rings with a free coordinate.
    pub fn order(&self) -> Option<BigInt> {
        self.moduli.group_order()
    }

    /// Renders an element as a sum over basis names.
    pub fn format_element(&self, v: &[BigInt]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.basis_names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| {
                if c.is_one() {
                    name.clone()
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    pub(crate) fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for BasedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.name, self.dim())
    }
}

/// One failed axiom instance, by basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    /// `mᵢ·(eᵢeⱼ)` or `mⱼ·(eᵢeⱼ)` is nonzero, so the product is not well defined.
    Modulus { left: usize, right: usize },
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Modulus { left, right } => {
                write!(f, "product of basis pair ({left}, {right}) ignores the moduli")
            }
            AxiomFailure::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            AxiomFailure::LeftUnit { i } => write!(f, "1*e{i} != e{i}"),
            AxiomFailure::RightUnit { i } => write!(f, "e{i}*1 != e{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "all axioms hold");
        }
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks the ring axioms on basis elements. Distributivity holds by bilinear
/// extension and is not checked.
pub fn validate_ring(ring: &BasedRing) -> ValidationReport {
    let n = ring.dim();
    let moduli = ring.moduli();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = ring.basis_product(i, j);
            let bad = [&moduli.as_slice()[i], &moduli.as_slice()[j]]
                .iter()
                .any(|m| !m.is_zero() && !moduli.is_zero(&c.iter().map(|x| x * *m).collect::<Vec<_>>()));
            if bad {
                failures.push(AxiomFailure::Modulus { left: i, right: j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = ring.basis_product(i, j);
            for k in 0..n {
                let left = ring.mul(ij, &ring.basis_vector(k));
                let jk = ring.basis_product(j, k);
                let right = ring.mul(&ring.basis_vector(i), jk);
                if left != right {
                    failures.push(AxiomFailure::Associativity { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        let e = ring.basis_vector(i);
        if ring.mul(ring.unit(), &e) != e {
            failures.push(AxiomFailure::LeftUnit { i });
        }
        if ring.mul(&e, ring.unit()) != e {
            failures.push(AxiomFailure::RightUnit { i });
        }
    }
    ValidationReport { failures }
}

/// An element of a based ring, coefficients reduced modulo the moduli.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<BasedRing>,
    coeffs: Vec<BigInt>,
}

impl RingElement {
    pub fn new(ring: Arc<BasedRing>, mut coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), ring.dim(), "coefficient vector has wrong length");
        ring.reduce(&mut coeffs);
        Self { ring, coeffs }
    }

    pub fn zero(ring: Arc<BasedRing>) -> Self {
        let coeffs = ring.zero();
        Self { ring, coeffs }
    }

    pub fn one(ring: Arc<BasedRing>) -> Self {
        let coeffs = ring.unit().to_vec();
        Self { ring, coeffs }
    }

    pub fn basis(ring: Arc<BasedRing>, i: usize) -> Self {
        let coeffs = ring.basis_vector(i);
        Self { ring, coeffs }
    }

    pub fn ring(&self) -> &Arc<BasedRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == self.ring.unit()
    }

    fn same_ring(&self, other: &RingElement) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring.structurally_eq(&other.ring),
            "elements of different rings"
        );
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.mul(&self.coeffs, &other.coeffs),
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.structurally_eq(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_element(&self.coeffs))
    }
}
