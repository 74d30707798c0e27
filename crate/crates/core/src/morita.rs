//! Centralizers as bimodules between centers, tensor products over a
//! commutative base, the compositor `μ: Z(g) ⊗_{Z(S)} Z(f) → Z(g∘f)` and the
//! lax unity and associativity checks for `R ↦ Z(R)`, `f ↦ Z(f)`.
//!
//! Modules are finitely presented abelian groups: generators `x₀ … x_{n-1}`
//! with per-generator moduli plus extra relation rows. A ring acts on a
//! module by one matrix per ring basis element, in the row-vector convention:
//! for the left action, row `i` of the matrix for `a_k` is `a_k·xᵢ`; for the
//! right action, it is `xᵢ·b_k`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::factorization::{center, centralizer, FactorizationError, Subring};
use crate::linalg::{cokernel_invariants, kernel_rel, modulus_gcd, IntMatrix, LatticeSolver, Moduli};
pub use crate::report::LaxMode;
use crate::report::{witness, CheckResult, LaxReport};
use crate::rings::{hom_compose, BasedRing, RingError, RingHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoritaError {
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("base ring {0} is not commutative")]
    NotCommutative(String),
    #[error("malformed bimodule: {0}")]
    Shape(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(BimoduleFailure),
    #[error("invalid bimodule map: {0}")]
    InvalidHom(String),
    #[error("{0}")]
    NotInCentralizer(String),
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A failed bimodule axiom, by ring basis and generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimoduleFailure {
    /// The action of a ring basis element does not preserve the relations.
    IllDefined { side: Side, basis: usize },
    /// The action of `eₖ` is not killed by the additive order of `eₖ`.
    RingModulus { side: Side, basis: usize },
    /// `(aₖaₗ)·x ≠ aₖ·(aₗ·x)` (or the right-hand analogue) on generator `generator`.
    Associativity {
        side: Side,
        left: usize,
        right: usize,
        generator: usize,
    },
    Unit { side: Side, generator: usize },
    /// `(aₖ·x)·bₗ ≠ aₖ·(x·bₗ)` on generator `generator`.
    Compatibility {
        left: usize,
        right: usize,
        generator: usize,
    },
}

impl fmt::Display for BimoduleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleFailure::IllDefined { side, basis } => {
                write!(f, "{side} action of basis element {basis} does not preserve the relations")
            }
            BimoduleFailure::RingModulus { side, basis } => {
                write!(f, "{side} action of basis element {basis} ignores its additive order")
            }
            BimoduleFailure::Associativity {
                side,
                left,
                right,
                generator,
            } => write!(
                f,
                "{side} action is not associative for basis pair ({left}, {right}) on generator {generator}"
            ),
            BimoduleFailure::Unit { side, generator } => {
                write!(f, "{side} action of 1 moves generator {generator}")
            }
            BimoduleFailure::Compatibility {
                left,
                right,
                generator,
            } => write!(
                f,
                "left action of {left} and right action of {right} do not commute on generator {generator}"
            ),
        }
    }
}

/// A finitely presented abelian group with commuting left and right ring actions.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left_ring: Arc<BasedRing>,
    right_ring: Arc<BasedRing>,
    moduli: Moduli,
    relations: IntMatrix,
    left_action: Vec<IntMatrix>,
    right_action: Vec<IntMatrix>,
    lattice: LatticeSolver,
}

fn linear_combination(coeffs: &[BigInt], mats: &[IntMatrix], n: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(n, n);
    for (c, m) in coeffs.iter().zip(mats) {
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let x = &m[(i, j)];
                if !x.is_zero() {
                    out.row_mut(i)[j] += c * x;
                }
            }
        }
    }
    out
}

impl Bimodule {
    /// Checks shapes only; see [`Bimodule::failures`] for the axioms.
    pub fn from_parts_unchecked(
        left_ring: Arc<BasedRing>,
        right_ring: Arc<BasedRing>,
        moduli: Moduli,
        relations: IntMatrix,
        left_action: Vec<IntMatrix>,
        right_action: Vec<IntMatrix>,
    ) -> Result<Self, MoritaError> {
        let n = moduli.len();
        if relations.cols() != n {
            return Err(MoritaError::Shape(format!(
                "relations have {} columns for {n} generators",
                relations.cols()
            )));
        }
        if left_action.len() != left_ring.dim() || right_action.len() != right_ring.dim() {
            return Err(MoritaError::Shape(
                "one action matrix is needed per ring basis element".into(),
            ));
        }
        if left_action
            .iter()
            .chain(&right_action)
            .any(|m| m.rows() != n || m.cols() != n)
        {
            return Err(MoritaError::Shape(format!("action matrices must be {n}x{n}")));
        }
        let lattice = LatticeSolver::new(&relations.vstack(&moduli.relation_rows()), &IntMatrix::zeros(0, n))
            .expect("relation rows have the carrier width");
        Ok(Self {
            left_ring,
            right_ring,
            moduli,
            relations,
            left_action,
            right_action,
            lattice,
        })
    }

    /// Builds a bimodule and checks every axiom on generators.
    pub fn new(
        left_ring: Arc<BasedRing>,
        right_ring: Arc<BasedRing>,
        moduli: Moduli,
        relations: IntMatrix,
        left_action: Vec<IntMatrix>,
        right_action: Vec<IntMatrix>,
    ) -> Result<Self, MoritaError> {
        let m = Self::from_parts_unchecked(left_ring, right_ring, moduli, relations, left_action, right_action)?;
        match m.failures().into_iter().next() {
            None => Ok(m),
            Some(failure) => Err(MoritaError::InvalidBimodule(failure)),
        }
    }

    /// A ring as a bimodule over itself.
    pub fn regular(ring: Arc<BasedRing>) -> Self {
        let left = (0..ring.dim())
            .map(|k| ring.left_mul_matrix(&ring.basis_vector(k)))
            .collect();
        let right = (0..ring.dim())
            .map(|k| ring.right_mul_matrix(&ring.basis_vector(k)))
            .collect();
        Self::from_parts_unchecked(
            ring.clone(),
            ring.clone(),
            ring.moduli().clone(),
            IntMatrix::zeros(0, ring.dim()),
            left,
            right,
        )
        .expect("regular bimodule has consistent shapes")
    }

    pub fn left_ring(&self) -> &Arc<BasedRing> {
        &self.left_ring
    }

    pub fn right_ring(&self) -> &Arc<BasedRing> {
        &self.right_ring
    }

    pub fn generators(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &Moduli {
        &self.moduli
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn left_action(&self, k: usize) -> &IntMatrix {
        &self.left_action[k]
    }

    pub fn right_action(&self, k: usize) -> &IntMatrix {
        &self.right_action[k]
    }

    /// Replaces one action matrix without revalidating.
    pub fn set_action_unchecked(&mut self, side: Side, k: usize, matrix: IntMatrix) {
        assert!(matrix.rows() == self.generators() && matrix.cols() == self.generators());
        match side {
            Side::Left => self.left_action[k] = matrix,
            Side::Right => self.right_action[k] = matrix,
        }
    }

    /// All relations, including the moduli rows.
    pub fn relation_lattice(&self) -> IntMatrix {
        self.relations.vstack(&self.moduli.relation_rows())
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.lattice.contains(x)
    }

    /// Canonical representative of the class of `x`.
    pub fn normalize(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.lattice.normalize(x)
    }

    pub fn elements_eq(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.is_zero(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
    }

    /// `a·x` for a ring element `a` of the left ring.
    pub fn act_left(&self, a: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        linear_combination(a, &self.left_action, self.generators()).left_apply(x)
    }

    /// `x·b` for a ring element `b` of the right ring.
    pub fn act_right(&self, x: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        linear_combination(b, &self.right_action, self.generators()).left_apply(x)
    }

    /// Invariant factors of the underlying abelian group (units omitted, `0` for free summands).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        cokernel_invariants(&self.relations, &self.moduli).expect("relations have the carrier width")
    }

    /// Number of elements, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let factors = self.invariant_factors();
        if factors.iter().any(Zero::is_zero) {
            None
        } else {
            Some(factors.iter().product())
        }
    }

    /// First generator on which `a` and `b` differ as endomorphisms.
    fn first_difference(&self, a: &IntMatrix, b: &IntMatrix) -> Option<usize> {
        (0..a.rows()).find(|&i| !self.elements_eq(a.row(i), b.row(i)))
    }

    /// Every failed axiom instance.
    pub fn failures(&self) -> Vec<BimoduleFailure> {
        let n = self.generators();
        let mut out = Vec::new();
        let lattice = self.relation_lattice();
        for (side, ring, mats) in [
            (Side::Left, &self.left_ring, &self.left_action),
            (Side::Right, &self.right_ring, &self.right_action),
        ] {
            for (k, a) in mats.iter().enumerate() {
                if lattice.row_iter().any(|rho| !self.is_zero(&a.left_apply(rho))) {
                    out.push(BimoduleFailure::IllDefined { side, basis: k });
                }
                let m = &ring.moduli().as_slice()[k];
                if !m.is_zero() && a.row_iter().any(|r| !self.is_zero(&r.iter().map(|x| x * m).collect::<Vec<_>>())) {
                    out.push(BimoduleFailure::RingModulus { side, basis: k });
                }
            }
            for k in 0..ring.dim() {
                for l in 0..ring.dim() {
                    let product = linear_combination(ring.basis_product(k, l), mats, n);
                    // a_k(a_l x) = x·L_l·L_k; (x b_k) b_l = x·R_k·R_l.
                    let iterated = match side {
                        Side::Left => mats[l].mul(&mats[k]),
                        Side::Right => mats[k].mul(&mats[l]),
                    };
                    if let Some(generator) = self.first_difference(&product, &iterated) {
                        out.push(BimoduleFailure::Associativity {
                            side,
                            left: k,
                            right: l,
                            generator,
                        });
                    }
                }
            }
            let unit = linear_combination(ring.unit(), mats, n);
            if let Some(generator) = self.first_difference(&unit, &IntMatrix::identity(n)) {
                out.push(BimoduleFailure::Unit { side, generator });
            }
        }
        for (k, l_k) in self.left_action.iter().enumerate() {
            for (l, r_l) in self.right_action.iter().enumerate() {
                if let Some(generator) = self.first_difference(&l_k.mul(r_l), &r_l.mul(l_k)) {
                    out.push(BimoduleFailure::Compatibility {
                        left: k,
                        right: l,
                        generator,
                    });
                }
            }
        }
        out
    }

    /// Same rings, same presentation and same actions.
    pub fn same_as(&self, other: &Bimodule) -> bool {
        self.left_ring.structurally_eq(&other.left_ring)
            && self.right_ring.structurally_eq(&other.right_ring)
            && self.moduli == other.moduli
            && self.relations == other.relations
            && self.left_action == other.left_action
            && self.right_action == other.right_action
    }
}

/// A map of bimodules given on generators (row `i` is the image of generator `i`).
#[derive(Clone, Debug)]
pub struct BimoduleHom {
    source: Bimodule,
    target: Bimodule,
    matrix: IntMatrix,
}

impl BimoduleHom {
    pub fn from_parts_unchecked(source: Bimodule, target: Bimodule, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), source.generators(), "bimodule map rows");
        assert_eq!(matrix.cols(), target.generators(), "bimodule map columns");
        Self { source, target, matrix }
    }

    pub fn new(source: Bimodule, target: Bimodule, matrix: IntMatrix) -> Result<Self, MoritaError> {
        if matrix.rows() != source.generators() || matrix.cols() != target.generators() {
            return Err(MoritaError::InvalidHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.generators(),
                target.generators()
            )));
        }
        let hom = Self::from_parts_unchecked(source, target, matrix);
        match hom.failures().into_iter().next() {
            None => Ok(hom),
            Some(why) => Err(MoritaError::InvalidHom(why)),
        }
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of an element, as a canonical representative in the target.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.normalize(&self.matrix.left_apply(x))
    }

    /// Well-definedness and equivariance failures, described in words.
    pub fn failures(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        if !s.left_ring.structurally_eq(&t.left_ring) || !s.right_ring.structurally_eq(&t.right_ring) {
            out.push("source and target are bimodules over different rings".to_string());
            return out;
        }
        for (r, rho) in s.relation_lattice().row_iter().enumerate() {
            if !t.is_zero(&self.matrix.left_apply(rho)) {
                out.push(format!("relation {r} of the source does not map to zero"));
            }
        }
        for (side, src, tgt) in [
            (Side::Left, &s.left_action, &t.left_action),
            (Side::Right, &s.right_action, &t.right_action),
        ] {
            for (k, (a, b)) in src.iter().zip(tgt).enumerate() {
                let lhs = a.mul(&self.matrix);
                let rhs = self.matrix.mul(b);
                if let Some(i) = t.first_difference(&lhs, &rhs) {
                    out.push(format!(
                        "not {side}-equivariant for basis element {k} on generator {i}"
                    ));
                }
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        let kernel = kernel_rel(&self.matrix, &self.target.relation_lattice())
            .expect("map matches its target");
        let injective = kernel.row_iter().all(|k| self.source.is_zero(k));
        injective
    }

    pub fn is_surjective(&self) -> bool {
        let solver = LatticeSolver::new(&self.matrix, &self.target.relation_lattice())
            .expect("map matches its target");
        (0..self.target.generators()).all(|j| {
            let mut e = vec![BigInt::zero(); self.target.generators()];
            e[j] = BigInt::from(1);
            solver.contains(&e)
        })
    }
}

/// `M ⊗_A N` as a presented bimodule; generator `xᵢ ⊗ yⱼ` has index `i·|N| + j`.
#[derive(Clone, Debug)]
pub struct TensorPresentation {
    base: Arc<BasedRing>,
    bimodule: Bimodule,
    left_generators: usize,
    right_generators: usize,
    invariants: OnceLock<Vec<BigInt>>,
}

impl TensorPresentation {
    pub fn base(&self) -> &Arc<BasedRing> {
        &self.base
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn into_bimodule(self) -> Bimodule {
        self.bimodule
    }

    pub fn generator_index(&self, i: usize, j: usize) -> usize {
        i * self.right_generators + j
    }

    pub fn relations(&self) -> &IntMatrix {
        self.bimodule.relations()
    }

    /// Invariant factors of the underlying abelian group, computed once.
    pub fn invariant_factors(&self) -> &[BigInt] {
        self.invariants.get_or_init(|| self.bimodule.invariant_factors())
    }

    pub fn order(&self) -> Option<BigInt> {
        let f = self.invariant_factors();
        (!f.iter().any(Zero::is_zero)).then(|| f.iter().product())
    }

    /// Canonical coordinates of the pure tensor `x ⊗ y`.
    pub fn project(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.left_generators, "left factor has wrong length");
        assert_eq!(y.len(), self.right_generators, "right factor has wrong length");
        let t: Vec<BigInt> = x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect();
        self.bimodule.normalize(&t)
    }
}

/// `M ⊗_A N` for an `(P, A)`-bimodule `M` and an `(A, Q)`-bimodule `N` over a
/// commutative ring `A`.
pub fn tensor_over(a: &Arc<BasedRing>, m: &Bimodule, n: &Bimodule) -> Result<TensorPresentation, MoritaError> {
    if !m.right_ring.structurally_eq(a) {
        return Err(MoritaError::RingMismatch(format!(
            "right ring {} of the first factor is not {}",
            m.right_ring.name(),
            a.name()
        )));
    }
    if !n.left_ring.structurally_eq(a) {
        return Err(MoritaError::RingMismatch(format!(
            "left ring {} of the second factor is not {}",
            n.left_ring.name(),
            a.name()
        )));
    }
    if !center(a)?.is_whole_ring() {
        return Err(MoritaError::NotCommutative(a.name().to_string()));
    }
    let (p, q) = (m.generators(), n.generators());
    let id_p = IntMatrix::identity(p);
    let id_q = IntMatrix::identity(q);
    let mut relations = m.relations.kron(&id_q).vstack(&id_p.kron(&n.relations));
    for k in 0..a.dim() {
        // (xᵢ·aₖ) ⊗ yⱼ − xᵢ ⊗ (aₖ·yⱼ)
        let balancing = m.right_action[k].kron(&id_q).sub(&id_p.kron(&n.left_action[k]));
        relations = relations.vstack(&balancing);
    }
    let relations = relations.nonzero_rows();
    let moduli = Moduli::new(
        m.moduli
            .iter()
            .flat_map(|x| n.moduli.iter().map(move |y| modulus_gcd(x, y)))
            .collect(),
    );
    let left = m.left_action.iter().map(|l| l.kron(&id_q)).collect();
    let right = n.right_action.iter().map(|r| id_p.kron(r)).collect();
    let bimodule = Bimodule::from_parts_unchecked(
        m.left_ring.clone(),
        n.right_ring.clone(),
        moduli,
        relations,
        left,
        right,
    )?;
    Ok(TensorPresentation {
        base: a.clone(),
        bimodule,
        left_generators: p,
        right_generators: q,
        invariants: OnceLock::new(),
    })
}

/// `Z(f)` as a `(Z(S), Z(R))`-bimodule from precomputed subrings.
pub fn center_bimodule_from(
    f: &RingHom,
    z_f: &Subring,
    z_target: &Subring,
    z_source: &Subring,
) -> Result<Bimodule, MoritaError> {
    let s = f.target();
    let coords = |v: Vec<BigInt>, what: &str| {
        z_f.coords(&v)
            .ok_or_else(|| MoritaError::NotInCentralizer(format!("{what} leaves the centralizer")))
    };
    let mut left = Vec::with_capacity(z_target.rank());
    for k in 0..z_target.rank() {
        let c = z_target.generators().row(k);
        let rows = (0..z_f.rank())
            .map(|i| coords(s.mul(c, z_f.generators().row(i)), "left action"))
            .collect::<Result<Vec<_>, _>>()?;
        left.push(IntMatrix::from_rows(z_f.rank(), rows));
    }
    let mut right = Vec::with_capacity(z_source.rank());
    for k in 0..z_source.rank() {
        let c = f.apply(z_source.generators().row(k));
        let rows = (0..z_f.rank())
            .map(|i| coords(s.mul(z_f.generators().row(i), &c), "right action"))
            .collect::<Result<Vec<_>, _>>()?;
        right.push(IntMatrix::from_rows(z_f.rank(), rows));
    }
    Bimodule::new(
        z_target.as_ring().clone(),
        z_source.as_ring().clone(),
        z_f.moduli().clone(),
        IntMatrix::zeros(0, z_f.rank()),
        left,
        right,
    )
}

/// `Z(f)` with `Z(S)` acting on the left by multiplication and `Z(R)` on the right through `f`.
pub fn center_bimodule(f: &RingHom) -> Result<Bimodule, MoritaError> {
    center_bimodule_from(f, &centralizer(f)?, &center(f.target())?, &center(f.source())?)
}

/// `S` as an `(R, S)`-bimodule, `R` acting on the left through `f`.
pub fn restriction_bimodule(f: &RingHom) -> Result<Bimodule, MoritaError> {
    let s = f.target();
    let left = (0..f.source().dim())
        .map(|k| s.left_mul_matrix(f.image(k)))
        .collect();
    let right = (0..s.dim())
        .map(|k| s.right_mul_matrix(&s.basis_vector(k)))
        .collect();
    Bimodule::new(
        f.source().clone(),
        s.clone(),
        s.moduli().clone(),
        IntMatrix::zeros(0, s.dim()),
        left,
        right,
    )
}

fn check_composable(f: &RingHom, g: &RingHom) -> Result<(), MoritaError> {
    if f.target().structurally_eq(g.source()) {
        Ok(())
    } else {
        Err(MoritaError::NotComposable(format!(
            "{} is not {}",
            f.target().name(),
            g.source().name()
        )))
    }
}

/// Generator matrix of `tᵢ ⊗ sⱼ ↦ tᵢ·g(sⱼ)` in the coordinates of `Z(g∘f)`.
pub fn compositor_matrix(
    g: &RingHom,
    z_g: &Subring,
    z_f: &Subring,
    z_gf: &Subring,
) -> Result<IntMatrix, MoritaError> {
    let t = g.target();
    let mut rows = Vec::with_capacity(z_g.rank() * z_f.rank());
    for i in 0..z_g.rank() {
        for j in 0..z_f.rank() {
            let value = t.mul(z_g.generators().row(i), &g.apply(z_f.generators().row(j)));
            rows.push(z_gf.coords(&value).ok_or_else(|| {
                MoritaError::NotInCentralizer(format!(
                    "t{i}·g(s{j}) = {} is not in the centralizer of the composite",
                    t.format_element(&value)
                ))
            })?);
        }
    }
    Ok(IntMatrix::from_rows(z_gf.rank(), rows))
}

/// `μ: Z(g) ⊗_{Z(S)} Z(f) → Z(g∘f)`, `t ⊗ s ↦ t·g(s)`, validated as a map of
/// `(Z(T), Z(R))`-bimodules.
pub fn compositor_mu(f: &RingHom, g: &RingHom) -> Result<BimoduleHom, MoritaError> {
    check_composable(f, g)?;
    let gf = hom_compose(g, f)?;
    let (z_r, z_s, z_t) = (center(f.source())?, center(f.target())?, center(g.target())?);
    let (z_f, z_g, z_gf) = (centralizer(f)?, centralizer(g)?, centralizer(&gf)?);
    let b_f = center_bimodule_from(f, &z_f, &z_s, &z_r)?;
    let b_g = center_bimodule_from(g, &z_g, &z_t, &z_s)?;
    let b_gf = center_bimodule_from(&gf, &z_gf, &z_t, &z_r)?;
    let tensor = tensor_over(z_s.as_ring(), &b_g, &b_f)?;
    let matrix = compositor_matrix(g, &z_g, &z_f, &z_gf)?;
    BimoduleHom::new(tensor.into_bimodule(), b_gf, matrix)
}

fn record_hom_failures(check: &mut CheckResult, label: &str, source: &Bimodule, target: &Bimodule, matrix: &IntMatrix) {
    let hom = BimoduleHom::from_parts_unchecked(source.clone(), target.clone(), matrix.clone());
    for why in hom.failures() {
        check.fail(format!("{label}: {why}"));
    }
}

fn record_bimodule_failures(check: &mut CheckResult, label: &str, m: &Bimodule) {
    for why in m.failures() {
        check.fail(format!("{label}: {why}"));
    }
}

/// Data for the two lax unity squares of a single map `f: R → S`. Fields are
/// public so that a check can be rerun on deliberately altered data.
#[derive(Clone, Debug)]
pub struct MoritaUnity {
    pub f: RingHom,
    pub center_source: Subring,
    pub center_target: Subring,
    pub centralizer: Subring,
    /// `Z(f)` as a `(Z(S), Z(R))`-bimodule.
    pub bimodule: Bimodule,
    /// `Z(id_S)` and `Z(id_R)` as bimodules; the unit 2-cells are identities.
    pub identity_target: Bimodule,
    pub identity_source: Bimodule,
}

impl MoritaUnity {
    pub fn new(f: &RingHom) -> Result<Self, MoritaError> {
        let center_source = center(f.source())?;
        let center_target = center(f.target())?;
        let centralizer = centralizer(f)?;
        let bimodule = center_bimodule_from(f, &centralizer, &center_target, &center_source)?;
        let id_s = RingHom::identity(f.target().clone());
        let id_r = RingHom::identity(f.source().clone());
        let identity_target = center_bimodule_from(&id_s, &center_target, &center_target, &center_target)?;
        let identity_source = center_bimodule_from(&id_r, &center_source, &center_source, &center_source)?;
        Ok(Self {
            f: f.clone(),
            center_source,
            center_target,
            centralizer,
            bimodule,
            identity_target,
            identity_source,
        })
    }

    pub fn check(&self) -> Result<LaxReport, MoritaError> {
        let mut report = LaxReport::default();
        let s_ring = self.f.target();
        let z_s = self.center_target.as_ring();
        let z_r = self.center_source.as_ring();

        let mut cells = CheckResult::new("unit 2-cells are identities: Z(id) equals the regular bimodule of the center");
        if !self.identity_target.same_as(&Bimodule::regular(z_s.clone())) {
            cells.fail(format!("Z(id) on {} differs from its center", s_ring.name()));
        }
        if !self.identity_source.same_as(&Bimodule::regular(z_r.clone())) {
            cells.fail(format!("Z(id) on {} differs from its center", self.f.source().name()));
        }
        record_bimodule_failures(&mut cells, "Z(f)", &self.bimodule);
        report.push(cells);

        let left_composite = hom_compose(&RingHom::identity(s_ring.clone()), &self.f)?;
        let right_composite = hom_compose(&self.f, &RingHom::identity(self.f.source().clone()))?;
        let mut unitors = CheckResult::new("Z(id∘f) = Z(f) = Z(f∘id)");
        let z_left = centralizer(&left_composite)?;
        let z_right = centralizer(&right_composite)?;
        if !z_left.same_as(&self.centralizer) {
            unitors.fail("Z(id∘f) differs from Z(f)");
        }
        if !z_right.same_as(&self.centralizer) {
            unitors.fail("Z(f∘id) differs from Z(f)");
        }
        report.push(unitors);

        // Left square: Z(S) ⊗ Z(f) → Z(f) by the left action, against μ_{id,f}.
        let mut left = CheckResult::new("lax unity (left): μ_{id,f} ∘ (Z_id ⊗ id) = ℓ");
        let regular_s = Bimodule::regular(z_s.clone());
        let tensor = tensor_over(z_s, &regular_s, &self.bimodule)?;
        let ell = IntMatrix::from_rows(
            self.bimodule.generators(),
            (0..z_s.dim()).flat_map(|k| self.bimodule.left_action(k).to_rows()),
        );
        record_hom_failures(&mut left, "ℓ", tensor.bimodule(), &self.bimodule, &ell);
        let via_id = tensor_over(z_s, &self.identity_target, &self.bimodule)?;
        let mu = compositor_matrix(
            &RingHom::identity(s_ring.clone()),
            &self.center_target,
            &self.centralizer,
            &z_left,
        )?;
        record_hom_failures(&mut left, "μ_{id,f}", via_id.bimodule(), &self.bimodule, &mu);
        for k in 0..z_s.dim() {
            for j in 0..self.bimodule.generators() {
                let x = tensor.generator_index(k, j);
                if !self.bimodule.elements_eq(ell.row(x), mu.row(x)) {
                    left.fail(format!(
                        "generator c{k} ⊗ z{j}: unitor {}, compositor {}",
                        witness(self.centralizer.as_ring(), ell.row(x)),
                        witness(self.centralizer.as_ring(), mu.row(x))
                    ));
                }
            }
        }
        report.push(left);

        // Right square: Z(f) ⊗ Z(R) → Z(f) by the right action, against μ_{f,id}.
        let mut right = CheckResult::new("lax unity (right): μ_{f,id} ∘ (id ⊗ Z_id) = r");
        let regular_r = Bimodule::regular(z_r.clone());
        let tensor = tensor_over(z_r, &self.bimodule, &regular_r)?;
        let mut rho = Vec::new();
        for j in 0..self.bimodule.generators() {
            for k in 0..z_r.dim() {
                rho.push(self.bimodule.right_action(k).row(j).to_vec());
            }
        }
        let rho = IntMatrix::from_rows(self.bimodule.generators(), rho);
        record_hom_failures(&mut right, "r", tensor.bimodule(), &self.bimodule, &rho);
        let via_id = tensor_over(z_r, &self.bimodule, &self.identity_source)?;
        let mu = compositor_matrix(&self.f, &self.centralizer, &self.center_source, &z_right)?;
        record_hom_failures(&mut right, "μ_{f,id}", via_id.bimodule(), &self.bimodule, &mu);
        for j in 0..self.bimodule.generators() {
            for k in 0..z_r.dim() {
                let x = tensor.generator_index(j, k);
                if !self.bimodule.elements_eq(rho.row(x), mu.row(x)) {
                    right.fail(format!(
                        "generator z{j} ⊗ c{k}: unitor {}, compositor {}",
                        witness(self.centralizer.as_ring(), rho.row(x)),
                        witness(self.centralizer.as_ring(), mu.row(x))
                    ));
                }
            }
        }
        report.push(right);
        Ok(report)
    }
}

/// Data for the lax associativity square of `f: R → S`, `g: S → T`, `h: T → W`.
/// Fields are public so that a check can be rerun on deliberately altered data.
#[derive(Clone, Debug)]
pub struct MoritaAssociativity {
    pub f: RingHom,
    pub g: RingHom,
    pub h: RingHom,
    /// Centers of `R`, `S`, `T`, `W`.
    pub centers: [Subring; 4],
    pub z_f: Subring,
    pub z_g: Subring,
    pub z_h: Subring,
    pub z_gf: Subring,
    pub z_hg: Subring,
    /// `Z((h∘g)∘f)` and `Z(h∘(g∘f))`.
    pub z_hgf_left: Subring,
    pub z_hgf_right: Subring,
    pub b_f: Bimodule,
    pub b_g: Bimodule,
    pub b_h: Bimodule,
    pub b_gf: Bimodule,
    pub b_hg: Bimodule,
    pub b_hgf: Bimodule,
    pub mu_hg: IntMatrix,
    pub mu_gf: IntMatrix,
    pub mu_hg_f: IntMatrix,
    pub mu_h_gf: IntMatrix,
}

impl MoritaAssociativity {
    pub fn new(f: &RingHom, g: &RingHom, h: &RingHom) -> Result<Self, MoritaError> {
        check_composable(f, g)?;
        check_composable(g, h)?;
        let gf = hom_compose(g, f)?;
        let hg = hom_compose(h, g)?;
        let hgf_left = hom_compose(&hg, f)?;
        let hgf_right = hom_compose(h, &gf)?;
        let centers = [
            center(f.source())?,
            center(f.target())?,
            center(g.target())?,
            center(h.target())?,
        ];
        let [z_r, z_s, z_t, z_w] = &centers;
        let (z_f, z_g, z_h) = (centralizer(f)?, centralizer(g)?, centralizer(h)?);
        let (z_gf, z_hg) = (centralizer(&gf)?, centralizer(&hg)?);
        let z_hgf_left = centralizer(&hgf_left)?;
        let z_hgf_right = centralizer(&hgf_right)?;
        let b_f = center_bimodule_from(f, &z_f, z_s, z_r)?;
        let b_g = center_bimodule_from(g, &z_g, z_t, z_s)?;
        let b_h = center_bimodule_from(h, &z_h, z_w, z_t)?;
        let b_gf = center_bimodule_from(&gf, &z_gf, z_t, z_r)?;
        let b_hg = center_bimodule_from(&hg, &z_hg, z_w, z_s)?;
        let b_hgf = center_bimodule_from(&hgf_left, &z_hgf_left, z_w, z_r)?;
        let mu_hg = compositor_matrix(h, &z_h, &z_g, &z_hg)?;
        let mu_gf = compositor_matrix(g, &z_g, &z_f, &z_gf)?;
        let mu_hg_f = compositor_matrix(&hg, &z_hg, &z_f, &z_hgf_left)?;
        let mu_h_gf = compositor_matrix(h, &z_h, &z_gf, &z_hgf_right)?;
        Ok(Self {
            f: f.clone(),
            g: g.clone(),
            h: h.clone(),
            centers,
            z_f,
            z_g,
            z_h,
            z_gf,
            z_hg,
            z_hgf_left,
            z_hgf_right,
            b_f,
            b_g,
            b_h,
            b_gf,
            b_hg,
            b_hgf,
            mu_hg,
            mu_gf,
            mu_hg_f,
            mu_h_gf,
        })
    }

    pub fn check(&self) -> Result<LaxReport, MoritaError> {
        let mut report = LaxReport::default();
        let [_, z_s, z_t, _] = &self.centers;
        let (z_s, z_t) = (z_s.as_ring(), z_t.as_ring());

        let mut data = CheckResult::new("bimodule axioms for Z(f), Z(g), Z(h), Z(g∘f), Z(h∘g), Z(h∘g∘f)");
        for (label, m) in [
            ("Z(f)", &self.b_f),
            ("Z(g)", &self.b_g),
            ("Z(h)", &self.b_h),
            ("Z(g∘f)", &self.b_gf),
            ("Z(h∘g)", &self.b_hg),
            ("Z(h∘g∘f)", &self.b_hgf),
        ] {
            record_bimodule_failures(&mut data, label, m);
        }
        report.push(data);

        let mut composite = CheckResult::new("Z((h∘g)∘f) = Z(h∘(g∘f))");
        if !self.z_hgf_left.same_as(&self.z_hgf_right) {
            composite.fail("the two bracketings have different centralizers");
        }
        report.push(composite);
        if !report.passed() {
            return Ok(report);
        }

        let t_hg = tensor_over(z_t, &self.b_h, &self.b_g)?;
        let t_gf = tensor_over(z_s, &self.b_g, &self.b_f)?;
        let tl = tensor_over(z_s, t_hg.bimodule(), &self.b_f)?;
        let tr = tensor_over(z_t, &self.b_h, t_gf.bimodule())?;
        let t_hg_f = tensor_over(z_s, &self.b_hg, &self.b_f)?;
        let t_h_gf = tensor_over(z_t, &self.b_h, &self.b_gf)?;

        // The associator reindexes ((w,t),s) to (w,(t,s)); both have index (w·|T| + t)·|S| + s.
        let mut alpha = CheckResult::new("associator (Z(h) ⊗ Z(g)) ⊗ Z(f) ≅ Z(h) ⊗ (Z(g) ⊗ Z(f))");
        let n = tl.bimodule().generators();
        record_hom_failures(&mut alpha, "α", tl.bimodule(), tr.bimodule(), &IntMatrix::identity(n));
        record_hom_failures(&mut alpha, "α⁻¹", tr.bimodule(), tl.bimodule(), &IntMatrix::identity(n));
        report.push(alpha);

        let (nw, nt, ns) = (self.b_h.generators(), self.b_g.generators(), self.b_f.generators());
        let mut maps = CheckResult::new("compositors are well-defined bimodule maps");
        let left_first = self.mu_hg.kron(&IntMatrix::identity(ns));
        let right_first = IntMatrix::identity(nw).kron(&self.mu_gf);
        record_hom_failures(&mut maps, "μ_{h,g}", t_hg.bimodule(), &self.b_hg, &self.mu_hg);
        record_hom_failures(&mut maps, "μ_{g,f}", t_gf.bimodule(), &self.b_gf, &self.mu_gf);
        record_hom_failures(&mut maps, "μ_{h,g} ⊗ id", tl.bimodule(), t_hg_f.bimodule(), &left_first);
        record_hom_failures(&mut maps, "id ⊗ μ_{g,f}", tr.bimodule(), t_h_gf.bimodule(), &right_first);
        record_hom_failures(&mut maps, "μ_{h∘g,f}", t_hg_f.bimodule(), &self.b_hgf, &self.mu_hg_f);
        record_hom_failures(&mut maps, "μ_{h,g∘f}", t_h_gf.bimodule(), &self.b_hgf, &self.mu_h_gf);
        report.push(maps);

        let left_path = left_first.mul(&self.mu_hg_f);
        let right_path = right_first.mul(&self.mu_h_gf);
        let w = self.h.target();
        let hg = hom_compose(&self.h, &self.g)?;
        let mut square = CheckResult::new("lax associativity: both paths give w·h(t)·(h∘g)(s)");
        for a in 0..nw {
            for b in 0..nt {
                for c in 0..ns {
                    let x = (a * nt + b) * ns + c;
                    let expected = w.mul(
                        &w.mul(self.z_h.generators().row(a), &self.h.apply(self.z_g.generators().row(b))),
                        &hg.apply(self.z_f.generators().row(c)),
                    );
                    let via_left = self.z_hgf_left.element(left_path.row(x));
                    let via_right = self.z_hgf_right.element(right_path.row(x));
                    if via_left != expected || via_right != expected {
                        square.fail(format!(
                            "(w{a} ⊗ t{b}) ⊗ s{c}: left path {}, right path {}, expected {}",
                            witness(w, &via_left),
                            witness(w, &via_right),
                            witness(w, &expected)
                        ));
                    }
                }
            }
        }
        report.push(square);
        Ok(report)
    }
}

/// Runs the lax unity checks on every map of `chain`, or the lax associativity
/// check on the chain `[f, g, h]` (`f` applied first).
pub fn verify_lax_morita(chain: &[RingHom], mode: LaxMode) -> Result<LaxReport, MoritaError> {
    match mode {
        LaxMode::Unity => {
            let mut report = LaxReport::default();
            for (i, f) in chain.iter().enumerate() {
                let mut part = MoritaUnity::new(f)?.check()?;
                if chain.len() > 1 {
                    for c in &mut part.checks {
                        c.name = format!("map {}: {}", i + 1, c.name);
                    }
                }
                report.extend(part);
            }
            Ok(report)
        }
        LaxMode::Associativity => match chain {
            [f, g, h] => MoritaAssociativity::new(f, g, h)?.check(),
            _ => Err(MoritaError::NotComposable(format!(
                "associativity needs exactly three maps, got {}",
                chain.len()
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{
        make_ground_ring, make_group_ring, make_group_ring_hom, make_hom, make_product_ring,
        make_upper_triangular, CayleyTable,
    };

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Diagonal inclusion F⊕F → UT₂(F) and projection UT₂(F) → F⊕F over ℤ/p.
    fn dkr(p: u64) -> (RingHom, RingHom) {
        let f = make_ground_ring(p);
        let r = Arc::new(make_product_ring(&f, &f));
        let s = Arc::new(make_upper_triangular(2, p));
        let incl = make_hom(r.clone(), s.clone(), IntMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        let proj = make_hom(s, r, IntMatrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1]])).unwrap();
        (incl, proj)
    }

    #[test]
    fn identity_bimodule_is_the_center() {
        let r = Arc::new(make_upper_triangular(2, 2));
        let b = center_bimodule(&RingHom::identity(r.clone())).unwrap();
        let z = center(&r).unwrap();
        assert!(b.same_as(&Bimodule::regular(z.as_ring().clone())));
    }

    #[test]
    fn diagonal_inclusion_bimodule() {
        let (incl, _) = dkr(2);
        let b = center_bimodule(&incl).unwrap();
        assert_eq!(b.generators(), 2);
        assert_eq!(b.order(), Some(int(4)));
        // Z(F⊕F) = F⊕F acts on the right componentwise: e₁ fixes z₀ = E11 and kills z₁ = E22.
        assert_eq!(b.act_right(&[int(1), int(0)], &[int(1), int(0)]), vec![int(1), int(0)]);
        assert!(b.is_zero(&b.act_right(&[int(0), int(1)], &[int(1), int(0)])));
        // Z(UT₂) is the scalars, acting trivially.
        assert_eq!(b.left_ring().dim(), 1);
    }

    #[test]
    fn restriction_of_group_ring_inclusion() {
        let d6 = CayleyTable::dihedral(6);
        let zc2 = Arc::new(make_group_ring(&CayleyTable::cyclic(2), 0));
        let zd6 = Arc::new(make_group_ring(&d6, 0));
        let phi = make_group_ring_hom(zc2, zd6, &[0, d6.index_of("s").unwrap()]).unwrap();
        let b = restriction_bimodule(&phi).unwrap();
        assert_eq!(b.generators(), 6);
        assert_eq!(b.invariant_factors(), vec![int(0); 6]);
    }

    #[test]
    fn unit_law_of_tensor() {
        let (incl, _) = dkr(3);
        let m = center_bimodule(&incl).unwrap();
        let a = m.right_ring().clone();
        let t = tensor_over(&a, &m, &Bimodule::regular(a.clone())).unwrap();
        assert_eq!(t.invariant_factors(), m.invariant_factors().as_slice());
    }

    #[test]
    fn coprime_torsion_tensor_vanishes() {
        let z = Arc::new(make_ground_ring(0));
        let two = Bimodule::new(z.clone(), z.clone(), Moduli::uniform(2, 1), IntMatrix::zeros(0, 1),
            vec![IntMatrix::identity(1)], vec![IntMatrix::identity(1)]).unwrap();
        let three = Bimodule::new(z.clone(), z.clone(), Moduli::uniform(3, 1), IntMatrix::zeros(0, 1),
            vec![IntMatrix::identity(1)], vec![IntMatrix::identity(1)]).unwrap();
        let t = tensor_over(&z, &two, &three).unwrap();
        assert!(t.invariant_factors().is_empty());
        assert_eq!(t.order(), Some(int(1)));
    }

    #[test]
    fn non_commutative_base_is_rejected() {
        let ut = Arc::new(make_upper_triangular(2, 2));
        let m = Bimodule::regular(ut.clone());
        assert!(matches!(tensor_over(&ut, &m, &m), Err(MoritaError::NotCommutative(_))));
    }

    #[test]
    fn dkr_compositor_is_not_injective() {
        let (incl, proj) = dkr(2);
        let mu = compositor_mu(&incl, &proj).unwrap();
        assert_eq!(mu.source().invariant_factors(), vec![int(2); 4]);
        assert_eq!(mu.source().order(), Some(int(16)));
        assert_eq!(mu.target().order(), Some(int(4)));
        assert!(!mu.is_injective());
        assert!(mu.is_surjective());
    }

    #[test]
    fn compositor_with_identity_is_the_action() {
        let (incl, _) = dkr(2);
        let id = RingHom::identity(incl.target().clone());
        let mu = compositor_mu(&incl, &id).unwrap();
        // Z(S) = scalars, so Z(S) ⊗ Z(f) ≅ Z(f).
        assert!(mu.is_injective() && mu.is_surjective());
        let one = mu.target().normalize(&[int(1), int(1)]);
        assert_eq!(mu.apply(&mu.source().normalize(&[int(1), int(1)])), one);
    }

    #[test]
    fn unity_holds_and_detects_corruption() {
        let (incl, proj) = dkr(2);
        for f in [&incl, &proj] {
            let report = verify_lax_morita(std::slice::from_ref(f), LaxMode::Unity).unwrap();
            assert!(report.passed(), "{report}");
        }
        let mut data = MoritaUnity::new(&incl).unwrap();
        let swapped = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        data.bimodule.set_action_unchecked(Side::Right, 0, swapped);
        assert!(!data.check().unwrap().passed());
    }

    #[test]
    fn associativity_on_inclusion_projection_inclusion() {
        let (incl, proj) = dkr(2);
        let report = verify_lax_morita(&[incl.clone(), proj, incl], LaxMode::Associativity).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn associativity_detects_corrupted_compositor() {
        let (incl, proj) = dkr(2);
        let mut data = MoritaAssociativity::new(&incl, &proj, &incl).unwrap();
        let n = data.mu_hg_f.cols();
        data.mu_hg_f = IntMatrix::zeros(data.mu_hg_f.rows(), n);
        assert!(!data.check().unwrap().passed());
    }

    #[test]
    fn associativity_detects_corrupted_action() {
        let (incl, proj) = dkr(2);
        let mut data = MoritaAssociativity::new(&proj, &incl, &proj).unwrap();
        let n = data.b_g.generators();
        data.b_g.set_action_unchecked(Side::Right, 0, IntMatrix::zeros(n, n));
        assert!(!data.check().unwrap().passed());
    }

    #[test]
    fn incomposable_chain_is_rejected() {
        let (incl, _) = dkr(2);
        assert!(matches!(
            verify_lax_morita(&[incl.clone(), incl.clone(), incl], LaxMode::Associativity),
            Err(MoritaError::NotComposable(_))
        ));
    }
}
