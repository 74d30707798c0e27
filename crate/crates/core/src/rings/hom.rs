use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{make_ground_ring, BasedRing, RingError};
use crate::linalg::{kernel_mod, IntMatrix, LatticeSolver};

/// Why a matrix fails to define a ring homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomFailure {
    Dimension {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// `mᵢ·F(eᵢ) ≠ 0` in the target.
    Modulus { index: usize },
    /// `F(eᵢeⱼ) ≠ F(eᵢ)F(eⱼ)`.
    Multiplicative {
        left: usize,
        right: usize,
        image_of_product: Vec<BigInt>,
        product_of_images: Vec<BigInt>,
    },
    Unit {
        image: Vec<BigInt>,
        expected: Vec<BigInt>,
    },
}

impl fmt::Display for HomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |v: &[BigInt]| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("[{}]", parts.join(", "))
        };
        match self {
            HomFailure::Dimension { expected, found } => write!(
                f,
                "matrix is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            HomFailure::Modulus { index } => {
                write!(f, "image of basis element {index} is not killed by its modulus")
            }
            HomFailure::Multiplicative {
                left,
                right,
                image_of_product,
                product_of_images,
            } => write!(
                f,
                "F(e{left}*e{right}) = {} but F(e{left})*F(e{right}) = {}",
                vec(image_of_product),
                vec(product_of_images)
            ),
            HomFailure::Unit { image, expected } => {
                write!(f, "F(1) = {} but 1 = {}", vec(image), vec(expected))
            }
        }
    }
}

/// A ring homomorphism given by the images of the source basis (one row each).
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Arc<BasedRing>,
    target: Arc<BasedRing>,
    matrix: IntMatrix,
}

impl RingHom {
    pub fn identity(ring: Arc<BasedRing>) -> Self {
        let matrix = IntMatrix::from_rows(ring.dim(), (0..ring.dim()).map(|i| ring.basis_vector(i)));
        Self {
            source: ring.clone(),
            target: ring,
            matrix,
        }
    }

    /// Wraps a matrix without checking any axiom. Rows are reduced modulo the
    /// target moduli; mismatched shapes panic.
    pub fn from_parts_unchecked(source: Arc<BasedRing>, target: Arc<BasedRing>, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), source.dim(), "hom matrix rows");
        assert_eq!(matrix.cols(), target.dim(), "hom matrix columns");
        let matrix = IntMatrix::from_rows(
            target.dim(),
            matrix.row_iter().map(|r| target.moduli().reduced(r)),
        );
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<BasedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BasedRing> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of basis element `i`.
    pub fn image(&self, i: usize) -> &[BigInt] {
        self.matrix.row(i)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.left_apply(x);
        self.target.reduce(&mut y);
        y
    }

    /// Every axiom failure, in the order modulus, multiplicativity, unit.
    pub fn failures(&self) -> Vec<HomFailure> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        for (i, m) in s.moduli().iter().enumerate() {
            if m != &BigInt::from(0) {
                let scaled: Vec<BigInt> = self.image(i).iter().map(|x| x * m).collect();
                if !t.moduli().is_zero(&scaled) {
                    out.push(HomFailure::Modulus { index: i });
                }
            }
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(s.basis_product(i, j));
                let rhs = t.mul(self.image(i), self.image(j));
                if lhs != rhs {
                    out.push(HomFailure::Multiplicative {
                        left: i,
                        right: j,
                        image_of_product: lhs,
                        product_of_images: rhs,
                    });
                }
            }
        }
        let image = self.apply(s.unit());
        if image != t.unit() {
            out.push(HomFailure::Unit {
                image,
                expected: t.unit().to_vec(),
            });
        }
        out
    }

    /// Same source, target and images.
    pub fn same_as(&self, other: &RingHom) -> bool {
        self.source.structurally_eq(&other.source)
            && self.target.structurally_eq(&other.target)
            && self.matrix == other.matrix
    }
}

impl fmt::Display for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}:", self.source.name(), self.target.name())?;
        for (i, name) in self.source.basis_names().iter().enumerate() {
            write!(f, " {name} |-> {};", self.target.format_element(self.image(i)))?;
        }
        Ok(())
    }
}

/// Validates `matrix` as a homomorphism `source → target`, reporting the
/// first failing axiom.
pub fn make_hom(source: Arc<BasedRing>, target: Arc<BasedRing>, matrix: IntMatrix) -> Result<RingHom, RingError> {
    if matrix.rows() != source.dim() || matrix.cols() != target.dim() {
        return Err(RingError::Hom(HomFailure::Dimension {
            expected: (source.dim(), target.dim()),
            found: (matrix.rows(), matrix.cols()),
        }));
    }
    let hom = RingHom::from_parts_unchecked(source, target, matrix);
    match hom.failures().into_iter().next() {
        None => Ok(hom),
        Some(failure) => Err(RingError::Hom(failure)),
    }
}

/// `g ∘ f`.
pub fn hom_compose(g: &RingHom, f: &RingHom) -> Result<RingHom, RingError> {
    if !f.target.structurally_eq(&g.source) {
        return Err(RingError::NotComposable(format!(
            "target {} of the first map differs from source {} of the second",
            f.target.name(),
            g.source.name()
        )));
    }
    make_hom(f.source.clone(), g.target.clone(), f.matrix.mul(&g.matrix))
}

/// Bijectivity: trivial kernel modulo the source moduli and every target basis
/// vector in the image.
pub fn hom_is_iso(f: &RingHom) -> bool {
    let kernel = kernel_mod(&f.matrix, f.target.moduli(), f.source.moduli())
        .expect("hom matrix shape matches its rings");
    if kernel.rows() > 0 {
        return false;
    }
    let solver = LatticeSolver::with_moduli(&f.matrix, f.target.moduli())
        .expect("hom matrix shape matches its rings");
    (0..f.target.dim()).all(|k| solver.contains(&f.target.basis_vector(k)))
}

/// The map `ℤ/m → R` (`ℤ` when `m = 0`) sending `1` to `1_R`.
pub fn unit_hom(target: Arc<BasedRing>, modulus: u64) -> Result<RingHom, RingError> {
    let source = Arc::new(make_ground_ring(modulus));
    let matrix = IntMatrix::from_rows(target.dim(), [target.unit().to_vec()]);
    make_hom(source, target, matrix)
}

/// Linear extension of a map on basis elements (e.g. a group homomorphism
/// between group rings): basis element `i` goes to basis element `map[i]`.
pub fn make_group_ring_hom(
    source: Arc<BasedRing>,
    target: Arc<BasedRing>,
    map: &[usize],
) -> Result<RingHom, RingError> {
    if map.len() != source.dim() {
        return Err(RingError::Hom(HomFailure::Dimension {
            expected: (source.dim(), target.dim()),
            found: (map.len(), target.dim()),
        }));
    }
    if let Some(&bad) = map.iter().find(|&&k| k >= target.dim()) {
        return Err(RingError::Malformed(format!(
            "basis index {bad} out of range for {}",
            target.name()
        )));
    }
    let matrix = IntMatrix::from_rows(target.dim(), map.iter().map(|&k| target.basis_vector(k)));
    make_hom(source, target, matrix)
}
