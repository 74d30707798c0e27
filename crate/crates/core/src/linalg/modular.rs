//! Kernels, particular solutions and cokernels over ℤ with per-coordinate moduli.
//!
//! Row-vector convention throughout: a matrix `A` with `n` rows and `m`
//! columns maps `x ∈ ℤⁿ` to `x·A ∈ ℤᵐ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::normal_form::{hnf_in_place, snf};
use super::{check_dim, IntMatrix, LinalgError, Moduli};

/// Generators of `{x ∈ ℤⁿ : x·A ∈ rowspace(relations)}`, in row HNF.
pub fn kernel_rel(a: &IntMatrix, relations: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    check_dim("relation width vs matrix columns", a.cols(), relations.cols())?;
    let n = a.rows();
    let m = a.cols();
    // [ A  I ]
    // [ R  0 ]
    let top = a.hstack(&IntMatrix::identity(n));
    let bottom = relations.hstack(&IntMatrix::zeros(relations.rows(), n));
    let mut block = top.vstack(&bottom);
    let pivots = hnf_in_place(&mut block, None);
    let kernel_rows: Vec<usize> = pivots
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c >= m)
        .map(|(i, _)| i)
        .collect();
    Ok(block.select_rows(&kernel_rows).columns(m..m + n))
}

/// Canonical generators of `{x : x·A ≡ 0 mod target}` modulo the source moduli.
///
/// The result is the row HNF of the kernel lattice (which contains every
/// `sᵢ·eᵢ`), with the rows that are already zero modulo the source moduli
/// removed. Equal kernels give equal matrices. `A` is assumed to define a map
/// `⊕ ℤ/sᵢ → ⊕ ℤ/tⱼ`, i.e. `sᵢ·Aᵢⱼ ≡ 0 mod tⱼ`.
pub fn kernel_mod(
    a: &IntMatrix,
    target: &Moduli,
    source: &Moduli,
) -> Result<IntMatrix, LinalgError> {
    check_dim("source moduli vs matrix rows", a.rows(), source.len())?;
    check_dim("target moduli vs matrix columns", a.cols(), target.len())?;
    let kernel = kernel_rel(a, &target.relation_rows())?;
    Ok(canonical_mod(&kernel, source))
}

/// Row HNF of `rows ∪ {sᵢ·eᵢ}` with rows vanishing modulo `moduli` dropped.
pub(crate) fn canonical_mod(rows: &IntMatrix, moduli: &Moduli) -> IntMatrix {
    let mut stacked = rows.vstack(&moduli.relation_rows());
    hnf_in_place(&mut stacked, None);
    IntMatrix::from_rows(
        stacked.cols(),
        stacked
            .row_iter()
            .filter(|r| !moduli.is_zero(r))
            .map(<[BigInt]>::to_vec),
    )
}

/// Reusable solver for `x·A ≡ b` modulo a relation lattice on the columns.
///
/// Holds the HNF of `[A; relations]` together with its transform so that many
/// right-hand sides can be solved against the same system.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    unknowns: usize,
    form: IntMatrix,
    transform: IntMatrix,
    pivots: Vec<usize>,
}

impl LatticeSolver {
    pub fn new(a: &IntMatrix, relations: &IntMatrix) -> Result<Self, LinalgError> {
        check_dim("relation width vs matrix columns", a.cols(), relations.cols())?;
        let mut form = a.vstack(relations);
        let mut transform = IntMatrix::identity(form.rows());
        let pivots = hnf_in_place(&mut form, Some(&mut transform));
        Ok(Self {
            unknowns: a.rows(),
            form,
            transform,
            pivots,
        })
    }

    pub fn with_moduli(a: &IntMatrix, target: &Moduli) -> Result<Self, LinalgError> {
        check_dim("target moduli vs matrix columns", a.cols(), target.len())?;
        Self::new(a, &target.relation_rows())
    }

    /// Some `x` with `x·A - b ∈ rowspace(relations)`, or `None`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.form.cols(), "right-hand side has wrong length");
        let y = echelon_solve(&self.form, &self.pivots, b)?;
        let mut x = vec![BigInt::zero(); self.unknowns];
        for (yi, row) in y.iter().zip(self.transform.row_iter()) {
            if yi.is_zero() {
                continue;
            }
            for (xj, t) in x.iter_mut().zip(row) {
                if !t.is_zero() {
                    *xj += yi * t;
                }
            }
        }
        Some(x)
    }

    /// Whether `b` lies in `rowspace(A) + rowspace(relations)`.
    pub fn contains(&self, b: &[BigInt]) -> bool {
        echelon_solve(&self.form, &self.pivots, b).is_some()
    }

    /// Canonical representative of `b` modulo `rowspace(A) + rowspace(relations)`.
    pub fn normalize(&self, b: &[BigInt]) -> Vec<BigInt> {
        let mut out = b.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let q = out[c].div_floor(&self.form[(i, c)]);
            if q.is_zero() {
                continue;
            }
            for (o, h) in out.iter_mut().zip(self.form.row(i)) {
                if !h.is_zero() {
                    *o -= &q * h;
                }
            }
        }
        out
    }
}

/// Solves `y·H = b` exactly for `H` in row echelon form with the given pivots.
pub(crate) fn echelon_solve(h: &IntMatrix, pivots: &[usize], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut residual = b.to_vec();
    let mut y = Vec::with_capacity(pivots.len());
    for (i, &c) in pivots.iter().enumerate() {
        let (q, r) = residual[c].div_rem(&h[(i, c)]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (res, x) in residual.iter_mut().zip(h.row(i)) {
                if !x.is_zero() {
                    *res -= &q * x;
                }
            }
        }
        y.push(q);
    }
    residual.iter().all(Zero::is_zero).then_some(y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub particular: Option<Vec<BigInt>>,
    pub kernel: IntMatrix,
}

/// A solution of `x·A ≡ b mod target` (reduced modulo `source`) when one
/// exists, together with the canonical kernel.
pub fn solve_mod(
    a: &IntMatrix,
    b: &[BigInt],
    target: &Moduli,
    source: &Moduli,
) -> Result<SolveResult, LinalgError> {
    check_dim("right-hand side vs matrix columns", a.cols(), b.len())?;
    let kernel = kernel_mod(a, target, source)?;
    let solver = LatticeSolver::with_moduli(a, target)?;
    let particular = solver.solve(b).map(|mut x| {
        source.reduce(&mut x);
        x
    });
    Ok(SolveResult { particular, kernel })
}

/// Invariant factors of `ℤᵐ / (rowspace(A) + rowspace(target moduli))`.
///
/// Unit factors are omitted; each free summand is reported as `0`, after all
/// torsion factors.
pub fn cokernel_invariants(a: &IntMatrix, target: &Moduli) -> Result<Vec<BigInt>, LinalgError> {
    check_dim("target moduli vs matrix columns", a.cols(), target.len())?;
    Ok(presented_group_invariants(&a.vstack(&target.relation_rows())))
}

/// Invariant factors of `ℤᵐ / rowspace(relations)`, unit factors omitted and free
/// summands reported as trailing zeros.
pub(crate) fn presented_group_invariants(relations: &IntMatrix) -> Vec<BigInt> {
    let mut reduced = relations.clone();
    let pivots = hnf_in_place(&mut reduced, None);
    let reduced = reduced.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
    let diag = snf(&reduced).invariant_factors;
    let rank = diag.len();
    diag.into_iter()
        .filter(|d| !d.is_one())
        .chain(std::iter::repeat_n(BigInt::zero(), relations.cols() - rank))
        .collect()
}

/// A subgroup of `⊕ ℤ/mᵢ` written as a direct sum of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    /// Row HNF of the subgroup lattice, rows vanishing modulo the ambient moduli removed.
    pub canonical: IntMatrix,
    /// Generators `gᵢ` with the subgroup equal to `⊕ ⟨gᵢ⟩`.
    pub generators: IntMatrix,
    /// Additive order of each generator, `0` for infinite order.
    pub orders: Moduli,
}

/// Presents the subgroup generated by `rows` inside `⊕ ℤ/mᵢ` as a direct sum
/// of cyclic groups.
///
/// When the relations among the canonical HNF rows are already diagonal, the
/// canonical rows themselves are the generators; otherwise the generators come
/// from a Smith normal form change of basis.
pub fn present_subgroup(rows: &IntMatrix, ambient: &Moduli) -> Result<SubgroupPresentation, LinalgError> {
    check_dim("subgroup generators vs ambient rank", ambient.len(), rows.cols())?;
    let modulus_rows = ambient.relation_rows();
    let mut lattice = rows.vstack(&modulus_rows);
    let pivots = hnf_in_place(&mut lattice, None);
    let h = lattice.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
    let canonical = IntMatrix::from_rows(
        h.cols(),
        h.row_iter()
            .filter(|r| !ambient.is_zero(r))
            .map(<[BigInt]>::to_vec),
    );
    // Relations among the rows of h: coordinates of every modulus row.
    let coords = IntMatrix::from_rows(
        h.rows(),
        modulus_rows.row_iter().map(|r| {
            echelon_solve(&h, &pivots, r).expect("modulus rows lie in the subgroup lattice")
        }),
    );
    let mut rel = coords.clone();
    let rel_pivots = hnf_in_place(&mut rel, None);
    let diagonal = rel_pivots
        .iter()
        .enumerate()
        .all(|(i, &c)| rel.row(i).iter().enumerate().all(|(j, x)| j == c || x.is_zero()));

    let (gens, orders): (Vec<Vec<BigInt>>, Vec<BigInt>) = if diagonal {
        let mut order = vec![BigInt::zero(); h.rows()];
        for (i, &c) in rel_pivots.iter().enumerate() {
            order[c] = rel[(i, c)].clone();
        }
        h.row_iter()
            .zip(order)
            .filter(|(_, d)| !d.is_one())
            .map(|(r, d)| (r.to_vec(), d))
            .unzip()
    } else {
        let s = snf(&coords);
        let v = s.right_transform.expect("snf returns a right transform");
        let v_inv = super::hnf(&v).left_transform;
        let new_gens = v_inv.mul(&h);
        let mut order = vec![BigInt::zero(); h.rows()];
        for (i, d) in s.invariant_factors.iter().enumerate() {
            order[i] = d.clone();
        }
        new_gens
            .row_iter()
            .zip(order)
            .filter(|(_, d)| !d.is_one())
            .map(|(r, d)| (ambient.reduced(r), d))
            .unzip()
    };
    Ok(SubgroupPresentation {
        canonical,
        generators: IntMatrix::from_rows(ambient.len(), gens),
        orders: Moduli::new(orders),
    })
}
