//! A fixed stock of small rings and maps between them, for property suites
//! and demonstrations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::IntMatrix;
use crate::rings::{
    make_ground_ring, make_group_ring, make_group_ring_hom, make_hom, make_matrix_ring,
    make_product_ring, make_upper_triangular, unit_hom, BasedRing, CayleyTable, RingHom,
};

/// One representative of every group of order at most 8.
pub fn small_groups() -> Vec<CayleyTable> {
    let c2 = CayleyTable::cyclic(2);
    let c4 = CayleyTable::cyclic(4);
    let c2c2 = CayleyTable::direct_product(&c2, &c2);
    let mut groups: Vec<CayleyTable> = (1..=8).map(CayleyTable::cyclic).collect();
    groups.extend([
        c2c2.clone(),
        CayleyTable::dihedral(6),
        CayleyTable::direct_product(&c2, &c4),
        CayleyTable::direct_product(&c2c2, &c2),
        CayleyTable::dihedral(8),
        CayleyTable::quaternion(),
    ]);
    groups
}

/// Finite rings with at most `limit` elements: group rings of groups of order
/// at most 8 over ℤ/2 and ℤ/3, matrix and upper triangular rings of size at
/// most 2, and products of the smaller ones.
pub fn oracle_rings(limit: u64) -> Vec<Arc<BasedRing>> {
    let limit = BigInt::from(limit);
    let mut out = Vec::new();
    for m in [2u64, 3] {
        for g in small_groups() {
            out.push(make_group_ring(&g, m));
        }
        let k = make_ground_ring(m);
        let ut = make_upper_triangular(2, m);
        let mat = make_matrix_ring(2, m);
        out.extend([
            make_matrix_ring(1, m),
            ut.clone(),
            mat.clone(),
            make_product_ring(&k, &k),
            make_product_ring(&k, &ut),
            make_product_ring(&ut, &ut),
            make_product_ring(&k, &mat),
            make_product_ring(&mat, &mat),
        ]);
    }
    let z2 = make_ground_ring(2);
    let z3 = make_ground_ring(3);
    out.push(make_product_ring(&z2, &z3));
    out.push(make_product_ring(&make_matrix_ring(2, 2), &z3));
    out.into_iter()
        .filter(|r| r.order().is_some_and(|o| o <= limit))
        .map(Arc::new)
        .collect()
}

/// Rings and ring maps forming a graph in which every ring has an outgoing map.
#[derive(Clone, Debug)]
pub struct Corpus {
    rings: Vec<Arc<BasedRing>>,
    homs: Vec<RingHom>,
}

struct Builder {
    rings: Vec<Arc<BasedRing>>,
    homs: Vec<RingHom>,
}

impl Builder {
    fn ring(&mut self, r: BasedRing) -> Arc<BasedRing> {
        let r = Arc::new(r);
        self.rings.push(r.clone());
        r
    }

    fn hom(&mut self, source: &Arc<BasedRing>, target: &Arc<BasedRing>, rows: &[&[i64]]) {
        let matrix = IntMatrix::from_i64(rows);
        let h = make_hom(source.clone(), target.clone(), matrix).expect("corpus maps are ring maps");
        self.homs.push(h);
    }

    fn group_hom(&mut self, source: &Arc<BasedRing>, target: &Arc<BasedRing>, map: &[usize]) {
        let h = make_group_ring_hom(source.clone(), target.clone(), map).expect("corpus maps are ring maps");
        self.homs.push(h);
    }
}

/// `x ↦ p·x·q` on `Mat2`, for `q = p⁻¹`.
fn conjugation(mat: &Arc<BasedRing>, p: &[i64; 4], q: &[i64; 4]) -> RingHom {
    let p: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
    let q: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
    let rows = (0..4).map(|k| mat.mul(&mat.mul(&p, &mat.basis_vector(k)), &q));
    make_hom(mat.clone(), mat.clone(), IntMatrix::from_rows(4, rows)).expect("conjugation is a ring map")
}

impl Corpus {
    /// The maps over ℤ/m (ℤ for `m = 0`) for each modulus given.
    pub fn new(moduli: &[u64]) -> Self {
        let mut b = Builder {
            rings: Vec::new(),
            homs: Vec::new(),
        };
        for &m in moduli {
            let k = b.ring(make_ground_ring(m));
            let kk = b.ring(make_product_ring(&k, &k));
            let ut = b.ring(make_upper_triangular(2, m));
            let mat = b.ring(make_matrix_ring(2, m));
            let c2 = CayleyTable::cyclic(2);
            let c2c2 = CayleyTable::direct_product(&c2, &c2);
            let d6 = CayleyTable::dihedral(6);
            let g_c2 = b.ring(make_group_ring(&c2, m));
            let g_c3 = b.ring(make_group_ring(&CayleyTable::cyclic(3), m));
            let g_c4 = b.ring(make_group_ring(&CayleyTable::cyclic(4), m));
            let g_v4 = b.ring(make_group_ring(&c2c2, m));
            let g_d6 = b.ring(make_group_ring(&d6, m));

            for r in b.rings.clone().iter().filter(|r| r.moduli().iter().all(|x| x.to_u64() == Some(m))) {
                b.homs.push(RingHom::identity(r.clone()));
                if r.dim() > 1 {
                    b.homs.push(unit_hom(r.clone(), m).expect("unit map"));
                }
            }
            b.hom(&kk, &ut, &[&[1, 0, 0], &[0, 0, 1]]);
            b.hom(&ut, &kk, &[&[1, 0], &[0, 0], &[0, 1]]);
            b.hom(&kk, &mat, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
            b.hom(&ut, &mat, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
            b.hom(&kk, &kk, &[&[0, 1], &[1, 0]]);
            b.hom(&kk, &k, &[&[1], &[0]]);
            b.hom(&kk, &k, &[&[0], &[1]]);
            b.hom(&ut, &k, &[&[1], &[0], &[0]]);
            b.homs.push(conjugation(&mat, &[1, 1, 0, 1], &[1, -1, 0, 1]));
            b.homs.push(conjugation(&mat, &[0, 1, 1, 0], &[0, 1, 1, 0]));

            b.group_hom(&g_c2, &g_c4, &[0, 2]);
            b.group_hom(&g_c4, &g_c2, &[0, 1, 0, 1]);
            b.group_hom(&g_c2, &g_d6, &[0, 3]);
            b.group_hom(&g_d6, &g_c2, &[0, 0, 0, 1, 1, 1]);
            b.group_hom(&g_c3, &g_d6, &[0, 1, 2]);
            b.group_hom(&g_v4, &g_c2, &[0, 0, 1, 1]);
            b.group_hom(&g_v4, &g_c2, &[0, 1, 1, 0]);
            b.group_hom(&g_c2, &g_v4, &[0, 2]);
            b.group_hom(&g_c2, &g_v4, &[0, 3]);
            for g in [&g_c2, &g_c3, &g_c4, &g_v4, &g_d6] {
                let ones: Vec<&[i64]> = vec![&[1]; g.dim()];
                b.hom(g, &k, &ones);
            }
            if m == 3 {
                // The idempotents (1 ± g)/2 split k[C2] as k × k.
                b.hom(&g_c2, &kk, &[&[1, 1], &[1, 2]]);
                b.hom(&kk, &g_c2, &[&[2, 2], &[2, 1]]);
            }
        }
        Self {
            rings: b.rings,
            homs: b.homs,
        }
    }

    /// Maps over ℤ, ℤ/2 and ℤ/3.
    pub fn standard() -> Self {
        Self::new(&[0, 2, 3])
    }

    pub fn rings(&self) -> &[Arc<BasedRing>] {
        &self.rings
    }

    pub fn homs(&self) -> &[RingHom] {
        &self.homs
    }

    pub fn find_ring(&self, name: &str) -> Option<&Arc<BasedRing>> {
        self.rings.iter().find(|r| r.name() == name)
    }

    /// Maps whose source is the target of `f`.
    pub fn after<'a>(&'a self, f: &'a RingHom) -> impl Iterator<Item = &'a RingHom> + 'a {
        self.homs.iter().filter(move |g| g.source().structurally_eq(f.target()))
    }

    /// Every composable pair `(f, g)`, `f` applied first.
    pub fn pairs(&self) -> Vec<(RingHom, RingHom)> {
        self.homs
            .iter()
            .flat_map(|f| self.after(f).map(move |g| (f.clone(), g.clone())))
            .collect()
    }

    /// Seeded random composable triples `[f, g, h]`, `f` applied first.
    pub fn sample_triples(&self, count: usize, seed: u64) -> Vec<[RingHom; 3]> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let f = self.homs.choose(&mut rng).expect("corpus has maps");
                let g = self.choose_after(f, &mut rng);
                let h = self.choose_after(g, &mut rng);
                [f.clone(), g.clone(), h.clone()]
            })
            .collect()
    }

    fn choose_after<'a>(&'a self, f: &'a RingHom, rng: &mut ChaCha8Rng) -> &'a RingHom {
        let options: Vec<&RingHom> = self.after(f).collect();
        options.choose(rng).copied().expect("every corpus ring has an identity map")
    }
}
