//! Cospans of rings, pushouts handled symbolically as words, and the lax
//! functor sending `f: R → S` to the cospan `Z(R) → Z(f) ← Z(S)`.
//!
//! A pushout of rings (an amalgamated free product) is infinite in general, so
//! it is never built. A chain of composable cospans is kept as a
//! [`FormalPushout`]; its elements are represented by words whose letters are
//! elements of the apexes, and every comparison happens after evaluating a
//! word through a [`Cocone`], that is through homomorphisms out of each apex
//! that agree on the shared feet.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::factorization::{center, centralizer, FactorizationError, Subring};
use crate::morita::{center_bimodule_from, compositor_matrix, Bimodule, MoritaError};
pub use crate::report::LaxMode;
use crate::report::{witness, CheckResult, LaxReport};
use crate::rings::{hom_compose, make_hom, BasedRing, RingElement, RingError, RingHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CospanError {
    #[error("legs do not share an apex: {0}")]
    LegMismatch(String),
    #[error("cospans do not share a foot: {0}")]
    FootMismatch(String),
    #[error("cocone maps disagree on basis element {basis} of shared foot {foot}")]
    Agreement { foot: usize, basis: usize },
    #[error("malformed cocone: {0}")]
    MalformedCocone(String),
    #[error("letter {position} does not belong to apex {tag}")]
    LetterMismatch { position: usize, tag: usize },
    #[error("bimodule is not compatibly a ring: {0}")]
    Incompatible(String),
    #[error("{0}")]
    NotInCentralizer(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
    #[error(transparent)]
    Morita(#[from] MoritaError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `X → W ← Y`.
#[derive(Clone, Debug)]
pub struct Cospan {
    left_leg: RingHom,
    right_leg: RingHom,
}

impl Cospan {
    pub fn new(left_leg: RingHom, right_leg: RingHom) -> Result<Self, CospanError> {
        if !left_leg.target().structurally_eq(right_leg.target()) {
            return Err(CospanError::LegMismatch(format!(
                "{} vs {}",
                left_leg.target().name(),
                right_leg.target().name()
            )));
        }
        Ok(Self { left_leg, right_leg })
    }

    pub fn identity(ring: Arc<BasedRing>) -> Self {
        let id = RingHom::identity(ring);
        Self {
            left_leg: id.clone(),
            right_leg: id,
        }
    }

    pub fn left_foot(&self) -> &Arc<BasedRing> {
        self.left_leg.source()
    }

    pub fn right_foot(&self) -> &Arc<BasedRing> {
        self.right_leg.source()
    }

    pub fn apex(&self) -> &Arc<BasedRing> {
        self.left_leg.target()
    }

    pub fn left_leg(&self) -> &RingHom {
        &self.left_leg
    }

    pub fn right_leg(&self) -> &RingHom {
        &self.right_leg
    }

    /// Same feet, apex and legs.
    pub fn same_as(&self, other: &Cospan) -> bool {
        self.left_leg.same_as(&other.left_leg) && self.right_leg.same_as(&other.right_leg)
    }
}

/// Maps `φ: X → X'`, `ψ: Y → Y'`, `δ: W → W'` with `δ∘f_X = f'_X∘φ` and `δ∘f_Y = f'_Y∘ψ`.
#[derive(Clone, Debug)]
pub struct CospanMorphism {
    pub left: RingHom,
    pub right: RingHom,
    pub apex: RingHom,
}

impl CospanMorphism {
    /// Checks both squares on the bases of the feet.
    pub fn new(source: &Cospan, target: &Cospan, left: RingHom, right: RingHom, apex: RingHom) -> Result<Self, CospanError> {
        let squares = [
            (&left, source.left_leg(), target.left_leg(), "left"),
            (&right, source.right_leg(), target.right_leg(), "right"),
        ];
        for (foot_map, leg, target_leg, side) in squares {
            let a = hom_compose(&apex, leg)
                .map_err(|e| CospanError::LegMismatch(format!("{side} square: {e}")))?;
            let b = hom_compose(target_leg, foot_map)
                .map_err(|e| CospanError::LegMismatch(format!("{side} square: {e}")))?;
            if a.matrix() != b.matrix() {
                return Err(CospanError::LegMismatch(format!("{side} square does not commute")));
            }
        }
        Ok(Self { left, right, apex })
    }
}

/// A composable chain of cospans `X → A₀ ← Y₀ → A₁ ← Y₁ → … ← Z`, standing for
/// the iterated pushout of the apexes over the shared feet `Yᵢ`.
#[derive(Clone, Debug)]
pub struct FormalPushout {
    cospans: Vec<Cospan>,
}

impl FormalPushout {
    pub fn single(c: Cospan) -> Self {
        Self { cospans: vec![c] }
    }

    /// Appends a cospan on the right; its left foot must be the current right foot.
    pub fn then(mut self, c: Cospan) -> Result<Self, CospanError> {
        let last = self.cospans.last().expect("a formal pushout has at least one cospan");
        if !last.right_foot().structurally_eq(c.left_foot()) {
            return Err(CospanError::FootMismatch(format!(
                "{} vs {}",
                last.right_foot().name(),
                c.left_foot().name()
            )));
        }
        self.cospans.push(c);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.cospans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cospans.is_empty()
    }

    pub fn cospans(&self) -> &[Cospan] {
        &self.cospans
    }

    pub fn apex(&self, i: usize) -> &Arc<BasedRing> {
        self.cospans[i].apex()
    }

    pub fn apexes(&self) -> Vec<Arc<BasedRing>> {
        self.cospans.iter().map(|c| c.apex().clone()).collect()
    }

    /// The foot shared by apexes `i` and `i + 1`.
    pub fn shared_foot(&self, i: usize) -> &Arc<BasedRing> {
        self.cospans[i].right_foot()
    }

    /// The two interior legs out of shared foot `i`.
    pub fn interior_legs(&self, i: usize) -> (&RingHom, &RingHom) {
        (self.cospans[i].right_leg(), self.cospans[i + 1].left_leg())
    }

    pub fn left_foot(&self) -> &Arc<BasedRing> {
        self.cospans[0].left_foot()
    }

    pub fn right_foot(&self) -> &Arc<BasedRing> {
        self.cospans[self.len() - 1].right_foot()
    }
}

/// Composite of `c1: X → W ← Y` and `c2: Y → V ← Z`.
pub fn compose_formal(c1: &Cospan, c2: &Cospan) -> Result<FormalPushout, CospanError> {
    FormalPushout::single(c1.clone()).then(c2.clone())
}

/// A letter of a pushout word: an element of apex `tag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub tag: usize,
    pub element: RingElement,
}

/// A product of apex elements, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PushoutWord {
    letters: Vec<Letter>,
}

impl PushoutWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// The word made of the unit of `ring`, tagged `tag`.
    pub fn unit(tag: usize, ring: Arc<BasedRing>) -> Self {
        Self {
            letters: vec![Letter {
                tag,
                element: RingElement::one(ring),
            }],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Rewrites every letter; `f` returns the new tag and element.
    pub fn map_letters(&self, mut f: impl FnMut(usize, &RingElement) -> (usize, RingElement)) -> Self {
        Self {
            letters: self
                .letters
                .iter()
                .map(|l| {
                    let (tag, element) = f(l.tag, &l.element);
                    Letter { tag, element }
                })
                .collect(),
        }
    }
}

impl fmt::Display for PushoutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("{}:({})", l.tag, l.element))
            .collect();
        write!(f, "[{}]", parts.join(" · "))
    }
}

/// Multiplies adjacent letters with the same tag and drops unit letters. A
/// word that reduces to nothing becomes the unit word on its first tag. No
/// rewriting across the shared feet is attempted.
pub fn word_reduce(w: &PushoutWord) -> PushoutWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for letter in &w.letters {
        if letter.element.is_one() {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.tag == letter.tag => {
                top.element = top.element.mul(&letter.element);
                if top.element.is_one() {
                    stack.pop();
                }
            }
            _ => stack.push(letter.clone()),
        }
    }
    if stack.is_empty() {
        if let Some(first) = w.letters.first() {
            return PushoutWord::unit(first.tag, first.element.ring().clone());
        }
    }
    PushoutWord { letters: stack }
}

/// One homomorphism out of each apex of a formal pushout, into a common ring.
#[derive(Clone, Debug)]
pub struct Cocone {
    target: Arc<BasedRing>,
    maps: Vec<RingHom>,
}

impl Cocone {
    /// Checks shapes and agreement on every shared foot.
    pub fn new(pushout: &FormalPushout, maps: Vec<RingHom>) -> Result<Self, CospanError> {
        let cocone = Self::from_parts_unchecked(pushout, maps)?;
        if let Some((foot, basis)) = cocone.disagreements(pushout).into_iter().next() {
            return Err(CospanError::Agreement { foot, basis });
        }
        Ok(cocone)
    }

    /// Checks shapes only.
    pub fn from_parts_unchecked(pushout: &FormalPushout, maps: Vec<RingHom>) -> Result<Self, CospanError> {
        if maps.len() != pushout.len() {
            return Err(CospanError::MalformedCocone(format!(
                "{} maps for {} apexes",
                maps.len(),
                pushout.len()
            )));
        }
        let target = maps[0].target().clone();
        for (i, m) in maps.iter().enumerate() {
            if !m.source().structurally_eq(pushout.apex(i)) {
                return Err(CospanError::MalformedCocone(format!("map {i} does not start at apex {i}")));
            }
            if !m.target().structurally_eq(&target) {
                return Err(CospanError::MalformedCocone(format!("map {i} has a different target")));
            }
        }
        Ok(Self { target, maps })
    }

    pub fn target(&self) -> &Arc<BasedRing> {
        &self.target
    }

    pub fn maps(&self) -> &[RingHom] {
        &self.maps
    }

    pub fn map_mut(&mut self, i: usize) -> &mut RingHom {
        &mut self.maps[i]
    }

    /// `(foot, basis)` pairs where `uᵢ∘f_Y ≠ uᵢ₊₁∘g_Y`.
    pub fn disagreements(&self, pushout: &FormalPushout) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for foot in 0..pushout.len().saturating_sub(1) {
            let (f_y, g_y) = pushout.interior_legs(foot);
            for y in 0..pushout.shared_foot(foot).dim() {
                let a = self.maps[foot].apply(f_y.image(y));
                let b = self.maps[foot + 1].apply(g_y.image(y));
                if a != b {
                    out.push((foot, y));
                }
            }
        }
        out
    }

    /// Image of a single letter.
    pub fn apply(&self, tag: usize, element: &RingElement) -> Result<RingElement, CospanError> {
        let map = self.maps.get(tag).ok_or(CospanError::LetterMismatch { position: 0, tag })?;
        if !map.source().structurally_eq(element.ring()) {
            return Err(CospanError::LetterMismatch { position: 0, tag });
        }
        Ok(RingElement::new(self.target.clone(), map.apply(element.coeffs())))
    }
}

/// The product of the images of the letters; the empty word evaluates to 1.
pub fn evaluate_word(w: &PushoutWord, cocone: &Cocone) -> Result<RingElement, CospanError> {
    let mut acc = RingElement::one(cocone.target.clone());
    for (position, letter) in w.letters.iter().enumerate() {
        let image = cocone
            .apply(letter.tag, &letter.element)
            .map_err(|_| CospanError::LetterMismatch { position, tag: letter.tag })?;
        acc = acc.mul(&image);
    }
    Ok(acc)
}

/// The cospan `R → B ← S`, `r ↦ 1·r`, `s ↦ s·1`, of an `(S, R)`-bimodule `B`
/// whose carrier is also the ring `ring`, compatibly with both actions.
pub fn orbit_cospan(b: &Bimodule, ring: &Arc<BasedRing>) -> Result<Cospan, CospanError> {
    if b.relations().rows() > 0 || b.moduli() != ring.moduli() {
        return Err(CospanError::Incompatible(
            "the carrier must be presented on the ring's basis".into(),
        ));
    }
    let n = ring.dim();
    let basis: Vec<Vec<BigInt>> = (0..n).map(|i| ring.basis_vector(i)).collect();
    let left_basis: Vec<Vec<BigInt>> = (0..b.left_ring().dim()).map(|k| b.left_ring().basis_vector(k)).collect();
    let right_basis: Vec<Vec<BigInt>> = (0..b.right_ring().dim()).map(|k| b.right_ring().basis_vector(k)).collect();
    for x in &basis {
        for y in &basis {
            let xy = ring.mul(x, y);
            for (k, a) in left_basis.iter().enumerate() {
                if !ring.elements_eq(&b.act_left(a, &xy), &ring.mul(&b.act_left(a, x), y)) {
                    return Err(CospanError::Incompatible(format!("left basis element {k}: a·(xy) ≠ (a·x)y")));
                }
            }
            for (k, c) in right_basis.iter().enumerate() {
                let lhs = ring.mul(x, &b.act_right(y, c));
                if !ring.elements_eq(&b.act_right(&xy, c), &lhs) {
                    return Err(CospanError::Incompatible(format!("right basis element {k}: (xy)·c ≠ x(y·c)")));
                }
            }
        }
    }
    let unit = ring.unit();
    let alpha_r = crate::linalg::IntMatrix::from_rows(n, right_basis.iter().map(|c| ring.moduli().reduced(&b.act_right(unit, c))));
    let alpha_s = crate::linalg::IntMatrix::from_rows(n, left_basis.iter().map(|a| ring.moduli().reduced(&b.act_left(a, unit))));
    let left_leg = make_hom(b.right_ring().clone(), ring.clone(), alpha_r)?;
    let right_leg = make_hom(b.left_ring().clone(), ring.clone(), alpha_s)?;
    Cospan::new(left_leg, right_leg)
}

fn restrict(
    source: &Subring,
    h: &RingHom,
    target: &Subring,
    what: &str,
) -> Result<RingHom, CospanError> {
    source
        .restrict(h, target)
        .ok_or_else(|| CospanError::NotInCentralizer(format!("{what} leaves {}", target.as_ring().name())))
}

/// `Z(R) → Z(f) ← Z(S)` from precomputed subrings.
pub fn center_cospan_from(
    f: &RingHom,
    z_f: &Subring,
    z_target: &Subring,
    z_source: &Subring,
) -> Result<Cospan, CospanError> {
    let left = restrict(z_source, f, z_f, "f on Z(R)")?;
    let right = restrict(z_target, &RingHom::identity(f.target().clone()), z_f, "the inclusion of Z(S)")?;
    Cospan::new(left, right)
}

/// `Z(R) → Z(f) ← Z(S)`, `r ↦ f(r)` and `s ↦ s`.
pub fn center_cospan(f: &RingHom) -> Result<Cospan, CospanError> {
    center_cospan_from(f, &centralizer(f)?, &center(f.target())?, &center(f.source())?)
}

/// The orbit cospan of `Z(f)` with its bimodule structure; equals [`center_cospan`].
pub fn center_orbit_cospan(f: &RingHom) -> Result<Cospan, CospanError> {
    let (z_f, z_s, z_r) = (centralizer(f)?, center(f.target())?, center(f.source())?);
    let b = center_bimodule_from(f, &z_f, &z_s, &z_r)?;
    orbit_cospan(&b, z_f.as_ring())
}

/// The compositor of `f: R → S`, `g: S → T`: a cocone from the formal pushout
/// `Z(f) ∐_{Z(S)} Z(g)` into `Z(g∘f)` (`s ↦ g(s)` on `Z(f)`, `t ↦ t` on
/// `Z(g)`), completed by identities on `Z(R)` and `Z(T)`.
#[derive(Clone, Debug)]
pub struct CompositorPhi {
    pub pushout: FormalPushout,
    pub cocone: Cocone,
    /// `Z(g∘f)` as a cospan `Z(R) → Z(g∘f) ← Z(T)`.
    pub target: Cospan,
    /// The centralizer `Z(g∘f)` that the cocone lands in.
    pub composite: Subring,
}

impl CompositorPhi {
    /// Agreement on `Z(S)` and the two outer squares with identities on `Z(R)`, `Z(T)`.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .cocone
            .disagreements(&self.pushout)
            .into_iter()
            .map(|(foot, basis)| format!("components disagree on basis element {basis} of shared foot {foot}"))
            .collect();
        let first = &self.pushout.cospans()[0];
        let last = &self.pushout.cospans()[self.pushout.len() - 1];
        let u = &self.cocone.maps()[0];
        let v = &self.cocone.maps()[self.pushout.len() - 1];
        for r in 0..first.left_foot().dim() {
            if u.apply(first.left_leg().image(r)) != self.target.left_leg().image(r) {
                out.push(format!("left square fails on basis element {r} of Z(R)"));
            }
        }
        for t in 0..last.right_foot().dim() {
            if v.apply(last.right_leg().image(t)) != self.target.right_leg().image(t) {
                out.push(format!("right square fails on basis element {t} of Z(T)"));
            }
        }
        out
    }
}

/// Builds [`CompositorPhi`] for `f` then `g`.
pub fn compositor_phi(f: &RingHom, g: &RingHom) -> Result<CompositorPhi, CospanError> {
    let centers = [center(f.source())?, center(f.target())?, center(g.target())?];
    compositor_phi_from(f, g, &centers, &centralizer(f)?, &centralizer(g)?)
}

fn compositor_phi_from(
    f: &RingHom,
    g: &RingHom,
    centers: &[Subring; 3],
    z_f: &Subring,
    z_g: &Subring,
) -> Result<CompositorPhi, CospanError> {
    if !f.target().structurally_eq(g.source()) {
        return Err(CospanError::NotComposable(format!(
            "{} is not {}",
            f.target().name(),
            g.source().name()
        )));
    }
    let [z_r, z_s, z_t] = centers;
    let gf = hom_compose(g, f)?;
    let z_gf = centralizer(&gf)?;
    let pushout = compose_formal(&center_cospan_from(f, z_f, z_s, z_r)?, &center_cospan_from(g, z_g, z_t, z_s)?)?;
    let phi_f = restrict(z_f, g, &z_gf, "g on Z(f)")?;
    let phi_g = restrict(z_g, &RingHom::identity(g.target().clone()), &z_gf, "the inclusion of Z(g)")?;
    let cocone = Cocone::new(&pushout, vec![phi_f, phi_g])?;
    let target = center_cospan_from(&gf, &z_gf, z_t, z_r)?;
    let phi = CompositorPhi {
        pushout,
        cocone,
        target,
        composite: z_gf,
    };
    if let Some(why) = phi.failures().into_iter().next() {
        return Err(CospanError::LegMismatch(why));
    }
    Ok(phi)
}

/// How words are drawn for the word-traced checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordSampling {
    /// Maximum number of letters.
    pub bound: usize,
    /// Number of words, the unit word included.
    pub samples: usize,
    pub seed: u64,
}

impl Default for WordSampling {
    fn default() -> Self {
        Self {
            bound: 4,
            samples: 200,
            seed: 42,
        }
    }
}

/// Basis elements and sums of two distinct basis elements.
fn spanning_set(ring: &Arc<BasedRing>) -> Vec<RingElement> {
    let n = ring.dim();
    let mut out: Vec<RingElement> = (0..n).map(|i| RingElement::basis(ring.clone(), i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(out[i].add(&out[j]));
        }
    }
    out
}

/// Seeded words with adjacent letters from different apexes, led by the unit word.
pub fn sample_words(apexes: &[Arc<BasedRing>], sampling: &WordSampling) -> Vec<PushoutWord> {
    assert!(!apexes.is_empty(), "need at least one apex");
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let pools: Vec<Vec<RingElement>> = apexes.iter().map(spanning_set).collect();
    let usable: Vec<usize> = (0..apexes.len()).filter(|&t| !pools[t].is_empty()).collect();
    let mut words = vec![PushoutWord::unit(0, apexes[0].clone())];
    while words.len() < sampling.samples.max(1) {
        let len = rng.gen_range(1..=sampling.bound.max(1));
        let mut letters = Vec::with_capacity(len);
        let mut previous: Option<usize> = None;
        for _ in 0..len {
            let choices: Vec<usize> = usable.iter().copied().filter(|&t| Some(t) != previous).collect();
            let Some(&tag) = choices.choose(&mut rng) else { break };
            let element = pools[tag].choose(&mut rng).expect("pool is non-empty").clone();
            letters.push(Letter { tag, element });
            previous = Some(tag);
        }
        words.push(PushoutWord::new(letters));
    }
    words
}

fn centralizer_in_target(w: &RingElement, z: &Subring) -> Vec<BigInt> {
    z.element(w.coeffs())
}

/// Data for the two lax unity squares of `f: R → S` in cospans. Fields are
/// public so that a check can be rerun on deliberately altered data.
#[derive(Clone, Debug)]
pub struct CospanUnity {
    pub f: RingHom,
    pub center_source: Subring,
    pub center_target: Subring,
    pub centralizer: Subring,
    pub cospan: Cospan,
    /// `𝒵(id_S)` and `𝒵(id_R)`; the unit 2-cells are identities.
    pub identity_target: Cospan,
    pub identity_source: Cospan,
    /// Compositors of `(f, id_S)` and `(id_R, f)`.
    pub phi_left: CompositorPhi,
    pub phi_right: CompositorPhi,
}

impl CospanUnity {
    pub fn new(f: &RingHom) -> Result<Self, CospanError> {
        let center_source = center(f.source())?;
        let center_target = center(f.target())?;
        let z_f = centralizer(f)?;
        let cospan = center_cospan_from(f, &z_f, &center_target, &center_source)?;
        let id_s = RingHom::identity(f.target().clone());
        let id_r = RingHom::identity(f.source().clone());
        let identity_target = center_cospan_from(&id_s, &center_target, &center_target, &center_target)?;
        let identity_source = center_cospan_from(&id_r, &center_source, &center_source, &center_source)?;
        let phi_left = compositor_phi_from(
            f,
            &id_s,
            &[center_source.clone(), center_target.clone(), center_target.clone()],
            &z_f,
            &center_target,
        )?;
        let phi_right = compositor_phi_from(
            &id_r,
            f,
            &[center_source.clone(), center_source.clone(), center_target.clone()],
            &center_source,
            &z_f,
        )?;
        Ok(Self {
            f: f.clone(),
            center_source,
            center_target,
            centralizer: z_f,
            cospan,
            identity_target,
            identity_source,
            phi_left,
            phi_right,
        })
    }

    pub fn check(&self, sampling: &WordSampling) -> Result<LaxReport, CospanError> {
        let mut report = LaxReport::default();
        let mut cells = CheckResult::new("unit 2-cells are identities: 𝒵(id) is the identity cospan of the center");
        if !self.identity_target.same_as(&Cospan::identity(self.center_target.as_ring().clone())) {
            cells.fail(format!("𝒵(id) on {} is not an identity cospan", self.f.target().name()));
        }
        if !self.identity_source.same_as(&Cospan::identity(self.center_source.as_ring().clone())) {
            cells.fail(format!("𝒵(id) on {} is not an identity cospan", self.f.source().name()));
        }
        report.push(cells);

        let mut comp = CheckResult::new("compositors with identities are cospan morphisms into Z(f)");
        for (label, phi) in [("φ_{f,id}", &self.phi_left), ("φ_{id,f}", &self.phi_right)] {
            if !phi.composite.same_as(&self.centralizer) {
                comp.fail(format!("{label}: the composite's centralizer differs from Z(f)"));
            }
            for why in phi.failures() {
                comp.fail(format!("{label}: {why}"));
            }
        }
        report.push(comp);

        let s = self.f.target();
        // Left square: Z(f) ∐_{Z(S)} Z(S) → Z(f) by the unitor (id, inclusion) against φ.
        let left_pushout = compose_formal(&self.cospan, &Cospan::identity(self.center_target.as_ring().clone()))?;
        let ell = Cocone::new(&left_pushout, vec![RingHom::identity(self.centralizer.as_ring().clone()), self.cospan.right_leg().clone()])?;
        report.push(self.trace(
            "lax unity (left): φ ∘ (id ∐ 𝒵_id) = ℓ",
            &left_pushout,
            &ell,
            &self.phi_left,
            s,
            sampling,
        )?);

        let right_pushout = compose_formal(&Cospan::identity(self.center_source.as_ring().clone()), &self.cospan)?;
        let r = Cocone::new(&right_pushout, vec![self.cospan.left_leg().clone(), RingHom::identity(self.centralizer.as_ring().clone())])?;
        report.push(self.trace(
            "lax unity (right): φ ∘ (𝒵_id ∐ id) = r",
            &right_pushout,
            &r,
            &self.phi_right,
            s,
            sampling,
        )?);
        Ok(report)
    }

    fn trace(
        &self,
        name: &str,
        pushout: &FormalPushout,
        unitor: &Cocone,
        phi: &CompositorPhi,
        s: &Arc<BasedRing>,
        sampling: &WordSampling,
    ) -> Result<CheckResult, CospanError> {
        let mut check = CheckResult::new(name);
        for w in sample_words(&pushout.apexes(), sampling) {
            let a = centralizer_in_target(&evaluate_word(&w, unitor)?, &self.centralizer);
            let b = centralizer_in_target(&evaluate_word(&w, &phi.cocone)?, &phi.composite);
            if a != b {
                check.fail(format!(
                    "word {w}: unitor gives {}, compositor gives {}",
                    witness(s, &a),
                    witness(s, &b)
                ));
            }
        }
        Ok(check)
    }
}

/// Data for the lax associativity square of `f: R → S`, `g: S → T`, `h: T → W`
/// in cospans. Fields are public so that a check can be rerun on deliberately
/// altered data.
#[derive(Clone, Debug)]
pub struct CospanAssociativity {
    pub f: RingHom,
    pub g: RingHom,
    pub h: RingHom,
    /// Apexes `Z(f)`, `Z(g)`, `Z(h)` over the feet `Z(S)`, `Z(T)`.
    pub pushout: FormalPushout,
    pub z_f: Subring,
    pub z_g: Subring,
    pub z_h: Subring,
    pub phi_hg: CompositorPhi,
    pub phi_gf: CompositorPhi,
    pub phi_hg_f: CompositorPhi,
    pub phi_h_gf: CompositorPhi,
}

impl CospanAssociativity {
    pub fn new(f: &RingHom, g: &RingHom, h: &RingHom) -> Result<Self, CospanError> {
        let [z_r, z_s, z_t, z_w] = [
            center(f.source())?,
            center(f.target())?,
            center(g.target())?,
            center(h.target())?,
        ];
        let (z_f, z_g, z_h) = (centralizer(f)?, centralizer(g)?, centralizer(h)?);
        let phi_hg = compositor_phi_from(g, h, &[z_s.clone(), z_t.clone(), z_w.clone()], &z_g, &z_h)?;
        let phi_gf = compositor_phi_from(f, g, &[z_r.clone(), z_s.clone(), z_t.clone()], &z_f, &z_g)?;
        let hg = hom_compose(h, g)?;
        let gf = hom_compose(g, f)?;
        let phi_hg_f = compositor_phi_from(f, &hg, &[z_r.clone(), z_s.clone(), z_w.clone()], &z_f, &phi_hg.composite)?;
        let phi_h_gf = compositor_phi_from(&gf, h, &[z_r.clone(), z_t.clone(), z_w.clone()], &phi_gf.composite, &z_h)?;
        let pushout = FormalPushout::single(center_cospan_from(f, &z_f, &z_s, &z_r)?)
            .then(center_cospan_from(g, &z_g, &z_t, &z_s)?)?
            .then(center_cospan_from(h, &z_h, &z_w, &z_t)?)?;
        Ok(Self {
            f: f.clone(),
            g: g.clone(),
            h: h.clone(),
            pushout,
            z_f,
            z_g,
            z_h,
            phi_hg,
            phi_gf,
            phi_hg_f,
            phi_h_gf,
        })
    }

    /// Left side: `φ_{h,g}` on the `Z(g)`, `Z(h)` letters, reduce, then `φ_{h∘g,f}`.
    pub fn left_path(&self, w: &PushoutWord) -> Result<Vec<BigInt>, CospanError> {
        let mut err = None;
        let staged = w.map_letters(|tag, e| match tag {
            0 => (0, e.clone()),
            _ => match self.phi_hg.cocone.apply(tag - 1, e) {
                Ok(x) => (1, x),
                Err(e2) => {
                    err = Some(e2);
                    (1, e.clone())
                }
            },
        });
        if let Some(e) = err {
            return Err(e);
        }
        let value = evaluate_word(&word_reduce(&staged), &self.phi_hg_f.cocone)?;
        Ok(self.phi_hg_f.composite.element(value.coeffs()))
    }

    /// Right side: `φ_{g,f}` on the `Z(f)`, `Z(g)` letters (so `s ↦ g(s)`),
    /// reduce, then `φ_{h,g∘f}` (apply `h`) and multiply in `W`.
    pub fn right_path(&self, w: &PushoutWord) -> Result<Vec<BigInt>, CospanError> {
        let mut err = None;
        let staged = w.map_letters(|tag, e| match tag {
            2 => (1, e.clone()),
            _ => match self.phi_gf.cocone.apply(tag, e) {
                Ok(x) => (0, x),
                Err(e2) => {
                    err = Some(e2);
                    (0, e.clone())
                }
            },
        });
        if let Some(e) = err {
            return Err(e);
        }
        let value = evaluate_word(&word_reduce(&staged), &self.phi_h_gf.cocone)?;
        Ok(self.phi_h_gf.composite.element(value.coeffs()))
    }

    /// Direct cocone into `W`: `h∘g` on `Z(f)`, `h` on `Z(g)`, inclusion on `Z(h)`.
    pub fn direct_cocone(&self) -> Result<Cocone, CospanError> {
        let w = self.h.target();
        let hg = hom_compose(&self.h, &self.g)?;
        let into_w = |z: &Subring, map: &RingHom| -> Result<RingHom, CospanError> {
            let rows = crate::linalg::IntMatrix::from_rows(
                w.dim(),
                z.generators().row_iter().map(|x| map.apply(x)),
            );
            Ok(make_hom(z.as_ring().clone(), w.clone(), rows)?)
        };
        Cocone::new(
            &self.pushout,
            vec![
                into_w(&self.z_f, &hg)?,
                into_w(&self.z_g, &self.h)?,
                into_w(&self.z_h, &RingHom::identity(w.clone()))?,
            ],
        )
    }

    pub fn check(&self, sampling: &WordSampling) -> Result<LaxReport, CospanError> {
        let mut report = LaxReport::default();
        let mut comps = CheckResult::new("compositor components land in Z(g∘f), agree on Z(S) and commute with the outer legs");
        for (label, phi) in [
            ("φ_{h,g}", &self.phi_hg),
            ("φ_{g,f}", &self.phi_gf),
            ("φ_{h∘g,f}", &self.phi_hg_f),
            ("φ_{h,g∘f}", &self.phi_h_gf),
        ] {
            for why in phi.failures() {
                comps.fail(format!("{label}: {why}"));
            }
        }
        report.push(comps);

        let mut composite = CheckResult::new("Z((h∘g)∘f) = Z(h∘(g∘f))");
        if !self.phi_hg_f.composite.same_as(&self.phi_h_gf.composite) {
            composite.fail("the two bracketings have different centralizers");
        }
        report.push(composite);

        let w = self.h.target();
        let direct = self.direct_cocone()?;
        let mut square = CheckResult::new(format!(
            "lax associativity on {} sampled words (bound {}, seed {})",
            sampling.samples, sampling.bound, sampling.seed
        ));
        let mut invariance = CheckResult::new("evaluation is invariant under word reduction");
        let mut amalgamation = CheckResult::new("evaluation respects the amalgamation over the shared feet");
        for (k, word) in sample_words(&self.pushout.apexes(), sampling).into_iter().enumerate() {
            if let Some(why) = amalgamation_witness(&self.pushout, &direct, &word, k)? {
                amalgamation.fail(why);
            }
            let a = self.left_path(&word)?;
            let b = self.right_path(&word)?;
            if a != b {
                square.fail(format!(
                    "word {word}: left path {}, right path {}",
                    witness(w, &a),
                    witness(w, &b)
                ));
            }
            let plain = evaluate_word(&word, &direct)?;
            let reduced = evaluate_word(&word_reduce(&word), &direct)?;
            if plain != reduced || plain.coeffs() != a.as_slice() {
                invariance.fail(format!("word {word}"));
            }
        }
        report.push(square);
        report.push(invariance);
        report.push(amalgamation);
        Ok(report)
    }
}

/// Inserts `f_Y(y)` into `word` and, separately, `g_Y(y)` with the next tag,
/// for a foot, basis element and position chosen from `k`; the two words must
/// evaluate alike.
fn amalgamation_witness(
    pushout: &FormalPushout,
    cocone: &Cocone,
    word: &PushoutWord,
    k: usize,
) -> Result<Option<String>, CospanError> {
    let feet = pushout.len().saturating_sub(1);
    if feet == 0 {
        return Ok(None);
    }
    let foot = k % feet;
    let dim = pushout.shared_foot(foot).dim();
    if dim == 0 {
        return Ok(None);
    }
    let y = (k / feet) % dim;
    let position = k % (word.len() + 1);
    let (f_y, g_y) = pushout.interior_legs(foot);
    let with = |tag: usize, leg: &RingHom| {
        let mut letters = word.letters().to_vec();
        letters.insert(
            position,
            Letter {
                tag,
                element: RingElement::new(leg.target().clone(), leg.image(y).to_vec()),
            },
        );
        PushoutWord::new(letters)
    };
    let a = evaluate_word(&with(foot, f_y), cocone)?;
    let b = evaluate_word(&with(foot + 1, g_y), cocone)?;
    Ok((a != b).then(|| format!("word {word}, foot {foot}, basis element {y}, position {position}")))
}

/// Word-traced lax unity checks on every map of `chain`, or lax associativity
/// on the chain `[f, g, h]` (`f` applied first).
pub fn verify_lax_cospan(
    chain: &[RingHom],
    mode: LaxMode,
    sampling: &WordSampling,
) -> Result<LaxReport, CospanError> {
    match mode {
        LaxMode::Unity => {
            let mut report = LaxReport::default();
            for (i, f) in chain.iter().enumerate() {
                let mut part = CospanUnity::new(f)?.check(sampling)?;
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
            [f, g, h] => CospanAssociativity::new(f, g, h)?.check(sampling),
            _ => Err(CospanError::NotComposable(format!(
                "associativity needs exactly three maps, got {}",
                chain.len()
            ))),
        },
    }
}

/// For every generator pair, the word `(t, s)` evaluated through `φ` equals
/// `μ(t ⊗ s)` from the bimodule compositor. Returns the failing pairs.
pub fn compare_with_tensor_compositor(f: &RingHom, g: &RingHom) -> Result<Vec<(usize, usize)>, CospanError> {
    let phi = compositor_phi(f, g)?;
    let z_f = centralizer(f)?;
    let z_g = centralizer(g)?;
    let mu = compositor_matrix(g, &z_g, &z_f, &phi.composite)?;
    let mut out = Vec::new();
    for i in 0..z_g.rank() {
        for j in 0..z_f.rank() {
            let word = PushoutWord::new(vec![
                Letter {
                    tag: 1,
                    element: RingElement::basis(z_g.as_ring().clone(), i),
                },
                Letter {
                    tag: 0,
                    element: RingElement::basis(z_f.as_ring().clone(), j),
                },
            ]);
            let value = evaluate_word(&word, &phi.cocone)?;
            if value.coeffs() != mu.row(i * z_f.rank() + j) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Basis triples `(s, s', r)` of `Z(f)`, `Z(f)`, `Z(R)` where `s(s'·r) ≠ (s·r)s'`.
pub fn ring_action_compatibility_failures(f: &RingHom) -> Result<Vec<(usize, usize, usize)>, CospanError> {
    let z_f = centralizer(f)?;
    let z_r = center(f.source())?;
    let s = f.target();
    let mut out = Vec::new();
    for a in 0..z_f.rank() {
        for b in 0..z_f.rank() {
            for c in 0..z_r.rank() {
                let x = z_f.generators().row(a);
                let y = z_f.generators().row(b);
                let fr = f.apply(z_r.generators().row(c));
                if s.mul(x, &s.mul(y, &fr)) != s.mul(&s.mul(x, &fr), y) {
                    out.push((a, b, c));
                }
            }
        }
    }
    Ok(out)
}
