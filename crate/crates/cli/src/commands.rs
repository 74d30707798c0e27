use std::path::{Path, PathBuf};
use std::sync::Arc;

use centralizer::cospan::{compare_with_tensor_compositor, compositor_phi, verify_lax_cospan, WordSampling};
use centralizer::factorization::{center, centralizer, Subring};
use centralizer::linalg::{cokernel_invariants, IntMatrix};
use centralizer::morita::{center_bimodule, compositor_mu, verify_lax_morita, LaxMode};
use centralizer::rings::{
    hom_compose, hom_is_iso, make_ground_ring, make_group_ring, make_group_ring_hom, make_hom,
    make_matrix_ring, make_product_ring, make_upper_triangular, unit_hom, BasedRing, CayleyTable, RingHom,
};
use num_bigint::BigInt;
use thiserror::Error;

use crate::input::{read_hom, read_ring, InputError};
use crate::report::{Check, Report};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Example {
    Intro,
    Matrix,
    Dkr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Morita,
    Cospan,
}

fn invalid(e: impl ToString) -> CommandError {
    CommandError::Invalid(e.to_string())
}

fn coeffs(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn describe_subring(z: &Subring) -> Vec<String> {
    let ring = z.ambient();
    let order = z
        .as_ring()
        .order()
        .map_or_else(|| "infinite".to_string(), |o| o.to_string());
    let mut lines = vec![format!("rank {}, order {order}", z.rank())];
    for (g, m) in z.generators().row_iter().zip(z.moduli().iter()) {
        let additive = if m == &BigInt::from(0) { "free".to_string() } else { format!("order {m}") };
        lines.push(format!("  {} {}  ({additive})", ring.format_element(g), coeffs(g)));
    }
    lines
}

pub fn run_example(example: Example, command: Vec<String>) -> Result<Report, CommandError> {
    let mut report = Report::new(command, None);
    match example {
        Example::Intro => intro(&mut report)?,
        Example::Matrix => matrix(&mut report)?,
        Example::Dkr => dkr(&mut report)?,
    }
    Ok(report)
}

fn intro(report: &mut Report) -> Result<(), CommandError> {
    let d6 = CayleyTable::dihedral(6);
    let zc2 = Arc::new(make_group_ring(&CayleyTable::cyclic(2), 0));
    let zd6 = Arc::new(make_group_ring(&d6, 0));
    let s = d6.index_of("s").expect("D6 has a reflection s");
    let sign: Vec<usize> = d6.names().iter().map(|n| usize::from(n.starts_with('s'))).collect();
    let phi = make_group_ring_hom(zc2.clone(), zd6.clone(), &[0, s]).map_err(invalid)?;
    let psi = make_group_ring_hom(zd6.clone(), zc2.clone(), &sign).map_err(invalid)?;
    let round_trip = hom_compose(&psi, &phi).map_err(invalid)?;
    report.push(Check::expect("ψ̃∘φ̃: Z[C2] → Z[C2] is an isomorphism", hom_is_iso(&round_trip), || {
        format!("matrix {:?}", round_trip.matrix().to_rows())
    }));

    let z = center(&zd6).map_err(invalid)?;
    let image = phi.apply(&zc2.basis_vector(1));
    report.push(Check::expect("φ̃([1]) = s is not in Z(Z[D6])", !z.contains(&image), || {
        format!("{} is central", zd6.format_element(&image))
    }));
    report.note("Z(Z[D6]):");
    for line in describe_subring(&z) {
        report.note(format!("  {line}"));
    }

    let restricted = IntMatrix::from_rows(2, z.generators().row_iter().map(|v| psi.apply(v)));
    let coker = cokernel_invariants(&restricted, zc2.moduli()).map_err(invalid)?;
    report.push(Check::expect(
        "ψ̃ restricted to Z(Z[D6]) is not surjective onto Z(Z[C2])",
        !coker.is_empty(),
        || "cokernel is trivial".into(),
    ));
    report.note(format!("cokernel invariant factors: {}", coeffs(&coker)));
    Ok(())
}

fn matrix(report: &mut Report) -> Result<(), CommandError> {
    let mat = Arc::new(make_matrix_ring(2, 2));
    let phi = unit_hom(mat.clone(), 2).map_err(invalid)?;
    let z = centralizer(&phi).map_err(invalid)?;
    report.push(Check::expect("Z(φ: Z/2 → Mat2(Z/2)) is the whole matrix ring", z.is_whole_ring(), || {
        describe_subring(&z).join("; ")
    }));
    let order = z.as_ring().order();
    report.push(Check::expect("|Z(φ)| = 16", order == Some(BigInt::from(16)), || format!("{order:?}")));
    let a: Vec<BigInt> = [1, 1, 0, 1].map(BigInt::from).to_vec();
    let b: Vec<BigInt> = [1, 0, 1, 1].map(BigInt::from).to_vec();
    let (ab, ba) = (mat.mul(&a, &b), mat.mul(&b, &a));
    let expected_ab: Vec<BigInt> = [0, 1, 1, 1].map(BigInt::from).to_vec();
    let expected_ba: Vec<BigInt> = [1, 1, 1, 0].map(BigInt::from).to_vec();
    report.push(Check::expect(
        "[[1,1],[0,1]]·[[1,0],[1,1]] = [[0,1],[1,1]] ≠ [[1,1],[1,0]] = [[1,0],[1,1]]·[[1,1],[0,1]]",
        ab == expected_ab && ba == expected_ba,
        || format!("AB = {}, BA = {}", coeffs(&ab), coeffs(&ba)),
    ));
    report.note(format!("AB = {} = {}", mat.format_element(&ab), coeffs(&ab)));
    report.note(format!("BA = {} = {}", mat.format_element(&ba), coeffs(&ba)));
    Ok(())
}

fn dkr(report: &mut Report) -> Result<(), CommandError> {
    for p in [2u64, 3] {
        let k = make_ground_ring(p);
        let r = Arc::new(make_product_ring(&k, &k));
        let s = Arc::new(make_upper_triangular(2, p));
        let incl = make_hom(r.clone(), s.clone(), IntMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1]])).map_err(invalid)?;
        let proj = make_hom(s, r, IntMatrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1]])).map_err(invalid)?;
        let mu = compositor_mu(&incl, &proj).map_err(invalid)?;
        let (source, target) = (mu.source().order(), mu.target().order());
        let pb = BigInt::from(p);
        report.push(Check::expect(
            format!("p = {p}: |Z(g) ⊗ Z(f)| = p⁴ and |Z(g∘f)| = p²"),
            source == Some(pb.pow(4)) && target == Some(pb.pow(2)),
            || format!("{source:?} and {target:?}"),
        ));
        let failures = mu.failures();
        report.push(Check::expect(format!("p = {p}: μ is a bimodule map"), failures.is_empty(), || failures.join("; ")));
        report.push(Check::expect(format!("p = {p}: μ is not injective"), !mu.is_injective(), || "μ is injective".into()));
        report.note(format!(
            "p = {p}: tensor invariant factors {}, sizes ({}, {})",
            coeffs(&mu.source().invariant_factors()),
            source.map_or("∞".into(), |o| o.to_string()),
            target.map_or("∞".into(), |o| o.to_string())
        ));
    }
    Ok(())
}

pub struct VerifyOptions {
    pub files: Vec<PathBuf>,
    pub target: Target,
    pub sampling: WordSampling,
}

pub fn verify(options: &VerifyOptions, command: Vec<String>) -> Result<Report, CommandError> {
    if options.files.is_empty() || options.files.len() > 3 {
        return Err(invalid("verify takes one to three hom files"));
    }
    if options.sampling.bound == 0 {
        return Err(invalid("--word-len must be at least 1"));
    }
    let chain = options
        .files
        .iter()
        .map(|p| read_hom(p))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, pair) in chain.windows(2).enumerate() {
        if !pair[0].target().structurally_eq(pair[1].source()) {
            return Err(invalid(format!(
                "maps {} and {} are not composable: {} is not {}",
                i + 1,
                i + 2,
                pair[0].target().name(),
                pair[1].source().name()
            )));
        }
    }
    let seed = (options.target == Target::Cospan).then_some(options.sampling.seed);
    let mut report = Report::new(command, seed);
    for (i, f) in chain.iter().enumerate() {
        report.note(format!("map {}: {} -> {}", i + 1, f.source().name(), f.target().name()));
        let z = centralizer(f).map_err(invalid)?;
        report.note(format!("  Z(f{}): {}", i + 1, describe_subring(&z)[0]));
    }
    match options.target {
        Target::Morita => verify_morita(&chain, &mut report)?,
        Target::Cospan => verify_cospan(&chain, &options.sampling, &mut report)?,
    }
    Ok(report)
}

fn verify_morita(chain: &[RingHom], report: &mut Report) -> Result<(), CommandError> {
    for (i, f) in chain.iter().enumerate() {
        let built = center_bimodule(f);
        report.push(Check::expect(format!("map {}: Z(f) is a (Z(S), Z(R))-bimodule", i + 1), built.is_ok(), || {
            built.as_ref().err().map(ToString::to_string).unwrap_or_default()
        }));
        let unity = verify_lax_morita(std::slice::from_ref(f), LaxMode::Unity).map_err(invalid)?;
        report.extend(&format!("map {}", i + 1), unity);
    }
    for (i, pair) in chain.windows(2).enumerate() {
        let mu = compositor_mu(&pair[0], &pair[1]).map_err(invalid)?;
        let failures = mu.failures();
        report.push(Check::expect(
            format!("maps {}-{}: μ is a well-defined bimodule map into Z(g∘f)", i + 1, i + 2),
            failures.is_empty(),
            || failures.join("; "),
        ));
    }
    if chain.len() == 3 {
        let assoc = verify_lax_morita(chain, LaxMode::Associativity).map_err(invalid)?;
        report.extend("", assoc);
    }
    Ok(())
}

fn verify_cospan(chain: &[RingHom], sampling: &WordSampling, report: &mut Report) -> Result<(), CommandError> {
    for (i, f) in chain.iter().enumerate() {
        let unity = verify_lax_cospan(std::slice::from_ref(f), LaxMode::Unity, sampling).map_err(invalid)?;
        report.extend(&format!("map {}", i + 1), unity);
    }
    for (i, pair) in chain.windows(2).enumerate() {
        let label = format!("maps {}-{}", i + 1, i + 2);
        let phi = compositor_phi(&pair[0], &pair[1]).map_err(invalid)?;
        let failures = phi.failures();
        report.push(Check::expect(
            format!("{label}: φ lands in Z(g∘f) and agrees on Z(S)"),
            failures.is_empty(),
            || failures.join("; "),
        ));
        let mismatched = compare_with_tensor_compositor(&pair[0], &pair[1]).map_err(invalid)?;
        report.push(Check::expect(
            format!("{label}: words (t, s) evaluate to μ(t ⊗ s)"),
            mismatched.is_empty(),
            || format!("generator pairs {mismatched:?}"),
        ));
    }
    if chain.len() == 3 {
        let assoc = verify_lax_cospan(chain, LaxMode::Associativity, sampling).map_err(invalid)?;
        report.extend("", assoc);
    }
    Ok(())
}

fn subring_report(report: &mut Report, title: String, z: &Subring) {
    report.push(Check::pass(title));
    for line in describe_subring(z) {
        report.note(line);
    }
}

pub fn show_center(path: &Path, command: Vec<String>) -> Result<Report, CommandError> {
    let ring: Arc<BasedRing> = read_ring(path)?;
    let z = center(&ring).map_err(invalid)?;
    let mut report = Report::new(command, None);
    subring_report(&mut report, format!("center of {}", ring.name()), &z);
    Ok(report)
}

pub fn show_centralizer(path: &Path, command: Vec<String>) -> Result<Report, CommandError> {
    let f = read_hom(path)?;
    let z = centralizer(&f).map_err(invalid)?;
    let mut report = Report::new(command, None);
    subring_report(
        &mut report,
        format!("centralizer of {} -> {}", f.source().name(), f.target().name()),
        &z,
    );
    Ok(report)
}
