//! Topological entanglement entropy diagnostics. All values are in nats.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{check_commutative, mueger_relation, validate_algebra, AlgebraObject, MuegerRelation};
use crate::braided::CategoryData;
use crate::error::{Error, Result};
use crate::ring::FusionRing;
use crate::smat::{hermitian_eigenvalues, Classification, CMatrix, GramSpectrum, SMatrixSuite};
use crate::trees::dlogd;

/// Geometry of a region: `n` crossing links, `b0` interface components and `b1` points where
/// the interface meets a physical boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionSpec {
    pub n: usize,
    pub b0: usize,
    pub b1: usize,
}

/// `S[C] = log Dsq - sum_x d_x^2 log d_x / Dsq`.
pub fn entropy_constant(ring: &FusionRing) -> f64 {
    ring.dsq().ln() - dlogd(ring) / ring.dsq()
}

/// `n S[C] - b0 log Dsq (+ (b1/2) log d_A with a boundary algebra)`.
pub fn region_entropy(ring: &FusionRing, region: RegionSpec, d_a: Option<f64>) -> f64 {
    let mut s = region.n as f64 * entropy_constant(ring) - region.b0 as f64 * ring.dsq().ln();
    if let Some(d) = d_a {
        s += region.b1 as f64 / 2.0 * d.ln();
    }
    s
}

/// Levin-Wen bulk topological entropy `gamma = 2 log Dsq`.
pub fn lw_gamma(ring: &FusionRing) -> f64 {
    2.0 * ring.dsq().ln()
}

/// Levin-Wen boundary entropy `Gamma = log Dsq`, the same for every valid boundary algebra.
pub fn lw_boundary_gamma(data: &CategoryData, alg: &AlgebraObject, tol: f64) -> Result<f64> {
    let v = validate_algebra(data, alg, tol);
    if let Some(w) = v.worst() {
        return Err(Error::InvalidAlgebra(format!("{} residual {:.3e}", w.axiom, w.value)));
    }
    Ok(data.ring().dsq().ln())
}

/// `delta = sum_{c, lambda} (lambda/Dsq) log(lambda/d_c)` over nonzero Gram eigenvalues, and
/// whether it matches `log` of the Mueger dimension within `tol`.
pub fn ww_delta(ring: &FusionRing, suite: &SMatrixSuite, spectrum: &GramSpectrum, tol: f64) -> (f64, bool) {
    let dsq = ring.dsq();
    let delta: f64 = spectrum
        .nonzero()
        .into_iter()
        .map(|(c, l)| l / dsq * (l / ring.d(c)).ln())
        .sum();
    (delta, (delta - suite.mueger_dsq.ln()).abs() < tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FastpathCase {
    Symmetric,
    Modular,
    Pointed,
    TyLike,
    SymmetricTimesModular,
}

/// Closed-form `delta = log Dsq_Mueger` when the category falls into a known case.
pub fn ww_delta_fastpath(ring: &FusionRing, suite: &SMatrixSuite, tol: f64) -> Result<(f64, FastpathCase)> {
    let case = match suite.classification {
        Classification::Symmetric => FastpathCase::Symmetric,
        Classification::Modular => FastpathCase::Modular,
        _ if ring.is_pointed(tol) => FastpathCase::Pointed,
        _ if suite.ty_like => FastpathCase::TyLike,
        _ => return Err(Error::Unsupported("no closed form applies".into())),
    };
    Ok((suite.mueger_dsq.ln(), case))
}

/// Closed form for a Deligne product of a symmetric and a modular factor.
pub fn ww_delta_product(symmetric: &SMatrixSuite, modular: &SMatrixSuite) -> Result<(f64, FastpathCase)> {
    if symmetric.classification != Classification::Symmetric
        || modular.classification != Classification::Modular
    {
        return Err(Error::Unsupported("factors are not symmetric and modular".into()));
    }
    Ok((symmetric.mueger_dsq.ln(), FastpathCase::SymmetricTimesModular))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryMethod {
    UnitAlgebra,
    Symmetric,
    PointedTrivialIntersection,
    PointedContained,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryResult {
    pub delta_bullet: f64,
    pub delta_circ: f64,
    pub method: BoundaryMethod,
}

/// Point-like and loop-like boundary diagnostics for a commutative Frobenius algebra.
///
/// Cases without a known closed form return [`Error::Unsupported`] instead of a number.
pub fn ww_boundary(
    data: &CategoryData,
    suite: &SMatrixSuite,
    alg: &AlgebraObject,
    tol: f64,
) -> Result<BoundaryResult> {
    let v = validate_algebra(data, alg, tol);
    if let Some(w) = v.worst() {
        return Err(Error::InvalidAlgebra(format!("{} residual {:.3e}", w.axiom, w.value)));
    }
    let (comm, res) = check_commutative(data, alg, tol)?;
    if !comm {
        return Err(Error::NotCommutative(res));
    }
    let ring = data.ring();
    let ldsq = ring.dsq().ln();
    let lda = alg.d_a().ln();
    let (delta_bullet, method) = if alg.is_unit() {
        (ldsq, BoundaryMethod::UnitAlgebra)
    } else if suite.classification == Classification::Symmetric {
        (ldsq - lda, BoundaryMethod::Symmetric)
    } else if ring.is_pointed(tol) {
        match mueger_relation(suite, alg) {
            MuegerRelation::TrivialIntersection => (ldsq - 2.0 * lda, BoundaryMethod::PointedTrivialIntersection),
            MuegerRelation::FullyContained => (ldsq - lda, BoundaryMethod::PointedContained),
            MuegerRelation::Other => {
                return Err(Error::Unsupported("general form unknown".into()));
            }
        }
    } else {
        return Err(Error::Unsupported("general form unknown".into()));
    };
    Ok(BoundaryResult {
        delta_bullet,
        delta_circ: delta_bullet + 2.0 * lda - ldsq,
        method,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoCheck {
    pub entropy: f64,
    pub closed_form: f64,
    pub k: u32,
    pub residual: f64,
}

/// Build the pointed boundary reduced density matrix block by block and compare its entropy
/// with `n S[C] - log Dsq + k log d_A` (`k = 2` for trivial intersection with the Mueger
/// center, `k = 1` when the algebra lies inside it).
///
/// Blocks are labeled by the leaves `x` and a charge `d` in `A`, with `prod x = d`; within a
/// block the matrix over `a` in `A` has entries
/// `m_{a,(ad)^-1}^{d^-1} conj(m_{ah,(ahd)^-1}^{d^-1})` for `h` in `Mueger cap A`.
pub fn pointed_boundary_rho_check(
    data: &CategoryData,
    suite: &SMatrixSuite,
    alg: &AlgebraObject,
    n: usize,
    tol: f64,
) -> Result<RhoCheck> {
    let ring = data.ring();
    if !ring.is_pointed(tol) {
        return Err(Error::Unsupported("rho check needs a pointed category".into()));
    }
    if n == 0 {
        return Err(Error::BadParameters("n must be at least 1".into()));
    }
    let k = match mueger_relation(suite, alg) {
        MuegerRelation::TrivialIntersection => 2,
        MuegerRelation::FullyContained => 1,
        MuegerRelation::Other => return Err(Error::Unsupported("general form unknown".into())),
    };
    let r = ring.rank();
    let mul = |a: usize, b: usize| ring.fuse(a, b)[0];
    let inv = |a: usize| ring.dual(a);
    let sup = alg.support();
    let h_set: Vec<usize> = sup.iter().copied().filter(|&h| suite.mueger[h]).collect();

    // number of leaf tuples with each total charge
    let mut counts = vec![0u64; r];
    let mut tuple = vec![0usize; n];
    loop {
        let total = tuple.iter().fold(0, |acc, &x| mul(acc, x));
        counts[total] += 1;
        let mut i = 0;
        while i < n {
            tuple[i] += 1;
            if tuple[i] < r {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }

    let pos: HashMap<usize, usize> = sup.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut weights: Vec<(f64, u64)> = Vec::new();
    let mut trace = 0.0;
    for &d in sup {
        let dinv = inv(d);
        let coef = |a: usize| alg.m(a, inv(mul(a, d)), dinv);
        let mut block = CMatrix::zeros(sup.len(), sup.len());
        for &a in sup {
            for &h in &h_set {
                let ah = mul(a, h);
                block[(pos[&a], pos[&ah])] += coef(a) * coef(ah).conj();
            }
        }
        let eig = hermitian_eigenvalues(&block)?;
        let copies = counts[d];
        trace += block.trace().re * copies as f64;
        for l in eig {
            weights.push((l, copies));
        }
    }
    let mut entropy = 0.0;
    for (l, copies) in weights {
        let p = l / trace;
        if p > 1e-15 {
            entropy -= copies as f64 * p * p.ln();
        }
    }
    let closed_form = n as f64 * crate::entropy::entropy_constant(ring) - ring.dsq().ln()
        + k as f64 * alg.d_a().ln();
    Ok(RhoCheck {
        entropy,
        closed_form,
        k,
        residual: (entropy - closed_form).abs(),
    })
}

/// Boundary entry of a report: a result or the reason there is none.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryEntry {
    pub support: Vec<String>,
    pub d_a: f64,
    #[serde(flatten)]
    pub outcome: BoundaryOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundaryOutcome {
    Ok(BoundaryResult),
    Unsupported { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub sc: f64,
    pub gamma: f64,
    pub big_gamma: f64,
    pub delta: f64,
    pub delta_conjecture: f64,
    pub conjecture_ok: bool,
    pub delta_fastpath: Option<f64>,
    pub boundary: Vec<BoundaryEntry>,
}

/// Assemble every diagnostic. Boundary entries are reported per algebra; an algebra outside
/// the closed-form cases yields an `Unsupported` entry.
pub fn entropy_report(
    data: &CategoryData,
    suite: &SMatrixSuite,
    spectrum: &GramSpectrum,
    algebras: &[AlgebraObject],
    tol: f64,
    conj_tol: f64,
) -> Result<EntropyReport> {
    let ring = data.ring();
    let (delta, conjecture_ok) = ww_delta(ring, suite, spectrum, conj_tol);
    let delta_fastpath = match ww_delta_fastpath(ring, suite, tol) {
        Ok((d, _)) => {
            if (d - delta).abs() > conj_tol {
                return Err(Error::FastpathMismatch((d - delta).abs()));
            }
            Some(d)
        }
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let mut boundary = Vec::new();
    for alg in algebras {
        let outcome = match ww_boundary(data, suite, alg, tol) {
            Ok(r) => BoundaryOutcome::Ok(r),
            Err(Error::Unsupported(reason)) => BoundaryOutcome::Unsupported { reason },
            Err(e) => return Err(e),
        };
        boundary.push(BoundaryEntry {
            support: alg.support().iter().map(|&a| ring.name(a).to_string()).collect(),
            d_a: alg.d_a(),
            outcome,
        });
    }
    Ok(EntropyReport {
        sc: entropy_constant(ring),
        gamma: lw_gamma(ring),
        big_gamma: ring.dsq().ln(),
        delta,
        delta_conjecture: suite.mueger_dsq.ln(),
        conjecture_ok,
        delta_fastpath,
        boundary,
    })
}
