//! S-matrix, Mueger center, classification and connected S-matrix Gram spectra.

mod network;

pub use network::{eval_planar_network, Network, Vertex};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::braided::{cdist, check_ribbon, CategoryData};
use crate::check::Residual;
use crate::error::{Error, Result};
use crate::C64;

pub type CMatrix = DMatrix<C64>;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Symmetric,
    Modular,
    ProperlyPremodular,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Symmetric => "Symm.",
            Classification::Modular => "Mod.",
            Classification::ProperlyPremodular => "Premod.",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SMatrixSuite {
    pub s: CMatrix,
    pub mueger: Vec<bool>,
    pub classification: Classification,
    pub mueger_rank: usize,
    pub mueger_dsq: f64,
    pub ty_like: bool,
}

impl SMatrixSuite {
    pub fn mueger_labels(&self) -> Vec<usize> {
        (0..self.mueger.len()).filter(|&a| self.mueger[a]).collect()
    }
}

fn require_braiding(data: &CategoryData) -> Result<()> {
    if data.is_braided() {
        Ok(())
    } else {
        Err(Error::NoBraiding)
    }
}

/// `S[a,b] = (1/D) sum_x N[a,bbar,x] theta_x / (theta_a theta_bbar) d_x`.
pub fn s_matrix(data: &CategoryData) -> Result<CMatrix> {
    require_braiding(data)?;
    let ring = data.ring();
    let th = data.theta();
    let dd = ring.dsq().sqrt();
    let r = ring.rank();
    Ok(CMatrix::from_fn(r, r, |a, b| {
        let bb = ring.dual(b);
        ring.fuse(a, bb)
            .iter()
            .map(|&x| th[x] / (th[a] * th[bb]) * ring.d(x))
            .sum::<C64>()
            / dd
    }))
}

/// Transparency of each label by the monodromy test `R^c_{ba} R^c_{ab} = 1`.
pub fn transparent_by_monodromy(data: &CategoryData, tol: f64) -> Result<Vec<bool>> {
    require_braiding(data)?;
    let ring = data.ring();
    let one = C64::new(1.0, 0.0);
    Ok((0..ring.rank())
        .map(|a| {
            (0..ring.rank()).all(|b| {
                ring.fuse(a, b)
                    .iter()
                    .all(|&c| cdist(data.r(b, a, c) * data.r(a, b, c), one) < tol)
            })
        })
        .collect())
}

/// Mueger membership by the sum rule `sum_b d_b S[a,b] = d_a D`, cross-checked against the
/// monodromy test. Disagreement is an error.
pub fn mueger_membership(data: &CategoryData, s: &CMatrix, tol: f64) -> Result<Vec<bool>> {
    let ring = data.ring();
    let dd = ring.dsq().sqrt();
    let by_monodromy = transparent_by_monodromy(data, tol)?;
    let mut out = Vec::with_capacity(ring.rank());
    for a in 0..ring.rank() {
        let sum: C64 = (0..ring.rank()).map(|b| s[(a, b)] * ring.d(b)).sum();
        let member = (sum - ring.d(a) * dd).norm() < tol * dd;
        if member != by_monodromy[a] {
            return Err(Error::MembershipDisagreement(a));
        }
        out.push(member);
    }
    Ok(out)
}

/// Compute S, the Mueger center and the derived classification flags.
pub fn classify(data: &CategoryData, tol: f64) -> Result<SMatrixSuite> {
    let ribbon = check_ribbon(data)?;
    if !ribbon.passes(tol) {
        return Err(Error::NotPremodular(format!("ribbon residual {:.3e}", ribbon.value)));
    }
    let ring = data.ring();
    let s = s_matrix(data)?;
    let mueger = mueger_membership(data, &s, tol)?;
    let mueger_rank = mueger.iter().filter(|&&m| m).count();
    let mueger_dsq: f64 = (0..ring.rank())
        .filter(|&a| mueger[a])
        .map(|a| ring.d(a).powi(2))
        .sum();
    let classification = if mueger_rank == ring.rank() {
        Classification::Symmetric
    } else if mueger_rank == 1 {
        Classification::Modular
    } else {
        Classification::ProperlyPremodular
    };
    let ty_like = ring.rank() == mueger_rank + 1
        && (0..ring.rank())
            .find(|&a| !mueger[a])
            .is_some_and(|x| (ring.d(x) - mueger_dsq.sqrt()).abs() < tol);
    Ok(SMatrixSuite {
        s,
        mueger,
        classification,
        mueger_rank,
        mueger_dsq,
        ty_like,
    })
}

/// Product rule: `(D/d_c) S[a,c] S[b,c] = sum_x N[a,b,x] S[x,c]`.
pub fn check_product_rule(data: &CategoryData, s: &CMatrix) -> Residual {
    let ring = data.ring();
    let dd = ring.dsq().sqrt();
    let r = ring.rank();
    let mut res = Residual::zero("product_rule");
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let lhs = s[(a, c)] * s[(b, c)] * (dd / ring.d(c));
                let rhs: C64 = ring.fuse(a, b).iter().map(|&x| s[(x, c)]).sum();
                res.record((lhs - rhs).norm(), &[a, b, c]);
            }
        }
    }
    res
}

/// Sum rule: `sum_b d_b S[a,b]` is `d_a D` on the Mueger center and zero elsewhere.
pub fn check_sum_rule(data: &CategoryData, s: &CMatrix, mueger: &[bool]) -> Residual {
    let ring = data.ring();
    let dd = ring.dsq().sqrt();
    let mut res = Residual::zero("sum_rule");
    for a in 0..ring.rank() {
        let sum: C64 = (0..ring.rank()).map(|b| s[(a, b)] * ring.d(b)).sum();
        let want = if mueger[a] { ring.d(a) * dd } else { 0.0 };
        res.record((sum - want).norm() / dd, &[a]);
    }
    res
}

/// `||S^dagger S - I||_inf`.
pub fn unitarity_defect(s: &CMatrix) -> f64 {
    let n = s.nrows();
    let p = s.adjoint() * s - CMatrix::identity(n, n);
    p.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Labels `a` with `N[a, abar, c] = 1`.
pub fn charge_sector(data: &CategoryData, c: usize) -> Vec<usize> {
    let ring = data.ring();
    (0..ring.rank())
        .filter(|&a| ring.n(a, ring.dual(a), c))
        .collect()
}

/// Tetrahedral symbol `T(a,b,x,c)` entering the connected S-matrix.
///
/// The closed network for charge `c` is divided by the same network at `c = 1` and multiplied
/// by the canonical theta-graph value `sqrt(d_a d_b d_x)`. The ratio removes the dependence on
/// the vertex gauge of the diagram at `c = 1`.
pub fn tetrahedral_symbol(data: &CategoryData, a: usize, b: usize, x: usize, c: usize) -> Result<C64> {
    let ring = data.ring();
    let top = eval_planar_network(data, &Network::tetrahedral(data, a, b, x, c))?;
    let bottom = eval_planar_network(data, &Network::tetrahedral(data, a, b, x, 0))?;
    if bottom.norm() == 0.0 {
        return Err(Error::Structural(format!("degenerate tetrahedral normalization at ({a},{b},{x})")));
    }
    Ok(top / bottom * (ring.d(a) * ring.d(b) * ring.d(x)).sqrt())
}

/// `G_c[a,b] = sqrt(d_c/(d_a d_b)) sum_{x in Mueger, x in a (x) bbar} sqrt(d_x) T(a,b,x,c)`,
/// over the charge sector of `c`.
pub fn gram_connected_s(
    data: &CategoryData,
    suite: &SMatrixSuite,
    c: usize,
) -> Result<(Vec<usize>, CMatrix)> {
    let ring = data.ring();
    let idx = charge_sector(data, c);
    let n = idx.len();
    let mut g = CMatrix::zeros(n, n);
    for (i, &a) in idx.iter().enumerate() {
        for (j, &b) in idx.iter().enumerate() {
            let mut sum = C64::new(0.0, 0.0);
            for &x in ring.fuse(a, ring.dual(b)) {
                if suite.mueger[x] {
                    sum += tetrahedral_symbol(data, a, b, x, c)? * ring.d(x).sqrt();
                }
            }
            g[(i, j)] = sum * (ring.d(c) / (ring.d(a) * ring.d(b))).sqrt();
        }
    }
    Ok((idx, g))
}

/// The connected S-matrix itself,
/// `S_c[a,b] = (sqrt(d_c)/D) sum_x N[a,bbar,x] theta_x/(theta_a theta_bbar) d_x T(a,b,x,c)/sqrt(d_x d_a d_b d_c)`.
///
/// Independent of the Gram route: it sums over every `x`, uses the braiding through the twists,
/// and reads the tetrahedral symbol straight from the F-symbols.
pub fn connected_s_matrix(data: &CategoryData, c: usize) -> Result<(Vec<usize>, CMatrix)> {
    require_braiding(data)?;
    let ring = data.ring();
    let th = data.theta();
    let idx = charge_sector(data, c);
    let n = idx.len();
    let dd = ring.dsq().sqrt();
    let mut s = CMatrix::zeros(n, n);
    for (i, &a) in idx.iter().enumerate() {
        let ab = ring.dual(a);
        for (j, &b) in idx.iter().enumerate() {
            let bb = ring.dual(b);
            let mut sum = C64::new(0.0, 0.0);
            for &x in ring.fuse(a, bb) {
                let ratio = data.f(b, x, ab, c, a, bb) / data.f(b, x, ab, 0, a, bb);
                sum += th[x] / (th[a] * th[bb]) * ring.d(x) * ratio;
            }
            s[(i, j)] = sum * ring.d(c).sqrt() / dd;
        }
    }
    Ok((idx, s))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramBlock {
    pub c: usize,
    pub index: Vec<usize>,
    pub gram: CMatrix,
    /// Descending, with values below the zero cutoff clamped to 0.
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramSpectrum {
    pub dsq: f64,
    pub blocks: Vec<GramBlock>,
}

impl GramSpectrum {
    pub fn block(&self, c: usize) -> Option<&GramBlock> {
        self.blocks.iter().find(|b| b.c == c)
    }

    /// `sum_c Tr G_c`.
    pub fn total_trace(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.gram.trace().re)
            .sum()
    }

    /// Nonzero eigenvalues `(c, lambda)`.
    pub fn nonzero(&self) -> Vec<(usize, f64)> {
        self.blocks
            .iter()
            .flat_map(|b| b.eigenvalues.iter().filter(|&&l| l > 0.0).map(move |&l| (b.c, l)))
            .collect()
    }
}

/// Zero cutoff for Gram eigenvalues.
pub fn zero_cutoff(dsq: f64) -> f64 {
    1e-10 * dsq.max(1.0)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let eig = SymmetricEigen::try_new(m.clone(), EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::EigenFailure(format!("no convergence for a {}x{} matrix", m.nrows(), m.ncols())))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

fn hermiticity_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

fn spectrum_from_blocks(dsq: f64, raw: Vec<(usize, Vec<usize>, CMatrix)>) -> Result<GramSpectrum> {
    let cut = zero_cutoff(dsq);
    let mut blocks = Vec::new();
    for (c, index, gram) in raw {
        let h = hermiticity_defect(&gram);
        if h > 1e-8 * dsq.max(1.0) {
            return Err(Error::EigenFailure(format!("G_{c} is not Hermitian (defect {h:.3e})")));
        }
        let mut eigenvalues = hermitian_eigenvalues(&gram)?;
        for l in eigenvalues.iter_mut() {
            if *l < -cut {
                return Err(Error::EigenFailure(format!("G_{c} has negative eigenvalue {l:.3e}")));
            }
            if *l < cut {
                *l = 0.0;
            }
        }
        blocks.push(GramBlock {
            c,
            index,
            gram,
            eigenvalues,
        });
    }
    Ok(GramSpectrum { dsq, blocks })
}

/// Gram matrices `G_c` for every charge and their spectra.
pub fn gram_spectrum(data: &CategoryData, suite: &SMatrixSuite) -> Result<GramSpectrum> {
    let mut raw = Vec::new();
    for c in 0..data.rank() {
        let (idx, g) = gram_connected_s(data, suite, c)?;
        if !idx.is_empty() {
            raw.push((c, idx, g));
        }
    }
    spectrum_from_blocks(data.ring().dsq(), raw)
}

/// Closed form for pointed categories: `G_1[a,b] = [a bbar in Mueger]`, all other blocks
/// empty. Compared against the generic route; disagreement beyond `tol` is an error.
pub fn pointed_gram_fastpath(
    data: &CategoryData,
    suite: &SMatrixSuite,
    tol: f64,
) -> Result<GramSpectrum> {
    let ring = data.ring();
    if !ring.is_pointed(tol) {
        return Err(Error::Unsupported("pointed fast path on a non-pointed category".into()));
    }
    let r = ring.rank();
    let g = CMatrix::from_fn(r, r, |a, b| {
        ring.fuse(a, ring.dual(b))
            .iter()
            .filter(|&&c| suite.mueger[c])
            .map(|&c| C64::new(ring.d(c), 0.0))
            .sum()
    });
    let fast = spectrum_from_blocks(ring.dsq(), vec![(0, (0..r).collect(), g)])?;
    let generic = gram_spectrum(data, suite)?;
    let mut worst = 0.0f64;
    for b in &generic.blocks {
        match fast.block(b.c) {
            Some(fb) => worst = worst.max((&fb.gram - &b.gram).iter().fold(0.0, |m, z| m.max(z.norm()))),
            None => worst = worst.max(b.gram.iter().fold(0.0, |m, z| m.max(z.norm()))),
        }
    }
    if worst > tol.max(1e-9) {
        return Err(Error::FastpathMismatch(worst));
    }
    Ok(fast)
}
