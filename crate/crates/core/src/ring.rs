//! Multiplicity-free fusion rings: labels, duals, fusion tensor and quantum dimensions.

use std::collections::HashSet;

use crate::check::{Residual, ValidationResult};
use crate::error::{Error, Result};

const POWER_ITER_MAX: usize = 100_000;
const POWER_ITER_TOL: f64 = 1e-12;
const POWER_ITER_POLISH: usize = 64;

/// A simple object: index 0 is always the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub id: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionRing {
    names: Vec<String>,
    rank: usize,
    n: Vec<u8>,
    products: Vec<Vec<usize>>,
    dual: Vec<usize>,
    d: Vec<f64>,
    dsq: f64,
}

/// Output of [`quantum_dims`].
#[derive(Debug, Clone, PartialEq)]
pub struct Dims {
    pub d: Vec<f64>,
    pub dsq: f64,
    pub residual: f64,
}

impl FusionRing {
    /// Build a ring from a flat `rank^3` tensor indexed `[a][b][c]`.
    ///
    /// Only structural checks happen here; see [`validate_ring`] and [`FusionRing::new`].
    pub fn from_tensor(names: Vec<String>, n: Vec<u8>) -> Result<Self> {
        let rank = names.len();
        if rank == 0 {
            return Err(Error::Structural("ring has no labels".into()));
        }
        if n.len() != rank * rank * rank {
            return Err(Error::Structural(format!(
                "fusion tensor has {} entries, expected {}",
                n.len(),
                rank * rank * rank
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Structural(format!("duplicate label name {name:?}")));
            }
        }
        if let Some(&m) = n.iter().find(|&&m| m > 1) {
            return Err(Error::Multiplicity(m as u32));
        }
        let mut products = vec![Vec::new(); rank * rank];
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    if n[(a * rank + b) * rank + c] == 1 {
                        products[a * rank + b].push(c);
                    }
                }
            }
        }
        let dual = (0..rank)
            .map(|a| {
                (0..rank)
                    .find(|&b| n[(a * rank + b) * rank] == 1)
                    .unwrap_or(a)
            })
            .collect();
        let mut ring = FusionRing {
            names,
            rank,
            n,
            products,
            dual,
            d: Vec::new(),
            dsq: f64::NAN,
        };
        match perron_vector(&ring) {
            Ok(d) => {
                ring.dsq = d.iter().map(|x| x * x).sum();
                ring.d = d;
            }
            Err(_) => ring.d = vec![f64::NAN; rank],
        }
        Ok(ring)
    }

    /// Build from a list of admissible triples `(a, b, c)` meaning `N[a,b,c] = 1`.
    pub fn from_triples(names: Vec<String>, triples: &[(usize, usize, usize)]) -> Result<Self> {
        let r = names.len();
        let mut n = vec![0u8; r * r * r];
        for &(a, b, c) in triples {
            if a >= r || b >= r || c >= r {
                return Err(Error::Structural(format!(
                    "triple ({a},{b},{c}) out of range for rank {r}"
                )));
            }
            n[(a * r + b) * r + c] += 1;
        }
        Self::from_tensor(names, n)
    }

    /// Structural construction followed by full validation.
    pub fn new(names: Vec<String>, n: Vec<u8>, tol: f64) -> Result<Self> {
        let ring = Self::from_tensor(names, n)?;
        validate_ring(&ring, tol).into_result()?;
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn labels(&self) -> Vec<Label> {
        self.names
            .iter()
            .enumerate()
            .map(|(id, name)| Label {
                id,
                name: name.clone(),
            })
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> bool {
        self.n[(a * self.rank + b) * self.rank + c] == 1
    }

    /// All `c` with `N[a,b,c] = 1`.
    #[inline]
    pub fn fuse(&self, a: usize, b: usize) -> &[usize] {
        &self.products[a * self.rank + b]
    }

    #[inline]
    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn d(&self, a: usize) -> f64 {
        self.d[a]
    }

    pub fn dims(&self) -> &[f64] {
        &self.d
    }

    pub fn dsq(&self) -> f64 {
        self.dsq
    }

    pub fn tensor(&self) -> &[u8] {
        &self.n
    }

    pub fn is_pointed(&self, tol: f64) -> bool {
        (self.dsq - self.rank as f64).abs() < tol
    }

    /// Rename labels by `perm`: old label `a` becomes `perm[a]`. `perm[0]` must be 0.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.rank)?;
        let r = self.rank;
        let mut names = vec![String::new(); r];
        for a in 0..r {
            names[perm[a]] = self.names[a].clone();
        }
        let mut n = vec![0u8; r * r * r];
        for a in 0..r {
            for b in 0..r {
                for &c in self.fuse(a, b) {
                    n[(perm[a] * r + perm[b]) * r + perm[c]] = 1;
                }
            }
        }
        Self::from_tensor(names, n)
    }
}

pub(crate) fn check_perm(perm: &[usize], rank: usize) -> Result<()> {
    let mut seen = vec![false; rank];
    if perm.len() != rank || perm.first() != Some(&0) {
        return Err(Error::BadParameters("permutation must fix the unit".into()));
    }
    for &p in perm {
        if p >= rank || seen[p] {
            return Err(Error::BadParameters("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Perron vector of `sum_a N_a`, scaled so that the unit has dimension 1.
///
/// Every entry of the summed matrix is positive for a genuine fusion ring, so plain power
/// iteration converges even when the individual `N_a` are permutation matrices.
fn perron_vector(ring: &FusionRing) -> Result<Vec<f64>> {
    let r = ring.rank;
    let mut m = vec![0.0; r * r];
    for a in 0..r {
        for b in 0..r {
            for &c in ring.fuse(a, b) {
                m[b * r + c] += 1.0;
            }
        }
    }
    let mut v = vec![1.0f64; r];
    let mut w = vec![0.0f64; r];
    for _ in 0..POWER_ITER_MAX {
        for b in 0..r {
            w[b] = (0..r).map(|c| m[b * r + c] * v[c]).sum();
        }
        let norm = w.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InconsistentDims(f64::INFINITY));
        }
        w.iter_mut().for_each(|x| *x /= norm);
        let change = v
            .iter()
            .zip(&w)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
        std::mem::swap(&mut v, &mut w);
        if change < POWER_ITER_TOL {
            // polish: the stopping test leaves an error of order the tolerance
            for _ in 0..POWER_ITER_POLISH {
                for b in 0..r {
                    w[b] = (0..r).map(|c| m[b * r + c] * v[c]).sum();
                }
                let norm = w.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
                w.iter_mut().for_each(|x| *x /= norm);
                std::mem::swap(&mut v, &mut w);
            }
            if v[0] <= 0.0 {
                return Err(Error::InconsistentDims(f64::INFINITY));
            }
            let unit = v[0];
            return Ok(v.iter().map(|x| x / unit).collect());
        }
    }
    Err(Error::NonConvergence(POWER_ITER_MAX))
}

/// Quantum dimensions, total dimension and the residual of `d_a d_b = sum_c N_ab^c d_c`.
pub fn quantum_dims(ring: &FusionRing, tol: f64) -> Result<Dims> {
    let d = perron_vector(ring)?;
    let r = ring.rank;
    let mut residual = 0.0f64;
    for a in 0..r {
        for b in 0..r {
            let rhs: f64 = ring.fuse(a, b).iter().map(|&c| d[c]).sum();
            residual = residual.max((d[a] * d[b] - rhs).abs());
        }
    }
    if residual > tol {
        return Err(Error::InconsistentDims(residual));
    }
    let dsq = d.iter().map(|x| x * x).sum();
    Ok(Dims { d, dsq, residual })
}

/// Check every fusion-ring invariant. Integer axioms are exact, dimension equations use `tol`.
pub fn validate_ring(ring: &FusionRing, tol: f64) -> ValidationResult {
    let r = ring.rank;
    let mut unit = Residual::zero("unit");
    let mut duality = Residual::zero("duality");
    let mut assoc = Residual::zero("associativity");
    let mut dims = Residual::zero("dimensions");

    for a in 0..r {
        for b in 0..r {
            let want = a == b;
            if ring.n(0, a, b) != want {
                unit.record(1.0, &[0, a, b]);
            }
            if ring.n(a, 0, b) != want {
                unit.record(1.0, &[a, 0, b]);
            }
        }
    }
    for a in 0..r {
        let duals: Vec<usize> = (0..r).filter(|&b| ring.n(a, b, 0)).collect();
        if duals.len() != 1 {
            duality.record(1.0, &[a]);
            continue;
        }
        let ab = duals[0];
        if ring.dual[ab] != a || !ring.n(ab, a, 0) {
            duality.record(1.0, &[a, ab]);
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let lhs = ring.fuse(a, b).iter().filter(|&&e| ring.n(e, c, d)).count();
                    let rhs = ring.fuse(b, c).iter().filter(|&&f| ring.n(a, f, d)).count();
                    if lhs != rhs {
                        assoc.record(lhs.abs_diff(rhs) as f64, &[a, b, c, d]);
                    }
                }
            }
        }
    }
    let d = &ring.d;
    if d.iter().any(|x| !x.is_finite()) {
        dims.record(f64::INFINITY, &[]);
    } else {
        dims.record((d[0] - 1.0).abs(), &[0]);
        for a in 0..r {
            if d[a] < 1.0 - tol {
                dims.record(1.0 - d[a], &[a]);
            }
            dims.record((d[a] - d[ring.dual[a]]).abs(), &[a, ring.dual[a]]);
            for b in 0..r {
                let rhs: f64 = ring.fuse(a, b).iter().map(|&c| d[c]).sum();
                dims.record((d[a] * d[b] - rhs).abs(), &[a, b]);
            }
        }
    }
    ValidationResult {
        tol,
        checks: vec![unit, duality, assoc, dims],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn z2() -> FusionRing {
        FusionRing::from_triples(names(&["1", "x"]), &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
            .unwrap()
    }

    fn fib() -> FusionRing {
        FusionRing::from_triples(
            names(&["1", "t"]),
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn z2_ring_validates() {
        let ring = z2();
        assert!(validate_ring(&ring, 1e-9).passed());
        let dims = quantum_dims(&ring, 1e-9).unwrap();
        assert_eq!(dims.d, vec![1.0, 1.0]);
        assert_eq!(dims.dsq, 2.0);
        assert!(ring.is_pointed(1e-9));
        assert_eq!(ring.fuse(1, 1), &[0]);
    }

    #[test]
    fn trivial_ring() {
        let ring = FusionRing::from_triples(names(&["1"]), &[(0, 0, 0)]).unwrap();
        assert!(validate_ring(&ring, 1e-9).passed());
        assert_eq!(ring.dims(), &[1.0]);
        assert_eq!(ring.dsq(), 1.0);
    }

    #[test]
    fn fibonacci_dims() {
        let ring = fib();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let dims = quantum_dims(&ring, 1e-9).unwrap();
        assert!((dims.d[1] - phi).abs() < 1e-12);
        assert!((dims.dsq - (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(ring.fuse(1, 1), &[0, 1]);
        assert_eq!(ring.fuse(0, 1), &[1]);
        assert!(!ring.is_pointed(1e-9));
    }

    // Adding x(x)x -> x to the Z2 ring gives the Fibonacci ring, which is a valid ring.
    #[test]
    fn z2_plus_xxx_is_fibonacci() {
        let ring = FusionRing::from_triples(
            names(&["1", "x"]),
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)],
        )
        .unwrap();
        assert!(validate_ring(&ring, 1e-9).passed());
        assert!((ring.d(1) - fib().d(1)).abs() < 1e-12);
    }

    #[test]
    fn non_associative_ring_rejected() {
        // 1, x, y with x*x = 1 + y, x*y = x, y*y = 1: associativity fails at (x,x,y,.).
        let t = [
            (0, 0, 0),
            (0, 1, 1),
            (1, 0, 1),
            (0, 2, 2),
            (2, 0, 2),
            (1, 1, 0),
            (1, 1, 2),
            (1, 2, 1),
            (2, 1, 1),
            (2, 2, 0),
            (2, 2, 2),
        ];
        let ring = FusionRing::from_triples(names(&["1", "x", "y"]), &t).unwrap();
        let res = validate_ring(&ring, 1e-9);
        assert!(!res.passed());
        assert!(!res.get("associativity").unwrap().passes(1e-9));
        let err = FusionRing::new(ring.names().to_vec(), ring.tensor().to_vec(), 1e-9).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }

    #[test]
    fn unit_violation_rejected() {
        let ring = FusionRing::from_triples(names(&["1", "x"]), &[(0, 0, 0), (0, 1, 1), (1, 1, 0)])
            .unwrap();
        let res = validate_ring(&ring, 1e-9);
        assert!(!res.get("unit").unwrap().passes(1e-9));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            FusionRing::from_tensor(names(&["1", "x"]), vec![1, 0, 0]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            FusionRing::from_tensor(names(&["1", "1"]), vec![0; 8]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            FusionRing::from_tensor(names(&["1"]), vec![2]),
            Err(Error::Multiplicity(2))
        ));
    }

    #[test]
    fn dims_are_common_eigenvector() {
        let ring = fib();
        for a in 0..2 {
            for b in 0..2 {
                let lhs: f64 = ring.fuse(a, b).iter().map(|&c| ring.d(c)).sum();
                assert!((lhs - ring.d(a) * ring.d(b)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn permuted_keeps_dims() {
        let ring = FusionRing::from_triples(
            names(&["1", "a", "b"]),
            &[
                (0, 0, 0),
                (0, 1, 1),
                (1, 0, 1),
                (0, 2, 2),
                (2, 0, 2),
                (1, 1, 2),
                (1, 2, 0),
                (2, 1, 0),
                (2, 2, 1),
            ],
        )
        .unwrap();
        let p = ring.permuted(&[0, 2, 1]).unwrap();
        assert!(validate_ring(&p, 1e-9).passed());
        assert_eq!(p.name(2), "a");
        assert_eq!(p.dual(1), 2);
    }
}
