//! F- and R-symbols and the axiom checkers for (braided, ribbon) fusion categories.
//!
//! Conventions: `F^d_{abc}[e,f]` maps `((ab)_e c)_d` to `(a(bc)_f)_d`, and `R_{ab}^c` is the
//! braiding eigenvalue on the `a (x) b -> c` vertex. All keys are multiplicity free.

use std::collections::{BTreeMap, HashMap};

use crate::check::{Residual, ValidationResult};
use crate::error::{Error, Result};
use crate::ring::{check_perm, validate_ring, FusionRing};
use crate::C64;

/// Key `(a, b, c, d, e, f)` of `F^d_{abc}[e,f]`.
pub type FKey = [usize; 6];
/// Key `(a, b, c)` of `R_{ab}^c`.
pub type RKey = [usize; 3];

#[inline]
pub(crate) fn cdist(a: C64, b: C64) -> f64 {
    (a.re - b.re).abs().max((a.im - b.im).abs())
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FSymbols {
    map: HashMap<FKey, C64>,
}

impl FSymbols {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: FKey, value: C64) -> Option<C64> {
        self.map.insert(key, value)
    }

    /// Value of `F^d_{abc}[e,f]`, zero for absent keys.
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> C64 {
        self.map
            .get(&[a, b, c, d, e, f])
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn entry(&self, key: &FKey) -> Option<C64> {
        self.map.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Entries sorted by key.
    pub fn sorted(&self) -> BTreeMap<FKey, C64> {
        self.map.iter().map(|(k, v)| (*k, *v)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FKey, &C64)> {
        self.map.iter()
    }

    pub fn get_mut(&mut self, key: &FKey) -> Option<&mut C64> {
        self.map.get_mut(key)
    }
}

impl FromIterator<(FKey, C64)> for FSymbols {
    fn from_iter<T: IntoIterator<Item = (FKey, C64)>>(iter: T) -> Self {
        FSymbols {
            map: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RSymbols {
    map: HashMap<RKey, C64>,
}

impl RSymbols {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: RKey, value: C64) -> Option<C64> {
        self.map.insert(key, value)
    }

    /// Value of `R_{ab}^c`, zero for absent keys.
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> C64 {
        self.map
            .get(&[a, b, c])
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn sorted(&self) -> BTreeMap<RKey, C64> {
        self.map.iter().map(|(k, v)| (*k, *v)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RKey, &C64)> {
        self.map.iter()
    }

    pub fn get_mut(&mut self, key: &RKey) -> Option<&mut C64> {
        self.map.get_mut(key)
    }
}

impl FromIterator<(RKey, C64)> for RSymbols {
    fn from_iter<T: IntoIterator<Item = (RKey, C64)>>(iter: T) -> Self {
        RSymbols {
            map: iter.into_iter().collect(),
        }
    }
}

/// All admissible F keys of a ring, in lexicographic order.
pub fn admissible_f_keys(ring: &FusionRing) -> Vec<FKey> {
    let r = ring.rank();
    let mut keys = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for &e in ring.fuse(a, b) {
                        if !ring.n(e, c, d) {
                            continue;
                        }
                        for &f in ring.fuse(b, c) {
                            if ring.n(a, f, d) {
                                keys.push([a, b, c, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
    keys
}

fn is_admissible_f(ring: &FusionRing, k: &FKey) -> bool {
    let [a, b, c, d, e, f] = *k;
    let r = ring.rank();
    k.iter().all(|&x| x < r) && ring.n(a, b, e) && ring.n(e, c, d) && ring.n(b, c, f) && ring.n(a, f, d)
}

/// A fusion category with optional braiding, plus derived twists and Frobenius-Schur indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryData {
    name: String,
    ring: FusionRing,
    f: FSymbols,
    r: Option<RSymbols>,
    theta: Vec<C64>,
    kappa: Vec<C64>,
}

impl CategoryData {
    /// Assemble category data. Fails if an admissible key is missing or an inadmissible key
    /// is present; axioms are not checked here (see [`validate_category`]).
    pub fn new(
        name: impl Into<String>,
        ring: FusionRing,
        f: FSymbols,
        r: Option<RSymbols>,
    ) -> Result<Self> {
        let fmt = |k: &[usize]| {
            let names: Vec<&str> = k.iter().map(|&i| ring.name(i.min(ring.rank() - 1))).collect();
            format!("({})", names.join(","))
        };
        for key in admissible_f_keys(&ring) {
            if f.entry(&key).is_none() {
                return Err(Error::MissingEntry(format!("F{}", fmt(&key))));
            }
        }
        for (key, _) in f.iter() {
            if !is_admissible_f(&ring, key) {
                return Err(Error::UnexpectedEntry(format!("F{}", fmt(key))));
            }
        }
        if let Some(r) = &r {
            for a in 0..ring.rank() {
                for b in 0..ring.rank() {
                    for &c in ring.fuse(a, b) {
                        if !r.map.contains_key(&[a, b, c]) {
                            return Err(Error::MissingEntry(format!("R{}", fmt(&[a, b, c]))));
                        }
                    }
                }
            }
            for key in r.map.keys() {
                let ok = key.iter().all(|&x| x < ring.rank()) && ring.n(key[0], key[1], key[2]);
                if !ok {
                    return Err(Error::UnexpectedEntry(format!("R{}", fmt(key))));
                }
            }
        }
        let kappa = (0..ring.rank())
            .map(|a| f.get(a, ring.dual(a), a, a, 0, 0) * ring.d(a))
            .collect();
        let theta = match &r {
            Some(r) => (0..ring.rank())
                .map(|a| {
                    ring.fuse(a, a)
                        .iter()
                        .map(|&c| r.get(a, a, c) * ring.d(c))
                        .sum::<C64>()
                        / ring.d(a)
                })
                .collect(),
            None => Vec::new(),
        };
        Ok(CategoryData {
            name: name.into(),
            ring,
            f,
            r,
            theta,
            kappa,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn f_symbols(&self) -> &FSymbols {
        &self.f
    }

    pub fn r_symbols(&self) -> Option<&RSymbols> {
        self.r.as_ref()
    }

    #[inline]
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> C64 {
        self.f.get(a, b, c, d, e, f)
    }

    /// `R_{ab}^c`; zero when the category has no braiding.
    #[inline]
    pub fn r(&self, a: usize, b: usize, c: usize) -> C64 {
        self.r
            .as_ref()
            .map(|r| r.get(a, b, c))
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn is_braided(&self) -> bool {
        self.r.is_some()
    }

    /// Twists from the trace formula; empty when there is no braiding.
    pub fn theta(&self) -> &[C64] {
        &self.theta
    }

    pub fn kappa(&self) -> &[C64] {
        &self.kappa
    }

    /// Relabel simple objects: old label `a` becomes `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.rank())?;
        let ring = self.ring.permuted(perm)?;
        let f = self
            .f
            .iter()
            .map(|(k, v)| (k.map(|i| perm[i]), *v))
            .collect();
        let r = self
            .r
            .as_ref()
            .map(|r| r.iter().map(|(k, v)| (k.map(|i| perm[i]), *v)).collect());
        CategoryData::new(self.name.clone(), ring, f, r)
    }

    /// Apply a vertex gauge transformation `u(a,b,c)` (a phase per admissible vertex).
    ///
    /// `u` must equal 1 whenever `a` or `b` is the unit to keep the unit strict.
    pub fn gauge_transformed(&self, u: impl Fn(usize, usize, usize) -> C64) -> Result<Self> {
        let f = self
            .f
            .iter()
            .map(|(&[a, b, c, d, e, f], v)| {
                ([a, b, c, d, e, f], v * u(a, b, e) * u(e, c, d) / (u(b, c, f) * u(a, f, d)))
            })
            .collect();
        let r = self.r.as_ref().map(|r| {
            r.iter()
                .map(|(&[a, b, c], v)| ([a, b, c], v * u(b, a, c) / u(a, b, c)))
                .collect()
        });
        CategoryData::new(self.name.clone(), self.ring.clone(), f, r)
    }

    /// Copy with one F entry replaced.
    pub fn with_f(&self, key: FKey, value: C64) -> Result<Self> {
        let mut f = self.f.clone();
        match f.get_mut(&key) {
            Some(v) => *v = value,
            None => return Err(Error::UnexpectedEntry(format!("F{key:?}"))),
        }
        CategoryData::new(self.name.clone(), self.ring.clone(), f, self.r.clone())
    }

    /// Copy with one R entry replaced.
    pub fn with_r(&self, key: RKey, value: C64) -> Result<Self> {
        let mut r = self.r.clone().ok_or(Error::NoBraiding)?;
        match r.get_mut(&key) {
            Some(v) => *v = value,
            None => return Err(Error::UnexpectedEntry(format!("R{key:?}"))),
        }
        CategoryData::new(self.name.clone(), self.ring.clone(), self.f.clone(), Some(r))
    }
}

/// Worst violation of the pentagon equation
/// `F^e_{fcd}[g,x] F^e_{abx}[f,y] = sum_z F^g_{abc}[f,z] F^e_{azd}[g,y] F^y_{bcd}[z,x]`.
pub fn check_pentagon(data: &CategoryData) -> Residual {
    let ring = data.ring();
    let rk = ring.rank();
    let mut res = Residual::zero("pentagon");
    for a in 0..rk {
        for b in 0..rk {
            for c in 0..rk {
                for d in 0..rk {
                    for &f in ring.fuse(a, b) {
                        for &g in ring.fuse(f, c) {
                            for &e in ring.fuse(g, d) {
                                for &x in ring.fuse(c, d) {
                                    for &y in ring.fuse(b, x) {
                                        if !ring.n(a, y, e) {
                                            continue;
                                        }
                                        let lhs = data.f(f, c, d, e, g, x) * data.f(a, b, x, e, f, y);
                                        let rhs: C64 = ring
                                            .fuse(b, c)
                                            .iter()
                                            .map(|&z| {
                                                data.f(a, b, c, g, f, z)
                                                    * data.f(a, z, d, e, g, y)
                                                    * data.f(b, c, d, y, z, x)
                                            })
                                            .sum();
                                        res.record(cdist(lhs, rhs), &[a, b, c, d, e, f, g, x, y]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    res
}

/// F entries with a unit among `a, b, c` must equal 1.
pub fn check_unit(data: &CategoryData) -> Residual {
    let mut res = Residual::zero("unit");
    for (k, v) in data.f_symbols().iter() {
        if k[0] == 0 || k[1] == 0 || k[2] == 0 {
            res.record(cdist(*v, C64::new(1.0, 0.0)), k);
        }
    }
    res
}

/// Max over `(a,b,c,d)` blocks of `||F F^dagger - I||_inf`.
pub fn check_unitarity(data: &CategoryData) -> Residual {
    let ring = data.ring();
    let rk = ring.rank();
    let mut res = Residual::zero("unitarity");
    for a in 0..rk {
        for b in 0..rk {
            for c in 0..rk {
                for d in 0..rk {
                    let es: Vec<usize> = ring.fuse(a, b).iter().copied().filter(|&e| ring.n(e, c, d)).collect();
                    let fs: Vec<usize> = ring.fuse(b, c).iter().copied().filter(|&f| ring.n(a, f, d)).collect();
                    if es.is_empty() && fs.is_empty() {
                        continue;
                    }
                    if es.len() != fs.len() {
                        res.record(f64::INFINITY, &[a, b, c, d]);
                        continue;
                    }
                    for &e1 in &es {
                        for &e2 in &es {
                            let dot: C64 = fs
                                .iter()
                                .map(|&f| data.f(a, b, c, d, e1, f) * data.f(a, b, c, d, e2, f).conj())
                                .sum();
                            let want = if e1 == e2 { 1.0 } else { 0.0 };
                            res.record(cdist(dot, C64::new(want, 0.0)), &[a, b, c, d, e1, e2]);
                        }
                    }
                }
            }
        }
    }
    res
}

/// Worst violation of either hexagon equation:
/// `R_{ac}^e F^d_{acb}[e,f] R_{bc}^f = sum_g F^d_{cab}[e,g] R_{gc}^d F^d_{abc}[g,f]`
/// and the same with every R replaced by the conjugate of its reversed-order partner.
pub fn check_hexagon(data: &CategoryData) -> Result<Residual> {
    if !data.is_braided() {
        return Err(Error::NoBraiding);
    }
    let ring = data.ring();
    let rk = ring.rank();
    let mut res = Residual::zero("hexagon");
    for a in 0..rk {
        for b in 0..rk {
            for c in 0..rk {
                for &e in ring.fuse(a, c) {
                    for &d in ring.fuse(e, b) {
                        for &f in ring.fuse(c, b) {
                            if !ring.n(a, f, d) {
                                continue;
                            }
                            let fm = data.f(a, c, b, d, e, f);
                            let l1 = data.r(a, c, e) * fm * data.r(b, c, f);
                            let l2 = data.r(c, a, e).conj() * fm * data.r(c, b, f).conj();
                            let (mut r1, mut r2) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                            for &g in ring.fuse(a, b) {
                                let x = data.f(c, a, b, d, e, g);
                                let y = data.f(a, b, c, d, g, f);
                                r1 += x * data.r(g, c, d) * y;
                                r2 += x * data.r(c, g, d).conj() * y;
                            }
                            res.record(cdist(l1, r1).max(cdist(l2, r2)), &[a, b, c, d, e, f]);
                        }
                    }
                }
            }
        }
    }
    Ok(res)
}

/// `|R_{ab}^c| = 1` for every admissible key.
pub fn check_r_unitarity(data: &CategoryData) -> Result<Residual> {
    let r = data.r_symbols().ok_or(Error::NoBraiding)?;
    let mut res = Residual::zero("r_unitarity");
    for (k, v) in r.iter() {
        res.record((v.norm() - 1.0).abs(), k);
    }
    Ok(res)
}

/// Twists `theta_a = (1/d_a) sum_c d_c R_{aa}^c`, required to be phases.
pub fn compute_twists(data: &CategoryData, tol: f64) -> Result<Vec<C64>> {
    if !data.is_braided() {
        return Err(Error::NoBraiding);
    }
    for (a, t) in data.theta().iter().enumerate() {
        if (t.norm() - 1.0).abs() > tol {
            return Err(Error::NonPhase {
                label: a,
                modulus: t.norm(),
            });
        }
    }
    Ok(data.theta().to_vec())
}

/// Twist sanity: `|theta_a| = 1`, `theta_1 = 1`, `theta_{dual a} = theta_a`.
pub fn check_twists(data: &CategoryData) -> Result<Residual> {
    if !data.is_braided() {
        return Err(Error::NoBraiding);
    }
    let th = data.theta();
    let mut res = Residual::zero("twist");
    res.record(cdist(th[0], C64::new(1.0, 0.0)), &[0]);
    for a in 0..data.rank() {
        res.record((th[a].norm() - 1.0).abs(), &[a]);
        let ad = data.ring().dual(a);
        res.record(cdist(th[a], th[ad]), &[a, ad]);
    }
    Ok(res)
}

/// Max over admissible `(a,b,c)` of `|R^c_{ba} R^c_{ab} - theta_c/(theta_a theta_b)|`.
pub fn check_ribbon(data: &CategoryData) -> Result<Residual> {
    if !data.is_braided() {
        return Err(Error::NoBraiding);
    }
    let ring = data.ring();
    let th = data.theta();
    let mut res = Residual::zero("ribbon");
    for a in 0..data.rank() {
        for b in 0..data.rank() {
            for &c in ring.fuse(a, b) {
                let lhs = data.r(b, a, c) * data.r(a, b, c);
                let rhs = th[c] / (th[a] * th[b]);
                res.record((lhs - rhs).norm(), &[a, b, c]);
            }
        }
    }
    Ok(res)
}

/// `kappa_a = d_a F^a_{a,abar,a}[1,1]`.
pub fn frobenius_schur(data: &CategoryData, a: usize) -> C64 {
    data.kappa()[a]
}

/// `|kappa_a| = 1`, and `kappa_a` real for self-dual `a`.
pub fn check_frobenius_schur(data: &CategoryData) -> Residual {
    let mut res = Residual::zero("frobenius_schur");
    for (a, k) in data.kappa().iter().enumerate() {
        res.record((k.norm() - 1.0).abs(), &[a]);
        if data.ring().dual(a) == a {
            res.record(k.im.abs(), &[a]);
        }
    }
    res
}

/// Full axiom suite: ring axioms, pentagon, unit, unitarity, Frobenius-Schur and, for braided
/// data, R unitarity, hexagons, twists and ribbon.
pub fn validate_category(data: &CategoryData, tol: f64) -> ValidationResult {
    let mut checks = validate_ring(data.ring(), tol).checks;
    for c in checks.iter_mut() {
        c.axiom = match c.axiom {
            "unit" => "ring_unit",
            other => other,
        };
    }
    checks.push(check_pentagon(data));
    checks.push(check_unit(data));
    checks.push(check_unitarity(data));
    checks.push(check_frobenius_schur(data));
    if data.is_braided() {
        for r in [
            check_r_unitarity(data),
            check_hexagon(data),
            check_twists(data),
            check_ribbon(data),
        ]
        .into_iter()
        .flatten()
        {
            checks.push(r);
        }
    }
    ValidationResult { tol, checks }
}

/// True when the full suite passes and the data carries a braiding.
pub fn is_premodular(data: &CategoryData, tol: f64) -> bool {
    data.is_braided() && validate_category(data, tol).passed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gen_named, gen_pointed_cyclic, gen_z2};
    use std::f64::consts::PI;

    fn cis(x: f64) -> C64 {
        C64::from_polar(1.0, x)
    }

    #[test]
    fn z2_all_four_pass() {
        let i = C64::i();
        for (w, p) in [(1.0, C64::new(1.0, 0.0)), (1.0, -C64::new(1.0, 0.0)), (-1.0, i), (-1.0, -i)] {
            let c = gen_z2(w, p).unwrap();
            let v = validate_category(&c, 1e-12);
            assert!(v.passed(), "{v:?}");
            assert_eq!(check_pentagon(&c).value, 0.0);
            assert!(cdist(c.theta()[1], p) < 1e-15);
        }
    }

    #[test]
    fn trivial_category() {
        let c = gen_pointed_cyclic(1, 0.0).unwrap();
        assert!(validate_category(&c, 1e-12).passed());
        assert_eq!(c.theta(), &[C64::new(1.0, 0.0)]);
        assert_eq!(frobenius_schur(&c, 0), C64::new(1.0, 0.0));
    }

    #[test]
    fn z2_semion_without_braiding_fix_fails_hexagon_by_two() {
        let c = gen_z2(-1.0, C64::i()).unwrap();
        let mut bad = c.with_r([1, 1, 0], C64::new(1.0, 0.0)).unwrap();
        bad = bad.with_r([0, 1, 1], C64::new(1.0, 0.0)).unwrap();
        let h = check_hexagon(&bad).unwrap();
        assert!((h.value - 2.0).abs() < 1e-12, "{h:?}");
        assert_eq!(frobenius_schur(&c, 1), C64::new(-1.0, 0.0));
    }

    #[test]
    fn fibonacci_twist_and_checks() {
        let c = gen_named("fibonacci").unwrap();
        assert!(cdist(c.theta()[1], cis(4.0 * PI / 5.0)) < 1e-12);
        // direct oracle: (1/d)(R^1 + d R^t)
        let d = c.ring().d(1);
        let direct = (cis(-4.0 * PI / 5.0) + cis(3.0 * PI / 5.0) * d) / d;
        assert!(cdist(direct, c.theta()[1]) < 1e-12);
        assert!(check_unitarity(&c).value < 1e-12);
        assert!(check_hexagon(&c).unwrap().value < 1e-12);
        assert!(check_ribbon(&c).unwrap().value < 1e-12);
        assert!(cdist(frobenius_schur(&c, 1), C64::new(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn fibonacci_sign_flip_breaks_pentagon() {
        let c = gen_named("fibonacci").unwrap();
        let key = [1, 1, 1, 1, 1, 1];
        let v = c.f_symbols().entry(&key).unwrap();
        let bad = c.with_f(key, -v).unwrap();
        assert!(check_pentagon(&bad).value > 0.1);
    }

    #[test]
    fn corrupted_block_breaks_unitarity() {
        let c = gen_named("fibonacci").unwrap();
        let key = [1, 1, 1, 1, 0, 1];
        let v = c.f_symbols().entry(&key).unwrap();
        let bad = c.with_f(key, v * 1.01).unwrap();
        assert!(check_unitarity(&bad).value > 1e-3);
    }

    #[test]
    fn missing_and_unexpected_entries() {
        let c = gen_z2(1.0, C64::new(1.0, 0.0)).unwrap();
        let mut f: FSymbols = c.f_symbols().iter().map(|(k, v)| (*k, *v)).collect();
        f.map.remove(&[1, 1, 1, 1, 0, 0]);
        let err = CategoryData::new("z", c.ring().clone(), f.clone(), None).unwrap_err();
        assert!(matches!(err, Error::MissingEntry(ref s) if s == "F(x,x,x,x,1,1)"), "{err}");
        f.insert([1, 1, 1, 1, 0, 0], C64::new(1.0, 0.0));
        f.insert([1, 1, 1, 0, 0, 0], C64::new(1.0, 0.0));
        let err = CategoryData::new("z", c.ring().clone(), f, None).unwrap_err();
        assert!(matches!(err, Error::UnexpectedEntry(_)));
    }

    #[test]
    fn non_phase_twist_detected() {
        let c = gen_named("fibonacci").unwrap();
        let bad = c.with_r([1, 1, 1], C64::new(0.5, 0.0)).unwrap();
        assert!(matches!(compute_twists(&bad, 1e-9), Err(Error::NonPhase { label: 1, .. })));
    }

    #[test]
    fn gauge_transform_preserves_axioms() {
        let c = gen_named("ising").unwrap();
        let g = c
            .gauge_transformed(|a, b, cc| {
                if a == 0 || b == 0 {
                    C64::new(1.0, 0.0)
                } else {
                    cis(0.3 * a as f64 + 0.7 * b as f64 - 0.2 * cc as f64 + 0.1 * (a * b) as f64)
                }
            })
            .unwrap();
        let v = validate_category(&g, 1e-9);
        assert!(v.passed(), "{v:?}");
        for a in 0..3 {
            assert!(cdist(g.theta()[a], c.theta()[a]) < 1e-12);
        }
    }
}
