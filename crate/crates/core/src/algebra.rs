//! Algebra objects `A = (+)_a a` with multiplication coefficients `m_{ab}^c`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::braided::{cdist, CategoryData};
use crate::check::{Residual, ValidationResult};
use crate::error::{Error, Result};
use crate::smat::SMatrixSuite;
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraObject {
    support: Vec<usize>,
    in_support: Vec<bool>,
    m: HashMap<[usize; 3], C64>,
    d_a: f64,
}

impl AlgebraObject {
    /// `support` must contain the unit and each simple at most once; `m` keys must lie inside
    /// the support and be admissible. Absent admissible keys are zero.
    pub fn new(data: &CategoryData, support: &[usize], m: HashMap<[usize; 3], C64>) -> Result<Self> {
        let ring = data.ring();
        let set: BTreeSet<usize> = support.iter().copied().collect();
        if set.len() != support.len() {
            return Err(Error::InvalidAlgebra("a simple object occurs more than once".into()));
        }
        if !set.contains(&0) {
            return Err(Error::InvalidAlgebra("support must contain the unit".into()));
        }
        if let Some(&bad) = set.iter().find(|&&a| a >= ring.rank()) {
            return Err(Error::InvalidAlgebra(format!("label {bad} out of range")));
        }
        let mut in_support = vec![false; ring.rank()];
        for &a in &set {
            in_support[a] = true;
        }
        for k in m.keys() {
            if !k.iter().all(|&x| x < ring.rank() && in_support[x]) || !ring.n(k[0], k[1], k[2]) {
                return Err(Error::InvalidAlgebra(format!("key {k:?} outside the support or inadmissible")));
            }
        }
        let d_a = set.iter().map(|&a| ring.d(a)).sum();
        Ok(AlgebraObject {
            support: set.into_iter().collect(),
            in_support,
            m,
            d_a,
        })
    }

    /// The unit algebra `A = 1`.
    pub fn unit(data: &CategoryData) -> Self {
        let m = HashMap::from([([0, 0, 0], C64::new(1.0, 0.0))]);
        Self::new(data, &[0], m).expect("unit algebra")
    }

    /// `m = 1` on every admissible triple of the support.
    pub fn trivial_on(data: &CategoryData, support: &[usize]) -> Result<Self> {
        let ring = data.ring();
        let mut m = HashMap::new();
        for &a in support {
            for &b in support {
                for &c in ring.fuse(a, b) {
                    if support.contains(&c) {
                        m.insert([a, b, c], C64::new(1.0, 0.0));
                    }
                }
            }
        }
        Self::new(data, support, m)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn contains(&self, a: usize) -> bool {
        self.in_support.get(a).copied().unwrap_or(false)
    }

    pub fn d_a(&self) -> f64 {
        self.d_a
    }

    #[inline]
    pub fn m(&self, a: usize, b: usize, c: usize) -> C64 {
        self.m.get(&[a, b, c]).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn entries(&self) -> BTreeMap<[usize; 3], C64> {
        self.m.iter().map(|(k, v)| (*k, *v)).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.support == [0]
    }

    /// The same algebra after the vertex gauge `u` of
    /// [`CategoryData::gauge_transformed`]: `m'(a,b,c) = m(a,b,c) / u(a,b,c)`.
    pub fn gauge_transformed(&self, u: impl Fn(usize, usize, usize) -> C64) -> Self {
        let m = self.m.iter().map(|(&[a, b, c], v)| ([a, b, c], v / u(a, b, c))).collect();
        AlgebraObject { m, ..self.clone() }
    }

    /// Relabel with `perm` as in [`CategoryData::permuted`].
    pub fn permuted(&self, data: &CategoryData, perm: &[usize]) -> Result<Self> {
        let support: Vec<usize> = self.support.iter().map(|&a| perm[a]).collect();
        let m = self.m.iter().map(|(k, v)| (k.map(|i| perm[i]), *v)).collect();
        Self::new(data, &support, m)
    }
}

/// Associativity, unit law, Frobenius pairing and strong separability.
///
/// With comultiplication `mu = conj(m)`, the Frobenius form `eps . m` is nondegenerate when
/// the support is closed under duals and every `m_{a abar}^1` is nonzero.
pub fn validate_algebra(data: &CategoryData, alg: &AlgebraObject, tol: f64) -> ValidationResult {
    let ring = data.ring();
    let sup = alg.support();
    let mut assoc = Residual::zero("associativity");
    let mut unit = Residual::zero("unit");
    let mut frob = Residual::zero("frobenius");
    let mut sep = Residual::zero("separability");

    for &a in sup {
        for &b in sup {
            for &c in sup {
                for &d in sup {
                    for &y in ring.fuse(b, c) {
                        if !alg.contains(y) || !ring.n(a, y, d) {
                            continue;
                        }
                        let lhs = alg.m(a, y, d) * alg.m(b, c, y);
                        let rhs: C64 = ring
                            .fuse(a, b)
                            .iter()
                            .filter(|&&x| alg.contains(x) && ring.n(x, c, d))
                            .map(|&x| alg.m(a, b, x) * alg.m(x, c, d) * data.f(a, b, c, d, x, y))
                            .sum();
                        assoc.record(cdist(lhs, rhs), &[a, b, c, d, y]);
                    }
                }
            }
        }
    }
    let one = C64::new(1.0, 0.0);
    for &x in sup {
        unit.record(cdist(alg.m(0, x, x), one), &[0, x, x]);
        unit.record(cdist(alg.m(x, 0, x), one), &[x, 0, x]);
    }
    for &a in sup {
        let ab = ring.dual(a);
        if !alg.contains(ab) {
            frob.record(1.0, &[a]);
        } else {
            let v = alg.m(a, ab, 0).norm();
            if v <= tol {
                frob.record(1.0 - v, &[a, ab, 0]);
            }
        }
    }
    for &a in sup {
        let mut s = 0.0;
        for &b in sup {
            for &c in sup {
                if ring.n(b, c, a) {
                    s += alg.m(b, c, a).norm_sqr() * (ring.d(b) * ring.d(c) / ring.d(a)).sqrt();
                }
            }
        }
        sep.record((s - alg.d_a()).abs(), &[a]);
    }
    ValidationResult {
        tol,
        checks: vec![assoc, unit, frob, sep],
    }
}

/// `max |R_{ab}^c m_{ba}^c - m_{ab}^c|` and whether it is below `tol`.
pub fn check_commutative(data: &CategoryData, alg: &AlgebraObject, tol: f64) -> Result<(bool, f64)> {
    if !data.is_braided() {
        return Err(Error::NoBraiding);
    }
    let ring = data.ring();
    let mut worst = 0.0f64;
    for &a in alg.support() {
        for &b in alg.support() {
            for &c in ring.fuse(a, b) {
                if alg.contains(c) {
                    worst = worst.max(cdist(data.r(a, b, c) * alg.m(b, a, c), alg.m(a, b, c)));
                }
            }
        }
    }
    Ok((worst < tol, worst))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MuegerRelation {
    TrivialIntersection,
    FullyContained,
    Other,
}

pub fn mueger_relation(suite: &SMatrixSuite, alg: &AlgebraObject) -> MuegerRelation {
    let inter = alg.support().iter().filter(|&&a| suite.mueger[a]).count();
    if inter == 1 {
        MuegerRelation::TrivialIntersection
    } else if inter == alg.support().len() {
        MuegerRelation::FullyContained
    } else {
        MuegerRelation::Other
    }
}

/// An enumerated algebra with its flags.
#[derive(Debug, Clone, PartialEq)]
pub struct FoundAlgebra {
    pub algebra: AlgebraObject,
    pub commutative: bool,
}

/// Group law of a pointed fusion ring.
struct Group {
    mul: Vec<Vec<usize>>,
}

impl Group {
    fn from_data(data: &CategoryData, tol: f64) -> Result<Self> {
        let ring = data.ring();
        if !ring.is_pointed(tol) {
            return Err(Error::Unsupported("algebra enumeration needs a pointed category".into()));
        }
        let r = ring.rank();
        let mul = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| match ring.fuse(a, b) {
                        [c] => Ok(*c),
                        _ => Err(Error::Unsupported("fusion is not a group law".into())),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Group { mul })
    }

    fn close(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        set.insert(0);
        loop {
            let mut grown = set.clone();
            for &a in &set {
                for &b in &set {
                    grown.insert(self.mul[a][b]);
                }
            }
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    fn subgroups(&self) -> Vec<Vec<usize>> {
        let r = self.mul.len();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([BTreeSet::from([0])]);
        seen.insert(BTreeSet::from([0]));
        while let Some(h) = queue.pop_front() {
            for g in 0..r {
                if h.contains(&g) {
                    continue;
                }
                let mut s = h.clone();
                s.insert(g);
                let s = self.close(&s);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().map(|s| s.into_iter().collect()).collect();
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn phase_order(z: C64) -> Option<usize> {
    let mut p = z;
    for n in 1..=4096 {
        if cdist(p, C64::new(1.0, 0.0)) < 1e-9 {
            return Some(n);
        }
        p *= z;
    }
    None
}

const BRANCH_LIMIT: usize = 2_000_000;

/// Twisted group algebras on subgroups of a pointed category, one per isomorphism class.
///
/// Each subgroup `H` is split into cyclic factors `g_1..g_r`. The multiplication phases are
/// gauge fixed to 1 along the coordinate tree and on every wrap-around edge
/// `((n_i - 1) g_i, g_i)`, the associativity constraints are propagated, and a remaining phase
/// is branched over `K`-th roots of unity (`K = lcm(2|H|^2, orders of F on H)`) until one
/// solution is found. The other classes are that solution times the bicharacters
/// `prod_{i<j} zeta_ij^{a_i b_j}`, which represent every class of 2-cocycles on `H`.
pub fn enumerate_algebras_pointed(data: &CategoryData, tol: f64) -> Result<Vec<FoundAlgebra>> {
    let group = Group::from_data(data, tol)?;
    let subgroups = group.subgroups();
    let mut out = Vec::new();
    for h in &subgroups {
        for m in solve_subgroup(data, &group, h, &subgroups)? {
            let alg = AlgebraObject::new(data, h, m)?;
            let v = validate_algebra(data, &alg, tol.max(1e-9));
            if !v.passed() {
                return Err(Error::InvalidAlgebra(format!(
                    "enumerated algebra on {h:?} fails {:?}",
                    v.worst().map(|r| r.axiom)
                )));
            }
            let commutative = if data.is_braided() {
                check_commutative(data, &alg, tol.max(1e-9))?.0
            } else {
                false
            };
            out.push(FoundAlgebra {
                algebra: alg,
                commutative,
            });
        }
    }
    Ok(out)
}

type Phases = HashMap<(usize, usize), C64>;

impl Group {
    fn order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul[x][g];
            n += 1;
        }
        n
    }

    /// Cyclic basis of the subgroup `h`, as `(generator, order)` pairs.
    fn basis(&self, h: &[usize], subgroups: &[Vec<usize>]) -> Vec<(usize, usize)> {
        if h.len() == 1 {
            return Vec::new();
        }
        let g = *h
            .iter()
            .max_by_key(|&&x| (self.order(x), std::cmp::Reverse(x)))
            .unwrap();
        let n = self.order(g);
        let cyc = self.close(&BTreeSet::from([g]));
        let k = subgroups
            .iter()
            .find(|k| {
                k.len() * n == h.len()
                    && k.iter().all(|x| h.contains(x))
                    && k.iter().filter(|x| cyc.contains(x)).count() == 1
            })
            .expect("a maximal cyclic subgroup has a complement");
        let mut out = vec![(g, n)];
        out.extend(self.basis(k, subgroups));
        out
    }

    fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul[acc][g])
    }
}

fn solve_subgroup(
    data: &CategoryData,
    g: &Group,
    h: &[usize],
    subgroups: &[Vec<usize>],
) -> Result<Vec<HashMap<[usize; 3], C64>>> {
    let mul = &g.mul;
    let fval = |a: usize, b: usize, c: usize| {
        data.f(a, b, c, mul[mul[a][b]][c], mul[a][b], mul[b][c])
    };
    let mut k = 2 * h.len() * h.len();
    for &a in h {
        for &b in h {
            for &c in h {
                let ord = phase_order(fval(a, b, c)).ok_or_else(|| {
                    Error::Unsupported("associator phase is not a root of unity of small order".into())
                })?;
                k = lcm(k, ord);
            }
        }
    }

    let basis = g.basis(h, subgroups);
    let mut coords: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut tuple = vec![0usize; basis.len()];
    loop {
        let elem = basis
            .iter()
            .zip(&tuple)
            .fold(0, |acc, (&(gen, _), &t)| mul[acc][g.power(gen, t)]);
        coords.insert(elem, tuple.clone());
        let mut i = 0;
        while i < basis.len() {
            tuple[i] += 1;
            if tuple[i] < basis[i].1 {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == basis.len() {
            break;
        }
    }
    debug_assert_eq!(coords.len(), h.len());

    let one = C64::new(1.0, 0.0);
    let mut fixed: Phases = HashMap::new();
    for &x in h {
        fixed.insert((0, x), one);
        fixed.insert((x, 0), one);
    }
    for (&x, c) in &coords {
        // parent of x: lower its last nonzero coordinate by one
        if let Some(i) = (0..c.len()).rev().find(|&i| c[i] > 0) {
            let parent = mul[x][g.power(basis[i].0, basis[i].1 - 1)];
            fixed.insert((parent, basis[i].0), one);
        }
    }
    for &(gen, n) in &basis {
        fixed.insert((g.power(gen, n - 1), gen), one);
    }

    let mut eqs = Vec::new();
    for &a in h {
        for &b in h {
            for &c in h {
                // m(a, bc) m(b, c) = m(a, b) m(ab, c) F(a, b, c)
                eqs.push(([(a, mul[b][c]), (b, c)], [(a, b), (mul[a][b], c)], fval(a, b, c)));
            }
        }
    }

    let mut base: Option<Phases> = None;
    let mut branches = 0usize;
    let mut stack = vec![fixed];
    while let Some(mut m) = stack.pop() {
        branches += 1;
        if branches > BRANCH_LIMIT {
            return Err(Error::Unsupported("algebra search exceeded its branch limit".into()));
        }
        if !propagate(&mut m, &eqs) {
            continue;
        }
        let free = h
            .iter()
            .flat_map(|&a| h.iter().map(move |&b| (a, b)))
            .find(|key| !m.contains_key(key));
        match free {
            None => {
                base = Some(m);
                break;
            }
            Some(key) => {
                for j in (0..k).rev() {
                    let mut next = m.clone();
                    let angle = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
                    next.insert(key, C64::from_polar(1.0, angle));
                    stack.push(next);
                }
            }
        }
    }
    let Some(base) = base else {
        return Ok(Vec::new());
    };

    // one bicharacter per choice of zeta_ij, i < j
    let pairs: Vec<(usize, usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, gcd(basis[i].1, basis[j].1)))
        .collect();
    let mut choice = vec![0usize; pairs.len()];
    let mut out = Vec::new();
    loop {
        let mut m = HashMap::new();
        for &a in h {
            for &b in h {
                let (ca, cb) = (&coords[&a], &coords[&b]);
                let mut phase = 0.0;
                for (p, &(i, j, q)) in pairs.iter().enumerate() {
                    phase += (choice[p] * ca[i] * cb[j]) as f64 / q as f64;
                }
                let beta = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
                m.insert([a, b, mul[a][b]], base[&(a, b)] * beta);
            }
        }
        out.push(m);
        let mut p = 0;
        while p < pairs.len() {
            choice[p] += 1;
            if choice[p] < pairs[p].2 {
                break;
            }
            choice[p] = 0;
            p += 1;
        }
        if p == pairs.len() {
            break;
        }
    }
    Ok(out)
}

type Eq = ([(usize, usize); 2], [(usize, usize); 2], C64);

/// Solve single-unknown equations until nothing changes. False on contradiction.
fn propagate(m: &mut Phases, eqs: &[Eq]) -> bool {
    loop {
        let mut progress = false;
        for (lhs, rhs, f) in eqs {
            let l: Vec<Option<C64>> = lhs.iter().map(|k| m.get(k).copied()).collect();
            let r: Vec<Option<C64>> = rhs.iter().map(|k| m.get(k).copied()).collect();
            let unknown: Vec<(usize, bool)> = l
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_none())
                .map(|(i, _)| (i, true))
                .chain(r.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| (i, false)))
                .collect();
            // the same key may appear twice in one equation
            let mut keys: Vec<(usize, usize)> = unknown
                .iter()
                .map(|&(i, left)| if left { lhs[i] } else { rhs[i] })
                .collect();
            keys.dedup();
            match keys.len() {
                0 => {
                    let lv = l[0].unwrap() * l[1].unwrap();
                    let rv = r[0].unwrap() * r[1].unwrap() * f;
                    if cdist(lv, rv) > 1e-7 {
                        return false;
                    }
                }
                1 if unknown.len() == 1 => {
                    let (i, left) = unknown[0];
                    let val = if left {
                        r[0].unwrap() * r[1].unwrap() * f / l[1 - i].unwrap()
                    } else {
                        l[0].unwrap() * l[1].unwrap() / (r[1 - i].unwrap() * f)
                    };
                    m.insert(keys[0], val / val.norm());
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            return true;
        }
    }
}
