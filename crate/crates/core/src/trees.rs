//! Fusion-tree combinatorics and brute-force entropy oracles.
//!
//! A labeled tree for `n` boundary labels `x_1..x_n` is the left comb
//! `((x_1 x_2)_{y_1} x_3)_{y_2} ...` with internal labels `y` and final outcome `a`.

use crate::error::{Error, Result};
use crate::ring::FusionRing;

/// Default cap on the number of labeled trees visited by the oracles.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Number of labeled trees with leaves `xs` and outcome `a`.
pub fn tree_count(ring: &FusionRing, xs: &[usize], a: usize) -> u128 {
    let Some((&first, rest)) = xs.split_first() else {
        return 0;
    };
    let r = ring.rank();
    let mut v = vec![0u128; r];
    v[first] = 1;
    for &x in rest {
        let mut w = vec![0u128; r];
        for (y, &cnt) in v.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for &z in ring.fuse(y, x) {
                w[z] += cnt;
            }
        }
        v = w;
    }
    v[a]
}

/// Total number of labeled trees with `n` leaves and outcome in `outcomes`.
pub fn total_trees(ring: &FusionRing, n: usize, outcomes: &[usize]) -> u128 {
    let r = ring.rank();
    if n == 0 {
        return 0;
    }
    let mut v = vec![1u128; r];
    for _ in 1..n {
        let mut w = vec![0u128; r];
        for (y, &cnt) in v.iter().enumerate() {
            for x in 0..r {
                for &z in ring.fuse(y, x) {
                    w[z] += cnt;
                }
            }
        }
        v = w;
    }
    outcomes.iter().map(|&a| v[a]).sum()
}

fn guard(ring: &FusionRing, n: usize, outcomes: &[usize], budget: u128) -> Result<()> {
    let count = total_trees(ring, n, outcomes);
    if count > budget {
        return Err(Error::ExplosionGuard { count, budget });
    }
    Ok(())
}

/// Visit every labeled tree with `n` leaves and outcome in `outcomes`, passing the product of
/// leaf dimensions and the outcome.
fn for_each_tree(ring: &FusionRing, n: usize, outcomes: &[usize], mut visit: impl FnMut(f64, usize)) {
    fn rec(
        ring: &FusionRing,
        left: usize,
        y: usize,
        prod: f64,
        keep: &[bool],
        visit: &mut dyn FnMut(f64, usize),
    ) {
        if left == 0 {
            if keep[y] {
                visit(prod, y);
            }
            return;
        }
        for x in 0..ring.rank() {
            for &z in ring.fuse(y, x) {
                rec(ring, left - 1, z, prod * ring.d(x), keep, visit);
            }
        }
    }
    let mut keep = vec![false; ring.rank()];
    for &a in outcomes {
        keep[a] = true;
    }
    for x in 0..ring.rank() {
        rec(ring, n - 1, x, ring.d(x), &keep, &mut visit);
    }
}

/// `|sum_{trees -> a} prod d_x - d_a Dsq^{n-1}|`, by enumeration.
pub fn check_sum_identity(ring: &FusionRing, n: usize, a: usize, budget: u128) -> Result<f64> {
    if n == 0 {
        return Err(Error::BadParameters("n must be at least 1".into()));
    }
    guard(ring, n, &[a], budget)?;
    let mut sum = 0.0;
    for_each_tree(ring, n, &[a], |p, _| sum += p);
    Ok((sum - ring.d(a) * ring.dsq().powi(n as i32 - 1)).abs())
}

/// `|sum_{trees -> a} (prod d/Dsq^{n-1}) log prod d - n d_a sum_x d_x^2 log d_x / Dsq|`.
pub fn check_sumlog_identity(ring: &FusionRing, n: usize, a: usize, budget: u128) -> Result<f64> {
    if n < 2 {
        return Err(Error::BadParameters("n must be at least 2".into()));
    }
    guard(ring, n, &[a], budget)?;
    let scale = ring.dsq().powi(n as i32 - 1);
    let mut lhs = 0.0;
    for_each_tree(ring, n, &[a], |p, _| lhs += p / scale * p.ln());
    let rhs = n as f64 * ring.d(a) * dlogd(ring) / ring.dsq();
    Ok((lhs - rhs).abs())
}

/// `sum_x d_x^2 log d_x`.
pub(crate) fn dlogd(ring: &FusionRing) -> f64 {
    ring.dims().iter().map(|d| d * d * d.ln()).sum()
}

/// Which fusion outcomes a region may carry.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// A fixed outcome `a`; tree probability `prod d / (d_a Dsq^{n-1})`.
    Fixed(usize),
    /// Any outcome in the algebra support; tree probability `prod d / (Dsq^{n-1} d_A)`.
    Boundary { support: Vec<usize>, d_a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeEntropy {
    pub entropy: f64,
    pub total_probability: f64,
    pub trees: u128,
}

/// Shannon entropy (nats) of the labeled-tree distribution, by full enumeration.
pub fn region_entropy_oracle(
    ring: &FusionRing,
    n: usize,
    outcome: &Outcome,
    budget: u128,
) -> Result<TreeEntropy> {
    if n == 0 {
        return Err(Error::BadParameters("n must be at least 1".into()));
    }
    let (outcomes, norm) = match outcome {
        Outcome::Fixed(a) => (vec![*a], ring.d(*a)),
        Outcome::Boundary { support, d_a } => (support.clone(), *d_a),
    };
    guard(ring, n, &outcomes, budget)?;
    let scale = ring.dsq().powi(n as i32 - 1) * norm;
    let (mut h, mut total, mut trees) = (0.0, 0.0, 0u128);
    for_each_tree(ring, n, &outcomes, |p, _| {
        let q = p / scale;
        total += q;
        trees += 1;
        if q > 0.0 {
            h -= q * q.ln();
        }
    });
    Ok(TreeEntropy {
        entropy: h,
        total_probability: total,
        trees,
    })
}
