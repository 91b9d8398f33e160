//! Generators for small categories with known data. Every output is run through the full
//! axiom suite before it is returned.

use std::f64::consts::PI;

use crate::braided::{admissible_f_keys, validate_category, CategoryData, FSymbols, RSymbols};
use crate::error::{Error, Result};
use crate::ring::FusionRing;
use crate::C64;

const GEN_TOL: f64 = 1e-12;

fn cis(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn checked(data: CategoryData) -> Result<CategoryData> {
    let v = validate_category(&data, GEN_TOL);
    match v.worst() {
        Some(w) => Err(Error::GeneratorInvalid(format!(
            "{}: {} residual {:.3e}",
            data.name(),
            w.axiom,
            w.value
        ))),
        None => Ok(data),
    }
}

/// Z2 with associator sign `omega` and braiding `R_{xx}^1 = phi`, `phi^2 = omega`.
pub fn gen_z2(omega: f64, phi: C64) -> Result<CategoryData> {
    if (omega.abs() - 1.0).abs() > GEN_TOL || (phi * phi - omega).norm() > GEN_TOL {
        return Err(Error::BadParameters(format!(
            "need omega = +-1 and phi^2 = omega, got omega={omega}, phi={phi}"
        )));
    }
    let ring = FusionRing::from_triples(
        vec!["1".into(), "x".into()],
        &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
    )?;
    let f = admissible_f_keys(&ring)
        .into_iter()
        .map(|k| (k, if k[..3] == [1, 1, 1] { C64::new(omega, 0.0) } else { one() }))
        .collect();
    let r = [
        ([0, 0, 0], one()),
        ([0, 1, 1], one()),
        ([1, 0, 1], one()),
        ([1, 1, 0], phi),
    ]
    .into_iter()
    .collect();
    let name = format!("Z2({},{})", fmt_unit(C64::new(omega, 0.0)), fmt_unit(phi));
    checked(CategoryData::new(name, ring, f, Some(r))?)
}

fn fmt_unit(z: C64) -> String {
    let r = |x: f64| (x - x.round()).abs() < 1e-12;
    match (r(z.re), r(z.im), z.re.round() as i32, z.im.round() as i32) {
        (true, true, re, 0) => re.to_string(),
        (true, true, 0, 1) => "i".into(),
        (true, true, 0, -1) => "-i".into(),
        _ => format!("{:.6}{:+.6}i", z.re, z.im),
    }
}

/// Label names for a cyclic group: `1, g, g2, g3, ...`.
pub fn cyclic_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            k => format!("g{k}"),
        })
        .collect()
}

/// Pointed Z_N with `R_{ab} = exp(2 pi i p ab/N)` and associator
/// `F^{abc} = exp(2 pi i p a (b + c - [b+c]_N)/N)`.
///
/// For even `N` the admissible `p` are multiples of 1/2, for odd `N` integers.
pub fn gen_pointed_cyclic(n: usize, p: f64) -> Result<CategoryData> {
    if n == 0 {
        return Err(Error::BadParameters("N must be at least 1".into()));
    }
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            triples.push((a, b, (a + b) % n));
        }
    }
    let ring = FusionRing::from_triples(cyclic_names(n), &triples)?;
    let nf = n as f64;
    let mut f = FSymbols::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let carry = (b + c - (b + c) % n) as f64;
                let v = cis(2.0 * PI * p * a as f64 * carry / nf);
                f.insert([a, b, c, (a + b + c) % n, (a + b) % n, (b + c) % n], v);
            }
        }
    }
    let mut r = RSymbols::new();
    for a in 0..n {
        for b in 0..n {
            r.insert([a, b, (a + b) % n], cis(2.0 * PI * p * (a * b) as f64 / nf));
        }
    }
    checked(CategoryData::new(format!("Z{n}(p={p})"), ring, f, Some(r))?)
}

/// Hard-coded Fibonacci or Ising data.
pub fn gen_named(name: &str) -> Result<CategoryData> {
    match name {
        "fibonacci" => fibonacci(),
        "ising" => ising(),
        _ => Err(Error::BadParameters(format!("unknown category '{name}'"))),
    }
}

fn fibonacci() -> Result<CategoryData> {
    let ring = FusionRing::from_triples(
        vec!["1".into(), "t".into()],
        &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)],
    )?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let f = admissible_f_keys(&ring)
        .into_iter()
        .map(|k| {
            let v = if k[..4] == [1, 1, 1, 1] {
                match (k[4], k[5]) {
                    (0, 0) => 1.0 / phi,
                    (1, 1) => -1.0 / phi,
                    _ => phi.powf(-0.5),
                }
            } else {
                1.0
            };
            (k, C64::new(v, 0.0))
        })
        .collect();
    let r = [
        ([0, 0, 0], one()),
        ([0, 1, 1], one()),
        ([1, 0, 1], one()),
        ([1, 1, 0], cis(-4.0 * PI / 5.0)),
        ([1, 1, 1], cis(3.0 * PI / 5.0)),
    ]
    .into_iter()
    .collect();
    checked(CategoryData::new("Fibonacci", ring, f, Some(r))?)
}

fn ising() -> Result<CategoryData> {
    // 0 = 1, 1 = s (sigma), 2 = p (psi)
    let ring = FusionRing::from_triples(
        vec!["1".into(), "s".into(), "p".into()],
        &[
            (0, 0, 0),
            (0, 1, 1),
            (0, 2, 2),
            (1, 0, 1),
            (2, 0, 2),
            (1, 1, 0),
            (1, 1, 2),
            (1, 2, 1),
            (2, 1, 1),
            (2, 2, 0),
        ],
    )?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let f = admissible_f_keys(&ring)
        .into_iter()
        .map(|k| {
            let v = match k {
                [1, 1, 1, 1, e, f] => {
                    if e == 2 && f == 2 {
                        -h
                    } else {
                        h
                    }
                }
                [1, 2, 1, 2, _, _] | [2, 1, 2, 1, _, _] => -1.0,
                _ => 1.0,
            };
            (k, C64::new(v, 0.0))
        })
        .collect();
    let mut r = RSymbols::new();
    for a in 0..3 {
        for b in 0..3 {
            for &c in ring.fuse(a, b) {
                let v = match (a, b, c) {
                    (1, 1, 0) => cis(-PI / 8.0),
                    (1, 1, 2) => cis(3.0 * PI / 8.0),
                    (1, 2, 1) | (2, 1, 1) => -C64::i(),
                    (2, 2, 0) => -one(),
                    _ => one(),
                };
                r.insert([a, b, c], v);
            }
        }
    }
    checked(CategoryData::new("Ising", ring, f, Some(r))?)
}

/// Deligne product. Label `(a,b)` is named `a*b`, except the unit which stays `1`.
pub fn deligne_product(x: &CategoryData, y: &CategoryData) -> Result<CategoryData> {
    let (rx, ry) = (x.ring(), y.ring());
    let (nx, ny) = (rx.rank(), ry.rank());
    let idx = |a: usize, b: usize| a * ny + b;
    let mut names = Vec::with_capacity(nx * ny);
    for a in 0..nx {
        for b in 0..ny {
            names.push(if a == 0 && b == 0 {
                "1".to_string()
            } else {
                format!("{}*{}", rx.name(a), ry.name(b))
            });
        }
    }
    let mut triples = Vec::new();
    for a in 0..nx {
        for b in 0..ny {
            for c in 0..nx {
                for d in 0..ny {
                    for &e in rx.fuse(a, c) {
                        for &g in ry.fuse(b, d) {
                            triples.push((idx(a, b), idx(c, d), idx(e, g)));
                        }
                    }
                }
            }
        }
    }
    let ring = FusionRing::from_triples(names, &triples)?;
    let mut f = FSymbols::new();
    for (kx, vx) in x.f_symbols().iter() {
        for (ky, vy) in y.f_symbols().iter() {
            let mut k = [0; 6];
            for i in 0..6 {
                k[i] = idx(kx[i], ky[i]);
            }
            f.insert(k, vx * vy);
        }
    }
    let r = match (x.r_symbols(), y.r_symbols()) {
        (Some(ra), Some(rb)) => {
            let mut r = RSymbols::new();
            for (kx, vx) in ra.iter() {
                for (ky, vy) in rb.iter() {
                    r.insert([idx(kx[0], ky[0]), idx(kx[1], ky[1]), idx(kx[2], ky[2])], vx * vy);
                }
            }
            Some(r)
        }
        _ => None,
    };
    let name = format!("{} x {}", x.name(), y.name());
    checked(CategoryData::new(name, ring, f, r)?)
}
