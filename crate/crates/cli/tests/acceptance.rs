//! Acceptance criteria 1-10: one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::f64::consts::LN_2;
use std::process::Command;
use std::time::{Duration, Instant};

use premod::algebra::{check_commutative, validate_algebra};
use premod::catalog::{self, deligne_product, emit_category, gen_named, gen_pointed_cyclic, gen_z2};
use premod::entropy::{
    lw_boundary_gamma, lw_gamma, pointed_boundary_rho_check, region_entropy, ww_boundary, ww_delta, RegionSpec,
};
use premod::smat::{check_product_rule, check_sum_rule, transparent_by_monodromy};
use premod::trees::{check_sum_identity, check_sumlog_identity, region_entropy_oracle, Outcome, DEFAULT_BUDGET};
use premod::{
    classify, enumerate_algebras_pointed, gram_spectrum, validate_category, AlgebraObject, CategoryData,
    Classification, Error, C64,
};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn z2_four() -> Vec<CategoryData> {
    let i = C64::i();
    [(1.0, one()), (1.0, -one()), (-1.0, i), (-1.0, -i)]
        .into_iter()
        .map(|(w, p)| gen_z2(w, p).unwrap())
        .collect()
}

fn bundled() -> Vec<CategoryData> {
    catalog::entries().iter().map(|e| e.load().unwrap()).collect()
}

fn axiom_fixtures() -> Vec<CategoryData> {
    let mut v = z2_four();
    v.push(gen_named("fibonacci").unwrap());
    v.push(gen_named("ising").unwrap());
    for n in 1..=6 {
        let steps = if n % 2 == 0 { 2 * n } else { n };
        for k in 0..steps {
            let p = if n % 2 == 0 { k as f64 / 2.0 } else { k as f64 };
            v.push(gen_pointed_cyclic(n, p).unwrap());
        }
    }
    v
}

fn criterion_1() -> Check {
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for c in axiom_fixtures() {
        let t = Instant::now();
        let v = validate_category(&c, 1e-9);
        slowest = slowest.max(t.elapsed());
        ensure(v.passed(), || format!("{} fails: {:?}", c.name(), v.worst()))?;
        for axiom in ["pentagon", "unit", "unitarity", "hexagon", "ribbon"] {
            let r = v.get(axiom).ok_or_else(|| format!("{}: no {axiom} check", c.name()))?;
            ensure(r.value < 1e-9, || format!("{} {axiom} {:.2e}", c.name(), r.value))?;
        }
        count += 1;
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest validation {slowest:?}"))?;

    // every entry of the small fixtures; an evenly spaced sample of the larger cyclic ones
    let mut perturbed = 0;
    let mut targets = z2_four();
    targets.push(gen_named("fibonacci").unwrap());
    targets.push(gen_named("ising").unwrap());
    targets.push(gen_pointed_cyclic(3, 1.0).unwrap());
    let sampled = [gen_pointed_cyclic(4, 0.5).unwrap(), gen_pointed_cyclic(6, 0.5).unwrap()];
    let deltas = [C64::new(1e-3, 0.0), C64::new(0.0, 1e-3)];
    for (c, stride) in targets.iter().map(|c| (c, 1)).chain(sampled.iter().map(|c| (c, 11))) {
        let fkeys: Vec<_> = c.f_symbols().sorted().into_keys().collect();
        for k in fkeys.iter().step_by(stride) {
            for d in deltas {
                let bad = c.with_f(*k, c.f_symbols().get(k[0], k[1], k[2], k[3], k[4], k[5]) + d).unwrap();
                ensure(!validate_category(&bad, 1e-9).passed(), || format!("{}: F{k:?} + {d} not flagged", c.name()))?;
                perturbed += 1;
            }
        }
        let rkeys: Vec<_> = c.r_symbols().unwrap().sorted().into_keys().collect();
        for k in rkeys.iter().step_by(stride) {
            for d in deltas {
                let bad = c.with_r(*k, c.r(k[0], k[1], k[2]) + d).unwrap();
                ensure(!validate_category(&bad, 1e-9).passed(), || format!("{}: R{k:?} + {d} not flagged", c.name()))?;
                perturbed += 1;
            }
        }
    }
    Ok(format!(
        "{count} categories pass below 1e-9 (slowest {:.1} ms); {perturbed} single-entry perturbations of size 1e-3 all flagged",
        slowest.as_secs_f64() * 1e3
    ))
}

fn criterion_2() -> Check {
    let z = z2_four();
    let want = [
        (Classification::Symmetric, 2),
        (Classification::Symmetric, 2),
        (Classification::Modular, 1),
        (Classification::Modular, 1),
    ];
    for (c, w) in z.iter().zip(want) {
        let s = classify(c, 1e-9).map_err(|e| e.to_string())?;
        ensure((s.classification, s.mueger_rank) == w, || format!("{}: {:?}", c.name(), (s.classification, s.mueger_rank)))?;
    }
    let fib = gen_named("fibonacci").unwrap();
    let s = classify(&fib, 1e-9).map_err(|e| e.to_string())?;
    let want = (5.0 + 5f64.sqrt()) / 2.0;
    ensure(s.classification == Classification::Modular, || "Fibonacci not modular".into())?;
    ensure((fib.ring().dsq() - want).abs() < 1e-9, || format!("Fibonacci D^2 {}", fib.ring().dsq()))?;
    let ising = gen_named("ising").unwrap();
    let s = classify(&ising, 1e-9).map_err(|e| e.to_string())?;
    ensure(s.classification == Classification::Modular, || "Ising not modular".into())?;
    ensure((ising.ring().dsq() - 4.0).abs() < 1e-9, || format!("Ising D^2 {}", ising.ring().dsq()))?;
    Ok("Z2(1,+-1) Symm. rk 2, Z2(-1,+-i) Mod. rk 1, Fibonacci Mod. D^2=(5+sqrt5)/2, Ising Mod. D^2=4".into())
}

fn delta_of(c: &CategoryData) -> Result<(f64, f64), String> {
    let s = classify(c, 1e-9).map_err(|e| e.to_string())?;
    let spec = gram_spectrum(c, &s).map_err(|e| e.to_string())?;
    Ok((ww_delta(c.ring(), &s, &spec, 1e-8).0, s.mueger_dsq.ln()))
}

fn criterion_3() -> Check {
    let all = bundled();
    for c in &all {
        let (d, m) = delta_of(c)?;
        ensure((d - m).abs() < 1e-8, || format!("{}: delta {d} vs {m}", c.name()))?;
    }
    let specific = [
        ("z2_toric", LN_2),
        ("z2_fermion", LN_2),
        ("z2_semion", 0.0),
        ("z2_antisemion", 0.0),
        ("fibonacci", 0.0),
        ("ising", 0.0),
        ("z3_symmetric", 3f64.ln()),
        ("z4_symmetric", 4f64.ln()),
        ("z5_symmetric", 5f64.ln()),
        ("z6_symmetric", 6f64.ln()),
    ];
    for (name, want) in specific {
        let (d, _) = delta_of(&catalog::load(name).unwrap())?;
        ensure((d - want).abs() < 1e-8, || format!("{name}: delta {d}, expected {want}"))?;
    }
    Ok(format!("delta = log D^2_Mueger within 1e-8 for all {} bundled categories", all.len()))
}

fn criterion_4() -> Check {
    let mut worst = 0.0f64;
    for c in bundled() {
        let s = classify(&c, 1e-9).map_err(|e| e.to_string())?;
        let spec = gram_spectrum(&c, &s).map_err(|e| e.to_string())?;
        let rel = (spec.total_trace() - c.ring().dsq()).abs() / c.ring().dsq();
        worst = worst.max(rel);
        ensure(rel < 1e-8, || format!("{}: relative trace defect {rel:.2e}", c.name()))?;
    }
    Ok(format!("sum_c Tr S_c^dag S_c = D^2, worst relative defect {worst:.1e}"))
}

fn criterion_5() -> Check {
    let (mut wp, mut ws) = (0.0f64, 0.0f64);
    for c in bundled() {
        let s = classify(&c, 1e-9).map_err(|e| e.to_string())?;
        let p = check_product_rule(&c, &s.s).value;
        let q = check_sum_rule(&c, &s.s, &s.mueger).value;
        wp = wp.max(p);
        ws = ws.max(q);
        ensure(p < 1e-8 && q < 1e-8, || format!("{}: product {p:.2e}, sum {q:.2e}", c.name()))?;
        let mono = transparent_by_monodromy(&c, 1e-9).map_err(|e| e.to_string())?;
        ensure(mono == s.mueger, || format!("{}: Mueger membership disagrees", c.name()))?;
    }
    Ok(format!("product rule {wp:.1e}, sum rule {ws:.1e}; sum-rule and monodromy Mueger centers identical"))
}

fn criterion_6() -> Check {
    let toric = gen_z2(1.0, one()).unwrap();
    let semion = gen_z2(-1.0, C64::i()).unwrap();
    for c in [&toric, &semion] {
        ensure((lw_gamma(c.ring()) - 2.0 * LN_2).abs() < 1e-12, || format!("{}: gamma", c.name()))?;
        let g = lw_boundary_gamma(c, &AlgebraObject::unit(c), 1e-9).map_err(|e| e.to_string())?;
        ensure((g - LN_2).abs() < 1e-12, || format!("{}: Gamma {g}", c.name()))?;
    }
    let full = AlgebraObject::trivial_on(&toric, &[0, 1]).unwrap();
    let g = lw_boundary_gamma(&toric, &full, 1e-9).map_err(|e| e.to_string())?;
    ensure((g - LN_2).abs() < 1e-12, || format!("toric A=1+x: Gamma {g}"))?;

    // a single crossing link carries only the vacuum, so the comparison starts at n = 2
    let t = Instant::now();
    let mut cases = 0;
    for c in bundled() {
        for n in 2..=6 {
            let o = region_entropy_oracle(c.ring(), n, &Outcome::Fixed(0), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let f = region_entropy(c.ring(), RegionSpec { n, b0: 1, b1: 0 }, None);
            ensure((o.entropy - f).abs() < 1e-9, || format!("{} n={n}: oracle {} vs {f}", c.name(), o.entropy))?;
            cases += 1;
        }
    }
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("oracle runtime {elapsed:?}"))?;
    Ok(format!(
        "gamma = 2 log 2, Gamma = log 2 for toric and semion; {cases} oracle comparisons (n = 2..6) within 1e-9 in {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_7() -> Check {
    let mut worst = (0.0f64, 0.0f64);
    for c in bundled() {
        let ring = c.ring();
        for n in 1..=6 {
            for a in 0..ring.rank() {
                let s = check_sum_identity(ring, n, a, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                worst.0 = worst.0.max(s);
                ensure(s < 1e-9, || format!("{} n={n} a={a}: sum residual {s:.2e}", c.name()))?;
                if n >= 2 {
                    let l = check_sumlog_identity(ring, n, a, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    worst.1 = worst.1.max(l);
                    ensure(l < 1e-9, || format!("{} n={n} a={a}: sum-log residual {l:.2e}", c.name()))?;
                }
            }
        }
    }
    Ok(format!(
        "sum identity (n = 1..6) worst {:.1e}; sum-log identity (n = 2..6) worst {:.1e}",
        worst.0, worst.1
    ))
}

fn criterion_8() -> Check {
    let toric = gen_z2(1.0, one()).unwrap();
    let st = classify(&toric, 1e-9).map_err(|e| e.to_string())?;
    let unit = AlgebraObject::unit(&toric);
    let full = AlgebraObject::trivial_on(&toric, &[0, 1]).unwrap();
    let b0 = ww_boundary(&toric, &st, &unit, 1e-9).map_err(|e| e.to_string())?;
    let b1 = ww_boundary(&toric, &st, &full, 1e-9).map_err(|e| e.to_string())?;
    let close = |x: f64, y: f64| (x - y).abs() < 1e-12;
    ensure(close(b0.delta_bullet, LN_2) && close(b0.delta_circ, 0.0), || format!("toric A=1: {b0:?}"))?;
    ensure(close(b1.delta_bullet, 0.0) && close(b1.delta_circ, LN_2), || format!("toric A=1+x: {b1:?}"))?;

    for (w, p) in [(1.0, -one()), (-1.0, C64::i()), (-1.0, -C64::i())] {
        let c = gen_z2(w, p).unwrap();
        let s = classify(&c, 1e-9).map_err(|e| e.to_string())?;
        let b = ww_boundary(&c, &s, &AlgebraObject::unit(&c), 1e-9).map_err(|e| e.to_string())?;
        ensure(close(b.delta_bullet, LN_2), || format!("{}: A=1 Delta_bullet {}", c.name(), b.delta_bullet))?;
        if w < 0.0 {
            let a = AlgebraObject::trivial_on(&c, &[0, 1]).unwrap();
            let r = ww_boundary(&c, &s, &a, 1e-9);
            ensure(matches!(r, Err(Error::InvalidAlgebra(_))), || format!("{}: A=1+x gave {r:?}", c.name()))?;
            ensure(!validate_algebra(&c, &a, 1e-9).passed(), || "A=1+x validated".into())?;
        }
    }

    let mut worst = 0.0f64;
    let mut runs = 0;
    for c in z2_four() {
        let s = classify(&c, 1e-9).map_err(|e| e.to_string())?;
        for f in enumerate_algebras_pointed(&c, 1e-9).map_err(|e| e.to_string())? {
            let comm = check_commutative(&c, &f.algebra, 1e-9).map_err(|e| e.to_string())?.0;
            if !comm {
                continue;
            }
            for n in 1..=4 {
                let r = pointed_boundary_rho_check(&c, &s, &f.algebra, n, 1e-9).map_err(|e| e.to_string())?;
                worst = worst.max(r.residual);
                ensure(r.residual < 1e-10, || format!("{} n={n}: rho residual {:.2e}", c.name(), r.residual))?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "toric Delta_bullet = log 2, 0 and Delta_circ = 0, log 2; fermion/semion A=1 give log 2; semion A=1+x rejected; {runs} rho checks (n <= 4) worst {worst:.1e}"
    ))
}

fn criterion_9() -> Check {
    let c = deligne_product(&gen_named("fibonacci").unwrap(), &gen_z2(1.0, one()).unwrap()).unwrap();
    let s = classify(&c, 1e-9).map_err(|e| e.to_string())?;
    ensure(s.classification == Classification::ProperlyPremodular, || "product is not properly premodular".into())?;
    ensure(!c.ring().is_pointed(1e-9), || "product is pointed".into())?;
    let x = c.ring().index_of("1*x").unwrap();
    let alg = AlgebraObject::trivial_on(&c, &[0, x]).unwrap();
    let lib = ww_boundary(&c, &s, &alg, 1e-9);
    ensure(
        lib == Err(Error::Unsupported("general form unknown".into())),
        || format!("library returned {lib:?}"),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cat = dir.path().join("fib_toric.json");
    let alg_file = dir.path().join("algebra.json");
    std::fs::write(&cat, emit_category(&c)).map_err(|e| e.to_string())?;
    std::fs::write(&alg_file, premod::catalog::emit_algebra(&c, &alg)).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_premod"))
        .args(["--format", "json", "tee"])
        .arg(&cat)
        .arg("--algebra")
        .arg(&alg_file)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    ensure(code == Some(4), || format!("exit code {code:?}"))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let b = &v["report"]["boundary"][0];
    ensure(b["status"] == "unsupported" && b["reason"] == "general form unknown", || format!("boundary entry {b}"))?;
    ensure(b.get("deltaBullet").is_none(), || "a number was reported".into())?;
    Ok("Fibonacci x toric with A = 1 + x: library Unsupported(general form unknown), CLI exit 4 with no value".into())
}

fn criterion_10() -> Check {
    // Substitute coverage: transcribed rank-3 premodular data loads from file and reproduces
    // its published row; bundled files round-trip bit-exactly.
    for name in ["su2_4_adjoint", "su2_4_adjoint_conj", "rep_s3"] {
        let c = catalog::load(name).unwrap();
        let text = emit_category(&c);
        let back = premod::parse_category(&text).map_err(|e| e.to_string())?;
        ensure(emit_category(&back) == text, || format!("{name}: round trip differs"))?;
    }
    let adj = catalog::load("su2_4_adjoint").unwrap();
    let s = classify(&adj, 1e-9).map_err(|e| e.to_string())?;
    let (d, _) = delta_of(&adj)?;
    ensure(
        s.classification == Classification::ProperlyPremodular && s.mueger_rank == 2 && (d - LN_2).abs() < 1e-8,
        || format!("su2_4_adjoint: {:?} rk {} delta {d}", s.classification, s.mueger_rank),
    )?;
    Ok("declared not reproducible (full rank 3-5 table, exact arithmetic); substitute: file-ingested rank-3 \
        premodular data gives rk Mueger 2, TEE log 2 and round-trips bit-exactly"
        .into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "axiom suite", criterion_1),
        (2, "classification", criterion_2),
        (3, "bulk Walker-Wang entropy", criterion_3),
        (4, "trace identity", criterion_4),
        (5, "S-matrix laws", criterion_5),
        (6, "2D diagnostics", criterion_6),
        (7, "tree identities", criterion_7),
        (8, "boundary diagnostics", criterion_8),
        (9, "unsupported boundary status", criterion_9),
        (10, "desk-scale scope", criterion_10),
    ];
    let mut failed = 0;
    for (n, title, f) in criteria {
        let t = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS {n:>2} {title}: {msg} [{secs:.2} s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n:>2} {title}: {msg} [{secs:.2} s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
