use std::fmt;
use std::fs;
use std::path::Path;

use premod::catalog::{self, content_hash, emit_algebra, emit_category};
use premod::entropy::{entropy_report, BoundaryOutcome, EntropyReport};
use premod::{
    classify, enumerate_algebras_pointed, gram_spectrum, parse_algebra, parse_category, validate_category,
    AlgebraObject, CategoryData, Error, CONJECTURE_TOL,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{emit, fmt_num, fmt_res, LogBase, Table};
use crate::{CatalogAction, Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(s) | CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    /// 1 usage, 2 parse, 3 axiom failure, 4 unsupported computation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Lib(e) => match e {
                Error::Parse { .. }
                | Error::MissingEntry(_)
                | Error::UnexpectedEntry(_)
                | Error::Multiplicity(_)
                | Error::Structural(_) => 2,
                Error::Unsupported(_)
                | Error::ExplosionGuard { .. }
                | Error::NonConvergence(_)
                | Error::NonTermination(_)
                | Error::EigenFailure(_) => 4,
                Error::BadParameters(_) => 1,
                _ => 3,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate { file } => validate(cli, &load(file)?),
        Command::Classify { file } => {
            let data = load_valid(file, cli.tol)?;
            classify_cmd(cli, &data)
        }
        Command::Tee { file, algebra } => {
            let data = load_valid(file, cli.tol)?;
            let alg = match algebra {
                Some(p) => Some(parse_algebra(&read(p)?, &data)?),
                None => None,
            };
            tee(cli, &data, alg)
        }
        Command::Algebras { file, output } => {
            let data = load_valid(file, cli.tol)?;
            algebras(cli, &data, output.as_deref())
        }
        Command::Conjecture { catalog, files } => conjecture(cli, *catalog, files),
        Command::Catalog { action } => match action {
            CatalogAction::List => catalog_list(cli),
            CatalogAction::Emit { name, output } => {
                let data = catalog::load(name).map_err(|e| CliError::Usage(e.to_string()))?;
                let text = emit_category(&data);
                match output {
                    Some(p) => write(p, &text)?,
                    None => print!("{text}"),
                }
                Ok(0)
            }
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<CategoryData> {
    Ok(parse_category(&read(path)?)?)
}

/// Parse and require every axiom check to pass; entropy commands refuse invalid data.
fn load_valid(path: &Path, tol: f64) -> Result<CategoryData> {
    let data = load(path)?;
    validate_category(&data, tol).into_result()?;
    Ok(data)
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn validate(cli: &Cli, data: &CategoryData) -> Result<u8> {
    let v = validate_category(data, cli.tol);
    let mut t = Table::new(&["check", "residual", "status"]).with_title(format!("{} (tol {:e})", data.name(), cli.tol));
    for c in &v.checks {
        let status = if c.passes(cli.tol) { "ok" } else { "FAIL" };
        t.push(vec![c.axiom.to_string(), fmt_res(c.value), status.to_string()]);
    }
    let body = json!({
        "name": data.name(),
        "hash": content_hash(data),
        "passed": v.passed(),
        "tol": cli.tol,
        "checks": v.checks,
    });
    emit(cli.format, &[t], body);
    Ok(if v.passed() { 0 } else { 3 })
}

fn classify_cmd(cli: &Cli, data: &CategoryData) -> Result<u8> {
    let s = classify(data, cli.tol)?;
    let ring = data.ring();
    let mut t = Table::new(&["field", "value"]).with_title(data.name().to_string());
    let mueger: Vec<&str> = s.mueger_labels().iter().map(|&a| ring.name(a)).collect();
    let rows = [
        ("rank", ring.rank().to_string()),
        ("Dsq", fmt_num(ring.dsq())),
        ("classification", s.classification.to_string()),
        ("muegerRank", s.mueger_rank.to_string()),
        ("muegerDsq", fmt_num(s.mueger_dsq)),
        ("mueger", mueger.join(" ")),
        ("tyLike", yes_no(s.ty_like)),
        ("pointed", yes_no(ring.is_pointed(cli.tol))),
    ];
    for (k, v) in rows {
        t.push(vec![k.to_string(), v]);
    }
    let body = json!({
        "name": data.name(),
        "hash": content_hash(data),
        "rank": ring.rank(),
        "Dsq": ring.dsq(),
        "classification": s.classification.to_string(),
        "muegerRank": s.mueger_rank,
        "muegerDsq": s.mueger_dsq,
        "mueger": mueger,
        "tyLike": s.ty_like,
        "pointed": ring.is_pointed(cli.tol),
    });
    emit(cli.format, &[t], body);
    Ok(0)
}

fn boundary_algebras(data: &CategoryData, tol: f64) -> Vec<AlgebraObject> {
    if !data.ring().is_pointed(tol) {
        return vec![AlgebraObject::unit(data)];
    }
    match enumerate_algebras_pointed(data, tol) {
        Ok(found) => found.into_iter().filter(|f| f.commutative).map(|f| f.algebra).collect(),
        Err(e) => {
            eprintln!("note: algebra enumeration skipped ({e}); reporting the unit algebra only");
            vec![AlgebraObject::unit(data)]
        }
    }
}

fn tee(cli: &Cli, data: &CategoryData, algebra: Option<AlgebraObject>) -> Result<u8> {
    let explicit = algebra.is_some();
    let algs = match algebra {
        Some(a) => vec![a],
        None => boundary_algebras(data, cli.tol),
    };
    let suite = classify(data, cli.tol)?;
    let spectrum = gram_spectrum(data, &suite)?;
    let report = entropy_report(data, &suite, &spectrum, &algs, cli.tol, CONJECTURE_TOL)?;
    let lb = cli.log_base;
    let unsupported = report
        .boundary
        .iter()
        .any(|b| matches!(b.outcome, BoundaryOutcome::Unsupported { .. }));

    let mut bulk = Table::new(&["quantity", "value"]).with_title(format!("{} ({})", data.name(), lb.unit()));
    let conv = |x: f64| fmt_num(lb.convert(x));
    for (k, v) in [
        ("S[C]", conv(report.sc)),
        ("gamma", conv(report.gamma)),
        ("Gamma", conv(report.big_gamma)),
        ("delta", conv(report.delta)),
        ("log Dsq_Mueger", conv(report.delta_conjecture)),
        ("conjectureOk", yes_no(report.conjecture_ok)),
    ] {
        bulk.push(vec![k.to_string(), v]);
    }
    let mut bnd = Table::new(&["algebra", "d_A", "Delta_bullet", "Delta_circ", "method"]).with_title("boundaries");
    for b in &report.boundary {
        let mut row = vec![b.support.join("+"), fmt_num(b.d_a)];
        match &b.outcome {
            BoundaryOutcome::Ok(r) => {
                row.push(conv(r.delta_bullet));
                row.push(conv(r.delta_circ));
                row.push(format!("{:?}", r.method));
            }
            BoundaryOutcome::Unsupported { reason } => {
                row.push("-".into());
                row.push("-".into());
                row.push(format!("unsupported: {reason}"));
            }
        }
        bnd.push(row);
    }
    let body = json!({
        "name": data.name(),
        "hash": content_hash(data),
        "logBase": lb.unit(),
        "report": report_json(&report, lb),
    });
    emit(cli.format, &[bulk, bnd], body);
    if explicit && unsupported {
        eprintln!("error: boundary entropy: general form unknown");
        return Ok(4);
    }
    Ok(0)
}

fn report_json(r: &EntropyReport, lb: LogBase) -> Value {
    let c = |x: f64| lb.convert(x);
    let boundary: Vec<Value> = r
        .boundary
        .iter()
        .map(|b| match &b.outcome {
            BoundaryOutcome::Ok(x) => json!({
                "support": b.support, "dA": b.d_a, "status": "ok",
                "deltaBullet": c(x.delta_bullet), "deltaCirc": c(x.delta_circ),
                "method": format!("{:?}", x.method),
            }),
            BoundaryOutcome::Unsupported { reason } => json!({
                "support": b.support, "dA": b.d_a, "status": "unsupported", "reason": reason,
            }),
        })
        .collect();
    json!({
        "SC": c(r.sc),
        "gamma": c(r.gamma),
        "Gamma": c(r.big_gamma),
        "delta": c(r.delta),
        "deltaConjecture": c(r.delta_conjecture),
        "deltaFastpath": r.delta_fastpath.map(c),
        "conjectureOk": r.conjecture_ok,
        "boundary": boundary,
    })
}

fn algebras(cli: &Cli, data: &CategoryData, dir: Option<&Path>) -> Result<u8> {
    let found = enumerate_algebras_pointed(data, cli.tol)?;
    let ring = data.ring();
    let mut t = Table::new(&["#", "support", "d_A", "commutative"]).with_title(data.name().to_string());
    let mut list = Vec::new();
    if let Some(d) = dir {
        fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
    }
    for (i, f) in found.iter().enumerate() {
        let support: Vec<&str> = f.algebra.support().iter().map(|&a| ring.name(a)).collect();
        t.push(vec![i.to_string(), support.join("+"), fmt_num(f.algebra.d_a()), yes_no(f.commutative)]);
        list.push(json!({ "support": support, "dA": f.algebra.d_a(), "commutative": f.commutative }));
        if let Some(d) = dir {
            write(&d.join(format!("algebra_{i}.json")), &emit_algebra(data, &f.algebra))?;
        }
    }
    emit(cli.format, &[t], json!({ "name": data.name(), "algebras": list }));
    Ok(0)
}

struct Row {
    name: String,
    id: String,
    rank: usize,
    dsq: f64,
    valid: bool,
    mueger_rank: Option<usize>,
    class: String,
    pointed: bool,
    ty: Option<bool>,
    delta: Option<f64>,
    log_mueger: Option<f64>,
    ok: bool,
    error: Option<String>,
}

fn summarize(name: String, id: String, data: std::result::Result<CategoryData, Error>, tol: f64) -> Row {
    let mut row = Row {
        name,
        id,
        rank: 0,
        dsq: f64::NAN,
        valid: false,
        mueger_rank: None,
        class: "-".into(),
        pointed: false,
        ty: None,
        delta: None,
        log_mueger: None,
        ok: false,
        error: None,
    };
    let data = match data {
        Ok(d) => d,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let ring = data.ring();
    row.rank = ring.rank();
    row.dsq = ring.dsq();
    row.pointed = ring.is_pointed(tol);
    row.valid = validate_category(&data, tol).passed();
    if !row.valid {
        return row;
    }
    let result = classify(&data, tol).and_then(|s| {
        let spec = gram_spectrum(&data, &s)?;
        Ok((s, spec))
    });
    match result {
        Ok((s, spec)) => {
            let (delta, ok) = premod::entropy::ww_delta(ring, &s, &spec, CONJECTURE_TOL);
            row.mueger_rank = Some(s.mueger_rank);
            row.class = s.classification.to_string();
            row.ty = Some(s.ty_like);
            row.delta = Some(delta);
            row.log_mueger = Some(s.mueger_dsq.ln());
            row.ok = ok;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn conjecture(cli: &Cli, use_catalog: bool, files: &[std::path::PathBuf]) -> Result<u8> {
    if !use_catalog && files.is_empty() {
        return Err(CliError::Usage("give --catalog and/or category files".into()));
    }
    let tol = cli.tol;
    let mut rows: Vec<Row> = Vec::new();
    if use_catalog {
        rows.extend(
            catalog::entries()
                .par_iter()
                .map(|e| {
                    let id = if e.table_id.is_empty() { "-" } else { e.table_id };
                    summarize(e.name.to_string(), id.to_string(), e.load(), tol)
                })
                .collect::<Vec<_>>(),
        );
    }
    let mut extra: Vec<Row> = files
        .par_iter()
        .map(|p| {
            let data = read(p).map_err(|e| Error::Parse { at: p.display().to_string(), msg: e.to_string() });
            let data = data.and_then(|t| parse_category(&t));
            let name = data.as_ref().map(|d| d.name().to_string()).unwrap_or_else(|_| p.display().to_string());
            summarize(name, "-".into(), data, tol)
        })
        .collect();
    extra.sort_by(|a, b| a.name.cmp(&b.name));
    rows.extend(extra);

    let lb = cli.log_base;
    let opt = |x: Option<f64>| x.map(|v| fmt_num(lb.convert(v))).unwrap_or_else(|| "-".into());
    let mut t = Table::new(&[
        "Name", "Cat. ID", "Rank", "D^2", "Valid", "rk Mueger", "Premodular?", "Pointed?", "TY?", "TEE",
        "log D^2_Mueger", "Conjecture true?",
    ]);
    let mut json_rows = Vec::new();
    for r in &rows {
        t.push(vec![
            r.name.clone(),
            r.id.clone(),
            r.rank.to_string(),
            fmt_num(r.dsq),
            if r.valid { "✓" } else { "✗" }.to_string(),
            r.mueger_rank.map(|k| k.to_string()).unwrap_or_else(|| "-".into()),
            r.class.clone(),
            yes_no(r.pointed),
            r.ty.map(yes_no).unwrap_or_else(|| "-".into()),
            opt(r.delta),
            opt(r.log_mueger),
            if r.ok { "✓" } else { "✗" }.to_string(),
        ]);
        json_rows.push(json!({
            "name": r.name, "id": r.id, "rank": r.rank, "Dsq": r.dsq, "valid": r.valid,
            "muegerRank": r.mueger_rank, "classification": r.class, "pointed": r.pointed, "tyLike": r.ty,
            "tee": r.delta.map(|v| lb.convert(v)), "logMuegerDsq": r.log_mueger.map(|v| lb.convert(v)),
            "conjectureOk": r.ok, "error": r.error,
        }));
    }
    for r in &rows {
        if let Some(e) = &r.error {
            eprintln!("{}: {e}", r.name);
        }
    }
    emit(cli.format, &[t], json!({ "logBase": lb.unit(), "rows": json_rows }));
    Ok(if rows.iter().all(|r| r.ok) { 0 } else { 3 })
}

fn catalog_list(cli: &Cli) -> Result<u8> {
    let mut t = Table::new(&["name", "table id", "rank", "hash"]);
    let mut list = Vec::new();
    for e in catalog::entries() {
        let data = e.load()?;
        let hash = content_hash(&data);
        t.push(vec![e.name.into(), e.table_id.into(), data.rank().to_string(), hash[..16].to_string()]);
        list.push(json!({ "name": e.name, "id": e.table_id, "rank": data.rank(), "hash": hash }));
    }
    emit(cli.format, &[t], json!({ "entries": list }));
    Ok(0)
}
