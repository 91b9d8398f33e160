//! Category and algebra files: JSON with labels referenced by name.
//!
//! Canonical form has sorted keys, sorted entries and shortest round-trip floats, so
//! `emit(parse(emit(x))) == emit(x)` byte for byte.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::AlgebraObject;
use crate::braided::{CategoryData, FSymbols, RSymbols};
use crate::error::{Error, Result};
use crate::ring::FusionRing;
use crate::C64;

pub const SCHEMA: u32 = 1;

// Field order is alphabetical so serialized keys come out sorted.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
    pub im: f64,
    pub re: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct REntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub im: f64,
    pub re: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(rename = "F")]
    pub f: Vec<FEntry>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<REntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<HashMap<String, String>>,
    pub fusion: Vec<[String; 3]>,
    pub labels: Vec<String>,
    pub name: String,
    #[serde(default = "default_schema")]
    pub schema: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub category: String,
    pub m: Vec<REntry>,
    pub objects: Vec<String>,
    #[serde(default = "default_schema")]
    pub schema: u32,
}

fn default_schema() -> u32 {
    SCHEMA
}

fn json_err(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

fn lookup(names: &HashMap<&str, usize>, s: &str, at: impl Fn() -> String) -> Result<usize> {
    names
        .get(s)
        .copied()
        .ok_or_else(|| Error::parse(at(), format!("unknown label '{s}'")))
}

impl CategoryFile {
    pub fn from_data(data: &CategoryData) -> Self {
        let ring = data.ring();
        let nm = |i: usize| ring.name(i).to_string();
        let mut fusion = Vec::new();
        for a in 0..ring.rank() {
            for b in 0..ring.rank() {
                for &c in ring.fuse(a, b) {
                    fusion.push([nm(a), nm(b), nm(c)]);
                }
            }
        }
        let f = data
            .f_symbols()
            .sorted()
            .into_iter()
            .map(|(k, v)| FEntry {
                a: nm(k[0]),
                b: nm(k[1]),
                c: nm(k[2]),
                d: nm(k[3]),
                e: nm(k[4]),
                f: nm(k[5]),
                im: v.im,
                re: v.re,
            })
            .collect();
        let r = data.r_symbols().map(|r| {
            r.sorted()
                .into_iter()
                .map(|(k, v)| REntry {
                    a: nm(k[0]),
                    b: nm(k[1]),
                    c: nm(k[2]),
                    im: v.im,
                    re: v.re,
                })
                .collect()
        });
        CategoryFile {
            f,
            r,
            dual: None,
            fusion,
            labels: ring.names().to_vec(),
            name: data.name().to_string(),
            schema: SCHEMA,
        }
    }

    /// Build category data. Axioms are not checked; see [`crate::validate_category`].
    pub fn to_data(&self) -> Result<CategoryData> {
        if self.schema != SCHEMA {
            return Err(Error::parse("schema", format!("unsupported schema {}", self.schema)));
        }
        if self.labels.first().map(String::as_str) != Some("1") {
            return Err(Error::parse("labels[0]", "the first label must be \"1\""));
        }
        let mut names = HashMap::new();
        for (i, l) in self.labels.iter().enumerate() {
            if names.insert(l.as_str(), i).is_some() {
                return Err(Error::parse(format!("labels[{i}]"), format!("duplicate label '{l}'")));
            }
        }
        let mut seen = HashSet::new();
        let mut triples = Vec::new();
        for (i, t) in self.fusion.iter().enumerate() {
            let at = || format!("fusion[{i}]");
            let k = (
                lookup(&names, &t[0], at)?,
                lookup(&names, &t[1], at)?,
                lookup(&names, &t[2], at)?,
            );
            if !seen.insert(k) {
                return Err(Error::parse(at(), "duplicate fusion triple"));
            }
            triples.push(k);
        }
        let ring = FusionRing::from_triples(self.labels.clone(), &triples)?;
        if let Some(dual) = &self.dual {
            for (a, b) in dual {
                let at = || format!("dual.{a}");
                let (ia, ib) = (lookup(&names, a, at)?, lookup(&names, b, at)?);
                if ring.dual(ia) != ib {
                    return Err(Error::parse(at(), format!("'{b}' is not the dual of '{a}'")));
                }
            }
        }
        let mut f = FSymbols::new();
        for (i, e) in self.f.iter().enumerate() {
            let at = || format!("F[{i}]");
            let mut k = [0; 6];
            for (slot, s) in k.iter_mut().zip([&e.a, &e.b, &e.c, &e.d, &e.e, &e.f]) {
                *slot = lookup(&names, s, at)?;
            }
            if f.insert(k, C64::new(e.re, e.im)).is_some() {
                return Err(Error::parse(at(), "duplicate F entry"));
            }
        }
        let r = match &self.r {
            None => None,
            Some(list) => {
                let mut r = RSymbols::new();
                for (i, e) in list.iter().enumerate() {
                    let at = || format!("R[{i}]");
                    let k = [lookup(&names, &e.a, at)?, lookup(&names, &e.b, at)?, lookup(&names, &e.c, at)?];
                    if r.insert(k, C64::new(e.re, e.im)).is_some() {
                        return Err(Error::parse(at(), "duplicate R entry"));
                    }
                }
                Some(r)
            }
        };
        CategoryData::new(self.name.clone(), ring, f, r)
    }
}

pub fn parse_category(text: &str) -> Result<CategoryData> {
    let file: CategoryFile = serde_json::from_str(text).map_err(json_err)?;
    file.to_data()
}

/// Canonical serialization, newline terminated.
pub fn emit_category(data: &CategoryData) -> String {
    let mut s = serde_json::to_string_pretty(&CategoryFile::from_data(data)).expect("serializable");
    s.push('\n');
    s
}

/// SHA-256 of the canonical serialization.
pub fn content_hash(data: &CategoryData) -> String {
    hex::encode(Sha256::digest(emit_category(data).as_bytes()))
}

impl AlgebraFile {
    pub fn from_algebra(data: &CategoryData, alg: &AlgebraObject) -> Self {
        let nm = |i: usize| data.ring().name(i).to_string();
        AlgebraFile {
            category: data.name().to_string(),
            m: alg
                .entries()
                .into_iter()
                .map(|(k, v)| REntry {
                    a: nm(k[0]),
                    b: nm(k[1]),
                    c: nm(k[2]),
                    im: v.im,
                    re: v.re,
                })
                .collect(),
            objects: alg.support().iter().map(|&a| nm(a)).collect(),
            schema: SCHEMA,
        }
    }

    /// Resolve against a category. The category name must match.
    pub fn to_algebra(&self, data: &CategoryData) -> Result<AlgebraObject> {
        if self.schema != SCHEMA {
            return Err(Error::parse("schema", format!("unsupported schema {}", self.schema)));
        }
        if self.category != data.name() {
            return Err(Error::parse(
                "category",
                format!("algebra is for '{}', not '{}'", self.category, data.name()),
            ));
        }
        let names: HashMap<&str, usize> =
            data.ring().names().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut support = BTreeSet::new();
        for (i, o) in self.objects.iter().enumerate() {
            support.insert(lookup(&names, o, || format!("objects[{i}]"))?);
        }
        if !support.contains(&0) {
            return Err(Error::parse("objects", "objects must include \"1\""));
        }
        let mut m = HashMap::new();
        for (i, e) in self.m.iter().enumerate() {
            let at = || format!("m[{i}]");
            let k = [lookup(&names, &e.a, at)?, lookup(&names, &e.b, at)?, lookup(&names, &e.c, at)?];
            if m.insert(k, C64::new(e.re, e.im)).is_some() {
                return Err(Error::parse(at(), "duplicate m entry"));
            }
        }
        let support: Vec<usize> = support.into_iter().collect();
        AlgebraObject::new(data, &support, m)
    }
}

pub fn parse_algebra(text: &str, data: &CategoryData) -> Result<AlgebraObject> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(json_err)?;
    file.to_algebra(data)
}

pub fn emit_algebra(data: &CategoryData, alg: &AlgebraObject) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(data, alg)).expect("serializable");
    s.push('\n');
    s
}
