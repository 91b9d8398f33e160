//! Bundled categories, generators and file formats.

mod format;
mod generators;

pub use format::{
    content_hash, emit_algebra, emit_category, parse_algebra, parse_category, AlgebraFile, CategoryFile,
    FEntry, REntry, SCHEMA,
};
pub use generators::{cyclic_names, deligne_product, gen_named, gen_pointed_cyclic, gen_z2};

use crate::braided::CategoryData;
use crate::error::{Error, Result};
use crate::C64;

/// How a bundled category is produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Z2 { omega: f64, phi: (f64, f64) },
    Cyclic { n: usize, p: f64 },
    Named(&'static str),
    File(&'static str),
    Product(&'static str, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Row identifier in the standard small-category tables (`FR^{rank,nonselfdual}_i`), or
    /// empty when the category has no row there.
    pub table_id: &'static str,
    pub source: Source,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "fibonacci", table_id: "FR^{2,0}_2", source: Source::Named("fibonacci") },
    CatalogEntry {
        name: "fibonacci_x_toric",
        table_id: "",
        source: Source::Product("fibonacci", "z2_toric"),
    },
    CatalogEntry { name: "ising", table_id: "FR^{3,0}_1", source: Source::Named("ising") },
    CatalogEntry {
        name: "rep_s3",
        table_id: "FR^{3,0}_2(0)",
        source: Source::File(include_str!("data/rep_s3.json")),
    },
    CatalogEntry {
        name: "su2_4_adjoint",
        table_id: "FR^{3,0}_2",
        source: Source::File(include_str!("data/su2_4_adjoint.json")),
    },
    CatalogEntry {
        name: "su2_4_adjoint_conj",
        table_id: "FR^{3,0}_2",
        source: Source::File(include_str!("data/su2_4_adjoint_conj.json")),
    },
    CatalogEntry {
        name: "z2_antisemion",
        table_id: "FR^{2,0}_1(3)",
        source: Source::Z2 { omega: -1.0, phi: (0.0, -1.0) },
    },
    CatalogEntry {
        name: "z2_fermion",
        table_id: "FR^{2,0}_1(2)",
        source: Source::Z2 { omega: 1.0, phi: (-1.0, 0.0) },
    },
    CatalogEntry {
        name: "z2_semion",
        table_id: "FR^{2,0}_1(1)",
        source: Source::Z2 { omega: -1.0, phi: (0.0, 1.0) },
    },
    CatalogEntry {
        name: "z2_toric",
        table_id: "FR^{2,0}_1(0)",
        source: Source::Z2 { omega: 1.0, phi: (1.0, 0.0) },
    },
    CatalogEntry { name: "z3", table_id: "FR^{3,2}_1", source: Source::Cyclic { n: 3, p: 1.0 } },
    CatalogEntry { name: "z3_symmetric", table_id: "FR^{3,2}_1(0)", source: Source::Cyclic { n: 3, p: 0.0 } },
    CatalogEntry { name: "z4", table_id: "", source: Source::Cyclic { n: 4, p: 0.5 } },
    CatalogEntry { name: "z4_p1", table_id: "", source: Source::Cyclic { n: 4, p: 1.0 } },
    CatalogEntry { name: "z4_symmetric", table_id: "", source: Source::Cyclic { n: 4, p: 0.0 } },
    CatalogEntry { name: "z5", table_id: "", source: Source::Cyclic { n: 5, p: 1.0 } },
    CatalogEntry { name: "z5_symmetric", table_id: "", source: Source::Cyclic { n: 5, p: 0.0 } },
    CatalogEntry { name: "z6", table_id: "", source: Source::Cyclic { n: 6, p: 0.5 } },
    CatalogEntry { name: "z6_symmetric", table_id: "", source: Source::Cyclic { n: 6, p: 0.0 } },
];

/// All bundled entries, sorted by name.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

impl CatalogEntry {
    /// Build the category; its name is the entry name.
    pub fn load(&self) -> Result<CategoryData> {
        let data = match self.source {
            Source::Z2 { omega, phi } => gen_z2(omega, C64::new(phi.0, phi.1))?,
            Source::Cyclic { n, p } => gen_pointed_cyclic(n, p)?,
            Source::Named(n) => gen_named(n)?,
            Source::File(text) => parse_category(text)?,
            Source::Product(a, b) => deligne_product(&load(a)?, &load(b)?)?,
        };
        Ok(data.with_name(self.name))
    }
}

pub fn load(name: &str) -> Result<CategoryData> {
    entry(name)
        .ok_or_else(|| Error::BadParameters(format!("no bundled category named '{name}'")))?
        .load()
}
