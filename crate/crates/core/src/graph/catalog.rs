//! Named graphs with published clique-width values.
//!
//! Graphs without a short arithmetic construction ship as graph6 data files
//! under `data/catalog/`: line one is the graph6 string, line two carries
//! `name= n= m= cwd= source=` metadata.

use super::{paley, parse_graph6, petersen, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum CatalogSource {
    Embedded { graph6: &'static str, provenance: String },
    Generated { description: &'static str },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub m: usize,
    /// Clique-width reported in the literature; reference metadata only.
    pub reference_cwd: usize,
    pub source: CatalogSource,
}

impl CatalogEntry {
    pub fn graph(&self) -> Result<Graph> {
        let g = match &self.source {
            CatalogSource::Embedded { graph6, .. } => parse_graph6(graph6)?,
            CatalogSource::Generated { .. } => match self.name.as_str() {
                "petersen" => petersen(),
                "paley-13" => paley(13)?,
                "paley-17" => paley(17)?,
                other => return Err(Error::UnknownGraph(other.into())),
            },
        };
        if g.n() != self.n || g.edge_count() != self.m {
            return Err(Error::internal(format!("catalog entry {} does not match its metadata", self.name)));
        }
        Ok(g.with_name(self.name.clone()))
    }
}

macro_rules! embedded {
    ($($file:literal),* $(,)?) => {
        [$(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog/", $file, ".g6"))),*]
    };
}

const EMBEDDED: [&str; 18] = embedded!(
    "brinkmann",
    "chvatal",
    "clebsch",
    "desargues",
    "dodecahedron",
    "errera",
    "flower-snark",
    "folkman",
    "franklin",
    "frucht",
    "hoffman",
    "kittell",
    "mcgee",
    "pappus",
    "poussin",
    "robertson",
    "shrikhande",
    "sousselier",
);

fn parse_entry(text: &'static str) -> CatalogEntry {
    let mut lines = text.lines();
    let graph6 = lines.next().expect("graph6 line").trim();
    let meta = lines.next().expect("metadata line");
    let field = |key: &str| -> &str {
        let start = meta.find(&format!("{key}=")).expect("metadata key") + key.len() + 1;
        let rest = &meta[start..];
        if key == "source" {
            rest
        } else {
            rest.split_whitespace().next().expect("value")
        }
    };
    CatalogEntry {
        name: field("name").to_string(),
        n: field("n").parse().expect("n"),
        m: field("m").parse().expect("m"),
        reference_cwd: field("cwd").parse().expect("cwd"),
        source: CatalogSource::Embedded { graph6, provenance: field("source").to_string() },
    }
}

/// All catalog entries, sorted by name.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = EMBEDDED.iter().map(|t| parse_entry(t)).collect();
    entries.extend([
        CatalogEntry {
            name: "petersen".into(),
            n: 10,
            m: 15,
            reference_cwd: 5,
            source: CatalogSource::Generated { description: "outer 5-cycle, spokes, inner pentagram" },
        },
        CatalogEntry {
            name: "paley-13".into(),
            n: 13,
            m: 39,
            reference_cwd: 9,
            source: CatalogSource::Generated { description: "quadratic residues mod 13" },
        },
        CatalogEntry {
            name: "paley-17".into(),
            n: 17,
            m: 68,
            reference_cwd: 11,
            source: CatalogSource::Generated { description: "quadratic residues mod 17" },
        },
    ]);
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    entries
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    let wanted = name.to_ascii_lowercase().replace(['_', ' '], "-");
    let wanted = match wanted.as_str() {
        "chvátal" => "chvatal".to_string(),
        "flower" | "flowersnark" => "flower-snark".to_string(),
        "dodecahedral" => "dodecahedron".to_string(),
        _ => wanted,
    };
    catalog().into_iter().find(|e| e.name == wanted)
}
