use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::format::parse_group_file;
use super::spec::GroupSpec;
use crate::error::{HgError, Result};
use crate::group::{are_isomorphic, derived_series, fingerprint, GroupTable, IsoFingerprint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "source", rename_all = "snake_case")]
pub enum Provenance {
    Constructor(String),
    External(PathBuf),
}

/// One group in an order census. Flags are computed from the table.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub order: usize,
    pub label: String,
    pub table: Arc<GroupTable>,
    pub solvable: bool,
    pub perfect: bool,
    pub abelian: bool,
    pub provenance: Provenance,
}

impl CensusEntry {
    pub fn new(label: impl Into<String>, table: GroupTable, provenance: Provenance) -> Self {
        let label = label.into();
        let series = derived_series(&table);
        CensusEntry {
            order: table.order(),
            solvable: series.is_solvable(),
            perfect: series.is_perfect(),
            abelian: table.is_abelian(),
            table: Arc::new(table.with_label(label.clone())),
            label,
            provenance,
        }
    }

    fn from_spec(label: &str, spec: &str) -> Result<Self> {
        let table = spec.parse::<GroupSpec>()?.build()?;
        Ok(Self::new(label, table, Provenance::Constructor(spec.to_string())))
    }
}

/// All known groups of one order.
///
/// `exhaustive` means every isomorphism type of that order is present;
/// `insolvable_complete` means every insolvable type is present.
#[derive(Clone, Debug)]
pub struct CensusTier {
    pub order: usize,
    pub entries: Vec<CensusEntry>,
    pub exhaustive: bool,
    pub insolvable_complete: bool,
}

impl CensusTier {
    pub fn get(&self, label: &str) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn insolvable(&self) -> impl Iterator<Item = &CensusEntry> {
        self.entries.iter().filter(|e| !e.solvable)
    }

    /// Adds `entry` unless an isomorphic entry exists; returns whether it was added.
    pub fn insert_dedup(&mut self, entry: CensusEntry) -> Result<bool> {
        if entry.order != self.order {
            return Err(HgError::UnknownOrder(entry.order));
        }
        let fp = fingerprint(&entry.table);
        for e in &self.entries {
            if fingerprint(&e.table) == fp && are_isomorphic(&e.table, &entry.table).is_some() {
                return Ok(false);
            }
        }
        self.entries.push(entry);
        Ok(true)
    }

    /// Label of the entry isomorphic to `g`, if any.
    pub fn identify(&self, g: &GroupTable) -> Option<&CensusEntry> {
        let fp: IsoFingerprint = fingerprint(g);
        self.entries
            .iter()
            .find(|e| fingerprint(&e.table) == fp && are_isomorphic(&e.table, g).is_some())
    }
}

/// `(label, spec)` pairs, plus the tier flags.
fn bundled_specs(order: usize) -> Option<(&'static [(&'static str, &'static str)], bool, bool)> {
    // (entries, exhaustive, insolvable_complete)
    let tier: (&'static [(&'static str, &'static str)], bool, bool) = match order {
        1 => (&[("C1", "cyclic(1)")], true, true),
        2 => (&[("C2", "cyclic(2)")], true, true),
        3 => (&[("C3", "cyclic(3)")], true, true),
        4 => (&[("C4", "cyclic(4)"), ("V4", "abelian(2,2)")], true, true),
        5 => (&[("C5", "cyclic(5)")], true, true),
        6 => (&[("C6", "cyclic(6)"), ("S3", "sym(3)")], true, true),
        7 => (&[("C7", "cyclic(7)")], true, true),
        8 => (
            &[
                ("C8", "cyclic(8)"),
                ("C4xC2", "abelian(4,2)"),
                ("C2^3", "abelian(2,2,2)"),
                ("D4", "dihedral(4)"),
                ("Q8", "dicyclic(2)"),
            ],
            true,
            true,
        ),
        12 => (
            &[
                ("C12", "cyclic(12)"),
                ("C2xC6", "abelian(2,6)"),
                ("A4", "alt(4)"),
                ("D6", "dihedral(6)"),
                ("Dic3", "dicyclic(3)"),
            ],
            true,
            true,
        ),
        15 => (&[("C15", "cyclic(15)")], true, true),
        60 => (
            &[
                ("A5", "alt(5)"),
                ("C60", "cyclic(60)"),
                ("C2xC30", "abelian(2,30)"),
                ("D30", "dihedral(30)"),
                ("Dic15", "dicyclic(15)"),
                ("A4xC5", "direct(alt(4),cyclic(5))"),
                ("C3xD10", "direct(cyclic(3),dihedral(10))"),
                ("S3xD5", "direct(sym(3),dihedral(5))"),
            ],
            false,
            true,
        ),
        120 => (
            &[
                ("SL2(5)", "SL2(5)"),
                ("S5", "sym(5)"),
                ("A5xC2", "direct(alt(5),cyclic(2))"),
                ("C120", "cyclic(120)"),
                ("C2xC60", "abelian(2,60)"),
                ("SL2(3)xC5", "direct(SL2(3),cyclic(5))"),
                ("S4xC5", "direct(sym(4),cyclic(5))"),
                ("D60", "dihedral(60)"),
            ],
            false,
            true,
        ),
        336 => (
            &[
                ("SL2(7)", "SL2(7)"),
                ("PGL2(7)", "PGL2(7)"),
                ("PSL2(7)xC2", "direct(PSL2(7),cyclic(2))"),
                ("C336", "cyclic(336)"),
                ("C2xC168", "abelian(2,168)"),
                ("SL2(3)xC14", "direct(SL2(3),cyclic(14))"),
                ("S4xC14", "direct(sym(4),cyclic(14))"),
            ],
            false,
            true,
        ),
        _ => return None,
    };
    Some(tier)
}

/// Orders with a bundled tier.
pub const BUNDLED_ORDERS: [usize; 13] = [1, 2, 3, 4, 5, 6, 7, 8, 12, 15, 60, 120, 336];

/// The bundled tier for `order`. Entries are pairwise non-isomorphic by
/// construction.
pub fn bundled_census(order: usize) -> Result<CensusTier> {
    let (specs, exhaustive, insolvable_complete) =
        bundled_specs(order).ok_or(HgError::UnknownOrder(order))?;
    let entries = specs
        .iter()
        .map(|(label, spec)| CensusEntry::from_spec(label, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusTier {
        order,
        entries,
        exhaustive,
        insolvable_complete,
    })
}

/// Optional `manifest.json` in a census directory.
#[derive(Debug, Default, Deserialize)]
struct Manifest {
    #[serde(default)]
    exhaustive: Vec<usize>,
}

/// Reads every group in `dir`.
///
/// Files ending `.gtab` or `.pgen` hold one group each (label from a
/// `# label:` comment or the file stem). Files ending `.specs` hold one
/// `label = spec` or bare spec per line. `manifest.json` may list orders
/// whose external tier is exhaustive.
pub fn load_census_dir(dir: &Path) -> Result<(Vec<CensusEntry>, Vec<usize>)> {
    let io = |p: &Path, e: std::io::Error| HgError::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    paths.sort();
    let mut entries = Vec::new();
    let mut exhaustive = Vec::new();
    for path in paths {
        let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("");
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
        if name == "manifest.json" {
            let text = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
            let m: Manifest = serde_json::from_str(&text).map_err(|e| HgError::ParseError {
                line: e.line(),
                message: format!("{}: {e}", path.display()),
            })?;
            exhaustive.extend(m.exhaustive);
            continue;
        }
        match ext {
            "gtab" | "pgen" => {
                let text = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
                let table = parse_group_file(&text)?;
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("external");
                let label = if text.lines().any(|l| l.trim_start().starts_with("# label:")) {
                    table.label().to_string()
                } else {
                    stem.to_string()
                };
                entries.push(CensusEntry::new(label, table, Provenance::External(path.clone())));
            }
            "specs" => {
                let text = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
                for (i, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let (label, spec) = match line.split_once('=') {
                        Some((l, s)) => (l.trim().to_string(), s.trim()),
                        None => (line.to_string(), line),
                    };
                    let table = spec
                        .parse::<GroupSpec>()
                        .and_then(|s| s.build())
                        .map_err(|e| HgError::ParseError {
                            line: i + 1,
                            message: format!("{}: {e}", path.display()),
                        })?;
                    entries.push(CensusEntry::new(label, table, Provenance::External(path.clone())));
                }
            }
            _ => {}
        }
    }
    Ok((entries, exhaustive))
}

/// Bundled tier for `order` extended by external data, deduplicated up to
/// isomorphism. Orders without a bundled tier need external entries.
pub fn census(order: usize, dir: Option<&Path>) -> Result<CensusTier> {
    let mut tier = match bundled_census(order) {
        Ok(t) => t,
        Err(HgError::UnknownOrder(_)) if dir.is_some() => CensusTier {
            order,
            entries: Vec::new(),
            exhaustive: false,
            insolvable_complete: false,
        },
        Err(e) => return Err(e),
    };
    if let Some(dir) = dir {
        let (entries, exhaustive) = load_census_dir(dir)?;
        for e in entries.into_iter().filter(|e| e.order == order) {
            tier.insert_dedup(e)?;
        }
        if exhaustive.contains(&order) {
            tier.exhaustive = true;
            tier.insolvable_complete = true;
        }
    }
    if tier.entries.is_empty() {
        return Err(HgError::UnknownOrder(order));
    }
    Ok(tier)
}

/// Per-order census tiers keyed by order, for sweeps.
pub fn bundled_tiers(max_order: usize) -> Result<BTreeMap<usize, CensusTier>> {
    BUNDLED_ORDERS
        .iter()
        .filter(|&&n| n <= max_order)
        .map(|&n| Ok((n, bundled_census(n)?)))
        .collect()
}
