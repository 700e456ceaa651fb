//! Rendering of tables and reports (plain text, markdown, CSV, JSON).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::subgroups::IsoType;
use crate::tau::{BraceTable, Classification, ResidueClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Markdown,
    Json,
    Csv,
}

/// One `(E, F, kernel order, residue)` count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReportRow {
    #[serde(rename = "E")]
    pub group: String,
    #[serde(rename = "F")]
    pub iso_type: IsoType,
    pub kernel_order: usize,
    pub image_order: usize,
    pub residue_class: ResidueClass,
    pub count: usize,
}

pub fn report_rows(classification: &Classification, residue: ResidueClass) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for g in &classification.groups {
        for t in IsoType::ALL {
            let mut by_kernel = std::collections::BTreeMap::<usize, usize>::new();
            for pc in g.admitted(residue).filter(|pc| pc.iso_type == t) {
                *by_kernel.entry(pc.kernel_order()).or_default() += 1;
            }
            for (kernel_order, count) in by_kernel.into_iter().rev() {
                rows.push(ReportRow {
                    group: g.group.label(),
                    iso_type: t,
                    kernel_order,
                    image_order: 8 / kernel_order,
                    residue_class: residue,
                    count,
                });
            }
        }
    }
    rows
}

pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("E,F,kernel_order,image_order,residue_class,count\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},\"{}\",{}",
            r.group,
            r.iso_type,
            r.kernel_order,
            r.image_order,
            residue_code(r.residue_class),
            r.count
        );
    }
    out
}

fn residue_code(r: ResidueClass) -> &'static str {
    match r {
        ResidueClass::ThreeSeven => "3,7",
        ResidueClass::Five => "5",
        ResidueClass::One => "1",
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Consistency(e.to_string()))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Argument(e.to_string()))
}

/// The 3x5 grid with row totals and a margin row.
pub fn render_table(table: &BraceTable) -> String {
    let headers: Vec<&str> = IsoType::ALL.iter().map(|t| t.name()).collect();
    let label_w = table
        .rows
        .iter()
        .map(|r| r.group.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(out, "Left braces of size 8p, {}", table.residue);
    let _ = write!(out, "{:>label_w$} |", "");
    for h in &headers {
        let _ = write!(out, " {h:>8}");
    }
    let _ = writeln!(out, " | {:>5}", "total");
    let rule = "-".repeat(label_w + 2 + 9 * headers.len() + 8);
    let _ = writeln!(out, "{rule}");
    for row in &table.rows {
        let _ = write!(out, "{:>label_w$} |", row.group);
        for t in IsoType::ALL {
            let _ = write!(out, " {:>8}", row.cells[&t]);
        }
        let _ = writeln!(out, " | {:>5}", row.total);
    }
    let _ = writeln!(out, "{rule}");
    let _ = write!(out, "{:>label_w$} |", "");
    for t in IsoType::ALL {
        let _ = write!(out, " {:>8}", table.column_totals[&t]);
    }
    let _ = writeln!(out, " | {:>5}", table.total);
    out
}

pub fn render_markdown(table: &BraceTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "**{}**\n", table.residue);
    out.push_str("| |");
    for t in IsoType::ALL {
        let _ = write!(out, " {t} |");
    }
    out.push_str(" |\n|---|");
    for _ in IsoType::ALL {
        out.push_str("---|");
    }
    out.push_str("---|\n");
    for row in &table.rows {
        let _ = write!(out, "| {} |", row.group);
        for t in IsoType::ALL {
            let _ = write!(out, " {} |", row.cells[&t]);
        }
        let _ = writeln!(out, " {} |", row.total);
    }
    out.push_str("| |");
    for t in IsoType::ALL {
        let _ = write!(out, " {} |", table.column_totals[&t]);
    }
    let _ = writeln!(out, " **{}** |", table.total);
    out
}

pub fn render_brace_table(table: &BraceTable, format: Format) -> Result<String> {
    Ok(match format {
        Format::Table => render_table(table),
        Format::Markdown => render_markdown(table),
        Format::Json => to_json(table)? + "\n",
        Format::Csv => {
            let mut out = String::from("E,F,count\n");
            for row in &table.rows {
                for t in IsoType::ALL {
                    let _ = writeln!(out, "{},{},{}", row.group, t, row.cells[&t]);
                }
            }
            out
        }
    })
}

/// Class listing of one holomorph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolomorphReport {
    #[serde(rename = "E")]
    pub group: String,
    pub holomorph_order: usize,
    pub regular_subgroups: usize,
    pub classes: Vec<ClassEntry>,
    pub distribution: std::collections::BTreeMap<IsoType, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub iso_type: IsoType,
    pub orbit_size: usize,
    pub generators: Vec<String>,
    pub members: Vec<String>,
}

pub fn holomorph_report(
    classification: &Classification,
    e: &AbelianGroup,
) -> Result<HolomorphReport> {
    let g = classification.group(e)?;
    let hol = &g.survey.hol;
    let classes = g
        .survey
        .classes
        .iter()
        .zip(&g.survey.class_types)
        .map(|(c, &t)| {
            let gens = crate::tau::generating_set(hol, &c.representative)?;
            Ok(ClassEntry {
                iso_type: t,
                orbit_size: c.orbit.len(),
                generators: gens.iter().map(|&x| hol.render(x)).collect(),
                members: c
                    .representative
                    .members()
                    .iter()
                    .map(|&x| hol.render(x))
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HolomorphReport {
        group: e.label(),
        holomorph_order: hol.order(),
        regular_subgroups: g.survey.subgroups.len(),
        classes,
        distribution: g.survey.distribution(),
    })
}

pub fn render_holomorph(report: &HolomorphReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Hol({}) has order {}, {} regular subgroups in {} conjugacy classes",
        report.group,
        report.holomorph_order,
        report.regular_subgroups,
        report.classes.len()
    );
    for (i, c) in report.classes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  [{}] {:<8} orbit {:>3}  <{}>",
            i + 1,
            c.iso_type.name(),
            c.orbit_size,
            c.generators.join(", ")
        );
    }
    out.push_str("  distribution:");
    for (t, n) in &report.distribution {
        let _ = write!(out, " {t}={n}");
    }
    out.push('\n');
    out
}

/// Pair orbits of one `E` at one residue class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    #[serde(rename = "F")]
    pub iso_type: IsoType,
    pub subgroup_class: usize,
    pub image_order: u8,
    pub kernel_order: usize,
    pub kernel: String,
    pub orbit_size: usize,
    pub generators: Vec<String>,
    /// `τ` on the generators, as exponents in `Z_8`.
    pub tau_on_generators: Vec<u8>,
}

pub fn pair_entries(
    classification: &Classification,
    e: &AbelianGroup,
    residue: ResidueClass,
) -> Result<Vec<PairEntry>> {
    let g = classification.group(e)?;
    let hol = &g.survey.hol;
    g.admitted(residue)
        .map(|pc| {
            let gens = crate::tau::generating_set(hol, &pc.subgroup)?;
            Ok(PairEntry {
                iso_type: pc.iso_type,
                subgroup_class: pc.subgroup_class + 1,
                image_order: pc.image_order,
                kernel_order: pc.kernel_order(),
                kernel: pc.kernel_kind.to_string(),
                orbit_size: pc.orbit_size,
                tau_on_generators: gens
                    .iter()
                    .map(|&x| pc.tau.value(&pc.subgroup, x).unwrap_or(0))
                    .collect(),
                generators: gens.iter().map(|&x| hol.render(x)).collect(),
            })
        })
        .collect()
}

pub fn render_pairs(group: &AbelianGroup, residue: ResidueClass, entries: &[PairEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Pair orbits for E = {group}, {residue}: {}",
        entries.len()
    );
    for (i, e) in entries.iter().enumerate() {
        let _ = writeln!(
            out,
            "  [{:>2}] F={:<8} class {:>2}  kernel {} ({})  orbit {:>3}  <{}> -> {:?}",
            i + 1,
            e.iso_type.name(),
            e.subgroup_class,
            e.kernel_order,
            e.kernel,
            e.orbit_size,
            e.generators.join(", "),
            e.tau_on_generators
        );
    }
    out
}
