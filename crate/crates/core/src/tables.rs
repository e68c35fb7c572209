//! Assembly of the two summary tables, their Markdown/CSV/JSON renderings
//! and the comparison against the embedded golden fixtures.
//!
//! Column order is fixed: genus first, then one column per table row in
//! the published order. Markdown is rendered transposed (genera across the
//! header) to match the published layout.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{dmax, keel_sadun_bound, BoundKind};
use crate::error::{Error, Result};
use crate::moduli::{dmc_mgct, jacobian_bounds_detailed, mg_bounds, AgSolver, MGCT_EXACT_MAX};

pub const TABLE1_GENERA: [u64; 9] = [3, 4, 5, 6, 15, 16, 17, 18, 100];
pub const TABLE5_GENERA: [u64; 11] = [3, 4, 5, 6, 15, 16, 17, 18, 23, 24, 100];

pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1.csv");
pub const TABLE5_FIXTURE: &str = include_str!("../fixtures/table5.csv");
pub const FIXTURE_PROVENANCE: &str = include_str!("../fixtures/PROVENANCE.md");

pub const TABLES_SCHEMA_ID: &str = "agbound.tables/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub key: String,
    pub label: String,
    /// Consequence of an open conjecture rather than a theorem.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conjectural: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub column: String,
    pub value: u64,
    pub kind: BoundKind,
    pub provenance: String,
}

impl Cell {
    /// `20`, `>=34` or `<=36`.
    pub fn text(&self) -> String {
        cell_text(self.kind, self.value)
    }
}

fn cell_text(kind: BoundKind, value: u64) -> String {
    match kind {
        BoundKind::Exact => value.to_string(),
        BoundKind::LowerBound => format!(">={value}"),
        BoundKind::UpperBound => format!("<={value}"),
    }
}

fn parse_cell_text(s: &str) -> Result<(BoundKind, u64)> {
    let s = s.trim();
    let (kind, digits) = if let Some(rest) = s.strip_prefix(">=") {
        (BoundKind::LowerBound, rest)
    } else if let Some(rest) = s.strip_prefix("<=") {
        (BoundKind::UpperBound, rest)
    } else {
        (BoundKind::Exact, s)
    };
    let value = digits
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad table cell {s:?}: {e}")))?;
    Ok((kind, value))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub genus: u64,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub id: String,
    pub title: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSet {
    pub schema: String,
    pub tables: Vec<DimensionTable>,
}

impl DimensionTable {
    fn new(id: &str, title: &str, columns: &[(&str, &str)]) -> Self {
        DimensionTable {
            id: id.into(),
            title: title.into(),
            columns: columns
                .iter()
                .map(|&(key, label)| Column {
                    key: key.into(),
                    label: label.into(),
                    conjectural: false,
                })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn cell(&self, column: &str, genus: u64) -> Option<&Cell> {
        self.rows
            .iter()
            .find(|r| r.genus == genus)?
            .cells
            .iter()
            .find(|c| c.column == column)
    }

    pub fn column(&self, key: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.key == key)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["genus".to_string()];
        header.extend(self.columns.iter().map(|c| c.key.clone()));
        w.write_record(&header).map_err(render_err)?;
        for row in &self.rows {
            let mut rec = vec![row.genus.to_string()];
            rec.extend(row.cells.iter().map(Cell::text));
            w.write_record(&rec).map_err(render_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Render(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Render(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "**{}**\n", self.title);
        let _ = write!(out, "| g |");
        for row in &self.rows {
            let _ = write!(out, " {} |", row.genus);
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in &self.rows {
            out.push_str("--:|");
        }
        out.push('\n');
        for (i, col) in self.columns.iter().enumerate() {
            let marker = if col.conjectural {
                " (conjectural)"
            } else {
                ""
            };
            let _ = write!(out, "| {}{} |", col.label, marker);
            for row in &self.rows {
                let text = row.cells[i].text().replace(">=", "≥ ").replace("<=", "≤ ");
                let _ = write!(out, " {text} |");
            }
            out.push('\n');
        }
        out
    }
}

fn render_err(e: csv::Error) -> Error {
    Error::Render(e.to_string())
}

impl TableSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let set: TableSet = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if set.schema != TABLES_SCHEMA_ID {
            return Err(Error::Parse(format!("unknown schema {:?}", set.schema)));
        }
        for t in &set.tables {
            for r in &t.rows {
                let keys = r.cells.iter().map(|c| c.column.as_str());
                if !keys.eq(t.columns.iter().map(|c| c.key.as_str())) {
                    return Err(Error::Parse(format!(
                        "{} row g={} does not follow the column order",
                        t.id, r.genus
                    )));
                }
            }
        }
        Ok(set)
    }

    pub fn to_csv(&self) -> Result<String> {
        let parts = self
            .tables
            .iter()
            .map(|t| Ok(format!("# {}\n{}", t.id, t.to_csv()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.join("\n"))
    }

    pub fn to_markdown(&self) -> String {
        let parts: Vec<String> = self
            .tables
            .iter()
            .map(DimensionTable::to_markdown)
            .collect();
        parts.join("\n")
    }

    pub fn table(&self, id: &str) -> Option<&DimensionTable> {
        self.tables.iter().find(|t| t.id == id)
    }
}

fn cell(column: &str, kind: BoundKind, value: u64, provenance: impl Into<String>) -> Cell {
    Cell {
        column: column.into(),
        value,
        kind,
        provenance: provenance.into(),
    }
}

pub fn table1() -> Result<DimensionTable> {
    let solver = AgSolver::new(*TABLE1_GENERA.iter().max().expect("nonempty"));
    let mut t = DimensionTable::new(
        "table1",
        "Maximal dimensions of compact subvarieties of A_g",
        &[
            ("dmcg_ag", "dmcg(A_g) ="),
            ("dmc_ag", "dmc(A_g) ="),
            ("keel_sadun", "Keel-Sadun: dmc(A_g) <="),
        ],
    );
    for g in TABLE1_GENERA {
        let ag = solver.solve(g)?;
        t.rows.push(Row {
            genus: g,
            cells: vec![
                cell("dmcg_ag", BoundKind::Exact, g - 1, "g - 1"),
                cell(
                    "dmc_ag",
                    BoundKind::Exact,
                    ag.dmc,
                    "recursion over mdsp*, checked against dmax(g)",
                ),
                cell(
                    "keel_sadun",
                    BoundKind::UpperBound,
                    keel_sadun_bound(g)?,
                    "g(g-1)/2 - 1",
                ),
            ],
        });
    }
    Ok(t)
}

pub fn table5(conjectural: bool) -> Result<DimensionTable> {
    let mut t = DimensionTable::new(
        "table5",
        "Known results for maximal dimensions of compact subvarieties of M_g^ct and M_g",
        &[
            ("dmcg_mgct", "dmcg(M_g^ct) >="),
            ("dmc_mgct", "dmc(M_g^ct) ="),
            ("jacobian_upper", "dmc(J(M_g^ct)) <="),
            ("jacobian_lower", "dmc(J(M_g^ct)) >="),
            ("dmcg_mg", "dmcg(M_g) >="),
            ("covers_lower", "covers: dmc(M_g) >="),
            ("diaz_upper", "Diaz: dmc(M_g) <="),
        ],
    );
    if conjectural {
        t.columns.push(Column {
            key: "jacobian_conjectural".into(),
            label: "dmc(J(M_g^ct)) <= g - 1".into(),
            conjectural: true,
        });
    }
    for g in TABLE5_GENERA {
        let ct = dmc_mgct(g)?;
        let ct_provenance = if ct.is_exact() {
            "boundary recursion, equal to floor(3g/2) - 2".to_string()
        } else {
            let upper = ct.upper.map_or(0, |u| u.value);
            format!("floor(3g/2) - 2 from boundary products; open, known <= {upper}")
        };
        let (j_lower, j_upper, (ag_term, ct_term)) = jacobian_bounds_detailed(g)?;
        let ct_term_name = if g <= MGCT_EXACT_MAX {
            "floor(3g/2) - 2"
        } else {
            "2g - 4"
        };
        let (covers, diaz) = mg_bounds(g)?;
        let mut cells = vec![
            cell(
                "dmcg_mgct",
                BoundKind::LowerBound,
                2,
                "boundary of the Satake compactification has codimension 3",
            ),
            cell("dmc_mgct", ct.value.kind, ct.value.value, ct_provenance),
            cell(
                "jacobian_upper",
                BoundKind::UpperBound,
                j_upper,
                format!("min(dmax(g) = {ag_term}, {ct_term_name} = {ct_term})"),
            ),
            cell(
                "jacobian_lower",
                BoundKind::LowerBound,
                j_lower,
                "floor(2g/3)",
            ),
            cell(
                "dmcg_mg",
                BoundKind::LowerBound,
                1,
                "boundary of the Satake compactification has codimension 2",
            ),
            cell(
                "covers_lower",
                BoundKind::LowerBound,
                covers,
                "compact d-fold for g >= 2^(d+1)",
            ),
            cell("diaz_upper", BoundKind::UpperBound, diaz, "g - 2"),
        ];
        if conjectural {
            cells.push(cell(
                "jacobian_conjectural",
                BoundKind::UpperBound,
                j_upper.min(g - 1),
                "conjectural: dmc(J(M_g^ct)) <= g - 1",
            ));
        }
        t.rows.push(Row { genus: g, cells });
    }
    // dmax(g) never exceeds the M^ct term before genus 16, so the
    // Jacobian bound there is g - 1.
    debug_assert!(TABLE5_GENERA
        .iter()
        .filter(|&&g| g <= 15)
        .all(|&g| dmax(g).is_ok_and(|d| d == g - 1)));
    Ok(t)
}

pub fn assemble_tables(conjectural: bool) -> Result<TableSet> {
    Ok(TableSet {
        schema: TABLES_SCHEMA_ID.into(),
        tables: vec![table1()?, table5(conjectural)?],
    })
}

/// One disagreement between a computed table and its fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub table: String,
    pub column: String,
    pub genus: u64,
    pub expected: String,
    pub actual: String,
}

impl std::fmt::Display for CellMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}[{}, g={}]: expected {}, computed {}",
            self.table, self.column, self.genus, self.expected, self.actual
        )
    }
}

/// Compares every non-conjectural cell of `table` with a fixture in the
/// CSV layout produced by [`DimensionTable::to_csv`]. Missing rows or
/// columns on either side count as mismatches.
pub fn check_against_fixture(
    table: &DimensionTable,
    fixture_csv: &str,
) -> Result<Vec<CellMismatch>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(fixture_csv.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.first().map(String::as_str) != Some("genus") {
        return Err(Error::Parse(
            "fixture must start with a genus column".into(),
        ));
    }
    let mut mismatches = Vec::new();
    let missing = |column: &str, genus: u64, expected: String, actual: String| CellMismatch {
        table: table.id.clone(),
        column: column.into(),
        genus,
        expected,
        actual,
    };
    let mut seen_genera = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let genus: u64 = rec
            .get(0)
            .unwrap_or_default()
            .parse()
            .map_err(|e| Error::Parse(format!("bad genus in fixture: {e}")))?;
        seen_genera.push(genus);
        for (key, text) in header.iter().zip(rec.iter()).skip(1) {
            let (kind, value) = parse_cell_text(text)?;
            let expected = cell_text(kind, value);
            match table.cell(key, genus) {
                Some(c) if c.kind == kind && c.value == value => {}
                Some(c) => mismatches.push(missing(key, genus, expected, c.text())),
                None => mismatches.push(missing(key, genus, expected, "absent".into())),
            }
        }
    }
    for row in &table.rows {
        for c in &row.cells {
            let conjectural = table.column(&c.column).is_some_and(|col| col.conjectural);
            if conjectural {
                continue;
            }
            if !seen_genera.contains(&row.genus) || !header.contains(&c.column) {
                mismatches.push(missing(&c.column, row.genus, "absent".into(), c.text()));
            }
        }
    }
    Ok(mismatches)
}

/// Checks both tables against the embedded fixtures.
pub fn check_tables(set: &TableSet) -> Result<Vec<CellMismatch>> {
    let mut out = Vec::new();
    for (id, fixture) in [("table1", TABLE1_FIXTURE), ("table5", TABLE5_FIXTURE)] {
        let table = set
            .table(id)
            .ok_or_else(|| Error::Inconsistent(format!("{id} missing from table set")))?;
        out.extend(check_against_fixture(table, fixture)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_cells() {
        let set = assemble_tables(false).unwrap();
        let t1 = set.table("table1").unwrap();
        assert_eq!(t1.cell("dmc_ag", 18).unwrap().value, 20);
        let t5 = set.table("table5").unwrap();
        assert_eq!(t5.cell("dmc_mgct", 17).unwrap().value, 23);
        assert_eq!(t5.cell("jacobian_lower", 5).unwrap().value, 3);
        assert_eq!(t5.cell("dmc_mgct", 24).unwrap().text(), ">=34");
    }

    #[test]
    fn fixtures_match() {
        let set = assemble_tables(false).unwrap();
        assert_eq!(check_tables(&set).unwrap(), vec![]);
    }

    #[test]
    fn conjectural_column_is_ignored_by_check() {
        let set = assemble_tables(true).unwrap();
        assert_eq!(check_tables(&set).unwrap(), vec![]);
        let t5 = set.table("table5").unwrap();
        assert_eq!(t5.cell("jacobian_conjectural", 18).unwrap().value, 17);
        assert_eq!(t5.cell("jacobian_conjectural", 100).unwrap().value, 99);
    }

    #[test]
    fn mismatch_names_the_cell() {
        let set = assemble_tables(false).unwrap();
        let doctored = TABLE5_FIXTURE.replacen("\n5,>=2,5,<=4,>=3", "\n5,>=2,5,<=4,>=4", 1);
        assert_ne!(doctored, TABLE5_FIXTURE);
        let m = check_against_fixture(set.table("table5").unwrap(), &doctored).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(
            m[0].to_string(),
            "table5[jacobian_lower, g=5]: expected >=4, computed >=3"
        );
    }

    #[test]
    fn csv_round_trip_is_the_fixture() {
        let set = assemble_tables(false).unwrap();
        let body = |s: &str| -> String {
            s.lines()
                .filter(|l| !l.starts_with('#'))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(
            body(&set.table("table1").unwrap().to_csv().unwrap()),
            body(TABLE1_FIXTURE)
        );
        assert_eq!(
            body(&set.table("table5").unwrap().to_csv().unwrap()),
            body(TABLE5_FIXTURE)
        );
    }

    #[test]
    fn json_round_trip() {
        let set = assemble_tables(true).unwrap();
        assert_eq!(TableSet::from_json(&set.to_json()).unwrap(), set);
        assert!(TableSet::from_json("{}").is_err());
    }

    #[test]
    fn markdown_header_lists_genera() {
        let md = table1().unwrap().to_markdown();
        assert!(md.contains("| g | 3 | 4 | 5 | 6 | 15 | 16 | 17 | 18 | 100 |"));
        assert!(table5(false).unwrap().to_markdown().contains("≥ 34"));
    }

    #[test]
    fn cell_text_parses() {
        assert_eq!(
            parse_cell_text(">=34").unwrap(),
            (BoundKind::LowerBound, 34)
        );
        assert_eq!(
            parse_cell_text("<= 36").unwrap(),
            (BoundKind::UpperBound, 36)
        );
        assert!(parse_cell_text("x").is_err());
    }
}
