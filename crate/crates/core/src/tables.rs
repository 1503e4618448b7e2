//! Row-by-row recomputation of the order and automorphism-group tables for
//! two-bridge links, torus links and torus links with an axis.
//!
//! Every cell is computed from an enumeration; the expected values used to
//! flag disagreements live in [`oracle`].

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::enumerator::enumerate;
use crate::error::{Error, Result};
use crate::groups::Catalog;
use crate::links::{braid_closure_with_axis, torus, torus_with_axis, two_bridge, BraidWord, Orientation};
use crate::presentation::QuandlePresentation;
use crate::quandle::FiniteQuandle;
use crate::report::{analyze, Analysis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Table {
    /// Two-bridge links `L_{1/q}` at `n = 2`.
    Two,
    /// Torus links at small `n`.
    Four,
    /// Torus links `T_{2,q}` with an axis at `n = 2`.
    Five,
}

impl Table {
    pub const ALL: [Table; 3] = [Table::Two, Table::Four, Table::Five];

    pub fn number(self) -> u32 {
        match self {
            Table::Two => 2,
            Table::Four => 4,
            Table::Five => 5,
        }
    }

    /// Parameter range used when none is given. Table 4 lists its nine
    /// fixed rows and adds `Q_2(T_{2,q})` rows only for an explicit range.
    pub fn default_range(self) -> Option<RangeInclusive<usize>> {
        match self {
            Table::Two => Some(3..=15),
            Table::Four => None,
            Table::Five => Some(2..=8),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Table> {
        match s {
            "2" => Ok(Table::Two),
            "4" => Ok(Table::Four),
            "5" => Ok(Table::Five),
            other => Err(Error::InvalidLink(format!("no table `{other}` (expected 2, 4 or 5)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowLink {
    TwoBridge { p: u64, q: u64 },
    Torus { p: usize, q: usize, orientation: Orientation, n: u32 },
    TorusAxis { q: usize },
    /// `T_{2,3}` with the braid axis of `(σ_1 σ_2)^2`.
    TrefoilAxisB,
}

impl RowLink {
    pub fn exponent(&self) -> u32 {
        match self {
            RowLink::Torus { n, .. } => *n,
            _ => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RowLink::TwoBridge { p, q } => format!("Q2(L{p}/{q})"),
            RowLink::Torus { p, q, orientation, n } => {
                let all_forward = (0..orientation.len()).all(|c| orientation.is_forward(c));
                let suffix = if all_forward { String::new() } else { orientation.to_string() };
                format!("Q{n}(T{p},{q}{suffix})")
            }
            RowLink::TorusAxis { q } => format!("Q2(T2,{q} u A)"),
            RowLink::TrefoilAxisB => "Q2(T2,3 u B)".to_string(),
        }
    }

    pub fn presentation(&self) -> Result<QuandlePresentation> {
        match self {
            RowLink::TwoBridge { p, q } => two_bridge(*p, *q, Some(2)),
            RowLink::Torus { p, q, orientation, n } => torus(*p, *q, orientation, Some(*n)),
            RowLink::TorusAxis { q } => torus_with_axis(*q),
            RowLink::TrefoilAxisB => braid_closure_with_axis(&BraidWord::torus(3, 2)?, Some(2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpec {
    pub table: Table,
    pub link: RowLink,
}

/// The rows of `table`; `range` replaces the default parameter range.
pub fn rows(table: Table, range: Option<RangeInclusive<usize>>) -> Vec<RowSpec> {
    let range = range.or_else(|| table.default_range());
    let row = |link| RowSpec { table, link };
    let torus_row = |p: usize, q: usize, orient: &str, n: u32| {
        row(RowLink::Torus {
            p,
            q,
            orientation: orient.parse().expect("orientation literal"),
            n,
        })
    };
    match table {
        Table::Two => range
            .into_iter()
            .flatten()
            .filter(|&q| q >= 2)
            .map(|q| row(RowLink::TwoBridge { p: 1, q: q as u64 }))
            .collect(),
        Table::Four => {
            let mut out: Vec<RowSpec> = range
                .into_iter()
                .flatten()
                .filter(|&q| q >= 2)
                .map(|q| torus_row(2, q, if q % 2 == 0 { "++" } else { "+" }, 2))
                .collect();
            out.extend([
                torus_row(2, 3, "+", 3),
                torus_row(2, 3, "+", 4),
                torus_row(2, 3, "+", 5),
                torus_row(2, 4, "++", 3),
                torus_row(2, 4, "+-", 3),
                torus_row(2, 5, "+", 3),
                torus_row(3, 3, "+++", 2),
                torus_row(3, 4, "+", 2),
                torus_row(3, 5, "+", 2),
            ]);
            out
        }
        Table::Five => {
            let mut out: Vec<RowSpec> = range
                .into_iter()
                .flatten()
                .filter(|&q| q >= 2)
                .map(|q| row(RowLink::TorusAxis { q }))
                .collect();
            out.push(row(RowLink::TrefoilAxisB));
            out
        }
    }
}

/// A computed row.
#[derive(Debug)]
pub struct Row {
    pub spec: RowSpec,
    pub quandle: FiniteQuandle,
    pub analysis: Analysis,
}

pub fn compute_row(spec: &RowSpec, catalog: &Catalog, cap: usize) -> Result<Row> {
    let table = enumerate(&spec.link.presentation()?, cap)?;
    let quandle = FiniteQuandle::from_cayley(&table)?;
    let analysis = analyze(&quandle, catalog)?;
    Ok(Row {
        spec: spec.clone(),
        quandle,
        analysis,
    })
}

/// Smallest catalog covering the groups that can appear in `specs`.
pub fn catalog_for(specs: &[RowSpec]) -> Catalog {
    let q_max = specs
        .iter()
        .map(|s| match s.link {
            RowLink::TwoBridge { q, .. } => q as usize,
            RowLink::Torus { q, .. } | RowLink::TorusAxis { q } => q,
            RowLink::TrefoilAxisB => 3,
        })
        .max()
        .unwrap_or(8);
    Catalog::for_tables(q_max.max(8))
}

const COLUMNS: [&str; 12] = [
    "table", "row", "n", "elements", "components", "aut_order", "aut", "inn_order", "inn", "trans_order",
    "trans", "medial",
];

fn cells(row: &Row) -> [String; 12] {
    let a = &row.analysis;
    [
        row.spec.table.to_string(),
        row.spec.link.label(),
        row.spec.link.exponent().to_string(),
        a.size.to_string(),
        a.component_sizes.len().to_string(),
        a.aut.order().to_string(),
        a.aut.all_names(),
        a.inn.order().to_string(),
        a.inn.all_names(),
        a.trans.order().to_string(),
        a.trans.all_names(),
        if a.medial { "yes" } else { "no" }.to_string(),
    ]
}

/// Tab-separated values with a header line.
pub fn to_tsv(rows: &[Row]) -> String {
    let mut out = COLUMNS.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&cells(row).join("\t"));
        out.push('\n');
    }
    out
}

/// Column-aligned text, one block per table.
pub fn render(rows: &[Row]) -> String {
    let mut out = String::new();
    let mut start = 0;
    while start < rows.len() {
        let table = rows[start].spec.table;
        let end = rows[start..]
            .iter()
            .position(|r| r.spec.table != table)
            .map_or(rows.len(), |k| start + k);
        let headers = ["row", "|Q|", "comp", "Aut", "Inn", "Trans", "medial"];
        let body: Vec<[String; 7]> = rows[start..end]
            .iter()
            .map(|r| {
                let a = &r.analysis;
                let group = |g: &crate::report::GroupSummary| format!("{} ({})", g.all_names(), g.order());
                [
                    r.spec.link.label(),
                    a.size.to_string(),
                    a.component_sizes.len().to_string(),
                    group(&a.aut),
                    group(&a.inn),
                    group(&a.trans),
                    if a.medial { "yes" } else { "no" }.to_string(),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
        for line in &body {
            for (w, cell) in widths.iter_mut().zip(line) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let _ = writeln!(out, "Table {table}");
        let fmt_line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", fmt_line(headers.to_vec()));
        for line in &body {
            let _ = writeln!(out, "{}", fmt_line(line.iter().map(String::as_str).collect()));
        }
        out.push('\n');
        start = end;
    }
    out
}

/// Expected table values, from the closed formulas for each family.
pub mod oracle {
    use super::{Row, RowLink, RowSpec};
    use crate::groups::{group_isomorphic, reference_group, totient, GroupSpec};
    use GroupSpec::*;

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct Expected {
        pub size: usize,
        pub aut_order: Option<usize>,
        pub aut: Option<GroupSpec>,
        pub inn: Option<GroupSpec>,
        pub trans: Option<GroupSpec>,
    }

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct Mismatch {
        pub row: String,
        pub column: &'static str,
        pub expected: String,
        pub got: String,
    }

    impl std::fmt::Display for Mismatch {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            write!(f, "{} {}: expected {}, got {}", self.row, self.column, self.expected, self.got)
        }
    }

    fn z2_times(g: GroupSpec) -> GroupSpec {
        GroupSpec::product([Cyclic(2), g])
    }

    /// `(q, q φ(q), Hol(Z_q), D_{q/gcd(2,q)}, Z_{q/gcd(2,q)})`; the group
    /// columns degenerate below `q = 3` and are left out there.
    fn dihedral_row(q: usize) -> Expected {
        let h = if q.is_multiple_of(2) { q / 2 } else { q };
        let structured = q >= 3;
        Expected {
            size: q,
            aut_order: Some(q * totient(q)),
            aut: structured.then_some(Holomorph(q)),
            inn: structured.then_some(Dihedral(h)),
            trans: structured.then_some(Cyclic(h)),
        }
    }

    fn fixed(size: usize, aut: GroupSpec, inn: GroupSpec, trans: GroupSpec) -> Expected {
        Expected {
            size,
            aut_order: Some(aut.order()),
            aut: Some(aut),
            inn: Some(inn),
            trans: Some(trans),
        }
    }

    /// `None` for rows without a stated value.
    pub fn expected(spec: &RowSpec) -> Option<Expected> {
        let v4 = || GroupSpec::product([Cyclic(2), Cyclic(2)]);
        Some(match &spec.link {
            RowLink::TwoBridge { q, .. } => dihedral_row(*q as usize),
            RowLink::Torus { p: 2, q, n: 2, .. } => dihedral_row(*q),
            RowLink::Torus { p, q, orientation, n } => {
                let forward = (0..orientation.len()).all(|c| orientation.is_forward(c));
                match (*p, *q, *n, forward) {
                    (2, 3, 3, _) => fixed(4, Alternating(4), Alternating(4), v4()),
                    (2, 3, 4, _) => fixed(6, Symmetric(4), Symmetric(4), Alternating(4)),
                    (2, 3, 5, _) => fixed(12, Alternating(5), Alternating(5), Alternating(5)),
                    (2, 4, 3, true) => fixed(8, Symmetric(4), Alternating(4), Alternating(4)),
                    (2, 4, 3, false) => fixed(8, z2_times(Alternating(4)), Alternating(4), v4()),
                    (2, 5, 3, _) => fixed(20, Symmetric(5), Alternating(5), Alternating(5)),
                    (3, 3, 2, _) => fixed(6, z2_times(Symmetric(4)), v4(), v4()),
                    (3, 4, 2, _) => fixed(12, z2_times(Symmetric(4)), Alternating(4), Alternating(4)),
                    (3, 5, 2, _) => fixed(30, z2_times(Symmetric(5)), Alternating(5), Alternating(5)),
                    _ => return None,
                }
            }
            RowLink::TorusAxis { q } => {
                let q = *q;
                if q < 3 {
                    Expected {
                        size: 2 + 2 * q,
                        aut_order: None,
                        aut: None,
                        inn: None,
                        trans: None,
                    }
                } else {
                    let g = if q % 2 == 0 { 2 } else { 1 };
                    Expected {
                        size: 2 + 2 * q,
                        aut_order: Some(2 * 2 * q * totient(2 * q)),
                        aut: Some(z2_times(Holomorph(2 * q))),
                        inn: Some(Dihedral(2 * q / g)),
                        trans: Some(Dihedral(q)),
                    }
                }
            }
            RowLink::TrefoilAxisB => fixed(
                18,
                GroupSpec::product([Cyclic(2), Cyclic(2), Symmetric(4)]),
                Symmetric(4),
                Symmetric(4),
            ),
        })
    }

    /// Every cell of `row` that disagrees with [`expected`].
    pub fn check(row: &Row) -> Vec<Mismatch> {
        let Some(exp) = expected(&row.spec) else {
            return Vec::new();
        };
        let label = row.spec.link.label();
        let a = &row.analysis;
        let mut out = Vec::new();
        let mut mismatch = |column, expected: String, got: String| {
            out.push(Mismatch {
                row: label.clone(),
                column,
                expected,
                got,
            })
        };
        if a.size != exp.size {
            mismatch("elements", exp.size.to_string(), a.size.to_string());
        }
        if let Some(order) = exp.aut_order {
            if a.aut.order() != order {
                mismatch("aut_order", order.to_string(), a.aut.order().to_string());
            }
        }
        for (column, spec, got) in [("aut", &exp.aut, &a.aut), ("inn", &exp.inn, &a.inn), ("trans", &exp.trans, &a.trans)] {
            if let Some(spec) = spec {
                let matches = reference_group(spec).is_ok_and(|r| group_isomorphic(&r, &got.group));
                if !matches {
                    mismatch(column, spec.to_string(), format!("{} (order {})", got.all_names(), got.order()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::DEFAULT_CAP;

    #[test]
    fn row_labels() {
        let labels: Vec<String> = rows(Table::Four, None).iter().map(|r| r.link.label()).collect();
        assert_eq!(labels.len(), 9);
        assert_eq!(labels[0], "Q3(T2,3)");
        assert_eq!(labels[4], "Q3(T2,4+-)");
        let five = rows(Table::Five, Some(3..=4));
        assert_eq!(five.len(), 3);
        assert_eq!(five[2].link.label(), "Q2(T2,3 u B)");
        assert_eq!(rows(Table::Two, None).len(), 13);
    }

    #[test]
    fn small_rows_match() {
        let specs = rows(Table::Two, Some(3..=5));
        let catalog = catalog_for(&specs);
        for spec in &specs {
            let row = compute_row(spec, &catalog, DEFAULT_CAP).unwrap();
            assert!(oracle::check(&row).is_empty(), "{:?}", oracle::check(&row));
        }
    }

    #[test]
    fn tsv_shape() {
        let specs = rows(Table::Two, Some(5..=5));
        let catalog = catalog_for(&specs);
        let row = compute_row(&specs[0], &catalog, DEFAULT_CAP).unwrap();
        let tsv = to_tsv(&[row]);
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "2\tQ2(L1/5)\t2\t5\t1\t20\tHol(Z5)\t10\tD5\t5\tZ5\tyes");
    }

    #[test]
    fn oracle_flags_wrong_rows() {
        // L1/5 checked against the Q3(T2,3) expectations
        let spec = RowSpec {
            table: Table::Four,
            link: RowLink::TwoBridge { p: 1, q: 5 },
        };
        let catalog = Catalog::for_tables(8);
        let mut row = compute_row(&spec, &catalog, DEFAULT_CAP).unwrap();
        row.spec.link = RowLink::Torus {
            p: 2,
            q: 3,
            orientation: Orientation::forward(1),
            n: 3,
        };
        let diff = oracle::check(&row);
        assert!(diff.iter().any(|m| m.column == "elements"));
        assert!(diff.iter().any(|m| m.column == "inn"));
    }
}
