use std::fmt;

use serde::Serialize;

use super::{max_abelian, max_really_abelian, named_free_set, RootKind, RootSystem, SearchResult};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Table {
    /// Degree of the punctured Weyl group, equal to the largest free set for `cone_ℝ`.
    Degrees,
    /// Largest abelian set, the Helly number for `cone_ℤ`.
    Abelian,
    ReallyAbelian,
}

impl Table {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "degrees" => Ok(Table::Degrees),
            "abelian" => Ok(Table::Abelian),
            "really-abelian" => Ok(Table::ReallyAbelian),
            _ => Err(Error::Format(format!("unknown table {s:?}; known: degrees, abelian, really-abelian"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "searched")]
    Searched,
    #[serde(rename = "lower+upper-bound")]
    Bounds,
    #[serde(rename = "formula")]
    Formula,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Searched => "searched",
            Provenance::Bounds => "lower+upper-bound",
            Provenance::Formula => "formula",
        })
    }
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Closed-form value for an irreducible type, where one is known.
pub fn formula(table: Table, kind: RootKind, n: usize) -> Option<usize> {
    use RootKind::*;
    let v = match (table, kind, n) {
        (_, A, n) if n >= 1 => (n + 1) * (n + 1) / 4,
        (_, D, n) if n >= 4 => binom2(n),
        (_, E, 6) => 16,
        (_, E, 7) => 27,
        (_, E, 8) => 36,
        (Table::Abelian, B, n) if (2..=3).contains(&n) => 2 * n - 1,
        (Table::Abelian, B, n) if n >= 4 => binom2(n) + 1,
        (Table::Abelian, C, n) if n >= 2 => binom2(n + 1),
        (Table::Abelian, F, 4) => 9,
        (Table::Abelian, G, 2) => 3,
        (_, B | C, n) if n >= 2 => binom2(n) + 1,
        (_, F, 4) => 6,
        (_, G, 2) => 2,
        _ => return None,
    };
    Some(v)
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub budget: usize,
    /// Free-set searches run outright up to this many positive roots; larger systems
    /// use a named free set below and the abelian bound above.
    pub search_limit: usize,
    /// In type A `cone_ℤ = cone_ℝ`; above this rank the free-set value is read off the abelian search.
    pub a_search_rank: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self { budget: 20_000_000, search_limit: 40, a_search_rank: 6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub system: String,
    pub positive_roots: usize,
    pub value: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub provenance: Provenance,
    pub formula: Option<usize>,
    /// Coefficient vectors over the simple roots.
    pub witness: Vec<Vec<i64>>,
    pub witness_labels: Vec<String>,
}

impl TableRow {
    pub fn matches_formula(&self) -> bool {
        self.exact && self.formula == Some(self.value)
    }
}

fn row(rs: &RootSystem, table: Table, lower: &SearchResult, upper: usize, provenance: Provenance) -> TableRow {
    TableRow {
        system: rs.name(),
        positive_roots: rs.positive_count(),
        value: lower.value,
        lower: lower.value,
        upper,
        exact: lower.value == upper,
        provenance,
        formula: formula(table, rs.kind, rs.rank),
        witness: lower.witness.iter().map(|&r| rs.coeffs[r].clone()).collect(),
        witness_labels: lower.witness.iter().map(|&r| rs.label(r)).collect(),
    }
}

pub fn table_row(table: Table, kind: RootKind, rank: usize, opts: &TableOptions) -> Result<TableRow> {
    let rs = RootSystem::build(kind, rank)?;
    let ab = max_abelian(&rs, opts.budget);
    if table == Table::Abelian {
        let prov = if ab.exact { Provenance::Searched } else { Provenance::Bounds };
        return Ok(row(&rs, table, &ab, ab.upper, prov));
    }
    if kind == RootKind::A && rank > opts.a_search_rank {
        let prov = if ab.exact { Provenance::Formula } else { Provenance::Bounds };
        return Ok(row(&rs, table, &ab, ab.upper, prov));
    }
    let out = if rs.positive_count() <= opts.search_limit {
        let free = max_really_abelian(&rs, None, Some(ab.upper), opts.budget);
        let upper = if free.exact { free.value } else { free.upper.min(ab.upper) };
        let prov = if free.exact { Provenance::Searched } else { Provenance::Bounds };
        row(&rs, table, &free, upper, prov)
    } else {
        let seed = named_free_set(&rs, None).filter(|s| s.free).map(|s| s.roots).unwrap_or_default();
        let lower = SearchResult { value: seed.len(), upper: ab.upper, exact: seed.len() == ab.upper, witness: seed };
        row(&rs, table, &lower, ab.upper, Provenance::Bounds)
    };
    if out.value > ab.upper {
        return Err(Error::Invalid(format!("{}: a free set larger than every abelian set", rs.name())));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub table: Table,
    pub system: String,
    pub rows: Vec<TableRow>,
    /// Sum over the irreducible components.
    pub value: usize,
    pub exact: bool,
}

/// Values for a possibly reducible system such as `A1xA1`, summed over components.
pub fn table(table: Table, system: &str, opts: &TableOptions) -> Result<TableReport> {
    let rows = RootKind::parse_product(system)?
        .into_iter()
        .map(|(k, n)| table_row(table, k, n, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport {
        table,
        system: rows.iter().map(|r| r.system.as_str()).collect::<Vec<_>>().join("x"),
        value: rows.iter().map(|r| r.value).sum(),
        exact: rows.iter().all(|r| r.exact),
        rows,
    })
}

/// The irreducible systems listed in the published tables, in row order, up to rank 5 for
/// the classical families.
pub fn standard_systems() -> Vec<(RootKind, usize)> {
    use RootKind::*;
    let mut out: Vec<(RootKind, usize)> = (1..=5).map(|n| (A, n)).collect();
    out.extend((2..=4).map(|n| (B, n)));
    out.extend((2..=4).map(|n| (C, n)));
    out.extend((4..=5).map(|n| (D, n)));
    out.extend([(F, 4), (E, 6), (G, 2), (E, 7), (E, 8)]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let opts = TableOptions::default();
        let r = table_row(Table::Degrees, RootKind::C, 3, &opts).unwrap();
        assert_eq!((r.value, r.provenance), (4, Provenance::Searched));
        assert_eq!(table_row(Table::Abelian, RootKind::C, 3, &opts).unwrap().value, 6);
        assert_eq!(table(Table::Degrees, "A1xA1", &opts).unwrap().value, 2);
    }

    #[test]
    fn e7_by_sandwich() {
        let r = table_row(Table::Degrees, RootKind::E, 7, &TableOptions::default()).unwrap();
        assert_eq!((r.value, r.exact, r.provenance), (27, true, Provenance::Bounds));
    }
}
