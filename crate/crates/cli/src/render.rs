//! Text, CSV and JSON renderings of tables.

use serde::{Deserialize, Serialize};
use syzygy_core::koszul::{BettiTable, BidegreeTable};
use syzygy_core::rings::Bidegree;

/// Inclusive `u1` and `u2` ranges of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub u1: (u32, u32),
    pub u2: (u32, u32),
}

impl Window {
    /// Parses `U1MIN:U1MAX,U2MIN:U2MAX`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let range = |r: &str| -> Result<(u32, u32), String> {
            let (lo, hi) = r.split_once(':').ok_or_else(|| format!("bad range `{r}`, expected LO:HI"))?;
            let lo: u32 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
            let hi: u32 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
            if lo > hi {
                return Err(format!("empty range `{r}`"));
            }
            Ok((lo, hi))
        };
        let (x, y) = s.split_once(',').ok_or_else(|| format!("bad window `{s}`, expected U1MIN:U1MAX,U2MIN:U2MAX"))?;
        Ok(Self { u1: range(x)?, u2: range(y)? })
    }

    pub fn padded(self, pad: u32) -> Self {
        Self {
            u1: (self.u1.0.saturating_sub(pad), self.u1.1 + pad),
            u2: (self.u2.0.saturating_sub(pad), self.u2.1 + pad),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GridOptions {
    pub rotate: bool,
    pub pad: u32,
    pub window: Option<Window>,
}

/// The grid followed by a `total` line. Unrotated rows run over `u2`
/// descending and columns over `u1` ascending; rotated rows run over `u1`
/// ascending and columns over `u2` ascending. Zeros print as `0`.
pub fn render_grid(table: &BidegreeTable, opts: GridOptions) -> String {
    let window = opts.window.or_else(|| table.support().map(|(u1, u2)| Window { u1, u2 }));
    let mut out = String::new();
    if let Some(w) = window.map(|w| w.padded(opts.pad)) {
        let rows: Vec<Vec<u64>> = if opts.rotate {
            (w.u1.0..=w.u1.1).map(|x| (w.u2.0..=w.u2.1).map(|y| table.get(Bidegree::new(x, y))).collect()).collect()
        } else {
            (w.u2.0..=w.u2.1).rev().map(|y| (w.u1.0..=w.u1.1).map(|x| table.get(Bidegree::new(x, y))).collect()).collect()
        };
        let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out.push_str(&format!("total {}\n", table.total()));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub bidegree: [u32; 2],
    pub dim: u64,
}

/// One Betti number with its bidegree blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<Vec<u32>>,
    pub p: u32,
    pub q: u32,
    pub field: String,
    pub betti: u64,
    pub blocks: Vec<BlockJson>,
}

impl BettiJson {
    pub fn blocks_of(table: &BidegreeTable) -> Vec<BlockJson> {
        table.entries.iter().filter(|e| *e.1 > 0).map(|(b, &dim)| BlockJson { bidegree: [b.u1, b.u2], dim }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<Vec<u32>>,
    pub field: String,
    pub max_p: u32,
    /// `rows[q][p]`.
    pub rows: Vec<Vec<u64>>,
}

pub fn table_rows(table: &BettiTable) -> Vec<Vec<u64>> {
    (0..=table.max_q).map(|q| (0..=table.max_p).map(|p| table.get(p, q)).collect()).collect()
}

/// Betti table in the usual layout: one row per `q`, one column per `p`.
pub fn render_betti_table(table: &BettiTable) -> String {
    let rows = table_rows(table);
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1).max(table.max_p.to_string().len());
    let mut out = format!("{:>4} ", "");
    let header: Vec<String> = (0..=table.max_p).map(|p| format!("{p:>width$}")).collect();
    out.push_str(&header.join(" "));
    out.push('\n');
    for (q, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        out.push_str(&format!("{:>4} {}\n", format!("{q}:"), cells.join(" ")));
    }
    out
}

pub fn betti_table_csv(table: &BettiTable) -> String {
    let mut out = String::from("q");
    for p in 0..=table.max_p {
        out.push_str(&format!(",p{p}"));
    }
    out.push('\n');
    for (q, row) in table_rows(table).iter().enumerate() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&format!("{q},{}\n", cells.join(",")));
    }
    out
}

pub fn bidegree_csv(table: &BidegreeTable) -> String {
    let mut out = String::from("u1,u2,dim\n");
    for (b, d) in table.entries.iter().filter(|e| *e.1 > 0) {
        out.push_str(&format!("{},{},{d}\n", b.u1, b.u2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn table(cells: &[((u32, u32), u64)]) -> BidegreeTable {
        let entries: BTreeMap<Bidegree, u64> = cells.iter().map(|&((x, y), d)| (Bidegree::new(x, y), d)).collect();
        BidegreeTable { p: 1, q: 1, entries }
    }

    #[test]
    fn grid_orientation() {
        let t = table(&[((0, 0), 1), ((1, 0), 2), ((0, 1), 3)]);
        assert_eq!(render_grid(&t, GridOptions::default()), "3 0\n1 2\ntotal 6\n");
        let rotated = GridOptions { rotate: true, ..Default::default() };
        assert_eq!(render_grid(&t, rotated), "1 3\n2 0\ntotal 6\n");
        let padded = GridOptions { pad: 1, ..Default::default() };
        assert_eq!(render_grid(&table(&[((1, 1), 1)]), padded), "0 0 0\n0 1 0\n0 0 0\ntotal 1\n");
    }

    #[test]
    fn empty_grid() {
        assert_eq!(render_grid(&table(&[]), GridOptions::default()), "total 0\n");
    }

    #[test]
    fn windows() {
        assert_eq!(Window::parse("2:4,0:1").unwrap(), Window { u1: (2, 4), u2: (0, 1) });
        assert!(Window::parse("4:2,0:1").is_err());
        assert!(Window::parse("2:4").is_err());
    }
}
