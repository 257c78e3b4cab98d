//! Per-round summaries of a search as a human table and as CSV.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::round::{FoundGraph, SearchState};
use crate::graphmat::HermitianMatrix;
use crate::poly::MahlerResult;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub j: usize,
    /// `|T_j|` up to the configured equivalence.
    pub count: usize,
    /// The count is a full reduction by canonical keys, not an upper bound.
    pub count_is_exact: bool,
    pub min_mahler: Option<MahlerResult>,
    /// A graph of `T_j` attaining the least measure.
    pub witness: Option<HermitianMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub search: String,
    pub ring: Ring,
    /// Vertex count of the last frontier.
    pub reached: usize,
    pub rows: Vec<ReportRow>,
}

fn least(graphs: &[&FoundGraph]) -> Option<FoundGraph> {
    let mut best: Option<&FoundGraph> = None;
    for &g in graphs {
        if best.is_none_or(|b| g.mahler.value < b.mahler.value) {
            best = Some(g);
        }
    }
    best.cloned()
}

impl SearchReport {
    /// One row per `j` from the first grown size through the current round.
    pub fn from_state(state: &SearchState) -> Self {
        let first = state.minimal_found.keys().next().copied().unwrap_or(state.start_round + 1).min(state.start_round + 1);
        let rows = (first..=state.round)
            .filter(|&j| j > state.start_round || state.minimal_found.contains_key(&j))
            .map(|j| {
                let t = state.minimal_at(j);
                let best = least(&t);
                ReportRow {
                    j,
                    count: t.len(),
                    count_is_exact: true,
                    min_mahler: best.as_ref().map(|b| b.mahler),
                    witness: best.map(|b| b.matrix),
                }
            })
            .collect();
        SearchReport { search: state.config.name.clone(), ring: state.config.ring, reached: state.round, rows }
    }

    pub fn row(&self, j: usize) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.j == j)
    }

    /// File name used for the witness of row `j`.
    pub fn witness_file(&self, j: usize) -> String {
        format!("{}-T{}.txt", self.search, j)
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("search {} over {} (frontier at {} vertices)\n", self.search, self.ring, self.reached);
        let _ = writeln!(s, "{:>3}  {:>7}  {:<30}", "j", "|T_j|", "min M");
        for r in &self.rows {
            let count = if r.count_is_exact { r.count.to_string() } else { format!("<={}", r.count) };
            let m = r.min_mahler.map(|m| m.display()).unwrap_or_else(|| "-".into());
            let _ = writeln!(s, "{:>3}  {:>7}  {:<30}", r.j, count, m);
        }
        s
    }

    /// `j,count,count_is_exact,min_mahler,witness_file`, one line per row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,count,count_is_exact,min_mahler,witness_file\n");
        for r in &self.rows {
            let m = r.min_mahler.map(|m| format!("{:.9}", m.value)).unwrap_or_default();
            let w = if r.witness.is_some() { self.witness_file(r.j) } else { String::new() };
            let _ = writeln!(s, "{},{},{},{},{}", r.j, r.count, r.count_is_exact, m, w);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grow::config::registered_config;
    use crate::grow::round::run_search;

    #[test]
    fn csv_shape() {
        let cfg = registered_config("charged-trianglefree-zi").unwrap();
        let state = run_search(&cfg, 3).unwrap();
        let rep = SearchReport::from_state(&state);
        let csv = rep.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "j,count,count_is_exact,min_mahler,witness_file");
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("3,3,true,1.50"), "{}", lines[1]);
        assert!(lines[1].ends_with("charged-trianglefree-zi-T3.txt"));
        assert!(rep.to_table().contains("exact-one: no"));
    }

    #[test]
    fn empty_rows_below_the_seed() {
        let cfg = registered_config("weight2-zi").unwrap();
        let state = run_search(&cfg, 2).unwrap();
        let rep = SearchReport::from_state(&state);
        assert!(rep.rows.is_empty());
        assert_eq!(rep.to_csv().lines().count(), 1);
    }
}
