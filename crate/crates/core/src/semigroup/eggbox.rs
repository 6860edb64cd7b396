use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::green::class_ids;
use super::{FiniteSemigroup, GreenStructure};

/// One D-class laid out as a grid: rows are R-classes, columns L-classes,
/// `cells[r][c]` the H-class at their intersection (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EggboxCluster {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eggbox {
    pub elements: Vec<String>,
    pub d_classes: Vec<EggboxCluster>,
}

pub fn eggbox(s: &FiniteSemigroup, g: &GreenStructure) -> Eggbox {
    let n = s.order();
    let l_id = class_ids(n, &g.l_classes);
    let r_id = class_ids(n, &g.r_classes);
    let d_classes = g
        .d_classes
        .iter()
        .map(|d| {
            // rows/cols in order of first appearance, i.e. by smallest element
            let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
            let mut cols: BTreeMap<usize, usize> = BTreeMap::new();
            let mut sorted = d.clone();
            sorted.sort_unstable();
            for &a in &sorted {
                let next = rows.len();
                rows.entry(r_id[a]).or_insert(next);
                let next = cols.len();
                cols.entry(l_id[a]).or_insert(next);
            }
            let mut cells = vec![vec![Vec::new(); cols.len()]; rows.len()];
            for &a in &sorted {
                cells[rows[&r_id[a]]][cols[&l_id[a]]].push(a);
            }
            EggboxCluster {
                rows: rows.len(),
                cols: cols.len(),
                cells,
            }
        })
        .collect();
    Eggbox {
        elements: s.labels().to_vec(),
        d_classes,
    }
}

impl Eggbox {
    /// Reads the Green structure back off the grid.
    pub fn to_green_structure(&self) -> GreenStructure {
        let mut l_classes = Vec::new();
        let mut r_classes = Vec::new();
        let mut h_classes = Vec::new();
        let mut d_classes = Vec::new();
        for d in &self.d_classes {
            for row in &d.cells {
                r_classes.push(row.concat());
            }
            for c in 0..d.cols {
                l_classes.push(d.cells.iter().flat_map(|r| r[c].clone()).collect());
            }
            h_classes.extend(d.cells.iter().flatten().filter(|h| !h.is_empty()).cloned());
            d_classes.push(d.cells.iter().flatten().flatten().copied().collect());
        }
        GreenStructure {
            l_classes,
            r_classes,
            h_classes,
            d_classes,
        }
        .normalized()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
        for (k, d) in self.d_classes.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_d{k} {{");
            let _ = writeln!(out, "    label=\"D{k}: {} x {}\";", d.rows, d.cols);
            let _ = write!(
                out,
                "    d{k} [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">"
            );
            for row in &d.cells {
                out.push_str("<TR>");
                for cell in row {
                    let text: Vec<String> =
                        cell.iter().map(|&a| escape(&self.elements[a])).collect();
                    let _ = write!(out, "<TD>{}</TD>", text.join("<BR/>"));
                }
                out.push_str("</TR>");
            }
            out.push_str("</TABLE>>];\n  }\n");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// DOT and JSON renderings of the eggbox diagram.
pub fn eggbox_export(s: &FiniteSemigroup, g: &GreenStructure) -> (String, String) {
    let egg = eggbox(s, g);
    let json = serde_json::to_string_pretty(&egg).expect("eggbox serializes");
    (egg.to_dot(), json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::green_relations;

    #[test]
    fn group_gives_one_cell() {
        let z3 = FiniteSemigroup::from_fn((0..3).map(|i| i.to_string()).collect(), |a, b| {
            (a + b) % 3
        })
        .unwrap();
        let g = green_relations(&z3);
        let egg = eggbox(&z3, &g);
        assert_eq!(egg.d_classes.len(), 1);
        assert_eq!((egg.d_classes[0].rows, egg.d_classes[0].cols), (1, 1));
        let (dot, _) = eggbox_export(&z3, &g);
        assert_eq!(dot.matches("subgraph cluster_").count(), 1);
    }

    #[test]
    fn json_roundtrip_recovers_green() {
        let lz = FiniteSemigroup::from_fn((0..3).map(|i| i.to_string()).collect(), |a, _| a)
            .unwrap();
        let g = green_relations(&lz);
        let (_, json) = eggbox_export(&lz, &g);
        let back: Eggbox = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_green_structure(), g.normalized());
    }
}
