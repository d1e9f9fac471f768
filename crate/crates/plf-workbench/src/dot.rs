//! Deterministic DOT emission: Hasse diagrams with the bottom at rank 0,
//! congruence lattices, and relation overlays as dashed edges.

use plf_core::congruence::Congruence;
use plf_core::frame::{Elem, FiniteFrame};
use plf_core::order::RelationTable;
use std::fmt::Write;

fn node_name(f: &FiniteFrame, a: Elem) -> String {
    match f.label(a) {
        Some(l) if !l.is_empty() => l.to_string(),
        _ => format!("e{}", a.0),
    }
}

/// Hasse diagram of a frame: covers as edges, drawn bottom-up.
pub fn frame_dot(f: &FiniteFrame) -> String {
    let mut out = String::new();
    writeln!(out, "digraph frame {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for a in f.elements() {
        writeln!(out, "  n{} [label=\"{}\"];", a.0, node_name(f, a)).unwrap();
    }
    let mut covers: Vec<_> = f.covers().to_vec();
    covers.sort();
    for (lo, hi) in covers {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    writeln!(out, "  {{ rank=min; n{}; }}", f.bottom().0).unwrap();
    writeln!(out, "}}").unwrap();
    out
}

/// Hasse diagram with a relation overlay as dashed edges.
pub fn frame_with_relation_dot(f: &FiniteFrame, rel: &RelationTable) -> String {
    let mut out = String::new();
    writeln!(out, "digraph frame {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for a in f.elements() {
        writeln!(out, "  n{} [label=\"{}\"];", a.0, node_name(f, a)).unwrap();
    }
    let mut covers: Vec<_> = f.covers().to_vec();
    covers.sort();
    for (lo, hi) in covers {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    let mut pairs: Vec<_> = rel.pairs().collect();
    pairs.sort();
    for (a, b) in pairs {
        if a != b {
            writeln!(out, "  n{} -> n{} [style=dashed, constraint=false];", a.0, b.0).unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

/// The congruence lattice as a DOT graph ordered by refinement.
pub fn congruence_lattice_dot(congs: &[Congruence]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph assembly {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, c) in congs.iter().enumerate() {
        writeln!(out, "  c{i} [label=\"{} classes\"];", c.class_count()).unwrap();
    }
    for (i, c) in congs.iter().enumerate() {
        for (j, d) in congs.iter().enumerate() {
            if i != j && c.le(d) {
                // Covers only: no strictly intermediate congruence.
                let covered = congs
                    .iter()
                    .enumerate()
                    .any(|(k, e)| k != i && k != j && c.le(e) && e.le(d) && *e != *c && *e != *d);
                if !covered {
                    writeln!(out, "  c{i} -> c{j};").unwrap();
                }
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
