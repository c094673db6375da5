//! Graphviz output.

use std::fmt::Write;

use num_traits::One;

use crate::dynamics::{CircuitReport, ConjunctiveSummary, PhaseSpace, Sign, Trajectory, WiringDiagram};

fn edge_style(sign: Option<Sign>, verified: bool) -> String {
    if !verified {
        return " [style=dashed, label=\"unverified\"]".into();
    }
    match sign {
        Some(Sign::Positive) => " [color=darkgreen, arrowhead=normal, label=\"+\"]".into(),
        Some(Sign::Negative) => " [color=red, arrowhead=tee, label=\"-\"]".into(),
        Some(Sign::Ambivalent) => " [color=blue, arrowhead=dot, label=\"+/-\"]".into(),
        None => String::new(),
    }
}

/// Wiring diagram with nodes `x1..xn`; circuits and the conjunctive summary, when
/// given, are appended as comments.
pub fn wiring_dot(
    wiring: &WiringDiagram,
    circuits: Option<&CircuitReport>,
    conjunctive: Option<&ConjunctiveSummary>,
) -> String {
    let mut s = String::from("digraph wiring {\n");
    for v in 0..wiring.nvars() {
        writeln!(s, "  x{0} [label=\"x{0}\"];", v + 1).unwrap();
    }
    for e in wiring.edges() {
        writeln!(
            s,
            "  x{} -> x{}{};",
            e.source + 1,
            e.target + 1,
            edge_style(e.sign, e.verified)
        )
        .unwrap();
    }
    if let Some(report) = circuits {
        writeln!(s, "  // circuits: {}", report.circuits.len()).unwrap();
        for c in &report.circuits {
            writeln!(s, "  // circuit {c}").unwrap();
        }
        if !report.complete {
            writeln!(s, "  // circuit enumeration stopped at the cap").unwrap();
        }
    }
    if let Some(c) = conjunctive {
        writeln!(s, "  // {} network, loop number {}", c.class, c.loop_number).unwrap();
        for (d, count) in &c.cycle_counts {
            writeln!(s, "  // cycles of length {d}: {count}").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// Phase space with nodes labelled by digit strings. Edges with probability below 1
/// carry it as their label.
pub fn phase_dot(ps: &PhaseSpace) -> String {
    let mut s = String::from("digraph phase {\n");
    for node in 0..ps.node_count() as u64 {
        writeln!(s, "  \"{}\";", ps.state(node)).unwrap();
    }
    for (src, dst, p) in ps.edges() {
        let (a, b) = (ps.state(src), ps.state(dst));
        if p.is_one() {
            writeln!(s, "  \"{a}\" -> \"{b}\";").unwrap();
        } else {
            writeln!(s, "  \"{a}\" -> \"{b}\" [label=\"{}/{}\"];", p.numer(), p.denom()).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// The path of a trajectory, closing back onto the attractor it reaches.
pub fn trajectory_dot(t: &Trajectory) -> String {
    let mut s = String::from("digraph trajectory {\n");
    for (k, st) in t.states.iter().enumerate() {
        let shape = if k >= t.entry { "doublecircle" } else { "circle" };
        writeln!(s, "  \"{st}\" [shape={shape}];").unwrap();
    }
    let path = t.path();
    for w in path.windows(2) {
        writeln!(s, "  \"{}\" -> \"{}\";", w[0], w[1]).unwrap();
    }
    s.push_str("}\n");
    s
}
