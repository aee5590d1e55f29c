//! Test-only oracles, kept independent of the MNA/LU code path.

#![allow(dead_code)]

use std::f64::consts::PI;

use bodylink_core::circuit::{ElementKind, Netlist, NodeId};
use num_complex::Complex64;
use rand::Rng;

/// Random connected RC network with `nodes` nodes (ground included) and a
/// 1 V source `V1` from node 1 to ground. Returns netlist text.
pub fn random_rc_text<R: Rng>(rng: &mut R, nodes: usize) -> String {
    assert!(nodes >= 2);
    let mut lines = vec!["V1 1 0 1".to_string()];
    let mut count = 0;
    let mut push = |rng: &mut R, a: usize, b: usize, lines: &mut Vec<String>| {
        count += 1;
        if rng.gen_bool(0.5) {
            let r = 10f64.powf(rng.gen_range(2.0..5.0));
            lines.push(format!("R{count} {a} {b} {r:e}"));
        } else {
            let c = 10f64.powf(rng.gen_range(-10.0..-8.0));
            lines.push(format!("C{count} {a} {b} {c:e}"));
        }
    };
    // Spanning tree: every node >= 2 hangs off an earlier node. Node 2 sits
    // between the source and ground so the source always carries current.
    assert!(nodes >= 3);
    push(rng, 1, 2, &mut lines);
    for n in 2..nodes {
        let parent = if n == 2 { 0 } else { rng.gen_range(0..n) };
        push(rng, n, parent, &mut lines);
    }
    let extra = rng.gen_range(1..=nodes);
    for _ in 0..extra {
        let a = rng.gen_range(0..nodes);
        let mut b = rng.gen_range(0..nodes);
        while b == a {
            b = rng.gen_range(0..nodes);
        }
        push(rng, a, b, &mut lines);
    }
    lines.join("\n")
}

/// Series-R/shunt-C (`low_pass`) or series-C/shunt-R ladder with `stages`
/// sections, driven by a 1 V grounded source at node 1.
pub fn random_ladder_text<R: Rng>(rng: &mut R, stages: usize, low_pass: bool) -> String {
    let mut lines = vec!["V1 1 0 1".to_string()];
    for s in 0..stages {
        let (a, b) = (s + 1, s + 2);
        let r = 10f64.powf(rng.gen_range(2.0..5.0));
        let c = 10f64.powf(rng.gen_range(-10.0..-8.0));
        if low_pass {
            lines.push(format!("R{s} {a} {b} {r:e}"));
            lines.push(format!("C{s} {b} 0 {c:e}"));
        } else {
            lines.push(format!("C{s} {a} {b} {c:e}"));
            lines.push(format!("R{s} {b} 0 {r:e}"));
        }
    }
    lines.join("\n")
}

/// Random connected resistor network, same shape as [`random_rc_text`].
pub fn random_resistive_text<R: Rng>(rng: &mut R, nodes: usize) -> String {
    let mut lines = vec!["V1 1 0 1".to_string()];
    for n in 2..nodes {
        let parent = if n == 2 { 0 } else { rng.gen_range(0..n) };
        let r = 10f64.powf(rng.gen_range(1.0..5.0));
        lines.push(format!("R{n} {n} {parent} {r:e}"));
    }
    for k in 0..nodes {
        let a = rng.gen_range(0..nodes);
        let b = (a + rng.gen_range(1..nodes)) % nodes;
        let r = 10f64.powf(rng.gen_range(1.0..5.0));
        lines.push(format!("RX{k} {a} {b} {r:e}"));
    }
    lines.join("\n")
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut det = Complex64::new(0.0, 0.0);
            for col in 0..n {
                if m[0][col] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let minor: Vec<Vec<Complex64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
                det += m[0][col] * sign * determinant(&minor);
            }
            det
        }
    }
}

/// Node voltages by plain nodal analysis with Cramer's rule.
///
/// Only handles netlists whose single voltage source is grounded at its
/// negative terminal; the source node becomes a known boundary value.
pub fn oracle_voltages(netlist: &Netlist, freq: f64) -> Vec<(NodeId, Complex64)> {
    let sources: Vec<_> = netlist.sources().collect();
    assert_eq!(sources.len(), 1, "oracle supports exactly one source");
    let src = sources[0];
    assert!(src.neg.is_ground(), "oracle needs a grounded source");
    let w = 2.0 * PI * freq;

    let unknown: Vec<NodeId> = netlist
        .nodes()
        .iter()
        .copied()
        .filter(|n| !n.is_ground() && *n != src.pos)
        .collect();
    let idx = |n: NodeId| unknown.iter().position(|u| *u == n);
    let k = unknown.len();
    let mut y = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    let mut rhs = vec![Complex64::new(0.0, 0.0); k];
    let vs = Complex64::new(src.value, 0.0);

    for e in netlist.elements() {
        let g = match e.kind {
            ElementKind::Resistor => Complex64::new(1.0 / e.value, 0.0),
            ElementKind::Capacitor => Complex64::new(0.0, w * e.value),
            ElementKind::Inductor => Complex64::new(0.0, -1.0 / (w * e.value)),
            ElementKind::VoltageSource => continue,
        };
        let (a, b) = (idx(e.pos), idx(e.neg));
        if let Some(a) = a {
            y[a][a] += g;
        }
        if let Some(b) = b {
            y[b][b] += g;
        }
        match (a, b) {
            (Some(a), Some(b)) => {
                y[a][b] -= g;
                y[b][a] -= g;
            }
            (Some(a), None) if e.neg == src.pos => rhs[a] += g * vs,
            (None, Some(b)) if e.pos == src.pos => rhs[b] += g * vs,
            _ => {}
        }
    }

    let det = determinant(&y);
    let mut out = vec![(NodeId::GROUND, Complex64::new(0.0, 0.0)), (src.pos, vs)];
    for (j, node) in unknown.iter().enumerate() {
        let mut m = y.clone();
        for r in 0..k {
            m[r][j] = rhs[r];
        }
        out.push((*node, determinant(&m) / det));
    }
    out.sort_by_key(|(n, _)| *n);
    out
}

/// Largest deviation between two voltage sets, relative to the largest
/// oracle magnitude.
pub fn relative_error(got: &[(NodeId, Complex64)], want: &[(NodeId, Complex64)]) -> f64 {
    assert_eq!(got.len(), want.len());
    let scale = want.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    got.iter()
        .zip(want)
        .map(|((n1, a), (n2, b))| {
            assert_eq!(n1, n2);
            (a - b).norm()
        })
        .fold(0.0, f64::max)
        / scale
}
