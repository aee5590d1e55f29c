//! Fixtures shared by the benchmarks.

use bodylink_core::circuit::{parse_netlist, Netlist};

/// RC ladder with `stages` sections driven by `V1` at node 1.
pub fn rc_ladder(stages: usize) -> Netlist {
    let mut text = String::from("V1 1 0 1\n");
    for i in 1..=stages {
        text.push_str(&format!("R{i} {i} {} 1k\nC{i} {} 0 1n\n", i + 1, i + 1));
    }
    parse_netlist(&text).expect("ladder is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_size() {
        assert_eq!(rc_ladder(4).node_count(), 6);
        assert_eq!(rc_ladder(4).elements().len(), 9);
    }
}
