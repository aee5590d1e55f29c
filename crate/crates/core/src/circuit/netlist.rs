use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::units::parse_si;

use super::CircuitError;

/// Circuit node identifier. Node 0 is ground.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const GROUND: NodeId = NodeId(0);

    pub fn is_ground(self) -> bool {
        self == Self::GROUND
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for NodeId {
    fn from(id: usize) -> Self {
        NodeId(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Resistor,
    Capacitor,
    Inductor,
    /// AC voltage source; the value is the amplitude in volts.
    VoltageSource,
}

impl ElementKind {
    pub fn letter(self) -> char {
        match self {
            ElementKind::Resistor => 'R',
            ElementKind::Capacitor => 'C',
            ElementKind::Inductor => 'L',
            ElementKind::VoltageSource => 'V',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'R' => Some(ElementKind::Resistor),
            'C' => Some(ElementKind::Capacitor),
            'L' => Some(ElementKind::Inductor),
            'V' => Some(ElementKind::VoltageSource),
            _ => None,
        }
    }
}

/// A two-terminal linear element.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub kind: ElementKind,
    /// Full label including the kind letter, e.g. `R1`.
    pub label: String,
    pub pos: NodeId,
    pub neg: NodeId,
    /// Ohms, farads, henries, or source amplitude in volts.
    pub value: f64,
}

impl Element {
    pub fn new(
        kind: ElementKind,
        label: impl Into<String>,
        pos: impl Into<NodeId>,
        neg: impl Into<NodeId>,
        value: f64,
    ) -> Result<Self, CircuitError> {
        let element = Element {
            kind,
            label: label.into(),
            pos: pos.into(),
            neg: neg.into(),
            value,
        };
        element.validate()?;
        Ok(element)
    }

    fn validate(&self) -> Result<(), CircuitError> {
        let first = self.label.chars().next().map(|c| c.to_ascii_uppercase());
        if first != Some(self.kind.letter()) {
            return Err(CircuitError::LabelKindMismatch {
                label: self.label.clone(),
                kind: self.kind.letter(),
            });
        }
        if self.pos == self.neg {
            return Err(CircuitError::IdenticalNodes {
                label: self.label.clone(),
                node: self.pos,
            });
        }
        let ok = match self.kind {
            ElementKind::VoltageSource => self.value.is_finite() && self.value >= 0.0,
            _ => self.value.is_finite() && self.value > 0.0,
        };
        if !ok {
            return Err(CircuitError::InvalidValue {
                label: self.label.clone(),
                value: self.value,
            });
        }
        Ok(())
    }
}

/// A validated, immutable list of elements.
///
/// Every referenced node is reachable from ground through some element, so
/// no subgraph floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    elements: Vec<Element>,
    /// Sorted distinct node ids, ground first.
    nodes: Vec<NodeId>,
}

impl Netlist {
    pub fn new(elements: Vec<Element>) -> Result<Self, CircuitError> {
        if elements.is_empty() {
            return Err(CircuitError::Empty);
        }
        let mut labels = HashSet::new();
        let mut nodes = BTreeSet::new();
        for e in &elements {
            e.validate()?;
            if !labels.insert(e.label.as_str()) {
                return Err(CircuitError::DuplicateLabel(e.label.clone()));
            }
            nodes.insert(e.pos);
            nodes.insert(e.neg);
        }
        if !nodes.contains(&NodeId::GROUND) {
            return Err(CircuitError::MissingGround(NodeId::GROUND));
        }
        let nodes: Vec<NodeId> = nodes.into_iter().collect();
        let netlist = Netlist { elements, nodes };
        netlist.check_connectivity()?;
        Ok(netlist)
    }

    fn check_connectivity(&self) -> Result<(), CircuitError> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in &self.elements {
            let a = find(&mut parent, self.position(e.pos).expect("node indexed"));
            let b = find(&mut parent, self.position(e.neg).expect("node indexed"));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        let floating: Vec<NodeId> = (0..n)
            .filter(|&i| find(&mut parent, i) != root)
            .map(|i| self.nodes[i])
            .collect();
        if floating.is_empty() {
            Ok(())
        } else {
            Err(CircuitError::FloatingNodes(floating))
        }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn ground(&self) -> NodeId {
        NodeId::GROUND
    }

    /// Node ids in ascending order, ground included.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Number of distinct nodes including ground.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains_node(&self, node: NodeId) -> bool {
        self.position(node).is_some()
    }

    /// Dense index of a node (ground is 0).
    pub(crate) fn position(&self, node: NodeId) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    pub fn element(&self, label: &str) -> Option<&Element> {
        self.elements.iter().find(|e| e.label == label)
    }

    pub fn sources(&self) -> impl Iterator<Item = &Element> {
        self.elements
            .iter()
            .filter(|e| e.kind == ElementKind::VoltageSource)
    }

    /// Export in the line-oriented text format accepted by [`parse_netlist`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&format!("{} {} {} {:e}\n", e.label, e.pos, e.neg, e.value));
        }
        out
    }
}

impl std::str::FromStr for Netlist {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_netlist(s)
    }
}

/// Parse the line-oriented netlist format.
///
/// ```text
/// # comment
/// V1 1 0 1.0
/// R1 1 2 1k
/// C1 2 0 1n   # trailing comments are allowed
/// ```
pub fn parse_netlist(text: &str) -> Result<Netlist, CircuitError> {
    let mut elements = Vec::new();
    let mut labels: HashSet<String> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(CircuitError::Syntax {
                line,
                message: format!(
                    "expected `<KIND><label> <node+> <node-> <value>`, got {} fields",
                    tokens.len()
                ),
            });
        }
        let label = tokens[0];
        let first = label.chars().next().expect("non-empty token");
        let kind = ElementKind::from_letter(first)
            .ok_or(CircuitError::UnknownKind { line, kind: first })?;
        let node = |tok: &str| {
            tok.parse::<usize>()
                .map(NodeId)
                .map_err(|_| CircuitError::Syntax {
                    line,
                    message: format!("invalid node id '{tok}'"),
                })
        };
        let pos = node(tokens[1])?;
        let neg = node(tokens[2])?;
        let value = parse_si(tokens[3]).ok_or_else(|| CircuitError::Syntax {
            line,
            message: format!("invalid value '{}'", tokens[3]),
        })?;
        if !labels.insert(label.to_string()) {
            return Err(CircuitError::DuplicateLabel(label.to_string()).at_line(line));
        }
        let element = Element::new(kind, label, pos, neg, value).map_err(|e| e.at_line(line))?;
        elements.push(element);
    }
    Netlist::new(elements)
}
