use thiserror::Error;

use super::NodeId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown element kind '{kind}'")]
    UnknownKind { line: usize, kind: char },

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<CircuitError>,
    },

    #[error("duplicate element label '{0}'")]
    DuplicateLabel(String),

    #[error("element '{label}' connects node {node} to itself")]
    IdenticalNodes { label: String, node: NodeId },

    #[error("element '{label}' has invalid value {value}")]
    InvalidValue { label: String, value: f64 },

    #[error("element label '{label}' must start with its kind letter '{kind}'")]
    LabelKindMismatch { label: String, kind: char },

    #[error("netlist has no elements")]
    Empty,

    #[error("ground node {0} is not referenced by any element")]
    MissingGround(NodeId),

    #[error("nodes without any path to ground: {0:?}")]
    FloatingNodes(Vec<NodeId>),

    #[error("singular system; offending unknowns: {0:?}")]
    Singular(Vec<String>),

    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),

    #[error("no voltage source labelled '{0}'")]
    UnknownSource(String),

    #[error("node {0} does not exist in the netlist")]
    UnknownNode(NodeId),

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
}

impl CircuitError {
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            e @ (CircuitError::Syntax { .. }
            | CircuitError::UnknownKind { .. }
            | CircuitError::AtLine { .. }) => e,
            other => CircuitError::AtLine {
                line,
                source: Box::new(other),
            },
        }
    }
}
