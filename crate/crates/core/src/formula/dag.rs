use std::collections::HashMap;

use super::{Formula, VarName};

pub type NodeId = usize;

/// One distinct subformula with its children resolved to node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeKind {
    True,
    False,
    Var(VarName),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Iff(NodeId, NodeId),
    DiamondD(NodeId),
    BoxD(NodeId),
}

#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub formula: Formula,
}

/// Hash-consed view of a formula: every structurally distinct subformula
/// appears once, and children always precede their parents.
#[derive(Debug, Clone)]
pub struct FormulaDag {
    nodes: Vec<Node>,
    root: NodeId,
}

struct Builder {
    nodes: Vec<Node>,
    by_kind: HashMap<NodeKind, NodeId>,
    by_ptr: HashMap<*const Formula, NodeId>,
}

impl Builder {
    fn visit(&mut self, f: &Formula) -> NodeId {
        let ptr = f as *const Formula;
        if let Some(&id) = self.by_ptr.get(&ptr) {
            return id;
        }
        let kind = match f {
            Formula::True => NodeKind::True,
            Formula::False => NodeKind::False,
            Formula::Var(v) => NodeKind::Var(v.clone()),
            Formula::Not(x) => NodeKind::Not(self.visit(x)),
            Formula::DiamondD(x) => NodeKind::DiamondD(self.visit(x)),
            Formula::BoxD(x) => NodeKind::BoxD(self.visit(x)),
            Formula::And(l, r) => {
                let (l, r) = (self.visit(l), self.visit(r));
                NodeKind::And(l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.visit(l), self.visit(r));
                NodeKind::Or(l, r)
            }
            Formula::Implies(l, r) => {
                let (l, r) = (self.visit(l), self.visit(r));
                NodeKind::Implies(l, r)
            }
            Formula::Iff(l, r) => {
                let (l, r) = (self.visit(l), self.visit(r));
                NodeKind::Iff(l, r)
            }
        };
        let id = match self.by_kind.get(&kind) {
            Some(&id) => id,
            None => {
                let id = self.nodes.len();
                self.by_kind.insert(kind.clone(), id);
                self.nodes.push(Node { kind, formula: f.clone() });
                id
            }
        };
        self.by_ptr.insert(ptr, id);
        id
    }
}

impl FormulaDag {
    pub fn new(f: &Formula) -> Self {
        let mut builder = Builder {
            nodes: Vec::new(),
            by_kind: HashMap::new(),
            by_ptr: HashMap::new(),
        };
        let root = builder.visit(f);
        FormulaDag {
            nodes: builder.nodes,
            root,
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn kind(&self, id: NodeId) -> &NodeKind {
        &self.nodes[id].kind
    }

    /// Looks up the node of a subformula, if it occurs in this dag.
    pub fn find(&self, f: &Formula) -> Option<NodeId> {
        self.nodes.iter().position(|n| &n.formula == f)
    }
}
