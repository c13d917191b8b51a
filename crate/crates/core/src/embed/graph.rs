use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::ast::{build_call_graph, reachable_from_main, AstNode, MethodId, NodeKind};

/// How an AST node's kind and value collapse into one graph label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelMode {
    /// `Kind::value`, or the kind alone when the node has no value.
    Concatenated,
    /// Identifier text for simple names, `LIT` for literals, the kind otherwise.
    Selective,
}

impl std::str::FromStr for LabelMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "concat" | "concatenated" => Ok(LabelMode::Concatenated),
            "selective" => Ok(LabelMode::Selective),
            other => Err(format!(
                "unknown label mode `{other}` (expected concat or selective)"
            )),
        }
    }
}

pub const LITERAL_LABEL: &str = "LIT";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) refers to a missing node")]
    NodeOutOfRange(usize, usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("graph with {nodes} nodes and {edges} edges is not a tree")]
    NotATree { nodes: usize, edges: usize },
}

/// Undirected tree with one label per node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let n = labels.len();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(GraphError::NodeOutOfRange(a, b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
        }
        let g = LabeledGraph { labels, edges };
        if n > 0 && (g.edges.len() != n - 1 || !g.is_connected()) {
            return Err(GraphError::NotATree {
                nodes: n,
                edges: g.edges.len(),
            });
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.neighbors();
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn node_label(node: &AstNode, mode: LabelMode) -> String {
    let kind = node.kind.as_str();
    match mode {
        LabelMode::Concatenated => match node.value() {
            Some(v) if !v.is_empty() => format!("{kind}::{v}"),
            _ => kind.to_string(),
        },
        LabelMode::Selective => match node.kind {
            NodeKind::SimpleName => node.value().unwrap_or(kind).to_string(),
            NodeKind::Literal => LITERAL_LABEL.to_string(),
            _ => kind.to_string(),
        },
    }
}

/// The AST as a labeled tree, with methods unreachable from `main` pruned.
pub fn ast_to_graph(root: &AstNode, mode: LabelMode) -> LabeledGraph {
    let reachable = reachable_from_main(&build_call_graph(root));
    let pruned: HashSet<*const AstNode> = root
        .declared_methods()
        .into_iter()
        .filter(|m| !reachable.contains(&MethodId::of(m)))
        .map(|m| m as *const AstNode)
        .collect();

    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut stack: Vec<(&AstNode, Option<usize>)> = vec![(root, None)];
    while let Some((node, parent)) = stack.pop() {
        let id = labels.len();
        labels.push(node_label(node, mode));
        if let Some(p) = parent {
            edges.push((p, id));
        }
        for child in node.children.iter().rev() {
            if !pruned.contains(&(child as *const AstNode)) {
                stack.push((child, Some(id)));
            }
        }
    }
    LabeledGraph { labels, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{parse_str, Span};

    #[test]
    fn method_declaration_concatenated_label() {
        let node = AstNode::new(NodeKind::MethodDeclaration, Span::default()).with_value("f");
        assert_eq!(
            node_label(&node, LabelMode::Concatenated),
            "MethodDeclaration::f"
        );
    }

    #[test]
    fn simple_name_selective_label() {
        let node = AstNode::new(NodeKind::SimpleName, Span::default()).with_value("x");
        assert_eq!(node_label(&node, LabelMode::Selective), "x");
        let lit = AstNode::new(NodeKind::Literal, Span::default()).with_value("42");
        assert_eq!(node_label(&lit, LabelMode::Selective), "LIT");
        assert_eq!(node_label(&lit, LabelMode::Concatenated), "Literal::42");
    }

    #[test]
    fn valueless_node_is_its_kind_in_both_modes() {
        let node = AstNode::new(NodeKind::Block, Span::default());
        assert_eq!(node_label(&node, LabelMode::Concatenated), "Block");
        assert_eq!(node_label(&node, LabelMode::Selective), "Block");
    }

    #[test]
    fn graph_is_a_tree_over_the_reachable_program() {
        let src =
            "class A { public static void main(String[] a) { int x = 1; } void dead() { int y; } }";
        let root = parse_str(src).unwrap();
        let g = ast_to_graph(&root, LabelMode::Concatenated);
        assert_eq!(g.edges().len(), g.node_count() - 1);
        assert!(LabeledGraph::new(g.labels().to_vec(), g.edges().to_vec()).is_ok());
        assert!(g.labels().iter().any(|l| l == "MethodDeclaration::main"));
        assert!(!g.labels().iter().any(|l| l == "MethodDeclaration::dead"));
        assert!(!g
            .labels()
            .iter()
            .any(|l| l == "VariableDeclarationFragment::y"));
        assert_eq!(g.labels()[0], "CompilationUnit");
    }

    #[test]
    fn invalid_graphs_are_rejected() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert_eq!(
            LabeledGraph::new(l(2), vec![(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            LabeledGraph::new(l(2), vec![(0, 2)]),
            Err(GraphError::NodeOutOfRange(0, 2))
        );
        assert!(matches!(
            LabeledGraph::new(l(3), vec![(0, 1)]),
            Err(GraphError::NotATree { .. })
        ));
        assert!(matches!(
            LabeledGraph::new(l(4), vec![(0, 1), (1, 0), (2, 3)]),
            Err(GraphError::NotATree { .. })
        ));
    }
}
