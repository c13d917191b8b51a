//! Call graph over declared methods and reachability from `main`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::node::{AstNode, NodeKind};

/// Method identity: name plus arity. Overloads with equal arity collapse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MethodId {
    pub name: String,
    pub arity: usize,
}

impl MethodId {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        MethodId {
            name: name.into(),
            arity,
        }
    }

    pub fn of(decl: &AstNode) -> Self {
        MethodId::new(decl.value().unwrap_or_default(), decl.arity())
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CallTarget {
    Declared(MethodId),
    /// An invocation whose name and arity match no declared method.
    Library(MethodId),
}

impl CallTarget {
    pub fn id(&self) -> &MethodId {
        match self {
            CallTarget::Declared(id) | CallTarget::Library(id) => id,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallGraph {
    pub nodes: BTreeSet<CallTarget>,
    /// Caller → callees. Callers are always declared methods.
    pub edges: BTreeMap<MethodId, BTreeSet<CallTarget>>,
}

impl CallGraph {
    pub fn declared(&self) -> impl Iterator<Item = &MethodId> {
        self.nodes.iter().filter_map(|n| match n {
            CallTarget::Declared(id) => Some(id),
            CallTarget::Library(_) => None,
        })
    }

    pub fn has_edge(&self, from: &MethodId, to: &MethodId) -> bool {
        self.edges
            .get(from)
            .is_some_and(|callees| callees.contains(&CallTarget::Declared(to.clone())))
    }

    pub fn add_edge(&mut self, from: MethodId, to: CallTarget) {
        self.nodes.insert(CallTarget::Declared(from.clone()));
        self.nodes.insert(to.clone());
        self.edges.entry(from).or_default().insert(to);
    }

    fn declared_callees<'a>(&'a self, from: &MethodId) -> impl Iterator<Item = &'a MethodId> + 'a {
        self.edges
            .get(from)
            .into_iter()
            .flatten()
            .filter_map(|t| match t {
                CallTarget::Declared(id) => Some(id),
                CallTarget::Library(_) => None,
            })
    }

    /// True when some method in `within` lies on a call cycle (self-loops
    /// included) that stays inside `within`.
    pub fn has_cycle_within(&self, within: &BTreeSet<MethodId>) -> bool {
        within.iter().any(|start| {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&MethodId> = self
                .declared_callees(start)
                .filter(|c| within.contains(*c))
                .collect();
            while let Some(m) = stack.pop() {
                if m == start {
                    return true;
                }
                if seen.insert(m) {
                    stack.extend(self.declared_callees(m).filter(|c| within.contains(*c)));
                }
            }
            false
        })
    }
}

pub fn build_call_graph(root: &AstNode) -> CallGraph {
    let methods = root.declared_methods();
    let declared: BTreeSet<MethodId> = methods.iter().map(|m| MethodId::of(m)).collect();
    let mut graph = CallGraph::default();
    for id in &declared {
        graph.nodes.insert(CallTarget::Declared(id.clone()));
    }
    for method in methods {
        let caller = MethodId::of(method);
        for node in method.descendants().skip(1) {
            let callee = match node.kind {
                NodeKind::MethodInvocation => {
                    let args = node.children.last().map_or(0, |a| a.children.len());
                    MethodId::new(node.value().unwrap_or_default(), args)
                }
                // `new Foo(a, b)` reaches a declared constructor `Foo/2`
                NodeKind::ClassInstanceCreation => {
                    let ty = node.children[0].value().unwrap_or_default();
                    let base = ty.split('<').next().unwrap_or(ty);
                    let base = base.rsplit('.').next().unwrap_or(base);
                    let id = MethodId::new(base, node.children[1].children.len());
                    if !declared.contains(&id) {
                        continue;
                    }
                    id
                }
                _ => continue,
            };
            let target = if declared.contains(&callee) {
                CallTarget::Declared(callee)
            } else {
                CallTarget::Library(callee)
            };
            graph.add_edge(caller.clone(), target);
        }
    }
    graph
}

/// Declared methods reachable from any method named `main`, `main` included.
/// Without a `main`, every declared method counts as reachable.
pub fn reachable_from_main(cg: &CallGraph) -> BTreeSet<MethodId> {
    let mains: Vec<&MethodId> = cg.declared().filter(|m| m.name == "main").collect();
    if mains.is_empty() {
        return cg.declared().cloned().collect();
    }
    let mut reached: BTreeSet<MethodId> = BTreeSet::new();
    let mut queue: VecDeque<&MethodId> = mains.into_iter().collect();
    while let Some(m) = queue.pop_front() {
        if reached.insert(m.clone()) {
            queue.extend(cg.declared_callees(m));
        }
    }
    reached
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_str;

    fn graph(src: &str) -> CallGraph {
        build_call_graph(&parse_str(src).unwrap())
    }

    fn id(name: &str, arity: usize) -> MethodId {
        MethodId::new(name, arity)
    }

    #[test]
    fn main_calling_f() {
        let cg =
            graph("class A { public static void main(String[] a) { f(); } static void f() {} }");
        assert!(cg.has_edge(&id("main", 1), &id("f", 0)));
        assert_eq!(cg.edges.len(), 1);
        assert!(!cg.edges.contains_key(&id("f", 0)));
    }

    #[test]
    fn direct_recursion_is_a_self_loop() {
        let cg = graph("class A { static int f(int n) { return n == 0 ? 0 : f(n - 1); } }");
        assert!(cg.has_edge(&id("f", 1), &id("f", 1)));
        assert!(cg.has_cycle_within(&[id("f", 1)].into()));
    }

    #[test]
    fn mutual_recursion_cycle() {
        let cg = graph(
            "class A { static void main(String[] a) { f(); } static void f() { g(); } static void g() { f(); } }",
        );
        assert!(cg.has_edge(&id("f", 0), &id("g", 0)));
        assert!(cg.has_edge(&id("g", 0), &id("f", 0)));
        assert!(cg.has_cycle_within(&[id("f", 0), id("g", 0)].into()));
        assert!(!cg.has_cycle_within(&[id("main", 1), id("f", 0)].into()));
    }

    #[test]
    fn unresolved_calls_become_library_nodes() {
        let cg = graph("class A { static void main(String[] a) { System.out.println(1); f(1, 2); } static void f(int x) {} }");
        assert!(cg.nodes.contains(&CallTarget::Library(id("println", 1))));
        assert!(cg.nodes.contains(&CallTarget::Library(id("f", 2))));
        assert!(!cg.has_edge(&id("main", 1), &id("f", 1)));
    }

    #[test]
    fn reachability_skips_orphans() {
        let cg = graph("class A { static void main(String[] a) { f(); } static void f() {} static void g() {} }");
        assert_eq!(reachable_from_main(&cg), [id("main", 1), id("f", 0)].into());
    }

    #[test]
    fn reachability_without_main_is_everything() {
        let cg = graph("class A { void f() {} void g() { f(); } }");
        assert_eq!(reachable_from_main(&cg), [id("f", 0), id("g", 0)].into());
    }

    #[test]
    fn reachability_closes_over_cycles() {
        let cg = graph(
            "class A { static void main(String[] a) { f(); } static void f() { g(); } static void g() { f(); } static void h() {} }",
        );
        assert_eq!(
            reachable_from_main(&cg),
            [id("main", 1), id("f", 0), id("g", 0)].into()
        );
    }

    #[test]
    fn constructors_are_reached_through_creation() {
        let cg = graph(
            "class A { public static void main(String[] a) { new Solver(3).run(); } }
             class Solver { Solver(int n) { init(); } void init() {} void run() {} }",
        );
        let reach = reachable_from_main(&cg);
        assert!(reach.contains(&id("Solver", 1)));
        assert!(reach.contains(&id("init", 0)));
        assert!(reach.contains(&id("run", 0)));
    }
}
