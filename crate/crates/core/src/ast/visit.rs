use super::node::AstNode;

/// Depth-first traversal callbacks in the style of JDT's `ASTVisitor`.
///
/// `enter` runs in preorder; returning `false` skips the node's children.
/// `exit` runs in postorder and fires for every entered node, skipped or not.
pub trait Visitor {
    fn enter(&mut self, _node: &AstNode) -> bool {
        true
    }

    fn exit(&mut self, _node: &AstNode) {}
}

pub fn visit<V: Visitor + ?Sized>(root: &AstNode, visitor: &mut V) {
    if visitor.enter(root) {
        for child in &root.children {
            visit(child, visitor);
        }
    }
    visitor.exit(root);
}

/// Adapts a pair of closures into a [`Visitor`].
pub struct FnVisitor<E, X> {
    pub enter: E,
    pub exit: X,
}

impl<E, X> Visitor for FnVisitor<E, X>
where
    E: FnMut(&AstNode) -> bool,
    X: FnMut(&AstNode),
{
    fn enter(&mut self, node: &AstNode) -> bool {
        (self.enter)(node)
    }

    fn exit(&mut self, node: &AstNode) {
        (self.exit)(node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{NodeKind, Span};

    fn block(children: Vec<AstNode>, tag: &str) -> AstNode {
        AstNode::new(NodeKind::Block, Span::new(1, 1))
            .with_value(tag)
            .with_children(children)
    }

    fn chain() -> AstNode {
        block(vec![block(vec![block(vec![], "inner")], "mid")], "outer")
    }

    #[test]
    fn single_node_enters_then_exits_once() {
        let node = AstNode::new(NodeKind::EmptyStatement, Span::new(1, 1));
        let mut log = Vec::new();
        let log_ref = std::cell::RefCell::new(&mut log);
        let mut v = FnVisitor {
            enter: |_: &AstNode| {
                log_ref.borrow_mut().push("enter");
                true
            },
            exit: |_: &AstNode| log_ref.borrow_mut().push("exit"),
        };
        visit(&node, &mut v);
        assert_eq!(log, ["enter", "exit"]);
    }

    #[derive(Default)]
    struct Recorder {
        entered: Vec<String>,
        exited: Vec<String>,
        skip: Option<&'static str>,
    }

    impl Visitor for Recorder {
        fn enter(&mut self, node: &AstNode) -> bool {
            let tag = node.value().unwrap().to_string();
            let descend = self.skip != Some(tag.as_str());
            self.entered.push(tag);
            descend
        }

        fn exit(&mut self, node: &AstNode) {
            self.exited.push(node.value().unwrap().to_string());
        }
    }

    #[test]
    fn nested_blocks_preorder_enter_postorder_exit() {
        let mut r = Recorder::default();
        visit(&chain(), &mut r);
        assert_eq!(r.entered, ["outer", "mid", "inner"]);
        assert_eq!(r.exited, ["inner", "mid", "outer"]);
    }

    #[test]
    fn returning_false_skips_subtree_but_still_exits() {
        let mut r = Recorder {
            skip: Some("mid"),
            ..Default::default()
        };
        visit(&chain(), &mut r);
        assert_eq!(r.entered, ["outer", "mid"]);
        assert_eq!(r.exited, ["mid", "outer"]);
    }
}
