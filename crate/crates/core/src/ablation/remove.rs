use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::{self, print, AstNode, NodeKind, SourceUnit};

/// Statement kinds eligible for deletion.
pub const REMOVABLE: [NodeKind; 5] = [
    NodeKind::ForStatement,
    NodeKind::EnhancedForStatement,
    NodeKind::WhileStatement,
    NodeKind::DoStatement,
    NodeKind::IfStatement,
];

fn holds_statement_list(kind: NodeKind) -> bool {
    matches!(kind, NodeKind::Block | NodeKind::SwitchStatement)
}

fn prune(node: &mut AstNode, p: f64, rng: &mut ChaCha8Rng, removed: &mut usize) {
    let list = holds_statement_list(node.kind);
    let mut kept = Vec::with_capacity(node.children.len());
    for mut child in std::mem::take(&mut node.children) {
        if REMOVABLE.contains(&child.kind) && rng.gen_bool(p) {
            *removed += 1;
            if !list {
                kept.push(AstNode::new(NodeKind::EmptyStatement, child.span));
            }
            continue;
        }
        prune(&mut child, p, rng, removed);
        kept.push(child);
    }
    node.children = kept;
}

/// Deletes each loop or `if` statement with probability `p`, visiting the tree
/// top-down so that nodes inside a deleted subtree are never sampled. A deleted
/// statement vanishes from its block, or becomes `;` where a statement is
/// required. Returns the new tree and the number of deletions.
pub fn remove_substructures_tree(root: &AstNode, p: f64, seed: u64) -> (AstNode, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = root.clone();
    let mut removed = 0;
    prune(&mut out, p, &mut rng, &mut removed);
    (out, removed)
}

pub fn remove_substructures(
    unit: &SourceUnit,
    p: f64,
    seed: u64,
) -> Result<SourceUnit, super::AblationError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(super::AblationError::InvalidProbability(p));
    }
    let root = ast::parse(unit)?;
    let (tree, _) = remove_substructures_tree(&root, p, seed);
    let text = print(&tree);
    ast::parse_str(&text)?;
    Ok(SourceUnit {
        id: unit.id.clone(),
        text,
        label: unit.label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_str;

    const SRC: &str = "class A { public static void main(String[] a) {
        int s = 0;
        for (int i = 0; i < 3; i++) { if (i > 1) s++; else if (i < 0) s--; }
        while (s > 0) s--;
        search: for (int x : new int[3]) { do { s++; } while (s < 2); }
        switch (s) { case 1: if (s > 0) break; default: s = 2; }
    } }";

    fn count_removable(t: &AstNode) -> usize {
        t.descendants()
            .filter(|n| REMOVABLE.contains(&n.kind))
            .count()
    }

    #[test]
    fn zero_probability_is_identity() {
        let unit = SourceUnit::new("t", SRC);
        let out = remove_substructures(&unit, 0.0, 9).unwrap();
        assert_eq!(
            parse_str(&out.text).unwrap().without_spans(),
            parse_str(SRC).unwrap().without_spans()
        );
    }

    #[test]
    fn certain_removal_leaves_no_loops_or_ifs() {
        let out = remove_substructures(&SourceUnit::new("t", SRC), 1.0, 9).unwrap();
        let tree = parse_str(&out.text).unwrap();
        assert_eq!(count_removable(&tree), 0);
        let labeled = tree
            .descendants()
            .find(|n| n.kind == NodeKind::LabeledStatement)
            .unwrap();
        assert!(
            labeled
                .children
                .iter()
                .any(|c| c.kind == NodeKind::EmptyStatement),
            "{}",
            out.text
        );
        assert!(out.text.contains("int s = 0;"));
    }

    #[test]
    fn every_seed_yields_parseable_output() {
        let before = count_removable(&parse_str(SRC).unwrap());
        for seed in 0..64 {
            let out = remove_substructures(&SourceUnit::new("t", SRC), 0.5, seed).unwrap();
            assert!(count_removable(&parse_str(&out.text).unwrap()) <= before);
        }
    }

    #[test]
    fn out_of_range_probability_is_rejected() {
        assert!(remove_substructures(&SourceUnit::new("t", SRC), 1.5, 0).is_err());
    }
}
