use crate::ast::{self, print, AstNode, NodeKind, SourceUnit, Span};

/// Invocation names treated as reading external input (Scanner, BufferedReader,
/// StringTokenizer, DataInputStream and the usual fast-reader helpers).
pub const INPUT_READS: &[&str] = &[
    "next",
    "nextInt",
    "nextLong",
    "nextDouble",
    "nextFloat",
    "nextShort",
    "nextByte",
    "nextBoolean",
    "nextLine",
    "nextBigInteger",
    "nextBigDecimal",
    "nextToken",
    "readLine",
    "read",
    "readInt",
    "readLong",
    "readDouble",
];

/// Conversions whose result is still "the input" when applied to a read.
pub const INPUT_WRAPPERS: &[&str] = &[
    "parseInt",
    "parseLong",
    "parseDouble",
    "parseFloat",
    "valueOf",
    "trim",
];

pub const CONSTANT_INPUT: &str = "10";

fn receiver(call: &AstNode) -> Option<&AstNode> {
    call.children
        .iter()
        .find(|c| c.kind != NodeKind::ArgumentList)
}

fn arguments(call: &AstNode) -> &[AstNode] {
    call.child_of_kind(NodeKind::ArgumentList)
        .map_or(&[], |a| a.children.as_slice())
}

/// A read call, or a wrapper or chained call whose input comes from one.
fn is_input_expression(node: &AstNode) -> bool {
    if node.kind != NodeKind::MethodInvocation {
        return false;
    }
    let name = node.value().unwrap_or_default();
    INPUT_READS.contains(&name)
        || (INPUT_WRAPPERS.contains(&name)
            && arguments(node).first().is_some_and(is_input_expression))
        || receiver(node).is_some_and(is_input_expression)
}

pub fn count_input_reads(root: &AstNode) -> usize {
    root.descendants()
        .filter(|n| {
            n.kind == NodeKind::MethodInvocation
                && INPUT_READS.contains(&n.value().unwrap_or_default())
        })
        .count()
}

fn replace(node: &mut AstNode, replaced: &mut usize) {
    for child in &mut node.children {
        if is_input_expression(child) {
            *child = AstNode::new(NodeKind::Literal, child.span).with_value(CONSTANT_INPUT);
            *replaced += 1;
        } else {
            replace(child, replaced);
        }
    }
}

/// Replaces every outermost input expression with the literal `10`.
/// Returns the new tree and the number of replacements.
pub fn constant_inputs_tree(root: &AstNode) -> (AstNode, usize) {
    let mut out = root.clone();
    let mut replaced = 0;
    if is_input_expression(&out) {
        return (
            AstNode::new(NodeKind::Literal, Span::default()).with_value(CONSTANT_INPUT),
            1,
        );
    }
    replace(&mut out, &mut replaced);
    (out, replaced)
}

pub fn constant_inputs(unit: &SourceUnit) -> Result<SourceUnit, super::AblationError> {
    let root = ast::parse(unit)?;
    let (tree, replaced) = constant_inputs_tree(&root);
    if replaced == 0 {
        return Err(super::AblationError::NoInputDetected(unit.id.clone()));
    }
    Ok(SourceUnit {
        id: unit.id.clone(),
        text: print(&tree),
        label: unit.label,
    })
}
