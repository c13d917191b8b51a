use std::collections::{BTreeMap, BTreeSet};

use crate::ast::lexer::{tokenize, TokenKind};
use crate::ast::{self, print, AstNode, NodeKind, ParseError, SourceUnit};

/// Names that features or the entry point depend on; never renamed.
pub const PRESERVED_NAMES: [&str; 5] = ["sort", "HashMap", "HashSet", "PriorityQueue", "main"];

#[derive(Default)]
struct Names {
    methods: BTreeMap<String, String>,
    variables: BTreeMap<String, String>,
}

fn collect_declarations(node: &AstNode, methods: &mut Vec<String>, variables: &mut Vec<String>) {
    let name = node.value().unwrap_or_default();
    match node.kind {
        // Constructors (no return type) must keep the class name.
        NodeKind::MethodDeclaration if node.child_of_kind(NodeKind::TypeRef).is_some() => {
            methods.push(name.to_string());
        }
        NodeKind::VariableDeclarationFragment | NodeKind::Parameter => {
            variables.push(name.to_string())
        }
        _ => {}
    }
    for child in &node.children {
        collect_declarations(child, methods, variables);
    }
}

fn every_identifier(root: &AstNode) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for node in root.descendants() {
        match node.kind {
            NodeKind::StatementOther | NodeKind::ExpressionOther => {
                if let Ok(tokens) = tokenize(node.value().unwrap_or_default()) {
                    out.extend(
                        tokens
                            .into_iter()
                            .filter(|t| t.kind == TokenKind::Ident)
                            .map(|t| t.text),
                    );
                }
            }
            NodeKind::TypeRef | NodeKind::ImportDeclaration | NodeKind::PackageDeclaration => {
                out.extend(
                    node.value()
                        .unwrap_or_default()
                        .split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$'))
                        .map(str::to_string),
                );
            }
            _ => {
                if let Some(v) = node.value() {
                    out.insert(v.to_string());
                }
            }
        }
    }
    out
}

fn assign(order: Vec<String>, prefix: &str, taken: &BTreeSet<String>) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let mut next = 0usize;
    for name in order {
        if PRESERVED_NAMES.contains(&name.as_str()) || map.contains_key(&name) {
            continue;
        }
        let fresh = loop {
            let candidate = format!("{prefix}{next}");
            next += 1;
            if !taken.contains(&candidate) {
                break candidate;
            }
        };
        map.insert(name, fresh);
    }
    map
}

fn rename_raw(text: &str, names: &Names) -> String {
    let Ok(tokens) = tokenize(text) else {
        return text.to_string();
    };
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Ident) {
        if let Some(new) = names
            .variables
            .get(&t.text)
            .or_else(|| names.methods.get(&t.text))
        {
            out.push_str(&text[last..t.start]);
            out.push_str(new);
            last = t.end;
        }
    }
    out.push_str(&text[last..]);
    out
}

fn apply(node: &mut AstNode, names: &Names) {
    let map = match node.kind {
        NodeKind::MethodDeclaration if node.child_of_kind(NodeKind::TypeRef).is_some() => {
            Some(&names.methods)
        }
        NodeKind::MethodInvocation => Some(&names.methods),
        NodeKind::VariableDeclarationFragment
        | NodeKind::Parameter
        | NodeKind::SimpleName
        | NodeKind::FieldAccess => Some(&names.variables),
        _ => None,
    };
    if let (Some(map), Some(value)) = (map, node.value.as_mut()) {
        if let Some(new) = map.get(value.as_str()) {
            *value = new.clone();
        }
    }
    if matches!(
        node.kind,
        NodeKind::StatementOther | NodeKind::ExpressionOther
    ) {
        if let Some(value) = node.value.as_mut() {
            *value = rename_raw(value, names);
        }
    }
    for child in &mut node.children {
        apply(child, names);
    }
}

/// Renames in a parsed tree: declared methods become `m0, m1, ...` and
/// declared variables and parameters `v0, v1, ...`, in order of declaration,
/// with every use renamed to match. Fresh names skip identifiers already in
/// the program.
pub fn rename_tree(root: &AstNode) -> AstNode {
    let (mut methods, mut variables) = (Vec::new(), Vec::new());
    collect_declarations(root, &mut methods, &mut variables);
    let taken = every_identifier(root);
    let names = Names {
        methods: assign(methods, "m", &taken),
        variables: assign(variables, "v", &taken),
    };
    let mut out = root.clone();
    apply(&mut out, &names);
    out
}

/// Source-level rename: parse, rename, print.
pub fn rename_identifiers(unit: &SourceUnit) -> Result<SourceUnit, ParseError> {
    let root = ast::parse(unit)?;
    Ok(SourceUnit {
        id: unit.id.clone(),
        text: print(&rename_tree(&root)),
        label: unit.label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_str;

    fn renamed(src: &str) -> String {
        rename_identifiers(&SourceUnit::new("t", src)).unwrap().text
    }

    #[test]
    fn one_variable_used_three_times() {
        let out =
            renamed("class A { public static void main(String[] a) { int x = 1; x = x + x; } }");
        assert!(out.contains("int v1 = 1;"), "{out}");
        assert!(out.contains("v1 = v1 + v1;"), "{out}");
        assert!(!out.contains('x'), "{out}");
    }

    #[test]
    fn methods_and_calls_rename_together() {
        let src = "class A { static int twice(int k) { return k * 2; } public static void main(String[] a) { twice(3); java.util.Arrays.sort(a); } }";
        let out = renamed(src);
        assert!(out.contains("static int m0(int v0)"), "{out}");
        assert!(out.contains("m0(3)"), "{out}");
        assert!(out.contains("main(String[] v1)"), "{out}");
        assert!(out.contains(".sort(v1)"), "{out}");
    }

    #[test]
    fn fresh_names_avoid_existing_identifiers() {
        let out =
            renamed("class A { public static void main(String[] v0) { int v1 = 2; int y = v1; } }");
        let tree = parse_str(&out).unwrap();
        let declared: Vec<_> = tree
            .descendants()
            .filter(|n| {
                matches!(
                    n.kind,
                    NodeKind::VariableDeclarationFragment | NodeKind::Parameter
                )
            })
            .map(|n| n.value().unwrap().to_string())
            .collect();
        assert_eq!(declared, ["v2", "v3", "v4"]);
    }

    #[test]
    fn constructors_and_types_keep_their_names() {
        let out = renamed("class S { S(int n) { } void run() { } } class Main { public static void main(String[] a) { new S(1).run(); } }");
        assert!(out.contains("S(int v0)"), "{out}");
        assert!(out.contains("new S(1).m0()"), "{out}");
    }

    #[test]
    fn raw_regions_follow_the_rename() {
        let out = renamed("class A { public static void main(String[] a) { int n = 3; Runnable r = () -> System.out.println(n); } }");
        assert!(out.contains("println(v1)"), "{out}");
    }

    #[test]
    fn shape_is_preserved() {
        let src = "class A { int f; void g(int p) { f = p; } public static void main(String[] a) { new A().g(1); } }";
        let before = parse_str(src).unwrap();
        let after = parse_str(&renamed(src)).unwrap();
        let shape = |t: &AstNode| {
            t.descendants()
                .map(|n| (n.kind, n.children.len()))
                .collect::<Vec<_>>()
        };
        assert_eq!(shape(&before), shape(&after));
    }
}
