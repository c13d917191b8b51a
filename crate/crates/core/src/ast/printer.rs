//! Source printer for [`AstNode`] trees. Output re-parses to the same tree
//! (spans aside); it is not meant to preserve the original formatting.

use super::node::{AstNode, NodeKind};

const INDENT: &str = "    ";

pub fn print(root: &AstNode) -> String {
    let mut p = Printer { out: String::new() };
    match root.kind {
        NodeKind::CompilationUnit => p.compilation_unit(root),
        k if k.is_statement() => p.statement(root, 0),
        NodeKind::TypeDeclaration
        | NodeKind::EnumDeclaration
        | NodeKind::MethodDeclaration
        | NodeKind::FieldDeclaration => p.member(root, 0),
        _ => {
            let e = expr(root);
            p.out.push_str(&e);
        }
    }
    p.out
}

struct Printer {
    out: String,
}

fn value(node: &AstNode) -> &str {
    node.value.as_deref().unwrap_or("")
}

fn modifiers(node: &AstNode) -> String {
    node.children
        .iter()
        .filter(|c| c.kind == NodeKind::Modifier)
        .map(value)
        .filter(|v| *v != "interface" && *v != "@interface")
        .map(|v| format!("{v} "))
        .collect()
}

impl Printer {
    fn line(&mut self, indent: usize, text: &str) {
        for _ in 0..indent {
            self.out.push_str(INDENT);
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn compilation_unit(&mut self, unit: &AstNode) {
        let mut had_header = false;
        for child in &unit.children {
            match child.kind {
                NodeKind::PackageDeclaration => {
                    self.line(0, &format!("package {};", value(child)));
                    had_header = true;
                }
                NodeKind::ImportDeclaration => {
                    self.line(0, &format!("import {};", value(child)));
                    had_header = true;
                }
                _ => {
                    if had_header {
                        self.out.push('\n');
                        had_header = false;
                    }
                    self.member(child, 0);
                }
            }
        }
    }

    fn member(&mut self, node: &AstNode, indent: usize) {
        match node.kind {
            NodeKind::TypeDeclaration | NodeKind::EnumDeclaration => {
                self.type_declaration(node, indent)
            }
            NodeKind::MethodDeclaration => self.method(node, indent),
            NodeKind::FieldDeclaration => {
                let text = format!("{}{};", modifiers(node), declaration_body(node));
                self.line(indent, &text);
            }
            NodeKind::Initializer => {
                let mods = modifiers(node);
                let block = node
                    .child_of_kind(NodeKind::Block)
                    .expect("initializer has a block");
                self.block(block, indent, &mods, "");
            }
            NodeKind::StatementOther => self.line(indent, value(node)),
            _ => self.statement(node, indent),
        }
    }

    fn type_declaration(&mut self, node: &AstNode, indent: usize) {
        let is_marker = |v: &str| {
            node.children
                .iter()
                .any(|c| c.kind == NodeKind::Modifier && value(c) == v)
        };
        let keyword = if node.kind == NodeKind::EnumDeclaration {
            "enum"
        } else if is_marker("@interface") {
            "@interface"
        } else if is_marker("interface") {
            "interface"
        } else {
            "class"
        };
        let mut head = format!("{}{keyword} {}", modifiers(node), value(node));
        if let Some(tp) = node.child_of_kind(NodeKind::TypeParameters) {
            head.push_str(value(tp));
        }
        let extends: Vec<_> = node
            .children
            .iter()
            .filter(|c| c.kind == NodeKind::Extends)
            .map(value)
            .collect();
        if !extends.is_empty() {
            head.push_str(&format!(" extends {}", extends.join(", ")));
        }
        let implements: Vec<_> = node
            .children
            .iter()
            .filter(|c| c.kind == NodeKind::Implements)
            .map(value)
            .collect();
        if !implements.is_empty() {
            head.push_str(&format!(" implements {}", implements.join(", ")));
        }
        head.push_str(" {");
        self.line(indent, &head);
        let mut members = node.children.iter().filter(|c| {
            !matches!(
                c.kind,
                NodeKind::Modifier
                    | NodeKind::TypeParameters
                    | NodeKind::Extends
                    | NodeKind::Implements
            )
        });
        if node.kind == NodeKind::EnumDeclaration {
            let mut peek = members.clone();
            if let Some(first) = peek.next().filter(|c| c.kind == NodeKind::StatementOther) {
                self.line(indent + 1, &format!("{};", value(first)));
                members.next();
            }
        }
        for member in members {
            self.member(member, indent + 1);
        }
        self.line(indent, "}");
    }

    fn method(&mut self, node: &AstNode, indent: usize) {
        let mut head = modifiers(node);
        if let Some(tp) = node.child_of_kind(NodeKind::TypeParameters) {
            head.push_str(value(tp));
            head.push(' ');
        }
        if let Some(ret) = node.child_of_kind(NodeKind::TypeRef) {
            head.push_str(value(ret));
            head.push(' ');
        }
        head.push_str(value(node));
        let params: Vec<String> = node
            .children
            .iter()
            .filter(|c| c.kind == NodeKind::Parameter)
            .map(parameter)
            .collect();
        head.push_str(&format!("({})", params.join(", ")));
        if let Some(throws) = node.child_of_kind(NodeKind::Throws) {
            let types: Vec<_> = throws.children.iter().map(value).collect();
            head.push_str(&format!(" throws {}", types.join(", ")));
        }
        match node.child_of_kind(NodeKind::Block) {
            Some(body) => self.block(body, indent, &format!("{head} "), ""),
            None => self.line(indent, &format!("{head};")),
        }
    }

    /// Prints `prefix{`, the statements, and `}suffix`.
    fn block(&mut self, block: &AstNode, indent: usize, prefix: &str, suffix: &str) {
        self.line(indent, &format!("{prefix}{{"));
        for stmt in &block.children {
            self.statement(stmt, indent + 1);
        }
        self.line(indent, &format!("}}{suffix}"));
    }

    /// Body of a compound statement: blocks open on the header line, other
    /// statements follow on the next line, one level deeper.
    fn body(&mut self, head: String, body: &AstNode, indent: usize) {
        if body.kind == NodeKind::Block {
            self.block(body, indent, &format!("{head} "), "");
        } else {
            self.line(indent, &head);
            self.statement(body, indent + 1);
        }
    }

    fn statement(&mut self, node: &AstNode, indent: usize) {
        let c = &node.children;
        match node.kind {
            NodeKind::Block => self.block(node, indent, "", ""),
            NodeKind::EmptyStatement => self.line(indent, ";"),
            NodeKind::StatementOther => self.line(indent, value(node)),
            NodeKind::ExpressionStatement => self.line(indent, &format!("{};", expr(&c[0]))),
            NodeKind::VariableDeclarationStatement => self.line(
                indent,
                &format!("{}{};", modifiers(node), declaration_body(node)),
            ),
            NodeKind::ReturnStatement => match c.first() {
                Some(e) => self.line(indent, &format!("return {};", expr(e))),
                None => self.line(indent, "return;"),
            },
            NodeKind::ThrowStatement => self.line(indent, &format!("throw {};", expr(&c[0]))),
            NodeKind::BreakStatement | NodeKind::ContinueStatement => {
                let kw = if node.kind == NodeKind::BreakStatement {
                    "break"
                } else {
                    "continue"
                };
                match &node.value {
                    Some(label) => self.line(indent, &format!("{kw} {label};")),
                    None => self.line(indent, &format!("{kw};")),
                }
            }
            NodeKind::IfStatement => self.if_statement(node, indent, ""),
            NodeKind::WhileStatement => {
                self.body(format!("while ({})", expr(&c[0])), &c[1], indent)
            }
            NodeKind::DoStatement => {
                let cond = expr(&c[1]);
                if c[0].kind == NodeKind::Block {
                    self.block(&c[0], indent, "do ", &format!(" while ({cond});"));
                } else {
                    self.line(indent, "do");
                    self.statement(&c[0], indent + 1);
                    self.line(indent, &format!("while ({cond});"));
                }
            }
            NodeKind::ForStatement => {
                let init = &c[0];
                let init_text = init
                    .children
                    .iter()
                    .map(|i| {
                        if i.kind == NodeKind::VariableDeclarationExpression {
                            format!("{}{}", modifiers(i), declaration_body(i))
                        } else {
                            expr(i)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                let (cond, update, body) = if c.len() == 4 {
                    (expr(&c[1]), &c[2], &c[3])
                } else {
                    (String::new(), &c[1], &c[2])
                };
                let update_text = update
                    .children
                    .iter()
                    .map(expr)
                    .collect::<Vec<_>>()
                    .join(", ");
                let cond_part = if cond.is_empty() {
                    ";".to_string()
                } else {
                    format!(" {cond};")
                };
                let update_part = if update_text.is_empty() {
                    String::new()
                } else {
                    format!(" {update_text}")
                };
                self.body(
                    format!("for ({init_text};{cond_part}{update_part})"),
                    body,
                    indent,
                );
            }
            NodeKind::EnhancedForStatement => {
                let head = format!("for ({} : {})", parameter(&c[0]), expr(&c[1]));
                self.body(head, &c[2], indent);
            }
            NodeKind::SwitchStatement => {
                self.line(indent, &format!("switch ({}) {{", expr(&c[0])));
                for child in &c[1..] {
                    if child.kind == NodeKind::SwitchCase {
                        if child.value() == Some("default") {
                            self.line(indent + 1, "default:");
                        } else {
                            let labels: Vec<_> = child.children.iter().map(expr).collect();
                            self.line(indent + 1, &format!("case {}:", labels.join(", ")));
                        }
                    } else {
                        self.statement(child, indent + 2);
                    }
                }
                self.line(indent, "}");
            }
            NodeKind::TryStatement => {
                self.line(indent, "try {");
                for stmt in &c[0].children {
                    self.statement(stmt, indent + 1);
                }
                for part in &c[1..] {
                    if part.kind == NodeKind::CatchClause {
                        self.line(
                            indent,
                            &format!("}} catch ({}) {{", parameter(&part.children[0])),
                        );
                        for stmt in &part.children[1].children {
                            self.statement(stmt, indent + 1);
                        }
                    } else {
                        self.line(indent, "} finally {");
                        for stmt in &part.children {
                            self.statement(stmt, indent + 1);
                        }
                    }
                }
                self.line(indent, "}");
            }
            NodeKind::LabeledStatement => {
                self.line(indent, &format!("{}:", value(node)));
                self.statement(&c[0], indent);
            }
            NodeKind::SwitchCase => self.line(indent, "case:"),
            _ => self.member(node, indent),
        }
    }

    fn if_statement(&mut self, node: &AstNode, indent: usize, prefix: &str) {
        let c = &node.children;
        let head = format!("{prefix}if ({})", expr(&c[0]));
        let Some(otherwise) = c.get(2) else {
            self.body(head, &c[1], indent);
            return;
        };
        if c[1].kind == NodeKind::Block {
            self.block(&c[1], indent, &format!("{head} "), "");
        } else {
            self.line(indent, &head);
            self.statement(&c[1], indent + 1);
        }
        match otherwise.kind {
            NodeKind::IfStatement => self.if_statement(otherwise, indent, "else "),
            NodeKind::Block => self.block(otherwise, indent, "else ", ""),
            _ => {
                self.line(indent, "else");
                self.statement(otherwise, indent + 1);
            }
        }
    }
}

fn parameter(node: &AstNode) -> String {
    let ty = node
        .child_of_kind(NodeKind::TypeRef)
        .map(value)
        .unwrap_or("");
    format!("{}{ty} {}", modifiers(node), value(node))
}

/// `Type a = x, b` for field, local, and for-init declarations.
fn declaration_body(node: &AstNode) -> String {
    let ty = node
        .child_of_kind(NodeKind::TypeRef)
        .map(value)
        .unwrap_or("");
    let frags: Vec<String> = node
        .children
        .iter()
        .filter(|c| c.kind == NodeKind::VariableDeclarationFragment)
        .map(|f| match f.children.first() {
            Some(init) => format!("{} = {}", value(f), expr(init)),
            None => value(f).to_string(),
        })
        .collect();
    format!("{ty} {}", frags.join(", "))
}

fn args(list: &AstNode) -> String {
    list.children
        .iter()
        .map(expr)
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn expr(node: &AstNode) -> String {
    let c = &node.children;
    match node.kind {
        NodeKind::Literal
        | NodeKind::SimpleName
        | NodeKind::ExpressionOther
        | NodeKind::StatementOther => value(node).to_string(),
        NodeKind::ThisExpression => "this".to_string(),
        NodeKind::SuperExpression => "super".to_string(),
        NodeKind::MethodInvocation => match c.len() {
            2 => format!("{}.{}({})", expr(&c[0]), value(node), args(&c[1])),
            _ => format!("{}({})", value(node), args(&c[0])),
        },
        NodeKind::FieldAccess => format!("{}.{}", expr(&c[0]), value(node)),
        NodeKind::ArrayAccess => format!("{}[{}]", expr(&c[0]), expr(&c[1])),
        NodeKind::ClassInstanceCreation => {
            let mut s = format!("new {}({})", value(&c[0]), args(&c[1]));
            if let Some(body) = c.get(2) {
                let mut p = Printer { out: String::new() };
                for member in &body.children {
                    p.member(member, 1);
                }
                s.push_str(" {\n");
                s.push_str(&p.out);
                s.push('}');
            }
            s
        }
        NodeKind::ArrayCreation => {
            let dims: usize = value(node).parse().unwrap_or(1);
            let mut s = format!("new {}", value(&c[0]));
            let mut used = 0;
            let mut init = None;
            for child in &c[1..] {
                if child.kind == NodeKind::ArrayInitializer {
                    init = Some(child);
                } else {
                    s.push_str(&format!("[{}]", expr(child)));
                    used += 1;
                }
            }
            for _ in used..dims {
                s.push_str("[]");
            }
            if let Some(init) = init {
                s.push_str(&expr(init));
            }
            s
        }
        NodeKind::ArrayInitializer => {
            format!("{{{}}}", c.iter().map(expr).collect::<Vec<_>>().join(", "))
        }
        NodeKind::InfixExpression | NodeKind::Assignment => {
            format!("{} {} {}", expr(&c[0]), value(node), expr(&c[1]))
        }
        NodeKind::PrefixExpression => {
            let op = value(node);
            let operand = expr(&c[0]);
            let clash =
                matches!(op.chars().last(), Some(ch @ ('+' | '-')) if operand.starts_with(ch));
            if clash {
                format!("{op} {operand}")
            } else {
                format!("{op}{operand}")
            }
        }
        NodeKind::PostfixExpression => format!("{}{}", expr(&c[0]), value(node)),
        NodeKind::ConditionalExpression => {
            format!("{} ? {} : {}", expr(&c[0]), expr(&c[1]), expr(&c[2]))
        }
        NodeKind::CastExpression => format!("({}) {}", value(&c[0]), expr(&c[1])),
        NodeKind::InstanceofExpression => format!("{} instanceof {}", expr(&c[0]), value(&c[1])),
        NodeKind::ParenthesizedExpression => format!("({})", expr(&c[0])),
        NodeKind::TypeRef => value(node).to_string(),
        _ => String::new(),
    }
}
