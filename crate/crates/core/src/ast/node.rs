use std::fmt;

use serde::{Deserialize, Serialize};

/// Node kinds of the Java subset. Names follow the Eclipse JDT taxonomy so that
/// graph labels read like JDT node types (`MethodDeclaration`, `WhileStatement`).
///
/// Child layouts are fixed per kind; the printer and the transforms rely on them:
///
/// | kind | value | children |
/// |------|-------|----------|
/// | `CompilationUnit` | - | package?, imports*, type declarations* |
/// | `TypeDeclaration` / `EnumDeclaration` | name | Modifier*, TypeParameters?, Extends?, Implements*, members* |
/// | `MethodDeclaration` | name | Modifier*, TypeParameters?, TypeRef? (absent for constructors), Parameter*, Throws?, Block? |
/// | `FieldDeclaration` / `VariableDeclarationStatement` / `VariableDeclarationExpression` | - | Modifier*, TypeRef, VariableDeclarationFragment+ |
/// | `VariableDeclarationFragment` | name | initializer? |
/// | `Parameter` | name | Modifier*, TypeRef |
/// | `IfStatement` | - | condition, then, else? |
/// | `ForStatement` | - | ForInit, condition?, ForUpdate, body |
/// | `EnhancedForStatement` | - | Parameter, iterable, body |
/// | `WhileStatement` | - | condition, body |
/// | `DoStatement` | - | body, condition |
/// | `SwitchStatement` | - | selector, (SwitchCase or statement)* |
/// | `SwitchCase` | `default` or none | case expressions* |
/// | `TryStatement` | - | Block, CatchClause*, finally Block? |
/// | `MethodInvocation` | name | receiver?, ArgumentList |
/// | `ClassInstanceCreation` | - | TypeRef, ArgumentList, AnonymousClassBody? |
/// | `ArrayCreation` | total dimensions | TypeRef, dimension expressions*, ArrayInitializer? |
/// | `FieldAccess` | name | receiver |
/// | `InfixExpression` / `Assignment` | operator | left, right |
/// | `PrefixExpression` / `PostfixExpression` | operator | operand |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeKind {
    CompilationUnit,
    PackageDeclaration,
    ImportDeclaration,
    TypeDeclaration,
    EnumDeclaration,
    Modifier,
    TypeParameters,
    Extends,
    Implements,
    FieldDeclaration,
    Initializer,
    MethodDeclaration,
    Parameter,
    Throws,
    TypeRef,
    Block,
    VariableDeclarationStatement,
    VariableDeclarationExpression,
    VariableDeclarationFragment,
    ExpressionStatement,
    IfStatement,
    ForStatement,
    ForInit,
    ForUpdate,
    EnhancedForStatement,
    WhileStatement,
    DoStatement,
    SwitchStatement,
    SwitchCase,
    BreakStatement,
    ContinueStatement,
    ReturnStatement,
    ThrowStatement,
    TryStatement,
    CatchClause,
    LabeledStatement,
    EmptyStatement,
    StatementOther,
    MethodInvocation,
    ArgumentList,
    ClassInstanceCreation,
    AnonymousClassBody,
    ArrayCreation,
    ArrayInitializer,
    ArrayAccess,
    FieldAccess,
    SimpleName,
    Literal,
    ThisExpression,
    SuperExpression,
    InfixExpression,
    PrefixExpression,
    PostfixExpression,
    Assignment,
    ConditionalExpression,
    CastExpression,
    InstanceofExpression,
    ParenthesizedExpression,
    ExpressionOther,
}

impl NodeKind {
    pub const LOOPS: [NodeKind; 4] = [
        NodeKind::ForStatement,
        NodeKind::EnhancedForStatement,
        NodeKind::WhileStatement,
        NodeKind::DoStatement,
    ];

    pub fn as_str(self) -> &'static str {
        use NodeKind::*;
        match self {
            CompilationUnit => "CompilationUnit",
            PackageDeclaration => "PackageDeclaration",
            ImportDeclaration => "ImportDeclaration",
            TypeDeclaration => "TypeDeclaration",
            EnumDeclaration => "EnumDeclaration",
            Modifier => "Modifier",
            TypeParameters => "TypeParameters",
            Extends => "Extends",
            Implements => "Implements",
            FieldDeclaration => "FieldDeclaration",
            Initializer => "Initializer",
            MethodDeclaration => "MethodDeclaration",
            Parameter => "SingleVariableDeclaration",
            Throws => "Throws",
            TypeRef => "Type",
            Block => "Block",
            VariableDeclarationStatement => "VariableDeclarationStatement",
            VariableDeclarationExpression => "VariableDeclarationExpression",
            VariableDeclarationFragment => "VariableDeclarationFragment",
            ExpressionStatement => "ExpressionStatement",
            IfStatement => "IfStatement",
            ForStatement => "ForStatement",
            ForInit => "ForInit",
            ForUpdate => "ForUpdate",
            EnhancedForStatement => "EnhancedForStatement",
            WhileStatement => "WhileStatement",
            DoStatement => "DoStatement",
            SwitchStatement => "SwitchStatement",
            SwitchCase => "SwitchCase",
            BreakStatement => "BreakStatement",
            ContinueStatement => "ContinueStatement",
            ReturnStatement => "ReturnStatement",
            ThrowStatement => "ThrowStatement",
            TryStatement => "TryStatement",
            CatchClause => "CatchClause",
            LabeledStatement => "LabeledStatement",
            EmptyStatement => "EmptyStatement",
            StatementOther => "StatementOther",
            MethodInvocation => "MethodInvocation",
            ArgumentList => "ArgumentList",
            ClassInstanceCreation => "ClassInstanceCreation",
            AnonymousClassBody => "AnonymousClassDeclaration",
            ArrayCreation => "ArrayCreation",
            ArrayInitializer => "ArrayInitializer",
            ArrayAccess => "ArrayAccess",
            FieldAccess => "FieldAccess",
            SimpleName => "SimpleName",
            Literal => "Literal",
            ThisExpression => "ThisExpression",
            SuperExpression => "SuperExpression",
            InfixExpression => "InfixExpression",
            PrefixExpression => "PrefixExpression",
            PostfixExpression => "PostfixExpression",
            Assignment => "Assignment",
            ConditionalExpression => "ConditionalExpression",
            CastExpression => "CastExpression",
            InstanceofExpression => "InstanceofExpression",
            ParenthesizedExpression => "ParenthesizedExpression",
            ExpressionOther => "ExpressionOther",
        }
    }

    pub fn is_loop(self) -> bool {
        Self::LOOPS.contains(&self)
    }

    /// Statement kinds, following JDT's `Statement` subclasses (blocks and
    /// switch cases included).
    pub fn is_statement(self) -> bool {
        use NodeKind::*;
        matches!(
            self,
            Block
                | VariableDeclarationStatement
                | ExpressionStatement
                | IfStatement
                | ForStatement
                | EnhancedForStatement
                | WhileStatement
                | DoStatement
                | SwitchStatement
                | SwitchCase
                | BreakStatement
                | ContinueStatement
                | ReturnStatement
                | ThrowStatement
                | TryStatement
                | LabeledStatement
                | EmptyStatement
                | StatementOther
        )
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inclusive line range of a node in its source text (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Span {
    pub start_line: u32,
    pub end_line: u32,
}

impl Span {
    pub fn new(start_line: u32, end_line: u32) -> Self {
        Span {
            start_line,
            end_line,
        }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start_line <= other.start_line && other.end_line <= self.end_line
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AstNode {
    pub kind: NodeKind,
    pub value: Option<String>,
    pub children: Vec<AstNode>,
    pub span: Span,
}

impl AstNode {
    pub fn new(kind: NodeKind, span: Span) -> Self {
        AstNode {
            kind,
            value: None,
            children: Vec::new(),
            span,
        }
    }

    pub fn with_value(mut self, value: impl Into<String>) -> Self {
        self.value = Some(value.into());
        self
    }

    pub fn with_children(mut self, children: Vec<AstNode>) -> Self {
        self.children = children;
        self
    }

    pub fn value(&self) -> Option<&str> {
        self.value.as_deref()
    }

    pub fn child_of_kind(&self, kind: NodeKind) -> Option<&AstNode> {
        self.children.iter().find(|c| c.kind == kind)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(AstNode::node_count).sum::<usize>()
    }

    /// Preorder iterator over this node and all descendants.
    pub fn descendants(&self) -> Descendants<'_> {
        Descendants { stack: vec![self] }
    }

    /// Number of parameters, for method declarations.
    pub fn arity(&self) -> usize {
        self.children
            .iter()
            .filter(|c| c.kind == NodeKind::Parameter)
            .count()
    }

    /// Method declarations that belong to type bodies (top-level or nested
    /// classes), excluding methods of anonymous classes inside method bodies.
    pub fn declared_methods(&self) -> Vec<&AstNode> {
        let mut out = Vec::new();
        collect_declared_methods(self, &mut out);
        out
    }

    /// Copy of the tree with every span zeroed, for structural comparison.
    pub fn without_spans(&self) -> AstNode {
        AstNode {
            kind: self.kind,
            value: self.value.clone(),
            children: self.children.iter().map(AstNode::without_spans).collect(),
            span: Span::default(),
        }
    }

    /// Indented debug dump, one node per line: kind, value, span.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        dump_into(self, 0, &mut out);
        out
    }
}

fn collect_declared_methods<'a>(node: &'a AstNode, out: &mut Vec<&'a AstNode>) {
    match node.kind {
        NodeKind::MethodDeclaration => out.push(node),
        NodeKind::CompilationUnit | NodeKind::TypeDeclaration | NodeKind::EnumDeclaration => {
            for child in &node.children {
                collect_declared_methods(child, out);
            }
        }
        _ => {}
    }
}

fn dump_into(node: &AstNode, depth: usize, out: &mut String) {
    use std::fmt::Write;
    let _ = write!(out, "{:indent$}{}", "", node.kind, indent = depth * 2);
    if let Some(v) = &node.value {
        let _ = write!(out, " {:?}", v);
    }
    let _ = writeln!(out, " [{}-{}]", node.span.start_line, node.span.end_line);
    for child in &node.children {
        dump_into(child, depth + 1, out);
    }
}

pub struct Descendants<'a> {
    stack: Vec<&'a AstNode>,
}

impl<'a> Iterator for Descendants<'a> {
    type Item = &'a AstNode;

    fn next(&mut self) -> Option<&'a AstNode> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}
