//! Recursive-descent parser for the Java subset used by contest solutions.
//!
//! Top-level declarations are parsed strictly: a file that cannot be split
//! into package/import/type declarations is a [`ParseError`]. Inside type
//! bodies and blocks, any member or statement the subset does not cover is
//! kept as a `StatementOther` leaf holding the raw token text, and parsing
//! resumes at the next statement boundary.

use super::lexer::{tokenize, Token, TokenKind};
use super::node::{AstNode, NodeKind, Span};
use super::ParseError;

type PResult<T> = Result<T, ParseError>;

const PRIMITIVES: &[&str] = &[
    "int", "long", "short", "byte", "char", "boolean", "float", "double", "void",
];

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
];

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

const ASSIGN_OPS: &[&str] = &[
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

/// Parses a whole compilation unit.
pub fn parse_compilation_unit(src: &str) -> PResult<AstNode> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        toks: &tokens,
        pos: 0,
    };
    parser.compilation_unit()
}

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
}

fn is_keyword(text: &str) -> bool {
    KEYWORDS.contains(&text)
}

impl<'t> Parser<'t> {
    // ----- token helpers -------------------------------------------------

    fn peek(&self) -> &'t Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn peek_at(&self, n: usize) -> &'t Token {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)]
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is(text)
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn advance(&mut self) -> &'t Token {
        let tok = self.peek();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, text: &str) -> PResult<&'t Token> {
        if self.at(text) {
            Ok(self.advance())
        } else {
            Err(self.error(format!("expected `{text}`")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let tok = self.peek();
        let found = if tok.kind == TokenKind::Eof {
            "end of file".to_string()
        } else {
            format!("`{}`", tok.text)
        };
        ParseError::new(tok.line, tok.col, format!("{}, found {found}", msg.into()))
    }

    fn is_ident(tok: &Token) -> bool {
        tok.kind == TokenKind::Ident && !is_keyword(&tok.text)
    }

    fn ident(&mut self) -> PResult<String> {
        if Self::is_ident(self.peek()) {
            Ok(self.advance().text.clone())
        } else {
            Err(self.error("expected identifier"))
        }
    }

    fn line(&self) -> u32 {
        self.peek().line
    }

    fn prev_line(&self) -> u32 {
        self.toks[self.pos.saturating_sub(1)].line
    }

    fn span_from(&self, start_line: u32) -> Span {
        Span::new(start_line, self.prev_line().max(start_line))
    }

    fn node(&self, kind: NodeKind, start_line: u32) -> AstNode {
        AstNode::new(kind, self.span_from(start_line))
    }

    /// Raw source text of tokens `[from, self.pos)`, preserving adjacency.
    fn raw_text(&self, from: usize) -> String {
        let mut out = String::new();
        for (i, tok) in self.toks[from..self.pos].iter().enumerate() {
            if i > 0 && self.toks[from + i - 1].end != tok.start {
                out.push(' ');
            }
            out.push_str(&tok.text);
        }
        out
    }

    fn skip_balanced(&mut self, open: &str, close: &str) -> PResult<()> {
        self.expect(open)?;
        let mut depth = 1;
        while depth > 0 {
            if self.at_eof() {
                return Err(self.error(format!("unbalanced `{open}`")));
            }
            let tok = self.advance();
            if tok.is(open) {
                depth += 1;
            } else if tok.is(close) {
                depth -= 1;
            }
        }
        Ok(())
    }

    // ----- top level -----------------------------------------------------

    fn compilation_unit(&mut self) -> PResult<AstNode> {
        let start = self.line();
        let mut children = Vec::new();
        if self.at("package") {
            let line = self.line();
            self.advance();
            let name = self.qualified_name()?;
            self.expect(";")?;
            children.push(
                self.node(NodeKind::PackageDeclaration, line)
                    .with_value(name),
            );
        }
        while self.at("import") {
            let line = self.line();
            self.advance();
            let mut name = String::new();
            if self.eat("static") {
                name.push_str("static ");
            }
            name.push_str(&self.qualified_name()?);
            if self.eat(".") {
                self.expect("*")?;
                name.push_str(".*");
            }
            self.expect(";")?;
            children.push(
                self.node(NodeKind::ImportDeclaration, line)
                    .with_value(name),
            );
        }
        let mut declarations = 0;
        while !self.at_eof() {
            if self.eat(";") {
                continue;
            }
            let line = self.line();
            let mods = self.modifiers()?;
            children.push(self.type_declaration(mods, line)?);
            declarations += 1;
        }
        if declarations == 0 {
            return Err(self.error("expected a type declaration"));
        }
        Ok(AstNode::new(
            NodeKind::CompilationUnit,
            Span::new(start, self.prev_line().max(start)),
        )
        .with_children(children))
    }

    fn qualified_name(&mut self) -> PResult<String> {
        let mut name = self.ident()?;
        while self.at(".") && Self::is_ident(self.peek_at(1)) {
            self.advance();
            name.push('.');
            name.push_str(&self.ident()?);
        }
        Ok(name)
    }

    fn modifiers(&mut self) -> PResult<Vec<AstNode>> {
        let mut mods = Vec::new();
        loop {
            let line = self.line();
            if self.at("@") && !self.peek_at(1).is("interface") {
                self.advance();
                let name = self.qualified_name()?;
                if self.at("(") {
                    self.skip_balanced("(", ")")?;
                }
                mods.push(
                    self.node(NodeKind::Modifier, line)
                        .with_value(format!("@{name}")),
                );
            } else if MODIFIERS.contains(&self.peek().text.as_str())
                && self.peek().kind == TokenKind::Ident
                // `default:` inside a switch is a label, not a modifier
                && !(self.at("default") && (self.peek_at(1).is(":") || self.peek_at(1).is("->")))
            {
                let text = self.advance().text.clone();
                mods.push(self.node(NodeKind::Modifier, line).with_value(text));
            } else if self.at("non") && self.peek_at(1).is("-") && self.peek_at(2).is("sealed") {
                self.pos += 3;
                mods.push(self.node(NodeKind::Modifier, line).with_value("non-sealed"));
            } else {
                return Ok(mods);
            }
        }
    }

    fn type_parameters(&mut self) -> PResult<Option<AstNode>> {
        if !self.at("<") {
            return Ok(None);
        }
        let line = self.line();
        let from = self.pos;
        self.skip_balanced("<", ">")?;
        let raw = self.raw_text(from);
        Ok(Some(
            self.node(NodeKind::TypeParameters, line).with_value(raw),
        ))
    }

    fn type_declaration(&mut self, mut children: Vec<AstNode>, start: u32) -> PResult<AstNode> {
        let kind = if self.eat("class") {
            NodeKind::TypeDeclaration
        } else if self.at("interface") || (self.at("@") && self.peek_at(1).is("interface")) {
            let line = self.line();
            if self.eat("@") {
                self.advance();
                children.push(self.node(NodeKind::Modifier, line).with_value("@interface"));
            } else {
                self.advance();
                children.push(self.node(NodeKind::Modifier, line).with_value("interface"));
            }
            NodeKind::TypeDeclaration
        } else if self.eat("enum") {
            NodeKind::EnumDeclaration
        } else {
            return Err(self.error("expected `class`, `interface` or `enum`"));
        };
        let name = self.ident()?;
        children.extend(self.type_parameters()?);
        if self.at("extends") {
            self.advance();
            loop {
                let line = self.line();
                let ty = self.type_text()?;
                children.push(self.node(NodeKind::Extends, line).with_value(ty));
                if !self.eat(",") {
                    break;
                }
            }
        }
        if self.at("implements") {
            self.advance();
            loop {
                let line = self.line();
                let ty = self.type_text()?;
                children.push(self.node(NodeKind::Implements, line).with_value(ty));
                if !self.eat(",") {
                    break;
                }
            }
        }
        if self.eat("permits") {
            loop {
                self.type_text()?;
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect("{")?;
        if kind == NodeKind::EnumDeclaration {
            children.extend(self.enum_constants());
        }
        children.extend(self.class_body_members()?);
        Ok(self
            .node(kind, start)
            .with_value(name)
            .with_children(children))
    }

    /// Enum constant list, kept raw up to the `;` or closing brace.
    fn enum_constants(&mut self) -> Option<AstNode> {
        let line = self.line();
        let from = self.pos;
        let mut depth = 0i32;
        while !self.at_eof() {
            let tok = self.peek();
            if depth == 0 && (tok.is(";") || tok.is("}")) {
                break;
            }
            if tok.is("(") || tok.is("{") || tok.is("[") {
                depth += 1;
            } else if tok.is(")") || tok.is("}") || tok.is("]") {
                depth -= 1;
            }
            self.advance();
        }
        let raw = self.raw_text(from);
        self.eat(";");
        if raw.is_empty() {
            None
        } else {
            Some(self.node(NodeKind::StatementOther, line).with_value(raw))
        }
    }

    /// Members up to and including the closing `}`.
    fn class_body_members(&mut self) -> PResult<Vec<AstNode>> {
        let mut members = Vec::new();
        while !self.at("}") {
            if self.at_eof() {
                return Err(self.error("expected `}`"));
            }
            let start = self.pos;
            match self.member() {
                Ok(Some(member)) => members.push(member),
                Ok(None) => {}
                Err(_) => {
                    self.pos = start;
                    members.push(self.recover());
                }
            }
        }
        self.expect("}")?;
        Ok(members)
    }

    fn member(&mut self) -> PResult<Option<AstNode>> {
        if self.eat(";") {
            return Ok(None);
        }
        let start = self.line();
        let mut children = self.modifiers()?;
        if self.at("{") {
            children.push(self.block()?);
            return Ok(Some(
                self.node(NodeKind::Initializer, start)
                    .with_children(children),
            ));
        }
        if self.at("class")
            || self.at("interface")
            || self.at("enum")
            || (self.at("@") && self.peek_at(1).is("interface"))
        {
            return self.type_declaration(children, start).map(Some);
        }
        children.extend(self.type_parameters()?);
        // constructor: Name(
        if Self::is_ident(self.peek()) && self.peek_at(1).is("(") {
            let name = self.ident()?;
            return self.method_rest(name, children, start).map(Some);
        }
        let line = self.line();
        let ty = self.type_text()?;
        let type_ref = self.node(NodeKind::TypeRef, line).with_value(ty);
        if Self::is_ident(self.peek()) && self.peek_at(1).is("(") {
            let name = self.ident()?;
            children.push(type_ref);
            return self.method_rest(name, children, start).map(Some);
        }
        children.push(type_ref);
        self.fragments(&mut children)?;
        self.expect(";")?;
        Ok(Some(
            self.node(NodeKind::FieldDeclaration, start)
                .with_children(children),
        ))
    }

    fn method_rest(
        &mut self,
        name: String,
        mut children: Vec<AstNode>,
        start: u32,
    ) -> PResult<AstNode> {
        self.expect("(")?;
        if !self.at(")") {
            loop {
                children.push(self.parameter()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        while self.at("[") && self.peek_at(1).is("]") {
            self.pos += 2;
        }
        if self.at("throws") {
            let line = self.line();
            self.advance();
            let mut types = Vec::new();
            loop {
                let tl = self.line();
                let ty = self.type_text()?;
                types.push(self.node(NodeKind::TypeRef, tl).with_value(ty));
                if !self.eat(",") {
                    break;
                }
            }
            children.push(self.node(NodeKind::Throws, line).with_children(types));
        }
        if self.at("default") {
            // annotation element default value
            return Err(self.error("annotation defaults are not supported"));
        }
        if !self.eat(";") {
            children.push(self.block()?);
        }
        Ok(self
            .node(NodeKind::MethodDeclaration, start)
            .with_value(name)
            .with_children(children))
    }

    fn parameter(&mut self) -> PResult<AstNode> {
        let start = self.line();
        let mut children = self.modifiers()?;
        let line = self.line();
        let mut ty = self.type_text()?;
        if self.eat("...") {
            ty.push_str("...");
        }
        let name = self.ident()?;
        while self.at("[") && self.peek_at(1).is("]") {
            self.pos += 2;
            ty.push_str("[]");
        }
        children.push(AstNode::new(NodeKind::TypeRef, Span::new(line, line)).with_value(ty));
        Ok(self
            .node(NodeKind::Parameter, start)
            .with_value(name)
            .with_children(children))
    }

    /// `name[] = init, name2 ...`; trailing C-style dimensions are folded into
    /// the declared type (the last `TypeRef` in `children`).
    fn fragments(&mut self, children: &mut Vec<AstNode>) -> PResult<()> {
        loop {
            let line = self.line();
            let name = self.ident()?;
            let mut dims = 0;
            while self.at("[") && self.peek_at(1).is("]") {
                self.pos += 2;
                dims += 1;
            }
            if dims > 0 {
                if let Some(ty) = children
                    .iter_mut()
                    .rev()
                    .find(|c| c.kind == NodeKind::TypeRef)
                {
                    let v = ty.value.get_or_insert_with(String::new);
                    v.push_str(&"[]".repeat(dims));
                }
            }
            let mut frag_children = Vec::new();
            if self.eat("=") {
                frag_children.push(self.variable_initializer()?);
            }
            children.push(
                self.node(NodeKind::VariableDeclarationFragment, line)
                    .with_value(name)
                    .with_children(frag_children),
            );
            if !self.eat(",") {
                return Ok(());
            }
        }
    }

    fn variable_initializer(&mut self) -> PResult<AstNode> {
        if self.at("{") {
            self.array_initializer()
        } else {
            self.expression()
        }
    }

    fn array_initializer(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("{")?;
        let mut items = Vec::new();
        while !self.at("}") {
            items.push(self.variable_initializer()?);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("}")?;
        Ok(self
            .node(NodeKind::ArrayInitializer, start)
            .with_children(items))
    }

    // ----- types ---------------------------------------------------------

    /// Parses a type and returns its normalized text, e.g. `Map<Integer,List<int[]>>[]`.
    fn type_text(&mut self) -> PResult<String> {
        let mut text = String::new();
        while self.at("@") {
            self.advance();
            self.qualified_name()?;
            if self.at("(") {
                self.skip_balanced("(", ")")?;
            }
        }
        let tok = self.peek();
        if tok.kind == TokenKind::Ident && PRIMITIVES.contains(&tok.text.as_str()) {
            text.push_str(&self.advance().text);
        } else {
            text.push_str(&self.ident()?);
            self.type_arguments(&mut text)?;
            while self.at(".") && Self::is_ident(self.peek_at(1)) {
                self.advance();
                text.push('.');
                text.push_str(&self.ident()?);
                self.type_arguments(&mut text)?;
            }
        }
        while self.at("[") && self.peek_at(1).is("]") {
            self.pos += 2;
            text.push_str("[]");
        }
        Ok(text)
    }

    fn type_arguments(&mut self, text: &mut String) -> PResult<()> {
        if !self.at("<") {
            return Ok(());
        }
        self.advance();
        text.push('<');
        if self.eat(">") {
            text.push('>');
            return Ok(());
        }
        loop {
            if self.eat("?") {
                text.push('?');
                if self.at("extends") || self.at("super") {
                    let bound = self.advance().text.clone();
                    text.push(' ');
                    text.push_str(&bound);
                    text.push(' ');
                    text.push_str(&self.type_text()?);
                }
            } else {
                text.push_str(&self.type_text()?);
            }
            if self.eat(",") {
                text.push(',');
            } else {
                break;
            }
        }
        self.expect(">")?;
        text.push('>');
        Ok(())
    }

    /// Speculatively parses `modifiers Type name` followed by one of `follow`.
    /// Restores the position and returns `None` when the tokens do not form a
    /// declaration head.
    fn declaration_head(&mut self, follow: &[&str]) -> Option<(Vec<AstNode>, AstNode)> {
        let save = self.pos;
        let mods = match self.modifiers() {
            Ok(m) => m,
            Err(_) => {
                self.pos = save;
                return None;
            }
        };
        let line = self.line();
        match self.type_text() {
            Ok(ty)
                if Self::is_ident(self.peek()) && follow.iter().any(|f| self.peek_at(1).is(f)) =>
            {
                Some((
                    mods,
                    AstNode::new(NodeKind::TypeRef, Span::new(line, line)).with_value(ty),
                ))
            }
            _ => {
                self.pos = save;
                None
            }
        }
    }

    // ----- statements ----------------------------------------------------

    fn block(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.at("}") {
            if self.at_eof() {
                return Err(self.error("expected `}`"));
            }
            stmts.push(self.contained_statement());
        }
        self.expect("}")?;
        Ok(self.node(NodeKind::Block, start).with_children(stmts))
    }

    fn contained_statement(&mut self) -> AstNode {
        let start = self.pos;
        match self.statement() {
            Ok(stmt) => stmt,
            Err(_) => {
                self.pos = start;
                self.recover()
            }
        }
    }

    /// Skips one statement-like token run and returns it as `StatementOther`.
    /// Stops after a top-level `;`, after a top-level `{...}` that is not
    /// followed by an expression continuation, or before an enclosing `}`.
    fn recover(&mut self) -> AstNode {
        let line = self.line();
        let from = self.pos;
        let mut depth = 0i32;
        loop {
            let tok = self.peek();
            if tok.kind == TokenKind::Eof || (depth == 0 && tok.is("}")) {
                break;
            }
            self.advance();
            if tok.is("(") || tok.is("[") || tok.is("{") {
                depth += 1;
            } else if (tok.is(")") || tok.is("]") || tok.is("}")) && depth > 0 {
                depth -= 1;
                if depth == 0 && tok.is("}") {
                    let next = self.peek();
                    if !(next.is(";") || next.is(")") || next.is(",") || next.is(".")) {
                        break;
                    }
                }
            } else if depth == 0 && tok.is(";") {
                break;
            }
        }
        if self.pos == from && !self.at_eof() && !self.at("}") {
            self.advance();
        }
        let raw = self.raw_text(from);
        self.node(NodeKind::StatementOther, line).with_value(raw)
    }

    fn statement(&mut self) -> PResult<AstNode> {
        let start = self.line();
        let tok = self.peek();
        if tok.kind == TokenKind::Ident {
            match tok.text.as_str() {
                "if" => return self.if_statement(),
                "for" => return self.for_statement(),
                "while" => {
                    self.advance();
                    let cond = self.paren_expression()?;
                    let body = self.statement()?;
                    return Ok(self
                        .node(NodeKind::WhileStatement, start)
                        .with_children(vec![cond, body]));
                }
                "do" => {
                    self.advance();
                    let body = self.statement()?;
                    self.expect("while")?;
                    let cond = self.paren_expression()?;
                    self.expect(";")?;
                    return Ok(self
                        .node(NodeKind::DoStatement, start)
                        .with_children(vec![body, cond]));
                }
                "switch" => return self.switch_statement(),
                "break" | "continue" => {
                    let kind = if tok.text == "break" {
                        NodeKind::BreakStatement
                    } else {
                        NodeKind::ContinueStatement
                    };
                    self.advance();
                    let label = if Self::is_ident(self.peek()) {
                        Some(self.ident()?)
                    } else {
                        None
                    };
                    self.expect(";")?;
                    let mut node = self.node(kind, start);
                    node.value = label;
                    return Ok(node);
                }
                "return" => {
                    self.advance();
                    let mut children = Vec::new();
                    if !self.at(";") {
                        children.push(self.expression()?);
                    }
                    self.expect(";")?;
                    return Ok(self
                        .node(NodeKind::ReturnStatement, start)
                        .with_children(children));
                }
                "throw" => {
                    self.advance();
                    let e = self.expression()?;
                    self.expect(";")?;
                    return Ok(self
                        .node(NodeKind::ThrowStatement, start)
                        .with_children(vec![e]));
                }
                "try" => return self.try_statement(),
                "synchronized" | "assert" | "class" | "interface" | "enum" | "record" | "yield"
                | "else" | "case" => {
                    return Err(self.error("statement outside the supported subset"));
                }
                _ => {}
            }
            if Self::is_ident(tok) && self.peek_at(1).is(":") {
                let label = self.ident()?;
                self.advance();
                let body = self.statement()?;
                return Ok(self
                    .node(NodeKind::LabeledStatement, start)
                    .with_value(label)
                    .with_children(vec![body]));
            }
        }
        if self.at("{") {
            return self.block();
        }
        if self.eat(";") {
            return Ok(self.node(NodeKind::EmptyStatement, start));
        }
        if let Some((mut children, ty)) = self.declaration_head(&["=", ";", ",", "["]) {
            children.push(ty);
            self.fragments(&mut children)?;
            self.expect(";")?;
            return Ok(self
                .node(NodeKind::VariableDeclarationStatement, start)
                .with_children(children));
        }
        let e = self.expression()?;
        self.expect(";")?;
        Ok(self
            .node(NodeKind::ExpressionStatement, start)
            .with_children(vec![e]))
    }

    fn paren_expression(&mut self) -> PResult<AstNode> {
        self.expect("(")?;
        let e = self.expression()?;
        self.expect(")")?;
        Ok(e)
    }

    fn if_statement(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("if")?;
        let cond = self.paren_expression()?;
        let then = self.statement()?;
        let mut children = vec![cond, then];
        if self.eat("else") {
            children.push(self.statement()?);
        }
        Ok(self
            .node(NodeKind::IfStatement, start)
            .with_children(children))
    }

    fn for_statement(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("for")?;
        self.expect("(")?;
        if let Some((mut mods, ty)) = self.declaration_head(&[":"]) {
            let pline = mods
                .first()
                .map_or(ty.span.start_line, |m| m.span.start_line);
            let name = self.ident()?;
            mods.push(ty);
            let param = self
                .node(NodeKind::Parameter, pline)
                .with_value(name)
                .with_children(mods);
            self.expect(":")?;
            let iterable = self.expression()?;
            self.expect(")")?;
            let body = self.statement()?;
            return Ok(self
                .node(NodeKind::EnhancedForStatement, start)
                .with_children(vec![param, iterable, body]));
        }

        let init_line = self.line();
        let mut init = Vec::new();
        if !self.at(";") {
            if let Some((mut children, ty)) = self.declaration_head(&["=", ";", ",", "["]) {
                let dline = children
                    .first()
                    .map_or(ty.span.start_line, |m| m.span.start_line);
                children.push(ty);
                self.fragments(&mut children)?;
                init.push(
                    self.node(NodeKind::VariableDeclarationExpression, dline)
                        .with_children(children),
                );
            } else {
                init = self.expression_list()?;
            }
        }
        let init = self.node(NodeKind::ForInit, init_line).with_children(init);
        self.expect(";")?;
        let mut children = vec![init];
        if !self.at(";") {
            children.push(self.expression()?);
        }
        self.expect(";")?;
        let update_line = self.line();
        let updates = if self.at(")") {
            Vec::new()
        } else {
            self.expression_list()?
        };
        children.push(
            self.node(NodeKind::ForUpdate, update_line)
                .with_children(updates),
        );
        self.expect(")")?;
        children.push(self.statement()?);
        Ok(self
            .node(NodeKind::ForStatement, start)
            .with_children(children))
    }

    fn expression_list(&mut self) -> PResult<Vec<AstNode>> {
        let mut items = vec![self.expression()?];
        while self.eat(",") {
            items.push(self.expression()?);
        }
        Ok(items)
    }

    fn switch_statement(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("switch")?;
        let selector = self.paren_expression()?;
        self.expect("{")?;
        let mut children = vec![selector];
        while !self.at("}") {
            if self.at_eof() {
                return Err(self.error("expected `}`"));
            }
            let line = self.line();
            if self.eat("case") {
                let labels = self.case_labels()?;
                children.push(self.node(NodeKind::SwitchCase, line).with_children(labels));
            } else if self.at("default") && self.peek_at(1).is(":") {
                self.pos += 2;
                children.push(self.node(NodeKind::SwitchCase, line).with_value("default"));
            } else if self.at("default") {
                return Err(self.error("arrow-form switch is not supported"));
            } else {
                children.push(self.contained_statement());
            }
        }
        self.expect("}")?;
        Ok(self
            .node(NodeKind::SwitchStatement, start)
            .with_children(children))
    }

    fn case_labels(&mut self) -> PResult<Vec<AstNode>> {
        let mut labels = vec![self.ternary()?];
        while self.eat(",") {
            labels.push(self.ternary()?);
        }
        if !self.eat(":") {
            return Err(self.error("expected `:` after case label"));
        }
        Ok(labels)
    }

    fn try_statement(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("try")?;
        if self.at("(") {
            return Err(self.error("try-with-resources is not supported"));
        }
        let mut children = vec![self.block()?];
        while self.at("catch") {
            let line = self.line();
            self.advance();
            self.expect("(")?;
            let pline = self.line();
            let mut mods = self.modifiers()?;
            let tline = self.line();
            let mut ty = self.type_text()?;
            while self.eat("|") {
                ty.push('|');
                ty.push_str(&self.type_text()?);
            }
            let name = self.ident()?;
            self.expect(")")?;
            mods.push(AstNode::new(NodeKind::TypeRef, Span::new(tline, tline)).with_value(ty));
            let param = self
                .node(NodeKind::Parameter, pline)
                .with_value(name)
                .with_children(mods);
            let body = self.block()?;
            children.push(
                self.node(NodeKind::CatchClause, line)
                    .with_children(vec![param, body]),
            );
        }
        if self.eat("finally") {
            children.push(self.block()?);
        }
        if children.len() == 1 {
            return Err(self.error("expected `catch` or `finally`"));
        }
        Ok(self
            .node(NodeKind::TryStatement, start)
            .with_children(children))
    }

    // ----- expressions ---------------------------------------------------

    fn expression(&mut self) -> PResult<AstNode> {
        if self.lambda_ahead() {
            return self.lambda();
        }
        let lhs = self.ternary()?;
        let op = self.peek();
        if op.kind == TokenKind::Op && ASSIGN_OPS.contains(&op.text.as_str()) {
            let op = self.advance().text.clone();
            let rhs = self.expression()?;
            let span = Span::new(lhs.span.start_line, self.prev_line());
            return Ok(AstNode::new(NodeKind::Assignment, span)
                .with_value(op)
                .with_children(vec![lhs, rhs]));
        }
        Ok(lhs)
    }

    fn lambda_ahead(&self) -> bool {
        if Self::is_ident(self.peek()) && self.peek_at(1).is("->") {
            return true;
        }
        if !self.at("(") {
            return false;
        }
        let mut depth = 0;
        let mut i = self.pos;
        while i < self.toks.len() {
            let tok = &self.toks[i];
            if tok.is("(") {
                depth += 1;
            } else if tok.is(")") {
                depth -= 1;
                if depth == 0 {
                    return self.toks.get(i + 1).is_some_and(|t| t.is("->"));
                }
            } else if tok.kind == TokenKind::Eof || tok.is(";") || tok.is("{") {
                return false;
            }
            i += 1;
        }
        false
    }

    /// Lambdas are kept opaque: the raw text becomes an `ExpressionOther` leaf.
    fn lambda(&mut self) -> PResult<AstNode> {
        let start = self.line();
        let from = self.pos;
        if self.at("(") {
            self.skip_balanced("(", ")")?;
        } else {
            self.advance();
        }
        self.expect("->")?;
        if self.at("{") {
            self.skip_balanced("{", "}")?;
        } else {
            self.expression()?;
        }
        let raw = self.raw_text(from);
        Ok(self.node(NodeKind::ExpressionOther, start).with_value(raw))
    }

    fn ternary(&mut self) -> PResult<AstNode> {
        let cond = self.binary(1)?;
        if !self.at("?") {
            return Ok(cond);
        }
        self.advance();
        let then = self.expression()?;
        self.expect(":")?;
        let otherwise = if self.lambda_ahead() {
            self.lambda()?
        } else {
            self.ternary()?
        };
        let span = Span::new(cond.span.start_line, self.prev_line());
        Ok(AstNode::new(NodeKind::ConditionalExpression, span)
            .with_children(vec![cond, then, otherwise]))
    }

    /// Binary operator at the cursor with its precedence and token count.
    fn binary_op(&self) -> Option<(String, u8, usize)> {
        let tok = self.peek();
        if tok.kind == TokenKind::Ident {
            return (tok.text == "instanceof").then(|| ("instanceof".to_string(), 7, 1));
        }
        if tok.kind != TokenKind::Op {
            return None;
        }
        if tok.text == ">" {
            // join adjacent `>` tokens into shift operators
            let mut n = 1;
            while n < 3 {
                let prev = &self.toks[self.pos + n - 1];
                let next = self.peek_at(n);
                if next.is(">") && prev.end == next.start {
                    n += 1;
                } else {
                    break;
                }
            }
            // `>>=` / `>>>=` spelled with a separate `=` never occurs: the lexer
            // emits those as single tokens.
            return Some(match n {
                1 => (">".to_string(), 7, 1),
                2 => (">>".to_string(), 8, 2),
                _ => (">>>".to_string(), 8, 3),
            });
        }
        let prec = match tok.text.as_str() {
            "||" => 1,
            "&&" => 2,
            "|" => 3,
            "^" => 4,
            "&" => 5,
            "==" | "!=" => 6,
            "<" | "<=" | ">=" => 7,
            "<<" => 8,
            "+" | "-" => 9,
            "*" | "/" | "%" => 10,
            _ => return None,
        };
        Some((tok.text.clone(), prec, 1))
    }

    fn binary(&mut self, min_prec: u8) -> PResult<AstNode> {
        let mut lhs = self.unary()?;
        while let Some((op, prec, ntok)) = self.binary_op() {
            if prec < min_prec {
                break;
            }
            self.pos += ntok;
            if op == "instanceof" {
                let line = self.line();
                self.eat("final");
                let ty = self.type_text()?;
                let ty = AstNode::new(NodeKind::TypeRef, Span::new(line, line)).with_value(ty);
                let span = Span::new(lhs.span.start_line, self.prev_line());
                lhs =
                    AstNode::new(NodeKind::InstanceofExpression, span).with_children(vec![lhs, ty]);
                continue;
            }
            let rhs = self.binary(prec + 1)?;
            let span = Span::new(lhs.span.start_line, self.prev_line());
            lhs = AstNode::new(NodeKind::InfixExpression, span)
                .with_value(op)
                .with_children(vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<AstNode> {
        let start = self.line();
        let tok = self.peek();
        if tok.kind == TokenKind::Op
            && matches!(tok.text.as_str(), "+" | "-" | "++" | "--" | "!" | "~")
        {
            let op = self.advance().text.clone();
            let operand = self.unary()?;
            return Ok(self
                .node(NodeKind::PrefixExpression, start)
                .with_value(op)
                .with_children(vec![operand]));
        }
        if self.at("(") {
            if let Some(cast) = self.try_cast()? {
                return Ok(cast);
            }
        }
        let mut e = self.primary()?;
        while self.at("++") || self.at("--") {
            let op = self.advance().text.clone();
            let span = Span::new(e.span.start_line, self.prev_line());
            e = AstNode::new(NodeKind::PostfixExpression, span)
                .with_value(op)
                .with_children(vec![e]);
        }
        Ok(e)
    }

    fn try_cast(&mut self) -> PResult<Option<AstNode>> {
        let save = self.pos;
        let start = self.line();
        self.advance();
        let is_primitive =
            PRIMITIVES.contains(&self.peek().text.as_str()) && self.peek().kind == TokenKind::Ident;
        let tline = self.line();
        let ty = match self.type_text() {
            Ok(ty) if self.at(")") => ty,
            _ => {
                self.pos = save;
                return Ok(None);
            }
        };
        self.advance();
        let next = self.peek();
        let operand_follows = if is_primitive {
            !matches!(next.kind, TokenKind::Eof)
                && !(next.kind == TokenKind::Op
                    && !matches!(
                        next.text.as_str(),
                        "(" | "+" | "-" | "++" | "--" | "!" | "~"
                    ))
        } else {
            match next.kind {
                TokenKind::Int | TokenKind::Float | TokenKind::Char | TokenKind::Str => true,
                TokenKind::Ident => next.text != "instanceof",
                TokenKind::Op => matches!(next.text.as_str(), "(" | "!" | "~"),
                _ => false,
            }
        };
        if !operand_follows {
            self.pos = save;
            return Ok(None);
        }
        let type_ref = AstNode::new(NodeKind::TypeRef, Span::new(tline, tline)).with_value(ty);
        let operand = if self.lambda_ahead() {
            self.lambda()?
        } else {
            self.unary()?
        };
        Ok(Some(
            self.node(NodeKind::CastExpression, start)
                .with_children(vec![type_ref, operand]),
        ))
    }

    fn arguments(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("(")?;
        let mut args = Vec::new();
        if !self.at(")") {
            args = self.expression_list()?;
        }
        self.expect(")")?;
        Ok(self.node(NodeKind::ArgumentList, start).with_children(args))
    }

    fn primary(&mut self) -> PResult<AstNode> {
        let start = self.line();
        let from = self.pos;
        let tok = self.peek();
        let mut e = match tok.kind {
            TokenKind::Int | TokenKind::Float | TokenKind::Char | TokenKind::Str => {
                self.advance();
                self.node(NodeKind::Literal, start)
                    .with_value(tok.text.clone())
            }
            TokenKind::Ident => match tok.text.as_str() {
                "true" | "false" | "null" => {
                    self.advance();
                    self.node(NodeKind::Literal, start)
                        .with_value(tok.text.clone())
                }
                "this" | "super" => {
                    self.advance();
                    if self.at("(") {
                        let args = self.arguments()?;
                        self.node(NodeKind::MethodInvocation, start)
                            .with_value(tok.text.clone())
                            .with_children(vec![args])
                    } else if tok.text == "this" {
                        self.node(NodeKind::ThisExpression, start)
                    } else {
                        self.node(NodeKind::SuperExpression, start)
                    }
                }
                "new" => self.creation()?,
                text if PRIMITIVES.contains(&text) => {
                    // int.class, int[]::new
                    self.type_text()?;
                    if self.eat("::") {
                        self.advance();
                    } else {
                        self.expect(".")?;
                        self.expect("class")?;
                    }
                    let raw = self.raw_text(from);
                    self.node(NodeKind::ExpressionOther, start).with_value(raw)
                }
                _ if Self::is_ident(tok) => {
                    let name = self.ident()?;
                    if self.at("(") {
                        let args = self.arguments()?;
                        self.node(NodeKind::MethodInvocation, start)
                            .with_value(name)
                            .with_children(vec![args])
                    } else {
                        self.node(NodeKind::SimpleName, start).with_value(name)
                    }
                }
                _ => return Err(self.error("expected expression")),
            },
            TokenKind::Op if tok.text == "(" => {
                self.advance();
                let inner = self.expression()?;
                self.expect(")")?;
                self.node(NodeKind::ParenthesizedExpression, start)
                    .with_children(vec![inner])
            }
            _ => return Err(self.error("expected expression")),
        };

        loop {
            if self.at(".") {
                let next = self.peek_at(1);
                if next.is("class") || next.is("this") || next.is("new") {
                    if next.is("new") {
                        return Err(self.error("qualified inner creation is not supported"));
                    }
                    self.pos += 2;
                    let raw = self.raw_text(from);
                    e = self.node(NodeKind::ExpressionOther, start).with_value(raw);
                    continue;
                }
                self.advance();
                if self.at("<") {
                    let mut ignored = String::new();
                    self.type_arguments(&mut ignored)?;
                }
                let name = self.ident()?;
                if self.at("(") {
                    let args = self.arguments()?;
                    e = self
                        .node(NodeKind::MethodInvocation, start)
                        .with_value(name)
                        .with_children(vec![e, args]);
                } else {
                    e = self
                        .node(NodeKind::FieldAccess, start)
                        .with_value(name)
                        .with_children(vec![e]);
                }
            } else if self.at("[") {
                self.advance();
                let index = self.expression()?;
                self.expect("]")?;
                e = self
                    .node(NodeKind::ArrayAccess, start)
                    .with_children(vec![e, index]);
            } else if self.at("::") {
                self.advance();
                if !self.eat("new") {
                    self.ident()?;
                }
                let raw = self.raw_text(from);
                e = self.node(NodeKind::ExpressionOther, start).with_value(raw);
            } else {
                return Ok(e);
            }
        }
    }

    fn creation(&mut self) -> PResult<AstNode> {
        let start = self.line();
        self.expect("new")?;
        let tline = self.line();
        let mut ty = String::new();
        let tok = self.peek();
        if tok.kind == TokenKind::Ident && PRIMITIVES.contains(&tok.text.as_str()) {
            ty.push_str(&self.advance().text);
        } else {
            ty.push_str(&self.ident()?);
            self.type_arguments(&mut ty)?;
            while self.at(".") && Self::is_ident(self.peek_at(1)) {
                self.advance();
                ty.push('.');
                ty.push_str(&self.ident()?);
                self.type_arguments(&mut ty)?;
            }
        }
        let type_ref = AstNode::new(NodeKind::TypeRef, Span::new(tline, tline)).with_value(ty);
        if self.at("[") {
            let mut children = vec![type_ref];
            let mut dims = 0;
            while self.at("[") {
                self.advance();
                dims += 1;
                if !self.eat("]") {
                    children.push(self.expression()?);
                    self.expect("]")?;
                }
            }
            if self.at("{") {
                children.push(self.array_initializer()?);
            }
            return Ok(self
                .node(NodeKind::ArrayCreation, start)
                .with_value(dims.to_string())
                .with_children(children));
        }
        let args = self.arguments()?;
        let mut children = vec![type_ref, args];
        if self.at("{") {
            let line = self.line();
            self.advance();
            let members = self.class_body_members()?;
            children.push(
                self.node(NodeKind::AnonymousClassBody, line)
                    .with_children(members),
            );
        }
        Ok(self
            .node(NodeKind::ClassInstanceCreation, start)
            .with_children(children))
    }
}
