//! Tokenizer for the Java subset. Comments and whitespace are dropped; every
//! token keeps its byte range so raw text of unparsed regions can be rebuilt.

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Int,
    Float,
    Char,
    Str,
    Op,
    Unknown,
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: u32,
    pub col: u32,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn is(&self, text: &str) -> bool {
        matches!(self.kind, TokenKind::Op | TokenKind::Ident) && self.text == text
    }
}

// Longest first. `>` is never merged into `>>` or `>>>`; the parser joins
// adjacent `>` tokens into shift operators so nested generics close cleanly.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", "(", ")", "{", "}", "[", "]", ";", ",", ".",
    "@", "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut line_start = 0usize;

    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            line += 1;
            i += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let col = (i - line_start) as u32 + 1;
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'*') {
            let (start_line, start_col) = (line, col);
            i += 2;
            loop {
                if i + 1 >= bytes.len() {
                    return Err(ParseError::new(
                        start_line,
                        start_col,
                        "unterminated comment",
                    ));
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                if bytes[i] == b'\n' {
                    line += 1;
                    line_start = i + 1;
                }
                i += 1;
            }
            continue;
        }

        let start = i;
        let kind;
        if is_ident_start(c) || c >= 0x80 {
            // Non-ASCII letters are legal identifier characters in Java.
            while i < bytes.len() && (is_ident_part(bytes[i]) || bytes[i] >= 0x80) {
                i += 1;
            }
            kind = TokenKind::Ident;
        } else if c.is_ascii_digit()
            || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit))
        {
            kind = lex_number(bytes, &mut i);
        } else if c == b'"' || c == b'\'' {
            let quote = c;
            i += 1;
            loop {
                match bytes.get(i) {
                    None | Some(b'\n') => {
                        return Err(ParseError::new(line, col, "unterminated literal"));
                    }
                    Some(b'\\') => i += 2,
                    Some(&b) if b == quote => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            kind = if quote == b'"' {
                TokenKind::Str
            } else {
                TokenKind::Char
            };
        } else if let Some(op) = OPERATORS.iter().find(|op| src[i..].starts_with(**op)) {
            i += op.len();
            kind = TokenKind::Op;
        } else {
            i += utf8_len(c);
            kind = TokenKind::Unknown;
        }
        tokens.push(Token {
            kind,
            text: src[start..i].to_string(),
            line,
            col,
            start,
            end: i,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        text: String::new(),
        line,
        col: (i - line_start) as u32 + 1,
        start: i,
        end: i,
    });
    Ok(tokens)
}

fn lex_number(bytes: &[u8], i: &mut usize) -> TokenKind {
    let mut kind = TokenKind::Int;
    if bytes[*i] == b'0' && matches!(bytes.get(*i + 1), Some(b'x' | b'X' | b'b' | b'B')) {
        *i += 2;
        while *i < bytes.len() && (bytes[*i].is_ascii_hexdigit() || bytes[*i] == b'_') {
            *i += 1;
        }
    } else {
        let digits = |i: &mut usize| {
            while *i < bytes.len() && (bytes[*i].is_ascii_digit() || bytes[*i] == b'_') {
                *i += 1;
            }
        };
        digits(i);
        if bytes.get(*i) == Some(&b'.') && bytes.get(*i + 1).is_some_and(u8::is_ascii_digit) {
            kind = TokenKind::Float;
            *i += 1;
            digits(i);
        }
        if matches!(bytes.get(*i), Some(b'e' | b'E')) {
            let mut j = *i + 1;
            if matches!(bytes.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            if bytes.get(j).is_some_and(u8::is_ascii_digit) {
                kind = TokenKind::Float;
                *i = j;
                digits(i);
            }
        }
    }
    match bytes.get(*i) {
        Some(b'l' | b'L') => *i += 1,
        Some(b'f' | b'F' | b'd' | b'D') => {
            kind = TokenKind::Float;
            *i += 1;
        }
        _ => {}
    }
    kind
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || c == b'$'
}

fn is_ident_part(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'$'
}

fn utf8_len(first: u8) -> usize {
    match first {
        0xF0..=0xFF => 4,
        0xE0..=0xEF => 3,
        0xC0..=0xDF => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<String> {
        tokenize(src).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn generics_close_with_single_angles() {
        assert_eq!(
            texts("Map<Integer, List<Integer>> m;"),
            ["Map", "<", "Integer", ",", "List", "<", "Integer", ">", ">", "m", ";", ""]
        );
    }

    #[test]
    fn numbers_and_literals() {
        let toks = tokenize("1_000L 0x1F 3.5e-2 .5 1e9 'a' \"s\\\"t\" 2f").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            [
                TokenKind::Int,
                TokenKind::Int,
                TokenKind::Float,
                TokenKind::Float,
                TokenKind::Float,
                TokenKind::Char,
                TokenKind::Str,
                TokenKind::Float,
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn comments_are_skipped_and_lines_tracked() {
        let toks = tokenize("a // x\n/* y\n z */ b").unwrap();
        assert_eq!(toks[0].line, 1);
        assert_eq!(toks[1].text, "b");
        assert_eq!(toks[1].line, 3);
    }

    #[test]
    fn unterminated_string_is_an_error() {
        assert!(tokenize("String s = \"abc;\n").is_err());
    }
}
