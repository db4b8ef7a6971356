use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    Int,
    Keyword,
    Op,
    Punct,
}

pub const KEYWORDS: &[&str] = &["sum", "identity", "params", "vars", "lhs", "rhs"];

/// 1-based source position, columns counted in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: Pos,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: illegal character `{ch}`")]
pub struct LexError {
    pub ch: char,
    pub pos: Pos,
}

/// Splits `input` into tokens, skipping whitespace and `#` comments.
pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };

    let advance = |pos: &mut Pos, c: char| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };

    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(&mut pos, c);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(&mut pos, c);
            }
            continue;
        }
        let mut take_while = |pred: &dyn Fn(char) -> bool| {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !pred(c) {
                    break;
                }
                s.push(c);
                chars.next();
                advance(&mut pos, c);
            }
            s
        };
        let (kind, lexeme) = if c.is_ascii_digit() {
            (TokenKind::Int, take_while(&|c| c.is_ascii_digit()))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let word = take_while(&|c| c.is_ascii_alphanumeric() || c == '_');
            let kind = if KEYWORDS.contains(&word.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
            (kind, word)
        } else {
            chars.next();
            advance(&mut pos, c);
            match c {
                '+' | '-' | '*' | '/' | '^' | '=' => (TokenKind::Op, c.to_string()),
                '>' if chars.peek() == Some(&'=') => {
                    chars.next();
                    advance(&mut pos, '=');
                    (TokenKind::Op, ">=".to_string())
                }
                '.' if chars.peek() == Some(&'.') => {
                    chars.next();
                    advance(&mut pos, '.');
                    (TokenKind::Punct, "..".to_string())
                }
                '(' | ')' | ',' => (TokenKind::Punct, c.to_string()),
                _ => return Err(LexError { ch: c, pos: start }),
            }
        };
        out.push(Token {
            kind,
            lexeme,
            pos: start,
        });
    }
    Ok(out)
}
