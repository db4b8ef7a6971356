//! Text format for identities.
//!
//! An identity file is a sequence of declarations:
//!
//! ```text
//! # comment
//! identity pascal
//! params n >= 0
//! vars x
//! lhs binom(x, n + 1)
//! rhs binom(x - 1, n + 1) + binom(x - 1, n)
//! ```
//!
//! Multiplication is always explicit (`2*n`). `x` and `y` are the
//! indeterminates; every other name is an integer parameter or a `sum` index.

mod lexer;
mod parser;
mod printer;

pub use lexer::{tokenize, LexError, Pos, Token, TokenKind, KEYWORDS};
pub use parser::{parse_expr, parse_expr_str, parse_identity_file, IdentityFile, ParseError};
pub use printer::{print_expr, print_identity, print_identity_file};
