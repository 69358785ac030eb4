//! Minimal boolean keyword queries over record titles and abstracts.
//!
//! Grammar:
//!
//! ```text
//! query   := or
//! or      := and (("OR" | <juxtaposition>) and)*
//! and     := not ("AND" not)*
//! not     := "NOT" not | primary
//! primary := scope ":" "(" or ")" | scope ":" term | "(" or ")" | term
//! scope   := "title" | "abstract" | "any"
//! term    := word | word "*"
//! ```
//!
//! Operators are upper-case. Juxtaposed clauses are OR-ed, so the fielded
//! form `title:(bgo AND cryst*) abstract:(bgo AND cryst*)` selects records
//! matching in either field. A plain term matches a whole word of the text,
//! `word*` matches any word starting with `word`; both ignore case.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Title,
    Abstract,
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub word: String,
    pub prefix: bool,
    pub scope: Scope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Term(Term),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

/// A parsed query. Construct with [`str::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchQuery {
    source: String,
    expr: Expr,
}

impl SearchQuery {
    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    /// Evaluate against a title/abstract pair.
    pub fn matches(&self, title: &str, abstract_text: &str) -> bool {
        let fields = Fields { title: tokenize(title), abstract_text: tokenize(abstract_text) };
        eval(&self.expr, &fields)
    }
}

impl fmt::Display for SearchQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for SearchQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = lex(s)?;
        if tokens.is_empty() {
            return Err(Error::Query { offset: 0, message: "empty query".into() });
        }
        let mut parser = Parser { tokens, pos: 0, end: s.len() };
        let expr = parser.or(Scope::Any)?;
        if let Some(tok) = parser.peek() {
            return Err(Error::Query { offset: tok.offset, message: format!("unexpected `{}`", tok.kind) });
        }
        Ok(SearchQuery { source: s.trim().to_string(), expr })
    }
}

struct Fields {
    title: Vec<String>,
    abstract_text: Vec<String>,
}

fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

fn term_hits(term: &Term, words: &[String]) -> bool {
    if term.prefix {
        words.iter().any(|w| w.starts_with(&term.word))
    } else {
        words.contains(&term.word)
    }
}

fn eval(expr: &Expr, fields: &Fields) -> bool {
    match expr {
        Expr::Term(t) => match t.scope {
            Scope::Title => term_hits(t, &fields.title),
            Scope::Abstract => term_hits(t, &fields.abstract_text),
            Scope::Any => term_hits(t, &fields.title) || term_hits(t, &fields.abstract_text),
        },
        Expr::Not(inner) => !eval(inner, fields),
        Expr::And(items) => items.iter().all(|e| eval(e, fields)),
        Expr::Or(items) => items.iter().any(|e| eval(e, fields)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    LParen,
    RParen,
    Colon,
    And,
    Or,
    Not,
    Word(String),
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Colon => f.write_str(":"),
            TokenKind::And => f.write_str("AND"),
            TokenKind::Or => f.write_str("OR"),
            TokenKind::Not => f.write_str("NOT"),
            TokenKind::Word(w) => f.write_str(w),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let kind = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ':' => TokenKind::Colon,
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ':') {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                out.push(Token {
                    kind: match word.as_str() {
                        "AND" => TokenKind::And,
                        "OR" => TokenKind::Or,
                        "NOT" => TokenKind::Not,
                        _ => TokenKind::Word(word),
                    },
                    offset,
                });
                continue;
            }
        };
        chars.next();
        out.push(Token { kind, offset });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Query { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, kind: TokenKind) -> Result<()> {
        if self.peek_kind() == Some(&kind) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{kind}`"))
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(self.peek_kind(), Some(TokenKind::LParen | TokenKind::Not | TokenKind::Word(_)))
    }

    fn or(&mut self, scope: Scope) -> Result<Expr> {
        let mut items = vec![self.and(scope)?];
        loop {
            if self.peek_kind() == Some(&TokenKind::Or) {
                self.pos += 1;
            } else if !self.starts_operand() {
                break;
            }
            items.push(self.and(scope)?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Or(items) })
    }

    fn and(&mut self, scope: Scope) -> Result<Expr> {
        let mut items = vec![self.not(scope)?];
        while self.peek_kind() == Some(&TokenKind::And) {
            self.pos += 1;
            items.push(self.not(scope)?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::And(items) })
    }

    fn not(&mut self, scope: Scope) -> Result<Expr> {
        if self.peek_kind() == Some(&TokenKind::Not) {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.not(scope)?)));
        }
        self.primary(scope)
    }

    fn primary(&mut self, scope: Scope) -> Result<Expr> {
        match self.peek_kind().cloned() {
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let inner = self.or(scope)?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            Some(TokenKind::Word(word)) => {
                if self.tokens.get(self.pos + 1).map(|t| &t.kind) == Some(&TokenKind::Colon) {
                    let scope = match word.as_str() {
                        "title" => Scope::Title,
                        "abstract" => Scope::Abstract,
                        "any" => Scope::Any,
                        _ => return self.err(format!("unknown scope `{word}` (expected title, abstract or any)")),
                    };
                    self.pos += 2;
                    return match self.peek_kind() {
                        Some(TokenKind::LParen) | Some(TokenKind::Word(_)) | Some(TokenKind::Not) => self.not(scope),
                        _ => self.err("expected term or `(` after scope"),
                    };
                }
                let term = self.term(&word, scope)?;
                self.pos += 1;
                Ok(Expr::Term(term))
            }
            Some(kind) => self.err(format!("unexpected `{kind}`")),
            None => self.err("unexpected end of query"),
        }
    }

    fn term(&self, word: &str, scope: Scope) -> Result<Term> {
        let (stem, prefix) = match word.strip_suffix('*') {
            Some(stem) => (stem, true),
            None => (word, false),
        };
        if stem.contains('*') {
            return self.err(format!("wildcard only allowed at the end of a term: `{word}`"));
        }
        if stem.is_empty() {
            return self.err("empty term");
        }
        if !stem.chars().all(char::is_alphanumeric) {
            return self.err(format!("terms must be alphanumeric: `{word}`"));
        }
        Ok(Term { word: stem.to_lowercase(), prefix, scope })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> SearchQuery {
        s.parse().unwrap()
    }

    #[test]
    fn wildcard_prefix() {
        let query = q("title:(bgo AND cryst*)");
        assert!(query.matches("bgo crystal study", ""));
        assert!(!query.matches("bgo detector", ""));
    }

    #[test]
    fn unscoped_or() {
        let query = q("bgo OR calor*");
        assert!(query.matches("calorimeter design", ""));
        assert!(query.matches("", "a BGO array"));
        assert!(!query.matches("silicon tracker", "pixels"));
    }

    #[test]
    fn fielded_query_with_alternatives() {
        let query = q("title:((bgo AND cryst*) OR (bgo AND calor*)) abstract:((bgo AND cryst*) OR (bgo AND calor*))");
        assert!(query.matches("BGO calorimeter", ""));
        assert!(query.matches("Detector study", "the BGO crystals were grown"));
        assert!(!query.matches("BGO only", "nothing else"));
        assert!(!query.matches("Crystal ball", "calorimeter"));
    }

    #[test]
    fn scope_restricts_field() {
        let query = q("abstract:bgo");
        assert!(!query.matches("bgo", ""));
        assert!(query.matches("", "bgo"));
    }

    #[test]
    fn plain_term_is_whole_word() {
        let query = q("cryst");
        assert!(!query.matches("crystal", ""));
        assert!(query.matches("a CRYST b", ""));
    }

    #[test]
    fn precedence_not_and_or() {
        // a OR (b AND (NOT c))
        let query = q("a OR b AND NOT c");
        assert!(query.matches("a c", ""));
        assert!(query.matches("b", ""));
        assert!(!query.matches("b c", ""));
    }

    #[test]
    fn rejects_bad_queries() {
        for bad in ["", "   ", "bg*o", "(bgo", "bgo)", "title:", "foo:(bgo)", "AND bgo", "x-ray", "*"] {
            assert!(bad.parse::<SearchQuery>().is_err(), "{bad:?} should not parse");
        }
    }
}
