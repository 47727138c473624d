//! Line-oriented text formats for algebras and relations.
//!
//! ```text
//! algebra monoid01
//! size 2
//! const zero = 0
//! op max/2 = [0 1 1 1]
//! ```
//!
//! ```text
//! relation monoid01.alg
//! pair 0 0
//! pair 0 1
//! ```
//!
//! `#` starts a comment. Serialization writes the canonical form, one symbol
//! per line in signature order.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Signature, Symbol};
use crate::error::{Error, Result};
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        let punct = matches!(c, '[' | ']' | '=' | '/');
        if c.is_whitespace() || punct {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
            if punct {
                out.push(Token {
                    text: &line[i..i + 1],
                    column: i + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

struct Cursor<'a> {
    line: usize,
    end_column: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Self {
            line,
            end_column: text.find('#').unwrap_or(text.len()) + 1,
            tokens: tokenize(text),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.text)
            }
            None => Err(self.error(format!("expected {what}"))),
        }
    }

    fn expect(&mut self, literal: &str) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(t) if t.text == literal => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected `{literal}`, found `{}`", t.text))),
            None => Err(self.error(format!("expected `{literal}`"))),
        }
    }

    fn identifier(&mut self, what: &str) -> Result<&'a str> {
        let column = self.column();
        let word = self.next(what)?;
        let mut chars = word.chars();
        let ok = chars
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && chars.all(|c| c.is_alphanumeric() || c == '_');
        if ok {
            Ok(word)
        } else {
            Err(Error::Syntax {
                line: self.line,
                column,
                message: format!("`{word}` is not a valid {what}"),
            })
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let column = self.column();
        let word = self.next(what)?;
        word.parse().map_err(|_| Error::Syntax {
            line: self.line,
            column,
            message: format!("expected {what}, found `{word}`"),
        })
    }

    /// A number that must be `< bound`.
    fn element(&mut self, bound: usize) -> Result<usize> {
        let column = self.column();
        let e = self.number("element")?;
        if e >= bound {
            return Err(Error::Syntax {
                line: self.line,
                column,
                message: format!("element {e} out of range for carrier of size {bound}"),
            });
        }
        Ok(e)
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected `{}`", t.text))),
        }
    }
}

/// Non-blank lines after comment stripping, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !tokenize(l).is_empty())
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let mut lines = content_lines(text);
    let (n, first) = lines.next().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "expected `algebra <name>`".into(),
    })?;
    let mut c = Cursor::new(n, first);
    c.expect("algebra")?;
    let name = c.identifier("algebra name")?;
    c.finish()?;

    let last_line = text.lines().count().max(1);
    let (n, second) = lines.next().ok_or(Error::Syntax {
        line: last_line + 1,
        column: 1,
        message: "expected `size <n>`".into(),
    })?;
    let mut c = Cursor::new(n, second);
    c.expect("size")?;
    let size_column = c.column();
    let size = c.number("carrier size")?;
    if size == 0 {
        return Err(Error::Syntax {
            line: n,
            column: size_column,
            message: "carrier must be non-empty".into(),
        });
    }
    c.finish()?;

    let mut symbols = Vec::new();
    let mut tables = Vec::new();
    for (n, line) in lines {
        let mut c = Cursor::new(n, line);
        let keyword_column = c.column();
        let keyword = c.next("`const` or `op`")?;
        let name_column = c.column();
        let (symbol, table) = match keyword {
            "const" => {
                let name = c.identifier("symbol name")?;
                c.expect("=")?;
                let value = c.element(size)?;
                (Symbol::new(name, 0), vec![value])
            }
            "op" => {
                let name = c.identifier("symbol name")?;
                c.expect("/")?;
                let arity = c.number("arity")?;
                c.expect("=")?;
                c.expect("[")?;
                let mut table = Vec::new();
                while c.tokens.get(c.pos).is_some_and(|t| t.text != "]") {
                    table.push(c.element(size)?);
                }
                let close_column = c.column();
                c.expect("]")?;
                let expected = crate::algebra::table_len(size, arity)?;
                if table.len() != expected {
                    return Err(Error::Syntax {
                        line: n,
                        column: close_column,
                        message: Error::TableLength {
                            symbol: name.to_string(),
                            expected,
                            found: table.len(),
                        }
                        .to_string(),
                    });
                }
                (Symbol::new(name, arity), table)
            }
            other => {
                return Err(Error::Syntax {
                    line: n,
                    column: keyword_column,
                    message: format!("expected `const` or `op`, found `{other}`"),
                })
            }
        };
        c.finish()?;
        if symbols.iter().any(|s: &Symbol| s.name == symbol.name) {
            return Err(Error::Syntax {
                line: n,
                column: name_column,
                message: Error::DuplicateSymbol(symbol.name).to_string(),
            });
        }
        symbols.push(symbol);
        tables.push(table);
    }
    FiniteAlgebra::new(name, Signature::new(symbols)?, size, tables)
}

pub fn write_algebra(a: &FiniteAlgebra) -> String {
    let mut out = String::new();
    writeln!(out, "algebra {}", a.name()).unwrap();
    writeln!(out, "size {}", a.size()).unwrap();
    for (s, sym) in a.signature().symbols().iter().enumerate() {
        if sym.arity == 0 {
            writeln!(out, "const {} = {}", sym.name, a.constant(s)).unwrap();
        } else {
            let entries: Vec<String> = a.table(s).iter().map(|v| v.to_string()).collect();
            writeln!(out, "op {}/{} = [{}]", sym.name, sym.arity, entries.join(" ")).unwrap();
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ParsedRelation {
    /// The algebra reference named in the header.
    pub header: String,
    pub relation: Relation,
    pub warnings: Vec<String>,
}

pub fn parse_relation(text: &str, a: &Arc<FiniteAlgebra>) -> Result<ParsedRelation> {
    let mut lines = content_lines(text);
    let (n, first) = lines.next().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "expected `relation <algebra>`".into(),
    })?;
    let mut c = Cursor::new(n, first);
    c.expect("relation")?;
    let header = c.next("algebra reference")?.to_string();
    c.finish()?;

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut warnings = Vec::new();
    for (n, line) in lines {
        let mut c = Cursor::new(n, line);
        c.expect("pair")?;
        let x = c.element(a.size())?;
        let y = c.element(a.size())?;
        c.finish()?;
        if pairs.contains(&(x, y)) {
            warnings.push(format!("line {n}: duplicate pair ({x},{y}) ignored"));
        } else {
            pairs.push((x, y));
        }
    }
    let relation = Relation::on(a, pairs)?;
    Ok(ParsedRelation {
        header,
        relation,
        warnings,
    })
}

pub fn write_relation(header: &str, r: &Relation) -> String {
    let mut out = format!("relation {header}\n");
    for (x, y) in r.pairs() {
        writeln!(out, "pair {x} {y}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const BOOL2: &str = "\
algebra bool2
size 2
const bot = 0
const top = 1
op and/2 = [0 0 0 1]
op or/2 = [0 1 1 1]
op not/1 = [1 0]
";

    #[test]
    fn parses_boolean_algebra() {
        let a = parse_algebra(BOOL2).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.signature().len(), 5);
        assert_eq!(a, fixtures::bool2());
        assert_eq!(write_algebra(&a), BOOL2);
    }

    #[test]
    fn monoid_round_trip() {
        let text = "algebra monoid01\nsize 2\nconst zero = 0\nop max/2 = [0 1 1 1]\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.signature().len(), 2);
        assert_eq!(write_algebra(&a), text);
        assert_eq!(a, fixtures::monoid01());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\nalgebra s # trailing\n\nsize 3\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.size(), 3);
        assert!(a.signature().is_empty());
    }

    #[test]
    fn table_length_error_is_located() {
        let text = "algebra b\nsize 2\nop and/2 = [0 0 0]\n";
        let err = parse_algebra(text).unwrap_err();
        match err {
            Error::Syntax { line, column, message } => {
                assert_eq!((line, column), (3, 18));
                assert!(message.contains("expected 4"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_report_positions() {
        let cases = [
            ("", 1, 1),
            ("algebra\n", 1, 8),
            ("algebra a\nsize x\n", 2, 6),
            ("algebra a\nsize 0\n", 2, 6),
            ("algebra a\nsize 2\nop f/1 = [0 2]\n", 3, 13),
            ("algebra a\nsize 2\nfoo\n", 3, 1),
            ("algebra a\nsize 2\nconst c = 0 0\n", 3, 13),
            ("algebra a\nsize 2\nconst c = 0\nconst c = 1\n", 4, 7),
            ("algebra a\nsize 2\nop f/1 [0 1]\n", 3, 8),
        ];
        for (text, line, column) in cases {
            match parse_algebra(text) {
                Err(Error::Syntax { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn relation_parsing() {
        let s2 = Arc::new(fixtures::set(2));
        let p = parse_relation("relation set2.alg\npair 0 0\npair 0 1\n", &s2).unwrap();
        assert_eq!(p.relation.to_string(), "{(0,0),(0,1)}");
        assert_eq!(p.header, "set2.alg");
        assert!(p.warnings.is_empty());
        assert!(matches!(
            parse_relation("relation set2.alg\npair 5 0\n", &s2),
            Err(Error::Syntax { line: 2, column: 6, .. })
        ));
        let p = parse_relation("relation s\npair 1 1\npair 1 1\n", &s2).unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.relation.len(), 1);

        let b = Arc::new(fixtures::bool2());
        let p = parse_relation("relation bool2.alg\npair 0 0\npair 0 1\npair 1 1\n", &b).unwrap();
        assert!(!p.relation.is_compatible());
        assert_eq!(
            write_relation("bool2.alg", &p.relation),
            "relation bool2.alg\npair 0 0\npair 0 1\npair 1 1\n"
        );
    }
}
