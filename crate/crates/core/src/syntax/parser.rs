use thiserror::Error;

use super::{Atom, Clause, Literal, Program, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    /// Lowercase- or digit-initial identifier.
    Name(String),
    /// Uppercase- or underscore-initial identifier.
    Var(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Neck,
    AtomDirective,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) | Tok::Var(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Neck => "`:-`".into(),
            Tok::AtomDirective => "`#atom`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let err = |line, column, message: String| ParseError { line, column, message };

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' | ')' | ',' | '.' => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                };
                advance(1, &mut i);
                out.push(Spanned { tok, line: start_line, column: start_col });
            }
            ':' => {
                if chars.get(i + 1) == Some(&'-') {
                    advance(2, &mut i);
                    out.push(Spanned { tok: Tok::Neck, line: start_line, column: start_col });
                } else {
                    return Err(err(line, column, "expected `:-`".into()));
                }
            }
            '#' => {
                let word: String =
                    chars[i + 1..].iter().take_while(|c| c.is_ascii_alphanumeric()).collect();
                if word != "atom" {
                    return Err(err(line, column, format!("unknown directive `#{word}`")));
                }
                advance(1 + word.len(), &mut i);
                out.push(Spanned { tok: Tok::AtomDirective, line: start_line, column: start_col });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                advance(word.len(), &mut i);
                let tok = if c.is_ascii_uppercase() || c == '_' {
                    Tok::Var(word)
                } else {
                    Tok::Name(word)
                };
                out.push(Spanned { tok, line: start_line, column: start_col });
            }
            other => return Err(err(line, column, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, column) =
            self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column));
        ParseError { line, column, message: message.into() }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error_here(format!("expected {expected}, found {}", t.describe())),
            None => self.error_here(format!("expected {expected}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut program = Program::default();
        while let Some(tok) = self.peek() {
            if *tok == Tok::AtomDirective {
                self.pos += 1;
                let at = self.pos;
                let atom = self.atom()?;
                if !atom.is_ground() {
                    let s = &self.toks[at];
                    return Err(ParseError {
                        line: s.line,
                        column: s.column,
                        message: format!("variable in `#atom` directive: {atom}"),
                    });
                }
                self.expect(Tok::Dot, "`.`")?;
                program.declared_atoms.insert(atom);
            } else {
                program.clauses.push(self.clause()?);
            }
        }
        Ok(program)
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.peek() == Some(&Tok::Neck) {
            self.pos += 1;
            body.push(self.literal()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                body.push(self.literal()?);
            }
        }
        self.expect(Tok::Dot, "`,` or `.`")?;
        Ok(Clause { head, body })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        // `not` is a keyword only when an atom follows it.
        if let Some(Tok::Name(n)) = self.peek() {
            if n == "not" {
                if matches!(self.peek_at(1), Some(Tok::Name(_))) {
                    self.pos += 1;
                    return Ok(Literal::neg(self.atom()?));
                }
                if !matches!(self.peek_at(1), Some(Tok::LParen)) {
                    return Err(self.error_here("expected an atom after `not`"));
                }
            }
        }
        Ok(Literal::pos(self.atom()?))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Name(predicate)) => {
                self.pos += 1;
                let args = self.arguments()?;
                Ok(Atom { predicate, args })
            }
            _ => Err(self.unexpected("an atom")),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            args.push(self.term()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`,` or `)`")?;
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                let args = self.arguments()?;
                Ok(if args.is_empty() { Term::Const(n) } else { Term::Compound(n, args) })
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses program text. Clause order and duplicates are kept as written.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let toks = lex(text)?;
    let lines = text.split('\n').count();
    let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    let mut parser = Parser { toks, pos: 0, end: (lines, last_col) };
    parser.program()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fitting_example_syntax() {
        let p = parse_program("q :- not r.\np :- p.").unwrap();
        assert_eq!(p.clauses.len(), 2);
        assert!(!p.clauses[0].is_definite());
        let second = &p.clauses[1];
        assert!(second.is_definite());
        assert_eq!(second.head, Atom::prop("p"));
        assert_eq!(second.body, vec![Literal::pos(Atom::prop("p"))]);
    }

    #[test]
    fn successor_program() {
        let p = parse_program("p(0).\np(s(X)) :- p(X).").unwrap();
        assert_eq!(p.clauses.len(), 2);
        assert!(p.clauses[0].is_unit());
        assert_eq!(p.clauses[0].head, Atom::new("p", vec![Term::Const("0".into())]));
        assert!(p.clauses[1].is_definite());
        assert_eq!(p.clauses[1].variables(), vec!["X"]);
        assert!(p.has_compound_terms());
    }

    #[test]
    fn dangling_not_is_an_error_at_not() {
        let e = parse_program("a :- b, not").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        assert!(e.message.contains("not"), "{e}");
    }

    #[test]
    fn missing_dot_reports_position() {
        let e = parse_program("a :- b\nc.").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
    }

    #[test]
    fn directive_rejects_variables() {
        let e = parse_program("#atom p(X).").unwrap_err();
        assert!(e.message.contains("variable"));
        let ok = parse_program("#atom p(a). % vocabulary\n").unwrap();
        assert!(ok.clauses.is_empty());
        assert!(ok.declared_atoms.contains(&Atom::new("p", vec![Term::Const("a".into())])));
    }

    #[test]
    fn comments_and_duplicates() {
        let p = parse_program("% header\na. a.\nb :- not a, a. % trailing").unwrap();
        assert_eq!(p.clauses.len(), 3);
        assert_eq!(p.clauses[0], p.clauses[1]);
    }

    #[test]
    fn not_can_be_a_predicate_with_arguments() {
        let p = parse_program("a :- not(b).").unwrap();
        assert!(p.clauses[0].body[0].positive);
        assert_eq!(p.clauses[0].body[0].atom.predicate, "not");
    }

    #[test]
    fn variable_head_is_rejected() {
        assert!(parse_program("X :- a.").is_err());
        assert!(parse_program("a :- .").is_err());
        assert!(parse_program("a :- b ; c.").is_err());
    }
}
