use super::{Formula, FormulaError, VarName};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Not,
    Diamond,
    Box,
    Globally,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    True,
    False,
    Ident(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, FormulaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let fixed: [(&str, Tok); 9] = [
        ("<->", Tok::Iff),
        ("<D>", Tok::Diamond),
        ("[D]", Tok::Box),
        ("[G]", Tok::Globally),
        ("->", Tok::Implies),
        ("~", Tok::Not),
        ("&", Tok::And),
        ("|", Tok::Or),
        ("(", Tok::LParen),
    ];
    'outer: while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == ')' {
            out.push(Spanned { tok: Tok::RParen, line, column });
            i += 1;
            column += 1;
            continue;
        }
        for (lexeme, tok) in fixed.iter() {
            let len = lexeme.chars().count();
            if chars[i..].iter().take(len).copied().eq(lexeme.chars()) {
                out.push(Spanned { tok: tok.clone(), line, column });
                i += len;
                column += len;
                continue 'outer;
            }
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            };
            out.push(Spanned { tok, line, column });
            column += i - start;
            continue;
        }
        return Err(syntax(line, column, format!("unknown token {c:?}")));
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

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.column)).unwrap_or(self.end)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let mut f = self.imp()?;
        while self.eat(&Tok::Iff) {
            f = Formula::iff(f, self.imp()?);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula, FormulaError> {
        let f = self.or()?;
        if self.eat(&Tok::Implies) {
            Ok(Formula::implies(f, self.imp()?))
        } else {
            Ok(f)
        }
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat(&Tok::Diamond) {
            return Ok(Formula::diamond(self.unary()?));
        }
        if self.eat(&Tok::Box) {
            return Ok(Formula::boxd(self.unary()?));
        }
        if self.eat(&Tok::Globally) {
            return Ok(Formula::globally(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        let (line, column) = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(line, column, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Ident(name) => {
                let name = VarName::new(&name).map_err(|_| syntax(line, column, format!("bad identifier {name}")))?;
                Ok(Formula::Var(name))
            }
            Tok::LParen => {
                let f = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    let (line, column) = self.here();
                    return Err(syntax(line, column, "expected ')'"));
                }
                Ok(f)
            }
            other => Err(syntax(line, column, format!("unexpected {other:?}"))),
        }
    }
}

/// Parses the textual formula syntax. Precedence, strongest first: unary
/// (`~`, `<D>`, `[D]`, `[G]`), `&`, `|`, `->` (right-associative), `<->`
/// (left-associative). `#` starts a line comment.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1)
    };
    let mut parser = Parser { toks, pos: 0, end };
    let f = parser.iff()?;
    if parser.pos < parser.toks.len() {
        let (line, column) = parser.here();
        return Err(syntax(line, column, "trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn unary_binds_tightest() {
        assert_eq!(parse_formula("~<D> p").unwrap(), Formula::not(Formula::diamond(a("p"))));
    }

    #[test]
    fn globally_expands() {
        assert_eq!(parse_formula("[G] q").unwrap(), Formula::and(a("q"), Formula::boxd(a("q"))));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            Formula::implies(a("a"), Formula::implies(a("b"), a("c")))
        );
    }

    #[test]
    fn iff_is_left_associative_and_weakest() {
        assert_eq!(
            parse_formula("a <-> b <-> c | d & e").unwrap(),
            Formula::iff(
                Formula::iff(a("a"), a("b")),
                Formula::or(a("c"), Formula::and(a("d"), a("e")))
            )
        );
    }

    #[test]
    fn comments_and_whitespace() {
        let f = parse_formula("# header\n  [D]   # trailing\n false").unwrap();
        assert_eq!(f, Formula::boxd(Formula::False));
    }

    #[test]
    fn errors_carry_position() {
        match parse_formula("p &\n  $") {
            Err(FormulaError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("(p"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("p q"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula(""), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("<E> p"), Err(FormulaError::Syntax { .. })));
    }
}
