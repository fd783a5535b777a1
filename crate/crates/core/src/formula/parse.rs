//! Recursive-descent parser for the textual formula grammar:
//! identifiers, `true`, `false`, `!`, `&`, `|` and parentheses,
//! with precedence `!` > `&` > `|`.

use super::{Formula, FormulaError, Universe};

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>, FormulaError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                out.push((start + 1, Token::Ident(&text[start..i])));
                continue;
            }
            other => {
                return Err(FormulaError::Parse {
                    column: i + 1,
                    reason: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((i + 1, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'t, 'u> {
    tokens: Vec<(usize, Token<'t>)>,
    pos: usize,
    universe: &'u Universe,
    end_column: usize,
}

impl<'t> Parser<'t, '_> {
    fn peek(&self) -> Option<&Token<'t>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |(c, _)| *c)
    }

    fn error(&self, reason: impl Into<String>) -> FormulaError {
        FormulaError::Parse {
            column: self.column(),
            reason: reason.into(),
        }
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut parts = vec![self.conjunction()?];
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.peek() == Some(&Token::Not) {
            self.pos += 1;
            return Ok(match self.unary()? {
                Formula::Lit(v, p) => Formula::Lit(v, !p),
                other => Formula::not(other),
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().cloned() {
            Some(Token::Ident("true")) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Token::Ident("false")) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Token::Ident(name)) => {
                let var = self
                    .universe
                    .get(name)
                    .ok_or_else(|| self.error(format!("unknown variable `{name}`")))?;
                self.pos += 1;
                Ok(Formula::var(var))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(self.error(format!("unexpected token {t:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `text` against the declared variables of `universe`.
pub fn parse_formula(text: &str, universe: &Universe) -> Result<Formula, FormulaError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        universe,
        end_column: text.len() + 1,
    };
    let f = parser.disjunction()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(f)
}
