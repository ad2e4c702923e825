//! Construction expressions: `K5`, `C8`, `P4`, `E2`, `T(8,2)`, `pow(C8,2)`,
//! `u(K2,E2)` (disjoint union) and `j(K1,T(8,2))` (join). Whitespace is ignored.

use std::fmt;

use spexlab::graph::{construct, Graph, GraphError, Kind};

#[derive(Debug)]
pub enum ExprError {
    /// Byte offset into the input (counted with whitespace) and message.
    Parse {
        position: usize,
        message: String,
    },
    Graph(GraphError),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Parse { position, message } => write!(f, "parse error at position {position}: {message}"),
            ExprError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl From<GraphError> for ExprError {
    fn from(e: GraphError) -> Self {
        ExprError::Graph(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse { position: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{}'", c as char))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.fail("integer out of range")
        })
    }

    fn list(&mut self) -> Result<Vec<Graph>, ExprError> {
        self.expect(b'(')?;
        let mut items = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            items.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(items)
    }

    fn expr(&mut self) -> Result<Graph, ExprError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let built = if self.eat_word("pow") {
            self.expect(b'(')?;
            let g = self.expr()?;
            self.expect(b',')?;
            let k = self.int()?;
            self.expect(b')')?;
            let k = usize::try_from(k).map_err(|_| GraphError::InvalidParameter(format!("negative power {k}")));
            k.and_then(|k| g.power(k))
        } else if self.eat_word("u") {
            let items = self.list()?;
            Graph::disjoint_union(&items)
        } else if self.eat_word("j") {
            let items = self.list()?;
            Graph::join(&items)
        } else if self.eat_word("T") {
            self.expect(b'(')?;
            let n = self.int()?;
            self.expect(b',')?;
            let r = self.int()?;
            self.expect(b')')?;
            construct(Kind::Turan, &[n, r])
        } else {
            let kind = match self.peek() {
                Some(b'K') => Kind::Complete,
                Some(b'C') => Kind::Cycle,
                Some(b'P') => Kind::Path,
                Some(b'E') => Kind::Empty,
                Some(_) => return self.fail("expected K, C, P, E, T, pow, u or j"),
                None => return self.fail("unexpected end of input"),
            };
            self.pos += 1;
            let n = self.int()?;
            construct(kind, &[n])
        };
        built.map_err(|e| match e {
            GraphError::InvalidParameter(m) => ExprError::Parse { position: start, message: m },
            other => ExprError::Graph(other),
        })
    }
}

pub fn parse(src: &str) -> Result<Graph, ExprError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let g = p.expr()?;
    if p.peek().is_some() {
        return p.fail("trailing input");
    }
    Ok(g)
}
