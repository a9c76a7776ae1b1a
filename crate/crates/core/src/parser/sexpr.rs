//! S-expression reader for PDDL files.
//!
//! Tracks line/column positions (1-based) for diagnostics, skips `;` line
//! comments, and case-folds every symbol to lower case. Hyphens and other
//! symbol characters are preserved.

use super::ParserError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SExpr {
    Atom { text: String, pos: Pos },
    List { items: Vec<SExpr>, pos: Pos },
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom { pos, .. } | SExpr::List { pos, .. } => *pos,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom { text, .. } => Some(text.as_str()),
            SExpr::List { .. } => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List { items, .. } => Some(items.as_slice()),
            SExpr::Atom { .. } => None,
        }
    }

    /// First atom of a list, or the atom itself. Used for tag dispatch.
    pub fn head(&self) -> Option<&str> {
        match self {
            SExpr::Atom { text, .. } => Some(text.as_str()),
            SExpr::List { items, .. } => items.first().and_then(|e| e.as_atom()),
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read_expr(&mut self) -> Result<SExpr, ParserError> {
        self.skip_trivia();
        let pos = self.pos();
        match self.chars.peek() {
            None => Err(ParserError::syntax(pos, "unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => {
                            return Err(ParserError::syntax(self.pos(), "unclosed parenthesis"))
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List { items, pos });
                        }
                        Some(_) => items.push(self.read_expr()?),
                    }
                }
            }
            Some(')') => Err(ParserError::syntax(pos, "unexpected `)`")),
            Some(_) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    text.push(c.to_ascii_lowercase());
                    self.bump();
                }
                Ok(SExpr::Atom { text, pos })
            }
        }
    }
}

/// Reads the single top-level s-expression of a PDDL file. Trailing content
/// after the closing parenthesis is a syntax error.
pub fn read_file(text: &str) -> Result<SExpr, ParserError> {
    let mut reader = Reader::new(text);
    let expr = reader.read_expr()?;
    reader.skip_trivia();
    if reader.chars.peek().is_some() {
        return Err(ParserError::syntax(reader.pos(), "trailing content after top-level form"));
    }
    Ok(expr)
}

/// Reads a single s-expression from a fragment (used for `.dat` atom lines).
pub fn read_fragment(text: &str) -> Result<SExpr, ParserError> {
    let mut reader = Reader::new(text);
    let expr = reader.read_expr()?;
    reader.skip_trivia();
    if reader.chars.peek().is_some() {
        return Err(ParserError::syntax(reader.pos(), "trailing content after expression"));
    }
    Ok(expr)
}
