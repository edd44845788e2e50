use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Ident,
    Int,
    Float,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenKind::Keyword => "KEYWORD",
            TokenKind::Ident => "IDENT",
            TokenKind::Int => "INT",
            TokenKind::Float => "FLOAT",
            TokenKind::LParen => "LPAREN",
            TokenKind::RParen => "RPAREN",
            TokenKind::Comma => "COMMA",
            TokenKind::Semi => "SEMI",
            TokenKind::Eof => "EOF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
}

impl Token {
    /// Case-folded keyword text, if this is a keyword.
    pub fn keyword(&self) -> Option<String> {
        (self.kind == TokenKind::Keyword).then(|| {
            if self.lexeme == "pol" || self.lexeme == "pos" {
                self.lexeme.clone()
            } else {
                self.lexeme.to_ascii_lowercase()
            }
        })
    }
}

/// Case-insensitive keywords; `pol` and `pos` are matched exactly.
pub const KEYWORDS: [&str; 11] = [
    "cebits", "h", "x", "z", "s", "phase", "cnot", "toffoli", "u", "expect", "flip",
];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    tokens: Vec<Token>,
}

impl<'a> Lexer<'a> {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn offset(&self, pos: usize) -> usize {
        self.chars.get(pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: usize, column: usize) {
        let lexeme = self.src[self.offset(start)..self.offset(self.pos)].to_string();
        self.tokens.push(Token {
            kind,
            lexeme,
            line,
            column,
        });
    }

    fn digits(&mut self) -> usize {
        let mut n = 0;
        while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            n += 1;
        }
        n
    }

    /// `pi` at the cursor, not followed by an identifier character.
    fn at_pi(&self) -> bool {
        matches!(self.peek(0), Some('p' | 'P'))
            && matches!(self.peek(1), Some('i' | 'I'))
            && !self.peek(2).is_some_and(is_ident_char)
    }

    fn pi_suffix(&mut self) -> Result<(), ParseError> {
        self.bump();
        self.bump();
        if self.peek(0) == Some('/') {
            let (line, column) = (self.line, self.column);
            self.bump();
            if self.digits() == 0 {
                return Err(ParseError::new("expected integer denominator after '/'", line, column)
                    .expecting("INT"));
            }
        }
        Ok(())
    }

    fn number(&mut self, start: usize, line: usize, column: usize) -> Result<(), ParseError> {
        let mut kind = TokenKind::Int;
        if self.peek(0) == Some('-') {
            self.bump();
        }
        if self.at_pi() {
            self.pi_suffix()?;
            self.push(TokenKind::Float, start, line, column);
            return Ok(());
        }
        let int_digits = self.digits();
        let mut frac_digits = 0;
        if self.peek(0) == Some('.') && self.peek(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            frac_digits = self.digits();
            kind = TokenKind::Float;
        }
        if int_digits + frac_digits == 0 {
            return Err(ParseError::new("expected a number after '-'", line, column));
        }
        if matches!(self.peek(0), Some('e' | 'E')) {
            let sign = usize::from(matches!(self.peek(1), Some('+' | '-')));
            if self.peek(1 + sign).is_some_and(|c| c.is_ascii_digit()) {
                for _ in 0..=sign {
                    self.bump();
                }
                self.digits();
                kind = TokenKind::Float;
            }
        }
        if self.at_pi() {
            self.pi_suffix()?;
            kind = TokenKind::Float;
        }
        if self.peek(0).is_some_and(is_ident_char) {
            let (l, c) = (self.line, self.column);
            return Err(ParseError::new(
                format!("unexpected character {:?} after number", self.peek(0).unwrap()),
                l,
                c,
            ));
        }
        self.push(kind, start, line, column);
        Ok(())
    }

    fn word(&mut self, start: usize, line: usize, column: usize) -> Result<(), ParseError> {
        if self.at_pi() {
            self.pi_suffix()?;
            self.push(TokenKind::Float, start, line, column);
            return Ok(());
        }
        // `pos` directly followed by digits splits into keyword and index.
        if self.peek(0) == Some('p')
            && self.peek(1) == Some('o')
            && self.peek(2) == Some('s')
            && self.peek(3).is_some_and(|c| c.is_ascii_digit())
        {
            let mut end = self.pos + 3;
            while self.chars.get(end).is_some_and(|&(_, c)| c.is_ascii_digit()) {
                end += 1;
            }
            if !self.chars.get(end).is_some_and(|&(_, c)| is_ident_char(c)) {
                for _ in 0..3 {
                    self.bump();
                }
                self.push(TokenKind::Keyword, start, line, column);
                let (s, l, c) = (self.pos, self.line, self.column);
                self.digits();
                self.push(TokenKind::Int, s, l, c);
                return Ok(());
            }
        }
        while self.peek(0).is_some_and(is_ident_char) {
            self.bump();
        }
        let text = &self.src[self.offset(start)..self.offset(self.pos)];
        let kind = if text == "pol" || text == "pos" || KEYWORDS.contains(&text.to_ascii_lowercase().as_str()) {
            TokenKind::Keyword
        } else {
            TokenKind::Ident
        };
        self.push(kind, start, line, column);
        Ok(())
    }

    fn run(mut self) -> Result<Vec<Token>, ParseError> {
        while let Some(c) = self.peek(0) {
            let (start, line, column) = (self.pos, self.line, self.column);
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' => {
                    while self.peek(0).is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                '(' | ')' | ',' | ';' => {
                    self.bump();
                    let kind = match c {
                        '(' => TokenKind::LParen,
                        ')' => TokenKind::RParen,
                        ',' => TokenKind::Comma,
                        _ => TokenKind::Semi,
                    };
                    self.push(kind, start, line, column);
                }
                '-' | '0'..='9' | '.' => self.number(start, line, column)?,
                c if is_ident_start(c) => self.word(start, line, column)?,
                other => {
                    return Err(ParseError::new(
                        format!("illegal character {other:?}"),
                        line,
                        column,
                    ))
                }
            }
        }
        let (line, column) = eof_position(self.src);
        self.tokens.push(Token {
            kind: TokenKind::Eof,
            lexeme: String::new(),
            line,
            column,
        });
        Ok(self.tokens)
    }
}

/// Position of the last character of `src` (1:1 when empty).
pub(crate) fn eof_position(src: &str) -> (usize, usize) {
    let Some(last) = src.chars().last() else {
        return (1, 1);
    };
    let body = &src[..src.len() - last.len_utf8()];
    let line = body.matches('\n').count() + 1;
    let column = body.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Split `source` into tokens, ending with EOF.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    Lexer {
        chars: source.char_indices().collect(),
        src: source,
        pos: 0,
        line: 1,
        column: 1,
        tokens: Vec::new(),
    }
    .run()
}

/// Lexemes joined by single spaces; EOF is omitted.
pub fn render_tokens(tokens: &[Token]) -> String {
    tokens
        .iter()
        .filter(|t| t.kind != TokenKind::Eof)
        .map(|t| t.lexeme.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}
