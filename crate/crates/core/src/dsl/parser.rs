use std::f64::consts::PI;

use super::ast::{basis_of, Ast, Operand, SimpleGate, Span, Statement, StatementKind};
use super::lexer::{tokenize, Token, TokenKind};
use super::ParseError;
use crate::compiler::{Gate, GateCircuit};
use crate::error::Result as CebitResult;
use crate::linalg::{Unitary2, C64, UNITARY_TOL};
use crate::scenarios::Pauli;
use crate::state::DEFAULT_MAX_CEBITS;

type PResult<T> = Result<T, ParseError>;

const STATEMENT_START: &str = "H, X, Z, S, PHASE, CNOT, TOFFOLI, U, expect or flip";

/// Value of an INT or FLOAT lexeme, including `pi` multiples.
fn numeric_value(lexeme: &str) -> Option<f64> {
    let lower = lexeme.to_ascii_lowercase();
    let Some(at) = lower.find("pi") else {
        return lower.parse::<f64>().ok();
    };
    let (coef, rest) = lower.split_at(at);
    let coef = match coef {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().ok()?,
    };
    let den = match rest.strip_prefix("pi")?.strip_prefix('/') {
        None => 1.0,
        Some(d) => d.parse::<u64>().ok()? as f64,
    };
    Some(coef * PI / den)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    n: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> &'t Token {
        let t = self.peek();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::new(message, t.line, t.column)
    }

    fn describe(t: &Token) -> String {
        match t.kind {
            TokenKind::Eof => "end of input".into(),
            k => format!("{k} {:?}", t.lexeme),
        }
    }

    fn unexpected(t: &Token, expected: &str) -> ParseError {
        Self::error_at(t, format!("unexpected {}", Self::describe(t))).expecting(expected)
    }

    fn expect_kind(&mut self, kind: TokenKind, what: &str) -> PResult<&'t Token> {
        let t = self.peek();
        if t.kind == kind {
            Ok(self.advance())
        } else {
            Err(Self::unexpected(t, what))
        }
    }

    fn is_keyword(t: &Token, kw: &str) -> bool {
        t.keyword().as_deref() == Some(kw)
    }

    fn integer(&mut self, what: &str) -> PResult<usize> {
        let t = self.expect_kind(TokenKind::Int, what)?;
        t.lexeme
            .parse::<usize>()
            .map_err(|_| Self::error_at(t, format!("integer {} out of range", t.lexeme)))
    }

    fn number(&mut self) -> PResult<f64> {
        let t = self.peek();
        if !matches!(t.kind, TokenKind::Int | TokenKind::Float) {
            return Err(Self::unexpected(t, "number"));
        }
        self.advance();
        match numeric_value(&t.lexeme) {
            Some(v) if v.is_finite() => Ok(v),
            _ => Err(Self::error_at(t, format!("invalid number {:?}", t.lexeme))),
        }
    }

    fn complex(&mut self) -> PResult<C64> {
        if self.peek().kind == TokenKind::LParen {
            self.advance();
            let re = self.number()?;
            self.expect_kind(TokenKind::Comma, "','")?;
            let im = self.number()?;
            self.expect_kind(TokenKind::RParen, "')'")?;
            Ok(C64::new(re, im))
        } else {
            Ok(C64::new(self.number()?, 0.0))
        }
    }

    fn operand(&mut self) -> PResult<Operand> {
        let t = self.peek();
        let op = if Self::is_keyword(t, "pol") {
            self.advance();
            Operand::Pol
        } else if Self::is_keyword(t, "pos") {
            self.advance();
            Operand::Pos(self.integer("position index")?)
        } else {
            return Err(Self::unexpected(t, "operand (pol or posK)"));
        };
        if op.cebit() >= self.n {
            return Err(Self::error_at(
                t,
                format!(
                    "operand {op} requires n ≥ {} (declared cebits {})",
                    op.cebit() + 1,
                    self.n
                ),
            ));
        }
        Ok(op)
    }

    /// Operands that must name distinct cebits.
    fn operands<const K: usize>(&mut self) -> PResult<[Operand; K]> {
        let mut ops = [Operand::Pol; K];
        for i in 0..K {
            let t = self.peek();
            ops[i] = self.operand()?;
            if ops[..i].contains(&ops[i]) {
                return Err(Self::error_at(t, format!("operand {} repeated", ops[i])));
            }
        }
        Ok(ops)
    }

    fn basis_letters(&mut self) -> PResult<Vec<Pauli>> {
        let mut letters = Vec::new();
        loop {
            let t = self.peek();
            match t.kind {
                TokenKind::Semi => {
                    if letters.len() != self.n {
                        return Err(Self::error_at(
                            t,
                            format!("expected {} basis letters, found {}", self.n, letters.len()),
                        ));
                    }
                    return Ok(letters);
                }
                TokenKind::Keyword | TokenKind::Ident => {
                    let mut chars = t.lexeme.chars();
                    let p = match (chars.next().and_then(Pauli::from_letter), chars.next()) {
                        (Some(p), None) => p,
                        _ => return Err(Self::unexpected(t, "basis letter x, y, z or i")),
                    };
                    if letters.len() == self.n {
                        return Err(Self::error_at(
                            t,
                            format!("expected {} basis letters, found more", self.n),
                        ));
                    }
                    letters.push(p);
                    self.advance();
                }
                _ => return Err(Self::unexpected(t, "basis letter or ';'")),
            }
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        let head = self.advance();
        let kw = head.keyword().unwrap_or_default();
        let kind = match kw.as_str() {
            "h" | "x" | "z" | "s" => {
                let g = match kw.as_str() {
                    "h" => SimpleGate::H,
                    "x" => SimpleGate::X,
                    "z" => SimpleGate::Z,
                    _ => SimpleGate::S,
                };
                StatementKind::Simple(g, self.operand()?)
            }
            "phase" => {
                let t = self.operand()?;
                self.expect_kind(TokenKind::LParen, "'('")?;
                let phi = self.number()?;
                self.expect_kind(TokenKind::RParen, "')'")?;
                StatementKind::Phase(t, phi)
            }
            "cnot" => {
                let [c, t] = self.operands::<2>()?;
                StatementKind::Cnot(c, t)
            }
            "toffoli" => {
                let [a, b, t] = self.operands::<3>()?;
                StatementKind::Toffoli(a, b, t)
            }
            "u" => {
                let t = self.operand()?;
                self.expect_kind(TokenKind::LParen, "'('")?;
                let mut m = [C64::new(0.0, 0.0); 4];
                for (i, slot) in m.iter_mut().enumerate() {
                    if i > 0 {
                        self.expect_kind(TokenKind::Comma, "','")?;
                    }
                    *slot = self.complex()?;
                }
                self.expect_kind(TokenKind::RParen, "')'")?;
                let u = Unitary2::new(m[0], m[1], m[2], m[3]);
                let dev = u.unitarity_deviation();
                if dev > UNITARY_TOL {
                    return Err(Self::error_at(
                        head,
                        format!("U matrix is not unitary (deviation {dev:.3e})"),
                    ));
                }
                StatementKind::U(t, m)
            }
            "expect" => StatementKind::Expect(self.basis_letters()?),
            "flip" => StatementKind::Flip(self.operand()?),
            "cebits" => {
                return Err(Self::error_at(head, "duplicate cebits declaration"));
            }
            _ => return Err(Self::unexpected(head, STATEMENT_START)),
        };
        let semi = self.expect_kind(TokenKind::Semi, "';'")?;
        Ok(Statement {
            kind,
            span: Span {
                line: head.line,
                column: head.column,
                end_line: semi.line,
                end_column: semi.column,
            },
        })
    }

    fn program(&mut self) -> PResult<Ast> {
        let head = self.peek();
        if !Self::is_keyword(head, "cebits") {
            return Err(Self::unexpected(head, "'cebits' declaration"));
        }
        self.advance();
        let count_tok = self.peek();
        let n = self.integer("cebit count")?;
        if n == 0 || n > DEFAULT_MAX_CEBITS {
            return Err(Self::error_at(
                count_tok,
                format!("cebit count {n} outside 1..={DEFAULT_MAX_CEBITS}"),
            ));
        }
        self.n = n;
        self.expect_kind(TokenKind::Semi, "';'")?;
        let mut statements = Vec::new();
        while self.peek().kind != TokenKind::Eof {
            statements.push(self.statement()?);
        }
        Ok(Ast {
            declared_cebits: n,
            statements,
        })
    }
}

/// Parse a token stream ending in EOF.
pub fn parse(tokens: &[Token]) -> Result<Ast, ParseError> {
    match tokens.last() {
        Some(t) if t.kind == TokenKind::Eof => {}
        Some(t) => return Err(ParseError::new("token stream does not end with EOF", t.line, t.column)),
        None => return Err(ParseError::new("empty token stream", 1, 1)),
    }
    Parser {
        tokens,
        pos: 0,
        n: 0,
    }
    .program()
}

/// Tokenize and parse.
pub fn parse_source(source: &str) -> Result<Ast, ParseError> {
    parse(&tokenize(source)?)
}

/// Lower the syntax tree to the gate IR.
pub fn to_circuit(ast: &Ast) -> CebitResult<GateCircuit> {
    let gates = ast
        .statements
        .iter()
        .map(|s| match &s.kind {
            StatementKind::Simple(g, t) => {
                let target = t.cebit();
                match g {
                    SimpleGate::H => Gate::H { target },
                    SimpleGate::X => Gate::X { target },
                    SimpleGate::Z => Gate::Z { target },
                    SimpleGate::S => Gate::S { target },
                }
            }
            StatementKind::Phase(t, phase) => Gate::Phase {
                target: t.cebit(),
                phase: *phase,
            },
            StatementKind::Cnot(c, t) => Gate::Cnot {
                control: c.cebit(),
                target: t.cebit(),
            },
            StatementKind::Toffoli(a, b, t) => Gate::Toffoli {
                controls: [a.cebit(), b.cebit()],
                target: t.cebit(),
            },
            StatementKind::U(t, m) => Gate::U2 {
                target: t.cebit(),
                matrix: Unitary2::new(m[0], m[1], m[2], m[3]),
            },
            StatementKind::Expect(letters) => Gate::Expect {
                basis: basis_of(letters),
            },
            StatementKind::Flip(t) => Gate::X { target: t.cebit() },
        })
        .collect();
    GateCircuit::from_gates(ast.declared_cebits, gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_statements() {
        let ast = parse_source("cebits 3; H pos1; CNOT pos1 pol; expect x y y;").unwrap();
        assert_eq!(ast.declared_cebits, 3);
        assert_eq!(ast.statements.len(), 3);
        assert_eq!(
            ast.statements[1].kind,
            StatementKind::Cnot(Operand::Pos(1), Operand::Pol)
        );
    }

    #[test]
    fn operand_bound() {
        let err = parse_source("cebits 2; TOFFOLI pos1 pos0 pol;").unwrap_err();
        assert!(err.message.contains("operand pos1 requires n ≥ 3"), "{err}");
        assert_eq!((err.line, err.column), (1, 19));
    }

    #[test]
    fn basis_arity() {
        let err = parse_source("cebits 3; expect x y;").unwrap_err();
        assert!(err.message.contains("expected 3 basis letters"), "{err}");
        assert_eq!(err.column, 21);
    }

    #[test]
    fn duplicate_and_missing_declaration() {
        let err = parse_source("cebits 1; cebits 1;").unwrap_err();
        assert!(err.message.contains("duplicate"));
        assert_eq!(err.column, 11);
        let err = parse_source("H pol;").unwrap_err();
        assert_eq!(err.expected.as_deref(), Some("'cebits' declaration"));
        let err = parse_source("").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn operand_mapping() {
        let c = to_circuit(&parse_source("cebits 1; H pol;").unwrap()).unwrap();
        assert_eq!(c.gates(), &[Gate::H { target: 0 }]);
        let c = to_circuit(&parse_source("cebits 3; flip pos0;").unwrap()).unwrap();
        assert_eq!(c.gates(), &[Gate::X { target: 1 }]);
    }

    #[test]
    fn angles() {
        let ast = parse_source("cebits 1; PHASE pol (pi/8); PHASE pol (-3pi/4); PHASE pol (2);").unwrap();
        let phases: Vec<f64> = ast
            .statements
            .iter()
            .map(|s| match s.kind {
                StatementKind::Phase(_, p) => p,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(phases, vec![PI / 8.0, -3.0 * PI / 4.0, 2.0]);
    }

    #[test]
    fn u_entries_and_unitarity() {
        let ast = parse_source("cebits 1; U pol ((0, 1), 0, 0, (0,-1));").unwrap();
        assert!(matches!(ast.statements[0].kind, StatementKind::U(Operand::Pol, _)));
        assert!(parse_source("cebits 1; U pol (1, 1, 0, 1);").is_err());
    }

    #[test]
    fn keywords_fold_case_operands_do_not() {
        assert!(parse_source("CEBITS 1; h pol; Expect Z;").is_ok());
        let err = parse_source("cebits 1; H Pol;").unwrap_err();
        assert_eq!(err.column, 13);
    }

    #[test]
    fn pretty_print_round_trip() {
        let src = "cebits 3; H pos1; PHASE pos0 (0.1); U pol ((0.6,0), (0, 0.8), (0, 0.8), 0.6); TOFFOLI pos1 pos0 pol; expect x Y i; flip pol;";
        let ast = parse_source(src).unwrap();
        assert_eq!(parse_source(&ast.pretty_print()).unwrap(), ast);
    }
}
