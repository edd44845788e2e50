use std::fmt;

use crate::linalg::C64;
use crate::scenarios::{Pauli, PauliBasis};

/// `pol` or `posK`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operand {
    Pol,
    Pos(usize),
}

impl Operand {
    /// Register cebit: pol is cebit 0, posK is cebit K+1.
    pub fn cebit(self) -> usize {
        match self {
            Operand::Pol => 0,
            Operand::Pos(k) => k + 1,
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Pol => f.write_str("pol"),
            Operand::Pos(k) => write!(f, "pos{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimpleGate {
    H,
    X,
    Z,
    S,
}

impl SimpleGate {
    pub fn name(self) -> &'static str {
        match self {
            SimpleGate::H => "H",
            SimpleGate::X => "X",
            SimpleGate::Z => "Z",
            SimpleGate::S => "S",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    Simple(SimpleGate, Operand),
    Phase(Operand, f64),
    Cnot(Operand, Operand),
    Toffoli(Operand, Operand, Operand),
    /// Row-major 2×2 entries.
    U(Operand, [C64; 4]),
    Expect(Vec<Pauli>),
    Flip(Operand),
}

/// Source range, 1-based and inclusive of the terminating `;`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub end_line: usize,
    pub end_column: usize,
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: Span,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ast {
    pub declared_cebits: usize,
    pub statements: Vec<Statement>,
}

fn complex(z: C64) -> String {
    format!("({:?}, {:?})", z.re, z.im)
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementKind::Simple(g, t) => write!(f, "{} {t};", g.name()),
            StatementKind::Phase(t, phi) => write!(f, "PHASE {t} ({phi:?});"),
            StatementKind::Cnot(c, t) => write!(f, "CNOT {c} {t};"),
            StatementKind::Toffoli(a, b, t) => write!(f, "TOFFOLI {a} {b} {t};"),
            StatementKind::U(t, m) => write!(
                f,
                "U {t} ({}, {}, {}, {});",
                complex(m[0]),
                complex(m[1]),
                complex(m[2]),
                complex(m[3])
            ),
            StatementKind::Expect(letters) => {
                f.write_str("expect")?;
                for p in letters {
                    write!(f, " {}", p.letter())?;
                }
                f.write_str(";")
            }
            StatementKind::Flip(t) => write!(f, "flip {t};"),
        }
    }
}

impl fmt::Display for Ast {
    /// Canonical source text, one statement per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cebits {};", self.declared_cebits)?;
        for s in &self.statements {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}

impl Ast {
    pub fn pretty_print(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn basis_of(letters: &[Pauli]) -> PauliBasis {
    PauliBasis::new(letters.to_vec())
}
