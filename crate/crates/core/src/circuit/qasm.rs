//! OpenQASM 3 emission and a parser for exactly the emitted subset.
//!
//! Accepted grammar (whitespace-insensitive, `//` line comments allowed):
//!
//! ```text
//! program  := "OPENQASM" version ";" [ "include" string ";" ] "qubit" "[" int "]" ident ";" stmt*
//! stmt     := ("h" | "x" | "z") operand ";"
//!           | "cz" operand "," operand ";"
//!           | "ctrl" "(" int ")" "@" "z" operand ("," operand)* ";"
//! operand  := ident "[" int "]"
//! ```
//!
//! `ctrl(k) @ z` takes exactly `k + 1` operands; `version` must be `3` or
//! `3.0`.

use std::fmt::Write as _;

use super::{CircuitIR, CircuitOp};
use crate::error::{Error, Result};
use crate::qstate::StateVector;

const REGISTER: &str = "q";

/// Renders `c` as OpenQASM 3. Opaque blocks are written through their
/// decomposition and fail without one.
pub fn emit_qasm(c: &CircuitIR) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str("include \"stdgates.inc\";\n");
    let _ = writeln!(out, "qubit[{}] {REGISTER};", c.n_qubits());
    for op in c.ops() {
        emit_op(&mut out, op)?;
    }
    Ok(out)
}

fn operands(qs: &[usize]) -> String {
    qs.iter()
        .map(|q| format!("{REGISTER}[{q}]"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn emit_op(out: &mut String, op: &CircuitOp) -> Result<()> {
    match op {
        CircuitOp::H(q) | CircuitOp::X(q) | CircuitOp::Z(q) => {
            let _ = writeln!(out, "{} {};", op.name(), operands(&[*q]));
        }
        CircuitOp::Cz { control, target } => {
            let _ = writeln!(out, "cz {};", operands(&[*control, *target]));
        }
        CircuitOp::Mcz(qs) => {
            let _ = writeln!(out, "ctrl({}) @ z {};", qs.len() - 1, operands(qs));
        }
        CircuitOp::Unitary {
            label,
            decomposition,
            ..
        } => {
            let ops = decomposition.as_ref().ok_or_else(|| {
                Error::NonEmissible(format!("opaque block `{label}` has no gate decomposition"))
            })?;
            let _ = writeln!(out, "// begin {label}");
            for d in ops {
                emit_op(out, d)?;
            }
            let _ = writeln!(out, "// end {label}");
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut toks = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push(Spanned {
                    tok: Tok::Ident(s),
                    line,
                    column,
                });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push(Spanned {
                    tok: Tok::Number(s),
                    line,
                    column,
                });
            } else if c == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(parse_error(line, column, "unterminated string"));
                }
                let s: String = chars[start..i].iter().collect();
                i += 1;
                toks.push(Spanned {
                    tok: Tok::Str(s),
                    line,
                    column,
                });
            } else if "[](),;@".contains(c) {
                toks.push(Spanned {
                    tok: Tok::Sym(c),
                    line,
                    column,
                });
                i += 1;
            } else {
                return Err(parse_error(
                    line,
                    column,
                    format!("unexpected character `{c}`"),
                ));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    register: Option<(String, usize)>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Spanned> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(parse_error(
                self.end.0,
                self.end.1,
                format!("expected {expected}, found end of input"),
            )),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Spanned> {
        let t = self.next(&format!("`{c}`"))?;
        if t.tok != Tok::Sym(c) {
            return Err(parse_error(
                t.line,
                t.column,
                format!("expected `{c}`, found {}", t.tok.describe()),
            ));
        }
        Ok(t)
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Spanned)> {
        let t = self.next(what)?;
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            other => Err(parse_error(
                t.line,
                t.column,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(usize, Spanned)> {
        let t = self.next(what)?;
        match &t.tok {
            Tok::Number(s) => s.parse::<usize>().map(|v| (v, t.clone())).map_err(|_| {
                parse_error(t.line, t.column, format!("expected {what}, found `{s}`"))
            }),
            other => Err(parse_error(
                t.line,
                t.column,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn header(&mut self) -> Result<usize> {
        let (kw, t) = self.expect_ident("`OPENQASM`")?;
        if kw != "OPENQASM" {
            return Err(parse_error(
                t.line,
                t.column,
                format!("expected `OPENQASM`, found `{kw}`"),
            ));
        }
        let v = self.next("version")?;
        match &v.tok {
            Tok::Number(s) if s == "3" || s == "3.0" => {}
            other => {
                return Err(parse_error(
                    v.line,
                    v.column,
                    format!("unsupported version {}", other.describe()),
                ))
            }
        }
        self.expect_sym(';')?;
        if matches!(self.peek(), Some(Spanned { tok: Tok::Ident(s), .. }) if s == "include") {
            self.pos += 1;
            let f = self.next("include file")?;
            if !matches!(f.tok, Tok::Str(_)) {
                return Err(parse_error(
                    f.line,
                    f.column,
                    format!("expected include file, found {}", f.tok.describe()),
                ));
            }
            self.expect_sym(';')?;
        }
        let (kw, t) = self.expect_ident("`qubit` declaration")?;
        if kw != "qubit" {
            return Err(parse_error(
                t.line,
                t.column,
                format!("expected `qubit` declaration, found `{kw}`"),
            ));
        }
        self.expect_sym('[')?;
        let (n, nt) = self.expect_int("register size")?;
        if n == 0 {
            return Err(parse_error(
                nt.line,
                nt.column,
                "register size must be positive",
            ));
        }
        self.expect_sym(']')?;
        let (name, _) = self.expect_ident("register name")?;
        self.expect_sym(';')?;
        self.register = Some((name, n));
        Ok(n)
    }

    fn operand(&mut self) -> Result<(usize, Spanned)> {
        let (name, t) = self.expect_ident("qubit operand")?;
        let (reg, size) = self.register.clone().expect("header parsed");
        if name != reg {
            return Err(parse_error(
                t.line,
                t.column,
                format!("unknown register `{name}`"),
            ));
        }
        self.expect_sym('[')?;
        let (q, qt) = self.expect_int("qubit index")?;
        if q >= size {
            return Err(parse_error(
                qt.line,
                qt.column,
                format!("qubit index {q} out of range for register of size {size}"),
            ));
        }
        self.expect_sym(']')?;
        Ok((q, t))
    }

    fn operands(&mut self) -> Result<(Vec<usize>, Vec<Spanned>)> {
        let mut qs = Vec::new();
        let mut spans = Vec::new();
        loop {
            let (q, t) = self.operand()?;
            if qs.contains(&q) {
                return Err(parse_error(
                    t.line,
                    t.column,
                    format!("duplicate qubit {q}"),
                ));
            }
            qs.push(q);
            spans.push(t);
            let sep = self.next("`,` or `;`")?;
            match sep.tok {
                Tok::Sym(',') => continue,
                Tok::Sym(';') => return Ok((qs, spans)),
                other => {
                    return Err(parse_error(
                        sep.line,
                        sep.column,
                        format!("expected `,` or `;`, found {}", other.describe()),
                    ))
                }
            }
        }
    }

    fn statement(&mut self) -> Result<CircuitOp> {
        let (name, t) = self.expect_ident("gate name")?;
        let arity = |qs: &[usize], want: usize| -> Result<()> {
            if qs.len() != want {
                return Err(parse_error(
                    t.line,
                    t.column,
                    format!("gate `{name}` takes {want} operand(s), got {}", qs.len()),
                ));
            }
            Ok(())
        };
        match name.as_str() {
            "h" | "x" | "z" => {
                let (qs, _) = self.operands()?;
                arity(&qs, 1)?;
                Ok(match name.as_str() {
                    "h" => CircuitOp::H(qs[0]),
                    "x" => CircuitOp::X(qs[0]),
                    _ => CircuitOp::Z(qs[0]),
                })
            }
            "cz" => {
                let (qs, _) = self.operands()?;
                arity(&qs, 2)?;
                Ok(CircuitOp::Cz {
                    control: qs[0],
                    target: qs[1],
                })
            }
            "ctrl" => {
                self.expect_sym('(')?;
                let (k, kt) = self.expect_int("control count")?;
                if k == 0 {
                    return Err(parse_error(
                        kt.line,
                        kt.column,
                        "control count must be positive",
                    ));
                }
                self.expect_sym(')')?;
                self.expect_sym('@')?;
                let (g, gt) = self.expect_ident("controlled gate")?;
                if g != "z" {
                    return Err(parse_error(
                        gt.line,
                        gt.column,
                        format!("unsupported controlled gate `{g}`"),
                    ));
                }
                let (qs, _) = self.operands()?;
                arity(&qs, k + 1)?;
                Ok(if k == 1 {
                    CircuitOp::Cz {
                        control: qs[0],
                        target: qs[1],
                    }
                } else {
                    CircuitOp::Mcz(qs)
                })
            }
            _ => Err(parse_error(
                t.line,
                t.column,
                format!("unknown gate `{name}`"),
            )),
        }
    }
}

/// Parses text in the emitter's dialect back into a circuit.
pub fn parse_qasm(text: &str) -> Result<CircuitIR> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    let mut p = Parser {
        toks,
        pos: 0,
        end: (lines, last_len + 1),
        register: None,
    };
    let n = p.header()?;
    let mut c = CircuitIR::new(n)?;
    while p.peek().is_some() {
        let op = p.statement()?;
        c.push(op)?;
    }
    Ok(c)
}

/// Parses `text` and applies it to `state`.
pub fn evaluate_qasm(text: &str, state: &StateVector) -> Result<StateVector> {
    parse_qasm(text)?.evaluate(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_basis_oracle, build_diffuser, build_zero_oracle, Steering};
    use crate::dense::max_abs_diff;
    use crate::steering::LinearOp;

    #[test]
    fn zero_oracle_text() {
        let text = emit_qasm(&build_zero_oracle(2).unwrap()).unwrap();
        assert_eq!(
            text,
            "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[2] q;\n\
             x q[0];\nx q[1];\ncz q[1], q[0];\nx q[0];\nx q[1];\n"
        );
        assert_eq!(text.matches("x q").count(), 4);
    }

    #[test]
    fn mcz_uses_control_modifier() {
        let text = emit_qasm(&build_zero_oracle(3).unwrap()).unwrap();
        assert!(text.contains("ctrl(2) @ z q[2], q[1], q[0];"));
    }

    #[test]
    fn round_trip() {
        for c in [
            build_basis_oracle("0110").unwrap(),
            build_diffuser(&Steering::Hadamard, 4).unwrap(),
            build_zero_oracle(5).unwrap(),
        ] {
            let text = emit_qasm(&c).unwrap();
            let back = parse_qasm(&text).unwrap();
            assert_eq!(back.ops(), c.ops());
            assert!(max_abs_diff(&back.to_dense().unwrap(), &c.to_dense().unwrap()) < 1e-12);
            assert_eq!(emit_qasm(&back).unwrap(), text);
        }
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = parse_qasm("OPENQASM 3.0;\nqubit[2] q;\n").unwrap();
        assert!(c.is_empty());
        let s = StateVector::hadamard(2).unwrap();
        assert_eq!(evaluate_qasm("OPENQASM 3;\nqubit[2] q;", &s).unwrap(), s);
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_qasm("OPENQASM 3.0;\nqubit[2] q;\nfoo q[0];\n").unwrap_err();
        match err {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (3, 1));
                assert!(message.contains("`foo`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_qasm("OPENQASM 3.0;\nqubit[2] q;\nh q[5];").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 3,
                column: 5,
                ..
            }
        ));
        let err = parse_qasm("OPENQASM 3.0;\nqubit[2] q;\nh q[0]").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_qasm("OPENQASM 2.0;").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 10,
                ..
            }
        ));
        assert!(parse_qasm("OPENQASM 3.0;\nqubit[2] q;\nctrl(2) @ z q[0], q[1];").is_err());
    }

    #[test]
    fn opaque_blocks_are_not_emissible() {
        let d = build_diffuser(&Steering::opaque("G", LinearOp::hadamard(2)), 2).unwrap();
        assert!(matches!(emit_qasm(&d), Err(Error::NonEmissible(_))));
    }
}
