//! Line-oriented certificate files.
//!
//! ```text
//! problem C5
//! basis-hash <hex>
//! block lambda 76
//! dense
//! <upper triangle, row by row>
//! block beta 33
//! factored <rows> 33
//! <outer factor, row by row>
//! core <rows>
//! <upper triangle of the core>
//! slack <coeff> <g1> <g2>
//! c <graph> <coeff>
//! target <graph> <coeff>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Numeric data may
//! wrap across lines. Omitted blocks are zero.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{basis_hash, block_basis, block_types, Block, CertError, Certificate, Problem, SlackTerm, LEVEL};
use crate::field::{Matrix, QSqrt2, SymMatrixQ};
use crate::flag::{GraphCombo, TypeSigma};
use crate::graph::{canonical_form, ColoredGraph};

struct Tokens<'a> {
    toks: Vec<(usize, bool, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for (k, t) in line.split_whitespace().enumerate() {
                toks.push((no + 1, k == 0, t));
            }
        }
        Tokens { toks, pos: 0 }
    }

    /// Line of the last consumed token.
    fn line(&self) -> usize {
        self.toks.get(self.pos.saturating_sub(1)).map_or(0, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CertError> {
        Err(CertError::Parse { line: self.line(), msg: msg.into() })
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Next token, which must start a line.
    fn keyword(&mut self) -> Result<&'a str, CertError> {
        match self.toks.get(self.pos) {
            Some(&(_, true, t)) => {
                self.pos += 1;
                Ok(t)
            }
            Some(&(line, false, t)) => {
                Err(CertError::Parse { line, msg: format!("expected a keyword at line start, found `{t}`") })
            }
            None => self.err("unexpected end of file"),
        }
    }

    /// Next token on the same line as the previous one.
    fn arg(&mut self, what: &str) -> Result<&'a str, CertError> {
        match self.toks.get(self.pos) {
            Some(&(_, false, t)) => {
                self.pos += 1;
                Ok(t)
            }
            _ => self.err(format!("missing {what}")),
        }
    }

    fn usize_arg(&mut self, what: &str) -> Result<usize, CertError> {
        let t = self.arg(what)?;
        t.parse().or_else(|_| self.err(format!("bad count `{t}`")))
    }

    fn graph_arg(&mut self, what: &str) -> Result<ColoredGraph, CertError> {
        let t = self.arg(what)?;
        t.parse().or_else(|e| self.err(format!("{e}")))
    }

    fn coeff_arg(&mut self, what: &str) -> Result<QSqrt2, CertError> {
        let t = self.arg(what)?;
        t.parse().or_else(|_| self.err(format!("bad number `{t}`")))
    }

    fn end_of_line(&self) -> Result<(), CertError> {
        match self.toks.get(self.pos) {
            Some(&(line, false, t)) => Err(CertError::Parse { line, msg: format!("unexpected `{t}`") }),
            _ => Ok(()),
        }
    }

    /// `count` numbers, possibly spanning lines.
    fn numbers(&mut self, count: usize) -> Result<Vec<QSqrt2>, CertError> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let Some(&(line, _, t)) = self.toks.get(self.pos) else {
                return self.err(format!("expected {count} numbers, file ends after {}", out.len()));
            };
            match t.parse::<QSqrt2>() {
                Ok(v) => out.push(v),
                Err(_) => return Err(CertError::Parse { line, msg: format!("bad number `{t}`") }),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}


fn upper_to_matrix(dim: usize, upper: Vec<QSqrt2>) -> Result<Matrix, CertError> {
    Ok(SymMatrixQ::from_upper(dim, upper)?.dense().clone())
}

/// Parses a certificate, resolving block dimensions and the basis hash
/// against the generated bases.
pub fn parse_certificate(text: &str) -> Result<Certificate, CertError> {
    let mut tk = Tokens::new(text);
    if tk.keyword()? != "problem" {
        return tk.err("file must start with `problem C5|C7`");
    }
    let problem: Problem = tk.arg("problem name")?.parse().or_else(|e: String| tk.err(e))?;
    tk.end_of_line()?;

    let mut cert = Certificate::empty(problem)?;
    cert.basis_hash = None;
    let mut seen_blocks = Vec::new();
    let mut c = BTreeMap::new();
    let mut target = GraphCombo::new(LEVEL);

    while !tk.done() {
        let kw = tk.keyword()?;
        match kw {
            "basis-hash" => {
                let found = tk.arg("hash")?.to_string();
                tk.end_of_line()?;
                let expected = basis_hash(problem)?;
                if found != expected {
                    return Err(CertError::HashMismatch { expected, found });
                }
                cert.basis_hash = Some(found);
            }
            "block" => {
                let name = tk.arg("block type")?;
                let sigma: TypeSigma = match name {
                    "lambda" | "beta" | "rho" => name.parse().expect("known type"),
                    _ => return tk.err(format!("unknown block type `{name}`")),
                };
                let dim = tk.usize_arg("block dimension")?;
                tk.end_of_line()?;
                let want = block_basis(problem, &sigma)?.len();
                if dim != want {
                    return tk.err(format!("block {name} has dimension {dim}, basis has {want}"));
                }
                if seen_blocks.contains(&sigma) {
                    return tk.err(format!("block {name} given twice"));
                }
                let matrix = match tk.keyword()? {
                    "dense" => {
                        tk.end_of_line()?;
                        let upper = tk.numbers(dim * (dim + 1) / 2)?;
                        SymMatrixQ::from_upper(dim, upper)?
                    }
                    "factored" => {
                        let rows = tk.usize_arg("row count")?;
                        let cols = tk.usize_arg("column count")?;
                        tk.end_of_line()?;
                        if cols != dim {
                            return tk.err(format!("outer factor has {cols} columns, block dimension is {dim}"));
                        }
                        let outer = Matrix::from_rows(tk.numbers(rows * cols)?.chunks(cols.max(1)).map(<[_]>::to_vec).collect())?;
                        if tk.keyword()? != "core" {
                            return tk.err("expected `core <dim>` after the outer factor");
                        }
                        let r = tk.usize_arg("core dimension")?;
                        tk.end_of_line()?;
                        if r != rows {
                            return tk.err(format!("core dimension {r} does not match {rows} factor rows"));
                        }
                        let core = upper_to_matrix(r, tk.numbers(r * (r + 1) / 2)?)?;
                        let outer = if rows == 0 { Matrix::zeros(0, cols) } else { outer };
                        SymMatrixQ::factored(outer, core)?
                    }
                    other => return tk.err(format!("expected `dense` or `factored`, found `{other}`")),
                };
                let slot = block_types().iter().position(|t| *t == sigma).expect("pair type");
                cert.blocks[slot] = Block { sigma: sigma.clone(), matrix };
                seen_blocks.push(sigma);
            }
            "slack" => {
                let coeff = tk.coeff_arg("slack coefficient")?;
                let g1 = tk.graph_arg("first slack graph")?;
                let g2 = tk.graph_arg("second slack graph")?;
                tk.end_of_line()?;
                if coeff.is_negative() {
                    return tk.err(format!("negative slack coefficient {coeff}"));
                }
                if 2 + g1.order() + g2.order() > LEVEL {
                    return tk.err(format!("slack product {g1} x {g2} exceeds {LEVEL} vertices"));
                }
                cert.slacks.push(SlackTerm { coeff, g1, g2 });
            }
            "c" | "target" => {
                let g = tk.graph_arg("graph")?;
                let coeff = tk.coeff_arg("coefficient")?;
                tk.end_of_line()?;
                if g.order() != LEVEL {
                    return tk.err(format!("graph {g} does not have {LEVEL} vertices"));
                }
                let key = canonical_form(&g);
                if kw == "c" {
                    if coeff.is_negative() {
                        return tk.err(format!("negative c_H for {g}: {coeff}"));
                    }
                    if c.insert(key, coeff).is_some() {
                        return tk.err(format!("c_H for {g} given twice"));
                    }
                } else {
                    if target.terms().contains_key(&key) {
                        return tk.err(format!("target coefficient for {g} given twice"));
                    }
                    target.add_term(key, coeff);
                }
            }
            other => return tk.err(format!("unknown keyword `{other}`")),
        }
    }
    c.retain(|_, v: &mut QSqrt2| !v.is_zero());
    cert.c = c;
    cert.target = target;
    Ok(cert)
}

fn write_upper(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = (i..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Serializes a certificate; [`parse_certificate`] inverts this exactly.
pub fn emit_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    writeln!(out, "problem {}", cert.problem).unwrap();
    if let Some(h) = &cert.basis_hash {
        writeln!(out, "basis-hash {h}").unwrap();
    }
    for b in &cert.blocks {
        writeln!(out, "block {} {}", b.sigma, b.matrix.dim()).unwrap();
        match b.matrix.factorization() {
            Some(f) => {
                writeln!(out, "factored {} {}", f.outer.rows(), f.outer.cols()).unwrap();
                for i in 0..f.outer.rows() {
                    let row: Vec<String> = (0..f.outer.cols()).map(|j| f.outer.get(i, j).to_string()).collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
                writeln!(out, "core {}", f.core.rows()).unwrap();
                write_upper(&mut out, &f.core);
            }
            None => {
                out.push_str("dense\n");
                write_upper(&mut out, b.matrix.dense());
            }
        }
    }
    for s in &cert.slacks {
        writeln!(out, "slack {} {} {}", s.coeff, s.g1, s.g2).unwrap();
    }
    for (k, v) in &cert.c {
        writeln!(out, "c {k} {v}").unwrap();
    }
    for (k, v) in cert.target.terms() {
        writeln!(out, "target {k} {v}").unwrap();
    }
    out
}
