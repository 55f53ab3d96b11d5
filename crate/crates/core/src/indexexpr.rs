//! A small index-notation expression language: sums of products of named
//! tensor references with explicit index tokens, an antisymmetrization
//! bracket, and conjugation of named tensors.
//!
//! Index tokens spell variance first (`^` upper, `_` lower) and mark
//! antiholomorphic indices with `~`: `R[_a,_~b,_c,_~d] * w[^~b,^a]`. An index
//! name appearing twice in a term with opposite variance and equal kind is
//! contracted; metric contraction is always explicit (write `h[...]` for the
//! pairing, `h` with upper indices resolves to the inverse). A bracket inside
//! a reference antisymmetrizes the listed slots: `T[[_a,_b],_~c]`.
//!
//! Diagnostics always carry a byte offset into the input text.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::levi::LeviForm;
use crate::tensor::{IndexSlot, MultiTensor, SlotKind, TensorError, Variance};

#[derive(Debug, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("at byte {offset}: tensor `{name}` is not bound")]
    Unbound { name: String, offset: usize },
    #[error("at byte {offset}: `{name}` slot {slot} is {found}, reference says {expected}")]
    SignatureMismatch {
        name: String,
        offset: usize,
        slot: usize,
        expected: String,
        found: String,
    },
    #[error("at byte {offset}: `{name}` has rank {rank}, reference names {named} indices")]
    ArityMismatch { name: String, offset: usize, rank: usize, named: usize },
    #[error("at byte {offset}: tensors of dimension {found} mixed with dimension {expected}")]
    DimensionMismatch { offset: usize, expected: usize, found: usize },
    #[error("terms have different free indices: `{first}` vs `{second}`")]
    FreeIndexMismatch { first: String, second: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// One index token: variance, kind, name, source offset.
#[derive(Debug, Clone)]
pub struct IndexToken {
    pub name: String,
    pub kind: SlotKind,
    pub variance: Variance,
    pub offset: usize,
}

impl IndexToken {
    fn slot(&self) -> IndexSlot {
        IndexSlot::new(self.kind, self.variance)
    }
}

impl PartialEq for IndexToken {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.kind == other.kind && self.variance == other.variance
    }
}

/// A named tensor reference with its index tokens and antisymmetrization
/// groups (each group lists slot positions).
#[derive(Debug, Clone)]
pub struct TensorRef {
    pub name: String,
    pub conjugated: bool,
    pub indices: Vec<IndexToken>,
    pub groups: Vec<Vec<usize>>,
    pub offset: usize,
}

impl PartialEq for TensorRef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.conjugated == other.conjugated
            && self.indices == other.indices
            && self.groups == other.groups
    }
}

#[derive(Debug, Clone)]
pub enum Factor {
    Scalar { value: f64, offset: usize },
    Ref(TensorRef),
}

impl PartialEq for Factor {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Factor::Scalar { value: a, .. }, Factor::Scalar { value: b, .. }) => a == b,
            (Factor::Ref(a), Factor::Ref(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub negated: bool,
    pub factors: Vec<Factor>,
}

/// Parsed expression: a signed sum of products.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexExpr {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Star,
    Plus,
    Minus,
    Caret,
    Underscore,
    Tilde,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '^' => Tok::Caret,
            '_' => Tok::Underscore,
            '~' => Tok::Tilde,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'\'')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let value: f64 = text[start..i].parse().map_err(|_| ParseError {
                    offset: start,
                    message: format!("invalid number `{}`", &text[start..i]),
                })?;
                out.push((Tok::Number(value), start));
                continue;
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<usize, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some((t, o)) if t == tok => Ok(o),
            Some((t, o)) => Err(ParseError {
                offset: o,
                message: format!("expected {what}, found {t:?}"),
            }),
            None => Err(ParseError { offset, message: format!("expected {what}, found end of input") }),
        }
    }

    fn parse_expr(&mut self) -> Result<IndexExpr, ParseError> {
        let mut terms = Vec::new();
        let mut negated = matches!(self.peek(), Some(Tok::Minus));
        if negated || matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
        }
        loop {
            terms.push(self.parse_term(negated)?);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negated = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negated = true;
                }
                None => break,
                Some(t) => {
                    return Err(ParseError {
                        offset: self.offset(),
                        message: format!("expected `+`, `-`, or end of input, found {t:?}"),
                    })
                }
            }
        }
        Ok(IndexExpr { terms })
    }

    fn parse_term(&mut self, negated: bool) -> Result<Term, ParseError> {
        let mut factors = vec![self.parse_factor()?];
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            factors.push(self.parse_factor()?);
        }
        Ok(Term { negated, factors })
    }

    fn parse_factor(&mut self) -> Result<Factor, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some((Tok::Number(value), o)) => Ok(Factor::Scalar { value, offset: o }),
            Some((Tok::Ident(name), o)) => {
                if name == "conj" && matches!(self.peek(), Some(Tok::LParen)) {
                    self.bump();
                    let inner_offset = self.offset();
                    let inner = match self.bump() {
                        Some((Tok::Ident(n), _)) => n,
                        _ => {
                            return Err(ParseError {
                                offset: inner_offset,
                                message: "conj(...) takes a tensor name".to_string(),
                            })
                        }
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    let (indices, groups) = self.parse_index_list()?;
                    Ok(Factor::Ref(TensorRef {
                        name: inner,
                        conjugated: true,
                        indices,
                        groups,
                        offset: o,
                    }))
                } else {
                    let (indices, groups) = self.parse_index_list()?;
                    Ok(Factor::Ref(TensorRef { name, conjugated: false, indices, groups, offset: o }))
                }
            }
            Some((t, o)) => Err(ParseError {
                offset: o,
                message: format!("expected a tensor reference or number, found {t:?}"),
            }),
            None => Err(ParseError { offset, message: "unexpected end of input".to_string() }),
        }
    }

    fn parse_index_list(&mut self) -> Result<(Vec<IndexToken>, Vec<Vec<usize>>), ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut indices = Vec::new();
        let mut groups = Vec::new();
        loop {
            if matches!(self.peek(), Some(Tok::LBracket)) {
                self.bump();
                let start = indices.len();
                loop {
                    indices.push(self.parse_index()?);
                    match self.bump() {
                        Some((Tok::Comma, _)) => continue,
                        Some((Tok::RBracket, _)) => break,
                        Some((t, o)) => {
                            return Err(ParseError {
                                offset: o,
                                message: format!("expected `,` or `]` in antisym group, found {t:?}"),
                            })
                        }
                        None => {
                            return Err(ParseError {
                                offset: self.end,
                                message: "unterminated antisym group".to_string(),
                            })
                        }
                    }
                }
                groups.push((start..indices.len()).collect());
            } else {
                indices.push(self.parse_index()?);
            }
            match self.bump() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::RBracket, _)) => break,
                Some((t, o)) => {
                    return Err(ParseError {
                        offset: o,
                        message: format!("expected `,` or `]`, found {t:?}"),
                    })
                }
                None => {
                    return Err(ParseError {
                        offset: self.end,
                        message: "unterminated index list".to_string(),
                    })
                }
            }
        }
        Ok((indices, groups))
    }

    fn parse_index(&mut self) -> Result<IndexToken, ParseError> {
        let offset = self.offset();
        let variance = match self.bump() {
            Some((Tok::Caret, _)) => Variance::Upper,
            Some((Tok::Underscore, _)) => Variance::Lower,
            Some((t, o)) => {
                return Err(ParseError {
                    offset: o,
                    message: format!("expected `^` or `_` starting an index, found {t:?}"),
                })
            }
            None => {
                return Err(ParseError { offset, message: "expected an index".to_string() })
            }
        };
        let kind = if matches!(self.peek(), Some(Tok::Tilde)) {
            self.bump();
            SlotKind::Antiholomorphic
        } else {
            SlotKind::Holomorphic
        };
        let name_offset = self.offset();
        match self.bump() {
            Some((Tok::Ident(name), o)) => Ok(IndexToken { name, kind, variance, offset: o }),
            Some((t, o)) => Err(ParseError {
                offset: o,
                message: format!("expected an index name, found {t:?}"),
            }),
            None => Err(ParseError { offset: name_offset, message: "expected an index name".to_string() }),
        }
    }
}

fn validate(expr: &IndexExpr) -> Result<(), ParseError> {
    let mut first_free: Option<Vec<(String, SlotKind, Variance)>> = None;
    for term in &expr.terms {
        let mut sites: HashMap<&str, Vec<&IndexToken>> = HashMap::new();
        for factor in &term.factors {
            if let Factor::Ref(r) = factor {
                for tok in &r.indices {
                    sites.entry(tok.name.as_str()).or_default().push(tok);
                }
                for group in &r.groups {
                    let first = &r.indices[group[0]];
                    for &slot in group {
                        let tok = &r.indices[slot];
                        if tok.kind != first.kind || tok.variance != first.variance {
                            return Err(ParseError {
                                offset: tok.offset,
                                message: format!(
                                    "antisym group mixes kind or variance at index `{}`",
                                    tok.name
                                ),
                            });
                        }
                    }
                }
            }
        }
        let mut free: Vec<(String, SlotKind, Variance)> = Vec::new();
        let mut order: Vec<&IndexToken> = Vec::new();
        for toks in sites.values() {
            order.push(toks[0]);
        }
        order.sort_by_key(|t| t.offset);
        for tok in order {
            let toks = &sites[tok.name.as_str()];
            match toks.len() {
                1 => free.push((tok.name.clone(), tok.kind, tok.variance)),
                2 => {
                    let (a, b) = (toks[0], toks[1]);
                    if a.kind != b.kind {
                        return Err(ParseError {
                            offset: b.offset,
                            message: format!(
                                "index `{}` contracted across different kinds",
                                b.name
                            ),
                        });
                    }
                    if a.variance == b.variance {
                        return Err(ParseError {
                            offset: b.offset,
                            message: format!(
                                "repeated index `{}` with the same variance",
                                b.name
                            ),
                        });
                    }
                }
                k => {
                    return Err(ParseError {
                        offset: toks[2].offset,
                        message: format!("index `{}` appears {k} times", tok.name),
                    })
                }
            }
        }
        match &first_free {
            None => first_free = Some(free),
            Some(expected) => {
                let mut a = expected.clone();
                let mut b = free;
                a.sort();
                b.sort();
                if a != b {
                    return Err(ParseError {
                        offset: 0,
                        message: format!(
                            "terms have different free indices: {:?} vs {:?}",
                            a.iter().map(|(n, _, _)| n).collect::<Vec<_>>(),
                            b.iter().map(|(n, _, _)| n).collect::<Vec<_>>()
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Parses an expression; the grammar is LL(1) and whitespace-insensitive.
/// Index multiplicity, contraction pairing, and antisym-group uniformity are
/// checked here so every diagnostic carries a byte offset.
pub fn parse(text: &str) -> Result<IndexExpr, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.len() };
    if parser.peek().is_none() {
        return Err(ParseError { offset: 0, message: "empty expression".to_string() });
    }
    let expr = parser.parse_expr()?;
    validate(&expr)?;
    Ok(expr)
}

fn format_index(tok: &IndexToken, out: &mut String) {
    out.push(match tok.variance {
        Variance::Upper => '^',
        Variance::Lower => '_',
    });
    if tok.kind == SlotKind::Antiholomorphic {
        out.push('~');
    }
    out.push_str(&tok.name);
}

/// Canonical text of an expression; `parse(format(e))` reproduces `e`.
pub fn format(expr: &IndexExpr) -> String {
    let mut out = String::new();
    for (ti, term) in expr.terms.iter().enumerate() {
        if ti == 0 {
            if term.negated {
                out.push_str("- ");
            }
        } else {
            out.push_str(if term.negated { " - " } else { " + " });
        }
        for (fi, factor) in term.factors.iter().enumerate() {
            if fi > 0 {
                out.push_str(" * ");
            }
            match factor {
                Factor::Scalar { value, .. } => {
                    let _ = write!(out, "{value}");
                }
                Factor::Ref(r) => {
                    if r.conjugated {
                        let _ = write!(out, "conj({})", r.name);
                    } else {
                        out.push_str(&r.name);
                    }
                    out.push('[');
                    let mut slot = 0;
                    let mut first_item = true;
                    while slot < r.indices.len() {
                        if !first_item {
                            out.push(',');
                        }
                        first_item = false;
                        if let Some(group) = r.groups.iter().find(|g| g[0] == slot) {
                            out.push('[');
                            for (k, &g) in group.iter().enumerate() {
                                if k > 0 {
                                    out.push(',');
                                }
                                format_index(&r.indices[g], &mut out);
                            }
                            out.push(']');
                            slot += group.len();
                        } else {
                            format_index(&r.indices[slot], &mut out);
                            slot += 1;
                        }
                    }
                    out.push(']');
                }
            }
        }
    }
    out
}

fn slot_text(slot: IndexSlot) -> String {
    format!(
        "{}{}",
        match slot.variance {
            Variance::Upper => "upper",
            Variance::Lower => "lower",
        },
        match slot.kind {
            SlotKind::Holomorphic => " holomorphic",
            SlotKind::Antiholomorphic => " antiholomorphic",
        }
    )
}

fn resolve(
    r: &TensorRef,
    env: &HashMap<String, MultiTensor>,
    h: &LeviForm,
) -> Result<MultiTensor, EvalError> {
    let base: MultiTensor = if let Some(t) = env.get(&r.name) {
        t.clone()
    } else if r.name == "h" {
        // the metric resolves by variance: all lower is the pairing, all
        // upper its inverse
        let want_upper = r.indices.iter().all(|t| t.variance == Variance::Upper);
        let want_lower = r.indices.iter().all(|t| t.variance == Variance::Lower);
        if want_upper {
            h.inverse_tensor()
        } else if want_lower {
            h.metric_tensor()
        } else {
            return Err(EvalError::SignatureMismatch {
                name: r.name.clone(),
                offset: r.offset,
                slot: 0,
                expected: "all-upper or all-lower metric reference".to_string(),
                found: "mixed variance".to_string(),
            });
        }
    } else {
        return Err(EvalError::Unbound { name: r.name.clone(), offset: r.offset });
    };
    let t = if r.conjugated { base.conjugate() } else { base };
    if t.rank() != r.indices.len() {
        return Err(EvalError::ArityMismatch {
            name: r.name.clone(),
            offset: r.offset,
            rank: t.rank(),
            named: r.indices.len(),
        });
    }
    for (slot, tok) in r.indices.iter().enumerate() {
        if t.slots()[slot] != tok.slot() {
            return Err(EvalError::SignatureMismatch {
                name: r.name.clone(),
                offset: tok.offset,
                slot,
                expected: slot_text(tok.slot()),
                found: slot_text(t.slots()[slot]),
            });
        }
    }
    Ok(t)
}

/// Evaluates an expression over named tensors. Free slots are ordered by
/// first appearance in the first term; every other term is permuted to match
/// before the sum.
pub fn evaluate(
    expr: &IndexExpr,
    env: &HashMap<String, MultiTensor>,
    h: &LeviForm,
) -> Result<MultiTensor, EvalError> {
    let mut result: Option<(MultiTensor, Vec<String>)> = None;
    for term in &expr.terms {
        let mut scalar = Complex64::new(if term.negated { -1.0 } else { 1.0 }, 0.0);
        let mut product: Option<MultiTensor> = None;
        let mut labels: Vec<IndexToken> = Vec::new();
        for factor in &term.factors {
            match factor {
                Factor::Scalar { value, .. } => scalar *= Complex64::new(*value, 0.0),
                Factor::Ref(r) => {
                    let mut t = resolve(r, env, h)?;
                    for group in &r.groups {
                        t = t.antisymmetrize(group)?;
                    }
                    if let Some(p) = &product {
                        if p.n() != t.n() {
                            return Err(EvalError::DimensionMismatch {
                                offset: r.offset,
                                expected: p.n(),
                                found: t.n(),
                            });
                        }
                    }
                    product = Some(match product {
                        None => t,
                        Some(p) => p.tensor_product(&t),
                    });
                    labels.extend(r.indices.iter().cloned());
                }
            }
        }
        let mut t = product.unwrap_or_else(|| MultiTensor::scalar(Complex64::new(1.0, 0.0)));
        // contract repeated labels until all remaining are unique
        'outer: loop {
            for i in 0..labels.len() {
                for j in (i + 1)..labels.len() {
                    if labels[i].name == labels[j].name {
                        t = t.contract(i, j)?;
                        labels.remove(j);
                        labels.remove(i);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        let t = t.scale(scalar);
        let names: Vec<String> = labels.iter().map(|l| l.name.clone()).collect();
        match &mut result {
            None => result = Some((t, names)),
            Some((acc, order)) => {
                if names.len() != order.len() {
                    return Err(EvalError::FreeIndexMismatch {
                        first: order.join(","),
                        second: names.join(","),
                    });
                }
                // permute this term's slots into the first term's label order
                let mut perm = Vec::with_capacity(order.len());
                for want in order.iter() {
                    match names.iter().position(|n| n == want) {
                        Some(pos) => perm.push(pos),
                        None => {
                            return Err(EvalError::FreeIndexMismatch {
                                first: order.join(","),
                                second: names.join(","),
                            })
                        }
                    }
                }
                let arranged = t.permute_slots(&perm);
                *acc = acc.add(&arranged)?;
            }
        }
    }
    Ok(result.expect("validated expressions have at least one term").0)
}
