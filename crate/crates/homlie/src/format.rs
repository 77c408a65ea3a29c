//! Line-oriented text format for algebras, representations, forms,
//! r-matrices, and linear maps.
//!
//! Layout:
//!
//! ```text
//! homlie-file 1
//! field ratfunc a          # or: field rational
//!
//! begin homlie g
//! dim 3
//! c 1 3 2 = 1              # [e_1, e_3] has coefficient 1 on e_2
//! phi 1 1 = (a)            # twist matrix entry, row 1 column 1
//! phi 2 2 = 1
//! phi 3 3 = (1)/(a)
//! end
//!
//! begin rmatrix r
//! over g
//! dim 3
//! r 1 3 = 1                # coefficient of e_1∧e_3
//! end
//! ```
//!
//! All indices are 1-based. Matrix entries use the column convention: entry
//! (i, j) is the coefficient of e_i in the image of e_j. A block with no
//! `phi`/`beta`/`sigma` lines gets the identity for that matrix. Scalars are
//! exact expressions over the declared field: integers, fractions, and (for
//! `ratfunc`) polynomials in the declared variable with `+ - * / ^` and
//! parentheses. `#` starts a comment.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::derivations::AssociativeAlgebra;
use crate::error::HomlieError;
use crate::homlie::HomLieAlgebra;
use crate::linmap::LinearMap;
use crate::multilinear::MultiVector;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum FieldDecl {
    Rational,
    RatFunc(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    /// A Hom-Lie algebra (`begin homlie <name>`).
    HomLie { name: String, algebra: HomLieAlgebra },
    /// A candidate dual Hom-Lie algebra on the dual basis
    /// (`begin dual-algebra <name>`), same table shape as `homlie`.
    DualAlgebra { name: String, algebra: HomLieAlgebra },
    /// An associative algebra with a distinguished endomorphism σ
    /// (`begin associative <name>`; `m i j k = s` means e_i·e_j has
    /// coefficient s on e_k).
    Associative {
        name: String,
        dim: usize,
        mult: Vec<Vec<Vec<Scalar>>>,
        sigma: LinearMap,
    },
    /// A representation of a named algebra (`begin representation <name>`,
    /// `over <algebra>`; `rho x i j = s` is the (i,j) entry of ρ(e_x)).
    Representation {
        name: String,
        over: String,
        dim: usize,
        rho: Vec<(usize, LinearMap)>,
        beta: LinearMap,
    },
    /// A bilinear form on a named algebra (`begin bilinear-form <name>`).
    BilinearForm {
        name: String,
        over: String,
        matrix: LinearMap,
    },
    /// An element of ∧²g as a sparse (i, j) → scalar table
    /// (`begin rmatrix <name>`).
    RMatrixBlock {
        name: String,
        over: String,
        r: MultiVector,
    },
    /// A plain matrix (`begin linear-map <name>`).
    LinearMapBlock { name: String, map: LinearMap },
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::HomLie { name, .. }
            | Block::DualAlgebra { name, .. }
            | Block::Associative { name, .. }
            | Block::Representation { name, .. }
            | Block::BilinearForm { name, .. }
            | Block::RMatrixBlock { name, .. }
            | Block::LinearMapBlock { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub field: FieldDecl,
    pub blocks: Vec<Block>,
}

impl AlgebraFile {
    pub fn find(&self, kind: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| block_kind(b) == kind)
    }

    pub fn find_named(&self, kind: &str, name: &str) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|b| block_kind(b) == kind && b.name() == name)
    }
}

fn block_kind(b: &Block) -> &'static str {
    match b {
        Block::HomLie { .. } => "homlie",
        Block::DualAlgebra { .. } => "dual-algebra",
        Block::Associative { .. } => "associative",
        Block::Representation { .. } => "representation",
        Block::BilinearForm { .. } => "bilinear-form",
        Block::RMatrixBlock { .. } => "rmatrix",
        Block::LinearMapBlock { .. } => "linear-map",
    }
}

fn perr(line: usize, msg: impl Into<String>) -> HomlieError {
    HomlieError::Parse {
        line,
        msg: msg.into(),
    }
}

// ---------------------------------------------------------------------------
// Scalar expressions
// ---------------------------------------------------------------------------

struct ExprParser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    field: &'a FieldDecl,
    line: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str, line: usize) -> Result<Vec<Tok>, HomlieError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let n = text
                    .parse::<BigInt>()
                    .map_err(|_| perr(line, format!("bad integer literal `{text}`")))?;
                out.push(Tok::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(bytes[start..i].iter().collect()));
            }
            other => return Err(perr(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Scalar, HomlieError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc
                        .try_add(&rhs)
                        .map_err(|e| perr(self.line, e.to_string()))?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc
                        .try_sub(&rhs)
                        .map_err(|e| perr(self.line, e.to_string()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, HomlieError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .try_mul(&rhs)
                        .map_err(|e| perr(self.line, e.to_string()))?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .try_div(&rhs)
                        .map_err(|e| perr(self.line, e.to_string()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, HomlieError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = match self.bump() {
            Some(Tok::Int(n)) => Scalar::Rational(BigRational::from_integer(n)),
            Some(Tok::Ident(name)) => match self.field {
                FieldDecl::RatFunc(var) if *var == name => Scalar::var(var),
                FieldDecl::RatFunc(var) => {
                    return Err(perr(
                        self.line,
                        format!("unknown indeterminate `{name}` (declared: `{var}`)"),
                    ))
                }
                FieldDecl::Rational => {
                    return Err(perr(
                        self.line,
                        format!("indeterminate `{name}` in a rational file"),
                    ))
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => inner,
                    _ => return Err(perr(self.line, "unbalanced parenthesis")),
                }
            }
            other => {
                return Err(perr(
                    self.line,
                    format!("expected a scalar factor, found {other:?}"),
                ))
            }
        };
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: i64 = n
                        .try_into()
                        .map_err(|_| perr(self.line, "exponent out of range"))?;
                    return base
                        .try_pow(e)
                        .map_err(|e| perr(self.line, e.to_string()));
                }
                _ => return Err(perr(self.line, "exponent must be an integer")),
            }
        }
        Ok(base)
    }
}

/// Parse one exact scalar expression over the declared field.
pub fn parse_scalar(s: &str, field: &FieldDecl, line: usize) -> Result<Scalar, HomlieError> {
    let tokens = lex(s, line)?;
    if tokens.is_empty() {
        return Err(perr(line, "empty scalar expression"));
    }
    let mut p = ExprParser {
        tokens,
        pos: 0,
        field,
        line,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(perr(line, "trailing tokens after scalar expression"));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// File parsing
// ---------------------------------------------------------------------------

struct RawLine {
    number: usize,
    words: Vec<String>,
}

fn split_lines(text: &str) -> Vec<RawLine> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let stripped = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let trimmed = stripped.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some(RawLine {
                    number: idx + 1,
                    words: trimmed.split_whitespace().map(str::to_string).collect(),
                })
            }
        })
        .collect()
}

/// An `key i j ... = expr` data line inside a block.
struct Entry {
    line: usize,
    indices: Vec<usize>,
    value: String,
}

fn parse_entry(l: &RawLine, key: &str, n_indices: usize) -> Result<Entry, HomlieError> {
    if l.words.len() < n_indices + 3 || l.words[0] != key || l.words[n_indices + 1] != "=" {
        return Err(perr(
            l.number,
            format!("expected `{key} {} = <scalar>`", vec!["i"; n_indices].join(" ")),
        ));
    }
    let mut indices = Vec::new();
    for w in &l.words[1..=n_indices] {
        let v: usize = w
            .parse()
            .map_err(|_| perr(l.number, format!("bad index `{w}`")))?;
        if v == 0 {
            return Err(perr(l.number, "indices are 1-based"));
        }
        indices.push(v - 1);
    }
    Ok(Entry {
        line: l.number,
        indices,
        value: l.words[n_indices + 2..].join(" "),
    })
}

fn require_dim(dim: Option<usize>, line: usize) -> Result<usize, HomlieError> {
    dim.ok_or_else(|| perr(line, "`dim` must precede data lines"))
}

fn check_index(idx: usize, dim: usize, line: usize) -> Result<(), HomlieError> {
    if idx >= dim {
        Err(perr(line, format!("index {} exceeds dimension {dim}", idx + 1)))
    } else {
        Ok(())
    }
}

struct BlockParser<'a> {
    field: &'a FieldDecl,
}

impl<'a> BlockParser<'a> {
    fn scalar(&self, e: &Entry) -> Result<Scalar, HomlieError> {
        parse_scalar(&e.value, self.field, e.line)
    }

    /// Shared shape for `homlie` and `dual-algebra` blocks.
    fn algebra(&self, lines: &[RawLine]) -> Result<HomLieAlgebra, HomlieError> {
        let mut dim: Option<usize> = None;
        let mut brackets: Vec<(usize, usize, usize, Scalar, usize)> = Vec::new();
        let mut twist_entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for l in lines {
            match l.words[0].as_str() {
                "dim" => dim = Some(parse_dim(l)?),
                "c" => {
                    let e = parse_entry(l, "c", 3)?;
                    let n = require_dim(dim, l.number)?;
                    for &idx in &e.indices {
                        check_index(idx, n, l.number)?;
                    }
                    let (i, j, k) = (e.indices[0], e.indices[1], e.indices[2]);
                    if i >= j {
                        return Err(perr(l.number, "structure constants need i < j"));
                    }
                    brackets.push((i, j, k, self.scalar(&e)?, l.number));
                }
                "phi" => {
                    let e = parse_entry(l, "phi", 2)?;
                    let n = require_dim(dim, l.number)?;
                    check_index(e.indices[0], n, l.number)?;
                    check_index(e.indices[1], n, l.number)?;
                    twist_entries.push((e.indices[0], e.indices[1], self.scalar(&e)?));
                }
                other => return Err(perr(l.number, format!("unknown line `{other}`"))),
            }
        }
        let n = require_dim(dim, lines.first().map(|l| l.number).unwrap_or(0))?;
        let mut table: std::collections::BTreeMap<(usize, usize), Vec<Scalar>> =
            std::collections::BTreeMap::new();
        for (i, j, k, s, _line) in brackets {
            let row = table
                .entry((i, j))
                .or_insert_with(|| vec![Scalar::zero(); n]);
            row[k] = row[k].try_add(&s).expect("same-field addition");
        }
        let twist = matrix_from_entries(n, n, &twist_entries);
        Ok(HomLieAlgebra::new(n, table.into_iter().collect(), twist))
    }
}

fn parse_dim(l: &RawLine) -> Result<usize, HomlieError> {
    if l.words.len() != 2 {
        return Err(perr(l.number, "expected `dim <n>`"));
    }
    let n: usize = l.words[1]
        .parse()
        .map_err(|_| perr(l.number, "bad dimension"))?;
    if n == 0 {
        return Err(perr(l.number, "dimension must be positive"));
    }
    Ok(n)
}

/// Entries into a matrix; no entries at all means the identity.
fn matrix_from_entries(rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> LinearMap {
    if entries.is_empty() && rows == cols {
        return LinearMap::identity(rows);
    }
    let mut m = LinearMap::zeros(rows, cols);
    for (i, j, s) in entries {
        m.set(*i, *j, s.clone());
    }
    m
}

pub fn parse(text: &str) -> Result<AlgebraFile, HomlieError> {
    let lines = split_lines(text);
    let mut it = lines.iter().peekable();

    let header = it.next().ok_or_else(|| perr(1, "empty file"))?;
    if header.words != ["homlie-file", "1"] {
        return Err(perr(header.number, "expected header `homlie-file 1`"));
    }
    let field_line = it
        .next()
        .ok_or_else(|| perr(header.number, "missing `field` declaration"))?;
    let field = match field_line.words.as_slice() {
        [a, b] if a == "field" && b == "rational" => FieldDecl::Rational,
        [a, b, v] if a == "field" && b == "ratfunc" => FieldDecl::RatFunc(v.clone()),
        _ => {
            return Err(perr(
                field_line.number,
                "expected `field rational` or `field ratfunc <var>`",
            ))
        }
    };
    let bp = BlockParser { field: &field };

    let mut blocks = Vec::new();
    while let Some(open) = it.next() {
        if open.words.len() != 3 || open.words[0] != "begin" {
            return Err(perr(open.number, "expected `begin <kind> <name>`"));
        }
        let kind = open.words[1].clone();
        let name = open.words[2].clone();
        let mut body: Vec<RawLine> = Vec::new();
        let mut closed = false;
        for l in it.by_ref() {
            if l.words == ["end"] {
                closed = true;
                break;
            }
            body.push(RawLine {
                number: l.number,
                words: l.words.clone(),
            });
        }
        if !closed {
            return Err(perr(open.number, format!("block `{name}` is never closed")));
        }
        blocks.push(parse_block(&bp, &kind, name, &body, open.number)?);
    }
    Ok(AlgebraFile { field, blocks })
}

fn parse_block(
    bp: &BlockParser,
    kind: &str,
    name: String,
    body: &[RawLine],
    open_line: usize,
) -> Result<Block, HomlieError> {
    match kind {
        "homlie" => Ok(Block::HomLie {
            name,
            algebra: bp.algebra(body)?,
        }),
        "dual-algebra" => Ok(Block::DualAlgebra {
            name,
            algebra: bp.algebra(body)?,
        }),
        "associative" => {
            let mut dim: Option<usize> = None;
            let mut mult_entries: Vec<(usize, usize, usize, Scalar)> = Vec::new();
            let mut sigma_entries: Vec<(usize, usize, Scalar)> = Vec::new();
            for l in body {
                match l.words[0].as_str() {
                    "dim" => dim = Some(parse_dim(l)?),
                    "m" => {
                        let e = parse_entry(l, "m", 3)?;
                        let n = require_dim(dim, l.number)?;
                        for &idx in &e.indices {
                            check_index(idx, n, l.number)?;
                        }
                        mult_entries.push((
                            e.indices[0],
                            e.indices[1],
                            e.indices[2],
                            bp.scalar(&e)?,
                        ));
                    }
                    "sigma" => {
                        let e = parse_entry(l, "sigma", 2)?;
                        let n = require_dim(dim, l.number)?;
                        check_index(e.indices[0], n, l.number)?;
                        check_index(e.indices[1], n, l.number)?;
                        sigma_entries.push((e.indices[0], e.indices[1], bp.scalar(&e)?));
                    }
                    other => return Err(perr(l.number, format!("unknown line `{other}`"))),
                }
            }
            let n = require_dim(dim, open_line)?;
            let mut mult = vec![vec![vec![Scalar::zero(); n]; n]; n];
            for (i, j, k, s) in mult_entries {
                mult[i][j][k] = mult[i][j][k].try_add(&s).expect("same-field addition");
            }
            Ok(Block::Associative {
                name,
                dim: n,
                mult,
                sigma: matrix_from_entries(n, n, &sigma_entries),
            })
        }
        "representation" => {
            let mut over: Option<String> = None;
            let mut dim: Option<usize> = None;
            let mut rho_entries: Vec<(usize, usize, usize, Scalar)> = Vec::new();
            let mut beta_entries: Vec<(usize, usize, Scalar)> = Vec::new();
            for l in body {
                match l.words[0].as_str() {
                    "over" if l.words.len() == 2 => over = Some(l.words[1].clone()),
                    "dim" => dim = Some(parse_dim(l)?),
                    "rho" => {
                        let e = parse_entry(l, "rho", 3)?;
                        let d = require_dim(dim, l.number)?;
                        check_index(e.indices[1], d, l.number)?;
                        check_index(e.indices[2], d, l.number)?;
                        rho_entries.push((
                            e.indices[0],
                            e.indices[1],
                            e.indices[2],
                            bp.scalar(&e)?,
                        ));
                    }
                    "beta" => {
                        let e = parse_entry(l, "beta", 2)?;
                        let d = require_dim(dim, l.number)?;
                        check_index(e.indices[0], d, l.number)?;
                        check_index(e.indices[1], d, l.number)?;
                        beta_entries.push((e.indices[0], e.indices[1], bp.scalar(&e)?));
                    }
                    other => return Err(perr(l.number, format!("unknown line `{other}`"))),
                }
            }
            let d = require_dim(dim, open_line)?;
            let over =
                over.ok_or_else(|| perr(open_line, "representation needs an `over` line"))?;
            let mut per_x: std::collections::BTreeMap<usize, Vec<(usize, usize, Scalar)>> =
                std::collections::BTreeMap::new();
            for (x, i, j, s) in rho_entries {
                per_x.entry(x).or_default().push((i, j, s));
            }
            let rho = per_x
                .into_iter()
                .map(|(x, entries)| {
                    let mut m = LinearMap::zeros(d, d);
                    for (i, j, s) in entries {
                        m.set(i, j, s);
                    }
                    (x, m)
                })
                .collect();
            Ok(Block::Representation {
                name,
                over,
                dim: d,
                rho,
                beta: matrix_from_entries(d, d, &beta_entries),
            })
        }
        "bilinear-form" => {
            let mut over: Option<String> = None;
            let mut dim: Option<usize> = None;
            let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
            for l in body {
                match l.words[0].as_str() {
                    "over" if l.words.len() == 2 => over = Some(l.words[1].clone()),
                    "dim" => dim = Some(parse_dim(l)?),
                    "b" => {
                        let e = parse_entry(l, "b", 2)?;
                        let n = require_dim(dim, l.number)?;
                        check_index(e.indices[0], n, l.number)?;
                        check_index(e.indices[1], n, l.number)?;
                        entries.push((e.indices[0], e.indices[1], bp.scalar(&e)?));
                    }
                    other => return Err(perr(l.number, format!("unknown line `{other}`"))),
                }
            }
            let n = require_dim(dim, open_line)?;
            let mut m = LinearMap::zeros(n, n);
            for (i, j, s) in entries {
                m.set(i, j, s);
            }
            Ok(Block::BilinearForm {
                name,
                over: over.ok_or_else(|| perr(open_line, "bilinear-form needs `over`"))?,
                matrix: m,
            })
        }
        "rmatrix" => {
            let mut over: Option<String> = None;
            let mut dim: Option<usize> = None;
            let mut r: Option<MultiVector> = None;
            for l in body {
                match l.words[0].as_str() {
                    "over" if l.words.len() == 2 => over = Some(l.words[1].clone()),
                    "dim" => {
                        let n = parse_dim(l)?;
                        dim = Some(n);
                        r = Some(MultiVector::zero(n, 2));
                    }
                    "r" => {
                        let e = parse_entry(l, "r", 2)?;
                        let n = require_dim(dim, l.number)?;
                        check_index(e.indices[0], n, l.number)?;
                        check_index(e.indices[1], n, l.number)?;
                        if e.indices[0] == e.indices[1] {
                            return Err(perr(l.number, "wedge indices must differ"));
                        }
                        let s = bp.scalar(&e)?;
                        let (i, j) = (e.indices[0], e.indices[1]);
                        let acc = r.as_mut().expect("dim precedes data");
                        if i < j {
                            acc.add_term(&[i, j], s);
                        } else {
                            acc.add_term(&[j, i], s.neg());
                        }
                    }
                    other => return Err(perr(l.number, format!("unknown line `{other}`"))),
                }
            }
            require_dim(dim, open_line)?;
            Ok(Block::RMatrixBlock {
                name,
                over: over.ok_or_else(|| perr(open_line, "rmatrix needs `over`"))?,
                r: r.unwrap(),
            })
        }
        "linear-map" => {
            let mut shape: Option<(usize, usize)> = None;
            let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
            for l in body {
                match l.words[0].as_str() {
                    "shape" => {
                        if l.words.len() != 3 {
                            return Err(perr(l.number, "expected `shape <rows> <cols>`"));
                        }
                        let r: usize = l.words[1]
                            .parse()
                            .map_err(|_| perr(l.number, "bad row count"))?;
                        let c: usize = l.words[2]
                            .parse()
                            .map_err(|_| perr(l.number, "bad column count"))?;
                        if r == 0 || c == 0 {
                            return Err(perr(l.number, "shape must be positive"));
                        }
                        shape = Some((r, c));
                    }
                    "t" => {
                        let e = parse_entry(l, "t", 2)?;
                        let (r, c) =
                            shape.ok_or_else(|| perr(l.number, "`shape` must precede data"))?;
                        check_index(e.indices[0], r, l.number)?;
                        check_index(e.indices[1], c, l.number)?;
                        entries.push((e.indices[0], e.indices[1], bp.scalar(&e)?));
                    }
                    other => return Err(perr(l.number, format!("unknown line `{other}`"))),
                }
            }
            let (r, c) = shape.ok_or_else(|| perr(open_line, "linear-map needs `shape`"))?;
            Ok(Block::LinearMapBlock {
                name,
                map: matrix_from_entries(r, c, &entries),
            })
        }
        other => Err(perr(open_line, format!("unknown block kind `{other}`"))),
    }
}

// ---------------------------------------------------------------------------
// Serialization (canonical form)
// ---------------------------------------------------------------------------

fn write_matrix(out: &mut String, key: &str, m: &LinearMap) {
    for i in 0..m.rows {
        for j in 0..m.cols {
            let v = m.get(i, j);
            if !v.is_zero() {
                out.push_str(&format!("{key} {} {} = {v}\n", i + 1, j + 1));
            }
        }
    }
}

fn write_algebra_body(out: &mut String, g: &HomLieAlgebra) {
    out.push_str(&format!("dim {}\n", g.dim));
    for ((i, j), v) in g.structure_constants() {
        for (k, s) in v.iter().enumerate() {
            if !s.is_zero() {
                out.push_str(&format!("c {} {} {} = {s}\n", i + 1, j + 1, k + 1));
            }
        }
    }
    write_matrix(out, "phi", &g.twist);
}

pub fn serialize(f: &AlgebraFile) -> String {
    let mut out = String::from("homlie-file 1\n");
    match &f.field {
        FieldDecl::Rational => out.push_str("field rational\n"),
        FieldDecl::RatFunc(v) => out.push_str(&format!("field ratfunc {v}\n")),
    }
    for b in &f.blocks {
        out.push('\n');
        out.push_str(&format!("begin {} {}\n", block_kind(b), b.name()));
        match b {
            Block::HomLie { algebra, .. } | Block::DualAlgebra { algebra, .. } => {
                write_algebra_body(&mut out, algebra);
            }
            Block::Associative {
                dim, mult, sigma, ..
            } => {
                out.push_str(&format!("dim {dim}\n"));
                for (i, row) in mult.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        for (k, s) in v.iter().enumerate() {
                            if !s.is_zero() {
                                out.push_str(&format!(
                                    "m {} {} {} = {s}\n",
                                    i + 1,
                                    j + 1,
                                    k + 1
                                ));
                            }
                        }
                    }
                }
                write_matrix(&mut out, "sigma", sigma);
            }
            Block::Representation {
                over,
                dim,
                rho,
                beta,
                ..
            } => {
                out.push_str(&format!("over {over}\n"));
                out.push_str(&format!("dim {dim}\n"));
                for (x, m) in rho {
                    for i in 0..m.rows {
                        for j in 0..m.cols {
                            let v = m.get(i, j);
                            if !v.is_zero() {
                                out.push_str(&format!(
                                    "rho {} {} {} = {v}\n",
                                    x + 1,
                                    i + 1,
                                    j + 1
                                ));
                            }
                        }
                    }
                }
                write_matrix(&mut out, "beta", beta);
            }
            Block::BilinearForm { over, matrix, .. } => {
                out.push_str(&format!("over {over}\n"));
                out.push_str(&format!("dim {}\n", matrix.rows));
                write_matrix(&mut out, "b", matrix);
            }
            Block::RMatrixBlock { over, r, .. } => {
                out.push_str(&format!("over {over}\n"));
                out.push_str(&format!("dim {}\n", r.dim));
                for (t, c) in r.terms() {
                    out.push_str(&format!("r {} {} = {c}\n", t[0] + 1, t[1] + 1));
                }
            }
            Block::LinearMapBlock { map, .. } => {
                out.push_str(&format!("shape {} {}\n", map.rows, map.cols));
                write_matrix(&mut out, "t", map);
            }
        }
        out.push_str("end\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Substitution and resolution helpers
// ---------------------------------------------------------------------------

fn subst_scalar(
    s: &Scalar,
    var: &str,
    value: &BigRational,
    what: &str,
) -> Result<Scalar, HomlieError> {
    s.substitute(var, value).map_err(|e| match e {
        HomlieError::PoleAtValue(_, v) => HomlieError::PoleAtValue(what.to_string(), v),
        other => other,
    })
}

fn subst_matrix(
    m: &LinearMap,
    var: &str,
    value: &BigRational,
    what: &str,
) -> Result<LinearMap, HomlieError> {
    let mut out = LinearMap::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out.set(
                i,
                j,
                subst_scalar(
                    m.get(i, j),
                    var,
                    value,
                    &format!("{what} entry ({}, {})", i + 1, j + 1),
                )?,
            );
        }
    }
    Ok(out)
}

fn subst_algebra(
    g: &HomLieAlgebra,
    var: &str,
    value: &BigRational,
    name: &str,
) -> Result<HomLieAlgebra, HomlieError> {
    let mut brackets = Vec::new();
    for (&(i, j), v) in g.structure_constants() {
        let mut row = Vec::new();
        for (k, s) in v.iter().enumerate() {
            row.push(subst_scalar(
                s,
                var,
                value,
                &format!("{name} constant c {} {} {}", i + 1, j + 1, k + 1),
            )?);
        }
        brackets.push(((i, j), row));
    }
    let twist = subst_matrix(&g.twist, var, value, &format!("{name} twist"))?;
    Ok(HomLieAlgebra::new(g.dim, brackets, twist))
}

/// Evaluate every rational-function scalar in the file at `var = value`.
/// The result is declared over ℚ. Fails with `PoleAtValue` naming the
/// offending entry if any denominator vanishes.
pub fn substitute_file(
    f: &AlgebraFile,
    var: &str,
    value: &BigRational,
) -> Result<AlgebraFile, HomlieError> {
    let mut blocks = Vec::new();
    for b in &f.blocks {
        let name = b.name().to_string();
        blocks.push(match b {
            Block::HomLie { algebra, .. } => Block::HomLie {
                name: name.clone(),
                algebra: subst_algebra(algebra, var, value, &name)?,
            },
            Block::DualAlgebra { algebra, .. } => Block::DualAlgebra {
                name: name.clone(),
                algebra: subst_algebra(algebra, var, value, &name)?,
            },
            Block::Associative {
                dim, mult, sigma, ..
            } => {
                let mut new_mult = mult.clone();
                for (i, row) in mult.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        for (k, s) in v.iter().enumerate() {
                            new_mult[i][j][k] = subst_scalar(
                                s,
                                var,
                                value,
                                &format!("{name} product m {} {} {}", i + 1, j + 1, k + 1),
                            )?;
                        }
                    }
                }
                Block::Associative {
                    name: name.clone(),
                    dim: *dim,
                    mult: new_mult,
                    sigma: subst_matrix(sigma, var, value, &format!("{name} sigma"))?,
                }
            }
            Block::Representation {
                over,
                dim,
                rho,
                beta,
                ..
            } => {
                let mut new_rho = Vec::new();
                for (x, m) in rho {
                    new_rho.push((
                        *x,
                        subst_matrix(m, var, value, &format!("{name} rho {}", x + 1))?,
                    ));
                }
                Block::Representation {
                    name: name.clone(),
                    over: over.clone(),
                    dim: *dim,
                    rho: new_rho,
                    beta: subst_matrix(beta, var, value, &format!("{name} beta"))?,
                }
            }
            Block::BilinearForm { over, matrix, .. } => Block::BilinearForm {
                name: name.clone(),
                over: over.clone(),
                matrix: subst_matrix(matrix, var, value, &format!("{name} form"))?,
            },
            Block::RMatrixBlock { over, r, .. } => {
                let mut out = MultiVector::zero(r.dim, 2);
                for (t, c) in r.terms() {
                    out.add_term(
                        t,
                        subst_scalar(
                            c,
                            var,
                            value,
                            &format!("{name} r {} {}", t[0] + 1, t[1] + 1),
                        )?,
                    );
                }
                Block::RMatrixBlock {
                    name: name.clone(),
                    over: over.clone(),
                    r: out,
                }
            }
            Block::LinearMapBlock { map, .. } => Block::LinearMapBlock {
                name: name.clone(),
                map: subst_matrix(map, var, value, &format!("{name} map"))?,
            },
        });
    }
    Ok(AlgebraFile {
        field: FieldDecl::Rational,
        blocks,
    })
}

/// Resolve a representation block against its base algebra.
pub fn resolve_representation(
    file: &AlgebraFile,
    block: &Block,
) -> Result<crate::reps::Representation, HomlieError> {
    let Block::Representation {
        over,
        dim,
        rho,
        beta,
        ..
    } = block
    else {
        return Err(HomlieError::UnknownKey("not a representation block".into()));
    };
    let Some(Block::HomLie { algebra, .. }) = file.find_named("homlie", over) else {
        return Err(HomlieError::UnknownKey(format!(
            "representation refers to missing algebra `{over}`"
        )));
    };
    let mut matrices = vec![LinearMap::zeros(*dim, *dim); algebra.dim];
    for (x, m) in rho {
        if *x >= algebra.dim {
            return Err(HomlieError::DimensionMismatch(format!(
                "rho index {} exceeds the algebra dimension {}",
                x + 1,
                algebra.dim
            )));
        }
        matrices[*x] = m.clone();
    }
    crate::reps::Representation::new(algebra.clone(), matrices, beta.clone())
}

/// Build an AssociativeAlgebra (verifying associativity) plus σ from a block.
pub fn resolve_associative(
    block: &Block,
) -> Result<(AssociativeAlgebra, LinearMap), HomlieError> {
    let Block::Associative {
        dim, mult, sigma, ..
    } = block
    else {
        return Err(HomlieError::UnknownKey("not an associative block".into()));
    };
    Ok((AssociativeAlgebra::new(*dim, mult.clone())?, sigma.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlie::named_example;

    fn rational_file() -> AlgebraFile {
        let ex = named_example("dim2").unwrap();
        AlgebraFile {
            field: FieldDecl::Rational,
            blocks: vec![
                Block::HomLie {
                    name: "g".to_string(),
                    algebra: ex.algebra,
                },
                Block::RMatrixBlock {
                    name: "r".to_string(),
                    over: "g".to_string(),
                    r: ex.rmatrix.unwrap(),
                },
            ],
        }
    }

    #[test]
    fn scalar_expressions_parse_exactly() {
        let q = FieldDecl::Rational;
        assert_eq!(parse_scalar("-4/7", &q, 1).unwrap(), Scalar::from_frac(-4, 7));
        assert_eq!(
            parse_scalar("2^3 - 1/2", &q, 1).unwrap(),
            Scalar::from_frac(15, 2)
        );
        let f = FieldDecl::RatFunc("a".to_string());
        let a = Scalar::var("a");
        let expected = (&(&a * &a) + &Scalar::one()).try_div(&(&Scalar::from_int(2) * &a)).unwrap();
        assert_eq!(parse_scalar("(a^2+1)/(2*a)", &f, 1).unwrap(), expected);
        assert_eq!(parse_scalar("a^-1", &f, 1).is_err(), true);
        assert!(parse_scalar("b", &f, 1).is_err());
        assert!(parse_scalar("a", &q, 1).is_err());
        assert!(parse_scalar("1/0", &q, 1).is_err());
    }

    #[test]
    fn scalar_display_round_trips() {
        let f = FieldDecl::RatFunc("q".to_string());
        let q = Scalar::var("q");
        let samples = vec![
            Scalar::from_frac(-7, 3),
            q.clone(),
            q.try_inv().unwrap(),
            (&(&q * &q) - &Scalar::from_frac(1, 2))
                .try_div(&(&q + &Scalar::from_int(5)))
                .unwrap(),
            Scalar::zero(),
        ];
        for s in samples {
            let text = s.to_string();
            assert_eq!(parse_scalar(&text, &f, 1).unwrap(), s, "text: {text}");
        }
    }

    #[test]
    fn file_round_trip_rational() {
        let f = rational_file();
        let text = serialize(&f);
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, f);
        // Canonical: serializing again is byte-identical.
        assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn file_round_trip_ratfunc() {
        let ex = named_example("dim3a").unwrap();
        let f = AlgebraFile {
            field: FieldDecl::RatFunc("a".to_string()),
            blocks: vec![
                Block::HomLie {
                    name: "g".to_string(),
                    algebra: ex.algebra,
                },
                Block::RMatrixBlock {
                    name: "r".to_string(),
                    over: "g".to_string(),
                    r: ex.rmatrix.unwrap(),
                },
            ],
        };
        let text = serialize(&f);
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, f);
        assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let text = "homlie-file 1\nfield rational\n\nbegin homlie g\ndim 2\nc 1 2 5 = 1\nend\n";
        match parse(text) {
            Err(HomlieError::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_block_kind_rejected() {
        let text = "homlie-file 1\nfield rational\n\nbegin widget w\nend\n";
        assert!(matches!(parse(text), Err(HomlieError::Parse { .. })));
    }

    #[test]
    fn missing_twist_defaults_to_identity() {
        let text = "homlie-file 1\nfield rational\n\nbegin homlie g\ndim 2\nc 1 2 2 = 1\nend\n";
        let f = parse(text).unwrap();
        let Block::HomLie { algebra, .. } = &f.blocks[0] else {
            panic!()
        };
        assert_eq!(algebra.twist, LinearMap::identity(2));
    }

    #[test]
    fn substitute_dim3a_at_two() {
        let ex = named_example("dim3a").unwrap();
        let f = AlgebraFile {
            field: FieldDecl::RatFunc("a".to_string()),
            blocks: vec![Block::HomLie {
                name: "g".to_string(),
                algebra: ex.algebra,
            }],
        };
        let two = BigRational::from_integer(2.into());
        let out = substitute_file(&f, "a", &two).unwrap();
        let Block::HomLie { algebra, .. } = &out.blocks[0] else {
            panic!()
        };
        assert_eq!(
            algebra.twist,
            LinearMap::diagonal(vec![
                Scalar::from_int(2),
                Scalar::one(),
                Scalar::from_frac(1, 2)
            ])
        );
        assert!(crate::homlie::check_hom_lie(algebra).passed());
    }

    #[test]
    fn substitute_dim3a_at_zero_is_a_pole() {
        let ex = named_example("dim3a").unwrap();
        let f = AlgebraFile {
            field: FieldDecl::RatFunc("a".to_string()),
            blocks: vec![Block::HomLie {
                name: "g".to_string(),
                algebra: ex.algebra,
            }],
        };
        let zero = BigRational::from_integer(0.into());
        match substitute_file(&f, "a", &zero) {
            Err(HomlieError::PoleAtValue(what, _)) => {
                assert!(what.contains("twist"), "witness: {what}")
            }
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored()  {
        let text = "homlie-file 1\n# header comment\nfield rational\n\nbegin homlie g  # inline\ndim 2\nc 1 2 2 = 1\n\nend\n";
        assert!(parse(text).is_ok());
    }
}
