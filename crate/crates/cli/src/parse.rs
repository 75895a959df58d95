//! Line-oriented input formats.
//!
//! One declaration per line, `#` starts a comment, tokens are separated by
//! whitespace. Syntax errors map to exit code 2, semantic ones to exit code 3.

use std::collections::BTreeMap;
use std::sync::Arc;

use dgql_core::algebra::{BasisElement, FiniteAlgebra};
use dgql_core::barkoszul::AugmentedFiniteAlgebra;
use dgql_core::dgalg::DGQuiverAlgebra;
use dgql_core::frobenius::FDModule;
use dgql_core::ginzburg::Potential;
use dgql_core::linalg::{Matrix, SparseVec};
use dgql_core::quiver::ArrowId;
use dgql_core::series::groebner_with;
use dgql_core::{Field, GradedQuiver, Path, PathSeries, Scalar};

use crate::CliError;

#[derive(Clone, Debug)]
struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn syntax(&self, msg: impl Into<String>) -> CliError {
        CliError::Syntax {
            line: self.no,
            msg: msg.into(),
        }
    }

    fn semantic(&self, msg: impl Into<String>) -> CliError {
        CliError::Semantic {
            line: Some(self.no),
            msg: msg.into(),
        }
    }

    fn arity(&self, lo: usize, hi: usize) -> Result<(), CliError> {
        let n = self.tokens.len() - 1;
        if n < lo || n > hi {
            let want = if lo == hi {
                format!("{lo}")
            } else if hi == usize::MAX {
                format!("at least {lo}")
            } else {
                format!("{lo} to {hi}")
            };
            return Err(self.syntax(format!("`{}` takes {want} arguments, found {n}", self.tokens[0])));
        }
        Ok(())
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            (!tokens.is_empty()).then_some(Line { no: i + 1, tokens })
        })
        .collect()
}

fn identifier(line: &Line, tok: &str) -> Result<(), CliError> {
    let ok = !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(line.syntax(format!("`{tok}` is not an identifier")))
    }
}

fn integer<T: std::str::FromStr>(line: &Line, tok: &str, what: &str) -> Result<T, CliError> {
    tok.parse()
        .map_err(|_| line.syntax(format!("expected {what}, found `{tok}`")))
}

fn scalar(line: &Line, field: Field, tok: &str) -> Result<Scalar, CliError> {
    field.parse_scalar(tok).map_err(|e| match e {
        dgql_core::Error::DivisionByZero => line.semantic(format!("coefficient `{tok}` divides by zero")),
        _ => line.syntax(format!("malformed coefficient `{tok}`")),
    })
}

fn field_line(line: &Line) -> Result<Field, CliError> {
    match line.tokens[1..] {
        ["rational"] => Ok(Field::Rational),
        ["prime", p] => {
            let p: u64 = integer(line, p, "a prime")?;
            Field::prime(p).map_err(|_| line.semantic(format!("{p} is not a supported prime")))
        }
        _ => Err(line.syntax("expected `field rational` or `field prime <p>`")),
    }
}

/// Quiver declarations shared by several formats.
struct QuiverBuilder {
    field: Option<Field>,
    quiver: GradedQuiver,
}

impl QuiverBuilder {
    fn new() -> Self {
        QuiverBuilder {
            field: None,
            quiver: GradedQuiver::new(),
        }
    }

    fn field(&self) -> Field {
        self.field.unwrap_or(Field::Rational)
    }

    /// Handles `field`, `vertex` and `arrow`; returns false for other keywords.
    fn accept(&mut self, line: &Line) -> Result<bool, CliError> {
        match line.tokens[0] {
            "field" => {
                if self.field.is_some() {
                    return Err(line.semantic("field declared twice"));
                }
                if self.quiver.num_vertices() > 0 {
                    return Err(line.semantic("field must be declared before the quiver"));
                }
                self.field = Some(field_line(line)?);
            }
            "vertex" => {
                line.arity(1, 1)?;
                identifier(line, line.tokens[1])?;
                self.quiver
                    .add_vertex(line.tokens[1])
                    .map_err(|e| line.semantic(e.to_string()))?;
            }
            "arrow" => {
                line.arity(4, 5)?;
                let t = &line.tokens;
                identifier(line, t[1])?;
                let deg: i32 = integer(line, t[4], "an integer degree")?;
                let weight: u32 = match t.get(5) {
                    Some(w) => integer(line, w, "a positive weight")?,
                    None => 1,
                };
                self.quiver
                    .add_arrow(t[1], t[2], t[3], deg, weight)
                    .map_err(|e| line.semantic(e.to_string()))?;
            }
            _ => return Ok(false),
        }
        Ok(true)
    }
}

/// `<coeff> <arrow>... [+ <coeff> <arrow>...]*`, or the literal `0`.
/// A lone `e_<vertex>` token denotes a trivial path.
fn linear_combination(
    line: &Line,
    q: &GradedQuiver,
    field: Field,
    tokens: &[&str],
) -> Result<Vec<(Path, Scalar)>, CliError> {
    if tokens == ["0"] {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in tokens.split(|t| *t == "+") {
        let Some((c, word)) = part.split_first() else {
            return Err(line.syntax("empty summand"));
        };
        let c = scalar(line, field, c)?;
        out.push((word_path(line, q, word)?, c));
    }
    Ok(out)
}

fn word_path(line: &Line, q: &GradedQuiver, word: &[&str]) -> Result<Path, CliError> {
    if word.is_empty() {
        return Err(line.syntax("summand has a coefficient but no path"));
    }
    if let [single] = word {
        if q.arrow_id(single).is_err() {
            if let Some(v) = single.strip_prefix("e_") {
                let v = q.vertex_id(v).map_err(|e| line.semantic(e.to_string()))?;
                return Ok(Path::trivial(v));
            }
        }
    }
    let arrows: Vec<ArrowId> = word
        .iter()
        .map(|a| q.arrow_id(a).map_err(|e| line.semantic(e.to_string())))
        .collect::<Result<_, _>>()?;
    Path::from_arrows(q, &arrows).map_err(|e| line.semantic(e.to_string()))
}

fn unknown(line: &Line) -> CliError {
    line.syntax(format!("unknown declaration `{}`", line.tokens[0]))
}

/// `.qpot`: a degree-0 quiver with a potential.
pub fn parse_qpot(text: &str, truncation: u32) -> Result<Potential, CliError> {
    let mut b = QuiverBuilder::new();
    let mut terms: Vec<(&Line, &[&str])> = Vec::new();
    let all = lines(text);
    for line in &all {
        if b.accept(line)? {
            continue;
        }
        match line.tokens[0] {
            "term" => {
                line.arity(2, usize::MAX)?;
                terms.push((line, &line.tokens[1..]));
            }
            _ => return Err(unknown(line)),
        }
    }
    let field = b.field();
    let q = Arc::new(b.quiver);
    let mut parsed = Vec::new();
    for (line, t) in terms {
        let c = scalar(line, field, t[0])?;
        let path = word_path(line, &q, &t[1..])?;
        if path.source != path.target {
            return Err(line.semantic(format!("term `{}` is not a cycle", t[1..].join(" "))));
        }
        parsed.push((c, path));
    }
    Potential::new(q, field, truncation, parsed).map_err(CliError::from_core)
}

/// `.dgq`: a graded quiver with `d <arrow> = ...` lines. The d² check is left to the caller.
pub fn parse_dgq(text: &str, truncation: u32) -> Result<DGQuiverAlgebra, CliError> {
    let mut b = QuiverBuilder::new();
    let mut ds: Vec<&Line> = Vec::new();
    let all = lines(text);
    for line in &all {
        if b.accept(line)? {
            continue;
        }
        match line.tokens[0] {
            "d" => {
                if line.tokens.len() < 4 || line.tokens[2] != "=" {
                    return Err(line.syntax("expected `d <arrow> = <terms>`"));
                }
                ds.push(line);
            }
            _ => return Err(unknown(line)),
        }
    }
    let field = b.field();
    let q = Arc::new(b.quiver);
    let mut seen = BTreeMap::new();
    let mut differential = Vec::new();
    for line in ds {
        let a = q.arrow_id(line.tokens[1]).map_err(|e| line.semantic(e.to_string()))?;
        if let Some(prev) = seen.insert(a, line.no) {
            return Err(line.semantic(format!("d({}) already given on line {prev}", line.tokens[1])));
        }
        let terms = linear_combination(line, &q, field, &line.tokens[3..])?;
        let s = PathSeries::from_terms(q.clone(), field, truncation, terms);
        // validate each line on its own so errors carry its number
        DGQuiverAlgebra::new_deferred(q.clone(), field, truncation, vec![(a, s.clone())])
            .map_err(|e| line.semantic(e.to_string()))?;
        differential.push((a, s));
    }
    DGQuiverAlgebra::new_deferred(q, field, truncation, differential).map_err(CliError::from_core)
}

/// `.aug`: idempotents, a graded basis and structure constants `m_n`.
pub fn parse_aug(text: &str) -> Result<AugmentedFiniteAlgebra, CliError> {
    let mut field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut ops: Vec<(&Line, usize)> = Vec::new();
    let all = lines(text);
    for line in &all {
        let t = &line.tokens;
        match t[0] {
            "field" => {
                if field.is_some() {
                    return Err(line.semantic("field declared twice"));
                }
                field = Some(field_line(line)?);
            }
            "vertex" => {
                line.arity(1, 1)?;
                identifier(line, t[1])?;
                if vertices.iter().any(|v| v == t[1]) {
                    return Err(line.semantic(format!("duplicate vertex `{}`", t[1])));
                }
                vertices.push(t[1].to_string());
            }
            "basis" => {
                line.arity(4, 4)?;
                identifier(line, t[1])?;
                let degree: i32 = integer(line, t[2], "an integer degree")?;
                let pos = |v: &str| {
                    vertices
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| line.semantic(format!("unknown vertex `{v}`")))
                };
                if basis.iter().any(|b| b.name == t[1]) {
                    return Err(line.semantic(format!("duplicate basis element `{}`", t[1])));
                }
                basis.push(BasisElement {
                    name: t[1].to_string(),
                    degree,
                    source: pos(t[3])?,
                    target: pos(t[4])?,
                });
            }
            "m2" => ops.push((line, 2)),
            "mN" => {
                line.arity(1, usize::MAX)?;
                let n: usize = integer(line, t[1], "an arity")?;
                if n == 0 {
                    return Err(line.semantic("m_0 is not supported"));
                }
                ops.push((line, n));
            }
            _ => return Err(unknown(line)),
        }
    }
    let field = field.unwrap_or(Field::Rational);
    let index = |line: &Line, name: &str| {
        basis
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| line.semantic(format!("unknown basis element `{name}`")))
    };
    let mut parsed = Vec::new();
    for (line, n) in ops {
        let args = if line.tokens[0] == "m2" {
            &line.tokens[1..]
        } else {
            &line.tokens[2..]
        };
        if args.len() < n + 2 || args[n] != "=" {
            return Err(line.syntax(format!("expected {n} basis elements, `=` and a value")));
        }
        let chain: Vec<usize> = args[..n].iter().map(|a| index(line, a)).collect::<Result<_, _>>()?;
        let rhs = &args[n + 1..];
        let mut value = SparseVec::new();
        if rhs != ["0"] {
            for part in rhs.split(|t| *t == "+") {
                let [c, x] = part else {
                    return Err(line.syntax("each summand is `<coeff> <basis element>`"));
                };
                let c = scalar(line, field, c)?;
                dgql_core::linalg::add_entry(&mut value, index(line, x)?, c);
            }
        }
        parsed.push((chain, value));
    }
    AugmentedFiniteAlgebra::new(field, vertices, basis, parsed).map_err(CliError::from_core)
}

/// `.alg`: quiver with relations, certified finite-dimensional at `truncation`.
pub fn parse_alg(text: &str, truncation: u32) -> Result<FiniteAlgebra, CliError> {
    let mut b = QuiverBuilder::new();
    let mut rels: Vec<&Line> = Vec::new();
    let all = lines(text);
    for line in &all {
        if b.accept(line)? {
            continue;
        }
        match line.tokens[0] {
            "relation" => {
                line.arity(2, usize::MAX)?;
                rels.push(line);
            }
            _ => return Err(unknown(line)),
        }
    }
    let field = b.field();
    let q = Arc::new(b.quiver);
    let mut gens = Vec::new();
    for line in rels {
        let terms = linear_combination(line, &q, field, &line.tokens[1..])?;
        let s = PathSeries::from_terms(q.clone(), field, truncation, terms);
        if s.is_zero() {
            return Err(line.semantic("relation is zero"));
        }
        let ends: Vec<(usize, usize)> = s.terms().keys().map(|p| (p.source, p.target)).collect();
        if ends.windows(2).any(|w| w[0] != w[1]) {
            return Err(line.semantic("relation mixes paths with different endpoints"));
        }
        gens.push(s);
    }
    let qt = groebner_with(q, field, &gens, truncation).map_err(CliError::from_core)?;
    FiniteAlgebra::from_quotient(&qt).map_err(CliError::from_core)
}

/// `.tree`: a tree quiver with optional `twist <arrow> <lambda> <mu>` lines.
#[derive(Clone, Debug)]
pub struct TwistedTree {
    pub field: Field,
    pub quiver: Arc<GradedQuiver>,
    /// Per arrow, the explicit `(λ, μ)` if a twist line was given.
    pub twists: Vec<Option<(Scalar, Scalar)>>,
}

pub fn parse_tree(text: &str) -> Result<TwistedTree, CliError> {
    let mut b = QuiverBuilder::new();
    let mut tw: Vec<&Line> = Vec::new();
    let all = lines(text);
    for line in &all {
        if b.accept(line)? {
            continue;
        }
        match line.tokens[0] {
            "twist" => {
                line.arity(3, 3)?;
                tw.push(line);
            }
            _ => return Err(unknown(line)),
        }
    }
    let field = b.field();
    let q = Arc::new(b.quiver);
    let mut twists = vec![None; q.num_arrows()];
    for line in tw {
        let a = q.arrow_id(line.tokens[1]).map_err(|e| line.semantic(e.to_string()))?;
        if twists[a].is_some() {
            return Err(line.semantic(format!("second twist for `{}`", line.tokens[1])));
        }
        let l = scalar(line, field, line.tokens[2])?;
        let m = scalar(line, field, line.tokens[3])?;
        if l.is_zero() || m.is_zero() {
            return Err(line.semantic(format!("twist on `{}` must be nonzero", line.tokens[1])));
        }
        twists[a] = Some((l, m));
    }
    if !q.is_tree() {
        return Err(CliError::Semantic {
            line: None,
            msg: "quiver is not a tree".into(),
        });
    }
    Ok(TwistedTree {
        field,
        quiver: q,
        twists,
    })
}

/// `.mod`: one or more `module <name>` blocks with `dim` and `map` lines.
/// `map <arrow> <entries>` gives the `dim e_t × dim e_s` matrix row-major.
pub fn parse_modules(text: &str, alg: &FiniteAlgebra) -> Result<Vec<(String, FDModule)>, CliError> {
    struct Pending<'a> {
        name: String,
        at: usize,
        dims: Vec<Option<usize>>,
        maps: Vec<&'a Line<'a>>,
    }
    let all = lines(text);
    let mut blocks: Vec<Pending> = Vec::new();
    let vertex = |line: &Line, v: &str| {
        alg.vertex_names()
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| line.semantic(format!("unknown vertex `{v}`")))
    };
    for line in &all {
        let t = &line.tokens;
        match t[0] {
            "module" => {
                line.arity(1, 1)?;
                identifier(line, t[1])?;
                if blocks.iter().any(|b| b.name == t[1]) {
                    return Err(line.semantic(format!("duplicate module `{}`", t[1])));
                }
                blocks.push(Pending {
                    name: t[1].to_string(),
                    at: line.no,
                    dims: vec![None; alg.num_vertices()],
                    maps: Vec::new(),
                });
            }
            "dim" | "map" => {
                let Some(cur) = blocks.last_mut() else {
                    return Err(line.syntax(format!("`{}` before any `module` line", t[0])));
                };
                if t[0] == "dim" {
                    line.arity(2, 2)?;
                    let v = vertex(line, t[1])?;
                    if cur.dims[v].is_some() {
                        return Err(line.semantic(format!("dimension at `{}` given twice", t[1])));
                    }
                    cur.dims[v] = Some(integer(line, t[2], "a dimension")?);
                } else {
                    line.arity(1, usize::MAX)?;
                    cur.maps.push(line);
                }
            }
            _ => return Err(unknown(line)),
        }
    }
    let field = alg.field();
    let mut out = Vec::new();
    for b in blocks {
        let dims: Vec<usize> = b.dims.iter().map(|d| d.unwrap_or(0)).collect();
        let mut gens: Vec<Option<Matrix>> = vec![None; alg.generators().len()];
        for line in b.maps {
            let name = line.tokens[1];
            let k = alg
                .generators()
                .iter()
                .position(|&g| alg.basis()[g].name == name)
                .ok_or_else(|| line.semantic(format!("`{name}` is not a generator of the algebra")))?;
            if gens[k].is_some() {
                return Err(line.semantic(format!("map for `{name}` given twice")));
            }
            let g = &alg.basis()[alg.generators()[k]];
            let (rows, cols) = (dims[g.target], dims[g.source]);
            let entries = &line.tokens[2..];
            if entries.len() != rows * cols {
                return Err(line.semantic(format!(
                    "map for `{name}` needs {rows}×{cols} = {} entries, found {}",
                    rows * cols,
                    entries.len()
                )));
            }
            let data = entries
                .iter()
                .map(|e| scalar(line, field, e))
                .collect::<Result<_, _>>()?;
            gens[k] = Some(Matrix::from_entries(field, rows, cols, data));
        }
        let gens = gens
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.unwrap_or_else(|| {
                    let g = &alg.basis()[alg.generators()[k]];
                    Matrix::zeros(field, dims[g.target], dims[g.source])
                })
            })
            .collect();
        let m = FDModule::new(alg, dims, gens).map_err(|e| CliError::Semantic {
            line: Some(b.at),
            msg: format!("module `{}`: {e}", b.name),
        })?;
        out.push((b.name, m));
    }
    Ok(out)
}
