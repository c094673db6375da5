//! The line-oriented model file format.
//!
//! ```text
//! KIND boolean
//! STATES 2
//! SCHEDULE 2,1,3        # optional; absent means synchronous
//! f1 = x2 & !x3
//! ```
//!
//! Probabilistic models repeat rules (`f1 = x1 @ 1/3`); logical models declare
//! `VAR x<i> MAX <m>` and `TABLE x<i> : <regulators>` followed by rows
//! `<inputs> -> <target>`. Everything after `#` is a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::boolean::{boolean_to_polynomial, parse_boolean, BooleanExpression};
use super::logical::{logical_to_pds, ExtensionReport, LogicalModel, TransitionTable};
use crate::error::{Error, Result};
use crate::ffpoly::{max_variable_index, parse_polynomial, Polynomial, PrimeField};
use crate::model::{Pds, ProbabilisticPds, UpdateSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Polynomial,
    Boolean,
    Logical,
    Probabilistic,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Polynomial => "polynomial",
            ModelKind::Boolean => "boolean",
            ModelKind::Logical => "logical",
            ModelKind::Probabilistic => "probabilistic",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polynomial" => Ok(ModelKind::Polynomial),
            "boolean" => Ok(ModelKind::Boolean),
            "logical" => Ok(ModelKind::Logical),
            "probabilistic" => Ok(ModelKind::Probabilistic),
            _ => Err(Error::Invalid(format!("unknown model kind '{s}'"))),
        }
    }
}

/// The update rules of a document, by kind. Index `i` holds the rule(s) for `f<i+1>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rules {
    Polynomial(Vec<Polynomial>),
    Boolean(Vec<BooleanExpression>),
    Logical(LogicalModel),
    /// Candidates per coordinate; probabilities are either all given or all absent
    /// (uniform) within a coordinate.
    Probabilistic(Vec<Vec<(Polynomial, Option<BigRational>)>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    field: PrimeField,
    schedule: UpdateSchedule,
    rules: Rules,
}

/// A translated document: the dynamical system plus, for logical models, the states
/// added by the field extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub system: System,
    pub extension: Option<ExtensionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum System {
    Deterministic(Pds),
    Probabilistic(ProbabilisticPds),
}

impl System {
    pub fn field(&self) -> PrimeField {
        match self {
            System::Deterministic(f) => f.field(),
            System::Probabilistic(f) => f.field(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            System::Deterministic(f) => f.nvars(),
            System::Probabilistic(f) => f.nvars(),
        }
    }
}

impl ModelDocument {
    pub fn new(field: PrimeField, schedule: UpdateSchedule, rules: Rules) -> Result<Self> {
        let doc = ModelDocument { field, schedule, rules };
        let n = doc.nvars();
        doc.schedule.check(n)?;
        match &doc.rules {
            Rules::Polynomial(fs) => {
                if fs.iter().any(|f| f.field() != field || f.nvars() != n) {
                    return Err(Error::mismatch("rule ring differs from the document's"));
                }
            }
            Rules::Boolean(es) => {
                if field.characteristic() != 2 {
                    return Err(Error::Invalid("boolean models need STATES 2".into()));
                }
                if es.iter().any(|e| e.arity() > n) {
                    return Err(Error::mismatch("rule uses an undeclared variable"));
                }
            }
            Rules::Logical(m) => {
                if m.field() != field {
                    return Err(Error::Invalid(format!(
                        "logical model needs STATES {}",
                        m.field().characteristic()
                    )));
                }
            }
            Rules::Probabilistic(cs) => {
                if doc.schedule != UpdateSchedule::Synchronous {
                    return Err(Error::Unsupported("schedules for probabilistic models".into()));
                }
                for (i, c) in cs.iter().enumerate() {
                    if c.is_empty() {
                        return Err(Error::Invalid(format!("no rule for f{}", i + 1)));
                    }
                    if c.iter().any(|(f, _)| f.field() != field || f.nvars() != n) {
                        return Err(Error::mismatch("rule ring differs from the document's"));
                    }
                    let given = c.iter().filter(|(_, p)| p.is_some()).count();
                    if given != 0 && given != c.len() {
                        return Err(Error::Invalid(format!(
                            "f{}: give probabilities for all rules or for none",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(doc)
    }

    pub fn kind(&self) -> ModelKind {
        match self.rules {
            Rules::Polynomial(_) => ModelKind::Polynomial,
            Rules::Boolean(_) => ModelKind::Boolean,
            Rules::Logical(_) => ModelKind::Logical,
            Rules::Probabilistic(_) => ModelKind::Probabilistic,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of states per variable, the `STATES` header.
    pub fn states(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        match &self.rules {
            Rules::Polynomial(fs) => fs.len(),
            Rules::Boolean(es) => es.len(),
            Rules::Logical(m) => m.nvars(),
            Rules::Probabilistic(cs) => cs.len(),
        }
    }

    pub fn schedule(&self) -> &UpdateSchedule {
        &self.schedule
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    /// Replace the update schedule.
    pub fn with_schedule(mut self, schedule: UpdateSchedule) -> Result<Self> {
        schedule.check(self.nvars())?;
        if schedule != UpdateSchedule::Synchronous && self.kind() == ModelKind::Probabilistic {
            return Err(Error::Unsupported("schedules for probabilistic models".into()));
        }
        self.schedule = schedule;
        Ok(self)
    }

    /// Parse raw bytes, which must be UTF-8.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        match std::str::from_utf8(bytes) {
            Ok(text) => Self::parse(text),
            Err(e) => {
                let before = &bytes[..e.valid_up_to()];
                let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
                let column = before.len() - before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1) + 1;
                Err(Error::parse(line, column, "invalid UTF-8"))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Reader::new(text).document()
    }
}

impl FromStr for ModelDocument {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelDocument::parse(s)
    }
}

/// Build the dynamical system a document describes, with its schedule folded in.
pub fn document_to_system(doc: &ModelDocument) -> Result<Translation> {
    let n = doc.nvars();
    let (pds, extension) = match &doc.rules {
        Rules::Polynomial(fs) => (Pds::new(doc.field, fs.clone())?, None),
        Rules::Boolean(es) => {
            let fs = es
                .iter()
                .map(|e| boolean_to_polynomial(e, n))
                .collect::<Result<Vec<_>>>()?;
            (Pds::new(doc.field, fs)?, None)
        }
        Rules::Logical(m) => {
            let (pds, report) = logical_to_pds(m)?;
            (pds, Some(report))
        }
        Rules::Probabilistic(cs) => {
            let system = if cs.iter().all(|c| c[0].1.is_none()) {
                ProbabilisticPds::uniform(
                    doc.field,
                    cs.iter().map(|c| c.iter().map(|(f, _)| f.clone()).collect()).collect(),
                )?
            } else {
                let choices = cs
                    .iter()
                    .map(|c| {
                        let uniform = BigRational::new(BigInt::from(1), BigInt::from(c.len()));
                        c.iter()
                            .map(|(f, p)| (f.clone(), p.clone().unwrap_or_else(|| uniform.clone())))
                            .collect()
                    })
                    .collect();
                ProbabilisticPds::new(doc.field, choices)?
            };
            return Ok(Translation {
                system: System::Probabilistic(system),
                extension: None,
            });
        }
    };
    Ok(Translation {
        system: System::Deterministic(pds.with_schedule(&doc.schedule)?),
        extension,
    })
}

impl fmt::Display for ModelDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KIND {}", self.kind())?;
        writeln!(f, "STATES {}", self.states())?;
        if let UpdateSchedule::Sequential(_) = self.schedule {
            writeln!(f, "SCHEDULE {}", self.schedule)?;
        }
        match &self.rules {
            Rules::Polynomial(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    writeln!(f, "f{} = {g}", i + 1)?;
                }
            }
            Rules::Boolean(es) => {
                for (i, e) in es.iter().enumerate() {
                    writeln!(f, "f{} = {e}", i + 1)?;
                }
            }
            Rules::Probabilistic(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    for (g, p) in c {
                        match p {
                            Some(p) => writeln!(f, "f{} = {g} @ {}/{}", i + 1, p.numer(), p.denom())?,
                            None => writeln!(f, "f{} = {g}", i + 1)?,
                        }
                    }
                }
            }
            Rules::Logical(m) => {
                for (i, max) in m.max_levels().iter().enumerate() {
                    writeln!(f, "VAR x{} MAX {max}", i + 1)?;
                }
                for (i, t) in m.tables().iter().enumerate() {
                    let regs: Vec<String> = t.regulators.iter().map(|r| format!("x{}", r + 1)).collect();
                    writeln!(f, "TABLE x{} : {}", i + 1, regs.join(", "))?;
                    for (inputs, target) in &t.rows {
                        let cells: Vec<String> = inputs.iter().map(u32::to_string).collect();
                        writeln!(f, "{} -> {target}", cells.join(" "))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A meaningful line: 1-based number, the text with comments removed, and the byte
/// offset of that text in the original line.
#[derive(Debug, Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
    offset: usize,
}

impl Line<'_> {
    fn error_at(&self, byte: usize, message: impl Into<String>) -> Error {
        Error::parse(self.number, self.offset + byte + 1, message)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(0, message)
    }

    /// Shift a single-line expression error onto this line, starting at `byte`.
    fn relocate(&self, byte: usize, err: Error) -> Error {
        match err {
            Error::Parse { column, message, .. } => self.error_at(byte + column - 1, message),
            other => self.error_at(byte, other.to_string()),
        }
    }
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    last_line: usize,
}

/// A rule `f<i> = <expr> [@ p]` awaiting the variable count.
struct RawRule<'a> {
    line: Line<'a>,
    index: usize,
    expr: &'a str,
    expr_at: usize,
    probability: Option<BigRational>,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            last_line = k + 1;
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let offset = body.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if !trimmed.is_empty() {
                lines.push(Line {
                    number: k + 1,
                    text: trimmed,
                    offset,
                });
            }
        }
        Reader { lines, last_line }
    }

    fn document(self) -> Result<ModelDocument> {
        let end = Error::parse(self.last_line.max(1), 1, "unexpected end of file");
        let mut it = self.lines.into_iter();
        let kind_line = it.next().ok_or_else(|| end.clone())?;
        let kind_text = keyword_argument(&kind_line, "KIND")?;
        let kind: ModelKind = kind_text
            .parse()
            .map_err(|e: Error| kind_line.error_at(5, strip_prefix_message(e)))?;
        let states_line = it.next().ok_or(end)?;
        let states_text = keyword_argument(&states_line, "STATES")?;
        let states: u64 = states_text
            .parse()
            .map_err(|_| states_line.error_at(7, format!("expected a number of states, found '{states_text}'")))?;
        let field = PrimeField::new(states).map_err(|e| states_line.error_at(7, e.to_string()))?;

        let mut schedule: Option<(Line, &str)> = None;
        let mut body = Vec::new();
        for line in it {
            if line.text.starts_with("SCHEDULE") && is_keyword(line.text, "SCHEDULE") {
                if schedule.is_some() {
                    return Err(line.error("duplicate SCHEDULE"));
                }
                schedule = Some((line, keyword_argument(&line, "SCHEDULE")?));
            } else {
                body.push(line);
            }
        }

        let (rules, n) = match kind {
            ModelKind::Logical => {
                let model = logical_rules(&body)?;
                let n = model.nvars();
                if model.field() != field {
                    return Err(states_line.error_at(
                        7,
                        format!(
                            "logical model with maximum level {} needs STATES {}",
                            model.max_levels().iter().max().copied().unwrap_or(1),
                            model.field().characteristic()
                        ),
                    ));
                }
                (Rules::Logical(model), n)
            }
            _ => {
                if kind == ModelKind::Boolean && states != 2 {
                    return Err(states_line.error_at(7, "boolean models need STATES 2"));
                }
                expression_rules(kind, field, &body)?
            }
        };

        let schedule = match schedule {
            None => UpdateSchedule::Synchronous,
            Some((line, text)) => {
                if kind == ModelKind::Probabilistic {
                    return Err(line.error("schedules are not supported for probabilistic models"));
                }
                let at = line.text.len() - text.len();
                UpdateSchedule::parse_order(text, n).map_err(|e| line.error_at(at, strip_prefix_message(e)))?
            }
        };
        ModelDocument::new(field, schedule, rules)
    }
}

fn is_keyword(text: &str, keyword: &str) -> bool {
    text.strip_prefix(keyword)
        .is_some_and(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
}

fn keyword_argument<'a>(line: &Line<'a>, keyword: &str) -> Result<&'a str> {
    if !is_keyword(line.text, keyword) {
        return Err(line.error(format!("expected '{keyword}'")));
    }
    let rest = line.text[keyword.len()..].trim();
    if rest.is_empty() {
        return Err(line.error_at(keyword.len(), format!("'{keyword}' needs an argument")));
    }
    Ok(rest)
}

/// The message of an error without its category prefix.
fn strip_prefix_message(e: Error) -> String {
    match e {
        Error::Invalid(m) | Error::Unsupported(m) | Error::Resource(m) | Error::Mismatch(m) => m,
        Error::Parse { message, .. } => message,
        other => other.to_string(),
    }
}

/// Parse `x<i>` (1-based) at the start of `text`; returns the 0-based index and the
/// bytes consumed.
fn variable_name(text: &str, letter: char) -> Option<(usize, usize)> {
    let rest = text.strip_prefix(letter)?;
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    let i: usize = rest[..digits].parse().ok()?;
    (i >= 1).then(|| (i - 1, digits + 1))
}

fn parse_rule<'a>(line: Line<'a>, probabilistic: bool) -> Result<RawRule<'a>> {
    let text = line.text;
    let (index, used) = variable_name(text, 'f').ok_or_else(|| line.error("expected a rule 'f<i> = <expr>'"))?;
    let after = &text[used..];
    let eq = after.trim_start();
    if !eq.starts_with('=') {
        return Err(line.error_at(used + after.len() - eq.len(), "expected '='"));
    }
    let expr_start = text.len() - eq.len() + 1;
    let mut expr = &text[expr_start..];
    let mut probability = None;
    if let Some(at) = expr.find('@') {
        let p_text = expr[at + 1..].trim();
        let p_at = expr_start + at;
        if !probabilistic {
            return Err(line.error_at(p_at, "probabilities are only allowed in probabilistic models"));
        }
        probability = Some(
            parse_probability(p_text)
                .ok_or_else(|| line.error_at(p_at, format!("expected a probability such as 1/2, found '{p_text}'")))?,
        );
        expr = &expr[..at];
    }
    let lead = expr.len() - expr.trim_start().len();
    Ok(RawRule {
        line,
        index,
        expr: expr.trim(),
        expr_at: expr_start + lead,
        probability,
    })
}

fn parse_probability(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn expression_rules(kind: ModelKind, field: PrimeField, body: &[Line]) -> Result<(Rules, usize)> {
    let probabilistic = kind == ModelKind::Probabilistic;
    let mut raw = Vec::new();
    for &line in body {
        raw.push(parse_rule(line, probabilistic)?);
    }
    let n = raw
        .iter()
        .map(|r| (r.index + 1).max(max_variable_index(r.expr)))
        .max()
        .unwrap_or(0);
    if n == 0 {
        return Err(Error::Invalid("the model has no rules".into()));
    }
    let mut by_index: Vec<Vec<&RawRule>> = vec![Vec::new(); n];
    for r in &raw {
        if !probabilistic && !by_index[r.index].is_empty() {
            return Err(r.line.error(format!("duplicate rule for f{}", r.index + 1)));
        }
        by_index[r.index].push(r);
    }
    // Coordinates without a rule keep their value: f<i> = x<i>.
    let polynomial = |r: &RawRule| parse_polynomial(r.expr, field, n).map_err(|e| r.line.relocate(r.expr_at, e));
    let rules = match kind {
        ModelKind::Polynomial => Rules::Polynomial(
            by_index
                .iter()
                .enumerate()
                .map(|(i, rs)| match rs.first() {
                    Some(r) => polynomial(r),
                    None => Ok(Polynomial::var(field, n, i)),
                })
                .collect::<Result<_>>()?,
        ),
        ModelKind::Boolean => Rules::Boolean(
            by_index
                .iter()
                .enumerate()
                .map(|(i, rs)| match rs.first() {
                    Some(r) => parse_boolean(r.expr, n).map_err(|e| r.line.relocate(r.expr_at, e)),
                    None => Ok(BooleanExpression::Var(i)),
                })
                .collect::<Result<_>>()?,
        ),
        _ => {
            let mut all = Vec::with_capacity(n);
            for (i, rs) in by_index.iter().enumerate() {
                if rs.is_empty() {
                    all.push(vec![(Polynomial::var(field, n, i), None)]);
                    continue;
                }
                let given = rs.iter().filter(|r| r.probability.is_some()).count();
                if given != 0 && given != rs.len() {
                    let r = rs
                        .iter()
                        .find(|r| r.probability.is_none())
                        .expect("some rule lacks one");
                    return Err(r
                        .line
                        .error("give probabilities for all rules of this coordinate or for none"));
                }
                all.push(
                    rs.iter()
                        .map(|r| Ok((polynomial(r)?, r.probability.clone())))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            Rules::Probabilistic(all)
        }
    };
    Ok((rules, n))
}

fn logical_rules(body: &[Line]) -> Result<LogicalModel> {
    let mut max: BTreeMap<usize, u32> = BTreeMap::new();
    let mut tables: BTreeMap<usize, (Line, TransitionTable)> = BTreeMap::new();
    let mut current: Option<usize> = None;
    for &line in body {
        let text = line.text;
        if is_keyword(text, "VAR") {
            let rest = text[3..].trim_start();
            let at = text.len() - rest.len();
            let (v, used) = variable_name(rest, 'x').ok_or_else(|| line.error_at(at, "expected a variable x<i>"))?;
            let tail = rest[used..].trim_start();
            let m_text = tail
                .strip_prefix("MAX")
                .map(str::trim)
                .ok_or_else(|| line.error_at(text.len() - tail.len(), "expected 'MAX <m>'"))?;
            let m: u32 =
                m_text.parse().ok().filter(|&m| m >= 1).ok_or_else(|| {
                    line.error_at(text.len() - m_text.len(), "the maximum level must be a number >= 1")
                })?;
            if max.insert(v, m).is_some() {
                return Err(line.error(format!("x{} is declared twice", v + 1)));
            }
            current = None;
        } else if is_keyword(text, "TABLE") {
            let rest = text[5..].trim_start();
            let at = text.len() - rest.len();
            let (v, used) = variable_name(rest, 'x').ok_or_else(|| line.error_at(at, "expected a variable x<i>"))?;
            let tail = rest[used..].trim_start();
            let regs_text = tail
                .strip_prefix(':')
                .ok_or_else(|| line.error_at(text.len() - tail.len(), "expected ':' before the regulators"))?;
            let mut regulators = Vec::new();
            for token in regs_text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let offset = token.as_ptr() as usize - text.as_ptr() as usize;
                match variable_name(token, 'x') {
                    Some((r, used)) if used == token.len() => regulators.push(r),
                    _ => return Err(line.error_at(offset, format!("expected a regulator x<i>, found '{token}'"))),
                }
            }
            if tables.contains_key(&v) {
                return Err(line.error(format!("duplicate table for x{}", v + 1)));
            }
            tables.insert(
                v,
                (
                    line,
                    TransitionTable {
                        regulators,
                        rows: BTreeMap::new(),
                    },
                ),
            );
            current = Some(v);
        } else if let Some((inputs_text, target_text)) = text.split_once("->") {
            let v = current.ok_or_else(|| line.error("table row outside of a TABLE"))?;
            let table = &mut tables.get_mut(&v).expect("current table exists").1;
            let width = table.regulators.len();
            let mut inputs: Vec<u32> = Vec::with_capacity(width);
            let tokens: Vec<&str> = inputs_text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect();
            // A single digit string such as `012` is accepted for multi-input rows.
            let cells: Vec<String> = if tokens.len() == 1 && width > 1 && tokens[0].len() == width {
                tokens[0].chars().map(String::from).collect()
            } else {
                tokens.iter().map(|t| t.to_string()).collect()
            };
            for cell in &cells {
                inputs.push(
                    cell.parse()
                        .map_err(|_| line.error(format!("expected a level, found '{cell}'")))?,
                );
            }
            if inputs.len() != width {
                return Err(line.error(format!("expected {width} input levels, found {}", inputs.len())));
            }
            let target_text = target_text.trim();
            let target: u32 = target_text.parse().map_err(|_| {
                line.error_at(
                    text.len() - target_text.len(),
                    format!("expected a target level, found '{target_text}'"),
                )
            })?;
            if table.rows.insert(inputs, target).is_some() {
                return Err(line.error("duplicate table row"));
            }
        } else {
            return Err(line.error("expected VAR, TABLE or a table row"));
        }
    }
    let n = max.keys().next_back().map_or(0, |&v| v + 1);
    if n == 0 {
        return Err(Error::Invalid("the model declares no variables".into()));
    }
    if let Some(i) = (0..n).find(|i| !max.contains_key(i)) {
        return Err(Error::Invalid(format!("x{} is not declared", i + 1)));
    }
    for (&v, (line, t)) in &tables {
        if v >= n {
            return Err(line.error(format!("table for undeclared variable x{}", v + 1)));
        }
        if let Some(&r) = t.regulators.iter().find(|&&r| r >= n) {
            return Err(line.error(format!("undeclared regulator x{}", r + 1)));
        }
    }
    if let Some(i) = (0..n).find(|i| !tables.contains_key(i)) {
        return Err(Error::Invalid(format!("no table for x{}", i + 1)));
    }
    let max: Vec<u32> = max.into_values().collect();
    let tables: Vec<TransitionTable> = tables.into_values().map(|(_, t)| t).collect();
    LogicalModel::new(max, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::State;

    const APPENDIX: &str = "KIND polynomial
STATES 2
f1 = x1*x2*x3+x1*x2+x2*x3+x2
f2 = x1*x2*x3+x1*x2+x1*x3+x1+x2
f3 = x1*x2*x3+x1*x3+x1+x2*x3+x2
";

    #[test]
    fn polynomial_document_infers_arity() {
        let doc = ModelDocument::parse("KIND polynomial\nSTATES 2\nf1 = x1*x2+x2\n").unwrap();
        assert_eq!(doc.nvars(), 2);
        assert_eq!(doc.to_string(), "KIND polynomial\nSTATES 2\nf1 = x1*x2+x2\nf2 = x2\n");
        assert_eq!(doc.kind(), ModelKind::Polynomial);
        let doc = ModelDocument::parse("KIND polynomial\nSTATES 2\nf1 = x2\nf2 = x1\n").unwrap();
        assert_eq!(doc.nvars(), 2);
    }

    #[test]
    fn states_must_be_prime() {
        let err = ModelDocument::parse("KIND polynomial\nSTATES 4\nf1 = x1\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 8, "4 is not prime"));
        assert!(err.to_string().ends_with("4 is not prime"));
    }

    #[test]
    fn boolean_document_builds_a_tree() {
        let doc = ModelDocument::parse("KIND boolean\nSTATES 2\nf1 = (x1 & x2) | !x3\nf2 = x1\nf3 = x2\n").unwrap();
        let Rules::Boolean(es) = doc.rules() else {
            panic!("boolean rules expected")
        };
        assert_eq!(es[0].to_string(), "x1 & x2 | !x3");
    }

    #[test]
    fn appendix_round_trip() {
        let doc = ModelDocument::parse(APPENDIX).unwrap();
        assert_eq!(doc.to_string(), APPENDIX);
        let t = document_to_system(&doc).unwrap();
        let System::Deterministic(f) = t.system else {
            panic!("deterministic system expected")
        };
        assert_eq!(f.step(&State::new(vec![1, 0, 0])).unwrap(), State::new(vec![0, 1, 1]));
    }

    #[test]
    fn errors_report_line_and_column() {
        let err = ModelDocument::parse("KIND polynomial\nSTATES 2\n# comment\nf1 = x1 +* x2\nf2 = x2\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 4,
                    column: 10,
                    ..
                }
            ),
            "{err}"
        );
        let err = ModelDocument::parse("KIND polynomial\nSTATES 2\nf1 = x1\nf1 = x1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = ModelDocument::parse("KIND boolean\nSTATES 2\nf1 = x1 + x2\nf2 = x1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 9, .. }), "{err}");
        assert!(ModelDocument::parse("KIND nonsense\nSTATES 2\nf1 = x1\n").is_err());
        assert!(ModelDocument::parse("KIND polynomial\n").is_err());
        assert!(ModelDocument::parse("KIND polynomial\nSTATES 2\nf0 = x1\n").is_err());
        assert!(ModelDocument::parse("KIND polynomial\nSTATES 2\nf1 = x0\n").is_err());
    }

    #[test]
    fn probabilistic_rules_default_to_uniform() {
        let doc = ModelDocument::parse("KIND probabilistic\nSTATES 2\nf1 = x1\nf1 = x2\nf2 = x2\n").unwrap();
        let t = document_to_system(&doc).unwrap();
        let System::Probabilistic(f) = t.system else {
            panic!("probabilistic system expected")
        };
        assert_eq!(f.choices()[0].len(), 2);
        assert_eq!(f.choices()[0][0].probability, BigRational::new(1.into(), 2.into()));
        assert_eq!(
            doc.to_string(),
            "KIND probabilistic\nSTATES 2\nf1 = x1\nf1 = x2\nf2 = x2\n"
        );
    }

    #[test]
    fn explicit_probabilities_are_checked() {
        let text = "KIND probabilistic\nSTATES 2\nf1 = x1 @ 1/3\nf1 = x2 @ 2/3\nf2 = x2 @ 1/1\n";
        let doc = ModelDocument::parse(text).unwrap();
        assert_eq!(doc.to_string(), text);
        assert!(document_to_system(&doc).is_ok());
        let bad = "KIND probabilistic\nSTATES 2\nf1 = x1 @ 1/3\nf1 = x2 @ 1/3\nf2 = x2\n";
        let err = document_to_system(&ModelDocument::parse(bad).unwrap()).unwrap_err();
        assert!(err.to_string().contains("sum"), "{err}");
        let mixed = "KIND probabilistic\nSTATES 2\nf1 = x1 @ 1/3\nf1 = x2\n";
        assert!(ModelDocument::parse(mixed).is_err());
        assert!(ModelDocument::parse("KIND polynomial\nSTATES 2\nf1 = x1 @ 1/2\n").is_err());
    }

    #[test]
    fn schedule_is_folded_in() {
        let doc = ModelDocument::parse("KIND polynomial\nSTATES 2\nSCHEDULE 1,2\nf1 = x2\nf2 = x1\n").unwrap();
        assert_eq!(doc.schedule(), &UpdateSchedule::Sequential(vec![0, 1]));
        let System::Deterministic(f) = document_to_system(&doc).unwrap().system else {
            panic!("deterministic system expected")
        };
        assert_eq!(f.function(0).to_string(), "x2");
        assert_eq!(f.function(1).to_string(), "x2");
        assert!(ModelDocument::parse("KIND polynomial\nSTATES 2\nSCHEDULE 1,1\nf1 = x2\nf2 = x1\n").is_err());
    }

    const TABLE_MODEL: &str = "KIND logical
STATES 3
VAR x1 MAX 1
VAR x2 MAX 2
TABLE x1 : x1
0 -> 0
1 -> 1
TABLE x2 : x1, x2
0 0 -> 0
0 1 -> 1
0 2 -> 2
1 0 -> 1
1 1 -> 2
1 2 -> 2
";

    #[test]
    fn logical_document() {
        let doc = ModelDocument::parse(TABLE_MODEL).unwrap();
        assert_eq!(doc.to_string(), TABLE_MODEL);
        let t = document_to_system(&doc).unwrap();
        let extra: Vec<String> = t
            .extension
            .unwrap()
            .extra_states(10)
            .unwrap()
            .iter()
            .map(State::digits)
            .collect();
        assert_eq!(extra, ["20", "21", "22"]);
        let wrong_states = TABLE_MODEL.replace("STATES 3", "STATES 5");
        let err = ModelDocument::parse(&wrong_states).unwrap_err();
        assert!(err.to_string().contains("needs STATES 3"), "{err}");
        let compact = TABLE_MODEL.replace("0 1 -> 1", "01 -> 1");
        assert_eq!(ModelDocument::parse(&compact).unwrap(), doc);
        let missing = TABLE_MODEL.replace("1 2 -> 2\n", "");
        assert!(ModelDocument::parse(&missing)
            .unwrap_err()
            .to_string()
            .contains("incomplete"));
    }

    #[test]
    fn invalid_utf8_is_a_parse_error() {
        let err = ModelDocument::from_bytes(b"KIND polynomial\nSTATES 2\nf1 = \xff\n").unwrap_err();
        assert_eq!(err, Error::parse(3, 6, "invalid UTF-8"));
    }
}
