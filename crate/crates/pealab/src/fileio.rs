//! Text formats: `.pea` partial-addition tables, `.pmv` total tables,
//! `.grp` group presentations and state assignment files.
//!
//! All formats are line-oriented with whitespace-separated tokens; a line
//! whose first token starts with `#` is a comment. Parse errors carry the
//! 1-based line and column of the offending token.

use std::collections::BTreeMap;

use num::rational::BigRational;
use thiserror::Error;

use crate::pea::{FiniteTable, TableError};
use crate::pmv::{PmvError, PmvTable};
use crate::pogroup::{Cone, GroupElement, PoGroupPresentation, WindowCell, WindowTable};
use crate::ratio;
use crate::statespace::StateVector;

#[derive(Debug, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in line.split_inclusive(char::is_whitespace) {
        let trimmed = part.trim_end_matches(char::is_whitespace);
        if !trimmed.is_empty() {
            out.push((col, trimmed));
        }
        col += part.chars().count();
    }
    out
}

fn is_comment(toks: &[(usize, &str)]) -> bool {
    toks.is_empty() || toks[0].1.starts_with('#')
}

struct TableHeader {
    labels: Vec<String>,
    zero: Option<(usize, String)>,
    one: Option<(usize, String)>,
}

impl TableHeader {
    fn index(&self) -> BTreeMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

fn table_error(e: TableError) -> ParseError {
    ParseError::new(0, 0, format!("table construction failed: {e}"))
}

/// Parses the shared header lines; returns leftover sum-like lines.
fn parse_table_lines(
    src: &str,
) -> Result<(TableHeader, Vec<(usize, Vec<(usize, String)>)>), ParseError> {
    let mut header = TableHeader {
        labels: Vec::new(),
        zero: None,
        one: None,
    };
    let mut body = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = tokens(raw);
        if is_comment(&toks) {
            continue;
        }
        match toks[0].1 {
            "elements:" => {
                if !header.labels.is_empty() {
                    return Err(ParseError::new(lineno, toks[0].0, "duplicate elements line"));
                }
                for (col, tok) in &toks[1..] {
                    if header.labels.iter().any(|l| l == tok) {
                        return Err(ParseError::new(
                            lineno,
                            *col,
                            format!("duplicate element label `{tok}`"),
                        ));
                    }
                    header.labels.push((*tok).to_string());
                }
                if header.labels.len() < 2 {
                    return Err(ParseError::new(
                        lineno,
                        toks[0].0,
                        "need at least two elements",
                    ));
                }
            }
            "zero:" | "one:" => {
                if toks.len() != 2 {
                    return Err(ParseError::new(
                        lineno,
                        toks[0].0,
                        "expected exactly one label",
                    ));
                }
                let slot = if toks[0].1 == "zero:" {
                    &mut header.zero
                } else {
                    &mut header.one
                };
                if slot.is_some() {
                    return Err(ParseError::new(lineno, toks[0].0, "duplicate constant line"));
                }
                *slot = Some((toks[1].0, toks[1].1.to_string()));
            }
            _ => {
                body.push((
                    lineno,
                    toks.into_iter()
                        .map(|(c, t)| (c, t.to_string()))
                        .collect(),
                ));
            }
        }
    }
    if header.labels.is_empty() {
        return Err(ParseError::new(1, 1, "missing `elements:` line"));
    }
    Ok((header, body))
}

fn resolve(
    index: &BTreeMap<&str, usize>,
    lineno: usize,
    col: usize,
    tok: &str,
) -> Result<usize, ParseError> {
    index
        .get(tok)
        .copied()
        .ok_or_else(|| ParseError::new(lineno, col, format!("unknown element `{tok}`")))
}

fn constant(
    header: &TableHeader,
    index: &BTreeMap<&str, usize>,
    which: &str,
) -> Result<usize, ParseError> {
    let (col, label) = match which {
        "zero" => header.zero.as_ref(),
        _ => header.one.as_ref(),
    }
    .ok_or_else(|| ParseError::new(1, 1, format!("missing `{which}:` line")))?;
    index
        .get(label.as_str())
        .copied()
        .ok_or_else(|| ParseError::new(0, *col, format!("unknown element `{label}`")))
}

/// Parses a `.pea` file. Identity sums with 0 may be omitted; they are
/// completed automatically.
pub fn parse_pea(src: &str) -> Result<FiniteTable, ParseError> {
    let (header, body) = parse_table_lines(src)?;
    let index = header.index();
    let zero = constant(&header, &index, "zero")?;
    let one = constant(&header, &index, "one")?;

    let mut cells: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (lineno, toks) in &body {
        if toks.len() != 5 || toks[1].1 != "+" || toks[3].1 != "=" {
            return Err(ParseError::new(
                *lineno,
                toks[0].0,
                "expected a sum line `a + b = c`",
            ));
        }
        let a = resolve(&index, *lineno, toks[0].0, &toks[0].1)?;
        let b = resolve(&index, *lineno, toks[2].0, &toks[2].1)?;
        let c = resolve(&index, *lineno, toks[4].0, &toks[4].1)?;
        if let Some((prev, _)) = cells.get(&(a, b)) {
            if *prev != c {
                return Err(ParseError::new(
                    *lineno,
                    toks[0].0,
                    format!(
                        "conflicting redefinition of {} + {}",
                        header.labels[a], header.labels[b]
                    ),
                ));
            }
        }
        cells.insert((a, b), (c, *lineno));
    }

    let mut t = FiniteTable::with_identity_sums(
        header.labels.len(),
        zero,
        one,
        cells.iter().map(|(&(a, b), &(c, _))| (a, b, c)),
    )
    .map_err(table_error)?;
    t.set_labels(header.labels).map_err(table_error)?;
    Ok(t)
}

/// Serializes a table as `.pea`, with optional leading comment lines.
pub fn write_pea(table: &FiniteTable, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(&format!("elements: {}\n", table.labels().join(" ")));
    out.push_str(&format!("zero: {}\n", table.label(table.zero())));
    out.push_str(&format!("one: {}\n", table.label(table.one())));
    for (a, b, c) in table.defined_sums() {
        // identity sums are implicit
        if a == table.zero() || b == table.zero() {
            continue;
        }
        out.push_str(&format!(
            "{} + {} = {}\n",
            table.label(a),
            table.label(b),
            table.label(c)
        ));
    }
    out
}

/// Parses a `.pmv` file: all `a + b = c` rows of the total sum plus one
/// `neg: x xminus xtilde` line per element.
pub fn parse_pmv(src: &str) -> Result<PmvTable, ParseError> {
    let (header, body) = parse_table_lines(src)?;
    let index = header.index();
    let zero = constant(&header, &index, "zero")?;
    let one = constant(&header, &index, "one")?;
    let n = header.labels.len();

    let mut oplus: Vec<Option<usize>> = vec![None; n * n];
    let mut minus: Vec<Option<usize>> = vec![None; n];
    let mut tilde: Vec<Option<usize>> = vec![None; n];
    for (lineno, toks) in &body {
        if toks[0].1 == "neg:" {
            if toks.len() != 4 {
                return Err(ParseError::new(
                    *lineno,
                    toks[0].0,
                    "expected `neg: x xminus xtilde`",
                ));
            }
            let x = resolve(&index, *lineno, toks[1].0, &toks[1].1)?;
            let m = resolve(&index, *lineno, toks[2].0, &toks[2].1)?;
            let t = resolve(&index, *lineno, toks[3].0, &toks[3].1)?;
            minus[x] = Some(m);
            tilde[x] = Some(t);
        } else {
            if toks.len() != 5 || toks[1].1 != "+" || toks[3].1 != "=" {
                return Err(ParseError::new(
                    *lineno,
                    toks[0].0,
                    "expected a sum line `a + b = c` or a `neg:` line",
                ));
            }
            let a = resolve(&index, *lineno, toks[0].0, &toks[0].1)?;
            let b = resolve(&index, *lineno, toks[2].0, &toks[2].1)?;
            let c = resolve(&index, *lineno, toks[4].0, &toks[4].1)?;
            oplus[a * n + b] = Some(c);
        }
    }
    let oplus: Vec<usize> = oplus
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                ParseError::new(
                    0,
                    0,
                    format!(
                        "missing oplus row {} + {}",
                        header.labels[i / n],
                        header.labels[i % n]
                    ),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    let unwrap_neg = |v: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>, ParseError> {
        v.into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    ParseError::new(
                        0,
                        0,
                        format!("missing {what} negation for {}", header.labels[i]),
                    )
                })
            })
            .collect()
    };
    let minus = unwrap_neg(minus, "left")?;
    let tilde = unwrap_neg(tilde, "right")?;

    let mk = |e: PmvError| ParseError::new(0, 0, format!("table construction failed: {e}"));
    let mut t = PmvTable::new(n, zero, one, oplus, minus, tilde).map_err(mk)?;
    t.set_labels(header.labels).map_err(mk)?;
    Ok(t)
}

/// Serializes a pseudo MV table as `.pmv`.
pub fn write_pmv(t: &PmvTable, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    let labels = t.labels();
    out.push_str(&format!("elements: {}\n", labels.join(" ")));
    out.push_str(&format!("zero: {}\n", labels[t.zero().0]));
    out.push_str(&format!("one: {}\n", labels[t.one().0]));
    for a in t.elements() {
        for b in t.elements() {
            out.push_str(&format!(
                "{} + {} = {}\n",
                labels[a.0],
                labels[b.0],
                labels[t.oplus(a, b).0]
            ));
        }
    }
    for a in t.elements() {
        out.push_str(&format!(
            "neg: {} {} {}\n",
            labels[a.0],
            labels[t.neg_minus(a).0],
            labels[t.neg_tilde(a).0]
        ));
    }
    out
}

/// A parsed group presentation file.
#[derive(Debug, Clone)]
pub struct GrpFile {
    pub name: Option<String>,
    pub presentation: PoGroupPresentation,
    pub unit: GroupElement,
}

fn parse_ints(
    lineno: usize,
    toks: &[(usize, String)],
) -> Result<Vec<i64>, ParseError> {
    toks.iter()
        .map(|(col, t)| {
            t.parse::<i64>()
                .map_err(|_| ParseError::new(lineno, *col, format!("expected an integer, got `{t}`")))
        })
        .collect()
}

/// Parses a `.grp` presentation file.
pub fn parse_grp(src: &str) -> Result<GrpFile, ParseError> {
    let mut name = None;
    let mut variant: Option<(usize, String)> = None;
    let mut inner_variant: Option<(usize, String)> = None;
    let mut rank: Option<usize> = None;
    let mut cone: Option<(usize, String)> = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut action: Option<Vec<i64>> = None;
    let mut unit: Option<Vec<i64>> = None;

    for (lineno, raw) in src.lines().enumerate() {
        let lineno = lineno + 1;
        let toks: Vec<(usize, String)> = tokens(raw)
            .into_iter()
            .map(|(c, t)| (c, t.to_string()))
            .collect();
        if toks.is_empty() || toks[0].1.starts_with('#') {
            continue;
        }
        match toks[0].1.as_str() {
            "name:" => name = Some(toks[1..].iter().map(|(_, t)| t.clone()).collect::<Vec<_>>().join(" ")),
            "variant:" => variant = Some((lineno, toks.get(1).map(|(_, t)| t.clone()).unwrap_or_default())),
            "inner-variant:" => {
                inner_variant = Some((lineno, toks.get(1).map(|(_, t)| t.clone()).unwrap_or_default()))
            }
            "rank:" => {
                let v = parse_ints(lineno, &toks[1..])?;
                if v.len() != 1 || v[0] < 1 {
                    return Err(ParseError::new(lineno, toks[0].0, "rank must be a positive integer"));
                }
                rank = Some(v[0] as usize);
            }
            "cone:" => cone = Some((lineno, toks.get(1).map(|(_, t)| t.clone()).unwrap_or_default())),
            "rows:" => {
                // semicolon-separated integer rows
                let mut current = Vec::new();
                for (col, t) in &toks[1..] {
                    if t == ";" {
                        rows.push(std::mem::take(&mut current));
                    } else {
                        current.push(t.parse::<i64>().map_err(|_| {
                            ParseError::new(lineno, *col, format!("expected an integer, got `{t}`"))
                        })?);
                    }
                }
                if !current.is_empty() {
                    rows.push(current);
                }
            }
            "action:" => {
                let v = parse_ints(lineno, &toks[1..])?;
                if v.len() != 4 {
                    return Err(ParseError::new(
                        lineno,
                        toks[0].0,
                        "action takes four integers (row-major 2x2 matrix)",
                    ));
                }
                action = Some(v);
            }
            "unit:" => unit = Some(parse_ints(lineno, &toks[1..])?),
            other => {
                return Err(ParseError::new(
                    lineno,
                    toks[0].0,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    let (vline, variant) = variant.ok_or_else(|| ParseError::new(1, 1, "missing `variant:` line"))?;
    let build_free = |rank: Option<usize>,
                      cone: &Option<(usize, String)>,
                      rows: &[Vec<i64>]|
     -> Result<PoGroupPresentation, ParseError> {
        let rank = rank.ok_or_else(|| ParseError::new(vline, 1, "missing `rank:` line"))?;
        let (cline, cname) = cone
            .as_ref()
            .ok_or_else(|| ParseError::new(vline, 1, "missing `cone:` line"))?;
        let cone = match cname.as_str() {
            "standard" => Cone::Standard,
            "lex" => Cone::Lex,
            "polyhedral" => {
                if rows.is_empty() {
                    return Err(ParseError::new(*cline, 1, "polyhedral cone needs `rows:`"));
                }
                Cone::Polyhedral(rows.to_vec())
            }
            other => {
                return Err(ParseError::new(
                    *cline,
                    1,
                    format!("unknown cone `{other}`"),
                ))
            }
        };
        Ok(PoGroupPresentation::free_abelian(rank, cone))
    };
    let mk_action = |action: &Option<Vec<i64>>| -> Result<[[i64; 2]; 2], ParseError> {
        let a = action
            .as_ref()
            .ok_or_else(|| ParseError::new(vline, 1, "missing `action:` line"))?;
        Ok([[a[0], a[1]], [a[2], a[3]]])
    };
    let presentation = match variant.as_str() {
        "free-abelian" => build_free(rank, &cone, &rows)?,
        "semidirect" => PoGroupPresentation::semidirect(mk_action(&action)?),
        "lex-z" => {
            let inner = match inner_variant.as_ref().map(|(_, v)| v.as_str()) {
                Some("semidirect") => PoGroupPresentation::semidirect(mk_action(&action)?),
                Some("free-abelian") | None => build_free(rank, &cone, &rows)?,
                Some(other) => {
                    return Err(ParseError::new(
                        vline,
                        1,
                        format!("unknown inner variant `{other}`"),
                    ))
                }
            };
            PoGroupPresentation::lex_z(inner)
        }
        other => {
            return Err(ParseError::new(
                vline,
                1,
                format!("unknown variant `{other}`"),
            ))
        }
    };
    let unit = unit.ok_or_else(|| ParseError::new(vline, 1, "missing `unit:` line"))?;
    if unit.len() != presentation.rank() {
        return Err(ParseError::new(
            vline,
            1,
            format!(
                "unit has {} coordinates, presentation has rank {}",
                unit.len(),
                presentation.rank()
            ),
        ));
    }
    Ok(GrpFile {
        name,
        presentation,
        unit: GroupElement(unit),
    })
}

/// Serializes a presentation fixture as `.grp`.
pub fn write_grp(name: &str, presentation: &PoGroupPresentation, unit: &GroupElement) -> String {
    let mut out = String::new();
    out.push_str(&format!("name: {name}\n"));
    match presentation {
        PoGroupPresentation::FreeAbelian { rank, cone } => {
            out.push_str("variant: free-abelian\n");
            out.push_str(&format!("rank: {rank}\n"));
            match cone {
                Cone::Standard => out.push_str("cone: standard\n"),
                Cone::Lex => out.push_str("cone: lex\n"),
                Cone::Polyhedral(rows) => {
                    out.push_str("cone: polyhedral\n");
                    let rendered: Vec<String> = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect();
                    out.push_str(&format!("rows: {}\n", rendered.join(" ; ")));
                }
            }
        }
        PoGroupPresentation::LexZ { inner } => {
            out.push_str("variant: lex-z\n");
            match inner.as_ref() {
                PoGroupPresentation::SemidirectZxZ2 { action } => {
                    out.push_str("inner-variant: semidirect\n");
                    out.push_str(&format!(
                        "action: {} {} {} {}\n",
                        action[0][0], action[0][1], action[1][0], action[1][1]
                    ));
                }
                PoGroupPresentation::FreeAbelian { rank, cone } => {
                    out.push_str("inner-variant: free-abelian\n");
                    out.push_str(&format!("rank: {rank}\n"));
                    match cone {
                        Cone::Standard => out.push_str("cone: standard\n"),
                        Cone::Lex => out.push_str("cone: lex\n"),
                        Cone::Polyhedral(rows) => {
                            let rendered: Vec<String> = rows
                                .iter()
                                .map(|r| {
                                    r.iter()
                                        .map(|x| x.to_string())
                                        .collect::<Vec<_>>()
                                        .join(" ")
                                })
                                .collect();
                            out.push_str("cone: polyhedral\n");
                            out.push_str(&format!("rows: {}\n", rendered.join(" ; ")));
                        }
                    }
                }
                PoGroupPresentation::LexZ { .. } => {
                    // nested lex towers are not part of the format
                    out.push_str("inner-variant: free-abelian\nrank: 1\ncone: standard\n");
                }
            }
        }
        PoGroupPresentation::SemidirectZxZ2 { action } => {
            out.push_str("variant: semidirect\n");
            out.push_str(&format!(
                "action: {} {} {} {}\n",
                action[0][0], action[0][1], action[1][0], action[1][1]
            ));
        }
    }
    let coords: Vec<String> = unit.0.iter().map(|x| x.to_string()).collect();
    out.push_str(&format!("unit: {}\n", coords.join(" ")));
    out
}

/// Parses a state file: one `label = rational` line per element. The
/// constants may be omitted; every other element must be assigned.
pub fn parse_state(src: &str, table: &FiniteTable) -> Result<StateVector, ParseError> {
    let index: BTreeMap<&str, usize> = table
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut values: Vec<Option<BigRational>> = vec![None; table.size()];
    for (lineno, raw) in src.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = tokens(raw);
        if is_comment(&toks) {
            continue;
        }
        if toks.len() != 3 || toks[1].1 != "=" {
            return Err(ParseError::new(
                lineno,
                toks[0].0,
                "expected `element = value`",
            ));
        }
        let idx = resolve(&index, lineno, toks[0].0, toks[0].1)?;
        let v = ratio::parse_ratio(toks[2].1)
            .map_err(|m| ParseError::new(lineno, toks[2].0, m))?;
        if values[idx].is_some() {
            return Err(ParseError::new(
                lineno,
                toks[0].0,
                format!("duplicate assignment for `{}`", toks[0].1),
            ));
        }
        values[idx] = Some(v);
    }
    values[table.zero().0].get_or_insert(BigRational::from_integer(0.into()));
    values[table.one().0].get_or_insert(BigRational::from_integer(1.into()));
    let out: Vec<BigRational> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                ParseError::new(
                    0,
                    0,
                    format!("no value assigned to element `{}`", table.labels()[i]),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(StateVector::new(out))
}

/// Serializes a window table in `.pea` syntax with a provenance header; the
/// out-of-window sums are listed as comments because the `.pea` format has
/// no unknown marker.
pub fn write_window(w: &WindowTable, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(&format!(
        "# window table at radius {} of gamma({}, {})\n",
        w.radius,
        w.presentation.describe(),
        w.unit
    ));
    out.push_str("# NOT a complete pseudo effect algebra: sums marked `unknown` leave the window\n");
    let labels: Vec<String> = w.elements.iter().map(|e| e.to_string()).collect();
    out.push_str(&format!("elements: {}\n", labels.join(" ")));
    out.push_str(&format!("zero: {}\n", labels[w.zero_id]));
    out.push_str(&format!("one: {}\n", labels[w.one_id]));
    let mut unknown = 0usize;
    for i in 0..w.len() {
        for j in 0..w.len() {
            match w.cell(i, j) {
                WindowCell::Defined(k) => {
                    if i != w.zero_id && j != w.zero_id {
                        out.push_str(&format!("{} + {} = {}\n", labels[i], labels[j], labels[k]));
                    }
                }
                WindowCell::Unknown => {
                    unknown += 1;
                    out.push_str(&format!("# unknown: {} + {}\n", labels[i], labels[j]));
                }
                WindowCell::Undefined => {}
            }
        }
    }
    out.push_str(&format!("# {unknown} in-interval sums leave the window\n"));
    out
}
