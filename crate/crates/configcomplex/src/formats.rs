//! Plain-text file formats for every object the CLI exchanges.
//!
//! All formats are line oriented: `#` starts a comment, blank lines are
//! skipped, the first content line names the object kind.  Colors are
//! 1-based in files (they are 0-based in the API).  Group elements are
//! written as their coordinates with respect to the invariant factors, one
//! element per line.

use crate::algebra::FiniteAbelianGroup;
use crate::complex::{QuotientComplex, SimplicialComplex};
use crate::config::{ColoredConfiguration, Incidence};
use crate::constructions::{DifferenceSet, Semifield};
use crate::correspondence::SidonSet;
use crate::error::{Error, Result};
use crate::lattice::LinearCode;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Content lines with their 1-based line numbers, comments stripped.
struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    None
                } else {
                    Some((i + 1, content))
                }
            })
            .collect();
        Reader { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| parse_error(self.lines.last().map_or(1, |l| l.0), format!("missing {what}")))
    }

    /// Next line must be `keyword rest`; returns the rest.
    fn keyword(&mut self, keyword: &str) -> Result<(usize, &'a str)> {
        let (line, content) = self.expect(&format!("`{keyword}` line"))?;
        match content.split_once(char::is_whitespace) {
            Some((head, rest)) if head == keyword => Ok((line, rest.trim())),
            _ if content == keyword => Ok((line, "")),
            _ => Err(parse_error(line, format!("expected `{keyword}`, found `{content}`"))),
        }
    }

    fn header(&mut self, kind: &str) -> Result<()> {
        let (line, content) = self.expect("header")?;
        if content != kind {
            return Err(parse_error(
                line,
                format!("expected a `{kind}` file, found `{content}`"),
            ));
        }
        Ok(())
    }

    fn end(&mut self) -> Result<()> {
        if let Some((line, content)) = self.next() {
            return Err(parse_error(line, format!("unexpected trailing line `{content}`")));
        }
        Ok(())
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what} `{token}`")))
}

fn parse_numbers<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| parse_number(line, tok, what))
        .collect()
}

fn write_group_line(group: &FiniteAbelianGroup) -> String {
    let factors: Vec<String> = group.factors().iter().map(u64::to_string).collect();
    format!("group {}", factors.join(" "))
}

fn read_group(line: usize, rest: &str) -> Result<FiniteAbelianGroup> {
    let factors: Vec<u64> = parse_numbers(line, rest, "group factor")?;
    if factors.is_empty() {
        return Err(parse_error(line, "group needs at least one factor"));
    }
    FiniteAbelianGroup::from_moduli(&factors)
}

/// Serializes a configuration, optionally with the group whose translations
/// act on it (points and lines must be indexed by canonical element order
/// for the trailer to be meaningful).
pub fn write_config(
    config: &ColoredConfiguration,
    action_group: Option<&FiniteAbelianGroup>,
) -> String {
    let mut out = String::from("configuration\n");
    out.push_str(&format!("colors {}\n", config.k()));
    out.push_str(&format!("points {}\n", config.num_points()));
    out.push_str(&format!("lines {}\n", config.num_lines()));
    out.push_str(&format!("incidences {}\n", config.incidences().len()));
    for p in 0..config.num_points() {
        out.push_str(&format!("point {}\n", config.point_name(p)));
    }
    for l in 0..config.num_lines() {
        out.push_str(&format!("line {}\n", config.line_name(l)));
    }
    for inc in config.incidences() {
        out.push_str(&format!("incidence {} {} {}\n", inc.point, inc.line, inc.color + 1));
    }
    if let Some(group) = action_group {
        out.push_str(&write_group_line(group));
        out.push('\n');
    }
    out
}

/// Parses a configuration file, returning the optional translation group.
pub fn read_config(
    text: &str,
) -> Result<(ColoredConfiguration, Option<FiniteAbelianGroup>)> {
    let mut reader = Reader::new(text);
    reader.header("configuration")?;
    let (line, rest) = reader.keyword("colors")?;
    let k: usize = parse_number(line, rest, "color count")?;
    let (line, rest) = reader.keyword("points")?;
    let num_points: usize = parse_number(line, rest, "point count")?;
    let (line, rest) = reader.keyword("lines")?;
    let num_lines: usize = parse_number(line, rest, "line count")?;
    let (line, rest) = reader.keyword("incidences")?;
    let num_incidences: usize = parse_number(line, rest, "incidence count")?;
    let mut point_names = Vec::with_capacity(num_points);
    for _ in 0..num_points {
        let (line, rest) = reader.keyword("point")?;
        if rest.is_empty() {
            return Err(parse_error(line, "point name is empty"));
        }
        point_names.push(rest.to_string());
    }
    let mut line_names = Vec::with_capacity(num_lines);
    for _ in 0..num_lines {
        let (line, rest) = reader.keyword("line")?;
        if rest.is_empty() {
            return Err(parse_error(line, "line name is empty"));
        }
        line_names.push(rest.to_string());
    }
    let mut incidences = Vec::with_capacity(num_incidences);
    for _ in 0..num_incidences {
        let (line, rest) = reader.keyword("incidence")?;
        let fields: Vec<usize> = parse_numbers(line, rest, "incidence field")?;
        if fields.len() != 3 {
            return Err(parse_error(line, "incidence needs `point line color`"));
        }
        if fields[2] == 0 || fields[2] > k {
            return Err(parse_error(line, format!("color {} outside 1..={k}", fields[2])));
        }
        incidences.push(Incidence {
            point: fields[0],
            line: fields[1],
            color: fields[2] - 1,
        });
    }
    let group = match reader.next() {
        None => None,
        Some((line, content)) => {
            let rest = content.strip_prefix("group").ok_or_else(|| {
                parse_error(line, format!("unexpected trailing line `{content}`"))
            })?;
            let group = read_group(line, rest.trim())?;
            if group.order() as usize != num_points {
                return Err(parse_error(
                    line,
                    format!(
                        "group order {} does not match {} points",
                        group.order(),
                        num_points
                    ),
                ));
            }
            Some(group)
        }
    };
    reader.end()?;
    let config = ColoredConfiguration::new(k, point_names, line_names, incidences)?;
    Ok((config, group))
}

/// Serializes a code as its canonical basis rows.
pub fn write_code(code: &LinearCode) -> String {
    let mut out = String::from("code\n");
    out.push_str(&format!("k {}\n", code.k()));
    for row in code.basis().row_vectors() {
        let nums: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&nums.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a code file; rows are canonicalized, so any spanning set of the
/// same sublattice reads back equal.
pub fn read_code(text: &str) -> Result<LinearCode> {
    let mut reader = Reader::new(text);
    reader.header("code")?;
    let (line, rest) = reader.keyword("k")?;
    let k: usize = parse_number(line, rest, "rank")?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, content) = reader.expect("basis row")?;
        let row: Vec<i64> = parse_numbers(line, content, "basis entry")?;
        if row.len() != k + 1 {
            return Err(parse_error(
                line,
                format!("basis row needs {} entries, found {}", k + 1, row.len()),
            ));
        }
        rows.push(row);
    }
    reader.end()?;
    LinearCode::from_rows(rows)
}

fn write_elements(elements: &[crate::algebra::GroupElement]) -> String {
    let mut out = String::new();
    for e in elements {
        let coords: Vec<String> = e.coords().iter().map(u64::to_string).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

fn read_elements(
    reader: &mut Reader,
    group: &FiniteAbelianGroup,
    count: usize,
) -> Result<Vec<crate::algebra::GroupElement>> {
    let rank = group.factors().len();
    let mut elements = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, content) = reader.expect("group element")?;
        let coords: Vec<i64> = parse_numbers(line, content, "element coordinate")?;
        if coords.len() != rank {
            return Err(parse_error(
                line,
                format!("element needs {rank} coordinates, found {}", coords.len()),
            ));
        }
        elements.push(group.element_from_signed(&coords)?);
    }
    Ok(elements)
}

pub fn write_difference_set(ds: &DifferenceSet) -> String {
    let mut out = String::from("diffset\n");
    out.push_str(&write_group_line(ds.group()));
    out.push('\n');
    out.push_str(&format!("elements {}\n", ds.elements().len()));
    out.push_str(&write_elements(ds.elements()));
    out
}

pub fn read_difference_set(text: &str) -> Result<DifferenceSet> {
    let mut reader = Reader::new(text);
    reader.header("diffset")?;
    let (line, rest) = reader.keyword("group")?;
    let group = read_group(line, rest)?;
    let (line, rest) = reader.keyword("elements")?;
    let count: usize = parse_number(line, rest, "element count")?;
    let elements = read_elements(&mut reader, &group, count)?;
    reader.end()?;
    DifferenceSet::new(group, elements)
}

pub fn write_sidon_set(set: &SidonSet) -> String {
    let mut out = String::from("sidon\n");
    out.push_str(&write_group_line(set.group()));
    out.push('\n');
    out.push_str(&format!("elements {}\n", set.elements().len()));
    out.push_str(&write_elements(set.elements()));
    out
}

pub fn read_sidon_set(text: &str) -> Result<SidonSet> {
    let mut reader = Reader::new(text);
    reader.header("sidon")?;
    let (line, rest) = reader.keyword("group")?;
    let group = read_group(line, rest)?;
    let (line, rest) = reader.keyword("elements")?;
    let count: usize = parse_number(line, rest, "element count")?;
    let elements = read_elements(&mut reader, &group, count)?;
    reader.end()?;
    SidonSet::new(group, elements)
}

pub fn write_semifield(s: &Semifield) -> String {
    let q = s.q();
    let mut out = String::from("semifield\n");
    out.push_str(&format!("q {q}\n"));
    for (name, table) in [("add", true), ("mul", false)] {
        out.push_str(name);
        out.push('\n');
        for a in 0..q {
            let row: Vec<String> = (0..q)
                .map(|b| if table { s.add(a, b) } else { s.mul(a, b) }.to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn read_semifield(text: &str) -> Result<Semifield> {
    let mut reader = Reader::new(text);
    reader.header("semifield")?;
    let (line, rest) = reader.keyword("q")?;
    let q: usize = parse_number(line, rest, "order")?;
    let mut tables = Vec::new();
    for name in ["add", "mul"] {
        reader.keyword(name)?;
        let mut table = Vec::with_capacity(q);
        for _ in 0..q {
            let (line, content) = reader.expect("table row")?;
            let row: Vec<usize> = parse_numbers(line, content, "table entry")?;
            if row.len() != q {
                return Err(parse_error(
                    line,
                    format!("table row needs {q} entries, found {}", row.len()),
                ));
            }
            table.push(row);
        }
        tables.push(table);
    }
    reader.end()?;
    let mul = tables.pop().expect("two tables");
    let add = tables.pop().expect("two tables");
    Semifield::new(add, mul)
}

/// Serializes a quotient complex with facet provenance: `+l v...` is the
/// positive facet of line `l`, `-p v...` the negative facet of point `p`,
/// vertices ordered by color.
pub fn write_quotient_complex(qc: &QuotientComplex) -> String {
    let complex = qc.complex();
    let mut out = String::from("complex\n");
    out.push_str(&format!("vertices {}\n", complex.num_vertices()));
    out.push_str(&format!("facets {}\n", qc.provenance_facets()));
    for v in 0..complex.num_vertices() {
        out.push_str(&format!("vertex {}\n", complex.vertex_name(v)));
    }
    for (l, facet) in qc.positive().iter().enumerate() {
        let nums: Vec<String> = facet.iter().map(usize::to_string).collect();
        out.push_str(&format!("+{l} {}\n", nums.join(" ")));
    }
    for (p, facet) in qc.negative().iter().enumerate() {
        let nums: Vec<String> = facet.iter().map(usize::to_string).collect();
        out.push_str(&format!("-{p} {}\n", nums.join(" ")));
    }
    out
}

/// Serializes a bare simplicial complex (`facet v...` lines).
pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = String::from("complex\n");
    out.push_str(&format!("vertices {}\n", complex.num_vertices()));
    out.push_str(&format!("facets {}\n", complex.facets().len()));
    for v in 0..complex.num_vertices() {
        out.push_str(&format!("vertex {}\n", complex.vertex_name(v)));
    }
    for facet in complex.facets() {
        let nums: Vec<String> = facet.iter().map(usize::to_string).collect();
        out.push_str(&format!("facet {}\n", nums.join(" ")));
    }
    out
}

/// Parses a complex file; provenance-tagged and bare facet lines are both
/// accepted (distinct facets are kept once).
pub fn read_complex(text: &str) -> Result<SimplicialComplex> {
    let mut reader = Reader::new(text);
    reader.header("complex")?;
    let (line, rest) = reader.keyword("vertices")?;
    let num_vertices: usize = parse_number(line, rest, "vertex count")?;
    let (line, rest) = reader.keyword("facets")?;
    let num_facets: usize = parse_number(line, rest, "facet count")?;
    let mut vertex_names = Vec::with_capacity(num_vertices);
    for _ in 0..num_vertices {
        let (line, rest) = reader.keyword("vertex")?;
        if rest.is_empty() {
            return Err(parse_error(line, "vertex name is empty"));
        }
        vertex_names.push(rest.to_string());
    }
    let mut facets = Vec::with_capacity(num_facets);
    for _ in 0..num_facets {
        let (line, content) = reader.expect("facet")?;
        let body = if let Some(rest) = content.strip_prefix("facet ") {
            rest.to_string()
        } else if content.starts_with('+') || content.starts_with('-') {
            match content.split_once(char::is_whitespace) {
                Some((_, rest)) => rest.to_string(),
                None => {
                    return Err(parse_error(line, "provenance facet lists no vertices"))
                }
            }
        } else {
            return Err(parse_error(
                line,
                format!("expected `facet`, `+line`, or `-point`, found `{content}`"),
            ));
        };
        facets.push(parse_numbers(line, &body, "vertex id")?);
    }
    reader.end()?;
    SimplicialComplex::new(vertex_names, facets)
}
