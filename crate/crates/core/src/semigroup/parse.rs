//! Text format for multiplication tables (`semigroup-table v1`).
//!
//! ```text
//! # comments and blank lines are skipped anywhere
//! n                      — element count
//! name0 name1 … nameN−1  — whitespace-separated; element 0 is the zero
//! <n rows of n product indices: row a, column b holds the index of a·b>
//! <one row of n star indices>
//! ```
//!
//! Errors carry 1-based line and column (field) positions.

use super::table::InverseSemigroupTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, found end of input")]
    UnexpectedEnd { line: usize, expected: &'static str },
    #[error("line {line}: cannot read element count: {text:?}")]
    BadCount { line: usize, text: String },
    #[error("line {line}: element count must be at least 1")]
    EmptyTable { line: usize },
    #[error("line {line}: expected {expected} names, found {found}")]
    NameCount { line: usize, expected: usize, found: usize },
    #[error("line {line}, field {col}: expected {expected} entries, found {found}")]
    RaggedRow { line: usize, col: usize, expected: usize, found: usize },
    #[error("line {line}, field {col}: {text:?} is not an element index")]
    BadIndex { line: usize, col: usize, text: String },
    #[error("line {line}, field {col}: index {index} out of range (n = {n})")]
    IndexRange { line: usize, col: usize, index: usize, n: usize },
    #[error("line {line}: trailing content after the star row")]
    TrailingContent { line: usize },
    #[error("table is mis-shaped: {0}")]
    Shape(#[from] super::table::ShapeError),
}

/// Lines with content: (1-based line number, text), comments/blanks removed.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed))
        }
    })
}

fn parse_index_row(
    line_no: usize,
    text: &str,
    expected: usize,
    n: usize,
) -> Result<Vec<u32>, ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != expected {
        return Err(ParseError::RaggedRow {
            line: line_no,
            col: fields.len().min(expected) + 1,
            expected,
            found: fields.len(),
        });
    }
    let mut out = Vec::with_capacity(expected);
    for (col0, field) in fields.iter().enumerate() {
        let idx: usize = field.parse().map_err(|_| ParseError::BadIndex {
            line: line_no,
            col: col0 + 1,
            text: field.to_string(),
        })?;
        if idx >= n {
            return Err(ParseError::IndexRange { line: line_no, col: col0 + 1, index: idx, n });
        }
        out.push(idx as u32);
    }
    Ok(out)
}

/// Parses the `semigroup-table v1` text format.
///
/// This checks shape only; run the axiom validator separately to confirm the
/// table is actually an inverse semigroup.
pub fn parse_table(input: &str) -> Result<InverseSemigroupTable, ParseError> {
    let mut lines = content_lines(input);

    let (count_line, count_text) =
        lines.next().ok_or(ParseError::UnexpectedEnd { line: 1, expected: "element count" })?;
    let n: usize = count_text
        .parse()
        .map_err(|_| ParseError::BadCount { line: count_line, text: count_text.to_string() })?;
    if n == 0 {
        return Err(ParseError::EmptyTable { line: count_line });
    }

    let (names_line, names_text) = lines
        .next()
        .ok_or(ParseError::UnexpectedEnd { line: count_line + 1, expected: "names" })?;
    let names: Vec<String> = names_text.split_whitespace().map(str::to_string).collect();
    if names.len() != n {
        return Err(ParseError::NameCount { line: names_line, expected: n, found: names.len() });
    }

    let mut matrix: Vec<u32> = Vec::with_capacity(n * n);
    let mut last_line = names_line;
    for _ in 0..n {
        let (line_no, text) = lines.next().ok_or(ParseError::UnexpectedEnd {
            line: last_line + 1,
            expected: "product row",
        })?;
        matrix.extend(parse_index_row(line_no, text, n, n)?);
        last_line = line_no;
    }

    let (star_line, star_text) = lines
        .next()
        .ok_or(ParseError::UnexpectedEnd { line: last_line + 1, expected: "star row" })?;
    let star = parse_index_row(star_line, star_text, n, n)?;

    if let Some((line, _)) = lines.next() {
        return Err(ParseError::TrailingContent { line });
    }

    Ok(InverseSemigroupTable::from_dense(names, matrix, star, 0)?)
}

/// Renders a dense table back to the `semigroup-table v1` text format.
pub fn render_table(table: &InverseSemigroupTable) -> String {
    let n = table.n();
    let mut out = String::new();
    out.push_str(&format!("{}\n", n));
    out.push_str(&table.names().join(" "));
    out.push('\n');
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| table.product(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let star: Vec<String> = (0..n).map(|s| table.star_of(s).to_string()).collect();
    out.push_str(&star.join(" "));
    out.push('\n');
    out
}
