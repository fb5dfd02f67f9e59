//! Group file format.
//!
//! ```text
//! # comment lines start with '#'
//! n
//! row 1: n whitespace-separated ids in 1..n
//! ...
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::group::{GroupError, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing order line")]
    MissingOrder,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("group order {order} exceeds the limit {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error(transparent)]
    Invalid(#[from] GroupError),
}

/// Parses and validates a group file, rejecting orders above `max_order`.
pub fn parse_group(text: &str, max_order: usize) -> Result<GroupTable, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, first) = lines.next().ok_or(ParseError::MissingOrder)?;
    let n: usize = first.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("expected the group order, found {first:?}"),
    })?;
    if n > max_order {
        return Err(ParseError::TooLarge {
            order: n,
            limit: max_order,
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        let row = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| ParseError::Syntax {
                    line,
                    message: format!("expected an element id, found {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ParseError::RowCount {
            expected: n,
            found: rows.len(),
        });
    }
    Ok(GroupTable::from_one_based(&rows)?)
}

/// Writes `n`, then one line per row of 1-based ids separated by single spaces.
pub fn write_group(g: &GroupTable) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.order()).unwrap();
    for row in g.to_one_based() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_comments() {
        let text = "# cyclic 3\n3\n1 2 3\n2 3 1\n\n# last row\n3 1 2\n";
        let g = parse_group(text, 256).unwrap();
        assert_eq!(write_group(&g), "3\n1 2 3\n2 3 1\n3 1 2\n");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_group("# nothing\n", 256), Err(ParseError::MissingOrder));
        assert!(matches!(parse_group("2\n1 2\n", 256), Err(ParseError::RowCount { .. })));
        assert!(matches!(parse_group("x\n", 256), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_group("2\n1 2\n2 2\n", 256),
            Err(ParseError::Invalid(GroupError::NotLatin { .. }))
        ));
        assert_eq!(
            parse_group("300\n", 256),
            Err(ParseError::TooLarge { order: 300, limit: 256 })
        );
    }
}
