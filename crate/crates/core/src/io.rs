//! Monoid and relation file formats.
//!
//! A monoid is either a JSON object
//! `{"elements": [..], "identity": name, "table": [[name, ..], ..]}` with
//! `table[i][j]` the product of row element `i` by column element `j`, or
//! plain text: element names on the first line, the identity on the second,
//! then one row of names per element.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{FiniteMonoid, MonoidError};
use crate::relation::BinaryRelation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("invalid monoid: {}", errors.iter().map(|e| e.describe(names)).collect::<Vec<_>>().join("; "))]
    Invalid { errors: Vec<MonoidError>, names: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDocument {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
}

impl MonoidDocument {
    pub fn from_monoid(monoid: &FiniteMonoid) -> Self {
        Self {
            elements: monoid.names().to_vec(),
            identity: monoid.name(monoid.identity()).to_string(),
            table: monoid
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|e| monoid.name(e).to_string()).collect())
                .collect(),
        }
    }

    pub fn into_monoid(self) -> Result<FiniteMonoid, FormatError> {
        let index = |name: &String| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| FormatError::UnknownName(name.clone()))
        };
        let identity = index(&self.identity)?;
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(index).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FiniteMonoid::with_names(table, identity, self.elements.clone())
            .map_err(|errors| FormatError::Invalid { errors, names: self.elements.clone() })
    }
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_monoid(input: &str) -> Result<FiniteMonoid, FormatError> {
    if input.trim_start().starts_with('{') {
        let doc: MonoidDocument =
            serde_json::from_str(input).map_err(|e| FormatError::Malformed(e.to_string()))?;
        doc.into_monoid()
    } else {
        parse_plain_monoid(input)
    }
}

fn parse_plain_monoid(input: &str) -> Result<FiniteMonoid, FormatError> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let words = |l: &str| l.split_whitespace().map(String::from).collect::<Vec<_>>();
    let elements = words(lines.next().ok_or_else(|| FormatError::Malformed("no element line".into()))?);
    let identity = lines
        .next()
        .ok_or_else(|| FormatError::Malformed("no identity line".into()))?
        .to_string();
    let table: Vec<Vec<String>> = lines.map(words).collect();
    MonoidDocument { elements, identity, table }.into_monoid()
}

pub fn monoid_to_json(monoid: &FiniteMonoid) -> String {
    serde_json::to_string_pretty(&MonoidDocument::from_monoid(monoid)).expect("serializable")
}

pub fn monoid_to_plain(monoid: &FiniteMonoid) -> String {
    let doc = MonoidDocument::from_monoid(monoid);
    let mut out = doc.elements.join(" ");
    out.push('\n');
    out.push_str(&doc.identity);
    out.push('\n');
    for row in doc.table {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// One `a b` line per pair, in index order.
pub fn relation_to_lines(monoid: &FiniteMonoid, r: &BinaryRelation) -> String {
    r.pairs().map(|(a, b)| format!("{} {}\n", monoid.name(a), monoid.name(b))).collect()
}

pub fn relation_to_json(monoid: &FiniteMonoid, r: &BinaryRelation) -> String {
    serde_json::to_string(&crate::classify::relation_to_json(monoid, r)).expect("serializable")
}

/// Reads either the line format or a JSON array of pairs.
pub fn parse_relation(monoid: &FiniteMonoid, input: &str) -> Result<BinaryRelation, FormatError> {
    let pairs: Vec<(String, String)> = if input.trim_start().starts_with('[') {
        serde_json::from_str(input).map_err(|e| FormatError::Malformed(e.to_string()))?
    } else {
        input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| match l.split_whitespace().collect::<Vec<_>>()[..] {
                [a, b] => Ok((a.to_string(), b.to_string())),
                _ => Err(FormatError::Malformed(format!("expected two names: {l:?}"))),
            })
            .collect::<Result<_, _>>()?
    };
    let index = |name: &str| monoid.index_of(name).ok_or_else(|| FormatError::UnknownName(name.into()));
    let mut r = BinaryRelation::empty(monoid.order());
    for (a, b) in pairs {
        r.insert(index(&a)?, index(&b)?);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::generated::generated_reflexive;

    #[test]
    fn json_and_plain_agree() {
        let a = catalog::example_a();
        assert_eq!(parse_monoid(&monoid_to_json(&a)).unwrap(), a);
        assert_eq!(parse_monoid(&monoid_to_plain(&a)).unwrap(), a);
    }

    #[test]
    fn plain_format_by_hand() {
        let text = "e a\ne\ne a\na e\n";
        let z2 = parse_monoid(text).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.multiply(1, 1), 0);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_monoid("{\"elements\": 3}"), Err(FormatError::Malformed(_))));
        let unknown = r#"{"elements":["e"],"identity":"e","table":[["x"]]}"#;
        assert_eq!(parse_monoid(unknown), Err(FormatError::UnknownName("x".into())));
        let not_assoc = "e a b\ne\ne a b\na b e\nb a b\n";
        assert!(matches!(parse_monoid(not_assoc), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn relation_formats() {
        let a = catalog::example_a();
        let r = generated_reflexive(&a, a.subset_from_names(&["1", "2"]).unwrap());
        let lines = relation_to_lines(&a, &r);
        assert!(lines.starts_with("1 1\n1 2\n1 3\n2 2\n"));
        assert_eq!(parse_relation(&a, &lines).unwrap(), r);
        assert_eq!(parse_relation(&a, &relation_to_json(&a, &r)).unwrap(), r);
    }
}
