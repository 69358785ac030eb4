//! Corpus parsing and keyword filtering, down to per-record attribute sets.

mod query;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use query::{Expr, Scope, SearchQuery, Term};

/// One publication-metadata instance.
///
/// `attributes` maps an attribute type (`organisation`, `country`,
/// `keyword`, ...) to the set of values attached to the publication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default, rename = "abstract")]
    pub abstract_text: String,
    #[serde(default)]
    pub attributes: BTreeMap<String, BTreeSet<String>>,
}

impl PublicationRecord {
    pub fn attribute_set(&self, attr_type: &str) -> Option<&BTreeSet<String>> {
        self.attributes.get(attr_type)
    }
}

/// Wire form of a corpus line. Attribute values arrive as arrays and may
/// repeat or carry surrounding whitespace.
#[derive(Deserialize)]
struct RawRecord {
    id: String,
    #[serde(default)]
    title: String,
    #[serde(default, rename = "abstract")]
    abstract_text: String,
    #[serde(default)]
    attributes: BTreeMap<String, Vec<String>>,
}

/// The per-record attribute set that becomes one hyperedge occurrence.
pub type AttributeEntry = (String, BTreeSet<String>);

/// Parse line-delimited JSON records. Blank lines are skipped; line numbers
/// in errors are 1-based.
pub fn parse_corpus<R: BufRead>(input: R) -> Result<Vec<PublicationRecord>> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::MalformedRecord { line: line_no, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line)
            .map_err(|e| Error::MalformedRecord { line: line_no, message: e.to_string() })?;
        let id = raw.id.trim().to_string();
        if id.is_empty() {
            return Err(Error::MalformedRecord { line: line_no, message: "empty id".into() });
        }
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId(id));
        }
        let attributes = raw
            .attributes
            .into_iter()
            .map(|(kind, values)| {
                let set = values
                    .iter()
                    .map(|v| v.trim())
                    .filter(|v| !v.is_empty())
                    .map(str::to_string)
                    .collect();
                (kind, set)
            })
            .collect();
        records.push(PublicationRecord { id, title: raw.title, abstract_text: raw.abstract_text, attributes });
    }
    Ok(records)
}

pub fn parse_corpus_str(input: &str) -> Result<Vec<PublicationRecord>> {
    parse_corpus(input.as_bytes())
}

/// The records matched by `query`, in input order.
pub fn filter_records(records: &[PublicationRecord], query: &SearchQuery) -> Vec<PublicationRecord> {
    records
        .iter()
        .filter(|r| query.matches(&r.title, &r.abstract_text))
        .cloned()
        .collect()
}

/// One `(record id, set)` entry per record with a nonempty set for `attr_type`.
pub fn extract_attribute_sets(records: &[PublicationRecord], attr_type: &str) -> Vec<AttributeEntry> {
    records
        .iter()
        .filter_map(|r| match r.attribute_set(attr_type) {
            Some(set) if !set.is_empty() => Some((r.id.clone(), set.clone())),
            _ => None,
        })
        .collect()
}

/// Serialize records back to the line-delimited corpus format.
pub fn write_corpus<W: std::io::Write>(records: &[PublicationRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_record() {
        let line = r#"{"id":"p1","title":"bgo crystal","abstract":"","attributes":{"organisation":["CERN","UniGe"],"keyword":["bgo"]}}"#;
        let recs = parse_corpus_str(line).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].attribute_set("organisation").unwrap().len(), 2);
        assert_eq!(recs[0].attribute_set("keyword").unwrap().len(), 1);
    }

    #[test]
    fn dedups_and_trims_values() {
        let line = r#"{"id":"p1","title":"","abstract":"","attributes":{"organisation":["CERN"," CERN ",""]}}"#;
        let recs = parse_corpus_str(line).unwrap();
        let set = recs[0].attribute_set("organisation").unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains("CERN"));
    }

    #[test]
    fn empty_input() {
        assert!(parse_corpus_str("").unwrap().is_empty());
        assert!(parse_corpus_str("\n\n").unwrap().is_empty());
    }

    #[test]
    fn unknown_fields_ignored() {
        let line = r#"{"id":"p1","year":1999,"attributes":{}}"#;
        assert_eq!(parse_corpus_str(line).unwrap().len(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let input = "{\"id\":\"a\"}\n\n{not json}\n";
        match parse_corpus_str(input) {
            Err(Error::MalformedRecord { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_is_named() {
        let input = "{\"id\":\"a\"}\n{\"id\":\"b\"}\n{\"id\":\"a\"}\n";
        match parse_corpus_str(input) {
            Err(Error::DuplicateId(id)) => assert_eq!(id, "a"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_id_rejected() {
        assert!(parse_corpus_str(r#"{"id":"  "}"#).is_err());
    }

    fn rec(id: &str, title: &str, orgs: &[&str], kws: &[&str]) -> PublicationRecord {
        let mut attributes = BTreeMap::new();
        attributes.insert("organisation".to_string(), orgs.iter().map(|s| s.to_string()).collect());
        if !kws.is_empty() {
            attributes.insert("keyword".to_string(), kws.iter().map(|s| s.to_string()).collect());
        }
        PublicationRecord { id: id.into(), title: title.into(), abstract_text: String::new(), attributes }
    }

    #[test]
    fn filter_examples() {
        let recs = vec![rec("1", "bgo crystal study", &[], &[]), rec("2", "bgo detector", &[], &[])];
        let q: SearchQuery = "title:(bgo AND cryst*)".parse().unwrap();
        assert_eq!(filter_records(&recs, &q).len(), 1);

        let recs = vec![rec("1", "calorimeter design", &[], &[])];
        let q: SearchQuery = "bgo OR calor*".parse().unwrap();
        assert_eq!(filter_records(&recs, &q).len(), 1);

        let q: SearchQuery = "muon".parse().unwrap();
        assert!(filter_records(&recs, &q).is_empty());
    }

    #[test]
    fn extraction_omits_empty_sets() {
        let recs = vec![rec("1", "", &["A", "B"], &["x"]), rec("2", "", &["B", "C"], &[]), rec("3", "", &[], &["y", "z"])];
        let orgs = extract_attribute_sets(&recs, "organisation");
        assert_eq!(orgs.len(), 2);
        assert!(extract_attribute_sets(&recs, "country").is_empty());
        let kws = extract_attribute_sets(&recs, "keyword");
        assert_eq!(kws.iter().map(|(id, _)| id.as_str()).collect::<Vec<_>>(), ["1", "3"]);
        assert!(kws.iter().all(|(_, s)| !s.contains("A")));
    }

    #[test]
    fn write_then_parse() {
        let recs = vec![rec("1", "t", &["A"], &["k"]), rec("2", "u", &["B", "C"], &[])];
        let mut buf = Vec::new();
        write_corpus(&recs, &mut buf).unwrap();
        assert_eq!(parse_corpus(&buf[..]).unwrap(), recs);
    }
}
