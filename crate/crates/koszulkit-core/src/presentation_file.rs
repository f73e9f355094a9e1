//! The JSON presentation format and the fixtures shipped with the crate.
//!
//! ```json
//! { "generators": ["x", "y"], "field": "QQ",
//!   "relations": [ { "terms": [ { "coeff": "-2", "word": "xyx" } ] } ] }
//! ```
//!
//! Coefficients are exact strings: integers or fractions `n/d`. The `field` entry is
//! optional; when absent the caller's default applies.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{parse_rational, Field, FieldTag, SparseVec};
use crate::tensorgraded::{parse_word, word_index, Presentation, Relation, Word};

/// One term `coeff · word` of a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    /// Exact coefficient such as `"-2"` or `"1/3"`.
    pub coeff: String,
    /// Concatenated generator names.
    pub word: String,
}

/// A relation as a list of terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    /// The terms; all words must have the same length.
    pub terms: Vec<TermSpec>,
}

/// The on-disk presentation document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    /// Generator names in declaration order.
    pub generators: Vec<String>,
    /// Optional ground field, `QQ` or `GF:<p>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldTag>,
    /// Relations in two degrees.
    pub relations: Vec<RelationSpec>,
}

/// A decoded file with exact rational coefficients, independent of the ground field.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedPresentation {
    /// Generator names.
    pub generators: Vec<String>,
    /// Field requested by the file, if any.
    pub field: Option<FieldTag>,
    /// Relations as `(coefficient, word)` lists.
    pub relations: Vec<Vec<(BigRational, Word)>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Decodes a presentation document, reporting the line of any offending entry.
pub fn parse_str(text: &str) -> Result<ParsedPresentation> {
    let file: PresentationFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let mut cursor = 0usize;
    let mut relations = Vec::with_capacity(file.relations.len());
    for (ri, rel) in file.relations.iter().enumerate() {
        if rel.terms.is_empty() {
            return Err(Error::Parse(format!("relation {} has no terms", ri + 1)));
        }
        let mut terms = Vec::with_capacity(rel.terms.len());
        for t in &rel.terms {
            let at = text[cursor..].find("\"coeff\"").map(|p| cursor + p).unwrap_or(cursor);
            cursor = at + 1;
            let line = line_of(text, at);
            let c = parse_rational(&t.coeff).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
            let w = parse_word(&t.word, &file.generators).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
            if w.is_empty() {
                return Err(Error::Parse(format!("line {line}: empty word in relation {}", ri + 1)));
            }
            terms.push((c, w));
        }
        let len = terms[0].1.len();
        if terms.iter().any(|(_, w)| w.len() != len) {
            return Err(Error::Parse(format!("relation {} mixes word lengths", ri + 1)));
        }
        relations.push(terms);
    }
    Ok(ParsedPresentation { generators: file.generators, field: file.field, relations })
}

/// Reads and decodes a presentation file.
pub fn parse_path(path: &std::path::Path) -> Result<ParsedPresentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

impl ParsedPresentation {
    /// Builds the validated presentation over `field`.
    pub fn build<F: Field>(&self, field: F) -> Result<Presentation<F>> {
        let d = self.generators.len();
        let mut rels = Vec::with_capacity(self.relations.len());
        for (ri, terms) in self.relations.iter().enumerate() {
            let mut pairs = Vec::with_capacity(terms.len());
            for (c, w) in terms {
                if c.is_zero() {
                    continue;
                }
                pairs.push((word_index(w, d), field.from_rational(c)?));
            }
            let vector = SparseVec::from_pairs(&field, pairs);
            if vector.is_zero() {
                return Err(Error::Presentation(format!("relation {} is zero over {}", ri + 1, field.tag())));
            }
            rels.push(Relation { degree: terms[0].1.len(), vector });
        }
        Presentation::new(field, self.generators.clone(), rels)
    }
}

impl PresentationFile {
    /// Serialisable form of a presentation, one relation per canonical basis row.
    pub fn from_presentation<F: Field>(p: &Presentation<F>) -> Self {
        let relations = p
            .relation_list()
            .iter()
            .map(|r| RelationSpec {
                terms: p
                    .terms(r.degree, &r.vector)
                    .into_iter()
                    .map(|(coeff, word)| TermSpec { coeff, word })
                    .collect(),
            })
            .collect();
        PresentationFile { generators: p.generators().to_vec(), field: Some(p.field().tag()), relations }
    }
}

/// Names of the shipped fixtures.
pub const FIXTURE_NAMES: [&str; 7] = [
    "atilde-4-5",
    "atilde-6-7",
    "downup-quotient",
    "xa-yb-2-3",
    "evc-asymmetry",
    "ecc-asymmetry",
    "dual-nonexclusive",
];

/// JSON text of a shipped fixture.
pub fn fixture_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "atilde-4-5" => include_str!("../../../fixtures/atilde-4-5.json"),
        "atilde-6-7" => include_str!("../../../fixtures/atilde-6-7.json"),
        "downup-quotient" => include_str!("../../../fixtures/downup-quotient.json"),
        "xa-yb-2-3" => include_str!("../../../fixtures/xa-yb-2-3.json"),
        "evc-asymmetry" => include_str!("../../../fixtures/evc-asymmetry.json"),
        "ecc-asymmetry" => include_str!("../../../fixtures/ecc-asymmetry.json"),
        "dual-nonexclusive" => include_str!("../../../fixtures/dual-nonexclusive.json"),
        _ => return None,
    })
}

/// A shipped fixture built over `field`.
pub fn fixture<F: Field>(name: &str, field: F) -> Result<Presentation<F>> {
    let text = fixture_text(name).ok_or_else(|| Error::Parse(format!("unknown fixture '{name}'")))?;
    parse_str(text)?.build(field)
}
