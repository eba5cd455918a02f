//! JSON valuation files.
//!
//! ```json
//! {"alphabet":["a","b"],"vars":{"x":{"kind":"words","items":["a","ab"]}}}
//! ```
//!
//! Word items are written with symbols concatenated when every symbol is a
//! single character, and space-separated otherwise. `regex` values use the
//! term grammar without complements, symbols acting as variables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Valuation;
use crate::automata::{to_regex, Alphabet, Automaton, Word};
use crate::error::{Error, Result};
use crate::term::{parse_term, render_term, FragmentClass, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationFile {
    pub alphabet: Vec<String>,
    pub vars: BTreeMap<String, ValueSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ValueSpec {
    Words { items: Vec<String> },
    Regex { expr: String },
    Cowords { items: Vec<String> },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::ValuationFormat(msg.into())
}

impl ValuationFile {
    pub fn parse(text: &str) -> Result<ValuationFile> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    /// Compact JSON with keys in a fixed order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_valuation(&self) -> Result<Valuation> {
        let alphabet = Alphabet::new(self.alphabet.clone())?;
        if let Some(s) = self.alphabet.iter().find(|s| s.is_empty() || s.contains(char::is_whitespace)) {
            return Err(bad(format!("symbol {s:?} is empty or contains whitespace")));
        }
        let mut v = Valuation::new(alphabet.clone());
        for (x, spec) in &self.vars {
            if !crate::term::parse::is_ident(x) {
                return Err(bad(format!("`{x}` is not a variable name")));
            }
            let value = match spec {
                ValueSpec::Words { items } => Automaton::from_words(&alphabet, &decode_items(&alphabet, items)?),
                ValueSpec::Cowords { items } => {
                    Automaton::from_words(&alphabet, &decode_items(&alphabet, items)?).complement()
                }
                ValueSpec::Regex { expr } => {
                    let t = parse_term(expr, FragmentClass::Ka)?;
                    regex_value(&t, &alphabet)?
                }
            };
            v.assign(x, value)?;
        }
        Ok(v)
    }

    /// Describes each value as a finite set, a co-finite set, or a regular
    /// expression, in that order of preference.
    pub fn from_valuation(v: &Valuation) -> Result<ValuationFile> {
        let alphabet = v.alphabet();
        let mut vars = BTreeMap::new();
        for (x, value) in v.assignment() {
            let spec = if let Some(ws) = value.finite_words() {
                ValueSpec::Words { items: encode_items(alphabet, &ws) }
            } else if let Some(ws) = value.complement().finite_words() {
                ValueSpec::Cowords { items: encode_items(alphabet, &ws) }
            } else {
                if let Some(s) = alphabet.symbols().iter().find(|s| !crate::term::parse::is_ident(s)) {
                    return Err(bad(format!("symbol `{s}` cannot appear in a regex value")));
                }
                ValueSpec::Regex { expr: render_term(&to_regex(value)) }
            };
            vars.insert(x.clone(), spec);
        }
        Ok(ValuationFile { alphabet: alphabet.symbols().to_vec(), vars })
    }
}

fn single_chars(alphabet: &Alphabet) -> bool {
    alphabet.symbols().iter().all(|s| s.chars().count() == 1)
}

/// A word as written in valuation files.
pub fn encode_word(alphabet: &Alphabet, w: &[usize]) -> String {
    let sep = if single_chars(alphabet) { "" } else { " " };
    alphabet.spell(w).join(sep)
}

/// Reads a word item: whitespace-separated symbols, or a run of
/// single-character symbols.
pub fn decode_word(alphabet: &Alphabet, item: &str) -> Result<Word> {
    let mut out = Vec::new();
    for tok in item.split_whitespace() {
        if let Some(i) = alphabet.index_of(tok) {
            out.push(i);
            continue;
        }
        for c in tok.chars() {
            let i = alphabet
                .index_of(c.encode_utf8(&mut [0; 4]))
                .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))?;
            out.push(i);
        }
    }
    Ok(out)
}

fn encode_items(alphabet: &Alphabet, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| encode_word(alphabet, w)).collect()
}

fn decode_items(alphabet: &Alphabet, items: &[String]) -> Result<Vec<Word>> {
    items.iter().map(|s| decode_word(alphabet, s)).collect()
}

fn regex_value(t: &Term, alphabet: &Alphabet) -> Result<Automaton> {
    Ok(match t {
        Term::Var(s) => {
            let i = alphabet.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.clone()))?;
            Automaton::from_words(alphabet, &[vec![i]])
        }
        Term::One => Automaton::epsilon(alphabet),
        Term::Zero => Automaton::empty(alphabet),
        Term::Plus(a, b) => regex_value(a, alphabet)?.union(&regex_value(b, alphabet)?)?,
        Term::Seq(a, b) => regex_value(a, alphabet)?.concat(&regex_value(b, alphabet)?)?,
        Term::Star(a) => regex_value(a, alphabet)?.star(),
        Term::CoVar(_) | Term::CoOne | Term::Compl(_) => {
            return Err(bad("complement in a regex value"))
        }
    })
}
