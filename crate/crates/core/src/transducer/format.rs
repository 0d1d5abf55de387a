//! JSON documents and Graphviz export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{StateId, Transducer, TransducerBuilder, TransducerError};
use crate::numeral::{Digit, Radix};

/// On-disk form of a [`Transducer`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransducerDocument {
    pub radix: Radix,
    pub states: Vec<String>,
    pub initial: StateId,
    pub transitions: Vec<TransitionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub from: StateId,
    pub input: Digit,
    pub to: StateId,
    pub output: Vec<Digit>,
}

impl Transducer {
    /// Transitions are listed by state, then by input digit.
    pub fn to_document(&self) -> TransducerDocument {
        let mut transitions = Vec::with_capacity(self.next.len());
        for q in self.states() {
            for d in self.radix.digits() {
                transitions.push(TransitionRecord {
                    from: q,
                    input: d,
                    to: self.next(q, d),
                    output: self.output(q, d).to_vec(),
                });
            }
        }
        TransducerDocument {
            radix: self.radix,
            states: self.labels.clone(),
            initial: self.initial,
            transitions,
        }
    }

    pub fn from_document(doc: &TransducerDocument) -> Result<Transducer, TransducerError> {
        let mut tb = TransducerBuilder::new(doc.radix);
        for label in &doc.states {
            tb.add_state(label.clone());
        }
        if doc.initial >= doc.states.len() {
            return Err(TransducerError::UnknownState(doc.initial));
        }
        tb.initial(doc.initial);
        for t in &doc.transitions {
            tb.edge(t.from, t.input, t.to, t.output.clone())?;
        }
        tb.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Transducer, TransducerError> {
        let doc: TransducerDocument =
            serde_json::from_str(text).map_err(|e| TransducerError::Document(e.to_string()))?;
        Transducer::from_document(&doc)
    }

    /// Graphviz `digraph`, one edge per `(state, digit)` labeled `d|w`.
    ///
    /// With `merge_edges`, parallel edges that share endpoints and output are
    /// drawn once, labeled with the digits they cover (`1-3|0`).
    pub fn to_dot(&self, merge_edges: bool) -> String {
        let mut s = String::new();
        s.push_str("digraph transducer {\n");
        s.push_str("    rankdir=LR;\n");
        s.push_str("    node [shape=circle];\n");
        s.push_str("    start [shape=point];\n");
        let _ = writeln!(s, "    start -> {};", self.initial);
        for q in self.states() {
            let _ = writeln!(s, "    {q} [label=\"{}\"];", escape(self.label(q)));
        }
        for q in self.states() {
            if merge_edges {
                let mut groups: Vec<(StateId, &[Digit], Vec<Digit>)> = Vec::new();
                for d in self.radix.digits() {
                    let (to, out) = (self.next(q, d), self.output(q, d));
                    match groups.iter_mut().find(|(t, o, _)| *t == to && *o == out) {
                        Some(g) => g.2.push(d),
                        None => groups.push((to, out, vec![d])),
                    }
                }
                for (to, out, digits) in groups {
                    let _ = writeln!(
                        s,
                        "    {q} -> {to} [label=\"{}|{}\"];",
                        digit_ranges(&digits),
                        word(out)
                    );
                }
            } else {
                for d in self.radix.digits() {
                    let _ = writeln!(
                        s,
                        "    {q} -> {} [label=\"{d}|{}\"];",
                        self.next(q, d),
                        word(self.output(q, d))
                    );
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

fn word(w: &[Digit]) -> String {
    if w.is_empty() {
        return "ε".to_owned();
    }
    w.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `[0, 1, 2, 5, 7, 8]` -> `"0-2,5,7-8"`
fn digit_ranges(digits: &[Digit]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < digits.len() {
        let mut j = i;
        while j + 1 < digits.len() && digits[j + 1] == digits[j] + 1 {
            j += 1;
        }
        parts.push(if i == j {
            digits[i].to_string()
        } else {
            format!("{}-{}", digits[i], digits[j])
        });
        i = j + 1;
    }
    parts.join(",")
}
