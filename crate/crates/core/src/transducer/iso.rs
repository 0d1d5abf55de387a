use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{StateId, Transducer};
use crate::numeral::{Digit, Radix};

/// A state bijection showing two machines are the same up to relabeling.
/// `mapping[q]` is the right-hand state matched to left-hand state `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismWitness {
    pub mapping: Vec<StateId>,
}

impl IsomorphismWitness {
    pub fn apply(&self, state: StateId) -> StateId {
        self.mapping[state]
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> IsomorphismWitness {
        let mut mapping = vec![0; self.mapping.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            mapping[j] = i;
        }
        IsomorphismWitness { mapping }
    }

    /// Re-checks the witness against both machines from scratch.
    pub fn holds(&self, left: &Transducer, right: &Transducer) -> bool {
        let n = left.state_count();
        if left.radix() != right.radix() || n != right.state_count() || self.mapping.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &j in &self.mapping {
            if j >= n || std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        self.apply(left.initial()) == right.initial()
            && left.states().all(|q| {
                left.radix().digits().all(|d| {
                    left.output(q, d) == right.output(self.apply(q), d)
                        && self.apply(left.next(q, d)) == right.next(self.apply(q), d)
                })
            })
    }
}

impl fmt::Display for IsomorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .mapping
            .iter()
            .enumerate()
            .map(|(i, j)| format!("{i}->{j}"))
            .collect();
        write!(f, "[{}]", pairs.join(", "))
    }
}

/// Why two machines are not isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoMismatch {
    #[error("radix mismatch: {left} vs {right}")]
    Radix { left: Radix, right: Radix },
    #[error("state count mismatch: {left} vs {right}")]
    StateCount { left: usize, right: usize },
    #[error("output mismatch at states ({left_state}, {right_state}) on digit {digit}: {left:?} vs {right:?}")]
    Output {
        left_state: StateId,
        right_state: StateId,
        digit: Digit,
        left: Vec<Digit>,
        right: Vec<Digit>,
    },
    #[error("transition mismatch at states ({left_state}, {right_state}) on digit {digit}: {left_target} vs {right_target}")]
    Transition {
        left_state: StateId,
        right_state: StateId,
        digit: Digit,
        left_target: StateId,
        right_target: StateId,
    },
    #[error("only {matched} of {total} states are reachable; minimize both machines first")]
    Unreachable { matched: usize, total: usize },
}

impl Transducer {
    /// Searches for a relabeling that turns `self` into `other`.
    ///
    /// Both machines are walked in lockstep from their initial states, digits
    /// in ascending order. Each step either extends the unique candidate
    /// bijection or exposes the first disagreement.
    pub fn isomorphic(&self, other: &Transducer) -> Result<IsomorphismWitness, IsoMismatch> {
        if self.radix != other.radix {
            return Err(IsoMismatch::Radix {
                left: self.radix,
                right: other.radix,
            });
        }
        let n = self.state_count();
        if n != other.state_count() {
            return Err(IsoMismatch::StateCount {
                left: n,
                right: other.state_count(),
            });
        }
        let mut fwd: Vec<Option<StateId>> = vec![None; n];
        let mut back: Vec<Option<StateId>> = vec![None; n];
        fwd[self.initial] = Some(other.initial);
        back[other.initial] = Some(self.initial);
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        let mut matched = 1;
        while let Some((p, q)) = queue.pop_front() {
            for d in self.radix.digits() {
                let (left, right) = (self.output(p, d), other.output(q, d));
                if left != right {
                    return Err(IsoMismatch::Output {
                        left_state: p,
                        right_state: q,
                        digit: d,
                        left: left.to_vec(),
                        right: right.to_vec(),
                    });
                }
                let (p2, q2) = (self.next(p, d), other.next(q, d));
                match (fwd[p2], back[q2]) {
                    (None, None) => {
                        fwd[p2] = Some(q2);
                        back[q2] = Some(p2);
                        matched += 1;
                        queue.push_back((p2, q2));
                    }
                    (Some(x), Some(y)) if x == q2 && y == p2 => {}
                    _ => {
                        return Err(IsoMismatch::Transition {
                            left_state: p,
                            right_state: q,
                            digit: d,
                            left_target: p2,
                            right_target: q2,
                        })
                    }
                }
            }
        }
        if matched < n {
            return Err(IsoMismatch::Unreachable { matched, total: n });
        }
        Ok(IsomorphismWitness {
            mapping: fwd.into_iter().map(|q| q.expect("all matched")).collect(),
        })
    }
}
