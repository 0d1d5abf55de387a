//! Complete deterministic Mealy machines over the digit alphabet `0..b`.
//!
//! A [`Transducer`] reads a digit string least-significant digit first. From
//! state `q` reading digit `d` it emits the word `output(q, d)` and moves to
//! `next(q, d)`. Numbers have an unbounded supply of leading zeros, so after
//! the input runs out the machine keeps reading `0` until it sits in a
//! quiescent state, one from which zeros can only ever produce zeros.

mod format;
mod iso;
mod minimize;
mod ops;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::numeral::{strip_trailing_zeros, Digit, DigitString, NumeralError, Radix};

pub use format::{TransducerDocument, TransitionRecord};
pub use iso::{IsoMismatch, IsomorphismWitness};

/// Index of a state inside one [`Transducer`].
pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransducerError {
    #[error(transparent)]
    Numeral(#[from] NumeralError),
    #[error("radix mismatch: {left} vs {right}")]
    RadixMismatch { left: Radix, right: Radix },
    #[error("product requires letter-to-letter machines: state {state} on digit {digit} emits {len} digits")]
    NotLetterToLetter {
        state: StateId,
        digit: Digit,
        len: usize,
    },
    #[error("no transition for state {state} on digit {digit}")]
    Incomplete { state: StateId, digit: Digit },
    #[error("transition for state {state} on digit {digit} defined twice")]
    DuplicateTransition { state: StateId, digit: Digit },
    #[error("unknown state {0}")]
    UnknownState(StateId),
    #[error("machine has no states")]
    NoStates,
    #[error("non-terminating zero tail: no quiescent state within {steps} padding steps (stuck at state {state})")]
    NonTerminatingZeroTail { state: StateId, steps: usize },
    #[error("malformed machine document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    radix: Radix,
    labels: Vec<String>,
    initial: StateId,
    // Both tables are indexed by `state * b + digit`.
    next: Vec<StateId>,
    output: Vec<Vec<Digit>>,
}

/// Outcome of [`Transducer::run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    /// Concatenated output, least-significant first, trailing zeros removed.
    pub output: DigitString,
    pub final_state: StateId,
    /// Zeros fed after the input was exhausted.
    pub padded_steps: usize,
}

impl Transducer {
    /// Builds a machine from a total transition function.
    pub fn from_fn(
        radix: Radix,
        labels: Vec<String>,
        initial: StateId,
        mut f: impl FnMut(StateId, Digit) -> (StateId, Vec<Digit>),
    ) -> Result<Self, TransducerError> {
        let b = radix.get() as usize;
        let mut next = Vec::with_capacity(labels.len() * b);
        let mut output = Vec::with_capacity(labels.len() * b);
        for q in 0..labels.len() {
            for d in radix.digits() {
                let (to, word) = f(q, d);
                next.push(to);
                output.push(word);
            }
        }
        let t = Transducer {
            radix,
            labels,
            initial,
            next,
            output,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), TransducerError> {
        let n = self.labels.len();
        if n == 0 {
            return Err(TransducerError::NoStates);
        }
        if self.initial >= n {
            return Err(TransducerError::UnknownState(self.initial));
        }
        if let Some(&bad) = self.next.iter().find(|&&to| to >= n) {
            return Err(TransducerError::UnknownState(bad));
        }
        for word in &self.output {
            for &d in word {
                self.radix.check_digit(d)?;
            }
        }
        Ok(())
    }

    #[inline]
    fn cell(&self, state: StateId, digit: Digit) -> usize {
        debug_assert!(digit < self.radix.get());
        state * self.radix.get() as usize + digit as usize
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.labels.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, state: StateId) -> &str {
        &self.labels[state]
    }

    /// Finds a state by its display label.
    pub fn state_by_label(&self, label: &str) -> Option<StateId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn next(&self, state: StateId, digit: Digit) -> StateId {
        self.next[self.cell(state, digit)]
    }

    pub fn output(&self, state: StateId, digit: Digit) -> &[Digit] {
        &self.output[self.cell(state, digit)]
    }

    /// True when every transition emits exactly one digit.
    pub fn is_letter_to_letter(&self) -> bool {
        self.output.iter().all(|w| w.len() == 1)
    }

    pub(crate) fn letter(&self, state: StateId, digit: Digit) -> Result<Digit, TransducerError> {
        match self.output(state, digit) {
            [d] => Ok(*d),
            word => Err(TransducerError::NotLetterToLetter {
                state,
                digit,
                len: word.len(),
            }),
        }
    }

    pub(crate) fn ensure_letter_to_letter(&self) -> Result<(), TransducerError> {
        for q in self.states() {
            for d in self.radix.digits() {
                self.letter(q, d)?;
            }
        }
        Ok(())
    }

    /// The largest set of states `S` such that from every `q` in `S`,
    /// reading `0` emits only zeros and lands back in `S`.
    pub fn quiescent_states(&self) -> BTreeSet<StateId> {
        let mut inside: Vec<bool> = self
            .states()
            .map(|q| self.output(q, 0).iter().all(|&d| d == 0))
            .collect();
        loop {
            let mut changed = false;
            for q in self.states() {
                if inside[q] && !inside[self.next(q, 0)] {
                    inside[q] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.states().filter(|&q| inside[q]).collect()
    }

    /// Runs the machine on `input`, then pads with zeros until it reaches a
    /// quiescent state.
    ///
    /// A zero-fed trajectory revisits some state within `|Q|` steps, so if no
    /// quiescent state shows up by then it never will.
    pub fn run(&self, input: &DigitString) -> Result<RunResult, TransducerError> {
        if input.radix() != self.radix {
            return Err(TransducerError::RadixMismatch {
                left: self.radix,
                right: input.radix(),
            });
        }
        let quiescent = self.quiescent_states();
        let mut state = self.initial;
        let mut out = Vec::with_capacity(input.len() + 2);
        for &d in input.digits() {
            out.extend_from_slice(self.output(state, d));
            state = self.next(state, d);
        }
        let mut padded_steps = 0;
        while !quiescent.contains(&state) {
            if padded_steps == self.state_count() {
                return Err(TransducerError::NonTerminatingZeroTail {
                    state,
                    steps: padded_steps,
                });
            }
            out.extend_from_slice(self.output(state, 0));
            state = self.next(state, 0);
            padded_steps += 1;
        }
        strip_trailing_zeros(&mut out);
        Ok(RunResult {
            output: DigitString::new(out, self.radix)?,
            final_state: state,
            padded_steps,
        })
    }
}

/// Incremental construction of a [`Transducer`], one guarded edge at a time.
///
/// Each `(state, digit)` cell may be defined only once, and [`build`] fails
/// unless every cell is defined.
///
/// [`build`]: TransducerBuilder::build
#[derive(Debug, Clone)]
pub struct TransducerBuilder {
    radix: Radix,
    labels: Vec<String>,
    initial: StateId,
    cells: Vec<Option<(StateId, Vec<Digit>)>>,
}

impl TransducerBuilder {
    pub fn new(radix: Radix) -> Self {
        TransducerBuilder {
            radix,
            labels: Vec::new(),
            initial: 0,
            cells: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> StateId {
        self.labels.push(label.into());
        self.cells
            .extend(std::iter::repeat_n(None, self.radix.get() as usize));
        self.labels.len() - 1
    }

    pub fn initial(&mut self, state: StateId) -> &mut Self {
        self.initial = state;
        self
    }

    pub fn edge(
        &mut self,
        from: StateId,
        digit: Digit,
        to: StateId,
        output: impl Into<Vec<Digit>>,
    ) -> Result<&mut Self, TransducerError> {
        let n = self.labels.len();
        for q in [from, to] {
            if q >= n {
                return Err(TransducerError::UnknownState(q));
            }
        }
        self.radix.check_digit(digit)?;
        let output = output.into();
        for &d in &output {
            self.radix.check_digit(d)?;
        }
        let slot = &mut self.cells[from * self.radix.get() as usize + digit as usize];
        if slot.is_some() {
            return Err(TransducerError::DuplicateTransition { state: from, digit });
        }
        *slot = Some((to, output));
        Ok(self)
    }

    /// Adds one edge out of `from` for every digit accepted by `guard`.
    /// An empty guard range adds nothing.
    pub fn edges(
        &mut self,
        from: StateId,
        guard: impl Fn(Digit) -> bool,
        mut target: impl FnMut(Digit) -> (StateId, Vec<Digit>),
    ) -> Result<&mut Self, TransducerError> {
        for d in self.radix.digits().filter(|&d| guard(d)) {
            let (to, word) = target(d);
            self.edge(from, d, to, word)?;
        }
        Ok(self)
    }

    pub fn build(self) -> Result<Transducer, TransducerError> {
        let b = self.radix.get() as usize;
        let mut next = Vec::with_capacity(self.cells.len());
        let mut output = Vec::with_capacity(self.cells.len());
        for (i, cell) in self.cells.into_iter().enumerate() {
            let (to, word) = cell.ok_or(TransducerError::Incomplete {
                state: i / b,
                digit: (i % b) as Digit,
            })?;
            next.push(to);
            output.push(word);
        }
        let t = Transducer {
            radix: self.radix,
            labels: self.labels,
            initial: self.initial,
            next,
            output,
        };
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(b: u32) -> Radix {
        Radix::new(b).unwrap()
    }

    /// Multiply by 3 in binary, carries 0..=2.
    fn times_three() -> Transducer {
        Transducer::from_fn(r(2), vec!["0".into(), "1".into(), "2".into()], 0, |c, a| {
            let s = 3 * a + c as u32;
            ((s / 2) as usize, vec![s % 2])
        })
        .unwrap()
    }

    #[test]
    fn run_multiply_by_three() {
        let out = times_three()
            .run(&DigitString::new(vec![1, 1], r(2)).unwrap())
            .unwrap();
        assert_eq!(out.output.digits(), &[1, 0, 0, 1]);
        assert_eq!(out.final_state, 0);
        assert_eq!(out.padded_steps, 2);
    }

    #[test]
    fn run_empty_input_at_quiescent_initial() {
        let t = times_three();
        let out = t.run(&DigitString::zero(r(2))).unwrap();
        assert!(out.output.is_zero());
        assert_eq!(out.padded_steps, 0);
    }

    #[test]
    fn run_rejects_foreign_radix() {
        let err = times_three()
            .run(&DigitString::new(vec![2], r(3)).unwrap())
            .unwrap_err();
        assert!(matches!(err, TransducerError::RadixMismatch { .. }));
    }

    #[test]
    fn run_detects_non_terminating_tail() {
        // Reading 0 flips between two states that both emit 1.
        let t = Transducer::from_fn(r(2), vec!["a".into(), "b".into()], 0, |q, _| {
            (1 - q, vec![1])
        })
        .unwrap();
        assert!(t.quiescent_states().is_empty());
        let err = t.run(&DigitString::zero(r(2))).unwrap_err();
        assert_eq!(
            err,
            TransducerError::NonTerminatingZeroTail { state: 0, steps: 2 }
        );
    }

    #[test]
    fn quiescent_examples() {
        assert_eq!(times_three().quiescent_states(), BTreeSet::from([0]));
        let identity =
            Transducer::from_fn(r(5), vec!["q0".into()], 0, |_, d| (0, vec![d])).unwrap();
        assert_eq!(identity.quiescent_states(), BTreeSet::from([0]));
        // Zero output but leads to a noisy state: removed by the fixpoint.
        let t = Transducer::from_fn(r(2), vec!["a".into(), "b".into()], 0, |q, _| {
            if q == 0 {
                (1, vec![0])
            } else {
                (1, vec![1])
            }
        })
        .unwrap();
        assert!(t.quiescent_states().is_empty());
    }

    #[test]
    fn word_outputs_are_concatenated() {
        // Emits every digit twice.
        let t = Transducer::from_fn(r(3), vec!["q".into()], 0, |_, d| (0, vec![d, d])).unwrap();
        assert!(!t.is_letter_to_letter());
        let out = t.run(&DigitString::new(vec![1, 2], r(3)).unwrap()).unwrap();
        assert_eq!(out.output.digits(), &[1, 1, 2, 2]);
    }

    #[test]
    fn builder_rejects_bad_machines() {
        let mut tb = TransducerBuilder::new(r(2));
        let a = tb.add_state("a");
        tb.edge(a, 0, a, vec![0]).unwrap();
        assert_eq!(
            tb.edge(a, 0, a, vec![1]).unwrap_err(),
            TransducerError::DuplicateTransition { state: 0, digit: 0 }
        );
        assert_eq!(
            tb.edge(a, 1, 7, vec![1]).unwrap_err(),
            TransducerError::UnknownState(7)
        );
        assert!(matches!(
            tb.edge(a, 1, a, vec![2]).unwrap_err(),
            TransducerError::Numeral(NumeralError::DigitOutOfRange { .. })
        ));
        assert_eq!(
            tb.clone().build().unwrap_err(),
            TransducerError::Incomplete { state: 0, digit: 1 }
        );
        tb.edge(a, 1, a, vec![1]).unwrap();
        assert!(tb.build().is_ok());
        assert_eq!(
            TransducerBuilder::new(r(2)).build().unwrap_err(),
            TransducerError::NoStates
        );
    }

    #[test]
    fn builder_empty_guard_adds_nothing() {
        let b = r(2);
        let mut tb = TransducerBuilder::new(b);
        let q = tb.add_state("q");
        tb.edges(q, |d| 0 < d && d < b.max_digit(), |d| (q, vec![d]))
            .unwrap();
        tb.edges(q, |_| true, |d| (q, vec![d])).unwrap();
        assert!(tb.build().is_ok());
    }
}
