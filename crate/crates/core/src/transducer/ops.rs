use std::collections::{HashMap, VecDeque};

use super::{StateId, Transducer, TransducerError};
use crate::numeral::Digit;

impl Transducer {
    /// States reachable from the initial state, visited breadth first with
    /// digits in ascending order.
    pub(crate) fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for d in self.radix.digits() {
                let to = self.next(q, d);
                if !seen[to] {
                    seen[to] = true;
                    order.push(to);
                }
            }
            i += 1;
        }
        order
    }

    /// Keeps the listed states, in the listed order. Every transition out of
    /// a kept state must land on a kept state.
    fn restrict(&self, keep: &[StateId]) -> Transducer {
        let mut new_id = vec![usize::MAX; self.state_count()];
        for (i, &q) in keep.iter().enumerate() {
            new_id[q] = i;
        }
        let b = self.radix.get() as usize;
        let mut next = Vec::with_capacity(keep.len() * b);
        let mut output = Vec::with_capacity(keep.len() * b);
        for &q in keep {
            for d in self.radix.digits() {
                next.push(new_id[self.next(q, d)]);
                output.push(self.output(q, d).to_vec());
            }
        }
        Transducer {
            radix: self.radix,
            labels: keep.iter().map(|&q| self.labels[q].clone()).collect(),
            initial: new_id[self.initial],
            next,
            output,
        }
    }

    /// Drops every state that no input can reach. Surviving states keep
    /// their relative order, so a machine with nothing to drop is returned
    /// unchanged.
    pub fn reachable(&self) -> Transducer {
        let mut keep = self.bfs_order();
        keep.sort_unstable();
        self.restrict(&keep)
    }

    /// Reachable part, renumbered in breadth-first discovery order.
    pub(crate) fn canonical(&self) -> Transducer {
        self.restrict(&self.bfs_order())
    }

    /// Runs two letter-to-letter machines in lockstep, emitting
    /// `combine(x, y)` where `x` and `y` are their respective output digits.
    ///
    /// Only state pairs reachable from `(q0, q0')` are built; they are
    /// numbered in breadth-first order, so the initial pair is state 0.
    pub fn product(
        &self,
        other: &Transducer,
        combine: impl Fn(Digit, Digit) -> Digit,
    ) -> Result<Transducer, TransducerError> {
        if self.radix != other.radix {
            return Err(TransducerError::RadixMismatch {
                left: self.radix,
                right: other.radix,
            });
        }
        let radix = self.radix;
        let start = (self.initial, other.initial);
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::from([(start, 0)]);
        let mut pairs = vec![start];
        let mut queue = VecDeque::from([start]);
        let mut cells = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            for d in radix.digits() {
                let x = self.letter(p, d)?;
                let y = other.letter(q, d)?;
                let target = (self.next(p, d), other.next(q, d));
                let id = *index.entry(target).or_insert_with(|| {
                    pairs.push(target);
                    queue.push_back(target);
                    pairs.len() - 1
                });
                cells.push((id, vec![radix.check_digit(combine(x, y))?]));
            }
        }
        let labels = pairs
            .iter()
            .map(|&(p, q)| format!("({}, {})", self.labels[p], other.labels[q]))
            .collect();
        let b = radix.get() as usize;
        Transducer::from_fn(radix, labels, 0, |s, d| cells[s * b + d as usize].clone())
    }

    /// Like [`Transducer::product`] but keeps all `|Q1| * |Q2|` pairs,
    /// reachable or not. Pair `(p, q)` is state `p * |Q2| + q`.
    pub fn full_product(
        &self,
        other: &Transducer,
        combine: impl Fn(Digit, Digit) -> Digit,
    ) -> Result<Transducer, TransducerError> {
        if self.radix != other.radix {
            return Err(TransducerError::RadixMismatch {
                left: self.radix,
                right: other.radix,
            });
        }
        self.ensure_letter_to_letter()?;
        other.ensure_letter_to_letter()?;
        let m = other.state_count();
        let mut labels = Vec::with_capacity(self.state_count() * m);
        for p in self.states() {
            for q in other.states() {
                labels.push(format!("({}, {})", self.labels[p], other.labels[q]));
            }
        }
        Transducer::from_fn(
            self.radix,
            labels,
            self.initial * m + other.initial,
            |s, d| {
                let (p, q) = (s / m, s % m);
                let out = combine(self.output(p, d)[0], other.output(q, d)[0]);
                (self.next(p, d) * m + other.next(q, d), vec![out])
            },
        )
    }

    /// Maps every output digit through `f`; states and transitions are
    /// untouched.
    pub fn relabel_outputs(
        &self,
        f: impl Fn(Digit) -> Digit,
    ) -> Result<Transducer, TransducerError> {
        self.relabel_outputs_with_input(|_, o| f(o))
    }

    /// Rewrites each output digit `o` emitted while reading `a` to `g(a, o)`.
    pub fn relabel_outputs_with_input(
        &self,
        g: impl Fn(Digit, Digit) -> Digit,
    ) -> Result<Transducer, TransducerError> {
        let mut output = self.output.clone();
        let b = self.radix.get() as usize;
        for (i, word) in output.iter_mut().enumerate() {
            let a = (i % b) as Digit;
            for o in word.iter_mut() {
                *o = self.radix.check_digit(g(a, *o))?;
            }
        }
        Ok(Transducer {
            output,
            ..self.clone()
        })
    }
}
