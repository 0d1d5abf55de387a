use std::collections::HashMap;

use super::{StateId, Transducer};
use crate::numeral::Digit;

impl Transducer {
    /// Coarsest partition of the states such that states in the same block
    /// have identical output rows and, digit by digit, successors in the same
    /// block. Returns the block index of every state and the block count.
    ///
    /// Moore-style refinement: start from the output-row partition and split
    /// by successor blocks until the block count stops growing.
    pub fn equivalence_classes(&self) -> (Vec<usize>, usize) {
        let mut block = vec![0usize; self.state_count()];
        let mut count;
        {
            let mut rows: HashMap<Vec<&[Digit]>, usize> = HashMap::new();
            for q in self.states() {
                let row: Vec<&[Digit]> = self.radix.digits().map(|d| self.output(q, d)).collect();
                let fresh = rows.len();
                block[q] = *rows.entry(row).or_insert(fresh);
            }
            count = rows.len();
        }
        loop {
            let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = self
                .states()
                .map(|q| {
                    let succ = self
                        .radix
                        .digits()
                        .map(|d| block[self.next(q, d)])
                        .collect();
                    let fresh = sigs.len();
                    *sigs.entry((block[q], succ)).or_insert(fresh)
                })
                .collect();
            let refined_count = sigs.len();
            block = refined;
            if refined_count == count {
                return (block, count);
            }
            count = refined_count;
        }
    }

    /// The minimal machine equivalent to `self`: reachable states only,
    /// merged by Mealy equivalence, numbered breadth first from the initial
    /// state. Merged states get a label listing their members.
    pub fn minimize(&self) -> Transducer {
        let reach = self.reachable();
        let (block, count) = reach.equivalence_classes();
        let mut members: Vec<Vec<StateId>> = vec![Vec::new(); count];
        for q in reach.states() {
            members[block[q]].push(q);
        }
        let labels = members
            .iter()
            .map(|m| match m.as_slice() {
                [single] => reach.labels[*single].clone(),
                many => {
                    let names: Vec<&str> = many.iter().map(|&q| reach.label(q)).collect();
                    format!("{{{}}}", names.join(", "))
                }
            })
            .collect();
        let quotient = Transducer::from_fn(reach.radix, labels, block[reach.initial], |c, d| {
            let rep = members[c][0];
            (block[reach.next(rep, d)], reach.output(rep, d).to_vec())
        })
        .expect("quotient of a valid machine is valid");
        quotient.canonical()
    }
}
