//! The concrete machines, built for any radix `b >= 2`.
//!
//! Diagram edges guarded by conditions such as "for `d > 0`" are compiled
//! into total transition tables. A guard range may be empty (for `b = 2`,
//! `0 < d < b - 1` holds for no digit); overlapping guards make the builder
//! fail, which is treated as a bug in the constructor.

use std::fmt;
use std::str::FromStr;

use crate::numeral::{Digit, Radix};
use crate::transducer::{Transducer, TransducerBuilder};

/// Base `b` digits of `n` in, base `-b` digits of `n` out.
///
/// States track digit-position parity and whether a carry of 1 is pending.
pub fn conv_n_to_negabase(radix: Radix) -> Transducer {
    let b = radix.get();
    let top = radix.max_digit();
    let mut tb = TransducerBuilder::new(radix);
    let even0 = tb.add_state("even 0");
    let odd0 = tb.add_state("odd 0");
    let even1 = tb.add_state("even 1");
    let odd1 = tb.add_state("odd 1");
    tb.initial(even0);
    (|| {
        tb.edges(even0, |_| true, |d| (odd0, vec![d]))?;
        tb.edge(odd0, 0, even0, vec![0])?;
        tb.edges(odd0, |d| d > 0, |d| (even1, vec![b - d]))?;
        tb.edges(even1, |d| d < top, |d| (odd0, vec![d + 1]))?;
        tb.edge(even1, top, odd1, vec![0])?;
        tb.edges(odd1, |_| true, |d| (even1, vec![top - d]))?;
        Ok::<_, crate::transducer::TransducerError>(())
    })()
    .expect("edge guards partition the digits");
    tb.build().expect("every state has an edge for every digit")
}

/// Base `b` digits of `n` in, base `-b` digits of `-n` out.
///
/// Same shape as [`conv_n_to_negabase`] with the parities swapped.
pub fn conv_neg_n_to_negabase(radix: Radix) -> Transducer {
    let b = radix.get();
    let top = radix.max_digit();
    let mut tb = TransducerBuilder::new(radix);
    let odd0 = tb.add_state("odd 0");
    let even0 = tb.add_state("even 0");
    let odd1 = tb.add_state("odd 1");
    let even1 = tb.add_state("even 1");
    tb.initial(even0);
    (|| {
        tb.edges(odd0, |_| true, |d| (even0, vec![d]))?;
        tb.edge(even0, 0, odd0, vec![0])?;
        tb.edges(even0, |d| d > 0, |d| (odd1, vec![b - d]))?;
        tb.edges(odd1, |d| d < top, |d| (even0, vec![d + 1]))?;
        tb.edge(odd1, top, even1, vec![0])?;
        tb.edges(even1, |_| true, |d| (odd1, vec![top - d]))?;
        Ok::<_, crate::transducer::TransducerError>(())
    })()
    .expect("edge guards partition the digits");
    tb.build().expect("every state has an edge for every digit")
}

/// Three-state machine taking the base `b` digits of `n` to those of
/// `n (+)_{-b} (-n)`.
pub fn lemma1_machine(radix: Radix) -> Transducer {
    let top = radix.max_digit();
    let mut tb = TransducerBuilder::new(radix);
    let s00 = tb.add_state("00");
    let s10 = tb.add_state("10");
    let s11 = tb.add_state("11");
    tb.initial(s00);
    (|| {
        tb.edge(s00, 0, s00, vec![0])?;
        tb.edges(s00, |d| d > 0, |_| (s10, vec![0]))?;
        tb.edge(s10, 0, s00, vec![1])?;
        tb.edges(s10, |d| 0 < d && d < top, |_| (s10, vec![1]))?;
        tb.edge(s10, top, s11, vec![1])?;
        tb.edge(s11, top, s11, vec![0])?;
        tb.edges(s11, |d| d < top, |_| (s10, vec![0]))?;
        Ok::<_, crate::transducer::TransducerError>(())
    })()
    .expect("edge guards partition the digits");
    tb.build().expect("every state has an edge for every digit")
}

/// Carry after reading digit `a` with carry `c` while multiplying by
/// `b + 1`: `floor((a + c) / b) + a`. Never exceeds `b` for `c <= b`.
pub fn next_carry(radix: Radix, carry: u32, a: Digit) -> u32 {
    (a + carry) / radix.get() + a
}

/// Multiplication by `b + 1` in base `b`. State `c` is the pending carry,
/// `0 <= c <= b`.
pub fn mult_by_b_plus_1(radix: Radix) -> Transducer {
    let b = radix.get();
    let labels = (0..=b).map(|c| c.to_string()).collect();
    Transducer::from_fn(radix, labels, 0, |c, a| {
        let to = next_carry(radix, c as u32, a);
        assert!(to <= b, "carry {to} escaped 0..={b}");
        (to as usize, vec![(a + c as u32) % b])
    })
    .expect("carries stay within 0..=b")
}

/// `n -> ((b + 1) n) (-)_b n`: the multiplier with the input digit
/// subtracted from each output digit mod `b`. What remains is `c mod b`
/// for the source carry `c`.
pub fn ominus_mult_machine(radix: Radix) -> Transducer {
    let b = radix.get();
    mult_by_b_plus_1(radix)
        .relabel_outputs_with_input(|a, o| (o + b - a) % b)
        .expect("residues are digits")
}

/// `n -> double_bar(((b + 1) n) (-)_b n)`, obtained mechanically: clamp the
/// outputs of [`ominus_mult_machine`] to `min(d, 1)` and minimize.
pub fn theorem_machine(radix: Radix) -> Transducer {
    ominus_mult_machine(radix)
        .relabel_outputs(|d| d.min(1))
        .expect("0 and 1 are digits")
        .minimize()
}

/// Lockstep product of the two negabase converters, output digits summed
/// mod `b`. Computes `n (+)_{-b} (-n)` with parity still in the state.
pub fn figure1_product(radix: Radix) -> Transducer {
    let b = radix.get();
    conv_n_to_negabase(radix)
        .product(&conv_neg_n_to_negabase(radix), |x, y| (x + y) % b)
        .expect("both converters are letter-to-letter over the same radix")
}

/// Name-addressable catalogue of the constructors above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MachineKind {
    ConvNToNegabase,
    ConvNegNToNegabase,
    Lemma1,
    MultByBPlus1,
    OminusMult,
    Theorem,
    Figure1Product,
}

impl MachineKind {
    pub const ALL: [MachineKind; 7] = [
        MachineKind::ConvNToNegabase,
        MachineKind::ConvNegNToNegabase,
        MachineKind::Lemma1,
        MachineKind::MultByBPlus1,
        MachineKind::OminusMult,
        MachineKind::Theorem,
        MachineKind::Figure1Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MachineKind::ConvNToNegabase => "conv-n",
            MachineKind::ConvNegNToNegabase => "conv-neg-n",
            MachineKind::Lemma1 => "lemma1",
            MachineKind::MultByBPlus1 => "mult",
            MachineKind::OminusMult => "ominus-mult",
            MachineKind::Theorem => "theorem",
            MachineKind::Figure1Product => "figure1-product",
        }
    }

    pub fn build(self, radix: Radix) -> Transducer {
        match self {
            MachineKind::ConvNToNegabase => conv_n_to_negabase(radix),
            MachineKind::ConvNegNToNegabase => conv_neg_n_to_negabase(radix),
            MachineKind::Lemma1 => lemma1_machine(radix),
            MachineKind::MultByBPlus1 => mult_by_b_plus_1(radix),
            MachineKind::OminusMult => ominus_mult_machine(radix),
            MachineKind::Theorem => theorem_machine(radix),
            MachineKind::Figure1Product => figure1_product(radix),
        }
    }
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown machine {0:?}")]
pub struct UnknownMachine(pub String);

impl FromStr for MachineKind {
    type Err = UnknownMachine;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MachineKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownMachine(s.to_owned()))
    }
}
