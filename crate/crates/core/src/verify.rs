//! Two independent checks of
//! `double_bar(((b + 1) n) (-)_b n) = n (+)_{-b} (-n)`.
//!
//! [`check_identity`] brute-forces the integer identity with the operators
//! from [`crate::numeral`]. [`machine_proof`] builds both sides as
//! transducers and shows they are the same machine, which covers every `n`
//! for the radix in question.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::machines::{figure1_product, lemma1_machine, theorem_machine};
use crate::numeral::{double_bar, ominus, oplus_neg, NumeralError, Radix};
use crate::transducer::{IsoMismatch, IsomorphismWitness, Transducer};

mod bigint_text {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Left side: `double_bar(((b + 1) n) (-)_b n)`.
pub fn identity_lhs(n: &BigInt, radix: Radix) -> Result<BigInt, NumeralError> {
    let scaled = n * (radix.get() + 1);
    double_bar(&ominus(&scaled, n, radix)?, radix)
}

/// Right side: `n (+)_{-b} (-n)`.
pub fn identity_rhs(n: &BigInt, radix: Radix) -> BigInt {
    oplus_neg(n, &-n, radix)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub b: u32,
    #[serde(with = "bigint_text")]
    pub n: BigInt,
    #[serde(with = "bigint_text")]
    pub lhs: BigInt,
    #[serde(with = "bigint_text")]
    pub rhs: BigInt,
}

/// Result of an exhaustive sweep. Failures are collected rather than
/// stopping the sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub b_min: u32,
    pub b_max: u32,
    pub n_min: u64,
    pub n_max: u64,
    pub checked: u64,
    pub failures: Vec<IdentityFailure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Combines reports for sub-ranges. Associative and commutative, so
    /// workers may sweep disjoint ranges in any order.
    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        self.b_min = self.b_min.min(other.b_min);
        self.b_max = self.b_max.max(other.b_max);
        self.n_min = self.n_min.min(other.n_min);
        self.n_max = self.n_max.max(other.n_max);
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.failures.sort_by(|x, y| (x.b, &x.n).cmp(&(y.b, &y.n)));
        self
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identity sweep: b in {}..={}, n in {}..={}: {} cases checked, {} failures",
            self.b_min,
            self.b_max,
            self.n_min,
            self.n_max,
            self.checked,
            self.failures.len()
        )?;
        for x in &self.failures {
            writeln!(f, "  FAIL b={} n={}: lhs={} rhs={}", x.b, x.n, x.lhs, x.rhs)?;
        }
        Ok(())
    }
}

/// Checks the identity for every `b` in `radices` and `n` in `ns`.
pub fn check_identity_range(
    radices: RangeInclusive<u32>,
    ns: RangeInclusive<u64>,
) -> Result<SweepReport, NumeralError> {
    let mut report = SweepReport {
        b_min: *radices.start(),
        b_max: *radices.end(),
        n_min: *ns.start(),
        n_max: *ns.end(),
        checked: 0,
        failures: Vec::new(),
    };
    for b in radices {
        let radix = Radix::new(b)?;
        for n in ns.clone() {
            let n = BigInt::from(n);
            let lhs = identity_lhs(&n, radix)?;
            let rhs = identity_rhs(&n, radix);
            report.checked += 1;
            if lhs != rhs {
                report.failures.push(IdentityFailure { b, n, lhs, rhs });
            }
        }
    }
    Ok(report)
}

/// Sweeps `2 <= b <= b_max`, `0 <= n <= n_max`.
pub fn check_identity(b_max: u32, n_max: u64) -> Result<SweepReport, NumeralError> {
    Radix::new(b_max)?;
    check_identity_range(2..=b_max, 0..=n_max)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoOutcome {
    Witness(IsomorphismWitness),
    Mismatch(IsoMismatch),
}

impl IsoOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, IsoOutcome::Witness(_))
    }
}

impl From<Result<IsomorphismWitness, IsoMismatch>> for IsoOutcome {
    fn from(r: Result<IsomorphismWitness, IsoMismatch>) -> Self {
        match r {
            Ok(w) => IsoOutcome::Witness(w),
            Err(m) => IsoOutcome::Mismatch(m),
        }
    }
}

impl fmt::Display for IsoOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoOutcome::Witness(w) => write!(f, "isomorphic {w}"),
            IsoOutcome::Mismatch(m) => write!(f, "NOT isomorphic: {m}"),
        }
    }
}

/// What the machine-level pipeline found for one radix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofRecord {
    pub radix: Radix,
    pub product_states: usize,
    pub minimized_states: usize,
    /// Minimized product against the hand-built three-state machine.
    pub versus_lemma1: IsoOutcome,
    /// Minimized product against the minimized `theorem_machine`.
    pub versus_theorem: IsoOutcome,
}

impl ProofRecord {
    pub fn passed(&self) -> bool {
        self.product_states == 6
            && self.minimized_states == 3
            && self.versus_lemma1.is_witness()
            && self.versus_theorem.is_witness()
    }
}

impl fmt::Display for ProofRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={}: {} product states, {} after minimization; lemma1: {}; theorem: {} [{}]",
            self.radix,
            self.product_states,
            self.minimized_states,
            self.versus_lemma1,
            self.versus_theorem,
            if self.passed() { "ok" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub records: Vec<ProofRecord>,
}

impl ProofReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(ProofRecord::passed)
    }
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "machine proof:")?;
        for r in &self.records {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Runs the transducer pipeline for one radix: build the lockstep product
/// of the two negabase converters, minimize it, and match the result
/// against both three-state machines.
pub fn machine_proof(radix: Radix) -> ProofRecord {
    let product: Transducer = figure1_product(radix);
    let minimized = product.minimize();
    ProofRecord {
        radix,
        product_states: product.state_count(),
        minimized_states: minimized.state_count(),
        versus_lemma1: minimized.isomorphic(&lemma1_machine(radix)).into(),
        versus_theorem: minimized
            .isomorphic(&theorem_machine(radix).minimize())
            .into(),
    }
}

/// [`machine_proof`] for every `2 <= b <= b_max`.
pub fn machine_proof_range(b_max: u32) -> Result<ProofReport, NumeralError> {
    Radix::new(b_max)?;
    let records = (2..=b_max)
        .map(|b| machine_proof(Radix::new(b).expect("b >= 2")))
        .collect();
    Ok(ProofReport { records })
}

/// First `count` terms of OEIS A178729, `a(n) = n (+)_{-2} (-n)` for
/// `n = 1..=count`.
pub fn a178729(count: usize) -> Vec<BigInt> {
    (1..=count as u64)
        .map(|n| identity_rhs(&BigInt::from(n), Radix::BINARY))
        .collect()
}
