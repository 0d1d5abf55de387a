use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use negaxor::machines::MachineKind;
use negaxor::numeral::{double_bar, ominus, oplus_neg, to_base, to_negabase, DigitString, Radix};
use negaxor::verify::{a178729, check_identity, machine_proof, machine_proof_range};
use negaxor::Transducer;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "negaxor",
    version,
    about = "Digit-wise base b / base -b arithmetic and transducers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the base b (or base -b) expansion of an integer, most significant digit first.
    Convert {
        #[arg(allow_negative_numbers = true)]
        n: BigInt,
        #[arg(long = "b", visible_alias = "base", default_value_t = 2)]
        b: u32,
        /// Expand in base -b instead of base b.
        #[arg(long)]
        negabase: bool,
        /// Left-pad with zeros to this many digits.
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply one digit-wise operator.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// Print terms of OEIS A178729, one per line.
    Seq {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the identity by brute force and by machine isomorphism.
    Verify {
        #[arg(long, default_value_t = 10)]
        b_max: u32,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export one of the machines, run it, or run the proof pipeline.
    Machine {
        /// conv-n, conv-neg-n, lemma1, mult, ominus-mult, theorem or figure1-product
        name: String,
        #[arg(long = "b", visible_alias = "base", default_value_t = 2)]
        b: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// In DOT output, draw parallel edges with the same output once.
        #[arg(long)]
        merge_edges: bool,
        /// Run the product / minimize / isomorphism pipeline for this radix.
        #[arg(long)]
        prove: bool,
        /// Feed the base b digits of this number through the machine.
        #[arg(long)]
        run: Option<BigInt>,
    },
}

#[derive(Subcommand, Debug)]
enum Op {
    /// x (+)_{-b} y
    Xorneg {
        #[arg(allow_negative_numbers = true)]
        x: BigInt,
        #[arg(allow_negative_numbers = true)]
        y: BigInt,
        #[arg(long = "b", visible_alias = "base", default_value_t = 2)]
        b: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// x (-)_b y
    Ominus {
        #[arg(allow_negative_numbers = true)]
        x: BigInt,
        #[arg(allow_negative_numbers = true)]
        y: BigInt,
        #[arg(long = "b", visible_alias = "base", default_value_t = 2)]
        b: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Replace every base b digit d by min(d, 1)
    Doublebar {
        #[arg(allow_negative_numbers = true)]
        n: BigInt,
        #[arg(long = "b", visible_alias = "base", default_value_t = 2)]
        b: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A usage or domain error; reported on stderr with exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn no_dot(format: Format) -> Result<(), Usage> {
    if format == Format::Dot {
        return Err(Usage("--format dot is only available for `machine`".into()));
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json value")
    );
}

fn convert(n: BigInt, b: u32, negabase: bool, pad: usize, format: Format) -> Result<u8, Usage> {
    no_dot(format)?;
    let radix = Radix::new(b)?;
    let digits = if negabase {
        to_negabase(&n, radix)
    } else {
        to_base(&n, radix)?
    };
    let rendered = digits.to_msb_string(pad);
    match format {
        Format::Json => print_json(&json!({
            "n": n.to_string(),
            "b": b,
            "target": if negabase { "negabase" } else { "base" },
            "digits": digits.digits(),
            "rendered": rendered,
        })),
        _ => println!("{rendered}"),
    }
    Ok(0)
}

fn op(op: Op) -> Result<u8, Usage> {
    let (name, operands, b, format, result) = match op {
        Op::Xorneg { x, y, b, format } => {
            let r = oplus_neg(&x, &y, Radix::new(b)?);
            ("xorneg", vec![x, y], b, format, r)
        }
        Op::Ominus { x, y, b, format } => {
            let r = ominus(&x, &y, Radix::new(b)?)?;
            ("ominus", vec![x, y], b, format, r)
        }
        Op::Doublebar { n, b, format } => {
            let r = double_bar(&n, Radix::new(b)?)?;
            ("doublebar", vec![n], b, format, r)
        }
    };
    no_dot(format)?;
    match format {
        Format::Json => {
            let digits = to_base(&result, Radix::new(b)?)?;
            print_json(&json!({
                "op": name,
                "b": b,
                "operands": operands.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "result": result.to_string(),
                "digits": digits.to_msb_string(0),
            }))
        }
        _ => println!("{result}"),
    }
    Ok(0)
}

fn seq(count: usize, format: Format) -> Result<u8, Usage> {
    no_dot(format)?;
    if count == 0 {
        return Err(Usage("--count must be at least 1".into()));
    }
    let terms = a178729(count);
    match format {
        Format::Json => print_json(&json!({
            "sequence": "A178729",
            "offset": 1,
            "terms": terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })),
        _ => {
            for t in terms {
                println!("{t}");
            }
        }
    }
    Ok(0)
}

fn verify(b_max: u32, n_max: u64, format: Format) -> Result<u8, Usage> {
    no_dot(format)?;
    let sweep = check_identity(b_max, n_max)?;
    let proof = machine_proof_range(b_max)?;
    let passed = sweep.passed() && proof.passed();
    match format {
        Format::Json => print_json(&json!({
            "passed": passed,
            "sweep": sweep,
            "proof": proof,
        })),
        _ => {
            print!("{sweep}{proof}");
            println!("{}", if passed { "verified" } else { "FAILED" });
        }
    }
    Ok(if passed { 0 } else { EXIT_FAILED })
}

fn machine_text(kind: MachineKind, t: &Transducer) -> String {
    let mut s = format!(
        "machine {kind}, base {}, {} states, initial {:?}\n",
        t.radix(),
        t.state_count(),
        t.label(t.initial())
    );
    for q in t.states() {
        for d in t.radix().digits() {
            let out: Vec<String> = t.output(q, d).iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(
                "  {:?} --{d}|{}--> {:?}\n",
                t.label(q),
                out.join(","),
                t.label(t.next(q, d))
            ));
        }
    }
    s
}

fn machine(
    name: &str,
    b: u32,
    format: Format,
    merge_edges: bool,
    prove: bool,
    run: Option<BigInt>,
) -> Result<u8, Usage> {
    let kind: MachineKind = name.parse()?;
    let radix = Radix::new(b)?;
    if prove {
        no_dot(format)?;
        let record = machine_proof(radix);
        match format {
            Format::Json => print_json(&serde_json::to_value(&record)?),
            _ => println!("{record}"),
        }
        return Ok(if record.passed() { 0 } else { EXIT_FAILED });
    }
    let t = kind.build(radix);
    if let Some(n) = run {
        no_dot(format)?;
        let input = to_base(&n, radix)?;
        let result = t.run(&input)?;
        let value = negaxor::numeral::from_base(&result.output);
        let signed = negaxor::numeral::from_negabase(&result.output);
        match format {
            Format::Json => print_json(&json!({
                "machine": kind.name(),
                "b": b,
                "input": input.to_msb_string(0),
                "output": result.output.to_msb_string(0),
                "value_base": value.to_string(),
                "value_negabase": signed.to_string(),
                "padded_steps": result.padded_steps,
            })),
            _ => println!("{}", render_run(&input, &result.output)),
        }
        return Ok(0);
    }
    match format {
        Format::Json => println!("{}", t.to_json()),
        Format::Dot => print!("{}", t.to_dot(merge_edges)),
        Format::Text => print!("{}", machine_text(kind, &t)),
    }
    Ok(0)
}

fn render_run(input: &DigitString, output: &DigitString) -> String {
    format!("{} -> {}", input.to_msb_string(0), output.to_msb_string(0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Convert {
            n,
            b,
            negabase,
            pad,
            format,
        } => convert(n, b, negabase, pad, format),
        Command::Op { op: o } => op(o),
        Command::Seq { count, format } => seq(count, format),
        Command::Verify {
            b_max,
            n_max,
            format,
        } => verify(b_max, n_max, format),
        Command::Machine {
            name,
            b,
            format,
            merge_edges,
            prove,
            run,
        } => machine(&name, b, format, merge_edges, prove, run),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
