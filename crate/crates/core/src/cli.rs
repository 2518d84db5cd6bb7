//! Command-line front end. Every command writes JSON to standard output.
//!
//! Exit status: 0 for success or a true answer, 1 for a false answer or a
//! failed verification, 2 for malformed input.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::canonical_form::{canonicalize, canonicalize_traced, CanonError};
use crate::nilcone::{in_nilcone_gl, in_self_commuting, sample_nilcone, SampleError, SampleOptions};
use crate::orbit_census::{enumerate_reps, write_census, OrbitParams};
use crate::superalgebra::{invariants, odd_membership, verify_complement, AlgebraKind, OddElement};

#[derive(Debug, Parser)]
#[command(name = "supercone", version, about = "Exact computations on odd nilpotent cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cone and self-commuting membership of an element read from stdin.
    Member {
        #[arg(long)]
        kind: String,
        /// Answer (and set the exit status) for the self-commuting variety.
        #[arg(long)]
        self_commuting: bool,
    },
    /// Canonical representative of a gl element read from stdin.
    Canon {
        #[arg(long)]
        trace: bool,
    },
    /// Orbit representatives of gl(m|n) as JSON lines, then a summary line.
    Census {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ds_only: bool,
    },
    /// Exact check of the complement conditions for a kind.
    VerifyComplement {
        #[arg(long)]
        kind: String,
    },
    /// Checks that seeded self-commuting samples lie in the cone.
    VerifyInclusion {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A seeded random cone element.
    Sample {
        #[arg(long)]
        kind: String,
        /// Orbit parameters as JSON, or `random`.
        #[arg(long, default_value = "random")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        self_commuting: bool,
    },
}

/// A command outcome that is not plain success.
enum Failure {
    /// Exit 1, with the report already printed.
    False,
    /// Exit 2, with a diagnostic.
    Malformed(String),
    /// Exit 1, with a diagnostic.
    Internal(String),
}

type Outcome = Result<(), Failure>;

fn print<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let line = serde_json::to_string(value).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(out, "{line}").map_err(|e| Failure::Internal(e.to_string()))
}

fn parse_kind(s: &str) -> Result<AlgebraKind, Failure> {
    s.parse().map_err(|e| Failure::Malformed(format!("bad --kind: {e}")))
}

fn read_element(input: &mut dyn Read) -> Result<OddElement, Failure> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Failure::Malformed(format!("cannot read element: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("malformed element JSON: {e}")))
}

fn check_size(kind: &AlgebraKind, x: &OddElement) -> Outcome {
    if kind.ambient() != x.dims() {
        let (m, n) = kind.ambient();
        let (p, q) = x.dims();
        return Err(Failure::Malformed(format!("shape mismatch: {kind} needs a {m}|{n} element, got {p}|{q}")));
    }
    Ok(())
}

fn check_sizes(m: usize, n: usize) -> Outcome {
    if m == 0 || n == 0 {
        return Err(Failure::Malformed("--m and --n must be positive".into()));
    }
    Ok(())
}

fn truth(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::False)
    }
}

fn member(kind: &str, self_commuting: bool, input: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let kind = parse_kind(kind)?;
    let x = read_element(input)?;
    check_size(&kind, &x)?;
    let in_g = odd_membership(&kind, &x).map_err(|e| Failure::Malformed(e.to_string()))?;
    let in_nilcone = in_g && in_nilcone_gl(&x);
    let in_x = in_g && in_self_commuting(&x);
    print(
        out,
        &json!({
            "in_nilcone": in_nilcone,
            "in_X": in_x,
            "in_g1": in_g,
            "invariants": invariants(&x),
        }),
    )?;
    truth(if self_commuting { in_x } else { in_nilcone })
}

fn canon(trace: bool, input: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let x = read_element(input)?;
    let result = if trace { canonicalize_traced(&x) } else { canonicalize(&x) };
    match result {
        Ok(res) => print(out, &res),
        Err(CanonError::NotInCone) => Err(Failure::Malformed("input is not in the nilpotent cone".into())),
        Err(e) => Err(Failure::Internal(e.to_string())),
    }
}

fn census(m: usize, n: usize, ds_only: bool, out: &mut dyn Write) -> Outcome {
    check_sizes(m, n)?;
    write_census(out, m, n, ds_only).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(())
}

fn complement(kind: &str, out: &mut dyn Write) -> Outcome {
    let kind = parse_kind(kind)?;
    let report = verify_complement(&kind).map_err(|e| Failure::Malformed(e.to_string()))?;
    print(out, &report)?;
    truth(report.passed)
}

fn inclusion(m: usize, n: usize, samples: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    check_sizes(m, n)?;
    let kind = AlgebraKind::Gl { m, n };
    let opts = SampleOptions {
        self_commuting_only: true,
        ..Default::default()
    };
    let mut counterexamples = Vec::new();
    let mut failures = 0;
    for i in 0..samples {
        let x = sample_nilcone(&kind, seed.wrapping_add(i as u64), &opts).map_err(|e| Failure::Internal(e.to_string()))?;
        if !(in_self_commuting(&x) && in_nilcone_gl(&x)) {
            failures += 1;
            if counterexamples.len() < 10 {
                counterexamples.push(x);
            }
        }
    }
    let reps = enumerate_reps(m, n);
    let self_commuting_orbits = reps
        .iter()
        .filter(|p| in_self_commuting(&crate::orbit_census::rep_matrix(p, m, n).expect("census entry")))
        .count();
    print(
        out,
        &json!({
            "m": m,
            "n": n,
            "samples": samples,
            "seed": seed,
            "failures": failures,
            "counterexamples": counterexamples,
            "cone_orbits": reps.len(),
            "self_commuting_orbits": self_commuting_orbits,
            "passed": failures == 0,
        }),
    )?;
    truth(failures == 0)
}

fn sample(kind: &str, params: &str, seed: u64, self_commuting: bool, out: &mut dyn Write) -> Outcome {
    let kind = parse_kind(kind)?;
    let params: Option<OrbitParams> = if params == "random" {
        None
    } else {
        Some(serde_json::from_str(params).map_err(|e| Failure::Malformed(format!("malformed --params: {e}")))?)
    };
    let opts = SampleOptions {
        params,
        self_commuting_only: self_commuting,
    };
    let x = sample_nilcone(&kind, seed, &opts).map_err(|e| match e {
        SampleError::Census(_) | SampleError::ParamsRequireGl => Failure::Malformed(e.to_string()),
        SampleError::Algebra(e) => Failure::Internal(e.to_string()),
    })?;
    print(out, &x)
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Member { kind, self_commuting } => member(&kind, self_commuting, input, out),
        Command::Canon { trace } => canon(trace, input, out),
        Command::Census { m, n, ds_only } => census(m, n, ds_only, out),
        Command::VerifyComplement { kind } => complement(&kind, out),
        Command::VerifyInclusion { m, n, samples, seed } => inclusion(m, n, samples, seed, out),
        Command::Sample {
            kind,
            params,
            seed,
            self_commuting,
        } => sample(&kind, &params, seed, self_commuting, out),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::False) => 1,
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
