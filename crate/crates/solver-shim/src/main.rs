//! Minimal external SAT solver honoring the campaign runner's contract:
//! DIMACS CNF path as the first argument, exit 10 with a `v`-line model on
//! SAT, exit 20 on UNSAT, anything else is an error. Backed by CaDiCaL.
//!
//! A second positional argument (a DRAT proof path, passed by campaigns with
//! a proof directory configured) is accepted and ignored; this shim does not
//! emit proofs. Point a campaign at kissat or cadical binaries when proof
//! logging matters.
//!
//! The `KGON_SHIM_CONFIG` environment variable selects a CaDiCaL
//! configuration preset (`plain`, `sat`, `unsat`); default is CaDiCaL's
//! standard configuration.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut args = std::env::args().skip(1);
    let path = match args.next() {
        Some(p) => p,
        None => {
            eprintln!("usage: kgon-solver-shim CNF_FILE [IGNORED_PROOF_PATH]");
            return ExitCode::from(1);
        }
    };
    if args.next().is_some() {
        eprintln!("note: proof emission is not supported by this shim; extra argument ignored");
    }

    let mut solver: cadical::Solver = match std::env::var("KGON_SHIM_CONFIG") {
        Ok(cfg) => match cadical::Solver::with_config(&cfg) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: bad KGON_SHIM_CONFIG {cfg:?}: {e}");
                return ExitCode::from(1);
            }
        },
        Err(_) => Default::default(),
    };

    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot open {path}: {e}");
            return ExitCode::from(1);
        }
    };

    let mut num_vars: i32 = 0;
    let mut clause: Vec<i32> = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: read failed: {e}");
                return ExitCode::from(1);
            }
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf ") {
            num_vars = rest
                .split_whitespace()
                .next()
                .and_then(|t| t.parse().ok())
                .unwrap_or(0);
            continue;
        }
        for token in line.split_whitespace() {
            let lit: i32 = match token.parse() {
                Ok(l) => l,
                Err(_) => {
                    eprintln!("error: bad literal {token:?}");
                    return ExitCode::from(1);
                }
            };
            if lit == 0 {
                solver.add_clause(clause.drain(..));
            } else {
                clause.push(lit);
            }
        }
    }
    if !clause.is_empty() {
        solver.add_clause(clause.drain(..));
    }

    match solver.solve() {
        Some(true) => {
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let _ = writeln!(out, "s SATISFIABLE");
            let _ = write!(out, "v");
            for var in 1..=num_vars {
                let value = solver.value(var).unwrap_or(false);
                let _ = write!(out, " {}", if value { var } else { -var });
            }
            let _ = writeln!(out, " 0");
            let _ = out.flush();
            ExitCode::from(10)
        }
        Some(false) => {
            println!("s UNSATISFIABLE");
            ExitCode::from(20)
        }
        None => {
            eprintln!("error: solver returned unknown");
            ExitCode::from(1)
        }
    }
}
