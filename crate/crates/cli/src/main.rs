//! `qbruhat`: evaluate quasiminors, factor matrices along double words,
//! apply twists and run the verification suites.
//!
//! Exit codes: 0 success, 1 property failure, 2 usage or parse error,
//! 3 non-generic input or exhausted retry budget.

mod demo;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qbruhat::cells::{classify, in_reduced_cell, twist_general, twist_reduced};
use qbruhat::factorize::{product_map, recover_and_verify, recover_params, sample_params, sample_torus};
use qbruhat::gauss::ldu;
use qbruhat::quasidet::{delta, positive_quasiminor, quasidet, MinorSpec};
use qbruhat::skewfield::sampler;
use qbruhat::verify::{retry_budget_from_env, run_suite, VerifyConfig};
use qbruhat::{CellLabel, DoubleWord, Error, Matrix, Quaternion, Result, Scalar};
use serde_json::{json, Value};

use input::{load, with_matrix};

#[derive(Parser)]
#[command(name = "qbruhat", version, about = "Exact quasideterminants and double Bruhat cell factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quasideterminant |A|_{pq}.
    Quasidet {
        /// Matrix JSON, inline or a file path.
        #[arg(long)]
        input: String,
        p: usize,
        q: usize,
    },
    /// Positive quasiminor, by explicit rows/cols/position or as Δ^k_{u,v}.
    Minor {
        #[arg(long)]
        input: String,
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        cols: Option<String>,
        /// Marked position "i,j".
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Gauss decomposition A = L D U.
    Ldu {
        #[arg(long)]
        input: String,
    },
    /// Double Bruhat cell G^{u,v} containing the matrix.
    Classify {
        #[arg(long)]
        input: String,
    },
    /// Twist ψ^{u,v}; the cell is classified when --u/--v are omitted.
    Twist {
        #[arg(long)]
        input: String,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
    },
    /// Factor x = h x_{i_1}(t_1) ⋯ x_{i_m}(t_m) along a double reduced word.
    Factor {
        #[arg(long)]
        input: String,
        /// Comma-separated letters; defaults to a reduced word of u
        /// (negative letters) followed by one of v.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Sample (h, t) along a word over the quaternions, build x, recover.
    Recover {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Run a property suite on random quaternion inputs.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Replay the worked examples.
    Demo {
        #[arg(long, value_enum, default_value = "all")]
        fixture: demo::Fixture,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_genericity() => 3,
        Error::Inconsistent(_) => 1,
        _ => 2,
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn strings<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn matrix_json<S: Scalar>(m: &Matrix<S>) -> Value {
    serde_json::to_value(m.to_json()).expect("matrix serializes")
}

fn canonical_word(label: &CellLabel, n: usize) -> Result<DoubleWord> {
    let neg = label.u.reduced_word();
    let pos = label.v.reduced_word();
    let mask: Vec<bool> = neg.iter().map(|_| true).chain(pos.iter().map(|_| false)).collect();
    DoubleWord::shuffle(n, &neg, &pos, &mask)
}

fn cell_of<S: Scalar>(x: &Matrix<S>, u: &Option<String>, v: &Option<String>) -> Result<CellLabel> {
    match (u, v) {
        (Some(u), Some(v)) => Ok(CellLabel { u: input::permutation(u)?, v: input::permutation(v)? }),
        (None, None) => classify(x),
        _ => Err(Error::Parse("give both --u and --v or neither".into())),
    }
}

fn minor<S: Scalar>(
    x: &Matrix<S>,
    rows: &Option<String>,
    cols: &Option<String>,
    at: &Option<String>,
    uvk: (&Option<String>, &Option<String>, Option<usize>),
) -> Result<S> {
    match (rows, cols, at, uvk) {
        (Some(r), Some(c), Some(a), (None, None, None)) => {
            let (i, j) = input::pair(a)?;
            positive_quasiminor(x, &MinorSpec::new(input::index_set(r)?, input::index_set(c)?, i, j)?)
        }
        (None, None, None, (Some(u), Some(v), Some(k))) => {
            delta(x, k, &input::permutation(u)?, &input::permutation(v)?)
        }
        _ => Err(Error::Parse("minor needs either --rows, --cols, --at or --u, --v, --k".into())),
    }
}

fn twist_any<S: Scalar>(x: &Matrix<S>, label: &CellLabel) -> Result<Matrix<S>> {
    if in_reduced_cell(x, &label.u, &label.v)? {
        twist_reduced(x, &label.u, &label.v)
    } else {
        twist_general(x, &label.u, &label.v)
    }
}

fn factor<S: Scalar>(x: &Matrix<S>, word: &Option<String>) -> Result<Value> {
    let n = x.rows();
    let word = match word {
        Some(w) => DoubleWord::parse(n, w)?,
        None => canonical_word(&classify(x)?, n)?,
    };
    let out = recover_and_verify(x, &word)?;
    Ok(json!({ "word": word.to_string(), "h": strings(&out.h), "t": strings(&out.t) }))
}

/// Outcome of `recover`: the report and whether recovery was exact.
fn recover(word: &str, n: Option<usize>, seed: u64, bound: i64) -> Result<(Value, bool)> {
    let n = match n {
        Some(n) => n,
        None => {
            let letters = word
                .split(',')
                .map(|t| t.trim().parse::<i32>().map_err(|_| Error::Parse(format!("word letter {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            letters.iter().map(|a| a.unsigned_abs() as usize).max().unwrap_or(0) + 1
        }
    };
    let word = DoubleWord::parse(n, word)?;
    let target = CellLabel { u: word.u(), v: word.v() };
    let mut rng = sampler(seed);
    let budget = retry_budget_from_env()?;
    for _ in 0..=budget {
        let h: Vec<Quaternion> = sample_torus(&mut rng, n, bound);
        let t: Vec<Quaternion> = sample_params(&mut rng, word.len(), bound);
        let x = product_map(&word, &t, Some(&h))?;
        if classify(&x)? != target {
            continue;
        }
        let report = |rh: Value, rt: Value| {
            json!({ "word": word.to_string(), "seed": seed, "matrix": matrix_json(&x),
                    "h": strings(&h), "t": strings(&t), "recovered_h": rh, "recovered_t": rt })
        };
        return match recover_params(&x, &word) {
            Ok(out) => {
                let exact = out.h == h && out.t == t;
                Ok((report(json!(strings(&out.h)), json!(strings(&out.t))), exact))
            }
            Err(e @ Error::Inconsistent(_)) => Ok((report(json!(e.to_string()), Value::Null), false)),
            Err(e) => Err(e),
        };
    }
    Err(Error::not_generic(format!("no generic point along {word} within {budget} retries")))
}

fn verify(suite: &str, n: usize, trials: usize, seed: u64, bound: i64) -> Result<u8> {
    let mut cfg = VerifyConfig::new(suite, n, trials, seed);
    cfg.bound = bound;
    cfg.retry_budget = retry_budget_from_env()?;
    let report = run_suite(&cfg)?;
    print!("{report}");
    if let Some(c) = report.counterexamples.first() {
        println!("{}", serde_json::to_string_pretty(c).expect("counterexample serializes"));
        return Ok(1);
    }
    Ok(if report.exhausted > 0 { 3 } else { 0 })
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Quasidet { input, p, q } => {
            with_matrix!(load(&input)?, x => println!("{}", quasidet(&x, p, q)?));
        }
        Command::Minor { input, rows, cols, at, u, v, k } => {
            with_matrix!(load(&input)?, x => println!("{}", minor(&x, &rows, &cols, &at, (&u, &v, k))?));
        }
        Command::Ldu { input } => {
            with_matrix!(load(&input)?, x => {
                let t = ldu(&x)?;
                println!("{}", pretty(&json!({
                    "lower": matrix_json(&t.lower),
                    "diag": matrix_json(&t.diag),
                    "upper": matrix_json(&t.upper),
                })));
            });
        }
        Command::Classify { input } => {
            with_matrix!(load(&input)?, x => {
                let label = classify(&x)?;
                println!("u = {}\nv = {}\n{label}", label.u, label.v);
            });
        }
        Command::Twist { input, u, v } => {
            with_matrix!(load(&input)?, x => {
                let label = cell_of(&x, &u, &v)?;
                println!("{}", pretty(&matrix_json(&twist_any(&x, &label)?)));
            });
        }
        Command::Factor { input, word } => {
            with_matrix!(load(&input)?, x => println!("{}", pretty(&factor(&x, &word)?)));
        }
        Command::Recover { word, n, seed, bound } => {
            let (report, exact) = recover(&word, n, seed, bound)?;
            println!("{}", pretty(&report));
            if !exact {
                return Ok(1);
            }
        }
        Command::Verify { suite, n, trials, seed, bound } => return verify(&suite, n, trials, seed, bound),
        Command::Demo { fixture } => {
            let (text, ok) = demo::run(fixture)?;
            print!("{text}");
            if !ok {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
