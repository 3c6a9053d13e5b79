use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use monodromy::auroux::{self, PrimitivePair};
use monodromy::factorization::check_extremal;
use monodromy::fuzz::{fuzz, DEFAULT_MOVE_CAP};
use monodromy::markov::{self, MarkovTriple, MarkovType};
use monodromy::{canonical_registry, classify, verify_certificate, Factorization, HomologyClass, Int};

#[derive(Parser)]
#[command(
    name = "monodromy",
    version,
    about = "Monodromy factorizations of genus-1 fibrations over the disc"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "MONODROMY_FORMAT", default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the extremal identity for all 14 registry rows.
    VerifyTable,
    /// Classify a factorization given as a JSON file, `-` for stdin, or inline JSON.
    Classify { input: String },
    /// Markov-type equations and their mutations.
    #[command(subcommand)]
    Markov(MarkovCommand),
    /// Invariants and equivalence of pairs of cycles.
    #[command(subcommand)]
    Auroux(Box<AurouxCommand>),
    /// Scramble a registry row at random, classify and replay.
    Fuzz {
        /// Registry row, 1..=14.
        #[arg(long = "type")]
        row: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of Hurwitz moves per scramble.
        #[arg(long, default_value_t = DEFAULT_MOVE_CAP)]
        moves: usize,
    },
    /// The canonical table.
    #[command(subcommand)]
    Registry(RegistryCommand),
}

#[derive(Subcommand)]
enum MarkovCommand {
    /// All solutions with entries at most `bound`.
    Solve {
        #[arg(long, value_parser = parse_powers)]
        powers: [u32; 3],
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Greedy descent to a minimum, then to the canonical minimum.
    Reduce {
        #[arg(long, value_parser = parse_powers)]
        powers: [u32; 3],
        #[arg(num_args = 3, allow_hyphen_values = true)]
        triple: Vec<Int>,
    },
    /// States reachable by at most `depth` mutations.
    Orbit {
        #[arg(long, value_parser = parse_powers)]
        powers: [u32; 3],
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(num_args = 3, allow_hyphen_values = true)]
        triple: Vec<Int>,
    },
}

#[derive(Subcommand)]
enum AurouxCommand {
    /// Invariant of the pair `(C1, C2)`, each given as `p,q`.
    Invariant {
        #[arg(value_parser = parse_class, allow_hyphen_values = true)]
        c1: HomologyClass,
        #[arg(value_parser = parse_class, allow_hyphen_values = true)]
        c2: HomologyClass,
    },
    /// Decide whether `(C1, C2)` and `(D1, D2)` are equivalent.
    Equiv {
        #[arg(value_parser = parse_class, allow_hyphen_values = true)]
        c1: HomologyClass,
        #[arg(value_parser = parse_class, allow_hyphen_values = true)]
        c2: HomologyClass,
        #[arg(value_parser = parse_class, allow_hyphen_values = true)]
        d1: HomologyClass,
        #[arg(value_parser = parse_class, allow_hyphen_values = true)]
        d2: HomologyClass,
    },
    /// Number of classes with pairing `n`, or a table for 1..=N.
    Count {
        #[arg(required_unless_present = "table", value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        #[arg(long, conflicts_with = "n", value_parser = clap::value_parser!(u64).range(1..))]
        table: Option<u64>,
    },
}

#[derive(Subcommand)]
enum RegistryCommand {
    /// Print the 14 canonical rows.
    Dump,
}

fn parse_powers(s: &str) -> Result<[u32; 3], String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| "expected three powers l,m,n".to_string())
}

fn parse_class(s: &str) -> Result<HomologyClass, String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p: Int = p.trim().parse().map_err(|e| format!("{p:?}: {e}"))?;
    let q: Int = q.trim().parse().map_err(|e| format!("{q:?}: {e}"))?;
    Ok(HomologyClass::new(p, q))
}

/// Exit 1: a check failed. Exit 2: the input could not be used.
enum Failure {
    Check(String),
    Input(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

struct Out {
    format: Format,
}

impl Out {
    fn render<T: Serialize>(&self, value: &T, text: impl FnOnce(&T) -> String) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(value).expect("output serializes") + "\n",
            Format::Text => text(value),
        }
    }
}

#[derive(Serialize)]
struct RowCheck {
    row: usize,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn verify_table(out: &Out) -> Outcome {
    let checks: Vec<RowCheck> = canonical_registry()
        .iter()
        .map(|r| match check_extremal(&r.factorization()) {
            Ok(ok) => RowCheck {
                row: r.row,
                ok,
                error: None,
            },
            Err(e) => RowCheck {
                row: r.row,
                ok: false,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let text = out.render(&checks, |cs| {
        cs.iter().fold(String::new(), |mut s, c| {
            let status = if c.ok { "OK" } else { "FAIL" };
            let _ = writeln!(s, "row {}: {status}", c.row);
            s
        })
    });
    if checks.iter().all(|c| c.ok) {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
        Ok(s)
    } else if input.trim_start().starts_with('{') {
        Ok(input.to_string())
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))
    }
}

fn run_classify(out: &Out, input: &str) -> Outcome {
    let f: Factorization = serde_json::from_str(&read_input(input)?).map_err(Failure::input)?;
    let cert = classify(&f).map_err(|e| Failure::Check(e.to_string()))?;
    if !verify_certificate(&f, &cert) {
        return Err(Failure::Check("[replay] certificate does not replay to its row".into()));
    }
    Ok(out.render(&cert, |c| {
        format!(
            "row {}\nword {:?}\nconjugator {}\ndigest {}\n",
            c.row, c.word, c.conjugator, c.digest
        )
    }))
}

fn markov_input(powers: [u32; 3], triple: &[Int]) -> Result<(MarkovTriple, MarkovType), Failure> {
    let ty = MarkovType::new(powers).map_err(Failure::input)?;
    let t = MarkovTriple([triple[0].clone(), triple[1].clone(), triple[2].clone()]);
    if !markov::is_solution(&t, &ty) {
        return Err(Failure::Input(format!(
            "{t} does not solve the equation for {powers:?}"
        )));
    }
    Ok((t, ty))
}

fn run_markov(out: &Out, cmd: &MarkovCommand) -> Outcome {
    match cmd {
        MarkovCommand::Solve { powers, bound } => {
            let ty = MarkovType::new(*powers).map_err(Failure::input)?;
            let sols = markov::enumerate_solutions(&ty, *bound);
            Ok(out.render(&sols, |s| s.iter().map(|t| format!("{t}\n")).collect()))
        }
        MarkovCommand::Reduce { powers, triple } => {
            let (t, ty) = markov_input(*powers, triple)?;
            let r = markov::reduce_and_normalize(&t, &ty).map_err(|e| Failure::Check(e.to_string()))?;
            Ok(out.render(&r, |r| {
                format!("{} powers {:?} word {:?}\n", r.triple, r.powers.powers(), r.word)
            }))
        }
        MarkovCommand::Orbit { powers, depth, triple } => {
            let (t, ty) = markov_input(*powers, triple)?;
            let states = markov::orbit(&t, &ty, *depth).map_err(|e| Failure::Check(e.to_string()))?;
            Ok(out.render(&states, |ss| {
                ss.iter()
                    .map(|s| format!("{} powers {:?} word {:?}\n", s.triple, s.powers.powers(), s.word))
                    .collect()
            }))
        }
    }
}

#[derive(Serialize)]
struct CountRow {
    n: u64,
    count: u64,
}

fn run_auroux(out: &Out, cmd: &AurouxCommand) -> Outcome {
    let pair = |a: &HomologyClass, b: &HomologyClass| PrimitivePair::new(a.clone(), b.clone()).map_err(Failure::input);
    match cmd {
        AurouxCommand::Invariant { c1, c2 } => {
            let inv = auroux::auroux_invariant(&pair(c1, c2)?);
            Ok(out.render(&inv, |i| format!("n = {}, k = {}\n", i.n, i.k)))
        }
        AurouxCommand::Equiv { c1, c2, d1, d2 } => {
            let e = auroux::equivalent(&pair(c1, c2)?, &pair(d1, d2)?);
            Ok(out.render(&e, |e| match &e.witness {
                Some(w) => format!("equivalent\nbraid move {}\nconjugator {}\n", w.braid, w.conjugator),
                None => "not equivalent\n".into(),
            }))
        }
        AurouxCommand::Count { n: Some(n), .. } => {
            let row = CountRow {
                n: *n,
                count: auroux::count_classes(*n),
            };
            Ok(out.render(&row, |r| format!("{}\n", r.count)))
        }
        AurouxCommand::Count { table, .. } => {
            let rows: Vec<CountRow> = (1..=table.unwrap_or(1))
                .map(|n| CountRow {
                    n,
                    count: auroux::count_classes(n),
                })
                .collect();
            Ok(out.render(&rows, |rs| {
                rs.iter().map(|r| format!("{} {}\n", r.n, r.count)).collect()
            }))
        }
    }
}

fn run_fuzz(out: &Out, row: usize, trials: u64, seed: u64, moves: usize) -> Outcome {
    let report = fuzz(row, seed, trials, moves).map_err(Failure::input)?;
    let text = out.render(&report, |r| {
        let mut s = format!(
            "row {}: {} trials, seed {}, move cap {}, {} failures\n",
            r.row,
            r.trials,
            r.seed,
            r.move_cap,
            r.failures.len()
        );
        for f in &r.failures {
            let _ = writeln!(s, "trial {} (seed {}): {}", f.trial, r.seed, f.error);
        }
        s
    });
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn registry_dump(out: &Out) -> Outcome {
    let rows = canonical_registry();
    Ok(out.render(&rows, |rs| {
        rs.iter()
            .map(|r| format!("{:2} {:?} {:?} boundary {}\n", r.row, r.powers, r.cycles, r.boundary))
            .collect()
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { format: cli.format };
    let result = match &cli.command {
        Command::VerifyTable => verify_table(&out),
        Command::Classify { input } => run_classify(&out, input),
        Command::Markov(cmd) => run_markov(&out, cmd),
        Command::Auroux(cmd) => run_auroux(&out, cmd),
        Command::Fuzz {
            row,
            trials,
            seed,
            moves,
        } => run_fuzz(&out, *row, *trials, *seed, *moves),
        Command::Registry(RegistryCommand::Dump) => registry_dump(&out),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            print!("{msg}");
            if !msg.ends_with('\n') {
                println!();
            }
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
