//! The `kbc` command line.
//!
//! Exit codes: 0 for success, entailment or a true subsumption; 1 for a
//! refuted instance or a false subsumption; 2 for an unknown instance; 3 for
//! any usage, load or validation error.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::completion::{run_oracle, Answer, CompletionSession, OracleExpert};
use crate::dl::{parse_concept, Concept, KnowledgeBase};
use crate::fca::{closed_sets, stem_base, AttributeOrder, FormalContext};
use crate::io::{read_cxt, read_ontology};
use crate::lattice::{gcs, lcs_ale, ConjunctionHierarchy};
use crate::partial::render_set;
use crate::reasoner::{Reasoner, Verdict, DEFAULT_NODE_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kbc", version, about = "Knowledge-base completion with formal concept analysis")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Tableau node budget per reasoning task.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complete a knowledge base over a set of concept names.
    Complete {
        kb: PathBuf,
        /// Comma-separated concept names (default: the oracle's attributes).
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
        /// Comma-separated attribute order, most significant first.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Full context (.cxt) describing the intended interpretation.
        #[arg(long, conflicts_with = "interactive")]
        oracle: Option<PathBuf>,
        /// Ask the questions on the terminal.
        #[arg(long)]
        interactive: bool,
        /// Where to write the completed knowledge base (default: stdout).
        #[arg(long)]
        out_kb: Option<PathBuf>,
        /// Where to write the final partial context (default: stdout).
        #[arg(long)]
        out_context: Option<PathBuf>,
        /// Interactive mode: where `q` saves the session snapshot.
        #[arg(long)]
        snapshot: Option<PathBuf>,
        /// Continue from a snapshot instead of starting afresh.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Print the stem base of a context.
    Stembase { context: PathBuf },
    /// Print the closed sets of a context in lectic order.
    Closedsets { context: PathBuf },
    /// Decide whether C is subsumed by D.
    Subsumes {
        kb: PathBuf,
        c: String,
        d: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Decide whether an individual is an instance of C.
    Instance {
        kb: PathBuf,
        individual: String,
        c: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Good common subsumer of two ALE concepts w.r.t. the TBox.
    Gcs {
        kb: PathBuf,
        c: String,
        d: String,
        /// Names of the conjunction hierarchy (default: the defined names).
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
        /// Also print the least common subsumer ignoring the TBox.
        #[arg(long)]
        show_lcs: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Implications between conjunctions of literals over names.
    Hierarchy {
        kb: PathBuf,
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
        /// Print the Hasse diagram in DOT instead.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run the HTTP service.
    #[cfg(feature = "service")]
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory for persisted sessions.
        #[arg(long)]
        data_dir: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_kb(path: &Path) -> Result<KnowledgeBase, Failure> {
    read_ontology(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_cxt(path: &Path) -> Result<FormalContext, Failure> {
    read_cxt(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn concept(s: &str) -> Result<Concept, Failure> {
    parse_concept(s).map_err(|e| Failure(format!("{s:?}: {e}")))
}

fn reasoner(kb: &KnowledgeBase, budget: &Budget) -> Result<Reasoner, Failure> {
    Ok(Reasoner::new(kb.tbox.clone())?.with_budget(budget.node_budget))
}

fn defined_names(kb: &KnowledgeBase) -> Vec<String> {
    kb.tbox.definitions().iter().map(|(n, _)| n.clone()).collect()
}

/// Run `kbc` with `args` (including the program name).
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(cli.command, input, out, err) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn execute(command: Command, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Complete {
            kb,
            names,
            order,
            oracle,
            interactive,
            out_kb,
            out_context,
            snapshot,
            resume,
            budget,
        } => {
            let oracle = oracle.as_deref().map(load_cxt).transpose()?;
            let mut session = if let Some(path) = resume {
                CompletionSession::resume(&read(&path)?, budget.node_budget)?
            } else {
                let names = names
                    .or_else(|| oracle.as_ref().map(|o| o.attributes().to_vec()))
                    .ok_or_else(|| Failure("--names is required without --oracle".into()))?;
                CompletionSession::start(load_kb(&kb)?, names, order, budget.node_budget)?
            };
            if let Some(ctx) = oracle {
                for line in run_oracle(&mut session, &OracleExpert::from_context(ctx))? {
                    writeln!(out, "{line}")?;
                }
            } else if interactive {
                if !ask(&mut session, input, err, snapshot.as_deref())? {
                    return Ok(EXIT_OK);
                }
            } else {
                return Err(Failure("choose --oracle FILE or --interactive".into()));
            }
            let export = session.export();
            match out_kb {
                Some(p) => fs::write(&p, &export.ontology)?,
                None => write!(out, "\n{}", export.ontology)?,
            }
            match out_context {
                Some(p) => fs::write(&p, &export.context)?,
                None => write!(out, "\n{}", export.context)?,
            }
            Ok(EXIT_OK)
        }
        Command::Stembase { context } => {
            let ctx = load_cxt(&context)?;
            for imp in stem_base(&ctx) {
                writeln!(
                    out,
                    "{} -> {}",
                    render_set(&imp.premise, ctx.attributes()),
                    render_set(&imp.conclusion, ctx.attributes())
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Closedsets { context } => {
            let ctx = load_cxt(&context)?;
            let order = AttributeOrder::identity(ctx.universe());
            for set in closed_sets(&ctx, &order)? {
                writeln!(out, "{}", render_set(&set, ctx.attributes()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Subsumes { kb, c, d, budget } => {
            let kb = load_kb(&kb)?;
            let holds = reasoner(&kb, &budget)?.subsumes(&concept(&c)?, &concept(&d)?)?;
            writeln!(out, "{holds}")?;
            Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Instance {
            kb,
            individual,
            c,
            budget,
        } => {
            let kb = load_kb(&kb)?;
            if !kb.abox.has_individual(&individual) {
                return Err(Failure(format!("unknown individual {individual}")));
            }
            let v = reasoner(&kb, &budget)?.instance_check(&kb.abox, &individual, &concept(&c)?)?;
            let (word, code) = match v.verdict {
                Verdict::Entailed => ("entailed", EXIT_OK),
                Verdict::Refuted => ("refuted", EXIT_NEGATIVE),
                Verdict::Unknown => ("unknown", EXIT_UNKNOWN),
            };
            writeln!(out, "{word}")?;
            Ok(code)
        }
        Command::Gcs {
            kb,
            c,
            d,
            names,
            show_lcs,
            budget,
        } => {
            let kb = load_kb(&kb)?;
            let (c, d) = (concept(&c)?, concept(&d)?);
            let names = names.unwrap_or_else(|| defined_names(&kb));
            let r = reasoner(&kb, &budget)?;
            let h = ConjunctionHierarchy::build(&r, &names)?;
            writeln!(out, "gcs: {}", gcs(&r, &h, &c, &d)?)?;
            if show_lcs {
                writeln!(out, "lcs: {}", lcs_ale(&c, &d)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::Hierarchy {
            kb,
            names,
            dot,
            budget,
        } => {
            let kb = load_kb(&kb)?;
            let names = names.unwrap_or_else(|| defined_names(&kb));
            let h = ConjunctionHierarchy::build(&reasoner(&kb, &budget)?, &names)?;
            if dot {
                write!(out, "{}", h.to_dot()?)?;
            } else {
                write!(out, "{}", h.to_gci_text())?;
            }
            Ok(EXIT_OK)
        }
        #[cfg(feature = "service")]
        Command::Serve {
            port,
            host,
            data_dir,
            budget,
        } => {
            let config = crate::service::ServiceConfig {
                data_dir,
                node_budget: budget.node_budget,
            };
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(err, "serving on http://{host}:{port}")?;
            runtime.block_on(crate::service::serve((host, port).into(), config))?;
            Ok(EXIT_OK)
        }
    }
}

const HELP: &str = "answers: y = yes, n = no (then give a counterexample), p = postpone, u = undo last answer, q = quit";

/// Terminal dialogue. Returns false if the user quit before completion.
fn ask(session: &mut CompletionSession, input: &mut dyn BufRead, term: &mut dyn Write, snapshot: Option<&Path>) -> Result<bool, Failure> {
    let mut line = String::new();
    let mut prompt = |term: &mut dyn Write, text: &str, line: &mut String| -> Result<bool, Failure> {
        write!(term, "{text}")?;
        term.flush()?;
        line.clear();
        Ok(input.read_line(line)? > 0)
    };
    writeln!(term, "{HELP}")?;
    while let Some(q) = session.current_question()? {
        writeln!(term, "\nQ{}: {}\n     {}", q.id, q.implication_text(), q.gci_text())?;
        if !prompt(term, "[y/n/p/u/q] ", &mut line)? {
            return quit(session, term, snapshot);
        }
        let result = match line.trim() {
            "y" | "yes" => session.answer_yes(q.id),
            "n" | "no" => {
                if !prompt(term, "counterexample individual: ", &mut line)? {
                    return quit(session, term, snapshot);
                }
                let individual = line.trim().to_owned();
                let header = session.names().join(" ");
                if !prompt(term, &format!("row over {header} as +/-/?: "), &mut line)? {
                    return quit(session, term, snapshot);
                }
                match parse_row(session.names(), line.trim()) {
                    Ok((positives, negatives)) => session.answer(
                        q.id,
                        Answer::No {
                            individual,
                            positives,
                            negatives,
                        },
                    ),
                    Err(message) => {
                        writeln!(term, "{message}")?;
                        continue;
                    }
                }
            }
            "p" | "postpone" => session.postpone(),
            "u" | "undo" => match session.log().len() {
                0 => {
                    writeln!(term, "nothing to undo")?;
                    continue;
                }
                n => session.undo(n - 1).map(|report| {
                    for d in report.dropped {
                        let _ = writeln!(term, "dropped {:?}: {}", d.event, d.reason);
                    }
                }),
            },
            "q" | "quit" => return quit(session, term, snapshot),
            _ => {
                writeln!(term, "{HELP}")?;
                continue;
            }
        };
        if let Err(e) = result {
            writeln!(term, "rejected: {e}")?;
        }
    }
    writeln!(term, "completion finished")?;
    Ok(true)
}

fn quit(session: &mut CompletionSession, term: &mut dyn Write, snapshot: Option<&Path>) -> Result<bool, Failure> {
    let text = session.pause()?;
    match snapshot {
        Some(path) => {
            fs::write(path, text)?;
            writeln!(term, "session saved to {}", path.display())?;
        }
        None => writeln!(term, "session discarded (use --snapshot to keep it)")?,
    }
    Ok(false)
}

fn parse_row(names: &[String], row: &str) -> Result<(Vec<String>, Vec<String>), String> {
    let cells: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
    if cells.len() != names.len() {
        return Err(format!("expected {} cells, got {}", names.len(), cells.len()));
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (name, c) in names.iter().zip(cells) {
        match c {
            '+' => pos.push(name.clone()),
            '-' => neg.push(name.clone()),
            '?' => {}
            other => return Err(format!("illegal cell {other:?}; use + - ?")),
        }
    }
    Ok((pos, neg))
}
