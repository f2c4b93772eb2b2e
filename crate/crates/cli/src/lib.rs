//! `surfgame` command implementations.

use std::io::{BufRead, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use surfgame_core::analysis::{table_csv, table_json, table_markdown};
use surfgame_core::{
    grundy_position, grundy_surface_closed, parse_position, position_moves, winning_move, Analyzer,
    Genus, Orientability, ParseError, Position, PositionMove,
};
use surfgame_service::{MoveChoice, Mover, Session, SessionStore, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "surfgame",
    version,
    about = "Play and solve the surface decomposition game"
)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Md,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grundy value of a position and of each component
    Value { position: String },
    /// Legal moves with the value of each resulting position
    Moves { position: String },
    /// A winning move, if the player to move has one
    Best { position: String },
    /// Moves and values of n0 through n<max-genus>
    Table {
        #[arg(long, default_value_t = 14)]
        max_genus: Genus,
    },
    /// Compare brute-force values with the closed forms for both kinds
    Verify {
        #[arg(long, default_value_t = 200)]
        max_genus: Genus,
    },
    /// Play against the engine on the terminal
    Play {
        position: String,
        /// Let the engine make the first move
        #[arg(long)]
        engine_first: bool,
    },
    /// Start the HTTP service
    Serve {
        #[arg(long, env = "SURFGAME_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Append session snapshots to this JSON-lines file
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

fn position_arg(text: &str, err: &mut dyn Write) -> Option<Position> {
    match parse_position(text) {
        Ok(p) => Some(p),
        Err(e) => {
            report_parse_error(text, &e, err);
            None
        }
    }
}

fn report_parse_error(text: &str, e: &ParseError, err: &mut dyn Write) {
    let _ = writeln!(err, "error: invalid position: {e}");
    let _ = writeln!(err, "  {text}");
    let _ = writeln!(err, "  {}^", " ".repeat(e.offset));
}

fn move_line(index: usize, m: &PositionMove) -> String {
    format!(
        "{index:>3}. {}  =>  {}  (G = {})",
        m.mv,
        m.after,
        grundy_position(&m.after)
    )
}

fn verdict(value: u64) -> &'static str {
    if value == 0 {
        "second player wins"
    } else {
        "first player wins"
    }
}

fn json_line(out: &mut dyn Write, value: serde_json::Value) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Value { position } => {
            let Some(p) = position_arg(&position, err) else {
                return EXIT_USAGE;
            };
            let value = grundy_position(&p);
            if json {
                let components: Vec<_> = p
                    .components()
                    .iter()
                    .map(|&s| serde_json::json!({"surface": s, "value": grundy_surface_closed(s)}))
                    .collect();
                json_line(
                    out,
                    serde_json::json!({"position": p, "grundy": value, "component_values": components}),
                );
            } else {
                let _ = writeln!(out, "G = {value} ({})", verdict(value));
                for (s, count) in p.counts() {
                    let times = if count > 1 {
                        format!(" x{count}")
                    } else {
                        String::new()
                    };
                    let _ = writeln!(out, "  {s}{times}: {}", grundy_surface_closed(s));
                }
            }
            EXIT_OK
        }
        Command::Moves { position } => {
            let Some(p) = position_arg(&position, err) else {
                return EXIT_USAGE;
            };
            let moves = position_moves(&p);
            if json {
                let list: Vec<_> = moves
                    .iter()
                    .map(|m| serde_json::json!({"move": m, "after_value": grundy_position(&m.after)}))
                    .collect();
                json_line(out, serde_json::Value::Array(list));
            } else {
                let _ = writeln!(
                    out,
                    "{p}: G = {}, {} moves",
                    grundy_position(&p),
                    moves.len()
                );
                for (i, m) in moves.iter().enumerate() {
                    let _ = writeln!(out, "{}", move_line(i, m));
                }
            }
            EXIT_OK
        }
        Command::Best { position } => {
            let Some(p) = position_arg(&position, err) else {
                return EXIT_USAGE;
            };
            let best = winning_move(&p);
            if json {
                json_line(
                    out,
                    serde_json::json!({"grundy": grundy_position(&p), "winning_move": best}),
                );
            } else {
                match best {
                    Some(m) => {
                        let _ = writeln!(out, "{}  =>  {}", m.mv, m.after);
                    }
                    None => {
                        let _ = writeln!(out, "second player wins (G = 0)");
                    }
                }
            }
            EXIT_OK
        }
        Command::Table { max_genus } => match Analyzer::new().table1(max_genus) {
            Ok(rows) => {
                let text = match cli.format {
                    Format::Json => table_json(&rows) + "\n",
                    Format::Csv => table_csv(&rows),
                    Format::Md | Format::Text => table_markdown(&rows),
                };
                let _ = write!(out, "{text}");
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Command::Verify { max_genus } => {
            let mut analyzer = Analyzer::new();
            let mut reports = Vec::new();
            for kind in [Orientability::Orientable, Orientability::Nonorientable] {
                match analyzer.verify_series(kind, max_genus) {
                    Ok(r) => reports.push(r),
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        return EXIT_USAGE;
                    }
                }
            }
            if json {
                json_line(out, serde_json::to_value(&reports).unwrap());
            } else {
                for r in &reports {
                    let status = if r.is_consistent() { "ok" } else { "MISMATCH" };
                    let _ = writeln!(
                        out,
                        "{:<13} genus 0..={}: {} mismatches  {status}",
                        r.kind.to_string(),
                        r.max_genus,
                        r.mismatches.len()
                    );
                    if !r.mismatches.is_empty() {
                        let _ = writeln!(out, "  at genus {:?}", r.mismatches);
                    }
                }
            }
            if reports.iter().all(|r| r.is_consistent()) {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Command::Play {
            position,
            engine_first,
        } => play(&position, engine_first, input, out, err),
        Command::Serve {
            port,
            host,
            snapshot,
        } => serve(SocketAddr::new(host, port), snapshot, err),
    }
}

fn show_exchange(session: &Session, from: usize, out: &mut dyn Write) {
    for entry in &session.history[from..] {
        let who = match entry.mover {
            Mover::Human => "you",
            Mover::Engine => "engine",
        };
        let _ = writeln!(out, "{who}: {}  =>  {}", entry.mv.mv, entry.mv.after);
    }
}

/// Interactive game on `input`/`out`. Each turn lists the legal moves;
/// the human answers with a move number or the resulting position.
pub fn play(
    start: &str,
    engine_first: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut session = match Session::create("terminal".into(), start, engine_first) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    show_exchange(&session, 0, out);

    while session.status == Status::InProgress {
        let _ = writeln!(
            out,
            "\nposition: {}  (G = {})",
            session.position, session.value
        );
        for view in session.legal_moves() {
            let labels: String = view.case_labels.iter().map(|c| c.letter()).collect();
            let _ = writeln!(
                out,
                "{:>3}. {} -> {} [{labels}]  =>  {}",
                view.index, view.component, view.results_label, view.after
            );
        }
        let _ = write!(out, "your move> ");
        let _ = out.flush();

        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => {
                let _ = writeln!(out, "\ngame abandoned");
                return EXIT_OK;
            }
            Ok(_) => {}
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "q" || line == "quit" {
            let _ = writeln!(out, "game abandoned");
            return EXIT_OK;
        }
        let choice = match line.parse::<usize>() {
            Ok(index) => MoveChoice::Index { index },
            Err(_) => MoveChoice::After {
                after: line.to_string(),
            },
        };
        let before = session.history.len();
        match session.play(&choice) {
            Ok(()) => show_exchange(&session, before, out),
            Err(e) => {
                let _ = writeln!(out, "illegal move: {e}");
            }
        }
    }

    let _ = match session.status {
        Status::HumanWon => writeln!(out, "you win"),
        _ => writeln!(out, "engine wins"),
    };
    EXIT_OK
}

fn serve(addr: SocketAddr, snapshot: Option<PathBuf>, err: &mut dyn Write) -> i32 {
    let _ = tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .try_init();
    let store = match snapshot {
        Some(path) => match SessionStore::with_snapshots(&path) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(err, "error: cannot open {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => SessionStore::in_memory(),
    };
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    match runtime.block_on(surfgame_service::serve(addr, Arc::new(store))) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
