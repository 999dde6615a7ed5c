mod expr;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use clap::{Parser, Subcommand};
use rsakit::algebra::{
    complement_drsa, eliminate_emptiness_guards, embed_nra_to_rsa, intersect_rsa, union_rsa,
};
use rsakit::automata::{nra_membership, rsa_membership, ura_membership, DataWord, Nra, Rsa};
use rsakit::decide::{check_inclusion_with, is_empty_with, DecideOptions, IncExpr};
use rsakit::determinise::{determinise_pipeline_with, determinise_with, DeterminiseOptions, Minterms, Outcome};
use rsakit::format::{
    parse_automaton, parse_marking, parse_tpn, parse_word, print_marking, print_rsa, print_nra, print_tpn,
    print_word, Automaton, DataTable,
};
use rsakit::reduction::{rsa_to_tpn, tpn_to_rsa, DEFAULT_MAX_REGISTERS};
use rsakit::regex::{compile_regex, parse_regex, Encoding, Grep, MatchPath};
use rsakit::tpn::{fire, find_cover_witness, is_coverable_with, CoverOptions};
use rsakit::{Error, Result};

static CANCEL: AtomicBool = AtomicBool::new(false);

#[derive(Parser)]
#[command(name = "rsakit", version, about = "Register automata and register set automata over data words")]
struct Cli {
    /// Exit with status 1 on a negative verdict.
    #[arg(long, global = true)]
    fail_on_no: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and check an automaton file.
    Validate { file: PathBuf },
    /// Membership of a data word (existential runs).
    Member {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Membership under universal acceptance (NRA only).
    UraMember {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Determinise an NRA into a deterministic register set automaton.
    Determinise {
        file: PathBuf,
        /// Enumerate every guard subset instead of the tested registers only.
        #[arg(long)]
        full_minterms: bool,
        /// Skip the register-local and single-valued preprocessing.
        #[arg(long)]
        raw: bool,
    },
    /// Complement a deterministic RsA (an NRA is determinised first).
    Complement { file: PathBuf },
    Union { a: PathBuf, b: PathBuf },
    Product { a: PathBuf, b: PathBuf },
    /// Language emptiness through the Petri net reduction.
    Empty {
        file: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Inclusion in a Boolean combination of NRA files, e.g. `!a.nra & b.nra`.
    Include {
        file: PathBuf,
        expr: String,
        #[arg(long)]
        witness: bool,
    },
    /// Fire one transition and print the new marking.
    TpnFire {
        file: PathBuf,
        #[arg(long)]
        transition: String,
        /// Defaults to the initial marking.
        #[arg(long)]
        marking: Option<String>,
    },
    TpnCover {
        file: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Print the transfer Petri net of an RsA; the target marking goes to stderr.
    ToTpn {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_REGISTERS)]
        max_registers: usize,
    },
    /// Print the RsA that is nonempty iff the target is coverable.
    FromTpn {
        file: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Print the NRA of a pattern, or its DRsA with --determinise.
    RegexCompile {
        pattern: String,
        /// Unanchored: allow any text around the match.
        #[arg(long)]
        search: bool,
        #[arg(long)]
        determinise: bool,
    },
    /// Search for a pattern in a text; step count and path go to stderr.
    RegexMatch {
        pattern: String,
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        file: Option<PathBuf>,
    },
}

enum Out {
    Verdict { line: String, positive: bool },
    Text(String),
}

fn verdict(positive: bool, yes: &str, no: &str) -> Out {
    Out::Verdict { line: if positive { yes } else { no }.to_string(), positive }
}

struct Caps {
    macrostates: usize,
    basis: usize,
    forward_depth: usize,
}

impl Caps {
    fn from_env() -> Result<Caps> {
        let d = DecideOptions::default();
        let mut caps = Caps { macrostates: d.macrostate_cap, basis: d.basis_cap, forward_depth: d.witness_depth };
        let Ok(spec) = std::env::var("RSAKIT_CAPS") else { return Ok(caps) };
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() > 3 {
            return Err(Error::input("RSAKIT_CAPS takes at most three fields: macrostates,basis,forwarddepth"));
        }
        let slots = [&mut caps.macrostates, &mut caps.basis, &mut caps.forward_depth];
        for (part, slot) in parts.iter().zip(slots) {
            let part = part.trim();
            if !part.is_empty() {
                *slot = part.parse().map_err(|_| Error::input(format!("RSAKIT_CAPS: bad number `{part}`")))?;
            }
        }
        Ok(caps)
    }

    fn decide(&self) -> DecideOptions<'static> {
        DecideOptions {
            basis_cap: self.basis,
            witness_depth: self.forward_depth,
            macrostate_cap: self.macrostates,
            cancel: Some(&CANCEL),
            ..Default::default()
        }
    }

    fn determinise(&self) -> DeterminiseOptions<'static> {
        DeterminiseOptions { macrostate_cap: self.macrostates, cancel: Some(&CANCEL), ..Default::default() }
    }

    fn cover(&self) -> CoverOptions<'static> {
        CoverOptions { basis_cap: self.basis, cancel: Some(&CANCEL), ..Default::default() }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Automaton> {
    parse_automaton(&read(path)?).map_err(|e| match e {
        Error::Syntax { line, col, msg } => Error::input(format!("{}:{line}:{col}: {msg}", path.display())),
        e => e,
    })
}

fn load_nra(path: &Path) -> Result<Nra> {
    match load(path)? {
        Automaton::Nra(a) => Ok(a),
        other => Err(Error::input(format!("{}: expected an nra, found {}", path.display(), other.kind()))),
    }
}

fn as_rsa(a: Automaton) -> Rsa {
    match a {
        Automaton::Nra(a) => embed_nra_to_rsa(&a),
        Automaton::Rsa(a) => a,
        Automaton::ERsa(a) => eliminate_emptiness_guards(&a),
    }
}

fn bot_out(b: &rsakit::determinise::Bot) -> Out {
    eprintln!("{}", b.detail);
    Out::Verdict { line: format!("BOT {}", b.reason), positive: false }
}

fn witness_line(head: &str, alphabet: &[String], w: Option<&DataWord>, show: bool) -> String {
    match w {
        Some(w) if show => format!("{head} {}", print_word(alphabet, w, &DataTable::new())).trim_end().to_string(),
        _ => head.to_string(),
    }
}

fn run(cmd: Cmd, caps: &Caps) -> Result<Out> {
    Ok(match cmd {
        Cmd::Validate { file } => {
            let a = load(&file)?;
            eprintln!("{}: valid {}", file.display(), a.kind());
            Out::Text(String::new())
        }
        Cmd::Member { file, word } => {
            let a = load(&file)?;
            let mut table = DataTable::new();
            let ok = match &a {
                Automaton::Nra(a) => nra_membership(a, &parse_word(&a.alphabet, &word, &mut table)?),
                Automaton::Rsa(a) => rsa_membership(a, &parse_word(&a.alphabet, &word, &mut table)?),
                Automaton::ERsa(a) => a.accepts(&parse_word(&a.rsa.alphabet, &word, &mut table)?),
            };
            verdict(ok, "ACCEPT", "REJECT")
        }
        Cmd::UraMember { file, word } => {
            let a = load_nra(&file)?;
            let w = parse_word(&a.alphabet, &word, &mut DataTable::new())?;
            verdict(ura_membership(&a, &w), "ACCEPT", "REJECT")
        }
        Cmd::Determinise { file, full_minterms, raw } => {
            let a = load_nra(&file)?;
            let mut opts = caps.determinise();
            if full_minterms {
                opts.minterms = Minterms::Full;
            }
            let o = if raw { determinise_with(&a, &opts)? } else { determinise_pipeline_with(&a, &opts)? };
            match o {
                Outcome::Drsa(d) => Out::Text(print_rsa(&d.rsa)),
                Outcome::Bot(b) => bot_out(&b),
            }
        }
        Cmd::Complement { file } => match load(&file)? {
            Automaton::Nra(a) => match determinise_pipeline_with(&a, &caps.determinise())? {
                Outcome::Drsa(d) => Out::Text(print_rsa(&complement_drsa(&d.rsa)?)),
                Outcome::Bot(b) => bot_out(&b),
            },
            other => Out::Text(print_rsa(&complement_drsa(&as_rsa(other))?)),
        },
        Cmd::Union { a, b } => Out::Text(print_rsa(&union_rsa(&as_rsa(load(&a)?), &as_rsa(load(&b)?))?)),
        Cmd::Product { a, b } => Out::Text(print_rsa(&intersect_rsa(&as_rsa(load(&a)?), &as_rsa(load(&b)?))?)),
        Cmd::Empty { file, witness } => {
            let a = as_rsa(load(&file)?);
            let opts = DecideOptions { witness, ..caps.decide() };
            let v = is_empty_with(&a, &opts)?;
            let line = if v.answer {
                "EMPTY".to_string()
            } else {
                witness_line("NONEMPTY", &a.alphabet, v.witness.as_ref(), witness)
            };
            Out::Verdict { line, positive: v.answer }
        }
        Cmd::Include { file, expr, witness } => {
            let a = as_rsa(load(&file)?);
            let e = expr::parse_expr(&expr, |p| Ok(IncExpr::leaf(load_nra(Path::new(p))?)))?;
            let opts = DecideOptions { witness, ..caps.decide() };
            let v = check_inclusion_with(&a, &e, &opts)?;
            let line = if v.answer {
                "INCLUDED".to_string()
            } else {
                witness_line("NOT-INCLUDED", &a.alphabet, v.witness.as_ref(), witness)
            };
            Out::Verdict { line, positive: v.answer }
        }
        Cmd::TpnFire { file, transition, marking } => {
            let net = parse_tpn(&read(&file)?)?;
            let t = net
                .transitions
                .iter()
                .find(|t| t.name == transition)
                .ok_or_else(|| Error::input(format!("no transition `{transition}`")))?;
            let m = match marking {
                Some(s) => parse_marking(&net.places, &s)?,
                None => net.initial.clone(),
            };
            let next = fire(t, &m).ok_or_else(|| Error::input(format!("`{transition}` is not enabled")))?;
            Out::Text(print_marking(&net.places, &next) + "\n")
        }
        Cmd::TpnCover { file, target } => {
            let net = parse_tpn(&read(&file)?)?;
            let m = parse_marking(&net.places, &target)?;
            let ok = is_coverable_with(&net, &m, &caps.cover())?;
            if ok {
                if let Some(seq) = find_cover_witness(&net, &m, caps.forward_depth, Some(&CANCEL))? {
                    let names: Vec<&str> = seq.iter().map(|&i| net.transitions[i].name.as_str()).collect();
                    eprintln!("firing sequence: {}", names.join(" "));
                }
            }
            verdict(ok, "COVERABLE", "UNCOVERABLE")
        }
        Cmd::ToTpn { file, max_registers } => {
            let a = as_rsa(load(&file)?);
            let a = rsakit::algebra::trim(&rsakit::algebra::eliminate_epsilon(&a));
            let (net, target, _) = rsa_to_tpn(&a, max_registers)?;
            eprintln!("target {}", print_marking(&net.places, &target));
            Out::Text(print_tpn(&net))
        }
        Cmd::FromTpn { file, target } => {
            let net = parse_tpn(&read(&file)?)?;
            let m = parse_marking(&net.places, &target)?;
            Out::Text(print_rsa(&tpn_to_rsa(&net, &m)))
        }
        Cmd::RegexCompile { pattern, search, determinise } => {
            let mut ast = parse_regex(&pattern)?;
            if search {
                ast = ast.search();
            }
            let enc = Encoding::for_ast(&ast);
            let nra = compile_regex(&ast, &enc);
            if !determinise {
                return Ok(Out::Text(print_nra(&nra)));
            }
            match determinise_pipeline_with(&nra, &caps.determinise())? {
                Outcome::Drsa(d) => Out::Text(print_rsa(&d.rsa)),
                Outcome::Bot(b) => bot_out(&b),
            }
        }
        Cmd::RegexMatch { pattern, text, file } => {
            let text = match (text, file) {
                (Some(t), _) => t,
                (None, Some(f)) => read(&f)?.trim_end_matches(['\n', '\r']).to_string(),
                (None, None) => return Err(Error::input("give a text or --file")),
            };
            let g = Grep::with_options(&pattern, &caps.determinise())?;
            let out = g.is_match(&text);
            match &out.path {
                MatchPath::Deterministic => eprintln!("steps {} deterministic", out.steps),
                MatchPath::Backtracking(why) => eprintln!("steps {} backtracking ({why})", out.steps),
            }
            verdict(out.matched, "ACCEPT", "REJECT")
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) | Error::Cancelled => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = ctrlc::set_handler(|| {
        if CANCEL.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
    });
    let res = Caps::from_env().and_then(|caps| run(cli.cmd, &caps));
    match res {
        Ok(Out::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Out::Verdict { line, positive }) => {
            println!("{line}");
            if positive || !cli.fail_on_no {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
