use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lgsem::calculus::{Calculus, Polarized};
use lgsem::cbncbv::{self, compare, translate, Lgq, Lgt, TranslationError, TranslationMode};
use lgsem::formula::{parse_formula, Formula};
use lgsem::lp::{normalize, parse_lin_term};
use lgsem::search::{search_with, SearchLimits};
use lgsem::semantics::{parse_grammar, reading, Lexicon, ReadingOptions, SemanticsError, SimpleTerm, DEFAULT_FUEL};
use lgsem::sequent::parse_sequent;
use lgsem::structural::RulePackage;

// Like println!, but a closed stdout (e.g. piping into `head`) is not a panic.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const OK: u8 = 0;
const FAIL: u8 = 1;
const CAPPED: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lgsem", version, about = "Focused proof search and compositional semantics for the Lambek-Grishin calculus")]
struct Cli {
    /// Structural rule packages: none, dist, halfdm or a comma list.
    #[arg(long, global = true, default_value = "none")]
    rules: RulePackage,

    #[arg(long, global = true, default_value_t = SearchLimits::default().max_depth)]
    max_depth: usize,

    #[arg(long, global = true, default_value_t = SearchLimits::default().max_derivations)]
    max_derivations: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CalculusChoice {
    Polarized,
    Lgt,
    Lgq,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a sequent such as `np . ((np\s)/np . np) |- s`.
    Check {
        sequent: String,
        #[arg(long, value_enum, default_value_t = CalculusChoice::Polarized)]
        calculus: CalculusChoice,
    },
    /// Compute the readings of a bracketed phrase.
    Parse {
        sentence: String,
        #[arg(short = 'g', long)]
        grammar: PathBuf,
        /// Goal category; defaults to the grammar's `goal`.
        #[arg(long)]
        cat: Option<String>,
        /// Try every binary bracketing of an unbracketed word list.
        #[arg(long)]
        all_brackets: bool,
    },
    /// Show the type a formula translates to.
    Translate {
        formula: String,
        #[arg(long, default_value = "polar")]
        mode: TranslationMode,
    },
    /// Normalize a linear term, or a meaning term with `/\` and projections.
    Normalize { term: String },
    /// Lexical types under the polarized, call-by-value and call-by-name regimes.
    Compare {
        formula: String,
        /// Take atom interpretations from this grammar.
        #[arg(short = 'g', long)]
        grammar: Option<PathBuf>,
    },
}

struct Out {
    format: Format,
    color: bool,
}

impl Out {
    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{}m{}\x1b[0m", code, text)
        } else {
            text.to_string()
        }
    }

    fn json(&self, v: &Value) {
        say!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
    }

    /// Report an error; in JSON mode as an object on stdout.
    fn error(&self, code: u8, msg: impl std::fmt::Display) -> u8 {
        match self.format {
            Format::Json => self.json(&json!({ "error": msg.to_string(), "exit": code })),
            Format::Text => eprintln!("{} {}", self.paint("error:", "31"), msg),
        }
        code
    }
}

fn color_enabled() -> bool {
    match std::env::var("LGSEM_COLOR") {
        Ok(v) if v == "0" => false,
        Ok(v) if !v.is_empty() => true,
        _ => std::io::stdout().is_terminal(),
    }
}

fn formula_arg(out: &Out, src: &str) -> Result<Formula, u8> {
    parse_formula(src).map_err(|e| out.error(USAGE, format_args!("cannot read formula `{}`: {}", src, e)))
}

fn load_grammar(out: &Out, path: &PathBuf) -> Result<Lexicon, u8> {
    let src = std::fs::read_to_string(path).map_err(|e| out.error(USAGE, format_args!("cannot read {}: {}", path.display(), e)))?;
    parse_grammar(&src).map_err(|e| out.error(USAGE, format_args!("{}: {}", path.display(), e)))
}

fn cmd_check(out: &Out, src: &str, choice: CalculusChoice, pkg: RulePackage, lim: SearchLimits) -> u8 {
    let goal = match parse_sequent(src) {
        Ok(g) => g,
        Err(e) => return out.error(USAGE, format_args!("cannot read sequent: {}", e)),
    };
    let calc: &dyn Calculus = match choice {
        CalculusChoice::Polarized => &Polarized,
        CalculusChoice::Lgt => &Lgt,
        CalculusChoice::Lgq => &Lgq,
    };
    if choice != CalculusChoice::Polarized {
        if let Some(l) = goal.leaves().iter().find(|l| !cbncbv::in_scope(&l.formula)) {
            return out.error(FAIL, TranslationError::UnsupportedConnective(l.formula.to_string()));
        }
    }
    let res = search_with(calc, &goal, pkg, lim).expect("parsed sequents are unfocused");
    let (verdict, code) = match (res.derivations.is_empty(), res.capped) {
        (false, _) => ("derivable", OK),
        (true, false) => ("not_derivable", FAIL),
        (true, true) => ("unknown", CAPPED),
    };
    match out.format {
        Format::Json => out.json(&json!({
            "sequent": goal.to_string(),
            "calculus": calc.name(),
            "rules": pkg.to_string(),
            "verdict": verdict,
            "count": res.derivations.len(),
            "capped": res.capped,
            "derivations": res.derivations.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let head = match code {
                OK => out.paint("DERIVABLE", "32"),
                FAIL => out.paint("NOT DERIVABLE", "31"),
                _ => out.paint("UNKNOWN", "33"),
            };
            say!("{}  {}", head, goal);
            match code {
                OK => {
                    let n = res.derivations.len();
                    say!("{} derivation{}{}", n, if n == 1 { "" } else { "s" }, if n >= lim.max_derivations { " (limit reached)" } else { "" });
                    for (i, d) in res.derivations.iter().enumerate() {
                        say!();
                        say!("[{}] term: {}", i + 1, d.term);
                        say_raw!("{}", d);
                    }
                }
                FAIL => say!("the search space was exhausted"),
                _ => say!("search limits were reached before a derivation was found"),
            }
        }
    }
    code
}

fn semantics_code(e: &SemanticsError) -> u8 {
    match e {
        SemanticsError::DepthExceeded(_) | SemanticsError::Diverged => CAPPED,
        SemanticsError::Bracketing(_) => USAGE,
        _ => FAIL,
    }
}

fn cmd_parse(out: &Out, sentence: &str, grammar: &PathBuf, cat: Option<&str>, all_brackets: bool, pkg: RulePackage, lim: SearchLimits) -> u8 {
    let lex = match load_grammar(out, grammar) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let cat = match (cat, &lex.goal) {
        (Some(c), _) => match formula_arg(out, c) {
            Ok(f) => f,
            Err(code) => return code,
        },
        (None, Some(g)) => g.clone(),
        (None, None) => return out.error(USAGE, "no --cat given and the grammar declares no goal"),
    };
    let opts = ReadingOptions { pkg, lim, all_brackets };
    let readings = match reading(sentence, &cat, &lex, &opts) {
        Ok(r) => r,
        Err(e) => return out.error(semantics_code(&e), e),
    };
    match out.format {
        Format::Json => out.json(&json!({
            "sentence": sentence,
            "category": cat.to_string(),
            "rules": pkg.to_string(),
            "count": readings.len(),
            "readings": readings.iter().map(|r| json!({
                "term": r.term.to_string(),
                "ascii": r.term.to_ascii(),
                "derivations": r.derivations,
                "bracketing": r.bracketing,
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            for r in &readings {
                let n = r.derivations;
                say!("{}", out.paint(&r.term.to_string(), "1"));
                say!("  {} derivation{} via {}", n, if n == 1 { "" } else { "s" }, r.bracketing);
            }
        }
    }
    OK
}

fn cmd_translate(out: &Out, src: &str, mode: TranslationMode) -> u8 {
    let f = match formula_arg(out, src) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let t = match translate(&f, mode) {
        Ok(t) => t,
        Err(e) => return out.error(FAIL, e),
    };
    match out.format {
        Format::Json => out.json(&json!({
            "formula": f.to_string(),
            "mode": mode.to_string(),
            "type": t.to_string(),
            "negations": t.negations(),
        })),
        Format::Text => say!("{}", t),
    }
    OK
}

fn cmd_normalize(out: &Out, src: &str) -> u8 {
    let (input, nf) = match parse_lin_term(src) {
        Ok(t) => match normalize(&t) {
            Ok(n) => (t.to_string(), n.to_string()),
            Err(e) => return out.error(CAPPED, e),
        },
        // meaning terms with conjunction, projections or constants
        Err(lin_err) => match SimpleTerm::parse(src) {
            Ok(t) => match t.normalize(DEFAULT_FUEL) {
                Ok(n) => (t.to_string(), n.to_string()),
                Err(e) => return out.error(CAPPED, e),
            },
            Err(_) => return out.error(USAGE, format_args!("cannot read term: {}", lin_err)),
        },
    };
    match out.format {
        Format::Json => out.json(&json!({ "term": input, "normal_form": nf })),
        Format::Text => say!("{}", nf),
    }
    OK
}

fn cmd_compare(out: &Out, src: &str, grammar: Option<&PathBuf>) -> u8 {
    let f = match formula_arg(out, src) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let base = match grammar {
        Some(p) => match load_grammar(out, p) {
            Ok(l) => l.base,
            Err(code) => return code,
        },
        None => cbncbv::default_base(),
    };
    match compare(&f, &base) {
        Ok(c) => {
            match out.format {
                Format::Json => out.json(&serde_json::to_value(&c).expect("comparison serializes")),
                Format::Text => say_raw!("{}", c),
            }
            OK
        }
        Err(e) => out.error(FAIL, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let out = Out {
        format: cli.format,
        color: cli.format == Format::Text && color_enabled(),
    };
    let lim = SearchLimits {
        max_depth: cli.max_depth,
        max_derivations: cli.max_derivations.max(1),
        ..SearchLimits::default()
    };
    let code = match &cli.command {
        Command::Check { sequent, calculus } => cmd_check(&out, sequent, *calculus, cli.rules, lim),
        Command::Parse { sentence, grammar, cat, all_brackets } => cmd_parse(&out, sentence, grammar, cat.as_deref(), *all_brackets, cli.rules, lim),
        Command::Translate { formula, mode } => cmd_translate(&out, formula, *mode),
        Command::Normalize { term } => cmd_normalize(&out, term),
        Command::Compare { formula, grammar } => cmd_compare(&out, formula, grammar.as_ref()),
    };
    ExitCode::from(code)
}
