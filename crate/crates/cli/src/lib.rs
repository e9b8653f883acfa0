//! Command-line front end for `flopcalc`.
//!
//! [`run`] does all the work so tests can drive it in-process; `main` only
//! wires it to the real streams. Exit status: 0 success, 1 domain error,
//! 2 parse or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use flopcalc::oracle::{self, named_alphabet, named_alphabet_subgroup};
use flopcalc::{
    decompose_gl2, decompose_h2, factor_h1, factor_h2_transport, factor_h4, flop_decomposition,
    is_topological_flop, is_trivial_mod2, lens_space_h1, membership, moebius_embeddable,
    plan_monodromy, surgery_invariants, verify_generation, Error, GeneratorLetter, GeneratorWord,
    IntMat2, Letter, MonodromyPlan, SubgroupTag, SurgeryDescriptor,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "flopcalc", version, about = "Exact surgery calculus on the torus")]
struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Subgroup memberships of a matrix.
    Classify {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Semidirect splitting m = k·h.
    Decompose {
        #[arg(long, value_enum)]
        level: Level,
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Word in a generating set.
    Factor {
        #[arg(long, value_enum)]
        alphabet: Alphabet,
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Surgery invariants c and r of a gluing matrix.
    Surgery {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Decomposition of a mod-2-trivial surgery into flops and framing changes.
    Flops {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// First homology of a/c surgery on the unknot.
    Lens {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Whether a class bounds a Möbius band in a plane bundle.
    Moebius {
        /// The class as "alpha,beta".
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Degrees a b of O(a) + O(b).
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["A", "B"])]
        bundle: Vec<String>,
    },
    /// Plan of twists and quadric transforms realizing a monodromy.
    Plan {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Check a plan file written by `plan --json`.
    VerifyPlan { file: String },
    /// Breadth-first generation check for an alphabet.
    Oracle {
        /// h4, h1, h2, k6, or a JSON file holding an array of matrices or letters.
        #[arg(long)]
        alphabet: String,
        #[arg(long, default_value_t = oracle::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_BOUND)]
        bound: i64,
        /// Subgroup to test against; defaults to the one a named alphabet generates, else GL2Z.
        #[arg(long)]
        subgroup: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Level {
    Gl2,
    H2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Alphabet {
    H4,
    H1,
    H2t,
}

impl Alphabet {
    fn name(self) -> &'static str {
        match self {
            Alphabet::H4 => "h4",
            Alphabet::H1 => "h1",
            Alphabet::H2t => "h2t",
        }
    }
}

/// A failed command: exit status plus diagnostic.
struct Failure {
    code: i32,
    message: String,
    /// Printed on stdout before failing, e.g. a negative verdict.
    output: Option<Output>,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARSE, message: message.into(), output: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_parse() { EXIT_PARSE } else { EXIT_DOMAIN };
        Failure { code, message: e.to_string(), output: None }
    }
}

/// What a command prints: the same content as text and as a JSON record.
struct Output {
    text: String,
    record: Value,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_matrix(s: &str) -> Result<IntMat2, Failure> {
    // A malformed or non-unimodular matrix on the command line is an input error.
    s.parse::<IntMat2>().map_err(|e| Failure::parse(format!("{s:?}: {e}")))
}

fn parse_int(s: &str) -> Result<BigInt, Failure> {
    s.trim().parse::<BigInt>().map_err(|_| Failure::parse(format!("invalid integer {s:?}")))
}

fn word_text(w: &GeneratorWord) -> String {
    if w.is_empty() {
        "(empty)".to_owned()
    } else {
        w.to_string()
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(stream, "{rendered}");
            return code;
        }
    };
    let json = cli.json;
    let emit = |out: &Output, stdout: &mut dyn Write| {
        let line = if json {
            serde_json::to_string(&out.record).expect("JSON value")
        } else {
            out.text.clone()
        };
        let _ = writeln!(stdout, "{line}");
    };
    match execute(cli.command) {
        Ok(out) => {
            emit(&out, stdout);
            EXIT_OK
        }
        Err(f) => {
            if let Some(out) = &f.output {
                emit(out, stdout);
            }
            let _ = writeln!(stderr, "flopcalc: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Classify { matrix } => classify(&parse_matrix(&matrix)?),
        Command::Decompose { level, matrix } => decompose(level, &parse_matrix(&matrix)?),
        Command::Factor { alphabet, matrix } => factor(alphabet, &parse_matrix(&matrix)?),
        Command::Surgery { matrix } => surgery(&parse_matrix(&matrix)?),
        Command::Flops { matrix } => flops(&parse_matrix(&matrix)?),
        Command::Lens { a, c } => lens(&parse_int(&a)?, &parse_int(&c)?),
        Command::Moebius { class, bundle } => moebius(&class, &bundle),
        Command::Plan { matrix } => plan(&parse_matrix(&matrix)?),
        Command::VerifyPlan { file } => verify_plan_file(Path::new(&file)),
        Command::Oracle { alphabet, depth, bound, subgroup } => {
            run_oracle(&alphabet, depth, bound, subgroup.as_deref())
        }
    }
}

fn classify(m: &IntMat2) -> Result<Output, Failure> {
    let rows: Vec<(SubgroupTag, bool)> =
        SubgroupTag::ALL.iter().map(|&t| (t, membership(m, t))).collect();
    let text = rows
        .iter()
        .map(|(t, yes)| format!("{t}: {}", if *yes { "yes" } else { "no" }))
        .collect::<Vec<_>>()
        .join("\n");
    let record = json!({
        "matrix": to_value(m),
        "membership": rows
            .iter()
            .map(|(t, yes)| json!({"subgroup": t.name(), "member": yes}))
            .collect::<Vec<_>>(),
    });
    Ok(Output { text, record })
}

fn decompose(level: Level, m: &IntMat2) -> Result<Output, Failure> {
    let (name, (k, h)) = match level {
        Level::Gl2 => ("gl2", decompose_gl2(m)),
        Level::H2 => ("h2", decompose_h2(m)?),
    };
    Ok(Output {
        text: format!("k = {k}\nh = {h}"),
        record: json!({"level": name, "matrix": to_value(m), "k": to_value(&k), "h": to_value(&h)}),
    })
}

fn factor(alphabet: Alphabet, m: &IntMat2) -> Result<Output, Failure> {
    let word = match alphabet {
        Alphabet::H4 => factor_h4(m)?,
        Alphabet::H1 => factor_h1(m)?,
        Alphabet::H2t => factor_h2_transport(m)?,
    };
    Ok(Output {
        text: word_text(&word),
        record: json!({"alphabet": alphabet.name(), "matrix": to_value(m), "word": to_value(&word)}),
    })
}

fn descriptor(m: &IntMat2) -> Result<SurgeryDescriptor, Failure> {
    Ok(SurgeryDescriptor::new(m.clone())?)
}

fn surgery(m: &IntMat2) -> Result<Output, Failure> {
    let s = descriptor(m)?;
    let inv = surgery_invariants(&s);
    let trivial = is_trivial_mod2(&s);
    let flop = is_topological_flop(&s);
    let r = inv.r.as_ref().map_or_else(|| "undefined".to_owned(), ToString::to_string);
    let mut record = to_value(&inv);
    record["trivial_mod2"] = json!(trivial);
    record["topological_flop"] = json!(flop);
    Ok(Output {
        text: format!(
            "c = {}\nr = {r}\ntrivial_mod2 = {trivial}\ntopological_flop = {flop}",
            inv.c
        ),
        record,
    })
}

fn flops(m: &IntMat2) -> Result<Output, Failure> {
    let word = flop_decomposition(&descriptor(m)?)?;
    Ok(Output {
        text: word_text(&word),
        record: json!({"matrix": to_value(m), "word": to_value(&word)}),
    })
}

fn lens(a: &BigInt, c: &BigInt) -> Result<Output, Failure> {
    let h = lens_space_h1(a, c)?;
    Ok(Output {
        text: format!("h1_order = {}\nh1_mod2_rank = {}", h.order, h.mod2_rank),
        record: to_value(&h),
    })
}

fn moebius(class: &str, bundle: &[String]) -> Result<Output, Failure> {
    let parts: Vec<&str> = class.split(',').collect();
    let [alpha, beta] = parts.as_slice() else {
        return Err(Failure::parse(format!("expected \"alpha,beta\", got {class:?}")));
    };
    let (alpha, beta) = (parse_int(alpha)?, parse_int(beta)?);
    let [a, b] = bundle else {
        return Err(Failure::parse("--bundle takes two degrees"));
    };
    let (a, b) = (parse_int(a)?, parse_int(b)?);
    let verdict = moebius_embeddable(&alpha, &beta, &a, &b)?;
    let int = |x: &BigInt| to_value(&flopcalc::json::JsonInt(x.clone()));
    Ok(Output {
        text: format!("embeddable = {verdict}"),
        record: json!({
            "class": [int(&alpha), int(&beta)],
            "bundle": [int(&a), int(&b)],
            "embeddable": verdict,
        }),
    })
}

fn plan_text(p: &MonodromyPlan) -> String {
    let mut lines = vec![format!("target {}", p.target)];
    lines.extend(p.steps.iter().map(ToString::to_string));
    lines.join("\n")
}

fn plan(m: &IntMat2) -> Result<Output, Failure> {
    let p = plan_monodromy(m);
    Ok(Output { text: plan_text(&p), record: to_value(&p) })
}

fn verify_plan_file(path: &Path) -> Result<Output, Failure> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let p: MonodromyPlan = serde_json::from_str(&body)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    match p.check() {
        Ok(()) => Ok(Output {
            text: "valid".to_owned(),
            record: json!({"valid": true}),
        }),
        Err(defect) => Err(Failure {
            code: EXIT_DOMAIN,
            message: format!("invalid plan: {defect}"),
            output: Some(Output {
                text: format!("invalid: {defect}"),
                record: json!({"valid": false, "defect": defect.to_string()}),
            }),
        }),
    }
}

/// One entry of an alphabet file: a structured matrix or letter text such as
/// `"U^-1"`, `"T'(1)"` or `"1,2;0,1"`.
fn alphabet_entry(v: &Value) -> Result<GeneratorLetter, Failure> {
    match v {
        Value::String(s) => {
            if s.contains(';') && !s.starts_with('[') {
                Ok(Letter::Matrix(parse_matrix(s)?).into())
            } else {
                Ok(s.parse::<GeneratorLetter>()?)
            }
        }
        other => serde_json::from_value::<IntMat2>(other.clone())
            .map(|m| Letter::Matrix(m).into())
            .map_err(|e| Failure::parse(format!("alphabet entry {other}: {e}"))),
    }
}

fn load_alphabet(path: &Path) -> Result<Vec<GeneratorLetter>, Failure> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let entries: Vec<Value> = serde_json::from_str(&body)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    entries.iter().map(alphabet_entry).collect()
}

fn run_oracle(
    alphabet: &str,
    depth: usize,
    bound: i64,
    subgroup: Option<&str>,
) -> Result<Output, Failure> {
    let (letters, default_tag) = match named_alphabet(alphabet) {
        Some(letters) => (letters, named_alphabet_subgroup(alphabet).expect("named alphabet")),
        None => (load_alphabet(Path::new(alphabet))?, SubgroupTag::Gl2z),
    };
    let tag = match subgroup {
        Some(s) => s.parse::<SubgroupTag>()?,
        None => default_tag,
    };
    if bound < 0 {
        return Err(Failure::parse("--bound must be nonnegative"));
    }
    let report = verify_generation(&letters, tag, bound, depth);
    Ok(Output { text: report.to_string(), record: to_value(&report) })
}
