//! Command-line driver. Every command is deterministic for fixed flags and
//! seed; exit codes are 0 success, 2 configuration or parse error,
//! 3 resource budget exceeded, 4 verification failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bias::{self, BiasError};
use crate::hash::{self, ClassicalHash, HashError, HashSpec, Message};
use crate::nc1::{self, Equivalence, PermutationBranchingProgram};
use crate::perm::{
    enumerate_group, AutomorphismFamily, FiniteGroupTable, GroupDescriptor, PermError, Permutation,
};
use crate::state::{build_psi0, Psi0Kind, StartState, StateVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Equivalence checks are skipped above this many circuit inputs.
pub const EXHAUSTIVE_INPUT_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "grouphash",
    version,
    about = "Group-based quantum hash simulation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-element bias scan of a family over a group
    Bias(FamilyArgs),
    /// Sample and verify a good multiset of automorphisms
    Goodset(GoodsetArgs),
    /// Pairwise overlap scan of hash states
    Collide(CollideArgs),
    /// Compile a circuit to a width-5 permutation branching program
    Compile(CompileArgs),
    /// Bias audit of the cyclic-shift conjugation family on S_n
    Audit(AuditArgs),
    /// Rank candidate families by max bias
    Search(SearchArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// sym:n | alt:n | zp:p | gen:<file>
    #[arg(long)]
    group: String,
    /// cyclic-conj | full-conj | mult-conj[:p] | trivial
    #[arg(long)]
    family: String,
    /// fourier | pm | custom:<file>
    #[arg(long, default_value = "fourier")]
    psi0: String,
}

#[derive(Args, Debug)]
struct GoodsetArgs {
    #[command(flatten)]
    base: FamilyArgs,
    /// Bound on the squared bias, in (0, 1)
    #[arg(long)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    max_attempts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CollideArgs {
    /// Abelian baseline zp:<prime>
    #[arg(long, conflicts_with_all = ["group", "circuit", "program"])]
    baseline: Option<String>,
    /// Group hashed through the identity-index map
    #[arg(long, conflicts_with_all = ["circuit", "program"])]
    group: Option<String>,
    /// Circuit compiled to a program hash into S_5
    #[arg(long, conflicts_with = "program")]
    circuit: Option<PathBuf>,
    /// Raw program file used as the hash into S_5
    #[arg(long)]
    program: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "fourier")]
    psi0: String,
    /// Range `a..b` / `a..=b`, or a file with one message per line
    #[arg(long)]
    messages: Option<String>,
    #[arg(long, default_value_t = hash::DEFAULT_PAIR_BUDGET)]
    pair_budget: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompileArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    group: String,
    /// Comma-separated family descriptors
    #[arg(long, value_delimiter = ',')]
    families: Vec<String>,
    /// Comma-separated start-state kinds
    #[arg(long, value_delimiter = ',', default_value = "fourier,pm")]
    psi0: Vec<String>,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Budget(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Budget(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::TooLarge { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<BiasError> for CliError {
    fn from(e: BiasError) -> Self {
        match e {
            BiasError::Perm(p) => p.into(),
            BiasError::VerificationFailed { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<HashError> for CliError {
    fn from(e: HashError) -> Self {
        match e {
            HashError::Perm(p) => p.into(),
            HashError::PairBudgetExceeded { .. } | HashError::MessageSpaceTooLarge(_) => {
                CliError::Budget(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| config(format!("{}: {e}", path.display())))
}

fn parse_usize(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| config(format!("bad {what} `{s}`")))
}

/// Generators file: one permutation per line, one-line or cycle notation.
fn parse_generators(text: &str) -> Result<GroupDescriptor, CliError> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let mut degree = 0;
    for l in &lines {
        let p = Permutation::parse(l, None).map_err(|e| config(e.to_string()))?;
        if l.starts_with('[') && degree != 0 && degree != p.degree() {
            return Err(config("generators have different degrees"));
        }
        degree = degree.max(p.degree());
    }
    if degree == 0 {
        return Err(config("generator file lists no permutations"));
    }
    let generators = lines
        .iter()
        .map(|l| Permutation::parse(l, Some(degree)).map_err(|e| config(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupDescriptor::Generated { degree, generators })
}

fn parse_group(desc: &str) -> Result<FiniteGroupTable, CliError> {
    let (kind, arg) = desc
        .split_once(':')
        .ok_or_else(|| config(format!("bad group descriptor `{desc}`")))?;
    let d = match kind {
        "sym" => GroupDescriptor::Symmetric(parse_usize(arg, "degree")?),
        "alt" => GroupDescriptor::Alternating(parse_usize(arg, "degree")?),
        "zp" => GroupDescriptor::CyclicShifts(parse_usize(arg, "degree")?),
        "gen" => parse_generators(&read_file(Path::new(arg))?)?,
        _ => return Err(config(format!("unknown group kind `{kind}`"))),
    };
    Ok(enumerate_group(&d)?)
}

fn parse_family(desc: &str, group: &FiniteGroupTable) -> Result<AutomorphismFamily, CliError> {
    let n = group.degree();
    match desc.split_once(':') {
        None if desc == "cyclic-conj" => Ok(AutomorphismFamily::cyclic_shifts(n)),
        None if desc == "full-conj" => Ok(AutomorphismFamily::full_conjugation(group)),
        None if desc == "trivial" => Ok(AutomorphismFamily::trivial(n)),
        None if desc == "mult-conj" => Ok(AutomorphismFamily::multiplicative(n)?),
        Some(("mult-conj", p)) => {
            let p = parse_usize(p, "modulus")?;
            if p != n {
                return Err(config(format!("mult-conj:{p} does not act on degree {n}")));
            }
            Ok(AutomorphismFamily::multiplicative(p)?)
        }
        _ => Err(config(format!("unknown family `{desc}`"))),
    }
}

fn parse_psi0_kind(desc: &str) -> Result<Psi0Kind, CliError> {
    match desc {
        "fourier" => Ok(Psi0Kind::Fourier),
        "pm" => Ok(Psi0Kind::Pm),
        _ => match desc.strip_prefix("custom:") {
            Some(path) => {
                let v = StateVector::from_text(&read_file(Path::new(path))?)
                    .map_err(|e| config(format!("{path}: {e}")))?;
                Ok(Psi0Kind::Custom(v.amplitudes().to_vec()))
            }
            None => Err(config(format!("unknown psi0 kind `{desc}`"))),
        },
    }
}

fn parse_psi0(desc: &str, n: usize) -> Result<StartState, CliError> {
    build_psi0(n, parse_psi0_kind(desc)?).map_err(|e| config(e.to_string()))
}

fn parse_range(s: &str) -> Option<(u64, u64)> {
    if let Some((a, b)) = s.split_once("..=") {
        let (a, b) = (a.parse().ok()?, b.parse::<u64>().ok()?);
        return Some((a, b.checked_add(1)?));
    }
    let (a, b) = s.split_once("..")?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn parse_message(s: &str, bits: bool) -> Result<Message, CliError> {
    if bits {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(config(format!("bad bit string `{s}`"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Message::Bits)
    } else {
        s.parse()
            .map(Message::Index)
            .map_err(|_| config(format!("bad message `{s}`")))
    }
}

fn parse_messages(arg: &str, bits: bool, budget: usize) -> Result<Vec<Message>, CliError> {
    if let Some((a, b)) = parse_range(arg) {
        if bits {
            return Err(config(
                "ranges describe integer messages; use a file of bit strings",
            ));
        }
        let count = b.saturating_sub(a) as usize;
        // refuse before materializing absurd ranges
        let pairs = count.saturating_mul(count.saturating_sub(1)) / 2;
        if pairs > budget {
            return Err(HashError::PairBudgetExceeded { pairs, budget }.into());
        }
        return Ok((a..b).map(Message::Index).collect());
    }
    read_file(Path::new(arg))?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_message(l, bits))
        .collect()
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| config(format!("write failed: {e}")))
}

fn cmd_bias(args: &FamilyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let group = parse_group(&args.group)?;
    let family = parse_family(&args.family, &group)?;
    let psi0 = parse_psi0(&args.psi0, group.degree())?;
    let report = bias::bias_report(&family, &group, &psi0)?;
    emit(out, &report.to_text())
}

fn cmd_goodset(args: &GoodsetArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(args.epsilon > 0.0 && args.epsilon < 1.0) {
        return Err(BiasError::EpsilonOutOfRange(args.epsilon).into());
    }
    let group = parse_group(&args.base.group)?;
    let family = parse_family(&args.base.family, &group)?;
    let psi0 = parse_psi0(&args.base.psi0, group.degree())?;
    match bias::sample_good_set(
        &family,
        args.epsilon,
        &group,
        &psi0,
        args.seed,
        args.max_attempts,
    ) {
        Ok(gs) => {
            let mut text = String::new();
            writeln!(text, "group={}", group.name()).unwrap();
            writeln!(text, "psi0={}", psi0.kind()).unwrap();
            writeln!(text, "seed={}", args.seed).unwrap();
            text.push_str(&gs.to_text());
            text.push_str("# verification transcript\n");
            text.push_str(&bias::bias_report(&gs.family, &group, &psi0)?.to_text());
            if let Some(path) = &args.out {
                write_file(path, &text)?;
            }
            emit(out, &text)
        }
        Err(BiasError::VerificationFailed {
            attempts,
            best_max_bias,
        }) => {
            let base = bias::bias_report(&family, &group, &psi0)?;
            let mut text = String::new();
            writeln!(text, "verified=false").unwrap();
            writeln!(
                text,
                "d={}",
                bias::good_set_size(args.epsilon, group.order())
            )
            .unwrap();
            writeln!(text, "attempts={attempts}").unwrap();
            writeln!(text, "best_sample_max_bias={best_max_bias:.12}").unwrap();
            writeln!(text, "base_family_max_bias={:.12}", base.max_bias).unwrap();
            if let Some(g) = &base.argmax {
                writeln!(text, "base_family_argmax={g}").unwrap();
            }
            emit(out, &text)?;
            Err(CliError::Verification(format!(
                "no good set after {attempts} attempts; base family max bias {:.12}",
                base.max_bias
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn build_collide_spec(args: &CollideArgs) -> Result<HashSpec, CliError> {
    if let Some(b) = &args.baseline {
        let p = b
            .strip_prefix("zp:")
            .ok_or_else(|| config(format!("baseline must be zp:<prime>, got `{b}`")))?;
        return Ok(hash::abelian_baseline(parse_usize(p, "prime")?)?);
    }
    let program = match (&args.circuit, &args.program) {
        (Some(path), _) => {
            let c = nc1::parse_circuit(&read_file(path)?)
                .map_err(|e| config(format!("{}:{}: {e}", path.display(), e.line())))?;
            Some(nc1::compile_barrington(&c))
        }
        (None, Some(path)) => Some(
            PermutationBranchingProgram::parse(&read_file(path)?)
                .map_err(|e| config(format!("{}: {e}", path.display())))?,
        ),
        (None, None) => None,
    };
    let (group, h) = match program {
        Some(p) => {
            let g = enumerate_group(&GroupDescriptor::Symmetric(nc1::WIDTH))?;
            (g, nc1::pbp_hash_adapter(p))
        }
        None => {
            let desc = args.group.as_deref().ok_or_else(|| {
                config("collide needs --baseline, --group, --circuit or --program")
            })?;
            let g = parse_group(desc)?;
            let h = ClassicalHash::identity_index(&g);
            (g, h)
        }
    };
    let family = parse_family(args.family.as_deref().unwrap_or("cyclic-conj"), &group)?;
    let psi0 = parse_psi0(&args.psi0, group.degree())?;
    Ok(hash::build_hash_spec(group, family, psi0, h)?)
}

fn cmd_collide(args: &CollideArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = build_collide_spec(args)?;
    let bits = spec.h().program().is_some();
    let messages = match &args.messages {
        Some(m) => parse_messages(m, bits, args.pair_budget)?,
        None => spec.message_space()?,
    };
    let report = hash::collision_report_with_budget(&spec, &messages, args.pair_budget)?;
    let mut text = report.to_text();
    text.insert_str(
        0,
        &format!(
            "t={} n={} dim={} qubits={}\n",
            spec.t(),
            spec.n(),
            spec.dim(),
            spec.qubits()
        ),
    );
    if let Some(path) = &args.out {
        write_file(path, &text)?;
    }
    emit(out, &text)
}

fn cmd_compile(args: &CompileArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let circuit = nc1::parse_circuit(&read_file(&args.circuit)?)
        .map_err(|e| config(format!("{}:{}: {e}", args.circuit.display(), e.line())))?;
    let program = nc1::compile_barrington(&circuit);
    let rewritten_depth = circuit.de_morgan().depth();
    let bound = 4usize.checked_pow(rewritten_depth as u32);
    let mut text = String::new();
    writeln!(text, "inputs={}", circuit.num_inputs()).unwrap();
    writeln!(text, "gates={}", circuit.gates().len()).unwrap();
    writeln!(text, "depth={}", circuit.depth()).unwrap();
    writeln!(text, "rewritten_depth={rewritten_depth}").unwrap();
    writeln!(text, "length={}", program.len()).unwrap();
    match bound {
        Some(b) => writeln!(
            text,
            "bound=4^{rewritten_depth}={b} within_bound={}",
            program.len() <= b
        )
        .unwrap(),
        None => writeln!(text, "bound=4^{rewritten_depth} within_bound=true").unwrap(),
    }
    let mut failed = None;
    if circuit.num_inputs() <= EXHAUSTIVE_INPUT_LIMIT {
        match nc1::check_equivalence(&circuit, &program) {
            Equivalence::Pass => writeln!(text, "equivalence=PASS").unwrap(),
            Equivalence::Fail(bits) => {
                let m = Message::Bits(bits);
                writeln!(text, "equivalence=FAIL at {m}").unwrap();
                failed = Some(m);
            }
        }
    } else {
        writeln!(
            text,
            "equivalence=skipped ({} inputs exceeds the exhaustive limit of {EXHAUSTIVE_INPUT_LIMIT})",
            circuit.num_inputs()
        )
        .unwrap();
    }
    match &args.out {
        Some(path) => write_file(path, &program.to_text())?,
        None => text.push_str(&program.to_text()),
    }
    emit(out, &text)?;
    match failed {
        Some(m) => Err(CliError::Verification(format!(
            "program disagrees with circuit at {m}"
        ))),
        None => Ok(()),
    }
}

fn cmd_audit(args: &AuditArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = bias::audit_cyclic_construction(args.n)?;
    emit(out, &report.to_text())
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let group = parse_group(&args.group)?;
    let mut candidates = Vec::new();
    for f in &args.families {
        // families that cannot act on this group are dropped, as in the library
        match parse_family(f, &group) {
            Ok(fam) => candidates.push(fam),
            Err(CliError::Config(_)) if f.starts_with("mult-conj:") => {}
            Err(e) => return Err(e),
        }
    }
    let kinds = args
        .psi0
        .iter()
        .map(|k| parse_psi0_kind(k))
        .collect::<Result<Vec<_>, _>>()?;
    let ranked = bias::search_families(&group, &candidates, &kinds)?;
    let mut text = format!("group={}\n", group.name());
    for (i, r) in ranked.iter().enumerate() {
        writeln!(
            text,
            "rank={} family={} psi0={} max_bias={:.12}",
            i + 1,
            r.family,
            r.psi0,
            r.max_bias
        )
        .unwrap();
    }
    emit(out, &text)
}

/// Runs the CLI with explicit arguments (including the program name) and
/// writers; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Bias(a) => cmd_bias(a, out),
        Command::Goodset(a) => cmd_goodset(a, out),
        Command::Collide(a) => cmd_collide(a, out),
        Command::Compile(a) => cmd_compile(a, out),
        Command::Audit(a) => cmd_audit(a, out),
        Command::Search(a) => cmd_search(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
