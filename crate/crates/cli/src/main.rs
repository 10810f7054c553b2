use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use czgrep_core::approx::{search_approx_in, ApproxQuery};
use czgrep_core::oracle::{random_case, OracleCase, Profile, Query, QueryKind};
use czgrep_core::regex::{build_tnfa, parse_regex, search_regex_in, Tnfa};
use czgrep_core::zl78::{
    compress, decompress, read_compressed, write_compressed, CompressedString, DictionaryTrie,
    Scheme,
};
use czgrep_core::{Error, MatchReport, SearchStats};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "czgrep",
    version,
    about = "Search LZ78/LZW-compressed files without decompressing them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = SchemeArg::Zl78)]
        scheme: SchemeArg,
    },
    /// Decompress a file.
    Decompress { input: PathBuf, output: PathBuf },
    /// Report end positions of substrings within edit distance k of a pattern.
    Approx {
        #[arg(long, short)]
        pattern: String,
        /// Error threshold k, smaller than the pattern length.
        #[arg(long, short = 'k', default_value_t = 0)]
        errors: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Report end positions of substrings matched by a regular expression
    /// (literals, `|`, `*`, parentheses, `\` escapes).
    Regex {
        #[arg(long, short)]
        pattern: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare both searches against brute-force oracles on random inputs.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: u64,
        #[arg(long, env = "CZGREP_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Compressed input file.
    file: PathBuf,
    /// Sampling parameter: larger values use less memory and more time.
    /// Defaults to m + k for approx and m for regex.
    #[arg(long)]
    tau: Option<usize>,
    /// Print a JSON resource record to stderr.
    #[arg(long)]
    stats: bool,
    /// Build the full dictionary trie in memory (required for approx on LZW input).
    #[arg(long)]
    explicit_trie: bool,
    /// Fail unless the file uses this scheme.
    #[arg(long, value_enum)]
    scheme_override: Option<SchemeArg>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Zl78,
    Zlw,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Zl78 => Scheme::Zl78,
            SchemeArg::Zlw => Scheme::Zlw,
        }
    }
}

/// Bad invocation rather than bad data; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Serialize)]
struct StatsRecord {
    n: usize,
    u: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    tau: usize,
    selected: usize,
    peak_live_descriptions: usize,
    peak_live_chars: usize,
    match_count: usize,
    wall_time_ms: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("czgrep: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Compress {
            input,
            output,
            scheme,
        } => cmd_compress(&input, &output, scheme.into()),
        Command::Decompress { input, output } => cmd_decompress(&input, &output),
        Command::Approx {
            pattern,
            errors,
            search,
        } => cmd_approx(&pattern, errors, &search),
        Command::Regex { pattern, search } => cmd_regex(&pattern, &search),
        Command::Selftest { cases, seed } => cmd_selftest(cases, seed),
    }
}

fn cmd_compress(input: &Path, output: &Path, scheme: Scheme) -> Result<ExitCode> {
    let text = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let z = compress(&text, scheme);
    let bytes = write_compressed(&z);
    fs::write(output, &bytes).with_context(|| format!("writing {}", output.display()))?;
    let ratio = if text.is_empty() {
        0.0
    } else {
        bytes.len() as f64 / text.len() as f64
    };
    println!(
        "scheme={scheme} n={} u={} bytes={} ratio={ratio:.3}",
        z.len(),
        text.len(),
        bytes.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn load(path: &Path) -> Result<CompressedString> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    read_compressed(&bytes)
        .with_context(|| format!("{} is not a valid compressed file", path.display()))
}

fn cmd_decompress(input: &Path, output: &Path) -> Result<ExitCode> {
    let z = load(input)?;
    fs::write(output, decompress(&z)).with_context(|| format!("writing {}", output.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn load_for_search(args: &SearchArgs) -> Result<CompressedString> {
    let z = load(&args.file)?;
    if let Some(expected) = args.scheme_override {
        let expected = Scheme::from(expected);
        if z.scheme() != expected {
            bail!(
                "{} uses the {} scheme, not {expected}",
                args.file.display(),
                z.scheme()
            );
        }
    }
    Ok(z)
}

fn write_positions(report: &MatchReport) -> Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for p in report.positions() {
        writeln!(out, "{p}")?;
    }
    out.flush()?;
    Ok(())
}

fn emit_stats(stats: &SearchStats, m: usize, k: Option<usize>, started: Instant) {
    let record = StatsRecord {
        n: stats.elements,
        u: stats.text_len,
        m,
        k,
        tau: stats.tau,
        selected: stats.selected,
        peak_live_descriptions: stats.peak_live_descriptions,
        peak_live_chars: stats.peak_live_chars,
        match_count: stats.matches,
        wall_time_ms: started.elapsed().as_secs_f64() * 1000.0,
    };
    eprintln!(
        "{}",
        serde_json::to_string(&record).expect("stats serialize")
    );
}

fn validate_tau(tau: Option<usize>, default: usize) -> Result<usize> {
    match tau {
        Some(0) => Err(UsageError("--tau must be at least 1".into()).into()),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn cmd_approx(pattern: &str, errors: usize, args: &SearchArgs) -> Result<ExitCode> {
    let m = pattern.len();
    if m == 0 {
        return Err(UsageError("--pattern must not be empty".into()).into());
    }
    if errors >= m {
        return Err(UsageError(format!(
            "--errors ({errors}) must be smaller than the pattern length ({m})"
        ))
        .into());
    }
    let tau = validate_tau(args.tau, m + errors)?;
    let query = ApproxQuery::new(pattern.as_bytes(), errors, tau)?;
    let started = Instant::now();
    let z = load_for_search(args)?;
    let (report, stats) = match (z.scheme(), args.explicit_trie) {
        (_, true) => search_approx_in(&DictionaryTrie::build(&z), &query)?,
        (Scheme::Zl78, false) => search_approx_in(&z.zl78_view()?, &query)?,
        (Scheme::Zlw, false) => bail!(
            "approximate search on LZW input needs --explicit-trie: LZW elements do not store \
             their labels, so phrase windows cannot be decoded from the elements alone"
        ),
    };
    write_positions(&report)?;
    if args.stats {
        emit_stats(&stats, m, Some(errors), started);
    }
    Ok(ExitCode::SUCCESS)
}

/// Renders a syntax error with a caret under the offending byte.
fn syntax_error(pattern: &str, offset: usize, reason: &str) -> UsageError {
    let caret = " ".repeat(pattern[..offset.min(pattern.len())].chars().count());
    UsageError(format!(
        "regex syntax error at offset {offset}: {reason}\n  {pattern}\n  {caret}^"
    ))
}

fn compile(pattern: &str) -> Result<(Tnfa, usize)> {
    match parse_regex(pattern) {
        Ok(r) => Ok((build_tnfa(&r), r.size())),
        Err(Error::Syntax { offset, reason }) => Err(syntax_error(pattern, offset, &reason).into()),
        Err(e) => Err(e.into()),
    }
}

fn cmd_regex(pattern: &str, args: &SearchArgs) -> Result<ExitCode> {
    let (a, m) = compile(pattern)?;
    if a.accepts_empty() {
        eprintln!(
            "czgrep: warning: the pattern matches the empty string, so every position is reported"
        );
    }
    let tau = validate_tau(args.tau, m)?;
    let started = Instant::now();
    let z = load_for_search(args)?;
    let (report, stats) = match (z.scheme(), args.explicit_trie) {
        (Scheme::Zl78, false) => search_regex_in(&z.zl78_view()?, &a, tau)?,
        // LZW labels are implicit, so regex search always uses the trie
        _ => search_regex_in(&DictionaryTrie::build(&z), &a, tau)?,
    };
    write_positions(&report)?;
    if args.stats {
        emit_stats(&stats, m, None, started);
    }
    Ok(ExitCode::SUCCESS)
}

/// Runs one case through every engine path; returns a description of the
/// first disagreement with the oracle.
fn check_case(case: &OracleCase) -> Result<Option<String>> {
    let expected = case.expected();
    let zl78 = compress(&case.text, Scheme::Zl78);
    let zlw = compress(&case.text, Scheme::Zlw);
    for (scheme, z) in [(Scheme::Zl78, &zl78), (Scheme::Zlw, &zlw)] {
        if decompress(z) != case.text {
            return Ok(Some(format!("{scheme} roundtrip differs")));
        }
    }
    let view = zl78.zl78_view()?;
    let zl78_trie = DictionaryTrie::build(&zl78);
    let zlw_trie = DictionaryTrie::build(&zlw);
    let runs: Vec<(&str, MatchReport)> = match &case.query {
        Query::Approx { pattern, k } => {
            let q = ApproxQuery::new(pattern.clone(), *k, case.tau)?;
            vec![
                ("zl78", search_approx_in(&view, &q)?.0),
                ("zl78 trie", search_approx_in(&zl78_trie, &q)?.0),
                ("zlw trie", search_approx_in(&zlw_trie, &q)?.0),
            ]
        }
        Query::Regex(r) => {
            let a = build_tnfa(r);
            vec![
                ("zl78", search_regex_in(&view, &a, case.tau)?.0),
                ("zlw trie", search_regex_in(&zlw_trie, &a, case.tau)?.0),
            ]
        }
    };
    for (name, got) in runs {
        if got.positions() != expected {
            return Ok(Some(format!(
                "{name}: {} positions, oracle {}",
                got.len(),
                expected.len()
            )));
        }
    }
    Ok(None)
}

fn cmd_selftest(cases: u64, seed: u64) -> Result<ExitCode> {
    let mut failures = 0;
    for i in 0..cases {
        let profile = Profile::ALL[(i % 4) as usize];
        let kind = if i % 8 < 4 {
            QueryKind::Approx
        } else {
            QueryKind::Regex
        };
        let case_seed = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let case = random_case(case_seed, profile, kind);
        if let Some(problem) = check_case(&case)? {
            failures += 1;
            let query = match &case.query {
                Query::Approx { pattern, k } => {
                    format!("approx {:?} k={k}", String::from_utf8_lossy(pattern))
                }
                Query::Regex(r) => format!("regex {:?}", r.to_string()),
            };
            eprintln!(
                "FAIL case {i} (seed {case_seed}, {}, u={}, tau={}, {query}): {problem}",
                profile.name(),
                case.text.len(),
                case.tau
            );
        }
    }
    println!("selftest: {cases} cases, seed {seed}, {failures} failures");
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
