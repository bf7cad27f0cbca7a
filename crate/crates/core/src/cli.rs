//! Command implementations behind the `kgmotive` binary: argument types,
//! result tables (CSV and LaTeX) and run manifests.

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codes::PitmanYorConfig;
use crate::error::{Error, Result};
use crate::graph::{load_ntriples, Dictionary, KnowledgeGraph, Term};
use crate::matcher::{find_instances, prune_overlap, MatchBudget};
use crate::motifcode::{score_pattern, ScoredMotif};
use crate::nullmodel::null_bits;
use crate::pattern::{parse_pattern_with, print_pattern_with, Pattern, PrefixMap, Slot};
use crate::search::{run_search, SearchConfig};
use crate::synth::{
    inject, mean_log_factor_by_k, rows_to_csv, run_injection_experiment, sample_er_kg, sample_pattern, Dims,
    ExperimentConfig,
};

/// Environment variable that overrides `--workers`.
pub const THREADS_ENV: &str = "KGMOTIVE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "kgmotive", version, about = "Find motifs in knowledge graphs by compression")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for motifs and write ranked tables.
    Mine(MineArgs),
    /// Score one pattern.
    Score(PatternArgs),
    /// List the instances of one pattern.
    Match(MatchArgs),
    /// Synthetic experiments on random graphs.
    #[command(subcommand)]
    Synth(SynthCommand),
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    /// Pitman-Yor concentration.
    #[arg(long, default_value_t = 0.5)]
    pub py_alpha: f64,
    /// Pitman-Yor discount.
    #[arg(long, default_value_t = 0.1)]
    pub py_d: f64,
    /// Seconds per matcher call. Ignored when --max-matches is set.
    #[arg(long, default_value_t = 5.0)]
    pub match_timeout: f64,
    /// Instance cap per matcher call; makes runs reproducible.
    #[arg(long)]
    pub max_matches: Option<usize>,
    /// Backtracking step cap per matcher call, used with --max-matches.
    #[arg(long, default_value_t = 50_000_000)]
    pub max_steps: u64,
    /// No time, instance or step cap. Can run for a long time on large graphs.
    #[arg(long, conflicts_with = "max_matches")]
    pub unlimited: bool,
    /// Extra namespace prefixes, one `@prefix p: <ns> .` per line.
    #[arg(long)]
    pub prefixes: Option<PathBuf>,
}

impl CodeArgs {
    pub fn py(&self) -> Result<PitmanYorConfig> {
        PitmanYorConfig::new(self.py_alpha, self.py_d)
    }

    pub fn budget(&self) -> Result<MatchBudget> {
        if self.unlimited {
            return Ok(MatchBudget::unlimited());
        }
        match self.max_matches {
            Some(cap) => Ok(MatchBudget::counted(cap, self.max_steps)),
            None => {
                if !(self.match_timeout.is_finite() && self.match_timeout > 0.0) {
                    return Err(Error::Domain("--match-timeout must be positive".into()));
                }
                Ok(MatchBudget {
                    wall_clock_limit: Some(Duration::from_secs_f64(self.match_timeout)),
                    max_instances: None,
                    max_steps: None,
                })
            }
        }
    }

    pub fn prefix_map(&self) -> Result<PrefixMap> {
        let mut map = PrefixMap::default();
        if let Some(path) = &self.prefixes {
            map.extend(&PrefixMap::load(path)?);
        }
        Ok(map)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Parallel annealing chains.
    #[arg(long, default_value_t = 4)]
    pub workers: usize,
    /// Iterations per chain.
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probability of accepting a worse pattern.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Patterns kept per chain before merging.
    #[arg(long, default_value_t = 1000)]
    pub top_per_worker: usize,
    /// Progress line interval, in iterations; 0 disables.
    #[arg(long, default_value_t = 0)]
    pub progress: usize,
}

impl SearchArgs {
    /// Worker count after applying the environment override.
    pub fn workers(&self) -> Result<usize> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Domain(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
            Err(_) => Ok(self.workers.max(1)),
        }
    }

    pub fn config(&self, code: &CodeArgs) -> Result<SearchConfig> {
        let cfg = SearchConfig {
            iterations: self.iters,
            workers: self.workers()?,
            accept_prob: self.alpha,
            budget: code.budget()?,
            top_per_worker: self.top_per_worker,
            seed: self.seed,
            py: code.py()?,
            progress_every: (self.progress > 0).then_some(self.progress),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Rows per table.
    #[arg(long, default_value_t = 100)]
    pub top: usize,
    /// Also write LaTeX longtable fragments.
    #[arg(long)]
    pub latex: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MineArgs {
    /// N-Triples input.
    pub input: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PatternArgs {
    /// N-Triples input.
    pub input: PathBuf,
    /// Pattern text, e.g. `?n1 <p> ?n2 . ?n2 <q> ?n1`.
    pub pattern: String,
    #[command(flatten)]
    pub code: CodeArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MatchArgs {
    #[command(flatten)]
    pub target: PatternArgs,
    /// Drop instances that overlap an earlier one.
    #[arg(long)]
    pub pruned: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    #[arg(long, default_value_t = Dims::MUTAG.n)]
    pub n: usize,
    #[arg(long, default_value_t = Dims::MUTAG.m)]
    pub m: usize,
    #[arg(long, default_value_t = Dims::MUTAG.r)]
    pub r: usize,
}

impl DimsArgs {
    pub fn dims(&self) -> Result<Dims> {
        let dims = Dims::new(self.n, self.m, self.r);
        dims.validate()?;
        Ok(dims)
    }
}

#[derive(Debug, Subcommand)]
pub enum SynthCommand {
    /// Plant one random pattern, search, and rescore the top motifs on
    /// graphs with other instance counts.
    Single(SingleArgs),
    /// Log-factor of random planted patterns over a range of k.
    Repeat(RepeatArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SingleArgs {
    #[command(flatten)]
    pub dims: DimsArgs,
    /// Planted instances in the searched graph.
    #[arg(long, default_value_t = 75)]
    pub k: usize,
    /// Instance counts of the comparison graphs.
    #[arg(long, value_delimiter = ',', default_value = "0,150")]
    pub compare: Vec<usize>,
    /// Plant this pattern instead of a random one. Nodes are `<nI>`,
    /// relations `<rJ>`.
    #[arg(long)]
    pub pattern: Option<String>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RepeatArgs {
    #[command(flatten)]
    pub dims: DimsArgs,
    #[arg(long, default_value_t = 200)]
    pub kmax: usize,
    #[arg(long, default_value_t = 25)]
    pub kstep: usize,
    #[arg(long, default_value_t = 25)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimum pruned frequency for the per-k means printed at the end.
    #[arg(long, default_value_t = 20)]
    pub min_frequency: usize,
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// Everything needed to rerun a command, written next to its results.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub input: Option<PathBuf>,
    pub synth: Option<serde_json::Value>,
    pub search: Option<SearchConfig>,
    pub py: PitmanYorConfig,
    pub version: String,
    pub seed: u64,
    pub wall_clock_secs: f64,
}

impl RunManifest {
    fn new(py: PitmanYorConfig, seed: u64) -> Self {
        RunManifest {
            command: std::env::args().collect(),
            input: None,
            synth: None,
            search: None,
            py,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            wall_clock_secs: 0.0,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).map_err(|e| Error::Domain(e.to_string()))?;
        fs::write(dir.join("manifest.json"), json + "\n")?;
        Ok(())
    }
}

/// Process exit code for an error: 2 for input problems, 3 for pattern
/// problems, 4 for internal contract violations.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Domain(_) | Error::Io(_) | Error::Initialization(_) | Error::Injection(_) => 2,
        Error::UnknownTerm(_) | Error::InvalidPattern(_) | Error::PatternTooLarge { .. } => 3,
        Error::Contract(_) | Error::Stuck => 4,
    }
}

pub fn load_graph(path: &Path) -> Result<(KnowledgeGraph, Dictionary)> {
    let file = File::open(path)?;
    load_ntriples(BufReader::new(file))
}

/// Dictionary naming synthetic nodes `<nI>` and relations `<rJ>`.
pub fn synthetic_dictionary(v: usize, r: usize) -> Dictionary {
    let mut dict = Dictionary::new();
    for i in 0..v {
        dict.intern_node(Term::Iri(format!("n{i}")));
    }
    for j in 0..r {
        dict.intern_relation(Term::Iri(format!("r{j}")));
    }
    dict
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "log_factor,frequency,pattern,b_dim,b_pattern,b_template,b_instances";

/// One CSV row per motif, see [`CSV_HEADER`].
pub fn motifs_csv(motifs: &[ScoredMotif], dict: &Dictionary, prefixes: &PrefixMap) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for m in motifs {
        let b = &m.breakdown;
        let text = print_pattern_with(&m.pattern, dict, prefixes, " ");
        out.push_str(&format!(
            "{:.1},{},{},{:.3},{:.3},{:.3},{:.3}\n",
            m.log_factor,
            m.frequency,
            csv_field(&text),
            b.b_dim,
            b.b_pattern,
            b.b_template,
            b.b_instances
        ));
    }
    out
}

pub fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '$' | '&' | '#' | '_' | '%' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\textasciicircum{}"),
            '~' => out.push_str("\\textasciitilde{}"),
            _ => out.push(c),
        }
    }
    out
}

/// A longtable fragment with columns log factor, frequency and the pattern,
/// one triple per line.
pub fn motifs_latex(motifs: &[ScoredMotif], dict: &Dictionary, prefixes: &PrefixMap, title: &str) -> String {
    let mut out = String::new();
    out.push_str("\\begin{longtable}{r r p{0.5\\linewidth}}\n\\hline\nlog factor & frequency & \\\\\n\\hline\n");
    out.push_str(&format!("\\multicolumn{{3}}{{c}}{{{}}}\\\\\n\\hline\n", latex_escape(title)));
    for (i, m) in motifs.iter().enumerate() {
        if i > 0 {
            out.push_str("\\hdashline\n");
        }
        let lines: Vec<String> = print_pattern_with(&m.pattern, dict, prefixes, "\n")
            .lines()
            .map(|l| format!("\\texttt{{{}}}", latex_escape(l)))
            .collect();
        out.push_str(&format!(
            "{:.1} & {} & \\makecell[l]{{{}}} \\\\\n",
            m.log_factor,
            m.frequency,
            lines.join(" \\\\ ")
        ));
    }
    out.push_str("\\hline\n\\end{longtable}\n");
    out
}

/// Motifs ordered by frequency, then log-factor, then canonical labels.
pub fn by_frequency(motifs: &[ScoredMotif]) -> Vec<ScoredMotif> {
    let mut out = motifs.to_vec();
    out.sort_by(|a, b| {
        b.frequency
            .cmp(&a.frequency)
            .then(b.log_factor.total_cmp(&a.log_factor))
            .then_with(|| a.pattern.to_labels().cmp(&b.pattern.to_labels()))
    });
    out
}

fn write_tables(
    dir: &Path,
    ranked: &[ScoredMotif],
    output: &OutputArgs,
    dict: &Dictionary,
    prefixes: &PrefixMap,
    label: &str,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let top: Vec<ScoredMotif> = ranked.iter().take(output.top).cloned().collect();
    let freq: Vec<ScoredMotif> = by_frequency(ranked).into_iter().take(output.top).collect();
    fs::write(dir.join("motifs-byscore.csv"), motifs_csv(&top, dict, prefixes))?;
    fs::write(dir.join("motifs-byfreq.csv"), motifs_csv(&freq, dict, prefixes))?;
    if output.latex {
        let title = format!("{label}, top {} by log-factor", top.len());
        fs::write(dir.join("motifs-byscore.latex"), motifs_latex(&top, dict, prefixes, &title))?;
        let title = format!("{label}, top {} by frequency", freq.len());
        fs::write(dir.join("motifs-byfreq.latex"), motifs_latex(&freq, dict, prefixes, &title))?;
    }
    Ok(())
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(e.to_string()))
}

pub fn cmd_mine(args: &MineArgs, stdout: &mut dyn Write) -> Result<()> {
    let start = Instant::now();
    let (graph, dict) = load_graph(&args.input)?;
    let prefixes = args.code.prefix_map()?;
    let cfg = args.search.config(&args.code)?;
    let ranked = thread_pool(cfg.workers)?.install(|| run_search(&graph, &cfg))?;
    let label = args
        .input
        .file_stem()
        .map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
    write_tables(&args.output.out, &ranked, &args.output, &dict, &prefixes, &label)?;

    let mut manifest = RunManifest::new(cfg.py, cfg.seed);
    manifest.input = Some(args.input.clone());
    manifest.search = Some(cfg);
    manifest.wall_clock_secs = start.elapsed().as_secs_f64();
    manifest.write(&args.output.out)?;

    let positives = ranked.iter().filter(|m| m.log_factor > 0.0).count();
    writeln!(stdout, "positive motifs: {positives}")?;
    Ok(())
}

fn resolve(args: &PatternArgs) -> Result<(KnowledgeGraph, Dictionary, PrefixMap, Pattern)> {
    let (graph, dict) = load_graph(&args.input)?;
    let prefixes = args.code.prefix_map()?;
    let pattern = parse_pattern_with(&args.pattern, &dict, &prefixes)?;
    Ok((graph, dict, prefixes, pattern))
}

pub fn cmd_score(args: &PatternArgs, stdout: &mut dyn Write) -> Result<()> {
    let (graph, dict, prefixes, pattern) = resolve(args)?;
    let (m, _) = score_pattern(&graph, null_bits(&graph), &pattern, &args.code.budget()?, &args.code.py()?)?;
    let b = &m.breakdown;
    writeln!(stdout, "pattern\t{}", print_pattern_with(&pattern, &dict, &prefixes, " "))?;
    writeln!(stdout, "log_factor\t{:.3}", m.log_factor)?;
    writeln!(stdout, "frequency\t{}", m.frequency)?;
    writeln!(stdout, "complete\t{}", m.complete)?;
    writeln!(stdout, "significant\t{}", m.is_significant())?;
    writeln!(stdout, "b_dim\t{:.3}", b.b_dim)?;
    writeln!(stdout, "b_pattern\t{:.3}", b.b_pattern)?;
    writeln!(stdout, "b_template\t{:.3}", b.b_template)?;
    writeln!(stdout, "b_instances\t{:.3}", b.b_instances)?;
    writeln!(stdout, "total\t{:.3}", b.total)?;
    Ok(())
}

pub fn cmd_match(args: &MatchArgs, stdout: &mut dyn Write) -> Result<()> {
    let (graph, dict, prefixes, pattern) = resolve(&args.target)?;
    let found = find_instances(&graph, &pattern, &args.target.code.budget()?)?;
    let instances = if args.pruned {
        prune_overlap(&found.instances, &pattern)
    } else {
        found.instances
    };
    let node = |n: u32| dict.node(n).map_or_else(|| n.to_string(), |t| prefixes.render(t));
    let rel = |p: u32| dict.relation(p).map_or_else(|| p.to_string(), |t| prefixes.render(t));
    for inst in &instances {
        let mut fields: Vec<String> = Vec::new();
        for (i, &n) in inst.nodes.iter().enumerate() {
            fields.push(format!("?n{}={}", -pattern.node_label(Slot::Var(i as u32)), node(n)));
        }
        for (j, &p) in inst.relations.iter().enumerate() {
            fields.push(format!("?p{}={}", -pattern.rel_label(Slot::Var(j as u32)), rel(p)));
        }
        writeln!(stdout, "{}", fields.join("\t"))?;
    }
    eprintln!(
        "{} instances{}",
        instances.len(),
        if found.complete { "" } else { " (budget reached)" }
    );
    Ok(())
}

pub fn cmd_synth_single(args: &SingleArgs, stdout: &mut dyn Write) -> Result<()> {
    let start = Instant::now();
    let dims = args.dims.dims()?;
    let cfg = args.search.config(&args.code)?;
    let prefixes = args.code.prefix_map()?;
    let dict = synthetic_dictionary(dims.n, dims.r);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let base = sample_er_kg(dims, &mut rng)?;
    let planted = match &args.pattern {
        Some(text) => parse_pattern_with(text, &dict, &prefixes)?,
        None => sample_pattern(&base, &mut rng)?,
    };
    let (graph, _) = inject(&base, &planted, args.k, &mut rng)?;
    let planted = planted.canonicalize()?;

    let pool = thread_pool(cfg.workers)?;
    let ranked = pool.install(|| run_search(&graph, &cfg))?;
    fs::create_dir_all(&args.output.out)?;
    write_tables(&args.output.out, &ranked, &args.output, &dict, &prefixes, &format!("k={}", args.k))?;
    let mut file = File::create(args.output.out.join(format!("graph-k{}.txt", args.k)))?;
    graph.write_edge_list(&mut file)?;

    // Rescore the top motifs on fresh graphs with other instance counts.
    let top: Vec<&ScoredMotif> = ranked.iter().take(args.output.top).collect();
    let mut comparisons = Vec::new();
    for &k in &args.compare {
        let fresh = sample_er_kg(dims, &mut rng)?;
        let (other, _) = inject(&fresh, &planted, k, &mut rng)?;
        let mut file = File::create(args.output.out.join(format!("graph-k{k}.txt")))?;
        other.write_edge_list(&mut file)?;
        let null = null_bits(&other);
        let scores = pool.install(|| {
            use rayon::prelude::*;
            top.par_iter()
                .map(|m| score_pattern(&other, null, &m.pattern, &cfg.budget, &cfg.py).map(|s| s.0))
                .collect::<Result<Vec<_>>>()
        })?;
        comparisons.push((k, scores));
    }
    let mut csv = format!("rank,planted,log_factor_k{},frequency_k{}", args.k, args.k);
    for (k, _) in &comparisons {
        csv.push_str(&format!(",log_factor_k{k},frequency_k{k}"));
    }
    csv.push_str(",pattern\n");
    for (i, m) in top.iter().enumerate() {
        csv.push_str(&format!("{},{},{:.1},{}", i + 1, m.pattern == planted, m.log_factor, m.frequency));
        for (_, scores) in &comparisons {
            csv.push_str(&format!(",{:.1},{}", scores[i].log_factor, scores[i].frequency));
        }
        let text = print_pattern_with(&m.pattern, &dict, &prefixes, " ");
        csv.push_str(&format!(",{}\n", csv_field(&text)));
    }
    fs::write(args.output.out.join("synth-single.csv"), csv)?;

    let mut manifest = RunManifest::new(cfg.py, cfg.seed);
    manifest.synth = Some(serde_json::json!({
        "protocol": "single",
        "dims": dims,
        "k": args.k,
        "compare": args.compare,
        "planted": print_pattern_with(&planted, &dict, &prefixes, " "),
    }));
    manifest.search = Some(cfg);
    manifest.wall_clock_secs = start.elapsed().as_secs_f64();
    manifest.write(&args.output.out)?;

    let positives = ranked.iter().filter(|m| m.log_factor > 0.0).count();
    writeln!(stdout, "planted: {}", print_pattern_with(&planted, &dict, &prefixes, " "))?;
    match ranked.iter().position(|m| m.pattern == planted) {
        Some(rank) => writeln!(stdout, "planted pattern rank: {}", rank + 1)?,
        None => writeln!(stdout, "planted pattern rank: not found")?,
    }
    writeln!(stdout, "positive motifs: {positives}")?;
    Ok(())
}

pub fn cmd_synth_repeat(args: &RepeatArgs, stdout: &mut dyn Write) -> Result<()> {
    let start = Instant::now();
    if args.kstep == 0 {
        return Err(Error::Domain("--kstep must be positive".into()));
    }
    let cfg = ExperimentConfig {
        dims: args.dims.dims()?,
        k_values: (0..=args.kmax).step_by(args.kstep).collect(),
        repeats: args.repeats,
        seed: args.seed,
        budget: args.code.budget()?,
        py: args.code.py()?,
    };
    let rows = run_injection_experiment(&cfg)?;
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("synth-repeat.csv"), rows_to_csv(&rows))?;

    let mut manifest = RunManifest::new(cfg.py, cfg.seed);
    manifest.synth = Some(serde_json::to_value(&cfg).map_err(|e| Error::Domain(e.to_string()))?);
    manifest.wall_clock_secs = start.elapsed().as_secs_f64();
    manifest.write(&args.out)?;

    for (k, mean) in mean_log_factor_by_k(&rows, args.min_frequency) {
        match mean {
            Some(m) => writeln!(stdout, "k={k} mean_log_factor={m:.1}")?,
            None => writeln!(stdout, "k={k} mean_log_factor=n/a")?,
        }
    }
    Ok(())
}

/// Runs a parsed command line, writing reports to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Mine(a) => cmd_mine(a, stdout),
        Command::Score(a) => cmd_score(a, stdout),
        Command::Match(a) => cmd_match(a, stdout),
        Command::Synth(SynthCommand::Single(a)) => cmd_synth_single(a, stdout),
        Command::Synth(SynthCommand::Repeat(a)) => cmd_synth_repeat(a, stdout),
    }
}
