//! `lawforge`: construct, verify and measure short group laws.
//!
//! Every report is a JSON object `{"config": ..., "result": ...}` whose
//! config re-runs the command exactly (`lawforge replay REPORT`).
//! Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or parse
//! error, 3 cap or budget exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lawforge::lawkit::{
    extension_combine, max_order_law, product_law, psl2_law, small_field_law, solvable_law, union_combine,
};
use lawforge::spectra::{
    centralizer_census, cyclic_tuple_count, e_g_density, order_census, regular_diagonalizable_census,
};
use lawforge::verify::{
    check_law, check_law_sampled, check_on_generating_pairs, shortest_law_search, vanishing_set, LawCertificate,
    DEFAULT_SAMPLES,
};
use lawforge::walks::{
    almost_law_search, cayley_diameter, coverage_union_bound_report, default_m, default_walk_length,
    empirical_mixing_check, AlmostLawConfig, DEFAULT_ATTEMPTS,
};
use lawforge::{Caps, Elem, Error, Group, GroupOps, LieTypeTag, TableGroup, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lawforge", version, about = "Short laws for finite groups")]
struct Cli {
    /// Cap overrides, e.g. "pairs=2000,table=4096" (applied after LAWFORGE_CAPS).
    #[arg(long, global = true)]
    caps: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Suppress progress messages on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand)]
enum Top {
    #[command(flatten)]
    Run(Command),
    /// Re-run the configuration embedded in a JSON report.
    Replay {
        report: PathBuf,
        /// Compare the regenerated report with the file byte for byte.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Build a law from one of the constructions.
    Construct(ConstructArgs),
    /// Check a word (or each word of a file) on a group.
    Verify(VerifyArgs),
    /// Size of {(g,h) : w(g,h) = 1}.
    VanishingSet(VanishingArgs),
    /// First law of length at most --max-length, in enumeration order.
    ShortestLaw(ShortestArgs),
    /// Element-order census.
    Spectrum(SpectrumArgs),
    /// Fraction of elements with order dividing b(X,q).
    Density(DensityArgs),
    /// Zero-sum tuples of distinct residues mod n against the lower bound.
    TupleCount(TupleArgs),
    /// Cayley-graph diameter for a generating set.
    Diameter(DiameterArgs),
    /// Lazy random walks against the |E|/2|G| hitting bound.
    MixingCheck(MixingArgs),
    /// Randomized search for a word vanishing on all generating pairs.
    AlmostLaw(AlmostLawArgs),
    /// Estimated per-pair hit rate and the resulting union bound.
    CoverageBound(CoverageArgs),
    /// Centralizer size of one element.
    Centralizer(CentralizerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Recipe {
    Psl2Law,
    Solvable,
    MaxOrder,
    SmallField,
    Union,
    Product,
    Extension,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct ConstructArgs {
    #[arg(value_enum)]
    recipe: Recipe,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    family: Option<String>,
    /// Input words for union/product, one per occurrence.
    #[arg(long = "word")]
    words: Vec<String>,
    /// File of input words, one per line.
    #[arg(long)]
    word_file: Option<PathBuf>,
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long)]
    quotient: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct WordInput {
    /// The word, e.g. "x y x^-1 y^-1".
    #[arg(long, conflicts_with = "word_file")]
    word: Option<String>,
    /// File with one word per line.
    #[arg(long)]
    word_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct VerifyArgs {
    #[arg(long)]
    group: String,
    #[command(flatten)]
    input: WordInput,
    /// Sample pairs instead of enumerating G x G.
    #[arg(long)]
    sampled: bool,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Only require vanishing on generating pairs.
    #[arg(long, conflicts_with = "sampled")]
    generating_pairs: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct VanishingArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    word: String,
    /// Include the pairs themselves, not only the count.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct ShortestArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    max_length: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct SpectrumArgs {
    #[arg(long)]
    group: String,
    #[arg(long, requires = "q")]
    family: Option<String>,
    #[arg(long, requires = "family")]
    q: Option<u64>,
    /// Also count elements with distinct eigenvalues (linear matrix groups).
    #[arg(long)]
    regular: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct DensityArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct TupleArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: u32,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct GensInput {
    /// Generators separated by ';', e.g. "(1 2);(1 2 3)".
    #[arg(long)]
    gens: Option<String>,
    /// Use a seeded uniformly random generating pair instead.
    #[arg(long, conflicts_with = "gens")]
    random_pair: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct DiameterArgs {
    #[arg(long)]
    group: String,
    #[command(flatten)]
    gens: GensInput,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Target {
    All,
    Empty,
    /// Elements of order dividing b(X,q); needs --family and --q.
    Eg,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct MixingArgs {
    #[arg(long)]
    group: String,
    #[command(flatten)]
    gens: GensInput,
    #[arg(long, value_enum, default_value_t = Target::Eg)]
    target: Target,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    /// Walk length; defaults to 2|S| diam^2 ln(2|G|).
    #[arg(long)]
    length: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct AlmostLawArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    length: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
    attempts: u32,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct CoverageArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    length: Option<u64>,
    #[arg(long, default_value_t = 256)]
    words: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct CentralizerArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    element: String,
}

/// Everything needed to reproduce a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RunConfig {
    #[serde(flatten)]
    command: Command,
    caps: Caps,
    format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
}

/// A CLI failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_cap() {
            3
        } else if matches!(e, Error::BoundViolated { .. }) {
            1
        } else {
            2
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = Result<T, Failure>;

struct Outcome {
    result: Value,
    text: String,
    csv: Option<String>,
    positive: bool,
}

impl Outcome {
    fn new(result: impl Serialize, text: String, positive: bool) -> Outcome {
        Outcome { result: serde_json::to_value(result).expect("serializable"), text, csv: None, positive }
    }
}

struct Ctx {
    caps: Caps,
    quiet: bool,
}

impl Ctx {
    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("lawforge: {msg}");
        }
    }

    fn group(&self, s: &str) -> CliResult<Group> {
        let g = Group::parse(s, &self.caps)?;
        self.progress(&format!("group {} of order {}", g.descriptor(), g.order()));
        Ok(g)
    }
}

fn parse_word(s: &str) -> CliResult<Word> {
    s.parse::<Word>().map_err(Failure::from)
}

fn parse_tag(s: &str) -> CliResult<LieTypeTag> {
    LieTypeTag::parse_any_rank(s).map_err(Failure::from)
}

fn read_words(path: &PathBuf) -> CliResult<Vec<Word>> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(lawforge::freeword::parse_word_lines(&text)?)
}

fn input_words(input: &WordInput) -> CliResult<Vec<Word>> {
    match (&input.word, &input.word_file) {
        (Some(w), None) => Ok(vec![parse_word(w)?]),
        (None, Some(p)) => {
            let ws = read_words(p)?;
            if ws.is_empty() {
                return Err(usage(format!("{} contains no words", p.display())));
            }
            Ok(ws)
        }
        _ => Err(usage("give exactly one of --word or --word-file")),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, recipe: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("{recipe} needs --{flag}")))
}

fn construct(a: &ConstructArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let caps = &ctx.caps;
    let recipe = match a.recipe {
        Recipe::Psl2Law => psl2_law(need(a.q, "q", "psl2-law")?, caps)?,
        Recipe::Solvable => solvable_law(need(a.d, "d", "solvable")?, caps)?,
        Recipe::MaxOrder => max_order_law(need(a.m, "m", "max-order")?, caps)?,
        Recipe::SmallField => {
            let family = a.family.as_deref().ok_or_else(|| usage("small-field needs --family"))?;
            small_field_law(parse_tag(family)?, need(a.n, "n", "small-field")?, caps)?
        }
        Recipe::Union | Recipe::Product => {
            let mut ws = a.words.iter().map(|w| parse_word(w)).collect::<CliResult<Vec<_>>>()?;
            if let Some(p) = &a.word_file {
                ws.extend(read_words(p)?);
            }
            let w = if a.recipe == Recipe::Union { union_combine(&ws)? } else { product_law(&ws)? };
            let m = ws.len() as u128;
            let max = ws.iter().map(Word::len).max().unwrap_or(0) as u128;
            free_recipe(a.recipe, w, 16 * m * m * max, ws.iter().map(Word::to_string).collect())
        }
        Recipe::Extension => {
            let n = parse_word(a.kernel.as_deref().ok_or_else(|| usage("extension needs --kernel"))?)?;
            let q = parse_word(a.quotient.as_deref().ok_or_else(|| usage("extension needs --quotient"))?)?;
            let w = extension_combine(&n, &q)?;
            let bound = n.len() as u128 * q.len() as u128;
            free_recipe(a.recipe, w, bound, vec![n.to_string(), q.to_string()])
        }
    };
    let text =
        format!("{}\nlength {} (bound {}): {}\n", recipe.word, recipe.length, recipe.claimed_bound, recipe.notes);
    Ok(Outcome::new(&recipe, text, true))
}

fn free_recipe(kind: Recipe, w: Word, bound: u128, inputs: Vec<String>) -> lawforge::LawRecipe {
    let name = serde_json::to_value(kind).expect("serializable");
    lawforge::LawRecipe {
        constructor: name.as_str().unwrap_or_default().to_string(),
        params: [("inputs".to_string(), json!(inputs))].into_iter().collect(),
        length: w.len(),
        word: w,
        claimed_bound: bound,
        notes: "length <= claimed_bound".into(),
    }
}

fn verdict_line(c: &LawCertificate) -> String {
    use lawforge::verify::Verdict::*;
    let v = match &c.verdict {
        Law => "law".to_string(),
        LawSampled => "law (sampled)".to_string(),
        CoversGeneratingPairs => "covers generating pairs".to_string(),
        Counterexample { g, h, value } => format!("counterexample g={g} h={h} w(g,h)={value}"),
    };
    format!("{}: {v} [{} pairs]\n", c.word, c.pairs_checked)
}

fn verify(a: &VerifyArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let words = input_words(&a.input)?;
    let mut certs = Vec::new();
    for w in &words {
        ctx.progress(&format!("checking {} letters", w.len()));
        let c = if a.generating_pairs {
            check_on_generating_pairs(w, &g)?
        } else if a.sampled {
            check_law_sampled(w, &g, a.samples, a.seed)?
        } else {
            check_law(w, &g)?
        };
        certs.push(c);
    }
    let positive = certs.iter().all(|c| c.verdict.is_positive());
    let text = certs.iter().map(verdict_line).collect();
    Ok(if certs.len() == 1 { Outcome::new(&certs[0], text, positive) } else { Outcome::new(&certs, text, positive) })
}

fn vanishing(a: &VanishingArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let w = parse_word(&a.word)?;
    let pairs = vanishing_set(&w, &g)?;
    let n = g.order() as u64;
    let mut result = json!({ "word": w, "group": g.descriptor().to_string(), "size": pairs.len(), "total": n * n });
    if a.list {
        let elems = g.elements()?;
        let listed: Vec<[String; 2]> = pairs
            .iter()
            .map(|&(x, y)| [g.format_element(&elems[x as usize]), g.format_element(&elems[y as usize])])
            .collect();
        result["pairs"] = json!(listed);
    }
    let text = format!("|Z({}, {w})| = {} of {}\n", g.descriptor(), pairs.len(), n * n);
    Ok(Outcome::new(result, text, true))
}

fn shortest(a: &ShortestArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let r = shortest_law_search(&g, a.max_length, a.seed)?;
    let text = match &r.found {
        Some(w) => format!("law of length {}: {w}\n", w.len()),
        None => format!("no law of length <= {} ({} words tested)\n", r.frontier, r.words_tested),
    };
    Ok(Outcome::new(&r, text, true))
}

fn spectrum(a: &SpectrumArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let mut r = order_census(&g)?;
    if let (Some(f), Some(q)) = (&a.family, a.q) {
        r.e_g = Some(r.e_g_from_census(parse_tag(f)?, q)?);
    }
    if a.regular {
        r.regular_count = Some(regular_diagonalizable_census(&g)?);
    }
    let mut text = format!("{} |G|={} max order {}\n", r.group, r.order, r.max_order);
    for (o, c) in &r.census {
        let _ = writeln!(text, "  order {o}: {c}");
    }
    if let Some(e) = &r.e_g {
        let _ = writeln!(text, "E_G (b={}): {}/{} = {}", e.b, e.count, e.total, e.density);
    }
    if let Some(c) = r.regular_count {
        let _ = writeln!(text, "distinct eigenvalues: {c}");
    }
    let csv = r.to_csv();
    let mut out = Outcome::new(&r, text, true);
    out.csv = Some(csv);
    Ok(out)
}

fn density(a: &DensityArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let e = e_g_density(&g, parse_tag(&a.family)?, a.q)?;
    let text = format!("{}/{} = {} (b = {})\n", e.count, e.total, e.density, e.b);
    Ok(Outcome::new(&e, text, true))
}

fn tuples(a: &TupleArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let t = cyclic_tuple_count(a.n, a.d, &ctx.caps)?;
    let text = format!("exact {}, bound {}\n", t.exact, t.bound);
    let positive = t.holds != Some(false);
    Ok(Outcome::new(&t, text, positive))
}

fn generators(g: &Group, input: &GensInput, seed: u64) -> CliResult<Vec<Elem>> {
    if input.random_pair {
        let t = TableGroup::build(g)?;
        let n = t.len() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if t.generates(a, b) {
                return Ok(vec![t.element(a).clone(), t.element(b).clone()]);
            }
        }
        return Err(usage(format!("no generating pair found for {}", g.descriptor())));
    }
    let s = input.gens.as_deref().ok_or_else(|| usage("give --gens or --random-pair"))?;
    s.split(';').map(|e| g.parse_element(e.trim()).map_err(Failure::from)).collect()
}

fn diameter(a: &DiameterArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let s = generators(&g, &a.gens, a.seed)?;
    let d = cayley_diameter(&g, &s)?;
    let gens: Vec<String> = s.iter().map(|x| g.format_element(x)).collect();
    let result = json!({ "group": g.descriptor().to_string(), "generators": gens, "diameter": d });
    Ok(Outcome::new(result, format!("diameter {d}\n"), true))
}

fn mixing(a: &MixingArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let s = generators(&g, &a.gens, a.seed)?;
    let b = match a.target {
        Target::Eg => {
            let family = a.family.as_deref().ok_or_else(|| usage("--target eg needs --family"))?;
            let q = a.q.ok_or_else(|| usage("--target eg needs --q"))?;
            Some(lawforge::lawkit::tables::table_b(parse_tag(family)?, q)? as i128)
        }
        _ => None,
    };
    let target = a.target;
    let in_target = |x: &Elem| match target {
        Target::All => true,
        Target::Empty => false,
        Target::Eg => g.is_identity(&g.pow(x, b.expect("set for eg"))),
    };
    ctx.progress(&format!("{} trials", a.trials));
    let r = empirical_mixing_check(&g, &s, &in_target, a.length, a.trials, a.seed)?;
    let text = format!(
        "L={} hit rate {:.4} vs threshold {:.4} - {:.4}: {}\n",
        r.walk_length,
        r.hit_rate,
        r.threshold,
        r.allowance,
        if r.pass { "pass" } else { "fail" }
    );
    let pass = r.pass;
    Ok(Outcome::new(&r, text, pass))
}

fn almost_law(a: &AlmostLawArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let cfg = AlmostLawConfig { m: a.m, walk_length: a.length, seed: a.seed, attempts: a.attempts };
    ctx.progress(&format!(
        "m={} L={}",
        a.m.unwrap_or_else(|| default_m(g.order())),
        a.length.unwrap_or_else(|| default_walk_length(g.order()))
    ));
    let r = almost_law_search(&g, parse_tag(&a.family)?, a.q, &cfg)?;
    let text = match (&r.combined, r.success) {
        (Some(w), true) => format!("success on attempt {}: word of length {}\n", r.attempts_used, w.len()),
        _ => format!("no covering family in {} attempts\n", r.attempts_used),
    };
    let success = r.success;
    Ok(Outcome::new(&r, text, success))
}

fn coverage(a: &CoverageArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let m = a.m.unwrap_or_else(|| default_m(g.order()));
    let len = a.length.unwrap_or_else(|| default_walk_length(g.order()));
    let r = coverage_union_bound_report(&g, parse_tag(&a.family)?, a.q, m, len, a.words, a.seed)?;
    let text = format!("C2-hat {} union bound {:.4e}\n", r.c2_hat, r.union_bound);
    Ok(Outcome::new(&r, text, true))
}

fn centralizer(a: &CentralizerArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let g = ctx.group(&a.group)?;
    let x = g.parse_element(&a.element)?;
    let c = centralizer_census(&g, &x)?;
    let result = json!({ "group": g.descriptor().to_string(), "element": g.format_element(&x), "centralizer": c });
    Ok(Outcome::new(result, format!("|C(g)| = {c}\n"), true))
}

fn run(cmd: &Command, ctx: &Ctx) -> CliResult<Outcome> {
    match cmd {
        Command::Construct(a) => construct(a, ctx),
        Command::Verify(a) => verify(a, ctx),
        Command::VanishingSet(a) => vanishing(a, ctx),
        Command::ShortestLaw(a) => shortest(a, ctx),
        Command::Spectrum(a) => spectrum(a, ctx),
        Command::Density(a) => density(a, ctx),
        Command::TupleCount(a) => tuples(a, ctx),
        Command::Diameter(a) => diameter(a, ctx),
        Command::MixingCheck(a) => mixing(a, ctx),
        Command::AlmostLaw(a) => almost_law(a, ctx),
        Command::CoverageBound(a) => coverage(a, ctx),
        Command::Centralizer(a) => centralizer(a, ctx),
    }
}

/// Runs a configuration and renders the report in its format.
fn render(config: &RunConfig, quiet: bool) -> CliResult<(String, bool)> {
    let ctx = Ctx { caps: config.caps, quiet };
    let out = run(&config.command, &ctx)?;
    let body = match config.format {
        Format::Json => {
            let report = json!({ "config": config, "result": out.result });
            serde_json::to_string_pretty(&report).expect("serializable") + "\n"
        }
        Format::Csv => out.csv.ok_or_else(|| usage("csv output is only available for spectrum"))?,
        Format::Text => out.text,
    };
    Ok((body, out.positive))
}

fn emit(body: &str, path: Option<&PathBuf>) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|e| usage(format!("cannot write output: {e}")))
        }
    }
}

fn resolve_caps(flag: Option<&str>) -> CliResult<Caps> {
    let caps = Caps::from_env()?;
    Ok(match flag {
        Some(s) => caps.with_overrides(s)?,
        None => caps,
    })
}

fn replay(path: &PathBuf, check: bool, output: Option<&PathBuf>, quiet: bool) -> CliResult<bool> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let report: Value = serde_json::from_str(&text).map_err(|e| usage(format!("not a JSON report: {e}")))?;
    let config: RunConfig = serde_json::from_value(report.get("config").cloned().unwrap_or(Value::Null))
        .map_err(|e| usage(format!("report has no usable config: {e}")))?;
    let (body, positive) = render(&config, quiet)?;
    if check {
        if body != text {
            eprintln!("lawforge: replay of {} differs from the stored report", path.display());
            return Ok(false);
        }
        if !quiet {
            eprintln!("lawforge: replay matches {}", path.display());
        }
        return Ok(positive);
    }
    emit(&body, output)?;
    Ok(positive)
}

fn main_inner() -> CliResult<bool> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match cli.command {
        Top::Replay { report, check } => replay(&report, check, cli.output.as_ref(), cli.quiet),
        Top::Run(command) => {
            let config = RunConfig {
                command,
                caps: resolve_caps(cli.caps.as_deref())?,
                format: cli.format,
                output: cli.output.clone(),
            };
            let (body, positive) = render(&config, cli.quiet)?;
            emit(&body, cli.output.as_ref())?;
            Ok(positive)
        }
    }
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("lawforge: error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
