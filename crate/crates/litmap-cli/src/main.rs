//! litmap: corpus crawling, citation/semantic network analysis and
//! interdisciplinarity measures, driven by a flat TOML config.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use litmap_core::corpus::{export_corpus, ingest_corpus, CorpusFormat};
use litmap_core::crawl::{enrich_abstracts, expand_citations, FixtureProvider};
use litmap_core::error::Error;
use litmap_core::pipeline::{run_pipeline_full, PipelineConfig, ProviderKind};
use litmap_core::semnet::FilterOrder;
use litmap_core::synth::generate_synthetic_corpus;

#[derive(Parser)]
#[command(
    name = "litmap",
    version,
    about = "Bibliometric corpus mapping: citation networks, co-word networks, interdisciplinarity"
)]
struct Cli {
    /// Run configuration (TOML, flat keys).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the configured output directory.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Override the configured root seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Summary format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Jsonl,
    CsvPair,
}

impl From<CliFormat> for CorpusFormat {
    fn from(f: CliFormat) -> CorpusFormat {
        match f {
            CliFormat::Jsonl => CorpusFormat::Jsonl,
            CliFormat::CsvPair => CorpusFormat::CsvPair,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliProvider {
    Fixture,
    Http,
}

#[derive(Subcommand)]
enum Command {
    /// Read a corpus file and print its descriptive statistics.
    Ingest(IngestArgs),
    /// Expand the seed corpus by reverse citation crawling, enrich
    /// abstracts, and write the resolved corpus.
    Crawl(CrawlArgs),
    /// Citation-layer analysis: communities, modularity, null model.
    Citenet(CitenetArgs),
    /// Keyword extraction: stemmed multi-stems scored and ranked.
    Keywords(KeywordArgs),
    /// Semantic network at fixed filter parameters or from a sweep.
    Semnet(SemnetArgs),
    /// Filter-parameter sensitivity sweep with Pareto selection.
    Sweep(SweepArgs),
    /// Interdisciplinarity measures coupling the two layers.
    Interdisc(InterdiscArgs),
    /// Full pipeline: every stage, every export, one report.
    Run,
    /// Export a graph layer for external tools.
    Export(ExportArgs),
    /// Generate the bundled synthetic demo corpus with fixtures.
    Synth(SynthArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Corpus file (defaults to the configured seed corpus).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    input_format: Option<CliFormat>,
}

#[derive(Args)]
struct CrawlArgs {
    #[arg(long)]
    depth: Option<u8>,
    #[arg(long, value_enum)]
    provider: Option<CliProvider>,
    #[arg(long)]
    fixtures_dir: Option<PathBuf>,
    /// Worker bound for provider queries (0 = default pool).
    #[arg(long)]
    parallelism: Option<usize>,
    /// Queries-per-second hint for live adapters; fixtures ignore it.
    #[arg(long)]
    rate_limit: Option<f64>,
}

#[derive(Args)]
struct CitenetArgs {
    #[arg(long)]
    min_degree: Option<usize>,
    /// Null-model repetitions.
    #[arg(long)]
    bootstrap: Option<usize>,
    /// Iterate the degree filter to a stable core.
    #[arg(long)]
    iterate_core: bool,
}

#[derive(Args)]
struct KeywordArgs {
    /// Vocabulary size K_W.
    #[arg(long)]
    kw: Option<usize>,
    #[arg(long)]
    min_df: Option<u32>,
    #[arg(long)]
    stopwords_dir: Option<PathBuf>,
    /// Drop selected terms subsumed by longer selected terms.
    #[arg(long)]
    subsumption: bool,
}

#[derive(Args)]
struct SemnetArgs {
    /// Minimal edge weight theta_w (fixed-parameter mode).
    #[arg(long, conflicts_with_all = ["theta_grid", "kmax_grid"])]
    theta: Option<u32>,
    /// Maximal node degree k_max (fixed-parameter mode).
    #[arg(long, conflicts_with_all = ["theta_grid", "kmax_grid"])]
    kmax: Option<usize>,
    /// theta_w grid "start:end[:step]"; with --kmax-grid, parameters come
    /// from the sweep's Pareto compromise.
    #[arg(long)]
    theta_grid: Option<String>,
    /// k_max grid "start:end[:step]".
    #[arg(long)]
    kmax_grid: Option<String>,
    /// Filter application order.
    #[arg(long, value_enum)]
    filter_order: Option<CliFilterOrder>,
}

#[derive(Args)]
struct SweepArgs {
    /// theta_w grid "start:end[:step]".
    #[arg(long)]
    theta_grid: Option<String>,
    /// k_max grid "start:end[:step]".
    #[arg(long)]
    kmax_grid: Option<String>,
    /// Filter application order.
    #[arg(long, value_enum)]
    filter_order: Option<CliFilterOrder>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFilterOrder {
    /// Remove hubs above k_max first, then light edges, then isolates.
    HubsFirst,
    /// Remove light edges first, then hubs, then isolates.
    EdgesFirst,
}

impl From<CliFilterOrder> for FilterOrder {
    fn from(o: CliFilterOrder) -> FilterOrder {
        match o {
            CliFilterOrder::HubsFirst => FilterOrder::HubsFirst,
            CliFilterOrder::EdgesFirst => FilterOrder::EdgesFirst,
        }
    }
}

#[derive(Args)]
struct InterdiscArgs {
    #[arg(long)]
    bootstrap: Option<usize>,
}

#[derive(Args)]
struct ExportArgs {
    /// Which layer to export.
    #[arg(long, value_enum, default_value_t = ExportLayer::Citation)]
    layer: ExportLayer,
    /// Output format of the export.
    #[arg(long, value_enum, default_value_t = ExportKind::Graphml)]
    to: ExportKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportLayer {
    Citation,
    Semantic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Graphml,
    Csv,
}

#[derive(Args)]
struct SynthArgs {
    /// Directory the corpus is generated into.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 300)]
    n_refs: usize,
    /// Generator seed (independent of the analysis seed).
    #[arg(long, default_value_t = 7)]
    synth_seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if is_config_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn is_config_error(e: &Error) -> bool {
    match e {
        Error::Config(_) => true,
        Error::Stage { stage, source } => *stage == "config" || is_config_error(source),
        _ => false,
    }
}

fn load_config(cli: &Cli) -> Result<PipelineConfig, Error> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required for this subcommand".into()))?;
    let mut config = PipelineConfig::load(path)?;
    if let Some(out_dir) = &cli.out_dir {
        config.out_dir = out_dir.clone();
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Synth(args) => {
            let truth = generate_synthetic_corpus(&args.out, args.n_refs, args.synth_seed)?;
            println!(
                "generated {} references across 2 fields under {}",
                truth.n_references,
                args.out.display()
            );
            println!("run it with: litmap run --config {}", args.out.join("litmap.toml").display());
            Ok(())
        }
        Command::Ingest(args) => {
            let mut config = load_config(&cli)?;
            if let Some(input) = &args.input {
                config.seed_corpus = input.clone();
            }
            let format = args.input_format.map(CorpusFormat::from).unwrap_or(config.format);
            let corpus = ingest_corpus(&config.seed_corpus, format)?;
            let stats = corpus.stats()?;
            match cli.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialize"))
                }
                OutputFormat::Csv => {
                    println!("metric,value");
                    println!("n_references,{}", stats.n_references);
                    println!("n_citation_links,{}", stats.n_citation_links);
                    println!("n_dangling_links,{}", stats.n_dangling_links);
                    println!("abstract_coverage,{}", stats.abstract_coverage);
                    println!("average_degree,{}", stats.average_degree);
                    println!("average_in_degree,{}", stats.average_in_degree);
                    println!("directed_density,{}", stats.directed_density);
                    for (lang, share) in &stats.language_shares {
                        println!("language_share_{lang},{share}");
                    }
                }
            }
            Ok(())
        }
        Command::Crawl(args) => {
            let mut config = load_config(&cli)?;
            if let Some(depth) = args.depth {
                config.depth = depth;
            }
            if let Some(provider) = args.provider {
                config.provider = match provider {
                    CliProvider::Fixture => ProviderKind::Fixture,
                    CliProvider::Http => ProviderKind::Http,
                };
            }
            if let Some(dir) = &args.fixtures_dir {
                config.fixtures_dir = Some(dir.clone());
            }
            if let Some(p) = args.parallelism {
                config.parallelism = p;
            }
            if let Some(r) = args.rate_limit {
                config.rate_limit = r;
            }
            config.validate()?;
            let seeds = ingest_corpus(&config.seed_corpus, config.format)?;
            let provider = FixtureProvider::new(
                config
                    .fixtures_dir
                    .clone()
                    .ok_or_else(|| Error::Config("crawl needs fixtures_dir".into()))?,
            );
            let (corpus, mut report) = litmap_core::with_parallelism(
                (config.parallelism > 0).then_some(config.parallelism),
                || -> Result<_, Error> {
                    let (corpus, report) = expand_citations(&seeds, config.depth, &provider)?;
                    let (corpus, enrich) = enrich_abstracts(&corpus, &provider)?;
                    Ok((corpus, {
                        let mut r = report;
                        r.abstract_coverage = enrich.abstract_coverage;
                        r.provider_errors.extend(enrich.provider_errors);
                        r
                    }))
                },
            )?;
            report.provider_errors.sort();
            std::fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
            let out = config.out_dir.join("corpus.jsonl");
            export_corpus(&corpus, &out, CorpusFormat::Jsonl)?;
            match cli.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("report serialize"))
                }
                OutputFormat::Csv => {
                    println!("metric,value");
                    println!("references,{}", corpus.len());
                    for (d, n) in report.fetched_per_depth.iter().enumerate() {
                        println!("fetched_depth_{d},{n}");
                    }
                    println!("dedup_merges,{}", report.dedup_merges);
                    println!("provider_errors,{}", report.provider_errors.len());
                    println!("abstract_coverage,{}", report.abstract_coverage);
                }
            }
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::Citenet(args) => {
            let mut config = load_config(&cli)?;
            if let Some(k) = args.min_degree {
                config.min_degree = k;
            }
            if let Some(b) = args.bootstrap {
                config.bootstrap_reps = b;
            }
            if args.iterate_core {
                config.iterate_core = true;
            }
            let run = run_pipeline_full(&config)?;
            print_section(&cli, "citation", &run.report.citation)
        }
        Command::Keywords(args) => {
            let mut config = load_config(&cli)?;
            if let Some(kw) = args.kw {
                config.k_w = kw;
            }
            if let Some(min_df) = args.min_df {
                config.min_df = min_df;
            }
            if let Some(dir) = &args.stopwords_dir {
                config.stopwords_dir = Some(dir.clone());
            }
            if args.subsumption {
                config.subsumption = true;
            }
            let run = run_pipeline_full(&config)?;
            print_section(&cli, "keywords", &run.report.keywords)
        }
        Command::Semnet(args) => {
            let mut config = load_config(&cli)?;
            if let Some(order) = args.filter_order {
                config.filter_order = order.into();
            }
            if args.theta_grid.is_some() || args.kmax_grid.is_some() {
                config.theta_grid = args.theta_grid.clone();
                config.kmax_grid = args.kmax_grid.clone();
            } else if args.theta.is_some() || args.kmax.is_some() {
                // Explicit fixed parameters override any configured grids.
                config.theta_grid = None;
                config.kmax_grid = None;
                if let Some(theta) = args.theta {
                    config.theta_w = theta;
                }
                if let Some(kmax) = args.kmax {
                    config.k_max = kmax;
                }
            }
            let run = run_pipeline_full(&config)?;
            print_section(&cli, "semantic", &run.report.semantic)
        }
        Command::Sweep(args) => {
            let mut config = load_config(&cli)?;
            if let Some(order) = args.filter_order {
                config.filter_order = order.into();
            }
            if let Some(g) = &args.theta_grid {
                config.theta_grid = Some(g.clone());
            }
            if let Some(g) = &args.kmax_grid {
                config.kmax_grid = Some(g.clone());
            }
            if config.theta_grid.is_none() || config.kmax_grid.is_none() {
                return Err(Error::Config(
                    "sweep needs --theta-grid and --kmax-grid (or grids in the config)".into(),
                ));
            }
            let run = run_pipeline_full(&config)?;
            print_section(&cli, "sweep", &run.report.sweep)
        }
        Command::Interdisc(args) => {
            let mut config = load_config(&cli)?;
            if let Some(b) = args.bootstrap {
                config.bootstrap_reps = b;
            }
            let run = run_pipeline_full(&config)?;
            print_section(&cli, "interdisciplinarity", &run.report.interdisciplinarity)
        }
        Command::Run => {
            let config = load_config(&cli)?;
            let run = run_pipeline_full(&config)?;
            match cli.format {
                OutputFormat::Json => println!("{}", run.report.to_json()),
                OutputFormat::Csv => {
                    println!("section,status");
                    println!("citation,{}", if run.report.citation.is_some() { "ok" } else { "skipped" });
                    println!("keywords,{}", if run.report.keywords.is_some() { "ok" } else { "skipped" });
                    println!("semantic,{}", if run.report.semantic.is_some() { "ok" } else { "skipped" });
                    println!(
                        "interdisciplinarity,{}",
                        if run.report.interdisciplinarity.is_some() { "ok" } else { "skipped" }
                    );
                }
            }
            eprintln!("exports under {}", config.out_dir.display());
            Ok(())
        }
        Command::Export(args) => {
            let config = load_config(&cli)?;
            let run = run_pipeline_full(&config)?;
            use litmap_core::graphml::{write_graph_csv, write_graphml, ExportGraph};
            let export = match args.layer {
                ExportLayer::Citation => {
                    let g = run.citation_graph.as_ref().ok_or(Error::EmptyGraph)?;
                    ExportGraph::from_citation(g, run.citation_partition.as_ref(), |id| {
                        run.corpus.get(id).map(|r| r.title.clone()).unwrap_or_else(|| id.to_string())
                    })
                }
                ExportLayer::Semantic => {
                    let g = run.semantic_graph.as_ref().ok_or(Error::EmptyGraph)?;
                    ExportGraph::from_semantic(g, run.semantic_partition.as_ref())
                }
            };
            let stem = match args.layer {
                ExportLayer::Citation => "export_citation",
                ExportLayer::Semantic => "export_semantic",
            };
            std::fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
            match args.to {
                ExportKind::Graphml => {
                    let path = config.out_dir.join(format!("{stem}.graphml"));
                    write_graphml(&export, &path)?;
                    eprintln!("wrote {}", path.display());
                }
                ExportKind::Csv => {
                    let nodes = config.out_dir.join(format!("{stem}_nodes.csv"));
                    let edges = config.out_dir.join(format!("{stem}_edges.csv"));
                    write_graph_csv(&export, &nodes, &edges)?;
                    eprintln!("wrote {}", nodes.display());
                }
            }
            Ok(())
        }
    }
}

fn print_section<T: serde::Serialize>(cli: &Cli, name: &str, section: &Option<T>) -> Result<(), Error> {
    match section {
        Some(s) => {
            match cli.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(s).expect("section serializes"))
                }
                OutputFormat::Csv => {
                    // Flat key,value dump of the section JSON.
                    let value = serde_json::to_value(s).expect("section serializes");
                    println!("key,value");
                    flatten_json(name, &value);
                }
            }
            Ok(())
        }
        None => {
            eprintln!("section `{name}` was skipped; see report.json");
            Ok(())
        }
    }
}

fn flatten_json(prefix: &str, value: &serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                flatten_json(&format!("{prefix}.{k}"), v);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_json(&format!("{prefix}[{i}]"), v);
            }
        }
        other => println!("{prefix},{other}"),
    }
}
