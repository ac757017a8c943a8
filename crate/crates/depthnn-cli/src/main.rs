//! Command-line interface: depth evaluation, depth-based neighborhoods,
//! classification, estimation, simulation benchmarks, cross-validation, and
//! dataset fetching. Every output file is accompanied by a JSON run
//! manifest; replaying a manifest reproduces the outputs bit-identically.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use depthnn::classify::ClassifierSpec;
use depthnn::depth::{DepthSpec, PreparedDepth};
use depthnn::error::Error as LibError;
use depthnn::estimate::{
    knn_density, knn_regress, neighborhood_volume, NeighborhoodKind, RegressionSample,
    DEFAULT_VOLUME_DRAWS,
};
use depthnn::experiments::{
    beta_grid_to_k, default_cv_grid, loocv_select_k, run_benchmark, BenchmarkConfig, KnnFamily,
    SimulationSetup, DEFAULT_BETA_GRID,
};
use depthnn::ingest::{
    load_ripley, load_transfusion, partition, read_labeled_csv, read_points_csv, sha256_hex,
    RIPLEY_FILES, TRANSFUSION_FILES,
};
use depthnn::neighbors::depth_neighborhood;
use depthnn::{LabeledSample, Point, RngSeed};

#[derive(Parser, Debug)]
#[command(name = "depthnn", version, about = "Depth-based nearest-neighbor classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a depth function at query points.
    Depth(DepthArgs),
    /// Compute the depth-based neighborhood of a query point.
    Neighbors(NeighborsArgs),
    /// Train a classifier and predict labels for a test sample.
    Classify(ClassifyArgs),
    /// Nearest-neighbor regression, density, or neighborhood volume.
    Estimate(EstimateArgs),
    /// Run a simulation benchmark over replications.
    Benchmark(BenchmarkArgs),
    /// Select a neighborhood size by leave-one-out cross-validation.
    Cv(CvArgs),
    /// Download (or verify) the benchmark datasets.
    FetchData(FetchArgs),
    /// Re-run the command recorded in a run manifest.
    Replay(ReplayArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DepthArg {
    Halfspace,
    Simplicial,
    Mahalanobis,
    Projection,
}

impl DepthArg {
    fn spec(self) -> DepthSpec {
        match self {
            DepthArg::Halfspace => DepthSpec::halfspace(),
            DepthArg::Simplicial => DepthSpec::simplicial(),
            DepthArg::Mahalanobis => DepthSpec::mahalanobis(),
            DepthArg::Projection => DepthSpec::projection(),
        }
    }
}

#[derive(Args, Debug)]
struct DepthArgs {
    /// CSV of reference points (features only).
    #[arg(long)]
    data: PathBuf,
    /// Treat the first data row as a header.
    #[arg(long)]
    header: bool,
    #[arg(long, value_enum)]
    depth: DepthArg,
    /// Inline query point, comma-separated coordinates. Repeatable.
    #[arg(long, value_delimiter = ' ', num_args = 1)]
    query: Vec<String>,
    /// CSV of query points (features only), alternative to --query.
    #[arg(long)]
    queries: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct NeighborsArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    header: bool,
    #[arg(long, value_enum)]
    depth: DepthArg,
    #[arg(long)]
    query: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dknn,
    Knn,
    Knnaff,
    Lda,
    Qda,
    Dd,
    Ddsm,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Ripley,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Training sample (features then 0/1 label).
    #[arg(long)]
    train: PathBuf,
    /// Test sample; labeled files also yield an error summary.
    #[arg(long)]
    test: PathBuf,
    /// Input format: generic labeled CSV or Ripley's whitespace files.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    header: bool,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "halfspace")]
    depth: DepthArg,
    /// Neighborhood size for the kNN-type methods.
    #[arg(long)]
    k: Option<usize>,
    /// Select k by leave-one-out cross-validation on the training sample.
    #[arg(long)]
    cv: bool,
    /// DD polynomial degree.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Smoothed-DD temperature.
    #[arg(long, default_value_t = 100.0)]
    t: f64,
    /// Smoothed-DD random starts.
    #[arg(long, default_value_t = 100)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EstimateWhat {
    Regress,
    Density,
    Volume,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Euclidean,
    Depth,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    /// Points CSV: features only (density/volume) or features plus a final
    /// response column (regress).
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    header: bool,
    #[arg(long, value_enum)]
    what: EstimateWhat,
    #[arg(long, value_enum, default_value = "euclidean")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "halfspace")]
    depth: DepthArg,
    #[arg(long)]
    query: String,
    #[arg(long)]
    k: usize,
    /// Monte Carlo draws for depth-region volumes.
    #[arg(long, default_value_t = DEFAULT_VOLUME_DRAWS)]
    draws: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct BenchmarkArgs {
    /// Simulation setup index, 1-6.
    #[arg(long)]
    setup: usize,
    #[arg(long, default_value_t = 250)]
    replications: usize,
    #[arg(long, default_value_t = 200)]
    n_train: usize,
    #[arg(long, default_value_t = 100)]
    n_test: usize,
    /// Neighborhood fractions for the kNN-type methods.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    beta: Vec<f64>,
    /// Subset of methods to run (default: full roster).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    methods: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rayon worker threads (0 = all cores); results are identical for any
    /// worker count.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output directory for rows.csv and summary.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Knn,
    Knnaff,
    Dknn,
}

#[derive(Args, Debug)]
struct CvArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    header: bool,
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum, default_value = "halfspace")]
    depth: DepthArg,
    /// Explicit comma-separated k grid (default: fractions 0.01-0.50).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    grid: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct FetchArgs {
    /// Which dataset to fetch: ripley, transfusion, or all.
    #[arg(long, default_value = "all")]
    dataset: String,
    /// Data directory (defaults to $DEPTHNN_DATA or ./data).
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Do not download; only verify files already present.
    #[arg(long)]
    offline: bool,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Path to a run manifest produced by a previous invocation.
    #[arg(long)]
    manifest: PathBuf,
}

/// Provenance record written alongside every output file.
#[derive(Debug, Serialize, Deserialize)]
struct RunManifest {
    subcommand: String,
    args: Vec<String>,
    seed: u64,
    artifact_version: String,
    input_checksums: Vec<(String, String)>,
    outputs: Vec<String>,
}

impl RunManifest {
    fn new(subcommand: &str, seed: u64) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            args: std::env::args().skip(1).collect(),
            seed,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            input_checksums: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn record_input(&mut self, path: &Path) -> Result<(), LibError> {
        self.input_checksums
            .push((path.display().to_string(), sha256_hex(path)?));
        Ok(())
    }

    fn write_next_to(&mut self, output: &Path) -> Result<(), LibError> {
        self.outputs.push(output.display().to_string());
        let mut manifest_path = output.as_os_str().to_owned();
        manifest_path.push(".manifest.json");
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| LibError::InvalidInput(e.to_string()))?;
        fs::write(PathBuf::from(manifest_path), json + "\n")?;
        Ok(())
    }
}

fn parse_point(text: &str) -> Result<Point, LibError> {
    let coords: Result<Vec<f64>, _> = text.split(',').map(|f| f.trim().parse::<f64>()).collect();
    let coords =
        coords.map_err(|_| LibError::InvalidInput(format!("bad query point {text:?}")))?;
    Point::new(coords)
}

fn data_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os("DEPTHNN_DATA").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("data"))
}

fn exit_code_for(err: &LibError) -> u8 {
    match err {
        LibError::Singular { .. }
        | LibError::DegenerateScale { .. }
        | LibError::DegenerateVolume(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn dispatch(command: Command) -> Result<(), LibError> {
    match command {
        Command::Depth(args) => cmd_depth(args),
        Command::Neighbors(args) => cmd_neighbors(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::Cv(args) => cmd_cv(args),
        Command::FetchData(args) => cmd_fetch(args),
        Command::Replay(args) => cmd_replay(args),
    }
}

fn cmd_depth(args: DepthArgs) -> Result<(), LibError> {
    let mut manifest = RunManifest::new("depth", 0);
    manifest.record_input(&args.data)?;
    let reference = read_points_csv(&args.data, args.header)?;
    let mut queries: Vec<Point> = args
        .query
        .iter()
        .map(|q| parse_point(q))
        .collect::<Result<_, _>>()?;
    if let Some(qpath) = &args.queries {
        manifest.record_input(qpath)?;
        queries.extend(read_points_csv(qpath, args.header)?);
    }
    if queries.is_empty() {
        return Err(LibError::InvalidInput("no query points (--query or --queries)".into()));
    }
    let spec = args.depth.spec();
    let prepared = PreparedDepth::new(&reference, &spec)?;
    let mut w = csv::Writer::from_path(&args.out)?;
    w.write_record(["query_index", "query", "depth"])?;
    for (i, q) in queries.iter().enumerate() {
        let d = prepared.eval(q.coords())?;
        let coords: Vec<String> = q.coords().iter().map(|c| c.to_string()).collect();
        w.write_record([i.to_string(), coords.join(";"), d.to_string()])?;
        println!("query {i}: depth {d}");
    }
    w.flush()?;
    manifest.write_next_to(&args.out)
}

fn cmd_neighbors(args: NeighborsArgs) -> Result<(), LibError> {
    let mut manifest = RunManifest::new("neighbors", 0);
    manifest.record_input(&args.data)?;
    let points = read_points_csv(&args.data, args.header)?;
    let x = parse_point(&args.query)?;
    let nb = depth_neighborhood(&x, &points, &args.depth.spec(), args.k)?;
    let mut w = csv::Writer::from_path(&args.out)?;
    w.write_record(["member_index", "beta", "realized_count"])?;
    for m in &nb.members {
        w.write_record([m.to_string(), nb.beta.to_string(), nb.realized_count.to_string()])?;
    }
    w.flush()?;
    println!("neighborhood of k = {}: {} members", args.k, nb.realized_count);
    manifest.write_next_to(&args.out)
}

fn load_labeled(path: &Path, format: FormatArg, header: bool) -> Result<LabeledSample, LibError> {
    match format {
        FormatArg::Csv => read_labeled_csv(path, header),
        FormatArg::Ripley => {
            // either of the two canonical sizes
            let text = fs::read_to_string(path)?;
            let rows = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .filter(|l| l.split_whitespace().all(|f| f.parse::<f64>().is_ok()))
                .count();
            depthnn::ingest::read_ripley_sized(path, rows)
        }
    }
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), LibError> {
    let mut manifest = RunManifest::new("classify", args.seed);
    manifest.record_input(&args.train)?;
    manifest.record_input(&args.test)?;
    let train = load_labeled(&args.train, args.format, args.header)?;
    let test = load_labeled(&args.test, args.format, args.header)?;
    let seed = RngSeed::new(args.seed, 0);

    let k = match (args.method, args.k, args.cv) {
        (MethodArg::Dknn | MethodArg::Knn | MethodArg::Knnaff, _, true) => {
            let family = match args.method {
                MethodArg::Dknn => KnnFamily::Depth(args.depth.spec()),
                MethodArg::Knn => KnnFamily::Euclidean,
                MethodArg::Knnaff => KnnFamily::Affine,
                _ => unreachable!(),
            };
            let grid = default_cv_grid(train.len());
            let cv = loocv_select_k(&train, &family, &grid, seed.substream(1))?;
            println!("cv selected k = {}", cv.best_k);
            Some(cv.best_k)
        }
        (MethodArg::Dknn | MethodArg::Knn | MethodArg::Knnaff, Some(k), false) => Some(k),
        (MethodArg::Dknn | MethodArg::Knn | MethodArg::Knnaff, None, false) => {
            return Err(LibError::InvalidInput(
                "kNN-type methods need --k or --cv".into(),
            ))
        }
        _ => None,
    };

    let spec = match args.method {
        MethodArg::Dknn => ClassifierSpec::DepthKnn { spec: args.depth.spec(), k: k.unwrap() },
        MethodArg::Knn => ClassifierSpec::EuclideanKnn { k: k.unwrap() },
        MethodArg::Knnaff => ClassifierSpec::AffineKnn { k: k.unwrap() },
        MethodArg::Lda => ClassifierSpec::Lda,
        MethodArg::Qda => ClassifierSpec::Qda,
        MethodArg::Dd => ClassifierSpec::DdExact { spec: args.depth.spec(), m: args.m },
        MethodArg::Ddsm => ClassifierSpec::DdSmoothed {
            spec: args.depth.spec(),
            m: args.m,
            t: args.t,
            starts: args.starts,
        },
    };
    let model = spec.fit_seeded(&train, seed.substream(2))?;
    let mut errors = 0usize;
    let mut w = csv::Writer::from_path(&args.out)?;
    w.write_record(["index", "predicted", "actual"])?;
    for (i, p) in test.points().iter().enumerate() {
        let pred = model.predict(p, seed.substream(1000 + i as u64))?;
        if pred != test.label(i) {
            errors += 1;
        }
        w.write_record([i.to_string(), pred.to_string(), test.label(i).to_string()])?;
    }
    w.flush()?;
    let pct = 100.0 * errors as f64 / test.len() as f64;
    println!("method {}: test error {pct:.2}% ({errors}/{})", spec.name(), test.len());
    manifest.write_next_to(&args.out)
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), LibError> {
    let mut manifest = RunManifest::new("estimate", args.seed);
    manifest.record_input(&args.data)?;
    let x = parse_point(&args.query)?;
    let kind = match args.mode {
        ModeArg::Euclidean => NeighborhoodKind::Euclidean,
        ModeArg::Depth => NeighborhoodKind::Depth(args.depth.spec()),
    };
    let seed = RngSeed::new(args.seed, 0);
    let mut w = csv::Writer::from_path(&args.out)?;
    match args.what {
        EstimateWhat::Regress => {
            let raw = read_points_csv(&args.data, args.header)?;
            let d = raw[0].dim();
            if d < 2 {
                return Err(LibError::InvalidInput(
                    "regression data needs at least one feature and a response".into(),
                ));
            }
            let points: Vec<Point> = raw
                .iter()
                .map(|p| Point::new(p.coords()[..d - 1].to_vec()))
                .collect::<Result<_, _>>()?;
            let responses: Vec<f64> = raw.iter().map(|p| p.coords()[d - 1]).collect();
            let sample = RegressionSample::new(points, responses)?;
            let y = knn_regress(&x, &sample, &kind, args.k)?;
            w.write_record(["estimate"])?;
            w.write_record([y.to_string()])?;
            println!("regression estimate: {y}");
        }
        EstimateWhat::Density => {
            let points = read_points_csv(&args.data, args.header)?;
            let f = knn_density(&x, &points, &kind, args.k, args.draws, seed)?;
            w.write_record(["estimate"])?;
            w.write_record([f.to_string()])?;
            println!("density estimate: {f}");
        }
        EstimateWhat::Volume => {
            let points = read_points_csv(&args.data, args.header)?;
            let v = neighborhood_volume(&x, &points, &kind, args.k, args.draws, seed)?;
            w.write_record(["volume", "std_error", "draws"])?;
            w.write_record([v.volume.to_string(), v.std_error.to_string(), v.draws.to_string()])?;
            println!("volume: {} (se {}, draws {})", v.volume, v.std_error, v.draws);
        }
    }
    w.flush()?;
    manifest.write_next_to(&args.out)
}

fn default_roster(n_train: usize, betas: &[f64]) -> Vec<ClassifierSpec> {
    let ks = beta_grid_to_k(n_train, betas, n_train.saturating_sub(1).max(1));
    let mut roster = vec![ClassifierSpec::Lda, ClassifierSpec::Qda];
    for &k in &ks {
        roster.push(ClassifierSpec::EuclideanKnn { k });
        roster.push(ClassifierSpec::AffineKnn { k });
        roster.push(ClassifierSpec::DepthKnn { spec: DepthSpec::halfspace(), k });
        roster.push(ClassifierSpec::DepthKnn { spec: DepthSpec::mahalanobis(), k });
    }
    roster.push(ClassifierSpec::DdExact { spec: DepthSpec::halfspace(), m: 1 });
    roster
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<(), LibError> {
    if args.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.workers)
            .build_global()
            .map_err(|e| LibError::InvalidInput(e.to_string()))?;
    }
    let mut manifest = RunManifest::new("benchmark", args.seed);
    let setup = SimulationSetup::from_index(args.setup)?;
    let betas: Vec<f64> =
        if args.beta.is_empty() { DEFAULT_BETA_GRID.to_vec() } else { args.beta.clone() };
    let mut roster = default_roster(args.n_train, &betas);
    if !args.methods.is_empty() {
        roster.retain(|spec| args.methods.iter().any(|m| spec.name().starts_with(m.as_str())));
        if roster.is_empty() {
            return Err(LibError::InvalidInput(format!(
                "no methods match {:?}",
                args.methods
            )));
        }
    }
    let config = BenchmarkConfig {
        setup,
        classifiers: roster,
        n_train: args.n_train,
        n_test: args.n_test,
        replications: args.replications,
        seed: RngSeed::new(args.seed, 0),
    };
    let report = run_benchmark(&config)?;
    fs::create_dir_all(&args.out)?;
    let rows_path = args.out.join("rows.csv");
    let file = fs::File::create(&rows_path)?;
    report.write_rows_csv(file)?;
    let summary_path = args.out.join("summary.json");
    let json = serde_json::to_string_pretty(&report.summaries)
        .map_err(|e| LibError::InvalidInput(e.to_string()))?;
    fs::write(&summary_path, json + "\n")?;
    for s in &report.summaries {
        println!(
            "{}: mean error {:.2}% (se {:.2}, {} completed, {} failures)",
            s.classifier, s.mean_error_percent, s.std_error_percent, s.completed, s.failures
        );
    }
    manifest.write_next_to(&rows_path)?;
    manifest.write_next_to(&summary_path)
}

fn cmd_cv(args: CvArgs) -> Result<(), LibError> {
    let mut manifest = RunManifest::new("cv", args.seed);
    manifest.record_input(&args.train)?;
    let train = load_labeled(&args.train, args.format, args.header)?;
    let family = match args.family {
        FamilyArg::Knn => KnnFamily::Euclidean,
        FamilyArg::Knnaff => KnnFamily::Affine,
        FamilyArg::Dknn => KnnFamily::Depth(args.depth.spec()),
    };
    let grid =
        if args.grid.is_empty() { default_cv_grid(train.len()) } else { args.grid.clone() };
    let cv = loocv_select_k(&train, &family, &grid, RngSeed::new(args.seed, 0))?;
    let json =
        serde_json::to_string_pretty(&cv).map_err(|e| LibError::InvalidInput(e.to_string()))?;
    fs::write(&args.out, json + "\n")?;
    println!("best k = {} (errors {:?})", cv.best_k, cv.errors);
    manifest.write_next_to(&args.out)
}

fn cmd_fetch(args: FetchArgs) -> Result<(), LibError> {
    let dir = data_dir(&args.data_dir);
    fs::create_dir_all(&dir)?;
    let mut files = Vec::new();
    match args.dataset.as_str() {
        "ripley" => files.extend(RIPLEY_FILES),
        "transfusion" => files.extend(TRANSFUSION_FILES),
        "all" => {
            files.extend(RIPLEY_FILES);
            files.extend(TRANSFUSION_FILES);
        }
        other => {
            return Err(LibError::InvalidInput(format!(
                "unknown dataset {other:?} (ripley, transfusion, all)"
            )))
        }
    }
    for f in files {
        let target = dir.join(f.filename);
        if !target.exists() {
            if args.offline {
                return Err(LibError::InvalidInput(format!(
                    "{} missing and --offline was given; download it from {} manually",
                    target.display(),
                    f.url
                )));
            }
            println!("fetching {} -> {}", f.url, target.display());
            let status = std::process::Command::new("curl")
                .args(["--fail", "--silent", "--show-error", "--location", "-o"])
                .arg(&target)
                .arg(f.url)
                .status()?;
            if !status.success() {
                let _ = fs::remove_file(&target);
                return Err(LibError::InvalidInput(format!(
                    "download of {} failed; fetch it manually into {}",
                    f.url,
                    dir.display()
                )));
            }
        }
        let digest = depthnn::ingest::verify_or_record_checksum(&target)?;
        println!("{}: sha256 {digest}", target.display());
    }
    // schema validation
    match args.dataset.as_str() {
        "ripley" => {
            load_ripley(&dir.join("synth.tr"), &dir.join("synth.te"))?;
        }
        "transfusion" => {
            load_transfusion(&dir.join("transfusion.data"))?;
        }
        _ => {
            load_ripley(&dir.join("synth.tr"), &dir.join("synth.te"))?;
            let sample = load_transfusion(&dir.join("transfusion.data"))?;
            // smoke-check the canonical partition sizes
            let (train, test) = partition(&sample, (100, 400), RngSeed::new(0, 0))?;
            assert_eq!(train.len() + test.len(), 748);
        }
    }
    println!("datasets ready in {}", dir.display());
    Ok(())
}

fn cmd_replay(args: ReplayArgs) -> Result<(), LibError> {
    let text = fs::read_to_string(&args.manifest)?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| LibError::Validation(e.to_string()))?;
    let mut argv = vec!["depthnn".to_string()];
    argv.extend(manifest.args.clone());
    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| LibError::Validation(format!("manifest args unparsable: {e}")))?;
    dispatch(cli.command)
}
