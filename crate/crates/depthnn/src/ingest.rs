//! Real-data ingestion: the Ripley synthetic benchmark and the blood
//! transfusion dataset, with schema validation, checksum recording, and
//! stratified train/test partitioning.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngSeed;
use crate::sample::{LabeledSample, Point};

/// A downloadable dataset: file names relative to the data directory plus
/// their source URLs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetFile {
    pub filename: &'static str,
    pub url: &'static str,
}

/// Ripley's synthetic two-class benchmark: 250 training and 1000 test
/// observations in two dimensions, balanced classes.
pub const RIPLEY_FILES: [DatasetFile; 2] = [
    DatasetFile {
        filename: "synth.tr",
        url: "https://www.stats.ox.ac.uk/pub/PRNN/synth.tr",
    },
    DatasetFile {
        filename: "synth.te",
        url: "https://www.stats.ox.ac.uk/pub/PRNN/synth.te",
    },
];

/// The blood transfusion service center dataset: 748 donors, 4 recorded
/// covariates, binary March-2007 donation outcome.
pub const TRANSFUSION_FILES: [DatasetFile; 1] = [DatasetFile {
    filename: "transfusion.data",
    url: "https://archive.ics.uci.edu/ml/machine-learning-databases/blood-transfusion/transfusion.data",
}];

/// Hex SHA-256 digest of a file.
pub fn sha256_hex(path: &Path) -> Result<String> {
    use sha2::{Digest, Sha256};
    let mut file = fs::File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 8192];
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

fn checksum_sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".sha256");
    PathBuf::from(s)
}

/// Trust-on-first-use integrity check: the first successful load records
/// the file's SHA-256 digest in a `.sha256` sidecar; later loads fail if
/// the digest changed.
pub fn verify_or_record_checksum(path: &Path) -> Result<String> {
    let digest = sha256_hex(path)?;
    let sidecar = checksum_sidecar(path);
    if sidecar.exists() {
        let recorded = fs::read_to_string(&sidecar)?;
        let recorded = recorded.trim();
        if recorded != digest {
            return Err(Error::Validation(format!(
                "checksum mismatch for {}: recorded {recorded}, computed {digest}",
                path.display()
            )));
        }
    } else {
        fs::write(&sidecar, format!("{digest}\n"))?;
    }
    Ok(digest)
}

/// Parse one of Ripley's whitespace-separated files: a header line, then
/// rows of `xs ys yc` with `yc` in {0, 1}.
fn read_ripley_file(path: &Path, expected_rows: usize) -> Result<LabeledSample> {
    let text = fs::read_to_string(path)?;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if lineno == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            continue; // header line
        }
        if fields.len() != 3 {
            return Err(Error::Validation(format!(
                "{}:{}: expected 3 fields, got {}",
                path.display(),
                lineno + 1,
                fields.len()
            )));
        }
        let xs: f64 = fields[0]
            .parse()
            .map_err(|_| Error::Validation(format!("{}:{}: bad xs", path.display(), lineno + 1)))?;
        let ys: f64 = fields[1]
            .parse()
            .map_err(|_| Error::Validation(format!("{}:{}: bad ys", path.display(), lineno + 1)))?;
        let label: u8 = match fields[2] {
            "0" => 0,
            "1" => 1,
            other => {
                return Err(Error::Validation(format!(
                    "{}:{}: label must be 0 or 1, got {other}",
                    path.display(),
                    lineno + 1
                )))
            }
        };
        points.push(Point::new(vec![xs, ys])?);
        labels.push(label);
    }
    if points.len() != expected_rows {
        return Err(Error::Validation(format!(
            "{}: expected {expected_rows} observations, got {}",
            path.display(),
            points.len()
        )));
    }
    let sample = LabeledSample::new(points, labels)?;
    let ones = sample.class_count(1);
    if ones * 2 != expected_rows {
        return Err(Error::Validation(format!(
            "{}: expected balanced classes, got {ones} of {expected_rows} in class 1",
            path.display()
        )));
    }
    Ok(sample)
}

/// Parse a Ripley-format file with an explicit expected row count (for
/// non-canonical fixtures); classes must be balanced.
pub fn read_ripley_sized(path: &Path, expected_rows: usize) -> Result<LabeledSample> {
    read_ripley_file(path, expected_rows)
}

/// Load the Ripley synthetic benchmark from its two canonical files,
/// returning `(train, test)` with 250 and 1000 observations.
pub fn load_ripley(train_path: &Path, test_path: &Path) -> Result<(LabeledSample, LabeledSample)> {
    verify_or_record_checksum(train_path)?;
    verify_or_record_checksum(test_path)?;
    Ok((read_ripley_file(train_path, 250)?, read_ripley_file(test_path, 1000)?))
}

/// Load the transfusion dataset from its CSV file. Columns are located by
/// header keywords, so permuted column orders load identically. The
/// Monetary column is validated to be exactly 250 times Frequency (it is a
/// deterministic multiple, so it carries no information) and dropped,
/// leaving the three covariates Recency, Frequency, and Time.
pub fn load_transfusion(path: &Path) -> Result<LabeledSample> {
    verify_or_record_checksum(path)?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |keyword: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h.trim().to_ascii_lowercase().starts_with(keyword))
            .ok_or_else(|| {
                Error::Validation(format!(
                    "{}: no column header starting with {keyword:?}",
                    path.display()
                ))
            })
    };
    let col_recency = find("recency")?;
    let col_frequency = find("frequency")?;
    let col_monetary = find("monetary")?;
    let col_time = find("time")?;
    let col_label = find("whether")?;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 5 {
            return Err(Error::Validation(format!(
                "{} row {}: expected 5 fields, got {}",
                path.display(),
                row + 1,
                record.len()
            )));
        }
        let parse = |i: usize| -> Result<f64> {
            record[i].trim().parse::<f64>().map_err(|_| {
                Error::Validation(format!(
                    "{} row {}: field {} is not numeric: {:?}",
                    path.display(),
                    row + 1,
                    i + 1,
                    &record[i]
                ))
            })
        };
        let recency = parse(col_recency)?;
        let frequency = parse(col_frequency)?;
        let monetary = parse(col_monetary)?;
        let time = parse(col_time)?;
        if monetary != 250.0 * frequency {
            return Err(Error::Validation(format!(
                "{} row {}: Monetary {} is not 250 x Frequency {}",
                path.display(),
                row + 1,
                monetary,
                frequency
            )));
        }
        let label = match record[col_label].trim() {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(Error::Validation(format!(
                    "{} row {}: label must be 0 or 1, got {other}",
                    path.display(),
                    row + 1
                )))
            }
        };
        points.push(Point::new(vec![recency, frequency, time])?);
        labels.push(label);
    }
    if points.len() != 748 {
        return Err(Error::Validation(format!(
            "{}: expected 748 observations, got {}",
            path.display(),
            points.len()
        )));
    }
    let sample = LabeledSample::new(points, labels)?;
    let (ones, zeros) = (sample.class_count(1), sample.class_count(0));
    if ones != 178 || zeros != 570 {
        return Err(Error::Validation(format!(
            "{}: expected class sizes 570/178, got {zeros}/{ones}",
            path.display()
        )));
    }
    Ok(sample)
}

/// Read a generic labeled CSV: `dim` feature columns followed by a 0/1
/// label column.
pub fn read_labeled_csv(path: &Path, has_headers: bool) -> Result<LabeledSample> {
    let mut reader = csv::ReaderBuilder::new().has_headers(has_headers).from_path(path)?;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::Validation(format!(
                "{} row {}: need at least one feature and a label",
                path.display(),
                row + 1
            )));
        }
        let d = record.len() - 1;
        let mut coords = Vec::with_capacity(d);
        for i in 0..d {
            coords.push(record[i].trim().parse::<f64>().map_err(|_| {
                Error::Validation(format!(
                    "{} row {}: field {} is not numeric",
                    path.display(),
                    row + 1,
                    i + 1
                ))
            })?);
        }
        let label = match record[d].trim() {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(Error::Validation(format!(
                    "{} row {}: label must be 0 or 1, got {other}",
                    path.display(),
                    row + 1
                )))
            }
        };
        points.push(Point::new(coords)?);
        labels.push(label);
    }
    LabeledSample::new(points, labels)
}

/// Read unlabeled query points from a CSV: all columns are features.
pub fn read_points_csv(path: &Path, has_headers: bool) -> Result<Vec<Point>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(has_headers).from_path(path)?;
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let mut coords = Vec::with_capacity(record.len());
        for (i, field) in record.iter().enumerate() {
            coords.push(field.trim().parse::<f64>().map_err(|_| {
                Error::Validation(format!(
                    "{} row {}: field {} is not numeric",
                    path.display(),
                    row + 1,
                    i + 1
                ))
            })?);
        }
        points.push(Point::new(coords)?);
    }
    if points.is_empty() {
        return Err(Error::Validation(format!("{}: no query points", path.display())));
    }
    Ok(points)
}

/// Stratified random partition with explicit per-class training sizes
/// `(n1_train, n0_train)` (class 1 first, matching "100 donors and 400
/// non-donors"). Within each class the training subset is a seeded uniform
/// draw; the test set is the complement. Both returned samples keep the
/// original observation order.
pub fn partition(
    sample: &LabeledSample,
    class_sizes: (usize, usize),
    seed: RngSeed,
) -> Result<(LabeledSample, LabeledSample)> {
    let (n1_train, n0_train) = class_sizes;
    let n = sample.len();
    let ones: Vec<usize> = (0..n).filter(|&i| sample.label(i) == 1).collect();
    let zeros: Vec<usize> = (0..n).filter(|&i| sample.label(i) == 0).collect();
    if n1_train == 0 || n1_train >= ones.len() || n0_train == 0 || n0_train >= zeros.len() {
        return Err(Error::InvalidInput(format!(
            "requested class sizes ({n1_train}, {n0_train}) infeasible for class counts ({}, {})",
            ones.len(),
            zeros.len()
        )));
    }
    let mut rng = seed.rng();
    let mut ones_shuffled = ones.clone();
    ones_shuffled.shuffle(&mut rng);
    let mut zeros_shuffled = zeros.clone();
    zeros_shuffled.shuffle(&mut rng);
    let mut train_idx: Vec<usize> = ones_shuffled[..n1_train]
        .iter()
        .chain(zeros_shuffled[..n0_train].iter())
        .copied()
        .collect();
    train_idx.sort_unstable();
    let in_train: std::collections::HashSet<usize> = train_idx.iter().copied().collect();
    let test_idx: Vec<usize> = (0..n).filter(|i| !in_train.contains(i)).collect();
    Ok((sample.subset(&train_idx)?, sample.subset(&test_idx)?))
}
