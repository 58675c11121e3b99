//! Labeled datasets from delimited text or IDX binaries, and reproducible
//! class-pair extraction.

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::empirical::EmpiricalMeasure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFormat {
    Delimited,
    Idx,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    /// Row-major `n × dim` features.
    features: Vec<f64>,
    labels: Vec<i64>,
    dim: usize,
    pub source: PathBuf,
    pub format: SourceFormat,
}

impl LabeledDataset {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<i64>, source: PathBuf, format: SourceFormat) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::InvalidParameter(format!("{} rows but {} labels", rows.len(), labels.len())));
        }
        let dim = rows.first().map_or(0, Vec::len);
        let mut features = Vec::with_capacity(rows.len() * dim);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::Parse { line: i + 1, msg: format!("expected {dim} features, found {}", r.len()) });
            }
            if let Some(x) = r.iter().find(|x| !x.is_finite()) {
                return Err(Error::Parse { line: i + 1, msg: format!("non-finite feature {x}") });
            }
            features.extend(r);
        }
        Ok(Self { features, labels, dim, source, format })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn count(&self, label: i64) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

/// Layout of a delimited file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelimitedOptions {
    /// Zero-based column holding the integer label.
    pub label_column: usize,
    pub delimiter: u8,
    pub has_header: bool,
}

impl Default for DelimitedOptions {
    fn default() -> Self {
        Self { label_column: 0, delimiter: b',', has_header: false }
    }
}

pub fn load_delimited(path: impl AsRef<Path>, opts: &DelimitedOptions) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(opts.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_error)?;
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(k + 1, |p| p.line() as usize);
        if *width.get_or_insert(record.len()) != record.len() {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, found {}", width.unwrap_or(0), record.len()),
            });
        }
        let label = record
            .get(opts.label_column)
            .ok_or_else(|| Error::Parse { line, msg: format!("no label column {}", opts.label_column) })?;
        labels.push(parse_label(label).map_err(|msg| Error::Parse { line, msg })?);
        let mut row = Vec::with_capacity(record.len().saturating_sub(1));
        for (c, cell) in record.iter().enumerate() {
            if c == opts.label_column {
                continue;
            }
            row.push(
                cell.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("non-numeric cell `{cell}`") })?,
            );
        }
        rows.push(row);
    }
    LabeledDataset::new(rows, labels, path.to_path_buf(), SourceFormat::Delimited)
}

/// Feature-only file: every column is a coordinate.
pub fn load_points(path: impl AsRef<Path>, delimiter: u8, has_header: bool) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path.as_ref())
        .map_err(csv_error)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(k + 1, |p| p.line() as usize);
        if let Some(first) = rows.first() {
            if first.len() != record.len() {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {} fields, found {}", first.len(), record.len()),
                });
            }
        }
        let row = record
            .iter()
            .map(|cell| match cell.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(Error::Parse { line, msg: format!("non-numeric cell `{cell}`") }),
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    Ok(rows)
}

fn parse_label(s: &str) -> std::result::Result<i64, String> {
    if let Ok(v) = s.parse::<i64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v.fract() == 0.0 && v.abs() < 9.0e15 => Ok(v as i64),
        _ => Err(format!("label `{s}` is not an integer")),
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Parse { line, msg: format!("{kind:?}") },
    }
}

/// Writes `label, features...` rows; floats use the shortest representation
/// that parses back to the same value.
pub fn write_delimited(ds: &LabeledDataset, path: impl AsRef<Path>, delimiter: u8) -> Result<()> {
    let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_path(path).map_err(csv_error)?;
    for i in 0..ds.len() {
        let mut rec = vec![ds.labels[i].to_string()];
        rec.extend(ds.row(i).iter().map(|x| x.to_string()));
        w.write_record(&rec).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

const IDX_IMAGES: u32 = 0x0000_0803;
const IDX_LABELS: u32 = 0x0000_0801;

fn read_u32(r: &mut impl Read, what: &str) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|_| Error::Format(format!("truncated {what} header")))?;
    Ok(u32::from_be_bytes(b))
}

/// IDX image and label files; pixels are scaled to `[0, 1]`.
pub fn load_idx_images(images: impl AsRef<Path>, labels: impl AsRef<Path>) -> Result<LabeledDataset> {
    let images = images.as_ref();
    let mut ri = BufReader::new(File::open(images)?);
    let magic = read_u32(&mut ri, "image")?;
    if magic != IDX_IMAGES {
        return Err(Error::Format(format!("image file magic {magic:#010x}, expected {IDX_IMAGES:#010x}")));
    }
    let count = read_u32(&mut ri, "image")? as usize;
    let (h, w) = (read_u32(&mut ri, "image")? as usize, read_u32(&mut ri, "image")? as usize);

    let mut rl = BufReader::new(File::open(labels.as_ref())?);
    let magic = read_u32(&mut rl, "label")?;
    if magic != IDX_LABELS {
        return Err(Error::Format(format!("label file magic {magic:#010x}, expected {IDX_LABELS:#010x}")));
    }
    let nlab = read_u32(&mut rl, "label")? as usize;
    if nlab != count {
        return Err(Error::Format(format!("{count} images but {nlab} labels")));
    }
    let dim = h * w;
    let mut pixels = vec![0u8; count * dim];
    ri.read_exact(&mut pixels).map_err(|_| Error::Format("truncated image data".into()))?;
    let mut lab = vec![0u8; count];
    rl.read_exact(&mut lab).map_err(|_| Error::Format("truncated label data".into()))?;
    Ok(LabeledDataset {
        features: pixels.iter().map(|&p| f64::from(p) / 255.0).collect(),
        labels: lab.into_iter().map(i64::from).collect(),
        dim,
        source: images.to_path_buf(),
        format: SourceFormat::Idx,
    })
}

/// Writes IDX image and label files. Features must be multiples of 1/255
/// in `[0, 1]` and labels must fit in a byte; `rows × cols` must equal the
/// dataset dimension.
pub fn write_idx_images(
    ds: &LabeledDataset,
    rows: usize,
    cols: usize,
    images: impl AsRef<Path>,
    labels: impl AsRef<Path>,
) -> Result<()> {
    if rows * cols != ds.dim {
        return Err(Error::InvalidParameter(format!("{rows}x{cols} images do not match dimension {}", ds.dim)));
    }
    let header = |magic: u32, dims: &[usize]| -> Result<Vec<u8>> {
        let mut v = magic.to_be_bytes().to_vec();
        for &d in dims {
            let d = u32::try_from(d).map_err(|_| Error::InvalidParameter(format!("size {d} exceeds IDX range")))?;
            v.extend(d.to_be_bytes());
        }
        Ok(v)
    };
    let mut im = header(IDX_IMAGES, &[ds.len(), rows, cols])?;
    for &x in &ds.features {
        let p = (x * 255.0).round();
        if !(0.0..=255.0).contains(&p) || p / 255.0 != x {
            return Err(Error::InvalidParameter(format!("feature {x} is not a pixel value k/255")));
        }
        im.push(p as u8);
    }
    let mut lb = header(IDX_LABELS, &[ds.len()])?;
    for &l in &ds.labels {
        lb.push(u8::try_from(l).map_err(|_| Error::InvalidParameter(format!("label {l} does not fit in a byte")))?);
    }
    std::fs::write(images, im)?;
    std::fs::write(labels, lb)?;
    Ok(())
}

/// Two classes extracted from a dataset, with their source rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPair {
    pub class0: EmpiricalMeasure<f64>,
    pub class1: EmpiricalMeasure<f64>,
    pub rows0: Vec<usize>,
    pub rows1: Vec<usize>,
}

/// Uniform-weight measures on the rows labeled `a` and `b`. With
/// `n_per_class`, each class is reduced to that many rows by a seeded
/// shuffle; the kept rows stay in file order.
pub fn class_pair(ds: &LabeledDataset, a: i64, b: i64, n_per_class: Option<usize>, seed: u64) -> Result<ClassPair> {
    if a == b {
        return Err(Error::InvalidParameter(format!("class labels must differ, got {a} twice")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |label: i64| -> Result<Vec<usize>> {
        let mut rows: Vec<usize> = (0..ds.len()).filter(|&i| ds.labels[i] == label).collect();
        if rows.is_empty() {
            return Err(Error::InvalidParameter(format!("label {label} not present")));
        }
        if let Some(n) = n_per_class {
            if n == 0 || n > rows.len() {
                return Err(Error::InvalidParameter(format!(
                    "asked for {n} rows of label {label}, {} available",
                    rows.len()
                )));
            }
            rows.shuffle(&mut rng);
            rows.truncate(n);
            rows.sort_unstable();
        }
        Ok(rows)
    };
    let (rows0, rows1) = (pick(a)?, pick(b)?);
    let measure = |rows: &[usize]| EmpiricalMeasure::uniform(rows.iter().map(|&i| ds.row(i).to_vec()).collect());
    Ok(ClassPair { class0: measure(&rows0)?, class1: measure(&rows1)?, rows0, rows1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &tempfile::TempDir, name: &str, body: &[u8]) -> PathBuf {
        let p = dir.path().join(name);
        File::create(&p).unwrap().write_all(body).unwrap();
        p
    }

    #[test]
    fn delimited_toy_and_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "a.csv", b"1,0.5,2\n0,1.5,-3\n1,0,0\n");
        let ds = load_delimited(&p, &DelimitedOptions::default()).unwrap();
        assert_eq!((ds.len(), ds.dim()), (3, 2));
        assert_eq!(ds.labels(), &[1, 0, 1]);
        assert_eq!(ds.row(1), &[1.5, -3.0]);
        let p = write(&dir, "b.tsv", b"x\ty\tlabel\n0.1\t0.2\t7\n");
        let opts = DelimitedOptions { label_column: 2, delimiter: b'\t', has_header: true };
        let ds = load_delimited(&p, &opts).unwrap();
        assert_eq!((ds.labels(), ds.row(0)), (&[7i64][..], &[0.1, 0.2][..]));
    }

    #[test]
    fn delimited_errors_name_lines() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "r.csv", b"1,0.5,2\n0,1.5\n");
        match load_delimited(&p, &DelimitedOptions::default()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "n.csv", b"1,0.5\n0,abc\n");
        assert!(matches!(load_delimited(&p, &DelimitedOptions::default()), Err(Error::Parse { line: 2, .. })));
        let opts = DelimitedOptions { label_column: 5, ..Default::default() };
        assert!(load_delimited(&p, &opts).is_err());
    }

    #[test]
    fn feature_only_points() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "p.csv", b"0, 1\n2.5,-1\n");
        assert_eq!(load_points(&p, b',', false).unwrap(), vec![vec![0.0, 1.0], vec![2.5, -1.0]]);
        let p = write(&dir, "q.csv", b"0,1\n2\n");
        assert!(matches!(load_points(&p, b',', false), Err(Error::Parse { line: 2, .. })));
        let p = write(&dir, "e.csv", b"");
        assert!(load_points(&p, b',', false).is_err());
    }

    #[test]
    fn delimited_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let rows = vec![vec![0.1, 1.0 / 3.0, -2.5e-300], vec![f64::MAX, 1e-7, 0.0]];
        let ds = LabeledDataset::new(rows, vec![3, 5], PathBuf::new(), SourceFormat::Delimited).unwrap();
        let p = dir.path().join("rt.csv");
        write_delimited(&ds, &p, b',').unwrap();
        let back = load_delimited(&p, &DelimitedOptions::default()).unwrap();
        for i in 0..2 {
            assert_eq!(
                ds.row(i).iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
                back.row(i).iter().map(|x| x.to_bits()).collect::<Vec<_>>()
            );
        }
    }

    fn idx(count: u32, rows: u32, cols: u32, pixels: &[u8]) -> Vec<u8> {
        let mut v = Vec::new();
        for x in [IDX_IMAGES, count, rows, cols] {
            v.extend(x.to_be_bytes());
        }
        v.extend(pixels);
        v
    }

    fn idx_labels(labels: &[u8]) -> Vec<u8> {
        let mut v = Vec::new();
        v.extend(IDX_LABELS.to_be_bytes());
        v.extend((labels.len() as u32).to_be_bytes());
        v.extend(labels);
        v
    }

    #[test]
    fn idx_archive() {
        let dir = tempfile::tempdir().unwrap();
        let im = write(&dir, "im", &idx(2, 2, 2, &[0, 0, 0, 0, 255, 51, 0, 102]));
        let lb = write(&dir, "lb", &idx_labels(&[3, 5]));
        let ds = load_idx_images(&im, &lb).unwrap();
        assert_eq!((ds.len(), ds.dim()), (2, 4));
        assert_eq!(ds.row(0), &[0.0; 4]);
        assert_eq!(ds.row(1), &[1.0, 0.2, 0.0, 0.4]);
        let bad = write(&dir, "lb2", &idx_labels(&[3]));
        assert!(load_idx_images(&im, &bad).is_err());
        let short = write(&dir, "im2", &idx(2, 2, 2, &[0, 0, 0]));
        assert!(load_idx_images(&short, &lb).is_err());
        let magic = write(&dir, "im3", &idx_labels(&[1, 2]));
        assert!(load_idx_images(&magic, &lb).is_err());
    }

    #[test]
    fn class_pairs_are_seeded() {
        let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64]).collect();
        let labels: Vec<i64> = (0..40).map(|i| i % 3).collect();
        let ds = LabeledDataset::new(rows, labels, PathBuf::new(), SourceFormat::Delimited).unwrap();
        let all = class_pair(&ds, 0, 1, None, 0).unwrap();
        assert_eq!((all.class0.len(), all.class1.len()), (14, 13));
        let a = class_pair(&ds, 0, 1, Some(5), 42).unwrap();
        let b = class_pair(&ds, 0, 1, Some(5), 42).unwrap();
        assert_eq!(a, b);
        assert!(a.rows0.iter().all(|r| !a.rows1.contains(r)));
        assert!(class_pair(&ds, 0, 1, Some(14), 1).is_err());
        assert!(class_pair(&ds, 0, 9, None, 1).is_err());
    }
}
