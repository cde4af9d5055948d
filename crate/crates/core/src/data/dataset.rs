use std::io::{Read, Write};
use std::ops::Range;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::facies::FaciesLabel;
use crate::error::{Error, Result};

/// Required CSV columns, in canonical order (case-sensitive).
pub const REQUIRED_COLUMNS: [&str; 10] = [
    "Facies",
    "Well Name",
    "Depth",
    "GR",
    "ILD_log10",
    "DeltaPHI",
    "PHIND",
    "PE",
    "NM_M",
    "RELPOS",
];

/// One depth sample from a wireline log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WellLogRecord {
    pub facies: FaciesLabel,
    pub well: String,
    /// Measurement depth in feet.
    pub depth: f64,
    /// Gamma ray, API units.
    pub gr: f64,
    /// log10 of formation resistivity.
    pub ild_log10: f64,
    /// Neutron-density porosity difference, percent.
    pub delta_phi: f64,
    /// Average neutron-density porosity, percent. Always > 0.
    pub phind: f64,
    /// Photoelectric factor, barns/electron.
    pub pe: f64,
    /// Nonmarine/marine indicator, 1 or 2.
    pub nm_m: u8,
    /// Relative position within the layer, (0, 1].
    pub relpos: f64,
}

/// A validated well-log dataset: records grouped by well (in order of first
/// appearance) and sorted by ascending depth within each well.
#[derive(Debug, Clone)]
pub struct Dataset {
    records: Vec<WellLogRecord>,
    wells: Vec<String>,
    source_name: String,
    ignored_columns: Vec<String>,
}

impl Dataset {
    /// Build a dataset from records: groups by well, stable-sorts by depth,
    /// and validates every record.
    ///
    /// Duplicate `(well, depth)` pairs are kept (the canonical contest file
    /// contains a few) but logged as warnings; the stable sort preserves
    /// their input order.
    pub fn from_records(
        records: impl IntoIterator<Item = WellLogRecord>,
        source_name: impl Into<String>,
    ) -> Result<Dataset> {
        let records: Vec<WellLogRecord> = records.into_iter().collect();
        for (i, r) in records.iter().enumerate() {
            validate_record(r, i + 1)?;
        }

        let mut wells: Vec<String> = Vec::new();
        for r in &records {
            if !wells.iter().any(|w| w == &r.well) {
                wells.push(r.well.clone());
            }
        }

        let mut grouped: Vec<WellLogRecord> = Vec::with_capacity(records.len());
        for well in &wells {
            let mut chunk: Vec<WellLogRecord> =
                records.iter().filter(|r| &r.well == well).cloned().collect();
            chunk.sort_by(|a, b| a.depth.total_cmp(&b.depth));
            for pair in chunk.windows(2) {
                if pair[0].depth == pair[1].depth {
                    log::warn!(
                        "well {well:?}: duplicate depth {} kept in input order",
                        pair[0].depth
                    );
                }
            }
            grouped.extend(chunk);
        }

        Ok(Dataset {
            records: grouped,
            wells,
            source_name: source_name.into(),
            ignored_columns: Vec::new(),
        })
    }

    pub fn records(&self) -> &[WellLogRecord] {
        &self.records
    }

    pub fn wells(&self) -> &[String] {
        &self.wells
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    /// Header columns present in the source but not part of the schema.
    pub fn ignored_columns(&self) -> &[String] {
        &self.ignored_columns
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Contiguous record range of each well, in well order.
    pub fn well_spans(&self) -> Vec<(&str, Range<usize>)> {
        let mut spans = Vec::with_capacity(self.wells.len());
        let mut start = 0;
        for well in &self.wells {
            let end = self.records[start..]
                .iter()
                .position(|r| &r.well != well)
                .map_or(self.records.len(), |p| start + p);
            spans.push((well.as_str(), start..end));
            start = end;
        }
        spans
    }

    /// Write the dataset as CSV with the canonical schema columns.
    ///
    /// Floats are formatted with shortest round-trip precision, so parsing
    /// the output reproduces the dataset field for field.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(REQUIRED_COLUMNS)?;
        for r in &self.records {
            w.write_record([
                r.facies.code().to_string(),
                r.well.clone(),
                r.depth.to_string(),
                r.gr.to_string(),
                r.ild_log10.to_string(),
                r.delta_phi.to_string(),
                r.phind.to_string(),
                r.pe.to_string(),
                r.nm_m.to_string(),
                r.relpos.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn validate_record(r: &WellLogRecord, row: usize) -> Result<()> {
    if r.nm_m != 1 && r.nm_m != 2 {
        return Err(Error::InvalidRecord {
            row,
            message: format!("NM_M must be 1 or 2, got {}", r.nm_m),
        });
    }
    if !(r.phind > 0.0) {
        return Err(Error::InvalidRecord {
            row,
            message: format!("PHIND must be > 0, got {}", r.phind),
        });
    }
    for (name, v) in [
        ("Depth", r.depth),
        ("GR", r.gr),
        ("ILD_log10", r.ild_log10),
        ("DeltaPHI", r.delta_phi),
        ("PHIND", r.phind),
        ("PE", r.pe),
        ("RELPOS", r.relpos),
    ] {
        if !v.is_finite() {
            return Err(Error::InvalidRecord {
                row,
                message: format!("{name} is not finite ({v})"),
            });
        }
    }
    Ok(())
}

/// Parse a well-log CSV stream into a validated [`Dataset`].
///
/// The header must contain every column in [`REQUIRED_COLUMNS`]; extra
/// columns (the contest file carries a `Formation` column) are ignored with
/// a warning. Row numbers in errors are 1-based data rows, header excluded.
pub fn parse_dataset<R: Read>(reader: R, source_name: impl Into<String>) -> Result<Dataset> {
    let source_name = source_name.into();
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = csv_reader.headers()?.clone();
    let mut column_index = Vec::with_capacity(REQUIRED_COLUMNS.len());
    for required in REQUIRED_COLUMNS {
        let idx = headers
            .iter()
            .position(|h| h == required)
            .ok_or_else(|| Error::MissingColumn {
                column: required.to_string(),
            })?;
        column_index.push(idx);
    }
    let ignored: Vec<String> = headers
        .iter()
        .filter(|h| !REQUIRED_COLUMNS.contains(h))
        .map(|h| h.to_string())
        .collect();
    for col in &ignored {
        log::warn!("ignoring unknown column {col:?} in {source_name}");
    }

    let mut records = Vec::new();
    for (i, row) in csv_reader.records().enumerate() {
        let row = row?;
        let data_row = i + 1;
        let field = |slot: usize| -> &str { row.get(column_index[slot]).unwrap_or("") };
        let numeric = |slot: usize| -> Result<f64> {
            let raw = field(slot);
            raw.parse::<f64>().map_err(|_| Error::NonNumeric {
                row: data_row,
                column: REQUIRED_COLUMNS[slot].to_string(),
                value: raw.to_string(),
            })
        };
        let integer = |slot: usize| -> Result<i64> {
            let raw = field(slot);
            raw.parse::<i64>()
                .or_else(|_| {
                    // tolerate "1.0"-style integers
                    raw.parse::<f64>()
                        .map_err(|_| ())
                        .and_then(|v| if v.fract() == 0.0 { Ok(v as i64) } else { Err(()) })
                })
                .map_err(|_| Error::NonNumeric {
                    row: data_row,
                    column: REQUIRED_COLUMNS[slot].to_string(),
                    value: raw.to_string(),
                })
        };

        let facies_code = integer(0)?;
        let facies = u8::try_from(facies_code)
            .ok()
            .and_then(FaciesLabel::from_code)
            .ok_or(Error::InvalidRecord {
                row: data_row,
                message: format!("facies code {facies_code} outside 1..=9"),
            })?;
        let nm_m_raw = integer(8)?;
        let nm_m = match nm_m_raw {
            1 => 1u8,
            2 => 2u8,
            other => {
                return Err(Error::InvalidRecord {
                    row: data_row,
                    message: format!("NM_M must be 1 or 2, got {other}"),
                })
            }
        };
        let phind = numeric(6)?;
        if !(phind > 0.0) {
            return Err(Error::InvalidRecord {
                row: data_row,
                message: format!("PHIND must be > 0, got {phind}"),
            });
        }

        records.push(WellLogRecord {
            facies,
            well: field(1).to_string(),
            depth: numeric(2)?,
            gr: numeric(3)?,
            ild_log10: numeric(4)?,
            delta_phi: numeric(5)?,
            phind,
            pe: numeric(7)?,
            nm_m,
            relpos: numeric(9)?,
        });
    }

    let mut dataset = Dataset::from_records(records, source_name)?;
    dataset.ignored_columns = ignored;
    Ok(dataset)
}

/// Parse a well-log CSV file; the file name becomes the dataset source name.
pub fn parse_dataset_file(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| {
        std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))
    })?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_dataset(std::io::BufReader::new(file), name)
}

/// Split off one well as a blind holdout. Returns `(rest, blind)`.
pub fn split_blind(dataset: &Dataset, blind_well: &str) -> Result<(Dataset, Dataset)> {
    if !dataset.wells.iter().any(|w| w == blind_well) {
        return Err(Error::UnknownWell {
            name: blind_well.to_string(),
            available: dataset.wells.clone(),
        });
    }
    let (blind, rest): (Vec<_>, Vec<_>) = dataset
        .records
        .iter()
        .cloned()
        .partition(|r| r.well == blind_well);
    Ok((
        Dataset::from_records(rest, dataset.source_name.clone())?,
        Dataset::from_records(blind, dataset.source_name.clone())?,
    ))
}

/// Boolean mask marking `ceil(n * fraction)` validation rows chosen by a
/// deterministic generator seeded from `seed` alone.
pub fn validation_mask(n: usize, fraction: f64, seed: u64) -> Result<Vec<bool>> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidFraction { fraction });
    }
    let n_validation = ((fraction * n as f64).ceil() as usize).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mask = vec![false; n];
    for i in rand::seq::index::sample(&mut rng, n, n_validation) {
        mask[i] = true;
    }
    Ok(mask)
}

/// Uniform random row-level split into `(train, validation)`.
///
/// The validation part receives `ceil(n * fraction)` rows chosen by a
/// deterministic generator seeded from `seed` alone.
pub fn train_validation_split(
    dataset: &Dataset,
    validation_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    let in_validation = validation_mask(dataset.len(), validation_fraction, seed)?;
    let mut train = Vec::new();
    let mut validation = Vec::new();
    for (i, r) in dataset.records.iter().enumerate() {
        if in_validation[i] {
            validation.push(r.clone());
        } else {
            train.push(r.clone());
        }
    }
    Ok((
        Dataset::from_records(train, dataset.source_name.clone())?,
        Dataset::from_records(validation, dataset.source_name.clone())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn record(well: &str, depth: f64, facies: u8) -> WellLogRecord {
        WellLogRecord {
            facies: FaciesLabel::from_code(facies).unwrap(),
            well: well.to_string(),
            depth,
            gr: 60.0 + depth * 0.01,
            ild_log10: 0.5,
            delta_phi: 4.0,
            phind: 12.0,
            pe: 3.5,
            nm_m: 1,
            relpos: 0.5,
        }
    }

    fn toy_csv() -> &'static str {
        "Facies,Formation,Well Name,Depth,GR,ILD_log10,DeltaPHI,PHIND,PE,NM_M,RELPOS\n\
         3,A1 SH,ALPHA,100.0,77.45,0.664,9.9,11.915,4.6,1,1.0\n\
         3,A1 SH,ALPHA,100.5,78.26,0.661,14.2,12.565,4.1,1,0.979\n\
         2,A1 SH,BETA,90.0,79.05,0.658,14.8,13.05,3.6,2,0.957\n"
    }

    #[test]
    fn parses_and_ignores_extra_columns() {
        let ds = parse_dataset(toy_csv().as_bytes(), "toy").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.wells(), ["ALPHA".to_string(), "BETA".to_string()]);
        assert_eq!(ds.ignored_columns(), ["Formation".to_string()]);
        assert_eq!(ds.records()[0].gr, 77.45);
    }

    #[test]
    fn missing_column_names_the_column() {
        let csv = "Facies,Well Name,Depth,GR,ILD_log10,DeltaPHI,PE,NM_M,RELPOS\n";
        let err = parse_dataset(csv.as_bytes(), "toy").unwrap_err();
        match err {
            Error::MissingColumn { column } => assert_eq!(column, "PHIND"),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn facies_out_of_range_cites_row_and_value() {
        let csv = toy_csv().replace("2,A1 SH,BETA", "10,A1 SH,BETA");
        let err = parse_dataset(csv.as_bytes(), "toy").unwrap_err();
        match err {
            Error::InvalidRecord { row, message } => {
                assert_eq!(row, 3);
                assert!(message.contains("10"), "message: {message}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn non_numeric_value_cites_row_and_column() {
        let csv = toy_csv().replace("79.05", "oops");
        let err = parse_dataset(csv.as_bytes(), "toy").unwrap_err();
        match err {
            Error::NonNumeric { row, column, value } => {
                assert_eq!((row, column.as_str(), value.as_str()), (3, "GR", "oops"));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn non_positive_phind_rejected() {
        let csv = toy_csv().replace("13.05", "0.0");
        let err = parse_dataset(csv.as_bytes(), "toy").unwrap_err();
        assert!(matches!(err, Error::InvalidRecord { row: 3, .. }));
    }

    #[test]
    fn records_sorted_by_depth_within_well() {
        let records = vec![
            record("W", 3.0, 1),
            record("W", 1.0, 2),
            record("V", 5.0, 3),
            record("W", 2.0, 4),
        ];
        let ds = Dataset::from_records(records, "toy").unwrap();
        let depths: Vec<f64> = ds.records().iter().map(|r| r.depth).collect();
        assert_eq!(depths, [1.0, 2.0, 3.0, 5.0]);
        assert_eq!(ds.wells(), ["W".to_string(), "V".to_string()]);
        let spans = ds.well_spans();
        assert_eq!(spans[0], ("W", 0..3));
        assert_eq!(spans[1], ("V", 3..4));
    }

    #[test]
    fn duplicate_depths_kept_in_input_order() {
        let mut a = record("W", 1.0, 1);
        a.nm_m = 2;
        let b = record("W", 1.0, 1);
        let ds = Dataset::from_records(vec![a, b], "toy").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.records()[0].nm_m, 2);
        assert_eq!(ds.records()[1].nm_m, 1);
    }

    #[test]
    fn split_blind_partitions_records() {
        let ds = parse_dataset(toy_csv().as_bytes(), "toy").unwrap();
        let (rest, blind) = split_blind(&ds, "BETA").unwrap();
        assert_eq!(rest.len() + blind.len(), ds.len());
        assert_eq!(blind.wells(), ["BETA".to_string()]);
        assert!(rest.wells().iter().all(|w| w != "BETA"));
    }

    #[test]
    fn split_blind_single_well_degenerate() {
        let ds = Dataset::from_records(vec![record("ONLY", 1.0, 1)], "toy").unwrap();
        let (rest, blind) = split_blind(&ds, "ONLY").unwrap();
        assert!(rest.is_empty());
        assert_eq!(blind.len(), 1);
    }

    #[test]
    fn split_blind_unknown_well_lists_available() {
        let ds = parse_dataset(toy_csv().as_bytes(), "toy").unwrap();
        match split_blind(&ds, "NOSUCHWELL").unwrap_err() {
            Error::UnknownWell { name, available } => {
                assert_eq!(name, "NOSUCHWELL");
                assert_eq!(available, ["ALPHA".to_string(), "BETA".to_string()]);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn validation_split_sizes_and_determinism() {
        let records: Vec<WellLogRecord> =
            (0..100).map(|i| record("W", i as f64, 1 + (i % 9) as u8)).collect();
        let ds = Dataset::from_records(records, "toy").unwrap();
        let (train_a, val_a) = train_validation_split(&ds, 0.05, 42).unwrap();
        assert_eq!(val_a.len(), 5);
        assert_eq!(train_a.len(), 95);
        let (train_b, val_b) = train_validation_split(&ds, 0.05, 42).unwrap();
        assert_eq!(train_a.records(), train_b.records());
        assert_eq!(val_a.records(), val_b.records());
        let (_, val_c) = train_validation_split(&ds, 0.05, 43).unwrap();
        assert_ne!(val_a.records(), val_c.records());
    }

    #[test]
    fn validation_split_rejects_bad_fraction() {
        let ds = Dataset::from_records(vec![record("W", 1.0, 1)], "toy").unwrap();
        assert!(matches!(
            train_validation_split(&ds, 1.5, 42),
            Err(Error::InvalidFraction { .. })
        ));
        assert!(matches!(
            train_validation_split(&ds, 0.0, 42),
            Err(Error::InvalidFraction { .. })
        ));
    }

    #[test]
    fn csv_round_trip_is_identical(){
        let ds = parse_dataset(toy_csv().as_bytes(), "toy").unwrap();
        let mut out = Vec::new();
        ds.write_csv(&mut out).unwrap();
        let back = parse_dataset(out.as_slice(), "toy").unwrap();
        assert_eq!(ds.records(), back.records());
        assert_eq!(ds.wells(), back.wells());
    }
}
