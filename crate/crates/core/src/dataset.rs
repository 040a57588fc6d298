//! Typed tabular data model and CSV ingestion.
//!
//! A [`LabeledDataset`] owns a feature schema, a nominal class attribute and
//! a list of records. All types are immutable after construction; every
//! constructor validates the schema invariants (unique names, declared
//! nominal label sets, finite numerics).

use std::collections::HashSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Scalar;

/// Attribute kind: numeric, or nominal with a declared finite label set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttrKind {
    Numeric,
    Nominal(Vec<String>),
}

/// One column of the schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub kind: AttrKind,
}

impl Attribute {
    pub fn numeric(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: AttrKind::Numeric,
        }
    }

    pub fn nominal(name: impl Into<String>, labels: Vec<String>) -> Self {
        Self {
            name: name.into(),
            kind: AttrKind::Nominal(labels),
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, AttrKind::Numeric)
    }

    pub fn labels(&self) -> &[String] {
        match &self.kind {
            AttrKind::Nominal(labels) => labels,
            AttrKind::Numeric => &[],
        }
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }
}

/// A single cell: a numeric value or an index into the attribute's label set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Value<F> {
    Numeric(F),
    Nominal(usize),
}

impl<F: Scalar> Value<F> {
    pub fn as_numeric(&self) -> Option<F> {
        match self {
            Value::Numeric(v) => Some(*v),
            Value::Nominal(_) => None,
        }
    }

    pub fn as_nominal(&self) -> Option<usize> {
        match self {
            Value::Nominal(i) => Some(*i),
            Value::Numeric(_) => None,
        }
    }
}

/// One row: values aligned to the schema plus an optional class index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record<F> {
    pub values: Vec<Value<F>>,
    pub class: Option<usize>,
}

impl<F: Scalar> Record<F> {
    pub fn new(values: Vec<Value<F>>, class: Option<usize>) -> Self {
        Self { values, class }
    }
}

/// CSV ingestion options.
#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub class_column: String,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            class_column: "class".to_string(),
        }
    }
}

/// Immutable labeled dataset shared by every learner and evaluator.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<F> {
    attributes: Vec<Attribute>,
    class_attribute: Attribute,
    records: Vec<Record<F>>,
}

impl<F: Scalar> LabeledDataset<F> {
    /// Build a dataset, validating every schema and record invariant.
    pub fn new(
        attributes: Vec<Attribute>,
        class_attribute: Attribute,
        records: Vec<Record<F>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for attr in attributes.iter().chain(std::iter::once(&class_attribute)) {
            if attr.name.is_empty() {
                return Err(Error::InvalidData("empty attribute name".into()));
            }
            if !seen.insert(attr.name.clone()) {
                return Err(Error::InvalidData(format!(
                    "duplicate attribute name `{}`",
                    attr.name
                )));
            }
        }
        if class_attribute.is_numeric() {
            return Err(Error::InvalidData(
                "class attribute must be nominal".into(),
            ));
        }
        for attr in &attributes {
            if let AttrKind::Nominal(labels) = &attr.kind {
                validate_label_set(&attr.name, labels, false)?;
            }
        }
        // The class label set may be empty only for an empty dataset.
        validate_label_set(
            &class_attribute.name,
            class_attribute.labels(),
            records.is_empty(),
        )?;

        for (i, rec) in records.iter().enumerate() {
            if rec.values.len() != attributes.len() {
                return Err(Error::InvalidData(format!(
                    "record {i} has {} values, schema has {} attributes",
                    rec.values.len(),
                    attributes.len()
                )));
            }
            for (attr, value) in attributes.iter().zip(&rec.values) {
                match (&attr.kind, value) {
                    (AttrKind::Numeric, Value::Numeric(v)) => {
                        if !v.is_finite() {
                            return Err(Error::InvalidData(format!(
                                "record {i}, attribute `{}`: non-finite value",
                                attr.name
                            )));
                        }
                    }
                    (AttrKind::Nominal(labels), Value::Nominal(ix)) => {
                        if *ix >= labels.len() {
                            return Err(Error::InvalidData(format!(
                                "record {i}, attribute `{}`: label index {ix} out of range",
                                attr.name
                            )));
                        }
                    }
                    _ => {
                        return Err(Error::InvalidData(format!(
                            "record {i}, attribute `{}`: value kind does not match schema",
                            attr.name
                        )))
                    }
                }
            }
            if let Some(c) = rec.class {
                if c >= class_attribute.labels().len() {
                    return Err(Error::InvalidData(format!(
                        "record {i}: class index {c} out of range"
                    )));
                }
            }
        }

        Ok(Self {
            attributes,
            class_attribute,
            records,
        })
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn class_attribute(&self) -> &Attribute {
        &self.class_attribute
    }

    pub fn class_labels(&self) -> &[String] {
        self.class_attribute.labels()
    }

    pub fn n_classes(&self) -> usize {
        self.class_attribute.labels().len()
    }

    pub fn records(&self) -> &[Record<F>] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Per-class record counts, aligned to [`Self::class_labels`].
    /// Every record must be labeled.
    pub fn class_distribution(&self) -> Result<Vec<usize>> {
        let mut counts = vec![0usize; self.n_classes()];
        for (i, rec) in self.records.iter().enumerate() {
            match rec.class {
                Some(c) => counts[c] += 1,
                None => return Err(Error::UnlabeledRecord(i)),
            }
        }
        Ok(counts)
    }

    /// Partition records into (matching, non-matching); schemas unchanged.
    pub fn split_by_predicate<P>(&self, mut pred: P) -> (Self, Self)
    where
        P: FnMut(&Record<F>) -> bool,
    {
        let (yes, no): (Vec<_>, Vec<_>) =
            self.records.iter().cloned().partition(|r| pred(r));
        (self.with_records(yes), self.with_records(no))
    }

    /// Same schema, different record list. Records must already conform.
    pub fn with_records(&self, records: Vec<Record<F>>) -> Self {
        Self {
            attributes: self.attributes.clone(),
            class_attribute: self.class_attribute.clone(),
            records,
        }
    }

    /// Subset by record indices, preserving the given order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        self.with_records(indices.iter().map(|&i| self.records[i].clone()).collect())
    }

    /// Keep only the named feature columns (class attribute untouched).
    pub fn project(&self, feature_names: &[&str]) -> Result<Self> {
        let indices: Vec<usize> = feature_names
            .iter()
            .map(|name| {
                self.attributes
                    .iter()
                    .position(|a| a.name == *name)
                    .ok_or_else(|| Error::SchemaMismatch(format!("no attribute `{name}`")))
            })
            .collect::<Result<_>>()?;
        let attributes = indices
            .iter()
            .map(|&i| self.attributes[i].clone())
            .collect();
        let records = self
            .records
            .iter()
            .map(|r| Record::new(indices.iter().map(|&i| r.values[i]).collect(), r.class))
            .collect();
        Self::new(attributes, self.class_attribute.clone(), records)
    }

    /// Render the values of one nominal feature column as label strings.
    pub fn nominal_column(&self, name: &str) -> Result<Vec<String>> {
        let idx = self
            .attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::SchemaMismatch(format!("no attribute `{name}`")))?;
        let labels = self.attributes[idx].labels();
        self.records
            .iter()
            .map(|r| {
                r.values[idx]
                    .as_nominal()
                    .map(|i| labels[i].clone())
                    .ok_or_else(|| Error::SchemaMismatch(format!("attribute `{name}` is numeric")))
            })
            .collect()
    }

    /// Concatenate datasets with identical schemas (record order preserved).
    pub fn concat(sources: &[&Self]) -> Result<Self> {
        let first = sources
            .first()
            .ok_or_else(|| Error::InvalidData("concat of zero datasets".into()))?;
        let mut records = Vec::new();
        for ds in sources {
            if ds.attributes != first.attributes || ds.class_attribute != first.class_attribute {
                return Err(Error::SchemaMismatch(
                    "cannot concatenate datasets with different schemas".into(),
                ));
            }
            records.extend(ds.records.iter().cloned());
        }
        Ok(first.with_records(records))
    }

    /// Parse a CSV stream with header row; column kinds are inferred
    /// (numeric iff every row parses as a finite number). The named class
    /// column becomes the class attribute.
    pub fn parse_csv<R: Read>(reader: R, options: &CsvOptions) -> Result<Self> {
        let (header, rows) = read_raw_csv(reader, options.delimiter)?;
        let class_idx = header
            .iter()
            .position(|h| h == &options.class_column)
            .ok_or_else(|| Error::MissingClassColumn(options.class_column.clone()))?;

        let mut attributes = Vec::new();
        let mut feature_cols = Vec::new();
        for (col, name) in header.iter().enumerate() {
            if col == class_idx {
                continue;
            }
            let kind = infer_column_kind::<F>(name, col, &rows)?;
            attributes.push(Attribute {
                name: name.clone(),
                kind,
            });
            feature_cols.push(col);
        }

        let class_labels = distinct_labels(&rows, class_idx);
        let class_attribute = Attribute::nominal(header[class_idx].clone(), class_labels);

        let records = rows
            .iter()
            .map(|(line, row)| {
                let values = feature_cols
                    .iter()
                    .zip(&attributes)
                    .map(|(&col, attr)| parse_value::<F>(&row[col], attr, *line))
                    .collect::<Result<Vec<_>>>()?;
                let class = class_attribute
                    .label_index(&row[class_idx])
                    .expect("class labels were collected from these rows");
                Ok(Record::new(values, Some(class)))
            })
            .collect::<Result<Vec<_>>>()?;

        Self::new(attributes, class_attribute, records)
    }

    /// Parse a CSV stream against a known schema (columns matched by name;
    /// the class column is optional — absent means unlabeled records).
    pub fn parse_csv_with_schema<R: Read>(
        reader: R,
        attributes: &[Attribute],
        class_attribute: &Attribute,
        options: &CsvOptions,
    ) -> Result<Self> {
        let (header, rows) = read_raw_csv(reader, options.delimiter)?;
        let col_of = |name: &str| header.iter().position(|h| h == name);

        let feature_cols: Vec<usize> = attributes
            .iter()
            .map(|a| {
                col_of(&a.name)
                    .ok_or_else(|| Error::SchemaMismatch(format!("missing column `{}`", a.name)))
            })
            .collect::<Result<_>>()?;
        let class_col = col_of(&class_attribute.name);

        // The header must be exactly the schema columns, each matched once.
        let mut used = vec![false; header.len()];
        for &c in &feature_cols {
            used[c] = true;
        }
        if let Some(c) = class_col {
            used[c] = true;
        }
        if let Some(pos) = used.iter().position(|u| !u) {
            return Err(Error::SchemaMismatch(format!(
                "unexpected column `{}`",
                header[pos]
            )));
        }

        let records = rows
            .iter()
            .map(|(line, row)| {
                let values = feature_cols
                    .iter()
                    .zip(attributes)
                    .map(|(&col, attr)| parse_value::<F>(&row[col], attr, *line))
                    .collect::<Result<Vec<_>>>()?;
                let class = match class_col {
                    Some(col) => Some(
                        class_attribute
                            .label_index(&row[col])
                            .ok_or_else(|| Error::UnknownLabel {
                                line: *line,
                                column: class_attribute.name.clone(),
                                token: row[col].clone(),
                            })?,
                    ),
                    None => None,
                };
                Ok(Record::new(values, class))
            })
            .collect::<Result<Vec<_>>>()?;

        Self::new(
            attributes.to_vec(),
            class_attribute.clone(),
            records,
        )
    }

    /// Serialize to CSV with the class column last. Numeric values use the
    /// shortest representation that round-trips exactly.
    pub fn write_csv(&self) -> Result<String> {
        self.write_csv_with_delimiter(b',')
    }

    pub fn write_csv_with_delimiter(&self, delimiter: u8) -> Result<String> {
        let mut wtr = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(Vec::new());
        let mut header: Vec<&str> = self.attributes.iter().map(|a| a.name.as_str()).collect();
        header.push(&self.class_attribute.name);
        wtr.write_record(&header)?;
        for rec in &self.records {
            let mut row: Vec<String> = rec
                .values
                .iter()
                .zip(&self.attributes)
                .map(|(v, attr)| match v {
                    Value::Numeric(x) => format!("{x}"),
                    Value::Nominal(i) => attr.labels()[*i].clone(),
                })
                .collect();
            row.push(match rec.class {
                Some(c) => self.class_labels()[c].clone(),
                None => String::new(),
            });
            wtr.write_record(&row)?;
        }
        let bytes = wtr.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn validate_label_set(name: &str, labels: &[String], allow_empty: bool) -> Result<()> {
    if labels.is_empty() && !allow_empty {
        return Err(Error::InvalidData(format!(
            "attribute `{name}` has an empty label set"
        )));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::InvalidData(format!(
                "attribute `{name}` declares duplicate label `{l}`"
            )));
        }
    }
    Ok(())
}

/// Raw rows with their 1-based line numbers.
type RawRows = Vec<(u64, Vec<String>)>;

/// Read header + all rows, rejecting empty input, ragged rows and missing
/// values. Lines starting with `#` are comments.
fn read_raw_csv<R: Read>(reader: R, delimiter: u8) -> Result<(Vec<String>, RawRows)> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .comment(Some(b'#'))
        .has_headers(true)
        .from_reader(reader);

    let header: Vec<String> = {
        let h = rdr.headers()?;
        h.iter().map(|s| s.to_string()).collect()
    };
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(Error::EmptyInput);
    }

    let mut rows = Vec::new();
    for result in rdr.records() {
        let record = result?; // ragged rows error here with their position
        let line = record.position().map_or(0, |p| p.line());
        let row: Vec<String> = record.iter().map(|s| s.to_string()).collect();
        for (col, token) in row.iter().enumerate() {
            if token.is_empty() {
                return Err(Error::MissingValue {
                    line,
                    column: header[col].clone(),
                });
            }
        }
        rows.push((line, row));
    }
    Ok((header, rows))
}

/// Numeric iff every token parses as a number; a non-finite numeric token in
/// an otherwise numeric column is an error, one unparsable token makes the
/// column nominal.
fn infer_column_kind<F: Scalar>(
    name: &str,
    col: usize,
    rows: &[(u64, Vec<String>)],
) -> Result<AttrKind> {
    let mut parsed: Vec<F> = Vec::with_capacity(rows.len());
    let mut all_numeric = true;
    for (_, row) in rows {
        match row[col].parse::<F>() {
            Ok(v) => parsed.push(v),
            Err(_) => {
                all_numeric = false;
                break;
            }
        }
    }
    if all_numeric {
        for ((line, row), v) in rows.iter().zip(&parsed) {
            if !v.is_finite() {
                return Err(Error::NonFiniteNumeric {
                    line: *line,
                    column: name.to_string(),
                    token: row[col].clone(),
                });
            }
        }
        Ok(AttrKind::Numeric)
    } else {
        Ok(AttrKind::Nominal(distinct_labels(rows, col)))
    }
}

/// Distinct labels in order of first occurrence.
fn distinct_labels(rows: &[(u64, Vec<String>)], col: usize) -> Vec<String> {
    let mut labels = Vec::new();
    let mut seen = HashSet::new();
    for (_, row) in rows {
        if seen.insert(row[col].clone()) {
            labels.push(row[col].clone());
        }
    }
    labels
}

fn parse_value<F: Scalar>(token: &str, attr: &Attribute, line: u64) -> Result<Value<F>> {
    match &attr.kind {
        AttrKind::Numeric => {
            let v: F = token.parse().map_err(|_| Error::SchemaMismatch(format!(
                "line {line}: column `{}` expected a number, got `{token}`",
                attr.name
            )))?;
            if !v.is_finite() {
                return Err(Error::NonFiniteNumeric {
                    line,
                    column: attr.name.clone(),
                    token: token.to_string(),
                });
            }
            Ok(Value::Numeric(v))
        }
        AttrKind::Nominal(_) => attr
            .label_index(token)
            .map(Value::Nominal)
            .ok_or_else(|| Error::UnknownLabel {
                line,
                column: attr.name.clone(),
                token: token.to_string(),
            }),
    }
}
