//! Klassen-typology feature construction: compute district and province
//! growth rates and development contributions from GDP panels and assign one
//! of the four development quadrants per (district, indicator).

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::{Attribute, LabeledDataset, Record, Value};
use crate::error::{Error, Result};
use crate::num::{from_f64, Scalar};

/// Development quadrant, in fixed index order K1..K4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    K1,
    K2,
    K3,
    K4,
}

pub const QUADRANTS: [Quadrant; 4] = [Quadrant::K1, Quadrant::K2, Quadrant::K3, Quadrant::K4];

impl Quadrant {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        QUADRANTS.get(i).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrant::K1 => "K1",
            Quadrant::K2 => "K2",
            Quadrant::K3 => "K3",
            Quadrant::K4 => "K4",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Quadrant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K1" => Ok(Quadrant::K1),
            "K2" => Ok(Quadrant::K2),
            "K3" => Ok(Quadrant::K3),
            "K4" => Ok(Quadrant::K4),
            other => Err(Error::InvalidData(format!("unknown quadrant `{other}`"))),
        }
    }
}

/// Which quadrant convention to apply. The two conventions agree on K2/K4
/// and swap K1/K3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadrantMapping {
    /// High growth with low contribution is K1; high/high is K3.
    #[default]
    Table1,
    /// Textbook convention: high growth with high contribution is K1.
    Prose,
}

impl FromStr for QuadrantMapping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(QuadrantMapping::Table1),
            "prose" => Ok(QuadrantMapping::Prose),
            other => Err(Error::InvalidData(format!("unknown mapping `{other}`"))),
        }
    }
}

/// Region level of a panel entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionLevel {
    District,
    Province,
}

impl fmt::Display for RegionLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionLevel::District => "district",
            RegionLevel::Province => "province",
        })
    }
}

impl FromStr for RegionLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "district" => Ok(RegionLevel::District),
            "province" => Ok(RegionLevel::Province),
            other => Err(Error::InvalidData(format!("unknown region level `{other}`"))),
        }
    }
}

/// One observation in a GDP panel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelEntry<F> {
    pub level: RegionLevel,
    pub region: String,
    pub indicator: String,
    pub year: i32,
    pub value: F,
}

/// Rectangular long-form GDP panel: for every (level, region, year) present,
/// all indicators are present exactly once, values finite and non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct GdpPanel<F> {
    entries: Vec<PanelEntry<F>>,
    regions: Vec<(RegionLevel, String)>,
    indicators: Vec<String>,
    index: HashMap<(RegionLevel, String, String, i32), F>,
}

impl<F: Scalar> GdpPanel<F> {
    pub fn new(entries: Vec<PanelEntry<F>>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut regions = Vec::new();
        let mut indicators = Vec::new();
        let mut years: Vec<i32> = Vec::new();
        for e in &entries {
            if !e.value.is_finite() || e.value < F::zero() {
                return Err(Error::InvalidPanel(format!(
                    "value for ({}, {}, {}, {}) must be finite and >= 0",
                    e.level, e.region, e.indicator, e.year
                )));
            }
            let key = (e.level, e.region.clone(), e.indicator.clone(), e.year);
            if index.insert(key, e.value).is_some() {
                return Err(Error::InvalidPanel(format!(
                    "duplicate entry ({}, {}, {}, {})",
                    e.level, e.region, e.indicator, e.year
                )));
            }
            if !regions.iter().any(|(l, r)| *l == e.level && r == &e.region) {
                regions.push((e.level, e.region.clone()));
            }
            if !indicators.contains(&e.indicator) {
                indicators.push(e.indicator.clone());
            }
            if !years.contains(&e.year) {
                years.push(e.year);
            }
        }
        // rectangularity: every (region, year) seen must carry every indicator
        for (level, region) in &regions {
            for year in &years {
                let present: Vec<bool> = indicators
                    .iter()
                    .map(|i| index.contains_key(&(*level, region.clone(), i.clone(), *year)))
                    .collect();
                if present.iter().any(|p| *p) && !present.iter().all(|p| *p) {
                    let missing = indicators
                        .iter()
                        .zip(&present)
                        .find(|(_, p)| !**p)
                        .map(|(i, _)| i.clone())
                        .unwrap_or_default();
                    return Err(Error::InvalidPanel(format!(
                        "({level}, {region}, {year}) is missing indicator `{missing}`"
                    )));
                }
            }
        }
        Ok(Self {
            entries,
            regions,
            indicators,
            index,
        })
    }

    /// Parse the long-form panel CSV `level,region,indicator,year,value`.
    pub fn parse_csv<R: Read>(reader: R, delimiter: u8) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .comment(Some(b'#'))
            .has_headers(true)
            .from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(|s| s.to_string()).collect();
        let expected = ["level", "region", "indicator", "year", "value"];
        if header != expected {
            return Err(Error::InvalidPanel(format!(
                "panel header must be `{}`, got `{}`",
                expected.join(","),
                header.join(",")
            )));
        }
        let mut entries = Vec::new();
        for result in rdr.records() {
            let record = result?;
            let line = record.position().map_or(0, |p| p.line());
            let field = |i: usize| record.get(i).unwrap_or("").to_string();
            let year: i32 = field(3).parse().map_err(|_| {
                Error::InvalidPanel(format!("line {line}: bad year `{}`", field(3)))
            })?;
            let value: F = field(4).parse().map_err(|_| {
                Error::InvalidPanel(format!("line {line}: bad value `{}`", field(4)))
            })?;
            entries.push(PanelEntry {
                level: field(0).parse().map_err(|_| {
                    Error::InvalidPanel(format!("line {line}: bad level `{}`", field(0)))
                })?,
                region: field(1),
                indicator: field(2),
                year,
                value,
            });
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[PanelEntry<F>] {
        &self.entries
    }

    /// Regions in first-occurrence order.
    pub fn regions(&self) -> &[(RegionLevel, String)] {
        &self.regions
    }

    /// Indicators in first-occurrence order.
    pub fn indicators(&self) -> &[String] {
        &self.indicators
    }

    pub fn value(
        &self,
        level: RegionLevel,
        region: &str,
        indicator: &str,
        year: i32,
    ) -> Option<F> {
        self.index
            .get(&(level, region.to_string(), indicator.to_string(), year))
            .copied()
    }

    /// Sum over all indicators for one (level, region, year).
    pub fn total(&self, level: RegionLevel, region: &str, year: i32) -> Option<F> {
        let mut sum = F::zero();
        for ind in &self.indicators {
            sum = sum + self.value(level, region, ind, year)?;
        }
        Some(sum)
    }
}

/// One labeled observation of the Klassen pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KlassenRow<F> {
    pub district: String,
    pub indicator: String,
    pub year_pair: (i32, i32),
    pub growth_district: F,
    pub growth_province: F,
    pub contribution_district: F,
    pub contribution_province: F,
    pub quadrant: Quadrant,
}

/// Year-over-year growth in percent: `(current - previous) / previous * 100`.
pub fn growth_rate<F: Scalar>(current: F, previous: F) -> Result<F> {
    if !(previous > F::zero()) {
        return Err(Error::NonPositiveBase(previous.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((current - previous) / previous * from_f64(100.0))
}

/// Two-year share of the two-year total, in percent:
/// `(current + previous) / (total_current + total_previous) * 100`.
pub fn contribution<F: Scalar>(
    current: F,
    previous: F,
    total_current: F,
    total_previous: F,
) -> Result<F> {
    let denom = total_current + total_previous;
    if !(denom > F::zero()) {
        return Err(Error::NonPositiveTotal(denom.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((current + previous) / denom * from_f64(100.0))
}

/// Assign the quadrant for one (district, province) feature quadruple.
/// Boundary ties use strict `>` on both axes: equality counts as "not
/// greater".
pub fn classify_quadrant<F: Scalar>(
    growth_district: F,
    growth_province: F,
    contribution_district: F,
    contribution_province: F,
    mapping: QuadrantMapping,
) -> Result<Quadrant> {
    for (name, v) in [
        ("r_i", growth_district),
        ("r", growth_province),
        ("y_i", contribution_district),
        ("y", contribution_province),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite(name.to_string()));
        }
    }
    let growth_higher = growth_district > growth_province;
    let contribution_higher = contribution_district > contribution_province;
    let q = match (growth_higher, contribution_higher) {
        (true, true) => Quadrant::K3,
        (false, true) => Quadrant::K2,
        (true, false) => Quadrant::K1,
        (false, false) => Quadrant::K4,
    };
    Ok(match (mapping, q) {
        (QuadrantMapping::Prose, Quadrant::K1) => Quadrant::K3,
        (QuadrantMapping::Prose, Quadrant::K3) => Quadrant::K1,
        (_, q) => q,
    })
}

/// The feature schema produced by [`label_panel`].
pub fn klassen_schema() -> (Vec<Attribute>, Attribute) {
    let attributes = vec![
        Attribute::numeric("r_i"),
        Attribute::numeric("r"),
        Attribute::numeric("y_i"),
        Attribute::numeric("y"),
    ];
    let class = Attribute::nominal(
        "class",
        QUADRANTS.iter().map(|q| q.label().to_string()).collect(),
    );
    (attributes, class)
}

/// Compute the four features and the quadrant for every (district,
/// indicator) pair over one `(t-1, t)` year pair. District growth and
/// contribution come from the district panel, provincial ones from the
/// single-region province panel over the same indicator.
pub fn label_panel<F: Scalar>(
    districts: &GdpPanel<F>,
    province: &GdpPanel<F>,
    year_pair: (i32, i32),
    mapping: QuadrantMapping,
) -> Result<(LabeledDataset<F>, Vec<KlassenRow<F>>)> {
    let (prev, curr) = year_pair;
    let province_regions: Vec<&(RegionLevel, String)> = province
        .regions()
        .iter()
        .filter(|(l, _)| *l == RegionLevel::Province)
        .collect();
    if province_regions.len() != 1 || province.regions().len() != 1 {
        return Err(Error::ProvinceRegionCount(province.regions().len()));
    }
    let province_name = &province_regions[0].1;

    let district_regions: Vec<&String> = districts
        .regions()
        .iter()
        .map(|(l, r)| {
            if *l == RegionLevel::District {
                Ok(r)
            } else {
                Err(Error::InvalidPanel(format!(
                    "district panel contains a {l}-level region `{r}`"
                )))
            }
        })
        .collect::<Result<_>>()?;
    if district_regions.is_empty() {
        return Err(Error::InvalidPanel("district panel has no regions".into()));
    }

    let indicators = districts.indicators();
    {
        let mut a: Vec<&String> = indicators.iter().collect();
        let mut b: Vec<&String> = province.indicators().iter().collect();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::InvalidPanel(
                "district and province panels declare different indicator sets".into(),
            ));
        }
    }

    let lookup = |panel: &GdpPanel<F>, level, region: &str, indicator: &str, year| {
        panel.value(level, region, indicator, year).ok_or_else(|| {
            Error::MissingPanelData(format!("({level}, {region}, {indicator}, {year})"))
        })
    };
    let total_of = |panel: &GdpPanel<F>, level, region: &str, year| {
        panel
            .total(level, region, year)
            .ok_or_else(|| Error::MissingPanelData(format!("({level}, {region}, *, {year})")))
    };

    let prov_total_prev = total_of(province, RegionLevel::Province, province_name, prev)?;
    let prov_total_curr = total_of(province, RegionLevel::Province, province_name, curr)?;

    let (attributes, class_attribute) = klassen_schema();
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for district in &district_regions {
        let dist_total_prev = total_of(districts, RegionLevel::District, district, prev)?;
        let dist_total_curr = total_of(districts, RegionLevel::District, district, curr)?;
        for indicator in indicators {
            let d_prev = lookup(districts, RegionLevel::District, district, indicator, prev)?;
            let d_curr = lookup(districts, RegionLevel::District, district, indicator, curr)?;
            let p_prev = lookup(province, RegionLevel::Province, province_name, indicator, prev)?;
            let p_curr = lookup(province, RegionLevel::Province, province_name, indicator, curr)?;

            let growth_district = growth_rate(d_curr, d_prev)?;
            let growth_province = growth_rate(p_curr, p_prev)?;
            let contribution_district =
                contribution(d_curr, d_prev, dist_total_curr, dist_total_prev)?;
            let contribution_province =
                contribution(p_curr, p_prev, prov_total_curr, prov_total_prev)?;
            let quadrant = classify_quadrant(
                growth_district,
                growth_province,
                contribution_district,
                contribution_province,
                mapping,
            )?;

            rows.push(KlassenRow {
                district: (*district).clone(),
                indicator: indicator.clone(),
                year_pair,
                growth_district,
                growth_province,
                contribution_district,
                contribution_province,
                quadrant,
            });
            records.push(Record::new(
                vec![
                    Value::Numeric(growth_district),
                    Value::Numeric(growth_province),
                    Value::Numeric(contribution_district),
                    Value::Numeric(contribution_province),
                ],
                Some(quadrant.index()),
            ));
        }
    }

    let dataset = LabeledDataset::new(attributes, class_attribute, records)?;
    Ok((dataset, rows))
}

/// Majority vote over per-indicator quadrants; ties break toward the
/// smaller quadrant index.
pub fn aggregate_district(quadrants: &[Quadrant]) -> Result<Quadrant> {
    if quadrants.is_empty() {
        return Err(Error::EmptyAggregation);
    }
    let mut counts = [0usize; 4];
    for q in quadrants {
        counts[q.index()] += 1;
    }
    let best = (0..4).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    Ok(QUADRANTS[best])
}

/// Serialize rows to the `district,indicator,r_i,r,y_i,y,class` CSV layout.
pub fn write_rows_csv<F: Scalar>(rows: &[KlassenRow<F>]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["district", "indicator", "r_i", "r", "y_i", "y", "class"])?;
    for row in rows {
        wtr.write_record([
            row.district.clone(),
            row.indicator.clone(),
            format!("{}", row.growth_district),
            format!("{}", row.growth_province),
            format!("{}", row.contribution_district),
            format!("{}", row.contribution_province),
            row.quadrant.label().to_string(),
        ])?;
    }
    let bytes = wtr.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn growth_rate_worked_example() {
        let r_i: f64 = growth_rate(1750.0, 1500.0).unwrap();
        let r: f64 = growth_rate(2600.0, 2350.0).unwrap();
        assert!((r_i - 16.67).abs() < 0.01);
        assert!((r - 10.64).abs() < 0.01);
    }

    #[test]
    fn growth_rate_identity_and_errors() {
        for v in [0.5, 1.0, 123.25] {
            assert_eq!(growth_rate(v, v).unwrap(), 0.0);
        }
        assert!(matches!(
            growth_rate(1.0, 0.0).unwrap_err(),
            Error::NonPositiveBase(_)
        ));
        assert!(matches!(
            growth_rate(1.0, -2.0).unwrap_err(),
            Error::NonPositiveBase(_)
        ));
    }

    #[test]
    fn contribution_worked_example() {
        let y_i: f64 = contribution(1750.0, 1500.0, 16500.0, 14500.0).unwrap();
        let y: f64 = contribution(2600.0, 2350.0, 28900.0, 25500.0).unwrap();
        assert!((y_i - 10.48).abs() < 0.02);
        assert!((y - 9.10).abs() < 0.02);
    }

    #[test]
    fn contribution_algebraic_half() {
        for v in [1.0, 7.5, 400.0] {
            let c: f64 = contribution(v, v, 2.0 * v, 2.0 * v).unwrap();
            assert_relative_eq!(c, 50.0, max_relative = 1e-12);
        }
        assert!(matches!(
            contribution(1.0, 1.0, 0.0, 0.0).unwrap_err(),
            Error::NonPositiveTotal(_)
        ));
    }

    #[test]
    fn classify_worked_example_is_k3_under_table1() {
        let q = classify_quadrant(16.7, 10.6, 10.5, 9.1, QuadrantMapping::Table1).unwrap();
        assert_eq!(q, Quadrant::K3);
        let q = classify_quadrant(16.7, 10.6, 10.5, 9.1, QuadrantMapping::Prose).unwrap();
        assert_eq!(q, Quadrant::K1);
    }

    #[test]
    fn classify_low_growth_high_contribution_is_k2() {
        let q = classify_quadrant(5.0, 10.0, 12.0, 9.0, QuadrantMapping::Table1).unwrap();
        assert_eq!(q, Quadrant::K2);
    }

    #[test]
    fn classify_ties_fall_to_k4() {
        for mapping in [QuadrantMapping::Table1, QuadrantMapping::Prose] {
            let q = classify_quadrant(10.0, 10.0, 10.0, 10.0, mapping).unwrap();
            assert_eq!(q, Quadrant::K4);
        }
    }

    #[test]
    fn classify_rejects_non_finite() {
        assert!(classify_quadrant(f64::NAN, 1.0, 1.0, 1.0, QuadrantMapping::Table1).is_err());
    }

    #[test]
    fn mappings_agree_on_k2_k4_and_swap_k1_k3() {
        let grid = [-1.0, 0.0, 1.0];
        for &a in &grid {
            for &b in &grid {
                let t = classify_quadrant(a, 0.0, b, 0.0, QuadrantMapping::Table1).unwrap();
                let p = classify_quadrant(a, 0.0, b, 0.0, QuadrantMapping::Prose).unwrap();
                match t {
                    Quadrant::K2 | Quadrant::K4 => assert_eq!(t, p),
                    Quadrant::K1 => assert_eq!(p, Quadrant::K3),
                    Quadrant::K3 => assert_eq!(p, Quadrant::K1),
                }
            }
        }
    }

    fn panel(level: RegionLevel, specs: &[(&str, &str, i32, f64)]) -> GdpPanel<f64> {
        GdpPanel::new(
            specs
                .iter()
                .map(|(region, indicator, year, value)| PanelEntry {
                    level,
                    region: region.to_string(),
                    indicator: indicator.to_string(),
                    year: *year,
                    value: *value,
                })
                .collect(),
        )
        .unwrap()
    }

    /// Synthetic rectangular panels: `n_districts` regions x `indicators`.
    pub(crate) fn synthetic_panels(
        n_districts: usize,
        indicators: &[&str],
    ) -> (GdpPanel<f64>, GdpPanel<f64>) {
        let mut district_entries = Vec::new();
        let mut province_entries = Vec::new();
        for (d, name) in (0..n_districts).map(|d| (d, format!("D{d}"))) {
            for (i, ind) in indicators.iter().enumerate() {
                for (y, year) in [(0, 2006), (1, 2007)] {
                    let value = 100.0 + 13.0 * d as f64 + 7.0 * i as f64 + 19.0 * y as f64
                        + ((d * 31 + i * 17 + y * 5) % 23) as f64;
                    district_entries.push(PanelEntry {
                        level: RegionLevel::District,
                        region: name.clone(),
                        indicator: ind.to_string(),
                        year,
                        value,
                    });
                }
            }
        }
        for (i, ind) in indicators.iter().enumerate() {
            for (y, year) in [(0, 2006), (1, 2007)] {
                let value = 1000.0 + 41.0 * i as f64 + 83.0 * y as f64 + ((i * 29 + y * 7) % 13) as f64;
                province_entries.push(PanelEntry {
                    level: RegionLevel::Province,
                    region: "P".to_string(),
                    indicator: ind.to_string(),
                    year,
                    value,
                });
            }
        }
        (
            GdpPanel::new(district_entries).unwrap(),
            GdpPanel::new(province_entries).unwrap(),
        )
    }

    pub(crate) const NINE_INDICATORS: [&str; 9] = [
        "agriculture",
        "mining",
        "industry",
        "electricity",
        "building",
        "commerce",
        "transportation",
        "finance",
        "services",
    ];

    #[test]
    fn label_panel_emits_one_row_per_district_indicator() {
        let (d, p) = synthetic_panels(6, &NINE_INDICATORS);
        let (ds, rows) = label_panel(&d, &p, (2006, 2007), QuadrantMapping::Table1).unwrap();
        assert_eq!(ds.len(), 54);
        assert_eq!(rows.len(), 54);
        assert_eq!(ds.class_distribution().unwrap().iter().sum::<usize>(), 54);

        let (d, p) = synthetic_panels(15, &NINE_INDICATORS);
        let (ds, _) = label_panel(&d, &p, (2006, 2007), QuadrantMapping::Table1).unwrap();
        assert_eq!(ds.len(), 135);
    }

    #[test]
    fn label_panel_single_pair_reproduces_worked_example() {
        let d = panel(
            RegionLevel::District,
            &[("d1", "agg", 2006, 14500.0), ("d1", "agg", 2007, 16500.0)],
        );
        let p = panel(
            RegionLevel::Province,
            &[("prov", "agg", 2006, 25500.0), ("prov", "agg", 2007, 28900.0)],
        );
        // With a single indicator the totals equal the indicator itself, so
        // feed the worked-example totals as the series.
        let (_, rows) = label_panel(&d, &p, (2006, 2007), QuadrantMapping::Table1).unwrap();
        assert_eq!(rows.len(), 1);
        // contributions are 100% here (single indicator); quadrant is driven
        // by growth alone: district 13.79% > province 13.33% and tie on
        // contribution -> K1 under table1.
        assert_eq!(rows[0].quadrant, Quadrant::K1);

        // The true worked example has distinct indicator and total series;
        // drive the scalar ops directly.
        let r_i: f64 = growth_rate(1750.0, 1500.0).unwrap();
        let r: f64 = growth_rate(2600.0, 2350.0).unwrap();
        let y_i: f64 = contribution(1750.0, 1500.0, 16500.0, 14500.0).unwrap();
        let y: f64 = contribution(2600.0, 2350.0, 28900.0, 25500.0).unwrap();
        let q = classify_quadrant(r_i, r, y_i, y, QuadrantMapping::Table1).unwrap();
        assert_eq!(q, Quadrant::K3);
    }

    #[test]
    fn label_panel_validates_inputs() {
        let (d, p) = synthetic_panels(2, &["a", "b"]);
        // missing year
        assert!(matches!(
            label_panel(&d, &p, (2005, 2006), QuadrantMapping::Table1).unwrap_err(),
            Error::MissingPanelData(_)
        ));
        // province panel with two regions
        let p2 = panel(
            RegionLevel::Province,
            &[
                ("p1", "a", 2006, 1.0),
                ("p1", "a", 2007, 1.0),
                ("p2", "a", 2006, 1.0),
                ("p2", "a", 2007, 1.0),
            ],
        );
        assert!(matches!(
            label_panel(&d, &p2, (2006, 2007), QuadrantMapping::Table1).unwrap_err(),
            Error::ProvinceRegionCount(2)
        ));
        // indicator sets differ
        let p3 = panel(
            RegionLevel::Province,
            &[("p", "zzz", 2006, 1.0), ("p", "zzz", 2007, 1.0)],
        );
        assert!(matches!(
            label_panel(&d, &p3, (2006, 2007), QuadrantMapping::Table1).unwrap_err(),
            Error::InvalidPanel(_)
        ));
    }

    #[test]
    fn scale_invariance_of_quadrants() {
        let (d, p) = synthetic_panels(4, &["a", "b", "c"]);
        let (_, rows) = label_panel(&d, &p, (2006, 2007), QuadrantMapping::Table1).unwrap();
        let scale = |panel: &GdpPanel<f64>, c: f64| {
            GdpPanel::new(
                panel
                    .entries()
                    .iter()
                    .map(|e| PanelEntry {
                        value: e.value * c,
                        ..e.clone()
                    })
                    .collect(),
            )
            .unwrap()
        };
        for c in [0.25, 3.0, 1e4] {
            let (_, scaled) =
                label_panel(&scale(&d, c), &scale(&p, c), (2006, 2007), QuadrantMapping::Table1)
                    .unwrap();
            for (a, b) in rows.iter().zip(&scaled) {
                assert_eq!(a.quadrant, b.quadrant);
            }
        }
    }

    #[test]
    fn growth_rate_scale_invariance() {
        for c in [0.5, 2.0, 1000.0] {
            let a: f64 = growth_rate(1750.0 * c, 1500.0 * c).unwrap();
            let b: f64 = growth_rate(1750.0, 1500.0).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn panel_rejects_duplicates_ragged_and_negative() {
        let dup = GdpPanel::new(vec![
            PanelEntry {
                level: RegionLevel::District,
                region: "d".into(),
                indicator: "a".into(),
                year: 2006,
                value: 1.0,
            },
            PanelEntry {
                level: RegionLevel::District,
                region: "d".into(),
                indicator: "a".into(),
                year: 2006,
                value: 2.0,
            },
        ]);
        assert!(dup.is_err());

        let ragged = GdpPanel::new(vec![
            PanelEntry {
                level: RegionLevel::District,
                region: "d".into(),
                indicator: "a".into(),
                year: 2006,
                value: 1.0,
            },
            PanelEntry {
                level: RegionLevel::District,
                region: "d".into(),
                indicator: "b".into(),
                year: 2006,
                value: 2.0,
            },
            PanelEntry {
                level: RegionLevel::District,
                region: "e".into(),
                indicator: "a".into(),
                year: 2006,
                value: 1.0,
            },
        ]);
        assert!(ragged.is_err());

        let negative = GdpPanel::<f64>::new(vec![PanelEntry {
            level: RegionLevel::District,
            region: "d".into(),
            indicator: "a".into(),
            year: 2006,
            value: -1.0,
        }]);
        assert!(negative.is_err());
    }

    #[test]
    fn aggregate_district_majority_and_ties() {
        assert_eq!(
            aggregate_district(&[Quadrant::K2; 9]).unwrap(),
            Quadrant::K2
        );
        let mixed = [
            Quadrant::K4,
            Quadrant::K4,
            Quadrant::K4,
            Quadrant::K4,
            Quadrant::K4,
            Quadrant::K2,
            Quadrant::K2,
            Quadrant::K2,
            Quadrant::K2,
        ];
        assert_eq!(aggregate_district(&mixed).unwrap(), Quadrant::K4);
        let tie = [
            Quadrant::K1,
            Quadrant::K1,
            Quadrant::K1,
            Quadrant::K1,
            Quadrant::K3,
            Quadrant::K3,
            Quadrant::K3,
            Quadrant::K3,
            Quadrant::K2,
        ];
        assert_eq!(aggregate_district(&tie).unwrap(), Quadrant::K1);
        assert!(matches!(
            aggregate_district(&[]).unwrap_err(),
            Error::EmptyAggregation
        ));
    }

    #[test]
    fn panel_csv_round_trip() {
        let (d, _) = synthetic_panels(2, &["a", "b"]);
        let text = {
            let mut s = String::from("level,region,indicator,year,value\n");
            for e in d.entries() {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    e.level, e.region, e.indicator, e.year, e.value
                ));
            }
            s
        };
        let parsed = GdpPanel::<f64>::parse_csv(text.as_bytes(), b',').unwrap();
        assert_eq!(parsed, d);
    }

    #[test]
    fn rows_csv_layout() {
        let (d, p) = synthetic_panels(1, &["a"]);
        let (_, rows) = label_panel(&d, &p, (2006, 2007), QuadrantMapping::Table1).unwrap();
        let text = write_rows_csv(&rows).unwrap();
        assert!(text.starts_with("district,indicator,r_i,r,y_i,y,class\n"));
        assert_eq!(text.lines().count(), 2);
    }
}
