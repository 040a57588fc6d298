//! Aligned-text and CSV renderings of evaluation reports. Layouts follow
//! the comparison table (metrics x learners), the quadrant-distribution
//! table and the per-district table. JSON renditions come straight from
//! the report types' `Serialize` impls.

use crate::eval::{ComparisonReport, EvalReport, ExperimentOutcome};
use crate::num::Scalar;

const METRIC_ROWS: [&str; 4] = [
    "Classification accuracy (%)",
    "Kappa",
    "Mean absolute error",
    "Root mean squared error",
];

fn fmt2<F: Scalar>(x: F) -> String {
    format!("{:.2}", x.to_f64().unwrap_or(f64::NAN))
}

fn fmt4<F: Scalar>(x: F) -> String {
    format!("{:.4}", x.to_f64().unwrap_or(f64::NAN))
}

/// Left-aligned table with two-space gutters.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.chars().count()..widths[i] + 2 {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn metric_cell<F: Scalar>(report: &EvalReport<F>, metric: usize) -> String {
    match metric {
        0 => fmt2(report.accuracy),
        1 => fmt4(report.kappa),
        2 => fmt4(report.mae),
        3 => fmt4(report.rmse),
        _ => unreachable!(),
    }
}

/// Metrics-by-learner text table plus the accuracy argmax.
pub fn comparison_text<F: Scalar>(cmp: &ComparisonReport<F>) -> String {
    let mut rows = Vec::new();
    let mut header = vec!["Algorithm".to_string()];
    header.extend(cmp.reports.iter().map(|r| r.learner.clone()));
    rows.push(header);
    for (m, name) in METRIC_ROWS.iter().enumerate() {
        let mut row = vec![name.to_string()];
        row.extend(cmp.reports.iter().map(|r| metric_cell(r, m)));
        rows.push(row);
    }
    let mut out = render_table(&rows);
    out.push_str(&format!("\nBest by accuracy: {}\n", cmp.best_by_accuracy));
    out
}

/// `metric,<learner...>` CSV of the same table.
pub fn comparison_csv<F: Scalar>(cmp: &ComparisonReport<F>) -> String {
    let mut out = String::from("metric");
    for r in &cmp.reports {
        out.push(',');
        out.push_str(&r.learner);
    }
    out.push('\n');
    for (m, name) in ["accuracy", "kappa", "mae", "rmse"].iter().enumerate() {
        out.push_str(name);
        for r in &cmp.reports {
            out.push(',');
            out.push_str(&metric_cell(r, m));
        }
        out.push('\n');
    }
    out
}

/// Confusion matrix as an actual-by-predicted text table.
pub fn confusion_text(cm: &crate::eval::ConfusionMatrix) -> String {
    let mut rows = Vec::new();
    let mut header = vec!["actual \\ predicted".to_string()];
    header.extend(cm.labels().iter().cloned());
    rows.push(header);
    for (i, label) in cm.labels().iter().enumerate() {
        let mut row = vec![label.clone()];
        row.extend(cm.counts()[i].iter().map(|c| c.to_string()));
        rows.push(row);
    }
    render_table(&rows)
}

fn run_title<F: Scalar>(outcome: &ExperimentOutcome<F>) -> String {
    if outcome.pruned {
        "Pruned".to_string()
    } else {
        "Unpruned".to_string()
    }
}

/// Accuracy, quadrant distribution and per-district tables for one or more
/// runs of the same experiment (typically the unpruned and pruned variants
/// side by side).
pub fn experiment_text<F: Scalar>(outcomes: &[&ExperimentOutcome<F>]) -> String {
    assert!(!outcomes.is_empty());
    let first = outcomes[0];
    let mut out = format!("Experiment {} ({})\n\n", first.id, first.learner);

    let mut acc_rows = vec![vec!["Variant".to_string(), "Accuracy (%)".to_string()]];
    for o in outcomes {
        acc_rows.push(vec![run_title(o), fmt2(o.accuracy)]);
    }
    out.push_str(&render_table(&acc_rows));

    out.push_str("\nQuadrant distribution (predicted)\n");
    let mut dist_rows = vec![{
        let mut h = vec!["Quadrant".to_string()];
        h.extend(outcomes.iter().map(|o| run_title(o)));
        h
    }];
    for (i, (label, _)) in first.quadrant_distribution.iter().enumerate() {
        let mut row = vec![label.clone()];
        row.extend(
            outcomes
                .iter()
                .map(|o| o.quadrant_distribution[i].1.to_string()),
        );
        dist_rows.push(row);
    }
    out.push_str(&render_table(&dist_rows));

    if let Some(districts) = &first.per_district {
        out.push_str("\nPer-district classes (aggregated by majority)\n");
        let mut rows = vec![{
            let mut h = vec!["District".to_string(), "Actual".to_string()];
            h.extend(outcomes.iter().map(|o| run_title(o)));
            h
        }];
        for (i, row) in districts.iter().enumerate() {
            let mut cells = vec![row.district.clone(), row.actual.clone()];
            for o in outcomes {
                let pd = o
                    .per_district
                    .as_ref()
                    .and_then(|rows| rows.get(i))
                    .map(|r| r.predicted.clone())
                    .unwrap_or_default();
                cells.push(pd);
            }
            rows.push(cells);
        }
        out.push_str(&render_table(&rows));
    }
    out
}

/// Flat `kind,name,actual,<run...>` CSV of an experiment.
pub fn experiment_csv<F: Scalar>(outcomes: &[&ExperimentOutcome<F>]) -> String {
    assert!(!outcomes.is_empty());
    let first = outcomes[0];
    let mut out = String::from("kind,name,actual");
    for o in outcomes {
        out.push(',');
        out.push_str(&run_title(o).to_lowercase());
    }
    out.push('\n');

    out.push_str("accuracy,,");
    for o in outcomes {
        out.push(',');
        out.push_str(&fmt2(o.accuracy));
    }
    out.push('\n');

    for (i, (label, _)) in first.quadrant_distribution.iter().enumerate() {
        out.push_str(&format!("quadrant,{label},"));
        for o in outcomes {
            out.push(',');
            out.push_str(&o.quadrant_distribution[i].1.to_string());
        }
        out.push('\n');
    }

    if let Some(districts) = &first.per_district {
        for (i, row) in districts.iter().enumerate() {
            out.push_str(&format!("district,{},{}", row.district, row.actual));
            for o in outcomes {
                out.push(',');
                if let Some(rows) = &o.per_district {
                    if let Some(r) = rows.get(i) {
                        out.push_str(&r.predicted);
                    }
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Two-column class-count table (the grouping-results layout).
pub fn distribution_text(title: &str, pairs: &[(String, usize)]) -> String {
    let mut rows = vec![vec!["Quadrant".to_string(), title.to_string()]];
    for (label, count) in pairs {
        rows.push(vec![label.clone(), count.to_string()]);
    }
    render_table(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::ConfusionMatrix;

    fn report(learner: &str, accuracy: f64) -> EvalReport<f64> {
        EvalReport {
            learner: learner.to_string(),
            accuracy,
            kappa: 0.699,
            mae: 0.072,
            rmse: 0.248,
            confusion: ConfusionMatrix::new(vec!["A".into(), "B".into()]),
            folds: 10,
            seed: 1,
        }
    }

    #[test]
    fn comparison_layout_has_four_metric_rows() {
        let cmp = ComparisonReport {
            reports: vec![report("J48", 85.18), report("NBTree", 82.22), report("REPTree", 84.44)],
            best_by_accuracy: "J48".into(),
        };
        let text = comparison_text(&cmp);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("Algorithm"));
        assert!(lines[0].contains("J48") && lines[0].contains("NBTree") && lines[0].contains("REPTree"));
        assert!(lines[1].starts_with("Classification accuracy (%)"));
        assert!(lines[2].starts_with("Kappa"));
        assert!(lines[3].starts_with("Mean absolute error"));
        assert!(lines[4].starts_with("Root mean squared error"));
        assert!(text.contains("Best by accuracy: J48"));

        let csv = comparison_csv(&cmp);
        assert!(csv.starts_with("metric,J48,NBTree,REPTree\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn experiment_layout_mirrors_distribution_and_district_tables() {
        let outcome = |pruned: bool| ExperimentOutcome::<f64> {
            id: "P1".into(),
            learner: "J48".into(),
            pruned,
            accuracy: if pruned { 25.93 } else { 33.33 },
            confusion: ConfusionMatrix::new(vec!["K1".into(), "K2".into()]),
            quadrant_distribution: vec![("K1".into(), 10), ("K2".into(), 44)],
            per_district: Some(vec![crate::eval::DistrictRow {
                district: "KOTA SERANG".into(),
                actual: "K2".into(),
                predicted: if pruned { "K2".into() } else { "K1".into() },
            }]),
        };
        let unpruned = outcome(false);
        let pruned = outcome(true);
        let text = experiment_text(&[&unpruned, &pruned]);
        assert!(text.contains("Experiment P1 (J48)"));
        assert!(text.contains("Unpruned"));
        assert!(text.contains("Pruned"));
        assert!(text.contains("K1"));
        assert!(text.contains("KOTA SERANG"));

        let csv = experiment_csv(&[&unpruned, &pruned]);
        assert!(csv.starts_with("kind,name,actual,unpruned,pruned\n"));
        assert!(csv.contains("accuracy,,,33.33,25.93"));
        assert!(csv.contains("quadrant,K1,,10,10"));
        assert!(csv.contains("district,KOTA SERANG,K2,K1,K2"));
    }

    #[test]
    fn table_renderer_aligns_columns() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string()],
            vec!["cccc".to_string(), "d".to_string()],
        ];
        let text = render_table(&rows);
        assert_eq!(text, "a     bb\ncccc  d\n");
    }
}
