//! Result tables: CSV output, reading published baselines, comparisons.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use super::experiment::ExperimentRow;
use super::sign_test::{sign_test, SignTestReport, TIE_TOLERANCE};
use super::stats::InstanceStats;
use crate::error::{Error, Result};

pub const STATS_HEADER: [&str; 9] = ["instance", "n", "m", "runs", "f_best", "f_avg", "f_worst", "sigma", "t_avg_s"];
pub const COMPARISON_EXTRA: [&str; 3] = ["baseline_f_best", "delta_f_best", "win"];

/// Indicators compared against a baseline, all minimized.
pub const INDICATORS: [&str; 4] = ["f_best", "f_avg", "f_worst", "t_avg_s"];

/// A CSV table keyed by its `instance` column. Non-numeric or empty cells are
/// left out of `values`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub instance: String,
    pub values: BTreeMap<String, f64>,
}

impl ResultTable {
    pub fn from_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let columns: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        let key = columns
            .iter()
            .position(|c| c == "instance")
            .ok_or_else(|| Error::Config("table has no \"instance\" column".into()))?;
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let mut values = BTreeMap::new();
            for (col, cell) in columns.iter().zip(record.iter()) {
                if let Ok(v) = cell.parse::<f64>() {
                    values.insert(col.clone(), v);
                }
            }
            rows.push(TableRow { instance: record.get(key).unwrap_or_default().to_owned(), values });
        }
        Ok(Self { columns, rows })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    pub fn from_stats(stats: &[InstanceStats]) -> Self {
        let rows = stats
            .iter()
            .map(|s| TableRow {
                instance: s.instance.clone(),
                values: [
                    ("n", s.n as f64),
                    ("m", s.m as f64),
                    ("runs", s.runs as f64),
                    ("f_best", s.f_best),
                    ("f_avg", s.f_avg),
                    ("f_worst", s.f_worst),
                    ("sigma", s.sigma),
                    ("t_avg_s", s.t_avg),
                ]
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v))
                .collect(),
            })
            .collect();
        Self { columns: STATS_HEADER.iter().map(|s| s.to_string()).collect(), rows }
    }

    pub fn get(&self, instance: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.instance == instance)
    }
}

/// Two tables' values of one column, paired by instance name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct JoinedColumn {
    pub instances: Vec<String>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Instances present in only one table or lacking a value.
    pub unmatched: Vec<String>,
}

/// Pairs `column` of `a` and `b` by instance, in `a`'s row order.
pub fn join_column(a: &ResultTable, b: &ResultTable, column: &str) -> JoinedColumn {
    let b_rows: HashMap<&str, &TableRow> = b.rows.iter().map(|r| (r.instance.as_str(), r)).collect();
    let mut out = JoinedColumn::default();
    for row in &a.rows {
        let pair = b_rows
            .get(row.instance.as_str())
            .and_then(|other| Some((*row.values.get(column)?, *other.values.get(column)?)));
        match pair {
            Some((x, y)) => {
                out.instances.push(row.instance.clone());
                out.a.push(x);
                out.b.push(y);
            }
            None => out.unmatched.push(row.instance.clone()),
        }
    }
    let in_a: std::collections::HashSet<&str> = a.rows.iter().map(|r| r.instance.as_str()).collect();
    out.unmatched.extend(b.rows.iter().filter(|r| !in_a.contains(r.instance.as_str())).map(|r| r.instance.clone()));
    out
}

/// Sign test of column `column` between two tables (smaller wins).
pub fn compare_tables(a: &ResultTable, b: &ResultTable, column: &str) -> Result<(JoinedColumn, SignTestReport)> {
    let joined = join_column(a, b, column);
    if joined.a.is_empty() {
        return Err(Error::Config(format!("no instance has a {column:?} value in both tables")));
    }
    let report = sign_test(&joined.a, &joined.b)?;
    Ok((joined, report))
}

/// Everything `emit_report` produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Per-instance statistics, [`STATS_HEADER`] columns.
    pub csv: String,
    /// Statistics plus [`COMPARISON_EXTRA`] columns, when a baseline was given.
    pub comparison_csv: Option<String>,
    /// Human-readable summary with averages, wins and sign-test verdicts.
    pub text: String,
}

fn stats_record(s: &InstanceStats) -> Vec<String> {
    vec![
        s.instance.clone(),
        s.n.to_string(),
        s.m.to_string(),
        s.runs.to_string(),
        s.f_best.to_string(),
        s.f_avg.to_string(),
        s.f_worst.to_string(),
        s.sigma.to_string(),
        format!("{:.3}", s.t_avg),
    ]
}

fn to_csv(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in records {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Statistics CSV for experiment rows; failed rows keep their name with empty values.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> Result<String> {
    to_csv(
        &STATS_HEADER,
        rows.iter().map(|row| match row {
            ExperimentRow::Completed { stats, .. } => stats_record(stats),
            ExperimentRow::Failed { instance, .. } => {
                let mut r = vec![String::new(); STATS_HEADER.len()];
                r[0] = instance.clone();
                r
            }
        }),
    )
}

pub fn stats_to_csv(stats: &[InstanceStats]) -> Result<String> {
    to_csv(&STATS_HEADER, stats.iter().map(stats_record))
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Builds the statistics CSV and, given a baseline table of published
/// results, the comparison CSV and a text summary in the usual
/// "average value" / "wins" layout.
pub fn emit_report(stats: &[InstanceStats], baseline: Option<&ResultTable>) -> Result<Report> {
    let csv = stats_to_csv(stats)?;
    let mut text = String::new();
    writeln!(text, "instances: {}", stats.len()).unwrap();
    if !stats.is_empty() {
        let col = |f: fn(&InstanceStats) -> f64| mean(&stats.iter().map(f).collect::<Vec<_>>());
        writeln!(
            text,
            "average value: f_best={:.2} f_avg={:.2} f_worst={:.2} t_avg_s={:.2} sigma={:.2}",
            col(|s| s.f_best),
            col(|s| s.f_avg),
            col(|s| s.f_worst),
            col(|s| s.t_avg),
            col(|s| s.sigma)
        )
        .unwrap();
    }

    let Some(baseline) = baseline else {
        return Ok(Report { csv, comparison_csv: None, text });
    };

    let mut header: Vec<&str> = STATS_HEADER.to_vec();
    header.extend(COMPARISON_EXTRA);
    let mut matched_ours = Vec::new();
    let mut matched_base = Vec::new();
    let records = stats.iter().map(|s| {
        let mut r = stats_record(s);
        match baseline.get(&s.instance).and_then(|b| b.values.get("f_best")) {
            Some(&bf) => {
                let win = if (s.f_best - bf).abs() <= TIE_TOLERANCE {
                    "tie"
                } else if s.f_best < bf {
                    "ours"
                } else {
                    "baseline"
                };
                matched_ours.push(s.f_best);
                matched_base.push(bf);
                r.extend([bf.to_string(), format!("{:.2}", s.f_best - bf), win.to_owned()]);
            }
            None => r.extend([String::new(), String::new(), String::new()]),
        }
        r
    });
    let comparison_csv = to_csv(&header, records.collect::<Vec<_>>())?;

    let ours = ResultTable::from_stats(stats);
    let unmatched: Vec<&str> = stats
        .iter()
        .filter(|s| baseline.get(&s.instance).is_none())
        .map(|s| s.instance.as_str())
        .chain(baseline.rows.iter().filter(|r| ours.get(&r.instance).is_none()).map(|r| r.instance.as_str()))
        .collect();
    if !unmatched.is_empty() {
        writeln!(text, "unmatched instances: {}", unmatched.join(", ")).unwrap();
    }
    if !matched_ours.is_empty() {
        writeln!(
            text,
            "baseline average f_best={:.2}, ours={:.2}, delta_f_best={:.2}",
            mean(&matched_base),
            mean(&matched_ours),
            mean(&matched_ours) - mean(&matched_base)
        )
        .unwrap();
    }
    for indicator in INDICATORS {
        let joined = join_column(&ours, baseline, indicator);
        if joined.a.is_empty() {
            continue;
        }
        let r = sign_test(&joined.a, &joined.b)?;
        let verdict = match r.winner_is_a() {
            Some(true) => "ours significantly better",
            Some(false) => "baseline significantly better",
            None => "no significant difference",
        };
        writeln!(
            text,
            "wins {indicator}: ours {} baseline {} (X={}, CV={}, p={:.4}): {verdict}",
            r.wins_a, r.wins_b, r.x, r.critical_value, r.p_value
        )
        .unwrap();
    }
    Ok(Report { csv, comparison_csv: Some(comparison_csv), text })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(name: &str, f_best: f64) -> InstanceStats {
        InstanceStats {
            instance: name.into(),
            n: 25,
            m: 7,
            runs: 3,
            f_best,
            f_avg: f_best + 0.5,
            f_worst: f_best + 1.0,
            sigma: 0.25,
            t_avg: 0.1234,
        }
    }

    #[test]
    fn empty_stats_give_header_only() {
        let r = emit_report(&[], None).unwrap();
        assert_eq!(r.csv, "instance,n,m,runs,f_best,f_avg,f_worst,sigma,t_avg_s\n");
        assert!(r.comparison_csv.is_none());
    }

    #[test]
    fn csv_rows() {
        let r = emit_report(&[stats("a", 12.72)], None).unwrap();
        assert_eq!(r.csv.lines().nth(1).unwrap(), "a,25,7,3,12.72,13.22,13.72,0.25,0.123");
    }

    #[test]
    fn table_round_trip() {
        let all = [stats("a", 1.0), stats("b", 2.5)];
        let table = ResultTable::from_reader(stats_to_csv(&all).unwrap().as_bytes()).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.get("b").unwrap().values["f_best"], 2.5);
        assert_eq!(table.get("a").unwrap().values["runs"], 3.0);
    }

    #[test]
    fn baseline_dominated_everywhere() {
        let ours: Vec<_> = (0..20).map(|i| stats(&format!("i{i}"), i as f64)).collect();
        let base_csv: String = std::iter::once("instance,f_best\n".to_owned())
            .chain((0..20).map(|i| format!("i{i},{}\n", i as f64 + 1.0)))
            .collect();
        let baseline = ResultTable::from_reader(base_csv.as_bytes()).unwrap();
        let r = emit_report(&ours, Some(&baseline)).unwrap();
        let cmp = r.comparison_csv.unwrap();
        assert!(cmp.starts_with("instance,n,m,runs,f_best,f_avg,f_worst,sigma,t_avg_s,baseline_f_best,delta_f_best,win\n"));
        assert_eq!(cmp.lines().filter(|l| l.ends_with(",ours")).count(), 20);
        assert!(r.text.contains("wins f_best: ours 20 baseline 0 (X=20, CV=15"), "{}", r.text);
        assert!(r.text.contains("ours significantly better"));
    }

    #[test]
    fn average_row_difference() {
        let ours = [stats("a", 16.0), stats("b", 17.9)];
        let baseline = ResultTable::from_reader("instance,f_best\na,18.0\nb,18.8\nc,3\n".as_bytes()).unwrap();
        let r = emit_report(&ours, Some(&baseline)).unwrap();
        assert!(r.text.contains("baseline average f_best=18.40, ours=16.95, delta_f_best=-1.45"), "{}", r.text);
        assert!(r.text.contains("unmatched instances: c"));
    }

    #[test]
    fn join_reports_unmatched() {
        let a = ResultTable::from_reader("instance,f_best\nx,1\ny,2\nz,\n".as_bytes()).unwrap();
        let b = ResultTable::from_reader("instance,f_best\ny,3\nx,0\nw,1\n".as_bytes()).unwrap();
        let j = join_column(&a, &b, "f_best");
        assert_eq!(j.instances, vec!["x", "y"]);
        assert_eq!((j.a.clone(), j.b.clone()), (vec![1.0, 2.0], vec![0.0, 3.0]));
        assert_eq!(j.unmatched, vec!["z", "w"]);
        assert!(compare_tables(&a, &b, "sigma").is_err());
    }

    #[test]
    fn missing_instance_column() {
        assert!(ResultTable::from_reader("name,f_best\nx,1\n".as_bytes()).is_err());
    }
}
