//! Benchmark results and their JSON and CSV forms.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use blackbox_core::{Difficulty, EnvSpec, Family, ScoreReport, TurnBudget};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionResult {
    pub env_id: String,
    pub family: Family,
    pub difficulty: Difficulty,
    pub seed: u64,
    /// `None` when the session was aborted.
    pub accuracy: Option<f64>,
    pub error: Option<String>,
    pub report: Option<ScoreReport>,
}

impl SessionResult {
    pub fn new(spec: &EnvSpec, seed: u64, report: Option<ScoreReport>, error: Option<String>) -> Self {
        // a session that errored after finishing still counts as aborted
        let accuracy = if error.is_none() { report.as_ref().map(|r| r.accuracy) } else { None };
        SessionResult {
            env_id: spec.id.to_string(),
            family: spec.family,
            difficulty: spec.difficulty,
            seed,
            accuracy,
            error: error.or_else(|| report.is_none().then(|| "session did not finish".to_string())),
            report,
        }
    }
}

/// Mean over environments of each environment's mean accuracy over seeds.
/// `difficulty` is `None` for the whole family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub family: Family,
    pub difficulty: Option<Difficulty>,
    pub environments: usize,
    pub sessions: usize,
    pub errors: usize,
    pub accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRun {
    pub driver: String,
    pub budget: TurnBudget,
    pub seeds: Vec<u64>,
    pub results: Vec<SessionResult>,
    pub aggregates: Vec<Aggregate>,
}

fn mean(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

pub fn aggregate(results: &[SessionResult]) -> Vec<Aggregate> {
    let mut groups: BTreeMap<(Family, bool, Option<Difficulty>), Vec<&SessionResult>> = BTreeMap::new();
    for r in results {
        groups.entry((r.family, false, Some(r.difficulty))).or_default().push(r);
        groups.entry((r.family, true, None)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((family, _, difficulty), rows)| {
            let mut per_env: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
            for r in &rows {
                let accs = per_env.entry(r.env_id.as_str()).or_default();
                accs.extend(r.accuracy);
            }
            Aggregate {
                family,
                difficulty,
                environments: per_env.len(),
                sessions: rows.len(),
                errors: rows.iter().filter(|r| r.accuracy.is_none()).count(),
                accuracy: mean(per_env.values().filter_map(|a| mean(a.iter().copied()))),
            }
        })
        .collect()
}

impl BenchmarkRun {
    pub fn new(driver: String, budget: TurnBudget, seeds: Vec<u64>, mut results: Vec<SessionResult>) -> Self {
        results.sort_by(|a, b| (&a.env_id, a.seed).cmp(&(&b.env_id, b.seed)));
        let aggregates = aggregate(&results);
        BenchmarkRun { driver, budget, seeds, results, aggregates }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("benchmark runs serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        Ok(Self::from_json(&std::fs::read_to_string(path)?)?)
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json())
    }

    /// One row per session, then one per aggregate with `env_id` "all" and
    /// an empty seed.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["env_id", "family", "difficulty", "seed", "accuracy", "errors", "message"])?;
        let acc = |a: Option<f64>| a.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.results {
            w.write_record([
                r.env_id.clone(),
                r.family.to_string(),
                r.difficulty.to_string(),
                r.seed.to_string(),
                acc(r.accuracy),
                u8::from(r.accuracy.is_none()).to_string(),
                r.error.clone().unwrap_or_default(),
            ])?;
        }
        for a in &self.aggregates {
            w.write_record([
                "all".to_string(),
                a.family.to_string(),
                a.difficulty.map_or("All".to_string(), |d| d.to_string()),
                String::new(),
                acc(a.accuracy),
                a.errors.to_string(),
                format!("{} environments, {} sessions", a.environments, a.sessions),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use blackbox_core::registry::lookup;

    fn row(id: &str, seed: u64, acc: Option<f64>) -> SessionResult {
        let spec = lookup(id).unwrap();
        let mut r = SessionResult::new(spec, seed, None, acc.is_none().then(|| "boom".into()));
        r.accuracy = acc;
        if acc.is_some() {
            r.error = None;
        }
        r
    }

    #[test]
    fn family_mean_of_environment_means() {
        let run = BenchmarkRun::new(
            "t".into(),
            TurnBudget::new(1, 1),
            vec![0, 1],
            vec![
                row("eri/caesar-8", 0, Some(1.0)),
                row("eri/caesar-8", 1, Some(0.5)),
                row("eri/bacon", 0, Some(0.0)),
                row("eri/bacon", 1, None),
                row("eri/hill", 0, Some(0.25)),
            ],
        );
        let easy = run.aggregates.iter().find(|a| a.difficulty == Some(Difficulty::Easy)).unwrap();
        assert_eq!(easy.accuracy, Some((0.75 + 0.0) / 2.0));
        assert_eq!((easy.environments, easy.sessions, easy.errors), (2, 4, 1));
        let all = run.aggregates.iter().find(|a| a.difficulty.is_none()).unwrap();
        assert_eq!(all.accuracy, Some((0.75 + 0.0 + 0.25) / 3.0));
        assert_eq!(run.results[0].env_id, "eri/bacon");
    }

    #[test]
    fn csv_header_and_rows() {
        let run = BenchmarkRun::new("t".into(), TurnBudget::new(1, 1), vec![0], vec![row("cri/add", 0, Some(1.0))]);
        let mut buf = Vec::new();
        run.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("env_id,family,difficulty,seed,accuracy"));
        assert_eq!(lines.next().unwrap(), "cri/add,CRI,Hard,0,1,0,");
        assert_eq!(lines.count(), 2);
    }
}
