use serde::Serialize;

pub const CSV_HEADER: &str =
    "dataset,algo,seed,mistakes,satisfaction,lp_bound,match_bound,mv_bound,ratio,accuracy,seconds";

/// One reported run. `seed` is the winning seed under best-of-N and
/// `seconds` covers all N runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub dataset: String,
    pub algo: String,
    pub seed: u64,
    pub runs: u64,
    pub mistakes: f64,
    pub satisfaction: f64,
    pub lp_bound: Option<f64>,
    pub match_bound: Option<f64>,
    pub mv_bound: Option<f64>,
    pub ratio: f64,
    pub accuracy: Option<f64>,
    pub seconds: f64,
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.6}",
            self.dataset,
            self.algo,
            self.seed,
            self.mistakes,
            self.satisfaction,
            opt(self.lp_bound),
            opt(self.match_bound),
            opt(self.mv_bound),
            self.ratio,
            opt(self.accuracy),
            self.seconds
        )
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "{} {} seed={} runs={}\n  mistakes      {}\n  satisfaction  {:.4}\n",
            self.dataset, self.algo, self.seed, self.runs, self.mistakes, self.satisfaction
        );
        for (name, b) in [
            ("lp bound", self.lp_bound),
            ("match bound", self.match_bound),
            ("mv bound", self.mv_bound),
        ] {
            if let Some(b) = b {
                out.push_str(&format!("  {name:<13} {b}\n"));
            }
        }
        out.push_str(&format!("  ratio         {:.4}\n", self.ratio));
        if let Some(a) = self.accuracy {
            out.push_str(&format!("  accuracy      {a:.4}\n"));
        }
        out.push_str(&format!("  seconds       {:.6}\n", self.seconds));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_row_has_one_field_per_column() {
        let r = RunRecord {
            dataset: "d".into(),
            algo: "mv".into(),
            seed: 3,
            runs: 1,
            mistakes: 2.0,
            satisfaction: 0.5,
            lp_bound: None,
            match_bound: Some(1.0),
            mv_bound: Some(1.5),
            ratio: 2.0 / 1.5,
            accuracy: None,
            seconds: 0.25,
        };
        let row = r.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("d,mv,3,2,0.5,,1,1.5,"));
        assert!(row.ends_with(",,0.250000"));
    }
}
