//! Doubling-series timing of the full pipeline.

use std::time::Instant;

use hyperfactor::oracle::random_power_of_two_product;
use hyperfactor::{pfd_hypergraph, DirectedHypergraph, UndirectedGraph};

use crate::commands::CliError;

/// Wall-time ceiling for the `n = 4096` row under `--assert-budget`.
pub const BUDGET_SECONDS: f64 = 10.0;
pub const BUDGET_N: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    /// Products of random primes on 8, 4 and 2 vertices with rank `r`.
    BoundedRank,
    /// `Q_d` as a hypergraph of 2-vertex undirected hyperedges.
    Hypercube,
}

impl Series {
    pub fn name(self) -> &'static str {
        match self {
            Series::BoundedRank => "bounded-rank",
            Series::Hypercube => "hypercube",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub series: Series,
    pub repeats: usize,
    pub min_log2: u32,
    pub max_log2: u32,
    pub r: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub factors: usize,
    /// Minimum over the repeats.
    pub seconds: f64,
}

impl BenchRow {
    /// Nanoseconds per `m · log² n`.
    pub fn per_m_log2(&self) -> f64 {
        let l = (self.n as f64).log2();
        self.seconds * 1e9 / (self.m as f64 * l * l)
    }

    /// Nanoseconds per `m · n · r²`.
    pub fn per_mnr2(&self) -> f64 {
        self.seconds * 1e9 / (self.m as f64 * self.n as f64 * (self.r * self.r) as f64)
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Least-squares slope of `log t` against `log m`.
    pub fn slope_vs_m(&self) -> Option<f64> {
        fit_slope(self.rows.iter().map(|r| (r.m as f64, r.seconds)))
    }

    /// Least-squares slope of `log t` against `log(m · log² n)`.
    pub fn slope_vs_m_log2(&self) -> Option<f64> {
        fit_slope(self.rows.iter().map(|r| {
            let l = (r.n as f64).log2();
            (r.m as f64 * l * l, r.seconds)
        }))
    }

    pub fn row(&self, n: usize) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Slope of the log-log regression line; `None` with fewer than two
/// distinct abscissae.
pub fn fit_slope(points: impl IntoIterator<Item = (f64, f64)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.into_iter().map(|(x, y)| (x.ln(), y.max(1e-9).ln())).collect();
    let k = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// The instance for one row of the series.
pub fn instance(cfg: &BenchConfig, log2_n: u32) -> Result<DirectedHypergraph, CliError> {
    match cfg.series {
        Series::BoundedRank => random_power_of_two_product(cfg.seed.wrapping_add(log2_n as u64), log2_n, cfg.r)
            .map(|(h, _)| h)
            .map_err(|e| CliError::Input(e.to_string())),
        Series::Hypercube => Ok(UndirectedGraph::hypercube(log2_n).to_hypergraph()),
    }
}

/// Factor every instance `repeats` times, keeping the fastest run. Every
/// run is checked for soundness inside the pipeline.
pub fn run(cfg: &BenchConfig) -> Result<BenchReport, CliError> {
    if cfg.repeats == 0 {
        return Err(CliError::Input("--repeats must be at least 1".into()));
    }
    if cfg.min_log2 == 0 || cfg.min_log2 > cfg.max_log2 {
        return Err(CliError::Input("need 2 <= --min-n <= --max-n".into()));
    }
    let mut rows = Vec::new();
    for log2_n in cfg.min_log2..=cfg.max_log2 {
        let h = instance(cfg, log2_n)?;
        let mut best = f64::INFINITY;
        let mut factors = 0;
        for _ in 0..cfg.repeats {
            let start = Instant::now();
            let f = pfd_hypergraph(&h)?;
            best = best.min(start.elapsed().as_secs_f64());
            factors = f.len();
        }
        rows.push(BenchRow { n: h.n(), m: h.m(), r: h.rank(), factors, seconds: best });
    }
    Ok(BenchReport { config: cfg.clone(), rows })
}

pub fn render(report: &BenchReport) -> String {
    let c = &report.config;
    let mut out = format!(
        "# series {} r={} seed={} repeats={}\n{:>6} {:>8} {:>2} {:>3} {:>12} {:>14} {:>14}\n",
        c.series.name(),
        c.r,
        c.seed,
        c.repeats,
        "n",
        "m",
        "r",
        "k",
        "seconds",
        "ns/(m*lg2n)",
        "ns/(m*n*r2)"
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{:>6} {:>8} {:>2} {:>3} {:>12.6} {:>14.3} {:>14.6}\n",
            row.n,
            row.m,
            row.r,
            row.factors,
            row.seconds,
            row.per_m_log2(),
            row.per_mnr2()
        ));
    }
    let show = |s: Option<f64>| s.map_or_else(|| "n/a".to_owned(), |x| format!("{x:.3}"));
    out.push_str(&format!("# slope log(t) vs log(m): {}\n", show(report.slope_vs_m())));
    out.push_str(&format!("# slope log(t) vs log(m*lg2n): {}\n", show(report.slope_vs_m_log2())));
    out
}

/// The `--assert-budget` check.
pub fn check_budget(report: &BenchReport) -> Result<String, CliError> {
    let row = report
        .row(BUDGET_N)
        .ok_or_else(|| CliError::Input(format!("--assert-budget needs n = {BUDGET_N} in the series")))?;
    if row.seconds > BUDGET_SECONDS {
        return Err(CliError::Internal(format!(
            "n = {BUDGET_N} took {:.3} s, over the {BUDGET_SECONDS} s budget",
            row.seconds
        )));
    }
    Ok(format!("# budget: n = {BUDGET_N} in {:.3} s <= {BUDGET_SECONDS} s\n", row.seconds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts = (1..6).map(|i| (2f64.powi(i), 3.0 * 2f64.powi(i).powf(1.5)));
        assert!((fit_slope(pts).unwrap() - 1.5).abs() < 1e-9);
        assert!(fit_slope([(1.0, 1.0)]).is_none());
    }

    #[test]
    fn table_structure_is_deterministic() {
        let cfg = BenchConfig { series: Series::BoundedRank, repeats: 2, min_log2: 3, max_log2: 5, r: 3, seed: 1 };
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        let shape = |r: &BenchReport| r.rows.iter().map(|x| (x.n, x.m, x.r, x.factors)).collect::<Vec<_>>();
        assert_eq!(shape(&a), shape(&b));
        assert_eq!(a.rows.iter().map(|r| r.n).collect::<Vec<_>>(), [8, 16, 32]);
        let text = render(&a);
        assert_eq!(text.lines().count(), 2 + 3 + 2);
    }

    #[test]
    fn budget_needs_the_reference_row() {
        let cfg = BenchConfig { series: Series::Hypercube, repeats: 1, min_log2: 2, max_log2: 3, r: 2, seed: 0 };
        let report = run(&cfg).unwrap();
        assert_eq!(check_budget(&report).unwrap_err().exit_code(), 2);
    }
}
