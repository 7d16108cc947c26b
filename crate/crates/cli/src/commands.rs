//! Command bodies. Each returns the text for standard output or a
//! [`CliError`] that decides the exit code.

use std::io::Read;

use hyperfactor::oracle::{
    brute_force_pfd_hypergraph, is_prime_number, random_prime_hypergraph, random_product_with_sizes, same_factors,
    GeneratorConfig, HYPERGRAPH_CAP,
};
use hyperfactor::{pfd_hypergraph, product_of, two_section, DirectedHypergraph, HypergraphFactorization, PfdError, VertexId};
use serde::Serialize;

use crate::format::{self, natural_cmp};

pub const SEED_ENV: &str = "HYPERFACTOR_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable, malformed, or disconnected input, or bad flags.
    #[error("{0}")]
    Input(String),
    /// A consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<PfdError> for CliError {
    fn from(e: PfdError) -> Self {
        match e {
            PfdError::Disconnected => CliError::Input(e.to_string()),
            PfdError::Inconsistent(_) => CliError::Internal(e.to_string()),
        }
    }
}

/// File contents, or standard input for `-`.
pub fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    }
    Ok(text)
}

pub fn load(path: &str, stdin: &mut dyn Read) -> Result<DirectedHypergraph, CliError> {
    let text = read_source(path, stdin)?;
    let name = if path == "-" { "<stdin>" } else { path };
    format::parse(&text).map_err(|e| {
        let lines: Vec<String> = e.0.iter().map(|d| format!("{name}: {d}")).collect();
        CliError::Input(lines.join("\n"))
    })
}

#[derive(Serialize)]
struct JsonArc {
    tail: Vec<String>,
    head: Vec<String>,
}

#[derive(Serialize)]
struct JsonHypergraph {
    vertices: Vec<String>,
    arcs: Vec<JsonArc>,
}

#[derive(Serialize)]
struct JsonFactor {
    /// 1-based indices of the 2-section factors merged into this one.
    classes: Vec<usize>,
    #[serde(flatten)]
    hypergraph: JsonHypergraph,
}

#[derive(Serialize)]
struct JsonCoordinate {
    vertex: String,
    coords: Vec<u32>,
}

#[derive(Serialize)]
struct JsonVerification {
    reconstruction: bool,
    /// `"agrees"`, or `"skipped"` above the oracle cap.
    oracle: &'static str,
}

#[derive(Serialize)]
struct JsonFactorization {
    vertices: usize,
    arcs: usize,
    factors: Vec<JsonFactor>,
    coordinates: Vec<JsonCoordinate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<JsonVerification>,
}

fn json_hypergraph(h: &DirectedHypergraph) -> JsonHypergraph {
    let order = format::output_order(h, None);
    let names = |vs: Vec<VertexId>| vs.into_iter().map(|v| h.name(v).to_owned()).collect();
    JsonHypergraph {
        vertices: order.iter().map(|&v| h.name(v).to_owned()).collect(),
        arcs: format::sorted_arcs(h, &order).into_iter().map(|(t, hd)| JsonArc { tail: names(t), head: names(hd) }).collect(),
    }
}

/// Reconstruction check, plus the oracle on small inputs.
fn run_verification(h: &DirectedHypergraph, f: &HypergraphFactorization) -> Result<JsonVerification, CliError> {
    f.verify(h).map_err(|e| CliError::Internal(format!("reconstruction failed: {e}")))?;
    let oracle = if h.n() <= HYPERGRAPH_CAP {
        let truth = brute_force_pfd_hypergraph(h).map_err(|e| CliError::Internal(e.to_string()))?;
        let agrees = same_factors(&f.factors, &truth).map_err(|e| CliError::Internal(e.to_string()))?;
        if !agrees {
            return Err(CliError::Internal("factors disagree with the exhaustive search".into()));
        }
        "agrees"
    } else {
        "skipped"
    };
    Ok(JsonVerification { reconstruction: true, oracle })
}

pub fn factor(h: &DirectedHypergraph, json: bool, verify: bool) -> Result<String, CliError> {
    let f = pfd_hypergraph(h)?;
    let verification = if verify { Some(run_verification(h, &f)?) } else { None };
    let order = format::output_order(h, Some(&f.coordinates));
    if json {
        let doc = JsonFactorization {
            vertices: h.n(),
            arcs: h.m(),
            factors: f
                .factors
                .iter()
                .zip(&f.partition)
                .map(|(x, part)| JsonFactor { classes: part.iter().map(|i| i + 1).collect(), hypergraph: json_hypergraph(x) })
                .collect(),
            coordinates: order
                .iter()
                .map(|&v| JsonCoordinate { vertex: h.name(v).to_owned(), coords: f.coordinates.coords(v).to_vec() })
                .collect(),
            verification,
        };
        let mut out = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
        out.push('\n');
        return Ok(out);
    }
    let mut out = format!("# input: {} vertices, {} arcs\n# prime factors: {}\n", h.n(), h.m(), f.len());
    for (i, (x, part)) in f.factors.iter().zip(&f.partition).enumerate() {
        let classes: Vec<String> = part.iter().map(|c| (c + 1).to_string()).collect();
        out.push_str(&format!(
            "# factor {}: {} vertices, {} arcs, 2-section factors {}\n",
            i + 1,
            x.n(),
            x.m(),
            classes.join(" ")
        ));
        out.push_str(&format::serialize(x, None));
    }
    out.push_str("# coordinates\n");
    for &v in &order {
        out.push_str(&format!("# coord {} = {}\n", h.name(v), format::coord_tuple(&f.coordinates, v)));
    }
    if let Some(v) = verification {
        out.push_str("# verified: reconstruction ok\n");
        out.push_str(&format!("# verified: oracle {}\n", v.oracle));
    }
    Ok(out)
}

pub fn product(hs: &[DirectedHypergraph]) -> String {
    format::serialize(&product_of(hs), None)
}

pub fn section(h: &DirectedHypergraph) -> String {
    let g = two_section(h);
    let mut lines: Vec<(&str, &str)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (h.name(VertexId(u)), h.name(VertexId(v)));
            if natural_cmp(a, b).is_le() {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    lines.sort_by(|x, y| natural_cmp(x.0, y.0).then_with(|| natural_cmp(x.1, y.1)));
    lines.into_iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

/// Full verification of `h`; with `claimed` factors, also compare the
/// multiset up to isomorphism.
pub fn verify(h: &DirectedHypergraph, claimed: &[DirectedHypergraph]) -> Result<String, CliError> {
    let f = pfd_hypergraph(h)?;
    let v = run_verification(h, &f)?;
    let mut out = format!("reconstruction: ok\noracle: {}\nfactors: {}\n", v.oracle, f.len());
    if !claimed.is_empty() {
        let same = same_factors(&f.factors, claimed).map_err(|e| CliError::Internal(e.to_string()))?;
        if !same {
            return Err(CliError::Internal("computed factors differ from the given ones".into()));
        }
        out.push_str("claimed factors: match\n");
    }
    Ok(out)
}

/// Seed from the flag, else from [`SEED_ENV`], else 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Input(format!("{SEED_ENV}={s} is not a 64-bit seed"))),
        Err(_) => Ok(0),
    }
}

/// Sizes for which the generator can certify a prime.
fn certifiable(n: usize) -> bool {
    n <= HYPERGRAPH_CAP || is_prime_number(n)
}

/// Nondecreasing factor sizes with product `n`, each certifiable.
fn size_splits(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, parts: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if n >= min && certifiable(n) {
                acc.push(n);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for d in min..=n {
            if n.is_multiple_of(d) && certifiable(d) {
                acc.push(d);
                go(n / d, parts - 1, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, parts, 2, &mut Vec::new(), &mut out);
    out
}

/// A prime on `n` vertices (`factors = 1`) or a shuffled product of 2 or
/// 3 primes with `n` vertices in total.
pub fn gen(seed: u64, n: usize, r: usize, factors: usize) -> Result<String, CliError> {
    let cfg = GeneratorConfig::new(seed, n).with_rank(r);
    let h = match factors {
        1 => random_prime_hypergraph(&cfg).map_err(|e| CliError::Input(e.to_string()))?,
        2 | 3 => {
            let splits = size_splits(n, factors);
            if splits.is_empty() {
                return Err(CliError::Input(format!("{n} vertices cannot be split into {factors} certifiable factors")));
            }
            let sizes = &splits[(seed % splits.len() as u64) as usize];
            random_product_with_sizes(&cfg, sizes).map_err(|e| CliError::Input(e.to_string()))?.0
        }
        _ => return Err(CliError::Input(format!("--factors must be 1, 2 or 3, got {factors}"))),
    };
    let body = format::serialize(&h, None);
    let rest = body.strip_prefix(format::HEADER).unwrap_or(&body);
    Ok(format!("{}\n# gen seed={seed} n={n} r={r} factors={factors}{rest}", format::HEADER))
}
