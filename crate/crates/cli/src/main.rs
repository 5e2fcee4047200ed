//! `schubert`: tables and experiments for Schubert unions in `G(l,m)`.
//!
//! Exit codes: 0 on success, 2 for invalid arguments, 3 when a size guard or
//! oracle budget would be exceeded.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use schubert_core::duality::{dual_point_count, dual_union, dual_union_explicit, DualityReport};
use schubert_core::experiments::{self, Question};
use schubert_core::gf::Field;
use schubert_core::grid::{point_count_poly, GrassParams, SchubertUnion, DEFAULT_ENUMERATION_GUARD};
use schubert_core::optimizer::{bound_table, krull_c, krull_c1, krull_c2, krull_dk, threshold_report};
use schubert_core::pluecker::{generator_matrix, DEFAULT_POINT_GUARD};
use schubert_core::tables::{bound_rows, dual_rows, enumerate_rows};
use schubert_core::twodim::{dual_sigma, union_to_mset, union_to_sigma};
use schubert_core::weights::{union_code_params, weight_records, WeightRecord, DEFAULT_ORACLE_BUDGET};
use schubert_core::Error as CoreError;

use output::{emit, emit_bytes, Format, Report};

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Schubert unions in Grassmannians G(l,m) and their codes"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Dimension of the subspaces.
    #[arg(long, global = true)]
    l: Option<usize>,
    /// Dimension of the ambient space.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Field size for point enumeration and weights.
    #[arg(long, global = true)]
    q: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest grid (number of Plücker coordinates) enumerated exhaustively.
    #[arg(long, global = true, env = "SCHUBERT_GUARD")]
    guard: Option<u64>,
    /// Largest number of subspaces the weight oracle may visit.
    #[arg(long, global = true)]
    oracle_budget: Option<u128>,
    /// TOML file with defaults for the options above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    l: Option<usize>,
    m: Option<usize>,
    q: Option<u32>,
    format: Option<Format>,
    out: Option<PathBuf>,
    guard: Option<u64>,
    oracle_budget: Option<u64>,
    point_guard: Option<u64>,
}

struct Settings {
    l: Option<usize>,
    m: Option<usize>,
    q: u32,
    format: Format,
    out: Option<PathBuf>,
    guard: u64,
    oracle_budget: u128,
    point_guard: u64,
}

impl Settings {
    fn resolve(opts: GlobalOpts) -> Result<Self> {
        let cfg: ConfigFile = match &opts.config {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                toml::from_str(&text).map_err(|e| invalid(format!("config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        Ok(Self {
            l: opts.l.or(cfg.l),
            m: opts.m.or(cfg.m),
            q: opts.q.or(cfg.q).unwrap_or(2),
            format: opts.format.or(cfg.format).unwrap_or(Format::Markdown),
            out: opts.out.or(cfg.out),
            guard: opts.guard.or(cfg.guard).unwrap_or(DEFAULT_ENUMERATION_GUARD),
            oracle_budget: opts
                .oracle_budget
                .or(cfg.oracle_budget.map(u128::from))
                .unwrap_or(DEFAULT_ORACLE_BUDGET),
            point_guard: cfg.point_guard.unwrap_or(DEFAULT_POINT_GUARD),
        })
    }

    fn params(&self) -> Result<GrassParams> {
        match (self.l, self.m) {
            (Some(l), Some(m)) => Ok(GrassParams::new(l, m)?),
            _ => Err(invalid("both --l and --m are required")),
        }
    }

    fn field(&self) -> Result<Field> {
        Ok(Field::new(self.q)?)
    }

    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

#[derive(Subcommand)]
enum Command {
    /// List every Schubert union with span, Krull dimension, M_U, g_U and maximality.
    Enumerate,
    /// Dual of one union, or the table of all dual pairs.
    Dual {
        #[arg(long)]
        union: Option<String>,
    },
    /// M_U and sigma_U of a union in G(2,m), and of its dual.
    Encode {
        #[arg(long)]
        union: String,
    },
    /// J_r, D_r, E_r for every codimension r.
    Bounds,
    /// Which candidate (L, R or LR) is optimal at each codimension, for l = 2.
    Directions {
        /// Also show the Krull-dimension regime predicted for each K.
        #[arg(long)]
        thresholds: bool,
    },
    /// Krull dimension bounds for l = 2.
    Krull {
        #[arg(long, value_enum, default_value = "k")]
        by: KrullBy,
    },
    /// Generator matrix of C(l,m) or of the code of a union.
    Genmatrix {
        #[arg(long)]
        union: Option<String>,
        /// Binary dump: JSON header line, then row-major bytes.
        #[arg(long)]
        binary: bool,
    },
    /// Higher weights: formulas, bounds and (optionally) the exhaustive oracle.
    Weights {
        /// Inclusive range such as `1..6` or a single `r`.
        #[arg(long)]
        r_range: Option<String>,
        #[arg(long)]
        oracle: bool,
        /// Parameters of the code of this union instead of C(l,m) (l = 2).
        #[arg(long)]
        union: Option<String>,
    },
    /// Check Q3, Q4, Q8 or Q9 on the given G(l,m).
    Experiment { question: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum KrullBy {
    /// d(K) for every spanning dimension K.
    K,
    /// c1(d), c2(d) and C(d) for every Krull dimension d.
    D,
}

/// Marks an error as a bad argument (exit code 2).
#[derive(Debug)]
struct InvalidArgument(String);

impl std::fmt::Display for InvalidArgument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidArgument {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InvalidArgument(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InvalidArgument>().is_some() {
        return 2;
    }
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::TooLarge { .. } | CoreError::BudgetExceeded { .. } | CoreError::OracleMemory { .. }) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn yn(b: bool) -> String {
    if b { "Y" } else { "N" }.to_string()
}

fn parse_union(params: GrassParams, text: &str) -> Result<SchubertUnion> {
    Ok(SchubertUnion::parse(params, text)?)
}

fn parse_range(text: &str, k: usize) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || invalid(format!("bad --r-range {text:?}; expected `a..b` or `r`"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim_start_matches('=').trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let r = text.trim().parse().map_err(|_| bad())?;
            (r, r)
        }
    };
    if a == 0 || a > b || b > k {
        return Err(invalid(format!("--r-range must lie within 1..{k}")));
    }
    Ok(a..=b)
}

fn run(cli: Cli) -> Result<()> {
    let s = Settings::resolve(cli.opts)?;
    match cli.cmd {
        Command::Enumerate => {
            let params = s.params()?;
            let rows = enumerate_rows(params, s.guard)?;
            let table = rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.union.clone(), r.span.to_string(), r.krull.to_string()];
                    if params.l == 2 {
                        v.push(r.mset.clone().unwrap_or_default());
                    }
                    v.extend([r.poly.clone(), yn(r.maximal)]);
                    v
                })
                .collect();
            let headers: &[&str] = if params.l == 2 {
                &["U", "Span", "Krull", "M_U", "g_U", "Max"]
            } else {
                &["U", "Span", "Krull", "g_U", "Max"]
            };
            let rep = Report::new(&rows, headers, table)?.titled(format!("Schubert unions in {params}"));
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Dual { union: Some(text) } => {
            let params = s.params()?;
            let u = parse_union(params, &text)?;
            let report = DualityReport::new(&u);
            let explicit = dual_union_explicit(&u);
            let g_dual = point_count_poly(&report.dual);
            let recip = dual_point_count(&u)?;
            let value = serde_json::json!({
                "report": report,
                "explicit_agrees": explicit == report.dual,
                "dual_point_count": g_dual.to_string(),
                "reciprocal_point_count": recip.to_string(),
            });
            let row = vec![
                u.to_string(),
                report.span_primal.to_string(),
                report.dual.to_string(),
                report.span_dual.to_string(),
                g_dual.to_string(),
                yn(recip == g_dual),
                yn(explicit == report.dual),
            ];
            let rep = Report::new(
                &value,
                &["U", "Span", "U*", "Span*", "g_U*", "reciprocity", "explicit"],
                vec![row],
            )?;
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Dual { union: None } => {
            let params = s.params()?;
            let rows = dual_rows(params, s.guard)?;
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r.union.clone(),
                        r.span.to_string(),
                        r.dual.clone(),
                        r.dual_span.to_string(),
                        yn(r.maximal),
                    ]
                })
                .collect();
            let rep = Report::new(&rows, &["U", "Span", "U*", "Span*", "Max"], table)?
                .titled(format!("Dual pairs in {params}"));
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Encode { union } => {
            let params = s.params()?;
            let u = parse_union(params, &union)?;
            let mset = union_to_mset(&u)?;
            let d = dual_union(&u);
            let sigma = union_to_sigma(&u).ok();
            let dsig = match &sigma {
                Some(sg) => dual_sigma(params.m, sg)?,
                None => union_to_sigma(&d).ok(),
            };
            let show =
                |x: &Option<schubert_core::twodim::SigmaSeq>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
            let value = serde_json::json!({
                "union": u,
                "mset": mset.elements(),
                "sigma": sigma.as_ref().map(|x| x.sequence()),
                "dual": d,
                "dual_mset": mset.complement().elements(),
                "dual_sigma": dsig.as_ref().map(|x| x.sequence()),
            });
            let row = vec![
                u.to_string(),
                mset.to_string(),
                show(&sigma),
                d.to_string(),
                mset.complement().to_string(),
                show(&dsig),
            ];
            let rep = Report::new(&value, &["U", "M_U", "sigma_U", "U*", "M_U*", "sigma_U*"], vec![row])?;
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Bounds => {
            let params = s.params()?;
            let table = bound_table(params, s.guard)?;
            let rows = bound_rows(&table);
            let text_rows = rows
                .iter()
                .map(|r| {
                    vec![
                        r.r.to_string(),
                        r.span.to_string(),
                        r.j.clone(),
                        r.d.clone(),
                        r.e.clone(),
                        r.direction.clone().unwrap_or_default(),
                        r.union.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            let rep = Report::new(&rows, &["r", "K", "J_r", "D_r", "E_r", "Dir", "U"], text_rows)?
                .titled(format!("Schubert-union bounds for C({},{})", params.l, params.m));
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Directions { thresholds: false } => {
            let params = s.params()?;
            if params.l != 2 {
                return Err(CoreError::NotTwoDim(params.l).into());
            }
            let table = bound_table(params, s.guard)?;
            let dirs: Vec<String> = table.directions().iter().map(|d| d.to_string()).collect();
            let value: Vec<serde_json::Value> = dirs
                .iter()
                .enumerate()
                .map(|(r, d)| serde_json::json!({"codim": r, "direction": d}))
                .collect();
            let mut headers = vec!["Codim".to_string()];
            headers.extend((0..dirs.len()).map(|r| r.to_string()));
            let mut row = vec!["Dir".to_string()];
            row.extend(dirs);
            let hdr: Vec<&str> = headers.iter().map(String::as_str).collect();
            let rep =
                Report::new(&value, &hdr, vec![row])?.titled(format!("Directions for C({},{})", params.l, params.m));
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Directions { thresholds: true } => {
            let params = s.params()?;
            let rows = threshold_report(params)?;
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r.codim.to_string(),
                        r.span.to_string(),
                        r.krull.to_string(),
                        format!("{:?}", r.regime),
                        r.direction.to_string(),
                        yn(r.consistent),
                    ]
                })
                .collect();
            let rep = Report::new(&rows, &["Codim", "K", "d(K)", "Regime", "Dir", "Consistent"], table)?;
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Krull { by } => {
            let params = s.params()?;
            if params.l != 2 {
                return Err(CoreError::NotTwoDim(params.l).into());
            }
            let k = params.m * (params.m - 1) / 2;
            let rep = match by {
                KrullBy::K => {
                    let rows: Vec<(usize, i64)> = (0..=k)
                        .map(|span| Ok((span, krull_dk(params, span)?)))
                        .collect::<Result<_>>()?;
                    let value: Vec<_> = rows.iter().map(|(k, d)| serde_json::json!({"K": k, "d": d})).collect();
                    let table = rows.iter().map(|(k, d)| vec![k.to_string(), d.to_string()]).collect();
                    Report::new(&value, &["K", "d(K)"], table)?
                }
                KrullBy::D => {
                    let top = 2 * params.m as i64 - 4;
                    let mut value = Vec::new();
                    let mut table = Vec::new();
                    for d in -1..=top {
                        let c = krull_c(params, d)?;
                        let (c1, c2) = if d >= params.m as i64 - 1 {
                            (Some(krull_c1(params.m, d)), Some(krull_c2(d)))
                        } else {
                            (None, None)
                        };
                        value.push(serde_json::json!({"d": d, "c1": c1, "c2": c2, "C": c}));
                        let show = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
                        table.push(vec![
                            d.to_string(),
                            show(c1),
                            show(c2),
                            c.map_or("inf".to_string(), |v| v.to_string()),
                        ]);
                    }
                    Report::new(&value, &["d", "c1(d)", "c2(d)", "C(d)"], table)?
                }
            };
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Genmatrix { union, binary } => {
            let params = s.params()?;
            let field = s.field()?;
            let u = match union {
                Some(text) => parse_union(params, &text)?,
                None => SchubertUnion::full(params),
            };
            let gen = generator_matrix(&u, &field, s.point_guard)?;
            let mut buf = Vec::new();
            if binary {
                gen.write_binary(&mut buf)?;
            } else {
                gen.write_text(&mut buf)?;
            }
            emit_bytes(&buf, s.out())
        }
        Command::Weights {
            r_range,
            oracle,
            union: Some(text),
        } => {
            let params = s.params()?;
            let field = s.field()?;
            let u = parse_union(params, &text)?;
            let cp = union_code_params(&u, &field, s.guard)?;
            let q = field.q() as u64;
            let mut table = vec![
                vec![
                    "n".into(),
                    String::new(),
                    cp.n.to_string(),
                    cp.n_value.map_or(String::new(), |v| v.to_string()),
                ],
                vec!["k".into(), String::new(), cp.k.to_string(), cp.k.to_string()],
            ];
            let range = match &r_range {
                Some(t) => Some(parse_range(t, cp.k)?),
                None => None,
            };
            let keep = |r: &usize| range.as_ref().is_none_or(|rg| rg.contains(r));
            for (label, list) in [
                ("low", &cp.low_weights),
                ("top", &cp.top_weights),
                ("bound", &cp.relative_bounds),
            ] {
                for (r, p) in list.iter().filter(|(r, _)| keep(r)) {
                    let v = p.eval_to_u64(q).map_or(String::new(), |v| v.to_string());
                    table.push(vec![label.to_string(), r.to_string(), p.to_string(), v]);
                }
            }
            let mut value = serde_json::to_value(&cp)?;
            if oracle {
                let gen = generator_matrix(&u, &field, s.point_guard)?;
                let o = schubert_core::weights::Oracle::new(&gen, &field)?;
                let mut oracle_rows = Vec::new();
                for r in range.clone().unwrap_or(1..=cp.k) {
                    let d = gen.n() as u64 - o.h(r, s.oracle_budget)?;
                    table.push(vec!["oracle".into(), r.to_string(), String::new(), d.to_string()]);
                    oracle_rows.push(serde_json::json!({"r": r, "value": d}));
                }
                value["oracle"] = serde_json::Value::Array(oracle_rows);
            }
            let rep = Report::new(&value, &["kind", "r", "poly", "value"], table)?;
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Weights {
            r_range,
            oracle,
            union: None,
        } => {
            let params = s.params()?;
            let field = s.field()?;
            let k = params
                .k()
                .filter(|&k| k <= 1 << 20)
                .ok_or_else(|| invalid("k too large"))? as usize;
            let range = match r_range {
                Some(t) => parse_range(&t, k)?,
                None => 1..=k,
            };
            let gen = if oracle {
                Some(generator_matrix(&SchubertUnion::full(params), &field, s.point_guard)?)
            } else {
                None
            };
            let records: Vec<WeightRecord> = weight_records(
                params,
                &field,
                range,
                gen.as_ref().map(|g| (g, s.oracle_budget)),
                s.guard,
            )?;
            let show = |x: Option<u64>| x.map_or(String::new(), |v| v.to_string());
            let table = records
                .iter()
                .map(|w| {
                    vec![
                        w.r.to_string(),
                        format!("{:?}", w.source),
                        w.poly.as_ref().map_or(String::new(), |p| p.to_string()),
                        show(w.value),
                        show(w.lower),
                        show(w.upper),
                    ]
                })
                .collect();
            let rep = Report::new(&records, &["r", "source", "poly", "value", "lower", "upper"], table)?.titled(
                format!("Weights of C({},{}) over GF({})", params.l, params.m, field.q()),
            );
            emit(&rep.render(s.format)?, s.out())
        }
        Command::Experiment { question } => {
            let params = s.params()?;
            let question: Question = question.parse()?;
            let outcome = experiments::run(question, params, s.q, s.oracle_budget, s.guard)?;
            let witnesses: Vec<String> = outcome.witnesses.iter().map(|w| w.to_string()).collect();
            let mut table = vec![vec![
                format!("{question:?}"),
                params.l.to_string(),
                params.m.to_string(),
                outcome.summary(),
                witnesses.join(" "),
            ]];
            if s.format == Format::Markdown {
                table.extend(
                    outcome
                        .details
                        .iter()
                        .map(|d| vec![String::new(), String::new(), String::new(), d.clone(), String::new()]),
                );
            }
            let rep = Report::new(&outcome, &["Question", "l", "m", "Result", "Witnesses"], table)?;
            emit(&rep.render(s.format)?, s.out())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..6", 6).unwrap(), 1..=6);
        assert_eq!(parse_range("2..=3", 6).unwrap(), 2..=3);
        assert_eq!(parse_range("4", 6).unwrap(), 4..=4);
        assert!(parse_range("0..2", 6).is_err());
        assert!(parse_range("1..7", 6).is_err());
        assert!(parse_range("x", 6).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&invalid("x")), 2);
        assert_eq!(exit_code(&CoreError::TooLarge { points: 1, guard: 0 }.into()), 3);
        assert_eq!(exit_code(&CoreError::InvalidParams { l: 3, m: 2 }.into()), 2);
        assert_eq!(exit_code(&anyhow::anyhow!("plain failure")), 1);
    }
}
