//! The `symgen` command line: one subcommand per construction, each printing
//! a single JSON report on standard output.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::countable::{pair_decode, pair_encode, q_codec, standard_config, Codec, Rational};
use crate::diagonal::{escape, glue, MoietyPartition};
use crate::dsl;
use crate::error::{Error, Result};
use crate::finite::{self, Semantics};
use crate::monotone::{in_m_on_prefix, mmm_factor, RationalPerm};
use crate::perm::{commutator, compose, cycles, identity, Perm, Point};
use crate::replete::{commutator_factor, replete_factor};
use crate::words::{canonical_oracle, gx_decompose, no_inverse_decompose, s1s2_decompose, verify_word, Family, FullnessOracle, Word, WordReport};
use crate::Params;

#[derive(Debug, Parser)]
#[command(name = "symgen", version, about = "Factor and decompose permutations of countable sets")]
pub struct Cli {
    #[command(flatten)]
    pub bounds: Bounds,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    /// Points checked pointwise against the target.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub prefix: u64,
    /// Steps an orbit may be traced before it counts as unresolved.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub trace_bound: u64,
    /// Points scanned when choosing which moiety takes the unbounded role.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub case_scan: u64,
    /// Candidates a lazy search may examine before stalling.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub stall_bound: u64,
    /// Stages a back-and-forth construction may run.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub stage_cap: u64,
    /// Always on; accepted for compatibility.
    #[arg(long, global = true, default_value_t = true)]
    #[serde(skip)]
    pub json: bool,
}

impl Bounds {
    fn params(&self) -> Params {
        Params {
            prefix: self.prefix,
            trace_bound: self.trace_bound,
            case_scan: self.case_scan,
            stall_bound: self.stall_bound,
            stage_cap: self.stage_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SemanticsArg {
    Group,
    Monoid,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Group => Semantics::Group,
            SemanticsArg::Monoid => Semantics::Monoid,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write f as a commutator g⁻¹h⁻¹gh.
    FactorCommutator {
        #[arg(long)]
        f: String,
    },
    /// Write f as a product of two replete permutations.
    FactorReplete {
        #[arg(long)]
        f: String,
    },
    /// Nine-letter word over two full moiety families.
    WordS1s2 {
        #[arg(long)]
        f: String,
    },
    /// Seventeen-letter word over one full family and an involution.
    WordGx {
        #[arg(long)]
        f: String,
    },
    /// Inverse-free nine-letter word using conjugates of a replete element.
    WordNoinv {
        #[arg(long)]
        f: String,
    },
    /// Factor a permutation of ℚ as m₁·m₂⁻¹·m₃ with each αmᵢ ≥ α.
    MonotoneFactor {
        #[arg(long)]
        f: String,
    },
    /// Glue a transposition into each of the first k pairing rows.
    GlueDemo {
        #[arg(long, default_value_t = 10)]
        pieces: u64,
    },
    /// Cayley-graph diameter of a finite generating set.
    FiniteDiameter {
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value = "group")]
        semantics: SemanticsArg,
        #[arg(long, default_value_t = finite::DEGREE_CEILING)]
        ceiling: usize,
    },
    /// Circle-metric generating set on ℤ/m and its diameter.
    FiniteMetric {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = finite::SET_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "group")]
        semantics: SemanticsArg,
        #[arg(long, default_value_t = finite::DEGREE_CEILING)]
        ceiling: usize,
    },
    /// Check that short words in the subgroup generate it.
    FiniteCoset {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value_t = finite::DEGREE_CEILING)]
        ceiling: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FactorCommutator { .. } => "factor-commutator",
            Command::FactorReplete { .. } => "factor-replete",
            Command::WordS1s2 { .. } => "word-s1s2",
            Command::WordGx { .. } => "word-gx",
            Command::WordNoinv { .. } => "word-noinv",
            Command::MonotoneFactor { .. } => "monotone-factor",
            Command::GlueDemo { .. } => "glue-demo",
            Command::FiniteDiameter { .. } => "finite-diameter",
            Command::FiniteMetric { .. } => "finite-metric",
            Command::FiniteCoset { .. } => "finite-coset",
        }
    }

    fn inputs(&self) -> BTreeMap<&'static str, String> {
        let mut m = BTreeMap::new();
        match self {
            Command::FactorCommutator { f }
            | Command::FactorReplete { f }
            | Command::WordS1s2 { f }
            | Command::WordGx { f }
            | Command::WordNoinv { f }
            | Command::MonotoneFactor { f } => {
                m.insert("f", f.clone());
            }
            Command::GlueDemo { pieces } => {
                m.insert("pieces", pieces.to_string());
            }
            Command::FiniteDiameter { gens, semantics, .. } => {
                m.insert("gens", gens.clone());
                m.insert("semantics", format!("{semantics:?}").to_lowercase());
            }
            Command::FiniteMetric { m: deg, d, semantics, .. } => {
                m.insert("m", deg.to_string());
                m.insert("d", d.clone());
                m.insert("semantics", format!("{semantics:?}").to_lowercase());
            }
            Command::FiniteCoset { group, subgroup, .. } => {
                m.insert("group", group.clone());
                m.insert("subgroup", subgroup.clone());
            }
        }
        m
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct FirstDisagreement {
    pub point: Point,
    pub expected: Point,
    pub actual: Point,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct Verification {
    pub checked_points: u64,
    pub disagreements: u64,
    pub first_disagreement: Option<FirstDisagreement>,
}

impl Verification {
    /// Compares `actual` against `expected` on `[0, n)`.
    pub fn pointwise(actual: &Perm, expected: &Perm, n: u64) -> Result<Verification> {
        Verification::by(n, |x| Ok((expected.forward(x)?, actual.forward(x)?)))
    }

    fn by(n: u64, mut pair: impl FnMut(Point) -> Result<(Point, Point)>) -> Result<Verification> {
        let mut v = Verification { checked_points: n, disagreements: 0, first_disagreement: None };
        for x in 0..n {
            let (expected, actual) = pair(x)?;
            if expected != actual {
                v.disagreements += 1;
                v.first_disagreement.get_or_insert(FirstDisagreement { point: x, expected, actual });
            }
        }
        Ok(v)
    }

    fn from_word(r: &WordReport) -> Verification {
        Verification {
            checked_points: r.checked,
            disagreements: r.checked - r.agreements,
            first_disagreement: r
                .first_disagreement
                .map(|(point, expected, actual)| FirstDisagreement { point, expected, actual }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<&'static str, String>,
    pub parameters: Value,
    pub outputs: Value,
    pub verification: Option<Verification>,
    pub timing_ms: u64,
    pub status: String,
}

/// Outputs and verification of a successful run, plus whether every check held.
struct Outcome {
    outputs: Value,
    verification: Option<Verification>,
    ok: bool,
}

impl Outcome {
    fn verified(outputs: Value, v: Verification) -> Outcome {
        let ok = v.disagreements == 0;
        Outcome { outputs, verification: Some(v), ok }
    }
}

fn sample(p: &Perm, k: u64) -> Result<Vec<Point>> {
    (0..k).map(|x| p.forward(x)).collect()
}

fn word_outputs(w: &Word) -> Value {
    json!({ "shape": w.shape, "wordLength": w.len(), "tags": w.tags() })
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn execute(cmd: &Command, params: &Params) -> Result<Outcome> {
    let n = params.prefix;
    let target = |f: &str| dsl::perm(f, params.trace_bound);
    match cmd {
        Command::FactorCommutator { f } => {
            let f = target(f)?.perm;
            let w = commutator_factor(&f, params);
            let v = Verification::pointwise(&commutator(&w.g, &w.h), &f, n)?;
            let outputs = json!({ "form": "g^-1 h^-1 g h", "gSample": sample(&w.g, 16)?, "hSample": sample(&w.h, 16)? });
            Ok(Outcome::verified(outputs, v))
        }
        Command::FactorReplete { f } => {
            let f = target(f)?;
            let fac = replete_factor(&f, params)?;
            let v = Verification::pointwise(&compose(&fac.p, &fac.q), &f.perm, n)?;
            let outputs = json!({
                "sigma0Case": format!("{:?}", fac.sigma0.case),
                "sigma0Head": fac.sigma0.sigma0.first(12)?,
                "spill": fac.sigma0.spill,
                "sigma1Head": fac.sigma1.first(12)?,
                "sigma2Head": fac.sigma2.first(12)?,
                "pSample": sample(&fac.p, 16)?,
                "qSample": sample(&fac.q, 16)?,
            });
            Ok(Outcome::verified(outputs, v))
        }
        Command::WordS1s2 { f } => {
            let f = target(f)?.perm;
            let cfg = standard_config();
            let uo = canonical_oracle(&cfg.sigma1);
            let vo = FullnessOracle::canonical(&cfg.sigma2, Family::V);
            let w = s1s2_decompose(&f, &cfg, &uo, &vo, params)?;
            Ok(Outcome::verified(word_outputs(&w), Verification::from_word(&verify_word(&w, &f, n)?)))
        }
        Command::WordGx { f } => {
            let f = target(f)?.perm;
            let cfg = standard_config();
            let uo = canonical_oracle(&cfg.sigma1);
            let (x, w) = gx_decompose(&f, &cfg.sigma1, &uo, params)?;
            let mut outputs = word_outputs(&w);
            outputs["xSample"] = json!(sample(&x, 16)?);
            Ok(Outcome::verified(outputs, Verification::from_word(&verify_word(&w, &f, n)?)))
        }
        Command::WordNoinv { f } => {
            let f = target(f)?.perm;
            let cfg = standard_config();
            let uo = canonical_oracle(&cfg.sigma1);
            let r = no_inverse_decompose(&f, &cfg.sigma1, &uo, params)?;
            let mut outputs = word_outputs(&r.word);
            outputs["inverseFree"] = json!(r.word.letters.iter().all(|l| !l.inverted));
            outputs["ySample"] = json!(sample(&r.y, 16)?);
            Ok(Outcome::verified(outputs, Verification::from_word(&verify_word(&r.word, &f, n)?)))
        }
        Command::MonotoneFactor { f } => {
            let f = RationalPerm::new(target(f)?.perm);
            let fac = mmm_factor(&f, params);
            let v = Verification::pointwise(&fac.product().perm, &f.perm, n)?;
            let members = [&fac.m1, &fac.m2, &fac.m3]
                .iter()
                .map(|m| in_m_on_prefix(m, n))
                .collect::<Result<Vec<bool>>>()?;
            let rows = fac.rows(6)?;
            let q = q_codec();
            let shown: Vec<Value> = rows
                .iter()
                .map(|r| json!([r.alpha.to_string(), r.beta.to_string(), r.gamma.to_string()]))
                .collect();
            let first = q.decode(0)?;
            let outputs = json!({
                "membership": { "m1": members[0], "m2": members[1], "m3": members[2] },
                "firstRows": shown,
                "f(0)": f.at(&first)?.to_string(),
            });
            let ok = v.disagreements == 0 && members.iter().all(|&b| b);
            Ok(Outcome { outputs, verification: Some(v), ok })
        }
        Command::GlueDemo { pieces } => {
            let k = *pieces;
            let swap = cycles(&[vec![0, 1]])?;
            let g = glue(&MoietyPartition, move |i| if i < k { swap.clone() } else { identity() });
            let v = Verification::by(n, |x| {
                let (i, t) = pair_decode(x);
                let expected = if i < k && t < 2 { pair_encode(i, 1 - t) } else { x };
                Ok((expected, g.forward(x)?))
            })?;
            let e = escape(&MoietyPartition, |_| cycles(&[vec![0, 1]]).unwrap());
            let anchors_moved = (0..k).all(|i| e.apply(pair_encode(i, 0)) != pair_encode(i, 0));
            let outputs = json!({ "pieces": k, "anchorsMoved": anchors_moved, "sample": sample(&g, 16)? });
            Ok(Outcome::verified(outputs, v))
        }
        Command::FiniteDiameter { gens, semantics, ceiling } => {
            let g = finite::parse_genset(gens, finite::SET_CAP)?;
            let d = finite::bfs_diameter(&g, (*semantics).into(), *ceiling)?;
            let outputs = json!({ "degree": g.m, "generators": g.len(), "result": d });
            Ok(Outcome { outputs, verification: None, ok: true })
        }
        Command::FiniteMetric { m, d, cap, semantics, ceiling } => {
            let g = finite::metric_gens(*m, parse_rational(d)?, *cap)?;
            let diam = finite::bfs_diameter(&g, (*semantics).into(), *ceiling)?;
            let closed = g.closed_under_inverse();
            let outputs = json!({ "size": g.len(), "closedUnderInverse": closed, "result": diam });
            Ok(Outcome { outputs, verification: None, ok: closed })
        }
        Command::FiniteCoset { group, subgroup, ceiling } => {
            let g = finite::parse_genset(group, finite::SET_CAP)?;
            let h = finite::parse_genset(subgroup, finite::SET_CAP)?;
            let r = finite::coset_bound_check(&g, &h, *ceiling)?;
            let ok = r.verdict;
            let mut outputs = json!(r);
            outputs["verdict"] = json!(if ok { "PASS" } else { "FAIL" });
            Ok(Outcome { outputs, verification: None, ok })
        }
    }
}

/// Exit code for an error: 2 for unparsable input, 3 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 3,
    }
}

/// Runs a parsed command line, returning the exit code and report.
pub fn run(cli: &Cli) -> (i32, Report) {
    let params = cli.bounds.params();
    let start = Instant::now();
    let result = execute(&cli.command, &params);
    let timing_ms = start.elapsed().as_millis() as u64;
    let mut report = Report {
        command: cli.command.name().into(),
        inputs: cli.command.inputs(),
        parameters: json!(cli.bounds),
        outputs: Value::Null,
        verification: None,
        timing_ms,
        status: String::new(),
    };
    let code = match result {
        Ok(o) => {
            report.outputs = o.outputs;
            report.verification = o.verification;
            report.status = if o.ok { "VERIFIED" } else { "FAILED" }.into();
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report.outputs = json!({ "error": e.to_string() });
            report.status = format!("ERROR:{}", e.code());
            exit_code(&e)
        }
    };
    (code, report)
}

/// Parses `argv` and runs it. Unparsable arguments yield exit code 2.
pub fn run_args<I, T>(argv: I) -> (i32, Option<Report>, Option<String>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let (code, report) = run(&cli);
            (code, Some(report), None)
        }
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            (code, None, Some(e.to_string()))
        }
    }
}
