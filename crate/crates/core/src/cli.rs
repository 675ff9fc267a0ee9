//! Command-line front end. Every command prints one [`ResultDocument`] as
//! JSON on standard output.
//!
//! Exit codes: 0 success, 1 verification failure or internal error,
//! 2 usage or parse error, 3 precondition violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::rational;
use crate::document::{
    parse_point, parse_rational_point, rationals, BasisDoc, ConfigFile, FzDoc, Payload, PolyDoc,
    ResultDocument, ValueDoc,
};
use crate::error::{Error, Result};
use crate::geometry::{short_affine_regular, zonotope_volume, Zonotope};
use crate::matroid::{cocircuits, is_totally_unimodular, VectorConfig};
use crate::pspace::{central_space, internal_space, q_basis, GradedSubspace};
use crate::splines::{BoxSplineEvaluator, MultiSpline, PartitionCounter, PieceTable};
use crate::toddcalc::{interpolate_internal, ToddCalculator};
use crate::verify::{check_residue_1d, residue_params, CheckReport, Status, Verifier, VerifyOptions, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "zonotodd", version, about = "Todd operators, box splines and zonotopal spaces of integer vector configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// TOML or JSON file with `matrix = [[...], ...]` and optional `labels`.
    #[arg(long, short = 'c', conflicts_with = "matrix")]
    config: Option<PathBuf>,
    /// Inline matrix, rows separated by `;`: "1,0,1;0,1,1".
    #[arg(long, short = 'm', allow_hyphen_values = true)]
    matrix: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Total unimodularity of the matrix.
    CheckTu(ConfigArgs),
    /// Bases in lexicographic order with external activity and Q_B.
    Bases(ConfigArgs),
    /// Cocircuits as sorted column index lists.
    Cocircuits(ConfigArgs),
    /// Graded basis of the central space P(X).
    Pspace(ConfigArgs),
    /// Graded basis of the internal space P_-(X).
    Internal(ConfigArgs),
    /// Lattice points of Z(X), its interior and Z(X, w).
    Zonotope(ConfigArgs),
    /// f_z for the given points, or for every z in Z(X, w).
    Fz {
        #[command(flatten)]
        config: ConfigArgs,
        /// Lattice point "1,1"; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// The internal polynomial taking the given values at interior points.
    Interpolate {
        #[command(flatten)]
        config: ConfigArgs,
        /// "z:value", e.g. "1,1:1/2"; repeatable. Unlisted points get 0.
        #[arg(long = "value", allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// B_X(u); on affine hyperplanes the limit along the default w.
    BoxEval {
        #[command(flatten)]
        config: ConfigArgs,
        /// Rational point "1/2,3/4".
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// The number of nonnegative integer solutions of X λ = u.
    Count {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// The chamber polynomial p_Ω of T_X for the chamber entered from u.
    ChamberPiece {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Rational direction into the chamber; defaults to the short w.
        #[arg(long, allow_hyphen_values = true)]
        perturb: Option<String>,
    },
    /// Runs verification suites; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Suite name or "all"; repeatable.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        /// Restricts main-theorem and kp to this z.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Point for a single kp check.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Parameters of residue-1d when no configuration is given.
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().kp_points)]
        kp_points: usize,
        #[arg(long, default_value_t = VerifyOptions::default().directions)]
        directions: usize,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_PRECONDITION,
    }
}

fn load(args: &ConfigArgs) -> Result<(ConfigFile, VectorConfig)> {
    let file = match (&args.config, &args.matrix) {
        (Some(path), _) => ConfigFile::load(path)?,
        (None, Some(m)) => ConfigFile::parse_inline(m)?,
        (None, None) => return Err(Error::Parse("one of --config or --matrix is required".into())),
    };
    let config = file.to_config()?;
    Ok((file, config))
}

fn require_spanning(config: &VectorConfig) -> Result<()> {
    if config.spans() {
        Ok(())
    } else {
        Err(Error::NotSpanning {
            rank: config.rank(),
            dim: config.dim(),
        })
    }
}

fn space_payload(name: &str, space: &GradedSubspace) -> Payload {
    let top = space.max_degree().map_or(0, |k| k + 1);
    Payload::Space {
        space: name.into(),
        dimension: space.dimension(),
        dims: space.dims(),
        basis: (0..top)
            .map(|k| space.degree(k).iter().map(PolyDoc::new).collect())
            .collect(),
    }
}

fn document(command: &str, file: Option<ConfigFile>, result: Payload) -> ResultDocument {
    let fingerprint = file
        .as_ref()
        .and_then(|f| f.to_config().ok())
        .map(|c| c.fingerprint());
    ResultDocument {
        command: command.into(),
        config: file,
        fingerprint,
        result,
    }
}

/// The document and the exit code it implies.
fn execute(command: Command) -> Result<(ResultDocument, i32)> {
    let simple = |name: &str, args: &ConfigArgs, f: &dyn Fn(&VectorConfig) -> Result<Payload>| {
        let (file, config) = load(args)?;
        let payload = f(&config)?;
        Ok((document(name, Some(file), payload), EXIT_OK))
    };
    match command {
        Command::CheckTu(args) => simple("check-tu", &args, &|x| {
            Ok(Payload::CheckTu {
                totally_unimodular: is_totally_unimodular(x),
                rank: x.rank(),
                spanning: x.spans(),
            })
        }),
        Command::Bases(args) => simple("bases", &args, &|x| {
            let bases: Vec<BasisDoc> = q_basis(x)?
                .into_iter()
                .map(|(b, q)| BasisDoc {
                    indices: b.indices,
                    external_activity: b.ext_active,
                    q: PolyDoc::new(&q),
                })
                .collect();
            Ok(Payload::Bases {
                count: bases.len(),
                bases,
            })
        }),
        Command::Cocircuits(args) => simple("cocircuits", &args, &|x| {
            let cs: Vec<Vec<usize>> = cocircuits(x).into_iter().map(|c| c.indices).collect();
            Ok(Payload::Cocircuits {
                count: cs.len(),
                cocircuits: cs,
            })
        }),
        Command::Pspace(args) => simple("pspace", &args, &|x| Ok(space_payload("central", &central_space(x)?))),
        Command::Internal(args) => simple("internal", &args, &|x| Ok(space_payload("internal", &internal_space(x)?))),
        Command::Zonotope(args) => simple("zonotope", &args, &|x| {
            require_spanning(x)?;
            let z = Zonotope::new(x)?;
            let w = short_affine_regular(x)?;
            Ok(Payload::Zonotope {
                volume: zonotope_volume(x)?,
                lattice_points: z.lattice_points(),
                interior_points: z.interior_points(),
                shifted_points: z.shifted_points(&w)?,
                w: rationals(&w),
            })
        }),
        Command::Fz { config, z } => {
            let (file, x) = load(&config)?;
            require_spanning(&x)?;
            let zonotope = Zonotope::new(&x)?;
            let w = short_affine_regular(&x)?;
            let points = if z.is_empty() {
                zonotope.shifted_points(&w)?
            } else {
                z.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>>>()?
            };
            let mut calc = ToddCalculator::new(&x)?;
            let mut entries = Vec::new();
            for p in points {
                if p.len() != x.dim() {
                    return Err(Error::Parse(format!("point {p:?} has the wrong dimension")));
                }
                entries.push(FzDoc {
                    interior: zonotope.contains_int_interior(&p),
                    f: PolyDoc::new(&calc.f_z(&p)?),
                    z: p,
                });
            }
            let payload = Payload::Fz {
                w: rationals(&w),
                entries,
            };
            Ok((document("fz", Some(file), payload), EXIT_OK))
        }
        Command::Interpolate { config, values } => {
            let (file, x) = load(&config)?;
            let mut map = std::collections::BTreeMap::new();
            for v in &values {
                let (z, val) = v
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected z:value, got {v:?}")))?;
                let z = parse_point(z)?;
                if z.len() != x.dim() {
                    return Err(Error::Parse(format!("point {z:?} has the wrong dimension")));
                }
                map.insert(z, rational::parse(val)?);
            }
            let p = interpolate_internal(&x, &map)?;
            let payload = Payload::Interpolate {
                values: map
                    .iter()
                    .map(|(z, v)| ValueDoc {
                        z: z.clone(),
                        value: rational::format(v),
                    })
                    .collect(),
                polynomial: PolyDoc::new(&p),
            };
            Ok((document("interpolate", Some(file), payload), EXIT_OK))
        }
        Command::BoxEval { config, u } => {
            let (file, x) = load(&config)?;
            let u = parse_rational_point(&u)?;
            if u.len() != x.dim() {
                return Err(Error::Parse("point has the wrong dimension".into()));
            }
            require_spanning(&x)?;
            let (value, direction) = match BoxSplineEvaluator::new(&x)?.eval(&u) {
                Ok(v) => (v, None),
                Err(Error::NotGeneric) => {
                    let w = short_affine_regular(&x)?;
                    let mut table = PieceTable::new(&x, &w)?;
                    let one = crate::algebra::poly::Polynomial::one(x.dim());
                    (table.lim_diff(&one, &u)?, Some(rationals(&w)))
                }
                Err(e) => return Err(e),
            };
            let payload = Payload::BoxEval {
                point: rationals(&u),
                direction,
                value: rational::format(&value),
            };
            Ok((document("box-eval", Some(file), payload), EXIT_OK))
        }
        Command::Count { config, u } => {
            let (file, x) = load(&config)?;
            let u = parse_point(&u)?;
            if u.len() != x.dim() {
                return Err(Error::Parse("point has the wrong dimension".into()));
            }
            let count = PartitionCounter::new(&x)?.count(&u)?;
            Ok((document("count", Some(file), Payload::Count { point: u, count }), EXIT_OK))
        }
        Command::ChamberPiece { config, u, perturb } => {
            let (file, x) = load(&config)?;
            let u = parse_point(&u)?;
            if u.len() != x.dim() {
                return Err(Error::Parse("point has the wrong dimension".into()));
            }
            let perturb = match perturb {
                Some(p) => parse_rational_point(&p)?,
                None => short_affine_regular(&x)?,
            };
            if perturb.len() != x.dim() {
                return Err(Error::Parse("perturbation has the wrong dimension".into()));
            }
            let mut ms = MultiSpline::new(&x)?;
            let uq = rational::from_ints(&u);
            let chamber = ms.chamber_of(&uq, &perturb)?;
            let piece = ms.piece(&chamber)?;
            let payload = Payload::ChamberPiece {
                value: rational::format(&piece.eval(&uq)),
                point: u,
                perturbation: rationals(&perturb),
                chamber: chamber.key.0,
                piece: PolyDoc::new(&piece),
            };
            Ok((document("chamber-piece", Some(file), payload), EXIT_OK))
        }
        Command::Verify {
            config,
            suite,
            z,
            u,
            a,
            b,
            seed,
            kp_points,
            directions,
        } => {
            let options = VerifyOptions {
                seed,
                kp_points,
                directions,
            };
            verify(&config, &suite, z.as_deref(), u.as_deref(), a.zip(b), options)
        }
    }
}

fn verify(
    args: &ConfigArgs,
    suites: &[String],
    z: Option<&str>,
    u: Option<&str>,
    residue: Option<(usize, usize)>,
    options: VerifyOptions,
) -> Result<(ResultDocument, i32)> {
    let names: Vec<String> = if suites.iter().any(|s| s == "all") {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    if let Some(bad) = names.iter().find(|s| !SUITES.contains(&s.as_str())) {
        return Err(Error::Parse(format!("unknown suite {bad:?}; known: {}", SUITES.join(", "))));
    }
    let no_config = args.config.is_none() && args.matrix.is_none();
    let mut reports: Vec<CheckReport> = Vec::new();
    let mut explicit = false;
    let file = if no_config {
        let (a, b) = residue.ok_or_else(|| Error::Parse("a configuration or --a/--b is required".into()))?;
        if names != ["residue-1d"] {
            return Err(Error::Parse("without a configuration only residue-1d can run".into()));
        }
        explicit = true;
        reports.push(check_residue_1d(a, b));
        None
    } else {
        let (file, x) = load(args)?;
        let z = z.map(parse_point).transpose()?;
        let u = u.map(parse_point).transpose()?;
        let mut v = Verifier::new(&x, options);
        for name in &names {
            let report = match (name.as_str(), &z, &u, residue) {
                ("main-theorem", Some(z), _, _) => {
                    explicit = true;
                    let dirs = v.directions()?;
                    v.check_main_theorem(z, &dirs)
                }
                ("kp", Some(z), Some(u), _) => {
                    explicit = true;
                    v.check_kp(z, u)
                }
                ("residue-1d", _, _, Some((a, b))) => {
                    explicit = true;
                    check_residue_1d(a, b)
                }
                ("residue-1d", _, _, None) => match residue_params(&x) {
                    Some((a, b)) => check_residue_1d(a, b),
                    None if names.len() > 1 => continue,
                    None => {
                        return Err(Error::Precondition(
                            "residue-1d needs --a/--b or a 1 x N matrix with entries ±1".into(),
                        ))
                    }
                },
                _ => v.run_suite(name)?,
            };
            reports.push(report);
        }
        Some(file)
    };
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let skipped = reports.iter().any(|r| r.status == Status::Skipped);
    let code = if failed {
        EXIT_FAILURE
    } else if skipped && (explicit || names.len() == 1) {
        EXIT_PRECONDITION
    } else {
        EXIT_OK
    };
    let payload = Payload::Verify {
        passed: !failed,
        reports,
    };
    Ok((document("verify", file, payload), code))
}

/// Parses `args` (including the program name), runs the command and writes
/// the JSON document to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok((doc, code)) => {
            let _ = out.write_all(doc.to_json().as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with captured output: `(exit code, stdout, stderr)`.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 output"),
        String::from_utf8(err).expect("utf-8 output"),
    )
}
