//! The `mhiggs` command line. [`run`] does all the work and returns the text to print and
//! the exit code, so the binary and the tests share one code path.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mismatch or a computation
//! fails, 2 on a usage error (bad type, malformed input).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mhiggs_core::exactalg::{int, parse_rational, rational_str, Poly, Rational, ShiftPoly};
use mhiggs_core::golden::{verify, GoldenData};
use mhiggs_core::mhiggs::{
    darboux_bracket, darboux_chart, darboux_omega, gl2_minuscule_space, hitchin_fibration,
};
use mhiggs_core::qchar::{bethe_residues, classical_limit, qcharacter};
use mhiggs_core::qtriang::triangularize_symbolic;
use mhiggs_core::rootdata::{
    base_dimension, moduli_dimension, reduced_dimension, ColoredDivisor, DynkinType,
    QuiverOrientation, RootSystem,
};
use mhiggs_core::sklyanin::{
    bracket_r_matrix_oracle, r_matrix_numerator, sklyanin_bracket, EvaluationFunction, GroupRatMap,
};
use mhiggs_core::steinberg::classical_chevalley_check;
use mhiggs_core::Error;

pub const DEFAULT_SEED: u64 = 20240917;
pub const GOLDEN_DIR_ENV: &str = "MHIGGS_GOLDEN_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "mhiggs",
    version,
    about = "Exact q-characters, q-triangularization and Sklyanin brackets"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fundamental q-character by iWeyl expansion.
    Qchar {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        node: usize,
        /// Edges as `2>1,3>2,4>2`; defaults to larger → smaller label.
        #[arg(long)]
        orientation: Option<String>,
    },
    /// Solve for the gauge `u_α` and the q-eigenvalue formulas `t'_i`.
    Triangularize {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        orientation: Option<String>,
    },
    /// Re-derive the reference formulas and diff them against the golden files.
    VerifyAppendix {
        #[arg(long = "type")]
        ty: String,
        /// Directory holding `a1.json`, `a2.json`, `d4.json`; the built-in copies otherwise.
        #[arg(long, env = GOLDEN_DIR_ENV)]
        golden_dir: Option<PathBuf>,
    },
    /// Compare Chevalley coordinates of the Steinberg section with q-character limits.
    ClassicalCheck {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Relations of the framed GL2 moduli space with one zero and one pole.
    Gl2Moduli {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
        /// `g_∞` as `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,1")]
        framing: String,
        /// A residue point `a0,b0,c0,d0` to test and evaluate.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Darboux coordinates `a,b`; needs identity framing and `z1 = -z2`.
        #[arg(long, allow_hyphen_values = true)]
        darboux: Option<String>,
    },
    /// Sklyanin bracket of two evaluation functions.
    Bracket {
        /// Group map as inline JSON or a path to a JSON file.
        #[arg(long)]
        map: String,
        /// e.g. `entry:1,2@3`, `trace@-1/2`, `coeff:2@5`.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        /// Also evaluate the r-matrix expansion truncated after this many terms.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Moduli, base and reduced dimensions for a coloured divisor.
    Dim {
        #[arg(long = "type")]
        ty: String,
        /// `[{"z":"-1","coweight":[1,0]}, ...]`
        #[arg(long, default_value = "[]")]
        divisor: String,
        #[arg(long)]
        torus_rank: Option<usize>,
    },
    /// Residues of the A1 q-character at the apparent poles of `y = Q(z)/Q(z/q)`.
    Bethe {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Coefficients of `p`, constant term first.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        p: String,
        /// Roots of `Q`.
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: Option<String>,
}

enum Failure {
    Core(Error),
    Mismatch { report: String, summary: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::InvalidInput(_) | Error::UnsupportedType(_)
    )
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: None,
        },
        Err(Failure::Mismatch { report, summary }) => Outcome {
            code: 1,
            stdout: report,
            stderr: Some(summary),
        },
        Err(Failure::Core(e)) => Outcome {
            code: if usage_error(&e) { 2 } else { 1 },
            stdout: String::new(),
            stderr: Some(e.to_string()),
        },
    }
}

fn dispatch(cli: &Cli) -> Res<String> {
    let json_out = cli.format == Format::Json;
    let emit = |text: String, value: Value| -> Res<String> {
        Ok(if json_out {
            format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("valid JSON")
            )
        } else {
            text
        })
    };
    match &cli.command {
        Command::Qchar {
            ty,
            node,
            orientation,
        } => {
            let ty: DynkinType = ty.parse()?;
            let o = orientation_for(ty, orientation.as_deref())?;
            let qc = qcharacter(ty, &o, *node)?;
            let dim = classical_limit(&qc).dimension();
            emit(
                format!("{}\n", qc.poly),
                json!({
                    "type": ty.to_string(),
                    "node": node,
                    "orientation": orientation_str(&o),
                    "text": qc.poly.to_string(),
                    "poly": qc.poly.to_json(),
                    "terms": qc.poly.len(),
                    "classical_dimension": dim,
                }),
            )
        }
        Command::Triangularize { ty, orientation } => {
            let ty: DynkinType = ty.parse()?;
            let o = orientation_for(ty, orientation.as_deref())?;
            let res = triangularize_symbolic(ty, &o)?;
            let rs = RootSystem::new(ty)?;
            let mut text = format!("type {ty}\norientation {}\n", orientation_str(&o));
            let mut us = Vec::new();
            for (a, u) in res.u.iter().enumerate() {
                writeln!(text, "u{} = {u}", a + 1).unwrap();
                us.push(json!({
                    "label": a + 1,
                    "root": rs.positive_roots[a],
                    "text": u.to_string(),
                    "poly": u.as_poly().map(ShiftPoly::to_json),
                }));
            }
            let mut ts = Vec::new();
            for (i, t) in res.tprime.iter().enumerate() {
                writeln!(text, "t'{} = {t}", i + 1).unwrap();
                ts.push(json!({
                    "node": i + 1,
                    "text": t.to_string(),
                    "poly": t.to_json(),
                    "terms": t.len(),
                    "terms_with_multiplicity": rational_str(&multiplicity_count(t)),
                }));
            }
            emit(
                text,
                json!({
                    "type": ty.to_string(),
                    "orientation": orientation_str(&o),
                    "u": us,
                    "tprime": ts,
                    "residual_checked": res.residual_checked,
                }),
            )
        }
        Command::VerifyAppendix { ty, golden_dir } => {
            let ty: DynkinType = ty.parse()?;
            let golden = match golden_dir {
                Some(dir) => GoldenData::load_from_dir(dir, ty)?,
                None => GoldenData::builtin(ty)?,
            };
            let rs = RootSystem::new(ty)?;
            let o = if golden.orientation.is_empty() {
                QuiverOrientation::default_for(&rs)
            } else {
                QuiverOrientation::parse(&rs, &golden.orientation)?
            };
            let checks = verify(&triangularize_symbolic(ty, &o)?, &golden)?;
            let ok = checks.iter().filter(|c| c.matches()).count();
            let mut text = String::new();
            for c in &checks {
                let status = if c.matches() { "ok" } else { "MISMATCH" };
                writeln!(text, "{:<5} {:>3} terms  {status}", c.name, c.terms).unwrap();
                if let Some(m) = &c.mismatch {
                    writeln!(
                        text,
                        "      first difference at {}: computed {}, reference {}",
                        m.monomial, m.computed, m.reference
                    )
                    .unwrap();
                }
            }
            writeln!(text, "{ok}/{} formulas match", checks.len()).unwrap();
            let value = json!({
                "type": ty.to_string(),
                "checked": checks.len(),
                "matching": ok,
                "formulas": checks.iter().map(|c| json!({
                    "name": c.name,
                    "terms": c.terms,
                    "matches": c.matches(),
                    "mismatch": c.mismatch.as_ref().map(|m| json!({
                        "monomial": m.monomial,
                        "computed": m.computed,
                        "reference": m.reference,
                    })),
                })).collect::<Vec<_>>(),
            });
            let out = emit(text, value)?;
            if ok == checks.len() {
                Ok(out)
            } else {
                Err(Failure::Mismatch {
                    report: out,
                    summary: format!("{} of {} formulas differ", checks.len() - ok, checks.len()),
                })
            }
        }
        Command::ClassicalCheck { ty, trials } => {
            let ty: DynkinType = ty.parse()?;
            let rep = classical_chevalley_check(ty, *trials, cli.seed)?;
            let tuple = |v: &[Rational]| {
                format!(
                    "({})",
                    v.iter().map(rational_str).collect::<Vec<_>>().join(",")
                )
            };
            emit(
                format!(
                    "{ty}: {} points, constants {}, section offsets {}\n",
                    rep.trials,
                    tuple(&rep.constants),
                    tuple(&rep.section_offsets)
                ),
                rep.to_json(),
            )
        }
        Command::Gl2Moduli {
            z1,
            z2,
            framing,
            point,
            darboux,
        } => {
            let f = rational_list(framing)?;
            let f: [Rational; 4] = f
                .try_into()
                .map_err(|_| Error::InvalidInput("framing needs four entries".into()))?;
            let space = gl2_minuscule_space(parse_rational(z1)?, parse_rational(z2)?, f)?;
            let mut text = format!(
                "linear: {}\nquadric: {}\ndimension: 2\n",
                space.linear_relation, space.quadric_relation
            );
            let mut value = json!({
                "z1": rational_str(&space.z1),
                "z2": rational_str(&space.z2),
                "linear": space.linear_relation.to_string(),
                "quadric": space.quadric_relation.to_string(),
                "dimension": 2,
            });
            if let Some(p) = point {
                let p: [Rational; 4] = rational_list(p)?
                    .try_into()
                    .map_err(|_| Error::InvalidInput("point needs four entries".into()))?;
                let on = space.contains(&p);
                writeln!(text, "on moduli space: {}", if on { "yes" } else { "no" }).unwrap();
                value["on_moduli_space"] = json!(on);
                if on {
                    let e = hitchin_fibration(&space.group_map(&p)?);
                    writeln!(text, "trace g(z) = {}\ndet g(z) = {}", e[0], e[1]).unwrap();
                    value["fibration"] = json!(e.iter().map(|x| x.to_json()).collect::<Vec<_>>());
                }
            }
            if let Some(d) = darboux {
                let ab = rational_list(d)?;
                let [a, b] = <[Rational; 2]>::try_from(ab)
                    .map_err(|_| Error::InvalidInput("darboux needs a,b".into()))?;
                let identity = space.framing == [int(1), int(0), int(0), int(1)];
                if !identity || space.z1 != -space.z2.clone() {
                    return Err(Error::InvalidInput(
                        "Darboux chart needs identity framing and z1 = -z2".into(),
                    )
                    .into());
                }
                let m = space.z2.clone();
                let p = darboux_chart(&m, &a, &b)?;
                let (u, v) = auxiliary_points(&m);
                let br = darboux_bracket(&m, &a, &b, &u, &v)?;
                let om = darboux_omega(&m, &a, &b)?;
                writeln!(
                    text,
                    "point: {}\n{{a,b}} = {}\nomega(d/da, d/db) = {}",
                    p.iter().map(rational_str).collect::<Vec<_>>().join(","),
                    rational_str(&br),
                    rational_str(&om)
                )
                .unwrap();
                value["darboux"] = json!({
                    "point": p.iter().map(rational_str).collect::<Vec<_>>(),
                    "bracket_ab": rational_str(&br),
                    "omega_ab": rational_str(&om),
                });
            }
            emit(text, value)
        }
        Command::Bracket {
            map,
            phi,
            psi,
            terms,
        } => {
            let text_in = if map.trim_start().starts_with('{') {
                map.clone()
            } else {
                std::fs::read_to_string(map)
                    .map_err(|e| Error::InvalidInput(format!("{map}: {e}")))?
            };
            let v: Value =
                serde_json::from_str(&text_in).map_err(|e| Error::Parse(e.to_string()))?;
            let g = GroupRatMap::from_json(&v)?;
            let (phi, psi): (EvaluationFunction, EvaluationFunction) = (phi.parse()?, psi.parse()?);
            let b = sklyanin_bracket(&phi, &psi, &g)?;
            let mut text = format!("{{{phi}, {psi}}} = {}\n", rational_str(&b));
            let mut value = json!({ "phi": phi.to_string(), "psi": psi.to_string(), "value": rational_str(&b) });
            if let Some(n) = terms {
                let partial = bracket_r_matrix_oracle(&phi, &psi, &g, *n)?;
                let k = r_matrix_numerator(&phi, &psi, &g)?;
                writeln!(
                    text,
                    "r-matrix sum through v^{n}: {}\nnumerator K: {}",
                    rational_str(&partial),
                    rational_str(&k)
                )
                .unwrap();
                value["r_matrix"] = json!({ "terms": n, "partial": rational_str(&partial), "numerator": rational_str(&k) });
            }
            emit(text, value)
        }
        Command::Dim {
            ty,
            divisor,
            torus_rank,
        } => {
            let ty: DynkinType = ty.parse()?;
            let v: Value =
                serde_json::from_str(divisor).map_err(|e| Error::Parse(e.to_string()))?;
            let d = ColoredDivisor::from_json(ty, &v)?;
            let moduli = moduli_dimension(ty, &d)?;
            let base = base_dimension(ty, &d).ok();
            let mut text = format!("moduli: {moduli}\n");
            match base {
                Some(b) => writeln!(text, "base: {b}").unwrap(),
                None => writeln!(text, "base: half-integral").unwrap(),
            }
            let mut value = json!({ "type": ty.to_string(), "moduli": moduli, "base": base });
            if let Some(k) = torus_rank {
                let r = reduced_dimension(ty, &d, *k)?;
                writeln!(text, "reduced: {r}").unwrap();
                value["reduced"] = json!(r);
            }
            emit(text, value)
        }
        Command::Bethe { q, p, roots } => {
            let q = parse_rational(q)?;
            let p = Poly::new(rational_list(p)?);
            let roots = rational_list(roots)?;
            let qc = qcharacter(
                DynkinType::a(1),
                &QuiverOrientation { edges: Vec::new() },
                1,
            )?;
            let res = bethe_residues(&qc, &Poly::from_roots(&roots), &p, &q)?;
            let regular = res.iter().all(|(_, r)| *r == int(0));
            let mut text = String::new();
            for (pole, r) in &res {
                writeln!(
                    text,
                    "pole {}: residue {}",
                    rational_str(pole),
                    rational_str(r)
                )
                .unwrap();
            }
            writeln!(text, "regular: {}", if regular { "yes" } else { "no" }).unwrap();
            emit(
                text,
                json!({
                    "residues": res.iter().map(|(a, r)| json!({"pole": rational_str(a), "residue": rational_str(r)})).collect::<Vec<_>>(),
                    "regular": regular,
                }),
            )
        }
    }
}

fn orientation_for(ty: DynkinType, s: Option<&str>) -> Result<QuiverOrientation, Error> {
    let rs = RootSystem::new(ty)?;
    match s {
        Some(s) if !s.trim().is_empty() => QuiverOrientation::parse(&rs, s),
        _ => Ok(QuiverOrientation::default_for(&rs)),
    }
}

fn orientation_str(o: &QuiverOrientation) -> String {
    o.edges
        .iter()
        .map(|(a, b)| format!("{a}>{b}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn rational_list(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| parse_rational(x.trim()))
        .collect()
}

/// Sum of coefficients: the number of monomials counted with multiplicity.
pub fn multiplicity_count(p: &ShiftPoly) -> Rational {
    p.terms().map(|(_, c)| c.clone()).sum()
}

/// Two distinct points away from `±m`.
fn auxiliary_points(m: &Rational) -> (Rational, Rational) {
    let mut pts = (1..).map(|k| int(1000 + 7 * k));
    let mut next = || pts.find(|p| p != m && *p != -m.clone()).expect("infinite");
    let u = next();
    (u, next())
}
