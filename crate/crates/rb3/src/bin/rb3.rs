//! Command-line interface: parse the JSON file formats, dispatch the
//! validators and constructions, render reports and dimension tables, and
//! run the exhaustive operator search.
//!
//! Exit codes: 0 when everything validates, 1 when violations are found,
//! 2 on parse/shape/usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rb3::algebra::{
    catalog, descendent_algebra, validate_rb, RotaBaxterOperator, ThreeLieAlgebra,
};
use rb3::cohomology::{
    coboundary_rb_matrix, is_coboundary, is_cocycle, CohomologyTable,
};
use rb3::deform::{infinitesimal_is_cocycle, validate_deformation_orders};
use rb3::io::{
    self, algebra_from_file, algebra_to_file, operator_from_file, operator_to_file,
    representation_from_file, representation_to_file, rows_to_matrix, to_canonical_json,
    AlgebraFile, DeformationFile, ManinFile, MatchedPairFile, NijenhuisFile, OOperatorFile,
    OperatorFile, RBCochainFile, RepresentationFile,
};
use rb3::linalg::Rational;
use rb3::rep::{
    dual_rep, induced_rep_bar, induced_rep_tilde, validate_rb_representation,
    validate_representation, RBRepresentation,
};
use rb3::search::{search_rb_operators, SearchSpec, DEFAULT_BUDGET};
use rb3::structures::{
    bowtie, central_extension, extension_cocycle_coords, extension_coboundary_matrix,
    validate_manin_triple, validate_matched_pair, validate_nijenhuis, validate_o_operator,
    MatchedPair,
};
use rb3::Report;

#[derive(Parser)]
#[command(name = "rb3", version, about = "Exact computer algebra for Rota-Baxter 3-Lie algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write machine/text output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra and optionally an operator and a representation
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Emit the descendent algebra of a valid pair
    Derived {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
    },
    /// Emit the dual representation
    DualRep {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Emit the first induced representation on the descendent algebra
    TildeRep {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Emit the second induced representation on the descendent algebra
    BarRep {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Print dimension tables of the three cochain complexes
    Cohomology {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Check whether a combined cochain is a cocycle / coboundary
    Cocycle {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Build the central extension for given twist data and validate it
    Extend {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        /// Extension data file (module operator plus optional psi/chi)
        #[arg(long)]
        extension: PathBuf,
    },
    /// Validate a matched pair and report the bowtie verdict
    MatchedPair {
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate a Manin triple
    Manin {
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate a Nijenhuis operator candidate
    Nijenhuis {
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate an O-operator candidate
    OOperator {
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate a formal deformation order by order
    Deform {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rb: Option<PathBuf>,
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate Rota-Baxter operators over a finite entry set
    Search {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Comma-separated list of allowed entries, e.g. "0,1,-1/2"
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
        /// JSON file holding a mask matrix (zero entries forced to zero)
        #[arg(long)]
        mask: Option<PathBuf>,
    },
}

enum RunError {
    /// Parse/shape/usage problems -> exit 2
    Usage(String),
}

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for RunError {
            fn from(e: $ty) -> Self {
                RunError::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(
    rb3::io::IoError,
    rb3::algebra::AlgebraError,
    rb3::rep::RepError,
    rb3::structures::StructuresError,
    rb3::search::SearchError
);

struct Output {
    machine: serde_json::Value,
    text: String,
    valid: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, RunError> {
    let raw = fs::read_to_string(path)
        .map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))
}

/// `--algebra` accepts either a JSON file path or a catalog name such as
/// `A3`, `B4`, `abelian(2)`, `A3-rbm1(1,2,3,4)`. Catalog names carrying an
/// operator supply a default when `--rb` is omitted.
fn load_algebra(spec: &str) -> Result<(ThreeLieAlgebra, Option<RotaBaxterOperator>), RunError> {
    if Path::new(spec).exists() {
        let f: AlgebraFile = read_json(Path::new(spec))?;
        return Ok((algebra_from_file(&f)?, None));
    }
    catalog(spec).map_err(|e| RunError::Usage(format!("--algebra {spec:?}: {e}")))
}

fn load_pair(
    algebra: &str,
    rb: &Option<PathBuf>,
) -> Result<(ThreeLieAlgebra, RotaBaxterOperator), RunError> {
    let (alg, default_op) = load_algebra(algebra)?;
    let op = match rb {
        Some(path) => {
            let f: OperatorFile = read_json(path)?;
            operator_from_file(&f)?
        }
        None => default_op.ok_or_else(|| {
            RunError::Usage("--rb is required unless the catalog name includes an operator".into())
        })?,
    };
    if op.dim() != alg.dim() {
        return Err(RunError::Usage("operator size does not match the algebra".into()));
    }
    Ok((alg, op))
}

fn load_rep(
    alg: &ThreeLieAlgebra,
    op: &RotaBaxterOperator,
    path: &Path,
) -> Result<RBRepresentation, RunError> {
    let f: RepresentationFile = read_json(path)?;
    Ok(representation_from_file(alg.clone(), op.weight.clone(), &f)?)
}

fn report_json(report: &Report) -> serde_json::Value {
    json!({"valid": report.is_valid(), "violations": report.violations})
}

fn report_text(what: &str, report: &Report) -> String {
    if report.is_valid() {
        format!("{what}: ok\n")
    } else {
        let mut s = format!("{what}: {} violation(s)\n", report.violations.len());
        for v in &report.violations {
            s.push_str("  ");
            s.push_str(v);
            s.push('\n');
        }
        s
    }
}

fn table_json(t: &CohomologyTable) -> serde_json::Value {
    let rows = |dims: &[rb3::cohomology::DegreeDims]| -> Vec<serde_json::Value> {
        dims.iter()
            .map(|d| json!({"p": d.p, "C": d.dim_c, "Z": d.dim_z, "B": d.dim_b, "H": d.dim_h}))
            .collect()
    };
    json!({
        "plain": rows(&t.plain),
        "descendent": rows(&t.descendent),
        "rota_baxter": rows(&t.rota_baxter),
    })
}

fn table_text(t: &CohomologyTable) -> String {
    let mut s = String::new();
    for (name, dims) in [
        ("plain", &t.plain),
        ("descendent", &t.descendent),
        ("rota-baxter", &t.rota_baxter),
    ] {
        s.push_str(&format!("{name} complex:\n"));
        s.push_str("  p  dim C  dim Z  dim B  dim H\n");
        for d in dims {
            s.push_str(&format!(
                "  {}  {:5}  {:5}  {:5}  {:5}\n",
                d.p, d.dim_c, d.dim_z, d.dim_b, d.dim_h
            ));
        }
    }
    s
}

fn run(cmd: &Cmd) -> Result<Output, RunError> {
    match cmd {
        Cmd::Verify { algebra, rb, rep } => {
            let (alg, default_op) = load_algebra(algebra)?;
            let mut report = alg.validate();
            let op = match rb {
                Some(path) => {
                    let f: OperatorFile = read_json(path)?;
                    Some(operator_from_file(&f)?)
                }
                None => default_op,
            };
            if let Some(op) = &op {
                report.merge(validate_rb(&alg, op)?);
            }
            if let Some(path) = rep {
                let op = op.as_ref().ok_or_else(|| {
                    RunError::Usage("--rep requires an operator for the weight and compatibility".into())
                })?;
                let rbrep = load_rep(&alg, op, path)?;
                report.merge(validate_representation(&rbrep.rep));
                report.merge(validate_rb_representation(&rbrep, op)?);
            }
            Ok(Output {
                machine: json!({"report": report_json(&report)}),
                text: report_text("verify", &report),
                valid: report.is_valid(),
            })
        }
        Cmd::Derived { algebra, rb } => {
            let (alg, op) = load_pair(algebra, rb)?;
            let mut report = alg.validate();
            report.merge(validate_rb(&alg, &op)?);
            if !report.is_valid() {
                return Ok(Output {
                    machine: json!({"report": report_json(&report)}),
                    text: report_text("derived", &report),
                    valid: false,
                });
            }
            let (derived, _) = descendent_algebra(&alg, &op)?;
            let f = algebra_to_file(&derived);
            Ok(Output {
                machine: json!({"report": {"valid": true, "violations": []}, "algebra": f}),
                text: to_canonical_json(&f),
                valid: true,
            })
        }
        Cmd::DualRep { algebra, rb, rep }
        | Cmd::TildeRep { algebra, rb, rep }
        | Cmd::BarRep { algebra, rb, rep } => {
            let (alg, op) = load_pair(algebra, rb)?;
            let rbrep = load_rep(&alg, &op, rep)?;
            let derived = match cmd {
                Cmd::DualRep { .. } => dual_rep(&rbrep),
                Cmd::TildeRep { .. } => induced_rep_tilde(&rbrep, &op)?,
                _ => induced_rep_bar(&rbrep, &op)?,
            };
            let f = representation_to_file(&derived);
            Ok(Output {
                machine: json!({"report": {"valid": true, "violations": []}, "rep": f}),
                text: to_canonical_json(&f),
                valid: true,
            })
        }
        Cmd::Cohomology {
            algebra,
            rb,
            rep,
            max_degree,
        } => {
            if *max_degree < 1 {
                return Err(RunError::Usage("--max-degree must be at least 1".into()));
            }
            let (alg, op) = load_pair(algebra, rb)?;
            let rbrep = load_rep(&alg, &op, rep)?;
            let table = rb3::cohomology::cohomology_dims(&rbrep, &op, *max_degree)?;
            Ok(Output {
                machine: json!({"report": {"valid": true, "violations": []}, "table": table_json(&table)}),
                text: table_text(&table),
                valid: true,
            })
        }
        Cmd::Cocycle {
            algebra,
            rb,
            rep,
            cochain,
        } => {
            let (alg, op) = load_pair(algebra, rb)?;
            let rbrep = load_rep(&alg, &op, rep)?;
            let f: RBCochainFile = read_json(cochain)?;
            let (n, m) = (alg.dim(), rbrep.rep.vdim());
            let coords = io::rb_cochain_coords(n, m, &f)?;
            let d_here = coboundary_rb_matrix(&rbrep, &op, f.degree)?;
            let cocycle = is_cocycle(&d_here, &coords);
            let witness = if f.degree >= 2 {
                let d_prev = coboundary_rb_matrix(&rbrep, &op, f.degree - 1)?;
                is_coboundary(&d_prev, &coords)
            } else {
                None
            };
            let mut text = format!(
                "degree {}: cocycle: {}\n",
                f.degree,
                if cocycle { "yes" } else { "no" }
            );
            text.push_str(&format!(
                "coboundary: {}\n",
                if witness.is_some() { "yes" } else { "no" }
            ));
            Ok(Output {
                machine: json!({
                    "report": {"valid": cocycle, "violations":
                        if cocycle { vec![] } else { vec!["not a cocycle".to_string()] }},
                    "cocycle": cocycle,
                    "coboundary": witness.is_some(),
                }),
                text,
                valid: cocycle,
            })
        }
        Cmd::Extend {
            algebra,
            rb,
            extension,
        } => {
            let (alg, op) = load_pair(algebra, rb)?;
            let f: io::ExtensionFile = read_json(extension)?;
            let rv = rows_to_matrix(&f.rv)?;
            let m = rv.rows();
            let n = alg.dim();
            let psi = io::skew_from_entries(n, m, &f.psi)?;
            let chi = if f.chi.is_empty() {
                rb3::linalg::Matrix::zeros(m, n)
            } else {
                rows_to_matrix(&f.chi)?
            };
            let ext = central_extension(&alg, &op, &rv, &psi, &chi)?;
            let mut report = ext.algebra.validate();
            report.merge(validate_rb(&ext.algebra, &ext.operator)?);
            // the classifying cocycle condition, reported alongside
            let d2 = extension_coboundary_matrix(&alg, &op, &rv)?;
            let coords = extension_cocycle_coords(&psi, &chi);
            let cocycle = is_cocycle(&d2, &coords);
            let alg_file = algebra_to_file(&ext.algebra);
            let op_file = operator_to_file(&ext.operator);
            let mut text = report_text("extension", &report);
            text.push_str(&format!("classifying pair is a cocycle: {}\n", if cocycle { "yes" } else { "no" }));
            if report.is_valid() {
                text.push_str(&to_canonical_json(&alg_file));
            }
            Ok(Output {
                machine: json!({
                    "report": report_json(&report),
                    "cocycle": cocycle,
                    "algebra": alg_file,
                    "rb": op_file,
                }),
                text,
                valid: report.is_valid(),
            })
        }
        Cmd::MatchedPair { input } => {
            let f: MatchedPairFile = read_json(input)?;
            let a = algebra_from_file(&f.a)?;
            let b = algebra_from_file(&f.b)?;
            let ra = operator_from_file(&f.ra)?;
            let rb_op = operator_from_file(&f.rb)?;
            let a_on_b = io::action_from_entries(a.clone(), b.dim(), &f.a_on_b)?;
            let b_on_a = io::action_from_entries(b.clone(), a.dim(), &f.b_on_a)?;
            let mp = MatchedPair::new(a, ra, b, rb_op, a_on_b, b_on_a)?;
            let report = validate_matched_pair(&mp)?;
            let (bow_alg, bow_op) = bowtie(&mp);
            let mut bow_report = bow_alg.validate();
            bow_report.merge(validate_rb(&bow_alg, &bow_op)?);
            let mut text = report_text("matched pair", &report);
            text.push_str(&report_text("bowtie", &bow_report));
            Ok(Output {
                machine: json!({
                    "report": report_json(&report),
                    "bowtie": {
                        "report": report_json(&bow_report),
                        "algebra": algebra_to_file(&bow_alg),
                        "rb": operator_to_file(&bow_op),
                    },
                }),
                text,
                valid: report.is_valid(),
            })
        }
        Cmd::Manin { input } => {
            let f: ManinFile = read_json(input)?;
            let alg = algebra_from_file(&f.algebra)?;
            let op = operator_from_file(&f.rb)?;
            let form = rb3::structures::BilinearForm {
                matrix: rows_to_matrix(&f.form)?,
            };
            let report = validate_manin_triple(&alg, &op, f.split, &form)?;
            Ok(Output {
                machine: json!({"report": report_json(&report)}),
                text: report_text("manin triple", &report),
                valid: report.is_valid(),
            })
        }
        Cmd::Nijenhuis { input } => {
            let f: NijenhuisFile = read_json(input)?;
            let alg = algebra_from_file(&f.algebra)?;
            let op = operator_from_file(&f.rb)?;
            let n_op = rows_to_matrix(&f.n)?;
            let report = validate_nijenhuis(&alg, &op, &n_op)?;
            Ok(Output {
                machine: json!({"report": report_json(&report)}),
                text: report_text("nijenhuis", &report),
                valid: report.is_valid(),
            })
        }
        Cmd::OOperator { input } => {
            let f: OOperatorFile = read_json(input)?;
            let alg = algebra_from_file(&f.algebra)?;
            let op = operator_from_file(&f.rb)?;
            let rbrep = representation_from_file(alg, op.weight.clone(), &f.rep)?;
            let k = rows_to_matrix(&f.k)?;
            let report = validate_o_operator(&k, &rbrep, &op)?;
            Ok(Output {
                machine: json!({"report": report_json(&report)}),
                text: report_text("o-operator", &report),
                valid: report.is_valid(),
            })
        }
        Cmd::Deform { algebra, rb, input } => {
            let (alg, op) = load_pair(algebra, rb)?;
            let f: DeformationFile = read_json(input)?;
            let d = io::deformation_from_file(alg, op, &f)?;
            let violations = validate_deformation_orders(&d);
            let cocycle = infinitesimal_is_cocycle(&d);
            let valid = violations.is_empty();
            let mut text = if valid {
                format!("valid to order {}\n", d.order())
            } else {
                let mut s = String::new();
                for (eq, order) in &violations {
                    s.push_str(&format!("{eq} fails at order {order}\n"));
                }
                s
            };
            text.push_str(&format!(
                "infinitesimal is a cocycle: {}\n",
                if cocycle { "yes" } else { "no" }
            ));
            Ok(Output {
                machine: json!({
                    "report": {"valid": valid, "violations": violations.iter()
                        .map(|(eq, o)| format!("{eq} fails at order {o}")).collect::<Vec<_>>()},
                    "order": d.order(),
                    "infinitesimal_cocycle": cocycle,
                }),
                text,
                valid,
            })
        }
        Cmd::Search {
            algebra,
            weight,
            entries,
            mask,
        } => {
            let (alg, _) = load_algebra(algebra)?;
            let weight: Rational = weight
                .parse()
                .map_err(|_| RunError::Usage(format!("bad --weight {weight:?}")))?;
            let entry_list: Result<Vec<Rational>, _> =
                entries.split(',').map(|s| s.trim().parse()).collect();
            let entry_list =
                entry_list.map_err(|_| RunError::Usage(format!("bad --entries {entries:?}")))?;
            let mask = match mask {
                Some(path) => Some(rows_to_matrix(&read_json::<Vec<Vec<String>>>(path)?)?),
                None => None,
            };
            let spec = SearchSpec {
                algebra: alg,
                weight,
                entries: entry_list,
                mask,
            };
            let budget = match std::env::var("RB3_BUDGET") {
                Ok(v) => v
                    .parse::<u128>()
                    .map_err(|_| RunError::Usage(format!("bad RB3_BUDGET {v:?}")))?,
                Err(_) => DEFAULT_BUDGET,
            };
            let results = search_rb_operators(&spec, budget)?;
            let rows: Vec<Vec<Vec<String>>> = results.iter().map(io::matrix_to_rows).collect();
            let mut text = format!("{} operator(s) found\n", results.len());
            for m in &rows {
                for row in m {
                    text.push_str("  [");
                    text.push_str(&row.join(", "));
                    text.push_str("]\n");
                }
                text.push('\n');
            }
            Ok(Output {
                machine: json!({
                    "report": {"valid": true, "violations": []},
                    "count": results.len(),
                    "results": rows,
                }),
                text,
                valid: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(output) => {
            let rendered = match cli.format {
                Format::Text => output.text,
                Format::Json => to_canonical_json(&output.machine),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, rendered) {
                        eprintln!("rb3: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{rendered}"),
            }
            if output.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Usage(msg)) => {
            eprintln!("rb3: {msg}");
            ExitCode::from(2)
        }
    }
}
