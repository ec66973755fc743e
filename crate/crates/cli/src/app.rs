//! Command dispatch. `run` takes its arguments and streams explicitly so the
//! whole front end can be driven in-process.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use affine_moduli_core::catalog::{build, FamilyId};
use affine_moduli_core::{act, Error as CoreError, LinearMap, Matrix};
use clap::{Args, Parser, Subcommand};

use crate::document::{Metadata, ParseError, TensorDocument};
use crate::{report, suite};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A verification check failed, or an unexpected internal error.
    pub const FAILURE: i32 = 1;
    /// Bad command line, unreadable input, or malformed document.
    pub const PARSE: i32 = 2;
    /// The document holds NaN or infinite coefficients.
    pub const NON_FINITE: i32 = 3;
    /// Unknown family name or verification scope.
    pub const UNKNOWN: i32 = 4;
    /// Parameters violate the family's constraints.
    pub const BAD_PARAMS: i32 = 5;
    /// The transformation matrix is singular.
    pub const SINGULAR: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(
    name = "affine-moduli",
    version,
    about = "Constant-coefficient affine connections: curvature, genericity, isotropy"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input document, `-` for stdin.
    #[arg(long, short, default_value = "-")]
    input: String,
    /// Output path, `-` for stdout.
    #[arg(long, short, default_value = "-")]
    out: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ricci tensor, signature, genericity, stabilizer and torsion bound.
    Analyze {
        #[command(flatten)]
        io: Io,
        /// Relative tolerance overriding the default zero/rank thresholds.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Write a named structure as a document.
    Catalog {
        /// Family name (see `catalog --list`).
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Comma-separated parameters; defaults depend on the family.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, short, default_value = "-")]
        out: String,
        /// List family names with their default parameters.
        #[arg(long)]
        list: bool,
    },
    /// Apply a linear change of frame.
    Act {
        #[command(flatten)]
        io: Io,
        /// Matrix rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "matrix_file")]
        matrix: Option<String>,
        /// File with one matrix row per line.
        #[arg(long)]
        matrix_file: Option<String>,
    },
    /// Lie algebra of the isotropy group, optionally with a finite-element scan.
    Stabilizer {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        tol: Option<f64>,
        /// Restarts for the finite-symmetry scan (0 skips it).
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Order bound for finite isotropy from the support of Γ.
    TorsionBound {
        #[command(flatten)]
        io: Io,
        /// Integer relation rows instead of a document, e.g. `2,-1;-1,2`.
        #[arg(long, allow_hyphen_values = true)]
        relations: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the built-in verification suite.
    Verify {
        /// `all` or one of: tensor, curvature, genericity, symmetry, catalog, cli.
        #[arg(default_value = "all")]
        scope: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::NonFinite { .. } => exit::NON_FINITE,
            CoreError::BadParams { .. } => exit::BAD_PARAMS,
            CoreError::SingularMap { .. } => exit::SINGULAR,
            CoreError::DimensionMismatch { .. } | CoreError::BadLength { .. } => exit::PARSE,
            _ => exit::FAILURE,
        };
        fail(code, e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let code = if matches!(e, ParseError::NonFinite { .. }) { exit::NON_FINITE } else { exit::PARSE };
        fail(code, format!("invalid document: {e}"))
    }
}

pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit code.
pub fn run<I, T>(args: I, s: &mut Streams<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let text = e.render().to_string();
            let _ =
                if e.use_stderr() { s.stderr.write_all(text.as_bytes()) } else { s.stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.cmd, s) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(s.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &str, s: &mut Streams<'_>) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        s.stdin.read_to_string(&mut text).map_err(|e| fail(exit::PARSE, format!("reading stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| fail(exit::PARSE, format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn read_doc(path: &str, s: &mut Streams<'_>) -> Result<TensorDocument, Failure> {
    Ok(TensorDocument::parse(&read_input(path, s)?)?)
}

fn write_output(path: &str, text: &str, s: &mut Streams<'_>) -> Result<(), Failure> {
    if path == "-" {
        s.stdout.write_all(text.as_bytes()).map_err(|e| fail(exit::FAILURE, format!("writing stdout: {e}")))
    } else {
        fs::write(path, text).map_err(|e| fail(exit::FAILURE, format!("writing {path}: {e}")))
    }
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<f64>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| fail(exit::PARSE, format!("{flag}: not a number: \"{t}\""))))
        .collect()
}

fn parse_rows(flag: &str, text: &str) -> Result<Vec<Vec<f64>>, Failure> {
    text.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()).map(|r| parse_list(flag, r)).collect()
}

fn parse_matrix(flag: &str, text: &str, m: usize) -> Result<Matrix, Failure> {
    let rows = parse_rows(flag, text)?;
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(fail(exit::PARSE, format!("{flag}: expected a {m}×{m} matrix")));
    }
    Ok(Matrix::from_fn(m, m, |i, j| rows[i][j]))
}

fn dispatch(cmd: Command, s: &mut Streams<'_>) -> Result<i32, Failure> {
    match cmd {
        Command::Analyze { io, tol } => {
            let doc = read_doc(&io.input, s)?;
            let text = report::analyze(&doc.christoffel()?, &doc.metadata, tol)?;
            write_output(&io.out, &text, s)?;
        }
        Command::Catalog { name, params, out, list } => {
            if list {
                let mut text = String::new();
                for id in FamilyId::ALL {
                    let p: Vec<String> = id.default_params().iter().map(|x| x.to_string()).collect();
                    text.push_str(&format!("{:<12} default params [{}]\n", id.name(), p.join(",")));
                }
                write_output(&out, &text, s)?;
                return Ok(exit::OK);
            }
            let name = name.expect("clap requires a name without --list");
            let id =
                FamilyId::from_name(&name).ok_or_else(|| fail(exit::UNKNOWN, format!("unknown family \"{name}\"")))?;
            let p = match params {
                Some(t) => parse_list("--params", &t)?,
                None => id.default_params(),
            };
            let g = build(id, &p)?;
            let meta = Metadata { family: Some(id.name().to_string()), params: Some(p), notes: Vec::new() };
            write_output(&out, &TensorDocument::from_christoffel(&g).with_metadata(meta).emit(), s)?;
        }
        Command::Act { io, matrix, matrix_file } => {
            let doc = read_doc(&io.input, s)?;
            let text = match (matrix, matrix_file) {
                (Some(t), _) => t,
                (None, Some(f)) => {
                    fs::read_to_string(&f).map_err(|e| fail(exit::PARSE, format!("reading {f}: {e}")))?
                }
                (None, None) => return Err(fail(exit::PARSE, "act needs --matrix or --matrix-file")),
            };
            let a = LinearMap(parse_matrix("--matrix", &text, doc.m)?);
            let g = act(&a, &doc.christoffel()?)?;
            let mut meta = doc.metadata.clone();
            let rows: Vec<String> = (0..doc.m)
                .map(|i| (0..doc.m).map(|j| format!("{:?}", a.matrix()[(i, j)])).collect::<Vec<_>>().join(","))
                .collect();
            meta.notes.push(format!("act A=[{}]", rows.join(";")));
            write_output(&io.out, &TensorDocument::from_christoffel(&g).with_metadata(meta).emit(), s)?;
        }
        Command::Stabilizer { io, tol, restarts, seed } => {
            let doc = read_doc(&io.input, s)?;
            let text = report::stabilizer(&doc.christoffel()?, tol, restarts, seed)?;
            write_output(&io.out, &text, s)?;
        }
        Command::TorsionBound { io, relations, tol } => {
            let text = match relations {
                Some(r) => {
                    let rows = parse_rows("--relations", &r)?;
                    let m = rows.first().map_or(0, Vec::len);
                    let ints: Option<Vec<Vec<i64>>> = rows
                        .iter()
                        .map(|row| {
                            (row.len() == m)
                                .then(|| row.iter().map(|&x| (x.fract() == 0.0).then_some(x as i64)).collect())?
                        })
                        .collect();
                    let ints =
                        ints.ok_or_else(|| fail(exit::PARSE, "--relations: rows must be integers of equal length"))?;
                    report::relations(&ints, m)?
                }
                None => {
                    let doc = read_doc(&io.input, s)?;
                    report::torsion(&doc.christoffel()?, tol)?
                }
            };
            write_output(&io.out, &text, s)?;
        }
        Command::Verify { scope, seed, out } => {
            let checks = suite::select(&scope).ok_or_else(|| {
                fail(exit::UNKNOWN, format!("unknown scope \"{scope}\" (expected all, {})", suite::SCOPES.join(", ")))
            })?;
            let results = suite::run(&checks, seed);
            let mut text = String::new();
            for (c, o) in checks.iter().zip(&results) {
                text.push_str(&suite::line(c, o));
                text.push('\n');
            }
            let passed = results.iter().filter(|o| o.pass).count();
            text.push_str(&format!("{passed}/{} checks passed (seed {seed})\n", results.len()));
            write_output(&out, &text, s)?;
            if passed != results.len() {
                let failed: Vec<&str> =
                    checks.iter().zip(&results).filter(|(_, o)| !o.pass).map(|(c, _)| c.name).collect();
                return Err(fail(exit::FAILURE, format!("failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(exit::OK)
}

/// Runs with in-memory streams; returns `(code, stdout, stderr)`.
pub fn run_captured(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut s = Streams { stdin: &mut input, stdout: &mut out, stderr: &mut err };
    let code = run(std::iter::once("affine-moduli").chain(args.iter().copied()), &mut s);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog(name: &str) -> String {
        let (code, out, err) = run_captured(&["catalog", name], "");
        assert_eq!(code, 0, "{err}");
        out
    }

    #[test]
    fn analyze_model3d() {
        let (code, out, _) = run_captured(&["analyze"], &catalog("model3d"));
        assert_eq!(code, 0);
        for want in
            ["signature (0,3)", "p = negative/timelike", "torsion-free: yes", "stabilizer dim 0", "generic: yes"]
        {
            assert!(out.contains(want), "missing {want:?} in\n{out}");
        }
    }

    #[test]
    fn analyze_family4a_reports_true_signature() {
        let (_, out, _) = run_captured(&["analyze"], &catalog("family4a"));
        assert!(out.contains("signature (1,2)"), "{out}");
    }

    #[test]
    fn analyze_zero() {
        let doc = TensorDocument { m: 2, coeffs: vec![0.0; 8], metadata: Metadata::default() }.emit();
        let (code, out, _) = run_captured(&["analyze"], &doc);
        assert_eq!(code, 0);
        assert!(out.contains("degenerate Ricci") && out.contains("generic: no"), "{out}");
    }

    #[test]
    fn analyze_is_deterministic() {
        let doc = catalog("family4b");
        assert_eq!(run_captured(&["analyze"], &doc), run_captured(&["analyze"], &doc));
    }

    #[test]
    fn catalog_params_and_errors() {
        let (code, out, _) = run_captured(&["catalog", "family1", "--params", "1,0,0,1"], "");
        assert_eq!(code, 0);
        let doc = TensorDocument::parse(&out).unwrap();
        assert_eq!(doc.metadata.params, Some(vec![1.0, 0.0, 0.0, 1.0]));
        let (code, _, err) = run_captured(&["catalog", "family1", "--params", "1,0,0,0"], "");
        assert_eq!(code, exit::BAD_PARAMS);
        assert!(err.contains("ad≠0"), "{err}");
        assert_eq!(run_captured(&["catalog", "nosuch"], "").0, exit::UNKNOWN);
        assert_eq!(run_captured(&["catalog", "planar-x", "--params", "-2"], "").0, 0);
        assert_eq!(run_captured(&["catalog", "family1", "--params", "1,x"], "").0, exit::PARSE);
        assert!(run_captured(&["catalog", "--list"], "").1.contains("thm19"));
    }

    #[test]
    fn act_commands() {
        let doc = catalog("family1");
        let (code, out, _) = run_captured(&["act", "--matrix", "1,0,0;0,1,0;0,0,1"], &doc);
        assert_eq!(code, 0);
        assert_eq!(TensorDocument::parse(&out).unwrap().coeffs, TensorDocument::parse(&doc).unwrap().coeffs);

        let (_, scaled, _) = run_captured(&["act", "--matrix", "1,0,0;0,1,0;0,0,2"], &doc);
        let sig = |d: &str| {
            let (_, out, _) = run_captured(&["analyze"], d);
            out.lines().find(|l| l.starts_with("signature")).unwrap().to_string()
        };
        assert_eq!(sig(&scaled), sig(&doc));
        assert!(TensorDocument::parse(&scaled).unwrap().metadata.notes[0].starts_with("act A="));

        assert_eq!(run_captured(&["act", "--matrix", "1,0,0;0,1,0;0,0,0"], &doc).0, exit::SINGULAR);
        assert_eq!(run_captured(&["act", "--matrix", "1,0;0,1"], &doc).0, exit::PARSE);
    }

    #[test]
    fn document_errors() {
        assert_eq!(run_captured(&["analyze"], "{ not json").0, exit::PARSE);
        let nan = catalog("gamma2").replacen("0.0000000000000000e0", "\"NaN\"", 1);
        let (code, _, err) = run_captured(&["analyze"], &nan);
        assert_eq!(code, exit::NON_FINITE, "{err}");
        assert_eq!(run_captured(&["analyze", "--input", "/nonexistent/x.json"], "").0, exit::PARSE);
    }

    #[test]
    fn stabilizer_and_torsion_commands() {
        let (code, out, _) = run_captured(&["stabilizer", "--restarts", "50"], &catalog("gamma2"));
        assert_eq!(code, 0);
        assert!(out.contains("stabilizer dim 0") && out.contains("finite scan: 3 element(s)"), "{out}");
        let (_, out, _) = run_captured(&["torsion-bound", "--relations", "2,-1;-1,2"], "");
        assert!(out.contains("torsion order bound: 3"), "{out}");
        let (_, out, _) = run_captured(&["torsion-bound"], &catalog("family2"));
        assert!(out.contains("torsion order bound:"));
    }

    #[test]
    fn verify_scopes() {
        assert_eq!(run_captured(&["verify", "nosuch"], "").0, exit::UNKNOWN);
        let (code, out, _) = run_captured(&["verify", "catalog"], "");
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().all(|l| !l.starts_with("FAIL")));
    }

    #[test]
    fn usage_errors_and_help() {
        assert_eq!(run_captured(&["frobnicate"], "").0, exit::PARSE);
        assert_eq!(run_captured(&["--help"], "").0, exit::OK);
    }
}
