//! The `fpcohom` command line.
//!
//! Exit codes: 0 success, 1 parse or validation failure, 2 input is not a
//! cocycle (or a check failed), 3 size budget exceeded, 64 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgAction, Parser, Subcommand};

use crate::algebra::{count_terms, tau_monomial, theta, theta_normalized, MonomialSig};
use crate::cochain::{correspond, correspond_back, ICochain};
use crate::document::{cochain_document, AlgebraDocument, CochainDocument, KindTag, RingTag};
use crate::error::Error;
use crate::group_ring::GroupContext;
use crate::oracle::{cohomology_dim, DEFAULT_BUDGET};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_COCYCLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "fpcohom", version, about = "Cochain-level mod-p cohomology of (Z/p)^r")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map a cocycle to its polynomial/exterior algebra element.
    Invert {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Read the values as a normalized cochain.
        #[arg(long, conflicts_with = "icochain")]
        normalized: bool,
        /// Read the values as an I-cochain.
        #[arg(long)]
        icochain: bool,
        /// Skip the cocycle check.
        #[arg(long)]
        unchecked: bool,
    },
    /// Emit the cocycle representing a basis monomial.
    Tau {
        /// Exponent signature, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sig: Vec<u32>,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: usize,
        /// Emit as a normalized cochain instead of an I-cochain.
        #[arg(long)]
        normalized: bool,
    },
    /// Cup product of two cochains.
    Cup {
        #[arg(long = "in", value_name = "FILE", action = ArgAction::Append, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Coboundary of a cochain.
    D {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Exit 0 if the cochain is a cocycle, 2 otherwise.
    CheckCocycle {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Cohomology dimensions by rank computation.
    Dims {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_n: usize,
        /// Maximum stored matrix entries.
        #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
        budget: u64,
    },
    /// Number of cochain evaluations in the inverse formula.
    CountTerms {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Run the acceptance checks.
    Selftest,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotACocycle => EXIT_NOT_COCYCLE,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<(CochainDocument, ICochain), Failure> {
    let text = read(path)?;
    let doc = CochainDocument::parse(&text).map_err(|e| prefix(path, e))?;
    let f = doc.to_icochain().map_err(|e| prefix(path, e))?;
    Ok((doc, f))
}

fn prefix(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

/// `invert` on document text. `kind` overrides the document's own tag.
pub fn invert_text(text: &str, kind: Option<KindTag>, unchecked: bool) -> crate::Result<String> {
    let doc = CochainDocument::parse(text)?;
    if doc.coeff_ring == RingTag::Z {
        return Err(Error::Document("invert needs coeff_ring \"Fp\"".into()));
    }
    let f = doc.to_icochain()?;
    if !unchecked && !f.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    let e = match kind.unwrap_or(doc.kind) {
        KindTag::Icochain => theta(&f)?,
        KindTag::Normalized => theta_normalized(&correspond_back(&f))?,
    };
    Ok(AlgebraDocument::from_algebra(&e).to_json())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure { code: EXIT_INVALID, message: e.to_string() };
    match command {
        Command::Invert { input, normalized, icochain, unchecked } => {
            let kind = match (normalized, icochain) {
                (true, _) => Some(KindTag::Normalized),
                (_, true) => Some(KindTag::Icochain),
                _ => None,
            };
            let text = read(&input)?;
            let json = invert_text(&text, kind, unchecked).map_err(|e| prefix(&input, e))?;
            out.write_all(json.as_bytes()).map_err(io)?;
        }
        Command::Tau { sig, p, r, normalized } => {
            let ctx = GroupContext::new(p, r)?;
            let f = tau_monomial(&ctx, &MonomialSig(sig))?;
            let kind = if normalized { KindTag::Normalized } else { KindTag::Icochain };
            out.write_all(cochain_document(&f, kind).to_json().as_bytes()).map_err(io)?;
        }
        Command::Cup { inputs } => {
            if inputs.len() != 2 {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: format!("cup takes exactly two --in files, got {}", inputs.len()),
                });
            }
            let (da, fa) = load(&inputs[0])?;
            let (db, fb) = load(&inputs[1])?;
            if da.kind != db.kind {
                return Err(Failure {
                    code: EXIT_INVALID,
                    message: "cup operands have different kinds".into(),
                });
            }
            let prod = fa.cup(&fb)?;
            out.write_all(cochain_document(&prod, da.kind).to_json().as_bytes()).map_err(io)?;
        }
        Command::D { input } => {
            let (doc, f) = load(&input)?;
            let df = match doc.kind {
                KindTag::Icochain => f.coboundary(),
                KindTag::Normalized => correspond(&correspond_back(&f).coboundary()),
            };
            out.write_all(cochain_document(&df, doc.kind).to_json().as_bytes()).map_err(io)?;
        }
        Command::CheckCocycle { input } => {
            let (doc, f) = load(&input)?;
            let ok = match doc.kind {
                KindTag::Icochain => f.is_cocycle(),
                KindTag::Normalized => correspond_back(&f).is_cocycle(),
            };
            writeln!(out, "{{\"cocycle\": {ok}}}").map_err(io)?;
            if !ok {
                return Ok(EXIT_NOT_COCYCLE);
            }
        }
        Command::Dims { p, r, max_n, budget } => {
            let ctx = GroupContext::new(p, r)?;
            let reports = (0..=max_n)
                .map(|n| cohomology_dim(&ctx, n, budget as u128))
                .collect::<crate::Result<Vec<_>>>()?;
            writeln!(out, "n\tdim_C\tdim_Z\tdim_B\tdim_H\texpected_H").map_err(io)?;
            for rep in reports {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    rep.n, rep.dim_cochains, rep.dim_ker_dn, rep.dim_boundaries, rep.dim_h,
                    rep.expected_dim_h
                )
                .map_err(io)?;
            }
        }
        Command::CountTerms { p, r, n } => {
            let ctx = GroupContext::new(p, r)?;
            writeln!(out, "{}", count_terms(&ctx, n)).map_err(io)?;
        }
        Command::Selftest => {
            let mut outcomes = selftest::run_library_criteria();
            outcomes.push(selftest::golden_invert());
            for o in &outcomes {
                writeln!(out, "{o}").map_err(io)?;
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_NOT_COCYCLE);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
