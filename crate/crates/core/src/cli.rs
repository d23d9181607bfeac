//! The `penner` command-line driver.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 hull not stabilized.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::decoration::{orbit_ball, Decoration};
use crate::error::{Error, Result};
use crate::flatsurf::{cone_angles, delaunay, ConeSurface};
use crate::holonomy::{check_admissible_with, AffineRepresentation};
use crate::hull::{stabilize_hull, HullSurface};
use crate::io::{self, DocumentEnvelope, Payload, Provenance};
use crate::minkowski::classify;
use crate::suspension::{penner_roundtrip, susp_surface};
use crate::tol::EPS_FORM;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_STABILIZED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "penner", version, about = "Epstein-Penner hulls and suspensions of flat cone surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Numerical tolerance for classification and admissibility.
    #[arg(long, global = true, default_value_t = EPS_FORM)]
    tol: f64,
    /// Word-length radius of the orbit ball (first radius when stabilizing).
    #[arg(long, global = true, default_value_t = 2)]
    ball_radius: usize,
    /// Largest orbit-ball radius tried before giving up.
    #[arg(long, global = true, default_value_t = 8)]
    max_radius: usize,
    /// Write the output document (or OBJ) to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify generator images or words of a representation.
    Classify {
        #[arg(long)]
        rep: PathBuf,
        /// Words such as `a1 b1^-1`; defaults to every generator.
        #[arg(long)]
        word: Vec<String>,
    },
    /// Check the decidable admissibility conditions.
    Admissible {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Enumerate the decorated orbit in a word ball.
    Orbit {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        dec: Option<PathBuf>,
    },
    /// Compute the stabilized Epstein-Penner hull.
    Hull {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        dec: Option<PathBuf>,
    },
    /// Delaunay cellulation of a cone surface.
    Delaunay {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Suspend a cone surface into a flat spacetime.
    Suspend {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Suspend, rebuild the hull and compare cellulations.
    Roundtrip {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Export the hull facet complex as Wavefront OBJ.
    ExportObj {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        dec: Option<PathBuf>,
    },
}

/// What a command produced: a document, a human summary, or raw text.
struct Output {
    doc: Option<DocumentEnvelope>,
    summary: String,
    raw: Option<String>,
}

fn wrong_kind(path: &Path, expected: &str, found: &DocumentEnvelope) -> Error {
    Error::Schema {
        pointer: "/kind".into(),
        message: format!("{}: expected {expected}, found {}", path.display(), found.kind().as_str()),
    }
}

fn load_rep(path: &Path) -> Result<(AffineRepresentation, Option<Decoration>)> {
    let doc = io::read_document(path)?;
    match doc.payload {
        Payload::Representation(r) => Ok((r, None)),
        Payload::SuspendedSpacetime(st) => Ok((st.representation, Some(st.decoration))),
        _ => Err(wrong_kind(path, "representation", &doc)),
    }
}

/// Representation plus decoration: from `--dec`, else the one stored with a
/// suspended spacetime, else the standard decoration.
fn load_decorated(rep_path: &Path, dec_path: Option<&Path>) -> Result<(AffineRepresentation, Decoration)> {
    let (rep, stored) = load_rep(rep_path)?;
    let dec = match (dec_path, stored) {
        (Some(p), _) => {
            let doc = io::read_document(p)?;
            match doc.payload {
                Payload::Decoration(d) => Decoration::new(&rep, d.points)?,
                _ => return Err(wrong_kind(p, "decoration", &doc)),
            }
        }
        (None, Some(d)) => d,
        (None, None) => Decoration::standard(&rep, 1.0)?,
    };
    Ok((rep, dec))
}

fn load_surface(path: &Path) -> Result<ConeSurface> {
    let doc = io::read_document(path)?;
    match doc.payload {
        Payload::ConeSurface(s) => Ok(s),
        _ => Err(wrong_kind(path, "cone_surface", &doc)),
    }
}

fn report(value: serde_json::Value, provenance: Provenance) -> Option<DocumentEnvelope> {
    Some(DocumentEnvelope::new(Payload::Report(value)).with_provenance(provenance))
}

fn hull_summary(h: &HullSurface) -> String {
    let mut s = String::new();
    let r = h.stabilized_at.map_or("-".to_string(), |r| r.to_string());
    writeln!(
        s,
        "stabilized at radius {r}: {} fundamental facets, {} pairings, {} facets in the ball",
        h.fundamental.len(),
        h.pairings.len(),
        h.facets.len()
    )
    .expect("write");
    for (i, f) in h.fundamental.iter().enumerate() {
        let lengths: Vec<String> = (0..f.len()).map(|k| format!("{:.9}", f.side_length(k))).collect();
        writeln!(s, "  facet {i}: cusps {:?}, sides [{}]", f.cusps, lengths.join(", ")).expect("write");
    }
    s
}

fn execute(cmd: &Command, c: &Common) -> Result<Output> {
    let prov = Provenance::default()
        .with("tol", c.tol)
        .with("ball_radius", c.ball_radius)
        .with("max_radius", c.max_radius);
    let mut out = Output { doc: None, summary: String::new(), raw: None };
    match cmd {
        Command::Classify { rep, word } => {
            let (r, _) = load_rep(rep)?;
            let words = if word.is_empty() { r.labels() } else { word.clone() };
            let mut rows = Vec::new();
            for w in &words {
                let phi = r.evaluate_word(&r.parse_word(w)?)?;
                let cl = classify(&phi, c.tol)?;
                writeln!(out.summary, "{w}: {:?}, {:?} (trace {})", cl.linear, cl.affine, phi.linear.trace()).expect("write");
                rows.push(json!({"word": w, "linear": cl.linear, "affine": cl.affine, "trace": phi.linear.trace()}));
            }
            out.doc = report(json!({ "classifications": rows }), prov);
        }
        Command::Admissible { rep } => {
            let (r, _) = load_rep(rep)?;
            let a = check_admissible_with(&r, c.tol);
            writeln!(out.summary, "verdict: {:?}", a.verdict).expect("write");
            writeln!(out.summary, "relation residual: {:e}", a.relation_residual).expect("write");
            writeln!(out.summary, "peripheral classes: {:?}", a.peripheral_classes).expect("write");
            writeln!(out.summary, "tangency: {:?}", a.tangency_ok).expect("write");
            if !a.discreteness_decided {
                writeln!(out.summary, "note: {}", a.caveat).expect("write");
            }
            out.doc = report(serde_json::to_value(&a).expect("report serializes"), prov);
        }
        Command::Orbit { rep, dec } => {
            let (r, d) = load_decorated(rep, dec.as_deref())?;
            let o = orbit_ball(&r, &d, c.ball_radius);
            writeln!(out.summary, "{} orbit points within word length {}", o.len(), c.ball_radius).expect("write");
            out.doc = report(serde_json::to_value(&o).expect("orbit serializes"), prov);
        }
        Command::Hull { rep, dec } => {
            let (r, d) = load_decorated(rep, dec.as_deref())?;
            let h = stabilize_hull(&r, &d, c.ball_radius, c.max_radius)?;
            out.summary = hull_summary(&h);
            out.doc = Some(DocumentEnvelope::new(Payload::Hull(Box::new(h))).with_provenance(prov));
        }
        Command::Delaunay { surface } => {
            let s = load_surface(surface)?;
            let cel = delaunay(&s)?;
            writeln!(out.summary, "{} cells, {} flips", cel.cells.len(), cel.flips).expect("write");
            for (i, cell) in cel.cells.iter().enumerate() {
                writeln!(out.summary, "  cell {i}: vertices {:?}, radius {:.9}", cell.vertices, cell.radius).expect("write");
            }
            let angles = cone_angles(&s);
            out.doc = report(json!({ "cellulation": cel, "cone_angles": angles }), prov);
        }
        Command::Suspend { surface } => {
            let s = load_surface(surface)?;
            let st = susp_surface(&s)?;
            writeln!(
                out.summary,
                "{} cells, {} generators, peripheral residual {:e}",
                st.cells.len(),
                st.representation.images.len(),
                st.peripheral_residual
            )
            .expect("write");
            writeln!(out.summary, "presentation: {:?}", st.representation.presentation).expect("write");
            out.doc = Some(DocumentEnvelope::new(Payload::SuspendedSpacetime(Box::new(st))).with_provenance(prov));
        }
        Command::Roundtrip { surface } => {
            let s = load_surface(surface)?;
            let rt = penner_roundtrip(&s, c.max_radius)?;
            let r = rt.stabilized_at.map_or("-".to_string(), |r| r.to_string());
            writeln!(
                out.summary,
                "stabilized at radius {r}: {} cells, max relative error {:e}, cone angle error {:e}",
                rt.cells, rt.max_relative_error, rt.cone_angle_error
            )
            .expect("write");
            out.doc = report(serde_json::to_value(&rt).expect("report serializes"), prov);
        }
        Command::ExportObj { rep, dec } => {
            let (r, d) = load_decorated(rep, dec.as_deref())?;
            let h = stabilize_hull(&r, &d, c.ball_radius, c.max_radius)?;
            let obj = io::obj_string(&h);
            writeln!(out.summary, "{} faces", h.facets.len()).expect("write");
            out.raw = Some(obj);
        }
    }
    Ok(out)
}

fn emit(out: Output, c: &Common) -> Result<()> {
    if let Some(raw) = out.raw {
        match &c.out {
            Some(p) => {
                std::fs::write(p, raw)?;
                print!("{}", out.summary);
            }
            None => print!("{raw}"),
        }
        return Ok(());
    }
    if let (Some(p), Some(doc)) = (&c.out, &out.doc) {
        io::write_document(doc, p)?;
    }
    match (&out.doc, c.json) {
        (Some(doc), true) => println!("{}", doc.to_json()),
        _ => print!("{}", out.summary),
    }
    Ok(())
}

/// Runs the driver on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command, &cli.common).and_then(|out| emit(out, &cli.common)) {
        Ok(()) => EXIT_OK,
        Err(e @ Error::NotStabilized { .. }) => {
            eprintln!("error: {e}");
            EXIT_NOT_STABILIZED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}
