//! Command-line front end: parse structured-text inputs, dispatch the
//! width/bound/certificate computations, and emit deterministic reports
//! (text or JSON) and 2-D SVG figures.
//!
//! Exit codes: 0 success, 2 invalid input, 3 honest incompleteness (no
//! program-bound witness under the cap, capacity threshold not rational
//! under the denominator bound).

mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{
    BlockCheckLine, BlockLine, CertificateReport, CremonaReport, DiamondLine, DiamondVerifyReport,
    EdgeLine, InfoReport, IntersectReport, LuReport, ProgramBoundLine, Render, SvgReport,
    VolumeBoundLine, VolumeReport, WidthReport,
};
use toric_width::bott::{recognize_tower, FacetLabel, GbmPolytope};
use toric_width::bounds::{lu_bound, verify_cross_polytope, CrossPolytopeSpec};
use toric_width::cremona::{
    ball_capacity_with, reduces_positively_capped, BlowupVector, DEFAULT_MOVE_CAP,
};
use toric_width::formats::{detect, InputFile};
use toric_width::intersect::check_block_intersections;
use toric_width::lattice::{ratio, Rational};
use toric_width::polytope::LatticePolytope;
use toric_width::width::{admissible_chains, certificate, gromov_width, verify_certificate};
use toric_width::Error;

const LU_CAVEAT: &str =
    "Fano hypothesis not checked; for non-Fano inputs this is a conjectural upper bound";

#[derive(Parser)]
#[command(
    name = "toric-width",
    version,
    about = "Gromov widths of generalized Bott manifolds from moment-polytope data, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Width of a tower input (or a polytope recognizable as one); for
    /// other polytopes, report the program and volume bounds only.
    Width {
        input: PathBuf,
        /// Optional cross-polytope certificate to verify for a lower bound.
        #[arg(long)]
        diamond: Option<PathBuf>,
        /// Coefficient cap for the program-bound enumeration.
        #[arg(long, default_value_t = 4)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Embedded-simplex certificate with its chain reports.
    Certificate {
        input: PathBuf,
        /// Also write the certificate as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Integer-program upper bound from facet-normal relations.
    Lu {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Verify a distorted-cross-polytope lower-bound certificate.
    VerifyDiamond {
        polytope: PathBuf,
        diamond: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact volume and the ball-volume width bound.
    Volume {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Audit the edge intersection numbers of every closed block.
    IntersectCheck {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Ball capacity of a blowup vector such as "18;6,6,6,5,5,5".
    Cremona {
        vector: String,
        /// Denominator bound for threshold recognition.
        #[arg(long, default_value_t = 10_000)]
        denom: u64,
        #[arg(long)]
        json: bool,
    },
    /// Render a 2-dimensional polytope as SVG.
    Svg {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize any input file.
    Info {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoWitnessUnderCap { .. }
        | Error::ThresholdNotRational { .. }
        | Error::MoveCapExceeded(_) => 3,
        _ => 2,
    }
}

/// Geometry loaded from a tower or polytope file.
enum Geometry {
    Tower(GbmPolytope),
    /// A raw polytope that matched the tower ray pattern; keeps the raw
    /// system for anything stated in the input's own facet order.
    Recognized(GbmPolytope, LatticePolytope),
    Raw(LatticePolytope),
}

impl Geometry {
    fn kind(&self) -> &'static str {
        match self {
            Geometry::Tower(_) => "generalized Bott tower",
            Geometry::Recognized(..) => {
                "half-space polytope (recognized as a generalized Bott tower)"
            }
            Geometry::Raw(_) => "half-space polytope",
        }
    }

    fn ambient(&self) -> &LatticePolytope {
        match self {
            Geometry::Tower(p) => p.base(),
            Geometry::Recognized(_, raw) => raw,
            Geometry::Raw(p) => p,
        }
    }

    fn tower_polytope(&self) -> Option<&GbmPolytope> {
        match self {
            Geometry::Tower(p) | Geometry::Recognized(p, _) => Some(p),
            Geometry::Raw(_) => None,
        }
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_geometry(path: &Path) -> Result<Geometry, Error> {
    let text = read_input(path)?;
    match detect(&text)? {
        InputFile::Tower(file) => Ok(Geometry::Tower(file.to_polytope()?)),
        InputFile::Polytope(file) => {
            let raw = file.to_polytope()?;
            match recognize_tower(&raw) {
                Some(rec) => Ok(Geometry::Recognized(rec.polytope, raw)),
                None => Ok(Geometry::Raw(raw)),
            }
        }
        InputFile::Diamond(_) => Err(Error::Parse(format!(
            "{}: expected a tower or polytope file, found a cross-polytope spec",
            path.display()
        ))),
    }
}

fn load_diamond(path: &Path) -> Result<CrossPolytopeSpec, Error> {
    let text = read_input(path)?;
    match detect(&text)? {
        InputFile::Diamond(file) => file.to_spec(),
        _ => Err(Error::Parse(format!(
            "{}: expected a cross-polytope spec (center/segments/rho)",
            path.display()
        ))),
    }
}

fn run(command: Command) -> Result<String, Error> {
    match command {
        Command::Width {
            input,
            diamond,
            cap,
            json,
        } => width_command(&input, diamond.as_deref(), cap, json),
        Command::Certificate { input, out, json } => {
            certificate_command(&input, out.as_deref(), json)
        }
        Command::Lu { input, cap, json } => lu_command(&input, cap, json),
        Command::VerifyDiamond {
            polytope,
            diamond,
            json,
        } => verify_diamond_command(&polytope, &diamond, json),
        Command::Volume { input, json } => volume_command(&input, json),
        Command::IntersectCheck { input, json } => intersect_command(&input, json),
        Command::Cremona {
            vector,
            denom,
            json,
        } => cremona_command(&vector, denom, json),
        Command::Svg { input, out } => svg_command(&input, &out),
        Command::Info { input, json } => info_command(&input, json),
    }
}

fn diamond_line(
    ambient: &LatticePolytope,
    spec_path: Option<&Path>,
) -> Result<Option<DiamondLine>, Error> {
    let Some(path) = spec_path else {
        return Ok(None);
    };
    let spec = load_diamond(path)?;
    let line = match verify_cross_polytope(ambient, &spec) {
        Ok(()) => DiamondLine {
            rho: spec.rho.to_string(),
            verified: true,
            reason: None,
        },
        Err(defect) => DiamondLine {
            rho: spec.rho.to_string(),
            verified: false,
            reason: Some(defect.to_string()),
        },
    };
    Ok(Some(line))
}

fn volume_bound_line(p: &LatticePolytope) -> VolumeBoundLine {
    let b = p.volume_upper_bound();
    VolumeBoundLine {
        n_factorial_volume: b.n_factorial_volume.to_string(),
        root_approx: b.approx_root,
        digits: b.digits,
    }
}

fn width_command(
    input: &Path,
    diamond: Option<&Path>,
    cap: u64,
    json: bool,
) -> Result<String, Error> {
    let geometry = load_geometry(input)?;
    let ambient = geometry.ambient();
    let mut notes = Vec::new();

    let (blocks, width, witness_block, program_bound) = match geometry.tower_polytope() {
        Some(p) => {
            let blocks: Vec<BlockLine> = toric_width::width::block_data(p)
                .into_iter()
                .map(|d| BlockLine {
                    block: d.block + 1,
                    closed: d.is_zero_block,
                    lambda_sum: d.lambda_sum.to_string(),
                })
                .collect();
            let w = gromov_width(p);
            let b = toric_width::width::width_witness_block(p) + 1;
            if matches!(geometry, Geometry::Recognized(..)) {
                notes.push(
                    "block structure comes from tower recognition; blocks may permute the \
                     input facet order"
                        .to_string(),
                );
            }
            (Some(blocks), Some(w.to_string()), Some(b), None)
        }
        None => {
            notes.push(
                "the width formula applies only to generalized Bott towers; bounds reported \
                 instead"
                    .to_string(),
            );
            let program = match lu_bound(ambient, cap) {
                Ok(w) => Some(ProgramBoundLine {
                    cap,
                    value: w.value.to_string(),
                    witness: w.coefficients.iter().map(|c| c.to_string()).collect(),
                    caveat: LU_CAVEAT.to_string(),
                }),
                Err(Error::NoWitnessUnderCap { .. }) => {
                    notes.push(format!("no program-bound witness under cap {cap}"));
                    None
                }
                Err(e) => return Err(e),
            };
            (None, None, None, program)
        }
    };

    let report = WidthReport {
        input: input.display().to_string(),
        kind: geometry.kind().to_string(),
        dimension: ambient.dim(),
        facets: ambient.facet_count(),
        blocks,
        width,
        witness_block,
        program_bound,
        volume_bound: volume_bound_line(ambient),
        diamond: diamond_line(ambient, diamond)?,
        notes,
    };
    Ok(report.render(json))
}

fn certificate_command(input: &Path, out: Option<&Path>, json: bool) -> Result<String, Error> {
    let geometry = load_geometry(input)?;
    let p = geometry.tower_polytope().ok_or_else(|| {
        Error::Parse(format!(
            "{}: the certificate construction needs a generalized Bott tower",
            input.display()
        ))
    })?;

    let (standard, translated_by) = if p.is_standard_form() {
        (p.clone(), None)
    } else {
        let (std_form, t) = p.to_standard_form()?;
        (std_form, Some(t.iter().map(Rational::to_string).collect()))
    };

    let cert = certificate(&standard)?;
    let verified = verify_certificate(&standard, &cert).is_ok();
    let tower = standard.tower();
    let mut chains = Vec::new();
    for block in 0..tower.stages() {
        if tower.is_zero_block(block) {
            continue;
        }
        for k in 1..=tower.fiber_dim(block) {
            chains.push(admissible_chains(&standard, block, k)?);
        }
    }
    let file = toric_width::formats::CertificateFile::from_certificate(&cert, &chains);

    let written_to = match out {
        Some(path) => {
            let mut text =
                serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))?;
            text.push('\n');
            fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let report = CertificateReport {
        input: input.display().to_string(),
        translated_by,
        certificate: file,
        verified,
        written_to,
    };
    Ok(report.render(json))
}

fn lu_command(input: &Path, cap: u64, json: bool) -> Result<String, Error> {
    let geometry = load_geometry(input)?;
    let w = lu_bound(geometry.ambient(), cap)?;
    let report = LuReport {
        input: input.display().to_string(),
        cap,
        value: w.value.to_string(),
        witness: w.coefficients.iter().map(|c| c.to_string()).collect(),
        caveat: LU_CAVEAT.to_string(),
    };
    Ok(report.render(json))
}

fn verify_diamond_command(polytope: &Path, diamond: &Path, json: bool) -> Result<String, Error> {
    let geometry = load_geometry(polytope)?;
    let spec = load_diamond(diamond)?;
    let report = match verify_cross_polytope(geometry.ambient(), &spec) {
        Ok(()) => DiamondVerifyReport {
            polytope: polytope.display().to_string(),
            diamond: diamond.display().to_string(),
            rho: spec.rho.to_string(),
            verified: true,
            reason: None,
        },
        Err(defect) => DiamondVerifyReport {
            polytope: polytope.display().to_string(),
            diamond: diamond.display().to_string(),
            rho: spec.rho.to_string(),
            verified: false,
            reason: Some(defect.to_string()),
        },
    };
    Ok(report.render(json))
}

fn volume_command(input: &Path, json: bool) -> Result<String, Error> {
    let geometry = load_geometry(input)?;
    let p = geometry.ambient();
    let bound = p.volume_upper_bound();
    let report = VolumeReport {
        input: input.display().to_string(),
        dimension: p.dim(),
        volume: p.volume().to_string(),
        n_factorial_volume: bound.n_factorial_volume.to_string(),
        root_approx: bound.approx_root,
        digits: bound.digits,
    };
    Ok(report.render(json))
}

fn intersect_command(input: &Path, json: bool) -> Result<String, Error> {
    let geometry = load_geometry(input)?;
    let p = geometry.tower_polytope().ok_or_else(|| {
        Error::Parse(format!(
            "{}: intersection checks need a generalized Bott tower",
            input.display()
        ))
    })?;
    let tower = p.tower();
    let mut blocks = Vec::new();
    let mut pass = true;
    for block in 0..tower.stages() {
        if !tower.is_zero_block(block) {
            continue;
        }
        let r = check_block_intersections(p, block)?;
        pass &= r.pass;
        blocks.push(BlockCheckLine {
            block: block + 1,
            expected_omega: r.expected_omega.to_string(),
            expected_c1: r.expected_c1.to_string(),
            pass: r.pass,
            edges: r
                .edges
                .into_iter()
                .map(|e| EdgeLine {
                    sequence: e.sequence,
                    k: e.k,
                    k_prime: e.k_prime,
                    class: e.class.pairings.iter().map(|c| c.to_string()).collect(),
                    omega: e.omega.to_string(),
                    c1: e.c1.to_string(),
                    ok: e.ok,
                })
                .collect(),
        });
    }
    let report = IntersectReport {
        input: input.display().to_string(),
        blocks,
        pass,
    };
    Ok(report.render(json))
}

fn cremona_command(vector: &str, denom: u64, json: bool) -> Result<String, Error> {
    let v: BlowupVector = vector.parse()?;
    let capacity = ball_capacity_with(&v, denom, DEFAULT_MOVE_CAP)?;
    let eps = ratio(1, denom as i64);
    let below = reduces_positively_capped(&v.appended(&(&capacity - &eps)), DEFAULT_MOVE_CAP)?;
    let above = reduces_positively_capped(&v.appended(&(&capacity + &eps)), DEFAULT_MOVE_CAP)?;
    let report = CremonaReport {
        vector: v.to_string(),
        capacity: format!("{capacity}"),
        denom_bound: denom,
        reduced_positively_below: below,
        reduced_positively_above: above,
    };
    Ok(report.render(json))
}

fn svg_command(input: &Path, out: &Path) -> Result<String, Error> {
    let geometry = load_geometry(input)?;
    let p = geometry.ambient();
    let labels: Vec<String> = match geometry.tower_polytope() {
        Some(tower_poly) if matches!(geometry, Geometry::Tower(_)) => tower_poly
            .tower()
            .facet_labels()
            .iter()
            .map(|l: &FacetLabel| l.to_string())
            .collect(),
        _ => (1..=p.facet_count()).map(|i| format!("F{i}")).collect(),
    };
    let svg = svg::render_svg(p, &labels)?;
    fs::write(out, &svg).map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
    let report = SvgReport {
        input: input.display().to_string(),
        out: out.display().to_string(),
        vertices: p.vertices().len(),
    };
    Ok(report.text())
}

fn info_command(input: &Path, json: bool) -> Result<String, Error> {
    let text = read_input(input)?;
    let report = match detect(&text)? {
        InputFile::Tower(file) => {
            let p = file.to_polytope()?;
            InfoReport {
                input: input.display().to_string(),
                kind: "generalized Bott tower".into(),
                dimension: p.base().dim(),
                facets: Some(p.base().facet_count()),
                stages: Some(p.tower().stages()),
                fiber_dims: Some(p.tower().fiber_dims().to_vec()),
                vertices: Some(p.base().vertices().len()),
                delzant: Some(p.base().is_delzant()),
                standard_form: Some(p.is_standard_form()),
                segments: None,
                rho: None,
            }
        }
        InputFile::Polytope(file) => {
            let p = file.to_polytope()?;
            let recognized = recognize_tower(&p).is_some();
            InfoReport {
                input: input.display().to_string(),
                kind: if recognized {
                    "half-space polytope (recognizable as a generalized Bott tower)".into()
                } else {
                    "half-space polytope".into()
                },
                dimension: p.dim(),
                facets: Some(p.facet_count()),
                stages: None,
                fiber_dims: None,
                vertices: Some(p.vertices().len()),
                delzant: Some(p.is_delzant()),
                standard_form: None,
                segments: None,
                rho: None,
            }
        }
        InputFile::Diamond(file) => {
            let spec = file.to_spec()?;
            InfoReport {
                input: input.display().to_string(),
                kind: "cross-polytope certificate".into(),
                dimension: spec.center.len(),
                facets: None,
                stages: None,
                fiber_dims: None,
                vertices: None,
                delzant: None,
                standard_form: None,
                segments: Some(spec.segments.len()),
                rho: Some(spec.rho.to_string()),
            }
        }
    };
    Ok(report.render(json))
}
