//! Report structures for every subcommand, rendered either as plain text
//! or as pretty JSON (`--json`). Field order is fixed by the struct
//! declarations, so output is byte-stable for a given input.

use std::fmt::Write as _;

use serde::Serialize;

use toric_width::formats::CertificateFile;

pub trait Render: Serialize {
    fn text(&self) -> String;

    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text()
        }
    }
}

#[derive(Serialize)]
pub struct BlockLine {
    pub block: usize,
    pub closed: bool,
    pub lambda_sum: String,
}

#[derive(Serialize)]
pub struct VolumeBoundLine {
    pub n_factorial_volume: String,
    pub root_approx: String,
    pub digits: u32,
}

#[derive(Serialize)]
pub struct ProgramBoundLine {
    pub cap: u64,
    pub value: String,
    pub witness: Vec<String>,
    pub caveat: String,
}

#[derive(Serialize)]
pub struct DiamondLine {
    pub rho: String,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct WidthReport {
    pub input: String,
    pub kind: String,
    pub dimension: usize,
    pub facets: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_block: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program_bound: Option<ProgramBoundLine>,
    pub volume_bound: VolumeBoundLine,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diamond: Option<DiamondLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Render for WidthReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(
            out,
            "type: {} (dimension {}, {} facets)",
            self.kind, self.dimension, self.facets
        );
        if let Some(blocks) = &self.blocks {
            for b in blocks {
                let _ = writeln!(
                    out,
                    "block {}: u({}) {} 0, lambda({}) = {}",
                    b.block,
                    b.block,
                    if b.closed { "=" } else { "!=" },
                    b.block,
                    b.lambda_sum
                );
            }
        }
        match (&self.width, self.witness_block) {
            (Some(w), Some(b)) => {
                let _ = writeln!(out, "w_G = {w}, witness block \u{2113}={b}");
            }
            _ => {
                let _ = writeln!(out, "not a generalized Bott tower; reporting bounds only");
            }
        }
        if let Some(p) = &self.program_bound {
            let _ = writeln!(
                out,
                "program upper bound (cap {}): {} with a = ({}) [{}]",
                p.cap,
                p.value,
                p.witness.join(","),
                p.caveat
            );
        }
        let _ = writeln!(
            out,
            "volume bound: n! vol = {}; width <= {} ({} digits, rounded down)",
            self.volume_bound.n_factorial_volume,
            self.volume_bound.root_approx,
            self.volume_bound.digits
        );
        if let Some(d) = &self.diamond {
            match (&d.verified, &d.reason) {
                (true, _) => {
                    let _ = writeln!(
                        out,
                        "cross-polytope certificate: verified; width >= {}",
                        d.rho
                    );
                }
                (false, Some(r)) => {
                    let _ = writeln!(out, "cross-polytope certificate: NOT verified ({r})");
                }
                (false, None) => {
                    let _ = writeln!(out, "cross-polytope certificate: NOT verified");
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct CertificateReport {
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translated_by: Option<Vec<String>>,
    pub certificate: CertificateFile,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub written_to: Option<String>,
}

impl Render for CertificateReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        if let Some(t) = &self.translated_by {
            let _ = writeln!(out, "translated to standard form by t = ({})", t.join(","));
        }
        let _ = writeln!(out, "lambda = {}", self.certificate.lambda);
        for p in &self.certificate.points {
            let _ = writeln!(out, "v({},{}) = ({})", p.l, p.k, p.v.join(","));
        }
        for c in &self.certificate.chains {
            let chain: Vec<String> = c
                .chain
                .iter()
                .map(|p| format!("({},{})", p[0], p[1]))
                .collect();
            let _ = writeln!(out, "chain from ({},{}): {}", c.l, c.k, chain.join(" -> "));
            for s in &c.splits {
                let pairs: Vec<String> = s
                    .pairs
                    .iter()
                    .map(|p| format!("({},{})", p[0], p[1]))
                    .collect();
                let _ = writeln!(
                    out,
                    "  split: {}{}",
                    pairs.join(" -> "),
                    if s.admissible {
                        ""
                    } else {
                        " [not admissible]"
                    }
                );
            }
            if !c.implied.is_empty() {
                let ineqs: Vec<String> = c
                    .implied
                    .iter()
                    .map(|p| format!("lambda_{} >= lambda_{}", p[0], p[1]))
                    .collect();
                let _ = writeln!(out, "  implies: {}", ineqs.join(", "));
            }
        }
        let _ = writeln!(
            out,
            "verification: {}",
            if self.verified { "PASS" } else { "FAIL" }
        );
        if let Some(path) = &self.written_to {
            let _ = writeln!(out, "written to: {path}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct LuReport {
    pub input: String,
    pub cap: u64,
    pub value: String,
    pub witness: Vec<String>,
    pub caveat: String,
}

impl Render for LuReport {
    fn text(&self) -> String {
        format!(
            "input: {}\nprogram upper bound (cap {}): {}\nwitness a = ({})\nnote: {}\n",
            self.input,
            self.cap,
            self.value,
            self.witness.join(","),
            self.caveat
        )
    }
}

#[derive(Serialize)]
pub struct DiamondVerifyReport {
    pub polytope: String,
    pub diamond: String,
    pub rho: String,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Render for DiamondVerifyReport {
    fn text(&self) -> String {
        match (&self.verified, &self.reason) {
            (true, _) => format!(
                "polytope: {}\ndiamond: {}\nverified: the Gromov width is at least {}\n",
                self.polytope, self.diamond, self.rho
            ),
            (false, r) => format!(
                "polytope: {}\ndiamond: {}\nNOT verified ({})\n",
                self.polytope,
                self.diamond,
                r.as_deref().unwrap_or("unspecified")
            ),
        }
    }
}

#[derive(Serialize)]
pub struct VolumeReport {
    pub input: String,
    pub dimension: usize,
    pub volume: String,
    pub n_factorial_volume: String,
    pub root_approx: String,
    pub digits: u32,
}

impl Render for VolumeReport {
    fn text(&self) -> String {
        format!(
            "input: {}\nvolume = {}\nn! vol = {}\nwidth bound: width <= {} ({} digits, rounded down)\n",
            self.input, self.volume, self.n_factorial_volume, self.root_approx, self.digits
        )
    }
}

#[derive(Serialize)]
pub struct EdgeLine {
    pub sequence: Vec<usize>,
    pub k: usize,
    pub k_prime: usize,
    pub class: Vec<String>,
    pub omega: String,
    pub c1: String,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct BlockCheckLine {
    pub block: usize,
    pub expected_omega: String,
    pub expected_c1: String,
    pub pass: bool,
    pub edges: Vec<EdgeLine>,
}

#[derive(Serialize)]
pub struct IntersectReport {
    pub input: String,
    pub blocks: Vec<BlockCheckLine>,
    pub pass: bool,
}

impl Render for IntersectReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        for b in &self.blocks {
            let _ = writeln!(
                out,
                "block {}: expect omega = {}, c1 = {}",
                b.block, b.expected_omega, b.expected_c1
            );
            for e in &b.edges {
                let seq: Vec<String> = e.sequence.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "  edge s=({}) k={} k'={}: class ({}), omega = {}, c1 = {} -> {}",
                    seq.join(","),
                    e.k,
                    e.k_prime,
                    e.class.join(","),
                    e.omega,
                    e.c1,
                    if e.ok { "ok" } else { "MISMATCH" }
                );
            }
            let _ = writeln!(
                out,
                "block {}: {}",
                b.block,
                if b.pass { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "pass" } else { "FAIL" });
        out
    }
}

#[derive(Serialize)]
pub struct CremonaReport {
    pub vector: String,
    pub capacity: String,
    pub denom_bound: u64,
    pub reduced_positively_below: bool,
    pub reduced_positively_above: bool,
}

impl Render for CremonaReport {
    fn text(&self) -> String {
        format!(
            "vector: {}\ncapacity = {}\nprobes: positive reduction {} just below, {} just above\n",
            self.vector,
            self.capacity,
            if self.reduced_positively_below {
                "holds"
            } else {
                "fails"
            },
            if self.reduced_positively_above {
                "holds"
            } else {
                "fails"
            },
        )
    }
}

#[derive(Serialize)]
pub struct SvgReport {
    pub input: String,
    pub out: String,
    pub vertices: usize,
}

impl Render for SvgReport {
    fn text(&self) -> String {
        format!(
            "input: {}\nwrote {} ({} vertices)\n",
            self.input, self.out, self.vertices
        )
    }
}

#[derive(Serialize)]
pub struct InfoReport {
    pub input: String,
    pub kind: String,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delzant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_form: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
}

impl Render for InfoReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(out, "kind: {}", self.kind);
        let _ = writeln!(out, "dimension: {}", self.dimension);
        if let Some(v) = self.stages {
            let _ = writeln!(out, "stages: {v}");
        }
        if let Some(v) = &self.fiber_dims {
            let dims: Vec<String> = v.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "fiber dimensions: [{}]", dims.join(","));
        }
        if let Some(v) = self.facets {
            let _ = writeln!(out, "facets: {v}");
        }
        if let Some(v) = self.vertices {
            let _ = writeln!(out, "vertices: {v}");
        }
        if let Some(v) = self.delzant {
            let _ = writeln!(out, "delzant: {v}");
        }
        if let Some(v) = self.standard_form {
            let _ = writeln!(out, "standard form: {v}");
        }
        if let Some(v) = self.segments {
            let _ = writeln!(out, "segments: {v}");
        }
        if let Some(v) = &self.rho {
            let _ = writeln!(out, "rho: {v}");
        }
        out
    }
}
