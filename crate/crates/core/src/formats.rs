//! On-disk JSON schemas. Rationals travel as `"p/q"` or `"p"` strings in
//! every format so no float ever touches the computation path.
//!
//! - Tower: `{"n": [...], "a": [{"j":., "l":., "vec":[...]}, ...],
//!   "lambda": [...]}` with `lambda` either a flat list in facet order or
//!   `{"zero_form": [...]}` with one offset per block.
//! - Polytope: `{"eta": [[...], ...], "kappa": [...]}`.
//! - Cross-polytope: `{"center": [...], "segments": [[p, q], ...],
//!   "rho": "..."}`.
//! - Certificate (output of the width engine): lambda, the points, and
//!   the chain reports; all indices 1-based as in the other formats.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bott::{BottTower, FacetLabel, GbmPolytope};
use crate::bounds::CrossPolytopeSpec;
use crate::lattice::{int_vec, parse_rational, RatVec, Rational};
use crate::polytope::LatticePolytope;
use crate::width::{ChainReport, ChainSplit, SimplexCertificate};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerFile {
    pub n: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<TwistEntry>,
    pub lambda: LambdaField,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistEntry {
    pub j: usize,
    pub l: usize,
    pub vec: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaField {
    ZeroForm { zero_form: Vec<String> },
    Flat(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub eta: Vec<Vec<i64>>,
    pub kappa: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiamondFile {
    pub center: Vec<String>,
    pub segments: Vec<[Vec<String>; 2]>,
    pub rho: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub lambda: String,
    pub points: Vec<CertificatePointFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<ChainFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificatePointFile {
    pub l: usize,
    pub k: usize,
    pub v: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainFile {
    pub l: usize,
    pub k: usize,
    pub chain: Vec<[usize; 2]>,
    pub splits: Vec<ChainSplitFile>,
    pub implied: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSplitFile {
    pub pairs: Vec<[usize; 2]>,
    pub admissible: bool,
}

/// Any of the recognized input files.
#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    Tower(TowerFile),
    Polytope(PolytopeFile),
    Diamond(DiamondFile),
}

pub fn detect(json: &str) -> Result<InputFile> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("n") && obj.contains_key("lambda") {
        let t: TowerFile =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(InputFile::Tower(t))
    } else if obj.contains_key("eta") && obj.contains_key("kappa") {
        let p: PolytopeFile =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(InputFile::Polytope(p))
    } else if obj.contains_key("center") && obj.contains_key("rho") {
        let d: DiamondFile =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(InputFile::Diamond(d))
    } else {
        Err(Error::Parse(
            "unrecognized input: expected tower (n/lambda), polytope (eta/kappa) or \
             cross-polytope (center/segments/rho) fields"
                .into(),
        ))
    }
}

fn parse_rat_vec(strings: &[String]) -> Result<RatVec> {
    strings.iter().map(|s| parse_rational(s)).collect()
}

fn show_rat_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

impl TowerFile {
    pub fn to_polytope(&self) -> Result<GbmPolytope> {
        let twists: Vec<((usize, usize), Vec<i64>)> =
            self.a.iter().map(|e| ((e.j, e.l), e.vec.clone())).collect();
        let tower = BottTower::from_i64(self.n.clone(), &twists)?;
        match &self.lambda {
            LambdaField::Flat(values) => {
                if values.len() != tower.facet_count() {
                    return Err(Error::Parse(format!(
                        "lambda has {} entries, expected {} (one per facet)",
                        values.len(),
                        tower.facet_count()
                    )));
                }
                GbmPolytope::build(tower, parse_rat_vec(values)?)
            }
            LambdaField::ZeroForm { zero_form } => {
                if zero_form.len() != tower.stages() {
                    return Err(Error::Parse(format!(
                        "zero_form has {} entries, expected {} (one per block)",
                        zero_form.len(),
                        tower.stages()
                    )));
                }
                GbmPolytope::build_standard(tower, parse_rat_vec(zero_form)?)
            }
        }
    }

    pub fn from_polytope(p: &GbmPolytope) -> TowerFile {
        let tower = p.tower();
        let mut a = Vec::new();
        for j in 0..tower.stages() {
            for l in 0..j {
                let vec = tower.twist(j, l);
                if vec.iter().all(Zero::is_zero) {
                    continue;
                }
                a.push(TwistEntry {
                    j: j + 1,
                    l: l + 1,
                    vec: vec
                        .iter()
                        .map(|x| i64::try_from(x).expect("twist entry fits in i64"))
                        .collect(),
                });
            }
        }
        TowerFile {
            n: tower.fiber_dims().to_vec(),
            a,
            lambda: LambdaField::Flat(show_rat_vec(p.offsets())),
        }
    }
}

impl PolytopeFile {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        let normals = self.eta.iter().map(|r| int_vec(r)).collect();
        LatticePolytope::new(normals, parse_rat_vec(&self.kappa)?)
    }

    pub fn from_polytope(p: &LatticePolytope) -> PolytopeFile {
        PolytopeFile {
            eta: p
                .normals()
                .iter()
                .map(|eta| {
                    eta.iter()
                        .map(|x| i64::try_from(x).expect("normal entry fits in i64"))
                        .collect()
                })
                .collect(),
            kappa: show_rat_vec(p.offsets()),
        }
    }
}

impl DiamondFile {
    pub fn to_spec(&self) -> Result<CrossPolytopeSpec> {
        let segments = self
            .segments
            .iter()
            .map(|[a, b]| Ok((parse_rat_vec(a)?, parse_rat_vec(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CrossPolytopeSpec {
            center: parse_rat_vec(&self.center)?,
            segments,
            rho: parse_rational(&self.rho)?,
        })
    }

    pub fn from_spec(spec: &CrossPolytopeSpec) -> DiamondFile {
        DiamondFile {
            center: show_rat_vec(&spec.center),
            segments: spec
                .segments
                .iter()
                .map(|(a, b)| [show_rat_vec(a), show_rat_vec(b)])
                .collect(),
            rho: spec.rho.to_string(),
        }
    }
}

impl CertificateFile {
    pub fn from_certificate(cert: &SimplexCertificate, chains: &[ChainReport]) -> CertificateFile {
        CertificateFile {
            lambda: cert.lambda.to_string(),
            points: cert
                .points
                .iter()
                .map(|p| CertificatePointFile {
                    l: p.block + 1,
                    k: p.k,
                    v: show_rat_vec(&p.point),
                })
                .collect(),
            chains: chains.iter().map(ChainFile::from_report).collect(),
        }
    }

    pub fn to_certificate(&self) -> Result<(SimplexCertificate, Vec<ChainReport>)> {
        let points = self
            .points
            .iter()
            .map(|p| {
                if p.l == 0 {
                    return Err(Error::Parse("certificate point with block 0".into()));
                }
                Ok(crate::width::CertificatePoint {
                    block: p.l - 1,
                    k: p.k,
                    point: parse_rat_vec(&p.v)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let chains = self
            .chains
            .iter()
            .map(ChainFile::to_report)
            .collect::<Result<Vec<_>>>()?;
        Ok((
            SimplexCertificate {
                lambda: parse_rational(&self.lambda)?,
                points,
            },
            chains,
        ))
    }
}

impl ChainFile {
    pub fn from_report(r: &ChainReport) -> ChainFile {
        ChainFile {
            l: r.block + 1,
            k: r.k,
            chain: r.chain.iter().map(|&(b, k)| [b + 1, k]).collect(),
            splits: r
                .splits
                .iter()
                .map(|s| ChainSplitFile {
                    pairs: s.pairs.iter().map(|&(b, k)| [b + 1, k]).collect(),
                    admissible: s.admissible,
                })
                .collect(),
            implied: r.implied.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
    }

    pub fn to_report(&self) -> Result<ChainReport> {
        let depair = |p: &[usize; 2]| -> Result<(usize, usize)> {
            if p[0] == 0 {
                return Err(Error::Parse("chain pair with block 0".into()));
            }
            Ok((p[0] - 1, p[1]))
        };
        Ok(ChainReport {
            block: self
                .l
                .checked_sub(1)
                .ok_or_else(|| Error::Parse("chain with block 0".into()))?,
            k: self.k,
            chain: self.chain.iter().map(depair).collect::<Result<Vec<_>>>()?,
            splits: self
                .splits
                .iter()
                .map(|s| {
                    Ok(ChainSplit {
                        pairs: s.pairs.iter().map(depair).collect::<Result<Vec<_>>>()?,
                        admissible: s.admissible,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            implied: self
                .implied
                .iter()
                .map(|p| {
                    if p[0] == 0 || p[1] == 0 {
                        return Err(Error::Parse("implied pair with block 0".into()));
                    }
                    Ok((p[0] - 1, p[1] - 1))
                })
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

pub fn parse_tower(json: &str) -> Result<GbmPolytope> {
    let file: TowerFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_polytope()
}

pub fn parse_polytope(json: &str) -> Result<LatticePolytope> {
    let file: PolytopeFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_polytope()
}

pub fn parse_diamond(json: &str) -> Result<CrossPolytopeSpec> {
    let file: DiamondFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_spec()
}

/// Offsets of a tower polytope as a zero-form list when it is standard,
/// for friendlier serialized output.
pub fn tower_file_standard(p: &GbmPolytope) -> TowerFile {
    let mut file = TowerFile::from_polytope(p);
    if p.is_standard_form() {
        let zero_form = (0..p.tower().stages())
            .map(|block| p.offset(FacetLabel { block, k: 0 }).to_string())
            .collect();
        file.lambda = LambdaField::ZeroForm { zero_form };
    }
    file
}
