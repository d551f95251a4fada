use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::functionals::ConstantConvention;
use crate::geometry::BodySpec;

/// Registered identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    Thm1,
    Thm2,
    #[serde(rename = "pleijel2d")]
    Pleijel2d,
    PleijelCot,
    #[serde(rename = "defect2d")]
    Defect2d,
    Bpf,
    #[serde(rename = "zahle2")]
    Zahle2,
    Thm3,
    Thm4,
    Kingman,
    Corollary,
    Flags,
    CotLemma,
    SphereProduct,
    Normalization,
    MeanChord,
}

impl CaseId {
    pub const ALL: [CaseId; 16] = [
        CaseId::Thm1,
        CaseId::Thm2,
        CaseId::Pleijel2d,
        CaseId::PleijelCot,
        CaseId::Defect2d,
        CaseId::Bpf,
        CaseId::Zahle2,
        CaseId::Thm3,
        CaseId::Thm4,
        CaseId::Kingman,
        CaseId::Corollary,
        CaseId::Flags,
        CaseId::CotLemma,
        CaseId::SphereProduct,
        CaseId::Normalization,
        CaseId::MeanChord,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::Thm1 => "thm1",
            CaseId::Thm2 => "thm2",
            CaseId::Pleijel2d => "pleijel2d",
            CaseId::PleijelCot => "pleijel-cot",
            CaseId::Defect2d => "defect2d",
            CaseId::Bpf => "bpf",
            CaseId::Zahle2 => "zahle2",
            CaseId::Thm3 => "thm3",
            CaseId::Thm4 => "thm4",
            CaseId::Kingman => "kingman",
            CaseId::Corollary => "corollary",
            CaseId::Flags => "flags",
            CaseId::CotLemma => "cot-lemma",
            CaseId::SphereProduct => "sphere-product",
            CaseId::Normalization => "normalization",
            CaseId::MeanChord => "mean-chord",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GeomError::Config(format!("unknown case {s:?}")))
    }
}

/// Everything needed to run one case reproducibly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseConfig {
    pub case: CaseId,
    pub body: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub moment: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h_power: Option<u32>,
    pub samples: u64,
    pub seed: u64,
    pub shards: usize,
    pub z_threshold: f64,
    pub constants: ConstantConvention,
    /// Multiplier on the boundary-pair prefactor (mutation testing).
    pub prefactor_scale: f64,
}

impl CaseConfig {
    pub fn new(case: CaseId, body: impl Into<String>, dim: usize) -> Self {
        CaseConfig {
            case,
            body: body.into(),
            dim,
            l: None,
            k: None,
            moment: None,
            h_power: None,
            samples: 100_000,
            seed: 1,
            shards: 8,
            z_threshold: 4.0,
            constants: ConstantConvention::Normalized,
            prefactor_scale: 1.0,
        }
    }

    pub fn samples(mut self, n: u64) -> Self {
        self.samples = n;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn shards(mut self, shards: usize) -> Self {
        self.shards = shards;
        self
    }

    pub fn l(mut self, l: usize) -> Self {
        self.l = Some(l);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn moment(mut self, n: u32) -> Self {
        self.moment = Some(n);
        self
    }

    pub fn h_power(mut self, m: u32) -> Self {
        self.h_power = Some(m);
        self
    }

    pub fn constants(mut self, c: ConstantConvention) -> Self {
        self.constants = c;
        self
    }

    pub fn prefactor_scale(mut self, s: f64) -> Self {
        self.prefactor_scale = s;
        self
    }

    /// Power of `h(t) = t^m` used by the case.
    pub fn effective_h_power(&self) -> u32 {
        let d = self.dim as u32;
        self.h_power.unwrap_or(match self.case {
            CaseId::Thm1 | CaseId::Zahle2 => d.saturating_sub(1).max(1),
            CaseId::Pleijel2d | CaseId::PleijelCot => 2,
            CaseId::Thm2 | CaseId::Flags => 3,
            _ => 1,
        })
    }

    pub fn effective_l(&self) -> usize {
        self.l.unwrap_or(1)
    }

    pub fn effective_k(&self) -> usize {
        self.k.unwrap_or(match self.case {
            CaseId::Thm3 => 1,
            _ => 0,
        })
    }

    pub fn effective_moment(&self) -> u32 {
        self.moment.unwrap_or(match self.case {
            CaseId::Thm4 => 3,
            _ => 1,
        })
    }

    /// Check parameters against the case's preconditions before running.
    pub fn validate(&self) -> Result<BodySpec> {
        let spec: BodySpec = self.body.parse()?;
        let d = self.dim;
        let smooth = spec.is_smooth();
        let polytope = !smooth;
        let l = self.effective_l();
        let k = self.effective_k();
        if d == 0 {
            return bad("dimension must be positive".into());
        }
        if self.samples == 0 {
            return bad("sample count must be positive".into());
        }
        if self.shards == 0 {
            return bad("shard count must be positive".into());
        }
        if !(self.z_threshold > 0.0) {
            return bad("z threshold must be positive".into());
        }
        if self.l.is_some() && !matches!(self.case, CaseId::Bpf | CaseId::Thm3 | CaseId::Thm4 | CaseId::Normalization) {
            return bad(format!("--l does not apply to case {}", self.case));
        }
        if self.k.is_some() && self.case != CaseId::Thm3 {
            return bad(format!("--k does not apply to case {}", self.case));
        }
        let need_smooth = |what: &str| {
            if smooth {
                Ok(())
            } else {
                bad(format!("case {what} requires a smooth body (ball or ellipsoid), got {}", self.body))
            }
        };
        let need_polytope = |what: &str| {
            if polytope {
                Ok(())
            } else {
                bad(format!("case {what} requires a polytope, got {}", self.body))
            }
        };
        let need_dim = |ok: bool, what: &str| if ok { Ok(()) } else { bad(format!("case {} requires {what}, got dim {d}", self.case)) };
        match self.case {
            CaseId::Thm1 => {
                need_smooth("thm1")?;
                need_dim(d >= 2, "dim ≥ 2")?;
            }
            CaseId::Pleijel2d | CaseId::Defect2d => {
                need_smooth(self.case.name())?;
                need_dim(d == 2, "dim 2")?;
            }
            CaseId::PleijelCot => need_dim(d == 2, "dim 2")?,
            CaseId::Thm2 => {
                need_polytope("thm2")?;
                need_dim(d >= 3, "dim ≥ 3")?;
            }
            CaseId::Bpf | CaseId::Thm3 => {
                if l == 0 || l >= d {
                    return bad(format!("--l must lie in 1..{d}, got {l}"));
                }
                if k > l + 1 {
                    return bad(format!("--k must lie in 0..={}, got {k}", l + 1));
                }
                if k > 0 {
                    need_smooth("thm3 with boundary points")?;
                }
                if polytope && l > 2 {
                    return bad(format!("polytope sections are supported for l ≤ 2, got {l}"));
                }
            }
            CaseId::Zahle2 => need_dim(d >= 2, "dim ≥ 2")?,
            CaseId::Thm4 => {
                need_polytope("thm4")?;
                need_dim(d >= 3, "dim ≥ 3")?;
                if l != 1 {
                    return bad(format!("thm4 supports l = 1 only, got {l}"));
                }
            }
            CaseId::Kingman => {}
            CaseId::Corollary => need_smooth("corollary")?,
            CaseId::Flags => need_dim(d >= 3, "dim ≥ 3")?,
            CaseId::CotLemma => {
                need_smooth("cot-lemma")?;
                need_dim(d >= 3, "dim ≥ 3")?;
            }
            CaseId::SphereProduct => need_dim(d >= 3, "dim ≥ 3")?,
            CaseId::Normalization => {
                if l == 0 || l >= d {
                    return bad(format!("--l must lie in 1..{d}, got {l}"));
                }
            }
            CaseId::MeanChord => {}
        }
        Ok(spec)
    }
}

fn bad<T>(m: String) -> Result<T> {
    Err(GeomError::Config(m))
}
