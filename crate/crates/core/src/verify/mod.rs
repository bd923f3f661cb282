//! Identity registry and verification reports.
//!
//! Each registered identity is checked on a fixed parameter grid and yields a
//! [`VerificationReport`] holding every individual deviation. Reports contain
//! no timing unless asked for, so repeated runs serialize byte-identically.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::zeta::ZetaEngine;
use crate::TOOL_VERSION;

pub use checks::{
    check_lemma4, check_lemma5_antipode, check_lemma6_symgene, check_lemma7_symsum,
    check_t_independence,
};

/// JSON schema version of emitted reports.
pub const REPORT_FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    OzExp,
    OzGamma,
    #[serde(rename = "lq_3f2")]
    Lq3f2,
    Main,
    Lemma4,
    Lemma5Antipode,
    Lemma6Symgene,
    Lemma7Symsum,
    Cor1,
    Cor2,
    Specializations,
    TIndependence,
}

impl IdentityName {
    pub const ALL: [IdentityName; 12] = [
        IdentityName::OzExp,
        IdentityName::OzGamma,
        IdentityName::Lq3f2,
        IdentityName::Main,
        IdentityName::Lemma4,
        IdentityName::Lemma5Antipode,
        IdentityName::Lemma6Symgene,
        IdentityName::Lemma7Symsum,
        IdentityName::Cor1,
        IdentityName::Cor2,
        IdentityName::Specializations,
        IdentityName::TIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityName::OzExp => "oz_exp",
            IdentityName::OzGamma => "oz_gamma",
            IdentityName::Lq3f2 => "lq_3f2",
            IdentityName::Main => "main",
            IdentityName::Lemma4 => "lemma4",
            IdentityName::Lemma5Antipode => "lemma5_antipode",
            IdentityName::Lemma6Symgene => "lemma6_symgene",
            IdentityName::Lemma7Symsum => "lemma7_symsum",
            IdentityName::Cor1 => "cor1",
            IdentityName::Cor2 => "cor2",
            IdentityName::Specializations => "specializations",
            IdentityName::TIndependence => "t_independence",
        }
    }

    /// The statement being checked, in plain text.
    pub fn statement(self) -> &'static str {
        match self {
            IdentityName::OzExp => {
                "(XY-Z) Phi(X,Y,Z) = Z (1 - exp(sum_k zeta(k)/k (X^k+Y^k-alpha^k-beta^k))), alpha+beta = X+Y, alpha beta = Z"
            }
            IdentityName::OzGamma => {
                "Phi(X,Y,Z) = Z/(XY-Z) (1 - Gamma(1-X)Gamma(1-Y)/(Gamma(1-alpha)Gamma(1-beta)))"
            }
            IdentityName::Lq3f2 => {
                "sum_k zeta^t(k) u_k = Z/((1-Y)(1-beta_t)) 3F2(1+alpha_{t-1}-beta_t, 1+beta_{t-1}-beta_t, 1; 2-Y, 2-beta_t; 1)"
            }
            IdentityName::Main => {
                "Phi^t_{x,y}(X,Y,Z) = Phi^t(xX,xY,x^2Z) - Phi^{1-t}(yX,yY,y^2Z) exp(sum_k zeta(k)/k (x^k+y^k)(gamma_t^k+delta_t^k-gamma_{1-t}^k-delta_{1-t}^k))"
            }
            IdentityName::Lemma4 => {
                "Phi^t(xX,xY,x^2Z) - Phi^t_{x,y}(X,Y,Z) = Phi^{1-t}(yX,yY,y^2Z) sum_{all k} (1-2t)^dep zeta^t_{x,y}(k) u_k"
            }
            IdentityName::Lemma5Antipode => {
                "sum_{j=0}^{r} (-1)^{r-j} zeta^t(k_j,...,k_1) zeta^{1-t}(k_{j+1},...,k_r) = 0"
            }
            IdentityName::Lemma6Symgene => {
                "sum_{all k} (1-2t)^dep zeta^t_{x,y}(k) u_k = exp(sum_k zeta(k)/k (x^k+y^k)(gamma_t^k+delta_t^k-gamma_{1-t}^k-delta_{1-t}^k))"
            }
            IdentityName::Lemma7Symsum => {
                "sum_{sigma} zeta^t_{x,y}(k_sigma) = sum_{set partitions P} prod_{blocks B} c_{|B|}(t) zeta_{x,y}(sum_{i in B} k_i)"
            }
            IdentityName::Cor1 => {
                "Phi^t_S(X,Y,Z) = Phi^t(X,Y,Z) - Phi^{1-t}(-X,-Y,Z) exp(sum_{k even} 2 zeta(k)/k (gamma_t^k+delta_t^k-gamma_{1-t}^k-delta_{1-t}^k))"
            }
            IdentityName::Cor2 => {
                "sum_k (zeta_S-star(k) - zeta-star(k)) u_k = Z/(XY-Z) (Gamma(1+X)Gamma(1-Y)/(Gamma(1-eta)Gamma(1-xi)) - 1) mod zeta(2)"
            }
            IdentityName::Specializations => {
                "zeta^0 = zeta, zeta^1 = zeta-star, zeta^t_{1,0} = zeta^t, zeta^t_{1,-1} = zeta^t_S, and the matching Phi lattice"
            }
            IdentityName::TIndependence => "zeta_S(k) and zeta_S-star(k) do not depend on the regularization parameter T",
        }
    }

    /// Default primary size parameter (truncation order or maximal weight).
    pub fn default_size(self) -> u32 {
        match self {
            IdentityName::OzExp => 8,
            IdentityName::OzGamma | IdentityName::Lq3f2 => 14,
            IdentityName::Main | IdentityName::Cor1 | IdentityName::Cor2 => 7,
            IdentityName::Lemma4 => 5,
            IdentityName::Lemma6Symgene => 6,
            IdentityName::Lemma5Antipode
            | IdentityName::Specializations
            | IdentityName::TIndependence => 6,
            IdentityName::Lemma7Symsum => 8,
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityName {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let alias = match key.as_str() {
            "lemma5" => "lemma5_antipode",
            "lemma6" => "lemma6_symgene",
            "lemma7" => "lemma7_symsum",
            other => other,
        };
        IdentityName::ALL
            .into_iter()
            .find(|n| n.name() == alias)
            .ok_or_else(|| MzvError::UnknownIdentity(s.to_string()))
    }
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub key: String,
    pub dev: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: IdentityName,
    pub statement: String,
    pub params: BTreeMap<String, String>,
    pub max_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub branch: Vec<String>,
    pub elapsed_ms: Option<u64>,
    pub deviations: Vec<Deviation>,
    /// Parameter values deliberately not checked, with the reason.
    pub excluded: Vec<String>,
    pub notes: Vec<String>,
    pub tool_version: String,
}

impl VerificationReport {
    pub(crate) fn new(identity: IdentityName, tolerance: f64) -> Self {
        VerificationReport {
            identity,
            statement: identity.statement().to_string(),
            params: BTreeMap::new(),
            max_dev: 0.0,
            tolerance,
            pass: true,
            branch: Vec::new(),
            elapsed_ms: None,
            deviations: Vec::new(),
            excluded: Vec::new(),
            notes: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub(crate) fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Records a deviation; NaN counts as an unbounded failure.
    pub(crate) fn push(&mut self, key: impl Into<String>, dev: f64, tolerance: f64) {
        let dev = if dev.is_nan() { f64::MAX } else { dev };
        let pass = dev <= tolerance;
        self.max_dev = self.max_dev.max(dev);
        self.pass &= pass;
        self.deviations.push(Deviation {
            key: key.into(),
            dev,
            tolerance,
            pass,
        });
    }

    /// Records a check that could not be evaluated.
    pub(crate) fn push_error(&mut self, key: impl Into<String>, err: &MzvError) {
        let key = key.into();
        self.notes.push(format!("{key}: {err}"));
        self.push(key, f64::MAX, self.tolerance);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Deviation> {
        self.deviations.iter().filter(|d| !d.pass)
    }
}

/// Options shared by every check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Overrides the identity's default size parameter.
    pub max_weight: Option<u32>,
    /// Record wall time in the report.
    pub timing: bool,
}

impl VerifyConfig {
    fn size(&self, name: IdentityName) -> u32 {
        self.max_weight.unwrap_or_else(|| name.default_size())
    }
}

/// Runs one registered identity on its default grid.
pub fn run_identity(
    engine: &ZetaEngine,
    name: IdentityName,
    config: &VerifyConfig,
) -> VerificationReport {
    let start = Instant::now();
    let n = config.size(name);
    let mut report = match name {
        IdentityName::OzExp => checks::oz_exp(engine, n),
        IdentityName::OzGamma => checks::oz_gamma(engine, n),
        IdentityName::Lq3f2 => checks::lq_3f2(engine, n),
        IdentityName::Main => checks::main_identity(engine, n),
        IdentityName::Lemma4 => checks::lemma4_grid(engine, n),
        IdentityName::Lemma5Antipode => checks::lemma5_all(engine, n),
        IdentityName::Lemma6Symgene => checks::lemma6_grid(engine, n),
        IdentityName::Lemma7Symsum => checks::lemma7_all(engine, n),
        IdentityName::Cor1 => checks::cor1(engine, n),
        IdentityName::Cor2 => checks::cor2(engine, n),
        IdentityName::Specializations => checks::specializations(engine, n),
        IdentityName::TIndependence => checks::t_independence_all(engine, n),
    };
    if config.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// Runs the given identities concurrently; reports come back sorted by name.
pub fn run_many(
    engine: &ZetaEngine,
    names: &[IdentityName],
    config: &VerifyConfig,
) -> Vec<VerificationReport> {
    let mut names = names.to_vec();
    names.sort();
    names.dedup();
    let mut reports: Vec<VerificationReport> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| s.spawn(move || run_identity(engine, name, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    reports.sort_by(|a, b| a.identity.name().cmp(b.identity.name()));
    reports
}

pub fn run_all(engine: &ZetaEngine, config: &VerifyConfig) -> Vec<VerificationReport> {
    run_many(engine, &IdentityName::ALL, config)
}

/// The top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: u32,
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

impl ReportDocument {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        ReportDocument {
            format: REPORT_FORMAT,
            pass: reports.iter().all(|r| r.pass),
            reports,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ReportDocument = serde_json::from_str(s)?;
        if doc.format != REPORT_FORMAT {
            return Err(MzvError::InvalidArgument(format!(
                "report format {} is not supported (expected {REPORT_FORMAT})",
                doc.format
            )));
        }
        Ok(doc)
    }
}
