//! TOML run-configuration parsing and validation.

use std::path::PathBuf;

use serde::Deserialize;

use nhladder::model::{Boundary, LadderParams, RungType};

/// Analysis tasks selectable per run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    /// Ground energy and its S^z sector.
    Spectrum,
    /// Biorthogonal reduced density matrix of leg A.
    Rdm,
    /// Entanglement spectrum and TTC entropies.
    Entanglement,
    /// Entanglement Hamiltonian tomography and effective β, Ψ, Δ̃.
    FitBeta,
    /// Frobenius distance between the exact and first-order RDM.
    PerturbCheck,
    /// Spectral Φ-gauge invariance witness.
    GaugeCheck,
}

impl Task {
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "spectrum" => Ok(Task::Spectrum),
            "rdm" => Ok(Task::Rdm),
            "entanglement" => Ok(Task::Entanglement),
            "fit-beta" => Ok(Task::FitBeta),
            "perturb-check" => Ok(Task::PerturbCheck),
            "gauge-check" => Ok(Task::GaugeCheck),
            other => Err(format!(
                "unknown task '{other}' (expected spectrum, rdm, entanglement, fit-beta, perturb-check, gauge-check)"
            )),
        }
    }
}

/// Output file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Sweepable model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    JLeg,
    JRung,
    Delta,
    Phi,
    Psi,
}

impl SweepParam {
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "j_leg" => Ok(SweepParam::JLeg),
            "j_rung" => Ok(SweepParam::JRung),
            "delta" => Ok(SweepParam::Delta),
            "phi" => Ok(SweepParam::Phi),
            "psi" => Ok(SweepParam::Psi),
            other => Err(format!(
                "unknown sweep parameter '{other}' (expected j_leg, j_rung, delta, phi, psi)"
            )),
        }
    }

    pub fn apply(self, params: &LadderParams, value: f64) -> LadderParams {
        match self {
            SweepParam::JLeg => LadderParams { j_leg: value, ..*params },
            SweepParam::JRung => LadderParams { j_rung: value, ..*params },
            SweepParam::Delta => LadderParams { delta: value, ..*params },
            SweepParam::Phi => LadderParams { phi: value, ..*params },
            SweepParam::Psi => LadderParams { psi: value, ..*params },
        }
    }
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub base: LadderParams,
    pub tasks: Vec<Task>,
    pub sweep: Option<(SweepParam, Vec<f64>)>,
    pub output_dir: PathBuf,
    pub formats: Vec<Format>,
}

impl RunConfig {
    /// Parameter sets for every sweep point (a single point without a sweep).
    pub fn points(&self) -> Vec<LadderParams> {
        match &self.sweep {
            Some((param, values)) => values.iter().map(|&v| param.apply(&self.base, v)).collect(),
            None => vec![self.base],
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: ModelSection,
    tasks: TasksSection,
    sweep: Option<SweepSection>,
    output: OutputSection,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSection {
    num_rungs: usize,
    j_leg: f64,
    j_rung: f64,
    delta: f64,
    #[serde(default)]
    phi: f64,
    #[serde(default)]
    psi: f64,
    #[serde(default = "default_boundary")]
    boundary: String,
    #[serde(default = "default_rung_type")]
    rung_type: String,
}

fn default_boundary() -> String {
    "periodic".into()
}

fn default_rung_type() -> String {
    "xxz".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TasksSection {
    run: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    parameter: String,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    directory: PathBuf,
    formats: Option<Vec<String>>,
}

pub fn parse_formats(names: &[String]) -> Result<Vec<Format>, String> {
    if names.is_empty() {
        return Err("formats list must not be empty".into());
    }
    let mut formats = Vec::new();
    for name in names {
        let format = match name.as_str() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            "svg" => Format::Svg,
            other => return Err(format!("unknown format '{other}' (expected csv, json, svg)")),
        };
        if !formats.contains(&format) {
            formats.push(format);
        }
    }
    Ok(formats)
}

/// Parse and validate a TOML run configuration.
pub fn parse(text: &str) -> Result<RunConfig, String> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| e.to_string())?;

    let boundary = match file.model.boundary.as_str() {
        "periodic" => Boundary::Periodic,
        "open" => Boundary::Open,
        other => return Err(format!("unknown boundary '{other}' (expected periodic, open)")),
    };
    let rung_type = match file.model.rung_type.as_str() {
        "xxz" => RungType::XxzNonreciprocal,
        "heisenberg" => RungType::HeisenbergIso,
        other => return Err(format!("unknown rung_type '{other}' (expected xxz, heisenberg)")),
    };
    let base = LadderParams {
        num_rungs: file.model.num_rungs,
        j_leg: file.model.j_leg,
        j_rung: file.model.j_rung,
        delta: file.model.delta,
        phi: file.model.phi,
        psi: file.model.psi,
        boundary,
        rung_type,
    };
    base.validate().map_err(|e| e.to_string())?;

    if file.tasks.run.is_empty() {
        return Err("tasks.run must name at least one task".into());
    }
    let tasks = file
        .tasks
        .run
        .iter()
        .map(|s| Task::from_str(s))
        .collect::<Result<Vec<_>, _>>()?;

    let sweep = match file.sweep {
        Some(section) => {
            let param = SweepParam::from_str(&section.parameter)?;
            if section.values.is_empty() {
                return Err("sweep.values must not be empty".into());
            }
            if section.values.iter().any(|v| !v.is_finite()) {
                return Err("sweep.values must be finite".into());
            }
            Some((param, section.values))
        }
        None => None,
    };

    let formats = match file.output.formats {
        Some(names) => parse_formats(&names)?,
        None => vec![Format::Csv, Format::Json],
    };

    Ok(RunConfig { base, tasks, sweep, output_dir: file.output.directory, formats })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
        [model]
        num_rungs = 3
        j_leg = 1.0
        j_rung = 10.0
        delta = 0.5
        phi = 0.7
        psi = 0.3

        [tasks]
        run = ["spectrum", "entanglement", "fit-beta"]

        [sweep]
        parameter = "j_rung"
        values = [10.0, 20.0, 40.0, 80.0]

        [output]
        directory = "out"
        formats = ["csv", "json"]
    "#;

    #[test]
    fn parses_a_complete_config() {
        let config = parse(GOOD).unwrap();
        assert_eq!(config.base.num_rungs, 3);
        assert_eq!(config.tasks.len(), 3);
        assert_eq!(config.points().len(), 4);
        assert_eq!(config.points()[2].j_rung, 40.0);
        assert_eq!(config.formats, vec![Format::Csv, Format::Json]);
    }

    #[test]
    fn rejects_unknown_sweep_parameter() {
        let bad = GOOD.replace("\"j_rung\"", "\"j_bogus\"");
        assert!(parse(&bad).unwrap_err().contains("unknown sweep parameter"));
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = GOOD.replace("psi = 0.3", "psi = 0.3\n        lambda = 1.0");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn rejects_invalid_model() {
        let bad = GOOD.replace("num_rungs = 3", "num_rungs = 1");
        assert!(parse(&bad).is_err());
        let bad = GOOD.replace("delta = 0.5", "delta = -1.5");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn rejects_unknown_task_and_format() {
        let bad = GOOD.replace("\"spectrum\"", "\"spektrum\"");
        assert!(parse(&bad).unwrap_err().contains("unknown task"));
        let bad = GOOD.replace("\"csv\", \"json\"", "\"csv\", \"pdf\"");
        assert!(parse(&bad).unwrap_err().contains("unknown format"));
    }

    #[test]
    fn defaults_apply_without_optional_sections() {
        let minimal = r#"
            [model]
            num_rungs = 2
            j_leg = 0.0
            j_rung = 1.0
            delta = 1.0

            [tasks]
            run = ["entanglement"]

            [output]
            directory = "out"
        "#;
        let config = parse(minimal).unwrap();
        assert_eq!(config.base.phi, 0.0);
        assert_eq!(config.base.boundary, Boundary::Periodic);
        assert_eq!(config.base.rung_type, RungType::XxzNonreciprocal);
        assert!(config.sweep.is_none());
        assert_eq!(config.formats, vec![Format::Csv, Format::Json]);
    }
}
