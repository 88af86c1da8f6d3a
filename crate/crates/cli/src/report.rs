//! Deterministic CSV and JSON result emission.
//!
//! Columns are fixed and ordered; floats are serialized with 17 significant
//! digits so repeated runs produce byte-identical files. Complex quantities
//! appear as paired `_re`/`_im` columns; fields not produced by the selected
//! tasks stay empty (CSV) or `null` (JSON).

use std::io::Write;
use std::path::Path;

use serde::Serialize;

/// One output row per sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub num_rungs: usize,
    pub j_leg: f64,
    pub j_rung: f64,
    pub delta: f64,
    pub phi: f64,
    pub psi: f64,
    pub boundary: String,
    pub rung_type: String,
    pub ground_energy_re: Option<f64>,
    pub ground_energy_im: Option<f64>,
    pub sz_sector: Option<i32>,
    pub s_ttc_re: Option<f64>,
    pub s_ttc_im: Option<f64>,
    pub renyi2_re: Option<f64>,
    pub renyi2_im: Option<f64>,
    pub beta_fit_re: Option<f64>,
    pub beta_fit_im: Option<f64>,
    pub beta_pred: Option<f64>,
    pub delta_tilde_fit_re: Option<f64>,
    pub delta_tilde_fit_im: Option<f64>,
    pub delta_tilde_pred: Option<f64>,
    pub fit_residual: Option<f64>,
    pub rdm_distance: Option<f64>,
    pub defective: bool,
}

pub const CSV_HEADER: &str = "num_rungs,j_leg,j_rung,delta,phi,psi,boundary,rung_type,\
ground_energy_re,ground_energy_im,sz_sector,s_ttc_re,s_ttc_im,renyi2_re,renyi2_im,\
beta_fit_re,beta_fit_im,beta_pred,delta_tilde_fit_re,delta_tilde_fit_im,delta_tilde_pred,\
fit_residual,rdm_distance,defective";

/// 17 significant digits, locale-free.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

impl ResultRow {
    pub fn to_csv_line(&self) -> String {
        let cells: Vec<String> = vec![
            self.num_rungs.to_string(),
            fmt_float(self.j_leg),
            fmt_float(self.j_rung),
            fmt_float(self.delta),
            fmt_float(self.phi),
            fmt_float(self.psi),
            self.boundary.clone(),
            self.rung_type.clone(),
            fmt_opt(self.ground_energy_re),
            fmt_opt(self.ground_energy_im),
            self.sz_sector.map(|s| s.to_string()).unwrap_or_default(),
            fmt_opt(self.s_ttc_re),
            fmt_opt(self.s_ttc_im),
            fmt_opt(self.renyi2_re),
            fmt_opt(self.renyi2_im),
            fmt_opt(self.beta_fit_re),
            fmt_opt(self.beta_fit_im),
            fmt_opt(self.beta_pred),
            fmt_opt(self.delta_tilde_fit_re),
            fmt_opt(self.delta_tilde_fit_im),
            fmt_opt(self.delta_tilde_pred),
            fmt_opt(self.fit_residual),
            fmt_opt(self.rdm_distance),
            self.defective.to_string(),
        ];
        cells.join(",")
    }
}

pub fn write_csv(rows: &[ResultRow], path: &Path) -> std::io::Result<()> {
    if rows.is_empty() {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "no rows to write",
        ));
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(file, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(file, "{}", row.to_csv_line())?;
    }
    file.flush()
}

pub fn write_json(rows: &[ResultRow], path: &Path) -> std::io::Result<()> {
    if rows.is_empty() {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "no rows to write",
        ));
    }
    let mut text = serde_json::to_string_pretty(rows)?;
    text.push('\n');
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> ResultRow {
        ResultRow {
            num_rungs: 3,
            j_leg: 1.0,
            j_rung: 10.0,
            delta: 0.5,
            phi: 0.7,
            psi: 0.3,
            boundary: "periodic".into(),
            rung_type: "xxz".into(),
            ground_energy_re: Some(-18.76543),
            ground_energy_im: Some(0.0),
            sz_sector: Some(0),
            s_ttc_re: Some(2.0794415416798357),
            s_ttc_im: None,
            renyi2_re: None,
            renyi2_im: None,
            beta_fit_re: None,
            beta_fit_im: None,
            beta_pred: None,
            delta_tilde_fit_re: None,
            delta_tilde_fit_im: None,
            delta_tilde_pred: None,
            fit_residual: None,
            rdm_distance: None,
            defective: false,
        }
    }

    #[test]
    fn header_and_line_have_same_arity() {
        let row = sample_row();
        assert_eq!(
            CSV_HEADER.split(',').count(),
            row.to_csv_line().split(',').count()
        );
    }

    #[test]
    fn floats_carry_17_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(-0.5), "-5.0000000000000000e-1");
    }

    #[test]
    fn csv_roundtrips_exactly() {
        let line = sample_row().to_csv_line();
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[8].parse::<f64>().unwrap(), -18.76543);
        assert_eq!(cells[11].parse::<f64>().unwrap(), 2.0794415416798357);
        assert_eq!(cells[12], "");
    }

    #[test]
    fn empty_rows_are_rejected() {
        let dir = std::env::temp_dir().join("nhladder_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        assert!(write_csv(&[], &dir.join("results.csv")).is_err());
    }
}
