use std::fmt;
use std::io::Write;

use crate::error::Result;
use crate::report::EstimationReport;

/// CSV header, in column order.
pub const COLUMNS: [&str; 23] = [
    "p_MeV",
    "theta_rad",
    "I_pp",
    "I_ptheta",
    "I_thetatheta",
    "cfi_p_helicity",
    "cfi_theta_helicity",
    "cfi_p_optimal",
    "cfi_theta_optimal",
    "var_p_bound",
    "var_theta_bound",
    "cov_ptheta_bound",
    "var_p_fixed_theta",
    "var_theta_fixed_p",
    "snr_p",
    "snr_theta",
    "snr_p_fixed_theta",
    "snr_theta_fixed_p",
    "concurrence_eplus_p",
    "concurrence_eminus_p",
    "concurrence_eplus_theta",
    "concurrence_eminus_theta",
    "error_flag",
];

/// One CSV row. Missing values are `None` and serialise as empty fields.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRecord {
    pub p: f64,
    pub theta: f64,
    pub i_pp: Option<f64>,
    pub i_ptheta: Option<f64>,
    pub i_thetatheta: Option<f64>,
    pub cfi_p_helicity: Option<f64>,
    pub cfi_theta_helicity: Option<f64>,
    pub cfi_p_optimal: Option<f64>,
    pub cfi_theta_optimal: Option<f64>,
    pub var_p_bound: Option<f64>,
    pub var_theta_bound: Option<f64>,
    pub cov_ptheta_bound: Option<f64>,
    pub var_p_fixed_theta: Option<f64>,
    pub var_theta_fixed_p: Option<f64>,
    pub snr_p: Option<f64>,
    pub snr_theta: Option<f64>,
    pub snr_p_fixed_theta: Option<f64>,
    pub snr_theta_fixed_p: Option<f64>,
    pub concurrence_eplus_p: Option<f64>,
    pub concurrence_eminus_p: Option<f64>,
    pub concurrence_eplus_theta: Option<f64>,
    pub concurrence_eminus_theta: Option<f64>,
    pub error_flag: String,
}

impl GridRecord {
    pub fn from_report(r: &EstimationReport) -> Self {
        let q = r.qfim;
        let c = r.crlb;
        let [op, ot] = r.optimal;
        let [fp, ft] = r.fixed;
        GridRecord {
            p: r.spec.point.p,
            theta: r.spec.point.theta,
            i_pp: q.map(|q| q.pp),
            i_ptheta: q.map(|q| q.ptheta),
            i_thetatheta: q.map(|q| q.thetatheta),
            cfi_p_helicity: r.cfi_helicity[0],
            cfi_theta_helicity: r.cfi_helicity[1],
            cfi_p_optimal: op.map(|o| o.cfi),
            cfi_theta_optimal: ot.map(|o| o.cfi),
            var_p_bound: c.map(|c| c.var_p_bound),
            var_theta_bound: c.map(|c| c.var_theta_bound),
            cov_ptheta_bound: c.map(|c| c.cov_ptheta_bound),
            var_p_fixed_theta: fp.map(|f| f.var),
            var_theta_fixed_p: ft.map(|f| f.var),
            snr_p: c.map(|c| c.snr_p),
            snr_theta: c.map(|c| c.snr_theta),
            snr_p_fixed_theta: fp.map(|f| f.snr),
            snr_theta_fixed_p: ft.map(|f| f.snr),
            concurrence_eplus_p: op.map(|o| o.concurrence_plus),
            concurrence_eminus_p: op.map(|o| o.concurrence_minus),
            concurrence_eplus_theta: ot.map(|o| o.concurrence_plus),
            concurrence_eminus_theta: ot.map(|o| o.concurrence_minus),
            error_flag: r.error_flag(),
        }
    }

    /// Numeric columns in CSV order (everything except `error_flag`).
    pub fn values(&self) -> [Option<f64>; 22] {
        [
            Some(self.p),
            Some(self.theta),
            self.i_pp,
            self.i_ptheta,
            self.i_thetatheta,
            self.cfi_p_helicity,
            self.cfi_theta_helicity,
            self.cfi_p_optimal,
            self.cfi_theta_optimal,
            self.var_p_bound,
            self.var_theta_bound,
            self.cov_ptheta_bound,
            self.var_p_fixed_theta,
            self.var_theta_fixed_p,
            self.snr_p,
            self.snr_theta,
            self.snr_p_fixed_theta,
            self.snr_theta_fixed_p,
            self.concurrence_eplus_p,
            self.concurrence_eminus_p,
            self.concurrence_eplus_theta,
            self.concurrence_eminus_theta,
        ]
    }

    /// Value of a numeric column by header name.
    pub fn get(&self, column: &str) -> Option<f64> {
        let i = COLUMNS[..22].iter().position(|c| *c == column)?;
        self.values()[i]
    }

    /// Column values as they appear in the CSV.
    pub fn fields(&self) -> Vec<String> {
        let mut out: Vec<String> = self.values().iter().map(|v| format_value(*v)).collect();
        out.push(self.error_flag.clone());
        out
    }
}

/// 17 significant digits, enough for an exact `f64` round trip.
pub fn format_value(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

pub fn write_csv(w: &mut impl Write, records: &[GridRecord]) -> Result<()> {
    writeln!(w, "{}", COLUMNS.join(","))?;
    for r in records {
        writeln!(w, "{}", r.fields().join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSummary {
    pub column: &'static str,
    /// Number of records with a value in this column.
    pub count: usize,
    pub min: f64,
    /// `(p, θ)` of the minimum.
    pub argmin: (f64, f64),
    pub max: f64,
    pub argmax: (f64, f64),
}

/// Per-column extrema over a sweep. The first occurrence wins ties.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub records: usize,
    pub flagged: usize,
    pub columns: Vec<ColumnSummary>,
}

impl Summary {
    pub fn of(records: &[GridRecord]) -> Summary {
        let mut columns: Vec<Option<ColumnSummary>> = vec![None; 20];
        for r in records {
            let at = (r.p, r.theta);
            for (slot, (name, v)) in columns.iter_mut().zip(COLUMNS[2..22].iter().zip(&r.values()[2..])) {
                let Some(v) = *v else { continue };
                match slot {
                    None => {
                        *slot = Some(ColumnSummary {
                            column: name,
                            count: 1,
                            min: v,
                            argmin: at,
                            max: v,
                            argmax: at,
                        })
                    }
                    Some(s) => {
                        s.count += 1;
                        if v < s.min {
                            s.min = v;
                            s.argmin = at;
                        }
                        if v > s.max {
                            s.max = v;
                            s.argmax = at;
                        }
                    }
                }
            }
        }
        Summary {
            records: records.len(),
            flagged: records.iter().filter(|r| !r.error_flag.is_empty()).count(),
            columns: columns.into_iter().flatten().collect(),
        }
    }

    pub fn column(&self, name: &str) -> Option<&ColumnSummary> {
        self.columns.iter().find(|c| c.column == name)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records = {}", self.records)?;
        writeln!(f, "flagged = {}", self.flagged)?;
        for c in &self.columns {
            writeln!(
                f,
                "{}: min = {:.6e} at (p = {:.4}, theta = {:.4}); max = {:.6e} at (p = {:.4}, theta = {:.4}); n = {}",
                c.column, c.min, c.argmin.0, c.argmin.1, c.max, c.argmax.0, c.argmax.1, c.count
            )?;
        }
        Ok(())
    }
}
