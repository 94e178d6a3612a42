//! Run configuration, launch-state descriptors and the command driver behind
//! the `gfl` binary.
//!
//! Launch states are written as
//!
//! ```text
//! fock:<k>
//! coherent:<re>,<im>      coherent:n=<mean>
//! dfock:<re>,<im>,<k>     dfock:n=<|beta|^2>,<k>
//! cat:<re>,<im>[,<k>]
//! ```
//!
//! `n=` forms use a real displacement `beta = sqrt(n)`. For `dfock` that fixes
//! `|beta|^2`, so the mean occupation of the launch state is `n + k`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::cats::{cat_from_fock, coherent_state, displaced_fock, CatDecomposition};
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::lattice::{
    evolve_numeric, green_analytic, propagate_cat, uniform_z_grid, GreenQuery, LatticeSpec,
    LeakageStatus,
};
use crate::table::{self, Format, Table, COMPARE_COLUMNS};
use crate::wigner::wigner_grid;

pub const OUTPUT_DIR_ENV: &str = "GFL_OUTPUT_DIR";

/// Input coefficients smaller than this are skipped in analytic superpositions.
const NEGLIGIBLE_AMPLITUDE: f64 = 1e-18;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Green,
    Wigner,
    Compare,
    Cat,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Green => "green",
            Command::Wigner => "wigner",
            Command::Compare => "compare",
            Command::Cat => "cat",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simulate" => Ok(Command::Simulate),
            "green" => Ok(Command::Green),
            "wigner" => Ok(Command::Wigner),
            "compare" => Ok(Command::Compare),
            "cat" => Ok(Command::Cat),
            other => Err(Error::Config(format!("unknown command {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InputDescriptor {
    Fock(usize),
    Coherent(C64),
    DisplacedFock {
        beta: C64,
        k: usize,
    },
    /// `D_NL(alpha)|k>`
    Cat {
        alpha: C64,
        k: usize,
    },
}

impl InputDescriptor {
    pub fn fock_index(&self) -> usize {
        match *self {
            InputDescriptor::Fock(k) => k,
            InputDescriptor::Coherent(_) => 0,
            InputDescriptor::DisplacedFock { k, .. } | InputDescriptor::Cat { k, .. } => k,
        }
    }

    /// Displacement of the launch state (zero for a Fock state).
    pub fn displacement(&self) -> C64 {
        match *self {
            InputDescriptor::Fock(_) => C64::new(0.0, 0.0),
            InputDescriptor::Coherent(b) => b,
            InputDescriptor::DisplacedFock { beta, .. } => beta,
            InputDescriptor::Cat { alpha, .. } => alpha,
        }
    }

    pub fn build(&self, dim: usize) -> Result<StateVector> {
        match *self {
            InputDescriptor::Fock(k) => StateVector::basis(dim, k),
            InputDescriptor::Coherent(b) => coherent_state(b, dim),
            InputDescriptor::DisplacedFock { beta, k } => displaced_fock(beta, k, dim),
            InputDescriptor::Cat { alpha, k } => Ok(cat_from_fock(alpha, k, dim)?.0),
        }
    }

    pub fn label(&self) -> String {
        let c = |z: C64| format!("{},{}", z.re, z.im);
        match *self {
            InputDescriptor::Fock(k) => format!("fock:{k}"),
            InputDescriptor::Coherent(b) => format!("coherent:{}", c(b)),
            InputDescriptor::DisplacedFock { beta, k } => format!("dfock:{},{k}", c(beta)),
            InputDescriptor::Cat { alpha, k } => format!("cat:{},{k}", c(alpha)),
        }
    }
}

impl FromStr for InputDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_input_descriptor(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, expected: &str, found: &str) -> Error {
        Error::Parse {
            position: self.pos,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    /// Next field up to `,` or the end, without consuming the separator.
    fn field(&mut self) -> &'a str {
        let rest = self.rest();
        let end = rest.find(',').unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn comma(&mut self, expected_next: &str) -> Result<()> {
        if self.rest().starts_with(',') {
            self.pos += 1;
            Ok(())
        } else if self.at_end() {
            Err(self.error(&format!("',' followed by {expected_next}"), "end of input"))
        } else {
            Err(self.error("','", &self.rest()[..1]))
        }
    }

    fn end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input", self.rest()))
        }
    }

    fn real(&mut self, what: &str) -> Result<f64> {
        let start = self.pos;
        let f = self.field();
        match f.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => {
                self.pos = start;
                Err(self.error(what, if f.is_empty() { "nothing" } else { f }))
            }
        }
    }

    fn index(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        let f = self.field();
        f.trim().parse::<usize>().map_err(|_| {
            self.pos = start;
            self.error(what, if f.is_empty() { "nothing" } else { f })
        })
    }

    fn mean(&mut self) -> Result<C64> {
        self.pos += 2;
        let start = self.pos;
        let n = self.real("a nonnegative mean occupation")?;
        if n < 0.0 {
            self.pos = start;
            return Err(self.error("a nonnegative mean occupation", &n.to_string()));
        }
        Ok(C64::new(n.sqrt(), 0.0))
    }

    fn complex(&mut self) -> Result<C64> {
        let re = self.real("a real part")?;
        self.comma("an imaginary part")?;
        let im = self.real("an imaginary part")?;
        Ok(C64::new(re, im))
    }
}

/// Parse a launch-state descriptor (see the module documentation).
pub fn parse_input_descriptor(text: &str) -> Result<InputDescriptor> {
    const KINDS: &str = "one of fock:, coherent:, dfock:, cat:";
    let text = text.trim();
    let Some(colon) = text.find(':') else {
        return Err(Error::Parse {
            position: 0,
            expected: KINDS.into(),
            found: text.into(),
        });
    };
    let kind = &text[..colon];
    let mut cur = Cursor {
        text,
        pos: colon + 1,
    };
    let desc = match kind {
        "fock" => InputDescriptor::Fock(cur.index("a Fock index")?),
        "coherent" => {
            if cur.rest().starts_with("n=") {
                InputDescriptor::Coherent(cur.mean()?)
            } else {
                InputDescriptor::Coherent(cur.complex()?)
            }
        }
        "dfock" => {
            let beta = if cur.rest().starts_with("n=") {
                cur.mean()?
            } else {
                cur.complex()?
            };
            cur.comma("a Fock index")?;
            let k = cur.index("a Fock index")?;
            InputDescriptor::DisplacedFock { beta, k }
        }
        "cat" => {
            let alpha = cur.complex()?;
            let k = if cur.at_end() {
                0
            } else {
                cur.comma("a Fock index")?;
                cur.index("a Fock index")?
            };
            InputDescriptor::Cat { alpha, k }
        }
        other => {
            return Err(Error::Parse {
                position: 0,
                expected: KINDS.into(),
                found: other.into(),
            })
        }
    };
    cur.end()?;
    Ok(desc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub spec: LatticeSpec,
    pub input: String,
    pub z_max: f64,
    pub z_samples: usize,
    /// Main output file; derived from the command and input when absent.
    pub output_path: Option<PathBuf>,
    pub output_format: Format,
    /// Half-width of the square Wigner window.
    pub wigner_range: f64,
    pub wigner_resolution: usize,
    /// Largest tolerated analytic/numeric difference for `compare`.
    pub compare_tol: f64,
}

impl RunConfig {
    pub fn new(command: Command, spec: LatticeSpec, input: &str) -> Self {
        Self {
            command,
            spec,
            input: input.to_string(),
            z_max: 4.0,
            z_samples: 400,
            output_path: None,
            output_format: Format::Csv,
            wigner_range: 2.0,
            wigner_resolution: 41,
            compare_tol: 1e-8,
        }
    }

    pub fn validate(&self) -> Result<InputDescriptor> {
        self.spec.validate()?;
        if self.z_samples < 2 {
            return Err(Error::Config(format!(
                "need at least 2 z samples, got {}",
                self.z_samples
            )));
        }
        if !(self.z_max > 0.0) || !self.z_max.is_finite() {
            return Err(Error::Config(format!(
                "z_max must be positive, got {}",
                self.z_max
            )));
        }
        if !(self.wigner_range > 0.0) || self.wigner_resolution == 0 {
            return Err(Error::Config(
                "Wigner window must have positive size".into(),
            ));
        }
        parse_input_descriptor(&self.input)
    }

    pub fn z_grid(&self) -> Vec<f64> {
        uniform_z_grid(self.z_max, self.z_samples)
    }

    /// Config echo written into every output header.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![
            (
                "generator".to_string(),
                format!("gfl {}", env!("CARGO_PKG_VERSION")),
            ),
            ("command".to_string(), self.command.to_string()),
            ("input".to_string(), self.input.clone()),
            ("sites".to_string(), self.spec.sites.to_string()),
            ("g".to_string(), self.spec.g.to_string()),
            (
                "leakage_tol".to_string(),
                format!("{:e}", self.spec.leakage_tol),
            ),
        ];
        match self.command {
            Command::Wigner => {
                meta.push(("range".into(), self.wigner_range.to_string()));
                meta.push(("resolution".into(), self.wigner_resolution.to_string()));
            }
            Command::Cat => meta.push(("zmax".into(), self.z_max.to_string())),
            _ => {
                meta.push(("zmax".into(), self.z_max.to_string()));
                meta.push(("samples".into(), self.z_samples.to_string()));
            }
        }
        if self.command == Command::Compare {
            meta.push(("tol".into(), format!("{:e}", self.compare_tol)));
        }
        meta
    }

    fn default_file_name(&self) -> String {
        let slug: String = self
            .input
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        format!(
            "{}_{}.{}",
            self.command,
            slug,
            self.output_format.extension()
        )
    }

    pub fn resolved_output(&self) -> PathBuf {
        match &self.output_path {
            Some(p) => p.clone(),
            None => {
                let dir = std::env::var_os(OUTPUT_DIR_ENV)
                    .map(PathBuf::from)
                    .unwrap_or_else(|| PathBuf::from("."));
                dir.join(self.default_file_name())
            }
        }
    }
}

/// A threshold violation found during a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Breach {
    pub what: String,
    pub value: f64,
    pub threshold: f64,
    pub m: Option<usize>,
    pub z: Option<f64>,
}

impl fmt::Display for Breach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:.3e} exceeds {:.1e}",
            self.what, self.value, self.threshold
        )?;
        if let Some(m) = self.m {
            write!(f, " at site m={m}")?;
        }
        if let Some(z) = self.z {
            write!(f, " at z={z}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub outputs: Vec<PathBuf>,
    pub summary: Vec<(String, String)>,
    pub breaches: Vec<Breach>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.breaches.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}

fn leakage_breach(status: &LeakageStatus, tol: f64) -> Option<Breach> {
    match *status {
        LeakageStatus::Ok => None,
        LeakageStatus::Warning {
            max_leakage, at_z, ..
        } => Some(Breach {
            what: "edge leakage".into(),
            value: max_leakage,
            threshold: tol,
            m: None,
            z: Some(at_z),
        }),
    }
}

/// Analytic field of an arbitrary launch state, `sum_k c_k G_{mk}(z)`.
fn analytic_fields(
    spec: &LatticeSpec,
    input: &StateVector,
    z_grid: &[f64],
) -> Result<Vec<Vec<C64>>> {
    let sources: Vec<(usize, C64)> = input
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > NEGLIGIBLE_AMPLITUDE)
        .map(|(k, c)| (k, *c))
        .collect();
    z_grid
        .par_iter()
        .map(|&z| {
            let theta = spec.g * z;
            (0..spec.sites)
                .map(|m| {
                    sources.iter().try_fold(C64::new(0.0, 0.0), |acc, &(k, c)| {
                        Ok(acc + c * green_analytic(GreenQuery::new(m, k, theta))?)
                    })
                })
                .collect::<Result<Vec<C64>>>()
        })
        .collect()
}

/// Population the analytic field puts on the last `edge` sites or beyond the
/// lattice.
fn analytic_leakage(row: &[C64], edge: usize) -> f64 {
    let total: f64 = row.iter().map(|c| c.norm_sqr()).sum();
    let edge_pop: f64 = row.iter().rev().take(edge).map(|c| c.norm_sqr()).sum();
    edge_pop + (1.0 - total).max(0.0)
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    let desc = config.validate()?;
    let spec = &config.spec;
    let out = config.resolved_output();
    let meta = config.metadata();
    let mut report = RunReport::default();

    match config.command {
        Command::Simulate => {
            let input = desc.build(spec.sites)?;
            let record = evolve_numeric(spec, &input, &config.z_grid(), &desc.label())?;
            let t = table::evolution_table(&record).with_meta(&meta);
            t.write_file(&out, config.output_format)?;
            report.outputs.push(out);
            report.summary.push((
                "max_leakage".into(),
                format!("{:.3e}", record.max_leakage()),
            ));
            report.summary.push((
                "max_norm_defect".into(),
                format!("{:.3e}", record.max_norm_defect()),
            ));
            if let LeakageStatus::Warning { min_safe_sites, .. } = record.status {
                report
                    .summary
                    .push(("min_safe_sites".into(), min_safe_sites.to_string()));
            }
            report
                .breaches
                .extend(leakage_breach(&record.status, spec.leakage_tol));
        }
        Command::Green => {
            let input = desc.build(spec.sites)?;
            let z_grid = config.z_grid();
            let rows = analytic_fields(spec, &input, &z_grid)?;
            let mut t = Table::new(&table::EVOLUTION_COLUMNS).with_meta(&meta);
            let mut worst = (0.0f64, 0.0f64);
            for (z, row) in z_grid.iter().zip(&rows) {
                for (m, e) in row.iter().enumerate() {
                    t.push_row(vec![
                        (*z).into(),
                        m.into(),
                        e.re.into(),
                        e.im.into(),
                        e.norm_sqr().into(),
                    ]);
                }
                let leak = analytic_leakage(row, spec.edge_sites);
                if leak > worst.0 {
                    worst = (leak, *z);
                }
            }
            t.write_file(&out, config.output_format)?;
            report.outputs.push(out);
            report
                .summary
                .push(("max_leakage".into(), format!("{:.3e}", worst.0)));
            if worst.0 > spec.leakage_tol {
                report.breaches.push(Breach {
                    what: "edge leakage".into(),
                    value: worst.0,
                    threshold: spec.leakage_tol,
                    m: None,
                    z: Some(worst.1),
                });
            }
        }
        Command::Compare => {
            let input = desc.build(spec.sites)?;
            let z_grid = config.z_grid();
            let record = evolve_numeric(spec, &input, &z_grid, &desc.label())?;
            let analytic = analytic_fields(spec, &input, &z_grid)?;
            let mut t = Table::new(&COMPARE_COLUMNS).with_meta(&meta);
            let mut worst: Option<(f64, usize, f64)> = None;
            for (j, z) in z_grid.iter().enumerate() {
                for (m, a) in analytic[j].iter().enumerate() {
                    let n = record.fields[[j, m]];
                    let d = (a - n).norm();
                    if worst.map_or(true, |w| d > w.0) {
                        worst = Some((d, m, *z));
                    }
                    t.push_row(vec![
                        (*z).into(),
                        m.into(),
                        a.re.into(),
                        a.im.into(),
                        n.re.into(),
                        n.im.into(),
                        d.into(),
                    ]);
                }
            }
            let (max_diff, m, z) = worst.unwrap_or((0.0, 0, 0.0));
            t.push_meta("max_abs_diff", format!("{max_diff:.16e}"));
            t.write_file(&out, config.output_format)?;
            report.outputs.push(out);
            report
                .summary
                .push(("max_abs_diff".into(), format!("{max_diff:.3e}")));
            report.summary.push((
                "max_leakage".into(),
                format!("{:.3e}", record.max_leakage()),
            ));
            if max_diff > config.compare_tol {
                report.breaches.push(Breach {
                    what: "analytic/numeric difference".into(),
                    value: max_diff,
                    threshold: config.compare_tol,
                    m: Some(m),
                    z: Some(z),
                });
            }
            report
                .breaches
                .extend(leakage_breach(&record.status, spec.leakage_tol));
        }
        Command::Wigner => {
            let psi = desc.build(spec.sites)?;
            let r = config.wigner_range;
            let grid = wigner_grid(
                &psi,
                (-r, r),
                (-r, r),
                config.wigner_resolution,
                &desc.label(),
            )?;
            table::wigner_table(&grid)
                .with_meta(&meta)
                .write_file(&out, config.output_format)?;
            report.outputs.push(out);
            let centre = grid.nearest(C64::new(0.0, 0.0));
            report.summary.push((
                "center".into(),
                centre.map_or("missing".into(), |w| format!("{w:.12}")),
            ));
            let missing = grid.missing();
            if missing > 0 {
                report.breaches.push(Breach {
                    what: "unevaluated Wigner points".into(),
                    value: missing as f64,
                    threshold: 0.0,
                    m: None,
                    z: None,
                });
            }
        }
        Command::Cat => {
            let (state, dec, z) = cat_state(spec, &desc, config.z_max)?;
            let mut t = Table::new(&table::EVOLUTION_COLUMNS).with_meta(&meta);
            for (m, e) in state.amplitudes().iter().enumerate() {
                t.push_row(vec![
                    z.into(),
                    m.into(),
                    e.re.into(),
                    e.im.into(),
                    e.norm_sqr().into(),
                ]);
            }
            t.write_file(&out, config.output_format)?;
            let comp_path = sibling(&out, "components");
            table::components_table(&dec)
                .with_meta(&meta)
                .write_file(&comp_path, config.output_format)?;
            report.outputs.push(out);
            report.outputs.push(comp_path);
            let rec = dec.reconstruct(spec.sites)?;
            let mismatch = state.max_abs_diff(&rec)?;
            report
                .summary
                .push(("components".into(), dec.len().to_string()));
            report
                .summary
                .push(("reconstruction_error".into(), format!("{mismatch:.3e}")));
            let leak = state.edge_population(spec.edge_sites);
            report
                .summary
                .push(("leakage".into(), format!("{leak:.3e}")));
            if leak > spec.leakage_tol {
                report.breaches.push(Breach {
                    what: "edge leakage".into(),
                    value: leak,
                    threshold: spec.leakage_tol,
                    m: None,
                    z: Some(z),
                });
            }
        }
    }
    Ok(report)
}

/// The cat state named by `desc`: `cat:` builds `D_NL(alpha)|k>` directly,
/// every other launch is propagated through the lattice to `z_max`.
fn cat_state(
    spec: &LatticeSpec,
    desc: &InputDescriptor,
    z_max: f64,
) -> Result<(StateVector, CatDecomposition, f64)> {
    match *desc {
        InputDescriptor::Cat { alpha, k } => {
            let (s, d) = cat_from_fock(alpha, k, spec.sites)?;
            Ok((s, d, 0.0))
        }
        _ => {
            let (s, d) = propagate_cat(spec, desc.displacement(), desc.fock_index(), z_max)?;
            Ok((s, d, z_max))
        }
    }
}

/// Compare a numeric record against a written evolution table; used to
/// check round trips.
pub fn max_table_difference(table: &Table, fields: &ndarray::Array2<C64>) -> Result<f64> {
    let rows = table::amplitude_rows(table)?;
    let sites = fields.ncols();
    let mut worst = 0.0f64;
    for (i, r) in rows.iter().enumerate() {
        let j = i / sites;
        let e = fields[[j, r.m]];
        worst = worst.max((e - C64::new(r.re, r.im)).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn descriptor_examples() {
        assert_eq!(
            parse_input_descriptor("fock:3").unwrap(),
            InputDescriptor::Fock(3)
        );
        assert_eq!(
            parse_input_descriptor("coherent:n=50").unwrap(),
            InputDescriptor::Coherent(c(50f64.sqrt(), 0.0))
        );
        assert_eq!(
            parse_input_descriptor("coherent:0.5,-1").unwrap(),
            InputDescriptor::Coherent(c(0.5, -1.0))
        );
        assert_eq!(
            parse_input_descriptor("dfock:7.0711,0,2").unwrap(),
            InputDescriptor::DisplacedFock {
                beta: c(7.0711, 0.0),
                k: 2
            }
        );
        assert_eq!(
            parse_input_descriptor("dfock:n=50,2").unwrap(),
            InputDescriptor::DisplacedFock {
                beta: c(50f64.sqrt(), 0.0),
                k: 2
            }
        );
        assert_eq!(
            parse_input_descriptor("cat:1,0").unwrap(),
            InputDescriptor::Cat {
                alpha: c(1.0, 0.0),
                k: 0
            }
        );
        assert_eq!(
            parse_input_descriptor("cat:1,0.5,3").unwrap(),
            InputDescriptor::Cat {
                alpha: c(1.0, 0.5),
                k: 3
            }
        );
    }

    fn parse_err(text: &str) -> (usize, String) {
        match parse_input_descriptor(text).unwrap_err() {
            Error::Parse {
                position, expected, ..
            } => (position, expected),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn descriptor_errors_carry_position() {
        assert_eq!(parse_err("fock").0, 0);
        assert_eq!(parse_err("squeezed:1").0, 0);
        assert_eq!(parse_err("fock:x"), (5, "a Fock index".into()));
        assert_eq!(parse_err("fock:-1").0, 5);
        assert_eq!(parse_err("coherent:1").0, 10);
        assert_eq!(parse_err("coherent:1,").0, 11);
        assert_eq!(parse_err("coherent:n=-2").0, 11);
        assert_eq!(parse_err("dfock:1,0").0, 9);
        assert_eq!(parse_err("fock:1,2"), (6, "end of input".into()));
        assert_eq!(parse_err("cat:1,2,").0, 8);
    }

    #[test]
    fn labels_reparse() {
        for text in [
            "fock:4",
            "coherent:0.25,-1.5",
            "dfock:2,0,3",
            "cat:0.5,0.5,1",
        ] {
            let d = parse_input_descriptor(text).unwrap();
            assert_eq!(parse_input_descriptor(&d.label()).unwrap(), d);
        }
    }

    #[test]
    fn config_validation() {
        let spec = LatticeSpec::new(1.0, 20).unwrap();
        let mut cfg = RunConfig::new(Command::Simulate, spec, "fock:0");
        assert!(cfg.validate().is_ok());
        cfg.z_samples = 1;
        assert!(cfg.validate().is_err());
        cfg.z_samples = 10;
        cfg.z_max = 0.0;
        assert!(cfg.validate().is_err());
        cfg.z_max = 1.0;
        cfg.input = "fock:".into();
        assert!(matches!(cfg.validate(), Err(Error::Parse { .. })));
    }

    #[test]
    fn default_output_name_is_stable() {
        let spec = LatticeSpec::new(1.0, 20).unwrap();
        let cfg = RunConfig::new(Command::Compare, spec, "coherent:n=50");
        assert_eq!(cfg.default_file_name(), "compare_coherent_n_50.csv");
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("/tmp/x/out.json"), "components"),
            PathBuf::from("/tmp/x/out.components.json")
        );
    }
}
