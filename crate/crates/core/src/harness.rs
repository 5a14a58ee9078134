//! Error norms, convergence studies, shock-tube profiles and their CSV forms.

use std::io::Write;
use std::time::{Duration, Instant};

use crate::cweno1d::CwenoParams;
use crate::error::{CwenoError, Result};
use crate::mesh::{BoundaryCondition, CellField, Grid};
use crate::models::{builtin_problem, Problem};
use crate::oracles::{exact_cell_averages, exact_point_values};
use crate::scheme::{run, RunReport};

/// L¹ (weighted by cell volume) and L∞ norms of one component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub l1: f64,
    pub linf: f64,
}

/// Per-component norms of `computed − reference`.
pub fn error_norms(computed: &CellField, reference: &CellField) -> Result<Vec<Norms>> {
    if !computed.grid().congruent(reference.grid()) || computed.grid().offsets() != reference.grid().offsets() {
        return Err(CwenoError::ShapeMismatch("fields live on different grids".into()));
    }
    let d = computed.components();
    if reference.components() != d {
        return Err(CwenoError::ShapeMismatch("component counts differ".into()));
    }
    let vol = computed.grid().cell_volume();
    let mut out = vec![Norms { l1: 0.0, linf: 0.0 }; d];
    for (a, b) in computed.values().chunks(d).zip(reference.values().chunks(d)) {
        for r in 0..d {
            let e = (a[r] - b[r]).abs();
            out[r].l1 += e * vol;
            out[r].linf = out[r].linf.max(e);
        }
    }
    Ok(out)
}

/// Overrides applied on top of a problem's defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunConfig {
    pub params: CwenoParams,
    pub lambda: Option<f64>,
    pub t_final: Option<f64>,
    pub bc: Option<BoundaryCondition>,
}

impl RunConfig {
    pub fn lambda_for(&self, p: &Problem) -> f64 {
        self.lambda.unwrap_or(p.lambda)
    }

    pub fn t_final_for(&self, p: &Problem) -> f64 {
        self.t_final.unwrap_or(p.t_final)
    }

    pub fn bc_for(&self, p: &Problem) -> BoundaryCondition {
        self.bc.unwrap_or(p.bc)
    }
}

/// Runs `problem` with the overrides in `config`.
pub fn run_problem(problem: &Problem, config: &RunConfig) -> Result<RunReport> {
    run(
        &problem.initial,
        &problem.law,
        config.t_final_for(problem),
        config.lambda_for(problem),
        &config.params,
        config.bc_for(problem),
    )
}

/// One row of a convergence table. Norms refer to the first component.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub n: usize,
    pub l1: f64,
    pub linf: f64,
    /// Orders against the previous row; `None` on the first row or when N did not double.
    pub l1_order: Option<f64>,
    pub linf_order: Option<f64>,
    /// Same norms measured against exact point values at the cell centers.
    pub l1_pointwise: f64,
    pub steps: usize,
    pub wall_time: Duration,
}

/// `log₂(e_coarse / e_fine)`.
pub fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

fn measure(name: &str, n: usize, config: &RunConfig) -> Result<ErrorReport> {
    let start = Instant::now();
    let problem = builtin_problem(name, n)?;
    let exact = problem
        .exact
        .clone()
        .ok_or_else(|| CwenoError::InvalidParameter(format!("problem `{name}` has no exact solution")))?;
    let report = run_problem(&problem, config)?;
    let t = report.field.time();
    let grid = *report.field.grid();
    let averages = exact_cell_averages(&exact, &grid, t)?;
    let points = exact_point_values(&exact, &grid, t)?;
    let norms = error_norms(&report.field, &averages)?[0];
    let pointwise = error_norms(&report.field, &points)?[0];
    Ok(ErrorReport {
        n,
        l1: norms.l1,
        linf: norms.linf,
        l1_order: None,
        linf_order: None,
        l1_pointwise: pointwise.l1,
        steps: report.steps,
        wall_time: start.elapsed(),
    })
}

#[cfg(feature = "parallel")]
fn map_ns(ns: &[usize], f: impl Fn(usize) -> Result<ErrorReport> + Sync + Send) -> Vec<Result<ErrorReport>> {
    use rayon::prelude::*;
    ns.par_iter().map(|&n| f(n)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_ns(ns: &[usize], f: impl Fn(usize) -> Result<ErrorReport>) -> Vec<Result<ErrorReport>> {
    ns.iter().map(|&n| f(n)).collect()
}

/// Errors against exact cell averages at each resolution, with pairwise orders.
pub fn convergence_study(name: &str, ns: &[usize], config: &RunConfig) -> Result<Vec<ErrorReport>> {
    if ns.is_empty() {
        return Err(CwenoError::InvalidParameter("no resolutions given".into()));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 8) {
        return Err(CwenoError::InvalidParameter(format!("resolution {n} is below the minimum of 8")));
    }
    // fail on unknown names before spawning work
    builtin_problem(name, ns[0])?;
    let mut rows = map_ns(ns, |n| measure(name, n, config)).into_iter().collect::<Result<Vec<_>>>()?;
    for k in 1..rows.len() {
        if rows[k].n == 2 * rows[k - 1].n {
            rows[k].l1_order = Some(order(rows[k - 1].l1, rows[k].l1));
            rows[k].linf_order = Some(order(rows[k - 1].linf, rows[k].linf));
        }
    }
    Ok(rows)
}

/// Final state of a shock tube with its density error.
#[derive(Debug, Clone, PartialEq)]
pub struct ShockReport {
    pub run: RunReport,
    pub component_names: &'static [&'static str],
    pub density_l1: f64,
    pub exact_density: Vec<f64>,
}

pub fn shock_report(name: &str, n: usize, config: &RunConfig) -> Result<ShockReport> {
    if n < 100 {
        return Err(CwenoError::InvalidParameter(format!("shock reports need at least 100 cells, got {n}")));
    }
    let problem = builtin_problem(name, n)?;
    if !matches!(problem.initial.grid(), Grid::D1(_)) || problem.initial.components() != 3 {
        return Err(CwenoError::InvalidParameter(format!("`{name}` is not a shock tube")));
    }
    let exact = problem
        .exact
        .clone()
        .ok_or_else(|| CwenoError::InvalidParameter(format!("problem `{name}` has no exact solution")))?;
    let run = run_problem(&problem, config)?;
    let reference = exact_cell_averages(&exact, run.field.grid(), run.field.time())?;
    let density_l1 = error_norms(&run.field, &reference)?[0].l1;
    Ok(ShockReport {
        run,
        component_names: problem.law.component_names(),
        density_l1,
        exact_density: reference.component(0),
    })
}

/// Largest excursion of `values` against the direction of its overall trend;
/// zero for a monotone sequence.
pub fn monotonicity_violation(values: &[f64]) -> f64 {
    let (Some(&first), Some(&last)) = (values.first(), values.last()) else {
        return 0.0;
    };
    let sign = if last >= first { 1.0 } else { -1.0 };
    let mut best = f64::NEG_INFINITY;
    let mut worst: f64 = 0.0;
    for &v in values {
        let s = sign * v;
        best = best.max(s);
        worst = worst.max(best - s);
    }
    worst
}

/// Total variation `Σ |v_{j+1} − v_j|`.
pub fn total_variation(values: &[f64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// Seventeen significant digits, the shortest form that round-trips every f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn write_convergence_csv(mut w: impl Write, rows: &[ErrorReport]) -> std::io::Result<()> {
    writeln!(w, "N,L1,L1_order,Linf,Linf_order")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.n,
            fmt_f64(r.l1),
            fmt_opt(r.l1_order),
            fmt_f64(r.linf),
            fmt_opt(r.linf_order)
        )?;
    }
    Ok(())
}

/// Cell centers, every component and the central weight. 2D fields add a
/// `y` column after `x`.
pub fn write_profile_csv(
    mut w: impl Write,
    field: &CellField,
    component_names: &[&str],
    central_weights: &[f64],
) -> std::io::Result<()> {
    let d = field.components();
    let mut header = match field.grid() {
        Grid::D1(_) => "x".to_string(),
        Grid::D2(_) => "x,y".to_string(),
    };
    for name in component_names {
        header.push(',');
        header.push_str(name);
    }
    writeln!(w, "{header},w_center")?;
    for (k, cell) in field.values().chunks(d).enumerate() {
        let mut line = match field.grid() {
            Grid::D1(g) => fmt_f64(g.center(k as isize)),
            Grid::D2(g) => format!(
                "{},{}",
                fmt_f64(g.x.center((k % g.nx()) as isize)),
                fmt_f64(g.y.center((k / g.nx()) as isize))
            ),
        };
        for v in cell {
            line.push(',');
            line.push_str(&fmt_f64(*v));
        }
        line.push(',');
        line.push_str(&fmt_f64(central_weights.get(k).copied().unwrap_or(f64::NAN)));
        writeln!(w, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Grid1D;

    fn field(values: Vec<f64>, a: f64, b: f64) -> CellField {
        let g = Grid1D::new(values.len(), a, b).unwrap();
        CellField::new(g, 1, values, 0.0).unwrap()
    }

    #[test]
    fn norm_examples() {
        let a = field(vec![1.0; 10], 0.0, 1.0);
        assert_eq!(error_norms(&a, &a).unwrap()[0], Norms { l1: 0.0, linf: 0.0 });
        let mut v = vec![1.0; 10];
        v[3] = 2.0;
        let b = field(v, 0.0, 1.0);
        let n = error_norms(&b, &a).unwrap()[0];
        assert!((n.l1 - 0.1).abs() < 1e-15 && n.linf == 1.0);
        let c = field(vec![0.25; 20], -1.0, 1.0);
        let z = field(vec![0.0; 20], -1.0, 1.0);
        let n = error_norms(&c, &z).unwrap()[0];
        assert!((n.l1 - 0.5).abs() < 1e-15 && n.linf == 0.25);
        assert!(error_norms(&c, &a).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        assert_eq!(monotonicity_violation(&[3.0, 2.0, 2.0, 1.0]), 0.0);
        assert_eq!(monotonicity_violation(&[1.0, 2.0, 3.0]), 0.0);
        assert!((monotonicity_violation(&[3.0, 2.0, 2.5, 1.0]) - 0.5).abs() < 1e-15);
        assert!((monotonicity_violation(&[0.0, 1.2, 1.0, 2.0]) - 0.2).abs() < 1e-15);
        assert_eq!(total_variation(&[0.0, 1.0, 0.5]), 1.5);
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            ErrorReport {
                n: 20,
                l1: 0.1,
                linf: 0.2,
                l1_order: None,
                linf_order: None,
                l1_pointwise: 0.1,
                steps: 2,
                wall_time: Duration::ZERO,
            },
            ErrorReport {
                n: 40,
                l1: 0.0125,
                linf: 0.025,
                l1_order: Some(3.0),
                linf_order: Some(3.0),
                l1_pointwise: 0.0125,
                steps: 4,
                wall_time: Duration::ZERO,
            },
        ];
        let mut out = Vec::new();
        write_convergence_csv(&mut out, &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "N,L1,L1_order,Linf,Linf_order");
        assert_eq!(lines[1], "20,1.0000000000000001e-1,,2.0000000000000001e-1,");
        assert_eq!(lines[2].split(',').nth(2).unwrap(), "3.0000000000000000e0");
        for cell in lines[2].split(',').skip(1) {
            assert_eq!(cell.parse::<f64>().unwrap().to_string().len() > 0, true);
        }
    }

    #[test]
    fn profile_layout() {
        let f = field(vec![1.0, 2.0, 3.0, 4.0], 0.0, 1.0);
        let mut out = Vec::new();
        write_profile_csv(&mut out, &f, &["u"], &[0.5; 4]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("x,u,w_center\n1.2500000000000000e-1,1.0000000000000000e0,5.0000000000000000e-1\n"));
    }

    #[test]
    fn study_rejects_bad_input() {
        let cfg = RunConfig::default();
        assert!(matches!(
            convergence_study("nope", &[20], &cfg),
            Err(CwenoError::UnknownProblem { .. })
        ));
        assert!(convergence_study("burgers", &[4], &cfg).is_err());
        assert!(convergence_study("burgers", &[], &cfg).is_err());
        assert!(shock_report("sod", 50, &cfg).is_err());
        assert!(shock_report("burgers", 200, &cfg).is_err());
    }

    #[test]
    fn short_study_has_orders() {
        let cfg = RunConfig {
            t_final: Some(0.1),
            ..RunConfig::default()
        };
        let rows = convergence_study("burgers", &[40, 80, 100], &cfg).unwrap();
        assert!(rows[0].l1_order.is_none());
        assert!(rows[1].l1_order.unwrap() > 2.0);
        assert!(rows[2].l1_order.is_none());
    }
}
