//! Convergence studies: finite-n kernels and asymptotics against their limits.

use mjue_core::{
    arcsine_density, bessel_gap_probability, bulk_pi_asymptotic, finite_gap_probability,
    kernel_cd, psi_phase, recurrence_table, scaled_bulk, scaled_edge, sine_kernel, BesselKernel64,
    KernelContext64, SzegoData,
};

use crate::config::{ExperimentConfig, StudyKind};
use crate::HarnessError;

/// Least-squares fit of e_n = C n^{-p}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub order: f64,
    pub constant: f64,
    /// RMS residual in log error.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub max_err: f64,
    /// Limiting-target value at the grid point achieving the maximum error.
    pub target: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRow {
    pub s: f64,
    pub n: usize,
    pub p_finite: f64,
    pub p_limit: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub kind: StudyKind,
    /// Raw per-n maximum errors (all studies except gap).
    pub rows: Vec<ErrorRow>,
    /// Per-(s, n) gap probabilities (gap study only).
    pub gap_rows: Vec<GapRow>,
    /// Rate fit on node-excluded errors, when an order is asserted.
    pub fit: Option<RateFit>,
    pub expected_order: Option<f64>,
    /// Accepted half-width |p - expected| <= band.
    pub band: f64,
    pub passed: bool,
}

pub fn fit_convergence_rate(points: &[(usize, f64)]) -> Result<RateFit, HarnessError> {
    if points.len() < 3 {
        return Err(HarnessError::Study(format!(
            "rate fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(_, e)| !(e > 0.0) || !e.is_finite()) {
        return Err(HarnessError::Study(
            "rate fit requires positive finite errors".into(),
        ));
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, e)| e.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    if sxx == 0.0 {
        return Err(HarnessError::Study("rate fit needs distinct n values".into()));
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    Ok(RateFit {
        order: -slope,
        constant: intercept.exp(),
        residual: (ss_res / m).sqrt(),
    })
}

pub fn run_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    cfg.validate()?;
    match cfg.study {
        StudyKind::Density => run_density_study(cfg),
        StudyKind::Bulk => run_bulk_study(cfg),
        StudyKind::Edge => run_edge_study(cfg),
        StudyKind::Gap => run_gap_study(cfg),
        StudyKind::Recurrence => run_recurrence_study(cfg),
        StudyKind::Asymptotics => run_asymptotics_study(cfg),
    }
}

fn max_with_target(errs: &[(f64, f64)]) -> (f64, f64) {
    let mut best = (0.0_f64, 0.0_f64);
    for &(e, t) in errs {
        if e >= best.0 {
            best = (e, t);
        }
    }
    best
}

fn band_report(
    kind: StudyKind,
    rows: Vec<ErrorRow>,
    fit_points: Vec<(usize, f64)>,
    band: f64,
) -> Result<ConvergenceReport, HarnessError> {
    let fit = fit_convergence_rate(&fit_points)?;
    let passed = (fit.order - 1.0).abs() <= band;
    Ok(ConvergenceReport {
        kind,
        rows,
        gap_rows: Vec::new(),
        fit: Some(fit),
        expected_order: Some(1.0),
        band,
        passed,
    })
}

/// Maximum over the grid of |K_n(x,x)/n - xi(x)| with xi the arcsine density.
///
/// The O(1/n) error term oscillates in both x and n, and a sparse grid can
/// sample it near a node at one degree and near a peak at another, wrecking
/// the rate fit. Reported errors are taken at the requested degrees, but the
/// fit uses the local envelope: the maximum over the five degrees
/// n-2 ..= n+2, which samples the oscillation at well-separated phases.
pub fn run_density_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    let weight = cfg.weight()?;
    let grid = cfg.resolved_grid();
    let n_max = *cfg.n.last().unwrap();
    let table = recurrence_table(&weight, n_max + 3)?;
    let max_err_at = |n: usize| -> Result<(f64, f64), HarnessError> {
        let ctx = KernelContext64::new(&weight, &table, n)?;
        let mut errs = Vec::with_capacity(grid.len());
        for &x in &grid {
            let target = arcsine_density(x)?;
            let err = (kernel_cd(&ctx, x, x)? / n as f64 - target).abs();
            errs.push((err, target));
        }
        Ok(max_with_target(&errs))
    };
    let mut rows = Vec::with_capacity(cfg.n.len());
    let mut fit_points = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let (max_err, target) = max_err_at(n)?;
        rows.push(ErrorRow { n, max_err, target });
        let mut envelope = 0.0_f64;
        for nn in n.saturating_sub(2).max(1)..=n + 2 {
            envelope = envelope.max(max_err_at(nn)?.0);
        }
        fit_points.push((n, envelope));
    }
    band_report(StudyKind::Density, rows, fit_points, cfg.tol)
}

/// True when (u, v) sits within 0.02 of a zero of the sine kernel,
/// i.e. u - v near a nonzero integer. Such points are dropped from rate fits.
fn near_sine_node(u: f64, v: f64) -> bool {
    let d = u - v;
    let k = d.round();
    k != 0.0 && (d - k).abs() < 0.02
}

/// Maximum over the (u, v) box of |scaled bulk kernel - sine kernel|.
pub fn run_bulk_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    let weight = cfg.weight()?;
    let axis = cfg.resolved_grid();
    let n_max = *cfg.n.last().unwrap();
    let table = recurrence_table(&weight, n_max + 1)?;
    let mut rows = Vec::with_capacity(cfg.n.len());
    let mut fit_points = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let ctx = KernelContext64::new(&weight, &table, n)?;
        let mut raw = Vec::new();
        let mut kept = Vec::new();
        for &u in &axis {
            for &v in &axis {
                let target = sine_kernel(u, v);
                let err = (scaled_bulk(&ctx, cfg.x, u, v)? - target).abs();
                raw.push((err, target));
                if !near_sine_node(u, v) {
                    kept.push((err, target));
                }
            }
        }
        let (max_err, target) = max_with_target(&raw);
        rows.push(ErrorRow { n, max_err, target });
        let filtered = if kept.is_empty() { &raw } else { &kept };
        fit_points.push((n, max_with_target(filtered).0));
    }
    band_report(StudyKind::Bulk, rows, fit_points, cfg.tol)
}

/// Maximum over the (u, v) box of the weighted hard-edge error
/// (uv)^{-alpha/2} |D_n(u,v) - J_alpha(u,v)|.
pub fn run_edge_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    let weight = cfg.weight()?;
    let axis = cfg.resolved_grid();
    let u_hi = axis.iter().cloned().fold(0.0_f64, f64::max);
    let limit = BesselKernel64::new(cfg.alpha, u_hi * 1.05)?;
    let n_max = *cfg.n.last().unwrap();
    let table = recurrence_table(&weight, n_max + 1)?;
    let half = cfg.alpha / 2.0;
    let mut rows = Vec::with_capacity(cfg.n.len());
    let mut fit_points = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let ctx = KernelContext64::new(&weight, &table, n)?;
        let mut errs = Vec::new();
        for &u in &axis {
            for &v in &axis {
                let target = limit.reduced(u, v)?;
                let scaled = scaled_edge(&ctx, u, v)? / (u.powf(half) * v.powf(half));
                errs.push(((scaled - target).abs(), target));
            }
        }
        let (max_err, target) = max_with_target(&errs);
        rows.push(ErrorRow { n, max_err, target });
        fit_points.push((n, max_err));
    }
    band_report(StudyKind::Edge, rows, fit_points, cfg.tol)
}

/// Per-(s, n) table of the finite-n gap probability on (1 - s/2n^2, 1)
/// against the hard-edge limit; passes when each s-column converges
/// monotonically.
pub fn run_gap_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    let weight = cfg.weight()?;
    let n_max = *cfg.n.last().unwrap();
    let table = recurrence_table(&weight, n_max + 1)?;
    let mut s_sorted = cfg.s.clone();
    s_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut gap_rows = Vec::with_capacity(s_sorted.len() * cfg.n.len());
    let mut passed = true;
    for &s in &s_sorted {
        let p_limit = bessel_gap_probability(cfg.alpha, s, cfg.m)?;
        let mut prev_diff = f64::INFINITY;
        for &n in &cfg.n {
            let ctx = KernelContext64::new(&weight, &table, n)?;
            let p_finite = finite_gap_probability(&ctx, s, cfg.m)?;
            let abs_diff = (p_finite - p_limit).abs();
            if abs_diff >= prev_diff {
                passed = false;
            }
            prev_diff = abs_diff;
            gap_rows.push(GapRow {
                s,
                n,
                p_finite,
                p_limit,
                abs_diff,
            });
        }
    }
    Ok(ConvergenceReport {
        kind: StudyKind::Gap,
        rows: Vec::new(),
        gap_rows,
        fit: None,
        expected_order: None,
        band: cfg.tol,
        passed,
    })
}

/// Deviation of the monic three-term recurrence coefficients from their
/// limits a_n -> 0, b_n -> 1/4; passes when the deviation shrinks.
pub fn run_recurrence_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    let weight = cfg.weight()?;
    let n_max = *cfg.n.last().unwrap();
    let table = recurrence_table(&weight, n_max + 1)?;
    let mut rows = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let dev_a = table.a[n].abs();
        let dev_b = (table.b[n - 1] - 0.25).abs();
        rows.push(ErrorRow {
            n,
            max_err: dev_a.max(dev_b),
            target: 0.25,
        });
    }
    // already at rounding level for classical weights: nothing left to converge
    let floor = 1e-13;
    let at_floor = rows.iter().all(|r| r.max_err < floor);
    let passed = at_floor
        || (rows.last().unwrap().max_err <= rows.first().unwrap().max_err
            && rows.iter().all(|r| r.max_err.is_finite()));
    let fit = if at_floor {
        None
    } else {
        fit_convergence_rate(&rows.iter().map(|r| (r.n, r.max_err)).collect::<Vec<_>>()).ok()
    };
    Ok(ConvergenceReport {
        kind: StudyKind::Recurrence,
        rows,
        gap_rows: Vec::new(),
        fit,
        expected_order: None,
        band: cfg.tol,
        passed,
    })
}

/// Maximum relative error of the leading-order bulk formula for the monic
/// polynomial against its exact value, skipping grid points that fall within
/// 0.02 of the cosine's oscillation nodes for the given n.
pub fn run_asymptotics_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    let weight = cfg.weight()?;
    let grid = cfg.resolved_grid();
    let data = SzegoData::from_weight(&weight)?;
    let n_max = *cfg.n.last().unwrap();
    let table = recurrence_table(&weight, n_max + 3)?;
    let max_err_at = |n: usize| -> Result<Option<(f64, f64)>, HarnessError> {
        let mut errs = Vec::new();
        for &x in &grid {
            let arg =
                (n as f64 + 0.5) * x.acos() + psi_phase(&data, x)? - std::f64::consts::PI / 4.0;
            // exclude points close to a zero of the leading cosine: the
            // relative error there is amplified by 1/|cos|, which would make
            // the fitted envelope erratic
            if arg.cos().abs() < 0.3 {
                continue;
            }
            let (p, _) = table.eval_orthonormal(n, x)?;
            let exact = p[n] / table.gamma(n)?;
            let approx = bulk_pi_asymptotic(&data, &weight, n, x)?;
            errs.push(((approx - exact).abs() / exact.abs(), exact));
        }
        Ok(if errs.is_empty() {
            None
        } else {
            Some(max_with_target(&errs))
        })
    };
    let mut rows = Vec::with_capacity(cfg.n.len());
    let mut fit_points = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let (max_err, target) = max_err_at(n)?.ok_or_else(|| {
            HarnessError::Study(format!("all grid points fall on oscillation nodes at n = {n}"))
        })?;
        rows.push(ErrorRow { n, max_err, target });
        // relative errors oscillate in the degree as well; fit on the local
        // envelope over n-2 ..= n+2, as in the density study
        let mut envelope = 0.0_f64;
        for nn in n.saturating_sub(2).max(2)..=n + 2 {
            if let Some((e, _)) = max_err_at(nn)? {
                envelope = envelope.max(e);
            }
        }
        fit_points.push((n, envelope));
    }
    band_report(StudyKind::Asymptotics, rows, fit_points, cfg.tol)
}
