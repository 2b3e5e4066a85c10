//! Sampled value sets of exponential sums and their torus-parameterized
//! auxiliary functions, with verifiers for the structural facts the library
//! is built on: the member identity (a generated member's line values are
//! auxiliary-function values), basis independence of the torus cloud, and
//! agreement of line clouds for equivalent sums.
//!
//! All samplers are deterministic: clouds are assembled in grid order, so a
//! cloud re-evaluates bit-for-bit from its source parameters.


use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::equivalence::{decide_equiv, EquivVerdict};
use crate::error::{Error, Result};
use crate::exponents::{change_of_basis, Frequency};
use crate::rational::{lcm_denominators, rat_to_f64};
use crate::sums::{evaluate, ComplexPoint, ExponentialSum};

/// Hard cap on the number of torus sample points.
pub const TORUS_BUDGET: u128 = 10_000_000;

/// Residue enumeration mode for torus sampling: `All` crosses the grid with
/// every residue tuple (k_j ranges over [0, d_j) per active row), `Zero`
/// pins every residue to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueMode {
    All,
    Zero,
}

/// How a cloud was produced; enough to re-evaluate every point.
#[derive(Debug, Clone, PartialEq)]
pub enum CloudSource {
    Line {
        sigma0: f64,
        t_max: f64,
        step: f64,
    },
    Torus {
        sigma0: f64,
        grid_per_dim: usize,
        residue_mode: ResidueMode,
    },
}

/// A finite sample of the value set of one sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueCloud {
    pub points: Vec<ComplexPoint>,
    pub source: CloudSource,
    pub sum_id: String,
}

fn sum_label(f: &ExponentialSum) -> String {
    format!(
        "{}-term sum over {} generator(s)",
        f.len(),
        f.exponents().dim()
    )
}

/// Active-row data for numeric sampling: amplitude a_j·e^{λ_j·σ}, the
/// coordinate row as floats, and the residue denominator.
struct SampledRow {
    amp: Complex64,
    row: Vec<f64>,
    denominator: u64,
    res_unit: f64,
}

fn sampled_rows(
    f: &ExponentialSum,
    sigma: f64,
    rows: &[Vec<BigRational>],
    forced_zero_residues: bool,
) -> Result<Vec<SampledRow>> {
    let mut out = Vec::new();
    for (j, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let denominator = if forced_zero_residues {
            1
        } else {
            lcm_denominators(&rows[j]).to_u64().ok_or_else(|| {
                Error::BudgetExceeded {
                    requested: u128::MAX,
                    budget: TORUS_BUDGET,
                }
            })?
        };
        out.push(SampledRow {
            amp: c.to_complex() * (f.exponents().freqs()[j].value() * sigma).exp(),
            row: rows[j].iter().map(rat_to_f64).collect(),
            denominator,
            res_unit: 1.0 / denominator as f64,
        });
    }
    Ok(out)
}

/// Evaluates the auxiliary function
/// `Σ_j a_j e^{λ_j σ} e^{2πi(<r_j, x_turns> + residues_j/d_j)}`
/// at a raw (unreduced) torus point over the natural basis.
///
/// The special choice x_k = t·g_k/2π with zero residues reproduces
/// `evaluate(f, σ, t)`.
pub fn eval_aux(
    f: &ExponentialSum,
    sigma: f64,
    x_turns: &[f64],
    residues: &[BigInt],
) -> Result<ComplexPoint> {
    f.check_sigma(sigma)?;
    let basis = f.exponents().natural_basis();
    if x_turns.len() != basis.basis_size() {
        return Err(Error::DimensionMismatch(format!(
            "{} torus coordinates for a basis of size {}",
            x_turns.len(),
            basis.basis_size()
        )));
    }
    if residues.len() != f.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} residues for {} rows",
            residues.len(),
            f.len()
        )));
    }
    for (j, res) in residues.iter().enumerate() {
        let d = &basis.row_denominators[j];
        if res.is_negative() || res >= d {
            return Err(Error::ResidueOutOfRange {
                row: j,
                residue: res.to_string(),
                denominator: d.to_string(),
            });
        }
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for (j, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let dot: f64 = basis.coord_matrix[j]
            .iter()
            .zip(x_turns)
            .map(|(r, x)| rat_to_f64(r) * x)
            .sum();
        let res = rat_to_f64(&BigRational::new(
            residues[j].clone(),
            basis.row_denominators[j].clone(),
        ));
        let amp = c.to_complex() * (f.exponents().freqs()[j].value() * sigma).exp();
        acc += amp * Complex64::from_polar(1.0, std::f64::consts::TAU * (dot + res));
    }
    Ok(acc)
}

/// Samples `evaluate(f, σ₀, t)` for t in {−t_max, −t_max+step, …, t_max}.
pub fn sample_line(
    f: &ExponentialSum,
    sigma0: f64,
    t_max: f64,
    step: f64,
) -> Result<ValueCloud> {
    f.check_sigma(sigma0)?;
    if !(t_max > 0.0) || !t_max.is_finite() || !(step > 0.0) || !step.is_finite() {
        return Err(Error::BadDiscretization(format!(
            "t_max {t_max} and step {step} must be positive and finite"
        )));
    }
    let count = (2.0 * t_max / step + 1e-9).floor() as usize;
    let rows: Vec<(Complex64, f64)> = f
        .coeffs()
        .iter()
        .zip(f.exponents().freqs())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, freq)| {
            (
                c.to_complex() * (freq.value() * sigma0).exp(),
                freq.value(),
            )
        })
        .collect();
    let mut points = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let t = -t_max + i as f64 * step;
        let mut acc = Complex64::new(0.0, 0.0);
        for (amp, lambda) in &rows {
            acc += amp * Complex64::from_polar(1.0, lambda * t);
        }
        points.push(acc);
    }
    Ok(ValueCloud {
        points,
        source: CloudSource::Line {
            sigma0,
            t_max,
            step,
        },
        sum_id: sum_label(f),
    })
}

/// Number of torus samples: grid^m times the product of residue radices.
fn torus_count(m: usize, grid: usize, rows: &[SampledRow]) -> Option<u128> {
    let mut total = (grid as u128).checked_pow(m as u32)?;
    for r in rows {
        total = total.checked_mul(r.denominator as u128)?;
    }
    Some(total)
}

/// Evaluates the auxiliary function over the full grid × residue product.
/// Grid-major order, residue tuples innermost, last index fastest.
fn torus_points(rows: &[SampledRow], m: usize, grid: usize, bound: f64) -> Vec<ComplexPoint> {
    let grid_total: u128 = (grid as u128).pow(m as u32);
    let res_total: u128 = rows.iter().map(|r| r.denominator as u128).product();
    let mut points = Vec::with_capacity((grid_total * res_total) as usize);
    let inv_grid = 1.0 / grid as f64;
    let mut x = vec![0.0f64; m];
    for gi in 0..grid_total {
        let mut rem = gi;
        for k in (0..m).rev() {
            x[k] = (rem % grid as u128) as f64 * inv_grid;
            rem /= grid as u128;
        }
        let base: Vec<f64> = rows
            .iter()
            .map(|r| r.row.iter().zip(&x).map(|(c, xk)| c * xk).sum())
            .collect();
        for ri in 0..res_total {
            let mut rem = ri;
            let mut acc = Complex64::new(0.0, 0.0);
            for (pos, r) in rows.iter().enumerate().rev() {
                let res = (rem % r.denominator as u128) as f64;
                rem /= r.denominator as u128;
                acc += r.amp
                    * Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * (base[pos] + res * r.res_unit),
                    );
            }
            // Triangle inequality: the cloud stays inside the closed disk of
            // radius Σ|a_j|e^{λ_jσ}. True closedness of the limiting set is a
            // theorem about the torus image, not a runtime property.
            assert!(
                acc.norm() <= bound + 1e-9 * (1.0 + bound),
                "torus point {acc} escapes the amplitude bound {bound}"
            );
            points.push(acc);
        }
    }
    points
}

fn amplitude_bound(rows: &[SampledRow]) -> f64 {
    rows.iter().map(|r| r.amp.norm()).sum()
}

/// Samples the auxiliary function over the uniform torus grid {i/n}^m,
/// crossed with every residue tuple (`All`) or zero residues (`Zero`).
/// Rows with zero coefficients contribute nothing and are skipped.
pub fn sample_torus(
    f: &ExponentialSum,
    sigma0: f64,
    grid_per_dim: usize,
    residue_mode: ResidueMode,
) -> Result<ValueCloud> {
    f.check_sigma(sigma0)?;
    if grid_per_dim < 2 {
        return Err(Error::BadDiscretization(format!(
            "torus grid must have at least 2 points per dimension, got {grid_per_dim}"
        )));
    }
    let basis = f.exponents().natural_basis();
    let rows = sampled_rows(
        f,
        sigma0,
        &basis.coord_matrix,
        residue_mode == ResidueMode::Zero,
    )?;
    let m = basis.basis_size();
    let requested = torus_count(m, grid_per_dim, &rows).unwrap_or(u128::MAX);
    if requested > TORUS_BUDGET {
        return Err(Error::BudgetExceeded {
            requested,
            budget: TORUS_BUDGET,
        });
    }
    let bound = amplitude_bound(&rows);
    Ok(ValueCloud {
        points: torus_points(&rows, m, grid_per_dim, bound),
        source: CloudSource::Torus {
            sigma0,
            grid_per_dim,
            residue_mode,
        },
        sum_id: sum_label(f),
    })
}

/// Largest distance from a point of `a` to the set `b` (directed Hausdorff).
pub fn directed_hausdorff(a: &ValueCloud, b: &ValueCloud) -> Result<f64> {
    if a.points.is_empty() || b.points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    Ok(directed_points(&a.points, &b.points))
}

/// Symmetric Hausdorff distance: max of the two directed distances.
pub fn hausdorff(a: &ValueCloud, b: &ValueCloud) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

fn brute_directed(a: &[ComplexPoint], b: &[ComplexPoint]) -> f64 {
    a.iter()
        .map(|p| {
            b.iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Directed Hausdorff via a uniform bucket grid over `b`, with outward ring
/// search per query point. Exact (not approximate): the ring scan stops only
/// once no unscanned cell can beat the best distance found. Buckets live in
/// a flat counting-sort layout so million-point clouds stay cheap.
fn directed_points(a: &[ComplexPoint], b: &[ComplexPoint]) -> f64 {
    if b.len() <= 64 {
        return brute_directed(a, b);
    }
    let (mut min_x, mut max_x, mut min_y, mut max_y) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for q in b {
        min_x = min_x.min(q.re);
        max_x = max_x.max(q.re);
        min_y = min_y.min(q.im);
        max_y = max_y.max(q.im);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    if span <= 0.0 {
        // all of b is a single point
        let q = b[0];
        return a.iter().map(|p| (p - q).norm()).fold(0.0, f64::max);
    }
    let cell = span / (b.len() as f64).sqrt();
    let nx = ((max_x - min_x) / cell).floor() as i64 + 1;
    let ny = ((max_y - min_y) / cell).floor() as i64 + 1;
    let index =
        |v: f64, lo: f64, n: i64| -> i64 { (((v - lo) / cell).floor() as i64).clamp(0, n - 1) };
    let cell_id = |q: &ComplexPoint| -> usize {
        (index(q.re, min_x, nx) * ny + index(q.im, min_y, ny)) as usize
    };
    let ncells = (nx * ny) as usize;
    let mut starts = vec![0u32; ncells + 1];
    for q in b {
        starts[cell_id(q) + 1] += 1;
    }
    for i in 0..ncells {
        starts[i + 1] += starts[i];
    }
    let mut sorted = vec![ComplexPoint::new(0.0, 0.0); b.len()];
    let mut cursor = starts.clone();
    for q in b {
        let id = cell_id(q);
        sorted[cursor[id] as usize] = *q;
        cursor[id] += 1;
    }

    let mut worst = 0.0f64;
    for p in a {
        let (gx, gy) = (index(p.re, min_x, nx), index(p.im, min_y, ny));
        let mut best = f64::INFINITY;
        let max_ring = nx.max(ny);
        for k in 0..=max_ring {
            let mut scan = |cx: i64, cy: i64| {
                if cx < 0 || cy < 0 || cx >= nx || cy >= ny {
                    return;
                }
                let id = (cx * ny + cy) as usize;
                for q in &sorted[starts[id] as usize..starts[id + 1] as usize] {
                    best = best.min((p - q).norm());
                }
            };
            if k == 0 {
                scan(gx, gy);
            } else {
                for d in -k..=k {
                    scan(gx + d, gy - k);
                    scan(gx + d, gy + k);
                }
                for d in (-k + 1)..k {
                    scan(gx - k, gy + d);
                    scan(gx + k, gy + d);
                }
            }
            // Any cell not yet scanned lies at Chebyshev ring ≥ k+1, hence at
            // distance ≥ k·cell from p (p sits in or beyond its clamped cell).
            if best <= k as f64 * cell {
                break;
            }
        }
        worst = worst.max(best);
    }
    worst
}

/// Deviation report for the member identity: for each (σ, t) sample, the
/// generated member's value must equal the auxiliary function of the
/// original sum at the certificate's torus point translated by t.
#[derive(Debug, Clone, PartialEq)]
pub struct MemberDeviationReport {
    pub max_deviation: f64,
    pub samples: usize,
    pub pass: bool,
}

/// Checks `evaluate(f2, σ, t) = eval_aux(f1, σ, x0 + t·g/2π, residues)` over
/// the given (σ, t) samples against the certificate of an equivalence
/// verdict. Passes when the maximum deviation stays below 1e-9.
pub fn verify_prop3(
    f1: &ExponentialSum,
    f2: &ExponentialSum,
    verdict: &EquivVerdict,
    sigma_t_samples: &[(f64, f64)],
) -> Result<MemberDeviationReport> {
    let cert = match (&verdict.equivalent, &verdict.certificate) {
        (true, Some(c)) => c,
        _ => return Err(Error::NoCertificate),
    };
    let basis = f1.exponents().natural_basis();
    let g = basis.basis_values_f64(f1.exponents());
    let x0 = cert.x0_turns.to_f64();
    if x0.len() != g.len() {
        return Err(Error::DimensionMismatch(format!(
            "certificate has {} torus coordinates for a basis of size {}",
            x0.len(),
            g.len()
        )));
    }
    let mut max_dev = 0.0f64;
    for &(sigma, t) in sigma_t_samples {
        let lhs = evaluate(f2, sigma, t)?;
        let x: Vec<f64> = x0
            .iter()
            .zip(&g)
            .map(|(x0k, gk)| x0k + t * gk / std::f64::consts::TAU)
            .collect();
        let rhs = eval_aux(f1, sigma, &x, &cert.residues)?;
        max_dev = max_dev.max((lhs - rhs).norm());
    }
    Ok(MemberDeviationReport {
        max_deviation: max_dev,
        samples: sigma_t_samples.len(),
        pass: max_dev < 1e-9,
    })
}

/// Report for basis independence of the torus cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisAgreementReport {
    pub distance: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Grid-resolution tolerance: 3·(2π·Σ_j |a_j| e^{λ_j σ₀}·w_j)/grid, where
/// w_j is the larger 1-norm of row j's coordinates over the two bases. Pass
/// the same rows twice for a single-basis cloud comparison.
pub fn grid_tolerance(
    f: &ExponentialSum,
    sigma0: f64,
    rows_a: &[Vec<BigRational>],
    rows_b: &[Vec<BigRational>],
    grid: usize,
) -> f64 {
    let mut lipschitz = 0.0f64;
    for (j, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let norm1 = |row: &[BigRational]| -> f64 { row.iter().map(|r| rat_to_f64(r).abs()).sum() };
        let w = norm1(&rows_a[j]).max(norm1(&rows_b[j]));
        lipschitz += c.modulus_f64() * (f.exponents().freqs()[j].value() * sigma0).exp() * w;
    }
    3.0 * std::f64::consts::TAU * lipschitz / grid as f64
}

/// Samples the torus cloud in natural coordinates and in the coordinates of
/// `other_basis`, and compares them. Each sampling uses its own rows' residue
/// denominators (the per-row integer freedom lives in the sampling basis), so
/// the two clouds approximate the same set; the tolerance reflects the grid
/// resolution and the coordinate magnitudes of both bases.
pub fn verify_lemma1(
    f: &ExponentialSum,
    other_basis: &[Frequency],
    sigma0: f64,
    grid: usize,
) -> Result<BasisAgreementReport> {
    let natural = sample_torus(f, sigma0, grid, ResidueMode::All)?;

    let basis = f.exponents().natural_basis();
    let cob = change_of_basis(&basis, other_basis)?;
    let other_rows = cob.convert_matrix(&basis.coord_matrix);
    let rows = sampled_rows(f, sigma0, &other_rows, false)?;
    let m = basis.basis_size();
    let requested = torus_count(m, grid, &rows).unwrap_or(u128::MAX);
    if requested > TORUS_BUDGET {
        return Err(Error::BudgetExceeded {
            requested,
            budget: TORUS_BUDGET,
        });
    }
    let other_points = torus_points(&rows, m, grid, amplitude_bound(&rows));
    let other = ValueCloud {
        points: other_points,
        source: CloudSource::Torus {
            sigma0,
            grid_per_dim: grid,
            residue_mode: ResidueMode::All,
        },
        sum_id: sum_label(f),
    };

    let distance = hausdorff(&natural, &other)?;
    let tolerance = grid_tolerance(f, sigma0, &basis.coord_matrix, &other_rows, grid);
    Ok(BasisAgreementReport {
        distance,
        tolerance,
        pass: distance < tolerance,
    })
}

/// Report for line-cloud agreement of equivalent sums.
#[derive(Debug, Clone, PartialEq)]
pub struct CloudAgreementReport {
    /// Directed distance from f1's cloud to f2's.
    pub forward: f64,
    /// Directed distance from f2's cloud to f1's.
    pub backward: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub sigma_points: usize,
    pub points_per_cloud: usize,
}

/// Compares the union (over an interior σ-grid) of line clouds of two
/// equivalent sums.
///
/// This is a sampled, one-sided-converging check: each finite line cloud
/// only approximates the limiting value set from inside, so the directed
/// distances shrink as `t_max` grows and the verdict is meaningful only at
/// the reported resolution. Inequivalent inputs are refused — use the clouds
/// directly to explore how inequivalent sums differ.
pub fn verify_theorem1(
    f1: &ExponentialSum,
    f2: &ExponentialSum,
    sigma_lo: f64,
    sigma_hi: f64,
    sigma_steps: usize,
    t_max: f64,
    step: f64,
    tol: f64,
) -> Result<CloudAgreementReport> {
    if !(sigma_lo < sigma_hi) || !sigma_lo.is_finite() || !sigma_hi.is_finite() {
        return Err(Error::InvalidStrip(format!(
            "sigma interval ({sigma_lo}, {sigma_hi}) must be finite and increasing"
        )));
    }
    if sigma_steps == 0 {
        return Err(Error::BadDiscretization(
            "sigma_steps must be at least 1".into(),
        ));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTolerance);
    }
    let decide_tol = if f1.is_exact_mode() && f2.is_exact_mode() {
        0.0
    } else {
        1e-9
    };
    let verdict = decide_equiv(f1, f2, decide_tol)?;
    if !verdict.equivalent {
        return Err(Error::NotEquivalent);
    }

    // Interior σ-points only: the comparison region is an open interval.
    let sigmas: Vec<f64> = (0..sigma_steps)
        .map(|i| sigma_lo + (sigma_hi - sigma_lo) * (i + 1) as f64 / (sigma_steps + 1) as f64)
        .collect();
    let union_cloud = |f: &ExponentialSum| -> Result<Vec<ComplexPoint>> {
        let mut pts = Vec::new();
        for &sigma in &sigmas {
            pts.extend(sample_line(f, sigma, t_max, step)?.points);
        }
        Ok(pts)
    };
    let c1 = union_cloud(f1)?;
    let c2 = union_cloud(f2)?;
    if c1.is_empty() || c2.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let forward = directed_points(&c1, &c2);
    let backward = directed_points(&c2, &c1);
    Ok(CloudAgreementReport {
        forward,
        backward,
        tolerance: tol,
        pass: forward < tol && backward < tol,
        sigma_points: sigma_steps,
        points_per_cloud: c1.len(),
    })
}
