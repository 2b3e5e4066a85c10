//! Feasibility of phase-congruence systems A·y ≡ θ (mod μ rowwise), with
//! verifiable certificates both ways.
//!
//! All angles are in turns (units of 2π), so exact mode is pure rational
//! arithmetic. A system is feasible iff there are y ∈ R^m and k ∈ Z^N with
//! A·y + diag(μ)·k = θ. Since y ranges over all reals, only the left kernel
//! of A constrains k: with U an integer basis of { u : uᵀA = 0 },
//! feasibility ⟺ U·θ lies in the lattice spanned by the columns of
//! U·diag(μ), which Hermite normal form decides exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    column_hnf, hnf_dual_row, lattice_coordinates, left_kernel, solve_rational, ColumnHnf,
    LatticeMembership,
};
use crate::rational::{dist_to_multiples, lcm_denominators, rat_gcd, rat_to_f64};

/// Vector of angles in turns: exact rationals on the decision path, floats
/// when phases came from numeric complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseVector {
    Exact(Vec<BigRational>),
    Numeric(Vec<f64>),
}

impl PhaseVector {
    pub fn len(&self) -> usize {
        match self {
            PhaseVector::Exact(v) => v.len(),
            PhaseVector::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PhaseVector::Exact(_))
    }

    /// Float view, rounding exact entries.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            PhaseVector::Exact(v) => v.iter().map(rat_to_f64).collect(),
            PhaseVector::Numeric(v) => v.clone(),
        }
    }
}

/// One congruence per row: <rows_j, y> ≡ theta_j (mod moduli_j).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSystem {
    rows: Vec<Vec<BigRational>>,
    cols: usize,
    theta: PhaseVector,
    moduli: Vec<BigRational>,
}

impl PhaseSystem {
    pub fn new(
        rows: Vec<Vec<BigRational>>,
        cols: usize,
        theta: PhaseVector,
        moduli: Vec<BigRational>,
    ) -> Result<Self> {
        let n = rows.len();
        if theta.len() != n || moduli.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} rows with {} phases and {} moduli",
                theta.len(),
                moduli.len()
            )));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        if moduli.iter().any(|m| !m.is_positive()) {
            return Err(Error::DimensionMismatch(
                "moduli must be strictly positive".into(),
            ));
        }
        Ok(Self {
            rows,
            cols,
            theta,
            moduli,
        })
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn theta(&self) -> &PhaseVector {
        &self.theta
    }

    pub fn moduli(&self) -> &[BigRational] {
        &self.moduli
    }
}

/// Verdict with a certificate: either (y, k) solving A·y + diag(μ)·k = θ, or
/// an integer row u with uᵀA = 0 whose pairing uᵀθ stays away from the
/// reachable lattice gcd_j(u_j·μ_j)·Z.
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible { y: PhaseVector, k: Vec<BigInt> },
    Infeasible { witness: Vec<BigInt> },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Generator of the subgroup { <r, n> mod 1 : n ∈ Z^m } of Q/Z: 1/lcm of the
/// coordinate denominators, hence 1 for integral (and zero) rows.
pub fn row_modulus(r: &[BigRational]) -> BigRational {
    BigRational::new(BigInt::one(), lcm_denominators(r))
}

fn int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Smallest integer row parallel to a rational row, sign-normalized so the
/// first nonzero entry is positive.
fn primitive_witness(alpha: &[BigRational]) -> Vec<BigInt> {
    let l = lcm_denominators(alpha);
    let lr = BigRational::from_integer(l);
    let mut v: Vec<BigInt> = alpha.iter().map(|a| (a * &lr).to_integer()).collect();
    let g = v
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    v
}

fn zero_phase_vector(exact: bool, len: usize) -> PhaseVector {
    if exact {
        PhaseVector::Exact(vec![BigRational::zero(); len])
    } else {
        PhaseVector::Numeric(vec![0.0; len])
    }
}

/// Float Gaussian elimination with partial pivoting; free variables pinned
/// to zero. Best-effort: callers only use it on systems already known to be
/// consistent within tolerance.
fn solve_f64(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.to_vec();
            r.push(*rhs);
            r
        })
        .collect();
    let scale = aug
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let eps = 1e-12 * (1.0 + scale);
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for col in 0..m {
        if r == n {
            break;
        }
        let p = (r..n)
            .max_by(|&i, &j| aug[i][col].abs().total_cmp(&aug[j][col].abs()))
            .unwrap();
        if aug[p][col].abs() <= eps {
            continue;
        }
        aug.swap(r, p);
        let piv = aug[r][col];
        for j in col..=m {
            aug[r][j] /= piv;
        }
        for i in 0..n {
            if i != r && aug[i][col] != 0.0 {
                let f = aug[i][col];
                for j in col..=m {
                    aug[i][j] -= f * aug[r][j];
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let mut x = vec![0.0; m];
    for (row, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[row][m];
    }
    x
}

pub fn solve_phase_system(sys: &PhaseSystem, tol: f64) -> Result<Feasibility> {
    let exact_mode = sys.theta.is_exact();
    if exact_mode && tol != 0.0 {
        return Err(Error::ToleranceInExactMode);
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidTolerance);
    }

    let n = sys.rows.len();
    if n == 0 {
        return Ok(Feasibility::Feasible {
            y: zero_phase_vector(exact_mode, sys.cols),
            k: vec![],
        });
    }

    let u = left_kernel(&sys.rows);
    let p = u.len();
    if p == 0 {
        // rows are Q-independent: every right-hand side is attainable
        let k = vec![BigInt::zero(); n];
        let y = match &sys.theta {
            PhaseVector::Exact(th) => PhaseVector::Exact(
                solve_rational(&sys.rows, th).expect("full-row-rank system is consistent"),
            ),
            PhaseVector::Numeric(th) => {
                let a: Vec<Vec<f64>> = sys
                    .rows
                    .iter()
                    .map(|r| r.iter().map(rat_to_f64).collect())
                    .collect();
                PhaseVector::Numeric(solve_f64(&a, th))
            }
        };
        return Ok(Feasibility::Feasible { y, k });
    }

    // B' = U·diag(μ), scaled integral as Bint = M·B'
    let bprime: Vec<Vec<BigRational>> = u
        .iter()
        .map(|urow| {
            urow.iter()
                .zip(&sys.moduli)
                .map(|(uij, mu)| int(uij) * mu)
                .collect()
        })
        .collect();
    let mut scale = BigInt::one();
    for row in &bprime {
        scale = scale.lcm(&lcm_denominators(row));
    }

    match &sys.theta {
        PhaseVector::Exact(th) => {
            let t: Vec<BigRational> = u
                .iter()
                .map(|urow| {
                    urow.iter()
                        .zip(th)
                        .fold(BigRational::zero(), |acc, (uij, thj)| acc + int(uij) * thj)
                })
                .collect();
            scale = scale.lcm(&lcm_denominators(&t));
            let sr = BigRational::from_integer(scale);
            let bint: Vec<Vec<BigInt>> = bprime
                .iter()
                .map(|row| row.iter().map(|x| (x * &sr).to_integer()).collect())
                .collect();
            let w: Vec<BigInt> = t.iter().map(|x| (x * &sr).to_integer()).collect();
            match lattice_coordinates(&bint, &w) {
                LatticeMembership::Member { coords: k } => {
                    let rhs: Vec<BigRational> = th
                        .iter()
                        .zip(&k)
                        .zip(&sys.moduli)
                        .map(|((thj, kj), mu)| thj - int(kj) * mu)
                        .collect();
                    let y = solve_rational(&sys.rows, &rhs)
                        .expect("kernel constraints satisfied, system consistent");
                    Ok(Feasibility::Feasible {
                        y: PhaseVector::Exact(y),
                        k,
                    })
                }
                LatticeMembership::NonMember { dual } => {
                    // α = M·(dual·U) satisfies α·diag(μ) ∈ Z^N, α·θ ∉ Z;
                    // its primitive integer form is the witness.
                    let alpha: Vec<BigRational> = (0..n)
                        .map(|j| {
                            dual.iter()
                                .zip(&u)
                                .fold(BigRational::zero(), |acc, (ci, urow)| {
                                    acc + ci * int(&urow[j])
                                })
                                * &sr
                        })
                        .collect();
                    Ok(Feasibility::Infeasible {
                        witness: primitive_witness(&alpha),
                    })
                }
            }
        }
        PhaseVector::Numeric(th) => {
            let sr = BigRational::from_integer(scale.clone());
            let bint: Vec<Vec<BigInt>> = bprime
                .iter()
                .map(|row| row.iter().map(|x| (x * &sr).to_integer()).collect())
                .collect();
            let scale_f = scale.to_f64().unwrap_or(f64::INFINITY);
            let w: Vec<f64> = u
                .iter()
                .map(|urow| {
                    urow.iter()
                        .zip(th)
                        .map(|(uij, thj)| uij.to_f64().unwrap() * thj)
                        .sum::<f64>()
                        * scale_f
                })
                .collect();

            let ColumnHnf {
                h,
                transform,
                pivot_rows,
            } = column_hnf(&bint);
            let q = pivot_rows.len(); // = p: U·diag(μ) has full row rank
            let hf: Vec<Vec<f64>> = h
                .iter()
                .map(|row| row.iter().map(|x| x.to_f64().unwrap()).collect())
                .collect();
            let mut z = vec![0.0f64; q];
            for tcol in 0..q {
                let mut acc = w[pivot_rows[tcol]];
                for l in 0..tcol {
                    acc -= hf[pivot_rows[tcol]][l] * z[l];
                }
                z[tcol] = acc / hf[pivot_rows[tcol]][tcol];
            }
            let rounded: Vec<i64> = z.iter().map(|zi| zi.round() as i64).collect();

            // The HNF basis is triangular but not reduced, so plain rounding
            // can miss the closest vector; search a small offset box.
            let dist_for = |cand: &[i64]| -> f64 {
                (0..p)
                    .map(|i| {
                        let approx: f64 = (0..q).map(|l| hf[i][l] * cand[l] as f64).sum();
                        (w[i] - approx).abs()
                    })
                    .fold(0.0, f64::max)
                    / scale_f
            };
            let mut best = rounded.clone();
            let mut best_dist = dist_for(&rounded);
            if q <= 8 {
                let mut cand = rounded.clone();
                // depth-first over {-1,0,1}^q offsets
                fn explore(
                    depth: usize,
                    q: usize,
                    rounded: &[i64],
                    cand: &mut Vec<i64>,
                    best: &mut Vec<i64>,
                    best_dist: &mut f64,
                    dist_for: &dyn Fn(&[i64]) -> f64,
                ) {
                    if depth == q {
                        let d = dist_for(cand);
                        if d < *best_dist {
                            *best_dist = d;
                            best.clone_from(cand);
                        }
                        return;
                    }
                    for off in [-1i64, 0, 1] {
                        cand[depth] = rounded[depth] + off;
                        explore(depth + 1, q, rounded, cand, best, best_dist, dist_for);
                    }
                }
                explore(0, q, &rounded, &mut cand, &mut best, &mut best_dist, &dist_for);
            }

            if best_dist <= tol {
                let k: Vec<BigInt> = (0..bint[0].len())
                    .map(|i| {
                        (0..q)
                            .map(|tcol| &transform[i][tcol] * BigInt::from(best[tcol]))
                            .sum()
                    })
                    .collect();
                let a: Vec<Vec<f64>> = sys
                    .rows
                    .iter()
                    .map(|r| r.iter().map(rat_to_f64).collect())
                    .collect();
                let rhs: Vec<f64> = th
                    .iter()
                    .zip(&k)
                    .zip(&sys.moduli)
                    .map(|((thj, kj), mu)| thj - kj.to_f64().unwrap() * rat_to_f64(mu))
                    .collect();
                return Ok(Feasibility::Feasible {
                    y: PhaseVector::Numeric(solve_f64(&a, &rhs)),
                    k,
                });
            }

            // Infeasible: take the dual row of the HNF with the largest
            // violation of uᵀθ against its reachable lattice.
            let mut best_witness: Option<(f64, Vec<BigInt>)> = None;
            for tcol in 0..q {
                let c = hnf_dual_row(&h, &pivot_rows, tcol);
                let alpha: Vec<BigRational> = (0..n)
                    .map(|j| {
                        c.iter()
                            .zip(&u)
                            .fold(BigRational::zero(), |acc, (ci, urow)| {
                                acc + ci * int(&urow[j])
                            })
                            * &sr
                    })
                    .collect();
                let cand = primitive_witness(&alpha);
                let g = rat_gcd(
                    &cand
                        .iter()
                        .zip(&sys.moduli)
                        .map(|(uj, mu)| int(uj) * mu)
                        .collect::<Vec<_>>(),
                );
                let pairing: f64 = cand
                    .iter()
                    .zip(th)
                    .map(|(uj, thj)| uj.to_f64().unwrap() * thj)
                    .sum();
                let d = dist_to_multiples(pairing, &g);
                if best_witness.as_ref().map_or(true, |(bd, _)| d > *bd) {
                    best_witness = Some((d, cand));
                }
            }
            let (_, witness) = best_witness.expect("kernel is nonempty");
            Ok(Feasibility::Infeasible { witness })
        }
    }
}

/// Re-verifies a certificate by direct substitution: exact equality in exact
/// mode, residual/distance against `tol` in numeric mode.
pub fn verify_feasibility(sys: &PhaseSystem, feas: &Feasibility, tol: f64) -> bool {
    let n = sys.rows.len();
    match feas {
        Feasibility::Feasible { y, k } => {
            if k.len() != n {
                return false;
            }
            match (&sys.theta, y) {
                (PhaseVector::Exact(th), PhaseVector::Exact(yv)) => {
                    if yv.len() != sys.cols {
                        return false;
                    }
                    (0..n).all(|j| {
                        let dot = sys.rows[j]
                            .iter()
                            .zip(yv)
                            .fold(BigRational::zero(), |acc, (r, yi)| acc + r * yi);
                        dot + int(&k[j]) * &sys.moduli[j] == th[j]
                    })
                }
                (PhaseVector::Numeric(th), PhaseVector::Numeric(yv)) => {
                    if yv.len() != sys.cols {
                        return false;
                    }
                    (0..n).all(|j| {
                        let dot: f64 = sys.rows[j]
                            .iter()
                            .zip(yv)
                            .map(|(r, yi)| rat_to_f64(r) * yi)
                            .sum();
                        let residual =
                            dot + k[j].to_f64().unwrap() * rat_to_f64(&sys.moduli[j]) - th[j];
                        residual.abs() <= tol
                    })
                }
                _ => false,
            }
        }
        Feasibility::Infeasible { witness } => {
            if witness.len() != n || witness.iter().all(|x| x.is_zero()) {
                return false;
            }
            // uᵀA = 0 is exact in both modes
            for col in 0..sys.cols {
                let dot = witness
                    .iter()
                    .zip(&sys.rows)
                    .fold(BigRational::zero(), |acc, (uj, row)| {
                        acc + int(uj) * &row[col]
                    });
                if !dot.is_zero() {
                    return false;
                }
            }
            let g = rat_gcd(
                &witness
                    .iter()
                    .zip(&sys.moduli)
                    .map(|(uj, mu)| int(uj) * mu)
                    .collect::<Vec<_>>(),
            );
            match &sys.theta {
                PhaseVector::Exact(th) => {
                    let pairing = witness
                        .iter()
                        .zip(th)
                        .fold(BigRational::zero(), |acc, (uj, thj)| acc + int(uj) * thj);
                    if g.is_zero() {
                        !pairing.is_zero()
                    } else {
                        !(pairing / g).is_integer()
                    }
                }
                PhaseVector::Numeric(th) => {
                    let pairing: f64 = witness
                        .iter()
                        .zip(th)
                        .map(|(uj, thj)| uj.to_f64().unwrap() * thj)
                        .sum();
                    dist_to_multiples(pairing, &g) > tol
                }
            }
        }
    }
}
