//! Equivalence decisions on exponential sums, with certificates that
//! re-verify by substitution, plus generation of equivalence-class members.
//!
//! Two sums over the same ordered exponent set are compared coefficient by
//! coefficient: zero patterns must match, moduli must match, and the phase
//! differences θ_j (in turns) must be reachable. Each active row j of the
//! natural-basis coordinate matrix contributes the congruence
//! `<r_j, x> + k_j·μ_j ≡ θ_j (mod 1)` over a torus point x and per-row
//! residues k_j, where μ_j = 1/d_j is the row modulus.
//!
//! [`decide_equiv`] grants every row its own residue k_j; this is the
//! relation the class generator [`generate_member`] and the value-set
//! samplers are built on. [`decide_equiv_prop1_all_n`] instead demands a
//! single torus shift with no residue freedom, once per truncation length.
//! The two agree on integral bases, and whenever the residue relation is
//! infeasible, but the residue relation is strictly coarser on rationally
//! dependent rows with fractional coordinates; the test
//! `per_row_residues_coarser_than_single_shift` pins a three-row instance
//! where they differ.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::congruence::{
    solve_phase_system, verify_feasibility, Feasibility, PhaseSystem, PhaseVector,
};
use crate::error::{Error, Result};
use crate::exponents::BasisData;
use crate::rational::{dist_to_multiples, mod1, rat_to_f64};
use crate::sums::{Coefficient, ExponentialSum};

/// Feasibility certificate: a point on the natural-basis torus (in turns)
/// plus one residue per input row with `0 ≤ residues[j] < d_j`. Rows with a
/// zero coefficient carry residue 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub x0_turns: PhaseVector,
    pub residues: Vec<BigInt>,
}

/// Outcome of an equivalence decision.
///
/// When the verdict rests on the phase system, exactly one of `certificate`
/// (feasible) or `witness` (infeasible; an integer kernel row padded with
/// zeros at inactive rows) is populated. Mismatched zero patterns or moduli
/// decide negatively with neither.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub certificate: Option<Certificate>,
    pub witness: Option<Vec<BigInt>>,
}

impl EquivVerdict {
    fn no(witness: Option<Vec<BigInt>>) -> Self {
        EquivVerdict {
            equivalent: false,
            certificate: None,
            witness,
        }
    }
}

/// Shared pre-checks: either an early negative verdict (zero pattern or
/// modulus mismatch) or the data for the phase-difference system.
enum Prepared {
    Decided(EquivVerdict),
    System {
        basis: BasisData,
        /// Indices of rows with nonzero coefficients, ascending.
        active: Vec<usize>,
        /// Phase differences of the active rows, in turns, reduced to [0,1).
        theta: PhaseVector,
    },
}

fn exact_parts(c: &Coefficient) -> (&BigRational, &BigRational) {
    match c {
        Coefficient::ExactPolar {
            modulus,
            phase_turns,
        } => (modulus, phase_turns),
        Coefficient::NumericComplex { .. } => unreachable!("caller checked exact mode"),
    }
}

fn prepare(f1: &ExponentialSum, f2: &ExponentialSum, tol: f64) -> Result<Prepared> {
    if f1.exponents() != f2.exponents() {
        return Err(Error::ExponentSetMismatch);
    }
    if f1.is_exact_mode() != f2.is_exact_mode() {
        return Err(Error::MixedCoefficientModes);
    }
    let exact = f1.is_exact_mode();
    if exact && tol != 0.0 {
        return Err(Error::ToleranceInExactMode);
    }
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTolerance);
    }

    let a = f1.coeffs();
    let b = f2.coeffs();
    if (0..f1.len()).any(|j| a[j].is_zero() != b[j].is_zero()) {
        return Ok(Prepared::Decided(EquivVerdict::no(None)));
    }
    let active: Vec<usize> = (0..f1.len()).filter(|&j| !a[j].is_zero()).collect();

    let moduli_match = active.iter().all(|&j| {
        if exact {
            exact_parts(&a[j]).0 == exact_parts(&b[j]).0
        } else {
            let (ma, mb) = (a[j].modulus_f64(), b[j].modulus_f64());
            (ma - mb).abs() <= tol * ma.max(mb)
        }
    });
    if !moduli_match {
        return Ok(Prepared::Decided(EquivVerdict::no(None)));
    }

    let theta = if exact {
        PhaseVector::Exact(
            active
                .iter()
                .map(|&j| mod1(&(exact_parts(&b[j]).1 - exact_parts(&a[j]).1)))
                .collect(),
        )
    } else {
        PhaseVector::Numeric(
            active
                .iter()
                .map(|&j| (b[j].phase_turns_f64() - a[j].phase_turns_f64()).rem_euclid(1.0))
                .collect(),
        )
    };
    Ok(Prepared::System {
        basis: f1.exponents().natural_basis(),
        active,
        theta,
    })
}

/// Row modulus μ_j = 1/d_j from the precomputed row denominator.
fn modulus_of(basis: &BasisData, j: usize) -> BigRational {
    BigRational::new(BigInt::one(), basis.row_denominators[j].clone())
}

/// The per-row-residue phase system over the active rows.
fn residue_system(basis: &BasisData, active: &[usize], theta: PhaseVector) -> PhaseSystem {
    let rows: Vec<Vec<BigRational>> = active
        .iter()
        .map(|&j| basis.coord_matrix[j].clone())
        .collect();
    let moduli: Vec<BigRational> = active.iter().map(|&j| modulus_of(basis, j)).collect();
    PhaseSystem::new(rows, basis.basis_size(), theta, moduli)
        .expect("active-row system dimensions are consistent by construction")
}

/// Scatter per-active-row values into a full-length vector, zeros elsewhere.
fn pad_by_rows(active: &[usize], vals: Vec<BigInt>, total: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); total];
    for (v, &j) in vals.into_iter().zip(active) {
        out[j] = v;
    }
    out
}

/// Reduce a raw solution y to the fundamental torus cell and absorb the
/// spilled integer parts into per-row residues `0 ≤ k_j < d_j`.
///
/// Works for solutions of both the residue system (μ_j = 1/d_j) and the
/// single-shift system (μ_j = 1): in both cases θ_j − <r_j, mod1(y)> is an
/// integer multiple of 1/d_j, exactly in exact mode.
fn normalize_certificate(
    basis: &BasisData,
    active: &[usize],
    theta: &PhaseVector,
    y: &PhaseVector,
    total_rows: usize,
) -> Certificate {
    let mut residues = vec![BigInt::zero(); total_rows];
    let x0_turns = match (theta, y) {
        (PhaseVector::Exact(th), PhaseVector::Exact(yv)) => {
            let x0: Vec<BigRational> = yv.iter().map(mod1).collect();
            for (pos, &j) in active.iter().enumerate() {
                let d = &basis.row_denominators[j];
                let dot = basis.coord_matrix[j]
                    .iter()
                    .zip(&x0)
                    .fold(BigRational::zero(), |acc, (r, x)| acc + r * x);
                let scaled = (&th[pos] - dot) * BigRational::from_integer(d.clone());
                debug_assert!(scaled.is_integer(), "residue spill must be a multiple of 1/d");
                residues[j] = scaled.to_integer().mod_floor(d);
            }
            PhaseVector::Exact(x0)
        }
        (PhaseVector::Numeric(th), PhaseVector::Numeric(yv)) => {
            let x0: Vec<f64> = yv.iter().map(|v| v.rem_euclid(1.0)).collect();
            for (pos, &j) in active.iter().enumerate() {
                let d = &basis.row_denominators[j];
                let df = rat_to_f64(&BigRational::from_integer(d.clone()));
                let dot: f64 = basis.coord_matrix[j]
                    .iter()
                    .zip(&x0)
                    .map(|(r, x)| rat_to_f64(r) * x)
                    .sum();
                let q = BigInt::from(((th[pos] - dot) * df).round() as i64);
                residues[j] = q.mod_floor(d);
            }
            PhaseVector::Numeric(x0)
        }
        _ => unreachable!("solver preserves the phase-vector mode"),
    };
    Certificate { x0_turns, residues }
}

/// Decides equivalence with per-row residue freedom and returns a
/// certificate (torus point + residues) or an integer kernel witness.
///
/// `tol` must be 0 for exact-mode sums; numeric sums compare moduli within
/// relative `tol` and solve the phase system to absolute `tol`.
pub fn decide_equiv(f1: &ExponentialSum, f2: &ExponentialSum, tol: f64) -> Result<EquivVerdict> {
    let (basis, active, theta) = match prepare(f1, f2, tol)? {
        Prepared::Decided(v) => return Ok(v),
        Prepared::System {
            basis,
            active,
            theta,
        } => (basis, active, theta),
    };
    let sys = residue_system(&basis, &active, theta);
    match solve_phase_system(&sys, tol)? {
        Feasibility::Feasible { y, .. } => {
            let cert = normalize_certificate(&basis, &active, sys.theta(), &y, f1.len());
            Ok(EquivVerdict {
                equivalent: true,
                certificate: Some(cert),
                witness: None,
            })
        }
        Feasibility::Infeasible { witness } => {
            Ok(EquivVerdict::no(Some(pad_by_rows(&active, witness, f1.len()))))
        }
    }
}

/// Truncation oracle: equivalent iff for every prefix length n ≤ N the
/// single-shift system (μ_j = 1, no residues) over the active rows among the
/// first n is feasible.
///
/// Infeasible verdicts carry the kernel witness of the first failing
/// truncation, padded to full length. Positive verdicts carry a certificate
/// normalized exactly as in [`decide_equiv`] (reducing the shift to the
/// fundamental cell can spill nonzero residues on fractional rows).
pub fn decide_equiv_prop1_all_n(
    f1: &ExponentialSum,
    f2: &ExponentialSum,
    tol: f64,
) -> Result<EquivVerdict> {
    let (basis, active, theta) = match prepare(f1, f2, tol)? {
        Prepared::Decided(v) => return Ok(v),
        Prepared::System {
            basis,
            active,
            theta,
        } => (basis, active, theta),
    };
    let m = basis.basis_size();
    let exact = theta.is_exact();
    let mut full_y = if exact {
        PhaseVector::Exact(vec![BigRational::zero(); m])
    } else {
        PhaseVector::Numeric(vec![0.0; m])
    };
    for n in 1..=f1.len() {
        let prefix: Vec<usize> = active.iter().copied().filter(|&j| j < n).collect();
        let rows: Vec<Vec<BigRational>> = prefix
            .iter()
            .map(|&j| basis.coord_matrix[j].clone())
            .collect();
        let moduli = vec![BigRational::one(); rows.len()];
        let theta_n = match &theta {
            PhaseVector::Exact(th) => PhaseVector::Exact(th[..prefix.len()].to_vec()),
            PhaseVector::Numeric(th) => PhaseVector::Numeric(th[..prefix.len()].to_vec()),
        };
        let sys = PhaseSystem::new(rows, m, theta_n, moduli)
            .expect("prefix system dimensions are consistent by construction");
        match solve_phase_system(&sys, tol)? {
            Feasibility::Feasible { y, .. } => full_y = y,
            Feasibility::Infeasible { witness } => {
                return Ok(EquivVerdict::no(Some(pad_by_rows(
                    &prefix,
                    witness,
                    f1.len(),
                ))));
            }
        }
    }
    let cert = normalize_certificate(&basis, &active, &theta, &full_y, f1.len());
    Ok(EquivVerdict {
        equivalent: true,
        certificate: Some(cert),
        witness: None,
    })
}

fn validate_residues(basis: &BasisData, residues: &[BigInt], total_rows: usize) -> Result<()> {
    if residues.len() != total_rows {
        return Err(Error::DimensionMismatch(format!(
            "{} residues for {total_rows} rows",
            residues.len()
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
    Ok(())
}

/// Builds the class member with coefficients
/// `b_j = a_j · e^{2πi(<r_j, x_turns> + residues_j/d_j)}`.
///
/// `x_turns` is a rational point over the natural basis, so exact-mode input
/// yields an exact-mode member. Numeric-mode input is rotated numerically.
pub fn generate_member(
    f: &ExponentialSum,
    x_turns: &[BigRational],
    residues: &[BigInt],
) -> Result<ExponentialSum> {
    let basis = f.exponents().natural_basis();
    if x_turns.len() != basis.basis_size() {
        return Err(Error::DimensionMismatch(format!(
            "{} torus coordinates for a basis of size {}",
            x_turns.len(),
            basis.basis_size()
        )));
    }
    validate_residues(&basis, residues, f.len())?;

    let mut coeffs = Vec::with_capacity(f.len());
    for (j, c) in f.coeffs().iter().enumerate() {
        let dot = basis.coord_matrix[j]
            .iter()
            .zip(x_turns)
            .fold(BigRational::zero(), |acc, (r, x)| acc + r * x);
        let shift = mod1(&(dot + BigRational::new(residues[j].clone(), basis.row_denominators[j].clone())));
        coeffs.push(match c {
            Coefficient::ExactPolar {
                modulus,
                phase_turns,
            } => Coefficient::exact_polar(modulus.clone(), phase_turns + &shift)?,
            Coefficient::NumericComplex { .. } => {
                let rotated = c.to_complex()
                    * Complex64::from_polar(1.0, std::f64::consts::TAU * rat_to_f64(&shift));
                Coefficient::numeric(rotated.re, rotated.im)?
            }
        });
    }
    ExponentialSum::new(f.exponents().clone(), coeffs, f.strip())
}

/// [`generate_member`] for a real torus point (e.g. the vertical-translation
/// point x_k = t₀·g_k/2π). The result is always numeric-mode, since an
/// irrational shift has no exact polar form.
pub fn generate_member_real(
    f: &ExponentialSum,
    x_turns: &[f64],
    residues: &[BigInt],
) -> Result<ExponentialSum> {
    let basis = f.exponents().natural_basis();
    if x_turns.len() != basis.basis_size() {
        return Err(Error::DimensionMismatch(format!(
            "{} torus coordinates for a basis of size {}",
            x_turns.len(),
            basis.basis_size()
        )));
    }
    validate_residues(&basis, residues, f.len())?;

    let mut coeffs = Vec::with_capacity(f.len());
    for (j, c) in f.coeffs().iter().enumerate() {
        let dot: f64 = basis.coord_matrix[j]
            .iter()
            .zip(x_turns)
            .map(|(r, x)| rat_to_f64(r) * x)
            .sum();
        let res = rat_to_f64(&BigRational::new(
            residues[j].clone(),
            basis.row_denominators[j].clone(),
        ));
        let rotated = c.to_complex() * Complex64::from_polar(1.0, std::f64::consts::TAU * (dot + res));
        coeffs.push(Coefficient::numeric(rotated.re, rotated.im)?);
    }
    ExponentialSum::new(f.exponents().clone(), coeffs, f.strip())
}

/// Re-verifies a verdict of [`decide_equiv`] by direct substitution.
///
/// Positive verdicts: the certificate must satisfy, for every active row,
/// `<r_j, x0> + residues_j/d_j ≡ θ_j (mod 1)` — exactly in exact mode,
/// within `tol` plus a 1e-12 roundoff floor in numeric mode — with residues
/// in range. Negative verdicts must either exhibit a mismatch in zero
/// pattern or moduli (no witness), or carry a kernel witness that re-checks
/// against the residue system. Verdicts of [`decide_equiv_prop1_all_n`] are
/// covered only on the positive side (its witnesses certify the stricter
/// single-shift relation, not the residue relation).
pub fn verify_verdict(
    f1: &ExponentialSum,
    f2: &ExponentialSum,
    verdict: &EquivVerdict,
    tol: f64,
) -> bool {
    let prepared = match prepare(f1, f2, tol) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let (basis, active, theta) = match prepared {
        Prepared::Decided(_) => {
            return !verdict.equivalent
                && verdict.certificate.is_none()
                && verdict.witness.is_none();
        }
        Prepared::System {
            basis,
            active,
            theta,
        } => (basis, active, theta),
    };

    if verdict.equivalent {
        let Some(cert) = &verdict.certificate else {
            return false;
        };
        if verdict.witness.is_some()
            || cert.x0_turns.len() != basis.basis_size()
            || cert.residues.len() != f1.len()
            || validate_residues(&basis, &cert.residues, f1.len()).is_err()
        {
            return false;
        }
        match (&theta, &cert.x0_turns) {
            (PhaseVector::Exact(th), PhaseVector::Exact(x0)) => {
                active.iter().enumerate().all(|(pos, &j)| {
                    let dot = basis.coord_matrix[j]
                        .iter()
                        .zip(x0)
                        .fold(BigRational::zero(), |acc, (r, x)| acc + r * x);
                    let lhs = dot
                        + BigRational::new(
                            cert.residues[j].clone(),
                            basis.row_denominators[j].clone(),
                        );
                    (lhs - &th[pos]).is_integer()
                })
            }
            (PhaseVector::Numeric(th), PhaseVector::Numeric(x0)) => {
                let one = BigRational::one();
                active.iter().enumerate().all(|(pos, &j)| {
                    let dot: f64 = basis.coord_matrix[j]
                        .iter()
                        .zip(x0)
                        .map(|(r, x)| rat_to_f64(r) * x)
                        .sum();
                    let res = rat_to_f64(&BigRational::new(
                        cert.residues[j].clone(),
                        basis.row_denominators[j].clone(),
                    ));
                    dist_to_multiples(dot + res - th[pos], &one) <= tol + 1e-12
                })
            }
            _ => false,
        }
    } else {
        let Some(w) = &verdict.witness else {
            return false;
        };
        if verdict.certificate.is_some()
            || w.len() != f1.len()
            || (0..f1.len()).any(|j| !active.contains(&j) && !w[j].is_zero())
        {
            return false;
        }
        let restricted: Vec<BigInt> = active.iter().map(|&j| w[j].clone()).collect();
        let sys = residue_system(&basis, &active, theta);
        verify_feasibility(
            &sys,
            &Feasibility::Infeasible {
                witness: restricted,
            },
            tol,
        )
    }
}
