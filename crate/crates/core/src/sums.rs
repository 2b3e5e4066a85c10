//! Finite exponential sums Σ a_j e^{λ_j s}, their evaluation on vertical
//! lines, and a numeric Bohr-mean oracle that recovers coefficients by
//! averaging f(σ+it)·e^{−iλt} over long t-ranges.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::rational::{mod1, rat_to_f64};

pub type ComplexPoint = Complex64;

const TAU: f64 = std::f64::consts::TAU;

/// One coefficient, either exact (modulus and phase in turns, both rational)
/// or numeric complex. A sum must use one mode throughout.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    ExactPolar {
        modulus: BigRational,
        phase_turns: BigRational,
    },
    NumericComplex {
        re: f64,
        im: f64,
    },
}

impl Coefficient {
    /// Normalizes the phase into [0,1) and pins the zero coefficient's phase
    /// to 0.
    pub fn exact_polar(modulus: BigRational, phase_turns: BigRational) -> Result<Self> {
        if modulus.is_negative() {
            return Err(Error::InvalidCoefficient(format!(
                "modulus {modulus} is negative"
            )));
        }
        let phase_turns = if modulus.is_zero() {
            BigRational::zero()
        } else {
            mod1(&phase_turns)
        };
        Ok(Coefficient::ExactPolar {
            modulus,
            phase_turns,
        })
    }

    pub fn numeric(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidCoefficient(format!(
                "non-finite complex value {re} + {im}i"
            )));
        }
        Ok(Coefficient::NumericComplex { re, im })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::ExactPolar { modulus, .. } => modulus.is_zero(),
            Coefficient::NumericComplex { re, im } => *re == 0.0 && *im == 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficient::ExactPolar { .. })
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coefficient::ExactPolar {
                modulus,
                phase_turns,
            } => {
                let (s, c) = (TAU * rat_to_f64(phase_turns)).sin_cos();
                rat_to_f64(modulus) * Complex64::new(c, s)
            }
            Coefficient::NumericComplex { re, im } => Complex64::new(*re, *im),
        }
    }

    pub fn modulus_f64(&self) -> f64 {
        match self {
            Coefficient::ExactPolar { modulus, .. } => rat_to_f64(modulus),
            Coefficient::NumericComplex { re, im } => re.hypot(*im),
        }
    }

    /// Phase in turns, reduced into [0,1); numeric phases come from the
    /// principal argument.
    pub fn phase_turns_f64(&self) -> f64 {
        match self {
            Coefficient::ExactPolar { phase_turns, .. } => rat_to_f64(phase_turns),
            Coefficient::NumericComplex { re, im } => {
                if *re == 0.0 && *im == 0.0 {
                    0.0
                } else {
                    (im.atan2(*re) / TAU).rem_euclid(1.0)
                }
            }
        }
    }
}

/// Vertical strip α < Re s < β with infinite bounds allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub alpha: f64,
    pub beta: f64,
}

impl Strip {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha.is_nan() || beta.is_nan() || !(alpha < beta) {
            return Err(Error::InvalidStrip(format!(
                "bounds must satisfy alpha < beta, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }
}

/// Finite exponential sum over a fixed ordered exponent set, with an
/// optional strip recording where the sum is meant to be studied (finite
/// sums are entire; the strip is enforced only at evaluation time).
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    exponents: ExponentSet,
    coeffs: Vec<Coefficient>,
    strip: Option<Strip>,
}

impl ExponentialSum {
    pub fn new(
        exponents: ExponentSet,
        coeffs: Vec<Coefficient>,
        strip: Option<Strip>,
    ) -> Result<Self> {
        if coeffs.len() != exponents.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} frequencies",
                coeffs.len(),
                exponents.len()
            )));
        }
        let exact = coeffs.iter().filter(|c| c.is_exact()).count();
        if exact != 0 && exact != coeffs.len() {
            return Err(Error::MixedCoefficientModes);
        }
        Ok(Self {
            exponents,
            coeffs,
            strip,
        })
    }

    /// The zero sum over the given exponents.
    pub fn zero(exponents: ExponentSet) -> Self {
        let n = exponents.len();
        Self {
            exponents,
            coeffs: vec![
                Coefficient::ExactPolar {
                    modulus: BigRational::zero(),
                    phase_turns: BigRational::zero(),
                };
                n
            ],
            strip: None,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one frequency by construction
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn strip(&self) -> Option<Strip> {
        self.strip
    }

    pub fn is_exact_mode(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_exact)
    }

    /// Same sum with every coefficient converted to numeric complex form.
    pub fn to_numeric(&self) -> Self {
        Self {
            exponents: self.exponents.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let z = c.to_complex();
                    Coefficient::NumericComplex { re: z.re, im: z.im }
                })
                .collect(),
            strip: self.strip,
        }
    }

    pub fn check_sigma(&self, sigma: f64) -> Result<()> {
        if let Some(Strip { alpha, beta }) = self.strip {
            if !(sigma > alpha && sigma < beta) {
                return Err(Error::OutsideStrip { sigma, alpha, beta });
            }
        }
        Ok(())
    }
}

pub fn evaluate(sum: &ExponentialSum, sigma: f64, t: f64) -> Result<ComplexPoint> {
    sum.check_sigma(sigma)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, f) in sum.coeffs().iter().zip(sum.exponents().freqs()) {
        if c.is_zero() {
            continue;
        }
        let lambda = f.value();
        let (s, co) = (lambda * t).sin_cos();
        acc += c.to_complex() * (lambda * sigma).exp() * Complex64::new(co, s);
    }
    Ok(acc)
}

/// Bohr-mean coefficient recovery: trapezoidal approximation of
/// (1/2T)·∫_{−T}^{T} f(σ+it)·e^{−iλt} dt · e^{−λσ}. Converges to a_j for
/// λ = λ_j and to 0 for λ outside the frequency set, at rate O(1/(T·gap)).
pub fn recover_coefficient(
    sum: &ExponentialSum,
    lambda: &crate::exponents::Frequency,
    sigma: f64,
    t_max: f64,
    step: f64,
) -> Result<ComplexPoint> {
    sum.check_sigma(sigma)?;
    if !(t_max > 0.0) || !(step > 0.0) {
        return Err(Error::BadDiscretization(format!(
            "need positive t_max and step, got t_max = {t_max}, step = {step}"
        )));
    }
    let max_freq = sum
        .exponents()
        .freqs()
        .iter()
        .map(|f| f.value().abs())
        .chain([lambda.value().abs()])
        .fold(0.0f64, f64::max);
    if max_freq > 0.0 && step >= 1.0 / max_freq {
        return Err(Error::BadDiscretization(format!(
            "step {step} must be below 1/max|lambda| = {}",
            1.0 / max_freq
        )));
    }

    // precompute per-term amplitude at sigma and frequency offsets, so the
    // integrand is Σ_j amp_j e^{i(λ_j − λ)t}
    let mut amps = Vec::new();
    let mut offsets = Vec::new();
    for (c, f) in sum.coeffs().iter().zip(sum.exponents().freqs()) {
        if c.is_zero() {
            continue;
        }
        amps.push(c.to_complex() * (f.value() * sigma).exp());
        offsets.push(f.value() - lambda.value());
    }

    // snap the step so the endpoints land exactly on ±t_max
    let n = ((2.0 * t_max / step).round() as usize).max(1);
    let h = 2.0 * t_max / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let t = -t_max + i as f64 * h;
        let mut val = Complex64::new(0.0, 0.0);
        for (amp, off) in amps.iter().zip(&offsets) {
            let (s, c) = (off * t).sin_cos();
            val += amp * Complex64::new(c, s);
        }
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        acc += w * val;
    }
    Ok(acc * h / (2.0 * t_max) * (-lambda.value() * sigma).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::{Frequency, GroundGeneratorSet};
    use crate::rational::rat;

    fn gens() -> GroundGeneratorSet {
        GroundGeneratorSet::new(&[("one", "1"), ("sqrt2", "1.41421356237309504880")]).unwrap()
    }

    fn two_term() -> ExponentialSum {
        // e^{s} + e^{sqrt2 s}
        let e = ExponentSet::new(
            gens(),
            vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]],
        )
        .unwrap();
        ExponentialSum::new(
            e,
            vec![
                Coefficient::exact_polar(rat(1, 1), rat(0, 1)).unwrap(),
                Coefficient::exact_polar(rat(1, 1), rat(0, 1)).unwrap(),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn coefficient_normalization() {
        let c = Coefficient::exact_polar(rat(2, 1), rat(5, 4)).unwrap();
        assert_eq!(
            c,
            Coefficient::ExactPolar {
                modulus: rat(2, 1),
                phase_turns: rat(1, 4)
            }
        );
        let z = Coefficient::exact_polar(rat(0, 1), rat(3, 7)).unwrap();
        assert_eq!(
            z,
            Coefficient::ExactPolar {
                modulus: rat(0, 1),
                phase_turns: rat(0, 1)
            }
        );
        assert!(z.is_zero());
        assert!(Coefficient::exact_polar(rat(-1, 1), rat(0, 1)).is_err());
        assert!(Coefficient::numeric(f64::NAN, 0.0).is_err());
        assert!(Coefficient::numeric(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn phase_extraction_from_numeric() {
        let c = Coefficient::numeric(0.0, -1.0).unwrap();
        assert!((c.phase_turns_f64() - 0.75).abs() < 1e-15);
        assert!((c.modulus_f64() - 1.0).abs() < 1e-15);
        let e = Coefficient::exact_polar(rat(3, 1), rat(2, 3)).unwrap();
        assert!((e.phase_turns_f64() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_modes_rejected() {
        let e = two_term().exponents().clone();
        let mixed = ExponentialSum::new(
            e,
            vec![
                Coefficient::exact_polar(rat(1, 1), rat(0, 1)).unwrap(),
                Coefficient::numeric(1.0, 0.0).unwrap(),
            ],
            None,
        );
        assert!(matches!(mixed, Err(Error::MixedCoefficientModes)));
    }

    #[test]
    fn strip_validation_and_enforcement() {
        assert!(Strip::new(1.0, 1.0).is_err());
        assert!(Strip::new(f64::NEG_INFINITY, f64::INFINITY).is_ok());
        let mut f = two_term();
        f = ExponentialSum::new(
            f.exponents().clone(),
            f.coeffs().to_vec(),
            Some(Strip::new(-1.0, 1.0).unwrap()),
        )
        .unwrap();
        assert!(evaluate(&f, 0.5, 0.0).is_ok());
        assert!(matches!(
            evaluate(&f, 2.0, 0.0),
            Err(Error::OutsideStrip { .. })
        ));
        // strict interior: the boundary is outside
        assert!(matches!(
            evaluate(&f, 1.0, 0.0),
            Err(Error::OutsideStrip { .. })
        ));
    }

    #[test]
    fn evaluate_pinned_values() {
        let f = two_term();
        let v = evaluate(&f, 0.0, 0.0).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-12);

        let z = ExponentialSum::zero(f.exponents().clone());
        let v = evaluate(&z, 0.7, 123.4).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));

        // single term e^{i·pi} = -1
        let g = GroundGeneratorSet::new(&[("one", "1")]).unwrap();
        let e = ExponentSet::new(g, vec![vec![rat(1, 1)]]).unwrap();
        let f1 = ExponentialSum::new(
            e,
            vec![Coefficient::exact_polar(rat(1, 1), rat(0, 1)).unwrap()],
            None,
        )
        .unwrap();
        let v = evaluate(&f1, 0.0, std::f64::consts::PI).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn evaluate_linearity_and_bound() {
        let e = two_term().exponents().clone();
        let a = ExponentialSum::new(
            e.clone(),
            vec![
                Coefficient::exact_polar(rat(1, 2), rat(1, 3)).unwrap(),
                Coefficient::exact_polar(rat(2, 1), rat(0, 1)).unwrap(),
            ],
            None,
        )
        .unwrap();
        let b = ExponentialSum::new(
            e.clone(),
            vec![
                Coefficient::exact_polar(rat(1, 1), rat(5, 6)).unwrap(),
                Coefficient::exact_polar(rat(1, 3), rat(1, 2)).unwrap(),
            ],
            None,
        )
        .unwrap();
        // a + b in numeric form
        let sum_coeffs: Vec<Coefficient> = a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(ca, cb)| {
                let z = ca.to_complex() + cb.to_complex();
                Coefficient::numeric(z.re, z.im).unwrap()
            })
            .collect();
        let ab = ExponentialSum::new(e, sum_coeffs, None).unwrap();
        for &(sigma, t) in &[(0.0, 0.0), (0.3, 1.7), (-0.2, -5.5), (0.1, 100.0)] {
            let va = evaluate(&a, sigma, t).unwrap();
            let vb = evaluate(&b, sigma, t).unwrap();
            let vab = evaluate(&ab, sigma, t).unwrap();
            assert!((vab - (va + vb)).norm() < 1e-12);
            // triangle-inequality bound
            let bound: f64 = a
                .coeffs()
                .iter()
                .zip(a.exponents().freqs())
                .map(|(c, f)| c.modulus_f64() * (f.value() * sigma).exp())
                .sum();
            assert!(va.norm() <= bound + 1e-12);
        }
    }

    #[test]
    fn to_numeric_preserves_values() {
        let f = two_term();
        let g = f.to_numeric();
        assert!(!g.is_exact_mode());
        for &(sigma, t) in &[(0.0, 0.0), (0.25, 2.0), (-0.5, -11.0)] {
            let vf = evaluate(&f, sigma, t).unwrap();
            let vg = evaluate(&g, sigma, t).unwrap();
            assert!((vf - vg).norm() < 1e-12);
        }
    }

    #[test]
    fn recover_exact_single_frequency() {
        // f = 3e^{s}: the integrand at lambda = 1 is the constant 3
        let g = GroundGeneratorSet::new(&[("one", "1"), ("sqrt2", "1.41421356237309504880")])
            .unwrap();
        let e = ExponentSet::new(g.clone(), vec![vec![rat(1, 1), rat(0, 1)]]).unwrap();
        let f = ExponentialSum::new(
            e,
            vec![Coefficient::exact_polar(rat(3, 1), rat(0, 1)).unwrap()],
            None,
        )
        .unwrap();
        let lam1 = Frequency::new(vec![rat(1, 1), rat(0, 1)], &g).unwrap();
        let got = recover_coefficient(&f, &lam1, 0.0, 500.0, 0.01).unwrap();
        assert!((got - Complex64::new(3.0, 0.0)).norm() < 1e-9);

        // off-frequency probe decays like 1/(T·gap)
        let lam2 = Frequency::new(vec![rat(0, 1), rat(1, 1)], &g).unwrap();
        let got = recover_coefficient(&f, &lam2, 0.0, 500.0, 0.01).unwrap();
        assert!(got.norm() < 1e-2);

        // recovery away from sigma = 0 must undo the e^{λσ} factor
        let got = recover_coefficient(&f, &lam1, 0.5, 500.0, 0.01).unwrap();
        assert!((got - Complex64::new(3.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn recover_zero_sum_and_discretization_errors() {
        let f = two_term();
        let z = ExponentialSum::zero(f.exponents().clone());
        let lam = f.exponents().freqs()[0].clone();
        let got = recover_coefficient(&z, &lam, 0.0, 10.0, 0.01).unwrap();
        assert_eq!(got, Complex64::new(0.0, 0.0));

        assert!(matches!(
            recover_coefficient(&f, &lam, 0.0, 10.0, 0.9),
            Err(Error::BadDiscretization(_))
        ));
        assert!(matches!(
            recover_coefficient(&f, &lam, 0.0, -1.0, 0.01),
            Err(Error::BadDiscretization(_))
        ));
        assert!(matches!(
            recover_coefficient(&f, &lam, 0.0, 10.0, 0.0),
            Err(Error::BadDiscretization(_))
        ));
    }
}
