//! Frequency sets with exact rational coordinates over user-declared
//! generators, the greedy natural basis, and change-of-basis maps.
//!
//! Real frequencies are never stored as floats on the decision path: each
//! frequency is a rational vector over a declared set of ground generators
//! (assumed Q-linearly independent by the user), so linear dependence over Q
//! is exactly decidable. A float value is cached per frequency purely for
//! numeric evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{invert_rational, solve_rational};
use crate::rational::{lcm_denominators, parse_rat, rat_to_f64};

/// Ordered list of named real generators, e.g. {"one" = 1, "sqrt2" =
/// 1.41421356237309504880}. The user asserts Q-linear independence of the
/// values they denote; nothing here attempts integer-relation detection.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundGeneratorSet {
    symbols: Vec<String>,
    values: Vec<BigRational>,
    values_f64: Vec<f64>,
}

impl GroundGeneratorSet {
    /// Builds from (symbol, value) pairs; values are decimal or "p/q"
    /// strings parsed exactly.
    pub fn new(entries: &[(&str, &str)]) -> Result<Self> {
        let parsed: Result<Vec<(String, BigRational)>> = entries
            .iter()
            .map(|(sym, val)| {
                let v = parse_rat(val)
                    .map_err(|e| Error::InvalidGenerator(format!("{sym}: {e}")))?;
                Ok((sym.to_string(), v))
            })
            .collect();
        Self::from_rationals(parsed?)
    }

    pub fn from_rationals(entries: Vec<(String, BigRational)>) -> Result<Self> {
        let mut symbols = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        let mut values_f64 = Vec::with_capacity(entries.len());
        for (sym, val) in entries {
            if sym.is_empty() {
                return Err(Error::InvalidGenerator("empty symbol".into()));
            }
            if symbols.contains(&sym) {
                return Err(Error::InvalidGenerator(format!("duplicate symbol {sym:?}")));
            }
            if val.is_zero() {
                return Err(Error::InvalidGenerator(format!("{sym} has value 0")));
            }
            let f = rat_to_f64(&val);
            if !f.is_finite() {
                return Err(Error::InvalidGenerator(format!("{sym} overflows f64")));
            }
            symbols.push(sym);
            values.push(val);
            values_f64.push(f);
        }
        Ok(Self {
            symbols,
            values,
            values_f64,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn values_f64(&self) -> &[f64] {
        &self.values_f64
    }

    /// User assertion, not a computed fact.
    pub fn declared_independent(&self) -> bool {
        true
    }
}

/// One real frequency λ = Σ coords_k · generator_k, with the float value
/// cached (correctly rounded from the exact rational dot product).
#[derive(Debug, Clone, PartialEq)]
pub struct Frequency {
    coords: Vec<BigRational>,
    cached_value: f64,
}

impl Frequency {
    pub fn new(coords: Vec<BigRational>, generators: &GroundGeneratorSet) -> Result<Self> {
        if coords.len() != generators.len() {
            return Err(Error::DimensionMismatch(format!(
                "frequency has {} coordinates over {} generators",
                coords.len(),
                generators.len()
            )));
        }
        let exact = coords
            .iter()
            .zip(generators.values())
            .fold(BigRational::zero(), |acc, (c, g)| acc + c * g);
        Ok(Self {
            coords,
            cached_value: rat_to_f64(&exact),
        })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Float value of the frequency, for numeric evaluation only.
    pub fn value(&self) -> f64 {
        self.cached_value
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Ordered set Λ of pairwise-distinct frequencies over one generator set.
/// Order matters: the natural basis is selected left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSet {
    generators: GroundGeneratorSet,
    freqs: Vec<Frequency>,
}

impl ExponentSet {
    pub fn new(generators: GroundGeneratorSet, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyExponentSet);
        }
        let freqs: Result<Vec<Frequency>> = coords
            .into_iter()
            .map(|c| Frequency::new(c, &generators))
            .collect();
        let freqs = freqs?;
        for i in 0..freqs.len() {
            for j in i + 1..freqs.len() {
                if freqs[i].coords == freqs[j].coords {
                    return Err(Error::DuplicateFrequency(i, j));
                }
            }
        }
        Ok(Self { generators, freqs })
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty sets
    }

    /// Number of ground generators (dimension of coordinate vectors).
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn freqs(&self) -> &[Frequency] {
        &self.freqs
    }

    pub fn generators(&self) -> &GroundGeneratorSet {
        &self.generators
    }

    /// Greedy left-to-right natural basis and exact coordinates of every
    /// frequency over it.
    pub fn natural_basis(&self) -> BasisData {
        natural_basis(self)
    }
}

/// Natural-basis selection plus the exact coordinate matrix.
///
/// Row j of `coord_matrix` holds the coordinates r_j of λ_j over the
/// selected basis; rows at `basis_indices` are standard unit vectors, and a
/// zero frequency contributes a zero row.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisData {
    pub basis_indices: Vec<usize>,
    pub coord_matrix: Vec<Vec<BigRational>>,
    pub integral: bool,
    pub row_denominators: Vec<BigInt>,
    /// Generator-space coordinates of the selected basis elements (rows).
    basis_coords: Vec<Vec<BigRational>>,
}

impl BasisData {
    pub fn basis_size(&self) -> usize {
        self.basis_indices.len()
    }

    /// Generator-space coordinate rows of the selected basis elements.
    pub fn basis_coords(&self) -> &[Vec<BigRational>] {
        &self.basis_coords
    }

    /// Float values of the basis frequencies, for numeric work.
    pub fn basis_values_f64(&self, exponents: &ExponentSet) -> Vec<f64> {
        self.basis_indices
            .iter()
            .map(|&j| exponents.freqs()[j].value())
            .collect()
    }
}

/// m×p matrix whose columns are the given m-dimensional coordinate vectors.
fn columns_matrix(cols: &[Vec<BigRational>], m: usize) -> Vec<Vec<BigRational>> {
    (0..m)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

pub fn natural_basis(exponents: &ExponentSet) -> BasisData {
    let m = exponents.dim();
    let mut basis_indices: Vec<usize> = Vec::new();
    let mut basis_coords: Vec<Vec<BigRational>> = Vec::new();
    for (j, f) in exponents.freqs().iter().enumerate() {
        if f.is_zero() {
            continue; // zero frequencies are representable but never selected
        }
        let mat = columns_matrix(&basis_coords, m);
        if solve_rational(&mat, f.coords()).is_none() {
            basis_indices.push(j);
            basis_coords.push(f.coords().to_vec());
        }
    }
    let mat = columns_matrix(&basis_coords, m);
    let coord_matrix: Vec<Vec<BigRational>> = exponents
        .freqs()
        .iter()
        .map(|f| solve_rational(&mat, f.coords()).expect("in span of selected basis"))
        .collect();
    let row_denominators: Vec<BigInt> = coord_matrix
        .iter()
        .map(|row| lcm_denominators(row))
        .collect();
    let integral = row_denominators.iter().all(|d| d.is_one());
    BasisData {
        basis_indices,
        coord_matrix,
        integral,
        row_denominators,
        basis_coords,
    }
}

/// Invertible rational map between the natural basis and another basis of
/// the same Q-span. Row k of `matrix` expresses the k-th other-basis element
/// over the natural basis, so natural coordinates satisfy r = s·T.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeOfBasis {
    pub matrix: Vec<Vec<BigRational>>,
    pub inverse: Vec<Vec<BigRational>>,
}

fn row_times_mat(row: &[BigRational], mat: &[Vec<BigRational>]) -> Vec<BigRational> {
    let cols = if mat.is_empty() { 0 } else { mat[0].len() };
    (0..cols)
        .map(|j| {
            row.iter()
                .zip(mat)
                .fold(BigRational::zero(), |acc, (ri, mrow)| acc + ri * &mrow[j])
        })
        .collect()
}

pub fn change_of_basis(natural: &BasisData, other_basis: &[Frequency]) -> Result<ChangeOfBasis> {
    let p = natural.basis_size();
    if other_basis.len() != p {
        return Err(Error::NotABasis(format!(
            "expected {p} elements, got {}",
            other_basis.len()
        )));
    }
    let m = natural.basis_coords.first().map_or(0, Vec::len);
    let mat = columns_matrix(&natural.basis_coords, m);
    let matrix: Vec<Vec<BigRational>> = other_basis
        .iter()
        .enumerate()
        .map(|(k, h)| {
            solve_rational(&mat, h.coords()).ok_or_else(|| {
                Error::NotABasis(format!("element {k} lies outside the spanned space"))
            })
        })
        .collect::<Result<_>>()?;
    let inverse = invert_rational(&matrix)
        .ok_or_else(|| Error::NotABasis("candidate elements are Q-dependent".into()))?;
    Ok(ChangeOfBasis { matrix, inverse })
}

impl ChangeOfBasis {
    /// Natural-basis row r ↦ other-basis row s with r = s·T.
    pub fn to_other(&self, r: &[BigRational]) -> Vec<BigRational> {
        row_times_mat(r, &self.inverse)
    }

    pub fn to_natural(&self, s: &[BigRational]) -> Vec<BigRational> {
        row_times_mat(s, &self.matrix)
    }

    /// Re-expresses a whole coordinate matrix (rows r_j) in the other basis.
    pub fn convert_matrix(&self, coord_matrix: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        coord_matrix.iter().map(|r| self.to_other(r)).collect()
    }
}
