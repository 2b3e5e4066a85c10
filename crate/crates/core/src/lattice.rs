//! Integer-lattice primitives backing the congruence solver: Hermite normal
//! form with a unimodular transform, integer left kernels of rational
//! matrices, lattice membership with verifiable certificates either way, and
//! exact rational linear solving.
//!
//! Matrices are dense `Vec<Vec<_>>` rows; every routine is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Quotient rounded to nearest (ties away from the floor), used to keep
/// entries small during row reduction.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r << 1u32).magnitude() > b.magnitude() {
        q + 1
    } else {
        q
    }
}

fn row_op(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let s = m[src].clone();
    for (d, sv) in m[dst].iter_mut().zip(&s) {
        *d -= q * sv;
    }
}

/// Row-style Hermite normal form: returns (H, V) with V·A = H, V unimodular,
/// nonzero rows of H on top, positive pivots strictly moving right, and
/// entries above each pivot reduced into [0, pivot).
pub fn row_hnf(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut v = identity(n);
    let mut r = 0usize;
    for col in 0..m {
        if r == n {
            break;
        }
        loop {
            let mut pivot: Option<usize> = None;
            for i in r..n {
                if !h[i][col].is_zero()
                    && pivot.map_or(true, |p| h[i][col].magnitude() < h[p][col].magnitude())
                {
                    pivot = Some(i);
                }
            }
            let Some(p) = pivot else { break };
            h.swap(r, p);
            v.swap(r, p);
            let mut cleared = true;
            for i in r + 1..n {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&h[i][col], &h[r][col]);
                if !q.is_zero() {
                    row_op(&mut h, i, r, &q);
                    row_op(&mut v, i, r, &q);
                }
                if !h[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in v[r].iter_mut() {
                *x = -&*x;
            }
        }
        let piv = h[r][col].clone();
        for i in 0..r {
            let q = h[i][col].div_floor(&piv);
            if !q.is_zero() {
                row_op(&mut h, i, r, &q);
                row_op(&mut v, i, r, &q);
            }
        }
        r += 1;
    }
    (h, v)
}

/// Integer basis for { u ∈ Z^n : uᵀA = 0 } with A rational. The basis is
/// saturated: every integer kernel vector is an integer combination of the
/// returned rows.
pub fn left_kernel(a: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    // Column scaling leaves the left kernel unchanged; it makes A integral.
    let mut scaled = vec![vec![BigInt::zero(); m]; n];
    for j in 0..m {
        let col: Vec<BigRational> = (0..n).map(|i| a[i][j].clone()).collect();
        let l = crate::rational::lcm_denominators(&col);
        let lr = BigRational::from_integer(l);
        for i in 0..n {
            scaled[i][j] = (&a[i][j] * &lr).to_integer();
        }
    }
    let (h, v) = row_hnf(&scaled);
    h.into_iter()
        .zip(v)
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, vr)| vr)
        .collect()
}

/// Column-style Hermite normal form of B (p×N): H = B·R with R unimodular,
/// nonzero columns of H first, and the leading nonzero of column t sitting
/// at `pivot_rows[t]` with the rows strictly increasing.
pub struct ColumnHnf {
    pub h: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
    pub pivot_rows: Vec<usize>,
}

pub fn column_hnf(b: &[Vec<BigInt>]) -> ColumnHnf {
    let p = b.len();
    let n = if p == 0 { 0 } else { b[0].len() };
    let bt: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..p).map(|i| b[i][j].clone()).collect())
        .collect();
    let (ht, vt) = row_hnf(&bt);
    let h: Vec<Vec<BigInt>> = (0..p)
        .map(|i| (0..n).map(|j| ht[j][i].clone()).collect())
        .collect();
    let transform: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| vt[j][i].clone()).collect())
        .collect();
    let mut pivot_rows = Vec::new();
    'cols: for t in 0..n {
        for i in 0..p {
            if !h[i][t].is_zero() {
                pivot_rows.push(i);
                continue 'cols;
            }
        }
        break;
    }
    ColumnHnf {
        h,
        transform,
        pivot_rows,
    }
}

/// Outcome of deciding w ∈ { B·k : k ∈ Z^N }.
///
/// Both branches carry a self-verifying certificate: `coords` satisfies
/// B·coords = w exactly, while `dual` is a rational row vector c with
/// c·B ∈ Z^N but c·w ∉ Z, which no lattice point can satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeMembership {
    Member { coords: Vec<BigInt> },
    NonMember { dual: Vec<BigRational> },
}

pub fn lattice_coordinates(b: &[Vec<BigInt>], w: &[BigInt]) -> LatticeMembership {
    let p = b.len();
    assert!(p > 0 && p == w.len(), "lattice basis must have rows");
    let n = b[0].len();
    let ColumnHnf {
        h,
        transform,
        pivot_rows,
    } = column_hnf(b);
    let q = pivot_rows.len();

    let int = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut res: Vec<BigRational> = w.iter().map(int).collect();
    let mut z: Vec<BigRational> = Vec::with_capacity(q);
    for t in 0..q {
        let zt = &res[pivot_rows[t]] / int(&h[pivot_rows[t]][t]);
        for i in 0..p {
            if !h[i][t].is_zero() {
                res[i] -= &zt * int(&h[i][t]);
            }
        }
        z.push(zt);
    }

    if let Some(bad) = (0..p).find(|&i| !res[i].is_zero()) {
        // w is outside even the rational column span: build c with c·H = 0
        // and c·w ≠ 0, then scale so c·w = 1/2.
        let mut c = vec![BigRational::zero(); p];
        c[bad] = BigRational::one();
        for t in (0..q).rev() {
            let mut acc = int(&h[bad][t]);
            for l in t + 1..q {
                acc += &c[pivot_rows[l]] * int(&h[pivot_rows[l]][t]);
            }
            c[pivot_rows[t]] = -acc / int(&h[pivot_rows[t]][t]);
        }
        let cw = c
            .iter()
            .zip(w)
            .fold(BigRational::zero(), |acc, (ci, wi)| acc + ci * int(wi));
        let scale = BigRational::new(BigInt::one(), BigInt::from(2)) / cw;
        for ci in c.iter_mut() {
            *ci *= &scale;
        }
        return LatticeMembership::NonMember { dual: c };
    }

    if let Some(t_bad) = z.iter().position(|zt| !zt.is_integer()) {
        // In the span, but with a fractional coordinate z_t: then
        // c = hnf_dual_row(t) has c·H = e_t and c·w = z_t ∉ Z.
        return LatticeMembership::NonMember {
            dual: hnf_dual_row(&h, &pivot_rows, t_bad),
        };
    }

    let mut coords = vec![BigInt::zero(); n];
    for (i, coord) in coords.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for (t, zt) in z.iter().enumerate() {
            acc += &transform[i][t] * zt.to_integer();
        }
        *coord = acc;
    }
    LatticeMembership::Member { coords }
}

/// Rational row c supported on the pivot rows of a column-HNF matrix H with
/// c·H = e_t (the t-th unit row). Building block for dual certificates: if
/// w = H·z then c·w = z_t.
pub fn hnf_dual_row(h: &[Vec<BigInt>], pivot_rows: &[usize], t: usize) -> Vec<BigRational> {
    let p = h.len();
    let q = pivot_rows.len();
    let int = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut c = vec![BigRational::zero(); p];
    for j in (0..q).rev() {
        let mut acc = if j == t {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        for l in j + 1..q {
            acc -= &c[pivot_rows[l]] * int(&h[pivot_rows[l]][j]);
        }
        c[pivot_rows[j]] = acc / int(&h[pivot_rows[j]][j]);
    }
    c
}

/// Exact solve of A·x = b over Q with free variables pinned to zero
/// (deterministic), or None when inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for col in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let piv = aug[r][col].clone();
        for j in col..=m {
            aug[r][j] = &aug[r][j] / &piv;
        }
        for i in 0..n {
            if i != r && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in col..=m {
                    let sub = &f * &aug[r][j];
                    aug[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    for row in aug.iter().take(n).skip(r) {
        if !row[m].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); m];
    for (row, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[row][m].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, or None when singular.
pub fn invert_rational(t: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let p = t.len();
    let mut cols = Vec::with_capacity(p);
    for i in 0..p {
        let e: Vec<BigRational> = (0..p)
            .map(|r| {
                if r == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve_rational(t, &e)?);
    }
    let inv: Vec<Vec<BigRational>> = (0..p)
        .map(|r| (0..p).map(|i| cols[i][r].clone()).collect())
        .collect();
    // A singular but consistent solve cannot happen for all p unit vectors,
    // but verify the product anyway; it is cheap at these sizes.
    for (i, row) in t.iter().enumerate() {
        for j in 0..p {
            let got = row
                .iter()
                .zip(inv.iter())
                .fold(BigRational::zero(), |acc, (tik, inv_k)| acc + tik * &inv_k[j]);
            let want = if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            if got != want {
                return None;
            }
        }
    }
    Some(inv)
}
