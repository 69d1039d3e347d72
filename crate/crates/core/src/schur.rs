//! Companion matrices, hook-shape Schur polynomials and semistandard Young
//! tableaux.
//!
//! The entries of `C^t`, for `C` the companion matrix of a monic polynomial
//! of degree `m`, are signed Schur polynomials of hook shape evaluated at the
//! roots:
//!
//! ```text
//! C^t(i, j) = (-1)^(m-i) s_(t+j-m, 1^(m-i))(x_1, ..., x_m)    if t + j - m >= 1
//! C^t(i, j) = [i == t + j]                                   otherwise
//! ```
//!
//! Hooks are evaluated from the coefficients alone: with `h_k` the complete
//! homogeneous polynomials,
//!
//! ```text
//! s_(b, 1^c) = sum_{i=0..c} (-1)^i h_(b+i) e_(c-i)
//! ```
//!
//! which is the Pieri identity `s_(k,1^l) + s_(k+1,1^(l-1)) = h_k e_l`
//! unrolled down to the one-row shape `s_(b+c) = h_(b+c)`.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::binomial;

use crate::error::{Error, Result};

/// `e_1..e_m` of the given roots, by expanding `Π(1 + x_i z)` one factor at a
/// time.
pub fn elementary_symmetric(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; roots.len() + 1];
    c[0] = 1.0;
    for (i, &x) in roots.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            c[k] += x * c[k - 1];
        }
    }
    c.split_off(1)
}

pub fn elementary_symmetric_complex(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); roots.len() + 1];
    c[0] = Complex64::new(1.0, 0.0);
    for (i, &x) in roots.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = c[k - 1];
            c[k] += x * prev;
        }
    }
    c.split_off(1)
}

/// `h_0..=h_up_to` from `e_1..e_m` via `h_k = Σ_{i=1..k} (−1)^{i−1} e_i h_{k−i}`.
pub fn complete_homogeneous(esym: &[f64], up_to: usize) -> Vec<f64> {
    let mut h = vec![0.0; up_to + 1];
    h[0] = 1.0;
    for k in 1..=up_to {
        let mut acc = 0.0;
        for i in 1..=k.min(esym.len()) {
            let term = esym[i - 1] * h[k - i];
            acc += if i % 2 == 1 { term } else { -term };
        }
        h[k] = acc;
    }
    h
}

/// The partition `(arm, 1^leg)`: one row of length `arm` and `leg` further
/// single boxes below its first cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HookShape {
    arm: usize,
    leg: usize,
}

impl HookShape {
    pub fn new(arm: usize, leg: usize) -> Result<Self> {
        if arm == 0 {
            return Err(Error::InvalidShape("hook arm must be at least 1".into()));
        }
        Ok(HookShape { arm, leg })
    }

    pub fn arm(&self) -> usize {
        self.arm
    }

    pub fn leg(&self) -> usize {
        self.leg
    }

    pub fn boxes(&self) -> usize {
        self.arm + self.leg
    }

    pub fn partition(&self) -> Vec<usize> {
        std::iter::once(self.arm).chain(std::iter::repeat_n(1, self.leg)).collect()
    }
}

/// `s_(b, 1^c)` at the root multiset whose elementary symmetric values are
/// `esym` (so `m = esym.len()`).
///
/// A leg of exactly `m` gives a column of `m + 1` boxes, which no tableau on
/// `m` letters can fill; the value is 0.
pub fn hook_schur_from_esym(esym: &[f64], shape: HookShape) -> Result<f64> {
    let m = esym.len();
    if shape.leg > m {
        return Err(Error::LegTooLong { leg: shape.leg, m });
    }
    if shape.leg == m {
        return Ok(0.0);
    }
    let h = complete_homogeneous(esym, shape.boxes());
    let e = |k: usize| if k == 0 { 1.0 } else { esym[k - 1] };
    let mut acc = 0.0;
    for i in 0..=shape.leg {
        let term = h[shape.arm + i] * e(shape.leg - i);
        acc += if i % 2 == 0 { term } else { -term };
    }
    Ok(acc)
}

/// Companion matrix of `g(x) = x^m − e_1 x^{m−1} + … + (−1)^m e_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionMatrix {
    esym: Vec<f64>,
}

impl CompanionMatrix {
    pub fn new(esym: Vec<f64>) -> Result<Self> {
        if esym.is_empty() {
            return Err(Error::InvalidParameter("companion matrix needs degree >= 1".into()));
        }
        Ok(CompanionMatrix { esym })
    }

    pub fn from_roots(roots: &[f64]) -> Result<Self> {
        Self::new(elementary_symmetric(roots))
    }

    pub fn degree(&self) -> usize {
        self.esym.len()
    }

    pub fn esym(&self) -> &[f64] {
        &self.esym
    }

    /// Ones on the subdiagonal, `C(i, m) = (−1)^{m−i} e_{m−i+1}` in the last
    /// column (1-based), zeros elsewhere.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let m = self.degree();
        let mut c = DMatrix::zeros(m, m);
        for j in 0..m - 1 {
            c[(j + 1, j)] = 1.0;
        }
        for i in 1..=m {
            let v = self.esym[m - i];
            c[(i - 1, m - 1)] = if (m - i).is_multiple_of(2) { v } else { -v };
        }
        c
    }

    /// `C^t(i, j)` (1-based) through the hook Schur formula.
    pub fn power_entry(&self, t: usize, i: usize, j: usize) -> Result<f64> {
        companion_power_entry(&self.esym, t, i, j)
    }

    /// `C^t` by repeated multiplication.
    pub fn power_by_multiplication(&self, t: usize) -> DMatrix<f64> {
        let c = self.to_matrix();
        let m = self.degree();
        let mut acc = DMatrix::identity(m, m);
        for _ in 0..t {
            acc = &acc * &c;
        }
        acc
    }
}

/// `C^t(i, j)` (1-based) for the companion matrix with coefficients `esym`,
/// without forming any matrix.
pub fn companion_power_entry(esym: &[f64], t: usize, i: usize, j: usize) -> Result<f64> {
    let m = esym.len();
    if i == 0 || j == 0 || i > m || j > m {
        return Err(Error::IndexOutOfRange { i, j, m });
    }
    if t + j < m + 1 {
        return Ok(if i == t + j { 1.0 } else { 0.0 });
    }
    let shape = HookShape::new(t + j - m, m - i)?;
    let s = hook_schur_from_esym(esym, shape)?;
    Ok(if (m - i).is_multiple_of(2) { s } else { -s })
}

/// Coefficients `c_{t,k} = C^t(k+1, 1)`, `k = 0..=N−2`, with
/// `P^t − Π = Σ_k c_{t,k} (P^k − Π)`. `esym` holds `e_1..e_{N−1}` of the
/// non-unit eigenvalues.
pub fn recurrence_coefficients(esym: &[f64], n: usize, t: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParameter("recurrence needs N >= 2".into()));
    }
    if esym.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: esym.len() });
    }
    (0..n - 1).map(|k| companion_power_entry(esym, t, k + 1, 1)).collect()
}

/// Upper bound on `|c_{t,k}|` when every non-unit eigenvalue has modulus at
/// most `beta_star`: the hook Schur polynomial at `(β★, …, β★)`, i.e. the
/// tableau count times `β★^{t−k}`. Only meaningful for `t ≥ N − 1`.
pub fn recurrence_coefficient_bound(beta_star: f64, n: usize, t: usize, k: usize) -> Result<f64> {
    if n < 2 || k > n - 2 {
        return Err(Error::InvalidParameter(format!("k = {k} outside 0..=N-2 for N = {n}")));
    }
    if t + 1 < n {
        return Err(Error::TimeTooSmall { t, min: n - 1 });
    }
    let count = ssyt_count_hook(t + 2 - n, n - 2 - k, n - 1);
    let count: f64 = count.to_string().parse().unwrap_or(f64::INFINITY);
    Ok(count * beta_star.powi((t - k) as i32))
}

/// Number of SSYT of shape `(b, 1^c)` on `{1..m}`:
/// `C(b+c−1, b−1) · C(b+m−1, b+c)`.
pub fn ssyt_count_hook(b: usize, c: usize, m: usize) -> BigUint {
    assert!(b >= 1 && m >= 1, "hook needs b >= 1 and m >= 1");
    let first = binomial(BigUint::from(b + c - 1), BigUint::from(b - 1));
    if b + c > b + m - 1 {
        return BigUint::ZERO;
    }
    let second = binomial(BigUint::from(b + m - 1), BigUint::from(b + c));
    first * second
}

/// A semistandard Young tableau: rows weakly increasing, columns strictly
/// increasing, letters from `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// `(w_1, …, w_m)` with `w_k` the number of cells holding `k`.
    pub fn weight(&self, m: usize) -> Vec<usize> {
        let mut w = vec![0; m];
        for &a in self.rows.iter().flatten() {
            w[a as usize - 1] += 1;
        }
        w
    }

    /// `x^{w(T)}`.
    pub fn monomial(&self, point: &[f64]) -> f64 {
        self.rows.iter().flatten().map(|&a| point[a as usize - 1]).product()
    }

    pub fn is_semistandard(&self, m: usize) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]) && r.iter().all(|&a| a >= 1 && a as usize <= m));
        let cols_ok = self.rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| below > above));
        rows_ok && cols_ok
    }
}

pub const ENUM_MAX_BOXES: usize = 16;
pub const ENUM_MAX_ALPHABET: usize = 8;

fn check_partition(shape: &[usize]) -> Result<()> {
    if shape.is_empty() || shape.contains(&0) {
        return Err(Error::InvalidShape(format!("{shape:?} has empty rows")));
    }
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{shape:?} is not weakly decreasing")));
    }
    Ok(())
}

/// Every SSYT of `shape` on `{1..m}`, in lexicographic order of the
/// row-major reading word. Exponential; capped at 16 boxes and `m ≤ 8`.
pub fn ssyt_enumerate(shape: &[usize], m: usize) -> Result<Vec<Tableau>> {
    check_partition(shape)?;
    let boxes: usize = shape.iter().sum();
    if boxes > ENUM_MAX_BOXES || m > ENUM_MAX_ALPHABET || m == 0 {
        return Err(Error::TooLarge(format!(
            "{boxes} boxes on {m} letters (limits {ENUM_MAX_BOXES} boxes, 1..={ENUM_MAX_ALPHABET} letters)"
        )));
    }
    let mut rows: Vec<Vec<u8>> = shape.iter().map(|&k| Vec::with_capacity(k)).collect();
    let mut out = Vec::new();
    fill(shape, m as u8, 0, &mut rows, &mut out);
    Ok(out)
}

fn fill(shape: &[usize], m: u8, row: usize, rows: &mut Vec<Vec<u8>>, out: &mut Vec<Tableau>) {
    if row == shape.len() {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    let col = rows[row].len();
    if col == shape[row] {
        fill(shape, m, row + 1, rows, out);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 1 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
    for v in left.max(above)..=m {
        rows[row].push(v);
        fill(shape, m, row, rows, out);
        rows[row].pop();
    }
}

/// `s_λ(x_1..x_m)` as the sum of `x^{w(T)}` over all tableaux.
pub fn schur_by_enumeration(shape: &[usize], point: &[f64]) -> Result<f64> {
    Ok(ssyt_enumerate(shape, point.len())?.iter().map(|t| t.monomial(point)).sum())
}

/// `e_1..e_N` of the eigenvalues of a square matrix, read off its
/// characteristic polynomial (Hessenberg reduction, then the standard
/// three-term expansion along the last column).
///
/// Unlike computing eigenvalues first, this stays accurate for defective
/// matrices, where the roots themselves are ill-conditioned.
pub fn charpoly_esym(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let h = a.clone().hessenberg().h();
    // p[k] = characteristic polynomial of the leading k×k block, ascending coefficients
    let mut p: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 1..=n {
        let kk = k - 1;
        // (x - h_kk) p_{k-1}
        let prev = &p[k - 1];
        let mut next = vec![0.0; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= h[(kk, kk)] * c;
        }
        let mut sub = 1.0;
        for i in (1..k).rev() {
            // i is 1-based row index of the entry h_{i,k}
            sub *= h[(i, i - 1)];
            let coeff = h[(i - 1, kk)] * sub;
            for (d, &c) in p[i - 1].iter().enumerate() {
                next[d] -= coeff * c;
            }
        }
        p.push(next);
    }
    let poly = &p[n];
    (1..=n).map(|k| if k % 2 == 0 { poly[n - k] } else { -poly[n - k] }).collect()
}

/// Divide a factor `(x − 1)` out: given `e_1..e_N` of a multiset containing
/// 1, return `e_1..e_{N−1}` of the rest.
pub fn deflate_unit_root(esym: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(esym.len().saturating_sub(1));
    let mut prev = 1.0;
    for &e in esym.iter().take(esym.len().saturating_sub(1)) {
        let g = e - prev;
        out.push(g);
        prev = g;
    }
    out
}
