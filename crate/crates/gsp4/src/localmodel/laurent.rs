//! Truncated Laurent series in v over F_p, and 4×4 (or 1×1) matrices of them.
//!
//! A series knows its coefficients for exponents below its precision; exact
//! Laurent polynomials carry no precision bound. Comparisons ask for a
//! precision and fail with an error when an operand does not carry it.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub p: u64,
    /// Exponent of `coeffs[0]`.
    low: i64,
    coeffs: Vec<u64>,
    /// Coefficients are known for exponents < prec; `None` means exact.
    prec: Option<i64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn reduce_mod(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

impl Laurent {
    pub fn zero(p: u64) -> Self {
        Laurent { p, low: 0, coeffs: vec![], prec: None }
    }

    pub fn constant(p: u64, c: i64) -> Self {
        Self::monomial(p, c, 0)
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    /// c·v^k.
    pub fn monomial(p: u64, c: i64, k: i64) -> Self {
        Laurent { p, low: k, coeffs: vec![reduce_mod(c, p)], prec: None }.normalized()
    }

    /// Σ c_i v^{low+i}, exact.
    pub fn from_coeffs(p: u64, low: i64, coeffs: &[i64]) -> Self {
        Laurent { p, low, coeffs: coeffs.iter().map(|&c| reduce_mod(c, p)).collect(), prec: None }.normalized()
    }

    /// Same as `from_coeffs` but known only for exponents below `prec`.
    pub fn series(p: u64, low: i64, coeffs: &[i64], prec: i64) -> Self {
        Laurent { p, low, coeffs: coeffs.iter().map(|&c| reduce_mod(c, p)).collect(), prec: Some(prec) }.normalized()
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let prec = self.prec.map_or(prec, |q| q.min(prec));
        Laurent { prec: Some(prec), ..self.clone() }.normalized()
    }

    fn normalized(mut self) -> Self {
        if let Some(q) = self.prec {
            let keep = (q - self.low).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        self
    }

    /// Coefficient of v^k (zero outside the stored range).
    pub fn coeff(&self, k: i64) -> u64 {
        if k < self.low {
            return 0;
        }
        self.coeffs.get((k - self.low) as usize).copied().unwrap_or(0)
    }

    /// Whether every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    /// Highest exponent with a nonzero known coefficient.
    pub fn top_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Nonzero terms as (exponent, coefficient) with coefficients in [0, p).
    pub fn terms(&self) -> Vec<(i64, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i64, c))
            .collect()
    }

    fn join_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    fn combine(&self, other: &Laurent, sign: u64) -> Laurent {
        assert_eq!(self.p, other.p, "series over different primes");
        let p = self.p;
        if self.is_zero() && other.is_zero() {
            return Laurent { p, low: 0, coeffs: vec![], prec: Self::join_prec(self.prec, other.prec) };
        }
        let ends = |x: &Laurent| if x.is_zero() { None } else { Some((x.low, x.low + x.coeffs.len() as i64)) };
        let (lo, hi) = match (ends(self), ends(other)) {
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let mut coeffs = vec![0u64; (hi - lo) as usize];
        for (k, c) in self.terms() {
            coeffs[(k - lo) as usize] = c;
        }
        for (k, c) in other.terms() {
            let slot = &mut coeffs[(k - lo) as usize];
            *slot = if sign == 1 { (*slot + c) % p } else { (*slot + p - c) % p };
        }
        Laurent { p, low: lo, coeffs, prec: Self::join_prec(self.prec, other.prec) }.normalized()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.combine(other, 0)
    }

    pub fn neg(&self) -> Laurent {
        Laurent::zero(self.p).with_prec_opt(self.prec).sub(self)
    }

    fn with_prec_opt(mut self, prec: Option<i64>) -> Self {
        self.prec = prec;
        self
    }

    pub fn scale(&self, c: i64) -> Laurent {
        let c = reduce_mod(c, self.p);
        Laurent { coeffs: self.coeffs.iter().map(|&x| x * c % self.p).collect(), ..self.clone() }.normalized()
    }

    /// Multiplication by v^k.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent { low: self.low + k, prec: self.prec.map(|q| q + k), ..self.clone() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        assert_eq!(self.p, other.p, "series over different primes");
        let p = self.p;
        // a known to v^{qa}, b with valuation vb: the product is known to v^{qa + vb}
        let bound = |q: Option<i64>, v: Option<i64>| q.map(|q| q + v.unwrap_or(q.max(0)));
        let prec = match (bound(self.prec, other.valuation()), bound(other.prec, self.valuation())) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if self.is_zero() || other.is_zero() {
            return Laurent { p, low: 0, coeffs: vec![], prec };
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % p;
            }
        }
        Laurent { p, low: self.low + other.low, coeffs, prec }.normalized()
    }

    /// Inverse of a series whose leading term is known, to relative precision
    /// inherited from the input (an exact monomial inverts exactly).
    pub fn inverse(&self, default_prec: i64) -> Result<Laurent> {
        let v = self.valuation().ok_or_else(|| Error::Invariant("inverting zero".into()))?;
        let p = self.p;
        if self.coeffs.len() == 1 && self.prec.is_none() {
            return Ok(Laurent { p, low: -v, coeffs: vec![inv_mod(self.coeffs[0], p)], prec: None });
        }
        // relative precision of the input, measured from its valuation
        let rel = self.prec.map_or(default_prec, |q| q - v).max(1);
        let a0inv = inv_mod(self.coeffs[0], p);
        let mut out = vec![0u64; rel as usize];
        out[0] = a0inv;
        for n in 1..rel as usize {
            let mut s = 0u64;
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = (s + self.coeffs[k] * out[n - k]) % p;
            }
            out[n] = (p - s) % p * a0inv % p;
        }
        Ok(Laurent { p, low: -v, coeffs: out, prec: Some(-v + rel) }.normalized())
    }

    /// v ↦ v^p on the variable (coefficients lie in F_p, fixed by Frobenius).
    pub fn frobenius(&self) -> Laurent {
        let p = self.p as i64;
        if self.is_zero() {
            return Laurent { p: self.p, low: 0, coeffs: vec![], prec: self.prec.map(|q| q * p) };
        }
        let mut coeffs = vec![0u64; (self.coeffs.len() - 1) * p as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c;
        }
        Laurent { p: self.p, low: self.low * p, coeffs, prec: self.prec.map(|q| q * p) }.normalized()
    }

    /// Equality of all coefficients with exponent < n; both operands must be
    /// known that far.
    pub fn eq_to(&self, other: &Laurent, n: i64) -> Result<bool> {
        for x in [self, other] {
            if let Some(q) = x.prec {
                if q < n {
                    return Err(Error::Precision { need: n.max(0) as usize, have: q.max(0) as usize });
                }
            }
        }
        let diff = self.sub(other);
        Ok(diff.terms().iter().all(|&(k, _)| k >= n))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}v")?,
                _ => write!(f, "{c}v^{k}")?,
            }
        }
        if let Some(q) = self.prec {
            write!(f, " + O(v^{q})")?;
        }
        Ok(())
    }
}

/// Square matrix of Laurent series, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub n: usize,
    pub p: u64,
    pub entries: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn zero(n: usize, p: u64) -> Self {
        LaurentMatrix { n, p, entries: vec![Laurent::zero(p); n * n] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zero(n, p);
        for i in 0..n {
            m.set(i, i, Laurent::one(p));
        }
        m
    }

    /// diag(v^{k_1}, …, v^{k_n}).
    pub fn diag_powers(p: u64, powers: &[i64]) -> Self {
        let n = powers.len();
        let mut m = Self::zero(n, p);
        for (i, &k) in powers.iter().enumerate() {
            m.set(i, i, Laurent::monomial(p, 1, k));
        }
        m
    }

    /// Integer matrix with constant entries.
    pub fn from_ints(p: u64, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n, p);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, Laurent::constant(p, rows[i][j]));
            }
        }
        m
    }

    /// The symplectic form with rows (0,0,0,1), (0,0,1,0), (0,−1,0,0), (−1,0,0,0).
    pub fn form_j(p: u64) -> Self {
        Self::from_ints(p, &[vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, -1, 0, 0], vec![-1, 0, 0, 0]])
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Laurent) {
        self.entries[i * self.n + j] = x;
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zero(n, self.p);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Laurent::zero(self.p);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() && a.prec().is_none() || b.is_zero() && b.prec().is_none() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_all(mats: &[&LaurentMatrix]) -> LaurentMatrix {
        let mut it = mats.iter();
        let first = (*it.next().expect("nonempty product")).clone();
        it.fold(first, |acc, m| acc.mul(m))
    }

    pub fn transpose(&self) -> LaurentMatrix {
        let mut out = Self::zero(self.n, self.p);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale_by(&self, c: &Laurent) -> LaurentMatrix {
        LaurentMatrix { entries: self.entries.iter().map(|x| x.mul(c)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(), ..self.clone() }
    }

    pub fn frobenius(&self) -> LaurentMatrix {
        LaurentMatrix { entries: self.entries.iter().map(|x| x.frobenius()).collect(), ..self.clone() }
    }

    pub fn with_prec(&self, prec: i64) -> LaurentMatrix {
        LaurentMatrix { entries: self.entries.iter().map(|x| x.with_prec(prec)).collect(), ..self.clone() }
    }

    fn minor(&self, row: usize, col: usize) -> LaurentMatrix {
        let n = self.n - 1;
        let mut out = Self::zero(n, self.p);
        for (ii, i) in (0..self.n).filter(|&i| i != row).enumerate() {
            for (jj, j) in (0..self.n).filter(|&j| j != col).enumerate() {
                out.set(ii, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Laurent {
        match self.n {
            0 => Laurent::one(self.p),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = Laurent::zero(self.p);
                for j in 0..self.n {
                    let a = self.get(0, j);
                    if a.is_zero() && a.prec().is_none() {
                        continue;
                    }
                    let term = a.mul(&self.minor(0, j).det());
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    /// Inverse through the adjugate; the determinant must be a unit series.
    pub fn inverse(&self, default_prec: i64) -> Result<LaurentMatrix> {
        let dinv = self.det().inverse(default_prec)?;
        let n = self.n;
        let mut out = Self::zero(n, self.p);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                let c = if (i + j) % 2 == 0 { c } else { c.neg() };
                out.set(i, j, c.mul(&dinv));
            }
        }
        Ok(out)
    }

    /// Entrywise equality below v^n.
    pub fn eq_to(&self, other: &LaurentMatrix, n: i64) -> Result<bool> {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.eq_to(b, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact equality of exact matrices.
    pub fn exact_eq(&self, other: &LaurentMatrix) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a.prec().is_none() && b.prec().is_none() && a == b)
    }

    /// The scalar c with Aᵀ J A = c·J, if A is symplectic up to similitude
    /// (exactly, or below v^n for truncated entries).
    pub fn similitude(&self, n: Option<i64>) -> Result<Option<Laurent>> {
        let j = Self::form_j(self.p);
        let lhs = Self::mul_all(&[&self.transpose(), &j, self]);
        // the (0,3) entry of c·J is c
        let c = lhs.get(0, 3).clone();
        let rhs = j.scale_by(&c);
        let same = match n {
            Some(n) => lhs.eq_to(&rhs, n)?,
            None => lhs.sub(&rhs).entries.iter().all(|x| x.is_zero() && x.prec().is_none()),
        };
        Ok(if same { Some(c) } else { None })
    }

    /// Entries as lists of (exponent, coefficient) pairs.
    pub fn term_lists(&self) -> Vec<Vec<Vec<(i64, u64)>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).terms()).collect()).collect()
    }

    /// Upper triangular modulo v with entries in F_p[[v]] and unit diagonal.
    pub fn is_iwahori(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let x = self.get(i, j);
                let need = match i.cmp(&j) {
                    std::cmp::Ordering::Greater => 1,
                    _ => 0,
                };
                if x.valuation().map_or(false, |v| v < need) {
                    return false;
                }
                if i == j && x.valuation() != Some(0) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_inverse() {
        let p = 37;
        let x = Laurent::series(p, 0, &[1, 1], 20);
        let y = x.inverse(20).unwrap();
        assert!(x.mul(&y).eq_to(&Laurent::one(p), 20).unwrap());
        assert_eq!(y.coeff(3), p - 1);
    }

    #[test]
    fn precision_is_tracked() {
        let p = 5;
        let x = Laurent::series(p, 0, &[1, 2, 3], 3);
        let y = x.shift(-2);
        assert_eq!(y.prec(), Some(1));
        assert!(y.eq_to(&y, 2).is_err());
        assert_eq!(x.frobenius().coeff(5), 2);
    }

    #[test]
    fn matrix_inverse_and_similitude() {
        let p = 37;
        let j = LaurentMatrix::form_j(p);
        let jinv = j.inverse(10).unwrap();
        assert!(j.mul(&jinv).exact_eq(&LaurentMatrix::identity(4, p)));
        let d = LaurentMatrix::diag_powers(p, &[3, 2, 0, -1]);
        assert_eq!(d.similitude(None).unwrap(), Some(Laurent::monomial(p, 1, 2)));
        let bad = LaurentMatrix::diag_powers(p, &[3, 2, 1, -1]);
        assert_eq!(bad.similitude(None).unwrap(), None);
    }
}
