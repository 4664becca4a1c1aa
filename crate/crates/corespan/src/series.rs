//! Truncated bivariate integer series in `q` and `t`, and the product
//! formulas the library verifies against exhaustive enumeration.
//!
//! Coefficients are arbitrary-precision integers; all arithmetic is exact
//! below the truncation orders. Products only ever multiply in factors whose
//! `q`-exponent fits the truncation, since everything beyond is 1 modulo the
//! truncation ideal.

use num_bigint::BigInt;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::abacus;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::statistics::{self, Slope};

/// Coefficients `c[a][b]` of `q^a t^b` for `a <= nq`, `b <= nt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    nq: usize,
    nt: usize,
    coeffs: Vec<Vec<BigInt>>,
}

/// Default truncation order in both variables; enough to see every checked
/// identity while keeping products instant.
pub const DEFAULT_TRUNCATION: usize = 20;

impl BivariateSeries {
    pub fn zero(nq: usize, nt: usize) -> Self {
        BivariateSeries {
            nq,
            nt,
            coeffs: vec![vec![BigInt::ZERO; nt + 1]; nq + 1],
        }
    }

    pub fn one(nq: usize, nt: usize) -> Self {
        Self::monomial(0, 0, nq, nt)
    }

    pub fn monomial(a: usize, b: usize, nq: usize, nt: usize) -> Self {
        let mut s = Self::zero(nq, nt);
        if a <= nq && b <= nt {
            s.coeffs[a][b] = BigInt::from(1);
        }
        s
    }

    pub fn q_truncation(&self) -> usize {
        self.nq
    }

    pub fn t_truncation(&self) -> usize {
        self.nt
    }

    pub fn coeff(&self, a: usize, b: usize) -> &BigInt {
        &self.coeffs[a][b]
    }

    pub fn add_to_coeff(&mut self, a: usize, b: usize, value: i64) {
        if a <= self.nq && b <= self.nt {
            self.coeffs[a][b] += value;
        }
    }

    /// Exact product below the truncation orders (which must match).
    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        assert_eq!((self.nq, self.nt), (other.nq, other.nt));
        let mut out = Self::zero(self.nq, self.nt);
        for a1 in 0..=self.nq {
            for b1 in 0..=self.nt {
                let c1 = &self.coeffs[a1][b1];
                if c1.sign() == num_bigint::Sign::NoSign {
                    continue;
                }
                for a2 in 0..=self.nq - a1 {
                    for b2 in 0..=self.nt - b1 {
                        let c2 = &other.coeffs[a2][b2];
                        if c2.sign() != num_bigint::Sign::NoSign {
                            out.coeffs[a1 + a2][b1 + b2] += c1 * c2;
                        }
                    }
                }
            }
        }
        out
    }

    /// The `t = 1` specialization, collapsing onto `t`-degree 0.
    pub fn eval_t_one(&self) -> BivariateSeries {
        let mut out = Self::zero(self.nq, self.nt);
        for a in 0..=self.nq {
            out.coeffs[a][0] = self.coeffs[a].iter().sum();
        }
        out
    }

    /// Coefficients of `q^a` as a polynomial in `t`, trailing zeros trimmed.
    pub fn q_slice(&self, a: usize) -> Vec<BigInt> {
        let mut slice = self.coeffs[a].clone();
        while slice.last().is_some_and(|c| c.sign() == num_bigint::Sign::NoSign) {
            slice.pop();
        }
        slice
    }
}

impl Serialize for BivariateSeries {
    /// `{"Nq": .., "Nt": .., "coeffs": [[a, b, "value"], ...]}` with
    /// decimal-string coefficients and zero entries skipped.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries: Vec<(usize, usize, String)> = Vec::new();
        for a in 0..=self.nq {
            for b in 0..=self.nt {
                let c = &self.coeffs[a][b];
                if c.sign() != num_bigint::Sign::NoSign {
                    entries.push((a, b, c.to_string()));
                }
            }
        }
        let mut st = serializer.serialize_struct("BivariateSeries", 3)?;
        st.serialize_field("Nq", &self.nq)?;
        st.serialize_field("Nt", &self.nt)?;
        st.serialize_field("coeffs", &entries)?;
        st.end()
    }
}

/// Expansion of `(1 - q^q_exp t^t_exp)^(-power)`: the coefficient of the
/// `m`-th term is `binomial(m + power - 1, power - 1)`.
pub fn geometric_inverse(
    q_exp: usize,
    t_exp: usize,
    power: usize,
    nq: usize,
    nt: usize,
) -> Result<BivariateSeries> {
    if q_exp == 0 {
        return Err(Error::ZeroQExponent);
    }
    let mut out = BivariateSeries::zero(nq, nt);
    let mut coeff = BigInt::from(1);
    let mut m = 0usize;
    while m * q_exp <= nq {
        if m * t_exp <= nt {
            out.coeffs[m * q_exp][m * t_exp] = coeff.clone();
        }
        m += 1;
        coeff = coeff * BigInt::from((power + m - 1) as u64) / BigInt::from(m as u64);
    }
    Ok(out)
}

/// `prod_{m >= 1} (1 - q^(m*step) t^t_exp)^(-power)` truncated.
pub fn geometric_product(
    step: usize,
    t_exp: usize,
    power: usize,
    nq: usize,
    nt: usize,
) -> Result<BivariateSeries> {
    if step == 0 {
        return Err(Error::ZeroQExponent);
    }
    let mut out = BivariateSeries::one(nq, nt);
    if power == 0 {
        return Ok(out);
    }
    let mut m = 1usize;
    while m * step <= nq {
        out = out.mul(&geometric_inverse(m * step, t_exp, power, nq, nt)?);
        m += 1;
    }
    Ok(out)
}

/// Size generating series of the class of partitions with the given core:
/// `q^|mu| * prod (1 - q^(m c))^(-c)`.
pub fn class_series(mu: &Partition, c: u32, nq: usize) -> Result<BivariateSeries> {
    if !abacus::is_core(mu, c) {
        return Err(Error::NotACore(c));
    }
    let shift = BivariateSeries::monomial(mu.size() as usize, 0, nq, 0);
    Ok(shift.mul(&geometric_product(c as usize, 0, c as usize, nq, 0)?))
}

/// `q^|mu| * prod (1 - q^(i c))^(-(c-1)) * prod (1 - q^(j c) t)^(-1)`: the
/// closed form both hook statistics distribute as over the class.
pub fn rhs_series(mu: &Partition, c: u32, nq: usize, nt: usize) -> Result<BivariateSeries> {
    if !abacus::is_core(mu, c) {
        return Err(Error::NotACore(c));
    }
    let shift = BivariateSeries::monomial(mu.size() as usize, 0, nq, nt);
    let untracked = geometric_product(c as usize, 0, c as usize - 1, nq, nt)?;
    let tracked = geometric_product(c as usize, 1, 1, nq, nt)?;
    Ok(shift.mul(&untracked).mul(&tracked))
}

/// Which of the two hook statistics a series sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `sum over the class, |lambda| <= nq, of q^|lambda| t^(h_sign at x)` by
/// direct enumeration. `Plus` needs `x` finite, `Minus` needs `x` nonzero.
pub fn lhs_series(
    mu: &Partition,
    c: u32,
    x: Slope,
    sign: Sign,
    nq: usize,
    nt: usize,
) -> Result<BivariateSeries> {
    match sign {
        Sign::Plus if x.is_infinite() => return Err(Error::DomainMismatch),
        Sign::Minus if x.is_zero() => return Err(Error::DomainMismatch),
        _ => {}
    }
    if !abacus::is_core(mu, c) {
        return Err(Error::NotACore(c));
    }
    let mut out = BivariateSeries::zero(nq, nt);
    let mut n = mu.size();
    while n as usize <= nq {
        for lambda in abacus::enumerate_class(mu, c, n)? {
            let value = match sign {
                Sign::Plus => statistics::h_plus(&lambda, x, c),
                Sign::Minus => statistics::h_minus(&lambda, x, c),
            };
            out.add_to_coeff(n as usize, value as usize, 1);
        }
        n += c as u64;
    }
    Ok(out)
}

/// `prod over i not divisible by c of (1 - q^i)^(-1) * prod (1 - q^(i c)
/// t)^(-1)`: the distribution of the critical statistic over all partitions
/// when `r + s` divides `c`.
pub fn bfn_series(c: u32, nq: usize, nt: usize) -> Result<BivariateSeries> {
    let mut out = geometric_product(c as usize, 1, 1, nq, nt)?;
    for i in 1..=nq {
        if i % c as usize != 0 {
            out = out.mul(&geometric_inverse(i, 0, 1, nq, nt)?);
        }
    }
    Ok(out)
}
