use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer power series in `u`, truncated after `u^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesInt {
    coeffs: Vec<BigInt>,
}

impl PowerSeriesInt {
    pub fn zero(order: usize) -> Self {
        PowerSeriesInt {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Coefficients beyond the truncation order are dropped; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        PowerSeriesInt { coeffs }
    }

    /// `1 / (1 - r u) = sum r^k u^k`.
    pub fn geometric(ratio: &BigInt, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = BigInt::one();
        for _ in 0..=order {
            coeffs.push(c.clone());
            c *= ratio;
        }
        PowerSeriesInt { coeffs }
    }

    /// `(1 - u^step)^{-count} = sum_k C(count + k - 1, k) u^{step k}`.
    pub fn inverse_power_of_binomial(step: usize, count: &BigInt, order: usize) -> Self {
        assert!(step >= 1);
        let mut s = Self::zero(order);
        let mut binom = BigInt::one();
        let mut k = 0usize;
        while k * step <= order {
            s.coeffs[k * step] = binom.clone();
            // C(c+k, k+1) = C(c+k-1, k) * (c+k) / (k+1)
            binom = binom * (count + BigInt::from(k)) / BigInt::from(k + 1);
            k += 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}
