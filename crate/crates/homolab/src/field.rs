//! Prime field arithmetic with canonical representatives in `[0, p)`.

/// A prime field `F_p` with `2 <= p < 2^31`.
///
/// Elements are represented as `u64` in the canonical range `[0, p)`.
/// All arithmetic is exact and total; `inv` panics on zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Creates the field, checking that `p` is prime and in range.
    pub fn new(p: u64) -> Result<Self, crate::error::Error> {
        if p < 2 || p >= (1 << 31) {
            return Err(crate::error::Error::InvalidField(p));
        }
        if !is_prime(p) {
            return Err(crate::error::Error::InvalidField(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // p < 2^31 so the product fits in u64
        (a * b) % self.p
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (a as i64, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        self.reduce_i64(s0)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(1 << 31).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(32003).unwrap();
        for a in 1..200u64 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn canonical_range() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce_i64(-1), 6);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(0), 0);
    }
}
