//! Minimal double-double arithmetic used to sum alternating power series.
//!
//! Power series of entire functions (J_ν, Y_n, E_k) suffer from cancellation
//! when |z| is of moderate size: the largest term exceeds the result by a
//! factor of up to e^{|z|}.  Carrying the partial sums and the term recursion
//! in double-double (≈ 32 significant digits) keeps the binary64 result
//! accurate across the whole series region without changing the algorithm.

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::new(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::new(q2)));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::new(q3))
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };

    #[inline]
    pub fn from_c(z: Complex64) -> CDd {
        CDd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }

    #[inline]
    pub fn from_dd(x: Dd) -> CDd {
        CDd { re: x, im: Dd::ZERO }
    }

    #[inline]
    pub fn to_c(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, o: CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    #[inline]
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, x: Dd) -> CDd {
        CDd { re: self.re.mul(x), im: self.im.mul(x) }
    }

    #[inline]
    pub fn div_dd(self, x: Dd) -> CDd {
        CDd { re: self.re.div(x), im: self.im.div(x) }
    }

    #[inline]
    pub fn norm_f64(self) -> f64 {
        self.to_c().norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_recovers_lost_digits() {
        // (1 + 2^-60) - 1 is lost in binary64 but kept in double-double.
        let a = Dd::new(1.0).add(Dd::new(2f64.powi(-60)));
        let d = a.sub(Dd::new(1.0));
        assert_eq!(d.to_f64(), 2f64.powi(-60));
    }

    #[test]
    fn dd_division_is_accurate() {
        let third = Dd::new(1.0).div(Dd::new(3.0));
        let back = third.mul(Dd::new(3.0)).sub(Dd::new(1.0));
        assert!(back.to_f64().abs() < 1e-31);
    }
}
