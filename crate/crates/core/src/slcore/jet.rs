//! Second-order forward-mode automatic differentiation.
//!
//! Coefficient functions p, q, r of a Sturm–Liouville problem are written
//! once as functions of a [`Jet`]; evaluating them at `Jet::var(x)` yields the
//! value and the first two derivatives exactly (up to rounding).  The
//! Liouville potential needs (pr)′ and (pr)″, which therefore never come
//! from finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Truncated Taylor jet (f, f′, f″) at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    /// Value f(x).
    pub v: f64,
    /// First derivative f′(x).
    pub d1: f64,
    /// Second derivative f″(x).
    pub d2: f64,
}

impl Jet {
    /// The independent variable x (derivative 1).
    pub fn var(x: f64) -> Jet {
        Jet { v: x, d1: 1.0, d2: 0.0 }
    }

    /// A constant.
    pub fn cst(c: f64) -> Jet {
        Jet { v: c, d1: 0.0, d2: 0.0 }
    }

    /// Applies a scalar function with derivatives (g, g′, g″) at the value.
    fn chain(self, g: f64, g1: f64, g2: f64) -> Jet {
        Jet { v: g, d1: g1 * self.d1, d2: g2 * self.d1 * self.d1 + g1 * self.d2 }
    }

    /// x^e for real e (x > 0 unless e is an integer).
    pub fn powf(self, e: f64) -> Jet {
        let g = self.v.powf(e);
        let g1 = e * self.v.powf(e - 1.0);
        let g2 = e * (e - 1.0) * self.v.powf(e - 2.0);
        self.chain(g, g1, g2)
    }

    /// Natural logarithm.
    pub fn ln(self) -> Jet {
        self.chain(self.v.ln(), 1.0 / self.v, -1.0 / (self.v * self.v))
    }

    /// Exponential.
    pub fn exp(self) -> Jet {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    /// Square root.
    pub fn sqrt(self) -> Jet {
        self.powf(0.5)
    }

    /// Sine.
    pub fn sin(self) -> Jet {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    /// Cosine.
    pub fn cos(self) -> Jet {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    /// Reciprocal 1/f.
    pub fn recip(self) -> Jet {
        let v = self.v;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { v: -self.v, d1: -self.d1, d2: -self.d2 }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet { v: self.v + c, ..self }
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, c: f64) -> Jet {
        Jet { v: self.v - c, ..self }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet { v: self.v * c, d1: self.d1 * c, d2: self.d2 * c }
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, c: f64) -> Jet {
        Jet { v: self.v / c, d1: self.d1 / c, d2: self.d2 / c }
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, j: Jet) -> Jet {
        Jet { v: self - j.v, d1: -j.d1, d2: -j.d2 }
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_quotient_rules() {
        let x = Jet::var(0.7);
        // f = x² sin x / (1 + x)
        let f = (x * x * x.sin()) / (x + 1.0);
        let h = 1e-4;
        let g = |t: f64| t * t * t.sin() / (1.0 + t);
        let d1 = (g(0.7 + h) - g(0.7 - h)) / (2.0 * h);
        let d2 = (g(0.7 + h) - 2.0 * g(0.7) + g(0.7 - h)) / (h * h);
        assert!((f.v - g(0.7)).abs() < 1e-15);
        assert!((f.d1 - d1).abs() < 1e-8);
        assert!((f.d2 - d2).abs() < 1e-6);
    }

    #[test]
    fn power_rule() {
        let x = Jet::var(2.0);
        let f = x.powf(1.5);
        assert!((f.d1 - 1.5 * 2f64.sqrt()).abs() < 1e-14);
        assert!((f.d2 - 0.75 / 2f64.sqrt()).abs() < 1e-14);
    }
}
