//! Finite sums of bi-monomials `c · z^a z̄^b w^c w̄^d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::disk::DiskFunction;
use crate::error::Error;

/// Exponents `[a, b, c, d]` of `z^a z̄^b w^c w̄^d`.
pub type Exponents = [u32; 4];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonomialSymbol {
    terms: BTreeMap<Exponents, Complex64>,
}

impl MonomialSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn monomial(c: impl Into<Complex64>, e: Exponents) -> Self {
        Self::from_terms([(c.into(), e)])
    }

    pub fn z() -> Self {
        Self::monomial(1.0, [1, 0, 0, 0])
    }

    pub fn zbar() -> Self {
        Self::monomial(1.0, [0, 1, 0, 0])
    }

    pub fn w() -> Self {
        Self::monomial(1.0, [0, 0, 1, 0])
    }

    pub fn wbar() -> Self {
        Self::monomial(1.0, [0, 0, 0, 1])
    }

    pub fn from_terms<I: IntoIterator<Item = (Complex64, Exponents)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (c, e) in terms {
            out.add_term(c, e);
        }
        out
    }

    pub(crate) fn add_term(&mut self, c: Complex64, e: Exponents) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, Complex64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, e: Exponents) -> Complex64 {
        self.terms.get(&e).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// No conjugate exponents: `b = d = 0` in every term.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|e| e[1] == 0 && e[3] == 0)
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms().map(|([a, b, c, d], k)| (k.conj(), [b, a, d, c])))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (c * s, e)))
    }

    /// Multiplies by `w^n`.
    pub fn shift_w(&self, n: u32) -> Self {
        Self::from_terms(self.terms().map(|([a, b, c, d], k)| (k, [a, b, c + n, d])))
    }

    /// Multiplies by `z^n`.
    pub fn shift_z(&self, n: u32) -> Self {
        Self::from_terms(self.terms().map(|([a, b, c, d], k)| (k, [a + n, b, c, d])))
    }

    /// Largest index shift `max(a − b, c − d, 0)` of multiplication by the symbol.
    pub fn max_shift(&self) -> u32 {
        self.terms
            .keys()
            .map(|&[a, b, c, d]| a.saturating_sub(b).max(c.saturating_sub(d)))
            .max()
            .unwrap_or(0)
    }

    /// Net angular frequencies `(a − b, c − d)` of the terms.
    pub fn frequencies(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms
            .keys()
            .map(|&[a, b, c, d]| (a as i64 - b as i64, c as i64 - d as i64))
    }

    /// Total degree in `w` and `w̄`.
    pub fn w_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[2] + e[3]).max().unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.terms()
            .map(|([a, b, c, d], k)| k * z.powu(a) * z.conj().powu(b) * w.powu(c) * w.conj().powu(d))
            .sum()
    }

    /// Restriction to the horizontal disk `{(ζ, w₀)}` as a function of `ζ`.
    pub fn restrict_horizontal(&self, w0: Complex64) -> DiskFunction {
        DiskFunction::from_terms(
            self.terms()
                .map(|([a, b, c, d], k)| (k * w0.powu(c) * w0.conj().powu(d), a, b)),
        )
    }

    /// Restriction to the vertical disk `{(z₀, ζ)}` as a function of `ζ`.
    pub fn restrict_vertical(&self, z0: Complex64) -> DiskFunction {
        DiskFunction::from_terms(
            self.terms()
                .map(|([a, b, c, d], k)| (k * z0.powu(a) * z0.conj().powu(b), c, d)),
        )
    }
}

impl Add for &MonomialSymbol {
    type Output = MonomialSymbol;
    fn add(self, rhs: &MonomialSymbol) -> MonomialSymbol {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &MonomialSymbol {
    type Output = MonomialSymbol;
    fn sub(self, rhs: &MonomialSymbol) -> MonomialSymbol {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(-c, e);
        }
        out
    }
}

impl Mul for &MonomialSymbol {
    type Output = MonomialSymbol;
    fn mul(self, rhs: &MonomialSymbol) -> MonomialSymbol {
        let mut out = MonomialSymbol::zero();
        for (e, c) in self.terms() {
            for (f, k) in rhs.terms() {
                out.add_term(c * k, [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]]);
            }
        }
        out
    }
}

impl fmt::Display for MonomialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if c != Complex64::new(1.0, 0.0) || e == [0; 4] {
                factors.push(if c.im == 0.0 { format!("{}", c.re) } else { format!("({c})") });
            }
            for (name, p) in ["z", "zbar", "w", "wbar"].iter().zip(e) {
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses sums of products such as `z`, `zbar`, `2*z^2*wbar - 0.5*w`.
/// Coefficients are real; complex coefficients go through term lists.
impl FromStr for MonomialSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: String| Error::InvalidParameter(format!("symbol `{s}`: {msg}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty expression".into()));
        }
        let mut out = MonomialSymbol::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1.0, &rest[1..]),
                b'-' => (-1.0, &rest[1..]),
                _ => (1.0, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad("dangling sign".into()));
            }
            let mut coeff = sign;
            let mut e = [0u32; 4];
            for factor in term.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let slot = match base {
                    "z" => 0,
                    "zbar" => 1,
                    "w" => 2,
                    "wbar" => 3,
                    _ => {
                        let v: f64 = base.parse().map_err(|_| bad(format!("unknown factor `{base}`")))?;
                        coeff *= v.powi(power as i32);
                        continue;
                    }
                };
                e[slot] += power;
            }
            out.add_term(Complex64::new(coeff, 0.0), e);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_shortcuts() {
        assert_eq!("zbar".parse::<MonomialSymbol>().unwrap(), MonomialSymbol::zbar());
        assert_eq!("z + zbar".parse::<MonomialSymbol>().unwrap(), &MonomialSymbol::z() + &MonomialSymbol::zbar());
        let s: MonomialSymbol = "2*z^2*wbar - 0.5*w".parse().unwrap();
        assert_eq!(s.coefficient([2, 0, 0, 1]), Complex64::new(2.0, 0.0));
        assert_eq!(s.coefficient([0, 0, 1, 0]), Complex64::new(-0.5, 0.0));
        assert_eq!("1".parse::<MonomialSymbol>().unwrap(), MonomialSymbol::constant(1.0));
        assert!("zz".parse::<MonomialSymbol>().is_err());
        assert!("z +".parse::<MonomialSymbol>().is_err());
        assert!("".parse::<MonomialSymbol>().is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let z = MonomialSymbol::z();
        assert!((&z - &z).is_empty());
    }

    #[test]
    fn restriction_to_disks() {
        let s: MonomialSymbol = "zbar*w + 3*w^2".parse().unwrap();
        let h = s.restrict_horizontal(Complex64::new(2.0, 0.0));
        assert_eq!(h.coefficient(0, 1), Complex64::new(2.0, 0.0));
        assert_eq!(h.coefficient(0, 0), Complex64::new(12.0, 0.0));
        let v = MonomialSymbol::zbar().restrict_vertical(Complex64::new(0.5, 0.0));
        assert!(v.is_holomorphic());
    }

    #[test]
    fn max_shift_and_frequencies() {
        let s: MonomialSymbol = "z^3*zbar + w^2*wbar^5".parse().unwrap();
        assert_eq!(s.max_shift(), 2);
        assert_eq!(MonomialSymbol::zbar().max_shift(), 0);
        let f: Vec<_> = s.frequencies().collect();
        assert!(f.contains(&(2, 0)) && f.contains(&(0, -3)));
    }

    fn arb_symbol() -> impl Strategy<Value = MonomialSymbol> {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0, prop::array::uniform4(0u32..3)), 0..5)
            .prop_map(|ts| MonomialSymbol::from_terms(ts.into_iter().map(|(re, im, e)| (Complex64::new(re, im), e))))
    }

    proptest! {
        #[test]
        fn display_round_trips_real_symbols(ts in prop::collection::vec((-3i32..3, prop::array::uniform4(0u32..3)), 0..5)) {
            let s = MonomialSymbol::from_terms(ts.into_iter().map(|(c, e)| (Complex64::new(c as f64, 0.0), e)));
            let text = s.to_string();
            prop_assert_eq!(text.replace("+ -", "- ").parse::<MonomialSymbol>().unwrap(), s);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_symbol(), b in arb_symbol(), zr in -1.0f64..1.0, wi in -1.0f64..1.0) {
            let z = Complex64::new(zr, 0.3);
            let w = Complex64::new(0.2, wi);
            let lhs = (&a * &b).eval(z, w);
            let rhs = a.eval(z, w) * b.eval(z, w);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
            prop_assert!((a.conj().eval(z, w) - a.eval(z, w).conj()).norm() < 1e-12 * (1.0 + lhs.norm()));
        }
    }
}
