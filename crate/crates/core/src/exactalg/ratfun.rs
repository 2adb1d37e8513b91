//! Normalized rational functions in one variable over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactError, IntPoly};

/// A quotient `num / den` of integer polynomials in canonical form.
///
/// Canonical form means:
/// * `den != 0`,
/// * `num` and `den` are coprime over `Q[t]`,
/// * the integer content of `num` and `den` taken together is 1,
/// * the lowest nonzero coefficient of `den` is positive.
///
/// Every constructor and every arithmetic operation returns a value in this
/// form, so structural equality coincides with equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: IntPoly,
    den: IntPoly,
}

/// The four field operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`.
pub fn arith(a: &RatFun, b: &RatFun, op: ArithOp) -> Result<RatFun, ExactError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl RatFun {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFun {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPoly::from(c))
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        Self::from_poly(IntPoly::monomial(1, k))
    }

    /// `1 / (1 - t^k)` for `k >= 1`.
    pub fn geometric(k: usize) -> Self {
        assert!(k >= 1, "geometric series needs a positive step");
        Self::normalized(IntPoly::one(), IntPoly::one_minus_t_pow(k))
    }

    fn normalized(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num,
                den: IntPoly::one(),
            };
        }
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let c = num.content().gcd(&den.content());
        let sign_negative = den.lowest_coeff().is_some_and(Signed::is_negative);
        let c = if sign_negative { -c } else { c };
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RatFun { num, den }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the function is a formal power series at `t = 0`.
    pub fn is_power_series(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// `Some(p)` when the denominator is a unit, i.e. the function is a polynomial.
    pub fn as_poly(&self) -> Option<IntPoly> {
        if self.den.is_constant() {
            let d = &self.den.coeffs()[0];
            if d.is_one() {
                return Some(self.num.clone());
            }
        }
        None
    }

    pub fn checked_div(&self, other: &RatFun) -> Result<RatFun, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn recip(&self) -> Result<RatFun, ExactError> {
        RatFun::one().checked_div(self)
    }

    /// Multiplies by `t^d`; negative `d` is a Laurent shift carried into the
    /// denominator.
    pub fn monomial_shift(&self, d: i64) -> RatFun {
        match d.cmp(&0) {
            std::cmp::Ordering::Equal => self.clone(),
            std::cmp::Ordering::Greater => {
                Self::normalized(self.num.shift_up(d as usize), self.den.clone())
            }
            std::cmp::Ordering::Less => {
                Self::normalized(self.num.clone(), self.den.shift_up((-d) as usize))
            }
        }
    }

    /// Coefficients `c_0..=c_n` of the power-series expansion at `t = 0`.
    ///
    /// Uses the recurrence `den(0) c_k = num_k - Σ_{i>=1} den_i c_{k-i}`.
    pub fn expand(&self, n: usize) -> Result<Vec<BigInt>, ExactError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(ExactError::NotPowerSeries);
        }
        let den = self.den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for (i, di) in den.iter().enumerate().skip(1).take(k) {
                if !di.is_zero() {
                    acc -= di * &out[k - i];
                }
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(ExactError::NonIntegralExpansion { degree: k });
            }
            out.push(q);
        }
        Ok(out)
    }

    /// Expansion as `i128`s; convenient in tests and for comparison with
    /// enumeration counts. Panics if a coefficient overflows.
    pub fn expand_i128(&self, n: usize) -> Result<Vec<i128>, ExactError> {
        Ok(self
            .expand(n)?
            .into_iter()
            .map(|c| i128::try_from(c).expect("coefficient fits in i128"))
            .collect())
    }

    /// Factors the denominator as `c * t^a * Π (1 - t^k)` if possible.
    ///
    /// Returns the exponents `k` in descending order together with `a`.
    pub fn cyclotomic_denominator(&self) -> Option<(usize, Vec<usize>)> {
        let v = self.den.valuation()?;
        let rest = self.den.shift_down(v);
        let c = rest.coeff(0);
        if !c.is_one() {
            return None;
        }
        let mut factors = Vec::new();
        if split_one_minus_powers(&rest, usize::MAX, &mut factors) {
            Some((v, factors))
        } else {
            None
        }
    }

    /// Numerator and factored denominator for display. When the reduced
    /// denominator is not itself a product of `(1 - t^k)`, it is enlarged to
    /// the smallest such product found greedily and the numerator scaled to
    /// match.
    fn display_parts(&self) -> (IntPoly, Option<(usize, Vec<usize>)>) {
        if let Some(f) = self.cyclotomic_denominator() {
            return (self.num.clone(), Some(f));
        }
        let Some(v) = self.den.valuation() else {
            return (self.num.clone(), None);
        };
        let rest = self.den.shift_down(v);
        let Some(ks) = cover_by_one_minus_powers(&rest) else {
            return (self.num.clone(), None);
        };
        let full = ks
            .iter()
            .fold(IntPoly::one(), |acc, &k| acc * IntPoly::one_minus_t_pow(k));
        match full.div_exact(&rest) {
            Some(cof) => (&self.num * &cof, Some((v, ks))),
            None => (self.num.clone(), None),
        }
    }

    /// Plain-text rendering with the denominator factored when possible,
    /// e.g. `t^4*(1 - t^2 + t^4)/((1 - t^2)*(1 - t^6))`. Parsable by
    /// [`RatFun::parse`].
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return render_num(&self.num, false);
        }
        let (num_poly, factored) = self.display_parts();
        let num = render_num(&num_poly, false);
        let den = match factored {
            Some((v, ks)) => {
                let mut parts: Vec<String> = Vec::new();
                if v > 0 {
                    parts.push(if v == 1 { "t".into() } else { format!("t^{v}") });
                }
                for k in ks.iter().rev() {
                    parts.push(format!("({})", IntPoly::one_minus_t_pow(*k).to_text()));
                }
                if parts.len() == 1 {
                    parts.remove(0)
                } else {
                    format!("({})", parts.join("*"))
                }
            }
            None => format!("({})", self.den.to_text()),
        };
        let terms = num_poly.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num = if terms > 1 && num_poly.valuation() == Some(0) {
            format!("({num})")
        } else {
            num
        };
        format!("{num}/{den}")
    }

    /// LaTeX rendering as `\frac{..}{..}` with a factored denominator when it
    /// is a product of `(1 - t^k)` terms.
    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            return render_num(&self.num, true);
        }
        let (num_poly, factored) = self.display_parts();
        let num = render_num(&num_poly, true);
        let den = match factored {
            Some((v, ks)) => {
                let mut s = String::new();
                if v == 1 {
                    s.push('t');
                } else if v > 1 {
                    s.push_str(&format!("t^{{{v}}}"));
                }
                for k in ks.iter().rev() {
                    s.push_str(&format!("({})", IntPoly::one_minus_t_pow(*k).to_latex()));
                }
                s
            }
            None => self.den.to_latex(),
        };
        format!("\\frac{{{num}}}{{{den}}}")
    }

    /// Parses expressions such as `t^4(1-t^2+t^4)/((1-t^2)(1-t^6))`.
    pub fn parse(s: &str) -> Result<RatFun, ExactError> {
        super::parse::parse_ratfun(s)
    }
}

/// Pulls out `t^v` from the numerator for display.
fn render_num(p: &IntPoly, latex: bool) -> String {
    let Some(v) = p.valuation() else {
        return "0".into();
    };
    let rest = p.shift_down(v);
    if v == 0 || rest.is_constant() {
        return if latex { p.to_latex() } else { p.to_text() };
    }
    let tp = match (v, latex) {
        (1, _) => "t".to_string(),
        (_, true) => format!("t^{{{v}}}"),
        (_, false) => format!("t^{v}"),
    };
    if latex {
        format!("{tp}\\left({}\\right)", rest.to_latex())
    } else {
        format!("{tp}*({})", rest.to_text())
    }
}

/// Depth-first search for `p = Π (1 - t^k)` with nonincreasing `k <= max_k`.
fn split_one_minus_powers(p: &IntPoly, max_k: usize, out: &mut Vec<usize>) -> bool {
    if p.is_one() {
        return true;
    }
    let Some(deg) = p.degree() else {
        return false;
    };
    for k in (1..=deg.min(max_k)).rev() {
        if let Some(q) = p.div_exact(&IntPoly::one_minus_t_pow(k)) {
            out.push(k);
            if split_one_minus_powers(&q, k, out) {
                return true;
            }
            out.pop();
        }
    }
    false
}

fn euler_phi(mut n: usize) -> usize {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Exponents `k` (descending) of a product `Π (1 - t^k)` divisible by `p`,
/// provided `p` is, up to sign, a product of cyclotomic polynomials.
fn cover_by_one_minus_powers(p: &IntPoly) -> Option<Vec<usize>> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    // φ(d) <= deg forces d <= 2 deg^2
    let ds: Vec<usize> = (1..=2 * deg * deg + 2).filter(|&d| euler_phi(d) <= deg).collect();
    let mut phi_poly: std::collections::BTreeMap<usize, IntPoly> = std::collections::BTreeMap::new();
    let mut mult: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut rem = p.clone();
    for &d in &ds {
        let mut c = IntPoly::one_minus_t_pow(d);
        for (&e, pe) in &phi_poly {
            if d % e == 0 {
                c = c.div_exact(pe)?;
            }
        }
        while let Some(q) = rem.div_exact(&c) {
            rem = q;
            *mult.entry(d).or_default() += 1;
        }
        phi_poly.insert(d, c);
    }
    if rem.degree() != Some(0) || !rem.coeff(0).abs().is_one() {
        return None;
    }
    let mut ks = Vec::new();
    while let Some((&d, _)) = mult.iter().rev().find(|(_, &m)| m > 0) {
        for e in 1..=d {
            if d % e == 0 {
                if let Some(m) = mult.get_mut(&e) {
                    *m = m.saturating_sub(1);
                }
            }
        }
        ks.push(d);
    }
    Some(ks)
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.to_text())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::str::FromStr for RatFun {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RatFun::parse(s)
    }
}

impl From<IntPoly> for RatFun {
    fn from(p: IntPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::from_int(1)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*d/g) with g = gcd(b, d)
        let g = self.den.gcd(&rhs.den);
        let (bg, dg) = if g.is_constant() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &dg) + &(&rhs.num * &bg);
        RatFun::normalized(num, &bg * &rhs.den)
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // Cross-cancel first to keep the intermediate gcd small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::normalized(&a * &c, &b * &d)
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |acc, x| &acc * &x)
    }
}

/// Wire form: `{"num": ["c0", "c1", ...], "den": [...]}` with decimal strings.
#[derive(Serialize, Deserialize)]
struct RatFunWire {
    num: Vec<WireCoeff>,
    den: Vec<WireCoeff>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireCoeff {
    Str(String),
    Int(i64),
}

impl WireCoeff {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            WireCoeff::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|e| format!("bad coefficient {s:?}: {e}")),
            WireCoeff::Int(i) => Ok(BigInt::from(*i)),
        }
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let conv = |p: &IntPoly| {
            p.coeffs()
                .iter()
                .map(|c| WireCoeff::Str(c.to_string()))
                .collect::<Vec<_>>()
        };
        RatFunWire {
            num: conv(&self.num),
            den: conv(&self.den),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = RatFunWire::deserialize(deserializer)?;
        let conv = |v: &[WireCoeff]| -> Result<IntPoly, D::Error> {
            let coeffs = v
                .iter()
                .map(|c| c.to_bigint().map_err(D::Error::custom))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(IntPoly::new(coeffs))
        };
        RatFun::new(conv(&wire.num)?, conv(&wire.den)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFun {
        RatFun::parse(s).unwrap()
    }

    #[test]
    fn reduced_denominator_is_shown_as_product() {
        let f = r("1/(1+t)");
        assert_eq!(f.to_text(), "(1 - t)/(1 - t^2)");
        let g = r("t^3/((1+t^3)*(1-t^2))");
        assert_eq!(g.to_text(), "t^3*(1 - t^3)/((1 - t^2)*(1 - t^6))");
        assert_eq!(r(&g.to_text()), g);
        assert_eq!(r("1/(1-2*t)").to_text(), "1/(1 - 2*t)");
    }

    #[test]
    fn inverse_cancellation() {
        let x = &RatFun::geometric(1) * &RatFun::from_poly(IntPoly::one_minus_t_pow(1));
        assert_eq!(x, RatFun::one());
        assert!(x.as_poly().unwrap().is_one());
    }

    #[test]
    fn geometric_identity() {
        let lhs = &r("t^6/(1-t^6)") + &RatFun::one();
        assert_eq!(lhs, RatFun::geometric(6));
        assert_eq!(lhs.num(), &IntPoly::one());
    }

    #[test]
    fn open_cone_combination_for_rank_two() {
        // (1+t^4+t^8)/(1-t^6)^2 - 2/(1-t^6) + 1
        let a = r("(1+t^4+t^8)/(1-t^6)^2");
        let b = r("2/(1-t^6)");
        let got = &(&a - &b) + &RatFun::one();
        assert_eq!(got, r("t^4(1-t^2+t^4)/((1-t^2)(1-t^6))"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            RatFun::one().checked_div(&RatFun::zero()),
            Err(ExactError::DivisionByZero)
        );
        assert_eq!(
            arith(&RatFun::one(), &RatFun::zero(), ArithOp::Div),
            Err(ExactError::DivisionByZero)
        );
        assert_eq!(
            RatFun::new(IntPoly::one(), IntPoly::zero()),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn canonical_sign_and_content() {
        let x = RatFun::new(IntPoly::from_i64s(&[2, 4]), IntPoly::from_i64s(&[-6, 2])).unwrap();
        assert_eq!(x.num(), &IntPoly::from_i64s(&[-1, -2]));
        assert_eq!(x.den(), &IntPoly::from_i64s(&[3, -1]));
        // lowest nonzero coefficient positive when den(0) = 0
        let y = RatFun::new(IntPoly::one(), IntPoly::from_i64s(&[0, -2, 1])).unwrap();
        assert_eq!(y.den(), &IntPoly::from_i64s(&[0, 2, -1]));
    }

    #[test]
    fn expansions() {
        assert_eq!(r("1/(1-t^2)").expand_i128(5).unwrap(), vec![1, 0, 1, 0, 1, 0]);
        let e = r("t^6/(1-t^6)").expand_i128(18).unwrap();
        for (k, c) in e.iter().enumerate() {
            assert_eq!(*c, i128::from(k > 0 && k % 6 == 0), "degree {k}");
        }
        assert_eq!(
            RatFun::t_pow(1).monomial_shift(-3).expand(2),
            Err(ExactError::NotPowerSeries)
        );
        assert_eq!(
            r("1/(2-t)").expand(3),
            Err(ExactError::NonIntegralExpansion { degree: 0 })
        );
    }

    #[test]
    fn shifts() {
        assert_eq!(RatFun::geometric(6).monomial_shift(4), r("t^4/(1-t^6)"));
        let f = r("t^4(1-t^2+t^4)/((1-t^2)(1-t^6))");
        assert_eq!(f.monomial_shift(-3), r("t(1-t^2+t^4)/((1-t^2)(1-t^6))"));
        assert_eq!(f.monomial_shift(0), f);
        let laurent = RatFun::one().monomial_shift(-2);
        assert!(!laurent.is_power_series());
        assert_eq!(laurent.monomial_shift(2), RatFun::one());
    }

    #[test]
    fn factored_rendering() {
        let f = r("t^4(1-t^2+t^4)/((1-t^2)(1-t^6))");
        assert_eq!(f.to_text(), "t^4*(1 - t^2 + t^4)/((1 - t^2)*(1 - t^6))");
        assert_eq!(
            f.to_latex(),
            "\\frac{t^{4}\\left(1 - t^{2} + t^{4}\\right)}{(1 - t^{2})(1 - t^{6})}"
        );
        assert_eq!(r(&f.to_text()), f);
        assert_eq!(r("t^6/(1-t^6)").to_text(), "t^6/(1 - t^6)");
        assert_eq!(r("1/(1-t^6)^2").cyclotomic_denominator(), Some((0, vec![6, 6])));
        // 1 - t + t^2 is not a product of (1 - t^k)
        assert_eq!(r("1/(1-t+t^2)").cyclotomic_denominator(), None);
        assert_eq!(r("1/(1-t+t^2)").to_text(), "(1 + t - t^3 - t^4)/(1 - t^6)");
    }

    #[test]
    fn json_wire_format() {
        let f = r("t^6/(1-t^6)");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"num":["0","0","0","0","0","0","1"],"den":["1","0","0","0","0","0","-1"]}"#
        );
        let back: RatFun = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let loose: RatFun = serde_json::from_str(r#"{"num":[0,2],"den":[2,0,-2]}"#).unwrap();
        assert_eq!(loose, r("t/(1-t^2)"));
        assert!(serde_json::from_str::<RatFun>(r#"{"num":[1],"den":[]}"#).is_err());
    }
}
