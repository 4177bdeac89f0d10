//! Exact integrals of trig polynomials over `[-q*pi, p*pi]`, and the
//! count-based closed form for mixed sine/cosine products.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::counting::{dp_count, dp_parity_count, Count, ParityQuery};
use crate::error::{Error, Result};
use crate::instance::{Instance, ProductSpec};
use crate::limits::Limits;
use crate::rational::{ExactValue, Rational};
use crate::werner::{expand_cos_product, TrigPolynomial};

/// The interval `[-q*pi, p*pi]`, with `-q <= p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PiBounds {
    p: i64,
    q: i64,
}

impl PiBounds {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if (-(q as i128)) > p as i128 {
            return Err(Error::range(
                "lower bound -q",
                -(q as i128),
                format!("(-inf, p = {p}]"),
            ));
        }
        Ok(PiBounds { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `p + q`, the interval length in units of pi.
    pub fn span(&self) -> i128 {
        self.p as i128 + self.q as i128
    }

    pub fn lower(&self) -> f64 {
        -(self.q as f64) * std::f64::consts::PI
    }

    pub fn upper(&self) -> f64 {
        self.p as f64 * std::f64::consts::PI
    }
}

/// `(-1)^(k * j)` for integer `j` of either sign.
fn alternating(k: u64, j: i64) -> i64 {
    if k % 2 == 1 && j.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// Term-by-term exact integral over `[-q*pi, p*pi]`.
///
/// The constant cosine term contributes `c0 (p+q) pi`; cosines of positive
/// frequency vanish; `s sin(kx)` contributes `s ((-1)^(kq) - (-1)^(kp)) / k`.
pub fn exact_integral(poly: &TrigPolynomial, bounds: PiBounds) -> ExactValue {
    let mut pi_coefficient = Rational::zero();
    let mut constant = Rational::zero();
    for (k, c) in poly.terms() {
        if k == 0 {
            pi_coefficient += &c.cos * &Rational::from_integer(BigInt::from(bounds.span()));
            continue;
        }
        if c.sin.is_zero() {
            continue;
        }
        let diff = alternating(k, bounds.q) - alternating(k, bounds.p);
        if diff != 0 {
            constant += &c.sin * &Rational::new(diff, BigInt::from(k));
        }
    }
    ExactValue::new(pi_coefficient, constant)
}

/// Counts solutions as `2^n / pi * integral_0^pi cos(b0 x)...cos(bn x) dx`.
pub fn count_by_integration(instance: &Instance, limits: &Limits) -> Result<Count> {
    let poly = expand_cos_product(instance, limits)?;
    let value = exact_integral(&poly, PiBounds { p: 1, q: 0 });
    assert!(
        value.constant.is_zero(),
        "cosine product integral over [0, pi] has rational part {} for {instance}",
        value.constant
    );
    let scaled = &value.pi_coefficient * &Rational::from_integer(BigInt::one() << instance.n());
    let count = scaled
        .to_integer()
        .and_then(|i| i.to_biguint())
        .unwrap_or_else(|| panic!("2^n * integral / pi = {scaled} is not a count for {instance}"));
    Ok(Count::from(count))
}

/// Closed-form integral of a mixed product computed from counts alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    /// The value of the integral.
    pub value: ExactValue,
    /// The same expression with the factor pi left off. Equal to
    /// `value.pi_coefficient`; reported so both readings can be compared.
    pub without_pi: Rational,
    /// Unrestricted count of solutions.
    pub count: Count,
    /// Solutions with an even number of `+` signs among `b1..bm`.
    pub even_prefix_count: Count,
}

/// Integral over `[-q*pi, p*pi]` of `sin(b0 x)...sin(bm x) cos(b(m+1) x)...cos(bn x)`
/// for `0 <= m <= n` and `p + q` even:
///
/// ```text
/// m = 0, 2 (mod 4):  0
/// m = 1 (mod 4):    -(p+q) (2 T_even - T) pi / 2^n
/// m = 3 (mod 4):     (p+q) (2 T_even - T) pi / 2^n
/// ```
///
/// where `T` is the solution count and `T_even` the count with an even number
/// of `+` signs among `b1..bm`. Counts come from the DP engines.
pub fn closed_form_integral(spec: &ProductSpec, bounds: PiBounds) -> Result<ClosedForm> {
    if spec.m() < 0 {
        return Err(Error::Precondition(
            "the closed form needs at least one sine factor (m >= 0); \
             for a pure cosine product (m = -1) use the exact integral or the count identity"
                .into(),
        ));
    }
    if bounds.span().rem_euclid(2) != 0 {
        return Err(Error::Precondition(format!(
            "the closed form requires p + q to be even, got p = {}, q = {} (p + q = {})",
            bounds.p,
            bounds.q,
            bounds.span()
        )));
    }
    let instance = spec.instance();
    let query = ParityQuery::new(instance.clone(), spec.m())?;
    let count = dp_count(instance)?;
    let even_prefix_count = dp_parity_count(&query)?;

    let sign = match spec.m().rem_euclid(4) {
        1 => -1,
        3 => 1,
        _ => 0,
    };
    let without_pi = if sign == 0 {
        Rational::zero()
    } else {
        let diff = BigInt::from(2) * even_prefix_count.to_bigint() - count.to_bigint();
        let numer = diff * BigInt::from(bounds.span()) * BigInt::from(sign);
        &Rational::from_integer(numer) * &Rational::inverse_power_of_two(instance.n())
    };
    Ok(ClosedForm {
        value: ExactValue::pi_multiple(without_pi.clone()),
        without_pi,
        count,
        even_prefix_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::werner::expand_mixed_product;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn b(p: i64, q: i64) -> PiBounds {
        PiBounds::new(p, q).unwrap()
    }

    fn sin_poly(k: i128, s: Rational) -> TrigPolynomial {
        let mut poly = TrigPolynomial::zero();
        poly.add_sin(k, &s);
        poly
    }

    #[test]
    fn bounds_validation() {
        assert!(PiBounds::new(1, 1).is_ok());
        assert!(PiBounds::new(-2, 2).is_ok());
        assert!(PiBounds::new(-3, 2).is_err());
    }

    #[test]
    fn exact_integral_examples() {
        assert_eq!(
            exact_integral(&TrigPolynomial::one(), b(1, 1)),
            ExactValue::pi_multiple(r(2, 1))
        );
        let sin_x = sin_poly(1, Rational::one());
        assert_eq!(
            exact_integral(&sin_x, b(1, 0)),
            ExactValue::rational(r(2, 1))
        );
        assert_eq!(exact_integral(&sin_x, b(1, 1)), ExactValue::zero());
        // integral_{-2pi}^{pi} sin(3x) dx = (cos(-6 pi) - cos(3 pi)) / 3 = 2/3
        assert_eq!(
            exact_integral(&sin_poly(3, Rational::one()), b(1, 2)),
            ExactValue::rational(r(2, 3))
        );
        // integral_{pi}^{2pi} sin(x) dx = -2, written as q = -1.
        assert_eq!(
            exact_integral(&sin_x, b(2, -1)),
            ExactValue::rational(r(-2, 1))
        );
    }

    #[test]
    fn degenerate_interval_is_zero() {
        let poly = expand_mixed_product(
            &ProductSpec::new(Instance::new(2, [1, 2, 3]), 0).unwrap(),
            &Limits::default(),
        )
        .unwrap();
        for p in -3..=3 {
            assert!(exact_integral(&poly, b(p, -p)).is_zero());
        }
    }

    #[test]
    fn worked_mixed_integral_is_quarter_pi() {
        let spec = ProductSpec::new(Instance::new(2, [1, 2, 3]), 1).unwrap();
        let poly = expand_mixed_product(&spec, &Limits::default()).unwrap();
        assert_eq!(
            exact_integral(&poly, b(1, 1)),
            ExactValue::pi_multiple(r(1, 4))
        );
        let closed = closed_form_integral(&spec, b(1, 1)).unwrap();
        assert_eq!(closed.value, ExactValue::pi_multiple(r(1, 4)));
        assert_eq!(closed.without_pi, r(1, 4));
        assert_eq!(closed.count, 1);
        assert_eq!(closed.even_prefix_count, 0);
    }

    #[test]
    fn closed_form_vanishing_branches() {
        let x = Instance::new(0, [1, 2, 3]);
        let m0 = ProductSpec::new(x.clone(), 0).unwrap();
        assert!(closed_form_integral(&m0, b(1, 1)).unwrap().value.is_zero());
        let m2 = ProductSpec::new(x, 2).unwrap();
        assert!(closed_form_integral(&m2, b(2, 0)).unwrap().value.is_zero());
    }

    #[test]
    fn closed_form_preconditions() {
        let x = Instance::new(0, [1, 2, 3]);
        let spec = ProductSpec::new(x.clone(), 1).unwrap();
        let err = closed_form_integral(&spec, b(1, 0)).unwrap_err();
        assert!(matches!(&err, Error::Precondition(msg) if msg.contains("p + q to be even")));
        let cos = ProductSpec::cosines(x);
        let err = closed_form_integral(&cos, b(1, 1)).unwrap_err();
        assert!(matches!(&err, Error::Precondition(msg) if msg.contains("m >= 0")));
    }

    #[test]
    fn count_by_integration_examples() {
        let l = Limits::default();
        assert_eq!(
            count_by_integration(&Instance::new(0, [1, 2, 3]), &l).unwrap(),
            2
        );
        assert_eq!(count_by_integration(&Instance::new(1, []), &l).unwrap(), 0);
        assert_eq!(count_by_integration(&Instance::new(0, []), &l).unwrap(), 1);
        assert_eq!(
            count_by_integration(&Instance::new(2, [1, 2, 3]), &l).unwrap(),
            1
        );
    }

    proptest! {
        #[test]
        fn interval_additivity(
            t in -6i64..=6,
            c in prop::collection::vec(-6i64..=6, 0..=5),
            m in -1i64..=5,
            q in -3i64..=3,
            d1 in 0i64..=3,
            d2 in 0i64..=3,
        ) {
            let inst = Instance::new(t, c);
            prop_assume!(m <= inst.n() as i64);
            let poly = expand_mixed_product(&ProductSpec::new(inst, m).unwrap(), &Limits::default()).unwrap();
            // [-q pi, r pi] + [r pi, p pi] with r = -q + d1, p = r + d2.
            let r_mid = -q + d1;
            let p = r_mid + d2;
            let whole = exact_integral(&poly, b(p, q));
            let left = exact_integral(&poly, b(r_mid, q));
            let right = exact_integral(&poly, b(p, -r_mid));
            prop_assert_eq!(whole, left + right);
        }
    }
}
