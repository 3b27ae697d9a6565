//! Commutative quantales over the unit interval and the two-element Boolean
//! algebra.
//!
//! Every grade computation in the crate goes through [`Quantale`]: the tensor
//! used when composing relations, the join used to sum over intermediate
//! indices, and the bottom/unit constants used by the structural relations.
//! Boolean grades are stored as the reals `0.0` and `1.0`, so the Boolean
//! instance is the restriction of the real operations to `{0, 1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A truth degree in `[0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grade(f64);

impl Grade {
    pub const ZERO: Grade = Grade(0.0);
    pub const ONE: Grade = Grade(1.0);

    /// Checked constructor; rejects NaN and values outside `[0, 1]`.
    pub fn new(value: f64) -> Result<Self, Error> {
        if (0.0..=1.0).contains(&value) {
            // normalise -0.0 so bitwise keys are stable
            Ok(Grade(value + 0.0))
        } else {
            Err(Error::GradeOutOfRange(value))
        }
    }

    /// Clamps into `[0, 1]`. Only for values produced by arithmetic on grades
    /// that can drift by rounding.
    pub(crate) fn clamped(value: f64) -> Self {
        Grade(value.clamp(0.0, 1.0) + 0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Grade::ONE
        } else {
            Grade::ZERO
        }
    }

    pub(crate) fn bits(self) -> u64 {
        self.0.to_bits()
    }

    pub fn max(self, other: Grade) -> Grade {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Grade) -> Grade {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// The four built-in commutative quantales.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantale {
    /// `{⊥, ⊤}` with conjunction as tensor.
    Boolean,
    /// `[0, 1]` with `min` as tensor; a Gödel chain.
    Godel,
    /// `[0, 1]` with `max(0, a + b - 1)` as tensor.
    Lukasiewicz,
    /// `[0, 1]` with multiplication as tensor.
    Product,
}

impl Quantale {
    pub const ALL: [Quantale; 4] = [
        Quantale::Boolean,
        Quantale::Godel,
        Quantale::Lukasiewicz,
        Quantale::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantale::Boolean => "boolean",
            Quantale::Godel => "godel",
            Quantale::Lukasiewicz => "lukasiewicz",
            Quantale::Product => "product",
        }
    }

    pub fn tensor(self, a: Grade, b: Grade) -> Grade {
        match self {
            Quantale::Boolean | Quantale::Godel => a.min(b),
            // a + b - 1 loses the low bits of the other operand when one side is 1
            Quantale::Lukasiewicz if a.0 == 1.0 => b,
            Quantale::Lukasiewicz if b.0 == 1.0 => a,
            Quantale::Lukasiewicz => Grade::clamped((a.0 + b.0 - 1.0).max(0.0)),
            Quantale::Product => Grade(a.0 * b.0),
        }
    }

    /// Binary join. All four carriers are chains, so this is `max`.
    pub fn join2(self, a: Grade, b: Grade) -> Grade {
        a.max(b)
    }

    /// Join of a finite family; the empty family yields [`Quantale::bottom`].
    pub fn join<I: IntoIterator<Item = Grade>>(self, family: I) -> Grade {
        family
            .into_iter()
            .fold(self.bottom(), |acc, g| self.join2(acc, g))
    }

    pub fn meet2(self, a: Grade, b: Grade) -> Grade {
        a.min(b)
    }

    pub fn unit(self) -> Grade {
        Grade::ONE
    }

    pub fn bottom(self) -> Grade {
        Grade::ZERO
    }

    pub fn top(self) -> Grade {
        Grade::ONE
    }

    pub fn leq(self, a: Grade, b: Grade) -> bool {
        a.0 <= b.0
    }

    /// Whether `g` belongs to this quantale's carrier.
    pub fn contains(self, g: Grade) -> bool {
        match self {
            Quantale::Boolean => g == Grade::ZERO || g == Grade::ONE,
            _ => (0.0..=1.0).contains(&g.0),
        }
    }

    /// Maps a real degree into the carrier. Real quantales keep it; the
    /// Boolean quantale sends exactly `1` to ⊤ and everything else to ⊥.
    pub fn from_real(self, value: Grade) -> Grade {
        match self {
            Quantale::Boolean => Grade::from_bool(value == Grade::ONE),
            _ => value,
        }
    }

    /// Checks the Gödel-chain conditions on a finite sample of the carrier:
    /// tensor coincides with meet, the unit is the top, and the samples are
    /// pairwise comparable.
    pub fn is_godel_chain(self, samples: &[Grade]) -> bool {
        if self.unit() != self.top() {
            return false;
        }
        for &a in samples {
            for &b in samples {
                if self.tensor(a, b) != self.meet2(a, b) {
                    return false;
                }
                if !(self.leq(a, b) || self.leq(b, a)) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boolean" => Ok(Quantale::Boolean),
            "godel" | "gödel" => Ok(Quantale::Godel),
            "lukasiewicz" | "łukasiewicz" => Ok(Quantale::Lukasiewicz),
            "product" => Ok(Quantale::Product),
            _ => Err(Error::UnknownQuantale(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(v: f64) -> Grade {
        Grade::new(v).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(Quantale::Godel.tensor(g(0.3), g(0.7)), g(0.3));
        let l = Quantale::Lukasiewicz.tensor(g(0.6), g(0.7)).value();
        assert!((l - 0.3).abs() < 1e-9);
        for q in Quantale::ALL {
            if q != Quantale::Boolean {
                assert_eq!(q.tensor(q.unit(), g(0.42)), g(0.42));
            }
        }
    }

    #[test]
    fn join_examples() {
        assert_eq!(Quantale::Godel.join([g(0.2), g(0.9), g(0.5)]), g(0.9));
        for q in Quantale::ALL {
            assert_eq!(q.join(std::iter::empty()), q.bottom());
        }
        assert_eq!(
            Quantale::Boolean.join([Grade::ZERO, Grade::ONE]),
            Grade::ONE
        );
    }

    #[test]
    fn godel_chain_examples() {
        let samples: Vec<Grade> = [0.0, 0.1, 0.5, 0.9, 1.0].iter().map(|&v| g(v)).collect();
        assert!(Quantale::Godel.is_godel_chain(&samples));
        assert!(!Quantale::Lukasiewicz.is_godel_chain(&[g(0.6), g(0.7)]));
        assert!(Quantale::Boolean.is_godel_chain(&[Grade::ZERO, Grade::ONE]));
    }

    #[test]
    fn boolean_agrees_with_logic() {
        let q = Quantale::Boolean;
        for a in [false, true] {
            for b in [false, true] {
                let (ga, gb) = (Grade::from_bool(a), Grade::from_bool(b));
                assert_eq!(q.tensor(ga, gb), Grade::from_bool(a && b));
                assert_eq!(q.join2(ga, gb), Grade::from_bool(a || b));
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for q in Quantale::ALL {
            assert_eq!(q.name().parse::<Quantale>().unwrap(), q);
        }
        assert!("heyting".parse::<Quantale>().is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Grade::new(1.5).is_err());
        assert!(Grade::new(-0.1).is_err());
        assert!(Grade::new(f64::NAN).is_err());
    }

    fn grade_for(q: Quantale) -> BoxedStrategy<Grade> {
        match q {
            Quantale::Boolean => any::<bool>().prop_map(Grade::from_bool).boxed(),
            _ => (0.0f64..=1.0).prop_map(|v| Grade::new(v).unwrap()).boxed(),
        }
    }

    fn close(q: Quantale, a: Grade, b: Grade) -> bool {
        match q {
            Quantale::Boolean => a == b,
            _ => (a.value() - b.value()).abs() <= 1e-12,
        }
    }

    fn laws_hold(q: Quantale, a: Grade, b: Grade, c: Grade) -> Result<(), TestCaseError> {
        prop_assert!(close(q, q.tensor(a, b), q.tensor(b, a)));
        prop_assert!(close(
            q,
            q.tensor(q.tensor(a, b), c),
            q.tensor(a, q.tensor(b, c))
        ));
        prop_assert!(close(q, q.tensor(a, q.unit()), a));
        if q.leq(a, b) {
            prop_assert!(q.leq(q.tensor(a, c), q.tensor(b, c)));
        }
        prop_assert!(close(
            q,
            q.tensor(q.join2(a, b), c),
            q.join2(q.tensor(a, c), q.tensor(b, c))
        ));
        prop_assert_eq!(q.join2(a, a), a);
        prop_assert_eq!(q.join2(a, b), q.join2(b, a));
        prop_assert_eq!(q.join2(q.join2(a, b), c), q.join2(a, q.join2(b, c)));
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn boolean_laws((a, b, c) in (grade_for(Quantale::Boolean), grade_for(Quantale::Boolean), grade_for(Quantale::Boolean))) {
            laws_hold(Quantale::Boolean, a, b, c)?;
        }

        #[test]
        fn godel_laws((a, b, c) in (grade_for(Quantale::Godel), grade_for(Quantale::Godel), grade_for(Quantale::Godel))) {
            laws_hold(Quantale::Godel, a, b, c)?;
            prop_assert_eq!(Quantale::Godel.tensor(a, a), a);
        }

        #[test]
        fn lukasiewicz_laws((a, b, c) in (grade_for(Quantale::Lukasiewicz), grade_for(Quantale::Lukasiewicz), grade_for(Quantale::Lukasiewicz))) {
            laws_hold(Quantale::Lukasiewicz, a, b, c)?;
        }

        #[test]
        fn product_laws((a, b, c) in (grade_for(Quantale::Product), grade_for(Quantale::Product), grade_for(Quantale::Product))) {
            laws_hold(Quantale::Product, a, b, c)?;
        }
    }
}
