//! Exact arithmetic in the bicyclic inverse semigroup.
//!
//! The carrier is `{(a, b) ∈ Z × Z : a ≥ 0, a + b ≥ 0}` with
//!
//! ```text
//! (a,b)(c,d) = (max{c+d, a} - d, b + d)        (a,b)* = (a+b, -b)
//! ```
//!
//! Every element `(a, b)` acts on the nonnegative integers as the partial
//! bijection `n ↦ n + b` defined on `{n : n ≥ a}`; [`Element::apply_shift`]
//! exposes that action, and composition of shifts agrees with the product.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// An element `(a, b)` of the bicyclic monoid.
///
/// Ordering is lexicographic on `(a, b)`, which coincides with the
/// lexicographic order on `(a, a + b)` used by windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    a: i64,
    b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Taxonomy of elements by where an even element may sit in an avoidable set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EvenClass {
    /// `(0, 0)`.
    Identity,
    /// `(a, -a)` with `a ≥ 2` even.
    D,
    /// `(a, 0)` with `a ≥ 1`.
    E,
    /// `(0, b)` with `b ≥ 2` even.
    F,
    /// Any other even element; never a member of an avoidable set.
    InteriorEven,
    Odd,
}

impl Element {
    pub const IDENTITY: Element = Element { a: 0, b: 0 };
    /// The generator `(0, 1)`.
    pub const GENERATOR: Element = Element { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Result<Self, Error> {
        match a.checked_add(b) {
            Some(sum) if a >= 0 && sum >= 0 => Ok(Element { a, b }),
            _ => Err(Error::NotAnElement { a, b }),
        }
    }

    /// Builds an element from `(a, a + b)`, the window coordinates.
    pub fn from_range(a: i64, top: i64) -> Result<Self, Error> {
        let b = top.checked_sub(a).ok_or(Error::Overflow)?;
        Element::new(a, b)
    }

    #[inline]
    pub fn a(self) -> i64 {
        self.a
    }

    #[inline]
    pub fn b(self) -> i64 {
        self.b
    }

    /// `a + b`, the smallest value in the image of the shift.
    #[inline]
    pub fn top(self) -> i64 {
        self.a + self.b
    }

    /// The product, or `None` if an intermediate value overflows `i64`.
    pub fn checked_mul(self, rhs: Element) -> Option<Element> {
        let (a, b) = (self.a, self.b);
        let (c, d) = (rhs.a, rhs.b);
        let left = c.checked_add(d)?.max(a).checked_sub(d)?;
        let right = b.checked_add(d)?;
        // closure of B: left ≥ a - d ≥ 0 when d ≤ 0, left ≥ c ≥ 0 otherwise
        Some(Element { a: left, b: right })
    }

    /// The unique inverse `(a + b, -b)`.
    #[inline]
    pub fn adjoint(self) -> Element {
        Element {
            a: self.a + self.b,
            b: -self.b,
        }
    }

    /// The partial bijection of the element applied to `n ≥ 0`: `n + b` if
    /// `n ≥ a`, undefined otherwise.
    pub fn apply_shift(self, n: i64) -> Option<i64> {
        if n >= self.a {
            n.checked_add(self.b)
        } else {
            None
        }
    }

    pub fn parity(self) -> Parity {
        if self.b.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.parity() == Parity::Even
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.parity() == Parity::Odd
    }

    pub fn is_idempotent(self) -> bool {
        self.b == 0
    }

    pub fn even_class(self) -> EvenClass {
        let (a, b) = (self.a, self.b);
        if self.is_odd() {
            EvenClass::Odd
        } else if a == 0 && b == 0 {
            EvenClass::Identity
        } else if b == -a && a >= 2 {
            // b even, so a is even here
            EvenClass::D
        } else if b == 0 {
            EvenClass::E
        } else if a == 0 && b >= 2 {
            EvenClass::F
        } else {
            EvenClass::InteriorEven
        }
    }
}

/// The product `self · rhs`.
///
/// Panics if the result does not fit in `i64`; sweeps must fail loudly
/// rather than wrap.
impl std::ops::Mul for Element {
    type Output = Element;

    #[inline]
    fn mul(self, rhs: Element) -> Element {
        self.checked_mul(rhs)
            .unwrap_or_else(|| panic!("bicyclic product {self}·{rhs} overflows i64"))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Element {
    type Err = Error;

    /// Parses `"(a,b)"`, whitespace allowed around every token.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected an element like \"(a,b)\", got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        Element::new(a, b)
    }
}

/// Parses a `;`-separated list of elements. Empty input gives an empty list.
pub fn parse_elements(s: &str) -> Result<Vec<Element>, Error> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_elements<'a>(elements: impl IntoIterator<Item = &'a Element>) -> String {
    elements
        .into_iter()
        .map(Element::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// A letter of a word over the generator and its adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    G,
    GStar,
}

impl Letter {
    pub fn element(self) -> Element {
        match self {
            Letter::G => Element::GENERATOR,
            Letter::GStar => Element::GENERATOR.adjoint(),
        }
    }
}

/// Parses words such as `GG*G`; whitespace is ignored.
pub fn parse_word(s: &str) -> Result<Vec<Letter>, Error> {
    let mut letters = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        match c {
            'G' | 'g' => {
                if chars.peek() == Some(&'*') {
                    chars.next();
                    letters.push(Letter::GStar);
                } else {
                    letters.push(Letter::G);
                }
            }
            other => return Err(Error::Parse(format!("unexpected {other:?} in word {s:?}"))),
        }
    }
    Ok(letters)
}

/// Left-to-right product of the letters.
pub fn evaluate_word(word: &[Letter]) -> Result<Element, Error> {
    let (first, rest) = word.split_first().ok_or(Error::EmptyWord)?;
    Ok(rest
        .iter()
        .fold(first.element(), |acc, letter| acc * letter.element()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> Element {
        Element::new(a, b).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(Element::new(0, 0).unwrap(), Element::IDENTITY);
        assert_eq!(e(2, -2).even_class(), EvenClass::D);
        assert!(matches!(
            Element::new(1, -2),
            Err(Error::NotAnElement { a: 1, b: -2 })
        ));
        assert!(Element::new(-1, 3).is_err());
        assert!(Element::new(i64::MAX, 1).is_err());
    }

    #[test]
    fn products() {
        assert_eq!(Element::IDENTITY * e(2, -1), e(2, -1));
        assert_eq!(e(2, 1) * e(1, 1), e(1, 2));
        assert_eq!(e(1, -1) * e(2, -1), e(2, -2));
    }

    #[test]
    fn overflow_is_detected() {
        let big = e(0, i64::MAX);
        assert_eq!(big.checked_mul(big), None);
        assert!(std::panic::catch_unwind(|| big * big).is_err());
    }

    #[test]
    fn adjoints() {
        assert_eq!(e(3, 0).adjoint(), e(3, 0));
        assert_eq!(e(0, 1).adjoint(), e(1, -1));
        assert_eq!(e(0, 4).adjoint(), e(4, -4));
    }

    #[test]
    fn shifts() {
        assert_eq!(e(2, -1).apply_shift(5), Some(4));
        assert_eq!(e(2, -1).apply_shift(1), None);
        assert_eq!(Element::IDENTITY.apply_shift(7), Some(7));
    }

    #[test]
    fn parity_and_classes() {
        assert_eq!(Element::IDENTITY.parity(), Parity::Even);
        assert_eq!(e(1, 1).parity(), Parity::Odd);
        assert_eq!(e(0, 4).parity(), Parity::Even);
        assert_eq!(e(1, -1).parity(), Parity::Odd);

        assert_eq!(Element::IDENTITY.even_class(), EvenClass::Identity);
        assert_eq!(e(4, -4).even_class(), EvenClass::D);
        assert_eq!(e(5, 0).even_class(), EvenClass::E);
        assert_eq!(e(0, 2).even_class(), EvenClass::F);
        assert_eq!(e(2, 2).even_class(), EvenClass::InteriorEven);
        assert_eq!(e(3, -2).even_class(), EvenClass::InteriorEven);
        assert_eq!(e(2, 1).even_class(), EvenClass::Odd);
    }

    #[test]
    fn words() {
        use Letter::*;
        assert_eq!(evaluate_word(&[G]).unwrap(), e(0, 1));
        assert_eq!(evaluate_word(&[GStar, G]).unwrap(), e(0, 0));
        assert_eq!(evaluate_word(&[G, GStar]).unwrap(), e(1, 0));
        assert!(matches!(evaluate_word(&[]), Err(Error::EmptyWord)));
        assert_eq!(parse_word("GG*G").unwrap(), vec![G, GStar, G]);
        assert!(parse_word("GX").is_err());
    }

    #[test]
    fn text_syntax() {
        assert_eq!("( 8 , -8 )".parse::<Element>().unwrap(), e(8, -8));
        assert_eq!(
            parse_elements("(8,-8); (3,-3)").unwrap(),
            vec![e(8, -8), e(3, -3)]
        );
        assert!(parse_elements("").unwrap().is_empty());
        assert!("(1,-2)".parse::<Element>().is_err());
        assert!("1,2".parse::<Element>().is_err());
        assert_eq!(format_elements(&[e(0, 1), e(1, -1)]), "(0,1);(1,-1)");
    }
}
