//! Closed-form avoiding partitions of B and the avoidance checker.
//!
//! Each rule is a total map `B → {A, B}`. Rendered as text grids, rows are
//! indexed by the first coordinate `x` and columns by the second coordinate
//! `y`; `'0'` marks class A, `'1'` class B and `'.'` a cell outside B.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::element::Element;
use crate::error::Error;
use crate::exec::Exec;
use crate::family::{check_keys, parse_params, take_param};
use crate::graph::Side;
use crate::window::{right_factors, TargetSet, Window};

/// `y mod m` in `[0, m-1]` for any sign of `y`.
pub fn remainder(y: i64, m: i64) -> Result<i64, Error> {
    if m <= 0 {
        return Err(Error::Modulus(m));
    }
    Ok(y.rem_euclid(m))
}

fn rem(y: i64, m: i64) -> i64 {
    y.rem_euclid(m)
}

/// A finite coloring; elements not listed default to class A.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExplicitMap {
    pub classes: BTreeMap<Element, Side>,
}

impl ExplicitMap {
    pub fn get(&self, x: Element) -> Side {
        self.classes.get(&x).copied().unwrap_or(Side::A)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionRule {
    /// A = even elements.
    Parity,
    /// Avoids `{(a,-a),(c,-c)}` for odd `c < a/2`, and
    /// `{(a,-a),(a/2,-a/2),(0,0)}` when `c = a/2` is odd.
    ///
    /// `(x,y) ∈ A` iff `(a-2c)/2 ≤ [y]_{a-c} ≤ (2a-3c-1)/2`, except on the
    /// diagonal points `(a/2 + k(a-c), -a/2 - k(a-c))`, `k ≥ 0`.
    Diagonal {
        a: i64,
        c: i64,
    },
    /// Avoids `{(a,0),(0,0)} ∪ {(c,d) : max{c,c+d} < a}`.
    ///
    /// Off the row `y = 0`, `(x,y) ∈ A` iff `φ(y) = 0` where, with
    /// `m = |d|`, `φ(y) = 0` iff `0 < [y]_m ≤ (m-1)/2`, or `[y]_m = 0` and
    /// `y` has the sign opposite to `d`. On `y = 0`, `(x,0) ∈ A` iff `x < a`.
    Idempotent {
        a: i64,
        d: i64,
    },
    /// Avoids `{(0,0)} ∪ {(e,f) : f = d}`.
    ///
    /// `(x,y) ∈ A` iff `[y]_{|d|} ≤ (|d|-1)/2` and `y` is not `k·d` for
    /// some `k ≥ 1`.
    Row {
        d: i64,
    },
    /// Avoids `{(a,-a),(0,0)}` for even `a`.
    ///
    /// The diagonal point `(x,-x)` with `x ≥ 1` is in A iff its residue
    /// `r = ((x-1) mod a) + 1` satisfies `r ≤ a/2`; `(0,0)` is in A. Any other
    /// `(x,y)` takes the class opposite to the diagonal point `x' = y + a`
    /// when `y + a ≥ 0`, and A otherwise.
    DiagonalIdentity {
        a: i64,
    },
    /// `x ↦ inner(x*)`: avoids `U*` whenever `inner` avoids `U`.
    Star(Box<PartitionRule>),
    Explicit(ExplicitMap),
}

fn rule_error(msg: impl Into<String>) -> Error {
    Error::Rule(msg.into())
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

impl PartitionRule {
    pub fn diagonal(a: i64, c: i64) -> Result<Self, Error> {
        if a >= 2 && a % 2 == 0 && odd(c) && 0 < c && 2 * c <= a {
            Ok(PartitionRule::Diagonal { a, c })
        } else {
            Err(rule_error(format!(
                "D needs even a >= 2 and odd c with 0 < c <= a/2, got a={a}, c={c}"
            )))
        }
    }

    pub fn idempotent(a: i64, d: i64) -> Result<Self, Error> {
        if a >= 1 && odd(d) && d < a {
            Ok(PartitionRule::Idempotent { a, d })
        } else {
            Err(rule_error(format!(
                "E needs a >= 1 and odd d < a, got a={a}, d={d}"
            )))
        }
    }

    pub fn row(d: i64) -> Result<Self, Error> {
        if odd(d) {
            Ok(PartitionRule::Row { d })
        } else {
            Err(rule_error(format!("Z needs odd d, got d={d}")))
        }
    }

    pub fn diagonal_identity(a: i64) -> Result<Self, Error> {
        if a >= 2 && a % 2 == 0 {
            Ok(PartitionRule::DiagonalIdentity { a })
        } else {
            Err(rule_error(format!("H needs even a >= 2, got a={a}")))
        }
    }

    /// The adjoint-transported rule. Parity is its own star and a double star
    /// collapses.
    pub fn star(&self) -> PartitionRule {
        match self {
            PartitionRule::Parity => PartitionRule::Parity,
            PartitionRule::Star(inner) => (**inner).clone(),
            other => PartitionRule::Star(Box::new(other.clone())),
        }
    }

    /// Rechecks parameter constraints, recursing through stars.
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            PartitionRule::Parity | PartitionRule::Explicit(_) => Ok(()),
            PartitionRule::Diagonal { a, c } => Self::diagonal(a, c).map(drop),
            PartitionRule::Idempotent { a, d } => Self::idempotent(a, d).map(drop),
            PartitionRule::Row { d } => Self::row(d).map(drop),
            PartitionRule::DiagonalIdentity { a } => Self::diagonal_identity(a).map(drop),
            PartitionRule::Star(ref inner) => inner.validate(),
        }
    }

    pub fn color(&self, x: Element) -> Side {
        let (px, y) = (x.a(), x.b());
        let in_a = match self {
            PartitionRule::Parity => x.is_even(),
            &PartitionRule::Diagonal { a, c } => {
                let m = a - c;
                let r = rem(y, m);
                let band = (a - 2 * c) / 2 <= r && r <= (2 * a - 3 * c - 1) / 2;
                let excluded = y == -px && px >= a / 2 && (px - a / 2) % m == 0;
                band && !excluded
            }
            &PartitionRule::Idempotent { a, d } => {
                if y == 0 {
                    px < a
                } else {
                    let m = d.abs();
                    let r = rem(y, m);
                    (0 < r && r <= (m - 1) / 2) || (r == 0 && y.signum() == -d.signum())
                }
            }
            &PartitionRule::Row { d } => {
                let m = d.abs();
                let on_ray = y.signum() == d.signum() && y % d == 0;
                rem(y, m) <= (m - 1) / 2 && !on_ray
            }
            &PartitionRule::DiagonalIdentity { a } => {
                let diagonal_in_a = |x: i64| {
                    x == 0 || {
                        let r = rem(x - 1, a) + 1;
                        r <= a / 2
                    }
                };
                if y == -px {
                    diagonal_in_a(px)
                } else if y + a >= 0 {
                    !diagonal_in_a(y + a)
                } else {
                    true
                }
            }
            PartitionRule::Star(inner) => return inner.color(x.adjoint()),
            PartitionRule::Explicit(map) => return map.get(x),
        };
        if in_a {
            Side::A
        } else {
            Side::B
        }
    }

    /// The rule restricted to a window, as an explicit map.
    pub fn to_explicit(&self, w: Window) -> ExplicitMap {
        ExplicitMap {
            classes: w
                .elements()
                .into_iter()
                .map(|x| (x, self.color(x)))
                .collect(),
        }
    }
}

impl fmt::Display for PartitionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionRule::Parity => write!(f, "parity"),
            PartitionRule::Diagonal { a, c } => write!(f, "D:a={a},c={c}"),
            PartitionRule::Idempotent { a, d } => write!(f, "E:a={a},d={d}"),
            PartitionRule::Row { d } => write!(f, "Z:d={d}"),
            PartitionRule::DiagonalIdentity { a } => write!(f, "H:a={a}"),
            PartitionRule::Star(inner) => write!(f, "star({inner})"),
            PartitionRule::Explicit(map) => write!(f, "explicit[{} entries]", map.classes.len()),
        }
    }
}

impl Serialize for PartitionRule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for PartitionRule {
    type Err = Error;

    /// Descriptors: `parity`, `D:a=8,c=3`, `E:a=6,d=5`, `Z:d=5`, `H:a=4`,
    /// and `star(<descriptor>)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "parity" {
            return Ok(PartitionRule::Parity);
        }
        if let Some(inner) = s.strip_prefix("star(").and_then(|t| t.strip_suffix(')')) {
            return Ok(PartitionRule::Star(Box::new(inner.parse()?)));
        }
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| rule_error(format!("unknown rule {s:?}")))?;
        let params = parse_params(rest).map_err(rule_error)?;
        let get = |key: &str| take_param(&params, key).map_err(rule_error);
        let keys = |allowed: &[&str]| check_keys(&params, allowed).map_err(rule_error);
        match tag.trim() {
            "D" => {
                keys(&["a", "c"])?;
                Self::diagonal(get("a")?, get("c")?)
            }
            "E" => {
                keys(&["a", "d"])?;
                Self::idempotent(get("a")?, get("d")?)
            }
            "Z" => {
                keys(&["d"])?;
                Self::row(get("d")?)
            }
            "H" => {
                keys(&["a"])?;
                Self::diagonal_identity(get("a")?)
            }
            other => Err(rule_error(format!("unknown rule {other:?}"))),
        }
    }
}

/// One character per cell; see the module docs for the alphabet.
pub fn render_grid(
    rule: &PartitionRule,
    rows: RangeInclusive<i64>,
    cols: RangeInclusive<i64>,
) -> String {
    let mut out = String::new();
    for x in rows {
        for y in cols.clone() {
            let cell = match Element::new(x, y) {
                Ok(e) => rule.color(e).digit(),
                Err(_) => '.',
            };
            out.push(cell);
        }
        out.push('\n');
    }
    out
}

/// Two distinct same-class window elements whose product lands in the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub left: Element,
    pub right: Element,
    pub product: Element,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{} = {}", self.left, self.right, self.product)
    }
}

/// Checks every ordered pair `(s, t)` of distinct window elements in the same
/// class; the earliest violating pair in window order is reported.
pub fn partition_avoids(
    rule: &PartitionRule,
    target: &TargetSet,
    w: Window,
) -> Result<(), Violation> {
    partition_avoids_with(rule, target, w, Exec::default())
}

pub fn partition_avoids_with(
    rule: &PartitionRule,
    target: &TargetSet,
    w: Window,
    exec: Exec,
) -> Result<(), Violation> {
    let reachable: Vec<Element> = target.reachable_from(w).into_iter().collect();
    let elements = w.elements();
    let colors = exec.map(&elements, |&x| rule.color(x));
    let per_left = exec.map_range(0..elements.len(), |i| {
        let s = elements[i];
        let mut best: Option<Violation> = None;
        for &u in &reachable {
            for t in right_factors(s, u) {
                let Some(j) = w.index_of(t) else { continue };
                if j != i && colors[j] == colors[i] && best.is_none_or(|b| t < b.right) {
                    best = Some(Violation {
                        left: s,
                        right: t,
                        product: u,
                    });
                }
            }
        }
        best
    });
    match per_left.into_iter().flatten().next() {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Reference check over all ordered pairs.
pub fn partition_avoids_pairwise(
    rule: &PartitionRule,
    target: &TargetSet,
    w: Window,
) -> Result<(), Violation> {
    let elements = w.elements();
    for &s in &elements {
        for &t in &elements {
            if s != t && rule.color(s) == rule.color(t) {
                let product = s * t;
                if target.contains(product) {
                    return Err(Violation {
                        left: s,
                        right: t,
                        product,
                    });
                }
            }
        }
    }
    Ok(())
}
