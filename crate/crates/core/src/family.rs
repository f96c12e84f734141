//! The maximal avoidable sets of B as parameterized families.
//!
//! Parts (a)–(g) are the classical list. Parts (h) and (i) close a gap in that
//! list: for `4 | a` the set `{(a,-a), (0,0)}` is avoidable (see
//! [`crate::partition::PartitionRule::DiagonalIdentity`]) and maximal, yet it
//! lies in none of (a)–(g); (i) is its adjoint.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::element::Element;
use crate::error::Error;
use crate::window::TargetSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MaximalFamily {
    /// (a) every odd element.
    OddAll,
    /// (b) `{(0,0)} ∪ {(e,f) : f = d}`, `d` odd.
    ZeroRow { d: i64 },
    /// (c) `{(a,0),(0,0)} ∪ {(c,d) : max{c, c+d} < a}`, `a ≥ 1`, `d` odd, `d < a`.
    BelowA { a: i64, d: i64 },
    /// (d) `{(a,-a),(c,-c)}`, `a` even, `c` odd, `0 < c < a/2`.
    DPair { a: i64, c: i64 },
    /// (e) `{(a,-a),(a/2,-a/2),(0,0)}`, `a/2` odd.
    DHalf { a: i64 },
    /// (f) `{(0,b),(0,d)}`, `b` even, `d` odd, `0 < d < b/2`.
    FPair { b: i64, d: i64 },
    /// (g) `{(0,b),(0,b/2),(0,0)}`, `b/2` odd.
    FHalf { b: i64 },
    /// (h) `{(a,-a),(0,0)}`, `a ≥ 4`, `4 | a`.
    DiagonalIdentity { a: i64 },
    /// (i) `{(0,b),(0,0)}`, `b ≥ 4`, `4 | b`.
    RowIdentity { b: i64 },
}

fn is_odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

fn family_error(msg: impl Into<String>) -> Error {
    Error::Family(msg.into())
}

impl MaximalFamily {
    /// Checks the parameter constraints of the variant.
    pub fn validate(self) -> Result<Self, Error> {
        use MaximalFamily::*;
        let ok = match self {
            OddAll => true,
            ZeroRow { d } => is_odd(d),
            BelowA { a, d } => a >= 1 && is_odd(d) && d < a,
            DPair { a, c } | FPair { b: a, d: c } => {
                a >= 2 && a % 2 == 0 && is_odd(c) && 0 < c && 2 * c < a
            }
            DHalf { a } | FHalf { b: a } => a >= 2 && a % 2 == 0 && is_odd(a / 2),
            DiagonalIdentity { a } | RowIdentity { b: a } => a >= 4 && a % 4 == 0,
        };
        if ok {
            Ok(self)
        } else {
            Err(family_error(format!("parameters out of range: {self}")))
        }
    }

    /// Part label `a`..`i`.
    pub fn label(self) -> char {
        use MaximalFamily::*;
        match self {
            OddAll => 'a',
            ZeroRow { .. } => 'b',
            BelowA { .. } => 'c',
            DPair { .. } => 'd',
            DHalf { .. } => 'e',
            FPair { .. } => 'f',
            FHalf { .. } => 'g',
            DiagonalIdentity { .. } => 'h',
            RowIdentity { .. } => 'i',
        }
    }

    pub fn contains(self, x: Element) -> bool {
        use MaximalFamily::*;
        let (p, q) = (x.a(), x.b());
        let identity = x == Element::IDENTITY;
        match self {
            OddAll => x.is_odd(),
            ZeroRow { d } => identity || q == d,
            BelowA { a, d } => identity || (p == a && q == 0) || (q == d && p.max(p + q) < a),
            DPair { a, c } => q == -p && (p == a || p == c),
            DHalf { a } => q == -p && (p == a || p == a / 2 || p == 0),
            FPair { b, d } => p == 0 && (q == b || q == d),
            FHalf { b } => p == 0 && (q == b || q == b / 2 || q == 0),
            DiagonalIdentity { a } => q == -p && (p == a || p == 0),
            RowIdentity { b } => p == 0 && (q == b || q == 0),
        }
    }

    /// The elements of the family when it is finite.
    pub fn finite_members(self) -> Option<Vec<Element>> {
        use MaximalFamily::*;
        let e = |a: i64, b: i64| Element::new(a, b).expect("family member");
        Some(match self {
            OddAll | ZeroRow { .. } => return None,
            BelowA { a, d } => {
                let mut members = vec![e(0, 0), e(a, 0)];
                members.extend((0.max(-d)..a).filter(|&c| c + d < a).map(|c| e(c, d)));
                members.sort();
                members
            }
            DPair { a, c } => vec![e(c, -c), e(a, -a)],
            DHalf { a } => vec![e(0, 0), e(a / 2, -a / 2), e(a, -a)],
            FPair { b, d } => vec![e(0, d), e(0, b)],
            FHalf { b } => vec![e(0, 0), e(0, b / 2), e(0, b)],
            DiagonalIdentity { a } => vec![e(0, 0), e(a, -a)],
            RowIdentity { b } => vec![e(0, 0), e(0, b)],
        })
    }

    /// The adjoint set `{x* : x ∈ family}`.
    pub fn star(self) -> TargetSet {
        use MaximalFamily::*;
        let family = match self {
            OddAll => OddAll,
            ZeroRow { d } => ZeroRow { d: -d },
            BelowA { a, d } if -d < a => BelowA { a, d: -d },
            // For d ≤ -a only (a,0) and (0,0) survive, both self-adjoint.
            BelowA { a, .. } => {
                return TargetSet::finite([Element::IDENTITY, Element::new(a, 0).unwrap()])
            }
            DPair { a, c } => FPair { b: a, d: c },
            FPair { b, d } => DPair { a: b, c: d },
            DHalf { a } => FHalf { b: a },
            FHalf { b } => DHalf { a: b },
            DiagonalIdentity { a } => RowIdentity { b: a },
            RowIdentity { b } => DiagonalIdentity { a: b },
        };
        TargetSet::Family(family)
    }
}

impl fmt::Display for MaximalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MaximalFamily::*;
        match *self {
            OddAll => write!(f, "a"),
            ZeroRow { d } => write!(f, "b:d={d}"),
            BelowA { a, d } => write!(f, "c:a={a},d={d}"),
            DPair { a, c } => write!(f, "d:a={a},c={c}"),
            DHalf { a } => write!(f, "e:a={a}"),
            FPair { b, d } => write!(f, "f:b={b},d={d}"),
            FHalf { b } => write!(f, "g:b={b}"),
            DiagonalIdentity { a } => write!(f, "h:a={a}"),
            RowIdentity { b } => write!(f, "i:b={b}"),
        }
    }
}

/// Parses `key=value` pairs such as `a=8,c=3`.
pub(crate) fn parse_params(s: &str) -> Result<Vec<(String, i64)>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {kv:?}"))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| format!("bad integer in {kv:?}"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

pub(crate) fn take_param(params: &[(String, i64)], key: &str) -> Result<i64, String> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| format!("missing parameter {key}"))
}

pub(crate) fn check_keys(params: &[(String, i64)], allowed: &[&str]) -> Result<(), String> {
    match params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(format!("unknown parameter {k}")),
        None => Ok(()),
    }
}

impl FromStr for MaximalFamily {
    type Err = Error;

    /// Descriptors: `a`, `b:d=5`, `c:a=6,d=5`, `d:a=8,c=3`, `e:a=6`,
    /// `f:b=8,d=3`, `g:b=6`, `h:a=4`, `i:b=4`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (tag, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = parse_params(rest).map_err(family_error)?;
        let get = |key: &str| take_param(&params, key).map_err(family_error);
        let keys = |allowed: &[&str]| check_keys(&params, allowed).map_err(family_error);
        let family = match tag.trim() {
            "a" => {
                keys(&[])?;
                MaximalFamily::OddAll
            }
            "b" => {
                keys(&["d"])?;
                MaximalFamily::ZeroRow { d: get("d")? }
            }
            "c" => {
                keys(&["a", "d"])?;
                MaximalFamily::BelowA {
                    a: get("a")?,
                    d: get("d")?,
                }
            }
            "d" => {
                keys(&["a", "c"])?;
                MaximalFamily::DPair {
                    a: get("a")?,
                    c: get("c")?,
                }
            }
            "e" => {
                keys(&["a"])?;
                MaximalFamily::DHalf { a: get("a")? }
            }
            "f" => {
                keys(&["b", "d"])?;
                MaximalFamily::FPair {
                    b: get("b")?,
                    d: get("d")?,
                }
            }
            "g" => {
                keys(&["b"])?;
                MaximalFamily::FHalf { b: get("b")? }
            }
            "h" => {
                keys(&["a"])?;
                MaximalFamily::DiagonalIdentity { a: get("a")? }
            }
            "i" => {
                keys(&["b"])?;
                MaximalFamily::RowIdentity { b: get("b")? }
            }
            other => return Err(family_error(format!("unknown family {other:?}"))),
        };
        family.validate()
    }
}
