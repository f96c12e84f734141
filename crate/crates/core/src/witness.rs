//! Explicit odd cycles certifying unavoidability.
//!
//! Each constructor takes the parameters of one unavoidable configuration,
//! checks its hypotheses, and returns the cycle its proof exhibits, with the
//! same case split and the same vertex choices. [`validate`] re-checks a
//! witness using only multiplication and target membership.

use std::fmt;

use serde::Serialize;

use crate::element::{format_elements, Element};
use crate::error::Error;
use crate::window::TargetSet;

/// Which construction produced a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Construction {
    /// Triangle for a single even element off `D ∪ E ∪ F ∪ {(0,0)}`.
    InteriorEven,
    /// Triangle for `(a,-a) ∈ D` with any `(c,d)`, `c + d ≥ 1`.
    DiagonalWithPositive,
    /// Triangle for `(a,-a) ∈ D` with `(c,-c)`, `a/2 < c ≠ a`.
    DiagonalWithFarDiagonal,
    /// Triangle for `(a,-a) ∈ D` with `(c,-c)`, `(e,-e)`, odd `0 < c < e ≤ a/2`.
    DiagonalTwoOdd,
    /// 5-cycle for `(a,-a) ∈ D`, `(c,-c)` with `0 < c < a/2`, and `(0,0)`.
    DiagonalOddIdentity,
    /// Triangle for `(a,0) ∈ E` with `(c,d)`, `max{c, c+d} ≥ a`.
    IdempotentWithLarge,
    /// 5-cycle for `(a,0) ∈ E` with `(c,d)`, `(e,f)` below `a`, odd `d ≠ f`.
    IdempotentTwoRows,
    /// 5-cycle for `(0,0)` with `(c,d)`, `(e,f)`, odd `d ≠ f`.
    IdentityTwoRows,
    /// Found by breadth-first search on a window.
    Search,
}

impl Construction {
    pub fn id(self) -> &'static str {
        match self {
            Construction::InteriorEven => "interior-even",
            Construction::DiagonalWithPositive => "diagonal-with-positive",
            Construction::DiagonalWithFarDiagonal => "diagonal-with-far-diagonal",
            Construction::DiagonalTwoOdd => "diagonal-two-odd",
            Construction::DiagonalOddIdentity => "diagonal-odd-identity",
            Construction::IdempotentWithLarge => "idempotent-with-large",
            Construction::IdempotentTwoRows => "idempotent-two-rows",
            Construction::IdentityTwoRows => "identity-two-rows",
            Construction::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Provenance {
    pub construction: Construction,
    /// The cycle was built for `U*` and transported by the adjoint.
    pub starred: bool,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "star({})", self.construction.id())
        } else {
            f.write_str(self.construction.id())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cycle: Vec<Element>,
    pub target: TargetSet,
    pub provenance: Provenance,
}

impl Witness {
    fn new(construction: Construction, cycle: Vec<Element>, target: Vec<Element>) -> Self {
        Witness {
            cycle,
            target: TargetSet::finite(target),
            provenance: Provenance {
                construction,
                starred: false,
            },
        }
    }

    /// No vertex repeats. Some printed 5-cycles are only closed walks for
    /// boundary parameters; they still contain an odd cycle.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.cycle.clone();
        seen.sort();
        seen.dedup();
        seen.len() == self.cycle.len()
    }

    /// The same cycle checked against a larger target set.
    pub fn retarget(mut self, target: TargetSet) -> Self {
        self.target = target;
        self
    }

    /// The adjoint cycle, a witness for `U*`.
    pub fn star(&self) -> Witness {
        Witness {
            cycle: self.cycle.iter().map(|x| x.adjoint()).collect(),
            target: self.target.star(),
            provenance: Provenance {
                construction: self.provenance.construction,
                starred: !self.provenance.starred,
            },
        }
    }

    /// Largest coordinate magnitude appearing in the cycle.
    pub fn extent(&self) -> i64 {
        self.cycle
            .iter()
            .map(|x| x.a().max(x.top()))
            .max()
            .unwrap_or(0)
    }

    /// The consecutive pairs `(u, v)` with both products and their membership.
    pub fn edge_report(&self) -> Vec<EdgeReport> {
        let k = self.cycle.len();
        (0..k)
            .map(|i| {
                let (u, v) = (self.cycle[i], self.cycle[(i + 1) % k]);
                let (uv, vu) = (u * v, v * u);
                EdgeReport {
                    left: u,
                    right: v,
                    forward: uv,
                    forward_in: self.target.contains(uv),
                    backward: vu,
                    backward_in: self.target.contains(vu),
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub left: Element,
    pub right: Element,
    pub forward: Element,
    pub forward_in: bool,
    pub backward: Element,
    pub backward_in: bool,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b: bool| if b { "in" } else { "out" };
        writeln!(f, "witness {}", self.provenance)?;
        writeln!(f, "cycle {}", format_elements(&self.cycle))?;
        for edge in self.edge_report() {
            writeln!(
                f,
                "edge {l}·{r}={fw} {fi}; {r}·{l}={bw} {bi}",
                l = edge.left,
                r = edge.right,
                fw = edge.forward,
                fi = verdict(edge.forward_in),
                bw = edge.backward,
                bi = verdict(edge.backward_in),
            )?;
        }
        Ok(())
    }
}

/// Odd length ≥ 3, consecutive vertices distinct (cyclically), and every
/// consecutive pair multiplies into the target in some order.
pub fn validate(witness: &Witness) -> bool {
    let cycle = &witness.cycle;
    let k = cycle.len();
    k >= 3
        && k % 2 == 1
        && (0..k).all(|i| {
            let (u, v) = (cycle[i], cycle[(i + 1) % k]);
            u != v && (witness.target.contains(u * v) || witness.target.contains(v * u))
        })
}

fn require(construction: Construction, ok: bool, reason: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition {
            construction: construction.id(),
            reason: reason.to_string(),
        })
    }
}

fn vertex(construction: Construction, a: i64, b: i64) -> Result<Element, Error> {
    Element::new(a, b).map_err(|_| Error::VertexOutsideB {
        construction: construction.id(),
        a,
        b,
    })
}

fn member(construction: Construction, a: i64, b: i64) -> Result<Element, Error> {
    Element::new(a, b).map_err(|_| Error::Precondition {
        construction: construction.id(),
        reason: format!("({a},{b}) is not an element of B"),
    })
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

fn in_d(a: i64) -> bool {
    a >= 2 && a % 2 == 0
}

/// `{(a,b)}` for even `b ≠ 0`, `a ≥ 1`, `a + b ≥ 1`: the triangle
/// `p = (α, b/2)`, `q = (a, b/2)`, `r = (a + b/2, b/2)` with `α = a - 1` when
/// `b ≥ 2` and `α = a + b/2 - 1` when `b ≤ -2`.
pub fn interior_even(a: i64, b: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::InteriorEven;
    require(C, b % 2 == 0, "b must be even")?;
    require(C, b != 0, "b must be nonzero")?;
    require(C, a >= 1 && a + b >= 1, "need a >= 1 and a + b >= 1")?;
    let h = b / 2;
    let alpha = if b >= 2 { a - 1 } else { a + h - 1 };
    let p = vertex(C, alpha, h)?;
    let q = vertex(C, a, h)?;
    let r = vertex(C, a + h, h)?;
    Ok(Witness::new(C, vec![p, q, r], vec![member(C, a, b)?]))
}

/// `{(a,-a),(c,d)}` with `(a,-a) ∈ D`, `c ≥ 0`, `c + d ≥ 1`: triangle
/// `r = (a/2,-a/2)`, `s = (a/2+1,-a/2)`, `t = (c, d+a/2)`.
pub fn diagonal_with_positive(a: i64, c: i64, d: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::DiagonalWithPositive;
    require(C, in_d(a), "(a,-a) must be in D (a even, a >= 2)")?;
    require(C, c >= 0 && c + d >= 1, "need c >= 0 and c + d >= 1")?;
    let h = a / 2;
    let r = vertex(C, h, -h)?;
    let s = vertex(C, h + 1, -h)?;
    let t = vertex(C, c, d + h)?;
    Ok(Witness::new(
        C,
        vec![r, s, t],
        vec![member(C, a, -a)?, member(C, c, d)?],
    ))
}

/// `{(a,-a),(c,-c)}` with `(a,-a) ∈ D`, `c ≠ a`, `a/2 < c`: triangle
/// `(a/2,-a/2)`, `(a/2+1,-a/2)`, `(c-a/2, a/2-c)`.
pub fn diagonal_with_far_diagonal(a: i64, c: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::DiagonalWithFarDiagonal;
    require(C, in_d(a), "(a,-a) must be in D (a even, a >= 2)")?;
    require(C, c != a, "need c != a")?;
    require(C, 2 * c > a, "need a/2 < c")?;
    let h = a / 2;
    let r = vertex(C, h, -h)?;
    let s = vertex(C, h + 1, -h)?;
    let t = vertex(C, c - h, h - c)?;
    Ok(Witness::new(
        C,
        vec![r, s, t],
        vec![member(C, a, -a)?, member(C, c, -c)?],
    ))
}

/// `{(a,-a),(c,-c),(e,-e)}` with `(a,-a) ∈ D` and odd `0 < c < e ≤ a/2`:
/// triangle `(0,(a-c-e)/2)`, `((a+c-e)/2, -(a+c-e)/2)`, `((a-c+e)/2, -(a-c+e)/2)`.
pub fn diagonal_two_odd(a: i64, c: i64, e: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::DiagonalTwoOdd;
    require(C, in_d(a), "(a,-a) must be in D (a even, a >= 2)")?;
    require(C, odd(c) && odd(e), "c and e must be odd")?;
    require(C, 0 < c && c < e && 2 * e <= a, "need 0 < c < e <= a/2")?;
    let r = vertex(C, 0, (a - c - e) / 2)?;
    let s = vertex(C, (a + c - e) / 2, -(a + c - e) / 2)?;
    let t = vertex(C, (a - c + e) / 2, -(a - c + e) / 2)?;
    Ok(Witness::new(
        C,
        vec![r, s, t],
        vec![member(C, a, -a)?, member(C, c, -c)?, member(C, e, -e)?],
    ))
}

/// `{(a,-a),(c,-c),(0,0)}` with `(a,-a) ∈ D`, `0 < c < a/2`: 5-cycle
/// `(0,0), (c,-c), (a-c, c-a), (0, a-c), (a,-a)`.
pub fn diagonal_odd_identity(a: i64, c: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::DiagonalOddIdentity;
    require(C, in_d(a), "(a,-a) must be in D (a even, a >= 2)")?;
    require(C, 0 < c && 2 * c < a, "need 0 < c < a/2")?;
    let cycle = vec![
        vertex(C, 0, 0)?,
        vertex(C, c, -c)?,
        vertex(C, a - c, c - a)?,
        vertex(C, 0, a - c)?,
        vertex(C, a, -a)?,
    ];
    Ok(Witness::new(
        C,
        cycle,
        vec![member(C, a, -a)?, member(C, c, -c)?, Element::IDENTITY],
    ))
}

/// `{(a,0),(c,d)}` with `a ≥ 1`, `(c,d) ≠ (a,0)`, `max{c, c+d} ≥ a`:
/// triangle `(0,0), (a,0), (c,d)`.
pub fn idempotent_with_large(a: i64, c: i64, d: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::IdempotentWithLarge;
    require(C, a >= 1, "need a >= 1")?;
    let cd = member(C, c, d)?;
    require(C, c.max(c + d) >= a, "need max{c, c+d} >= a")?;
    require(C, (c, d) != (a, 0), "need (c,d) != (a,0)")?;
    let ea = vertex(C, a, 0)?;
    Ok(Witness::new(
        C,
        vec![Element::IDENTITY, ea, cd],
        vec![ea, cd],
    ))
}

/// `{(a,0),(c,d),(e,f)}` with odd `d ≠ f` and `max{c, c+d, e, e+f} < a`.
///
/// After ordering so that `d < f`, with `x = (f-d)/2` and `y = (f+d)/2` the
/// 5-cycle is `p = (α,x)`, `q = (β,y)`, `r = (c+y,-x)`, `s = (a,x)`,
/// `t = (a,-x)`, where `(α, β)` is `(e, min{c, e+x})` if `e + x < a`, else
/// `(0, e)` if `e < c`, else `(e+y, c)`.
pub fn idempotent_two_rows(a: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::IdempotentTwoRows;
    require(C, a >= 1, "need a >= 1")?;
    require(C, odd(d) && odd(f), "d and f must be odd")?;
    require(C, d != f, "need d != f")?;
    let cd = member(C, c, d)?;
    let ef = member(C, e, f)?;
    require(
        C,
        c.max(c + d).max(e).max(e + f) < a,
        "need max{c, c+d, e, e+f} < a",
    )?;
    let target = vec![vertex(C, a, 0)?, cd, ef];
    let (c, d, e, f) = if d < f { (c, d, e, f) } else { (e, f, c, d) };
    let x = (f - d) / 2;
    let y = (f + d) / 2;
    let (alpha, beta) = if e + x < a {
        (e, c.min(e + x))
    } else if e < c {
        (0, e)
    } else {
        (e + y, c)
    };
    let cycle = vec![
        vertex(C, alpha, x)?,
        vertex(C, beta, y)?,
        vertex(C, c + y, -x)?,
        vertex(C, a, x)?,
        vertex(C, a, -x)?,
    ];
    Ok(Witness::new(C, cycle, target))
}

/// `{(0,0),(c,d),(e,f)}` with odd `d ≠ f`.
///
/// After ordering so that `d < f`, with `x = (f-d)/2`, `y = (f+d)/2`:
/// - `c ≤ e`: `(0,x), (x,-x), (c,y), (e+y,x), (e,y)`;
/// - `e < c`, `e + y ≥ 0`: `(0,x), (x,-x), (c,y), (c+y,-x), (e,y)`;
/// - `e < c`, `e + y < 0`: `(0,x), (e+x,y), (c+y,-x), (c-x,y), (x,-x)`.
pub fn identity_two_rows(c: i64, d: i64, e: i64, f: i64) -> Result<Witness, Error> {
    const C: Construction = Construction::IdentityTwoRows;
    require(C, odd(d) && odd(f), "d and f must be odd")?;
    require(C, d != f, "need d != f")?;
    let target = vec![Element::IDENTITY, member(C, c, d)?, member(C, e, f)?];
    let (c, d, e, f) = if d < f { (c, d, e, f) } else { (e, f, c, d) };
    let x = (f - d) / 2;
    let y = (f + d) / 2;
    let cycle = if c <= e {
        vec![
            vertex(C, 0, x)?,
            vertex(C, x, -x)?,
            vertex(C, c, y)?,
            vertex(C, e + y, x)?,
            vertex(C, e, y)?,
        ]
    } else if e + y >= 0 {
        vec![
            vertex(C, 0, x)?,
            vertex(C, x, -x)?,
            vertex(C, c, y)?,
            vertex(C, c + y, -x)?,
            vertex(C, e, y)?,
        ]
    } else {
        vec![
            vertex(C, 0, x)?,
            vertex(C, e + x, y)?,
            vertex(C, c + y, -x)?,
            vertex(C, c - x, y)?,
            vertex(C, x, -x)?,
        ]
    };
    Ok(Witness::new(C, cycle, target))
}
