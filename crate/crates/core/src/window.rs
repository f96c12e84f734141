//! Finite truncations of B and target sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::element::Element;
use crate::family::MaximalFamily;

/// The window `{(a,b) : 0 ≤ a ≤ n, 0 ≤ a+b ≤ n}`, of size `(n+1)²`.
///
/// Windows are closed under the adjoint, and every product of two window-`n`
/// elements lies in the window `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub n: u32,
}

impl Window {
    pub fn new(n: u32) -> Self {
        Window { n }
    }

    pub fn len(self) -> usize {
        let side = self.n as usize + 1;
        side * side
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, x: Element) -> bool {
        let n = i64::from(self.n);
        x.a() <= n && x.top() <= n
    }

    /// Dense index of `x` by `(a, a+b)`.
    #[inline]
    pub fn index_of(self, x: Element) -> Option<usize> {
        if self.contains(x) {
            let side = self.n as usize + 1;
            Some(x.a() as usize * side + x.top() as usize)
        } else {
            None
        }
    }

    #[inline]
    pub fn element_at(self, index: usize) -> Element {
        let side = self.n as usize + 1;
        Element::from_range((index / side) as i64, (index % side) as i64)
            .expect("window coordinates are nonnegative")
    }

    /// All elements in lexicographic order by `(a, a+b)`.
    pub fn elements(self) -> Vec<Element> {
        (0..self.len()).map(|i| self.element_at(i)).collect()
    }

    /// The smallest window containing every product of two elements of `self`.
    pub fn product_hull(self) -> Window {
        Window::new(self.n * 2)
    }
}

/// Every `s ∈ B` with `r · s = u`.
///
/// Writing `r = (a,b)`, `u = (p,q)`, `s = (c,d)`: the second coordinate
/// forces `d = q - b`; then `max{c+d, a} = p + d` has the single solution
/// `c = p` when `a < p + d`, the interval `c ≤ p` when `a = p + d`, and none
/// when `a > p + d`.
pub fn right_factors(r: Element, u: Element) -> impl Iterator<Item = Element> {
    let (a, b) = (r.a(), r.b());
    let (p, q) = (u.a(), u.b());
    let d = q - b;
    let reach = p + d;
    let (lo, hi) = if a < reach {
        (p, p)
    } else if a == reach {
        ((-d).max(0), p)
    } else {
        (1, 0)
    };
    (lo..=hi).map(move |c| Element::new(c, d).expect("factor lies in B"))
}

/// A set of target elements: finite and explicit, or a maximal family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TargetSet {
    Finite(BTreeSet<Element>),
    Family(MaximalFamily),
}

impl TargetSet {
    pub fn finite(elements: impl IntoIterator<Item = Element>) -> Self {
        TargetSet::Finite(elements.into_iter().collect())
    }

    pub fn empty() -> Self {
        TargetSet::Finite(BTreeSet::new())
    }

    pub fn contains(&self, x: Element) -> bool {
        match self {
            TargetSet::Finite(set) => set.contains(&x),
            TargetSet::Family(family) => family.contains(x),
        }
    }

    /// `U ∩ w` as an explicit set.
    pub fn restrict(&self, w: Window) -> BTreeSet<Element> {
        match self {
            TargetSet::Finite(set) => set.iter().copied().filter(|&x| w.contains(x)).collect(),
            TargetSet::Family(family) => w
                .elements()
                .into_iter()
                .filter(|&x| family.contains(x))
                .collect(),
        }
    }

    /// The finite part of `U` that products of `w` can reach.
    pub fn reachable_from(&self, w: Window) -> BTreeSet<Element> {
        self.restrict(w.product_hull())
    }

    /// Elementwise adjoint; families map to families.
    pub fn star(&self) -> TargetSet {
        match self {
            TargetSet::Finite(set) => TargetSet::Finite(set.iter().map(|x| x.adjoint()).collect()),
            TargetSet::Family(family) => family.star(),
        }
    }
}

impl fmt::Display for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSet::Finite(set) => {
                write!(f, "{{{}}}", crate::element::format_elements(set))
            }
            TargetSet::Family(family) => write!(f, "{family}"),
        }
    }
}
