//! Deciding avoidability of finite sets, with a certificate either way.
//!
//! A finite `U` is avoidable exactly when some maximal family contains it:
//! every avoidable set extends to a maximal one (an odd cycle only involves
//! finitely many targets, so a union of a chain of avoidable sets is
//! avoidable). Avoidable verdicts carry the family's partition rule;
//! unavoidable verdicts carry an odd cycle that [`witness::validate`] accepts.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::element::{format_elements, Element, EvenClass};
use crate::error::Error;
use crate::exec::Exec;
use crate::family::MaximalFamily;
use crate::graph::{associated_graph, bipartition_or_odd_cycle};
use crate::partition::PartitionRule;
use crate::window::{TargetSet, Window};
use crate::witness::{self, Construction, Provenance, Witness};

/// A family containing `U`, with the least admissible values for any
/// parameter `U` leaves open. `free` describes the open parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyFit {
    pub family: MaximalFamily,
    pub free: Vec<String>,
}

impl fmt::Display for FamilyFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.free.is_empty() {
            write!(f, " [{}]", self.free.join("; "))?;
        }
        Ok(())
    }
}

fn fit(family: MaximalFamily, free: Vec<String>, u: &BTreeSet<Element>) -> Option<FamilyFit> {
    let family = family.validate().ok()?;
    u.iter()
        .all(|&x| family.contains(x))
        .then_some(FamilyFit { family, free })
}

fn distinct(values: impl IntoIterator<Item = i64>) -> Vec<i64> {
    values
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Diagonal parameters `p ≥ 1` of `U`, and whether `(0,0)` occurs; `None`
/// when some element is off the diagonal.
fn diagonal_values(u: &BTreeSet<Element>) -> Option<(Vec<i64>, bool)> {
    if u.iter().any(|x| x.top() != 0) {
        return None;
    }
    let values = distinct(u.iter().map(|x| x.a()).filter(|&p| p >= 1));
    Some((values, u.contains(&Element::IDENTITY)))
}

/// Fits for (d), (e), (h) on `U`, or for (f), (g), (i) when `row` is set and
/// `U` has already been replaced by its adjoint.
fn diagonal_fits(u: &BTreeSet<Element>, row: bool) -> [Option<FamilyFit>; 3] {
    let Some((values, identity)) = diagonal_values(u) else {
        return [None, None, None];
    };
    let (big, small) = if row { ("b", "d") } else { ("a", "c") };
    let pair = |a: i64, c: i64| {
        if row {
            MaximalFamily::FPair { b: a, d: c }
        } else {
            MaximalFamily::DPair { a, c }
        }
    };
    let half = |a: i64| {
        if row {
            MaximalFamily::FHalf { b: a }
        } else {
            MaximalFamily::DHalf { a }
        }
    };
    let ident = |a: i64| {
        if row {
            MaximalFamily::RowIdentity { b: a }
        } else {
            MaximalFamily::DiagonalIdentity { a }
        }
    };
    // Membership is rechecked by `fit`, so a failed guess simply drops out.
    let fit_of = |f: MaximalFamily, free: Vec<String>| {
        let f = f.validate().ok()?;
        let image = if row {
            TargetSet::Family(f).star()
        } else {
            TargetSet::Family(f)
        };
        u.iter()
            .all(|&x| image.contains(x))
            .then_some(FamilyFit { family: f, free })
    };

    let pair_fit = if identity {
        None
    } else {
        let evens: Vec<_> = values.iter().copied().filter(|p| p % 2 == 0).collect();
        let odds: Vec<_> = values.iter().copied().filter(|p| p % 2 == 1).collect();
        if evens.len() > 1 || odds.len() > 1 {
            None
        } else {
            let (a, c, free) = match (evens.first(), odds.first()) {
                (Some(&a), Some(&c)) => (a, c, vec![]),
                (Some(&a), None) => (a, 1, vec![format!("{small} odd, 0 < {small} < {big}/2")]),
                (None, Some(&c)) => (2 * c + 2, c, vec![format!("{big} even, {big} > {}", 2 * c)]),
                (None, None) => (
                    4,
                    1,
                    vec![
                        format!("{big} even"),
                        format!("{small} odd, 0 < {small} < {big}/2"),
                    ],
                ),
            };
            fit_of(pair(a, c), free)
        }
    };

    let half_fit = match values.last() {
        Some(&p) if p % 2 == 1 => fit_of(half(2 * p), vec![]),
        Some(&p) => fit_of(half(p), vec![]),
        None => fit_of(half(2), vec![format!("{big} even, {big}/2 odd")]),
    };

    let ident_fit = match values[..] {
        [] => fit_of(ident(4), vec![format!("{big} >= 4, 4 | {big}")]),
        [p] => fit_of(ident(p), vec![]),
        _ => None,
    };

    [pair_fit, half_fit, ident_fit]
}

/// All families containing `U`, in label order `a`..`i`.
pub fn containing_families(u: &BTreeSet<Element>) -> Vec<FamilyFit> {
    let mut out = Vec::new();
    out.extend(fit(MaximalFamily::OddAll, vec![], u));

    let non_identity: Vec<Element> = u
        .iter()
        .copied()
        .filter(|&x| x != Element::IDENTITY)
        .collect();
    let row_d = non_identity.first().map(|x| x.b());
    match row_d {
        Some(d) => out.extend(fit(MaximalFamily::ZeroRow { d }, vec![], u)),
        None => out.extend(fit(
            MaximalFamily::ZeroRow { d: 1 },
            vec!["d odd".into()],
            u,
        )),
    }

    let e_value = u.iter().find(|x| x.b() == 0 && x.a() >= 1).map(|x| x.a());
    let d_value = u.iter().find(|x| x.b() != 0).map(|x| x.b());
    let mut free = Vec::new();
    let a = match e_value {
        Some(a) => a,
        None => {
            let mut least = 1;
            if let Some(d) = d_value {
                least = least.max(d + 1);
            }
            for x in u.iter().filter(|x| x.b() != 0) {
                least = least.max(x.a().max(x.top()) + 1);
            }
            free.push(format!("a >= {least}"));
            least
        }
    };
    let d = match d_value {
        Some(d) => d,
        None => {
            free.push("d odd, d < a".into());
            if a >= 2 {
                1
            } else {
                -1
            }
        }
    };
    out.extend(fit(MaximalFamily::BelowA { a, d }, free, u));

    let [dp, dh, di] = diagonal_fits(u, false);
    let starred: BTreeSet<Element> = u.iter().map(|x| x.adjoint()).collect();
    let [fp, fh, fi] = diagonal_fits(&starred, true);
    out.extend([dp, dh, fp, fh, di, fi].into_iter().flatten());
    out
}

/// The avoiding partition of a family.
pub fn family_partition(family: MaximalFamily) -> PartitionRule {
    use MaximalFamily::*;
    let rule = match family {
        OddAll => Ok(PartitionRule::Parity),
        ZeroRow { d } => PartitionRule::row(d),
        BelowA { a, d } => PartitionRule::idempotent(a, d),
        DPair { a, c } => PartitionRule::diagonal(a, c),
        DHalf { a } => PartitionRule::diagonal(a, a / 2),
        FPair { b, d } => PartitionRule::diagonal(b, d).map(|r| r.star()),
        FHalf { b } => PartitionRule::diagonal(b, b / 2).map(|r| r.star()),
        DiagonalIdentity { a } => PartitionRule::diagonal_identity(a),
        RowIdentity { b } => PartitionRule::diagonal_identity(b).map(|r| r.star()),
    };
    rule.expect("valid family parameters give a valid rule")
}

pub fn star_set(t: &TargetSet) -> TargetSet {
    t.star()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Avoidable {
        families: Vec<FamilyFit>,
        certificate: PartitionRule,
    },
    Unavoidable {
        witness: Witness,
    },
}

impl Verdict {
    pub fn is_avoidable(&self) -> bool {
        matches!(self, Verdict::Avoidable { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Unavoidable { witness } => Some(witness),
            Verdict::Avoidable { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&PartitionRule> {
        match self {
            Verdict::Avoidable { certificate, .. } => Some(certificate),
            Verdict::Unavoidable { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Avoidable {
                families,
                certificate,
            } => {
                writeln!(f, "verdict avoidable")?;
                for family in families {
                    writeln!(f, "family {family}")?;
                }
                writeln!(f, "certificate {certificate}")
            }
            Verdict::Unavoidable { witness } => {
                writeln!(f, "verdict unavoidable")?;
                write!(f, "{witness}")
            }
        }
    }
}

/// Tries the constructors in a fixed order against `U`.
fn direct_witness(u: &BTreeSet<Element>) -> Option<Witness> {
    let elems: Vec<Element> = u.iter().copied().collect();
    let diag: Vec<i64> = elems
        .iter()
        .filter(|x| x.even_class() == EvenClass::D)
        .map(|x| x.a())
        .collect();
    let on_diagonal: Vec<i64> = elems
        .iter()
        .filter(|x| x.top() == 0 && x.a() >= 1)
        .map(|x| x.a())
        .collect();
    let idempotents: Vec<i64> = elems
        .iter()
        .filter(|x| x.even_class() == EvenClass::E)
        .map(|x| x.a())
        .collect();
    let odd: Vec<Element> = elems.iter().copied().filter(|x| x.is_odd()).collect();
    let has_identity = u.contains(&Element::IDENTITY);

    if let Some(x) = elems
        .iter()
        .find(|x| x.even_class() == EvenClass::InteriorEven)
    {
        return witness::interior_even(x.a(), x.b()).ok();
    }
    for &a in &diag {
        if let Some(x) = elems.iter().find(|x| x.top() >= 1) {
            return witness::diagonal_with_positive(a, x.a(), x.b()).ok();
        }
    }
    for &a in &diag {
        if let Some(&c) = on_diagonal.iter().find(|&&c| c != a && 2 * c > a) {
            return witness::diagonal_with_far_diagonal(a, c).ok();
        }
    }
    for &a in &diag {
        let small: Vec<i64> = on_diagonal
            .iter()
            .copied()
            .filter(|&c| c % 2 == 1 && 2 * c <= a)
            .collect();
        if let [c, e, ..] = small[..] {
            return witness::diagonal_two_odd(a, c, e).ok();
        }
    }
    if has_identity {
        for &a in &diag {
            if let Some(&c) = on_diagonal.iter().find(|&&c| 2 * c < a) {
                return witness::diagonal_odd_identity(a, c).ok();
            }
        }
    }
    for &a in &idempotents {
        if let Some(x) = elems
            .iter()
            .find(|x| x.a().max(x.top()) >= a && (x.a(), x.b()) != (a, 0))
        {
            return witness::idempotent_with_large(a, x.a(), x.b()).ok();
        }
    }
    for &a in &idempotents {
        let below: Vec<Element> = odd
            .iter()
            .copied()
            .filter(|x| x.a().max(x.top()) < a)
            .collect();
        if let Some((p, q)) = pair_on_two_rows(&below) {
            return witness::idempotent_two_rows(a, p.a(), p.b(), q.a(), q.b()).ok();
        }
    }
    if has_identity {
        if let Some((p, q)) = pair_on_two_rows(&odd) {
            return witness::identity_two_rows(p.a(), p.b(), q.a(), q.b()).ok();
        }
    }
    None
}

fn pair_on_two_rows(odd: &[Element]) -> Option<(Element, Element)> {
    let first = *odd.first()?;
    let other = odd.iter().copied().find(|x| x.b() != first.b())?;
    Some((first, other))
}

#[derive(Clone, Copy, Debug)]
pub struct Classifier {
    /// Largest window searched when no construction applies.
    pub search_cap: u32,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier { search_cap: 64 }
    }
}

impl Classifier {
    pub fn classify(&self, u: &BTreeSet<Element>) -> Result<Verdict, Error> {
        let families = containing_families(u);
        if let Some(first) = families.first() {
            let certificate = family_partition(first.family);
            return Ok(Verdict::Avoidable {
                families,
                certificate,
            });
        }
        let target = TargetSet::Finite(u.clone());
        if let Some(w) = direct_witness(u) {
            return Ok(Verdict::Unavoidable {
                witness: w.retarget(target),
            });
        }
        let starred: BTreeSet<Element> = u.iter().map(|x| x.adjoint()).collect();
        if let Some(w) = direct_witness(&starred) {
            return Ok(Verdict::Unavoidable {
                witness: w.star().retarget(target),
            });
        }
        self.search(u, target)
    }

    fn search(&self, u: &BTreeSet<Element>, target: TargetSet) -> Result<Verdict, Error> {
        let extent = u.iter().map(|x| x.a().max(x.top())).max().unwrap_or(0);
        let mut n = (extent as u32).clamp(2, self.search_cap.max(2));
        loop {
            let g = associated_graph(Window::new(n), &target);
            if let Some(cycle) = bipartition_or_odd_cycle(&g).odd_cycle() {
                let witness = Witness {
                    cycle: cycle.to_vec(),
                    target,
                    provenance: Provenance {
                        construction: Construction::Search,
                        starred: false,
                    },
                };
                return Ok(Verdict::Unavoidable { witness });
            }
            if n >= self.search_cap {
                return Err(Error::NoWitness {
                    cap: self.search_cap,
                });
            }
            n = (2 * n).min(self.search_cap);
        }
    }

    /// For each window element outside `family`, looks for `S ⊆ family ∩ w`
    /// with `|S| ≤ 2` such that `S ∪ {x}` classifies as unavoidable.
    pub fn maximality_probe(&self, family: MaximalFamily, w: Window, exec: Exec) -> ProbeReport {
        let inside: Vec<Element> = w
            .elements()
            .into_iter()
            .filter(|&x| family.contains(x))
            .collect();
        let outside: Vec<Element> = w
            .elements()
            .into_iter()
            .filter(|&x| !family.contains(x))
            .collect();
        let mut subsets: Vec<Vec<Element>> = vec![vec![]];
        subsets.extend(inside.iter().map(|&s| vec![s]));
        for i in 0..inside.len() {
            for j in i + 1..inside.len() {
                subsets.push(vec![inside[i], inside[j]]);
            }
        }
        let results = exec.map(&outside, |&x| {
            subsets.iter().find_map(|s| {
                let mut u: BTreeSet<Element> = s.iter().copied().collect();
                u.insert(x);
                match self.classify(&u) {
                    Ok(Verdict::Unavoidable { witness }) if witness::validate(&witness) => {
                        Some(Obstruction {
                            element: x,
                            support: s.clone(),
                            provenance: witness.provenance,
                        })
                    }
                    _ => None,
                }
            })
        });
        let mut obstructed = Vec::new();
        let mut unobstructed = Vec::new();
        for (x, r) in outside.iter().zip(results) {
            match r {
                Some(o) => obstructed.push(o),
                None => unobstructed.push(*x),
            }
        }
        ProbeReport {
            family,
            window: w.n,
            obstructed,
            unobstructed,
        }
    }
}

pub fn classify(u: &BTreeSet<Element>) -> Result<Verdict, Error> {
    Classifier::default().classify(u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub element: Element,
    /// The finite subset of the family used together with `element`.
    pub support: Vec<Element>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub family: MaximalFamily,
    pub window: u32,
    pub obstructed: Vec<Obstruction>,
    pub unobstructed: Vec<Element>,
}

impl ProbeReport {
    pub fn all_obstructed(&self) -> bool {
        self.unobstructed.is_empty()
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "probe {} window {}", self.family, self.window)?;
        for o in &self.obstructed {
            writeln!(
                f,
                "obstructed {} with {{{}}} by {}",
                o.element,
                format_elements(&o.support),
                o.provenance
            )?;
        }
        for x in &self.unobstructed {
            writeln!(f, "unobstructed {x}")?;
        }
        writeln!(
            f,
            "summary {} obstructed, {} unobstructed",
            self.obstructed.len(),
            self.unobstructed.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partition_avoids;

    fn e(a: i64, b: i64) -> Element {
        Element::new(a, b).unwrap()
    }

    fn set(xs: &[(i64, i64)]) -> BTreeSet<Element> {
        xs.iter().map(|&(a, b)| e(a, b)).collect()
    }

    fn labels(u: &BTreeSet<Element>) -> Vec<String> {
        containing_families(u)
            .iter()
            .map(|f| f.family.to_string())
            .collect()
    }

    #[test]
    fn containing_families_examples() {
        assert_eq!(labels(&set(&[(8, -8), (3, -3)])), ["d:a=8,c=3"]);
        assert_eq!(labels(&set(&[(1, 2)])), Vec::<String>::new());
        let fits = containing_families(&set(&[(0, 1), (2, 1), (5, 1)]));
        let names: Vec<_> = fits.iter().map(|f| f.family.to_string()).collect();
        assert_eq!(names, ["a", "b:d=1", "c:a=7,d=1"]);
        assert_eq!(fits[2].free, ["a >= 7"]);
        assert_eq!(labels(&set(&[(0, 8), (0, 3)])), ["f:b=8,d=3"]);
        assert_eq!(labels(&set(&[(4, -4), (0, 0)])), ["h:a=4"]);
        assert_eq!(labels(&set(&[(0, 4), (0, 0)])), ["i:b=4"]);
    }

    #[test]
    fn fits_contain_their_sets() {
        let w = Window::new(5);
        let elems = w.elements();
        for i in 0..elems.len() {
            for j in i..elems.len() {
                let u = set(&[(elems[i].a(), elems[i].b()), (elems[j].a(), elems[j].b())]);
                for f in containing_families(&u) {
                    assert!(u.iter().all(|&x| f.family.contains(x)), "{f} vs {u:?}");
                }
            }
        }
    }

    #[test]
    fn family_partition_examples() {
        assert_eq!(
            family_partition(MaximalFamily::DPair { a: 8, c: 3 }),
            PartitionRule::diagonal(8, 3).unwrap()
        );
        assert_eq!(
            family_partition(MaximalFamily::FPair { b: 8, d: 3 }),
            PartitionRule::diagonal(8, 3).unwrap().star()
        );
        assert_eq!(
            family_partition(MaximalFamily::OddAll),
            PartitionRule::Parity
        );
    }

    #[test]
    fn classify_examples() {
        let v = classify(&set(&[(2, -2), (4, -4)])).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(
            w.provenance.construction,
            Construction::DiagonalWithFarDiagonal
        );
        assert!(witness::validate(w));

        let v = classify(&set(&[(8, -8), (3, -3)])).unwrap();
        assert_eq!(
            v.certificate(),
            Some(&PartitionRule::diagonal(8, 3).unwrap())
        );

        let v = classify(&set(&[(0, 0), (1, 1), (2, 3)])).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.provenance.construction, Construction::IdentityTwoRows);
        assert!(witness::validate(w));

        let v = classify(&set(&[(1, 2)])).unwrap();
        assert_eq!(v.witness().unwrap().cycle.len(), 3);
    }

    #[test]
    fn row_sets_use_adjoint_witnesses() {
        let v = classify(&set(&[(0, 2), (0, 4)])).unwrap();
        let w = v.witness().unwrap();
        assert!(w.provenance.starred);
        assert!(witness::validate(w));
    }

    #[test]
    fn certificates_avoid_their_sets() {
        for u in [
            set(&[(8, -8), (3, -3)]),
            set(&[(0, 8), (0, 3)]),
            set(&[(6, 0), (0, 5), (0, 0)]),
            set(&[(4, -4), (0, 0)]),
            set(&[(0, 1), (3, 1)]),
        ] {
            let v = classify(&u).unwrap();
            let rule = v.certificate().unwrap();
            assert!(
                partition_avoids(rule, &TargetSet::Finite(u.clone()), Window::new(30)).is_ok(),
                "{rule} on {u:?}"
            );
        }
    }

    #[test]
    fn star_set_is_an_involution() {
        let t = TargetSet::Finite(set(&[(8, -8), (3, -3)]));
        assert_eq!(star_set(&t), TargetSet::Finite(set(&[(0, 8), (0, 3)])));
        assert_eq!(star_set(&star_set(&t)), t);
        assert_eq!(
            star_set(&TargetSet::Family(MaximalFamily::DPair { a: 8, c: 3 })),
            TargetSet::Family(MaximalFamily::FPair { b: 8, d: 3 })
        );
    }

    #[test]
    fn probe_diagonal_pair() {
        let report = Classifier::default().maximality_probe(
            MaximalFamily::DPair { a: 8, c: 3 },
            Window::new(12),
            Exec::default(),
        );
        assert!(report.all_obstructed(), "{report}");
        assert_eq!(report.obstructed.len(), Window::new(12).len() - 2);
    }

    #[test]
    fn search_cap_is_reported() {
        let tiny = Classifier { search_cap: 2 };
        // {(0,0)} is avoidable, so go straight to the search routine
        let u = set(&[(0, 0)]);
        assert_eq!(
            tiny.search(&u, TargetSet::Finite(u.clone())),
            Err(Error::NoWitness { cap: 2 })
        );
    }

    #[test]
    fn text_format() {
        let v = classify(&set(&[(8, -8), (3, -3)])).unwrap();
        assert_eq!(
            v.to_string(),
            "verdict avoidable\nfamily d:a=8,c=3\ncertificate D:a=8,c=3\n"
        );
        let v = classify(&set(&[(1, 2)])).unwrap();
        assert!(v
            .to_string()
            .starts_with("verdict unavoidable\nwitness interior-even\n"));
    }
}
