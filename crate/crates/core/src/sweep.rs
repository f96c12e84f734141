//! Exhaustive verification sweeps over bounded parameter ranges.
//!
//! Each suite returns a [`SweepReport`] with the number of checks made and
//! the first few failures. The CLI `verify` command and the acceptance test
//! both drive these.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::classify::{Classifier, Verdict};
use crate::element::Element;
use crate::error::Error;
use crate::exec::Exec;
use crate::family::MaximalFamily;
use crate::graph::{
    associated_graph_with, bipartition_or_odd_cycle, verify_certificate, Certificate,
};
use crate::partition::{partition_avoids_with, render_grid, PartitionRule};
use crate::window::{TargetSet, Window};
use crate::witness::{self, Witness};

const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub checked: u64,
    pub failures: Vec<String>,
    pub failure_count: u64,
    /// Free-form counters, e.g. non-simple cycles among valid witnesses.
    pub notes: Vec<String>,
}

impl SweepReport {
    fn new(name: &str) -> Self {
        SweepReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, checked: u64, failures: Vec<String>) {
        self.checked += checked;
        for f in failures {
            self.fail(f);
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        writeln!(
            f,
            "{}: {status} ({} checks, {} failures)",
            self.name, self.checked, self.failure_count
        )?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for failure in &self.failures {
            writeln!(f, "  failure: {failure}")?;
        }
        Ok(())
    }
}

/// Associativity on all triples of window `n_triples`; identity, the two
/// regularity laws and `(xy)* = y*x*` on all pairs of window `n_pairs`.
pub fn axioms(n_triples: u32, n_pairs: u32, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("axioms");
    let w = Window::new(n_triples).elements();
    let results = exec.map(&w, |&x| {
        let mut bad = Vec::new();
        let mut count = 0u64;
        for &y in &w {
            let xy = x * y;
            for &z in &w {
                count += 1;
                if xy * z != x * (y * z) {
                    bad.push(format!("({x}{y}){z} != {x}({y}{z})"));
                }
            }
        }
        (count, bad)
    });
    for (c, bad) in results {
        report.absorb(c, bad);
    }

    let w = Window::new(n_pairs).elements();
    let results = exec.map(&w, |&x| {
        let mut bad = Vec::new();
        let mut count = 0u64;
        let xs = x.adjoint();
        if x * Element::IDENTITY != x || Element::IDENTITY * x != x {
            bad.push(format!("identity law fails at {x}"));
        }
        if x * xs * x != x || xs * x * xs != xs {
            bad.push(format!("regularity fails at {x}"));
        }
        count += 2;
        for &y in &w {
            count += 1;
            if (x * y).adjoint() != y.adjoint() * xs {
                bad.push(format!("({x}{y})* != {}{}", y.adjoint(), xs));
            }
        }
        (count, bad)
    });
    for (c, bad) in results {
        report.absorb(c, bad);
    }
    report
}

/// `xy` acts as `y` followed by `x`, domains included, for every pair of
/// window `n` and every point `0..=points`.
pub fn representation(n: u32, points: i64, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("representation");
    let w = Window::new(n).elements();
    let results = exec.map(&w, |&x| {
        let mut bad = Vec::new();
        let mut count = 0u64;
        for &y in &w {
            let xy = x * y;
            for m in 0..=points {
                count += 1;
                let composed = y.apply_shift(m).and_then(|t| x.apply_shift(t));
                if xy.apply_shift(m) != composed {
                    bad.push(format!("{x}·{y} at {m}"));
                }
            }
        }
        (count, bad)
    });
    for (c, bad) in results {
        report.absorb(c, bad);
    }
    report
}

/// `xy` is odd exactly when `x` and `y` differ in parity.
pub fn parity_law(n: u32, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("parity");
    let w = Window::new(n).elements();
    let results = exec.map(&w, |&x| {
        let bad: Vec<String> = w
            .iter()
            .filter(|&&y| (x * y).is_odd() != (x.parity() != y.parity()))
            .map(|&y| format!("{x}·{y}"))
            .collect();
        (w.len() as u64, bad)
    });
    for (c, bad) in results {
        report.absorb(c, bad);
    }
    report
}

#[derive(Default)]
struct Tally {
    valid: u64,
    non_simple: u64,
    bad: Vec<String>,
}

impl Tally {
    fn record(&mut self, label: impl FnOnce() -> String, built: Result<Witness, Error>) {
        match built {
            Ok(w) => {
                if witness::validate(&w) {
                    self.valid += 1;
                    if !w.is_simple() {
                        self.non_simple += 1;
                    }
                } else {
                    self.bad.push(format!(
                        "{}: invalid cycle {}",
                        label(),
                        w.to_string().trim_end()
                    ));
                }
            }
            Err(Error::Precondition { .. }) => {}
            Err(e) => self.bad.push(format!("{}: {e}", label())),
        }
    }

    fn merge(&mut self, other: Tally) {
        self.valid += other.valid;
        self.non_simple += other.non_simple;
        self.bad.extend(other.bad);
    }
}

/// Every constructor on every parameter tuple with coordinates in
/// `-max..=max`; tuples failing a precondition are skipped, everything else
/// must validate.
pub fn witnesses(max: i64, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("witnesses");
    let nat: Vec<i64> = (0..=max).collect();
    let int: Vec<i64> = (-max..=max).collect();

    type Sweep<'a> = (&'static str, Box<dyn Fn(i64) -> Tally + Sync + 'a>);
    let suites: Vec<Sweep> = vec![
        (
            "interior-even",
            Box::new(|a| {
                let mut t = Tally::default();
                for &b in &int {
                    t.record(
                        || format!("interior_even({a},{b})"),
                        witness::interior_even(a, b),
                    );
                }
                t
            }),
        ),
        (
            "diagonal-with-positive",
            Box::new(|a| {
                let mut t = Tally::default();
                for &c in &nat {
                    for &d in &int {
                        t.record(
                            || format!("diagonal_with_positive({a},{c},{d})"),
                            witness::diagonal_with_positive(a, c, d),
                        );
                    }
                }
                t
            }),
        ),
        (
            "diagonal-with-far-diagonal",
            Box::new(|a| {
                let mut t = Tally::default();
                for &c in &nat {
                    t.record(
                        || format!("diagonal_with_far_diagonal({a},{c})"),
                        witness::diagonal_with_far_diagonal(a, c),
                    );
                }
                t
            }),
        ),
        (
            "diagonal-two-odd",
            Box::new(|a| {
                let mut t = Tally::default();
                for &c in &nat {
                    for &e in &nat {
                        t.record(
                            || format!("diagonal_two_odd({a},{c},{e})"),
                            witness::diagonal_two_odd(a, c, e),
                        );
                    }
                }
                t
            }),
        ),
        (
            "diagonal-odd-identity",
            Box::new(|a| {
                let mut t = Tally::default();
                for &c in &nat {
                    t.record(
                        || format!("diagonal_odd_identity({a},{c})"),
                        witness::diagonal_odd_identity(a, c),
                    );
                }
                t
            }),
        ),
        (
            "idempotent-with-large",
            Box::new(|a| {
                let mut t = Tally::default();
                for &c in &nat {
                    for &d in &int {
                        t.record(
                            || format!("idempotent_with_large({a},{c},{d})"),
                            witness::idempotent_with_large(a, c, d),
                        );
                    }
                }
                t
            }),
        ),
        (
            "idempotent-two-rows",
            Box::new(|a| {
                let mut t = Tally::default();
                for &c in &nat {
                    for &d in &int {
                        for &e in &nat {
                            for &f in &int {
                                t.record(
                                    || format!("idempotent_two_rows({a},{c},{d},{e},{f})"),
                                    witness::idempotent_two_rows(a, c, d, e, f),
                                );
                            }
                        }
                    }
                }
                t
            }),
        ),
        (
            "identity-two-rows",
            Box::new(|c| {
                let mut t = Tally::default();
                for &d in &int {
                    for &e in &nat {
                        for &f in &int {
                            t.record(
                                || format!("identity_two_rows({c},{d},{e},{f})"),
                                witness::identity_two_rows(c, d, e, f),
                            );
                        }
                    }
                }
                t
            }),
        ),
    ];

    for (name, sweep) in &suites {
        let mut total = Tally::default();
        for t in exec.map(&nat, |&first| sweep(first)) {
            total.merge(t);
        }
        report.notes.push(format!(
            "{name}: {} valid tuples, {} closed walks with a repeated vertex",
            total.valid, total.non_simple
        ));
        report.absorb(total.valid, total.bad);
    }
    report
}

/// The rule ranges checked by [`partitions`]: diagonal rules for even
/// `a ≤ max` on window 60, idempotent rules for `a ≤ max/2` on window 45, row
/// rules for odd `|d| ≤ max/3` and the parity split on window 60, and
/// diagonal-identity rules for `a ≤ max/2` on window 60.
pub fn partition_cases(max: i64) -> Vec<(PartitionRule, TargetSet, u32)> {
    let mut cases = Vec::new();
    for a in (2..=max).step_by(2) {
        for c in (1..=a / 2).step_by(2) {
            let target = if 2 * c == a {
                MaximalFamily::DHalf { a }
            } else {
                MaximalFamily::DPair { a, c }
            };
            let rule = PartitionRule::diagonal(a, c).expect("admissible");
            cases.push((rule, TargetSet::Family(target), 60));
        }
    }
    for a in 1..=max / 2 {
        for d in (-(a - 1)..a).filter(|d| d % 2 != 0) {
            let rule = PartitionRule::idempotent(a, d).expect("admissible");
            cases.push((rule, TargetSet::Family(MaximalFamily::BelowA { a, d }), 45));
        }
    }
    for d in (-(max / 3)..=max / 3).filter(|d| d % 2 != 0) {
        let rule = PartitionRule::row(d).expect("admissible");
        cases.push((rule, TargetSet::Family(MaximalFamily::ZeroRow { d }), 60));
    }
    cases.push((
        PartitionRule::Parity,
        TargetSet::Family(MaximalFamily::OddAll),
        60,
    ));
    for a in (4..=max / 2).step_by(4) {
        let rule = PartitionRule::diagonal_identity(a).expect("admissible");
        cases.push((
            rule,
            TargetSet::Family(MaximalFamily::DiagonalIdentity { a }),
            60,
        ));
    }
    cases
}

/// Each rule against its family on the window listed in [`partition_cases`].
pub fn partitions(max: i64, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("partitions");
    for (rule, target, n) in partition_cases(max) {
        report.checked += 1;
        if let Err(v) = partition_avoids_with(&rule, &target, Window::new(n), exec) {
            report.fail(format!("{rule} vs {target} on n={n}: {v}"));
        }
    }
    report
}

/// A printed grid: the rule, its row and column ranges, and the cells.
pub struct Figure {
    pub rule: &'static str,
    pub rows: (i64, i64),
    pub cols: (i64, i64),
    pub lines: &'static [&'static str],
}

pub const FIGURES: [Figure; 3] = [
    Figure {
        rule: "D:a=8,c=3",
        rows: (0, 10),
        cols: (-9, 5),
        lines: &[
            ".........100011",
            "........1100011",
            ".......01100011",
            "......001100011",
            ".....1001100011",
            "....10001100011",
            "...110001100011",
            "..0110001100011",
            ".00110001100011",
            "100110001100011",
            "000110001100011",
        ],
    },
    Figure {
        rule: "E:a=6,d=5",
        rows: (0, 7),
        cols: (-7, 7),
        lines: &[
            ".......00011100",
            "......100011100",
            ".....1100011100",
            "....01100011100",
            "...001100011100",
            "..0001100011100",
            ".10001110011100",
            "110001110011100",
        ],
    },
    Figure {
        rule: "Z:d=5",
        rows: (0, 7),
        cols: (-7, 13),
        lines: &[
            ".......00011100111001",
            "......100011100111001",
            ".....1100011100111001",
            "....01100011100111001",
            "...001100011100111001",
            "..0001100011100111001",
            ".10001100011100111001",
            "110001100011100111001",
        ],
    },
];

/// Renders each rule over its printed range and compares cell by cell.
pub fn figures() -> SweepReport {
    let mut report = SweepReport::new("figures");
    for fig in &FIGURES {
        let rule: PartitionRule = fig.rule.parse().expect("figure rule parses");
        let grid = render_grid(&rule, fig.rows.0..=fig.rows.1, fig.cols.0..=fig.cols.1);
        let rendered: Vec<&str> = grid.lines().collect();
        for (i, (got, want)) in rendered.iter().zip(fig.lines).enumerate() {
            for (j, (g, w)) in got.chars().zip(want.chars()).enumerate() {
                report.checked += 1;
                if g != w {
                    report.fail(format!(
                        "{}: cell ({}, {}) is {g}, expected {w}",
                        fig.rule,
                        fig.rows.0 + i as i64,
                        fig.cols.0 + j as i64
                    ));
                }
            }
            if got.len() != want.len() {
                report.fail(format!("{}: row {i} has the wrong width", fig.rule));
            }
        }
        if rendered.len() != fig.lines.len() {
            report.fail(format!("{}: wrong number of rows", fig.rule));
        }
    }
    report
}

/// All subsets of window `n` with at most two elements, the empty set first.
pub fn small_sets(n: u32) -> Vec<BTreeSet<Element>> {
    let elems = Window::new(n).elements();
    let mut out = vec![BTreeSet::new()];
    for (i, &x) in elems.iter().enumerate() {
        out.push(BTreeSet::from([x]));
        for &y in &elems[i + 1..] {
            out.push(BTreeSet::from([x, y]));
        }
    }
    out
}

fn describe(u: &BTreeSet<Element>) -> String {
    format!("{{{}}}", crate::element::format_elements(u))
}

/// Classifies every subset of window `n_sets` with at most two elements and
/// cross-checks each verdict by breadth-first search on window `n_graph`.
pub fn theorem(n_sets: u32, n_graph: u32, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("theorem");
    let classifier = Classifier::default();
    let w = Window::new(n_graph);
    let sets = small_sets(n_sets);
    let results = exec.map(&sets, |u| {
        let target = TargetSet::Finite(u.clone());
        let g = associated_graph_with(w, &target, Exec::Sequential);
        let bfs = bipartition_or_odd_cycle(&g);
        if !verify_certificate(&g, &bfs) {
            return Some(format!(
                "{}: search certificate does not verify",
                describe(u)
            ));
        }
        match classifier.classify(u) {
            Err(e) => Some(format!("{}: {e}", describe(u))),
            Ok(Verdict::Unavoidable { witness }) => {
                if !witness::validate(&witness) {
                    Some(format!("{}: witness does not validate", describe(u)))
                } else if bfs.is_two_coloring() {
                    Some(format!(
                        "{}: unavoidable but bipartite on n={n_graph}",
                        describe(u)
                    ))
                } else {
                    None
                }
            }
            Ok(Verdict::Avoidable { certificate, .. }) => {
                if let Certificate::OddCycle(_) = bfs {
                    Some(format!(
                        "{}: avoidable but odd cycle on n={n_graph}",
                        describe(u)
                    ))
                } else if let Err(v) =
                    partition_avoids_with(&certificate, &target, w, Exec::Sequential)
                {
                    Some(format!(
                        "{}: certificate {certificate} violated by {v}",
                        describe(u)
                    ))
                } else {
                    None
                }
            }
        }
    });
    for r in results {
        report.checked += 1;
        if let Some(msg) = r {
            report.fail(msg);
        }
    }
    let verdicts = exec.map(&sets, |u| classifier.classify(u).ok());
    let avoidable = verdicts
        .iter()
        .flatten()
        .filter(|v| v.is_avoidable())
        .count();
    let searched = verdicts
        .iter()
        .flatten()
        .filter_map(|v| v.witness())
        .filter(|w| w.provenance.construction == crate::witness::Construction::Search)
        .count();
    report.notes.push(format!(
        "{} sets, {avoidable} avoidable, {searched} witnesses found by search",
        sets.len()
    ));
    report
}

/// `U` and `U*` get the same kind of verdict, and the adjoint of each
/// avoidable certificate avoids `U*` on window `n_graph`.
pub fn duality(n_sets: u32, n_graph: u32, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("duality");
    let classifier = Classifier::default();
    let w = Window::new(n_graph);
    let sets = small_sets(n_sets);
    let results = exec.map(&sets, |u| {
        let starred: BTreeSet<Element> = u.iter().map(|x| x.adjoint()).collect();
        let (v, vs) = match (classifier.classify(u), classifier.classify(&starred)) {
            (Ok(v), Ok(vs)) => (v, vs),
            (Err(e), _) | (_, Err(e)) => return Some(format!("{}: {e}", describe(u))),
        };
        if v.is_avoidable() != vs.is_avoidable() {
            return Some(format!("{}: verdict differs from its adjoint", describe(u)));
        }
        if let Some(rule) = v.certificate() {
            let target = TargetSet::Finite(starred);
            if let Err(v) = partition_avoids_with(&rule.star(), &target, w, Exec::Sequential) {
                return Some(format!("{}: star({rule}) violated by {v}", describe(u)));
            }
        }
        None
    });
    for r in results {
        report.checked += 1;
        if let Some(msg) = r {
            report.fail(msg);
        }
    }
    report
}

/// The adjoint of each rule in [`partition_cases`] against the adjoint family.
/// Windows are closed under the adjoint, so the same window is used.
pub fn star_transport(max: i64, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("star-transport");
    for (rule, target, n) in partition_cases(max) {
        let (rule, target) = (rule.star(), target.star());
        report.checked += 1;
        if let Err(v) = partition_avoids_with(&rule, &target, Window::new(n), exec) {
            report.fail(format!("{rule} vs {target} on n={n}: {v}"));
        }
    }
    report
}

/// The families probed for maximality.
pub fn probe_families() -> Vec<MaximalFamily> {
    use MaximalFamily::*;
    vec![
        DPair { a: 8, c: 3 },
        DHalf { a: 6 },
        OddAll,
        ZeroRow { d: 5 },
        ZeroRow { d: -5 },
        BelowA { a: 6, d: 5 },
        FPair { b: 8, d: 3 },
        FHalf { b: 6 },
        DiagonalIdentity { a: 4 },
        RowIdentity { b: 4 },
    ]
}

pub fn probes(n: u32, exec: Exec) -> SweepReport {
    let mut report = SweepReport::new("probes");
    let classifier = Classifier::default();
    for family in probe_families() {
        let r = classifier.maximality_probe(family, Window::new(n), exec);
        report.checked += (r.obstructed.len() + r.unobstructed.len()) as u64;
        for x in &r.unobstructed {
            report.fail(format!("{family}: no obstruction for {x}"));
        }
        report.notes.push(format!(
            "{family}: {} obstructed, {} unobstructed",
            r.obstructed.len(),
            r.unobstructed.len()
        ));
    }
    report
}
