//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use bicyclic::classify::Classifier;
use bicyclic::coloring::{k_colorable, ColoringOutcome, DEFAULT_BUDGET};
use bicyclic::graph::{associated_graph, AssociatedGraph};
use bicyclic::sweep::{self, SweepReport};
use bicyclic::{Element, Exec, MaximalFamily, TargetSet, Window};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: SweepReport) -> Outcome {
    let mut detail = format!("{} checks", r.checked);
    for note in &r.notes {
        detail.push_str(&format!("; {note}"));
    }
    if !r.passed() {
        detail.push_str(&format!(
            ", {} failures; first: {}",
            r.failure_count,
            r.failures.join(" | ")
        ));
    }
    Outcome {
        ok: r.passed(),
        detail,
    }
}

fn combine(parts: Vec<SweepReport>) -> Outcome {
    let ok = parts.iter().all(|r| r.passed());
    let detail = parts
        .iter()
        .map(|r| {
            let mut s = format!("{} {} checks", r.name, r.checked);
            if !r.passed() {
                s.push_str(&format!(" FAILED: {}", r.failures.join(" | ")));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn e(a: i64, b: i64) -> Element {
    Element::new(a, b).unwrap()
}

fn toy(len: usize, complete: bool) -> AssociatedGraph {
    let vs: Vec<Element> = (0..len as i64).map(|i| e(0, i)).collect();
    let mut edges = Vec::new();
    for i in 0..len {
        if complete {
            for j in i + 1..len {
                edges.push((vs[i], vs[j]));
            }
        } else {
            edges.push((vs[i], vs[(i + 1) % len]));
        }
    }
    AssociatedGraph::from_edges(vs, edges)
}

fn coloring_sanity() -> Outcome {
    let mut notes = Vec::new();
    let g = associated_graph(Window::new(6), &TargetSet::finite([e(2, -2), e(4, -4)]));
    let two = k_colorable(&g, 2, DEFAULT_BUDGET);
    let three = k_colorable(&g, 3, DEFAULT_BUDGET);
    let mut ok = two == ColoringOutcome::Impossible && matches!(three, ColoringOutcome::Colored(_));
    notes.push(format!(
        "diagonal pair k=2 {two:?}, k=3 colored={}",
        matches!(three, ColoringOutcome::Colored(_))
    ));

    let checks = [
        (toy(3, false), 2, false),
        (toy(3, false), 3, true),
        (toy(5, false), 2, false),
        (toy(6, false), 2, true),
        (toy(4, true), 3, false),
        (toy(4, true), 4, true),
    ];
    for (g, k, expect) in checks {
        let got = match k_colorable(&g, k, DEFAULT_BUDGET) {
            ColoringOutcome::Colored(_) => Some(true),
            ColoringOutcome::Impossible => Some(false),
            ColoringOutcome::Undecided { .. } => None,
        };
        ok &= got == Some(expect);
    }
    notes.push("toy cycles and cliques".into());
    Outcome {
        ok,
        detail: notes.join("; "),
    }
}

fn maximality() -> Outcome {
    use MaximalFamily::*;
    let families = [
        DPair { a: 8, c: 3 },
        DHalf { a: 6 },
        OddAll,
        ZeroRow { d: 5 },
        ZeroRow { d: -5 },
        BelowA { a: 6, d: 5 },
        FPair { b: 8, d: 3 },
        FHalf { b: 6 },
    ];
    let classifier = Classifier::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for fam in families {
        let r = classifier.maximality_probe(fam, Window::new(12), Exec::default());
        ok &= r.all_obstructed() && !r.obstructed.is_empty();
        let mut s = format!(
            "{fam} {}/{}",
            r.obstructed.len(),
            r.obstructed.len() + r.unobstructed.len()
        );
        if !r.unobstructed.is_empty() {
            let missing: BTreeSet<String> = r.unobstructed.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(" missing {missing:?}"));
        }
        parts.push(s);
    }
    Outcome {
        ok,
        detail: parts.join(", "),
    }
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let exec = Exec::default();
    let criteria: Vec<Criterion> = vec![
        (
            "1 algebra axioms",
            Box::new(move || from_report(sweep::axioms(10, 20, exec))),
        ),
        (
            "2 representation oracle",
            Box::new(move || from_report(sweep::representation(20, 60, exec))),
        ),
        (
            "3 parity law",
            Box::new(move || from_report(sweep::parity_law(20, exec))),
        ),
        (
            "4 witness soundness",
            Box::new(move || {
                let r = sweep::witnesses(20, exec);
                let mut o = from_report(r.clone());
                if r.checked < 10_000 {
                    o.ok = false;
                    o.detail.push_str(", fewer than 10^4 tuples");
                }
                o
            }),
        ),
        (
            "5 partition avoidance",
            Box::new(move || from_report(sweep::partitions(30, exec))),
        ),
        (
            "6 figure fidelity",
            Box::new(|| from_report(sweep::figures())),
        ),
        (
            "7 theorem consistency",
            Box::new(move || from_report(sweep::theorem(8, 24, exec))),
        ),
        (
            "8 duality",
            Box::new(move || {
                combine(vec![
                    sweep::duality(8, 24, exec),
                    sweep::star_transport(30, exec),
                ])
            }),
        ),
        ("9 maximality probes", Box::new(maximality)),
        ("10 k-coloring sanity", Box::new(coloring_sanity)),
    ];

    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {name} [{:.2}s]: {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
