//! The verification suite: numbered criteria, each a list of named items that
//! can be filtered by prefix and run on several threads.

mod properties;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::decomp::{decompose_b, verify_block_tensor_table, Catalogued, SummandKind, Sl2Table, TableCase};
use crate::error::Result;
use crate::rootdata::{CartanType, Weight};

/// Outcome of one suite item.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    /// Certificate JSON, when the item produced one.
    pub certificate: Option<Value>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome { passed: true, detail: detail.into(), certificate: None }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Outcome { passed: false, detail: detail.into(), certificate: None }
    }

    fn from_result(r: Result<Outcome>) -> Self {
        r.unwrap_or_else(|e| Outcome::fail(format!("error: {e}")))
    }
}

type Runner = Box<dyn Fn(bool) -> Result<Outcome> + Send + Sync>;

/// One named check belonging to a criterion.
pub struct Item {
    pub criterion: u8,
    pub name: String,
    run: Runner,
}

impl Item {
    fn new(criterion: u8, name: impl Into<String>, run: impl Fn(bool) -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Item { criterion, name: name.into(), run: Box::new(run) }
    }
}

/// Time budget of a criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    PerItem(Duration),
    Total(Duration),
    None,
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Budget,
}

pub fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "sl2 Borel decompositions at depth 10", budget: Budget::PerItem(s(1)) },
        Criterion { id: 2, title: "sl2 tensor table at depth 10", budget: Budget::Total(s(5)) },
        Criterion { id: 3, title: "sl3 Verma Borel decompositions at depth 8", budget: Budget::Total(s(30)) },
        Criterion { id: 4, title: "sl3 principal block tensor table at depth 8", budget: Budget::Total(s(120)) },
        Criterion { id: 5, title: "property suites", budget: Budget::Total(s(120)) },
        Criterion { id: 6, title: "tensor identity at character level, depth 6", budget: Budget::None },
    ]
}

#[derive(Clone, Debug)]
pub struct ItemResult {
    pub criterion: u8,
    pub name: String,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct CriterionSummary {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub items: usize,
    pub failed: Vec<String>,
    pub elapsed: Duration,
    pub within_budget: bool,
}

fn expect_kinds(cert: &crate::decomp::DecompositionCertificate, want: &[SummandKind]) -> Outcome {
    let got: Vec<SummandKind> = cert.summands.iter().map(|s| s.kind).collect();
    let labels: Vec<String> = cert.summands.iter().map(|s| s.label.clone()).collect();
    let fails: Vec<String> = cert.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let mut detail = labels.join(" + ");
    if got != want {
        detail = format!("expected kinds {want:?}, certified {detail}");
    }
    if !fails.is_empty() {
        detail = format!("{detail}; failed checks: {}", fails.join("; "));
    }
    Outcome { passed: got == want && cert.valid(), detail, certificate: None }
}

fn decompose_item(criterion: u8, name: String, ctx: Catalogued, depth: u32, want: Vec<SummandKind>) -> Item {
    Item::new(criterion, name, move |evidence| {
        let m = ctx.build(depth)?;
        let cert = decompose_b(&m, &ctx)?;
        let mut out = expect_kinds(&cert, &want);
        if !cert.reverify(&m)? {
            out.passed = false;
            out.detail.push_str("; stored evidence does not reverify");
        }
        out.certificate = Some(cert.to_json(evidence));
        Ok(out)
    })
}

fn table_item(criterion: u8, case: TableCase, depth: u32) -> Item {
    Item::new(criterion, case.id(), move |evidence| {
        let cert = verify_block_tensor_table(&case, depth)?;
        let fails: Vec<String> = cert.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        let labels: Vec<String> = cert.summands.iter().map(|s| s.label.clone()).collect();
        let detail = if !fails.is_empty() {
            format!("failed checks: {}", fails.join("; "))
        } else if labels.is_empty() {
            format!("{} checks passed", cert.checks.len())
        } else {
            labels.join(" + ")
        };
        Ok(Outcome { passed: cert.valid(), detail, certificate: Some(cert.to_json(evidence)) })
    })
}

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

/// Every suite item, in criterion order.
pub fn items() -> Vec<Item> {
    use SummandKind::*;
    let mut out = Vec::new();
    for l in 0..=4i64 {
        let lam = w(&[l]);
        let verma = Catalogued::Verma { ty: CartanType::A1, lambda: lam.clone(), word: vec![] };
        out.push(decompose_item(1, format!("sl2-verma-{l}"), verma, 10, vec![Simple, Verma]));
        out.push(decompose_item(
            1,
            format!("sl2-projective-{l}"),
            Catalogued::Projective { lambda: lam.clone() },
            10,
            vec![Simple, Verma, Verma],
        ));
        out.push(decompose_item(1, format!("sl2-dual-{l}"), Catalogued::DualVerma { lambda: lam.clone() }, 10, vec![DualVerma]));
        out.push(decompose_item(1, format!("sl2-simple-{l}"), Catalogued::Simple { lambda: lam }, 10, vec![Simple]));
    }
    for t in [Sl2Table::VermaVerma, Sl2Table::VermaDual, Sl2Table::VermaProjective] {
        out.push(table_item(2, TableCase::Sl2(t), 10));
    }
    let words: [(&str, Vec<usize>, Vec<SummandKind>); 6] = [
        ("e", vec![], vec![Simple, QuotientOfVerma, QuotientOfVerma, Verma]),
        ("sa", vec![0], vec![QuotientOfVerma, Simple, Verma]),
        ("sb", vec![1], vec![QuotientOfVerma, Simple, Verma]),
        ("sasb", vec![0, 1], vec![Simple, Verma]),
        ("sbsa", vec![1, 0], vec![Simple, Verma]),
        ("w0", vec![0, 1, 0], vec![Verma]),
    ];
    for (tag, lam) in [("0", [0i64, 0]), ("rho", [1, 1])] {
        for (wn, word, want) in &words {
            let ctx = Catalogued::Verma { ty: CartanType::A2, lambda: w(&lam), word: word.clone() };
            out.push(decompose_item(3, format!("sl3-verma-{tag}-{wn}"), ctx, 8, want.clone()));
        }
    }
    for k in 1..=7 {
        out.push(table_item(4, TableCase::Sl3(k), 8));
    }
    out.push(table_item(4, TableCase::Sl3Vanishing, 8));
    out.extend(properties::items());
    out
}

/// Items whose name starts with `prefix`, or whose criterion number equals it.
pub fn select(prefix: Option<&str>) -> Vec<Item> {
    items()
        .into_iter()
        .filter(|it| match prefix {
            None => true,
            Some(p) => it.name.starts_with(p) || p == it.criterion.to_string(),
        })
        .collect()
}

/// Run items on `threads` workers; results come back in item order.
pub fn run(items: &[Item], threads: usize, evidence: bool) -> Vec<ItemResult> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<ItemResult>>> = Mutex::new(vec![None; items.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(it) = items.get(i) else { break };
                let t = Instant::now();
                let outcome = Outcome::from_result((it.run)(evidence));
                let r = ItemResult { criterion: it.criterion, name: it.name.clone(), outcome, elapsed: t.elapsed() };
                slots.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no poisoned workers").into_iter().map(|r| r.expect("every item ran")).collect()
}

/// Per-criterion verdicts, including time budgets, for the criteria present in `results`.
pub fn summarize(results: &[ItemResult]) -> Vec<CriterionSummary> {
    criteria()
        .into_iter()
        .filter_map(|c| {
            let rs: Vec<&ItemResult> = results.iter().filter(|r| r.criterion == c.id).collect();
            if rs.is_empty() {
                return None;
            }
            let elapsed: Duration = rs.iter().map(|r| r.elapsed).sum();
            let within_budget = match c.budget {
                Budget::PerItem(b) => rs.iter().all(|r| r.elapsed < b),
                Budget::Total(b) => elapsed < b,
                Budget::None => true,
            };
            let failed: Vec<String> = rs.iter().filter(|r| !r.outcome.passed).map(|r| r.name.clone()).collect();
            Some(CriterionSummary {
                id: c.id,
                title: c.title,
                passed: failed.is_empty() && within_budget,
                items: rs.len(),
                failed,
                elapsed,
                within_budget,
            })
        })
        .collect()
}

/// Machine-readable report of a suite run. Timings are included only on request,
/// so that repeated runs give identical output.
pub fn report_json(results: &[ItemResult], evidence: bool, timings: bool) -> Value {
    let summaries = summarize(results);
    let crit: Vec<Value> = summaries
        .iter()
        .map(|s| {
            let mut v = json!({
                "id": s.id,
                "title": s.title,
                "passed": s.passed,
                "items": s.items,
                "failed": s.failed,
                "within_budget": s.within_budget,
            });
            if timings {
                v.as_object_mut().expect("object").insert("seconds".into(), json!(s.elapsed.as_secs_f64()));
            }
            v
        })
        .collect();
    let items: Vec<Value> = results
        .iter()
        .map(|r| {
            let mut v = json!({
                "criterion": r.criterion,
                "name": r.name,
                "passed": r.outcome.passed,
                "detail": r.outcome.detail,
            });
            if timings {
                v.as_object_mut().expect("object").insert("seconds".into(), json!(r.elapsed.as_secs_f64()));
            }
            if evidence {
                if let Some(c) = &r.outcome.certificate {
                    v.as_object_mut().expect("object").insert("certificate".into(), c.clone());
                }
            }
            v
        })
        .collect();
    json!({
        "passed": summaries.iter().all(|s| s.passed),
        "criteria": crit,
        "items": items,
    })
}
