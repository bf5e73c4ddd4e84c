//! Acceptance run: one PASS/FAIL line per criterion with its worst residual
//! and wall time. Run with `cargo test -p qfock-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use qfock_core::qhermite::classical_limit_gap;
use qfock_core::suite::{run_verification_subset, RunConfig, SuiteEntry};
use qfock_core::QContext;

/// A single measured requirement inside a criterion.
struct Item {
    label: String,
    residual: f64,
    tol: f64,
    /// Passes when `residual > tol` instead of `residual < tol`.
    lower_bound: bool,
}

impl Item {
    fn pass(&self) -> bool {
        if self.lower_bound {
            self.residual > self.tol
        } else {
            self.residual < self.tol
        }
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    items: Vec<Item>,
    elapsed: Duration,
    budget: Duration,
}

impl Criterion {
    fn pass(&self) -> bool {
        self.items.iter().all(Item::pass) && self.elapsed <= self.budget
    }

    fn worst(&self) -> &Item {
        self.items
            .iter()
            .max_by(|a, b| (a.residual / a.tol).total_cmp(&(b.residual / b.tol)))
            .expect("criterion has items")
    }

    fn line(&self) -> String {
        let w = self.worst();
        format!(
            "criterion {} {:<5} {:<22} worst {} = {:.3e} (tol {:.0e}) time {:.2}s / {}s",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            w.label,
            w.residual,
            w.tol,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

fn entry(cfg: &RunConfig, name: &str) -> SuiteEntry {
    let report = run_verification_subset(cfg, name).expect("suite runs");
    report.results.into_iter().find(|e| e.name == name).unwrap_or_else(|| panic!("no entry {name}"))
}

/// Items taken from the verification suite, each held to the criterion's own bound.
fn from_suite(cfg: &RunConfig, wanted: &[(&str, f64)]) -> Vec<Item> {
    wanted
        .iter()
        .map(|&(name, tol)| {
            let e = entry(cfg, name);
            Item { label: name.into(), residual: e.residual.unwrap_or(f64::INFINITY), tol, lower_bound: false }
        })
        .collect()
}

fn timed(id: u32, title: &'static str, budget: u64, f: impl FnOnce() -> Vec<Item>) -> Criterion {
    let start = Instant::now();
    let items = f();
    Criterion { id, title, items, elapsed: start.elapsed(), budget: Duration::from_secs(budget) }
}

fn qfock(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qfock")).args(args).env_remove("QFOCK_CONFIG").output().expect("binary runs")
}

fn classical_limit_at(q: f64) -> f64 {
    let c = QContext::new(q).unwrap();
    (0..=5).map(|k| classical_limit_gap(k, &c).max_abs).fold(0.0, f64::max)
}

fn cli_contract() -> Vec<Item> {
    let ok = qfock(&["verify"]);
    let strict = qfock(&["verify", "--tol", "1e-30"]);
    let again = qfock(&["verify"]);
    let grid = qfock(&["grid", "--reference-seeds"]);
    let rows = String::from_utf8_lossy(&grid.stdout).lines().skip(1).count();
    let flag = |b: bool| if b { 0.0 } else { 1.0 };
    vec![
        Item { label: "verify exit 0".into(), residual: flag(ok.status.code() == Some(0)), tol: 0.5, lower_bound: false },
        Item {
            label: "strict verify exit 1".into(),
            residual: flag(strict.status.code() == Some(1) && !strict.stderr.is_empty()),
            tol: 0.5,
            lower_bound: false,
        },
        Item {
            label: "byte-identical verify".into(),
            residual: flag(ok.stdout == again.stdout && !ok.stdout.is_empty()),
            tol: 0.5,
            lower_bound: false,
        },
        Item {
            label: "grid rows - 9*(6+1)^2".into(),
            residual: (rows as f64 - 9.0 * 49.0).abs(),
            tol: 0.5,
            lower_bound: false,
        },
    ]
}

/// Part of criterion 5 that cannot be met: at q = 0.999 the coefficients of
/// `H_5` differ from the classical ones by ~1.25 in absolute terms (about
/// 8e-3 of the largest coefficient), because the gap is first order in
/// `1 - q`. Reaching 1e-3 needs `1 - q` around 1e-6.
const UNATTAINABLE: &str = "classical limit q=0.999";

fn main() {
    let cfg = RunConfig::default();
    let criteria = vec![
        timed(1, "q-scalar", 1, || {
            from_suite(
                &cfg,
                &[
                    ("qcore.q-number-sum", 1e-9),
                    ("qcore.bracket-gap", 1e-9),
                    ("qcore.q-binomial-pascal", 1e-9),
                    ("qcore.jackson-ftc", 1e-9),
                ],
            )
        }),
        timed(2, "q-exponential", 1, || {
            from_suite(&cfg, &[("qcore.q-exp-inverse", 1e-8), ("qcore.q-exp-derivative", 1e-8), ("qcore.q-exp-zeros", 1e-6)])
        }),
        timed(3, "Gamma_q", 5, || {
            from_suite(&cfg, &[("qcore.gamma-functional", 1e-9), ("qcore.gamma-integral", 1e-5), ("qcore.gamma-moment", 1e-5)])
        }),
        timed(4, "q-analyticity", 5, || {
            from_suite(
                &cfg,
                &[
                    ("qcomplex.dzbar-annihilates", 1e-12),
                    ("qcomplex.dz-lowers", 1e-12),
                    ("qcomplex.expansion-vs-product", 1e-12),
                ],
            )
        }),
        timed(5, "q-Hermite", 30, || {
            let mut items = from_suite(
                &cfg,
                &[
                    ("qhermite.explicit-vs-recurrence", 1e-10),
                    ("qhermite.annihilation", 1e-9),
                    ("qhermite.creation", 1e-9),
                    ("qhermite.eigen-equation", 1e-9),
                    ("qhermite.orthogonality", 1e-6),
                ],
            );
            items.push(Item { label: UNATTAINABLE.into(), residual: classical_limit_at(0.999), tol: 1e-3, lower_bound: false });
            items
        }),
        timed(6, "Fock space", 10, || {
            from_suite(
                &cfg,
                &[
                    ("qfock.basis-orthogonality", 1e-12),
                    ("qfock.reproducing", 1e-8),
                    ("qfock.commutator", 1e-12),
                    ("qfock.adjoint", 1e-10),
                    ("qfock.kernel-limit", 1e-3),
                ],
            )
        }),
        timed(7, "L2 realization", 20, || {
            from_suite(
                &cfg,
                &[
                    ("qcomplex.hermite-orthogonality", 1e-12),
                    ("qcomplex.hermite-roundtrip", 1e-10),
                    // trace / min eig below 1e10 is min eig above 1e-10 trace
                    ("qcomplex.mixed-gram-rank", 1e10),
                ],
            )
        }),
        timed(8, "Bargmann", 60, || {
            from_suite(
                &cfg,
                &[
                    ("qbargmann.basis-images", 1e-7),
                    ("qbargmann.unitarity", 1e-7),
                    ("qbargmann.tensor-unitarity", 1e-6),
                    ("qbargmann.coherent-overlap", 1e-6),
                ],
            )
        }),
        timed(9, "CLI contract", 5, cli_contract),
    ];

    for c in &criteria {
        println!("{}", c.line());
        for i in c.items.iter().filter(|i| !i.pass()) {
            println!("    failed: {} = {:.3e}, tol {:.0e}", i.label, i.residual, i.tol);
        }
    }
    let passed = criteria.iter().filter(|c| c.pass()).count();
    println!("{passed}/{} criteria pass", criteria.len());

    for c in &criteria {
        for i in &c.items {
            if i.label != UNATTAINABLE {
                assert!(i.pass(), "criterion {}: {} = {:e} vs tol {:e}", c.id, i.label, i.residual, i.tol);
            }
        }
        assert!(c.elapsed <= c.budget, "criterion {} over time budget", c.id);
    }

    // The unattainable part stays visible: the gap is first order in 1 - q.
    let coarse = classical_limit_at(0.999);
    let fine = classical_limit_at(0.9999);
    assert!(coarse > 1e-3 && (coarse / fine - 10.0).abs() < 0.5, "gap {coarse:e} at 0.999, {fine:e} at 0.9999");
}
