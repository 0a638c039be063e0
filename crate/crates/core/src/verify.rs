//! The cross-verification sweep: every pipeline and structural check over a
//! range of `(k, n)`, with per-check status and timing.

use std::fmt;
use std::sync::Mutex;
use std::time::Instant;

use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ehrhart::{self, HVector, HypersimplexId};
use crate::triangulation::{lemmas, shelling_verify, TieBreak, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// `0` for checks not tied to one polytope.
    pub k: usize,
    /// `0` for global checks.
    pub n: usize,
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
    pub millis: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail(_))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, detail) = match &self.status {
            Status::Pass => ("PASS", String::new()),
            Status::Fail(w) => ("FAIL", format!(": {w}")),
            Status::Skipped(why) => ("SKIP", format!(": {why}")),
        };
        write!(
            f,
            "{tag} k={} n={} {} ({:.1} ms){detail}",
            self.k, self.n, self.name, self.millis
        )
    }
}

/// Deliberate corruption used to check that failures are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Reverse the first edge of every dual graph after orientation.
    FlipOrientation,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest `n` for triangulation pipelines.
    pub tri_max_n: usize,
    /// Largest `n` for statistics and counting.
    pub stats_max_n: usize,
    /// Largest `n` for face sweeps, path enumeration and Γ adjacency.
    pub exhaustive_max_n: usize,
    pub seeds: u64,
    /// Dilation bound for the generating-function identity.
    pub r: usize,
    pub identity_max_n: usize,
    pub identity_max_k: usize,
    pub pureperm_samples: usize,
    pub threads: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tri_max_n: 7,
            stats_max_n: 8,
            exhaustive_max_n: 6,
            seeds: 20,
            r: 3,
            identity_max_n: 6,
            identity_max_k: 5,
            pureperm_samples: 200,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            fault: None,
        }
    }
}

impl VerifyConfig {
    /// One bound `n` for both triangulation and statistics sweeps.
    pub fn with_max_n(mut self, n: usize) -> Self {
        self.tri_max_n = n;
        self.stats_max_n = n;
        self
    }
}

struct Recorder {
    k: usize,
    n: usize,
    out: Vec<CheckReport>,
}

impl Recorder {
    fn new(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            out: Vec::new(),
        }
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(), String>) {
        let start = Instant::now();
        let status = match f() {
            Ok(()) => Status::Pass,
            Err(w) => Status::Fail(w),
        };
        self.push(name, status, start);
    }

    fn push(&mut self, name: &str, status: Status, start: Instant) {
        self.out.push(CheckReport {
            k: self.k,
            n: self.n,
            name: name.to_string(),
            status,
            millis: start.elapsed().as_secs_f64() * 1000.0,
        });
    }

    fn skip(&mut self, name: &str, why: String) {
        self.push(name, Status::Skipped(why), Instant::now());
    }
}

fn same(name: &str, a: &HVector, b: &HVector) -> Result<(), String> {
    if a.same_coeffs(b) {
        Ok(())
    } else {
        Err(format!("{name}: {a} vs {b}"))
    }
}

fn stats_checks(rec: &mut Recorder, k: usize, n: usize) {
    let id = HypersimplexId::half_open(k, n).expect("valid indices");
    let stats = ehrhart::h_by_statistics(id);
    rec.run("stats-vs-counting", || {
        let stats = stats.as_ref().map_err(|e| e.to_string())?;
        same("statistics vs counting", stats, &ehrhart::h_by_counting(id))
    });
    rec.run("volume", || {
        let stats = stats.as_ref().map_err(|e| e.to_string())?;
        let a = ehrhart::eulerian_number(n - 1, k).map_err(|e| e.to_string())?;
        if stats.sum() == a {
            Ok(())
        } else {
            Err(format!("sum {} vs A = {a}", stats.sum()))
        }
    });
    rec.run("closed-formula", || {
        let closed = HypersimplexId::closed(k, n).map_err(|e| e.to_string())?;
        let formula = ehrhart::h_closed_formula(k, n).map_err(|e| e.to_string())?;
        same(
            "closed formula vs closed counts",
            &formula,
            &ehrhart::h_by_counting(closed),
        )
    });
}

fn cube_partition(n: usize) -> Result<(), String> {
    let mut total = vec![BigInt::from(0); n - 1];
    for k in 1..n {
        let id = HypersimplexId::half_open(k, n).map_err(|e| e.to_string())?;
        let h = ehrhart::h_by_statistics(id).map_err(|e| e.to_string())?;
        for (t, c) in total.iter_mut().zip(h.coeffs()) {
            *t += c;
        }
    }
    let want = ehrhart::eulerian_row(n - 1);
    if total == want {
        Ok(())
    } else {
        Err(format!("Σ_k h = {total:?}, descent polynomial {want:?}"))
    }
}

fn triangulation_checks(rec: &mut Recorder, cfg: &VerifyConfig, k: usize, n: usize) {
    let start = Instant::now();
    let mut t = match Triangulation::build(k, n) {
        Ok(t) => t,
        Err(e) => {
            rec.push("build", Status::Fail(e.to_string()), start);
            return;
        }
    };
    rec.push("build", Status::Pass, start);
    if cfg.fault == Some(Fault::FlipOrientation) && !t.graph.edges().is_empty() {
        t.graph.flip_edge(0);
    }

    rec.run("census", || {
        let a = ehrhart::eulerian_number(n - 1, k).map_err(|e| e.to_string())?;
        if BigInt::from(t.simplices.len()) == a {
            Ok(())
        } else {
            Err(format!("{} simplices, A = {a}", t.simplices.len()))
        }
    });
    rec.run("incoming-equals-descents", || {
        let g = &t.graph;
        match (0..g.len()).find(|&v| g.incoming_count(v) != g.node(v).avatars.q.des()) {
            None => Ok(()),
            Some(v) => Err(format!(
                "Q-avatar {} has {} incoming, {} descents",
                g.node(v).avatars.q,
                g.incoming_count(v),
                g.node(v).avatars.q.des()
            )),
        }
    });
    rec.run("acyclic", || {
        t.graph
            .topo_order(TieBreak::Lexicographic)
            .map(|_| ())
            .map_err(|e| e.to_string())
    });
    rec.run("shelling-default", || {
        let id = HypersimplexId::half_open(k, n).map_err(|e| e.to_string())?;
        let s = t
            .shelling(TieBreak::Lexicographic)
            .map_err(|e| e.to_string())?;
        let h = crate::triangulation::shelling::h_from_steps(id, &s.steps);
        same(
            "shelling vs statistics",
            &h,
            &ehrhart::h_by_statistics(id).map_err(|e| e.to_string())?,
        )
    });
    rec.run("shelling-seeded", || {
        for seed in 0..cfg.seeds {
            t.shelling(TieBreak::Seeded(seed))
                .map_err(|e| format!("seed {seed}: {e}"))?;
        }
        Ok(())
    });

    let exhaustive = n <= cfg.exhaustive_max_n;
    for (name, check) in lemmas::checks(exhaustive) {
        rec.run(name, || check(&t));
    }
    if !exhaustive {
        for name in lemmas::EXHAUSTIVE_CHECKS {
            rec.skip(name, format!("n > {}", cfg.exhaustive_max_n));
        }
    }
}

/// Checks on the generating-function identity, the pureperm standardization
/// and the toy complexes.
fn global_checks(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut rec = Recorder::new(0, 0);
    for r in 0..=cfg.r {
        rec.run(&format!("foata-han-r{r}"), || {
            let report = ehrhart::foata_han_verify(r, cfg.identity_max_n, cfg.identity_max_k);
            match &report.mismatch {
                None if report.passed() => Ok(()),
                None => Err(format!("only {} coefficients checked", report.checked)),
                Some(m) => Err(format!(
                    "[u^{} s^{}]: series {} vs count {}",
                    m.n, m.k, m.series_coeff, m.lattice_count
                )),
            }
        });
    }
    rec.run("pureperm", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        lemmas::check_pureperm(&mut rng, cfg.pureperm_samples, 7)
    });
    rec.run("toy-shelling", || {
        let good = vec![vec![0, 4, 1], vec![1, 2, 4], vec![3, 2, 4], vec![0, 3, 4]];
        let steps = shelling_verify(&good, &[]).map_err(|e| e.to_string())?;
        let numbers: Vec<usize> = steps.iter().map(|s| s.shelling_number()).collect();
        if numbers != [0, 1, 1, 2] {
            return Err(format!("numbers {numbers:?}"));
        }
        match shelling_verify(&[vec![0, 1, 2], vec![0, 3, 4]], &[]) {
            Err(_) => Ok(()),
            Ok(_) => Err("two triangles meeting in a vertex accepted".into()),
        }
    });
    rec.out
}

/// Run everything within the configured bounds. Reports are sorted by
/// `(k, n, name)` whatever the execution order.
pub fn run(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let max_n = cfg.tri_max_n.max(cfg.stats_max_n);
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            jobs.push((k, n));
        }
    }
    // largest jobs first so the pool drains evenly
    jobs.reverse();
    let queue = Mutex::new(jobs);
    let results = Mutex::new(global_checks(cfg));

    std::thread::scope(|scope| {
        for _ in 0..cfg.threads.max(1) {
            scope.spawn(|| loop {
                let Some((k, n)) = queue.lock().unwrap().pop() else {
                    break;
                };
                let mut rec = Recorder::new(k, n);
                if n <= cfg.stats_max_n {
                    stats_checks(&mut rec, k, n);
                    if k == 1 {
                        let mut cube = Recorder::new(0, n);
                        cube.run("cube-partition", || cube_partition(n));
                        rec.out.extend(cube.out);
                    }
                }
                if n <= cfg.tri_max_n {
                    if k == 1 {
                        let mut shift = Recorder::new(0, n);
                        shift.run("shift-descents", || lemmas::check_shift_descents(n - 1));
                        rec.out.extend(shift.out);
                    }
                    triangulation_checks(&mut rec, cfg, k, n);
                } else {
                    rec.skip("triangulation", format!("n > {}", cfg.tri_max_n));
                }
                results.lock().unwrap().extend(rec.out);
            });
        }
    });

    let mut out = results.into_inner().unwrap();
    out.sort_by(|a, b| (a.k, a.n, &a.name).cmp(&(b.k, b.n, &b.name)));
    out
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}
