//! The acceptance suite: nine criteria, each a list of named checks with a
//! runtime limit. Shared by the `selftest` subcommand and the test suite.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{
    cauchy_davenport, certify_equation_free, check_equation_free, max_equation_free,
    pullback_subspaces, span_sum_bound, EquationSpec, SearchConfig,
};
use crate::covering::{compute_cover, verify_cover, CoverInstance};
use crate::error::Result;
use crate::field::Fp;
use crate::groups::{build_group, FiniteGroup, GroupSpec};
use crate::linalg::{pointwise_product_span, Subspace};
use crate::rewriting::{format_word, nilpotency_check, Rewriter};
use crate::subspaces::{
    analytic_bounds, build_family, build_filtered_subspace, default_filter, exact_codim,
    filter_family, rate, s_value, to_f64, verify_zero_product, RateOrder, Rational,
};

/// Seed shared by every randomized criterion.
pub const SEED: u64 = 0;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub number: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_secs: f64,
    pub limit_secs: Option<f64>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.within_limit()
    }

    pub fn within_limit(&self) -> bool {
        self.limit_secs.map_or(true, |l| self.elapsed_secs < l)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let limit = self
            .limit_secs
            .map(|l| format!(" < {l} s"))
            .unwrap_or_default();
        write!(
            f,
            "criterion {} [{}]: {} ({}/{} checks, {:.3} s{limit})",
            self.number,
            self.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len(),
            self.elapsed_secs,
        )?;
        for c in self.failures() {
            write!(f, "\n    failed: {}: {}", c.name, c.detail)?;
        }
        if !self.within_limit() {
            write!(f, "\n    failed: runtime limit exceeded")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn close(&mut self, name: &str, value: f64, target: f64, tol: f64) {
        let passed = (value - target).abs() <= tol;
        self.push(name, passed, format!("{value:.10} vs {target} ± {tol:e}"));
    }

    fn result<T>(&mut self, name: &str, r: Result<T>, ok: impl FnOnce(&mut Self, T)) {
        match r {
            Ok(v) => ok(self, v),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }
}

fn group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(build_group(&spec.parse::<GroupSpec>()?)?))
}

fn timed(
    number: u32,
    title: &'static str,
    limit: Option<f64>,
    body: impl FnOnce(&mut Checks),
) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Checks::default();
    body(&mut checks);
    CriterionReport {
        number,
        title,
        checks: checks.0,
        elapsed_secs: start.elapsed().as_secs_f64(),
        limit_secs: limit,
    }
}

pub fn criterion_1() -> CriterionReport {
    timed(1, "rates", Some(1.0), |c| {
        c.result("a_2(3)", rate(RateOrder::Finite(2), 3), |c, r| {
            c.close("a_2(3)", r.value, 0.9449, 5e-4);
            c.close("argmin x* for N = 2", r.argmin, 0.5, 1e-6);
        });
        c.result("a_inf(3)", rate(RateOrder::Infinite, 3), |c, r| {
            c.close("a_inf(3)", r.value, 0.8414, 5e-4);
        });
        c.result("kappa_4", rate(RateOrder::Finite(4), 3), |c, r| {
            c.close("kappa_4", r.kappa.unwrap_or(f64::NAN), 3.61, 0.005);
        });
        c.result("kappa_9/9", rate(RateOrder::Finite(9), 3), |c, r| {
            c.close("kappa_9/9", r.kappa.unwrap_or(f64::NAN) / 9.0, 0.872, 5e-4);
        });
        c.result("kappa_3/3", rate(RateOrder::Finite(3), 3), |c, r| {
            c.close("kappa_3/3", r.kappa.unwrap_or(f64::NAN) / 3.0, 0.919, 5e-4);
        });
    })
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "monotonicity", Some(1.0), |c| {
        let values: Vec<f64> = (2..=64)
            .map(|n| {
                rate(RateOrder::Finite(n), 3)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN)
            })
            .collect();
        let bad = values.windows(2).position(|w| !(w[1] < w[0]));
        c.push(
            "a_N(3) strictly decreasing for N = 2..64",
            bad.is_none(),
            match bad {
                Some(i) => format!(
                    "a_{}(3) = {} ≥ a_{}(3) = {}",
                    i + 3,
                    values[i + 1],
                    i + 2,
                    values[i]
                ),
                None => format!(
                    "a_2(3) = {:.6} down to a_64(3) = {:.6}",
                    values[0], values[62]
                ),
            },
        );
        for x in [0.1, 0.5, 0.9] {
            let s: Vec<f64> = (2..=64).map(|n| s_value(RateOrder::Finite(n), x)).collect();
            let bad = s.windows(2).position(|w| !(w[1] < w[0]));
            c.push(
                format!("S_N({x}) strictly decreasing in N"),
                bad.is_none(),
                match bad {
                    Some(i) => format!("fails between N = {} and N = {}", i + 2, i + 3),
                    None => format!("S_2 = {:.6}, S_64 = {:.6}", s[0], s[62]),
                },
            );
        }
    })
}

fn zero_product_check(c: &mut Checks, spec: &str, k: usize, expected_t: Option<usize>) {
    let name = format!("X^{k} = 0 in F_p[{spec}]");
    let run = || -> Result<(usize, crate::subspaces::ZeroProductReport)> {
        let g = group(spec)?;
        let f = crate::subspaces::default_filter_for(&g, k)?;
        let x = build_filtered_subspace(&g, k, &f)?;
        let xs = vec![x.clone(); k];
        Ok((x.codim(), verify_zero_product(&xs)?))
    };
    c.result(&name, run(), |c, (t, rep)| {
        let t_ok = expected_t.map_or(true, |e| e == t);
        c.push(
            name.clone(),
            rep.verified && t_ok,
            format!(
                "t = {t}{}, {} tuples checked, witness {:?}",
                expected_t
                    .map(|e| format!(" (expected {e})"))
                    .unwrap_or_default(),
                rep.tuples_checked,
                rep.witness
            ),
        );
    });
}

pub fn criterion_3() -> CriterionReport {
    timed(3, "zero-product verification", Some(30.0), |c| {
        zero_product_check(c, "abelian:3,3", 3, Some(3));
        zero_product_check(c, "abelian:9", 3, Some(3));
        zero_product_check(c, "heisenberg:p=3,n=2", 3, Some(7));
        zero_product_check(c, "ut:n=4,p=2", 3, None);
        let run = || -> Result<(usize, usize, bool)> {
            let g = group("abelian:5")?;
            let fam = filter_family(
                &[Rational::from_integer(1)],
                &[Rational::new(2, 5), Rational::new(3, 5)],
            )?;
            let xs = build_family(&g, &fam)?;
            let rep = verify_zero_product(&xs)?;
            Ok((xs[0].codim() + xs[1].codim(), g.order(), rep.verified))
        };
        c.result(
            "k = 2 equality in F_5[C_5]",
            run(),
            |c, (sum, order, ok)| {
                c.push(
                    "k = 2 equality in F_5[C_5]",
                    ok && sum == order,
                    format!("t_1 + t_2 = {sum}, |G| = {order}, X_1 X_2 = 0: {ok}"),
                );
            },
        );
    })
}

fn certify(c: &mut Checks, spec: &str, expect: Option<(usize, usize)>) {
    let name = format!("3-AP in {spec}");
    let run = || -> Result<crate::combinatorics::Certification> {
        let g = group(spec)?;
        let f = crate::subspaces::default_filter_for(&g, 3)?;
        let x = build_filtered_subspace(&g, 3, &f)?;
        certify_equation_free(
            &g,
            &EquationSpec::three_ap(),
            &[x.clone(), x.clone(), x],
            &SearchConfig::default(),
        )
    };
    c.result(&name, run(), |c, cert| {
        let matches = expect.map_or(true, |(m, b)| {
            cert.search.size == m && cert.bound.bound == b
        });
        c.push(
            name.clone(),
            cert.search.exact && cert.sound && matches,
            format!(
                "max {} (exact: {}), bound {}{}",
                cert.search.size,
                cert.search.exact,
                cert.bound.bound,
                expect
                    .map(|(m, b)| format!(", expected max {m} bound {b}"))
                    .unwrap_or_default()
            ),
        );
    });
}

pub fn criterion_4() -> CriterionReport {
    timed(4, "ground truth vs bound", Some(10.0), |c| {
        certify(c, "abelian:3", Some((2, 2)));
        certify(c, "abelian:3,3", Some((4, 6)));
        for spec in [
            "abelian:5",
            "abelian:7",
            "abelian:9",
            "abelian:3,3,3",
            "abelian:25",
            "heisenberg:p=3,n=2",
        ] {
            certify(c, spec, None);
        }
    })
}

fn random_subspace(rng: &mut impl Rng, field: Fp, d: usize) -> Result<Subspace> {
    let m = rng.gen_range(0..=d);
    let p = field.modulus();
    Subspace::span(
        field,
        d,
        (0..m).map(|_| (0..d).map(|_| rng.gen_range(0..p)).collect()),
    )
}

/// All nonzero vectors of a subspace (small cases only).
fn enumerate(space: &Subspace) -> Vec<Vec<u32>> {
    let f = space.field();
    let p = f.modulus() as usize;
    let dim = space.dim();
    let mut out = Vec::new();
    for code in 1..p.pow(dim as u32) {
        let mut v = vec![0u32; space.ambient_dim()];
        let mut rest = code;
        for row in space.basis() {
            let c = (rest % p) as u32;
            rest /= p;
            for (x, &b) in v.iter_mut().zip(row) {
                *x = f.mul_add(*x, c, b);
            }
        }
        out.push(v);
    }
    out
}

pub fn criterion_5() -> CriterionReport {
    timed(5, "leaders and product spans", Some(10.0), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let f3 = Fp::new(3).expect("prime");

        let mut failures = Vec::new();
        for trial in 0..200 {
            let mut run = || -> Result<bool> {
                let w = random_subspace(&mut rng, f3, 8)?;
                let mut ordering: Vec<usize> = (0..8).collect();
                ordering.shuffle(&mut rng);
                let leaders = w.leaders(&ordering)?;
                let outsiders = w.outsiders(&ordering)?;
                let rank: Vec<usize> =
                    ordering
                        .iter()
                        .enumerate()
                        .fold(vec![0; 8], |mut r, (i, &x)| {
                            r[x] = i;
                            r
                        });
                let mut seen_l = BTreeSet::new();
                let mut seen_o = BTreeSet::new();
                for v in enumerate(&w) {
                    let support = v
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(i, _)| i);
                    seen_l.insert(support.clone().min_by_key(|&i| rank[i]).expect("nonzero"));
                    seen_o.insert(support.max_by_key(|&i| rank[i]).expect("nonzero"));
                }
                Ok(leaders.len() == w.dim()
                    && outsiders.len() == w.dim()
                    && seen_l.into_iter().collect::<Vec<_>>() == leaders
                    && seen_o.into_iter().collect::<Vec<_>>() == outsiders)
            };
            if !matches!(run(), Ok(true)) {
                failures.push(trial);
            }
        }
        c.push(
            "|leaders| = |outsiders| = dim on 200 random subspaces of F_3^8 (exhaustive)",
            failures.is_empty(),
            format!("failing trials {failures:?}"),
        );

        let mut failures = Vec::new();
        for trial in 0..100 {
            let mut run = || -> Result<bool> {
                let k = rng.gen_range(2..=3);
                let mut xs: Vec<Subspace> = Vec::new();
                for i in 0..k {
                    if i > 0 && rng.gen_bool(0.4) {
                        let j = rng.gen_range(0..i);
                        xs.push(xs[j].clone());
                    } else {
                        xs.push(random_subspace(&mut rng, f3, 6)?);
                    }
                }
                let y = pointwise_product_span(&xs)?;
                let total: usize = xs.iter().map(Subspace::codim).sum();
                let within_sum = y.codim() <= total;
                let all_equal = xs.iter().all(|x| x.same_as(&xs[0]));
                let within_first = !all_equal || y.codim() <= xs[0].codim();
                let mut distinct: Vec<&Subspace> = Vec::new();
                for x in &xs {
                    if !distinct.iter().any(|z| z.same_as(x)) {
                        distinct.push(x);
                    }
                }
                let within_distinct =
                    y.codim() <= distinct.iter().map(|z| z.codim()).sum::<usize>();
                Ok(within_sum && within_first && within_distinct)
            };
            if !matches!(run(), Ok(true)) {
                failures.push(trial);
            }
        }
        c.push(
            "codimension bounds on 100 random product spans in F_3^6",
            failures.is_empty(),
            format!("failing trials {failures:?}"),
        );

        let mut instances = 0;
        let mut failures = Vec::new();
        for spec in [
            "abelian:3",
            "abelian:3,3",
            "abelian:5",
            "abelian:7",
            "abelian:9",
        ] {
            let run = |rng: &mut ChaCha8Rng| -> Result<Vec<bool>> {
                let g = group(spec)?;
                let eq = EquationSpec::three_ap();
                let x =
                    build_filtered_subspace(&g, 3, &crate::subspaces::default_filter_for(&g, 3)?)?;
                let xs = vec![x.clone(), x.clone(), x];
                let max = max_equation_free(&g, &eq, &SearchConfig::default()).witness;
                let mut sets = vec![max.clone()];
                for _ in 0..5 {
                    let mut s: Vec<usize> =
                        max.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
                    if s.is_empty() {
                        s.push(max[0]);
                    }
                    sets.push(s);
                }
                let mut out = Vec::new();
                for s in sets {
                    if !check_equation_free(&g, &eq, &s)?.is_free() {
                        out.push(false);
                        continue;
                    }
                    let pulled = pullback_subspaces(&g, &eq, &s, &xs)?;
                    let bound = span_sum_bound(&pulled)?;
                    out.push(bound.sums_vanish && bound.holds());
                }
                Ok(out)
            };
            match run(&mut rng) {
                Ok(v) => {
                    instances += v.len();
                    if v.iter().any(|&ok| !ok) {
                        failures.push(spec);
                    }
                }
                Err(_) => failures.push(spec),
            }
        }
        c.push(
            "span-sum bound on equation-free sets pulled back from zero-product subspaces",
            failures.is_empty() && instances > 0,
            format!("{instances} instances, failing groups {failures:?}"),
        );
    })
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "rewriting", Some(60.0), |c| {
        let run = || -> Result<(usize, Option<String>)> {
            let g = group("heisenberg:p=3,n=2")?;
            let mut rw = Rewriter::new(&g)?;
            let letters = rw.letters().to_vec();
            let mut words = vec![Vec::new()];
            let mut frontier = vec![Vec::new()];
            for _ in 0..4 {
                frontier = frontier
                    .iter()
                    .flat_map(|w: &Vec<_>| {
                        letters.iter().map(move |&l| {
                            let mut w = w.clone();
                            w.push(l);
                            w
                        })
                    })
                    .collect();
                words.extend(frontier.iter().cloned());
            }
            for w in &words {
                let r = rw.reduce(w)?;
                if rw.expand(&r)? != rw.evaluate(w)? {
                    return Ok((words.len(), Some(format_word(w))));
                }
            }
            Ok((words.len(), None))
        };
        c.result(
            "exhaustive words of length ≤ 4 over H_1(F_3)",
            run(),
            |c, (n, bad)| {
                c.push(
                    "exhaustive words of length ≤ 4 over H_1(F_3)",
                    bad.is_none(),
                    format!("{n} words, first mismatch {bad:?}"),
                );
            },
        );

        let run = || -> Result<Option<String>> {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            let g = group("heisenberg:p=3,n=2")?;
            let mut rw = Rewriter::new(&g)?;
            for _ in 0..500 {
                let len = rng.gen_range(5..=12);
                let w = rw.random_word(&mut rng, len);
                let r = rw.reduce(&w)?;
                if rw.expand(&r)? != rw.evaluate(&w)? {
                    return Ok(Some(format_word(&w)));
                }
            }
            Ok(None)
        };
        c.result("500 seeded random words", run(), |c, bad| {
            c.push(
                "500 seeded random words",
                bad.is_none(),
                format!("first mismatch {bad:?}"),
            );
        });

        for spec in ["heisenberg:p=3,n=2", "ut:n=4,p=2", "ut:n=3,p=3"] {
            let name = format!("degree above maximum vanishes in {spec} (200 words)");
            let run = || nilpotency_check(&group(spec)?, 200, SEED);
            c.result(&name, run(), |c, rep| {
                c.push(
                    name.clone(),
                    rep.verified(),
                    format!(
                        "max degree {}, counterexample {:?}",
                        rep.max_degree, rep.counterexample
                    ),
                );
            });
        }
    })
}

pub fn criterion_7() -> CriterionReport {
    timed(7, "Cauchy-Davenport", Some(10.0), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for p in [3u32, 5, 7] {
            let mut instances = 0;
            let mut failure = None;
            for a in 1..=p {
                for b in 1..=p {
                    let Some(cc) = (p + 2).checked_sub(a + b) else {
                        continue;
                    };
                    if cc == 0 || cc > p {
                        continue;
                    }
                    for _ in 0..50 {
                        let mut draw = |n: u32| {
                            let mut all: Vec<u32> = (0..p).collect();
                            all.shuffle(&mut rng);
                            all.truncate(n as usize);
                            all
                        };
                        let (sa, sb, sc) = (draw(a), draw(b), draw(cc));
                        instances += 1;
                        match cauchy_davenport(p, &sa, &sb, &sc) {
                            Ok(r) if r.verified() => {}
                            other => {
                                failure.get_or_insert(format!("{sa:?} {sb:?} {sc:?}: {other:?}"));
                            }
                        }
                    }
                }
            }
            c.push(
                format!("p = {p}: product = tau^(p-1), full support, ABC = G"),
                failure.is_none(),
                format!("{instances} instances, first failure {failure:?}"),
            );
        }
    })
}

pub fn criterion_8() -> CriterionReport {
    timed(8, "covering", Some(60.0), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut failures: Vec<String> = Vec::new();
        let mut b_mismatch = 0;
        let mut matching_pairs = 0;
        let mut cardinality_ok = true;
        let mut dump_detected = 0;
        let mut dump_runs = 0;
        let mut cut_detected = 0;
        let mut cut_runs = 0;
        for trial in 0..100 {
            let spec = if trial % 2 == 0 {
                "abelian:3,3"
            } else {
                "abelian:9"
            };
            let k = if trial % 4 < 2 { 2 } else { 3 };
            let mut run = |rng: &mut ChaCha8Rng| -> Result<()> {
                let g = group(spec)?;
                let orders = match g.spec() {
                    GroupSpec::Abelian { orders } => orders.clone(),
                    _ => unreachable!(),
                };
                let x = build_filtered_subspace(&g, k + 1, &default_filter(&orders, k + 1)?)?;
                let n = g.order();
                let mut sets: Vec<Vec<usize>> = Vec::new();
                for i in 0..k {
                    if i > 0 && rng.gen_bool(0.3) {
                        sets.push(sets[i - 1].clone());
                        continue;
                    }
                    let size = rng.gen_range(1..=n);
                    let mut all: Vec<usize> = (0..n).collect();
                    all.shuffle(rng);
                    all.truncate(size);
                    sets.push(all);
                }
                let inst = CoverInstance::new(&g, vec![x; k + 1], sets.clone())?;
                let res = compute_cover(&inst)?;
                let v = verify_cover(&inst, &res);
                if !v.verified {
                    failures.push(format!("trial {trial}: {v:?}"));
                }
                let t = inst.codims();
                if res.c.len() > t[0] || res.b.iter().zip(&t[1..]).any(|(b, &ti)| b.len() > ti) {
                    cardinality_ok = false;
                }
                for i in 0..k {
                    for j in i + 1..k {
                        if sets[i] == sets[j] {
                            matching_pairs += 1;
                            if res.b[i] != res.b[j] {
                                b_mismatch += 1;
                            }
                        }
                    }
                }
                if res.ledger.len() > t[0] {
                    dump_runs += 1;
                    let mut dumped = res.clone();
                    dumped.c = res.ledger.keys().copied().collect();
                    if !verify_cover(&inst, &dumped).verified {
                        dump_detected += 1;
                    }
                }
                // Remove a C element that no rectangle reaches.
                let reachable = rectangle_products(&inst, &res.b);
                if let Some(pos) = res.c.iter().position(|&e| !reachable.contains(&e)) {
                    cut_runs += 1;
                    let mut cut = res.clone();
                    let lost = cut.c.remove(pos);
                    if verify_cover(&inst, &cut).uncovered == Some(lost) {
                        cut_detected += 1;
                    }
                }
                Ok(())
            };
            if let Err(e) = run(&mut rng) {
                failures.push(format!("trial {trial}: {e}"));
            }
        }
        c.push(
            "compute_cover + verify_cover on 100 instances over C_3^2 and C_9, k in {2, 3}",
            failures.is_empty(),
            format!("failures {failures:?}"),
        );
        c.push("|C| ≤ t_0 and |B_i| ≤ t_i in every run", cardinality_ok, "");
        c.push(
            "B_i = B_j for matching (X_i, A_i)",
            b_mismatch == 0 && matching_pairs > 0,
            format!("{matching_pairs} matching pairs, {b_mismatch} mismatches"),
        );
        c.push(
            "negative control: everything dumped into C",
            dump_runs > 0 && dump_detected == dump_runs,
            format!("{dump_detected}/{dump_runs} detected"),
        );
        c.push(
            "negative control: C element removed",
            cut_runs > 0 && cut_detected == cut_runs,
            format!("{cut_detected}/{cut_runs} detected"),
        );
    })
}

fn rectangle_products(inst: &CoverInstance, b: &[Vec<usize>]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, usize, bool)> = vec![(0, inst.group().identity(), false)];
    while let Some((depth, prefix, hit)) = stack.pop() {
        if depth == inst.k() {
            if hit {
                out.insert(prefix);
            }
            continue;
        }
        for &a in &inst.sets()[depth] {
            stack.push((
                depth + 1,
                inst.group().multiply(prefix, a),
                hit || b[depth].contains(&a),
            ));
        }
    }
    out
}

/// Non-increasing tuples of powers of `p` with product at most `limit`.
pub fn order_tuples(p: u64, limit: u64) -> Vec<Vec<u64>> {
    fn go(p: u64, max_part: u64, remaining: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let mut q = p;
        while q <= max_part && q <= remaining {
            cur.push(q);
            go(p, q, remaining / q, cur, out);
            cur.pop();
            q *= p;
        }
    }
    let mut out = Vec::new();
    go(p, limit, limit, &mut Vec::new(), &mut out);
    out
}

pub fn criterion_9() -> CriterionReport {
    timed(
        9,
        "asymptotics via exact per-coordinate factors",
        None,
        |c| {
            let primes: Vec<u64> = (2..=6561u64)
                .filter(|&n| crate::field::is_prime(n))
                .collect();
            for k in [3usize, 4] {
                let mut tuples = 0;
                let mut worst: f64 = 0.0;
                let mut failure = None;
                for &p in &primes {
                    for orders in order_tuples(p, 6561) {
                        tuples += 1;
                        let run = || -> Result<(f64, f64)> {
                            let filter = default_filter(&orders, k)?;
                            let t = to_f64(&exact_codim(&orders, &filter)?);
                            let size: u64 = orders.iter().product();
                            Ok((t / size as f64, analytic_bounds(&orders, k)?.chernoff))
                        };
                        match run() {
                            Ok((ratio, chernoff)) => {
                                worst = worst.max(ratio / chernoff);
                                if ratio > chernoff {
                                    failure
                                        .get_or_insert(format!("{orders:?}: {ratio} > {chernoff}"));
                                }
                            }
                            Err(e) => {
                                failure.get_or_insert(format!("{orders:?}: {e}"));
                            }
                        }
                    }
                }
                c.push(
                format!("exact_codim/|G| ≤ ∏ a_N(k) for k = {k}, all |G| ≤ 6561"),
                failure.is_none(),
                format!("{tuples} order tuples, largest ratio to the bound {worst:.6}, first failure {failure:?}"),
            );
            }

            let mut compared = 0;
            let mut failure = None;
            for p in [2u64, 3, 5, 7] {
                for orders in order_tuples(p, 729) {
                    compared += 1;
                    let run = || -> Result<(u64, usize)> {
                        let g = build_group(&GroupSpec::Abelian {
                            orders: orders.clone(),
                        })?;
                        let g = Arc::new(g);
                        let filter = default_filter(&orders, 3)?;
                        let exact = exact_codim(&orders, &filter)?;
                        let direct = build_filtered_subspace(&g, 3, &filter)?.codim();
                        Ok((u64::try_from(exact).unwrap_or(u64::MAX), direct))
                    };
                    match run() {
                        Ok((e, d)) if e == d as u64 => {}
                        other => {
                            failure.get_or_insert(format!("{orders:?}: {other:?}"));
                        }
                    }
                }
            }
            c.push(
                "exact_codim matches monomial enumeration for |G| ≤ 729",
                failure.is_none(),
                format!("{compared} order tuples, first failure {failure:?}"),
            );
        },
    )
}

pub fn run_criterion(n: u32) -> Option<CriterionReport> {
    Some(match n {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=9).filter_map(run_criterion).collect()
}
