//! Acceptance suite: one PASS/FAIL line per criterion, exact integer equality
//! throughout. Exits non-zero if any criterion fails.

use std::process::ExitCode;

use num_bigint::BigInt;
use polynum::builtin::{self, BuiltinSpec};
use polynum::partition::{
    exterior_partition, generic_point, h_from_partition, interior_partition, k_from_partition,
    vector_set,
};
use polynum::report::{run_pipeline, PipelineOptions, Subject};
use polynum::sequences::{self, SequenceMethod};
use polynum::triangulation::{pseudomanifold_check, PointedTriangulation};
use polynum::vectors::{self, VectorSet};
use polynum::{Polytope, Rational};

const N_MAX: usize = 15;
const POINT_SEEDS: [u64; 3] = [0, 1, 2];

struct Case {
    spec: BuiltinSpec,
    polytope: Polytope,
    t: PointedTriangulation,
    v: VectorSet,
}

fn families() -> Vec<BuiltinSpec> {
    let mut out = Vec::new();
    for d in 1..=5 {
        out.push(BuiltinSpec::Simplex(d));
        out.push(BuiltinSpec::Cube(d));
        out.push(BuiltinSpec::Cross(d));
    }
    for s in ["pyramid:square", "prism:triangle", "bipyramid:square"] {
        out.push(s.parse().unwrap());
    }
    out
}

fn cases() -> Vec<Case> {
    families()
        .into_iter()
        .map(|spec| {
            let polytope = spec.build().unwrap();
            let t = PointedTriangulation::new(&polytope, 0).unwrap();
            let v = vector_set(&t, &generic_point(&t, 0).unwrap()).unwrap();
            Case {
                spec,
                polytope,
                t,
                v,
            }
        })
        .collect()
}

struct Outcome {
    failures: Vec<String>,
    checks: usize,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            checks: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn values(c: &Case, m: SequenceMethod, interior: bool) -> Vec<BigInt> {
    sequences::sequence(&c.t, &c.v, m, interior, N_MAX)
        .unwrap()
        .values
}

fn criterion_1(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in cases {
        let rec = values(c, SequenceMethod::Recursive, false);
        let sum = values(c, SequenceMethod::SimplexSum, false);
        let h = values(c, SequenceMethod::HDecomposition, false);
        for n in 0..=N_MAX {
            o.check(rec[n] == sum[n] && sum[n] == h[n], || {
                format!(
                    "{} n={n}: recursive {} simplex-sum {} h {}",
                    c.spec, rec[n], sum[n], h[n]
                )
            });
        }
    }
    o
}

/// Points of `{0..n-1}^3` with no coordinate on the boundary.
fn interior_grid_count(n: i64) -> i64 {
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if [x, y, z].iter().all(|&c| c > 0 && c < n - 1) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion_2(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in cases {
        let rec = values(c, SequenceMethod::Recursive, true);
        let sum = values(c, SequenceMethod::SimplexSum, true);
        let k = values(c, SequenceMethod::KDecomposition, true);
        let hr = values(c, SequenceMethod::HReversed, true);
        for n in 0..=N_MAX {
            o.check(rec[n] == sum[n] && sum[n] == k[n] && k[n] == hr[n], || {
                format!("{} n={n}: {} {} {} {}", c.spec, rec[n], sum[n], k[n], hr[n])
            });
        }
        if c.spec == BuiltinSpec::Cube(3) {
            for n in 2..=N_MAX {
                let grid = BigInt::from(interior_grid_count(n as i64));
                o.check(rec[n] == grid, || {
                    format!("cube(3) interior n={n}: {} vs grid {grid}", rec[n])
                });
            }
        }
    }
    o
}

fn descents_histogram(d: usize) -> Vec<i64> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], hist: &mut [i64]) {
        if prefix.len() == used.len() {
            hist[prefix.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, hist);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut hist = vec![0; d];
    go(&mut Vec::new(), &mut vec![false; d], &mut hist);
    hist
}

fn pascal_row(m: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..m {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn criterion_3(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in cases {
        let expected = match c.spec {
            BuiltinSpec::Cube(d) if d <= 4 => descents_histogram(d),
            BuiltinSpec::Cross(d) if d <= 4 => pascal_row(d - 1),
            _ => continue,
        };
        let mut full = expected.clone();
        full.extend([0, 0]);
        o.check(c.v.h == full, || {
            format!("{}: h {:?} expected {:?}", c.spec, c.v.h, full)
        });
    }
    for d in 1..=6usize {
        for n in 0..=20i64 {
            let gamma = sequences::measure_number(d, n);
            let power = BigInt::from(n).pow(d as u32);
            o.check(gamma == power, || {
                format!("gamma^{d}({n}) = {gamma} vs {power}")
            });
        }
    }
    o
}

/// Runs `f` on the exterior/interior data for each generic point seed.
fn per_point(
    cases: &[Case],
    mut f: impl FnMut(&Case, u64, &mut Outcome, Pointwise),
    o: &mut Outcome,
) {
    for c in cases {
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for seed in POINT_SEEDS {
            let x = generic_point(&c.t, seed).unwrap();
            let coords = x.point().coords().to_vec();
            o.check(!seen.contains(&coords), || {
                format!("{} seed {seed}: repeated generic point", c.spec)
            });
            seen.push(coords);
            let split = c.t.split_boundary_interior();
            let ext = exterior_partition(&c.t, &x).unwrap();
            let int = interior_partition(&c.t, &x).unwrap();
            f(c, seed, o, Pointwise { ext, int, split });
        }
    }
}

struct Pointwise {
    ext: polynum::partition::Partition,
    int: polynum::partition::Partition,
    split: polynum::triangulation::ComplexSplit,
}

fn criterion_4(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    per_point(
        cases,
        |c, seed, o, pw| {
            let h_f = vectors::h_from_f(&vectors::f_vector(c.t.simplices(), c.t.dim()), c.t.dim());
            let h_p = h_from_partition(&pw.ext.verified(c.t.simplices()).unwrap()).unwrap();
            o.check(h_p == h_f, || {
                format!("{} seed {seed}: partition {h_p:?} vs f {h_f:?}", c.spec)
            });
        },
        &mut o,
    );
    o
}

fn criterion_5(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    per_point(
        cases,
        |c, seed, o, pw| {
            let h = h_from_partition(&pw.ext.verified(c.t.simplices()).unwrap()).unwrap();
            let k = k_from_partition(&pw.int.verified(&pw.split.interior).unwrap()).unwrap();
            let d = c.t.dim();
            for i in 0..=d + 1 {
                o.check(k[i] == h[d + 1 - i], || {
                    format!("{} seed {seed}: k {k:?} h {h:?}", c.spec)
                });
            }
        },
        &mut o,
    );
    o
}

fn criterion_6(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in cases {
        let d = c.t.dim();
        let h = &c.v.h;
        o.check(h[d] == 0 && h[d + 1] == 0, || {
            format!("{}: h {h:?}", c.spec)
        });
        let link = c.t.link_of_apex();
        let lh = vectors::h_from_f(&vectors::f_vector(&link, d - 1), d - 1);
        for i in 0..d {
            o.check(lh[i] == h[i], || {
                format!("{}: link h {lh:?} vs h {h:?}", c.spec)
            });
        }
    }
    o
}

fn criterion_7(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    per_point(
        cases,
        |c, seed, o, pw| {
            let ext = pw.ext.verify(c.t.simplices());
            o.check(ext.passed, || {
                format!("{} seed {seed}: exterior {ext:?}", c.spec)
            });
            let int = pw.int.verify(&pw.split.interior);
            o.check(int.passed, || {
                format!("{} seed {seed}: interior {int:?}", c.spec)
            });
            for i in &pw.int.intervals {
                for s in i.elements() {
                    o.check(!pw.split.boundary.contains(&s), || {
                        format!(
                            "{} seed {seed}: boundary simplex {s:?} in interior interval",
                            c.spec
                        )
                    });
                }
            }
        },
        &mut o,
    );
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=8usize {
        for n in 0..=30i64 {
            o.check(sequences::difference_check(d, n), || {
                format!("difference d={d} n={n}")
            });
            for k in 0..=n.min(d as i64 + 1) {
                o.check(sequences::facet_cut_check(d, n, k), || {
                    format!("facet cut d={d} n={n} k={k}")
                });
            }
        }
    }
    let mut at_one = Vec::new();
    for d in 0..=6usize {
        for j in 0..=d + 1 {
            for n in 0..=20i64 {
                o.check(sequences::vandermonde_polynomial_check(d, j, n), || {
                    format!("vandermonde (polynomial) d={d} j={j} n={n}")
                });
                if n == 1 {
                    if !sequences::vandermonde_check(d, j, n) {
                        at_one.push(format!("(d={d},j={j})"));
                    }
                    continue;
                }
                o.check(sequences::vandermonde_check(d, j, n), || {
                    format!("vandermonde d={d} j={j} n={n}")
                });
            }
        }
    }
    o.notes.push(format!(
        "zero-extended Vandermonde differs from its polynomial form only at n=1 for {}",
        at_one.join(" ")
    ));
    o
}

fn criterion_9(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in cases {
        for seed in [0u64, 5] {
            let t = PointedTriangulation::new(&c.polytope, seed).unwrap();
            let pm = pseudomanifold_check(&t);
            o.check(pm.passed, || format!("{} seed {seed}: {pm:?}", c.spec));
        }
    }
    for spec in [
        "cube:3",
        "cross:4",
        "pyramid:square",
        "bipyramid:square",
        "simplex:5",
    ] {
        let subject = Subject::builtin(spec.parse().unwrap()).unwrap();
        let opts = PipelineOptions {
            seed: 11,
            n_max: 10,
            ..Default::default()
        };
        let a = run_pipeline(&subject, opts).to_ndjson();
        let b = run_pipeline(&subject, opts).to_ndjson();
        o.check(a == b, || {
            format!("{spec}: reports differ between identical runs")
        });
    }
    o
}

fn apex_experiment() -> String {
    let p = builtin::pyramid(&builtin::cube(2).unwrap()).unwrap();
    let trials = sequences::apex_trials(&p, 8).unwrap();
    let parts: Vec<String> = trials
        .iter()
        .map(|t| format!("v{}:h={:?}", t.apex, t.h))
        .collect();
    let same = trials.windows(2).all(|w| w[0].values == w[1].values);
    format!(
        "pyramid(cube(2)) apex choices {} ; sequences identical: {same}",
        parts.join(" ")
    )
}

fn main() -> ExitCode {
    let cases = cases();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (
            1,
            "exterior sequences: recursive = simplex-sum = h-decomposition",
            criterion_1(&cases),
        ),
        (
            2,
            "interior sequences: four methods agree; cube(3) interior is (n-2)^3",
            criterion_2(&cases),
        ),
        (
            3,
            "cube h = Eulerian, cross h = binomial, gamma^d(n) = n^d",
            criterion_3(&cases),
        ),
        (
            4,
            "h from partition = h from f at three generic points",
            criterion_4(&cases),
        ),
        (5, "k_i = h_(d+1-i)", criterion_5(&cases)),
        (
            6,
            "h_d = h_(d+1) = 0 and link h-vector matches",
            criterion_6(&cases),
        ),
        (
            7,
            "partition certificates cover C_P and I_P exactly",
            criterion_7(&cases),
        ),
        (
            8,
            "facet-cut, difference and Vandermonde identity sweeps",
            criterion_8(),
        ),
        (
            9,
            "pseudomanifold boundary and report determinism",
            criterion_9(&cases),
        ),
    ];
    let mut all = true;
    for (i, label, o) in &results {
        let ok = o.failures.is_empty();
        all &= ok;
        println!(
            "criterion {i}: {} ({} checks) {label}",
            if ok { "PASS" } else { "FAIL" },
            o.checks
        );
        for f in &o.failures {
            println!("    counterexample: {f}");
        }
        for n in &o.notes {
            println!("    note: {n}");
        }
    }
    println!("observation: {}", apex_experiment());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
