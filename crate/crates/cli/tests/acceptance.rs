//! Acceptance criteria 1-12, run in order, one verdict line each. The
//! process exits nonzero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hodgeham_core::exactq::ExactScalar;
use hodgeham_core::harrison::{
    contracting_homotopy, harrison_block_exactness, harrison_kunneth_check, kernel_image_check,
    verify_appendix_splitting,
};
use hodgeham_core::hochschild::{
    chain_map_law, derivation_block_norm, hodge_table, projection_laws, HodgeCell, TableOptions,
};
use hodgeham_core::kaehler::{
    i_squared_check, kaehler_suite, omega_expected_dim, omega_kunneth_dims, KunnethSplit,
};
use hodgeham_core::monomial::{ModuleKind, MultiDegree};
use hodgeham_core::report::Check;
use hodgeham_core::symgroup::idempotent_checks;

type Verdict = Result<(), String>;

fn all_pass(checks: &[Check]) -> Verdict {
    match checks.iter().find(|c| !c.passed()) {
        None => Ok(()),
        Some(c) => Err(format!("{} failed at {}", c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn idempotents() -> Verdict {
    all_pass(&idempotent_checks(6))
}

fn chain_map() -> Verdict {
    for k in 1..=2 {
        all_pass(&chain_map_law(k, 5, 4, &ModuleKind::Regular).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn projections() -> Verdict {
    for k in 1..=2 {
        let checks = projection_laws(k, 5, 4, &ModuleKind::Regular).map_err(|e| e.to_string())?;
        for name in ["d-squared-zero", "face-degree-preservation", "degree-projection-chain-map", "truncation-hodge"] {
            ensure(checks.iter().any(|c| c.name == name), || format!("{name} not run"))?;
        }
        all_pass(&checks)?;
    }
    Ok(())
}

fn cell<'a>(cells: &'a [HodgeCell], n: usize, i: Option<usize>, d: &MultiDegree) -> &'a HodgeCell {
    cells.iter().find(|c| c.n == n && c.i == i && c.degree == *d).expect("cell present")
}

fn hodge_vanishing() -> Verdict {
    for k in 1..=3 {
        let report = hodge_table(k, 4, 6, &ModuleKind::Regular, &TableOptions::default()).map_err(|e| e.to_string())?;
        all_pass(&report.checks)?;
        for d in MultiDegree::all_up_to(k, 6) {
            let support = d.exponents().iter().filter(|&&e| e >= 1).count();
            for n in 2..=4 {
                for i in 1..n {
                    let c = cell(&report.cells, n, Some(i), &d);
                    ensure(c.dim_homology == 0, || format!("{} has dim {}", c.id(), c.dim_homology))?;
                }
                let total = cell(&report.cells, n, None, &d).dim_homology;
                let lower: usize = (1..n).map(|i| cell(&report.cells, n, Some(i), &d).dim_homology).sum();
                let lie = cell(&report.cells, n, Some(n), &d);
                ensure(lie.dim_homology == total - lower, || format!("{}: oracle {}", lie.id(), total - lower))?;
                ensure(lie.dim_homology == binomial(support, n), || format!("{}: expected count", lie.id()))?;
            }
        }
    }
    Ok(())
}

fn appendix() -> Verdict {
    for r in verify_appendix_splitting(40).map_err(|e| e.to_string())? {
        all_pass(&r.checks())?;
        ensure(r.contraction_norm_bound <= ExactScalar::one(), || format!("N={:?}: norm bound", r.degree))?;
        for (m, err) in (1..).zip(&r.neumann_error_at) {
            ensure(*err <= ExactScalar::pow2(-m), || format!("N={:?}: Neumann error at M={m}", r.degree))?;
        }
    }
    Ok(())
}

fn q_kernel() -> Verdict {
    for n in 1..=40 {
        kernel_image_check(n).map_err(|w| format!("N={n}: {w}"))?;
    }
    Ok(())
}

fn harrison_exact() -> Verdict {
    for k in 1..=3 {
        for v in harrison_block_exactness(k, 4, 6, &ModuleKind::Regular).map_err(|e| e.to_string())? {
            ensure(v.exact, || format!("{} not exact", v.cell.id()))?;
        }
    }
    for n in 0..=10 {
        let h = contracting_homotopy(4, &MultiDegree(vec![n])).map_err(|e| e.to_string())?;
        h.verify().map_err(|w| format!("N={n}: {w}"))?;
        for m in 2..=4 {
            ensure(h.projection_rank(m) == 0, || format!("N={n}: P_{m} nonzero"))?;
        }
    }
    Ok(())
}

fn kaehler() -> Verdict {
    for k in 1..=2 {
        all_pass(&kaehler_suite(k, 8))?;
        for d in MultiDegree::all_up_to(k, 6) {
            all_pass(&[i_squared_check(&d)])?;
        }
    }
    let split = KunnethSplit::new(1, 1);
    all_pass(&[split.verify_claim1(4), split.verify_claim2(4)])?;
    all_pass(&split.verify_step3(4))?;
    for k in 1..=3 {
        for d in MultiDegree::all_up_to(k, 8) {
            let (direct, summed) = omega_kunneth_dims(&d);
            ensure(direct == summed && direct == omega_expected_dim(&d), || {
                format!("N={d:?}: direct {direct}, summed {summed}")
            })?;
        }
    }
    Ok(())
}

fn one_variable_modules() -> Verdict {
    let modules = [
        ModuleKind::Regular,
        ModuleKind::QuotientTruncation(2),
        ModuleKind::QuotientTruncation(3),
        ModuleKind::QuotientTruncation(4),
    ];
    let opts = TableOptions { cohomology: true, ..Default::default() };
    for module in modules {
        let report = hodge_table(1, 4, 8, &module, &opts).map_err(|e| e.to_string())?;
        for name in ["one-variable-vanishing", "cohomology-equals-homology"] {
            ensure(report.checks.iter().any(|c| c.name == name), || format!("{name} not run"))?;
        }
        all_pass(&report.checks).map_err(|e| format!("{module}: {e}"))?;
        for c in report.cells.iter().filter(|c| c.n >= 2) {
            ensure(c.dim_homology == 0, || format!("{module} {}", c.id()))?;
        }
    }
    Ok(())
}

fn harrison_kunneth() -> Verdict {
    for n in 1..=2 {
        for d in MultiDegree::all_up_to(2, 6) {
            let (whole, parts) = harrison_kunneth_check(n, &d).map_err(|e| e.to_string())?;
            ensure(whole == parts, || format!("n={n} N={d:?}: {whole} vs {parts}"))?;
        }
    }
    Ok(())
}

fn derivation_growth() -> Verdict {
    for p in 0..=3 {
        let mut prev = ExactScalar::zero();
        for n in 1..=40u32 {
            let x = derivation_block_norm(p, n).map_err(|e| e.to_string())?;
            ensure(x == ExactScalar::from_int(n as i64), || format!("p={p} N={n}: {x}"))?;
            ensure(x > prev, || format!("p={p} N={n}: not increasing"))?;
            prev = x;
        }
    }
    Ok(())
}

fn run(args: &[&str], jobs: &str, out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_hodgeham"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("HODGEHAM_JOBS", jobs)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), || format!("{args:?} exited {:?}", status.status.code()))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commands: [&[&str]; 4] = [
        &["hodge", "--k", "2", "--nmax", "3", "--degmax", "4"],
        &["hodge", "--k", "1", "--nmax", "3", "--degmax", "5", "--module", "trunc:3", "--format", "csv"],
        &["verify", "kunneth-harrison", "--degmax", "4"],
        &["verify", "harrison-exact", "--degmax", "6"],
    ];
    for args in commands {
        let outputs: Vec<Vec<u8>> = ["1", "1", "4"]
            .iter()
            .enumerate()
            .map(|(j, jobs)| run(args, jobs, &dir.path().join(format!("r{j}"))))
            .collect::<Result<_, _>>()?;
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{args:?} differs between runs"))?;
    }
    Ok(())
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    check: fn() -> Verdict,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "Eulerian idempotents, n <= 6", limit: secs(60), check: idempotents },
        Criterion { id: 2, name: "chain-map law, k <= 2, n <= 5, |N| <= 4", limit: secs(120), check: chain_map },
        Criterion { id: 3, name: "d^2 = 0, degree and truncation projections", limit: secs(60), check: projections },
        Criterion { id: 4, name: "Hodge vanishing and Lie-cell oracle, k <= 3", limit: secs(600), check: hodge_vanishing },
        Criterion { id: 5, name: "splitting identities of d_1, N <= 40", limit: secs(60), check: appendix },
        Criterion { id: 6, name: "ker q = im d_1, q onto, N <= 40", limit: secs(30), check: q_kernel },
        Criterion { id: 7, name: "Harrison exactness and contracting homotopies", limit: secs(300), check: harrison_exact },
        Criterion { id: 8, name: "Kaehler forms and Kuenneth splitting", limit: secs(300), check: kaehler },
        Criterion { id: 9, name: "one-variable modules: n >= 2 cells vanish", limit: secs(120), check: one_variable_modules },
        Criterion { id: 10, name: "Harrison cells split over variables, k = 2", limit: secs(120), check: harrison_kunneth },
        Criterion { id: 11, name: "derivation block norms grow, p <= 3", limit: secs(1), check: derivation_growth },
        Criterion { id: 12, name: "byte-identical reports across runs and jobs", limit: secs(120), check: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let verdict = (c.check)();
        let elapsed = t.elapsed();
        let verdict = verdict.and_then(|()| {
            ensure(elapsed <= c.limit, || format!("took {:.2}s, limit {}s", elapsed.as_secs_f64(), c.limit.as_secs()))
        });
        match verdict {
            Ok(()) => println!("criterion {:>2} PASS  {} ({:.2}s)", c.id, c.name, elapsed.as_secs_f64()),
            Err(w) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({:.2}s): {w}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
