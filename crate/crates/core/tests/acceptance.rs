//! Acceptance harness: one PASS/FAIL line per top-level criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hqp::gca::{explore, mutate_seed, CoefficientMode, ExploreMode, Seed};
use hqp::io::{export_graph, export_qp, export_rep, export_seed, import_graph, import_qp, import_rep, import_seed};
use hqp::pathalg::mutate_qp;
use hqp::quiver::MutationDatum;
use hqp::rep::hmodule::PivotOrder;
use hqp::rep::mutate_rep;
use hqp::verify::library::{alternating, qp_library, rank3_laurent_family, rep_library};
use hqp::verify::{self, rank2_laurent_family, PropertyResult, VerifyConfig};

struct Outcome {
    name: &'static str,
    limit: Option<Duration>,
    props: Vec<PropertyResult>,
    elapsed: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.props.iter().all(|p| p.passed) && self.limit.is_none_or(|l| self.elapsed <= l)
    }
}

fn run(name: &'static str, limit: Option<u64>, f: impl FnOnce() -> Vec<PropertyResult>) -> Outcome {
    let t = Instant::now();
    let props = f();
    Outcome { name, limit: limit.map(Duration::from_secs), props, elapsed: t.elapsed() }
}

fn round_trip(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult { name: "round-trip".into(), passed: true, checked: 0, skipped: 0, counterexamples: vec![], notes: vec![] };
    let mut check = |kind: &str, text: String, again: Result<String, String>| {
        res.checked += 1;
        if again.as_deref() != Ok(text.as_str()) {
            res.passed = false;
            if res.counterexamples.len() < 20 {
                res.counterexamples.push(serde_json::json!({ "kind": kind, "text": text, "again": again }));
            }
        }
    };

    let mut families = rank2_laurent_family();
    families.extend(rank3_laurent_family());
    for (b, d) in families {
        let n = b.n();
        for mode in [CoefficientMode::TropZ, CoefficientMode::Principal] {
            let s0 = Seed::initial(b.clone(), MutationDatum::symbolic(d.clone()), mode).expect("library seed");
            let mut s = s0.clone();
            for k in std::iter::once(0).chain(alternating(1, n, 3)) {
                if k > 0 {
                    s = mutate_seed(&s, k).expect("mutation");
                }
                let text = export_seed(&s);
                check("seed", text.clone(), import_seed(&text).map(|x| export_seed(&x)).map_err(|e| e.to_string()));
            }
            for mode in [ExploreMode::Labeled, ExploreMode::Unlabeled] {
                let g = explore(&s0, 2, mode, 200).expect("explore");
                let text = export_graph(&g);
                check("graph", text.clone(), import_graph(&text).map(|x| export_graph(&x)).map_err(|e| e.to_string()));
            }
        }
    }

    for lib in qp_library(cfg.seed) {
        let mut qps = vec![lib.qp.clone()];
        qps.extend((1..=lib.qp.quiver().n()).filter_map(|k| mutate_qp(&lib.qp, k).ok()));
        for qp in &qps {
            let text = export_qp(qp);
            check("qp", text.clone(), import_qp(&text).map(|x| export_qp(&x)).map_err(|e| e.to_string()));
        }
        for r in rep_library(&lib.qp, cfg.seed) {
            let mut reps = vec![r.clone()];
            reps.extend((1..=lib.qp.quiver().n()).filter_map(|k| mutate_rep(&lib.qp, &r, k, PivotOrder::Ascending).ok().map(|m| m.rep)));
            for r in &reps {
                let text = export_rep(r);
                check("rep", text.clone(), import_rep(&text).map(|x| export_rep(&x)).map_err(|e| e.to_string()));
            }
        }
    }
    res
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let outcomes = vec![
        run("matrix/quiver agreement", Some(5), || vec![verify::matrix_quiver_agreement(&cfg)]),
        run("involutions", Some(30), || {
            vec![verify::matrix_involution(&cfg), verify::seed_involution(&cfg), verify::qp_involution(&cfg), verify::rep_involution(&cfg)]
        }),
        run("classical reduction oracle", Some(60), || vec![verify::classical_oracle(&cfg)]),
        run("Laurent phenomenon", Some(120), || vec![verify::laurent_rank2(&cfg), verify::laurent_rank3(&cfg)]),
        run("F/g structure", None, || vec![verify::f_structure(&cfg), verify::sign_coherence(&cfg), verify::g_determinant(&cfg)]),
        run("interpretation", Some(300), || vec![verify::interpretation(&cfg)]),
        run("F-mutation identity", None, || vec![verify::f_mutation(&cfg)]),
        run("g-vector mutation rule", None, || vec![verify::rep_g_rules(&cfg), verify::splitting_independence(&cfg), verify::local_freeness_check(&cfg)]),
        run("h-relations", None, || vec![verify::h_relations(&cfg), verify::separation_formula(&cfg), verify::yhat_mutation(&cfg), verify::sign_convention_divergence(&cfg)]),
        run("round-trip I/O", None, || vec![round_trip(&cfg)]),
    ];

    let mut all = true;
    for o in &outcomes {
        let ok = o.passed();
        all &= ok;
        let checked: usize = o.props.iter().map(|p| p.checked).sum();
        let skipped: usize = o.props.iter().map(|p| p.skipped).sum();
        let limit = o.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "{} {}: {checked} checks, {skipped} excluded, {:.2}s{limit}",
            if ok { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64()
        );
        for p in &o.props {
            if !p.passed {
                println!("    {} failed: {}", p.name, serde_json::to_string(&p.counterexamples).unwrap_or_default());
            }
            for n in &p.notes {
                println!("    note [{}]: {n}", p.name);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
