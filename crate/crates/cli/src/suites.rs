//! Verification suites behind `verify`.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use coset_fusion::coset::CosetError;
use coset_fusion::wzw::{conjugation_matches_weights, sigma_covariance_check};
use coset_fusion::{
    build_maverick_ring, diagonal_branching, diagonal_branching_check, global_dimension,
    kw_numeric_ratio, maverick_branching_check, maverick_dims, s_matrix_of, simple_current_check,
    torus_classes, verlinde_tensor_checked, CosetSpec, DiagonalCoset, Factor, MaverickSector,
    TorusCoset,
};
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::output::{real, VerificationReport};
use coset_fusion::report::MAX_COUNTEREXAMPLES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Unitarity,
    Verlinde,
    SimpleCurrent,
    Kw,
    Index,
    Coset,
    Parafermion,
    Maverick,
    Branching,
    All,
}

impl Suite {
    const EACH: [Suite; 9] = [
        Suite::Unitarity,
        Suite::Verlinde,
        Suite::SimpleCurrent,
        Suite::Kw,
        Suite::Index,
        Suite::Coset,
        Suite::Parafermion,
        Suite::Maverick,
        Suite::Branching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Unitarity => "unitarity",
            Suite::Verlinde => "verlinde",
            Suite::SimpleCurrent => "simple-current",
            Suite::Kw => "kw",
            Suite::Index => "index",
            Suite::Coset => "coset",
            Suite::Parafermion => "parafermion",
            Suite::Maverick => "maverick",
            Suite::Branching => "branching",
            Suite::All => "all",
        }
    }
}

/// What a suite runs over.
#[derive(Debug, Clone, PartialEq)]
pub struct Scope {
    pub wzw: Vec<Factor>,
    pub cosets: Vec<CosetSpec>,
    pub torus: Vec<(u32, u32)>,
    pub branching: Vec<CosetSpec>,
}

fn spec(n: u32, m1: u32, m2: u32) -> CosetSpec {
    CosetSpec::new(n, m1, m2).expect("valid coset")
}

impl Scope {
    /// su(N)_k for N ≤ 4, k ≤ 6; the small diagonal cosets including the
    /// non-faithful spec(2,2,2); torus cosets l ≤ 3, m ≤ 4.
    pub fn desk() -> Self {
        let mut wzw = Vec::new();
        for n in 2..=4 {
            for k in 1..=6 {
                wzw.push(Factor::new(n, k).expect("valid"));
            }
        }
        let mut torus = Vec::new();
        for l in 2..=3 {
            for m in 1..=4 {
                torus.push((l, m));
            }
        }
        Self {
            wzw,
            cosets: vec![
                spec(2, 1, 1),
                spec(2, 2, 1),
                spec(2, 3, 1),
                spec(2, 2, 2),
                spec(3, 1, 1),
                spec(3, 2, 1),
                spec(4, 1, 1),
            ],
            torus,
            branching: vec![spec(2, 1, 1), spec(2, 2, 1), spec(3, 1, 1)],
        }
    }

    pub fn selected(factor: Factor, coset: CosetSpec, torus: (u32, u32)) -> Self {
        Self {
            wzw: vec![factor],
            cosets: vec![coset],
            torus: vec![torus],
            branching: vec![coset],
        }
    }
}

/// Accumulates one named check over several inputs.
struct Tally(VerificationReport);

impl Tally {
    fn new(check: &str) -> Self {
        Tally(VerificationReport {
            check: check.into(),
            passed: true,
            checked: 0,
            violations: 0,
            worst_residual: 0.0,
            counterexamples: Vec::new(),
            runtime: Duration::ZERO,
        })
    }

    fn absorb(&mut self, context: &str, other: VerificationReport) {
        let r = &mut self.0;
        r.checked += other.checked;
        r.violations += other.violations;
        r.passed &= other.passed;
        if other.worst_residual > r.worst_residual || other.worst_residual.is_nan() {
            r.worst_residual = other.worst_residual;
        }
        for c in other.counterexamples {
            if r.counterexamples.len() < MAX_COUNTEREXAMPLES {
                r.counterexamples.push(format!("{context}: {c}"));
            }
        }
        r.runtime += other.runtime;
    }

    fn finish(self) -> VerificationReport {
        self.0
    }
}

fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let r = f();
    r.timed(start.elapsed())
}

pub fn spec_name(s: &CosetSpec) -> String {
    format!(
        "spec({},{},{})",
        s.rank(),
        s.prime().level(),
        s.double_prime().level()
    )
}

fn factor_name(f: Factor) -> String {
    format!("su({})_{}", f.rank(), f.level())
}

fn unitarity(
    scope: &Scope,
    config: &Config,
    _: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let mut unitary = Tally::new("s-matrix-unitarity");
    let mut symmetric = Tally::new("s-matrix-symmetry");
    for &f in &scope.wzw {
        let name = factor_name(f);
        let s = s_matrix_of(f);
        unitary.absorb(
            &name,
            timed(|| {
                VerificationReport::residual(
                    "",
                    s.unitarity_residual(),
                    config.tolerance_unitary,
                    || name.clone(),
                )
            }),
        );
        symmetric.absorb(
            &name,
            timed(|| {
                VerificationReport::residual(
                    "",
                    s.symmetry_residual(),
                    config.tolerance_unitary,
                    || name.clone(),
                )
            }),
        );
    }
    vec![unitary.finish(), symmetric.finish()]
}

fn verlinde(scope: &Scope, config: &Config, _: &mut Map<String, Value>) -> Vec<VerificationReport> {
    let mut integral = Tally::new("verlinde-integrality");
    let mut axioms = Tally::new("ring-axioms");
    let mut conjugation = Tally::new("conjugation-is-dual");
    for &f in &scope.wzw {
        let name = factor_name(f);
        let start = Instant::now();
        match verlinde_tensor_checked(&s_matrix_of(f), config.tolerance_integrality) {
            Ok((ring, worst)) => {
                integral.absorb(
                    &name,
                    VerificationReport::residual("", worst, config.tolerance_integrality, || {
                        name.clone()
                    })
                    .timed(start.elapsed()),
                );
                axioms.absorb(
                    &name,
                    timed(|| {
                        VerificationReport::from_check("", &ring.check_axioms(), |a| {
                            format!("{a:?}")
                        })
                    }),
                );
                conjugation.absorb(
                    &name,
                    timed(|| {
                        VerificationReport::boolean("", conjugation_matches_weights(&ring), || {
                            name.clone()
                        })
                    }),
                );
            }
            Err(e) => integral.absorb(
                &name,
                VerificationReport::boolean("", false, || e.to_string()),
            ),
        }
    }
    vec![integral.finish(), axioms.finish(), conjugation.finish()]
}

fn simple_current(
    scope: &Scope,
    config: &Config,
    _: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let mut relation = Tally::new("simple-current-relation");
    let mut covariance = Tally::new("sigma-covariance");
    for &f in &scope.wzw {
        let name = factor_name(f);
        let ring = match verlinde_tensor_checked(&s_matrix_of(f), config.tolerance_integrality) {
            Ok((ring, _)) => ring,
            Err(e) => {
                relation.absorb(
                    &name,
                    VerificationReport::boolean("", false, || e.to_string()),
                );
                continue;
            }
        };
        relation.absorb(
            &name,
            timed(|| {
                VerificationReport::from_check("", &simple_current_check(&ring), |c| {
                    format!(
                        "σ^{} i={} i'={} N={}",
                        c.power, c.i, c.i_prime, c.coefficient
                    )
                })
            }),
        );
        covariance.absorb(
            &name,
            timed(|| {
                VerificationReport::from_check("", &sigma_covariance_check(&ring), |c| {
                    format!("{c:?}")
                })
            }),
        );
    }
    vec![relation.finish(), covariance.finish()]
}

fn cosets(scope: &Scope) -> Vec<(String, DiagonalCoset)> {
    scope
        .cosets
        .iter()
        .map(|s| {
            (
                spec_name(s),
                DiagonalCoset::new(*s).expect("desk-scale coset"),
            )
        })
        .collect()
}

fn kw(scope: &Scope, config: &Config, _: &mut Map<String, Value>) -> Vec<VerificationReport> {
    let mut tally = Tally::new("kw-identity");
    for (name, c) in cosets(scope) {
        for s in c.exp_set() {
            let label = s.to_string();
            tally.absorb(
                &name,
                timed(|| {
                    VerificationReport::residual(
                        "",
                        c.kw_identity_residual(&s),
                        config.tolerance_unitary,
                        || label,
                    )
                }),
            );
        }
    }
    vec![tally.finish()]
}

fn index(
    scope: &Scope,
    config: &Config,
    result: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let mut formula = Tally::new("index-formula");
    let mut classes = Tally::new("congruence-class-sums");
    let mut dghs = Map::new();
    for (name, c) in cosets(scope) {
        formula.absorb(
            &name,
            timed(|| {
                VerificationReport::from_check(
                    "",
                    &c.index_formula_check(config.tolerance_integrality),
                    |(p, q)| format!("({p}, {q})"),
                )
            }),
        );
        let sums = c.congruence_class_sums();
        let spread = sums.iter().cloned().fold(f64::MIN, f64::max)
            - sums.iter().cloned().fold(f64::MAX, f64::min);
        classes.absorb(
            &name,
            VerificationReport::residual("", spread, config.tolerance_integrality, || {
                format!(
                    "sums {}",
                    sums.iter().map(|x| real(*x)).collect::<Vec<_>>().join(", ")
                )
            }),
        );
        dghs.insert(name, json!(real(c.dgh())));
    }
    result.insert("dgh".into(), Value::Object(dghs));
    vec![formula.finish(), classes.finish()]
}

fn coset(
    scope: &Scope,
    config: &Config,
    result: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let mut refusal = Tally::new("fixed-point-refusal");
    let mut axioms = Tally::new("coset-ring-axioms");
    let mut independence = Tally::new("representative-independence");
    let mut closure = Tally::new("selection-rule-closure");
    let mut dims = Tally::new("coset-dimensions");
    let mut sizes = Map::new();
    for (name, c) in cosets(scope) {
        let n = c.spec().rank() as i64;
        let is_fixed = |s: &coset_fusion::CosetSector| (1..n).any(|p| s.sigma(p) == *s);
        match c.coset_ring() {
            Ok(ring) => {
                let any_fixed = c.exp_set().iter().any(is_fixed);
                refusal.absorb(
                    &name,
                    VerificationReport::boolean("", !any_fixed, || {
                        "ring built despite a fixed point".into()
                    }),
                );
                axioms.absorb(
                    &name,
                    timed(|| {
                        VerificationReport::from_check("", &ring.check_axioms(), |a| {
                            format!("{a:?}")
                        })
                    }),
                );
                independence.absorb(
                    &name,
                    timed(|| {
                        VerificationReport::from_check(
                            "",
                            &c.representative_independence_check(&ring),
                            |t| format!("{t:?}"),
                        )
                    }),
                );
                closure.absorb(
                    &name,
                    timed(|| {
                        VerificationReport::from_check(
                            "",
                            &c.selection_rule_closure_check(),
                            |(a, b, s)| format!("{a} x {b} -> {s}"),
                        )
                    }),
                );
                let residual = ring.dimension_residual(&c.orbit_dimensions(&ring));
                dims.absorb(
                    &name,
                    VerificationReport::residual(
                        "",
                        residual,
                        config.tolerance_integrality,
                        || name.clone(),
                    ),
                );
                sizes.insert(name, json!(ring.len()));
            }
            Err(CosetError::NotFaithful(points)) => {
                let genuine = !points.is_empty() && points.iter().all(is_fixed);
                refusal.absorb(
                    &name,
                    VerificationReport::boolean("", genuine, || {
                        "refused without a genuine fixed point".into()
                    }),
                );
                sizes.insert(name, json!("not faithful"));
            }
            Err(e) => refusal.absorb(
                &name,
                VerificationReport::boolean("", false, || e.to_string()),
            ),
        }
    }
    result.insert("coset_ring_sizes".into(), Value::Object(sizes));
    vec![
        refusal.finish(),
        axioms.finish(),
        independence.finish(),
        closure.finish(),
        dims.finish(),
    ]
}

fn parafermion(
    scope: &Scope,
    config: &Config,
    result: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let mut count = Tally::new("torus-class-count");
    let mut axioms = Tally::new("torus-ring-axioms");
    let mut additivity = Tally::new("torus-color-additivity");
    let mut dims = Tally::new("torus-dimensions");
    let mut kw = Tally::new("torus-kw-dimension");
    let mut conjugation = Tally::new("torus-conjugation");
    let mut sizes = Map::new();
    for &(l, m) in &scope.torus {
        let name = format!("l={l} m={m}");
        let classes = torus_classes(l, m).expect("valid torus").len() as u64;
        let expected = l as u64 * (m as u64).pow(l - 1);
        count.absorb(
            &name,
            VerificationReport::boolean("", classes == expected, || {
                format!("{classes} classes, expected {expected}")
            }),
        );
        let t = TorusCoset::new(l, m).expect("valid torus");
        axioms.absorb(
            &name,
            timed(|| {
                VerificationReport::from_check("", &t.ring().check_axioms(), |a| format!("{a:?}"))
            }),
        );
        additivity.absorb(
            &name,
            timed(|| {
                VerificationReport::from_check("", &t.color_additivity_check(), |c| {
                    format!("{c:?}")
                })
            }),
        );
        let residual = t.ring().dimension_residual(&t.dimensions());
        dims.absorb(
            &name,
            VerificationReport::residual("", residual, config.tolerance_integrality, || {
                name.clone()
            }),
        );
        kw.absorb(
            &name,
            timed(|| {
                VerificationReport::from_check(
                    "",
                    &t.kw_dimension_check(config.tolerance_unitary),
                    |s| s.to_string(),
                )
            }),
        );
        conjugation.absorb(
            &name,
            VerificationReport::boolean("", t.conjugation_check(), || {
                "dual is not (conj Λ, [-n])".into()
            }),
        );
        sizes.insert(name, json!({"classes": classes, "sectors": t.ring().len()}));
    }
    result.insert("torus".into(), Value::Object(sizes));
    vec![
        count.finish(),
        axioms.finish(),
        additivity.finish(),
        dims.finish(),
        kw.finish(),
        conjugation.finish(),
    ]
}

fn maverick(
    _: &Scope,
    config: &Config,
    result: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let ring = match build_maverick_ring() {
        Ok(r) => r,
        Err(e) => {
            return vec![VerificationReport::boolean("maverick-ring", false, || {
                e.to_string()
            })]
        }
    };
    let show = |a: MaverickSector, b: MaverickSector| {
        ring.fuse(&a, &b)
            .expect("basis")
            .iter()
            .map(|(s, m)| {
                if *m == 1 {
                    s.to_string()
                } else {
                    format!("{m}*{s}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    use MaverickSector::*;
    let phi = (5f64.sqrt() + 1.0) / 2.0;
    let dims = maverick_dims(&ring);
    let expected = |s: MaverickSector| if matches!(s, X | Y | YBar) { phi } else { 1.0 };
    let worst = dims
        .iter()
        .map(|(s, d)| (d - expected(*s)).abs())
        .fold(0.0, f64::max);
    let ordered: Vec<f64> = dims.iter().map(|p| p.1).collect();
    let cutoff = config.grade_cutoff.max(4);
    let branching = timed(|| match maverick_branching_check(cutoff) {
        Ok(report) => {
            VerificationReport::boolean("maverick-branching-line", report.passed(), || {
                format!("{report:?}")
            })
        }
        Err(e) => VerificationReport::boolean("maverick-branching-line", false, || e.to_string()),
    });
    result.insert(
        "maverick".into(),
        json!({
            "x*x": show(X, X),
            "y*ybar": show(Y, YBar),
            "z*zbar": show(Z, ZBar),
            "z*z": show(Z, Z),
            "x*z": show(X, Z),
            "dimensions": dims.iter().map(|(s, d)| (s.to_string(), json!(real(*d)))).collect::<Map<_, _>>(),
            "global_dimension": real(global_dimension(&ring)),
            "branching_cutoff": cutoff,
        }),
    );
    vec![
        timed(|| {
            VerificationReport::from_check("maverick-ring-axioms", &ring.check_axioms(), |a| {
                format!("{a:?}")
            })
        }),
        VerificationReport::residual(
            "maverick-dimensions",
            worst,
            config.tolerance_unitary,
            || "PF dimensions".into(),
        ),
        VerificationReport::residual(
            "maverick-dimension-homomorphism",
            ring.dimension_residual(&ordered),
            config.tolerance_integrality,
            || "d(a)d(b) = Σ N d(c)".into(),
        ),
        branching,
    ]
}

/// Truncated-trace ratios `b_σ̂ / b_vac` of the Ising coset at β = 0.5 and 0.4.
pub fn ising_kw_estimates(cutoff: u32, beta_floor: f64) -> Result<(f64, f64), String> {
    let c = DiagonalCoset::new(spec(2, 1, 1)).map_err(|e| e.to_string())?;
    let f = Factor::new(2, 1).expect("valid");
    let (vac, one) = (
        f.weight(&[0]).expect("valid"),
        f.weight(&[1]).expect("valid"),
    );
    let v = diagonal_branching(&c, &vac, &vac, cutoff).map_err(|e| e.to_string())?;
    let s = diagonal_branching(&c, &vac, &one, cutoff).map_err(|e| e.to_string())?;
    let v0 = v
        .iter()
        .find(|b| b.target().labels() == [0])
        .expect("vacuum target");
    let s1 = s
        .iter()
        .find(|b| b.target().labels() == [1])
        .expect("σ target");
    let ratio = |beta| kw_numeric_ratio(s1, v0, beta, beta_floor).map_err(|e| e.to_string());
    Ok((ratio(0.5)?, ratio(0.4)?))
}

fn branching(
    scope: &Scope,
    config: &Config,
    result: &mut Map<String, Value>,
) -> Vec<VerificationReport> {
    let mut exp = Tally::new("branching-exp-agreement");
    let mut sum_rule = Tally::new("branching-sum-rule");
    let mut vacuum = Tally::new("branching-vacuum-agreement");
    for s in &scope.branching {
        let name = spec_name(s);
        let c = DiagonalCoset::new(*s).expect("desk-scale coset");
        let start = Instant::now();
        match diagonal_branching_check(&c, config.grade_cutoff) {
            Ok(check) => {
                let elapsed = start.elapsed();
                let show = |x: &coset_fusion::CosetSector| x.to_string();
                exp.absorb(
                    &name,
                    VerificationReport::from_check("", &check.exp_agreement, show).timed(elapsed),
                );
                sum_rule.absorb(
                    &name,
                    VerificationReport::from_check("", &check.sum_rule, |(p, q)| {
                        format!("({p}, {q})")
                    }),
                );
                vacuum.absorb(
                    &name,
                    VerificationReport::from_check("", &check.vacuum_agreement, show),
                );
            }
            Err(e) => exp.absorb(
                &name,
                VerificationReport::boolean("", false, || e.to_string()),
            ),
        }
    }
    let cutoff = config.grade_cutoff.max(10);
    let sqrt2 = std::f64::consts::SQRT_2;
    let numeric = timed(|| match ising_kw_estimates(cutoff, config.beta_floor) {
        Ok((r5, r4)) => {
            result.insert(
                "ising_kw_estimate".into(),
                json!({"cutoff": cutoff, "beta_0.5": real(r5), "beta_0.4": real(r4), "target": real(sqrt2)}),
            );
            let ok = (r4 - sqrt2).abs() < (r5 - sqrt2).abs() && (r4 - sqrt2).abs() < 0.25 * sqrt2;
            VerificationReport {
                worst_residual: (r4 - sqrt2).abs(),
                ..VerificationReport::boolean("kw-numeric-ratio", ok, || {
                    format!("ratios {} (β=0.5), {} (β=0.4)", real(r5), real(r4))
                })
            }
        }
        Err(e) => VerificationReport::boolean("kw-numeric-ratio", false, || e),
    });
    vec![exp.finish(), sum_rule.finish(), vacuum.finish(), numeric]
}

/// Runs one suite (or all of them), returning reports and extra result data.
pub fn run(
    suite: Suite,
    scope: &Scope,
    config: &Config,
) -> (Vec<VerificationReport>, Map<String, Value>) {
    let mut result = Map::new();
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    for s in suites {
        let f = match s {
            Suite::Unitarity => unitarity,
            Suite::Verlinde => verlinde,
            Suite::SimpleCurrent => simple_current,
            Suite::Kw => kw,
            Suite::Index => index,
            Suite::Coset => coset,
            Suite::Parafermion => parafermion,
            Suite::Maverick => maverick,
            Suite::Branching => branching,
            Suite::All => unreachable!("expanded above"),
        };
        reports.extend(f(scope, config, &mut result));
    }
    (reports, result)
}
