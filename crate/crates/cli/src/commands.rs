//! One function per subcommand, each producing an [`Outcome`].

use coset_fusion::coset::CosetError;
use coset_fusion::{
    branching_functions, color, conformal_weight, coset_energy_offset, diagonal_branching,
    index_four_projection, quantum_dimension_of, s_matrix_of, vacuum_membership,
    verlinde_tensor_checked, weights_of, BranchingFunction, CosetSector, CosetSpec, DiagonalCoset,
    Factor, Weight,
};
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::output::{rational, real, sector, weight, Outcome, VerificationReport};
use crate::suites::{self, spec_name, Scope, Suite};
use crate::CliError;

/// `su3`, `SU(3)` → 3.
pub fn parse_algebra(s: &str) -> Result<u32, String> {
    let t = s.trim().to_ascii_lowercase();
    let digits = t
        .strip_prefix("su")
        .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
        .ok_or_else(|| format!("expected an algebra like su2, got {s:?}"))?;
    match digits.parse::<u32>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("expected su(N) with N >= 2, got {s:?}")),
    }
}

/// `1,0` or `(1,0)` → [1, 0].
pub fn parse_labels(s: &str) -> Result<Vec<u32>, String> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad Dynkin labels {s:?}"))
        })
        .collect()
}

/// `a/b/c` with each part a label list.
pub fn parse_sector(s: &str) -> Result<Vec<Vec<u32>>, String> {
    s.split('/').map(parse_labels).collect()
}

fn factor(n: u32, k: u32) -> Result<Factor, CliError> {
    Factor::new(n, k).map_err(|e| CliError::Usage(e.to_string()))
}

fn weight_of(f: Factor, labels: &[u32]) -> Result<Weight, CliError> {
    f.weight(labels).map_err(|e| CliError::Usage(e.to_string()))
}

fn coset_spec(n: u32, m1: u32, m2: u32) -> Result<CosetSpec, CliError> {
    CosetSpec::new(n, m1, m2).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn weights(n: u32, k: u32) -> Result<Outcome, CliError> {
    let f = factor(n, k)?;
    let list = weights_of(f);
    let mut rows = vec![vec![
        "labels".to_string(),
        "color".into(),
        "conformal_weight".into(),
        "quantum_dimension".into(),
    ]];
    let mut lines = vec![format!("su({n})_{k}: {} integrable weights", list.len())];
    let mut entries = Vec::new();
    for w in &list {
        let h = conformal_weight(w);
        let d = quantum_dimension_of(w);
        entries.push(json!({
            "labels": weight(w),
            "color": color(w),
            "conformal_weight": rational(h),
            "quantum_dimension": real(d),
        }));
        let labels = w
            .labels()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        rows.push(vec![labels, color(w).to_string(), rational(h), real(d)]);
        lines.push(format!(
            "{w:>12}  color {}  h = {:<8}  d = {}",
            color(w),
            rational(h),
            real(d)
        ));
    }
    Ok(Outcome {
        result: json!({"algebra": format!("su{n}"), "level": k, "count": list.len(), "weights": entries}),
        lines,
        rows: Some(rows),
        ..Outcome::default()
    })
}

fn product_text(terms: &[(String, u32)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(w, m)| {
            if *m == 1 {
                w.clone()
            } else {
                format!("{m}*{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn fuse(n: u32, k: u32, i: &[u32], j: &[u32], config: &Config) -> Result<Outcome, CliError> {
    let f = factor(n, k)?;
    let (a, b) = (weight_of(f, i)?, weight_of(f, j)?);
    let (ring, worst) = verlinde_tensor_checked(&s_matrix_of(f), config.tolerance_integrality)
        .map_err(|e| CliError::Refused(e.to_string()))?;
    let product = ring.fuse(&a, &b).expect("weights of this level");
    let text = product_text(
        &product
            .iter()
            .map(|(w, m)| (w.to_string(), *m))
            .collect::<Vec<_>>(),
    );
    let mut rows = vec![vec!["weight".to_string(), "multiplicity".into()]];
    for (w, m) in &product {
        rows.push(vec![
            w.labels()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            m.to_string(),
        ]);
    }
    Ok(Outcome {
        result: json!({
            "algebra": format!("su{n}"),
            "level": k,
            "i": weight(&a),
            "j": weight(&b),
            "product": product.iter().map(|(w, m)| json!({"weight": weight(w), "multiplicity": m})).collect::<Vec<_>>(),
            "text": text,
        }),
        reports: vec![VerificationReport::residual(
            "verlinde-integrality",
            worst,
            config.tolerance_integrality,
            || format!("su({n})_{k}"),
        )],
        lines: vec![format!("{a} x {b} = {text}")],
        rows: Some(rows),
        ..Outcome::default()
    })
}

pub fn coset_ring(n: u32, m1: u32, m2: u32, config: &Config) -> Result<Outcome, CliError> {
    let spec = coset_spec(n, m1, m2)?;
    let c = DiagonalCoset::new(spec).map_err(|e| CliError::Refused(e.to_string()))?;
    let exp = c.exp_set();
    let ring = match c.coset_ring() {
        Ok(r) => r,
        Err(CosetError::NotFaithful(points)) => {
            let message = CosetError::NotFaithful(points.clone()).to_string();
            return Ok(Outcome {
                result: json!({
                    "spec": [n, m1, m2],
                    "exp_size": exp.len(),
                    "error": "NotFaithful",
                    "fixed_points": points.iter().map(sector).collect::<Vec<_>>(),
                }),
                reports: vec![VerificationReport::boolean(
                    "faithful-action",
                    false,
                    || message.clone(),
                )],
                lines: vec![format!("{}: refused", spec_name(&spec))],
                notes: vec![format!("error: {message}")],
                ..Outcome::default()
            });
        }
        Err(e) => return Err(CliError::Refused(e.to_string())),
    };
    let dims = c.orbit_dimensions(&ring);
    let name = |i: usize| ring.label(i).to_string();
    let mut lines = vec![format!(
        "{}: {} sectors in exp, {} orbits, d(G/H) = {}",
        spec_name(&spec),
        exp.len(),
        ring.len(),
        real(c.dgh())
    )];
    let mut orbits = Vec::new();
    for (i, o) in ring.basis().iter().enumerate() {
        orbits.push(json!({
            "index": i,
            "representative": sector(o.representative()),
            "members": o.members().iter().map(sector).collect::<Vec<_>>(),
            "dimension": real(dims[i]),
        }));
        lines.push(format!("  [{i}] {}  d = {}", name(i), real(dims[i])));
    }
    let mut products = Vec::new();
    for a in 0..ring.len() {
        for b in a..ring.len() {
            let terms = ring.product(a, b);
            products.push(json!({
                "a": a,
                "b": b,
                "terms": terms.iter().map(|&(k, m)| json!([k, m])).collect::<Vec<_>>(),
            }));
            let text = product_text(
                &terms
                    .iter()
                    .map(|&(k, m)| (format!("[{k}]"), m))
                    .collect::<Vec<_>>(),
            );
            lines.push(format!("  [{a}] x [{b}] = {text}"));
        }
    }
    let mut kw = VerificationReport::boolean("kw-identity", true, String::new);
    kw.checked = 0;
    for s in &exp {
        let r = c.kw_identity_residual(s);
        kw.worst_residual = kw.worst_residual.max(r);
        kw.checked += 1;
        if !(r < config.tolerance_unitary) {
            kw.passed = false;
            kw.violations += 1;
            kw.counterexamples
                .push(format!("{s}: residual {}", real(r)));
        }
    }
    let reports = vec![
        VerificationReport::from_check("ring-axioms", &ring.check_axioms(), |a| format!("{a:?}")),
        VerificationReport::from_check(
            "representative-independence",
            &c.representative_independence_check(&ring),
            |t| format!("{t:?}"),
        ),
        VerificationReport::from_check(
            "selection-rule-closure",
            &c.selection_rule_closure_check(),
            |(a, b, s)| format!("{a} x {b} -> {s}"),
        ),
        VerificationReport::residual(
            "dimension-homomorphism",
            ring.dimension_residual(&dims),
            config.tolerance_integrality,
            || "orbit dimensions".into(),
        ),
        kw,
        VerificationReport::from_check(
            "index-formula",
            &c.index_formula_check(config.tolerance_integrality),
            |(p, q)| format!("({p}, {q})"),
        ),
    ];
    Ok(Outcome {
        result: json!({
            "spec": [n, m1, m2],
            "exp_size": exp.len(),
            "dgh": real(c.dgh()),
            "orbits": orbits,
            "products": products,
        }),
        reports,
        lines,
        ..Outcome::default()
    })
}

pub struct VerifyArgs {
    pub suite: Suite,
    pub desk_scale: bool,
    pub algebra: u32,
    pub level: u32,
    pub coset: (u32, u32, u32),
    pub torus: (u32, u32),
}

pub fn verify(args: &VerifyArgs, config: &Config) -> Result<Outcome, CliError> {
    let scope = if args.desk_scale {
        Scope::desk()
    } else {
        let (n, m1, m2) = args.coset;
        factor(args.torus.0, args.torus.1)?;
        Scope::selected(
            factor(args.algebra, args.level)?,
            coset_spec(n, m1, m2)?,
            args.torus,
        )
    };
    let (reports, extra) = suites::run(args.suite, &scope, config);
    let passed = reports.iter().filter(|r| r.passed).count();
    let mut result = Map::new();
    result.insert("suite".into(), json!(args.suite.name()));
    result.insert(
        "scope".into(),
        json!(if args.desk_scale {
            "desk-scale"
        } else {
            "selected"
        }),
    );
    result.insert("checks".into(), json!(reports.len()));
    result.insert("passed".into(), json!(passed));
    result.extend(extra);
    Ok(Outcome {
        lines: vec![format!(
            "verify {}: {passed}/{} checks pass",
            args.suite.name(),
            reports.len()
        )],
        result: Value::Object(result),
        reports,
        ..Outcome::default()
    })
}

fn branching_result(b: &BranchingFunction, in_exp: bool) -> (Value, Vec<String>, Vec<Vec<String>>) {
    let energy = coset_energy_offset(b).ok();
    let vacuum = vacuum_membership(b).ok();
    let mut result = json!({
        "target": weight(b.target()),
        "offset": rational(b.offset()),
        "coefficients": b.coefficients(),
        "lowest_grade": b.lowest_grade(),
        "energy": energy.map(rational),
        "vacuum": vacuum,
    });
    let mut lines = vec![format!(
        "offset {}  coefficients {}",
        rational(b.offset()),
        b.coefficients()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )];
    match energy {
        Some(e) => lines.push(format!("lowest energy {}", rational(e))),
        None => lines.push("branching function vanishes up to the cutoff".into()),
    }
    if !in_exp {
        let note = "sector violates the selection rule; its branching function is identically zero";
        result["note"] = json!(note);
        lines.push(note.into());
    }
    let mut rows = vec![vec!["grade".to_string(), "coefficient".into()]];
    for (g, c) in b.coefficients().iter().enumerate() {
        rows.push(vec![g.to_string(), c.to_string()]);
    }
    (result, lines, rows)
}

pub fn branch(
    coset: Option<(u32, u32, u32)>,
    maverick: bool,
    sector_arg: &str,
    cutoff: u32,
) -> Result<Outcome, CliError> {
    let parts = parse_sector(sector_arg).map_err(CliError::Usage)?;
    let usage = |m: &str| CliError::Usage(m.into());
    let map_err = |e: coset_fusion::BranchingError| CliError::Refused(e.to_string());
    match (coset, maverick) {
        (Some((n, m1, m2)), false) => {
            let spec = coset_spec(n, m1, m2)?;
            let [p, q, l] = <[Vec<u32>; 3]>::try_from(parts)
                .map_err(|_| usage("sector must be prime/double_prime/diagonal"))?;
            let s =
                CosetSector::new(&spec, &p, &q, &l).map_err(|e| CliError::Usage(e.to_string()))?;
            let c = DiagonalCoset::new(spec).map_err(|e| CliError::Refused(e.to_string()))?;
            let all = diagonal_branching(&c, &s.prime, &s.double_prime, cutoff).map_err(map_err)?;
            let b = all
                .iter()
                .find(|b| *b.target() == s.diagonal)
                .expect("integrable target");
            let in_exp = s.satisfies_selection_rule();
            let (mut result, mut lines, rows) = branching_result(b, in_exp);
            result["coset"] = json!([n, m1, m2]);
            result["sector"] = sector(&s);
            result["cutoff"] = json!(cutoff);
            lines.insert(
                0,
                format!("{} sector {s}, cutoff {cutoff}", spec_name(&spec)),
            );
            let mut reports = vec![VerificationReport::boolean(
                "exp-agreement",
                b.is_zero() != in_exp,
                || {
                    format!(
                        "{s}: selection rule {in_exp}, branching zero {}",
                        b.is_zero()
                    )
                },
            )];
            if let Ok(v) = vacuum_membership(b) {
                reports.push(VerificationReport::boolean(
                    "vacuum-membership",
                    v == c.in_vacuum_orbit(&s),
                    || format!("{s}: peel says {v}, σ-orbit says {}", c.in_vacuum_orbit(&s)),
                ));
            }
            Ok(Outcome {
                result,
                reports,
                lines,
                rows: Some(rows),
                ..Outcome::default()
            })
        }
        (None, true) => {
            let [p, l] = <[Vec<u32>; 2]>::try_from(parts)
                .map_err(|_| usage("maverick sector must be su3_labels/su2_label"))?;
            let source = weight_of(factor(3, 2)?, &p)?;
            let target = weight_of(factor(2, 8)?, &l)?;
            let all = branching_functions(
                std::slice::from_ref(&source),
                &index_four_projection(),
                target.factor(),
                cutoff,
            )
            .map_err(map_err)?;
            let b = all
                .iter()
                .find(|b| *b.target() == target)
                .expect("integrable target");
            // su(2) weights of the image all have even label
            let in_exp = (l[0] + 2 * (p[0] + p[1])) % 2 == 0;
            let (mut result, mut lines, rows) = branching_result(b, in_exp);
            result["coset"] = json!("maverick");
            result["sector"] = json!({"su3": weight(&source), "su2": weight(&target)});
            result["cutoff"] = json!(cutoff);
            lines.insert(
                0,
                format!("maverick sector ({source}, {target}), cutoff {cutoff}"),
            );
            Ok(Outcome {
                result,
                lines,
                rows: Some(rows),
                ..Outcome::default()
            })
        }
        _ => Err(usage("branch needs either N M1 M2 or --maverick")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_parsers() {
        assert_eq!(parse_algebra("su2"), Ok(2));
        assert_eq!(parse_algebra("SU(3)"), Ok(3));
        assert!(parse_algebra("su1").is_err());
        assert!(parse_algebra("so3").is_err());
        assert_eq!(parse_labels("(1,0)"), Ok(vec![1, 0]));
        assert_eq!(parse_sector("1,1/4"), Ok(vec![vec![1, 1], vec![4]]));
        assert!(parse_labels("1,x").is_err());
    }

    #[test]
    fn fuse_text() {
        let c = Config::default();
        let o = fuse(2, 2, &[1], &[1], &c).unwrap();
        assert_eq!(o.result["text"], "0 + 2");
        let o = fuse(2, 8, &[2], &[2], &c).unwrap();
        assert_eq!(o.result["text"], "0 + 2 + 4");
        let o = fuse(2, 1, &[0], &[1], &c).unwrap();
        assert_eq!(o.result["text"], "1");
    }

    #[test]
    fn weight_counts() {
        for (n, k, rows) in [(2, 2, 3), (3, 2, 6), (2, 8, 9)] {
            assert_eq!(weights(n, k).unwrap().result["count"], rows);
        }
        assert!(matches!(weights(2, 0), Err(CliError::Usage(_))));
    }
}
