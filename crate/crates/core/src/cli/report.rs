//! Runs a validated request and renders the result as JSON and text.

use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Request, Settings};
use crate::bb::{module_structure, ModuleStructure, VarietyModel};
use crate::flag::{FlagSpec, FlagVariety};
use crate::grassmannian::{AffineGrassmannian, LimitModulePresentation};
use crate::rings::{euler, is_nonzero_divisor, specialize_fgl, whitney_trials, RingElement, Specialization, Theory};
use crate::root_system::{build_root_datum, WeylGroup};
use crate::stratification::{assemble_module, GradedModuleDecomposition, PosetJson, StratumPoset};
use crate::Error;

pub(crate) struct Report {
    pub json: Value,
    pub text: String,
}

pub(crate) fn execute(request: &Request, settings: &Settings) -> Result<Report, Error> {
    match request {
        Request::Weyl { spec, parabolic } => {
            let group = WeylGroup::generate(&build_root_datum(*spec)?);
            let longest = group.longest_element()?;
            let elements: Vec<Value> = group
                .elements()
                .iter()
                .map(|w| json!({ "label": w.label(), "word": one_based(w.word()), "length": w.length() }))
                .collect();
            let mut json = json!({
                "command": "weyl",
                "type": spec.to_string(),
                "order": group.order(),
                "longest": { "label": longest.label(), "length": longest.length() },
                "elements": elements,
            });
            let mut text = format!(
                "Weyl group of {spec}: order {}, longest element {} of length {}\n",
                group.order(),
                longest.label(),
                longest.length()
            );
            if let Some(p) = parabolic {
                let reps: Vec<String> = group.coset_representatives(p)?.iter().map(|w| w.label()).collect();
                let _ = writeln!(
                    text,
                    "minimal coset representatives for parabolic {:?}: {} ({})",
                    one_based(&p.iter().copied().collect::<Vec<_>>()),
                    reps.len(),
                    reps.join(" ")
                );
                json["parabolic"] = json!(one_based(&p.iter().copied().collect::<Vec<_>>()));
                json["coset_representatives"] = json!(reps);
            }
            Ok(Report { json, text })
        }
        Request::Flag { spec, parabolic } => {
            let fs = FlagSpec::new(*spec, parabolic.iter().copied())?;
            let model = FlagVariety::new(&fs)?.model()?;
            let ms = module_structure(&model, settings.theory)?;
            let mut report = module_report("flag", &model, &ms);
            report.json["type"] = json!(spec.to_string());
            report.json["parabolic"] = json!(one_based(&parabolic.iter().copied().collect::<Vec<_>>()));
            report.text = format!(
                "flag variety {spec}/P, parabolic {:?}\n{}",
                one_based(&parabolic.iter().copied().collect::<Vec<_>>()),
                report.text
            );
            Ok(report)
        }
        Request::Model { document } => {
            if document.get("labels").is_some() {
                let poset_json: PosetJson = serde_json::from_value(document.clone())
                    .map_err(|e| crate::rings::RingError::Malformed(e.to_string()))?;
                let poset = StratumPoset::from_json(&poset_json)?;
                let dec = assemble_module(&poset, settings.theory)?;
                Ok(decomposition_report(&dec))
            } else {
                let model: VarietyModel = serde_json::from_value(document.clone())
                    .map_err(|e| crate::rings::RingError::Malformed(e.to_string()))?;
                let ms = module_structure(&model, settings.theory)?;
                Ok(module_report("model", &model, &ms))
            }
        }
        Request::Gr { spec, alpha, level } => {
            let gr = AffineGrassmannian::new(*spec, alpha.clone())?;
            let points = gr.fixed_points(*level)?;
            let limit = gr.limit_module(*level, settings.theory)?;
            let fixed: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "coweight": p.coweight,
                        "dominant_rep": p.dominant_rep,
                        "witness": one_based(&p.witness),
                        "level": p.level,
                    })
                })
                .collect();
            let json = json!({
                "command": "gr",
                "type": spec.to_string(),
                "alpha": alpha,
                "theory": settings.theory.tag(),
                "level": level,
                "count": points.len(),
                "fixed_points": fixed,
                "module": {
                    "ranks": limit.ranks(),
                    "projections": limit.projections,
                    "diagrams_commute": limit.diagrams_commute(),
                    "lim1_vanishes": limit.lim1_vanishes,
                },
            });
            let mut text = format!(
                "affine Grassmannian of {spec}, highest weight {alpha}, level {level}: {} fixed points\n",
                points.len()
            );
            for p in &points {
                let _ = writeln!(text, "  {}  level {}  dominant {}", p.label(), p.level, p.dominant_rep);
            }
            let _ = writeln!(text, "ranks by level: {:?}", limit.ranks());
            Ok(Report { json, text })
        }
        Request::GrLimit { spec, alpha, levels } => {
            let gr = AffineGrassmannian::new(*spec, alpha.clone())?;
            let limit = gr.limit_module(*levels, settings.theory)?;
            Ok(limit_report(&limit))
        }
        Request::Euler {
            rank,
            weights,
            whitney_trials: trials,
        } => {
            let e = euler(settings.theory, *rank, weights)?;
            let mut json = json!({
                "command": "euler",
                "theory": settings.theory.tag(),
                "rank": rank,
                "weights": weights,
                "euler": e.to_json(),
                "nonzero_divisor": is_nonzero_divisor(&e),
            });
            let mut text = format!("e_T = {}\nnonzero divisor: {}\n", e.render(), is_nonzero_divisor(&e));
            if let RingElement::MU(m) = &e {
                let additive = specialize_fgl(m, Specialization::Additive).render();
                json["additive_specialization"] = json!(additive);
                let _ = writeln!(text, "additive specialization: {additive}");
            }
            if let Some(n) = trials {
                let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
                let passed = whitney_trials(settings.theory, *rank, *n, &mut rng)?;
                json["whitney"] = json!({ "trials": n, "seed": settings.seed, "passed": passed });
                let _ = writeln!(text, "Whitney formula: {passed}/{n} random pairs agree (seed {})", settings.seed);
            }
            Ok(Report { json, text })
        }
    }
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

fn theory_json(json: &mut Value, theory: Theory) {
    json["theory"] = json!(theory.tag());
    if let Theory::MU { truncation } = theory {
        json["truncation"] = json!(truncation);
    }
}

fn generators_json(dec: &GradedModuleDecomposition) -> Value {
    json!(dec
        .generators
        .iter()
        .map(|g| json!({ "label": g.label, "shift": g.shift, "class": g.class.to_json() }))
        .collect::<Vec<_>>())
}

fn generators_text(dec: &GradedModuleDecomposition, text: &mut String) {
    let _ = writeln!(text, "rank {}", dec.rank());
    let _ = writeln!(text, "Poincare series {}", dec.poincare_series());
    for g in &dec.generators {
        let _ = writeln!(text, "  {}  shift {}  class {}", g.label, g.shift, g.class.render());
    }
}

fn module_report(command: &str, model: &VarietyModel, ms: &ModuleStructure) -> Report {
    let dec = &ms.decomposition;
    let mut json = json!({
        "command": command,
        "dimension": model.dimension,
        "fixed_points": model.points.len(),
        "coweight": ms.strata.coweight,
        "rank": dec.rank(),
        "poincare": dec.poincare_series().to_string(),
        "strata": ms.strata.cells,
        "generators": generators_json(dec),
        "warnings": ms.strata.warnings,
    });
    theory_json(&mut json, ms.strata.theory);
    let mut text = format!(
        "dimension {}, {} fixed points, theory {}, coweight {}\n",
        model.dimension,
        model.points.len(),
        describe_theory(ms.strata.theory),
        ms.strata.coweight
    );
    for w in &ms.strata.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    generators_text(dec, &mut text);
    Report { json, text }
}

fn decomposition_report(dec: &GradedModuleDecomposition) -> Report {
    let mut json = json!({
        "command": "model",
        "rank": dec.rank(),
        "poincare": dec.poincare_series().to_string(),
        "generators": generators_json(dec),
    });
    theory_json(&mut json, dec.theory);
    let mut text = format!("stratum poset, theory {}\n", describe_theory(dec.theory));
    generators_text(dec, &mut text);
    Report { json, text }
}

fn limit_report(limit: &LimitModulePresentation) -> Report {
    let json = json!({
        "command": "gr-limit",
        "type": limit.spec,
        "alpha": limit.alpha,
        "theory": limit.theory.tag(),
        "base_ring_rank": limit.base_ring_rank,
        "index_description": limit.index_description,
        "levels": limit.levels,
        "projections": limit.projections,
        "diagrams_commute": limit.diagrams_commute(),
        "lim1_vanishes": limit.lim1_vanishes,
    });
    let mut text = format!(
        "inverse system for the affine Grassmannian of {}, highest weight {}\n",
        limit.spec, limit.alpha
    );
    for l in &limit.levels {
        let _ = writeln!(text, "  level {}: rank {}", l.n, l.rank);
    }
    let _ = writeln!(
        text,
        "diagrams commute: {}; restrictions onto (lim^1 = 0): {}",
        limit.diagrams_commute(),
        limit.lim1_vanishes
    );
    let _ = writeln!(text, "index set: {}", limit.index_description);
    Report { json, text }
}

fn describe_theory(theory: Theory) -> String {
    match theory {
        Theory::MU { truncation } => format!("MU (truncated at Chern degree {truncation})"),
        other => other.tag().to_string(),
    }
}
