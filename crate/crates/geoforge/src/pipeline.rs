//! Declarative pipeline runner: a JSON file defines groups, coset systems,
//! actions, and an ordered list of operations and checks; execution produces
//! a machine-readable report.

use crate::caps::Caps;
use crate::cosetgeom::{
    CosetSystem, FlagTransitivityMethod, RcVariant, TypeLabel, Witness,
};
use crate::error::{Error, Result};
use crate::groupcore::{FiniteGroup, GroupElement, Permutation, Subgroup};
use crate::materialize::{
    colored_isomorphic, cube_reference, export_dot, export_json, materialize, Geometry,
};
use crate::ops::{
    direct_product, twist, wreath, ActionSpec, ActionSpecKind, OmegaAction, TypeAction,
    ValidatedAction,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

/// Parsed pipeline specification (schema 1).
#[derive(Debug, Deserialize)]
pub struct PipelineSpec {
    pub schema: u32,
    #[serde(default)]
    pub caps: Option<Caps>,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub systems: BTreeMap<String, SystemSpec>,
    #[serde(default)]
    pub actions: BTreeMap<String, ActionSpecJson>,
    #[serde(default)]
    pub pipeline: Vec<Step>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    Permutation {
        degree: usize,
        generators: Vec<(String, String)>,
    },
}

#[derive(Debug, Deserialize)]
pub struct SystemSpec {
    pub group: String,
    /// type label -> generator labels of the maximal parabolic.
    pub parabolics: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ActionSpecJson {
    Trivial {
        actor: String,
        target: String,
    },
    Conjugation {
        actor: String,
        target: String,
    },
    Images {
        actor: String,
        target: String,
        /// actor generator -> list of (target generator, image expression),
        /// where an image expression is a generator label or cycle notation.
        images: BTreeMap<String, Vec<(String, String)>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Step {
    DirectProduct {
        alpha: String,
        beta: String,
        bind: String,
    },
    Twist {
        alpha: String,
        beta: String,
        action: String,
        /// one chosen member label per orbit
        reps: Vec<String>,
        bind: String,
    },
    Wreath {
        alpha: String,
        beta: String,
        omega: OmegaSpec,
        slots: usize,
        reps: Vec<String>,
        bind: String,
    },
    Materialize {
        system: String,
        bind: String,
    },
    Export {
        geometry: String,
        format: ExportFormat,
        path: String,
    },
    Iso {
        left: String,
        right: String,
    },
    Check {
        system: String,
        checks: Vec<CheckName>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OmegaSpec {
    Natural,
    Blocks { blocks: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    FlagTransitive,
    FlagTransitiveTriple,
    FlagTransitiveGeometry,
    Rc1,
    Rc2,
    RcIntersection,
    Firm,
    Thin,
}

/// One line of the execution report.
#[derive(Debug, Serialize)]
pub struct StepReport {
    pub name: String,
    pub status: String,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub ms: u128,
}

#[derive(Debug, Serialize)]
pub struct PipelineReport {
    pub schema: u32,
    pub steps: Vec<StepReport>,
}

impl PipelineReport {
    pub fn all_pass(&self) -> bool {
        self.steps.iter().all(|s| s.status == "pass")
    }

    /// Exit code contract: 0 all pass, 1 check failure, 2 input error,
    /// 3 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        if self.steps.iter().any(|s| s.status == "cap-exceeded") {
            3
        } else if self.steps.iter().any(|s| s.status == "error") {
            2
        } else if self.steps.iter().any(|s| s.status == "fail") {
            1
        } else {
            0
        }
    }
}

/// Parse a type label: `{a,b}` is an orbit, `base@slot` an indexed copy,
/// anything else a plain name.
pub fn parse_type_label(text: &str) -> Result<TypeLabel> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
        let mut members = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, c) in inner.char_indices() {
            match c {
                '{' => depth += 1,
                '}' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    members.push(parse_type_label(&inner[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !inner[start..].trim().is_empty() {
            members.push(parse_type_label(&inner[start..])?);
        }
        return Ok(TypeLabel::orbit(members));
    }
    if let Some((base, slot)) = text.rsplit_once('@') {
        let slot: u32 = slot
            .parse()
            .map_err(|e| Error::invalid(format!("bad slot in {text:?}: {e}")))?;
        return Ok(TypeLabel::indexed(parse_type_label(base)?, slot));
    }
    if text.is_empty() {
        return Err(Error::invalid("empty type label"));
    }
    Ok(TypeLabel::name(text))
}

struct Environment {
    groups: HashMap<String, Arc<FiniteGroup>>,
    systems: HashMap<String, CosetSystem>,
    actions: HashMap<String, ValidatedAction>,
    geometries: HashMap<String, Geometry>,
}

impl Environment {
    fn group(&self, name: &str) -> Result<Arc<FiniteGroup>> {
        self.groups
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    fn system(&self, name: &str) -> Result<CosetSystem> {
        self.systems
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    fn action(&self, name: &str) -> Result<ValidatedAction> {
        self.actions
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    fn geometry(&self, name: &str) -> Result<Geometry> {
        if name == "cube-reference" {
            return Ok(cube_reference());
        }
        self.geometries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }
}

/// Parse a pipeline spec from JSON text.
pub fn parse_spec(text: &str) -> Result<PipelineSpec> {
    let spec: PipelineSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    if spec.schema != 1 {
        return Err(Error::invalid(format!("unsupported schema {}", spec.schema)));
    }
    Ok(spec)
}

fn build_environment(spec: &PipelineSpec, caps: Caps) -> Result<Environment> {
    let caps = spec.caps.unwrap_or(caps);
    let mut env = Environment {
        groups: HashMap::new(),
        systems: HashMap::new(),
        actions: HashMap::new(),
        geometries: HashMap::new(),
    };
    for (name, group_spec) in &spec.groups {
        let GroupSpec::Permutation { degree, generators } = group_spec;
        let gens = generators
            .iter()
            .map(|(label, text)| Ok((label.clone(), Permutation::parse(text, *degree)?)))
            .collect::<Result<Vec<_>>>()?;
        env.groups.insert(
            name.clone(),
            FiniteGroup::permutation_with_caps(name.clone(), *degree, gens, caps)?,
        );
    }
    for (name, system_spec) in &spec.systems {
        let group = env.group(&system_spec.group)?;
        let mut parabolics = Vec::new();
        for (label, gen_labels) in &system_spec.parabolics {
            let gens = gen_labels
                .iter()
                .map(|l| group.generator(l).cloned())
                .collect::<Result<Vec<_>>>()?;
            parabolics.push((
                parse_type_label(label)?,
                Subgroup::generated_unchecked(group.clone(), gens)?,
            ));
        }
        env.systems.insert(name.clone(), CosetSystem::new(group, parabolics)?);
    }
    for (name, action_spec) in &spec.actions {
        let validated = match action_spec {
            ActionSpecJson::Trivial { actor, target } => {
                ActionSpec::trivial(env.group(actor)?, env.group(target)?).validate()?
            }
            ActionSpecJson::Conjugation { actor, target } => {
                ActionSpec::conjugation(env.group(actor)?, env.group(target)?).validate()?
            }
            ActionSpecJson::Images {
                actor,
                target,
                images,
            } => {
                let target_group = env.group(target)?;
                let mut map = BTreeMap::new();
                for (actor_gen, list) in images {
                    let mut resolved = Vec::new();
                    for (target_gen, expr) in list {
                        let image = resolve_element(&target_group, expr)?;
                        resolved.push((target_gen.clone(), image));
                    }
                    map.insert(actor_gen.clone(), resolved);
                }
                ActionSpec::generator_images(env.group(actor)?, target_group, map).validate()?
            }
        };
        env.actions.insert(name.clone(), validated);
    }
    Ok(env)
}

/// A generator label, or cycle notation for permutation groups.
fn resolve_element(group: &Arc<FiniteGroup>, expr: &str) -> Result<GroupElement> {
    if let Ok(g) = group.generator(expr) {
        return Ok(g.clone());
    }
    match group.degree() {
        Some(degree) => Ok(GroupElement::Perm(Permutation::parse(expr, degree)?)),
        None => Err(Error::UnresolvedReference(expr.to_string())),
    }
}

fn status_of(error: &Error) -> &'static str {
    if error.is_cap() {
        "cap-exceeded"
    } else {
        "error"
    }
}

/// Execute a parsed pipeline under the given default caps.
pub fn run_pipeline(spec: &PipelineSpec, caps: Caps) -> PipelineReport {
    let mut steps = Vec::new();
    let started = Instant::now();
    let mut env = match build_environment(spec, caps) {
        Ok(env) => env,
        Err(e) => {
            steps.push(StepReport {
                name: "build-environment".into(),
                status: status_of(&e).into(),
                witness: None,
                detail: Some(e.to_string()),
                ms: started.elapsed().as_millis(),
            });
            return PipelineReport { schema: 1, steps };
        }
    };
    for (index, step) in spec.pipeline.iter().enumerate() {
        let begun = Instant::now();
        let name = format!("step{index}:{}", step_name(step));
        match execute(step, &mut env) {
            Ok(mut reports) => {
                for r in &mut reports {
                    r.ms = begun.elapsed().as_millis();
                    r.name = format!("{name}{}", r.name);
                }
                steps.extend(reports);
            }
            Err(e) => {
                steps.push(StepReport {
                    name,
                    status: status_of(&e).into(),
                    witness: None,
                    detail: Some(e.to_string()),
                    ms: begun.elapsed().as_millis(),
                });
                break;
            }
        }
    }
    PipelineReport { schema: 1, steps }
}

fn step_name(step: &Step) -> &'static str {
    match step {
        Step::DirectProduct { .. } => "direct-product",
        Step::Twist { .. } => "twist",
        Step::Wreath { .. } => "wreath",
        Step::Materialize { .. } => "materialize",
        Step::Export { .. } => "export",
        Step::Iso { .. } => "iso",
        Step::Check { .. } => "check",
    }
}

/// Resolve one chosen member label per orbit of the type action.
fn reps_by_orbit(
    type_action: &TypeAction,
    chosen: &[String],
) -> Result<BTreeMap<TypeLabel, TypeLabel>> {
    let mut out = BTreeMap::new();
    for text in chosen {
        let member = parse_type_label(text)?;
        let orbit = type_action.orbit_of(&member)?;
        let orbit_label = TypeLabel::orbit(orbit);
        if out.insert(orbit_label.clone(), member).is_some() {
            return Err(Error::invalid(format!(
                "two representatives chosen for orbit {orbit_label}"
            )));
        }
    }
    Ok(out)
}

fn execute(step: &Step, env: &mut Environment) -> Result<Vec<StepReport>> {
    let pass = |detail: String| StepReport {
        name: String::new(),
        status: "pass".into(),
        witness: None,
        detail: Some(detail),
        ms: 0,
    };
    match step {
        Step::DirectProduct { alpha, beta, bind } => {
            let product = direct_product(&env.system(alpha)?, &env.system(beta)?)?;
            let detail = format!(
                "rank {} on a group of order {}",
                product.rank(),
                product.group().order()?
            );
            env.systems.insert(bind.clone(), product);
            Ok(vec![pass(detail)])
        }
        Step::Twist {
            alpha,
            beta,
            action,
            reps,
            bind,
        } => {
            let alpha = env.system(alpha)?;
            let beta = env.system(beta)?;
            let action = env.action(action)?;
            let type_action = TypeAction::from_action(&action, &alpha)?;
            let reps = reps_by_orbit(&type_action, reps)?;
            let twisted = twist(&alpha, &beta, &action, &reps)?;
            let detail = summarize_system(&twisted.system)?;
            env.systems.insert(bind.clone(), twisted.system);
            Ok(vec![pass(detail)])
        }
        Step::Wreath {
            alpha,
            beta,
            omega,
            slots,
            reps,
            bind,
        } => {
            let alpha = env.system(alpha)?;
            let beta = env.system(beta)?;
            let omega = match omega {
                OmegaSpec::Natural => OmegaAction::Natural,
                OmegaSpec::Blocks { blocks } => OmegaAction::Blocks(blocks.clone()),
            };
            // the product power is built here only to resolve orbit labels
            let abar = crate::ops::tuple_power_system(&alpha, *slots)?;
            let table = omega.table(beta.group(), *slots)?;
            let per_gen: Vec<(String, Permutation)> = beta
                .group()
                .generators()
                .iter()
                .map(|(l, g)| (l.clone(), table[g].clone()))
                .collect();
            let action = ActionSpec {
                actor: beta.group().clone(),
                target: abar.group().clone(),
                kind: ActionSpecKind::SlotPermutation(per_gen),
            }
            .validate()?;
            let type_action = TypeAction::from_action(&action, &abar)?;
            let reps = reps_by_orbit(&type_action, reps)?;
            let wreathed = wreath(&alpha, &beta, &omega, *slots, &reps)?;
            let detail = summarize_system(&wreathed.system)?;
            env.systems.insert(bind.clone(), wreathed.system);
            Ok(vec![pass(detail)])
        }
        Step::Materialize { system, bind } => {
            let geometry = materialize(&env.system(system)?)?;
            let detail = format!(
                "{} elements, counts {:?}",
                geometry.elements().len(),
                geometry.counts_by_type()
            );
            env.geometries.insert(bind.clone(), geometry);
            Ok(vec![pass(detail)])
        }
        Step::Export {
            geometry,
            format,
            path,
        } => {
            let geometry = env.geometry(geometry)?;
            let text = match format {
                ExportFormat::Dot => export_dot(&geometry),
                ExportFormat::Json => export_json(&geometry),
            };
            std::fs::write(path, text)
                .map_err(|e| Error::invalid(format!("cannot write {path}: {e}")))?;
            Ok(vec![pass(format!("wrote {path}"))])
        }
        Step::Iso { left, right } => {
            let l = env.geometry(left)?;
            let r = env.geometry(right)?;
            let found = colored_isomorphic(&l, &r, None).is_some();
            Ok(vec![StepReport {
                name: String::new(),
                status: if found { "pass" } else { "fail" }.into(),
                witness: None,
                detail: Some(if found {
                    format!("{left} is colored-isomorphic to {right}")
                } else {
                    format!("{left} is not colored-isomorphic to {right}")
                }),
                ms: 0,
            }])
        }
        Step::Check { system, checks } => {
            let sys = env.system(system)?;
            let mut out = Vec::new();
            for check in checks {
                let report = match check {
                    CheckName::FlagTransitive => {
                        sys.check_flag_transitive(FlagTransitivityMethod::Product)?
                    }
                    CheckName::FlagTransitiveTriple => {
                        sys.check_flag_transitive(FlagTransitivityMethod::Triple)?
                    }
                    CheckName::FlagTransitiveGeometry => {
                        sys.check_flag_transitive(FlagTransitivityMethod::Geometry)?
                    }
                    CheckName::Rc1 => sys.check_residually_connected(RcVariant::Rc1)?,
                    CheckName::Rc2 => sys.check_residually_connected(RcVariant::Rc2)?,
                    CheckName::RcIntersection => {
                        sys.check_residually_connected(RcVariant::Intersection)?
                    }
                    CheckName::Firm => sys.check_firm_thin(false)?.0,
                    CheckName::Thin => sys.check_firm_thin(false)?.1,
                };
                out.push(StepReport {
                    name: format!(":{}/{}", report.property, report.method),
                    status: if report.pass { "pass" } else { "fail" }.into(),
                    witness: report.witness,
                    detail: report.detail,
                    ms: report.millis,
                });
            }
            Ok(out)
        }
    }
}

fn summarize_system(sys: &CosetSystem) -> Result<String> {
    let mut parts = Vec::new();
    for t in sys.types() {
        parts.push(format!("{t}:{}", sys.maximal_parabolic(t)?.order()?));
    }
    Ok(format!(
        "group order {}, parabolic orders [{}]",
        sys.group().order()?,
        parts.join(", ")
    ))
}

/// Parse and run a pipeline from JSON text.
pub fn run_pipeline_text(text: &str, caps: Caps) -> PipelineReport {
    match parse_spec(text) {
        Ok(spec) => run_pipeline(&spec, caps),
        Err(e) => PipelineReport {
            schema: 1,
            steps: vec![StepReport {
                name: "parse".into(),
                status: status_of(&e).into(),
                witness: None,
                detail: Some(e.to_string()),
                ms: 0,
            }],
        },
    }
}

/// Convert the suite report into report JSON (for `paper-suite --json`).
pub fn suite_report_json(report: &crate::suite::SuiteReport) -> Value {
    serde_json::to_value(report).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_pipeline_passes() {
        let report = run_pipeline_text(r#"{"schema": 1}"#, Caps::default());
        assert!(report.all_pass());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn unknown_reference_is_input_error() {
        let text = r#"{
            "schema": 1,
            "systems": {"x": {"group": "nope", "parabolics": []}}
        }"#;
        let report = run_pipeline_text(text, Caps::default());
        assert_eq!(report.exit_code(), 2);
        assert!(report.steps[0].detail.as_ref().unwrap().contains("nope"));
    }

    #[test]
    fn parse_error_reports_location() {
        let report = run_pipeline_text("{not json", Caps::default());
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn type_label_parsing() {
        assert_eq!(parse_type_label("0").unwrap(), TypeLabel::num(0));
        assert_eq!(
            parse_type_label("0@3").unwrap(),
            TypeLabel::indexed(TypeLabel::num(0), 3)
        );
        assert_eq!(
            parse_type_label("{0,2}").unwrap(),
            TypeLabel::orbit(vec![TypeLabel::num(0), TypeLabel::num(2)])
        );
        assert_eq!(
            parse_type_label("{0@1,0@2}").unwrap(),
            TypeLabel::orbit(vec![
                TypeLabel::indexed(TypeLabel::num(0), 1),
                TypeLabel::indexed(TypeLabel::num(0), 2)
            ])
        );
        assert!(parse_type_label("").is_err());
    }

    #[test]
    fn cap_override_reports_exit_3() {
        let text = r#"{
            "schema": 1,
            "caps": {"geometry": 1},
            "groups": {"sym3": {"kind": "permutation", "degree": 3,
                "generators": [["a", "(1,2)"], ["b", "(2,3)"]]}},
            "systems": {"tri": {"group": "sym3",
                "parabolics": [["0", ["b"]], ["1", ["a"]]]}},
            "pipeline": [{"op": "materialize", "system": "tri", "bind": "g"}]
        }"#;
        let report = run_pipeline_text(text, Caps::default());
        assert_eq!(report.exit_code(), 3);
    }
}
