use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Value};
use stonesset::algebra::{
    check_associativity, check_generically_stable, check_indiscernible, check_stable_commutation,
    morley as morley_type, product_type, ComposedFamily,
};
use stonesset::calculus::{
    self, diagram_of, enumerate_coherent_families_in, section_from_witness, type_as_lifting,
    SectionFamily,
};
use stonesset::simplicial::{IndexClass, IndexMap, NaturalTransformation, Outcome, SolveMode};
use stonesset::sset::{build_preset, components, contractibility_probe};
use stonesset::structure::{self, compose, FiniteStructure, Limits, TypeSpace};

use crate::document::{self, PosetDocument, StructureDocument};
use crate::report::Report;
use crate::{Class, CliError, Mode, ReductArgs, StructureArgs};

struct Loaded {
    m: FiniteStructure,
    digest: String,
    limits: Limits,
    depth: Option<usize>,
}

impl Loaded {
    fn new(args: &StructureArgs) -> Result<Self, CliError> {
        let limits = Limits {
            max_universe: args.max_universe,
            tuple_budget: args.budget,
        };
        let (m, canonical) = document::load_structure(&args.structure)?;
        if m.size() > limits.max_universe {
            return Err(stonesset::Error::UniverseTooLarge {
                size: m.size(),
                bound: limits.max_universe,
            }
            .into());
        }
        Ok(Loaded {
            m,
            digest: document::digest(&canonical),
            limits,
            depth: args.depth,
        })
    }

    /// `--depth`, defaulting to `default` and required to be positive.
    fn depth_or(&self, default: usize) -> Result<usize, CliError> {
        match self.depth.unwrap_or(default) {
            0 => Err(CliError::Input("--depth must be at least 1".into())),
            d => Ok(d),
        }
    }

    fn space(&self, depth: usize) -> Result<TypeSpace, CliError> {
        Ok(TypeSpace::build(&self.m, depth, &self.limits)?)
    }

    fn element(&self, name: &str) -> Result<usize, CliError> {
        Ok(self.m.element(name)?)
    }

    fn elements(&self, csv: &str) -> Result<Vec<usize>, CliError> {
        split_csv(csv)
            .iter()
            .map(|name| self.element(name))
            .collect()
    }

    fn report(&self, command: &str, result: Value) -> Report {
        Report::new(command, self.digest.clone(), result)
    }
}

fn split_csv(csv: &str) -> Vec<String> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// An orbit, written as the names of its least tuple.
fn type_names(space: &TypeSpace, n: usize, orbit: usize) -> Vec<String> {
    space.structure().names(space.representative(n, orbit))
}

fn components_json(t: &NaturalTransformation) -> Value {
    json!(t.components())
}

fn head_of(space: &TypeSpace, section: &[Vec<usize>]) -> usize {
    let first = space.representative(2, section[0][0])[0];
    space.orbit_of(&[first]).expect("element")
}

pub fn orbits(args: &StructureArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let depth = l.depth_or(l.m.size())?;
    let space = l.space(depth)?;
    let levels: Vec<Value> = (1..=depth)
        .map(|n| {
            json!({
                "level": n,
                "orbits": space.orbit_count(n),
                "burnside": space.burnside_count(n) as u64,
                "representatives": space.representatives(n).iter()
                    .map(|t| l.m.names(t)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let agree = (1..=depth).all(|n| space.orbit_count(n) as u128 == space.burnside_count(n));
    let result = json!({
        "depth": depth,
        "group_order": space.group().order(),
        "orbit_counts": space.orbit_counts(),
        "levels": levels,
    });
    Ok(l.report("orbits", result).check("burnside", agree))
}

pub fn automorphisms(args: &StructureArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let group = structure::automorphisms(&l.m, &l.limits)?;
    let identity: Vec<usize> = (0..l.m.size()).collect();
    let mut closure = BTreeSet::from([identity]);
    let mut frontier: Vec<Vec<usize>> = closure.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in group.generators() {
            let q = compose(g, &p);
            if closure.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let elements: BTreeSet<Vec<usize>> = group.elements().iter().cloned().collect();
    let preserved = group.elements().iter().all(|p| l.m.preserves(p));
    let result = json!({
        "order": group.order(),
        "parameters": l.m.parameters().iter().map(|&e| l.m.name(e)).collect::<Vec<_>>(),
        "generators": group.generators().iter().map(|g| l.m.names(g)).collect::<Vec<_>>(),
    });
    Ok(l.report("automorphisms", result)
        .check("preserves_structure", preserved)
        .check("generators_generate", closure == elements))
}

pub fn sections(args: &StructureArgs, mode: Mode, class: Class) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size())?;
    let space = l.space(d + 1)?;
    let (class, class_name) = match class {
        Class::All => (IndexClass::All, "all"),
        Class::Monotone => (IndexClass::Monotone, "monotone"),
    };
    let solve_mode = match mode {
        Mode::One => SolveMode::FindOne,
        Mode::Count => SolveMode::Count,
        Mode::Enumerate => SolveMode::Enumerate,
    };
    let witnesses: Vec<(String, SectionFamily)> = calculus::invariant_witnesses(&space)
        .into_iter()
        .map(|w| Ok((w.name, section_from_witness(&space, w.element, d)?)))
        .collect::<Result<_, CliError>>()?;
    let describe = |components: &[Vec<usize>]| {
        let realized_by = witnesses
            .iter()
            .find(|(_, f)| f.transformation().components() == components)
            .map(|(name, _)| name.clone());
        json!({
            "head": type_names(&space, 1, head_of(&space, components)),
            "realized_by": realized_by,
            "components": components,
        })
    };
    let outcome = enumerate_coherent_families_in(&space, d, class, solve_mode)?;
    let mut result = json!({ "depth": d, "index_class": class_name });
    let fields = result.as_object_mut().expect("object");
    let mut exists = true;
    match outcome {
        Outcome::Found(section) => {
            fields.insert("found".into(), json!(true));
            fields.insert(
                "family".into(),
                describe(section.transformation().components()),
            );
        }
        Outcome::NoSection { deepest_level } => {
            exists = false;
            fields.insert("found".into(), json!(false));
            fields.insert("deepest_level".into(), json!(deepest_level));
        }
        Outcome::Count(n) => {
            fields.insert("count".into(), json!(n));
        }
        Outcome::Enumerated(all) => {
            fields.insert("count".into(), json!(all.len()));
            let families: Vec<Value> = all
                .iter()
                .map(|s| describe(s.transformation().components()))
                .collect();
            fields.insert("families".into(), json!(families));
        }
    }
    let mode_name = match mode {
        Mode::One => "one",
        Mode::Count => "count",
        Mode::Enumerate => "enumerate",
    };
    fields.insert("mode".into(), json!(mode_name));
    let report = l.report("sections", result);
    Ok(match mode {
        Mode::One => report.check("section_exists", exists),
        _ => report,
    })
}

pub fn invariant_witnesses(args: &StructureArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size())?;
    let space = l.space(d + 1)?;
    let witnesses = calculus::invariant_witnesses(&space);
    let fixed: BTreeSet<usize> = (0..l.m.size())
        .filter(|&e| space.group().elements().iter().all(|g| g[e] == e))
        .collect();
    let found: BTreeSet<usize> = witnesses.iter().map(|w| w.element).collect();
    let result = json!({
        "depth": d,
        "witnesses": witnesses.iter().map(|w| w.name.clone()).collect::<Vec<_>>(),
    });
    Ok(l.report("invariant-witnesses", result)
        .check("fixed_by_automorphisms", fixed == found))
}

pub fn bijection_check(args: &StructureArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size())?;
    let space = l.space(d + 1)?;
    let report = calculus::bijection_check(&space)?;
    let pairing: Vec<Value> = report
        .pairing
        .iter()
        .map(|(w, family)| json!({ "witness": w.name, "family": family }))
        .collect();
    let result = json!({
        "depth": report.depth,
        "witnesses": report.witness_count,
        "families": report.family_count,
        "matched": report.matched,
        "pairing": pairing,
    });
    Ok(l.report("bijection-check", result)
        .check("matched", report.matched))
}

pub fn stable_check(args: &StructureArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size())?;
    let space = l.space(d + 1)?;
    let report = calculus::stable_check(&space, d)?;
    let result = json!({
        "depth": d,
        "stable": report.stable,
        "heads_covered": report.heads_covered.iter()
            .map(|&h| l.m.name(space.representative(1, h)[0])).collect::<Vec<_>>(),
        "heads_total": report.head_count,
        "formulations_agree": report.formulations_agree,
        "deepest_level": report.deepest_level,
    });
    Ok(l.report("stable-check", result)
        .check("stable", report.stable)
        .check("formulations_agree", report.formulations_agree))
}

fn build_reduct(
    l: &Loaded,
    space: &TypeSpace,
    args: &ReductArgs,
) -> Result<structure::Reduct, CliError> {
    for name in &args.drop_relation {
        if !l.m.relations().contains_key(name) {
            return Err(stonesset::Error::UnknownRelation(name.clone()).into());
        }
    }
    let keep_relations: Vec<&str> =
        l.m.relations()
            .keys()
            .map(String::as_str)
            .filter(|r| !args.drop_relation.iter().any(|d| d == r))
            .collect();
    let keep_constants: Vec<&str> = l.m.constants().keys().map(String::as_str).collect();
    let parameters: Vec<String> = match &args.params_keep {
        Some(csv) => split_csv(csv),
        None => {
            l.m.parameters()
                .iter()
                .map(|&e| l.m.name(e).to_string())
                .collect()
        }
    };
    Ok(structure::reduct(
        space,
        &keep_relations,
        &keep_constants,
        &parameters.iter().map(String::as_str).collect::<Vec<_>>(),
        &l.limits,
    )?)
}

pub fn relative_stable_check(
    args: &StructureArgs,
    reduct: &ReductArgs,
) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size())?;
    let space = l.space(d + 1)?;
    let r = build_reduct(&l, &space, reduct)?;
    let natural = r.morphism.verify_naturality().is_natural();
    let report = calculus::relative_stable_check(&space, &r, d)?;
    let result = json!({
        "depth": d,
        "reduct": StructureDocument::from_structure(&r.structure),
        "exists": report.exists,
        "deepest_level": report.deepest_level,
    });
    Ok(l.report("relative-stable-check", result)
        .check("reduct_natural", natural)
        .check("relative_stable", report.exists))
}

fn families_for(
    l: &Loaded,
    space: &TypeSpace,
    d: usize,
    names: &[String],
) -> Result<Vec<SectionFamily>, CliError> {
    names
        .iter()
        .map(|name| Ok(section_from_witness(space, l.element(name)?, d)?))
        .collect()
}

pub fn product(args: &StructureArgs, witnesses: &[String]) -> Result<Report, CliError> {
    if !(2..=3).contains(&witnesses.len()) {
        return Err(CliError::Input(format!(
            "product takes 2 or 3 --witness values, got {}",
            witnesses.len()
        )));
    }
    let l = Loaded::new(args)?;
    let k = witnesses.len();
    let d = l.depth_or(l.m.size().max(k))?;
    let space = l.space(d + 1)?;
    let factors = families_for(&l, &space, d, witnesses)?;
    let cf = ComposedFamily::new(factors.clone())?;
    let joint = cf.joint_type()?;
    let mut projections = true;
    for (i, f) in factors.iter().enumerate() {
        projections &= cf.extract(&IndexMap::new(k, vec![i])?)? == f.head();
    }
    let mut result = json!({
        "depth": d,
        "witnesses": witnesses,
        "joint_type": type_names(&space, k, joint),
    });
    if k == 2 {
        let (_, two) = product_type(&factors[0], &factors[1])?;
        return Ok(l
            .report("product", result)
            .check("factor_projections", projections)
            .check("binary_product_agrees", two == joint));
    }
    let associative = check_associativity(&factors[0], &factors[1], &factors[2])?;
    result["associative"] = json!(associative);
    Ok(l.report("product", result)
        .check("factor_projections", projections)
        .check("associative", associative))
}

pub fn morley(args: &StructureArgs, witness: &str, steps: usize) -> Result<Report, CliError> {
    if steps == 0 {
        return Err(CliError::Input("--steps must be at least 1".into()));
    }
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size().max(steps))?;
    let space = l.space(d + 1)?;
    let p = section_from_witness(&space, l.element(witness)?, d)?;
    let sequence = morley_type(&p, steps)?;
    let indiscernible = check_indiscernible(&space, steps, sequence);
    let cf = ComposedFamily::new(vec![p.clone(); steps])?;
    let mut reindexing = true;
    for m in 1..=steps {
        let shorter = ComposedFamily::new(vec![p.clone(); m])?.joint_type()?;
        for j in IndexMap::monotone_injections(m, steps) {
            reindexing &= cf.extract(&j)? == shorter;
        }
    }
    let result = json!({
        "depth": d,
        "witness": witness,
        "steps": steps,
        "sequence_type": type_names(&space, steps, sequence),
        "indiscernible": indiscernible,
    });
    Ok(l.report("morley", result)
        .check("indiscernible", indiscernible)
        .check("reindexing", reindexing))
}

pub fn genstable(args: &StructureArgs, witness: Option<&str>) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size().max(2))?;
    let space = l.space(d + 1)?;
    let names: Vec<String> = match witness {
        Some(w) => vec![w.to_string()],
        None => calculus::invariant_witnesses(&space)
            .into_iter()
            .map(|w| w.name)
            .collect(),
    };
    let families = families_for(&l, &space, d, &names)?;
    let mut rows = Vec::new();
    let mut all_stable = true;
    for (name, p) in names.iter().zip(&families) {
        let stable = check_generically_stable(p)?;
        all_stable &= stable;
        rows.push(json!({ "witness": name, "generically_stable": stable }));
    }
    let mut commute = true;
    for p in &families {
        for q in &families {
            commute &= check_stable_commutation(p, q)?;
        }
    }
    let result = json!({ "depth": d, "types": rows, "pairwise_commute": commute });
    Ok(l.report("genstable", result)
        .check("generically_stable", all_stable)
        .check("pairwise_commute", commute))
}

pub fn reduct(args: &StructureArgs, reduct: &ReductArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let depth = l.depth_or(l.m.size() + 1)?;
    let space = l.space(depth)?;
    let r = build_reduct(&l, &space, reduct)?;
    let natural = r.morphism.verify_naturality().is_natural();
    let result = json!({
        "depth": depth,
        "reduct": StructureDocument::from_structure(&r.structure),
        "orbit_counts": space.orbit_counts(),
        "reduct_orbit_counts": r.space.orbit_counts(),
        "map": components_json(&r.morphism),
    });
    Ok(l.report("reduct", result).check("natural", natural))
}

pub fn borel(args: &StructureArgs) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let level = args.depth.unwrap_or(1);
    let space = l.space(level + 1)?;
    let report = calculus::borel(&space, level, &l.limits)?;
    let group = space.group().elements();
    let classes: Vec<Value> = report
        .class_representatives
        .iter()
        .zip(&report.map)
        .map(|((x, gs), &image)| {
            json!({
                "point": l.m.name(*x),
                "group": gs.iter().map(|&g| l.m.names(&group[g])).collect::<Vec<_>>(),
                "type": type_names(&space, level + 1, image),
            })
        })
        .collect();
    let candidates: Vec<Value> = report
        .candidates
        .iter()
        .map(|(c, ok)| json!({ "convention": c.name(), "class_invariant": ok }))
        .collect();
    let order = group.len();
    let result = json!({
        "level": level,
        "convention": report.convention.name(),
        "group_order": order,
        "class_count": report.class_count,
        "candidates": candidates,
        "classes": classes,
        "well_defined": report.well_defined,
        "image_property": report.image_property,
    });
    let mut out = l
        .report("borel", result)
        .check("well_defined", report.well_defined)
        .check("image_property", report.image_property);
    if level >= 1 {
        let free = l.m.size() * order.pow(level as u32) / order;
        out = out.check("free_action_count", report.class_count == free);
    }
    Ok(out)
}

pub fn sset(
    preset: Option<&str>,
    poset: Option<&Path>,
    depth: usize,
    budget: u128,
) -> Result<Report, CliError> {
    if depth == 0 {
        return Err(CliError::Input("--depth must be at least 1".into()));
    }
    let top = depth + 1;
    let (set, input, label) = match (preset, poset) {
        (Some(name), None) => (
            build_preset(name, top, budget)?,
            json!({ "preset": name, "poset": null }),
            name.to_string(),
        ),
        (None | Some("nerve-poset"), Some(path)) => {
            let doc: PosetDocument = document::read_document(path)?;
            let set = stonesset::sset::TupleModel::nerve(&doc.to_poset()?).build(top, budget)?;
            (
                set,
                json!({ "preset": "nerve-poset", "poset": doc }),
                "nerve-poset".to_string(),
            )
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "--poset is only valid with --preset nerve-poset".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Input(
                "one of --preset or --poset is required".into(),
            ))
        }
    };
    let digest = document::digest(&document::to_canonical_json(&input));
    let probe = contractibility_probe(&set, depth)?;
    let names = |vs: &[usize]| -> Vec<String> {
        vs.iter().map(|&v| set.vertex_names()[v].clone()).collect()
    };
    let per_component: Vec<Value> = probe
        .per_component
        .iter()
        .map(|c| {
            json!({
                "vertices": names(&c.vertices),
                "section_exists": c.section_exists,
                "failure_level": c.failure_level,
            })
        })
        .collect();
    let componentwise =
        probe.section_exists == probe.per_component.iter().all(|c| c.section_exists);
    let result = json!({
        "preset": label,
        "depth": depth,
        "counts": set.counts(),
        "components": components(&set).iter().map(|c| names(c)).collect::<Vec<_>>(),
        "section_exists": probe.section_exists,
        "failure_level": probe.failure_level,
        "per_component": per_component,
    });
    Ok(Report::new("sset", digest, result)
        .check("componentwise", componentwise)
        .check("section_exists", probe.section_exists))
}

pub fn diagram(args: &StructureArgs, subset: &str) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let depth = l.depth_or(l.m.size())?;
    let space = l.space(depth)?;
    let diagram = diagram_of(&space, &l.elements(subset)?)?;
    let map = diagram.transformation();
    let natural = map.verify_naturality().is_natural();
    let levels: Vec<Value> = (1..=depth)
        .map(|n| {
            let image: BTreeSet<usize> = map.component(n).iter().copied().collect();
            json!({ "level": n, "tuples": map.component(n).len(), "types_hit": image.len() })
        })
        .collect();
    let result = json!({
        "depth": depth,
        "subset": l.m.names(diagram.subset()),
        "levels": levels,
        "map": components_json(map),
    });
    Ok(l.report("diagram", result).check("natural", natural))
}

pub fn lift_type(args: &StructureArgs, witness: &str, subset: &str) -> Result<Report, CliError> {
    let l = Loaded::new(args)?;
    let d = l.depth_or(l.m.size())?;
    let space = l.space(d + 1)?;
    let a = l.element(witness)?;
    let lifting = type_as_lifting(&space, a, &l.elements(subset)?)?;
    let natural = lifting.map.verify_naturality().is_natural();
    let one = lifting.diagram.encode(&[0]);
    let result = json!({
        "depth": d,
        "witness": witness,
        "subset": l.m.names(lifting.diagram.subset()),
        "type_over_first": type_names(&space, 2, lifting.map.apply(1, one)),
        "map": components_json(&lifting.map),
    });
    Ok(l.report("lift-type", result).check("natural", natural))
}
