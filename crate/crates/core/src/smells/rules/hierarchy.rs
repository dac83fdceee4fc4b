use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::design::{ancestors, declared_supertypes, mentioned_names, subtypes};
use super::util::{simple, Uses};
use crate::java::ast::*;
use crate::metrics::inheritance_depth;
use crate::smells::engine::{Ctx, Sink, UnitIndex};

const BROKEN: &str = "broken-hierarchy";
const CYCLIC: &str = "cyclic-hierarchy";
const DEEP: &str = "deep-hierarchy";
const MULTIPATH: &str = "multipath-hierarchy";
const REBELLIOUS: &str = "rebellious-hierarchy";
const WIDE: &str = "wide-hierarchy";
const PACKAGE_CYCLES: &str = "dependency-cycles-between-packages";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    let unit = cx.unit;
    let parents: HashMap<String, String> = unit
        .types
        .iter()
        .map(|i| {
            let parent = i
                .decl
                .extends
                .first()
                .map(|e| simple(&e.name).to_string())
                .unwrap_or_default();
            (i.decl.name.name.clone(), parent)
        })
        .collect();
    for info in unit.types.iter().filter(|i| i.file == cx.file) {
        let t = info.decl;
        broken(unit, t, s);
        cyclic(unit, t, s);
        let depth = inheritance_depth(&t.name.name, &parents);
        if depth as f64 > s.num(DEEP, "max_depth") {
            s.emit(
                DEEP,
                t.name.span,
                format!("Type '{}' sits {depth} levels deep in its hierarchy.", t.name.name),
            );
        }
        multipath(unit, t, s);
        rebellious(unit, t, s);
        let subs = subtypes(unit, &t.name.name).len();
        if subs as f64 >= s.num(WIDE, "min_subtypes") {
            s.emit(
                WIDE,
                t.name.span,
                format!("Type '{}' has {subs} direct subtypes.", t.name.name),
            );
        }
    }
    if s.on(PACKAGE_CYCLES) {
        package_cycles(cx, s);
    }
}

fn broken(unit: &UnitIndex, t: &TypeDecl, s: &mut Sink) {
    if t.kind != TypeKind::Class {
        return;
    }
    let Some(sup) = t.extends.first().and_then(|e| unit.lookup(&e.name)) else {
        return;
    };
    let inherited: BTreeSet<&str> = sup.decl.methods().map(|m| m.name.name.as_str()).collect();
    if inherited.is_empty() {
        return;
    }
    let overrides = t.methods().any(|m| inherited.contains(m.name.name.as_str()));
    let mut uses = Uses::default();
    crate::java::visit::Visitor::visit_type_decl(&mut uses, t);
    let calls = uses.calls.iter().any(|(n, _)| inherited.contains(n));
    if !overrides && !calls {
        s.emit(
            BROKEN,
            t.name.span,
            format!(
                "Type '{}' neither uses nor overrides anything of '{}'.",
                t.name.name, sup.decl.name.name
            ),
        );
    }
}

fn cyclic(unit: &UnitIndex, t: &TypeDecl, s: &mut Sink) {
    let mentioned = mentioned_names(t);
    let refers_to_subtype = subtypes(unit, &t.name.name)
        .iter()
        .any(|sub| sub.name.name != t.name.name && mentioned.contains(&sub.name.name));
    if refers_to_subtype {
        s.emit(
            CYCLIC,
            t.name.span,
            format!("Supertype '{}' refers to one of its subtypes.", t.name.name),
        );
    }
}

/// A direct supertype that is also reachable through another direct
/// supertype.
fn multipath(unit: &UnitIndex, t: &TypeDecl, s: &mut Sink) {
    let direct = declared_supertypes(unit, t);
    for (i, a) in direct.iter().enumerate() {
        for (j, b) in direct.iter().enumerate() {
            if i != j && ancestors(unit, b).contains(&a.name.name) {
                s.emit(
                    MULTIPATH,
                    t.name.span,
                    format!(
                        "Type '{}' inherits '{}' both directly and through '{}'.",
                        t.name.name, a.name.name, b.name.name
                    ),
                );
                return;
            }
        }
    }
}

fn rejects(body: &Block) -> bool {
    match body.stmts.as_slice() {
        [] => true,
        [only] => matches!(only.kind, StmtKind::Throw(_)),
        _ => false,
    }
}

fn rebellious(unit: &UnitIndex, t: &TypeDecl, s: &mut Sink) {
    if t.extends.is_empty() && t.implements.is_empty() {
        return;
    }
    let mut inherited: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
    for a in ancestors(unit, t) {
        if let Some(info) = unit.lookup(&a) {
            for m in info.decl.methods() {
                inherited
                    .entry(m.name.name.as_str())
                    .or_default()
                    .insert(m.params.len());
            }
        }
    }
    for m in t.methods() {
        let overrides = m.modifiers.has_annotation("Override")
            || inherited
                .get(m.name.name.as_str())
                .is_some_and(|arities| arities.contains(&m.params.len()));
        if overrides && m.body.as_ref().is_some_and(rejects) {
            s.emit(
                REBELLIOUS,
                m.name.span,
                format!("Override '{}' rejects inherited behaviour.", m.name.name),
            );
        }
    }
}

/// Package of the type imported by `imp`.
fn imported_package(imp: &ImportDecl) -> &str {
    match (imp.is_static, imp.on_demand) {
        (false, true) => &imp.name,
        (false, false) | (true, true) => imp.qualifier(),
        (true, false) => {
            let q = imp.qualifier();
            q.rfind('.').map(|i| &q[..i]).unwrap_or("")
        }
    }
}

fn package_cycles(cx: &Ctx, s: &mut Sink) {
    let Some(own) = &cx.ast.unit.package else { return };
    let packages: BTreeSet<&str> = cx
        .unit
        .files
        .iter()
        .filter_map(|a| a.unit.package.as_ref().map(|p| p.name.as_str()))
        .collect();
    let index: BTreeMap<&str, usize> = packages.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = packages.iter().map(|_| g.add_node(())).collect();
    let mut edges = BTreeSet::new();
    for a in &cx.unit.files {
        let Some(p) = &a.unit.package else { continue };
        for imp in &a.unit.imports {
            if let Some(&q) = index.get(imported_package(imp)) {
                if q != index[p.name.as_str()] {
                    edges.insert((index[p.name.as_str()], q));
                }
            }
        }
    }
    for (a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let me = index[own.name.as_str()];
    let cyclic = tarjan_scc(&g)
        .into_iter()
        .any(|c| c.len() > 1 && c.iter().any(|n| n.index() == me));
    if cyclic {
        s.emit(
            PACKAGE_CYCLES,
            own.span,
            format!("Package '{}' is part of a package dependency cycle.", own.name),
        );
    }
}
