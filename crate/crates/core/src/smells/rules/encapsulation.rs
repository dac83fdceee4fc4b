use std::collections::{BTreeMap, BTreeSet};

use super::design::ancestors;
use super::util::{is_static_final, scopes, simple, Code, Scope};
use crate::java::ast::*;
use crate::smells::engine::{Ctx, Sink, UnitIndex};

const VISIBILITY: &str = "visibility-modifier";
const PUBLIC_COUNT: &str = "excessive-public-count";
const DEFICIENT: &str = "deficient-encapsulation";
const FINAL_PARAMS: &str = "final-parameters";
const FINAL_CLASS: &str = "final-class";
const HIDDEN_FIELD: &str = "hidden-field";
const UNEXPLOITED: &str = "unexploited-encapsulation";
pub(crate) const MISSING_HIERARCHY: &str = "missing-hierarchy";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    for scope in scopes(cx.ast) {
        if let Some(t) = scope.decl {
            per_type(cx, t, s);
        }
        for m in scope.callables() {
            if m.body.is_some() {
                for p in &m.params {
                    if !p.modifiers.has(Modifier::Final) {
                        s.emit(
                            FINAL_PARAMS,
                            p.span,
                            format!("Parameter {} should be final.", p.name.name),
                        );
                    }
                }
            }
        }
        if s.on(HIDDEN_FIELD) {
            hidden_fields(scope, s);
        }
        if s.on(UNEXPLOITED) || s.on(MISSING_HIERARCHY) {
            for m in scope.callables() {
                if let Some(b) = &m.body {
                    type_checks(cx.unit, m, b, s);
                }
            }
        }
    }
}

fn per_type(cx: &Ctx, t: &TypeDecl, s: &mut Sink) {
    if t.is_interface() {
        return;
    }
    let mut exposed_state = false;
    for f in t.fields() {
        let constant = is_static_final(&f.modifiers);
        if !f.modifiers.has(Modifier::Private) && !constant {
            for v in &f.vars {
                if v.name.name != "serialVersionUID" {
                    s.emit(
                        VISIBILITY,
                        v.name.span,
                        format!("Variable '{}' must be private and have accessor methods.", v.name.name),
                    );
                }
            }
        }
        if !constant && (f.modifiers.has(Modifier::Public) || f.modifiers.has(Modifier::Protected)) {
            exposed_state = true;
        }
    }
    if exposed_state {
        s.emit(
            DEFICIENT,
            t.name.span,
            format!("Type '{}' exposes non-constant fields.", t.name.name),
        );
    }

    let public_fields: usize = t
        .fields()
        .filter(|f| f.modifiers.has(Modifier::Public))
        .map(|f| f.vars.len())
        .sum();
    let public_methods = t.methods().filter(|m| m.modifiers.has(Modifier::Public)).count();
    let public = public_fields + public_methods;
    if public as f64 > s.num(PUBLIC_COUNT, "max") {
        s.emit(
            PUBLIC_COUNT,
            t.name.span,
            format!("This class has a bunch of public methods and attributes ({public})."),
        );
    }

    if t.kind == TypeKind::Class && !t.modifiers.has(Modifier::Final) && !t.modifiers.has(Modifier::Abstract) {
        let ctors: Vec<&MethodDecl> = t.constructors().collect();
        let only_private = !ctors.is_empty() && ctors.iter().all(|c| c.modifiers.has(Modifier::Private));
        let extended = cx
            .unit
            .types
            .iter()
            .any(|i| i.decl.extends.iter().any(|e| simple(&e.name) == t.name.name));
        if only_private && !extended {
            s.emit(
                FINAL_CLASS,
                t.name.span,
                format!("Class {} should be declared as final.", t.name.name),
            );
        }
    }
}

fn hidden_fields(scope: Scope, s: &mut Sink) {
    let mut instance: BTreeSet<&str> = BTreeSet::new();
    let mut statics: BTreeSet<&str> = BTreeSet::new();
    for f in scope.fields() {
        for v in &f.vars {
            if f.modifiers.has(Modifier::Static) || scope.is_interface() {
                statics.insert(&v.name.name);
            } else {
                instance.insert(&v.name.name);
            }
        }
    }
    if instance.is_empty() && statics.is_empty() {
        return;
    }
    let check = |id: &Ident, in_static: bool, s: &mut Sink| {
        let n = id.name.as_str();
        if statics.contains(n) || (!in_static && instance.contains(n)) {
            s.emit(HIDDEN_FIELD, id.span, format!("'{n}' hides a field."));
        }
    };
    for m in &scope.body.members {
        let (is_static, params, body): (bool, &[Param], Option<&Block>) = match m {
            Member::Method(md) => (md.modifiers.has(Modifier::Static), &md.params, md.body.as_ref()),
            Member::Initializer(i) => (i.is_static, &[], Some(&i.body)),
            _ => continue,
        };
        for p in params {
            check(&p.name, is_static, s);
        }
        if let Some(b) = body {
            for d in Code::of_block(b).locals {
                for v in &d.vars {
                    check(&v.name, is_static, s);
                }
            }
        }
    }
}

/// Explicit `instanceof` tests of one variable against several declared
/// types. If the tested types share a declared supertype the hierarchy is
/// there but unused; otherwise it is missing.
fn type_checks(unit: &UnitIndex, m: &MethodDecl, body: &Block, s: &mut Sink) {
    let mut tested: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for e in Code::of_block(body).exprs {
        if let ExprKind::InstanceOf { expr, ty, .. } = &e.kind {
            if let Some(n) = expr.unparen().as_name() {
                tested.entry(n).or_default().insert(ty.simple_name());
            }
        }
    }
    let mut unexploited = false;
    let mut missing = false;
    for types in tested.values().filter(|t| t.len() >= 2) {
        // Only types declared in the unit say anything about its design.
        let Some(decls) = types.iter().map(|ty| unit.lookup(ty)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let mut common: Option<BTreeSet<String>> = None;
        for info in decls {
            let mut anc = ancestors(unit, info.decl);
            anc.retain(|n| unit.lookup(n).is_some());
            common = Some(match common {
                None => anc,
                Some(c) => c.intersection(&anc).cloned().collect(),
            });
        }
        if common.is_some_and(|c| !c.is_empty()) {
            unexploited = true;
        } else {
            missing = true;
        }
    }
    if unexploited {
        s.emit(
            UNEXPLOITED,
            m.name.span,
            format!("Method '{}' switches on types of one hierarchy.", m.name.name),
        );
    }
    if missing {
        s.emit(
            MISSING_HIERARCHY,
            m.name.span,
            format!("Method '{}' switches on unrelated types.", m.name.name),
        );
    }
}
