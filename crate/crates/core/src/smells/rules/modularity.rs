use std::collections::{BTreeSet, HashSet};

use super::design::{field_count, is_accessor_name, is_getter, is_setter, TypeGraph};
use super::util::{is_main, named_types, scopes, simple, Code};
use crate::java::ast::*;
use crate::java::visit::{self, Visitor};
use crate::java::Span;
use crate::metrics::{cyclomatic_of_block, referenced_types};
use crate::smells::engine::{Ctx, Sink};

const GOD_CLASS: &str = "god-class";
const DATA_CLASS: &str = "data-class";
const TOO_MANY_METHODS: &str = "too-many-methods";
const TOO_MANY_FIELDS: &str = "too-many-fields";
const USE_UTILITY: &str = "use-utility-class";
const HIDE_UTILITY_CTOR: &str = "hide-utility-class-constructor";
const BROKEN: &str = "broken-modularization";
const CYCLIC: &str = "cyclically-dependent-modularization";
const HUB: &str = "hub-like-modularization";
const INSUFFICIENT: &str = "insufficient-modularization";
const DEMETER: &str = "law-of-demeter";
const CBO: &str = "coupling-between-objects";
const FAN_OUT: &str = "class-fan-out";

/// Library types that do not count towards class fan-out.
const FAN_OUT_EXCLUDED: &[&str] = &[
    "ArrayIndexOutOfBoundsException",
    "ArrayList",
    "Boolean",
    "Byte",
    "Character",
    "Class",
    "Collection",
    "Deprecated",
    "Deque",
    "Double",
    "DoubleStream",
    "EnumSet",
    "Exception",
    "Float",
    "FunctionalInterface",
    "HashMap",
    "HashSet",
    "IllegalArgumentException",
    "IllegalStateException",
    "IndexOutOfBoundsException",
    "IntStream",
    "Integer",
    "LinkedHashMap",
    "LinkedHashSet",
    "LinkedList",
    "List",
    "Long",
    "LongStream",
    "Map",
    "NullPointerException",
    "Object",
    "Optional",
    "OptionalDouble",
    "OptionalInt",
    "OptionalLong",
    "Override",
    "Queue",
    "RuntimeException",
    "SafeVarargs",
    "SecurityException",
    "Set",
    "Short",
    "SortedMap",
    "SortedSet",
    "Stream",
    "String",
    "StringBuffer",
    "StringBuilder",
    "SuppressWarnings",
    "Throwable",
    "TreeMap",
    "TreeSet",
    "UnsupportedOperationException",
    "Void",
];

/// Calls that return their receiver or open a fluent pipeline.
const FLUENT: &[&str] = &["append", "builder", "stream", "parallelStream"];

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    for t in named_types(cx.ast) {
        per_type(t, s);
    }
    if s.on(DEMETER) {
        let max = s.num(DEMETER, "max_chain") as usize;
        for scope in scopes(cx.ast) {
            demeter(&scope.code(), max, s);
        }
    }
    if s.on(CYCLIC) || s.on(HUB) {
        unit_graph(cx, s);
    }
}

fn is_plain_class(t: &TypeDecl) -> bool {
    t.kind == TypeKind::Class && !t.modifiers.has(Modifier::Abstract)
}

fn per_type(t: &TypeDecl, s: &mut Sink) {
    let methods: Vec<&MethodDecl> = t.methods().collect();
    let fields = field_count(t);
    let name = t.name.span;

    if s.on(GOD_CLASS) {
        let members = methods.len() + fields;
        let atfd = foreign_accesses(t);
        if members as f64 > s.num(GOD_CLASS, "max_members") && atfd as f64 > s.num(GOD_CLASS, "max_foreign_accesses") {
            s.emit(
                GOD_CLASS,
                name,
                format!("Possible God Class ({members} members, {atfd} foreign data accesses)."),
            );
        }
    }

    if t.kind == TypeKind::Class && s.on(DATA_CLASS) {
        data_class(t, &methods, fields, s);
    }

    let non_accessors = methods.iter().filter(|m| !is_accessor_name(&m.name.name)).count();
    if non_accessors as f64 > s.num(TOO_MANY_METHODS, "max") {
        s.emit(
            TOO_MANY_METHODS,
            name,
            format!("This class has too many methods ({non_accessors}), consider refactoring it."),
        );
    }

    let state: usize = t
        .fields()
        .filter(|f| !(t.is_interface() || super::util::is_static_final(&f.modifiers)))
        .map(|f| f.vars.len())
        .sum();
    if state as f64 > s.num(TOO_MANY_FIELDS, "max") {
        s.emit(TOO_MANY_FIELDS, name, format!("Too many fields ({state})."));
    }

    if t.kind == TypeKind::Class {
        utility(t, &methods, s);
    }

    if is_plain_class(t) && methods.is_empty() && fields as f64 >= s.num(BROKEN, "min_fields") {
        s.emit(
            BROKEN,
            name,
            format!("Class '{}' holds {fields} fields and no behaviour.", t.name.name),
        );
    }

    let public_methods = methods
        .iter()
        .filter(|m| m.modifiers.has(Modifier::Public) || (t.is_interface() && !m.modifiers.has(Modifier::Private)))
        .count();
    let wmc: u32 = methods
        .iter()
        .filter_map(|m| m.body.as_ref())
        .map(cyclomatic_of_block)
        .sum();
    if public_methods as f64 > s.num(INSUFFICIENT, "max_public_methods")
        || methods.len() as f64 > s.num(INSUFFICIENT, "max_methods")
        || wmc as f64 > s.num(INSUFFICIENT, "max_wmc")
    {
        s.emit(
            INSUFFICIENT,
            name,
            format!(
                "Type '{}' is too large ({public_methods} public methods, {} methods, WMC {wmc}).",
                t.name.name,
                methods.len()
            ),
        );
    }

    let coupling = coupled_types(t);
    if coupling as f64 > s.num(CBO, "max") {
        s.emit(
            CBO,
            name,
            format!("High amount of different objects as members denotes a high coupling ({coupling})."),
        );
    }

    let fan_out = referenced_types(t)
        .iter()
        .filter(|n| !FAN_OUT_EXCLUDED.contains(&simple(n)))
        .count();
    if fan_out as f64 > s.num(FAN_OUT, "max") {
        s.emit(
            FAN_OUT,
            name,
            format!(
                "Class Fan-Out Complexity is {fan_out} (max allowed is {}).",
                s.num(FAN_OUT, "max")
            ),
        );
    }
}

/// Distinct (receiver, member) pairs read from other objects: field reads
/// and getter calls on anything but `this`/`super`.
fn foreign_accesses(t: &TypeDecl) -> usize {
    struct Atfd<'a> {
        seen: HashSet<(String, &'a str)>,
    }
    impl<'a> Visitor<'a> for Atfd<'a> {
        fn visit_expr(&mut self, e: &'a Expr) {
            let receiver = |target: &Expr| match &target.kind {
                ExprKind::This | ExprKind::Super => None,
                ExprKind::Name(n) => Some(n.clone()),
                _ => Some(String::from("<expr>")),
            };
            match &e.kind {
                ExprKind::FieldAccess { target, name } => {
                    if let Some(r) = receiver(target) {
                        self.seen.insert((r, &name.name));
                    }
                }
                ExprKind::MethodCall {
                    target: Some(target),
                    name,
                    args,
                    ..
                } if args.is_empty() && is_accessor_name(&name.name) && !name.name.starts_with("set") => {
                    if let Some(r) = receiver(target) {
                        self.seen.insert((r, &name.name));
                    }
                }
                _ => {}
            }
            visit::walk_expr(self, e);
        }
    }
    let mut v = Atfd { seen: HashSet::new() };
    v.visit_type_decl(t);
    v.seen.len()
}

fn data_class(t: &TypeDecl, methods: &[&MethodDecl], fields: usize, s: &mut Sink) {
    if fields == 0 || t.modifiers.has(Modifier::Abstract) {
        return;
    }
    let boilerplate = ["equals", "hashCode", "toString"];
    let only_accessors = methods
        .iter()
        .all(|m| is_getter(m) || is_setter(m) || boilerplate.contains(&m.name.name.as_str()));
    if !only_accessors {
        return;
    }
    let public_fields: usize = t
        .fields()
        .filter(|f| f.modifiers.has(Modifier::Public) && !super::util::is_static_final(&f.modifiers))
        .map(|f| f.vars.len())
        .sum();
    let accessors = methods.iter().filter(|m| is_getter(m) || is_setter(m)).count();
    let exposed = public_fields + accessors;
    if exposed as f64 >= s.num(DATA_CLASS, "min_exposed") {
        s.emit(
            DATA_CLASS,
            t.name.span,
            format!("The class '{}' is suspected to be a Data Class.", t.name.name),
        );
    }
}

fn utility(t: &TypeDecl, methods: &[&MethodDecl], s: &mut Sink) {
    let ctors: Vec<&MethodDecl> = t.constructors().collect();
    let accessible_ctor = ctors.is_empty() || ctors.iter().any(|c| !c.modifiers.has(Modifier::Private));
    let all_static = methods.iter().all(|m| m.modifiers.has(Modifier::Static))
        && t.fields().all(|f| f.modifiers.has(Modifier::Static));
    if !accessible_ctor || !all_static || t.modifiers.has(Modifier::Abstract) {
        return;
    }
    let has_static_member = !methods.is_empty() || t.fields().next().is_some();
    let exposed_static = methods.iter().any(|m| !m.modifiers.has(Modifier::Private))
        || t.fields().any(|f| !f.modifiers.has(Modifier::Private));
    if t.extends.is_empty() && has_static_member && exposed_static && !t.modifiers.has(Modifier::Static) {
        s.emit(
            HIDE_UTILITY_CTOR,
            t.name.span,
            "Utility classes should not have a public or default constructor.",
        );
    }
    if t.extends.is_empty() && t.implements.is_empty() && !methods.is_empty() && !methods.iter().any(|m| is_main(m)) {
        s.emit(
            USE_UTILITY,
            t.name.span,
            "This utility class has a non-private constructor.",
        );
    }
}

/// Distinct non-primitive types of fields, locals and return types.
fn coupled_types(t: &TypeDecl) -> usize {
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut add = |ty: &TypeRef| {
        let mut all = Vec::new();
        ty.all_names(&mut all);
        for n in all {
            let n = simple(&n).to_string();
            if !PRIMITIVES.contains(&n.as_str())
                && n != "var"
                && n != t.name.name
                && !t.type_params.iter().any(|p| p.name.name == n)
            {
                names.insert(n);
            }
        }
    };
    for f in t.fields() {
        add(&f.ty);
    }
    for m in t.callables() {
        if let Some(r) = &m.return_type {
            add(r);
        }
        if let Some(b) = &m.body {
            for d in Code::of_block(b).locals {
                add(&d.ty);
            }
        }
    }
    names.len()
}

/// Number of method calls in the receiver chain of `e`, and whether the
/// chain is fluent (builder-style or rooted at `new`).
fn chain(e: &Expr) -> (usize, bool) {
    let mut calls = 0;
    let mut fluent = false;
    let mut cur = e;
    loop {
        match &cur.kind {
            ExprKind::MethodCall { target, name, .. } => {
                calls += 1;
                fluent |= FLUENT.contains(&name.name.as_str());
                match target {
                    Some(t) => cur = t,
                    None => break,
                }
            }
            ExprKind::FieldAccess { target, .. } => cur = target,
            ExprKind::Paren(inner) => cur = inner,
            ExprKind::New { .. } => {
                fluent = true;
                break;
            }
            _ => break,
        }
    }
    (calls, fluent)
}

fn demeter(code: &Code, max: usize, s: &mut Sink) {
    let mut inner: HashSet<Span> = HashSet::new();
    for e in &code.exprs {
        let mut cur: &Expr = e;
        // Every call below the outermost one in a chain is covered by it.
        while let ExprKind::MethodCall { target: Some(t), .. } | ExprKind::FieldAccess { target: t, .. } = &cur.kind {
            inner.insert(t.span);
            cur = t;
        }
    }
    for e in &code.exprs {
        if !matches!(e.kind, ExprKind::MethodCall { .. }) || inner.contains(&e.span) {
            continue;
        }
        let (calls, fluent) = chain(e);
        if calls > max && !fluent {
            s.emit(DEMETER, e.span, format!("Call chain of {calls} method calls."));
        }
    }
}

fn unit_graph(cx: &Ctx, s: &mut Sink) {
    let g = TypeGraph::new(cx.unit);
    let cyclic = g.cyclic();
    let min_in = s.num(HUB, "min_fan_in") as usize;
    let min_out = s.num(HUB, "min_fan_out") as usize;
    for (k, &n) in g.nodes.iter().enumerate() {
        let info = &cx.unit.types[n];
        if info.file != cx.file {
            continue;
        }
        let t = info.decl;
        if cyclic.contains(&k) {
            s.emit(
                CYCLIC,
                t.name.span,
                format!("Type '{}' is part of a dependency cycle.", t.name.name),
            );
        }
        let (fan_in, fan_out) = (g.fan_in(k), g.out[k].len());
        if fan_in >= min_in && fan_out >= min_out {
            s.emit(
                HUB,
                t.name.span,
                format!("Type '{}' has fan-in {fan_in} and fan-out {fan_out}.", t.name.name),
            );
        }
    }
}
