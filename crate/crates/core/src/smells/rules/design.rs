//! Cross-type facts shared by the design rules.

use std::collections::{BTreeSet, HashSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::util::{simple, Uses};
use crate::java::ast::*;
use crate::metrics::referenced_types;
use crate::smells::engine::UnitIndex;

/// Names a type mentions: type positions plus identifiers used as
/// expressions (static member access such as `Util.run()`).
pub(crate) fn mentioned_names(t: &TypeDecl) -> BTreeSet<String> {
    let mut names: BTreeSet<String> = referenced_types(t)
        .into_iter()
        .map(|n| simple(&n).to_string())
        .collect();
    let mut uses = Uses::default();
    crate::java::visit::Visitor::visit_type_decl(&mut uses, t);
    names.extend(uses.reads.iter().map(|(n, _)| n.to_string()));
    names
}

/// Dependency graph between the top-level types of a unit. Nested types
/// are folded into their top-level owner.
pub(crate) struct TypeGraph {
    /// Indices into `UnitIndex::types` of top-level types.
    pub nodes: Vec<usize>,
    pub out: Vec<BTreeSet<usize>>,
}

impl TypeGraph {
    pub fn new(unit: &UnitIndex) -> Self {
        let nodes: Vec<usize> = unit.top_level().map(|(i, _)| i).collect();
        let pos = |type_idx: usize| nodes.iter().position(|&n| n == unit.types[type_idx].top);
        let mut out = vec![BTreeSet::new(); nodes.len()];
        for (k, &n) in nodes.iter().enumerate() {
            for name in mentioned_names(unit.types[n].decl) {
                for &target in unit.by_name.get(name.as_str()).into_iter().flatten() {
                    if let Some(p) = pos(target) {
                        if p != k {
                            out[k].insert(p);
                        }
                    }
                }
            }
        }
        Self { nodes, out }
    }

    pub fn fan_in(&self, k: usize) -> usize {
        self.out.iter().filter(|o| o.contains(&k)).count()
    }

    /// Node positions that lie on a dependency cycle.
    pub fn cyclic(&self) -> HashSet<usize> {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let ids: Vec<_> = self.nodes.iter().map(|_| g.add_node(())).collect();
        for (k, outs) in self.out.iter().enumerate() {
            for &o in outs {
                g.add_edge(ids[k], ids[o], ());
            }
        }
        tarjan_scc(&g)
            .into_iter()
            .filter(|c| c.len() > 1)
            .flatten()
            .map(|n| n.index())
            .collect()
    }
}

/// Direct supertypes of `t` that are declared in the unit.
pub(crate) fn declared_supertypes<'a>(unit: &UnitIndex<'a>, t: &TypeDecl) -> Vec<&'a TypeDecl> {
    t.supertypes()
        .filter_map(|s| unit.lookup(&s.name).map(|i| i.decl))
        .collect()
}

/// Every supertype name reachable from `t` through the unit, including
/// undeclared ones named directly in a clause.
pub(crate) fn ancestors(unit: &UnitIndex, t: &TypeDecl) -> BTreeSet<String> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<String> = t.supertypes().map(|s| simple(&s.name).to_string()).collect();
    while let Some(n) = stack.pop() {
        if !seen.insert(n.clone()) {
            continue;
        }
        if let Some(info) = unit.lookup(&n) {
            stack.extend(info.decl.supertypes().map(|s| simple(&s.name).to_string()));
        }
    }
    seen
}

/// Direct subtypes of the type named `name` across the unit.
pub(crate) fn subtypes<'a>(unit: &UnitIndex<'a>, name: &str) -> Vec<&'a TypeDecl> {
    unit.types
        .iter()
        .map(|i| i.decl)
        .filter(|d| d.supertypes().any(|s| simple(&s.name) == name))
        .collect()
}

pub(crate) fn is_getter(m: &MethodDecl) -> bool {
    let n = &m.name.name;
    let named = (n.len() > 3 && n.starts_with("get")) || (n.len() > 2 && n.starts_with("is"));
    named
        && m.params.is_empty()
        && m.body
            .as_ref()
            .is_some_and(|b| b.stmts.len() == 1 && matches!(b.stmts[0].kind, StmtKind::Return(Some(_))))
}

pub(crate) fn is_setter(m: &MethodDecl) -> bool {
    let n = &m.name.name;
    n.len() > 3
        && n.starts_with("set")
        && m.params.len() == 1
        && m.body.as_ref().is_some_and(|b| {
            b.stmts.len() == 1
                && matches!(
                    &b.stmts[0].kind,
                    StmtKind::Expr(Expr {
                        kind: ExprKind::Assign { .. },
                        ..
                    })
                )
        })
}

pub(crate) fn is_accessor_name(name: &str) -> bool {
    name.starts_with("get") || name.starts_with("set") || name.starts_with("is")
}

pub(crate) fn field_count(t: &TypeDecl) -> usize {
    t.fields().map(|f| f.vars.len()).sum()
}
