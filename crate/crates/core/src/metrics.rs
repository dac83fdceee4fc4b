//! Method and class metrics.
//!
//! Cyclomatic complexity is 1 plus one per `if`, loop (`for`, enhanced `for`,
//! `while`, `do`), `case` label, `catch`, `?:`, `&&` and `||`.
//!
//! Cognitive complexity uses these increments:
//!
//! | construct                                   | increment          |
//! |---------------------------------------------|--------------------|
//! | `if`, `?:`, `switch`, loops, `catch`        | 1 + nesting level  |
//! | `else if`, `else`                           | 1                  |
//! | labelled `break` / `continue`               | 1                  |
//! | each run of identical `&&`/`||` operators    | 1                  |
//!
//! The nesting level rises inside the bodies of `if`/`else`, `?:`, `switch`,
//! loops, `catch` and lambdas. Bodies of local and anonymous classes are
//! measured separately and contribute nothing.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ComplexityTriple;
use crate::java::ast::*;
use crate::java::visit::{self, Visitor};
use crate::java::Ast;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodMetrics {
    pub name: String,
    pub loc: u32,
    pub cyclomatic: u32,
    pub cognitive: u32,
    pub parameter_count: u32,
    pub statement_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("method `{0}` has no body")]
pub struct AbstractBodyError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub name: String,
    pub method_count: u32,
    pub field_count: u32,
    pub public_member_count: u32,
    pub fan_out: u32,
    pub depth_of_inheritance_hint: u32,
    pub loc: u32,
}

pub fn method_metrics(m: &MethodDecl) -> Result<MethodMetrics, AbstractBodyError> {
    let body = m.body.as_ref().ok_or_else(|| AbstractBodyError(m.name.name.clone()))?;
    Ok(MethodMetrics {
        name: m.name.name.clone(),
        loc: body.close.end_line - body.open.start_line + 1,
        cyclomatic: cyclomatic_of_block(body),
        cognitive: cognitive_of_block(body),
        parameter_count: m.params.len() as u32,
        statement_count: statement_count(body),
    })
}

/// Visitor base that skips class bodies nested inside code.
struct Counter {
    decisions: u32,
    statements: u32,
}

impl<'ast> Visitor<'ast> for Counter {
    fn visit_class_body(&mut self, _b: &'ast ClassBody) {}
    fn visit_type_decl(&mut self, _t: &'ast TypeDecl) {}

    fn visit_stmt(&mut self, s: &'ast Stmt) {
        if !matches!(s.kind, StmtKind::Block(_)) {
            self.statements += 1;
        }
        match &s.kind {
            StmtKind::If { .. }
            | StmtKind::While { .. }
            | StmtKind::DoWhile { .. }
            | StmtKind::For { .. }
            | StmtKind::ForEach { .. } => self.decisions += 1,
            StmtKind::Switch { arms, .. } => {
                self.decisions += arms.iter().filter(|a| matches!(a.label, CaseLabel::Case(_))).count() as u32;
            }
            StmtKind::Try { catches, .. } => self.decisions += catches.len() as u32,
            _ => {}
        }
        visit::walk_stmt(self, s);
    }

    fn visit_expr(&mut self, e: &'ast Expr) {
        match &e.kind {
            ExprKind::Conditional { .. } => self.decisions += 1,
            ExprKind::Binary {
                op: BinaryOp::And | BinaryOp::Or,
                ..
            } => self.decisions += 1,
            _ => {}
        }
        visit::walk_expr(self, e);
    }
}

fn count(body: &Block) -> Counter {
    let mut c = Counter {
        decisions: 0,
        statements: 0,
    };
    c.visit_block(body);
    c
}

pub fn cyclomatic_of_block(body: &Block) -> u32 {
    1 + count(body).decisions
}

fn statement_count(body: &Block) -> u32 {
    count(body).statements
}

struct Cognitive {
    total: u32,
    nesting: u32,
}

impl<'ast> Cognitive {
    fn nested(&mut self, f: impl FnOnce(&mut Self)) {
        self.nesting += 1;
        f(self);
        self.nesting -= 1;
    }

    fn structural(&mut self) {
        self.total += 1 + self.nesting;
    }

    fn logical_ops<'a>(e: &'a Expr, ops: &mut Vec<BinaryOp>, leaves: &mut Vec<&'a Expr>) {
        match &e.kind {
            ExprKind::Binary {
                op: op @ (BinaryOp::And | BinaryOp::Or),
                lhs,
                rhs,
            } => {
                Self::logical_ops(lhs, ops, leaves);
                ops.push(*op);
                Self::logical_ops(rhs, ops, leaves);
            }
            ExprKind::Paren(inner)
                if matches!(
                    inner.unparen().kind,
                    ExprKind::Binary {
                        op: BinaryOp::And | BinaryOp::Or,
                        ..
                    }
                ) =>
            {
                Self::logical_ops(inner, ops, leaves)
            }
            _ => leaves.push(e),
        }
    }

    fn if_chain(&mut self, s: &'ast Stmt) {
        // Called for the `if` of an `else if`; the outer `if` already paid
        // the structural increment.
        if let StmtKind::If {
            cond, then, otherwise, ..
        } = &s.kind
        {
            self.visit_expr(cond);
            self.nested(|c| c.visit_stmt(then));
            if let Some(o) = otherwise {
                self.total += 1;
                if matches!(o.kind, StmtKind::If { .. }) {
                    self.if_chain(o);
                } else {
                    self.nested(|c| c.visit_stmt(o));
                }
            }
        }
    }
}

impl<'ast> Visitor<'ast> for Cognitive {
    fn visit_class_body(&mut self, _b: &'ast ClassBody) {}
    fn visit_type_decl(&mut self, _t: &'ast TypeDecl) {}

    fn visit_stmt(&mut self, s: &'ast Stmt) {
        match &s.kind {
            StmtKind::If { .. } => {
                self.structural();
                self.if_chain(s);
            }
            StmtKind::While { cond, body } => {
                self.structural();
                self.visit_expr(cond);
                self.nested(|c| c.visit_stmt(body));
            }
            StmtKind::DoWhile { body, cond, .. } => {
                self.structural();
                self.nested(|c| c.visit_stmt(body));
                self.visit_expr(cond);
            }
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => {
                self.structural();
                for i in init {
                    self.visit_stmt(i);
                }
                if let Some(c) = cond {
                    self.visit_expr(c);
                }
                for u in update {
                    self.visit_expr(u);
                }
                self.nested(|c| c.visit_stmt(body));
            }
            StmtKind::ForEach { iterable, body, .. } => {
                self.structural();
                self.visit_expr(iterable);
                self.nested(|c| c.visit_stmt(body));
            }
            StmtKind::Switch { selector, arms, .. } => {
                self.structural();
                self.visit_expr(selector);
                self.nested(|c| {
                    for arm in arms {
                        for st in &arm.body {
                            c.visit_stmt(st);
                        }
                    }
                });
            }
            StmtKind::Try {
                resources,
                body,
                catches,
                finally,
                ..
            } => {
                for r in resources {
                    self.visit_expr(&r.init);
                }
                self.visit_block(body);
                for catch in catches {
                    self.structural();
                    self.nested(|c| c.visit_block(&catch.body));
                }
                if let Some(f) = finally {
                    self.visit_block(f);
                }
            }
            StmtKind::Break(Some(_)) | StmtKind::Continue(Some(_)) => self.total += 1,
            _ => visit::walk_stmt(self, s),
        }
    }

    fn visit_expr(&mut self, e: &'ast Expr) {
        match &e.kind {
            ExprKind::Conditional { cond, then, otherwise } => {
                self.structural();
                self.visit_expr(cond);
                self.nested(|c| {
                    c.visit_expr(then);
                    c.visit_expr(otherwise);
                });
            }
            ExprKind::Binary {
                op: BinaryOp::And | BinaryOp::Or,
                ..
            } => {
                let mut ops = Vec::new();
                let mut leaves = Vec::new();
                Self::logical_ops(e, &mut ops, &mut leaves);
                let runs = ops
                    .iter()
                    .enumerate()
                    .filter(|(i, op)| *i == 0 || ops[i - 1] != **op)
                    .count();
                self.total += runs as u32;
                for leaf in leaves {
                    self.visit_expr(leaf);
                }
            }
            ExprKind::Lambda { .. } => self.nested(|c| visit::walk_expr(c, e)),
            _ => visit::walk_expr(self, e),
        }
    }
}

pub fn cognitive_of_block(body: &Block) -> u32 {
    let mut c = Cognitive { total: 0, nesting: 0 };
    c.visit_block(body);
    c.total
}

fn collect_type_names(t: &TypeRef, out: &mut BTreeSet<String>) {
    let mut names = Vec::new();
    t.all_names(&mut names);
    out.extend(names);
}

/// Collects every type name referenced inside a type declaration: field,
/// parameter, return, local, `throws`, `catch`, generic argument, `new`,
/// cast, `instanceof`, class-literal and supertype positions.
pub struct TypeNameCollector {
    pub names: BTreeSet<String>,
}

impl<'ast> Visitor<'ast> for TypeNameCollector {
    fn visit_type_ref(&mut self, t: &'ast TypeRef) {
        collect_type_names(t, &mut self.names);
    }
    fn visit_type_decl(&mut self, t: &'ast TypeDecl) {
        visit::walk_type_decl(self, t);
    }
}

/// Distinct non-primitive type names referenced by `t`, excluding its own
/// name and its type parameters.
pub fn referenced_types(t: &TypeDecl) -> BTreeSet<String> {
    let mut c = TypeNameCollector { names: BTreeSet::new() };
    c.visit_type_decl(t);
    let own: HashSet<&str> = std::iter::once(t.name.name.as_str())
        .chain(t.type_params.iter().map(|p| p.name.name.as_str()))
        .collect();
    let method_tps: HashSet<String> = t
        .callables()
        .flat_map(|m| m.type_params.iter().map(|p| p.name.name.clone()))
        .collect();
    c.names
        .into_iter()
        .filter(|n| {
            !own.contains(n.as_str()) && !method_tps.contains(n) && !PRIMITIVES.contains(&n.as_str()) && n != "var"
        })
        .collect()
}

/// Number of `extends` hops from `name` that land on a declared type.
/// `parents` comes from [`parent_map`]. Cycles terminate.
pub fn inheritance_depth(name: &str, parents: &HashMap<String, String>) -> u32 {
    let mut depth = 0;
    let mut seen = HashSet::new();
    let mut cur = name.to_string();
    seen.insert(cur.clone());
    while let Some(p) = parents.get(&cur) {
        if p.is_empty() || !parents.contains_key(p) || !seen.insert(p.clone()) {
            break;
        }
        depth += 1;
        cur = p.clone();
    }
    depth
}

/// Simple name -> parent simple name for every type declared in `unit`,
/// roots mapped to an empty string so they count as declared.
pub fn parent_map<'a>(types: impl IntoIterator<Item = &'a TypeDecl>) -> HashMap<String, String> {
    let mut map = HashMap::new();
    fn add(t: &TypeDecl, map: &mut HashMap<String, String>) {
        let parent = t
            .extends
            .first()
            .map(|e| simple(&e.name).to_string())
            .unwrap_or_default();
        map.insert(t.name.name.clone(), parent);
        for n in t.nested_types() {
            add(n, map);
        }
    }
    for t in types {
        add(t, &mut map);
    }
    map
}

fn simple(name: &str) -> &str {
    name.rsplit('.').next().unwrap_or(name)
}

pub fn class_metrics(t: &TypeDecl, unit: &CompilationUnit) -> ClassMetrics {
    let parents = parent_map(&unit.types);
    let implicit_public = t.is_interface();
    let methods: Vec<&MethodDecl> = t.methods().collect();
    let mut field_count = 0;
    let mut public = 0;
    for f in t.fields() {
        field_count += f.vars.len() as u32;
        if implicit_public || f.modifiers.has(Modifier::Public) {
            public += f.vars.len() as u32;
        }
    }
    public += methods
        .iter()
        .filter(|m| m.modifiers.has(Modifier::Public) || (implicit_public && !m.modifiers.has(Modifier::Private)))
        .count() as u32;
    ClassMetrics {
        name: t.name.name.clone(),
        method_count: methods.len() as u32,
        field_count,
        public_member_count: public,
        fan_out: referenced_types(t).len() as u32,
        depth_of_inheritance_hint: inheritance_depth(&t.name.name, &parents),
        loc: t.span.end_line - t.span.start_line + 1,
    }
}

/// All methods and constructors with bodies in `ast`, including those of
/// nested, local and anonymous classes.
pub fn all_bodies(ast: &Ast) -> Vec<&MethodDecl> {
    fn from_body<'a>(b: &'a ClassBody, out: &mut Vec<&'a MethodDecl>) {
        for m in &b.members {
            match m {
                Member::Method(md) => {
                    out.push(md);
                    if let Some(body) = &md.body {
                        from_block(body, out);
                    }
                }
                Member::Type(t) => from_type(t, out),
                Member::Initializer(i) => from_block(&i.body, out),
                Member::Field(f) => {
                    for v in &f.vars {
                        if let Some(e) = &v.init {
                            from_expr(e, out);
                        }
                    }
                }
            }
        }
    }
    fn from_type<'a>(t: &'a TypeDecl, out: &mut Vec<&'a MethodDecl>) {
        for c in &t.enum_constants {
            if let Some(b) = &c.body {
                from_body(b, out);
            }
        }
        from_body(&t.body, out);
    }
    fn from_block<'a>(b: &'a Block, out: &mut Vec<&'a MethodDecl>) {
        for s in &b.stmts {
            from_stmt(s, out);
        }
    }
    fn from_stmt<'a>(s: &'a Stmt, out: &mut Vec<&'a MethodDecl>) {
        if let StmtKind::LocalClass(t) = &s.kind {
            from_type(t, out);
            return;
        }
        let mut stmts = Vec::new();
        let mut exprs = Vec::new();
        visit::for_each_child_of_stmt(s, &mut |e| exprs.push(e), &mut |st| stmts.push(st));
        for st in stmts {
            from_stmt(st, out);
        }
        for e in exprs {
            from_expr(e, out);
        }
    }
    fn from_expr<'a>(e: &'a Expr, out: &mut Vec<&'a MethodDecl>) {
        if let ExprKind::New { body: Some(b), .. } = &e.kind {
            from_body(b, out);
        }
        let mut exprs = Vec::new();
        let mut blocks = Vec::new();
        visit::for_each_child_of_expr(e, &mut |c| exprs.push(c), &mut |b| blocks.push(b));
        for c in exprs {
            from_expr(c, out);
        }
        for b in blocks {
            from_block(b, out);
        }
    }
    let mut out = Vec::new();
    for t in &ast.unit.types {
        from_type(t, &mut out);
    }
    out
}

/// Whole-file complexity: maximum method cyclomatic and cognitive values
/// (1 and 0 for a file without method bodies) and the count of non-blank lines.
pub fn file_complexity(ast: &Ast) -> ComplexityTriple {
    let mut cyclomatic = 1;
    let mut cognitive = 0;
    for m in all_bodies(ast) {
        if let Ok(mm) = method_metrics(m) {
            cyclomatic = cyclomatic.max(mm.cyclomatic);
            cognitive = cognitive.max(mm.cognitive);
        }
    }
    let loc = ast.source.lines().filter(|(_, l)| !l.trim().is_empty()).count() as u32;
    ComplexityTriple {
        cyclomatic,
        cognitive,
        loc: loc.max(1),
    }
}
