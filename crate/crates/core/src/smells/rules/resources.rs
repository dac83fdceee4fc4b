use std::collections::HashSet;

use super::util::{scopes, simple, Code};
use crate::java::ast::*;
use crate::java::visit::{self, Visitor};
use crate::java::{LiteralKind, Span};
use crate::smells::engine::{Ctx, Sink};

const CLOSE: &str = "close-resource";
const LOOPS: &str = "avoid-instantiating-objects-in-loops";

const RESOURCE_SUFFIXES: &[&str] = &["InputStream", "OutputStream", "Reader", "Writer", "Channel", "Socket"];
const RESOURCE_NAMES: &[&str] = &[
    "Scanner",
    "Formatter",
    "PrintStream",
    "Connection",
    "Statement",
    "PreparedStatement",
    "CallableStatement",
    "ResultSet",
    "RandomAccessFile",
    "ZipFile",
    "JarFile",
];
/// Closeable types that hold no operating-system resource.
const IN_MEMORY: &[&str] = &[
    "ByteArrayOutputStream",
    "ByteArrayInputStream",
    "StringWriter",
    "CharArrayWriter",
];

pub(crate) fn is_resource_type(name: &str) -> bool {
    let n = simple(name);
    !IN_MEMORY.contains(&n) && (RESOURCE_NAMES.contains(&n) || RESOURCE_SUFFIXES.iter().any(|s| n.ends_with(s)))
}

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    if s.on(CLOSE) {
        for scope in scopes(cx.ast) {
            for m in scope.callables() {
                if let Some(b) = &m.body {
                    close_resource(b, s);
                }
            }
        }
    }
    if s.on(LOOPS) {
        let mut v = Loops {
            depth: 0,
            exempt: HashSet::new(),
            sink: s,
        };
        visit::walk_unit(&mut v, &cx.ast.unit);
    }
}

fn creates(e: &Expr) -> bool {
    matches!(e.unparen().kind, ExprKind::New { .. } | ExprKind::MethodCall { .. })
}

fn is_null(e: &Expr) -> bool {
    matches!(
        &e.unparen().kind,
        ExprKind::Literal(Literal {
            kind: LiteralKind::Null,
            ..
        })
    )
}

fn close_resource(body: &Block, s: &mut Sink) {
    let code = Code::of_block(body);
    // Deep walk so that closes inside lambdas and anonymous classes count.
    let mut all = AllExprs::default();
    all.visit_block(body);
    for st in &code.stmts {
        let StmtKind::LocalVar(d) = &st.kind else { continue };
        if !is_resource_type(&d.ty.name) || d.ty.dims > 0 {
            continue;
        }
        for v in &d.vars {
            let name = v.name.name.as_str();
            let created = match &v.init {
                Some(init) if !is_null(init) => creates(init),
                _ => all.exprs.iter().any(|e| match &e.kind {
                    ExprKind::Assign {
                        op: None,
                        target,
                        value,
                        ..
                    } => target.as_name() == Some(name) && creates(value),
                    _ => false,
                }),
            };
            if created && !handed_over(name, &all.exprs, &all.returned, &all.resources) {
                s.emit(
                    CLOSE,
                    v.name.span,
                    format!(
                        "Ensure that resources like this {} object are closed after use.",
                        d.ty.simple_name()
                    ),
                );
            }
        }
    }
}

fn handed_over(name: &str, exprs: &[&Expr], returned: &[&Expr], resources: &[&Expr]) -> bool {
    let is_var = |e: &Expr| e.unparen().as_name() == Some(name);
    if returned.iter().any(|e| is_var(e)) || resources.iter().any(|e| is_var(e)) {
        return true;
    }
    exprs.iter().any(|e| match &e.kind {
        ExprKind::MethodCall {
            target: Some(t),
            name: m,
            ..
        } => m.name == "close" && is_var(t),
        ExprKind::Assign {
            target,
            value,
            op: None,
            ..
        } => {
            is_var(value)
                && match &target.kind {
                    ExprKind::FieldAccess { .. } => true,
                    ExprKind::Name(n) => n != name,
                    _ => false,
                }
        }
        ExprKind::New { ty, args, .. } => is_resource_type(&ty.name) && args.iter().any(is_var),
        _ => false,
    })
}

#[derive(Default)]
struct AllExprs<'a> {
    exprs: Vec<&'a Expr>,
    returned: Vec<&'a Expr>,
    resources: Vec<&'a Expr>,
}

impl<'a> Visitor<'a> for AllExprs<'a> {
    fn visit_expr(&mut self, e: &'a Expr) {
        self.exprs.push(e);
        visit::walk_expr(self, e);
    }
    fn visit_stmt(&mut self, s: &'a Stmt) {
        match &s.kind {
            StmtKind::Return(Some(e)) => self.returned.push(e),
            StmtKind::Try { resources, .. } => self.resources.extend(resources.iter().map(|r| &r.init)),
            _ => {}
        }
        visit::walk_stmt(self, s);
    }
}

struct Loops<'a, 's> {
    depth: u32,
    exempt: HashSet<Span>,
    sink: &'a mut Sink<'s>,
}

impl Loops<'_, '_> {
    fn looped<F: FnOnce(&mut Self)>(&mut self, f: F) {
        self.depth += 1;
        f(self);
        self.depth -= 1;
    }

    fn reset<F: FnOnce(&mut Self)>(&mut self, f: F) {
        let saved = self.depth;
        self.depth = 0;
        f(self);
        self.depth = saved;
    }
}

impl<'ast> Visitor<'ast> for Loops<'_, '_> {
    fn visit_class_body(&mut self, b: &'ast ClassBody) {
        self.reset(|me| visit::walk_class_body(me, b));
    }

    fn visit_stmt(&mut self, st: &'ast Stmt) {
        match &st.kind {
            StmtKind::While { cond, body } => self.looped(|me| {
                me.visit_expr(cond);
                me.visit_stmt(body);
            }),
            StmtKind::DoWhile { body, cond, .. } => self.looped(|me| {
                me.visit_stmt(body);
                me.visit_expr(cond);
            }),
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => {
                for i in init {
                    self.visit_stmt(i);
                }
                self.looped(|me| {
                    if let Some(c) = cond {
                        me.visit_expr(c);
                    }
                    for u in update {
                        me.visit_expr(u);
                    }
                    me.visit_stmt(body);
                });
            }
            StmtKind::ForEach { var, iterable, body } => {
                self.visit_local_var(var);
                self.visit_expr(iterable);
                self.looped(|me| me.visit_stmt(body));
            }
            StmtKind::Throw(e) | StmtKind::Return(Some(e)) => {
                self.exempt.insert(e.unparen().span);
                visit::walk_stmt(self, st);
            }
            _ => visit::walk_stmt(self, st),
        }
    }

    fn visit_expr(&mut self, e: &'ast Expr) {
        match &e.kind {
            ExprKind::Lambda { .. } => {
                self.reset(|me| visit::walk_expr(me, e));
                return;
            }
            ExprKind::Assign { target, value, .. } if matches!(target.kind, ExprKind::ArrayAccess { .. }) => {
                self.exempt.insert(value.unparen().span);
            }
            ExprKind::New { .. } if self.depth > 0 && !self.exempt.contains(&e.span) => {
                self.sink
                    .emit(LOOPS, e.span, "Avoid instantiating new objects inside loops.");
            }
            _ => {}
        }
        visit::walk_expr(self, e);
    }
}
