//! Depth-first AST traversal. Override the `visit_*` hooks you need and call
//! the matching `walk_*` function to keep descending.

use super::ast::*;

pub trait Visitor<'ast> {
    fn visit_type_decl(&mut self, t: &'ast TypeDecl) {
        walk_type_decl(self, t);
    }
    fn visit_class_body(&mut self, b: &'ast ClassBody) {
        walk_class_body(self, b);
    }
    fn visit_field(&mut self, f: &'ast FieldDecl) {
        walk_field(self, f);
    }
    fn visit_method(&mut self, m: &'ast MethodDecl) {
        walk_method(self, m);
    }
    fn visit_block(&mut self, b: &'ast Block) {
        walk_block(self, b);
    }
    fn visit_stmt(&mut self, s: &'ast Stmt) {
        walk_stmt(self, s);
    }
    fn visit_expr(&mut self, e: &'ast Expr) {
        walk_expr(self, e);
    }
    fn visit_type_ref(&mut self, _t: &'ast TypeRef) {}
    fn visit_local_var(&mut self, d: &'ast LocalVarDecl) {
        walk_local_var(self, d);
    }
}

pub fn walk_unit<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, unit: &'ast CompilationUnit) {
    for t in &unit.types {
        v.visit_type_decl(t);
    }
}

pub fn walk_type_decl<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, t: &'ast TypeDecl) {
    for p in &t.type_params {
        for b in &p.bounds {
            v.visit_type_ref(b);
        }
    }
    for s in t.extends.iter().chain(&t.implements) {
        v.visit_type_ref(s);
    }
    for c in &t.enum_constants {
        for a in &c.args {
            v.visit_expr(a);
        }
        if let Some(body) = &c.body {
            v.visit_class_body(body);
        }
    }
    v.visit_class_body(&t.body);
}

pub fn walk_class_body<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, b: &'ast ClassBody) {
    for m in &b.members {
        match m {
            Member::Field(f) => v.visit_field(f),
            Member::Method(m) => v.visit_method(m),
            Member::Initializer(i) => v.visit_block(&i.body),
            Member::Type(t) => v.visit_type_decl(t),
        }
    }
}

pub fn walk_field<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, f: &'ast FieldDecl) {
    v.visit_type_ref(&f.ty);
    for d in &f.vars {
        if let Some(init) = &d.init {
            v.visit_expr(init);
        }
    }
}

pub fn walk_method<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, m: &'ast MethodDecl) {
    if let Some(rt) = &m.return_type {
        v.visit_type_ref(rt);
    }
    for p in &m.params {
        v.visit_type_ref(&p.ty);
    }
    for t in &m.throws {
        v.visit_type_ref(t);
    }
    if let Some(body) = &m.body {
        v.visit_block(body);
    }
}

pub fn walk_block<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, b: &'ast Block) {
    for s in &b.stmts {
        v.visit_stmt(s);
    }
}

pub fn walk_local_var<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, d: &'ast LocalVarDecl) {
    v.visit_type_ref(&d.ty);
    for var in &d.vars {
        if let Some(init) = &var.init {
            v.visit_expr(init);
        }
    }
}

pub fn walk_stmt<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, s: &'ast Stmt) {
    match &s.kind {
        StmtKind::Block(b) => v.visit_block(b),
        StmtKind::LocalVar(d) => v.visit_local_var(d),
        StmtKind::LocalClass(t) => v.visit_type_decl(t),
        StmtKind::Expr(e) | StmtKind::Throw(e) => v.visit_expr(e),
        StmtKind::If {
            cond, then, otherwise, ..
        } => {
            v.visit_expr(cond);
            v.visit_stmt(then);
            if let Some(o) = otherwise {
                v.visit_stmt(o);
            }
        }
        StmtKind::While { cond, body } => {
            v.visit_expr(cond);
            v.visit_stmt(body);
        }
        StmtKind::DoWhile { body, cond, .. } => {
            v.visit_stmt(body);
            v.visit_expr(cond);
        }
        StmtKind::For {
            init,
            cond,
            update,
            body,
        } => {
            for i in init {
                v.visit_stmt(i);
            }
            if let Some(c) = cond {
                v.visit_expr(c);
            }
            for u in update {
                v.visit_expr(u);
            }
            v.visit_stmt(body);
        }
        StmtKind::ForEach { var, iterable, body } => {
            v.visit_local_var(var);
            v.visit_expr(iterable);
            v.visit_stmt(body);
        }
        StmtKind::Switch { selector, arms, .. } => {
            v.visit_expr(selector);
            for arm in arms {
                if let CaseLabel::Case(es) = &arm.label {
                    for e in es {
                        v.visit_expr(e);
                    }
                }
                for st in &arm.body {
                    v.visit_stmt(st);
                }
            }
        }
        StmtKind::Try {
            resources,
            body,
            catches,
            finally,
            ..
        } => {
            for r in resources {
                if let Some((_, ty, _)) = &r.decl {
                    v.visit_type_ref(ty);
                }
                v.visit_expr(&r.init);
            }
            v.visit_block(body);
            for c in catches {
                v.visit_type_ref(&c.param.ty);
                for a in &c.alternatives {
                    v.visit_type_ref(a);
                }
                v.visit_block(&c.body);
            }
            if let Some(f) = finally {
                v.visit_block(f);
            }
        }
        StmtKind::Return(e) => {
            if let Some(e) = e {
                v.visit_expr(e);
            }
        }
        StmtKind::Labeled { body, .. } => v.visit_stmt(body),
        StmtKind::Synchronized { lock, body } => {
            v.visit_expr(lock);
            v.visit_block(body);
        }
        StmtKind::Assert { cond, message } => {
            v.visit_expr(cond);
            if let Some(m) = message {
                v.visit_expr(m);
            }
        }
        StmtKind::Break(_) | StmtKind::Continue(_) | StmtKind::Empty => {}
    }
}

pub fn walk_expr<'ast, V: Visitor<'ast> + ?Sized>(v: &mut V, e: &'ast Expr) {
    match &e.kind {
        ExprKind::Literal(_) | ExprKind::Name(_) | ExprKind::This | ExprKind::Super => {}
        ExprKind::FieldAccess { target, .. } => v.visit_expr(target),
        ExprKind::MethodCall { target, args, .. } => {
            if let Some(t) = target {
                v.visit_expr(t);
            }
            for a in args {
                v.visit_expr(a);
            }
        }
        ExprKind::New {
            outer, ty, args, body, ..
        } => {
            if let Some(o) = outer {
                v.visit_expr(o);
            }
            v.visit_type_ref(ty);
            for a in args {
                v.visit_expr(a);
            }
            if let Some(b) = body {
                v.visit_class_body(b);
            }
        }
        ExprKind::NewArray { ty, dims, init } => {
            v.visit_type_ref(ty);
            for d in dims.iter().flatten() {
                v.visit_expr(d);
            }
            if let Some(i) = init {
                v.visit_expr(i);
            }
        }
        ExprKind::ArrayInit(items) => {
            for i in items {
                v.visit_expr(i);
            }
        }
        ExprKind::ArrayAccess { array, index } => {
            v.visit_expr(array);
            v.visit_expr(index);
        }
        ExprKind::Unary { operand, .. } => v.visit_expr(operand),
        ExprKind::Binary { lhs, rhs, .. } => {
            v.visit_expr(lhs);
            v.visit_expr(rhs);
        }
        ExprKind::Assign { target, value, .. } => {
            v.visit_expr(target);
            v.visit_expr(value);
        }
        ExprKind::Conditional { cond, then, otherwise } => {
            v.visit_expr(cond);
            v.visit_expr(then);
            v.visit_expr(otherwise);
        }
        ExprKind::Cast { ty, expr } => {
            v.visit_type_ref(ty);
            v.visit_expr(expr);
        }
        ExprKind::InstanceOf { expr, ty, .. } => {
            v.visit_expr(expr);
            v.visit_type_ref(ty);
        }
        ExprKind::Lambda { params, body } => {
            for p in params {
                if let Some(t) = &p.ty {
                    v.visit_type_ref(t);
                }
            }
            match body {
                LambdaBody::Expr(e) => v.visit_expr(e),
                LambdaBody::Block(b) => v.visit_block(b),
            }
        }
        ExprKind::MethodRef { target, .. } => v.visit_expr(target),
        ExprKind::TypeExpr(t) | ExprKind::ClassLit(t) => v.visit_type_ref(t),
        ExprKind::Paren(inner) => v.visit_expr(inner),
    }
}

/// Calls `on_expr` for each direct child expression and `on_stmt` for each
/// direct child statement of `s`. Blocks are flattened into their statements.
pub fn for_each_child_of_stmt<'a>(s: &'a Stmt, on_expr: &mut dyn FnMut(&'a Expr), on_stmt: &mut dyn FnMut(&'a Stmt)) {
    match &s.kind {
        StmtKind::Block(b) => b.stmts.iter().for_each(&mut *on_stmt),
        StmtKind::LocalVar(d) => d.vars.iter().filter_map(|v| v.init.as_ref()).for_each(&mut *on_expr),
        StmtKind::LocalClass(_) | StmtKind::Break(_) | StmtKind::Continue(_) | StmtKind::Empty => {}
        StmtKind::Expr(e) | StmtKind::Throw(e) => on_expr(e),
        StmtKind::If {
            cond, then, otherwise, ..
        } => {
            on_expr(cond);
            on_stmt(then);
            if let Some(o) = otherwise {
                on_stmt(o);
            }
        }
        StmtKind::While { cond, body } => {
            on_expr(cond);
            on_stmt(body);
        }
        StmtKind::DoWhile { body, cond, .. } => {
            on_stmt(body);
            on_expr(cond);
        }
        StmtKind::For {
            init,
            cond,
            update,
            body,
        } => {
            init.iter().for_each(&mut *on_stmt);
            if let Some(c) = cond {
                on_expr(c);
            }
            update.iter().for_each(&mut *on_expr);
            on_stmt(body);
        }
        StmtKind::ForEach { iterable, body, .. } => {
            on_expr(iterable);
            on_stmt(body);
        }
        StmtKind::Switch { selector, arms, .. } => {
            on_expr(selector);
            for arm in arms {
                if let CaseLabel::Case(es) = &arm.label {
                    es.iter().for_each(&mut *on_expr);
                }
                arm.body.iter().for_each(&mut *on_stmt);
            }
        }
        StmtKind::Try {
            resources,
            body,
            catches,
            finally,
            ..
        } => {
            resources.iter().for_each(|r| on_expr(&r.init));
            body.stmts.iter().for_each(&mut *on_stmt);
            for c in catches {
                c.body.stmts.iter().for_each(&mut *on_stmt);
            }
            if let Some(f) = finally {
                f.stmts.iter().for_each(&mut *on_stmt);
            }
        }
        StmtKind::Return(e) => {
            if let Some(e) = e {
                on_expr(e);
            }
        }
        StmtKind::Labeled { body, .. } => on_stmt(body),
        StmtKind::Synchronized { lock, body } => {
            on_expr(lock);
            body.stmts.iter().for_each(&mut *on_stmt);
        }
        StmtKind::Assert { cond, message } => {
            on_expr(cond);
            if let Some(m) = message {
                on_expr(m);
            }
        }
    }
}

/// Direct child expressions of `e`; lambda block bodies go to `on_block`.
/// Anonymous class bodies are not descended into.
pub fn for_each_child_of_expr<'a>(e: &'a Expr, on_expr: &mut dyn FnMut(&'a Expr), on_block: &mut dyn FnMut(&'a Block)) {
    match &e.kind {
        ExprKind::Literal(_)
        | ExprKind::Name(_)
        | ExprKind::This
        | ExprKind::Super
        | ExprKind::TypeExpr(_)
        | ExprKind::ClassLit(_) => {}
        ExprKind::FieldAccess { target, .. } | ExprKind::MethodRef { target, .. } => on_expr(target),
        ExprKind::MethodCall { target, args, .. } => {
            if let Some(t) = target {
                on_expr(t);
            }
            args.iter().for_each(&mut *on_expr);
        }
        ExprKind::New { outer, args, .. } => {
            if let Some(o) = outer {
                on_expr(o);
            }
            args.iter().for_each(&mut *on_expr);
        }
        ExprKind::NewArray { dims, init, .. } => {
            dims.iter().flatten().for_each(&mut *on_expr);
            if let Some(i) = init {
                on_expr(i);
            }
        }
        ExprKind::ArrayInit(items) => items.iter().for_each(&mut *on_expr),
        ExprKind::ArrayAccess { array, index } => {
            on_expr(array);
            on_expr(index);
        }
        ExprKind::Unary { operand, .. } => on_expr(operand),
        ExprKind::Binary { lhs, rhs, .. } => {
            on_expr(lhs);
            on_expr(rhs);
        }
        ExprKind::Assign { target, value, .. } => {
            on_expr(target);
            on_expr(value);
        }
        ExprKind::Conditional { cond, then, otherwise } => {
            on_expr(cond);
            on_expr(then);
            on_expr(otherwise);
        }
        ExprKind::Cast { expr, .. } | ExprKind::InstanceOf { expr, .. } | ExprKind::Paren(expr) => on_expr(expr),
        ExprKind::Lambda { body, .. } => match body {
            LambdaBody::Expr(e) => on_expr(e),
            LambdaBody::Block(b) => on_block(b),
        },
    }
}
