use std::collections::HashSet;

use crate::java::ast::*;
use crate::java::visit::{self, Visitor};
use crate::java::{Ast, CommentKind, Span, Token, TokenKind};

/// A class body together with its declaration, if it has one (anonymous
/// classes and enum constant bodies do not).
#[derive(Clone, Copy)]
pub(crate) struct Scope<'a> {
    pub decl: Option<&'a TypeDecl>,
    pub body: &'a ClassBody,
}

impl<'a> Scope<'a> {
    pub fn is_interface(&self) -> bool {
        self.decl.is_some_and(|d| d.is_interface())
    }

    pub fn fields(&self) -> impl Iterator<Item = &'a FieldDecl> {
        self.body.members.iter().filter_map(|m| match m {
            Member::Field(f) => Some(f),
            _ => None,
        })
    }

    pub fn callables(&self) -> impl Iterator<Item = &'a MethodDecl> {
        self.body.members.iter().filter_map(|m| match m {
            Member::Method(m) => Some(m),
            _ => None,
        })
    }

    /// Code directly owned by this scope: field initializers, bodies and
    /// initializer blocks, plus enum constant arguments. Nested classes are
    /// not included.
    pub fn code(&self) -> Code<'a> {
        let mut c = Code::default();
        if let Some(d) = self.decl {
            for k in &d.enum_constants {
                for a in &k.args {
                    c.visit_expr(a);
                }
            }
        }
        for m in &self.body.members {
            match m {
                Member::Field(f) => c.visit_field(f),
                Member::Method(m) => {
                    if let Some(b) = &m.body {
                        c.visit_block(b);
                    }
                }
                Member::Initializer(i) => c.visit_block(&i.body),
                Member::Type(_) => {}
            }
        }
        c
    }
}

/// Every class body in the file in source pre-order.
pub(crate) fn scopes(ast: &Ast) -> Vec<Scope<'_>> {
    struct Collect<'a> {
        out: Vec<Scope<'a>>,
    }
    impl<'a> Visitor<'a> for Collect<'a> {
        fn visit_type_decl(&mut self, t: &'a TypeDecl) {
            self.out.push(Scope {
                decl: Some(t),
                body: &t.body,
            });
            for k in &t.enum_constants {
                if let Some(b) = &k.body {
                    self.out.push(Scope { decl: None, body: b });
                }
            }
            visit::walk_type_decl(self, t);
        }
        fn visit_expr(&mut self, e: &'a Expr) {
            if let ExprKind::New { body: Some(b), .. } = &e.kind {
                self.out.push(Scope { decl: None, body: b });
            }
            visit::walk_expr(self, e);
        }
    }
    let mut c = Collect { out: Vec::new() };
    visit::walk_unit(&mut c, &ast.unit);
    c.out
}

pub(crate) fn named_types(ast: &Ast) -> Vec<&TypeDecl> {
    scopes(ast).into_iter().filter_map(|s| s.decl).collect()
}

/// Statements, expressions and local declarations reachable without
/// entering another class body. Lambda bodies are included.
#[derive(Default)]
pub(crate) struct Code<'a> {
    pub stmts: Vec<&'a Stmt>,
    pub exprs: Vec<&'a Expr>,
    pub locals: Vec<&'a LocalVarDecl>,
}

impl<'a> Visitor<'a> for Code<'a> {
    fn visit_type_decl(&mut self, _t: &'a TypeDecl) {}
    fn visit_class_body(&mut self, _b: &'a ClassBody) {}
    fn visit_stmt(&mut self, s: &'a Stmt) {
        self.stmts.push(s);
        visit::walk_stmt(self, s);
    }
    fn visit_expr(&mut self, e: &'a Expr) {
        self.exprs.push(e);
        visit::walk_expr(self, e);
    }
    fn visit_local_var(&mut self, d: &'a LocalVarDecl) {
        self.locals.push(d);
        visit::walk_local_var(self, d);
    }
}

impl<'a> Code<'a> {
    pub fn of_block(b: &'a Block) -> Self {
        let mut c = Self::default();
        c.visit_block(b);
        c
    }

    pub fn of_stmt(s: &'a Stmt) -> Self {
        let mut c = Self::default();
        c.visit_stmt(s);
        c
    }

    pub fn of_expr(e: &'a Expr) -> Self {
        let mut c = Self::default();
        c.visit_expr(e);
        c
    }

    /// Simple names read as plain identifiers.
    pub fn names(&self) -> HashSet<&'a str> {
        self.exprs.iter().filter_map(|e| e.as_name()).collect()
    }
}

/// Every statement list owned by `scope`: callable and initializer bodies,
/// lambda blocks, nested blocks, switch arms, and try/catch/finally bodies.
pub(crate) fn stmt_lists<'a>(scope: Scope<'a>, code: &Code<'a>) -> Vec<&'a [Stmt]> {
    let mut out: Vec<&'a [Stmt]> = Vec::new();
    for m in &scope.body.members {
        match m {
            Member::Method(m) => {
                if let Some(b) = &m.body {
                    out.push(&b.stmts);
                }
            }
            Member::Initializer(i) => out.push(&i.body.stmts),
            _ => {}
        }
    }
    for e in &code.exprs {
        if let ExprKind::Lambda {
            body: LambdaBody::Block(b),
            ..
        } = &e.kind
        {
            out.push(&b.stmts);
        }
    }
    for st in &code.stmts {
        match &st.kind {
            StmtKind::Block(b) => out.push(&b.stmts),
            StmtKind::Switch { arms, .. } => out.extend(arms.iter().map(|a| a.body.as_slice())),
            StmtKind::Try {
                body, catches, finally, ..
            } => {
                out.push(&body.stmts);
                out.extend(catches.iter().map(|c| c.body.stmts.as_slice()));
                if let Some(f) = finally {
                    out.push(&f.stmts);
                }
            }
            StmtKind::Synchronized { body, .. } => out.push(&body.stmts),
            _ => {}
        }
    }
    out
}

pub(crate) fn is_static_final(m: &Modifiers) -> bool {
    m.has(Modifier::Static) && m.has(Modifier::Final)
}

/// Fields of an interface are implicitly `public static final`.
pub(crate) fn is_constant_field(f: &FieldDecl, in_interface: bool) -> bool {
    in_interface || is_static_final(&f.modifiers)
}

pub(crate) fn is_main(m: &MethodDecl) -> bool {
    m.name.name == "main"
        && m.modifiers.has(Modifier::Static)
        && m.return_type.as_ref().is_some_and(|t| t.is_void())
        && m.params.len() == 1
}

pub(crate) fn simple(name: &str) -> &str {
    name.rsplit('.').next().unwrap_or(name)
}

/// Lossless token stream with positional lookups.
pub(crate) struct Toks<'a> {
    pub all: &'a [Token],
}

impl<'a> Toks<'a> {
    pub fn new(ast: &'a Ast) -> Self {
        Self { all: &ast.tokens }
    }

    /// Index of the token starting exactly at `(line, col)`.
    pub fn at(&self, line: u32, col: u32) -> Option<usize> {
        self.all
            .binary_search_by(|t| (t.span.start_line, t.span.start_col).cmp(&(line, col)))
            .ok()
    }

    pub fn prev_sig(&self, i: usize) -> Option<usize> {
        (0..i).rev().find(|&j| !self.all[j].kind.is_trivia())
    }

    pub fn next_sig(&self, i: usize) -> Option<usize> {
        (i + 1..self.all.len()).find(|&j| !self.all[j].kind.is_trivia())
    }

    /// Only whitespace precedes token `i` on its line.
    pub fn first_on_line(&self, i: usize) -> bool {
        for j in (0..i).rev() {
            let t = &self.all[j];
            match t.kind {
                TokenKind::Whitespace if t.lexeme.contains(['\n', '\r']) => return true,
                TokenKind::Whitespace => {}
                _ => return false,
            }
        }
        true
    }

    /// Only whitespace or comments follow token `i` on its line.
    pub fn last_on_line(&self, i: usize) -> bool {
        for t in &self.all[i + 1..] {
            match t.kind {
                TokenKind::Whitespace if t.lexeme.contains(['\n', '\r']) => return true,
                TokenKind::Whitespace | TokenKind::Comment(CommentKind::Block | CommentKind::Javadoc) => {}
                TokenKind::Comment(CommentKind::Line) => return true,
                _ => return false,
            }
        }
        true
    }
}

/// Name reads, member names and call names found anywhere below a node,
/// including nested and anonymous classes.
#[derive(Default)]
pub(crate) struct Uses<'a> {
    /// Plain identifiers, excluding the target of a plain `=` assignment.
    pub reads: Vec<(&'a str, Span)>,
    /// Names selected through `x.name` or `this.name`.
    pub members: Vec<&'a str>,
    /// Method call and method reference names.
    pub calls: Vec<(&'a str, Span)>,
}

impl<'a> Visitor<'a> for Uses<'a> {
    fn visit_expr(&mut self, e: &'a Expr) {
        match &e.kind {
            ExprKind::Name(n) => self.reads.push((n, e.span)),
            ExprKind::Assign {
                op: None,
                target,
                value,
            } => {
                match &target.kind {
                    ExprKind::Name(_) => {}
                    ExprKind::FieldAccess { target: t, .. } if matches!(t.kind, ExprKind::This) => {}
                    _ => self.visit_expr(target),
                }
                self.visit_expr(value);
                return;
            }
            ExprKind::FieldAccess { name, .. } => self.members.push(&name.name),
            ExprKind::MethodCall { name, .. } | ExprKind::MethodRef { name, .. } => {
                self.calls.push((&name.name, e.span))
            }
            _ => {}
        }
        visit::walk_expr(self, e);
    }
}

impl<'a> Uses<'a> {
    pub fn of_block(b: &'a Block) -> Self {
        let mut u = Self::default();
        u.visit_block(b);
        u
    }

    pub fn of_unit(unit: &'a CompilationUnit) -> Self {
        let mut u = Self::default();
        visit::walk_unit(&mut u, unit);
        u
    }

    pub fn reads_name(&self, name: &str) -> bool {
        self.reads.iter().any(|(n, _)| *n == name)
    }
}
