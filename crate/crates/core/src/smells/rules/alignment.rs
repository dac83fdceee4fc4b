use std::collections::HashSet;

use super::util::{scopes, stmt_lists, Code, Scope, Toks};
use crate::java::ast::*;
use crate::java::visit::for_each_child_of_stmt;
use crate::java::{indent_width, Span, TokenKind};
use crate::smells::engine::{Ctx, Sink};

const INDENTATION: &str = "indentation";
const TAB: &str = "file-tab-character";
const NEED_BRACES: &str = "need-braces";
const USELESS_PARENS: &str = "useless-parentheses";
const LEFT_CURLY: &str = "left-curly";
const RIGHT_CURLY: &str = "right-curly";
const PAREN_PAD: &str = "paren-pad";
const METHOD_PARAM_PAD: &str = "method-param-pad";
const USAGE_DISTANCE: &str = "variable-declaration-usage-distance";
const DECLARATION_ORDER: &str = "declaration-order";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    let toks = Toks::new(cx.ast);
    if s.on(INDENTATION) {
        Indent::run(cx, &toks, s);
    }
    file_tab(cx, s);
    if s.on(PAREN_PAD) {
        paren_pad(&toks, s);
    }
    for scope in scopes(cx.ast) {
        let code = scope.code();
        if s.on(NEED_BRACES) {
            for st in &code.stmts {
                need_braces(st, s);
            }
        }
        if s.on(USELESS_PARENS) {
            useless_parens(scope, &code, s);
        }
        if s.on(LEFT_CURLY) {
            left_curly(scope, &code, &toks, s);
        }
        if s.on(RIGHT_CURLY) {
            for st in &code.stmts {
                right_curly(st, &toks, s);
            }
        }
        if s.on(METHOD_PARAM_PAD) {
            method_param_pad(scope, &code, s);
        }
        if s.on(USAGE_DISTANCE) {
            let max = s.num(USAGE_DISTANCE, "max") as usize;
            for list in stmt_lists(scope, &code) {
                usage_distance(list, max, s);
            }
        }
        if s.on(DECLARATION_ORDER) {
            declaration_order(scope, s);
        }
    }
}

fn file_tab(cx: &Ctx, s: &mut Sink) {
    for (n, line) in cx.src().lines() {
        if let Some(i) = line.chars().position(|c| c == '\t') {
            let col = i as u32 + 1;
            s.emit(
                TAB,
                Span::new(n, col, n, col + 1),
                "File contains tab characters (this is the first instance).",
            );
            return;
        }
    }
}

struct Indent<'a, 'b, 's> {
    cx: &'a Ctx<'a>,
    toks: &'a Toks<'a>,
    sink: &'b mut Sink<'s>,
    offset: u32,
    tab: u32,
    reported: HashSet<u32>,
}

impl<'a, 'b, 's> Indent<'a, 'b, 's> {
    fn run(cx: &'a Ctx<'a>, toks: &'a Toks<'a>, sink: &'b mut Sink<'s>) {
        let offset = sink.num(INDENTATION, "basic_offset") as u32;
        let tab = sink.num(INDENTATION, "tab_width") as u32;
        let mut me = Indent {
            cx,
            toks,
            sink,
            offset,
            tab,
            reported: HashSet::new(),
        };
        if let Some(p) = &cx.ast.unit.package {
            me.check(p.span, 0);
        }
        for i in &cx.ast.unit.imports {
            me.check(i.span, 0);
        }
        for t in &cx.ast.unit.types {
            me.type_decl(t, 0);
        }
    }

    fn line_indent(&self, line: u32) -> u32 {
        indent_width(self.cx.src().line(line), self.tab)
    }

    /// Checks the token starting at `at` if it begins its line.
    fn check(&mut self, at: Span, expected: u32) {
        let Some(i) = self.toks.at(at.start_line, at.start_col) else {
            return;
        };
        if !self.toks.first_on_line(i) || self.reported.contains(&at.start_line) {
            return;
        }
        let actual = self.line_indent(at.start_line);
        if actual != expected {
            self.reported.insert(at.start_line);
            let text = self.toks.all[i].lexeme.clone();
            self.sink.emit(
                INDENTATION,
                Span::new(
                    at.start_line,
                    at.start_col,
                    at.start_line,
                    at.start_col + text.chars().count() as u32,
                ),
                format!("'{text}' has incorrect indentation level {actual}, expected level should be {expected}."),
            );
        }
    }

    fn type_decl(&mut self, t: &TypeDecl, expected: u32) {
        self.check(t.span, expected);
        self.check(t.body.open, expected);
        for k in &t.enum_constants {
            self.check(k.span, expected + self.offset);
            for a in &k.args {
                self.expr_bodies(a);
            }
            if let Some(b) = &k.body {
                self.class_body(b, expected + self.offset);
            }
        }
        self.class_body(&t.body, expected);
    }

    fn class_body(&mut self, b: &ClassBody, level: u32) {
        let inner = level + self.offset;
        for m in &b.members {
            match m {
                Member::Field(f) => {
                    self.check(f.span, inner);
                    for v in &f.vars {
                        if let Some(e) = &v.init {
                            self.expr_bodies(e);
                        }
                    }
                }
                Member::Method(md) => {
                    self.check(md.span, inner);
                    if let Some(body) = &md.body {
                        self.block(body, inner);
                    }
                }
                Member::Initializer(i) => {
                    self.check(i.span, inner);
                    self.block(&i.body, inner);
                }
                Member::Type(t) => self.type_decl(t, inner),
            }
        }
        self.check(b.close, level);
    }

    fn block(&mut self, b: &Block, level: u32) {
        self.check(b.open, level);
        for st in &b.stmts {
            self.stmt(st, level + self.offset);
        }
        self.check(b.close, level);
    }

    /// Body of a control statement: a block stays at the statement's
    /// level, a single statement is indented once more.
    fn body(&mut self, st: &Stmt, level: u32) {
        match &st.kind {
            StmtKind::Block(b) => self.block(b, level),
            _ => self.stmt(st, level + self.offset),
        }
    }

    fn stmt(&mut self, st: &Stmt, level: u32) {
        self.check(st.span, level);
        let mut exprs = Vec::new();
        for_each_child_of_stmt(st, &mut |e| exprs.push(e), &mut |_| {});
        for e in exprs {
            self.expr_bodies(e);
        }
        match &st.kind {
            StmtKind::Block(b) => {
                for s in &b.stmts {
                    self.stmt(s, level + self.offset);
                }
                self.check(b.close, level);
            }
            StmtKind::LocalClass(t) => self.type_decl(t, level),
            StmtKind::If {
                then,
                else_kw,
                otherwise,
                ..
            } => {
                self.body(then, level);
                if let Some(kw) = else_kw {
                    self.check(*kw, level);
                }
                if let Some(o) = otherwise {
                    match &o.kind {
                        StmtKind::If { .. } => self.stmt(o, level),
                        _ => self.body(o, level),
                    }
                }
            }
            StmtKind::While { body, .. }
            | StmtKind::For { body, .. }
            | StmtKind::ForEach { body, .. }
            | StmtKind::Labeled { body, .. } => self.body(body, level),
            StmtKind::DoWhile { body, while_kw, .. } => {
                self.body(body, level);
                self.check(*while_kw, level);
            }
            StmtKind::Switch { arms, close, .. } => {
                let case_level = level + self.offset;
                for a in arms {
                    self.check(a.label_span, case_level);
                    for s in &a.body {
                        match &s.kind {
                            StmtKind::Block(b) if a.arrow => self.block(b, case_level),
                            _ => self.stmt(s, case_level + self.offset),
                        }
                    }
                }
                self.check(*close, level);
            }
            StmtKind::Try {
                body,
                catches,
                finally_kw,
                finally,
                ..
            } => {
                self.block(body, level);
                for c in catches {
                    self.check(c.span, level);
                    self.block(&c.body, level);
                }
                if let Some(kw) = finally_kw {
                    self.check(*kw, level);
                }
                if let Some(f) = finally {
                    self.block(f, level);
                }
            }
            StmtKind::Synchronized { body, .. } => self.block(body, level),
            _ => {}
        }
    }

    /// Lambda blocks and anonymous class bodies nested in `e`, indented
    /// relative to the line their opening brace sits on.
    fn expr_bodies(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Lambda {
                body: LambdaBody::Block(b),
                ..
            } => {
                let base = self.line_indent(b.open.start_line);
                for s in &b.stmts {
                    self.stmt(s, base + self.offset);
                }
                self.check(b.close, base);
            }
            ExprKind::New {
                body: Some(cb),
                args,
                outer,
                ..
            } => {
                if let Some(o) = outer {
                    self.expr_bodies(o);
                }
                for a in args {
                    self.expr_bodies(a);
                }
                let base = self.line_indent(cb.open.start_line);
                self.class_body(cb, base);
            }
            _ => crate::java::visit::for_each_child_of_expr(e, &mut |c| self.expr_bodies(c), &mut |_| {}),
        }
    }
}

fn not_block(st: &Stmt) -> bool {
    !matches!(st.kind, StmtKind::Block(_))
}

fn need_braces(st: &Stmt, s: &mut Sink) {
    let (kw, body) = match &st.kind {
        StmtKind::If {
            then,
            else_kw,
            otherwise,
            ..
        } => {
            if let (Some(kw), Some(o)) = (else_kw, otherwise) {
                if not_block(o) && !matches!(o.kind, StmtKind::If { .. }) {
                    s.emit(NEED_BRACES, *kw, "'else' construct must use '{}'s.");
                }
            }
            ("if", then)
        }
        StmtKind::While { body, .. } => ("while", body),
        StmtKind::DoWhile { body, .. } => ("do", body),
        StmtKind::For { body, .. } | StmtKind::ForEach { body, .. } => ("for", body),
        _ => return,
    };
    if not_block(body) {
        let at = Span::new(
            st.span.start_line,
            st.span.start_col,
            st.span.start_line,
            st.span.start_col + kw.len() as u32,
        );
        s.emit(NEED_BRACES, at, format!("'{kw}' construct must use '{{}}'s."));
    }
}

fn is_primary(e: &Expr) -> bool {
    matches!(
        e.kind,
        ExprKind::Literal(_)
            | ExprKind::Name(_)
            | ExprKind::FieldAccess { .. }
            | ExprKind::MethodCall { .. }
            | ExprKind::This
            | ExprKind::ArrayAccess { .. }
            | ExprKind::New { .. }
            | ExprKind::ClassLit(_)
            | ExprKind::Paren(_)
            | ExprKind::MethodRef { .. }
    )
}

/// Parentheses around a primary expression, or around a whole value in a
/// position where no operator can bind to it.
fn useless_parens(scope: Scope, code: &Code, s: &mut Sink) {
    let mut flagged: HashSet<Span> = HashSet::new();
    let mut top: Vec<&Expr> = Vec::new();
    for f in scope.fields() {
        top.extend(f.vars.iter().filter_map(|v| v.init.as_ref()));
    }
    for d in &code.locals {
        top.extend(d.vars.iter().filter_map(|v| v.init.as_ref()));
    }
    for st in &code.stmts {
        match &st.kind {
            StmtKind::Return(Some(e)) | StmtKind::Expr(e) | StmtKind::Throw(e) => top.push(e),
            StmtKind::If { cond, .. } | StmtKind::While { cond, .. } | StmtKind::DoWhile { cond, .. } => top.push(cond),
            StmtKind::Switch { selector, .. } => top.push(selector),
            StmtKind::Synchronized { lock, .. } => top.push(lock),
            StmtKind::For { cond: Some(c), .. } => top.push(c),
            _ => {}
        }
    }
    for e in &code.exprs {
        match &e.kind {
            ExprKind::Assign { value, .. } => top.push(value),
            ExprKind::MethodCall { args, .. } | ExprKind::New { args, .. } => top.extend(args.iter()),
            ExprKind::ArrayAccess { index, .. } => top.push(index),
            ExprKind::ArrayInit(items) => top.extend(items.iter()),
            ExprKind::Lambda {
                body: LambdaBody::Expr(b),
                ..
            } => top.push(b),
            _ => {}
        }
    }
    let mut report = |p: &Expr, s: &mut Sink| {
        if flagged.insert(p.span) {
            s.emit(USELESS_PARENS, p.span, "Useless parentheses.");
        }
    };
    for e in top {
        if let ExprKind::Paren(_) = e.kind {
            report(e, s);
        }
    }
    for e in &code.exprs {
        if let ExprKind::Paren(inner) = &e.kind {
            if is_primary(inner) {
                report(e, s);
            }
        }
    }
}

/// Opening braces must end the line that precedes their content.
fn left_curly(scope: Scope, code: &Code, toks: &Toks, s: &mut Sink) {
    // (brace, first content position when the brace opens a statement list)
    let mut braces: Vec<(Span, Option<Span>)> = Vec::new();
    let first = |stmts: &[Stmt]| stmts.first().map(|s| s.span);
    braces.push((scope.body.open, None));
    for m in &scope.body.members {
        match m {
            Member::Method(md) => {
                if let Some(b) = &md.body {
                    braces.push((b.open, first(&b.stmts)));
                }
            }
            Member::Initializer(i) => braces.push((i.body.open, first(&i.body.stmts))),
            _ => {}
        }
    }
    for st in &code.stmts {
        match &st.kind {
            StmtKind::Block(b) | StmtKind::Synchronized { body: b, .. } => braces.push((b.open, first(&b.stmts))),
            StmtKind::Switch { open, .. } => braces.push((*open, None)),
            StmtKind::Try {
                body, catches, finally, ..
            } => {
                braces.push((body.open, first(&body.stmts)));
                for c in catches {
                    braces.push((c.body.open, first(&c.body.stmts)));
                }
                if let Some(f) = finally {
                    braces.push((f.open, first(&f.stmts)));
                }
            }
            _ => {}
        }
    }
    for e in &code.exprs {
        if let ExprKind::Lambda {
            body: LambdaBody::Block(b),
            ..
        } = &e.kind
        {
            braces.push((b.open, first(&b.stmts)));
        }
    }
    for (brace, content) in braces {
        let Some(i) = toks.at(brace.start_line, brace.start_col) else {
            continue;
        };
        if toks.first_on_line(i) {
            s.emit(
                LEFT_CURLY,
                brace,
                format!("'{{' at column {} should be on the previous line.", brace.start_col),
            );
        } else if content.is_some_and(|c| c.start_line == brace.start_line) {
            s.emit(
                LEFT_CURLY,
                brace,
                format!("'{{' at column {} should have line break after.", brace.start_col),
            );
        }
    }
}

fn right_curly(st: &Stmt, toks: &Toks, s: &mut Sink) {
    // (block, start of the next part of the same statement)
    let mut parts: Vec<(&Block, Option<Span>)> = Vec::new();
    match &st.kind {
        StmtKind::If {
            then,
            else_kw,
            otherwise,
            ..
        } => {
            if let StmtKind::Block(b) = &then.kind {
                parts.push((b, *else_kw));
            }
            if let Some(StmtKind::Block(b)) = otherwise.as_ref().map(|o| &o.kind) {
                parts.push((b, None));
            }
        }
        StmtKind::Try {
            body,
            catches,
            finally_kw,
            finally,
            ..
        } => {
            let mut blocks: Vec<(&Block, Span)> = vec![(body, st.span)];
            for c in catches {
                blocks.push((&c.body, c.span));
            }
            if let (Some(kw), Some(f)) = (finally_kw, finally) {
                blocks.push((f, *kw));
            }
            for (k, (b, _)) in blocks.iter().enumerate() {
                parts.push((b, blocks.get(k + 1).map(|(_, at)| *at)));
            }
        }
        _ => return,
    }
    for (b, next) in parts {
        let Some(i) = toks.at(b.close.start_line, b.close.start_col) else {
            continue;
        };
        let multiline = b.open.start_line != b.close.start_line;
        let col = b.close.start_col;
        match next {
            Some(n) if n.start_line != b.close.start_line => s.emit(
                RIGHT_CURLY,
                b.close,
                format!("'}}' at column {col} should be on the same line as the next part of a multi-block statement."),
            ),
            Some(_) if multiline && !toks.first_on_line(i) => s.emit(
                RIGHT_CURLY,
                b.close,
                format!("'}}' at column {col} should be alone on a line."),
            ),
            None if multiline && !(toks.first_on_line(i) && toks.last_on_line(i)) => s.emit(
                RIGHT_CURLY,
                b.close,
                format!("'}}' at column {col} should be alone on a line."),
            ),
            _ => {}
        }
    }
}

fn paren_pad(toks: &Toks, s: &mut Sink) {
    let all = toks.all;
    for (i, t) in all.iter().enumerate() {
        if t.kind != TokenKind::Separator {
            continue;
        }
        let inline_ws = |j: usize| all[j].kind == TokenKind::Whitespace && !all[j].lexeme.contains(['\n', '\r']);
        if t.lexeme == "(" && i + 1 < all.len() && inline_ws(i + 1) {
            let next = toks.next_sig(i).map(|j| all[j].lexeme.as_str());
            if next != Some(";") && next != Some(")") {
                s.emit(PAREN_PAD, t.span, "'(' is followed by whitespace.");
            }
        } else if t.lexeme == ")" && i > 0 && inline_ws(i - 1) && !toks.first_on_line(i) {
            let prev = toks.prev_sig(i).map(|j| all[j].lexeme.as_str());
            if prev != Some(";") && prev != Some("(") {
                s.emit(PAREN_PAD, t.span, "')' is preceded with whitespace.");
            }
        }
    }
}

fn param_pad(before: Span, paren: Span, s: &mut Sink) {
    if before.end() == paren.start() || paren == Span::default() {
        return;
    }
    if before.end_line != paren.start_line {
        s.emit(METHOD_PARAM_PAD, paren, "'(' should be on the previous line.");
    } else {
        s.emit(METHOD_PARAM_PAD, paren, "'(' is preceded with whitespace.");
    }
}

fn method_param_pad(scope: Scope, code: &Code, s: &mut Sink) {
    for m in scope.callables() {
        param_pad(m.name.span, m.open_paren, s);
    }
    for e in &code.exprs {
        match &e.kind {
            ExprKind::MethodCall { name, open_paren, .. } => param_pad(name.span, *open_paren, s),
            ExprKind::New { ty, open_paren, .. } => param_pad(ty.span, *open_paren, s),
            _ => {}
        }
    }
}

/// Names read in the statement itself, excluding nested statement bodies.
fn header_names(st: &Stmt) -> HashSet<&str> {
    let mut names = HashSet::new();
    let mut exprs = Vec::new();
    match &st.kind {
        StmtKind::For { init, .. } => {
            for i in init {
                names.extend(Code::of_stmt(i).names());
            }
        }
        StmtKind::Try { resources, .. } => exprs.extend(resources.iter().map(|r| &r.init)),
        _ => {}
    }
    for_each_child_of_stmt(st, &mut |e| exprs.push(e), &mut |_| {});
    for e in exprs {
        names.extend(Code::of_expr(e).names());
    }
    names
}

fn usage_distance(stmts: &[Stmt], max: usize, s: &mut Sink) {
    for (k, st) in stmts.iter().enumerate() {
        let StmtKind::LocalVar(d) = &st.kind else {
            continue;
        };
        if d.modifiers.has(Modifier::Final) {
            continue;
        }
        for v in &d.vars {
            let name = v.name.name.as_str();
            let Some(m) = (k + 1..stmts.len()).find(|&m| Code::of_stmt(&stmts[m]).names().contains(name)) else {
                continue;
            };
            if !header_names(&stmts[m]).contains(name) {
                continue;
            }
            let distance = m - k - 1;
            if distance > max {
                s.emit(
                    USAGE_DISTANCE,
                    v.name.span,
                    format!("Distance between variable '{name}' declaration and its first usage is {distance}, but allowed {max}."),
                );
            }
        }
    }
}

fn visibility_rank(m: &Modifiers) -> u8 {
    match m.visibility() {
        Visibility::Public => 0,
        Visibility::Protected => 1,
        Visibility::Package => 2,
        Visibility::Private => 3,
    }
}

/// Static fields, instance fields, constructors, methods; fields of each
/// group ordered public, protected, package, private.
fn declaration_order(scope: Scope, s: &mut Sink) {
    let mut max_group = 0u8;
    let mut max_vis = 0u8;
    for m in &scope.body.members {
        let (group, vis, span) = match m {
            Member::Field(f) => {
                let group = if f.modifiers.has(Modifier::Static) { 0 } else { 1 };
                (group, visibility_rank(&f.modifiers), f.span)
            }
            Member::Method(md) if md.is_constructor => (2, 0, md.span),
            Member::Method(md) => (3, 0, md.span),
            _ => continue,
        };
        if group < max_group {
            let what = match group {
                0 => "Static variable definition in wrong order.",
                1 => "Instance variable definition in wrong order.",
                _ => "Constructor definition in wrong order.",
            };
            s.emit(DECLARATION_ORDER, span, what);
            continue;
        }
        if group > max_group {
            max_group = group;
            max_vis = 0;
        }
        if group <= 1 {
            if vis < max_vis {
                s.emit(DECLARATION_ORDER, span, "Variable access definition in wrong order.");
            } else {
                max_vis = vis;
            }
        }
    }
}
