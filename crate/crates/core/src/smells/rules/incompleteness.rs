use super::util::{scopes, Code};
use crate::java::ast::*;
use crate::smells::engine::{Ctx, Sink};

const SWITCH_DEFAULT: &str = "missing-switch-default";
const TODO: &str = "todo-comment";
const EMPTY_CONTROL: &str = "empty-control-statement";
const EMPTY_CATCH: &str = "empty-catch-block";
const EMPTY_BLOCK: &str = "empty-block";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    todo_comments(cx, s);
    for scope in scopes(cx.ast) {
        for m in &scope.body.members {
            if let Member::Initializer(i) = m {
                if i.body.stmts.is_empty() {
                    s.emit(EMPTY_BLOCK, i.span, "Empty initializer block.");
                }
            }
        }
        let code = scope.code();
        // Blocks that are the body of a control statement; any other block
        // statement is a standalone block.
        let mut owned = Vec::new();
        for st in &code.stmts {
            statement(cx, st, s, &mut owned);
        }
        standalone_blocks(&code, &owned, s);
    }
}

fn todo_comments(cx: &Ctx, s: &mut Sink) {
    let Some(re) = s.regex(TODO, "format") else {
        return;
    };
    for c in &cx.ast.unit.comments {
        if re.is_match(&c.text) {
            s.emit(TODO, c.span, "Comment matches to-do format.");
        }
    }
}

fn is_empty_block(st: &Stmt) -> bool {
    matches!(&st.kind, StmtKind::Block(b) if b.stmts.is_empty())
}

fn has_comment_inside(cx: &Ctx, b: &Block) -> bool {
    let span = b.span();
    cx.ast.unit.comments.iter().any(|c| span.contains(&c.span))
}

fn statement<'a>(cx: &Ctx, st: &'a Stmt, s: &mut Sink, owned: &mut Vec<&'a Stmt>) {
    let mut body = |kw: crate::java::Span, what: &str, b: &'a Stmt, s: &mut Sink| {
        owned.push(b);
        match &b.kind {
            StmtKind::Empty => s.emit(EMPTY_CONTROL, kw, format!("Empty {what} statement body.")),
            StmtKind::Block(blk) if blk.stmts.is_empty() => s.emit(EMPTY_BLOCK, kw, format!("Empty {what} block.")),
            _ => {}
        }
    };
    match &st.kind {
        StmtKind::If {
            then,
            else_kw,
            otherwise,
            ..
        } => {
            body(st.span, "if", then, s);
            if let (Some(kw), Some(o)) = (else_kw, otherwise) {
                body(*kw, "else", o, s);
            }
        }
        StmtKind::While { body: b, .. } => body(st.span, "while", b, s),
        StmtKind::DoWhile { body: b, .. } => body(st.span, "do", b, s),
        StmtKind::For { body: b, .. } => body(st.span, "for", b, s),
        StmtKind::ForEach { body: b, .. } => body(st.span, "for", b, s),
        StmtKind::Labeled { body: b, .. } => owned.push(b),
        StmtKind::Switch { arms, .. } => {
            if !arms.iter().any(|a| a.label == CaseLabel::Default) {
                s.emit(SWITCH_DEFAULT, st.span, "Switch without \"default\" clause.");
            }
            if arms.is_empty() {
                s.emit(EMPTY_BLOCK, st.span, "Empty switch block.");
            }
        }
        StmtKind::Try {
            body: b,
            catches,
            finally_kw,
            finally,
            ..
        } => {
            if b.stmts.is_empty() {
                s.emit(EMPTY_BLOCK, st.span, "Empty try block.");
            }
            for c in catches {
                if c.body.stmts.is_empty() && !has_comment_inside(cx, &c.body) {
                    s.emit(EMPTY_CATCH, c.span, "Empty catch block.");
                }
            }
            if let (Some(kw), Some(f)) = (finally_kw, finally) {
                if f.stmts.is_empty() {
                    s.emit(EMPTY_BLOCK, *kw, "Empty finally block.");
                }
            }
        }
        StmtKind::Synchronized { body: b, .. } => {
            if b.stmts.is_empty() {
                s.emit(EMPTY_BLOCK, st.span, "Empty synchronized block.");
            }
        }
        _ => {}
    }
}

fn standalone_blocks(code: &Code, owned: &[&Stmt], s: &mut Sink) {
    for st in &code.stmts {
        if is_empty_block(st) && !owned.iter().any(|o| std::ptr::eq(*o, *st)) {
            s.emit(EMPTY_CONTROL, st.span, "Empty block statement.");
        }
    }
}
