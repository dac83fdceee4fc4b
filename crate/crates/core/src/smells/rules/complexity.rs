use super::util::{scopes, stmt_lists};
use crate::java::ast::*;
use crate::java::indent_width;
use crate::smells::engine::{cached_regex, Ctx, Sink};

const BOOL_EXPR: &str = "simplify-boolean-expression";
const CONDITIONAL: &str = "simplify-conditional";
const BOOL_RETURN: &str = "simplify-boolean-return";
const TERNARY: &str = "simplified-ternary";
const LINE_LENGTH: &str = "line-length";
const METHOD_LENGTH: &str = "method-length";
const PARAMS: &str = "excessive-parameter-list";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    line_length(cx, s);
    for scope in scopes(cx.ast) {
        for m in scope.callables() {
            method_shape(m, s);
        }
        let code = scope.code();
        for e in &code.exprs {
            expression(e, s);
        }
        if s.on(BOOL_RETURN) {
            for list in stmt_lists(scope, &code) {
                boolean_returns(list, s);
            }
        }
    }
}

fn line_length(cx: &Ctx, s: &mut Sink) {
    if !s.on(LINE_LENGTH) {
        return;
    }
    let max = s.num(LINE_LENGTH, "max") as usize;
    let tab = s.num(LINE_LENGTH, "tab_width") as u32;
    let ignore = cached_regex(r"^(package|import) .*$").expect("valid");
    for (n, line) in cx.src().lines() {
        if ignore.is_match(line) {
            continue;
        }
        let len = expanded_len(line, tab);
        if len > max {
            s.emit(
                LINE_LENGTH,
                crate::java::Span::new(n, 1, n, line.chars().count() as u32 + 1),
                format!("Line is longer than {max} characters (found {len})."),
            );
        }
    }
}

/// Display width with tabs expanded to `tab` columns.
fn expanded_len(line: &str, tab: u32) -> usize {
    let lead = indent_width(line, tab) as usize;
    let rest = line.trim_start_matches([' ', '\t']);
    let mut width = lead;
    for c in rest.chars() {
        if c == '\t' {
            width += tab as usize - width % tab as usize;
        } else {
            width += 1;
        }
    }
    width
}

fn method_shape(m: &MethodDecl, s: &mut Sink) {
    if let Some(body) = &m.body {
        if s.on(METHOD_LENGTH) {
            let max = s.num(METHOD_LENGTH, "max") as u32;
            let len = body.close.end_line - body.open.start_line + 1;
            if len > max {
                s.emit(
                    METHOD_LENGTH,
                    m.name.span,
                    format!("Method length is {len} lines (max allowed is {max})."),
                );
            }
        }
    }
    if s.on(PARAMS) {
        let max = s.num(PARAMS, "max") as usize;
        if m.params.len() > max {
            s.emit(
                PARAMS,
                m.name.span,
                format!(
                    "Method '{}' has {} parameters (max allowed is {max}).",
                    m.name.name,
                    m.params.len()
                ),
            );
        }
    }
}

fn expression(e: &Expr, s: &mut Sink) {
    match &e.kind {
        ExprKind::Binary { op, lhs, rhs } => {
            let (l, r) = (lhs.unparen(), rhs.unparen());
            let literal_operand = l.is_bool_literal() || r.is_bool_literal();
            if literal_operand && matches!(op, BinaryOp::Eq | BinaryOp::Ne | BinaryOp::And | BinaryOp::Or) {
                s.emit(BOOL_EXPR, e.span, "Expression can be simplified.");
            }
            if null_check_before_instanceof(*op, l, r) {
                s.emit(CONDITIONAL, e.span, "No need to check for null before an instanceof.");
            }
        }
        ExprKind::Unary {
            op: UnaryOp::Not,
            operand,
        } if operand.unparen().is_bool_literal() => {
            s.emit(BOOL_EXPR, e.span, "Expression can be simplified.");
        }
        ExprKind::Conditional { then, otherwise, .. } => {
            if then.unparen().is_bool_literal() || otherwise.unparen().is_bool_literal() {
                s.emit(
                    TERNARY,
                    e.span,
                    "Ternary operator with a boolean literal can be simplified.",
                );
            }
        }
        _ => {}
    }
}

/// `x != null && x instanceof T` or `x == null || !(x instanceof T)`.
fn null_check_before_instanceof(op: BinaryOp, l: &Expr, r: &Expr) -> bool {
    let checked = match (op, &l.kind) {
        (
            BinaryOp::And,
            ExprKind::Binary {
                op: BinaryOp::Ne,
                lhs,
                rhs,
            },
        ) => null_compared(lhs, rhs),
        (
            BinaryOp::Or,
            ExprKind::Binary {
                op: BinaryOp::Eq,
                lhs,
                rhs,
            },
        ) => null_compared(lhs, rhs),
        _ => None,
    };
    let Some(var) = checked else { return false };
    let tested = match (op, &r.kind) {
        (BinaryOp::And, ExprKind::InstanceOf { expr, .. }) => expr.unparen().as_name(),
        (
            BinaryOp::Or,
            ExprKind::Unary {
                op: UnaryOp::Not,
                operand,
            },
        ) => match &operand.unparen().kind {
            ExprKind::InstanceOf { expr, .. } => expr.unparen().as_name(),
            _ => None,
        },
        _ => None,
    };
    tested == Some(var)
}

fn null_compared<'a>(a: &'a Expr, b: &'a Expr) -> Option<&'a str> {
    let is_null = |e: &Expr| {
        matches!(
            &e.kind,
            ExprKind::Literal(Literal {
                kind: crate::java::LiteralKind::Null,
                ..
            })
        )
    };
    if is_null(b.unparen()) {
        a.unparen().as_name()
    } else if is_null(a.unparen()) {
        b.unparen().as_name()
    } else {
        None
    }
}

fn returns_bool_literal(s: &Stmt) -> bool {
    match &s.kind {
        StmtKind::Return(Some(e)) => e.unparen().is_bool_literal(),
        StmtKind::Block(b) if b.stmts.len() == 1 => returns_bool_literal(&b.stmts[0]),
        _ => false,
    }
}

/// `if (c) return true; else return false;` and the variant where the
/// `else` branch is the next statement of the list.
fn boolean_returns(stmts: &[Stmt], s: &mut Sink) {
    for (i, cur) in stmts.iter().enumerate() {
        if let StmtKind::If { then, otherwise, .. } = &cur.kind {
            if !returns_bool_literal(then) {
                continue;
            }
            let tail = match otherwise {
                Some(o) => returns_bool_literal(o),
                None => stmts.get(i + 1).is_some_and(returns_bool_literal),
            };
            if tail {
                s.emit(
                    BOOL_RETURN,
                    cur.span,
                    "Conditional logic can be removed by returning the condition.",
                );
            }
        }
    }
}
