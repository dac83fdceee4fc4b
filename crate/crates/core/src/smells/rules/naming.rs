use regex::Regex;

use super::util::{scopes, Code, Scope};
use crate::java::ast::*;
use crate::smells::engine::{Ctx, Sink};

const LOCAL: &str = "local-variable-naming";
const PARAM: &str = "formal-parameter-naming";
const METHOD: &str = "method-naming";
const CLASS: &str = "class-naming";
const GENERICS: &str = "generics-naming";
const ABBREV: &str = "abbreviation-as-word-in-name";
const ABSTRACT: &str = "abstract-class-name";
const CATCH: &str = "catch-parameter-name";
const CONSTANT: &str = "constant-name";
const ILLEGAL: &str = "illegal-identifier-name";

struct Patterns {
    local: Option<Regex>,
    param: Option<Regex>,
    method: Option<Regex>,
    class: Option<Regex>,
    generics: Option<Regex>,
    abstract_name: Option<Regex>,
    catch: Option<Regex>,
    constant: Option<Regex>,
    illegal: Option<Regex>,
    max_abbrev: usize,
}

fn pattern(s: &Sink, rule: &str, key: &str) -> Option<Regex> {
    s.regex(rule, key)
}

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    let p = Patterns {
        local: pattern(s, LOCAL, "format"),
        param: pattern(s, PARAM, "format"),
        method: pattern(s, METHOD, "format"),
        class: pattern(s, CLASS, "format"),
        generics: pattern(s, GENERICS, "format"),
        abstract_name: pattern(s, ABSTRACT, "format"),
        catch: pattern(s, CATCH, "format"),
        constant: pattern(s, CONSTANT, "format"),
        illegal: pattern(s, ILLEGAL, "format"),
        max_abbrev: if s.on(ABBREV) {
            s.num(ABBREV, "max_abbreviation_length") as usize
        } else {
            0
        },
    };
    for scope in scopes(cx.ast) {
        if let Some(t) = scope.decl {
            check_type(t, &p, s);
        }
        check_members(scope, &p, s);
        check_code(&scope.code(), &p, s);
    }
}

fn mismatch(re: &Option<Regex>, name: &str) -> bool {
    re.as_ref().is_some_and(|r| !r.is_match(name))
}

fn illegal(p: &Patterns, id: &Ident, s: &mut Sink) {
    if p.illegal.as_ref().is_some_and(|r| r.is_match(&id.name)) {
        s.emit(ILLEGAL, id.span, format!("Name '{}' is a contextual keyword.", id.name));
    }
}

/// Length of the longest capital run, not counting a final capital that
/// starts the next word.
pub(crate) fn abbreviation_length(name: &str) -> usize {
    let chars: Vec<char> = name.chars().collect();
    let mut best = 0;
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_uppercase() {
            let start = i;
            while i < chars.len() && chars[i].is_uppercase() {
                i += 1;
            }
            let run = i - start;
            let followed_by_lower = i < chars.len() && chars[i].is_lowercase();
            best = best.max(if followed_by_lower { run - 1 } else { run });
        } else {
            i += 1;
        }
    }
    best
}

fn abbreviation(p: &Patterns, id: &Ident, s: &mut Sink) {
    if s.on(ABBREV) && abbreviation_length(&id.name) > p.max_abbrev {
        s.emit(
            ABBREV,
            id.span,
            format!(
                "Abbreviation in name '{}' must contain no more than {} consecutive capital letters.",
                id.name,
                p.max_abbrev + 1
            ),
        );
    }
}

fn check_type(t: &TypeDecl, p: &Patterns, s: &mut Sink) {
    if mismatch(&p.class, &t.name.name) {
        s.emit(
            CLASS,
            t.name.span,
            format!("Type name '{}' does not match the naming convention.", t.name.name),
        );
    }
    for tp in &t.type_params {
        check_type_param(tp, p, s);
    }
    if t.kind == TypeKind::Class {
        if let Some(re) = &p.abstract_name {
            let is_abstract = t.modifiers.has(Modifier::Abstract);
            let matches = re.is_match(&t.name.name);
            if is_abstract && !matches {
                s.emit(
                    ABSTRACT,
                    t.name.span,
                    format!("Name '{}' must match pattern '{}'.", t.name.name, re.as_str()),
                );
            } else if matches && !is_abstract {
                s.emit(
                    ABSTRACT,
                    t.name.span,
                    format!("Class '{}' must be declared as 'abstract'.", t.name.name),
                );
            }
        }
    }
    abbreviation(p, &t.name, s);
    illegal(p, &t.name, s);
    for k in &t.enum_constants {
        illegal(p, &k.name, s);
    }
}

fn check_type_param(tp: &TypeParam, p: &Patterns, s: &mut Sink) {
    if mismatch(&p.generics, &tp.name.name) {
        s.emit(
            GENERICS,
            tp.name.span,
            format!("Generics name '{}' should be a single capital letter.", tp.name.name),
        );
    }
}

fn check_members(scope: Scope, p: &Patterns, s: &mut Sink) {
    let in_interface = scope.is_interface();
    for f in scope.fields() {
        let constant = in_interface || super::util::is_static_final(&f.modifiers);
        let skip_abbrev = in_interface || f.modifiers.has(Modifier::Static) || f.modifiers.has(Modifier::Final);
        for v in &f.vars {
            let n = &v.name.name;
            if constant && n != "serialVersionUID" && n != "serialPersistentFields" && mismatch(&p.constant, n) {
                s.emit(
                    CONSTANT,
                    v.name.span,
                    format!("Constant name '{n}' must be UPPER_SNAKE_CASE."),
                );
            }
            if !skip_abbrev {
                abbreviation(p, &v.name, s);
            }
            illegal(p, &v.name, s);
        }
    }
    for m in scope.callables() {
        if !m.is_constructor {
            if mismatch(&p.method, &m.name.name) {
                s.emit(
                    METHOD,
                    m.name.span,
                    format!("Method name '{}' does not match the naming convention.", m.name.name),
                );
            }
            if !m.modifiers.has_annotation("Override") {
                abbreviation(p, &m.name, s);
            }
            illegal(p, &m.name, s);
        }
        for tp in &m.type_params {
            check_type_param(tp, p, s);
        }
        for prm in &m.params {
            if mismatch(&p.param, &prm.name.name) {
                s.emit(
                    PARAM,
                    prm.name.span,
                    format!(
                        "Parameter name '{}' does not match the naming convention.",
                        prm.name.name
                    ),
                );
            }
            if !prm.modifiers.has(Modifier::Final) {
                abbreviation(p, &prm.name, s);
            }
            illegal(p, &prm.name, s);
        }
    }
}

fn check_code(code: &Code, p: &Patterns, s: &mut Sink) {
    for d in &code.locals {
        for v in &d.vars {
            if mismatch(&p.local, &v.name.name) {
                s.emit(
                    LOCAL,
                    v.name.span,
                    format!(
                        "Local variable name '{}' does not match the naming convention.",
                        v.name.name
                    ),
                );
            }
            if !d.modifiers.has(Modifier::Final) {
                abbreviation(p, &v.name, s);
            }
            illegal(p, &v.name, s);
        }
    }
    for st in &code.stmts {
        if let StmtKind::Try { catches, .. } = &st.kind {
            for c in catches {
                let id = &c.param.name;
                if mismatch(&p.catch, &id.name) {
                    s.emit(
                        CATCH,
                        id.span,
                        format!(
                            "Catch parameter name '{}' does not match the naming convention.",
                            id.name
                        ),
                    );
                }
                abbreviation(p, id, s);
                illegal(p, id, s);
            }
        }
        if let StmtKind::Try { resources, .. } = &st.kind {
            for r in resources {
                if let Some((_, _, id)) = &r.decl {
                    illegal(p, id, s);
                }
            }
        }
    }
    for e in &code.exprs {
        if let ExprKind::Lambda { params, .. } = &e.kind {
            for lp in params {
                illegal(p, &lp.name, s);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::abbreviation_length;

    #[test]
    fn abbreviation_runs() {
        assert_eq!(abbreviation_length("getID"), 2);
        assert_eq!(abbreviation_length("XMLReader"), 3);
        assert_eq!(abbreviation_length("IOError"), 2);
        assert_eq!(abbreviation_length("simple"), 0);
        assert_eq!(abbreviation_length("URL"), 3);
    }
}
