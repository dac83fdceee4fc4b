use regex::Regex;

use super::util::scopes;
use crate::java::ast::*;
use crate::smells::engine::{cached_regex, Ctx, Sink};

const REQUIRED: &str = "comment-required";
const SIZE: &str = "comment-size";
const CONTENT: &str = "comment-content";
const METHOD: &str = "javadoc-method";
const TYPE: &str = "javadoc-type";
const PACKAGE: &str = "missing-javadoc-package";
const VARIABLE: &str = "javadoc-variable";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    comments(cx, s);
    if let Some(p) = &cx.ast.unit.package {
        if cx.src().file_name() == Some("package-info.java") && p.doc.is_none() {
            s.emit(PACKAGE, p.span, "Missing javadoc for package-info.java file.");
        }
    }
    let param_tag = cached_regex(r"@param\s+(<?[A-Za-z_$][\w$]*>?)").expect("valid");
    for scope in scopes(cx.ast) {
        let in_interface = scope.is_interface();
        if let Some(t) = scope.decl {
            if t.modifiers.has(Modifier::Public) && t.doc.is_none() {
                s.emit(REQUIRED, t.name.span, "Class comments are required.");
            }
            if let Some(doc) = &t.doc {
                type_params(t, doc, &param_tag, s);
            }
            for k in &t.enum_constants {
                if k.doc.is_none() {
                    s.emit(
                        VARIABLE,
                        k.name.span,
                        format!("Missing a Javadoc comment for '{}'.", k.name.name),
                    );
                }
            }
            for m in scope.callables() {
                let exposed = m.modifiers.has(Modifier::Public)
                    || m.modifiers.has(Modifier::Protected)
                    || (in_interface && !m.modifiers.has(Modifier::Private));
                if exposed && !m.modifiers.has_annotation("Override") {
                    method(m, &param_tag, s);
                }
            }
        }
        for f in scope.fields() {
            if f.doc.is_none() {
                for v in &f.vars {
                    s.emit(
                        VARIABLE,
                        v.name.span,
                        format!("Missing a Javadoc comment for '{}'.", v.name.name),
                    );
                }
            }
        }
    }
}

fn comments(cx: &Ctx, s: &mut Sink) {
    let forbidden = s.regex(CONTENT, "forbidden");
    let (max_lines, max_len) = if s.on(SIZE) {
        (
            s.num(SIZE, "max_lines") as usize,
            s.num(SIZE, "max_line_length") as usize,
        )
    } else {
        (usize::MAX, usize::MAX)
    };
    for c in &cx.ast.unit.comments {
        let lines: Vec<&str> = c.text.lines().collect();
        if lines.len() > max_lines {
            s.emit(
                SIZE,
                c.span,
                format!("Comment is too large: Too many lines ({} > {max_lines}).", lines.len()),
            );
        } else if let Some(l) = lines.iter().find(|l| l.trim_start().chars().count() > max_len) {
            let n = l.trim_start().chars().count();
            s.emit(
                SIZE,
                c.span,
                format!("Comment is too large: Line too long ({n} > {max_len})."),
            );
        }
        if forbidden.as_ref().is_some_and(|re| re.is_match(&c.text)) {
            s.emit(CONTENT, c.span, "Invalid words or phrases found.");
        }
    }
}

fn documented_params(doc: &Comment, re: &Regex) -> Vec<String> {
    re.captures_iter(&doc.text).map(|c| c[1].to_string()).collect()
}

fn method(m: &MethodDecl, re: &Regex, s: &mut Sink) {
    let Some(doc) = &m.doc else {
        s.emit(METHOD, m.name.span, "Missing a Javadoc comment.");
        return;
    };
    let documented = documented_params(doc, re);
    for p in &m.params {
        if !documented.contains(&p.name.name) {
            s.emit(
                METHOD,
                p.name.span,
                format!("Expected @param tag for '{}'.", p.name.name),
            );
        }
    }
}

fn type_params(t: &TypeDecl, doc: &Comment, re: &Regex, s: &mut Sink) {
    let documented = documented_params(doc, re);
    for tp in &t.type_params {
        let tag = format!("<{}>", tp.name.name);
        if !documented.contains(&tag) {
            s.emit(
                TYPE,
                tp.name.span,
                format!("Type Javadoc comment is missing @param {tag} tag."),
            );
        }
    }
    for d in documented.iter().filter(|d| d.starts_with('<')) {
        let inner = d.trim_start_matches('<').trim_end_matches('>');
        if !t.type_params.iter().any(|tp| tp.name.name == inner) {
            s.emit(TYPE, t.name.span, format!("Unused @param tag for '{d}'."));
        }
    }
}
