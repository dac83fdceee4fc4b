//! Recursive-descent parser for a Java 8-era subset.
//!
//! Stops at the first error. Backtracking is used in the few places where
//! Java's grammar is ambiguous without types (local declarations vs.
//! expressions, casts vs. parenthesised expressions).

use super::ast::*;
use super::lexer::{CommentKind, Token, TokenKind};
use super::source::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone)]
struct SigTok {
    kind: TokenKind,
    text: String,
    span: Span,
    raw: usize,
    /// No trivia between this token and the next one.
    glued: bool,
}

pub(crate) struct Parser<'a> {
    toks: Vec<SigTok>,
    raw: &'a [Token],
    pos: usize,
    no_lambda: bool,
}

fn split_gt(tok: &Token, raw: usize, out: &mut Vec<SigTok>) {
    // `>>`, `>>>`, `>>=`, `>>>=` are split so that nested generic closers
    // can be consumed one at a time; the expression parser re-joins glued
    // pieces into shift operators.
    let pieces: &[&str] = match tok.lexeme.as_str() {
        ">>" => &[">", ">"],
        ">>>" => &[">", ">", ">"],
        ">>=" => &[">", ">="],
        ">>>=" => &[">", ">", ">="],
        _ => unreachable!(),
    };
    let mut col = tok.span.start_col;
    let n = pieces.len();
    for (i, p) in pieces.iter().enumerate() {
        let w = p.len() as u32;
        out.push(SigTok {
            kind: TokenKind::Operator,
            text: p.to_string(),
            span: Span::new(tok.span.start_line, col, tok.span.start_line, col + w),
            raw,
            glued: i + 1 < n,
        });
        col += w;
    }
}

impl<'a> Parser<'a> {
    pub(crate) fn new(raw: &'a [Token]) -> Self {
        let mut toks: Vec<SigTok> = Vec::new();
        for (i, t) in raw.iter().enumerate() {
            if t.kind.is_trivia() {
                continue;
            }
            if t.kind == TokenKind::Operator && matches!(t.lexeme.as_str(), ">>" | ">>>" | ">>=" | ">>>=") {
                split_gt(t, i, &mut toks);
            } else {
                toks.push(SigTok {
                    kind: t.kind,
                    text: t.lexeme.clone(),
                    span: t.span,
                    raw: i,
                    glued: false,
                });
            }
        }
        for i in 0..toks.len().saturating_sub(1) {
            let (a, b) = (toks[i].raw, toks[i + 1].raw);
            toks[i].glued = b == a || b == a + 1;
        }
        let end = raw
            .last()
            .map(|t| Span::point(t.span.end_line, t.span.end_col))
            .unwrap_or(Span::point(1, 1));
        toks.push(SigTok {
            kind: TokenKind::Whitespace,
            text: String::new(),
            span: end,
            raw: raw.len(),
            glued: false,
        });
        Self {
            toks,
            raw,
            pos: 0,
            no_lambda: false,
        }
    }

    // ---- token helpers ----

    fn peek(&self, n: usize) -> &SigTok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i]
    }

    fn cur(&self) -> &SigTok {
        self.peek(0)
    }

    fn is_eof(&self) -> bool {
        self.pos >= self.toks.len() - 1
    }

    fn is_punct(t: &SigTok) -> bool {
        matches!(t.kind, TokenKind::Operator | TokenKind::Separator | TokenKind::Keyword)
    }

    fn at(&self, text: &str) -> bool {
        let t = self.cur();
        Self::is_punct(t) && t.text == text
    }

    fn peek_is(&self, n: usize, text: &str) -> bool {
        let t = self.peek(n);
        Self::is_punct(t) && t.text == text
    }

    fn at_ident(&self) -> bool {
        self.cur().kind == TokenKind::Identifier
    }

    fn bump(&mut self) -> Span {
        let s = self.cur().span;
        if !self.is_eof() {
            self.pos += 1;
        }
        s
    }

    fn eat(&mut self, text: &str) -> Option<Span> {
        if self.at(text) {
            Some(self.bump())
        } else {
            None
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let t = self.cur();
        let found = if self.is_eof() {
            "end of file".to_string()
        } else {
            format!("'{}'", t.text)
        };
        Err(ParseError {
            span: t.span,
            message: format!("{}, found {}", msg.into(), found),
        })
    }

    fn expect(&mut self, text: &str) -> PResult<Span> {
        match self.eat(text) {
            Some(s) => Ok(s),
            None => self.error(format!("expected '{text}'")),
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        if self.at_ident() {
            let t = self.cur().clone();
            self.bump();
            Ok(Ident {
                name: t.text,
                span: t.span,
            })
        } else {
            self.error("expected identifier")
        }
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn span_from(&self, start: Span) -> Span {
        start.to(self.prev_span())
    }

    /// Javadoc comment directly preceding significant token `idx`.
    fn doc_before(&self, idx: usize) -> Option<Comment> {
        let raw_idx = self.toks[idx].raw;
        let mut i = raw_idx;
        while i > 0 {
            i -= 1;
            let t = &self.raw[i];
            match t.kind {
                TokenKind::Whitespace => continue,
                TokenKind::Comment(CommentKind::Javadoc) => {
                    return Some(Comment {
                        kind: CommentKind::Javadoc,
                        text: t.lexeme.clone(),
                        span: t.span,
                    })
                }
                _ => return None,
            }
        }
        None
    }

    fn speculate<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> Option<T> {
        let save = self.pos;
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = save;
                None
            }
        }
    }

    // ---- compilation unit ----

    pub(crate) fn compilation_unit(&mut self) -> PResult<CompilationUnit> {
        let start = self.cur().span;
        let mut package = None;
        let save = self.pos;
        let doc = self.doc_before(self.pos);
        let pkg_start = self.cur().span;
        while self.at("@") && !self.peek_is(1, "interface") {
            self.annotation()?;
        }
        if self.eat("package").is_some() {
            let name = self.qualified_name()?;
            self.expect(";")?;
            package = Some(PackageDecl {
                name,
                doc,
                span: self.span_from(pkg_start),
            });
        } else {
            self.pos = save;
        }
        let mut imports = Vec::new();
        loop {
            if self.eat(";").is_some() {
                continue;
            }
            if !self.at("import") {
                break;
            }
            let s = self.bump();
            let is_static = self.eat("static").is_some();
            let mut name = self.ident()?.name;
            let mut on_demand = false;
            while self.eat(".").is_some() {
                if self.eat("*").is_some() {
                    on_demand = true;
                    break;
                }
                name.push('.');
                name.push_str(&self.ident()?.name);
            }
            self.expect(";")?;
            imports.push(ImportDecl {
                name,
                is_static,
                on_demand,
                span: self.span_from(s),
            });
        }
        let mut types = Vec::new();
        while !self.is_eof() {
            if self.eat(";").is_some() {
                continue;
            }
            let idx = self.pos;
            let doc = self.doc_before(idx);
            let s = self.cur().span;
            let mods = self.modifiers()?;
            types.push(self.type_decl(mods, doc, s)?);
        }
        let comments = self
            .raw
            .iter()
            .filter_map(|t| match t.kind {
                TokenKind::Comment(kind) => Some(Comment {
                    kind,
                    text: t.lexeme.clone(),
                    span: t.span,
                }),
                _ => None,
            })
            .collect();
        let span = if self.pos == 0 { start } else { self.span_from(start) };
        Ok(CompilationUnit {
            package,
            imports,
            types,
            comments,
            span,
        })
    }

    fn qualified_name(&mut self) -> PResult<String> {
        let mut name = self.ident()?.name;
        while self.at(".") && self.peek(1).kind == TokenKind::Identifier {
            self.bump();
            name.push('.');
            name.push_str(&self.ident()?.name);
        }
        Ok(name)
    }

    fn annotation(&mut self) -> PResult<Annotation> {
        let s = self.expect("@")?;
        let name = self.qualified_name()?;
        if self.at("(") {
            self.skip_balanced("(", ")")?;
        }
        Ok(Annotation {
            name,
            span: self.span_from(s),
        })
    }

    fn skip_balanced(&mut self, open: &str, close: &str) -> PResult<()> {
        self.expect(open)?;
        let mut depth = 1;
        while depth > 0 {
            if self.is_eof() {
                return self.error(format!("expected '{close}'"));
            }
            if self.at(open) {
                depth += 1;
            } else if self.at(close) {
                depth -= 1;
            }
            self.bump();
        }
        Ok(())
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = Modifiers::default();
        loop {
            if self.at("@") && !self.peek_is(1, "interface") {
                mods.annotations.push(self.annotation()?);
                continue;
            }
            let t = self.cur();
            if t.kind == TokenKind::Keyword {
                if let Some(m) = Modifier::from_keyword(&t.text) {
                    // `default:` in a switch is never reached here.
                    let s = self.bump();
                    mods.keywords.push((m, s));
                    continue;
                }
            }
            break;
        }
        Ok(mods)
    }

    fn type_decl(&mut self, modifiers: Modifiers, doc: Option<Comment>, start: Span) -> PResult<TypeDecl> {
        if self.at("@") && self.peek_is(1, "interface") {
            return self.error("annotation type declarations are not supported");
        }
        let kind = if self.at("class") {
            TypeKind::Class
        } else if self.at("interface") {
            TypeKind::Interface
        } else if self.at("enum") {
            TypeKind::Enum
        } else {
            return self.error("expected class, interface, or enum declaration");
        };
        let keyword = self.bump();
        let name = self.ident()?;
        let type_params = if self.at("<") { self.type_params()? } else { Vec::new() };
        let mut extends = Vec::new();
        let mut implements = Vec::new();
        if self.eat("extends").is_some() {
            extends.push(self.parse_type()?);
            while kind == TypeKind::Interface && self.eat(",").is_some() {
                extends.push(self.parse_type()?);
            }
        }
        if kind != TypeKind::Interface && self.eat("implements").is_some() {
            implements.push(self.parse_type()?);
            while self.eat(",").is_some() {
                implements.push(self.parse_type()?);
            }
        }
        let (enum_constants, body) = if kind == TypeKind::Enum {
            self.enum_body(&name.name)?
        } else {
            (Vec::new(), self.class_body(&name.name)?)
        };
        Ok(TypeDecl {
            kind,
            name,
            modifiers,
            type_params,
            extends,
            implements,
            enum_constants,
            body,
            doc,
            keyword,
            span: self.span_from(start),
        })
    }

    fn type_params(&mut self) -> PResult<Vec<TypeParam>> {
        self.expect("<")?;
        let mut out = Vec::new();
        loop {
            while self.at("@") {
                self.annotation()?;
            }
            let name = self.ident()?;
            let mut bounds = Vec::new();
            if self.eat("extends").is_some() {
                bounds.push(self.parse_type()?);
                while self.eat("&").is_some() {
                    bounds.push(self.parse_type()?);
                }
            }
            out.push(TypeParam { name, bounds });
            if self.eat(",").is_none() {
                break;
            }
        }
        self.expect(">")?;
        Ok(out)
    }

    fn enum_body(&mut self, type_name: &str) -> PResult<(Vec<EnumConstant>, ClassBody)> {
        let open = self.expect("{")?;
        let mut constants = Vec::new();
        while !self.at(";") && !self.at("}") {
            let doc = self.doc_before(self.pos);
            let s = self.cur().span;
            while self.at("@") {
                self.annotation()?;
            }
            let name = self.ident()?;
            let args = if self.at("(") { self.arguments()?.0 } else { Vec::new() };
            let body = if self.at("{") {
                Some(self.class_body(type_name)?)
            } else {
                None
            };
            constants.push(EnumConstant {
                name,
                args,
                body,
                doc,
                span: self.span_from(s),
            });
            if self.eat(",").is_none() {
                break;
            }
        }
        let mut members = Vec::new();
        if self.eat(";").is_some() {
            while !self.at("}") {
                if self.is_eof() {
                    return self.error("expected '}'");
                }
                if let Some(m) = self.member(type_name)? {
                    members.push(m);
                }
            }
        }
        let close = self.expect("}")?;
        Ok((constants, ClassBody { members, open, close }))
    }

    fn class_body(&mut self, type_name: &str) -> PResult<ClassBody> {
        let open = self.expect("{")?;
        let mut members = Vec::new();
        while !self.at("}") {
            if self.is_eof() {
                return self.error("expected '}'");
            }
            if let Some(m) = self.member(type_name)? {
                members.push(m);
            }
        }
        let close = self.expect("}")?;
        Ok(ClassBody { members, open, close })
    }

    fn member(&mut self, type_name: &str) -> PResult<Option<Member>> {
        if self.eat(";").is_some() {
            return Ok(None);
        }
        let start = self.cur().span;
        if self.at("{") || (self.at("static") && self.peek_is(1, "{")) {
            let is_static = self.eat("static").is_some();
            let body = self.block()?;
            return Ok(Some(Member::Initializer(Initializer {
                is_static,
                body,
                span: self.span_from(start),
            })));
        }
        let doc = self.doc_before(self.pos);
        let modifiers = self.modifiers()?;
        if self.at("class") || self.at("interface") || self.at("enum") || self.at("@") {
            return Ok(Some(Member::Type(self.type_decl(modifiers, doc, start)?)));
        }
        let type_params = if self.at("<") { self.type_params()? } else { Vec::new() };
        if self.at_ident() && self.peek_is(1, "(") {
            let name = self.ident()?;
            if name.name != type_name {
                return Err(ParseError {
                    span: name.span,
                    message: "invalid method declaration; return type required".into(),
                });
            }
            return self
                .method_rest(modifiers, type_params, None, name, doc, start)
                .map(|m| Some(Member::Method(m)));
        }
        let ty = self.parse_type()?;
        let name = self.ident()?;
        if self.at("(") {
            return self
                .method_rest(modifiers, type_params, Some(ty), name, doc, start)
                .map(|m| Some(Member::Method(m)));
        }
        if !type_params.is_empty() {
            return self.error("expected '('");
        }
        let vars = self.declarators_from(name)?;
        self.expect(";")?;
        Ok(Some(Member::Field(FieldDecl {
            modifiers,
            ty,
            vars,
            doc,
            span: self.span_from(start),
        })))
    }

    fn method_rest(
        &mut self,
        modifiers: Modifiers,
        type_params: Vec<TypeParam>,
        mut return_type: Option<TypeRef>,
        name: Ident,
        doc: Option<Comment>,
        start: Span,
    ) -> PResult<MethodDecl> {
        let open_paren = self.expect("(")?;
        let mut params = Vec::new();
        if !self.at(")") {
            loop {
                params.push(self.param()?);
                if self.eat(",").is_none() {
                    break;
                }
            }
        }
        self.expect(")")?;
        while self.at("[") && self.peek_is(1, "]") {
            self.bump();
            self.bump();
            if let Some(rt) = return_type.as_mut() {
                rt.dims += 1;
            }
        }
        let mut throws = Vec::new();
        if self.eat("throws").is_some() {
            throws.push(self.parse_type()?);
            while self.eat(",").is_some() {
                throws.push(self.parse_type()?);
            }
        }
        let body = if self.eat(";").is_some() {
            None
        } else if self.at("{") {
            Some(self.block()?)
        } else {
            return self.error("expected '{' or ';'");
        };
        Ok(MethodDecl {
            modifiers,
            type_params,
            is_constructor: return_type.is_none(),
            return_type,
            name,
            params,
            throws,
            body,
            doc,
            open_paren,
            span: self.span_from(start),
        })
    }

    fn param(&mut self) -> PResult<Param> {
        let start = self.cur().span;
        let modifiers = self.modifiers()?;
        let mut ty = self.parse_type()?;
        let varargs = self.eat("...").is_some();
        if self.at("this") {
            return self.error("receiver parameters are not supported");
        }
        let name = self.ident()?;
        while self.at("[") && self.peek_is(1, "]") {
            self.bump();
            self.bump();
            ty.dims += 1;
        }
        Ok(Param {
            modifiers,
            ty,
            name,
            varargs,
            span: self.span_from(start),
        })
    }

    fn declarators_from(&mut self, first: Ident) -> PResult<Vec<VarDeclarator>> {
        let mut vars = vec![self.declarator_rest(first)?];
        while self.eat(",").is_some() {
            let name = self.ident()?;
            vars.push(self.declarator_rest(name)?);
        }
        Ok(vars)
    }

    fn declarator_rest(&mut self, name: Ident) -> PResult<VarDeclarator> {
        let mut dims = 0;
        while self.at("[") && self.peek_is(1, "]") {
            self.bump();
            self.bump();
            dims += 1;
        }
        let init = if self.eat("=").is_some() {
            Some(self.var_init()?)
        } else {
            None
        };
        let span = self.span_from(name.span);
        Ok(VarDeclarator { name, dims, init, span })
    }

    fn var_init(&mut self) -> PResult<Expr> {
        if self.at("{") {
            self.array_init()
        } else {
            self.expression()
        }
    }

    fn array_init(&mut self) -> PResult<Expr> {
        let s = self.expect("{")?;
        let mut items = Vec::new();
        while !self.at("}") {
            items.push(self.var_init()?);
            if self.eat(",").is_none() {
                break;
            }
        }
        self.expect("}")?;
        Ok(Expr {
            kind: ExprKind::ArrayInit(items),
            span: self.span_from(s),
        })
    }

    // ---- types ----

    fn is_primitive_kw(t: &SigTok) -> bool {
        t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.text.as_str())
    }

    pub(crate) fn parse_type(&mut self) -> PResult<TypeRef> {
        let mut ty = self.type_no_dims()?;
        while self.at("[") && self.peek_is(1, "]") {
            self.bump();
            self.bump();
            ty.dims += 1;
        }
        ty.span = self.span_from(ty.span);
        Ok(ty)
    }

    fn type_no_dims(&mut self) -> PResult<TypeRef> {
        while self.at("@") {
            self.annotation()?;
        }
        let start = self.cur().span;
        if Self::is_primitive_kw(self.cur()) {
            let name = self.cur().text.clone();
            self.bump();
            return Ok(TypeRef {
                name,
                args: Vec::new(),
                dims: 0,
                span: start,
            });
        }
        let mut name = self.ident()?.name;
        let mut args = Vec::new();
        if self.at("<") {
            args.extend(self.type_args()?);
        }
        while self.at(".") && self.peek(1).kind == TokenKind::Identifier {
            self.bump();
            name.push('.');
            name.push_str(&self.ident()?.name);
            if self.at("<") {
                args.extend(self.type_args()?);
            }
        }
        Ok(TypeRef {
            name,
            args,
            dims: 0,
            span: self.span_from(start),
        })
    }

    fn type_args(&mut self) -> PResult<Vec<TypeArg>> {
        self.expect("<")?;
        let mut out = Vec::new();
        if self.eat(">").is_some() {
            return Ok(out);
        }
        loop {
            while self.at("@") {
                self.annotation()?;
            }
            if self.at("?") {
                let s = self.bump();
                let bound = if self.eat("extends").is_some() || self.eat("super").is_some() {
                    Some(self.parse_type()?)
                } else {
                    None
                };
                out.push(TypeArg::Wildcard {
                    bound,
                    span: self.span_from(s),
                });
            } else {
                out.push(TypeArg::Type(self.parse_type()?));
            }
            if self.eat(",").is_none() {
                break;
            }
        }
        self.expect(">")?;
        Ok(out)
    }

    // ---- statements ----

    pub(crate) fn block(&mut self) -> PResult<Block> {
        let open = self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.at("}") {
            if self.is_eof() {
                return self.error("expected '}'");
            }
            stmts.push(self.statement()?);
        }
        let close = self.expect("}")?;
        Ok(Block { stmts, open, close })
    }

    fn stmt(&self, kind: StmtKind, start: Span) -> Stmt {
        Stmt {
            kind,
            span: self.span_from(start),
        }
    }

    fn paren_expr(&mut self) -> PResult<Expr> {
        self.expect("(")?;
        let e = self.expression()?;
        self.expect(")")?;
        Ok(e)
    }

    fn looks_like_local_decl(&mut self) -> bool {
        let t = self.cur();
        if !(t.kind == TokenKind::Identifier || Self::is_primitive_kw(t)) || t.text == "void" {
            return false;
        }
        let save = self.pos;
        let ok = self.parse_type().is_ok()
            && self.at_ident()
            && (self.peek_is(1, "=")
                || self.peek_is(1, ";")
                || self.peek_is(1, ",")
                || self.peek_is(1, "[")
                || self.peek_is(1, ":"));
        self.pos = save;
        ok
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let start = self.cur().span;
        let t = self.cur().clone();
        if Self::is_punct(&t) {
            match t.text.as_str() {
                "{" => {
                    let b = self.block()?;
                    return Ok(self.stmt(StmtKind::Block(b), start));
                }
                ";" => {
                    self.bump();
                    return Ok(self.stmt(StmtKind::Empty, start));
                }
                "if" => {
                    self.bump();
                    let cond = self.paren_expr()?;
                    let then = Box::new(self.statement()?);
                    let (else_kw, otherwise) = match self.eat("else") {
                        Some(kw) => (Some(kw), Some(Box::new(self.statement()?))),
                        None => (None, None),
                    };
                    return Ok(self.stmt(
                        StmtKind::If {
                            cond,
                            then,
                            else_kw,
                            otherwise,
                        },
                        start,
                    ));
                }
                "while" => {
                    self.bump();
                    let cond = self.paren_expr()?;
                    let body = Box::new(self.statement()?);
                    return Ok(self.stmt(StmtKind::While { cond, body }, start));
                }
                "do" => {
                    self.bump();
                    let body = Box::new(self.statement()?);
                    let while_kw = self.expect("while")?;
                    let cond = self.paren_expr()?;
                    self.expect(";")?;
                    return Ok(self.stmt(StmtKind::DoWhile { body, while_kw, cond }, start));
                }
                "for" => return self.for_statement(start),
                "switch" => return self.switch_statement(start),
                "try" => return self.try_statement(start),
                "return" => {
                    self.bump();
                    let value = if self.at(";") { None } else { Some(self.expression()?) };
                    self.expect(";")?;
                    return Ok(self.stmt(StmtKind::Return(value), start));
                }
                "throw" => {
                    self.bump();
                    let e = self.expression()?;
                    self.expect(";")?;
                    return Ok(self.stmt(StmtKind::Throw(e), start));
                }
                "break" | "continue" => {
                    self.bump();
                    let label = if self.at_ident() { Some(self.ident()?) } else { None };
                    self.expect(";")?;
                    let kind = if t.text == "break" {
                        StmtKind::Break(label)
                    } else {
                        StmtKind::Continue(label)
                    };
                    return Ok(self.stmt(kind, start));
                }
                "synchronized" if self.peek_is(1, "(") => {
                    self.bump();
                    let lock = self.paren_expr()?;
                    let body = self.block()?;
                    return Ok(self.stmt(StmtKind::Synchronized { lock, body }, start));
                }
                "assert" => {
                    self.bump();
                    let cond = self.expression()?;
                    let message = if self.eat(":").is_some() {
                        Some(self.expression()?)
                    } else {
                        None
                    };
                    self.expect(";")?;
                    return Ok(self.stmt(StmtKind::Assert { cond, message }, start));
                }
                "class" | "interface" | "enum" | "final" | "abstract" | "@" | "static" | "strictfp" => {
                    let mods = self.modifiers()?;
                    if self.at("class") || self.at("interface") || self.at("enum") {
                        let td = self.type_decl(mods, None, start)?;
                        return Ok(self.stmt(StmtKind::LocalClass(Box::new(td)), start));
                    }
                    let decl = self.local_var_decl(mods)?;
                    self.expect(";")?;
                    return Ok(self.stmt(StmtKind::LocalVar(decl), start));
                }
                _ => {}
            }
        }
        if t.kind == TokenKind::Identifier && self.peek_is(1, ":") {
            let label = self.ident()?;
            self.bump();
            let body = Box::new(self.statement()?);
            return Ok(self.stmt(StmtKind::Labeled { label, body }, start));
        }
        if self.looks_like_local_decl() {
            let decl = self.local_var_decl(Modifiers::default())?;
            self.expect(";")?;
            return Ok(self.stmt(StmtKind::LocalVar(decl), start));
        }
        let e = self.expression()?;
        Self::check_expression_statement(&e)?;
        self.expect(";")?;
        Ok(self.stmt(StmtKind::Expr(e), start))
    }

    fn check_expression_statement(e: &Expr) -> PResult<()> {
        let ok = matches!(
            e.kind,
            ExprKind::Assign { .. }
                | ExprKind::MethodCall { .. }
                | ExprKind::New { .. }
                | ExprKind::Unary {
                    op: UnaryOp::PreInc | UnaryOp::PreDec | UnaryOp::PostInc | UnaryOp::PostDec,
                    ..
                }
        );
        if ok {
            Ok(())
        } else {
            Err(ParseError {
                span: e.span,
                message: "not a statement".into(),
            })
        }
    }

    fn local_var_decl(&mut self, modifiers: Modifiers) -> PResult<LocalVarDecl> {
        let ty = self.parse_type()?;
        let name = self.ident()?;
        let vars = self.declarators_from(name)?;
        Ok(LocalVarDecl { modifiers, ty, vars })
    }

    fn for_statement(&mut self, start: Span) -> PResult<Stmt> {
        self.expect("for")?;
        self.expect("(")?;
        let each = self.speculate(|p| {
            let mods = p.modifiers()?;
            let ty = p.parse_type()?;
            let name = p.ident()?;
            let mut ty = ty;
            while p.at("[") && p.peek_is(1, "]") {
                p.bump();
                p.bump();
                ty.dims += 1;
            }
            if p.at(":") {
                p.bump();
                Ok((mods, ty, name))
            } else {
                p.error("expected ':'")
            }
        });
        if let Some((modifiers, ty, name)) = each {
            let iterable = self.expression()?;
            self.expect(")")?;
            let body = Box::new(self.statement()?);
            let span = name.span;
            let var = LocalVarDecl {
                modifiers,
                ty,
                vars: vec![VarDeclarator {
                    name,
                    dims: 0,
                    init: None,
                    span,
                }],
            };
            return Ok(self.stmt(StmtKind::ForEach { var, iterable, body }, start));
        }
        let mut init = Vec::new();
        if !self.at(";") {
            let s = self.cur().span;
            let has_mods = self.at("final") || self.at("@");
            if has_mods || self.looks_like_local_decl() {
                let mods = self.modifiers()?;
                let decl = self.local_var_decl(mods)?;
                init.push(self.stmt(StmtKind::LocalVar(decl), s));
            } else {
                loop {
                    let s = self.cur().span;
                    let e = self.expression()?;
                    Self::check_expression_statement(&e)?;
                    init.push(self.stmt(StmtKind::Expr(e), s));
                    if self.eat(",").is_none() {
                        break;
                    }
                }
            }
        }
        self.expect(";")?;
        let cond = if self.at(";") { None } else { Some(self.expression()?) };
        self.expect(";")?;
        let mut update = Vec::new();
        if !self.at(")") {
            loop {
                let e = self.expression()?;
                Self::check_expression_statement(&e)?;
                update.push(e);
                if self.eat(",").is_none() {
                    break;
                }
            }
        }
        self.expect(")")?;
        let body = Box::new(self.statement()?);
        Ok(self.stmt(
            StmtKind::For {
                init,
                cond,
                update,
                body,
            },
            start,
        ))
    }

    fn switch_statement(&mut self, start: Span) -> PResult<Stmt> {
        self.expect("switch")?;
        let selector = self.paren_expr()?;
        let open = self.expect("{")?;
        let mut arms = Vec::new();
        while !self.at("}") {
            let ls = self.cur().span;
            let label = if self.eat("default").is_some() {
                CaseLabel::Default
            } else if self.eat("case").is_some() {
                let prev = std::mem::replace(&mut self.no_lambda, true);
                let mut exprs = Vec::new();
                let r = (|| {
                    loop {
                        exprs.push(self.ternary()?);
                        if self.eat(",").is_none() {
                            break;
                        }
                    }
                    Ok(())
                })();
                self.no_lambda = prev;
                r?;
                CaseLabel::Case(exprs)
            } else {
                return self.error("expected 'case', 'default', or '}'");
            };
            let arrow = if self.eat("->").is_some() {
                true
            } else {
                self.expect(":")?;
                false
            };
            let label_span = self.span_from(ls);
            let mut body = Vec::new();
            if arrow {
                let s = self.cur().span;
                if self.at("{") {
                    let b = self.block()?;
                    body.push(self.stmt(StmtKind::Block(b), s));
                } else if self.at("throw") {
                    body.push(self.statement()?);
                } else {
                    let e = self.expression()?;
                    self.expect(";")?;
                    body.push(self.stmt(StmtKind::Expr(e), s));
                }
            } else {
                while !self.at("case") && !self.at("default") && !self.at("}") {
                    if self.is_eof() {
                        return self.error("expected '}'");
                    }
                    body.push(self.statement()?);
                }
            }
            arms.push(SwitchArm {
                label,
                label_span,
                arrow,
                body,
            });
        }
        let close = self.expect("}")?;
        Ok(self.stmt(
            StmtKind::Switch {
                selector,
                arms,
                open,
                close,
            },
            start,
        ))
    }

    fn try_statement(&mut self, start: Span) -> PResult<Stmt> {
        self.expect("try")?;
        let mut resources = Vec::new();
        if self.eat("(").is_some() {
            while !self.at(")") {
                let s = self.cur().span;
                let has_mods = self.at("final") || self.at("@");
                if has_mods || self.looks_like_local_decl() {
                    let mods = self.modifiers()?;
                    let ty = self.parse_type()?;
                    let name = self.ident()?;
                    self.expect("=")?;
                    let init = self.expression()?;
                    resources.push(Resource {
                        decl: Some((mods, ty, name)),
                        init,
                        span: self.span_from(s),
                    });
                } else {
                    let init = self.expression()?;
                    resources.push(Resource {
                        decl: None,
                        init,
                        span: self.span_from(s),
                    });
                }
                if self.eat(";").is_none() {
                    break;
                }
            }
            self.expect(")")?;
        }
        let body = self.block()?;
        let mut catches = Vec::new();
        while self.at("catch") {
            let cs = self.bump();
            self.expect("(")?;
            let ps = self.cur().span;
            let modifiers = self.modifiers()?;
            let ty = self.parse_type()?;
            let mut alternatives = Vec::new();
            while self.eat("|").is_some() {
                alternatives.push(self.parse_type()?);
            }
            let name = self.ident()?;
            let param = Param {
                modifiers,
                ty,
                name,
                varargs: false,
                span: self.span_from(ps),
            };
            self.expect(")")?;
            let body = self.block()?;
            catches.push(CatchClause {
                param,
                alternatives,
                body,
                span: self.span_from(cs),
            });
        }
        let (finally_kw, finally) = match self.eat("finally") {
            Some(kw) => (Some(kw), Some(self.block()?)),
            None => (None, None),
        };
        if catches.is_empty() && finally.is_none() && resources.is_empty() {
            return self.error("expected 'catch' or 'finally'");
        }
        Ok(self.stmt(
            StmtKind::Try {
                resources,
                body,
                catches,
                finally_kw,
                finally,
            },
            start,
        ))
    }

    // ---- expressions ----

    fn mk(&self, kind: ExprKind, start: Span) -> Expr {
        Expr {
            kind,
            span: self.span_from(start),
        }
    }

    pub(crate) fn expression(&mut self) -> PResult<Expr> {
        if self.lambda_ahead() {
            return self.lambda();
        }
        let start = self.cur().span;
        let lhs = self.ternary()?;
        if let Some((op, n)) = self.peek_assign_op() {
            for _ in 0..n {
                self.bump();
            }
            let value = self.expression()?;
            return Ok(self.mk(
                ExprKind::Assign {
                    op,
                    target: Box::new(lhs),
                    value: Box::new(value),
                },
                start,
            ));
        }
        Ok(lhs)
    }

    fn peek_assign_op(&self) -> Option<(Option<BinaryOp>, usize)> {
        let t = self.cur();
        if t.kind != TokenKind::Operator {
            return None;
        }
        let simple = match t.text.as_str() {
            "=" => Some(None),
            "+=" => Some(Some(BinaryOp::Add)),
            "-=" => Some(Some(BinaryOp::Sub)),
            "*=" => Some(Some(BinaryOp::Mul)),
            "/=" => Some(Some(BinaryOp::Div)),
            "%=" => Some(Some(BinaryOp::Rem)),
            "&=" => Some(Some(BinaryOp::BitAnd)),
            "|=" => Some(Some(BinaryOp::BitOr)),
            "^=" => Some(Some(BinaryOp::BitXor)),
            "<<=" => Some(Some(BinaryOp::Shl)),
            _ => None,
        };
        if let Some(op) = simple {
            return Some((op, 1));
        }
        if t.text == ">" && t.glued {
            let t1 = self.peek(1);
            if t1.text == ">=" {
                return Some((Some(BinaryOp::Shr), 2));
            }
            if t1.text == ">" && t1.glued && self.peek(2).text == ">=" {
                return Some((Some(BinaryOp::UShr), 3));
            }
        }
        None
    }

    fn peek_binop(&self) -> Option<(BinaryOp, usize)> {
        let t = self.cur();
        if t.kind != TokenKind::Operator {
            return None;
        }
        if t.text == ">" && t.glued {
            let t1 = self.peek(1);
            if t1.text == ">=" {
                return None;
            }
            if t1.text == ">" {
                if t1.glued {
                    let t2 = self.peek(2);
                    if t2.text == ">=" {
                        return None;
                    }
                    if t2.text == ">" {
                        return Some((BinaryOp::UShr, 3));
                    }
                }
                return Some((BinaryOp::Shr, 2));
            }
        }
        BinaryOp::from_symbol(&t.text).map(|op| (op, 1))
    }

    fn ternary(&mut self) -> PResult<Expr> {
        let start = self.cur().span;
        let cond = self.binary(1)?;
        if self.eat("?").is_some() {
            let then = if self.lambda_ahead() {
                self.lambda()?
            } else {
                self.ternary()?
            };
            self.expect(":")?;
            let otherwise = if self.lambda_ahead() {
                self.lambda()?
            } else {
                self.ternary()?
            };
            return Ok(self.mk(
                ExprKind::Conditional {
                    cond: Box::new(cond),
                    then: Box::new(then),
                    otherwise: Box::new(otherwise),
                },
                start,
            ));
        }
        Ok(cond)
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let start = self.cur().span;
        let mut lhs = self.unary()?;
        loop {
            if self.at("instanceof") && INSTANCEOF_PRECEDENCE >= min_prec {
                self.bump();
                self.eat("final");
                let ty = self.parse_type()?;
                let binding = if self.at_ident() { Some(self.ident()?) } else { None };
                lhs = self.mk(
                    ExprKind::InstanceOf {
                        expr: Box::new(lhs),
                        ty,
                        binding,
                    },
                    start,
                );
                continue;
            }
            let Some((op, n)) = self.peek_binop() else { break };
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            for _ in 0..n {
                self.bump();
            }
            let rhs = self.binary(prec + 1)?;
            lhs = self.mk(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                start,
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let start = self.cur().span;
        let t = self.cur();
        if t.kind == TokenKind::Operator {
            let op = match t.text.as_str() {
                "+" => Some(UnaryOp::Plus),
                "-" => Some(UnaryOp::Neg),
                "!" => Some(UnaryOp::Not),
                "~" => Some(UnaryOp::BitNot),
                "++" => Some(UnaryOp::PreInc),
                "--" => Some(UnaryOp::PreDec),
                _ => None,
            };
            if let Some(op) = op {
                self.bump();
                let operand = self.unary()?;
                return Ok(self.mk(
                    ExprKind::Unary {
                        op,
                        operand: Box::new(operand),
                    },
                    start,
                ));
            }
        }
        if self.at("(") {
            if let Some(cast) = self.try_cast()? {
                return Ok(cast);
            }
        }
        let mut e = self.primary()?;
        loop {
            let op = if self.at("++") {
                UnaryOp::PostInc
            } else if self.at("--") {
                UnaryOp::PostDec
            } else {
                break;
            };
            self.bump();
            e = self.mk(
                ExprKind::Unary {
                    op,
                    operand: Box::new(e),
                },
                start,
            );
        }
        Ok(e)
    }

    fn try_cast(&mut self) -> PResult<Option<Expr>> {
        let start = self.cur().span;
        let next = self.peek(1).clone();
        let primitive = Self::is_primitive_kw(&next);
        if !primitive && next.kind != TokenKind::Identifier {
            return Ok(None);
        }
        let save = self.pos;
        self.bump();
        let ty = match self.parse_type() {
            Ok(ty) => ty,
            Err(_) => {
                self.pos = save;
                return Ok(None);
            }
        };
        while self.at("&") && !primitive {
            if self
                .speculate(|p| {
                    p.bump();
                    p.parse_type()
                })
                .is_none()
            {
                break;
            }
        }
        if !self.at(")") {
            self.pos = save;
            return Ok(None);
        }
        let after = self.peek(1);
        let castable = if primitive {
            match after.kind {
                TokenKind::Operator => matches!(after.text.as_str(), "+" | "-" | "!" | "~" | "++" | "--"),
                TokenKind::Separator => after.text == "(",
                TokenKind::Whitespace => false,
                _ => true,
            }
        } else {
            match after.kind {
                TokenKind::Identifier | TokenKind::Literal(_) => true,
                TokenKind::Keyword => {
                    matches!(after.text.as_str(), "this" | "super" | "new") || PRIMITIVES.contains(&after.text.as_str())
                }
                TokenKind::Operator => matches!(after.text.as_str(), "!" | "~"),
                TokenKind::Separator => after.text == "(",
                _ => false,
            }
        };
        if !castable {
            self.pos = save;
            return Ok(None);
        }
        self.bump();
        let operand = if self.lambda_ahead() {
            self.lambda()?
        } else {
            self.unary()?
        };
        Ok(Some(self.mk(
            ExprKind::Cast {
                ty,
                expr: Box::new(operand),
            },
            start,
        )))
    }

    fn lambda_ahead(&self) -> bool {
        if self.no_lambda {
            return false;
        }
        if self.at_ident() {
            return self.peek_is(1, "->");
        }
        if !self.at("(") {
            return false;
        }
        let mut depth = 0usize;
        let mut i = self.pos;
        while i < self.toks.len() - 1 {
            let t = &self.toks[i];
            if Self::is_punct(t) {
                match t.text.as_str() {
                    "(" => depth += 1,
                    ")" => {
                        depth -= 1;
                        if depth == 0 {
                            let n = &self.toks[i + 1];
                            return Self::is_punct(n) && n.text == "->";
                        }
                    }
                    ";" | "{" | "}" => return false,
                    _ => {}
                }
            }
            i += 1;
        }
        false
    }

    fn lambda(&mut self) -> PResult<Expr> {
        let start = self.cur().span;
        let mut params = Vec::new();
        if self.at_ident() {
            params.push(LambdaParam {
                ty: None,
                name: self.ident()?,
            });
        } else {
            self.expect("(")?;
            while !self.at(")") {
                if self.at_ident() && (self.peek_is(1, ",") || self.peek_is(1, ")")) {
                    params.push(LambdaParam {
                        ty: None,
                        name: self.ident()?,
                    });
                } else {
                    self.modifiers()?;
                    let ty = self.parse_type()?;
                    let name = self.ident()?;
                    params.push(LambdaParam { ty: Some(ty), name });
                }
                if self.eat(",").is_none() {
                    break;
                }
            }
            self.expect(")")?;
        }
        self.expect("->")?;
        let prev = std::mem::replace(&mut self.no_lambda, false);
        let body = if self.at("{") {
            self.block().map(LambdaBody::Block)
        } else {
            self.expression().map(|e| LambdaBody::Expr(Box::new(e)))
        };
        self.no_lambda = prev;
        Ok(self.mk(ExprKind::Lambda { params, body: body? }, start))
    }

    fn arguments(&mut self) -> PResult<(Vec<Expr>, Span)> {
        let open = self.expect("(")?;
        let prev = std::mem::replace(&mut self.no_lambda, false);
        let mut args = Vec::new();
        let r = (|| {
            if !self.at(")") {
                loop {
                    args.push(self.expression()?);
                    if self.eat(",").is_none() {
                        break;
                    }
                }
            }
            self.expect(")")
        })();
        self.no_lambda = prev;
        r?;
        Ok((args, open))
    }

    fn primary(&mut self) -> PResult<Expr> {
        let start = self.cur().span;
        let t = self.cur().clone();
        let mut e = match t.kind {
            TokenKind::Literal(kind) => {
                self.bump();
                self.mk(ExprKind::Literal(Literal { kind, text: t.text }), start)
            }
            TokenKind::Identifier => {
                if self.peek_is(1, "(") {
                    let name = self.ident()?;
                    let (args, open_paren) = self.arguments()?;
                    self.mk(
                        ExprKind::MethodCall {
                            target: None,
                            type_args: Vec::new(),
                            name,
                            args,
                            open_paren,
                        },
                        start,
                    )
                } else {
                    self.bump();
                    self.mk(ExprKind::Name(t.text), start)
                }
            }
            TokenKind::Keyword => match t.text.as_str() {
                "this" | "super" => {
                    if self.peek_is(1, "(") {
                        let name = Ident {
                            name: t.text.clone(),
                            span: self.bump(),
                        };
                        let (args, open_paren) = self.arguments()?;
                        self.mk(
                            ExprKind::MethodCall {
                                target: None,
                                type_args: Vec::new(),
                                name,
                                args,
                                open_paren,
                            },
                            start,
                        )
                    } else {
                        self.bump();
                        let kind = if t.text == "this" {
                            ExprKind::This
                        } else {
                            ExprKind::Super
                        };
                        self.mk(kind, start)
                    }
                }
                "new" => self.creation(None, start)?,
                "switch" => return self.error("switch expressions are not supported"),
                _ if Self::is_primitive_kw(&t) => {
                    let ty = self.parse_type()?;
                    if self.at(".") && self.peek_is(1, "class") {
                        self.bump();
                        self.bump();
                        self.mk(ExprKind::ClassLit(ty), start)
                    } else if self.at("::") {
                        self.mk(ExprKind::TypeExpr(ty), start)
                    } else {
                        return self.error("expected '.class'");
                    }
                }
                _ => return self.error("expected expression"),
            },
            TokenKind::Separator if t.text == "(" => {
                self.bump();
                let prev = std::mem::replace(&mut self.no_lambda, false);
                let inner = self.expression();
                self.no_lambda = prev;
                let inner = inner?;
                self.expect(")")?;
                self.mk(ExprKind::Paren(Box::new(inner)), start)
            }
            _ => return self.error("expected expression"),
        };
        loop {
            if self.at(".") {
                self.bump();
                if self.at("<") {
                    let type_args = self.type_args()?;
                    let name = self.ident()?;
                    let (args, open_paren) = self.arguments()?;
                    e = self.mk(
                        ExprKind::MethodCall {
                            target: Some(Box::new(e)),
                            type_args,
                            name,
                            args,
                            open_paren,
                        },
                        start,
                    );
                } else if self.at("new") {
                    e = self.creation(Some(e), start)?;
                } else if self.at("this") || self.at("super") {
                    let s = self.cur().span;
                    let name = self.cur().text.clone();
                    self.bump();
                    e = self.mk(
                        ExprKind::FieldAccess {
                            target: Box::new(e),
                            name: Ident { name, span: s },
                        },
                        start,
                    );
                } else if self.at("class") {
                    self.bump();
                    let ty = Self::expr_to_type(&e)?;
                    e = self.mk(ExprKind::ClassLit(ty), start);
                } else {
                    let name = self.ident()?;
                    if self.at("(") {
                        let (args, open_paren) = self.arguments()?;
                        e = self.mk(
                            ExprKind::MethodCall {
                                target: Some(Box::new(e)),
                                type_args: Vec::new(),
                                name,
                                args,
                                open_paren,
                            },
                            start,
                        );
                    } else {
                        e = self.mk(
                            ExprKind::FieldAccess {
                                target: Box::new(e),
                                name,
                            },
                            start,
                        );
                    }
                }
            } else if self.at("[") {
                if self.peek_is(1, "]") {
                    let mut ty = Self::expr_to_type(&e)?;
                    while self.at("[") && self.peek_is(1, "]") {
                        self.bump();
                        self.bump();
                        ty.dims += 1;
                    }
                    ty.span = self.span_from(start);
                    if self.at(".") && self.peek_is(1, "class") {
                        self.bump();
                        self.bump();
                        e = self.mk(ExprKind::ClassLit(ty), start);
                    } else if self.at("::") {
                        e = self.mk(ExprKind::TypeExpr(ty), start);
                    } else {
                        return self.error("expected '.class' or '::'");
                    }
                } else {
                    self.bump();
                    let prev = std::mem::replace(&mut self.no_lambda, false);
                    let index = self.expression();
                    self.no_lambda = prev;
                    let index = index?;
                    self.expect("]")?;
                    e = self.mk(
                        ExprKind::ArrayAccess {
                            array: Box::new(e),
                            index: Box::new(index),
                        },
                        start,
                    );
                }
            } else if self.at("::") {
                self.bump();
                let name = if self.at("new") {
                    let s = self.bump();
                    Ident {
                        name: "new".into(),
                        span: s,
                    }
                } else {
                    self.ident()?
                };
                e = self.mk(
                    ExprKind::MethodRef {
                        target: Box::new(e),
                        name,
                    },
                    start,
                );
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn expr_to_type(e: &Expr) -> PResult<TypeRef> {
        fn dotted(e: &Expr) -> Option<String> {
            match &e.kind {
                ExprKind::Name(n) => Some(n.clone()),
                ExprKind::FieldAccess { target, name } => Some(format!("{}.{}", dotted(target)?, name.name)),
                _ => None,
            }
        }
        match dotted(e) {
            Some(name) => Ok(TypeRef {
                name,
                args: Vec::new(),
                dims: 0,
                span: e.span,
            }),
            None => Err(ParseError {
                span: e.span,
                message: "expected a type name".into(),
            }),
        }
    }

    fn creation(&mut self, outer: Option<Expr>, start: Span) -> PResult<Expr> {
        self.expect("new")?;
        if self.at("<") {
            self.type_args()?;
        }
        let ty = self.type_no_dims()?;
        if self.at("[") {
            let mut dims = Vec::new();
            while self.at("[") {
                self.bump();
                if self.eat("]").is_some() {
                    dims.push(None);
                } else {
                    let prev = std::mem::replace(&mut self.no_lambda, false);
                    let d = self.expression();
                    self.no_lambda = prev;
                    dims.push(Some(d?));
                    self.expect("]")?;
                }
            }
            let init = if self.at("{") {
                Some(Box::new(self.array_init()?))
            } else {
                None
            };
            if init.is_none() && dims.first().is_some_and(|d| d.is_none()) {
                return self.error("array creation needs a dimension or an initializer");
            }
            return Ok(self.mk(ExprKind::NewArray { ty, dims, init }, start));
        }
        let (args, open_paren) = self.arguments()?;
        let body = if self.at("{") {
            let name = ty.simple_name().to_string();
            Some(self.class_body(&name)?)
        } else {
            None
        };
        Ok(self.mk(
            ExprKind::New {
                outer: outer.map(Box::new),
                ty,
                args,
                body,
                open_paren,
            },
            start,
        ))
    }
}
