//! Hand-written Java fixtures, one or more positive and negative cases per
//! catalog rule. Expected locations are `(file, line, column)` of the
//! reported span start, 1-based.

use smellbench_core::java::{parse, SourceFile};
use smellbench_core::smells::{detect_units, RuleSet, Subject};

pub struct RuleFixture {
    pub rule: &'static str,
    pub name: &'static str,
    pub files: Vec<(String, String)>,
    pub expect: Vec<(String, u32, u32)>,
}

impl RuleFixture {
    pub fn positive(&self) -> bool {
        !self.expect.is_empty()
    }

    /// Runs the fixture with only its rule enabled and compares locations.
    pub fn check(&self) -> Result<(), String> {
        let outcomes: Vec<_> = self
            .files
            .iter()
            .map(|(p, t)| parse(SourceFile::new(p.clone(), t.clone())))
            .collect();
        let rules = RuleSet::only(&[self.rule]).map_err(|e| e.to_string())?;
        let report = detect_units(Subject::new(self.name, "fixture"), &outcomes, &rules);
        if !report.parse_ok {
            return Err(format!("{}: parse failure {:?}", self.name, report.parse_error));
        }
        let mut got: Vec<(String, u32, u32)> = report
            .violations
            .iter()
            .map(|v| (v.file.clone(), v.span.start_line, v.span.start_col))
            .collect();
        got.sort();
        let mut want = self.expect.clone();
        want.sort();
        if got != want {
            return Err(format!("{} [{}]: expected {want:?}, got {got:?}", self.name, self.rule));
        }
        if report.count(self.rule) != want.len() as u64 {
            return Err(format!("{}: per-rule count disagrees with violation list", self.name));
        }
        Ok(())
    }
}

fn one(rule: &'static str, name: &'static str, src: &str, at: &[(u32, u32)]) -> RuleFixture {
    RuleFixture {
        rule,
        name,
        files: vec![("A.java".into(), src.into())],
        expect: at.iter().map(|&(l, c)| ("A.java".into(), l, c)).collect(),
    }
}

fn many(rule: &'static str, name: &'static str, files: &[(&str, &str)], at: &[(&str, u32, u32)]) -> RuleFixture {
    RuleFixture {
        rule,
        name,
        files: files.iter().map(|(p, t)| (p.to_string(), t.to_string())).collect(),
        expect: at.iter().map(|&(f, l, c)| (f.to_string(), l, c)).collect(),
    }
}

/// `class <name> {` followed by `body` lines indented by four spaces.
fn class_with(name: &str, body: &[String]) -> String {
    let mut s = format!("class {name} {{\n");
    for line in body {
        s.push_str("    ");
        s.push_str(line);
        s.push('\n');
    }
    s.push_str("}\n");
    s
}

fn int_fields(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("int f{i};")).collect()
}

fn empty_methods(n: usize, modifier: &str) -> Vec<String> {
    (0..n).map(|i| format!("{modifier}void m{i}() {{ }}")).collect()
}

fn typed_fields(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("T{i} t{i};")).collect()
}

pub fn all() -> Vec<RuleFixture> {
    let mut v = Vec::new();
    naming(&mut v);
    complexity(&mut v);
    redundancy(&mut v);
    incompleteness(&mut v);
    alignment(&mut v);
    magic(&mut v);
    dead_code(&mut v);
    resources(&mut v);
    documentation(&mut v);
    modularity(&mut v);
    encapsulation(&mut v);
    hierarchy(&mut v);
    abstraction(&mut v);
    v
}

fn naming(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "local-variable-naming",
        "local_snake_case",
        "class A {\n    void m() {\n        int Bad_name = 1;\n        System.out.println(Bad_name);\n    }\n}\n",
        &[(3, 13)],
    ));
    v.push(one(
        "local-variable-naming",
        "local_camel_case",
        "class A {\n    void m() {\n        int goodName = 1;\n        System.out.println(goodName);\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "formal-parameter-naming",
        "param_upper",
        "class A {\n    void m(int Bad) {\n        System.out.println(Bad);\n    }\n}\n",
        &[(2, 16)],
    ));
    v.push(one(
        "formal-parameter-naming",
        "param_ok",
        "class A {\n    void m(int value) {\n        System.out.println(value);\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "method-naming",
        "method_upper",
        "class A {\n    void Run() {\n    }\n}\n",
        &[(2, 10)],
    ));
    v.push(one(
        "method-naming",
        "method_ok",
        "class A {\n    void run() {\n    }\n}\n",
        &[],
    ));
    v.push(one("class-naming", "class_snake", "class my_class {\n}\n", &[(1, 7)]));
    v.push(one("class-naming", "class_ok", "class MyClass {\n}\n", &[]));
    v.push(one(
        "generics-naming",
        "generic_two_letters",
        "class Box<Tt> {\n}\n",
        &[(1, 11)],
    ));
    v.push(one("generics-naming", "generic_ok", "class Box<T> {\n}\n", &[]));
    v.push(one(
        "abbreviation-as-word-in-name",
        "long_abbreviation",
        "class HTMLParser {\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "abbreviation-as-word-in-name",
        "short_abbreviation",
        "class IOStream {\n}\n",
        &[],
    ));
    v.push(one(
        "abstract-class-name",
        "abstract_without_prefix",
        "abstract class Shape {\n}\n",
        &[(1, 16)],
    ));
    v.push(one(
        "abstract-class-name",
        "prefix_without_abstract",
        "class AbstractShape {\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "abstract-class-name",
        "abstract_with_prefix",
        "abstract class AbstractShape {\n}\n",
        &[],
    ));
    v.push(one(
        "catch-parameter-name",
        "catch_upper",
        "class A {\n    void m() {\n        try { m(); } catch (RuntimeException E) { m(); }\n    }\n}\n",
        &[(3, 46)],
    ));
    v.push(one(
        "catch-parameter-name",
        "catch_ex",
        "class A {\n    void m() {\n        try { m(); } catch (RuntimeException ex) { m(); }\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "constant-name",
        "constant_camel",
        "class A {\n    static final int maxSize = 5;\n}\n",
        &[(2, 22)],
    ));
    v.push(one(
        "constant-name",
        "constant_upper",
        "class A {\n    static final int MAX_SIZE = 5;\n}\n",
        &[],
    ));
    v.push(one(
        "illegal-identifier-name",
        "local_named_record",
        "class A {\n    void m() {\n        int record = 1;\n        System.out.println(record);\n    }\n}\n",
        &[(3, 13)],
    ));
    v.push(one(
        "illegal-identifier-name",
        "local_containing_record",
        "class A {\n    void m() {\n        int recordCount = 1;\n        System.out.println(recordCount);\n    }\n}\n",
        &[],
    ));
}

fn complexity(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "simplify-boolean-expression",
        "compare_to_true",
        "class A {\n    boolean m(boolean b) {\n        if (b == true) {\n            return false;\n        }\n        return b;\n    }\n}\n",
        &[(3, 13)],
    ));
    v.push(one(
        "simplify-boolean-expression",
        "plain_condition",
        "class A {\n    boolean m(boolean b) {\n        if (b) {\n            return false;\n        }\n        return b;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "simplify-conditional",
        "null_check_then_instanceof",
        "class A {\n    boolean m(Object o) {\n        return o != null && o instanceof String;\n    }\n}\n",
        &[(3, 16)],
    ));
    v.push(one(
        "simplify-conditional",
        "instanceof_only",
        "class A {\n    boolean m(Object o) {\n        return o instanceof String;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "simplify-boolean-return",
        "if_else_literals",
        "class A {\n    boolean m(int x) {\n        if (x > 0) {\n            return true;\n        } else {\n            return false;\n        }\n    }\n}\n",
        &[(3, 9)],
    ));
    v.push(one(
        "simplify-boolean-return",
        "if_then_fallthrough_literal",
        "class A {\n    boolean m(int x) {\n        if (x > 0) {\n            return true;\n        }\n        return false;\n    }\n}\n",
        &[(3, 9)],
    ));
    v.push(one(
        "simplify-boolean-return",
        "if_with_side_effect",
        "class A {\n    boolean m(int x) {\n        if (x > 0) {\n            System.out.println(x);\n        }\n        return false;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "simplified-ternary",
        "ternary_true_branch",
        "class A {\n    boolean m(boolean a, boolean b) {\n        return a ? true : b;\n    }\n}\n",
        &[(3, 16)],
    ));
    v.push(one(
        "simplified-ternary",
        "ternary_plain",
        "class A {\n    boolean m(boolean a, boolean b) {\n        return a ? b : !b;\n    }\n}\n",
        &[],
    ));
    let long_line = |n: usize| format!("class A {{\n    String s = \"{}\";\n}}\n", "x".repeat(n));
    v.push(RuleFixture {
        expect: vec![("A.java".into(), 2, 1)],
        ..one("line-length", "line_of_101", &long_line(83), &[])
    });
    v.push(one("line-length", "line_of_100", &long_line(82), &[]));
    let long_method = |stmts: usize| {
        let mut s = String::from("class A {\n    void m() {\n");
        for _ in 0..stmts {
            s.push_str("        x++;\n");
        }
        s.push_str("    }\n    int x;\n}\n");
        s
    };
    v.push(RuleFixture {
        expect: vec![("A.java".into(), 2, 10)],
        ..one("method-length", "method_of_151_lines", &long_method(149), &[])
    });
    v.push(one("method-length", "method_of_150_lines", &long_method(148), &[]));
    v.push(one(
        "excessive-parameter-list",
        "eight_params",
        "class A {\n    void m(int a, int b, int c, int d, int e, int f, int g, int h) {\n    }\n}\n",
        &[(2, 10)],
    ));
    v.push(one(
        "excessive-parameter-list",
        "seven_params",
        "class A {\n    void m(int a, int b, int c, int d, int e, int f, int g) {\n    }\n}\n",
        &[],
    ));
}

fn redundancy(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "redundant-import",
        "lang_duplicate_same_package",
        "package p;\n\nimport java.lang.String;\nimport java.util.List;\nimport java.util.List;\nimport p.Other;\n\nclass A {\n    List<String> l;\n    Other o;\n}\n",
        &[(3, 1), (5, 1), (6, 1)],
    ));
    v.push(one(
        "redundant-import",
        "needed_import",
        "package p;\n\nimport java.util.List;\n\nclass A {\n    List<String> l;\n}\n",
        &[],
    ));
    v.push(one(
        "redundant-modifier",
        "interface_members",
        "interface I {\n    public abstract void m();\n    public static final int X = 1;\n}\n",
        &[(2, 5), (2, 12), (3, 5), (3, 12), (3, 19)],
    ));
    v.push(one(
        "redundant-modifier",
        "bare_interface_members",
        "interface I {\n    void m();\n    int X = 1;\n}\n",
        &[],
    ));
    let body =
        "        int s = a + b * 2 - a / 3 + b % 5;\n        s = s + a * b - (a + b) * (a - b);\n        return s;\n";
    v.push(one(
        "copy-paste",
        "duplicated_method_body",
        &format!(
            "class A {{\n    int m1(int a, int b) {{\n{body}    }}\n    int m2(int a, int b) {{\n{body}    }}\n}}\n"
        ),
        &[(7, 11)],
    ));
    v.push(one(
        "copy-paste",
        "short_duplicate",
        "class A {\n    int m1(int a, int b) {\n        return a + b;\n    }\n    int m2(int a, int b) {\n        return a + b;\n    }\n}\n",
        &[],
    ));
}

fn incompleteness(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "missing-switch-default",
        "switch_without_default",
        "class A {\n    void m(int x) {\n        switch (x) {\n            case 1:\n                m(0);\n                break;\n        }\n    }\n}\n",
        &[(3, 9)],
    ));
    v.push(one(
        "missing-switch-default",
        "switch_with_default",
        "class A {\n    void m(int x) {\n        switch (x) {\n            case 1:\n                m(0);\n                break;\n            default:\n                break;\n        }\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "todo-comment",
        "todo_with_colon",
        "class A {\n    // TODO: finish\n}\n",
        &[(2, 5)],
    ));
    v.push(one(
        "todo-comment",
        "todo_without_colon",
        "class A {\n    // TODO finish\n}\n",
        &[],
    ));
    v.push(one(
        "empty-control-statement",
        "semicolon_body_and_bare_block",
        "class A {\n    void m(int x) {\n        for (int i = 0; i < x; i++);\n        {\n        }\n    }\n}\n",
        &[(3, 9), (4, 9)],
    ));
    v.push(one(
        "empty-control-statement",
        "loop_with_body",
        "class A {\n    void m(int x) {\n        for (int i = 0; i < x; i++) {\n            m(i);\n        }\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "empty-catch-block",
        "empty_catch",
        "class A { void m() { try { } catch (Exception e) { } } }",
        &[(1, 30)],
    ));
    v.push(one(
        "empty-catch-block",
        "catch_with_comment",
        "class A { void m() { try { m(); } catch (Exception e) { /* ignored */ } } }",
        &[],
    ));
    v.push(one(
        "empty-block",
        "empty_try",
        "class A { void m() { try { } catch (Exception e) { } } }",
        &[(1, 22)],
    ));
    v.push(one(
        "empty-block",
        "empty_if_and_while",
        "class A {\n    void m(boolean b) {\n        if (b) {\n        }\n        while (b) {\n        }\n    }\n}\n",
        &[(3, 9), (5, 9)],
    ));
    v.push(one(
        "empty-block",
        "filled_if",
        "class A {\n    void m(boolean b) {\n        if (b) {\n            m(b);\n        }\n    }\n}\n",
        &[],
    ));
}

fn alignment(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "indentation",
        "under_indented_statement",
        "class A {\n    void m() {\n      int x = 1;\n        m();\n    }\n}\n",
        &[(3, 7)],
    ));
    v.push(one(
        "indentation",
        "well_indented",
        "class A {\n    void m() {\n        int x = 1;\n        m();\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "file-tab-character",
        "tabs",
        "class A {\n\tint x;\n\tint y;\n}\n",
        &[(2, 1)],
    ));
    v.push(one("file-tab-character", "spaces", "class A {\n    int x;\n}\n", &[]));
    v.push(one(
        "need-braces",
        "if_without_braces",
        "class A {\n    void m(boolean b) {\n        if (b)\n            m(b);\n    }\n}\n",
        &[(3, 9)],
    ));
    v.push(one(
        "need-braces",
        "if_with_braces",
        "class A {\n    void m(boolean b) {\n        if (b) {\n            m(b);\n        }\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "useless-parentheses",
        "parenthesised_return",
        "class A {\n    int m(int a) {\n        return (a);\n    }\n}\n",
        &[(3, 16)],
    ));
    v.push(one(
        "useless-parentheses",
        "grouping_parentheses",
        "class A {\n    int m(int a) {\n        return (a + 1) * 2;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "left-curly",
        "brace_on_next_line",
        "class A\n{\n    void m() {\n    }\n}\n",
        &[(2, 1)],
    ));
    v.push(one(
        "left-curly",
        "brace_at_line_end",
        "class A {\n    void m() {\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "right-curly",
        "else_on_next_line",
        "class A {\n    void m(boolean b) {\n        if (b) {\n            m(b);\n        }\n        else {\n            m(!b);\n        }\n    }\n}\n",
        &[(5, 9)],
    ));
    v.push(one(
        "right-curly",
        "else_on_same_line",
        "class A {\n    void m(boolean b) {\n        if (b) {\n            m(b);\n        } else {\n            m(!b);\n        }\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "paren-pad",
        "space_after_paren",
        "class A {\n    void m( int a) {\n    }\n}\n",
        &[(2, 11)],
    ));
    v.push(one(
        "paren-pad",
        "no_padding",
        "class A {\n    void m(int a) {\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "method-param-pad",
        "space_before_params",
        "class A {\n    void m (int a) {\n    }\n}\n",
        &[(2, 12)],
    ));
    v.push(one(
        "method-param-pad",
        "no_space_before_params",
        "class A {\n    void m(int a) {\n    }\n}\n",
        &[],
    ));
    let distance = |gap: usize| {
        let mut s = String::from("class A {\n    void m() {\n        int a = 1;\n");
        for _ in 0..gap {
            s.push_str("        m();\n");
        }
        s.push_str("        System.out.println(a);\n    }\n}\n");
        s
    };
    v.push(RuleFixture {
        expect: vec![("A.java".into(), 3, 13)],
        ..one(
            "variable-declaration-usage-distance",
            "distance_four",
            &distance(4),
            &[],
        )
    });
    v.push(one(
        "variable-declaration-usage-distance",
        "distance_three",
        &distance(3),
        &[],
    ));
    v.push(one(
        "declaration-order",
        "field_after_method",
        "class A {\n    void m() {\n    }\n    int x;\n}\n",
        &[(4, 5)],
    ));
    v.push(one(
        "declaration-order",
        "field_before_method",
        "class A {\n    int x;\n    void m() {\n    }\n}\n",
        &[],
    ));
}

fn magic(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "magic-number",
        "seconds_per_day",
        "class A { void m() { int t = 86400; } }",
        &[(1, 30)],
    ));
    v.push(one(
        "magic-number",
        "zero_is_ignored",
        "class A { void m() { int i = 0; } }",
        &[],
    ));
    v.push(one(
        "magic-number",
        "constant_and_negative",
        "class A {\n    static final int DAY = 86400;\n    int m() {\n        return -7 + DAY;\n    }\n}\n",
        &[(4, 16)],
    ));
}

fn dead_code(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "unused-formal-parameter",
        "private_method_param",
        "class A {\n    private void m(int p) {\n    }\n    void run() {\n        m(1);\n    }\n}\n",
        &[(2, 24)],
    ));
    v.push(one(
        "unused-formal-parameter",
        "public_method_param",
        "class A {\n    public void m(int p) {\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "unused-local-variable",
        "never_read",
        "class A {\n    void m() {\n        int x = 1;\n    }\n}\n",
        &[(3, 13)],
    ));
    v.push(one(
        "unused-local-variable",
        "read_later",
        "class A {\n    int m() {\n        int x = 1;\n        return x;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "unused-private-field",
        "field_never_read",
        "class A {\n    private int x;\n}\n",
        &[(2, 17)],
    ));
    v.push(one(
        "unused-private-field",
        "field_read",
        "class A {\n    private int x;\n    int m() {\n        return x;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "unused-private-method",
        "helper_never_called",
        "class A {\n    private void helper() {\n    }\n}\n",
        &[(2, 18)],
    ));
    v.push(one(
        "unused-private-method",
        "helper_called",
        "class A {\n    private void helper() {\n    }\n    void run() {\n        helper();\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "unused-import",
        "map_unused",
        "import java.util.List;\nimport java.util.Map;\n\nclass A {\n    List<String> l;\n}\n",
        &[(2, 1)],
    ));
    v.push(one(
        "unused-import",
        "both_used",
        "import java.util.List;\nimport java.util.Map;\n\nclass A {\n    List<String> l;\n    Map<String, String> m;\n}\n",
        &[],
    ));
}

fn resources(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "close-resource",
        "reader_not_closed",
        "import java.io.FileReader;\nimport java.io.IOException;\n\nclass A {\n    int m() throws IOException {\n        FileReader r = new FileReader(\"f\");\n        return r.read();\n    }\n}\n",
        &[(6, 20)],
    ));
    v.push(one(
        "close-resource",
        "reader_in_try_with_resources",
        "import java.io.FileReader;\nimport java.io.IOException;\n\nclass A {\n    int m() throws IOException {\n        try (FileReader r = new FileReader(\"f\")) {\n            return r.read();\n        }\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "avoid-instantiating-objects-in-loops",
        "new_in_for_body",
        "class A {\n    void m(java.util.List<Object> l) {\n        for (int i = 0; i < 3; i++) {\n            l.add(new Object());\n        }\n    }\n}\n",
        &[(4, 19)],
    ));
    v.push(one(
        "avoid-instantiating-objects-in-loops",
        "throw_in_loop",
        "class A {\n    void m(int[] xs) {\n        Object o = new Object();\n        for (int x : xs) {\n            if (x < 0) {\n                throw new IllegalArgumentException();\n            }\n        }\n    }\n}\n",
        &[],
    ));
}

fn documentation(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "comment-required",
        "public_class_undocumented",
        "public class A {\n}\n",
        &[(1, 14)],
    ));
    v.push(one(
        "comment-required",
        "public_class_documented",
        "/** Doc. */\npublic class A {\n}\n",
        &[],
    ));
    v.push(one(
        "comment-size",
        "seven_line_comment",
        "/*\n * 1\n * 2\n * 3\n * 4\n * 5\n */\nclass A {\n}\n",
        &[(1, 1)],
    ));
    v.push(one(
        "comment-size",
        "six_line_comment",
        "/*\n * 1\n * 2\n * 3\n * 4\n */\nclass A {\n}\n",
        &[],
    ));
    v.push(one(
        "comment-content",
        "insult",
        "class A {\n    // written by an idiot\n}\n",
        &[(2, 5)],
    ));
    v.push(one(
        "comment-content",
        "polite",
        "class A {\n    // written with care\n}\n",
        &[],
    ));
    v.push(one(
        "javadoc-method",
        "missing_doc_and_param_tag",
        "class A {\n    public void m() {\n    }\n\n    /**\n     * Does it.\n     */\n    public void n(int a) {\n    }\n}\n",
        &[(2, 17), (8, 23)],
    ));
    v.push(one(
        "javadoc-method",
        "documented_and_private",
        "class A {\n    /**\n     * Does it.\n     * @param a amount\n     */\n    public void n(int a) {\n    }\n\n    private void p() {\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "javadoc-type",
        "missing_type_param_tag",
        "/**\n * Box.\n */\nclass Box<T> {\n}\n",
        &[(4, 11)],
    ));
    v.push(one(
        "javadoc-type",
        "type_param_tag_present",
        "/**\n * Box.\n * @param <T> item type\n */\nclass Box<T> {\n}\n",
        &[],
    ));
    v.push(many(
        "missing-javadoc-package",
        "undocumented_package_info",
        &[("p/package-info.java", "package p;\n")],
        &[("p/package-info.java", 1, 1)],
    ));
    v.push(many(
        "missing-javadoc-package",
        "documented_package_info",
        &[
            ("p/package-info.java", "/** Pkg. */\npackage p;\n"),
            ("p/A.java", "package p;\n\nclass A {\n}\n"),
        ],
        &[],
    ));
    v.push(one(
        "javadoc-variable",
        "field_undocumented",
        "class A {\n    private int x;\n}\n",
        &[(2, 17)],
    ));
    v.push(one(
        "javadoc-variable",
        "field_documented",
        "class A {\n    /** X. */\n    private int x;\n}\n",
        &[],
    ));
}

fn modularity(v: &mut Vec<RuleFixture>) {
    let god = |fields: usize| {
        let mut body = int_fields(fields);
        body.extend(empty_methods(4, ""));
        body.push("int sum(Other o) { return o.a + o.b + o.c + o.d + o.e + o.g; }".into());
        class_with("G", &body)
    };
    v.push(one("god-class", "many_members_foreign_data", &god(36), &[(1, 7)]));
    v.push(one("god-class", "forty_members", &god(35), &[]));
    v.push(one(
        "data-class",
        "accessors_only",
        "class Point {\n    private int x;\n    private int y;\n\n    public int getX() {\n        return x;\n    }\n\n    public int getY() {\n        return y;\n    }\n\n    public void setX(int v) {\n        x = v;\n    }\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "data-class",
        "has_behaviour",
        "class Point {\n    private int x;\n    private int y;\n\n    public int getX() {\n        return x;\n    }\n\n    public int getY() {\n        return y;\n    }\n\n    public int sum() {\n        return x + y;\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "too-many-methods",
        "eleven_methods",
        &class_with("A", &empty_methods(11, "")),
        &[(1, 7)],
    ));
    let mut ten = empty_methods(10, "");
    ten.push("int getX() { return 1; }".into());
    v.push(one(
        "too-many-methods",
        "ten_methods_and_getter",
        &class_with("A", &ten),
        &[],
    ));
    v.push(one(
        "too-many-fields",
        "sixteen_fields",
        &class_with("A", &int_fields(16)),
        &[(1, 7)],
    ));
    let mut fifteen = int_fields(15);
    fifteen.push("static final int K = 1;".into());
    v.push(one(
        "too-many-fields",
        "fifteen_fields_and_constant",
        &class_with("A", &fifteen),
        &[],
    ));
    let util = "class Util {\n    static int twice(int x) {\n        return 2 * x;\n    }\n}\n";
    let hidden =
        "class Util {\n    private Util() {\n    }\n\n    static int twice(int x) {\n        return 2 * x;\n    }\n}\n";
    v.push(one("use-utility-class", "static_only", util, &[(1, 7)]));
    v.push(one("use-utility-class", "private_constructor", hidden, &[]));
    v.push(one(
        "hide-utility-class-constructor",
        "default_constructor",
        util,
        &[(1, 7)],
    ));
    v.push(one(
        "hide-utility-class-constructor",
        "private_constructor",
        hidden,
        &[],
    ));
    v.push(one(
        "broken-modularization",
        "five_fields_no_methods",
        &class_with("A", &int_fields(5)),
        &[(1, 7)],
    ));
    let mut with_method = int_fields(5);
    with_method.push("int sum() { return f0 + f1; }".into());
    v.push(one(
        "broken-modularization",
        "five_fields_with_method",
        &class_with("A", &with_method),
        &[],
    ));
    v.push(one(
        "cyclically-dependent-modularization",
        "mutual_fields",
        "class A {\n    B b;\n}\n\nclass B {\n    A a;\n}\n",
        &[(1, 7), (5, 7)],
    ));
    v.push(one(
        "cyclically-dependent-modularization",
        "one_way",
        "class A {\n    B b;\n}\n\nclass B {\n}\n",
        &[],
    ));
    let hub = |users: usize| {
        let mut s = String::from("class Hub {\n    X1 a;\n    X2 b;\n    X3 c;\n}\n");
        for i in 1..=3 {
            s.push_str(&format!("\nclass X{i} {{\n}}\n"));
        }
        for i in 1..=users {
            s.push_str(&format!("\nclass Y{i} {{\n    Hub h;\n}}\n"));
        }
        s
    };
    v.push(one("hub-like-modularization", "three_in_three_out", &hub(3), &[(1, 7)]));
    v.push(one("hub-like-modularization", "two_in_three_out", &hub(2), &[]));
    v.push(one(
        "insufficient-modularization",
        "twenty_one_public_methods",
        &class_with("A", &empty_methods(21, "public ")),
        &[(1, 7)],
    ));
    v.push(one(
        "insufficient-modularization",
        "twenty_public_methods",
        &class_with("A", &empty_methods(20, "public ")),
        &[],
    ));
    v.push(one(
        "law-of-demeter",
        "three_call_chain",
        "class A {\n    String m(Order o) {\n        return o.customer().address().city();\n    }\n}\n",
        &[(3, 16)],
    ));
    v.push(one(
        "law-of-demeter",
        "two_calls_and_builder",
        "class A {\n    Object m(Order o, StringBuilder sb) {\n        sb.append(1).append(2).append(3);\n        return o.customer().address();\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "coupling-between-objects",
        "twenty_one_types",
        &class_with("A", &typed_fields(21)),
        &[(1, 7)],
    ));
    v.push(one(
        "coupling-between-objects",
        "twenty_types",
        &class_with("A", &typed_fields(20)),
        &[],
    ));
    v.push(one(
        "class-fan-out",
        "twenty_one_types",
        &class_with("A", &typed_fields(21)),
        &[(1, 7)],
    ));
    let mut common = typed_fields(20);
    common.push("String s;".into());
    common.push("java.util.List<Integer> l;".into());
    v.push(one(
        "class-fan-out",
        "twenty_types_plus_library",
        &class_with("A", &common),
        &[],
    ));
}

fn encapsulation(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "visibility-modifier",
        "public_and_package_fields",
        "class A {\n    public int x;\n    int y;\n    private int z;\n    public static final int K = 1;\n}\n",
        &[(2, 16), (3, 9)],
    ));
    v.push(one(
        "visibility-modifier",
        "private_fields",
        "class A {\n    private int z;\n    public static final int K = 1;\n}\n",
        &[],
    ));
    v.push(one(
        "excessive-public-count",
        "forty_six_public",
        &class_with("A", &empty_methods(46, "public ")),
        &[(1, 7)],
    ));
    v.push(one(
        "excessive-public-count",
        "forty_five_public",
        &class_with("A", &empty_methods(45, "public ")),
        &[],
    ));
    v.push(one(
        "deficient-encapsulation",
        "public_field",
        "class A {\n    public int x;\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "deficient-encapsulation",
        "public_constant",
        "class A {\n    public static final int X = 1;\n    private int y;\n}\n",
        &[],
    ));
    v.push(one(
        "final-parameters",
        "one_non_final",
        "class A {\n    void m(int a, final int b) {\n    }\n}\n",
        &[(2, 12)],
    ));
    v.push(one(
        "final-parameters",
        "final_and_abstract",
        "abstract class A {\n    void m(final int a) {\n    }\n\n    abstract void n(int b);\n}\n",
        &[],
    ));
    v.push(one(
        "final-class",
        "private_constructor",
        "class Singleton {\n    private Singleton() {\n    }\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "final-class",
        "already_final",
        "final class Singleton {\n    private Singleton() {\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "hidden-field",
        "setter_param",
        "class A {\n    private int x;\n\n    void set(int x) {\n        this.x = x;\n    }\n}\n",
        &[(4, 18)],
    ));
    v.push(one(
        "hidden-field",
        "distinct_param",
        "class A {\n    private int x;\n\n    void set(int value) {\n        this.x = value;\n    }\n}\n",
        &[],
    ));
    let painter = |second: bool| {
        let mut s = String::from(
            "class Shape {\n}\n\nclass Circle extends Shape {\n}\n\nclass Square extends Shape {\n}\n\nclass Painter {\n    int sides(Shape s) {\n        if (s instanceof Circle) {\n            return 0;\n        }\n",
        );
        if second {
            s.push_str("        if (s instanceof Square) {\n            return 4;\n        }\n");
        }
        s.push_str("        return -1;\n    }\n}\n");
        s
    };
    v.push(one(
        "unexploited-encapsulation",
        "type_switch_in_hierarchy",
        &painter(true),
        &[(11, 9)],
    ));
    v.push(one(
        "unexploited-encapsulation",
        "single_type_test",
        &painter(false),
        &[],
    ));
}

fn hierarchy(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "broken-hierarchy",
        "nothing_inherited_used",
        "class Base {\n    void run() {\n    }\n}\n\nclass Child extends Base {\n    void other() {\n    }\n}\n",
        &[(6, 7)],
    ));
    v.push(one(
        "broken-hierarchy",
        "override",
        "class Base {\n    void run() {\n    }\n}\n\nclass Child extends Base {\n    void run() {\n        other();\n    }\n\n    void other() {\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "cyclic-hierarchy",
        "base_creates_child",
        "class Base {\n    Child make() {\n        return new Child();\n    }\n}\n\nclass Child extends Base {\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "cyclic-hierarchy",
        "base_independent",
        "class Base {\n    Base make() {\n        return new Base();\n    }\n}\n\nclass Child extends Base {\n}\n",
        &[],
    ));
    v.push(one(
        "deep-hierarchy",
        "depth_four",
        "class A {\n}\n\nclass B extends A {\n}\n\nclass C extends B {\n}\n\nclass D extends C {\n}\n\nclass E extends D {\n}\n",
        &[(13, 7)],
    ));
    v.push(one(
        "deep-hierarchy",
        "depth_three",
        "class A {\n}\n\nclass B extends A {\n}\n\nclass C extends B {\n}\n\nclass D extends C {\n}\n",
        &[],
    ));
    v.push(one(
        "missing-hierarchy",
        "type_switch_unrelated",
        "class Cat {\n}\n\nclass Dog {\n}\n\nclass Vet {\n    String treat(Object o) {\n        if (o instanceof Cat) {\n            return \"cat\";\n        }\n        if (o instanceof Dog) {\n            return \"dog\";\n        }\n        return \"\";\n    }\n}\n",
        &[(8, 12)],
    ));
    v.push(one(
        "missing-hierarchy",
        "single_class",
        "class Vet {\n    String treat(Object o) {\n        if (o instanceof String) {\n            return \"s\";\n        }\n        if (o instanceof Integer) {\n            return \"i\";\n        }\n        return \"\";\n    }\n}\n",
        &[],
    ));
    v.push(one(
        "multipath-hierarchy",
        "root_twice",
        "interface Root {\n}\n\ninterface Mid extends Root {\n}\n\nclass Leaf implements Mid, Root {\n}\n",
        &[(7, 7)],
    ));
    v.push(one(
        "multipath-hierarchy",
        "root_once",
        "interface Root {\n}\n\ninterface Mid extends Root {\n}\n\nclass Leaf implements Mid {\n}\n",
        &[],
    ));
    let rebel = |body: &str| {
        format!(
            "class Base {{\n    void run() {{\n        System.out.println(\"run\");\n    }}\n}}\n\nclass Child extends Base {{\n    @Override\n    void run() {{\n        {body}\n    }}\n}}\n"
        )
    };
    v.push(one(
        "rebellious-hierarchy",
        "override_throws",
        &rebel("throw new UnsupportedOperationException();"),
        &[(9, 10)],
    ));
    v.push(one(
        "rebellious-hierarchy",
        "override_extends",
        &rebel("super.run();"),
        &[],
    ));
    let wide = |n: usize| {
        let mut s = String::from("class Base {\n}\n");
        for i in 1..=n {
            s.push_str(&format!("\nclass S{i} extends Base {{\n}}\n"));
        }
        s
    };
    v.push(one("wide-hierarchy", "five_subtypes", &wide(5), &[(1, 7)]));
    v.push(one("wide-hierarchy", "four_subtypes", &wide(4), &[]));
    v.push(many(
        "dependency-cycles-between-packages",
        "mutual_imports",
        &[
            (
                "a/A.java",
                "package a;\n\nimport b.B;\n\npublic class A {\n    B b;\n}\n",
            ),
            (
                "b/B.java",
                "package b;\n\nimport a.A;\n\npublic class B {\n    A a;\n}\n",
            ),
        ],
        &[("a/A.java", 1, 1), ("b/B.java", 1, 1)],
    ));
    v.push(many(
        "dependency-cycles-between-packages",
        "one_way_import",
        &[
            (
                "a/A.java",
                "package a;\n\nimport b.B;\n\npublic class A {\n    B b;\n}\n",
            ),
            ("b/B.java", "package b;\n\npublic class B {\n}\n"),
        ],
        &[],
    ));
}

fn abstraction(v: &mut Vec<RuleFixture>) {
    v.push(one(
        "imperative-abstraction",
        "single_operation",
        "class Printer {\n    public void print() {\n        System.out.println(\"x\");\n    }\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "imperative-abstraction",
        "two_operations",
        "class Printer {\n    public void print() {\n        System.out.println(\"x\");\n    }\n\n    public void flush() {\n        System.out.flush();\n    }\n}\n",
        &[],
    ));
    let facets = |shared: bool| {
        let mut body = int_fields(7);
        for i in 0..7 {
            let f = if shared { 0 } else { i };
            body.push(format!("int m{i}() {{ return f{f}; }}"));
        }
        class_with("A", &body)
    };
    v.push(one(
        "multifaceted-abstraction",
        "disjoint_methods",
        &facets(false),
        &[(1, 7)],
    ));
    v.push(one("multifaceted-abstraction", "shared_field", &facets(true), &[]));
    v.push(one(
        "unnecessary-abstraction",
        "one_field_holder",
        "class Holder {\n    int a;\n}\n",
        &[(1, 7)],
    ));
    v.push(one(
        "unnecessary-abstraction",
        "holder_with_method",
        "class Holder {\n    int a;\n\n    int get() {\n        return a;\n    }\n}\n",
        &[],
    ));
    let orphan = |used: bool| {
        let call = if used {
            "new Orphan().m();"
        } else {
            "System.out.println(\"hi\");"
        };
        format!(
            "public class Main {{\n    public static void main(String[] args) {{\n        {call}\n    }}\n}}\n\nclass Orphan {{\n    void m() {{\n    }}\n}}\n"
        )
    };
    v.push(one("unutilized-abstraction", "orphan_type", &orphan(false), &[(7, 7)]));
    v.push(one("unutilized-abstraction", "used_type", &orphan(true), &[]));
}
