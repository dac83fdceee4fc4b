//! Method bodies with known complexity. Generated methods carry their
//! decision-point count, tallied while the source text is assembled; the
//! cognitive fixtures are scored by hand against the increment table in
//! `metrics`.

use rand::rngs::StdRng;
use rand::Rng;

pub struct Generated {
    pub source: String,
    pub decisions: u32,
}

struct Gen<'a> {
    rng: &'a mut StdRng,
    fresh: u32,
    decisions: u32,
}

impl Gen<'_> {
    fn name(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }

    fn atom(&mut self, depth: u32) -> String {
        match self.rng.gen_range(0..if depth > 2 { 3 } else { 4 }) {
            0 => "x > 0".into(),
            1 => "flag".into(),
            2 => format!("y != {}", self.rng.gen_range(1..9)),
            _ => format!("!({})", self.cond(depth + 1)),
        }
    }

    /// A chain of atoms joined by `&&`/`||`; each operator is a decision.
    fn cond(&mut self, depth: u32) -> String {
        let mut s = self.atom(depth);
        for _ in 0..self.rng.gen_range(0..3) {
            let op = if self.rng.gen_bool(0.5) { "&&" } else { "||" };
            self.decisions += 1;
            s = format!("{s} {op} {}", self.atom(depth));
        }
        s
    }

    fn block(&mut self, depth: u32) -> String {
        let n = if depth > 2 { 1 } else { self.rng.gen_range(1..4) };
        (0..n).map(|_| self.stmt(depth)).collect::<Vec<_>>().join(" ")
    }

    fn stmt(&mut self, depth: u32) -> String {
        let max = if depth > 2 { 2 } else { 10 };
        match self.rng.gen_range(0..max) {
            0 => "x++;".into(),
            1 => {
                self.decisions += 1;
                format!("y = {} ? 1 : 2;", self.cond(depth))
            }
            2 => {
                self.decisions += 1;
                let c = self.cond(depth);
                let then = self.block(depth + 1);
                if self.rng.gen_bool(0.5) {
                    format!("if ({c}) {{ {then} }} else {{ {} }}", self.block(depth + 1))
                } else {
                    format!("if ({c}) {{ {then} }}")
                }
            }
            3 => {
                self.decisions += 1;
                let c = self.cond(depth);
                format!("while ({c}) {{ {} }}", self.block(depth + 1))
            }
            4 => {
                self.decisions += 1;
                let i = self.name("i");
                format!("for (int {i} = 0; {i} < n; {i}++) {{ {} }}", self.block(depth + 1))
            }
            5 => {
                self.decisions += 1;
                let v = self.name("v");
                format!("for (int {v} : data) {{ {} }}", self.block(depth + 1))
            }
            6 => {
                self.decisions += 1;
                let body = self.block(depth + 1);
                format!("do {{ {body} }} while ({});", self.cond(depth))
            }
            7 => {
                let cases = self.rng.gen_range(1..4);
                self.decisions += cases;
                let mut s = String::from("switch (x) {");
                for k in 0..cases {
                    s.push_str(&format!(" case {k}: {} break;", self.block(depth + 1)));
                }
                if self.rng.gen_bool(0.5) {
                    s.push_str(" default: x = 0;");
                }
                s + " }"
            }
            8 => {
                let catches = self.rng.gen_range(1..3);
                self.decisions += catches;
                let mut s = format!("try {{ {} }}", self.block(depth + 1));
                for k in 0..catches {
                    let e = self.name("e");
                    let ty = ["IllegalStateException", "RuntimeException"][k as usize];
                    s.push_str(&format!(" catch ({ty} {e}) {{ {} }}", self.block(depth + 1)));
                }
                if self.rng.gen_bool(0.3) {
                    s.push_str(" finally { x = 0; }");
                }
                s
            }
            _ => {
                // lambdas count like any other code
                let body = self.block(depth + 1);
                format!("Runnable {} = () -> {{ {body} }};", self.name("r"))
            }
        }
    }
}

pub fn generate(rng: &mut StdRng) -> Generated {
    let mut g = Gen {
        rng,
        fresh: 0,
        decisions: 0,
    };
    let body = g.block(0);
    Generated {
        source: format!("class G {{ int x; int y; int n; boolean flag; int[] data; void m() {{ {body} }} }}"),
        decisions: g.decisions,
    }
}

/// `(description, method declaration, cognitive complexity)`.
pub const COGNITIVE: &[(&str, &str, u32)] = &[
    ("straight line", "void m() { int a = 1; a++; }", 0),
    ("single if", "void m(boolean a) { if (a) { } }", 1),
    ("if else", "void m(boolean a) { if (a) { } else { } }", 2),
    ("else if chain", "void m(boolean a, boolean b) { if (a) { } else if (b) { } else { } }", 3),
    ("if in for", "void m(int n, boolean a) { for (int i = 0; i < n; i++) { if (a) { } } }", 3),
    ("three levels", "void m(int n, boolean a, boolean b) { while (a) { for (int i = 0; i < n; i++) { if (b) { } } } }", 6),
    ("if in switch", "void m(int a, boolean b) { switch (a) { case 1: if (b) { } break; default: break; } }", 3),
    ("try body is not nested", "void m(boolean a, boolean b) { try { if (a) { } } catch (Exception e) { if (b) { } } }", 4),
    ("one and", "boolean m(boolean a, boolean b) { return a && b; }", 1),
    ("same operator run", "boolean m(boolean a, boolean b, boolean c) { return a && b && c; }", 1),
    ("two runs", "boolean m(boolean a, boolean b, boolean c) { return a && b || c; }", 2),
    ("three runs", "boolean m(boolean a, boolean b, boolean c, boolean d) { return a && b || c && d; }", 3),
    ("ternary", "int m(boolean a) { int x = a ? 1 : 2; return x; }", 1),
    ("nested ternary", "int m(boolean a, boolean b) { return a ? (b ? 1 : 2) : 3; }", 3),
    (
        "labelled continue",
        "void m(int n) { outer: for (int i = 0; i < n; i++) { for (int j = 0; j < n; j++) { if (j == i) { continue outer; } } } }",
        7,
    ),
    ("plain break", "void m() { while (true) { break; } }", 1),
    ("lambda nests", "void m(boolean a) { Runnable r = () -> { if (a) { } }; }", 2),
    ("anonymous class is separate", "void m(boolean a) { Object o = new Object() { void f() { if (a) { } } }; }", 0),
    ("negated group", "void m(boolean a, boolean b, boolean c) { if (a && !(b || c)) { } }", 3),
    ("catch in loop", "void m(int n) { for (int i = 0; i < n; i++) { try { n--; } catch (RuntimeException e) { } } }", 3),
    ("if in else", "void m(boolean a, boolean b) { if (a) { } else { if (b) { } } }", 4),
    ("do while with condition", "void m(boolean a, boolean b, int x) { do { x++; } while (a && b); }", 2),
];
