mod abstraction;
mod alignment;
mod complexity;
mod dead_code;
mod design;
mod documentation;
mod encapsulation;
mod hierarchy;
mod incompleteness;
mod magic;
mod modularity;
mod naming;
mod redundancy;
mod resources;
mod util;

use super::engine::{Ctx, Sink};

pub(crate) fn run_all(cx: &Ctx, s: &mut Sink) {
    naming::run(cx, s);
    complexity::run(cx, s);
    redundancy::run(cx, s);
    incompleteness::run(cx, s);
    alignment::run(cx, s);
    magic::run(cx, s);
    dead_code::run(cx, s);
    resources::run(cx, s);
    documentation::run(cx, s);
    modularity::run(cx, s);
    encapsulation::run(cx, s);
    hierarchy::run(cx, s);
    abstraction::run(cx, s);
}
