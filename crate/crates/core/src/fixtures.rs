//! The four-course enrolment example: logic (L), knowledge representation
//! (K), probability (P) and AI (A), under the constraints `P ∨ L`, `A ⇒ P`
//! and `K ⇒ (A ∨ L)`.

use crate::compile::{compile_formula, CompilationResult};
use crate::formula::{parse_formula, Assignment, Formula, Universe};
use crate::psdd::{Psdd, Vtree};
use crate::sem::Sem;

pub const COURSES_VTREE: &str = include_str!("../fixtures/courses.vtree");
pub const COURSES_PSDD: &str = include_str!("../fixtures/courses.psdd");
pub const COURSES_SEM: &str = include_str!("../fixtures/courses.sem");

/// The simplified PSDD base.
pub const STAR: &str = "((!L & K) & (P & A)) | ((L & K) & ((!P & !A) | (P & A))) | ((!L & !K) & (P & A))";

/// The base read directly off the circuit, constants included.
pub const RAW: &str = "(((!L & K) | (L & false)) & ((P & A) | (!P & false))) \
    | (((L & K) | (!L & true)) & ((!P & !A) | (P & A))) \
    | (((!L & !K) | (L & false)) & ((P & A) | (!P & false)))";

/// Positive-probability rows as `(bits over L,K,P,A, probability)`.
pub const COURSES_TABLE: [(&str, f64); 9] = [
    ("0010", 0.06),
    ("0011", 0.54),
    ("0111", 0.10),
    ("1000", 0.036),
    ("1010", 0.018),
    ("1011", 0.006),
    ("1100", 0.144),
    ("1110", 0.072),
    ("1111", 0.024),
];

pub const COURSES_TABLE_ORDER: [&str; 4] = ["L", "K", "P", "A"];

pub fn courses_vtree() -> Vtree {
    Vtree::parse(COURSES_VTREE).expect("shipped vtree parses")
}

pub fn courses_psdd() -> Psdd {
    Psdd::parse(COURSES_PSDD, courses_vtree()).expect("shipped psdd parses")
}

/// The compiled model with augmented variables `X_1 … X_10`.
pub fn courses_sem() -> Sem {
    Sem::parse(COURSES_SEM).expect("shipped sem parses")
}

pub fn star(universe: &Universe) -> Formula {
    parse_formula(STAR, universe).expect("variables L, K, P, A")
}

pub fn raw(universe: &Universe) -> Formula {
    parse_formula(RAW, universe).expect("variables L, K, P, A")
}

/// Reads a `COURSES_TABLE`-style bitstring as an assignment over `universe`.
pub fn table_assignment(universe: &Universe, bits: &str) -> Assignment {
    Assignment::from_pairs(
        COURSES_TABLE_ORDER
            .iter()
            .map(|n| universe.get(n).expect("variables L, K, P, A"))
            .zip(bits.bytes().map(|b| b == b'1')),
    )
}

/// Compiles the simplified base with the PSDD distribution as `Pr(H)`,
/// originals in the order `A, L, K, P`.
pub fn compile_courses() -> CompilationResult {
    let psdd = courses_psdd();
    let dist = psdd.to_distribution().expect("four variables");
    compile_formula(&star(psdd.universe()), psdd.universe().vars(), &dist).expect("fixture compiles")
}
