#![allow(dead_code)]

use std::collections::BTreeMap;

use glidelogic::circuits::Expr;
use rand::Rng;

pub const NAMES: [&str; 4] = ["A", "B", "C", "D"];

/// Random expression over the first `vars` names with depth at most `depth`.
pub fn random_expr(rng: &mut impl Rng, vars: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return Expr::var(NAMES[rng.gen_range(0..vars)]);
    }
    let pick = rng.gen_range(0..20);
    let mut sub = || random_expr(rng, vars, depth - 1);
    match pick {
        0..=3 => Expr::not(sub()),
        4..=10 => Expr::and(sub(), sub()),
        11..=17 => Expr::or(sub(), sub()),
        _ => Expr::xor(sub(), sub()),
    }
}

/// Plain recursive interpreter, kept apart from the library's own.
pub fn truth(e: &Expr, env: &BTreeMap<String, bool>) -> bool {
    match e {
        Expr::Var(v) => env[v],
        Expr::Not(x) => !truth(x, env),
        Expr::And(xs) => xs.iter().all(|x| truth(x, env)),
        Expr::Or(xs) => xs.iter().any(|x| truth(x, env)),
        Expr::Xor(xs) => xs.iter().filter(|x| truth(x, env)).count() % 2 == 1,
    }
}

/// Every assignment of `vars`.
pub fn all_assignments(vars: &[String]) -> Vec<BTreeMap<String, bool>> {
    (0..1u32 << vars.len())
        .map(|m| {
            vars.iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), m >> i & 1 == 1))
                .collect()
        })
        .collect()
}
