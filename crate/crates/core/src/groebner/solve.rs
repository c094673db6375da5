use super::{buchberger_limited, check_order, GroebnerBasis, MonomialOrder, PolynomialSystem};
use crate::error::Result;
use crate::ffpoly::{Polynomial, PrimeField};
use crate::model::State;

/// Reductions growing past this many terms make the solver split the variety on a
/// variable instead of finishing one large basis.
const SPLIT_TERM_LIMIT: usize = 100;
/// Splitting costs one branch per field element, so large fields never split.
const SPLIT_MAX_CHARACTERISTIC: u32 = 7;

/// All common zeros of the system in F_p^n, sorted lexicographically.
pub fn solve(system: &PolynomialSystem) -> Result<Vec<State>> {
    solve_with_order(system, &MonomialOrder::lex(system.nvars()))
}

/// [`solve`] with an explicit variable precedence for the elimination.
///
/// When a basis computation swells, the solver fixes a frequently occurring variable
/// to each value of F_p in turn (adding `x_v - a` to the system) and solves the
/// branches separately. The branches partition F_p^n, so the union is exact.
pub fn solve_with_order(system: &PolynomialSystem, order: &MonomialOrder) -> Result<Vec<State>> {
    check_order(order, system.nvars())?;
    let mut out = Vec::new();
    let fixed = vec![false; system.nvars()];
    split_solve(system.generators().to_vec(), system.field(), order, fixed, &mut out);
    out.sort();
    Ok(out)
}

fn split_solve(
    gens: Vec<Polynomial>,
    field: PrimeField,
    order: &MonomialOrder,
    mut fixed: Vec<bool>,
    out: &mut Vec<State>,
) {
    let nvars = fixed.len();
    let splittable = field.characteristic() <= SPLIT_MAX_CHARACTERISTIC && fixed.iter().any(|&f| !f);
    let limit = splittable.then_some(SPLIT_TERM_LIMIT);
    if let Some(gb) = buchberger_limited(&gens, field, nvars, order, limit) {
        out.extend(solutions(&gb));
        return;
    }
    let var = split_variable(&gens, &fixed);
    fixed[var] = true;
    for a in 0..field.characteristic() {
        let mut branch: Vec<Polynomial> = gens.iter().map(|g| g.assign(var, a)).filter(|g| !g.is_zero()).collect();
        if branch.iter().any(|g| g.is_constant()) {
            continue;
        }
        branch.push(&Polynomial::var(field, nvars, var) - &Polynomial::constant(field, nvars, i64::from(a)));
        split_solve(branch, field, order, fixed.clone(), out);
    }
}

/// The unfixed variable occurring in the most generators.
fn split_variable(gens: &[Polynomial], fixed: &[bool]) -> usize {
    let mut count = vec![0usize; fixed.len()];
    for g in gens {
        for v in g.support() {
            count[v] += 1;
        }
    }
    (0..fixed.len())
        .filter(|&v| !fixed[v])
        .max_by_key(|&v| (count[v], std::cmp::Reverse(v)))
        .expect("some variable is unfixed")
}

/// Back-substitution through a lex basis.
///
/// Variables are assigned from the least significant upwards. At the level of
/// variable `x`, every basis element whose most significant variable is `x` is
/// univariate in `x` once the later variables are fixed; its roots are found by trial
/// over F_p. Variables constrained by no element branch over all of F_p.
pub(crate) fn solutions(gb: &GroebnerBasis) -> Vec<State> {
    if gb.is_unit() {
        return Vec::new();
    }
    let order = gb.order();
    let n = order.nvars();
    let field = gb.field();
    // levels[r] holds the elements whose most significant variable has rank r.
    let mut levels: Vec<Vec<&crate::ffpoly::Polynomial>> = vec![Vec::new(); n];
    for g in gb.elements() {
        if let Some(r) = g.support().iter().map(|&v| order.rank()[v]).min() {
            levels[r].push(g);
        }
    }
    for level in &mut levels {
        level.sort_by_key(|g| g.len());
    }
    let mut out = Vec::new();
    let mut point = vec![0u32; n];
    extend(
        n,
        &levels,
        order.precedence(),
        field.characteristic(),
        &mut point,
        &mut out,
    );
    out.sort();
    out
}

fn extend(
    rank: usize,
    levels: &[Vec<&crate::ffpoly::Polynomial>],
    precedence: &[usize],
    p: u32,
    point: &mut Vec<u32>,
    out: &mut Vec<State>,
) {
    if rank == 0 {
        out.push(State::new(point.clone()));
        return;
    }
    let r = rank - 1;
    let var = precedence[r];
    for a in 0..p {
        point[var] = a;
        if levels[r].iter().all(|g| g.eval(point) == 0) {
            extend(r, levels, precedence, p, point, out);
        }
    }
    point[var] = 0;
}
