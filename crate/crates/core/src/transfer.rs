//! Counting shortest solutions with polynomial algebra.
//!
//! The monomial `x1^a1 ... xk^ak` stands for the starting bank holding `a_j`
//! individuals of species `j`; its coefficient counts the ways of getting
//! there. A forward crossing multiplies by the crossing polynomial in the
//! inverted variables, a return crossing by the crossing polynomial itself, and
//! after each step the clean-up operator throws away unsafe populations.
//!
//! `f_i` holds the populations with the boat back at the start after `i` round
//! trips and `g_i` those with the boat across after `2i - 1` crossings. The
//! first `g_i` with a non-zero constant term gives the shortest length
//! `2i - 1`, and that constant term is the number of shortest solutions.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::model::Direction;
use crate::poly::SparsePolynomial;
use crate::species::SpeciesPuzzle;

/// `P(x) = sum of x^b` over every load `b` the boat may carry.
pub fn crossing_polynomial(sp: &SpeciesPuzzle) -> SparsePolynomial {
    SparsePolynomial::from_terms(
        sp.species_count(),
        sp.legal_loads().into_iter().map(|load| (1, load)),
    )
}

/// Keeps the monomials whose exponent vector is a legal starting-bank
/// population (with the far bank holding the complement) for the given boat
/// side. Monomials outside the box are dropped too.
pub fn cleanup(
    poly: &SparsePolynomial,
    sp: &SpeciesPuzzle,
    boat_on_start: bool,
) -> SparsePolynomial {
    poly.filter(|e| sp.is_legal(e, boat_on_start))
}

/// One crossing applied to a clean polynomial.
///
/// Forward subtracts every load from every exponent vector, Back adds it;
/// vectors leaving the box are discarded before clean-up.
pub fn transfer_step(
    f: &SparsePolynomial,
    sp: &SpeciesPuzzle,
    direction: Direction,
) -> SparsePolynomial {
    let loads = sp.legal_loads();
    let amounts = sp.amounts();
    let mut out = SparsePolynomial::zero(sp.species_count());
    for (exps, coeff) in f.terms() {
        for load in &loads {
            let moved: Option<Vec<u32>> = match direction {
                Direction::Forward => exps
                    .iter()
                    .zip(load)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect(),
                Direction::Back => exps
                    .iter()
                    .zip(load)
                    .zip(amounts)
                    .map(|((a, b), max)| Some(a + b).filter(|v| v <= max))
                    .collect(),
            };
            if let Some(e) = moved {
                out.add_term(e, coeff.clone());
            }
        }
    }
    cleanup(&out, sp, direction == Direction::Back)
}

/// Upper bound on the number of round trips a shortest solution can need.
///
/// For puzzles whose bank rule ignores the boat this is the number of legal
/// population vectors; otherwise the number of legal (vector, boat side)
/// pairs.
pub fn legal_state_bound(sp: &SpeciesPuzzle) -> usize {
    let mut vectors = 0;
    let mut pairs = 0;
    let mut side_dependent = false;
    for v in sp.box_vectors() {
        let (at_start, across) = (sp.is_legal(&v, true), sp.is_legal(&v, false));
        vectors += usize::from(at_start || across);
        pairs += usize::from(at_start) + usize::from(across);
        side_dependent |= at_start != across;
    }
    if side_dependent {
        pairs
    } else {
        vectors
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransferOutcome {
    Solvable {
        /// Index `i` of the first `g_i` with a non-zero constant term.
        stage: usize,
        crossings: usize,
        count: BigUint,
    },
    Unsolvable {
        states_bound: usize,
        iterations_run: usize,
    },
}

impl TransferOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, TransferOutcome::Solvable { .. })
    }
}

fn initial_polynomial(sp: &SpeciesPuzzle) -> SparsePolynomial {
    SparsePolynomial::monomial(sp.amounts().to_vec(), BigInt::one())
}

fn to_biguint(n: BigInt) -> BigUint {
    n.to_biguint()
        .expect("transfer coefficients count walks and are never negative")
}

/// Runs the `f_i`/`g_i` iteration until a solution appears or the state bound
/// `T` is exhausted (stage `T + 1`).
pub fn solve_by_transfer(sp: &SpeciesPuzzle) -> TransferOutcome {
    let bound = legal_state_bound(sp);
    let mut f = initial_polynomial(sp);
    for stage in 1..=bound + 1 {
        let g = transfer_step(&f, sp, Direction::Forward);
        let constant = g.constant_term();
        if !constant.is_zero() {
            return TransferOutcome::Solvable {
                stage,
                crossings: 2 * stage - 1,
                count: to_biguint(constant),
            };
        }
        f = transfer_step(&g, sp, Direction::Back);
    }
    TransferOutcome::Unsolvable {
        states_bound: bound,
        iterations_run: bound + 1,
    }
}

/// One line of a transfer trace: `g_i` (absent for `i = 0`) and `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStage {
    pub index: usize,
    pub g: Option<SparsePolynomial>,
    pub f: SparsePolynomial,
}

/// `f_0`, then `(g_i, f_i)` for `i = 1..=i_max`.
pub fn transfer_trace(sp: &SpeciesPuzzle, i_max: usize) -> Vec<TraceStage> {
    let mut f = initial_polynomial(sp);
    let mut stages = vec![TraceStage {
        index: 0,
        g: None,
        f: f.clone(),
    }];
    for index in 1..=i_max {
        let g = transfer_step(&f, sp, Direction::Forward);
        f = transfer_step(&g, sp, Direction::Back);
        stages.push(TraceStage {
            index,
            g: Some(g),
            f: f.clone(),
        });
    }
    stages
}
