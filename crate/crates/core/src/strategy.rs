//! Constructive strategies that solve whole regions of the parameter space,
//! and a move-by-move validator.
//!
//! Each strategy has a sufficient condition on `(M, C, B, d)` and a script of
//! moves. The scripts follow the strategy narratives, with the underdetermined
//! parts filled in greedily: full loads forward, a single rower back. The
//! validator, not the narrative, decides correctness.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{BankState, Direction, McParams, Move, SolutionPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrategyName {
    TwoBoat,
    BigBoat1,
    BigBoat2,
    SplitCannibals,
    SimultaneousFerry,
    ZeroMarginSlack,
    ZeroMarginEqualBigBoat,
}

impl StrategyName {
    pub const ALL: [StrategyName; 7] = [
        StrategyName::TwoBoat,
        StrategyName::BigBoat1,
        StrategyName::BigBoat2,
        StrategyName::SplitCannibals,
        StrategyName::SimultaneousFerry,
        StrategyName::ZeroMarginSlack,
        StrategyName::ZeroMarginEqualBigBoat,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StrategyName::TwoBoat => "two-boat",
            StrategyName::BigBoat1 => "big-boat-1",
            StrategyName::BigBoat2 => "big-boat-2",
            StrategyName::SplitCannibals => "split-cannibals",
            StrategyName::SimultaneousFerry => "simultaneous-ferry",
            StrategyName::ZeroMarginSlack => "zero-margin-slack",
            StrategyName::ZeroMarginEqualBigBoat => "zero-margin-equal-big-boat",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.label() == label)
    }

    /// The sufficient condition, as text.
    pub fn condition(self) -> &'static str {
        match self {
            StrategyName::TwoBoat => "M - C >= 2d + 3",
            StrategyName::BigBoat1 => "B >= C + d + 1",
            StrategyName::BigBoat2 => "B >= M and C >= 2",
            StrategyName::SplitCannibals => "M - C >= 2d + 1 and B > ceil(C/2) + d + 1",
            StrategyName::SimultaneousFerry => "M - C >= 3d and B >= d + 2, with d >= 1",
            StrategyName::ZeroMarginSlack => "d = 0 and M > C",
            StrategyName::ZeroMarginEqualBigBoat => "d = 0, M = C and B >= 4",
        }
    }

    // Conditions are kept in their published `>= x + 1` form.
    #[allow(clippy::int_plus_one)]
    pub fn applies(self, p: &McParams) -> bool {
        let (m, c, b, d) = (
            p.missionaries as i64,
            p.cannibals as i64,
            p.boat as i64,
            p.margin as i64,
        );
        if p.validate().is_err() {
            return false;
        }
        match self {
            StrategyName::TwoBoat => m - c >= 2 * d + 3,
            StrategyName::BigBoat1 => b >= c + d + 1,
            StrategyName::BigBoat2 => b >= m && c >= 2,
            StrategyName::SplitCannibals => m - c >= 2 * d + 1 && b > (c + 1) / 2 + d + 1,
            // With d = 0 the return trip carries nobody; the condition would
            // claim every d = 0 instance solvable, which (4,4,2,0) refutes.
            StrategyName::SimultaneousFerry => d >= 1 && m - c >= 3 * d && b >= d + 2,
            StrategyName::ZeroMarginSlack => d == 0 && m > c,
            StrategyName::ZeroMarginEqualBigBoat => d == 0 && m == c && b >= 4,
        }
    }
}

impl fmt::Display for StrategyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Crossings in order; directions alternate starting with [`Direction::Forward`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn from_path(path: &SolutionPath) -> Self {
        Self(path.moves())
    }

    /// The states visited from `[M, C, 1]`, stopping at the first move that
    /// cannot be carried out.
    pub fn states(&self, p: &McParams) -> Vec<BankState> {
        let mut states = vec![p.initial_state()];
        for mv in &self.0 {
            match mv.apply(p, *states.last().expect("never empty")) {
                Some(next) => states.push(next),
                None => break,
            }
        }
        states
    }

    pub fn to_path(&self, p: &McParams) -> SolutionPath {
        SolutionPath::new(self.states(p))
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    DirectionOrder,
    EmptyBoat,
    BoatCapacity,
    InBoatMargin,
    InsufficientPeople,
    BankOutnumbering,
    Unfinished,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::DirectionOrder => "direction order",
            Rule::EmptyBoat => "empty boat",
            Rule::BoatCapacity => "boat capacity",
            Rule::InBoatMargin => "in-boat margin",
            Rule::InsufficientPeople => "insufficient people",
            Rule::BankOutnumbering => "bank outnumbering",
            Rule::Unfinished => "unfinished",
        })
    }
}

/// The earliest broken rule. `index` is the offending move, or the sequence
/// length for [`Rule::Unfinished`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("move {index}: {rule}")]
pub struct Violation {
    pub index: usize,
    pub rule: Rule,
}

/// Replays `ms` from `[M, C, 1]` and checks every rule along the way.
///
/// Revisiting a state is allowed; scripts need not be self-avoiding.
pub fn validate_solution(p: &McParams, ms: &MoveSequence) -> Result<(), Violation> {
    let mut state = p.initial_state();
    for (index, mv) in ms.0.iter().enumerate() {
        let fail = |rule| Err(Violation { index, rule });
        let expected = if index % 2 == 0 {
            Direction::Forward
        } else {
            Direction::Back
        };
        if mv.direction != expected {
            return fail(Rule::DirectionOrder);
        }
        if mv.people() == 0 {
            return fail(Rule::EmptyBoat);
        }
        if mv.people() > p.boat {
            return fail(Rule::BoatCapacity);
        }
        if !p.bank_is_safe(mv.missionaries, mv.cannibals) {
            return fail(Rule::InBoatMargin);
        }
        let Some(next) = mv.apply(p, state) else {
            return fail(Rule::InsufficientPeople);
        };
        if !p.is_legal_state(next).unwrap_or(false) {
            return fail(Rule::BankOutnumbering);
        }
        state = next;
    }
    if state == p.goal_state() {
        Ok(())
    } else {
        Err(Violation {
            index: ms.len(),
            rule: Rule::Unfinished,
        })
    }
}

pub fn applicability(p: &McParams) -> BTreeSet<StrategyName> {
    StrategyName::ALL
        .into_iter()
        .filter(|s| s.applies(p))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{strategy} does not apply to {params}: needs {}", strategy.condition())]
pub struct NotApplicable {
    pub strategy: StrategyName,
    pub params: McParams,
}

/// Records moves while tracking the starting bank.
struct Script {
    boat: u32,
    m: u32,
    c: u32,
    moves: Vec<Move>,
}

impl Script {
    fn new(p: &McParams) -> Self {
        Self {
            boat: p.boat,
            m: p.missionaries,
            c: p.cannibals,
            moves: Vec::new(),
        }
    }

    fn forward(&mut self, m: u32, c: u32) -> &mut Self {
        self.m -= m;
        self.c -= c;
        self.moves.push(Move::forward(m, c));
        self
    }

    fn back(&mut self, m: u32, c: u32) -> &mut Self {
        self.m += m;
        self.c += c;
        self.moves.push(Move::back(m, c));
        self
    }

    fn done(&self) -> bool {
        self.m == 0 && self.c == 0
    }

    /// Missionaries row themselves over once no cannibal is left behind:
    /// full loads forward, one missionary back.
    fn ferry_missionaries(&mut self) {
        while self.m > 0 {
            let load = self.m.min(self.boat);
            self.forward(load, 0);
            if self.done() {
                return;
            }
            self.back(1, 0);
        }
    }

    /// Cannibals row themselves over once every missionary is across and the
    /// boat is at the starting bank.
    fn ferry_cannibals(&mut self) {
        while self.c > 0 {
            self.forward(0, self.c.min(self.boat));
            if self.done() {
                return;
            }
            self.back(0, 1);
        }
    }

    fn finish(self) -> MoveSequence {
        MoveSequence(self.moves)
    }
}

pub fn build_strategy(p: &McParams, strategy: StrategyName) -> Result<MoveSequence, NotApplicable> {
    if !strategy.applies(p) {
        return Err(NotApplicable {
            strategy,
            params: *p,
        });
    }
    let (mm, cc, bb, d) = (p.missionaries, p.cannibals, p.boat, p.margin);
    let mut s = Script::new(p);
    // Operation P: two missionaries over, one back, netting one across.
    let surplus_run = (mm - cc).saturating_sub(d + 1);
    match strategy {
        StrategyName::TwoBoat => {
            for _ in 0..surplus_run {
                s.forward(2, 0).back(1, 0);
            }
            // Alternate Q (two cannibals over, one back) and P.
            while s.c > 0 {
                if s.c >= 2 {
                    s.forward(0, 2).back(0, 1);
                } else {
                    s.forward(0, 1);
                    if s.done() {
                        break;
                    }
                    s.back(1, 0);
                    break;
                }
                s.forward(2, 0).back(1, 0);
            }
            s.ferry_missionaries();
        }
        StrategyName::BigBoat1 => {
            for _ in 0..surplus_run {
                s.forward(2, 0).back(1, 0);
            }
            s.forward(s.m, 0);
            if !s.done() {
                // Enough rowers return to guard the cannibals, then carry one over.
                let rowers = (bb - 1).min(mm);
                s.back(rowers, 0).forward(rowers, 1);
                if !s.done() {
                    s.back(0, 1);
                    s.ferry_cannibals();
                }
            }
        }
        StrategyName::BigBoat2 => {
            s.forward(0, 2).back(0, 1).forward(mm, 0);
            if !s.done() {
                s.back(0, 1).forward(0, cc);
            }
        }
        StrategyName::SplitCannibals => {
            let half = cc.div_ceil(2);
            if cc >= 2 {
                s.forward(0, half + 1).back(0, 1).forward(half + d + 1, 0);
            } else {
                s.forward(d + 2, 1);
            }
            while !s.done() && s.m > 0 {
                s.back(1, 0);
                let load = if s.m <= bb {
                    s.m
                } else {
                    bb.min(s.m - s.c - d)
                };
                s.forward(load, 0);
            }
            if !s.done() {
                s.back(0, 1);
                s.ferry_cannibals();
            }
        }
        StrategyName::SimultaneousFerry => {
            s.forward(d + 1, 0).back(1, 0);
            while s.c > 0 {
                s.forward(d + 1, 1);
                if s.done() {
                    break;
                }
                s.back(d, 0);
            }
            s.ferry_missionaries();
        }
        StrategyName::ZeroMarginSlack => {
            // Q = +(1,1) -(0,1) nets a missionary, R = +(1,1) -(1,0) a cannibal.
            s.forward(1, 1).back(0, 1);
            loop {
                s.forward(1, 1);
                if s.done() {
                    break;
                }
                s.back(1, 0);
                if s.c == 0 {
                    break;
                }
                s.forward(1, 1).back(0, 1);
            }
            s.ferry_missionaries();
        }
        StrategyName::ZeroMarginEqualBigBoat => {
            if mm == 1 {
                s.forward(1, 1);
            } else {
                while s.m > 2 {
                    s.forward(2, 2).back(1, 1);
                }
                s.forward(2, 2);
            }
        }
    }
    Ok(s.finish())
}
