//! Puzzle parameters, bank states, boat loads and the legality rules that tie
//! them together.
//!
//! A bank state `[m, c, b]` records how many missionaries and cannibals are
//! still on the starting bank and which side the boat is on (`b = 1` for the
//! starting bank). The far bank holds the complement `[M - m, C - c]`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, StateIndex};

/// The four numbers describing a missionaries-and-cannibals instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct McParams {
    pub missionaries: u32,
    pub cannibals: u32,
    /// Maximum number of people the boat carries.
    pub boat: u32,
    /// Required surplus of missionaries over cannibals wherever both are present.
    pub margin: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("at least one missionary is required (M = {0})")]
    NoMissionaries(u32),
    #[error("at least one cannibal is required (C = {0})")]
    NoCannibals(u32),
    #[error("boat too small: capacity B = {0}, but B must be at least 2")]
    BoatTooSmall(u32),
    #[error("initial state is illegal: M - C = {surplus} is below the safety margin d = {margin}")]
    IllegalStart { surplus: i64, margin: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("state {state} is outside the box 0..={max_m} x 0..={max_c}")]
    OutOfRange {
        state: BankState,
        max_m: u32,
        max_c: u32,
    },
}

impl McParams {
    /// Builds and validates a parameter set.
    pub fn new(
        missionaries: u32,
        cannibals: u32,
        boat: u32,
        margin: u32,
    ) -> Result<Self, ParamError> {
        let p = Self::unchecked(missionaries, cannibals, boat, margin);
        p.validate()?;
        Ok(p)
    }

    /// Builds a parameter set without the `M >= 1`, `C >= 1`, `B >= 2` checks.
    ///
    /// Enumeration families use this for boundary members such as instances
    /// with no cannibals at all; the legality rules handle those naturally.
    pub const fn unchecked(missionaries: u32, cannibals: u32, boat: u32, margin: u32) -> Self {
        Self {
            missionaries,
            cannibals,
            boat,
            margin,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.missionaries < 1 {
            return Err(ParamError::NoMissionaries(self.missionaries));
        }
        if self.cannibals < 1 {
            return Err(ParamError::NoCannibals(self.cannibals));
        }
        if self.boat < 2 {
            return Err(ParamError::BoatTooSmall(self.boat));
        }
        if !self.start_is_legal() {
            return Err(ParamError::IllegalStart {
                surplus: i64::from(self.missionaries) - i64::from(self.cannibals),
                margin: self.margin,
            });
        }
        Ok(())
    }

    /// Whether `[M, C, 1]` satisfies the bank rule.
    pub fn start_is_legal(&self) -> bool {
        self.bank_is_safe(self.missionaries, self.cannibals)
    }

    pub fn initial_state(&self) -> BankState {
        BankState::new(self.missionaries, self.cannibals, true)
    }

    pub fn goal_state(&self) -> BankState {
        BankState::new(0, 0, false)
    }

    /// The rule for one group of people (a bank or the boat): if both kinds
    /// are present, missionaries must lead by at least the margin.
    pub fn bank_is_safe(&self, m: u32, c: u32) -> bool {
        m == 0 || c == 0 || m >= c + self.margin
    }

    /// Both banks safe for a starting-bank population `(m, c)` inside the box.
    pub(crate) fn vector_is_legal(&self, m: u32, c: u32) -> bool {
        debug_assert!(m <= self.missionaries && c <= self.cannibals);
        self.bank_is_safe(m, c) && self.bank_is_safe(self.missionaries - m, self.cannibals - c)
    }

    pub fn in_range(&self, s: BankState) -> bool {
        s.m <= self.missionaries && s.c <= self.cannibals
    }

    pub fn is_legal_state(&self, s: BankState) -> Result<bool, StateError> {
        if !self.in_range(s) {
            return Err(StateError::OutOfRange {
                state: s,
                max_m: self.missionaries,
                max_c: self.cannibals,
            });
        }
        Ok(self.vector_is_legal(s.m, s.c))
    }

    pub fn is_legal_load(&self, e1: u32, e2: u32) -> bool {
        let people = e1 + e2;
        people > 0 && people <= self.boat && self.bank_is_safe(e1, e2)
    }

    /// All `(e1, e2)` the boat may carry, sorted ascending.
    pub fn legal_boat_loads(&self) -> Vec<(u32, u32)> {
        let mut loads = Vec::new();
        for e1 in 0..=self.boat {
            for e2 in 0..=self.boat - e1 {
                if self.is_legal_load(e1, e2) {
                    loads.push((e1, e2));
                }
            }
        }
        loads
    }

    /// Legal successors of a legal state, in ascending `(e1, e2)` order.
    pub fn legal_moves(&self, s: BankState) -> Vec<(Move, BankState)> {
        let direction = if s.boat_on_start {
            Direction::Forward
        } else {
            Direction::Back
        };
        self.legal_boat_loads()
            .into_iter()
            .filter_map(|(e1, e2)| {
                let mv = Move::new(e1, e2, direction);
                let next = mv.apply(self, s)?;
                self.vector_is_legal(next.m, next.c).then_some((mv, next))
            })
            .collect()
    }

    /// Number of legal `(m, c)` starting-bank vectors, ignoring the boat.
    pub fn legal_vector_count(&self) -> usize {
        (0..=self.missionaries)
            .flat_map(|m| (0..=self.cannibals).map(move |c| (m, c)))
            .filter(|&(m, c)| self.vector_is_legal(m, c))
            .count()
    }

    /// Maps a state to its mirror image `[M - m, C - c, 1 - b]`.
    pub fn complement(&self, s: BankState) -> BankState {
        BankState::new(
            self.missionaries - s.m,
            self.cannibals - s.c,
            !s.boat_on_start,
        )
    }
}

impl fmt::Display for McParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(M={}, C={}, B={}, d={})",
            self.missionaries, self.cannibals, self.boat, self.margin
        )
    }
}

/// Population of the starting bank plus the boat side.
///
/// Serialized as the triple `[m, c, b]` with `b = 1` when the boat is at the
/// starting bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u32; 3]", try_from = "[u32; 3]")]
pub struct BankState {
    pub m: u32,
    pub c: u32,
    pub boat_on_start: bool,
}

impl BankState {
    pub const fn new(m: u32, c: u32, boat_on_start: bool) -> Self {
        Self {
            m,
            c,
            boat_on_start,
        }
    }

    /// `1` when the boat is at the starting bank, `0` otherwise.
    pub fn boat_flag(&self) -> u32 {
        u32::from(self.boat_on_start)
    }
}

impl From<BankState> for [u32; 3] {
    fn from(s: BankState) -> Self {
        [s.m, s.c, s.boat_flag()]
    }
}

impl TryFrom<[u32; 3]> for BankState {
    type Error = String;

    fn try_from([m, c, b]: [u32; 3]) -> Result<Self, Self::Error> {
        match b {
            0 | 1 => Ok(Self::new(m, c, b == 1)),
            other => Err(format!("boat flag must be 0 or 1, got {other}")),
        }
    }
}

impl fmt::Display for BankState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.m, self.c, self.boat_flag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Starting bank to far bank.
    Forward,
    /// Far bank back to the starting bank.
    Back,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Back,
            Direction::Back => Direction::Forward,
        }
    }
}

/// One crossing: `e1` missionaries and `e2` cannibals in the boat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub missionaries: u32,
    pub cannibals: u32,
    pub direction: Direction,
}

impl Move {
    pub const fn new(missionaries: u32, cannibals: u32, direction: Direction) -> Self {
        Self {
            missionaries,
            cannibals,
            direction,
        }
    }

    pub const fn forward(missionaries: u32, cannibals: u32) -> Self {
        Self::new(missionaries, cannibals, Direction::Forward)
    }

    pub const fn back(missionaries: u32, cannibals: u32) -> Self {
        Self::new(missionaries, cannibals, Direction::Back)
    }

    pub fn people(&self) -> u32 {
        self.missionaries + self.cannibals
    }

    /// Moves the boat load across, ignoring every rule except that the boat
    /// must be on the departure side and the counts must stay inside the box.
    pub fn apply(&self, p: &McParams, s: BankState) -> Option<BankState> {
        match (self.direction, s.boat_on_start) {
            (Direction::Forward, true) => Some(BankState::new(
                s.m.checked_sub(self.missionaries)?,
                s.c.checked_sub(self.cannibals)?,
                false,
            )),
            (Direction::Back, false) => {
                let m = s.m + self.missionaries;
                let c = s.c + self.cannibals;
                (m <= p.missionaries && c <= p.cannibals).then_some(BankState::new(m, c, true))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            Direction::Forward => '+',
            Direction::Back => '-',
        };
        write!(f, "{sign}({},{})", self.missionaries, self.cannibals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("solution is empty")]
    Empty,
    #[error("transition {index} is illegal: {reason}")]
    IllegalTransition { index: usize, reason: String },
    #[error("state {index} ({state}) is illegal")]
    IllegalState { index: usize, state: BankState },
    #[error("state {index} ({state}) repeats an earlier state")]
    Repeated { index: usize, state: BankState },
    #[error("path must start at {expected}, found {found}")]
    WrongStart {
        expected: BankState,
        found: BankState,
    },
    #[error("path must end at {expected}, found {found}")]
    WrongEnd {
        expected: BankState,
        found: BankState,
    },
}

/// A sequence of bank states from `[M, C, 1]` to `[0, 0, 0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SolutionPath {
    pub states: Vec<BankState>,
}

impl SolutionPath {
    pub fn new(states: Vec<BankState>) -> Self {
        Self { states }
    }

    pub fn crossings(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    /// The boat loads between consecutive states; assumes the path alternates
    /// boat sides.
    pub fn moves(&self) -> Vec<Move> {
        self.states
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                if a.boat_on_start {
                    Move::forward(a.m.abs_diff(b.m), a.c.abs_diff(b.c))
                } else {
                    Move::back(a.m.abs_diff(b.m), a.c.abs_diff(b.c))
                }
            })
            .collect()
    }

    /// Checks every rule a solution must obey and reports the first failure.
    pub fn validate(&self, p: &McParams) -> Result<(), PathError> {
        let first = *self.states.first().ok_or(PathError::Empty)?;
        let last = *self.states.last().ok_or(PathError::Empty)?;
        if first != p.initial_state() {
            return Err(PathError::WrongStart {
                expected: p.initial_state(),
                found: first,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for (index, &state) in self.states.iter().enumerate() {
            if !matches!(p.is_legal_state(state), Ok(true)) {
                return Err(PathError::IllegalState { index, state });
            }
            if !seen.insert(state) {
                return Err(PathError::Repeated { index, state });
            }
        }
        for (index, w) in self.states.windows(2).enumerate() {
            let legal = p
                .legal_moves(w[0])
                .into_iter()
                .any(|(_, next)| next == w[1]);
            if !legal {
                return Err(PathError::IllegalTransition {
                    index,
                    reason: format!("no legal crossing leads from {} to {}", w[0], w[1]),
                });
            }
        }
        if last != p.goal_state() {
            return Err(PathError::WrongEnd {
                expected: p.goal_state(),
                found: last,
            });
        }
        Ok(())
    }

    /// Mirror every state and reverse time. Maps solutions to solutions.
    pub fn complement_reversed(&self, p: &McParams) -> Self {
        Self::new(self.states.iter().rev().map(|&s| p.complement(s)).collect())
    }
}

impl fmt::Display for SolutionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// The state graph of an instance: every legal `[m, c, b]` is a vertex.
///
/// Vertex 0 is the initial state, the last vertex is the goal, the rest
/// follow in lexicographic `(m, c, b)` order.
pub fn mc_graph(p: &McParams) -> (Digraph, StateIndex<BankState>) {
    let mut states = Vec::new();
    for m in 0..=p.missionaries {
        for c in 0..=p.cannibals {
            if p.vector_is_legal(m, c) {
                states.push(BankState::new(m, c, false));
                states.push(BankState::new(m, c, true));
            }
        }
    }
    let index = StateIndex::new(p.initial_state(), p.goal_state(), states);
    let graph =
        index.build_graph(|&s| p.legal_moves(s).into_iter().map(|(_, next)| next).collect());
    (graph, index)
}

fn people(n: u32, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn load_phrase(mv: &Move) -> String {
    let parts: Vec<String> = [
        (mv.missionaries, "missionary", "missionaries"),
        (mv.cannibals, "cannibal", "cannibals"),
    ]
    .into_iter()
    .filter(|&(n, _, _)| n > 0)
    .map(|(n, one, many)| people(n, one, many))
    .collect();
    parts.join(" and ")
}

fn bank_phrase(m: u32, c: u32) -> String {
    format!(
        "{}, {}",
        people(m, "missionary", "missionaries"),
        people(c, "cannibal", "cannibals")
    )
}

/// Writes a solution out in words, one line per crossing.
///
/// The final line also confirms that everybody is across.
pub fn spell_out(p: &McParams, sol: &SolutionPath) -> Result<String, PathError> {
    sol.validate(p)?;
    let moves = sol.moves();
    let mut lines = Vec::with_capacity(moves.len());
    for (i, (mv, after)) in moves.iter().zip(&sol.states[1..]).enumerate() {
        let verb = if mv.people() == 1 { "crosses" } else { "cross" };
        let destination = match mv.direction {
            Direction::Forward => "to the far bank",
            Direction::Back => "back to the starting bank",
        };
        let mut line = format!(
            "Crossing {}: {} {verb} {destination}. Starting bank: {}; far bank: {}.",
            i + 1,
            load_phrase(mv),
            bank_phrase(after.m, after.c),
            bank_phrase(p.missionaries - after.m, p.cannibals - after.c),
        );
        if i + 1 == moves.len() {
            line.push_str(&format!(
                " Everyone is across after {}.",
                people(moves.len() as u32, "crossing", "crossings")
            ));
        }
        lines.push(line);
    }
    Ok(lines.join("\n"))
}
