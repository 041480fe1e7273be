//! River crossings with any number of species.
//!
//! A puzzle is described by the starting population of each species, the
//! boat capacity, a rule for which populations may share a bank and a rule for
//! which loads the boat may carry. The bank rule also receives whether the boat
//! (and whoever rows it) is on that bank, which puzzles with an implicit
//! ferryman need.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Digraph, StateIndex};
use crate::model::McParams;

pub type BankRule = Arc<dyn Fn(&[u32], bool) -> bool + Send + Sync>;
pub type LoadRule = Arc<dyn Fn(&[u32]) -> bool + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpeciesError {
    #[error("a puzzle needs at least one species")]
    NoSpecies,
    #[error("the starting position {0:?} breaks the bank rule")]
    IllegalStart(Vec<u32>),
    #[error("the finishing position breaks the bank rule")]
    IllegalGoal,
}

#[derive(Clone)]
pub struct SpeciesPuzzle {
    name: String,
    amounts: Vec<u32>,
    capacity: u32,
    empty_crossings: bool,
    bank_rule: BankRule,
    load_rule: LoadRule,
}

impl fmt::Debug for SpeciesPuzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpeciesPuzzle")
            .field("name", &self.name)
            .field("amounts", &self.amounts)
            .field("capacity", &self.capacity)
            .field("empty_crossings", &self.empty_crossings)
            .finish_non_exhaustive()
    }
}

impl SpeciesPuzzle {
    pub fn new(
        name: impl Into<String>,
        amounts: Vec<u32>,
        capacity: u32,
        bank_rule: BankRule,
        load_rule: LoadRule,
    ) -> Result<Self, SpeciesError> {
        Self {
            name: name.into(),
            amounts,
            capacity,
            empty_crossings: false,
            bank_rule,
            load_rule,
        }
        .checked()
    }

    /// Permits crossings that carry none of the species, for puzzles where an
    /// unlisted ferryman always rows.
    pub fn with_empty_crossings(mut self, allow: bool) -> Self {
        self.empty_crossings = allow;
        self
    }

    fn checked(self) -> Result<Self, SpeciesError> {
        if self.amounts.is_empty() {
            return Err(SpeciesError::NoSpecies);
        }
        if !self.is_legal(&self.amounts, true) {
            return Err(SpeciesError::IllegalStart(self.amounts.clone()));
        }
        if !self.is_legal(&vec![0; self.amounts.len()], false) {
            return Err(SpeciesError::IllegalGoal);
        }
        Ok(self)
    }

    /// The two-species encoding of a missionaries-and-cannibals instance.
    ///
    /// The parameters are not re-validated here so that boundary family
    /// members (for example `C = 0`) can be expressed.
    pub fn missionaries_cannibals(p: &McParams) -> Self {
        let margin = p.margin;
        let safe = move |v: &[u32]| v[0] == 0 || v[1] == 0 || v[0] >= v[1] + margin;
        Self {
            name: format!("missionaries and cannibals {p}"),
            amounts: vec![p.missionaries, p.cannibals],
            capacity: p.boat,
            empty_crossings: false,
            bank_rule: Arc::new(move |v, _| safe(v)),
            load_rule: Arc::new(safe),
        }
    }

    /// Wolf, goat and cabbage (species in that order). The farmer rows and is
    /// not counted; the boat holds one passenger besides him.
    pub fn wolf_goat_cabbage() -> Self {
        let bank: BankRule = Arc::new(|v, farmer_here| {
            let (wolf, goat, cabbage) = (v[0] > 0, v[1] > 0, v[2] > 0);
            farmer_here || !(goat && (wolf || cabbage))
        });
        Self::new(
            "wolf, goat and cabbage",
            vec![1, 1, 1],
            1,
            bank,
            Arc::new(|_| true),
        )
        .expect("the classic start and finish are safe")
        .with_empty_crossings(true)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn species_count(&self) -> usize {
        self.amounts.len()
    }

    pub fn amounts(&self) -> &[u32] {
        &self.amounts
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn in_box(&self, v: &[u32]) -> bool {
        v.len() == self.amounts.len() && v.iter().zip(&self.amounts).all(|(a, max)| a <= max)
    }

    /// The starting bank holds `v`; checks both banks. `boat_on_start` tells
    /// which of the two has the boat.
    pub fn is_legal(&self, v: &[u32], boat_on_start: bool) -> bool {
        if !self.in_box(v) {
            return false;
        }
        let far: Vec<u32> = self.amounts.iter().zip(v).map(|(a, x)| a - x).collect();
        (self.bank_rule)(v, boat_on_start) && (self.bank_rule)(&far, !boat_on_start)
    }

    pub fn is_legal_load(&self, load: &[u32]) -> bool {
        let total: u32 = load.iter().sum();
        let size_ok = total <= self.capacity && (total > 0 || self.empty_crossings);
        size_ok && (self.load_rule)(load)
    }

    /// Every load the boat may carry, in ascending lexicographic order.
    pub fn legal_loads(&self) -> Vec<Vec<u32>> {
        let bound = vec![self.capacity; self.amounts.len()];
        box_vectors(&bound)
            .filter(|load| self.is_legal_load(load))
            .collect()
    }

    /// Every vector `0 <= v <= amounts`, in ascending lexicographic order.
    pub fn box_vectors(&self) -> impl Iterator<Item = Vec<u32>> {
        box_vectors(&self.amounts)
    }

    pub fn initial_state(&self) -> SpeciesState {
        SpeciesState {
            amounts: self.amounts.clone(),
            boat_on_start: true,
        }
    }

    pub fn goal_state(&self) -> SpeciesState {
        SpeciesState {
            amounts: vec![0; self.amounts.len()],
            boat_on_start: false,
        }
    }

    pub fn successors(&self, s: &SpeciesState) -> Vec<SpeciesState> {
        let mut out = Vec::new();
        for load in self.legal_loads() {
            let next: Option<Vec<u32>> = if s.boat_on_start {
                s.amounts
                    .iter()
                    .zip(&load)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect()
            } else {
                Some(s.amounts.iter().zip(&load).map(|(a, b)| a + b).collect())
            };
            if let Some(v) = next {
                if self.is_legal(&v, !s.boat_on_start) {
                    out.push(SpeciesState {
                        amounts: v,
                        boat_on_start: !s.boat_on_start,
                    });
                }
            }
        }
        out
    }
}

/// Starting-bank population vector plus boat side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpeciesState {
    pub amounts: Vec<u32>,
    pub boat_on_start: bool,
}

impl fmt::Display for SpeciesState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for a in &self.amounts {
            write!(f, "{a}, ")?;
        }
        write!(f, "{}]", u8::from(self.boat_on_start))
    }
}

pub(crate) fn box_vectors(bound: &[u32]) -> impl Iterator<Item = Vec<u32>> {
    let bound = bound.to_vec();
    let mut next = Some(vec![0u32; bound.len()]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut v = current.clone();
        for i in (0..v.len()).rev() {
            if v[i] < bound[i] {
                v[i] += 1;
                next = Some(v);
                break;
            }
            v[i] = 0;
        }
        Some(current)
    })
}

/// State graph of a species puzzle, laid out like the missionaries-and-cannibals
/// graph: start first, finish last, everything else in ascending order.
pub fn species_graph(sp: &SpeciesPuzzle) -> (Digraph, StateIndex<SpeciesState>) {
    let mut states = Vec::new();
    for v in sp.box_vectors() {
        for boat_on_start in [false, true] {
            if sp.is_legal(&v, boat_on_start) {
                states.push(SpeciesState {
                    amounts: v.clone(),
                    boat_on_start,
                });
            }
        }
    }
    let index = StateIndex::new(sp.initial_state(), sp.goal_state(), states);
    let graph = index.build_graph(|s| sp.successors(s));
    (graph, index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::shortest_distance;
    use crate::model::mc_graph;

    #[test]
    fn box_enumeration_is_lexicographic() {
        let all: Vec<_> = box_vectors(&[1, 2]).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
        assert_eq!(box_vectors(&[]).count(), 1);
    }

    #[test]
    fn mc_through_generic_path_matches() {
        for (m, c, b, d) in [(3, 3, 2, 0), (4, 4, 2, 0), (5, 3, 3, 1), (2, 1, 2, 1)] {
            let p = McParams::new(m, c, b, d).unwrap();
            let (direct, direct_index) = mc_graph(&p);
            let (generic, generic_index) =
                species_graph(&SpeciesPuzzle::missionaries_cannibals(&p));
            assert_eq!(direct, generic);
            for (a, b) in direct_index.states().iter().zip(generic_index.states()) {
                assert_eq!(vec![a.m, a.c], b.amounts);
                assert_eq!(a.boat_on_start, b.boat_on_start);
            }
        }
    }

    #[test]
    fn wolf_goat_cabbage_takes_seven_crossings() {
        let (g, index) = species_graph(&SpeciesPuzzle::wolf_goat_cabbage());
        assert_eq!(
            shortest_distance(&g, index.source(), index.sink()),
            Ok(Some(7))
        );
    }

    #[test]
    fn single_species_crosses_at_once() {
        let sp = SpeciesPuzzle::new(
            "pair",
            vec![2],
            2,
            Arc::new(|_, _| true),
            Arc::new(|_| true),
        )
        .unwrap();
        let (g, index) = species_graph(&sp);
        assert_eq!(
            shortest_distance(&g, index.source(), index.sink()),
            Ok(Some(1))
        );
    }

    #[test]
    fn illegal_start_is_rejected() {
        let never_alone: BankRule = Arc::new(|v, here| here || v[0] == 0);
        let err = SpeciesPuzzle::new("x", vec![1, 1], 2, never_alone.clone(), Arc::new(|_| true));
        assert!(err.is_ok());
        let bad = SpeciesPuzzle::new(
            "x",
            vec![2],
            2,
            Arc::new(|v, _| v[0] != 2),
            Arc::new(|_| true),
        );
        assert_eq!(bad.unwrap_err(), SpeciesError::IllegalStart(vec![2]));
        let no_species = SpeciesPuzzle::new("x", vec![], 2, never_alone, Arc::new(|_| true));
        assert_eq!(no_species.unwrap_err(), SpeciesError::NoSpecies);
    }
}
