//! Word-problem oracle for loop words in a spanning-tree presentation.
//!
//! Strategies run in order until one answers. Free reduction to the empty
//! word is always a proof of triviality; a nonempty reduced word is only
//! declared nontrivial when the complex has no faces. Todd–Coxeter answers
//! exactly once the table for the trivial subgroup closes. Diagram search
//! answers `Trivial` when a filling exists within its area bound and never
//! answers `Nontrivial`.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::Complex2;
use crate::coset::{enumerate, CosetTable};
use crate::error::Result;
use crate::pi1::{free_reduce, Presentation, Word};
use crate::reduction::Reducer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Free,
    ToddCoxeter { limit: usize },
    DehnSearch { area: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Answer {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Work limits shared by every undecidable query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub coset_limit: usize,
    pub area_limit: usize,
    pub sphere_limit: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { coset_limit: 20_000, area_limit: 8, sphere_limit: 4 }
    }
}

impl Budgets {
    pub fn chain(&self) -> Vec<Strategy> {
        vec![
            Strategy::Free,
            Strategy::ToddCoxeter { limit: self.coset_limit },
            Strategy::DehnSearch { area: self.area_limit },
        ]
    }
}

#[derive(Debug)]
pub struct WordOracle {
    pres: Presentation,
    has_faces: bool,
    chain: Vec<Strategy>,
    tables: HashMap<usize, Option<CosetTable>>,
    reducer: Reducer,
    cache: HashMap<Word, Answer>,
}

impl WordOracle {
    pub fn new(c: &Complex2, base: usize, chain: Vec<Strategy>) -> Result<WordOracle> {
        let pres = Presentation::new(c, base)?;
        Ok(WordOracle::from_presentation(pres, c.face_count() > 0, chain))
    }

    pub fn from_presentation(pres: Presentation, has_faces: bool, chain: Vec<Strategy>) -> WordOracle {
        let reducer = Reducer::new(pres.relators.clone());
        WordOracle { pres, has_faces, chain, tables: HashMap::new(), reducer, cache: HashMap::new() }
    }

    pub fn with_budgets(c: &Complex2, base: usize, budgets: &Budgets) -> Result<WordOracle> {
        WordOracle::new(c, base, budgets.chain())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn chain(&self) -> &[Strategy] {
        &self.chain
    }

    /// The table of the trivial subgroup, if it closes within `limit`.
    pub fn table(&mut self, limit: usize) -> Option<&CosetTable> {
        let pres = &self.pres;
        self.tables
            .entry(limit)
            .or_insert_with(|| enumerate(pres.generator_count(), &pres.relators, &[], limit).ok())
            .as_ref()
    }

    /// Runs the strategy chain on a word in the presentation's letters.
    pub fn decide(&mut self, w: &[u32]) -> Answer {
        let w = free_reduce(w);
        if let Some(&a) = self.cache.get(&w) {
            return a;
        }
        let mut answer = Answer::Unknown;
        for s in self.chain.clone() {
            answer = self.decide_with(s, &w);
            if answer != Answer::Unknown {
                break;
            }
        }
        self.cache.insert(w, answer);
        answer
    }

    /// A single strategy, bypassing the chain and the cache.
    pub fn decide_with(&mut self, s: Strategy, w: &[u32]) -> Answer {
        let w = free_reduce(w);
        match s {
            Strategy::Free => {
                if w.is_empty() {
                    Answer::Trivial
                } else if !self.has_faces {
                    Answer::Nontrivial
                } else {
                    Answer::Unknown
                }
            }
            Strategy::ToddCoxeter { limit } => match self.table(limit) {
                Some(t) if t.trace(0, &w) == 0 => Answer::Trivial,
                Some(_) => Answer::Nontrivial,
                None => Answer::Unknown,
            },
            Strategy::DehnSearch { area } => {
                if self.reducer.min_area(&w, area).is_some() {
                    Answer::Trivial
                } else {
                    Answer::Unknown
                }
            }
        }
    }

    /// Whether two words denote the same element.
    pub fn equal(&mut self, a: &[u32], b: &[u32]) -> Answer {
        let mut w = crate::pi1::inverse(a);
        w.extend_from_slice(b);
        self.decide(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn free_strategy_on_graphs() {
        let mut o = WordOracle::new(&fixtures::cycle(3), 0, vec![Strategy::Free]).unwrap();
        assert_eq!(o.decide(&[0]), Answer::Nontrivial);
        assert_eq!(o.decide(&[0, 1]), Answer::Trivial);
    }

    #[test]
    fn todd_coxeter_on_z3() {
        let mut o = WordOracle::new(&fixtures::z3pres(), 0, vec![Strategy::ToddCoxeter { limit: 100 }]).unwrap();
        assert_eq!(o.decide(&[0, 0, 0]), Answer::Trivial);
        assert_eq!(o.decide(&[0, 0]), Answer::Nontrivial);
        assert_eq!(o.decide(&[0, 0, 0, 0]), Answer::Nontrivial);
    }

    #[test]
    fn dehn_search_on_torus() {
        let mut o = WordOracle::new(&fixtures::torus1(), 0, vec![Strategy::DehnSearch { area: 3 }]).unwrap();
        assert_eq!(o.decide(&[0, 2, 1, 3]), Answer::Trivial);
        assert_eq!(o.decide(&[0]), Answer::Unknown);
        let mut full = WordOracle::with_budgets(&fixtures::torus1(), 0, &Budgets { coset_limit: 500, area_limit: 2, sphere_limit: 1 }).unwrap();
        assert_eq!(full.decide(&[0, 2]), Answer::Unknown);
    }
}
