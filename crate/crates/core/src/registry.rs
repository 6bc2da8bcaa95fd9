//! The environment catalog.

use alloc::boxed::Box;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family};
use crate::error::Error;
use crate::{cii, cri, eri, gsi, ipi, psi};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnvFilter {
    pub family: Option<Family>,
    pub difficulty: Option<Difficulty>,
}

impl EnvFilter {
    pub fn family(f: Family) -> Self {
        EnvFilter { family: Some(f), difficulty: None }
    }

    pub fn matches(&self, spec: &EnvSpec) -> bool {
        self.family.is_none_or(|f| f == spec.family) && self.difficulty.is_none_or(|d| d == spec.difficulty)
    }
}

fn all_specs() -> impl Iterator<Item = &'static EnvSpec> {
    cii::SPECS
        .iter()
        .map(|(s, _)| s)
        .chain(cri::SPECS.iter().map(|(s, _)| s))
        .chain(psi::SPECS.iter().map(|(s, _)| s))
        .chain(eri::SPECS.iter().map(|(s, _)| s))
        .chain(ipi::SPECS.iter().map(|(s, _)| s))
        .chain(gsi::SPECS.iter().map(|(s, _)| s))
}

/// Registered specs matching `filter`, ordered by id.
pub fn list_environments(filter: EnvFilter) -> Vec<&'static EnvSpec> {
    let mut v: Vec<&'static EnvSpec> = all_specs().filter(|s| filter.matches(s)).collect();
    v.sort_by_key(|s| s.id);
    v
}

pub fn lookup(id: &str) -> Option<&'static EnvSpec> {
    all_specs().find(|s| s.id == id)
}

/// Builds a seeded instance. The test set is fixed here, before any query.
pub fn instantiate(id: &str, seed: u64) -> Result<Box<dyn BlackBox>, Error> {
    let family = lookup(id).ok_or_else(|| Error::NotFound(id.to_string()))?.family;
    let built = match family {
        Family::Cii => cii::build(id, seed),
        Family::Cri => cri::build(id, seed),
        Family::Psi => psi::build(id, seed),
        Family::Eri => eri::build(id, seed),
        Family::Ipi => ipi::build(id, seed),
        Family::Gsi => gsi::build(id, seed),
    };
    built.ok_or_else(|| Error::NotFound(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let all = list_environments(EnvFilter::default());
        for w in all.windows(2) {
            assert!(w[0].id < w[1].id, "{} / {}", w[0].id, w[1].id);
        }
    }

    #[test]
    fn ids_carry_their_family_prefix() {
        for s in list_environments(EnvFilter::default()) {
            let prefix = s.id.split('/').next().unwrap();
            assert_eq!(Family::parse(prefix), Some(s.family), "{}", s.id);
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(instantiate("nonexistent", 0), Err(Error::NotFound(_))));
    }
}
