//! Antichains of subsets: the minimal sets (𝕄) and minimal breaks (𝕂) of a
//! predicate, always kept in canonical order (cardinality, then mask value).

use std::fmt;

use crate::error::{Error, Result};
use crate::instances::comparable_pair;
use crate::subset::{GroundSet, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Minimal sets on which the predicate holds.
    Msp,
    /// Minimal sets whose removal falsifies the predicate.
    Mbp,
}

impl FamilyKind {
    pub fn dual(self) -> FamilyKind {
        match self {
            FamilyKind::Msp => FamilyKind::Mbp,
            FamilyKind::Mbp => FamilyKind::Msp,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Msp => "msp",
            FamilyKind::Mbp => "mbp",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalFamily {
    ground: GroundSet,
    kind: FamilyKind,
    members: Vec<Subset>,
}

pub fn sort_canonical(sets: &mut [Subset]) {
    sets.sort_by_key(|s| s.canonical_key());
}

impl MinimalFamily {
    /// Validates range and the antichain property, then sorts canonically.
    pub fn new(ground: GroundSet, kind: FamilyKind, mut members: Vec<Subset>) -> Result<Self> {
        for &s in &members {
            ground.check(s)?;
        }
        if let Some((a, b)) = comparable_pair(&members) {
            return Err(Error::NotAntichain(format!("{a} ⊆ {b}")));
        }
        sort_canonical(&mut members);
        Ok(MinimalFamily {
            ground,
            kind,
            members,
        })
    }

    /// For producers that already guarantee an antichain.
    pub(crate) fn from_antichain(ground: GroundSet, kind: FamilyKind, mut members: Vec<Subset>) -> Self {
        sort_canonical(&mut members);
        debug_assert!(comparable_pair(&members).is_none());
        MinimalFamily {
            ground,
            kind,
            members,
        }
    }

    pub fn from_labels(n: usize, kind: FamilyKind, sets: &[Vec<usize>]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let members = sets
            .iter()
            .map(|s| ground.subset_from_labels(s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        MinimalFamily::new(ground, kind, members)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|s| s.labels()).collect()
    }

    /// Members containing element `index` (0-based).
    pub fn restrict(&self, index: usize) -> Result<FamilyRestriction<'_>> {
        if index >= self.ground.size() {
            return Err(Error::ElementOutOfRange {
                element: index + 1,
                size: self.ground.size(),
            });
        }
        Ok(FamilyRestriction {
            base: self,
            element: index,
        })
    }

    /// Smallest member cardinality (the domination number for dominating sets).
    pub fn min_size(&self) -> Result<usize> {
        self.members
            .first()
            .map(|s| s.len())
            .ok_or(Error::EmptyFamily)
    }

    /// Union of all members: the elements that are not dummies.
    pub fn support(&self) -> Subset {
        self.members.iter().fold(Subset::EMPTY, |acc, &s| acc | s)
    }
}

pub fn min_msp_size(family: &MinimalFamily) -> Result<usize> {
    family.min_size()
}

/// View of the members of a family that contain one element.
#[derive(Clone, Copy, Debug)]
pub struct FamilyRestriction<'a> {
    base: &'a MinimalFamily,
    element: usize,
}

impl<'a> FamilyRestriction<'a> {
    pub fn base(&self) -> &'a MinimalFamily {
        self.base
    }

    pub fn element(&self) -> usize {
        self.element
    }

    pub fn members(&self) -> impl Iterator<Item = Subset> + 'a {
        let e = self.element;
        self.base.members.iter().copied().filter(move |s| s.has(e))
    }

    pub fn to_vec(&self) -> Vec<Subset> {
        self.members().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.members().next().is_none()
    }
}
