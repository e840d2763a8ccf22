use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Local Hilbert space of a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeSpec {
    /// Two-level system spanned by |0⟩ and |1⟩.
    Qubit,
    /// Bosonic mode truncated at `cutoff` quanta (dimension `cutoff + 1`).
    Bosonic { cutoff: usize },
}

impl ModeSpec {
    pub fn bosonic(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidCutoff(cutoff));
        }
        Ok(ModeSpec::Bosonic { cutoff })
    }

    pub fn dim(&self) -> usize {
        self.max_occupation() + 1
    }

    pub fn max_occupation(&self) -> usize {
        match *self {
            ModeSpec::Qubit => 1,
            ModeSpec::Bosonic { cutoff } => cutoff,
        }
    }

    pub fn is_bosonic(&self) -> bool {
        matches!(self, ModeSpec::Bosonic { .. })
    }
}

impl fmt::Display for ModeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeSpec::Qubit => write!(f, "qubit"),
            ModeSpec::Bosonic { cutoff } => write!(f, "bosonic(cutoff={cutoff})"),
        }
    }
}

/// Ordered list of named modes.
///
/// The product basis is row-major over the mode order: the last mode varies
/// fastest and occupations run in ascending order within each mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeRegister {
    modes: Vec<(String, ModeSpec)>,
}

impl ModeRegister {
    pub fn new<S, I>(modes: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, ModeSpec)>,
    {
        let modes: Vec<(String, ModeSpec)> =
            modes.into_iter().map(|(n, s)| (n.into(), s)).collect();
        let mut seen = HashSet::new();
        for (name, spec) in &modes {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateMode(name.clone()));
            }
            if let ModeSpec::Bosonic { cutoff: 0 } = spec {
                return Err(Error::InvalidCutoff(0));
            }
        }
        Ok(Self { modes })
    }

    /// Empty register (dimension 1), the unit of [`ModeRegister::concat`].
    pub fn empty() -> Self {
        Self { modes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[(String, ModeSpec)] {
        &self.modes
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.modes.iter().map(|(n, _)| n.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.modes.iter().any(|(n, _)| n == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.modes
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownMode(name.to_string()))
    }

    pub fn spec(&self, name: &str) -> Result<ModeSpec> {
        Ok(self.modes[self.index_of(name)?].1)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modes.iter().map(|(_, s)| s.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.modes.iter().map(|(_, s)| s.dim()).product()
    }

    pub fn strides(&self) -> Vec<usize> {
        let dims = self.dims();
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        strides
    }

    /// Flat product-basis index of an occupation tuple (one entry per mode).
    pub fn flat_index(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.modes.len() {
            return Err(Error::RegisterMismatch(format!(
                "expected {} occupations, got {}",
                self.modes.len(),
                occupations.len()
            )));
        }
        let mut idx = 0;
        for ((name, spec), &n) in self.modes.iter().zip(occupations) {
            if n > spec.max_occupation() {
                return Err(Error::OccupationOutOfRange {
                    mode: name.clone(),
                    max: spec.max_occupation(),
                    got: n,
                });
            }
            idx = idx * spec.dim() + n;
        }
        Ok(idx)
    }

    /// Inverse of [`ModeRegister::flat_index`].
    pub fn occupations(&self, mut index: usize) -> Vec<usize> {
        let mut occ = vec![0; self.modes.len()];
        for (i, (_, spec)) in self.modes.iter().enumerate().rev() {
            occ[i] = index % spec.dim();
            index /= spec.dim();
        }
        occ
    }

    /// Concatenation `self ⊗ other`; mode names must be disjoint.
    pub fn concat(&self, other: &ModeRegister) -> Result<Self> {
        ModeRegister::new(self.modes.iter().chain(other.modes.iter()).cloned())
    }

    /// Register restricted to `keep`, preserving the original mode order.
    pub fn subset(&self, keep: &[&str]) -> Result<Self> {
        for name in keep {
            self.index_of(name)?;
        }
        Ok(Self {
            modes: self
                .modes
                .iter()
                .filter(|(n, _)| keep.contains(&n.as_str()))
                .cloned()
                .collect(),
        })
    }

    pub fn without(&self, name: &str) -> Result<Self> {
        self.index_of(name)?;
        Ok(Self {
            modes: self.modes.iter().filter(|(n, _)| n != name).cloned().collect(),
        })
    }

    pub(crate) fn require_bosonic(&self, name: &str) -> Result<usize> {
        let i = self.index_of(name)?;
        if !self.modes[i].1.is_bosonic() {
            return Err(Error::ModeKind { mode: name.to_string(), expected: "bosonic" });
        }
        Ok(i)
    }

    pub(crate) fn require_qubit(&self, name: &str) -> Result<usize> {
        let i = self.index_of(name)?;
        if self.modes[i].1 != ModeSpec::Qubit {
            return Err(Error::ModeKind { mode: name.to_string(), expected: "qubit" });
        }
        Ok(i)
    }
}
