use std::collections::BTreeMap;

use crate::exact_arith::MultiLaurent;

/// Spin word; the most significant of the `sites` bits is site 1, a set bit is `↓`.
pub type Word = u32;

/// A vector in `V^N` with Laurent-polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    sites: usize,
    nvars: usize,
    comps: BTreeMap<Word, MultiLaurent>,
}

impl StateVector {
    pub fn zero(sites: usize, nvars: usize) -> Self {
        StateVector {
            sites,
            nvars,
            comps: BTreeMap::new(),
        }
    }

    pub fn basis(sites: usize, nvars: usize, word: Word) -> Self {
        let mut v = Self::zero(sites, nvars);
        v.add_to(word, &MultiLaurent::one(nvars));
        v
    }

    /// `|s⟩ = |↑↓⟩ − |↓↑⟩`.
    pub fn singlet(nvars: usize) -> Self {
        let mut v = Self::zero(2, nvars);
        v.add_to(0b01, &MultiLaurent::one(nvars));
        v.add_to(0b10, &-MultiLaurent::one(nvars));
        v
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn component(&self, word: Word) -> MultiLaurent {
        self.comps
            .get(&word)
            .cloned()
            .unwrap_or_else(|| MultiLaurent::zero(self.nvars))
    }

    pub fn components(&self) -> impl Iterator<Item = (Word, &MultiLaurent)> {
        self.comps.iter().map(|(w, c)| (*w, c))
    }

    pub fn add_to(&mut self, word: Word, v: &MultiLaurent) {
        assert!(self.sites == 32 || word >> self.sites == 0);
        let e = self
            .comps
            .entry(word)
            .or_insert_with(|| MultiLaurent::zero(self.nvars));
        *e = &*e + v;
        if e.is_empty() {
            self.comps.remove(&word);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Total number of terms across all components.
    pub fn term_count(&self) -> usize {
        self.comps.values().map(|c| c.len()).sum()
    }

    pub fn scale(&self, c: &MultiLaurent) -> Self {
        let mut out = Self::zero(self.sites, self.nvars);
        for (w, v) in &self.comps {
            out.add_to(*w, &(v * c));
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.sites, other.sites);
        let mut out = self.clone();
        for (w, v) in &other.comps {
            out.add_to(*w, v);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-MultiLaurent::one(self.nvars)))
    }

    /// Apply a fallible map to every component.
    pub fn try_map<F>(&self, f: F) -> crate::Result<Self>
    where
        F: Fn(&MultiLaurent) -> crate::Result<MultiLaurent>,
    {
        let mut out = Self::zero(self.sites, self.nvars);
        for (w, v) in &self.comps {
            out.add_to(*w, &f(v)?);
        }
        Ok(out)
    }

    /// `|a⟩ ⊗ |b⟩`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.sites + other.sites, self.nvars);
        for (a, ca) in &self.comps {
            for (b, cb) in &other.comps {
                out.add_to((a << other.sites) | b, &(ca * cb));
            }
        }
        out
    }

    /// Transpose pairing `⟨self|other⟩`, no conjugation.
    pub fn pair(&self, other: &Self) -> MultiLaurent {
        assert_eq!(self.sites, other.sites);
        let mut acc = MultiLaurent::zero(self.nvars);
        for (w, v) in &self.comps {
            if let Some(u) = other.comps.get(w) {
                acc = &acc + &(v * u);
            }
        }
        acc
    }

    /// Whether site `k` (0-based from the left) is down in `word`.
    pub fn is_down(&self, word: Word, k: usize) -> bool {
        (word >> (self.sites - 1 - k)) & 1 == 1
    }

    /// Every nonzero component has exactly `downs` down spins.
    pub fn has_downs(&self, downs: u32) -> bool {
        self.comps.keys().all(|w| w.count_ones() == downs)
    }

    pub fn label(&self, word: Word) -> String {
        (0..self.sites)
            .map(|k| if self.is_down(word, k) { '↓' } else { '↑' })
            .collect()
    }
}

/// `Ξ_N^i : V^{N−2} → V^N`, inserting a singlet at sites `i, i+1` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XiMap {
    pub sites: usize,
    pub position: usize,
}

impl XiMap {
    pub fn new(sites: usize, position: usize) -> crate::Result<Self> {
        if sites < 2 || position < 1 || position > sites - 1 {
            return crate::error::arg(format!(
                "Ξ needs N >= 2 and 1 <= i <= N-1, got N = {sites}, i = {position}"
            ));
        }
        Ok(XiMap { sites, position })
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(v.sites() + 2, self.sites);
        let right = self.sites - self.position - 1;
        let mut out = StateVector::zero(self.sites, v.nvars());
        for (w, c) in v.components() {
            let lo = w & ((1 << right) - 1);
            let hi = w >> right;
            let base = (hi << (right + 2)) | lo;
            out.add_to(base | (0b01 << right), c);
            out.add_to(base | (0b10 << right), &-c);
        }
        out
    }

    /// Images of distinct basis vectors have disjoint nonempty supports.
    pub fn is_injective(&self, nvars: usize) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for w in 0..(1u32 << (self.sites - 2)) {
            let img = self.apply(&StateVector::basis(self.sites - 2, nvars, w));
            if img.is_zero() {
                return false;
            }
            for (u, _) in img.components() {
                if !seen.insert(u) {
                    return false;
                }
            }
        }
        true
    }
}
