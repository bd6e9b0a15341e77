use num_rational::BigRational;

/// Fixed-magnetisation sector of an `N`-site chain.
///
/// A state is a bit word with site 1 in the most significant position and a
/// set bit meaning spin down. With `↑ < ↓` the lexicographic order of spin
/// words is then the numeric order of the words, which is how `states` is
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorBasis {
    sites: usize,
    downs: usize,
    states: Vec<u64>,
}

impl SectorBasis {
    /// The sector with `⌊N/2⌋` down spins.
    pub fn new(sites: usize) -> Self {
        Self::with_downs(sites, sites / 2)
    }

    pub fn with_downs(sites: usize, downs: usize) -> Self {
        assert!(sites < 64, "chain too long for a 64-bit word");
        let mut states = Vec::new();
        if downs <= sites {
            // Gosper's hack walks all words with `downs` set bits in increasing order
            if downs == 0 {
                states.push(0);
            } else {
                let mut w: u64 = (1u64 << downs) - 1;
                let limit = 1u64 << sites;
                while w < limit {
                    states.push(w);
                    let c = w & w.wrapping_neg();
                    let r = w + c;
                    w = (((r ^ w) >> 2) / c) | r;
                }
            }
        }
        SectorBasis {
            sites,
            downs,
            states,
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn downs(&self) -> usize {
        self.downs
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn index_of(&self, word: u64) -> Option<usize> {
        self.states.binary_search(&word).ok()
    }

    /// `(#↑ − #↓)/2`.
    pub fn magnetization(&self) -> BigRational {
        let ups = (self.sites - self.downs) as i64;
        crate::exact_arith::rat(ups - self.downs as i64, 2)
    }

    /// Whether site `k` (1-based) of `word` is down.
    pub fn is_down(&self, word: u64, k: usize) -> bool {
        (word >> (self.sites - k)) & 1 == 1
    }

    /// `↓…↓↑…↑` with all down spins first, the largest word of the sector.
    pub fn base_state(&self) -> u64 {
        let ups = self.sites - self.downs;
        ((1u64 << self.downs) - 1) << ups
    }

    pub fn base_index(&self) -> usize {
        self.index_of(self.base_state())
            .expect("base state lies in the sector")
    }

    pub fn spin_word(&self, word: u64) -> String {
        (1..=self.sites)
            .map(|k| if self.is_down(word, k) { '↓' } else { '↑' })
            .collect()
    }
}
