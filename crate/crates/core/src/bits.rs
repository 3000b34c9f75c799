//! Dense minterm sets backed by u64 words.

/// A subset of the 2^n minterms of an n-variable Boolean space.
///
/// Minterm `m` encodes variable `i` in bit `i` of the index, so variable 0 is
/// the least significant bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    n: usize,
    words: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    ((1usize << n) + 63) >> 6
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_minterms(&self) -> usize {
        1usize << self.n
    }

    /// Mask of valid bits in the last word.
    fn tail_mask(&self) -> u64 {
        let rem = (1usize << self.n) & 63;
        if rem == 0 {
            !0
        } else {
            (1u64 << rem) - 1
        }
    }

    #[inline]
    pub fn get(&self, m: u32) -> bool {
        debug_assert!((m as usize) < self.num_minterms());
        (self.words[(m >> 6) as usize] >> (m & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, m: u32) {
        debug_assert!((m as usize) < self.num_minterms());
        self.words[(m >> 6) as usize] |= 1u64 << (m & 63);
    }

    #[inline]
    pub fn clear(&mut self, m: u32) {
        debug_assert!((m as usize) < self.num_minterms());
        self.words[(m >> 6) as usize] &= !(1u64 << (m & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &Bits) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> Bits {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        let tail = out.words.len() - 1;
        let mask = out.tail_mask();
        out.words[tail] &= mask;
        out
    }

    /// Concatenation: `self` fills indices with the new top bit clear,
    /// `hi` fills indices with it set. Both operands keep `n` variables;
    /// the result has `n + 1`.
    pub fn concat(&self, hi: &Bits) -> Bits {
        debug_assert_eq!(self.n, hi.n);
        let mut out = Bits::new(self.n + 1);
        if self.n >= 6 {
            let half = self.words.len();
            out.words[..half].copy_from_slice(&self.words);
            out.words[half..].copy_from_slice(&hi.words);
        } else {
            let shift = 1u32 << self.n;
            out.words[0] = self.words[0] | (hi.words[0] << shift);
        }
        out
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some((wi as u32) * 64 + b)
                }
            })
        })
    }

    /// True when some minterm `m` with variable `v` clear has `a(m)` set and
    /// `b(m with v set)` set. Used for support detection.
    pub fn conflict_across_var(a: &Bits, b: &Bits, v: usize) -> bool {
        debug_assert_eq!(a.n, b.n);
        debug_assert!(v < a.n);
        if v >= 6 {
            let d = 1usize << (v - 6);
            for j in 0..a.words.len() {
                if (j >> (v - 6)) & 1 == 0 && a.words[j] & b.words[j + d] != 0 {
                    return true;
                }
            }
            false
        } else {
            // Bits within one word: mask selects lanes where variable v is 0.
            const LOW: [u64; 6] = [
                0x5555_5555_5555_5555,
                0x3333_3333_3333_3333,
                0x0f0f_0f0f_0f0f_0f0f,
                0x00ff_00ff_00ff_00ff,
                0x0000_ffff_0000_ffff,
                0x0000_0000_ffff_ffff,
            ];
            let s = 1u32 << v;
            a.words
                .iter()
                .zip(&b.words)
                .any(|(&aw, &bw)| (aw & LOW[v]) & (bw >> s) != 0)
        }
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bits({} vars; {} set)", self.n, self.count())
    }
}
