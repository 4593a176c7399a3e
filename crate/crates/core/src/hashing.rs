//! Seeded hash families shared by every probabilistic structure.
//!
//! All arithmetic families work over the Mersenne prime `2^61 - 1`, which
//! lets products be reduced with shifts instead of a division. Keys are
//! 64-bit item ids; callers hash strings themselves before handing them in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of the splitmix64 finalizer. A bijection on `u64`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(SPLITMIX_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Master seed from which every hash function and random stream is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HashSeed(pub u64);

impl HashSeed {
    pub fn new(seed: u64) -> Self {
        HashSeed(seed)
    }

    /// Sub-seed for row (or level, round, copy) `index`.
    ///
    /// For a fixed master seed the map `index -> sub-seed` is injective: the
    /// argument `seed + gamma * (index + 1)` is injective in `index` because
    /// gamma is odd, and splitmix64 is a bijection.
    pub fn derive(self, index: u64) -> HashSeed {
        HashSeed(splitmix64(
            self.0
                .wrapping_add(SPLITMIX_GAMMA.wrapping_mul(index.wrapping_add(1))),
        ))
    }

    /// Deterministic, platform-independent PRNG seeded from this seed.
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for HashSeed {
    fn from(v: u64) -> Self {
        HashSeed(v)
    }
}

#[inline]
fn reduce_61(x: u128) -> u64 {
    // x < 2^122 for products of two residues; two folds bring it below 2p.
    let lo = (x as u64) & MERSENNE_61;
    let hi = (x >> 61) as u64;
    let mut r = lo + (hi & MERSENNE_61) + (hi >> 61);
    if r >= MERSENNE_61 {
        r -= MERSENNE_61;
    }
    if r >= MERSENNE_61 {
        r -= MERSENNE_61;
    }
    r
}

/// `a * b mod (2^61 - 1)` for residues `a, b < 2^61 - 1`.
#[inline]
pub fn mul_mod_61(a: u64, b: u64) -> u64 {
    reduce_61(a as u128 * b as u128)
}

#[inline]
pub fn add_mod_61(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

/// Reduce an arbitrary 64-bit key into the field.
#[inline]
pub fn to_field(x: u64) -> u64 {
    let r = (x & MERSENNE_61) + (x >> 61);
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

/// Signed integer into the field (negative values map to `p - |x| mod p`).
#[inline]
pub fn signed_to_field(x: i64) -> u64 {
    if x >= 0 {
        to_field(x as u64)
    } else {
        let m = to_field(x.unsigned_abs());
        if m == 0 {
            0
        } else {
            MERSENNE_61 - m
        }
    }
}

pub fn pow_mod_61(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base = to_field(base);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_61(acc, base);
        }
        base = mul_mod_61(base, base);
        exp >>= 1;
    }
    acc
}

/// Hash family evaluated on 64-bit item ids.
pub trait KeyHash {
    fn eval(&self, key: u64) -> u64;

    /// Size of the output range; `eval` always returns a value below it.
    fn range(&self) -> u128;
}

/// `h(x) = ((a*x + b) mod p) mod m`, a 2-universal family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruentialHash {
    a: u64,
    b: u64,
    m: u64,
}

impl CongruentialHash {
    /// Draws `a` from `[1, p-1]` and `b` from `[0, p-1]` with the seeded PRNG.
    pub fn new(seed: HashSeed, range_m: u64) -> Result<Self> {
        if range_m == 0 {
            return Err(Error::InvalidArgument("hash range must be at least 1".into()));
        }
        let mut rng = seed.rng();
        let a = rng.random_range(1..MERSENNE_61);
        let b = rng.random_range(0..MERSENNE_61);
        Ok(CongruentialHash { a, b, m: range_m })
    }

    pub fn from_params(a: u64, b: u64, range_m: u64) -> Result<Self> {
        if a == 0 || a >= MERSENNE_61 || b >= MERSENNE_61 {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= a < p and 0 <= b < p, got a={a}, b={b}"
            )));
        }
        if range_m == 0 {
            return Err(Error::InvalidArgument("hash range must be at least 1".into()));
        }
        Ok(CongruentialHash { a, b, m: range_m })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn prime(&self) -> u64 {
        MERSENNE_61
    }

    /// Field value `(a*x + b) mod p`, before the final range reduction.
    #[inline]
    pub fn field_value(&self, key: u64) -> u64 {
        add_mod_61(mul_mod_61(self.a, to_field(key)), self.b)
    }
}

impl KeyHash for CongruentialHash {
    #[inline]
    fn eval(&self, key: u64) -> u64 {
        self.field_value(key) % self.m
    }

    fn range(&self) -> u128 {
        self.m as u128
    }
}

/// Polynomial hash of fixed degree over `Z_p`; `k` coefficients give a
/// k-wise independent family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialHash {
    coeffs: Vec<u64>,
}

impl PolynomialHash {
    pub fn new(seed: HashSeed, independence: usize) -> Result<Self> {
        if independence == 0 {
            return Err(Error::InvalidArgument("independence must be at least 1".into()));
        }
        let mut rng = seed.rng();
        let coeffs = (0..independence)
            .map(|_| rng.random_range(0..MERSENNE_61))
            .collect();
        Ok(PolynomialHash { coeffs })
    }

    #[inline]
    pub fn field_value(&self, key: u64) -> u64 {
        let x = to_field(key);
        self.coeffs
            .iter()
            .fold(0u64, |acc, &c| add_mod_61(mul_mod_61(acc, x), c))
    }
}

/// Simple tabulation hashing over the 8 bytes of a key.
///
/// The output is the XOR of one table word per key byte, masked to
/// `output_bits` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulationHash {
    tables: Box<[[u64; 256]; 8]>,
    output_bits: u32,
}

impl TabulationHash {
    /// Tables filled from the seeded PRNG.
    pub fn new(seed: HashSeed, output_bits: u32) -> Result<Self> {
        if output_bits == 0 || output_bits > 64 {
            return Err(Error::InvalidArgument(format!(
                "tabulation output bits must be in 1..=64, got {output_bits}"
            )));
        }
        let mut rng = seed.rng();
        let mut tables = Box::new([[0u64; 256]; 8]);
        for table in tables.iter_mut() {
            for word in table.iter_mut() {
                *word = rng.random();
            }
        }
        Ok(TabulationHash { tables, output_bits })
    }

    pub fn from_tables(tables: Box<[[u64; 256]; 8]>, output_bits: u32) -> Result<Self> {
        if output_bits == 0 || output_bits > 64 {
            return Err(Error::InvalidArgument(format!(
                "tabulation output bits must be in 1..=64, got {output_bits}"
            )));
        }
        Ok(TabulationHash { tables, output_bits })
    }

    pub fn output_bits(&self) -> u32 {
        self.output_bits
    }

    #[inline]
    fn mask(&self) -> u64 {
        if self.output_bits == 64 {
            u64::MAX
        } else {
            (1u64 << self.output_bits) - 1
        }
    }
}

impl KeyHash for TabulationHash {
    #[inline]
    fn eval(&self, key: u64) -> u64 {
        let bytes = key.to_le_bytes();
        let mut h = 0u64;
        for (table, &byte) in self.tables.iter().zip(bytes.iter()) {
            h ^= table[byte as usize];
        }
        h & self.mask()
    }

    fn range(&self) -> u128 {
        1u128 << self.output_bits
    }
}

/// `g(i) ∈ {-1, +1}` from a 4-wise independent polynomial hash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignHash {
    poly: PolynomialHash,
}

impl SignHash {
    pub fn new(seed: HashSeed) -> Self {
        SignHash {
            poly: PolynomialHash::new(seed, 4).expect("degree-3 polynomial"),
        }
    }

    #[inline]
    pub fn sign(&self, key: u64) -> i64 {
        if self.poly.field_value(key) & 1 == 0 {
            1
        } else {
            -1
        }
    }
}
