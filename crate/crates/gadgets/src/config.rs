//! Configurations `(a, b, T)` and their arithmetic.
//!
//! Blocks are numbered `1..=kk` throughout, matching the vertex ids.

use std::collections::BTreeSet;
use std::fmt;

use crate::GadgetError;

/// Instance parameters: `kk` blocks, Spoiler rows `1..=n`, Duplicator rows `0..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub kk: u32,
    pub n: u32,
    pub m: u32,
}

impl Params {
    pub fn new(kk: u32, n: u32, m: u32) -> Result<Self, GadgetError> {
        if kk == 0 || n == 0 || m == 0 {
            return Err(GadgetError::BadParams(format!("kk={kk}, n={n}, m={m} must all be positive")));
        }
        Ok(Params { kk, n, m })
    }

    /// Number of valid configurations, n^kk · m^kk.
    pub fn count(&self) -> u64 {
        (self.n as u64).pow(self.kk) * (self.m as u64).pow(self.kk)
    }

    pub fn blocks(&self) -> impl Iterator<Item = u32> {
        1..=self.kk
    }

    /// All valid configurations in rank order.
    pub fn valid_configurations(&self) -> impl Iterator<Item = Configuration> + '_ {
        (0..self.count()).map(move |r| alpha_inverse(r, *self).expect("rank in range"))
    }

    /// All configurations, valid or not, in a fixed order.
    pub fn all_configurations(&self) -> Vec<Configuration> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << self.kk) {
            let t: BTreeSet<u32> = self.blocks().filter(|i| mask >> (i - 1) & 1 == 1).collect();
            for q in self.valid_configurations() {
                out.push(q.with_blocked(t.clone()));
            }
        }
        out
    }

    /// The configuration whose `b`-part is maximal in every block.
    pub fn q_win(&self) -> Configuration {
        Configuration::new(vec![self.n; self.kk as usize], vec![self.m; self.kk as usize], [])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    a: Vec<u32>,
    b: Vec<u32>,
    t: BTreeSet<u32>,
}

impl Configuration {
    pub fn new(a: Vec<u32>, b: Vec<u32>, t: impl IntoIterator<Item = u32>) -> Self {
        assert_eq!(a.len(), b.len(), "a and b must cover the same blocks");
        Configuration {
            a,
            b,
            t: t.into_iter().collect(),
        }
    }

    /// `a ≡ 1`, `b ≡ 1`, every block blocked. Its `h^x` sends everything to row 0.
    pub fn zero(kk: u32) -> Self {
        Configuration::new(vec![1; kk as usize], vec![1; kk as usize], 1..=kk)
    }

    pub fn kk(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn a(&self, i: u32) -> u32 {
        self.a[i as usize - 1]
    }

    pub fn b(&self, i: u32) -> u32 {
        self.b[i as usize - 1]
    }

    pub fn t(&self) -> &BTreeSet<u32> {
        &self.t
    }

    pub fn is_valid(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_blocked(&self, i: u32) -> bool {
        self.t.contains(&i)
    }

    pub fn with_blocked(&self, t: impl IntoIterator<Item = u32>) -> Self {
        Configuration {
            a: self.a.clone(),
            b: self.b.clone(),
            t: t.into_iter().collect(),
        }
    }

    pub fn check(&self, p: Params) -> Result<(), GadgetError> {
        let ok = self.kk() == p.kk
            && self.a.iter().all(|&v| (1..=p.n).contains(&v))
            && self.b.iter().all(|&v| (1..=p.m).contains(&v))
            && self.t.iter().all(|&i| (1..=p.kk).contains(&i));
        if ok {
            Ok(())
        } else {
            Err(GadgetError::OutOfRange(self.to_string()))
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={:?}, b={:?}, T={:?})", self.a, self.b, self.t)
    }
}

/// Lexicographic rank of `(a(1), …, a(kk), b(1), …, b(kk))`.
pub fn alpha(q: &Configuration, p: Params) -> Result<u64, GadgetError> {
    q.check(p)?;
    if !q.is_valid() {
        return Err(GadgetError::InvalidConfiguration(q.to_string()));
    }
    let (n, m) = (p.n as u64, p.m as u64);
    let mk = m.pow(p.kk);
    let mut ra = 0;
    let mut rb = 0;
    for i in p.blocks() {
        ra += (q.a(i) as u64 - 1) * n.pow(p.kk - i);
        rb += (q.b(i) as u64 - 1) * m.pow(p.kk - i);
    }
    Ok(mk * ra + rb)
}

pub fn alpha_inverse(rank: u64, p: Params) -> Result<Configuration, GadgetError> {
    if rank >= p.count() {
        return Err(GadgetError::OutOfRange(format!("rank {rank}")));
    }
    let mk = (p.m as u64).pow(p.kk);
    let (mut ra, mut rb) = (rank / mk, rank % mk);
    let mut a = vec![0; p.kk as usize];
    let mut b = vec![0; p.kk as usize];
    for i in (0..p.kk as usize).rev() {
        a[i] = (ra % p.n as u64) as u32 + 1;
        b[i] = (rb % p.m as u64) as u32 + 1;
        ra /= p.n as u64;
        rb /= p.m as u64;
    }
    Ok(Configuration::new(a, b, []))
}

pub fn successor(q: &Configuration, p: Params) -> Result<Configuration, GadgetError> {
    let r = alpha(q, p)?;
    if r + 1 >= p.count() {
        return Err(GadgetError::MaximalRank);
    }
    alpha_inverse(r + 1, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Right,
    Left,
}

/// One of the 2·kk increment gadgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inc {
    pub side: Side,
    pub level: u32,
}

impl Inc {
    pub fn all(kk: u32) -> impl Iterator<Item = Inc> {
        [Side::Right, Side::Left]
            .into_iter()
            .flat_map(move |side| (1..=kk).map(move |level| Inc { side, level }))
    }

    /// `incR<ℓ>` or `incL<ℓ>`.
    pub fn name(&self) -> String {
        match self.side {
            Side::Right => format!("incR{}", self.level),
            Side::Left => format!("incL{}", self.level),
        }
    }

    pub fn check(&self, p: Params) -> Result<(), GadgetError> {
        if (1..=p.kk).contains(&self.level) {
            Ok(())
        } else {
            Err(GadgetError::BadLevel(self.level))
        }
    }

    /// Blocks that reach the output of this gadget only through row 0.
    pub fn blocked(&self, q: &Configuration, p: Params) -> BTreeSet<u32> {
        match self.side {
            Side::Right => t_right(self.level, q, p),
            Side::Left => t_left(self.level, q, p),
        }
    }

    pub fn is_applicable(&self, q: &Configuration, p: Params) -> bool {
        self.blocked(q, p).is_empty()
    }

    /// Configuration that Duplicator's answer realizes on the output: the
    /// successor when applicable, an invalid configuration otherwise.
    pub fn output(&self, q: &Configuration, p: Params) -> Configuration {
        let t = self.blocked(q, p);
        let l = self.level;
        let mut a = Vec::with_capacity(p.kk as usize);
        let mut b = Vec::with_capacity(p.kk as usize);
        for i in p.blocks() {
            if t.contains(&i) {
                a.push(1);
                b.push(1);
                continue;
            }
            match self.side {
                Side::Right => {
                    a.push(q.a(i));
                    b.push(match i.cmp(&l) {
                        std::cmp::Ordering::Less => q.b(i),
                        std::cmp::Ordering::Equal => q.b(i) + 1,
                        std::cmp::Ordering::Greater => 1,
                    });
                }
                Side::Left => {
                    a.push(match i.cmp(&l) {
                        std::cmp::Ordering::Less => q.a(i),
                        std::cmp::Ordering::Equal => q.a(i) + 1,
                        std::cmp::Ordering::Greater => 1,
                    });
                    b.push(1);
                }
            }
        }
        Configuration::new(a, b, t)
    }
}

/// Blocking set of the right increment at level `l`.
pub fn t_right(l: u32, q: &Configuration, p: Params) -> BTreeSet<u32> {
    p.blocks()
        .filter(|&i| (i == l && q.b(i) == p.m) || (i > l && q.b(i) != p.m) || q.is_blocked(i))
        .collect()
}

/// Blocking set of the left increment at level `l`.
pub fn t_left(l: u32, q: &Configuration, p: Params) -> BTreeSet<u32> {
    p.blocks()
        .filter(|&i| {
            (i == l && q.a(i) == p.n) || (i > l && q.a(i) != p.n) || q.b(i) != p.m || q.is_blocked(i)
        })
        .collect()
}

/// The unique increment gadget applicable to `q`, if any.
pub fn applicable(q: &Configuration, p: Params) -> Option<Inc> {
    Inc::all(p.kk).find(|g| g.is_applicable(q, p))
}
