//! Named lattice generators.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, MAX_ELEMENTS};

pub const FIXTURE_KINDS: &[&str] = &[
    "chain",
    "boolean",
    "diamond_m5",
    "pentagon_n5",
    "downsets_of_random_poset",
    "subspace_lattice",
    "product",
    "ladder_truncation",
];

const GENERATOR_LETTERS: &str = "pqrstuvwxyzabcde";

/// Generates a named fixture.
///
/// | kind | params |
/// |------|--------|
/// | `chain` | `[k]`: chain with `k` coverings |
/// | `boolean` | `[n]`: subsets of an `n`-set |
/// | `diamond_m5`, `pentagon_n5` | none |
/// | `downsets_of_random_poset` | `[n, seed]` or `[n, seed, density_percent]` |
/// | `subspace_lattice` | `[p, d]`: subspaces of GF(p)^d |
/// | `product` | `[k1, k2, ...]`: product of chains with `ki` coverings |
/// | `ladder_truncation` | `[k]`: the ladder cut at depth `k` |
pub fn gen_fixture(kind: &str, params: &[u64]) -> Result<FiniteLattice> {
    let expect = |count: usize| -> Result<()> {
        if params.len() == count {
            Ok(())
        } else {
            Err(Error::ParamOutOfRange(format!("{kind} takes {count} parameter(s), got {}", params.len())))
        }
    };
    match kind {
        "chain" => {
            expect(1)?;
            chain(params[0] as usize)
        }
        "boolean" => {
            expect(1)?;
            boolean(params[0] as usize)
        }
        "diamond_m5" => {
            expect(0)?;
            Ok(m5())
        }
        "pentagon_n5" => {
            expect(0)?;
            Ok(n5())
        }
        "downsets_of_random_poset" => {
            if !(2..=3).contains(&params.len()) {
                return Err(Error::ParamOutOfRange(
                    "downsets_of_random_poset takes [n, seed] or [n, seed, density_percent]".into(),
                ));
            }
            let density = params.get(2).copied().unwrap_or(30);
            downsets_of_random_poset(params[0] as usize, params[1], density)
        }
        "subspace_lattice" => {
            expect(2)?;
            subspace_lattice(params[0], params[1])
        }
        "product" => {
            if params.is_empty() {
                return Err(Error::ParamOutOfRange("product needs at least one chain length".into()));
            }
            let mut acc = chain(params[0] as usize)?;
            for &k in &params[1..] {
                acc = acc.product(&chain(k as usize)?)?;
            }
            Ok(acc)
        }
        "ladder_truncation" => {
            expect(1)?;
            crate::omega::truncate(params[0].try_into().map_err(|_| Error::ParamOutOfRange("depth too large".into()))?)
        }
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

pub fn chain(k: usize) -> Result<FiniteLattice> {
    if k + 1 > MAX_ELEMENTS {
        return Err(Error::ParamOutOfRange(format!("chain length {k}")));
    }
    let names: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
    FiniteLattice::from_covers(names, &pairs)
}

/// Subsets of `{p, q, r, ...}`; element index is the subset bitmask with `p`
/// as bit 0. The empty set is labeled `⊥`.
pub fn boolean(n: usize) -> Result<FiniteLattice> {
    if n > 12 {
        return Err(Error::ParamOutOfRange(format!("boolean rank {n} (max 12)")));
    }
    let letters: Vec<char> = GENERATOR_LETTERS.chars().collect();
    let size = 1usize << n;
    let names = (0..size)
        .map(|mask| {
            if mask == 0 {
                "⊥".to_string()
            } else {
                (0..n).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect()
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for mask in 0..size {
        for i in 0..n {
            if mask >> i & 1 == 0 {
                pairs.push((mask, mask | 1 << i));
            }
        }
    }
    FiniteLattice::from_covers(names, &pairs)
}

pub fn m5() -> FiniteLattice {
    FiniteLattice::build(&["⊥", "a", "b", "c", "⊤"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .expect("M5 is a lattice")
}

/// The pentagon: `⊥ < x < z < ⊤` and `⊥ < y < ⊤`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::build(&["⊥", "x", "y", "z", "⊤"], &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
        .expect("N5 is a lattice")
}

/// Down-sets of a random poset on `n` points, a distributive lattice.
pub fn downsets_of_random_poset(n: usize, seed: u64, density_percent: u64) -> Result<FiniteLattice> {
    if n == 0 || n > 24 {
        return Err(Error::ParamOutOfRange(format!("poset size {n} (1..=24)")));
    }
    if density_percent > 100 {
        return Err(Error::ParamOutOfRange(format!("density {density_percent}%")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // below[j] = bitmask of points strictly below j; points are numbered by a
    // linear extension so relations only go i < j.
    let mut below = vec![0u32; n];
    for j in 0..n {
        for i in 0..j {
            if rng.gen_range(0..100) < density_percent {
                below[j] |= 1 << i | below[i];
            }
        }
    }

    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut sets = vec![0u32];
    index.insert(0, 0);
    let mut pairs = Vec::new();
    let mut cursor = 0;
    while cursor < sets.len() {
        let d = sets[cursor];
        for x in 0..n {
            if d >> x & 1 == 0 && below[x] & !d == 0 {
                let e = d | 1 << x;
                let id = match index.get(&e) {
                    Some(&id) => id,
                    None => {
                        if sets.len() == MAX_ELEMENTS {
                            return Err(Error::ParamOutOfRange(format!(
                                "poset has more than {MAX_ELEMENTS} down-sets"
                            )));
                        }
                        sets.push(e);
                        index.insert(e, sets.len() - 1);
                        sets.len() - 1
                    }
                };
                pairs.push((cursor, id));
            }
        }
        cursor += 1;
    }
    let names = sets
        .iter()
        .map(|&d| {
            let pts: Vec<String> = (0..n).filter(|i| d >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    FiniteLattice::from_covers(names, &pairs)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// All subspaces of GF(p)^d ordered by inclusion. The zero space is labeled
/// `0`, the whole space `V`, and the others `d{dim}.{k}` in discovery order.
pub fn subspace_lattice(p: u64, d: u64) -> Result<FiniteLattice> {
    if !is_prime(p) {
        return Err(Error::ParamOutOfRange(format!("field size {p} is not prime")));
    }
    if d == 0 || d > 12 {
        return Err(Error::ParamOutOfRange(format!("dimension {d}")));
    }
    let size = p
        .checked_pow(d as u32)
        .filter(|&s| s <= 1024)
        .ok_or_else(|| Error::ParamOutOfRange(format!("{p}^{d} vectors is more than 1024")))? as usize;
    let (p, d) = (p as usize, d as usize);

    let add = |u: usize, v: usize| -> usize {
        let (mut u, mut v, mut out, mut place) = (u, v, 0, 1);
        for _ in 0..d {
            out += ((u % p + v % p) % p) * place;
            u /= p;
            v /= p;
            place *= p;
        }
        out
    };
    let scale = |c: usize, v: usize| -> usize {
        let (mut v, mut out, mut place) = (v, 0, 1);
        for _ in 0..d {
            out += ((v % p) * c % p) * place;
            v /= p;
            place *= p;
        }
        out
    };

    let mut zero = FixedBitSet::with_capacity(size);
    zero.insert(0);
    let mut spaces = vec![zero.clone()];
    let mut dims = vec![0usize];
    let mut index: HashMap<FixedBitSet, usize> = HashMap::from([(zero, 0)]);
    let mut pairs = Vec::new();
    let mut cursor = 0;
    while cursor < spaces.len() {
        let current = spaces[cursor].clone();
        let members: Vec<usize> = current.ones().collect();
        for v in 0..size {
            if current.contains(v) {
                continue;
            }
            let mut span = FixedBitSet::with_capacity(size);
            for c in 0..p {
                let cv = scale(c, v);
                for &u in &members {
                    span.insert(add(u, cv));
                }
            }
            let id = match index.get(&span) {
                Some(&id) => id,
                None => {
                    if spaces.len() == MAX_ELEMENTS {
                        return Err(Error::ParamOutOfRange(format!(
                            "GF({p})^{d} has more than {MAX_ELEMENTS} subspaces"
                        )));
                    }
                    spaces.push(span.clone());
                    dims.push(dims[cursor] + 1);
                    index.insert(span, spaces.len() - 1);
                    spaces.len() - 1
                }
            };
            pairs.push((cursor, id));
        }
        cursor += 1;
    }
    pairs.sort_unstable();
    pairs.dedup();

    let mut seen_per_dim = vec![0usize; d + 1];
    let names = dims
        .iter()
        .map(|&k| {
            seen_per_dim[k] += 1;
            match k {
                0 => "0".to_string(),
                k if k == d => "V".to_string(),
                k => format!("d{k}.{}", seen_per_dim[k]),
            }
        })
        .collect();
    FiniteLattice::from_covers(names, &pairs)
}
