//! Lazy random walks: word sampling in F2, Cayley-graph diameters, an
//! empirical check of the mixing inequality, and the randomized search for
//! words covering every generating pair.
//!
//! All randomness comes from `ChaCha8Rng`. Parallel work is split into
//! fixed chunks, each with its own stream of the base seed, so results do
//! not depend on scheduling.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::freeword::{Letter, Word};
use crate::groups::{CompiledWord, Elem, Group, GroupOps, TableGroup};
use crate::lawkit::tables::table_b;
use crate::lawkit::{union_combine, LieTypeTag};
use crate::verify::{check_on_generating_pairs, LawCertificate, Verdict};

const TRIAL_CHUNK: u64 = 256;
pub const DEFAULT_ATTEMPTS: u32 = 32;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One lazy walk of `steps` steps on {x, y, x^-1, y^-1}: each step stays put
/// with probability 1/2, otherwise multiplies by a uniform letter.
pub fn walk_word<R: Rng + ?Sized>(steps: u64, rng: &mut R) -> Word {
    let mut letters = Vec::new();
    for _ in 0..steps {
        let r = rng.random_range(0..8usize);
        if r >= 4 {
            letters.push(Letter::ALL[r - 4]);
        }
    }
    Word::reduce(letters)
}

pub fn sample_walk_word(steps: u64, seed: u64) -> Word {
    walk_word(steps, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Non-trivial walk word; trivial samples are discarded and redrawn.
fn nontrivial_walk_word<R: Rng + ?Sized>(steps: u64, rng: &mut R) -> Result<Word> {
    if steps == 0 {
        return Err(Error::invalid("walk length must be positive to sample a non-trivial word"));
    }
    loop {
        let w = walk_word(steps, rng);
        if !w.is_identity() {
            return Ok(w);
        }
    }
}

/// Distinct elements of S together with their inverses, in first-seen order.
pub fn symmetrize<G: GroupOps>(g: &G, s: &[G::Elem]) -> Vec<G::Elem> {
    let mut out: Vec<G::Elem> = Vec::new();
    for x in s {
        for y in [x.clone(), g.inv(x)] {
            if !out.contains(&y) {
                out.push(y);
            }
        }
    }
    out
}

fn bfs_diameter<G: GroupOps>(g: &G, s: &[G::Elem], order: u128) -> Result<u32>
where
    G::Elem: Hash,
{
    let sym = symmetrize(g, s);
    let mut dist: HashMap<G::Elem, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(g.identity(), 0);
    queue.push_back(g.identity());
    let mut ecc = 0;
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        ecc = ecc.max(d);
        for t in &sym {
            let y = g.mul(&x, t);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    if dist.len() as u128 != order {
        return Err(Error::NotGenerating(format!("generating set reaches {} of {order} elements", dist.len())));
    }
    Ok(ecc)
}

/// Eccentricity of the identity in the Cayley graph of the symmetrized S.
pub fn cayley_diameter(g: &Group, s: &[Elem]) -> Result<u32> {
    check_cap("closure", g.order(), g.caps().closure as u128)?;
    if let Some(x) = s.iter().find(|x| !g.contains(x)) {
        return Err(Error::invalid(format!("{} is not in the group", g.format_element(x))));
    }
    bfs_diameter(g, s, g.order())
}

/// The smallest L with L >= 2|S| diam^2 ln(2|G|).
pub fn theorem_walk_length(s_len: usize, diam: u32, order: u128) -> u64 {
    let l = 2.0 * s_len as f64 * (diam as f64).powi(2) * (2.0 * order as f64).ln();
    l.ceil().max(1.0) as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingReport {
    pub group: String,
    pub generators: Vec<String>,
    pub symmetric_size: usize,
    pub diameter: u32,
    pub walk_length: u64,
    pub trials: u64,
    pub seed: u64,
    pub target_size: u64,
    pub hits: u64,
    pub hit_rate: f64,
    /// |E| / 2|G|.
    pub threshold: f64,
    /// Three binomial standard errors at the threshold rate.
    pub allowance: f64,
    pub pass: bool,
}

fn count_hits<G: GroupOps>(
    g: &G,
    steps: &[G::Elem],
    len: u64,
    trials: u64,
    seed: u64,
    hit: &(dyn Fn(&G::Elem) -> bool + Sync),
) -> u64 {
    let k = steps.len() as u64;
    (0..trials.div_ceil(TRIAL_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = rng_for(seed, c);
            let n = TRIAL_CHUNK.min(trials - c * TRIAL_CHUNK);
            (0..n)
                .filter(|_| {
                    let mut x = g.identity();
                    for _ in 0..len {
                        let r = rng.random_range(0..2 * k);
                        if r >= k {
                            x = g.mul(&x, &steps[(r - k) as usize]);
                        }
                    }
                    hit(&x)
                })
                .count() as u64
        })
        .sum()
}

/// Runs `trials` lazy walks on the symmetrized S and compares the rate of
/// landing in E with |E| / 2|G|. `walk_length` defaults to the theorem's L.
pub fn empirical_mixing_check(
    g: &Group,
    s: &[Elem],
    in_target: &(dyn Fn(&Elem) -> bool + Sync),
    walk_length: Option<u64>,
    trials: u64,
    seed: u64,
) -> Result<MixingReport> {
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    let diameter = cayley_diameter(g, s)?;
    let elems = g.elements()?;
    let target_size = elems.par_iter().filter(|e| in_target(e)).count() as u64;
    let sym = symmetrize(g, s);
    let len = walk_length.unwrap_or_else(|| theorem_walk_length(sym.len(), diameter, g.order()));
    check_cap("walk steps", len as u128 * trials as u128, g.caps().search_budget)?;
    let hits = if g.order() <= g.caps().table as u128 {
        let t = TableGroup::build(g)?;
        let steps: Vec<u32> = sym.iter().map(|x| t.index_of(x).expect("group element")).collect();
        let mask: Vec<bool> = t.elements().iter().map(in_target).collect();
        count_hits(&t, &steps, len, trials, seed, &|x: &u32| mask[*x as usize])
    } else {
        count_hits(g, &sym, len, trials, seed, in_target)
    };
    let threshold = target_size as f64 / (2.0 * elems.len() as f64);
    let allowance = 3.0 * (threshold * (1.0 - threshold) / trials as f64).sqrt();
    let hit_rate = hits as f64 / trials as f64;
    Ok(MixingReport {
        group: g.descriptor().to_string(),
        generators: s.iter().map(|x| g.format_element(x)).collect(),
        symmetric_size: sym.len(),
        diameter,
        walk_length: len,
        trials,
        seed,
        target_size,
        hits,
        hit_rate,
        threshold,
        allowance,
        pass: hit_rate >= threshold - allowance,
    })
}

/// Elements of order dividing b(X, q).
pub fn e_g_mask(t: &TableGroup, tag: LieTypeTag, q: u64) -> Result<Vec<bool>> {
    let b = table_b(tag, q)?;
    Ok((0..t.len() as u32).map(|i| b % t.element_order(i) as u128 == 0).collect())
}

/// Tunables for [`almost_law_search`]; `None` selects the defaults
/// m = ceil(4 ln|G|) and L = ceil((ln|G|)^2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostLawConfig {
    pub m: Option<u32>,
    pub walk_length: Option<u64>,
    pub seed: u64,
    pub attempts: u32,
}

impl Default for AlmostLawConfig {
    fn default() -> Self {
        AlmostLawConfig { m: None, walk_length: None, seed: 0, attempts: DEFAULT_ATTEMPTS }
    }
}

pub fn default_m(order: u128) -> u32 {
    (4.0 * (order as f64).ln()).ceil() as u32
}

pub fn default_walk_length(order: u128) -> u64 {
    (order as f64).ln().powi(2).ceil() as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlmostLawResult {
    pub group: String,
    pub tag: LieTypeTag,
    pub q: u64,
    pub exponent: u128,
    pub m: u32,
    pub walk_length: u64,
    pub seed: u64,
    pub attempts_allowed: u32,
    /// 1-based attempt that succeeded, or the number made on failure.
    pub attempts_used: u32,
    pub generating_pairs: u64,
    pub success: bool,
    pub words: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combined: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<LawCertificate>,
}

fn generating_pairs(t: &TableGroup) -> Vec<(u32, u32)> {
    let n = t.len() as u32;
    (0..n).into_par_iter().flat_map_iter(|a| (0..n).filter(move |&b| t.generates(a, b)).map(move |b| (a, b))).collect()
}

/// Samples m walk words per attempt until every generating pair sends some
/// word into E_G, then combines the b-th powers and has the verify module
/// confirm the result on all generating pairs.
pub fn almost_law_search(g: &Group, tag: LieTypeTag, q: u64, cfg: &AlmostLawConfig) -> Result<AlmostLawResult> {
    let order = g.order();
    check_cap("pairs", order, g.caps().pairs as u128)?;
    let b = table_b(tag, q)?;
    let m = cfg.m.unwrap_or_else(|| default_m(order));
    let len = cfg.walk_length.unwrap_or_else(|| default_walk_length(order));
    let t = TableGroup::build(g)?;
    let in_eg = e_g_mask(&t, tag, q)?;
    let pairs = generating_pairs(&t);
    let mut result = AlmostLawResult {
        group: g.descriptor().to_string(),
        tag,
        q,
        exponent: b,
        m,
        walk_length: len,
        seed: cfg.seed,
        attempts_allowed: cfg.attempts,
        attempts_used: 0,
        generating_pairs: pairs.len() as u64,
        success: false,
        words: Vec::new(),
        combined: None,
        certificate: None,
    };
    if m == 0 {
        result.success = pairs.is_empty();
        return Ok(result);
    }
    for attempt in 0..cfg.attempts {
        result.attempts_used = attempt + 1;
        let mut rng = rng_for(cfg.seed, attempt as u64);
        let words = (0..m).map(|_| nontrivial_walk_word(len, &mut rng)).collect::<Result<Vec<_>>>()?;
        let compiled: Vec<CompiledWord> = words.iter().map(CompiledWord::new).collect();
        let uncovered = pairs.par_iter().find_any(|(a, c)| !compiled.iter().any(|w| in_eg[w.eval(&t, a, c) as usize]));
        if uncovered.is_some() {
            continue;
        }
        let powered: Vec<Word> = words.iter().map(|w| w.pow(b as u64)).collect();
        let combined = union_combine(&powered)?;
        check_cap("word length", combined.len() as u128, g.caps().word_length as u128)?;
        let cert = check_on_generating_pairs(&combined, g)?;
        result.success = cert.verdict == Verdict::CoversGeneratingPairs;
        result.words = words;
        result.combined = Some(combined);
        result.certificate = Some(cert);
        return Ok(result);
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub group: String,
    pub m: u32,
    pub walk_length: u64,
    pub seed: u64,
    pub sampled_words: u32,
    pub generating_pairs: u64,
    /// Worst-case over generating pairs of the fraction of sampled words landing in E_G.
    #[serde(with = "crate::spectra::ratio_str")]
    pub c2_hat: Ratio<u64>,
    pub mean_hit_rate: f64,
    /// (1 - c2_hat)^m |G|^2.
    pub union_bound: f64,
}

/// Estimates the per-pair hit probability of a single walk word and the
/// resulting union bound for m independent words.
pub fn coverage_union_bound_report(
    g: &Group,
    tag: LieTypeTag,
    q: u64,
    m: u32,
    walk_length: u64,
    sampled_words: u32,
    seed: u64,
) -> Result<CoverageReport> {
    check_cap("pairs", g.order(), g.caps().pairs as u128)?;
    if sampled_words == 0 {
        return Err(Error::invalid("at least one sampled word is required"));
    }
    let t = TableGroup::build(g)?;
    let in_eg = e_g_mask(&t, tag, q)?;
    let pairs = generating_pairs(&t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<CompiledWord> = (0..sampled_words)
        .map(|_| nontrivial_walk_word(walk_length, &mut rng).map(|w| CompiledWord::new(&w)))
        .collect::<Result<_>>()?;
    let hits: Vec<u64> = pairs
        .par_iter()
        .map(|(a, c)| words.iter().filter(|w| in_eg[w.eval(&t, a, c) as usize]).count() as u64)
        .collect();
    let s = sampled_words as u64;
    let (c2_hat, mean) = match hits.iter().min() {
        Some(&lo) => (Ratio::new(lo, s), hits.iter().sum::<u64>() as f64 / (s * hits.len() as u64) as f64),
        None => (Ratio::from_integer(1), 1.0),
    };
    let c2 = *c2_hat.numer() as f64 / *c2_hat.denom() as f64;
    let n = g.order() as f64;
    Ok(CoverageReport {
        group: g.descriptor().to_string(),
        m,
        walk_length,
        seed,
        sampled_words,
        generating_pairs: pairs.len() as u64,
        c2_hat,
        mean_hit_rate: mean,
        union_bound: (1.0 - c2).powi(m as i32) * n * n,
    })
}
