//! Law verification: exhaustive and sampled evaluation over G x G,
//! vanishing sets, generating-pair coverage and shortest-law search.
//!
//! Exhaustive scans run in row-major order over the group's element list;
//! the reported counterexample is always the first one in that order,
//! whatever the number of worker threads.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::freeword::{count_reduced_up_to, enumerate_reduced, Word};
use crate::groups::{CompiledWord, Group, GroupOps, TableGroup};

pub const DEFAULT_SAMPLES: u64 = 100_000;
const SAMPLE_CHUNK: u64 = 1024;
const SEARCH_SAMPLE_PAIRS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled { n_samples: u64, seed: u64 },
    GeneratingPairsOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Law,
    /// No counterexample among the sampled pairs; not a proof.
    LawSampled,
    CoversGeneratingPairs,
    Counterexample {
        g: String,
        h: String,
        value: String,
    },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        !matches!(self, Verdict::Counterexample { .. })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawCertificate {
    pub word: Word,
    pub group: String,
    pub mode: Mode,
    pub verdict: Verdict,
    pub pairs_checked: u64,
    /// Seconds; left out of serialized output so certificates are byte-stable.
    #[serde(skip)]
    pub wall_time: f64,
}

/// Equality ignores `wall_time`.
impl PartialEq for LawCertificate {
    fn eq(&self, o: &Self) -> bool {
        (&self.word, &self.group, &self.mode, &self.verdict, self.pairs_checked)
            == (&o.word, &o.group, &o.mode, &o.verdict, o.pairs_checked)
    }
}

impl LawCertificate {
    /// Re-evaluates a counterexample; `Ok(true)` for other verdicts.
    pub fn recheck(&self, g: &Group) -> Result<bool> {
        match &self.verdict {
            Verdict::Counterexample { g: a, h: b, .. } => {
                let a = g.parse_element(a)?;
                let b = g.parse_element(b)?;
                Ok(!g.is_identity(&g.evaluate(&self.word, &a, &b)))
            }
            _ => Ok(true),
        }
    }
}

/// Per-element powers for every distinct block of a word.
struct PowerTables<E> {
    word: CompiledWord,
    x_or_y: Vec<bool>,
    tables: Vec<Vec<E>>,
}

impl<E: Clone + Send + Sync> PowerTables<E> {
    fn new<G: GroupOps<Elem = E>>(g: &G, elems: &[E], w: &Word) -> Self {
        let word = CompiledWord::new(w);
        let x_or_y = word.powers().iter().map(|(gen, _)| *gen == crate::Generator::X).collect();
        let tables =
            word.powers().iter().map(|&(_, e)| elems.par_iter().map(|a| g.pow(a, e as i128)).collect()).collect();
        PowerTables { word, x_or_y, tables }
    }

    fn eval<G: GroupOps<Elem = E>>(&self, g: &G, a: usize, b: usize) -> E {
        self.word.blocks().iter().fold(g.identity(), |acc, &k| {
            let k = k as usize;
            let idx = if self.x_or_y[k] { a } else { b };
            g.mul(&acc, &self.tables[k][idx])
        })
    }
}

/// First pair `(a, b)` in row-major order with `pred(a, b)` true.
fn first_pair(n: usize, pred: impl Fn(usize, usize) -> bool + Sync) -> Option<(usize, usize)> {
    (0..n).into_par_iter().find_map_first(|a| (0..n).find(|&b| pred(a, b)).map(|b| (a, b)))
}

enum Scan {
    Table(TableGroup),
    Generic,
}

fn scanner(g: &Group) -> Result<Scan> {
    if g.order() <= g.caps().table as u128 {
        Ok(Scan::Table(TableGroup::build(g)?))
    } else {
        Ok(Scan::Generic)
    }
}

type PairFilter<'a> = &'a (dyn Fn(&Scan, usize, usize) -> bool + Sync);

/// Index of the first pair where `w` does not vanish, optionally restricted
/// to pairs accepted by `keep`.
fn scan_pairs(g: &Group, w: &Word, keep: Option<PairFilter<'_>>) -> Result<Option<(usize, usize)>> {
    let scan = scanner(g)?;
    let elems = g.elements()?;
    let n = elems.len();
    Ok(match &scan {
        Scan::Table(t) => {
            let idx: Vec<u32> = (0..n as u32).collect();
            let pt = PowerTables::new(t, &idx, w);
            first_pair(n, |a, b| !t.is_identity(&pt.eval(t, a, b)) && keep.is_none_or(|k| k(&scan, a, b)))
        }
        Scan::Generic => {
            let pt = PowerTables::new(g, &elems, w);
            first_pair(n, |a, b| !g.is_identity(&pt.eval(g, a, b)) && keep.is_none_or(|k| k(&scan, a, b)))
        }
    })
}

fn counterexample(g: &Group, w: &Word, a: usize, b: usize) -> Result<Verdict> {
    let elems = g.elements()?;
    let value = g.evaluate(w, &elems[a], &elems[b]);
    Ok(Verdict::Counterexample {
        g: g.format_element(&elems[a]),
        h: g.format_element(&elems[b]),
        value: g.format_element(&value),
    })
}

fn require_word(w: &Word) -> Result<()> {
    if w.is_identity() {
        return Err(Error::invalid("the empty word is not a law candidate"));
    }
    Ok(())
}

/// Exhaustive check over all |G|^2 pairs; needs |G| within the pairs cap.
pub fn check_law(w: &Word, g: &Group) -> Result<LawCertificate> {
    require_word(w)?;
    check_cap("pairs", g.order(), g.caps().pairs as u128)?;
    let start = Instant::now();
    let n = g.order() as u64;
    let (verdict, pairs_checked) = match scan_pairs(g, w, None)? {
        Some((a, b)) => (counterexample(g, w, a, b)?, a as u64 * n + b as u64 + 1),
        None => (Verdict::Law, n * n),
    };
    Ok(LawCertificate {
        word: w.clone(),
        group: g.descriptor().to_string(),
        mode: Mode::Exhaustive,
        verdict,
        pairs_checked,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Seeded Monte Carlo check on `n_samples` uniform pairs.
pub fn check_law_sampled(w: &Word, g: &Group, n_samples: u64, seed: u64) -> Result<LawCertificate> {
    require_word(w)?;
    let start = Instant::now();
    let cw = CompiledWord::new(w);
    let chunks = n_samples.div_ceil(SAMPLE_CHUNK);
    // warm the enumeration cache outside the parallel region where needed
    let mut probe = ChaCha8Rng::seed_from_u64(seed);
    g.random_element(&mut probe)?;
    let hit = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Option<(u64, crate::Elem, crate::Elem)>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = SAMPLE_CHUNK.min(n_samples - c * SAMPLE_CHUNK);
            for i in 0..len {
                let a = g.random_element(&mut rng)?;
                let b = g.random_element(&mut rng)?;
                if !g.is_identity(&cw.eval(g, &a, &b)) {
                    return Ok(Some((c * SAMPLE_CHUNK + i, a, b)));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let (verdict, pairs_checked) = match hit {
        Some((i, a, b)) => {
            let value = cw.eval(g, &a, &b);
            (
                Verdict::Counterexample {
                    g: g.format_element(&a),
                    h: g.format_element(&b),
                    value: g.format_element(&value),
                },
                i + 1,
            )
        }
        None => (Verdict::LawSampled, n_samples),
    };
    Ok(LawCertificate {
        word: w.clone(),
        group: g.descriptor().to_string(),
        mode: Mode::Sampled { n_samples, seed },
        verdict,
        pairs_checked,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Exact vanishing set as index pairs into `g.elements()`, row-major.
pub fn vanishing_set(w: &Word, g: &Group) -> Result<Vec<(u32, u32)>> {
    require_word(w)?;
    check_cap("pairs", g.order(), g.caps().pairs as u128)?;
    let elems = g.elements()?;
    let n = elems.len();
    let rows: Vec<Vec<(u32, u32)>> = match scanner(g)? {
        Scan::Table(t) => {
            let idx: Vec<u32> = (0..n as u32).collect();
            let pt = PowerTables::new(&t, &idx, w);
            (0..n)
                .into_par_iter()
                .map(|a| (0..n).filter(|&b| t.is_identity(&pt.eval(&t, a, b))).map(|b| (a as u32, b as u32)).collect())
                .collect()
        }
        Scan::Generic => {
            let pt = PowerTables::new(g, &elems, w);
            (0..n)
                .into_par_iter()
                .map(|a| (0..n).filter(|&b| g.is_identity(&pt.eval(g, a, b))).map(|b| (a as u32, b as u32)).collect())
                .collect()
        }
    };
    Ok(rows.into_iter().flatten().collect())
}

/// Whether every generating pair of `g` lies in the vanishing set of `w`.
pub fn check_on_generating_pairs(w: &Word, g: &Group) -> Result<LawCertificate> {
    require_word(w)?;
    check_cap("pairs", g.order(), g.caps().pairs as u128)?;
    check_cap("closure", g.order(), g.caps().closure as u128)?;
    let start = Instant::now();
    let elems = g.elements()?;
    let n = elems.len() as u64;
    let generates = |scan: &Scan, a: usize, b: usize| match scan {
        Scan::Table(t) => t.generates(a as u32, b as u32),
        Scan::Generic => g.is_generating_pair(&elems[a], &elems[b]).unwrap_or(false),
    };
    let (verdict, pairs_checked) = match scan_pairs(g, w, Some(&generates))? {
        Some((a, b)) => (counterexample(g, w, a, b)?, a as u64 * n + b as u64 + 1),
        None => (Verdict::CoversGeneratingPairs, n * n),
    };
    Ok(LawCertificate {
        word: w.clone(),
        group: g.descriptor().to_string(),
        mode: Mode::GeneratingPairsOnly,
        verdict,
        pairs_checked,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub group: String,
    pub max_length: u32,
    pub found: Option<Word>,
    /// Every reduced word of length at most `frontier` was ruled out.
    pub frontier: u32,
    pub words_tested: u64,
    pub sample_seed: u64,
}

/// First law of length at most `max_length` in enumeration order. Candidates
/// are screened on a fixed seeded sample of pairs before the exhaustive scan.
pub fn shortest_law_search(g: &Group, max_length: u32, seed: u64) -> Result<SearchResult> {
    check_cap("pairs", g.order(), g.caps().pairs as u128)?;
    let words = count_reduced_up_to(max_length);
    let budget = words.saturating_mul(g.order().saturating_mul(g.order()));
    check_cap("search budget", budget, g.caps().search_budget)?;
    let t = TableGroup::build(g)?;
    let n = t.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<(usize, usize)> = (0..SEARCH_SAMPLE_PAIRS)
        .map(|_| {
            use rand::Rng;
            (rng.random_range(0..n), rng.random_range(0..n))
        })
        .collect();
    let idx: Vec<u32> = (0..n as u32).collect();
    let mut tested = 0u64;
    for w in enumerate_reduced(max_length) {
        tested += 1;
        let pt = PowerTables::new(&t, &idx, &w);
        if sample.iter().any(|&(a, b)| !t.is_identity(&pt.eval(&t, a, b))) {
            continue;
        }
        if first_pair(n, |a, b| !t.is_identity(&pt.eval(&t, a, b))).is_none() {
            let len = w.len() as u32;
            return Ok(SearchResult {
                group: g.descriptor().to_string(),
                max_length,
                found: Some(w),
                frontier: len - 1,
                words_tested: tested,
                sample_seed: seed,
            });
        }
    }
    Ok(SearchResult {
        group: g.descriptor().to_string(),
        max_length,
        found: None,
        frontier: max_length,
        words_tested: tested,
        sample_seed: seed,
    })
}
