//! Bounded search over representations of one group, recording a verdict per
//! representation and never a verdict for the group.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wittlift::algebra::{Fq, Matrix, MatrixOps};
use wittlift::cohomology::{certify, Verdict};
use wittlift::groups::{coset_permutation_rep, FiniteGroup, RepJson, Representation};

/// Random unitriangular tuples tried per dimension.
pub const RANDOM_PER_DIM: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    Complete,
    Incomplete,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchRecord {
    pub source: String,
    pub dim: usize,
    pub verdict: Verdict,
    pub cocycle_hash: String,
    pub rep: RepJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// `NOT_LIFTABLE_WITNESSED` once any record is OBSTRUCTED, else `OPEN`.
    pub group_status: String,
    pub candidates_examined: usize,
    pub candidates_available: usize,
    pub records: Vec<SearchRecord>,
}

pub struct SearchConfig<'a> {
    pub group: Arc<FiniteGroup>,
    pub field: Fq,
    pub max_dim: usize,
    pub budget: usize,
    pub seed: u64,
    pub library: &'a [Representation<Fq>],
}

fn random_unitriangular(rng: &mut ChaCha8Rng, field: &Fq, n: usize) -> Matrix<wittlift::algebra::FqElem> {
    let q = field.order();
    let mut m = field.mat_identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, field.from_index(rng.gen_range(0..q)).expect("index below q"));
        }
    }
    m
}

/// Candidates in a fixed order: library reps (up to `max_dim`), coset
/// permutation modules, then seeded random unitriangular generator tuples
/// that happen to satisfy the group law. The first `budget` are certified.
pub fn search(cfg: &SearchConfig) -> Result<SearchResult, String> {
    let g = &cfg.group;
    let mut candidates: Vec<(String, Representation<Fq>)> = Vec::new();
    for (i, rep) in cfg.library.iter().enumerate() {
        if rep.group() != g {
            return Err(format!("library entry {i} is for a different group"));
        }
        if rep.field() != &cfg.field {
            return Err(format!("library entry {i} is over {}", rep.field().describe()));
        }
        if rep.dim() <= cfg.max_dim {
            candidates.push((format!("library[{i}]"), rep.clone()));
        }
    }
    for h in g.small_subgroups() {
        let dim = g.order() / h.order();
        if (2..=cfg.max_dim).contains(&dim) {
            let rep = coset_permutation_rep(g, &h, &cfg.field).map_err(|e| e.to_string())?;
            candidates.push((format!("permutation module on G/H, |H| = {}", h.order()), rep));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 2..=cfg.max_dim {
        for k in 0..RANDOM_PER_DIM {
            let gens =
                g.generators().iter().map(|_| random_unitriangular(&mut rng, &cfg.field, n)).collect::<Vec<_>>();
            if let Ok(rep) = Representation::new(g.clone(), cfg.field.clone(), gens) {
                candidates.push((format!("random unitriangular, dim {n}, draw {k}"), rep));
            }
        }
    }
    let available = candidates.len();
    let take = available.min(cfg.budget);
    let records = candidates
        .into_par_iter()
        .take(take)
        .map(|(source, rep)| {
            let cert = certify(&rep).map_err(|e| e.to_string())?;
            Ok(SearchRecord { source, dim: rep.dim(), verdict: cert.verdict, cocycle_hash: cert.cocycle_hash, rep: rep.to_json() })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let obstructed = records.iter().any(|r| r.verdict == Verdict::Obstructed);
    Ok(SearchResult {
        status: if take < available { SearchStatus::Incomplete } else { SearchStatus::Complete },
        group_status: if obstructed { "NOT_LIFTABLE_WITNESSED" } else { "OPEN" }.into(),
        candidates_examined: take,
        candidates_available: available,
        records,
    })
}
