//! Two-stage randomized greedy construction of small complete arcs.
//!
//! Each step adds one uncovered point maximising the number of covered points.
//! A *full* step scores every uncovered point; a *random* step scores only a
//! uniform sample of `d` of them. Ties are broken uniformly at random.
//!
//! Stage 1 starts from the frame, takes `delta` random steps and then full
//! steps until the arc is complete. Stage 2 repeats the construction from the
//! same start set for a number of attempts, each on its own random stream,
//! with a few of the first five steps random. The smallest arc wins, ties
//! going to the earliest attempt (stage 1 counts as attempt 0).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arc::{verify_arc, ArcError, ArcSet};
use crate::plane::{Plane, PlaneError, PointIndex};
use crate::rng::{self, SearchRng};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("the arc is already complete")]
    ArcAlreadyComplete,
    #[error("no complete arc after {0} steps")]
    StepCapExceeded(usize),
    #[error("search produced an arc that fails verification: {0}")]
    VerificationFailed(String),
    #[error("order {0} is too large for the greedy search (limit 65535)")]
    OrderTooLargeForSearch(u32),
    #[error("order {0} is too large for the exhaustive oracle (limit 9)")]
    OrderTooLargeForOracle(u64),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Arc(#[from] ArcError),
}

/// How many candidates a random step samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleSize {
    /// Capped by the candidate count.
    Fixed(usize),
    /// The `i`-th random step of an attempt uses entry `i`; the last entry repeats.
    Schedule(Vec<usize>),
}

impl SampleSize {
    fn get(&self, ordinal: usize) -> usize {
        match self {
            SampleSize::Fixed(d) => *d,
            SampleSize::Schedule(v) => v[ordinal.min(v.len() - 1)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Number of second-stage attempts.
    pub attempts: usize,
    /// Random steps at the start of stage 1; `None` means `ceil(sqrt(q))`.
    pub stage1_random_steps: Option<usize>,
    pub sample_size: SampleSize,
    /// 1-based step numbers of each stage-2 attempt that are random.
    pub stage2_random_steps: Vec<usize>,
    /// Start stage 2 from this many leading points of the stage-1 arc instead of the frame.
    pub stage2_prefix: Option<usize>,
    /// Cap on points added per attempt; `None` means `8 * ceil(sqrt(q ln q))`.
    pub max_steps: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            attempts: 50,
            stage1_random_steps: None,
            // Very small samples keep the early steps diverse; the greedy
            // steps that follow do the real work.
            sample_size: SampleSize::Fixed(2),
            stage2_random_steps: vec![1, 2, 3],
            stage2_prefix: None,
            max_steps: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: &str| Err(SearchError::InvalidConfig(m.to_string()));
        let steps = &self.stage2_random_steps;
        if !(2..=3).contains(&steps.len()) {
            return bad("stage-2 random steps must name two or three steps");
        }
        if steps.iter().any(|s| !(1..=5).contains(s)) {
            return bad("stage-2 random steps must lie in 1..=5");
        }
        let mut sorted = steps.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != steps.len() {
            return bad("stage-2 random steps must be distinct");
        }
        match &self.sample_size {
            SampleSize::Fixed(0) => return bad("sample size must be at least 1"),
            SampleSize::Schedule(v) if v.is_empty() || v.contains(&0) => {
                return bad("sample size schedule must be nonempty with entries at least 1")
            }
            _ => {}
        }
        if self.max_steps == Some(0) {
            return bad("step cap must be positive");
        }
        Ok(())
    }

    pub fn stage1_random_steps_for(&self, q: u32) -> usize {
        self.stage1_random_steps.unwrap_or_else(|| ceil_sqrt(q as usize))
    }

    pub fn max_steps_for(&self, q: u32) -> usize {
        self.max_steps.unwrap_or_else(|| {
            let q = f64::from(q);
            8 * (q * q.ln()).sqrt().ceil() as usize
        })
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Writes into `slots`, for every point, the position (among the `q+1` lines
/// through `centre`) of the line joining it to `centre`.
fn fill_pencil(plane: &Plane, centre: PointIndex, slots: &mut [u16]) {
    for (k, &line) in plane.lines_through(centre).iter().enumerate() {
        plane.for_each_point_on_line(line, |v| slots[v as usize] = k as u16);
    }
}

/// An arc under greedy construction together with its candidate list.
///
/// Lines through member `m` are numbered `m * (q+1) + slot`. Candidate `i`
/// owns row `i` of `rows`, whose entry `m` is the number of the line through
/// the candidate and member `m`; `counts` holds how many candidates lie on
/// each numbered line. Both are updated as candidates become covered, so a
/// full step only sums `n` counts per candidate.
pub struct GreedyState<'p> {
    arc: ArcSet<'p>,
    /// Uncovered non-member points, ascending.
    candidates: Vec<PointIndex>,
    rows: Vec<u32>,
    stride: usize,
    counts: Vec<u32>,
    pencil: Vec<u16>,
    gains: Vec<u32>,
    steps: usize,
}

impl<'p> GreedyState<'p> {
    pub fn new(plane: &'p Plane, start: &[PointIndex]) -> Result<GreedyState<'p>, SearchError> {
        if plane.order() > u32::from(u16::MAX) {
            return Err(SearchError::OrderTooLargeForSearch(plane.order()));
        }
        let arc = ArcSet::new(plane, start)?;
        let candidates = arc.uncovered_points();
        let stride = start.len().next_power_of_two().max(8);
        let mut state = GreedyState {
            arc,
            rows: vec![0; candidates.len() * stride],
            candidates,
            stride,
            counts: Vec::new(),
            pencil: vec![0; plane.num_points() as usize],
            gains: Vec::new(),
            steps: 0,
        };
        for (col, &m) in start.iter().enumerate() {
            state.add_column(col, m);
        }
        Ok(state)
    }

    pub fn arc(&self) -> &ArcSet<'p> {
        &self.arc
    }

    pub fn into_arc(self) -> ArcSet<'p> {
        self.arc
    }

    pub fn candidates(&self) -> &[PointIndex] {
        &self.candidates
    }

    pub fn is_complete(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Points added since construction.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Coverage gain of every candidate, aligned with [`GreedyState::candidates`].
    ///
    /// The gain of `u` is `1 + sum over members m of (U(line(u, m)) - 1)` where `U`
    /// counts uncovered points on a line. With two or more members every member
    /// is covered, so `U` of a line through a member is its candidate count.
    pub fn gains(&mut self) -> &[u32] {
        let n = self.arc.len();
        let q = self.arc.plane().order();
        self.gains.clear();
        match n {
            0 => self.gains.resize(self.candidates.len(), 0),
            1 => self.gains.resize(self.candidates.len(), q + 1),
            _ => {
                let counts = &self.counts;
                self.gains.extend(self.rows.chunks_exact(self.stride).map(|row| {
                    let sum: u32 = row[..n].iter().map(|&l| counts[l as usize]).sum();
                    sum + 1 - n as u32
                }));
            }
        }
        &self.gains
    }

    /// Adds a gain-maximising point among all candidates.
    pub fn step_full(&mut self, rng: &mut SearchRng) -> Result<PointIndex, SearchError> {
        if self.is_complete() {
            return Err(SearchError::ArcAlreadyComplete);
        }
        self.gains();
        let best = *self.gains.iter().max().expect("candidates are nonempty");
        let ties = self.gains.iter().filter(|&&g| g == best).count();
        let pick = if ties > 1 { rng.random_range(0..ties) } else { 0 };
        let pos = self
            .gains
            .iter()
            .enumerate()
            .filter(|(_, &g)| g == best)
            .nth(pick)
            .map(|(i, _)| i)
            .expect("pick is below the tie count");
        let u = self.candidates[pos];
        self.push(u);
        Ok(u)
    }

    /// Adds the gain maximiser of `min(d, #candidates)` uniformly sampled candidates.
    pub fn step_random(&mut self, d: usize, rng: &mut SearchRng) -> Result<PointIndex, SearchError> {
        if self.is_complete() {
            return Err(SearchError::ArcAlreadyComplete);
        }
        if d == 0 {
            return Err(SearchError::InvalidConfig("sample size must be at least 1".into()));
        }
        let k = d.min(self.candidates.len());
        let sample: Vec<PointIndex> = index::sample(rng, self.candidates.len(), k)
            .into_iter()
            .map(|i| self.candidates[i])
            .collect();
        let scored: Vec<(PointIndex, usize)> = sample
            .iter()
            .map(|&u| (u, self.arc.gain_unchecked(u)))
            .collect();
        let best = scored.iter().map(|&(_, g)| g).max().expect("sample is nonempty");
        let ties: Vec<PointIndex> = scored
            .iter()
            .filter(|&&(_, g)| g == best)
            .map(|&(u, _)| u)
            .collect();
        let u = if ties.len() > 1 {
            ties[rng.random_range(0..ties.len())]
        } else {
            ties[0]
        };
        self.push(u);
        Ok(u)
    }

    fn push(&mut self, u: PointIndex) {
        let n = self.arc.len();
        self.arc
            .add_point(u)
            .expect("candidates are uncovered non-members");

        // Drop u and newly covered candidates, compacting rows in place.
        let stride = self.stride;
        let mut kept = 0;
        for i in 0..self.candidates.len() {
            let v = self.candidates[i];
            let start = i * stride;
            if v == u || self.arc.is_covered(v) {
                for &l in &self.rows[start..start + n] {
                    self.counts[l as usize] -= 1;
                }
            } else {
                if kept != i {
                    self.candidates[kept] = v;
                    self.rows.copy_within(start..start + n, kept * stride);
                }
                kept += 1;
            }
        }
        self.candidates.truncate(kept);
        self.rows.truncate(kept * stride);

        if n == self.stride {
            let wider = self.stride * 2;
            let mut rows = vec![0; kept * wider];
            for (dst, src) in rows.chunks_exact_mut(wider).zip(self.rows.chunks_exact(stride)) {
                dst[..n].copy_from_slice(&src[..n]);
            }
            self.rows = rows;
            self.stride = wider;
        }
        self.add_column(n, u);
        self.steps += 1;
    }

    /// Fills column `col` of every row with slots in the pencil of member `m`.
    fn add_column(&mut self, col: usize, m: PointIndex) {
        let plane = self.arc.plane();
        let width = plane.order() as usize + 1;
        fill_pencil(plane, m, &mut self.pencil);
        let base = self.counts.len();
        self.counts.resize(base + width, 0);
        for (row, &v) in self.rows.chunks_exact_mut(self.stride).zip(&self.candidates) {
            let l = base + self.pencil[v as usize] as usize;
            row[col] = l as u32;
            self.counts[l] += 1;
        }
    }
}


/// Runs steps until the arc is complete. `plan(step, state)` returns the
/// sample size for a random step or `None` for a full step.
fn complete_arc<'p>(
    mut state: GreedyState<'p>,
    mut plan: impl FnMut(usize) -> Option<usize>,
    rng: &mut SearchRng,
    max_steps: usize,
) -> Result<GreedyState<'p>, SearchError> {
    while !state.is_complete() {
        if state.steps() >= max_steps {
            return Err(SearchError::StepCapExceeded(max_steps));
        }
        match plan(state.steps() + 1) {
            Some(d) => state.step_random(d, rng)?,
            None => state.step_full(rng)?,
        };
    }
    Ok(state)
}

/// Stage 1: from the frame, `delta` random steps then full steps until complete.
pub fn stage1<'p>(
    plane: &'p Plane,
    config: &SearchConfig,
    rng: &mut SearchRng,
) -> Result<ArcSet<'p>, SearchError> {
    let q = plane.order();
    let delta = config.stage1_random_steps_for(q);
    let state = GreedyState::new(plane, &plane.frame_points())?;
    let plan = |step: usize| (step <= delta).then(|| config.sample_size.get(step - 1));
    Ok(complete_arc(state, plan, rng, config.max_steps_for(q))?.into_arc())
}

/// One stage-2 attempt from `start`; returns the arc and the number of steps taken.
pub fn stage2_attempt(
    plane: &Plane,
    config: &SearchConfig,
    start: &[PointIndex],
    rng: &mut SearchRng,
) -> Result<(Vec<PointIndex>, usize), SearchError> {
    let q = plane.order();
    let state = GreedyState::new(plane, start)?;
    let plan = |step: usize| {
        config
            .stage2_random_steps
            .iter()
            .position(|&s| s == step)
            .map(|ordinal| config.sample_size.get(ordinal))
    };
    let done = complete_arc(state, plan, rng, config.max_steps_for(q))?;
    let steps = done.steps();
    Ok((done.into_arc().points().to_vec(), steps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub q: u32,
    /// The smallest complete arc found, in insertion order.
    pub best: Vec<PointIndex>,
    pub best_size: usize,
    /// 0 for the stage-1 arc, `k` for the `k`-th stage-2 attempt.
    pub best_attempt: usize,
    /// Arc size per attempt, stage 1 first.
    pub attempt_sizes: Vec<usize>,
    /// Points added over all attempts.
    pub total_steps: usize,
    pub elapsed: Duration,
}

impl SearchResult {
    /// Number of attempts per resulting arc size.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &s in &self.attempt_sizes {
            *h.entry(s).or_insert(0) += 1;
        }
        h
    }
}

/// Stage 2: `config.attempts` independent attempts merged with the stage-1 arc.
///
/// Attempts run on the current rayon pool; the merge depends only on attempt
/// indices, so the result does not depend on the number of threads.
pub fn stage2(
    plane: &Plane,
    config: &SearchConfig,
    k0: &[PointIndex],
) -> Result<SearchResult, SearchError> {
    let started = Instant::now();
    let start: Vec<PointIndex> = match config.stage2_prefix {
        Some(len) => k0[..len.min(k0.len())].to_vec(),
        None => plane.frame_points().to_vec(),
    };
    let attempts: Vec<(Vec<PointIndex>, usize)> = (1..=config.attempts as u64)
        .into_par_iter()
        .map(|k| stage2_attempt(plane, config, &start, &mut rng::stream(config.seed, k)))
        .collect::<Result<_, _>>()?;

    let mut attempt_sizes = Vec::with_capacity(attempts.len() + 1);
    attempt_sizes.push(k0.len());
    attempt_sizes.extend(attempts.iter().map(|(a, _)| a.len()));
    let best_attempt = (0..attempt_sizes.len())
        .min_by_key(|&i| (attempt_sizes[i], i))
        .expect("stage 1 is always present");
    let best = if best_attempt == 0 {
        k0.to_vec()
    } else {
        attempts[best_attempt - 1].0.clone()
    };
    Ok(SearchResult {
        q: plane.order(),
        best_size: best.len(),
        best,
        best_attempt,
        attempt_sizes,
        total_steps: attempts.iter().map(|(_, s)| s).sum(),
        elapsed: started.elapsed(),
    })
}

/// Runs both stages in an existing plane and re-verifies the winner.
pub fn search_in_plane(plane: &Plane, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let started = Instant::now();
    let mut rng0 = rng::stream(config.seed, 0);
    let k0 = stage1(plane, config, &mut rng0)?;
    let stage1_steps = k0.len() - 4;
    let k0 = k0.points().to_vec();
    let mut result = stage2(plane, config, &k0)?;
    result.total_steps += stage1_steps;
    result.elapsed = started.elapsed();

    let check = verify_arc(plane, &result.best);
    if !(check.valid && check.complete) {
        return Err(SearchError::VerificationFailed(format!("{:?}", check.witness)));
    }
    Ok(result)
}

/// Builds PG(2,q) and runs the two-stage search.
pub fn search(q: u64, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let plane = Plane::with_order(q)?;
    search_in_plane(&plane, config)
}
