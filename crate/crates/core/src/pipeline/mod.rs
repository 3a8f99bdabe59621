//! End-to-end dataset generation: scenes, candidate questions, answer balancing, splits,
//! files and statistics.
//!
//! Scenes are processed in chunks. Within a chunk, scene sampling and candidate pools are
//! computed per scene in parallel, question selection runs sequentially against the single
//! [`BalanceState`], and rendering plus re-verification run in parallel again. Every random
//! draw comes from a stream keyed by the scene id, so the output does not depend on the
//! number of workers.

mod balance;
mod stats;

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use balance::{balance_accept, BalanceState, FamilyCounts};
pub use stats::{compute_stats, FamilyStats, Overlap, SplitStats, Stats};

use crate::program::{generate_candidate, run_program_with, FamilyId, Outcome, QuestionProgram};
use crate::quantifier::{QuantifierKind, Semantics};
use crate::render::{render_svg, RenderStyle};
use crate::rng::{self, tag};
use crate::sampler::{sample_scene_attempt, SamplerConfig, SamplerError};
use crate::scene::{validate_scene_with, SceneGraph};
use crate::text::{canonical_form, realize_any, SynonymTable, TemplateBank};

pub const SCHEMA_VERSION: u32 = 1;

pub const SCENES_FILE: &str = "scenes.jsonl";
pub const QUESTIONS_FILE: &str = "questions.jsonl";
pub const STATS_FILE: &str = "stats.json";

/// Scenes handled per chunk; bounds the memory held by candidate pools.
const CHUNK: u64 = 256;
/// Floor for a family's selection weight after repeated failures.
const MIN_WEIGHT: f64 = 1.0 / 64.0;
/// Candidates of each answer kept per family and scene.
const POOL_PER_ANSWER: usize = 3;
/// Extra layouts tried for a scene too sparse to carry a full set of questions.
const MAX_REDRAWS: u32 = 8;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("output directory {0} exists and is not empty")]
    OutputNotEmpty(PathBuf),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        }
    }
}

/// Generation settings. Loadable from TOML; every key is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub scenes: u64,
    pub seed: u64,
    pub questions_per_scene: usize,
    /// Allowed per-family |true − false| as a fraction of the family's records.
    pub balance_slack: f64,
    /// Candidate draws per family and scene.
    pub attempt_budget: usize,
    /// Worker threads; `None` uses all cores. Not written to `stats.json`, so output
    /// files do not depend on it.
    #[serde(skip_serializing)]
    pub jobs: Option<usize>,
    pub render: bool,
    pub semantics: Semantics,
    /// Layout parameters. Its `seed` is ignored in favour of the top-level one.
    pub sampler: SamplerConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            scenes: 100,
            seed: 0,
            questions_per_scene: 10,
            balance_slack: 0.06,
            attempt_budget: 50,
            jobs: None,
            render: true,
            semantics: Semantics::default(),
            sampler: SamplerConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        Self::from_toml(&text)
    }

    pub fn sampler_config(&self) -> SamplerConfig {
        SamplerConfig { seed: self.seed, ..self.sampler.clone() }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |m: &str| Err(PipelineError::Config(m.into()));
        if self.questions_per_scene == 0 || self.questions_per_scene > FamilyId::all().len() {
            return bad("questions_per_scene must be between 1 and the number of families");
        }
        if !(0.0..=1.0).contains(&self.balance_slack) {
            return bad("balance_slack must lie in [0, 1]");
        }
        if self.attempt_budget == 0 {
            return bad("attempt_budget must be at least 1");
        }
        if self.jobs == Some(0) {
            return bad("jobs must be at least 1");
        }
        self.sampler_config().validate()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub qlevr_gen_schema: u32,
    pub scene_id: u64,
    pub question_index: usize,
    pub split: Split,
    pub family_id: FamilyId,
    pub template_variant: u32,
    pub text: String,
    pub answer: bool,
    pub quantifier_tags: Vec<QuantifierKind>,
    pub num_quantifiers: usize,
    pub program: QuestionProgram,
}

/// One line of `scenes.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneRecord {
    pub qlevr_gen_schema: u32,
    pub split: Split,
    #[serde(flatten)]
    pub scene: SceneGraph,
}

/// How per-scene work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon workers; `None` uses the global pool.
    Parallel(Option<usize>),
}

impl ExecMode {
    /// Parallel when the `parallel` feature is built, sequential otherwise.
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        if cfg!(feature = "parallel") && jobs != Some(1) {
            ExecMode::Parallel(jobs)
        } else {
            ExecMode::Sequential
        }
    }

    fn map<T, F>(self, items: &[u64], f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            ExecMode::Sequential => items.iter().map(|&i| f(i)).collect(),
            #[cfg(feature = "parallel")]
            ExecMode::Parallel(jobs) => {
                use rayon::prelude::*;
                let run = || items.par_iter().map(|&i| f(i)).collect();
                match jobs {
                    Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                        Ok(pool) => pool.install(run),
                        Err(e) => {
                            log::warn!("could not build a {n}-thread pool ({e}); using the global pool");
                            run()
                        }
                    },
                    None => run(),
                }
            }
            #[cfg(not(feature = "parallel"))]
            ExecMode::Parallel(_) => {
                log::warn!("built without the `parallel` feature; running sequentially");
                items.iter().map(|&i| f(i)).collect()
            }
        }
    }
}

/// Everything produced for a dataset, before it is written.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub scenes: Vec<SceneRecord>,
    pub records: Vec<DatasetRecord>,
    /// `scene_<id>.svg` contents, in scene order; empty when rendering is off.
    pub svgs: Vec<(u64, String)>,
    pub balance: BalanceState,
    /// Scenes that ended with fewer than `questions_per_scene` questions.
    pub short_scenes: Vec<u64>,
}

impl Dataset {
    pub fn stats(&self) -> Stats {
        compute_stats(&self.records)
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    program: QuestionProgram,
    answer: bool,
    text: String,
    variant: u32,
}

struct ScenePool {
    scene: SceneGraph,
    /// Indexed like `FamilyId::all()`.
    pools: Vec<Vec<Candidate>>,
}

/// The split of every scene: a seeded permutation cut at 70/15/15.
pub fn scene_splits(seed: u64, scenes: u64) -> Vec<Split> {
    let mut order: Vec<u64> = (0..scenes).collect();
    order.shuffle(&mut rng::stream(seed, &[tag::SPLIT, scenes]));
    let train = (scenes as f64 * 0.70).round() as usize;
    let val = (scenes as f64 * 0.15).round() as usize;
    let mut out = vec![Split::Test; scenes as usize];
    for (rank, &id) in order.iter().enumerate() {
        out[id as usize] = if rank < train {
            Split::Train
        } else if rank < train + val {
            Split::Val
        } else {
            Split::Test
        };
    }
    out
}

fn candidate_pool(
    config: &PipelineConfig,
    scene: &SceneGraph,
    family_index: usize,
    family: FamilyId,
    bank: &TemplateBank,
    syn: &SynonymTable,
) -> Vec<Candidate> {
    let coords = [tag::CANDIDATES, scene.scene_id, family_index as u64];
    let mut draw_rng = rng::stream(config.seed, &coords);
    let mut text_rng = rng::stream(config.seed, &[tag::REALIZE, scene.scene_id, family_index as u64]);
    let mut pool: Vec<Candidate> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut per_answer = [0usize; 2];
    for _ in 0..config.attempt_budget {
        if per_answer.iter().all(|&n| n >= POOL_PER_ANSWER) {
            break;
        }
        let Ok(program) = generate_candidate(family, scene, &mut draw_rng) else {
            continue;
        };
        let Outcome::Answer(answer) = run_program_with(&program, scene, config.semantics) else {
            continue;
        };
        if per_answer[answer as usize] >= POOL_PER_ANSWER {
            continue;
        }
        let Ok((variant, text)) = realize_any(&program, bank, syn, &mut text_rng) else {
            continue;
        };
        if !seen.insert(canonical_form(&text)) {
            continue;
        }
        per_answer[answer as usize] += 1;
        pool.push(Candidate { program, answer, text, variant });
    }
    pool
}

/// Samples the scene and its candidate pools. A layout whose pools cover fewer families
/// than a scene needs is redrawn on the next layout stream, up to [`MAX_REDRAWS`] times.
fn build_pools(config: &PipelineConfig, scene_id: u64, bank: &TemplateBank, syn: &SynonymTable) -> Result<ScenePool, SamplerError> {
    let sampler = config.sampler_config();
    sampler.validate()?;
    let mut best: Option<(usize, ScenePool)> = None;
    let mut last_err = None;
    let mut layouts = 0;
    for attempt in 0..sampler.max_layout_restarts + MAX_REDRAWS {
        let scene = match sample_scene_attempt(&sampler, scene_id, attempt) {
            Ok(s) => s,
            Err(e @ SamplerError::PlacementExhausted { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let pools: Vec<Vec<Candidate>> = FamilyId::all()
            .into_iter()
            .enumerate()
            .map(|(i, f)| candidate_pool(config, &scene, i, f, bank, syn))
            .collect();
        let covered = pools.iter().filter(|p| !p.is_empty()).count();
        if covered >= config.questions_per_scene {
            return Ok(ScenePool { scene, pools });
        }
        log::debug!("scene {scene_id}: layout {attempt} supports only {covered} families");
        if best.as_ref().is_none_or(|(n, _)| covered > *n) {
            best = Some((covered, ScenePool { scene, pools }));
        }
        layouts += 1;
        if layouts > MAX_REDRAWS {
            break;
        }
    }
    match best {
        Some((_, pool)) => Ok(pool),
        None => Err(last_err.expect("no layout and no error")),
    }
}

/// Picks the scene's questions from its pools, updating the balance state and weights.
fn select_questions(
    config: &PipelineConfig,
    pool: &ScenePool,
    split: Split,
    state: &mut BalanceState,
    weights: &mut [f64],
) -> Vec<DatasetRecord> {
    let families = FamilyId::all();
    let scene_id = pool.scene.scene_id;
    let mut r = rng::stream(config.seed, &[tag::BALANCE, scene_id]);
    let mut open: Vec<usize> = (0..families.len()).filter(|&i| !pool.pools[i].is_empty()).collect();
    let mut out: Vec<DatasetRecord> = Vec::new();
    let mut texts = BTreeSet::new();
    let mut used = BTreeSet::new();
    // A second, relaxed round drops the probabilistic rule and keeps only the slack cap.
    let mut relaxed = false;
    while out.len() < config.questions_per_scene {
        if open.is_empty() {
            if relaxed {
                break;
            }
            relaxed = true;
            open = (0..families.len()).filter(|i| !pool.pools[*i].is_empty() && !used.contains(i)).collect();
            continue;
        }
        let dist = WeightedIndex::new(open.iter().map(|&i| weights[i])).expect("weights are positive");
        let fi = open.swap_remove(dist.sample(&mut r));
        let family = families[fi];
        let mut order: Vec<&Candidate> = pool.pools[fi].iter().collect();
        order.shuffle(&mut r);
        let mut chosen = None;
        for c in order {
            if texts.contains(&canonical_form(&c.text)) {
                continue;
            }
            let ok = if relaxed { state.fits_cap(family, c.answer) } else { state.accept(family, c.answer, &mut r) };
            if ok {
                chosen = Some(c);
                break;
            }
            state.reject(family);
        }
        match chosen {
            Some(c) => {
                used.insert(fi);
                state.record(family, c.answer);
                weights[fi] = (weights[fi] * 2.0).min(1.0);
                texts.insert(canonical_form(&c.text));
                out.push(DatasetRecord {
                    qlevr_gen_schema: SCHEMA_VERSION,
                    scene_id,
                    question_index: out.len(),
                    split,
                    family_id: family,
                    template_variant: c.variant,
                    text: c.text.clone(),
                    answer: c.answer,
                    quantifier_tags: c.program.quantifier_tags(),
                    num_quantifiers: c.program.num_quantifiers(),
                    program: c.program.clone(),
                });
            }
            None if relaxed => {}
            None => {
                log::debug!("scene {scene_id}: family {family} has no acceptable candidate");
                state.unreachable(family);
                weights[fi] = (weights[fi] * 0.5).max(MIN_WEIGHT);
            }
        }
    }
    out
}

/// Re-runs every record's program on its scene; returns the records that disagree.
fn reverify(records: &[DatasetRecord], scene: &SceneGraph, semantics: Semantics) -> Vec<String> {
    records
        .iter()
        .filter(|r| run_program_with(&r.program, scene, semantics) != Outcome::Answer(r.answer))
        .map(|r| format!("scene {} question {}", r.scene_id, r.question_index))
        .collect()
}

/// Generates the whole dataset in memory.
pub fn generate_dataset(config: &PipelineConfig, mode: ExecMode) -> Result<Dataset, PipelineError> {
    config.validate()?;
    let bank = TemplateBank::builtin();
    let syn = SynonymTable::builtin();
    let style = RenderStyle::default();
    let splits = scene_splits(config.seed, config.scenes);
    let mut state = BalanceState::new(config.balance_slack);
    let mut weights = vec![1.0; FamilyId::all().len()];
    let mut data = Dataset {
        scenes: Vec::with_capacity(config.scenes as usize),
        records: Vec::with_capacity(config.scenes as usize * config.questions_per_scene),
        svgs: Vec::new(),
        balance: BalanceState::new(config.balance_slack),
        short_scenes: Vec::new(),
    };
    let mut start = 0;
    while start < config.scenes {
        let ids: Vec<u64> = (start..(start + CHUNK).min(config.scenes)).collect();
        let pools = mode.map(&ids, |id| build_pools(config, id, &bank, &syn));
        let mut chunk: Vec<(SceneGraph, Vec<DatasetRecord>)> = Vec::with_capacity(ids.len());
        for pool in pools {
            let pool = pool?;
            let split = splits[pool.scene.scene_id as usize];
            let records = select_questions(config, &pool, split, &mut state, &mut weights);
            if records.len() < config.questions_per_scene {
                log::warn!("scene {} has only {} questions", pool.scene.scene_id, records.len());
                data.short_scenes.push(pool.scene.scene_id);
            }
            chunk.push((pool.scene, records));
        }
        let idx: Vec<u64> = (0..chunk.len() as u64).collect();
        let finished = mode.map(&idx, |i| {
            let (scene, records) = &chunk[i as usize];
            let svg = config.render.then(|| render_svg(scene, &style));
            (svg, reverify(records, scene, config.semantics))
        });
        for ((scene, records), (svg, failures)) in chunk.into_iter().zip(finished) {
            // A failure here is a bug in the engine, not a property of the data.
            assert!(failures.is_empty(), "re-verification failed: {failures:?}");
            if let Some(svg) = svg {
                data.svgs.push((scene.scene_id, svg));
            }
            let split = splits[scene.scene_id as usize];
            data.scenes.push(SceneRecord { qlevr_gen_schema: SCHEMA_VERSION, split, scene });
            data.records.extend(records);
        }
        start += CHUNK;
    }
    for f in state.violations() {
        log::warn!("family {f} ended outside the balance slack");
    }
    data.balance = state;
    Ok(data)
}

fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<(), PipelineError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    for item in items {
        serde_json::to_writer(&mut w, item).map_err(|e| PipelineError::Io { path: path.into(), source: e.into() })?;
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, PipelineError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let item = serde_json::from_str(&line)
            .map_err(|e| PipelineError::Parse { path: path.into(), line: i + 1, message: e.to_string() })?;
        out.push(item);
    }
    Ok(out)
}

/// `stats.json`: statistics plus the generation config and balance counters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatsFile {
    #[serde(flatten)]
    pub stats: Stats,
    pub balance: BTreeMap<FamilyId, FamilyCounts>,
    pub short_scenes: Vec<u64>,
    pub config: PipelineConfig,
}

/// True when `dir` is absent or an empty directory.
pub fn is_fresh_dir(dir: &Path) -> Result<bool, PipelineError> {
    match fs::read_dir(dir) {
        Ok(mut entries) => Ok(entries.next().is_none()),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(true),
        Err(e) => Err(PipelineError::Io { path: dir.into(), source: e }),
    }
}

/// Writes a dataset into `dir`, which must be absent or empty.
pub fn write_dataset(dir: &Path, data: &Dataset, config: &PipelineConfig) -> Result<Stats, PipelineError> {
    if !is_fresh_dir(dir)? {
        return Err(PipelineError::OutputNotEmpty(dir.into()));
    }
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write_jsonl(&dir.join(SCENES_FILE), &data.scenes)?;
    write_jsonl(&dir.join(QUESTIONS_FILE), &data.records)?;
    for (id, svg) in &data.svgs {
        let path = dir.join(format!("scene_{id}.svg"));
        fs::write(&path, svg).map_err(io_err(&path))?;
    }
    let stats = data.stats();
    let file = StatsFile {
        stats: stats.clone(),
        balance: data.balance.families.clone(),
        short_scenes: data.short_scenes.clone(),
        config: config.clone(),
    };
    let path = dir.join(STATS_FILE);
    let mut text = serde_json::to_string_pretty(&file).expect("stats serialize");
    text.push('\n');
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(stats)
}

/// One problem found by [`validate_dataset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub scene_id: Option<u64>,
    pub question_index: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Finding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.scene_id, self.question_index) {
            (Some(s), Some(q)) => write!(f, "scene {s} question {q}: {}", self.message),
            (Some(s), None) => write!(f, "scene {s}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationSummary {
    pub scenes: usize,
    pub records: usize,
    pub findings: Vec<Finding>,
}

impl ValidationSummary {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Re-verifies a written dataset: schema versions, scene validity, split hygiene, record
/// bookkeeping and, for every record, that its program reproduces the stored answer.
pub fn validate_dataset(dir: &Path, mode: ExecMode) -> Result<ValidationSummary, PipelineError> {
    let scenes: Vec<SceneRecord> = read_jsonl(&dir.join(SCENES_FILE))?;
    let records: Vec<DatasetRecord> = read_jsonl(&dir.join(QUESTIONS_FILE))?;
    let config = match fs::read_to_string(dir.join(STATS_FILE)) {
        Ok(text) => serde_json::from_str::<StatsFile>(&text).map(|s| s.config).unwrap_or_default(),
        Err(_) => PipelineConfig::default(),
    };
    let limits = config.sampler_config().limits();
    let mut findings = Vec::new();
    let mut by_id: BTreeMap<u64, &SceneRecord> = BTreeMap::new();
    for s in &scenes {
        let id = s.scene.scene_id;
        let at = |message: String| Finding { scene_id: Some(id), question_index: None, message };
        if s.qlevr_gen_schema != SCHEMA_VERSION {
            findings.push(at(format!("schema version {}", s.qlevr_gen_schema)));
        }
        if by_id.insert(id, s).is_some() {
            findings.push(at("scene appears twice".into()));
        }
        let report = validate_scene_with(&s.scene, &limits);
        for m in report.messages() {
            findings.push(at(m));
        }
    }
    let mut per_scene: BTreeMap<u64, Vec<&DatasetRecord>> = BTreeMap::new();
    for r in &records {
        per_scene.entry(r.scene_id).or_default().push(r);
    }
    for (&id, rs) in &per_scene {
        let at = |q: Option<usize>, message: String| Finding { scene_id: Some(id), question_index: q, message };
        let Some(scene) = by_id.get(&id) else {
            findings.push(at(None, "questions refer to a missing scene".into()));
            continue;
        };
        let mut families = BTreeSet::new();
        let mut indices = BTreeSet::new();
        for r in rs {
            let q = Some(r.question_index);
            if r.qlevr_gen_schema != SCHEMA_VERSION {
                findings.push(at(q, format!("schema version {}", r.qlevr_gen_schema)));
            }
            if r.split != scene.split {
                findings.push(at(q, format!("split {} differs from the scene's {}", r.split.name(), scene.split.name())));
            }
            if r.family_id != r.program.family {
                findings.push(at(q, "family_id does not match the program".into()));
            }
            if r.quantifier_tags != r.program.quantifier_tags() || r.num_quantifiers != r.program.num_quantifiers() {
                findings.push(at(q, "quantifier tags do not match the program".into()));
            }
            if !families.insert(r.family_id) {
                findings.push(at(q, format!("family {} used twice in the scene", r.family_id)));
            }
            if !indices.insert(r.question_index) {
                findings.push(at(q, "duplicate question_index".into()));
            }
        }
    }
    let ids: Vec<u64> = (0..records.len() as u64).collect();
    let verdicts = mode.map(&ids, |i| {
        let r = &records[i as usize];
        let scene = by_id.get(&r.scene_id)?;
        let outcome = run_program_with(&r.program, &scene.scene, config.semantics);
        (outcome != Outcome::Answer(r.answer)).then(|| Finding {
            scene_id: Some(r.scene_id),
            question_index: Some(r.question_index),
            message: format!("stored answer {} but the program gives {:?}", r.answer, outcome),
        })
    });
    findings.extend(verdicts.into_iter().flatten());
    Ok(ValidationSummary { scenes: scenes.len(), records: records.len(), findings })
}

/// Recomputes statistics from a written dataset.
pub fn dataset_stats(dir: &Path) -> Result<Stats, PipelineError> {
    let records: Vec<DatasetRecord> = read_jsonl(&dir.join(QUESTIONS_FILE))?;
    Ok(compute_stats(&records))
}

/// Loads one scene of a written dataset.
pub fn load_scene(dir: &Path, scene_id: u64) -> Result<Option<SceneGraph>, PipelineError> {
    let scenes: Vec<SceneRecord> = read_jsonl(&dir.join(SCENES_FILE))?;
    Ok(scenes.into_iter().find(|s| s.scene.scene_id == scene_id).map(|s| s.scene))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_are_exact_and_seeded() {
        for n in [1u64, 7, 100, 1000] {
            let s = scene_splits(3, n);
            let count = |k| s.iter().filter(|&&x| x == k).count() as f64;
            assert!((count(Split::Train) - 0.7 * n as f64).abs() <= 1.0);
            assert!((count(Split::Val) - 0.15 * n as f64).abs() <= 1.0);
            assert_eq!(s, scene_splits(3, n));
        }
        assert_ne!(scene_splits(3, 100), scene_splits(4, 100));
    }

    #[test]
    fn config_round_trips_through_toml() {
        let c = PipelineConfig { scenes: 12, seed: 9, balance_slack: 0.1, ..Default::default() };
        let text = toml::to_string(&c).unwrap();
        assert_eq!(PipelineConfig::from_toml(&text).unwrap(), c);
        assert!(PipelineConfig::from_toml("scenes = 3\nbogus = 1\n").is_err());
        let partial = PipelineConfig::from_toml("seed = 5\n[sampler]\nplane_count_range = [1, 3]\n").unwrap();
        assert_eq!(partial.seed, 5);
        assert_eq!(partial.sampler.plane_count_range, (1, 3));
    }

    #[test]
    fn small_dataset_is_complete_and_verified() {
        let config = PipelineConfig { scenes: 12, seed: 1, render: false, ..Default::default() };
        let data = generate_dataset(&config, ExecMode::Sequential).unwrap();
        assert_eq!(data.scenes.len(), 12);
        assert_eq!(data.records.len(), 120);
        for chunk in data.records.chunks(10) {
            let families: BTreeSet<_> = chunk.iter().map(|r| r.family_id).collect();
            assert_eq!(families.len(), 10);
        }
    }
}
