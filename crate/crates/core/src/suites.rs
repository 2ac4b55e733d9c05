//! Seeded randomized suites driving each verifier over random instances.
//!
//! Every trial owns a generator seeded from `(seed, index)`, so trials can
//! run in any order or in parallel and still reproduce exactly.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::Prime;
use crate::extstruct::{
    lemma31_compose, lemma32_pushout, realize, verify_injectivity_characterizations, verify_summand_injectivity,
    Conflation, ExtSpace,
};
use crate::quivalg::{random_algebra, BoundQuiverAlgebra};
use crate::repcat::{direct_sum, factor_through_epi, random_representation_with, Representation};
use crate::report::{Report, Verdict};
use crate::resolve::{
    injective_dimension, injective_envelope, injective_resolution, pad_conflation, random_injective, random_morphism,
    random_padded_resolution, verify_dimension_theorem, verify_long_schanuel, verify_schanuel, CrossCheck,
    DimensionKind,
};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Lemma31,
    Lemma32,
    Prop22,
    Prop24,
    Schanuel,
    LongSchanuel,
    DimThm,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lemma31,
        Suite::Lemma32,
        Suite::Prop22,
        Suite::Prop24,
        Suite::Schanuel,
        Suite::LongSchanuel,
        Suite::DimThm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma31 => "lemma31",
            Suite::Lemma32 => "lemma32",
            Suite::Prop22 => "prop22",
            Suite::Prop24 => "prop24",
            Suite::Schanuel => "schanuel",
            Suite::LongSchanuel => "long_schanuel",
            Suite::DimThm => "dimthm",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Parameters shared by every trial of a run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Fixed algebra, or `None` to draw one per trial.
    pub algebra: Option<Arc<BoundQuiverAlgebra>>,
    /// Bound on the dimension of each random module.
    pub max_dim: usize,
    /// Bound on the dimension of random algebras.
    pub max_algebra_dim: usize,
    /// Conflations drawn per module by the injectivity suite.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { algebra: None, max_dim: 3, max_algebra_dim: 8, samples: 10 }
    }
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub index: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub summary: String,
    pub report: Report,
}

/// Seed of trial `index`, by a splitmix64 step.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const PRIMES: [u32; 3] = [2, 3, 5];

fn algebra_for<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> Arc<BoundQuiverAlgebra> {
    match &cfg.algebra {
        Some(a) => a.clone(),
        None => {
            let p = Prime::new(PRIMES[rng.random_range(0..PRIMES.len())] as u64).expect("prime");
            random_algebra(rng, p, cfg.max_algebra_dim)
        }
    }
}

fn describe(alg: &BoundQuiverAlgebra) -> String {
    format!(
        "p={} vertices={} arrows={} dim={}",
        alg.prime().get(),
        alg.vertex_count(),
        alg.quiver().arrows().len(),
        alg.dim()
    )
}

/// Random conflation `a ↣ ? ↠ c` from a random class.
fn random_conflation<R: Rng>(a: &Representation, c: &Representation, rng: &mut R) -> Result<Conflation, Error> {
    let space = ExtSpace::new(c, a)?;
    Ok(realize(&space.random_class(rng)))
}

/// Random module, injective with probability one third.
fn random_module_mixed<R: Rng>(
    alg: &Arc<BoundQuiverAlgebra>,
    max_dim: usize,
    rng: &mut R,
) -> Result<Representation, Error> {
    if rng.random_range(0..3) == 0 {
        random_injective(alg, rng)
    } else {
        random_representation_with(alg, max_dim, rng)
    }
}

/// Runs one trial; errors from the verifiers become failing outcomes.
pub fn run_trial(suite: Suite, cfg: &SuiteConfig, seed: u64, index: usize) -> TrialOutcome {
    let ts = trial_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(ts);
    let result = match suite {
        Suite::Lemma31 => trial_lemma31(cfg, &mut rng),
        Suite::Lemma32 => trial_lemma32(cfg, &mut rng),
        Suite::Prop22 => trial_prop22(cfg, &mut rng),
        Suite::Prop24 => trial_prop24(cfg, &mut rng),
        Suite::Schanuel => trial_schanuel(cfg, &mut rng),
        Suite::LongSchanuel => trial_long_schanuel(cfg, &mut rng),
        Suite::DimThm => trial_dimthm(cfg, &mut rng),
    };
    match result {
        Ok((summary, mut report)) => {
            report.seed = Some(ts);
            TrialOutcome { index, seed: ts, verdict: report.verdict(), summary, report }
        }
        Err(e) => {
            let mut report = Report::new(suite.name()).with_seed(ts);
            report.check("trial completed", false, format!("{e}"));
            TrialOutcome { index, seed: ts, verdict: Verdict::Fail, summary: format!("error: {e}"), report }
        }
    }
}

type TrialResult = Result<(String, Report), Error>;

fn trial_lemma31<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    let alg = algebra_for(cfg, rng);
    let d = cfg.max_dim;
    let a = random_representation_with(&alg, d, rng)?;
    let d_obj = random_representation_with(&alg, d, rng)?;
    let f_row = random_conflation(&a, &d_obj, rng)?;
    let b = f_row.b().clone();
    let f_obj = random_representation_with(&alg, d, rng)?;
    let t_g = random_conflation(&b, &f_obj, rng)?;
    let h = t_g.x().after(f_row.x());
    let (_, h1) = crate::repcat::cokernel(&h);
    let t_h = Conflation::new(h, h1.clone())?;
    let dd = factor_through_epi(f_row.y(), &h1.after(t_g.x()))?;
    let d1 = factor_through_epi(&h1, t_g.y())?;
    let t_d = Conflation::new(dd, d1)?;
    let dia = lemma31_compose(&t_h, &t_d, &t_g, f_row.x())?;
    let summary = format!("{}; dims A={:?} B={:?} C={:?}", describe(&alg), a.dims(), b.dims(), t_g.b().dims());
    Ok((summary, dia.report))
}

fn trial_lemma32<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    let alg = algebra_for(cfg, rng);
    let d = cfg.max_dim;
    let a = random_representation_with(&alg, d, rng)?;
    let c1 = random_representation_with(&alg, d, rng)?;
    let c2 = random_representation_with(&alg, d, rng)?;
    let t1 = random_conflation(&a, &c1, rng)?;
    let t2 = random_conflation(&a, &c2, rng)?;
    let dia = lemma32_pushout(&t1, &t2)?;
    let m = dia.object("M").map(|m| m.dims().to_vec()).unwrap_or_default();
    Ok((format!("{}; dims A={:?} M={:?}", describe(&alg), a.dims(), m), dia.report))
}

fn trial_prop22<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    let alg = algebra_for(cfg, rng);
    let e = random_module_mixed(&alg, cfg.max_dim, rng)?;
    let r = verify_injectivity_characterizations(&e, cfg.samples, rng.random())?;
    let summary = format!(
        "{}; dims {:?}: injective={} sampled-split={} envelope-split={}",
        describe(&alg),
        e.dims(),
        r.injective,
        r.sampled_conflations_split,
        r.envelope_splits
    );
    Ok((summary, r.report))
}

fn trial_prop24<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    let alg = algebra_for(cfg, rng);
    let e = random_module_mixed(&alg, cfg.max_dim, rng)?;
    let g = random_module_mixed(&alg, cfg.max_dim, rng)?;
    let r = verify_summand_injectivity(&e, &g)?;
    Ok((format!("{}; sum={} first={} second={}", describe(&alg), r.sum, r.first, r.second), r.report))
}

/// An envelope of `e`, padded by a random injective half of the time.
fn random_injective_conflation<R: Rng>(e: &Representation, rng: &mut R) -> Result<Conflation, Error> {
    let env = injective_envelope(e)?;
    if rng.random_bool(0.5) {
        return Ok(env);
    }
    let j = random_injective(e.algebra(), rng)?;
    let f = if rng.random_bool(0.5) { Some(random_morphism(e, &j, rng)?) } else { None };
    pad_conflation(&env, &j, f.as_ref())
}

fn trial_schanuel<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    let alg = algebra_for(cfg, rng);
    let e = random_representation_with(&alg, cfg.max_dim, rng)?;
    let c1 = random_injective_conflation(&e, rng)?;
    // The second conflation is always padded so the pair differs.
    let env = injective_envelope(&e)?;
    let j = random_injective(&alg, rng)?;
    let f = if rng.random_bool(0.5) { Some(random_morphism(&e, &j, rng)?) } else { None };
    let c2 = pad_conflation(&env, &j, f.as_ref())?;
    let w = verify_schanuel(&c1, &c2, Some(CrossCheck { seed: rng.random(), trials: 256 }))?;
    Ok((format!("{}; E={:?} I⊕F'={:?}", describe(&alg), e.dims(), w.lhs.total.dims()), w.report))
}

/// Draws before giving up on a constrained instance.
const FINITE_DRAWS: usize = 64;

/// Bound on the total dimension of canonical cosyzygies in resolution
/// suites; resolutions over wild algebras grow geometrically.
const MAX_COSYZYGY_DIM: usize = 8;

fn trial_long_schanuel<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    for _ in 0..FINITE_DRAWS {
        let alg = algebra_for(cfg, rng);
        let e = random_representation_with(&alg, cfg.max_dim, rng)?;
        let r1 = injective_resolution(&e, 2)?;
        if (0..=3).any(|k| r1.cosyzygy(k).total_dim() > MAX_COSYZYGY_DIM.max(cfg.max_dim)) {
            continue;
        }
        let r2 = random_padded_resolution(&e, 2, rng)?;
        let (report, _) = verify_long_schanuel(&r1, &r2, 1)?;
        let sizes: Vec<usize> = (0..=3).map(|k| r2.cosyzygy(k).total_dim()).collect();
        return Ok((format!("{}; E={:?} padded cosyzygy sizes {sizes:?}", describe(&alg), e.dims()), report));
    }
    Err(Error::GenerationBudgetExceeded("no base object with small cosyzygies found".into()))
}

fn trial_dimthm<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> TrialResult {
    for _ in 0..FINITE_DRAWS {
        let alg = algebra_for(cfg, rng);
        let m = random_representation_with(&alg, cfg.max_dim, rng)?;
        // Injective modules make the statement vacuous.
        let DimensionKind::Finite(n @ 1..) = injective_dimension(&m, 3)?.kind else { continue };
        let alt = random_padded_resolution(&m, n - 1, rng)?;
        let check = verify_dimension_theorem(&m, &alt, n)?;
        let mut report = check.report;
        report.check("F injective", check.f_injective, "");
        let summary = format!("{}; m={:?} idim={n} F={:?}", describe(&alg), m.dims(), alt.cosyzygy(n).dims());
        return Ok((summary, report));
    }
    Err(Error::GenerationBudgetExceeded("no non-injective module of injective dimension at most 3 found".into()))
}

/// Counts of a finished run, trials sorted by index.
#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub seed: u64,
    pub trials: Vec<TrialOutcome>,
}

impl SuiteSummary {
    pub fn from_trials(suite: Suite, seed: u64, mut trials: Vec<TrialOutcome>) -> Self {
        trials.sort_by_key(|t| t.index);
        SuiteSummary { suite, seed, trials }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.trials.iter().filter(|t| t.verdict == v).count()
    }
}

/// Runs `trials` trials sequentially.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig, seed: u64, trials: usize) -> SuiteSummary {
    let outcomes = (0..trials).map(|i| run_trial(suite, cfg, seed, i)).collect();
    SuiteSummary::from_trials(suite, seed, outcomes)
}

/// Checks `I ⊕ F' ≅ I' ⊕ F` for a fixed pair, turning hypothesis
/// violations into failing reports.
pub fn schanuel_case(c1: &Conflation, c2: &Conflation, seed: u64) -> Report {
    match verify_schanuel(c1, c2, Some(CrossCheck { seed, trials: 256 })) {
        Ok(w) => w.report,
        Err(e) => {
            let mut r = Report::new("schanuel").with_seed(seed);
            r.check("hypotheses hold", false, format!("{e}"));
            r
        }
    }
}

/// `a ⊕ c` as a convenience for callers assembling fixed cases.
pub fn sum2(a: &Representation, c: &Representation) -> Result<Representation, Error> {
    Ok(direct_sum(&[a.clone(), c.clone()])?.total)
}
