//! Bound-verification campaigns over random states.
//!
//! Each check draws its state from its own ChaCha stream, keyed by the
//! campaign seed and the check's coordinates, so results do not depend on
//! scheduling and rows come out in a fixed order.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::PathBuf;

use eur_core::bounds::Proposition;
use eur_core::error::Error;
use eur_core::states::random_mixed_with;
use eur_core::{
    check_bound, mub_construct, purity, stream_rng, BoundParams, DensityMatrix64, EntropyKind, EntropyOrder, MubSet64,
    RankOnePovm, SicPovm64, SymOrderPair, Target,
};
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::families::{sic_for, sic_pair};

pub const TSALLIS_ORDERS: [f64; 5] = [0.3, 0.5, 1.0, 1.5, 2.0];
pub const RENYI_ORDERS: [f64; 4] = [2.0, 3.0, 10.0, f64::INFINITY];
pub const SYMMETRIZATION_GRID: [f64; 4] = [0.0, 0.25, 0.5, 0.9];

/// Random inputs per contraction check.
const RIESZ_TRIALS: usize = 16;

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub dims: Vec<usize>,
    pub props: Vec<Proposition>,
    /// Orders to test; `None` selects each proposition's default grid.
    pub alphas: Option<Vec<EntropyOrder<f64>>>,
    pub samples: usize,
    pub seed: u64,
    pub eta: Option<f64>,
    pub tolerance: f64,
    /// Number of MUBs; `None` sweeps `2..=d+1`.
    pub count: Option<usize>,
    pub fiducial: Option<PathBuf>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3],
            props: Proposition::ALL.to_vec(),
            alphas: None,
            samples: 100,
            seed: 0,
            eta: None,
            tolerance: eur_core::tol::BOUND,
            count: None,
            fiducial: None,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.samples == 0 {
            return bad("samples must be at least 1");
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dimensions must be positive and non-empty");
        }
        if self.props.is_empty() {
            return bad("no propositions selected");
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return bad("tolerance must be finite and nonnegative");
        }
        if let Some(eta) = self.eta {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::Domain(format!("η = {eta} outside [0, 1]")).into());
            }
        }
        for p in &self.props {
            self.cells(*p)?;
        }
        Ok(())
    }

    fn cells(&self, prop: Proposition) -> CliResult<Vec<Cell>> {
        if let Some((lo, hi)) = prop.order_range() {
            let defaults = if hi == 2.0 { &TSALLIS_ORDERS[..] } else { &RENYI_ORDERS[..] };
            let orders = match &self.alphas {
                Some(a) => a.clone(),
                None => defaults.iter().map(|&a| EntropyOrder::new(a)).collect::<Result<_, _>>()?,
            };
            for o in &orders {
                let a = o.value();
                if a < lo || a > hi {
                    let range = if hi == 2.0 { "(0, 2]" } else { "[2, inf]" };
                    return Err(Error::Domain(format!("order {o} outside {range} for {prop}")).into());
                }
            }
            return Ok(orders.into_iter().map(Cell::Order).collect());
        }
        if prop.uses_sym() {
            let grid = match &self.alphas {
                // The larger order of the pair, α = 1/(1-s).
                Some(a) => a
                    .iter()
                    .map(|o| {
                        if o.value() < 1.0 || o.is_infinite() {
                            return Err(Error::Domain(format!("order {o} outside [1, inf) for {prop}")).into());
                        }
                        Ok(SymOrderPair::new(1.0 - o.value().recip())?)
                    })
                    .collect::<CliResult<Vec<_>>>()?,
                None => SYMMETRIZATION_GRID.iter().map(|&s| SymOrderPair::new(s)).collect::<Result<_, _>>()?,
            };
            return Ok(grid.into_iter().map(Cell::Sym).collect());
        }
        Ok(vec![Cell::Plain])
    }

    fn counts(&self, prop: Proposition, d: usize) -> Vec<usize> {
        match family(prop) {
            Family::Mubs => match self.count {
                Some(m) => vec![m],
                None => (2..=d + 1).collect(),
            },
            Family::Sic | Family::Bipartite => vec![1],
            Family::Pair => vec![2],
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    Plain,
    Order(EntropyOrder<f64>),
    Sym(SymOrderPair<f64>),
}

impl Cell {
    fn alpha_column(self) -> String {
        match self {
            Self::Plain => String::new(),
            Self::Order(o) => o.to_string(),
            Self::Sym(p) => p.alpha().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Mubs,
    Sic,
    Pair,
    Bipartite,
}

fn family(prop: Proposition) -> Family {
    use Proposition::*;
    match prop {
        MubTsallis | MubRenyi | MubMinEntropy | MubSymmetrized | CoincidenceSum | MaxProbability => Family::Mubs,
        SicCoincidence | SicTsallis | SicRenyi | SicMinEntropy => Family::Sic,
        PairMaassenUffink | RieszPrecondition => Family::Pair,
        EntanglementG => Family::Bipartite,
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub prop: String,
    pub dim: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub alpha: String,
    pub eta: String,
    pub seed: u64,
    pub sample: usize,
    pub purity: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub saturated: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropSummary {
    pub checks: usize,
    pub violations: usize,
    pub min_margin: f64,
    pub saturated: usize,
}

impl PropSummary {
    fn add(&mut self, row: &Row, tolerance: f64) {
        if self.checks == 0 || row.margin < self.min_margin {
            self.min_margin = row.margin;
        }
        self.checks += 1;
        self.violations += usize::from(row.margin < -tolerance);
        self.saturated += usize::from(row.saturated);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: PropSummary,
    pub by_prop: BTreeMap<String, PropSummary>,
}

impl Summary {
    pub fn from_rows(rows: &[Row], tolerance: f64) -> Self {
        let mut total = PropSummary::default();
        let mut by_prop: BTreeMap<String, PropSummary> = BTreeMap::new();
        for r in rows {
            total.add(r, tolerance);
            by_prop.entry(r.prop.clone()).or_default().add(r, tolerance);
        }
        Self { total, by_prop }
    }

    pub fn passed(&self) -> bool {
        self.total.violations == 0
    }

    pub fn line(&self) -> String {
        format!(
            "checks={} violations={} min_margin={:.6e} saturated={}",
            self.total.checks, self.total.violations, self.total.min_margin, self.total.saturated
        )
    }
}

struct Task {
    dim: usize,
    prop: Proposition,
    m: usize,
    cell_index: usize,
    cell: Cell,
    sample: usize,
}

/// SplitMix64 finalizer folded over the task coordinates.
fn stream_id(parts: &[u64]) -> u64 {
    parts.iter().fold(0x9E37_79B9_7F4A_7C15u64, |acc, &x| {
        let mut z = acc ^ x.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    })
}

fn random_state<R: Rng>(d: usize, rng: &mut R) -> CliResult<DensityMatrix64> {
    let rank = rng.random_range(1..=d);
    Ok(random_mixed_with(d, rank, rng)?)
}

#[derive(Default)]
struct Families {
    mubs: HashMap<(usize, usize), MubSet64>,
    sics: HashMap<usize, SicPovm64>,
    pairs: HashMap<usize, (RankOnePovm<f64>, RankOnePovm<f64>)>,
}

impl Families {
    fn prepare(&mut self, config: &CampaignConfig, prop: Proposition, d: usize, m: usize) -> CliResult<()> {
        match family(prop) {
            Family::Mubs => {
                if let Entry::Vacant(e) = self.mubs.entry((d, m)) {
                    e.insert(mub_construct(d, m)?);
                }
            }
            Family::Sic | Family::Bipartite | Family::Pair => {
                if let Entry::Vacant(e) = self.sics.entry(d) {
                    e.insert(sic_for(d, config.fiducial.as_deref())?);
                }
                if family(prop) == Family::Pair && !self.pairs.contains_key(&d) {
                    let pair = sic_pair(&self.sics[&d])?;
                    self.pairs.insert(d, pair);
                }
            }
        }
        Ok(())
    }

    fn target(&self, prop: Proposition, d: usize, m: usize) -> Target<'_, f64> {
        match family(prop) {
            Family::Mubs => Target::Mubs(&self.mubs[&(d, m)]),
            Family::Sic | Family::Bipartite => Target::Sic(&self.sics[&d]),
            Family::Pair => {
                let (a, b) = &self.pairs[&d];
                Target::Pair(a, b)
            }
        }
    }
}

fn evaluate(config: &CampaignConfig, families: &Families, task: &Task) -> CliResult<Vec<Row>> {
    let prop_index = Proposition::ALL.iter().position(|p| *p == task.prop).expect("known proposition");
    let coords = [task.dim as u64, prop_index as u64, task.m as u64, task.cell_index as u64, task.sample as u64];
    let mut rng = stream_rng(config.seed, stream_id(&coords));
    let d = task.dim;
    let rho = if family(task.prop) == Family::Bipartite {
        let a = random_state(d, &mut rng)?;
        let b = random_state(d, &mut rng)?;
        a.tensor(&b)
    } else {
        random_state(d, &mut rng)?
    };
    let mut params = BoundParams::<f64> {
        tolerance: config.tolerance,
        seed: rng.next_u64(),
        trials: RIESZ_TRIALS,
        ..BoundParams::default()
    };
    match task.cell {
        Cell::Order(o) => params.order = o,
        Cell::Sym(s) => params.sym = s,
        Cell::Plain => {}
    }
    if task.prop.uses_eta() {
        params.eta = config.eta;
    }
    let kinds: &[EntropyKind] =
        if task.prop.uses_sym() { &[EntropyKind::Tsallis, EntropyKind::Renyi] } else { &[EntropyKind::Tsallis] };
    let target = families.target(task.prop, d, task.m);
    let pur = purity(&rho);
    kinds
        .iter()
        .map(|&kind| {
            params.kind = kind;
            let r = check_bound(target, &rho, task.prop, &params)?;
            Ok(Row {
                prop: r.label,
                dim: d,
                m: task.m,
                alpha: task.cell.alpha_column(),
                eta: params.eta.map(|e| e.to_string()).unwrap_or_default(),
                seed: config.seed,
                sample: task.sample,
                purity: pur,
                lhs: r.lhs,
                rhs: r.rhs,
                margin: r.margin,
                saturated: r.saturated,
            })
        })
        .collect()
}

/// Runs every check of the campaign, in parallel, and returns the rows in
/// `(dim, prop, M, order, sample)` order.
pub fn run(config: &CampaignConfig) -> CliResult<Vec<Row>> {
    config.validate()?;
    let mut families = Families::default();
    let mut tasks = Vec::new();
    for &dim in &config.dims {
        for &prop in &config.props {
            let cells = config.cells(prop)?;
            for m in config.counts(prop, dim) {
                families.prepare(config, prop, dim, m)?;
                for (cell_index, &cell) in cells.iter().enumerate() {
                    for sample in 0..config.samples {
                        tasks.push(Task { dim, prop, m, cell_index, cell, sample });
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<Row>> = tasks.par_iter().map(|t| evaluate(config, &families, t)).collect::<CliResult<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a> {
    dims: &'a [usize],
    props: Vec<&'static str>,
    samples: usize,
    seed: u64,
    tolerance: f64,
    summary: &'a Summary,
    rows: &'a [Row],
}

pub fn write_json<W: Write>(config: &CampaignConfig, rows: &[Row], summary: &Summary, out: W) -> CliResult<()> {
    let report = JsonReport {
        dims: &config.dims,
        props: config.props.iter().map(|p| p.label()).collect(),
        samples: config.samples,
        seed: config.seed,
        tolerance: config.tolerance,
        summary,
        rows,
    };
    serde_json::to_writer_pretty(out, &report)?;
    Ok(())
}
