use std::path::PathBuf;

use clap::{Args, Subcommand};

use super::{fmt_float, Ctx, Failure, InputArg};
use crate::codec::Codec;
use crate::counters::{FmBitmap, HllSketch, MorrisPlus};
use crate::error::Error;
use crate::freq_sketches::{BloomFilter, CmSketch, CountSketch, FkEstimator, StreamModel};
use crate::hashing::HashSeed;
use crate::stream::{parse_stream, StreamUpdate};

#[derive(Debug, Subcommand)]
pub(super) enum SketchCommand {
    /// Approximate event count (each update adds `delta` events).
    Morris(MorrisArgs),
    /// Distinct count with a single FM bitmap.
    Fm(FmArgs),
    /// Distinct count with HyperLogLog.
    Hll(HllArgs),
    /// Membership queries against a Bloom filter of the stream items.
    Bloom(BloomArgs),
    /// Count-Min point queries.
    Cm(CmArgs),
    /// Count Sketch point queries.
    Count(CountArgs),
    /// AMS estimate of the second frequency moment.
    F2(F2Args),
    /// Sampling estimate of the k-th frequency moment.
    Fk(FkArgs),
}

#[derive(Debug, Args)]
pub(super) struct Persist {
    /// Start from a saved sketch instead of an empty one.
    #[arg(long)]
    load: Option<PathBuf>,
    /// Write the final sketch to this file.
    #[arg(long)]
    save: Option<PathBuf>,
}

impl Persist {
    fn load<T: Codec>(&self) -> Result<Option<T>, Failure> {
        match &self.load {
            None => Ok(None),
            Some(p) => {
                let bytes = std::fs::read(p).map_err(Error::Io)?;
                Ok(Some(T::from_bytes(&bytes)?))
            }
        }
    }

    fn save<T: Codec>(&self, sketch: &T) -> Result<(), Failure> {
        if let Some(p) = &self.save {
            std::fs::write(p, sketch.to_bytes()).map_err(Error::Io)?;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
pub(super) struct MorrisArgs {
    /// Target relative error; sets the number of averaged copies.
    #[arg(long, conflicts_with = "copies")]
    epsilon: Option<f64>,
    /// Number of averaged copies.
    #[arg(long)]
    copies: Option<usize>,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct FmArgs {
    /// Bitmap length L.
    #[arg(long, default_value_t = 32)]
    bits: u32,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct HllArgs {
    /// Register count m (a power of two).
    #[arg(long, default_value_t = 1024)]
    registers: usize,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct BloomArgs {
    /// Bitmap size n.
    #[arg(long, default_value_t = 1 << 16)]
    bits: u64,
    /// Hash count k; by default chosen from --expected.
    #[arg(long)]
    hashes: Option<usize>,
    /// Expected item count used to pick k (default: distinct stream items).
    #[arg(long)]
    expected: Option<u64>,
    /// Item to test; repeatable.
    #[arg(long)]
    query: Vec<u64>,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct ErrorBounds {
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
}

#[derive(Debug, Args)]
pub(super) struct CmArgs {
    #[command(flatten)]
    bounds: ErrorBounds,
    /// Accept negative deltas and answer with the row median.
    #[arg(long)]
    turnstile: bool,
    /// Item to estimate; repeatable.
    #[arg(long)]
    query: Vec<u64>,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct CountArgs {
    #[command(flatten)]
    bounds: ErrorBounds,
    /// Item to estimate; repeatable.
    #[arg(long)]
    query: Vec<u64>,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct F2Args {
    #[command(flatten)]
    bounds: ErrorBounds,
    #[command(flatten)]
    persist: Persist,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct FkArgs {
    /// Moment order (at least 1).
    #[arg(long)]
    k: u32,
    /// Copies averaged per group.
    #[arg(long, default_value_t = 64)]
    s1: usize,
    /// Groups whose means are combined by the median.
    #[arg(long, default_value_t = 9)]
    s2: usize,
    #[command(flatten)]
    input: InputArg,
}

fn read_updates(input: &InputArg) -> Result<Vec<StreamUpdate>, Failure> {
    Ok(parse_stream(&input.read()?)?)
}

fn insert_only(updates: &[StreamUpdate]) -> Result<(), Failure> {
    match updates.iter().find(|u| u.delta < 0) {
        Some(u) => Err(Error::ModelViolation(format!(
            "negative delta {} for item {} in an insert-only sketch",
            u.delta, u.item
        ))
        .into()),
        None => Ok(()),
    }
}

pub(super) fn run(cmd: &SketchCommand, ctx: &mut Ctx) -> Result<(), Failure> {
    let seed = HashSeed(ctx.seed);
    match cmd {
        SketchCommand::Morris(a) => {
            let mut m = match a.persist.load::<MorrisPlus>()? {
                Some(m) => m,
                None => match (a.epsilon, a.copies) {
                    (Some(e), _) => MorrisPlus::with_epsilon(e)?,
                    (None, c) => MorrisPlus::new(c.unwrap_or(1))?,
                },
            };
            let updates = read_updates(&a.input)?;
            insert_only(&updates)?;
            let mut rng = seed.rng();
            for u in &updates {
                for _ in 0..u.delta {
                    m.increment(&mut rng);
                }
            }
            a.persist.save(&m)?;
            ctx.line(fmt_float(m.estimate()));
        }
        SketchCommand::Fm(a) => {
            let mut fm = match a.persist.load::<FmBitmap>()? {
                Some(f) => f,
                None => FmBitmap::new(a.bits, seed)?,
            };
            let updates = read_updates(&a.input)?;
            insert_only(&updates)?;
            updates.iter().for_each(|u| fm.update(u.item));
            a.persist.save(&fm)?;
            ctx.line(fmt_float(fm.estimate()));
        }
        SketchCommand::Hll(a) => {
            let mut h = match a.persist.load::<HllSketch>()? {
                Some(h) => h,
                None => HllSketch::new(a.registers, seed)?,
            };
            let updates = read_updates(&a.input)?;
            insert_only(&updates)?;
            updates.iter().for_each(|u| h.update(u.item));
            a.persist.save(&h)?;
            ctx.line(fmt_float(h.estimate()));
        }
        SketchCommand::Bloom(a) => {
            let updates = read_updates(&a.input)?;
            insert_only(&updates)?;
            let mut b = match a.persist.load::<BloomFilter>()? {
                Some(b) => b,
                None => {
                    let k = match (a.hashes, a.expected) {
                        (Some(k), _) => k,
                        (None, Some(e)) => BloomFilter::optimal_k(a.bits, e)?,
                        (None, None) => {
                            let mut items: Vec<u64> = updates.iter().map(|u| u.item).collect();
                            items.sort_unstable();
                            items.dedup();
                            BloomFilter::optimal_k(a.bits, items.len().max(1) as u64)?
                        }
                    };
                    BloomFilter::new(a.bits, k, seed)?
                }
            };
            updates.iter().for_each(|u| b.insert(u.item));
            a.persist.save(&b)?;
            for &q in &a.query {
                let verdict = if b.contains(q) { "present" } else { "absent" };
                ctx.line(format!("{q}\t{verdict}"));
            }
            if a.query.is_empty() {
                ctx.line(format!("bits_set\t{}", b.count_ones()));
            }
        }
        SketchCommand::Cm(a) => {
            let model = if a.turnstile {
                StreamModel::Turnstile
            } else {
                StreamModel::CashRegister
            };
            let mut s = match a.persist.load::<CmSketch>()? {
                Some(s) => s,
                None => CmSketch::with_error(a.bounds.epsilon, a.bounds.delta, model, seed)?,
            };
            for u in read_updates(&a.input)? {
                s.update(u.item, u.delta)?;
            }
            a.persist.save(&s)?;
            for &q in &a.query {
                ctx.line(s.query(q).to_string());
            }
        }
        SketchCommand::Count(a) => {
            let mut s = match a.persist.load::<CountSketch>()? {
                Some(s) => s,
                None => CountSketch::with_error(a.bounds.epsilon, a.bounds.delta, seed)?,
            };
            for u in read_updates(&a.input)? {
                s.update(u.item, u.delta);
            }
            a.persist.save(&s)?;
            for &q in &a.query {
                ctx.line(s.point_query(q).to_string());
            }
        }
        SketchCommand::F2(a) => {
            let mut s = match a.persist.load::<CountSketch>()? {
                Some(s) => s,
                None => CountSketch::with_error(a.bounds.epsilon, a.bounds.delta, seed)?,
            };
            for u in read_updates(&a.input)? {
                s.update(u.item, u.delta);
            }
            a.persist.save(&s)?;
            ctx.line(fmt_float(s.f2()));
        }
        SketchCommand::Fk(a) => {
            let mut e = FkEstimator::new(a.k, a.s1, a.s2, seed)?;
            let updates = read_updates(&a.input)?;
            insert_only(&updates)?;
            for u in &updates {
                for _ in 0..u.delta {
                    e.process(u.item);
                }
            }
            ctx.line(fmt_float(e.estimate()));
        }
    }
    Ok(())
}
