//! Branch-and-bound range enclosure and inequality proving.
//!
//! Boxes are bisected along their widest dimension; a priority queue ordered
//! by worst violation margin drives work toward the part of the domain where
//! the claim is closest to failing. An evaluator may return an error on a
//! box (e.g. a divisor straddles zero); that is treated as "split me", and
//! only becomes fatal once the box is too small to split meaningfully.
//!
//! Proof certificates are lists of leaf boxes with the enclosure obtained on
//! each; together the leaves tile the original domain, so a third party can
//! re-check the proof line by line.

use crate::error::{Error, Result};
use crate::interval::Interval;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::{BufRead, Write};

/// Axis-aligned product of intervals. Named to avoid clashing with
/// `std::boxed::Box`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalBox {
    dims: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(dims: Vec<Interval>) -> IntervalBox {
        assert!(!dims.is_empty(), "box needs at least one dimension");
        IntervalBox { dims }
    }

    pub fn one_dim(iv: Interval) -> IntervalBox {
        IntervalBox { dims: vec![iv] }
    }

    pub fn dims(&self) -> &[Interval] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> Interval {
        self.dims[i]
    }

    pub fn n_dims(&self) -> usize {
        self.dims.len()
    }

    /// Index and width of the widest dimension.
    pub fn widest(&self) -> (usize, f64) {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, d) in self.dims.iter().enumerate() {
            let w = d.width();
            if w > best.1 {
                best = (i, w);
            }
        }
        best
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.dims.iter().map(|d| d.mid()).collect()
    }

    pub fn midpoint_box(&self) -> IntervalBox {
        IntervalBox {
            dims: self.dims.iter().map(|d| Interval::point(d.mid())).collect(),
        }
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        self.n_dims() == other.n_dims()
            && self
                .dims
                .iter()
                .zip(&other.dims)
                .all(|(a, b)| a.encloses(*b))
    }

    pub fn split(&self) -> (IntervalBox, IntervalBox) {
        let (i, _) = self.widest();
        let (a, b) = self.dims[i].split();
        let mut left = self.dims.clone();
        let mut right = self.dims.clone();
        left[i] = a;
        right[i] = b;
        (IntervalBox { dims: left }, IntervalBox { dims: right })
    }

    /// True when no dimension can be split into meaningfully distinct halves.
    pub fn is_atomic(&self) -> bool {
        self.dims.iter().all(|d| {
            let m = d.mid();
            let scale = m.abs().max(1.0);
            d.width() <= 1e-14 * scale || d.lo() >= m || m >= d.hi()
        })
    }

    /// Interval enclosure of the box volume.
    pub fn volume(&self) -> Interval {
        self.dims
            .iter()
            .fold(Interval::ONE, |acc, d| acc * (*d - Interval::point(d.lo())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofStatus {
    Proved,
    Disproved,
    Inconclusive,
}

/// One certified leaf: a sub-box and the enclosure established on it.
/// For inequality proofs the interval encloses f - g; for range enclosures
/// it encloses f itself.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertLeaf {
    #[serde(rename = "box")]
    pub region: IntervalBox,
    pub value: Interval,
}

#[derive(Clone, Debug)]
pub struct ProofOutcome {
    pub status: ProofStatus,
    pub certificate: Vec<CertLeaf>,
    pub work: u64,
    /// For disproved: a box on which the inequality fails everywhere.
    pub witness: Option<IntervalBox>,
    /// Human-readable reason for an inconclusive verdict.
    pub note: Option<String>,
}

impl ProofOutcome {
    pub fn proved(&self) -> bool {
        self.status == ProofStatus::Proved
    }
}

struct QueueItem {
    margin: f64,
    seq: u64,
    region: IntervalBox,
    diff: Option<Interval>,
}

impl PartialEq for QueueItem {
    fn eq(&self, other: &Self) -> bool {
        self.margin.total_cmp(&other.margin) == Ordering::Equal && self.seq == other.seq
    }
}
impl Eq for QueueItem {}
impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap: larger margin first; ties broken oldest-first so runs
        // are deterministic.
        self.margin
            .total_cmp(&other.margin)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Certify that f(x) <= g(x) for every x in the domain.
pub fn prove_upper_bound<F, G>(
    f: F,
    g: G,
    domain: &IntervalBox,
    budget: u64,
) -> ProofOutcome
where
    F: Fn(&IntervalBox) -> Result<Interval>,
    G: Fn(&IntervalBox) -> Result<Interval>,
{
    let eval_diff = |b: &IntervalBox| -> Option<Interval> {
        match (f(b), g(b)) {
            (Ok(fv), Ok(gv)) => Some(fv - gv),
            _ => None,
        }
    };

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut work = 0u64;
    let push = |heap: &mut BinaryHeap<QueueItem>, region: IntervalBox, seq: &mut u64, work: &mut u64| {
        *work += 1;
        let diff = eval_diff(&region);
        let margin = match diff {
            Some(d) => {
                let m = d.hi();
                if m.is_nan() {
                    f64::INFINITY
                } else {
                    m
                }
            }
            None => f64::INFINITY,
        };
        heap.push(QueueItem {
            margin,
            seq: *seq,
            region,
            diff,
        });
        *seq += 1;
    };

    push(&mut heap, domain.clone(), &mut seq, &mut work);
    let mut certificate = Vec::new();
    // Atomic boxes that stay undecided don't end the search: a disproof may
    // still turn up elsewhere. They only block a Proved verdict.
    let mut undecided: Option<IntervalBox> = None;

    while let Some(item) = heap.pop() {
        match item.diff {
            Some(d) if d.hi() <= 0.0 => {
                certificate.push(CertLeaf {
                    region: item.region,
                    value: d,
                });
                continue;
            }
            Some(d) if d.lo() > 0.0 => {
                // f - g strictly positive on the whole box: disproof.
                return ProofOutcome {
                    status: ProofStatus::Disproved,
                    certificate: Vec::new(),
                    work,
                    witness: Some(item.region),
                    note: None,
                };
            }
            Some(_) => {
                // Undecided; try a cheap midpoint disproof before splitting.
                if let Some(dm) = eval_diff(&item.region.midpoint_box()) {
                    if dm.lo() > 0.0 {
                        return ProofOutcome {
                            status: ProofStatus::Disproved,
                            certificate: Vec::new(),
                            work,
                            witness: Some(item.region.midpoint_box()),
                            note: None,
                        };
                    }
                }
            }
            None => {}
        }

        if item.region.is_atomic() {
            undecided.get_or_insert(item.region);
            continue;
        }
        if work >= budget {
            return ProofOutcome {
                status: ProofStatus::Inconclusive,
                certificate: Vec::new(),
                work,
                witness: Some(item.region),
                note: Some(format!("budget of {budget} boxes exhausted")),
            };
        }
        let (a, b) = item.region.split();
        push(&mut heap, a, &mut seq, &mut work);
        push(&mut heap, b, &mut seq, &mut work);
    }

    if let Some(region) = undecided {
        return ProofOutcome {
            status: ProofStatus::Inconclusive,
            certificate: Vec::new(),
            work,
            witness: Some(region),
            note: Some("box at minimum width still undecided".into()),
        };
    }
    ProofOutcome {
        status: ProofStatus::Proved,
        certificate,
        work,
        witness: None,
        note: None,
    }
}

#[derive(Clone, Debug)]
pub struct RangeEnclosure {
    pub range: Interval,
    pub converged: bool,
    pub work: u64,
    pub leaves: Vec<CertLeaf>,
}

/// Enclose the exact range of f over the domain, refining until the
/// overestimation on each side is at most tol (or the budget runs out,
/// in which case the result is still a valid enclosure, merely wider).
pub fn enclose_range<F>(
    f: F,
    domain: &IntervalBox,
    tol: f64,
    budget: u64,
) -> Result<RangeEnclosure>
where
    F: Fn(&IntervalBox) -> Result<Interval>,
{
    assert!(tol > 0.0);
    let mut work = 0u64;
    // Certain bounds on the true extrema, from point evaluations; a leaf is
    // "sharp" once its enclosure cannot push the hull more than tol beyond
    // a value the function provably attains.
    let mut known_max = f64::NEG_INFINITY;
    let mut known_min = f64::INFINITY;
    let mut accepted: Vec<(IntervalBox, Interval)> = Vec::new();
    let mut queue: Vec<IntervalBox> = vec![domain.clone()];
    let mut out_of_budget = false;

    loop {
        while let Some(region) = queue.pop() {
            work += 1;
            let enc = match f(&region) {
                Ok(v) => v,
                Err(e) => {
                    if region.is_atomic() {
                        return Err(e);
                    }
                    let (a, b) = region.split();
                    queue.push(a);
                    queue.push(b);
                    continue;
                }
            };
            if let Ok(pv) = f(&region.midpoint_box()) {
                known_max = known_max.max(pv.lo());
                known_min = known_min.min(pv.hi());
            }
            let sharp = enc.hi() <= known_max + tol && enc.lo() >= known_min - tol;
            if sharp || region.is_atomic() || work >= budget {
                if !sharp && work >= budget {
                    out_of_budget = true;
                }
                accepted.push((region, enc));
            } else {
                let (a, b) = region.split();
                queue.push(a);
                queue.push(b);
            }
        }
        if out_of_budget {
            break;
        }
        // Early leaves were accepted against weaker incumbents; requeue any
        // that still protrude now that the incumbents have settled.
        let mut changed = false;
        let mut keep = Vec::with_capacity(accepted.len());
        for (region, enc) in accepted.drain(..) {
            let sharp = enc.hi() <= known_max + tol && enc.lo() >= known_min - tol;
            if !sharp && !region.is_atomic() && work < budget {
                queue.push(region);
                changed = true;
            } else {
                keep.push((region, enc));
            }
        }
        accepted = keep;
        if !changed {
            break;
        }
    }

    let mut range: Option<Interval> = None;
    let mut converged = !out_of_budget;
    let mut leaves = Vec::with_capacity(accepted.len());
    for (region, enc) in accepted {
        if enc.hi() > known_max + tol || enc.lo() < known_min - tol {
            converged = false;
        }
        range = Some(match range {
            None => enc,
            Some(r) => r.hull(enc),
        });
        leaves.push(CertLeaf {
            region,
            value: enc,
        });
    }
    let range = range.ok_or_else(|| Error::budget(work))?;
    Ok(RangeEnclosure {
        range,
        converged,
        work,
        leaves,
    })
}

/// Header line of a JSONL certificate file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateHeader {
    pub kind: String,
    pub domain: IntervalBox,
    pub status: ProofStatus,
    pub work: u64,
    /// For upper-bound proofs, every leaf value (enclosing f-g) must have
    /// hi <= threshold (zero for plain inequalities).
    pub threshold: f64,
}

pub fn write_certificate<W: Write>(
    mut w: W,
    header: &CertificateHeader,
    leaves: &[CertLeaf],
) -> Result<()> {
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    for leaf in leaves {
        serde_json::to_writer(&mut w, leaf)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_certificate<R: BufRead>(r: R) -> Result<(CertificateHeader, Vec<CertLeaf>)> {
    let mut lines = r.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::SchemaMismatch("empty certificate".into()))??;
    let header: CertificateHeader = serde_json::from_str(&first)?;
    let mut leaves = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        leaves.push(serde_json::from_str::<CertLeaf>(&line)?);
    }
    Ok((header, leaves))
}

/// Structural re-check of a proved certificate: every leaf lies inside the
/// domain, satisfies the threshold, and the leaves tile the domain (exact
/// endpoint chaining in one dimension, volume accounting otherwise).
pub fn check_certificate(header: &CertificateHeader, leaves: &[CertLeaf]) -> Result<()> {
    if header.status != ProofStatus::Proved {
        return Err(Error::Precondition(
            "only proved certificates can be checked".into(),
        ));
    }
    if leaves.is_empty() {
        return Err(Error::SchemaMismatch("certificate has no leaves".into()));
    }
    for (i, leaf) in leaves.iter().enumerate() {
        if !header.domain.contains_box(&leaf.region) {
            return Err(Error::Inconsistency(format!(
                "leaf {i} escapes the domain"
            )));
        }
        if !(leaf.value.hi() <= header.threshold) {
            return Err(Error::Inconsistency(format!(
                "leaf {i} violates the threshold: {} > {}",
                leaf.value.hi(),
                header.threshold
            )));
        }
    }
    if header.domain.n_dims() == 1 {
        let mut segs: Vec<(f64, f64)> = leaves
            .iter()
            .map(|l| (l.region.dim(0).lo(), l.region.dim(0).hi()))
            .collect();
        segs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let dom = header.domain.dim(0);
        if segs[0].0 != dom.lo() || segs.last().unwrap().1 != dom.hi() {
            return Err(Error::Inconsistency(
                "leaves do not reach the domain endpoints".into(),
            ));
        }
        let mut cover = segs[0].1;
        for &(lo, hi) in &segs[1..] {
            if lo > cover {
                return Err(Error::Inconsistency(format!(
                    "coverage gap at {cover} (next leaf starts at {lo})"
                )));
            }
            cover = cover.max(hi);
        }
        if cover != dom.hi() {
            return Err(Error::Inconsistency("coverage stops early".into()));
        }
    } else {
        let total: Interval = leaves
            .iter()
            .fold(Interval::ZERO, |acc, l| acc + l.region.volume());
        let dom_vol = header.domain.volume();
        if total.hi() < dom_vol.lo() * (1.0 - 1e-9) {
            return Err(Error::Inconsistency(format!(
                "leaf volumes {} cover less than the domain volume {}",
                total.hi(),
                dom_vol.lo()
            )));
        }
    }
    Ok(())
}
