//! Reduction rules for red-blue dominating set and their solution lifting.
//!
//! Three rules are provided:
//!
//! * [`rr_isolated`]: isolated blue vertices must be in every solution, so they
//!   are recolored red and added back on lifting.
//! * [`rr_pendant_exhaustive`]: for a blue pendant `v` with neighbor `u`, some
//!   vertex of `{u, v}` is in every solution and `u` dominates a superset of
//!   what `v` dominates; `N[u]` is recolored red and `u` added on lifting.
//! * [`rr_lossy2`]: greedily picks a set `X` of blue vertices together with an
//!   injective witness map `psi` whose images have pairwise disjoint closed
//!   neighborhoods inside the reduced blue set. Every solution of the reduced
//!   instance therefore has at least `|X|` vertices, which bounds the cost of
//!   adding `X` back to a factor of two.
//!
//! The first two rules never lose optimality (strict ratio 1); the third one
//! may lose at most a factor of two. All rules only recolor blue vertices red,
//! and every lift is a set union.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::RbInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Isolated,
    Pendant,
    Lossy2,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::Isolated => "isolated",
            RuleKind::Pendant => "pendant",
            RuleKind::Lossy2 => "lossy2",
        })
    }
}

/// What one rule application needs to undo itself on a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftRecord {
    pub kind: RuleKind,
    /// Vertices unioned into the solution when lifting; never empty.
    pub add_set: Vec<Vertex>,
    /// Witness map, only for [`RuleKind::Lossy2`].
    pub psi: Option<PsiMap>,
    /// Number of vertices the rule recolored red.
    pub recolored: usize,
}

/// Rule applications in the order they happened.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub records: Vec<LiftRecord>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: LiftRecord) {
        debug_assert!(!record.add_set.is_empty());
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = LiftRecord>) {
        for r in records {
            self.push(r);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    /// The record produced by the lossy rule, if it fired.
    pub fn lossy_record(&self) -> Option<&LiftRecord> {
        self.records.iter().find(|r| r.kind == RuleKind::Lossy2)
    }

    /// Lifts a solution of the final reduced instance to the original one.
    ///
    /// Records are replayed last-applied first. The result is sorted and
    /// free of duplicates.
    pub fn lift(&self, reduced_solution: &[Vertex]) -> Vec<Vertex> {
        let mut solution = reduced_solution.to_vec();
        for record in self.records.iter().rev() {
            solution.extend_from_slice(&record.add_set);
        }
        solution.sort_unstable();
        solution.dedup();
        solution
    }
}

/// Free-function form of [`ReductionTrace::lift`].
pub fn lift_solution(trace: &ReductionTrace, reduced_solution: &[Vertex]) -> Vec<Vertex> {
    trace.lift(reduced_solution)
}

/// The set `X` and the injection `psi: X -> V_b \ X`, stored as `(x, psi(x))`
/// pairs in selection order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PsiMap {
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// The first property of a [`PsiMap`] found to fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiViolation {
    /// `x` was not blue when the rule started, or appears twice.
    DomainNotBlue(Vertex),
    DuplicateDomain(Vertex),
    /// `psi(x)` was not blue, or is itself in `X`.
    ImageOutsideBlue(Vertex),
    /// Two domain vertices share an image.
    NotInjective(Vertex),
    /// `psi(x)` lies in `N[x]`.
    ImageInClosedNeighborhood {
        x: Vertex,
        image: Vertex,
    },
    /// Some `psi(x2)` lies in `N(x1)`.
    ImageAdjacentToDomain {
        x: Vertex,
        image: Vertex,
    },
    /// Two images have intersecting closed neighborhoods.
    ImagesTooClose {
        first: Vertex,
        second: Vertex,
    },
}

impl fmt::Display for PsiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiViolation::DomainNotBlue(x) => write!(f, "x={x} is not blue"),
            PsiViolation::DuplicateDomain(x) => write!(f, "x={x} appears twice"),
            PsiViolation::ImageOutsideBlue(z) => write!(f, "image {z} is not in V_b \\ X"),
            PsiViolation::NotInjective(z) => write!(f, "image {z} is used twice"),
            PsiViolation::ImageInClosedNeighborhood { x, image } => {
                write!(f, "psi({x})={image} lies in N[{x}]")
            }
            PsiViolation::ImageAdjacentToDomain { x, image } => {
                write!(f, "image {image} lies in N({x})")
            }
            PsiViolation::ImagesTooClose { first, second } => {
                write!(f, "N[{first}] and N[{second}] intersect")
            }
        }
    }
}

impl PsiMap {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn x_set(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().map(|&(x, _)| x)
    }

    pub fn images(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().map(|&(_, z)| z)
    }

    pub fn image_of(&self, x: Vertex) -> Option<Vertex> {
        self.pairs.iter().find(|&&(d, _)| d == x).map(|&(_, z)| z)
    }

    /// Checks the map against the instance as it was before the rule ran.
    pub fn check(&self, before: &RbInstance<'_>) -> Result<(), PsiViolation> {
        let g = before.graph();
        let n = g.n();
        let mut in_x = vec![false; n];
        for x in self.x_set() {
            if x >= n || !before.is_blue(x) {
                return Err(PsiViolation::DomainNotBlue(x));
            }
            if in_x[x] {
                return Err(PsiViolation::DuplicateDomain(x));
            }
            in_x[x] = true;
        }

        let mut is_image = vec![false; n];
        for z in self.images() {
            if z >= n || !before.is_blue(z) || in_x[z] {
                return Err(PsiViolation::ImageOutsideBlue(z));
            }
            if is_image[z] {
                return Err(PsiViolation::NotInjective(z));
            }
            is_image[z] = true;
        }

        for &(x, z) in &self.pairs {
            if g.has_edge(x, z) {
                return Err(PsiViolation::ImageInClosedNeighborhood { x, image: z });
            }
        }

        for x in self.x_set() {
            if let Some(&z) = g.neighbors(x).iter().find(|&&u| is_image[u]) {
                return Err(PsiViolation::ImageAdjacentToDomain { x, image: z });
            }
        }

        // owner[u] = the image whose closed neighborhood already claimed u
        let mut owner: Vec<Option<Vertex>> = vec![None; n];
        for z in self.images() {
            for u in g.closed_neighbors(z) {
                if let Some(first) = owner[u] {
                    return Err(PsiViolation::ImagesTooClose { first, second: z });
                }
                owner[u] = Some(z);
            }
        }
        Ok(())
    }
}

/// True iff `pm` satisfies all properties of the lossy rule with respect to
/// `before`, the instance at the moment the rule started.
pub fn verify_psi(before: &RbInstance<'_>, pm: &PsiMap) -> bool {
    pm.check(before).is_ok()
}

/// Recolors every isolated blue vertex red.
pub fn rr_isolated(inst: &mut RbInstance<'_>) -> Option<LiftRecord> {
    let g = inst.graph();
    let isolated: Vec<Vertex> = g
        .vertices()
        .filter(|&v| inst.is_blue(v) && g.degree(v) == 0)
        .collect();
    if isolated.is_empty() {
        return None;
    }
    for &v in &isolated {
        inst.make_red(v);
    }
    Some(LiftRecord {
        kind: RuleKind::Isolated,
        recolored: isolated.len(),
        add_set: isolated,
        psi: None,
    })
}

/// Applies the pendant rule until no blue vertex of degree one remains.
///
/// Vertices are scanned once in ascending id order. Degrees are taken in the
/// graph and never change, and a red vertex never turns blue again, so a
/// single pass leaves no blue pendant behind.
pub fn rr_pendant_exhaustive(inst: &mut RbInstance<'_>) -> Vec<LiftRecord> {
    let g = inst.graph();
    let mut records = Vec::new();
    for v in g.vertices() {
        if !inst.is_blue(v) || g.degree(v) != 1 {
            continue;
        }
        let u = g.neighbors(v)[0];
        let recolored = inst.make_closed_neighborhood_red(u);
        debug_assert!(recolored.contains(&v));
        records.push(LiftRecord {
            kind: RuleKind::Pendant,
            add_set: vec![u],
            psi: None,
            recolored: recolored.len(),
        });
    }
    records
}

/// `scd_nbr(v) = sum of |N(u)| over u in N(v)`.
pub fn second_neighborhood_sizes(g: &Graph) -> Vec<usize> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().map(|&u| g.degree(u)).sum())
        .collect()
}

/// Applies the lossy rule once, choosing `X` and `psi` greedily.
///
/// The next `x` is a pool vertex with the most blue neighbors (lowest id on
/// ties). The pool starts as all blue vertices and loses `N[z]` for every
/// chosen image `z`. The image of `x` is a blue vertex outside `N[x]` at
/// distance at least three from every earlier image, minimizing
/// `scd_nbr` (lowest id on ties). A candidate without any eligible image is
/// dropped from the pool. Accepting a pair recolors `N[x]` red.
///
/// Blue degrees only decrease, so the pool heap uses lazy deletion: a popped
/// entry whose key is stale is pushed back with its current key. Image keys
/// are static; images and red vertices never become eligible again.
pub fn rr_lossy2(inst: &mut RbInstance<'_>) -> Option<LiftRecord> {
    if inst.blue_count() == 0 {
        return None;
    }
    let g = inst.graph();
    let n = g.n();
    let scd_nbr = second_neighborhood_sizes(g);

    let mut blue_deg: Vec<usize> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().filter(|&&u| inst.is_blue(u)).count())
        .collect();
    let mut in_pool = inst.blue_mask().to_vec();
    let mut image_blocked = vec![false; n];
    let mut in_closed_x = vec![false; n];

    let mut pool: BinaryHeap<(usize, Reverse<Vertex>)> = inst
        .blue_vertices()
        .map(|v| (blue_deg[v], Reverse(v)))
        .collect();
    let mut image_queue: BinaryHeap<Reverse<(usize, Vertex)>> = inst
        .blue_vertices()
        .map(|v| Reverse((scd_nbr[v], v)))
        .collect();

    let mut pairs = Vec::new();
    let mut recolored = 0;
    let mut skipped = Vec::new();

    while let Some((key, Reverse(x))) = pool.pop() {
        if !in_pool[x] || !inst.is_blue(x) {
            continue;
        }
        if key != blue_deg[x] {
            pool.push((blue_deg[x], Reverse(x)));
            continue;
        }

        for u in g.closed_neighbors(x) {
            in_closed_x[u] = true;
        }
        skipped.clear();
        let mut image = None;
        while let Some(Reverse((key, z))) = image_queue.pop() {
            if !inst.is_blue(z) || image_blocked[z] {
                continue;
            }
            if in_closed_x[z] {
                skipped.push(Reverse((key, z)));
                continue;
            }
            image = Some(z);
            break;
        }
        for u in g.closed_neighbors(x) {
            in_closed_x[u] = false;
        }

        let Some(z) = image else {
            in_pool[x] = false;
            image_queue.extend(skipped.drain(..));
            continue;
        };
        // skipped candidates lie in N[x] and turn red below

        pairs.push((x, z));
        for w in g.closed_neighbors(x) {
            if inst.make_red(w) {
                recolored += 1;
                for &y in g.neighbors(w) {
                    blue_deg[y] -= 1;
                }
            }
        }
        // closed neighborhoods of images are disjoint, so this is O(m) overall
        for u in g.closed_neighbors(z) {
            in_pool[u] = false;
            for w in g.closed_neighbors(u) {
                image_blocked[w] = true;
            }
        }
    }

    if pairs.is_empty() {
        return None;
    }
    let mut add_set: Vec<Vertex> = pairs.iter().map(|&(x, _)| x).collect();
    add_set.sort_unstable();
    Some(LiftRecord {
        kind: RuleKind::Lossy2,
        add_set,
        psi: Some(PsiMap { pairs }),
        recolored,
    })
}

/// Which rules a reduction run applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionOptions {
    /// Apply the lossy rule after the two exact rules.
    pub lossy: bool,
    /// Check the witness map after the lossy rule and fail on a violation.
    pub verify_psi: bool,
}

impl ReductionOptions {
    pub const EXACT_ONLY: Self = ReductionOptions {
        lossy: false,
        verify_psi: false,
    };
    pub const WITH_LOSSY: Self = ReductionOptions {
        lossy: true,
        verify_psi: false,
    };
}

/// Isolated rule once, pendant rule exhaustively, then optionally the lossy
/// rule once. Returns the trace needed to lift solutions.
pub fn reduce(inst: &mut RbInstance<'_>, opts: ReductionOptions) -> Result<ReductionTrace> {
    let mut trace = ReductionTrace::new();
    if let Some(record) = rr_isolated(inst) {
        trace.push(record);
    }
    trace.extend(rr_pendant_exhaustive(inst));
    if opts.lossy {
        let before = opts.verify_psi.then(|| inst.clone());
        if let Some(record) = rr_lossy2(inst) {
            if let (Some(before), Some(psi)) = (before, record.psi.as_ref()) {
                psi.check(&before)
                    .map_err(|v| Error::Invariant(format!("lossy rule witness: {v}")))?;
            }
            trace.push(record);
        }
    }
    Ok(trace)
}
