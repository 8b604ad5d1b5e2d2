//! The event schedule of the increasing angular sweep over β ∈ (0, π).
//!
//! Vertices only ever leave TR and BL and only ever join TL and BR. Point `p`
//! leaves TR at the smallest slope angle from `p` to a point above it, and
//! the α queue finds all of these by repeatedly expiring the cheapest pair of
//! consecutive TR vertices. The other three staircases reuse the same
//! procedure on a reflected or rotated copy of the points.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::Result;
use crate::geom::{self, slope_angle, Angle, Point};
use crate::hull::{OverlapRegion, PairKind, StaircaseKind};
use crate::rankset::RankSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Deletion,
    Insertion,
    Overlap,
    Release,
}

impl EventKind {
    pub fn is_vertex(self) -> bool {
        matches!(self, EventKind::Deletion | EventKind::Insertion)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Payload {
    Vertex { staircase: StaircaseKind, point: usize },
    Region(OverlapRegion),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub angle: Angle,
    pub kind: EventKind,
    pub payload: Payload,
    /// The two points whose slope angle is `angle`, lower point first.
    pub support: (usize, usize),
    pub sequence_index: usize,
}

impl Event {
    fn new(points: &[Point], kind: EventKind, payload: Payload, a: usize, b: usize) -> Self {
        let support = if points[a].y < points[b].y { (a, b) } else { (b, a) };
        Event {
            angle: slope_angle(points[a], points[b]).expect("general position"),
            kind,
            payload,
            support,
            sequence_index: 0,
        }
    }

    pub fn staircase(&self) -> Option<StaircaseKind> {
        match self.payload {
            Payload::Vertex { staircase, .. } => Some(staircase),
            Payload::Region(_) => None,
        }
    }

    pub fn point(&self) -> Option<usize> {
        match self.payload {
            Payload::Vertex { point, .. } => Some(point),
            Payload::Region(_) => None,
        }
    }

    pub fn region(&self) -> Option<OverlapRegion> {
        match self.payload {
            Payload::Region(r) => Some(r),
            Payload::Vertex { .. } => None,
        }
    }

    fn tie_key(&self) -> (EventKind, Option<StaircaseKind>, Option<usize>, Option<OverlapRegion>) {
        (self.kind, self.staircase(), self.point(), self.region())
    }
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("angle", &self.angle)?;
        m.serialize_entry("kind", &self.kind)?;
        match self.payload {
            Payload::Vertex { staircase, point } => {
                m.serialize_entry("staircase", &staircase)?;
                m.serialize_entry("point", &point)?;
            }
            Payload::Region(r) => m.serialize_entry("region", &r)?,
        }
        m.end()
    }
}

/// Min-heap entry: an angle in (0, π) as its bit pattern, which orders
/// positive floats correctly, and a pair of ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    key: u64,
    a: u32,
    b: u32,
}

impl Pending {
    fn new(angle: f64, a: usize, b: usize) -> Reverse<Self> {
        Reverse(Pending {
            key: angle.to_bits(),
            a: a as u32,
            b: b as u32,
        })
    }

    fn angle(&self) -> f64 {
        f64::from_bits(self.key)
    }
}

/// Points in ascending y with the permutation both ways.
struct Ranked {
    order: Vec<usize>,
    rank: Vec<usize>,
    sorted: Vec<Point>,
}

impl Ranked {
    fn new(points: &[Point]) -> Self {
        let order = geom::y_order(points);
        let mut rank = vec![0; points.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let sorted = order.iter().map(|&i| points[i]).collect();
        Ranked { order, rank, sorted }
    }

    /// The sorted points under `f`, which either keeps the y order
    /// (`flip = false`) or reverses it.
    fn frame(&self, flip: bool, f: impl Fn(Point) -> Point) -> Vec<Point> {
        if flip {
            self.sorted.iter().rev().map(|&p| f(p)).collect()
        } else {
            self.sorted.iter().map(|&p| f(p)).collect()
        }
    }
}

fn rank_angle(sorted: &[Point], r: usize, s: usize) -> f64 {
    slope_angle(sorted[r], sorted[s])
        .expect("general position")
        .radians()
}

/// TR deletions of points given by ascending y, as `(leaving, dominating)`
/// ranks in order of angle.
fn tr_deletions(sorted: &[Point]) -> Vec<(usize, usize)> {
    let n = sorted.len();
    if n < 2 {
        return Vec::new();
    }
    let mut prev: Vec<Option<usize>> = (0..n).map(|r| r.checked_sub(1)).collect();
    let mut next: Vec<Option<usize>> = (0..n).map(|r| (r + 1 < n).then_some(r + 1)).collect();
    let mut alive = vec![true; n];
    let mut heap: BinaryHeap<Reverse<Pending>> = (0..n - 1)
        .map(|r| Pending::new(rank_angle(sorted, r, r + 1), r, r + 1))
        .collect();
    let mut out = Vec::with_capacity(n - 1);
    while let Some(Reverse(Pending { a, b, .. })) = heap.pop() {
        let (a, b) = (a as usize, b as usize);
        if !alive[a] || next[a] != Some(b) {
            continue;
        }
        alive[a] = false;
        out.push((a, b));
        prev[b] = prev[a];
        if let Some(p) = prev[a] {
            next[p] = Some(b);
            heap.push(Pending::new(rank_angle(sorted, p, b), p, b));
        }
    }
    out
}

/// Insertion and deletion events, sorted.
pub fn vertex_events(points: &[Point]) -> Result<Vec<Event>> {
    geom::require_general_position(points)?;
    Ok(sorted(vertex_events_ranked(points, &Ranked::new(points))))
}

fn vertex_events_ranked(points: &[Point], rk: &Ranked) -> Vec<Event> {
    let n = points.len();
    let frames: [(StaircaseKind, EventKind, bool, Vec<Point>); 4] = [
        (StaircaseKind::TR, EventKind::Deletion, false, rk.sorted.clone()),
        (
            StaircaseKind::BL,
            EventKind::Deletion,
            true,
            rk.frame(true, |p| Point::new(-p.x, -p.y)),
        ),
        (
            StaircaseKind::TL,
            EventKind::Insertion,
            false,
            rk.frame(false, |p| Point::new(-p.x, p.y)),
        ),
        (
            StaircaseKind::BR,
            EventKind::Insertion,
            true,
            rk.frame(true, |p| Point::new(p.x, -p.y)),
        ),
    ];
    let mut out = Vec::with_capacity(4 * n);
    for (staircase, kind, flip, frame) in &frames {
        let back = |r: usize| rk.order[if *flip { n - 1 - r } else { r }];
        for (a, b) in tr_deletions(frame) {
            let (p, q) = (back(a), back(b));
            out.push(Event::new(
                points,
                *kind,
                Payload::Vertex {
                    staircase: *staircase,
                    point: p,
                },
                p,
                q,
            ));
        }
    }
    out
}

/// A region change found by [`simulate`], in the frame it was simulated in.
struct RawRegion {
    born: bool,
    /// TR step then BL step, point indices, lower first.
    steps: ((usize, usize), (usize, usize)),
    support: (usize, usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VertexMove {
    Tr,
    Bl,
}

/// Overlap births and releases between TR and BL over the increasing sweep.
///
/// Works on ranks: `sorted` holds the frame's points by ascending y, `order`
/// maps ranks to point indices, and `tr_del`, `bl_del` are `(leaving,
/// dominating)` rank pairs.
fn simulate(
    sorted: &[Point],
    order: &[usize],
    tr_del: &[(usize, usize)],
    bl_del: &[(usize, usize)],
) -> Vec<RawRegion> {
    let n = sorted.len();
    if n < 2 {
        return Vec::new();
    }
    let angle = |r: usize, s: usize| rank_angle(sorted, r, s);

    let mut moves: Vec<(f64, VertexMove, usize, (usize, usize))> = tr_del
        .iter()
        .map(|&(r, s)| (angle(r, s), VertexMove::Tr, r, (order[r], order[s])))
        .chain(
            bl_del
                .iter()
                .map(|&(r, s)| (angle(r, s), VertexMove::Bl, r, (order[r], order[s]))),
        )
        .collect();
    moves.sort_unstable_by(|x, y| {
        x.0.total_cmp(&y.0)
            .then((x.1 == VertexMove::Bl).cmp(&(y.1 == VertexMove::Bl)))
            .then(x.2.cmp(&y.2))
    });

    let mut tr = RankSet::full(n);
    let mut bl = RankSet::full(n);
    // live regions keyed by TR-step lower rank -> (b, c, d); and BL-step lower rank -> a
    let mut by_tr: Vec<Option<(usize, usize, usize)>> = vec![None; n];
    let mut by_bl: Vec<Option<usize>> = vec![None; n];
    // full-overlap angles, keyed by (c, b): BL-step lower rank and TR-step upper rank
    let mut heap: BinaryHeap<Reverse<Pending>> = BinaryHeap::new();
    let mut out = Vec::new();

    let steps = |a: usize, b: usize, c: usize, d: usize| {
        ((order[a], order[b]), (order[c], order[d]))
    };

    for r in 0..n - 1 {
        by_tr[r] = Some((r + 1, r, r + 1));
        by_bl[r] = Some(r);
        heap.push(Pending::new(angle(r, r + 1), r, r + 1));
    }

    fn release(
        by_tr: &mut [Option<(usize, usize, usize)>],
        by_bl: &mut [Option<usize>],
        a: usize,
    ) -> Option<(usize, usize, usize, usize)> {
        let (b, c, d) = by_tr[a].take()?;
        by_bl[c] = None;
        Some((a, b, c, d))
    }

    // a queue entry is stale unless the region it was pushed for is still live
    let expire = |by_tr: &mut [Option<(usize, usize, usize)>],
                  by_bl: &mut [Option<usize>],
                  top: Pending| {
        let (c, b) = (top.a as usize, top.b as usize);
        let a = by_bl[c]?;
        match by_tr[a] {
            Some((b0, c0, _)) if b0 == b && c0 == c => {}
            _ => return None,
        }
        let (a, b, c, d) = release(by_tr, by_bl, a)?;
        Some(RawRegion {
            born: false,
            steps: steps(a, b, c, d),
            support: (order[c], order[b]),
        })
    };

    for &(alpha, mv, r, support) in &moves {
        while let Some(&Reverse(top)) = heap.peek() {
            if top.angle() >= alpha {
                break;
            }
            heap.pop();
            if let Some(raw) = expire(&mut by_tr, &mut by_bl, top) {
                out.push(raw);
            }
        }
        match mv {
            VertexMove::Tr => {
                let prev = tr.pred(r);
                let next = tr.succ(r);
                for a in prev.into_iter().chain(std::iter::once(r)) {
                    if let Some((a, b, c, d)) = release(&mut by_tr, &mut by_bl, a) {
                        out.push(RawRegion {
                            born: false,
                            steps: steps(a, b, c, d),
                            support,
                        });
                    }
                }
                tr.remove(r);
                if let (Some(a), Some(b)) = (prev, next) {
                    if let Some(d) = bl.succ(a) {
                        let c = bl.pred(d).expect("bottommost stays in BL");
                        let omega = angle(c, b);
                        if omega > alpha {
                            if let Some(old) = by_bl[c] {
                                if let Some((a0, b0, c0, d0)) = release(&mut by_tr, &mut by_bl, old) {
                                    out.push(RawRegion {
                                        born: false,
                                        steps: steps(a0, b0, c0, d0),
                                        support,
                                    });
                                }
                            }
                            by_tr[a] = Some((b, c, d));
                            by_bl[c] = Some(a);
                            heap.push(Pending::new(omega, c, b));
                            out.push(RawRegion {
                                born: true,
                                steps: steps(a, b, c, d),
                                support,
                            });
                        }
                    }
                }
            }
            VertexMove::Bl => {
                let prev = bl.pred(r);
                let next = bl.succ(r);
                for c in prev.into_iter().chain(std::iter::once(r)) {
                    if let Some(a) = by_bl[c] {
                        if let Some((a, b, c, d)) = release(&mut by_tr, &mut by_bl, a) {
                            out.push(RawRegion {
                                born: false,
                                steps: steps(a, b, c, d),
                                support,
                            });
                        }
                    }
                }
                bl.remove(r);
                if let (Some(c), Some(d)) = (prev, next) {
                    if let Some(a) = tr.pred(d) {
                        if a >= c {
                            let b = tr.succ(a).expect("topmost stays in TR");
                            let omega = angle(c, b);
                            if omega > alpha {
                                if let Some((a0, b0, c0, d0)) = release(&mut by_tr, &mut by_bl, a) {
                                    out.push(RawRegion {
                                        born: false,
                                        steps: steps(a0, b0, c0, d0),
                                        support,
                                    });
                                }
                                by_tr[a] = Some((b, c, d));
                                by_bl[c] = Some(a);
                                heap.push(Pending::new(omega, c, b));
                                out.push(RawRegion {
                                    born: true,
                                    steps: steps(a, b, c, d),
                                    support,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    while let Some(Reverse(top)) = heap.pop() {
        if let Some(raw) = expire(&mut by_tr, &mut by_bl, top) {
            out.push(raw);
        }
    }
    out
}

fn rank_pairs(events: &[Event], staircase: StaircaseKind, rank: &[usize]) -> Vec<(usize, usize)> {
    events
        .iter()
        .filter(|e| e.staircase() == Some(staircase))
        .map(|e| {
            let p = e.point().unwrap();
            let q = if e.support.0 == p { e.support.1 } else { e.support.0 };
            (rank[p], rank[q])
        })
        .collect()
}

/// Overlap and release events for both opposite staircase pairs.
///
/// TR/BL regions are simulated directly. TL/BR regions are the TR/BL regions
/// of the mirror image `x -> -x`, whose increasing sweep is this one run
/// backwards: a mirrored birth is a release here and vice versa.
pub fn region_events(points: &[Point], vertex_schedule: &[Event]) -> Vec<Event> {
    region_events_ranked(points, &Ranked::new(points), vertex_schedule)
}

fn region_events_ranked(points: &[Point], rk: &Ranked, vertex_schedule: &[Event]) -> Vec<Event> {
    let mut out = Vec::new();
    let runs = [
        (PairKind::TrBl, StaircaseKind::TR, StaircaseKind::BL, rk.sorted.clone()),
        (
            PairKind::TlBr,
            StaircaseKind::TL,
            StaircaseKind::BR,
            rk.frame(false, |p| Point::new(-p.x, p.y)),
        ),
    ];
    for (pair, top, bottom, frame) in runs {
        let raws = simulate(
            &frame,
            &rk.order,
            &rank_pairs(vertex_schedule, top, &rk.rank),
            &rank_pairs(vertex_schedule, bottom, &rk.rank),
        );
        for raw in raws {
            let kind = match (raw.born, pair) {
                (true, PairKind::TrBl) | (false, PairKind::TlBr) => EventKind::Overlap,
                _ => EventKind::Release,
            };
            let region = OverlapRegion {
                pair,
                first: raw.steps.0,
                second: raw.steps.1,
            };
            out.push(Event::new(
                points,
                kind,
                Payload::Region(region),
                raw.support.0,
                raw.support.1,
            ));
        }
    }
    out
}

/// Runs of events with the same angle. Coinciding events share a support
/// pair, so their angles are bitwise equal.
pub fn angle_groups(events: &[Event]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < events.len() {
        let a0 = events[start].angle.radians();
        let mut end = start + 1;
        while end < events.len() && events[end].angle.radians() == a0 {
            end += 1;
        }
        out.push(start..end);
        start = end;
    }
    out
}

fn sorted(events: Vec<Event>) -> Vec<Event> {
    let mut keys: Vec<(u64, u32)> = events
        .iter()
        .enumerate()
        .map(|(i, e)| (e.angle.radians().to_bits(), i as u32))
        .collect();
    keys.sort_unstable();
    let mut events: Vec<Event> = keys.iter().map(|&(_, i)| events[i as usize]).collect();
    let groups = angle_groups(&events);
    for g in groups {
        events[g].sort_by_key(Event::tie_key);
    }
    for (i, e) in events.iter_mut().enumerate() {
        e.sequence_index = i;
    }
    events
}

/// Drops region events that are born and released (or released and reborn)
/// within one angle group; the region never exists over an interval there.
fn cancel_instant_regions(events: Vec<Event>) -> Vec<Event> {
    let mut keep = vec![true; events.len()];
    for g in angle_groups(&events) {
        for i in g.clone() {
            if !keep[i] || events[i].kind.is_vertex() {
                continue;
            }
            if let Some(j) = g.clone().find(|&j| {
                keep[j]
                    && j != i
                    && events[j].region() == events[i].region()
                    && events[j].kind != events[i].kind
            }) {
                keep[i] = false;
                keep[j] = false;
            }
        }
    }
    events
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}

/// Full sorted schedule with sequence indices assigned.
pub fn event_schedule(points: &[Point]) -> Result<Vec<Event>> {
    geom::require_general_position(points)?;
    Ok(schedule_unchecked(points))
}

pub(crate) fn schedule_unchecked(points: &[Point]) -> Vec<Event> {
    let rk = Ranked::new(points);
    let vertex = vertex_events_ranked(points, &rk);
    let mut all = region_events_ranked(points, &rk, &vertex);
    all.extend(vertex);
    let mut all = cancel_instant_regions(sorted(all));
    for (i, e) in all.iter_mut().enumerate() {
        e.sequence_index = i;
    }
    all
}
