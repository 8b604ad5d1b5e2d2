//! Replays the event schedule, keeping the four staircases and the overlap
//! table current for the open interval between consecutive event angles.

use std::f64::consts::PI;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::events::{self, angle_groups, Event, EventKind, Payload};
use crate::geom::{slope_angle, Angle, Point};
use crate::hull::{
    sort_overlaps, HullSnapshot, OverlapRegion, PairKind, PointSet, Staircase, StaircaseKind,
};
use crate::rankset::RankSet;

#[derive(Debug, Clone)]
pub struct SweepState {
    points: Arc<[Point]>,
    order: Vec<usize>,
    rank: Vec<usize>,
    schedule: Arc<[Event]>,
    groups: Vec<Range<usize>>,
    /// Index of the group containing `cursor`.
    group: usize,
    cursor: usize,
    /// Staircase vertices as y-ranks, indexed by `StaircaseKind::index`.
    stairs: [RankSet; 4],
    /// Overlap table. A step is named by the rank of its lower vertex, and
    /// between events each step carries at most one region; `[pair][rank]`.
    /// Within an angle group a region may be born on a step before the one
    /// it replaces is released, hence two cells.
    by_first: [Vec<Slot>; 2],
    by_second: [Vec<Slot>; 2],
    overlap_count: usize,
    /// Open interval of β over which the current structures are valid.
    interval: (f64, f64),
    verify: bool,
}

#[derive(Debug, Clone, Copy, Default)]
struct Slot([Option<OverlapRegion>; 2]);

impl Slot {
    fn contains(&self, r: &OverlapRegion) -> bool {
        self.0.contains(&Some(*r))
    }

    fn has_room(&self) -> bool {
        self.0.contains(&None)
    }

    fn put(&mut self, r: OverlapRegion) {
        if let Some(c) = self.0.iter_mut().find(|c| c.is_none()) {
            *c = Some(r);
        }
    }

    fn take(&mut self, r: &OverlapRegion) -> bool {
        match self.0.iter_mut().find(|c| c.as_ref() == Some(r)) {
            Some(c) => {
                *c = None;
                true
            }
            None => false,
        }
    }

    /// The occupant; `Err` when there are two.
    fn single(&self) -> std::result::Result<Option<OverlapRegion>, ()> {
        match self.0 {
            [Some(a), None] | [None, Some(a)] => Ok(Some(a)),
            [None, None] => Ok(None),
            [Some(_), Some(_)] => Err(()),
        }
    }
}

/// Sweep positioned before the first event.
pub fn sweep_init(points: &[Point]) -> Result<SweepState> {
    SweepState::new(points)
}

/// Applies the next event.
pub fn sweep_step(state: &mut SweepState) -> Result<Event> {
    state.step()
}

impl SweepState {
    pub fn new(points: &[Point]) -> Result<Self> {
        let set = PointSet::new(points)?;
        let schedule = events::schedule_unchecked(points);
        Ok(Self::from_parts(&set, schedule.into()))
    }

    /// Reuses a precomputed schedule for the same point set.
    pub fn with_schedule(set: &PointSet, schedule: Arc<[Event]>) -> Self {
        Self::from_parts(set, schedule)
    }

    fn from_parts(set: &PointSet, schedule: Arc<[Event]>) -> Self {
        let n = set.len();
        let order = set.y_order().to_vec();
        let mut rank = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let all = RankSet::full(n);
        let mut top = RankSet::empty(n);
        top.insert(n - 1);
        let mut bottom = RankSet::empty(n);
        bottom.insert(0);
        let mut state = SweepState {
            points: set.points().clone(),
            order,
            rank,
            groups: angle_groups(&schedule),
            schedule,
            group: 0,
            cursor: 0,
            stairs: [all.clone(), top, bottom, all],
            by_first: [vec![Slot::default(); n], vec![Slot::default(); n]],
            by_second: [vec![Slot::default(); n], vec![Slot::default(); n]],
            overlap_count: 0,
            interval: (0.0, PI),
            verify: true,
        };
        for r in 0..n.saturating_sub(1) {
            let e = (state.order[r], state.order[r + 1]);
            state.insert_region(OverlapRegion {
                pair: PairKind::TrBl,
                first: e,
                second: e,
            });
        }
        state.interval.1 = state.schedule.first().map_or(PI, |e| e.angle.radians());
        state
    }

    /// Turns the local consistency check after each angle group on or off.
    pub fn set_verification(&mut self, on: bool) {
        self.verify = on;
    }

    pub fn points(&self) -> &Arc<[Point]> {
        &self.points
    }

    pub fn schedule(&self) -> &Arc<[Event]> {
        &self.schedule
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn is_done(&self) -> bool {
        self.cursor == self.schedule.len()
    }

    /// Current open interval `(lo, hi)` in radians; degenerate while an
    /// angle group is half applied.
    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn midpoint(&self) -> Angle {
        Angle::clamped(0.5 * (self.interval.0 + self.interval.1))
    }

    /// Staircase vertices as point indices, by ascending y.
    pub fn staircase_vertices(&self, kind: StaircaseKind) -> Vec<usize> {
        self.stairs[kind.index()].iter().map(|r| self.order[r]).collect()
    }

    /// Nearest vertices of staircase `kind` below and above `point` (point
    /// indices), whether or not `point` itself is on it.
    pub fn neighbors(&self, kind: StaircaseKind, point: usize) -> (Option<usize>, Option<usize>) {
        let set = &self.stairs[kind.index()];
        let r = self.rank[point];
        (set.pred(r).map(|q| self.order[q]), set.succ(r).map(|q| self.order[q]))
    }

    pub fn overlap_count(&self) -> usize {
        self.overlap_count
    }

    pub fn overlaps(&self) -> impl Iterator<Item = OverlapRegion> + '_ {
        self.by_first.iter().flatten().flat_map(|s| s.0.iter().flatten()).copied()
    }

    fn slots(&self, r: &OverlapRegion) -> (usize, usize, usize) {
        (r.pair as usize, self.rank[r.first.0], self.rank[r.second.0])
    }

    fn insert_region(&mut self, r: OverlapRegion) -> bool {
        let (p, f, s) = self.slots(&r);
        if self.by_first[p][f].contains(&r) || !self.by_first[p][f].has_room() {
            return false;
        }
        if !self.by_second[p][s].has_room() {
            return false;
        }
        self.by_first[p][f].put(r);
        self.by_second[p][s].put(r);
        self.overlap_count += 1;
        true
    }

    fn remove_region(&mut self, r: &OverlapRegion) -> bool {
        let (p, f, s) = self.slots(r);
        if !self.by_first[p][f].take(r) {
            return false;
        }
        self.by_second[p][s].take(r);
        self.overlap_count -= 1;
        true
    }

    /// Applies exactly one event. When it completes an angle group the
    /// interval moves on and, if enabled, the touched steps are re-checked.
    pub fn step(&mut self) -> Result<Event> {
        let e = *self.schedule.get(self.cursor).ok_or(Error::EndOfSchedule)?;
        let Range { start, end } = self.groups[self.group].clone();
        self.apply(&e)?;
        self.cursor += 1;
        let a = e.angle.radians();
        if self.cursor == end {
            self.group += 1;
            let hi = self.schedule.get(end).map_or(PI, |n| n.angle.radians());
            self.interval = (a, hi);
            if self.verify {
                self.check_group(start..end)?;
            }
        } else {
            self.interval = (a, a);
        }
        Ok(e)
    }

    /// Applies every event sharing the next angle.
    pub fn step_group(&mut self) -> Result<Range<usize>> {
        if self.is_done() {
            return Err(Error::EndOfSchedule);
        }
        let start = self.cursor;
        let end = self.groups[self.group].end;
        while self.cursor < end {
            self.step()?;
        }
        Ok(start..end)
    }

    /// Applies every event with angle at or below `beta`.
    pub fn advance_to(&mut self, beta: Angle) -> Result<()> {
        while let Some(e) = self.schedule.get(self.cursor) {
            if e.angle.radians() > beta.radians() {
                break;
            }
            self.step_group()?;
        }
        Ok(())
    }

    fn apply(&mut self, e: &Event) -> Result<()> {
        match e.payload {
            Payload::Vertex { staircase, point } => {
                let r = self.rank[point];
                let set = &mut self.stairs[staircase.index()];
                let ok = match e.kind {
                    EventKind::Deletion => set.remove(r),
                    _ => set.insert(r),
                };
                if !ok {
                    return Err(Error::Inconsistent(format!(
                        "event {}: point {} {} {}",
                        e.sequence_index,
                        point,
                        if e.kind == EventKind::Deletion { "missing from" } else { "already on" },
                        staircase.name()
                    )));
                }
            }
            Payload::Region(r) => {
                let ok = match e.kind {
                    EventKind::Overlap => self.insert_region(r),
                    _ => self.remove_region(&r),
                };
                if !ok {
                    return Err(Error::Inconsistent(format!(
                        "event {}: overlap {:?} {}",
                        e.sequence_index,
                        r,
                        if e.kind == EventKind::Overlap { "already present" } else { "not present" }
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether `u` of rank `x` is below `u` of rank `y` at `beta`, decided
    /// by comparing `beta` with the pair's slope angle so that it agrees
    /// with the event order even in very short intervals.
    fn u_less(&self, x: usize, y: usize, beta: f64) -> bool {
        if x == y {
            return false;
        }
        let (px, py) = (self.points[self.order[x]], self.points[self.order[y]]);
        let a = slope_angle(px, py).expect("general position").radians();
        if x > y {
            beta < a
        } else {
            beta > a
        }
    }

    /// The overlap a top step `(a, b)` (ranks) must carry at the current
    /// midpoint, if any.
    fn expected_for_top(&self, pair: PairKind, a: usize, b: usize, beta: f64) -> Option<OverlapRegion> {
        let (_, bottom) = pair.kinds();
        let bs = &self.stairs[bottom.index()];
        let d = bs.succ(a)?;
        let c = bs.pred(d)?;
        let hit = match pair {
            PairKind::TrBl => self.u_less(b, c, beta),
            PairKind::TlBr => self.u_less(c, b, beta),
        };
        hit.then(|| OverlapRegion {
            pair,
            first: (self.order[a], self.order[b]),
            second: (self.order[c], self.order[d]),
        })
    }

    /// The overlap a bottom step `(c, d)` (ranks) must carry.
    fn expected_for_bottom(
        &self,
        pair: PairKind,
        c: usize,
        d: usize,
        beta: f64,
    ) -> Option<OverlapRegion> {
        let (top, _) = pair.kinds();
        let ts = &self.stairs[top.index()];
        let a = ts.pred(d)?;
        if a < c {
            return None;
        }
        let b = ts.succ(a)?;
        self.expected_for_top(pair, a, b, beta)
            .filter(|r| r.second == (self.order[c], self.order[d]))
    }

    fn steps_near(&self, kind: StaircaseKind, r: usize) -> impl Iterator<Item = (usize, usize)> {
        let s = &self.stairs[kind.index()];
        let below = s.pred(r);
        let above = s.succ(r);
        let pair = |x: Option<usize>, y: Option<usize>| x.zip(y);
        let steps = if s.contains(r) {
            [pair(below, Some(r)), pair(Some(r), above)]
        } else {
            [pair(below, above), None]
        };
        steps.into_iter().flatten()
    }

    /// Recomputes the overlap of every step next to a point touched by the
    /// group, at the new interval's midpoint, and compares with the table.
    fn check_group(&self, group: Range<usize>) -> Result<()> {
        let beta = 0.5 * (self.interval.0 + self.interval.1);
        let mut buf = [0usize; 16];
        let mut heap = Vec::new();
        let mut len = 0;
        for e in &self.schedule[group.clone()] {
            let ranks = match e.payload {
                Payload::Vertex { point, .. } => [self.rank[point]; 4],
                Payload::Region(r) => [r.first.0, r.first.1, r.second.0, r.second.1].map(|i| self.rank[i]),
            };
            for t in ranks {
                if len < buf.len() {
                    buf[len] = t;
                } else {
                    heap.push(t);
                }
                len += 1;
            }
        }
        let touched = if len <= buf.len() {
            &mut buf[..len]
        } else {
            heap.extend_from_slice(&buf);
            &mut heap[..]
        };
        touched.sort_unstable();
        let mut k = 0;
        for i in 0..touched.len() {
            if i == 0 || touched[i] != touched[k - 1] {
                touched[k] = touched[i];
                k += 1;
            }
        }
        let touched = &touched[..k];
        for pair in [PairKind::TrBl, PairKind::TlBr] {
            let (top, bottom) = pair.kinds();
            for &t in touched {
                for (a, b) in self.steps_near(top, t) {
                    let want = self.expected_for_top(pair, a, b, beta);
                    let have = self.by_first[pair as usize][a].single();
                    if have.map(|h| h.filter(|r| r.first.1 == self.order[b])) != Ok(want) {
                        let have = have.unwrap_or_default();
                        return Err(self.mismatch(group.clone(), want, have));
                    }
                }
                for (c, d) in self.steps_near(bottom, t) {
                    let want = self.expected_for_bottom(pair, c, d, beta);
                    let have = self.by_second[pair as usize][c].single();
                    if have.map(|h| h.filter(|r| r.second.1 == self.order[d])) != Ok(want) {
                        let have = have.unwrap_or_default();
                        return Err(self.mismatch(group.clone(), want, have));
                    }
                }
            }
        }
        Ok(())
    }

    fn mismatch(
        &self,
        group: Range<usize>,
        want: Option<OverlapRegion>,
        have: Option<OverlapRegion>,
    ) -> Error {
        Error::Inconsistent(format!(
            "after events {}..{} (angle {}): expected overlap {:?}, table has {:?}",
            group.start,
            group.end,
            self.schedule[group.start].angle.radians(),
            want,
            have
        ))
    }

    /// The hull at the midpoint of the current interval.
    pub fn snapshot(&self) -> HullSnapshot {
        let staircases = StaircaseKind::ALL.map(|k| Staircase {
            kind: k,
            vertices: self.staircase_vertices(k),
        });
        let mut overlaps: Vec<OverlapRegion> = self.overlaps().collect();
        sort_overlaps(&self.points, &mut overlaps);
        HullSnapshot {
            beta: self.midpoint(),
            points: self.points.clone(),
            staircases,
            overlaps,
        }
    }
}
