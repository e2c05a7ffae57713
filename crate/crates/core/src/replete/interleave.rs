//! Factoring `f = p·q` with both factors replete and both orbit structures
//! known exactly.
//!
//! Builds `h` by finite stages and sets `p = f·h`, `q = h⁻¹`. Each `h`-edge
//! `y ↦ z` forces the `p`-edge `f⁻¹(y) ↦ z`, so both graphs grow together.
//! Stages cycle through three tasks: define `h` at the least point outside its
//! domain, define `h⁻¹` at the least point outside its range, and plant a
//! gadget (a new cycle of some size, or a new two-way line) in one of the two
//! graphs. Every fresh point is isolated in both graphs, so chains only grow
//! at their ends and never merge or close. Open chains therefore become
//! infinite orbits, and finite orbits come only from gadgets.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::orbits::{Count, Inventory, OrbitInfo, OrbitOracle, OrbitSize, StructuredPerm};
use crate::perm::{Perm, Point};
use crate::Params;

const FIRST_WINDOW: u64 = 1 << 10;

struct OrbitRec {
    size: OrbitSize,
    class: u64,
    points: VecDeque<Point>,
    front: i64,
}

#[derive(Default)]
struct Graph {
    next: HashMap<Point, Point>,
    prev: HashMap<Point, Point>,
    home: HashMap<Point, (usize, i64)>,
    orbits: Vec<OrbitRec>,
    classes: HashMap<OrbitSize, Vec<usize>>,
}

impl Graph {
    fn new_orbit(&mut self, size: OrbitSize, pts: &[Point]) {
        let id = self.orbits.len();
        let list = self.classes.entry(size).or_default();
        let class = list.len() as u64;
        list.push(id);
        for (i, &x) in pts.iter().enumerate() {
            self.home.insert(x, (id, i as i64));
        }
        self.orbits.push(OrbitRec { size, class, points: pts.iter().copied().collect(), front: 0 });
    }

    fn link(&mut self, a: Point, b: Point) {
        debug_assert!(!self.next.contains_key(&a) && !self.prev.contains_key(&b));
        self.next.insert(a, b);
        self.prev.insert(b, a);
    }

    /// Adds `a ↦ b` where `a` ends a chain or is new, and `b` starts one or is new.
    fn add_edge(&mut self, a: Point, b: Point) {
        match (self.home.get(&a).copied(), self.home.get(&b).copied()) {
            (None, None) => self.new_orbit(OrbitSize::Infinite, &[a, b]),
            (Some((id, pos)), None) => {
                self.orbits[id].points.push_back(b);
                self.home.insert(b, (id, pos + 1));
            }
            (None, Some((id, pos))) => {
                let rec = &mut self.orbits[id];
                rec.points.push_front(a);
                rec.front -= 1;
                self.home.insert(a, (id, pos - 1));
            }
            (Some(_), Some(_)) => unreachable!("chains {a} and {b} would merge"),
        }
        self.link(a, b);
    }

    fn add_cycle(&mut self, pts: &[Point]) {
        self.new_orbit(OrbitSize::Finite(pts.len() as u64), pts);
        for (i, &x) in pts.iter().enumerate() {
            self.link(x, pts[(i + 1) % pts.len()]);
        }
    }

    fn info(&self, x: Point) -> Option<OrbitInfo> {
        let &(id, pos) = self.home.get(&x)?;
        let rec = &self.orbits[id];
        Some(OrbitInfo { rep: self.point(id, 0)?, size: rec.size, position: pos, class_index: rec.class })
    }

    fn point(&self, id: usize, pos: i64) -> Option<Point> {
        let rec = &self.orbits[id];
        let pos = match rec.size {
            OrbitSize::Finite(k) => pos.rem_euclid(k as i64),
            OrbitSize::Infinite => pos,
        };
        let idx = usize::try_from(pos - rec.front).ok()?;
        rec.points.get(idx).copied()
    }

    fn point_at(&self, size: OrbitSize, class: u64, pos: i64) -> Option<Point> {
        let &id = self.classes.get(&size)?.get(class as usize)?;
        self.point(id, pos)
    }
}

#[derive(Debug, Clone, Copy)]
enum Move {
    At(Point),
    Onto(Point),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Which {
    H,
    P,
}

/// Gadget `j`: blocks `n = 1, 2, …`, each planting cycles of sizes `1..=n`
/// in both graphs and then one line.
fn schedule(mut j: u64) -> (Which, OrbitSize) {
    let mut n = 1;
    loop {
        let block = 2 * n + 1;
        if j < block {
            return if j == 2 * n {
                (Which::H, OrbitSize::Infinite)
            } else {
                let which = if j % 2 == 0 { Which::H } else { Which::P };
                (which, OrbitSize::Finite(j / 2 + 1))
            };
        }
        j -= block;
        n += 1;
    }
}

struct State {
    f: Perm,
    h: Graph,
    p: Graph,
    dom_floor: Point,
    ran_floor: Point,
    iso_floor: Point,
    stage: u64,
    gadget: u64,
    cap: u64,
    stall: u64,
}

impl State {
    fn iso(&self, x: Point) -> bool {
        !self.h.next.contains_key(&x) && !self.h.prev.contains_key(&x)
    }

    fn dom(&self, x: Point) -> bool {
        self.h.next.contains_key(&x)
    }

    fn ran(&self, x: Point) -> bool {
        self.h.prev.contains_key(&x)
    }

    fn search(&mut self, mut ok: impl FnMut(&State, Point) -> Result<bool>) -> Result<Point> {
        while !self.iso(self.iso_floor) {
            self.iso_floor += 1;
        }
        let start = self.iso_floor;
        for x in start..start.saturating_add(self.stall) {
            if self.iso(x) && ok(self, x)? {
                return Ok(x);
            }
        }
        Err(Error::CaseStall { after: start, window: self.stall })
    }

    fn step(&mut self) -> Result<()> {
        if self.stage >= self.cap {
            return Err(Error::StageCap { cap: self.cap });
        }
        self.stage += 1;
        match self.stage % 3 {
            0 => self.serve_domain(),
            1 => self.serve_range(),
            _ => self.plant(),
        }
    }

    fn serve_domain(&mut self) -> Result<()> {
        while self.dom(self.dom_floor) {
            self.dom_floor += 1;
        }
        self.define_at(self.dom_floor)
    }

    fn serve_range(&mut self) -> Result<()> {
        while self.ran(self.ran_floor) {
            self.ran_floor += 1;
        }
        self.define_onto(self.ran_floor)
    }

    /// Sets `h(e)` to a fresh point; `e` must lie outside the domain.
    fn define_at(&mut self, e: Point) -> Result<()> {
        let a = self.f.backward(e)?;
        let z = self.search(|s, z| {
            let fz = s.f.forward(z)?;
            Ok(z != e && fz != e && !s.dom(fz))
        })?;
        self.h.add_edge(e, z);
        self.p.add_edge(a, z);
        Ok(())
    }

    /// Sets `h(w) = y` for a fresh `w`; `y` must lie outside the range.
    fn define_onto(&mut self, y: Point) -> Result<()> {
        let w = self.search(|s, w| {
            let a = s.f.backward(w)?;
            Ok(w != y && a != y && !s.ran(a))
        })?;
        let a = self.f.backward(w)?;
        self.h.add_edge(w, y);
        self.p.add_edge(a, y);
        Ok(())
    }

    fn apply(&mut self, m: Move) -> Result<()> {
        if self.stage >= self.cap {
            return Err(Error::StageCap { cap: self.cap });
        }
        self.stage += 1;
        match m {
            Move::At(e) => self.define_at(e),
            Move::Onto(y) => self.define_onto(y),
        }
    }

    /// The move that gives `x` its first edge in the given graph.
    fn touch(&self, which: Which, x: Point) -> Result<Move> {
        Ok(match which {
            Which::H => Move::At(x),
            Which::P => Move::At(self.f.forward(x)?),
        })
    }

    /// The move that lengthens an infinite orbit toward `pos`.
    fn reach(&self, which: Which, size: OrbitSize, class: u64, pos: i64) -> Result<Option<Move>> {
        if size != OrbitSize::Infinite {
            return Ok(None);
        }
        let g = self.graph(which);
        let Some(&id) = g.classes.get(&size).and_then(|c| c.get(class as usize)) else {
            return Ok(None);
        };
        let rec = &g.orbits[id];
        Ok(Some(if pos < rec.front {
            Move::Onto(*rec.points.front().unwrap())
        } else {
            let back = *rec.points.back().unwrap();
            match which {
                Which::H => Move::At(back),
                Which::P => Move::At(self.f.forward(back)?),
            }
        }))
    }

    fn plant(&mut self) -> Result<()> {
        let (which, size) = schedule(self.gadget);
        self.gadget += 1;
        match size {
            OrbitSize::Infinite => self.plant_line(),
            OrbitSize::Finite(k) => self.plant_cycle(which, k as usize),
        }
    }

    fn plant_line(&mut self) -> Result<()> {
        let u = self.search(|s, u| Ok(!s.ran(s.f.backward(u)?)))?;
        let a = self.f.backward(u)?;
        let v = self.search(|s, v| Ok(v != u && v != a && !s.dom(s.f.forward(v)?)))?;
        self.h.add_edge(u, v);
        self.p.add_edge(a, v);
        Ok(())
    }

    // Greedy pick of `k` candidates from a window above the isolation floor.
    fn pick(
        &mut self,
        k: usize,
        window: u64,
        cand: impl Fn(&State, Point) -> Result<Option<Vec<Point>>>,
    ) -> Result<Option<Vec<Point>>> {
        while !self.iso(self.iso_floor) {
            self.iso_floor += 1;
        }
        let mut used = std::collections::HashSet::new();
        let mut picked = Vec::new();
        for x in self.iso_floor..self.iso_floor.saturating_add(window) {
            if picked.len() == k {
                break;
            }
            if !self.iso(x) || used.contains(&x) {
                continue;
            }
            if let Some(touched) = cand(self, x)? {
                if touched.iter().all(|t| !used.contains(t)) {
                    used.extend(touched);
                    picked.push(x);
                }
            }
        }
        Ok((picked.len() == k).then_some(picked))
    }

    fn plant_cycle(&mut self, which: Which, k: usize) -> Result<()> {
        let mut window = FIRST_WINDOW.min(self.stall);
        loop {
            let spread = match which {
                // h-cycle on z's; p gains segments f⁻¹(z_i) ↦ z_{i+1}
                Which::H => self.pick(k, window, |s, z| {
                    let a = s.f.backward(z)?;
                    let fz = s.f.forward(z)?;
                    Ok((a != z && !s.ran(a) && !s.dom(fz)).then(|| vec![z, a]))
                })?,
                // p-cycle on x's; h gains segments f(x_i) ↦ x_{i+1}
                Which::P => self.pick(k, window, |s, x| {
                    let y = s.f.forward(x)?;
                    Ok((y != x && s.iso(y)).then(|| vec![x, y]))
                })?,
            };
            if let Some(pts) = spread {
                match which {
                    Which::H => {
                        self.h.add_cycle(&pts);
                        for i in 0..k {
                            let a = self.f.backward(pts[i])?;
                            self.p.add_edge(a, pts[(i + 1) % k]);
                        }
                    }
                    Which::P => {
                        self.p.add_cycle(&pts);
                        for i in 0..k {
                            let y = self.f.forward(pts[i])?;
                            self.h.add_edge(y, pts[(i + 1) % k]);
                        }
                    }
                }
                return Ok(());
            }
            // fixed points of f carry a cycle in both graphs at once
            let fixed = self.pick(k, window, |s, x| Ok((s.f.forward(x)? == x).then(|| vec![x])))?;
            if let Some(pts) = fixed {
                self.h.add_cycle(&pts);
                self.p.add_cycle(&pts);
                return Ok(());
            }
            if window >= self.stall {
                return Err(Error::CaseStall { after: self.iso_floor, window });
            }
            window = (window * 2).min(self.stall);
        }
    }

    fn graph(&self, which: Which) -> &Graph {
        match which {
            Which::H => &self.h,
            Which::P => &self.p,
        }
    }
}

struct Engine {
    state: Mutex<State>,
}

impl Engine {
    /// Runs the construction until `query` answers. Where `nudge` names a
    /// move that serves the query directly it is taken instead of a stage.
    fn run<T>(
        &self,
        query: impl Fn(&State) -> Option<T>,
        nudge: impl Fn(&State) -> Result<Option<Move>>,
    ) -> Result<T> {
        let mut st = self.state.lock();
        loop {
            if let Some(t) = query(&st) {
                return Ok(t);
            }
            match nudge(&st)? {
                Some(m) => st.apply(m)?,
                None => st.step()?,
            }
        }
    }
}

/// Exact orbits of `h` or `p` read off the construction; `negate` gives the inverse.
struct ManagedOracle {
    engine: Arc<Engine>,
    which: Which,
    negate: bool,
}

impl ManagedOracle {
    fn flip(&self, pos: i64) -> i64 {
        if self.negate {
            -pos
        } else {
            pos
        }
    }
}

impl OrbitOracle for ManagedOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        let info = self
            .engine
            .run(|s| s.graph(self.which).info(x), |s| s.touch(self.which, x).map(Some))?;
        let position = match info.size {
            OrbitSize::Finite(k) => self.flip(info.position).rem_euclid(k as i64),
            OrbitSize::Infinite => self.flip(info.position),
        };
        Ok(OrbitInfo { position, ..info })
    }

    fn point_at(&self, size: OrbitSize, class: u64, pos: i64) -> Result<Point> {
        let pos = self.flip(pos);
        self.engine.run(
            |s| s.graph(self.which).point_at(size, class, pos),
            |s| s.reach(self.which, size, class, pos),
        )
    }

    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Infinite, infinite_orbits: Count::Infinite }
    }
}

/// `f = p·q` with `p = f·h`, `q = h⁻¹`, both replete with exact oracles.
#[derive(Clone, Debug)]
pub struct InterleavedFactors {
    pub p: StructuredPerm,
    pub q: StructuredPerm,
    pub h: Perm,
}

pub fn interleaved_factor(f: &Perm, params: &Params) -> InterleavedFactors {
    let state = State {
        f: f.clone(),
        h: Graph::default(),
        p: Graph::default(),
        dom_floor: 0,
        ran_floor: 0,
        iso_floor: 0,
        stage: 0,
        gadget: 0,
        cap: params.stage_cap,
        stall: params.stall_bound,
    };
    let engine = Arc::new(Engine { state: Mutex::new(state) });
    let (e1, e2) = (Arc::clone(&engine), Arc::clone(&engine));
    let h = Perm::from_fns(
        format!("h[{}]", f.label()),
        move |x| e1.run(|s| s.h.next.get(&x).copied(), |_| Ok(Some(Move::At(x)))),
        move |y| e2.run(|s| s.h.prev.get(&y).copied(), |_| Ok(Some(Move::Onto(y)))),
    );
    let p = crate::perm::compose(f, &h);
    let p_oracle = ManagedOracle { engine: Arc::clone(&engine), which: Which::P, negate: false };
    let q_oracle = ManagedOracle { engine, which: Which::H, negate: true };
    InterleavedFactors {
        p: StructuredPerm::new(p, Arc::new(p_oracle)),
        q: StructuredPerm::new(h.inverse(), Arc::new(q_oracle)),
        h,
    }
}
