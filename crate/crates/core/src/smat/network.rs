//! Evaluation of closed planar trivalent networks in progressive (tree-pair) form.
//!
//! A network is a list of labeled edges and trivalent vertices. A `Split` vertex has one
//! incoming edge below and two outgoing edges above; a `Fuse` vertex is its adjoint. Every
//! edge is produced by exactly one vertex and consumed by exactly one vertex, or by none, in
//! which case it is a free loop. A closed diagram is the trace of a fusion tree stacked on a
//! splitting tree: the root edge runs from the top `Fuse` around to the bottom `Split`.

use crate::braided::CategoryData;
use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex {
    /// `input -> left (x) right`
    Split {
        input: usize,
        left: usize,
        right: usize,
    },
    /// `left (x) right -> output`
    Fuse {
        left: usize,
        right: usize,
        output: usize,
    },
}

impl Vertex {
    fn produced(&self) -> [Option<usize>; 2] {
        match *self {
            Vertex::Split { left, right, .. } => [Some(left), Some(right)],
            Vertex::Fuse { output, .. } => [Some(output), None],
        }
    }

    fn consumed(&self) -> [Option<usize>; 2] {
        match *self {
            Vertex::Split { input, .. } => [Some(input), None],
            Vertex::Fuse { left, right, .. } => [Some(left), Some(right)],
        }
    }

    fn replace(&mut self, from: usize, to: usize) {
        let swap = |x: &mut usize| {
            if *x == from {
                *x = to;
            }
        };
        match self {
            Vertex::Split { input, left, right } => {
                swap(input);
                swap(left);
                swap(right);
            }
            Vertex::Fuse {
                left,
                right,
                output,
            } => {
                swap(left);
                swap(right);
                swap(output);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    pub labels: Vec<usize>,
    pub vertices: Vec<Vertex>,
}

impl Network {
    pub fn new(labels: Vec<usize>, vertices: Vec<Vertex>) -> Self {
        Network { labels, vertices }
    }

    /// A single unknotted loop labeled `a`.
    pub fn circle(a: usize) -> Self {
        Network::new(vec![a], Vec::new())
    }

    /// The theta graph: `c` splits into `a, b` which fuse back to `c`.
    pub fn theta(a: usize, b: usize, c: usize) -> Self {
        Network::new(
            vec![a, b, c],
            vec![
                Vertex::Split {
                    input: 2,
                    left: 0,
                    right: 1,
                },
                Vertex::Fuse {
                    left: 0,
                    right: 1,
                    output: 2,
                },
            ],
        )
    }

    /// Closed tetrahedral network pairing the splitting tree `((b x)_a abar)_c` with the fusion
    /// tree `(b (x abar)_bbar)_c`. Edge ids: 0=c, 1=a, 2=abar, 3=b, 4=x, 5=bbar.
    pub fn tetrahedral(data: &CategoryData, a: usize, b: usize, x: usize, c: usize) -> Self {
        let ring = data.ring();
        Network::new(
            vec![c, a, ring.dual(a), b, x, ring.dual(b)],
            vec![
                Vertex::Split {
                    input: 0,
                    left: 1,
                    right: 2,
                },
                Vertex::Split {
                    input: 1,
                    left: 3,
                    right: 4,
                },
                Vertex::Fuse {
                    left: 4,
                    right: 2,
                    output: 5,
                },
                Vertex::Fuse {
                    left: 3,
                    right: 5,
                    output: 0,
                },
            ],
        )
    }
}

#[derive(Clone)]
struct State {
    labels: Vec<usize>,
    alive: Vec<bool>,
    vertices: Vec<Option<Vertex>>,
    producer: Vec<Option<usize>>,
    consumer: Vec<Option<usize>>,
}

impl State {
    fn build(net: &Network) -> Result<Self> {
        let e = net.labels.len();
        let mut producer = vec![None; e];
        let mut consumer = vec![None; e];
        for (i, v) in net.vertices.iter().enumerate() {
            for p in v.produced().into_iter().flatten() {
                let slot = producer
                    .get_mut(p)
                    .ok_or_else(|| Error::Structural(format!("edge {p} out of range")))?;
                if slot.replace(i).is_some() {
                    return Err(Error::Structural(format!("edge {p} produced twice")));
                }
            }
            for c in v.consumed().into_iter().flatten() {
                let slot = consumer
                    .get_mut(c)
                    .ok_or_else(|| Error::Structural(format!("edge {c} out of range")))?;
                if slot.replace(i).is_some() {
                    return Err(Error::Structural(format!("edge {c} consumed twice")));
                }
            }
        }
        for k in 0..e {
            if producer[k].is_some() != consumer[k].is_some() {
                return Err(Error::Structural(format!("edge {k} has a dangling end")));
            }
        }
        Ok(State {
            labels: net.labels.clone(),
            alive: vec![true; e],
            vertices: net.vertices.iter().copied().map(Some).collect(),
            producer,
            consumer,
        })
    }

    fn vertex(&self, i: usize) -> Vertex {
        self.vertices[i].expect("live vertex")
    }

    fn set_vertex(&mut self, i: usize, v: Vertex) {
        self.vertices[i] = Some(v);
        for p in v.produced().into_iter().flatten() {
            self.producer[p] = Some(i);
        }
        for c in v.consumed().into_iter().flatten() {
            self.consumer[c] = Some(i);
        }
    }
}

enum Move {
    Bigon { split: usize, fuse: usize },
    /// Split `outer (d -> e, c)` over split `inner (e -> a, b)`; `e` is the shared edge.
    SplitLeftToRight { outer: usize, inner: usize, edge: usize },
    /// Split `outer (d -> a, f)` over split `inner (f -> b, c)`.
    SplitRightToLeft { outer: usize, inner: usize, edge: usize },
    /// Fuse `inner (a, b -> e)` feeding fuse `outer (e, c -> d)`.
    FuseLeftToRight { outer: usize, inner: usize, edge: usize },
    /// Fuse `inner (b, c -> f)` feeding fuse `outer (a, f -> d)`.
    FuseRightToLeft { outer: usize, inner: usize, edge: usize },
}

struct Evaluator<'a> {
    data: &'a CategoryData,
    budget: usize,
}

/// Evaluate a closed planar network. Loops give `d_a`, a bigon collapses with factor
/// `sqrt(d_l d_r / d_c)`, and everything else is reduced by F-moves.
pub fn eval_planar_network(data: &CategoryData, net: &Network) -> Result<C64> {
    let ring = data.ring();
    for &l in &net.labels {
        if l >= ring.rank() {
            return Err(Error::Structural(format!("edge label {l} out of range")));
        }
    }
    for (i, v) in net.vertices.iter().enumerate() {
        let ok = match *v {
            Vertex::Split { input, left, right } => {
                ring.n(net.labels[left], net.labels[right], net.labels[input])
            }
            Vertex::Fuse {
                left,
                right,
                output,
            } => ring.n(net.labels[left], net.labels[right], net.labels[output]),
        };
        if !ok {
            return Err(Error::InadmissibleVertex(i));
        }
    }
    let state = State::build(net)?;
    let e = net.labels.len().max(1);
    let ev = Evaluator {
        data,
        budget: e * e,
    };
    ev.eval(state, 0)
}

impl Evaluator<'_> {
    fn eval(&self, mut s: State, depth: usize) -> Result<C64> {
        let ring = self.data.ring();
        if depth > self.budget {
            return Err(Error::NonTermination(self.budget));
        }
        if s.vertices.iter().all(Option::is_none) {
            let mut v = C64::new(1.0, 0.0);
            for (k, &alive) in s.alive.iter().enumerate() {
                if alive {
                    v *= ring.d(s.labels[k]);
                }
            }
            return Ok(v);
        }
        match self.pick(&s)? {
            Move::Bigon { split, fuse } => {
                let Vertex::Split { input, left, right } = s.vertex(split) else {
                    unreachable!()
                };
                let Vertex::Fuse { output, .. } = s.vertex(fuse) else {
                    unreachable!()
                };
                if s.labels[input] != s.labels[output] {
                    return Ok(C64::new(0.0, 0.0));
                }
                let (dl, dr, dc) = (
                    ring.d(s.labels[left]),
                    ring.d(s.labels[right]),
                    ring.d(s.labels[input]),
                );
                let factor = (dl * dr / dc).sqrt();
                s.vertices[split] = None;
                s.vertices[fuse] = None;
                for k in [left, right] {
                    s.alive[k] = false;
                    s.producer[k] = None;
                    s.consumer[k] = None;
                }
                if input == output {
                    s.producer[input] = None;
                    s.consumer[input] = None;
                } else {
                    let next = s.consumer[output].expect("closed edge");
                    let mut v = s.vertex(next);
                    v.replace(output, input);
                    s.alive[output] = false;
                    s.producer[output] = None;
                    s.consumer[output] = None;
                    s.set_vertex(next, v);
                }
                Ok(self.eval(s, depth + 1)? * factor)
            }
            mv => self.f_move(s, mv, depth),
        }
    }

    fn f_move(&self, s: State, mv: Move, depth: usize) -> Result<C64> {
        let ring = self.data.ring();
        let mut total = C64::new(0.0, 0.0);
        match mv {
            Move::SplitLeftToRight { outer, inner, edge } => {
                let Vertex::Split { input: d, right: c, .. } = s.vertex(outer) else {
                    unreachable!()
                };
                let Vertex::Split { left: a, right: b, .. } = s.vertex(inner) else {
                    unreachable!()
                };
                let (la, lb, lc, ld, le) =
                    (s.labels[a], s.labels[b], s.labels[c], s.labels[d], s.labels[edge]);
                for &lf in ring.fuse(lb, lc) {
                    if !ring.n(la, lf, ld) {
                        continue;
                    }
                    let coef = self.data.f(la, lb, lc, ld, le, lf);
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let mut t = s.clone();
                    t.labels[edge] = lf;
                    t.set_vertex(outer, Vertex::Split { input: d, left: a, right: edge });
                    t.set_vertex(inner, Vertex::Split { input: edge, left: b, right: c });
                    total += coef * self.eval(t, depth + 1)?;
                }
            }
            Move::SplitRightToLeft { outer, inner, edge } => {
                let Vertex::Split { input: d, left: a, .. } = s.vertex(outer) else {
                    unreachable!()
                };
                let Vertex::Split { left: b, right: c, .. } = s.vertex(inner) else {
                    unreachable!()
                };
                let (la, lb, lc, ld, lf) =
                    (s.labels[a], s.labels[b], s.labels[c], s.labels[d], s.labels[edge]);
                for &le in ring.fuse(la, lb) {
                    if !ring.n(le, lc, ld) {
                        continue;
                    }
                    let coef = self.data.f(la, lb, lc, ld, le, lf).conj();
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let mut t = s.clone();
                    t.labels[edge] = le;
                    t.set_vertex(outer, Vertex::Split { input: d, left: edge, right: c });
                    t.set_vertex(inner, Vertex::Split { input: edge, left: a, right: b });
                    total += coef * self.eval(t, depth + 1)?;
                }
            }
            Move::FuseLeftToRight { outer, inner, edge } => {
                let Vertex::Fuse { right: c, output: d, .. } = s.vertex(outer) else {
                    unreachable!()
                };
                let Vertex::Fuse { left: a, right: b, .. } = s.vertex(inner) else {
                    unreachable!()
                };
                let (la, lb, lc, ld, le) =
                    (s.labels[a], s.labels[b], s.labels[c], s.labels[d], s.labels[edge]);
                for &lf in ring.fuse(lb, lc) {
                    if !ring.n(la, lf, ld) {
                        continue;
                    }
                    let coef = self.data.f(la, lb, lc, ld, le, lf).conj();
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let mut t = s.clone();
                    t.labels[edge] = lf;
                    t.set_vertex(inner, Vertex::Fuse { left: b, right: c, output: edge });
                    t.set_vertex(outer, Vertex::Fuse { left: a, right: edge, output: d });
                    total += coef * self.eval(t, depth + 1)?;
                }
            }
            Move::FuseRightToLeft { outer, inner, edge } => {
                let Vertex::Fuse { left: a, output: d, .. } = s.vertex(outer) else {
                    unreachable!()
                };
                let Vertex::Fuse { left: b, right: c, .. } = s.vertex(inner) else {
                    unreachable!()
                };
                let (la, lb, lc, ld, lf) =
                    (s.labels[a], s.labels[b], s.labels[c], s.labels[d], s.labels[edge]);
                for &le in ring.fuse(la, lb) {
                    if !ring.n(le, lc, ld) {
                        continue;
                    }
                    let coef = self.data.f(la, lb, lc, ld, le, lf);
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let mut t = s.clone();
                    t.labels[edge] = le;
                    t.set_vertex(inner, Vertex::Fuse { left: a, right: b, output: edge });
                    t.set_vertex(outer, Vertex::Fuse { left: edge, right: c, output: d });
                    total += coef * self.eval(t, depth + 1)?;
                }
            }
            Move::Bigon { .. } => unreachable!(),
        }
        Ok(total)
    }

    /// Deterministic move choice: bigons, then bigon-creating F-moves by lowest edge id, then
    /// rotations towards left combs (splitting trees first).
    fn pick(&self, s: &State) -> Result<Move> {
        for (i, v) in s.vertices.iter().enumerate() {
            if let Some(Vertex::Split { left, right, .. }) = *v {
                let (Some(fl), Some(fr)) = (s.consumer[left], s.consumer[right]) else {
                    continue;
                };
                if fl != fr {
                    continue;
                }
                if let Vertex::Fuse { left: l2, right: r2, .. } = s.vertex(fl) {
                    if l2 == left && r2 == right {
                        return Ok(Move::Bigon { split: i, fuse: fl });
                    }
                    return Err(Error::NonPlanar(format!(
                        "edges {left} and {right} cross between vertices {i} and {fl}"
                    )));
                }
            }
        }

        let mut rotations = Vec::new();
        for edge in 0..s.labels.len() {
            if !s.alive[edge] {
                continue;
            }
            let (Some(p), Some(c)) = (s.producer[edge], s.consumer[edge]) else {
                continue;
            };
            match (s.vertex(p), s.vertex(c)) {
                // p produces `edge`, c consumes it: both splits means c sits above p.
                (Vertex::Split { left, right, .. }, Vertex::Split { left: a, right: b, .. }) => {
                    if left == edge {
                        // outer p: d -> (e, right), inner c: e -> (a, b); new inner: f -> (b, right)
                        if self.fuses_pair(s, b, right) {
                            return Ok(Move::SplitLeftToRight { outer: p, inner: c, edge });
                        }
                    } else {
                        // outer p: d -> (left, f), inner c: f -> (a, b); new inner: e -> (left, a)
                        if self.fuses_pair(s, left, a) {
                            return Ok(Move::SplitRightToLeft { outer: p, inner: c, edge });
                        }
                        rotations.push((0, Move::SplitRightToLeft { outer: p, inner: c, edge }));
                    }
                }
                (Vertex::Fuse { left: a, right: b, .. }, Vertex::Fuse { left, right, .. }) => {
                    if left == edge {
                        // inner p: (a, b) -> e, outer c: (e, right) -> d; new inner: (b, right) -> f
                        if self.splits_pair(s, b, right) {
                            return Ok(Move::FuseLeftToRight { outer: c, inner: p, edge });
                        }
                    } else {
                        // inner p: (a, b) -> f, outer c: (left, f) -> d; new inner: (left, a) -> e
                        if self.splits_pair(s, left, a) {
                            return Ok(Move::FuseRightToLeft { outer: c, inner: p, edge });
                        }
                        rotations.push((1, Move::FuseRightToLeft { outer: c, inner: p, edge }));
                    }
                }
                _ => {}
            }
        }
        if let Some(pos) = rotations.iter().position(|(k, _)| *k == 0) {
            return Ok(rotations.swap_remove(pos).1);
        }
        if let Some((_, mv)) = rotations.into_iter().next() {
            return Ok(mv);
        }
        Err(Error::NotStandardForm(
            "no bigon or F-move applies to the remaining vertices".into(),
        ))
    }

    /// Would a new split with outputs `(l, r)` form a bigon with an existing fuse?
    fn fuses_pair(&self, s: &State, l: usize, r: usize) -> bool {
        match (s.consumer[l], s.consumer[r]) {
            (Some(x), Some(y)) if x == y => {
                matches!(s.vertex(x), Vertex::Fuse { left, right, .. } if left == l && right == r)
            }
            _ => false,
        }
    }

    /// Would a new fuse with inputs `(l, r)` form a bigon with an existing split?
    fn splits_pair(&self, s: &State, l: usize, r: usize) -> bool {
        match (s.producer[l], s.producer[r]) {
            (Some(x), Some(y)) if x == y => {
                matches!(s.vertex(x), Vertex::Split { left, right, .. } if left == l && right == r)
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::cdist;
    use crate::catalog::{gen_named, gen_pointed_cyclic};

    #[test]
    fn loop_gives_dimension() {
        let c = gen_named("fibonacci").unwrap();
        let v = eval_planar_network(&c, &Network::circle(1)).unwrap();
        assert!(cdist(v, C64::new(c.ring().d(1), 0.0)) < 1e-15);
    }

    #[test]
    fn theta_graph() {
        let c = gen_named("ising").unwrap();
        let r = c.ring();
        for a in 0..3 {
            for b in 0..3 {
                for &cc in r.fuse(a, b) {
                    let v = eval_planar_network(&c, &Network::theta(a, b, cc)).unwrap();
                    let want = (r.d(a) * r.d(b) * r.d(cc)).sqrt();
                    assert!(cdist(v, C64::new(want, 0.0)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn trivial_tetrahedron() {
        let c = gen_pointed_cyclic(3, 1.0).unwrap();
        let v = eval_planar_network(&c, &Network::tetrahedral(&c, 0, 0, 0, 0)).unwrap();
        assert!(cdist(v, C64::new(1.0, 0.0)) < 1e-15);
    }

    // The tetrahedral network reduces to one F-symbol times sqrt(d_x d_a d_b d_c).
    #[test]
    fn tetrahedron_matches_f_symbol() {
        let c = gen_named("fibonacci").unwrap();
        let r = c.ring();
        for a in 0..2 {
            for b in 0..2 {
                for x in r.fuse(a, r.dual(b)).to_vec() {
                    for cc in r.fuse(a, r.dual(a)).to_vec() {
                        if !r.n(b, r.dual(b), cc) {
                            continue;
                        }
                        let v = eval_planar_network(&c, &Network::tetrahedral(&c, a, b, x, cc)).unwrap();
                        let f = c.f(b, x, r.dual(a), cc, a, r.dual(b));
                        let want = f * (r.d(x) * r.d(a) * r.d(b) * r.d(cc)).sqrt();
                        assert!(cdist(v, want) < 1e-12, "{a}{b}{x}{cc}: {v} vs {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn edge_produced_twice_rejected() {
        let c = gen_named("fibonacci").unwrap();
        let net = Network::new(
            vec![1, 1, 1, 0, 1],
            vec![
                Vertex::Split { input: 0, left: 1, right: 2 },
                Vertex::Fuse { left: 1, right: 2, output: 3 },
                Vertex::Split { input: 3, left: 4, right: 4 },
            ],
        );
        assert!(matches!(eval_planar_network(&c, &net), Err(Error::Structural(_))));
    }

    #[test]
    fn crossed_bigon_is_non_planar() {
        let c = gen_named("ising").unwrap();
        let net = Network::new(
            vec![1, 2, 1],
            vec![
                Vertex::Split { input: 2, left: 0, right: 1 },
                Vertex::Fuse { left: 1, right: 0, output: 2 },
            ],
        );
        assert!(matches!(eval_planar_network(&c, &net), Err(Error::NonPlanar(_))));
    }

    #[test]
    fn inadmissible_vertex() {
        let c = gen_named("ising").unwrap();
        let net = Network::theta(1, 1, 1);
        assert!(matches!(eval_planar_network(&c, &net), Err(Error::InadmissibleVertex(0))));
    }

    #[test]
    fn fuse_then_split_is_not_standard_form() {
        let c = gen_named("fibonacci").unwrap();
        // Two bigons glued through an I-shape: t t -> t -> t t, closed by two root arcs.
        let net = Network::new(
            vec![1, 1, 1, 1, 1],
            vec![
                Vertex::Fuse { left: 0, right: 1, output: 2 },
                Vertex::Split { input: 2, left: 3, right: 4 },
                Vertex::Split { input: 3, left: 0, right: 1 },
            ],
        );
        assert!(eval_planar_network(&c, &net).is_err());
    }

    fn three_leaf_pair(left_split: bool, left_fuse: bool, l: [usize; 6]) -> Network {
        // edges: 0=d, 1=a, 2=b, 3=c, 4=split internal, 5=fuse internal
        let split = if left_split {
            [
                Vertex::Split { input: 0, left: 4, right: 3 },
                Vertex::Split { input: 4, left: 1, right: 2 },
            ]
        } else {
            [
                Vertex::Split { input: 0, left: 1, right: 4 },
                Vertex::Split { input: 4, left: 2, right: 3 },
            ]
        };
        let fuse = if left_fuse {
            [
                Vertex::Fuse { left: 1, right: 2, output: 5 },
                Vertex::Fuse { left: 5, right: 3, output: 0 },
            ]
        } else {
            [
                Vertex::Fuse { left: 2, right: 3, output: 5 },
                Vertex::Fuse { left: 1, right: 5, output: 0 },
            ]
        };
        Network::new(l.to_vec(), split.into_iter().chain(fuse).collect())
    }

    // Inner products of three-leaf tree bases, in a gauge where F is genuinely complex.
    #[test]
    fn three_leaf_tree_pairs() {
        let base = gen_named("ising").unwrap();
        let c = base
            .gauge_transformed(|a, b, x| {
                if a == 0 || b == 0 {
                    C64::new(1.0, 0.0)
                } else {
                    C64::from_polar(1.0, 0.4 * a as f64 - 0.9 * b as f64 + 0.25 * x as f64)
                }
            })
            .unwrap();
        let r = c.ring();
        let rk = r.rank();
        let mut checked = 0;
        for a in 0..rk {
            for b in 0..rk {
                for cc in 0..rk {
                    for d in 0..rk {
                        let es: Vec<usize> = r.fuse(a, b).iter().copied().filter(|&e| r.n(e, cc, d)).collect();
                        let fs: Vec<usize> = r.fuse(b, cc).iter().copied().filter(|&f| r.n(a, f, d)).collect();
                        let norm = (r.d(a) * r.d(b) * r.d(cc) * r.d(d)).sqrt();
                        for &e in &es {
                            for &f in &fs {
                                let fv = c.f(a, b, cc, d, e, f);
                                let lr = eval_planar_network(&c, &three_leaf_pair(true, false, [d, a, b, cc, e, f])).unwrap();
                                assert!(cdist(lr, fv * norm) < 1e-12);
                                let rl = eval_planar_network(&c, &three_leaf_pair(false, true, [d, a, b, cc, f, e])).unwrap();
                                assert!(cdist(rl, fv.conj() * norm) < 1e-12);
                                checked += 1;
                            }
                            for &e2 in &es {
                                let ll = eval_planar_network(&c, &three_leaf_pair(true, true, [d, a, b, cc, e, e2])).unwrap();
                                let want = if e == e2 { norm } else { 0.0 };
                                assert!(cdist(ll, C64::new(want, 0.0)) < 1e-12);
                            }
                        }
                        for &f in &fs {
                            for &f2 in &fs {
                                let rr = eval_planar_network(&c, &three_leaf_pair(false, false, [d, a, b, cc, f, f2])).unwrap();
                                let want = if f == f2 { norm } else { 0.0 };
                                assert!(cdist(rr, C64::new(want, 0.0)) < 1e-12);
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 20);
    }
}
