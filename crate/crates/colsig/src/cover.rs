//! The finite abelian branched cover of the punctured disk as a fat graph.
//!
//! The disk with n punctures retracts onto a rose with one loop per
//! puncture. Its G-cover has one vertex per group element and an edge
//! (g, j) from g to g·τ_j, where τ_j = t_{|c_j|}^{sgn c_j}. Branch classes
//! are never quotiented explicitly: the eigenspace projector kills them.
//!
//! The braid action uses the same row convention as [`crate::gassner`], and
//! is exported transposed, so `braid_action` matches `reduced_burau`.

use std::collections::VecDeque;

use crate::algebra::{CMat, Complex, Real, TorusPoint};
use crate::braid::{BraidWord, Coloring};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::gassner::check_evaluable;
use crate::linalg::{rank, solve_consistent};

/// Integer chain on the edges of a cover, indexed by `g·n + j`.
type Chain = Vec<i64>;

#[derive(Debug, Clone)]
pub struct FatGraphCover {
    coloring: Coloring,
    point: TorusPoint,
    /// k_i for occurring colors, 1 otherwise.
    orders: Vec<u64>,
    size: usize,
    /// `step[g][j]` = g·τ_j, `back[g][j]` = g·τ_j⁻¹.
    step: Vec<Vec<usize>>,
    back: Vec<Vec<usize>>,
    cycles: Vec<Chain>,
}

fn group_orders(c: &Coloring, w: &TorusPoint) -> Vec<u64> {
    let k = w.orders();
    let occ = c.occurring();
    (1..=c.mu()).map(|i| if occ.contains(&i) { k.get(i - 1).copied().unwrap_or(1) } else { 1 }).collect()
}

fn digits(mut g: usize, orders: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .map(|&k| {
            let d = g as u64 % k;
            g /= k as usize;
            d
        })
        .collect()
}

fn undigits(d: &[u64], orders: &[u64]) -> usize {
    d.iter().zip(orders).rev().fold(0usize, |acc, (&x, &k)| acc * k as usize + x as usize)
}

/// g multiplied by t_color^e.
fn translate(g: usize, color: usize, e: i64, orders: &[u64]) -> usize {
    let mut d = digits(g, orders);
    let k = orders[color - 1] as i64;
    d[color - 1] = (d[color - 1] as i64 + e).rem_euclid(k) as u64;
    undigits(&d, orders)
}

pub fn build_cover(c: &Coloring, w: &TorusPoint) -> Result<FatGraphCover> {
    if w.num_vars() != c.mu() {
        return Err(Error::VarMismatch(c.mu(), w.num_vars()));
    }
    let orders = group_orders(c, w);
    let size = orders.iter().product::<u64>() as usize;
    let n = c.len();
    let step: Vec<Vec<usize>> =
        (0..size).map(|g| (0..n).map(|j| translate(g, c.color(j), c.sign(j) as i64, &orders)).collect()).collect();
    let back: Vec<Vec<usize>> =
        (0..size).map(|g| (0..n).map(|j| translate(g, c.color(j), -(c.sign(j) as i64), &orders)).collect()).collect();
    let mut cov = FatGraphCover { coloring: c.clone(), point: w.clone(), orders, size, step, back, cycles: Vec::new() };
    cov.cycles = cov.tree_cycles();
    Ok(cov)
}

impl FatGraphCover {
    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn point(&self) -> &TorusPoint {
        &self.point
    }

    pub fn group_order(&self) -> usize {
        self.size
    }

    pub fn vertex_count(&self) -> usize {
        self.size
    }

    pub fn edge_count(&self) -> usize {
        self.size * self.coloring.len()
    }

    fn n(&self) -> usize {
        self.coloring.len()
    }

    fn edge(&self, g: usize, j: usize) -> usize {
        g * self.n() + j
    }

    /// Cycle basis from a BFS spanning forest: one cycle per non-tree edge.
    fn tree_cycles(&self) -> Vec<Chain> {
        let n = self.n();
        let e = self.edge_count();
        // parent edge (index, +1 if traversed forward to reach the vertex)
        let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; self.size];
        let mut seen = vec![false; self.size];
        let mut tree = vec![false; e];
        for root in 0..self.size {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for j in 0..n {
                    for (u, id, dir) in [(self.step[v][j], self.edge(v, j), 1), (self.back[v][j], self.edge(self.back[v][j], j), -1)] {
                        if !seen[u] {
                            seen[u] = true;
                            tree[id] = true;
                            parent[u] = Some((v, id, dir));
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        // chain of the tree path from the root to v
        let path = |mut v: usize| {
            let mut ch = vec![0i64; e];
            while let Some((p, id, dir)) = parent[v] {
                ch[id] += dir;
                v = p;
            }
            ch
        };
        let mut out = Vec::new();
        for g in 0..self.size {
            for j in 0..n {
                let id = self.edge(g, j);
                if tree[id] {
                    continue;
                }
                let mut ch = path(g);
                ch[id] += 1;
                for (a, b) in ch.iter_mut().zip(path(self.step[g][j])) {
                    *a -= b;
                }
                out.push(ch);
            }
        }
        out
    }

    /// Rank of H₁ of the graph, E − V + (number of components).
    pub fn graph_h1_rank(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_basis(&self) -> &[Vec<i64>] {
        &self.cycles
    }

    /// Boundary of a chain as a vertex chain.
    pub fn boundary(&self, ch: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.size];
        for g in 0..self.size {
            for j in 0..self.n() {
                let a = ch[self.edge(g, j)];
                out[self.step[g][j]] += a;
                out[g] -= a;
            }
        }
        out
    }

    // Darts: 2·edge for the start, 2·edge+1 for the end. At a vertex v the
    // cyclic order is out_1, in_1, …, out_n, in_n, where in_j(v) ends the
    // edge (v·τ_j⁻¹, j).
    fn dart_at(&self, v: usize, slot: usize) -> usize {
        let j = slot / 2;
        if slot % 2 == 0 {
            2 * self.edge(v, j)
        } else {
            2 * self.edge(self.back[v][j], j) + 1
        }
    }

    fn rotate(&self, d: usize) -> usize {
        let n = self.n();
        let (id, end) = (d / 2, d % 2);
        let (g, j) = (id / n, id % n);
        let (v, slot) = if end == 0 { (g, 2 * j) } else { (self.step[g][j], 2 * j + 1) };
        self.dart_at(v, (slot + 1) % (2 * n))
    }

    /// Boundary components of the thickened graph, as orbits of σ∘α. The
    /// flag is true for lifts of the outer boundary of the disk.
    pub fn faces(&self) -> Vec<(usize, bool)> {
        let darts = 2 * self.edge_count();
        let mut seen = vec![false; darts];
        let mut out = Vec::new();
        for d0 in 0..darts {
            if seen[d0] {
                continue;
            }
            let mut len = 0;
            let mut d = d0;
            while !seen[d] {
                seen[d] = true;
                len += 1;
                d = self.rotate(d ^ 1);
            }
            out.push((len, d0 % 2 == 0));
        }
        out
    }

    pub fn outer_boundary_count(&self) -> usize {
        self.faces().iter().filter(|f| f.1).count()
    }

    /// Prediction from the deck group: |G| / ord(Π_j τ_j).
    pub fn predicted_outer_boundary_count(&self) -> usize {
        let ell = self.coloring.ell();
        let ord: u64 = self
            .orders
            .iter()
            .zip(&ell)
            .map(|(&k, &l)| k / num_integer::gcd(l.unsigned_abs(), k).max(1))
            .fold(1, num_integer::lcm);
        self.size / ord as usize
    }

    fn chi(&self, prec: usize) -> Vec<Complex> {
        let rot = self.point.rotations();
        (0..self.size)
            .map(|g| {
                let d = digits(g, &self.orders);
                let mut acc = Complex::one(prec);
                for (i, &x) in d.iter().enumerate() {
                    if x != 0 {
                        let (a, b) = rot[i];
                        acc = &acc * &Complex::root_of_unity((a * x) as i64, b, prec);
                    }
                }
                acc
            })
            .collect()
    }

    /// c_χ = (1/|G|) Σ_h χ̄(h)·h on an edge chain.
    pub fn project(&self, v: &[Complex], ctx: &Ctx) -> Vec<Complex> {
        let prec = ctx.bits;
        let chi = self.chi(prec);
        let n = self.n();
        let inv = Real::one(prec) / Real::from_i64(self.size as i64, prec);
        let mut out = vec![Complex::zero(prec); v.len()];
        for h in 0..self.size {
            let x = chi[h].conj().scale(&inv);
            let hd = digits(h, &self.orders);
            for g in 0..self.size {
                let gd = digits(g, &self.orders);
                let sum: Vec<u64> = hd.iter().zip(&gd).zip(&self.orders).map(|((a, b), k)| (a + b) % k).collect();
                let hg = undigits(&sum, &self.orders);
                for j in 0..n {
                    let a = &v[self.edge(g, j)];
                    if !a.is_zero() {
                        out[self.edge(hg, j)] += &(&x * a);
                    }
                }
            }
        }
        out
    }

    /// Deck translation of a chain by t_color.
    fn deck(&self, ch: &[i64], color: usize) -> Chain {
        let mut out = vec![0; ch.len()];
        for g in 0..self.size {
            let h = translate(g, color, 1, &self.orders);
            for j in 0..self.n() {
                out[self.edge(h, j)] += ch[self.edge(g, j)];
            }
        }
        out
    }

    /// Lift of ŷ_j: ẽ_j for positive strands, −t·ẽ_j for negative ones.
    fn yhat(&self, j: usize) -> Chain {
        let mut ch = vec![0; self.edge_count()];
        if self.coloring.sign(j) > 0 {
            ch[self.edge(0, j)] = 1;
        } else {
            ch[self.edge(self.back[0][j], j)] = -1;
        }
        ch
    }

    /// Integral cycles lifting the reduced basis vectors w_1, …, w_{n−1}.
    pub fn lifted_basis(&self) -> Vec<Vec<i64>> {
        let c = &self.coloring;
        (0..c.len().saturating_sub(1))
            .map(|j| {
                let (y0, y1) = (self.yhat(j), self.yhat(j + 1));
                if c.color(j) == c.color(j + 1) {
                    y0.iter().zip(&y1).map(|(a, b)| a - b).collect()
                } else {
                    let t0 = self.deck(&y0, c.color(j + 1));
                    let t1 = self.deck(&y1, c.color(j));
                    (0..y0.len()).map(|k| (y0[k] - t0[k]) - (y1[k] - t1[k])).collect()
                }
            })
            .collect()
    }

    /// Intersection pairing of two edge cycles, linear in x and conjugate
    /// linear in y. At each vertex y is pushed off x so that its outgoing
    /// ends sit just after the matching ends of x and its incoming ends just
    /// before.
    pub fn intersection(&self, x: &[Complex], y: &[Complex], prec: usize) -> Complex {
        let n = self.n();
        let mut total = Complex::zero(prec);
        let flows = |z: &[Complex], v: usize| -> Vec<Complex> {
            (0..2 * n)
                .map(|slot| {
                    let j = slot / 2;
                    if slot % 2 == 0 {
                        z[self.edge(v, j)].clone()
                    } else {
                        -&z[self.edge(self.back[v][j], j)]
                    }
                })
                .collect()
        };
        for v in 0..self.size {
            let fx = flows(x, v);
            let fy: Vec<Complex> = flows(y, v).iter().map(Complex::conj).collect();
            for (p, a) in fx.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (q, b) in fy.iter().enumerate() {
                    let pb = if q % 2 == 0 { 2 * q + 1 } else { 2 * q - 1 };
                    if 2 * p < pb && !b.is_zero() {
                        total += &(a * b);
                    }
                }
            }
        }
        total
    }
}

#[derive(Debug, Clone)]
pub struct EigenSpaceData {
    pub dim: usize,
    /// Columns are eigen-cycles in edge coordinates.
    pub basis: CMat,
    pub form: CMat,
}

fn to_complex(ch: &[i64], prec: usize) -> Vec<Complex> {
    ch.iter().map(|&a| Complex::from_i64(a, prec)).collect()
}

/// Rank of c_χ applied to the graph cycle basis.
pub fn eigenspace_dim(cov: &FatGraphCover, ctx: &Ctx) -> Result<usize> {
    let cols: Vec<Vec<Complex>> = cov.cycles.iter().map(|z| cov.project(&to_complex(z, ctx.bits), ctx)).collect();
    if cols.is_empty() {
        return Ok(0);
    }
    rank(&CMat::from_columns(cov.edge_count(), ctx.bits, &cols), ctx)
}

pub fn eigenspace_form(cov: &FatGraphCover, ctx: &Ctx) -> Result<EigenSpaceData> {
    check_evaluable(&cov.coloring, &cov.point)?;
    let prec = ctx.bits;
    let cols: Vec<Vec<Complex>> = cov.lifted_basis().iter().map(|z| cov.project(&to_complex(z, prec), ctx)).collect();
    let m = cols.len();
    let form = CMat::from_fn(m, m, prec, |a, b| cov.intersection(&cols[a], &cols[b], prec));
    let basis = CMat::from_columns(cov.edge_count(), prec, &cols);
    let dim = if m == 0 { 0 } else { rank(&basis, ctx)? };
    Ok(EigenSpaceData { dim, basis, form })
}

/// Image of x_j under the Artin automorphism of a letter, as (generator, ±1).
fn artin_image(i: usize, sign: i8, j: usize) -> Vec<(usize, i64)> {
    match (sign > 0, j) {
        (true, j) if j == i => vec![(i, 1), (i + 1, 1), (i, -1)],
        (true, j) if j == i + 1 => vec![(i, 1)],
        (false, j) if j == i => vec![(i + 1, 1)],
        (false, j) if j == i + 1 => vec![(i + 1, -1), (i, 1), (i + 1, 1)],
        (_, j) => vec![(j, 1)],
    }
}

fn push_chain(src: &FatGraphCover, dst: &FatGraphCover, i: usize, sign: i8, v: &[Complex], prec: usize) -> Vec<Complex> {
    let n = src.n();
    let mut out = vec![Complex::zero(prec); v.len()];
    for g in 0..src.size {
        for j in 0..n {
            let a = &v[src.edge(g, j)];
            if a.is_zero() {
                continue;
            }
            let mut at = g;
            for (k, e) in artin_image(i, sign, j) {
                if e > 0 {
                    out[dst.edge(at, k)] += a;
                    at = dst.step[at][k];
                } else {
                    at = dst.back[at][k];
                    out[dst.edge(at, k)] -= a;
                }
            }
        }
    }
    out
}

/// Matrix of the braid on the eigenspace basis of `cov`, in the column
/// convention of [`crate::gassner::reduced_burau`].
pub fn braid_action(cov: &FatGraphCover, w: &BraidWord, ctx: &Ctx) -> Result<CMat> {
    if !w.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    if w.bottom() != &cov.coloring {
        return Err(Error::ColoringMismatch { top: cov.coloring.entries().to_vec(), bottom: w.bottom().entries().to_vec() });
    }
    let prec = ctx.bits;
    let data = eigenspace_form(cov, ctx)?;
    let m = data.basis.cols();
    let mut chains: Vec<Vec<Complex>> = (0..m).map(|a| data.basis.column(a)).collect();
    let levels = w.levels();
    let mut here = cov.clone();
    for (l, c_next) in w.letters().iter().zip(levels.iter().skip(1).chain(std::iter::once(&w.top()))) {
        let next = build_cover(c_next, &cov.point)?;
        chains = chains.iter().map(|v| push_chain(&here, &next, l.pos(), l.sign, v, prec)).collect();
        here = next;
    }
    let cols: Vec<Vec<Complex>> = chains.iter().map(|v| solve_consistent(&data.basis, v, ctx)).collect::<Result<_>>()?;
    Ok(CMat::from_columns(m, prec, &cols))
}
