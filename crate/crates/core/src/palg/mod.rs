//! Algebras over an ordinary operad `P` generated in arity two: free `P`-algebras, the map
//! `j : F_P(E ⊗ W) → F_P(E) ⊗ F_P(W)` built from a comultiplication, tensor products and inner
//! cohomomorphisms of presented `P`-algebras.
//!
//! Everything is graded by arity and truncated at a degree cap no larger than the operad's arity cap.

pub mod op_end;

use crate::error::{Error, Result};
use crate::free::catalog::std_order;
use crate::free::expand;
use crate::graph::{FlagId, Graph};
use crate::labeling::{GammaPreset, LabeledGraph, Signature};
use crate::linalg::scalar::one;
use crate::linalg::svec::Accum;
use crate::linalg::tensor::{factor_permutation, flatten, unflatten};
use crate::linalg::{GroupAction, LinearMap, SVec, Subspace};
use crate::operad_cohom::{contract_second, Presented};
use crate::quadratic::AlgebraPresentation;
use std::collections::BTreeMap;

fn arity_sig(n: usize) -> Signature {
    Signature::new(0, 1, n)
}

fn build_map(rows: usize, ncols: usize, col: impl Fn(usize) -> Result<SVec>) -> Result<LinearMap> {
    Ok(LinearMap::from_columns(rows, (0..ncols).map(col).collect::<Result<_>>()?))
}

/// The tree with a binary root whose first input carries an `a`-ary vertex and whose second
/// carries a `b`-ary vertex; arity one means a bare leg.
fn binary_tree(a: usize, b: usize) -> (LabeledGraph, BTreeMap<FlagId, usize>, Vec<Vec<FlagId>>) {
    let preset = GammaPreset::Ordinary;
    let mut graph = Graph::empty();
    let mut labels = crate::labeling::Labeling::default();
    let mut next_flag: FlagId = 0;
    let mut add = |n: usize, v: u32, graph: &mut Graph, labels: &mut crate::labeling::Labeling| -> Vec<FlagId> {
        let c = preset.standard_corolla(arity_sig(n));
        let shift = next_flag;
        let c = c.relabel(&|f| f + shift, &|_| v);
        graph.vertices.push(v);
        graph.flags.extend(&c.graph.flags);
        graph.boundary.extend(&c.graph.boundary);
        graph.involution.extend(&c.graph.involution);
        labels.orientation.extend(c.labels.orientation.clone());
        next_flag += c.graph.flags.len() as FlagId;
        c.graph.flags.clone()
    };
    let root = add(2, 0, &mut graph, &mut labels);
    let mut legs = BTreeMap::from([(root[0], 0)]);
    let mut pos = 1;
    let mut v = 1;
    for (slot, n) in [(root[1], a), (root[2], b)] {
        if n == 1 {
            legs.insert(slot, pos);
            pos += 1;
            continue;
        }
        let child = add(n, v, &mut graph, &mut labels);
        v += 1;
        graph.involution.insert(slot, child[0]);
        graph.involution.insert(child[0], slot);
        for &f in &child[1..] {
            legs.insert(f, pos);
            pos += 1;
        }
    }
    let g = LabeledGraph { graph, labels };
    let orders = g.graph.vertices.iter().map(|&v| std_order(preset, &g, v)).collect();
    (g, legs, orders)
}

/// An ordinary operad generated in arity two, with `P(1) = k` and a symmetric comultiplication
/// `Δ : P → P ○ P` determined by its arity-two part.
#[derive(Clone, Debug)]
pub struct AlgebraOperad {
    pub operad: Presented,
    pub cap: usize,
    /// `P(2) ⊗ P(a) ⊗ P(b) → P(a + b)`, the root feeding on an `a`-ary and a `b`-ary operation.
    pub composition: BTreeMap<(usize, usize), LinearMap>,
    /// `Δ_n : P(n) → P(n) ⊗ P(n)`, indexed by `n ≥ 1`.
    pub delta: Vec<LinearMap>,
}

impl AlgebraOperad {
    /// `delta2 : P(2) → P(2) ⊗ P(2)` must be equivariant, symmetric and compatible with the relations.
    pub fn new(operad: Presented, delta2: LinearMap) -> Result<Self> {
        let cat = operad.free.catalog.clone();
        if cat.preset != GammaPreset::Ordinary {
            return Err(Error::Unsupported(format!("algebras over {} operads", cat.preset)));
        }
        if operad.generators().components.keys().any(|s| *s != arity_sig(2)) {
            return Err(Error::Unsupported("operads with generators outside arity two".into()));
        }
        let cap = cat.caps.max_arity;
        if cat.caps.max_weight + 1 < cap {
            return Err(Error::CapExceeded(format!("weight cap {} cannot reach arity {cap}", cat.caps.max_weight)));
        }
        let mut p = AlgebraOperad { operad, cap, composition: BTreeMap::new(), delta: vec![LinearMap::zero(0, 0), LinearMap::identity(1)] };
        for n in 2..=cap {
            for a in 1..n {
                let c = p.compose_map(a, n - a)?;
                p.composition.insert((a, n - a), c);
            }
        }
        let d2 = p.dim(2);
        if delta2.nrows() != d2 * d2 || delta2.ncols() != d2 {
            return Err(Error::Dimension(format!("comultiplication must be {}x{d2}", d2 * d2)));
        }
        let swap = factor_permutation(&[d2, d2], &[1, 0]);
        if swap.compose(&delta2)? != delta2 {
            return Err(Error::InvalidInput("comultiplication is not symmetric".into()));
        }
        for g in &p.action(2).generators {
            if delta2.compose(g)? != g.kron(g).compose(&delta2)? {
                return Err(Error::InvalidInput("comultiplication is not equivariant".into()));
            }
        }
        p.delta.push(delta2);
        for n in 3..=cap {
            let d = p.extend_delta(n)?;
            p.delta.push(d);
        }
        Ok(p)
    }

    /// `Δ(e_i) = e_i ⊗ e_i` on the basis of `P(2)`.
    pub fn with_diagonal(operad: Presented) -> Result<Self> {
        let d2 = operad.algebra.dim(&arity_sig(2));
        let delta = LinearMap::from_columns(d2 * d2, (0..d2).map(|i| SVec::unit(i * d2 + i)).collect());
        Self::new(operad, delta)
    }

    pub fn dim(&self, n: usize) -> usize {
        match n {
            0 => 0,
            1 => 1,
            _ => self.operad.algebra.dim(&arity_sig(n)),
        }
    }

    /// `S_n` acting on `P(n)` through adjacent input swaps.
    pub fn action(&self, n: usize) -> GroupAction {
        match self.operad.algebra.collection.component(&arity_sig(n)) {
            Some(c) => c.action.clone(),
            None => {
                let gens = crate::collections::aut_generators(GammaPreset::Ordinary, arity_sig(n)).len();
                GroupAction::trivial(self.dim(n), gens, crate::collections::aut_relations(GammaPreset::Ordinary, arity_sig(n)))
            }
        }
    }

    fn compose_map(&self, a: usize, b: usize) -> Result<LinearMap> {
        let n = a + b;
        let (d2, da, db) = (self.dim(2), self.dim(a), self.dim(b));
        let rows = self.dim(n);
        if rows == 0 || d2 * da * db == 0 {
            return Ok(LinearMap::zero(rows, d2 * da * db));
        }
        let (g, legs, orders) = binary_tree(a, b);
        let sig = arity_sig(n);
        let alg = &self.operad.algebra;
        let alpha = &alg.alpha[&sig];
        build_map(rows, d2 * da * db, |k| {
            let ix = unflatten(&[d2, da, db], k);
            let mut dec = vec![ix[0]];
            if a > 1 {
                dec.push(ix[1]);
            }
            if b > 1 {
                dec.push(ix[2]);
            }
            Ok(alpha.apply(&alg.free.embed(&sig, &g, &legs, &orders, &[(dec, one())])?))
        })
    }

    /// `Δ_n` from `Δ_2` and the lower `Δ_a`, through the surjection `⊕ P(2) ⊗ P(a) ⊗ P(b) → P(n)`.
    fn extend_delta(&self, n: usize) -> Result<LinearMap> {
        let pn = self.dim(n);
        if pn == 0 {
            return Ok(LinearMap::zero(0, 0));
        }
        let d2 = self.dim(2);
        let mut t_cols = Vec::new();
        let mut d_cols = Vec::new();
        for a in 1..n {
            let b = n - a;
            let (da, db) = (self.dim(a), self.dim(b));
            let c = &self.composition[&(a, b)];
            let lifted = self.delta[2].kron(&self.delta[a]).kron(&self.delta[b]);
            let reorder = factor_permutation(&[d2, d2, da, da, db, db], &[0, 2, 4, 1, 3, 5]);
            let d = c.kron(c).compose(&reorder.compose(&lifted)?)?;
            // leaves of ordered trees stay in blocks; the S_n-translates reach every operation
            for perm in crate::collections::aut_elements(GammaPreset::Ordinary, arity_sig(n)) {
                let g = self.operad.algebra.collection.rho(&arity_sig(n), &perm);
                t_cols.extend(g.compose(c)?.columns().iter().cloned());
                d_cols.extend(g.kron(&g).compose(&d)?.columns().iter().cloned());
            }
        }
        let t = LinearMap::from_columns(pn, t_cols);
        let d = LinearMap::from_columns(pn * pn, d_cols);
        if t.rank() != pn {
            return Err(Error::InvalidInput(format!("P({n}) is not generated by binary compositions")));
        }
        if t.kernel().basis().any(|v| !d.apply(v).is_zero()) {
            return Err(Error::InvalidInput(format!("comultiplication does not respect the relations in arity {n}")));
        }
        build_map(pn * pn, pn, |k| {
            let x = t.solve(&SVec::unit(k)).ok_or_else(|| Error::Invariant("composition is not surjective".into()))?;
            Ok(d.apply(&x))
        })
    }

    /// Diagonal `S_n` action on `P(n) ⊗ X^{⊗n}`.
    fn diagonal_action(&self, x: usize, n: usize) -> Vec<LinearMap> {
        self.action(n)
            .generators
            .iter()
            .enumerate()
            .map(|(t, g)| {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(t, t + 1);
                g.kron(&factor_permutation(&vec![x; n], &perm))
            })
            .collect()
    }

    /// `P(n) ⊗_{S_n} X^{⊗n}` as a quotient of `P(n) ⊗ X^{⊗n}`; basis vectors are classes of
    /// standard tensors.
    pub fn free_piece(&self, x: usize, n: usize) -> FreePiece {
        let lift = self.dim(n) * x.pow(n as u32);
        if n == 1 {
            return FreePiece { degree: 1, x_dim: x, lift_dim: lift, projection: LinearMap::identity(lift), section: LinearMap::identity(lift) };
        }
        let mut rel = Subspace::zero(lift);
        for g in self.diagonal_action(x, n) {
            for k in 0..lift {
                let v = SVec::unit(k).sub(g.column(k));
                if !v.is_zero() {
                    rel.insert(v);
                }
            }
        }
        FreePiece { degree: n, x_dim: x, lift_dim: lift, projection: rel.quotient_map(), section: rel.quotient_section() }
    }
}

/// One graded piece of a free `P`-algebra on an `x_dim`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePiece {
    pub degree: usize,
    pub x_dim: usize,
    pub lift_dim: usize,
    pub projection: LinearMap,
    pub section: LinearMap,
}

impl FreePiece {
    pub fn dim(&self) -> usize {
        self.projection.nrows()
    }

    fn words(&self) -> usize {
        self.x_dim.pow(self.degree as u32)
    }
}

/// A `P`-algebra graded in degrees `1..=cap` with its binary operations
/// `P(2) ⊗ A_a ⊗ A_b → A_{a+b}`; index 0 of `dims` is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPAlgebra {
    pub cap: usize,
    pub dims: Vec<usize>,
    pub products: BTreeMap<(usize, usize), LinearMap>,
}

impl GradedPAlgebra {
    /// Degreewise `X_n ⊗ Y_n`, with operations through `Δ_2`.
    pub fn tensor(&self, other: &GradedPAlgebra, p: &AlgebraOperad) -> Result<GradedPAlgebra> {
        let cap = self.cap.min(other.cap);
        let dims: Vec<usize> = (0..=cap).map(|n| self.dims[n] * other.dims[n]).collect();
        let d2 = p.dim(2);
        let mut products = BTreeMap::new();
        for n in 2..=cap {
            for a in 1..n {
                let b = n - a;
                let (mx, my) = (&self.products[&(a, b)], &other.products[&(a, b)]);
                let shape = [d2, self.dims[a], other.dims[a], self.dims[b], other.dims[b]];
                let m = build_map(dims[n], shape.iter().product(), |k| {
                    let ix = unflatten(&shape, k);
                    let mut acc = Accum::new();
                    for (pq, c) in p.delta[2].column(ix[0]).entries() {
                        let (i, j) = (pq / d2, pq % d2);
                        let x = mx.column(flatten(&[d2, shape[1], shape[3]], &[i, ix[1], ix[3]]));
                        let y = my.column(flatten(&[d2, shape[2], shape[4]], &[j, ix[2], ix[4]]));
                        for (u, cu) in x.entries() {
                            for (v, cv) in y.entries() {
                                acc.add(u * other.dims[n] + v, c.clone() * cu * cv);
                            }
                        }
                    }
                    Ok(acc.finish())
                })?;
                products.insert((a, b), m);
            }
        }
        Ok(GradedPAlgebra { cap, dims, products })
    }

    /// Whether the degreewise maps `f_n : self_n → target_n` commute with every operation.
    pub fn is_morphism_to(&self, target: &GradedPAlgebra, f: &[LinearMap], d2: usize) -> Result<bool> {
        for ((a, b), m) in &self.products {
            let lhs = f[a + b].compose(m)?;
            let rhs = target.products[&(*a, *b)].compose(&LinearMap::identity(d2).kron(&f[*a]).kron(&f[*b]))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `F_P(X)` in degrees `1..=cap`.
#[derive(Clone, Debug)]
pub struct FreePAlgebra {
    pub x_dim: usize,
    /// Index 0 unused.
    pub pieces: Vec<FreePiece>,
    pub algebra: GradedPAlgebra,
}

pub fn free_p_algebra(p: &AlgebraOperad, x_dim: usize, cap: usize) -> Result<FreePAlgebra> {
    if cap > p.cap {
        return Err(Error::CapExceeded(format!("degree cap {cap} exceeds the operad's arity cap {}", p.cap)));
    }
    let mut pieces = vec![FreePiece { degree: 0, x_dim, lift_dim: 0, projection: LinearMap::zero(0, 0), section: LinearMap::zero(0, 0) }];
    for n in 1..=cap {
        pieces.push(p.free_piece(x_dim, n));
    }
    let dims: Vec<usize> = pieces.iter().map(FreePiece::dim).collect();
    let d2 = p.dim(2);
    let mut products = BTreeMap::new();
    for n in 2..=cap {
        for a in 1..n {
            let b = n - a;
            let (sa, sb, pn) = (&pieces[a].section, &pieces[b].section, &pieces[n]);
            let (wa, wb) = (pieces[a].words(), pieces[b].words());
            let c = &p.composition[&(a, b)];
            let shape = [d2, dims[a], dims[b]];
            let m = build_map(dims[n], shape.iter().product(), |k| {
                let ix = unflatten(&shape, k);
                let mut acc = Accum::new();
                for (la, ca) in sa.column(ix[1]).entries() {
                    for (lb, cb) in sb.column(ix[2]).entries() {
                        let (pa, ua) = (la / wa, la % wa);
                        let (pb, ub) = (lb / wb, lb % wb);
                        let word = ua * wb + ub;
                        for (r, cr) in c.column(flatten(&[d2, p.dim(a), p.dim(b)], &[ix[0], pa, pb])).entries() {
                            acc.add_vec(pn.projection.column(r * pn.words() + word), &(ca.clone() * cb * cr));
                        }
                    }
                }
                Ok(acc.finish())
            })?;
            products.insert((a, b), m);
        }
    }
    Ok(FreePAlgebra { x_dim, pieces, algebra: GradedPAlgebra { cap, dims, products } })
}

impl FreePAlgebra {
    pub fn cap(&self) -> usize {
        self.algebra.cap
    }

    /// `F_P(f)` in degree `n` for `f : X → Y`.
    pub fn map_to(&self, target: &FreePAlgebra, f: &LinearMap, n: usize) -> Result<LinearMap> {
        if f.ncols() != self.x_dim || f.nrows() != target.x_dim {
            return Err(Error::Dimension("generator map has the wrong shape".into()));
        }
        let (src, tgt) = (&self.pieces[n], &target.pieces[n]);
        let (ws, wt) = (src.words(), tgt.words());
        let xdims = vec![self.x_dim; n];
        build_map(tgt.dim(), src.dim(), |k| {
            let mut acc = Accum::new();
            for (l, c) in src.section.column(k).entries() {
                let (pi, w) = (l / ws, l % ws);
                let letters = unflatten(&xdims, w);
                let factors: Vec<&SVec> = letters.iter().map(|&i| f.column(i)).collect();
                for (m, cm) in expand(&factors) {
                    let tw = flatten(&vec![target.x_dim; n], &m);
                    acc.add_vec(tgt.projection.column(pi * wt + tw), &(c.clone() * cm));
                }
            }
            Ok(acc.finish())
        })
    }

    /// `[ℓ_n ⊗ w]` for words `w`, with `ℓ_n` the left comb on the first basis vector of `P(2)`.
    pub fn word_map(&self, p: &AlgebraOperad, n: usize) -> Result<LinearMap> {
        let comb = left_comb(p, n)?;
        let piece = &self.pieces[n];
        let w = piece.words();
        build_map(piece.dim(), w, |word| {
            let mut acc = Accum::new();
            for (pi, c) in comb.entries() {
                acc.add_vec(piece.projection.column(pi * w + word), c);
            }
            Ok(acc.finish())
        })
    }
}

/// `ℓ_2 = e_0`, `ℓ_{n+1} = e_0(ℓ_n, 1)`.
pub fn left_comb(p: &AlgebraOperad, n: usize) -> Result<SVec> {
    if n == 1 {
        return Ok(SVec::unit(0));
    }
    if p.dim(2) == 0 {
        return Ok(SVec::new());
    }
    let mut comb = SVec::unit(0);
    for k in 2..n {
        let c = &p.composition[&(k, 1)];
        let mut acc = Accum::new();
        for (i, x) in comb.entries() {
            acc.add_vec(c.column(flatten(&[p.dim(2), p.dim(k), 1], &[0, *i, 0])), x);
        }
        comb = acc.finish();
    }
    Ok(comb)
}

/// `j(n) : F_P(E ⊗ W)_n → F_P(E)_n ⊗ F_P(W)_n`; letters of `E ⊗ W` are indexed `e · dim W + w`.
pub fn j_map(p: &AlgebraOperad, fe: &FreePAlgebra, fw: &FreePAlgebra, few: &FreePAlgebra, n: usize) -> Result<LinearMap> {
    let lifted = j_lifted(p, fe, fw, few, n)?;
    lifted.compose(&few.pieces[n].section)
}

/// `j` before passing to coinvariants, on `P(n) ⊗ (E ⊗ W)^{⊗n}`.
pub fn j_lifted(p: &AlgebraOperad, fe: &FreePAlgebra, fw: &FreePAlgebra, few: &FreePAlgebra, n: usize) -> Result<LinearMap> {
    let (de, dw) = (fe.x_dim, fw.x_dim);
    if few.x_dim != de * dw {
        return Err(Error::Dimension("F_P(E ⊗ W) is built on the wrong space".into()));
    }
    let (pe, pw, pew) = (&fe.pieces[n], &fw.pieces[n], &few.pieces[n]);
    let pn = p.dim(n);
    let (we, ww, wew) = (pe.words(), pw.words(), pew.words());
    build_map(pe.dim() * pw.dim(), pew.lift_dim, |l| {
        let (pi, word) = (l / wew, l % wew);
        let letters = unflatten(&vec![de * dw; n], word);
        let e: Vec<usize> = letters.iter().map(|x| x / dw).collect();
        let w: Vec<usize> = letters.iter().map(|x| x % dw).collect();
        let (ew, wwi) = (flatten(&vec![de; n], &e), flatten(&vec![dw; n], &w));
        let mut acc = Accum::new();
        for (pq, c) in p.delta[n].column(pi).entries() {
            let (i, j) = (pq / pn, pq % pn);
            for (u, cu) in pe.projection.column(i * we + ew).entries() {
                for (v, cv) in pw.projection.column(j * ww + wwi).entries() {
                    acc.add(u * pw.dim() + v, c.clone() * cu * cv);
                }
            }
        }
        Ok(acc.finish())
    })
}

/// Whether the lifted `j(n)` is constant on `S_n`-orbits.
pub fn j_descends(p: &AlgebraOperad, fe: &FreePAlgebra, fw: &FreePAlgebra, few: &FreePAlgebra, n: usize) -> Result<bool> {
    let lifted = j_lifted(p, fe, fw, few, n)?;
    for g in p.diagonal_action(few.x_dim, n) {
        if lifted.compose(&g)? != lifted {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of dimension `generators` and relations inside `F_P(V_1)_n` per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAlgebraPresentation {
    pub generators: usize,
    pub relations: BTreeMap<usize, Subspace>,
}

/// `V = F_P(V_1)/(R)` degreewise, with the ideal and the quotient maps.
#[derive(Clone, Debug)]
pub struct PresentedPAlgebra {
    pub presentation: PAlgebraPresentation,
    pub free: FreePAlgebra,
    /// Index 0 unused.
    pub ideal: Vec<Subspace>,
    pub algebra: GradedPAlgebra,
    pub projection: Vec<LinearMap>,
    pub section: Vec<LinearMap>,
}

impl PresentedPAlgebra {
    pub fn new(p: &AlgebraOperad, presentation: PAlgebraPresentation, cap: usize) -> Result<Self> {
        let free = free_p_algebra(p, presentation.generators, cap)?;
        let d2 = p.dim(2);
        let dims = &free.algebra.dims;
        let mut ideal = vec![Subspace::zero(0)];
        for n in 1..=cap {
            let mut i = match presentation.relations.get(&n) {
                Some(r) if r.ambient() != dims[n] => return Err(Error::Dimension(format!("relations in degree {n} live in dimension {}, expected {}", r.ambient(), dims[n]))),
                Some(r) => r.clone(),
                None => Subspace::zero(dims[n]),
            };
            for a in 1..n {
                let b = n - a;
                let m = &free.algebra.products[&(a, b)];
                for mu in 0..d2 {
                    for x in ideal[a].basis() {
                        for y in 0..dims[b] {
                            i.insert(product(m, [d2, dims[a], dims[b]], mu, x, &SVec::unit(y)));
                        }
                    }
                    for y in ideal[b].basis() {
                        for x in 0..dims[a] {
                            i.insert(product(m, [d2, dims[a], dims[b]], mu, &SVec::unit(x), y));
                        }
                    }
                }
            }
            ideal.push(i);
        }
        if let Some(&top) = presentation.relations.keys().next_back() {
            if top > cap {
                return Err(Error::CapExceeded(format!("relations in degree {top} exceed the cap {cap}")));
            }
        }
        let projection: Vec<LinearMap> = ideal.iter().map(Subspace::quotient_map).collect();
        let section: Vec<LinearMap> = ideal.iter().map(Subspace::quotient_section).collect();
        let qdims: Vec<usize> = projection.iter().map(LinearMap::nrows).collect();
        let mut products = BTreeMap::new();
        for ((a, b), m) in &free.algebra.products {
            let lifted = LinearMap::identity(d2).kron(&section[*a]).kron(&section[*b]);
            products.insert((*a, *b), projection[a + b].compose(&m.compose(&lifted)?)?);
        }
        Ok(PresentedPAlgebra { presentation, free, ideal, algebra: GradedPAlgebra { cap, dims: qdims, products }, projection, section })
    }

    /// An associative-style presentation: the words of `alg` placed on left combs.
    pub fn from_quadratic(p: &AlgebraOperad, alg: &AlgebraPresentation, cap: usize) -> Result<Self> {
        let free = free_p_algebra(p, alg.dim(), cap)?;
        let mut relations = BTreeMap::new();
        for (deg, rel) in std::iter::once((alg.degree, &alg.relations)).chain(alg.extra.iter().map(|(d, r)| (*d, r))) {
            if deg > cap {
                continue;
            }
            let w = free.word_map(p, deg)?;
            relations.insert(deg, rel.image(&w));
        }
        Self::new(p, PAlgebraPresentation { generators: alg.dim(), relations }, cap)
    }

    pub fn cap(&self) -> usize {
        self.algebra.cap
    }

    pub fn dims(&self) -> &[usize] {
        &self.algebra.dims[1..]
    }
}

fn product(m: &LinearMap, shape: [usize; 3], mu: usize, x: &SVec, y: &SVec) -> SVec {
    let mut acc = Accum::new();
    for (i, a) in x.entries() {
        for (j, b) in y.entries() {
            acc.add_vec(m.column(flatten(&shape, &[mu, *i, *j])), &(a.clone() * b));
        }
    }
    acc.finish()
}

/// `V ⊗ W` of presented algebras, presented on `V_1 ⊗ W_1` by the kernel of
/// `(α ⊗ β) ∘ j : F_P(V_1 ⊗ W_1) → V ⊗ W`.
#[derive(Clone, Debug)]
pub struct PAlgebraTensor {
    pub presented: PresentedPAlgebra,
    /// The degreewise tensor `V_n ⊗ W_n` with operations through `Δ`.
    pub product: GradedPAlgebra,
    /// The induced maps from the presented algebra into `V ⊗ W`.
    pub comparison: Vec<LinearMap>,
}

pub fn tensor_p_algebras(p: &AlgebraOperad, v: &PresentedPAlgebra, w: &PresentedPAlgebra) -> Result<PAlgebraTensor> {
    let cap = v.cap().min(w.cap());
    let (dv, dw) = (v.presentation.generators, w.presentation.generators);
    let fvw = free_p_algebra(p, dv * dw, cap)?;
    let mut relations = BTreeMap::new();
    let mut to_product = vec![LinearMap::zero(0, 0)];
    for n in 1..=cap {
        let j = j_map(p, &v.free, &w.free, &fvw, n)?;
        let ab = v.projection[n].kron(&w.projection[n]).compose(&j)?;
        relations.insert(n, ab.kernel());
        to_product.push(ab);
    }
    let presented = PresentedPAlgebra::new(p, PAlgebraPresentation { generators: dv * dw, relations }, cap)?;
    let product = v.algebra.tensor(&w.algebra, p)?;
    let mut comparison = vec![LinearMap::zero(0, 0)];
    for n in 1..=cap {
        comparison.push(to_product[n].compose(&presented.section[n])?);
    }
    Ok(PAlgebraTensor { presented, product, comparison })
}

/// The inner cohomomorphism of presented `P`-algebras with its structure map `δ : V → E ⊗ W`.
#[derive(Clone, Debug)]
pub struct PAlgebraCohom {
    pub algebra: PresentedPAlgebra,
    /// `c : V_1 → E_1 ⊗ W_1` with `E_1 = V_1 ⊗ W_1*`.
    pub coevaluation: LinearMap,
    /// `δ_n : V_n → E_n ⊗ W_n`, index 0 unused.
    pub delta: Vec<LinearMap>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PAlgebraCohomChecks {
    pub delta_well_defined: bool,
    pub restricts_to_coevaluation: bool,
    pub is_algebra_map: bool,
}

impl PAlgebraCohomChecks {
    pub fn passed(&self) -> bool {
        self.delta_well_defined && self.restricts_to_coevaluation && self.is_algebra_map
    }
}

pub fn cohom_p_algebras(p: &AlgebraOperad, v: &PresentedPAlgebra, w: &PresentedPAlgebra) -> Result<(PAlgebraCohom, PAlgebraCohomChecks)> {
    let cap = v.cap().min(w.cap());
    let (dv, dw) = (v.presentation.generators, w.presentation.generators);
    let de = dv * dw;
    let coevaluation = LinearMap::from_columns(de * dw, (0..dv).map(|i| SVec::from_pairs((0..dw).map(|j| ((i * dw + j) * dw + j, one())))).collect());
    let fe = free_p_algebra(p, de, cap)?;
    let few = free_p_algebra(p, de * dw, cap)?;
    // h_n = (id ⊗ π_W) ∘ j ∘ F_P(c) on F_P(V_1)_n
    let mut h = vec![LinearMap::zero(0, 0)];
    let mut relations = BTreeMap::new();
    for n in 1..=cap {
        let fc = v.free.map_to(&few, &coevaluation, n)?;
        let j = j_map(p, &fe, &w.free, &few, n)?;
        let hn = LinearMap::identity(fe.algebra.dims[n]).kron(&w.projection[n]).compose(&j.compose(&fc)?)?;
        if let Some(r) = v.presentation.relations.get(&n) {
            let wn = w.algebra.dims[n];
            let vecs: Vec<SVec> = r.basis().flat_map(|x| contract_second(&hn.apply(x), wn)).collect();
            relations.insert(n, Subspace::span(fe.algebra.dims[n], vecs));
        }
        h.push(hn);
    }
    let e = PresentedPAlgebra::new(p, PAlgebraPresentation { generators: de, relations }, cap)?;
    let mut delta = vec![LinearMap::zero(0, 0)];
    let mut checks = PAlgebraCohomChecks { delta_well_defined: true, ..Default::default() };
    for n in 1..=cap {
        let down = e.projection[n].kron(&LinearMap::identity(w.algebra.dims[n])).compose(&h[n])?;
        if v.ideal[n].basis().any(|x| !down.apply(x).is_zero()) {
            checks.delta_well_defined = false;
        }
        delta.push(down.compose(&v.section[n])?);
    }
    let expected_c = e.projection[1].kron(&w.projection[1]).compose(&coevaluation)?;
    checks.restricts_to_coevaluation = delta[1].compose(&v.projection[1])? == expected_c;
    let ew = e.algebra.tensor(&w.algebra, p)?;
    checks.is_algebra_map = v.algebra.is_morphism_to(&ew, &delta, p.dim(2))?;
    Ok((PAlgebraCohom { algebra: e, coevaluation, delta }, checks))
}

/// Binary operations of `V ⊗ W` through `Δ_2`. Operations are maps `P(2) → V ⊗ V* ⊗ V*`, output
/// first, and letters of `V ⊗ W` are indexed `v · dim W + w`.
pub fn tensor_structures(p: &AlgebraOperad, sv: &LinearMap, dv: usize, sw: &LinearMap, dw: usize) -> Result<LinearMap> {
    let d2 = p.dim(2);
    if sv.ncols() != d2 || sw.ncols() != d2 || sv.nrows() != dv.pow(3) || sw.nrows() != dw.pow(3) {
        return Err(Error::Dimension("binary operations have the wrong shape".into()));
    }
    let d = dv * dw;
    build_map(d.pow(3), d2, |mu| {
        let mut acc = Accum::new();
        for (pq, c) in p.delta[2].column(mu).entries() {
            for (x, cx) in sv.column(pq / d2).entries() {
                for (y, cy) in sw.column(pq % d2).entries() {
                    let (a, b) = (unflatten(&[dv; 3], *x), unflatten(&[dw; 3], *y));
                    let ix: Vec<usize> = (0..3).map(|k| a[k] * dw + b[k]).collect();
                    acc.add(flatten(&[d; 3], &ix), c.clone() * cx * cy);
                }
            }
        }
        Ok(acc.finish())
    })
}
