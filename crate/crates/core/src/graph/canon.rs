//! Canonical labeling of colored flag structures by individualization and refinement.
//!
//! The search keeps the lexicographically least leaf code. Automorphisms found between
//! equal-code leaves prune sibling branches on the first path and trigger backjumps.

use super::{FlagId, Graph, VertexId};
use crate::error::{Error, Result};
use crate::linalg::group::{perm_compose, perm_group_closure, perm_inverse, Perm};
use std::collections::BTreeMap;

pub const MAX_VERTICES: usize = 12;
const NODE_CAP: usize = 2_000_000;
const NONE: u64 = u64::MAX;

/// Flags and vertices with boundary, partner, optional cyclic successor, and colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagStructure {
    pub vertex_of: Vec<usize>,
    pub partner: Vec<usize>,
    pub succ: Option<Vec<usize>>,
    pub flag_color: Vec<u64>,
    pub vertex_color: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: Vec<u64>,
    /// `flag_order[k]` is the flag at canonical position `k`.
    pub flag_order: Vec<usize>,
    pub vertex_order: Vec<usize>,
    /// Generators of the automorphism group as `(flag perm, vertex perm)`.
    pub generators: Vec<(Perm, Perm)>,
}

impl CanonicalForm {
    pub fn flag_position(&self) -> Vec<usize> {
        perm_inverse(&self.flag_order)
    }

    pub fn vertex_position(&self) -> Vec<usize> {
        perm_inverse(&self.vertex_order)
    }

    /// All automorphisms as `(flag perm, vertex perm)`, identity first.
    pub fn automorphisms(&self) -> Vec<(Perm, Perm)> {
        let nv = self.vertex_order.len();
        let nf = self.flag_order.len();
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|(f, v)| v.iter().copied().chain(f.iter().map(|&x| x + nv)).collect())
            .collect();
        let mut all = perm_group_closure(nv + nf, &gens);
        let id: Perm = (0..nv + nf).collect();
        all.retain(|p| *p != id);
        all.insert(0, id);
        all.into_iter()
            .map(|p| {
                let v = p[..nv].to_vec();
                let f = p[nv..].iter().map(|&x| x - nv).collect();
                (f, v)
            })
            .collect()
    }
}

impl FlagStructure {
    pub fn nf(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn nv(&self) -> usize {
        self.vertex_color.len()
    }

    fn flags_at(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.nv()];
        for (f, &v) in self.vertex_of.iter().enumerate() {
            at[v].push(f);
        }
        at
    }

    fn pred(&self) -> Option<Vec<usize>> {
        self.succ.as_ref().map(|s| perm_inverse(s))
    }
}

fn rank(keys: &[Vec<u64>]) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u64>> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(&k).unwrap() as u32).collect()
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Ctx<'a> {
    s: &'a FlagStructure,
    at: Vec<Vec<usize>>,
    pred: Option<Vec<usize>>,
    nv: usize,
}

impl Ctx<'_> {
    fn refine(&self, mut c: Vec<u32>) -> Vec<u32> {
        let (nv, s) = (self.nv, self.s);
        loop {
            let before = distinct(&c);
            let mut keys = Vec::with_capacity(c.len());
            for v in 0..nv {
                let mut k = vec![c[v] as u64];
                let mut nb: Vec<u64> = self.at[v].iter().map(|&f| c[nv + f] as u64).collect();
                nb.sort_unstable();
                k.extend(nb);
                keys.push(k);
            }
            for f in 0..s.nf() {
                let mut k = vec![c[nv + f] as u64, c[s.vertex_of[f]] as u64, c[nv + s.partner[f]] as u64];
                if let (Some(sc), Some(pr)) = (&s.succ, &self.pred) {
                    k.push(c[nv + sc[f]] as u64);
                    k.push(c[nv + pr[f]] as u64);
                }
                keys.push(k);
            }
            c = rank(&keys);
            if distinct(&c) == before {
                return c;
            }
        }
    }

    fn individualize(&self, c: &[u32], x: usize) -> Vec<u32> {
        let keys: Vec<Vec<u64>> = c.iter().enumerate().map(|(i, &k)| vec![k as u64, (i != x) as u64]).collect();
        self.refine(rank(&keys))
    }

    fn code(&self, pos: &[u32]) -> Vec<u64> {
        let (nv, s) = (self.nv, self.s);
        let mut vorder = vec![0; nv];
        let mut forder = vec![0; s.nf()];
        for (i, &p) in pos.iter().enumerate() {
            if i < nv {
                vorder[p as usize] = i;
            } else {
                forder[p as usize - nv] = i - nv;
            }
        }
        let mut code = vec![nv as u64, s.nf() as u64];
        for &v in &vorder {
            code.push(s.vertex_color[v]);
        }
        for &f in &forder {
            code.push(s.flag_color[f]);
            code.push(pos[s.vertex_of[f]] as u64);
            code.push(pos[nv + s.partner[f]] as u64 - nv as u64);
            code.push(match &s.succ {
                Some(sc) => pos[nv + sc[f]] as u64 - nv as u64,
                None => NONE,
            });
        }
        code
    }
}

struct Search {
    first: Option<(Vec<u64>, Vec<u32>)>,
    best: Option<(Vec<u64>, Vec<u32>)>,
    first_path: Vec<usize>,
    autos: Vec<Perm>,
    nodes: usize,
}

fn leaf_auto(from: &[u32], to: &[u32]) -> Perm {
    // object x at position from[x] corresponds to the object at the same position in `to`
    let inv_to = perm_inverse(&to.iter().map(|&p| p as usize).collect::<Vec<_>>());
    from.iter().map(|&p| inv_to[p as usize]).collect()
}

impl Search {
    fn run(&mut self, ctx: &Ctx, c: Vec<u32>, path: &mut Vec<usize>) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > NODE_CAP {
            return Err(Error::CapExceeded("canonical labeling search exceeded node budget".into()));
        }
        let n = c.len();
        if distinct(&c) == n {
            let code = ctx.code(&c);
            let Some((fcode, fpos)) = &self.first else {
                self.first = Some((code.clone(), c.clone()));
                self.best = Some((code, c));
                self.first_path = path.clone();
                return Ok(None);
            };
            if &code == fcode {
                self.autos.push(leaf_auto(&c, fpos));
                let common = path.iter().zip(&self.first_path).take_while(|(a, b)| a == b).count();
                return Ok(Some(common));
            }
            let (bcode, bpos) = self.best.as_ref().unwrap();
            if &code == bcode {
                self.autos.push(leaf_auto(&c, bpos));
            } else if &code < bcode {
                self.best = Some((code, c));
            }
            return Ok(None);
        }
        let target = (0..n as u32)
            .filter_map(|col| {
                let cell: Vec<usize> = (0..n).filter(|&i| c[i] == col).collect();
                (cell.len() > 1).then_some(cell)
            })
            .next()
            .expect("non-discrete coloring has a non-trivial cell");
        let depth = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for &x in &target {
            let on_first = self.first.is_some() && self.first_path.len() > depth && self.first_path[..depth] == path[..];
            if on_first && !tried.is_empty() && self.in_orbit_of(x, &tried, &path[..], n) {
                continue;
            }
            path.push(x);
            let r = self.run(ctx, ctx.individualize(&c, x), path)?;
            path.pop();
            if let Some(level) = r {
                if level < depth {
                    return Ok(Some(level));
                }
            }
            tried.push(x);
        }
        Ok(None)
    }

    fn in_orbit_of(&self, x: usize, tried: &[usize], fixed: &[usize], n: usize) -> bool {
        let mut uf = super::UnionFind::new(n);
        for a in &self.autos {
            if fixed.iter().all(|&p| a[p] == p) {
                for i in 0..n {
                    uf.union(i, a[i]);
                }
            }
        }
        let rx = uf.find(x);
        tried.iter().any(|&y| uf.find(y) == rx)
    }
}

pub fn canonical_form(s: &FlagStructure) -> Result<CanonicalForm> {
    let (nv, nf) = (s.nv(), s.nf());
    if nv > MAX_VERTICES {
        return Err(Error::CapExceeded(format!("canonical form supports at most {MAX_VERTICES} vertices, got {nv}")));
    }
    let ctx = Ctx { s, at: s.flags_at(), pred: s.pred(), nv };
    let init: Vec<Vec<u64>> = (0..nv)
        .map(|v| vec![0, s.vertex_color[v]])
        .chain((0..nf).map(|f| vec![1, s.flag_color[f]]))
        .collect();
    let c = ctx.refine(rank(&init));
    let mut search = Search { first: None, best: None, first_path: Vec::new(), autos: Vec::new(), nodes: 0 };
    search.run(&ctx, c, &mut Vec::new())?;
    let (key, pos) = search.best.unwrap_or_else(|| (ctx.code(&[]), Vec::new()));
    let mut vertex_order = vec![0; nv];
    let mut flag_order = vec![0; nf];
    for (i, &p) in pos.iter().enumerate() {
        if i < nv {
            vertex_order[p as usize] = i;
        } else {
            flag_order[p as usize - nv] = i - nv;
        }
    }
    let mut gens: Vec<Perm> = search.autos;
    gens.sort();
    gens.dedup();
    let generators = gens
        .into_iter()
        .map(|a| (a[nv..].iter().map(|&x| x - nv).collect(), a[..nv].to_vec()))
        .collect();
    Ok(CanonicalForm { key, flag_order, vertex_order, generators })
}

/// Isomorphism `a → b` as object maps `(flags, vertices)` if the structures are isomorphic.
pub fn isomorphism(a: &FlagStructure, b: &FlagStructure) -> Result<Option<(Perm, Perm)>> {
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    if ca.key != cb.key {
        return Ok(None);
    }
    let f = perm_compose(&cb.flag_order, &ca.flag_position());
    let v = perm_compose(&cb.vertex_order, &ca.vertex_position());
    Ok(Some((f, v)))
}

impl FlagStructure {
    /// Uncolored structure of a plain graph, with index maps back to ids.
    pub fn of_graph(g: &Graph) -> (FlagStructure, Vec<FlagId>, Vec<VertexId>) {
        let fidx: BTreeMap<FlagId, usize> = g.flags.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let vidx: BTreeMap<VertexId, usize> = g.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let s = FlagStructure {
            vertex_of: g.flags.iter().map(|f| vidx[&g.vertex(*f)]).collect(),
            partner: g.flags.iter().map(|&f| fidx[&g.j(f)]).collect(),
            succ: None,
            flag_color: vec![0; g.flags.len()],
            vertex_color: vec![0; g.vertices.len()],
        };
        (s, g.flags.clone(), g.vertices.clone())
    }
}

/// Canonical key and the graph relabeled to canonical ids `0..n`.
pub fn graph_canonical(g: &Graph) -> Result<(Vec<u64>, Graph)> {
    let (s, flags, vertices) = FlagStructure::of_graph(g);
    let cf = canonical_form(&s)?;
    let fpos = cf.flag_position();
    let vpos = cf.vertex_position();
    let fmap: BTreeMap<FlagId, FlagId> = flags.iter().enumerate().map(|(i, &f)| (f, fpos[i] as FlagId)).collect();
    let vmap: BTreeMap<VertexId, VertexId> = vertices.iter().enumerate().map(|(i, &v)| (v, vpos[i] as VertexId)).collect();
    Ok((cf.key, g.relabel(&|f| fmap[&f], &|v| vmap[&v])))
}

/// An isomorphism of plain graphs as id maps, if one exists.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<Option<(BTreeMap<FlagId, FlagId>, BTreeMap<VertexId, VertexId>)>> {
    let (sa, fa, va) = FlagStructure::of_graph(a);
    let (sb, fb, vb) = FlagStructure::of_graph(b);
    Ok(isomorphism(&sa, &sb)?.map(|(f, v)| {
        (
            f.iter().enumerate().map(|(i, &j)| (fa[i], fb[j])).collect(),
            v.iter().enumerate().map(|(i, &j)| (va[i], vb[j])).collect(),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_autos(s: &FlagStructure) -> usize {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut count = 0;
        for fp in perms(s.nf()) {
            for vp in perms(s.nv()) {
                let ok = (0..s.nf()).all(|f| {
                    vp[s.vertex_of[f]] == s.vertex_of[fp[f]]
                        && fp[s.partner[f]] == s.partner[fp[f]]
                        && s.flag_color[f] == s.flag_color[fp[f]]
                }) && (0..s.nv()).all(|v| s.vertex_color[v] == s.vertex_color[vp[v]]);
                if ok {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let cases = [
            Graph::corolla(4),
            Graph::from_lists(1, &[0, 0], &[1, 0]),
            Graph::from_lists(2, &[0, 0, 1, 1], &[2, 3, 0, 1]),
            Graph::from_lists(2, &[0, 0, 1, 1, 1], &[2, 1, 0, 3, 4]),
            Graph::from_lists(3, &[0, 1, 1, 2, 0, 2], &[1, 0, 3, 2, 4, 5]),
        ];
        for g in &cases {
            let (s, _, _) = FlagStructure::of_graph(g);
            let cf = canonical_form(&s).unwrap();
            assert_eq!(cf.automorphisms().len(), brute_force_autos(&s), "{g:?}");
        }
    }

    #[test]
    fn relabeled_loop_graphs_share_a_key() {
        let a = Graph::from_lists(1, &[0, 0, 0], &[1, 0, 2]);
        let b = a.relabel(&|f| (f + 1) % 3 + 10, &|v| v + 5);
        let (ka, ca) = graph_canonical(&a).unwrap();
        let (kb, cb) = graph_canonical(&b).unwrap();
        assert_eq!(ka, kb);
        assert_eq!(ca, cb);
        let iso = is_isomorphic(&a, &b).unwrap().unwrap();
        for (&f, &g) in &iso.0 {
            assert_eq!(iso.0[&a.j(f)], b.j(g));
        }
    }

    #[test]
    fn path_versus_star_differ() {
        let path = Graph::from_lists(3, &[0, 1, 1, 2, 0], &[1, 0, 3, 2, 4]);
        let star = Graph::from_lists(3, &[0, 1, 0, 2, 0], &[1, 0, 3, 2, 4]);
        assert!(is_isomorphic(&path, &star).unwrap().is_none());
    }
}
