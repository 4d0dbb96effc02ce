use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::failure::Failure;
use super::partition::{FrameSpec, Partition};
use super::stats::{Phase, Stats};
use crate::polyalg::rat::Rat;
use crate::polyalg::{CommPoly, Grid, Monomial, PolyFamily, VarId};

/// Placement of polynomials in the k×k array, as 0-based family indices.
pub type Placement = Vec<Vec<usize>>;

/// Cap on the number of O grids tried when they must be enumerated.
pub const MAX_O_CANDIDATES: usize = 5040;

fn slot_map(p_diag: &[VarId]) -> BTreeMap<VarId, usize> {
    p_diag.iter().enumerate().map(|(i, &v)| (v, i)).collect()
}

/// ParPosX: positions the primary letter's variables. L_i collects the u
/// with c·d_i^{n-1}·u present; each off-diagonal variable lies in exactly
/// two of these sets, giving its unordered slot pair. The first pair is
/// oriented by the tie-break and the rest follow from the monomials
/// c·d_i^{n-2}·a·b with a in pair {i,m} and b in pair {m,j}.
pub fn par_pos_x(
    work_n: &PolyFamily,
    spec: &FrameSpec,
    p_off: &BTreeSet<VarId>,
    transpose_tiebreak: bool,
    stats: &mut Stats,
) -> Result<Grid, Failure> {
    const STAGE: &str = "par_pos_x";
    let k = spec.p_diag.len();
    let n = spec.n;
    let slot = slot_map(&spec.p_diag);
    let mut lsets: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); k];
    let mut poly_of: BTreeMap<(usize, VarId), usize> = BTreeMap::new();
    for (q, p) in work_n.polys.iter().enumerate() {
        for (m, coef) in p.terms() {
            let pairs = m.pairs();
            if pairs.len() != 2 || n < 2 {
                continue;
            }
            let hit = pairs.iter().enumerate().find_map(|(x, &(d, e))| {
                let (u, eu) = pairs[1 - x];
                (slot.contains_key(&d) && e == n - 1 && eu == 1 && p_off.contains(&u)).then_some((d, u))
            });
            let Some((d, u)) = hit else { continue };
            if stats.same(Phase::ParPosX, coef, &spec.c) {
                let i = slot[&d];
                lsets[i].insert(u);
                poly_of.insert((i, u), q);
            }
        }
    }
    for (i, l) in lsets.iter().enumerate() {
        if l.len() != 2 * k - 2 {
            return Err(Failure::mismatch(
                STAGE,
                format!("L set of x{} has {} elements, expected 2k-2 = {}", spec.p_diag[i], l.len(), 2 * k - 2),
            ));
        }
    }
    let mut pairs: BTreeMap<(usize, usize), Vec<VarId>> = BTreeMap::new();
    for &u in p_off {
        let owners: Vec<usize> = (0..k).filter(|&i| lsets[i].contains(&u)).collect();
        if owners.len() != 2 {
            return Err(Failure::mismatch(STAGE, format!("x{u} lies in {} L sets, expected 2", owners.len())));
        }
        pairs.entry((owners[0], owners[1])).or_default().push(u);
    }
    if pairs.len() != k * (k - 1) / 2 || pairs.values().any(|v| v.len() != 2) {
        return Err(Failure::mismatch(STAGE, "L set intersections are not pairs of variables"));
    }
    let pair = |i: usize, j: usize| &pairs[&(i.min(j), i.max(j))];
    let mut grid: Vec<Vec<Option<VarId>>> = vec![vec![None; k]; k];
    for i in 0..k {
        grid[i][i] = Some(spec.p_diag[i]);
    }
    let mut queue = VecDeque::new();
    let place = |grid: &mut Vec<Vec<Option<VarId>>>, queue: &mut VecDeque<(usize, usize, VarId)>, i: usize, j: usize, u: VarId| -> Result<(), Failure> {
        let pr = pair(i, j);
        let other = if pr[0] == u { pr[1] } else { pr[0] };
        match grid[i][j] {
            Some(x) if x == u => Ok(()),
            Some(x) => Err(Failure::mismatch(STAGE, format!("slot ({},{}) claimed by x{x} and x{u}", i + 1, j + 1))),
            None => {
                grid[i][j] = Some(u);
                grid[j][i] = Some(other);
                queue.push_back((i, j, u));
                queue.push_back((j, i, other));
                Ok(())
            }
        }
    };
    let first = pair(0, 1);
    let (lo, hi) = (first[0].min(first[1]), first[0].max(first[1]));
    place(&mut grid, &mut queue, 0, 1, if transpose_tiebreak { hi } else { lo })?;
    while let Some((i, j, u)) = queue.pop_front() {
        let q = &work_n.polys[poly_of[&(i, u)]];
        for m in 0..k {
            if m == i || m == j {
                continue;
            }
            let mut hits = Vec::new();
            for &a in pair(i, m) {
                for &b in pair(m, j) {
                    let mono = Monomial::from_pairs([(spec.p_diag[i], n - 2), (a, 1), (b, 1)]);
                    if let Some(c) = q.coeff_ref(&mono) {
                        if stats.same(Phase::ParPosX, c, &spec.c) {
                            hits.push((a, b));
                        }
                    }
                }
            }
            if hits.len() != 1 {
                return Err(Failure::mismatch(
                    STAGE,
                    format!("{} path monomials through slot {} for x{u}, expected 1", hits.len(), m + 1),
                ));
            }
            let (a, b) = hits[0];
            place(&mut grid, &mut queue, i, m, a)?;
            place(&mut grid, &mut queue, m, j, b)?;
        }
    }
    grid.into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<Grid>>()
        .ok_or_else(|| Failure::mismatch(STAGE, "grid left incomplete"))
}

/// PosPol: the diagonal slot i holds the polynomial with c·d_i^n, slot (i,j)
/// the unique polynomial with c·d_i^{n-1}·x_ij.
pub fn pos_pol(work_n: &PolyFamily, spec: &FrameSpec, grid: &Grid, stats: &mut Stats) -> Result<Placement, Failure> {
    const STAGE: &str = "pos_pol";
    let k = grid.len();
    let mut out = vec![vec![usize::MAX; k]; k];
    let mut used = BTreeSet::new();
    for i in 0..k {
        for j in 0..k {
            let d = spec.p_diag[i];
            let mono = if i == j {
                Monomial::power(d, spec.n)
            } else {
                Monomial::from_pairs([(d, spec.n - 1), (grid[i][j], 1)])
            };
            let mut hits = Vec::new();
            for (q, p) in work_n.polys.iter().enumerate() {
                if let Some(c) = p.coeff_ref(&mono) {
                    if stats.same(Phase::PosPol, c, &spec.c) {
                        hits.push(q);
                    }
                }
            }
            if hits.len() != 1 {
                return Err(Failure::mismatch(
                    STAGE,
                    format!("{} polynomials match slot ({},{}), expected 1", hits.len(), i + 1, j + 1),
                ));
            }
            if !used.insert(hits[0]) {
                return Err(Failure::mismatch(STAGE, format!("polynomial {} matches two slots", hits[0] + 1)));
            }
            out[i][j] = hits[0];
        }
    }
    Ok(out)
}

/// Candidate grids for the other letter, in the order they should be tried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OCandidates {
    pub grids: Vec<Grid>,
    /// "bucket" when read off directly, "enumerated" when searched.
    pub source: &'static str,
}

/// PosY for the other letter. Setting the primary letter to the identity
/// (diagonal → 1, off-diagonal → 0) turns the bidegree (s,t) words into
/// φ(s,t)·O^t, which lays O out directly whenever some φ(s,t) ≠ 0. When every
/// such sum vanishes, slots are constrained by the monomials with a single
/// O variable (their edges must form a walk from row to column) and the
/// surviving assignments are enumerated.
pub fn pos_o(original: &PolyFamily, p_grid: &Grid, placement: &Placement, part: &Partition, stats: &mut Stats) -> Result<OCandidates, Failure> {
    let k = p_grid.len();
    let diag: BTreeSet<VarId> = part.p_diag.iter().copied().collect();
    let mut buckets: BTreeMap<(u32, u32), Vec<Vec<CommPoly>>> = BTreeMap::new();
    for a in 0..k {
        for b in 0..k {
            for (m, c) in original.polys[placement[a][b]].terms() {
                let (mut s, mut t) = (0, 0);
                let mut o_part = Vec::new();
                let mut ok = true;
                for &(v, e) in m.pairs() {
                    if diag.contains(&v) {
                        s += e;
                    } else if part.o_vars.contains(&v) {
                        t += e;
                        o_part.push((v, e));
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok && t >= 1 {
                    buckets.entry((t, s)).or_insert_with(|| vec![vec![CommPoly::zero(); k]; k])[a][b]
                        .add_term(Monomial::from_pairs(o_part), c.clone());
                }
            }
        }
    }
    let mut grids: Vec<Grid> = Vec::new();
    for (&(t, _), bucket) in &buckets {
        if let Some(g) = read_bucket(bucket, t, part, stats) {
            if !grids.contains(&g) {
                grids.push(g);
            }
        }
    }
    if !grids.is_empty() {
        return Ok(OCandidates { grids, source: "bucket" });
    }
    let grids = enumerate_o(original, p_grid, placement, part);
    if grids.is_empty() {
        return Err(Failure::mismatch("pos_y", "no placement of the other letter is consistent with the family"));
    }
    Ok(OCandidates { grids, source: "enumerated" })
}

fn read_bucket(bucket: &[Vec<CommPoly>], t: u32, part: &Partition, stats: &mut Stats) -> Option<Grid> {
    let k = bucket.len();
    let mut grid = vec![vec![0; k]; k];
    let mut coef: Option<Rat> = None;
    let mut same = |c: &Rat, stats: &mut Stats| match &coef {
        None => {
            coef = Some(c.clone());
            true
        }
        Some(x) => stats.same(Phase::PosY, x, c),
    };
    for a in 0..k {
        let terms: Vec<(&Monomial, &Rat)> = bucket[a][a].terms().filter(|(m, _)| m.num_vars() == 1 && m.degree() == t).collect();
        if terms.len() != 1 || !same(terms[0].1, stats) {
            return None;
        }
        grid[a][a] = terms[0].0.pairs()[0].0;
        if let Some(o) = &part.o_diag {
            if o[a] != grid[a][a] {
                return None;
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let d = grid[a][a];
            let hits: Vec<(VarId, &Rat)> = bucket[a][b]
                .terms()
                .filter(|(m, _)| m.num_vars() == 2 && m.exponent(d) == t - 1 && m.degree() == t)
                .map(|(m, c)| (m.vars().find(|&v| v != d).unwrap(), c))
                .collect();
            if t == 1 {
                let all: Vec<_> = bucket[a][b].terms().collect();
                if all.len() != 1 || !same(all[0].1, stats) {
                    return None;
                }
                grid[a][b] = all[0].0.pairs()[0].0;
                continue;
            }
            if hits.len() != 1 || !same(hits[0].1, stats) {
                return None;
            }
            grid[a][b] = hits[0].0;
        }
    }
    let vars: BTreeSet<VarId> = grid.iter().flatten().copied().collect();
    (vars.len() == k * k && vars == part.o_vars).then_some(grid)
}

/// Whether a directed multigraph's edges form one trail from `a` to `b`.
pub(crate) fn has_trail(edges: &[(usize, usize)], a: usize, b: usize, k: usize) -> bool {
    let mut bal = vec![0i64; k];
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in edges {
        bal[u] += 1;
        bal[v] -= 1;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    let balanced = (0..k).all(|x| {
        let want = if a == b {
            0
        } else if x == a {
            1
        } else if x == b {
            -1
        } else {
            0
        };
        bal[x] == want
    });
    if !balanced {
        return false;
    }
    let root = find(&mut parent, a);
    edges.iter().all(|&(u, _)| find(&mut parent, u) == root)
}

fn enumerate_o(original: &PolyFamily, p_grid: &Grid, placement: &Placement, part: &Partition) -> Vec<Grid> {
    let k = p_grid.len();
    let mut p_slot: BTreeMap<VarId, (usize, usize)> = BTreeMap::new();
    for (i, row) in p_grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            p_slot.insert(v, (i, j));
        }
    }
    let all_slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let mut cands: BTreeMap<VarId, BTreeSet<(usize, usize)>> = part
        .o_vars
        .iter()
        .map(|&v| (v, all_slots.iter().copied().collect()))
        .collect();
    if let Some(o) = &part.o_diag {
        for (&v, set) in cands.iter_mut() {
            match o.iter().position(|&d| d == v) {
                Some(i) => set.retain(|&s| s == (i, i)),
                None => set.retain(|&(i, j)| i != j),
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for (m, _) in original.polys[placement[a][b]].terms() {
                let mut edges = Vec::new();
                let mut o_var = None;
                let mut ok = true;
                for &(v, e) in m.pairs() {
                    if let Some(&s) = p_slot.get(&v) {
                        edges.extend(std::iter::repeat(s).take(e as usize));
                    } else if e == 1 && o_var.is_none() {
                        o_var = Some(v);
                    } else {
                        ok = false;
                        break;
                    }
                }
                let (true, Some(o)) = (ok, o_var) else { continue };
                let set = cands.get_mut(&o).expect("o variable");
                set.retain(|&s| {
                    edges.push(s);
                    let r = has_trail(&edges, a, b, k);
                    edges.pop();
                    r
                });
            }
        }
    }
    let vars: Vec<VarId> = cands.keys().copied().collect();
    let options: Vec<Vec<(usize, usize)>> = vars.iter().map(|v| cands[v].iter().copied().collect()).collect();
    let mut out = Vec::new();
    let mut grid = vec![vec![0; k]; k];
    let mut used = BTreeSet::new();
    fn rec(
        idx: usize,
        vars: &[VarId],
        options: &[Vec<(usize, usize)>],
        grid: &mut Grid,
        used: &mut BTreeSet<(usize, usize)>,
        out: &mut Vec<Grid>,
    ) {
        if out.len() >= MAX_O_CANDIDATES {
            return;
        }
        if idx == vars.len() {
            out.push(grid.clone());
            return;
        }
        for &s in &options[idx] {
            if used.insert(s) {
                grid[s.0][s.1] = vars[idx];
                rec(idx + 1, vars, options, grid, used, out);
                used.remove(&s);
            }
        }
    }
    if vars.len() == k * k {
        rec(0, &vars, &options, &mut grid, &mut used, &mut out);
    }
    out
}
