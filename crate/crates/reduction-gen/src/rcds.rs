use crate::gadget::{build_pattern, Builder, Pattern};
use crate::rds::wire_clauses;
use crate::{
    check_cap, BuildOptions, CnfFormula, CopyRegistry, InstanceKind, Params, ReductionError, ReductionInstance,
    Repairs, SetVertices,
};

/// Stem and branch lengths of a pattern for radius `r`.
fn pattern_shape(r: u128) -> (u128, u128) {
    if r % 2 == 0 {
        (r / 2 - 1, r / 2)
    } else {
        ((r - 1) / 2, (r - 1) / 2)
    }
}

/// Non-leaf vertices of a pattern with `m` leaves.
fn pattern_interior(r: u128, m: u128) -> u128 {
    let (stem, branch) = pattern_shape(r);
    stem + 1 + m * branch
}

/// Non-leaf vertices at depth two or more.
fn pattern_deep(r: u128, m: u128) -> u128 {
    let (stem, branch) = pattern_shape(r);
    stem.saturating_sub(1) + m * (branch - (stem == 0) as u128)
}

/// Closed-form vertex count of the rcds instance.
pub fn rcds_vertex_count(p: &Params, repairs: &Repairs) -> u128 {
    let (r, pp, sets) = (p.r as u128, p.p as u128, p.sets as u128);
    let core = (2 * r + 2) + (2 * r + 1) + (r + 1) * r + (r + 2) * pattern_interior(r, r + 1);
    let extra = if repairs.interior_links { pattern_deep(r, 2 * r * pp) * (r - 1) } else { 0 };
    let per_set = pattern_interior(r, 2 * r * pp) + (r - 1) + r + extra;
    let per_copy = pp * core + sets * per_set + r * pattern_interior(r, sets) + 1 + (r - 1);
    let open_ends = if repairs.closed_super_paths { 0 } else { pp };
    let groups = p.t as u128 * (p.copies as u128 * per_copy + open_ends);
    let clause_slots = (2 * r + 1) * pp * p.t as u128 + 1;
    groups + 1 + r + p.m as u128 * clause_slots * r
}

pub fn build_instance_rcds(cnf: &CnfFormula, r: u32, p: usize) -> Result<ReductionInstance, ReductionError> {
    build_instance_rcds_with(cnf, r, p, &BuildOptions::default())
}

fn attach(b: &mut Builder, pat: &Pattern, leaves: &[usize]) -> Vec<usize> {
    let fixed: Vec<_> = pat.leaves.iter().copied().zip(leaves.iter().copied()).collect();
    b.embed(&pat.graph, &fixed)
}

/// Leaves of the pattern for a set choosing segment `j` (from 0) of `core`:
/// every core vertex but the last, minus the segment's endpoints; for the
/// final segment the vertices `a_2..a_{2r+1}`.
fn set_leaves(core: &[usize], j: usize, r: usize) -> impl Iterator<Item = usize> + '_ {
    let last = 2 * r + 1;
    (0..=last)
        .filter(move |&q| if j == last { q != 0 && q != last } else { q != j && q != j + 1 })
        .map(move |q| core[q])
}

pub fn build_instance_rcds_with(
    cnf: &CnfFormula,
    r: u32,
    p: usize,
    opts: &BuildOptions,
) -> Result<ReductionInstance, ReductionError> {
    let params = Params::derive(cnf, r, p, 2 * r as u128 + 2, InstanceKind::Rcds)?;
    let expected = check_cap(rcds_vertex_count(&params, &opts.repairs), opts.vertex_cap)?;
    let ru = r as usize;
    let span = 2 * ru + 2;
    let core_pattern = build_pattern(r, ru + 1)?;
    let set_pattern = build_pattern(r, 2 * ru * p)?;
    let forcing = build_pattern(r, params.sets)?;
    let deep: Vec<usize> = set_pattern.interior().filter(|&v| set_pattern.depth[v] >= 2).collect();
    let closed = opts.repairs.closed_super_paths;
    let links = opts.repairs.interior_links;

    let mut b = Builder::default();
    let root = b.vertex();
    let mut global = vec![root];
    global.extend(b.tail(root, r));

    let mut copies = Vec::with_capacity(params.t);
    for _ in 0..params.t {
        let lines: Vec<Vec<usize>> = (0..p)
            .map(|_| {
                let mut line: Vec<usize> = (0..params.copies * span + 1 - closed as usize).map(|_| b.vertex()).collect();
                b.edge(root, line[0]);
                if closed {
                    line.push(line[0]);
                } else {
                    b.edge(root, line[line.len() - 1]);
                }
                for w in line.windows(2) {
                    b.edge(w[0], w[1]);
                }
                line
            })
            .collect();
        let mut group = Vec::with_capacity(params.copies);
        for c in 0..params.copies {
            let start = b.g.n();
            let mut reg = CopyRegistry::default();
            for line in &lines {
                let a = line[c * span..=c * span + span].to_vec();
                for q in 0..span - 1 {
                    let s = b.vertex();
                    b.edge(a[q], s);
                    b.edge(s, a[q + 2]);
                }
                let evens: Vec<Vec<usize>> = (1..=ru + 1)
                    .map(|u| {
                        let mut path = b.link(root, a[2 * u - 1], r + 1);
                        path.push(a[2 * u - 1]);
                        path
                    })
                    .collect();
                let odd: Vec<usize> = (0..=ru).map(|u| a[2 * u]).collect();
                let even: Vec<usize> = (0..=ru).map(|u| a[2 * u + 1]).collect();
                attach(&mut b, &core_pattern, &odd);
                attach(&mut b, &core_pattern, &even);
                for level in 0..ru {
                    let leaves: Vec<usize> = evens.iter().map(|e| e[level]).collect();
                    attach(&mut b, &core_pattern, &leaves);
                }
                reg.lines.push(a);
                reg.even_links.push(evens);
            }
            let x = b.vertex();
            b.tail(x, r - 1);
            for a in 0..params.sets {
                let choice = params.choice(a);
                let mut leaves: Vec<usize> = Vec::with_capacity(2 * ru * p);
                for (core, &j) in reg.lines.iter().zip(&choice) {
                    leaves.extend(set_leaves(core, j, ru));
                }
                let map = attach(&mut b, &set_pattern, &leaves);
                let top = map[set_pattern.root];
                if links {
                    for &v in &deep {
                        b.link(root, map[v], r);
                    }
                }
                let partner = b.vertex();
                b.link(top, partner, r - 1);
                let mut link = b.link(root, partner, r + 1);
                link.push(partner);
                b.edge(partner, x);
                reg.sets.push(SetVertices { choice, top, partner, link });
            }
            for level in 0..ru {
                let leaves: Vec<usize> = reg.sets.iter().map(|s| s.link[level]).collect();
                attach(&mut b, &forcing, &leaves);
            }
            reg.hubs = vec![x];
            reg.vertices = (start..b.g.n()).collect();
            reg.vertices.extend(reg.lines.iter().flatten());
            reg.vertices.sort_unstable();
            reg.vertices.dedup();
            group.push(reg);
        }
        copies.push(group);
    }

    let slots = (2 * ru + 1) * p * params.t + 1;
    let clause_vertices = wire_clauses(&mut b, cnf, &params, &copies, slots, &mut global);

    let graph = b.g;
    if graph.n() != expected {
        return Err(ReductionError::Contract(format!("built {} vertices, closed form says {expected}", graph.n())));
    }
    Ok(ReductionInstance {
        kind: InstanceKind::Rcds,
        target: ((ru + 2) * p + ru + 1) * params.t * params.copies + 1,
        root: Some(root),
        params,
        formula: cnf.clone(),
        repairs: Repairs { interior_links: links && !deep.is_empty(), closed_super_paths: closed },
        expected_vertices: expected,
        copies,
        clause_vertices,
        global,
        anchors: vec![root],
        graph,
    })
}

/// The root, then per copy and core the root path to the even endpoint of
/// the chosen segment plus its odd endpoint, and the root path to `x̄_S`.
/// The result is checked before it is returned.
pub fn witness_rcds(inst: &ReductionInstance, assignment: &[bool]) -> Result<Vec<usize>, ReductionError> {
    let Some(root) = inst.root.filter(|_| inst.kind == InstanceKind::Rcds) else {
        return Err(ReductionError::Parameter("not an rcds instance".into()));
    };
    let full = inst.padded(assignment)?;
    let mut set = vec![root];
    for (i, group) in inst.copies.iter().enumerate() {
        let a = inst.params.group_index(&full, i);
        for copy in group {
            let s = &copy.sets[a];
            for ((core, evens), &j) in copy.lines.iter().zip(&copy.even_links).zip(&s.choice) {
                let (even, odd) = if j % 2 == 1 { (j, j + 1) } else { (j + 1, j) };
                set.extend(&evens[(even - 1) / 2]);
                set.push(core[odd]);
            }
            set.extend(&s.link);
        }
    }
    inst.check_solution(&set)?;
    Ok(set)
}
