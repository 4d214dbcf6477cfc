use crate::gadget::{build_r_frame, Builder};
use crate::{
    check_cap, BuildOptions, CnfFormula, CopyRegistry, InstanceKind, Params, ReductionError, ReductionInstance,
    SetVertices,
};

/// Closed-form vertex count of the rds instance.
pub fn rds_vertex_count(p: &Params) -> u128 {
    let (r, pp) = (p.r as u128, p.p as u128);
    let frame = r * (r + 1) / 2;
    let per_set = 1 + pp * (frame - 1) + (r - 1);
    let per_copy = pp * (2 * r + 2) + 2 * pp * frame + p.sets as u128 * per_set + 2 + 2 * (r - 1);
    let clause_slots = 2 * r * pp * p.t as u128 + 1;
    (p.t * p.copies) as u128 * per_copy + 2 + 4 * r + p.m as u128 * clause_slots * r
}

pub fn build_instance_rds(cnf: &CnfFormula, r: u32, p: usize) -> Result<ReductionInstance, ReductionError> {
    build_instance_rds_with(cnf, r, p, &BuildOptions::default())
}

pub fn build_instance_rds_with(
    cnf: &CnfFormula,
    r: u32,
    p: usize,
    opts: &BuildOptions,
) -> Result<ReductionInstance, ReductionError> {
    let params = Params::derive(cnf, r, p, 2 * r as u128 + 1, InstanceKind::Rds)?;
    let expected = check_cap(rds_vertex_count(&params), opts.vertex_cap)?;
    let len = 2 * r as usize + 2;
    let plain = build_r_frame(r, None)?;
    let avoiding: Vec<_> = (0..len).map(|i| build_r_frame(r, Some(i))).collect::<Result<_, _>>()?;

    let mut b = Builder::default();
    let mut global = Vec::new();
    let h = [b.vertex(), b.vertex()];
    for &v in &h {
        global.push(v);
        for _ in 0..2 {
            global.extend(b.tail(v, r));
        }
    }

    let mut copies = Vec::with_capacity(params.t);
    for _ in 0..params.t {
        let mut group: Vec<CopyRegistry> = Vec::with_capacity(params.copies);
        for _ in 0..params.copies {
            let start = b.g.n();
            let mut reg = CopyRegistry::default();
            for _ in 0..p {
                let path: Vec<usize> = (0..len).map(|_| b.vertex()).collect();
                for w in path.windows(2) {
                    b.edge(w[0], w[1]);
                }
                for _guard in 0..2 {
                    let fixed: Vec<_> = plain.bottom.iter().copied().zip(path.iter().copied()).collect();
                    b.embed(&plain.graph, &fixed);
                }
                reg.lines.push(path);
            }
            let hubs = [b.vertex(), b.vertex()];
            for &x in &hubs {
                b.tail(x, r - 1);
            }
            for a in 0..params.sets {
                let choice = params.choice(a);
                let top = b.vertex();
                for (path, &pos) in reg.lines.iter().zip(&choice) {
                    let f = &avoiding[pos];
                    let mut fixed: Vec<_> = f.bottom.iter().copied().zip(path.iter().copied()).collect();
                    fixed.push((f.top, top));
                    b.embed(&f.graph, &fixed);
                }
                let partner = b.vertex();
                b.link(top, partner, r - 1);
                for &x in &hubs {
                    b.edge(partner, x);
                }
                reg.sets.push(SetVertices { choice, top, partner, link: Vec::new() });
            }
            reg.hubs = hubs.to_vec();
            reg.vertices = (start..b.g.n()).collect();
            if let Some(prev) = group.last() {
                for (a, c) in prev.lines.iter().zip(&reg.lines) {
                    b.edge(a[len - 1], c[0]);
                }
            }
            group.push(reg);
        }
        for line in &group[0].lines {
            b.edge(h[0], line[0]);
        }
        for line in &group[params.copies - 1].lines {
            b.edge(h[1], line[len - 1]);
        }
        copies.push(group);
    }

    let slots = 2 * r as usize * p * params.t + 1;
    let clause_vertices = wire_clauses(&mut b, cnf, &params, &copies, slots, &mut global);

    let graph = b.g;
    if graph.n() != expected {
        return Err(ReductionError::Contract(format!("built {} vertices, closed form says {expected}", graph.n())));
    }
    Ok(ReductionInstance {
        kind: InstanceKind::Rds,
        target: (p + 1) * params.t * params.copies + 2,
        root: None,
        params,
        formula: cnf.clone(),
        repairs: crate::Repairs::NONE,
        expected_vertices: expected,
        copies,
        clause_vertices,
        global,
        anchors: h.to_vec(),
        graph,
    })
}

/// Clause vertex `c_j^l` sees `x̄_S` in copy `m*l + j` of every group whose
/// set `S` satisfies clause `j`, and carries a tail of length `r - 1`.
pub(crate) fn wire_clauses(
    b: &mut Builder,
    cnf: &CnfFormula,
    params: &Params,
    copies: &[Vec<CopyRegistry>],
    slots: usize,
    global: &mut Vec<usize>,
) -> Vec<Vec<usize>> {
    let m = params.m;
    let mut out = Vec::with_capacity(m);
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let mut row = Vec::with_capacity(slots);
        for l in 0..slots {
            let c = b.vertex();
            for (i, group) in copies.iter().enumerate() {
                for (a, set) in group[m * l + j].sets.iter().enumerate() {
                    if params.satisfies(clause, i, a) {
                        b.edge(c, set.partner);
                    }
                }
            }
            global.push(c);
            global.extend(b.tail(c, params.r - 1));
            row.push(c);
        }
        out.push(row);
    }
    out
}

/// Per copy, the path vertices the assignment's set picks plus `x̄_S`; then
/// `h_1` and `h_2`. The result is checked before it is returned.
pub fn witness_rds(inst: &ReductionInstance, assignment: &[bool]) -> Result<Vec<usize>, ReductionError> {
    if inst.kind != InstanceKind::Rds {
        return Err(ReductionError::Parameter("not an rds instance".into()));
    }
    let full = inst.padded(assignment)?;
    let mut set = Vec::with_capacity(inst.target);
    for (i, group) in inst.copies.iter().enumerate() {
        let a = inst.params.group_index(&full, i);
        for copy in group {
            let s = &copy.sets[a];
            set.extend(copy.lines.iter().zip(&s.choice).map(|(path, &pos)| path[pos]));
            set.push(s.partner);
        }
    }
    set.extend(&inst.anchors);
    inst.check_solution(&set)?;
    Ok(set)
}
