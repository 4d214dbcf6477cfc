//! Builds the SAT lower-bound instances for r-dominating set and connected
//! r-dominating set from CNF formulas, together with their target sizes and
//! the solutions that satisfying assignments induce.

mod cnf;
mod gadget;
mod rcds;
mod rds;

pub use cnf::{parse_cnf, CnfFormula};
pub use gadget::{build_pattern, build_r_frame, check_frame, check_pattern, Pattern, RFrame};
pub use rcds::{build_instance_rcds, build_instance_rcds_with, rcds_vertex_count, witness_rcds};
pub use rds::{build_instance_rds, build_instance_rds_with, rds_vertex_count, witness_rds};

use graph_core::{bfs_distances, is_connected, Graph};
use thiserror::Error;

pub const DEFAULT_VERTEX_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad formula: {0}")]
    Formula(String),
    #[error("radius must be at least 2, got {0}")]
    Radius(u32),
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("instance would have {vertices} vertices, cap is {cap}")]
    TooLarge { vertices: u128, cap: usize },
    #[error("assignment does not satisfy the formula")]
    Unsatisfied,
    #[error("assignment has {got} values, formula has {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("gadget contract violated: {0}")]
    Contract(String),
    #[error("witness check failed: {0}")]
    Witness(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Rds,
    Rcds,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Rds => "rds",
            InstanceKind::Rcds => "rcds",
        }
    }
}

/// Deviations from the connected construction as written, both on by
/// default. See the README for what each one fixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Repairs {
    /// Join every set-pattern vertex at depth two or more to the root by a
    /// path of length `r`.
    pub interior_links: bool,
    /// Close each super-path into a cycle: `a_{2r+3}` of the last copy is
    /// `a_1` of the first copy, the vertex joined to the root.
    pub closed_super_paths: bool,
}

impl Repairs {
    pub const NONE: Repairs = Repairs { interior_links: false, closed_super_paths: false };
}

impl Default for Repairs {
    fn default() -> Self {
        Repairs { interior_links: true, closed_super_paths: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub vertex_cap: usize,
    pub repairs: Repairs,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { vertex_cap: DEFAULT_VERTEX_CAP, repairs: Repairs::default() }
    }
}

/// Size parameters derived from the formula, `r` and `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub r: u32,
    pub p: usize,
    /// Variables in the input formula.
    pub n0: usize,
    /// Dummy variables appended so the groups come out even.
    pub padding: usize,
    pub m: usize,
    pub group_size: usize,
    pub t: usize,
    /// Gadget copies per group.
    pub copies: usize,
    /// Sets kept after pruning, `2^group_size`.
    pub sets: usize,
    /// Sets before pruning, saturating.
    pub set_space: u128,
}

impl Params {
    /// Group size is the largest `g` with `2^g <= log_base^p`.
    fn derive(cnf: &CnfFormula, r: u32, p: usize, log_base: u128, kind: InstanceKind) -> Result<Params, ReductionError> {
        if r < 2 {
            return Err(ReductionError::Radius(r));
        }
        if p == 0 {
            return Err(ReductionError::Parameter("p must be at least 1".into()));
        }
        if cnf.n0 == 0 || cnf.m() == 0 {
            return Err(ReductionError::Parameter("formula needs a variable and a clause".into()));
        }
        let big = |_| ReductionError::Parameter(format!("p = {p} is too large"));
        let pow = log_base.checked_pow(p as u32).ok_or(()).map_err(big)?;
        let group_size = (127 - pow.leading_zeros()) as usize;
        if group_size > 24 {
            return Err(ReductionError::Parameter(format!("group size {group_size} is too large")));
        }
        let t = cnf.n0.div_ceil(group_size);
        let padding = t * group_size - cnf.n0;
        let per = match kind {
            InstanceKind::Rds => 2 * r as usize * p * t,
            InstanceKind::Rcds => (2 * r as usize + 1) * p * t,
        };
        let positions = 2 * r as u128 + 2;
        Ok(Params {
            r,
            p,
            n0: cnf.n0,
            padding,
            m: cnf.m(),
            group_size,
            t,
            copies: cnf.m() * (per + 1),
            sets: 1 << group_size,
            set_space: positions.checked_pow(p as u32).unwrap_or(u128::MAX),
        })
    }

    /// Per path or core, the chosen position for set `a`; the first path
    /// is the most significant digit.
    pub fn choice(&self, a: usize) -> Vec<usize> {
        let base = 2 * self.r as usize + 2;
        let mut digits = vec![0; self.p];
        let mut x = a;
        for d in digits.iter_mut().rev() {
            *d = x % base;
            x /= base;
        }
        digits
    }

    /// Index of the set that group `i` takes under `assignment`: the group's
    /// variables read as a binary number, first variable most significant.
    pub fn group_index(&self, assignment: &[bool], i: usize) -> usize {
        (0..self.group_size).fold(0, |acc, q| {
            let v = i * self.group_size + q;
            acc << 1 | assignment.get(v).copied().unwrap_or(false) as usize
        })
    }

    /// Whether set `a` of group `i` satisfies some literal of `clause`.
    pub fn satisfies(&self, clause: &[i64], i: usize, a: usize) -> bool {
        let g = self.group_size;
        clause.iter().any(|&l| {
            let v = l.unsigned_abs() as usize - 1;
            v / g == i && ((a >> (g - 1 - v % g)) & 1 == 1) == (l > 0)
        })
    }
}

/// Vertices of one set `S` inside a gadget copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetVertices {
    /// Position per path (rds) or segment index per core (rcds), from 0.
    pub choice: Vec<usize>,
    /// `x_S`.
    pub top: usize,
    /// `x̄_S`.
    pub partner: usize,
    /// Connected instances only: the path from the root to `x̄_S`, root
    /// excluded, ending at `x̄_S`.
    pub link: Vec<usize>,
}

/// Bookkeeping for one gadget copy.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CopyRegistry {
    /// Every vertex of the copy. Core endpoints shared with a neighbouring
    /// copy are listed in both; with closed super-paths the last copy
    /// neighbours the first.
    pub vertices: Vec<usize>,
    /// Paths (rds, `2r + 2` vertices) or cores (rcds, `a_1..a_{2r+3}`).
    pub lines: Vec<Vec<usize>>,
    /// Connected instances only: per core and even vertex `a_{2u}`, the path
    /// from the root, root excluded, ending at `a_{2u}`.
    pub even_links: Vec<Vec<Vec<usize>>>,
    pub sets: Vec<SetVertices>,
    /// `x`, then `x′` for rds.
    pub hubs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub kind: InstanceKind,
    pub graph: Graph,
    /// Target solution size `k*`.
    pub target: usize,
    /// `r_T` for connected instances.
    pub root: Option<usize>,
    pub params: Params,
    pub formula: CnfFormula,
    /// Repairs in effect; interior links only exist for `r >= 3`.
    pub repairs: Repairs,
    /// Closed-form vertex count, computed before building.
    pub expected_vertices: usize,
    /// `copies[i][j]` is copy `j` of group `i`.
    pub copies: Vec<Vec<CopyRegistry>>,
    /// Clause vertices, `clause_vertices[j][l]`.
    pub clause_vertices: Vec<Vec<usize>>,
    /// Vertices outside every copy, clause vertices included.
    pub global: Vec<usize>,
    /// `h_1, h_2` for rds, `r_T` for rcds.
    pub anchors: Vec<usize>,
}

impl ReductionInstance {
    pub fn r(&self) -> u32 {
        self.params.r
    }

    /// Sorted distinct vertices named by the registries.
    pub fn registry_vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.copies.iter().flatten().flat_map(|c| c.vertices.iter().copied()).collect();
        all.extend(&self.global);
        all.sort_unstable();
        all.dedup();
        all
    }

    /// `key=value` lines describing the instance.
    pub fn sidecar(&self) -> String {
        let p = &self.params;
        let root = self.root.map_or("none".to_string(), |v| (v + 1).to_string());
        let mut out = String::new();
        let mut put = |k: &str, v: String| out.push_str(&format!("{k}={v}\n"));
        put("kind", self.kind.name().into());
        put("k_star", self.target.to_string());
        put("root", root);
        put("n", self.graph.n().to_string());
        put("m_edges", self.graph.m().to_string());
        put("r", p.r.to_string());
        put("p", p.p.to_string());
        put("n0", p.n0.to_string());
        put("clauses", p.m.to_string());
        put("padding", p.padding.to_string());
        put("group_size", p.group_size.to_string());
        put("groups", p.t.to_string());
        put("copies", p.copies.to_string());
        put("sets", p.sets.to_string());
        if self.kind == InstanceKind::Rcds {
            put("interior_links", self.repairs.interior_links.to_string());
            put("closed_super_paths", self.repairs.closed_super_paths.to_string());
        }
        out
    }

    pub(crate) fn padded(&self, assignment: &[bool]) -> Result<Vec<bool>, ReductionError> {
        if assignment.len() != self.formula.n0 {
            return Err(ReductionError::AssignmentLength { got: assignment.len(), want: self.formula.n0 });
        }
        if !self.formula.eval(assignment) {
            return Err(ReductionError::Unsatisfied);
        }
        let mut a = assignment.to_vec();
        a.resize(self.params.n0 + self.params.padding, false);
        Ok(a)
    }

    /// Size, domination and (for connected instances) connectivity.
    pub fn check_solution(&self, set: &[usize]) -> Result<(), ReductionError> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != set.len() || s.len() != self.target {
            return Err(ReductionError::Witness(format!(
                "{} vertices ({} distinct), want {}",
                set.len(),
                s.len(),
                self.target
            )));
        }
        let d = bfs_distances(&self.graph, &s, None).map_err(|e| ReductionError::Witness(e.to_string()))?;
        if let Some(v) = (0..self.graph.n()).find(|&v| !matches!(d.get(v), Some(x) if x <= self.r())) {
            return Err(ReductionError::Witness(format!("vertex {v} is not {}-dominated", self.r())));
        }
        if self.kind == InstanceKind::Rcds && !is_connected(&self.graph, &s) {
            return Err(ReductionError::Witness("solution is not connected".into()));
        }
        Ok(())
    }
}

pub(crate) fn check_cap(vertices: u128, cap: usize) -> Result<usize, ReductionError> {
    if vertices > cap as u128 {
        return Err(ReductionError::TooLarge { vertices, cap });
    }
    Ok(vertices as usize)
}
