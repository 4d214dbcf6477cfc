use crate::ReductionError;

/// CNF over variables `1..=n0`; literals are signed variable ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub n0: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(n0: usize, clauses: Vec<Vec<i64>>) -> Result<Self, ReductionError> {
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(ReductionError::Formula(format!("clause {} is empty", j + 1)));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > n0) {
                return Err(ReductionError::Formula(format!("literal {l} out of range in clause {}", j + 1)));
            }
        }
        Ok(CnfFormula { n0, clauses })
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    /// `assignment[v]` is the value of variable `v + 1`. Missing values
    /// count as false.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| literal_true(l, assignment)))
    }

    /// All satisfying assignments, in binary counting order with variable 1
    /// as the lowest bit. Only sensible for small `n0`.
    pub fn satisfying_assignments(&self) -> Vec<Vec<bool>> {
        assert!(self.n0 <= 24, "too many variables to enumerate");
        (0u32..1 << self.n0)
            .map(|bits| (0..self.n0).map(|v| bits >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|a| self.eval(a))
            .collect()
    }
}

pub(crate) fn literal_true(l: i64, assignment: &[bool]) -> bool {
    let v = assignment.get(l.unsigned_abs() as usize - 1).copied().unwrap_or(false);
    v == (l > 0)
}

/// DIMACS CNF. Comment lines start with `c`; a `%` line ends the input.
pub fn parse_cnf(text: &str) -> Result<CnfFormula, ReductionError> {
    let err = |line: usize, msg: String| ReductionError::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        last_line = i + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(i + 1, "second header".into()));
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(err(i + 1, format!("bad header {line:?}")));
            }
            let n = f[2].parse().map_err(|_| err(i + 1, format!("bad variable count {:?}", f[2])))?;
            let m = f[3].parse().map_err(|_| err(i + 1, format!("bad clause count {:?}", f[3])))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(i + 1, "clause before header".into()));
        };
        for tok in line.split_whitespace() {
            let l: i64 = tok.parse().map_err(|_| err(i + 1, format!("bad literal {tok:?}")))?;
            if l == 0 {
                if current.is_empty() {
                    return Err(err(i + 1, "empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > n {
                return Err(err(i + 1, format!("literal {l} exceeds {n} variables")));
            } else {
                current.push(l);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), "missing header".into()));
    };
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(err(last_line, format!("header says {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses)
}
