use std::fmt::Write;

use super::{Assignment, ClauseList, CnfInstance, SatError};

/// `p cnf V C` followed by one `0`-terminated clause per line.
pub fn export_dimacs(cnf: &CnfInstance) -> String {
    let clauses = cnf.clauses();
    let mut out = format!("p cnf {} {}\n", cnf.num_vars(), clauses.len());
    for clause in clauses.iter() {
        for lit in clause {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

fn malformed(line: usize, message: impl Into<String>) -> SatError {
    SatError::Malformed {
        line,
        message: message.into(),
    }
}

/// Parses a DIMACS CNF file into `(variable count, clauses)`.
pub fn parse_dimacs(text: &str) -> Result<(usize, ClauseList), SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = ClauseList::default();
    let mut current = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() || parts.len() != 3 || parts[0] != "cnf" {
                return Err(malformed(line_no, "bad problem line"));
            }
            let vars = parts[1].parse().map_err(|_| malformed(line_no, "bad variable count"))?;
            let count = parts[2].parse().map_err(|_| malformed(line_no, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| malformed(line_no, "clause before problem line"))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| malformed(line_no, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                clauses.push(&current);
                current.clear();
            } else if lit.unsigned_abs() as usize > vars {
                return Err(malformed(line_no, format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| malformed(0, "missing problem line"))?;
    if !current.is_empty() {
        return Err(malformed(0, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(malformed(0, format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Ok((vars, clauses))
}

/// Reads a solver answer: `v`-lines (as printed by common solvers, with an
/// optional `s SATISFIABLE` line) or one literal per line.
pub fn import_assignment(text: &str) -> Result<Assignment, SatError> {
    let mut assignment = Assignment::from_values(Vec::new());
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(status) = line.strip_prefix('s') {
            if status.trim() == "UNSATISFIABLE" {
                return Err(malformed(idx + 1, "solver reported UNSATISFIABLE"));
            }
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| malformed(idx + 1, format!("bad literal {tok:?}")))?;
            if lit != 0 {
                assignment.set(lit.unsigned_abs() as usize, lit > 0);
            }
        }
    }
    Ok(assignment)
}
