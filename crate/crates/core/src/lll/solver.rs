use std::collections::BTreeSet;

use thiserror::Error;

use super::{Assignment, Instance};
use crate::rng::{solver_rng, uniform_symbol};

pub const DEFAULT_MAX_RESAMPLES: u64 = 1_000_000;
pub const DEFAULT_MAX_NODES: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("resample budget exhausted after {resamples} resamples ({violated} events still violated)")]
    BudgetExhausted { resamples: u64, violated: usize },
    #[error("search limit of {nodes} nodes reached")]
    SearchLimit { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtSolution {
    pub assignment: Assignment,
    pub resamples: u64,
}

/// Moser–Tardos resampling.
///
/// Every variable starts with a uniform symbol drawn in index order. While
/// some event is violated, the violated event with the lowest index has its
/// domain resampled in domain order. Only the resampled event and its
/// neighbours can change status, so those are the only ones re-checked.
pub fn solve_moser_tardos(inst: &Instance, seed: u64, max_resamples: u64) -> Result<MtSolution, SolveError> {
    let k = inst.k();
    let mut rng = solver_rng(seed);
    let mut values: Vec<u32> = (0..inst.universe().len()).map(|_| uniform_symbol(&mut rng, k)).collect();
    let events = inst.events();
    let mut violated: BTreeSet<usize> =
        (0..events.len()).filter(|&i| events[i].violated_by_values(&values)).collect();
    let mut resamples = 0u64;

    while let Some(&i) = violated.first() {
        if resamples >= max_resamples {
            return Err(SolveError::BudgetExhausted { resamples, violated: violated.len() });
        }
        for &v in events[i].domain() {
            values[v] = uniform_symbol(&mut rng, k);
        }
        resamples += 1;
        let affected = std::iter::once(i).chain(inst.neighbors[i].iter().copied());
        for j in affected {
            if events[j].violated_by_values(&values) {
                violated.insert(j);
            } else {
                violated.remove(&j);
            }
        }
    }

    let assignment = Assignment { values, k };
    let remaining = inst.verify_solution(&assignment);
    assert!(remaining.is_empty(), "resampling stopped with violated events {remaining:?}");
    Ok(MtSolution { assignment, resamples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BacktrackOutcome {
    Solved(Assignment),
    Unsatisfiable,
}

impl BacktrackOutcome {
    pub fn solution(&self) -> Option<&Assignment> {
        match self {
            BacktrackOutcome::Solved(a) => Some(a),
            BacktrackOutcome::Unsatisfiable => None,
        }
    }
}

pub fn solve_backtracking(inst: &Instance) -> Result<BacktrackOutcome, SolveError> {
    solve_backtracking_with(inst, DEFAULT_MAX_NODES)
}

/// Exhaustive depth-first search over variables in index order. An event is
/// checked as soon as its last variable is assigned. `max_nodes` caps the
/// number of partial assignments tried.
pub fn solve_backtracking_with(inst: &Instance, max_nodes: u64) -> Result<BacktrackOutcome, SolveError> {
    let n = inst.universe().len();
    let k = inst.k();
    let events = inst.events();
    let zeros = vec![0u32; n];
    let mut closes_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, ev) in events.iter().enumerate() {
        match ev.max_variable() {
            Some(v) => closes_at[v].push(i),
            None => {
                if ev.violated_by_values(&zeros) {
                    return Ok(BacktrackOutcome::Unsatisfiable);
                }
            }
        }
    }
    if n == 0 {
        return Ok(BacktrackOutcome::Solved(Assignment { values: Vec::new(), k }));
    }

    // values[depth] holds the symbol currently tried at `depth`; `k` means
    // exhausted.
    let mut values = vec![0u32; n];
    let mut depth = 0usize;
    let mut nodes = 0u64;
    loop {
        if values[depth] >= k {
            values[depth] = 0;
            if depth == 0 {
                return Ok(BacktrackOutcome::Unsatisfiable);
            }
            depth -= 1;
            values[depth] += 1;
            continue;
        }
        nodes += 1;
        if nodes > max_nodes {
            return Err(SolveError::SearchLimit { nodes: max_nodes });
        }
        let ok = closes_at[depth].iter().all(|&i| !events[i].violated_by_values(&values));
        if !ok {
            values[depth] += 1;
        } else if depth + 1 == n {
            let assignment = Assignment { values, k };
            debug_assert!(inst.verify_solution(&assignment).is_empty());
            return Ok(BacktrackOutcome::Solved(assignment));
        } else {
            depth += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::{BadEvent, VariableUniverse};

    fn inst(n: usize, events: Vec<BadEvent>) -> Instance {
        Instance::new(VariableUniverse::anonymous(n, 2).unwrap(), events).unwrap()
    }

    #[test]
    fn empty_instance_returns_initial_assignment() {
        let i = inst(5, vec![]);
        let s = solve_moser_tardos(&i, 3, 10).unwrap();
        assert_eq!(s.resamples, 0);
        assert_eq!(s.assignment.len(), 5);
        let again = solve_moser_tardos(&i, 3, 10).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn certain_event_exhausts_budget() {
        let i = inst(1, vec![BadEvent::explicit(vec![], vec![vec![]], 2).unwrap()]);
        assert_eq!(
            solve_moser_tardos(&i, 0, 50),
            Err(SolveError::BudgetExhausted { resamples: 50, violated: 1 })
        );
        assert_eq!(solve_backtracking(&i).unwrap(), BacktrackOutcome::Unsatisfiable);
    }

    #[test]
    fn backtracking_examples() {
        let one = inst(1, vec![BadEvent::explicit(vec![0], vec![vec![1]], 2).unwrap()]);
        let sol = solve_backtracking(&one).unwrap();
        assert_eq!(sol.solution().unwrap().values(), &[0]);

        let both = inst(
            1,
            vec![
                BadEvent::explicit(vec![0], vec![vec![0]], 2).unwrap(),
                BadEvent::explicit(vec![0], vec![vec![1]], 2).unwrap(),
            ],
        );
        assert_eq!(solve_backtracking(&both).unwrap(), BacktrackOutcome::Unsatisfiable);
        assert!(solve_moser_tardos(&both, 1, 100).is_err());
    }

    #[test]
    fn backtracking_finds_unique_solution() {
        // forbid every map on 3 variables except 101
        let forbidden: Vec<Vec<u32>> = (0..8u32)
            .filter(|&x| x != 0b101)
            .map(|x| vec![x >> 2 & 1, x >> 1 & 1, x & 1])
            .collect();
        let i = inst(3, vec![BadEvent::explicit(vec![2, 0, 1], forbidden, 2).unwrap()]);
        // domain order is (v2, v0, v1) = (1, 0, 1)
        let sol = solve_backtracking(&i).unwrap();
        assert_eq!(sol.solution().unwrap().values(), &[0, 1, 1]);
        let mt = solve_moser_tardos(&i, 9, 10_000).unwrap();
        assert_eq!(mt.assignment.values(), &[0, 1, 1]);
    }

    #[test]
    fn search_limit() {
        // unsatisfiability only shows up at the last variable
        let events: Vec<BadEvent> = (0..10)
            .map(|v| BadEvent::explicit(vec![v, 10], vec![vec![0, 0], vec![1, 0]], 2).unwrap())
            .chain(std::iter::once(BadEvent::explicit(vec![10], vec![vec![1]], 2).unwrap()))
            .collect();
        let i = inst(11, events);
        assert_eq!(solve_backtracking(&i).unwrap(), BacktrackOutcome::Unsatisfiable);
        assert_eq!(solve_backtracking_with(&i, 100), Err(SolveError::SearchLimit { nodes: 100 }));
    }
}
