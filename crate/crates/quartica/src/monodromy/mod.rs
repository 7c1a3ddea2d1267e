//! Local monodromy of the Kodaira fiber types on torsion points of the
//! general fiber, and the case analysis it forces on fibrations whose
//! trisection points differ by torsion of order m.

use std::collections::BTreeSet;

use crate::cubiclaw::classify::KodairaType;
use crate::error::AlgebraError;

/// A 2x2 integer matrix of determinant one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonodromyMatrix {
    pub entries: [[i64; 2]; 2],
    pub kodaira: KodairaType,
}

impl MonodromyMatrix {
    pub fn mul(&self, other: &MonodromyMatrix) -> [[i64; 2]; 2] {
        mat_mul(&self.entries, &other.entries)
    }

    pub fn det(&self) -> i64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn pow(&self, n: u32) -> [[i64; 2]; 2] {
        let mut acc = IDENTITY;
        for _ in 0..n {
            acc = mat_mul(&acc, &self.entries);
        }
        acc
    }
}

pub const IDENTITY: [[i64; 2]; 2] = [[1, 0], [0, 1]];
pub const MINUS_IDENTITY: [[i64; 2]; 2] = [[-1, 0], [0, -1]];

pub fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// The classical local monodromy table.
pub fn kodaira_matrix(ty: KodairaType) -> Result<MonodromyMatrix, AlgebraError> {
    let entries = match ty {
        KodairaType::I(b) => {
            if b == 0 {
                return Err(AlgebraError::Precondition("I_b needs b >= 1".into()));
            }
            [[1, b as i64], [0, 1]]
        }
        KodairaType::II => [[1, 1], [-1, 0]],
        KodairaType::III => [[0, 1], [-1, 0]],
        KodairaType::IV => [[0, 1], [-1, -1]],
    };
    Ok(MonodromyMatrix { entries, kodaira: ty })
}

/// Exact order of an element of (Z/m)^2.
fn vec_order(v: (u64, u64), m: u64) -> u64 {
    use num_integer::Integer;
    let g = v.0.gcd(&v.1).gcd(&m);
    m / g
}

/// The fixed subgroup of a monodromy matrix acting on (Z/m)^2, with
/// canonical generators, its order, and the list of fixed points of exact
/// order m.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedTorsion {
    pub m: u64,
    pub order: u64,
    pub generators: Vec<(u64, u64)>,
    pub fixed_primitive: Vec<(u64, u64)>,
}

const FIXED_TORSION_DESK_BOUND: u64 = 1024;

pub fn fixed_torsion(mat: &MonodromyMatrix, m: u64) -> Result<FixedTorsion, AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::Precondition("m must be >= 2".into()));
    }
    if m > FIXED_TORSION_DESK_BOUND {
        return Err(AlgebraError::Precondition(format!(
            "m = {m} exceeds the enumeration bound {FIXED_TORSION_DESK_BOUND}"
        )));
    }
    let mm = m as i64;
    let fixes = |x: u64, y: u64| -> bool {
        let (xi, yi) = (x as i64, y as i64);
        let fx = (mat.entries[0][0] * xi + mat.entries[0][1] * yi - xi).rem_euclid(mm);
        let fy = (mat.entries[1][0] * xi + mat.entries[1][1] * yi - yi).rem_euclid(mm);
        fx == 0 && fy == 0
    };
    let mut fixed: Vec<(u64, u64)> = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if fixes(x, y) {
                fixed.push((x, y));
            }
        }
    }
    let order = fixed.len() as u64;
    let fixed_primitive: Vec<(u64, u64)> = fixed
        .iter()
        .copied()
        .filter(|&v| vec_order(v, m) == m)
        .collect();
    // canonical generators: first element of maximal order, then the first
    // element completing the subgroup
    let mut generators = Vec::new();
    if order > 1 {
        let g1 = fixed
            .iter()
            .copied()
            .filter(|&v| v != (0, 0))
            .max_by_key(|&v| (vec_order(v, m), std::cmp::Reverse(v)))
            .expect("nontrivial subgroup");
        generators.push(g1);
        let span_of = |gens: &[(u64, u64)]| -> BTreeSet<(u64, u64)> {
            let mut set = BTreeSet::new();
            set.insert((0, 0));
            let mut frontier = vec![(0u64, 0u64)];
            while let Some(v) = frontier.pop() {
                for g in gens {
                    let w = ((v.0 + g.0) % m, (v.1 + g.1) % m);
                    if set.insert(w) {
                        frontier.push(w);
                    }
                }
            }
            set
        };
        let span = span_of(&generators);
        if span.len() as u64 != order {
            let g2 = fixed
                .iter()
                .copied()
                .find(|v| !span.contains(v))
                .expect("second generator exists");
            generators.push(g2);
            debug_assert_eq!(span_of(&generators).len() as u64, order);
        }
    }
    Ok(FixedTorsion { m, order, generators, fixed_primitive })
}

/// Count constraint for one fiber type in the Euler budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CountConstraint {
    Exactly(u32),
    Free,
}

/// All nonnegative solutions of sum(count_i * euler_i) = 24 under the
/// given per-type constraints. Solutions list the counts in input order.
pub fn euler_budget_solver(types: &[(KodairaType, CountConstraint)]) -> Vec<Vec<u32>> {
    fn rec(
        types: &[(KodairaType, CountConstraint)],
        idx: usize,
        remaining: i64,
        counts: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == types.len() {
            if remaining == 0 {
                out.push(counts.clone());
            }
            return;
        }
        let e = types[idx].0.euler() as i64;
        match types[idx].1 {
            CountConstraint::Exactly(n) => {
                let used = e * n as i64;
                if used <= remaining {
                    counts[idx] = n;
                    rec(types, idx + 1, remaining - used, counts, out);
                    counts[idx] = 0;
                }
            }
            CountConstraint::Free => {
                let max = remaining / e;
                for n in 0..=max {
                    counts[idx] = n as u32;
                    rec(types, idx + 1, remaining - e * n, counts, out);
                }
                counts[idx] = 0;
            }
        }
    }
    let mut solutions = Vec::new();
    let mut counts = vec![0u32; types.len()];
    rec(types, 0, 24, &mut counts, &mut solutions);
    solutions
}

/// Minimal number of singular fibers over every way of writing 24 as a
/// sum of fiber Euler numbers.
pub fn minimal_singular_fiber_count() -> u32 {
    let types = [
        (KodairaType::I(1), CountConstraint::Free),
        (KodairaType::I(2), CountConstraint::Free),
        (KodairaType::I(3), CountConstraint::Free),
        (KodairaType::II, CountConstraint::Free),
        (KodairaType::III, CountConstraint::Free),
        (KodairaType::IV, CountConstraint::Free),
    ];
    euler_budget_solver(&types)
        .into_iter()
        .map(|sol| sol.iter().sum::<u32>())
        .min()
        .expect("24 = 6 * 4 is a solution")
}

/// Structures that a triple of torsion classes (a, b, c) with a+b+c = 0
/// and exact order m can have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleStructures {
    pub all_equal: bool,
    pub cyclic_distinct: bool,
    pub noncyclic: bool,
}

/// Enumerate the possible structures of the difference classes.
pub fn triple_structures(m: u64) -> TripleStructures {
    let mut st = TripleStructures { all_equal: false, cyclic_distinct: false, noncyclic: false };
    let in_cyclic = |a: (u64, u64), b: (u64, u64)| -> bool {
        let mut cur = (0u64, 0u64);
        for _ in 0..m {
            cur = ((cur.0 + a.0) % m, (cur.1 + a.1) % m);
            if cur == b {
                return true;
            }
        }
        b == (0, 0)
    };
    for x1 in 0..m {
        for y1 in 0..m {
            let a = (x1, y1);
            if vec_order(a, m) != m {
                continue;
            }
            for x2 in 0..m {
                for y2 in 0..m {
                    let b = (x2, y2);
                    if vec_order(b, m) != m {
                        continue;
                    }
                    let c = ((2 * m - a.0 - b.0) % m, (2 * m - a.1 - b.1) % m);
                    if vec_order(c, m) != m {
                        continue;
                    }
                    if a == b && b == c {
                        st.all_equal = true;
                    } else if in_cyclic(a, b) && in_cyclic(a, c) {
                        st.cyclic_distinct = true;
                    } else {
                        st.noncyclic = true;
                    }
                }
            }
        }
    }
    st
}

/// The verdict of the torsion case analysis for a given order m.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseVerdict {
    pub m: u64,
    pub allowed_transverse_types: Vec<KodairaType>,
    pub required_nontransverse_types: Vec<KodairaType>,
    pub min_i2_count: Option<u32>,
    pub min_lines_meeting_l: u32,
    pub euler_equation_solvable: bool,
}

pub const PLANE_CUBIC_TYPES: [KodairaType; 6] = [
    KodairaType::I(1),
    KodairaType::I(2),
    KodairaType::I(3),
    KodairaType::II,
    KodairaType::III,
    KodairaType::IV,
];

/// Case analysis for the hypothesis that the three trisection points
/// differ by torsion of exact order m. Derived from the fixed-subgroup
/// computations and the Euler budget; the classical conclusions serve as
/// regression oracles in the tests.
pub fn case_analysis(m: u64) -> Result<CaseVerdict, AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::Precondition("m must be >= 2".into()));
    }
    let st = triple_structures(m.min(30));

    // transverse fibers act trivially on the three points, hence fix each
    // difference class
    let allowed_transverse: Vec<KodairaType> = if m == 2 {
        // the classes are all three elements of order 2 (the noncyclic
        // structure is forced), so the monodromy must fix (Z/2)^2
        debug_assert!(st.noncyclic && !st.all_equal && !st.cyclic_distinct);
        PLANE_CUBIC_TYPES
            .into_iter()
            .filter(|ty| {
                let mt = kodaira_matrix(*ty).expect("table type");
                fixed_torsion(&mt, 2).map(|f| f.order == 4).unwrap_or(false)
            })
            .collect()
    } else {
        // the classes generate a cyclic group of order m; the monodromy
        // must fix a point of exact order m
        PLANE_CUBIC_TYPES
            .into_iter()
            .filter(|ty| {
                let mt = kodaira_matrix(*ty).expect("table type");
                fixed_torsion(&mt, m)
                    .map(|f| !f.fixed_primitive.is_empty())
                    .unwrap_or(false)
            })
            .collect()
    };

    // fibers not transverse to the line
    let required_nontransverse: Vec<KodairaType> = if m == 2 {
        // double or triple contact; any type with nontrivial action on the
        // 2-torsion can occur
        vec![KodairaType::II, KodairaType::III, KodairaType::IV]
    } else {
        // exactly two fibers, each with a triple contact point and cyclic
        // point monodromy of order 3. Necessary conditions on the table:
        //   I_b is unipotent: its only eigenvalue is 1, so it cannot move
        //        the classes cyclically;
        //   II has M^3 = -1, which would force 2a = 0;
        //   III has M^2 = -1, likewise;
        //   IV survives (its eigenvalues are primitive cube roots of one).
        let mut out = Vec::new();
        for ty in [KodairaType::II, KodairaType::III, KodairaType::IV] {
            let mt = kodaira_matrix(ty).expect("table type");
            let excluded_by_cube = mt.pow(3) == MINUS_IDENTITY && m != 2;
            let excluded_by_square = mt.pow(2) == MINUS_IDENTITY && m != 2;
            if !(excluded_by_cube || excluded_by_square) {
                out.push(ty);
            }
        }
        out
    };

    // Euler budgets
    let (euler_equation_solvable, min_i2_count, min_lines) = match m {
        2 => {
            // non-transverse fibers contribute at most 8 (two of type IV);
            // the rest must be type I2
            let sols = euler_budget_solver(&[
                (KodairaType::IV, CountConstraint::Exactly(2)),
                (KodairaType::I(2), CountConstraint::Free),
            ]);
            debug_assert_eq!(sols, vec![vec![2, 8]]);
            let min_i2 = sols.iter().map(|s| s[1]).min().unwrap_or(0);
            (true, Some(min_i2), min_i2)
        }
        3 => {
            // the non-cyclic scenario would force every transverse fiber
            // to be of type I3 next to the two type-IV fibers; the budget
            // 24 = 2*4 + 3*delta has no solution, so the cyclic (flex)
            // scenario is the only one left
            let sols = euler_budget_solver(&[
                (KodairaType::IV, CountConstraint::Exactly(2)),
                (KodairaType::I(3), CountConstraint::Free),
            ]);
            (!sols.is_empty(), None, 6)
        }
        _ => {
            // two type-IV fibers account for 8; the remaining 16 comes
            // from I_b fibers, which is always solvable
            let sols = euler_budget_solver(&[
                (KodairaType::IV, CountConstraint::Exactly(2)),
                (KodairaType::I(1), CountConstraint::Free),
            ]);
            (!sols.is_empty(), None, 6)
        }
    };

    Ok(CaseVerdict {
        m,
        allowed_transverse_types: allowed_transverse,
        required_nontransverse_types: required_nontransverse,
        min_i2_count,
        min_lines_meeting_l: min_lines,
        euler_equation_solvable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matrices_and_their_identities() {
        let m2 = kodaira_matrix(KodairaType::II).unwrap();
        assert_eq!(m2.entries, [[1, 1], [-1, 0]]);
        assert_eq!(m2.pow(3), MINUS_IDENTITY);
        assert_eq!(m2.pow(6), IDENTITY);
        let m3 = kodaira_matrix(KodairaType::III).unwrap();
        assert_eq!(m3.pow(4), IDENTITY);
        let m4 = kodaira_matrix(KodairaType::IV).unwrap();
        assert_eq!(m4.pow(3), IDENTITY);
        // I_b has infinite order
        let mb = kodaira_matrix(KodairaType::I(2)).unwrap();
        for n in 1..=60 {
            assert_ne!(mb.pow(n), IDENTITY);
        }
        // determinants and characteristic polynomial traces
        for ty in PLANE_CUBIC_TYPES {
            let m = kodaira_matrix(ty).unwrap();
            assert_eq!(m.det(), 1);
        }
        assert_eq!(m2.trace(), 1); // lambda^2 - lambda + 1
        assert_eq!(m3.trace(), 0); // lambda^2 + 1
        assert_eq!(m4.trace(), -1); // lambda^2 + lambda + 1
    }

    #[test]
    fn fixed_torsion_examples() {
        // I_1 at m = 5 fixes the cyclic subgroup {(x, 0)}
        let m1 = kodaira_matrix(KodairaType::I(1)).unwrap();
        let f = fixed_torsion(&m1, 5).unwrap();
        assert_eq!(f.order, 5);
        assert_eq!(f.fixed_primitive.len(), 4);
        assert!(f.fixed_primitive.iter().all(|&(_, y)| y == 0));
        // II at m = 5 fixes nothing of order 5
        let m2 = kodaira_matrix(KodairaType::II).unwrap();
        let f = fixed_torsion(&m2, 5).unwrap();
        assert!(f.fixed_primitive.is_empty());
        assert_eq!(f.order, 1);
        // III at m = 2 fixes exactly {(0,0), (1,1)}
        let m3 = kodaira_matrix(KodairaType::III).unwrap();
        let f = fixed_torsion(&m3, 2).unwrap();
        assert_eq!(f.order, 2);
        assert_eq!(f.fixed_primitive, vec![(1, 1)]);
    }

    #[test]
    fn fixed_subgroup_is_closed_under_addition() {
        for ty in PLANE_CUBIC_TYPES {
            let mat = kodaira_matrix(ty).unwrap();
            for m in 2..=30u64 {
                let f = fixed_torsion(&mat, m).unwrap();
                let mut set = std::collections::BTreeSet::new();
                set.insert((0u64, 0u64));
                let mut frontier = vec![(0u64, 0u64)];
                while let Some(v) = frontier.pop() {
                    for g in &f.generators {
                        let w = ((v.0 + g.0) % m, (v.1 + g.1) % m);
                        if set.insert(w) {
                            frontier.push(w);
                        }
                    }
                }
                assert_eq!(set.len() as u64, f.order, "type {ty} m {m}");
            }
        }
    }

    #[test]
    fn case_analysis_reproduces_the_three_cases() {
        // m = 2: transverse fibers must be I2; at least 8 of them
        let v2 = case_analysis(2).unwrap();
        assert_eq!(v2.allowed_transverse_types, vec![KodairaType::I(2)]);
        assert_eq!(v2.min_i2_count, Some(8));
        assert_eq!(v2.min_lines_meeting_l, 8);
        assert!(v2.euler_equation_solvable);
        // m = 3: the all-I3 scenario is unsolvable (24 = 8 + 3 delta)
        let v3 = case_analysis(3).unwrap();
        assert!(!v3.euler_equation_solvable);
        assert_eq!(v3.min_lines_meeting_l, 6);
        assert_eq!(v3.required_nontransverse_types, vec![KodairaType::IV]);
        // m > 3: transverse subset of {I_b}, non-transverse = {IV}
        for m in 4..=30 {
            let v = case_analysis(m).unwrap();
            assert_eq!(
                v.allowed_transverse_types,
                vec![KodairaType::I(1), KodairaType::I(2), KodairaType::I(3)],
                "m = {m}"
            );
            assert_eq!(v.required_nontransverse_types, vec![KodairaType::IV]);
            assert_eq!(v.min_lines_meeting_l, 6);
        }
    }

    #[test]
    fn euler_budget_examples() {
        // two IV + delta I3: no solution
        let sols = euler_budget_solver(&[
            (KodairaType::IV, CountConstraint::Exactly(2)),
            (KodairaType::I(3), CountConstraint::Free),
        ]);
        assert!(sols.is_empty());
        // two IV + k I2: k = 8
        let sols = euler_budget_solver(&[
            (KodairaType::IV, CountConstraint::Exactly(2)),
            (KodairaType::I(2), CountConstraint::Free),
        ]);
        assert_eq!(sols, vec![vec![2, 8]]);
        // minimal fiber count is 6
        assert_eq!(minimal_singular_fiber_count(), 6);
    }

    #[test]
    fn triple_structure_enumeration() {
        // m = 2: only the noncyclic structure exists
        let st = triple_structures(2);
        assert!(st.noncyclic && !st.all_equal && !st.cyclic_distinct);
        // m = 3: all-equal exists (the flex scenario)
        let st = triple_structures(3);
        assert!(st.all_equal);
        // m = 5: all-equal impossible, distinct cyclic possible
        let st = triple_structures(5);
        assert!(!st.all_equal && st.cyclic_distinct);
    }
}
