//! Consistency, theories, the monotone companion Cn, and the order on
//! theories that separates loop-free operations from the rest.

use crate::lang::AtomSet;
use crate::report::{LabeledSet, PropertyReport, Witness};
use crate::table::ConsequenceTable;

/// A is consistent iff C(A) != L.
pub fn is_consistent(table: &ConsequenceTable, a: AtomSet) -> bool {
    table.row(a) != table.language().full_set()
}

/// All fixpoints C(T) = T, in mask order. With `consistent_only` the full
/// language is dropped when it is a fixpoint.
pub fn theories(table: &ConsequenceTable, consistent_only: bool) -> Vec<AtomSet> {
    let full = table.language().full_set();
    table
        .language()
        .subsets()
        .filter(|&t| table.row(t) == t && (!consistent_only || t != full))
        .collect()
}

/// The intersection of all theories containing A. The empty intersection is
/// the full language, which also covers tables that have no theories at all.
pub fn cn(table: &ConsequenceTable, a: AtomSet) -> AtomSet {
    cn_over(table, &theories(table, false), a)
}

/// Cn against a precomputed theory list; callers doing full sweeps avoid the
/// per-query fixpoint scan.
pub fn cn_over(table: &ConsequenceTable, theories: &[AtomSet], a: AtomSet) -> AtomSet {
    let mut out = table.language().full_set();
    for &t in theories {
        if a.subset_of(t) {
            out = out.inter(t);
        }
    }
    out
}

/// All consistent sets whose strict supersets are all inconsistent.
pub fn maximal_consistent_sets(table: &ConsequenceTable) -> Vec<AtomSet> {
    let n = table.language().len();
    table
        .language()
        .subsets()
        .filter(|&a| {
            is_consistent(table, a)
                && (0..n)
                    .filter(|&i| !a.contains(i))
                    .all(|i| !is_consistent(table, a.insert(i)))
        })
        .collect()
}

/// The laws tying Cn to C on a cumulative table: squeezing between A and
/// C(A), idempotence and monotonicity of Cn, the absorption equalities, and
/// inconsistency showing up as Cn(A) = L. One exhaustive pass over the table.
pub fn check_cn_laws(table: &ConsequenceTable) -> PropertyReport {
    const NAME: &str = "Cn laws";
    let full = table.language().full_set();
    let theory_list = theories(table, false);
    let cn_rows: Vec<AtomSet> = table
        .language()
        .subsets()
        .map(|a| cn_over(table, &theory_list, a))
        .collect();
    let witness = |label: &str, a: AtomSet| {
        PropertyReport::fails(
            NAME,
            Witness::sets(vec![LabeledSet::new("A", table.language().render(a), a.0)]),
        )
        .with_note(label.to_string())
    };

    for a in table.language().subsets() {
        let cn_a = cn_rows[a.0 as usize];
        let c_a = table.row(a);
        if !a.subset_of(cn_a) || !cn_a.subset_of(c_a) {
            return witness("A ⊆ Cn(A) ⊆ C(A) fails", a);
        }
        if cn_rows[cn_a.0 as usize] != cn_a {
            return witness("Cn not idempotent", a);
        }
        if cn_rows[c_a.0 as usize] != c_a || table.row(cn_a) != c_a {
            return witness("absorption C(A) = Cn(C(A)) = C(Cn(A)) fails", a);
        }
        if (c_a == full) != (cn_a == full) {
            return witness("inconsistency is not reflected by Cn", a);
        }
    }
    for b in table.language().subsets() {
        for a in b.submasks() {
            if !cn_rows[a.0 as usize].subset_of(cn_rows[b.0 as usize]) {
                return PropertyReport::fails(
                    NAME,
                    Witness::sets(vec![
                        LabeledSet::new("A", table.language().render(a), a.0),
                        LabeledSet::new("B", table.language().render(b), b.0),
                    ]),
                )
                .with_note("Cn not monotone");
            }
        }
    }
    PropertyReport::holds(NAME)
}

/// The order on theories: T <= S iff C(A) = T for some A ⊆ S, the strict part
/// < (on distinct theories), and the transitive closure <+ of <.
#[derive(Debug, Clone)]
pub struct TheoryPoset {
    theories: Vec<AtomSet>,
    leq: Vec<Vec<bool>>,
    lt: Vec<Vec<bool>>,
    lt_plus: Vec<Vec<bool>>,
}

/// Builds the poset by scanning, for every theory S, all A ⊆ S.
pub fn theory_order(table: &ConsequenceTable) -> TheoryPoset {
    let theories = theories(table, false);
    let count = theories.len();
    let mut index_of = vec![usize::MAX; table.language().subset_count()];
    for (i, &t) in theories.iter().enumerate() {
        index_of[t.0 as usize] = i;
    }

    let mut leq = vec![vec![false; count]; count];
    for (s_idx, &s) in theories.iter().enumerate() {
        for a in s.submasks() {
            let t_idx = index_of[table.row(a).0 as usize];
            if t_idx != usize::MAX {
                leq[t_idx][s_idx] = true;
            }
        }
    }

    let mut lt = leq.clone();
    for (i, row) in lt.iter_mut().enumerate() {
        row[i] = false;
    }

    // Warshall closure.
    let mut lt_plus = lt.clone();
    for k in 0..count {
        for i in 0..count {
            if lt_plus[i][k] {
                for j in 0..count {
                    if lt_plus[k][j] {
                        lt_plus[i][j] = true;
                    }
                }
            }
        }
    }

    TheoryPoset {
        theories,
        leq,
        lt,
        lt_plus,
    }
}

impl TheoryPoset {
    pub fn theories(&self) -> &[AtomSet] {
        &self.theories
    }

    pub fn leq(&self, t: usize, s: usize) -> bool {
        self.leq[t][s]
    }

    pub fn lt(&self, t: usize, s: usize) -> bool {
        self.lt[t][s]
    }

    pub fn lt_plus(&self, t: usize, s: usize) -> bool {
        self.lt_plus[t][s]
    }

    fn render(&self, table: &ConsequenceTable, label: String, idx: usize) -> LabeledSet {
        LabeledSet::new(
            label,
            table.language().render(self.theories[idx]),
            self.theories[idx].0,
        )
    }

    /// <+ must be irreflexive whenever the table passes the loop check.
    pub fn check_lt_plus_irreflexive(&self, table: &ConsequenceTable) -> PropertyReport {
        for i in 0..self.theories.len() {
            if self.lt_plus[i][i] {
                return PropertyReport::fails(
                    "<+ irreflexive",
                    Witness::sets(vec![self.render(table, "T".into(), i)]),
                );
            }
        }
        PropertyReport::holds("<+ irreflexive")
    }

    /// Any <=-cycle T_0 <= ... <= T_{k-1} <= T_0 of length at most max_n must
    /// consist of a single theory. Stored theories are distinct, so a
    /// violation is a short directed cycle through distinct theories.
    pub fn check_leq_cycles_collapse(
        &self,
        table: &ConsequenceTable,
        max_n: usize,
    ) -> PropertyReport {
        let count = self.theories.len();
        for start in 0..count {
            // BFS over the strict edges i -> j iff leq[i][j], i != j.
            let mut dist = vec![usize::MAX; count];
            let mut parent = vec![usize::MAX; count];
            let mut frontier = vec![start];
            dist[start] = 0;
            for depth in 1..max_n {
                let mut next = Vec::new();
                for &i in &frontier {
                    for j in 0..count {
                        if i != j && self.leq[i][j] && dist[j] == usize::MAX {
                            dist[j] = depth;
                            parent[j] = i;
                            next.push(j);
                        }
                    }
                }
                frontier = next;
            }
            for last in 0..count {
                // Close the cycle with last <= start.
                if last != start && dist[last] != usize::MAX && self.leq[last][start] {
                    let mut path = vec![last];
                    let mut cur = last;
                    while cur != start {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    let sets = path
                        .iter()
                        .enumerate()
                        .map(|(pos, &i)| self.render(table, format!("T{pos}"), i))
                        .collect();
                    return PropertyReport::fails("<=-cycles collapse", Witness::sets(sets));
                }
            }
        }
        PropertyReport::holds("<=-cycles collapse")
    }
}
