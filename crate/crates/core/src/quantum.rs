//! Consequence operations presented by a state vector and a language of
//! subspaces of a real inner-product space: b follows from A exactly when
//! the projection of the state onto the intersection of A's subspaces lies
//! in b.
//!
//! Scalars are real. Rank decisions go through singular values with a
//! relative 1e-10 threshold; membership uses the instance tolerance. The
//! shipped counterexample instances keep all residuals far above both, so
//! verdicts cannot flip on rounding.

use nalgebra::{DMatrix, DVector};
use serde_json::{json, Map, Value};

use crate::error::{Error, SchemaError};
use crate::lang::{AtomLanguage, AtomSet};
use crate::report::{LabeledSet, PropertyReport, Witness};
use crate::table::ConsequenceTable;

pub const MAX_DIM: usize = 8;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Relative singular-value cutoff for rank decisions.
pub const RANK_EPS: f64 = 1e-10;

/// A plain real vector.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }

    fn from_dvector(v: &DVector<f64>) -> Self {
        Vector(v.iter().copied().collect())
    }
}

/// A linear subspace, stored as an orthonormal basis (columns). Rank zero
/// encodes the zero subspace.
#[derive(Debug, Clone)]
pub struct Subspace {
    dim: usize,
    basis: DMatrix<f64>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace {
            dim,
            basis: DMatrix::zeros(dim, 0),
        }
    }

    pub fn full(dim: usize) -> Self {
        Subspace {
            dim,
            basis: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        (0..self.rank())
            .map(|j| Vector(self.basis.column(j).iter().copied().collect()))
            .collect()
    }
}

/// Orthonormal basis for the span of the given vectors, via singular values.
/// The empty list gives the zero subspace.
pub fn orthonormalize(dim: usize, vectors: &[Vector]) -> Result<Subspace, Error> {
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }
    if vectors.is_empty() {
        return Ok(Subspace::zero(dim));
    }
    let m = DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j].0[i]);
    let svd = m.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_EPS * smax && smax > 0.0)
        .count();
    Ok(Subspace {
        dim,
        basis: u.columns(0, rank).into_owned(),
    })
}

/// Orthogonal projection onto the subspace.
pub fn project(s: &Subspace, v: &Vector) -> Vector {
    let x = v.to_dvector();
    let coords = s.basis.transpose() * &x;
    Vector::from_dvector(&(&s.basis * coords))
}

/// Norm of the component of v outside the subspace.
pub fn residual_norm(s: &Subspace, v: &Vector) -> f64 {
    let p = project(s, v);
    v.0.iter()
        .zip(&p.0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Membership up to tolerance, relative to max(1, |v|). The zero vector
/// belongs to every subspace.
pub fn member(s: &Subspace, v: &Vector, tol: f64) -> bool {
    residual_norm(s, v) <= tol * v.norm().max(1.0)
}

/// Distance from a vector to the subspace.
pub fn distance(s: &Subspace, v: &Vector) -> f64 {
    residual_norm(s, v)
}

/// Intersection of subspaces: the common kernel of the stacked complement
/// projectors I - P_i. The empty intersection is the full space.
pub fn intersect(dim: usize, subspaces: &[&Subspace]) -> Result<Subspace, Error> {
    for s in subspaces {
        if s.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: s.dim(),
            });
        }
    }
    if subspaces.is_empty() {
        return Ok(Subspace::full(dim));
    }
    let mut stacked = DMatrix::zeros(dim * subspaces.len(), dim);
    for (k, s) in subspaces.iter().enumerate() {
        let q = DMatrix::identity(dim, dim) - &s.basis * s.basis.transpose();
        stacked.view_mut((k * dim, 0), (dim, dim)).copy_from(&q);
    }
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let thr = RANK_EPS * smax.max(1.0);
    let mut kernel_rows: Vec<usize> = Vec::new();
    for j in 0..v_t.nrows() {
        if svd.singular_values[j] <= thr {
            kernel_rows.push(j);
        }
    }
    let basis = DMatrix::from_fn(dim, kernel_rows.len(), |i, j| v_t[(kernel_rows[j], i)]);
    Ok(Subspace { dim, basis })
}

/// All vectors orthogonal to the subspace. Computed as the kernel of the
/// projector, so the double complement spans the original space again.
pub fn orthocomplement(s: &Subspace) -> Subspace {
    let p = &s.basis * s.basis.transpose();
    let svd = p.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut kernel_rows: Vec<usize> = Vec::new();
    for j in 0..v_t.nrows() {
        if svd.singular_values[j] <= 0.5 {
            kernel_rows.push(j);
        }
    }
    let basis = DMatrix::from_fn(s.dim, kernel_rows.len(), |i, j| v_t[(kernel_rows[j], i)]);
    Subspace { dim: s.dim, basis }
}

/// A state vector and a named language of subspaces.
#[derive(Debug, Clone)]
pub struct QuantumInstance {
    state: Vector,
    names: Vec<String>,
    subspaces: Vec<Subspace>,
    tolerance: f64,
}

impl QuantumInstance {
    pub fn new(
        state: Vector,
        language: Vec<(String, Subspace)>,
        tolerance: f64,
    ) -> Result<Self, Error> {
        let dim = state.dim();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Schema(SchemaError::field(
                "dim",
                format!("dimension must be 1..={MAX_DIM}, got {dim}"),
            )));
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::Schema(SchemaError::field(
                "tolerance",
                "must be positive",
            )));
        }
        if state.norm() <= tolerance {
            return Err(Error::ZeroState);
        }
        if language.is_empty() {
            return Err(Error::Schema(SchemaError::EmptyLanguage));
        }
        if language.len() > crate::lang::MAX_ATOMS {
            return Err(Error::Schema(SchemaError::TooManyAtoms(
                language.len(),
                crate::lang::MAX_ATOMS,
            )));
        }
        let mut names = Vec::new();
        let mut subspaces = Vec::new();
        for (name, s) in language {
            if names.contains(&name) {
                return Err(Error::Schema(SchemaError::DuplicateAtom(name)));
            }
            if s.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: s.dim(),
                });
            }
            names.push(name);
            subspaces.push(s);
        }
        Ok(QuantumInstance {
            state,
            names,
            subspaces,
            tolerance,
        })
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    pub fn state(&self) -> &Vector {
        &self.state
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn atom_language(&self) -> AtomLanguage {
        AtomLanguage::new(self.names.clone()).expect("language validated at construction")
    }

    /// A copy with one more named subspace, for negation and join demos.
    pub fn with_atom(&self, name: impl Into<String>, s: Subspace) -> Result<Self, Error> {
        let mut language: Vec<(String, Subspace)> = self
            .names
            .iter()
            .cloned()
            .zip(self.subspaces.iter().cloned())
            .collect();
        language.push((name.into(), s));
        QuantumInstance::new(self.state.clone(), language, self.tolerance)
    }

    /// A* for a set of atoms: the intersection of their subspaces.
    pub fn meet(&self, a: AtomSet) -> Subspace {
        let chosen: Vec<&Subspace> = a.iter().map(|i| &self.subspaces[i]).collect();
        intersect(self.dim(), &chosen).expect("dims validated at construction")
    }
}

/// b ∈ C(A) iff the projection of the state onto A* lies in b.
pub fn quantum_consequence(q: &QuantumInstance, a: AtomSet) -> AtomSet {
    let projected = project(&q.meet(a), q.state());
    let mut out = AtomSet::EMPTY;
    for i in 0..q.len() {
        if member(q.subspace(i), &projected, q.tolerance()) {
            out = out.insert(i);
        }
    }
    out
}

/// The full table of the induced operation.
pub fn quantum_table(q: &QuantumInstance) -> ConsequenceTable {
    ConsequenceTable::from_fn(q.atom_language(), |a| quantum_consequence(q, a))
}

/// Whenever B ⊆ C(A), the projection of the state onto A* already lies in
/// B*, so projecting onto A* ∩ B* changes nothing and the distance to A* is
/// at least the distance to B*. Checked over every qualifying pair.
pub fn check_bca(q: &QuantumInstance) -> PropertyReport {
    const NAME: &str = "projection stability under consequence";
    let table = quantum_table(q);
    let lang = q.atom_language();
    let tol = q.tolerance();
    for a in lang.subsets() {
        let a_star = q.meet(a);
        let pa = project(&a_star, q.state());
        let da = distance(&a_star, q.state());
        for b in lang.subsets() {
            if !b.subset_of(table.row(a)) {
                continue;
            }
            let meet_ab = q.meet(a.union(b));
            let pab = project(&meet_ab, q.state());
            let drift =
                pa.0.iter()
                    .zip(&pab.0)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt();
            let db = distance(&q.meet(b), q.state());
            if drift > tol * q.state().norm().max(1.0) || da < db - tol {
                return PropertyReport::fails(
                    NAME,
                    Witness::sets(vec![
                        LabeledSet::new("A", lang.render(a), a.0),
                        LabeledSet::new("B", lang.render(b), b.0),
                    ]),
                )
                .with_note(format!(
                    "drift {drift:.3e}, d(h,A*)={da:.6}, d(h,B*)={db:.6}"
                ));
            }
        }
    }
    PropertyReport::holds(NAME)
}

/// Adds the orthocomplement of b to the language as a negation candidate and
/// evaluates both negation rules on the extended instance. The first report
/// covers C(A, b, !b) = L for every A; the second covers C(A, !b) = L ⟹
/// b ∈ C(A), with the violating A as witness.
pub fn negation_failure_demo(
    q: &QuantumInstance,
    a_name: &str,
    b_name: &str,
) -> Result<Vec<PropertyReport>, Error> {
    q.index_of(a_name)
        .ok_or_else(|| Error::Schema(SchemaError::UnknownAtom(a_name.to_string())))?;
    let b_idx = q
        .index_of(b_name)
        .ok_or_else(|| Error::Schema(SchemaError::UnknownAtom(b_name.to_string())))?;
    let not_b_name = format!("!{b_name}");
    let extended = q.with_atom(&not_b_name, orthocomplement(q.subspace(b_idx)))?;
    let lang = extended.atom_language();
    let table = quantum_table(&extended);
    let full = lang.full_set();
    let b_set = AtomSet::singleton(b_idx);
    let not_b = AtomSet::singleton(extended.len() - 1);
    let orig_atoms = AtomSet((1u32 << q.len()) - 1);

    let mut neg1 = PropertyReport::holds(NEG_RULE_1_SUBSPACE)
        .with_note(format!("negation candidate {not_b_name} = orthocomplement"));
    for a in lang.subsets() {
        if b_set.union(not_b).subset_of(a) && table.row(a) != full {
            neg1 = PropertyReport::fails(
                NEG_RULE_1_SUBSPACE,
                Witness::sets(vec![LabeledSet::new("A", lang.render(a), a.0)]),
            );
            break;
        }
    }

    let mut neg2 = PropertyReport::holds(NEG_RULE_2_SUBSPACE)
        .with_note(format!("negation candidate {not_b_name} = orthocomplement"));
    for m in 0..=orig_atoms.0 {
        let a = AtomSet(m);
        let with_not_b = a.union(not_b);
        if table.row(with_not_b) == full && !table.row(a).contains(b_idx) {
            let proj = project(&extended.meet(a), extended.state());
            neg2 = PropertyReport::fails(
                NEG_RULE_2_SUBSPACE,
                Witness::sets(vec![LabeledSet::new("A", lang.render(a), a.0)]),
            )
            .with_note(format!(
                "C(A,{not_b_name}) is the full language but {b_name} ∉ C(A); \
                 residual of the A*-projection against {b_name}: {:.6}",
                residual_norm(extended.subspace(b_idx), &proj)
            ));
            break;
        }
    }

    Ok(vec![neg1, neg2])
}

pub const NEG_RULE_1_SUBSPACE: &str = "¬-R1 (orthocomplement)";
pub const NEG_RULE_2_SUBSPACE: &str = "¬-R2 (orthocomplement)";
pub const OR_RULE_2_SUBSPACE: &str = "∨-R2 (closed linear span)";

/// Adds the closed linear span of a and b as a join candidate and checks
/// the second disjunction rule: C(A,a) ∩ C(A,b) ⊆ C(A, a span b) for every
/// premise set over the original language.
pub fn span_disjunction_demo(
    q: &QuantumInstance,
    a_name: &str,
    b_name: &str,
) -> Result<PropertyReport, Error> {
    let a_idx = q
        .index_of(a_name)
        .ok_or_else(|| Error::Schema(SchemaError::UnknownAtom(a_name.to_string())))?;
    let b_idx = q
        .index_of(b_name)
        .ok_or_else(|| Error::Schema(SchemaError::UnknownAtom(b_name.to_string())))?;
    let mut spanning = q.subspace(a_idx).basis_vectors();
    spanning.extend(q.subspace(b_idx).basis_vectors());
    let join = orthonormalize(q.dim(), &spanning)?;
    let join_name = format!("{a_name}|{b_name}");
    let extended = q.with_atom(&join_name, join)?;
    let lang = extended.atom_language();
    let table = quantum_table(&extended);
    let join_atom = AtomSet::singleton(extended.len() - 1);
    let orig_atoms = AtomSet((1u32 << q.len()) - 1);

    for m in 0..=orig_atoms.0 {
        let premise = AtomSet(m);
        let ca = table.row(premise.insert(a_idx));
        let cb = table.row(premise.insert(b_idx));
        let cjoin = table.row(premise.union(join_atom));
        let both = ca.inter(cb);
        if !both.subset_of(cjoin) {
            return Ok(PropertyReport::fails(
                OR_RULE_2_SUBSPACE,
                Witness::sets(vec![
                    LabeledSet::new("A", lang.render(premise), premise.0),
                    LabeledSet::new("C(A,a) ∩ C(A,b)", lang.render(both), both.0),
                    LabeledSet::new("C(A, a|b)", lang.render(cjoin), cjoin.0),
                ]),
            )
            .with_note(format!("join candidate {join_name} = closed linear span")));
        }
    }
    Ok(PropertyReport::holds(OR_RULE_2_SUBSPACE))
}

/// Conjunction as intersection: for every pair of atoms, adjoining their
/// meet as a fresh atom leaves the consequences over the original language
/// unchanged whether the premises mention the pair or the meet.
pub fn check_conjunction_as_intersection(q: &QuantumInstance) -> Result<PropertyReport, Error> {
    const NAME: &str = "conjunction as subspace intersection";
    let orig = AtomSet((1u32 << q.len()) - 1);
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            let meet = intersect(q.dim(), &[q.subspace(i), q.subspace(j)])?;
            let extended = q.with_atom(format!("{}&{}", q.name(i), q.name(j)), meet)?;
            let table = quantum_table(&extended);
            let meet_atom = AtomSet::singleton(extended.len() - 1);
            for m in 0..=orig.0 {
                let premise = AtomSet(m);
                let via_pair = table.row(premise.insert(i).insert(j)).inter(orig);
                let via_meet = table.row(premise.union(meet_atom)).inter(orig);
                if via_pair != via_meet {
                    let lang = extended.atom_language();
                    return Ok(PropertyReport::fails(
                        NAME,
                        Witness::sets(vec![LabeledSet::new("A", lang.render(premise), premise.0)]),
                    )
                    .with_note(format!("pair {} , {}", q.name(i), q.name(j))));
                }
            }
        }
    }
    Ok(PropertyReport::holds(NAME))
}

impl QuantumInstance {
    /// JSON form:
    /// `{"dim":2,"state":[1,2],"tolerance":1e-9,"subspaces":{"a":[[1,0]],...}}`.
    /// Subspaces are given by spanning vectors; tolerance defaults to 1e-9.
    pub fn from_json(value: &Value) -> Result<Self, Error> {
        let obj = value
            .as_object()
            .ok_or_else(|| SchemaError::Json("top level must be an object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| SchemaError::field("dim", "missing or not an integer"))?
            as usize;
        let state: Vec<f64> = serde_json::from_value(
            obj.get("state")
                .ok_or_else(|| SchemaError::field("state", "missing"))?
                .clone(),
        )
        .map_err(|e| SchemaError::field("state", e.to_string()))?;
        if state.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: state.len(),
            });
        }
        let tolerance = match obj.get("tolerance") {
            None => DEFAULT_TOLERANCE,
            Some(t) => t
                .as_f64()
                .ok_or_else(|| SchemaError::field("tolerance", "not a number"))?,
        };
        let subspaces = obj
            .get("subspaces")
            .and_then(Value::as_object)
            .ok_or_else(|| SchemaError::field("subspaces", "missing or not an object"))?;
        let mut language = Vec::new();
        for (name, spanning) in subspaces {
            let vectors: Vec<Vec<f64>> = serde_json::from_value(spanning.clone())
                .map_err(|e| SchemaError::field(format!("subspaces.{name}"), e.to_string()))?;
            let vectors: Vec<Vector> = vectors.into_iter().map(Vector).collect();
            language.push((name.clone(), orthonormalize(dim, &vectors)?));
        }
        QuantumInstance::new(Vector(state), language, tolerance)
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let value: Value = serde_json::from_str(s).map_err(|e| SchemaError::Json(e.to_string()))?;
        Self::from_json(&value)
    }

    pub fn to_json(&self) -> Value {
        let mut subspaces = Map::new();
        for i in 0..self.len() {
            let vectors: Vec<Vec<f64>> = self
                .subspace(i)
                .basis_vectors()
                .into_iter()
                .map(|v| v.0)
                .collect();
            subspaces.insert(self.names[i].clone(), json!(vectors));
        }
        json!({
            "dim": self.dim(),
            "state": self.state.0,
            "tolerance": self.tolerance,
            "subspaces": Value::Object(subspaces),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::generic_lines;

    fn vec2(x: f64, y: f64) -> Vector {
        Vector(vec![x, y])
    }

    #[test]
    fn orthonormalize_ranks() {
        assert_eq!(orthonormalize(2, &[vec2(1.0, 0.0)]).unwrap().rank(), 1);
        assert_eq!(
            orthonormalize(2, &[vec2(1.0, 1.0), vec2(2.0, 2.0)])
                .unwrap()
                .rank(),
            1,
            "dependent vectors"
        );
        assert_eq!(
            orthonormalize(2, &[vec2(1.0, 0.0), vec2(1.0, 1.0)])
                .unwrap()
                .rank(),
            2
        );
        assert_eq!(orthonormalize(2, &[]).unwrap().rank(), 0);
    }

    #[test]
    fn projection_basics() {
        let line = orthonormalize(2, &[vec2(1.0, 0.0)]).unwrap();
        let p = project(&line, &vec2(1.0, 2.0));
        assert!((p.0[0] - 1.0).abs() < 1e-12 && p.0[1].abs() < 1e-12);
        let zero = Subspace::zero(2);
        assert_eq!(project(&zero, &vec2(3.0, 4.0)).0, vec![0.0, 0.0]);
        let full = Subspace::full(2);
        let v = vec2(3.0, 4.0);
        let pv = project(&full, &v);
        assert!((pv.0[0] - 3.0).abs() < 1e-12 && (pv.0[1] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn membership_and_residuals() {
        let diag = orthonormalize(2, &[vec2(1.0, 1.0)]).unwrap();
        let v = vec2(1.0, 0.0);
        assert!(!member(&diag, &v, 1e-9));
        assert!((residual_norm(&diag, &v) - (0.5f64).sqrt()).abs() < 1e-12);
        assert!(member(&Subspace::zero(2), &vec2(0.0, 0.0), 1e-9));
        assert!(member(&intersect(2, &[]).unwrap(), &v, 1e-9));
    }

    #[test]
    fn intersections() {
        let a = orthonormalize(2, &[vec2(1.0, 0.0)]).unwrap();
        let b = orthonormalize(2, &[vec2(1.0, 1.0)]).unwrap();
        assert_eq!(intersect(2, &[&a, &b]).unwrap().rank(), 0);
        assert_eq!(intersect(2, &[]).unwrap().rank(), 2);

        // Two planes in 3 dims sharing a line.
        let p1 = orthonormalize(
            3,
            &[Vector(vec![1.0, 0.0, 0.0]), Vector(vec![0.0, 1.0, 0.0])],
        )
        .unwrap();
        let p2 = orthonormalize(
            3,
            &[Vector(vec![1.0, 0.0, 0.0]), Vector(vec![0.0, 0.0, 1.0])],
        )
        .unwrap();
        let meet = intersect(3, &[&p1, &p2]).unwrap();
        assert_eq!(meet.rank(), 1);
        assert!(member(&p1, &meet.basis_vectors()[0], 1e-9));
        assert!(member(&p2, &meet.basis_vectors()[0], 1e-9));
    }

    #[test]
    fn orthocomplement_involution() {
        let diag = orthonormalize(2, &[vec2(1.0, 1.0)]).unwrap();
        let perp = orthocomplement(&diag);
        assert_eq!(perp.rank(), 1);
        assert!(member(&perp, &vec2(1.0, -1.0), 1e-9));
        let again = orthocomplement(&perp);
        assert!(member(&again, &vec2(1.0, 1.0), 1e-9));
        assert_eq!(orthocomplement(&Subspace::zero(2)).rank(), 2);
    }

    #[test]
    fn generic_lines_consequences() {
        let q = generic_lines();
        let lang = q.atom_language();
        let a = lang.set_of_names(&["a"]).unwrap();
        let c_only = lang.set_of_names(&["c"]).unwrap();
        assert_eq!(quantum_consequence(&q, AtomSet::EMPTY), c_only);
        assert_eq!(quantum_consequence(&q, a), a);
        let ab = lang.set_of_names(&["a", "b"]).unwrap();
        assert_eq!(quantum_consequence(&q, ab), lang.full_set());
    }

    #[test]
    fn generic_lines_table_is_a_loop_free_c_logic() {
        let q = generic_lines();
        let table = quantum_table(&q);
        assert!(crate::axioms::check_c_axioms(&table)
            .iter()
            .all(|r| r.holds));
        assert!(crate::axioms::check_loop(&table, 4).unwrap().holds);
        assert!(check_bca(&q).holds);
        // Nonmonotone: c follows from nothing but not from a.
        let lang = table.language();
        let c_idx = lang.index_of("c").unwrap();
        assert!(table.row(AtomSet::EMPTY).contains(c_idx));
        assert!(!table.row(AtomSet::singleton(0)).contains(c_idx));
    }

    #[test]
    fn single_subspace_with_state_inside_is_monotone() {
        let line = orthonormalize(2, &[vec2(1.0, 2.0)]).unwrap();
        let q = QuantumInstance::new(vec2(1.0, 2.0), vec![("a".into(), line)], DEFAULT_TOLERANCE)
            .unwrap();
        let table = quantum_table(&q);
        let a = AtomSet::singleton(0);
        assert_eq!(table.row(AtomSet::EMPTY), a);
        assert_eq!(table.row(a), a);
    }

    #[test]
    fn negation_demo_on_generic_lines() {
        let q = generic_lines();
        let reports = negation_failure_demo(&q, "a", "b").unwrap();
        assert!(reports[0].holds, "¬-R1 must hold under orthocomplement");
        assert!(!reports[1].holds, "¬-R2 must fail on generic lines");
        let masks = reports[1].witness.as_ref().unwrap().masks();
        assert_eq!(masks, vec![AtomSet::singleton(0).0], "witness A = {{a}}");
    }

    #[test]
    fn negation_demo_with_orthogonal_pair_satisfies_the_rule_instance() {
        // b orthogonal to a, state inside a: C(A, !b) never collapses in a
        // way that outruns b-membership.
        let a = orthonormalize(2, &[vec2(1.0, 0.0)]).unwrap();
        let b = orthonormalize(2, &[vec2(0.0, 1.0)]).unwrap();
        let q = QuantumInstance::new(
            vec2(1.0, 0.0),
            vec![("a".into(), a), ("b".into(), b)],
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        let reports = negation_failure_demo(&q, "a", "b").unwrap();
        assert!(reports[0].holds);
        assert!(reports[1].holds);
    }

    #[test]
    fn span_join_breaks_the_second_disjunction_rule_on_generic_lines() {
        let q = generic_lines();
        let report = span_disjunction_demo(&q, "a", "b").unwrap();
        assert!(!report.holds);
        let masks = report.witness.as_ref().unwrap().masks();
        // The violating premise is {c}.
        assert_eq!(masks[0], 4);
    }

    #[test]
    fn instance_json_round_trip() {
        let q = generic_lines();
        let text = serde_json::to_string(&q.to_json()).unwrap();
        let back = QuantumInstance::from_json_str(&text).unwrap();
        assert_eq!(quantum_table(&back), quantum_table(&q));
    }

    #[test]
    fn json_rejects_zero_state_and_dim_mismatch() {
        let bad_state = r#"{"dim":2,"state":[0,0],"subspaces":{"a":[[1,0]]}}"#;
        assert!(matches!(
            QuantumInstance::from_json_str(bad_state),
            Err(Error::ZeroState)
        ));
        let bad_dim = r#"{"dim":2,"state":[1,0],"subspaces":{"a":[[1,0,0]]}}"#;
        assert!(matches!(
            QuantumInstance::from_json_str(bad_dim),
            Err(Error::DimMismatch { .. })
        ));
    }
}
