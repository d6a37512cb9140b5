//! Cumulative relations over a small propositional language in which
//! formulas are identified up to logical equivalence: a formula is its set
//! of satisfying valuations. Left Logical Equivalence is therefore built
//! into the representation.

use crate::error::Error;
use crate::lang::{AtomLanguage, AtomSet, MAX_ATOMS};
use crate::report::{LabeledSet, PropertyReport, Witness};
use crate::table::ConsequenceTable;

pub const MAX_VALUATION_ATOMS: usize = 3;

pub const LEFT_LOGICAL_EQUIVALENCE: &str = "Left Logical Equivalence";
pub const RIGHT_WEAKENING: &str = "Right Weakening";
pub const REFLEXIVITY: &str = "Reflexivity";
pub const CUT: &str = "Cut";
pub const CAUTIOUS_MONOTONICITY_REL: &str = "Cautious Monotonicity (relation)";

/// A formula up to equivalence: the bitmask of valuations satisfying it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationFormula(pub u16);

impl ValuationFormula {
    pub const FALSE: ValuationFormula = ValuationFormula(0);

    pub fn and(self, other: Self) -> Self {
        ValuationFormula(self.0 & other.0)
    }

    pub fn or(self, other: Self) -> Self {
        ValuationFormula(self.0 | other.0)
    }

    /// Classical entailment: every satisfying valuation also satisfies other.
    pub fn entails(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_false(self) -> bool {
        self.0 == 0
    }
}

/// The k-atom propositional language, k at most 3, with 2^(2^k) formula
/// classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationLanguage {
    k: usize,
}

impl ValuationLanguage {
    pub fn new(k: usize) -> Result<Self, Error> {
        if k == 0 || k > MAX_VALUATION_ATOMS {
            return Err(Error::BadCorpusSpec(format!(
                "valuation language needs 1..={MAX_VALUATION_ATOMS} atoms, got {k}"
            )));
        }
        Ok(ValuationLanguage { k })
    }

    pub fn atom_count(&self) -> usize {
        self.k
    }

    pub fn valuation_count(&self) -> usize {
        1 << self.k
    }

    pub fn formula_count(&self) -> usize {
        1 << self.valuation_count()
    }

    /// The always-true formula.
    pub fn top(&self) -> ValuationFormula {
        ValuationFormula(((1u32 << self.valuation_count()) - 1) as u16)
    }

    /// The i-th atom: all valuations with bit i set.
    pub fn atom(&self, i: usize) -> ValuationFormula {
        let mut bits = 0u16;
        for v in 0..self.valuation_count() {
            if v & (1 << i) != 0 {
                bits |= 1 << v;
            }
        }
        ValuationFormula(bits)
    }

    pub fn not(&self, f: ValuationFormula) -> ValuationFormula {
        ValuationFormula(!f.0 & self.top().0)
    }

    pub fn formulas(&self) -> impl Iterator<Item = ValuationFormula> {
        (0..self.formula_count() as u16).map(ValuationFormula)
    }

    /// Valuation names satisfying the formula, for witnesses: "v" plus the
    /// atom bits.
    pub fn render(&self, f: ValuationFormula) -> Vec<String> {
        (0..self.valuation_count())
            .filter(|&v| f.0 & (1 << v) != 0)
            .map(|v| format!("v{v:0width$b}", width = self.k))
            .collect()
    }

    fn joint(&self, antecedents: &[ValuationFormula]) -> ValuationFormula {
        antecedents.iter().fold(self.top(), |acc, &f| acc.and(f))
    }
}

/// Consequence operations over valuation classes that satisfy the cumulative
/// package (the test suite re-checks rather than trusts this).
#[derive(Debug, Clone)]
pub enum ValuationOp {
    /// Minimal-valuation selection under a total preorder: C(A) holds b iff
    /// every minimal-rank valuation of the premises satisfies b.
    Ranked {
        lang: ValuationLanguage,
        ranks: Vec<u32>,
    },
    /// The theory of one fixed valuation when the premises hold there,
    /// everything otherwise.
    SingleValuation {
        lang: ValuationLanguage,
        valuation: usize,
    },
    /// Monotone classical entailment.
    Entailment { lang: ValuationLanguage },
}

impl ValuationOp {
    pub fn lang(&self) -> ValuationLanguage {
        match self {
            ValuationOp::Ranked { lang, .. }
            | ValuationOp::SingleValuation { lang, .. }
            | ValuationOp::Entailment { lang } => *lang,
        }
    }

    /// Membership b ∈ C(A).
    pub fn holds(&self, antecedents: &[ValuationFormula], b: ValuationFormula) -> bool {
        let lang = self.lang();
        let joint = lang.joint(antecedents);
        match self {
            ValuationOp::Ranked { ranks, .. } => {
                let min = (0..lang.valuation_count())
                    .filter(|&v| joint.0 & (1 << v) != 0)
                    .map(|v| ranks[v])
                    .min();
                match min {
                    None => true,
                    Some(m) => (0..lang.valuation_count())
                        .all(|v| joint.0 & (1 << v) == 0 || ranks[v] > m || b.0 & (1 << v) != 0),
                }
            }
            ValuationOp::SingleValuation { valuation, .. } => {
                joint.0 & (1 << valuation) == 0 || b.0 & (1 << valuation) != 0
            }
            ValuationOp::Entailment { .. } => joint.entails(b),
        }
    }
}

/// The relation a |~ b iff b ∈ C(a), tabulated over all formula classes.
#[derive(Debug, Clone)]
pub struct ValuationClassRelation {
    lang: ValuationLanguage,
    rel: Vec<Vec<bool>>,
}

impl ValuationClassRelation {
    pub fn from_op(op: &ValuationOp) -> Self {
        let lang = op.lang();
        let rel = lang
            .formulas()
            .map(|a| lang.formulas().map(|b| op.holds(&[a], b)).collect())
            .collect();
        ValuationClassRelation { lang, rel }
    }

    pub fn new(lang: ValuationLanguage, rel: Vec<Vec<bool>>) -> Self {
        ValuationClassRelation { lang, rel }
    }

    pub fn lang(&self) -> ValuationLanguage {
        self.lang
    }

    pub fn holds(&self, a: ValuationFormula, b: ValuationFormula) -> bool {
        self.rel[a.0 as usize][b.0 as usize]
    }
}

fn rel_witness(lang: ValuationLanguage, parts: &[(&str, ValuationFormula)]) -> Witness {
    Witness::sets(
        parts
            .iter()
            .map(|(l, f)| LabeledSet::new(*l, lang.render(*f), f.0 as u32))
            .collect(),
    )
}

/// The five cumulative-relation rules, checked exhaustively over formula
/// classes (pairs or triples as each rule requires).
pub fn klm_relation_checks(rel: &ValuationClassRelation) -> Vec<PropertyReport> {
    let lang = rel.lang();
    let mut out = Vec::new();

    out.push(
        PropertyReport::holds(LEFT_LOGICAL_EQUIVALENCE)
            .with_note("formulas are valuation classes, equivalents are identified"),
    );

    let mut rw = PropertyReport::holds(RIGHT_WEAKENING);
    'rw: for a in lang.formulas() {
        for b in lang.formulas() {
            if !rel.holds(a, b) {
                continue;
            }
            for bp in lang.formulas() {
                if b.entails(bp) && !rel.holds(a, bp) {
                    rw = PropertyReport::fails(
                        RIGHT_WEAKENING,
                        rel_witness(lang, &[("a", a), ("b", b), ("b'", bp)]),
                    );
                    break 'rw;
                }
            }
        }
    }
    out.push(rw);

    let mut refl = PropertyReport::holds(REFLEXIVITY);
    for a in lang.formulas() {
        if !rel.holds(a, a) {
            refl = PropertyReport::fails(REFLEXIVITY, rel_witness(lang, &[("a", a)]));
            break;
        }
    }
    out.push(refl);

    let mut cut = PropertyReport::holds(CUT);
    'cut: for a in lang.formulas() {
        for b in lang.formulas() {
            if !rel.holds(a, b) {
                continue;
            }
            for c in lang.formulas() {
                if rel.holds(a.and(b), c) && !rel.holds(a, c) {
                    cut = PropertyReport::fails(
                        CUT,
                        rel_witness(lang, &[("a", a), ("b", b), ("c", c)]),
                    );
                    break 'cut;
                }
            }
        }
    }
    out.push(cut);

    let mut cm = PropertyReport::holds(CAUTIOUS_MONOTONICITY_REL);
    'cm: for a in lang.formulas() {
        for b in lang.formulas() {
            if !rel.holds(a, b) {
                continue;
            }
            for c in lang.formulas() {
                if rel.holds(a, c) && !rel.holds(a.and(b), c) {
                    cm = PropertyReport::fails(
                        CAUTIOUS_MONOTONICITY_REL,
                        rel_witness(lang, &[("a", a), ("b", b), ("c", c)]),
                    );
                    break 'cm;
                }
            }
        }
    }
    out.push(cm);

    out
}

/// A consequence operation rebuilt from a cumulative relation: b ∈ C(A) iff
/// some formula a entailed by A has a' |~ b for every a' squeezed between
/// the premises and a. Inconsistency always traces to finitely many
/// premises here, so no compactness argument is needed.
#[derive(Debug, Clone)]
pub struct ReconstructedConsequence {
    rel: ValuationClassRelation,
}

impl ReconstructedConsequence {
    pub fn lang(&self) -> ValuationLanguage {
        self.rel.lang()
    }

    pub fn holds(&self, antecedents: &[ValuationFormula], b: ValuationFormula) -> bool {
        let lang = self.rel.lang();
        let joint = lang.joint(antecedents);
        lang.formulas().any(|a| {
            joint.entails(a)
                && lang
                    .formulas()
                    .all(|ap| !(joint.entails(ap) && ap.entails(a)) || self.rel.holds(ap, b))
        })
    }
}

/// Validates the five rules, then wraps the relation as an operation. On
/// singleton antecedents the reconstruction agrees with the relation exactly.
pub fn klm_to_consequence(rel: &ValuationClassRelation) -> Result<ReconstructedConsequence, Error> {
    if let Some(bad) = klm_relation_checks(rel).iter().find(|r| !r.holds) {
        return Err(Error::RelationNotCumulative {
            rule: bad.property.clone(),
        });
    }
    Ok(ReconstructedConsequence { rel: rel.clone() })
}

/// The operation as an explicit consequence table whose atoms are the
/// formula classes. Fits under the table cap only for k <= 2.
pub fn valuation_class_table(op: &ValuationOp) -> Result<ConsequenceTable, Error> {
    let lang = op.lang();
    let classes = lang.formula_count();
    if classes > MAX_ATOMS {
        return Err(Error::BadCorpusSpec(format!(
            "{classes} formula classes exceed the {MAX_ATOMS}-atom table cap"
        )));
    }
    let width = lang.valuation_count();
    let atom_lang = AtomLanguage::new((0..classes).map(|i| format!("f{i:0width$b}")))?;
    Ok(ConsequenceTable::from_fn(atom_lang, |a| {
        let antecedents: Vec<ValuationFormula> =
            a.iter().map(|i| ValuationFormula(i as u16)).collect();
        let mut row = AtomSet::EMPTY;
        for (j, b) in lang.formulas().enumerate() {
            if op.holds(&antecedents, b) {
                row = row.insert(j);
            }
        }
        row
    }))
}

/// In a maximal consistent set of a conforming operation, conjunction and
/// negation behave classically: a∧b is in iff both are, ¬a is in iff a is
/// not. Checked through the class-table bridge.
pub fn check_maxcons_classical(op: &ValuationOp) -> Result<PropertyReport, Error> {
    const NAME: &str = "maximal consistent sets behave classically";
    let lang = op.lang();
    let table = valuation_class_table(op)?;
    for m in crate::theory::maximal_consistent_sets(&table) {
        for i in 0..lang.formula_count() {
            let fi = ValuationFormula(i as u16);
            let neg = lang.not(fi);
            if m.contains(neg.0 as usize) == m.contains(i) {
                return Ok(PropertyReport::fails(
                    NAME,
                    Witness::sets(vec![
                        LabeledSet::new("A", table.language().render(m), m.0),
                        LabeledSet::new("a", lang.render(fi), fi.0 as u32),
                    ]),
                ));
            }
            for j in 0..lang.formula_count() {
                let fj = ValuationFormula(j as u16);
                let conj = fi.and(fj);
                if m.contains(conj.0 as usize) != (m.contains(i) && m.contains(j)) {
                    return Ok(PropertyReport::fails(
                        NAME,
                        Witness::sets(vec![
                            LabeledSet::new("A", table.language().render(m), m.0),
                            LabeledSet::new("a", lang.render(fi), fi.0 as u32),
                            LabeledSet::new("b", lang.render(fj), fj.0 as u32),
                        ]),
                    ));
                }
            }
        }
    }
    Ok(PropertyReport::holds(NAME))
}

/// Cn(A) equals the intersection of the maximal consistent sets above A,
/// for every A over the class table.
pub fn check_cn_via_maximal(op: &ValuationOp) -> Result<PropertyReport, Error> {
    const NAME: &str = "Cn is the meet of maximal consistent supersets";
    let table = valuation_class_table(op)?;
    let theories = crate::theory::theories(&table, false);
    let maximal = crate::theory::maximal_consistent_sets(&table);
    for a in table.language().subsets() {
        let cn = crate::theory::cn_over(&table, &theories, a);
        let mut meet = table.language().full_set();
        for &m in &maximal {
            if a.subset_of(m) {
                meet = meet.inter(m);
            }
        }
        if cn != meet {
            return Ok(PropertyReport::fails(
                NAME,
                Witness::sets(vec![LabeledSet::new("A", table.language().render(a), a.0)]),
            ));
        }
    }
    Ok(PropertyReport::holds(NAME))
}
