//! Rule checkers for conjunction, negation and the derived disjunction over
//! an induced consequence operation, plus the conservative-extension check.
//!
//! Everything here quantifies over bounded pools of formulas and says so in
//! the report notes. Membership of a formula in C(A) is decided semantically,
//! through satisfaction masks, so premises may use formulas beyond the
//! enumerated closure (the derived disjunction of two depth-bounded formulas,
//! for instance).

use crate::choice::FCModel;
use crate::error::Error;
use crate::formula::{sat_mask, ClosedLanguage, Formula};
use crate::lang::AtomSet;
use crate::report::{LabeledSet, PropertyReport, Witness};
use crate::represent::represent;
use crate::table::ConsequenceTable;
use crate::world::{mod_of, theory_of, ModelMask};

pub const AND_RULE: &str = "∧-R";
pub const NEG_RULE_1: &str = "¬-R1";
pub const NEG_RULE_2: &str = "¬-R2";
pub const OR_RULE_1: &str = "∨-R1";
pub const OR_RULE_2: &str = "∨-R2";

/// Which premise sets A and rule arguments (a, b) the checkers range over.
#[derive(Debug, Clone)]
pub struct RuleCheckConfig {
    /// Premise sets, as id lists into the closed language.
    pub premises: Vec<Vec<usize>>,
    /// Argument formulas, as ids into the closed language.
    pub args: Vec<usize>,
}

impl RuleCheckConfig {
    /// The empty set plus all singletons and pairs drawn from the formulas of
    /// depth at most `premise_depth`; arguments of depth at most `arg_depth`.
    pub fn bounded(lang: &ClosedLanguage, premise_depth: usize, arg_depth: usize) -> Self {
        let pool = lang.ids_up_to_depth(premise_depth);
        let mut premises = vec![Vec::new()];
        for (i, &p) in pool.iter().enumerate() {
            premises.push(vec![p]);
            for &q in &pool[i + 1..] {
                premises.push(vec![p, q]);
            }
        }
        RuleCheckConfig {
            premises,
            args: lang.ids_up_to_depth(arg_depth),
        }
    }

    /// Default pool: premises and arguments from the depth-one fragment.
    /// Rule arguments then produce conclusions up to depth three, which the
    /// semantic membership test handles without enumerating them.
    pub fn default_for(lang: &ClosedLanguage) -> Self {
        Self::bounded(lang, 1, 1)
    }
}

/// Shared evaluation state for one model and one closed language.
struct RuleScan<'a> {
    fcm: &'a FCModel,
    lang: &'a ClosedLanguage,
    masks: Vec<ModelMask>,
}

impl<'a> RuleScan<'a> {
    fn new(fcm: &'a FCModel, lang: &'a ClosedLanguage) -> Self {
        RuleScan {
            fcm,
            lang,
            masks: lang.sat_masks(fcm.world()),
        }
    }

    fn premise_mask(&self, ids: &[usize]) -> ModelMask {
        ids.iter()
            .fold(self.fcm.world().full_mask(), |m, &i| m.inter(self.masks[i]))
    }

    fn consequence_value(&self, hat: ModelMask) -> ModelMask {
        self.fcm.value(hat)
    }

    /// Is C(A) the whole closed language, given f(hat(A))? The scan is exact:
    /// it looks for any formula not satisfied throughout the choice value.
    fn is_full(&self, value: ModelMask) -> bool {
        self.masks.iter().all(|m| value.subset_of(*m))
    }

    /// C(A)-membership of an arbitrary formula, via its satisfaction mask.
    fn member(&self, value: ModelMask, phi_mask: ModelMask) -> bool {
        value.subset_of(phi_mask)
    }

    /// Two choice values induce the same consequence set iff the same
    /// formulas hold throughout both.
    fn same_consequences(&self, v1: ModelMask, v2: ModelMask) -> bool {
        v1 == v2
            || self
                .masks
                .iter()
                .all(|m| v1.subset_of(*m) == v2.subset_of(*m))
    }

    fn render_premise(&self, ids: &[usize]) -> String {
        if ids.is_empty() {
            "{}".to_string()
        } else {
            let parts: Vec<String> = ids
                .iter()
                .map(|&i| self.lang.formula(i).render(self.lang.base()))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
    }

    fn render_models(&self, mask: ModelMask) -> String {
        format!("{{{}}}", self.fcm.world().render_mask(mask).join(","))
    }
}

/// ∧-R, ¬-R1, ¬-R2, ∨-R1 and ∨-R2 over the configured pools, in that order.
/// On a restricted model with classical satisfaction the first four must
/// hold; the fifth may fail, and its failure report carries the full
/// evaluation trace.
pub fn check_connective_rules(
    fcm: &FCModel,
    lang: &ClosedLanguage,
    config: &RuleCheckConfig,
) -> Vec<PropertyReport> {
    let scan = RuleScan::new(fcm, lang);
    let bound_note = format!(
        "bounded: {} premise sets, {} argument formulas",
        config.premises.len(),
        config.args.len()
    );

    let mut and_rule: Option<Witness> = None;
    let mut neg1: Option<Witness> = None;
    let mut neg2: Option<Witness> = None;
    let mut or1: Option<Witness> = None;
    let mut or2: Option<Witness> = None;

    // Argument masks and the masks of the composed formulas the rules
    // mention, all through the tree evaluator rather than mask algebra, so
    // the check exercises the classical semantics it claims to test.
    let k = config.args.len();
    let arg_mask: Vec<ModelMask> = config.args.iter().map(|&i| scan.masks[i]).collect();
    let neg_mask: Vec<ModelMask> = config
        .args
        .iter()
        .map(|&i| sat_mask(fcm.world(), &Formula::not(lang.formula(i).clone())))
        .collect();
    let mut conj_mask = vec![ModelMask::EMPTY; k * k];
    let mut or_mask = vec![ModelMask::EMPTY; k * k];
    for (ai, &a) in config.args.iter().enumerate() {
        for (bi, &b) in config.args.iter().enumerate() {
            let fa = lang.formula(a).clone();
            let fb = lang.formula(b).clone();
            conj_mask[ai * k + bi] = sat_mask(fcm.world(), &Formula::and(fa.clone(), fb.clone()));
            or_mask[ai * k + bi] = sat_mask(fcm.world(), &Formula::or(fa, fb));
        }
    }

    for premise in &config.premises {
        let base = scan.premise_mask(premise);
        let base_value = scan.consequence_value(base);

        for (ai, &a) in config.args.iter().enumerate() {
            let sat_a = arg_mask[ai];
            let sat_not_a = neg_mask[ai];

            if neg1.is_none() {
                // C(A, a, !a) must be the full language.
                let hat = base.inter(sat_a).inter(sat_not_a);
                if !scan.is_full(scan.consequence_value(hat)) {
                    neg1 = Some(Witness::trace(format!(
                        "A={}, a={}: C(A,a,!a) is not the full language",
                        scan.render_premise(premise),
                        lang.formula(a).render(lang.base()),
                    )));
                }
            }

            if neg2.is_none() {
                // C(A, !a) = L forces a ∈ C(A).
                let hat = base.inter(sat_not_a);
                if scan.is_full(scan.consequence_value(hat)) && !scan.member(base_value, sat_a) {
                    neg2 = Some(Witness::trace(format!(
                        "A={}, a={}: C(A,!a) is full but a ∉ C(A)",
                        scan.render_premise(premise),
                        lang.formula(a).render(lang.base()),
                    )));
                }
            }

            for (bi, &b) in config.args.iter().enumerate() {
                let sat_b = arg_mask[bi];
                let sat_conj = conj_mask[ai * k + bi];
                let sat_or = or_mask[ai * k + bi];

                if and_rule.is_none() {
                    let v1 = scan.consequence_value(base.inter(sat_conj));
                    let v2 = scan.consequence_value(base.inter(sat_a).inter(sat_b));
                    if !scan.same_consequences(v1, v2) {
                        and_rule = Some(Witness::trace(format!(
                            "A={}, a={}, b={}: C(A, a&b) differs from C(A, a, b)",
                            scan.render_premise(premise),
                            lang.formula(a).render(lang.base()),
                            lang.formula(b).render(lang.base()),
                        )));
                    }
                }

                if or1.is_none()
                    && scan.member(base_value, sat_a)
                    && !(scan.member(base_value, sat_or)
                        && scan.member(base_value, or_mask[bi * k + ai]))
                {
                    or1 = Some(Witness::trace(format!(
                        "A={}, a={}, b={}: a ∈ C(A) but a|b ∉ C(A)",
                        scan.render_premise(premise),
                        lang.formula(a).render(lang.base()),
                        lang.formula(b).render(lang.base()),
                    )));
                }

                if or2.is_none() {
                    let va = scan.consequence_value(base.inter(sat_a));
                    let vb = scan.consequence_value(base.inter(sat_b));
                    let vor = scan.consequence_value(base.inter(sat_or));
                    // No violation is possible when the disjunction's choice
                    // value sits inside the union.
                    if !vor.subset_of(va.union(vb)) {
                        let joint = va.union(vb);
                        if let Some(phi) = scan
                            .masks
                            .iter()
                            .position(|m| joint.subset_of(*m) && !vor.subset_of(*m))
                        {
                            or2 = Some(Witness::trace(format!(
                                "A={}, a={}, b={}: {} ∈ C(A,a) ∩ C(A,b) but ∉ C(A, a|b); \
                                 hat(A,a)={} f={}; hat(A,b)={} f={}; hat(A,a|b)={} f={}",
                                scan.render_premise(premise),
                                lang.formula(a).render(lang.base()),
                                lang.formula(b).render(lang.base()),
                                lang.formula(phi).render(lang.base()),
                                scan.render_models(base.inter(sat_a)),
                                scan.render_models(va),
                                scan.render_models(base.inter(sat_b)),
                                scan.render_models(vb),
                                scan.render_models(base.inter(sat_or)),
                                scan.render_models(vor),
                            )));
                        }
                    }
                }
            }
        }
    }

    let to_report = |name: &str, witness: Option<Witness>| match witness {
        None => PropertyReport::holds(name).with_note(bound_note.clone()),
        Some(w) => PropertyReport::fails(name, w).with_note(bound_note.clone()),
    };
    vec![
        to_report(AND_RULE, and_rule),
        to_report(NEG_RULE_1, neg1),
        to_report(NEG_RULE_2, neg2),
        to_report(OR_RULE_1, or1),
        to_report(OR_RULE_2, or2),
    ]
}

/// C(A) within the closed language: ids of every enumerated formula holding
/// throughout the choice value of hat(A). Premise formulas may lie outside
/// the closure.
pub fn extended_consequence(
    fcm: &FCModel,
    lang: &ClosedLanguage,
    premise: &[Formula],
) -> Vec<usize> {
    let masks = lang.sat_masks(fcm.world());
    let hat = premise.iter().fold(fcm.world().full_mask(), |m, phi| {
        m.inter(sat_mask(fcm.world(), phi))
    });
    let value = fcm.value(hat);
    (0..lang.len())
        .filter(|&i| value.subset_of(masks[i]))
        .collect()
}

/// Membership of one formula in C(A) for the same extension.
pub fn formula_in_consequence(fcm: &FCModel, premise: &[Formula], phi: &Formula) -> bool {
    let hat = premise.iter().fold(fcm.world().full_mask(), |m, f| {
        m.inter(sat_mask(fcm.world(), f))
    });
    fcm.value(hat).subset_of(sat_mask(fcm.world(), phi))
}

/// Extends a cumulative table conservatively: represent it, close the
/// language under the connectives to the given depth with classical
/// satisfaction, and verify P ∩ C'(A) = C(A) for every A over the base atoms.
pub fn conservative_extension_check(
    table: &ConsequenceTable,
    depth: usize,
) -> Result<PropertyReport, Error> {
    let name = format!("conservative extension (depth {depth})");
    let fcm = represent(table)?;
    let lang = ClosedLanguage::new(table.language().clone(), depth);
    let masks = lang.sat_masks(fcm.world());
    let atom_count = table.language().len();

    for a in table.language().subsets() {
        let value = fcm.value(mod_of(fcm.world(), a));
        // Atoms of the closure are its first ids, in language order.
        let mut restricted = AtomSet::EMPTY;
        for p in 0..atom_count {
            if value.subset_of(masks[p]) {
                restricted = restricted.insert(p);
            }
        }
        debug_assert_eq!(restricted, theory_of(fcm.world(), value));
        if restricted != table.row(a) {
            return Ok(PropertyReport::fails(
                name,
                Witness::sets(vec![LabeledSet::new("A", table.language().render(a), a.0)]),
            ));
        }
    }
    Ok(PropertyReport::holds(name).with_note(format!("{} formulas in the closure", lang.len())))
}

fn eval_under_valuation(phi: &Formula, valuation: AtomSet) -> bool {
    match phi {
        Formula::Atom(i) => valuation.contains(*i),
        Formula::And(l, r) => {
            eval_under_valuation(l, valuation) && eval_under_valuation(r, valuation)
        }
        Formula::Neg(c) => !eval_under_valuation(c, valuation),
    }
}

/// For every pair a, b in the closure with a ⊨ b (truth-table entailment over
/// all classical valuations of the base atoms), checks that b ∈ C(A, a) for
/// every configured premise A, and that C(a, !b) is the full language.
pub fn classical_implication_checks(
    fcm: &FCModel,
    lang: &ClosedLanguage,
    config: &RuleCheckConfig,
) -> PropertyReport {
    const NAME: &str = "classical implication consequences";
    let scan = RuleScan::new(fcm, lang);
    let valuations: Vec<AtomSet> = lang.base().subsets().collect();
    let truth: Vec<u32> = lang
        .formulas()
        .iter()
        .map(|f| {
            let mut bits = 0u32;
            for (vi, &v) in valuations.iter().enumerate() {
                if eval_under_valuation(f, v) {
                    bits |= 1 << vi;
                }
            }
            bits
        })
        .collect();
    let premise_masks: Vec<ModelMask> = config
        .premises
        .iter()
        .map(|ids| scan.premise_mask(ids))
        .collect();

    let mut pairs = 0usize;
    for a in 0..lang.len() {
        for b in 0..lang.len() {
            // a entails b classically.
            if truth[a] & !truth[b] != 0 {
                continue;
            }
            pairs += 1;
            let sat_a = scan.masks[a];
            let sat_b = scan.masks[b];
            for (pi, &pm) in premise_masks.iter().enumerate() {
                let value = scan.consequence_value(pm.inter(sat_a));
                if !scan.member(value, sat_b) {
                    return PropertyReport::fails(
                        NAME,
                        Witness::trace(format!(
                            "a={}, b={}, A={}: a ⊨ b but b ∉ C(A, a)",
                            lang.formula(a).render(lang.base()),
                            lang.formula(b).render(lang.base()),
                            scan.render_premise(&config.premises[pi]),
                        )),
                    );
                }
            }
            let not_b = sat_mask(fcm.world(), &Formula::not(lang.formula(b).clone()));
            if !scan.is_full(scan.consequence_value(sat_a.inter(not_b))) {
                return PropertyReport::fails(
                    NAME,
                    Witness::trace(format!(
                        "a={}, b={}: a ⊨ b but C(a, !b) is not the full language",
                        lang.formula(a).render(lang.base()),
                        lang.formula(b).render(lang.base()),
                    )),
                );
            }
        }
    }
    PropertyReport::holds(NAME).with_note(format!("{pairs} entailing pairs checked"))
}
