//! Builds a restricted choice-function model presenting a given cumulative
//! consequence table, exactly.

use crate::axioms::{check_cumulativity, check_inclusion};
use crate::choice::{ChoiceFunction, FCModel};
use crate::error::Error;
use crate::table::ConsequenceTable;
use crate::theory::theories;
use crate::world::{mod_of, ModelMask, ModelWorld};

/// The models are the consistent theories, satisfaction is membership, and
/// the choice function maps each definable set hat(A) to hat(C(A)), extended
/// to arbitrary sets by the two-case sandwich rule.
///
/// Requires the defining pair of axioms; rejects other tables naming the
/// failed axiom. The round trip through [`crate::choice::induced_consequence`]
/// reproduces the input bit-exactly, which the test suite enforces over the
/// whole generated corpus.
pub fn represent(table: &ConsequenceTable) -> Result<FCModel, Error> {
    for report in [check_inclusion(table), check_cumulativity(table)] {
        if !report.holds {
            return Err(Error::NotACLogic {
                axiom: report.property,
            });
        }
    }

    let lang = table.language().clone();
    let consistent = theories(table, true);
    let models: Vec<(String, _)> = consistent
        .iter()
        .map(|&t| {
            let name = format!("{{{}}}", lang.render(t).join(","));
            (name, t)
        })
        .collect();
    let world = ModelWorld::new(lang, models).expect("theory count is bounded by 2^n");

    // f(hat(A)) = hat(C(A)). Different A with the same hat(A) must agree;
    // that is a consequence of the two axioms, re-checked here instead of
    // trusted.
    let mut entries: Vec<(ModelMask, ModelMask)> = Vec::new();
    let mut assigned: Vec<Option<ModelMask>> = vec![None; world.mask_count()];
    for a in table.language().subsets() {
        let definable = mod_of(&world, a);
        let value = mod_of(&world, table.row(a));
        match assigned[definable.0 as usize] {
            None => {
                assigned[definable.0 as usize] = Some(value);
                entries.push((definable, value));
            }
            Some(previous) => {
                if previous != value {
                    return Err(Error::IllFormedChoice);
                }
            }
        }
    }

    Ok(FCModel::new(world, ChoiceFunction::two_case(entries), true))
}

/// On a representation, the closure bar(hat(A)) coincides with Cn(A) for
/// every A: both are the intersection of the consistent theories above A.
pub fn closure_matches_cn(table: &ConsequenceTable, fcm: &FCModel) -> bool {
    let theory_list = crate::theory::theories(table, false);
    table.language().subsets().all(|a| {
        crate::world::theory_of(fcm.world(), crate::world::mod_of(fcm.world(), a))
            == crate::theory::cn_over(table, &theory_list, a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{check_choice_axioms, induced_consequence};
    use crate::lang::{AtomLanguage, AtomSet};
    use crate::theory::cn;
    use crate::world::theory_of;

    fn ab() -> AtomLanguage {
        AtomLanguage::new(["a", "b"]).unwrap()
    }

    #[test]
    fn identity_table_round_trip() {
        let t = ConsequenceTable::identity(ab());
        let fcm = represent(&t).unwrap();
        // Consistent theories only: the full language is a fixpoint but is
        // inconsistent, so three models remain.
        assert_eq!(fcm.world().model_count(), 3);
        assert_eq!(induced_consequence(&fcm), t);
        assert!(check_choice_axioms(&fcm)[..3].iter().all(|r| r.holds));
    }

    #[test]
    fn constant_full_table_round_trip_through_the_empty_world() {
        let t = ConsequenceTable::constant_full(ab());
        let fcm = represent(&t).unwrap();
        assert_eq!(fcm.world().model_count(), 0);
        assert_eq!(induced_consequence(&fcm), t);
    }

    #[test]
    fn non_c_logic_is_rejected_by_axiom_name() {
        let t = ConsequenceTable::identity(ab()).with_row(AtomSet::EMPTY, AtomSet(3));
        match represent(&t) {
            Err(Error::NotACLogic { axiom }) => assert_eq!(axiom, "Cumulativity"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn closure_of_hat_equals_cn_on_the_representation() {
        let t = ConsequenceTable::identity(ab());
        let fcm = represent(&t).unwrap();
        for a in t.language().subsets() {
            let bar_hat = theory_of(fcm.world(), mod_of(fcm.world(), a));
            assert_eq!(bar_hat, cn(&t, a));
        }
        assert!(closure_matches_cn(&t, &fcm));
    }
}
