//! Model sets, satisfaction, and the two polarity maps between formula sets
//! and model sets.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::SchemaError;
use crate::lang::{AtomLanguage, AtomSet};
use crate::mask::bitset_type;
use crate::report::{LabeledSet, PropertyReport, Witness};

/// Cap on world size; choice-function scans walk 2^|M| subsets.
pub const MAX_MODELS: usize = 24;

/// Above this exponent the pairwise polarity laws are sampled instead of
/// enumerated (the single-set laws stay exhaustive).
const PAIR_EXHAUSTIVE_BITS: usize = 12;
const PAIR_SAMPLES: usize = 1_000_000;

bitset_type! {
    /// A subset of a world's models.
    ModelMask
}

/// A finite set of named models with an arbitrary satisfaction relation,
/// stored as one atom set per model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelWorld {
    language: AtomLanguage,
    models: Vec<String>,
    sat: Vec<AtomSet>,
    /// For each atom, the mask of models satisfying it.
    atom_models: Vec<ModelMask>,
}

impl ModelWorld {
    pub fn new(
        language: AtomLanguage,
        models: Vec<(String, AtomSet)>,
    ) -> Result<Self, SchemaError> {
        if models.len() > MAX_MODELS {
            return Err(SchemaError::TooManyModels(models.len(), MAX_MODELS));
        }
        let mut names = Vec::with_capacity(models.len());
        let mut sat = Vec::with_capacity(models.len());
        for (i, (name, s)) in models.iter().enumerate() {
            if models[..i].iter().any(|(n, _)| n == name) {
                return Err(SchemaError::DuplicateModel(name.clone()));
            }
            if !s.subset_of(language.full_set()) {
                return Err(SchemaError::field(
                    format!("models[{i}].sat"),
                    "atom outside the language",
                ));
            }
            names.push(name.clone());
            sat.push(*s);
        }
        let atom_models = (0..language.len())
            .map(|a| {
                let mut mask = ModelMask::EMPTY;
                for (m, s) in sat.iter().enumerate() {
                    if s.contains(a) {
                        mask = mask.insert(m);
                    }
                }
                mask
            })
            .collect();
        Ok(ModelWorld {
            language,
            models: names,
            sat,
            atom_models,
        })
    }

    pub fn language(&self) -> &AtomLanguage {
        &self.language
    }

    pub fn model_count(&self) -> usize {
        self.models.len()
    }

    pub fn model_name(&self, index: usize) -> &str {
        &self.models[index]
    }

    pub fn model_names(&self) -> &[String] {
        &self.models
    }

    pub fn sat_set(&self, model: usize) -> AtomSet {
        self.sat[model]
    }

    pub fn satisfies(&self, model: usize, atom: usize) -> bool {
        self.sat[model].contains(atom)
    }

    /// Mask of models satisfying one atom.
    pub fn models_of_atom(&self, atom: usize) -> ModelMask {
        self.atom_models[atom]
    }

    pub fn full_mask(&self) -> ModelMask {
        ModelMask(((1u64 << self.models.len()) - 1) as u32)
    }

    pub fn mask_count(&self) -> usize {
        1 << self.models.len()
    }

    pub fn masks(&self) -> impl Iterator<Item = ModelMask> {
        (0..self.mask_count() as u32).map(ModelMask)
    }

    pub fn render_mask(&self, mask: ModelMask) -> Vec<String> {
        mask.iter().map(|i| self.models[i].clone()).collect()
    }

    pub fn mask_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ModelMask, SchemaError> {
        let mut mask = ModelMask::EMPTY;
        for n in names {
            let idx = self
                .models
                .iter()
                .position(|m| m == n.as_ref())
                .ok_or_else(|| SchemaError::UnknownModel(n.as_ref().to_string()))?;
            mask = mask.insert(idx);
        }
        Ok(mask)
    }
}

/// The models satisfying every member of A. The empty set maps to all models.
pub fn mod_of(world: &ModelWorld, a: AtomSet) -> ModelMask {
    let mut mask = world.full_mask();
    for atom in a.iter() {
        mask = mask.inter(world.atom_models[atom]);
    }
    mask
}

/// The atoms satisfied in every member of X. The empty mask maps to the full
/// language.
pub fn theory_of(world: &ModelWorld, x: ModelMask) -> AtomSet {
    let mut set = world.language().full_set();
    for m in x.iter() {
        set = set.inter(world.sat_set(m));
    }
    set
}

/// All definable model sets: the image of [`mod_of`], deduplicated, in first
/// occurrence order over mask-ordered formula sets. The image is closed under
/// intersection; [`check_definable_intersections`] re-checks that.
pub fn definable_sets(world: &ModelWorld) -> Vec<ModelMask> {
    let mut seen = vec![false; world.mask_count()];
    let mut out = Vec::new();
    for a in world.language().subsets() {
        let d = mod_of(world, a);
        if !seen[d.0 as usize] {
            seen[d.0 as usize] = true;
            out.push(d);
        }
    }
    out
}

/// Intersections of definable sets must be definable.
pub fn check_definable_intersections(world: &ModelWorld) -> PropertyReport {
    let defs = definable_sets(world);
    let mut is_def = vec![false; world.mask_count()];
    for d in &defs {
        is_def[d.0 as usize] = true;
    }
    for (i, &x) in defs.iter().enumerate() {
        for &y in &defs[i..] {
            let meet = x.inter(y);
            if !is_def[meet.0 as usize] {
                return PropertyReport::fails(
                    "definable sets closed under intersection",
                    Witness::sets(vec![
                        LabeledSet::new("X", world.render_mask(x), x.0),
                        LabeledSet::new("Y", world.render_mask(y), y.0),
                    ]),
                );
            }
        }
    }
    PropertyReport::holds("definable sets closed under intersection")
}

fn fail_sets(world: &ModelWorld, law: &str, masks: &[(&str, ModelMask)]) -> PropertyReport {
    PropertyReport::fails(
        law,
        Witness::sets(
            masks
                .iter()
                .map(|(l, m)| LabeledSet::new(*l, world.render_mask(*m), m.0))
                .collect(),
        ),
    )
}

fn fail_atom_sets(world: &ModelWorld, law: &str, sets: &[(&str, AtomSet)]) -> PropertyReport {
    PropertyReport::fails(
        law,
        Witness::sets(
            sets.iter()
                .map(|(l, s)| LabeledSet::new(*l, world.language().render(*s), s.0))
                .collect(),
        ),
    )
}

/// Verifies the polarity laws between formula sets and model sets:
/// expansion on both sides, union-to-intersection on both sides,
/// antitonicity, closure-map monotonicity, and triple-application collapse.
///
/// Single-set laws are exhaustive. The pairwise laws are exhaustive up to
/// 2^12 subsets on each side and sampled (seeded, one million pairs) above,
/// with the note recording the sampling.
pub fn check_galois(world: &ModelWorld) -> PropertyReport {
    const LAW: &str = "Galois connection";
    let n_atoms = world.language().len();
    let n_models = world.model_count();

    // Single-set laws, both polarities.
    for a in world.language().subsets() {
        let hat = mod_of(world, a);
        if !a.subset_of(theory_of(world, hat)) {
            return fail_atom_sets(world, LAW, &[("A", a)]).with_note("A not within bar(hat(A))");
        }
        if mod_of(world, theory_of(world, hat)) != hat {
            return fail_atom_sets(world, LAW, &[("A", a)])
                .with_note("hat(bar(hat(A))) differs from hat(A)");
        }
    }
    for x in world.masks() {
        let bar = theory_of(world, x);
        if !x.subset_of(mod_of(world, bar)) {
            return fail_sets(world, LAW, &[("X", x)]).with_note("X not within hat(bar(X))");
        }
        if theory_of(world, mod_of(world, bar)) != bar {
            return fail_sets(world, LAW, &[("X", x)])
                .with_note("bar(hat(bar(X))) differs from bar(X)");
        }
    }

    let mut sampled = false;

    // Formula-side pair laws.
    if n_atoms <= PAIR_EXHAUSTIVE_BITS {
        for a in world.language().subsets() {
            for b in world.language().subsets() {
                if let Some(report) = formula_pair_violation(world, a, b) {
                    return report;
                }
            }
        }
    } else {
        sampled = true;
        let mut rng = StdRng::seed_from_u64(0x6a1015);
        let top = world.language().subset_count() as u32;
        for _ in 0..PAIR_SAMPLES {
            let a = AtomSet(rng.random_range(0..top));
            let b = AtomSet(rng.random_range(0..top));
            if let Some(report) = formula_pair_violation(world, a, b) {
                return report.with_note("found by sampling");
            }
        }
    }

    // Model-side pair laws.
    if n_models <= PAIR_EXHAUSTIVE_BITS {
        for x in world.masks() {
            for y in world.masks() {
                if let Some(report) = model_pair_violation(world, x, y) {
                    return report;
                }
            }
        }
    } else {
        sampled = true;
        let mut rng = StdRng::seed_from_u64(0x6a1016);
        let top = world.mask_count() as u32;
        for _ in 0..PAIR_SAMPLES {
            let x = ModelMask(rng.random_range(0..top));
            let y = ModelMask(rng.random_range(0..top));
            if let Some(report) = model_pair_violation(world, x, y) {
                return report.with_note("found by sampling");
            }
        }
    }

    let report = PropertyReport::holds(LAW);
    if sampled {
        report.with_note(format!("pair laws sampled ({PAIR_SAMPLES} pairs)"))
    } else {
        report
    }
}

fn formula_pair_violation(world: &ModelWorld, a: AtomSet, b: AtomSet) -> Option<PropertyReport> {
    const LAW: &str = "Galois connection";
    if mod_of(world, a.union(b)) != mod_of(world, a).inter(mod_of(world, b)) {
        return Some(
            fail_atom_sets(world, LAW, &[("A", a), ("B", b)])
                .with_note("hat(A u B) differs from hat(A) n hat(B)"),
        );
    }
    if a.subset_of(b) {
        if !mod_of(world, b).subset_of(mod_of(world, a)) {
            return Some(
                fail_atom_sets(world, LAW, &[("A", a), ("B", b)]).with_note("hat not antitone"),
            );
        }
        let cl_a = theory_of(world, mod_of(world, a));
        let cl_b = theory_of(world, mod_of(world, b));
        if !cl_a.subset_of(cl_b) {
            return Some(
                fail_atom_sets(world, LAW, &[("A", a), ("B", b)])
                    .with_note("bar(hat(-)) not monotone"),
            );
        }
    }
    None
}

fn model_pair_violation(world: &ModelWorld, x: ModelMask, y: ModelMask) -> Option<PropertyReport> {
    const LAW: &str = "Galois connection";
    if theory_of(world, x.union(y)) != theory_of(world, x).inter(theory_of(world, y)) {
        return Some(
            fail_sets(world, LAW, &[("X", x), ("Y", y)])
                .with_note("bar(X u Y) differs from bar(X) n bar(Y)"),
        );
    }
    if x.subset_of(y) {
        if !theory_of(world, y).subset_of(theory_of(world, x)) {
            return Some(
                fail_sets(world, LAW, &[("X", x), ("Y", y)]).with_note("bar not antitone"),
            );
        }
        let cl_x = mod_of(world, theory_of(world, x));
        let cl_y = mod_of(world, theory_of(world, y));
        if !cl_x.subset_of(cl_y) {
            return Some(
                fail_sets(world, LAW, &[("X", x), ("Y", y)]).with_note("hat(bar(-)) not monotone"),
            );
        }
    }
    None
}
