//! Formulas over a finite atom language, closed under conjunction and
//! negation up to a depth bound. Disjunction is not a node kind: `a | b`
//! abbreviates `!(!a & !b)` and is expanded at construction time.

use std::collections::HashMap;
use std::fmt;

use crate::error::SchemaError;
use crate::lang::AtomLanguage;
use crate::world::{ModelMask, ModelWorld};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(usize),
    And(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
}

impl Formula {
    pub fn atom(index: usize) -> Self {
        Formula::Atom(index)
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    // Constructor, not the operator trait; formulas are built by value.
    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Self {
        Formula::Neg(Box::new(child))
    }

    /// The classical abbreviation: a | b is !(!a & !b).
    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(left), Formula::not(right)))
    }

    /// Connective nesting count; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::And(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Neg(c) => 1 + c.depth(),
        }
    }

    /// Renders with atom names; fully parenthesized conjunctions.
    pub fn render(&self, lang: &AtomLanguage) -> String {
        match self {
            Formula::Atom(i) => lang.atom(*i).to_string(),
            Formula::And(l, r) => format!("({} & {})", l.render(lang), r.render(lang)),
            Formula::Neg(c) => format!("!{}", c.render(lang)),
        }
    }
}

/// Classical evaluation in one model of a world.
pub fn eval_formula(world: &ModelWorld, phi: &Formula, model: usize) -> bool {
    match phi {
        Formula::Atom(i) => world.satisfies(model, *i),
        Formula::And(l, r) => eval_formula(world, l, model) && eval_formula(world, r, model),
        Formula::Neg(c) => !eval_formula(world, c, model),
    }
}

/// The mask of models satisfying a formula.
pub fn sat_mask(world: &ModelWorld, phi: &Formula) -> ModelMask {
    let mut mask = ModelMask::EMPTY;
    for m in 0..world.model_count() {
        if eval_formula(world, phi, m) {
            mask = mask.insert(m);
        }
    }
    mask
}

/// Every formula over the base atoms of depth at most the bound, each exactly
/// once, in a deterministic order: atoms first, then depth level by level
/// (negations before conjunctions).
#[derive(Debug, Clone)]
pub struct ClosedLanguage {
    base: AtomLanguage,
    depth: usize,
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl ClosedLanguage {
    pub fn new(base: AtomLanguage, depth: usize) -> Self {
        let mut formulas: Vec<Formula> = (0..base.len()).map(Formula::atom).collect();
        let mut level_start = 0;
        for _ in 1..=depth {
            let prev_len = formulas.len();
            // depth(f) = level exactly when a child reaches level - 1.
            for i in 0..prev_len {
                if i >= level_start {
                    formulas.push(Formula::not(formulas[i].clone()));
                }
            }
            for i in 0..prev_len {
                for j in 0..prev_len {
                    if i >= level_start || j >= level_start {
                        formulas.push(Formula::and(formulas[i].clone(), formulas[j].clone()));
                    }
                }
            }
            level_start = prev_len;
        }
        let index = formulas
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        ClosedLanguage {
            base,
            depth,
            formulas,
            index,
        }
    }

    pub fn base(&self) -> &AtomLanguage {
        &self.base
    }

    pub fn depth_bound(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn formula(&self, id: usize) -> &Formula {
        &self.formulas[id]
    }

    pub fn id_of(&self, phi: &Formula) -> Option<usize> {
        self.index.get(phi).copied()
    }

    /// Ids of all formulas up to the given depth.
    pub fn ids_up_to_depth(&self, depth: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.formulas[i].depth() <= depth)
            .collect()
    }

    /// One satisfaction mask per formula, in id order.
    pub fn sat_masks(&self, world: &ModelWorld) -> Vec<ModelMask> {
        self.formulas.iter().map(|f| sat_mask(world, f)).collect()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    lang: &'a AtomLanguage,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, message: impl Into<String>) -> SchemaError {
        SchemaError::field(format!("formula at position {}", self.pos), message)
    }

    // or := and ('|' and)*
    fn or_expr(&mut self) -> Result<Formula, SchemaError> {
        let mut left = self.and_expr()?;
        while self.peek() == Some('|') {
            self.bump();
            let right = self.and_expr()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    // and := unary ('&' unary)*
    fn and_expr(&mut self) -> Result<Formula, SchemaError> {
        let mut left = self.unary()?;
        while self.peek() == Some('&') {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SchemaError> {
        match self.peek() {
            Some('!') => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some('(') => {
                self.bump();
                let inner = self.or_expr()?;
                if self.bump() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = self
                    .lang
                    .index_of(&name)
                    .ok_or(SchemaError::UnknownAtom(name))?;
                Ok(Formula::atom(idx))
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses the text syntax: atom names, `&`, `!`, parentheses, and `|` as
/// sugar for the negation-conjunction expansion. Whitespace-insensitive.
pub fn parse_formula(text: &str, lang: &AtomLanguage) -> Result<Formula, SchemaError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        lang,
    };
    let formula = parser.or_expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(formula)
}

impl fmt::Display for Formula {
    /// Debug-ish rendering with atom indices, for contexts without a language.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(i) => write!(f, "p{i}"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Neg(c) => write!(f, "!{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::AtomLanguage;

    fn abc() -> AtomLanguage {
        AtomLanguage::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn closure_counts() {
        // depth <= 1 over k atoms: k + k + k^2; each further level squares
        // the pool and adds negations.
        // 3 atoms; 3 + 9 formulas of depth exactly one; 12 negations and
        // 15*15 - 9 conjunctions of depth exactly two.
        let lang = abc();
        assert_eq!(ClosedLanguage::new(lang.clone(), 0).len(), 3);
        assert_eq!(ClosedLanguage::new(lang.clone(), 1).len(), 15);
        assert_eq!(ClosedLanguage::new(lang, 2).len(), 243);
    }

    #[test]
    fn closure_has_no_duplicates_and_respects_depth() {
        let lang = abc();
        let closed = ClosedLanguage::new(lang, 2);
        let mut seen = std::collections::HashSet::new();
        for f in closed.formulas() {
            assert!(f.depth() <= 2);
            assert!(seen.insert(f.clone()), "duplicate formula {f}");
        }
    }

    #[test]
    fn or_sugar_expands_at_parse_time() {
        let lang = abc();
        let parsed = parse_formula("a | b", &lang).unwrap();
        let expected = Formula::or(Formula::atom(0), Formula::atom(1));
        assert_eq!(parsed, expected);
        assert_eq!(parsed.render(&lang), "!(!a & !b)");
        assert_eq!(parsed.depth(), 3);
    }

    #[test]
    fn parser_accepts_nesting_and_whitespace() {
        let lang = abc();
        let parsed = parse_formula("  ! ( a &  !b ) & c ", &lang).unwrap();
        assert_eq!(parsed.render(&lang), "(!(a & !b) & c)");
        assert!(parse_formula("a &", &lang).is_err());
        assert!(parse_formula("(a", &lang).is_err());
        assert!(parse_formula("d", &lang).is_err());
        assert!(parse_formula("a b", &lang).is_err());
    }

    proptest::proptest! {
        #[test]
        fn rendered_formulas_reparse_to_themselves(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let lang = abc();
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            fn random_formula(rng: &mut rand::rngs::StdRng, depth: usize) -> Formula {
                if depth == 0 || rng.random_range(0..3) == 0 {
                    Formula::atom(rng.random_range(0..3))
                } else if rng.random_bool(0.5) {
                    Formula::not(random_formula(rng, depth - 1))
                } else {
                    Formula::and(
                        random_formula(rng, depth - 1),
                        random_formula(rng, depth - 1),
                    )
                }
            }
            let f = random_formula(&mut rng, 4);
            let reparsed = parse_formula(&f.render(&lang), &lang).unwrap();
            proptest::prop_assert_eq!(reparsed, f);
        }
    }
}
