//! Decision procedures for inclusions `t1 ≤ t2` over all language models,
//! for the fragments where a finite family of words-to-letters valuations
//! is complete, plus a bounded refutation oracle.

mod enumerate;
mod oracle;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::{is_star_free, require_fragment, sup_length, ExtWord, FragmentClass, SupLength, Term};
pub use crate::semantics::{Refutation, Verdict};
use enumerate::{InclusionCache, Instance};

pub use oracle::{oracle_refute, oracle_refute_batch, OracleBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    /// Only test whether `l0 … l{m-1}` separates the two sides.
    FullWordWitness,
    /// Compare the full values of both sides.
    FullInclusion,
}

#[derive(Clone, Debug)]
pub struct DecideConfig {
    /// Largest number of fresh letters a procedure may enumerate.
    pub max_block_count: usize,
    pub enumeration_mode: EnumerationMode,
    /// Spread the full-word enumeration over worker threads.
    pub parallel: bool,
    /// Largest number of valuations enumerated for one letter count.
    pub max_valuations: u64,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            max_block_count: 8,
            enumeration_mode: EnumerationMode::FullWordWitness,
            parallel: false,
            max_valuations: 1 << 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Procedure {
    Identity,
    Variable,
    Word,
    StarFree,
    Universality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Le,
    Eq,
}

/// Result of one inclusion inside [`Decider::auto`].
#[derive(Clone, Debug)]
pub enum CheckResult {
    Decided(Verdict),
    Unsupported(String),
    BudgetExceeded(String),
}

#[derive(Clone, Debug)]
pub struct InclusionCheck {
    pub lhs: Term,
    pub rhs: Term,
    pub procedure: Option<Procedure>,
    pub result: CheckResult,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Refuted,
    Unsupported,
    BudgetExceeded,
}

/// One check for `≤`, two for `=` (left-in-right first).
#[derive(Clone, Debug)]
pub struct AutoOutcome {
    pub checks: Vec<InclusionCheck>,
}

impl AutoOutcome {
    /// Refuted if any check refutes, otherwise the first failure to decide,
    /// otherwise Holds.
    pub fn status(&self) -> Status {
        let mut status = Status::Holds;
        for c in &self.checks {
            match &c.result {
                CheckResult::Decided(Verdict::Refuted(_)) => return Status::Refuted,
                CheckResult::Unsupported(_) if status == Status::Holds => status = Status::Unsupported,
                CheckResult::BudgetExceeded(_) if status == Status::Holds => status = Status::BudgetExceeded,
                _ => {}
            }
        }
        status
    }

    pub fn refutation(&self) -> Option<(&InclusionCheck, &Refutation)> {
        self.checks.iter().find_map(|c| match &c.result {
            CheckResult::Decided(Verdict::Refuted(r)) => Some((c, r)),
            _ => None,
        })
    }
}

/// Runs the procedures under one configuration. In inclusion mode the
/// languages computed for each letter count are kept between calls.
pub struct Decider {
    config: DecideConfig,
    cache: InclusionCache,
}

fn vars_of(terms: &[&Term], extra: &[&str]) -> Vec<String> {
    let mut vars: BTreeSet<String> = extra.iter().map(|s| s.to_string()).collect();
    for t in terms {
        vars.extend(t.vars());
    }
    vars.into_iter().collect()
}

fn top() -> Term {
    Term::plus(Term::One, Term::CoOne)
}

impl Decider {
    pub fn new(config: DecideConfig) -> Decider {
        Decider { config, cache: InclusionCache::default() }
    }

    pub fn config(&self) -> &DecideConfig {
        &self.config
    }

    fn bounded(&mut self, lhs: &Term, rhs: &Term, bound: usize, extra: &[&str]) -> Result<Verdict> {
        let inst = Instance { lhs, rhs, vars: vars_of(&[lhs, rhs], extra), bound };
        enumerate::run(&inst, &self.config, &mut self.cache)
    }

    /// `1 ≤ t`, decided on the empty alphabet.
    pub fn identity_inclusion(&mut self, t: &Term) -> Result<Verdict> {
        let t = t.expand_top();
        require_fragment(&t, FragmentClass::KaCxC1)?;
        self.bounded(&Term::One, &t, 0, &[])
    }

    /// `x ≤ t`, decided on one letter with values below `{ε, l0}`.
    pub fn variable_inclusion(&mut self, x: &str, t: &Term) -> Result<Verdict> {
        let t = t.expand_top();
        require_fragment(&t, FragmentClass::KaCxC1)?;
        self.bounded(&Term::Var(x.to_string()), &t, 1, &[])
    }

    /// `u ≤ t` for an extended word `u`, with at most `|u|` letters.
    pub fn word_inclusion(&mut self, u: &ExtWord, t: &Term) -> Result<Verdict> {
        let t = t.expand_top();
        require_fragment(&t, FragmentClass::KaCxC1)?;
        self.bounded(&u.to_term(), &t, u.len(), &[])
    }

    /// `t1 ≤ t2` for star-free `t1`, with at most `sup_length(t1)` letters.
    pub fn starfree_inclusion(&mut self, t1: &Term, t2: &Term) -> Result<Verdict> {
        let (t1, t2) = (t1.expand_top(), t2.expand_top());
        require_fragment(&t1, FragmentClass::KaCxC1)?;
        require_fragment(&t2, FragmentClass::KaCxC1)?;
        if !is_star_free(&t1) {
            return Err(Error::NotStarFree);
        }
        let SupLength::Finite(n) = sup_length(&t1)? else {
            return Err(Error::NotStarFree);
        };
        self.bounded(&t1, &t2, n, &[])
    }

    /// `1 + !1 ≤ t`: ε on every profile, `l0` on every one-letter valuation.
    pub fn universality(&mut self, t: &Term) -> Result<Verdict> {
        let t = t.expand_top();
        require_fragment(&t, FragmentClass::KaCxC1)?;
        self.bounded(&top(), &t, 1, &[])
    }

    /// Picks the most specific procedure for `lhs`.
    pub fn route(lhs: &Term, rhs: &Term) -> std::result::Result<Procedure, String> {
        if require_fragment(&rhs.expand_top(), FragmentClass::KaCxC1).is_err() {
            return Err("right side uses full complement".into());
        }
        if *lhs == Term::One {
            return Ok(Procedure::Identity);
        }
        if matches!(lhs, Term::Var(_)) {
            return Ok(Procedure::Variable);
        }
        if lhs.is_top_pattern() {
            return Ok(Procedure::Universality);
        }
        if ExtWord::from_term(lhs).is_some() {
            return Ok(Procedure::Word);
        }
        if require_fragment(&lhs.expand_top(), FragmentClass::KaCxC1).is_err() {
            return Err("left side uses full complement".into());
        }
        if is_star_free(lhs) {
            return Ok(Procedure::StarFree);
        }
        Err("left side has star, not a word".into())
    }

    fn check(&mut self, lhs: &Term, rhs: &Term) -> InclusionCheck {
        let (procedure, result) = match Decider::route(lhs, rhs) {
            Err(reason) => (None, CheckResult::Unsupported(reason)),
            Ok(p) => {
                let r = match p {
                    Procedure::Identity => self.identity_inclusion(rhs),
                    Procedure::Variable => {
                        let Term::Var(x) = lhs else { unreachable!() };
                        self.variable_inclusion(x, rhs)
                    }
                    Procedure::Universality => self.universality(rhs),
                    Procedure::Word => self.word_inclusion(&ExtWord::from_term(lhs).expect("routed"), rhs),
                    Procedure::StarFree => self.starfree_inclusion(lhs, rhs),
                };
                let result = match r {
                    Ok(v) => CheckResult::Decided(v),
                    Err(Error::BudgetExceeded { needed, limit }) => {
                        CheckResult::BudgetExceeded(format!("needs {needed}, limit {limit}"))
                    }
                    Err(e) => CheckResult::Unsupported(e.to_string()),
                };
                (Some(p), result)
            }
        };
        InclusionCheck { lhs: lhs.clone(), rhs: rhs.clone(), procedure: Some(procedure).flatten(), result }
    }

    /// Routes each inclusion to the most specific procedure; an equation is
    /// checked in both directions.
    pub fn auto(&mut self, lhs: &Term, rel: Relation, rhs: &Term) -> AutoOutcome {
        let mut checks = vec![self.check(lhs, rhs)];
        if rel == Relation::Eq {
            checks.push(self.check(rhs, lhs));
        }
        AutoOutcome { checks }
    }
}

pub fn decide_identity_inclusion(t: &Term, config: &DecideConfig) -> Result<Verdict> {
    Decider::new(config.clone()).identity_inclusion(t)
}

pub fn decide_variable_inclusion(x: &str, t: &Term, config: &DecideConfig) -> Result<Verdict> {
    Decider::new(config.clone()).variable_inclusion(x, t)
}

pub fn decide_word_inclusion(u: &ExtWord, t: &Term, config: &DecideConfig) -> Result<Verdict> {
    Decider::new(config.clone()).word_inclusion(u, t)
}

pub fn decide_starfree_inclusion(t1: &Term, t2: &Term, config: &DecideConfig) -> Result<Verdict> {
    Decider::new(config.clone()).starfree_inclusion(t1, t2)
}

pub fn decide_universality(t: &Term, config: &DecideConfig) -> Result<Verdict> {
    Decider::new(config.clone()).universality(t)
}

pub fn decide_auto(lhs: &Term, rel: Relation, rhs: &Term, config: &DecideConfig) -> AutoOutcome {
    Decider::new(config.clone()).auto(lhs, rel, rhs)
}
