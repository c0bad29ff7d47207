//! Operated polynomial identities as formal patterns with designated leading
//! term shapes.

use num::Zero;

use crate::order::OrderKind;
use crate::pattern::{Params, PatPoly, PatWord, PatternError};
use crate::poly::Poly;
use crate::term::{Generator, Word};

/// Generators used for "fresh" arguments start at this rank, above anything a
/// session declares.
pub const FRESH_BASE: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpiPattern {
    pub id: String,
    pub vars: Vec<String>,
    pub body: PatPoly,
    /// Explicit designations; orders without one use the lead at fresh generators.
    pub leads: Vec<(OrderKind, PatWord)>,
    pub nonzero_params: Vec<String>,
}

impl OpiPattern {
    pub fn new(id: impl Into<String>, vars: Vec<String>, body: PatPoly) -> Self {
        OpiPattern {
            id: id.into(),
            vars,
            body,
            leads: Vec::new(),
            nonzero_params: Vec::new(),
        }
    }

    pub fn with_lead(mut self, order: OrderKind, lead: PatWord) -> Self {
        self.leads.retain(|(o, _)| *o != order);
        self.leads.push((order, lead));
        self
    }

    pub fn with_nonzero(mut self, param: &str) -> Self {
        self.nonzero_params.push(param.to_string());
        self
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.body.len() == 1
    }

    pub fn params(&self) -> Vec<String> {
        self.body.params()
    }

    /// Every referenced parameter is bound and the nonzero constraints hold.
    pub fn check_params(&self, params: &Params) -> Result<(), PatternError> {
        for name in self.params() {
            if params.get(&name).is_none() {
                return Err(PatternError::UnboundParameter(name));
            }
        }
        for name in &self.nonzero_params {
            match params.get(name) {
                None => return Err(PatternError::UnboundParameter(name.clone())),
                Some(v) if v.is_zero() => {
                    return Err(PatternError::ZeroParameter {
                        id: self.id.clone(),
                        name: name.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, args: &[Word], params: &Params) -> Result<Poly, PatternError> {
        if args.len() != self.arity() {
            return Err(PatternError::Arity {
                id: self.id.clone(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        self.check_params(params)?;
        self.body.evaluate(args, params)
    }

    /// Distinct generators not used anywhere else.
    pub fn fresh_args(&self) -> Vec<Word> {
        (0..self.arity())
            .map(|i| Word::gen(Generator(FRESH_BASE + i as u32)))
            .collect()
    }

    /// The term shape whose image is the leading monomial at fresh generators.
    pub fn fresh_lead(&self, order: OrderKind, params: &Params) -> Result<Option<PatWord>, PatternError> {
        let args = self.fresh_args();
        let p = self.evaluate(&args, params)?;
        let Some((lead, _)) = p.max_term(order) else {
            return Ok(None);
        };
        Ok(self
            .body
            .terms()
            .map(|(w, _)| w)
            .find(|w| &w.instantiate(&args) == lead)
            .cloned())
    }

    pub fn explicit_lead(&self, order: OrderKind) -> Option<&PatWord> {
        self.leads.iter().find(|(o, _)| *o == order).map(|(_, w)| w)
    }

    /// The declared lead for `order`, or the fresh-generator lead when none is declared.
    pub fn designated_lead(&self, order: OrderKind, params: &Params) -> Result<Option<PatWord>, PatternError> {
        match self.explicit_lead(order) {
            Some(w) => Ok(Some(w.clone())),
            None => self.fresh_lead(order, params),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{Coeff, PatPrime};
    use crate::poly::int;

    fn differential() -> OpiPattern {
        let x1 = PatWord::var(0);
        let x2 = PatWord::var(1);
        let mut body = PatPoly::monomial(x1.concat(&x2).bracket());
        body.add_term(x1.bracket().concat(&x2), Coeff::constant(int(-1)));
        body.add_term(x1.concat(&x2.bracket()), Coeff::constant(int(-1)));
        OpiPattern::new("differential", vec!["x1".into(), "x2".into()], body)
    }

    #[test]
    fn fresh_lead_of_differential() {
        let p = differential();
        let lead = p.fresh_lead(OrderKind::Dt, &Params::new()).unwrap().unwrap();
        assert_eq!(
            lead,
            PatWord::new(vec![PatPrime::Bracket(PatWord::var(0).concat(&PatWord::var(1)))])
        );
    }

    #[test]
    fn arity_is_checked() {
        let p = differential();
        assert!(matches!(
            p.evaluate(&[Word::gen(Generator(0))], &Params::new()),
            Err(PatternError::Arity { expected: 2, got: 1, .. })
        ));
    }
}
