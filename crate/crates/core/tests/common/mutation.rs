//! Single sign-flip mutants of catalog identities.

use opalg_core::catalog::CatalogEntry;
use opalg_core::opi::OpiPattern;
use opalg_core::pattern::PatPoly;

pub struct Mutant {
    pub entry: String,
    /// Index of the flipped body term.
    pub term: usize,
    pub pattern: OpiPattern,
}

/// The body of `p` with the sign of term `i` flipped.
pub fn flip(p: &OpiPattern, i: usize) -> OpiPattern {
    let mut body = PatPoly::zero();
    for (j, (w, c)) in p.body.terms().enumerate() {
        body.add_term(w.clone(), if j == i { c.neg() } else { c.clone() });
    }
    OpiPattern { body, ..p.clone() }
}

/// Every single flip of every entry with more than one body term. Flipping a
/// monomial identity gives back the same ideal, so those are left out.
pub fn mutants(entries: &[CatalogEntry]) -> Vec<Mutant> {
    entries
        .iter()
        .filter(|e| !e.pattern.is_monomial())
        .flat_map(|e| {
            (0..e.pattern.body.len()).map(move |i| Mutant {
                entry: e.id().to_string(),
                term: i,
                pattern: flip(&e.pattern, i),
            })
        })
        .collect()
}
