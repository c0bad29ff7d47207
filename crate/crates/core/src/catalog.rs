//! The classified degree-2 identities, with the orders they are paired with.

use crate::dsl;
use crate::opi::OpiPattern;
use crate::order::OrderKind;
use crate::pattern::{PatPoly, PatWord};
use crate::term::Alphabet;

use OrderKind::{Dt, Qc, O};

/// Which classification an entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Degree 2, one operator per term.
    Multiplicity1,
    /// Degree 2, two operators per term, the rank-16 list.
    Rank16,
    /// Degree 2, two operators per term, the rank-19 list.
    Rank19,
    /// Classical weighted operators, not part of the classification.
    Extra,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Multiplicity1 => "multiplicity-1",
            Family::Rank16 => "rank-16",
            Family::Rank19 => "rank-19",
            Family::Extra => "extra",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub pattern: OpiPattern,
    pub family: Family,
    /// Orders the identity is claimed Groebner-Shirshov for.
    pub sound: Vec<OrderKind>,
    /// Orders where the designated lead is known to move under substitution.
    pub unstable: Vec<OrderKind>,
    /// Human name, e.g. "Rota-Baxter".
    pub title: &'static str,
    /// Alternative lookup names.
    pub aliases: &'static [&'static str],
}

impl CatalogEntry {
    pub fn id(&self) -> &str {
        &self.pattern.id
    }

    pub fn is_extra(&self) -> bool {
        self.family == Family::Extra
    }

    pub fn body_text(&self) -> String {
        self.pattern.body.render(&self.pattern.vars, &Alphabet::new())
    }
}

struct Def {
    id: &'static str,
    title: &'static str,
    aliases: &'static [&'static str],
    family: Family,
    body: &'static str,
    sound: &'static [OrderKind],
    unstable: &'static [OrderKind],
    leads: &'static [(OrderKind, &'static str)],
    nonzero: &'static [&'static str],
}

const L2: &str = "L^2(x1*x2)";
const RB_LEAD: &str = "L(x1)*L(x2)";

const DEFS: &[Def] = &[
    Def {
        id: "mono-Lxy",
        title: "monomial L(x1x2)",
        aliases: &[],
        family: Family::Multiplicity1,
        body: "L(x1*x2)",
        sound: &[Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "right-linear",
        title: "L(x1x2) - x1L(x2)",
        aliases: &[],
        family: Family::Multiplicity1,
        body: "L(x1*x2) - x1*L(x2)",
        sound: &[Dt],
        unstable: &[],
        leads: &[(Dt, "L(x1*x2)")],
        nonzero: &[],
    },
    Def {
        id: "left-linear",
        title: "L(x1x2) - L(x1)x2",
        aliases: &[],
        family: Family::Multiplicity1,
        body: "L(x1*x2) - L(x1)*x2",
        sound: &[Dt],
        unstable: &[],
        leads: &[(Dt, "L(x1*x2)")],
        nonzero: &[],
    },
    Def {
        id: "differential",
        title: "differential (derivation)",
        aliases: &["derivation"],
        family: Family::Multiplicity1,
        body: "L(x1*x2) - x1*L(x2) - L(x1)*x2",
        sound: &[Dt],
        unstable: &[],
        leads: &[(Dt, "L(x1*x2)")],
        nonzero: &[],
    },
    Def {
        id: "mono-Lx-y",
        title: "monomial L(x1)x2",
        aliases: &[],
        family: Family::Multiplicity1,
        body: "L(x1)*x2",
        sound: &[Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "mono-x-Ly",
        title: "monomial x1L(x2)",
        aliases: &[],
        family: Family::Multiplicity1,
        body: "x1*L(x2)",
        sound: &[Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "l2-differential",
        title: "L^2(x1x2) - L^2(x1)x2 - x1L^2(x2)",
        aliases: &["eq1"],
        family: Family::Rank16,
        body: "L^2(x1*x2) - L^2(x1)*x2 - x1*L^2(x2)",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &[],
    },
    Def {
        id: "l2-left-linear",
        title: "L^2(x1x2) - L^2(x1)x2",
        aliases: &["eq2"],
        family: Family::Rank16,
        body: "L^2(x1*x2) - L^2(x1)*x2",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &[],
    },
    Def {
        id: "l2-right-linear",
        title: "L^2(x1x2) - x1L^2(x2)",
        aliases: &["eq3"],
        family: Family::Rank16,
        body: "L^2(x1*x2) - x1*L^2(x2)",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &[],
    },
    Def {
        id: "mono-L2xy",
        title: "monomial L^2(x1x2)",
        aliases: &[],
        family: Family::Rank16,
        body: "L^2(x1*x2)",
        sound: &[O, Qc, Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "mono-L2x-y",
        title: "monomial L^2(x1)x2",
        aliases: &[],
        family: Family::Rank16,
        body: "L^2(x1)*x2",
        sound: &[O, Qc, Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "mono-x-L2y",
        title: "monomial x1L^2(x2)",
        aliases: &[],
        family: Family::Rank16,
        body: "x1*L^2(x2)",
        sound: &[O, Qc, Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "new-identity-A-right",
        title: "new identity A (right)",
        aliases: &["A-right"],
        family: Family::Rank19,
        body: "L^2(x1*x2) + L(x1*L(x2)) + x1*L^2(x2)",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &[],
    },
    Def {
        id: "new-identity-A-left",
        title: "new identity A (left)",
        aliases: &["A-left"],
        family: Family::Rank19,
        body: "L^2(x1*x2) + L(L(x1)*x2) + L^2(x1)*x2",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &[],
    },
    Def {
        id: "new-identity-B-right",
        title: "new identity B (right)",
        aliases: &["B-right"],
        family: Family::Rank19,
        body: "L^2(x1*x2) + d*L(x1*L(x2)) - (d + 1)*x1*L^2(x2)",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &["d"],
    },
    Def {
        id: "new-identity-B-left",
        title: "new identity B (left)",
        aliases: &["B-left"],
        family: Family::Rank19,
        body: "L^2(x1*x2) + b*L(L(x1)*x2) - (b + 1)*L^2(x1)*x2",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, L2), (Qc, L2)],
        nonzero: &["b"],
    },
    Def {
        id: "new-identity-C",
        title: "new identity C",
        aliases: &["C"],
        family: Family::Rank19,
        body: "L^2(x1*x2) + L^2(x1)*x2 + x1*L^2(x2) + 2*L(x1)*L(x2) - 2*L(L(x1)*x2) - 2*L(x1*L(x2))",
        sound: &[Dt],
        unstable: &[O, Qc],
        leads: &[(Dt, L2), (O, RB_LEAD), (Qc, RB_LEAD)],
        nonzero: &[],
    },
    Def {
        id: "P1",
        title: "P1",
        aliases: &[],
        family: Family::Rank19,
        body: "L(L(x1)*x2) - L^2(x1)*x2",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, "L(L(x1)*x2)"), (Qc, "L(L(x1)*x2)")],
        nonzero: &[],
    },
    Def {
        id: "P2",
        title: "P2",
        aliases: &[],
        family: Family::Rank19,
        body: "L(L(x1)*x2)",
        sound: &[O, Qc, Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "P3",
        title: "P3",
        aliases: &[],
        family: Family::Rank19,
        body: "L(x1*L(x2)) - x1*L^2(x2)",
        sound: &[O, Qc],
        unstable: &[],
        leads: &[(O, "L(x1*L(x2))"), (Qc, "L(x1*L(x2))")],
        nonzero: &[],
    },
    Def {
        id: "P4",
        title: "P4",
        aliases: &[],
        family: Family::Rank19,
        body: "L(x1*L(x2))",
        sound: &[O, Qc, Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "P5",
        title: "P5",
        aliases: &[],
        family: Family::Rank19,
        body: "L(x1)*L(x2)",
        sound: &[O, Qc, Dt],
        unstable: &[],
        leads: &[],
        nonzero: &[],
    },
    Def {
        id: "rota-baxter",
        title: "Rota-Baxter (weight 0)",
        aliases: &["rb"],
        family: Family::Rank19,
        body: "L(x1)*L(x2) - L(L(x1)*x2) - L(x1*L(x2))",
        sound: &[O],
        unstable: &[],
        leads: &[(O, RB_LEAD)],
        nonzero: &[],
    },
    Def {
        id: "nijenhuis",
        title: "Nijenhuis",
        aliases: &[],
        family: Family::Rank19,
        body: "L(x1)*L(x2) - L(L(x1)*x2) - L(x1*L(x2)) + L^2(x1*x2)",
        sound: &[O],
        unstable: &[],
        leads: &[(O, RB_LEAD)],
        nonzero: &[],
    },
    Def {
        id: "inverse-average",
        title: "inverse average",
        aliases: &["left-average"],
        family: Family::Rank19,
        body: "L(x1)*L(x2) - L(L(x1)*x2)",
        sound: &[O],
        unstable: &[],
        leads: &[(O, RB_LEAD)],
        nonzero: &[],
    },
    Def {
        id: "average",
        title: "average",
        aliases: &["right-average"],
        family: Family::Rank19,
        body: "L(x1)*L(x2) - L(x1*L(x2))",
        sound: &[O],
        unstable: &[],
        leads: &[(O, RB_LEAD)],
        nonzero: &[],
    },
    Def {
        id: "differential-weight",
        title: "differential of weight lambda",
        aliases: &[],
        family: Family::Extra,
        body: "L(x1*x2) - L(x1)*x2 - x1*L(x2) - lambda*L(x1)*L(x2)",
        sound: &[Dt],
        unstable: &[],
        leads: &[(Dt, "L(x1*x2)")],
        nonzero: &[],
    },
    Def {
        id: "rota-baxter-weight",
        title: "Rota-Baxter of weight lambda",
        aliases: &[],
        family: Family::Extra,
        body: "L(x1)*L(x2) - L(L(x1)*x2) - L(x1*L(x2)) - lambda*L(x1*x2)",
        sound: &[O],
        unstable: &[],
        leads: &[(O, RB_LEAD)],
        nonzero: &[],
    },
];

fn vars() -> Vec<String> {
    vec!["x1".to_string(), "x2".to_string()]
}

fn pattern_of(src: &str) -> PatPoly {
    let mut a = Alphabet::new();
    dsl::parse_pattern(src, &vars(), &dsl::default_param_names(), &mut a)
        .unwrap_or_else(|e| panic!("catalog body `{src}` does not parse: {e}"))
}

fn lead_of(src: &str) -> PatWord {
    let p = pattern_of(src);
    let (w, _) = p.terms().next().expect("lead is a monomial");
    w.clone()
}

fn build(d: &Def) -> CatalogEntry {
    let mut pattern = OpiPattern::new(d.id, vars(), pattern_of(d.body));
    for (o, l) in d.leads {
        pattern = pattern.with_lead(*o, lead_of(l));
    }
    for n in d.nonzero {
        pattern = pattern.with_nonzero(n);
    }
    CatalogEntry {
        pattern,
        family: d.family,
        sound: d.sound.to_vec(),
        unstable: d.unstable.to_vec(),
        title: d.title,
        aliases: d.aliases,
    }
}

/// Every entry in listing order.
pub fn catalog() -> Vec<CatalogEntry> {
    DEFS.iter().map(build).collect()
}

fn normalize(name: &str) -> String {
    name.trim().to_lowercase().replace(['_', ' '], "-")
}

/// Case-insensitive lookup by id or alias; `_` and `-` are interchangeable.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let key = normalize(name);
    DEFS.iter()
        .find(|d| normalize(d.id) == key || d.aliases.iter().any(|a| normalize(a) == key))
        .map(build)
}

/// The identities of the multiplicity-1 list, all paired with `dt`.
pub fn multiplicity_one() -> Vec<CatalogEntry> {
    catalog()
        .into_iter()
        .filter(|e| e.family == Family::Multiplicity1)
        .collect()
}
