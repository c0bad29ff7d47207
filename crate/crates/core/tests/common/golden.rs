//! The schematic including compositions worked by hand for the L²-led
//! identities and P1, instantiated at fresh x, y, z.
//!
//! Arguments use `P(..)` for the context p around a sub-word: it becomes
//! plain grouping for p = ⋆ and a bracket for p = L(⋆).

use std::ops::ControlFlow;

use opalg_core::gs::{self, CompositionKind, CompositionRecord, Witness};
use opalg_core::pattern::Params;
use opalg_core::poly::int;
use opalg_core::rewrite::{ReductionTrace, Reducer};
use opalg_core::term::Strategy;
use opalg_core::OrderKind::{self, Dt, Qc, O};

use super::{pattern, star, word, xyz};

pub struct GoldenCase {
    pub name: &'static str,
    pub pattern: &'static str,
    pub params: &'static [(&'static str, i64)],
    pub orders: &'static [OrderKind],
    pub f_args: [&'static str; 2],
    pub g_args: [&'static str; 2],
    pub q: &'static str,
    pub w: &'static str,
    /// A monomial the reduction has to pass through.
    pub via: Option<&'static str>,
    /// Whether the case has a context p to vary.
    pub has_p: bool,
    /// The strategy whose split choice matches the displayed chain.
    pub displayed: Strategy,
}

const OQC: &[OrderKind] = &[O, Qc];

const fn left_case(name: &'static str, pattern: &'static str, params: &'static [(&'static str, i64)], orders: &'static [OrderKind]) -> GoldenCase {
    GoldenCase {
        name,
        pattern,
        params,
        orders,
        f_args: ["P(L^2(x*y))", "z"],
        g_args: ["x", "y"],
        q: "L^2(P(_)*z)",
        w: "L^2(P(L^2(x*y))*z)",
        via: None,
        has_p: true,
        // x1 = p|..., x2 = z when p|... has several primes.
        displayed: Strategy::RightmostOutermost,
    }
}

const fn right_case(name: &'static str, pattern: &'static str, params: &'static [(&'static str, i64)], orders: &'static [OrderKind]) -> GoldenCase {
    GoldenCase {
        name,
        pattern,
        params,
        orders,
        f_args: ["x", "P(L^2(y*z))"],
        g_args: ["y", "z"],
        q: "L^2(x*P(_))",
        w: "L^2(x*P(L^2(y*z)))",
        via: None,
        has_p: true,
        displayed: Strategy::LeftmostOutermost,
    }
}

pub const CASES: &[GoldenCase] = &[
    left_case("l2-differential case 1", "l2-differential", &[], OQC),
    right_case("l2-differential case 2", "l2-differential", &[], OQC),
    left_case("l2-left-linear case 3", "l2-left-linear", &[], OQC),
    right_case("l2-left-linear case 4", "l2-left-linear", &[], OQC),
    left_case("new-identity-A-right case 1", "new-identity-A-right", &[], OQC),
    right_case("new-identity-A-right case 2", "new-identity-A-right", &[], OQC),
    left_case("new-identity-B-right case 1", "new-identity-B-right", &[("d", 1)], OQC),
    right_case("new-identity-B-right case 2", "new-identity-B-right", &[("d", 1)], OQC),
    left_case("new-identity-C case 1", "new-identity-C", &[], &[Dt]),
    right_case("new-identity-C case 2", "new-identity-C", &[], &[Dt]),
    GoldenCase {
        name: "P1 case 1",
        pattern: "P1",
        params: &[],
        orders: OQC,
        f_args: ["P(L(L(x)*y))", "z"],
        g_args: ["x", "y"],
        q: "L(L(P(_))*z)",
        w: "L(L(P(L(L(x)*y)))*z)",
        via: None,
        has_p: true,
        displayed: Strategy::LeftmostOutermost,
    },
    GoldenCase {
        name: "P1 case 2",
        pattern: "P1",
        params: &[],
        orders: OQC,
        f_args: ["x", "P(L(L(y)*z))"],
        g_args: ["y", "z"],
        q: "L(L(x)*P(_))",
        w: "L(L(x)*P(L(L(y)*z)))",
        via: None,
        has_p: true,
        displayed: Strategy::LeftmostOutermost,
    },
    GoldenCase {
        name: "P1 case 3",
        pattern: "P1",
        params: &[],
        orders: OQC,
        f_args: ["L(x)*y", "z"],
        g_args: ["x", "y"],
        q: "L(_*z)",
        w: "L(L(L(x)*y)*z)",
        via: Some("L^3(x)*y*z"),
        has_p: false,
        displayed: Strategy::LeftmostOutermost,
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Context {
    /// p = ⋆
    Hole,
    /// p = L(⋆)
    Bracket,
}

fn fill(s: &str, p: Context) -> String {
    match p {
        Context::Hole => s.replace("P(", "("),
        Context::Bracket => s.replace("P(", "L("),
    }
}

/// The checked record and its reduction.
pub struct GoldenRun {
    pub record: CompositionRecord,
    pub trace: ReductionTrace,
}

impl GoldenCase {
    pub fn params(&self) -> Params {
        let mut p = Params::defaults();
        for (n, v) in self.params {
            p.set(n, int(*v));
        }
        p
    }

    /// Instantiates f and g, finds the record among those the enumerator
    /// produces for the pair, and reduces its composition.
    pub fn run(&self, order: OrderKind, p: Context) -> Result<GoldenRun, String> {
        self.run_with(order, p, Strategy::default())
    }

    pub fn run_with(&self, order: OrderKind, p: Context, strategy: Strategy) -> Result<GoldenRun, String> {
        let mut a = xyz();
        let pat = pattern(self.pattern);
        let params = self.params();
        let fa: Vec<_> = self.f_args.iter().map(|s| word(&mut a, &fill(s, p))).collect();
        let ga: Vec<_> = self.g_args.iter().map(|s| word(&mut a, s)).collect();
        let q = star(&mut a, &fill(self.q, p));
        let w = word(&mut a, &fill(self.w, p));
        let inst = |args: &[_]| -> Result<_, String> {
            gs::instantiate(&pat, args, order, &params)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| "zero instance".to_string())
        };
        let f = inst(&fa)?;
        let g = inst(&ga)?;
        if f.lead != w {
            return Err(format!("lead of f is {} rather than {}", f.lead.render(&a), w.render(&a)));
        }
        let mut found = None;
        gs::for_each_composition(&[f.clone(), g.clone()], &mut |rec| {
            let hit = rec.kind == CompositionKind::Including
                && rec.f.args == f.args
                && rec.g.args == g.args
                && rec.witness == Witness::Context(q.clone());
            if hit {
                found = Some(rec);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        let record = found.ok_or_else(|| "the enumerator does not produce the record".to_string())?;
        let reducer = Reducer::new(&[pat], order, &params)
            .map_err(|e| e.to_string())?
            .with_strategy(strategy);
        let trace = reducer.reduce_instance(&record.composition).map_err(|e| e.to_string())?;
        if !trace.result().is_zero() {
            return Err(format!("normal form {}", trace.result().render(&a, Some(order))));
        }
        if let Some(v) = self.via {
            let v = word(&mut a, v);
            if !trace.mentions(&v) {
                return Err(format!("reduction never reaches {}", v.render(&a)));
            }
        }
        Ok(GoldenRun { record, trace })
    }

    pub fn contexts(&self) -> &'static [Context] {
        if self.has_p {
            &[Context::Hole, Context::Bracket]
        } else {
            &[Context::Hole]
        }
    }
}
