//! Named verification suites, shared by the `verify` subcommand and the
//! acceptance tests.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::engine::{
    ade_closed_form, check_reduction_identity, has_rdp_degree_and_pole,
    quasihomogeneous_correspondence, suspension_series, ArcSeriesResult, StabilizationOptions,
};
use crate::graph::{build_ade, AdeType};
use crate::semigroup::{curve_arc_series, NumericalSemigroup};
use crate::series::{degree_and_pole, expand_rational, product_form, rat_equal};

/// Order to which the ADE table is compared coefficient by coefficient.
pub const TABLE_ORDER: usize = 40;
/// Largest `k` for the A and D families in the table suites.
pub const TABLE_MAX_K: u32 = 10;
/// Order of the reduction identity checks.
pub const REDUCTION_ORDER: usize = 6;
/// Order to which the space-curve series is compared with its semigroup.
pub const CURVE_ORDER: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Ade,
    Reduction,
    Curves,
    DegreePole,
    Correspondence,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 5] = [
        Suite::Ade,
        Suite::Reduction,
        Suite::Curves,
        Suite::DegreePole,
        Suite::Correspondence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ade => "ade",
            Suite::Reduction => "prop2",
            Suite::Curves => "curves",
            Suite::DegreePole => "remark4",
            Suite::Correspondence => "correspondence",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::MEMBERS
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite \"{s}\" (expected ade, prop2, curves, remark4, correspondence or all)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(
        suite: Suite,
        label: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            suite,
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub stabilization: StabilizationOptions,
}

fn table_types() -> Vec<AdeType> {
    AdeType::all_up_to(TABLE_MAX_K)
}

fn ade_suite() -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = table_types()
        .par_iter()
        .map(|&ty| match ArcSeriesResult::for_ade(ty, TABLE_ORDER) {
            Ok(r) => CheckResult::new(
                Suite::Ade,
                format!("{ty} order {TABLE_ORDER}"),
                r.matches_closed_form() == Some(true),
                ade_closed_form(ty).to_string(),
            ),
            Err(e) => CheckResult::new(Suite::Ade, ty.to_string(), false, e.to_string()),
        })
        .collect();

    out.extend(table_types().into_iter().map(|ty| {
        let f = ade_closed_form(ty);
        let p = product_form(&f);
        CheckResult::new(
            Suite::Ade,
            format!("{ty} product"),
            p.as_ref().is_some_and(|p| rat_equal(p, &f)),
            p.map_or("none".to_string(), |p| p.to_string()),
        )
    }));

    let suspension = suspension_series(1).expect("n = 1 is valid");
    let a_types: Vec<AdeType> = table_types()
        .into_iter()
        .filter(|t| t.family() == crate::graph::AdeFamily::A)
        .collect();
    out.push(CheckResult::new(
        Suite::Ade,
        "suspension n=1 equals A_k",
        a_types
            .iter()
            .all(|&t| rat_equal(&suspension, &ade_closed_form(t))),
        suspension.to_string(),
    ));
    out
}

fn reduction_suite(options: &VerifyOptions) -> Vec<CheckResult> {
    ["A1", "A2", "A3", "D4"]
        .par_iter()
        .map(|name| {
            let ty: AdeType = name.parse().expect("valid type");
            match check_reduction_identity(&build_ade(ty), REDUCTION_ORDER, &options.stabilization)
            {
                Ok(cert) => CheckResult::new(
                    Suite::Reduction,
                    format!("{ty} order {REDUCTION_ORDER}"),
                    cert.matches,
                    format!("stabilized_box {}", cert.stabilized_box),
                ),
                Err(e) => CheckResult::new(Suite::Reduction, ty.to_string(), false, e.to_string()),
            }
        })
        .collect()
}

fn curves_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let space = [3u32, 4, 5];
    match (
        curve_arc_series(&space, CURVE_ORDER),
        NumericalSemigroup::from_generators(&space),
    ) {
        (Ok((series, form)), Ok(sg)) => {
            let membership_ok = (0..=CURVE_ORDER).all(|i| {
                series.coeff(i) == &num_bigint::BigInt::from(u8::from(sg.contains(i as u32)))
            });
            let expansion_ok = expand_rational(&form, CURVE_ORDER).is_ok_and(|e| e == series);
            out.push(CheckResult::new(
                Suite::Curves,
                "3,4,5 closed form",
                form.to_string() == "(1-t+t^3)/(1-t)",
                form.to_string(),
            ));
            out.push(CheckResult::new(
                Suite::Curves,
                format!("3,4,5 membership order {CURVE_ORDER}"),
                membership_ok && expansion_ok,
                series.to_string(),
            ));
            out.push(CheckResult::new(
                Suite::Curves,
                "3,4,5 not a product",
                product_form(&form).is_none(),
                "product_form none",
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(CheckResult::new(
            Suite::Curves,
            "3,4,5",
            false,
            e.to_string(),
        )),
    }

    let smooth = curve_arc_series(&[1], CURVE_ORDER);
    out.push(CheckResult::new(
        Suite::Curves,
        "smooth germ",
        smooth
            .as_ref()
            .is_ok_and(|(_, f)| f.to_string() == "1/(1-t)"),
        smooth.map_or_else(|e| e.to_string(), |(_, f)| f.to_string()),
    ));

    for gens in [[2u32, 3], [2, 5], [3, 4]] {
        let label = format!("{},{} plane branch product", gens[0], gens[1]);
        let expected = crate::series::RationalForm::from_product(&[
            (gens[0] * gens[1], 1),
            (gens[0], -1),
            (gens[1], -1),
        ])
        .expect("positive bases");
        let result = curve_arc_series(&gens, CURVE_ORDER).map(|(_, f)| product_form(&f));
        out.push(match result {
            Ok(Some(p)) => CheckResult::new(
                Suite::Curves,
                label,
                rat_equal(&p, &expected),
                p.to_string(),
            ),
            Ok(None) => CheckResult::new(Suite::Curves, label, false, "product_form none"),
            Err(e) => CheckResult::new(Suite::Curves, label, false, e.to_string()),
        });
    }
    out
}

fn degree_pole_suite() -> Vec<CheckResult> {
    table_types()
        .into_iter()
        .map(|ty| {
            let f = ade_closed_form(ty);
            let (degree, pole) = degree_and_pole(&f);
            CheckResult::new(
                Suite::DegreePole,
                ty.to_string(),
                has_rdp_degree_and_pole(&f),
                format!("degree {degree} pole_order {pole}"),
            )
        })
        .collect()
}

fn correspondence_suite() -> Vec<CheckResult> {
    quasihomogeneous_correspondence()
        .into_iter()
        .map(|e| CheckResult::new(Suite::Correspondence, e.label, e.holds, ""))
        .collect()
}

/// Runs a suite (or all of them, in fixed order).
pub fn run_suite(suite: Suite, options: &VerifyOptions) -> Vec<CheckResult> {
    match suite {
        Suite::Ade => ade_suite(),
        Suite::Reduction => reduction_suite(options),
        Suite::Curves => curves_suite(),
        Suite::DegreePole => degree_pole_suite(),
        Suite::Correspondence => correspondence_suite(),
        Suite::All => Suite::MEMBERS
            .iter()
            .flat_map(|&s| run_suite(s, options))
            .collect(),
    }
}
