//! Machine-readable reports for the CLI: a stable JSON envelope (sorted
//! keys, exact rational enclosure strings plus fixed-width decimal
//! renderings) and a CSV view mirroring the covering-construction summary
//! table. Identical inputs produce byte-identical reports; wall-clock time
//! goes to stderr, never into the report body.

use serde_json::{json, Value};

use crate::families::{ConstraintBoundary, IntervalReport, Theorem1Report, Theorem2Report};
use crate::growth::{decimal_string, NamedConstant, RootEnclosure};
use crate::poly::rat_int;

pub const SCHEMA_ID: &str = "growthlab-report/1";
pub const DEFAULT_DECIMAL_PLACES: u32 = 6;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA_ID,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "pass": self.pass,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serialises");
        s.push('\n');
        s
    }
}

pub fn enclosure_json(e: &RootEnclosure, places: u32) -> Value {
    json!({
        "lo": e.lo.to_string(),
        "hi": e.hi.to_string(),
        "decimal": e.decimal(places),
        "width_le": decimal_string(&e.width(), places.max(12)),
    })
}

pub fn boundary_json(b: &ConstraintBoundary, places: u32) -> Value {
    let mid = (&b.lo + &b.hi) / rat_int(2);
    json!({
        "polynomial": b.polynomial.to_desc_string(),
        "lo": b.lo.to_string(),
        "hi": b.hi.to_string(),
        "decimal": decimal_string(&mid, places),
        "position": b.position,
    })
}

pub fn constants_json(constants: &[NamedConstant], places: u32) -> Value {
    Value::Array(
        constants
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "polynomial": c.poly.to_desc_string(),
                    "claim": match c.claim {
                        crate::growth::RootClaim::UniqueReal => "unique real root",
                        crate::growth::RootClaim::UniquePositive => "unique positive root",
                    },
                    "enclosure": enclosure_json(&c.enclosure, places),
                })
            })
            .collect(),
    )
}

pub fn family_json(r: &IntervalReport, places: u32) -> Value {
    json!({
        "name": r.name,
        "r": r.r,
        "s": r.s,
        "k": r.k,
        "q_sequence": r.q.to_string(),
        "f_profiles": {
            "count": r.f_digit_count,
            "closed_form": r.f_closed_form,
            "closed_form_from_one": r.f_from_one_form,
            "closed_form_from_one_matches": r.f_from_one_form == r.f_digit_count,
        },
        "h": match r.h_set_count {
            None => Value::Null,
            Some(sets) => json!({
                "sets": sets,
                "profiles": r.h_profile_count,
                "profile_min": r.h_profile_min.as_ref().map(profile_json),
                "profile_max": r.h_profile_max.as_ref().map(profile_json),
                "lex_and_value_orders_agree": r.h_orders_agree,
            }),
        },
        "ell": r.ell.to_string(),
        "u": r.u.to_string(),
        "ell_polynomial": r.ell_poly.to_desc_string(),
        "u_polynomial": r.u_poly.to_desc_string(),
        "gr_lo": enclosure_json(&r.gr_lo, places),
        "gr_hi": enclosure_json(&r.gr_hi, places),
        "selection_stable": r.selection_stable,
        "feasible": r.feasible,
        "infeasible_position": r.infeasible_position,
        "gamma_min": r.gamma_min.as_ref().map(|b| boundary_json(b, places)),
        "gamma_max": r.gamma_max.as_ref().map(|b| boundary_json(b, places)),
        "certified_nonempty": r.certified_nonempty(),
    })
}

fn profile_json(p: &crate::poset::EnumProfile) -> Value {
    json!({
        "base_length": p.base_length,
        "counts": p.counts,
    })
}

pub fn theorem1_json(r: &Theorem1Report, places: u32) -> Value {
    json!({
        "entries": r.entries.iter().map(|e| json!({
            "k": e.k,
            "gr_lo": enclosure_json(&e.report.gr_lo, places),
            "gr_hi": enclosure_json(&e.report.gr_hi, places),
            "nonempty": e.nonempty,
            "feasible": e.report.feasible,
            "gamma_max": e.report.gamma_max.as_ref().map(|b| boundary_json(b, places)),
            "distance_to_theta_B_le": decimal_string(&e.dist_to_theta, places.max(8)),
            "agreement_bound": decimal_string(&e.agreement_rate_bound, places.max(8)),
            "within_agreement_rate": e.within_agreement_rate,
        })).collect::<Vec<_>>(),
        "gamma_max_independent_of_k": r.gamma_max_polys_equal,
        "all_certified": r.all_certified,
    })
}

pub fn theorem2_json(r: &Theorem2Report, places: u32) -> Value {
    json!({
        "families": r.families.iter().map(|f| family_json(f, places)).collect::<Vec<_>>(),
        "a_lo_is_lambda_B": r.a_lo_is_lambda_b,
        "overlaps": r.overlaps.iter().map(|o| json!({
            "upper_of": o.upper_of,
            "lower_of": o.lower_of,
            "certified": o.certified,
        })).collect::<Vec<_>>(),
        "e_hi_exceeds_lambda_A": r.e_hi_exceeds_lambda_a,
        "all_certified": r.all_certified,
    })
}

/// CSV mirror of the summary table: one row per family with the smallest and
/// largest enumerations and the interval covered.
pub fn theorem2_csv(r: &Theorem2Report, places: u32) -> String {
    let mut s = String::from("family,smallest,largest,gr_lo,gr_hi\n");
    for f in &r.families {
        s.push_str(&format!(
            "{},\"{}\",\"{}\",{},{}\n",
            f.name,
            f.ell,
            f.u,
            f.gr_lo.decimal(places),
            f.gr_hi.decimal(places)
        ));
    }
    s
}

pub fn constants_csv(constants: &[NamedConstant], places: u32) -> String {
    let mut s = String::from("name,decimal,lo,hi,polynomial\n");
    for c in constants {
        s.push_str(&format!(
            "{},{},{},{},\"{}\"\n",
            c.name,
            c.enclosure.decimal(places),
            c.enclosure.lo,
            c.enclosure.hi,
            c.poly.to_desc_string()
        ));
    }
    s
}

pub fn family_csv(r: &IntervalReport, places: u32) -> String {
    let mut s = String::from("family,smallest,largest,gr_lo,gr_hi\n");
    s.push_str(&format!(
        "{},\"{}\",\"{}\",{},{}\n",
        r.name,
        r.ell,
        r.u,
        r.gr_lo.decimal(places),
        r.gr_hi.decimal(places)
    ));
    s
}

pub fn theorem1_csv(r: &Theorem1Report, places: u32) -> String {
    let mut s = String::from("k,gr_lo,gr_hi,gamma_max,nonempty\n");
    for e in &r.entries {
        let gmax = e
            .report
            .gamma_max
            .as_ref()
            .map(|b| decimal_string(&((&b.lo + &b.hi) / rat_int(2)), places))
            .unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            e.k,
            e.report.gr_lo.decimal(places),
            e.report.gr_hi.decimal(places),
            gmax,
            e.nonempty
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::named_constants;

    #[test]
    fn reports_are_deterministic_and_sorted() {
        let consts = named_constants(30).unwrap();
        let rep = Report {
            command: "constants".into(),
            inputs: json!({"precision": 30}),
            results: json!({"constants": constants_json(&consts, 6)}),
            pass: true,
        };
        let a = rep.render_json();
        let b = rep.render_json();
        assert_eq!(a, b);
        // keys are sorted by serde_json's BTreeMap backing
        let idx_cmd = a.find("\"command\"").unwrap();
        let idx_inputs = a.find("\"inputs\"").unwrap();
        let idx_pass = a.find("\"pass\"").unwrap();
        assert!(idx_cmd < idx_inputs && idx_inputs < idx_pass);
        assert!(serde_json::from_str::<Value>(&a).is_ok());
    }

    #[test]
    fn csv_layouts() {
        let consts = named_constants(30).unwrap();
        let csv = constants_csv(&consts, 6);
        assert!(csv.starts_with("name,decimal"));
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.contains("theta_B,2.355257"));
    }
}
