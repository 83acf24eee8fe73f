//! JSON report shapes. All numbers are exact integer pairs, never floats;
//! report layout is deterministic so identical inputs produce identical
//! bytes.

use puiseux_core::newton::BranchEvent;
use puiseux_core::rational::{DegreeBound, Rational};
use puiseux_core::series::PuiseuxSeries;
use puiseux_core::zpoly::ZPolynomial;
use puiseux_core::{MonomialMap, PuiseuxRoot};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone_check: Option<ConeCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principalization: Option<PrincipalizationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_polynomial: Option<MinPolyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrality: Option<IntegralityReport>,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub precision: [i64; 2],
    pub max_steps: usize,
    pub first_vertical: bool,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct TermReport {
    pub num: i64,
    pub den: i64,
    pub exponents: Vec<[i64; 2]>,
}

#[derive(Serialize)]
pub struct RootReport {
    pub terms: Vec<TermReport>,
    pub certificate: Vec<Vec<i64>>,
    pub denominator: u64,
    pub residual_floor: serde_json::Value,
    pub precision: serde_json::Value,
    pub external_terms: Vec<TermReport>,
    pub branch_log: Vec<serde_json::Value>,
}

#[derive(Serialize)]
pub struct ConeCheckReport {
    pub s_cone: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[i64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
pub struct PrincipalizationReport {
    pub map: Vec<Vec<i64>>,
    pub apexes: Vec<Vec<[i64; 2]>>,
}

#[derive(Serialize)]
pub struct MinPolyReport {
    pub degree: usize,
    pub text: String,
    pub coefficients: Vec<Vec<TermReport>>,
}

#[derive(Serialize)]
pub struct IntegralityReport {
    pub integral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[i64; 2]>>,
}

pub fn rational_pair(r: &Rational) -> Result<[i64; 2], String> {
    let num: i64 = r
        .numer()
        .try_into()
        .map_err(|_| "numerator exceeds the report range".to_string())?;
    let den: i64 = r
        .denom()
        .try_into()
        .map_err(|_| "denominator exceeds the report range".to_string())?;
    Ok([num, den])
}

pub fn degree_bound_value(b: &DegreeBound) -> Result<serde_json::Value, String> {
    Ok(match b {
        DegreeBound::Unbounded => serde_json::Value::String("exact".into()),
        DegreeBound::Finite(t) => serde_json::json!(rational_pair(t)?),
    })
}

pub fn series_terms(s: &PuiseuxSeries) -> Result<Vec<TermReport>, String> {
    let mut out = Vec::new();
    for (e, c) in s.terms() {
        let [num, den] = rational_pair(c)?;
        let exponents = e
            .coords()
            .iter()
            .map(rational_pair)
            .collect::<Result<Vec<_>, _>>()?;
        out.push(TermReport {
            num,
            den,
            exponents,
        });
    }
    Ok(out)
}

pub fn root_report(root: &PuiseuxRoot) -> Result<RootReport, String> {
    Ok(RootReport {
        terms: series_terms(&root.series)?,
        certificate: root.certificate.to_row_vecs(),
        denominator: root.denominator,
        residual_floor: degree_bound_value(&root.residual_floor)?,
        precision: degree_bound_value(root.series.precision())?,
        external_terms: series_terms(&root.external_series())?,
        branch_log: root
            .branch_log
            .iter()
            .map(branch_event_value)
            .collect::<Result<Vec<_>, _>>()?,
    })
}

fn map_rows(m: &MonomialMap) -> Vec<Vec<i64>> {
    m.to_row_vecs()
}

pub fn branch_event_value(ev: &BranchEvent) -> Result<serde_json::Value, String> {
    Ok(match ev {
        BranchEvent::Vertical => serde_json::json!({"kind": "vertical"}),
        BranchEvent::Segment { gamma, beta } => serde_json::json!({
            "kind": "segment",
            "gamma": rational_pair(gamma)?,
            "beta": rational_pair(beta)?,
        }),
        BranchEvent::Prepared { map, e } => serde_json::json!({
            "kind": "prepared",
            "map": map_rows(map),
            "e": e,
        }),
        BranchEvent::LiftedBlowups { map } => serde_json::json!({
            "kind": "lifted_blowups",
            "map": map_rows(map),
        }),
        BranchEvent::CharacteristicRoot { alpha } => serde_json::json!({
            "kind": "characteristic_root",
            "alpha": alpha,
        }),
        BranchEvent::RegularNormalized { map, monomial } => serde_json::json!({
            "kind": "regular_normalized",
            "map": map_rows(map),
            "monomial": monomial
                .coords()
                .iter()
                .map(rational_pair)
                .collect::<Result<Vec<_>, _>>()?,
        }),
        BranchEvent::Regular { gammas } => serde_json::json!({
            "kind": "regular",
            "gammas": gammas
                .iter()
                .map(rational_pair)
                .collect::<Result<Vec<_>, _>>()?,
        }),
        BranchEvent::ExactRoot => serde_json::json!({"kind": "exact_root"}),
        BranchEvent::PrecisionReached => serde_json::json!({"kind": "precision_reached"}),
        BranchEvent::DataExhausted => serde_json::json!({"kind": "data_exhausted"}),
    })
}

pub fn minpoly_report(p: &ZPolynomial) -> Result<MinPolyReport, String> {
    Ok(MinPolyReport {
        degree: p.degree(),
        text: format!("{}", p),
        coefficients: p
            .coeffs()
            .iter()
            .map(series_terms)
            .collect::<Result<Vec<_>, _>>()?,
    })
}
