//! JSON report shapes. Big integers are decimal strings.

use serde::Serialize;

pub const SCHEMA: &str = "grrforge/1";

#[derive(Debug, Serialize)]
pub struct PpdReport {
    pub schema: &'static str,
    pub a: u64,
    pub m: u64,
    pub primes: Vec<String>,
    pub orders: Vec<u64>,
    pub exceptional: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassRow {
    pub l: u32,
    pub centralizer_order: String,
    pub class_size: String,
}

#[derive(Debug, Serialize)]
pub struct CensusReport {
    pub schema: &'static str,
    pub family: String,
    pub n: u32,
    pub q: String,
    pub classes: Vec<ClassRow>,
    pub total: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LedgerRow {
    pub name: String,
    pub family: String,
    pub n: u32,
    pub e: u32,
    pub condition: &'static str,
    pub normalizer: String,
    pub i_g: String,
    pub u_g: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_coarse: Option<String>,
    pub u_table: String,
    pub a: String,
    pub b: String,
    pub displayed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub displayed_split: Option<Vec<String>>,
    pub published_min_q: String,
}

#[derive(Debug, Serialize)]
pub struct LedgerReport {
    pub schema: &'static str,
    pub rows: Vec<LedgerRow>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundValue {
    pub f: u32,
    pub q: String,
    pub master: String,
    pub master_terms: [String; 2],
    pub displayed: String,
    pub positive: bool,
    pub terms_match: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundsReport {
    pub schema: &'static str,
    pub row: String,
    pub values: Vec<BoundValue>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerateReport {
    pub schema: &'static str,
    pub spec: String,
    pub order: String,
    pub involutions: u64,
    pub generators: Vec<String>,
    pub cache: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FindXReport {
    pub schema: &'static str,
    pub spec: String,
    pub ef: u64,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictReport {
    pub schema: &'static str,
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub connection: Vec<String>,
    pub generates: bool,
    pub aut_order: Option<String>,
    #[serde(rename = "isGRR")]
    pub is_grr: bool,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub budget_exceeded: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShapeReport {
    pub shape: &'static str,
    pub candidates: u64,
    pub examined: u64,
    pub generating: u64,
    pub unknown: u64,
    pub complete: bool,
    pub witnesses: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutput {
    pub schema: &'static str,
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    pub shapes: Vec<ShapeReport>,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EstimateReport {
    pub schema: &'static str,
    pub spec: String,
    pub x: String,
    pub x_order: u64,
    pub mode: &'static str,
    pub successes: u64,
    pub trials: u64,
    pub involutions: u64,
    pub fraction: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wilson95: Option<[f64; 2]>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct GraphJson {
    pub schema: &'static str,
    pub vertices: usize,
    pub edges: usize,
    pub adjacency: Vec<Vec<u32>>,
}
