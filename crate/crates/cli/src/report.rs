use serde::Serialize;

/// Machine-readable summary of one counting run. Counts are decimal strings:
/// they overflow 64-bit integers almost immediately.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub width_used: usize,
    pub orbs: String,
    pub factorial_factor: String,
    pub euler_tours: String,
    pub elapsed_milliseconds: u128,
    pub mode: String,
}

/// Plain mode prints only the primary count of the subcommand; JSON mode
/// prints the whole report.
pub fn format_report(report: &RunReport, json: bool) -> String {
    if json {
        serde_json::to_string(report).expect("report serializes")
    } else if report.mode == "orbs" {
        report.orbs.clone()
    } else {
        report.euler_tours.clone()
    }
}
