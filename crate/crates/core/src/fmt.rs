//! Number formatting shared by the CSV writers.

/// Scientific notation with 10 significant digits, e.g. `6.795924211e7`.
pub fn sci(v: f64) -> String {
    format!("{v:.9e}")
}
