use std::time::Instant;

use crate::fixtures::boundedness_table;
use crate::ordgroup::{classify_sequence, rat, Boundedness};

use super::SuiteReport;

/// Classifies the four table rows, and for the vertically bounded ones checks
/// that every `q > 1` from a test set lifts some element above all sampled ones.
pub fn boundedness_rows() -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("boundedness table");
    for row in boundedness_table() {
        match classify_sequence(&row.sequence) {
            Ok(c) => {
                report.check(c.class == row.class && c.hs_index == row.hs_index, || {
                    format!(
                        "{}: got {} with H_{}, expected {} with H_{}",
                        row.label, c.class, c.hs_index, row.class, row.hs_index
                    )
                });
                report.notes.push(format!("{}: {} with H_{} ({})", row.label, c.class, c.hs_index, c.witness));
            }
            Err(e) => report.check(false, || format!("{}: {e}", row.label)),
        }
        if row.class != Boundedness::VB {
            continue;
        }
        let sampled: Vec<_> = (1..=200).map_while(|n| row.sequence.element(n)).collect();
        let top = sampled.iter().max().expect("nonempty").clone();
        for q in [rat(11, 10), rat(3, 2), rat(2, 1), rat(5, 1)] {
            let lifted = sampled.iter().any(|g| g.scale(&q).is_some_and(|s| s > top));
            report.check(lifted, || format!("{}: no element exceeds the sample after scaling by {q}", row.label));
        }
    }
    report.timed(start)
}
