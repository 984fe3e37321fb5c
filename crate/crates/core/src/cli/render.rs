//! Text renderings of a sequence as a lattice path.

use crate::seq::{IndexSet, SignSeq, Step};

/// Draws the path as a mountain range: `/` for an up-step, `\` for a
/// down-step, one text row per unit of height, highest row first. Columns are
/// step positions. With `marks`, a final row carries `^` under each marked
/// (1-based) position.
pub fn mountain(seq: &SignSeq, marks: Option<&IndexSet>) -> String {
    if seq.is_empty() {
        return String::new();
    }
    // Row r holds the strokes between heights r and r + 1.
    let mut height = 0i64;
    let strokes: Vec<(i64, char)> = seq
        .steps()
        .iter()
        .map(|step| match step {
            Step::Plus => {
                height += 1;
                (height - 1, '/')
            }
            Step::Minus => {
                height -= 1;
                (height, '\\')
            }
        })
        .collect();
    let top = strokes.iter().map(|s| s.0).max().unwrap_or(0);
    let bottom = strokes.iter().map(|s| s.0).min().unwrap_or(0);

    let mut lines: Vec<String> = (bottom..=top)
        .rev()
        .map(|row| {
            let line: String = strokes
                .iter()
                .map(|&(r, ch)| if r == row { ch } else { ' ' })
                .collect();
            line.trim_end().to_string()
        })
        .collect();
    if let Some(marks) = marks {
        lines.push(marker_row(seq.len(), marks));
    }
    lines.join("\n")
}

/// The profile σ as space-separated integers; marked entries are bracketed.
pub fn grid(seq: &SignSeq, marks: Option<&IndexSet>) -> String {
    seq.prefix_sums()
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, h)| match marks {
            Some(m) if m.contains(i + 1) => format!("[{h}]"),
            _ => h.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn marker_row(len: usize, marks: &IndexSet) -> String {
    let row: String = (1..=len)
        .map(|pos| if marks.contains(pos) { '^' } else { ' ' })
        .collect();
    row.trim_end().to_string()
}
