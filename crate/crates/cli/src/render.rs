//! Text layout: bracketed matrix rows and aligned tables.

use hilburch::BiPoly;

/// One bracketed line per matrix row, columns right-aligned to a common
/// width.
pub fn matrix_lines(m: &[Vec<BiPoly>]) -> Vec<String> {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|row| row.iter().map(|p| p.to_string()).collect())
        .collect();
    let ncols = cells.first().map_or(0, Vec::len);
    let mut widths = vec![0usize; ncols];
    for row in &cells {
        for (j, s) in row.iter().enumerate() {
            widths[j] = widths[j].max(s.chars().count());
        }
    }
    cells
        .iter()
        .map(|row| {
            let mut line = String::from("[");
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    line.push_str("  ");
                }
                line.push(' ');
                for _ in s.chars().count()..widths[j] {
                    line.push(' ');
                }
                line.push_str(s);
            }
            line.push_str(" ]");
            line
        })
        .collect()
}

/// Header plus rows, columns left-aligned and separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (j, s) in row.iter().enumerate() {
            widths[j] = widths[j].max(s.chars().count());
        }
    }
    let render = |cells: Vec<&str>| {
        let mut line = String::new();
        for (j, s) in cells.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            line.push_str(s);
            if j + 1 < cells.len() {
                for _ in s.chars().count()..widths[j] {
                    line.push(' ');
                }
            }
        }
        line
    };
    let mut out = vec![render(headers.to_vec())];
    for row in rows {
        out.push(render(row.iter().map(String::as_str).collect()));
    }
    out
}
