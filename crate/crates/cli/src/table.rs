//! Plain-text column alignment.

/// Display width in columns, ignoring combining marks.
pub fn width(s: &str) -> usize {
    s.chars().filter(|c| !('\u{0300}'..='\u{036f}').contains(c)).count()
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<const N: usize>(&mut self, cells: [String; N]) {
        debug_assert_eq!(N, self.header.len());
        self.rows.push(cells.into());
    }

    pub fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| width(&r[i]))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - width(c))))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligns_by_characters() {
        let mut t = Table::new(["κ²", "div κ"]);
        t.row(["-2".to_string(), "any".to_string()]);
        t.row(["-24".to_string(), "3".to_string()]);
        assert_eq!(t.render(), "κ²   div κ\n---  -----\n-2   any\n-24  3\n");
    }

    #[test]
    fn combining_marks_take_no_space() {
        assert_eq!(width("m̃"), 1);
        let mut t = Table::new(["m̃", "n"]);
        t.row(["10".to_string(), "1".to_string()]);
        assert_eq!(t.render(), "m̃   n\n--  -\n10  1\n");
    }
}
