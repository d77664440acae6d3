//! Plain-text table rendering shared by the reports.

/// Output layout for tabular reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    /// Space-aligned columns, two spaces apart.
    #[default]
    Aligned,
    /// Header and rows joined by tabs.
    Tsv,
}

#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Tsv => {
                let mut out = String::new();
                for line in std::iter::once(&self.header).chain(&self.rows) {
                    out.push_str(&line.join("\t"));
                    out.push('\n');
                }
                out
            }
            TableFormat::Aligned => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let mut out = String::new();
                let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                for line in std::iter::once(&self.header).chain(std::iter::once(&rule)).chain(&self.rows) {
                    let cells: Vec<String> = line
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    out.push_str(cells.join("  ").trim_end());
                    out.push('\n');
                }
                out
            }
        }
    }
}
