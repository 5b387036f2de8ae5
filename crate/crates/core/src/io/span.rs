use serde::Serialize;

/// Location of a parsed element: byte offsets plus 1-based line and column
/// of `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    /// Span of `start..end` in `text`; the column counts characters.
    pub fn locate(text: &str, start: usize, end: usize) -> Self {
        let before = &text[..start];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = text[line_start..start].chars().count() + 1;
        SourceSpan {
            start,
            end,
            line,
            column,
        }
    }

    /// Whether `other` lies within `self`.
    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locate_counts_lines_and_chars() {
        let text = "ab\ncdé f";
        let start = text.find('f').unwrap();
        let s = SourceSpan::locate(text, start, start + 1);
        assert_eq!((s.line, s.column), (2, 5));
        assert_eq!(SourceSpan::locate(text, 0, 2).column, 1);
    }
}
