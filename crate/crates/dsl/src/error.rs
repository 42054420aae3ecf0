use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Where a node came from. Spans never take part in equality, so a file and
/// its pretty-printed form parse to equal trees.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span(pub Pos);

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Resolution,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub kind: ErrorKind,
    pub pos: Option<Pos>,
    pub message: String,
    pub expected: Vec<String>,
}

impl DslError {
    pub fn syntax(pos: Pos, message: impl Into<String>, expected: Vec<String>) -> Self {
        Self {
            kind: ErrorKind::Syntax,
            pos: Some(pos),
            message: message.into(),
            expected,
        }
    }

    pub fn resolution(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Resolution,
            pos: Some(pos),
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub fn unsupported(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Unsupported,
            pos: Some(pos),
            message: message.into(),
            expected: Vec::new(),
        }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.pos {
            write!(f, "{p}: ")?;
        }
        write!(f, "{}", self.message)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, " (expected {one})"),
            many => write!(f, " (expected one of {})", many.join(", ")),
        }
    }
}

impl std::error::Error for DslError {}
