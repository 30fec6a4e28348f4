use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Bigraded(usize, usize),
    Degree(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeminormReport {
    pub name: String,
    pub value: f64,
    pub error_bound: f64,
    pub cells_used: Vec<Cell>,
    pub notes: String,
}

impl SeminormReport {
    pub fn new(name: impl Into<String>, value: f64, error_bound: f64, cells_used: Vec<Cell>) -> Self {
        SeminormReport { name: name.into(), value, error_bound, cells_used, notes: String::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes = note.into();
        self
    }
}
