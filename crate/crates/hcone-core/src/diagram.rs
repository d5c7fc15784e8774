//! Staircases, three-dimensional h-diagrams, and the lex-segment
//! normalization of integer h-vectors.
//!
//! A staircase pictures a monomial order ideal in two variables: row `b`
//! holds the monomials `x^a y^b` with `a < lambda_b`, and the box `(a, b)`
//! has degree `a + n*b`. An h-diagram stacks staircase slabs of rational
//! height; its defining conditions are that rows weakly decrease along the
//! degree axis and that each cell dominates the cell one row up, `n` degrees
//! later.

use std::collections::HashSet;
use std::fmt;

use crate::hvector::{Grading, HVector};
use crate::rational::Rational;

/// Weakly decreasing row lengths of a monomial order ideal. The empty
/// staircase is the zero ideal's picture.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    rows: Vec<usize>,
}

impl Staircase {
    pub fn new(rows: Vec<usize>) -> Result<Self, DiagramError> {
        if rows.iter().any(|&len| len == 0) {
            return Err(DiagramError::EmptyStaircaseRow);
        }
        if !rows.windows(2).all(|w| w[0] >= w[1]) {
            return Err(DiagramError::RowsNotDecreasing(rows.clone()));
        }
        Ok(Staircase { rows })
    }

    pub fn empty() -> Self {
        Staircase { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn box_count(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn contains(&self, column: usize, row: usize) -> bool {
        self.rows.get(row).is_some_and(|&len| column < len)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "rows": self.rows })
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// A monomial `x^a y^b` in the weighted ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: usize,
    pub y: usize,
}

impl Monomial {
    pub fn degree(&self, n: Grading) -> usize {
        self.x + n.n() * self.y
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.x {
            0 => {}
            1 => parts.push("x".to_string()),
            a => parts.push(format!("x^{a}")),
        }
        match self.y {
            0 => {}
            1 => parts.push("y".to_string()),
            b => parts.push(format!("y^{b}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A per-row decomposition of an h-vector: row `j` (1-indexed) carries cells
/// starting at degree `n*(j-1)`, stored in local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDiagram {
    n: Grading,
    rows: Vec<Vec<Rational>>,
}

impl HDiagram {
    pub fn new(n: Grading, rows: Vec<Vec<Rational>>) -> Self {
        HDiagram { n, rows }
    }

    pub fn grading(&self) -> Grading {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|row| row.iter().all(Rational::is_zero))
    }

    /// The h-vector the diagram carries: per-degree sums over rows.
    pub fn row_sums(&self) -> HVector {
        let n = self.n.n();
        let len = self
            .rows
            .iter()
            .enumerate()
            .map(|(idx, row)| n * idx + row.len())
            .max()
            .unwrap_or(0);
        let mut acc = vec![Rational::zero(); len];
        for (idx, row) in self.rows.iter().enumerate() {
            for (t, value) in row.iter().enumerate() {
                acc[n * idx + t] += value;
            }
        }
        HVector::new(acc).expect("diagram sums validated separately")
    }

    /// Builds the diagram of a nested stack of staircase levels, bottom
    /// (largest footprint) first: each cell's height is the total height of
    /// the levels covering it.
    pub fn from_levels(n: Grading, levels: &[(Rational, Staircase)]) -> Self {
        let row_count = levels.iter().map(|(_, s)| s.rows().len()).max().unwrap_or(0);
        let mut rows = Vec::with_capacity(row_count);
        for b in 0..row_count {
            let width = levels
                .iter()
                .filter_map(|(_, s)| s.rows().get(b).copied())
                .max()
                .unwrap_or(0);
            let mut row = vec![Rational::zero(); width];
            for (height, staircase) in levels {
                for (t, slot) in row.iter_mut().enumerate() {
                    if staircase.contains(t, b) {
                        *slot += height;
                    }
                }
            }
            rows.push(row);
        }
        HDiagram { n, rows }
    }
}

/// A violated diagram condition with its witness indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramViolation {
    NegativeCell { degree: usize, row: usize },
    /// Condition (1) fails: row `j` increases from degree `i` to `i + 1`.
    RowIncrease { i: usize, j: usize },
    /// Condition (2) fails at block `i`, row `j`: the cell at degree `n*i + r`
    /// in row `j` is smaller than the cell at degree `n*(i+1) + r` in row
    /// `j + 1`.
    ColumnIncrease { i: usize, j: usize },
    TooManyRows { rows: usize, bound: usize },
    SumMismatch { degree: usize, got: String, want: String },
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramViolation::NegativeCell { degree, row } => {
                write!(f, "negative cell at degree {degree} in row {row}")
            }
            DiagramViolation::RowIncrease { i, j } => {
                write!(f, "condition (1) violated at (i={i}, j={j})")
            }
            DiagramViolation::ColumnIncrease { i, j } => {
                write!(f, "condition (2) violated at (i={i}, j={j})")
            }
            DiagramViolation::TooManyRows { rows, bound } => {
                write!(f, "{rows} rows exceed the bound {bound}")
            }
            DiagramViolation::SumMismatch { degree, got, want } => {
                write!(f, "degree-{degree} sum is {got}, target has {want}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    EmptyStaircaseRow,
    RowsNotDecreasing(Vec<usize>),
    Invalid(DiagramViolation),
    UnknownFormat(String),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::EmptyStaircaseRow => write!(f, "staircase rows must be non-empty"),
            DiagramError::RowsNotDecreasing(rows) => {
                write!(f, "staircase rows {rows:?} are not weakly decreasing")
            }
            DiagramError::Invalid(v) => write!(f, "invalid h-diagram: {v}"),
            DiagramError::UnknownFormat(s) => write!(f, "unknown render format `{s}`"),
        }
    }
}

impl std::error::Error for DiagramError {}

/// Checks conditions (1) and (2), the row-count bound, and that per-degree
/// sums reproduce `target`. Returns the first violation found.
pub fn check_hdiagram(diag: &HDiagram, target: &HVector) -> Result<(), DiagramViolation> {
    check_conditions(diag)?;
    let sums = diag.row_sums();
    let len = sums.len().max(target.len());
    for i in 0..len {
        let got = sums.get(i);
        let want = target.get(i);
        if got != want {
            return Err(DiagramViolation::SumMismatch {
                degree: i,
                got: got.to_string(),
                want: want.to_string(),
            });
        }
    }
    Ok(())
}

fn check_conditions(diag: &HDiagram) -> Result<(), DiagramViolation> {
    let n = diag.n.n();
    for (idx, row) in diag.rows.iter().enumerate() {
        let start = n * idx;
        for (t, value) in row.iter().enumerate() {
            if value.is_negative() {
                return Err(DiagramViolation::NegativeCell { degree: start + t, row: idx + 1 });
            }
        }
        for t in 0..row.len().saturating_sub(1) {
            if row[t] < row[t + 1] {
                return Err(DiagramViolation::RowIncrease { i: start + t, j: idx + 1 });
            }
        }
    }
    // condition (2): aligned local columns weakly decrease going up
    for idx in 0..diag.rows.len().saturating_sub(1) {
        let lower = &diag.rows[idx];
        let upper = &diag.rows[idx + 1];
        for (t, value) in upper.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            let below = lower.get(t).cloned().unwrap_or_else(Rational::zero);
            if below < *value {
                return Err(DiagramViolation::ColumnIncrease { i: t / n + idx, j: idx + 1 });
            }
        }
    }
    // rows beyond the maximal-vector bound carry nothing and are forbidden
    let sums = diag.row_sums();
    if let Some(d) = sums.degree() {
        let bound = diag.n.max_coeff(d as i64);
        let occupied = diag
            .rows
            .iter()
            .rposition(|row| row.iter().any(|v| !v.is_zero()))
            .map_or(0, |j| j + 1);
        let total = diag.rows.len().max(occupied);
        if total > bound {
            return Err(DiagramViolation::TooManyRows { rows: total, bound });
        }
    }
    Ok(())
}

/// Slices a valid diagram into horizontal slabs at its distinct cell heights.
/// Returned bottom first: each slab's footprint is a staircase containing the
/// next, and the height-weighted staircase h-vectors sum back to the
/// diagram's h-vector exactly.
pub fn extract_levels(diag: &HDiagram) -> Result<Vec<(Rational, Staircase)>, DiagramError> {
    check_hdiagram(diag, &diag.row_sums()).map_err(DiagramError::Invalid)?;
    let mut thresholds: Vec<Rational> = diag
        .rows
        .iter()
        .flatten()
        .filter(|v| v.is_positive())
        .cloned()
        .collect();
    thresholds.sort();
    thresholds.dedup();

    let mut levels = Vec::with_capacity(thresholds.len());
    let mut previous = Rational::zero();
    for cutoff in thresholds {
        let rows: Vec<usize> = diag
            .rows
            .iter()
            .map(|row| row.iter().take_while(|v| **v >= cutoff).count())
            .take_while(|&len| len > 0)
            .collect();
        let footprint = Staircase::new(rows).expect("validated diagram slices to staircases");
        let height = &cutoff - &previous;
        levels.push((height, footprint));
        previous = cutoff;
    }
    Ok(levels)
}

/// The h-vector of a staircase: entry `i` counts boxes of degree `i`, where
/// box `(a, b)` has degree `a + n*b`.
pub fn staircase_hvector(n: Grading, staircase: &Staircase) -> HVector {
    let len = staircase
        .rows()
        .iter()
        .enumerate()
        .map(|(b, &lambda)| n.n() * b + lambda)
        .max()
        .unwrap_or(0);
    let mut acc = vec![Rational::zero(); len];
    for (b, &lambda) in staircase.rows().iter().enumerate() {
        for a in 0..lambda {
            acc[a + n.n() * b] += &Rational::one();
        }
    }
    HVector::new(acc).expect("box counts are non-negative")
}

/// The staircase and minimal ideal generators of the lex-segment
/// normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexSegment {
    pub staircase: Staircase,
    pub generators: Vec<Monomial>,
}

impl LexSegment {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "generators": self
                .generators
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LexSegmentError {
    NotUnitInDegreeZero,
    NonIntegerEntry { degree: usize, value: String },
    EntryExceedsBound { degree: usize, value: String, bound: usize },
    /// The left-stacked selection is not closed under division; carries the
    /// selected monomial and its missing divisor.
    NotOSequence { monomial: Monomial, missing: Monomial },
}

impl fmt::Display for LexSegmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexSegmentError::NotUnitInDegreeZero => {
                write!(f, "a cyclic h-vector starts with entry 1")
            }
            LexSegmentError::NonIntegerEntry { degree, value } => {
                write!(f, "entry {value} at degree {degree} is not an integer")
            }
            LexSegmentError::EntryExceedsBound { degree, value, bound } => {
                write!(f, "entry {value} at degree {degree} exceeds the bound {bound}")
            }
            LexSegmentError::NotOSequence { monomial, missing } => write!(
                f,
                "not a cyclic O-sequence: {monomial} is selected but its divisor {missing} is not"
            ),
        }
    }
}

impl std::error::Error for LexSegmentError {}

/// Realizes an integer h-vector as the staircase of its lex-segment ideal:
/// in each degree the boxes are stacked as far left as possible (largest `y`
/// exponent first), then the selection is checked to be an order ideal.
/// Returns the staircase and the minimal generators of the complementary
/// ideal.
pub fn lex_segment(n: Grading, h: &HVector) -> Result<LexSegment, LexSegmentError> {
    if h.get(0) != Rational::one() {
        return Err(LexSegmentError::NotUnitInDegreeZero);
    }
    let mut counts = Vec::with_capacity(h.len());
    for (degree, entry) in h.entries().iter().enumerate() {
        let Some(count) = entry.to_u64() else {
            return Err(LexSegmentError::NonIntegerEntry {
                degree,
                value: entry.to_string(),
            });
        };
        let bound = n.max_coeff(degree as i64);
        if count as usize > bound {
            return Err(LexSegmentError::EntryExceedsBound {
                degree,
                value: entry.to_string(),
                bound,
            });
        }
        counts.push(count as usize);
    }

    // Select, per degree, the boxes with the largest row index.
    let mut selected: HashSet<(usize, usize)> = HashSet::new();
    let mut row_lengths: Vec<usize> = Vec::new();
    for (degree, &count) in counts.iter().enumerate() {
        let top = degree / n.n();
        for b in (top + 1 - count..=top).rev() {
            let a = degree - n.n() * b;
            selected.insert((a, b));
            if row_lengths.len() <= b {
                row_lengths.resize(b + 1, 0);
            }
            row_lengths[b] = row_lengths[b].max(a + 1);
        }
    }

    for &(a, b) in &selected {
        if a > 0 && !selected.contains(&(a - 1, b)) {
            return Err(LexSegmentError::NotOSequence {
                monomial: Monomial { x: a, y: b },
                missing: Monomial { x: a - 1, y: b },
            });
        }
        if b > 0 && !selected.contains(&(a, b - 1)) {
            return Err(LexSegmentError::NotOSequence {
                monomial: Monomial { x: a, y: b },
                missing: Monomial { x: a, y: b - 1 },
            });
        }
    }

    let staircase = Staircase::new(row_lengths)
        .expect("an order ideal has weakly decreasing non-empty rows");
    let generators = staircase_generators(&staircase);
    Ok(LexSegment { staircase, generators })
}

/// Minimal monomial generators of the ideal complementary to a staircase:
/// the outer corners `x^{lambda_b} y^b` where the row length drops, plus the
/// pure power of `y` above the top row.
fn staircase_generators(staircase: &Staircase) -> Vec<Monomial> {
    let rows = staircase.rows();
    let mut corners = Vec::new();
    for (b, &lambda) in rows.iter().enumerate() {
        if b == 0 || lambda < rows[b - 1] {
            corners.push(Monomial { x: lambda, y: b });
        }
    }
    corners.push(Monomial { x: 0, y: rows.len() });
    // the corner construction is already minimal; the filter is a guard
    corners
        .iter()
        .filter(|m| !corners.iter().any(|other| *other != **m && other.divides(m)))
        .copied()
        .collect()
}

/// Output format for the renderers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl std::str::FromStr for RenderFormat {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(DiagramError::UnknownFormat(other.to_string())),
        }
    }
}

/// Draws a staircase with one cell per box, labeled by degree. ASCII prints
/// the top row first so the picture sits the way the diagrams are drawn;
/// SVG uses unit squares.
pub fn render_staircase(n: Grading, staircase: &Staircase, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_staircase_ascii(n, staircase),
        RenderFormat::Svg => render_staircase_svg(n, staircase),
    }
}

fn staircase_label_width(n: Grading, staircase: &Staircase) -> usize {
    staircase
        .rows()
        .iter()
        .enumerate()
        .map(|(b, &lambda)| (lambda - 1 + n.n() * b).to_string().len())
        .max()
        .unwrap_or(1)
}

fn render_staircase_ascii(n: Grading, staircase: &Staircase) -> String {
    let width = staircase_label_width(n, staircase);
    let mut lines = Vec::with_capacity(staircase.rows().len());
    for (b, &lambda) in staircase.rows().iter().enumerate().rev() {
        let cells: Vec<String> = (0..lambda)
            .map(|a| format!("[{:>width$}]", a + n.n() * b))
            .collect();
        lines.push(cells.join(""));
    }
    lines.join("\n")
}

fn render_staircase_svg(n: Grading, staircase: &Staircase) -> String {
    let unit = 28usize;
    let rows = staircase.rows();
    let height = rows.len();
    let width = rows.first().copied().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n",
        width * unit,
        height * unit
    ));
    for (b, &lambda) in rows.iter().enumerate() {
        let y = (height - 1 - b) * unit;
        for a in 0..lambda {
            let x = a * unit;
            let label = a + n.n() * b;
            out.push_str(&format!(
                "  <rect x=\"{x}\" y=\"{y}\" width=\"{unit}\" height=\"{unit}\" \
                 fill=\"none\" stroke=\"black\"/>\n"
            ));
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{label}</text>\n",
                x + unit / 2,
                y + unit / 2 + 4
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a valid diagram level by level, bottom first: each level's height
/// followed by its staircase.
pub fn render_hdiagram(diag: &HDiagram) -> Result<String, DiagramError> {
    let levels = extract_levels(diag)?;
    let mut out = Vec::with_capacity(levels.len());
    for (index, (height, staircase)) in levels.iter().enumerate() {
        let header = format!("level {} (h={}): ", index + 1, height);
        let indent = " ".repeat(header.len());
        let picture = render_staircase_ascii(diag.grading(), staircase);
        let mut lines = picture.lines();
        let first = lines.next().unwrap_or("");
        let mut block = format!("{header}{first}");
        for line in lines {
            block.push('\n');
            block.push_str(&indent);
            block.push_str(line);
        }
        out.push(block);
    }
    Ok(out.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hvector::linear_combine;

    fn g(n: usize) -> Grading {
        Grading::new(n).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rows_of(values: &[&[i64]]) -> Vec<Vec<Rational>> {
        values
            .iter()
            .map(|row| row.iter().map(|&v| Rational::from_integer(v)).collect())
            .collect()
    }

    #[test]
    fn staircase_hvector_examples() {
        let s = Staircase::new(vec![4, 3, 2]).unwrap();
        assert_eq!(staircase_hvector(g(2), &s), HVector::from_ints(&[1, 1, 2, 2, 2, 1]));
        let s = Staircase::new(vec![6, 2, 1]).unwrap();
        assert_eq!(staircase_hvector(g(2), &s), HVector::from_ints(&[1, 1, 2, 2, 2, 1]));
        let s = Staircase::new(vec![1, 1, 1]).unwrap();
        assert_eq!(staircase_hvector(g(3), &s), HVector::from_ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(staircase_hvector(g(2), &Staircase::empty()), HVector::zero());
    }

    #[test]
    fn check_accepts_the_lex_staircase_rows() {
        // the (4,3,2) staircase read row by row under n = 2
        let diag = HDiagram::new(g(2), rows_of(&[&[1, 1, 1, 1], &[1, 1, 1], &[1, 1]]));
        let target = HVector::from_ints(&[1, 1, 2, 2, 2, 1]);
        assert_eq!(check_hdiagram(&diag, &target), Ok(()));
    }

    #[test]
    fn check_rejects_column_increase() {
        let diag = HDiagram::new(g(2), rows_of(&[&[1], &[2]]));
        let target = HVector::from_ints(&[1, 0, 2]);
        assert_eq!(
            check_hdiagram(&diag, &target),
            Err(DiagramViolation::ColumnIncrease { i: 0, j: 1 })
        );
    }

    #[test]
    fn check_rejects_row_increase() {
        let diag = HDiagram::new(g(2), rows_of(&[&[1, 2]]));
        assert_eq!(
            check_hdiagram(&diag, &diag.row_sums()),
            Err(DiagramViolation::RowIncrease { i: 0, j: 1 })
        );
    }

    #[test]
    fn check_accepts_empty() {
        let diag = HDiagram::new(g(2), Vec::new());
        assert_eq!(check_hdiagram(&diag, &HVector::zero()), Ok(()));
    }

    #[test]
    fn check_rejects_excess_rows() {
        // a single box in degree 0 admits only one row
        let diag = HDiagram::new(g(2), rows_of(&[&[1], &[]]));
        assert!(matches!(
            check_hdiagram(&diag, &HVector::from_ints(&[1])),
            Err(DiagramViolation::TooManyRows { rows: 2, bound: 1 })
        ));
    }

    #[test]
    fn check_reports_sum_mismatch() {
        let diag = HDiagram::new(g(2), rows_of(&[&[1, 1]]));
        assert!(matches!(
            check_hdiagram(&diag, &HVector::from_ints(&[1, 2])),
            Err(DiagramViolation::SumMismatch { degree: 1, .. })
        ));
    }

    #[test]
    fn levels_of_a_half_integer_row() {
        let diag = HDiagram::new(g(2), vec![vec![q("1"), q("1/2")]]);
        let levels = extract_levels(&diag).unwrap();
        assert_eq!(
            levels,
            vec![
                (q("1/2"), Staircase::new(vec![2]).unwrap()),
                (q("1/2"), Staircase::new(vec![1]).unwrap()),
            ]
        );
    }

    #[test]
    fn levels_of_unit_height_stack() {
        let diag = HDiagram::new(g(2), rows_of(&[&[1, 1, 1, 1], &[1, 1], &[1, 1]]));
        let levels = extract_levels(&diag).unwrap();
        assert_eq!(
            levels,
            vec![(q("1"), Staircase::new(vec![4, 2, 2]).unwrap())]
        );

        let diag = HDiagram::new(g(2), rows_of(&[&[1, 1], &[1]]));
        assert_eq!(
            extract_levels(&diag).unwrap(),
            vec![(q("1"), Staircase::new(vec![2, 1]).unwrap())]
        );
    }

    #[test]
    fn levels_reconstruct_and_nest() {
        let diag = HDiagram::new(
            g(2),
            vec![vec![q("5/2"), q("2"), q("1/3")], vec![q("2"), q("1/3")], vec![q("1/2")]],
        );
        let levels = extract_levels(&diag).unwrap();
        let terms: Vec<(Rational, HVector)> = levels
            .iter()
            .map(|(h, s)| (h.clone(), staircase_hvector(g(2), s)))
            .collect();
        assert_eq!(linear_combine(&terms).unwrap(), diag.row_sums());
        for pair in levels.windows(2) {
            let (_, below) = &pair[0];
            let (_, above) = &pair[1];
            for (b, &len) in above.rows().iter().enumerate() {
                assert!(below.rows()[b] >= len);
            }
        }
    }

    #[test]
    fn lex_segment_golden() {
        let got = lex_segment(g(2), &HVector::from_ints(&[1, 1, 2, 2, 2, 1])).unwrap();
        assert_eq!(got.staircase, Staircase::new(vec![4, 3, 2]).unwrap());
        let gens: Vec<String> = got.generators.iter().map(|m| m.to_string()).collect();
        assert_eq!(gens, vec!["x^4", "x^3*y", "x^2*y^2", "y^3"]);
    }

    #[test]
    fn lex_segment_small_cases() {
        let got = lex_segment(g(2), &HVector::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(got.staircase, Staircase::new(vec![1, 1]).unwrap());
        let gens: Vec<String> = got.generators.iter().map(|m| m.to_string()).collect();
        assert_eq!(gens, vec!["x", "y^2"]);
    }

    #[test]
    fn lex_segment_rejections() {
        assert!(matches!(
            lex_segment(g(2), &HVector::from_ints(&[1, 2])),
            Err(LexSegmentError::EntryExceedsBound { degree: 1, .. })
        ));
        assert!(matches!(
            lex_segment(g(2), &HVector::from_ints(&[2])),
            Err(LexSegmentError::NotUnitInDegreeZero)
        ));
        let half = HVector::new(vec![Rational::one(), q("1/2")]).unwrap();
        assert!(matches!(
            lex_segment(g(2), &half),
            Err(LexSegmentError::NonIntegerEntry { degree: 1, .. })
        ));
        // degree-3 box needs its divisor in degree 2
        assert!(matches!(
            lex_segment(g(2), &HVector::from_ints(&[1, 0, 0, 1])),
            Err(LexSegmentError::NotOSequence { .. })
        ));
    }

    #[test]
    fn lex_segment_is_a_projection_on_equivalent_staircases() {
        // two staircases with the same h-vector normalize to the left-stacked one
        let n = g(2);
        let left_stacked = Staircase::new(vec![4, 3, 2]).unwrap();
        for rows in [vec![6, 2, 1], vec![4, 3, 2]] {
            let staircase = Staircase::new(rows).unwrap();
            let h = staircase_hvector(n, &staircase);
            let normalized = lex_segment(n, &h).unwrap().staircase;
            assert_eq!(normalized, left_stacked);
        }
    }

    #[test]
    fn lex_segment_round_trip() {
        let h = HVector::from_ints(&[1, 1, 2, 2, 2, 1]);
        let got = lex_segment(g(2), &h).unwrap();
        assert_eq!(staircase_hvector(g(2), &got.staircase), h);
        assert_eq!(
            Rational::from(got.staircase.box_count()),
            h.sum()
        );
    }

    #[test]
    fn render_ascii_golden() {
        let s = Staircase::new(vec![2]).unwrap();
        assert_eq!(render_staircase(g(2), &s, RenderFormat::Ascii), "[0][1]");
        let s = Staircase::new(vec![4, 3, 2]).unwrap();
        assert_eq!(
            render_staircase(g(2), &s, RenderFormat::Ascii),
            "[4][5]\n[2][3][4]\n[0][1][2][3]"
        );
    }

    #[test]
    fn render_svg_well_formed() {
        let s = Staircase::new(vec![1, 1, 1]).unwrap();
        let svg = render_staircase(g(3), &s, RenderFormat::Svg);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        for label in [">0<", ">3<", ">6<"] {
            assert!(svg.contains(label), "missing {label}");
        }
        assert_eq!(svg.matches("<rect").count(), 3);
    }

    #[test]
    fn render_hdiagram_golden() {
        let diag = HDiagram::new(g(2), rows_of(&[&[1, 1]]));
        assert_eq!(render_hdiagram(&diag).unwrap(), "level 1 (h=1): [0][1]");
        let empty = HDiagram::new(g(2), Vec::new());
        assert_eq!(render_hdiagram(&empty).unwrap(), "");
    }

    #[test]
    fn from_levels_round_trips() {
        let levels = vec![
            (q("1/2"), Staircase::new(vec![3, 1]).unwrap()),
            (q("2"), Staircase::new(vec![1, 1]).unwrap()),
        ];
        let diag = HDiagram::from_levels(g(2), &levels);
        assert_eq!(extract_levels(&diag).unwrap(), levels);
    }
}
