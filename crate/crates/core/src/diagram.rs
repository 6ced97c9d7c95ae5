//! Diagrams: finite sets of plain and ghost cells on a 1-based grid, with
//! row 1 at the bottom. Includes seed constructors (key and Rothe diagrams),
//! structural queries, and the grid-text / JSON serializations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::moves::{self, RowAction};

/// 1-based cell coordinates; row 1 is the bottom row, column 1 the left edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub row: u32,
    pub col: u32,
}

impl Position {
    pub const fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Whether an occupied position holds an ordinary cell or a ghost cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    Plain,
    Ghost,
}

/// Side length of the bit-packed window.
const WINDOW: u32 = 8;

#[inline]
fn packed_bit(pos: Position) -> u64 {
    1u64 << ((pos.row - 1) * WINDOW + (pos.col - 1))
}

/// Internal cell storage. Diagrams whose bounding box fits the 8x8 window are
/// kept as two bit masks; anything larger falls back to a sorted cell list.
/// The choice is canonical (it depends only on the bounding box), so derived
/// equality and hashing agree across encodings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Bit `(row-1)*8 + (col-1)`; invariant: `plain & ghost == 0`.
    Packed { plain: u64, ghost: u64 },
    /// Strictly increasing by (row, col); at most one entry per position.
    Sparse(Vec<(Position, CellKind)>),
}

/// A diagram: at most one cell, plain or ghost, per grid position.
///
/// Values are immutable after construction and cheap to clone, hash and
/// compare; all operations are pure functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    repr: Repr,
}

impl Diagram {
    pub fn empty() -> Self {
        Self {
            repr: Repr::Packed { plain: 0, ghost: 0 },
        }
    }

    /// Builds the canonical diagram holding exactly the given cells.
    ///
    /// Duplicates within one set are collapsed; a position present in both
    /// sets is an error.
    pub fn from_cells<P, G>(plain: P, ghost: G) -> Result<Self>
    where
        P: IntoIterator<Item = Position>,
        G: IntoIterator<Item = Position>,
    {
        let mut map = BTreeMap::new();
        for pos in plain {
            check_position(pos)?;
            map.insert(pos, CellKind::Plain);
        }
        for pos in ghost {
            check_position(pos)?;
            if map.insert(pos, CellKind::Ghost) == Some(CellKind::Plain) {
                return Err(Error::Overlap {
                    row: pos.row,
                    col: pos.col,
                });
            }
        }
        Ok(Self::from_sorted_cells(map.into_iter().collect()))
    }

    /// `cells` must be sorted by position with no duplicate positions.
    pub(crate) fn from_sorted_cells(cells: Vec<(Position, CellKind)>) -> Self {
        let fits = cells
            .iter()
            .all(|(p, _)| p.row <= WINDOW && p.col <= WINDOW);
        if fits {
            let (mut plain, mut ghost) = (0u64, 0u64);
            for (pos, kind) in cells {
                match kind {
                    CellKind::Plain => plain |= packed_bit(pos),
                    CellKind::Ghost => ghost |= packed_bit(pos),
                }
            }
            Self {
                repr: Repr::Packed { plain, ghost },
            }
        } else {
            Self {
                repr: Repr::Sparse(cells),
            }
        }
    }

    /// Cells in canonical order: strictly increasing by (row, col).
    pub fn cells(&self) -> Cells<'_> {
        Cells {
            inner: match &self.repr {
                Repr::Packed { plain, ghost } => CellsInner::Packed {
                    plain: *plain,
                    remaining: plain | ghost,
                },
                Repr::Sparse(cells) => CellsInner::Sparse(cells.iter()),
            },
        }
    }

    pub fn kind_at(&self, pos: Position) -> Option<CellKind> {
        match &self.repr {
            Repr::Packed { plain, ghost } => {
                if pos.row > WINDOW || pos.col > WINDOW || pos.row == 0 || pos.col == 0 {
                    return None;
                }
                let bit = packed_bit(pos);
                if plain & bit != 0 {
                    Some(CellKind::Plain)
                } else if ghost & bit != 0 {
                    Some(CellKind::Ghost)
                } else {
                    None
                }
            }
            Repr::Sparse(cells) => cells
                .binary_search_by_key(&pos, |(p, _)| *p)
                .ok()
                .map(|i| cells[i].1),
        }
    }

    pub fn is_occupied(&self, pos: Position) -> bool {
        self.kind_at(pos).is_some()
    }

    pub fn cell_count(&self) -> usize {
        match &self.repr {
            Repr::Packed { plain, ghost } => (plain.count_ones() + ghost.count_ones()) as usize,
            Repr::Sparse(cells) => cells.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cell_count() == 0
    }

    pub fn ghost_count(&self) -> usize {
        match &self.repr {
            Repr::Packed { ghost, .. } => ghost.count_ones() as usize,
            Repr::Sparse(cells) => cells.iter().filter(|(_, k)| *k == CellKind::Ghost).count(),
        }
    }

    pub fn plain_count(&self) -> usize {
        self.cell_count() - self.ghost_count()
    }

    /// Largest occupied row, or 0 for the empty diagram.
    pub fn max_row(&self) -> u32 {
        match &self.repr {
            Repr::Packed { plain, ghost } => {
                let occ = plain | ghost;
                if occ == 0 {
                    0
                } else {
                    (63 - occ.leading_zeros()) / WINDOW + 1
                }
            }
            Repr::Sparse(cells) => cells.last().map_or(0, |(p, _)| p.row),
        }
    }

    /// Largest occupied column, or 0 for the empty diagram.
    pub fn max_col(&self) -> u32 {
        match &self.repr {
            Repr::Packed { plain, ghost } => {
                let occ = plain | ghost;
                (1..=WINDOW)
                    .filter_map(|r| {
                        let byte = (occ >> ((r - 1) * WINDOW)) & 0xFF;
                        (byte != 0).then(|| 64 - (byte.leading_zeros() - 0) - 56)
                    })
                    .max()
                    .unwrap_or(0)
            }
            Repr::Sparse(cells) => cells.iter().map(|(p, _)| p.col).max().unwrap_or(0),
        }
    }

    /// The rightmost cell of row `r`, if the row is nonempty.
    pub fn rightmost_in_row(&self, row: u32) -> Option<(Position, CellKind)> {
        if row == 0 {
            return None;
        }
        match &self.repr {
            Repr::Packed { plain, ghost } => {
                if row > WINDOW {
                    return None;
                }
                let byte = ((plain | ghost) >> ((row - 1) * WINDOW)) & 0xFF;
                if byte == 0 {
                    return None;
                }
                let col = 64 - byte.leading_zeros();
                let pos = Position::new(row, col);
                Some((pos, self.kind_at(pos).unwrap()))
            }
            Repr::Sparse(cells) => cells
                .iter()
                .rev()
                .find(|(p, _)| p.row == row)
                .map(|&(p, k)| (p, k)),
        }
    }

    pub fn row_plain_count(&self, row: u32) -> u32 {
        match &self.repr {
            Repr::Packed { plain, .. } => {
                if row == 0 || row > WINDOW {
                    0
                } else {
                    ((plain >> ((row - 1) * WINDOW)) & 0xFF).count_ones()
                }
            }
            Repr::Sparse(cells) => cells
                .iter()
                .filter(|(p, k)| p.row == row && *k == CellKind::Plain)
                .count() as u32,
        }
    }

    pub fn row_cell_count(&self, row: u32) -> u32 {
        match &self.repr {
            Repr::Packed { plain, ghost } => {
                if row == 0 || row > WINDOW {
                    0
                } else {
                    (((plain | ghost) >> ((row - 1) * WINDOW)) & 0xFF).count_ones()
                }
            }
            Repr::Sparse(cells) => cells.iter().filter(|(p, _)| p.row == row).count() as u32,
        }
    }

    /// Positions of all ghost cells, in canonical order.
    pub fn ghost_set(&self) -> Vec<Position> {
        self.cells()
            .filter(|(_, k)| *k == CellKind::Ghost)
            .map(|(p, _)| p)
            .collect()
    }

    pub fn plain_set(&self) -> Vec<Position> {
        self.cells()
            .filter(|(_, k)| *k == CellKind::Plain)
            .map(|(p, _)| p)
            .collect()
    }

    /// The rightmost cells: one plain cell per row with nothing of either
    /// kind to its right. Rows whose rightmost cell is a ghost contribute
    /// nothing.
    pub fn rightmost_cells(&self) -> Vec<Position> {
        (1..=self.max_row())
            .filter_map(|r| match self.rightmost_in_row(r) {
                Some((pos, CellKind::Plain)) => Some(pos),
                _ => None,
            })
            .collect()
    }

    /// Cells displaced by the ghost move at their own row.
    pub fn free_cells(&self) -> Vec<Position> {
        (1..=self.max_row())
            .filter_map(|r| match moves::row_action(self, r) {
                RowAction::Displace { from, .. } => Some(from),
                RowAction::Trivial(_) => None,
            })
            .collect()
    }

    /// Ghost cells together with the plain cells that survive the ghost move
    /// at their own row.
    pub fn blocked_cells(&self) -> Vec<Position> {
        let mut out = self.ghost_set();
        for row in 1..=self.max_row() {
            let moved = moves::ghost_move(self, row);
            out.extend(
                self.cells()
                    .filter(|(p, k)| {
                        p.row == row
                            && *k == CellKind::Plain
                            && moved.kind_at(*p) == Some(CellKind::Plain)
                    })
                    .map(|(p, _)| p),
            );
        }
        out.sort();
        out
    }

    /// The free cell sequence: free cells listed by strictly decreasing row.
    /// Defined for ghost-free diagrams only.
    pub fn free_cell_sequence(&self) -> Result<FreeCellSequence> {
        if self.ghost_count() > 0 {
            return Err(Error::GhostSeed);
        }
        let mut entries = self.free_cells();
        entries.sort_by(|a, b| b.row.cmp(&a.row));
        Ok(FreeCellSequence { entries })
    }

    /// Applies the cell displacement of a nontrivial move: the plain cell at
    /// `from` lands at `to`, and a ghost is left at `from` when requested.
    pub(crate) fn with_displacement(&self, from: Position, to: Position, leave_ghost: bool) -> Self {
        debug_assert_eq!(self.kind_at(from), Some(CellKind::Plain));
        debug_assert_eq!(self.kind_at(to), None);
        debug_assert_eq!(from.col, to.col);
        debug_assert!(to.row < from.row);
        match &self.repr {
            Repr::Packed { plain, ghost } => {
                let mut plain = *plain & !packed_bit(from);
                plain |= packed_bit(to);
                let mut ghost = *ghost;
                if leave_ghost {
                    ghost |= packed_bit(from);
                }
                Self {
                    repr: Repr::Packed { plain, ghost },
                }
            }
            Repr::Sparse(cells) => {
                let mut out: Vec<(Position, CellKind)> = Vec::with_capacity(cells.len() + 1);
                for &(pos, kind) in cells {
                    if pos == from {
                        if leave_ghost {
                            out.push((pos, CellKind::Ghost));
                        }
                    } else {
                        out.push((pos, kind));
                    }
                }
                out.push((to, CellKind::Plain));
                out.sort_by_key(|(p, _)| *p);
                // a Kohnert move can shrink the bounding box into the window
                Self::from_sorted_cells(out)
            }
        }
    }

    /// Renders the grid text form: lines top to bottom, '.' empty, 'O' plain,
    /// 'X' ghost, every line padded to the bounding-box width.
    pub fn render_grid(&self) -> String {
        let (rows, cols) = (self.max_row(), self.max_col());
        let mut lines = Vec::with_capacity(rows as usize);
        for r in (1..=rows).rev() {
            let line: String = (1..=cols)
                .map(|c| match self.kind_at(Position::new(r, c)) {
                    None => '.',
                    Some(CellKind::Plain) => 'O',
                    Some(CellKind::Ghost) => 'X',
                })
                .collect();
            lines.push(line);
        }
        lines.join("\n")
    }

    /// Parses the grid text form; the last line is row 1.
    pub fn parse_grid(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let nrows = lines.len() as u32;
        let mut cells = BTreeMap::new();
        for (i, line) in lines.iter().enumerate() {
            let row = nrows - i as u32;
            for (j, ch) in line.chars().enumerate() {
                let kind = match ch {
                    '.' => continue,
                    'O' => CellKind::Plain,
                    'X' => CellKind::Ghost,
                    found => {
                        return Err(Error::Parse {
                            line: i + 1,
                            col: j + 1,
                            found,
                        })
                    }
                };
                cells.insert(Position::new(row, j as u32 + 1), kind);
            }
        }
        Ok(Self::from_sorted_cells(cells.into_iter().collect()))
    }
}

fn check_position(pos: Position) -> Result<()> {
    if pos.row == 0 || pos.col == 0 {
        Err(Error::InvalidPosition {
            row: pos.row,
            col: pos.col,
        })
    } else {
        Ok(())
    }
}

/// Canonical order: lexicographic on the cell enumeration. Consistent across
/// the two internal encodings.
impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cells().cmp(other.cells())
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_grid())
    }
}

pub struct Cells<'a> {
    inner: CellsInner<'a>,
}

enum CellsInner<'a> {
    Packed { plain: u64, remaining: u64 },
    Sparse(std::slice::Iter<'a, (Position, CellKind)>),
}

impl Iterator for Cells<'_> {
    type Item = (Position, CellKind);

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.inner {
            CellsInner::Packed { plain, remaining } => {
                if *remaining == 0 {
                    return None;
                }
                let bit = remaining.trailing_zeros();
                *remaining &= *remaining - 1;
                let pos = Position::new(bit / WINDOW + 1, bit % WINDOW + 1);
                let kind = if *plain & (1u64 << bit) != 0 {
                    CellKind::Plain
                } else {
                    CellKind::Ghost
                };
                Some((pos, kind))
            }
            CellsInner::Sparse(iter) => iter.next().copied(),
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match &self.inner {
            CellsInner::Packed { remaining, .. } => {
                let n = remaining.count_ones() as usize;
                (n, Some(n))
            }
            CellsInner::Sparse(iter) => iter.size_hint(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    cells: Vec<(u32, u32)>,
    #[serde(default)]
    ghosts: Vec<(u32, u32)>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = DiagramJson {
            cells: self.plain_set().iter().map(|p| (p.row, p.col)).collect(),
            ghosts: self.ghost_set().iter().map(|p| (p.row, p.col)).collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = DiagramJson::deserialize(deserializer)?;
        Diagram::from_cells(
            json.cells.iter().map(|&(r, c)| Position::new(r, c)),
            json.ghosts.iter().map(|&(r, c)| Position::new(r, c)),
        )
        .map_err(D::Error::custom)
    }
}

/// A finite sequence of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakComposition(Vec<u32>);

impl WeakComposition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl FromStr for WeakComposition {
    type Err = Error;

    /// Comma-separated non-negative integers, e.g. `1,1,3,2`. The empty
    /// string is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self(Vec::new()));
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad composition part {part:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// A permutation of [n] in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(one_line: Vec<u32>) -> Result<Self> {
        let mut sorted = one_line.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &v)| v != i as u32 + 1) {
            return Err(Error::InvalidInput(format!(
                "{one_line:?} is not a permutation of 1..={}",
                one_line.len()
            )));
        }
        Ok(Self(one_line))
    }

    pub fn one_line(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Inverse in one-line notation.
    pub fn inverse(&self) -> Vec<u32> {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        inv
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Bracketed one-line form, e.g. `[4,2,5,3,1]`; brackets optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('[').unwrap_or(s);
        let s = s.strip_suffix(']').unwrap_or(s);
        let s = s.trim();
        if s.is_empty() {
            return Permutation::new(Vec::new());
        }
        let one_line = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad permutation entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(one_line)
    }
}

/// Free cells listed by strictly decreasing row; the projection to columns is
/// the free cell sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCellSequence {
    entries: Vec<Position>,
}

impl FreeCellSequence {
    pub fn entries(&self) -> &[Position] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<u32> {
        self.entries.iter().map(|p| p.row).collect()
    }

    pub fn columns(&self) -> Vec<u32> {
        self.entries.iter().map(|p| p.col).collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].col < w[1].col)
    }
}

/// The left-justified diagram with `alpha[i]` plain cells in row `i+1`.
pub fn key_diagram(alpha: &WeakComposition) -> Diagram {
    let cells = alpha
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (1..=len).map(move |c| Position::new(i as u32 + 1, c)));
    Diagram::from_cells(cells, std::iter::empty()).expect("key diagram cells are distinct")
}

/// The inversion diagram `{(i,j) : w(i) > j and w^-1(j) > i}`, all plain.
pub fn rothe_diagram(w: &Permutation) -> Diagram {
    let n = w.len() as u32;
    let inv = w.inverse();
    let cells = (1..=n).flat_map(|i| {
        let wi = w.one_line()[i as usize - 1];
        let inv = &inv;
        (1..=n).filter_map(move |j| {
            (wi > j && inv[j as usize - 1] > i).then_some(Position::new(i, j))
        })
    });
    Diagram::from_cells(cells, std::iter::empty()).expect("rothe diagram cells are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{diagram, pos, positions};

    #[test]
    fn from_cells_builds_canonical_diagrams() {
        let d = diagram(
            &[(1, 1), (1, 4), (2, 2), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)],
            &[],
        );
        assert_eq!(d.cell_count(), 8);
        assert_eq!(d.ghost_count(), 0);
        assert_eq!((d.max_row(), d.max_col()), (4, 4));

        // insertion order and duplicates do not matter
        let again = Diagram::from_cells(
            positions(&[(4, 1), (1, 1), (2, 3), (1, 4), (3, 2), (2, 2), (3, 1), (3, 4), (4, 1)]),
            std::iter::empty(),
        )
        .unwrap();
        assert_eq!(d, again);

        assert_eq!(Diagram::empty(), diagram(&[], &[]));
        assert!(Diagram::empty().is_empty());

        let mixed = diagram(&[(1, 3), (2, 3), (3, 1), (3, 2)], &[(2, 2), (4, 1)]);
        assert_eq!(mixed.cell_count(), 6);
        assert_eq!(mixed.ghost_set(), positions(&[(2, 2), (4, 1)]));
    }

    #[test]
    fn from_cells_rejects_overlap_and_zero_coordinates() {
        let err = Diagram::from_cells(positions(&[(1, 1)]), positions(&[(1, 1)])).unwrap_err();
        assert_eq!(err, Error::Overlap { row: 1, col: 1 });
        let err = Diagram::from_cells(positions(&[(0, 1)]), std::iter::empty()).unwrap_err();
        assert_eq!(err, Error::InvalidPosition { row: 0, col: 1 });
    }

    #[test]
    fn key_diagram_examples() {
        let alpha = WeakComposition::new(vec![1, 1, 3, 2]);
        assert_eq!(
            key_diagram(&alpha),
            diagram(&[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)], &[]),
        );
        assert_eq!(key_diagram(&WeakComposition::new(vec![])), Diagram::empty());
        assert_eq!(
            key_diagram(&WeakComposition::new(vec![0, 2])),
            diagram(&[(2, 1), (2, 2)], &[]),
        );
    }

    #[test]
    fn key_diagram_row_counts_match_parts() {
        let alpha = WeakComposition::new(vec![3, 0, 2, 5, 1]);
        let d = key_diagram(&alpha);
        for (i, &len) in alpha.parts().iter().enumerate() {
            assert_eq!(d.row_plain_count(i as u32 + 1), len);
        }
        assert_eq!(d.ghost_count(), 0);
    }

    #[test]
    fn rothe_diagram_examples() {
        let w = Permutation::new(vec![4, 2, 5, 3, 1]).unwrap();
        assert_eq!(
            rothe_diagram(&w),
            diagram(&[(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (3, 3), (4, 1)], &[]),
        );
        let id = Permutation::new(vec![1, 2, 3]).unwrap();
        assert_eq!(rothe_diagram(&id), Diagram::empty());
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(rothe_diagram(&swap), diagram(&[(1, 1)], &[]));
    }

    /// Independent route: the Rothe diagram is {(i, w(j)) : i < j, w(i) > w(j)}.
    #[test]
    fn rothe_diagram_matches_inversion_enumeration() {
        let perms3 = [
            vec![1, 2, 3],
            vec![1, 3, 2],
            vec![2, 1, 3],
            vec![2, 3, 1],
            vec![3, 1, 2],
            vec![3, 2, 1],
        ];
        for one_line in perms3 {
            let w = Permutation::new(one_line.clone()).unwrap();
            let mut cells = Vec::new();
            for i in 0..one_line.len() {
                for j in i + 1..one_line.len() {
                    if one_line[i] > one_line[j] {
                        cells.push(Position::new(i as u32 + 1, one_line[j]));
                    }
                }
            }
            let expected = Diagram::from_cells(cells, std::iter::empty()).unwrap();
            assert_eq!(rothe_diagram(&w), expected, "w = {one_line:?}");
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!("[4,2,5,3,1]".parse::<Permutation>().unwrap().one_line(), &[4, 2, 5, 3, 1]);
        assert_eq!("2,1".parse::<Permutation>().unwrap().inverse(), vec![2, 1]);
    }

    #[test]
    fn composition_parsing() {
        assert_eq!("1,1,3,2".parse::<WeakComposition>().unwrap().parts(), &[1, 1, 3, 2]);
        assert_eq!("".parse::<WeakComposition>().unwrap().parts(), &[] as &[u32]);
        assert!("1,x".parse::<WeakComposition>().is_err());
    }

    #[test]
    fn ghost_set_examples() {
        let plain = diagram(
            &[(1, 1), (1, 4), (2, 2), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)],
            &[],
        );
        assert!(plain.ghost_set().is_empty());
        let mixed = diagram(&[(1, 3), (2, 3), (3, 1), (3, 2)], &[(2, 2), (4, 1)]);
        assert_eq!(mixed.ghost_set(), positions(&[(2, 2), (4, 1)]));
        assert!(Diagram::empty().ghost_set().is_empty());
    }

    #[test]
    fn rightmost_cells_skip_ghost_rows() {
        let plain = diagram(
            &[(1, 1), (1, 4), (2, 2), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)],
            &[],
        );
        assert_eq!(plain.rightmost_cells(), positions(&[(1, 4), (2, 3), (3, 4), (4, 1)]));
        let mixed = diagram(&[(1, 3), (2, 3), (3, 1), (3, 2)], &[(2, 2), (4, 1)]);
        assert_eq!(mixed.rightmost_cells(), positions(&[(1, 3), (2, 3), (3, 2)]));
        assert!(Diagram::empty().rightmost_cells().is_empty());
    }

    #[test]
    fn grid_round_trip_examples() {
        let d = Diagram::parse_grid("O.\n.O").unwrap();
        assert_eq!(d, diagram(&[(2, 1), (1, 2)], &[]));
        let d = Diagram::parse_grid(".X\nO.").unwrap();
        assert_eq!(d, diagram(&[(1, 1)], &[(2, 2)]));
        assert_eq!(Diagram::parse_grid("").unwrap(), Diagram::empty());
        assert_eq!(Diagram::empty().render_grid(), "");

        let err = Diagram::parse_grid("O.\n.q").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                col: 2,
                found: 'q'
            }
        );
    }

    #[test]
    fn render_pads_to_bounding_box() {
        let d = key_diagram(&WeakComposition::new(vec![1, 1, 3, 2]));
        assert_eq!(d.render_grid(), "OO.\nOOO\nO..\nO..");
    }

    #[test]
    fn short_lines_are_padded_on_parse() {
        let d = Diagram::parse_grid("OO\nOOO\nO\nO").unwrap();
        assert_eq!(d, key_diagram(&WeakComposition::new(vec![1, 1, 3, 2])));
    }

    #[test]
    fn json_round_trip_and_schema() {
        let d = diagram(&[(1, 3), (2, 3), (3, 1), (3, 2)], &[(2, 2), (4, 1)]);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"cells":[[1,3],[2,3],[3,1],[3,2]],"ghosts":[[2,2],[4,1]]}"#
        );
        let back: Diagram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        // overlap caught during deserialization
        let bad = r#"{"cells":[[1,1]],"ghosts":[[1,1]]}"#;
        assert!(serde_json::from_str::<Diagram>(bad).is_err());
    }

    #[test]
    fn sparse_and_packed_encodings_agree() {
        // same cells shifted out of the packed window and back
        let small = diagram(&[(1, 1), (2, 5), (8, 8)], &[(3, 3)]);
        let large = diagram(&[(1, 1), (2, 5), (8, 8), (9, 12)], &[(3, 3)]);
        assert!(large.cells().count() == 4);
        assert_eq!(large.max_row(), 9);
        assert_eq!(large.max_col(), 12);
        assert_eq!(large.kind_at(pos(3, 3)), Some(CellKind::Ghost));
        assert_eq!(large.kind_at(pos(2, 5)), Some(CellKind::Plain));
        assert_eq!(large.kind_at(pos(9, 9)), None);
        assert_eq!(small.rightmost_in_row(2), Some((pos(2, 5), CellKind::Plain)));
        assert_eq!(large.rightmost_in_row(9), Some((pos(9, 12), CellKind::Plain)));
        // canonical comparison is encoding independent
        assert!(small < large);
        let round = Diagram::parse_grid(&large.render_grid()).unwrap();
        assert_eq!(round, large);
    }

    #[test]
    fn free_cell_sequence_examples() {
        let d1 = diagram(&[(5, 1), (4, 1), (4, 2), (2, 2)], &[]);
        assert_eq!(d1.free_cell_sequence().unwrap().columns(), vec![1, 2, 2]);
        let d3 = diagram(&[(4, 1), (3, 2), (2, 3), (1, 4)], &[]);
        assert_eq!(d3.free_cell_sequence().unwrap().columns(), vec![1, 2, 3]);
        let d = diagram(&[(4, 2), (3, 2), (3, 3)], &[]);
        let seq = d.free_cell_sequence().unwrap();
        assert_eq!(seq.columns(), vec![2, 3]);
        assert!(seq.is_strictly_increasing());
        assert_eq!(seq.rows(), vec![4, 3]);

        let ghosted = diagram(&[(1, 3)], &[(2, 2)]);
        assert_eq!(ghosted.free_cell_sequence().unwrap_err(), Error::GhostSeed);
    }
}
