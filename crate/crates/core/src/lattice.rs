//! Ladder geometry: species pattern, crossed elements, couplers and ZZ edges.
//!
//! Columns are indexed from 0 internally. Column `c` follows the repeating
//! `C A B A` pattern, so column 0 is `C`, column 2 is the first `B` column of
//! the processing area, and so on. Qubits are enumerated row-major over the
//! grid, with the `N - 1` couplers appended in row order; that enumeration is
//! the bit order of every full-ladder state vector.
//!
//! Placement of crossed elements:
//! - column 0 (initialization) is made entirely of crossed `C` qubits;
//! - logical row `j` owns one crossed `B`/`C` element in column `2 + 2j`;
//! - the coupler linking rows `j - 1` and `j` sits in column `2 + 2j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    A,
    B,
    C,
}

impl Species {
    pub const ALL: [Species; 3] = [Species::A, Species::B, Species::C];

    pub fn index(self) -> usize {
        match self {
            Species::A => 0,
            Species::B => 1,
            Species::C => 2,
        }
    }

    /// Species of a ladder column under the `CABA` repetition.
    pub fn of_column(column: usize) -> Species {
        match column % 4 {
            0 => Species::C,
            2 => Species::B,
            _ => Species::A,
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Species::A => "A",
            Species::B => "B",
            Species::C => "C",
        };
        f.write_str(s)
    }
}

/// Fabrication detuning class, set by the number of ZZ partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetuningClass {
    /// One ZZ partner (black circle): level spacing lowered by ζ.
    Minus,
    /// Two ZZ partners.
    Nominal,
    /// Three ZZ partners (black triangle): level spacing raised by ζ.
    Plus,
    /// No ZZ partner. Only appears in hand-built single-qubit rows.
    Isolated,
}

impl DetuningClass {
    fn from_degree(degree: usize) -> DetuningClass {
        match degree {
            0 => DetuningClass::Isolated,
            1 => DetuningClass::Minus,
            2 => DetuningClass::Nominal,
            _ => DetuningClass::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitRole {
    pub crossed: bool,
    pub detuning_class: DetuningClass,
    pub is_coupler: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Qubit {
    pub id: QubitId,
    pub species: Species,
    pub role: QubitRole,
    /// Grid row; for a coupler, the upper of the two rows it links.
    pub row: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Initialization,
    Processing,
    Readout,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderLayout {
    n_logical: usize,
    n_rows: usize,
    n_columns: usize,
    qubits: Vec<Qubit>,
    zz_edges: Vec<(QubitId, QubitId)>,
    adjacency: Vec<Vec<QubitId>>,
}

/// Builds the `N`-row ladder with `2N + 3` columns.
pub fn build_ladder(n_logical: usize) -> Result<LadderLayout> {
    LadderLayout::ladder(n_logical)
}

impl LadderLayout {
    pub fn ladder(n_logical: usize) -> Result<Self> {
        if n_logical == 0 {
            return Err(Error::InvalidSize("a ladder needs at least one logical qubit".into()));
        }
        let n_rows = n_logical;
        let n_columns = 2 * n_logical + 3;
        let mut qubits = Vec::with_capacity(n_rows * n_columns + n_rows - 1);
        let mut edges = Vec::new();

        for row in 0..n_rows {
            for column in 0..n_columns {
                let crossed = column == 0 || column == 2 + 2 * row;
                qubits.push(Qubit {
                    id: QubitId(row * n_columns + column),
                    species: Species::of_column(column),
                    role: QubitRole {
                        crossed,
                        detuning_class: DetuningClass::Nominal,
                        is_coupler: false,
                    },
                    row,
                    column,
                });
                if column > 0 {
                    edges.push((QubitId(row * n_columns + column - 1), QubitId(row * n_columns + column)));
                }
            }
        }

        for lower in 1..n_rows {
            let column = 2 + 2 * lower;
            let id = QubitId(qubits.len());
            qubits.push(Qubit {
                id,
                species: Species::A,
                role: QubitRole {
                    crossed: true,
                    detuning_class: DetuningClass::Nominal,
                    is_coupler: true,
                },
                row: lower - 1,
                column,
            });
            edges.push((QubitId((lower - 1) * n_columns + column), id));
            edges.push((QubitId(lower * n_columns + column), id));
        }

        Ok(Self::finish(n_logical, n_rows, n_columns, qubits, edges))
    }

    /// A single row of regular qubits with the given species, chained by ZZ
    /// edges. `crossed` marks crossed elements; it must be empty or have the
    /// same length as `species`.
    pub fn single_row(species: &[Species], crossed: &[bool]) -> Result<Self> {
        if species.is_empty() {
            return Err(Error::InvalidSize("a row needs at least one qubit".into()));
        }
        if !crossed.is_empty() && crossed.len() != species.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} crossed flags for {} qubits",
                crossed.len(),
                species.len()
            )));
        }
        let qubits = species
            .iter()
            .enumerate()
            .map(|(column, &s)| Qubit {
                id: QubitId(column),
                species: s,
                role: QubitRole {
                    crossed: crossed.get(column).copied().unwrap_or(false),
                    detuning_class: DetuningClass::Nominal,
                    is_coupler: false,
                },
                row: 0,
                column,
            })
            .collect();
        let edges = (1..species.len()).map(|c| (QubitId(c - 1), QubitId(c))).collect();
        Ok(Self::finish(1, 1, species.len(), qubits, edges))
    }

    /// Row of `len` regular qubits following the `CABA` column pattern.
    pub fn caba_row(len: usize) -> Result<Self> {
        let species: Vec<Species> = (0..len).map(Species::of_column).collect();
        Self::single_row(&species, &[])
    }

    fn finish(
        n_logical: usize,
        n_rows: usize,
        n_columns: usize,
        mut qubits: Vec<Qubit>,
        zz_edges: Vec<(QubitId, QubitId)>,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); qubits.len()];
        for &(a, b) in &zz_edges {
            adjacency[a.0].push(b);
            adjacency[b.0].push(a);
        }
        for list in &mut adjacency {
            list.sort();
        }
        for q in &mut qubits {
            q.role.detuning_class = DetuningClass::from_degree(adjacency[q.id.0].len());
        }
        Self {
            n_logical,
            n_rows,
            n_columns,
            qubits,
            zz_edges,
            adjacency,
        }
    }

    pub fn n_logical(&self) -> usize {
        self.n_logical
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_columns(&self) -> usize {
        self.n_columns
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    pub fn qubit_ids(&self) -> Vec<QubitId> {
        self.qubits.iter().map(|q| q.id).collect()
    }

    pub fn zz_edges(&self) -> &[(QubitId, QubitId)] {
        &self.zz_edges
    }

    pub fn qubit(&self, q: QubitId) -> Result<&Qubit> {
        self.qubits.get(q.0).ok_or(Error::UnknownQubit(q))
    }

    pub fn neighbors(&self, q: QubitId) -> Result<&[QubitId]> {
        self.adjacency
            .get(q.0)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownQubit(q))
    }

    pub fn sector(&self, column: usize) -> Result<Sector> {
        if column >= self.n_columns {
            return Err(Error::OutOfBounds {
                index: column,
                limit: self.n_columns,
            });
        }
        Ok(if column < 2 {
            Sector::Initialization
        } else if column + 2 >= self.n_columns {
            Sector::Readout
        } else {
            Sector::Processing
        })
    }

    pub fn column_species(&self, column: usize) -> Result<Species> {
        self.grid_qubit(0, column).map(|q| self.qubits[q.0].species)
    }

    /// Grid qubit at `(row, column)`; couplers are not addressable this way.
    pub fn grid_qubit(&self, row: usize, column: usize) -> Result<QubitId> {
        if row >= self.n_rows {
            return Err(Error::OutOfBounds {
                index: row,
                limit: self.n_rows,
            });
        }
        if column >= self.n_columns {
            return Err(Error::OutOfBounds {
                index: column,
                limit: self.n_columns,
            });
        }
        Ok(QubitId(row * self.n_columns + column))
    }

    /// Grid qubits of a column, top row first.
    pub fn column_qubits(&self, column: usize) -> Result<Vec<QubitId>> {
        (0..self.n_rows).map(|row| self.grid_qubit(row, column)).collect()
    }

    pub fn couplers(&self) -> impl Iterator<Item = &Qubit> {
        self.qubits.iter().filter(|q| q.role.is_coupler)
    }

    /// Coupler placed in `column`, if any.
    pub fn coupler_in_column(&self, column: usize) -> Option<&Qubit> {
        self.couplers().find(|q| q.column == column)
    }

    /// Crossed grid element of `column` when the column holds exactly one.
    pub fn crossed_in_column(&self, column: usize) -> Option<&Qubit> {
        let mut crossed = self
            .qubits
            .iter()
            .filter(|q| !q.role.is_coupler && q.role.crossed && q.column == column);
        let first = crossed.next()?;
        crossed.next().is_none().then_some(first)
    }

    /// Column holding the crossed element that logical row `row` uses for
    /// single-qubit gates.
    pub fn gate_column_for_row(&self, row: usize) -> Option<usize> {
        self.qubits
            .iter()
            .find(|q| {
                !q.role.is_coupler
                    && q.role.crossed
                    && q.row == row
                    && q.species != Species::A
                    && matches!(self.sector(q.column), Ok(Sector::Processing))
            })
            .map(|q| q.column)
    }

    /// Column of the coupler that links rows `upper` and `upper + 1`.
    pub fn coupler_column_for_rows(&self, upper: usize) -> Option<usize> {
        self.couplers().find(|q| q.row == upper).map(|q| q.column)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let qubits: Vec<serde_json::Value> = self
            .qubits
            .iter()
            .map(|q| {
                serde_json::json!({
                    "id": q.id.0,
                    "species": q.species,
                    "crossed": q.role.crossed,
                    "detuning_class": q.role.detuning_class,
                    "is_coupler": q.role.is_coupler,
                    "row": q.row,
                    "column": q.column,
                    "column_1based": q.column + 1,
                })
            })
            .collect();
        let edges: Vec<[usize; 2]> = self.zz_edges.iter().map(|&(a, b)| [a.0, b.0]).collect();
        serde_json::json!({
            "n_logical": self.n_logical,
            "n_rows": self.n_rows,
            "n_columns": self.n_columns,
            "qubit_count": self.qubits.len(),
            "qubits": qubits,
            "zz_edges": edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn sizes_match_closed_form() {
        for n in 1..=8 {
            let layout = build_ladder(n).unwrap();
            assert_eq!(layout.qubit_count(), 2 * n * n + 4 * n - 1);
            assert_eq!(layout.n_columns(), 2 * n + 3);
            assert_eq!(layout.couplers().count(), n - 1);
        }
    }

    #[test]
    fn n2_enumeration_cross_check() {
        let layout = build_ladder(2).unwrap();
        let grid = layout.qubits().iter().filter(|q| !q.role.is_coupler).count();
        assert_eq!(grid, 7 * 2);
        assert_eq!(layout.qubit_count(), grid + 1);
        assert_eq!(layout.qubit_count(), 15);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(build_ladder(0), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn chain_degrees_for_n1() {
        let layout = build_ladder(1).unwrap();
        assert_eq!(layout.neighbors(QubitId(0)).unwrap().len(), 1);
        assert_eq!(layout.neighbors(QubitId(2)).unwrap().len(), 2);
        assert_eq!(layout.neighbors(QubitId(4)).unwrap().len(), 1);
        assert!(layout.neighbors(QubitId(5)).is_err());
    }

    #[test]
    fn coupler_neighbors_are_its_column_elements() {
        let layout = build_ladder(4).unwrap();
        let mut seen = 0;
        for c in layout.couplers() {
            let nbrs = layout.neighbors(c.id).unwrap();
            assert_eq!(nbrs.len(), 2);
            let expected: Vec<QubitId> = vec![
                layout.grid_qubit(c.row, c.column).unwrap(),
                layout.grid_qubit(c.row + 1, c.column).unwrap(),
            ];
            assert_eq!(nbrs, expected.as_slice());
            assert_ne!(layout.qubit(nbrs[0]).unwrap().species, Species::A);
            seen += 1;
        }
        assert_eq!(seen, 3);
    }

    #[test]
    fn sectors() {
        let layout = build_ladder(4).unwrap();
        assert_eq!(layout.sector(0).unwrap(), Sector::Initialization);
        assert_eq!(layout.sector(1).unwrap(), Sector::Initialization);
        assert_eq!(layout.sector(5).unwrap(), Sector::Processing);
        assert_eq!(layout.sector(9).unwrap(), Sector::Readout);
        assert_eq!(layout.sector(10).unwrap(), Sector::Readout);
        assert!(layout.sector(11).is_err());
    }

    #[test]
    fn caba_pattern_and_detuning_classes() {
        for n in 1..=6 {
            let layout = build_ladder(n).unwrap();
            for q in layout.qubits() {
                if !q.role.is_coupler {
                    assert_eq!(q.species, Species::of_column(q.column));
                }
                let degree = layout.neighbors(q.id).unwrap().len();
                assert!((1..=3).contains(&degree));
                let expected = match degree {
                    1 => DetuningClass::Minus,
                    2 => DetuningClass::Nominal,
                    _ => DetuningClass::Plus,
                };
                assert_eq!(q.role.detuning_class, expected);
            }
        }
    }

    #[test]
    fn edges_are_simple() {
        for n in 1..=6 {
            let layout = build_ladder(n).unwrap();
            let mut seen = HashSet::new();
            for &(a, b) in layout.zz_edges() {
                assert_ne!(a, b);
                let key = (a.min(b), a.max(b));
                assert!(seen.insert(key), "duplicate edge {key:?}");
                assert!(layout.neighbors(a).unwrap().contains(&b));
                assert!(layout.neighbors(b).unwrap().contains(&a));
            }
        }
    }

    #[test]
    fn crossed_separation() {
        for n in 1..=8 {
            let layout = build_ladder(n).unwrap();
            for species in [Species::B, Species::C] {
                let mut cols: Vec<usize> = layout
                    .qubits()
                    .iter()
                    .filter(|q| q.role.crossed && q.species == species)
                    .map(|q| q.column)
                    .collect();
                cols.sort_unstable();
                cols.dedup();
                for w in cols.windows(2) {
                    assert!(w[1] - w[0] >= 4, "{species} columns {w:?}");
                }
            }
            // processing-area crossed elements and couplers never share a row or column
            let processing: Vec<&Qubit> = layout
                .qubits()
                .iter()
                .filter(|q| q.role.crossed && q.column >= 2)
                .collect();
            for (i, a) in processing.iter().enumerate() {
                for b in &processing[i + 1..] {
                    if a.species == b.species {
                        assert_ne!(a.row, b.row);
                        assert_ne!(a.column, b.column);
                    }
                }
            }
        }
    }

    #[test]
    fn every_row_has_a_gate_column() {
        let layout = build_ladder(5).unwrap();
        for row in 0..5 {
            let col = layout.gate_column_for_row(row).unwrap();
            assert_eq!(col, 2 + 2 * row);
            assert_eq!(layout.crossed_in_column(col).unwrap().row, row);
        }
        for upper in 0..4 {
            assert_eq!(layout.coupler_column_for_rows(upper), Some(4 + 2 * upper));
        }
    }
}
