//! Closed-form expectations for the families `L(2,2n)` and `L(2,2n+1)`
//! and the harness that checks the pipeline against them.

use origami_kz::coset::index_in_sl2;
use origami_kz::geometry::{decompose, GeodesicLoop};
use origami_kz::homology::{standard_basis, HomologyBasis};
use origami_kz::monodromy::dehn_twist_action;
use origami_kz::{Direction, Mat2, Origami, Result};

use crate::report::{Check, Record, Table};

pub const ROWS: [&str; 6] = ["X2", "X1", "X", "Y1", "Y2", "Y"];

/// A column of an intersection table: the core of the cylinder with
/// combinatorial length `f` in direction `dir`, or a basis curve.
#[derive(Clone, Debug)]
pub struct Column {
    pub name: &'static str,
    pub source: Source,
    /// Expected `Omega(b, core)` for `b` in [`ROWS`] order.
    pub expected: [i64; 6],
}

#[derive(Clone, Copy, Debug)]
pub enum Source {
    Core { dir: Direction, f: usize },
    BasisCurve(usize),
}

/// A twist direction with its expected sorted `(f, c)` pairs and matrix.
#[derive(Clone, Debug)]
pub struct Twist {
    pub dir: Direction,
    pub cylinders: Vec<(usize, usize)>,
    pub matrix: Mat2,
}

#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub origami: Origami,
    pub twists: [Twist; 2],
    pub columns: Vec<Column>,
    pub index: usize,
}

fn dir(p: i64, q: i64) -> Direction {
    Direction::new(p, q).expect("primitive direction")
}

fn mat(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    Mat2::new(a, b, c, d).expect("determinant one")
}

/// `L(2,2n)`, odd degree `2n+1`.
pub fn odd_degree(n: usize) -> Family {
    let k = n as i64;
    let theta = dir(k, k + 1);
    let mut rows = vec![(2 * n - 1, 1), (2, 1)];
    rows.sort_unstable();
    let mut vert = vec![(2 * n, 1), (1, 1)];
    vert.sort_unstable();
    Family {
        name: format!("L(2,{})", 2 * n),
        origami: Origami::l_shape(2, 2 * n).expect("valid shape"),
        twists: [
            Twist { dir: theta, cylinders: rows, matrix: mat(2, 1, -1, 0) },
            Twist { dir: Direction::VERTICAL, cylinders: vert, matrix: mat(1, 0, -1, 1) },
        ],
        columns: vec![
            Column {
                name: "Theta_r",
                source: Source::Core { dir: theta, f: 2 * n - 1 },
                expected: [2 * k - 1, k, -1, -(k - 1), -(2 * k - 2) * k - 1, -1],
            },
            Column {
                name: "Theta_g",
                source: Source::Core { dir: theta, f: 2 },
                expected: [3, 1, 1, -1, -(2 * k - 1), 1],
            },
            Column { name: "Y1", source: Source::BasisCurve(2), expected: [1, 0, 1, 0, 0, 0] },
            Column { name: "Y2", source: Source::BasisCurve(3), expected: [1, 1, -1, 0, 0, 0] },
        ],
        index: 1,
    }
}

/// `L(2,2n+1)`, even degree `2n+2`.
pub fn even_degree(n: usize) -> Family {
    let k = n as i64;
    let psi = dir(2 * k + 1, 2 * k + 3);
    let theta = dir(2 * k + 2, 2 * k + 1);
    let mut psi_fc = vec![(2 * n, 1), (1, 2)];
    psi_fc.sort_unstable();
    let mut theta_fc = vec![(2 * n + 1, 1), (1, 1)];
    theta_fc.sort_unstable();
    Family {
        name: format!("L(2,{})", 2 * n + 1),
        origami: Origami::l_shape(2, 2 * n + 1).expect("valid shape"),
        twists: [
            Twist { dir: psi, cylinders: psi_fc, matrix: mat(3, 2, -2, -1) },
            Twist { dir: theta, cylinders: theta_fc, matrix: mat(1, 0, -1, 1) },
        ],
        columns: vec![
            Column {
                name: "Theta_m",
                source: Source::Core { dir: theta, f: 2 * n + 1 },
                expected: [4 * k + 1, 2 * k, 1, -(2 * k + 1), -(2 * k + 1) * (2 * k + 1), 0],
            },
            Column {
                name: "Theta_b",
                source: Source::Core { dir: theta, f: 1 },
                expected: [1, 1, -1, -1, -(2 * k + 1), 0],
            },
            Column {
                name: "Psi_r",
                source: Source::Core { dir: psi, f: 2 * n },
                expected: [4 * k, 2 * k + 1, -2, -(2 * k - 1), -((2 * k - 1) * (2 * k + 1) + 2), -2],
            },
            Column { name: "Psi_g", source: Source::Core { dir: psi, f: 1 }, expected: [3, 1, 1, -1, -2 * k, 1] },
        ],
        index: 3,
    }
}

fn column_curve(o: &Origami, basis: &HomologyBasis, src: Source) -> Result<GeodesicLoop> {
    match src {
        Source::BasisCurve(i) => Ok(basis.curves[i].clone()),
        Source::Core { dir, f } => {
            let dec = decompose(o, dir)?;
            dec.cylinders
                .into_iter()
                .find(|c| c.f == f)
                .map(|c| c.core)
                .ok_or_else(|| origami_kz::Error::Degenerate(format!("no cylinder with f={f} in direction {dir}")))
        }
    }
}

/// `Omega(b, l)` for `b` in [`ROWS`], the last entries by bilinearity.
pub fn table_column(basis: &HomologyBasis, l: &GeodesicLoop) -> Result<[i64; 6]> {
    let [x1, x2, y1, y2] = basis.pairings(l)?;
    let nt = basis.nontaut();
    let x = nt.x.0[0] * x1 + nt.x.0[1] * x2;
    let y = nt.y.0[2] * y1 + nt.y.0[3] * y2;
    Ok([x2, x1, x, y1, y2, y])
}

fn run_family(fam: &Family, rec: &mut Record, cap: usize) -> Result<()> {
    let o = &fam.origami;
    rec.degree = Some(o.degree());
    rec.stratum = Some(o.stratum());
    let basis = standard_basis(o)?;
    for tw in &fam.twists {
        let dec = decompose(o, tw.dir)?;
        let mut got: Vec<(usize, usize)> = dec.cylinders.iter().map(|c| (c.f, c.c)).collect();
        got.sort_unstable();
        rec.check(Check::new(format!("(f,c) in direction {}", tw.dir), tw.cylinders.clone(), got));
    }
    let mut cells = vec![Vec::new(); ROWS.len()];
    for col in &fam.columns {
        let curve = column_curve(o, &basis, col.source)?;
        let got = table_column(&basis, &curve)?;
        for (i, row) in ROWS.iter().enumerate() {
            rec.check(Check::new(format!("Omega({row},{})", col.name), col.expected[i], got[i]));
            cells[i].push(got[i]);
        }
    }
    let columns: Vec<String> = fam.columns.iter().map(|c| c.name.to_string()).collect();
    for (title, range) in [("Omega(X_i, .)", 0..3), ("Omega(Y_i, .)", 3..6)] {
        rec.tables.push(Table {
            title: title.into(),
            columns: columns.clone(),
            rows: range.map(|i| (ROWS[i].to_string(), cells[i].clone())).collect(),
        });
    }
    let mut gens = Vec::new();
    for (i, tw) in fam.twists.iter().enumerate() {
        let m = dehn_twist_action(o, tw.dir, &basis)?;
        rec.check(Check::new(format!("D{} in direction {}", i + 1, tw.dir), tw.matrix, m));
        rec.directions.push(tw.dir);
        gens.push(m);
    }
    rec.matrices = gens.clone();
    let k = index_in_sl2(&gens, cap)?;
    rec.index = Some(k);
    rec.check(Check::new("index", fam.index, k));
    Ok(())
}

/// Every check for one member of a family; pipeline errors become records.
pub fn verify(fam: &Family, cap: usize) -> Record {
    let mut rec = Record::new(fam.name.clone());
    match run_family(fam, &mut rec, cap) {
        Ok(()) => rec,
        Err(e) => {
            let mut failed = Record::failed(fam.name.clone(), &e);
            failed.checks = rec.checks;
            failed
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_members_pass() {
        for fam in [odd_degree(1), even_degree(1), odd_degree(3), even_degree(2)] {
            let rec = verify(&fam, 10_000);
            assert!(rec.checks.iter().all(|c| c.passed), "{}: {:?}", fam.name, rec.checks);
            assert_eq!(rec.checks.len(), 2 + 24 + 2 + 1);
        }
    }

    #[test]
    fn wrong_expectation_is_reported() {
        let mut fam = odd_degree(2);
        fam.columns[0].expected[0] += 1;
        fam.index = 3;
        let rec = verify(&fam, 10_000);
        assert_eq!(rec.checks.iter().filter(|c| !c.passed).count(), 2);
        assert_eq!(rec.status(), crate::report::Status::Mismatch);
    }
}
