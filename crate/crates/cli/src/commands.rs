use std::collections::BTreeSet;

use anyhow::{bail, Context};
use origami_kz::census::census as run_census;
use origami_kz::coset::{coset_table, index_in_sl2};
use origami_kz::geometry::decompose as run_decompose;
use origami_kz::homology::basis_for;
use origami_kz::monodromy::{kz_generators, twist_multiplicities};
use origami_kz::{Direction, Error, Mat2, Origami};
use serde_json::json;

use crate::families::{even_degree, odd_degree, verify};
use crate::report::{Record, Report, Status};

/// Caps used when `--cap` is not given.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub cosets: usize,
    pub orbit: usize,
    /// Directions tried when searching for a homology basis.
    pub basis_search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cosets: origami_kz::coset::DEFAULT_CAP,
            orbit: origami_kz::origami::DEFAULT_ORBIT_CAP,
            basis_search: 400,
        }
    }
}

impl Caps {
    /// Coset and orbit caps set to `n`.
    pub fn uniform(n: usize) -> Self {
        Caps { cosets: n, orbit: n, ..Caps::default() }
    }
}

pub fn parse_direction(s: &str) -> anyhow::Result<Direction> {
    let (p, q) = s.split_once(',').with_context(|| format!("expected p,q, got {s:?}"))?;
    let p: i64 = p.trim().parse().with_context(|| format!("bad integer in {s:?}"))?;
    let q: i64 = q.trim().parse().with_context(|| format!("bad integer in {s:?}"))?;
    Ok(Direction::new(p, q)?)
}

pub fn parse_directions(s: &str) -> anyhow::Result<Vec<Direction>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_direction).collect()
}

pub fn parse_matrices(s: &str) -> anyhow::Result<Vec<Mat2>> {
    let mut out = Vec::new();
    for part in s.split(';').filter(|t| !t.trim().is_empty()) {
        let v: Vec<i64> = part
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad matrix entries in {part:?}"))?;
        if v.len() != 4 {
            bail!("a matrix needs 4 entries a,b,c,d, got {part:?}");
        }
        out.push(Mat2::new(v[0], v[1], v[2], v[3])?);
    }
    Ok(out)
}

fn describe(o: &Origami, label: &str) -> Record {
    let mut r = Record::new(label);
    r.degree = Some(o.degree());
    r.stratum = Some(o.stratum());
    r
}

pub fn decompose(o: &Origami, dir: Direction) -> Report {
    let mut r = describe(o, &format!("direction {dir}"));
    r.directions.push(dir);
    match run_decompose(o, dir) {
        Ok(dec) => {
            let spec = twist_multiplicities(&dec);
            let cylinders: Vec<_> = dec
                .cylinders
                .iter()
                .zip(&spec.multiplicities)
                .map(|(c, n)| {
                    json!({
                        "f": c.f,
                        "c": c.c,
                        "rows": c.rows.iter().map(|row| row.iter().map(|s| s + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "circumference": c.circumference,
                        "height": c.height_rows,
                        "twist_multiplicity": n,
                        "holonomy": c.core.pushforward(),
                    })
                })
                .collect();
            let scs: Vec<_> = dec
                .saddle_connections
                .iter()
                .map(|sc| json!({ "holonomy": sc.holonomy, "multiple": sc.multiple, "top_of": sc.top_of, "bottom_of": sc.bottom_of }))
                .collect();
            r.detail = json!({ "cylinders": cylinders, "saddle_connections": scs });
        }
        Err(e) => r = Record::failed(r.label, &e),
    }
    Report::new("decompose", vec![r])
}

pub fn homology(o: &Origami, caps: Caps) -> Report {
    let mut r = describe(o, "homology basis");
    match basis_for(o, caps.basis_search) {
        Ok(b) => {
            r.directions = b.directions.to_vec();
            let nt = b.nontaut();
            r.detail = json!({
                "curves": ["X1", "X2", "Y1", "Y2"],
                "f": b.f,
                "holonomy": b.curves.iter().map(|c| c.pushforward()).collect::<Vec<_>>(),
                "gram": b.gram,
                "nontautological": { "X": nt.x.0, "Y": nt.y.0 },
            });
        }
        Err(e) => r = Record::failed(r.label, &e),
    }
    Report::new("homology", vec![r])
}

/// Twist matrices in `dirs` and the index of the group they generate.
pub fn monodromy_record(o: &Origami, dirs: &[Direction], caps: Caps, label: &str) -> Record {
    let mut r = describe(o, label);
    r.directions = dirs.to_vec();
    let basis = match basis_for(o, caps.basis_search) {
        Ok(b) => b,
        Err(e) => return Record { directions: dirs.to_vec(), ..Record::failed(label, &e) },
    };
    match kz_generators(o, dirs, &basis) {
        Ok(gens) => {
            r.matrices = gens.clone();
            r.detail = json!({ "basis_directions": basis.directions });
            match index_in_sl2(&gens, caps.cosets) {
                Ok(k) => r.index = Some(k),
                Err(e) => {
                    r.status = Some(Status::CapExceeded);
                    r.message = Some(e.to_string());
                }
            }
        }
        Err(e) => r = Record { directions: dirs.to_vec(), ..Record::failed(label, &e) },
    }
    r
}

pub fn monodromy(o: &Origami, dirs: &[Direction], caps: Caps) -> Report {
    Report::new("monodromy", vec![monodromy_record(o, dirs, caps, "multitwists")])
}

pub fn index(gens: &[Mat2], caps: Caps) -> Report {
    let mut r = Record::new("generated subgroup");
    r.matrices = gens.to_vec();
    match coset_table(gens, caps.cosets) {
        Ok(t) => {
            r.index = Some(t.index());
            r.detail =
                json!({ "contains_minus_identity": t.act(0, &[origami_kz::coset::A, origami_kz::coset::A]) == 0 });
        }
        Err(e) => r = Record { matrices: gens.to_vec(), ..Record::failed(r.label, &e) },
    }
    Report::new("index", vec![r])
}

fn l_shapes_in(orbit: &BTreeSet<Origami>, d: usize) -> Vec<(usize, usize)> {
    (2..d)
        .map(|n| (n, d + 1 - n))
        .filter(|&(n, m)| m >= 2 && Origami::l_shape(n, m).is_ok_and(|l| orbit.contains(&l.canonical_form())))
        .collect()
}

pub fn orbit(o: &Origami, caps: Caps) -> Report {
    let mut r = describe(o, "SL2(Z) orbit");
    match o.orbit(caps.orbit) {
        Ok(members) => {
            let set: BTreeSet<Origami> = members.into_iter().collect();
            let ls = l_shapes_in(&set, o.degree());
            let names: Vec<String> = ls.iter().map(|(n, m)| format!("L({n},{m})")).collect();
            r.orbit = (!names.is_empty()).then(|| names.join(" "));
            let strata: BTreeSet<String> = set.iter().map(Origami::stratum).collect();
            r.detail = json!({
                "size": set.len(),
                "primitive": o.is_primitive(),
                "canonical_form": o.canonical_form(),
                "strata": strata,
            });
        }
        Err(e) => r = Record::failed(r.label, &e),
    }
    Report::new("orbit", vec![r])
}

pub fn census(d: usize, caps: Caps) -> anyhow::Result<Report> {
    if !(3..=12).contains(&d) {
        bail!("census needs 3 <= d <= 12, got {d}");
    }
    let c = match run_census(d, caps.orbit) {
        Ok(c) => c,
        Err(e) => return Ok(Report::new("census", vec![Record::failed(format!("degree {d}"), &e)])),
    };
    let records = c
        .orbits
        .iter()
        .enumerate()
        .map(|(i, orb)| {
            let mut r = describe(&orb.representative, &format!("degree {d} orbit {}", i + 1));
            r.orbit = Some(orb.label());
            r.detail = json!({ "size": orb.size, "representative": orb.representative, "primitive_total": c.count });
            if orb.stray != 0 {
                r.status = Some(Status::Error);
                r.message = Some(format!("{} orbit members missing from the enumeration", orb.stray));
            }
            r
        })
        .collect();
    Ok(Report::new("census", records))
}

pub fn verify_families(n_max: usize, caps: Caps) -> anyhow::Result<Report> {
    if n_max == 0 {
        bail!("n_max must be at least 1");
    }
    let records =
        (1..=n_max).flat_map(|n| [verify(&odd_degree(n), caps.cosets), verify(&even_degree(n), caps.cosets)]).collect();
    Ok(Report::new("verify-families", records))
}

/// Canonical directions with both coordinates at most `bound` in size.
pub fn small_directions(bound: i64) -> Vec<Direction> {
    Direction::enumerate()
        .take_while(|d| d.p().abs() + d.q() <= 2 * bound)
        .filter(|d| d.p().abs() <= bound && d.q() <= bound)
        .collect()
}

/// Index of the group generated by the multitwists in `dirs` for each
/// `L(n, m)` with `n, m` odd. Directions acting trivially are dropped from
/// the record. An index other than 3 is flagged.
pub fn conjecture(reps: &[(usize, usize)], dirs: &[Direction], caps: Caps) -> Report {
    let records = reps
        .iter()
        .map(|&(n, m)| {
            let label = format!("L({n},{m})");
            if n < 3 || m < 3 || n % 2 == 0 || m % 2 == 0 {
                let e = Error::InvalidShape { n, m };
                return Record {
                    message: Some(format!("{e}; both sides must be odd and at least 3")),
                    ..Record::failed(label, &e)
                };
            }
            let o = Origami::l_shape(n, m).expect("checked shape");
            let mut r = monodromy_record(&o, dirs, caps, &label);
            if r.matrices.len() == r.directions.len() {
                let kept: Vec<(Direction, Mat2)> = r
                    .directions
                    .iter()
                    .copied()
                    .zip(r.matrices.iter().copied())
                    .filter(|(_, m)| *m != Mat2::IDENTITY)
                    .collect();
                r.detail["directions_tried"] = json!(dirs.len());
                (r.directions, r.matrices) = kept.into_iter().unzip();
            }
            if r.status() == Status::Ok && r.index != Some(3) {
                r.status = Some(Status::Flagged);
                r.message = Some(format!("index {:?} differs from the expected 3", r.index));
            }
            r
        })
        .collect();
    Report::exploratory("conjecture", records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_direction("-1, 2").unwrap().vector(), (-1, 2));
        assert_eq!(parse_direction("1,-2").unwrap().vector(), (-1, 2));
        assert!(parse_direction("2,4").is_err());
        assert!(parse_direction("2").is_err());
        assert_eq!(parse_directions("2,3;0,1").unwrap().len(), 2);
        let m = parse_matrices("3,2,-2,-1; 1,0,-1,1").unwrap();
        assert_eq!(m[0], Mat2::new(3, 2, -2, -1).unwrap());
        assert!(parse_matrices("1,1,1,1").is_err());
        assert!(parse_matrices("1,2,3").is_err());
    }

    #[test]
    fn small_direction_set() {
        let d = small_directions(1);
        let v: Vec<(i64, i64)> = d.iter().map(Direction::vector).collect();
        assert_eq!(v, vec![(1, 0), (0, 1), (-1, 1), (1, 1)]);
        assert!(small_directions(4).iter().all(|d| d.p().abs() <= 4 && d.q() <= 4));
        assert_eq!(small_directions(4).len(), 24);
    }

    #[test]
    fn census_bounds() {
        assert!(census(2, Caps::default()).is_err());
        assert!(census(13, Caps::default()).is_err());
        let r = census(5, Caps::default()).unwrap();
        assert_eq!(r.records.len(), 2);
    }

    #[test]
    fn empty_conjecture() {
        let r = conjecture(&[(3, 3)], &small_directions(4), Caps::default());
        assert_eq!(r.records[0].index, Some(3));
        assert!(r.records[0].matrices.iter().all(|m| *m != Mat2::IDENTITY));
        assert_eq!(r.records[0].directions.len(), r.records[0].matrices.len());
        let r = conjecture(&[], &small_directions(2), Caps::default());
        assert!(r.records.is_empty());
        assert_eq!(r.passed, None);
        let bad = conjecture(&[(2, 3)], &small_directions(2), Caps::default());
        assert_eq!(bad.records[0].status(), Status::Error);
    }

    #[test]
    fn index_and_cap() {
        let r = index(&[Mat2::S, Mat2::T], Caps::default());
        assert_eq!(r.records[0].index, Some(1));
        let r = index(&[Mat2::T], Caps::uniform(50));
        assert_eq!(r.records[0].status(), Status::CapExceeded);
        assert_eq!(r.passed, Some(false));
    }
}
