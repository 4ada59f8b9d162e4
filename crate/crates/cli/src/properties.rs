//! Seeded randomized checks of the structural invariants.

use origami_kz::census::h2_origamis;
use origami_kz::coset::coset_table;
use origami_kz::geometry::{decompose, separatrix_diagram};
use origami_kz::homology::{basis_for, intersection_number};
use origami_kz::monodromy::{dehn_twist_action, twist_multiplicities, Multitwist};
use origami_kz::{matrix_to_word, word_to_matrix, Direction, Generator, Mat2, Origami, Permutation, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{Record, Report, Status};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Random relabellings of `H(2)` origamis of degree `3..=max_degree`.
struct Sampler {
    pool: Vec<Vec<Origami>>,
}

impl Sampler {
    fn new(max_degree: usize) -> Self {
        let pool = (3..=max_degree).map(|d| h2_origamis(d).expect("census enumeration")).collect();
        Sampler { pool }
    }

    fn origami(&self, rng: &mut ChaCha8Rng) -> Origami {
        let bucket = self.pool.choose(rng).expect("nonempty pool");
        let o = bucket.choose(rng).expect("nonempty degree");
        let mut images: Vec<usize> = (0..o.degree()).collect();
        images.shuffle(rng);
        o.relabel(&Permutation::from_images(images).expect("shuffled identity"))
    }

    fn primitive(&self, rng: &mut ChaCha8Rng) -> Origami {
        loop {
            let o = self.origami(rng);
            if o.is_primitive() {
                return o;
            }
        }
    }
}

fn direction(rng: &mut ChaCha8Rng, bound: i64) -> Direction {
    loop {
        if let Ok(d) = Direction::new(rng.gen_range(-bound..=bound), rng.gen_range(0..=bound)) {
            return d;
        }
    }
}

fn word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| Generator::ALL[rng.gen_range(0..4)]).collect())
}

fn conjugate(m: &Mat2, g: &Word) -> Mat2 {
    let letters = [g.0.clone(), matrix_to_word(m).0, g.inverse().0].concat();
    word_to_matrix(&Word(letters))
}

type Outcome = Result<(), String>;

fn skew_symmetry(s: &Sampler, rng: &mut ChaCha8Rng) -> Outcome {
    let o = s.origami(rng);
    let (a, b) = (direction(rng, 4), direction(rng, 4));
    let da = decompose(&o, a).map_err(|e| e.to_string())?;
    let db = decompose(&o, b).map_err(|e| e.to_string())?;
    for x in &da.cylinders {
        for y in &db.cylinders {
            let xy = intersection_number(&o, &x.core, &y.core).map_err(|e| e.to_string())?;
            let yx = intersection_number(&o, &y.core, &x.core).map_err(|e| e.to_string())?;
            if xy != -yx {
                return Err(format!("{o}: Omega = {xy} but reversed {yx} for {a}, {b}"));
            }
        }
    }
    Ok(())
}

fn parabolic_twists(s: &Sampler, rng: &mut ChaCha8Rng) -> Outcome {
    let o = s.primitive(rng);
    let d = direction(rng, 5);
    let basis = basis_for(&o, 400).map_err(|e| format!("{o}: {e}"))?;
    let m = dehn_twist_action(&o, d, &basis).map_err(|e| format!("{o} {d}: {e}"))?;
    if m.det() != 1 || m.trace() != 2 {
        return Err(format!("{o} {d}: det {} trace {}", m.det(), m.trace()));
    }
    Ok(())
}

fn kernel_preserved(s: &Sampler, rng: &mut ChaCha8Rng) -> Outcome {
    let o = s.primitive(rng);
    let d = direction(rng, 5);
    let basis = basis_for(&o, 400).map_err(|e| format!("{o}: {e}"))?;
    let dec = decompose(&o, d).map_err(|e| e.to_string())?;
    let tw = Multitwist::new(&twist_multiplicities(&dec), &basis).map_err(|e| e.to_string())?;
    let nt = basis.nontaut();
    for z in [nt.x, nt.y] {
        let image = tw.apply(&basis, &z);
        if basis.pushforward(&z) != (0, 0) || basis.pushforward(&image) != (0, 0) {
            return Err(format!("{o} {d}: {z:?} -> {image:?} leaves the kernel"));
        }
    }
    Ok(())
}

fn round_trip(_: &Sampler, rng: &mut ChaCha8Rng) -> Outcome {
    let m = word_to_matrix(&word(rng, 24));
    let back = word_to_matrix(&matrix_to_word(&m));
    if back != m {
        return Err(format!("{m:?} came back as {back:?}"));
    }
    Ok(())
}

fn transitive_tables(_: &Sampler, rng: &mut ChaCha8Rng) -> Outcome {
    let pairs = [[(2, 1, -1, 0), (1, 0, -1, 1)], [(3, 2, -2, -1), (1, 0, -1, 1)], [(1, 2, 0, 1), (1, 0, 2, 1)]];
    let pair = pairs.choose(rng).expect("nonempty");
    let g = word(rng, 10);
    let mut gens: Vec<Mat2> =
        pair.iter().map(|&(a, b, c, d)| conjugate(&Mat2::new(a, b, c, d).expect("det 1"), &g)).collect();
    if rng.gen_bool(0.5) {
        gens.push(word_to_matrix(&word(rng, 8)));
    }
    match coset_table(&gens, 2_000) {
        Ok(t) if t.verify() && t.is_transitive() => Ok(()),
        Ok(_) => Err(format!("{gens:?}: table is not a transitive action")),
        Err(origami_kz::Error::IndexExceedsCap { .. }) => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

fn algorithms_agree(s: &Sampler, rng: &mut ChaCha8Rng) -> Outcome {
    let o = s.origami(rng);
    let d = direction(rng, 7);
    let dec = decompose(&o, d).map_err(|e| format!("{o} {d}: {e}"))?;
    let diag = separatrix_diagram(&o, d).map_err(|e| format!("{o} {d}: {e}"))?;
    let mut lengths: Vec<usize> = diag.cylinder_lengths().into_iter().map(|l| l as usize).collect();
    lengths.sort_unstable();
    if dec.f_multiset() != lengths || dec.saddle_connections.len() != 3 || diag.saddle_connections.len() != 3 {
        return Err(format!(
            "{o} {d}: shear {:?} with {} connections, tracing {lengths:?} with {}",
            dec.f_multiset(),
            dec.saddle_connections.len(),
            diag.saddle_connections.len()
        ));
    }
    Ok(())
}

type Property = fn(&Sampler, &mut ChaCha8Rng) -> Outcome;

pub const NAMES: [&str; 6] = [
    "intersection form is skew-symmetric",
    "multitwists have det 1 and trace 2",
    "multitwists preserve the holonomy kernel",
    "word/matrix round trip",
    "closed coset tables are transitive actions",
    "shear reduction and separatrix tracing agree",
];

const PROPERTIES: [Property; 6] =
    [skew_symmetry, parabolic_twists, kernel_preserved, round_trip, transitive_tables, algorithms_agree];

/// Runs each property `cases` times on origamis of degree at most `max_degree`.
pub fn run(seed: u64, cases: usize, max_degree: usize) -> Report {
    let sampler = Sampler::new(max_degree.max(3));
    let mut records = Vec::new();
    for (k, (name, prop)) in NAMES.iter().zip(PROPERTIES).enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let mut failures = Vec::new();
        for _ in 0..cases {
            if let Err(msg) = prop(&sampler, &mut rng) {
                failures.push(msg);
            }
        }
        let mut r = Record::new(*name);
        r.detail = json!({ "seed": seed, "cases": cases, "failures": failures.len() });
        if let Some(first) = failures.first() {
            r.status = Some(Status::Mismatch);
            r.message = Some(first.clone());
        }
        records.push(r);
    }
    Report::new("properties", records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let a = run(7, 10, 7);
        assert_eq!(a.passed, Some(true), "{}", a.to_text());
        let b = run(7, 10, 7);
        assert_eq!(a.to_json(), b.to_json());
    }
}
