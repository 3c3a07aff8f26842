//! Aggregate checks behind `verify`.

use fractalcube::dimension::{box_count, box_count_series, estimate_dimension, mixture_dimension};
use fractalcube::hyperspace::{holder_check, phi, HolderOptions};
use fractalcube::metric::{hausdorff_distance, min_distance, verify_sandwich};
use fractalcube::topology::{
    complement_components, components, dendrite_conditions, opposite_faces_congruent, wraps_torus,
    Adjacency,
};
use fractalcube::{BinaryWord, CubeSymmetry, FractalCube, Result, VoxelSet};
use num_rational::Ratio;
use serde_json::Value;

use crate::report::{num, object};

pub const CHECKS: [&str; 10] = [
    "digits",
    "distances",
    "connectivity",
    "sandwich",
    "box_counts",
    "dimension",
    "dendrite",
    "torus",
    "holder",
    "symmetry",
];

pub struct Outcome {
    pub passed: bool,
    pub detail: Value,
}

fn outcome(passed: bool, detail: Value) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn words_up_to(k: usize) -> impl Iterator<Item = BinaryWord> {
    (1..=k).flat_map(BinaryWord::all_of_length)
}

pub fn run_check(name: &str, cube: &FractalCube, kmax: usize, tol: f64) -> Result<Outcome> {
    match name {
        "digits" => digits(cube),
        "distances" => distances(cube),
        "connectivity" => connectivity(cube, kmax),
        "sandwich" => sandwich(cube, kmax, tol),
        "box_counts" => box_counts(cube, kmax),
        "dimension" => dimension(cube, kmax),
        "dendrite" => dendrite(cube),
        "torus" => torus(cube, kmax.min(3)),
        "holder" => holder(cube, kmax.min(4), tol),
        "symmetry" => symmetry(cube, kmax.min(3)),
        _ => unreachable!("check names are validated by the parser"),
    }
}

fn digits(cube: &FractalCube) -> Result<Outcome> {
    let (a, b, u) = (
        cube.letter(0).len(),
        cube.letter(1).len(),
        cube.union_digits().len(),
    );
    outcome(
        cube.is_disjoint() && u == a + b,
        object([
            ("zero", a.into()),
            ("one", b.into()),
            ("union", u.into()),
            ("disjoint", cube.is_disjoint().into()),
        ]),
    )
}

/// Distances between the first-level digit cubes, in cell units.
fn distances(cube: &FractalCube) -> Result<Outcome> {
    let a = VoxelSet::from_digit_set(cube.letter(0));
    let b = VoxelSet::from_digit_set(cube.letter(1));
    let n = cube.base() as f64;
    let d = min_distance(&a, &b)?;
    let h = hausdorff_distance(&a, &b, 1e-3 / n)?.scaled(n);
    let expected = 2.0 * 2f64.sqrt();
    outcome(
        d.squared_cells() == 1
            && h.contains_hausdorff(expected)
            && h.width() <= 1e-3 * (1.0 + 1e-9),
        object([
            ("d_min", num(d.in_cells())),
            ("dH_lo", num(h.d_hausdorff_lo)),
            ("dH_hi", num(h.d_hausdorff_hi)),
        ]),
    )
}

fn connectivity(cube: &FractalCube, kmax: usize) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    for w in words_up_to(kmax) {
        let v = cube.iterate(&w)?;
        count += 1;
        if components(&v, Adjacency::Plain).component_count() != 1 || !opposite_faces_congruent(&v)
        {
            failures.push(Value::from(w.to_string()));
        }
    }
    outcome(
        failures.is_empty(),
        object([
            ("words", count.into()),
            ("failures", Value::Array(failures)),
        ]),
    )
}

fn sandwich(cube: &FractalCube, kmax: usize, tol: f64) -> Result<Outcome> {
    let mut pairs = 0;
    let mut failures = Vec::new();
    let mut sqrt5 = true;
    for k in 1..=kmax {
        let words = BinaryWord::all_of_length(k);
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let r = verify_sandwich(cube, a, b, tol)?;
                pairs += 1;
                sqrt5 &= r.upper_sqrt5_ok;
                if !r.passed() {
                    failures.push(Value::from(format!("{a},{b}")));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        object([
            ("pairs", pairs.into()),
            ("failures", Value::Array(failures)),
            ("upper_sqrt5_all", sqrt5.into()),
        ]),
    )
}

fn box_counts(cube: &FractalCube, kmax: usize) -> Result<Outcome> {
    let mut words = 0;
    let mut all_generated = true;
    for w in words_up_to(kmax) {
        // a generated count that disagrees with the formula is an error
        all_generated &= box_count(cube, &w)?.generated;
        words += 1;
    }
    outcome(
        all_generated,
        object([
            ("words", words.into()),
            ("all_generated", all_generated.into()),
        ]),
    )
}

fn dimension(cube: &FractalCube, kmax: usize) -> Result<Outcome> {
    let k = kmax.max(2);
    let mut rows = Vec::new();
    let mut passed = true;
    for (spec, lambda) in [
        ("0", Ratio::new(1, 1)),
        ("1", Ratio::new(0, 1)),
        ("01", Ratio::new(1, 2)),
    ] {
        let period: BinaryWord = spec.parse()?;
        let depths: Vec<usize> = (1..=k).map(|j| j * period.len()).collect();
        let word = BinaryWord::new(
            period
                .letters()
                .iter()
                .copied()
                .cycle()
                .take(k * period.len())
                .collect(),
        )?;
        let fit = estimate_dimension(&box_count_series(cube, &word, depths)?)?;
        let expected = mixture_dimension(cube, lambda)?;
        passed &= (fit.slope - expected).abs() <= 1e-12;
        rows.push(object([
            ("period", spec.into()),
            ("slope", num(fit.slope)),
            ("expected", num(expected)),
        ]));
    }
    outcome(passed, Value::Array(rows))
}

/// The zero digit set satisfies the dendrite conditions; the one digit set
/// does not.
fn dendrite(cube: &FractalCube) -> Result<Outcome> {
    let zero = dendrite_conditions(cube.letter(0));
    let one = dendrite_conditions(cube.letter(1));
    outcome(
        zero.all_hold() && !one.intersection_graph_is_tree && !one.avoids_edges,
        object([
            ("zero_all_hold", zero.all_hold().into()),
            ("zero_max_degree", zero.max_graph_degree.into()),
            ("one_tree", one.intersection_graph_is_tree.into()),
            ("one_avoids_edges", one.avoids_edges.into()),
        ]),
    )
}

fn torus(cube: &FractalCube, kmax: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for k in 1..=kmax as u32 {
        let v = cube.full_iterate(k)?;
        let comp = complement_components(&v, Adjacency::Torus, cube.cell_budget())?;
        let labeling = components(&v, Adjacency::Torus);
        let wraps = wraps_torus(&labeling, &v)?;
        let all_wrap = wraps.iter().all(|w| w.all_axes());
        passed &= comp.component_count() == 1 && labeling.component_count() == 1 << k && all_wrap;
        rows.push(object([
            ("depth", k.into()),
            ("complement_components", comp.component_count().into()),
            ("components", labeling.component_count().into()),
            ("all_wrap", all_wrap.into()),
        ]));
    }
    outcome(passed, Value::Array(rows))
}

fn holder(cube: &FractalCube, k: usize, tol: f64) -> Result<Outcome> {
    let r = holder_check(
        cube,
        k,
        HolderOptions {
            tol,
            depth_limit: 4,
        },
    )?;
    let mut conjugacy = true;
    for w in (0..=8).flat_map(BinaryWord::all_of_length) {
        let x = phi(&w).as_ratio();
        let three = Ratio::from_integer(3u32.into());
        let two = Ratio::from_integer(2u32.into());
        conjugacy &= phi(&w.prepend(0)?).as_ratio() == &x / &three;
        conjugacy &= phi(&w.prepend(1)?).as_ratio() == (&x + &two) / &three;
    }
    outcome(
        r.passed() && conjugacy,
        object([
            ("pairs", r.pairs.len().into()),
            ("c_forward", num(r.c_forward)),
            ("c_backward", num(r.c_backward)),
            ("conjugacy", conjugacy.into()),
        ]),
    )
}

fn symmetry(cube: &FractalCube, kmax: usize) -> Result<Outcome> {
    let syms = CubeSymmetry::all();
    let digits_ok = syms.iter().all(|s| {
        &cube.letter(0).transformed(s) == cube.letter(0)
            && &cube.letter(1).transformed(s) == cube.letter(1)
    });
    let mut iterates_ok = true;
    for w in words_up_to(kmax) {
        let v = cube.iterate(&w)?;
        iterates_ok &= syms.iter().all(|s| v.transformed(s) == v);
    }
    outcome(
        digits_ok && iterates_ok,
        object([
            ("digit_sets", digits_ok.into()),
            ("iterates", iterates_ok.into()),
        ]),
    )
}
