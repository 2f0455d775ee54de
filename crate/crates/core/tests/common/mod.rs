#![allow(dead_code)]

use rand::Rng;
use wordspot::features::{FeatureVector, FEATURE_DIM};
use wordspot::imaging::BoundingBox;
use wordspot::store::{FeatureDatabase, WordRecord};
use wordspot::weighting::{weights_from_lambdas, WeightVector};

/// A real drawn across many binades, with exact zeros, negatives and
/// subnormals mixed in.
pub fn awkward_real(rng: &mut impl Rng) -> f64 {
    match rng.random_range(0..10) {
        0 => 0.0,
        1 => f64::from_bits(rng.random_range(1..1u64 << 52)),
        2 => rng.random_range(0..1000) as f64,
        _ => {
            let mantissa: f64 = rng.random_range(-1.0..1.0);
            mantissa * 10f64.powi(rng.random_range(-300..300))
        }
    }
}

pub fn random_database(rng: &mut impl Rng, n: usize) -> FeatureDatabase {
    let docs = rng.random_range(1..=4);
    let records = (0..n)
        .map(|i| WordRecord {
            doc_id: format!("doc-{}", i % docs),
            word_id: i / docs,
            bbox: BoundingBox::new(
                rng.random_range(0..5000),
                rng.random_range(0..5000),
                rng.random_range(1..400),
                rng.random_range(1..100),
            ),
            features: FeatureVector::new((0..FEATURE_DIM).map(|_| awkward_real(rng)).collect()).unwrap(),
        })
        .collect();
    FeatureDatabase::new(records).unwrap()
}

pub fn random_weights(rng: &mut impl Rng, dim: usize) -> WeightVector {
    loop {
        let active: Vec<bool> = (0..dim).map(|_| rng.random_bool(0.8)).collect();
        if active.iter().filter(|&&a| a).count() < 2 {
            continue;
        }
        let lambda: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..=1.0)).collect();
        return weights_from_lambdas(&lambda, &active).unwrap();
    }
}

/// Feature `k` of the two fixture records.
pub fn fixture_values(k: usize) -> (f64, f64) {
    (k as f64 / 8.0, 3.0 - k as f64 / 4.0)
}

/// A two-record database typed by hand in short decimal notation.
pub fn two_record_fixture() -> String {
    let join = |f: &dyn Fn(usize) -> String| (0..FEATURE_DIM).map(f).collect::<Vec<_>>().join("\t");
    let short = |v: f64| {
        let s = format!("{v}");
        if s.contains('.') { s } else { format!("{s}.0") }
    };
    let min = join(&|k| {
        let (a, b) = fixture_values(k);
        short(a.min(b))
    });
    let max = join(&|k| {
        let (a, b) = fixture_values(k);
        short(a.max(b))
    });
    let a = join(&|k| short(fixture_values(k).0));
    let b = join(&|k| short(fixture_values(k).1));
    format!(
        "WORDSPOT-DB 1 dim=93 n=2\nMIN\t{min}\nMAX\t{max}\npage_0001\t0\t10\t20\t30\t40\t{a}\npage_0001\t1\t50\t20\t12\t40\t{b}\n"
    )
}

fn replace_line(text: &str, line: usize, f: impl Fn(&str) -> String) -> String {
    text.lines()
        .enumerate()
        .map(|(i, l)| if i + 1 == line { f(l) } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// `(name, text, line the decoder must report)` for broken databases.
pub fn malformed_db_fixtures() -> Vec<(&'static str, String, usize)> {
    let good = two_record_fixture();
    let lines: Vec<&str> = good.lines().collect();
    vec![
        ("empty file", String::new(), 1),
        ("wrong magic", replace_line(&good, 1, |l| l.replace("WORDSPOT-DB", "WORDSPOT-XX")), 1),
        ("future version", replace_line(&good, 1, |l| l.replace("DB 1", "DB 2")), 1),
        ("wrong dim", replace_line(&good, 1, |l| l.replace("dim=93", "dim=92")), 1),
        ("count too high", replace_line(&good, 1, |l| l.replace("n=2", "n=3")), 6),
        ("count too low", replace_line(&good, 1, |l| l.replace("n=2", "n=1")), 6),
        ("stale minimum", replace_line(&good, 2, |l| l.replacen("\t0.0\t", "\t-1.0\t", 1)), 2),
        ("short max line", replace_line(&good, 3, |l| l.rsplit_once('\t').unwrap().0.to_string()), 3),
        ("missing stats", format!("{}\n", lines[0]), 2),
        ("non-numeric feature", replace_line(&good, 4, |l| l.replacen("\t0.125\t", "\tabc\t", 1)), 4),
        ("nan feature", replace_line(&good, 5, |l| l.replacen("\t3.0\t", "\tNaN\t", 1)), 5),
        ("extra field", replace_line(&good, 5, |l| format!("{l}\t1.0")), 5),
        ("negative box", replace_line(&good, 4, |l| l.replacen("\t10\t", "\t-10\t", 1)), 4),
        ("zero-width box", replace_line(&good, 5, |l| l.replacen("\t12\t", "\t0\t", 1)), 5),
        ("duplicate word", replace_line(&good, 5, |l| l.replacen("\t1\t", "\t0\t", 1)), 5),
        ("empty doc id", replace_line(&good, 4, |l| l.replacen("page_0001", "", 1)), 4),
    ]
}

pub fn weights_fixture() -> String {
    let mut out = String::from("WORDSPOT-W 1 dim=4\n");
    out.push_str("0\t1\t0.5\t0.25\n");
    out.push_str("1\t1\t0.5\t0.25\n");
    out.push_str("2\t0\t0.0\t0.0\n");
    out.push_str("3\t1\t0.25\t0.5\n");
    out
}

pub fn malformed_weight_fixtures() -> Vec<(&'static str, String, usize)> {
    let good = weights_fixture();
    vec![
        ("wrong magic", replace_line(&good, 1, |_| "WORDSPOT-DB 1 dim=4".into()), 1),
        ("missing dim", replace_line(&good, 1, |_| "WORDSPOT-W 1".into()), 1),
        ("dim too large", replace_line(&good, 1, |l| l.replace("dim=4", "dim=5")), 6),
        ("index out of order", replace_line(&good, 3, |l| l.replacen('1', "7", 1)), 3),
        ("bad active flag", replace_line(&good, 2, |_| "0\tyes\t0.5\t0.25".into()), 2),
        ("inactive with weight", replace_line(&good, 4, |_| "2\t0\t0.0\t0.1".into()), 4),
        ("lambda above one", replace_line(&good, 5, |_| "3\t1\t1.5\t0.5".into()), 5),
        ("negative weight", replace_line(&good, 2, |_| "0\t1\t0.5\t-0.25".into()), 2),
        ("missing column", replace_line(&good, 3, |_| "1\t1\t0.5".into()), 3),
        ("sum not one", replace_line(&good, 5, |_| "3\t1\t0.25\t0.6".into()), 5),
    ]
}
