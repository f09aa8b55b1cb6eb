//! Verification suites. Each prints one line per check and fails if any
//! check does.

use bmenet::io::face_report_value;
use bmenet::metric::{metric_from_splits, WeightedSplitSystem};
use bmenet::optimize::{minimize_with, Options};
use bmenet::polytope::{
    bme51_facets, bme_tree_facets, check_degree_equalities, refinement_face_on, verify_nesting, FaceReport, Family,
    Vertices,
};
use bmenet::random::{random_circular_system, random_network, random_weights};
use bmenet::rational::{self, int};
use bmenet::vector::pair_count;
use bmenet::Network;
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Degree equalities and dimension of every vertex set.
    Equalities,
    /// The 62 facets of BME(5,1).
    Facets51,
    /// Known facet families of the tree polytopes.
    Table1,
    /// Twist decomposition and barycenter identities.
    Nesting,
    /// Refinement faces against minimization, on random split systems.
    Faces,
    /// Recovery of random weighted networks by minimization.
    Recovery,
}

struct Tally {
    failed: usize,
    total: usize,
}

impl Tally {
    fn record(&mut self, ok: bool, line: String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
        }
        println!("{line}");
    }

    fn finish(self) -> Result<(), Failure> {
        if self.failed == 0 {
            eprintln!("{} checks passed", self.total);
            Ok(())
        } else {
            Err(Failure::Check(format!("{} of {} checks failed", self.failed, self.total)))
        }
    }
}

fn face_line(r: &FaceReport, ok: bool) -> String {
    let mut v = face_report_value(r);
    v["ok"] = json!(ok);
    v.to_string()
}

fn double_factorial(m: i64) -> usize {
    (1..=m.max(1)).rev().step_by(2).product::<i64>() as usize
}

pub fn run(suite: Suite, n: Option<usize>, seed: u64, trials: Option<usize>, opts: Options) -> Result<(), Failure> {
    let mut t = Tally { failed: 0, total: 0 };
    match suite {
        Suite::Equalities => {
            println!("n,k,vertices,degree_sums,dimension,expected");
            for n in 3..=n.unwrap_or(7) {
                for k in 0..=n - 3 {
                    let v = Vertices::new(n, k)?;
                    let degrees =
                        v.vectors().iter().all(|x| check_degree_equalities(x, n, k) && x.sum() == int((n as i64) << k));
                    let dim = v.dimension()?;
                    let want = pair_count(n) - n;
                    t.record(degrees && dim == want, format!("{n},{k},{},{degrees},{dim},{want}", v.networks.len()));
                }
            }
        }
        Suite::Facets51 => {
            for r in bme51_facets()? {
                let tight = match r.family {
                    Family::Split | Family::Lower => 9,
                    Family::Excluded => 8,
                    _ => 5,
                };
                let ok = r.valid && r.tight_count == tight && r.tight_dim == Some(4);
                t.record(ok, face_line(&r, ok));
            }
        }
        Suite::Table1 => {
            let ns = n.map_or(vec![5, 6], |n| vec![n]);
            for n in ns {
                let n_i = n as i64;
                for r in bme_tree_facets(n)? {
                    let want = match r.family {
                        Family::Caterpillar => (1..=n - 2).product(),
                        Family::Cherry => 2 * double_factorial(2 * n_i - 7),
                        _ => {
                            let pairs = r.functional.coeffs.entries().iter().filter(|c| **c == int(1)).count();
                            let m = (2..n).find(|m| m * (m - 1) / 2 == pairs).unwrap_or(0) as i64;
                            double_factorial(2 * m - 3) * double_factorial(2 * (n_i - m) - 3)
                        }
                    };
                    let ok = r.valid && r.tight_count == want;
                    t.record(ok, face_line(&r, ok));
                }
            }
        }
        Suite::Nesting => {
            println!("n,k,ok");
            for n in 4..=n.unwrap_or(6) {
                for k in 1..=n - 3 {
                    let ok = verify_nesting(n, k)?;
                    t.record(ok, format!("{n},{k},{ok}"));
                }
            }
        }
        Suite::Faces => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            println!("n,k,system,bound,tight,argmin,refining,ok");
            for n in 4..=n.unwrap_or(6) {
                let vertices = (0..=n - 3).map(|k| Vertices::new(n, k)).collect::<Result<Vec<_>, _>>()?;
                for _ in 0..trials.unwrap_or(10) {
                    let s = random_circular_system(&mut rng, n, 0.35)?;
                    let d = metric_from_splits(&WeightedSplitSystem::unit(&s));
                    for (k, v) in vertices.iter().enumerate().take(s.bridges().len() + 1) {
                        let face = refinement_face_on(v, &s)?;
                        let opt = minimize_with(&d, n, k, opts)?;
                        let refining: Vec<&Network> =
                            v.networks.iter().filter(|net| net.refines(&s).unwrap_or(false)).collect();
                        let ok = face.valid
                            && face.tight == opt.argmin
                            && face.tight.iter().eq(refining.iter().copied())
                            && opt.minimum == face.functional.bound;
                        t.record(
                            ok,
                            format!(
                                "{n},{k},\"{}\",{},{},{},{},{ok}",
                                face.label,
                                rational::format(&face.functional.bound),
                                face.tight_count,
                                opt.argmin.len(),
                                refining.len()
                            ),
                        );
                    }
                }
            }
        }
        Suite::Recovery => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            println!("n,k,network,minimum,expected,unique,ok");
            for n in 3..=n.unwrap_or(7) {
                for k in 0..=n - 3 {
                    for _ in 0..trials.unwrap_or(25) {
                        let net = random_network(&mut rng, n, k)?;
                        let ws = random_weights(&mut rng, &net.sigma_splits())?;
                        let r = minimize_with(&metric_from_splits(&ws), n, k, opts)?;
                        let want = ws.total_weight() * int(1 << (k + 1));
                        let unique = r.argmin == [net.clone()];
                        let ok = unique && r.minimum == want;
                        t.record(
                            ok,
                            format!(
                                "{n},{k},\"{net}\",{},{},{unique},{ok}",
                                rational::format(&r.minimum),
                                rational::format(&want)
                            ),
                        );
                    }
                }
            }
        }
    }
    t.finish()
}
