//! Test arrangement construction.
//!
//! Dependent fixtures are built directly: three coplanar directions are
//! chosen first and each is realised as the intersection line of two
//! hyperplanes, so the resulting good 6-partition is dependent by construction.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactnum::{cross, int, Rational};
use crate::partitions::{is_dependent, GoodPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Dependent,
    Moment,
    Random,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dependent" => Ok(Kind::Dependent),
            "moment" => Ok(Kind::Moment),
            "random" => Ok(Kind::Random),
            other => Err(Error::Domain(format!("unknown generator kind {other:?}"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Dependent => "dependent",
            Kind::Moment => "moment",
            Kind::Random => "random",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: usize,
    pub kind: Kind,
    pub seed: u64,
    /// Integer entries are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub max_retries: usize,
}

impl GeneratorConfig {
    pub fn new(kind: Kind, n: usize, k: usize, seed: u64) -> Self {
        Self { n, k, kind, seed, bound: 10, max_retries: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub arrangement: Arrangement,
    /// The dependent partition planted by the `dependent` kind.
    pub certificate: Option<GoodPartition>,
}

impl Generated {
    /// Arrangement JSON, plus `"certificate"` when one exists.
    pub fn to_json(&self) -> Value {
        let mut doc = self.arrangement.to_json();
        if let Some(cert) = &self.certificate {
            doc["certificate"] = serde_json::to_value(cert.to_doc()).expect("partition serializes");
        }
        doc
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<Generated> {
    if cfg.k < 2 || cfg.n <= cfg.k {
        return Err(Error::Domain(format!("need n > k >= 2 (n = {}, k = {})", cfg.n, cfg.k)));
    }
    if cfg.bound < 1 {
        return Err(Error::Domain("coefficient bound must be positive".into()));
    }
    if cfg.kind == Kind::Dependent && (cfg.k != 3 || cfg.n < 6) {
        return Err(Error::Domain(format!(
            "dependent arrangements need k = 3 and n >= 6 (n = {}, k = {})",
            cfg.n, cfg.k
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.kind {
        Kind::Moment => {
            let arrangement = crate::arrangement::fixture_moment(cfg.n, cfg.k);
            Ok(Generated { arrangement, certificate: None })
        }
        Kind::Random => {
            for _ in 0..cfg.max_retries {
                let normals = (0..cfg.n).map(|_| random_vector(&mut rng, cfg.k, cfg.bound)).collect();
                if let Ok(a) = Arrangement::new(cfg.k, normals) {
                    if a.is_generic() {
                        return Ok(Generated { arrangement: a, certificate: None });
                    }
                }
            }
            Err(retries_exhausted(cfg))
        }
        Kind::Dependent => {
            for _ in 0..cfg.max_retries {
                if let Some(found) = try_dependent(&mut rng, cfg)? {
                    return Ok(found);
                }
            }
            Err(retries_exhausted(cfg))
        }
    }
}

fn retries_exhausted(cfg: &GeneratorConfig) -> Error {
    Error::Generation(format!("no generic {} arrangement after {} attempts", cfg.kind, cfg.max_retries))
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| int(rng.random_range(-bound..=bound))).collect()
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides an integer vector by the gcd of its entries.
fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let g = v.iter().fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x.numer()));
    if g.is_zero() {
        return v;
    }
    let g = Rational::from_integer(g.abs());
    v.into_iter().map(|x| x / &g).collect()
}

/// Two independent normals whose intersection line has direction `d`.
fn normals_through(rng: &mut ChaCha8Rng, d: &[Rational], bound: i64) -> Option<[Vec<Rational>; 2]> {
    let a = primitive(cross(d, &random_vector(rng, 3, bound)).ok()?);
    let b = primitive(cross(d, &random_vector(rng, 3, bound)).ok()?);
    let line = cross(&a, &b).ok()?;
    (!is_zero_vec(&a) && !is_zero_vec(&b) && !is_zero_vec(&line)).then_some([a, b])
}

fn try_dependent(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Option<Generated>> {
    let b = cfg.bound;
    let u = random_vector(rng, 3, b);
    let v = random_vector(rng, 3, b);
    if is_zero_vec(&cross(&u, &v)?) {
        return Ok(None);
    }
    let (x, y) = (int(nonzero(rng, b)), int(nonzero(rng, b)));
    let w: Vec<Rational> = u.iter().zip(&v).map(|(p, q)| &x * p + &y * q).collect();
    let mut planted = Vec::with_capacity(6);
    for d in [&u, &v, &w] {
        match normals_through(rng, d, b) {
            Some(pair) => planted.extend(pair),
            None => return Ok(None),
        }
    }
    let mut slots: Vec<usize> = (0..cfg.n).collect();
    slots.shuffle(rng);
    let mut normals = vec![Vec::new(); cfg.n];
    for (normal, &slot) in planted.into_iter().zip(&slots) {
        normals[slot] = normal;
    }
    for &slot in &slots[6..] {
        normals[slot] = random_vector(rng, 3, b);
    }
    let Ok(arrangement) = Arrangement::new(3, normals) else {
        return Ok(None);
    };
    if !arrangement.is_generic() {
        return Ok(None);
    }
    let certificate = GoodPartition::from_pairs(
        [&[slots[0], slots[1]], &[slots[2], slots[3]], &[slots[4], slots[5]]],
        Vec::new(),
    )?;
    if !is_dependent(&arrangement, &certificate)? {
        return Err(Error::Generation("planted partition is not dependent".into()));
    }
    Ok(Some(Generated { arrangement, certificate: Some(certificate) }))
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let v = rng.random_range(1..=bound);
    if rng.random_bool(0.5) {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::fixture_moment;
    use crate::partitions::find_dependent;

    #[test]
    fn dependent_kind_plants_certificate() {
        for seed in 0..10 {
            let g = generate(&GeneratorConfig::new(Kind::Dependent, 6, 3, seed)).unwrap();
            let cert = g.certificate.clone().unwrap();
            assert!(g.arrangement.is_generic());
            assert!(find_dependent(&g.arrangement).unwrap().contains(&cert), "seed {seed}");
        }
    }

    #[test]
    fn dependent_kind_with_extra_hyperplanes() {
        let g = generate(&GeneratorConfig::new(Kind::Dependent, 8, 3, 7)).unwrap();
        assert_eq!(g.arrangement.n(), 8);
        assert!(is_dependent(&g.arrangement, g.certificate.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn moment_kind_is_the_moment_fixture() {
        let g = generate(&GeneratorConfig::new(Kind::Moment, 6, 3, 99)).unwrap();
        assert_eq!(g.arrangement, fixture_moment(6, 3));
        assert!(g.certificate.is_none());
    }

    #[test]
    fn random_kind_is_generic_and_seeded() {
        let cfg = GeneratorConfig::new(Kind::Random, 7, 4, 3);
        let a = generate(&cfg).unwrap();
        assert!(a.arrangement.is_generic());
        assert_eq!(a, generate(&cfg).unwrap());
        assert_ne!(a, generate(&GeneratorConfig { seed: 4, ..cfg }).unwrap());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(generate(&GeneratorConfig::new(Kind::Dependent, 6, 2, 0)), Err(Error::Domain(_))));
        assert!(matches!(generate(&GeneratorConfig::new(Kind::Random, 3, 3, 0)), Err(Error::Domain(_))));
        let tight =
            GeneratorConfig { bound: 1, max_retries: 1, ..GeneratorConfig::new(Kind::Random, 8, 3, 0) };
        // with entries in {-1, 0, 1} eight generic normals in 3-space almost never occur in one try
        assert!(matches!(generate(&tight), Err(Error::Generation(_))));
    }

    #[test]
    fn json_carries_certificate() {
        let g = generate(&GeneratorConfig::new(Kind::Dependent, 6, 3, 1)).unwrap();
        let doc = g.to_json();
        assert_eq!(doc["certificate"]["s"], 2);
        let back = crate::arrangement::arrangement_from_value(&doc).unwrap();
        assert_eq!(back, g.arrangement);
    }
}
