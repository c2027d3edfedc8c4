//! Parsers for the small value languages the flags use: group factor lists,
//! base sequences, distribution specifications, and orbit-seed assignments.

use num::BigRational;
use rand_chacha::ChaCha8Rng;

use formeq::dist::Dist;
use formeq::group::{FiniteAbelianGroup, GroupElement, Subgroup};
use formeq::solenoid::SolenoidBase;

pub fn parse_group(spec: &str) -> Result<FiniteAbelianGroup, String> {
    let factors = parse_u64_list(spec)?;
    FiniteAbelianGroup::new(factors).map_err(|e| e.to_string())
}

pub fn parse_base(spec: &str) -> Result<SolenoidBase, String> {
    let entries = parse_u64_list(spec)?;
    SolenoidBase::new(entries).map_err(|e| e.to_string())
}

fn parse_u64_list(spec: &str) -> Result<Vec<u64>, String> {
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{part}` is not an unsigned integer"))
        })
        .collect()
}

fn parse_coords(spec: &str) -> Result<Vec<i64>, String> {
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{part}` is not an integer coordinate"))
        })
        .collect()
}

fn parse_element(group: &FiniteAbelianGroup, spec: &str) -> Result<GroupElement, String> {
    let coords = parse_coords(spec)?;
    group.element(&coords).map_err(|e| e.to_string())
}

/// Distribution specification language:
/// `uniform`, `haar:K=<gens>`, `point:x=<coords>`, `twopoint:a=<coords>`,
/// `random:seed=<u64>`. Generators are `;`-separated coordinate tuples,
/// coordinates are `,`-separated integers.
pub fn parse_dist(group: &FiniteAbelianGroup, spec: &str) -> Result<Dist, String> {
    if spec == "uniform" {
        return Ok(Dist::uniform(group));
    }
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("`{spec}` is not a distribution specification"))?;
    match kind {
        "haar" => {
            let gens_spec = rest
                .strip_prefix("K=")
                .ok_or_else(|| "haar needs `K=<generators>`".to_string())?;
            let gens = gens_spec
                .split(';')
                .map(|g| parse_element(group, g))
                .collect::<Result<Vec<_>, _>>()?;
            let subgroup = Subgroup::generate(group, &gens).map_err(|e| e.to_string())?;
            Ok(Dist::haar(&subgroup))
        }
        "point" => {
            let x = rest
                .strip_prefix("x=")
                .ok_or_else(|| "point needs `x=<coords>`".to_string())?;
            Ok(Dist::point(group, &parse_element(group, x)?))
        }
        "twopoint" => {
            let a = rest
                .strip_prefix("a=")
                .ok_or_else(|| "twopoint needs `a=<coords>`".to_string())?;
            let x = parse_element(group, a)?;
            let half = BigRational::new(1.into(), 2.into());
            Dist::mix(
                &half,
                &Dist::point(group, &x),
                &Dist::point(group, &group.neg(&x)),
            )
            .map_err(|e| e.to_string())
        }
        "random" => {
            let seed: u64 = rest
                .strip_prefix("seed=")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| "random needs `seed=<u64>`".to_string())?;
            use rand::SeedableRng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Dist::random(group, &mut rng, 16))
        }
        other => Err(format!("unknown distribution kind `{other}`")),
    }
}

pub fn parse_rational(spec: &str) -> Result<BigRational, String> {
    let spec = spec.trim();
    match spec.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| format!("bad numerator in `{spec}`"))?;
            let d: i64 = d.trim().parse().map_err(|_| format!("bad denominator in `{spec}`"))?;
            if d == 0 {
                return Err(format!("zero denominator in `{spec}`"));
            }
            Ok(BigRational::new(n.into(), d.into()))
        }
        None => {
            let n: i64 = spec.parse().map_err(|_| format!("`{spec}` is not a rational"))?;
            Ok(BigRational::from_integer(n.into()))
        }
    }
}

/// Orbit-seed assignments: `;`-separated `rep=value` pairs of rationals,
/// e.g. `1=1/8;1/3=1/16;5/3=1/32`.
pub fn parse_seeds(spec: &str) -> Result<Vec<(BigRational, BigRational)>, String> {
    spec.split(';')
        .map(|pair| {
            let (rep, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("`{pair}` is not a `rep=value` assignment"))?;
            Ok((parse_rational(rep)?, parse_rational(value)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_and_bases_parse() {
        assert_eq!(parse_group("4").unwrap().factors(), &[4]);
        assert_eq!(parse_group("2,3").unwrap().factors(), &[2, 3]);
        assert!(parse_group("x").is_err());
        assert_eq!(parse_base("3,5,7").unwrap().entries(), &[3, 5, 7]);
    }

    #[test]
    fn dist_specs_parse() {
        let g = parse_group("4").unwrap();
        assert_eq!(parse_dist(&g, "uniform").unwrap(), Dist::uniform(&g));
        let haar = parse_dist(&g, "haar:K=2").unwrap();
        assert_eq!(haar.masses()[0], BigRational::new(1.into(), 2.into()));
        let point = parse_dist(&g, "point:x=3").unwrap();
        assert_eq!(point, Dist::point(&g, &g.element(&[3]).unwrap()));
        let two = parse_dist(&g, "twopoint:a=1").unwrap();
        assert!(two.is_symmetric());
        assert!(parse_dist(&g, "random:seed=7").is_ok());
        assert!(parse_dist(&g, "bogus:x=1").is_err());
    }

    #[test]
    fn seed_assignments_parse() {
        let seeds = parse_seeds("1=1/8;1/3=1/16").unwrap();
        assert_eq!(seeds.len(), 2);
        assert_eq!(seeds[1].0, BigRational::new(1.into(), 3.into()));
        assert!(parse_seeds("nope").is_err());
    }
}
