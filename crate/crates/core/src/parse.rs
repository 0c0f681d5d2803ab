//! Text forms for groups and standard sets.
//!
//! Groups: `Z12`, `Z2^5`, `Z4xZ3`, `Z2^3xZ5`. Sets: `list:0,1,3`,
//! `list:0/0,1/0`, `full`, `zero`, `qr`, `ball:k`, `antiball:k`,
//! `random:rho=0.5,seed=3`, `complement:(<set>)`.

use std::sync::Arc;

use crate::dyadic::{level_set, BallKind, DyadicBallSpec};
use crate::error::{Error, Result};
use crate::group::{quadratic_residue_set, Element, Group, GroupSpec, StandardSet};
use crate::random::{sample_standard_set, RandomModel};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses a group spec into the ambient group it describes.
pub fn parse_group(text: &str) -> Result<Arc<Group>> {
    Ok(Group::ambient(parse_group_spec(text)?))
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(parse_err("empty group spec"));
    }
    let mut moduli = Vec::new();
    for factor in text.split(['x', '×']) {
        let factor = factor.trim();
        let body = factor
            .strip_prefix('Z')
            .ok_or_else(|| parse_err(format!("factor `{factor}` does not start with Z")))?;
        let (modulus, power) = match body.split_once('^') {
            Some((m, k)) => (m, k),
            None => (body, "1"),
        };
        let modulus: u64 = modulus
            .parse()
            .map_err(|_| parse_err(format!("bad modulus in `{factor}`")))?;
        let power: usize = power
            .parse()
            .map_err(|_| parse_err(format!("bad exponent in `{factor}`")))?;
        match modulus {
            0 => return Err(parse_err(format!("modulus 0 in `{factor}`"))),
            1 => {}
            n => moduli.extend(std::iter::repeat_n(n, power)),
        }
    }
    GroupSpec::new(moduli).map_err(|e| parse_err(e.to_string()))
}

/// Parses a set spec over `group`. A `list:` that is not already standard is
/// rejected rather than closed up.
pub fn parse_set(group: &Arc<Group>, text: &str) -> Result<StandardSet> {
    let text = text.trim();
    let (head, arg) = match text.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (text, None),
    };
    let no_arg = |set: StandardSet| match arg {
        None => Ok(set),
        Some(_) => Err(parse_err(format!("`{head}` takes no argument"))),
    };
    match head {
        "full" => no_arg(StandardSet::full(group)),
        "zero" => no_arg(StandardSet::zero(group)),
        "qr" => no_arg(qr_set(group)?),
        "list" => list_set(group, arg.unwrap_or("")),
        "ball" | "antiball" => {
            let kind = if head == "ball" {
                BallKind::Ball
            } else {
                BallKind::Antiball
            };
            ball_on(
                group,
                kind,
                arg.ok_or_else(|| parse_err(format!("`{head}` needs :k")))?,
            )
        }
        "random" => random_set(
            group,
            arg.ok_or_else(|| parse_err("`random` needs parameters"))?,
        ),
        "complement" => {
            let inner = arg
                .and_then(|a| a.strip_prefix('('))
                .and_then(|a| a.strip_suffix(')'))
                .ok_or_else(|| parse_err("expected complement:(<set spec>)"))?;
            Ok(parse_set(group, inner)?.standard_complement())
        }
        _ => Err(parse_err(format!("unknown set spec `{text}`"))),
    }
}

/// The `list:` spec of `a`; [`parse_set`] reads it back.
pub fn set_spec(a: &StandardSet) -> String {
    let g = a.group();
    let parts: Vec<String> = a
        .elements()
        .into_iter()
        .map(|x| g.element(x).to_string())
        .collect();
    format!("list:{}", parts.join(","))
}

fn parse_element(group: &Group, token: &str) -> Result<usize> {
    let moduli = group.spec().moduli();
    let parts: Vec<&str> = token.split('/').map(str::trim).collect();
    if parts.len() != moduli.len() {
        return Err(parse_err(format!(
            "element `{token}` has {} coordinates, {} needs {}",
            parts.len(),
            group.label(),
            moduli.len()
        )));
    }
    let mut residues = Vec::with_capacity(parts.len());
    for (p, &n) in parts.iter().zip(moduli) {
        let v: i64 = p
            .parse()
            .map_err(|_| parse_err(format!("bad residue `{p}` in `{token}`")))?;
        residues.push(v.rem_euclid(n as i64) as u64);
    }
    group.index_of(&Element(residues))
}

fn list_set(group: &Arc<Group>, arg: &str) -> Result<StandardSet> {
    if arg.is_empty() {
        return Err(parse_err("empty element list"));
    }
    let elements = arg
        .split(',')
        .map(|t| parse_element(group, t.trim()))
        .collect::<Result<Vec<_>>>()?;
    StandardSet::from_elements(group, &elements)
}

fn qr_set(group: &Arc<Group>) -> Result<StandardSet> {
    let moduli = group.spec().moduli();
    if moduli.len() != 1 {
        return Err(Error::Precondition(format!(
            "qr needs a cyclic group of prime order, got {}",
            group.label()
        )));
    }
    let reference = quadratic_residue_set(moduli[0])?;
    StandardSet::from_elements(group, &reference.elements())
}

fn ball_on(group: &Arc<Group>, kind: BallKind, arg: &str) -> Result<StandardSet> {
    let moduli = group.spec().moduli();
    if moduli.is_empty() || moduli.iter().any(|&m| m != 2) {
        return Err(Error::Precondition(format!(
            "balls need a group Z2^n, got {}",
            group.label()
        )));
    }
    let k: u32 = arg
        .parse()
        .map_err(|_| parse_err(format!("bad radius `{arg}`")))?;
    let spec = DyadicBallSpec::new(moduli.len() as u32, k, kind)?;
    level_set(group, &spec.levels())
}

fn random_set(group: &Arc<Group>, arg: &str) -> Result<StandardSet> {
    let (mut rho, mut seed) = (None, None);
    for kv in arg.split(',') {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected key=value, got `{kv}`")))?;
        match k.trim() {
            "rho" => {
                rho = Some(
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| parse_err(format!("bad rho `{v}`")))?,
                )
            }
            "seed" => {
                seed = Some(
                    v.trim()
                        .parse::<u64>()
                        .map_err(|_| parse_err(format!("bad seed `{v}`")))?,
                )
            }
            other => return Err(parse_err(format!("unknown random parameter `{other}`"))),
        }
    }
    let rho = rho.ok_or_else(|| parse_err("random needs rho=<r>"))?;
    let seed = seed.ok_or_else(|| parse_err("random needs seed=<s>"))?;
    let model = RandomModel::new(group, rho, seed)?;
    Ok(sample_standard_set(&model, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(parse_group("Z12").unwrap().label(), "Z12");
        assert_eq!(parse_group("Z2^5").unwrap().order(), 32);
        let g = parse_group("Z4xZ3").unwrap();
        assert_eq!(g.spec().moduli(), &[4, 3]);
        assert_eq!(parse_group("Z2^2xZ5").unwrap().spec().moduli(), &[2, 2, 5]);
        assert_eq!(parse_group("Z1").unwrap().order(), 1);
        for bad in ["", "12", "Zx", "Z0", "Z2^", "Z4xx", "Y3"] {
            assert!(matches!(parse_group(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn lists_must_be_standard() {
        let g = parse_group("Z4").unwrap();
        assert_eq!(
            parse_set(&g, "list:0,1,3").unwrap().elements(),
            vec![0, 1, 3]
        );
        assert_eq!(
            parse_set(&g, "list:0,1,-1").unwrap().elements(),
            vec![0, 1, 3]
        );
        assert!(matches!(
            parse_set(&g, "list:0,1"),
            Err(Error::NotStandard(_))
        ));
        assert!(matches!(
            parse_set(&g, "list:1,3"),
            Err(Error::NotStandard(_))
        ));
        let h = parse_group("Z4xZ3").unwrap();
        let a = parse_set(&h, "list:0/0,2/0,0/1,0/2").unwrap();
        assert_eq!(a.size(), 4);
        assert!(matches!(parse_set(&h, "list:0,1"), Err(Error::Parse(_))));
    }

    #[test]
    fn named_sets() {
        let g = parse_group("Z13").unwrap();
        let qr = parse_set(&g, "qr").unwrap();
        assert_eq!(qr.size(), 7);
        assert!(Arc::ptr_eq(qr.group(), &g));
        assert!(matches!(
            parse_set(&parse_group("Z7").unwrap(), "qr"),
            Err(Error::Precondition(_))
        ));
        assert!(parse_set(&g, "full").unwrap().is_full());
        assert!(parse_set(&g, "zero").unwrap().is_zero());
        let c = parse_set(&g, "complement:(qr)").unwrap();
        assert_eq!(c.size(), 7);
        assert_eq!(parse_set(&g, "complement:(complement:(qr))").unwrap(), qr);
        assert!(matches!(parse_set(&g, "nonsense"), Err(Error::Parse(_))));
    }

    #[test]
    fn set_specs_round_trip() {
        for (g, s) in [
            ("Z6", "list:0,1,5"),
            ("Z4xZ3", "list:0/0,0/1,0/2,2/0"),
            ("Z2^3", "ball:1"),
        ] {
            let g = parse_group(g).unwrap();
            let a = parse_set(&g, s).unwrap();
            assert_eq!(parse_set(&g, &set_spec(&a)).unwrap(), a);
        }
    }

    #[test]
    fn balls() {
        let g = parse_group("Z2^6").unwrap();
        assert_eq!(parse_set(&g, "ball:2").unwrap().size(), 1 + 6 + 15);
        assert_eq!(parse_set(&g, "antiball:4").unwrap().size(), 1 + 6 + 1);
        assert!(parse_set(&parse_group("Z4^2").unwrap(), "ball:1").is_err());
        assert!(parse_set(&g, "ball:7").is_err());
    }

    #[test]
    fn random_sets_are_reproducible() {
        let g = parse_group("Z2^5").unwrap();
        let a = parse_set(&g, "random:rho=0.5,seed=3").unwrap();
        let b = parse_set(&g, "random:seed=3, rho=0.5").unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            parse_set(&g, "random:rho=2,seed=1"),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            parse_set(&g, "random:rho=0.5"),
            Err(Error::Parse(_))
        ));
    }
}
