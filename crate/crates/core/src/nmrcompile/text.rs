//! Line-oriented text form of a pulse sequence, one event per line:
//!
//! ```text
//! RF axis=y angle=1.5707963267948966 spins=1,3
//! DELAY pair=1,2 tau=0.0049776007964161275
//! ZROT spin=1 angle=-1.5707963267948966
//! GRAD
//! EXP pauli=ZZZ angle=0.39269908169872414
//! ```
//!
//! Angles are radians, delays seconds. Numbers carry 17 significant digits so
//! a written sequence parses back to identical values. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use super::{Axis, PulseEvent, PulseSequence};
use crate::error::{Error, Result};
use crate::format::fmt_sig;

const DIGITS: usize = 17;

fn num(x: f64) -> String {
    fmt_sig(x, DIGITS)
}

impl fmt::Display for PulseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseEvent::Rf { angle, axis, spins } => {
                let spins: Vec<String> = spins.iter().map(usize::to_string).collect();
                write!(f, "RF axis={axis} angle={} spins={}", num(*angle), spins.join(","))
            }
            PulseEvent::Delay { pair, tau } => {
                write!(f, "DELAY pair={},{} tau={}", pair.0, pair.1, num(*tau))
            }
            PulseEvent::ZRotation { angle, spin } => {
                write!(f, "ZROT spin={spin} angle={}", num(*angle))
            }
            PulseEvent::Gradient => f.write_str("GRAD"),
            PulseEvent::PauliRotation { angle, pauli } => {
                write!(f, "EXP pauli={pauli} angle={}", num(*angle))
            }
        }
    }
}

impl fmt::Display for PulseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.events() {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

struct Fields<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Fields<'a> {
    fn parse(tokens: impl Iterator<Item = &'a str>) -> std::result::Result<Self, String> {
        let pairs = tokens
            .map(|t| t.split_once('=').ok_or_else(|| format!("expected key=value, got {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { pairs })
    }

    fn get(&self, key: &str) -> std::result::Result<&'a str, String> {
        let mut hits = self.pairs.iter().filter(|(k, _)| *k == key);
        match (hits.next(), hits.next()) {
            (Some((_, v)), None) => Ok(v),
            (None, _) => Err(format!("missing field {key}")),
            (Some(_), Some(_)) => Err(format!("duplicate field {key}")),
        }
    }

    fn expect_only(&self, keys: &[&str]) -> std::result::Result<(), String> {
        match self.pairs.iter().find(|(k, _)| !keys.contains(k)) {
            Some((k, _)) => Err(format!("unknown field {k}")),
            None => Ok(()),
        }
    }

    fn float(&self, key: &str) -> std::result::Result<f64, String> {
        let v = self.get(key)?;
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("{key}: invalid number {v:?}"))
    }

    fn spin_list(&self, key: &str) -> std::result::Result<Vec<usize>, String> {
        let v = self.get(key)?;
        v.split(',')
            .map(|s| s.parse::<usize>().map_err(|_| format!("{key}: invalid spin {s:?}")))
            .collect()
    }
}

fn parse_event(line: &str) -> std::result::Result<PulseEvent, String> {
    let mut tokens = line.split_whitespace();
    let kind = tokens.next().ok_or("empty line")?;
    let fields = Fields::parse(tokens)?;
    let event = match kind {
        "RF" => {
            fields.expect_only(&["axis", "angle", "spins"])?;
            let axis = match fields.get("axis")? {
                "x" => Axis::X,
                "y" => Axis::Y,
                other => return Err(format!("axis must be x or y, got {other:?}")),
            };
            PulseEvent::Rf {
                angle: fields.float("angle")?,
                axis,
                spins: fields.spin_list("spins")?,
            }
        }
        "DELAY" => {
            fields.expect_only(&["pair", "tau"])?;
            let pair = fields.spin_list("pair")?;
            let [j, l] = pair[..] else {
                return Err(format!("pair needs two spins, got {}", pair.len()));
            };
            PulseEvent::Delay {
                pair: (j, l),
                tau: fields.float("tau")?,
            }
        }
        "ZROT" => {
            fields.expect_only(&["spin", "angle"])?;
            let spin = fields.get("spin")?;
            PulseEvent::ZRotation {
                angle: fields.float("angle")?,
                spin: spin.parse().map_err(|_| format!("spin: invalid spin {spin:?}"))?,
            }
        }
        "GRAD" => {
            fields.expect_only(&[])?;
            PulseEvent::Gradient
        }
        "EXP" => {
            fields.expect_only(&["pauli", "angle"])?;
            PulseEvent::PauliRotation {
                angle: fields.float("angle")?,
                pauli: fields.get("pauli")?.parse().map_err(|e: Error| e.to_string())?,
            }
        }
        other => return Err(format!("unknown event {other:?}")),
    };
    Ok(event)
}

impl FromStr for PulseSequence {
    type Err = Error;

    /// Parses the text form. Events are checked for syntax only; call
    /// [`PulseEvent::validate`] against a spin system for range checks.
    fn from_str(s: &str) -> Result<Self> {
        s.lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .map(|(i, l)| parse_event(l.trim()).map_err(|msg| Error::Parse { line: i + 1, msg }))
            .collect()
    }
}
