use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four bosonic modes of the Raman Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Pump.
    A,
    /// Stokes.
    B,
    /// Phonon (vibration).
    C,
    /// Anti-Stokes.
    D,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::A, Mode::B, Mode::C, Mode::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['a', 'b', 'c', 'd'][self.index()]
    }
}

/// One of the six unordered pairs of distinct modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ModePair {
    AB,
    AC,
    AD,
    BC,
    BD,
    CD,
}

impl ModePair {
    pub const ALL: [ModePair; 6] = [
        ModePair::AB,
        ModePair::AC,
        ModePair::AD,
        ModePair::BC,
        ModePair::BD,
        ModePair::CD,
    ];

    /// Order-insensitive constructor.
    pub fn new(x: Mode, y: Mode) -> Result<Self> {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        Ok(match (lo, hi) {
            (Mode::A, Mode::B) => ModePair::AB,
            (Mode::A, Mode::C) => ModePair::AC,
            (Mode::A, Mode::D) => ModePair::AD,
            (Mode::B, Mode::C) => ModePair::BC,
            (Mode::B, Mode::D) => ModePair::BD,
            (Mode::C, Mode::D) => ModePair::CD,
            _ => return Err(Error::SameMode),
        })
    }

    pub fn first(self) -> Mode {
        self.modes().0
    }

    pub fn second(self) -> Mode {
        self.modes().1
    }

    pub fn modes(self) -> (Mode, Mode) {
        match self {
            ModePair::AB => (Mode::A, Mode::B),
            ModePair::AC => (Mode::A, Mode::C),
            ModePair::AD => (Mode::A, Mode::D),
            ModePair::BC => (Mode::B, Mode::C),
            ModePair::BD => (Mode::B, Mode::D),
            ModePair::CD => (Mode::C, Mode::D),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModePair::AB => "ab",
            ModePair::AC => "ac",
            ModePair::AD => "ad",
            ModePair::BC => "bc",
            ModePair::BD => "bd",
            ModePair::CD => "cd",
        }
    }
}

impl fmt::Display for ModePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModePair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.trim().chars();
        let parse = |c: Option<char>| match c.map(|c| c.to_ascii_lowercase()) {
            Some('a') => Ok(Mode::A),
            Some('b') => Ok(Mode::B),
            Some('c') => Ok(Mode::C),
            Some('d') => Ok(Mode::D),
            _ => Err(format!("unknown mode pair `{s}`")),
        };
        let x = parse(chars.next())?;
        let y = parse(chars.next())?;
        if chars.next().is_some() {
            return Err(format!("unknown mode pair `{s}`"));
        }
        ModePair::new(x, y).map_err(|e| e.to_string())
    }
}

impl From<ModePair> for String {
    fn from(p: ModePair) -> Self {
        p.label().to_string()
    }
}

impl TryFrom<String> for ModePair {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_six_pairs() {
        let mut seen = std::collections::BTreeSet::new();
        for x in Mode::ALL {
            for y in Mode::ALL {
                match ModePair::new(x, y) {
                    Ok(p) => {
                        assert_eq!(p, ModePair::new(y, x).unwrap());
                        seen.insert(p);
                    }
                    Err(Error::SameMode) => assert_eq!(x, y),
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn labels_round_trip() {
        for p in ModePair::ALL {
            assert_eq!(p.label().parse::<ModePair>().unwrap(), p);
        }
        assert_eq!("DA".parse::<ModePair>().unwrap(), ModePair::AD);
        assert!("aa".parse::<ModePair>().is_err());
        assert!("abc".parse::<ModePair>().is_err());
    }
}
