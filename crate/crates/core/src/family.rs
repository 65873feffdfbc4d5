//! The eight parity-separated partition families.
//!
//! A family `p_{yz}^{wx}` is named by two classes: the lower class `yz` (its
//! parts lie strictly below every part of the upper class) and the upper class
//! `wx`. Each class fixes a parity (`e`/`o`) and a multiplicity rule
//! (`u` unrestricted, `d` distinct). The two classes always have opposite parity.
//!
//! Textual forms accepted by [`FamilyCode::from_str`]:
//!
//! * `eu^ou` — subscript first, as the symbol is read aloud (`p_eu^ou`);
//! * `ou/eu` — superscript/subscript, as it is stacked on the page;
//! * `sup=ou,sub=eu` — explicit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(part: u32) -> Parity {
        if part.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    fn letter(self) -> char {
        match self {
            Parity::Even => 'e',
            Parity::Odd => 'o',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Multiplicity {
    Unrestricted,
    Distinct,
}

impl Multiplicity {
    fn letter(self) -> char {
        match self {
            Multiplicity::Unrestricted => 'u',
            Multiplicity::Distinct => 'd',
        }
    }
}

/// One side of a family: a parity together with a multiplicity rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartClass {
    pub parity: Parity,
    pub multiplicity: Multiplicity,
}

impl PartClass {
    pub const fn new(parity: Parity, multiplicity: Multiplicity) -> Self {
        PartClass {
            parity,
            multiplicity,
        }
    }

    pub fn is_distinct(self) -> bool {
        self.multiplicity == Multiplicity::Distinct
    }

    fn parse(s: &str) -> Result<PartClass> {
        let mut chars = s.trim().chars();
        let (Some(p), Some(m), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(Error::Precondition(format!("bad part class `{s}`")));
        };
        let parity = match p.to_ascii_lowercase() {
            'e' => Parity::Even,
            'o' => Parity::Odd,
            _ => return Err(Error::Precondition(format!("bad parity in `{s}`"))),
        };
        let multiplicity = match m.to_ascii_lowercase() {
            'u' => Multiplicity::Unrestricted,
            'd' => Multiplicity::Distinct,
            _ => return Err(Error::Precondition(format!("bad multiplicity in `{s}`"))),
        };
        Ok(PartClass::new(parity, multiplicity))
    }
}

impl fmt::Display for PartClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.parity.letter(), self.multiplicity.letter())
    }
}

/// A parity-separated family, identified by its lower and upper classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyCode {
    lower: PartClass,
    upper: PartClass,
}

const EU: PartClass = PartClass::new(Parity::Even, Multiplicity::Unrestricted);
const ED: PartClass = PartClass::new(Parity::Even, Multiplicity::Distinct);
const OU: PartClass = PartClass::new(Parity::Odd, Multiplicity::Unrestricted);
const OD: PartClass = PartClass::new(Parity::Odd, Multiplicity::Distinct);

impl FamilyCode {
    /// `p_eu^ou`: even parts (unrestricted) below odd parts (unrestricted).
    pub const EU_OU: FamilyCode = FamilyCode::new_unchecked(EU, OU);
    pub const EU_OD: FamilyCode = FamilyCode::new_unchecked(EU, OD);
    pub const OD_EU: FamilyCode = FamilyCode::new_unchecked(OD, EU);
    pub const ED_OU: FamilyCode = FamilyCode::new_unchecked(ED, OU);
    pub const ED_OD: FamilyCode = FamilyCode::new_unchecked(ED, OD);
    pub const OU_EU: FamilyCode = FamilyCode::new_unchecked(OU, EU);
    pub const OU_ED: FamilyCode = FamilyCode::new_unchecked(OU, ED);
    pub const OD_ED: FamilyCode = FamilyCode::new_unchecked(OD, ED);

    /// All eight families, in the order the main terms are usually listed.
    pub const ALL: [FamilyCode; 8] = [
        FamilyCode::EU_OU,
        FamilyCode::EU_OD,
        FamilyCode::OD_EU,
        FamilyCode::ED_OU,
        FamilyCode::ED_OD,
        FamilyCode::OU_EU,
        FamilyCode::OU_ED,
        FamilyCode::OD_ED,
    ];

    const fn new_unchecked(lower: PartClass, upper: PartClass) -> Self {
        FamilyCode { lower, upper }
    }

    pub fn new(lower: PartClass, upper: PartClass) -> Result<Self> {
        if lower.parity == upper.parity {
            return Err(Error::Precondition(format!(
                "lower class {lower} and upper class {upper} share a parity"
            )));
        }
        Ok(FamilyCode { lower, upper })
    }

    /// The subscript class: its parts lie below all upper-class parts.
    pub fn lower(self) -> PartClass {
        self.lower
    }

    /// The superscript class.
    pub fn upper(self) -> PartClass {
        self.upper
    }

    pub fn class_of(self, part: u32) -> PartClass {
        if Parity::of(part) == self.lower.parity {
            self.lower
        } else {
            self.upper
        }
    }

    /// Superscript/subscript alias used on the command line, e.g. `ou/eu`.
    pub fn stacked(self) -> String {
        format!("{}/{}", self.upper, self.lower)
    }
}

impl fmt::Display for FamilyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.lower, self.upper)
    }
}

impl FromStr for FamilyCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((sub, sup)) = s.split_once('^') {
            return FamilyCode::new(PartClass::parse(sub)?, PartClass::parse(sup)?);
        }
        if let Some((sup, sub)) = s.split_once('/') {
            return FamilyCode::new(PartClass::parse(sub)?, PartClass::parse(sup)?);
        }
        if s.contains('=') {
            let mut sup = None;
            let mut sub = None;
            for field in s.split(',') {
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| Error::Precondition(format!("bad field `{field}`")))?;
                match key.trim() {
                    "sup" => sup = Some(PartClass::parse(value)?),
                    "sub" => sub = Some(PartClass::parse(value)?),
                    other => return Err(Error::Precondition(format!("unknown key `{other}`"))),
                }
            }
            return match (sub, sup) {
                (Some(sub), Some(sup)) => FamilyCode::new(sub, sup),
                _ => Err(Error::Precondition(format!(
                    "`{s}` needs both sup= and sub="
                ))),
            };
        }
        Err(Error::Precondition(format!(
            "unrecognised family `{s}` (use sup=ou,sub=eu or ou/eu)"
        )))
    }
}

impl Serialize for FamilyCode {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyCode {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_eight_families() {
        let classes = [EU, ED, OU, OD];
        let mut valid = Vec::new();
        for lower in classes {
            for upper in classes {
                if let Ok(f) = FamilyCode::new(lower, upper) {
                    valid.push(f);
                }
            }
        }
        valid.sort();
        let mut all = FamilyCode::ALL.to_vec();
        all.sort();
        assert_eq!(valid, all);
    }

    #[test]
    fn parse_forms_agree() {
        let a: FamilyCode = "eu^ou".parse().unwrap();
        let b: FamilyCode = "ou/eu".parse().unwrap();
        let c: FamilyCode = "sup=ou,sub=eu".parse().unwrap();
        assert_eq!(a, FamilyCode::EU_OU);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "eu^ou");
        assert_eq!(a.stacked(), "ou/eu");
    }

    #[test]
    fn same_parity_rejected() {
        assert!("eu^ed".parse::<FamilyCode>().is_err());
        assert!("sup=ou".parse::<FamilyCode>().is_err());
        assert!("xx".parse::<FamilyCode>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for f in FamilyCode::ALL {
            assert_eq!(f.to_string().parse::<FamilyCode>().unwrap(), f);
            assert_eq!(f.stacked().parse::<FamilyCode>().unwrap(), f);
        }
    }
}
