use serde::{Deserialize, Serialize};

/// One of the nine rock facies classes, keyed by its numeric code 1..=9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
#[repr(u8)]
pub enum FaciesLabel {
    NonmarineSandstone = 1,
    NonmarineCoarseSiltstone = 2,
    NonmarineFineSiltstone = 3,
    MarineSiltstoneShale = 4,
    Mudstone = 5,
    Wackestone = 6,
    Dolomite = 7,
    PackstoneGrainstone = 8,
    PhylloidAlgalBafflestone = 9,
}

impl FaciesLabel {
    /// All nine labels in code order.
    pub const ALL: [FaciesLabel; 9] = [
        FaciesLabel::NonmarineSandstone,
        FaciesLabel::NonmarineCoarseSiltstone,
        FaciesLabel::NonmarineFineSiltstone,
        FaciesLabel::MarineSiltstoneShale,
        FaciesLabel::Mudstone,
        FaciesLabel::Wackestone,
        FaciesLabel::Dolomite,
        FaciesLabel::PackstoneGrainstone,
        FaciesLabel::PhylloidAlgalBafflestone,
    ];

    /// Numeric facies code, 1..=9.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<FaciesLabel> {
        match code {
            1..=9 => Some(Self::ALL[(code - 1) as usize]),
            _ => None,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            FaciesLabel::NonmarineSandstone => "SS",
            FaciesLabel::NonmarineCoarseSiltstone => "CSiS",
            FaciesLabel::NonmarineFineSiltstone => "FSiS",
            FaciesLabel::MarineSiltstoneShale => "SiSh",
            FaciesLabel::Mudstone => "MS",
            FaciesLabel::Wackestone => "WS",
            FaciesLabel::Dolomite => "D",
            FaciesLabel::PackstoneGrainstone => "PS",
            FaciesLabel::PhylloidAlgalBafflestone => "BS",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FaciesLabel::NonmarineSandstone => "Nonmarine sandstone",
            FaciesLabel::NonmarineCoarseSiltstone => "Nonmarine coarse siltstone",
            FaciesLabel::NonmarineFineSiltstone => "Nonmarine fine siltstone",
            FaciesLabel::MarineSiltstoneShale => "Marine siltstone and shale",
            FaciesLabel::Mudstone => "Mudstone",
            FaciesLabel::Wackestone => "Wackestone",
            FaciesLabel::Dolomite => "Dolomite",
            FaciesLabel::PackstoneGrainstone => "Packstone-grainstone",
            FaciesLabel::PhylloidAlgalBafflestone => "Phylloid-algal bafflestone",
        }
    }
}

impl From<FaciesLabel> for u8 {
    fn from(label: FaciesLabel) -> u8 {
        label.code()
    }
}

impl TryFrom<u8> for FaciesLabel {
    type Error = String;

    fn try_from(code: u8) -> std::result::Result<Self, String> {
        FaciesLabel::from_code(code).ok_or_else(|| format!("facies code {code} outside 1..=9"))
    }
}

impl std::fmt::Display for FaciesLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.short_name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_round_trips_for_all_labels() {
        for label in FaciesLabel::ALL {
            assert_eq!(FaciesLabel::from_code(label.code()), Some(label));
        }
    }

    #[test]
    fn codes_outside_range_rejected() {
        assert_eq!(FaciesLabel::from_code(0), None);
        assert_eq!(FaciesLabel::from_code(10), None);
    }

    #[test]
    fn short_names_match_taxonomy() {
        let names: Vec<_> = FaciesLabel::ALL.iter().map(|f| f.short_name()).collect();
        assert_eq!(
            names,
            ["SS", "CSiS", "FSiS", "SiSh", "MS", "WS", "D", "PS", "BS"]
        );
    }

    #[test]
    fn serializes_as_code() {
        let json = serde_json::to_string(&FaciesLabel::Dolomite).unwrap();
        assert_eq!(json, "7");
        let back: FaciesLabel = serde_json::from_str("7").unwrap();
        assert_eq!(back, FaciesLabel::Dolomite);
        assert!(serde_json::from_str::<FaciesLabel>("10").is_err());
    }
}
