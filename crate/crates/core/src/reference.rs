//! Published digits used as test vectors, kept in one versioned data file.

use num_traits::Signed;
use serde::Deserialize;

use crate::algebra::rational::{parse_rational, pow10};
use crate::algebra::Rational;

const DATA: &str = include_str!("../data/reference_values.json");

/// A decimal as printed: its value and the size of one unit in its last digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Printed {
    pub text: String,
}

impl Printed {
    pub fn new(text: impl Into<String>) -> Self {
        Printed { text: text.into() }
    }

    pub fn value(&self) -> Rational {
        parse_rational(&self.text).expect("reference data holds plain decimals")
    }

    pub fn decimals(&self) -> usize {
        self.text.split_once('.').map_or(0, |(_, f)| f.len())
    }

    pub fn unit(&self) -> Rational {
        pow10(-(self.decimals() as i32))
    }

    /// Within one unit of the last displayed digit.
    pub fn matches(&self, x: &Rational) -> bool {
        (x - self.value()).abs() <= self.unit()
    }
}

impl<'de> Deserialize<'de> for Printed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d).map(Printed::new)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Column {
    pub g: String,
    pub rows: Vec<(usize, Printed)>,
}

impl Column {
    pub fn g(&self) -> Rational {
        parse_rational(&self.g).expect("reference g")
    }

    pub fn row(&self, index: usize) -> Option<&Printed> {
        self.rows.iter().find(|(k, _)| *k == index).map(|(_, p)| p)
    }

    pub fn last_index(&self) -> usize {
        self.rows.last().map_or(0, |r| r.0)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct HankelTable {
    pub a: String,
    pub d: usize,
    pub columns: Vec<Column>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct HillTable {
    pub a: String,
    pub interval: (String, String),
    pub orders: (usize, usize),
    pub columns: Vec<Column>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct HighPrecision {
    pub g: String,
    #[serde(rename = "E")]
    pub e: Printed,
}

#[derive(Clone, Debug, Deserialize)]
pub struct HillAverage {
    pub g: String,
    #[serde(rename = "M")]
    pub orders: (usize, usize),
    #[serde(rename = "E")]
    pub e: Printed,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RationalReference {
    pub lambda: String,
    pub high_precision: Vec<HighPrecision>,
    pub hill_average: HillAverage,
    pub table1: HankelTable,
    pub table2: HillTable,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WidthOptimum {
    #[serde(rename = "M")]
    pub m: usize,
    pub a: String,
    pub bracket: (String, String),
}

#[derive(Clone, Debug, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    pub quartic_ground_state: Printed,
    pub quartic_width_optimum: WidthOptimum,
    pub rational: RationalReference,
}

impl ReferenceData {
    pub fn load() -> Self {
        serde_json::from_str(DATA).expect("embedded reference data parses")
    }

    pub fn high_precision(&self, g: &Rational) -> Option<&Printed> {
        self.rational.high_precision.iter().find(|h| parse_rational(&h.g).ok().as_ref() == Some(g)).map(|h| &h.e)
    }
}

/// Parses a rational field of the reference data.
pub fn rational(text: &str) -> Rational {
    parse_rational(text).expect("reference rational")
}
