//! Published reference values for `tau2` and `M`, as printed.
//!
//! Values are kept as strings so the printed precision is part of the data.
//! `external_*` holds the comparison column (Coulomb-Green-function results)
//! where the source lists one.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    TableI,
    TableII,
    TableIII,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::TableI, TableId::TableII, TableId::TableIII];

    pub fn name(self) -> &'static str {
        match self {
            TableId::TableI => "TableI",
            TableId::TableII => "TableII",
            TableId::TableIII => "TableIII",
        }
    }
}

impl std::str::FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tablei" | "i" | "1" | "table1" => Ok(TableId::TableI),
            "tableii" | "ii" | "2" | "table2" => Ok(TableId::TableII),
            "tableiii" | "iii" | "3" | "table3" => Ok(TableId::TableIII),
            other => Err(format!("unknown table '{other}' (expected TableI, TableII or TableIII)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    Tau2,
    KHMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub omega: &'static str,
    pub re: &'static str,
    pub im: Option<&'static str>,
    pub external_re: Option<&'static str>,
    pub external_im: Option<&'static str>,
    /// Reason the row is excluded from verification.
    pub skip: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceTable {
    pub id: TableId,
    pub quantity: Quantity,
    pub caption: &'static str,
    pub rows: &'static [ReferenceRow],
}

impl ReferenceTable {
    pub fn active_rows(&self) -> impl Iterator<Item = &ReferenceRow> {
        self.rows.iter().filter(|r| r.skip.is_none())
    }
}

/// Spacing of the last printed digit: `"-4.5429"` -> `1e-4`, `"10"` -> `1`.
pub fn printed_resolution(text: &str) -> f64 {
    let decimals = text
        .split_once('.')
        .map(|(_, frac)| frac.chars().take_while(|c| c.is_ascii_digit()).count())
        .unwrap_or(0);
    10f64.powi(-(decimals as i32))
}

pub fn parse_value(text: &str) -> f64 {
    text.parse().unwrap_or_else(|_| panic!("malformed table entry '{text}'"))
}

const fn row(omega: &'static str, re: &'static str, external_re: Option<&'static str>) -> ReferenceRow {
    ReferenceRow {
        omega,
        re,
        im: None,
        external_re,
        external_im: None,
        skip: None,
    }
}

const fn crow(
    omega: &'static str,
    re: &'static str,
    im: &'static str,
    external: Option<(&'static str, &'static str)>,
) -> ReferenceRow {
    let (external_re, external_im) = match external {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    ReferenceRow {
        omega,
        re,
        im: Some(im),
        external_re,
        external_im,
        skip: None,
    }
}

static TABLE_I_ROWS: [ReferenceRow; 24] = [
    row("0.001", "-4.50003", None),
    row("0.002", "-4.50011", None),
    row("0.02", "-4.51066", Some("-4.51")),
    row("0.04", "-4.5429", Some("-4.5431")),
    row("0.08", "-4.6775", Some("-4.6776")),
    row("0.10", "-4.7843", Some("-4.7843")),
    row("0.20", "-5.9416", Some("-5.9416")),
    row("0.43", "-0.2971", None),
    row("0.46", "3.9273", None),
    row("0.465", "-3.0867", None),
    row("0.477", "1.2644", None),
    row("0.478", "-1.9330", None),
    row("0.489", "-0.6465", None),
    crow("0.6", "3.297", "2.505", None),
    crow("0.7", "2.493", "1.408", None),
    crow("0.8", "1.915", "0.850", Some(("1.915", "0.8506"))),
    crow("1.0", "1.205", "0.362", Some(("1.205", "0.3627"))),
    crow("2.0", "0.275", "0.023", Some(("0.275", "0.0239"))),
    crow("3.0", "0.117", "0.004", None),
    crow("4.0", "0.064", "0.001", None),
    crow("5.0", "0.041", "0.0005", Some(("0.041", "0.00057"))),
    crow("6.0", "0.028", "0.00027", None),
    crow("9.0", "0.012", "0.000049", None),
    crow("10", "0.010081", "0.0000319", Some(("0.01008", "0.00003"))),
];

static TABLE_II_ROWS: [ReferenceRow; 49] = [
    row("0.002", "-0.000018", None),
    row("0.02", "-0.0018", Some("-0.0018")),
    row("0.04", "-0.0072", Some("-0.0072")),
    row("0.06", "-0.0165", Some("-0.0165")),
    row("0.08", "-0.0299", Some("-0.0299")),
    row("0.10", "-0.0478", Some("-0.0478")),
    row("0.12", "-0.0708", Some("-0.0708")),
    row("0.14", "-0.0999", Some("-0.0999")),
    row("0.16", "-0.1361", Some("-0.1361")),
    row("0.18", "-0.1812", Some("-0.1812")),
    row("0.20", "-0.2376", Some("-0.2376")),
    row("0.22", "-0.3091", Some("-0.3091")),
    row("0.24", "-0.4016", Some("-0.4016")),
    row("0.26", "-0.5246", Some("-0.5246")),
    row("0.30", "-0.9507", Some("-0.9507")),
    row("0.32", "-1.3752", Some("-1.3752")),
    row("0.36", "-5.3036", Some("-5.3036")),
    row("0.37", "-15.763", Some("-15.763")),
    row("0.376", "77.8416", None),
    row("0.38", "15.3829", Some("15.3828")),
    row("0.4", "2.6916", Some("2.6916")),
    row("0.429", "0.0611", None),
    row("0.43", "-0.0549", Some("-0.0549")),
    row("0.44", "-3.1503", Some("-3.1503")),
    row("0.444", "-38.8927", None),
    row("0.445", "32.2604", Some("32.2603")),
    row("0.453", "2.3124", Some("2.3124")),
    row("0.464", "-0.2004", None),
    row("0.465", "-0.6674", Some("-0.6674")),
    row("0.468", "-8.1693", Some("-8.1693")),
    row("0.469", "27.9814", Some("27.9814")),
    row("0.473", "1.97857", Some("1.9785")),
    row("0.477", "0.2876", None),
    row("0.478", "-0.4416", Some("-0.4416")),
    row("0.481", "4.0681", None),
    row("0.484", "0.6692", None),
    row("0.485", "-0.4490", None),
    row("0.486", "-16.087", None),
    row("0.488", "1.2367", None),
    row("0.489", "-0.1546", None),
    row("0.49", "6.6498", None),
    row("0.491", "1.2466", None),
    row("0.492", "-3.0681", None),
    row("0.493", "1.2572", None),
    row("0.494", "3.9947", None),
    row("0.496", "3.0200", None),
    row("0.497", "-3.1600", None),
    ReferenceRow {
        skip: Some("duplicate of the preceding 0.497 row"),
        ..row("0.497", "-3.1600", None)
    },
    row("0.498", "-0.7238", None),
];

static TABLE_III_ROWS: [ReferenceRow; 19] = [
    crow("0.6", "1.1872", "0.9018", Some(("1.1872", "0.9018"))),
    crow("0.7", "1.22161", "0.6900", Some(("1.2216", "0.6900"))),
    crow("0.8", "1.22612", "0.5444", Some(("1.2261", "0.5444"))),
    crow("0.9", "1.21842", "0.4400", Some(("1.2184", "0.4400"))),
    crow("1.0", "1.20598", "0.3627", Some(("1.2059", "0.3627"))),
    crow("2.0", "1.10007", "0.0958", Some(("1.10007", "0.0958"))),
    crow("3.0", "1.05696", "0.0421", Some(("1.0569", "0.0421"))),
    crow("4.0", "1.03685", "0.0231", Some(("1.0368", "0.0231"))),
    crow("5.0", "1.02589", "0.0144", Some(("1.0258", "0.0144"))),
    crow("6.0", "1.01924", "0.00977", Some(("1.0192", "0.00977"))),
    crow("7.0", "1.01489", "0.00699", Some(("1.0148", "0.00699"))),
    crow("8.0", "1.01188", "0.00522", Some(("1.0118", "0.00522"))),
    crow("9.0", "1.00971", "0.00403", Some(("1.0097", "0.00403"))),
    crow("10", "1.0081", "0.00319", Some(("1.0081", "0.00319"))),
    crow("20", "1.00236", "0.00066", Some(("1.0023", "0.00066"))),
    crow("30", "1.00112", "0.000262", None),
    crow("40", "1.00066", "0.000133", None),
    crow("50", "1.00042", "0.000075", None),
    crow("90", "1.00014", "0.0000196", None),
];

static TABLE_I: ReferenceTable = ReferenceTable {
    id: TableId::TableI,
    quantity: Quantity::Tau2,
    caption: "Dipole dynamic polarizability below and above the one-photon ionization threshold",
    rows: &TABLE_I_ROWS,
};

static TABLE_II: ReferenceTable = ReferenceTable {
    id: TableId::TableII,
    quantity: Quantity::KHMatrix,
    caption: "Kramers-Heisenberg matrix element below the one-photon ionization threshold",
    rows: &TABLE_II_ROWS,
};

static TABLE_III: ReferenceTable = ReferenceTable {
    id: TableId::TableIII,
    quantity: Quantity::KHMatrix,
    caption: "Real and imaginary part of the Kramers-Heisenberg matrix element above threshold",
    rows: &TABLE_III_ROWS,
};

pub fn reference_table(id: TableId) -> &'static ReferenceTable {
    match id {
        TableId::TableI => &TABLE_I,
        TableId::TableII => &TABLE_II,
        TableId::TableIII => &TABLE_III,
    }
}
