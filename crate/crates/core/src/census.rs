//! The low-volume knot census and per-knot invariant records.
//!
//! The built-in census lists every hyperbolic knot in S³ of volume at most
//! 3.07: `4_1`, `5_2`, `m5_2`, `12n242` and `m12n242`. Mirrors are separate
//! records because their ν⁺ data differ.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{NumError, Rational, RationalInterval};
use crate::laurent::{AlexanderPoly, LaurentPoly, PolyError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("malformed census document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("census has no knot records")]
    Empty,
    #[error("{path}: {source}")]
    Alexander {
        path: String,
        #[source]
        source: PolyError,
    },
    #[error("{path}: {source}")]
    Interval {
        path: String,
        #[source]
        source: NumError,
    },
    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },
    #[error("duplicate knot name {0:?}")]
    DuplicateName(String),
}

/// The invariant bundle the pipeline consumes for one knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotRecord {
    pub name: String,
    pub genus: u32,
    pub alexander: AlexanderPoly,
    pub volume: Option<RationalInterval>,
    #[serde(rename = "hyperbolic")]
    pub is_hyperbolic: bool,
    #[serde(rename = "lspace_knot")]
    pub is_lspace_knot: bool,
    pub nu_plus: u32,
    pub nu_plus_mirror: u32,
    pub provenance_note: Option<String>,
}

impl KnotRecord {
    /// Checks the cross-field invariants; `path` prefixes error messages.
    pub fn validate(&self, path: &str) -> Result<(), CensusError> {
        let invalid = |field: &str, reason: String| CensusError::Invalid {
            path: format!("{path}.{field}"),
            reason,
        };
        if self.name.trim().is_empty() {
            return Err(invalid("name", "empty knot name".into()));
        }
        if let Some(v) = &self.volume {
            if !v.lower().is_positive() {
                return Err(invalid(
                    "volume",
                    format!("lower bound {} is not positive", v.lower()),
                ));
            }
        }
        // Seifert's bound: deg Δ <= g
        let degree = self.alexander.degree();
        if degree > i64::from(self.genus) {
            return Err(invalid(
                "genus",
                format!(
                    "genus {} is below the Alexander degree {degree}",
                    self.genus
                ),
            ));
        }
        if self.is_lspace_knot && self.genus > 0 && self.nu_plus != self.genus {
            return Err(invalid(
                "nu_plus",
                format!(
                    "an L-space knot has nu+ equal to its genus {}, got {}",
                    self.genus, self.nu_plus
                ),
            ));
        }
        Ok(())
    }

    pub fn delta2(&self) -> Rational {
        self.alexander.second_derivative_at_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    volume_threshold: Rational,
    #[serde(rename = "knots")]
    records: Vec<KnotRecord>,
}

impl Census {
    pub fn new(records: Vec<KnotRecord>, volume_threshold: Rational) -> Result<Self, CensusError> {
        if records.is_empty() {
            return Err(CensusError::Empty);
        }
        if !volume_threshold.is_positive() {
            return Err(CensusError::Invalid {
                path: "volume_threshold".into(),
                reason: "must be positive".into(),
            });
        }
        let mut seen = HashSet::new();
        for (i, record) in records.iter().enumerate() {
            record.validate(&format!("knots[{i}]"))?;
            if !seen.insert(record.name.as_str()) {
                return Err(CensusError::DuplicateName(record.name.clone()));
            }
        }
        Ok(Census {
            volume_threshold,
            records,
        })
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn volume_threshold(&self) -> &Rational {
        &self.volume_threshold
    }

    pub fn lookup(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Census records are mirrored by the `m` prefix convention (`5_2` and `m5_2`).
    pub fn mirror_of(&self, name: &str) -> Option<&KnotRecord> {
        self.lookup(&mirror_name(name))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }
}

pub fn mirror_name(name: &str) -> String {
    match name.strip_prefix('m') {
        Some(rest) => rest.to_string(),
        None => format!("m{name}"),
    }
}

fn record(
    name: &str,
    genus: u32,
    alexander: &str,
    volume: Option<(&str, &str)>,
    is_lspace_knot: bool,
    nu_plus: (u32, u32),
    note: Option<&str>,
) -> KnotRecord {
    KnotRecord {
        name: name.to_string(),
        genus,
        alexander: alexander.parse().expect("built-in Alexander polynomial"),
        volume: volume.map(|(lo, hi)| {
            RationalInterval::new(lo.parse().unwrap(), hi.parse().unwrap()).unwrap()
        }),
        is_hyperbolic: true,
        is_lspace_knot,
        nu_plus: nu_plus.0,
        nu_plus_mirror: nu_plus.1,
        provenance_note: note.map(str::to_string),
    }
}

const DELTA_5_2: &str = "2t^-1 - 3 + 2t";
const DELTA_12N242: &str = "t^-5 - t^-4 + t^-2 - t^-1 + 1 - t + t^2 - t^4 + t^5";

const NOTE_4_1: &str = "volume enclosure brackets the census value 2.02988...; \
    the often-quoted figure 2.0988 is inconsistent with the 14.17 length hypothesis";
const NOTE_5_2: &str = "volume not recorded: excluded by the Casson-Walker test, never by volume; \
    nu+ values are not consumed by the pipeline";
const NOTE_12N242: &str =
    "(-2,3,7)-pretzel knot; L-space knot, so nu+ = genus and nu+ of the mirror is 0";

pub fn builtin_census() -> Census {
    let records = vec![
        record(
            "4_1",
            1,
            "-t^-1 + 3 - t",
            Some(("2.0298", "2.0299")),
            false,
            (0, 0),
            Some(NOTE_4_1),
        ),
        record("5_2", 1, DELTA_5_2, None, false, (1, 0), Some(NOTE_5_2)),
        record("m5_2", 1, DELTA_5_2, None, false, (0, 1), Some(NOTE_5_2)),
        record(
            "12n242",
            5,
            DELTA_12N242,
            Some(("2.82", "2.83")),
            true,
            (5, 0),
            Some(NOTE_12N242),
        ),
        record(
            "m12n242",
            5,
            DELTA_12N242,
            Some(("2.82", "2.83")),
            false,
            (0, 5),
            None,
        ),
    ];
    Census::new(records, "3.07".parse().unwrap()).expect("built-in census is valid")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCensus {
    volume_threshold: Rational,
    knots: Vec<RawRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    name: String,
    genus: u32,
    alexander: LaurentPoly,
    volume: Option<RawInterval>,
    hyperbolic: bool,
    lspace_knot: bool,
    nu_plus: u32,
    nu_plus_mirror: u32,
    #[serde(default)]
    provenance_note: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    lower: Rational,
    upper: Rational,
}

/// Parses and validates a census JSON document.
pub fn load_census(document: &str) -> Result<Census, CensusError> {
    let raw: RawCensus = serde_json::from_str(document)?;
    let mut records = Vec::with_capacity(raw.knots.len());
    for (i, k) in raw.knots.into_iter().enumerate() {
        let path = format!("knots[{i}]");
        let alexander =
            AlexanderPoly::try_from(k.alexander).map_err(|source| CensusError::Alexander {
                path: format!("{path}.alexander"),
                source,
            })?;
        let volume = k
            .volume
            .map(|v| RationalInterval::new(v.lower, v.upper))
            .transpose()
            .map_err(|source| CensusError::Interval {
                path: format!("{path}.volume"),
                source,
            })?;
        records.push(KnotRecord {
            name: k.name,
            genus: k.genus,
            alexander,
            volume,
            is_hyperbolic: k.hyperbolic,
            is_lspace_knot: k.lspace_knot,
            nu_plus: k.nu_plus,
            nu_plus_mirror: k.nu_plus_mirror,
            provenance_note: k.provenance_note,
        });
    }
    Census::new(records, raw.volume_threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_lookups() {
        let census = builtin_census();
        assert_eq!(census.records().len(), 5);
        assert_eq!(census.lookup("12n242").unwrap().genus, 5);
        assert_eq!(
            census.lookup("5_2").unwrap().alexander.to_string(),
            "2t^-1 - 3 + 2t"
        );
        assert_eq!(census.lookup("m5_2").unwrap().delta2(), Rational::from(4));
        assert_eq!(
            census.lookup("12n242").unwrap().delta2(),
            Rational::from(24)
        );
        assert_eq!(census.lookup("4_1").unwrap().delta2(), Rational::from(-2));
        assert_eq!(
            census.volume_threshold(),
            &"3.07".parse::<Rational>().unwrap()
        );
        assert_eq!(census.mirror_of("12n242").unwrap().name, "m12n242");
        assert_eq!(census.mirror_of("m5_2").unwrap().name, "5_2");
        assert!(census.mirror_of("4_1").is_none());
    }

    #[test]
    fn builtin_flags() {
        let census = builtin_census();
        let lspace: Vec<_> = census
            .records()
            .iter()
            .filter(|r| r.is_lspace_knot)
            .map(|r| r.name.as_str())
            .collect();
        assert_eq!(lspace, ["12n242"]);
        let k = census.lookup("12n242").unwrap();
        assert_eq!((k.nu_plus, k.nu_plus_mirror), (5, 0));
        let m = census.lookup("m12n242").unwrap();
        assert_eq!((m.nu_plus, m.nu_plus_mirror), (0, 5));
        assert!(census.lookup("5_2").unwrap().volume.is_none());
        let v41 = census.lookup("4_1").unwrap().volume.clone().unwrap();
        // figure-eight volume 2.029883212819307...
        assert!(v41.contains(&"2.029883212819307".parse().unwrap()));
    }

    #[test]
    fn builtin_polys_are_normalized() {
        for r in builtin_census().records() {
            let p = r.alexander.as_poly();
            assert!(p.is_palindromic(), "{}", r.name);
            assert_eq!(p.value_at_one(), 1.into(), "{}", r.name);
        }
    }

    #[test]
    fn round_trip() {
        let census = builtin_census();
        let loaded = load_census(&census.to_json()).unwrap();
        assert_eq!(loaded, census);
    }

    fn doc_with(record: &str) -> String {
        format!(r#"{{"volume_threshold": "3.07", "knots": [{record}]}}"#)
    }

    const GOOD: &str = r#"{"name": "k", "genus": 1, "alexander": [[-2, 2], [0, -3], [2, 2]],
        "volume": {"lower": "2.8", "upper": "2.9"}, "hyperbolic": true, "lspace_knot": false,
        "nu_plus": 0, "nu_plus_mirror": 0}"#;

    #[test]
    fn loads_a_minimal_document() {
        let census = load_census(&doc_with(GOOD)).unwrap();
        let k = census.lookup("k").unwrap();
        assert_eq!(k.volume.as_ref().unwrap().lower(), &"14/5".parse().unwrap());
        assert!(k.provenance_note.is_none());
    }

    #[test]
    fn unnormalized_alexander_rejected() {
        let bad = GOOD.replace("[0, -3]", "[0, -2]");
        let err = load_census(&doc_with(&bad)).unwrap_err();
        assert!(
            matches!(&err, CensusError::Alexander { path, source: PolyError::ValueAtOne(_) } if path == "knots[0].alexander"),
            "{err}"
        );
    }

    #[test]
    fn inverted_volume_rejected() {
        let bad = GOOD.replace(
            r#""lower": "2.8", "upper": "2.9""#,
            r#""lower": "2.9", "upper": "2.8""#,
        );
        let err = load_census(&doc_with(&bad)).unwrap_err();
        assert!(
            matches!(&err, CensusError::Interval { path, .. } if path == "knots[0].volume"),
            "{err}"
        );
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            load_census(r#"{"volume_threshold": "3.07", "knots": []}"#),
            Err(CensusError::Empty)
        ));
        assert!(matches!(load_census("{"), Err(CensusError::Malformed(_))));
        let dup = format!("{GOOD}, {GOOD}");
        assert!(matches!(
            load_census(&doc_with(&dup)),
            Err(CensusError::DuplicateName(_))
        ));
        let lspace = GOOD.replace(r#""lspace_knot": false"#, r#""lspace_knot": true"#);
        assert!(matches!(
            load_census(&doc_with(&lspace)),
            Err(CensusError::Invalid { .. })
        ));
        let low_genus = GOOD.replace(r#""genus": 1"#, r#""genus": 0"#);
        assert!(matches!(
            load_census(&doc_with(&low_genus)),
            Err(CensusError::Invalid { .. })
        ));
        let zero_vol = GOOD.replace(r#""lower": "2.8""#, r#""lower": "0""#);
        assert!(matches!(
            load_census(&doc_with(&zero_vol)),
            Err(CensusError::Invalid { .. })
        ));
    }
}
