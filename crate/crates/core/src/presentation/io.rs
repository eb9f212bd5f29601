use thiserror::Error;

use super::SystemPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at line {line}, column {column}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let raw = e.to_string();
        // serde_json appends " at line L column C"; keep only the message.
        let message = raw.rsplit_once(" at line ").map_or(raw.as_str(), |(m, _)| m);
        let message = match message.strip_prefix("missing field `") {
            Some(rest) => format!("missing field: {}", rest.trim_end_matches('`')),
            None => message.to_string(),
        };
        ParseError {
            message,
            line: e.line(),
            column: e.column(),
        }
    }
}

/// Pretty JSON with connectors in normal form.
pub fn serialize(s: &SystemPresentation) -> String {
    serde_json::to_string_pretty(&s.normalized()).expect("presentations always serialize")
}

/// Reads a JSON document; connector anchors are brought to normal form.
pub fn parse(doc: &str) -> Result<SystemPresentation, ParseError> {
    let s: SystemPresentation = serde_json::from_str(doc)?;
    Ok(s.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_n_sigma, make_sigma_p, make_x1, Mode, PTuple};

    #[test]
    fn round_trips_constructors() {
        for s in [make_x1(), make_n_sigma(0), make_n_sigma(6)] {
            assert_eq!(parse(&serialize(&s)).unwrap(), s);
        }
        let p = PTuple::new(vec![4, 2, 2], 3, vec![1, 0]).unwrap();
        let s = make_sigma_p(&p);
        assert_eq!(parse(&serialize(&s)).unwrap(), s);
    }

    #[test]
    fn empty_object_names_the_missing_field() {
        let err = parse("{}").unwrap_err();
        assert_eq!(err.message, "missing field: mode");
        assert_eq!(err.line, 1);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse(r#"{"mode":"Subshift","orbits":[],"extra":1}"#).unwrap_err();
        assert!(err.message.contains("unknown field"), "{}", err.message);
        let err = parse(r#"{"mode":"Subshift","orbits":[{"id":"a","lambda":1,"kind":"Limit","colour":0}]}"#)
            .unwrap_err();
        assert!(err.message.contains("unknown field"));
    }

    #[test]
    fn malformed_documents_report_location() {
        let err = parse("{\n  \"mode\": \"Subshift\",\n  \"orbits\": [1,]\n}").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn serializer_emits_normal_form() {
        let doc = serialize(&make_n_sigma(2));
        let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        for c in v["connectors"].as_array().unwrap() {
            assert_eq!(c["left"]["anchor"], 0);
        }
    }

    #[test]
    fn parse_normalizes_homeomorphism_anchors() {
        let doc = r#"{"mode":"Homeomorphism",
            "orbits":[{"id":"a","lambda":4,"kind":"Limit"},{"id":"b","lambda":6,"kind":"Limit"}],
            "connectors":[{"id":"z","left":{"orbit":"a","anchor":3},"right":{"orbit":"b","anchor":2}}]}"#;
        let s = parse(doc).unwrap();
        assert_eq!(s.mode, Mode::Homeomorphism);
        assert_eq!(s.connectors[0].left.anchor, 0);
        assert_eq!(s.connectors[0].right.anchor, 1);
    }
}
