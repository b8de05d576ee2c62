use crate::error::{ParseError, ParseErrorKind};
use crate::{CoreError, Structure, StructureBuilder};

/// Parses the line-based `.struct` format.
pub fn read_structure(text: &str) -> Result<Structure, ParseError> {
    let mut builder: Option<StructureBuilder> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let err = |kind| ParseError { line, kind };
        let malformed = || err(ParseErrorKind::Malformed(raw.trim().to_string()));
        match (toks[0], builder.as_mut()) {
            ("structure", None) => {
                if toks.len() != 2 {
                    return Err(malformed());
                }
                builder = Some(StructureBuilder::new(toks[1]));
            }
            ("structure", Some(_)) => return Err(err(ParseErrorKind::DuplicateHeader)),
            (_, None) => return Err(err(ParseErrorKind::MissingHeader)),
            ("v", Some(b)) => {
                if toks.len() != 3 {
                    return Err(malformed());
                }
                b.vertex(toks[1], toks[2]).map_err(|e| match e {
                    CoreError::DuplicateVertex(v) => err(ParseErrorKind::DuplicateVertex(v)),
                    CoreError::ReservedCharacter(t) => err(ParseErrorKind::Reserved(t)),
                    _ => malformed(),
                })?;
            }
            ("e", Some(b)) => {
                if toks.len() != 3 {
                    return Err(malformed());
                }
                b.edge(toks[1], toks[2]).map_err(|e| match e {
                    CoreError::UnknownVertex(v) => err(ParseErrorKind::UndeclaredEndpoint(v)),
                    _ => malformed(),
                })?;
            }
            _ => return Err(malformed()),
        }
    }
    builder.map(StructureBuilder::build).ok_or(ParseError {
        line: last.max(1),
        kind: ParseErrorKind::MissingHeader,
    })
}

/// Canonical text form: header, vertices in order, then each edge once sorted.
pub fn write_structure(s: &Structure) -> String {
    let mut out = format!("structure {}\n", s.name());
    for v in s.vertices() {
        out.push_str(&format!("v {} {}\n", s.id(v), s.color(v)));
    }
    for (u, v) in s.edges() {
        out.push_str(&format!("e {} {}\n", s.id(u), s.id(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_red_vertex() {
        let s = read_structure("structure a\nv u red\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.color(0), "red");
        assert_eq!(s.name(), "a");
    }

    #[test]
    fn undeclared_endpoint_reports_line() {
        let e = read_structure("structure a\n# c\nv u red\ne u w\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(e.kind, ParseErrorKind::UndeclaredEndpoint("w".into()));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(read_structure("v u red\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
        let dup = read_structure("structure a\nv u r\nv u r\n").unwrap_err();
        assert_eq!((dup.line, dup.kind), (3, ParseErrorKind::DuplicateVertex("u".into())));
        let bad = read_structure("structure a\nv u\n").unwrap_err();
        assert_eq!(bad.line, 2);
        let twice = read_structure("structure a\nstructure b\n").unwrap_err();
        assert_eq!(twice.kind, ParseErrorKind::DuplicateHeader);
        assert!(read_structure("").is_err());
        assert!(read_structure("structure a\nq x y\n").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let src = "# demo\nstructure g  # trailing\nv b blue\nv a red\ne a b\ne b a\n\ne a a\n";
        let s = read_structure(src).unwrap();
        let canon = write_structure(&s);
        assert_eq!(canon, "structure g\nv b blue\nv a red\ne b a\ne a a\n");
        let again = read_structure(&canon).unwrap();
        assert_eq!(again, s);
        assert_eq!(write_structure(&again), canon);
    }
}
