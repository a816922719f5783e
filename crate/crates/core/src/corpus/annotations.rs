use super::{Gender, Inventory, Msec, ReferenceTimes, WordIdentity};
use crate::error::{Error, Result};

pub const ANNOTATION_HEADER: [&str; 10] = [
    "token_id",
    "speaker_id",
    "gender",
    "repetition",
    "word_id",
    "v1_onset_ms",
    "v1_offset_ms",
    "c1_offset_ms",
    "v2_onset_ms",
    "v2_offset_ms",
];

/// One annotated utterance as stored in the annotation CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationRecord {
    pub token_id: String,
    pub identity: WordIdentity,
    pub times: ReferenceTimes,
}

/// Parses the annotation CSV. Lines starting with `#` are comments.
/// Every error carries the 1-based line number of the offending row.
pub fn parse_annotations(text: &str, inventory: &Inventory) -> Result<Vec<AnnotationRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let names: Vec<&str> = header.iter().collect();
    if names != ANNOTATION_HEADER {
        return Err(Error::Malformed(format!(
            "header must be `{}`, found `{}`",
            ANNOTATION_HEADER.join(","),
            names.join(",")
        )));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        out.push(parse_row(&record, inventory).map_err(|e| e.at_row(line))?);
    }
    Ok(out)
}

fn parse_row(r: &csv::StringRecord, inventory: &Inventory) -> Result<AnnotationRecord> {
    if r.len() != ANNOTATION_HEADER.len() {
        return Err(Error::Malformed(format!("expected {} columns, found {}", ANNOTATION_HEADER.len(), r.len())));
    }
    let token_id = r[0].to_string();
    if token_id.is_empty() {
        return Err(Error::Malformed("empty token_id".into()));
    }
    let gender: Gender = r[2].parse()?;
    let repetition: u32 = r[3]
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Malformed(format!("repetition `{}` is not a positive integer", &r[3])))?;
    let word = inventory.word(&r[4])?;
    let c1_offset = if r[7].is_empty() { None } else { Some(r[7].parse::<Msec>()?) };
    let times = ReferenceTimes {
        v1_onset: r[5].parse()?,
        v1_offset: r[6].parse()?,
        c1_offset,
        v2_onset: r[8].parse()?,
        v2_offset: r[9].parse()?,
    };
    times.validate(word.consonant.class)?;
    Ok(AnnotationRecord {
        token_id,
        identity: WordIdentity {
            word_id: word.word_id.clone(),
            speaker_id: r[1].to_string(),
            gender,
            repetition,
            vowel: word.vowel,
            consonant: word.consonant.clone(),
            form: word.form,
        },
        times,
    })
}

pub fn serialize_annotations(records: &[AnnotationRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ANNOTATION_HEADER)?;
    for rec in records {
        let t = &rec.times;
        w.write_record([
            rec.token_id.clone(),
            rec.identity.speaker_id.clone(),
            rec.identity.gender.to_string(),
            rec.identity.repetition.to_string(),
            rec.identity.word_id.clone(),
            t.v1_onset.to_string(),
            t.v1_offset.to_string(),
            t.c1_offset.map(|c| c.to_string()).unwrap_or_default(),
            t.v2_onset.to_string(),
            t.v2_offset.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load_word_inventory;
    use proptest::prelude::*;

    const HEADER: &str =
        "token_id,speaker_id,gender,repetition,word_id,v1_onset_ms,v1_offset_ms,c1_offset_ms,v2_onset_ms,v2_offset_ms";

    #[test]
    fn parses_affricate_row() {
        let text = format!("{HEADER}\natfa_s1_r1,s1,male,1,atʃa,0,160.0,233.1,334.0,446.3\n");
        let recs = parse_annotations(&text, &load_word_inventory()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(r.identity.word_id, "atʃa");
        assert_eq!(r.times.v1_offset, Msec::from_ms(160.0));
        assert_eq!(r.times.c1_offset, Some(Msec::from_micros(233_100)));
        assert_eq!(r.times.v2_offset, Msec::from_micros(446_300));
    }

    #[test]
    fn ordering_violation_names_row() {
        let text = format!(
            "{HEADER}\natfa_s1_r1,s1,male,1,atʃa,0,160.0,233.1,334.0,446.3\nbad,s1,male,1,atʃa,200,150,233.1,334.0,446.3\n"
        );
        let err = parse_annotations(&text, &load_word_inventory()).unwrap_err();
        match err {
            Error::Row { row, message } => {
                assert_eq!(row, 3);
                assert!(message.contains("out of order"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fricative_with_closure_rejected() {
        let text = format!("{HEADER}\nassa_1,s1,female,2,assa,0,125.3,200,375.4,489.1\n");
        let err = parse_annotations(&text, &load_word_inventory()).unwrap_err();
        assert!(matches!(err, Error::Row { row: 2, ref message } if message.contains("closure")));
    }

    #[test]
    fn malformed_rows() {
        let inv = load_word_inventory();
        let wrong_cols = format!("{HEADER}\nx,s1,male,1,assa,0,125.3,,375.4\n");
        assert!(matches!(parse_annotations(&wrong_cols, &inv), Err(Error::Row { row: 2, .. })));
        let bad_num = format!("{HEADER}\nx,s1,male,1,assa,0,12x,,375.4,400\n");
        assert!(matches!(parse_annotations(&bad_num, &inv), Err(Error::Row { row: 2, .. })));
        let bad_rep = format!("{HEADER}\nx,s1,male,0,assa,0,125,,375.4,400\n");
        assert!(parse_annotations(&bad_rep, &inv).is_err());
        assert!(parse_annotations("a,b,c\n", &inv).is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let text = format!("# seed=1\n{HEADER}\nx,s1,male,1,assa,0,125.3,,375.4,489.1\n");
        assert_eq!(parse_annotations(&text, &load_word_inventory()).unwrap().len(), 1);
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(
            steps in proptest::collection::vec(1i64..400_000, 4),
            start in 0i64..100_000,
            closure in any::<bool>(),
        ) {
            let inv = load_word_inventory();
            let word = if closure { "itʃi" } else { "uvvu" };
            let v1_onset = Msec::from_micros(start);
            let v1_offset = v1_onset + Msec::from_micros(steps[0]);
            let c1 = v1_offset + Msec::from_micros(steps[1]);
            let v2_onset = c1 + Msec::from_micros(steps[2]);
            let v2_offset = v2_onset + Msec::from_micros(steps[3]);
            let line = format!(
                "{HEADER}\nt1,s2,female,3,{word},{v1_onset},{v1_offset},{},{v2_onset},{v2_offset}\n",
                if closure { c1.to_string() } else { String::new() }
            );
            let parsed = parse_annotations(&line, &inv).unwrap();
            let text = serialize_annotations(&parsed).unwrap();
            let again = parse_annotations(&text, &inv).unwrap();
            prop_assert_eq!(&parsed, &again);
            prop_assert_eq!(text, line);
        }
    }
}
