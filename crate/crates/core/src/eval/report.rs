use super::MrRecord;

/// CSV with header `file,operation,payload,parameter,mr`, rows sorted by
/// (file, operation, payload, parameter), numbers with six decimals.
pub fn emit_report(records: &[MrRecord]) -> String {
    let mut sorted: Vec<&MrRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        a.file
            .cmp(&b.file)
            .then(a.operation.cmp(&b.operation))
            .then(a.payload.cmp(&b.payload))
            .then(a.parameter.total_cmp(&b.parameter))
    });
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["file", "operation", "payload", "parameter", "mr"])
        .expect("writing to memory");
    for r in sorted {
        w.write_record([
            r.file.as_str(),
            r.operation.name(),
            r.payload.name(),
            &format!("{:.6}", r.parameter),
            &format!("{:.6}", r.mr),
        ])
        .expect("writing to memory");
    }
    let bytes = w.into_inner().expect("flushing to memory");
    String::from_utf8(bytes).expect("csv of utf-8 fields")
}
