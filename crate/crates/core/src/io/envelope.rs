use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::IoError;

fn checksum(payload: &Value) -> String {
    // serde_json maps are sorted, so this serialization is canonical
    let bytes = serde_json::to_vec(payload).expect("JSON values always serialize");
    hex::encode(Sha256::digest(&bytes))
}

/// Wrap `payload` as `{format, version, checksum, payload}` pretty JSON with
/// a trailing newline.
pub fn seal_envelope(format: &str, version: u32, payload: Value) -> String {
    let doc = json!({
        "format": format,
        "version": version,
        "checksum": checksum(&payload),
        "payload": payload,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    out.push('\n');
    out
}

/// Check tag, version and checksum of an envelope and return its payload.
pub fn open_envelope(text: &str, format: &str, version: u32) -> Result<Value, IoError> {
    let mut doc: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let field = |doc: &Value, key: &str| {
        doc.get(key)
            .cloned()
            .ok_or_else(|| IoError::Json(format!("missing field {key}")))
    };
    let found = field(&doc, "format")?;
    if found.as_str() != Some(format) {
        return Err(IoError::FormatTag {
            expected: format.into(),
            found: found.to_string(),
        });
    }
    let found = field(&doc, "version")?
        .as_u64()
        .ok_or_else(|| IoError::Json("version is not an integer".into()))?;
    if found != u64::from(version) {
        return Err(IoError::Version {
            format: format.into(),
            expected: version,
            found: found.min(u64::from(u32::MAX)) as u32,
        });
    }
    let recorded = field(&doc, "checksum")?
        .as_str()
        .map(str::to_owned)
        .ok_or_else(|| IoError::Json("checksum is not a string".into()))?;
    let payload = doc
        .get_mut("payload")
        .map(Value::take)
        .ok_or_else(|| IoError::Json("missing field payload".into()))?;
    let computed = checksum(&payload);
    if recorded != computed {
        return Err(IoError::Checksum { recorded, computed });
    }
    Ok(payload)
}
