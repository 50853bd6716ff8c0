//! Ball and body specs given inline or as files.

use std::path::Path;

use normplane::{PlacedBody, UnitBall};
use serde::de::DeserializeOwned;

use crate::error::CliError;

fn read_spec<T: DeserializeOwned>(spec: &str, what: &str) -> Result<T, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(Path::new(spec)).map_err(|source| CliError::Io {
            path: spec.into(),
            source,
        })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

pub fn ball(spec: &str) -> Result<UnitBall, CliError> {
    Ok(read_spec::<UnitBall>(spec, "--ball")?.validated()?)
}

pub fn body(spec: &str) -> Result<PlacedBody, CliError> {
    let b: PlacedBody = read_spec(spec, "--body")?;
    b.validate()?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_specs() {
        assert_eq!(ball(r#"{"kind":"lp","p":4}"#).unwrap(), UnitBall::lp(4.0).unwrap());
        let b = body(r#"{"ball":{"kind":"ellipse","q":[1,0,4]},"center":[1,2]}"#).unwrap();
        assert_eq!(b.scale, 1.0);
        assert_eq!(b.center.y, 2.0);
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(ball(r#"{"kind":"lp","p":40}"#).unwrap_err().exit_code(), 1);
        assert_eq!(ball(r#"{"kind":"cube"}"#).unwrap_err().exit_code(), 1);
        assert_eq!(ball("/nonexistent/ball.json").unwrap_err().exit_code(), 1);
        assert_eq!(body(r#"{"ball":{"kind":"lp","p":3},"scale":-1}"#).unwrap_err().exit_code(), 1);
    }
}
