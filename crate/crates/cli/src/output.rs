use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::args::Format;
use crate::config::RunConfig;
use crate::error::CliError;

/// Pretty JSON with every float written as `{:.16e}` (17 significant digits).
struct FixedFloatFormatter {
    inner: PrettyFormatter<'static>,
}

impl Formatter for FixedFloatFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    let formatter = FixedFloatFormatter {
        inner: PrettyFormatter::new(),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, formatter);
    value.serialize(&mut ser).map_err(|e| CliError::Encode(e.to_string()))?;
    buf.push(b'\n');
    Ok(buf)
}

/// CSV with a header row, comma separator and LF line endings.
pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<Vec<u8>, CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| CliError::Encode(e.to_string()))?;
    }
    writer.into_inner().map_err(|e| CliError::Encode(e.to_string()))
}

/// Encodes `report` (JSON) or `rows` (CSV) and writes it to `--out` or
/// standard output.
pub fn emit<J: Serialize, R: Serialize>(config: &RunConfig, report: &J, rows: &[R]) -> Result<(), CliError> {
    let bytes = match config.format {
        Format::Json => to_json(report)?,
        Format::Csv => to_csv(rows)?,
    };
    match &config.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::io(format!("writing {}", path.display()), e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("writing standard output", e))
        }
    }
}
