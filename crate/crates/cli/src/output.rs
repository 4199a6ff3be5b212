use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

/// A command result renderable in every output format.
pub trait Render: Serialize {
    fn plain(&self) -> String;
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

/// JSON with keys in sorted order, so parsing and re-serializing is byte-identical.
pub fn canonical_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

pub fn render(format: Format, value: &impl Render) -> anyhow::Result<String> {
    Ok(match format {
        Format::Plain => value.plain(),
        Format::Json => canonical_json(value)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(value.csv_header())?;
            for row in value.csv_rows() {
                w.write_record(row)?;
            }
            String::from_utf8(w.into_inner()?)?.trim_end().to_string()
        }
    })
}
