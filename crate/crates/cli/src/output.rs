use serde::Serialize;

use hydrocone::green::{AsymptoticTerm, CanonicalMarker, ChannelGroup};
use hydrocone::verify::{BoundStateRow, Check};
use hydrocone::{Channel, ParamPoly};

/// One line of `--format json-lines` output.
#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record<'a> {
    Parametrix(ParametrixRecord),
    Term(&'a AsymptoticTerm),
    Group(GroupRecord),
    Check(&'a Check),
    BoundState(&'a BoundStateRow),
    Value(ValueRecord),
    Warning { message: String },
}

#[derive(Serialize)]
pub struct ParametrixRecord {
    pub channel: Channel,
    pub order: u32,
    pub symbol: String,
    /// `[root, multiplicity]` pairs.
    pub poles: Vec<(i64, u32)>,
}

#[derive(Serialize)]
pub struct NumeratorEntry {
    pub marker: CanonicalMarker,
    pub coefficient: ParamPoly,
}

#[derive(Serialize)]
pub struct GroupRecord {
    pub channel: Channel,
    pub factorized: bool,
    /// `series[k]` multiplies `r^{l+k}`.
    pub series: Vec<ParamPoly>,
    pub series_text: String,
    pub z_power: u32,
    pub functional: Vec<NumeratorEntry>,
    pub functional_text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl GroupRecord {
    pub fn new(g: &ChannelGroup) -> Self {
        match &g.factored {
            Ok((series, q)) => GroupRecord {
                channel: g.channel,
                factorized: true,
                series: series.coefficients.clone(),
                series_text: series.to_string(),
                z_power: q.z_power,
                functional: q
                    .numerators
                    .iter()
                    .map(|(m, c)| NumeratorEntry { marker: *m, coefficient: c.clone() })
                    .collect(),
                functional_text: q.to_string(),
                failure: None,
            },
            Err(f) => GroupRecord {
                channel: g.channel,
                factorized: false,
                series: Vec::new(),
                series_text: String::new(),
                z_power: 0,
                functional: Vec::new(),
                functional_text: String::new(),
                failure: Some(f.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ValueRecord {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
}

pub fn emit(r: &Record<'_>) {
    println!("{}", serde_json::to_string(r).expect("records serialize"));
}
