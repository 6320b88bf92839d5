use std::fmt;

/// Error with its process exit code.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Data(String),
    Scorer(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Data(_) => 3,
            Failure::Scorer(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Data(m) => write!(f, "data error: {m}"),
            Failure::Scorer(m) => write!(f, "scorer error: {m}"),
        }
    }
}

impl From<lingcx::Error> for Failure {
    fn from(e: lingcx::Error) -> Self {
        use lingcx::Error as E;
        match e {
            E::UnknownFeature(_) | E::InvalidToken(_) => Failure::Config(e.to_string()),
            E::Scorer(_) => Failure::Scorer(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub fn config(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

pub fn data(msg: impl Into<String>) -> Failure {
    Failure::Data(msg.into())
}
