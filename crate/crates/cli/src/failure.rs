use std::fmt;

pub enum Failure {
    /// Incoherent flags. Exit code 1.
    Usage(String),
    /// Unreadable or invalid input. Exit code 2.
    Input(String),
    /// A suite found counterexamples; its report still goes to stdout.
    /// Exit code 3.
    Suite { report: String, message: String },
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Suite { .. } => 3,
        }
    }

    pub fn stdout(&self) -> Option<&str> {
        match self {
            Failure::Suite { report, .. } => Some(report),
            _ => None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Input(m) => f.write_str(m),
            Failure::Suite { message, .. } => f.write_str(message),
        }
    }
}

impl From<bayesent_core::Error> for Failure {
    fn from(e: bayesent_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}
