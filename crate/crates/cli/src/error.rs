use capax_core::ech::EchError;
use capax_core::ellipsoid::EllipsoidError;
use capax_core::exact::ExactError;
use capax_core::kink::KinkError;
use capax_core::order::OrderError;
use capax_core::partitions::PartitionError;
use capax_core::shells::ShellError;
use serde::Serialize;
use thiserror::Error;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_RESOURCE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Domain { kind: &'static str, message: String },
    #[error("{0}")]
    Resource(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: u8,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn domain(kind: &'static str, err: impl ToString) -> Self {
        CliError::Domain {
            kind,
            message: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain { .. } => EXIT_DOMAIN,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn kind(&self) -> &str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain { kind, .. } => kind,
            CliError::Resource(_) => "resource_limit",
        }
    }

    pub fn to_json(&self) -> String {
        let doc = ErrorDoc {
            error: ErrorBody {
                kind: self.kind(),
                message: self.to_string(),
                exit_code: self.exit_code(),
            },
        };
        serde_json::to_string(&doc).expect("error document serializes")
    }
}

impl From<EchError> for CliError {
    fn from(e: EchError) -> Self {
        match e {
            EchError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            other => CliError::domain("ech", other),
        }
    }
}

impl From<EllipsoidError> for CliError {
    fn from(e: EllipsoidError) -> Self {
        match e {
            EllipsoidError::Ech(inner) => inner.into(),
            other => CliError::domain("ellipsoid", other),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::domain("parse", e)
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        CliError::domain("partitions", e)
    }
}

impl From<ShellError> for CliError {
    fn from(e: ShellError) -> Self {
        CliError::domain("shells", e)
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        match e {
            OrderError::Ellipsoid(inner) => inner.into(),
            other => CliError::domain("order", other),
        }
    }
}

impl From<KinkError> for CliError {
    fn from(e: KinkError) -> Self {
        match e {
            KinkError::Ellipsoid(inner) => inner.into(),
            other => CliError::domain("kink", other),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::domain("io", e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::domain("io", e)
    }
}
