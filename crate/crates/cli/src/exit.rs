use ecc_core::EccError;

pub const INPUT: u8 = 2;
pub const VERIFICATION: u8 = 3;
pub const CAPACITY: u8 = 4;

/// Error carrying its own exit status.
#[derive(Debug)]
pub struct Failed {
    pub code: u8,
    pub message: String,
}

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failed {}

pub fn verification(message: impl Into<String>) -> anyhow::Error {
    Failed {
        code: VERIFICATION,
        message: message.into(),
    }
    .into()
}

pub fn capacity(message: impl Into<String>) -> anyhow::Error {
    Failed {
        code: CAPACITY,
        message: message.into(),
    }
    .into()
}

pub fn code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(f) = cause.downcast_ref::<Failed>() {
            return f.code;
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return INPUT;
        }
        if let Some(e) = cause.downcast_ref::<EccError>() {
            return match e {
                EccError::Parse { .. }
                | EccError::InvalidHypergraph(_)
                | EccError::LengthMismatch { .. }
                | EccError::ColorOutOfRange { .. }
                | EccError::DimensionMismatch(_)
                | EccError::InvalidArgument(_) => INPUT,
                EccError::CapExceeded { .. } => CAPACITY,
                EccError::CertificateFailed(_)
                | EccError::InfeasibleSolution(_)
                | EccError::BadPairRemains(..)
                | EccError::NotACover(..) => VERIFICATION,
                EccError::NotOptimal(_) => 1,
            };
        }
    }
    1
}
