use thiserror::Error;

use crate::text::ParseError;
use crate::words::Letter;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a brace product needs at least one argument")]
    EmptyArguments,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("no image given for letter {0}")]
    MissingImage(Letter),
    #[error("letter {0} is outside the alphabet")]
    ForeignLetter(Letter),
    #[error("term budget of {limit} intermediate terms exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("relator does not involve the last letter {0}")]
    RelatorFreeOfLastLetter(Letter),
    #[error("probe element involves the last letter {0}")]
    ProbeUsesLastLetter(Letter),
    #[error("elementary transformations need a nonzero scalar")]
    ZeroScalar,
    #[error("shift of an elementary transformation may only involve {0}")]
    ShiftUsesOwnLetter(Letter),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
