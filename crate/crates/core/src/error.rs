use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside 1..={max}")]
    LetterOutOfRange { letter: i64, max: usize },

    #[error("letter {0} is repeated")]
    RepeatedLetter(u8),

    #[error("degree {degree} exceeds the cap of {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("`{0}` is not a permutation")]
    NotPermutation(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("words `{left}` and `{right}` share a letter")]
    LetterCollision { left: String, right: String },

    #[error("integer overflow while accumulating coefficients")]
    Overflow,

    #[error("term `{word}` does not end in {letter}")]
    MissingSuffix { word: String, letter: u8 },

    #[error("need 1 <= b < a <= n, got n={n}, a={a}, b={b}")]
    InvalidSpec { n: usize, a: usize, b: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
