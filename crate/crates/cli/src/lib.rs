//! Command-line front end: algebra files in, tables and reports out.

pub mod algfile;
pub mod run;

pub use algfile::{parse_algebra, parse_unchecked, print_algebra, AlgFileError};
pub use run::{execute, Cli, Command, Format, Report, Status};

/// Definitions shipped with the tool, addressable by name through `--algebra`.
pub const BUNDLED: [(&str, &str); 3] = [
    ("w22", include_str!("../algebras/w22.alg")),
    ("vir", include_str!("../algebras/vir.alg")),
    ("abelian1", include_str!("../algebras/abelian1.alg")),
];
