//! Command implementations behind the `algdyn` binary: input syntax, run
//! reports and one function per subcommand.

mod commands;
mod report;
mod syntax;

pub use commands::{
    cmd_analyze, cmd_examples, cmd_goe, cmd_homoclinic, cmd_invert, cmd_simulate, CliError,
    Settings,
};
pub use report::{yes_no, Outcome, Plot, ReportParseError, RunReport, SCHEMA_VERSION};
pub use syntax::{
    parse_poly, parse_polys, parse_rational, parse_syntax, ParseError, PolynomialSyntaxTree,
    SyntaxTerm,
};
