//! Command-line front end for the exact ordered-field library: an
//! expression language over `Q`, `Q(w)` and `Q((e))` ([`expr`]) and the
//! subcommand implementations ([`commands`]).

pub mod commands;
pub mod expr;
