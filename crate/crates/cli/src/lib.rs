//! Command-line front end and HTTP session service for `hqp`.

pub mod commands;
pub mod server;
pub mod session;
