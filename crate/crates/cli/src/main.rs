mod args;
mod commands;
mod corpus;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Convert(a) => commands::convert(a),
        Command::Eval(a) => commands::eval(a),
        Command::Stats(a) => commands::stats(a),
        Command::Train(a) => commands::train(a),
        Command::Tag(a) => commands::tag(a),
        Command::Scheme(a) => commands::scheme(a),
        Command::Validate(a) => commands::validate(a),
    };
    ExitCode::from(code)
}
