//! Command-line front end: configuration, output formats, parallel drivers.

pub mod compute;
pub mod config;
pub mod dump;
pub mod output;
pub mod parallel;
pub mod sweep;
pub mod validate;

pub use validate::ValidationFailed;

/// Process exit code for an error: 3 for resource guards, 2 for failed
/// validation, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(facet_strength::Error::ResourceGuard(_)) = cause.downcast_ref::<facet_strength::Error>() {
            return 3;
        }
        if cause.downcast_ref::<ValidationFailed>().is_some() {
            return 2;
        }
    }
    1
}

/// Runs a parsed command, writing tables to their destination.
pub fn run(cli: &config::Cli) -> anyhow::Result<()> {
    use config::Command;
    let meta = output::Metadata::new(cli);
    match &cli.command {
        Command::Compute(a) => output::emit(a.out.as_deref(), a.format, &meta, &compute::run(a)?),
        Command::Sweep(a) => output::emit(a.out.as_deref(), a.format, &meta, &sweep::run(a)?),
        Command::Validate(a) => {
            let rows = validate::run_checks(a)?;
            output::emit(a.out.as_deref(), a.format, &meta, &validate::report(&rows))?;
            match rows.iter().filter(|r| !r.passed).count() {
                0 => Ok(()),
                failed => Err(ValidationFailed(failed).into()),
            }
        }
        Command::Enumerate(a) => match dump::run(a, &meta)? {
            Some(t) => output::emit(None, config::Format::Csv, &meta, &t),
            None => Ok(()),
        },
        Command::Version => {
            println!("{} {}", output::TOOL, output::VERSION);
            Ok(())
        }
    }
}
