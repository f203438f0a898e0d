use std::process::ExitCode;

use clap::Parser;
use landau_lab::{run, ConfigError, ExperimentConfig, RunError};

/// Exact identities of the Landau model and Toeplitz asymptotics on a magnetic torus.
///
/// Usage: landau-lab [MODE] [--config FILE] [--key value ...]
///
/// MODE is verify-model, levels, torus-spectrum or toeplitz-asymptotics and may also come
/// from the config file. Keys follow the config schema (see the README); flags override the
/// file wherever they appear.
#[derive(Parser, Debug)]
#[command(name = "landau-lab", version)]
struct Cli {
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "ARGS")]
    args: Vec<String>,
}

fn configure(args: &[String]) -> Result<ExperimentConfig, RunError> {
    let mut config = ExperimentConfig::default();
    let (mode, mut rest) = match args.first() {
        Some(m) if !m.starts_with("--") => (Some(m.clone()), args[1..].to_vec()),
        _ => (None, args.to_vec()),
    };
    let mut flags = Vec::new();
    while !rest.is_empty() {
        let arg = rest.remove(0);
        let path = if arg == "--config" {
            if rest.is_empty() {
                return Err(ConfigError("flag --config needs a value".into()).into());
            }
            rest.remove(0)
        } else if let Some(p) = arg.strip_prefix("--config=") {
            p.to_string()
        } else {
            flags.push(arg);
            continue;
        };
        let text = std::fs::read_to_string(&path).map_err(|e| ConfigError(format!("{path}: {e}")))?;
        config.apply_file(&text)?;
    }
    if let Some(mode) = mode {
        config.set("mode", &mode)?;
    }
    config.apply_flags(&flags)?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure(&cli.args).and_then(|config| run(&config, &mut std::io::stdout().lock()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
