use std::io::Write;

use disk_resonator::cli::{main_with, PRESET_DIR_ENV};

fn main() {
    let preset_dir = std::env::var_os(PRESET_DIR_ENV).map(std::path::PathBuf::from);
    let (code, stdout, stderr) = main_with(std::env::args_os(), preset_dir.as_deref());
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    std::process::exit(code);
}
