use std::io::Write;

fn main() {
    let (doc, code) = sphemb_cli::run(std::env::args_os());
    let text = serde_json::to_string_pretty(&doc).expect("JSON document");
    // a closed pipe on stdout is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(code);
}
