fn main() -> std::process::ExitCode {
    rna_topology::cli::main_entry()
}
