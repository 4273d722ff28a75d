fn main() {
    std::process::exit(waveguide_qed::cli::run());
}
