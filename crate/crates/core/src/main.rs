fn main() {
    qlattice::cli::main()
}
