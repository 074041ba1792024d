//! Example programs used by tests and the acceptance suite.

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        /// `(name, source)` pairs, in a fixed order.
        pub const CORPUS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../corpus/", $name, ".ch")))),*
        ];
    };
}

corpus!("nats", "length", "nats_length", "bad_s", "sums", "c1c2", "swap", "s1s2", "nats_list", "half", "magic",);

/// Source of a corpus program.
pub fn source(name: &str) -> &'static str {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).unwrap_or_else(|| panic!("no corpus program `{name}`"))
}

/// Absolute path of a corpus file, for driving the command line.
pub fn path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.ch"))
}
