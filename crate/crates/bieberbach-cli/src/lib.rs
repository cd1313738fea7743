//! Library surface of the command-line crate: the bundled corpus and its
//! verification battery, shared between the binary and the test suites.

pub mod verify;
