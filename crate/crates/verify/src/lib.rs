//! Holds the `acceptance` integration test target. Kept as a separate package
//! so a failing criterion does not stop the rest of the workspace tests.
