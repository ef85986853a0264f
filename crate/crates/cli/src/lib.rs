//! Library half of the `turan` executable: report types and the verification
//! suites, shared with the integration tests.

pub mod report;
pub mod verify;
