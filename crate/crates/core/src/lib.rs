pub mod exactq;
pub mod harrison;
pub mod hochschild;
pub mod kaehler;
pub mod monomial;
pub mod report;
pub mod suites;
pub mod symgroup;
