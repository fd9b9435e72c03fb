pub mod exactla;
pub mod algebra;
pub mod complex;
pub mod ce;
pub mod dp;
pub mod oracle;
pub mod reference;
pub mod report;
pub mod cli;
