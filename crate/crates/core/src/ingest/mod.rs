//! Loading CSV-directory databases and profiling their columns.
//!
//! A database is a directory holding one `<table>.csv` per table. Columns
//! are matched by *name*: a column name that appears in several tables is a
//! single [`ColumnRef`] whose values are pooled across those tables.

mod database;
mod profile;
mod value;

pub use database::{load_database, DatabaseHandle, TableDescriptor};
pub use profile::{list_column_refs, profile_column, ColumnProfile, ColumnRef};
pub use value::{cast_value_to_text, infer_data_type, is_null_cell, DataType, RawValue};
