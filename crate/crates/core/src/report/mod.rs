//! Run configuration, convergence tables, the curves report and the oracle
//! suite used by the command line tool.

mod check;
mod config;
mod decimal;
mod table;

pub use check::{
    check_admissibility, check_euler, check_necklace, check_ratio_identity, check_structure, check_volume,
    random_config, random_configs, run_check, volume_configs, CheckGrid, CheckReport, OracleResult, Scale,
};
pub use config::{
    FibreConfig, OutputFormat, PointConfig, RamificationEntry, RunConfig, TypeDataConfig, DEFAULT_MAX_PER_DEGREE,
};
pub use decimal::{format_quad, format_rational};
pub use table::{
    build_convergence_table, curves_to_csv, level_values, optimal_curves_report, points_per_genus, table_to_csv,
    to_json, CurveRow, LevelValues, TableRow, CURVE_COLUMNS, NONE_ADMISSIBLE, TABLE_COLUMNS,
};
