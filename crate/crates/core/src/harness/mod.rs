//! Experiment configs, runners and CSV/JSON records.

mod config;
mod record;
mod run;

pub use config::{parse_int_list, Experiment, ExperimentConfig, Format};
pub use record::{
    DesignBoundRow, ExperimentRecord, ExpressibilityRow, Fig3Row, Fig4Row, LayerFit, Rows,
    SkippedRow, SpectrumRow,
};
pub use run::{
    median, run, run_design_bound, run_expressibility, run_fig3, run_fig4, run_gradvar,
    run_spectrum,
};
