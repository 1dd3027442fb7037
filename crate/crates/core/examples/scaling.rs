//! Times relocate scans and phase-one sweeps on growing instances.

use pdtsp_kit::cli::{render_scaling, scaling};

fn main() {
    print!("{}", render_scaling(&scaling(&[128, 256, 512, 1024], 3, 1)));
}
