//! Numeric defaults shared by the library and the command-line front end.
//!
//! | name                    | value          | used by                     |
//! |-------------------------|----------------|-----------------------------|
//! | `NUM_MODES`             | 64             | harmonic truncation order   |
//! | `REPARAM_DEGREE`        | 8              | boundary density degree     |
//! | `TOLERANCE`             | 1e-10          | relative energy decrease    |
//! | `CONVERGENCE_WINDOW`    | 5              | iterations in the window    |
//! | `MAX_ITER`              | 500            | optimizer iteration cap     |
//! | `FD_STEP`               | 1e-5           | central difference step     |
//! | `ARMIJO`                | 1e-4           | sufficient decrease const   |
//! | `PAIR_GRID`             | 512            | chord-arc pair sampling     |
//! | `ARC_TABLE_SIZE`        | 1024           | arc-length table knots      |
//! | `HOPF_RADII`            | 64             | Hopf fit radial samples     |
//! | `HOPF_ANGLES`           | 256            | Hopf fit angular samples    |
//! | `ZERO_TOL_REL`          | 1e-4           | sign zero band (x(1+abs c)) |
//! | `LIFT_ZERO_REL`         | 1e-6           | lift zero band (x(1+E))     |
//! | `CHARGES_PER_CURVE`     | 64             | modulus solver sources      |
//! | `COLLOCATION_PER_CURVE` | 128            | modulus solver collocation  |
//! | `INNER_SOURCE_SCALE`    | 0.5            | interior source placement   |
//! | `OUTER_SOURCE_SCALE`    | 1.5            | exterior source placement   |
//! | `SVD_CUTOFF`            | 1e-12          | relative singular cutoff    |
//! | `LIPSCHITZ_RINGS`       | 24             | geometric probe rings       |
//! | `HOLDER_SAMPLES`        | 1024           | boundary derivative samples |
//! | `LENGTH_AREA_STEPS`     | 200            | radial steps                |
//! | `ARC_POINTS`            | 512            | points per cross-arc        |
//! | `ALPHA`                 | 0.5            | boundary Hoelder class      |

pub const NUM_MODES: usize = 64;
pub const REPARAM_DEGREE: usize = 8;
pub const TOLERANCE: f64 = 1e-10;
pub const CONVERGENCE_WINDOW: usize = 5;
pub const MAX_ITER: usize = 500;
pub const FD_STEP: f64 = 1e-5;
pub const ARMIJO: f64 = 1e-4;
pub const PAIR_GRID: usize = 512;
pub const ARC_TABLE_SIZE: usize = 1024;
pub const HOPF_RADII: usize = 64;
pub const HOPF_ANGLES: usize = 256;
pub const ZERO_TOL_REL: f64 = 1e-4;
pub const LIFT_ZERO_REL: f64 = 1e-6;
pub const CHARGES_PER_CURVE: usize = 64;
pub const COLLOCATION_PER_CURVE: usize = 128;
pub const INNER_SOURCE_SCALE: f64 = 0.5;
pub const OUTER_SOURCE_SCALE: f64 = 1.5;
pub const SVD_CUTOFF: f64 = 1e-12;
pub const LIPSCHITZ_RINGS: usize = 24;
pub const HOLDER_SAMPLES: usize = 1024;
pub const LENGTH_AREA_STEPS: usize = 200;
pub const ARC_POINTS: usize = 512;
pub const ALPHA: f64 = 0.5;
