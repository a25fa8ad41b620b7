"""Numerical defaults for the solvers, checks and oracles."""

# Covariance-matrix tolerances
ANTISYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-8
LOG_CLIP_EPS = 1e-12
# Relative size below which a single-particle level counts as a zero mode
ZERO_MODE_TOL = 1e-12

# Imaginary-time ground-state flow
GROUND_DTAU = 0.01
GROUND_RESIDUAL_TOL = 1e-8
GROUND_MAX_STEPS = 200_000
GROUND_REORTHOGONALIZE_EVERY = 100
GROUND_MAX_DTAU_FACTOR = 10.0
GROUND_GROWTH = 1.1
GROUND_GROWTH_AFTER = 10

# Thermal fixed point and annealing
THERMAL_DAMPING = 0.5
THERMAL_TOL = 1e-9
THERMAL_MAX_ITERS = 10_000
THERMAL_MIN_DAMPING = 1e-3
BETA_STEP = 0.01

# Real-time evolution
DYNAMICS_DT = 0.01
SNAPSHOT_STRIDE = 100

# Oracle size caps (complex modes)
FOCK_MAX_MODES = 12
DENSITY_MAX_MODES = 10
RATE_CHECK_MAX_MODES = 8
ED_DENSE_MAX_MODES = 10
