# config.py
# Central configuration for the substitution-driven quantum Turing machine runs.
# Every value here can be overridden per run from the command line (see scripts/cli.py)
# or from a JSON config file passed with --config.

import math

# --- Output Configuration ---
# Directory where data files (CSV/JSON) and their .meta.json sidecars are written.
OUTPUT_DIR = "data"

# --- Substitution Sequence Configuration ---
# Maximum number of letters a substitution word may reach.
# n = 10000 network steps needs only 5000 letters, so 2^20 leaves plenty of room.
MAX_WORD_LENGTH = 2 ** 20

# Reduction applied after every addition of the chaotic Fibonacci rule: "mod_2pi" or "none".
# Unreduced angles lose all precision after a few dozen steps.
DEFAULT_REDUCTION = "mod_2pi"

# --- Simulation Configuration ---
DEFAULT_STEPS = 10000       # Total network steps
DEFAULT_RECORD_EVERY = 1    # Trajectory cadence, in steps

# Numerical tolerances
NORM_TOLERANCE = 1e-12      # Unitarity and density-matrix validity
ORACLE_TOLERANCE = 1e-10    # Simulated head Bloch vector vs closed form

# --- Pattern Configuration ---
# Greedy clustering radius in the (sigma2, sigma3) plane of the Turing head.
PATTERN_TOLERANCE = 1e-6
# Distinct head points allowed when alpha1 == alpha2 (pattern collapse).
PATTERN_COLLAPSE_MAX = 30
# Distinct head points required in the alpha2 = alpha1 + 0.05 pi regime.
PATTERN_SPREAD_MIN = 100

# --- Sensitivity Configuration ---
FLAT_THRESHOLD = 1e-4        # max D^2 over the whole trace below this -> "flat"
EXP_THRESHOLD = 0.05         # least-squares slope of ln D^2 per step at or above this -> "exponential"
SATURATION_THRESHOLD = 0.1   # the fit window ends at the first D^2 reaching this value
NUMERICAL_FLOOR = 1e-14      # D^2 values below this are ignored by the fit
MIN_FIT_POINTS = 10          # usable points needed in the fit window

# Randomized metric checks of the verification suite
METRIC_SAMPLES = 1000
RANDOM_SEED = 20240601

# --- Named Run Configuration ---
# Named runs executed by the numbered scripts and the main pipeline.
# The key is the run id used for output file names.
ALPHA_1 = 2 * math.pi / 5

NAMED_RUNS = {
    "qf_pattern_0005": {"name": "qf pattern, alpha2 = alpha1 + 0.0005 pi", "command": "pattern",
              "schedule": "qf", "alpha1": ALPHA_1, "alpha2": ALPHA_1 + 0.0005 * math.pi},
    "qf_pattern_003": {"name": "qf pattern, alpha2 = alpha1 + 0.03 pi", "command": "pattern",
              "schedule": "qf", "alpha1": ALPHA_1, "alpha2": ALPHA_1 + 0.03 * math.pi},
    "qf_pattern_005": {"name": "qf pattern, alpha2 = alpha1 + 0.05 pi", "command": "pattern",
              "schedule": "qf", "alpha1": ALPHA_1, "alpha2": ALPHA_1 + 0.05 * math.pi},
    "tm_pattern_01001": {"name": "tm pattern, alpha2 = alpha1 + 0.1001 pi", "command": "pattern",
              "schedule": "tm", "alpha1": ALPHA_1, "alpha2": ALPHA_1 + 0.1001 * math.pi},
    "qf_pattern_collapse": {"name": "qf pattern, alpha2 = alpha1 (point manifold)", "command": "pattern",
                      "schedule": "qf", "alpha1": ALPHA_1, "alpha2": ALPHA_1},
    "qf_initial": {"name": "qf sensitivity, initial head rotation delta = 0.001", "command": "sensitivity",
                    "schedule": "qf", "alpha1": ALPHA_1, "alpha2": ALPHA_1 + 0.03 * math.pi,
                    "perturb": "initial:0.001"},
    "qf_params": {"name": "qf sensitivity, alpha1' = alpha1 + 0.001 pi, alpha2' = alpha2 + 0.001 pi",
                    "command": "sensitivity", "schedule": "qf", "alpha1": ALPHA_1,
                    "alpha2": ALPHA_1 + 0.03 * math.pi, "perturb": "params:0.001pi,0.001pi"},
    "regular_initial": {"name": "regular sensitivity, initial head rotation delta = 0.001", "command": "sensitivity",
                       "schedule": "regular", "alpha1": ALPHA_1, "alpha2": ALPHA_1,
                       "perturb": "initial:0.001"},
    "cf_initial": {"name": "chaotic Fibonacci sensitivity, initial head rotation delta = 0.001",
                  "command": "sensitivity", "schedule": "cf", "alpha1": ALPHA_1,
                  "alpha2": ALPHA_1 + 0.03 * math.pi, "perturb": "initial:0.001"},
    # Add more runs as needed, e.g.:
    # "tm_params": {"name": "tm sensitivity", "command": "sensitivity", "schedule": "tm", ...},
}

# --- Logging Configuration (Simplified) ---
LOG_LEVEL = "INFO" # "DEBUG", "INFO", "WARNING", "ERROR"

# --- Sanity Checks ---
if DEFAULT_REDUCTION not in ("mod_2pi", "none"):
    print("CRITICAL: DEFAULT_REDUCTION in config.py must be 'mod_2pi' or 'none'.")

if FLAT_THRESHOLD >= SATURATION_THRESHOLD:
    print("WARNING: FLAT_THRESHOLD should be well below SATURATION_THRESHOLD in config.py, "
          "otherwise every saturating trace is classified as flat.")

if MAX_WORD_LENGTH < (DEFAULT_STEPS + 1) // 2:
    print("CRITICAL: MAX_WORD_LENGTH in config.py is too small for DEFAULT_STEPS.")
