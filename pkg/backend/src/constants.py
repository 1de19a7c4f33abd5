import os
from dotenv import load_dotenv

load_dotenv()

TOOL_VERSION = "0.1.0"

# Logging sinks. These never influence computed results.
LOG_LEVEL = os.getenv("BRT_LOG_LEVEL", "WARNING")
LOG_FILE = os.getenv("BRT_LOG_FILE")
OUTPUT_DIR = os.getenv("BRT_OUTPUT_DIR", ".")

# Resource guards
SPECTRUM_MAX_N = 40
EVOLVE_MAX_N = 9
EXACT_EVOLVE_MAX_N = 4
ORACLE_MAX_N = 6
FIX_MOMENT_MAX_P = 4
SEQUENCE_MAX_STEPS = 10**6

# Bound and auxiliary-function numerics
DEFAULT_EPSILON = 0.01
GRID_STEP = 1e-3
MAX_TOLERANCE = 1e-6
REFINE_ROUNDS = 60
INVERSE_TOLERANCE = 1e-14

# Poisson tails are cut once the remaining mass drops below this
POISSON_TAIL_MASS = 1e-15

# Output
FLOAT_DIGITS = 17
CSV_DELIMITER = ","
# Partition cells carry commas
SPECTRUM_CSV_DELIMITER = ";"

# Monte Carlo
DEFAULT_SEED = 20240101
MC_BATCH_SIZE = 10_000
DEFAULT_THREADS = os.cpu_count() or 1

# Zone thresholds as multiples of the half-deck size n
RED_SPLIT = "0.7"
HALF_SPLIT = "0.5"
W_SPLIT_LOW = "1/3"
