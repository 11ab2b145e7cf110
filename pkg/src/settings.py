import numpy as np
import numpy.typing as npt

type Vector = npt.NDArray[np.float64]
type SizeWindow = tuple[int, int]

TOOL_NAME = "lmg-fidelity"
TOOL_VERSION = "0.1.0"

# eigensolver
DEFAULT_TOL = 1e-12
DENSE_CAP = 4096
DEGENERACY_FACTOR = 100
KRYLOV_RESTART_FACTOR = 50

# fidelity
DEFAULT_DELTA_H = 1e-4
CRITICAL_DELTA_H = 1e-5
CRITICAL_WINDOW = 0.05
CONVERGENCE_RTOL = 1e-4

# scaling
H_C = 1.0
PEAK_TOL_H = 1e-6
PEAK_BUDGET = 40
PEAK_SAMPLES = 9
PEAK_BRACKET_SCALE = 10.0
PEAK_BRACKET_FLOOR = 0.05
NU_SCAN = (0.3, 1.0, 0.005)
COLLAPSE_GRID_POINTS = 200
COLLAPSE_HALF_WIDTH = 3.0
COLLAPSE_WINDOW_EXPONENT = 2 / 3
COLLAPSE_SAMPLES = 41

# allowed |alpha - expected| per phase convention
ALPHA_TOLERANCE = {"symmetric": 0.1, "broken": 0.05}

DESK_SIZES = [2**n for n in range(8, 17)]
TABLE_GAMMAS = [0.8, 0.5, 0.2, 0.0, -0.2, -0.5]
TABLE_WINDOWS: list[SizeWindow] = [(2**8, 2**16), (2**12, 2**16)]

CSV_FLOAT_FORMAT = ".17g"
