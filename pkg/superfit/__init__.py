from .version import __version__
from .errors import (SuperFitError, RingMismatchError, HomogeneityError, ParseError,
                     DimensionError, ZeroAnnihilatorError, ResourceLimitError)
from .superpoly import SuperRing, SuperPoly, TermOrder, parse_poly, format_poly
from .groebner import Ideal, GroebnerBasis, buchberger, ideal_contains, ideal_equal
from .supermodule import GradedFreeModule, GradedMatrix, annihilator, syzygies
from .schur import Partition, lambda_de, hook_schur_dim, cauchy_check
from .report import Report, Status
from .fitting import (GenericSetup, generic_setup, DoubleTableau, LieGenerator, Side,
                      IdealMethod, ideal_I_lambda, corollary2_Z)
from .resolution import (BettiTable, ConjecturePrediction, ConjectureReading, Resolution,
                         resolve, resolve_complex, predict_conjecture41, compare)
from .core.executor import ExecutionMode, SweepExecutor, Task, TaskType
from .core.limits import ComputeLimits
from .core.records import ExperimentRecord, RecordLog
