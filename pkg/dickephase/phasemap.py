"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import errors
from . import hasher
from .__version__ import dickephase_schema_version, dickephase_tool_name, dickephase_tool_version
from .classifier import ClassifierThresholds, PhaseLabel, PhasePoint
from .model import ModelParams, to_angular
from .semiclassical import IntegratorSettings
from .utils import is_strictly_increasing

STATUS_OK = "ok"
STATUS_RETRIED = "retried"
STATUS_ERROR_PREFIX = "error: "


@dataclass(frozen=True)
class SweepGrid:
    """
    the (ratio, lambda_max) grid of a phase diagram and everything that is held fixed across it

    ratio_axis -- lambda_+/lambda_- values in [0, 2], strictly increasing (row index i)
    lambda_axis -- max(lambda_+, lambda_-) in rad/s, strictly increasing (column index j)
    base -- omega, omega0 and kappa, the couplings of base are ignored
    seed -- global seed, None for the deterministic real perturbation in every cell
    """

    ratio_axis: Tuple[float, ...]
    lambda_axis: Tuple[float, ...]
    base: ModelParams
    integrator: IntegratorSettings = IntegratorSettings()
    thresholds: ClassifierThresholds = ClassifierThresholds()
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "ratio_axis", tuple(float(r) for r in self.ratio_axis))
        object.__setattr__(self, "lambda_axis", tuple(float(x) for x in self.lambda_axis))
        object.__setattr__(self, "base", self.base.with_couplings(0.0, 0.0))
        if len(self.ratio_axis) == 0 or len(self.lambda_axis) == 0:
            raise errors.ParameterError("sweep axes must not be empty")
        if not is_strictly_increasing(self.ratio_axis) or not is_strictly_increasing(self.lambda_axis):
            raise errors.ParameterError("sweep axes must be strictly increasing")
        if self.ratio_axis[0] < 0 or self.ratio_axis[-1] > 2:
            raise errors.ParameterError("coupling ratios must lie in [0, 2]")
        if self.lambda_axis[0] < 0:
            raise errors.ParameterError("lambda_max must not be negative")
        if self.seed is not None and self.seed < 0:
            raise errors.ParameterError(f"seed must not be negative, got {self.seed}")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.ratio_axis), len(self.lambda_axis)

    def indices(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.shape[0]) for j in range(self.shape[1])]

    def model_at(self, i, j) -> ModelParams:
        return self.base.with_ratio(self.ratio_axis[i], self.lambda_axis[j])

    def cell_seed(self, i, j) -> Optional[int]:
        if self.seed is None:
            return None
        return hasher.cell_seed(self.seed, i, j)

    def to_payload(self) -> dict:
        return {
            "ratio_axis": list(self.ratio_axis),
            "lambda_axis": list(self.lambda_axis),
            "base": dataclasses.asdict(self.base),
            "integrator": dataclasses.asdict(self.integrator),
            "thresholds": dataclasses.asdict(self.thresholds),
            "seed": self.seed,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SweepGrid":
        return cls(
            ratio_axis=tuple(payload["ratio_axis"]),
            lambda_axis=tuple(payload["lambda_axis"]),
            base=ModelParams(**payload["base"]),
            integrator=IntegratorSettings(**payload["integrator"]),
            thresholds=ClassifierThresholds(**payload["thresholds"]),
            seed=payload["seed"],
        )

    def config_hash(self) -> str:
        return hasher.config_hash(self.to_payload())


def default_grid(base: ModelParams, integrator=IntegratorSettings(), thresholds=ClassifierThresholds(), seed=None):
    """ratio 0..2 in 81 steps, lambda_max 0..2pi x 150 kHz in 76 steps"""
    return SweepGrid(
        ratio_axis=tuple(np.linspace(0.0, 2.0, 81)),
        lambda_axis=tuple(np.linspace(0.0, to_angular(150.0), 76)),
        base=base,
        integrator=integrator,
        thresholds=thresholds,
        seed=seed,
    )


@dataclass(frozen=True)
class SweepCell:
    point: PhasePoint
    horizon: float
    status: str = STATUS_OK

    @property
    def failed(self) -> bool:
        return self.status.startswith(STATUS_ERROR_PREFIX)

    @property
    def needs_work(self) -> bool:
        return self.point.label is PhaseLabel.UNRESOLVED


@dataclass(frozen=True)
class Provenance:
    tool_name: str
    tool_version: str
    config_hash: str
    created: str
    completed: Optional[str] = None
    schema_version: int = dickephase_schema_version

    @classmethod
    def new(cls, grid: SweepGrid, created: str) -> "Provenance":
        return cls(dickephase_tool_name, dickephase_tool_version, grid.config_hash(), created)


@dataclass
class PhaseMap:
    """
    classified grid cells, cells[(i, j)] for ratio index i and lambda index j

    a map being computed or resumed has cells missing, a complete one has every cell
    """

    grid: SweepGrid
    provenance: Provenance
    cells: Dict[Tuple[int, int], SweepCell] = field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.grid.shape

    @property
    def is_complete(self) -> bool:
        return len(self.cells) == self.shape[0] * self.shape[1]

    def missing(self) -> List[Tuple[int, int]]:
        return [index for index in self.grid.indices() if index not in self.cells]

    def pending(self) -> List[Tuple[int, int]]:
        """cells a resume has to compute: missing or unresolved"""
        return [index for index in self.grid.indices() if index not in self.cells or self.cells[index].needs_work]

    def labels(self) -> np.ndarray:
        """2-D array of PhaseLabel, None where a cell is missing"""
        result = np.empty(self.shape, dtype=object)
        for (i, j), cell in self.cells.items():
            result[i, j] = cell.point.label
        return result

    def label_counts(self) -> Dict[PhaseLabel, int]:
        counts = {label: 0 for label in PhaseLabel}
        for cell in self.cells.values():
            counts[cell.point.label] += 1
        return counts
