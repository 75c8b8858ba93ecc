"""Selector configuration shared by the ranking, evaluation, and CLI layers."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .measures import BinningPolicy

SELECTOR_VARIANTS = ("ifs", "mifs", "sifs", "mrmr")
ALPHA_GRID = tuple(round(0.1 * i, 1) for i in range(11))
COST_GRID = (0.01, 0.1, 1.0, 10.0, 100.0)

# Preprocessing that works best with each variant's relevance measure:
# dispersion-based selectors want features on a common [0, 1] range, while
# the label-information selectors want standardized features.
_AUTO_PREPROCESSING = {"ifs": "normalize", "mifs": "normalize", "sifs": "standardize", "mrmr": "standardize"}


@dataclass(frozen=True)
class SelectorConfig:
    """Settings for one feature-selection run.

    ``alpha`` is either a float in [0, 1] or the string ``"cv"`` asking the
    evaluation harness to pick it by cross validation. ``preprocessing``
    may be ``"auto"``, which resolves per variant.
    """

    variant: str = "mifs"
    alpha: float | str = 0.5
    c: float = 0.9
    preprocessing: str = "auto"
    binning: BinningPolicy = field(default_factory=BinningPolicy)
    seed: int = 0

    def __post_init__(self):
        if self.variant not in SELECTOR_VARIANTS:
            raise ConfigError(
                f"unknown variant {self.variant!r}; expected one of {SELECTOR_VARIANTS}"
            )
        if isinstance(self.alpha, str):
            if self.alpha != "cv":
                raise ConfigError(f"alpha must be a number in [0, 1] or 'cv', got {self.alpha!r}")
        else:
            object.__setattr__(self, "alpha", float(self.alpha))
            if not 0.0 <= self.alpha <= 1.0:
                raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        object.__setattr__(self, "c", float(self.c))
        if not 0.0 < self.c < 1.0:
            raise ConfigError(f"regularization fraction c must be in (0, 1), got {self.c}")
        if self.preprocessing not in ("none", "normalize", "standardize", "auto"):
            raise ConfigError(f"unknown preprocessing {self.preprocessing!r}")

    @property
    def resolved_preprocessing(self) -> str:
        if self.preprocessing == "auto":
            return _AUTO_PREPROCESSING[self.variant]
        return self.preprocessing

    @property
    def fixed_alpha(self) -> float:
        """The numeric alpha; raises if alpha is deferred to cross validation."""
        if isinstance(self.alpha, str):
            raise ConfigError("alpha is 'cv'; it must be resolved by cross validation first")
        return self.alpha

    def with_alpha(self, alpha: float) -> "SelectorConfig":
        return replace(self, alpha=alpha)
