"""Budgets for enumerations and factorization.

``HYPERSYM_BUDGET`` in the environment, when set to a positive integer,
replaces every default below.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_VAR = "HYPERSYM_BUDGET"


@dataclass(frozen=True)
class Budgets:
    trial_division_bound: int = 10**7
    smoothness_pairs: int = 10**6
    brute_force_tuples: int = 200**3
    coset_elements: int = 10**5

    @classmethod
    def from_env(cls, environ=None) -> "Budgets":
        raw = (os.environ if environ is None else environ).get(ENV_VAR)
        if not raw:
            return cls()
        value = int(raw)
        if value < 1:
            raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
        return replace(
            cls(),
            trial_division_bound=value,
            smoothness_pairs=value,
            brute_force_tuples=value,
            coset_elements=value,
        )
