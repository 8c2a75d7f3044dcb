"""Run configuration shared by the engines and the CLI."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class Config:
    precision_bits: int = 64
    relation_max_len: int = 14
    ball_n_max: int = 12
    memory_budget_elements: int = 10**7
    trial_division_bound: int = 10**6
    # exponents tried when reducing a homothety pair to a common ratio
    reduction_bound: int = 12
    # positive-word length explored on each reduced pair
    reduced_max_len: int = 8
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("workers")
        return out


DEFAULT = Config()
