"""System data model, malfunction split and rank-based controllability."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class ResilienceError(Exception):
    """Base class for domain errors raised by this package."""


class ValidationError(ResilienceError, ValueError):
    """Input data violates a documented invariant.

    ``field`` names the offending input so callers (and the CLI) can report it.
    """

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class SpecParseError(ResilienceError, ValueError):
    pass


class NotControllableError(ResilienceError):
    pass


class NumericalFailure(ResilienceError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Numerical knobs shared by every solver-backed routine."""

    feas_tol: float = 1e-10
    rank_tol: float = 1e-9
    lambda_min_tol: float = 1e-9
    vertex_cap: int = 20

    def __post_init__(self):
        for name in ("feas_tol", "rank_tol", "lambda_min_tol"):
            if not getattr(self, name) > 0:
                raise ValidationError(name, "must be positive")
        if self.vertex_cap < 1:
            raise ValidationError("vertex_cap", "must be positive")


DEFAULT_TOL = Tolerances()


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SystemSpec:
    """Driftless plant ``x' = b_bar @ u`` with ``|u_i| <= u_max``."""

    b_bar: np.ndarray
    u_max: float = 1.0
    n: int = field(init=False)
    num_inputs: int = field(init=False)

    def __post_init__(self):
        b = np.asarray(self.b_bar, dtype=float)
        if b.ndim != 2 or b.shape[0] < 1 or b.shape[1] < 1:
            raise ValidationError("b_bar", f"expected a non-empty 2-D matrix, got shape {b.shape}")
        if not np.all(np.isfinite(b)):
            raise ValidationError("b_bar", "entries must be finite")
        if not (math.isfinite(self.u_max) and self.u_max > 0):
            raise ValidationError("u_max", f"must be a positive finite number, got {self.u_max}")
        object.__setattr__(self, "b_bar", _frozen(b))
        object.__setattr__(self, "u_max", float(self.u_max))
        object.__setattr__(self, "n", b.shape[0])
        object.__setattr__(self, "num_inputs", b.shape[1])

    def __eq__(self, other):
        if not isinstance(other, SystemSpec):
            return NotImplemented
        return self.u_max == other.u_max and np.array_equal(self.b_bar, other.b_bar)

    def __hash__(self):
        return hash((self.u_max, self.b_bar.shape, self.b_bar.tobytes()))

    def scaled(self, s: float) -> "SystemSpec":
        return SystemSpec(self.b_bar * s, self.u_max)

    def to_dict(self, lost: Sequence[int] | None = None) -> dict:
        out = {"n": self.n, "u_max": self.u_max, "b_bar": self.b_bar.tolist()}
        if lost is not None:
            out["lost"] = [int(i) for i in lost]
        return out


@dataclass(frozen=True, eq=False)
class MalfunctionSplit:
    """``b_bar = [b c]`` up to column order; ``c`` holds the lost actuators."""

    system: SystemSpec
    lost: tuple[int, ...]
    b: np.ndarray
    c: np.ndarray

    @property
    def kept(self) -> tuple[int, ...]:
        lost = set(self.lost)
        return tuple(j for j in range(self.system.num_inputs) if j not in lost)

    @property
    def m(self) -> int:
        return self.b.shape[1]

    @property
    def p(self) -> int:
        return self.c.shape[1]

    @property
    def u_max(self) -> float:
        return self.system.u_max

    def merge(self) -> np.ndarray:
        """Re-interleave ``b`` and ``c`` into the original column order."""
        out = np.empty((self.system.n, self.system.num_inputs))
        out[:, list(self.kept)] = self.b
        out[:, list(self.lost)] = self.c
        return out


def split(sys: SystemSpec, lost: Sequence[int]) -> MalfunctionSplit:
    idx = [int(i) for i in lost]
    if not idx:
        raise ValidationError("lost", "at least one lost column is required")
    if len(set(idx)) != len(idx):
        raise ValidationError("lost", f"duplicate column index in {idx}")
    bad = [i for i in idx if not 0 <= i < sys.num_inputs]
    if bad:
        raise ValidationError("lost", f"index {bad[0]} out of range for {sys.num_inputs} inputs")
    if len(idx) >= sys.num_inputs:
        raise ValidationError("lost", "no controlled columns left")
    idx.sort()
    kept = [j for j in range(sys.num_inputs) if j not in set(idx)]
    return MalfunctionSplit(sys, tuple(idx), _frozen(sys.b_bar[:, kept]), _frozen(sys.b_bar[:, idx]))


def matrix_rank(m, rel_tol: float = DEFAULT_TOL.rank_tol) -> int:
    """Numerical rank by Gaussian elimination with complete pivoting.

    A pivot counts when its magnitude exceeds ``rel_tol`` times the first
    (largest) pivot.
    """
    if not rel_tol > 0:
        raise ValidationError("rel_tol", "must be positive")
    a = np.array(m, dtype=float)
    if a.size == 0:
        return 0
    rows, cols = a.shape
    first = None
    rank = 0
    for k in range(min(rows, cols)):
        sub = np.abs(a[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        piv = sub[i, j]
        if first is None:
            first = piv
            if first == 0:
                return 0
        if piv <= rel_tol * first:
            break
        i += k
        j += k
        a[[k, i], :] = a[[i, k], :]
        a[:, [k, j]] = a[:, [j, k]]
        f = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(f, a[k, k:])
        rank += 1
    return rank


def is_controllable(sys: SystemSpec, tol: Tolerances = DEFAULT_TOL) -> bool:
    # driftless with a symmetric input box: controllable iff full row rank
    return matrix_rank(sys.b_bar, tol.rank_tol) == sys.n


def system_from_dict(data: dict) -> SystemSpec:
    if not isinstance(data, dict):
        raise SpecParseError("system spec must be a JSON object")
    for key in ("n", "u_max", "b_bar"):
        if key not in data:
            raise ValidationError(key, "missing field")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError("n", f"must be a positive integer, got {n!r}")
    u_max = data["u_max"]
    if isinstance(u_max, bool) or not isinstance(u_max, (int, float)):
        raise ValidationError("u_max", f"must be a number, got {u_max!r}")
    rows = data["b_bar"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValidationError("b_bar", "must be a non-empty list of rows")
    if len(rows) != n:
        raise ValidationError("b_bar", f"has {len(rows)} rows but n = {n}")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ValidationError("b_bar", "rows must be non-empty and of equal length")
    for r in rows:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValidationError("b_bar", f"non-finite or non-numeric entry {v!r}")
    return SystemSpec(np.array(rows, dtype=float), float(u_max))


def load_system(spec_text: str) -> SystemSpec:
    """Parse the JSON system format ``{"n", "u_max", "b_bar", ["lost"]}``."""
    return load_system_and_lost(spec_text)[0]


def load_system_and_lost(spec_text: str) -> tuple[SystemSpec, list[int] | None]:
    try:
        data = json.loads(spec_text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc}") from None
    sys = system_from_dict(data)
    lost = data.get("lost")
    if lost is not None:
        if not isinstance(lost, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in lost):
            raise ValidationError("lost", "must be a list of integers")
        split(sys, lost)  # validates
    return sys, lost
