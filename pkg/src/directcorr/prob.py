"""Exact probability tables over finite alphabets, plus the divergences everything else is built on.

Conventions used throughout the package:

* all logarithms are base 2, with ``0 * log 0 = 0`` by continuity;
* probabilities are 64-bit floats, normalized to 1 within ``NORM_TOL``
  at construction time;
* the Kullback-Leibler divergence returns ``math.inf`` (rather than
  raising) when the second argument has a zero inside the support of the
  first, so downstream measures can report singularity explicitly;
* every table is an immutable value object and every operation is pure,
  so everything here is safe to share across threads.

Axes of a three-variable table are always ordered (X, Y, Z) and named by
the single letters ``"x"``, ``"y"``, ``"z"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Union

import numpy as np

from .errors import (
    InvalidDistribution,
    ShapeMismatch,
    UnknownCategory,
    ZeroTotal,
)

LN2 = math.log(2.0)
NORM_TOL = 1e-12

AXES = "xyz"


@dataclass(frozen=True)
class Alphabet:
    """Ordered category labels of one variable."""

    labels: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) < 1:
            raise InvalidDistribution("alphabet needs at least one label")
        if len(set(labels)) != len(labels):
            raise InvalidDistribution(f"alphabet labels not unique: {labels!r}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownCategory(f"label {label!r} not in alphabet {self.labels!r}") from None

    @classmethod
    def of_size(cls, d: int, prefix: str = "") -> "Alphabet":
        return cls(tuple(f"{prefix}{i}" if prefix else i for i in range(d)))


def _frozen_probs(probs: Iterable, ndim: int) -> np.ndarray:
    arr = np.array(probs, dtype=float)
    if arr.ndim != ndim:
        raise InvalidDistribution(f"expected a {ndim}-dimensional table, got shape {arr.shape}")
    if np.any(arr < 0):
        raise InvalidDistribution("negative probability entry")
    total = float(arr.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
    arr.setflags(write=False)
    return arr


def _check_alphabets(alphabets: Sequence[Alphabet], shape: tuple[int, ...]) -> tuple[Alphabet, ...]:
    alphabets = tuple(alphabets)
    if tuple(a.size for a in alphabets) != shape:
        raise InvalidDistribution(
            f"alphabet sizes {tuple(a.size for a in alphabets)} do not match table shape {shape}"
        )
    return alphabets


@dataclass(frozen=True, eq=False)
class Dist1:
    """Distribution of a single variable."""

    alphabet: Alphabet
    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_probs(self.probs, 1)
        _check_alphabets((self.alphabet,), arr.shape)
        object.__setattr__(self, "probs", arr)


@dataclass(frozen=True, eq=False)
class Joint2:
    """Joint distribution of two variables."""

    alphabets: tuple[Alphabet, Alphabet]
    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_probs(self.probs, 2)
        object.__setattr__(self, "alphabets", _check_alphabets(self.alphabets, arr.shape))
        object.__setattr__(self, "probs", arr)


@dataclass(frozen=True, eq=False)
class Joint3:
    """Joint distribution of three variables (X, Y, Z); the universal input."""

    alphabets: tuple[Alphabet, Alphabet, Alphabet]
    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_probs(self.probs, 3)
        object.__setattr__(self, "alphabets", _check_alphabets(self.alphabets, arr.shape))
        object.__setattr__(self, "probs", arr)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.probs.shape  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class CondTable:
    """Conditional distribution of one target variable given a set of conditioning axes.

    ``table[c..., t]`` holds p(target = t | cond = c) and has one trailing
    axis for the target. ``defined[c...]`` is False exactly where the
    conditioning cell has zero probability; entries of undefined cells are
    stored as zeros and must not be read without consulting the mask.
    Filling undefined cells is the sparse-strategy module's job.
    """

    target: Alphabet
    cond_axes: str
    table: np.ndarray
    defined: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=float)
        d = np.asarray(self.defined, dtype=bool)
        t.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "defined", d)


Distribution = Union[Dist1, Joint2, Joint3, np.ndarray]


def _probs_of(d: Distribution) -> np.ndarray:
    return np.asarray(getattr(d, "probs", d), dtype=float)


def from_counts(counts: Iterable, alphabets: Sequence[Alphabet]) -> Joint3:
    """Empirical joint distribution from a table of nonnegative integer counts."""
    arr = np.asarray(counts, dtype=float)
    if arr.ndim != 3:
        raise InvalidDistribution(f"expected a 3-dimensional count table, got shape {arr.shape}")
    if np.any(arr < 0):
        raise InvalidDistribution("negative count")
    total = float(arr.sum())
    if total == 0:
        raise ZeroTotal("count table is all zeros")
    return Joint3(tuple(alphabets), arr / total)  # type: ignore[arg-type]


def _axes_to_keep(keep: str) -> tuple[int, ...]:
    keep = "".join(sorted(keep.lower(), key=AXES.index))
    if not keep or len(set(keep)) != len(keep) or any(a not in AXES for a in keep):
        raise ValueError(f"invalid axis set {keep!r}; use a subset of 'xyz'")
    return tuple(AXES.index(a) for a in keep)


def marginal(j: Joint3, keep: str) -> Dist1 | Joint2:
    """Sum out the axes of ``j`` not named in ``keep`` (a proper nonempty subset of 'xyz')."""
    kept = _axes_to_keep(keep)
    if len(kept) >= 3:
        raise ValueError("keep must be a proper subset of the three axes")
    drop = tuple(i for i in range(3) if i not in kept)
    arr = j.probs.sum(axis=drop)
    alphas = tuple(j.alphabets[i] for i in kept)
    if len(kept) == 1:
        return Dist1(alphas[0], arr)
    return Joint2(alphas, arr)  # type: ignore[arg-type]


def conditional(j: Joint3, target: str, given: str) -> CondTable:
    """Conditional p(target | given) with a defined-mask over conditioning cells.

    Undefinedness is represented, never raised: cells whose conditioning
    probability is zero are masked out and carry zero entries.
    """
    target = target.lower()
    given_axes = _axes_to_keep(given)
    t_axis = AXES.index(target)
    if t_axis in given_axes:
        raise ValueError("target axis must be disjoint from the conditioning axes")
    # Reorder to (given..., target) then sum out any remaining axis.
    rest = tuple(i for i in range(3) if i != t_axis and i not in given_axes)
    perm = given_axes + rest + (t_axis,)
    arr = j.probs.transpose(perm)
    if rest:
        arr = arr.sum(axis=tuple(range(len(given_axes), len(given_axes) + len(rest))))
    cond_mass = arr.sum(axis=-1)
    defined = cond_mass > 0
    safe = np.where(defined[..., None], np.where(cond_mass[..., None] > 0, cond_mass[..., None], 1.0), 1.0)
    table = np.where(defined[..., None], arr / safe, 0.0)
    return CondTable(
        target=j.alphabets[t_axis],
        cond_axes="".join(sorted(given.lower(), key=AXES.index)),
        table=table,
        defined=defined,
    )


def entropy(d: Distribution) -> float:
    """Shannon entropy in bits."""
    p = _probs_of(d)
    mask = p > 0
    return float(-np.sum(p[mask] * np.log2(p[mask])))


def _pair(p: Distribution, q: Distribution) -> tuple[np.ndarray, np.ndarray]:
    pa, qa = _probs_of(p), _probs_of(q)
    if pa.shape != qa.shape:
        raise ShapeMismatch(f"shapes differ: {pa.shape} vs {qa.shape}")
    return pa, qa


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """Kullback-Leibler divergence D(p || q) in bits; inf when q misses the support of p."""
    pa, qa = _pair(p, q)
    mask = pa > 0
    if np.any(qa[mask] == 0):
        return math.inf
    # difference of logs rather than log of the ratio: immune to the
    # overflow a normal/subnormal entry pair produces
    return float(np.sum(pa[mask] * (np.log2(pa[mask]) - np.log2(qa[mask]))))


def _js_nat_terms(a: np.ndarray, other: np.ndarray, ratio: np.ndarray) -> np.ndarray:
    """Per-cell a * ln(a / m) with m = (a + other) / 2, as an array.

    Near-equal cells go through log1p of (a - m) / m, which stays
    accurate down to ~1e-30 total when the two distributions are nearly
    identical (the sqrt taken by the regularized measures would amplify
    plain-log noise there).  Extreme cells, where that ratio rounds to
    -1, use the direct log difference instead.
    """
    mask = a > 0
    extreme = mask & (np.abs(ratio) >= 0.5)
    near = mask & ~extreme
    out = np.zeros_like(a)
    safe_a = np.where(extreme, a, 1.0)
    safe_m = np.where(extreme, 0.5 * (a + other), 1.0)
    out[extreme] = (a * (np.log(2.0 * safe_a) - np.log(2.0 * safe_m)))[extreme]
    out[near] = (a * np.log1p(np.where(near, ratio, 0.0)))[near]
    return out


def js_divergence(p: Distribution, q: Distribution) -> float:
    """Jensen-Shannon divergence in bits, always in [0, 1]."""
    pa, qa = _pair(p, q)
    m = 0.5 * (pa + qa)
    h = 0.5 * (pa - qa)  # p - m; exact in IEEE arithmetic
    ratio = np.divide(h, m, out=np.zeros_like(m), where=m > 0)
    tp = float(_js_nat_terms(pa, qa, ratio).sum())
    tq = float(_js_nat_terms(qa, pa, -ratio).sum())
    js = (tp + tq) / (2.0 * LN2)
    return min(max(js, 0.0), 1.0)


def sqrt_js(p: Distribution, q: Distribution) -> float:
    """Square root of the Jensen-Shannon divergence: a bounded metric in [0, 1]."""
    return math.sqrt(js_divergence(p, q))


def total_variation(p: Distribution, q: Distribution) -> float:
    """Total variation distance, in [0, 1]."""
    pa, qa = _pair(p, q)
    return 0.5 * float(np.abs(pa - qa).sum())
