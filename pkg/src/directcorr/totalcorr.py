"""Total (not-necessarily-direct) correlation measures between X and Y."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from .errors import DegenerateVariable, SingularDenominator
from .prob import Alphabet, Dist1, Joint2, Joint3, entropy, js_divergence, marginal


@dataclass(frozen=True)
class NumericEncoding:
    """Real values assigned to the labels of one or more alphabets.

    Needed only by the linear measures (Pearson and partial correlation);
    defaults to the ordinal position 0, 1, 2, ... of each label.
    """

    values: Mapping[Alphabet, tuple[float, ...]]

    def codes(self, alphabet: Alphabet) -> np.ndarray:
        vals = self.values.get(alphabet)
        if vals is None:
            return np.arange(alphabet.size, dtype=float)
        arr = np.asarray(vals, dtype=float)
        if arr.shape != (alphabet.size,) or not np.all(np.isfinite(arr)):
            raise ValueError(f"encoding for {alphabet.labels!r} must be {alphabet.size} finite values")
        return arr

    @classmethod
    def ordinal(cls) -> "NumericEncoding":
        return cls(values={})

    @classmethod
    def explicit(
        cls, mapping: Mapping[Alphabet, Sequence[float]] | Mapping[Alphabet, Mapping[Hashable, float]]
    ) -> "NumericEncoding":
        fixed: dict[Alphabet, tuple[float, ...]] = {}
        for alphabet, vals in mapping.items():
            if isinstance(vals, Mapping):
                fixed[alphabet] = tuple(float(vals[lab]) for lab in alphabet.labels)
            else:
                fixed[alphabet] = tuple(float(v) for v in vals)
        return cls(values=fixed)


DEFAULT_ENCODING = NumericEncoding.ordinal()


def pcc(j: Joint2, enc: NumericEncoding = DEFAULT_ENCODING) -> float:
    """Pearson correlation coefficient of the two encoded variables, in [-1, 1]."""
    xv = enc.codes(j.alphabets[0])
    yv = enc.codes(j.alphabets[1])
    p = j.probs
    px = p.sum(axis=1)
    py = p.sum(axis=0)
    ex = float(px @ xv)
    ey = float(py @ yv)
    exy = float(xv @ p @ yv)
    vx = float(px @ (xv * xv)) - ex * ex
    vy = float(py @ (yv * yv)) - ey * ey
    if vx <= 0 or vy <= 0:
        raise DegenerateVariable("a variable is constant under its encoding; PCC undefined")
    return (exy - ex * ey) / math.sqrt(vx * vy)


def partial_correlation(jxyz: Joint3, enc: NumericEncoding = DEFAULT_ENCODING) -> float:
    """Direct linear correlation of X and Y with Z partialled out, in [-1, 1]."""
    cxy = pcc(marginal(jxyz, "xy"), enc)  # type: ignore[arg-type]
    cxz = pcc(marginal(jxyz, "xz"), enc)  # type: ignore[arg-type]
    cyz = pcc(marginal(jxyz, "yz"), enc)  # type: ignore[arg-type]
    dx = 1.0 - cxz * cxz
    dy = 1.0 - cyz * cyz
    if dx <= 0 or dy <= 0:
        raise SingularDenominator("a conditioning correlation has magnitude 1; PC undefined")
    return (cxy - cxz * cyz) / math.sqrt(dx * dy)


def mutual_information(j: Joint2) -> float:
    """Mutual information H(X) + H(Y) - H(X,Y), in bits (never negative)."""
    hx = entropy(Dist1(j.alphabets[0], j.probs.sum(axis=1)))
    hy = entropy(Dist1(j.alphabets[1], j.probs.sum(axis=0)))
    return max(hx + hy - entropy(j), 0.0)


@dataclass(frozen=True)
class NormalizedMi:
    """Directional normalized mutual information; ``max`` is the larger direction."""

    to_y: float
    to_x: float
    max: float


def normalized_mi(j: Joint2) -> NormalizedMi:
    """Mutual information as a fraction of each variable's own entropy.

    A direction whose denominator entropy is zero carries no uncertainty
    to explain, so that component is defined as 0.
    """
    mi = mutual_information(j)
    hx = entropy(Dist1(j.alphabets[0], j.probs.sum(axis=1)))
    hy = entropy(Dist1(j.alphabets[1], j.probs.sum(axis=0)))
    to_y = mi / hy if hy > 0 else 0.0
    to_x = mi / hx if hx > 0 else 0.0
    return NormalizedMi(to_y=min(to_y, 1.0), to_x=min(to_x, 1.0), max=min(max(to_y, to_x), 1.0))


def regularized_mi(j: Joint2) -> float:
    """Root-JS distance between p(x,y) and the product of its marginals, in [0, 1).

    Zero exactly when X and Y are independent; the supports of the joint
    and the product always overlap, so the value 1 is never attained.
    """
    px = j.probs.sum(axis=1)
    py = j.probs.sum(axis=0)
    return math.sqrt(js_divergence(j.probs, np.outer(px, py)))
