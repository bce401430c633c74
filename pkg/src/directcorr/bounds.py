"""Achievable upper bounds of the regularized measures under the observed p(x,z).

The trivial upper bound of every root-JS measure is 1, but the maximum
attainable by joints sharing the observed (x,z) marginal is usually far
below 1 and depends on the marginals and alphabet sizes.  This module
computes that achievable bound by exhaustively evaluating a candidate
family: every deterministic coupling y = f(x,z) (each keeps p(x,z)
bitwise and concentrates each cell's mass on a single y), plus the
observed joint itself, which trivially shares its own marginals and
keeps the bound a true upper bound of the reported value.

Evaluation conventions, chosen to keep the bound scale meaningful:

* measures of two-variable objects (the (x,y) marginal for rmi, the
  do-rows for nace / race / rmi_do) use the standard divergences;
* measures comparing a three-variable candidate against its own
  reconstruction (rcmi, rpmi, ricmi_*) accumulate the JS sums over the
  candidate's support pattern only.  For a full-support candidate this
  is exactly the plain measure; for a deterministic coupling it scores
  the divergence on the outcome pattern the coupling can realize, which
  keeps the bound on the scale of the observed values instead of the
  near-saturated values any deterministic table produces off-support.

f is irrelevant on zero-mass (x,z) cells, so those are canonicalized to
y = 0 and only supported cells are enumerated; the enumeration refuses
(rather than sampling) beyond the configured cap, because the bound is
an exact maximum over the family.  Enumeration indices decode
independently, so the index range can be partitioned across workers and
reduced by max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ExplosionGuard, UnknownMeasure
from .prob import LN2, Joint3, _js_nat_terms
from .sparse import DEFAULT_STRATEGY, SparseStrategy

BOUND_MEASURES = (
    "rmi",
    "rcmi",
    "rpmi",
    "ricmi_xy",
    "ricmi_yx",
    "ricmi_two",
    "nace",
    "race",
    "rmi_do",
)

DEFAULT_CAP = 2**24
_CHUNK = 8192


def rmi_max_uniform(k: int) -> float:
    """Closed-form maximum of the regularized MI for uniform marginals of size k.

    This is the root-JS distance between the identity coupling y = x on a
    uniform k-letter alphabet and the product of its marginals.  Monotone
    increasing in k, 0 at k = 1, and approaching 1 as k grows.
    """
    if k < 1:
        raise ValueError("alphabet size must be >= 1")
    kf = float(k)
    inner = math.log2(2.0 * kf / (kf + 1.0)) + math.log2(2.0 / (kf + 1.0)) / kf + (1.0 - 1.0 / kf)
    return math.sqrt(max(inner, 0.0) / 2.0)


@dataclass(frozen=True, eq=False)
class Coupling:
    """One deterministic map f:(x,z) -> y together with its induced joint."""

    fmap: np.ndarray  # (d_X, d_Z) int; 0 on unsupported cells
    joint: Joint3


class CouplingIterator:
    """Enumerator over the deterministic couplings compatible with a base joint.

    ``len()`` is the number of distinct couplings actually enumerated
    (d_Y to the number of supported (x,z) cells); ``total_raw`` is the
    naive count d_Y ** (d_X * d_Z) before canonicalization.
    """

    def __init__(self, base: Joint3, cap: int = DEFAULT_CAP):
        self.base = base
        self.pxz = base.probs.sum(axis=1)
        self.d_x, self.d_y, self.d_z = base.shape
        self.cells: list[tuple[int, int]] = [
            (x, z) for x in range(self.d_x) for z in range(self.d_z) if self.pxz[x, z] > 0
        ]
        self.total_raw = self.d_y ** (self.d_x * self.d_z)
        count = self.d_y ** len(self.cells)
        if count > cap:
            raise ExplosionGuard(
                f"{count} couplings exceed the cap of {cap}; raise the cap to enumerate anyway"
            )
        self._count = count

    def __len__(self) -> int:
        return self._count

    def digits(self, index: int) -> list[int]:
        out = []
        for _ in self.cells:
            out.append(index % self.d_y)
            index //= self.d_y
        return out

    def at(self, index: int) -> Coupling:
        if not 0 <= index < self._count:
            raise IndexError(index)
        fmap = np.zeros((self.d_x, self.d_z), dtype=int)
        probs = np.zeros((self.d_x, self.d_y, self.d_z))
        for (x, z), y in zip(self.cells, self.digits(index)):
            fmap[x, z] = y
            probs[x, y, z] = self.pxz[x, z]
        fmap.setflags(write=False)
        return Coupling(fmap=fmap, joint=Joint3(self.base.alphabets, probs))

    def __iter__(self) -> Iterator[Coupling]:
        return (self.at(i) for i in range(self._count))

    def digits_chunk(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        powers = self.d_y ** np.arange(len(self.cells), dtype=np.int64)
        return (idx[:, None] // powers[None, :]) % self.d_y

    def joints_chunk(self, digits: np.ndarray) -> np.ndarray:
        """Stack of coupling joints, shape (n, d_X, d_Y, d_Z)."""
        n = digits.shape[0]
        q = np.zeros((n, self.d_x, self.d_y, self.d_z))
        rng = np.arange(n)
        for c, (x, z) in enumerate(self.cells):
            q[rng, x, digits[:, c], z] = self.pxz[x, z]
        return q


def enumerate_couplings(j: Joint3, cap: int = DEFAULT_CAP) -> CouplingIterator:
    return CouplingIterator(j, cap=cap)


@dataclass(frozen=True)
class BoundReport:
    """Achievable upper bound of one measure and the coupling attaining it.

    ``argmax_fmap`` is None when the observed joint itself attains the
    maximum of the candidate family.
    """

    measure: str
    max_value: float
    argmax_fmap: tuple[tuple[int, ...], ...] | None
    n_enumerated: int


# ---------------------------------------------------------------------------
# Batched kernels over a stack of candidate joints (leading axis = candidate).
# ---------------------------------------------------------------------------


def _js_dense(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    axes = tuple(range(1, p.ndim))
    m = 0.5 * (p + q)
    h = 0.5 * (p - q)
    r = np.divide(h, m, out=np.zeros_like(m), where=m > 0)
    tp = _js_nat_terms(p, q, r)
    tq = _js_nat_terms(q, p, -r)
    js = (tp.sum(axis=axes) + tq.sum(axis=axes)) / (2.0 * LN2)
    return np.clip(js, 0.0, 1.0)


def _js_on_support(p: np.ndarray, q: np.ndarray, support: np.ndarray) -> np.ndarray:
    """JS with both KL sums accumulated only where ``support`` is true."""
    axes = tuple(range(1, p.ndim))
    m = 0.5 * (p + q)
    h = 0.5 * (p - q)
    r = np.divide(h, m, out=np.zeros_like(m), where=m > 0)
    tp = np.where(support, _js_nat_terms(p, q, r), 0.0)
    tq = np.where(support, _js_nat_terms(q, p, -r), 0.0)
    js = (tp.sum(axis=axes) + tq.sum(axis=axes)) / (2.0 * LN2)
    return np.clip(js, 0.0, 1.0)


class _BatchContext:
    """Quantities shared by every batched measure kernel for one candidate stack."""

    def __init__(self, base: Joint3, stack: np.ndarray, strategy: SparseStrategy):
        self.strategy = strategy
        self.d_x, self.d_y, self.d_z = base.shape
        self.pxz = base.probs.sum(axis=1)
        self.px = self.pxz.sum(axis=1)
        self.pz = self.pxz.sum(axis=0)
        self.q = stack  # (n, dx, dy, dz); every candidate shares the base p(x,z)
        self.n = stack.shape[0]
        self.support = stack > 0
        self.pyz = stack.sum(axis=1)
        self.py = self.pyz.sum(axis=2)
        self.pxy = stack.sum(axis=3)
        safe_pz = np.where(self.pz > 0, self.pz, 1.0)
        self.y_given_z = np.where(self.pz[None, None, :] > 0, self.pyz / safe_pz[None, None, :], 0.0)
        self.x_given_z = np.where(
            self.pz[None, :] > 0, self.pxz / safe_pz[None, :], self.px[:, None]
        )  # marginal fallback only touches zero-mass strata
        self._ycond = None
        self._xcond = None
        self._rows = None

    def ycond(self) -> np.ndarray:
        """p(y | x,z) per candidate with strategy fill where p(x,z) = 0; (n, dx, dy, dz)."""
        if self._ycond is None:
            s = self.strategy
            if s is SparseStrategy.UNIFORM:
                fill = np.full((1, 1, self.d_y, 1), 1.0 / self.d_y)
            elif s is SparseStrategy.MARGINAL:
                fill = self.py[:, None, :, None]
            else:
                cm = np.where(self.pz[None, None, :] > 0, self.y_given_z, self.py[:, :, None])
                fill = cm[:, None, :, :]
            ycond = np.broadcast_to(fill, (self.n, self.d_x, self.d_y, self.d_z)).copy()
            sup = self.pxz > 0
            det = np.where(
                sup[None, :, None, :], self.q / np.where(sup, self.pxz, 1.0)[None, :, None, :], 0.0
            )
            self._ycond = np.where(sup[None, :, None, :], det, ycond)
        return self._ycond

    def xcond(self) -> np.ndarray:
        """p(x | y,z) per candidate with strategy fill where p(y,z) = 0; (n, dx, dy, dz)."""
        if self._xcond is None:
            s = self.strategy
            if s is SparseStrategy.UNIFORM:
                fill = np.full((1, self.d_x, 1, 1), 1.0 / self.d_x)
            elif s is SparseStrategy.MARGINAL:
                fill = self.px[None, :, None, None]
            else:
                fill = self.x_given_z[None, :, None, :]
            defined = self.pyz > 0
            safe = np.where(defined, self.pyz, 1.0)
            self._xcond = np.where(defined[:, None, :, :], self.q / safe[:, None, :, :], fill)
        return self._xcond

    def do_rows(self) -> np.ndarray:
        if self._rows is None:
            self._rows = np.einsum("nxyz,z->nxy", self.ycond(), self.pz)
        return self._rows


def _k_rmi(ctx: _BatchContext) -> np.ndarray:
    prod = ctx.px[None, :, None] * ctx.py[:, None, :]
    return np.sqrt(_js_dense(ctx.pxy, prod))


def _k_rcmi(ctx: _BatchContext) -> np.ndarray:
    qrec = ctx.pxz[None, :, None, :] * ctx.y_given_z[:, None, :, :]
    return np.sqrt(_js_on_support(ctx.q, qrec, ctx.support))


def _k_rpmi(ctx: _BatchContext) -> np.ndarray:
    qx = np.einsum("nxyz,ny->nzx", ctx.xcond(), ctx.py)
    qy = np.einsum("nxyz,x->nzy", ctx.ycond(), ctx.px)
    mass = qx.sum(axis=2) * qy.sum(axis=2)  # (n, dz)
    scale = np.where((ctx.pz[None, :] > 0) & (mass > 0), mass, 1.0)
    qprime = np.einsum("nzx,nzy->nxyz", qx, qy) * (
        ctx.pz[None, None, None, :] / scale[:, None, None, :]
    )
    qprime = np.where(ctx.pz[None, None, None, :] > 0, qprime, 0.0)
    return np.sqrt(_js_on_support(ctx.q, qprime, ctx.support))


def _k_ricmi_xy(ctx: _BatchContext) -> np.ndarray:
    p1 = ctx.ycond() * ctx.px[None, :, None, None] * ctx.pz[None, None, None, :]
    p2 = np.broadcast_to(ctx.px[None, :, None, None] * ctx.pyz[:, None, :, :], p1.shape)
    return np.sqrt(_js_on_support(p1, p2, p1 > 0))


def _k_ricmi_yx(ctx: _BatchContext) -> np.ndarray:
    p1 = ctx.xcond() * ctx.py[:, None, :, None] * ctx.pz[None, None, None, :]
    p2 = np.broadcast_to(ctx.py[:, None, :, None] * ctx.pxz[None, :, None, :], p1.shape)
    return np.sqrt(_js_on_support(p1, p2, p1 > 0))


def _k_ricmi_two(ctx: _BatchContext) -> np.ndarray:
    return 0.5 * (_k_ricmi_xy(ctx) + _k_ricmi_yx(ctx))


def _pairwise_max(ctx: _BatchContext, kernel) -> np.ndarray:
    rows = ctx.do_rows()
    best = np.zeros(ctx.n)
    for i in range(ctx.d_x):
        for k in range(i + 1, ctx.d_x):
            best = np.maximum(best, kernel(rows[:, i, :], rows[:, k, :]))
    return best


def _k_nace(ctx: _BatchContext) -> np.ndarray:
    return _pairwise_max(ctx, lambda a, b: 0.5 * np.abs(a - b).sum(axis=1))


def _k_race(ctx: _BatchContext) -> np.ndarray:
    return np.sqrt(_pairwise_max(ctx, _js_dense))


def _k_rmi_do(ctx: _BatchContext) -> np.ndarray:
    pdo = ctx.do_rows() * ctx.px[None, :, None]
    pdo_y = pdo.sum(axis=1)
    prod = ctx.px[None, :, None] * pdo_y[:, None, :]
    return np.sqrt(_js_dense(pdo, prod))


_KERNELS = {
    "rmi": _k_rmi,
    "rcmi": _k_rcmi,
    "rpmi": _k_rpmi,
    "ricmi_xy": _k_ricmi_xy,
    "ricmi_yx": _k_ricmi_yx,
    "ricmi_two": _k_ricmi_two,
    "nace": _k_nace,
    "race": _k_race,
    "rmi_do": _k_rmi_do,
}


def candidate_values(
    j: Joint3,
    stack: np.ndarray,
    measures: Sequence[str],
    s: SparseStrategy = DEFAULT_STRATEGY,
) -> dict[str, np.ndarray]:
    """Bound-convention values of several measures on a stack of candidates.

    Candidates must share the base joint's (x,z) marginal.  Exposed so
    tests can re-check reported maxima against per-candidate evaluations.
    """
    ctx = _BatchContext(j, stack, SparseStrategy.parse(s))
    return {m: _KERNELS[m](ctx) for m in measures}


def achievable_bounds(
    j: Joint3,
    measures: Sequence[str] = BOUND_MEASURES,
    s: SparseStrategy = DEFAULT_STRATEGY,
    cap: int = DEFAULT_CAP,
) -> dict[str, BoundReport]:
    """Exact achievable bounds of several measures in a single enumeration pass."""
    strategy = SparseStrategy.parse(s)
    for m in measures:
        if m not in _KERNELS:
            raise UnknownMeasure(f"no achievable bound for {m!r}; choose from {sorted(_KERNELS)}")
    it = CouplingIterator(j, cap=cap)
    n = len(it)
    # The observed joint is always a candidate: it shares its own marginals,
    # so the reported bound can never fall below the reported value.
    own = candidate_values(j, j.probs[None, :, :, :], measures, strategy)
    best = {m: float(own[m][0]) for m in measures}
    best_idx: dict[str, int | None] = {m: None for m in measures}
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        ctx = _BatchContext(j, it.joints_chunk(it.digits_chunk(start, stop)), strategy)
        for m in measures:
            vals = _KERNELS[m](ctx)
            k = int(np.argmax(vals))
            if float(vals[k]) > best[m]:
                best[m] = float(vals[k])
                best_idx[m] = start + k
    out = {}
    for m in measures:
        idx = best_idx[m]
        fmap = None
        if idx is not None:
            fm = it.at(idx).fmap
            fmap = tuple(tuple(int(v) for v in row) for row in fm)
        out[m] = BoundReport(
            measure=m, max_value=best[m], argmax_fmap=fmap, n_enumerated=n
        )
    return out


def achievable_bound(
    j: Joint3,
    measure: str,
    s: SparseStrategy = DEFAULT_STRATEGY,
    cap: int = DEFAULT_CAP,
) -> BoundReport:
    """Exact achievable upper bound of one regularized measure under the observed p(x,z)."""
    return achievable_bounds(j, (measure,), s=s, cap=cap)[measure]
