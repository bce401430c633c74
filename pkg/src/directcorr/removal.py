"""Direct-correlation measures built by removing the X-Y link and measuring the shift.

Three reconstructions of "the same joint with no direct X-Y correlation":

* CMI family: q(x,y,z) = p(x|z) p(y|z) p(z).  Always well defined, even
  for sparse data.
* PMI family: the stratum conditionals are themselves rebuilt through
  the partner variable's unconditional marginal,
  q(x|z) = sum_y p(x|y,z) p(y) and symmetrically, then multiplied as in
  the CMI reconstruction.
* ICMI family: a two-step construction.  First the X-Z correlation is
  severed, p1(x,y,z) = p(y|x,z) p(x) p(z); then the X-Y link as well,
  p2(x,y,z) = p(x) p(y,z).  The one-way value is the divergence of p2
  from p1; the mirrored construction gives the Y-to-X direction.

KL-based values may be +inf on sparse data (reported, never clamped);
each has a root-JS regularized analogue bounded in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .prob import Joint3, entropy, js_divergence, kl_divergence, marginal
from .sparse import DEFAULT_STRATEGY, SparseStrategy, filled_conditional


def reconstruct_q_cmi(j: Joint3) -> Joint3:
    """The joint p(x|z) p(y|z) p(z): X-Y correlation removed within every stratum.

    Preserves the (x,z) and (y,z) marginals; strata with p(z) = 0 carry
    zero mass in both the input and the reconstruction, so no fill rule
    is ever needed here.
    """
    pxz = j.probs.sum(axis=1)
    pyz = j.probs.sum(axis=0)
    pz = pxz.sum(axis=0)
    y_given_z = np.where(pz[None, :] > 0, pyz / np.where(pz[None, :] > 0, pz[None, :], 1.0), 0.0)
    q = pxz[:, None, :] * y_given_z[None, :, :]
    return Joint3(j.alphabets, q)


def cmi(j: Joint3) -> float:
    """Conditional mutual information H(X,Z) + H(Y,Z) - H(X,Y,Z) - H(Z), in bits."""
    hxz = entropy(j.probs.sum(axis=1))
    hyz = entropy(j.probs.sum(axis=0))
    hz = entropy(j.probs.sum(axis=(0, 1)))
    return max(hxz + hyz - entropy(j) - hz, 0.0)


def cmi_js(j: Joint3) -> float:
    """JS divergence between the joint and its CMI reconstruction, in [0, 1]."""
    return js_divergence(j, reconstruct_q_cmi(j))


def rcmi(j: Joint3) -> float:
    """Regularized CMI: root-JS distance to the CMI reconstruction, in [0, 1]."""
    return math.sqrt(cmi_js(j))


def _q_pmi_with_masses(j: Joint3, s: SparseStrategy) -> tuple[Joint3, np.ndarray]:
    px = marginal(j, "x").probs
    py = marginal(j, "y").probs
    pz = marginal(j, "z").probs
    x_given_yz = filled_conditional(j, "x", "yz", s)  # (dy, dz, dx)
    y_given_xz = filled_conditional(j, "y", "xz", s)  # (dx, dz, dy)
    qx = np.einsum("yzx,y->zx", x_given_yz, py)
    qy = np.einsum("xzy,x->zy", y_given_xz, px)
    # The fill makes each rebuilt stratum conditional sum to 1 already;
    # dividing by the realized mass guards the float residue and records it.
    masses = qx.sum(axis=1) * qy.sum(axis=1)
    q = qx.T[:, None, :] * qy.T[None, :, :] * pz[None, None, :]
    scale = np.where((pz > 0) & (masses > 0), masses, 1.0)
    q = q / scale[None, None, :]
    q = np.where(pz[None, None, :] > 0, q, 0.0)
    return Joint3(j.alphabets, q), np.where(pz > 0, masses, 1.0)


def reconstruct_q_pmi(j: Joint3, s: SparseStrategy = DEFAULT_STRATEGY) -> Joint3:
    """The PMI reconstruction q(x|z) q(y|z) p(z), renormalized within each stratum."""
    q, _ = _q_pmi_with_masses(j, SparseStrategy.parse(s))
    return q


def pmi(j: Joint3, s: SparseStrategy = DEFAULT_STRATEGY) -> float:
    """Part mutual information: KL distance to the PMI reconstruction; may be +inf."""
    return kl_divergence(j, reconstruct_q_pmi(j, s))


def rpmi(j: Joint3, s: SparseStrategy = DEFAULT_STRATEGY) -> float:
    """Regularized PMI: root-JS distance to the PMI reconstruction, in [0, 1]."""
    return math.sqrt(js_divergence(j, reconstruct_q_pmi(j, s)))


def _icmi_pair(j: Joint3, direction: str, s: SparseStrategy) -> tuple[np.ndarray, np.ndarray]:
    """The (p1, p2) probability pair for one ICMI direction ('xy' or 'yx')."""
    if direction == "xy":
        fc = filled_conditional(j, "y", "xz", s)  # (dx, dz, dy)
        px = marginal(j, "x").probs
        pz = marginal(j, "z").probs
        p1 = np.moveaxis(fc, 2, 1) * px[:, None, None] * pz[None, None, :]
        p2 = px[:, None, None] * marginal(j, "yz").probs[None, :, :]
    elif direction == "yx":
        fc = filled_conditional(j, "x", "yz", s)  # (dy, dz, dx)
        py = marginal(j, "y").probs
        pz = marginal(j, "z").probs
        p1 = np.moveaxis(fc, 2, 0) * py[None, :, None] * pz[None, None, :]
        p2 = py[None, :, None] * marginal(j, "xz").probs[:, None, :]
    else:
        raise ValueError(f"direction must be 'xy' or 'yx', got {direction!r}")
    return p1, p2


def icmi_oneway(j: Joint3, direction: str = "xy", s: SparseStrategy = DEFAULT_STRATEGY) -> float:
    """One-way independent CMI in bits (KL of the two-step pair); may be +inf."""
    p1, p2 = _icmi_pair(j, direction, SparseStrategy.parse(s))
    return kl_divergence(p1, p2)


@dataclass(frozen=True)
class RicmiResult:
    xy: float
    yx: float
    two_way: float


def ricmi(j: Joint3, s: SparseStrategy = DEFAULT_STRATEGY) -> RicmiResult:
    """Regularized one-way ICMIs and their two-way average, each in [0, 1]."""
    s = SparseStrategy.parse(s)
    vals = {}
    for direction in ("xy", "yx"):
        p1, p2 = _icmi_pair(j, direction, s)
        vals[direction] = math.sqrt(js_divergence(p1, p2))
    return RicmiResult(xy=vals["xy"], yx=vals["yx"], two_way=0.5 * (vals["xy"] + vals["yx"]))


@dataclass(frozen=True)
class RemovalReport:
    """All removal-family values for one joint under one sparse strategy."""

    cmi: float
    cmi_js: float
    rcmi: float
    pmi: float
    rpmi: float
    icmi_xy: float
    icmi_yx: float
    ricmi_xy: float
    ricmi_yx: float
    ricmi_two: float
    strategy: SparseStrategy
    pmi_stratum_masses: tuple[float, ...]


def removal_report(j: Joint3, s: SparseStrategy = DEFAULT_STRATEGY) -> RemovalReport:
    s = SparseStrategy.parse(s)
    q_pmi, masses = _q_pmi_with_masses(j, s)
    js = cmi_js(j)
    r = ricmi(j, s)
    return RemovalReport(
        cmi=cmi(j),
        cmi_js=js,
        rcmi=math.sqrt(js),
        pmi=kl_divergence(j, q_pmi),
        rpmi=math.sqrt(js_divergence(j, q_pmi)),
        icmi_xy=icmi_oneway(j, "xy", s),
        icmi_yx=icmi_oneway(j, "yx", s),
        ricmi_xy=r.xy,
        ricmi_yx=r.yx,
        ricmi_two=r.two_way,
        strategy=s,
        pmi_stratum_masses=tuple(float(m) for m in masses),
    )
