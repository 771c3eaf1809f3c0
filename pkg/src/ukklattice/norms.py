"""Lattice-norm oracles and a sampling-based axiom audit.

Every oracle evaluates through a single batch method :meth:`NormOracle.values`
(rows of a 2-d array in, one value per row out); the scalar ``__call__`` is a
one-row batch.  Routing both through the same arithmetic keeps comparisons
between exact and heuristic optimizers bitwise meaningful.

Built-in kinds:

``Lq``          (sum |x_i|^q)^(1/q), with q = inf meaning max |x_i|
``WeightedLq``  Lq of the coordinatewise product w * x, all w_i > 0
``Block``       inner norms on the blocks of an atom partition, combined
                by an outer norm on the block-value vector
``PosNegMax``   max(base(pos_part(x)), base(neg_part(x))), the factor-2
                equivalent norm built from positive and negative parts

The first three are absolute and lattice-monotone with constant 1.  The
pos/neg wrapper is only 2-monotone (shifting mass between the parts can
double the value), which is why :attr:`NormOracle.monotone_constant`
exists instead of a hard-coded 1.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .vectors import DimensionMismatch, LatticeVector, neg_part, pos_part

__all__ = [
    "NormOracle",
    "LqNorm",
    "WeightedLqNorm",
    "BlockNorm",
    "PosNegMaxNorm",
    "pos_neg_max",
    "NormAuditReport",
    "audit_norm_axioms",
]


class NormOracle(ABC):
    """A norm on vectors of a fixed atom count ``dim``."""

    dim: int
    kind: str

    @abstractmethod
    def values(self, X: np.ndarray) -> np.ndarray:
        """Norms of the rows of ``X`` (shape ``(n, dim)`` float64)."""

    @abstractmethod
    def describe(self) -> dict:
        """JSON-ready spec dict; parseable back by ``config.parse_norm_spec``."""

    @property
    def monotone_constant(self) -> float:
        """K with: |x| <= |y| coordinatewise implies eval(x) <= K*eval(y)."""
        return 1.0

    def __call__(self, x) -> float:
        if isinstance(x, LatticeVector):
            a = x.coords
        else:
            a = np.asarray(x, dtype=np.float64)
        if a.shape != (self.dim,):
            raise DimensionMismatch(f"oracle dim {self.dim}, vector shape {a.shape}")
        return float(self.values(a[None, :])[0])

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"


def _q_value(q) -> float:
    if isinstance(q, str):
        if q.lower() in ("inf", "infinity"):
            return math.inf
        raise ValueError(f"unrecognized exponent string {q!r}")
    qf = float(q)
    if math.isnan(qf) or qf < 1.0:
        raise ValueError(f"exponent must satisfy q >= 1 (or be inf), got {q!r}")
    return qf


def _q_json(q: float):
    if math.isinf(q):
        return "inf"
    return int(q) if float(q).is_integer() else q


class LqNorm(NormOracle):
    """The q-sum norm; ``q = inf`` (or the string "inf") gives the sup norm."""

    kind = "Lq"

    def __init__(self, q, dim: int):
        self.q = _q_value(q)
        if int(dim) < 1:
            raise ValueError("dim must be a positive integer")
        self.dim = int(dim)

    def values(self, X: np.ndarray) -> np.ndarray:
        A = np.abs(X)
        if math.isinf(self.q):
            return A.max(axis=1)
        if self.q == 1.0:
            return A.sum(axis=1)
        if self.q == 2.0:
            return np.sqrt((A * A).sum(axis=1))
        return (A ** self.q).sum(axis=1) ** (1.0 / self.q)

    def describe(self) -> dict:
        return {"kind": "Lq", "q": _q_json(self.q), "dim": self.dim}


class WeightedLqNorm(NormOracle):
    """Lq norm of ``w * x`` for a fixed positive weight per atom."""

    kind = "WeightedLq"

    def __init__(self, q, weights, dim: int | None = None):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(w)) or not np.all(w > 0):
            raise ValueError("weights must be finite and strictly positive")
        if dim is not None and int(dim) != w.size:
            raise ValueError(f"dim {dim} disagrees with {w.size} weights")
        self._w = w.copy()
        self._w.flags.writeable = False
        self.dim = w.size
        self._base = LqNorm(q, self.dim)
        self.q = self._base.q

    @property
    def weights(self) -> np.ndarray:
        return self._w

    def values(self, X: np.ndarray) -> np.ndarray:
        return self._base.values(X * self._w[None, :])

    def describe(self) -> dict:
        return {
            "kind": "WeightedLq",
            "q": _q_json(self.q),
            "weights": [float(w) for w in self._w],
            "dim": self.dim,
        }


class BlockNorm(NormOracle):
    """Inner norms on the blocks of an atom partition, combined by an outer norm.

    ``blocks`` must partition ``range(dim)``: every atom in exactly one
    block, no empty blocks.  ``inner[j]`` evaluates coordinates
    ``blocks[j]`` and must have matching dim; ``outer`` has one
    coordinate per block.
    """

    kind = "Block"

    def __init__(self, blocks, inner, outer: NormOracle):
        blocks = tuple(tuple(int(i) for i in blk) for blk in blocks)
        if not blocks or any(len(blk) == 0 for blk in blocks):
            raise ValueError("blocks must be nonempty and contain no empty block")
        flat = sorted(i for blk in blocks for i in blk)
        dim = len(flat)
        if flat != list(range(dim)):
            raise ValueError("blocks must partition 0..dim-1 with no repeats or gaps")
        inner = tuple(inner)
        if len(inner) != len(blocks):
            raise ValueError(f"{len(blocks)} blocks but {len(inner)} inner oracles")
        for j, (blk, N) in enumerate(zip(blocks, inner)):
            if N.dim != len(blk):
                raise ValueError(f"inner[{j}] has dim {N.dim}, block has {len(blk)} atoms")
        if outer.dim != len(blocks):
            raise ValueError(f"outer has dim {outer.dim}, need one coordinate per block ({len(blocks)})")
        self.blocks = blocks
        self.inner = inner
        self.outer = outer
        self.dim = dim
        self._idx = [np.asarray(blk, dtype=np.intp) for blk in blocks]

    def values(self, X: np.ndarray) -> np.ndarray:
        B = np.empty((X.shape[0], len(self.blocks)), dtype=np.float64)
        for j, idx in enumerate(self._idx):
            B[:, j] = self.inner[j].values(X[:, idx])
        return self.outer.values(B)

    @property
    def monotone_constant(self) -> float:
        return self.outer.monotone_constant * max(N.monotone_constant for N in self.inner)

    def describe(self) -> dict:
        return {
            "kind": "Block",
            "blocks": [list(blk) for blk in self.blocks],
            "inner": [N.describe() for N in self.inner],
            "outer": self.outer.describe(),
            "dim": self.dim,
        }


class PosNegMaxNorm(NormOracle):
    """``max(base(pos_part(x)), base(neg_part(x)))``.

    An equivalent norm within a factor of 2 of ``base``:
    eval(x) <= base(x) <= 2*eval(x).  Not 1-monotone: moving mass from
    the positive to the negative part can grow the value even though
    |x| is unchanged, so :attr:`monotone_constant` is ``2 * K_base``.
    """

    kind = "PosNegMax"

    def __init__(self, base: NormOracle):
        self.base = base
        self.dim = base.dim

    def values(self, X: np.ndarray) -> np.ndarray:
        pos = self.base.values(np.maximum(X, 0.0))
        neg = self.base.values(np.maximum(-X, 0.0))
        return np.maximum(pos, neg)

    @property
    def monotone_constant(self) -> float:
        return 2.0 * self.base.monotone_constant

    def describe(self) -> dict:
        return {"kind": "PosNegMax", "base": self.base.describe(), "dim": self.dim}


def pos_neg_max(N: NormOracle, x: LatticeVector) -> float:
    """``max(N(pos_part(x)), N(neg_part(x)))`` as a free function."""
    return max(N(pos_part(x)), N(neg_part(x)))


@dataclass(frozen=True)
class NormAuditReport:
    """Worst-case relative violations found by :func:`audit_norm_axioms`."""

    kind: dict
    samples: int
    seed: int
    tol: float
    monotone_constant: float
    zero_value: float
    positivity_violations: int
    homogeneity_violation: float
    triangle_violation: float
    monotonicity_violation: float

    @property
    def passed(self) -> bool:
        return (
            self.zero_value == 0.0
            and self.positivity_violations == 0
            and self.homogeneity_violation <= self.tol
            and self.triangle_violation <= self.tol
            and self.monotonicity_violation <= self.tol
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "monotone_constant": self.monotone_constant,
            "zero_value": self.zero_value,
            "positivity_violations": self.positivity_violations,
            "homogeneity_violation": self.homogeneity_violation,
            "triangle_violation": self.triangle_violation,
            "monotonicity_violation": self.monotonicity_violation,
            "passed": self.passed,
        }


def _rel_excess(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Largest (lhs - rhs) / max(rhs, tiny); <= 0 when the inequality holds."""
    denom = np.maximum(rhs, 1e-12)
    return float(((lhs - rhs) / denom).max())


def audit_norm_axioms(
    N: NormOracle,
    samples: int = 10_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> NormAuditReport:
    """Sample-test the norm axioms plus lattice monotonicity.

    Checks, per sample: positivity on nonzero vectors, absolute
    homogeneity, the triangle inequality, and K-monotonicity with
    ``K = N.monotone_constant`` on pairs |x| <= |y| built by shrinking.
    Violations are relative; the audit passes iff every worst case is
    within ``tol``.  Failures are reported, never raised.
    """
    rng = np.random.default_rng(seed)
    d = N.dim
    X = rng.standard_normal((samples, d))
    Y = rng.standard_normal((samples, d))
    t = rng.standard_normal(samples) * 3.0

    zero_value = float(N.values(np.zeros((1, d)))[0])

    nx = N.values(X)
    ny = N.values(Y)
    positivity_violations = int(((nx <= 0.0) & np.any(X != 0.0, axis=1)).sum())

    scaled = N.values(X * t[:, None])
    expected = np.abs(t) * nx
    denom = np.maximum(expected, 1e-12)
    homogeneity = float((np.abs(scaled - expected) / denom).max())

    triangle = _rel_excess(N.values(X + Y), nx + ny)

    # shrink factors in [-1, 1] give |U * Y| <= |Y| coordinatewise
    U = rng.uniform(-1.0, 1.0, size=(samples, d))
    K = N.monotone_constant
    monotonicity = _rel_excess(N.values(U * Y), K * ny)

    return NormAuditReport(
        kind=N.describe(),
        samples=samples,
        seed=seed,
        tol=tol,
        monotone_constant=K,
        zero_value=zero_value,
        positivity_violations=positivity_violations,
        homogeneity_violation=max(0.0, homogeneity),
        triangle_violation=max(0.0, triangle),
        monotonicity_violation=max(0.0, monotonicity),
    )
