"""Finite-horizon trials of the uniform Kadec-Klee property of the renorm.

A trial is a finite, coordinatewise-convergent, pairwise-separated
sequence inside the renorm unit ball together with its declared limit;
the verdict checks the explicit modulus: the limit's renorm must not
exceed 1 - delta(epsilon, p).  Trials produced by the disjoint-bump
generator satisfy the verified preconditions by construction, so any
failing bump trial indicates a defect in the renorm or the modulus,
never a mathematical discovery.

Honesty notes baked into the design:

* Coordinatewise convergence at a finite horizon is read as "every
  coordinate settles within the horizon, except coordinates whose first
  movement happens in the final quarter (still in flight)".  The full
  quantified property concerns infinite sequences; a finite campaign
  samples witnesses and can refute, never certify, the universal claim.
* Separation distances computed heuristically are only lower bounds;
  such trials are flagged advisory.
* A trial whose measured separation is inconsistent with the distances
  to the limit (epsilon/2 > min distance) cannot be a prefix of a
  genuine separated convergent sequence and is classified invalid, so
  adversarial fuzz sequences can never manufacture a false violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .norms import NormOracle
from .renorm import EXACT_THRESHOLD, LocalSearchConfig, renorm
from .sampling import random_coords, random_vector
from .vectors import DimensionMismatch, LatticeVector, truncate

__all__ = [
    "ukk_modulus",
    "generate_bump_sequence",
    "Separation",
    "measure_separation",
    "check_coordinatewise_convergence",
    "check_truncation_vanishing",
    "UkkTrial",
    "run_ukk_trial",
    "UkkCampaign",
    "run_bump_campaign",
]


def ukk_modulus(epsilon: float, p: float) -> float:
    """delta = 1 - (1 - (epsilon/2)^p)^(1/p), for 0 < epsilon <= 2, p >= 1.

    Strictly increasing in epsilon; equals 1 at epsilon = 2.  Separation
    above 2 is impossible in the unit ball of the p-superadditive
    renorm, hence the domain cap.
    """
    epsilon = float(epsilon)
    p = float(p)
    if math.isnan(p) or p < 1.0 or math.isinf(p):
        raise ValueError(f"need 1 <= p < infinity, got {p}")
    if not 0.0 < epsilon <= 2.0:
        raise ValueError(f"separation must lie in (0, 2], got {epsilon}")
    return 1.0 - (1.0 - (epsilon / 2.0) ** p) ** (1.0 / p)


def generate_bump_sequence(
    N: NormOracle,
    p: float,
    core: LatticeVector,
    bump_height: float,
    horizon: int = 64,
    tol: float = 1e-9,
) -> list[LatticeVector]:
    """x_n = core + bump_height * e_(fresh atom n), verified in the unit ball.

    Fresh atoms start right after the core's last support atom, one per
    element, so the elements' differences from the core are pairwise
    disjoint and every coordinate is eventually constant.  Each element's
    renorm is checked against 1 + tol; a violation raises with the
    offending index.
    """
    if N.dim != core.dim:
        raise DimensionMismatch(f"oracle dim {N.dim}, core dim {core.dim}")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    supp = core.support()
    first_fresh = (max(supp) + 1) if supp else 0
    if first_fresh + horizon > core.dim:
        raise ValueError(
            f"ambient dim {core.dim} too small: need {first_fresh + horizon} atoms "
            f"for the core plus {horizon} fresh bumps"
        )
    out = []
    for n in range(horizon):
        x = core + LatticeVector.unit(core.dim, first_fresh + n, bump_height)
        value = renorm(N, p, x).value
        if value > 1.0 + tol:
            raise ValueError(f"element {n} lies outside the renorm unit ball: {value}")
        out.append(x)
    return out


@dataclass(frozen=True)
class Separation:
    """Minimum pairwise renorm distance; advisory if any distance was heuristic."""

    value: float
    advisory: bool


def measure_separation(
    sequence,
    N: NormOracle,
    p: float,
    threshold: int = EXACT_THRESHOLD,
    config: LocalSearchConfig | None = None,
) -> Separation:
    """Min over n != m of renorm(x_n - x_m).

    Heuristic renorm values are lower bounds on the true distances, so a
    separation involving them is itself only a lower bound; the flag
    says so.
    """
    if len(sequence) < 2:
        raise ValueError("separation needs at least two elements")
    best = math.inf
    advisory = False
    for n in range(len(sequence)):
        for m in range(n + 1, len(sequence)):
            res = renorm(N, p, sequence[n] - sequence[m], threshold=threshold, config=config)
            advisory = advisory or res.method == "heuristic"
            if res.value < best:
                best = res.value
    return Separation(float(best), advisory)


def _settle_cutoff(length: int) -> int:
    # first index of the final quarter; movements starting there are "in flight"
    return max(1, int(math.ceil(0.75 * length)))


def check_coordinatewise_convergence(
    sequence, declared_limit: LatticeVector, tol: float = 1e-9
) -> bool:
    """Finite-horizon coordinatewise convergence check.

    A coordinate passes if its deviations from the limit stop before the
    final element (it settled), or if they begin only in the final
    quarter of the horizon (a bump still in flight).  A coordinate that
    deviates early and still deviates at the end fails.
    """
    if not sequence:
        raise ValueError("empty sequence")
    X = np.stack([x.coords for x in sequence])
    if X.shape[1] != declared_limit.dim:
        raise DimensionMismatch("sequence and limit disagree on dimension")
    L = X.shape[0]
    bad = np.abs(X - declared_limit.coords[None, :]) > tol
    cutoff = _settle_cutoff(L)
    for i in np.flatnonzero(bad.any(axis=0)):
        hits = np.flatnonzero(bad[:, i])
        if hits[-1] == L - 1 and hits[0] < cutoff:
            return False
    return True


def _track_settles(track, tol: float) -> bool:
    hits = [n for n, v in enumerate(track) if v > tol]
    if not hits:
        return True
    L = len(track)
    return not (hits[-1] == L - 1 and hits[0] < _settle_cutoff(L))


def check_truncation_vanishing(
    u: LatticeVector,
    sequence,
    declared_limit: LatticeVector,
    N: NormOracle,
    tol: float = 1e-9,
) -> bool:
    """Do both truncation norms vanish along the sequence?

    Tracks N(truncate(u, x_n - limit)) and N(truncate(x_n - limit, u));
    both must fall and stay below tol within the horizon (same
    settled-or-in-flight reading as the convergence check).  For
    1-monotone norms this follows from coordinatewise convergence via
    the bound by twice the norm of |x_n - limit| meet |u|, with one
    finite-horizon caveat: when u overlaps atoms whose movement is
    still in flight at the end of the horizon (a bump landing in the
    final quarter), the norm track cannot have settled yet and the
    check reports False even though the infinite extension vanishes.
    Choosing u on settled atoms avoids the artifact.
    """
    if not sequence:
        raise ValueError("empty sequence")
    track_a = []
    track_b = []
    for x in sequence:
        d = x - declared_limit
        track_a.append(N(truncate(u, d)))
        track_b.append(N(truncate(d, u)))
    return _track_settles(track_a, tol) and _track_settles(track_b, tol)


@dataclass
class UkkTrial:
    """One finite-horizon trial record; serializable for replay."""

    valid: bool
    reason: str | None  # set when invalid
    passed: bool | None  # None when invalid
    epsilon: float | None
    delta: float | None
    limit_renorm: float | None
    min_dist_to_limit: float | None
    liminf_ok: bool | None  # epsilon/2 <= min distance to limit + tol
    advisory: bool
    seed: int
    p: float
    horizon: int
    norm: dict
    sequence: list[list[float]]
    declared_limit: list[float]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "reason": self.reason,
            "passed": self.passed,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "limit_renorm": self.limit_renorm,
            "min_dist_to_limit": self.min_dist_to_limit,
            "liminf_ok": self.liminf_ok,
            "advisory": self.advisory,
            "seed": self.seed,
            "p": self.p,
            "horizon": self.horizon,
            "norm": self.norm,
            "sequence": self.sequence,
            "declared_limit": self.declared_limit,
        }


def run_ukk_trial(
    N: NormOracle,
    p: float,
    sequence,
    declared_limit: LatticeVector,
    seed: int = 0,
    tol: float = 1e-9,
    conv_tol: float | None = None,
    threshold: int = EXACT_THRESHOLD,
) -> UkkTrial:
    """Verify preconditions, then the modulus bound on the declared limit.

    Precondition failures (outside the ball, not convergent, not
    separated, separation inconsistent with the limit distances) yield
    an invalid trial with the reason recorded; they are never counted
    as property violations.  For a valid trial:
    pass  iff  renorm(limit) <= 1 - delta(epsilon, p) + tol.
    """
    conv_tol = tol if conv_tol is None else conv_tol
    base = dict(
        seed=seed,
        p=float(p),
        horizon=len(sequence),
        norm=N.describe(),
        sequence=[x.to_list() for x in sequence],
        declared_limit=declared_limit.to_list(),
    )

    def invalid(reason: str, advisory: bool = False) -> UkkTrial:
        return UkkTrial(
            valid=False,
            reason=reason,
            passed=None,
            epsilon=None,
            delta=None,
            limit_renorm=None,
            min_dist_to_limit=None,
            liminf_ok=None,
            advisory=advisory,
            **base,
        )

    if len(sequence) < 2:
        return invalid("need at least two elements")

    advisory = False
    for n, x in enumerate(sequence):
        res = renorm(N, p, x, threshold=threshold)
        advisory = advisory or res.method == "heuristic"
        if res.value > 1.0 + tol:
            return invalid(f"element {n} outside the renorm unit ball ({res.value})", advisory)

    if not check_coordinatewise_convergence(sequence, declared_limit, conv_tol):
        return invalid("coordinatewise convergence to the declared limit not established at this horizon", advisory)

    sep = measure_separation(sequence, N, p, threshold=threshold)
    advisory = advisory or sep.advisory
    epsilon = sep.value
    if not epsilon > 0.0:
        return invalid("sequence is not separated (epsilon = 0)", advisory)

    dists = []
    for x in sequence:
        res = renorm(N, p, x - declared_limit, threshold=threshold)
        advisory = advisory or res.method == "heuristic"
        dists.append(res.value)
    min_dist = float(min(dists))
    liminf_ok = epsilon / 2.0 <= min_dist + tol
    if not liminf_ok:
        return invalid(
            "separation inconsistent with distances to the limit (finite-horizon artifact)",
            advisory,
        )

    delta = ukk_modulus(min(epsilon, 2.0), p)
    limit_res = renorm(N, p, declared_limit, threshold=threshold)
    advisory = advisory or limit_res.method == "heuristic"
    passed = bool(limit_res.value <= 1.0 - delta + tol)
    return UkkTrial(
        valid=True,
        reason=None,
        passed=passed,
        epsilon=epsilon,
        delta=delta,
        limit_renorm=limit_res.value,
        min_dist_to_limit=min_dist,
        liminf_ok=bool(liminf_ok),
        advisory=advisory,
        **base,
    )


@dataclass
class UkkCampaign:
    """Aggregate of a trial campaign; failed > 0 signals an implementation bug."""

    norm: dict
    p: float
    mode: str
    horizon: int
    seed: int
    trials: list[UkkTrial]
    total: int
    valid: int
    passed: int
    failed: int
    invalid: int
    advisory: int
    min_margin: float | None  # min over valid trials of (1 - delta + tol) - limit_renorm

    def to_dict(self, include_trials: bool = True) -> dict:
        out = {
            "norm": self.norm,
            "p": self.p,
            "mode": self.mode,
            "horizon": self.horizon,
            "seed": self.seed,
            "total": self.total,
            "valid": self.valid,
            "passed": self.passed,
            "failed": self.failed,
            "invalid": self.invalid,
            "advisory": self.advisory,
            "min_margin": self.min_margin,
        }
        if include_trials:
            out["trials"] = [t.to_dict() for t in self.trials]
        return out


def _bump_trial(
    N: NormOracle, p: float, rng: np.random.Generator, index: int, horizon: int, tol: float
) -> UkkTrial:
    dim = N.dim
    core_room = dim - horizon
    if core_room < 1:
        raise ValueError(f"oracle dim {dim} leaves no room for a core before {horizon} bumps")
    size = int(rng.integers(1, min(3, core_room) + 1))
    atoms = np.sort(rng.choice(core_room, size=size, replace=False))
    coords = np.zeros(dim, dtype=np.float64)
    coords[atoms] = random_coords(rng, size)
    core = LatticeVector(coords)
    bump = float(rng.uniform(0.3, 1.0))

    # scale the whole family into the unit ball, with headroom for rounding
    first_fresh = max(core.support()) + 1
    worst = 0.0
    for n in range(horizon):
        x = core + LatticeVector.unit(dim, first_fresh + n, bump)
        worst = max(worst, renorm(N, p, x).value)
    scale = (1.0 - 1e-12) / worst
    core = core * scale
    bump = bump * scale

    seq = generate_bump_sequence(N, p, core, bump, horizon=horizon, tol=tol)
    return run_ukk_trial(N, p, seq, core, seed=index, tol=tol)


def _fuzz_trial(
    N: NormOracle, p: float, rng: np.random.Generator, index: int, horizon: int, tol: float
) -> UkkTrial:
    dim = N.dim
    limit = random_vector(rng, dim, support_size=int(rng.integers(1, min(4, dim) + 1)))
    r = renorm(N, p, limit).value
    limit = limit * (0.9 / r)

    decay = float(rng.uniform(0.4, 0.8))
    seq = []
    for n in range(horizon):
        size = int(rng.integers(1, min(3, dim) + 1))
        noise = random_vector(rng, dim, support_size=size)
        nr = renorm(N, p, noise).value
        noise = noise * (0.09 * decay**n / nr)
        seq.append(limit + noise)
    return run_ukk_trial(N, p, seq, limit, seed=index, tol=tol)


def run_bump_campaign(
    N: NormOracle,
    p: float,
    trials: int,
    seed: int = 0,
    mode: str = "bump",
    horizon: int = 16,
    tol: float = 1e-9,
) -> UkkCampaign:
    """Run a seeded campaign of UKK trials.

    ``bump`` mode generates disjoint-bump families (always valid, and
    guaranteed to pass when the renorm is correct); ``fuzz`` mode
    generates non-disjoint decaying perturbations whose trials may be
    invalid but, by the validity rules, never yield a false violation.
    """
    if mode not in ("bump", "fuzz"):
        raise ValueError(f"unknown campaign mode {mode!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    records: list[UkkTrial] = []
    for t in range(trials):
        if mode == "bump":
            records.append(_bump_trial(N, p, rng, t, horizon, tol))
        else:
            records.append(_fuzz_trial(N, p, rng, t, horizon, tol))

    valid = [t for t in records if t.valid]
    failed = sum(1 for t in valid if not t.passed)
    margins = [
        (1.0 - t.delta + tol) - t.limit_renorm
        for t in valid
        if t.delta is not None and t.limit_renorm is not None
    ]
    return UkkCampaign(
        norm=N.describe(),
        p=float(p),
        mode=mode,
        horizon=horizon,
        seed=seed,
        trials=records,
        total=len(records),
        valid=len(valid),
        passed=sum(1 for t in valid if t.passed),
        failed=failed,
        invalid=len(records) - len(valid),
        advisory=sum(1 for t in records if t.advisory),
        min_margin=min(margins) if margins else None,
    )
