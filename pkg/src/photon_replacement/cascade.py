"""Feed-forward cascade of replacement stages.

Each stage interferes the current branch pair with ``k`` ancilla photons,
accepts one success herald and one failure herald, and discards every other
count. Failure outputs (renormalised) feed the next stage, whose
transmissivity is re-solved so the new success outputs are orthogonal.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .catalysis import replace_unnormalized
from .errors import InfeasibleStageError, NoRootError
from .fock import FockVector, coherent, default_dim, normalized_overlap
from .orthogonalize import _require_alpha, find_orthogonal_T

STRATEGIES = ("unadapted", "adapted-success", "adapted-both", "custom")


@dataclass(frozen=True)
class StagePlan:
    k: int = 1
    m_success: int = 1
    m_fail: int = 0
    T: float | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("a stage needs at least one ancilla photon")
        if self.m_success == self.m_fail:
            raise ValueError("success and failure heralds must differ")
        if min(self.m_success, self.m_fail) < 0:
            raise ValueError("herald counts must be >= 0")


def build_strategy(name: str, n_stages: int, custom: list[StagePlan] | None = None) -> list[StagePlan]:
    """Stage schedule for one of the named strategies.

    ``surplus`` counts ancilla photons retained in the signal mode along the
    failure path; the success herald is ``1 + surplus``.
    """
    if n_stages < 1:
        raise ValueError("n_stages must be >= 1")
    if name == "custom":
        if not custom or len(custom) < n_stages:
            raise ValueError("custom strategy needs at least n_stages plans")
        return list(custom[:n_stages])
    if name not in STRATEGIES:
        raise ValueError(f"unknown strategy {name!r}; choose from {STRATEGIES}")
    plans = []
    surplus = 0
    for _ in range(n_stages):
        if name == "unadapted":
            plan = StagePlan(1, 1, 0)
        elif name == "adapted-success":
            plan = StagePlan(1, 1 + surplus, 0)
        else:
            plan = StagePlan(1, 1 + surplus, surplus)
        plans.append(plan)
        surplus += plan.k - plan.m_fail
    return plans


@dataclass(frozen=True)
class StageRecord:
    stage: int
    plan: StagePlan
    p_success: float
    p_fail: float
    p_discard: float
    p_success_minus: float
    p_fail_minus: float
    reach: float
    cumulative_success: float
    overlap_input: float
    overlap_success: float
    overlap_fail: float


@dataclass
class CascadeTrace:
    alpha: float
    strategy: str
    stages: list[StageRecord] = field(default_factory=list)
    halted_at: int | None = None
    halt_reason: str | None = None

    @property
    def cumulative_success(self) -> float:
        return self.stages[-1].cumulative_success if self.stages else 0.0

    @property
    def residual_failure(self) -> float:
        if not self.stages:
            return 1.0
        last = self.stages[-1]
        return last.reach * last.p_fail

    @property
    def cumulative_discard(self) -> float:
        return sum(s.reach * s.p_discard for s in self.stages)

    def cumulative_at(self, depth: int) -> float:
        """Cumulative success after ``depth`` stages; flat once the cascade halted."""
        if depth < 1:
            return 0.0
        if not self.stages:
            return 0.0
        return self.stages[min(depth, len(self.stages)) - 1].cumulative_success

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "strategy": self.strategy,
            "halted_at": self.halted_at,
            "halt_reason": self.halt_reason,
            "stages": [asdict(s) for s in self.stages],
        }

    def rows(self) -> list[dict]:
        out = []
        for s in self.stages:
            out.append(
                {
                    "stage": s.stage,
                    "k": s.plan.k,
                    "m_success": s.plan.m_success,
                    "m_fail": s.plan.m_fail,
                    "T": s.plan.T,
                    "p_success": s.p_success,
                    "p_fail": s.p_fail,
                    "p_discard": s.p_discard,
                    "cumulative_success": s.cumulative_success,
                    "overlap_input": s.overlap_input,
                    "overlap_success": s.overlap_success,
                    "overlap_fail": s.overlap_fail,
                }
            )
        return out


def _prob(raw) -> float:
    return float((abs(raw) ** 2).sum())


def _overlap(u, v) -> float:
    if _prob(u) == 0.0 or _prob(v) == 0.0:
        return math.nan
    return abs(normalized_overlap(FockVector(u), FockVector(v)))


def solve_stage_T(plus: FockVector, minus: FockVector, k: int, m_success: int, tol: float = 1e-10) -> float:
    """Transmissivity orthogonalising the success outputs of a branch pair."""

    def signed(T):
        p = replace_unnormalized(plus, k, m_success, T)
        q = replace_unnormalized(minus, k, m_success, T)
        pp, qq = _prob(p), _prob(q)
        if pp == 0.0 or qq == 0.0:
            return math.nan
        return np.vdot(p, q).real / math.sqrt(pp * qq)

    def prob(T):
        return _prob(replace_unnormalized(plus, k, m_success, T))

    return find_orthogonal_T(signed, prob, tol)


def _initial_pair(alpha: float) -> tuple[FockVector, FockVector]:
    dim = default_dim(alpha)
    return coherent(alpha, dim), coherent(-alpha, dim)


def run_cascade(
    alpha: float,
    plans: list[StagePlan],
    n_stages: int | None = None,
    strategy: str = "custom",
    tol: float = 1e-10,
) -> CascadeTrace:
    """Run the failure-path cascade and record every stage.

    The truncation grows by ``k`` per stage through the replacement map, so
    photon number is conserved exactly. A stage without an orthogonalising
    transmissivity halts the run; the trace keeps the stages before it.
    """
    _require_alpha(alpha)
    if n_stages is not None:
        plans = plans[:n_stages]
    plus, minus = _initial_pair(alpha)
    trace = CascadeTrace(float(alpha), strategy)
    reach, cumulative = 1.0, 0.0
    for i, plan in enumerate(plans, start=1):
        T = plan.T
        if T is None:
            try:
                T = solve_stage_T(plus, minus, plan.k, plan.m_success, tol)
            except NoRootError as exc:
                trace.halted_at, trace.halt_reason = i, f"stage infeasible: {exc}"
                break
        plan = replace(plan, T=T)
        succ_p = replace_unnormalized(plus, plan.k, plan.m_success, T)
        succ_m = replace_unnormalized(minus, plan.k, plan.m_success, T)
        fail_p = replace_unnormalized(plus, plan.k, plan.m_fail, T)
        fail_m = replace_unnormalized(minus, plan.k, plan.m_fail, T)
        ps, pf = _prob(succ_p), _prob(fail_p)
        cumulative += reach * ps
        trace.stages.append(
            StageRecord(
                stage=i,
                plan=plan,
                p_success=ps,
                p_fail=pf,
                p_discard=1.0 - ps - pf,
                p_success_minus=_prob(succ_m),
                p_fail_minus=_prob(fail_m),
                reach=reach,
                cumulative_success=cumulative,
                overlap_input=abs(normalized_overlap(plus, minus)),
                overlap_success=_overlap(succ_p, succ_m),
                overlap_fail=_overlap(fail_p, fail_m),
            )
        )
        reach *= pf
        if pf == 0.0:
            trace.halted_at, trace.halt_reason = i + 1, "failure branch has zero probability"
            break
        plus, minus = FockVector(fail_p).normalized(), FockVector(fail_m).normalized()
    return trace


def stage_inputs(alpha: float, stage: int, strategy: str = "adapted-success") -> tuple[FockVector, FockVector, StagePlan]:
    """Branch pair entering ``stage`` along the strategy's failure path, with that stage's resolved plan."""
    _require_alpha(alpha)
    if stage < 1:
        raise InfeasibleStageError("stages are numbered from 1")
    plans = build_strategy(strategy, stage)
    plus, minus = _initial_pair(alpha)
    for i, plan in enumerate(plans, start=1):
        try:
            T = solve_stage_T(plus, minus, plan.k, plan.m_success)
        except NoRootError as exc:
            raise InfeasibleStageError(f"stage {i} has no orthogonalising T: {exc}") from exc
        plan = replace(plan, T=T)
        if i == stage:
            return plus, minus, plan
        fail_p = replace_unnormalized(plus, plan.k, plan.m_fail, T)
        fail_m = replace_unnormalized(minus, plan.k, plan.m_fail, T)
        if _prob(fail_p) == 0.0:
            raise InfeasibleStageError(f"failure herald at stage {i} has zero probability")
        plus, minus = FockVector(fail_p).normalized(), FockVector(fail_m).normalized()
    raise AssertionError("unreachable")


def failure_overlaps(alpha: float, stage: int, heralds, strategy: str = "adapted-success") -> dict[int, float]:
    """Normalised ``|<fail+|fail->|`` for each herald in ``heralds`` at ``stage``.

    Earlier stages follow the strategy's own failure herald; the given stage
    uses its orthogonalising transmissivity.
    """
    plus, minus, plan = stage_inputs(alpha, stage, strategy)
    out = {}
    for m in heralds:
        if m == plan.m_success:
            raise InfeasibleStageError(f"herald {m} is the success event at stage {stage}")
        p = replace_unnormalized(plus, plan.k, m, plan.T)
        q = replace_unnormalized(minus, plan.k, m, plan.T)
        if _prob(p) < 1e-300 or _prob(q) < 1e-300:
            raise InfeasibleStageError(f"herald {m} has zero probability at stage {stage}")
        out[m] = _overlap(p, q)
    return out


def failure_overlap(alpha: float, stage: int, failure_herald: int, strategy: str = "adapted-success") -> float:
    return failure_overlaps(alpha, stage, [failure_herald], strategy)[failure_herald]


def stage_input_overlap(alpha: float, stage: int, strategy: str = "adapted-success") -> float:
    plus, minus, _ = stage_inputs(alpha, stage, strategy)
    return abs(normalized_overlap(plus, minus))
