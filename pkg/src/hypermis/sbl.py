"""Sampling MIS solver: repeatedly sample a vertex subset, solve the
induced low-dimension hypergraph by random marking, and filter.

Per round, every remaining vertex is sampled independently with
probability p.  If the hypergraph induced on the sample has an edge
larger than the dimension cap d, the sample is redrawn (fresh
randomness, bounded retries); otherwise the marking solver runs on it
and colors the sample: blue vertices join the independent set, red ones
are discarded forever.  Every edge touching a red vertex can no longer
become fully blue and is dropped; surviving edges shrink by the blue
vertices.  The loop stops once fewer than ceil(1/p^2) vertices remain
(or a round cap hits) and a sequential greedy pass finishes the
residual hypergraph.  Inputs whose dimension is already <= d skip
straight to the marking solver.

Default parameters follow the asymptotic recipe p = n^(-1/log2^(3) n)
and d = log2^(2) n / (4 log2^(3) n); both are degenerate at desk scale
(the d formula is < 1 for any feasible n), so d clamps to >= 3 and
everything is overridable.  All logarithms are base 2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import rng
from .baseline import greedy_mis_over
from .bl import STATUS_OK, BlConfig, run_bl
from .core import (
    Hypergraph,
    InternalInvariantError,
    is_independent,
    is_maximal_independent,
    normalize,
)

FAIL_ABORT = "abort"
FAIL_FALLBACK_GREEDY = "fallback-greedy"

FALLBACK_GREEDY = "greedy-ran"
FALLBACK_BL_DIRECT = "bl-direct-ran"


class DegenerateParamsError(ValueError):
    """n is too small for the asymptotic parameter formulas and no
    override was supplied."""


class DimensionGateExhausted(RuntimeError):
    """Every allowed resample produced an induced edge above the cap."""


class RoundLimitError(RuntimeError):
    """An inner marking run failed to finish within its round budget."""


@dataclass(frozen=True)
class SblConfig:
    seed: int
    alpha_override: float | None = None
    d_cap_override: int | None = None
    p_override: float | None = None
    stop_threshold_override: int | None = None
    max_retries_per_round: int = 20
    max_rounds: int | None = None
    fail_policy: str = FAIL_FALLBACK_GREEDY
    check_invariants: bool = False

    def __post_init__(self):
        if self.alpha_override is not None and self.alpha_override <= 0:
            raise ValueError("alpha_override must be > 0")
        if self.d_cap_override is not None and self.d_cap_override < 2:
            raise ValueError("d_cap_override must be >= 2")
        if self.p_override is not None and not 0.0 < self.p_override < 1.0:
            raise ValueError("p_override must lie in (0, 1)")
        if self.stop_threshold_override is not None and self.stop_threshold_override < 1:
            raise ValueError("stop_threshold_override must be >= 1")
        if self.max_retries_per_round < 0:
            raise ValueError("max_retries_per_round must be >= 0")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        if self.fail_policy not in (FAIL_ABORT, FAIL_FALLBACK_GREEDY):
            raise ValueError(f"unknown fail_policy {self.fail_policy!r}")


@dataclass(frozen=True)
class SblParams:
    p: float
    d: int
    stop_threshold: int
    within_edge_bound: bool


def derive_params(n: int, m: int, cfg: SblConfig) -> SblParams:
    """Resolve (p, d, stop_threshold) and evaluate the edge-count check.

    p = 1/n^alpha with alpha = 1/log2^(3) n, d = floor of
    log2^(2) n / (4 log2^(3) n) clamped to >= 3, stop = ceil(1/p^2), and
    the edge bound asks m <= n^beta with
    beta = log2^(2) n / (8 (log2^(3) n)^2).  Raises DegenerateParamsError
    when a formula needs log2^(3) n > 0 (i.e. n >= 5) and no override
    covers it.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    log1 = math.log2(n)
    log2_ = math.log2(log1) if log1 > 0 else float("-inf")
    log3 = math.log2(log2_) if log2_ > 0 else float("-inf")

    if cfg.p_override is not None:
        p = cfg.p_override
    else:
        alpha = cfg.alpha_override
        if alpha is None:
            if log3 <= 0:
                raise DegenerateParamsError(
                    f"n={n} gives log2^(3) n <= 0; supply --p or --alpha"
                )
            alpha = 1.0 / log3
        p = float(n) ** (-alpha)
        if not 0.0 < p < 1.0:
            raise DegenerateParamsError(f"derived p={p} outside (0, 1)")

    if cfg.d_cap_override is not None:
        d = cfg.d_cap_override
    else:
        if log3 <= 0:
            raise DegenerateParamsError(
                f"n={n} gives log2^(3) n <= 0; supply --d-cap"
            )
        d = max(3, math.floor(log2_ / (4.0 * log3)))

    stop = cfg.stop_threshold_override
    if stop is None:
        stop = math.ceil(1.0 / (p * p))

    if log3 == 0 or not math.isfinite(log3):
        within = True  # below the asymptotic regime the bound is vacuous
    else:
        beta = log2_ / (8.0 * log3 * log3)
        within = m <= float(n) ** beta
    return SblParams(p=p, d=d, stop_threshold=stop, within_edge_bound=within)


@dataclass
class SblRoundRecord:
    round: int
    sampled: tuple[int, ...]
    induced_edges: int
    induced_dim: int
    retries: int
    bl_summary: dict | None
    edges_removed_red: int
    edges_shrunk: int
    remaining_vertices: int
    remaining_edges: int

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "round": self.round,
                "sampled": list(self.sampled),
                "induced_edges": self.induced_edges,
                "induced_dim": self.induced_dim,
                "retries": self.retries,
                "bl_summary": self.bl_summary,
                "edges_removed_red": self.edges_removed_red,
                "edges_shrunk": self.edges_shrunk,
                "remaining_vertices": self.remaining_vertices,
                "remaining_edges": self.remaining_edges,
            }
        )


@dataclass
class SblResult:
    mis: tuple[int, ...]
    rounds: list[SblRoundRecord] = field(default_factory=list)
    fallback: str = FALLBACK_GREEDY
    status: str = STATUS_OK
    exit_reason: str = ""
    retries_total: int = 0
    params: SblParams | None = None

    def trace_jsonl(self) -> str:
        return "".join(rec.to_json_line() + "\n" for rec in self.rounds)

    def result_json(self) -> str:
        return json.dumps(
            {
                "mis": list(self.mis),
                "status": self.status,
                "rounds_used": len(self.rounds),
                "retries_total": self.retries_total,
                "fallback": self.fallback,
            }
        )


Sampler = Callable[[int, np.ndarray], np.ndarray]


def _default_sampler(cfg: SblConfig, p: float, round_index: int) -> Sampler:
    def sample(retry: int, ids: np.ndarray) -> np.ndarray:
        key = rng.derive_key(cfg.seed, rng.TAG_SBL_SAMPLE, round_index, retry)
        return rng.uniforms(key, ids) < p

    return sample


def sbl_round(
    h: Hypergraph,
    p: float,
    d: int,
    cfg: SblConfig,
    round_index: int,
    vertex_set: Iterable[int] | None = None,
    sampler: Sampler | None = None,
):
    """One sample → gate → mark → filter round.

    Returns (blue, red, next_h, next_vertex_set, record); when every
    allowed resample trips the dimension gate, returns
    (None, None, h, vertex_set, record) and the caller applies
    cfg.fail_policy.  The failed path leaves the hypergraph untouched.
    """
    alive = (
        np.arange(1, h.n + 1, dtype=np.int64)
        if vertex_set is None
        else np.array(sorted(set(vertex_set)), dtype=np.int64)
    )
    sample = sampler or _default_sampler(cfg, p, round_index)

    chosen = None
    retries = 0
    for retry in range(cfg.max_retries_per_round + 1):
        mask = sample(retry, alive)
        sampled = alive[mask]
        inside = set(int(v) for v in sampled)
        induced = [e for e in h.edges if inside.issuperset(e)]
        induced_dim = max((len(e) for e in induced), default=0)
        retries = retry
        if induced_dim <= d:
            chosen = (sampled, inside, induced, induced_dim)
            break

    if chosen is None:
        record = SblRoundRecord(
            round=round_index,
            sampled=tuple(int(v) for v in sampled),
            induced_edges=len(induced),
            induced_dim=induced_dim,
            retries=retries,
            bl_summary=None,
            edges_removed_red=0,
            edges_shrunk=0,
            remaining_vertices=len(alive),
            remaining_edges=h.m,
        )
        return None, None, h, tuple(int(v) for v in alive), record

    sampled, inside, induced, induced_dim = chosen
    bl_cfg = BlConfig(seed=rng.derive_key(cfg.seed, rng.TAG_SBL_INNER, round_index, retries))
    bl_res = run_bl(Hypergraph(h.n, induced), bl_cfg, vertex_set=inside)
    if bl_res.status != STATUS_OK:
        raise RoundLimitError(
            f"inner marking run exceeded its round budget in round {round_index}"
        )
    blue = set(bl_res.mis)
    red = inside - blue

    next_edges = []
    removed = 0
    shrunk = 0
    for e in h.edges:
        if any(v in red for v in e):
            removed += 1
            continue
        trimmed = tuple(v for v in e if v not in blue)
        if not trimmed:
            raise InternalInvariantError("edge became empty during blue filtering")
        if len(trimmed) < len(e):
            shrunk += 1
        next_edges.append(trimmed)

    next_h = normalize(Hypergraph(h.n, next_edges))
    next_alive = tuple(int(v) for v in alive if int(v) not in inside)
    record = SblRoundRecord(
        round=round_index,
        sampled=tuple(int(v) for v in sampled),
        induced_edges=len(induced),
        induced_dim=induced_dim,
        retries=retries,
        bl_summary={
            "status": bl_res.status,
            "rounds_used": len(bl_res.rounds),
            "mis_size": len(blue),
        },
        edges_removed_red=removed,
        edges_shrunk=shrunk,
        remaining_vertices=len(next_alive),
        remaining_edges=next_h.m,
    )
    return tuple(sorted(blue)), tuple(sorted(red)), next_h, next_alive, record


EXIT_STOP_THRESHOLD = "stop-threshold"
EXIT_MAX_ROUNDS = "max-rounds"
EXIT_DIMENSION_GATE = "dimension-gate"
EXIT_BL_DIRECT = "bl-direct"


def run_sbl(h: Hypergraph, cfg: SblConfig) -> SblResult:
    """Full solver: parameter derivation, sampling loop, residual greedy.

    Parameters are fixed from the initial vertex count and never
    recomputed as the vertex set shrinks.  Both the vertex-count
    threshold and the round cap bound the loop; whichever fires is
    recorded in exit_reason.  On ok the result is checked to be a
    maximal independent set of the input.
    """
    hn = normalize(h)
    # a 0- or 1-vertex instance has dimension <= 1 and always takes the
    # direct path; the parameter formulas are not defined there
    params = derive_params(hn.n, hn.m, cfg) if hn.n >= 2 else None

    if params is None or hn.dim <= params.d:
        bl_cfg = BlConfig(seed=rng.derive_key(cfg.seed, rng.TAG_SBL_INNER, 0, 0))
        bl_res = run_bl(hn, bl_cfg)
        result = SblResult(
            mis=bl_res.mis,
            rounds=[],
            fallback=FALLBACK_BL_DIRECT,
            status=bl_res.status,
            exit_reason=EXIT_BL_DIRECT,
            retries_total=0,
            params=params,
        )
        if result.status == STATUS_OK:
            _final_check(h, result.mis)
        return result

    max_rounds = cfg.max_rounds
    if max_rounds is None:
        max_rounds = max(1, math.ceil(2.0 * math.log2(hn.n) / params.p))

    cur = hn
    alive: tuple[int, ...] = tuple(hn.vertices)
    blues: set[int] = set()
    records: list[SblRoundRecord] = []
    retries_total = 0
    exit_reason = EXIT_STOP_THRESHOLD
    rnd = 0
    while len(alive) >= params.stop_threshold:
        if rnd >= max_rounds:
            exit_reason = EXIT_MAX_ROUNDS
            break
        blue, red, cur, alive, rec = sbl_round(
            cur, params.p, params.d, cfg, rnd, vertex_set=alive
        )
        records.append(rec)
        retries_total += rec.retries
        if blue is None:
            if cfg.fail_policy == FAIL_ABORT:
                raise DimensionGateExhausted(
                    f"round {rnd}: {cfg.max_retries_per_round + 1} samples all "
                    f"induced dimension > {params.d}"
                )
            exit_reason = EXIT_DIMENSION_GATE
            break
        blues.update(blue)
        if cfg.check_invariants and not is_independent(hn, blues):
            raise InternalInvariantError("blue set lost independence")
        rnd += 1

    residual = greedy_mis_over(cur.edges, alive)
    mis = tuple(sorted(blues.union(residual)))
    result = SblResult(
        mis=mis,
        rounds=records,
        fallback=FALLBACK_GREEDY,
        status=STATUS_OK,
        exit_reason=exit_reason,
        retries_total=retries_total,
        params=params,
    )
    _final_check(h, result.mis)
    return result


def _final_check(h: Hypergraph, mis: tuple[int, ...]) -> None:
    if not is_maximal_independent(h, mis):
        raise InternalInvariantError("sampling solver produced a non-maximal set")
