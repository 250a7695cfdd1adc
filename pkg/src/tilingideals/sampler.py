"""Lazy Metropolis random walk on the tiling space.

Each step proposes one (move, direction) pair uniformly from the fixed move
set and applies it when it fits the current tiling, otherwise stays put.
The proposal is symmetric, so the uniform distribution on each connected
component of the fiber graph is stationary.  Randomness comes from numpy's
PCG64 generator; restarts use child seeds spawned from one SeedSequence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graph import TilingGraph
from .moves import Move, moves_of_kind
from .tiling import Tiling, TilingError, is_perfect_matching

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class ChainConfig:
    moves: str
    steps: int
    start: Tiling
    seed: int = DEFAULT_SEED
    check: bool = False  # re-verify the matching property after every accepted move

    def __post_init__(self) -> None:
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")


def _run(start: int, masks: list[tuple[int, int]], steps: int, rng: np.random.Generator,
         record: Counter | None, graph: TilingGraph | None) -> int:
    if not masks or steps == 0:
        if record is not None and steps:
            record[start] += steps
        return start
    state = start
    n_prop = 2 * len(masks)
    chunk = 1 << 16
    done = 0
    while done < steps:
        draws = rng.integers(0, n_prop, size=min(chunk, steps - done))
        for k in draws.tolist():
            r, a = masks[k >> 1]
            if k & 1:
                r, a = a, r
            if state & r == r and not state & a:
                state = (state & ~r) | a
                if graph is not None and not is_perfect_matching(graph, Tiling.from_mask(state).edges):
                    raise TilingError("chain left the tiling space")
            if record is not None:
                record[state] += 1
        done += len(draws)
    return state


def _masks(graph: TilingGraph, kind: str) -> list[tuple[int, int]]:
    moves: list[Move] = moves_of_kind(graph, kind)
    return [m.masks for m in moves]


def random_walk(graph: TilingGraph, cfg: ChainConfig) -> Tiling:
    """Final state of a ``cfg.steps``-step chain started at ``cfg.start``."""
    if not is_perfect_matching(graph, cfg.start.edges):
        raise TilingError("chain must start from a tiling")
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    end = _run(cfg.start.mask, _masks(graph, cfg.moves), cfg.steps, rng, None,
               graph if cfg.check else None)
    return Tiling.from_mask(end)


def visit_counts(
    graph: TilingGraph, cfg: ChainConfig, samples: int, burn_in: int = 0
) -> dict[Tiling, int]:
    """Visit counts pooled over ``samples`` independent restarts.

    Every restart starts at ``cfg.start`` with its own spawned seed, discards
    ``burn_in`` steps and then records the state after each of ``cfg.steps``
    further steps.  With ``cfg.steps == 0`` the state after burn-in is
    recorded once per restart.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not is_perfect_matching(graph, cfg.start.edges):
        raise TilingError("chain must start from a tiling")
    masks = _masks(graph, cfg.moves)
    check = graph if cfg.check else None
    counts: Counter = Counter()
    for child in np.random.SeedSequence(cfg.seed).spawn(samples):
        rng = np.random.Generator(np.random.PCG64(child))
        state = _run(cfg.start.mask, masks, burn_in, rng, None, check)
        if cfg.steps == 0:
            counts[state] += 1
        else:
            _run(state, masks, cfg.steps, rng, counts, check)
    return dict(sorted((Tiling.from_mask(m), c) for m, c in counts.items()))


def empirical_distribution(
    graph: TilingGraph, cfg: ChainConfig, samples: int, burn_in: int = 0
) -> dict[Tiling, float]:
    """Visit frequencies from :func:`visit_counts`; they sum to 1."""
    counts = visit_counts(graph, cfg, samples, burn_in)
    total = sum(counts.values())
    return {t: c / total for t, c in counts.items()}


def total_variation_from_uniform(freqs: dict[Tiling, float], support: list[Tiling]) -> float:
    u = 1.0 / len(support)
    return 0.5 * sum(abs(freqs.get(t, 0.0) - u) for t in support)
