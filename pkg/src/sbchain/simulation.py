"""Seeded Monte Carlo engine for the repeated experiment.

Each experiment is one fair coin toss; Heads contributes a single Heads-Monday
awakening, Tails a Tails-Monday followed by a Tuesday. A run reports both
camps' statistics: the per-experiment Heads frequency (halfer) and the
per-awakening Heads frequency (thirder), together with per-state occupation
frequencies and running law-of-large-numbers averages for arbitrary state
functions.

Reproducibility contract: tosses come from numpy's Philox counter-based
generator (philox4x64) keyed with (seed, block_index), one independent stream
per block of 65536 experiments. The toss stream depends only on the seed, so
identical configs produce bit-identical records no matter how many worker
threads generated the blocks. Merging per-block counters is an associative,
commutative fold; checkpointing walks the merged stream in experiment order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import json

import numpy as np

from .sbp_model import Awakening, EmptyInput, Toss, _coerce_tosses

GENERATOR_NAME = "philox4x64"
BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class SimulationConfig:
    """Seed, run length, and checkpoint cadence (every ``checkpoint_stride``
    experiments)."""

    seed: int
    n_experiments: int
    checkpoint_stride: int

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n_experiments < 1:
            raise ValueError(f"n_experiments must be >= 1, got {self.n_experiments}")
        if self.checkpoint_stride < 1:
            raise ValueError(
                f"checkpoint_stride must be >= 1, got {self.checkpoint_stride}"
            )


class StateCounts(NamedTuple):
    m_h: int
    m_t: int
    tu: int


class Checkpoint(NamedTuple):
    """Running statistics after ``experiments`` complete experiments."""

    experiments: int
    awakenings: int
    halfer: float
    thirder: float


@dataclass(frozen=True)
class SimulationRecord:
    """Counters and checkpoints of one run.

    ``config``/``generator`` are None for forced replays of an explicit coin
    list, which carry no RNG provenance.
    """

    config: SimulationConfig | None
    generator: str | None
    heads_experiments: int
    total_experiments: int
    heads_awakenings: int
    total_awakenings: int
    state_counts: StateCounts
    checkpoints: tuple[Checkpoint, ...]

    def __post_init__(self):
        tails = self.total_experiments - self.heads_experiments
        if self.total_awakenings != self.heads_experiments + 2 * tails:
            raise ValueError("awakening total inconsistent with experiment counts")
        if not (
            self.heads_awakenings == self.heads_experiments == self.state_counts.m_h
        ):
            raise ValueError("heads-awakening counters inconsistent")
        if not (self.state_counts.m_t == self.state_counts.tu == tails):
            raise ValueError("tails state counts inconsistent")


@dataclass(frozen=True)
class LLNTrace:
    """Running averages of a state function over the awakening stream.

    ``f_values`` is the function in state order (M_H, M_T, Tu);
    ``running_averages`` pairs an awakening count n with the average of f over
    the first n awakenings.
    """

    f_values: tuple[float, float, float]
    running_averages: tuple[tuple[int, float], ...]


def _block_heads(seed: int, block_index: int, count: int) -> np.ndarray:
    """Fair tosses for one block: True means Heads.

    Philox is counter-based, so the stream is fully determined by the
    (seed, block_index) key regardless of what other blocks were generated.
    """
    key = np.array([seed, block_index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    return rng.integers(0, 2, size=count, dtype=np.uint8) == 1


def _generate_heads(seed: int, n: int, workers: int | None = None) -> np.ndarray:
    n_blocks = (n + BLOCK_SIZE - 1) // BLOCK_SIZE
    sizes = [min(BLOCK_SIZE, n - b * BLOCK_SIZE) for b in range(n_blocks)]
    if workers is not None and workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda b: _block_heads(seed, b, sizes[b]), range(n_blocks))
            )
    else:
        parts = [_block_heads(seed, b, sizes[b]) for b in range(n_blocks)]
    return np.concatenate(parts)


def _checkpoint_marks(total: int, stride: int) -> list[int]:
    marks = list(range(stride, total + 1, stride))
    if not marks or marks[-1] != total:
        marks.append(total)
    return marks


def _build_record(
    heads: np.ndarray,
    stride: int,
    config: SimulationConfig | None,
    generator: str | None,
) -> SimulationRecord:
    n = len(heads)
    heads_cum = np.cumsum(heads, dtype=np.int64)
    heads_total = int(heads_cum[-1])
    tails_total = n - heads_total
    checkpoints = []
    for m in _checkpoint_marks(n, stride):
        h = int(heads_cum[m - 1])
        awakenings = 2 * m - h
        checkpoints.append(Checkpoint(m, awakenings, h / m, h / awakenings))
    return SimulationRecord(
        config=config,
        generator=generator,
        heads_experiments=heads_total,
        total_experiments=n,
        heads_awakenings=heads_total,
        total_awakenings=heads_total + 2 * tails_total,
        state_counts=StateCounts(heads_total, tails_total, tails_total),
        checkpoints=tuple(checkpoints),
    )


def run_simulation(
    config: SimulationConfig, workers: int | None = None
) -> SimulationRecord:
    """Run ``config.n_experiments`` seeded experiments.

    ``workers`` only chooses how many threads generate toss blocks; it never
    changes the result.
    """
    heads = _generate_heads(config.seed, config.n_experiments, workers)
    return _build_record(
        heads, config.checkpoint_stride, config=config, generator=GENERATOR_NAME
    )


def forced_run(
    coins: Iterable[Toss | str], checkpoint_stride: int = 1
) -> SimulationRecord:
    """Replay an explicit coin sequence through the same counting pipeline."""
    tosses = _coerce_tosses(coins)
    if not tosses:
        raise EmptyInput("cannot run a simulation on an empty coin sequence")
    if checkpoint_stride < 1:
        raise ValueError(f"checkpoint_stride must be >= 1, got {checkpoint_stride}")
    heads = np.array([t is Toss.HEADS for t in tosses], dtype=bool)
    return _build_record(heads, checkpoint_stride, config=None, generator=None)


def halfer_statistic(record: SimulationRecord) -> float:
    """Per-experiment Heads frequency."""
    return record.heads_experiments / record.total_experiments


def thirder_statistic(record: SimulationRecord) -> float:
    """Per-awakening Heads frequency."""
    return record.heads_awakenings / record.total_awakenings


def state_frequencies(record: SimulationRecord) -> tuple[float, float, float]:
    """Occupation frequency of (M_H, M_T, Tu) in the awakening stream."""
    total = record.total_awakenings
    return (
        record.state_counts.m_h / total,
        record.state_counts.m_t / total,
        record.state_counts.tu / total,
    )


def lln_trace(
    config: SimulationConfig,
    f: Mapping[Awakening, float],
    workers: int | None = None,
) -> LLNTrace:
    """Running averages of f over the awakening stream of a seeded run.

    Uses the same toss stream as :func:`run_simulation` for the same config.
    Checkpoints sit every ``config.checkpoint_stride`` awakenings plus the
    final one. Averages are computed in exact rational arithmetic from the
    per-state counts (so a constant f averages to exactly that constant) and
    rounded once to float.
    """
    missing = [s for s in (Awakening.M_H, Awakening.M_T, Awakening.TU) if s not in f]
    if missing:
        raise ValueError(f"f must be defined on all three states; missing {missing}")
    f_values = (
        float(f[Awakening.M_H]),
        float(f[Awakening.M_T]),
        float(f[Awakening.TU]),
    )
    heads = _generate_heads(config.seed, config.n_experiments, workers)

    # Awakening stream as state indices 0/1/2: H -> [0], T -> [1, 2].
    lengths = np.where(heads, 1, 2).astype(np.int64)
    ends = np.cumsum(lengths)
    starts = ends - lengths
    total = int(ends[-1])
    states = np.full(total, 2, dtype=np.uint8)
    states[starts[heads]] = 0
    states[starts[~heads]] = 1

    cum_mh = np.cumsum(states == 0, dtype=np.int64)
    cum_mt = np.cumsum(states == 1, dtype=np.int64)
    exact_f = tuple(Fraction(v) for v in f_values)
    averages = []
    for n in _checkpoint_marks(total, config.checkpoint_stride):
        c_mh = int(cum_mh[n - 1])
        c_mt = int(cum_mt[n - 1])
        c_tu = n - c_mh - c_mt
        avg = (c_mh * exact_f[0] + c_mt * exact_f[1] + c_tu * exact_f[2]) / n
        averages.append((n, float(avg)))
    return LLNTrace(f_values=f_values, running_averages=tuple(averages))


def indicator(state: Awakening) -> dict[Awakening, float]:
    """The function that is 1.0 on ``state`` and 0.0 elsewhere."""
    return {
        s: 1.0 if s is state else 0.0
        for s in (Awakening.M_H, Awakening.M_T, Awakening.TU)
    }


# --- record serialization -------------------------------------------------
# JSON carries full-precision floats so parse(print(record)) == record; the
# CSV view renders one checkpoint per row with 6 fractional digits.


def record_to_json(record: SimulationRecord) -> str:
    doc = {
        "generator": record.generator,
        "config": None
        if record.config is None
        else {
            "seed": record.config.seed,
            "n_experiments": record.config.n_experiments,
            "checkpoint_stride": record.config.checkpoint_stride,
        },
        "heads_experiments": record.heads_experiments,
        "total_experiments": record.total_experiments,
        "heads_awakenings": record.heads_awakenings,
        "total_awakenings": record.total_awakenings,
        "state_counts": {
            "M_H": record.state_counts.m_h,
            "M_T": record.state_counts.m_t,
            "Tu": record.state_counts.tu,
        },
        "checkpoints": [
            {
                "experiments": c.experiments,
                "awakenings": c.awakenings,
                "halfer": c.halfer,
                "thirder": c.thirder,
            }
            for c in record.checkpoints
        ],
    }
    return json.dumps(doc, indent=2)


def record_from_json(text: str) -> SimulationRecord:
    doc = json.loads(text)
    config = doc["config"]
    counts = doc["state_counts"]
    return SimulationRecord(
        config=None
        if config is None
        else SimulationConfig(
            seed=config["seed"],
            n_experiments=config["n_experiments"],
            checkpoint_stride=config["checkpoint_stride"],
        ),
        generator=doc["generator"],
        heads_experiments=doc["heads_experiments"],
        total_experiments=doc["total_experiments"],
        heads_awakenings=doc["heads_awakenings"],
        total_awakenings=doc["total_awakenings"],
        state_counts=StateCounts(counts["M_H"], counts["M_T"], counts["Tu"]),
        checkpoints=tuple(
            Checkpoint(c["experiments"], c["awakenings"], c["halfer"], c["thirder"])
            for c in doc["checkpoints"]
        ),
    )


def record_to_csv(record: SimulationRecord) -> str:
    lines = ["experiments,awakenings,halfer,thirder,freq_MH,freq_MT,freq_TU"]
    for c in record.checkpoints:
        heads = 2 * c.experiments - c.awakenings
        tails = c.experiments - heads
        lines.append(
            f"{c.experiments},{c.awakenings},{c.halfer:.6f},{c.thirder:.6f},"
            f"{heads / c.awakenings:.6f},{tails / c.awakenings:.6f},{tails / c.awakenings:.6f}"
        )
    return "\n".join(lines) + "\n"
