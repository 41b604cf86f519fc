"""Seedable random variate generation on named, independent streams.

Every random quantity in the simulator is drawn from one of four named
streams (demand, lead time, disruption, optimizer).  Streams are backed by
counter-based Philox generators keyed through ``numpy.random.SeedSequence``
with the stream id and replication id as the spawn key, so

* the same ``(seed, stream_id, replication_id)`` triple always reproduces
  the same draw sequence, on any platform, and
* draws on one stream never perturb another, which is what makes paired
  (common-random-number) policy comparisons possible.

The generator family is fixed: changing it would silently change every
seeded result, so it is part of the package's compatibility contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "Stream",
    "RngStream",
    "sample_poisson",
    "sample_lead_time",
    "sample_bernoulli",
    "sample_gamma",
    "sample_beta",
    "derive_root",
    "substream",
]


class Stream(IntEnum):
    """Named stream labels; the integer value is part of the seeding key."""

    DEMAND = 0
    LEAD_TIME = 1
    DISRUPTION = 2
    OPTIMIZER = 3


def _make_generator(seed: int, stream_id: int, replication_id: int) -> np.random.Generator:
    """Pure function from (seed, stream, replication) to a Philox generator."""
    if seed < 0:
        raise InvalidParameterError(f"seed must be a non-negative integer, got {seed}")
    ss = np.random.SeedSequence(
        entropy=int(seed), spawn_key=(int(stream_id), int(replication_id))
    )
    return np.random.Generator(np.random.Philox(ss))


@dataclass
class RngStream:
    """One named random stream owned by a single simulation run.

    Creating a stream is pure and cheap; the generator state lives inside
    the instance, so two streams built from the same key produce identical
    sequences independently of each other.
    """

    seed: int
    stream_id: Stream
    replication_id: int = 0
    rng: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.rng = _make_generator(self.seed, self.stream_id, self.replication_id)


def sample_poisson(lam: float, stream: RngStream) -> int:
    """Draw a Poisson(lam) count; lam must be finite and >= 0."""
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam >= 0):
        raise InvalidParameterError(f"Poisson rate must be finite and >= 0, got {lam!r}")
    return int(stream.rng.poisson(lam))


def sample_lead_time(p: float, stream: RngStream) -> int:
    """Draw a lead time 1 + G with G ~ Geometric(p) failures before success.

    Equivalently the number of Bernoulli(p) trials up to and including the
    first success, so the support is {1, 2, ...} and the mean is 1/p.
    """
    if not (0.0 < p <= 1.0):
        raise InvalidParameterError(f"lead-time success probability must be in (0, 1], got {p!r}")
    return int(stream.rng.geometric(p))


def sample_bernoulli(alpha: float, stream: RngStream) -> int:
    """Draw a {0, 1} indicator that is 1 with probability alpha."""
    if not (0.0 <= alpha <= 1.0):
        raise InvalidParameterError(f"Bernoulli probability must be in [0, 1], got {alpha!r}")
    return int(stream.rng.random() < alpha)


def sample_gamma(shape: float, rate: float, stream: RngStream) -> float:
    """Draw from Gamma(shape, rate) in the shape-rate parameterization.

    Valid for any shape > 0, including shape < 1 (numpy applies the
    small-shape boosting identity internally).
    """
    if not (shape > 0 and math.isfinite(shape)):
        raise InvalidParameterError(f"Gamma shape must be finite and > 0, got {shape!r}")
    if not (rate > 0 and math.isfinite(rate)):
        raise InvalidParameterError(f"Gamma rate must be finite and > 0, got {rate!r}")
    return float(stream.rng.gamma(shape, 1.0 / rate))


def sample_beta(a: float, b: float, stream: RngStream) -> float:
    """Draw from Beta(a, b); result lies in [0, 1]."""
    if not (a > 0 and math.isfinite(a)):
        raise InvalidParameterError(f"Beta parameter a must be finite and > 0, got {a!r}")
    if not (b > 0 and math.isfinite(b)):
        raise InvalidParameterError(f"Beta parameter b must be finite and > 0, got {b!r}")
    return float(stream.rng.beta(a, b))


def derive_root(stream: RngStream) -> int:
    """Consume one 63-bit integer from a stream to key a family of substreams."""
    return int(stream.rng.integers(0, 2**63))


def substream(root: int, index: int) -> np.random.Generator:
    """Independent generator keyed purely by (root, index).

    Used by the optimizer to give every sampled scenario its own stream:
    re-creating ``substream(root, m)`` always replays scenario ``m``'s
    draws, which is how candidate policies share common random numbers.
    """
    ss = np.random.SeedSequence(entropy=int(root), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))
