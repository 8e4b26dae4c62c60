"""k-NN differential entropy and the seeded Monte-Carlo harness.

Every simulator in the package goes through :func:`mc_mean`. Trials are cut
into a fixed number of chunks; chunk ``i`` always draws from
``rng_stream(seed, i)`` and partial moments are merged in a fixed pairwise
order, so the result depends on ``(seed, trials, chunks)`` only and never on
how many threads ran the chunks.
"""
import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from ratebound.core.config import settings
from ratebound.core.errors import DomainError
from ratebound.numerics.specfun import Nats, digamma
from ratebound.schemas.montecarlo import EntropyEstimate, MonteCarloEstimate

logger = logging.getLogger(__name__)

DEFAULT_K = 4
DEFAULT_CHUNKS = 64
# floor for zero neighbor distances caused by duplicate points
KNN_JITTER = 1e-12
KNN_METRIC = "chebyshev"

_SEED_MASK = (1 << 64) - 1

# sampler(rng, size) -> per-trial values, or (values, rejected_count)
Sampler = Callable[[np.random.Generator, int], "np.ndarray | tuple[np.ndarray, int]"]


def rng_stream(seed: int, stream_id: int) -> np.random.Generator:
    """Counter-based Philox stream; distinct ids give independent streams."""
    if stream_id < 0:
        raise DomainError("stream_id must be non-negative")
    seq = np.random.SeedSequence(entropy=int(seed) & _SEED_MASK, spawn_key=(int(stream_id),))
    return np.random.Generator(np.random.Philox(seq))


def knn_entropy_estimate(samples, k: int = DEFAULT_K) -> EntropyEstimate:
    """Kozachenko-Leonenko estimate under the max-norm.

    h = ψ(N) − ψ(k) + ln V_d + (d/N)·Σ ln ε_i, where ε_i is twice the max-norm
    distance from sample i to its k-th neighbour. With ε measured as a
    diameter, the max-norm ball of diameter 1 is the unit cube, so V_d = 1
    and the volume term vanishes.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DomainError("samples must be a vector or an (N, d) matrix")
    n, d = x.shape
    if k < 1:
        raise DomainError("k must be >= 1")
    if n <= k + 1 or n < d + 2:
        raise DomainError(f"need more than k+1 and at least d+2 samples, got N={n}")
    if not np.all(np.isfinite(x)):
        raise DomainError("samples contain NaN or Inf")

    dist, _ = cKDTree(x).query(x, k=k + 1, p=np.inf)
    eps = 2.0 * dist[:, k]
    zero = eps <= 0.0
    if zero.any():
        message = f"{int(zero.sum())} duplicate point(s); neighbour distance floored at {KNN_JITTER}"
        warnings.warn(message, RuntimeWarning, stacklevel=2)
        logger.warning(message)
        eps = np.where(zero, KNN_JITTER, eps)

    terms = d * np.log(eps)
    value = digamma(n) - digamma(k) + float(terms.mean())
    stderr = float(terms.std(ddof=1) / math.sqrt(n))
    return EntropyEstimate(value=value, stderr=stderr, samples=n, method="knn", k=k, metric=KNN_METRIC)


def knn_entropy(samples, k: int = DEFAULT_K) -> Nats:
    return knn_entropy_estimate(samples, k).value


def load_samples_csv(path: str | Path, header: bool = False) -> np.ndarray:
    """Read one sample per row, comma-separated."""
    try:
        return np.loadtxt(path, delimiter=",", skiprows=1 if header else 0, ndmin=2)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from exc


def split_trials(trials: int, chunks: int) -> list[int]:
    """Deterministic chunk sizes: the first ``trials % chunks`` chunks get one extra."""
    if chunks < 1:
        raise DomainError("chunks must be >= 1")
    chunks = min(chunks, trials)
    base, extra = divmod(trials, chunks)
    return [base + (1 if i < extra else 0) for i in range(chunks)]


class _Moments(NamedTuple):
    count: int
    mean: float
    m2: float
    rejected: int


def _merge(a: _Moments, b: _Moments) -> _Moments:
    count = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * b.count / count
    m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / count
    return _Moments(count, mean, m2, a.rejected + b.rejected)


def _pairwise_reduce(parts: list[_Moments]) -> _Moments:
    while len(parts) > 1:
        merged = [_merge(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]


def mc_mean(
    sampler: Sampler,
    trials: int,
    seed: int,
    chunks: int = DEFAULT_CHUNKS,
    workers: int | None = None,
) -> MonteCarloEstimate:
    """Mean and stderr of ``sampler`` over exactly ``trials`` draws."""
    if trials < 2:
        raise DomainError("mc_mean needs at least 2 trials")
    sizes = split_trials(trials, chunks)

    def run_chunk(stream_id: int, size: int) -> _Moments:
        out = sampler(rng_stream(seed, stream_id), size)
        values, rejected = out if isinstance(out, tuple) else (out, 0)
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.shape[0] != size:
            raise DomainError(f"sampler returned {values.shape[0]} values, expected {size}")
        if not np.all(np.isfinite(values)):
            raise DomainError("sampler produced NaN or Inf")
        mean = float(values.mean())
        return _Moments(size, mean, float(np.sum((values - mean) ** 2)), int(rejected))

    workers = settings.workers if workers is None else workers
    logger.debug("mc_mean: %d trials in %d chunks on %d worker(s)", trials, len(sizes), workers)
    if workers <= 1 or len(sizes) == 1:
        parts = [run_chunk(i, size) for i, size in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(len(sizes)), sizes))

    total = _pairwise_reduce(parts)
    stderr = math.sqrt(total.m2 / (total.count - 1) / total.count)
    return MonteCarloEstimate(
        mean=total.mean, stderr=stderr, trials=total.count, seed=int(seed), rejected=total.rejected
    )
