"""Seeded generation of projections and projection pairs.

All randomness flows from one ``numpy.random.Generator`` per seed, so a
given ``(n, rank, seed, backend)`` always yields the same matrices.
"""

import hashlib
import logging

import numpy as np
import scipy.linalg

from projcalc import exact, numeric
from projcalc.numeric import ToleranceConfig
from projcalc.pairs import ProjectionPair, build_pair
from projcalc.ring import BackendKind, RingElement, StarRingContext

__all__ = [
    "FIXTURE_NAMES",
    "SEED_KEY",
    "RandomPairGenerator",
    "child_seed",
    "degenerate_fixtures",
    "hypothesis_grid",
    "pair_fingerprint",
    "random_pair",
    "random_pair_with_overlap",
    "random_projection",
]

log = logging.getLogger(__name__)

SEED_KEY = b"projcalc/1"
FIXTURE_NAMES = ("p=0", "p=1", "q=0", "q=1", "p=q", "pq=0")

# entries of exact random bases are re + i*im with re, im in this range
_EXACT_ENTRY_RANGE = (-3, 3)
_MAX_REDRAWS = 1000


def child_seed(seed: int, dim: int, trial: int | str) -> int:
    """Stable 64-bit seed for one trial of a campaign.

    ``blake2b`` keyed with ``b"projcalc/1"`` over ``"seed:dim:trial"``,
    first 8 bytes read big-endian.
    """
    h = hashlib.blake2b(f"{seed}:{dim}:{trial}".encode(), digest_size=8, key=SEED_KEY)
    return int.from_bytes(h.digest(), "big")


def pair_fingerprint(pair: ProjectionPair) -> str:
    """First 16 hex digits of a SHA-256 over backend, dimension and entries."""
    ctx = pair.context
    h = hashlib.sha256(f"{ctx.backend_kind.value}:{ctx.dimension}".encode())
    for x in (pair.p, pair.q):
        if ctx.is_exact:
            h.update(";".join(map(exact.format_gaussian, x.data.flat)).encode())
        else:
            h.update(np.ascontiguousarray(x.data, dtype="<c16").tobytes())
    return h.hexdigest()[:16]


class RandomPairGenerator:
    """Reproducible source of projections of prescribed rank.

    Parameters
    ----------
    seed : int
        Seed of the underlying ``numpy.random.Generator``.
    backend : BackendKind or str, optional
        Default: ``'float'``
    tolerance : ToleranceConfig, optional
        Tolerance of the generated elements' context.
    """

    def __init__(self, seed: int, backend="float", tolerance=None):
        self.seed = seed
        self.backend = BackendKind(backend)
        self.tolerance = tolerance or ToleranceConfig()
        self.rng = np.random.default_rng(seed)

    def context(self, n: int) -> StarRingContext:
        return StarRingContext(self.backend, n, self.tolerance)

    def _exact_columns(self, n: int, k: int) -> np.ndarray:
        lo, hi = _EXACT_ENTRY_RANGE
        for attempt in range(_MAX_REDRAWS):
            re = self.rng.integers(lo, hi + 1, size=(n, k))
            im = self.rng.integers(lo, hi + 1, size=(n, k))
            cols = np.empty((n, k), dtype=object)
            for idx in np.ndindex(n, k):
                cols[idx] = exact.gaussian(int(re[idx]), int(im[idx]))

            if exact.rref(cols)[2] == k:
                return cols
            log.debug("Redrawing rank-deficient %dx%d basis (%d).", n, k, attempt)

        raise RuntimeError(f"No full-rank {n}x{k} basis after {_MAX_REDRAWS} draws.")

    def _float_columns(self, n: int, k: int) -> np.ndarray:
        shape = (n, k)
        return self.rng.standard_normal(shape) + 1j * self.rng.standard_normal(shape)

    def columns(self, n: int, k: int) -> np.ndarray:
        """``n x k`` matrix of full column rank."""
        if not 0 <= k <= n:
            raise ValueError(f"Cannot draw {k} independent columns in dimension {n}.")
        if self.backend is BackendKind.EXACT:
            return self._exact_columns(n, k)
        return self._float_columns(n, k)

    def projector(self, ctx: StarRingContext, basis: np.ndarray) -> RingElement:
        """Orthogonal projector onto the span of the full-rank ``basis``."""
        n, k = basis.shape
        if ctx.is_exact:
            return ctx.element(exact.projector_from_basis(basis))
        if k == 0:
            return ctx.zero

        q, _ = scipy.linalg.qr(basis, mode="economic")
        p = q @ numeric.adjoint(q)
        return ctx.element((p + numeric.adjoint(p)) / 2)

    def projection(self, n: int, rank: int) -> RingElement:
        if not 0 <= rank <= n:
            raise ValueError(f"Rank must lie in [0, {n}], got {rank}.")
        ctx = self.context(n)
        if rank == n:
            return ctx.one
        return self.projector(ctx, self.columns(n, rank))

    def pair(self, n: int, rank_p: int, rank_q: int) -> ProjectionPair:
        """Two independently drawn projections."""
        return build_pair(self.projection(n, rank_p), self.projection(n, rank_q))

    def pair_with_overlap(
        self, n: int, rank_p: int, rank_q: int, overlap: int
    ) -> ProjectionPair:
        """Pair whose ranges share exactly ``overlap`` dimensions.

        Then ``dim(pR ∩ qR) = overlap`` and
        ``dim(pR + qR) = rank_p + rank_q - overlap``.

        One basis ``[S | U | V]`` of full column rank is drawn; ``p``
        projects onto ``[S | U]`` and ``q`` onto ``[S | V]``.
        """
        span = rank_p + rank_q - overlap
        if not 0 <= overlap <= min(rank_p, rank_q) or span > n:
            raise ValueError(
                f"No pair in dimension {n} has ranks ({rank_p}, {rank_q}) "
                f"and overlap {overlap}."
            )

        ctx = self.context(n)
        cols = self.columns(n, span)
        u_end = rank_p
        p_basis = cols[:, :u_end]
        q_basis = np.hstack((cols[:, :overlap], cols[:, u_end:]))
        return build_pair(self.projector(ctx, p_basis), self.projector(ctx, q_basis))

    def orthogonal_pair(self, n: int, rank_p: int, rank_q: int) -> ProjectionPair:
        """Pair with ``pq = 0``."""
        if rank_p + rank_q > n:
            raise ValueError(f"Orthogonal ranks {rank_p} + {rank_q} exceed {n}.")

        ctx = self.context(n)
        p = self.projection(n, rank_p)
        if ctx.is_exact:
            basis = exact.matmul((1 - p).data, self.columns(n, n))
            _, pivots, _ = exact.rref(basis)
            basis = np.array(basis[:, pivots[:rank_q]], dtype=object)
        else:
            basis = (1 - p).data @ self.columns(n, rank_q)
        return build_pair(p, self.projector(ctx, basis))


def random_projection(n: int, rank: int, seed: int, backend="float", tolerance=None):
    """A projection of exactly the requested rank, deterministic per seed.

    Exact: ``B (B^* B)^{-1} B^*`` for a small-integer Gaussian basis
    ``B``. Float: ``Q Q^*`` for the thin QR factor of a complex normal
    matrix.
    """
    return RandomPairGenerator(seed, backend, tolerance).projection(n, rank)


def random_pair(n, rank_p, rank_q, seed, backend="float", tolerance=None):
    return RandomPairGenerator(seed, backend, tolerance).pair(n, rank_p, rank_q)


def random_pair_with_overlap(
    n, rank_p, rank_q, overlap, seed, backend="float", tolerance=None
):
    gen = RandomPairGenerator(seed, backend, tolerance)
    return gen.pair_with_overlap(n, rank_p, rank_q, overlap)


def _cell_ranks(n: int, meet_trivial: bool, join_full: bool, rng) -> tuple:
    span = n if join_full else int(rng.integers(1, n))
    if meet_trivial:
        overlap = 0
        rank_p = int(rng.integers(1, span)) if span > 1 else span
    else:
        overlap = int(rng.integers(1, span + 1))
        rank_p = overlap + int(rng.integers(0, span - overlap + 1))
    rank_q = span + overlap - rank_p
    return rank_p, rank_q, overlap


def hypothesis_grid(
    n: int, per_cell: int, seed: int, backend="float", tolerance=None
) -> dict[tuple[bool, bool], list[ProjectionPair]]:
    """Pairs covering every combination of trivial meet and full join.

    Parameters
    ----------
    n : int
        Dimension, at least 2.
    per_cell : int
        Pairs per cell.

    Returns
    -------
    dict
        ``(meet_trivial, join_full)`` to a list of pairs.
    """
    if n < 2:
        raise ValueError("A hypothesis grid needs dimension at least 2.")

    gen = RandomPairGenerator(seed, backend, tolerance)
    grid = {}
    for meet_trivial in (True, False):
        for join_full in (True, False):
            pairs = []
            for _ in range(per_cell):
                ranks = _cell_ranks(n, meet_trivial, join_full, gen.rng)
                pairs.append(gen.pair_with_overlap(n, *ranks))
            grid[meet_trivial, join_full] = pairs
    return grid


def degenerate_fixtures(
    n: int, seed: int, backend="float", tolerance=None
) -> dict[str, ProjectionPair]:
    """The pairs ``p=0``, ``p=1``, ``q=0``, ``q=1``, ``p=q`` and ``pq=0``."""
    gen = RandomPairGenerator(seed, backend, tolerance)
    ctx = gen.context(n)
    half = max(1, n // 2)
    p = gen.projection(n, half)
    q = gen.projection(n, half)

    return {
        "p=0": build_pair(ctx.zero, q),
        "p=1": build_pair(ctx.one, q),
        "q=0": build_pair(p, ctx.zero),
        "q=1": build_pair(p, ctx.one),
        "p=q": build_pair(p, p),
        "pq=0": gen.orthogonal_pair(n, half, n - half),
    }
