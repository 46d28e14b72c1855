"""Linear codes over GF(q) and exact weight spectra.

A code is the row space of its generator matrix.  Spectra are computed
two independent ways:

* ``spectrum_direct`` enumerates the row space of a row-reduced basis.
  Since Hamming weight is invariant under nonzero scaling, it walks one
  representative per scalar orbit (projective point) and adds q-1 per
  hit, in a vectorized digit-space kernel.
* ``spectrum_dual`` enumerates the dual code (q^(n-k) words) and maps
  its spectrum back through the MacWilliams identity with Krawtchouk
  polynomials, entirely in exact integer arithmetic.

Counts distinguish two notions: ``WeightSpectrum`` counts DISTINCT
codewords (A_w); ``MessageWeightCounts`` counts nonzero messages x with
weight(x*G) = w (N_w = A_w * q^(k-rank)), which is the right object when
rank-deficient generator matrices are kept in a random ensemble.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .gf import FieldMismatchError, FieldSpec
from .linalg import MatrixGF, RankDeficientError, VectorGF, dual_generator, matrix, row_basis, vec_mat

DEFAULT_ENUMERATION_CAP = 10**8


class EnumerationTooLargeError(ValueError):
    """The requested exhaustive enumeration exceeds the word cap."""


class ZeroCodeError(ValueError):
    """The zero code has no nonzero codeword, hence no minimum distance."""


class NotLinearSpectrumError(ValueError):
    """Input counts cannot be the spectrum of a linear code of that dimension."""


class LengthExceedsFieldError(ValueError):
    """Reed-Solomon evaluation needs n distinct points, so n <= q."""


class LinearCode:
    """An [n, k]_q code given by a (not necessarily full-rank) generator."""

    __slots__ = ("G", "field", "n", "k", "basis", "rank")

    def __init__(self, G: MatrixGF):
        self.G = G
        self.field = G.field
        self.n = G.n
        self.k = G.k
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        self.basis: list[tuple[int, ...]] = row_basis(G)
        self.rank = len(self.basis)

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.k}, rank={self.rank}, q={self.field.q})"


@dataclass(frozen=True)
class WeightSpectrum:
    """Distinct-codeword counts A_0..A_n (A_0 = 1 for any linear code)."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.n + 1:
            raise ValueError("counts must have length n+1")

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class MessageWeightCounts:
    """Nonzero-message counts N_1..N_n; index 0 is unused and fixed to 0."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.n + 1 or self.counts[0] != 0:
            raise ValueError("counts must have length n+1 with counts[0] == 0")


def hamming_weight(v: VectorGF | Sequence[int]) -> int:
    entries = v.entries if isinstance(v, VectorGF) else v
    return sum(1 for e in entries if e)


def encode(code: LinearCode, x: VectorGF | Sequence[int]) -> VectorGF:
    """x * G for a message row vector x of length k."""
    if isinstance(x, VectorGF):
        if x.field != code.field:
            raise FieldMismatchError("message field differs from code field")
        x = x.entries
    if len(x) != code.k:
        raise ValueError(f"message length {len(x)} != k={code.k}")
    return VectorGF(code.field, vec_mat(x, code.G))


def codewords(code: LinearCode) -> Iterator[tuple[int, ...]]:
    """All q^rank distinct codewords (plain Python; for small codes/tests)."""
    F = code.field
    words = [tuple([0] * code.n)]
    for row in code.basis:
        scaled = [F.scalar_row(a, row) for a in range(F.q)]
        words = [
            tuple(F.add(we, se) for we, se in zip(w, s)) for w in words for s in scaled
        ]
    return iter(words)


# ---------------------------------------------------------------------------
# direct enumeration
# ---------------------------------------------------------------------------

def _all_multiples_digits(field: FieldSpec, row: tuple[int, ...]) -> np.ndarray:
    """Digit array of alpha * row for every alpha, shape (q, n, m)."""
    idx = np.array([field.scalar_row(a, row) for a in range(field.q)], dtype=np.int64)
    return field.digits_of(idx)


def _orbit_weight_hist(field: FieldSpec, basis: list[tuple[int, ...]], n: int) -> list[int]:
    """Weight histogram of the row space of `basis` (exact distinct counts).

    Walks one codeword per scalar orbit: for each leading basis index i,
    the representatives are basis[i] + span(basis[i+1:]), and each found
    weight stands for q-1 distinct codewords.
    """
    q, p, m = field.q, field.p, field.m
    counts = [0] * (n + 1)
    counts[0] = 1
    r = len(basis)
    if r == 0:
        return counts
    dtype = field.digit_dtype()
    mults = [None] * r
    for j in range(1, r):
        mults[j] = _all_multiples_digits(field, basis[j]).astype(dtype)
    for lead in range(r):
        span = np.zeros((1, n, m), dtype=dtype)
        for j in range(lead + 1, r):
            span = ((mults[j][:, None, :, :] + span[None, :, :, :]) % p).reshape(-1, n, m)
        lead_digits = field.digits_of(np.array(basis[lead], dtype=np.int64)).astype(dtype)
        words = (span + lead_digits[None, :, :]) % p
        weights = words.any(axis=2).sum(axis=1)
        hist = np.bincount(weights, minlength=n + 1)
        for w, c in enumerate(hist):
            if c:
                counts[w] += int(c) * (q - 1)
    return counts


def spectrum_direct(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> WeightSpectrum:
    """Exact spectrum by enumerating the q^rank words of the row space."""
    q, r = code.field.q, code.rank
    if q**r > cap:
        raise EnumerationTooLargeError(
            f"q^rank = {q}^{r} exceeds the enumeration cap {cap}"
        )
    counts = _orbit_weight_hist(code.field, code.basis, code.n)
    if sum(counts) != q**r:
        raise RuntimeError("enumeration lost codewords; this is a bug")
    return WeightSpectrum(code.n, tuple(counts))


# ---------------------------------------------------------------------------
# MacWilliams transform
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def _krawtchouk_matrix(q: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(krawtchouk(q, n, j, w) for w in range(n + 1)) for j in range(n + 1)
    )


def krawtchouk(q: int, n: int, j: int, w: int) -> int:
    """K_j(w) = sum_i (-1)^i (q-1)^(j-i) C(w,i) C(n-w,j-i)."""
    return sum(
        (-1) ** i * (q - 1) ** (j - i) * math.comb(w, i) * math.comb(n - w, j - i)
        for i in range(min(j, w) + 1)
    )


def macwilliams_transform(
    spec: WeightSpectrum, q: int, n: int, dim_of_source: int
) -> WeightSpectrum:
    """Spectrum of the dual of a dim-`dim_of_source` code with spectrum `spec`.

    All divisions must be exact; a remainder means the input was not the
    spectrum of a linear code of the stated dimension.
    """
    if spec.n != n:
        raise ValueError("spectrum length differs from n")
    K = _krawtchouk_matrix(q, n)
    denom = q**dim_of_source
    out = []
    for j in range(n + 1):
        s = sum(a * K[j][w] for w, a in enumerate(spec.counts) if a)
        quot, rem = divmod(s, denom)
        if rem or quot < 0:
            raise NotLinearSpectrumError(
                f"transform of weight {j} is {s}/{denom}; input counts are corrupt"
            )
        out.append(quot)
    return WeightSpectrum(n, tuple(out))


def spectrum_dual(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> WeightSpectrum:
    """Exact spectrum via the dual code: enumerate q^(n-k) words, transform back."""
    q, n, k = code.field.q, code.n, code.k
    if code.rank != k:
        raise RankDeficientError("dual-path spectrum requires a full-rank generator")
    if k == n:
        zero_dual = WeightSpectrum(n, tuple([1] + [0] * n))
        return macwilliams_transform(zero_dual, q, n, 0)
    if q ** (n - k) > cap:
        raise EnumerationTooLargeError(
            f"q^(n-k) = {q}^{n - k} exceeds the enumeration cap {cap}"
        )
    H = dual_generator(code.G)
    dual_spec = spectrum_direct(LinearCode(H), cap)
    out = macwilliams_transform(dual_spec, q, n, n - k)
    if out.total() != q**k:
        raise RuntimeError("dual-path spectrum total mismatch; this is a bug")
    return out


def spectrum(
    code: LinearCode,
    strategy: str = "auto",
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> WeightSpectrum:
    """Dispatch between the direct and dual enumeration paths.

    `auto` enumerates whichever of q^rank and q^(n-k) is smaller;
    rank-deficient codes always take the direct path (the dual path
    needs full rank).
    """
    if strategy == "direct":
        return spectrum_direct(code, cap)
    if strategy == "dual":
        return spectrum_dual(code, cap)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    if code.rank < code.k or code.rank <= code.n - code.k:
        return spectrum_direct(code, cap)
    return spectrum_dual(code, cap)


# ---------------------------------------------------------------------------
# derived code quantities
# ---------------------------------------------------------------------------

def min_distance(
    code: LinearCode, strategy: str = "auto", cap: int = DEFAULT_ENUMERATION_CAP
) -> int:
    """Minimum nonzero weight (= minimum distance, by linearity)."""
    if code.rank == 0:
        raise ZeroCodeError("the zero code has no minimum distance")
    counts = spectrum(code, strategy, cap).counts
    return next(w for w in range(1, code.n + 1) if counts[w])


def is_mds(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True iff the code meets the Singleton bound: d = n - k + 1."""
    if code.rank != code.k:
        raise RankDeficientError("MDS is defined for full-rank generators")
    return min_distance(code, "auto", cap) == code.n - code.k + 1


def message_weight_counts(
    code: LinearCode, strategy: str = "auto", cap: int = DEFAULT_ENUMERATION_CAP
) -> MessageWeightCounts:
    """N_w = A_w * q^(k-rank): nonzero messages x with weight(x*G) = w."""
    spec = spectrum(code, strategy, cap)
    mult = code.field.q ** (code.k - code.rank)
    return MessageWeightCounts(
        code.n, tuple([0] + [a * mult for a in spec.counts[1:]])
    )


def reed_solomon_generator(field: FieldSpec, n: int, k: int) -> LinearCode:
    """MDS reference code: G[i][j] = alpha_j^i over the first n field elements.

    Rows evaluate the monomials 1, x, ..., x^(k-1) at n distinct points
    (0^0 is taken to be 1), so any k columns form an invertible
    Vandermonde block and the code is MDS.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > field.q:
        raise LengthExceedsFieldError(
            f"n={n} evaluation points do not fit in GF({field.q})"
        )
    rows = [[field.pow(j, i) for j in range(n)] for i in range(k)]
    return LinearCode(matrix(field, rows))
