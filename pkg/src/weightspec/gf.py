"""Exact arithmetic in GF(p^m).

Field elements are plain integers: the index of the element in [0, q),
read as base-p digits giving polynomial coefficients (constant term =
least significant digit).  Index 0 is the additive identity, index 1 the
multiplicative identity.  This keeps tables dense and serialization
trivial.

The reduction polynomial is chosen deterministically: the monic
degree-m polynomial whose non-leading coefficients, read as a base-p
integer, are smallest among all monic irreducibles of degree m.  For
m = 1 that rule yields x + 0, i.e. plain integers mod p.

For q <= 256 multiplication and inversion go through log/antilog tables
built from a primitive element, and a full addition table is kept;
larger fields fall back to polynomial arithmetic with modular reduction.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

MAX_FIELD_ORDER = 1 << 20
_TABLE_MAX = 256
_DIGIT_TABLE_MAX = 1 << 16


class FieldError(ValueError):
    """Invalid field construction or misuse of field arithmetic."""


class NotPrimeError(FieldError):
    """Requested characteristic is not a prime number."""


class FieldTooLargeError(FieldError):
    """Requested field order exceeds the configured bound."""


class FieldMismatchError(FieldError):
    """Operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists are little-endian
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must be nonzero."""
    r = _poly_trim(list(a))
    db = len(b) - 1
    lead_inv = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    while r and len(r) - 1 >= db:
        factor = (r[-1] * lead_inv) % p
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - factor * bc) % p
        _poly_trim(r)
    return r


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac == 0:
            continue
        for j, bc in enumerate(b):
            out[i + j] = (out[i + j] + ac * bc) % p
    return _poly_trim(out)


def is_irreducible_poly(coeffs: Sequence[int], p: int) -> bool:
    """Exhaustive trial-division irreducibility test for a monic polynomial.

    Checks divisibility by every monic polynomial of degree 1..deg/2,
    which is feasible for the field sizes this package supports.
    """
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] != 1:
        return False
    if coeffs[0] == 0 and m > 1:
        return False  # divisible by x
    for d in range(1, m // 2 + 1):
        for t in range(p**d):
            g = _digits(t, p, d) + [1]
            if not _poly_mod(coeffs, g, p):
                return False
    return True


def _digits(value: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        value, r = divmod(value, p)
        out.append(r)
    return out


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Canonical monic irreducible of degree m over GF(p) (see module docs)."""
    for t in range(p**m):
        coeffs = _digits(t, p, m) + [1]
        if is_irreducible_poly(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldSpec:
    """GF(p^m) with element indices in [0, q) and exact operations.

    Immutable after construction; safe to share across threads and
    processes.  Compare fields with ``==`` (same p, m, modulus).
    """

    __slots__ = (
        "p", "m", "q", "modulus",
        "_exp", "_log", "_inv", "_add_table", "_digits_np", "_xpow",
    )

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrimeError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_FIELD_ORDER:
            raise FieldTooLargeError(f"field order {q} exceeds {MAX_FIELD_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        if modulus is None:
            modulus = (0, 1) if m == 1 else smallest_irreducible(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {m}")
            if m > 1 and not is_irreducible_poly(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus

        # reductions of x^m .. x^(2m-2), used by the table-free multiply
        self._xpow = None
        if m > 1:
            xpows = []
            cur = [(-c) % p for c in modulus[:-1]]  # x^m mod f
            xpows.append(tuple(cur))
            for _ in range(m - 2):
                cur = [0] + cur  # multiply by x
                if len(cur) > m:
                    lead = cur.pop()
                    cur = [(c + lead * r) % p for c, r in zip(cur, xpows[0])]
                xpows.append(tuple(cur))
            self._xpow = tuple(xpows)

        self._digits_np = None
        if q <= _TABLE_MAX:
            self._build_tables()
        else:
            self._exp = self._log = self._inv = self._add_table = None

    # -- construction helpers ------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        """Table-free product, used to bootstrap tables and for big fields."""
        if a == 0 or b == 0:
            return 0
        p, m = self.p, self.m
        if m == 1:
            return (a * b) % p
        da = self.element_digits(a)
        db = self.element_digits(b)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(da):
            if ai == 0:
                continue
            for j, bj in enumerate(db):
                prod[i + j] = (prod[i + j] + ai * bj) % p
        # fold degrees m..2m-2 back using the precomputed x^k reductions
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                red = self._xpow[k - m]
                for i, r in enumerate(red):
                    prod[i] = (prod[i] + c * r) % p
        idx = 0
        for i in range(m - 1, -1, -1):
            idx = idx * p + prod[i]
        return idx

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        gen = 1
        if q > 2:
            for g in range(2, q):
                x, n = g, 1
                while x != 1:
                    x = self._raw_mul(g, x)
                    n += 1
                if n == order:
                    gen = g
                    break
            else:  # pragma: no cover - every finite field has a generator
                raise FieldError("no primitive element found")
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self._raw_mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(order - log[a]) % order]
        self._exp, self._log, self._inv = exp, log, inv
        if self.m == 1:
            p = self.p
            self._add_table = [[(a + b) % p for b in range(q)] for a in range(q)]
        else:
            self._add_table = [
                [self._add_digitwise(a, b) for b in range(q)] for a in range(q)
            ]

    def _add_digitwise(self, a: int, b: int) -> int:
        p = self.p
        idx, mult = 0, 1
        while a or b:
            idx += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return idx

    # -- scalar operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digitwise(a, b)

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        if p == 2:
            return a
        idx, mult = 0, 1
        while a:
            a, d = divmod(a, p)
            idx += ((-d) % p) * mult
            mult *= p
        return idx

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            order = self.q - 1
            return self._exp[(self._log[a] + self._log[b]) % order]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv is not None:
            return self._inv[a]
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def validate_element(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element index of {self!r}")
        return int(a)

    def elements(self) -> range:
        return range(self.q)

    def element_digits(self, a: int) -> tuple[int, ...]:
        """Base-p digit vector of an element index (constant term first)."""
        p = self.p
        out = []
        for _ in range(self.m):
            a, d = divmod(a, p)
            out.append(d)
        return tuple(out)

    # -- vectorized helpers (used by the enumeration kernels) -----------------

    def digit_dtype(self) -> np.dtype:
        if self.p <= 127:
            return np.dtype(np.uint8)
        if self.p <= 32749:
            return np.dtype(np.uint16)
        return np.dtype(np.int64)

    def digits_of(self, arr: np.ndarray) -> np.ndarray:
        """Map an array of element indices to base-p digits, shape (..., m)."""
        arr = np.asarray(arr)
        if self.m == 1:
            return arr.astype(self.digit_dtype())[..., None]
        if self.q <= _DIGIT_TABLE_MAX:
            if self._digits_np is None:
                table = np.empty((self.q, self.m), dtype=self.digit_dtype())
                for a in range(self.q):
                    table[a] = self.element_digits(a)
                self._digits_np = table
            return self._digits_np[arr]
        p = self.p
        return np.stack(
            [((arr // p**j) % p).astype(self.digit_dtype()) for j in range(self.m)],
            axis=-1,
        )

    def scalar_row(self, alpha: int, row: Sequence[int]) -> tuple[int, ...]:
        """alpha * row, elementwise in the field (index space)."""
        return tuple(self.mul(alpha, e) for e in row)

    # -- identity -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"


def field_create(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Construct GF(p^m) with the canonical (or a given, validated) modulus."""
    return FieldSpec(p, m, modulus)
