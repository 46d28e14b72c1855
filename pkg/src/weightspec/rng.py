"""Deterministic seeded randomness built on SplitMix64.

The bit-level contract (relied on by stored golden vectors and by anyone
reproducing an experiment from a seed):

* The 64-bit word sequence is SplitMix64: state advances by the odd
  constant 0x9E3779B97F4A7C15 and each output is the mixed new state
  (xor-shift 30 / mul / xor-shift 27 / mul / xor-shift 31).
* Each 64-bit word is split into two 32-bit halves, consumed low half
  first, then high half.
* Uniform draws on [0, q) use rejection sampling on the 32-bit halves:
  accept v iff v < floor(2**32 / q) * q, then return v % q.  The
  acceptance threshold is a multiple of q, so accepted values are
  exactly uniform.

Substreams for embarrassingly parallel work are derived per index:
``substream_seed(master, i)`` is the first SplitMix64 output from state
``master XOR (i * 0x9E3779B97F4A7C15 mod 2**64)``.  The per-index states
are distinct and the output mix is a bijection, so derived seeds never
collide within one run.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state once; return (new_state, output word)."""
    state = (state + GOLDEN_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def substream_seed(master_seed: int, index: int) -> int:
    """Derived seed for sample `index` of a run keyed by `master_seed`."""
    state = (master_seed ^ ((index * GOLDEN_GAMMA) & _MASK64)) & _MASK64
    return splitmix64_next(state)[1]


class SeedStream:
    """Single-owner stream of reproducible words and bounded uniforms."""

    __slots__ = ("_state", "_pending", "_has_pending")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._pending = 0
        self._has_pending = False

    def next_u64(self) -> int:
        self._state, out = splitmix64_next(self._state)
        return out

    def next_u32(self) -> int:
        if self._has_pending:
            self._has_pending = False
            return self._pending
        word = self.next_u64()
        self._pending = (word >> 32) & _MASK32
        self._has_pending = True
        return word & _MASK32

    def next_below(self, q: int) -> int:
        """Uniform integer in [0, q) by rejection on 32-bit halves."""
        if not 1 <= q <= _MASK32 + 1:
            raise ValueError(f"bound must be in [1, 2^32], got {q}")
        threshold = ((_MASK32 + 1) // q) * q
        while True:
            v = self.next_u32()
            if v < threshold:
                return v % q
