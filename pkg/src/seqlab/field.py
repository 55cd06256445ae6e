"""Arithmetic over the prime field F_p with fixed discrete-log tables."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .errors import DivisionByZero, LogOfZero, NotGenerator, NotPrime

P_MIN = 3
P_MAX = 10007


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n is desk-scale)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def multiplicative_order(a: int, p: int) -> int:
    k, x = 1, a % p
    while x != 1:
        x = (x * a) % p
        k += 1
    return k


def is_primitive_root(a: int, p: int) -> bool:
    if a % p == 0:
        return False
    return multiplicative_order(a, p) == p - 1


def smallest_primitive_root(p: int) -> int:
    for a in range(2, p):
        if is_primitive_root(a, p):
            return a
    raise NotGenerator(f"no primitive root found for p={p}")


@dataclass(frozen=True)
class PrimeField:
    """The field F_p together with a generator and its log/power tables.

    ``dlog_table[b]`` holds log_a(b) for b in [1, p-1]; index 0 holds ``None``
    because log_a(0) is undefined. ``apow_table[k]`` holds a^k mod p.
    """

    p: int
    a: int
    dlog_table: tuple = dc_field(repr=False)
    apow_table: tuple = dc_field(repr=False)

    @property
    def half(self) -> int:
        """The inverse of 2 in F_p."""
        return (self.p + 1) // 2

    def dlog_array(self) -> np.ndarray:
        """Integer array of logs with -1 standing in for the undefined log of 0."""
        out = np.array([-1 if v is None else v for v in self.dlog_table], dtype=np.int64)
        return out


def make_field(p: int, a: Optional[int] = None) -> PrimeField:
    """Build F_p with generator ``a`` (default: the smallest primitive root).

    Raises
    ------
    NotPrime
        If ``p`` is composite or outside [3, 10007].
    NotGenerator
        If ``a`` is supplied but is not a primitive root mod ``p``.
    """
    p = int(p)
    if p < P_MIN or not is_prime(p):
        raise NotPrime(f"p={p} is not a prime >= {P_MIN}")
    if p > P_MAX:
        raise NotPrime(f"p={p} exceeds the supported range (<= {P_MAX})")
    if a is None:
        a = smallest_primitive_root(p)
    else:
        a = int(a)
        if not 2 <= a <= p - 1 or not is_primitive_root(a, p):
            raise NotGenerator(f"a={a} does not generate F_{p}^*")
    apow = [1] * (p - 1)
    for k in range(1, p - 1):
        apow[k] = (apow[k - 1] * a) % p
    dl: list = [None] * p
    for k, b in enumerate(apow):
        dl[b] = k
    return PrimeField(p=p, a=a, dlog_table=tuple(dl), apow_table=tuple(apow))


def _check_unit(f: PrimeField, b: int, exc):
    b = int(b) % f.p
    if b == 0:
        raise exc(f"operation undefined at 0 in F_{f.p}")
    return b


def dlog(f: PrimeField, b: int) -> int:
    """Discrete logarithm of ``b`` to base ``f.a``; raises LogOfZero at 0."""
    b = _check_unit(f, b, LogOfZero)
    return f.dlog_table[b]


def legendre(f: PrimeField, b: int) -> int:
    """Quadratic character of ``b``: +1 for residues, -1 otherwise."""
    b = _check_unit(f, b, LogOfZero)
    return 1 if pow(b, (f.p - 1) // 2, f.p) == 1 else -1


def inv(f: PrimeField, b: int) -> int:
    b = _check_unit(f, b, DivisionByZero)
    return pow(b, -1, f.p)
