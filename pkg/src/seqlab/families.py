"""Sequence families: the multiplicative-character family, the split
oscillator system with its phase-shift extension, and the Chu, Alltop cubic
and Heisenberg comparison families.

Enumeration orders are fixed:

* omega: n ascending, n = (x-1) p^2 + y p + z
* split_oscillator: lexicographic (x, y, b)
* extended_split: (split index, w)
* chu: y ascending; alltop_cubic: y ascending; heisenberg: (y, z) lexicographic
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import IndexOutOfRange, PTooSmall, UnsupportedFamily
from .field import PrimeField
from .seqcore import Sequence, phase_shift, unit_root

KINDS = ("omega", "split_oscillator", "extended_split", "chu", "alltop_cubic", "heisenberg")

MIN_P = {
    "omega": 5,
    "split_oscillator": 5,
    "extended_split": 5,
    "chu": 3,
    "alltop_cubic": 5,
    "heisenberg": 3,
}


def _require_p(f: PrimeField, kind: str):
    if f.p < MIN_P[kind]:
        raise PTooSmall(f"{kind} needs p >= {MIN_P[kind]}, got p={f.p}")


def _check(name, value, lo, hi):
    if not lo <= value <= hi:
        raise IndexOutOfRange(f"{name}={value} outside [{lo}, {hi}]")


def family_size(kind: str, p: int) -> int:
    if kind == "omega":
        return p * p * (p - 2)
    if kind == "split_oscillator":
        return p * (p - 2) * (p + 1) // 2
    if kind == "extended_split":
        return p * p * (p - 2) * (p + 1) // 2
    if kind == "chu":
        return p - 1
    if kind == "alltop_cubic":
        return p
    if kind == "heisenberg":
        return p * p
    raise UnsupportedFamily(kind)


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str
    field: PrimeField
    normalized: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedFamily(f"unknown family {self.kind!r}")
        _require_p(self.field, self.kind)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def size(self) -> int:
        return family_size(self.kind, self.p)

    def index_names(self) -> tuple:
        return {
            "omega": ("n",),
            "split_oscillator": ("x", "y", "b"),
            "extended_split": ("x", "y", "b", "w"),
            "chu": ("y",),
            "alltop_cubic": ("y",),
            "heisenberg": ("y", "z"),
        }[self.kind]

    def indices(self) -> Iterator[tuple]:
        p = self.p
        if self.kind == "omega":
            for n in range(self.size):
                yield (n,)
        elif self.kind == "split_oscillator":
            for x in range(1, p - 1):
                for y in range(p):
                    for b in range((p - 1) // 2 + 1):
                        yield (x, y, b)
        elif self.kind == "extended_split":
            for x, y, b in FamilyDescriptor("split_oscillator", self.field).indices():
                for w in range(p):
                    yield (x, y, b, w)
        elif self.kind == "chu":
            for y in range(1, p):
                yield (y,)
        elif self.kind == "alltop_cubic":
            for y in range(p):
                yield (y,)
        else:
            for y in range(p):
                for z in range(p):
                    yield (y, z)

    def member(self, *idx) -> Sequence:
        f = self.field
        if self.kind == "omega":
            return omega_sequence(f, *idx)
        if self.kind == "split_oscillator":
            return split_oscillator_sequence(f, *idx)
        if self.kind == "extended_split":
            x, y, b, w = idx
            _check("w", w, 0, self.p - 1)
            s = phase_shift(split_oscillator_sequence(f, x, y, b), w)
            return s.with_label(f"extended_split(x={x},y={y},b={b},w={w})")
        if self.kind == "chu":
            return chu_sequence(f, *idx)
        if self.kind == "alltop_cubic":
            return alltop_cubic_sequence(f, *idx)
        return heisenberg_sequence(f, *idx)

    def members(self) -> Iterator[Sequence]:
        if self.kind == "extended_split":
            yield from extended_split_family(self.field)
            return
        for idx in self.indices():
            yield self.member(*idx)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "generator": self.field.a,
            "size": self.size,
            "indices": list(self.index_names()),
            "normalized": self.normalized,
        }


def omega_indices(p: int, n: int) -> tuple:
    """Split n = (x-1) p^2 + y p + z into (x, y, z)."""
    _check("n", n, 0, p * p * (p - 2) - 1)
    q, z = divmod(n, p)
    xm1, y = divmod(q, p)
    return xm1 + 1, y, z


def _theta_eta_exact(f: PrimeField, x: int, y: int, z: int) -> list:
    """Exact entries theta^{x log i} eta^{y i^2 + z i}, zero at i = 0."""
    p = f.p
    out: list = [None]
    for i in range(1, p):
        out.append(((x * f.dlog_table[i]) % (p - 1), (y * i * i + z * i) % p))
    return out


def omega_sequence(f: PrimeField, n: int) -> Sequence:
    """Member n of the multiplicative-character family (unnormalized, entry 0 is zero)."""
    _require_p(f, "omega")
    x, y, z = omega_indices(f.p, n)
    return Sequence.from_exact(f.p, _theta_eta_exact(f, x, y, z), label=f"omega(n={n},x={x},y={y},z={z})")


def omega_family(f: PrimeField) -> Iterator[Sequence]:
    _require_p(f, "omega")
    for n in range(family_size("omega", f.p)):
        yield omega_sequence(f, n)


def _theta_power_table(f: PrimeField, x: int) -> np.ndarray:
    """theta^{x log_a j} for j in [0, p), with 0 at j = 0."""
    p = f.p
    dl = f.dlog_array()
    tab = unit_root(x * dl, p - 1)
    tab[0] = 0.0
    return tab


def split_oscillator_sequence(f: PrimeField, x: int, y: int, b: int) -> Sequence:
    """Unit-norm member (x, y, b) of the split oscillator family.

    For b = 0 the entries are monomials scaled by 1/sqrt(p-1). For b != 0 each
    entry is the direct sum over j of theta^{x log j} eta^{-(2b)^{-1}(j-i)^2},
    times eta^{y i^2} / sqrt(p (p-1)).
    """
    _require_p(f, "split_oscillator")
    p = f.p
    _check("x", x, 1, p - 2)
    _check("y", y, 0, p - 1)
    _check("b", b, 0, (p - 1) // 2)
    label = f"split_oscillator(x={x},y={y},b={b})"
    if b == 0:
        return Sequence.from_exact(p, _theta_eta_exact(f, x, y, 0), label=label,
                                   gain=1.0 / math.sqrt(p - 1))
    c = (-pow(2 * b, -1, p)) % p
    i = np.arange(p, dtype=np.int64)
    th = _theta_power_table(f, x)
    vals = np.empty(p, dtype=complex)
    for ii in range(p):
        d = (i - ii) % p
        vals[ii] = np.sum(th * unit_root(c * d * d, p))
    vals *= unit_root(y * i * i, p) / math.sqrt(p * (p - 1))
    return Sequence(p, vals, label=label)


def split_oscillator_family(f: PrimeField) -> Iterator[Sequence]:
    fam = FamilyDescriptor("split_oscillator", f, normalized=True)
    return fam.members()


def extended_split_family(f: PrimeField) -> Iterator[Sequence]:
    """M_w(phi) for every split member phi and every w, in (phi, w) order."""
    _require_p(f, "extended_split")
    split = FamilyDescriptor("split_oscillator", f, normalized=True)
    for x, y, b in split.indices():
        s = split.member(x, y, b)
        for w in range(f.p):
            yield phase_shift(s, w).with_label(f"extended_split(x={x},y={y},b={b},w={w})")


def chu_sequence(f: PrimeField, y: int) -> Sequence:
    p = f.p
    _check("y", y, 1, p - 1)
    ex = [(0, y * i * i) for i in range(p)]
    return Sequence.from_exact(p, ex, label=f"chu(y={y})")


def alltop_cubic_sequence(f: PrimeField, y: int) -> Sequence:
    """eta^{i^3 + y i}; the linear term, not y i^2, is used."""
    _require_p(f, "alltop_cubic")
    p = f.p
    _check("y", y, 0, p - 1)
    ex = [(0, i ** 3 + y * i) for i in range(p)]
    return Sequence.from_exact(p, ex, label=f"alltop_cubic(y={y})")


def heisenberg_sequence(f: PrimeField, y: int, z: int) -> Sequence:
    p = f.p
    _check("y", y, 0, p - 1)
    _check("z", z, 0, p - 1)
    ex = [(0, y * i * i + z * i) for i in range(p)]
    return Sequence.from_exact(p, ex, label=f"heisenberg(y={y},z={z})")
