"""Period-p sequences and the unitary operators acting on them.

A :class:`Sequence` stores its numeric values and, when every entry is a
monomial ``theta^u * eta^v`` (theta, eta the primitive (p-1)-th and p-th
roots of unity), an exact form ``exact[i] = None | (u, v)`` that the
monomial-preserving operators carry along. Equivalence tests use the exact
form whenever both operands have one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence as _Seq

import numpy as np

from .errors import PeriodMismatch, ScaleByZero

ATOL = 1e-9


def unit_root(k, m: int):
    """exp(2*pi*i*k/m), with ``k`` reduced mod ``m`` before evaluation."""
    k = np.mod(np.asarray(k, dtype=np.int64), m)
    return np.exp(2j * np.pi * k / m)


def _sigma(a: int, p: int) -> int:
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def exact_to_values(p: int, exact, gain: float = 1.0) -> np.ndarray:
    mask = np.array([e is not None for e in exact])
    uv = np.array([e if e is not None else (0, 0) for e in exact], dtype=np.int64).reshape(p, 2)
    vals = unit_root(uv[:, 0], p - 1) * unit_root(uv[:, 1], p)
    vals[~mask] = 0.0
    return gain * vals


@dataclass(frozen=True, eq=False)
class Sequence:
    """A period-p complex sequence.

    ``values`` is always populated. ``exact`` is optional; when present the
    numeric entry i equals ``gain * theta^u * eta^v`` (or 0 for ``None``).
    """

    p: int
    values: np.ndarray
    exact: Optional[tuple] = None
    label: str = ""
    gain: float = 1.0

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.p,):
            raise PeriodMismatch(f"expected {self.p} values, got shape {vals.shape}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if self.exact is not None:
            if len(self.exact) != self.p:
                raise PeriodMismatch("exact form length differs from period")
            object.__setattr__(
                self,
                "exact",
                tuple(None if e is None else (int(e[0]) % (self.p - 1), int(e[1]) % self.p)
                      for e in self.exact),
            )

    @classmethod
    def from_exact(cls, p: int, exact, label: str = "", gain: float = 1.0) -> "Sequence":
        return cls(p, exact_to_values(p, exact, gain), tuple(exact), label, gain)

    def __len__(self):
        return self.p

    def __getitem__(self, i):
        return self.values[i]

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def with_label(self, label: str) -> "Sequence":
        return Sequence(self.p, self.values, self.exact, label, self.gain)

    def scaled(self, c: complex) -> "Sequence":
        return Sequence(self.p, c * self.values, label=self.label)

    def numeric(self) -> "Sequence":
        """Same values with the exact form dropped."""
        return Sequence(self.p, self.values, label=self.label)


def delta(p: int, k: int) -> Sequence:
    ex = [None] * p
    ex[k % p] = (0, 0)
    return Sequence.from_exact(p, ex, label=f"delta_{k % p}")


def ones(p: int) -> Sequence:
    return Sequence.from_exact(p, [(0, 0)] * p, label="ones")


def _check_same(phi: Sequence, psi: Sequence):
    if phi.p != psi.p:
        raise PeriodMismatch(f"periods differ: {phi.p} vs {psi.p}")


def inner_product(phi: Sequence, psi: Sequence) -> complex:
    """<phi, psi> = sum_i phi(i) * conj(psi(i))."""
    _check_same(phi, psi)
    return complex(np.vdot(psi.values, phi.values))


def _remap(phi: Sequence, values, idx=None, du=None, dv=None) -> Sequence:
    """Build an operator output, permuting/updating the exact form if present."""
    if phi.exact is None:
        return Sequence(phi.p, values, label=phi.label)
    p = phi.p
    src = phi.exact if idx is None else tuple(phi.exact[j] for j in idx)
    out = []
    for i, e in enumerate(src):
        if e is None:
            out.append(None)
        else:
            u = e[0] + (0 if du is None else int(du[i]))
            v = e[1] + (0 if dv is None else int(dv[i]))
            out.append((u, v))
    return Sequence(p, values, tuple(out), phi.label, phi.gain)


def time_shift(phi: Sequence, t: int) -> Sequence:
    """L_t: result(i) = phi(i + t)."""
    p = phi.p
    idx = (np.arange(p) + t) % p
    return _remap(phi, phi.values[idx], idx=idx)


def phase_shift(phi: Sequence, w: int) -> Sequence:
    """M_w: result(i) = eta^(w*i) * phi(i)."""
    p = phi.p
    i = np.arange(p)
    dv = (w * i) % p
    return _remap(phi, unit_root(dv, p) * phi.values, dv=dv)


def fourier(phi: Sequence) -> Sequence:
    """F: result(j) = p^(-1/2) * sum_i eta^(j*i) * phi(i).

    The exact form is dropped since outputs are generally not monomials.
    """
    p = phi.p
    return Sequence(p, np.fft.ifft(phi.values) * np.sqrt(p), label=phi.label)


def chirp(phi: Sequence, b: int) -> Sequence:
    """N_b: result(i) = eta^(-2^{-1} b i^2) * phi(i)."""
    p = phi.p
    half = (p + 1) // 2
    i = np.arange(p, dtype=np.int64)
    dv = (-half * (b % p) * (i * i % p)) % p
    return _remap(phi, unit_root(dv, p) * phi.values, dv=dv)


def scale(phi: Sequence, a: int) -> Sequence:
    """S_a: result(i) = sigma(a) * phi(a^{-1} i), sigma the Legendre character."""
    p = phi.p
    a = a % p
    if a == 0:
        raise ScaleByZero("S_0 is undefined")
    s = _sigma(a, p)
    idx = (pow(a, -1, p) * np.arange(p)) % p
    du = np.full(p, 0 if s == 1 else (p - 1) // 2)
    return _remap(phi, s * phi.values[idx], idx=idx, du=du)


def heisenberg(phi: Sequence, t: int, w: int, z: int) -> Sequence:
    """pi(t, w, z): result(i) = eta^(2^{-1} t w + z + w i) * phi(i + t)."""
    p = phi.p
    half = (p + 1) // 2
    i = np.arange(p, dtype=np.int64)
    idx = (i + t) % p
    dv = (half * t * w + z + w * i) % p
    return _remap(phi, unit_root(dv, p) * phi.values[idx], idx=idx, dv=dv)


# -- unitary operators as values ------------------------------------------------

_PRIMS = {
    "time_shift": time_shift,
    "phase_shift": phase_shift,
    "fourier": fourier,
    "chirp": chirp,
    "scale": scale,
    "heisenberg": heisenberg,
}


@dataclass(frozen=True)
class UnitaryOp:
    """A unitary map on period-p sequences.

    ``kind`` is one of the primitive operator names, ``"identity"`` or
    ``"composed"``. A composed operator applies ``parts`` right to left,
    matching the usual notation ``A o B``.
    """

    kind: str
    params: tuple = ()
    parts: tuple = ()

    def __call__(self, phi: Sequence) -> Sequence:
        if self.kind == "identity":
            return phi
        if self.kind == "composed":
            for op in reversed(self.parts):
                phi = op(phi)
            return phi
        return _PRIMS[self.kind](phi, *self.params)

    def __matmul__(self, other: "UnitaryOp") -> "UnitaryOp":
        return compose(self, other)

    def matrix(self, p: int) -> np.ndarray:
        """Dense p x p matrix whose column k is the image of delta_k."""
        return np.column_stack([self(delta(p, k)).values for k in range(p)])

    def __repr__(self):
        if self.kind == "composed":
            return " o ".join(repr(op) for op in self.parts)
        return f"{self.kind}{self.params}"


IDENTITY = UnitaryOp("identity")


def compose(*ops: UnitaryOp) -> UnitaryOp:
    flat = []
    for op in ops:
        if op.kind == "composed":
            flat.extend(op.parts)
        elif op.kind != "identity":
            flat.append(op)
    if not flat:
        return IDENTITY
    if len(flat) == 1:
        return flat[0]
    return UnitaryOp("composed", parts=tuple(flat))


def L(t: int) -> UnitaryOp:
    return UnitaryOp("time_shift", (t,))


def M(w: int) -> UnitaryOp:
    return UnitaryOp("phase_shift", (w,))


def F() -> UnitaryOp:
    return UnitaryOp("fourier")


def N(b: int) -> UnitaryOp:
    return UnitaryOp("chirp", (b,))


def S(a: int) -> UnitaryOp:
    return UnitaryOp("scale", (a,))


def Pi(t: int, w: int, z: int) -> UnitaryOp:
    return UnitaryOp("heisenberg", (t, w, z))


# -- equivalence tests ------------------------------------------------------------

def _support_matches(x: np.ndarray, y: np.ndarray, atol: float) -> bool:
    return bool(np.array_equal(np.abs(x) <= atol, np.abs(y) <= atol))


def is_phase_shift_equiv(phi: Sequence, psi: Sequence, atol: float = ATOL) -> Optional[int]:
    """Return the w with psi = M_w phi, or None if there is none."""
    _check_same(phi, psi)
    p = phi.p
    if phi.exact is not None and psi.exact is not None and phi.gain == psi.gain:
        return _phase_equiv_exact(phi.exact, psi.exact, p)
    if not _support_matches(phi.values, psi.values, atol):
        return None
    i = np.arange(p)
    shifted = unit_root(np.outer(np.arange(p), i), p) * phi.values[None, :]
    ok = np.all(np.abs(shifted - psi.values[None, :]) <= atol, axis=1)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None


def _phase_equiv_exact(ea, eb, p: int) -> Optional[int]:
    w = None
    for i, (x, y) in enumerate(zip(ea, eb)):
        if (x is None) != (y is None):
            return None
        if x is None:
            continue
        if x[0] != y[0]:
            return None
        dv = (y[1] - x[1]) % p
        if i == 0:
            if dv:
                return None
            continue
        cand = dv * pow(i, -1, p) % p
        if w is None:
            w = cand
        elif w != cand:
            return None
    return 0 if w is None else w


def is_time_shift_equiv(phi: Sequence, psi: Sequence, atol: float = ATOL) -> Optional[int]:
    """Return t with psi = L_t phi, or None."""
    _check_same(phi, psi)
    p = phi.p
    if phi.exact is not None and psi.exact is not None and phi.gain == psi.gain:
        ea, eb = phi.exact, psi.exact
        for t in range(p):
            if ea[t:] + ea[:t] == eb:
                return t
        return None
    for t in range(p):
        if np.all(np.abs(np.roll(phi.values, -t) - psi.values) <= atol):
            return t
    return None


def fit_scalar(x: np.ndarray, y: np.ndarray) -> complex:
    """Scalar c with y ~ c*x, read off at the largest |x[k]| (lowest index on ties)."""
    k = int(np.argmax(np.abs(x)))
    if abs(x[k]) == 0:
        raise ValueError("cannot fit a scalar against an all-zero operand")
    return complex(y[k] / x[k])


def is_scalar_multiple(phi: Sequence, psi: Sequence, unit_only: bool = False,
                       atol: float = ATOL) -> Optional[complex]:
    """Return c with psi = c * phi (entrywise within ``atol``), or None."""
    _check_same(phi, psi)
    if not _support_matches(phi.values, psi.values, atol):
        return None
    c = fit_scalar(phi.values, psi.values)
    if not np.all(np.abs(c * phi.values - psi.values) <= atol):
        return None
    if unit_only and abs(abs(c) - 1.0) > atol:
        return None
    return c


def random_sequence(p: int, rng: np.random.Generator) -> Sequence:
    v = rng.standard_normal(p) + 1j * rng.standard_normal(p)
    return Sequence(p, v, label="random")


def as_matrix(seqs: _Seq[Sequence]) -> np.ndarray:
    """Stack sequences row-wise into an (n, p) complex array."""
    return np.vstack([s.values for s in seqs]) if seqs else np.zeros((0, 0), complex)
