"""Correlation, ambiguity and spectrum measurements, and family verification.

The ambiguity function of an ordered pair is

    A(t, w) = <phi, M_w L_t psi> = sum_i phi(i) conj(psi(i+t)) eta^(-w i)

so row t is the forward DFT (numpy sign convention) of the product sequence
i -> phi(i) conj(psi(i+t)). The naive path evaluates the defining sum with an
explicit root-of-unity matrix and is kept as the oracle for the fast path.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional

import numpy as np

from .errors import PeriodMismatch, UnsupportedFamily
from .families import FamilyDescriptor, family_size
from .field import PrimeField
from .seqcore import Sequence, as_matrix, fourier, unit_root

BOUND_SLACK = 1e-6
SCHEMA = "seqlab-report/1"
BATCH = 2048


# -- single-pair measurements ---------------------------------------------------

def _check_same(phi: Sequence, psi: Sequence):
    if phi.p != psi.p:
        raise PeriodMismatch(f"periods differ: {phi.p} vs {psi.p}")


def crosscorrelation(phi: Sequence, psi: Sequence) -> np.ndarray:
    """C(t) = sum_i phi(i) conj(psi(i+t)) for t = 0..p-1."""
    _check_same(phi, psi)
    p = phi.p
    return np.array([np.sum(phi.values * np.conj(np.roll(psi.values, -t))) for t in range(p)])


def autocorrelation(phi: Sequence) -> np.ndarray:
    return crosscorrelation(phi, phi)


def _shift_index(p: int) -> np.ndarray:
    """idx[t, i] = (i + t) mod p."""
    r = np.arange(p)
    return (r[:, None] + r[None, :]) % p


def ambiguity_naive(phi: Sequence, psi: Sequence) -> np.ndarray:
    _check_same(phi, psi)
    p = phi.p
    prod = phi.values[None, :] * np.conj(psi.values[_shift_index(p)])   # [t, i]
    r = np.arange(p)
    kernel = unit_root(-np.outer(r, r), p)                              # [w, i]
    return prod @ kernel.T


def ambiguity_fast(phi: Sequence, psi: Sequence) -> np.ndarray:
    _check_same(phi, psi)
    prod = phi.values[None, :] * np.conj(psi.values[_shift_index(phi.p)])
    return np.fft.fft(prod, axis=-1)


@dataclass
class AmbiguitySurface:
    """p x p grid of A(t, w) for one ordered pair, indexed [t, w]."""

    p: int
    values: np.ndarray
    label_phi: str = ""
    label_psi: str = ""
    auto: bool = False

    @property
    def peak(self) -> tuple:
        """(magnitude, t, w) of the largest |A|, skipping (0,0) for auto surfaces."""
        mag = np.abs(self.values).copy()
        if self.auto:
            mag[0, 0] = -1.0
        k = int(np.argmax(mag))
        t, w = divmod(k, self.p)
        return float(mag[t, w]), t, w

    def to_csv(self) -> str:
        lines = ["t,w,re,im,abs"]
        for t in range(self.p):
            for w in range(self.p):
                v = self.values[t, w]
                lines.append(f"{t},{w},{v.real:.17g},{v.imag:.17g},{abs(v):.17g}")
        return "\n".join(lines) + "\n"


def ambiguity_surface(phi: Sequence, psi: Optional[Sequence] = None, fast: bool = True) -> AmbiguitySurface:
    auto = psi is None or psi is phi
    psi = phi if psi is None else psi
    vals = ambiguity_fast(phi, psi) if fast else ambiguity_naive(phi, psi)
    return AmbiguitySurface(phi.p, vals, phi.label, psi.label, auto)


def spectrum_max(phi: Sequence) -> float:
    """max_i |F(phi)(i)|."""
    return float(np.max(np.abs(fourier(phi).values)))


# -- equivalence classes ------------------------------------------------------------

def _all_exact(seqs) -> bool:
    return all(s.exact is not None for s in seqs) and len({s.gain for s in seqs}) <= 1


def _phase_canonical(exact, p: int) -> tuple:
    i0 = next((i for i in range(1, p) if exact[i] is not None), None)
    if i0 is None:
        return tuple(exact)
    w = (-exact[i0][1] * pow(i0, -1, p)) % p
    return tuple(None if e is None else (e[0], (e[1] + w * i) % p) for i, e in enumerate(exact))


def _group(seqs, variants, atol):
    """Label sequences by class, where ``variants(v)`` lists a class orbit."""
    reps = []       # list of (k, p) arrays: orbit of each representative
    labels = np.empty(len(seqs), dtype=np.int64)
    for n, s in enumerate(seqs):
        v = s.values
        hit = -1
        for k, orbit in enumerate(reps):
            if np.any(np.all(np.abs(orbit - v[None, :]) <= atol, axis=1)):
                hit = k
                break
        if hit < 0:
            reps.append(variants(v))
            hit = len(reps) - 1
        labels[n] = hit
    return labels


def phase_classes(seqs: list, atol: float = 1e-9) -> np.ndarray:
    """Integer label per sequence; equal labels iff phase-shift equivalent."""
    if not seqs:
        return np.zeros(0, dtype=np.int64)
    p = seqs[0].p
    if _all_exact(seqs):
        keys: dict = {}
        return np.array([keys.setdefault(_phase_canonical(s.exact, p), len(keys)) for s in seqs])
    r = np.arange(p)
    mods = unit_root(np.outer(r, r), p)
    return _group(seqs, lambda v: mods * v[None, :], atol)


def time_shift_classes(seqs: list, atol: float = 1e-9) -> np.ndarray:
    """Integer label per sequence; equal labels iff time-shift equivalent."""
    if not seqs:
        return np.zeros(0, dtype=np.int64)
    p = seqs[0].p
    if _all_exact(seqs):
        keys: dict = {}
        out = []
        for s in seqs:
            e = tuple((-1, -1) if x is None else x for x in s.exact)
            key = min(e[t:] + e[:t] for t in range(p))
            out.append(keys.setdefault(key, len(keys)))
        return np.array(out)
    idx = _shift_index(p)
    return _group(seqs, lambda v: v[idx], atol)


def count_time_shift_classes(seqs: list) -> int:
    labels = time_shift_classes(seqs)
    return int(labels.max()) + 1 if labels.size else 0


# -- batched engine -------------------------------------------------------------------

def _batch_pair_max(X: np.ndarray, I: np.ndarray, J: np.ndarray, skip_origin: bool):
    """Max |A_{X[I], X[J]}| per pair with its (t, w) location."""
    p = X.shape[1]
    prod = X[I][:, None, :] * np.conj(X[J][:, _shift_index(p)])
    mag = np.abs(np.fft.fft(prod, axis=-1)).reshape(len(I), p * p)
    if skip_origin:
        mag[:, 0] = -1.0
    k = np.argmax(mag, axis=1)
    return mag[np.arange(len(I)), k], k


def _run_batches(X, I, J, skip_origin, threads):
    """Worst pair over all (I, J); ties resolved to the earliest pair."""
    if len(I) == 0:
        return None
    chunks = [(s, min(s + BATCH, len(I))) for s in range(0, len(I), BATCH)]

    def work(ch):
        s, e = ch
        vals, locs = _batch_pair_max(X, I[s:e], J[s:e], skip_origin)
        j = int(np.argmax(vals))
        return float(vals[j]), s + j, int(locs[j])

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, chunks))
    else:
        results = [work(ch) for ch in chunks]
    best = max(range(len(results)), key=lambda q: (results[q][0], -q))
    return results[best]


def _ambiguity_witness(res, I, J, index_of, p, auto: bool):
    mag, pos, loc = res
    t, w = divmod(loc, p)
    out = {"magnitude": mag, "t": t, "w": w}
    if auto:
        out["member"] = index_of(int(I[pos]))
    else:
        out["pair"] = [index_of(int(I[pos])), index_of(int(J[pos]))]
    return out


# -- verification reports -------------------------------------------------------------

@dataclass
class PairMode:
    """Exhaustive pair coverage, or ``count`` seeded uniform samples."""

    mode: str = "exhaustive"
    seed: Optional[int] = None
    count: int = 20000

    def __post_init__(self):
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown pair mode {self.mode!r}")
        if self.mode == "sampled" and self.seed is None:
            raise ValueError("sampled pair mode needs a seed")

    @classmethod
    def sampled(cls, seed: int, count: int = 20000) -> "PairMode":
        return cls("sampled", seed, count)


@dataclass
class VerificationReport:
    family: dict
    p: int
    bounds: dict
    measured: dict = dc_field(default_factory=dict)
    passes: dict = dc_field(default_factory=dict)
    witnesses: dict = dc_field(default_factory=dict)
    coverage: dict = dc_field(default_factory=dict)
    time_shift_classes: Optional[int] = None
    notes: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(v for v in self.passes.values() if v is not None)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "schema": SCHEMA,
            "p": self.p,
            "generator": self.family.get("generator"),
            "family": self.family,
            "bounds": self.bounds,
            "measured": self.measured,
            "pass": self.passed,
            "passes": self.passes,
            "witnesses": self.witnesses,
            "coverage": self.coverage,
            "time_shift_classes": self.time_shift_classes,
            "notes": self.notes,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d


def _judge(measured: Optional[float], bound: Optional[float]):
    if bound is None or measured is None:
        return None
    return bool(measured <= bound + BOUND_SLACK)


def default_bounds(kind: str, p: int) -> dict:
    """Bounds each family is claimed to satisfy (None where no claim is made)."""
    rp = math.sqrt(p)
    if kind == "omega":
        return {"auto": 2 * rp, "cross": 4 * rp, "ft": 2.0}
    if kind in ("split_oscillator", "extended_split"):
        return {"auto": 2 * rp / (p - 1), "cross": 4 * rp / (p - 1), "ft": 2 / rp}
    if kind == "chu":
        return {"auto": None, "cross": rp, "ft": 1.0}
    if kind == "heisenberg":
        return {"auto": None, "cross": rp, "ft": None}
    if kind == "alltop_cubic":
        return {"auto": None, "cross": None, "ft": None}
    raise UnsupportedFamily(kind)


def _eligible_pairs(labels: np.ndarray, distinct: bool):
    I, J = np.triu_indices(len(labels), 1)
    keep = labels[I] != labels[J] if distinct else labels[I] == labels[J]
    return I[keep], J[keep]


def _select(I, J, mode: PairMode):
    if mode.mode == "exhaustive" or len(I) <= mode.count:
        return I, J
    rng = np.random.default_rng(mode.seed)
    pick = np.sort(rng.choice(len(I), size=mode.count, replace=False))
    return I[pick], J[pick]


def verify_members(
    seqs: list,
    indices: list,
    phase_labels: np.ndarray,
    auto_bound: Optional[float] = None,
    cross_bound: Optional[float] = None,
    ft_bound: Optional[float] = None,
    pair_mode: Optional[PairMode] = None,
    checks: Iterable[str] = ("ambiguity", "ft", "classes"),
    threads: int = 1,
    family: Optional[dict] = None,
) -> VerificationReport:
    """Measure auto/cross ambiguity, spectrum and class counts for ``seqs``.

    Cross pairs are unordered pairs with different ``phase_labels``;
    phase-shift-equivalent pairs are measured separately and never judged.
    """
    t0 = time.perf_counter()
    pair_mode = pair_mode or PairMode()
    checks = set(checks)
    p = seqs[0].p
    X = as_matrix(seqs)
    n = len(seqs)

    def index_of(k):
        return list(indices[k])

    rep = VerificationReport(
        family=family or {},
        p=p,
        bounds={"auto": auto_bound, "cross": cross_bound, "ft": ft_bound},
    )
    rep.coverage = {"members": n, "pair_mode": pair_mode.mode}
    if pair_mode.mode == "sampled":
        rep.coverage.update(seed=pair_mode.seed, requested=pair_mode.count)

    if "ambiguity" in checks:
        ar = np.arange(n)
        res = _run_batches(X, ar, ar, True, threads)
        rep.measured["auto_max"] = res[0]
        rep.witnesses["auto"] = _ambiguity_witness(res, ar, ar, index_of, p, True)
        rep.passes["auto"] = _judge(res[0], auto_bound)

        I, J = _select(*_eligible_pairs(phase_labels, True), pair_mode)
        rep.coverage["cross_pairs"] = int(len(I))
        res = _run_batches(X, I, J, False, threads)
        if res is None:
            rep.measured["cross_max"] = None
            rep.passes["cross"] = None
            rep.notes.append("no phase-shift-distinct pairs in this family")
        else:
            rep.measured["cross_max"] = res[0]
            rep.witnesses["cross"] = _ambiguity_witness(res, I, J, index_of, p, False)
            rep.passes["cross"] = _judge(res[0], cross_bound)

        I, J = _select(*_eligible_pairs(phase_labels, False), pair_mode)
        rep.coverage["equivalent_pairs"] = int(len(I))
        # no bound is claimed here; the max includes the shift where they coincide
        if len(I):
            res = _run_batches(X, I, J, False, threads)
            rep.measured["equivalent_pairs_max"] = res[0]

    if "ft" in checks:
        spec = np.abs(np.fft.ifft(X, axis=1)) * math.sqrt(p)
        per = spec.max(axis=1)
        k = int(np.argmax(per))
        rep.measured["ft_max"] = float(per[k])
        rep.witnesses["ft"] = {"member": index_of(k), "i": int(np.argmax(spec[k])),
                               "magnitude": float(per[k])}
        rep.passes["ft"] = _judge(float(per[k]), ft_bound)

    if "classes" in checks:
        rep.time_shift_classes = count_time_shift_classes(seqs)

    rep.wall_time = time.perf_counter() - t0
    return rep


def omega_phase_labels(p: int, indices: list) -> np.ndarray:
    """Structural phase classes of the omega family: members share a class iff
    they share (x, y), i.e. iff their n agree after dropping z."""
    return np.array([n // p for (n,) in indices])


def verify_family(
    f: PrimeField,
    fam: FamilyDescriptor,
    auto_bound: Optional[float] = None,
    cross_bound: Optional[float] = None,
    ft_bound: Optional[float] = None,
    pair_mode: Optional[PairMode] = None,
    checks: Iterable[str] = ("ambiguity", "ft", "classes"),
    threads: int = 1,
    use_defaults: bool = True,
) -> VerificationReport:
    """Check a whole family against its bounds.

    Bounds left as None fall back to :func:`default_bounds` when
    ``use_defaults`` is set.
    """
    if fam.field != f:
        fam = FamilyDescriptor(fam.kind, f, fam.normalized)
    if use_defaults:
        d = default_bounds(fam.kind, f.p)
        auto_bound = d["auto"] if auto_bound is None else auto_bound
        cross_bound = d["cross"] if cross_bound is None else cross_bound
        ft_bound = d["ft"] if ft_bound is None else ft_bound
    indices = list(fam.indices())
    seqs = list(fam.members())
    if fam.kind == "omega":
        labels = omega_phase_labels(f.p, indices)
    else:
        labels = phase_classes(seqs)
    rep = verify_members(seqs, indices, labels, auto_bound, cross_bound, ft_bound,
                         pair_mode, checks, threads, fam.to_dict())
    if fam.kind == "extended_split":
        full = f.p ** 2 * (f.p ** 2 - f.p - 1)
        rep.notes.append(
            f"split part only: {fam.size} members; the full extended system with its "
            f"non-split part would have {full} members (quoted as p^4)")
    return rep


# -- comparison table ----------------------------------------------------------------

COMPARE_KINDS = ("chu", "alltop_cubic", "heisenberg", "omega")


def compare_families(f: PrimeField, sample_threshold: int = 20000, seed: int = 0,
                     threads: int = 1) -> list:
    """One row per comparison family with measured maxima.

    Cross pairs are sampled (seeded) once a family has more than
    ``sample_threshold`` phase-distinct pairs.
    """
    rows = []
    for kind in COMPARE_KINDS:
        fam = FamilyDescriptor(kind, f)
        mode = PairMode.sampled(seed, sample_threshold)
        rep = verify_family(f, fam, pair_mode=mode, checks=("ambiguity", "ft"), threads=threads)
        rows.append({
            "family": kind,
            "p": f.p,
            "size": family_size(kind, f.p),
            "auto_max": rep.measured["auto_max"],
            "cross_max": rep.measured["cross_max"],
            "ft_max": rep.measured["ft_max"],
            "cross_pairs": rep.coverage["cross_pairs"],
            "auto_bound": rep.bounds["auto"],
            "cross_bound": rep.bounds["cross"],
            "ft_bound": rep.bounds["ft"],
        })
    return rows


def rows_to_csv(rows: list) -> str:
    cols = list(rows[0].keys())
    out = [",".join(cols)]
    for r in rows:
        cells = []
        for c in cols:
            v = r[c]
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(f"{v:.17g}")
            else:
                cells.append(str(v))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"
