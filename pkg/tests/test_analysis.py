import math

import numpy as np
import pytest

from oracles import brute_ambiguity
from seqlab.analysis import (
    PairMode,
    ambiguity_fast,
    ambiguity_naive,
    ambiguity_surface,
    autocorrelation,
    compare_families,
    count_time_shift_classes,
    crosscorrelation,
    omega_phase_labels,
    phase_classes,
    rows_to_csv,
    spectrum_max,
    verify_family,
    verify_members,
)
from seqlab.errors import PeriodMismatch
from seqlab.families import FamilyDescriptor, chu_sequence, heisenberg_sequence, omega_sequence
from seqlab.field import make_field
from seqlab.seqcore import Sequence, fourier, ones, phase_shift, random_sequence, time_shift


def close(a, b, tol=1e-9):
    return np.allclose(np.asarray(a), np.asarray(b), rtol=0, atol=tol)


def test_autocorrelation_examples(f5):
    phi = omega_sequence(f5, 0)
    assert abs(autocorrelation(phi)[0] - 4) <= 1e-12
    c = autocorrelation(chu_sequence(f5, 1))
    assert np.all(np.abs(c[1:]) <= 1e-9)
    assert np.all(np.abs(autocorrelation(phi)[1:]) <= 2 * math.sqrt(5))


def test_crosscorrelation_examples(f5, rng):
    phi = random_sequence(5, rng)
    assert close(crosscorrelation(phi, phi), autocorrelation(phi))
    for s in range(5):
        c = crosscorrelation(phi, time_shift(phi, s))
        assert close(c, np.roll(autocorrelation(phi), -s))
    a, b = omega_sequence(f5, 0), omega_sequence(f5, 30)
    assert np.all(np.abs(crosscorrelation(a, b)) <= 4 * math.sqrt(5))
    with pytest.raises(PeriodMismatch):
        crosscorrelation(phi, random_sequence(7, rng))


@pytest.mark.parametrize("p", [5, 7])
def test_naive_ambiguity_matches_brute_force(p, rng):
    phi, psi = random_sequence(p, rng), random_sequence(p, rng)
    ref = brute_ambiguity(list(phi.values), list(psi.values))
    assert close(ambiguity_naive(phi, psi), ref)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_fast_matches_naive(p):
    rng = np.random.default_rng(p)
    for _ in range(100):
        phi, psi = random_sequence(p, rng), random_sequence(p, rng)
        assert close(ambiguity_fast(phi, psi), ambiguity_naive(phi, psi))


def test_ambiguity_w0_row_is_correlation(rng):
    phi, psi = random_sequence(7, rng), random_sequence(7, rng)
    A = ambiguity_surface(phi, psi).values
    assert close(A[:, 0], crosscorrelation(phi, psi), 1e-12)


def test_surface_examples(f5):
    s = ambiguity_surface(omega_sequence(f5, 0))
    assert abs(s.values[0, 0] - 4) <= 1e-12
    assert s.peak[0] <= 2 * math.sqrt(5) + 1e-6
    h = ambiguity_surface(heisenberg_sequence(f5, 1, 2))
    assert abs(h.peak[0] - 5) <= 1e-9


def test_surface_csv(f5):
    txt = ambiguity_surface(omega_sequence(f5, 0)).to_csv().splitlines()
    assert txt[0] == "t,w,re,im,abs"
    assert len(txt) == 26
    assert txt[1].startswith("0,0,") and float(txt[1].split(",")[4]) == pytest.approx(4)


def test_spectrum_examples(f5):
    assert abs(spectrum_max(ones(5)) - math.sqrt(5)) <= 1e-12
    assert abs(spectrum_max(chu_sequence(f5, 1)) - 1) <= 1e-9
    assert max(spectrum_max(omega_sequence(f5, n)) for n in range(75)) <= 2 + 1e-6


@pytest.mark.parametrize("p", [5, 7])
def test_omega_structural_phase_classes_agree_with_generic(p):
    fam = FamilyDescriptor("omega", make_field(p))
    idx = list(fam.indices())
    seqs = list(fam.members())
    structural = omega_phase_labels(p, idx)
    generic_exact = phase_classes(seqs)
    generic_numeric = phase_classes([s.numeric() for s in seqs])
    for other in (generic_exact, generic_numeric):
        same_a = structural[:, None] == structural[None, :]
        same_b = other[:, None] == other[None, :]
        assert np.array_equal(same_a, same_b)


def test_time_shift_class_count_numeric_and_exact(f5):
    seqs = [omega_sequence(f5, n) for n in range(75)]
    assert count_time_shift_classes(seqs) == 75
    shifted = seqs + [time_shift(seqs[3], 2), time_shift(seqs[9], 1)]
    assert count_time_shift_classes(shifted) == 75
    assert count_time_shift_classes([s.numeric() for s in shifted]) == 75


def test_verify_omega_p5(f5):
    rep = verify_family(f5, FamilyDescriptor("omega", f5))
    assert rep.passed
    assert rep.time_shift_classes == 75
    assert rep.measured["auto_max"] <= 2 * math.sqrt(5)
    assert rep.coverage["cross_pairs"] == 75 * 74 // 2 - 15 * 10


def test_verify_split_refined_bounds(f5):
    rep = verify_family(f5, FamilyDescriptor("split_oscillator", f5))
    assert rep.bounds["auto"] == pytest.approx(2 * math.sqrt(5) / 4)
    assert rep.passed


def test_verify_heisenberg_fails_tight_auto_bound(f5):
    rep = verify_family(f5, FamilyDescriptor("heisenberg", f5), auto_bound=2 * math.sqrt(5))
    assert not rep.passed
    assert rep.witnesses["auto"]["magnitude"] == pytest.approx(5)


def test_verify_extended_split_p5(f5):
    rep = verify_family(f5, FamilyDescriptor("extended_split", f5))
    assert rep.passed
    assert rep.notes and "p^4" in rep.notes[0]


def test_property1_transfer_to_fourier_images(f5):
    fam = FamilyDescriptor("omega", f5)
    idx = list(fam.indices())
    seqs = [fourier(s) for s in fam.members()]
    rep = verify_members(seqs, idx, omega_phase_labels(5, idx), 2 * math.sqrt(5), 4 * math.sqrt(5),
                         checks=("ambiguity",))
    assert rep.passed


def test_phase_shift_leaves_maxima_unchanged(f7):
    rng = np.random.default_rng(9)
    for n in rng.integers(0, 245, size=10):
        phi = omega_sequence(f7, int(n))
        psi = omega_sequence(f7, int((n + 70) % 245))
        base_a = ambiguity_surface(phi).peak[0]
        base_c = np.abs(ambiguity_surface(phi, psi).values).max()
        for w in (1, 3):
            assert abs(ambiguity_surface(phase_shift(phi, w)).peak[0] - base_a) <= 1e-9
            c = np.abs(ambiguity_surface(phase_shift(phi, w), psi).values).max()
            assert abs(c - base_c) <= 1e-9


def test_sampled_mode_is_deterministic():
    f = make_field(11)
    fam = FamilyDescriptor("omega", f)
    a = verify_family(f, fam, pair_mode=PairMode.sampled(7, 3000), checks=("ambiguity",))
    b = verify_family(f, fam, pair_mode=PairMode.sampled(7, 3000), checks=("ambiguity",), threads=4)
    assert a.to_dict() == b.to_dict()
    assert a.coverage["cross_pairs"] == 3000


def test_pair_mode_needs_seed():
    with pytest.raises(ValueError):
        PairMode("sampled")


def test_compare_families_p5(f5):
    rows = {r["family"]: r for r in compare_families(f5)}
    assert rows["chu"]["size"] == 4 and abs(rows["chu"]["ft_max"] - 1) <= 1e-9
    assert rows["heisenberg"]["size"] == 25
    assert rows["heisenberg"]["cross_max"] <= math.sqrt(5) + 1e-6
    om = rows["omega"]
    assert om["size"] == 75
    assert om["auto_max"] <= 2 * math.sqrt(5) and om["cross_max"] <= 4 * math.sqrt(5) and om["ft_max"] <= 2
    csv = rows_to_csv(list(rows.values())).splitlines()
    assert csv[0].startswith("family,p,size") and len(csv) == 5


def test_verify_handles_numeric_only_members():
    seqs = [Sequence(5, np.exp(2j * np.pi * np.arange(5) * k / 5)) for k in range(5)]
    rep = verify_members(seqs, [(k,) for k in range(5)], phase_classes(seqs))
    assert rep.coverage["cross_pairs"] == 0
