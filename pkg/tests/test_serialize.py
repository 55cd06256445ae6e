import io
import json

import numpy as np

from seqlab.families import FamilyDescriptor, split_oscillator_sequence
from seqlab.seqcore import Sequence
from seqlab.serialize import read_family, sequence_from_dict, sequence_to_dict, write_family


def test_family_round_trip(f5):
    fam = FamilyDescriptor("omega", f5)
    buf = io.StringIO()
    assert write_family(buf, fam, fam.members()) == 75
    header, seqs = read_family(buf.getvalue().splitlines())
    assert header["type"] == "family" and header["generator"] == 2 and header["size"] == 75
    for a, b in zip(fam.members(), seqs):
        assert np.array_equal(a.values, b.values)
        assert a.exact == b.exact and a.label == b.label


def test_gain_survives(f5):
    s = split_oscillator_sequence(f5, 1, 2, 0)
    assert s.gain != 1.0
    back = sequence_from_dict(json.loads(json.dumps(sequence_to_dict(s))))
    assert back.gain == s.gain
    assert np.array_equal(back.values, s.values)


def test_numeric_only_sequence():
    s = Sequence(5, np.array([1, 1j, -1, -1j, 0.5]))
    d = sequence_to_dict(s)
    assert "exact" not in d
    assert np.array_equal(sequence_from_dict(d).values, s.values)
