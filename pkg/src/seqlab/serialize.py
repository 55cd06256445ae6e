"""JSON / JSON-lines encodings for sequences, family dumps and reports."""

from __future__ import annotations

import json
from typing import Iterable, TextIO

import numpy as np

from .families import FamilyDescriptor
from .seqcore import Sequence


def sequence_to_dict(s: Sequence) -> dict:
    d = {
        "p": s.p,
        "label": s.label,
        "values": [[float(v.real), float(v.imag)] for v in s.values],
    }
    if s.exact is not None:
        d["exact"] = [None if e is None else [e[0], e[1]] for e in s.exact]
    if s.gain != 1.0:
        d["gain"] = s.gain
    return d


def sequence_from_dict(d: dict) -> Sequence:
    p = int(d["p"])
    vals = np.array([complex(re, im) for re, im in d["values"]])
    exact = d.get("exact")
    if exact is not None:
        exact = tuple(None if e is None else (int(e[0]), int(e[1])) for e in exact)
    return Sequence(p, vals, exact, d.get("label", ""), float(d.get("gain", 1.0)))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, allow_nan=False)


def write_family(out: TextIO, fam: FamilyDescriptor, seqs: Iterable[Sequence]) -> int:
    """Header line with the descriptor, then one sequence per line."""
    out.write(dumps({"type": "family", **fam.to_dict()}) + "\n")
    n = 0
    for s in seqs:
        out.write(dumps(sequence_to_dict(s)) + "\n")
        n += 1
    return n


def read_family(lines: Iterable[str]):
    it = iter(lines)
    header = json.loads(next(it))
    return header, [sequence_from_dict(json.loads(line)) for line in it if line.strip()]
