"""JSON persistence for fields, multipliers, lines and operator bundles.

Field elements are serialized as plain integers over prime fields and as
ascending-degree coefficient lists otherwise; complex matrices are row-major
nested lists of [re, im] pairs.  Serialization is deterministic (sorted keys,
plain float repr), so identical inputs yield byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import CovMubError, InconsistentDimensionError
from .fields import field_new
from .multipliers import MultiplierTable, phase_order
from .phase_space import AffineLine, Direction, PhaseVector


def parse_field_descriptor(text, poly=None):
    """Field from a CLI descriptor 'p' or 'p^r', with an optional modulus
    given as comma-separated coefficients, constant term first."""
    parts = text.split("^")
    try:
        p = int(parts[0])
        r = int(parts[1]) if len(parts) > 1 else 1
    except (ValueError, IndexError):
        raise CovMubError(f"bad field descriptor {text!r}")
    if len(parts) > 2:
        raise CovMubError(f"bad field descriptor {text!r}")
    modulus = None
    if poly is not None:
        try:
            modulus = [int(c) for c in poly.split(",")]
        except ValueError:
            raise CovMubError(f"bad modulus {poly!r}")
    return field_new(p, r, modulus)


def field_to_json(spec):
    return {"p": spec.p, "r": spec.r, "modulus": list(spec.modulus)}


def field_from_json(d):
    return field_new(d["p"], d["r"], d["modulus"])


def element_to_json(x):
    if x.field.r == 1:
        return x.coeffs[0]
    return list(x.coeffs)


def element_from_json(spec, d):
    return spec.element(d)


def vector_to_json(v):
    return [element_to_json(v.x1), element_to_json(v.x2)]


def vector_from_json(spec, d):
    return PhaseVector(element_from_json(spec, d[0]), element_from_json(spec, d[1]))


def line_to_json(l):
    return {"dir": vector_to_json(l.direction.rep), "base": vector_to_json(l.base)}


def line_from_json(spec, d):
    direction = Direction.through(vector_from_json(spec, d["dir"]))
    return AffineLine.through(vector_from_json(spec, d["base"]), direction)


def multiplier_to_json(m):
    return {
        "field": field_to_json(m.spec),
        "L": m.L,
        "table": m.table.tolist(),
    }


def multiplier_from_json(d):
    spec = field_from_json(d["field"])
    table = np.array(d["table"], dtype=np.int64)
    n = spec.q ** 2
    if table.shape != (n, n):
        raise InconsistentDimensionError(
            f"multiplier table must be {n}x{n}, got {table.shape}"
        )
    L = int(d["L"])
    if L != phase_order(spec):
        raise InconsistentDimensionError(f"phase order {L} does not match field")
    return MultiplierTable(spec, L, table % L)


def matrix_to_json(M):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]


def matrix_from_json(d):
    return np.array([[complex(re, im) for re, im in row] for row in d])


def dump(obj, path=None, pretty=False):
    text = json.dumps(obj, indent=2 if pretty else None, sort_keys=True)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text)
        fh.write("\n")
    return None


def load(path):
    with open(path) as fh:
        return json.load(fh)
