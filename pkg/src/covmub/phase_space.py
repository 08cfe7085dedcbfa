"""The finite phase space V = F^2: vectors, directions, affine lines,
symplectic forms and the affine group action.

Vectors are indexed by index(x1) * q + index(x2); several routines below
hand out dense numpy index tables over V so that later brute-force passes
over pairs of vectors can be vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatchError, SingularMapError
from .fields import FieldElement, FieldSpec


@dataclass(frozen=True)
class PhaseVector:
    x1: FieldElement
    x2: FieldElement

    def __post_init__(self):
        if self.x1.field != self.x2.field:
            raise FieldMismatchError("vector components from different fields")

    @property
    def field(self):
        return self.x1.field

    @property
    def index(self):
        return self.x1.index * self.field.q + self.x2.index

    @property
    def is_zero(self):
        return self.x1.is_zero and self.x2.is_zero

    def __add__(self, other):
        return PhaseVector(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other):
        return PhaseVector(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self):
        return PhaseVector(-self.x1, -self.x2)

    def scale(self, c):
        return PhaseVector(c * self.x1, c * self.x2)

    def __repr__(self):
        return f"({self.x1.coeffs}, {self.x2.coeffs})"


def vector(spec, a, b):
    """Vector from two coefficient tuples (or integers, for prime fields)."""
    return PhaseVector(spec.element(a), spec.element(b))


def vector_from_index(spec, n):
    q = spec.q
    return PhaseVector(spec.from_index(n // q), spec.from_index(n % q))


def all_vectors(spec):
    return [vector_from_index(spec, n) for n in range(spec.q ** 2)]


_VTABLE_CACHE = {}


def vector_tables(spec):
    """(add, neg) index tables over V: add[m, n] = index of v_m + v_n."""
    if spec not in _VTABLE_CACHE:
        q = spec.q
        i1 = np.arange(q * q) // q
        i2 = np.arange(q * q) % q
        add = spec.add_table[np.ix_(i1, i1)] * q + spec.add_table[np.ix_(i2, i2)]
        neg = spec.neg_table[i1] * q + spec.neg_table[i2]
        _VTABLE_CACHE[spec] = (add.astype(np.int64), neg.astype(np.int64))
    return _VTABLE_CACHE[spec]


@dataclass(frozen=True)
class Direction:
    """One-dimensional subspace of V, held by its normalized representative.

    The representative has x1 = 1 when possible, otherwise (0, 1).
    """

    rep: PhaseVector

    @staticmethod
    def through(v):
        if v.is_zero:
            raise ValueError("zero vector spans no direction")
        if not v.x1.is_zero:
            c = v.x1.inverse()
        else:
            c = v.x2.inverse()
        return Direction(v.scale(c))

    @property
    def field(self):
        return self.rep.field

    def points(self):
        return [self.rep.scale(c) for c in self.field.elements()]

    def contains(self, v):
        r = self.rep
        return (v.x1 * r.x2 - v.x2 * r.x1).is_zero

    def __repr__(self):
        return f"Dir{self.rep!r}"


def directions(spec):
    """The q + 1 directions, F(1, a) for each a in field order, then F(0, 1)."""
    one = spec.one
    out = [Direction(PhaseVector(one, a)) for a in spec.elements()]
    out.append(Direction(PhaseVector(spec.zero, one)))
    return out


@dataclass(frozen=True)
class AffineLine:
    """Affine line base + direction; the base point is canonical (smallest
    vector index on the line), so equal lines compare equal."""

    direction: Direction
    base: PhaseVector

    @staticmethod
    def through(point, direction):
        best = min((point + d for d in direction.points()), key=lambda v: v.index)
        return AffineLine(direction, best)

    @property
    def field(self):
        return self.base.field

    def points(self):
        return [self.base + d for d in self.direction.points()]

    def contains(self, v):
        return self.direction.contains(v - self.base)

    def translate(self, v):
        return AffineLine.through(self.base + v, self.direction)

    def __repr__(self):
        return f"Line({self.direction!r} + {self.base!r})"


def lines(spec):
    """All q(q + 1) affine lines, grouped by direction, bases ascending."""
    out = []
    for d in directions(spec):
        seen = {}
        for v in all_vectors(spec):
            l = AffineLine.through(v, d)
            seen[l.base.index] = l
        out.extend(seen[k] for k in sorted(seen))
    return out


@dataclass(frozen=True)
class SymplecticForm:
    """S(u, v) = lam * (u1 v2 - u2 v1); lam must be nonzero."""

    lam: FieldElement

    def __post_init__(self):
        if self.lam.is_zero:
            raise ValueError("symplectic form scale must be nonzero")

    @property
    def field(self):
        return self.lam.field

    def eval(self, u, v):
        return self.lam * (u.x1 * v.x2 - u.x2 * v.x1)

    def bichar_exponent(self, u, v):
        """Exponent of the bicharacter in Z_p: Tr(S(u, v)) mod p."""
        return self.eval(u, v).trace()

    def bichar_table(self):
        """Dense (q^2, q^2) table of bicharacter exponents mod p."""
        spec = self.field
        q = spec.q
        vs = all_vectors(spec)
        table = np.zeros((q * q, q * q), dtype=np.int64)
        for i, u in enumerate(vs):
            for j, v in enumerate(vs):
                table[i, j] = self.bichar_exponent(u, v)
        return table


@dataclass(frozen=True)
class LinearMap2:
    """Invertible-or-not 2x2 matrix over F, acting on column vectors:
    (x1, x2) -> (a x1 + b x2, c x1 + d x2)."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @property
    def field(self):
        return self.a.field

    @staticmethod
    def identity(spec):
        return LinearMap2(spec.one, spec.zero, spec.zero, spec.one)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace_elem(self):
        return self.a + self.d

    def apply(self, v):
        return PhaseVector(self.a * v.x1 + self.b * v.x2, self.c * v.x1 + self.d * v.x2)

    def compose(self, other):
        """self @ other as matrices (apply other first)."""
        return LinearMap2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        dt = self.det()
        if dt.is_zero:
            raise SingularMapError("matrix is singular")
        di = dt.inverse()
        return LinearMap2(di * self.d, -(di * self.b), -(di * self.c), di * self.a)

    def minus_identity(self):
        spec = self.field
        return LinearMap2(self.a - spec.one, self.b, self.c, self.d - spec.one)

    def permutation(self):
        """Index permutation of V induced by this map: perm[i] = index(A v_i)."""
        spec = self.field
        return np.array(
            [self.apply(v).index for v in all_vectors(spec)], dtype=np.int64
        )

    def __repr__(self):
        return (
            f"[[{self.a.coeffs}, {self.b.coeffs}], [{self.c.coeffs}, {self.d.coeffs}]]"
        )


def linear_map(spec, a, b, c, d):
    return LinearMap2(spec.element(a), spec.element(b), spec.element(c), spec.element(d))


def affine_action(g, line):
    """Action of g = (A, t) on an affine line: points x map to A(x + t)."""
    A, t = g
    if A.det().is_zero:
        raise SingularMapError("affine action needs an invertible linear part")
    new_dir = Direction.through(A.apply(line.direction.rep))
    new_point = A.apply(line.base + t)
    return AffineLine.through(new_point, new_dir)
