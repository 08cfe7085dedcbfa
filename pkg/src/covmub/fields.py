"""Exact arithmetic in GF(p^r).

Elements are stored by index; index n has polynomial coordinates equal to the
base-p digits of n, least significant digit first (coefficient of x^0 first).
All arithmetic is table driven and exact.  The module also provides the trace
to the prime field, self-dual bases in characteristic two, and the quadratic
extension together with its conjugation and norm-one subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeMismatchError,
    FieldMismatchError,
    NonPrimeError,
    OddCharacteristicError,
    ReduciblePolynomialError,
    ZeroInverseError,
    ZeroScaleError,
)


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over Z_p, coefficient lists in ascending degree

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_rem(a, b, p):
    """Remainder of a modulo b; b need not be monic."""
    a = list(a)
    db = len(b) - 1
    lead_inv = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    while len(_trim(a)) - 1 >= db:
        a = _trim(a)
        shift = len(a) - 1 - db
        factor = (a[-1] * lead_inv) % p
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
    return _trim(a)


def _monic_polys(degree, p):
    """All monic polynomials of the given degree, ascending-degree coeffs."""
    total = p ** degree
    for n in range(total):
        coeffs = [(n // p ** i) % p for i in range(degree)]
        yield coeffs + [1]


def poly_is_irreducible(coeffs, p):
    """Trial division test for a monic polynomial over Z_p."""
    coeffs = _trim(coeffs)
    degree = len(coeffs) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for div in _monic_polys(d, p):
            if not _poly_rem(coeffs, div, p):
                return False
    return True


class FieldSpec:
    """GF(p^r) with precomputed add/mul/inverse/trace tables."""

    def __init__(self, p, r, modulus):
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = tuple(int(c) % p for c in modulus)
        self._build_tables()

    # identity of a field is its defining data
    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, r={self.r}, modulus={list(self.modulus)})"

    def _build_tables(self):
        p, r, q = self.p, self.r, self.q
        self._coeffs = [tuple((n // p ** i) % p for i in range(r)) for n in range(q)]
        self._index_of = {c: n for n, c in enumerate(self._coeffs)}
        mod = _trim(self.modulus)

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for m in range(q):
            cm = self._coeffs[m]
            for n in range(m, q):
                cn = self._coeffs[n]
                s = tuple((a + b) % p for a, b in zip(cm, cn))
                add[m, n] = add[n, m] = self._index_of[s]
                prod = _poly_rem(_poly_mul(_trim(cm), _trim(cn), p), mod, p)
                prod = tuple(prod) + (0,) * (r - len(prod))
                mul[m, n] = mul[n, m] = self._index_of[prod]
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array(
            [self._index_of[tuple((-a) % p for a in self._coeffs[n])] for n in range(q)],
            dtype=np.int64,
        )

        # discrete log via the smallest-index generator
        gen = None
        for g in range(1, q):
            x, order = g, 1
            while x != self._index_of[(1,) + (0,) * (r - 1)]:
                x = int(mul[x, g])
                order += 1
                if order > q:
                    raise ReduciblePolynomialError(
                        f"x^{r} modulus {list(self.modulus)} does not define a field"
                    )
            if order == q - 1:
                gen = g
                break
        self.generator_index = gen
        exp = [self._index_of[(1,) + (0,) * (r - 1)]]
        for _ in range(q - 2):
            exp.append(int(mul[exp[-1], gen]))
        self.exp_table = np.array(exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        for k, n in enumerate(exp):
            log[n] = k
        self.log_table = log
        inv = np.zeros(q, dtype=np.int64)
        for n in range(1, q):
            inv[n] = exp[(q - 1 - int(log[n])) % (q - 1)]
        self.inv_table = inv

        # trace to Z_p: Tr(a) = sum of Frobenius iterates
        trace = np.zeros(q, dtype=np.int64)
        for n in range(q):
            acc, x = n, n
            for _ in range(r - 1):
                x = self._pow_index(x, p)
                acc = int(add[acc, x])
            c = self._coeffs[acc]
            if any(c[1:]):
                raise AssertionError("trace left the prime field")
            trace[n] = c[0]
        self.trace_table = trace

    def _pow_index(self, n, k):
        result = self._index_of[(1,) + (0,) * (self.r - 1)]
        base = n
        while k:
            if k & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            k >>= 1
        return result

    # ---- element constructors

    def from_index(self, n):
        if not 0 <= n < self.q:
            raise IndexError(f"element index {n} out of range for q={self.q}")
        return FieldElement(self, n)

    def element(self, coeffs):
        if isinstance(coeffs, int):
            coeffs = (coeffs % self.p,) + (0,) * (self.r - 1)
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.r:
            raise DegreeMismatchError(
                f"expected {self.r} coordinates, got {len(coeffs)}"
            )
        return FieldElement(self, self._index_of[coeffs])

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, self._index_of[(1,) + (0,) * (self.r - 1)])

    def elements(self):
        return [FieldElement(self, n) for n in range(self.q)]

    def nonzero_elements(self):
        return [FieldElement(self, n) for n in range(1, self.q)]


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    index: int

    @property
    def coeffs(self):
        return self.field._coeffs[self.index]

    @property
    def is_zero(self):
        return self.index == 0

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.add_table[self.index, other.index]))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(
            self.field,
            int(self.field.add_table[self.index, int(self.field.neg_table[other.index])]),
        )

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg_table[self.index]))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.mul_table[self.index, other.index]))

    def inverse(self):
        if self.is_zero:
            raise ZeroInverseError("zero has no multiplicative inverse")
        return FieldElement(self.field, int(self.field.inv_table[self.index]))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.field, self.field._pow_index(self.index, k))

    def trace(self):
        """Trace to the prime field, returned as an integer mod p."""
        return int(self.field.trace_table[self.index])

    def __repr__(self):
        return f"<{self.coeffs} in GF({self.field.p}^{self.field.r})>"


_FIELD_CACHE = {}


def field_new(p, r=1, modulus=None):
    """Construct GF(p^r), validating (or choosing) the modulus polynomial.

    When no modulus is given, the monic irreducible polynomial with the
    lexicographically smallest coefficient vector (constant term most
    significant) is selected, so repeated calls agree.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if r < 1:
        raise DegreeMismatchError("extension degree must be at least 1")
    if p ** r > 256:
        raise DegreeMismatchError(f"field size {p ** r} exceeds the supported 256")
    if modulus is None:
        modulus = _canonical_modulus(p, r)
    else:
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != r + 1:
            raise DegreeMismatchError(
                f"modulus must have {r + 1} coefficients, got {len(modulus)}"
            )
        if modulus[-1] != 1:
            raise DegreeMismatchError("modulus must be monic")
        if not poly_is_irreducible(modulus, p):
            raise ReduciblePolynomialError(
                f"{modulus} is reducible over Z_{p}"
            )
    key = (p, r, tuple(modulus))
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldSpec(p, r, modulus)
    return _FIELD_CACHE[key]


def _canonical_modulus(p, r):
    # lexicographic order on (c_0, ..., c_{r-1}): c_0 varies slowest
    for n in range(p ** r):
        coeffs = [(n // p ** (r - 1 - i)) % p for i in range(r)]
        cand = coeffs + [1]
        if poly_is_irreducible(cand, p):
            return cand
    raise ReduciblePolynomialError(f"no irreducible polynomial found for p={p}, r={r}")


# ---------------------------------------------------------------------------
# self-dual bases (characteristic two)

_SELF_DUAL_CACHE = {}


def self_dual_basis(spec, alpha=None):
    """Basis (e_1, ..., e_r) with Tr(alpha * e_i * e_j) = delta_ij, p = 2.

    For alpha = 1 this is a self-dual basis in the usual sense; for general
    nonzero alpha the basis is the self-dual one rescaled by the square root
    of alpha.  The search is exhaustive and deterministic (smallest element
    indices first).
    """
    if spec.p != 2:
        raise OddCharacteristicError("self-dual bases are only used for p = 2")
    if alpha is None:
        alpha = spec.one
    if alpha.is_zero:
        raise ZeroScaleError("scale must be nonzero")

    if spec not in _SELF_DUAL_CACHE:
        _SELF_DUAL_CACHE[spec] = _find_self_dual(spec)
    omega = _SELF_DUAL_CACHE[spec]
    # gamma^2 = alpha; squaring is a bijection in characteristic two
    gamma = alpha ** (2 ** (spec.r - 1))
    ginv = gamma.inverse()
    return tuple(ginv * w for w in omega)


def _find_self_dual(spec):
    q, r = spec.q, spec.r
    elems = spec.elements()

    def extend(chosen):
        if len(chosen) == r:
            return chosen
        start = chosen[-1].index + 1 if chosen else 1
        for n in range(start, q):
            x = elems[n]
            if (x * x).trace() != 1:
                continue
            if any((x * w).trace() != 0 for w in chosen):
                continue
            found = extend(chosen + [x])
            if found:
                return found
        return None

    basis = extend([])
    if basis is None:
        raise AssertionError("no self-dual basis found (should not happen for p=2)")
    return tuple(basis)


# ---------------------------------------------------------------------------
# quadratic extension and its norm-one subgroup

@dataclass(frozen=True)
class ExtFieldElement:
    """Element a + b*theta of the quadratic extension of a base field."""

    ext: "QuadraticExtension"
    a: FieldElement
    b: FieldElement

    def _check(self, other):
        if other.ext is not self.ext:
            raise FieldMismatchError("operands belong to different extensions")

    def __add__(self, other):
        self._check(other)
        return ExtFieldElement(self.ext, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return ExtFieldElement(self.ext, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        t0, t1 = self.ext.t0, self.ext.t1
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        bb = b1 * b2
        return ExtFieldElement(
            self.ext, a1 * a2 - t0 * bb, a1 * b2 + a2 * b1 - t1 * bb
        )

    def __pow__(self, k):
        result = self.ext.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_zero(self):
        return self.a.is_zero and self.b.is_zero

    def conj(self):
        """Galois conjugate z -> z^q over the base field."""
        tq = self.ext.theta_q
        return ExtFieldElement(self.ext, self.a + self.b * tq.a, self.b * tq.b)

    def norm(self):
        """Norm z * conj(z), always lands in the base field."""
        n = self * self.conj()
        if not n.b.is_zero:
            raise AssertionError("norm left the base field")
        return n.a

    def __repr__(self):
        return f"<{self.a.coeffs} + {self.b.coeffs}*theta>"


class QuadraticExtension:
    """Degree-two extension of a base field, with conjugation z -> z^q."""

    def __init__(self, base):
        self.base = base
        self.t0, self.t1 = self._find_modulus(base)
        one = base.one
        self.one = ExtFieldElement(self, one, base.zero)
        self.zero = ExtFieldElement(self, base.zero, base.zero)
        self.theta = ExtFieldElement(self, base.zero, one)
        # theta^q, computed once so conjugation is a cheap linear map
        self.theta_q = self._theta_power_q()

    @staticmethod
    def _find_modulus(base):
        # smallest (t0, t1) in element-index order with x^2 + t1 x + t0 rootless
        for n0 in range(base.q):
            t0 = base.from_index(n0)
            for n1 in range(base.q):
                t1 = base.from_index(n1)
                if all(not (g * g + t1 * g + t0).is_zero for g in base.elements()):
                    return t0, t1
        raise AssertionError("no irreducible quadratic found")

    def _theta_power_q(self):
        # temporary conj-free power of theta
        result = self.one
        base_el = self.theta
        k = self.base.q
        while k:
            if k & 1:
                result = result * base_el
            base_el = base_el * base_el
            k >>= 1
        return result

    def embed(self, a):
        return ExtFieldElement(self, a, self.base.zero)

    def from_pair_index(self, n):
        q = self.base.q
        return ExtFieldElement(self, self.base.from_index(n % q), self.base.from_index(n // q))

    def elements(self):
        return [self.from_pair_index(n) for n in range(self.base.q ** 2)]


_EXT_CACHE = {}


def quadratic_extension(spec):
    if spec not in _EXT_CACHE:
        _EXT_CACHE[spec] = QuadraticExtension(spec)
    return _EXT_CACHE[spec]


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def norm_one_generator(ext):
    """Generator z0 = g^(q-1) of the norm-one subgroup, of order q + 1.

    g is the multiplicative generator of the extension with the smallest
    pair index, so the result is deterministic.
    """
    q = ext.base.q
    group_order = q * q - 1
    checks = [(group_order // ell) for ell in _prime_factors(group_order)]
    for n in range(1, q * q):
        g = ext.from_pair_index(n)
        if g.is_zero:
            continue
        if all((g ** k) != ext.one for k in checks):
            return g ** (q - 1)
    raise AssertionError("no generator found")
