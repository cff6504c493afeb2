"""Exact arithmetic in GF(p^e).

Elements are stored as integers: the coefficient sequence ``(c0, c1, ..., c_{e-1})``
of the residue polynomial read in base ``p`` with the constant term least
significant.  That integer is also the element's position in
:func:`enumerate_elements`, so "ascending encoding" is the one ordering used
everywhere (modulus search, primitive search, message enumeration).
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FieldError, MixedFieldError

MAX_FIELD_SIZE = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists with constant term first -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_mod(exponent: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod([0, 1], m, p)
    while exponent:
        if exponent & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        exponent >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p).

    ``f`` of degree ``e`` is irreducible iff ``x^(p^e) = x (mod f)`` and
    ``gcd(x^(p^(e/r)) - x, f) = 1`` for every prime ``r`` dividing ``e``.
    """
    f = [c % p for c in modulus]
    e = len(f) - 1
    if e < 1 or f[-1] != 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if _poly_sub(_x_pow_mod(p**e, f, p), x, p):
        return False
    for r in prime_factors(e):
        h = _poly_sub(_x_pow_mod(p ** (e // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def irreducible_polynomials(p: int, e: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducible polynomials of degree ``e`` in ascending integer encoding."""
    if e == 1:
        # the constant-free modulus x comes first; it is the one used for prime fields
        yield (0, 1)
        for c in range(1, p):
            yield (c, 1)
        return
    for low in range(p**e):
        coeffs = [(low // p**i) % p for i in range(e)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            yield tuple(coeffs)


class FieldSpec:
    """GF(p^e) with an explicit irreducible modulus.

    Use :func:`make_field` to build one; the constructor validates everything it
    is given but does not pick defaults.
    """

    __slots__ = ("p", "e", "modulus", "q", "_mod_int", "__dict__")

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"p={p!r} is not prime")
        if not isinstance(e, int) or e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e!r}")
        q = p**e
        if q > MAX_FIELD_SIZE:
            raise FieldError(f"field size {p}^{e} = {q} exceeds the cap {MAX_FIELD_SIZE}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {list(modulus)} is not monic of degree {e}")
        if any(not 0 <= c < p for c in modulus):
            raise FieldError(f"modulus coefficients must lie in [0, {p})")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus
        self._mod_int = sum(c << i for i, c in enumerate(modulus)) if p == 2 else None

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __call__(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        return FieldElement(self, self.encode(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    # --- conversions -------------------------------------------------------

    def encode(self, value: int | Sequence[int] | "FieldElement") -> int:
        """Integer encoding of an element given as int, coefficient list, or element."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise MixedFieldError(f"element of {value.spec} used in {self}")
            return value.value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                raise FieldError(f"encoding {v} out of range for GF({self.q})")
            return v
        coeffs = list(value)
        if len(coeffs) > self.e or any(not 0 <= int(c) < self.p for c in coeffs):
            raise FieldError(f"{coeffs} is not a reduced coefficient sequence of GF({self.q})")
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    def coeffs(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(int(data["p"]), int(data["e"]), data["modulus"])

    # --- arithmetic on encodings ------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.e == 1:
            return (-a) % p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return (a * b) % self.p
        if self.p == 2:
            out = 0
            while b:
                if b & 1:
                    out ^= a
                b >>= 1
                a <<= 1
                if a >> self.e:
                    a ^= self._mod_int
            return out
        prod = _poly_mulmod(list(self.coeffs(a)), list(self.coeffs(b)), self.modulus, self.p)
        return self.encode(prod)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise FieldError("division by zero")
        return self.mul(a, self.inv(b))

    # --- vectorised helpers used by code enumeration -----------------------

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise field addition of broadcastable integer arrays."""
        p = self.p
        if p == 2:
            return np.bitwise_xor(a, b)
        if self.e == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast_shapes(np.shape(a), np.shape(b)), dtype=np.int64)
        scale = 1
        for _ in range(self.e):
            out += (((a // scale) % p + (b // scale) % p) % p) * scale
            scale *= p
        return out

    @cached_property
    def factors_of_order(self) -> list[int]:
        return prime_factors(self.q - 1)


class FieldElement:
    """An immutable element of a :class:`FieldSpec`."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise MixedFieldError(f"cannot combine elements of {self.spec} and {other.spec}")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.add(self.value, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.value, b))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.div(self.value, b))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and self.value == 0:
            raise FieldError("inverse of zero")
        return FieldElement(self.spec, self.spec.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.value == other.value and self.spec == other.spec

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < self._other(other)

    def __repr__(self) -> str:
        if self.spec.e == 1:
            return f"GF({self.spec.q})({self.value})"
        return f"GF({self.spec.q})({list(self.coeffs)})"


def make_field(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^e).

    Without a modulus the first monic irreducible polynomial of degree ``e`` in
    ascending integer encoding is used (``x`` itself when ``e == 1``), so the
    choice is reproducible.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p={p!r} is not prime")
    if not isinstance(e, int) or e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e!r}")
    if p**e > MAX_FIELD_SIZE:
        raise FieldError(f"field size {p}^{e} exceeds the cap {MAX_FIELD_SIZE}")
    if modulus is None:
        modulus = next(irreducible_polynomials(p, e))
    return FieldSpec(p, e, modulus)


def element_order(x: FieldElement) -> int:
    """Multiplicative order, found by stripping prime factors from q - 1."""
    if x.value == 0:
        raise FieldError("zero has no multiplicative order")
    spec = x.spec
    m = spec.q - 1
    for r in spec.factors_of_order:
        while m % r == 0 and spec.pow(x.value, m // r) == 1:
            m //= r
    return m


def primitive_elements(spec: FieldSpec) -> Iterator[FieldElement]:
    """All primitive elements in ascending encoding."""
    for v in range(1, spec.q):
        x = FieldElement(spec, v)
        if element_order(x) == spec.q - 1:
            yield x


def find_primitive(spec: FieldSpec) -> FieldElement:
    return next(primitive_elements(spec))


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(spec, v) for v in range(spec.q)]


def as_values(spec: FieldSpec, items: Iterable) -> list[int]:
    return [spec.encode(x) for x in items]
