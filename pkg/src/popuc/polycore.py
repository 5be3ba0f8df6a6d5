"""Dense complex polynomials, Pochhammer symbols and terminating 2F1 sums."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, InvalidArgument

__all__ = [
    "ComplexPoly",
    "eval",
    "derivative",
    "star",
    "pochhammer",
    "hyp2f1_terminating",
]


class ComplexPoly:
    """Immutable polynomial with complex coefficients in ascending degree order.

    Trailing exact zeros are dropped, so ``degree`` is the index of the last
    nonzero coefficient.  The zero polynomial is stored as ``[0]``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        c.flags.writeable = False
        self._c = c

    @classmethod
    def monomial(cls, n, coef=1.0):
        c = np.zeros(n + 1, dtype=complex)
        c[n] = coef
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    @property
    def leading(self) -> complex:
        return complex(self._c[-1])

    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0

    def __call__(self, z):
        return eval(self, z)

    def __len__(self):
        return self._c.size

    def __getitem__(self, j):
        if 0 <= j < self._c.size:
            return complex(self._c[j])
        return 0j

    def _padded(self, other):
        n = max(self._c.size, other._c.size)
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: self._c.size] = self._c
        b[: other._c.size] = other._c
        return a, b

    def __add__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        a, b = self._padded(other)
        return ComplexPoly(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        a, b = self._padded(other)
        return ComplexPoly(a - b)

    def __neg__(self):
        return ComplexPoly(-self._c)

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return ComplexPoly(np.convolve(self._c, other._c))
        return ComplexPoly(self._c * complex(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar):
        return ComplexPoly(self._c / complex(scalar))

    def mul_z(self, k=1):
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return ComplexPoly(np.concatenate([np.zeros(k, dtype=complex), self._c]))

    def allclose(self, other, rtol=1e-13, atol=0.0):
        a, b = self._padded(other)
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
        return bool(np.max(np.abs(a - b)) <= atol + rtol * scale)

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self._c.size == other._c.size and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"ComplexPoly({self._c.tolist()!r})"


def eval(p: ComplexPoly, z):
    """Horner evaluation; ``z`` may be a scalar or a numpy array."""
    c = p.coeffs
    if np.ndim(z) == 0:
        acc = 0j
        z = complex(z)
        for a in c[::-1]:
            acc = acc * z + a
        return acc
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def derivative(p: ComplexPoly) -> ComplexPoly:
    c = p.coeffs
    if c.size == 1:
        return ComplexPoly([0])
    return ComplexPoly(c[1:] * np.arange(1, c.size))


def star(p: ComplexPoly, n: int) -> ComplexPoly:
    """Reversed conjugate z**n * conj(p(1/conj(z))) at declared degree n."""
    if n < p.degree:
        raise InvalidArgument(f"star: n={n} is below degree {p.degree}")
    c = np.zeros(n + 1, dtype=complex)
    c[: p.coeffs.size] = p.coeffs
    return ComplexPoly(np.conj(c[::-1]))


def pochhammer(a, n: int):
    """Rising factorial (a)_n = Gamma(a+n)/Gamma(a), for any integer n."""
    n = int(n)
    if n == 0:
        return 1
    if n > 0:
        out = 1
        for k in range(n):
            out *= a + k
        return out
    out = 1
    for k in range(1, -n + 1):
        f = a - k
        if f == 0:
            raise DomainError(f"pochhammer({a!r}, {n}): pole at a-{k}")
        out *= f
    return 1 / out


def hyp2f1_terminating(n: int, b, c, x):
    """Sum_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) x^k with compensated summation."""
    if n < 0:
        raise InvalidArgument("hyp2f1_terminating needs n >= 0")
    b, c, x = complex(b), complex(c), complex(x)
    term = 1 + 0j
    re, im = [1.0], [0.0]
    for k in range(n):
        den = (c + k) * (k + 1)
        if den == 0:
            raise DomainError(f"hyp2f1_terminating: (c)_k vanishes at k={k + 1}")
        term = term * (k - n) * (b + k) / den * x
        re.append(term.real)
        im.append(term.imag)
    return complex(math.fsum(re), math.fsum(im))
