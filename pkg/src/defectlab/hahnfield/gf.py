"""Finite fields F_{p^m} with log/antilog tables.

Elements are plain ints ``0 <= x < p**m``: the base-p digits of ``x`` are
the coefficients of a polynomial in a fixed primitive element ``g``
(little-endian).  The prime field is therefore ``{0, ..., p-1}`` with the
obvious meaning.  The modulus is the first primitive monic polynomial of
degree ``m`` in lexicographic order of its coefficients, so encodings are
reproducible.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from defectlab.errors import DescriptorError


def _mul_by_x(x: int, p: int, m: int, low: tuple[int, ...]) -> int:
    digits = [(x // p**i) % p for i in range(m)]
    top = digits[-1]
    digits = [0] + digits[:-1]
    # x^m = -(low[0] + low[1] x + ... + low[m-1] x^{m-1})
    digits = [(d - top * c) % p for d, c in zip(digits, low)]
    return sum(d * p**i for i, d in enumerate(digits))


@dataclass(frozen=True)
class FiniteField:
    p: int
    m: int = 1
    modulus: tuple[int, ...] = field(default=(), compare=False, repr=False)
    _exp: tuple[int, ...] = field(default=(), compare=False, repr=False)
    _log: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise DescriptorError("extension degree must be >= 1")
        q = self.p**self.m
        if q > 1 << 16:
            raise DescriptorError(f"F_{self.p}^{self.m} is too large for table arithmetic")
        for low in itertools.product(range(self.p), repeat=self.m):
            if low[0] == 0:
                continue
            exp = [1]
            seen = {1}
            x = 1
            for _ in range(q - 2):
                x = _mul_by_x(x, self.p, self.m, low) if self.m > 1 else (x * (-low[0])) % self.p
                if x in seen or x == 0:
                    break
                seen.add(x)
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - a primitive polynomial always exists
            raise DescriptorError(f"no primitive polynomial found for F_{self.p}^{self.m}")
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        object.__setattr__(self, "modulus", tuple(low) + (1,))
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", tuple(log))

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def get(p: int, m: int = 1) -> "FiniteField":
        return FiniteField(p, m)

    @property
    def q(self) -> int:
        return self.p**self.m

    def elements(self) -> range:
        return range(self.q)

    def from_int(self, n: int) -> int:
        return n % self.p

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _undigits(self, ds) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero has no inverse in a field")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        # Frobenius has order m, so its inverse is the (m-1)-fold Frobenius
        return self.pow(a, self.p ** (self.m - 1))

    def as_roots(self, c: int) -> list[int]:
        """All ``x`` with ``x^p - x = c``, found by exhaustive search."""
        return [x for x in self.elements() if self.sub(self.frobenius(x), x) == c]

    def format(self, a: int) -> str:
        return str(a)

    def parse(self, s) -> int:
        try:
            x = int(str(s).strip())
        except ValueError:
            raise DescriptorError(f"bad coefficient {s!r} for F_{self.p}^{self.m}") from None
        if self.m == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise DescriptorError(f"coefficient {x} out of range for F_{self.p}^{self.m}")
        return x
