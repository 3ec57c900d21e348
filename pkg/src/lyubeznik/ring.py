"""Standard-graded polynomial rings F_p[x_0, ..., x_n] with grevlex order.

Monomials are plain exponent tuples; polynomials are immutable maps from
monomial to a nonzero residue in ``range(1, p)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ContextMismatch, NonHomogeneous, NonPrimeField

Monomial = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@lru_cache(maxsize=1 << 16)
def grevlex_key(m: Monomial) -> tuple[int, ...]:
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(m),) + tuple(-e for e in reversed(m))


def grevlex_cmp(m1: Monomial, m2: Monomial) -> int:
    """Return 1, 0 or -1 as ``m1`` is greater, equal or smaller in grevlex.

    Total degree decides first; on a tie the monomial with the smaller
    exponent in the last variable wins, scanning right to left.
    """
    if len(m1) != len(m2):
        raise ContextMismatch("monomials have different numbers of variables")
    k1, k2 = grevlex_key(m1), grevlex_key(m2)
    return (k1 > k2) - (k1 < k2)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, deg: int) -> list[Monomial]:
    """All monomials of total degree ``deg``, in descending lex order."""
    if deg < 0:
        return []
    if nvars == 0:
        return [()] if deg == 0 else []
    if nvars == 1:
        return [(deg,)]
    out = []
    for first in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class PolyRingCtx:
    p: int
    names: tuple[str, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeField(f"characteristic {self.p} is not prime")
        if len(self.names) < 1:
            raise ValueError("need at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    @classmethod
    def standard(cls, p: int, nvars: int, prefix: str = "x") -> PolyRingCtx:
        return cls(p, tuple(f"{prefix}{i}" for i in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def n(self) -> int:
        """Projective dimension of the ambient space (nvars - 1)."""
        return len(self.names) - 1

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> Polynomial:
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def hilbert(self, deg: int) -> int:
        """dim_k R_deg."""
        if deg < 0:
            return 0
        from math import comb

        return comb(deg + self.nvars - 1, self.nvars - 1)


class Polynomial:
    """An element of F_p[x_0..x_n]; immutable, hashable."""

    __slots__ = ("ctx", "_d", "_sorted", "_hash")

    def __init__(self, ctx: PolyRingCtx, terms: Mapping[Monomial, int] | Iterable = ()):
        p = ctx.p
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Monomial, int] = {}
        for m, c in items:
            c %= p
            if c:
                m = tuple(m)
                if len(m) != ctx.nvars:
                    raise ContextMismatch("monomial length does not match ring")
                c = (d.get(m, 0) + c) % p
                if c:
                    d[m] = c
                else:
                    d.pop(m, None)
        self.ctx = ctx
        self._d = d
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ctx: PolyRingCtx, d: dict[Monomial, int]) -> Polynomial:
        # trusted constructor: d already reduced mod p, no zero coefficients
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._d = d
        obj._sorted = None
        obj._hash = None
        return obj

    @property
    def terms(self) -> tuple[tuple[Monomial, int], ...]:
        """(monomial, coefficient) pairs, descending in grevlex."""
        if self._sorted is None:
            self._sorted = tuple(
                sorted(self._d.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)
            )
        return self._sorted

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self._d)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def coeff(self, m: Monomial) -> int:
        return self._d.get(tuple(m), 0)

    def lead(self) -> tuple[Monomial, int]:
        if not self._d:
            raise ValueError("zero polynomial has no lead term")
        return self.terms[0]

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        if not self._d:
            return -1
        return max(sum(m) for m in self._d)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._d)

    def _check(self, other: Polynomial) -> None:
        if other.ctx != self.ctx:
            raise ContextMismatch("polynomials live in different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        d = dict(self._d)
        for m, c in other._d.items():
            s = (d.get(m, 0) + c) % p
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ctx, d)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        p = self.ctx.p
        return Polynomial._raw(self.ctx, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c: int) -> Polynomial:
        p = self.ctx.p
        c %= p
        if not c:
            return self.ctx.zero()
        return Polynomial._raw(self.ctx, {m: v * c % p for m, v in self._d.items()})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> Polynomial:
        p = self.ctx.p
        c %= p
        if not c:
            return self.ctx.zero()
        return Polynomial._raw(
            self.ctx, {mono_mul(m, mono): v * c % p for m, v in self._d.items()}
        )

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.ctx.p
        d: dict[Monomial, int] = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                d[m] = (d.get(m, 0) + c1 * c2) % p
        return Polynomial._raw(self.ctx, {m: c for m, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self, e: int = 1) -> Polynomial:
        """self ** (p ** e) via exponent scaling; coefficients are Frobenius-fixed."""
        if e < 0:
            raise ValueError("negative Frobenius exponent")
        q = self.ctx.p**e
        p = self.ctx.p
        return Polynomial._raw(
            self.ctx, {tuple(q * x for x in m): pow(c, q, p) for m, c in self._d.items()}
        )

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Ring map x_i -> images[i]; images may live in another ring."""
        if len(images) != self.ctx.nvars:
            raise ContextMismatch("need one image per variable")
        target = images[0].ctx
        out = target.zero()
        for m, c in self._d.items():
            t = target.constant(c)
            for img, e in zip(images, m):
                if e:
                    t = t * img**e
            out = out + t
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._d.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = []
            for name, e in zip(self.ctx.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_pow_p(a: Polynomial, e: int) -> Polynomial:
    return a.frobenius(e)


@dataclass(frozen=True)
class Ideal:
    """Homogeneous ideal given by (not necessarily minimal) generators."""

    ctx: PolyRingCtx
    generators: tuple[Polynomial, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for k, g in enumerate(gens):
            if g.ctx != self.ctx:
                raise ContextMismatch(f"generator {k} lives in another ring")
            if not g.is_homogeneous():
                raise NonHomogeneous(k, f"generator {k} is not homogeneous: {g}")
        object.__setattr__(self, "generators", gens)

    def is_zero(self) -> bool:
        return not self.generators

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def frobenius(self, e: int = 1) -> Ideal:
        return Ideal(self.ctx, tuple(g.frobenius(e) for g in self.generators))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"
