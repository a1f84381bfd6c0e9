"""Supercommutative polynomial algebra over Q(i).

A :class:`GeneratorContext` fixes an ordered set of even and odd
generators.  :class:`SuperPoly` is an element of the free graded-commutative
algebra on that set, extended by formal exponential atoms ``e^{c*g}`` on
generators flagged ``exponential`` and by negative powers of generators
flagged ``invertible``.

Monomials are stored canonically: even part as sorted ``(index, exponent)``
pairs, exponential part as sorted ``(index, multiplier)`` pairs, odd part as a
strictly increasing tuple of generator indices.  Reordering odd factors into
canonical order produces the Koszul sign.  Derivatives are *left*
derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from .scalars import ONE, ZERO, Scalar, format_scalar, qi


class AlgebraError(Exception):
    pass


class ContextMismatchError(AlgebraError):
    pass


class UnknownGeneratorError(AlgebraError, LookupError):
    pass


class ParityError(AlgebraError, ValueError):
    pass


class SubstitutionError(AlgebraError, ValueError):
    pass


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def flip(self) -> "Parity":
        return Parity(1 - int(self))

    def __str__(self):
        return self.name.lower()


EVEN, ODD = Parity.EVEN, Parity.ODD


def sign_of(exponent: int) -> int:
    """(-1)**exponent for integer-valued parities."""
    return -1 if exponent % 2 else 1


class Kind(str, Enum):
    BASE_EVEN = "base-even"
    BASE_ODD = "base-odd"
    FIBER = "fiber"
    PARAMETER = "parameter"


@dataclass(frozen=True)
class Generator:
    name: str
    parity: Parity
    kind: Kind
    invertible: bool = False
    exponential: bool = False
    # fiber generators record the coordinate they are the differential of
    base: Optional[str] = None

    def __post_init__(self):
        if self.invertible and self.parity is ODD:
            raise ParityError(f"odd generator {self.name} cannot be invertible")
        if self.exponential and self.parity is ODD:
            raise ParityError(f"odd generator {self.name} cannot carry exponentials")
        if self.kind is Kind.FIBER and self.base is None:
            raise ValueError(f"fiber generator {self.name} needs a base coordinate")


GeneratorLike = Union[str, Generator]


class GeneratorContext:
    """Ordered, immutable set of generators; declaration order is the canonical order."""

    def __init__(self, generators: Iterable[Generator], name: str = "ctx"):
        self.name = name
        self.generators: tuple[Generator, ...] = tuple(generators)
        self._index: dict[str, int] = {}
        for i, g in enumerate(self.generators):
            if g.name in self._index:
                raise ValueError(f"duplicate generator name {g.name!r}")
            self._index[g.name] = i
        self._fiber: dict[str, str] = {}
        for g in self.generators:
            if g.kind is Kind.FIBER:
                base = self[g.base]
                if g.parity != base.parity.flip():
                    raise ParityError(f"fiber {g.name} must have parity opposite to {base.name}")
                self._fiber[base.name] = g.name

    def __repr__(self):
        return f"GeneratorContext({self.name!r}, {len(self.generators)} generators)"

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __contains__(self, name) -> bool:
        if isinstance(name, Generator):
            name = name.name
        return name in self._index

    def __getitem__(self, name: GeneratorLike) -> Generator:
        return self.generators[self.index(name)]

    def index(self, g: GeneratorLike) -> int:
        if isinstance(g, int):
            if not 0 <= g < len(self.generators):
                raise UnknownGeneratorError(f"generator index {g} out of range in {self.name}")
            return g
        name = g.name if isinstance(g, Generator) else g
        try:
            i = self._index[name]
        except KeyError:
            raise UnknownGeneratorError(f"unknown generator {name!r} in {self.name}") from None
        if isinstance(g, Generator) and self.generators[i] != g:
            raise ContextMismatchError(f"generator {name!r} belongs to another context")
        return i

    def fiber_of(self, g: GeneratorLike) -> Generator:
        name = g.name if isinstance(g, Generator) else g
        try:
            return self[self._fiber[name]]
        except KeyError:
            raise UnknownGeneratorError(f"{name!r} has no fiber generator") from None

    # -- element constructors -------------------------------------------------

    @property
    def zero(self) -> "SuperPoly":
        return SuperPoly(self, {})

    @property
    def one(self) -> "SuperPoly":
        return SuperPoly(self, {UNIT: ONE})

    def scalar(self, c) -> "SuperPoly":
        c = qi(c)
        return SuperPoly(self, {UNIT: c} if c else {})

    def gen(self, g: GeneratorLike) -> "SuperPoly":
        i = self.index(g)
        if self.generators[i].parity is ODD:
            m = Monomial((), (), (i,))
        else:
            m = Monomial(((i, 1),), (), ())
        return SuperPoly(self, {m: ONE})

    def gens(self, *names: str) -> tuple["SuperPoly", ...]:
        return tuple(self.gen(n) for n in names)

    def exp(self, g: GeneratorLike, multiplier=1) -> "SuperPoly":
        """The formal exponential ``e^{multiplier * g}``."""
        i = self.index(g)
        if not self.generators[i].exponential:
            raise AlgebraError(f"{self.generators[i].name} does not admit exponentials")
        c = qi(multiplier)
        if not c:
            return self.one
        return SuperPoly(self, {Monomial((), ((i, c),), ()): ONE})


def make_context(bases, parameters=(), name: str = "ctx", fiber_prefix: str = "d") -> GeneratorContext:
    """Declare base coordinates, then one fiber generator per base, then parameters.

    ``bases`` and ``parameters`` are sequences of ``(name, parity)`` or
    ``(name, parity, options)`` where ``options`` may set ``invertible`` /
    ``exponential``.
    """
    gens = []
    base_names = []
    for spec in bases:
        nm, par, opts = _unpack(spec)
        kind = Kind.BASE_EVEN if par is EVEN else Kind.BASE_ODD
        gens.append(Generator(nm, par, kind, **opts))
        base_names.append((nm, par))
    for nm, par in base_names:
        gens.append(Generator(fiber_prefix + nm, par.flip(), Kind.FIBER, base=nm))
    for spec in parameters:
        nm, par, opts = _unpack(spec)
        gens.append(Generator(nm, par, Kind.PARAMETER, **opts))
    return GeneratorContext(gens, name=name)


def _unpack(spec):
    if len(spec) == 2:
        return spec[0], Parity(spec[1]), {}
    return spec[0], Parity(spec[1]), dict(spec[2])


# -- monomials ----------------------------------------------------------------


class Monomial(NamedTuple):
    evens: tuple  # ((index, exponent), ...) sorted by index, exponent != 0
    exps: tuple  # ((index, multiplier), ...) sorted by index, multiplier != 0
    odds: tuple  # (index, ...) strictly increasing

    @property
    def parity(self) -> Parity:
        return Parity(len(self.odds) % 2)

    def is_unit(self) -> bool:
        return not (self.evens or self.exps or self.odds)


UNIT = Monomial((), (), ())


def _merge_counts(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for k, v in b:
        s = acc.get(k)
        if s is None:
            acc[k] = v
        else:
            s = s + v
            if s:
                acc[k] = s
            else:
                del acc[k]
    return tuple(sorted(acc.items()))


def merge_odds(a: tuple, b: tuple):
    """Concatenate two canonical odd words; return ``(sign, word)`` or ``(0, None)``."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    out = []
    sign = 1
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif x > y:
            out.append(y)
            j += 1
            if (na - i) % 2:
                sign = -sign
        else:
            return 0, None
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


@lru_cache(maxsize=1 << 17)
def monomial_product(m1: Monomial, m2: Monomial):
    sign, odds = merge_odds(m1.odds, m2.odds)
    if not sign:
        return 0, None
    return sign, Monomial(_merge_counts(m1.evens, m2.evens), _merge_counts(m1.exps, m2.exps), odds)


def monomial_sort_key(m: Monomial):
    factors = sorted([(i, e) for i, e in m.evens] + [(i, 1) for i in m.odds])
    degree = sum(abs(e) for _, e in m.evens) + len(m.odds) + len(m.exps)
    return (degree, tuple(factors), tuple((i, str(c)) for i, c in m.exps))


# -- the algebra element ------------------------------------------------------


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Scalar)) and not isinstance(x, bool)


class SuperPoly:
    """Immutable element of the graded-commutative algebra of a context."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: GeneratorContext, terms: Mapping[Monomial, Scalar]):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._hash = None
        return obj

    # -- coercion / comparison ---------------------------------------------------

    def _coerce(self, other) -> "SuperPoly":
        if isinstance(other, SuperPoly):
            if other.ctx is not self.ctx:
                raise ContextMismatchError(f"cannot combine elements of {self.ctx.name} and {other.ctx.name}")
            return other
        if _is_scalar(other):
            return self.ctx.scalar(other)
        raise TypeError(f"cannot combine SuperPoly with {type(other).__name__}")

    def __eq__(self, other):
        if _is_scalar(other):
            other = self.ctx.scalar(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SuperPoly({self.to_plain()})"

    def __str__(self):
        return self.to_plain()

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return SuperPoly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._raw(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if _is_scalar(other):
            c = qi(other)
            if not c:
                return self.ctx.zero
            return SuperPoly._raw(self.ctx, {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, SuperPoly):
            return NotImplemented
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = monomial_product(m1, m2)
                if not sign:
                    continue
                c = c1 * c2 if sign > 0 else -(c1 * c2)
                s = out.get(m)
                out[m] = c if s is None else s + c
        return SuperPoly._raw(self.ctx, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        if _is_scalar(other):
            return self * other
        return self._coerce(other) * self

    def __truediv__(self, other):
        if _is_scalar(other):
            c = qi(other)
            if not c:
                raise ZeroDivisionError("division by zero scalar")
            return self * (ONE / c)
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- grading -------------------------------------------------------------

    def parity(self) -> Optional[Parity]:
        """Common parity of all terms, ``None`` if inhomogeneous; zero counts as even."""
        parities = {len(m.odds) % 2 for m in self.terms}
        if not parities:
            return EVEN
        if len(parities) > 1:
            return None
        return Parity(parities.pop())

    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    def parity_parts(self) -> dict[Parity, "SuperPoly"]:
        parts: dict[Parity, dict] = {EVEN: {}, ODD: {}}
        for m, c in self.terms.items():
            parts[m.parity][m] = c
        return {p: SuperPoly._raw(self.ctx, t) for p, t in parts.items()}

    # -- structure queries ----------------------------------------------------

    def is_scalar(self) -> bool:
        return all(m.is_unit() for m in self.terms)

    def scalar_value(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.terms.get(UNIT, ZERO)

    def body(self) -> "SuperPoly":
        """Drop every term containing an odd generator."""
        return SuperPoly._raw(self.ctx, {m: c for m, c in self.terms.items() if not m.odds})

    def is_nilpotent(self) -> bool:
        return all(m.odds for m in self.terms)

    def support(self) -> set[int]:
        """Indices of generators occurring anywhere in the element."""
        out: set[int] = set()
        for m in self.terms:
            out.update(i for i, _ in m.evens)
            out.update(i for i, _ in m.exps)
            out.update(m.odds)
        return out

    def depends_on(self, g: GeneratorLike) -> bool:
        return self.ctx.index(g) in self.support()

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda mc: monomial_sort_key(mc[0]))

    def split(self, names: Iterable[GeneratorLike]) -> dict[Monomial, "SuperPoly"]:
        """Write the element as ``sum_F F * rest_F`` with ``F`` a monomial in ``names``.

        The Koszul sign from moving the ``F`` factors to the front is absorbed
        into ``rest_F``.
        """
        chosen = {self.ctx.index(n) for n in names}
        out: dict[Monomial, dict] = {}
        for m, c in self.terms.items():
            f_odds, r_odds = [], []
            sign = 1
            for i in m.odds:
                if i in chosen:
                    f_odds.append(i)
                    if len(r_odds) % 2:
                        sign = -sign
                else:
                    r_odds.append(i)
            f = Monomial(
                tuple(p for p in m.evens if p[0] in chosen),
                tuple(p for p in m.exps if p[0] in chosen),
                tuple(f_odds),
            )
            rest = Monomial(
                tuple(p for p in m.evens if p[0] not in chosen),
                tuple(p for p in m.exps if p[0] not in chosen),
                tuple(r_odds),
            )
            bucket = out.setdefault(f, {})
            bucket[rest] = bucket.get(rest, ZERO) + (c if sign > 0 else -c)
        return {f: SuperPoly(self.ctx, t) for f, t in out.items()}

    # -- calculus ------------------------------------------------------------

    def derivative(self, g: GeneratorLike) -> "SuperPoly":
        """Left derivative with respect to the generator ``g``."""
        idx = self.ctx.index(g)
        gen = self.ctx.generators[idx]
        out: dict = {}

        def put(m, c):
            s = out.get(m)
            out[m] = c if s is None else s + c

        if gen.parity is EVEN:
            for m, c in self.terms.items():
                for k, e in m.evens:
                    if k == idx:
                        evens = tuple((j, f if j != idx else f - 1) for j, f in m.evens if j != idx or f != 1)
                        put(Monomial(evens, m.exps, m.odds), c * e)
                        break
                for k, mult in m.exps:
                    if k == idx:
                        put(m, c * mult)
                        break
        else:
            for m, c in self.terms.items():
                if idx in m.odds:
                    pos = m.odds.index(idx)
                    odds = m.odds[:pos] + m.odds[pos + 1:]
                    put(Monomial(m.evens, m.exps, odds), -c if pos % 2 else c)
        return SuperPoly._raw(self.ctx, {m: c for m, c in out.items() if c})

    def inverse(self) -> "SuperPoly":
        """Inverse of a unit: one invertible monomial plus a nilpotent remainder."""
        lead = {m: c for m, c in self.terms.items() if not m.odds}
        if len(lead) != 1:
            raise ArithmeticError(f"{self} is not a unit")
        (m, c), = lead.items()
        for i, e in m.evens:
            if not self.ctx.generators[i].invertible:
                raise ArithmeticError(f"{self} is not a unit: {self.ctx.generators[i].name} is not invertible")
        inv_lead = SuperPoly._raw(
            self.ctx,
            {Monomial(tuple((i, -e) for i, e in m.evens), tuple((i, -v) for i, v in m.exps), ()): ONE / c},
        )
        nil = self - SuperPoly._raw(self.ctx, {m: c})
        step = -(nil * inv_lead)
        total = self.ctx.one
        power = self.ctx.one
        while True:
            power = power * step
            if not power:
                break
            total = total + power
        return inv_lead * total

    def exp_nilpotent(self) -> "SuperPoly":
        """``e^self`` for an even nilpotent element (the series terminates)."""
        if not self.is_nilpotent() or self.parity() is not EVEN:
            raise SubstitutionError("exponential series only for even nilpotent elements")
        total = self.ctx.one
        power = self.ctx.one
        k = 0
        while True:
            k += 1
            power = power * self
            if not power:
                return total
            total = total + power * Fraction(1, factorial(k))

    def substitute(self, assignment: Mapping[GeneratorLike, object]) -> "SuperPoly":
        """Simultaneous substitution of generators; a graded ring homomorphism."""
        ctx = self.ctx
        images: dict[int, SuperPoly] = {}
        for g, v in assignment.items():
            idx = ctx.index(g)
            gen = ctx.generators[idx]
            v = self._coerce(v)
            p = v.parity()
            if p is None or (v and p is not gen.parity):
                raise ParityError(f"cannot substitute {v} (parity {p}) for {gen.name} ({gen.parity})")
            if v == ctx.gen(idx):
                continue
            images[idx] = v
        if not images:
            return self
        powers: dict[tuple[int, int], SuperPoly] = {}
        exp_images: dict[tuple[int, Scalar], SuperPoly] = {}

        def even_power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        def exp_image(i, mult):
            key = (i, mult)
            if key not in exp_images:
                exp_images[key] = self._exp_substitute(i, mult, images[i])
            return exp_images[key]

        out = ctx.zero
        kept: dict = {}
        for m, c in self.terms.items():
            touched = (
                any(i in images for i, _ in m.evens)
                or any(i in images for i, _ in m.exps)
                or any(i in images for i in m.odds)
            )
            if not touched:
                kept[m] = c
                continue
            rest = Monomial(
                tuple(p for p in m.evens if p[0] not in images),
                tuple(p for p in m.exps if p[0] not in images),
                (),
            )
            acc = SuperPoly._raw(ctx, {rest: c})
            for i, e in m.evens:
                if i in images:
                    acc = acc * even_power(i, e)
            for i, mult in m.exps:
                if i in images:
                    acc = acc * exp_image(i, mult)
            for i in m.odds:
                acc = acc * (images[i] if i in images else ctx.gen(i))
            out = out + acc
        return out + SuperPoly._raw(ctx, kept)

    def _exp_substitute(self, idx: int, mult: Scalar, value: "SuperPoly") -> "SuperPoly":
        # e^{mult*g} with g -> s*g + N, N even nilpotent
        ctx = self.ctx
        g_mono = Monomial(((idx, 1),), (), ())
        s = value.terms.get(g_mono, ZERO)
        nil = value - SuperPoly._raw(ctx, {g_mono: s}) if s else value
        if not nil.is_nilpotent():
            raise SubstitutionError(
                f"exponential of {ctx.generators[idx].name} only supports g -> c*g + nilpotent, got {value}"
            )
        head = ctx.exp(idx, mult * s) if s else ctx.one
        return head * (nil * mult).exp_nilpotent() if nil else head

    # -- printing ------------------------------------------------------------

    def to_plain(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(_term_plain(self.ctx, m, c))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text


def monomial_factors(ctx: GeneratorContext, m: Monomial) -> list[tuple[Generator, int]]:
    """Factors of a monomial in canonical generator order (exponentials excluded)."""
    factors = [(i, e) for i, e in m.evens] + [(i, 1) for i in m.odds]
    factors.sort()
    return [(ctx.generators[i], e) for i, e in factors]


def _term_plain(ctx: GeneratorContext, m: Monomial, c: Scalar) -> str:
    pieces = []
    for g, e in monomial_factors(ctx, m):
        pieces.append(g.name if e == 1 else f"{g.name}^{e}")
    for i, mult in m.exps:
        name = ctx.generators[i].name
        pieces.append(f"exp({name})" if mult == ONE else f"exp({format_scalar(mult)}*{name})")
    if not pieces:
        return format_scalar(c)
    body = "*".join(pieces)
    if c == ONE:
        return body
    if c == -ONE:
        return "-" + body
    return f"{format_scalar(c)}*{body}"


# -- module-level operation names ------------------------------------------------


def ring_product(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    return a * b


def parity_of(a: SuperPoly) -> Optional[Parity]:
    return a.parity()


def left_derivative(a: SuperPoly, g: GeneratorLike) -> SuperPoly:
    return a.derivative(g)


def substitute(a: SuperPoly, assignment: Mapping[GeneratorLike, object]) -> SuperPoly:
    return a.substitute(assignment)
