"""Cartan calculus for (vector-valued) pseudoforms on a single superchart.

Forms are functions of the base coordinates ``x^A`` and their fiber
coordinates ``dx^A`` (parity flipped).  With ``d_B`` the left derivative in
``x^B`` and ``d/d(dx^B)`` the left derivative in the fiber coordinate:

    d Omega^A          = dx^B d_B Omega^A
    i_X Omega^A        = (-1)^|X| X^B d Omega^A / d(dx^B)
    L_X Omega^A        = (-1)^|X| dx^B (d_B X^C) d Omega^A / d(dx^C)
                         + X^B d_B Omega^A - (-1)^(|X||Omega|) Omega^B d_B X^A

``lie_derivative_cartan`` evaluates the same operator through
``d i_X - (-1)^(|X|+1) i_X d`` plus the leg correction, and the two are
checked against each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from .algebra import (
    EVEN,
    ODD,
    ContextMismatchError,
    Generator,
    GeneratorContext,
    Kind,
    Parity,
    ParityError,
    SuperPoly,
    monomial_sort_key,
    sign_of,
)
from .linalg import function_field_rank, left_kernel


class ChartMismatchError(ContextMismatchError):
    pass


@dataclass(frozen=True, eq=False)
class Chart:
    ctx: GeneratorContext
    name: str
    bases: tuple[Generator, ...]
    fibers: tuple[Generator, ...]
    parameters: tuple[Generator, ...] = ()

    @classmethod
    def build(cls, ctx: GeneratorContext, base_names: Iterable[str], parameters: Iterable[str] = (), name: str = "chart"):
        bases = tuple(ctx[n] for n in base_names)
        for g in bases:
            if g.kind not in (Kind.BASE_EVEN, Kind.BASE_ODD):
                raise ValueError(f"{g.name} is not a base coordinate")
        fibers = tuple(ctx.fiber_of(g) for g in bases)
        return cls(ctx, name, bases, fibers, tuple(ctx[n] for n in parameters))

    def __eq__(self, other):
        return (
            isinstance(other, Chart)
            and self.ctx is other.ctx
            and self.bases == other.bases
        )

    def __hash__(self):
        return hash((id(self.ctx), self.bases))

    def __repr__(self):
        return f"Chart({self.name}: {', '.join(g.name for g in self.bases)})"

    @property
    def base_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.bases)

    @property
    def dimension(self) -> tuple[int, int]:
        even = sum(1 for g in self.bases if g.parity is EVEN)
        return even, len(self.bases) - even

    def has_base(self, name: str) -> bool:
        return name in self.base_names

    def fiber(self, base: str) -> Generator:
        return self.fibers[self.base_names.index(base)]

    def coord(self, name: str) -> SuperPoly:
        return self.ctx.gen(name)

    def d(self, name: str) -> SuperPoly:
        return self.ctx.gen(self.fiber(name))

    def partial(self, name: str) -> "VectorField":
        """The coordinate frame field d/dx^name."""
        return VectorField(self, {name: self.ctx.one})

    def frame(self) -> list["VectorField"]:
        return [self.partial(n) for n in self.base_names]

    def parity_of_base(self, name: str) -> Parity:
        return self.ctx[name].parity


# -- tangent-valued objects ----------------------------------------------------


class _FrameValued:
    """Common core of vector fields and vector-valued forms: one component per base direction."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Mapping[str, SuperPoly], parity: Optional[Parity] = None):
        self.chart = chart
        comps = {}
        for name, value in components.items():
            if not chart.has_base(name):
                raise ChartMismatchError(f"{name} is not a coordinate of {chart.name}")
            if not isinstance(value, SuperPoly):
                value = chart.ctx.scalar(value)
            elif value.ctx is not chart.ctx:
                raise ContextMismatchError("component from a different generator context")
            if value:
                comps[name] = value
        self.components = {n: comps[n] for n in chart.base_names if n in comps}
        if parity is not None:
            inferred = self.parity
            if self.components and inferred is not Parity(parity):
                raise ParityError(f"components do not have declared total parity {Parity(parity)}")

    def _new(self, components):
        return type(self)(self.chart, components)

    def component(self, name: str) -> SuperPoly:
        if not self.chart.has_base(name):
            raise ChartMismatchError(f"{name} is not a coordinate of {self.chart.name}")
        return self.components.get(name, self.chart.ctx.zero)

    @property
    def parity(self) -> Optional[Parity]:
        """Total parity, ``None`` if inhomogeneous; the zero object counts as even."""
        found = set()
        for name, value in self.components.items():
            p = value.parity()
            if p is None:
                return None
            found.add(p + self.chart.parity_of_base(name))
        if not found:
            return EVEN
        if len(found) > 1:
            return None
        return found.pop()

    def require_parity(self) -> Parity:
        p = self.parity
        if p is None:
            raise ParityError(f"{type(self).__name__} is not homogeneous")
        return p

    def parity_parts(self):
        parts = {EVEN: {}, ODD: {}}
        for name, value in self.components.items():
            leg = self.chart.parity_of_base(name)
            for p, piece in value.parity_parts().items():
                if piece:
                    parts[p + leg][name] = piece
        return {p: self._new(c) for p, c in parts.items()}

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatchError(f"{self.chart.name} vs {other.chart.name}")

    def __add__(self, other):
        self._check(other)
        names = set(self.components) | set(other.components)
        return self._new({n: self.component(n) + other.component(n) for n in names})

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({n: -v for n, v in self.components.items()})

    def __rmul__(self, coeff):
        """Left multiplication by a function or scalar: ``f * X``."""
        return self._new({n: coeff * v for n, v in self.components.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, SuperPoly):
            raise TypeError("multiply by functions from the left: f * X")
        return self._new({n: v * scalar for n, v in self.components.items()})

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self):
        return hash((type(self).__name__, self.chart, frozenset(self.components.items())))

    def __bool__(self):
        return bool(self.components)

    def map(self, fn) -> "_FrameValued":
        return self._new({n: fn(v) for n, v in self.components.items()})

    def substitute(self, assignment):
        return self.map(lambda v: v.substitute(assignment))

    def with_chart(self, chart: Chart):
        """Re-home onto a chart whose bases contain every leg (projection pullback)."""
        if chart.ctx is not self.chart.ctx:
            raise ContextMismatchError("charts over different contexts")
        return type(self)(chart, self.components)

    def to_plain(self) -> str:
        pieces = []
        for name, value in self.components.items():
            for m, c in value.sorted_terms():
                pieces.append(_leg_term(value.ctx, m, c, name))
        if not pieces:
            return "0"
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __str__(self):
        return self.to_plain()

    def __repr__(self):
        return f"{type(self).__name__}({self.to_plain()})"


def _leg_term(ctx, m, c, leg: str) -> str:
    from .algebra import _term_plain
    from .scalars import ONE

    if m.is_unit():
        if c == ONE:
            return f"@{leg}"
        if c == -ONE:
            return f"-@{leg}"
    return f"{_term_plain(ctx, m, c)}*@{leg}"


class VectorField(_FrameValued):
    """Derivation ``X = X^A d/dx^A``; components may depend on fiber coordinates."""

    __slots__ = ()

    def __call__(self, f: SuperPoly) -> SuperPoly:
        return apply_field(self, f)

    def bracket(self, other: "VectorField") -> "VectorField":
        return graded_commutator(self, other)


class VectorValuedForm(_FrameValued):
    """Tangent-valued pseudoform ``Omega = Omega^A(x, dx) d/dx^A``."""

    __slots__ = ()


Form = Union[SuperPoly, VectorValuedForm]


# -- operations ---------------------------------------------------------------


def apply_field(X: VectorField, f: SuperPoly) -> SuperPoly:
    """``X(f) = X^B d_B f`` (base derivatives only)."""
    out = X.chart.ctx.zero
    for name, comp in X.components.items():
        df = f.derivative(name)
        if df:
            out = out + comp * df
    return out


def _d_scalar(chart: Chart, f: SuperPoly) -> SuperPoly:
    out = chart.ctx.zero
    for g, dg in zip(chart.bases, chart.fibers):
        df = f.derivative(g.name)
        if df:
            out = out + chart.ctx.gen(dg) * df
    return out


def exterior_derivative(omega: Form, chart: Optional[Chart] = None) -> Form:
    if isinstance(omega, VectorValuedForm):
        return omega.map(lambda v: _d_scalar(omega.chart, v))
    if chart is None:
        raise ValueError("a chart is required to differentiate a scalar form")
    return _d_scalar(chart, omega)


def _contract(X: VectorField, f: SuperPoly) -> SuperPoly:
    out = X.chart.ctx.zero
    for p, part in X.parity_parts().items():
        acc = X.chart.ctx.zero
        for name, comp in part.components.items():
            df = f.derivative(X.chart.fiber(name).name)
            if df:
                acc = acc + comp * df
        out = out + (acc if p is EVEN else -acc)
    return out


def interior_product(X: VectorField, omega: Form) -> Form:
    if isinstance(omega, VectorValuedForm):
        if omega.chart != X.chart:
            raise ChartMismatchError(f"{X.chart.name} vs {omega.chart.name}")
        return omega.map(lambda v: _contract(X, v))
    if omega.ctx is not X.chart.ctx:
        raise ChartMismatchError("form from a different generator context")
    return _contract(X, omega)


def _form_parity(omega: Form) -> Parity:
    p = omega.parity if isinstance(omega, VectorValuedForm) else omega.parity()
    if p is None:
        raise ParityError("form is not homogeneous")
    return p


def lie_derivative(X: VectorField, omega: Form) -> Form:
    chart = X.chart
    x_par = X.require_parity()
    if isinstance(omega, VectorValuedForm) and omega.chart != chart:
        raise ChartMismatchError(f"{chart.name} vs {omega.chart.name}")
    ctx = chart.ctx
    # dx^B d_B X^C, the fiber-linear part of the first term
    dX = {c_name: _d_scalar(chart, comp) for c_name, comp in X.components.items()}

    def scalar_part(f: SuperPoly) -> SuperPoly:
        first = ctx.zero
        for c_name, dxc in dX.items():
            df = f.derivative(chart.fiber(c_name).name)
            if df:
                first = first + dxc * df
        if x_par is ODD:
            first = -first
        return first + apply_field(X, f)

    if not isinstance(omega, VectorValuedForm):
        return scalar_part(omega)
    o_par = _form_parity(omega)
    s = sign_of(int(x_par) * int(o_par))
    out = {}
    for a in chart.base_names:
        value = scalar_part(omega.component(a))
        correction = ctx.zero
        xa = X.component(a)
        if xa:
            for b_name, ob in omega.components.items():
                dxa = xa.derivative(b_name)
                if dxa:
                    correction = correction + ob * dxa
        out[a] = value - correction * s
    return VectorValuedForm(chart, out)


def lie_derivative_cartan(X: VectorField, omega: Form) -> Form:
    """Same operator via ``d(i_X .) - (-1)^(|X|+1) i_X(d .)`` plus the leg correction."""
    chart = X.chart
    x_par = X.require_parity()
    sign = sign_of(int(x_par) + 1)

    def scalar_part(f: SuperPoly) -> SuperPoly:
        return _d_scalar(chart, _contract(X, f)) - _contract(X, _d_scalar(chart, f)) * sign

    if not isinstance(omega, VectorValuedForm):
        return scalar_part(omega)
    s = sign_of(int(x_par) * int(_form_parity(omega)))
    out = {}
    for a in chart.base_names:
        correction = chart.ctx.zero
        for b_name, ob in omega.components.items():
            correction = correction + ob * X.component(a).derivative(b_name)
        out[a] = scalar_part(omega.component(a)) - correction * s
    return VectorValuedForm(chart, out)


def graded_commutator(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y] = X o Y - (-1)^(|X||Y|) Y o X``."""
    if X.chart != Y.chart:
        raise ChartMismatchError(f"{X.chart.name} vs {Y.chart.name}")
    px, py = X.require_parity(), Y.require_parity()
    s = sign_of(int(px) * int(py))
    out = {}
    for a in X.chart.base_names:
        out[a] = apply_field(X, Y.component(a)) - apply_field(Y, X.component(a)) * s
    return VectorField(X.chart, out)


# -- coordinate changes ----------------------------------------------------------


@dataclass(eq=False)
class SuperMap:
    """Coordinate change ``x'^A = forward[A](x)`` with explicit inverse ``x^B = inverse[B](x')``.

    Missing entries default to the identity.  Source and target usually share
    the generator symbols; the map is then a substitution homomorphism.
    """

    source: Chart
    target: Chart
    forward: dict = field(default_factory=dict)
    inverse: dict = field(default_factory=dict)
    name: str = "map"
    check: bool = True

    def __post_init__(self):
        if self.source.ctx is not self.target.ctx:
            raise ContextMismatchError("source and target must share a generator context")
        ctx = self.source.ctx
        self.forward = self._complete(self.forward, self.target)
        self.inverse = self._complete(self.inverse, self.source)
        for table, chart in ((self.forward, self.target), (self.inverse, self.source)):
            for name, image in table.items():
                p = image.parity()
                if p is None or (image and p is not chart.parity_of_base(name)):
                    raise ParityError(f"image of {name} has parity {p}, expected {chart.parity_of_base(name)}")
        if self.check:
            residual = self.round_trip_residual()
            if residual:
                raise ValueError(f"{self.name}: inverse does not invert forward, residual {residual}")
        self._ctx = ctx

    @staticmethod
    def _complete(table, chart):
        ctx = chart.ctx
        out = {}
        for name in chart.base_names:
            value = table.get(name, ctx.gen(name))
            out[name] = value if isinstance(value, SuperPoly) else ctx.scalar(value)
        extra = set(table) - set(chart.base_names)
        if extra:
            raise ChartMismatchError(f"{sorted(extra)} are not coordinates of {chart.name}")
        return out

    def round_trip_residual(self) -> dict:
        bad = {}
        for name, value in self.inverse.items():
            back = value.substitute(self.forward)
            if back != self.source.ctx.gen(name):
                bad[name] = back
        for name, value in self.forward.items():
            back = value.substitute(self.inverse)
            if back != self.target.ctx.gen(name):
                bad[name + "'"] = back
        return bad

    def substitution(self) -> dict:
        """Pullback as a substitution: base -> forward image, fiber -> its differential."""
        sub = {}
        for g, dg in zip(self.target.bases, self.target.fibers):
            image = self.forward[g.name]
            sub[g.name] = image
            sub[dg.name] = _d_scalar(self.source, image)
        return sub

    def inverse_map(self) -> "SuperMap":
        return SuperMap(self.target, self.source, self.inverse, self.forward, name=self.name + "^-1", check=False)

    def compose(self, other: "SuperMap") -> "SuperMap":
        """``self o other``: first ``other`` (R -> S), then ``self`` (S -> T)."""
        if other.target != self.source:
            raise ChartMismatchError("maps are not composable")
        fwd = {n: v.substitute(other.forward) for n, v in self.forward.items()}
        inv = {n: v.substitute(self.inverse) for n, v in other.inverse.items()}
        return SuperMap(other.source, self.target, fwd, inv, name=f"{self.name}*{other.name}")


def pullback(phi: SuperMap, omega: Form) -> Form:
    sub = phi.substitution()
    if isinstance(omega, VectorValuedForm):
        if omega.chart != phi.target:
            raise ChartMismatchError(f"form lives on {omega.chart.name}, map targets {phi.target.name}")
        return VectorValuedForm(phi.source, {n: v.substitute(sub) for n, v in omega.components.items()})
    if omega.ctx is not phi.target.ctx:
        raise ChartMismatchError("form from a different generator context")
    return omega.substitute(sub)


def transform_vector_valued(phi: SuperMap, omega: VectorValuedForm) -> VectorValuedForm:
    """Express a target-chart vector-valued form in source coordinates.

    Scalar parts are pulled back; legs use ``d/dx'^A = (dx^B/dx'^A) d/dx^B``
    with the Jacobian of ``phi.inverse``.
    """
    if omega.chart != phi.target:
        raise ChartMismatchError(f"form lives on {omega.chart.name}, map targets {phi.target.name}")
    sub = phi.substitution()
    ctx = phi.source.ctx
    out = {b: ctx.zero for b in phi.source.base_names}
    for a, comp in omega.components.items():
        pulled = comp.substitute(sub)
        for b, x_b in phi.inverse.items():
            jac = x_b.derivative(a)
            if jac:
                out[b] = out[b] + pulled * jac.substitute(phi.forward)
    return VectorValuedForm(phi.source, out)


def transform_vector_field(phi: SuperMap, X: VectorField) -> VectorField:
    """Push a target-chart field to source coordinates (same leg law as forms)."""
    form = VectorValuedForm(X.chart, X.components)
    moved = transform_vector_valued(phi, form)
    return VectorField(phi.source, moved.components)


# -- non-degeneracy ---------------------------------------------------------------


@dataclass
class RankCheck:
    full: bool
    rank: int
    rows: int
    columns: list
    witness: Optional[list] = None  # coefficients of a basis combination in the kernel

    def __bool__(self):
        return self.full


def contraction_matrix(omega: Form, basis: Sequence[VectorField]):
    """Rows: basis fields; columns: (leg, fiber monomial); entries: bodies of the coefficients."""
    if not basis:
        return [], []
    chart = basis[0].chart
    fiber_names = [g.name for g in chart.fibers]
    legs = list(chart.base_names)
    row_maps = []
    keys = set()
    for b in basis:
        if b.chart != chart:
            raise ChartMismatchError("basis fields live on different charts")
        contracted = interior_product(b, omega)
        comps = contracted.components if isinstance(contracted, VectorValuedForm) else {None: contracted}
        entries = {}
        for leg, poly in comps.items():
            for fiber_mono, rest in poly.split(fiber_names).items():
                body = rest.body()
                if body:
                    entries[(leg, fiber_mono)] = body
        keys.update(entries)
        row_maps.append(entries)

    def key_order(k):
        leg, mono = k
        return (-1 if leg is None else legs.index(leg), monomial_sort_key(mono))

    columns = sorted(keys, key=key_order)
    zero = chart.ctx.zero
    matrix = [[row.get(k, zero) for k in columns] for row in row_maps]
    return matrix, columns


def nondegeneracy_check(omega: Form, basis: Sequence[VectorField]) -> RankCheck:
    """Full row rank of the body of the contraction matrix over the function field.

    A square Grassmann matrix is invertible iff its body is; non-vanishing
    even units (exponentials, invertible generators) are sampled at nonzero
    points.
    """
    matrix, columns = contraction_matrix(omega, basis)
    n = len(basis)
    if not columns:
        witness = [1 if i == 0 else 0 for i in range(n)] if n else None
        return RankCheck(False, 0, n, columns, witness)
    r, numeric = function_field_rank(matrix)
    if r == n:
        return RankCheck(True, r, n, columns)
    kernel = left_kernel(numeric, len(columns))
    return RankCheck(False, r, n, columns, kernel[0] if kernel else None)
