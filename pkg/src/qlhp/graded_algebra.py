"""Exact arithmetic in truncated graded polynomial rings.

A ring here is Q[g_1, ..., g_k] / (g_1^{n_1}, ..., g_k^{n_k}) with each
generator carrying a complex degree.  These rings model the rational
cohomology of the coarse moduli spaces we work with, e.g.
Q[h, psi] / (h^4, psi^2) for P^3 x M_{0,4}.

Classes are immutable and sparse: a mapping from exponent vectors to
nonzero ``Fraction`` coefficients.  Nothing is ever rounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence


class RingMismatchError(ValueError):
    pass


class Generator(NamedTuple):
    name: str
    degree: int
    order: int  # g^order == 0


@dataclass(frozen=True)
class Ring:
    """A truncated graded ring together with an integration rule.

    ``normalization`` is the integral of the unique top monomial.  For a
    mu_r-gerbe over a coarse space it is (1/r) times the coarse integral.
    """

    generators: tuple[Generator, ...]
    normalization: Fraction = Fraction(1)

    def __post_init__(self):
        gens = tuple(Generator(*g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "normalization", Fraction(self.normalization))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in gens:
            if g.degree < 1 or g.order < 1:
                raise ValueError(f"generator {g.name}: degree and order must be positive")
        if self.normalization == 0:
            raise ValueError("integration normalization must be nonzero")

    @classmethod
    def build(cls, spec: Mapping[str, tuple[int, int]] | Sequence[tuple[str, int, int]],
              normalization=1) -> "Ring":
        """``Ring.build([("h", 1, 4), ("psi", 1, 2)], normalization=Fraction(1, 2))``"""
        items = spec.items() if isinstance(spec, Mapping) else [(n, (d, o)) for n, d, o in spec]
        return cls(tuple(Generator(n, d, o) for n, (d, o) in items), Fraction(normalization))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def top_exponent(self) -> tuple[int, ...]:
        return tuple(g.order - 1 for g in self.generators)

    @property
    def top_degree(self) -> int:
        return sum(g.degree * (g.order - 1) for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}; ring has {self.names}") from None

    def monomial_degree(self, exps: Sequence[int]) -> int:
        return sum(g.degree * e for g, e in zip(self.generators, exps))

    def basis(self, degree: Optional[int] = None) -> list[tuple[int, ...]]:
        """Monomial basis, optionally restricted to one total degree."""
        ranges = [range(g.order) for g in self.generators]
        mons = [m for m in itertools.product(*ranges)
                if degree is None or self.monomial_degree(m) == degree]
        return sorted(mons, key=self._sort_key)

    def _sort_key(self, exps):
        return (self.monomial_degree(exps), tuple(-e for e in exps))

    def dimension(self) -> int:
        n = 1
        for g in self.generators:
            n *= g.order
        return n

    # constructors for classes
    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        return self.scalar(1)

    def scalar(self, c) -> "GradedClass":
        return GradedClass(self, {(0,) * self.rank: Fraction(c)})

    def gen(self, name: str) -> "GradedClass":
        exps = [0] * self.rank
        exps[self.index(name)] = 1
        return GradedClass(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple["GradedClass", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: Sequence[int], coeff=1) -> "GradedClass":
        return GradedClass(self, {tuple(exps): Fraction(coeff)})

    def to_json(self) -> dict:
        return {
            "generators": [{"name": g.name, "degree": g.degree, "order": g.order}
                           for g in self.generators],
            "normalization": _fraction_str(self.normalization),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Ring":
        gens = tuple(Generator(g["name"], int(g["degree"]), int(g["order"]))
                     for g in data["generators"])
        return cls(gens, Fraction(data["normalization"]))

    def __str__(self):
        rels = ", ".join(f"{g.name}^{g.order}" for g in self.generators)
        return f"Q[{', '.join(self.names)}]/({rels})"


class GradedClass:
    """An element of a truncated graded ring.

    Supports ``+``, ``-``, ``*`` (with classes, ints and Fractions) and
    ``**`` with nonnegative integer exponents.  Exponent vectors at or
    above a generator's order are dropped on construction.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Sequence[int], object] = ()):
        clean: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != ring.rank:
                raise ValueError(f"exponent vector {exps} has wrong length for {ring}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if any(e >= g.order for e, g in zip(exps, ring.generators)):
                continue
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.ring = ring
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.ring.rank)

    def degrees(self) -> set[int]:
        return {self.ring.monomial_degree(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Total degree of a homogeneous class; None for zero."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"class {self} is not homogeneous")
        return next(iter(degs), None)

    def degree_part(self, d: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self._terms.items()
                                       if self.ring.monomial_degree(m) == d})

    def truncate(self, max_degree: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self._terms.items()
                                       if self.ring.monomial_degree(m) <= max_degree})

    def in_ring(self, ring: Ring, rename: Optional[Mapping[str, str]] = None) -> "GradedClass":
        """Re-express in another ring by generator name.

        Generators are matched by name (after ``rename``); monomials that
        reach a nilpotency order of the new ring vanish.  Raises KeyError
        if a generator with nonzero exponent has no counterpart.
        """
        rename = rename or {}
        positions = []
        for g in self.ring.generators:
            target = rename.get(g.name, g.name)
            positions.append(ring.index(target) if target in ring.names else None)
        out = {}
        for m, c in self._terms.items():
            new = [0] * ring.rank
            for pos, e, g in zip(positions, m, self.ring.generators):
                if e == 0:
                    continue
                if pos is None:
                    raise KeyError(f"generator {g.name!r} has no image in {ring}")
                new[pos] += e
            out[tuple(new)] = out.get(tuple(new), 0) + c
        return GradedClass(ring, out)

    # arithmetic
    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GradedClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedClass(self.ring, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        orders = [g.order for g in self.ring.generators]
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if any(e >= n for e, n in zip(m, orders)):
                    continue
                out[m] = out.get(m, 0) + c1 * c2
        return GradedClass(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # serialization
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), key=lambda t: self.ring._sort_key(t[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m) if e
            )
            mag = abs(c)
            if not mono:
                body = _fraction_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fraction_str(mag)}*{mono}"
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"GradedClass({self})"

    def to_json(self) -> list[dict]:
        return [{"exponents": list(m), "num": str(c.numerator), "den": str(c.denominator)}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: Ring, data: Iterable[Mapping]) -> "GradedClass":
        return cls(ring, {tuple(t["exponents"]): Fraction(int(t["num"]), int(t["den"]))
                          for t in data})


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def add(a: GradedClass, b: GradedClass) -> GradedClass:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    return a + b


def mul(a: GradedClass, b: GradedClass) -> GradedClass:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    return a * b


def degree_part(a: GradedClass, d: int) -> GradedClass:
    return a.degree_part(d)


def truncated_inverse(a: GradedClass) -> GradedClass:
    """Inverse of a class with constant term 1, as a finite geometric series."""
    if a.constant_term() != 1:
        raise ValueError(f"constant term of {a} is {a.constant_term()}, expected 1")
    nil = a.ring.one() - a
    result, power = a.ring.one(), a.ring.one()
    while True:
        power = power * nil
        if power.is_zero():
            return result
        result = result + power


def integrate(a: GradedClass) -> Fraction:
    return a.coefficient(a.ring.top_exponent) * a.ring.normalization


def is_scalar_multiple(a: GradedClass, b: GradedClass) -> Optional[Fraction]:
    """Return lam with a == lam * b, or None.  (0, 0) gives 0."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if b.is_zero():
        return Fraction(0) if a.is_zero() else None
    m, c = next(iter(b.sorted_terms()))
    lam = a.coefficient(m) / c
    return lam if a == b * lam else None


def solve_linear_system(matrix: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """One exact solution of ``matrix @ x == rhs``, free variables set to 0.

    Plain Gauss-Jordan elimination over Fractions.  Returns None when the
    system is inconsistent.
    """
    rows = [list(map(Fraction, r)) + [Fraction(t)] for r, t in zip(matrix, rhs)]
    n_cols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def solve_cap_equation(a: GradedClass, b: GradedClass) -> Optional[GradedClass]:
    """Find some e with ``b * e == a``, or None if no such class exists.

    Both inputs must be homogeneous.  Since the degree-k part of b * e is
    b * e_{k - deg b}, it suffices to search homogeneous e of degree
    deg a - deg b.
    """
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if not (a.is_homogeneous() and b.is_homogeneous()):
        raise ValueError("solve_cap_equation needs homogeneous inputs")
    ring = a.ring
    if a.is_zero():
        return ring.zero()
    if b.is_zero():
        return None
    need = a.degree - b.degree
    if need < 0:
        return None
    unknowns = ring.basis(need)
    equations = ring.basis(a.degree)
    if not unknowns:
        return None
    columns = [b * ring.monomial(m) for m in unknowns]
    matrix = [[col.coefficient(eq) for col in columns] for eq in equations]
    rhs = [a.coefficient(eq) for eq in equations]
    sol = solve_linear_system(matrix, rhs)
    if sol is None:
        return None
    return GradedClass(ring, dict(zip(unknowns, sol)))
