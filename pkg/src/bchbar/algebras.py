"""Nilpotent degree-zero Lie algebra carriers for the group machinery.

Three interchangeable implementations of one interface: the free
weight-truncated algebra, an abelian coordinate algebra, and an algebra
given by explicit structure constants.  A structure-constants table is
validated for antisymmetry, the Jacobi identity and nilpotency at its
declared cap when it is constructed; invalid input is rejected, never
repaired.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Mapping, Sequence

from .expr import ExpressionError, evaluate_expression, parse_expression
from .freelie import FreeLieContext, format_terms

__all__ = [
    "Abelian",
    "AlgebraValidationError",
    "COEFFICIENT_POOL",
    "Deg0LieAlgebra",
    "FreeNilpotent",
    "StructureConstants",
    "load_structure_constants",
    "nested_bracket",
    "random_element",
]

ZERO = Fraction(0)
ONE = Fraction(1)

# Sampling pool for randomized law checks: small exact rationals keep the
# arithmetic cheap while exercising signs and halves.
COEFFICIENT_POOL = (
    Fraction(-2), Fraction(-1), Fraction(-1, 2),
    Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2),
)


class AlgebraValidationError(ValueError):
    """Raised when a declared algebra fails antisymmetry, Jacobi or
    nilpotency validation."""


class Deg0LieAlgebra(ABC):
    """A Lie algebra concentrated in degree zero with a nilpotency cap.

    `cap` is a positive integer such that every (cap+1)-fold nested bracket
    vanishes; that finiteness is what makes the group-law series exact.
    All operations are pure; carriers are immutable values.
    """

    cap: int

    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def scale(self, coefficient, a): ...

    @abstractmethod
    def bracket(self, a, b): ...

    @abstractmethod
    def equal(self, a, b) -> bool: ...

    @abstractmethod
    def basis(self) -> tuple:
        """Ordered basis of the carrier (used for sampling and parsing)."""

    @abstractmethod
    def generator(self, name: str):
        """Basis element by name; raises KeyError for unknown names."""

    @abstractmethod
    def format_element(self, a) -> str: ...

    @abstractmethod
    def label(self) -> str:
        """Short spec string for reports, e.g. 'free:xy:4'."""

    def neg(self, a):
        return self.scale(Fraction(-1), a)

    def parse(self, text: str):
        """Evaluate the shared expression grammar in this algebra."""
        node = parse_expression(text)

        def generator(name, position):
            try:
                return self.generator(name)
            except KeyError:
                raise ExpressionError(f"unknown generator {name!r}", position) from None

        return evaluate_expression(
            node,
            generator=generator,
            bracket=self.bracket,
            scale=self.scale,
            add=self.add,
            zero=self.zero,
        )


class FreeNilpotent(Deg0LieAlgebra):
    """The free Lie algebra on an alphabet, truncated at `cap`."""

    def __init__(self, alphabet, cap: int):
        self.context = FreeLieContext(alphabet, cap)
        self.cap = self.context.cap

    def zero(self):
        return self.context.zero()

    def add(self, a, b):
        return a + b

    def scale(self, coefficient, a):
        return a * coefficient

    def bracket(self, a, b):
        return a.bracket(b)

    def equal(self, a, b) -> bool:
        return a == b

    def basis(self) -> tuple:
        return tuple(self.context.basis_elements())

    def generator(self, name: str):
        return self.context.generator(name)

    def format_element(self, a) -> str:
        return str(a)

    def label(self) -> str:
        names = self.context.alphabet.letters
        joined = "".join(names) if all(len(n) == 1 for n in names) else ",".join(names)
        return f"free:{joined}:{self.cap}"

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeNilpotent) and self.context == other.context

    def __hash__(self) -> int:
        return hash(("free", self.context))

    def __repr__(self) -> str:
        return f"FreeNilpotent({self.label()!r})"


class _CoordinateAlgebra(Deg0LieAlgebra):
    """Shared carrier for algebras on a fixed basis e1..ed: elements are
    coordinate tuples of Fractions."""

    def __init__(self, dim: int):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        self._names = tuple(f"e{k + 1}" for k in range(dim))

    def zero(self):
        return (ZERO,) * self.dim

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def scale(self, coefficient, a):
        c = coefficient if isinstance(coefficient, Fraction) else Fraction(coefficient)
        return tuple(c * x for x in a)

    def equal(self, a, b) -> bool:
        return tuple(a) == tuple(b)

    def basis(self) -> tuple:
        return tuple(
            tuple(ONE if i == k else ZERO for i in range(self.dim))
            for k in range(self.dim)
        )

    def generator(self, name: str):
        try:
            k = self._names.index(name)
        except ValueError:
            raise KeyError(name) from None
        return tuple(ONE if i == k else ZERO for i in range(self.dim))

    def format_element(self, a) -> str:
        return format_terms(zip(self._names, a))


class Abelian(_CoordinateAlgebra):
    """Coordinate algebra with identically zero bracket; cap is 1."""

    cap = 1

    def bracket(self, a, b):
        return self.zero()

    def label(self) -> str:
        return f"abelian:{self.dim}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Abelian) and self.dim == other.dim

    def __hash__(self) -> int:
        return hash(("abelian", self.dim))

    def __repr__(self) -> str:
        return f"Abelian({self.dim})"


class StructureConstants(_CoordinateAlgebra):
    """Algebra defined by an explicit bracket table on basis vectors.

    `brackets` maps index pairs (i, j), 0-based, to the coordinates of
    [e_{i+1}, e_{j+1}] (either a coordinate sequence or a mapping
    index -> coefficient).  Omitted pairs are zero; the (j, i) entry may be
    omitted (antisymmetry fills it in) but if present must be consistent.
    """

    def __init__(self, dim: int, cap: int, brackets: Mapping):
        super().__init__(dim)
        cap = int(cap)
        if cap < 1:
            raise AlgebraValidationError("cap must be >= 1")
        self.cap = cap
        table = [[self.zero() for _ in range(dim)] for _ in range(dim)]
        seen = set()
        for (i, j), value in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraValidationError(f"bracket pair ({i}, {j}) outside dimension {dim}")
            vector = self._as_vector(value)
            if i == j:
                if any(vector):
                    raise AlgebraValidationError(f"[e{i + 1},e{i + 1}] must be zero")
                continue
            if (j, i) in seen:
                expected = self.scale(-1, table[j][i])
                if vector != expected:
                    raise AlgebraValidationError(
                        f"antisymmetry violated between ({i + 1},{j + 1}) and ({j + 1},{i + 1})")
            table[i][j] = vector
            table[j][i] = self.scale(-1, vector) if (j, i) not in seen else table[j][i]
            seen.add((i, j))
        self._table = tuple(tuple(row) for row in table)
        self._validate_jacobi()
        self._validate_nilpotency()

    def _as_vector(self, value) -> tuple:
        if isinstance(value, Mapping):
            coords = [ZERO] * self.dim
            for k, c in value.items():
                if not 0 <= k < self.dim:
                    raise AlgebraValidationError(f"basis index {k} outside dimension {self.dim}")
                coords[k] = Fraction(c)
            return tuple(coords)
        vector = tuple(Fraction(c) for c in value)
        if len(vector) != self.dim:
            raise AlgebraValidationError(
                f"bracket value has {len(vector)} coordinates, expected {self.dim}")
        return vector

    def bracket(self, a, b):
        out = list(self.zero())
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, t in enumerate(self._table[i][j]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    def _validate_jacobi(self) -> None:
        basis = self.basis()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    ei, ej, ek = basis[i], basis[j], basis[k]
                    total = self.add(
                        self.add(self.bracket(ei, self.bracket(ej, ek)),
                                 self.bracket(ej, self.bracket(ek, ei))),
                        self.bracket(ek, self.bracket(ei, ej)))
                    if any(total):
                        raise AlgebraValidationError(
                            f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1}): "
                            f"{self.format_element(total)}")

    def _validate_nilpotency(self) -> None:
        # lower central series: L_1 = span(basis), L_{m+1} = [L, L_m];
        # the declared cap demands L_{cap+1} = 0.
        basis = self.basis()
        layer = _independent(basis)
        for _ in range(self.cap):
            produced = [self.bracket(e, v) for e in basis for v in layer]
            layer = _independent(produced)
            if not layer:
                return
        raise AlgebraValidationError(
            f"not nilpotent at cap {self.cap}: "
            f"({self.cap + 1})-fold brackets still span {len(layer)} dimension(s)")

    def label(self) -> str:
        return f"sc:{self.dim}:{self.cap}"

    def __eq__(self, other) -> bool:
        return (isinstance(other, StructureConstants)
                and self.dim == other.dim and self.cap == other.cap
                and self._table == other._table)

    def __hash__(self) -> int:
        return hash(("sc", self.dim, self.cap, self._table))

    def __repr__(self) -> str:
        return f"StructureConstants(dim={self.dim}, cap={self.cap})"


def _independent(vectors: Sequence[tuple]) -> list[tuple]:
    """Reduce a spanning list to linearly independent rows (exact Gauss)."""
    rows: list[list[Fraction]] = []
    for vector in vectors:
        v = list(vector)
        for row in rows:
            pivot = next(i for i, c in enumerate(row) if c)
            if v[pivot]:
                factor = v[pivot] / row[pivot]
                v = [a - factor * b for a, b in zip(v, row)]
        if any(v):
            rows.append(v)
    return [tuple(r) for r in rows]


_DIM_LINE = re.compile(r"dim\s+(\d+)\Z")
_BRACKET_LINE = re.compile(r"\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=\s*(.+)\Z")


def load_structure_constants(text: str, cap: int, dim: int | None = None) -> StructureConstants:
    """Parse a structure-constants table from plain text.

    One line per nonzero bracket, '[ei,ej] = c1*ek1 + ...'; '#' starts a
    comment; an optional 'dim N' line fixes the dimension (otherwise the
    largest mentioned index wins).  The result is validated on construction.
    """
    parsed: list[tuple[int, int, object, int]] = []
    declared = dim
    max_index = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DIM_LINE.match(line)
        if m:
            declared = int(m.group(1))
            continue
        m = _BRACKET_LINE.match(line)
        if m is None:
            raise AlgebraValidationError(f"line {lineno}: cannot parse {line!r}")
        i, j = int(m.group(1)), int(m.group(2))
        try:
            node = parse_expression(m.group(3))
        except ExpressionError as exc:
            raise AlgebraValidationError(f"line {lineno}: {exc}") from None
        names = set()
        for name in _expression_basis_names(node, lineno):
            names.add(name)
        max_index = max([max_index, i, j] + [int(n[1:]) for n in names])
        parsed.append((i, j, node, lineno))
    if not parsed and declared is None:
        raise AlgebraValidationError("no bracket lines and no 'dim N' declaration")
    d = declared if declared is not None else max_index
    brackets: dict[tuple[int, int], tuple] = {}
    algebra = _CoordinateEvaluator(d)
    for i, j, node, lineno in parsed:
        if not (1 <= i <= d and 1 <= j <= d):
            raise AlgebraValidationError(f"line {lineno}: index outside dimension {d}")
        vector = algebra.evaluate(node, lineno)
        key = (i - 1, j - 1)
        if key in brackets:
            raise AlgebraValidationError(f"line {lineno}: duplicate bracket [e{i},e{j}]")
        brackets[key] = vector
    return StructureConstants(d, cap, brackets)


def _expression_basis_names(node, lineno: int):
    from .expr import expression_names

    for name in expression_names(node):
        if not re.fullmatch(r"e(\d+)", name) or int(name[1:]) < 1:
            raise AlgebraValidationError(
                f"line {lineno}: expected basis names e1, e2, ..., got {name!r}")
        yield name


class _CoordinateEvaluator:
    """Evaluates right-hand sides of bracket lines as linear combinations."""

    def __init__(self, dim: int):
        self.dim = dim

    def evaluate(self, node, lineno: int) -> tuple:
        def generator(name, position):
            k = int(name[1:]) - 1
            if not 0 <= k < self.dim:
                raise AlgebraValidationError(
                    f"line {lineno}: {name} outside dimension {self.dim}")
            return tuple(ONE if i == k else ZERO for i in range(self.dim))

        def bracket(a, b):
            raise AlgebraValidationError(
                f"line {lineno}: brackets are not allowed on the right-hand side")

        return evaluate_expression(
            node,
            generator=generator,
            bracket=bracket,
            scale=lambda c, v: tuple(Fraction(c) * x for x in v),
            add=lambda a, b: tuple(x + y for x, y in zip(a, b)),
            zero=lambda: (ZERO,) * self.dim,
        )


def random_element(algebra: Deg0LieAlgebra, rng):
    """Element with one pool coefficient per basis vector, drawn from `rng`."""
    out = algebra.zero()
    for base in algebra.basis():
        c = rng.choice(COEFFICIENT_POOL)
        if c:
            out = algebra.add(out, algebra.scale(c, base))
    return out


def nested_bracket(algebra: Deg0LieAlgebra, elements: Sequence):
    """Right-nested bracket [e1, [e2, [... [ek-1, ek]]]]."""
    if not elements:
        raise ValueError("need at least one element")
    out = elements[-1]
    for e in reversed(elements[:-1]):
        out = algebra.bracket(e, out)
    return out
