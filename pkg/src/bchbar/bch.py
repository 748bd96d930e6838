"""The group log(exp(a) exp(b)) on a nilpotent degree-zero Lie algebra.

The product is computed once per weight cap as a universal element of the
free algebra on two letters and then evaluated in any carrier by
substitution.  Two independent routes back every coefficient:

* `universal_bch` integrates the defining differential equation of
  z(t) = log(exp(t a) exp(t b)) term by term, which yields a recursion with
  Bernoulli-number coefficients evaluated entirely with Lie brackets;
* `assoc_oracle` expands exp and log in the truncated algebra of
  noncommuting words and projects the result back onto the Lyndon basis
  by triangular elimination.

The two must agree exactly; the test suite enforces it cap by cap.  The
table cache is write-once per cap: a table is fully built before it is
published, so concurrent readers never observe partial data.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .algebras import Deg0LieAlgebra
from .freelie import (
    Alphabet,
    ContextMismatchError,
    FreeLieContext,
    LieElement,
    LyndonWord,
    is_lyndon,
    standard_split,
)
from .simplicial import Group

__all__ = [
    "AssocSeries",
    "NonLieResidueError",
    "UniversalBchTable",
    "assoc_oracle",
    "assoc_to_lie",
    "bch_inverse",
    "bch_product",
    "bernoulli_number",
    "bernoulli_operator",
    "bernoulli_operator_inverse",
    "exp_group",
    "lie_to_assoc",
    "universal_bch",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class NonLieResidueError(RuntimeError):
    """A word series that should have been a Lie element was not.

    This signals an implementation bug somewhere upstream, never bad user
    input, which is why it aborts loudly instead of returning a value.
    """


# -- Bernoulli numbers -------------------------------------------------------

_BERNOULLI: dict[int, Fraction] = {0: ONE}


def bernoulli_number(k: int) -> Fraction:
    """B_k in the convention with B_1 = -1/2 (generating function t/(e^t-1)).

    Computed by the defining recurrence over exact rationals; no tables.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    for m in range(1, k + 1):
        if m in _BERNOULLI:
            continue
        acc = sum(comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
        _BERNOULLI[m] = Fraction(-acc, m + 1)
    return _BERNOULLI[k]


# -- the universal product ---------------------------------------------------

class UniversalBchTable:
    """log(exp(x) exp(y)) over the free algebra on {x, y} at a fixed cap."""

    __slots__ = ("cap", "element")

    def __init__(self, cap: int, element: LieElement):
        self.cap = cap
        self.element = element

    @property
    def coefficients(self) -> Mapping[LyndonWord, Fraction]:
        return self.element.terms

    def specialize(self, algebra: Deg0LieAlgebra, a, b):
        """Substitute x -> a, y -> b and evaluate every basis word's canonical
        bracketing with the algebra's own bracket."""
        if algebra.cap != self.cap:
            raise ValueError(
                f"table cap {self.cap} does not match algebra cap {algebra.cap}")
        values = {}

        def value(indices: tuple[int, ...]):
            v = values.get(indices)
            if v is None:
                if len(indices) == 1:
                    v = a if indices[0] == 0 else b
                else:
                    cut = standard_split(indices)
                    v = algebra.bracket(value(indices[:cut]), value(indices[cut:]))
                values[indices] = v
            return v

        out = algebra.zero()
        for word, coefficient in self.element.terms.items():
            out = algebra.add(out, algebra.scale(coefficient, value(word.indices)))
        return out

    def __repr__(self) -> str:
        return f"UniversalBchTable(cap={self.cap})"


_TABLES: dict[int, UniversalBchTable] = {}


def universal_bch(cap: int) -> UniversalBchTable:
    """The universal product at the given cap, computed once and cached."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    table = _TABLES.get(cap)
    if table is None:
        table = UniversalBchTable(cap, _bch_series(cap))
        _TABLES[cap] = table  # fully built before it becomes visible
    return table


def _compositions(total: int, parts: int):
    """Ordered tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _bch_series(cap: int) -> LieElement:
    """Homogeneous parts z_n of z(t) = log(exp(t x) exp(t y)), summed.

    Writing phi(w) = (e^w - 1)/w, the derivative of exp z(t) gives
    phi(ad_z)(z') = x + e^{t ad_x}(y), hence
    z' = sum_k (B_k/k!) ad_z^k (x + e^{t ad_x} y).  Collecting the t^n
    coefficient yields, with u_0 = x + y and u_m = ad_x^m(y)/m!,

        (n+1) z_{n+1} = sum_{k} (B_k/k!) sum ad_{z_{i_1}} .. ad_{z_{i_k}} u_m

    over compositions i_1 + .. + i_k + m = n with i_j >= 1, m >= 0.
    Every z_n is homogeneous of weight n, so no truncation loss occurs
    below the cap.
    """
    context = FreeLieContext(Alphabet("xy"), cap)
    x, y = context.generators()
    u = [x + y]
    t = y
    for m in range(1, cap):
        t = x.bracket(t)
        u.append(t / factorial(m))
    z: list[LieElement] = [context.zero(), x + y]
    for n in range(1, cap):
        acc = context.zero()
        for k in range(n + 1):
            bk = bernoulli_number(k)
            if not bk:
                continue
            coefficient = bk / factorial(k)
            for s in range(k, n + 1):
                m = n - s
                for parts in _compositions(s, k):
                    term = u[m]
                    for i in reversed(parts):
                        term = z[i].bracket(term)
                    acc = acc + coefficient * term
        z.append(acc / (n + 1))
    total = context.zero()
    for zn in z[1:]:
        total = total + zn
    return total


def bch_product(algebra: Deg0LieAlgebra, a, b):
    """The group law log(exp(a) exp(b)) evaluated in `algebra`."""
    return universal_bch(algebra.cap).specialize(algebra, a, b)


def bch_inverse(algebra: Deg0LieAlgebra, a):
    """Group inverse: -a (then bch_product(a, -a) = 0 exactly)."""
    return algebra.neg(a)


def exp_group(algebra: Deg0LieAlgebra) -> Group:
    """The group on the carrier of `algebra`: identity 0, product the BCH
    law, inverse the negation."""
    return Group(
        identity=algebra.zero(),
        product=lambda a, b: bch_product(algebra, a, b),
        inverse=algebra.neg,
        equal=algebra.equal,
        describe=algebra.format_element,
    )


# -- the associative oracle --------------------------------------------------

class AssocSeries:
    """Truncated series in noncommuting words with Fraction coefficients.

    Words are index tuples over an Alphabet; every operation drops words
    longer than the cap.  This is deliberately plain machinery: it exists
    to cross-check the Lie-side computation, so it shares none of it.
    """

    __slots__ = ("alphabet", "cap", "terms")

    def __init__(self, alphabet: Alphabet, cap: int, terms: Mapping = ()):
        self.alphabet = alphabet
        self.cap = int(cap)
        data: dict[tuple[int, ...], Fraction] = {}
        for word, coefficient in dict(terms).items():
            word = tuple(word)
            if len(word) > self.cap:
                continue
            c = coefficient if isinstance(coefficient, Fraction) else Fraction(coefficient)
            if c:
                data[word] = c
        self.terms = data

    @classmethod
    def zero(cls, alphabet: Alphabet, cap: int) -> "AssocSeries":
        return cls(alphabet, cap)

    @classmethod
    def one(cls, alphabet: Alphabet, cap: int) -> "AssocSeries":
        return cls(alphabet, cap, {(): ONE})

    def _check(self, other: "AssocSeries") -> None:
        if self.alphabet != other.alphabet or self.cap != other.cap:
            raise ContextMismatchError("mismatched word-series contexts")

    def __add__(self, other: "AssocSeries") -> "AssocSeries":
        self._check(other)
        out = dict(self.terms)
        for word, c in other.terms.items():
            value = out.get(word, ZERO) + c
            if value:
                out[word] = value
            else:
                out.pop(word, None)
        result = AssocSeries(self.alphabet, self.cap)
        result.terms = out
        return result

    def __sub__(self, other: "AssocSeries") -> "AssocSeries":
        return self + other.scale(-ONE)

    def scale(self, coefficient) -> "AssocSeries":
        c = coefficient if isinstance(coefficient, Fraction) else Fraction(coefficient)
        result = AssocSeries(self.alphabet, self.cap)
        if c:
            result.terms = {w: c * v for w, v in self.terms.items()}
        return result

    def __mul__(self, other: "AssocSeries") -> "AssocSeries":
        self._check(other)
        cap = self.cap
        out: dict[tuple[int, ...], Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                if len(wa) + len(wb) > cap:
                    continue
                word = wa + wb
                value = out.get(word, ZERO) + ca * cb
                if value:
                    out[word] = value
                else:
                    out.pop(word, None)
        result = AssocSeries(self.alphabet, self.cap)
        result.terms = out
        return result

    def constant_term(self) -> Fraction:
        return self.terms.get((), ZERO)

    def exp(self) -> "AssocSeries":
        if self.constant_term():
            raise ValueError("exp needs a series with zero constant term")
        acc = AssocSeries.one(self.alphabet, self.cap)
        power = acc
        for k in range(1, self.cap + 1):
            power = (power * self).scale(Fraction(1, k))
            acc = acc + power
        return acc

    def log(self) -> "AssocSeries":
        if self.constant_term() != 1:
            raise ValueError("log needs a series with constant term 1")
        u = self - AssocSeries.one(self.alphabet, self.cap)
        acc = AssocSeries.zero(self.alphabet, self.cap)
        power = AssocSeries.one(self.alphabet, self.cap)
        for k in range(1, self.cap + 1):
            power = power * u
            acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, AssocSeries)
                and self.alphabet == other.alphabet
                and self.cap == other.cap
                and self.terms == other.terms)

    def __repr__(self) -> str:
        return f"AssocSeries(cap={self.cap}, {len(self.terms)} terms)"


_EXPANSIONS: dict[tuple[tuple[str, ...], tuple[int, ...]], dict[tuple[int, ...], int]] = {}


def _commutator_expansion(alphabet: Alphabet, indices: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Expansion of the canonical bracketing of a Lyndon word into words."""
    key = (alphabet.letters, indices)
    cached = _EXPANSIONS.get(key)
    if cached is not None:
        return cached
    if len(indices) == 1:
        result = {indices: 1}
    else:
        cut = standard_split(indices)
        left = _commutator_expansion(alphabet, indices[:cut])
        right = _commutator_expansion(alphabet, indices[cut:])
        result = {}
        for wa, ca in left.items():
            for wb, cb in right.items():
                c = ca * cb
                for word, sign in ((wa + wb, c), (wb + wa, -c)):
                    value = result.get(word, 0) + sign
                    if value:
                        result[word] = value
                    else:
                        result.pop(word, None)
    _EXPANSIONS[key] = result
    return result


def lie_to_assoc(element: LieElement) -> AssocSeries:
    """Embed a Lie element into the word algebra by expanding every basis
    word's canonical bracketing into commutators of letters."""
    context = element.context
    out: dict[tuple[int, ...], Fraction] = {}
    for word, coefficient in element.terms.items():
        for assoc_word, n in _commutator_expansion(context.alphabet, word.indices).items():
            value = out.get(assoc_word, ZERO) + coefficient * n
            if value:
                out[assoc_word] = value
            else:
                out.pop(assoc_word, None)
    series = AssocSeries(context.alphabet, context.cap)
    series.terms = out
    return series


def assoc_to_lie(series: AssocSeries, context: FreeLieContext) -> LieElement:
    """Project a word series known to be a Lie element onto the Lyndon basis.

    Per weight, the lexicographically least surviving word of a Lie
    polynomial must be Lyndon and carries the basis coefficient (the
    canonical bracketing expands to the word itself plus lexicographically
    larger words); repeatedly peeling that leading term terminates with an
    empty remainder.  A non-Lyndon leading word means the input was not a
    Lie element, which is an internal error and aborts loudly.
    """
    if series.alphabet != context.alphabet or series.cap != context.cap:
        raise ContextMismatchError("series and context disagree on alphabet or cap")
    if series.constant_term():
        raise NonLieResidueError(f"nonzero constant term {series.constant_term()}")
    coefficients: dict = {}
    for weight in range(1, context.cap + 1):
        remainder = {w: c for w, c in series.terms.items() if len(w) == weight}
        while remainder:
            word = min(remainder)
            if not is_lyndon(word):
                raise NonLieResidueError(
                    f"leading word {word!r} of weight {weight} is not Lyndon; "
                    "the series is not a Lie element")
            c = remainder[word]
            coefficients[context._word(word)] = c
            for assoc_word, n in _commutator_expansion(context.alphabet, word).items():
                value = remainder.get(assoc_word, ZERO) - c * n
                if value:
                    remainder[assoc_word] = value
                else:
                    remainder.pop(assoc_word, None)
    return context.element(coefficients)


def assoc_oracle(a: LieElement, b: LieElement) -> LieElement:
    """log(exp(a) exp(b)) computed purely with truncated word series.

    Independent of `universal_bch`: no Bernoulli numbers, no bracket
    rewriting on the way in, and a leading-term elimination on the way out
    that certifies the result is primitive.
    """
    if not isinstance(a, LieElement) or not isinstance(b, LieElement):
        raise TypeError("assoc_oracle expects LieElements")
    if a.context != b.context:
        raise ContextMismatchError("assoc_oracle needs a shared context")
    product = lie_to_assoc(a).exp() * lie_to_assoc(b).exp()
    return assoc_to_lie(product.log(), a.context)


# -- the series operator ad_x / (e^{ad_x} - 1) -------------------------------

def bernoulli_operator(algebra: Deg0LieAlgebra, x, y):
    """sum_k (B_k / k!) ad_x^k(y); the sum is finite by nilpotency."""
    out = algebra.zero()
    term = y
    for k in range(algebra.cap + 1):
        c = bernoulli_number(k) / factorial(k)
        if c:
            out = algebra.add(out, algebra.scale(c, term))
        term = algebra.bracket(x, term)
    return out


def bernoulli_operator_inverse(algebra: Deg0LieAlgebra, x, y):
    """sum_k ad_x^k(y) / (k+1)!, the series (e^{ad_x} - 1)/ad_x inverse to
    `bernoulli_operator`."""
    out = algebra.zero()
    term = y
    for k in range(algebra.cap + 1):
        out = algebra.add(out, algebra.scale(Fraction(1, factorial(k + 1)), term))
        term = algebra.bracket(x, term)
    return out
