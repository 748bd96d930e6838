"""Free Lie algebras over the rationals on a finite ordered alphabet,
truncated at a weight cap, with elements kept in Lyndon-basis normal form.

Every coefficient is a `fractions.Fraction`; nothing is ever rounded.  A
`FreeLieContext` fixes the alphabet and the cap; elements of different
contexts never mix (attempting to combine them raises
`ContextMismatchError` rather than coercing, so truncation bugs cannot
hide).  All values are immutable after construction and every operation is
a pure function of its inputs; the per-context rewrite caches are
write-once per key and idempotent, so sharing a context between threads is
safe.
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .expr import ExpressionError, evaluate_expression, parse_expression

__all__ = [
    "Alphabet",
    "ContextMismatchError",
    "FreeLieContext",
    "LieElement",
    "LyndonWord",
    "bracket",
    "format_terms",
    "is_lyndon",
    "lyndon_words",
    "standard_split",
    "witt_dimension",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

ZERO = Fraction(0)
ONE = Fraction(1)


class ContextMismatchError(ValueError):
    """Raised when elements from different contexts are combined."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"exact rational coefficient required, got {type(value).__name__}")


def is_lyndon(sequence) -> bool:
    """True if `sequence` is nonempty and strictly smaller than every proper
    rotation of itself."""
    word = tuple(sequence)
    n = len(word)
    if n == 0:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, n))


def standard_split(sequence) -> int:
    """Split position of the standard factorization of a Lyndon word.

    For a Lyndon word w of length >= 2, w = uv where v is the longest proper
    suffix that is itself Lyndon; then u and v are Lyndon with u < v.  The
    returned index is len(u).
    """
    word = tuple(sequence)
    if len(word) < 2:
        raise ValueError("standard factorization needs length >= 2")
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return i
    raise ValueError(f"not a Lyndon word: {word!r}")


class Alphabet:
    """An ordered set of generator names.

    The construction order is the total order used for every Lyndon-word
    comparison; it has nothing to do with string ordering of the names.
    """

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("alphabet must not be empty")
        for name in letters:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate generator names in {letters!r}")
        self.letters = letters
        self._index = {name: i for i, name in enumerate(letters)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.letters)!r})"


class LyndonWord:
    """A nonempty word strictly smaller than all of its proper rotations.

    Carries the canonical bracketing through `standard_factorization`:
    weight-1 words are generators, and w = uv (standard factorization)
    corresponds to the nested bracket [b(u), b(v)].
    """

    __slots__ = ("alphabet", "indices", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable):
        if not isinstance(alphabet, Alphabet):
            raise TypeError("expected an Alphabet")
        indices = tuple(
            alphabet.index(item) if isinstance(item, str) else int(item)
            for item in letters
        )
        if not indices:
            raise ValueError("a Lyndon word must be nonempty")
        for i in indices:
            if not 0 <= i < len(alphabet):
                raise ValueError(f"letter index {i} outside alphabet of size {len(alphabet)}")
        if not is_lyndon(indices):
            raise ValueError(f"not a Lyndon word: {'.'.join(alphabet.letters[i] for i in indices)}")
        self.alphabet = alphabet
        self.indices = indices
        self._hash = hash((alphabet.letters, indices))

    @property
    def weight(self) -> int:
        return len(self.indices)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[i] for i in self.indices)

    def standard_factorization(self) -> tuple["LyndonWord", "LyndonWord"]:
        cut = standard_split(self.indices)
        return (LyndonWord(self.alphabet, self.indices[:cut]),
                LyndonWord(self.alphabet, self.indices[cut:]))

    def bracket_string(self) -> str:
        """Canonical nested-bracket form, e.g. '[x,[x,y]]' for xxy."""
        if self.weight == 1:
            return self.alphabet.letters[self.indices[0]]
        left, right = self.standard_factorization()
        return f"[{left.bracket_string()},{right.bracket_string()}]"

    def _cmp_check(self, other) -> "LyndonWord":
        if not isinstance(other, LyndonWord):
            raise TypeError(f"cannot compare LyndonWord with {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise ValueError("cannot compare words over different alphabets")
        return other

    def __lt__(self, other) -> bool:
        return self.indices < self._cmp_check(other).indices

    def __le__(self, other) -> bool:
        return self.indices <= self._cmp_check(other).indices

    def __gt__(self, other) -> bool:
        return self.indices > self._cmp_check(other).indices

    def __ge__(self, other) -> bool:
        return self.indices >= self._cmp_check(other).indices

    def __eq__(self, other) -> bool:
        return (isinstance(other, LyndonWord)
                and self.alphabet == other.alphabet
                and self.indices == other.indices)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        names = self.letters
        if all(len(name) == 1 for name in names):
            return "".join(names)
        return ".".join(names)

    def __repr__(self) -> str:
        return f"LyndonWord({self})"


def lyndon_words(alphabet: Alphabet, max_weight: int) -> list[LyndonWord]:
    """All Lyndon words of weight <= max_weight, sorted by (weight, lex).

    Uses Duval's generation (lexicographic, then re-sorted weight-major).
    The count at each weight equals `witt_dimension`.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    k = len(alphabet)
    found: list[tuple[int, ...]] = []
    w = [0]
    while True:
        found.append(tuple(w))
        w = [w[i % len(w)] for i in range(max_weight)]
        while w and w[-1] == k - 1:
            w.pop()
        if not w:
            break
        w[-1] += 1
    found.sort(key=lambda t: (len(t), t))
    return [LyndonWord(alphabet, t) for t in found]


def _mobius(n: int) -> int:
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def witt_dimension(num_letters: int, weight: int) -> int:
    """Number of Lyndon words of the given weight over `num_letters` letters:
    (1/n) * sum over divisors d of n of mobius(d) * k^(n/d)."""
    if weight < 1 or num_letters < 1:
        raise ValueError("need weight >= 1 and num_letters >= 1")
    total = sum(_mobius(d) * num_letters ** (weight // d)
                for d in range(1, weight + 1) if weight % d == 0)
    assert total % weight == 0
    return total // weight


class FreeLieContext:
    """A free Lie algebra truncated at a weight cap.

    Brackets whose weight exceeds the cap are zero.  Two contexts are equal
    exactly when alphabet and cap agree, and only elements of equal contexts
    may be combined.
    """

    __slots__ = ("alphabet", "cap", "_basis", "_interned", "_splits", "_rewrites")

    def __init__(self, alphabet, cap: int):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        cap = int(cap)
        if cap < 1:
            raise ValueError("cap must be >= 1")
        self.alphabet = alphabet
        self.cap = cap
        self._basis: list[LyndonWord] | None = None
        self._interned: dict[tuple[int, ...], LyndonWord] = {}
        self._splits: dict[tuple[int, ...], int] = {}
        self._rewrites: dict[tuple[tuple[int, ...], tuple[int, ...]], dict] = {}

    def __eq__(self, other) -> bool:
        return (isinstance(other, FreeLieContext)
                and self.alphabet == other.alphabet and self.cap == other.cap)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.cap))

    def __repr__(self) -> str:
        return f"FreeLieContext({list(self.alphabet.letters)!r}, cap={self.cap})"

    def zero(self) -> "LieElement":
        return LieElement._raw(self, {})

    def generator(self, name: str) -> "LieElement":
        index = self.alphabet.index(name)
        return LieElement._raw(self, {self._word((index,)): ONE})

    def generators(self) -> tuple["LieElement", ...]:
        return tuple(self.generator(name) for name in self.alphabet.letters)

    def basis_words(self) -> list[LyndonWord]:
        if self._basis is None:
            self._basis = lyndon_words(self.alphabet, self.cap)
            for word in self._basis:
                self._interned.setdefault(word.indices, word)
        return list(self._basis)

    def basis_elements(self) -> list["LieElement"]:
        return [LieElement._raw(self, {w: ONE}) for w in self.basis_words()]

    def element(self, terms: Mapping) -> "LieElement":
        """Build an element from a mapping word -> coefficient.

        Words may be LyndonWord instances, strings of single-letter names, or
        sequences of names/indices.  Weight > cap terms are truncated away.
        """
        data: dict[LyndonWord, Fraction] = {}
        for word, coefficient in terms.items():
            if not isinstance(word, LyndonWord):
                word = LyndonWord(self.alphabet, word)
            elif word.alphabet != self.alphabet:
                raise ContextMismatchError(
                    f"word {word} belongs to a different alphabet")
            if word.weight > self.cap:
                continue
            value = data.get(word, ZERO) + _as_fraction(coefficient)
            if value:
                data[word] = value
            else:
                data.pop(word, None)
        return LieElement._raw(self, data)

    def parse(self, text: str) -> "LieElement":
        """Parse the expression grammar into a normalized element."""
        node = parse_expression(text)

        def generator(name, position):
            try:
                return self.generator(name)
            except KeyError:
                raise ExpressionError(f"unknown generator {name!r}", position) from None

        return evaluate_expression(
            node,
            generator=generator,
            bracket=LieElement.bracket,
            scale=lambda c, a: a * c,
            add=lambda a, b: a + b,
            zero=self.zero,
        )

    # -- internal machinery -------------------------------------------------

    def _word(self, indices: tuple[int, ...]) -> LyndonWord:
        word = self._interned.get(indices)
        if word is None:
            word = LyndonWord(self.alphabet, indices)
            self._interned[indices] = word
        return word

    def _split(self, indices: tuple[int, ...]) -> int:
        cut = self._splits.get(indices)
        if cut is None:
            cut = standard_split(indices)
            self._splits[indices] = cut
        return cut

    def _rewrite(self, u: tuple[int, ...], v: tuple[int, ...]) -> dict:
        """[b(u), b(v)] as a dict Lyndon-index-tuple -> Fraction.

        Antisymmetry orders the pair; for u < v either (u, v) already is a
        standard bracketing (then the result is the single word uv) or u is
        composite, u = ab with b < v, and the Jacobi identity rewrites
        [[a,b],v] = [a,[b,v]] - [b,[a,v]].  The recursion is the classical
        triangular rewriting for Lyndon bases; results are memoized.
        """
        if u == v:
            return {}
        if v < u:
            return {w: -c for w, c in self._rewrite(v, u).items()}
        key = (u, v)
        cached = self._rewrites.get(key)
        if cached is not None:
            return cached
        if len(u) == 1 or u[self._split(u):] >= v:
            result = {u + v: ONE}
        else:
            cut = self._split(u)
            a, b = u[:cut], u[cut:]
            result = {}
            for w, c in self._rewrite(b, v).items():
                for w2, c2 in self._rewrite(a, w).items():
                    value = result.get(w2, ZERO) + c * c2
                    if value:
                        result[w2] = value
                    else:
                        result.pop(w2, None)
            for w, c in self._rewrite(a, v).items():
                for w2, c2 in self._rewrite(b, w).items():
                    value = result.get(w2, ZERO) - c * c2
                    if value:
                        result[w2] = value
                    else:
                        result.pop(w2, None)
        self._rewrites[key] = result
        return result


class LieElement:
    """A finite rational combination of Lyndon basis words of weight <= cap.

    Stored zero-free; equality is coefficient-wise.  Supports +, -, unary -,
    scalar * and /, `bracket`, and `truncate`.  `str()` is the canonical
    text form accepted back by `FreeLieContext.parse`.
    """

    __slots__ = ("context", "_terms")

    def __init__(self, context: FreeLieContext, terms: Mapping = ()):
        if not isinstance(context, FreeLieContext):
            raise TypeError("expected a FreeLieContext")
        normalized = context.element(dict(terms) if terms else {})
        self.context = context
        self._terms = normalized._terms

    @classmethod
    def _raw(cls, context: FreeLieContext, terms: dict) -> "LieElement":
        # trusted constructor: terms already normalized (zero-free, <= cap)
        self = object.__new__(cls)
        self.context = context
        self._terms = terms
        return self

    @property
    def terms(self) -> Mapping[LyndonWord, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, word) -> Fraction:
        if not isinstance(word, LyndonWord):
            word = LyndonWord(self.context.alphabet, word)
        return self._terms.get(word, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError(f"expected a LieElement, got {type(other).__name__}")
        if other.context != self.context:
            raise ContextMismatchError(
                f"cannot combine elements of {self.context!r} and {other.context!r}")

    def __add__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for word, coefficient in other._terms.items():
            value = out.get(word, ZERO) + coefficient
            if value:
                out[word] = value
            else:
                out.pop(word, None)
        return LieElement._raw(self.context, out)

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return LieElement._raw(self.context,
                               {w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar):
        c = _as_fraction(scalar)
        if not c:
            return LieElement._raw(self.context, {})
        return LieElement._raw(self.context,
                               {w: c * v for w, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (ONE / _as_fraction(scalar))

    def bracket(self, other: "LieElement") -> "LieElement":
        """Lie bracket [self, other], normalized to the Lyndon basis and
        truncated to the context cap."""
        self._check(other)
        context = self.context
        cap = context.cap
        out: dict[LyndonWord, Fraction] = {}
        for u, cu in self._terms.items():
            for v, cv in other._terms.items():
                if u.weight + v.weight > cap:
                    continue
                rewrite = context._rewrite(u.indices, v.indices)
                if not rewrite:
                    continue
                c = cu * cv
                for indices, cw in rewrite.items():
                    word = context._word(indices)
                    value = out.get(word, ZERO) + c * cw
                    if value:
                        out[word] = value
                    else:
                        out.pop(word, None)
        return LieElement._raw(context, out)

    def truncate(self, new_cap: int) -> "LieElement":
        """Drop all terms of weight > new_cap; the result lives in the
        context with the smaller cap.  Raising the cap is an error."""
        new_cap = int(new_cap)
        if new_cap > self.context.cap:
            raise ValueError(
                f"cannot raise the cap from {self.context.cap} to {new_cap}")
        if new_cap == self.context.cap:
            return self
        target = FreeLieContext(self.context.alphabet, new_cap)
        return LieElement._raw(
            target, {w: c for w, c in self._terms.items() if w.weight <= new_cap})

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieElement)
                and self.context == other.context
                and self._terms == other._terms)

    def __str__(self) -> str:
        items = sorted(self._terms.items(), key=lambda kv: (kv[0].weight, kv[0].indices))
        return format_terms((word.bracket_string(), c) for word, c in items)

    def __repr__(self) -> str:
        return f"<LieElement {self}>"


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Module-level spelling of `a.bracket(b)`."""
    return a.bracket(b)


def format_terms(items) -> str:
    """Canonical sum formatting shared by every element printer.

    `items` yields (factor_text, coefficient) pairs in final order.  The
    coefficient prefix 'p/q*' is omitted when the magnitude is 1; the zero
    combination prints as '0'.
    """
    parts: list[str] = []
    for text, coefficient in items:
        if not coefficient:
            continue
        magnitude = -coefficient if coefficient < 0 else coefficient
        body = text if magnitude == 1 else f"{magnitude}*{text}"
        if not parts:
            parts.append(body if coefficient > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if coefficient > 0 else f" - {body}")
    return "".join(parts) or "0"
