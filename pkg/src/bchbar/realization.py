"""The cosimplicial generator combinatorics, the tuple-encoded morphism
simplicial set, and its identification with the bar construction.

A dimension-n simplex is the tuple (x_1, ..., x_n) of values of a morphism
on the pair generators (0, r); values on every other pair (r, s) follow as
x_r^{-1} * x_s in the BCH group, with the convention x_0 = 0 so that r = 0
is covered uniformly.  The encoding `to_bar` sends a tuple to
[x_1 | x_1^{-1} * x_2 | ... | x_{n-1}^{-1} * x_n]; `verify_isomorphism`
checks mechanically, on seeded random samples, that this is a simplicial
bijection onto the bar construction of the group.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations

from .algebras import Deg0LieAlgebra, random_element
from .bch import bch_product, exp_group
from .simplicial import (
    BarSimplex,
    SimplicialMaps,
    bar_degeneracy,
    bar_equal,
    bar_face,
    bar_maps,
    check_simplicial_identities,
    format_bar_simplex,
)

__all__ = [
    "CocycleReport",
    "FamilyResult",
    "GeneratorSymbol",
    "HomSimplex",
    "IsoReport",
    "codegeneracy",
    "codegeneracy_image",
    "coface",
    "coface_image",
    "format_hom_simplex",
    "from_bar",
    "hom_equal",
    "hom_maps",
    "induced_degeneracy",
    "induced_degeneracy_bruteforce",
    "induced_face",
    "induced_face_bruteforce",
    "pair_image",
    "parse_generator_symbol",
    "random_bar_simplex",
    "random_hom_simplex",
    "to_bar",
    "to_bar_dropping_inverse",
    "triangle_cocycle_check",
    "verify_isomorphism",
]


@dataclass(frozen=True)
class GeneratorSymbol:
    """A generator indexed by a strictly increasing sequence of vertices of
    the ambient simplex; text form 'a_{i0 i1 ... ip}@n'."""

    indices: tuple[int, ...]
    ambient: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if not self.indices:
            raise ValueError("a generator needs at least one index")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices must be strictly increasing: {self.indices}")
        if self.indices[0] < 0 or self.indices[-1] > self.ambient:
            raise ValueError(
                f"indices {self.indices} outside ambient dimension {self.ambient}")

    @property
    def degree(self) -> int:
        # pair generators (two indices) sit in degree 0
        return len(self.indices) - 2

    def __str__(self) -> str:
        return "a_{" + " ".join(str(i) for i in self.indices) + "}@" + str(self.ambient)


_SYMBOL_RE = re.compile(r"a_\{\s*(\d+(?:\s+\d+)*)\s*\}@(\d+)\Z")


def parse_generator_symbol(text: str) -> GeneratorSymbol:
    m = _SYMBOL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"cannot parse generator symbol {text!r}")
    return GeneratorSymbol(tuple(int(t) for t in m.group(1).split()), int(m.group(2)))


def coface(i: int, g: GeneratorSymbol) -> GeneratorSymbol:
    """Coface: indices >= i shift up by one; ambient grows by one."""
    if not 0 <= i <= g.ambient + 1:
        raise IndexError(f"coface index {i} out of range for ambient {g.ambient}")
    return GeneratorSymbol(tuple(k if k < i else k + 1 for k in g.indices),
                           g.ambient + 1)


def codegeneracy(i: int, g: GeneratorSymbol) -> GeneratorSymbol | None:
    """Codegeneracy: kills the generator (returns None) when both i and i+1
    occur among its indices; otherwise indices > i shift down by one."""
    if not 0 <= i <= g.ambient - 1:
        raise IndexError(f"codegeneracy index {i} out of range for ambient {g.ambient}")
    if i in g.indices and (i + 1) in g.indices:
        return None
    return GeneratorSymbol(tuple(k if k <= i else k - 1 for k in g.indices),
                           g.ambient - 1)


def coface_image(i: int, g: GeneratorSymbol | None) -> GeneratorSymbol | None:
    """Coface extended to killed generators (None is absorbing)."""
    return None if g is None else coface(i, g)


def codegeneracy_image(i: int, g: GeneratorSymbol | None) -> GeneratorSymbol | None:
    """Codegeneracy extended to killed generators (None is absorbing)."""
    return None if g is None else codegeneracy(i, g)


class HomSimplex:
    """The tuple (x_1, ..., x_n) encoding a morphism out of the dimension-n
    cosimplicial algebra; x_r is the value on the pair generator (0, r)."""

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra: Deg0LieAlgebra, entries=()):
        self.algebra = algebra
        self.entries = tuple(entries)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomSimplex)
                and self.algebra == other.algebra
                and hom_equal(self, other))

    def __repr__(self) -> str:
        return f"<HomSimplex {format_hom_simplex(self)}>"


def hom_equal(h: HomSimplex, k: HomSimplex) -> bool:
    return (h.dimension == k.dimension
            and all(h.algebra.equal(a, b) for a, b in zip(h.entries, k.entries)))


def format_hom_simplex(h: HomSimplex) -> str:
    return "(" + ", ".join(h.algebra.format_element(x) for x in h.entries) + ")"


def pair_image(h: HomSimplex, r: int, s: int):
    """Value of the morphism on the pair generator (r, s): x_r^{-1} * x_s
    in the group, with x_0 the identity."""
    n = h.dimension
    if not 0 <= r < s <= n:
        raise IndexError(f"need 0 <= r < s <= {n}, got ({r}, {s})")
    if r == 0:
        return h.entries[s - 1]
    algebra = h.algebra
    return bch_product(algebra, algebra.neg(h.entries[r - 1]), h.entries[s - 1])


def induced_face(i: int, h: HomSimplex) -> HomSimplex:
    """Closed-form face: d_0 maps (x_1..x_n) to (x_1^{-1}*x_2, ..,
    x_1^{-1}*x_n); d_i for i > 0 deletes x_i."""
    n = h.dimension
    if n == 0 or not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range for dimension {n}")
    if i == 0:
        algebra = h.algebra
        head = algebra.neg(h.entries[0])
        return HomSimplex(algebra,
                          (bch_product(algebra, head, x) for x in h.entries[1:]))
    return HomSimplex(h.algebra, h.entries[: i - 1] + h.entries[i:])


def induced_face_bruteforce(i: int, h: HomSimplex) -> HomSimplex:
    """Face computed through the cosimplicial structure: push each pair
    generator (0, r) through the coface, then evaluate the morphism."""
    n = h.dimension
    if n == 0 or not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range for dimension {n}")
    entries = []
    for r in range(1, n):
        image = coface(i, GeneratorSymbol((0, r), n - 1))
        entries.append(pair_image(h, image.indices[0], image.indices[1]))
    return HomSimplex(h.algebra, entries)


def induced_degeneracy(i: int, h: HomSimplex) -> HomSimplex:
    """Closed-form degeneracy: s_0 prepends the identity; s_i for i > 0
    duplicates x_i."""
    n = h.dimension
    if not 0 <= i <= n:
        raise IndexError(f"degeneracy index {i} out of range for dimension {n}")
    if i == 0:
        return HomSimplex(h.algebra, (h.algebra.zero(),) + h.entries)
    return HomSimplex(h.algebra,
                      h.entries[:i] + (h.entries[i - 1],) + h.entries[i:])


def induced_degeneracy_bruteforce(i: int, h: HomSimplex) -> HomSimplex:
    """Degeneracy via the codegeneracies; killed generators evaluate to the
    identity of the group."""
    n = h.dimension
    if not 0 <= i <= n:
        raise IndexError(f"degeneracy index {i} out of range for dimension {n}")
    algebra = h.algebra
    entries = []
    for r in range(1, n + 2):
        image = codegeneracy(i, GeneratorSymbol((0, r), n + 1))
        if image is None:
            entries.append(algebra.zero())
        else:
            entries.append(pair_image(h, image.indices[0], image.indices[1]))
    return HomSimplex(algebra, entries)


def hom_maps(algebra: Deg0LieAlgebra) -> SimplicialMaps:
    return SimplicialMaps(
        face=induced_face,
        degeneracy=induced_degeneracy,
        equal=hom_equal,
        describe=format_hom_simplex,
    )


# -- the triangle relation ----------------------------------------------------

@dataclass(frozen=True)
class CocycleViolation:
    triple: tuple[int, int, int]
    witness: str

    def to_text(self) -> str:
        r, s, t = self.triple
        return f"triangle ({r},{s},{t}) does not close: {self.witness}"

    def to_dict(self) -> dict:
        return {"triple": list(self.triple), "witness": self.witness}


@dataclass
class CocycleReport:
    checks: int = 0
    violations: list[CocycleViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"checks": self.checks,
                "violations": [v.to_dict() for v in self.violations],
                "ok": self.ok}

    def to_text(self) -> str:
        lines = [f"{self.checks} triangle checks, {len(self.violations)} violations"]
        lines.extend("  " + v.to_text() for v in self.violations)
        return "\n".join(lines)


def triangle_cocycle_check(h: HomSimplex, pair_assignment=None) -> CocycleReport:
    """For every 0 <= r < s < t <= n test that the pair values close up:
    value(r,s) * value(s,t) * value(r,t)^{-1} = 0.

    With the default assignment (`pair_image`) this holds identically; the
    `pair_assignment` hook exists so corrupted assignments can demonstrate
    that the check actually bites.
    """
    n = h.dimension
    if n < 2:
        raise ValueError("the triangle relation needs dimension >= 2")
    assign = pair_assignment if pair_assignment is not None else pair_image
    algebra = h.algebra
    report = CocycleReport()
    for r, s, t in combinations(range(n + 1), 3):
        left = bch_product(algebra, assign(h, r, s), assign(h, s, t))
        total = bch_product(algebra, left, algebra.neg(assign(h, r, t)))
        report.checks += 1
        if not algebra.equal(total, algebra.zero()):
            report.violations.append(
                CocycleViolation((r, s, t), algebra.format_element(total)))
    return report


# -- the encoding and its inverse ---------------------------------------------

def to_bar(h: HomSimplex) -> BarSimplex:
    """[x_1 | x_1^{-1}*x_2 | ... | x_{n-1}^{-1}*x_n], all products in the
    group."""
    return BarSimplex(tuple(pair_image(h, j - 1, j)
                            for j in range(1, h.dimension + 1)))


def to_bar_dropping_inverse(h: HomSimplex) -> BarSimplex:
    """Deliberately wrong encoding (entry 2 forgets the inverse); a
    negative-control hook for the verification suites."""
    entries = list(to_bar(h).entries)
    if h.dimension >= 2:
        entries[1] = bch_product(h.algebra, h.entries[0], h.entries[1])
    return BarSimplex(tuple(entries))


def from_bar(b: BarSimplex, algebra: Deg0LieAlgebra) -> HomSimplex:
    """Inverse encoding: x_j = g_1 * g_2 * ... * g_j (prefix products)."""
    entries = []
    acc = algebra.zero()
    for g in b.entries:
        acc = bch_product(algebra, acc, g)
        entries.append(acc)
    return HomSimplex(algebra, entries)


# -- randomized verification ----------------------------------------------------

def random_hom_simplex(algebra: Deg0LieAlgebra, dimension: int, rng) -> HomSimplex:
    return HomSimplex(algebra,
                      (random_element(algebra, rng) for _ in range(dimension)))


def random_bar_simplex(algebra: Deg0LieAlgebra, dimension: int, rng) -> BarSimplex:
    return BarSimplex(tuple(random_element(algebra, rng) for _ in range(dimension)))


@dataclass
class FamilyResult:
    checks: int = 0
    failures: list[str] = field(default_factory=list)


_MAX_REPORTED_FAILURES = 20


@dataclass
class IsoReport:
    algebra: str
    n_max: int
    samples: int
    seed: int
    families: dict[str, FamilyResult]

    @property
    def total_checks(self) -> int:
        return sum(f.checks for f in self.families.values())

    @property
    def total_failures(self) -> int:
        return sum(len(f.failures) for f in self.families.values())

    @property
    def ok(self) -> bool:
        return self.total_failures == 0

    def _shown(self, failures: list[str]) -> list[str]:
        if len(failures) <= _MAX_REPORTED_FAILURES:
            return list(failures)
        hidden = len(failures) - _MAX_REPORTED_FAILURES
        return failures[:_MAX_REPORTED_FAILURES] + [f"... and {hidden} more"]

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "n_max": self.n_max,
            "samples": self.samples,
            "seed": self.seed,
            "families": {
                name: {"checks": fam.checks,
                       "failures": len(fam.failures),
                       "witnesses": self._shown(fam.failures)}
                for name, fam in self.families.items()
            },
            "checks": self.total_checks,
            "failures": self.total_failures,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [f"isomorphism check: algebra={self.algebra} "
                 f"n_max={self.n_max} samples={self.samples} seed={self.seed}"]
        for name, fam in self.families.items():
            lines.append(f"  {name}: {fam.checks} checks, {len(fam.failures)} failures")
            lines.extend(f"    {w}" for w in self._shown(fam.failures))
        verdict = "PASS" if self.ok else "FAIL"
        lines.append(f"result: {verdict} "
                     f"({self.total_checks} checks, {self.total_failures} failures)")
        return "\n".join(lines)


def verify_isomorphism(algebra: Deg0LieAlgebra, n_max: int = 4, samples: int = 50,
                       seed: int = 0, encode=None,
                       include_identities: bool = True) -> IsoReport:
    """Randomized check that the tuple encoding is a simplicial bijection
    onto the bar construction of the group.

    Per dimension up to n_max, on `samples` seeded random simplices:
    the encoding commutes with every face and degeneracy, both round-trips
    are identities, and (optionally) both sides pass the full simplicial
    identity suite.  The seed fully determines the samples, so identical
    arguments give identical reports.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    enc = encode if encode is not None else to_bar
    rng = random.Random(seed)
    group = exp_group(algebra)
    families = {name: FamilyResult() for name in
                ("face_commute", "degeneracy_commute", "hom_roundtrip", "bar_roundtrip")}
    hom_samples = {n: [random_hom_simplex(algebra, n, rng) for _ in range(samples)]
                   for n in range(n_max + 1)}
    bar_samples = {n: [random_bar_simplex(algebra, n, rng) for _ in range(samples)]
                   for n in range(n_max + 1)}

    for n in range(n_max + 1):
        for index, h in enumerate(hom_samples[n]):
            image = enc(h)
            for i in range(n + 1):
                if n >= 1:
                    fam = families["face_commute"]
                    fam.checks += 1
                    if not bar_equal(group, enc(induced_face(i, h)),
                                     bar_face(group, i, image)):
                        fam.failures.append(
                            f"dim {n} sample {index} face {i}: {format_hom_simplex(h)}")
                fam = families["degeneracy_commute"]
                fam.checks += 1
                if not bar_equal(group, enc(induced_degeneracy(i, h)),
                                 bar_degeneracy(group, i, image)):
                    fam.failures.append(
                        f"dim {n} sample {index} degeneracy {i}: {format_hom_simplex(h)}")
            fam = families["hom_roundtrip"]
            fam.checks += 1
            if not hom_equal(from_bar(image, algebra), h):
                fam.failures.append(
                    f"dim {n} sample {index}: {format_hom_simplex(h)}")
        for index, b in enumerate(bar_samples[n]):
            fam = families["bar_roundtrip"]
            fam.checks += 1
            if not bar_equal(group, enc(from_bar(b, algebra)), b):
                fam.failures.append(
                    f"dim {n} sample {index}: {format_bar_simplex(group, b)}")

    if include_identities:
        bar_report = check_simplicial_identities(bar_maps(group), bar_samples, n_max)
        hom_report = check_simplicial_identities(hom_maps(algebra), hom_samples, n_max)
        families["bar_identities"] = FamilyResult(
            bar_report.checks, [v.to_text() for v in bar_report.violations])
        families["hom_identities"] = FamilyResult(
            hom_report.checks, [v.to_text() for v in hom_report.violations])

    return IsoReport(algebra.label(), n_max, samples, seed, families)
