"""Bar construction of a group and a simplicial-identity checker.

Groups enter through a small callback record, so anything with an exact
equality test plugs in.  Everything here is pure and stateless; the
callbacks must be pure too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

__all__ = [
    "BarSimplex",
    "Group",
    "IdentityViolation",
    "SimplicialMaps",
    "SimplicialReport",
    "bar_degeneracy",
    "bar_equal",
    "bar_face",
    "bar_maps",
    "check_simplicial_identities",
    "format_bar_simplex",
]


@dataclass(frozen=True)
class Group:
    """A group presented as callbacks over an opaque carrier."""

    identity: Any
    product: Callable[[Any, Any], Any]
    inverse: Callable[[Any], Any]
    equal: Callable[[Any, Any], bool]
    describe: Callable[[Any], str] = str


@dataclass(frozen=True)
class BarSimplex:
    """[g_1 | ... | g_n]; the empty tuple is the unique 0-simplex.

    Entries may include the identity (degenerate simplices are legal).
    """

    entries: tuple

    @property
    def dimension(self) -> int:
        return len(self.entries)


def bar_face(group: Group, i: int, simplex: BarSimplex) -> BarSimplex:
    """Face d_i: drop g_1 (i=0), drop g_n (i=n), or multiply the adjacent
    pair g_i g_{i+1} in between."""
    entries = simplex.entries
    n = len(entries)
    if n == 0 or not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range for dimension {n}")
    if i == 0:
        return BarSimplex(entries[1:])
    if i == n:
        return BarSimplex(entries[:-1])
    merged = group.product(entries[i - 1], entries[i])
    return BarSimplex(entries[: i - 1] + (merged,) + entries[i + 1:])


def bar_degeneracy(group: Group, i: int, simplex: BarSimplex) -> BarSimplex:
    """Degeneracy s_i: insert the identity so it becomes entry i+1."""
    entries = simplex.entries
    n = len(entries)
    if not 0 <= i <= n:
        raise IndexError(f"degeneracy index {i} out of range for dimension {n}")
    return BarSimplex(entries[:i] + (group.identity,) + entries[i:])


def bar_equal(group: Group, s: BarSimplex, t: BarSimplex) -> bool:
    return (s.dimension == t.dimension
            and all(group.equal(a, b) for a, b in zip(s.entries, t.entries)))


def format_bar_simplex(group: Group, s: BarSimplex) -> str:
    return "[" + "|".join(group.describe(g) for g in s.entries) + "]"


@dataclass(frozen=True)
class SimplicialMaps:
    """A simplicial set presented as callbacks: face(i, x), degeneracy(i, x),
    an exact equality and a printer for witnesses."""

    face: Callable[[int, Any], Any]
    degeneracy: Callable[[int, Any], Any]
    equal: Callable[[Any, Any], bool]
    describe: Callable[[Any], str] = str


def bar_maps(group: Group) -> SimplicialMaps:
    return SimplicialMaps(
        face=lambda i, s: bar_face(group, i, s),
        degeneracy=lambda i, s: bar_degeneracy(group, i, s),
        equal=lambda s, t: bar_equal(group, s, t),
        describe=lambda s: format_bar_simplex(group, s),
    )


@dataclass(frozen=True)
class IdentityViolation:
    family: str
    i: int
    j: int
    dimension: int
    witness: str

    def to_text(self) -> str:
        return (f"{self.family} violated at dimension {self.dimension} "
                f"(i={self.i}, j={self.j}) on {self.witness}")

    def to_dict(self) -> dict:
        return {"family": self.family, "i": self.i, "j": self.j,
                "dimension": self.dimension, "witness": self.witness}


@dataclass
class SimplicialReport:
    checks: int = 0
    violations: list[IdentityViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"checks": self.checks,
                "violations": [v.to_dict() for v in self.violations],
                "ok": self.ok}

    def to_text(self) -> str:
        lines = [f"{self.checks} identity checks, {len(self.violations)} violations"]
        lines.extend("  " + v.to_text() for v in self.violations)
        return "\n".join(lines)


def check_simplicial_identities(maps: SimplicialMaps,
                                samples: Mapping[int, Sequence],
                                n_max: int) -> SimplicialReport:
    """Check all five simplicial identity families on the given samples.

    `samples` maps each dimension 0..n_max to the simplices to test there.
    Families, for an n-simplex x:

        dd    : d_i d_j x = d_{j-1} d_i x          for i < j
        ss    : s_i s_j x = s_{j+1} s_i x          for i <= j
        ds_lt : d_i s_j x = s_{j-1} d_i x          for i < j
        ds_eq : d_j s_j x = x = d_{j+1} s_j x
        ds_gt : d_i s_j x = s_j d_{i-1} x          for i > j + 1

    Violations are report content, not exceptions.
    """
    report = SimplicialReport()
    d, s, equal = maps.face, maps.degeneracy, maps.equal

    def check(family: str, i: int, j: int, dimension: int, ok: bool, x) -> None:
        report.checks += 1
        if not ok:
            report.violations.append(
                IdentityViolation(family, i, j, dimension, maps.describe(x)))

    for n in range(n_max + 1):
        for x in samples.get(n, ()):
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        check("dd", i, j, n,
                              equal(d(i, d(j, x)), d(j - 1, d(i, x))), x)
            for j in range(n + 1):
                for i in range(j + 1):
                    check("ss", i, j, n,
                          equal(s(i, s(j, x)), s(j + 1, s(i, x))), x)
            for j in range(n + 1):
                sx = s(j, x)
                for i in range(n + 2):
                    if i < j:
                        check("ds_lt", i, j, n,
                              equal(d(i, sx), s(j - 1, d(i, x))), x)
                    elif i in (j, j + 1):
                        check("ds_eq", i, j, n, equal(d(i, sx), x), x)
                    else:
                        check("ds_gt", i, j, n,
                              equal(d(i, sx), s(j, d(i - 1, x))), x)
    return report
