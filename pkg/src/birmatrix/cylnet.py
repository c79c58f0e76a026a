"""Highway paths on a cylindric grid network and their generating functions.

The network has n horizontal wires (cyclically identified: moving up from
wire 1 wraps to wire n) crossed by m vertical loops.  Wires are labelled
so that the crossing of loop t on wire w carries the weight variable
x_t^{(w + t - 1 mod n)}: superscripts increase along a wire and decrease
going down a loop.  The source of wire w is labelled w and its sink
w + m - 1 (mod n).

A highway path enters at a source and makes one step per loop: Through
(cross the loop, collecting the crossing's weight) or Zigzag (move up one
wire while crossing, collecting nothing).  Never taking two up edges in a
row is built into the encoding.  The path's degree is its number of
Through steps and its sink is source + degree - 1 (mod n).

A family of such paths (distinct sources) is noncrossing when no two
paths share a horizontal segment (boundary stubs included) or a vertical
edge; the only vertex sharing this allows is one path turning west to
north against another passing south to east.  Enumerating the noncrossing
families with sources [n] - {r+1}, sinks [n] - {r-k} and a degree filter
yields combinatorial oracles for tau (exact degree k), sigma / sigma-bar
(degree at most k, with a wrap factor in the first / last loop variables)
and omega (cut the network between two loops and balance both halves).

Switches swap an adjacent Through/Zigzag pair inside one path; an allowed
switch preserves sources, sinks and degree, and repeated switches connect
every family class to a canonical initial family (checked by graph
search in the verification suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .polyalg import (
    MONO_ONE,
    Monomial,
    Polynomial,
    mono_from_pairs,
    mono_mul,
    residue,
    variable,
)

ENUMERATION_GUARD = 24  # refuse classes with m*(n-1) above this


class GuardExceeded(ValueError):
    """The requested enumeration is larger than the size guard allows."""


@dataclass(frozen=True)
class HighwayPath:
    """A source residue plus one Through/Zigzag step per vertical loop."""

    n: int
    m: int
    source: int
    steps: str  # length m over {"T", "Z"}

    def __post_init__(self):
        if not 1 <= self.source <= self.n:
            raise ValueError(f"source {self.source} out of range 1..{self.n}")
        if len(self.steps) != self.m or set(self.steps) - {"T", "Z"}:
            raise ValueError(f"steps must be {self.m} letters over T/Z, got {self.steps!r}")

    @property
    def degree(self) -> int:
        return self.steps.count("T")

    @property
    def sink(self) -> int:
        return residue(self.source + self.degree - 1, self.n)

    def wires(self) -> Tuple[int, ...]:
        """Wire occupied after each loop; entry 0 is the source wire."""
        w = [self.source]
        for step in self.steps:
            w.append(w[-1] if step == "T" else residue(w[-1] - 1, self.n))
        return tuple(w)

    def weight(self) -> Monomial:
        """Product of the crossing weights of the Through steps."""
        pairs = []
        w = self.source
        for t, step in enumerate(self.steps, start=1):
            if step == "T":
                pairs.append((variable(t, w + t - 1, self.n), 1))
            else:
                w = residue(w - 1, self.n)
        return mono_from_pairs(pairs)

    def horizontal_edges(self) -> Set[Tuple[int, int]]:
        """(segment index 0..m, wire): segment t runs from loop t to loop t+1."""
        return {(t, w) for t, w in enumerate(self.wires())}

    def vertical_edges(self) -> Set[Tuple[int, int]]:
        """(loop, lower wire) for every Zigzag step."""
        wires = self.wires()
        return {(t, wires[t - 1]) for t, step in enumerate(self.steps, start=1)
                if step == "Z"}

    def vertex_transitions(self) -> Dict[Tuple[int, int], str]:
        """(loop, wire) -> one of WE, WN, SE for every vertex the path uses."""
        out = {}
        wires = self.wires()
        for t, step in enumerate(self.steps, start=1):
            if step == "T":
                out[(t, wires[t - 1])] = "WE"
            else:
                out[(t, wires[t - 1])] = "WN"
                out[(t, wires[t])] = "SE"
        return out


@dataclass(frozen=True)
class PathFamily:
    """Noncrossing-checkable set of highway paths with distinct sources."""

    paths: Tuple[HighwayPath, ...]

    @staticmethod
    def of(paths: Iterable[HighwayPath]) -> "PathFamily":
        ordered = tuple(sorted(paths, key=lambda p: p.source))
        if len({p.source for p in ordered}) != len(ordered):
            raise ValueError("paths must have pairwise distinct sources")
        return PathFamily(ordered)

    @property
    def degree(self) -> int:
        return sum(p.degree for p in self.paths)

    def sinks(self) -> Tuple[int, ...]:
        return tuple(sorted(p.sink for p in self.paths))

    def weight(self) -> Monomial:
        out = MONO_ONE
        for p in self.paths:
            out = mono_mul(out, p.weight())
        return out

    def to_obj(self) -> dict:
        from .polyalg import mono_pairs

        return {
            "paths": [{"source": p.source, "steps": p.steps} for p in self.paths],
            "degree": self.degree,
            "weight": [[i, r, e] for (i, r), e in mono_pairs(self.weight())],
        }


def paths_noncrossing(a: HighwayPath, b: HighwayPath) -> bool:
    if a.horizontal_edges() & b.horizontal_edges():
        return False
    if a.vertical_edges() & b.vertical_edges():
        return False
    ta, tb = a.vertex_transitions(), b.vertex_transitions()
    for v in ta.keys() & tb.keys():
        if {ta[v], tb[v]} != {"WN", "SE"}:
            return False
    return True


def is_noncrossing(family: PathFamily) -> bool:
    ps = family.paths
    for a in range(len(ps)):
        for b in range(a + 1, len(ps)):
            if not paths_noncrossing(ps[a], ps[b]):
                return False
    return True


@dataclass(frozen=True)
class FamilyClass:
    """Sources [n] - {r+1}, sinks [n] - {r-k}, with a degree filter mode."""

    n: int
    m: int
    r: int
    k: int
    mode: str  # "exact" or "le"

    def __post_init__(self):
        if self.mode not in ("exact", "le"):
            raise ValueError(f"mode must be exact or le, not {self.mode!r}")
        if self.mode == "le" and self.k > self.m * (self.n - 1):
            raise ValueError("degree bound exceeds m(n-1)")

    @property
    def sources(self) -> FrozenSet[int]:
        return frozenset(range(1, self.n + 1)) - {residue(self.r + 1, self.n)}

    @property
    def sinks(self) -> FrozenSet[int]:
        return frozenset(range(1, self.n + 1)) - {residue(self.r - self.k, self.n)}


def _check_guard(n: int, m: int) -> None:
    if m * (n - 1) > ENUMERATION_GUARD:
        raise GuardExceeded(f"m(n-1) = {m * (n - 1)} exceeds the guard {ENUMERATION_GUARD}")


@lru_cache(maxsize=None)
def _families_to(n: int, m: int, sources: FrozenSet[int], sinks: FrozenSet[int],
                 max_degree: int) -> Tuple[PathFamily, ...]:
    """All noncrossing families sources -> sinks with degree <= max_degree."""
    _check_guard(n, m)
    per_source: Dict[int, List[HighwayPath]] = {}
    for s in sorted(sources):
        opts = []
        for bits in range(1 << m):
            steps = "".join("T" if bits & (1 << t) else "Z" for t in range(m))
            p = HighwayPath(n, m, s, steps)
            if p.sink in sinks and p.degree <= max_degree:
                opts.append(p)
        opts.sort(key=lambda p: p.steps)
        per_source[s] = opts

    found: List[PathFamily] = []
    ordered = sorted(sources)

    def extend(idx: int, chosen: List[HighwayPath], used_sinks: Set[int], deg: int):
        if idx == len(ordered):
            if set(used_sinks) == set(sinks):
                found.append(PathFamily.of(chosen))
            return
        for p in per_source[ordered[idx]]:
            if p.sink in used_sinks or deg + p.degree > max_degree:
                continue
            if all(paths_noncrossing(p, q) for q in chosen):
                chosen.append(p)
                used_sinks.add(p.sink)
                extend(idx + 1, chosen, used_sinks, deg + p.degree)
                used_sinks.remove(p.sink)
                chosen.pop()

    extend(0, [], set(), 0)
    found.sort(key=lambda f: tuple(p.steps for p in f.paths))
    return tuple(found)


def enumerate_families(cls: FamilyClass) -> List[PathFamily]:
    """The families of the class in a deterministic order."""
    top = cls.k if cls.mode == "le" else min(cls.k, cls.m * (cls.n - 1))
    fams = _families_to(cls.n, cls.m, cls.sources, cls.sinks, top)
    if cls.mode == "exact":
        return [f for f in fams if f.degree == cls.k]
    return list(fams)


# ---------------------------------------------------------------------------
# generating functions

def _wrap_monomial(n: int, vec: int, power: int) -> Monomial:
    """(x_vec^{(1)} x_vec^{(2)} ... x_vec^{(n)})^power."""
    return mono_from_pairs(((vec, r), power) for r in range(1, n + 1))


def gen_tau(n: int, m: int, r: int, k: int) -> Polynomial:
    """Weight generating function of the exact-degree-k class; equals tau."""
    if k < 0 or k > m * (n - 1):
        return Polynomial.zero()
    fams = enumerate_families(FamilyClass(n, m, r, k, "exact"))
    return Polynomial.from_terms((f.weight(), 1) for f in fams)


def _degree_gap(total: int, deg: int, n: int, what: str) -> int:
    gap = total - deg
    if gap < 0 or gap % n:
        raise AssertionError(f"{what}: degree {deg} not of the form {total} - j*{n}")
    return gap // n


def gen_sigma(n: int, m: int, r: int, k: int) -> Polynomial:
    """sigma oracle: degree <= k families, wrapped in first-loop variables."""
    if k < 0:
        return Polynomial.zero()
    fams = enumerate_families(FamilyClass(n, m, r, k, "le"))
    terms = []
    for f in fams:
        j = _degree_gap(k, f.degree, n, "gen_sigma")
        terms.append((mono_mul(f.weight(), _wrap_monomial(n, 1, j)), 1))
    return Polynomial.from_terms(terms)


def gen_sigma_bar(n: int, m: int, r: int, k: int) -> Polynomial:
    """sigma-bar oracle: degree <= k families, wrapped in last-loop variables."""
    if k < 0:
        return Polynomial.zero()
    fams = enumerate_families(FamilyClass(n, m, r, k, "le"))
    terms = []
    for f in fams:
        j = _degree_gap(k, f.degree, n, "gen_sigma_bar")
        terms.append((mono_mul(f.weight(), _wrap_monomial(n, m, j)), 1))
    return Polynomial.from_terms(terms)


def omega_split(f: PathFamily, cut: int, r: int) -> Tuple[int, int, int]:
    """(l, j1, j2) for the family cut between loops cut and cut+1.

    l is read off the sink set of the left half ([n] - {r+cut-1-l}); the
    two wrap exponents balance the halves' degrees against (n-1)(cut-1)+l
    and (n-1)(m-cut)-l.
    """
    n, m = f.paths[0].n, f.paths[0].m
    left_sinks = {residue(p.wires()[cut] + cut - 1, n) for p in f.paths}
    missing = set(range(1, n + 1)) - left_sinks
    if len(missing) != 1:
        raise AssertionError("cut of a noncrossing family must omit exactly one sink")
    l = (r + cut - 1 - missing.pop()) % n
    deg1 = sum(p.steps[:cut].count("T") for p in f.paths)
    deg2 = f.degree - deg1
    j1 = _degree_gap((n - 1) * (cut - 1) + l, deg1, n, "omega_split left")
    j2 = _degree_gap((n - 1) * (m - cut) - l, deg2, n, "omega_split right")
    return l, j1, j2


def omega_weight(f: PathFamily, cut: int, r: int) -> Monomial:
    n, m = f.paths[0].n, f.paths[0].m
    _, j1, j2 = omega_split(f, cut, r)
    return mono_mul(mono_mul(_wrap_monomial(n, 1, j1), f.weight()),
                    _wrap_monomial(n, m, j2))


def omega_class(n: int, m: int, r: int) -> List[PathFamily]:
    """The cut-independent family class behind every omega_cut^{(r)}."""
    return enumerate_families(FamilyClass(n, m, r, (m - 1) * (n - 1), "le"))


def gen_omega(n: int, m: int, r: int, cut: int) -> Polynomial:
    """omega oracle: weight the (m-1)(n-1) class by the cut at position cut."""
    if not 1 <= cut <= m - 1:
        raise ValueError(f"cut {cut} out of range 1..{m - 1}")
    return Polynomial.from_terms(
        (omega_weight(f, cut, r), 1) for f in omega_class(n, m, r)
    )


# ---------------------------------------------------------------------------
# switches and the initial family

def apply_switch(family: PathFamily, path_index: int, position: int) -> Optional[PathFamily]:
    """Swap steps position, position+1 of one path, if the result is allowed.

    Returns None when the steps are equal (nothing to swap) or when the
    swapped family is no longer noncrossing.  The highway condition cannot
    break: one step per loop is structural.
    """
    p = family.paths[path_index]
    if not 0 <= position < p.m - 1:
        raise IndexError(f"switch position {position} out of range 0..{p.m - 2}")
    a, b = p.steps[position], p.steps[position + 1]
    if a == b:
        return None
    steps = p.steps[:position] + b + a + p.steps[position + 2:]
    swapped = HighwayPath(p.n, p.m, p.source, steps)
    out = PathFamily.of(
        [swapped if q is p else q for q in family.paths]
    )
    return out if is_noncrossing(out) else None


def initial_family(n: int, m: int, r: int, k: int) -> PathFamily:
    """The canonical degree-k family: path i goes straight through the first
    l+1 (i <= t) or l (i > t) loops and zigzags the rest, k = l(n-1)+t."""
    if not 0 <= k <= m * (n - 1):
        raise ValueError(f"degree {k} out of range 0..{m * (n - 1)}")
    l, t = divmod(k, n - 1)
    paths = []
    for i in range(1, n):
        through = l + 1 if i <= t else l
        steps = "T" * through + "Z" * (m - through)
        paths.append(HighwayPath(n, m, residue(r - i + 1, n), steps))
    return PathFamily.of(paths)


def switch_component(start: PathFamily) -> Set[PathFamily]:
    """All families reachable from start by allowed switches."""
    seen = {start}
    queue = [start]
    while queue:
        f = queue.pop()
        for idx in range(len(f.paths)):
            for pos in range(f.paths[idx].m - 1):
                g = apply_switch(f, idx, pos)
                if g is not None and g not in seen:
                    seen.add(g)
                    queue.append(g)
    return seen


def degree_of_class(sources: Iterable[int], sinks: Iterable[int], n: int) -> int:
    """The common degree residue sum(sinks) - sum(sources) + count (mod n)."""
    s, r = list(sources), list(sinks)
    if len(s) != len(r):
        raise ValueError("source and sink sets must have equal size")
    return (sum(r) - sum(s) + len(s)) % n
