"""The birational R-matrix and the symmetric group action it generates.

A state is an m-tuple of n-component vectors whose entries are rational
functions in the starting variables x_i^{(r)}.  The map

    eta: (a, b) -> (b', a'),   a'_i = a_{i-1} kappa_{i-1}(a,b) / kappa_i(a,b),
                               b'_i = b_{i+1} kappa_{i+1}(a,b) / kappa_i(a,b),

with kappa_i(a, b) = sum_{j=i}^{i+n-1} (prod_{k=i+1}^{j} b_k)
(prod_{k=j+1}^{i+n-1} a_k), all component indices cyclic mod n, is an
involution satisfying the braid relation, so the generator actions
eta_i (apply eta at positions i, i+1) extend to an action of S_m.

Words over the generators are stored in application order: ``[w1, w2, ...]``
acts as eta_{wk} o ... o eta_{w1} (leftmost letter acts first).  A product
of transpositions written on paper as ``s_a s_b ... s_z`` applies its
rightmost factor first, so its stored word is the reversed letter list
(:func:`word_from_expr`).

Entries are kept internally as lazily factored fractions so that the
kappa factors introduced by one generator application cancel structurally
during the next one; the public view of every entry is a normalized
:class:`~birmatrix.polyalg.RationalFunction`.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .polyalg import (
    FactoredRational,
    FieldPoint,
    Polynomial,
    RationalFunction,
    residue,
    rf_from_obj,
    rf_to_obj,
    variable,
)


def kappa(a: Sequence, b: Sequence, i: int, n: int):
    """kappa_i(a, b) over cyclic component index i in 1..n.

    a and b are length-n sequences (1-based semantics, index c means
    component ``residue(c, n)``) of any ring elements supporting * and +.
    On symbolic vectors the result is subtraction free with exactly n
    monomials of degree n-1.
    """
    if not 1 <= i <= n:
        raise IndexError(f"component index {i} out of range 1..{n}")

    def at(vec, c):
        return vec[residue(c, n) - 1]

    total = None
    for j in range(i, i + n):
        term = None
        for k in range(i + 1, j + 1):
            term = at(b, k) if term is None else term * at(b, k)
        for k in range(j + 1, i + n):
            term = at(a, k) if term is None else term * at(a, k)
        if term is None:
            term = _one_like(a[0])
        total = term if total is None else total + term
    return total


def _one_like(x):
    if isinstance(x, FactoredRational):
        return FactoredRational.one()
    if isinstance(x, RationalFunction):
        return RationalFunction(Polynomial.const(1))
    if isinstance(x, Polynomial):
        return Polynomial.const(1)
    return 1


def eta(a: Sequence, b: Sequence, n: int) -> Tuple[list, list]:
    """One R-matrix application: returns the pair (b', a') in that order."""
    kap = [kappa(a, b, i, n) for i in range(1, n + 1)]
    for i, k in enumerate(kap):
        if _is_zero(k):
            raise ZeroDivisionError(f"kappa_{i + 1} vanishes; input is degenerate")

    def at(vec, c):
        return vec[residue(c, n) - 1]

    a_new = [at(a, i - 1) * at(kap, i - 1) / at(kap, i) for i in range(1, n + 1)]
    b_new = [at(b, i + 1) * at(kap, i + 1) / at(kap, i) for i in range(1, n + 1)]
    return b_new, a_new


def _is_zero(x) -> bool:
    if isinstance(x, (FactoredRational, RationalFunction, Polynomial)):
        return x.is_zero()
    return x == 0


class VectorTuple:
    """An m-tuple of n-vectors of rational functions, the state of the action.

    entry(i, r) is the component x_i^{(r)} of the current state; the fresh
    symbolic tuple has entry(i, r) equal to the variable x_i^{(r)}.
    """

    __slots__ = ("n", "m", "_grid")

    def __init__(self, n: int, m: int, grid: List[list]):
        if n < 2:
            raise ValueError(f"need at least 2 components per vector, got n={n}")
        if m < 1:
            raise ValueError(f"need at least one vector, got m={m}")
        self.n = n
        self.m = m
        self._grid = grid  # m lists of n FactoredRational

    @staticmethod
    def symbolic(n: int, m: int) -> "VectorTuple":
        grid = [
            [FactoredRational.var(variable(i, r, n)) for r in range(1, n + 1)]
            for i in range(1, m + 1)
        ]
        return VectorTuple(n, m, grid)

    @staticmethod
    def from_rationals(n: int, m: int, entries: Sequence[Sequence[RationalFunction]]) -> "VectorTuple":
        grid = [[FactoredRational.from_rational(entries[i][r]) for r in range(n)]
                for i in range(m)]
        return VectorTuple(n, m, grid)

    def entry(self, i: int, r: int) -> RationalFunction:
        """The normalized rational function at position i, superscript r."""
        return self.raw_entry(i, r).to_rational()

    def raw_entry(self, i: int, r: int) -> FactoredRational:
        if not 1 <= i <= self.m:
            raise IndexError(f"vector index {i} out of range 1..{self.m}")
        return self._grid[i - 1][residue(r, self.n) - 1]

    def vector(self, i: int) -> list:
        return list(self._grid[i - 1])

    def apply_generator(self, i: int) -> "VectorTuple":
        """eta applied at positions i, i+1; other positions are shared as-is."""
        if not 1 <= i < self.m:
            raise IndexError(f"generator index {i} out of range 1..{self.m - 1}")
        first, second = eta(self._grid[i - 1], self._grid[i], self.n)
        grid = list(self._grid)
        grid[i - 1] = first
        grid[i] = second
        return VectorTuple(self.n, self.m, grid)

    def apply_word(self, word: Sequence[int]) -> "VectorTuple":
        """Apply letters left to right (leftmost letter acts first)."""
        out = self
        for w in word:
            out = out.apply_generator(w)
        return out

    def apply_perm(self, one_line: Sequence[int]) -> "VectorTuple":
        return self.apply_word(reduced_word(one_line))

    def loop_energy(self, i: int) -> FactoredRational:
        """Product of all n components of the vector at position i."""
        out = FactoredRational.one()
        for entry in self._grid[i - 1]:
            out = out * entry
        return out

    def entries_equal(self, other: "VectorTuple") -> bool:
        """Mathematical (cross-multiplied) equality of every entry."""
        if (self.n, self.m) != (other.n, other.m):
            return False
        return all(
            self._grid[i][r].equals(other._grid[i][r])
            for i in range(self.m)
            for r in range(self.n)
        )

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "entries": [[rf_to_obj(f.to_rational()) for f in row] for row in self._grid],
        }

    @staticmethod
    def from_obj(obj: dict) -> "VectorTuple":
        entries = [[rf_from_obj(e) for e in row] for row in obj["entries"]]
        return VectorTuple.from_rationals(obj["n"], obj["m"], entries)

    def __repr__(self) -> str:
        return f"VectorTuple(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# words and permutations

def word_from_expr(letters: Sequence[int], m: int) -> List[int]:
    """Stored word for a product written with its rightmost factor acting first."""
    word = [int(w) for w in reversed(letters)]
    check_word(word, m)
    return word


def check_word(word: Sequence[int], m: int) -> None:
    for w in word:
        if not 1 <= w <= m - 1:
            raise ValueError(f"letter {w} out of range 1..{m - 1}")


def permutation_of_word(word: Sequence[int], m: int) -> Tuple[int, ...]:
    """One-line permutation realized by a word on positions.

    Applying the word to a tuple carries the vector energies around; the
    result at position i holds the energy that started at position g(i),
    and this returns g.
    """
    check_word(word, m)
    markers = list(range(1, m + 1))
    for w in reversed(word):
        markers[w - 1], markers[w] = markers[w], markers[w - 1]
    return tuple(markers)


def inversions(one_line: Sequence[int]) -> int:
    m = len(one_line)
    return sum(
        1 for a in range(m) for b in range(a + 1, m) if one_line[a] > one_line[b]
    )


def _check_perm(one_line: Sequence[int]) -> None:
    if sorted(one_line) != list(range(1, len(one_line) + 1)):
        raise ValueError(f"{one_line!r} is not a permutation of 1..{len(one_line)}")


def reduced_word(one_line: Sequence[int], strategy: str = "ltr") -> List[int]:
    """A reduced word for the permutation, length = inversion count.

    The canonical strategy bubble-sorts the one-line notation left to
    right; "rtl" scans right to left and is kept as an independent second
    strategy for word-independence checks.  The produced word realizes the
    permutation in the sense of :func:`permutation_of_word`.
    """
    _check_perm(one_line)
    u = list(one_line)
    m = len(u)
    swaps: List[int] = []
    changed = True
    while changed:
        changed = False
        positions = range(m - 1) if strategy == "ltr" else range(m - 2, -1, -1)
        for a in positions:
            if u[a] > u[a + 1]:
                u[a], u[a + 1] = u[a + 1], u[a]
                swaps.append(a + 1)
                changed = True
    return swaps


# ---------------------------------------------------------------------------
# numeric (prime field) action, for probabilistic identity checks

def numeric_tuple(n: int, m: int, point: FieldPoint) -> List[List[int]]:
    """The grid entry[i-1][r-1] = point value of x_i^{(r)}."""
    return [
        [point[variable(i, r, n)] for r in range(1, n + 1)]
        for i in range(1, m + 1)
    ]


def apply_word_mod(grid: List[List[int]], word: Sequence[int], point: FieldPoint) -> List[List[int]]:
    """Apply a generator word to a numeric grid in the prime field.

    Raises VanishingDenominator when some kappa evaluates to zero, so the
    caller can retry with a fresh point.
    """
    from .polyalg import VanishingDenominator

    p = point.prime
    n = len(grid[0])
    grid = [list(row) for row in grid]
    for w in word:
        a, b = grid[w - 1], grid[w]
        kap = []
        for i in range(1, n + 1):
            total = 0
            for j in range(i, i + n):
                term = 1
                for k in range(i + 1, j + 1):
                    term = term * b[(k - 1) % n] % p
                for k in range(j + 1, i + n):
                    term = term * a[(k - 1) % n] % p
                total = (total + term) % p
            kap.append(total)
        if any(k == 0 for k in kap):
            raise VanishingDenominator("kappa vanishes at the point")
        inv = [pow(k, p - 2, p) for k in kap]
        a_new = [a[(i - 2) % n] * kap[(i - 2) % n] % p * inv[i - 1] % p
                 for i in range(1, n + 1)]
        b_new = [b[i % n] * kap[i % n] % p * inv[i - 1] % p
                 for i in range(1, n + 1)]
        grid[w - 1], grid[w] = b_new, a_new
    return grid
