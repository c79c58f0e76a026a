"""Closed forms for the action of 1-shifts and transposition-like words.

The permutations covered, written with their rightmost factor acting
first, are

* the down 1-shift  s_{j-1} s_{j-2} ... s_i     (stored word [i, ..., j-1]),
* the up 1-shift    s_i s_{i+1} ... s_{j-1}     (stored word [j-1, ..., i]),
* the first family  s_k ... s_{j-2} s_{j-1} s_{j-2} ... s_i   for i <= k < j,
* the dual family   s_{k-1} ... s_{i+1} s_i s_{i+1} ... s_{j-1} for i < k <= j,

where taking k = i in the first family (k = j in the dual) gives the
transposition that switches positions i and j.  Every closed form is a
single variable prefactor times a ratio of subtraction-free sigma /
sigma-bar / omega polynomials, returned as a
:class:`~birmatrix.polyalg.FactoredRational` whose factors are exactly
those polynomials (so comparisons against the generator-by-generator
action cancel factor by factor).

full_action assembles the entire transformed tuple of either family from
closed forms alone: positions below the window come from down 1-shifts,
position k from the family's own formula, positions strictly between k
and j (first family; mirrored for the dual) from the conjugated
transposition formula, and the far end of the window from the extremal
1-shift formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .polyalg import (
    MONO_ONE,
    FactoredRational,
    Polynomial,
    RationalFunction,
    mono_var,
    variable,
)
from .specialfn import omega, sigma, sigma_bar


@dataclass(frozen=True)
class ShiftSpec:
    """A 1-shift: direction "down" is s_{j-1}...s_i, "up" is s_i...s_{j-1}."""

    n: int
    m: int
    i: int
    j: int
    direction: str

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.m:
            raise ValueError(f"need 1 <= i < j <= m, got i={self.i}, j={self.j}, m={self.m}")
        if self.direction not in ("down", "up"):
            raise ValueError(f"direction must be down or up, not {self.direction!r}")

    def word(self) -> List[int]:
        """Stored word (leftmost letter applied first)."""
        if self.direction == "down":
            return list(range(self.i, self.j))
        return list(range(self.j - 1, self.i - 1, -1))


@dataclass(frozen=True)
class TranspositionSpec:
    """A transposition-like word of the first or dual family."""

    n: int
    m: int
    i: int
    j: int
    k: int
    family: str

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.m:
            raise ValueError(f"need 1 <= i < j <= m, got i={self.i}, j={self.j}, m={self.m}")
        if self.i >= self.j - 1:
            raise ValueError("need i < j-1; adjacent positions are a plain generator")
        if self.family not in ("first", "dual"):
            raise ValueError(f"family must be first or dual, not {self.family!r}")
        if self.family == "first" and not self.i <= self.k < self.j:
            raise ValueError(f"first family needs i <= k < j, got k={self.k}")
        if self.family == "dual" and not self.i < self.k <= self.j:
            raise ValueError(f"dual family needs i < k <= j, got k={self.k}")

    def word(self) -> List[int]:
        """Stored word (leftmost letter applied first)."""
        if self.family == "first":
            return list(range(self.i, self.j)) + list(range(self.j - 2, self.k - 1, -1))
        return list(range(self.j - 1, self.i - 1, -1)) + list(range(self.i + 1, self.k))


def _ratio(n: int, prefactor: Optional[Tuple[int, int]],
           num: Sequence[Polynomial], den: Sequence[Polynomial]) -> FactoredRational:
    mono = mono_var(variable(*prefactor, n)) if prefactor else MONO_ONE
    out = FactoredRational(Fraction(1), mono, MONO_ONE, {}, {})
    for p in num:
        out = out * FactoredRational.from_poly(p)
    for p in den:
        out = out / FactoredRational.from_poly(p)
    return out


# ---------------------------------------------------------------------------
# 1-shifts

def oneshift_kappa(spec: ShiftSpec, r: int) -> FactoredRational:
    """kappa_r of the pair the 1-shift brings together.

    Down: kappa_r(s_{j-2}...s_i(x_{j-1}), x_j); up: kappa_r(x_i,
    s_{i+1}...s_{j-1}(x_{i+1})).  For j = i+1 both reduce to the plain
    kappa_r(x_i, x_{i+1}).
    """
    n, i, j = spec.n, spec.i, spec.j
    d = j - i
    if spec.direction == "down":
        return _ratio(n, None,
                      [sigma(n, (n - 1) * d, r - j + i, i, j)],
                      [sigma(n, (n - 1) * (d - 1), r - j + i, i, j - 1)] if d > 1 else [])
    return _ratio(n, None,
                  [sigma_bar(n, (n - 1) * d, r - 1, i, j)],
                  [sigma_bar(n, (n - 1) * (d - 1), r, i + 1, j)] if d > 1 else [])


def oneshift_action(spec: ShiftSpec, k: int, r: int) -> FactoredRational:
    """The 1-shift applied to x_k^{(r)}.

    Down allows i <= k <= j (k = j is the extremal case), up allows
    i <= k <= j with k = i extremal.
    """
    n, i, j = spec.n, spec.i, spec.j
    if spec.direction == "down":
        if k == j:
            return _ratio(n, (i, r - j + i),
                          [sigma(n, (n - 1) * (j - i), r - j + i - 1, i, j)],
                          [sigma(n, (n - 1) * (j - i), r - j + i, i, j)])
        if not i <= k < j:
            raise ValueError(f"target {k} outside the window of the down shift")
        return _ratio(n, (k + 1, r + 1),
                      [sigma(n, (n - 1) * (k + 1 - i), r - k + i, i, k + 1),
                       sigma(n, (n - 1) * (k - i), r - k + i - 1, i, k)],
                      [sigma(n, (n - 1) * (k + 1 - i), r - k + i - 1, i, k + 1),
                       sigma(n, (n - 1) * (k - i), r - k + i, i, k)])
    if k == i:
        return _ratio(n, (j, r + j - i),
                      [sigma_bar(n, (n - 1) * (j - i), r, i, j)],
                      [sigma_bar(n, (n - 1) * (j - i), r - 1, i, j)])
    if not i < k <= j:
        raise ValueError(f"target {k} outside the window of the up shift")
    return _ratio(n, (k - 1, r - 1),
                  [sigma_bar(n, (n - 1) * (j - k + 1), r - 2, k - 1, j),
                   sigma_bar(n, (n - 1) * (j - k), r, k, j)],
                  [sigma_bar(n, (n - 1) * (j - k + 1), r - 1, k - 1, j),
                   sigma_bar(n, (n - 1) * (j - k), r - 1, k, j)])


# ---------------------------------------------------------------------------
# transposition families

def trans_kappa(spec: TranspositionSpec, r: int) -> FactoredRational:
    """kappa_r(s(x_{k-1}), s(x_k)) for the first family, i < k < j."""
    n, i, j, k = spec.n, spec.i, spec.j, spec.k
    if spec.family != "first" or not spec.i < k < spec.j:
        raise ValueError("defined for the first family with i < k < j")
    return _ratio(n, None,
                  [sigma(n, (n - 1) * (k - i), r - k + i, i, k),
                   omega(n, k - 1, r - k + i, i, j)],
                  [sigma(n, (n - 1) * (k - i - 1), r - k + i, i, k - 1),
                   omega(n, k, r - k + i, i, j)])


def trans_kappa_dual(spec: TranspositionSpec, r: int) -> FactoredRational:
    """kappa_r(s(x_k), s(x_{k+1})) for the dual family, i < k < j."""
    n, i, j, k = spec.n, spec.i, spec.j, spec.k
    if spec.family != "dual" or not spec.i < k < spec.j:
        raise ValueError("defined for the dual family with i < k < j")
    return _ratio(n, None,
                  [sigma_bar(n, (n - 1) * (j - k), r - 1, k, j),
                   omega(n, k, r - k + i - 1, i, j)],
                  [sigma_bar(n, (n - 1) * (j - k - 1), r, k + 1, j),
                   omega(n, k - 1, r - k + i - 1, i, j)])


def trans_action(spec: TranspositionSpec, r: int) -> FactoredRational:
    """The first family applied to x_k^{(r)}, i <= k < j."""
    n, i, j, k = spec.n, spec.i, spec.j, spec.k
    if spec.family != "first":
        raise ValueError("defined for the first family")
    num = [omega(n, k, r - k + i, i, j)]
    den = [omega(n, k, r - k + i - 1, i, j)]
    if k > i:
        num.append(sigma(n, (n - 1) * (k - i), r - k + i - 1, i, k))
        den.append(sigma(n, (n - 1) * (k - i), r - k + i, i, k))
    return _ratio(n, (j, r + j - k), num, den)


def trans_action_dual(spec: TranspositionSpec, r: int) -> FactoredRational:
    """The dual family applied to x_k^{(r)}, i < k <= j."""
    n, i, j, k = spec.n, spec.i, spec.j, spec.k
    if spec.family != "dual":
        raise ValueError("defined for the dual family")
    num = [omega(n, k - 1, r - k + i - 1, i, j)]
    den = [omega(n, k - 1, r - k + i, i, j)]
    if k < j:
        num.append(sigma_bar(n, (n - 1) * (j - k), r, k, j))
        den.append(sigma_bar(n, (n - 1) * (j - k), r - 1, k, j))
    return _ratio(n, (i, r - k + i), num, den)


def trans_conjugate(n: int, i: int, j: int, k: int, r: int) -> FactoredRational:
    """s_i ... s_{j-2} s_{j-1} s_{j-2} ... s_i applied to x_k^{(r)}, i < k < j."""
    if not i < k < j:
        raise ValueError(f"need i < k < j, got i={i}, k={k}, j={j}")
    return _ratio(n, (k, r),
                  [omega(n, k, r - k + i, i, j),
                   omega(n, k - 1, r - k + i - 1, i, j)],
                  [omega(n, k - 1, r - k + i, i, j),
                   omega(n, k, r - k + i - 1, i, j)])


# ---------------------------------------------------------------------------
# the fully assembled tuple

def full_action(spec: TranspositionSpec) -> Dict[int, Dict[int, FactoredRational]]:
    """The whole transformed tuple from closed forms only.

    Returns {position: {superscript: value}} for all m positions; positions
    outside i..j are the untouched variables.
    """
    n, m, i, j, k = spec.n, spec.m, spec.i, spec.j, spec.k
    out: Dict[int, Dict[int, FactoredRational]] = {}

    def fill(pos, fn):
        out[pos] = {r: fn(r) for r in range(1, n + 1)}

    for pos in range(1, m + 1):
        if pos < i or pos > j:
            out[pos] = {r: FactoredRational.var(variable(pos, r, n))
                        for r in range(1, n + 1)}
    if spec.family == "first":
        down = ShiftSpec(n, m, i, j, "down")
        for pos in range(i, k):
            # only generators up to s_pos move position pos, so the down
            # 1-shift formula with target pos applies verbatim
            fill(pos, lambda r, p=pos: oneshift_action(down, p, r))
        if k == i:
            fill(i, lambda r: oneshift_action(ShiftSpec(n, m, i, j, "up"), i, r))
        else:
            fill(k, lambda r: trans_action(spec, r))
        for pos in range(k + 1, j):
            fill(pos, lambda r, p=pos: trans_conjugate(n, i, j, p, r))
        fill(j, lambda r: oneshift_action(down, j, r))
    else:
        up = ShiftSpec(n, m, i, j, "up")
        fill(i, lambda r: oneshift_action(up, i, r))
        for pos in range(i + 1, k):
            fill(pos, lambda r, p=pos: trans_conjugate(n, i, j, p, r))
        if k == j:
            fill(j, lambda r: oneshift_action(ShiftSpec(n, m, i, j, "down"), j, r))
        else:
            fill(k, lambda r: trans_action_dual(spec, r))
        for pos in range(k + 1, j + 1):
            fill(pos, lambda r, p=pos: oneshift_action(up, p, r))
    return out
