"""Exact sparse multivariate polynomial and rational-function arithmetic.

Variables are formal symbols x_i^{(r)} indexed by a vector position i >= 1
and a cyclic superscript r in 1..n; a variable is stored as the pair
``(i, r)`` with the superscript already reduced into 1..n (see
:func:`residue`).  A polynomial maps monomials to nonzero arbitrary
precision integer coefficients.  The unit monomial is empty and the zero
polynomial has an empty term map, so structural equality coincides with
mathematical equality.

Monomials are packed into single integers (one 16-bit exponent lane per
variable, lanes assigned by a process-wide registry) so that a monomial
product is one integer addition.  The packing is invisible outside this
module: every external ordering and serialization sorts variables by
``(i, r)`` ascending, and the monomial order used for leading terms, the
rational-function sign convention and exact division is graded
lexicographic over that variable order.

Rational functions are pairs of polynomials normalized by integer content,
by the sign of the denominator's leading coefficient, and by cancelling
the common monomial factor of all terms.  No polynomial GCD is computed;
mathematical equality of rational functions is decided by cross
multiplication (:func:`rf_eq`), with a divide-out shortcut when one side
is small (:meth:`FactoredRational.equals_rational`).

:class:`FactoredRational` is a lazily factored fraction used where long
products of generator applications would otherwise blow up: numerator and
denominator are kept as multisets of polynomial factors and structurally
equal factors cancel without any GCD computation.

Modular evaluation (:class:`FieldPoint`, :func:`eval_mod`) supports
probabilistic identity checking at random points of a large prime field.
"""

from __future__ import annotations

import heapq
import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

# Default prime for modular evaluation: the Mersenne prime 2^61 - 1.
DEFAULT_PRIME = (1 << 61) - 1

Variable = Tuple[int, int]  # (vec_index, superscript), both >= 1
Monomial = int  # packed exponent lanes; 0 is the unit monomial

MONO_ONE: Monomial = 0

_LANE_BITS = 16
_LANE_MAX = 1 << 15  # exponents must stay below this for carry-free packing
_LANE_MASK = (1 << _LANE_BITS) - 1

_VAR_LANE: dict = {}
_LANE_VAR: list = []
_TOP_MASK = 0  # the 0x8000 bit of every registered lane


class VanishingDenominator(ArithmeticError):
    """A denominator evaluated to zero at a field point."""


def residue(r: int, n: int) -> int:
    """Reduce a superscript into 1..n; the residue 0 maps to n."""
    if n < 2:
        raise ValueError(f"cyclic modulus must be at least 2, got n={n}")
    r %= n
    return r if r else n


def variable(i: int, r: int, n: int) -> Variable:
    """The variable x_i^{(r)} with the superscript reduced mod n."""
    if i < 1:
        raise ValueError(f"vector index must be positive, got {i}")
    return (i, residue(r, n))


def _lane(v: Variable) -> int:
    lane = _VAR_LANE.get(v)
    if lane is None:
        global _TOP_MASK
        lane = len(_LANE_VAR)
        _VAR_LANE[v] = lane
        _LANE_VAR.append(v)
        _TOP_MASK |= (1 << (_LANE_BITS - 1)) << (lane * _LANE_BITS)
    return lane


# ---------------------------------------------------------------------------
# monomial helpers

def mono_from_pairs(pairs: Iterable[Tuple[Variable, int]]) -> Monomial:
    m = 0
    for v, e in pairs:
        if e < 0 or e >= _LANE_MAX:
            raise ValueError(f"exponent {e} out of range")
        if e:
            m += e << (_lane(v) * _LANE_BITS)
    return m


def mono_var(v: Variable, e: int = 1) -> Monomial:
    return mono_from_pairs([(v, e)])


def mono_pairs(m: Monomial) -> Tuple[Tuple[Variable, int], ...]:
    """The (variable, exponent) pairs sorted by variable (i, r) ascending."""
    out = []
    lane = 0
    while m:
        e = m & _LANE_MASK
        if e:
            out.append((_LANE_VAR[lane], e))
        m >>= _LANE_BITS
        lane += 1
    out.sort()
    return tuple(out)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return a + b


def mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b, or None when some exponent would go negative."""
    t = (a | _TOP_MASK) - b
    if t & _TOP_MASK != _TOP_MASK:
        return None
    return t ^ _TOP_MASK


def mono_deg(m: Monomial) -> int:
    d = 0
    while m:
        d += m & _LANE_MASK
        m >>= _LANE_BITS
    return d


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    g = 0
    lane = 0
    while a and b:
        ea, eb = a & _LANE_MASK, b & _LANE_MASK
        if ea and eb:
            g += min(ea, eb) << (lane * _LANE_BITS)
        a >>= _LANE_BITS
        b >>= _LANE_BITS
        lane += 1
    return g


def mono_key(m: Monomial):
    """Sort key: ascending key order is descending graded-lex monomial order."""
    pairs = mono_pairs(m)
    return (-sum(e for _, e in pairs), tuple((v, -e) for v, e in pairs))


class Polynomial:
    """Canonical sparse polynomial over the integers.

    The term map never stores a zero coefficient, so ``==`` is mathematical
    equality.  Instances are immutable by convention and hashable (used as
    factor keys by :class:`FactoredRational`).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self._terms: dict = dict(terms) if terms else {}
        self._hash: Optional[int] = None

    # -- constructors

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(c: int) -> "Polynomial":
        return Polynomial({MONO_ONE: c} if c else None)

    @staticmethod
    def var(v: Variable) -> "Polynomial":
        return Polynomial({mono_var(v): 1})

    @staticmethod
    def monomial(m: Monomial, c: int = 1) -> "Polynomial":
        return Polynomial({m: c} if c else None)

    @staticmethod
    def from_terms(pairs: Iterable) -> "Polynomial":
        acc: dict = {}
        for m, c in pairs:
            c = acc.get(m, 0) + c
            if c:
                acc[m] = c
            else:
                acc.pop(m, None)
        return Polynomial(acc)

    # -- basic queries

    @property
    def terms(self) -> dict:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {MONO_ONE: 1}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono_deg(m) for m in self._terms)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self._terms, key=mono_key)

    def leading_coefficient(self) -> int:
        return self._terms[self.leading_monomial()]

    def content(self) -> int:
        """gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def monomial_gcd(self) -> Monomial:
        """Largest monomial dividing every term (unit for zero)."""
        it = iter(self._terms)
        try:
            g = next(it)
        except StopIteration:
            return MONO_ONE
        for m in it:
            if not g:
                break
            g = mono_gcd(g, m)
        return g

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in mono_pairs(m)}

    def is_subtraction_free(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # -- arithmetic

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self._terms:
            return other
        if not other._terms:
            return self
        acc = dict(self._terms)
        for m, c in other._terms.items():
            c2 = acc.get(m, 0) + c
            if c2:
                acc[m] = c2
            else:
                del acc[m]
        return Polynomial(acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self._terms or not other._terms:
            return Polynomial()
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict = {}
        get = acc.get
        bitems = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bitems:
                m = ma + mb
                c = get(m, 0) + ca * cb
                if c:
                    acc[m] = c
                else:
                    del acc[m]
        return Polynomial(acc)

    def scale(self, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial({m: k * c for m, k in self._terms.items()})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Polynomial":
        if c == 0:
            return Polynomial()
        if not mono and c == 1:
            return self
        return Polynomial({m + mono: k * c for m, k in self._terms.items()})

    def div_monomial(self, mono: Monomial) -> "Polynomial":
        """Exact division by a monomial (every term must be divisible)."""
        if not mono:
            return self
        acc = {}
        for m, c in self._terms.items():
            q = mono_div(m, mono)
            if q is None:
                raise ValueError("monomial does not divide every term")
            acc[q] = c
        return Polynomial(acc)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def substitute(self, var_map: Mapping[Variable, Variable]) -> "Polynomial":
        """Rename variables; distinct variables must stay distinct per term."""
        acc: dict = {}
        for m, c in self._terms.items():
            pairs = [(var_map.get(v, v), e) for v, e in mono_pairs(m)]
            if len({v for v, _ in pairs}) != len(pairs):
                raise ValueError("variable renaming collides within a term")
            m2 = mono_from_pairs(pairs)
            acc[m2] = acc.get(m2, 0) + c
        return Polynomial({m: c for m, c in acc.items() if c})

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]))

    def __repr__(self) -> str:
        return f"Polynomial({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


P_ZERO = Polynomial.zero()
P_ONE = Polynomial.const(1)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_divide_exact(p: Polynomial, d: Polynomial,
                      max_quot_terms: Optional[int] = None) -> Optional[Polynomial]:
    """Quotient q with p = q*d over the integers, or None.

    Single-divisor division under the graded-lex order: while the remainder
    is nonzero its leading term must be divisible (monomial and integer
    coefficient both) by the leading term of d, otherwise d does not divide
    p and None is returned.  The remainder's leading term is tracked with a
    lazy-deletion heap so each reduction step costs O(|d| log).

    max_quot_terms aborts long failures early; when p and d are both
    subtraction free, a successful quotient never has more terms than p,
    so passing len(p) keeps the check exact for that case.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return P_ZERO
    lm_d = d.leading_monomial()
    lc_d = d.leading_coefficient()
    d_items = [(m, c) for m, c in d.terms.items() if m != lm_d]
    rem = dict(p.terms)
    heap = [(mono_key(m), m) for m in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        if max_quot_terms is not None and len(quot) > max_quot_terms:
            return None
        _, lm = heap[0]
        c = rem.get(lm)
        if c is None:
            heapq.heappop(heap)
            continue
        m = mono_div(lm, lm_d)
        if m is None:
            return None
        cq, off = divmod(c, lc_d)
        if off:
            return None
        quot[m] = cq
        del rem[lm]
        heapq.heappop(heap)
        for md, cd in d_items:
            m2 = m + md
            c2 = rem.get(m2)
            if c2 is None:
                rem[m2] = -cq * cd
                heapq.heappush(heap, (mono_key(m2), m2))
            else:
                c2 -= cq * cd
                if c2:
                    rem[m2] = c2
                else:
                    del rem[m2]
    if rem:
        return None
    return Polynomial(quot)


# ---------------------------------------------------------------------------
# rational functions

class RationalFunction:
    """Quotient of two integer polynomials in normalized form.

    Normalization: the joint integer content of numerator and denominator
    is 1, the denominator's leading coefficient is positive, and the common
    monomial factor of all terms of both is cancelled.  Structural equality
    (``==``) compares the normalized pairs; use :func:`rf_eq` for
    mathematical equality, which needs no GCD.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = P_ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = P_ZERO, P_ONE
            return
        g = mono_gcd(num.monomial_gcd(), den.monomial_gcd())
        if g:
            num = num.div_monomial(g)
            den = den.div_monomial(g)
        c = math.gcd(num.content(), den.content())
        if den.leading_coefficient() < 0:
            c = -c
        if c != 1:
            num = Polynomial({m: k // c for m, k in num.terms.items()})
            den = Polynomial({m: k // c for m, k in den.terms.items()})
        self.num, self.den = num, den

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p, P_ONE)

    @staticmethod
    def var(v: Variable) -> "RationalFunction":
        return RationalFunction(Polynomial.var(v))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def equals(self, other: "RationalFunction") -> bool:
        """Mathematical equality by cross multiplication."""
        return self.num * other.den == other.num * self.den

    def __repr__(self) -> str:
        return f"RationalFunction({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


RF_ZERO = RationalFunction(P_ZERO)
RF_ONE = RationalFunction(P_ONE)


def rf_eq(a: RationalFunction, b: RationalFunction) -> bool:
    return a.equals(b)


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Field operation by name; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# lazily factored fractions

def _split_factor(p: Polynomial):
    """p = content * monomial * core with the core primitive.

    The core has content 1, positive leading coefficient and no common
    monomial factor.  Returns (Fraction scalar, Monomial, core Polynomial
    or None when the core is the constant 1).
    """
    if p.is_zero():
        raise ZeroDivisionError("zero cannot be a fraction factor")
    g = p.monomial_gcd()
    if g:
        p = p.div_monomial(g)
    c = p.content()
    if p.leading_coefficient() < 0:
        c = -c
    if c != 1:
        p = Polynomial({m: k // c for m, k in p.terms.items()})
    if p.is_one():
        return Fraction(c), g, None
    return Fraction(c), g, p


class FactoredRational:
    """Fraction kept as multisets of polynomial factors.

    Products and quotients cancel structurally equal factors instead of
    expanding, which keeps repeated generator applications from blowing
    up; sums expand over a least common denominator of factors.  The value
    is ``coeff * mono_num/mono_den * prod(num)/prod(den)`` where coeff is a
    rational scalar, the monomial parts have disjoint supports, and every
    polynomial factor is primitive with at least two terms.
    """

    __slots__ = ("coeff", "mono_num", "mono_den", "num", "den")

    def __init__(self, coeff: Fraction, mono_num: Monomial, mono_den: Monomial,
                 num: dict, den: dict):
        self.coeff = coeff
        self.mono_num = mono_num
        self.mono_den = mono_den
        self.num = num  # {core Polynomial: exponent >= 1}
        self.den = den

    # -- constructors

    @staticmethod
    def zero() -> "FactoredRational":
        return FactoredRational(Fraction(0), MONO_ONE, MONO_ONE, {}, {})

    @staticmethod
    def one() -> "FactoredRational":
        return FactoredRational(Fraction(1), MONO_ONE, MONO_ONE, {}, {})

    @staticmethod
    def var(v: Variable) -> "FactoredRational":
        return FactoredRational(Fraction(1), mono_var(v), MONO_ONE, {}, {})

    @staticmethod
    def from_poly(p: Polynomial) -> "FactoredRational":
        if p.is_zero():
            return FactoredRational.zero()
        c, g, core = _split_factor(p)
        return FactoredRational(c, g, MONO_ONE, {core: 1} if core is not None else {}, {})

    @staticmethod
    def from_rational(rf: RationalFunction) -> "FactoredRational":
        return FactoredRational.from_poly(rf.num) / FactoredRational.from_poly(rf.den)

    def is_zero(self) -> bool:
        return not self.coeff

    # -- multiplication / division with structural cancellation

    @staticmethod
    def _merge(into: dict, other: dict, cancel: dict) -> None:
        for f, e in other.items():
            c = cancel.get(f)
            if c:
                k = min(c, e)
                if c > k:
                    cancel[f] = c - k
                else:
                    del cancel[f]
                e -= k
            if e:
                into[f] = into.get(f, 0) + e

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if not self.coeff or not other.coeff:
            return FactoredRational.zero()
        num = dict(self.num)
        den = dict(self.den)
        self._merge(num, other.num, den)
        self._merge(den, other.den, num)
        mn = mono_mul(self.mono_num, other.mono_num)
        md = mono_mul(self.mono_den, other.mono_den)
        g = mono_gcd(mn, md)
        if g:
            mn, md = mono_div(mn, g), mono_div(md, g)
        return FactoredRational(self.coeff * other.coeff, mn, md, num, den)

    def inverse(self) -> "FactoredRational":
        if not self.coeff:
            raise ZeroDivisionError("division by zero fraction")
        return FactoredRational(1 / self.coeff, self.mono_den, self.mono_num,
                                dict(self.den), dict(self.num))

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return self * other.inverse()

    # -- addition

    def __add__(self, other: "FactoredRational") -> "FactoredRational":
        if not self.coeff:
            return other
        if not other.coeff:
            return self
        # common denominator: per-factor max of the two denominators
        den: dict = dict(self.den)
        for f, e in other.den.items():
            if den.get(f, 0) < e:
                den[f] = e
        md = mono_mul(self.mono_den, mono_div(other.mono_den,
                                              mono_gcd(self.mono_den, other.mono_den)))
        pa = self._numerator_against(den, md)
        pb = other._numerator_against(den, md)
        qa, qb = self.coeff.denominator, other.coeff.denominator
        total = pa.scale(self.coeff.numerator * qb) + pb.scale(other.coeff.numerator * qa)
        if total.is_zero():
            return FactoredRational.zero()
        c, g, core = _split_factor(total)
        # Reduce the sum against the denominator stack by trial exact
        # division; common-denominator sums routinely absorb whole stack
        # factors and this keeps factor sizes near their reduced form.
        if core is not None:
            scale = Fraction(1)
            for f in sorted(den, key=len):
                e = den[f]
                while e and len(f) <= len(core):
                    q = poly_divide_exact(core, f, max_quot_terms=len(core))
                    if q is None:
                        break
                    cq, gq, coreq = _split_factor(q)
                    scale *= cq
                    g = mono_mul(g, gq)
                    e -= 1
                    if coreq is None:
                        core = None
                        break
                    core = coreq
                if e:
                    den[f] = e
                else:
                    del den[f]
                if core is None:
                    break
            c *= scale
        num = {core: 1} if core is not None else {}
        out = FactoredRational(c / (qa * qb), g, MONO_ONE, num, {})
        # multiply by 1/(md * prod(den)), cancelling against the new numerator
        return out * FactoredRational(Fraction(1), MONO_ONE, md, {}, den)

    def _numerator_against(self, den: dict, md: Monomial) -> Polynomial:
        """Expanded numerator of self rescaled to the denominator (den, md)."""
        p = Polynomial.monomial(mono_mul(self.mono_num, mono_div(md, self.mono_den)))
        for f, e in self.num.items():
            p = p * f ** e
        for f, e in den.items():
            extra = e - self.den.get(f, 0)
            if extra:
                p = p * f ** extra
        return p

    # -- expansion and comparison

    def expand_parts(self) -> tuple:
        """Expanded (numerator, denominator) integer polynomials."""
        if not self.coeff:
            return P_ZERO, P_ONE
        num = Polynomial.monomial(self.mono_num, self.coeff.numerator)
        for f, e in self.num.items():
            num = num * f ** e
        den = Polynomial.monomial(self.mono_den, self.coeff.denominator)
        for f, e in self.den.items():
            den = den * f ** e
        return num, den

    def to_rational(self) -> RationalFunction:
        num, den = self.expand_parts()
        return RationalFunction(num, den)

    def equals_rational(self, rf: RationalFunction) -> bool:
        """Mathematical equality against a plain rational function.

        Tries the divide-out route first: when rf.num and rf.den both divide
        the expanded numerator and denominator, equality is equivalent to
        the two cofactors matching.  Inconclusive divisions fall back to
        full cross multiplication.
        """
        if not self.coeff:
            return rf.is_zero()
        if rf.is_zero():
            return False
        num, den = self.expand_parts()
        verdict = _divide_out_eq(num, den, rf.num, rf.den)
        if verdict is not None:
            return verdict
        return num * rf.den == rf.num * den

    def equals(self, other: "FactoredRational") -> bool:
        if other.is_zero():
            return self.is_zero()
        q = (self / other)._reduce_pairwise()
        num, den = q.expand_parts()
        return num == den

    def _reduce_pairwise(self) -> "FactoredRational":
        """Cancel denominator factors into numerator factors by exact division.

        Complements the structural cancellation of ``__mul__`` when the two
        sides carry the same content split across differently grouped
        factors.  Pure arithmetic: only successful exact divisions rewrite
        the factor multisets.
        """
        num, den = dict(self.num), dict(self.den)
        coeff = self.coeff
        changed = True
        while changed:
            changed = False
            for g in sorted(den, key=len):
                if g not in den:
                    continue
                for f in sorted(num, key=len):
                    if f not in num or g not in den:
                        continue
                    big, small = (f, g) if len(f) >= len(g) else (g, f)
                    q = poly_divide_exact(big, small, max_quot_terms=len(big))
                    if q is None:
                        continue
                    cq, gq, coreq = _split_factor(q)
                    k = min(num.pop(f), den.pop(g))
                    # one division cancels one copy of each; restore the rest
                    if k > 1:
                        num[f] = den[g] = k - 1
                        k = 1
                    side, mono_attr = (num, "mono_num") if big is f else (den, "mono_den")
                    if coreq is not None:
                        side[coreq] = side.get(coreq, 0) + 1
                    if big is f:
                        coeff *= cq
                        self_mn = mono_mul(self.mono_num, gq)
                        return FactoredRational(coeff, self_mn, self.mono_den, num, den)._reduce_pairwise()
                    coeff /= cq
                    self_md = mono_mul(self.mono_den, gq)
                    return FactoredRational(coeff, self.mono_num, self_md, num, den)._reduce_pairwise()
        return FactoredRational(coeff, self.mono_num, self.mono_den, num, den)

    def eval_mod(self, point: "FieldPoint") -> int:
        p = point.prime
        den = (self.coeff.denominator % p) * point.eval_monomial(self.mono_den) % p
        for f, e in self.den.items():
            den = den * pow(point.eval_poly(f), e, p) % p
        if den == 0:
            raise VanishingDenominator("denominator vanishes at the point")
        num = (self.coeff.numerator % p) * point.eval_monomial(self.mono_num) % p
        for f, e in self.num.items():
            num = num * pow(point.eval_poly(f), e, p) % p
        return num * pow(den, p - 2, p) % p

    def __repr__(self) -> str:
        return f"FactoredRational({to_text(self.to_rational())!r})"


def _primitive(p: Polynomial) -> tuple:
    """(positive content, primitive part); sign goes into the content."""
    c = p.content()
    if p.leading_coefficient() < 0:
        c = -c
    if c == 1:
        return 1, p
    return c, Polynomial({m: k // c for m, k in p.terms.items()})


def _divide_out_eq(N: Polynomial, D: Polynomial, n: Polynomial, d: Polynomial):
    """Decide N/D == n/d by dividing out, or None when inconclusive.

    If prim(n) | prim(N) and prim(d) | prim(D), then equality holds iff the
    two quotients agree and the contents balance; a failed division proves
    nothing (n and d may share a factor), so the caller must fall back.
    """
    cN, pN = _primitive(N)
    cn, pn = _primitive(n)
    q1 = poly_divide_exact(pN, pn)
    if q1 is None:
        return None
    cD, pD = _primitive(D)
    cd, pd = _primitive(d)
    q2 = poly_divide_exact(pD, pd)
    if q2 is None:
        return None
    return q1 == q2 and cN * cd == cn * cD


# ---------------------------------------------------------------------------
# modular evaluation

class FieldPoint:
    """An assignment of nonzero prime-field values to variables."""

    __slots__ = ("prime", "assignment")

    def __init__(self, prime: int, assignment: Mapping[Variable, int]):
        self.prime = prime
        self.assignment = {}
        for v, a in assignment.items():
            a %= prime
            if a == 0:
                raise ValueError(f"variable {v} assigned zero")
            self.assignment[v] = a

    @staticmethod
    def random(variables: Iterable[Variable], rng, prime: int = DEFAULT_PRIME) -> "FieldPoint":
        return FieldPoint(prime, {v: rng.randrange(1, prime) for v in variables})

    def __getitem__(self, v: Variable) -> int:
        return self.assignment[v]

    def eval_monomial(self, m: Monomial) -> int:
        p = self.prime
        out = 1
        for v, e in mono_pairs(m):
            out = out * pow(self.assignment[v], e, p) % p
        return out

    def eval_poly(self, poly: Polynomial) -> int:
        p = self.prime
        out = 0
        for m, c in poly.terms.items():
            out = (out + c * self.eval_monomial(m)) % p
        return out


def eval_mod(value: Union[Polynomial, RationalFunction, FactoredRational],
             point: FieldPoint) -> int:
    """Image of a polynomial or fraction in the prime field of the point.

    Raises KeyError for an unassigned variable and VanishingDenominator
    when a denominator evaluates to zero (callers retry at a fresh point).
    """
    if isinstance(value, Polynomial):
        return point.eval_poly(value)
    if isinstance(value, FactoredRational):
        return value.eval_mod(point)
    den = point.eval_poly(value.den)
    if den == 0:
        raise VanishingDenominator("denominator vanishes at the point")
    p = point.prime
    return point.eval_poly(value.num) * pow(den, p - 2, p) % p


# ---------------------------------------------------------------------------
# serialization: canonical text, LaTeX, JSON

def _mono_text(m: Monomial, coeff: int) -> str:
    parts = []
    if abs(coeff) != 1 or not m:
        parts.append(str(abs(coeff)))
    for (i, r), e in mono_pairs(m):
        s = f"x[{i},{r}]"
        if e > 1:
            s += f"^{e}"
        parts.append(s)
    return "*".join(parts)


def _poly_text(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.sorted_terms():
        piece = _mono_text(m, c)
        if not out:
            out.append(piece if c > 0 else "-" + piece)
        else:
            out.append((" + " if c > 0 else " - ") + piece)
    return "".join(out)


def _mono_latex(m: Monomial, coeff: int) -> str:
    parts = []
    if abs(coeff) != 1 or not m:
        parts.append(str(abs(coeff)))
    for (i, r), e in mono_pairs(m):
        s = f"x_{{{i}}}^{{({r})}}"
        if e > 1:
            s = f"\\left({s}\\right)^{{{e}}}"
        parts.append(s)
    return "".join(parts)


def _poly_latex(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.sorted_terms():
        piece = _mono_latex(m, c)
        if not out:
            out.append(piece if c > 0 else "-" + piece)
        else:
            out.append((" + " if c > 0 else " - ") + piece)
    return "".join(out)


def to_text(value: Union[Polynomial, RationalFunction]) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if isinstance(value, Polynomial):
        return _poly_text(value)
    if value.den.is_one():
        return _poly_text(value.num)
    return f"({_poly_text(value.num)})/({_poly_text(value.den)})"


def to_latex(value: Union[Polynomial, RationalFunction]) -> str:
    if isinstance(value, Polynomial):
        return _poly_latex(value)
    if value.den.is_one():
        return _poly_latex(value.num)
    return f"\\frac{{{_poly_latex(value.num)}}}{{{_poly_latex(value.den)}}}"


def poly_to_obj(p: Polynomial) -> list:
    return [
        {"coeff": str(c), "vars": [[i, r, e] for (i, r), e in mono_pairs(m)]}
        for m, c in p.sorted_terms()
    ]


def poly_from_obj(obj: list) -> Polynomial:
    pairs = []
    for term in obj:
        m = mono_from_pairs(((i, r), e) for i, r, e in term["vars"])
        pairs.append((m, int(term["coeff"])))
    return Polynomial.from_terms(pairs)


def rf_to_obj(rf: RationalFunction) -> dict:
    return {"num": poly_to_obj(rf.num), "den": poly_to_obj(rf.den)}


def rf_from_obj(obj: dict) -> RationalFunction:
    return RationalFunction(poly_from_obj(obj["num"]), poly_from_obj(obj["den"]))


def to_json(value: Union[Polynomial, RationalFunction], indent: Optional[int] = None) -> str:
    obj = poly_to_obj(value) if isinstance(value, Polynomial) else rf_to_obj(value)
    return json.dumps(obj, indent=indent)
