"""The tau / sigma / sigma-bar / omega family of polynomials.

All functions work on an explicit window of vectors x_lo .. x_hi and a
cyclic superscript modulus n; superscripts are reduced into 1..n at every
variable creation, so callers may pass shifted values like r - j + i
freely.

tau_k^{(r)} sums x_{i_1}^{(r)} x_{i_2}^{(r-1)} ... x_{i_k}^{(r-k+1)} over
weakly increasing index sequences from the window in which no index
appears more than n-1 times; it is 1 for k = 0 and 0 for k < 0 or
k > m(n-1).  sigma / sigma_bar relax the multiplicity bound for the first
/ last vector of the window.  omega interpolates between the two by
cutting the window and convolving a sigma on the left part with a
sigma_bar on the right part.  p_fn collects the terms of a sigma that use
the last vector at most k times, and t_s / s_up / s_down are the product
expressions whose partial sums the identity checkers at the bottom of the
module verify.

The checkers (check_sigma_identity, check_partial_sum_lemma,
check_two_sum_lemma, check_omega_identity) each rebuild both sides of one
algebraic identity from scratch and compare canonical polynomials, so
they are usable as mechanical verifiers on any instance small enough to
expand.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Tuple

from .polyalg import (
    MONO_ONE,
    Monomial,
    P_ONE,
    P_ZERO,
    Polynomial,
    mono_from_pairs,
    mono_mul,
    residue,
    variable,
)


def _mono(n: int, pairs: Iterable[Tuple[int, int]]) -> Monomial:
    """Monomial from (vec_index, raw superscript) pairs, residues reduced."""
    return mono_from_pairs(((variable(i, r, n), 1) for i, r in pairs))


def _window_size(lo: int, hi: int) -> int:
    return hi - lo + 1 if hi >= lo else 0


@lru_cache(maxsize=None)
def tau(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """tau_k^{(r)}(x_lo, ..., x_hi), computed by recursion on the last vector.

    Splitting on the number t of times x_hi is used (0 <= t <= n-1; those
    uses sit at the end of the sequence and carry superscripts
    r-k+t, ..., r-k+1) gives
    tau_k = sum_t tau_{k-t}(x_lo..x_{hi-1}) * prod_{u=1}^{t} x_hi^{(r-k+u)}.
    """
    if k < 0:
        return P_ZERO
    if k == 0:
        return P_ONE
    m = _window_size(lo, hi)
    if k > m * (n - 1):
        return P_ZERO
    r = residue(r, n)
    out = P_ZERO
    for t in range(min(k, n - 1) + 1):
        prefix = tau(n, k - t, r, lo, hi - 1)
        if prefix.is_zero():
            continue
        suffix = _mono(n, ((hi, r - k + u) for u in range(1, t + 1)))
        out = out + prefix.mul_monomial(suffix)
    return out


def tau_bruteforce(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """Independent oracle for tau: enumerate the defining index sequences."""
    if k < 0:
        return P_ZERO
    if k == 0:
        return P_ONE
    m = _window_size(lo, hi)
    if k > m * (n - 1):
        return P_ZERO
    pairs = []
    for seq in combinations_with_replacement(range(lo, hi + 1), k):
        if any(seq.count(i) > n - 1 for i in set(seq)):
            continue
        mono = _mono(n, ((idx, r - t) for t, idx in enumerate(seq)))
        pairs.append((mono, 1))
    return Polynomial.from_terms(pairs)


def _sigma_definition(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    out = P_ZERO
    for i in range(k + 1):
        t = tau(n, k - i, r - i, lo + 1, hi)
        if t.is_zero():
            continue
        prefix = _mono(n, ((lo, r - s) for s in range(i)))
        out = out + t.mul_monomial(prefix)
    return out


def _sigma_bar_definition(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    out = P_ZERO
    for i in range(k + 1):
        t = tau(n, k - i, r, lo, hi - 1)
        if t.is_zero():
            continue
        suffix = _mono(n, ((hi, r - k + u) for u in range(1, i + 1)))
        out = out + t.mul_monomial(suffix)
    return out


@lru_cache(maxsize=None)
def sigma(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """sigma_k^{(r)}(x_lo, ..., x_hi): tau with x_lo unrestricted.

    Beyond the tau range (k > m(n-1)) every term carries the forced prefix
    x_lo^{(r)} ... x_lo^{(r-d+1)} with d = k - m(n-1), which is factored
    out in front of sigma_{m(n-1)}^{(r-d)}.
    """
    if lo > hi:
        raise ValueError(f"empty window ({lo}, {hi})")
    if k < 0:
        return P_ZERO
    r = residue(r, n)
    top = _window_size(lo, hi) * (n - 1)
    if k > top:
        d = k - top
        prefix = _mono(n, ((lo, r - t) for t in range(d)))
        return sigma(n, top, r - d, lo, hi).mul_monomial(prefix)
    return _sigma_definition(n, k, r, lo, hi)


@lru_cache(maxsize=None)
def sigma_bar(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """sigma-bar_k^{(r)}(x_lo, ..., x_hi): tau with x_hi unrestricted."""
    if lo > hi:
        raise ValueError(f"empty window ({lo}, {hi})")
    if k < 0:
        return P_ZERO
    r = residue(r, n)
    top = _window_size(lo, hi) * (n - 1)
    if k > top:
        d = k - top
        suffix = _mono(n, ((hi, r - k + u) for u in range(1, d + 1)))
        return sigma_bar(n, top, r, lo, hi).mul_monomial(suffix)
    return _sigma_bar_definition(n, k, r, lo, hi)


@lru_cache(maxsize=None)
def omega(n: int, cut: int, r: int, lo: int, hi: int) -> Polynomial:
    """omega_cut^{(r)}(x_lo, ..., x_hi) for lo <= cut <= hi-1.

    The convolution sum_{l=0}^{n-1} sigma_{(n-1)(cut-lo)+l}^{(r)}(x_lo..x_cut)
    * sigma-bar_{(n-1)(hi-cut)-l}^{(r+cut-lo-l)}(x_{cut+1}..x_hi); the
    boundary cases cut = hi-1 and cut = lo collapse to a sigma and a
    sigma-bar of the whole window.
    """
    if not lo <= cut <= hi - 1:
        raise ValueError(f"cut {cut} outside window ({lo}, {hi})")
    out = P_ZERO
    for l in range(n):
        left = sigma(n, (n - 1) * (cut - lo) + l, r, lo, cut)
        right = sigma_bar(n, (n - 1) * (hi - cut) - l, r + cut - lo - l, cut + 1, hi)
        out = out + left * right
    return out


@lru_cache(maxsize=None)
def p_fn(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """P_k^{(r)}(x_lo, ..., x_hi): the terms of sigma_{(n-1)(hi-lo-1)+k}^{(r)}
    that use x_hi at most k times."""
    if k < 0:
        return P_ZERO
    r = residue(r, n)
    out = P_ZERO
    for t in range(k + 1):
        mid = sigma(n, (n - 1) * (hi - lo - 1), r - t, lo, hi - 1)
        prefix = _mono(n, ((lo, r - s) for s in range(t)))
        suffix = _mono(n, ((hi, r - t + hi - lo - 1 - s) for s in range(k - t)))
        out = out + mid.mul_monomial(mono_mul(prefix, suffix))
    return out


def t_s(n: int, s: int, r: int, lo: int, hi: int) -> Polynomial:
    """The s-th summand T_s, 0 <= s <= n-1, of the partial-sum identities."""
    if not 0 <= s <= n - 1:
        raise IndexError(f"summand index {s} out of range 0..{n - 1}")
    out = Polynomial.monomial(mono_mul(
        _mono(n, ((hi, t + 1) for t in range(r + s + 1, r + n))),
        _mono(n, ((lo, r - hi + lo + t) for t in range(1, s + 1))),
    ))
    for t in range(s + 2, s + n):
        out = out * sigma(n, (n - 1) * (hi - lo), r - hi + lo + t, lo, hi)
    return out * sigma(n, (n - 1) * (hi - lo - 1), r - hi + lo + s + 1, lo, hi - 1)


def s_up(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """S^k: the partial sum T_0 + ... + T_k."""
    if not 0 <= k <= n - 1:
        raise IndexError(f"truncation index {k} out of range 0..{n - 1}")
    out = P_ZERO
    for s in range(k + 1):
        out = out + t_s(n, s, r, lo, hi)
    return out


def s_down(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """S_k: the partial sum T_k + ... + T_{n-1}."""
    if not 0 <= k <= n - 1:
        raise IndexError(f"truncation index {k} out of range 0..{n - 1}")
    out = P_ZERO
    for s in range(k, n):
        out = out + t_s(n, s, r, lo, hi)
    return out


# ---------------------------------------------------------------------------
# identity checkers

def check_sigma_identity(n: int, lo: int, hi: int, r: int) -> bool:
    """Both expansions of sigma/sigma-bar_{(n-1)(hi-lo)} by the count of
    x_lo-prefix variables hold on the given window."""
    if hi <= lo:
        raise ValueError("window must contain at least two vectors")
    j_i = hi - lo
    lhs_s = sigma(n, (n - 1) * j_i, r, lo, hi)
    lhs_b = sigma_bar(n, (n - 1) * j_i, r, lo, hi)
    rhs_s = P_ZERO
    rhs_b = P_ZERO
    for k in range(n):
        shared = mono_mul(
            _mono(n, ((lo, r - t) for t in range(k))),
            _mono(n, ((hi, r - k + j_i - 1 - s) for s in range(n - k - 1))),
        )
        rhs_s = rhs_s + sigma(n, (n - 1) * (j_i - 1), r - k, lo, hi - 1).mul_monomial(shared)
        rhs_b = rhs_b + sigma_bar(n, (n - 1) * (j_i - 1), r - k, lo + 1, hi).mul_monomial(shared)
    return lhs_s == rhs_s and lhs_b == rhs_b


def partial_sum_upper_product(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """Product formula for S^k, 0 <= k < n-1."""
    big = [sigma(n, (n - 1) * (hi - lo), r - hi + lo + t, lo, hi) for t in range(n)]
    out = Polynomial.monomial(_mono(n, ((hi, t + 1) for t in range(r + k + 1, r + n))))
    for t in range(1, k + 1):
        out = out * big[t]
    out = out * p_fn(n, k, r - hi + lo + k + 1, lo, hi)
    for t in range(k + 2, n):
        out = out * big[t]
    return out


def partial_sum_lower_product(n: int, k: int, r: int, lo: int, hi: int) -> Polynomial:
    """Product formula for S_k, 0 < k <= n-1."""
    big = [sigma(n, (n - 1) * (hi - lo), r - hi + lo + t, lo, hi) for t in range(n)]
    out = Polynomial.monomial(_mono(n, ((lo, r - hi + lo + t) for t in range(1, k + 1))))
    for t in range(k + 1, n):
        out = out * big[t]
    out = out * p_fn(n, n - k - 1, r - hi + lo, lo, hi)
    for t in range(1, k):
        out = out * big[t]
    return out


def check_partial_sum_lemma(n: int, lo: int, hi: int, r: int) -> bool:
    """All product formulas for the partial sums S^k and S_k on one window."""
    if hi <= lo:
        raise ValueError("window must contain at least two vectors")
    for k in range(n - 1):
        if s_up(n, k, r, lo, hi) != partial_sum_upper_product(n, k, r, lo, hi):
            return False
    for k in range(1, n):
        if s_down(n, k, r, lo, hi) != partial_sum_lower_product(n, k, r, lo, hi):
            return False
    full = P_ONE
    for t in range(1, n):
        full = full * sigma(n, (n - 1) * (hi - lo), r - hi + lo + t, lo, hi)
    return s_up(n, n - 1, r, lo, hi) == full and s_down(n, 0, r, lo, hi) == full


def _two_sum_rhs(n: int, i: int, k: int, r: int, mq: int, s_range) -> Polynomial:
    out = P_ZERO
    for s in s_range:
        piece = Polynomial.monomial(mono_mul(
            _mono(n, ((k, t + 1) for t in range(r + s + 1, r + n))),
            _mono(n, ((i, r - k + i + s - a) for a in range(s + mq - n + 1))),
        ))
        for t in range(s + 2, s + n):
            piece = piece * sigma(n, (n - 1) * (k - i), r - k + i + t, i, k)
        piece = piece * sigma(n, (n - 1) * (k - i - 1), r - k + i + s + 1, i, k - 1)
        out = out + piece
    return sigma(n, (n - 1) * (k - i), r - k + i - (mq + 1), i, k) * out


def check_two_sum_lemma(n: int, i: int, j: int, k: int, r: int, m: int, q: int) -> bool:
    """The two summation evaluations, branch-selected by m - q.

    Requires 0 <= q <= (n-1)(j-k+1) and m - q within 0..2(n-1); when
    m - q = n-1 both branches apply and both are checked.
    """
    if not 0 <= q <= (n - 1) * (j - k + 1):
        raise ValueError(f"q={q} outside 0..{(n - 1) * (j - k + 1)}")
    mq = m - q
    if not 0 <= mq <= 2 * (n - 1):
        raise ValueError(f"m-q={mq} outside both branches")
    sig_prod = P_ONE
    for t in range(1, n):
        sig_prod = sig_prod * sigma(n, (n - 1) * (k - i), r - k + i + t, i, k)
    ok = True
    if mq <= n - 1:
        lhs = sig_prod * p_fn(n, mq, r - k + i, i, k)
        ok = ok and lhs == _two_sum_rhs(n, i, k, r, mq, range(n - 1 - mq, n))
    if mq >= n - 1:
        # the P superscript is r-k+i+g+1: this is the version the inductive
        # derivation produces, and the only one for which the two branches
        # agree on the overlap m-q = n-1
        g = 2 * (n - 1) - mq
        extra = mono_mul(
            _mono(n, ((i, r - k + i - a) for a in range(mq - n + 1))),
            _mono(n, ((k, r - b) for b in range(n, mq + 1))),
        )
        lhs = (sig_prod * p_fn(n, g, r - k + i + g + 1, i, k)).mul_monomial(extra)
        ok = ok and lhs == _two_sum_rhs(n, i, k, r, mq, range(g + 1))
    return ok


def check_omega_identity(n: int, i: int, j: int, k: int, r: int) -> bool:
    """The recursion relating omega_{k-1} to the omega_k, for i < k <= j-1."""
    if not i < k <= j - 1:
        raise ValueError(f"need i < k <= j-1, got i={i}, k={k}, j={j}")
    lhs = omega(n, k - 1, r - k + i, i, j)
    for t in range(1, n):
        lhs = lhs * sigma(n, (n - 1) * (k - i), r - k + i + t, i, k)
    rhs = P_ZERO
    for s in range(n):
        piece = omega(n, k, r - k + i + s, i, j).mul_monomial(mono_mul(
            _mono(n, ((j, t + j - k) for t in range(r + 1, r + s + 1))),
            _mono(n, ((k, t + 1) for t in range(r + s + 1, r + n))),
        ))
        for t in range(s + 2, s + n):
            piece = piece * sigma(n, (n - 1) * (k - i), r - k + i + t, i, k)
        piece = piece * sigma(n, (n - 1) * (k - i - 1), r - k + i + s + 1, i, k - 1)
        rhs = rhs + piece
    return lhs == rhs
