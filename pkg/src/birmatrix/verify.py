"""Batch verification suites tying the algebraic and combinatorial layers.

Every suite replays one family of statements mechanically: it builds both
sides of each claimed equality from scratch (closed form against the
generator-by-generator action, algebraic polynomial against the highway
path generating function, and so on) and records one
:class:`VerifyCase` per instance of the configured grid.

Grid policy: cases with n <= 3 are checked symbolically (exact canonical
equality); the n = 4 braid and transposition cases switch to evaluation
at random points of a large prime field (seeded, so reports are
reproducible), unless mode="modular" forces point checks everywhere.
Enumeration-backed suites mark cases beyond the size guard as skipped.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import cylnet, formulas, rmatrix, specialfn
from .polyalg import (
    DEFAULT_PRIME,
    FactoredRational,
    FieldPoint,
    Polynomial,
    VanishingDenominator,
    to_text,
    variable,
)

SUITE_NAMES = [
    "involution", "braid", "oneshift", "transposition", "sigma-identity",
    "partial-sums", "two-sums", "omega-identity", "comb-tau", "comb-sigma",
    "comb-omega", "degree-lemma", "switch-connectivity", "divisibility-q1",
]


@dataclass
class VerifyConfig:
    max_n: int = 3
    max_m: int = 4
    mode: str = "symbolic"  # "symbolic" (with documented n=4 point checks) or "modular"
    prime: int = DEFAULT_PRIME
    seed: int = 0
    points: int = 20
    strict: bool = False

    def __post_init__(self):
        if self.mode not in ("symbolic", "modular"):
            raise ValueError(f"mode must be symbolic or modular, not {self.mode!r}")
        if self.points < 1:
            raise ValueError("need at least one evaluation point")


@dataclass
class VerifyCase:
    descriptor: str
    status: str  # "pass", "fail" or "skipped"
    seconds: float
    detail: Optional[str] = None


@dataclass
class VerifyReport:
    suite: str
    cases: List[VerifyCase] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.cases)

    @property
    def skipped(self) -> int:
        return sum(1 for c in self.cases if c.status == "skipped")

    def sorted_cases(self) -> List[VerifyCase]:
        return sorted(self.cases, key=lambda c: c.descriptor)

    def render(self, verbose: bool = False) -> str:
        lines = []
        for c in self.sorted_cases():
            if verbose or c.status != "pass":
                line = f"  [{c.status.upper():7s}] {c.descriptor} ({c.seconds:.2f}s)"
                if c.detail and c.status == "fail":
                    line += "\n    " + c.detail
                lines.append(line)
        np = sum(1 for c in self.cases if c.status == "pass")
        nf = sum(1 for c in self.cases if c.status == "fail")
        lines.append(
            f"suite {self.suite}: {np} passed, {nf} failed, {self.skipped} skipped"
            f" -> {'PASS' if self.ok else 'FAIL'}"
        )
        return "\n".join(lines)


def _run_case(report: VerifyReport, descriptor: str, fn: Callable[[], Optional[str]]) -> None:
    """fn returns None on success or a failure detail string."""
    t0 = time.time()
    try:
        detail = fn()
        status = "pass" if detail is None else "fail"
    except cylnet.GuardExceeded as exc:
        status, detail = "skipped", str(exc)
    except Exception as exc:  # a crashed case is a failed case, with context
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    report.cases.append(VerifyCase(descriptor, status, time.time() - t0, detail))


def _rng(cfg: VerifyConfig, tag: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{tag}")


def _fresh_point(n: int, m: int, rng: random.Random, prime: int) -> FieldPoint:
    vs = [variable(i, r, n) for i in range(1, m + 1) for r in range(1, n + 1)]
    return FieldPoint.random(vs, rng, prime)


def _eval_factored(fr: FactoredRational, point: FieldPoint, cache: dict) -> int:
    p = point.prime

    def pv(poly: Polynomial) -> int:
        v = cache.get(poly)
        if v is None:
            v = point.eval_poly(poly)
            cache[poly] = v
        return v

    den = (fr.coeff.denominator % p) * point.eval_monomial(fr.mono_den) % p
    for f, e in fr.den.items():
        den = den * pow(pv(f), e, p) % p
    if den == 0:
        raise VanishingDenominator("denominator vanishes at the point")
    num = (fr.coeff.numerator % p) * point.eval_monomial(fr.mono_num) % p
    for f, e in fr.num.items():
        num = num * pow(pv(f), e, p) % p
    return num * pow(den, p - 2, p) % p


def _mod_kappa(vec_a: List[int], vec_b: List[int], r: int, n: int, prime: int) -> int:
    total = 0
    for j in range(r, r + n):
        term = 1
        for k in range(r + 1, j + 1):
            term = term * vec_b[(k - 1) % n] % prime
        for k in range(j + 1, r + n):
            term = term * vec_a[(k - 1) % n] % prime
        total = (total + term) % prime
    return total


# ---------------------------------------------------------------------------
# suites

def suite_involution(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("involution")
    for n in range(2, cfg.max_n + 1):
        for m in range(2, cfg.max_m + 1):
            for i in range(1, m):
                def chk(n=n, m=m, i=i):
                    base = rmatrix.VectorTuple.symbolic(n, m)
                    if base.apply_word([i, i]).entries_equal(base):
                        return None
                    return "eta_i twice is not the identity"
                _run_case(rep, f"involution n={n} m={m} i={i}", chk)
    return rep


def suite_braid(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("braid")
    for n in range(2, cfg.max_n + 1):
        for m in range(3, max(cfg.max_m, 3) + 1):
            for i in range(1, m - 1):
                modular = cfg.mode == "modular" or n >= 4
                tag = "modular" if modular else "symbolic"

                def chk(n=n, m=m, i=i, modular=modular):
                    u, v = [i, i + 1, i], [i + 1, i, i + 1]
                    if not modular:
                        base = rmatrix.VectorTuple.symbolic(n, m)
                        if base.apply_word(u).entries_equal(base.apply_word(v)):
                            return None
                        return "braid words disagree symbolically"
                    rng = _rng(cfg, f"braid{n},{m},{i}")
                    done = 0
                    while done < cfg.points:
                        pt = _fresh_point(n, m, rng, cfg.prime)
                        grid = rmatrix.numeric_tuple(n, m, pt)
                        try:
                            a = rmatrix.apply_word_mod(grid, u, pt)
                            b = rmatrix.apply_word_mod(grid, v, pt)
                        except VanishingDenominator:
                            continue
                        if a != b:
                            return f"braid words disagree at point #{done}"
                        done += 1
                    return None
                _run_case(rep, f"braid n={n} m={m} i={i} ({tag})", chk)
    return rep


def _oneshift_specs(cfg: VerifyConfig):
    for n in range(2, cfg.max_n + 1):
        max_gap = 3 if n <= 3 else 2
        for i in range(1, cfg.max_m):
            for j in range(i + 1, min(i + max_gap, cfg.max_m) + 1):
                for direction in ("down", "up"):
                    yield formulas.ShiftSpec(n, j, i, j, direction)


def suite_oneshift(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("oneshift")
    for spec in _oneshift_specs(cfg):
        def chk(spec=spec):
            n, i, j = spec.n, spec.i, spec.j
            direct = rmatrix.VectorTuple.symbolic(n, spec.m).apply_word(spec.word())
            for k in range(i, j + 1):
                for r in range(1, n + 1):
                    if not direct.raw_entry(k, r).equals(formulas.oneshift_action(spec, k, r)):
                        return f"target x_{k}^({r}) disagrees"
            # the kappa of the pair the shift brings together
            half = (list(range(i, j - 1)) if spec.direction == "down"
                    else list(range(j - 1, i, -1)))
            part = rmatrix.VectorTuple.symbolic(n, spec.m).apply_word(half)
            pos = j - 1 if spec.direction == "down" else i
            for r in range(1, n + 1):
                kap = rmatrix.kappa(part.vector(pos), part.vector(pos + 1), r, n)
                if not kap.equals(formulas.oneshift_kappa(spec, r)):
                    return f"kappa_{r} disagrees"
            return None
        _run_case(rep, f"oneshift n={spec.n} {spec.direction} i={spec.i} j={spec.j}", chk)
    return rep


def _transposition_specs(n: int, m: int):
    for i in range(1, m - 1):
        for j in range(i + 2, m + 1):
            for family in ("first", "dual"):
                ks = range(i, j) if family == "first" else range(i + 1, j + 1)
                for k in ks:
                    yield formulas.TranspositionSpec(n, m, i, j, k, family)


def _check_transposition_symbolic(spec: formulas.TranspositionSpec) -> Optional[str]:
    n, m, i, j, k = spec.n, spec.m, spec.i, spec.j, spec.k
    direct = rmatrix.VectorTuple.symbolic(n, m).apply_word(spec.word())
    closed = formulas.full_action(spec)
    for pos in range(1, m + 1):
        for r in range(1, n + 1):
            if not direct.raw_entry(pos, r).equals(closed[pos][r]):
                return f"full action at x_{pos}^({r}) disagrees"
    if i < k < j:
        for r in range(1, n + 1):
            if spec.family == "first":
                kap = rmatrix.kappa(direct.vector(k - 1), direct.vector(k), r, n)
                ok = kap.equals(formulas.trans_kappa(spec, r))
            else:
                kap = rmatrix.kappa(direct.vector(k), direct.vector(k + 1), r, n)
                ok = kap.equals(formulas.trans_kappa_dual(spec, r))
            if not ok:
                return f"kappa_{r} disagrees"
        for r in range(1, n + 1):
            conj = formulas.trans_conjugate(n, i, j, k, r)
            word = formulas.TranspositionSpec(n, m, i, j, i, "first").word()
            full = rmatrix.VectorTuple.symbolic(n, m).apply_word(word)
            if not full.raw_entry(k, r).equals(conj):
                return f"conjugated transposition at x_{k}^({r}) disagrees"
    return None


def _check_transposition_modular(spec: formulas.TranspositionSpec,
                                 cfg: VerifyConfig) -> Optional[str]:
    n, m, i, j, k = spec.n, spec.m, spec.i, spec.j, spec.k
    closed = formulas.full_action(spec)
    rng = _rng(cfg, f"trans{n},{m},{i},{j},{k},{spec.family}")
    done = 0
    while done < cfg.points:
        pt = _fresh_point(n, m, rng, cfg.prime)
        cache: dict = {}
        try:
            grid = rmatrix.apply_word_mod(rmatrix.numeric_tuple(n, m, pt), spec.word(), pt)
            for pos in range(1, m + 1):
                for r in range(1, n + 1):
                    want = _eval_factored(closed[pos][r], pt, cache)
                    if grid[pos - 1][r - 1] != want:
                        return f"full action at x_{pos}^({r}) disagrees at point #{done}"
            if i < k < j:
                for r in range(1, n + 1):
                    if spec.family == "first":
                        kap = _mod_kappa(grid[k - 2], grid[k - 1], r, n, cfg.prime)
                        want = _eval_factored(formulas.trans_kappa(spec, r), pt, cache)
                    else:
                        kap = _mod_kappa(grid[k - 1], grid[k], r, n, cfg.prime)
                        want = _eval_factored(formulas.trans_kappa_dual(spec, r), pt, cache)
                    if kap != want:
                        return f"kappa_{r} disagrees at point #{done}"
        except VanishingDenominator:
            continue
        done += 1
    return None


def suite_transposition(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("transposition")
    for n in range(2, cfg.max_n + 1):
        for m in range(3, cfg.max_m + 1):
            for spec in _transposition_specs(n, m):
                modular = cfg.mode == "modular" or n >= 4
                tag = "modular" if modular else "symbolic"

                def chk(spec=spec, modular=modular):
                    if modular:
                        return _check_transposition_modular(spec, cfg)
                    return _check_transposition_symbolic(spec)
                _run_case(
                    rep,
                    f"transposition n={n} m={m} ({spec.i},{spec.j},{spec.k}) "
                    f"{spec.family} ({tag})",
                    chk,
                )
    return rep


def suite_sigma_identity(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("sigma-identity")
    for n in range(2, cfg.max_n + 1):
        for i in range(1, cfg.max_m):
            for j in range(i + 1, min(i + 3, cfg.max_m) + 1):
                for r in range(1, n + 1):
                    _run_case(
                        rep, f"sigma-identity n={n} window=({i},{j}) r={r}",
                        lambda n=n, i=i, j=j, r=r: None
                        if specialfn.check_sigma_identity(n, i, j, r)
                        else "expansion mismatch",
                    )
    return rep


def suite_partial_sums(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("partial-sums")
    grids = [(4, 1, 3, 4)]  # the worked instance
    for n in range(2, min(cfg.max_n, 3) + 1):
        for i in range(1, cfg.max_m):
            for j in range(i + 1, cfg.max_m + 1):
                grids.extend((n, i, j, r) for r in range(1, n + 1))
    for n, i, j, r in grids:
        _run_case(
            rep, f"partial-sums n={n} window=({i},{j}) r={r}",
            lambda n=n, i=i, j=j, r=r: None
            if specialfn.check_partial_sum_lemma(n, i, j, r)
            else "a partial-sum product formula fails",
        )
    return rep


def suite_two_sums(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("two-sums")
    for n in range(2, min(cfg.max_n, 3) + 1):
        for i in (1,):
            for k in range(i + 1, min(cfg.max_m, i + 2) + 1):
                for j in range(k + 1, min(cfg.max_m, k + 2) + 1):
                    for r in range(1, n + 1):
                        for q in (0, 1, (n - 1) * (j - k + 1)):
                            for mq in range(0, 2 * (n - 1) + 1):
                                _run_case(
                                    rep,
                                    f"two-sums n={n} i={i} j={j} k={k} r={r} "
                                    f"m={mq + q} q={q}",
                                    lambda n=n, i=i, j=j, k=k, r=r, m=mq + q, q=q: None
                                    if specialfn.check_two_sum_lemma(n, i, j, k, r, m, q)
                                    else "branch identity fails",
                                )
    return rep


def suite_omega_identity(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("omega-identity")
    grids = [(4, 1, 4, 3, 4)]  # the worked instance
    for n in range(2, min(cfg.max_n, 3) + 1):
        for i in range(1, cfg.max_m):
            for j in range(i + 2, cfg.max_m + 1):
                for k in range(i + 1, j):
                    grids.extend((n, i, j, k, r) for r in range(1, n + 1))
    for n, i, j, k, r in grids:
        _run_case(
            rep, f"omega-identity n={n} i={i} j={j} k={k} r={r}",
            lambda n=n, i=i, j=j, k=k, r=r: None
            if specialfn.check_omega_identity(n, i, j, k, r)
            else "recursion between omega_k and omega_{k-1} fails",
        )
    return rep


def suite_comb_tau(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("comb-tau")
    for n in range(2, cfg.max_n + 1):
        for m in range(1, cfg.max_m + 1):
            for r in range(1, n + 1):
                def chk(n=n, m=m, r=r):
                    for k in range(0, m * (n - 1) + 1):
                        if cylnet.gen_tau(n, m, r, k) != specialfn.tau(n, k, r, 1, m):
                            return f"tau_{k} disagrees"
                    return None
                _run_case(rep, f"comb-tau n={n} m={m} r={r}", chk)
    return rep


def suite_comb_sigma(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("comb-sigma")
    for n in range(2, cfg.max_n + 1):
        for m in range(1, cfg.max_m + 1):
            for r in range(1, n + 1):
                def chk(n=n, m=m, r=r):
                    for k in range(0, m * (n - 1) + 1):
                        if cylnet.gen_sigma(n, m, r, k) != specialfn.sigma(n, k, r, 1, m):
                            return f"sigma_{k} disagrees"
                        if cylnet.gen_sigma_bar(n, m, r, k) != specialfn.sigma_bar(n, k, r, 1, m):
                            return f"sigma-bar_{k} disagrees"
                    return None
                _run_case(rep, f"comb-sigma n={n} m={m} r={r}", chk)
    return rep


def suite_comb_omega(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("comb-omega")
    for n in range(2, cfg.max_n + 1):
        for m in range(2, cfg.max_m + 1):
            for r in range(1, n + 1):
                def chk(n=n, m=m, r=r):
                    counts = set()
                    for cut in range(1, m):
                        if cylnet.gen_omega(n, m, r, cut) != specialfn.omega(n, cut, r, 1, m):
                            return f"omega at cut {cut} disagrees"
                        counts.add(len(cylnet.omega_class(n, m, r)))
                    if len(counts) != 1:
                        return "family count depends on the cut"
                    return None
                _run_case(rep, f"comb-omega n={n} m={m} r={r}", chk)
    return rep


def _all_path_families(n: int, m: int, sources: Tuple[int, ...], sinks: Tuple[int, ...]):
    """Families (crossing allowed) with the given source and sink sets."""
    from itertools import product

    options = []
    for s in sources:
        opts = []
        for bits in range(1 << m):
            steps = "".join("T" if bits & (1 << t) else "Z" for t in range(m))
            p = cylnet.HighwayPath(n, m, s, steps)
            if p.sink in sinks:
                opts.append(p)
        options.append(opts)
    for combo in product(*options):
        if tuple(sorted(p.sink for p in combo)) == tuple(sorted(sinks)):
            yield combo


def suite_degree_lemma(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("degree-lemma")
    from itertools import combinations

    for n in range(2, cfg.max_n + 1):
        for m in range(1, cfg.max_m + 1):
            def chk(n=n, m=m):
                cylnet._check_guard(n, m)
                residues = range(1, n + 1)
                for size in range(1, n + 1):
                    for sources in combinations(residues, size):
                        for sinks in combinations(residues, size):
                            want = cylnet.degree_of_class(sources, sinks, n)
                            for fam in _all_path_families(n, m, sources, sinks):
                                deg = sum(p.degree for p in fam)
                                if deg % n != want:
                                    return (f"family {sources}->{sinks} has degree "
                                            f"{deg} != {want} mod {n}")
                return None
            _run_case(rep, f"degree-lemma n={n} m={m}", chk)
    return rep


def suite_switch_connectivity(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("switch-connectivity")
    n = m = 3
    for r in range(1, n + 1):
        for k in range(0, m * (n - 1) + 1):
            def chk(r=r, k=k):
                fams = set(cylnet.enumerate_families(cylnet.FamilyClass(n, m, r, k, "exact")))
                start = cylnet.initial_family(n, m, r, k)
                if start not in fams:
                    return "initial family is not in its class"
                reached = cylnet.switch_component(start)
                if not fams <= reached:
                    missing = next(iter(fams - reached))
                    return f"family {missing.to_obj()['paths']} unreachable"
                return None
            _run_case(rep, f"switch-connectivity n=3 m=3 r={r} k={k}", chk)
    return rep


def q1_factor() -> Polynomial:
    """The degree-4 polynomial claimed to divide the numerator of
    s_2 s_3 s_1 s_2 (x_2^{(1)}) at n = 2, m = 4."""
    terms = [
        (1, [(1, 1), (1, 2), (2, 1), (2, 2)]),
        (1, [(1, 1), (1, 2), (2, 1), (3, 2)]),
        (1, [(1, 2), (2, 1), (2, 1), (3, 2)]),
        (1, [(1, 2), (2, 1), (3, 1), (3, 2)]),
        (1, [(1, 1), (1, 2), (2, 1), (4, 2)]),
        (1, [(1, 2), (2, 1), (2, 1), (4, 2)]),
        (1, [(1, 1), (1, 2), (3, 1), (4, 2)]),
        (2, [(1, 2), (2, 1), (3, 1), (4, 2)]),
        (1, [(2, 1), (2, 2), (3, 1), (4, 2)]),
        (1, [(1, 2), (3, 1), (3, 1), (4, 2)]),
        (1, [(2, 2), (3, 1), (3, 1), (4, 2)]),
        (1, [(1, 2), (2, 1), (4, 1), (4, 2)]),
        (1, [(1, 2), (3, 1), (4, 1), (4, 2)]),
        (1, [(2, 2), (3, 1), (4, 1), (4, 2)]),
        (1, [(3, 1), (3, 2), (4, 1), (4, 2)]),
    ]
    from .polyalg import mono_from_pairs

    pairs = []
    for c, vs in terms:
        counts: Dict[Tuple[int, int], int] = {}
        for v in vs:
            counts[v] = counts.get(v, 0) + 1
        pairs.append((mono_from_pairs(counts.items()), c))
    return Polynomial.from_terms(pairs)


def suite_divisibility_q1(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport("divisibility-q1")

    def chk():
        from .polyalg import poly_divide_exact

        word = rmatrix.word_from_expr([2, 3, 1, 2], 4)
        res = rmatrix.VectorTuple.symbolic(2, 4).apply_word(word)
        num = res.entry(2, 1).num
        quot = poly_divide_exact(num, q1_factor())
        if quot is None:
            return "claimed factor does not divide the numerator"
        return None
    _run_case(rep, "divisibility n=2 m=4 word=s2*s3*s1*s2 entry=(2,1)", chk)
    return rep


SUITES: Dict[str, Callable[[VerifyConfig], VerifyReport]] = {
    "involution": suite_involution,
    "braid": suite_braid,
    "oneshift": suite_oneshift,
    "transposition": suite_transposition,
    "sigma-identity": suite_sigma_identity,
    "partial-sums": suite_partial_sums,
    "two-sums": suite_two_sums,
    "omega-identity": suite_omega_identity,
    "comb-tau": suite_comb_tau,
    "comb-sigma": suite_comb_sigma,
    "comb-omega": suite_comb_omega,
    "degree-lemma": suite_degree_lemma,
    "switch-connectivity": suite_switch_connectivity,
    "divisibility-q1": suite_divisibility_q1,
}


def run_suite(name: str, cfg: VerifyConfig) -> List[VerifyReport]:
    if name == "all":
        return [fn(cfg) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return [SUITES[name](cfg)]
