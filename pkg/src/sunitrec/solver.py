"""Exhaustive enumeration of S-unit terms and pair sums below the bounds.

Membership is decided by the gcd-stripping test in :func:`places.is_s_unit`.
Every solution, and every enumerated value with all indices at most
``cross_check_upto``, is re-decided from its divisor.  Disagreement raises
:class:`MembershipMismatch`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

from .bounds import BoundParams, BoundReport, pair_sum_bound, single_term_bound
from .exactalg import RatFunc, poly_gcd
from .places import Divisor, PlaceSet, enlarge, is_s_unit, is_s_unit_by_divisor
from .recurrence import Recurrence, check_indices, sum_terms, terms_upto

Index = Union[int, tuple[int, int]]

CROSS_CHECK_UPTO = 8


class MembershipMismatch(RuntimeError):
    """The two membership tests disagreed on a value."""


@dataclass(frozen=True)
class Witness:
    value: RatFunc
    divisor: Divisor


@dataclass(frozen=True)
class WindowResult:
    lo: int
    hi: int
    solutions: tuple[Index, ...]

    @property
    def count(self) -> int:
        return len(self.solutions)


@dataclass
class SolutionReport:
    mode: str
    bound_report: BoundReport | None
    solutions: list[Index]
    witnesses: dict[Index, Witness]
    user_solutions: list[Index] = field(default_factory=list)
    scan_window: WindowResult | None = None
    cross_checked: int = 0


@dataclass(frozen=True)
class VerifyResult:
    indices: tuple[int, ...]
    enlarged_S: PlaceSet
    value: RatFunc
    verdict: bool
    divisor: Divisor | None


def _certify(value: RatFunc, S: PlaceSet, fast: bool) -> Divisor | None:
    ok, d = is_s_unit_by_divisor(value, S)
    if ok != fast:
        raise MembershipMismatch(
            f"membership tests disagree on {value.render()}: gcd path {fast}, divisor path {ok}"
        )
    return d


def _single_chunk(terms: Sequence[RatFunc], offset: int, S: PlaceSet, ns: Sequence[int]) -> list[int]:
    return [n for n in ns if is_s_unit(terms[n - offset], S)]


def _pair_chunk(
    terms: Sequence[RatFunc], S: PlaceSet, ns: Sequence[int], prefilter: bool = True
) -> list[tuple[int, int]]:
    P = S.product
    if not prefilter or P.is_constant() or not all(t.is_polynomial() for t in terms):
        hits = []
        for n in ns:
            gn = terms[n]
            for m in range(n):
                if is_s_unit(gn + terms[m], S):
                    hits.append((n, m))
        return hits

    # Polynomial terms: gcd(G_n + G_m, P) = gcd(r_n + r_m, P) with r_k = G_k mod P.
    # A coprime residue and a nonconstant sum rule the pair out; the rest get the full test.
    residues = [t.num % P for t in terms]
    degrees = [t.num.degree for t in terms]
    hits = []
    for n in ns:
        gn, rn, dn = terms[n], residues[n], degrees[n]
        for m in range(n):
            dm = degrees[m]
            if dn != dm and max(dn, dm) > 0 and poly_gcd(rn + residues[m], P).is_one():
                continue
            if is_s_unit(gn + terms[m], S):
                hits.append((n, m))
    return hits


def _run(worker, args_list: list[tuple], threads: int) -> list:
    if threads <= 1 or len(args_list) <= 1:
        out = []
        for args in args_list:
            out += worker(*args)
        return sorted(out)
    out = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(worker, *zip(*args_list)):
            out += part
    return sorted(out)


def _split(values: Sequence[int], threads: int) -> list[list[int]]:
    if threads <= 1:
        return [list(values)]
    k = min(len(values), threads * 4) or 1
    # round-robin so every chunk mixes cheap low indices with costly high ones
    return [list(values[i::k]) for i in range(k)]


def _scan_single(terms: Sequence[RatFunc], offset: int, S: PlaceSet, lo: int, hi: int, threads: int) -> list[int]:
    ns = list(range(lo, hi + 1))
    return _run(_single_chunk, [(terms, offset, S, c) for c in _split(ns, threads)], threads)


def _scan_pair(
    terms: Sequence[RatFunc], S: PlaceSet, lo: int, hi: int, threads: int, prefilter: bool = True
) -> list[tuple[int, int]]:
    ns = list(range(max(lo, 1), hi + 1))
    hits = _run(_pair_chunk, [(terms, S, c, prefilter) for c in _split(ns, threads)], threads)
    return sorted(hits)


def _value(terms: Sequence[RatFunc], idx: Index) -> RatFunc:
    if isinstance(idx, tuple):
        n, m = idx
        return terms[n] + terms[m]
    return terms[idx]


def _assemble(
    mode: str,
    report: BoundReport,
    terms: Sequence[RatFunc],
    hits: list,
    universe: list,
    cross_check_upto: int,
) -> SolutionReport:
    S = report.enlarged_S
    hit_set = set(hits)
    checked = 0
    for idx in universe:
        top = idx[0] if isinstance(idx, tuple) else idx
        if top > cross_check_upto or idx in hit_set:
            continue
        _certify(_value(terms, idx), S, False)
        checked += 1
    witnesses: dict[Index, Witness] = {}
    user: list[Index] = []
    for idx in hits:
        value = _value(terms, idx)
        witnesses[idx] = Witness(value, _certify(value, S, True))
        checked += 1
        if is_s_unit(value, report.user_S):
            _certify(value, report.user_S, True)
            user.append(idx)
    return SolutionReport(mode, report, list(hits), witnesses, user, cross_checked=checked)


def solve_single(
    r: Recurrence,
    S_user: PlaceSet,
    params: BoundParams = BoundParams(),
    threads: int = 1,
    cross_check_upto: int = CROSS_CHECK_UPTO,
) -> SolutionReport:
    """All ``n <= final_bound`` with ``G_n`` an S-unit for the enlarged ``S``."""
    report = single_term_bound(r, S_user, params)
    hi = report.final_bound
    terms = terms_upto(r, hi)
    hits = _scan_single(terms, 0, report.enlarged_S, 0, hi, threads)
    return _assemble("single", report, terms, hits, list(range(hi + 1)), cross_check_upto)


def solve_pair(
    r: Recurrence,
    S_user: PlaceSet,
    params: BoundParams = BoundParams(),
    threads: int = 1,
    cross_check_upto: int = CROSS_CHECK_UPTO,
) -> SolutionReport:
    """All ``n > m`` with ``n <= final_bound`` and ``G_n + G_m`` an S-unit.

    Only the sum is constrained; ``G_n`` or ``G_m`` may individually vanish.
    """
    report = pair_sum_bound(r, S_user, params)
    hi = report.final_bound
    terms = terms_upto(r, hi)
    hits = _scan_pair(terms, report.enlarged_S, 0, hi, threads)
    small = [(n, m) for n in range(min(hi, cross_check_upto) + 1) for m in range(n)]
    return _assemble("pair", report, terms, hits, small, cross_check_upto)


def verify_sum(r: Recurrence, S: PlaceSet, indices: Sequence[int]) -> VerifyResult:
    """S-unit test of ``G_{n_1} + ... + G_{n_t}`` against ``S`` enlarged by the data."""
    check_indices(indices)
    enlarged = enlarge(S, [*r.coeffs, *r.roots])
    value = sum_terms(r, indices)
    verdict = is_s_unit(value, enlarged)
    d = _certify(value, enlarged, verdict)
    return VerifyResult(tuple(indices), enlarged, value, verdict, d)


def window_scan(
    r: Recurrence,
    S: PlaceSet,
    mode: str,
    lo: int,
    hi: int,
    threads: int = 1,
) -> WindowResult:
    """Solutions with top index in ``[lo, hi]``; pair mode takes every ``m < n``.

    Found solutions are returned as-is; above a correct bound there are none.
    """
    if lo > hi:
        raise ValueError("empty window: lo > hi")
    if lo < 0:
        raise ValueError("window indices must be nonnegative")
    enlarged = enlarge(S, [*r.coeffs, *r.roots])
    if mode == "single":
        terms = terms_upto(r, hi, lo)
        hits = _scan_single(terms, lo, enlarged, lo, hi, threads)
    elif mode == "pair":
        terms = terms_upto(r, hi)
        hits = _scan_pair(terms, enlarged, lo, hi, threads)
    else:
        raise ValueError(f"unknown scan mode {mode!r}")
    return WindowResult(lo, hi, tuple(hits))
