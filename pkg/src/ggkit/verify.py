"""Verification of the counting theorems, q-series identities, and bijections.

Every check computes its two sides by independent routes (multisum vs product,
enumeration vs closed form, forward map vs inverse) in exact arithmetic and
reports the first differing coefficient on failure; nothing is compared with a
tolerance.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import bailey as bailey_mod
from .bijections import (
    fh_toggle,
    fh_untoggle,
    double,
    halve,
    lambda_chain,
    lambda_full,
    lambda_step,
    phi_chain,
    phi_full,
    phi_step,
    psi_chain,
    psi_full,
    psi_step,
    theta_chain,
    theta_full,
    theta_step,
)
from .marking import (
    classify_f,
    classify_g,
    first_row_types,
    gg_mark,
    gordon_mark,
    gordon_row_counts,
    in_stable_class,
    is_doubled,
    is_reduced,
)
from .partitions import (
    FamilySpec,
    Overpartition,
    enumerate_overpartitions,
    family_counts_by_n,
    iter_overpartitions_bounded,
    iter_partitions_bounded,
    o_family_stats,
    overpartition_ofh_tables,
    overpartition_p_counts,
    partition_family_tables,
    satisfies_family,
)
from .series import (
    BivariateSeries,
    LaurentSeries,
    bounded_product,
    euler_product,
    pochhammer_finite,
    pochhammer_infinite,
    pochhammer_minimum,
    product_triple,
    theta_bressoud_sum,
)

IDENTITY_TAGS = (
    "AG", "AG-X", "BRESSOUD", "BRESSOUD-X", "OGG", "OGG-X", "F-GF", "H-GF",
    "CLASS-F", "CLASS-G", "CLASS-E", "CLASS-B", "LEM-N1", "LEM-N2", "JTP",
)
SUMMED_TAGS = ("AG", "AG-X", "BRESSOUD", "BRESSOUD-X", "OGG", "OGG-X", "F-GF", "H-GF")
CLASS_TAGS = ("CLASS-F", "CLASS-G", "CLASS-E", "CLASS-B", "LEM-N1", "LEM-N2")

_ENUM_FAMILY = {"AG-X": "B", "BRESSOUD-X": "C", "OGG-X": "O", "F-GF": "F", "H-GF": "H"}


class DegenerateIdentityError(ValueError):
    """A summed identity was requested with no summation variables (k = 1)."""


@dataclass
class VerificationReport:
    identity: str
    params: dict
    truncation: int | None
    ok: bool
    detail: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "truncation": self.truncation,
            "verdict": self.verdict,
            "detail": self.detail,
        }

    def __str__(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        tail = f": {self.detail}" if self.detail and not self.ok else ""
        ts = f" T={self.truncation}" if self.truncation is not None else ""
        return f"{self.verdict.upper():4s} {self.identity} {ps}{ts}{tail}"


def _series_report(tag: str, params: dict, T: int | None,
                   lhs: LaurentSeries, rhs: LaurentSeries) -> VerificationReport:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return VerificationReport(tag, params, T, True)
    return VerificationReport(
        tag, params, T, False,
        f"first difference at q^{diff}: lhs={lhs.coefficient(diff)}, rhs={rhs.coefficient(diff)}",
    )


# ---------------------------------------------------------------------------
# Multisum left-hand sides and product right-hand sides
# ---------------------------------------------------------------------------

_INVPOCH_CACHE: dict[tuple[int, int, int], LaurentSeries] = {}
_BRACKET_CACHE: dict[tuple[str, int, int], LaurentSeries] = {}


def _inv_poch(base: int, m: int, T: int) -> LaurentSeries:
    key = (base, m, T)
    out = _INVPOCH_CACHE.get(key)
    if out is None:
        out = pochhammer_finite(1, base, base, m, T).inverse().truncated(T)
        _INVPOCH_CACHE[key] = out
    return out


def _stable_bracket(n1: int, T: int) -> LaurentSeries:
    """(-q^{2-2N1}; q^2)_{N1-1} (-q^{1-2N1}; q^2)_{N1} q^{2 N1^2} for N1 >= 1."""
    key = ("stable", n1, T)
    out = _BRACKET_CACHE.get(key)
    if out is None:
        parts = [
            (2 * n1 * n1, lambda t: LaurentSeries.monomial(2 * n1 * n1, t)),
            (pochhammer_minimum(-1, 2 - 2 * n1, 2, n1 - 1),
             lambda t: pochhammer_finite(-1, 2 - 2 * n1, 2, n1 - 1, t)),
            (pochhammer_minimum(-1, 1 - 2 * n1, 2, n1),
             lambda t: pochhammer_finite(-1, 1 - 2 * n1, 2, n1, t)),
        ]
        out = bounded_product(parts, T)
        _BRACKET_CACHE[key] = out
    return out


def _even_bracket(n1: int, T: int) -> LaurentSeries:
    """(-q^{1-2N1}; q^2)_{N1} q^{2 N1^2} for N1 >= 0."""
    key = ("even", n1, T)
    out = _BRACKET_CACHE.get(key)
    if out is None:
        parts = [
            (2 * n1 * n1, lambda t: LaurentSeries.monomial(2 * n1 * n1, t)),
            (pochhammer_minimum(-1, 1 - 2 * n1, 2, n1),
             lambda t: pochhammer_finite(-1, 1 - 2 * n1, 2, n1, t)),
        ]
        out = bounded_product(parts, T)
        _BRACKET_CACHE[key] = out
    return out


def _tuple_increment(tag: str, i: int, j: int, n: int) -> int:
    """Guaranteed-minimal order contribution of N_j = n (1-based position j)."""
    if tag in ("AG", "AG-X"):
        return n * n + (n if j >= i else 0)
    if tag in ("BRESSOUD", "BRESSOUD-X"):
        if j == 1:
            return n * n + (2 * n if i == 1 else 0)
        return 2 * n * n + (2 * n if j >= i else 0)
    if tag in ("OGG", "OGG-X", "H-GF"):
        if j == 1:
            return n
        return 2 * n * n + (2 * n if j >= i + 1 else 0)
    if tag == "F-GF":
        if j == 1:
            return n + (2 * n if i == 1 else 0)
        return 2 * n * n + (2 * n if j >= i else 0)
    raise ValueError(tag)


def _iter_tuples(tag: str, k: int, i: int, T: int):
    """Nonincreasing tuples (N_1..N_{k-1}) whose minimal term order is <= T."""
    vals: list[int] = []

    def rec(j: int, cap: int | None, rem: int):
        n = 0
        while (cap is None or n <= cap):
            inc = _tuple_increment(tag, i, j, n)
            if inc > rem:
                break
            vals.append(n)
            if j == k - 1:
                yield tuple(vals)
            else:
                yield from rec(j + 1, n, rem - inc)
            vals.pop()
            n += 1

    yield from rec(1, None, T)


def _term_series(tag: str, k: int, i: int, tup: tuple[int, ...], T: int) -> LaurentSeries:
    n1 = tup[0]
    diffs = [tup[j] - (tup[j + 1] if j + 1 < k - 1 else 0) for j in range(k - 1)]
    if tag in ("AG", "AG-X"):
        e = sum(n * n for n in tup) + sum(tup[i - 1:])
        s = LaurentSeries.monomial(e, T)
        for d in diffs:
            s = s * _inv_poch(1, d, T)
        return s.truncated(T)
    if tag in ("BRESSOUD", "BRESSOUD-X"):
        e = 2 * (sum(n * n for n in tup[1:]) + sum(tup[i - 1:]))
        s = _even_bracket(n1, T)
        if e:
            s = s.shift(e).truncated(T)
    else:
        start = i - 1 if tag == "F-GF" else i
        e = 2 * (sum(n * n for n in tup[1:]) + sum(tup[start:]))
        s = _stable_bracket(n1, T)
        if e:
            s = s.shift(e).truncated(T)
        if tag in ("OGG", "OGG-X"):
            n_i = tup[i - 1] if i <= k - 1 else 0  # an absent N_k counts as zero
            binom: dict[int, int] = {0: 1}
            binom[2 * n_i] = binom.get(2 * n_i, 0) + 1
            s = s * LaurentSeries.from_terms(binom, T)
    for d in diffs:
        s = s * _inv_poch(2, d, T)
    return s.truncated(T)


def multisum_lhs(tag: str, k: int, i: int, T: int, x_tracking: bool = False):
    """The summed side of the identity named by tag, truncated at T.

    With x_tracking, each tuple's contribution carries x**(N_1+...+N_{k-1});
    the return value is then a BivariateSeries.
    """
    if tag not in SUMMED_TAGS:
        raise ValueError(f"{tag} has no multisum form")
    if not k >= i >= 1:
        raise ValueError("parameters must satisfy k >= i >= 1")
    if k < 2:
        raise DegenerateIdentityError(f"degenerate form: {tag} needs k >= 2")
    skip_zero = tag in ("F-GF", "H-GF")
    acc_bi = BivariateSeries(T) if x_tracking else None
    acc = LaurentSeries.zero(T)
    for tup in _iter_tuples(tag, k, i, T):
        if tup[0] == 0:
            if skip_zero:
                continue
            term = LaurentSeries.one(T)
        else:
            term = _term_series(tag, k, i, tup, T)
        if x_tracking:
            acc_bi.add_series(sum(tup), term)
        else:
            acc = acc + term
    return acc_bi if x_tracking else acc


def product_rhs(tag: str, k: int, i: int, T: int) -> LaurentSeries:
    """The product side of the identity named by tag, truncated at T."""
    if not k >= i >= 1:
        raise ValueError("parameters must satisfy k >= i >= 1")
    inv_euler = euler_product(T).inverse()
    if tag in ("AG", "AG-X"):
        base = 2 * k + 1
        out = pochhammer_infinite(1, i, base, T)
        out = out * pochhammer_infinite(1, base - i, base, T)
        out = out * pochhammer_infinite(1, base, base, T)
        return (out * inv_euler).truncated(T)
    if tag in ("BRESSOUD", "BRESSOUD-X"):
        base = 4 * k
        out = pochhammer_infinite(1, 2, 4, T)
        out = out * pochhammer_infinite(1, base, base, T)
        out = out * pochhammer_infinite(1, 2 * i - 1, base, T)
        out = out * pochhammer_infinite(1, base - (2 * i - 1), base, T)
        return (out * inv_euler).truncated(T)
    if tag in ("OGG", "OGG-X"):
        out = pochhammer_infinite(-1, 1, 1, T) * product_triple(k, i, T)
        return (out * inv_euler).truncated(T)
    raise ValueError(f"{tag} has no product form")


# ---------------------------------------------------------------------------
# Profile-indexed class generating functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassRecord:
    """One bucketed overpartition with the statistics class membership reads."""

    op: Overpartition
    weight: int
    fb: int
    mw: int
    c3: int
    stable: bool
    reduced: bool
    doubled: bool

    def in_class(self, cls: str, k: int, i: int) -> bool:
        if self.fb > i - 1 or self.mw > k - 1 or self.c3 > k - 2:
            return False
        if cls == "F":
            return self.stable
        if cls == "G":
            return self.reduced
        if cls == "E":
            return self.doubled
        raise ValueError(cls)


def _make_record(op: Overpartition) -> ClassRecord:
    fb, mw, c3 = o_family_stats(op.freq_table())
    return ClassRecord(op, op.weight(), fb, mw, c3,
                       in_stable_class(op), is_reduced(op), is_doubled(op))


def collect_class_buckets(n1_max: int, rows_max: int, weight_max: int
                          ) -> dict[tuple[int, ...], list[ClassRecord]]:
    """All overpartitions of weight <= weight_max bucketed by marking profile,
    restricted to at most rows_max rows of width at most n1_max.

    Buckets reused for verify_class_lemma at truncation T must reach weight
    T + n1_max**2: the shifted comparison reads the inner class that far.
    """
    buckets: dict[tuple[int, ...], list[ClassRecord]] = {(): [_make_record(Overpartition())]}
    for op in iter_overpartitions_bounded(weight_max, n1_max * rows_max):
        if not op.parts:
            continue
        rows = gg_mark(op).row_counts()
        if len(rows) <= rows_max and rows[0] <= n1_max:
            buckets.setdefault(rows, []).append(_make_record(op))
    return buckets


def collect_partition_buckets(n1_max: int, rows_max: int, weight_max: int
                              ) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Ordinary partitions bucketed by their greedy-marking profile."""
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {(): [()]}
    for parts in iter_partitions_bounded(weight_max, n1_max * rows_max):
        if not parts:
            continue
        rows = gordon_row_counts(parts)
        if len(rows) <= rows_max and rows[0] <= n1_max:
            buckets.setdefault(rows, []).append(parts)
    return buckets


def _trim(profile) -> tuple[int, ...]:
    p = tuple(profile)
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _check_profile(profile) -> tuple[int, ...]:
    p = tuple(int(x) for x in profile)
    if any(x < 0 for x in p) or any(p[j] < p[j + 1] for j in range(len(p) - 1)):
        raise ValueError(f"profile must be nonincreasing and nonnegative, got {p}")
    return p


def _enum_series(members, weight_cap: int):
    hist: dict[int, int] = {}
    for w in members:
        if w <= weight_cap:
            hist[w] = hist.get(w, 0) + 1

    def build(t: int) -> LaurentSeries:
        if t > weight_cap:
            raise ValueError(f"enumeration only covers weights up to {weight_cap}")
        return LaurentSeries.from_terms({w: c for w, c in hist.items() if w <= t}, t)

    return build


def _closed_profile_series(cls: str, profile: tuple[int, ...], i: int, T: int) -> LaurentSeries:
    n1 = profile[0] if profile else 0
    diffs = [profile[j] - (profile[j + 1] if j + 1 < len(profile) else 0)
             for j in range(len(profile))]
    if cls == "B":
        e = sum(n * n for n in profile) + sum(profile[i - 1:])
        s = LaurentSeries.monomial(e, T)
        for d in diffs:
            s = s * _inv_poch(1, d, T)
        return s.truncated(T)
    e = 2 * (sum(n * n for n in profile) + sum(profile[i - 1:]))
    parts = [(e, lambda t, e=e: LaurentSeries.monomial(e, t))]
    if cls in ("G", "F"):
        parts.append((pochhammer_minimum(-1, 1 - 2 * n1, 2, n1),
                      lambda t: pochhammer_finite(-1, 1 - 2 * n1, 2, n1, t)))
    if cls == "F":
        m = max(n1 - 1, 0)
        parts.append((pochhammer_minimum(-1, 2 - 2 * n1, 2, m),
                      lambda t: pochhammer_finite(-1, 2 - 2 * n1, 2, m, t)))
    s = bounded_product(parts, T)
    for d in diffs:
        s = s * _inv_poch(2, d, T)
    return s.truncated(T)


def verify_class_gf(profile, i: int, T: int, cls: str,
                    buckets=None, partition_buckets=None) -> VerificationReport:
    """Compare the enumerated weight series of a profile-indexed class with its
    closed form (cls in F/G/E/B), at truncation T."""
    profile = _check_profile(profile)
    k = len(profile) + 1
    if not k >= i >= 1:
        raise ValueError("profile length must be k-1 with k >= i >= 1")
    n1 = profile[0] if profile else 0
    params = {"profile": profile, "k": k, "i": i}
    weight_cap = T
    if cls == "B":
        if partition_buckets is None:
            partition_buckets = collect_partition_buckets(max(n1, 1), max(k - 1, 1), weight_cap)
        members = [sum(parts) for parts in partition_buckets.get(_trim(profile), [])
                   if satisfies_family(parts, FamilySpec("B", k, i))]
    else:
        if buckets is None:
            buckets = collect_class_buckets(max(n1, 1), max(k - 1, 1), weight_cap)
        members = [rec.weight for rec in buckets.get(_trim(profile), [])
                   if rec.in_class(cls, k, i)]
    lhs = _enum_series(members, weight_cap)(T)
    rhs = _closed_profile_series(cls, profile, i, T)
    return _series_report(f"CLASS-{cls}", params, T, lhs, rhs)


def verify_class_lemma(which: str, profile, i: int, T: int,
                       buckets=None) -> VerificationReport:
    """The two profile-level reduction laws: the F-class series equals a finite
    even Pochhammer times the G-class series (LEM-N1), and the G-class series
    equals a finite odd Pochhammer times the E-class series (LEM-N2)."""
    profile = _check_profile(profile)
    k = len(profile) + 1
    n1 = profile[0] if profile else 0
    if which == "LEM-N1":
        m = max(n1 - 1, 0)
        poch = (pochhammer_minimum(-1, 2 - 2 * n1, 2, m),
                lambda t: pochhammer_finite(-1, 2 - 2 * n1, 2, m, t))
        lo_cls, hi_cls = "G", "F"
    elif which == "LEM-N2":
        poch = (pochhammer_minimum(-1, 1 - 2 * n1, 2, n1),
                lambda t: pochhammer_finite(-1, 1 - 2 * n1, 2, n1, t))
        lo_cls, hi_cls = "E", "G"
    else:
        raise ValueError(which)
    weight_cap = T - poch[0]  # the inner series must reach further down-shifted
    if buckets is None:
        buckets = collect_class_buckets(max(n1, 1), max(k - 1, 1), weight_cap)
    recs = buckets.get(_trim(profile), [])
    lo_members = [rec.weight for rec in recs if rec.in_class(lo_cls, k, i)]
    hi_members = [rec.weight for rec in recs if rec.in_class(hi_cls, k, i)]
    lhs = _enum_series(hi_members, weight_cap)(T)
    rhs = bounded_product([poch, (0, _enum_series(lo_members, weight_cap))], T)
    params = {"profile": profile, "k": k, "i": i}
    return _series_report(which, params, T, lhs, rhs)


# ---------------------------------------------------------------------------
# Top-level identity dispatch
# ---------------------------------------------------------------------------


def verify_identity(tag: str, k: int | None = None, i: int | None = None,
                    T: int = 40, profile=None, counts=None,
                    buckets=None, partition_buckets=None) -> VerificationReport:
    """Verify one tagged identity; failures come back as reports, not errors."""
    if tag not in IDENTITY_TAGS:
        raise ValueError(f"unknown identity tag {tag!r}")
    if tag == "JTP":
        lhs = theta_bressoud_sum(k, i, T)
        rhs = product_triple(k, i, T)
        return _series_report(tag, {"k": k, "i": i}, T, lhs, rhs)
    if tag in ("CLASS-F", "CLASS-G", "CLASS-E", "CLASS-B"):
        return verify_class_gf(profile, i, T, tag[-1],
                               buckets=buckets, partition_buckets=partition_buckets)
    if tag in ("LEM-N1", "LEM-N2"):
        return verify_class_lemma(tag, profile, i, T, buckets=buckets)
    params = {"k": k, "i": i}
    if tag in ("AG", "BRESSOUD", "OGG"):
        lhs = multisum_lhs(tag, k, i, T)
        rhs = product_rhs(tag, k, i, T)
        return _series_report(tag, params, T, lhs, rhs)
    # bivariate: multisum against exhaustive enumeration counts
    lhs = multisum_lhs(tag, k, i, T, x_tracking=True)
    fam = _ENUM_FAMILY[tag]
    if counts is None:
        if fam in ("B", "C"):
            counts = partition_family_tables(T, [(k, i)])[(fam, k, i)]
        else:
            counts = overpartition_ofh_tables(T, [(k, i)])[(fam, k, i)]
    rhs = BivariateSeries.from_counts(counts, T)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return VerificationReport(tag, params, T, True)
    n, m = diff
    return VerificationReport(
        tag, params, T, False,
        f"first difference at x^{m} q^{n}: multisum={lhs.coefficient(n).get(m, 0)}, "
        f"enumeration={rhs.coefficient(n).get(m, 0)}",
    )


def verify_counting(theorem: str, k: int, i: int, n_max: int,
                    ofh_tables=None, p_counts=None, partition_tables=None) -> VerificationReport:
    """Exhaustive equality of the paired counting families up to n_max."""
    if theorem == "T1.5":
        if ofh_tables is None:
            ofh_tables = overpartition_ofh_tables(n_max, [(k, i)])
        if p_counts is None:
            p_counts = overpartition_p_counts(n_max, [(k, i)])
        left = family_counts_by_n(ofh_tables[("O", k, i)], n_max)
        right = p_counts[(k, i)]
        names = ("O", "P")
    elif theorem in ("T1.1", "T1.2"):
        if partition_tables is None:
            partition_tables = partition_family_tables(n_max, [(k, i)])
        a, b = ("C", "D") if theorem == "T1.1" else ("B", "A")
        left = family_counts_by_n(partition_tables[(a, k, i)], n_max)
        right = family_counts_by_n(partition_tables[(b, k, i)], n_max)
        names = (a, b)
    else:
        raise ValueError(f"unknown counting theorem {theorem!r}")
    params = {"k": k, "i": i, "n_max": n_max}
    bad = [n for n in range(n_max + 1) if left[n] != right[n]]
    if not bad:
        return VerificationReport(theorem, params, None, True)
    witness = ", ".join(f"n={n}: {names[0]}={left[n]}, {names[1]}={right[n]}" for n in bad[:5])
    return VerificationReport(theorem, params, None, False, witness)


# ---------------------------------------------------------------------------
# Bijection sweep
# ---------------------------------------------------------------------------


def _first_row_parts(op: Overpartition):
    m = gg_mark(op)
    return m, [op.parts[j] for j in m.row_indices(1)]


def verify_bijections(k: int, i: int, n_max: int) -> VerificationReport:
    """Run every roundtrip and weight law over all family members of weight <= n_max."""
    params = {"k": k, "i": i, "n_max": n_max}
    ospec = FamilySpec("O", k, i)
    checks = 0

    def fail(msg: str) -> VerificationReport:
        return VerificationReport("BIJECTIONS", params, None, False, msg)

    for n in range(n_max + 1):
        for op in enumerate_overpartitions(n):
            if not satisfies_family(op, ospec):
                continue
            m = gg_mark(op)
            rows = m.row_counts()
            if len(rows) > k - 1:
                return fail(f"{op!r}: {len(rows)} marking rows exceed k-1={k - 1}")
            n1 = rows[0] if rows else 0
            if in_stable_class(op):
                tau, red = phi_full(op)
                checks += 1
                if not is_reduced(red):
                    return fail(f"{op!r}: reduction left a clearable part in {red!r}")
                if gg_mark(red).row_counts() != rows:
                    return fail(f"{op!r}: reduction changed the marking profile")
                if op.weight() != sum(tau) + red.weight():
                    return fail(f"{op!r}: weight split violated by {tau} + {red!r}")
                if psi_full(tau, red) != op:
                    return fail(f"{op!r}: inverse of the full reduction differs")
                _, row1 = _first_row_parts(op)
                for p in range(2, n1 + 1):
                    rep = classify_f(m, p)
                    if not rep.pending:
                        continue
                    out = phi_step(op, p)
                    checks += 1
                    if out.weight() != op.weight() + 2:
                        return fail(f"{op!r}: step at {p} changed weight by {out.weight() - op.weight()}")
                    mo = gg_mark(out)
                    orep = classify_f(mo, p)
                    if not orep.advanced or orep.subcase != rep.subcase:
                        return fail(f"{op!r}: step at {p} landed outside its class")
                    if mo.row_counts() != rows:
                        return fail(f"{op!r}: step at {p} changed the profile")
                    _, row1o = _first_row_parts(out)
                    if any(row1[j] != row1o[j] for j in range(n1) if j not in (p - 1, p)):
                        return fail(f"{op!r}: step at {p} moved an untouched first-row part")
                    if psi_step(out, p) != op:
                        return fail(f"{op!r}: inverse step at {p} differs")
                    ch = phi_chain(op, p)
                    checks += 1
                    if ch.weight() != op.weight() + 2 * (n1 - p) + 2:
                        return fail(f"{op!r}: chain at {p} broke the weight law")
                    if not classify_f(gg_mark(ch), p).cleared:
                        return fail(f"{op!r}: chain at {p} did not clear the tail")
                    if psi_chain(ch, p) != op:
                        return fail(f"{op!r}: inverse chain at {p} differs")
            if is_reduced(op):
                eta, doubled = theta_full(op)
                checks += 1
                if not is_doubled(doubled):
                    return fail(f"{op!r}: odd removal left an overlined part")
                if gg_mark(doubled).row_counts() != rows:
                    return fail(f"{op!r}: odd removal changed the profile")
                if op.weight() != sum(eta) + doubled.weight():
                    return fail(f"{op!r}: odd: weight split violated")
                if lambda_full(eta, doubled) != op:
                    return fail(f"{op!r}: inverse of the odd removal differs")
                types = first_row_types(m)
                for p in range(1, n1 + 1):
                    rep = classify_g(m, p)
                    if not rep.pending:
                        continue
                    out = theta_step(op, p)
                    checks += 1
                    want = 1 if p == n1 else 2
                    if out.weight() != op.weight() + want:
                        return fail(f"{op!r}: type step at {p} changed weight wrongly")
                    mo = gg_mark(out)
                    if not classify_g(mo, p).advanced:
                        return fail(f"{op!r}: type step at {p} landed outside its class")
                    if mo.row_counts() != rows:
                        return fail(f"{op!r}: type step at {p} changed the profile")
                    types_o = first_row_types(mo)
                    if any(types[j] != types_o[j] for j in range(n1) if j not in (p - 1, p)):
                        return fail(f"{op!r}: type step at {p} flipped an untouched type")
                    if lambda_step(out, p) != op:
                        return fail(f"{op!r}: inverse type step at {p} differs")
                    ch = theta_chain(op, p)
                    checks += 1
                    if ch.weight() != op.weight() + 2 * (n1 - p) + 1:
                        return fail(f"{op!r}: type chain at {p} broke the weight law")
                    if lambda_chain(ch, p) != op:
                        return fail(f"{op!r}: inverse type chain at {p} differs")
            if is_doubled(op):
                halves = halve(op)
                checks += 1
                if double(halves) != op:
                    return fail(f"{op!r}: halve/double roundtrip differs")
                if op.weight() != 2 * sum(halves):
                    return fail(f"{op!r}: halving broke the weight law")
                if gordon_mark(halves) != m.marks:
                    return fail(f"{op!r}: halving changed the marks")
            if op.parts and satisfies_family(op, FamilySpec("F", k, i)):
                out = fh_toggle(op, k, i)
                checks += 1
                tgt = FamilySpec("H", k, i - 1 if i >= 2 else k)
                if not satisfies_family(out, tgt):
                    return fail(f"{op!r}: toggle missed the H family at i={tgt.i}")
                if len(out) != len(op):
                    return fail(f"{op!r}: toggle changed the part count")
                want = op.weight() - (2 * len(op) if i == 1 else 0)
                if out.weight() != want:
                    return fail(f"{op!r}: toggle changed the weight wrongly")
                if fh_untoggle(out, k, i) != op:
                    return fail(f"{op!r}: inverse toggle differs")
    return VerificationReport("BIJECTIONS", params, None, True, f"{checks} checks")


def verify_bailey(k: int, i: int, T: int = 40, n_depth: int = 6) -> list[VerificationReport]:
    """Chain construction checks: the defining relation at every stage, the
    closed seed form, and the limiting identity against the product form."""
    params = {"k": k, "i": i}
    chain = bailey_mod.run_chain(k, i, T)
    reports = []
    for st in chain.stages:
        ok, msg = bailey_mod.verify_pair_relation(st.pair, n_depth)
        reports.append(VerificationReport(
            f"PAIR-RELATION[{st.note}]", params, T, ok, msg))
    seed = chain.stage_by_note("seed").pair
    ok = True
    msg = ""
    for n in range(n_depth + 1):
        want = bailey_mod._inv_poch(seed.grid, n, seed.trunc)
        if seed.beta(n) != want:
            ok, msg = False, f"seed beta at n={n} differs from 1/(q;q)_n"
            break
    reports.append(VerificationReport("SEED-BETA", params, T, ok, msg))
    lhs, rhs = bailey_mod.limit_identity(chain, T)
    reports.append(_series_report("LIMIT", params, T, lhs, rhs))
    reports.append(_series_report("LIMIT-VS-PRODUCT", params, T,
                                  lhs, product_rhs("OGG", k, i, T)))
    return reports


# ---------------------------------------------------------------------------
# Suite runner (used by the CLI)
# ---------------------------------------------------------------------------


def _default_pairs(k, i, kmax):
    if k is not None and i is not None:
        return [(k, i)]
    if k is not None:
        return [(k, j) for j in range(1, k + 1)]
    return [(a, b) for a in range(1, kmax + 1) for b in range(1, a + 1)]


def _run_task(task) -> VerificationReport:
    kind = task[0]
    if kind == "identity":
        _, tag, k, i, T, profile = task
        return verify_identity(tag, k, i, T, profile=profile)
    if kind == "counting":
        _, theorem, k, i, n_max = task
        return verify_counting(theorem, k, i, n_max)
    if kind == "bijections":
        _, k, i, n_max = task
        return verify_bijections(k, i, n_max)
    raise ValueError(task)


def build_tasks(suite: str, k=None, i=None, n_max=None, T=None, profile=None) -> list[tuple]:
    tasks: list[tuple] = []
    if suite in ("identities", "all"):
        t = T if T is not None else 40
        if profile is not None:
            idx = i if i is not None else 1
            for tag in ("CLASS-B", "CLASS-E", "CLASS-G", "CLASS-F", "LEM-N1", "LEM-N2"):
                tasks.append(("identity", tag, None, idx, min(t, 30), tuple(profile)))
        else:
            for (kk, ii) in _default_pairs(k, i, 3):
                if kk < 2:
                    if k is not None:
                        raise DegenerateIdentityError(
                            "degenerate form: summed identities need k >= 2")
                    continue
                for tag in ("AG", "BRESSOUD", "OGG"):
                    tasks.append(("identity", tag, kk, ii, t, None))
                tasks.append(("identity", "JTP", kk, ii, t, None))
    if suite in ("counting", "all"):
        nm = n_max if n_max is not None else 15
        for (kk, ii) in _default_pairs(k, i, 3):
            for theorem in ("T1.1", "T1.2", "T1.5"):
                tasks.append(("counting", theorem, kk, ii, nm))
    if suite in ("bijections", "all"):
        nm = n_max if n_max is not None else 12
        for (kk, ii) in _default_pairs(k, i, 3):
            tasks.append(("bijections", kk, ii, nm))
    if not tasks and suite not in ("bailey",):
        raise ValueError(f"unknown suite {suite!r}")
    return tasks


def run_suite(suite: str, k=None, i=None, n_max=None, T=None, profile=None,
              jobs: int | None = None) -> list[VerificationReport]:
    """Run a verification suite, optionally fanning tasks out across processes.

    Reports come back sorted by identity tag and parameters regardless of the
    execution order.
    """
    if jobs is None:
        jobs = int(os.environ.get("GGKIT_JOBS", "1"))
    reports: list[VerificationReport] = []
    if suite in ("bailey", "all"):
        t = T if T is not None else 40
        if k is not None and i is not None:
            reports.extend(verify_bailey(k, i, t))  # raises for i >= k
        else:
            for (kk, ii) in _default_pairs(k, i, 3):
                if ii < kk:
                    reports.extend(verify_bailey(kk, ii, t))
    tasks = build_tasks(suite, k, i, n_max, T, profile) if suite != "bailey" else []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports.extend(pool.map(_run_task, tasks))
    else:
        reports.extend(_run_task(t) for t in tasks)
    reports.sort(key=lambda r: (r.identity, repr(sorted(r.params.items(), key=str))))
    return reports
