"""Pattern-avoiding partitions with parts >= 2 and their class decomposition.

A partition is a weakly decreasing tuple of integers >= 2.  The avoidance
set P(n) consists of partitions of n containing none of the forbidden
sub-multisets: eleven p-indexed families plus four exceptional patterns.
P(n) splits into five classes A..E according to the shape of its smallest
parts, and the class counts satisfy coupled recurrences verified here.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache


class NotInP(ValueError):
    """Raised when classifying a partition that violates an avoidance pattern."""


Partition = tuple


def check_partition(parts) -> Partition:
    lam = tuple(parts)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError("parts must be weakly decreasing")
    if lam and lam[-1] < 2:
        raise ValueError("parts must be >= 2")
    return lam


def weight(lam: Partition) -> int:
    return sum(lam)


def contains(lam, mu) -> bool:
    """Multiset containment: every part of mu occurs in lam with multiplicity."""
    need = Counter(mu)
    have = Counter(lam)
    return all(have[v] >= k for v, k in need.items())


def avoids(lam, mu) -> bool:
    return not contains(lam, mu)


# ---------------------------------------------------------------------------
# the forbidden patterns
# ---------------------------------------------------------------------------

EXCEPTIONAL_PATTERNS = (
    (5, 4, 2, 2),
    (7, 6, 4, 2, 2),
    (7, 7, 4, 2, 2),
    (9, 8, 6, 4, 2, 2),
)

# (offsets added to p, minimal p); weight of the pattern is len*p + sum(offsets)
_PATTERN_FAMILIES = (
    ((0, 0, 0), 2),
    ((1, 0, 0), 2),
    ((1, 1, 0), 2),
    ((2, 1, 0), 2),
    ((2, 2, 0), 2),
    ((2, 0, 0), 3),
    ((3, 3, 0, 0), 2),
    ((4, 3, 0, 0), 2),
    ((4, 3, 1, 0), 2),
    ((4, 4, 1, 0), 2),
    ((6, 5, 3, 1, 0), 2),
)


@lru_cache(maxsize=None)
def forbidden_patterns(max_weight: int) -> tuple:
    """All forbidden patterns of weight <= max_weight, duplicate-free."""
    out = []
    seen = set()
    for offsets, pmin in _PATTERN_FAMILIES:
        p = pmin
        while len(offsets) * p + sum(offsets) <= max_weight:
            pat = tuple(sorted((p + o for o in offsets), reverse=True))
            if pat in seen:
                raise AssertionError("duplicate pattern %r" % (pat,))
            seen.add(pat)
            out.append(pat)
            p += 1
    for pat in EXCEPTIONAL_PATTERNS:
        if sum(pat) <= max_weight:
            if pat in seen:
                raise AssertionError("duplicate pattern %r" % (pat,))
            seen.add(pat)
            out.append(pat)
    return tuple(out)


def _patterns_by_min(max_weight: int) -> dict:
    by_min: dict[int, list] = {}
    for pat in forbidden_patterns(max_weight):
        by_min.setdefault(pat[-1], []).append(Counter(pat))
    return by_min


def is_avoiding(lam) -> bool:
    return all(avoids(lam, pat) for pat in forbidden_patterns(weight(lam)))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def partitions_min2(n: int, max_part: int | None = None):
    """All partitions of n into parts >= 2, largest part first."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(max_part, n)
    for v in range(top, 1, -1):
        if n - v == 1:
            continue
        for rest in partitions_min2(n - v, v):
            yield (v,) + rest


def partitions_min2_length(n: int, m: int, max_part: int | None = None):
    """Partitions of n into exactly m parts, all >= 2."""
    if m == 0:
        if n == 0:
            yield ()
        return
    if n < 2 * m:
        return
    top = n - 2 * (m - 1) if max_part is None else min(max_part, n - 2 * (m - 1))
    lo = -(-n // m)  # first part at least ceil(n/m)
    for v in range(top, lo - 1, -1):
        for rest in partitions_min2_length(n - v, m - 1, v):
            yield (v,) + rest


@lru_cache(maxsize=None)
def _count_capped(n: int, cap: int) -> int:
    if n == 0:
        return 1
    if n < 0 or cap < 2:
        return 0
    return _count_capped(n, cap - 1) + _count_capped(n - cap, cap)


def count_min2(n: int) -> int:
    """Number of partitions of n with parts >= 2."""
    return _count_capped(n, n) if n >= 0 else 0


def enumerate_P(n: int) -> list:
    """All pattern-avoiding partitions of n, smallest grevlex monomial first.

    Recursive descent over part values with multiplicities capped at 2 (a
    tripled part is itself a forbidden pattern); a branch dies as soon as the
    multiplicities fixed so far contain a pattern, which is decidable once
    the pattern's smallest part has been passed.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    by_min = _patterns_by_min(n)
    out: list[Partition] = []

    def walk(v: int, remaining: int, chosen: list, mult: dict):
        if remaining == 0 and v < 2:
            out.append(tuple(chosen))
            return
        if v < 2 or remaining < 0:
            return
        if v > remaining:
            walk(remaining, remaining, chosen, mult)
            return
        for m in range(min(2, remaining // v), -1, -1):
            if m:
                mult[v] = m
                chosen.extend([v] * m)
            ok = True
            for pat in by_min.get(v, ()):
                if all(mult.get(u, 0) >= k for u, k in pat.items()):
                    ok = False
                    break
            if ok:
                walk(v - 1, remaining - m * v, chosen, mult)
            if m:
                del mult[v]
                del chosen[len(chosen) - m:]

    walk(n, n, [], {})
    out.sort(key=grevlex_key)
    return out


def grevlex_key(lam: Partition):
    """Sort key: ascending grevlex (larger part at first disagreement sorts first)."""
    return (weight(lam), tuple(-x for x in lam))


# ---------------------------------------------------------------------------
# the five classes
# ---------------------------------------------------------------------------

CLASSES = ("A", "B", "C", "D", "E")


def classify(lam) -> str:
    """Assign a partition of P(n) to its class by the shape of its smallest parts."""
    lam = tuple(lam)
    if not is_avoiding(lam):
        raise NotInP("partition %r contains a forbidden pattern" % (lam,))
    m = len(lam)
    if m == 0:
        return "A"
    if lam[-1] > 2:
        return "A"
    if m == 1:
        return "B"  # the special singleton [2]
    if lam[-2] == 3:
        return "C"
    if lam[-2] > 3:
        return "B"
    # lam ends ... 2, 2
    if m == 2:
        return "D"  # the special pair [2, 2]
    if lam[-3] == 4:
        return "E"
    return "D"


def count_table(n_max: int) -> dict:
    """Counts a,b,c,d,e,p indexed by (n, m): partitions of n with m parts per class."""
    table = {cls: {} for cls in CLASSES}
    table["P"] = {}
    for n in range(n_max + 1):
        for lam in enumerate_P(n):
            key = (n, len(lam))
            cls = classify(lam)
            table[cls][key] = table[cls].get(key, 0) + 1
            table["P"][key] = table["P"].get(key, 0) + 1
    return table


def recursion_check(n_max: int) -> dict:
    """Verify the five coupled recurrences on the class counts for n <= n_max.

    Out-of-range indices count as zero; the n = 0 row is the base case (only
    the empty partition, in class A) and is excluded from the recurrences.
    """
    t = count_table(n_max)

    def g(cls, n, m):
        return t[cls].get((n, m), 0)

    failures = []
    for n in range(1, n_max + 1):
        for m in range(0, n // 2 + 1):
            want = {
                "A": g("A", n - m, m) + g("B", n - m, m) + g("C", n - m, m) + g("D", n - m, m),
                "B": g("A", n - m - 1, m - 1) - g("D", n - 2 * m, m - 1),
                "C": g("B", n - 2 * m + 1, m - 1) + g("D", n - 2 * m, m - 1),
                "D": g("B", n - m, m - 1) - g("E", n - 2 * m + 1, m - 1),
                "E": g("C", n - m, m - 1),
            }
            for cls in CLASSES:
                if g(cls, n, m) != want[cls]:
                    failures.append({"class": cls, "n": n, "m": m,
                                     "actual": g(cls, n, m), "expected": want[cls]})
            total = sum(g(c, n, m) for c in CLASSES)
            if g("P", n, m) != total:
                failures.append({"class": "P", "n": n, "m": m,
                                 "actual": g("P", n, m), "expected": total})
    return {"passed": not failures, "n_max": n_max, "failures": failures[:10],
            "failure_count": len(failures)}


# ---------------------------------------------------------------------------
# difference-condition bases
# ---------------------------------------------------------------------------


def mourtada_basis(s: int, n: int) -> list:
    """Partitions of n with parts >= 2 satisfying lam_i - lam_{i+s-1} >= 2.

    Equivalently at most s-1 parts fall in any window {p, p+1}.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    out = []
    for lam in partitions_min2(n):
        if all(lam[i] - lam[i + s - 1] >= 2 for i in range(len(lam) - s + 1)):
            out.append(lam)
    out.sort(key=grevlex_key)
    return out


def class_generating_function(n_max: int):
    """The table as a TQSeries: sum p(n, m) t^m q^n for n <= n_max."""
    from qvir.characters import TQSeries
    from qvir.qseries import QSeries
    t = count_table(n_max)
    parts: dict[int, dict[int, Fraction]] = {}
    for (n, m), c in t["P"].items():
        parts.setdefault(m, {})[n] = Fraction(c)
    trunc = n_max + 1
    return TQSeries({m: QSeries(cs, trunc) for m, cs in parts.items()}, trunc)
