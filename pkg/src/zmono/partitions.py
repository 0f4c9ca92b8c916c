"""Partitions, the difference and congruence conditions of the sum sides, and generating functions."""
import re
from functools import lru_cache

from .qseries import QSeries


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("not a partition: %r" % (parts,))
        return super().__new__(cls, parts)

    @property
    def weight(self):
        return sum(self)


@lru_cache(maxsize=None)
def all_partitions(n, max_part=None):
    """Partitions of n in lexicographic order (parts <= max_part)."""
    max_part = n if max_part is None else min(max_part, n)
    if n == 0:
        return ((),)
    out = []
    for k in range(1, max_part + 1):
        for rest in all_partitions(n - k, k):
            out.append((k,) + rest)
    return tuple(out)


def _diffs(lam):
    return [a - b for a, b in zip(lam, lam[1:])]


def r1(lam):
    return all(d >= 2 for d in _diffs(lam))


def r2(lam):
    return r1(lam) and (not lam or lam[-1] >= 2)


def g1(lam):
    if not r1(lam):
        return False
    return all(d >= 4 for a, b, d in zip(lam, lam[1:], _diffs(lam)) if a % 2 == 0 and b % 2 == 0)


def g2(lam):
    return g1(lam) and (not lam or lam[-1] >= 3)


def k1_cond(lam):
    return all(d != 1 for d in _diffs(lam))


def k2_cond(lam):
    return all(not (a % 2 and a == b) for a, b in zip(lam, lam[1:]))


# readings of (k3); positions are 1-based as printed, j is the start of a window of three
K3_READINGS = ("verbatim", "all_windows")


def k3_cond(lam, reading="all_windows"):
    """If lambda_{j+1} is even and appears more than once, then lambda_j - lambda_{j+2} >= 4.

    verbatim:    2 <= j <= l-2 as printed
    all_windows: 1 <= j <= l-2
    Equal parts are contiguous, so "appears more than once" means a neighbour repeats it.
    """
    lo = 2 if reading == "verbatim" else 1
    return all(_k3_window(lam[j - 1], lam[j], lam[j + 1]) for j in range(lo, len(lam) - 1))


def _k3_window(a, b, c):
    return b % 2 or not (a == b or b == c) or a - c >= 4


def k_set(lam, reading="all_windows"):
    return k1_cond(lam) and k2_cond(lam) and k3_cond(lam, reading)


def _nandi_window(a, b, c):
    if a - c < 3:
        return False
    if a - c == 3 and (a == b or (a % 2 and b == c)):
        return False
    if a - c == 4 and a % 2 and (a == b or b == c):
        return False
    return True


_N6 = re.compile("d(c)*da")   # difference sequence 3, 2*, 3, 0


def _n6_ok(lam, n6):
    word = "".join(chr(ord("a") + min(d, 25)) for d in _diffs(lam))
    if n6 == "exact":
        return _N6.fullmatch(word) is None
    return _N6.search(word) is None


def nandi(lam, n6="exact"):
    """Conditions N1-N6; n6 = 'exact' matches the whole difference sequence, 'subword' any window."""
    if not k1_cond(lam):
        return False
    if not all(_nandi_window(*lam[i:i + 3]) for i in range(len(lam) - 2)):
        return False
    return _n6_ok(lam, n6)


def mt_remark(lam):
    return k1_cond(lam)


def residue_set(N, residues):
    res = {r % N for r in residues}
    return lambda lam: all(p % N in res for p in lam)


_T_RE = re.compile(r"^T\((\d+);\s*\{?([\d,\s]+)\}?\)$")


def predicate(set_id, lam=None, k3_reading="all_windows", n6="exact"):
    """Predicate for a set id; returns a callable when lam is None."""
    table = {
        "Par": lambda x: True,
        "R1": r1, "R2": r2, "G1": g1, "G2": g2,
        "K": lambda x: k_set(x, k3_reading),
        "K1": lambda x: k_set(x, k3_reading) and tuple(x[-2:]) != (2, 2),
        "K2": lambda x: k_set(x, k3_reading) and (not x or x[-1] >= 2),
        "K3": lambda x: k_set(x, k3_reading) and (not x or x[-1] >= 4),
        "N": lambda x: nandi(x, n6),
        "MTrmk": mt_remark,
    }
    if set_id in table:
        f = table[set_id]
    else:
        m = _T_RE.match(set_id.replace(" ", ""))
        if not m:
            raise ValueError("unknown partition set %r" % set_id)
        f = residue_set(int(m.group(1)), [int(x) for x in m.group(2).split(",") if x])
    if lam is None:
        return f
    return f(tuple(lam))


class LocalSpec:
    """A set cut out by conditions on adjacent pairs and triples plus a final test."""

    def __init__(self, pair=None, triple=None, final=None, first_triple=1, part=None):
        self.part = part
        self.pair = pair
        self.triple = triple
        self.final = final
        self.first_triple = first_triple   # 1-based start of the first checked triple


def _local_spec(set_id, k3_reading="all_windows", n6="exact"):
    """LocalSpec for the named sets, or None when only the predicate is available."""
    diff2 = lambda a, b: a - b >= 2
    last = lambda lo: (lambda x: not x or x[-1] >= lo)
    if set_id == "Par":
        return LocalSpec()
    if set_id in ("R1", "R2"):
        return LocalSpec(pair=diff2, final=None if set_id == "R1" else last(2))
    if set_id in ("G1", "G2"):
        pair = lambda a, b: a - b >= 2 and (a % 2 or b % 2 or a - b >= 4)
        return LocalSpec(pair=pair, final=None if set_id == "G1" else last(3))
    if set_id in ("K", "K1", "K2", "K3"):
        pair = lambda a, b: a - b != 1 and not (a % 2 and a == b)
        final = {"K": None, "K1": lambda x: tuple(x[-2:]) != (2, 2),
                 "K2": last(2), "K3": last(4)}[set_id]
        return LocalSpec(pair=pair, triple=_k3_window, final=final,
                         first_triple=2 if k3_reading == "verbatim" else 1)
    if set_id == "N":
        return LocalSpec(pair=lambda a, b: a - b != 1, triple=_nandi_window,
                         final=lambda x: _n6_ok(x, n6))
    if set_id == "MTrmk":
        return LocalSpec(pair=lambda a, b: a - b != 1)
    m = _T_RE.match(set_id.replace(" ", ""))
    if m:
        M = int(m.group(1))
        res = {int(x) % M for x in m.group(2).split(",") if x}
        return LocalSpec(part=lambda p: p % M in res)
    return None


def _generate(spec, N):
    """All partitions of weight <= N in the set, depth first from the largest part."""
    out = [()]
    pair, triple = spec.pair, spec.triple

    def rec(prefix, w):
        last = prefix[-1]
        for c in range(min(last, N - w), 0, -1):
            if spec.part and not spec.part(c):
                continue
            if pair and not pair(last, c):
                continue
            if triple and len(prefix) >= 2 and len(prefix) - 1 >= spec.first_triple \
                    and not triple(prefix[-2], last, c):
                continue
            new = prefix + (c,)
            out.append(new)
            rec(new, w + c)
    for top in range(1, N + 1):
        if spec.part and not spec.part(top):
            continue
        out.append((top,))
        rec((top,), top)
    if spec.final:
        out = [p for p in out if spec.final(p)]
    return out


def enumerate_set(set_id, n, **kw):
    """Partitions of n in the set, lexicographic order."""
    spec = _local_spec(set_id, **kw)
    if spec is None:
        f = predicate(set_id, **kw)
        return [Partition(p) for p in all_partitions(n) if f(p)]
    return sorted(Partition(p) for p in _generate(spec, n) if sum(p) == n)


def enumerate_brute(set_id, n, **kw):
    """Filter all partitions of n through the predicate (the independent oracle)."""
    f = predicate(set_id, **kw)
    return [Partition(p) for p in all_partitions(n) if f(p)]


def genfun(set_id, N=60, **kw):
    spec = _local_spec(set_id, **kw)
    counts = [0] * (N + 1)
    if spec is None:
        f = predicate(set_id, **kw)
        for n in range(N + 1):
            counts[n] = sum(1 for p in all_partitions(n) if f(p))
    else:
        for p in _generate(spec, N):
            counts[sum(p)] += 1
    return QSeries(counts, N)


def nandi_series(N=60, n6="exact", floor=1):
    """Generating function of the Nandi set with every part >= floor."""
    spec = _local_spec("N", n6=n6)
    counts = [0] * (N + 1)
    for p in _generate(spec, N):
        if not p or p[-1] >= floor:
            counts[sum(p)] += 1
    return QSeries(counts, N)
