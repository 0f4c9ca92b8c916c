"""Coefficient extraction from the generalized commutation relation, named
constants, the determinant registry and the <=_T order.

A relation is stored as LHS - RHS, so its realization on a module vanishes.
"""
from fractions import Fraction
from math import gcd

from .cyclo import galois_twist
from .laurent import DEFAULT_ORDER, c_coeff
from .linalg import det, det_cofactor
from .rootsystem import RootContext, RootVec, c_set, epsilon, representative

PHASES = ("derived", "paper")


class ZSymbol(tuple):
    """Ordered word of factors (index, root); () is the constant term."""

    def __new__(cls, factors=()):
        return super().__new__(cls, tuple((int(i), RootVec(r)) for i, r in factors))

    @property
    def kind(self):
        return {0: "Const", 1: "Single", 2: "Pair"}.get(len(self), "Word")

    @property
    def indices(self):
        return tuple(i for i, _ in self)

    def sort_key(self):
        return (len(self), tuple((i, tuple(r)) for i, r in self))

    def label(self, rctx=None):
        if not self:
            return "1"
        name = (lambda r: rctx.name(r)) if rctx else (lambda r: str(list(r)))
        return "".join("Z_%d(%s)" % (i, name(r)) for i, r in self)


def Pair(i, gamma, j, delta):
    return ZSymbol([(i, gamma), (j, delta)])


def Single(n, gamma):
    return ZSymbol([(n, gamma)])


Const = ZSymbol()


class RelationExpr:
    def __init__(self, rctx, terms=None, window=0):
        self.rctx = rctx
        self.window = window
        self.terms = {}
        for sym, c in (terms or {}).items():
            self.add(sym, c)

    def add(self, sym, c):
        sym = sym if isinstance(sym, ZSymbol) else ZSymbol(sym)
        total = self.terms.get(sym, self.rctx.cyclo.zero()) + c
        if total.is_zero():
            self.terms.pop(sym, None)
        else:
            self.terms[sym] = total

    def coefficient(self, sym):
        return self.terms.get(sym, self.rctx.cyclo.zero())

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def copy(self):
        return RelationExpr(self.rctx, dict(self.terms), self.window)

    def scale(self, c):
        return RelationExpr(self.rctx, {s: v * c for s, v in self.terms.items()}, self.window)

    def __add__(self, other):
        out = self.copy()
        for s, v in other.terms.items():
            out.add(s, v)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def filter(self, keep):
        return RelationExpr(self.rctx, {s: v for s, v in self.terms.items() if keep(s)}, self.window)

    def mul_left(self, i, root):
        return RelationExpr(self.rctx, {ZSymbol(((i, root),) + tuple(s)): v
                                        for s, v in self.terms.items()}, self.window)

    def mul_right(self, i, root):
        return RelationExpr(self.rctx, {ZSymbol(tuple(s) + ((i, root),)): v
                                        for s, v in self.terms.items()}, self.window)

    def __str__(self):
        parts = ["(%s)%s" % (c, s.label(self.rctx)) for s, c in self.items()]
        return " + ".join(parts) if parts else "0"


def fold(rctx, gamma, index):
    """Z_index(gamma) = w^{p*index} Z_index(rep) for gamma = nu^p rep."""
    rep, p = representative(rctx, gamma)
    return rep, rctx.cyclo.omega(p * index)


def delta_phase(rctx, q, a, phase="derived"):
    if phase == "derived":
        return rctx.cyclo.omega(-q * a)
    if phase == "paper":
        return rctx.cyclo.omega(-2 * q * a)
    raise ValueError("unknown phase convention %r" % phase)


def extract_relation(rctx, a_root, b_root, a, b, k=2, P=None, phase="derived"):
    """Coefficient of z1^a z2^b in the generalized commutation relation, as LHS - RHS."""
    if k != 2:
        raise ValueError("only level k = 2 is supported")
    if P is None:
        P = DEFAULT_ORDER
    a_root, b_root = RootVec(a_root), RootVec(b_root)
    rel = RelationExpr(rctx, window=P)
    for p in range(P + 1):
        c1 = c_coeff(rctx, a_root, b_root, p, k, max(P, DEFAULT_ORDER))
        if not c1.is_zero():
            rel.add(Pair(a - p, a_root, b + p, b_root), c1)
        c2 = c_coeff(rctx, b_root, a_root, p, k, max(P, DEFAULT_ORDER))
        if not c2.is_zero():
            rel.add(Pair(b - p, b_root, a + p, a_root), -c2)
    for q in sorted(c_set(rctx, a_root, b_root, -1)):
        shifted = rctx.nu_pow(a_root, q)
        gamma = shifted + b_root
        if not rctx.is_root(gamma):
            raise ArithmeticError("nu^%d a + b is not a root" % q)
        rep, ph = fold(rctx, gamma, a + b)
        coeff = epsilon(rctx, shifted, b_root) * delta_phase(rctx, q, a, phase) * ph / rctx.m
        rel.add(Single(a + b, rep), -coeff)
    d = const_term(rctx, a_root, b_root, a, b, k)
    if not d.is_zero():
        rel.add(Const, -d)
    return rel


def const_term(rctx, a_root, b_root, a, b, k=2):
    """(k/m^2) eps(a_root, -a_root) sum_{q in C_-2} a w^{-qa} [a+b=0]."""
    K = rctx.cyclo
    if a + b != 0:
        return K.zero()
    qs = c_set(rctx, a_root, b_root, -2)
    if not qs:
        return K.zero()
    total = K.zero()
    for q in qs:
        total = total + K.omega(-q * a) * a
    return total * epsilon(rctx, a_root, -a_root) * Fraction(k, rctx.m ** 2)


def tensor_vanishing(rctx, rel):
    """Drop words containing Z_even(alpha_s) or Z_odd(beta_j), which vanish on L(L0) x L(L1)."""
    a_s = rctx.alpha(rctx.s)

    def alive(sym):
        for i, r in sym:
            if r == a_s and i % 2 == 0:
                return False
            if r != a_s and r in rctx.phi_prime and i % 2 != 0:
                return False
        return True
    return rel.filter(alive)


def le_T(t1, t2):
    if len(t1) != len(t2):
        raise ValueError("tuples of different lengths")
    s1 = s2 = 0
    for x, y in zip(reversed(t1), reversed(t2)):
        s1 += x
        s2 += y
        if s1 > s2:
            return False
    return True


def gt_T(t1, t2):
    """t1 strictly above t2 in the <=_T order."""
    return tuple(t1) != tuple(t2) and le_T(t2, t1)


def in_T_tilde(sym, bound):
    """Word shorter than the bound, or of equal length and strictly >_T."""
    if len(sym) < len(bound):
        return True
    return len(sym) == len(bound) and gt_T(sym.indices, bound)


def mod_T(rel, bound):
    return rel.filter(lambda s: not in_T_tilde(s, bound))


# ---------------------------------------------------------------- constants

def _ctx(s):
    return s if isinstance(s, RootContext) else RootContext(s)


def named_constant(s, name, *args, phase="derived"):
    R = _ctx(s)
    K = R.cyclo
    w = K.omega
    a1, a_s = R.alpha(1), R.alpha(R.s)
    if name == "f":
        (n,) = args
        return (2 - w(2)) - w(2 * n - 2) * (2 * w(2) - 1)
    if name == "g1":
        n, n2 = args
        return epsilon(R, R.nu_pow(a1, 2), a1) * (w(-2 * n) - w(-2 * n2)) / R.m
    if name == "g2":
        i, i2, n = args
        return epsilon(R, R.nu_pow(a1, 2 * n), R.beta(n)) * (w(-2 * n * i) - w(-2 * i2))
    if name == "g3":
        i, i2, n = args
        bn = R.beta(n)
        return (epsilon(R, -a1, bn) * w(2 * (i + i2))
                + epsilon(R, -R.nu_pow(a1, 2 * n - 2), bn) * w((-2 * n + 2) * i))
    if name == "g4":
        j, j2, q = args
        rel = extract_relation(R, a_s, a_s, j, j2, phase=phase)
        return -rel.coefficient(Single(j + j2, R.beta(R.s - q))) * R.m
    if name in ("h1", "h2"):
        root = a_s if name == "h1" else a1
        if len(args) == 2:
            mm, n = args
            l = 1 if name == "h1" else 2
        else:
            l, mm, n = args
        return epsilon(R, R.nu_pow(root, l), root) * (w(-mm) - w(-n)) / R.m
    if name in ("d", "e"):
        (i,) = args
        poly = (2 * w(5) - 2 * w(3) - 2 * w(2) + 2 * w(1) + 1 if name == "d"
                else 4 * w(5) - w(4) - 4 * w(3) - 2 * w(2) + 4 * w(1) + 1)
        return poly * 18 * w(2 * i) / epsilon(R, R.nu_pow(a1, 2), a1)
    raise KeyError("unknown constant %r" % name)


def cpoly(K, coeffs):
    """Printed polynomial from {power: rational} (negative powers allowed)."""
    total = K.zero()
    for e, c in coeffs.items():
        total = total + K.omega(e) * Fraction(c)
    return total


# ----------------------------------------------------------------- registry

def _printed(K, coeffs, c):
    """A printed polynomial in w, read under the twist w -> w^c."""
    return galois_twist(cpoly(K, coeffs), c % K.m)


def _rows_proportional(A, B):
    """True iff every row of A is a nonzero multiple of the matching row of B."""
    for ra, rb in zip(A, B):
        ratio = None
        for x, y in zip(ra, rb):
            if y.is_zero() or x.is_zero():
                if not (x.is_zero() and y.is_zero()):
                    return False
                continue
            q = x / y
            if ratio is None:
                ratio = q
            elif q != ratio:
                return False
        if ratio is None and any(not y.is_zero() for y in rb):
            return False
    return True


def extracted_matrix(R, x, y, bidegrees, symbols, phase="derived"):
    """Coefficients of the given symbols (rows) in the relations at the given bidegrees (columns)."""
    rels = [extract_relation(R, x, y, a, b, phase=phase) for a, b in bidegrees]
    return [[r.coefficient(sym) for r in rels] for sym in symbols]


class Instance:
    def __init__(self, params, matrix, value, expected=None, extracted=None, extra=None):
        self.params = params
        self.matrix = matrix
        self.value = value
        self.expected = expected
        self.extracted = extracted
        self.extra = extra or {}

    @property
    def ok(self):
        if self.expected is None:
            return not self.value.is_zero()
        return self.value == self.expected

    @property
    def cofactor_agrees(self):
        """Elimination and Laplace expansion give the same determinant."""
        if not self.matrix or len(self.matrix) > 5:
            return None
        return det_cofactor(self.matrix) == self.value

    @property
    def extraction_agrees(self):
        if self.extracted is None:
            return None
        return _rows_proportional(self.extracted, self.matrix)


class Case:
    def __init__(self, case_id, title, kind, build, exact=None):
        self.case_id = case_id
        self.title = title
        self.kind = kind            # "value" uses the twist, "nonzero" does not
        self.build = build
        self.exact = exact          # printed value as text, for reports

    def run(self, twist=1, phase="derived"):
        return self.build(twist, phase)


def _odd(lo, hi):
    return [j for j in range(lo, hi + 1) if j % 2]


def _even(lo, hi):
    return [i for i in range(lo, hi + 1) if i % 2 == 0]


def _pree(gap):
    printed = {2: {0: 2, 4: -2}, 4: None}[gap]

    def build(c, phase):
        out = []
        for s in (3, 4, 5, 6):
            R = _ctx(s)
            K = R.cyclo
            a1, b2 = R.alpha(1), R.beta(2)
            cc = [c_coeff(R, a1, a1, n) for n in range(2)]
            eps = epsilon(R, R.nu_pow(a1, 2), a1)
            if gap == 2:
                fval = _printed(K, printed, c)
            else:
                fval = (_printed(K, {4: 1}, c) - 1) * _printed(K, {4: -2, 2: 1, 0: -2}, c)
            for i in _even(-8, 6):
                ip = i - gap
                g = lambda n, n2: named_constant(R, "g1", n, n2)
                M = [[cc[0], cc[1]], [g(i, ip), g(i + 1, ip - 1)]]
                E = extracted_matrix(R, a1, a1, [(i, ip), (i + 1, ip - 1)],
                                     [Pair(i, a1, ip, a1), Single(i + ip, b2)], phase)
                out.append(Instance({"s": s, "i": i, "i'": ip}, M, det(M),
                                    eps * K.omega(-2 * i) * fval / R.m, E,
                                    {"f_formula_matches": named_constant(R, "f", gap) == fval}))
        return out
    return build


def _pree_scan(c, phase):
    out = []
    for s in (3, 4, 5, 6):
        R = _ctx(s)
        a1 = R.alpha(1)
        cc = [c_coeff(R, a1, a1, n) for n in range(2)]
        for gap in range(2, R.m + 1, 2):
            i = 0
            ip = i - gap
            g = lambda n, n2: named_constant(R, "g1", n, n2)
            M = [[cc[0], cc[1]], [g(i, ip), g(i + 1, ip - 1)]]
            out.append(Instance({"s": s, "i": i, "i'": ip}, M, det(M)))
    return out


def _beta_n(c, phase):
    """For every even total degree a some split a = i + i' has g2 != 0."""
    out = []
    for s in (4, 5, 6):
        R = _ctx(s)
        a1 = R.alpha(1)
        for n in range(2, s - 1):
            for a in _even(-12, 12):
                witness = None
                for i in _even(-12, 12):
                    ip = a - i
                    if i == ip:
                        continue
                    g = named_constant(R, "g2", i, ip, n)
                    if not g.is_zero():
                        x = -R.m * extract_relation(R, a1, R.beta(n), i, ip, phase=phase).coefficient(
                            Single(i + ip, R.beta(n + 1)))
                        witness = Instance({"s": s, "n": n, "a": a, "i": i, "i'": ip}, [[g]], g,
                                           extracted=[[x]],
                                           extra={"g3": str(named_constant(R, "g3", i, ip, n))})
                        break
                if witness is None:
                    K = R.cyclo
                    witness = Instance({"s": s, "n": n, "a": a}, [[K.zero()]], K.zero())
                out.append(witness)
    return out


def _rmk(c, phase):
    out = []
    for s in (3, 4, 5, 6):
        R = _ctx(s)
        a1, a_s = R.alpha(1), R.alpha(s)
        for x, y in ((a1, a_s), (a_s, a1)):
            v = c_coeff(R, x, y, 1)
            out.append(Instance({"s": s, "pair": "%s,%s" % (R.name(x), R.name(y))}, [[v]], v))
    return out


def _single_root(R, root, l):
    return representative(R, R.nu_pow(root, l) + root)[0]


def _a5_oddpair(c, phase):
    R = _ctx(3)
    K = R.cyclo
    a3 = R.alpha(3)
    cc = [c_coeff(R, a3, a3, n) for n in range(4)]
    h1 = lambda mm, n: named_constant(R, "h1", mm, n)
    poly = _printed(K, {3: -2, 2: 2, 0: 2}, c)
    out = []
    for j in _odd(-9, 9):
        M = [[K.zero(), cc[0], cc[1]], [cc[1], cc[2], cc[3]],
             [h1(j + 1, j - 1), h1(j + 2, j - 2), h1(j + 3, j - 3)]]
        E = extracted_matrix(R, a3, a3, [(j + 1, j - 1), (j + 2, j - 2), (j + 3, j - 3)],
                             [Pair(j + 2, a3, j - 2, a3), Pair(j, a3, j, a3),
                              Single(2 * j, _single_root(R, a3, 1))], phase)
        out.append(Instance({"j": j}, M, det(M), h1(j + 1, j - 1) * poly, E))
    return out


def _a5_evengap(c, phase):
    R = _ctx(3)
    K = R.cyclo
    a1 = R.alpha(1)
    cc = [c_coeff(R, a1, a1, n) for n in range(4)]
    M = [[cc[0], cc[1]], [cc[2] - cc[0], cc[3]]]
    out = []
    for i in _even(-8, 8):
        E = extracted_matrix(R, a1, a1, [(i + 2, i), (i + 3, i - 1)],
                             [Pair(i + 2, a1, i, a1), Pair(i, a1, i + 2, a1)], phase)
        out.append(Instance({"i": i}, M, det(M), _printed(K, {3: 6, 2: -6, 0: 2}, c), E))
    return out


def _a5_evensq(c, phase):
    """The equations carry h1(j+2,j), h1(j+3,j-1); the printed value is read with prefactor h1(j+2,j)."""
    R = _ctx(3)
    K = R.cyclo
    a3 = R.alpha(3)
    cc = [c_coeff(R, a3, a3, n) for n in range(2)]
    h1 = lambda mm, n: named_constant(R, "h1", mm, n)
    poly = _printed(K, {-1: 1, 1: 1, 0: 1}, c)
    out = []
    for j in _odd(-9, 9):
        M = [[cc[0], cc[1]], [h1(j + 2, j), h1(j + 3, j - 1)]]
        literal = [[cc[0], cc[1]], [h1(j + 2, j - 2), h1(j + 3, j - 3)]]
        E = extracted_matrix(R, a3, a3, [(j + 2, j), (j + 3, j - 1)],
                             [Pair(j + 2, a3, j, a3), Single(2 * j + 2, R.beta(2))], phase)
        dl = det(literal)
        out.append(Instance({"j": j}, M, det(M), h1(j + 2, j) * poly, E, {
            "literal_matrix_det": str(dl),
            "literal_matches_printed": dl == h1(j + 2, j - 2) * poly,
            "literal_nonzero": not dl.is_zero(),
            "literal_rows_match_extraction": _rows_proportional(E, literal)}))
    return out


def _a7_oddpair(c, phase):
    """Printed prefactor eps(nu a1, a1) is read as eps(nu a4, a4), the root of the relation."""
    R = _ctx(4)
    K = R.cyclo
    a1, a4 = R.alpha(1), R.alpha(4)
    cc = [c_coeff(R, a4, a4, n) for n in range(2)]
    h1 = lambda l, mm, n: named_constant(R, "h1", l, mm, n)
    w = lambda e: _printed(K, {e: 1}, c)
    out = []
    for j in _odd(-7, 7):
        for jp in _odd(j - 12, j - 2):
            M = [[cc[0], cc[1]], [h1(1, j, jp), h1(1, j + 1, jp - 1)]]
            tail = w(-j - 1) * (1 - w(j - jp + 1)) * (1 + w(1)) / 14
            E = extracted_matrix(R, a4, a4, [(j, jp), (j + 1, jp - 1)],
                                 [Pair(j, a4, jp, a4), Single(j + jp, _single_root(R, a4, 1))], phase)
            D = det(M)
            out.append(Instance({"j": j, "j'": jp}, M, D,
                                epsilon(R, R.nu_pow(a4, 1), a4) * tail, E,
                                {"literal_prefactor_matches":
                                 D == epsilon(R, R.nu_pow(a1, 1), a1) * tail}))
    return out


def _a7_oddsq(c, phase):
    R = _ctx(4)
    K = R.cyclo
    a4 = R.alpha(4)
    cc = [c_coeff(R, a4, a4, n) for n in range(4)]
    h1 = lambda l, mm, n: named_constant(R, "h1", l, mm, n)
    poly = _printed(K, {5: -2, 4: 1, 3: -1, 2: 2, 0: 2}, c)
    out = []
    for j in _odd(-9, 9):
        M = [[K.zero(), cc[0], cc[1]], [cc[1], cc[2], cc[3]],
             [h1(1, j + 1, j - 1), h1(1, j + 2, j - 2), h1(1, j + 3, j - 3)]]
        E = extracted_matrix(R, a4, a4, [(j + 1, j - 1), (j + 2, j - 2), (j + 3, j - 3)],
                             [Pair(j + 2, a4, j - 2, a4), Pair(j, a4, j, a4),
                              Single(2 * j, _single_root(R, a4, 1))], phase)
        out.append(Instance({"j": j}, M, det(M), h1(1, j + 1, j - 1) * poly, E))
    return out


def _a7_beta2(c, phase):
    R = _ctx(4)
    K = R.cyclo
    a4 = R.alpha(4)
    cc = [c_coeff(R, a4, a4, n) for n in range(4)]
    h1 = lambda l, mm, n: named_constant(R, "h1", l, mm, n)
    poly = _printed(K, {5: -4, 2: 4, 0: 6}, c)
    Z = K.zero()
    out = []
    for j in _odd(-9, 9):
        M = [[Z, Z, cc[0], cc[1]], [cc[0], cc[1], cc[2], cc[3]],
             [h1(3, -j + 2 + 3 * k, -j - 4 - 3 * k) for k in range(4)],
             [h1(1, j + 2 + k, j - k) for k in range(4)]]
        E = extracted_matrix(R, a4, a4, [(j + 2 + k, j - k) for k in range(4)],
                             [Pair(j + 4, a4, j - 2, a4), Pair(j + 2, a4, j, a4),
                              Single(2 * j + 2, _single_root(R, a4, 3)),
                              Single(2 * j + 2, _single_root(R, a4, 1))], phase)
        out.append(Instance({"j": j}, M, det(M),
                            h1(1, j + 2, j) * h1(3, -j + 2, -j - 4) * poly, E))
    return out


_A9_ODD = {2: {5: 3, 4: 6, 3: 6, 2: 3, 0: -3}, 4: {5: 6, 4: 6, 2: -6, 1: -6, 0: -6}}


def _a9_oddpair(gap):
    """Full displayed matrix; equals w^{-2(j-j')} times the reduced one, whose value is printed."""
    def build(c, phase):
        R = _ctx(5)
        K = R.cyclo
        w = K.omega
        a5 = R.alpha(5)
        cc = [c_coeff(R, a5, a5, n) for n in range(4)]
        Z = K.zero()
        poly = _printed(K, _A9_ODD[gap], c)
        out = []
        for j in _odd(-9, 9):
            jp = j - gap
            M = [[Z, Z, cc[0], cc[1]], [cc[0], cc[1], cc[2], cc[3]],
                 [w(-j - k) - w(-jp + k) for k in range(4)],
                 [w(-j + 2 * jp - 3 * k) - w(2 * j - jp + 3 * k) for k in range(4)]]
            E = extracted_matrix(R, a5, a5, [(j + k, jp - k) for k in range(4)],
                                 [Pair(j + 2, a5, jp - 2, a5), Pair(j, a5, jp, a5),
                                  Single(j + jp, R.beta(4)), Single(j + jp, R.beta(3))], phase)
            D = det(M)
            printed_pref = {2: -4, 4: -6}[gap]
            out.append(Instance({"j": j, "j'": jp}, M, D, _printed(K, {-2 * gap: 1}, c) * poly, E, {
                "reduced_det": str(D / w(-2 * gap)),
                "printed_prefactor_matches": D == _printed(K, {printed_pref: 1}, c) * poly}))
        return out
    return build


def _cmatrix_matrix(R):
    a1, b2 = R.alpha(1), R.beta(2)
    cc = [c_coeff(R, a1, b2, n) for n in range(8)]
    Z = R.cyclo.zero()
    return [[Z, Z, cc[0], cc[1]], [cc[0], cc[1], cc[2], cc[3]],
            [cc[2], cc[3], cc[4], cc[5]], [cc[4], cc[5], cc[6], cc[7]]]


def _a9_cmatrix(c, phase):
    R = _ctx(5)
    K = R.cyclo
    a1, b2 = R.alpha(1), R.beta(2)
    M = _cmatrix_matrix(R)
    out = []
    for i in _even(-6, 6):
        E = extracted_matrix(R, a1, b2, [(i + 4, 2 * i - 2), (i + 5, 2 * i - 3),
                                         (i + 6, 2 * i - 4), (i + 7, 2 * i - 5)],
                             [Pair(i + 6, a1, 2 * i - 4, b2), Pair(i + 4, a1, 2 * i - 2, b2),
                              Pair(i + 2, a1, 2 * i, b2), Pair(i, a1, 2 * i + 2, b2)], phase)
        out.append(Instance({"i": i}, M, det(M),
                            _printed(K, {5: 3, 4: -4, 3: 2, 2: -3, 1: 2, 0: 2}, c), E))
    return out


def _a9_lemma_const(name):
    def build(c, phase):
        R = _ctx(5)
        K = R.cyclo
        out = []
        for i in _even(-6, 4):
            v = lemma_value(name, i, phase)
            poly = {"d": {5: 2, 3: -2, 2: -2, 1: 2, 0: 1},
                    "e": {5: 4, 4: -1, 3: -4, 2: -2, 1: 4, 0: 1}}[name]
            exp = _printed(K, poly, c) * 18 * K.omega(2 * i) / epsilon(R, R.nu_pow(R.alpha(1), 2), R.alpha(1))
            out.append(Instance({"i": i}, [[v]], v, exp))
        return out
    return build


def _lemma(name):
    def build(c, phase):
        R = _ctx(5)
        K = R.cyclo
        printed = {"lem3_2": {3: Fraction(1, 2), 2: Fraction(1, 2), 0: Fraction(-1, 2)},
                   "lem4": {5: 1, 2: -1}}[name]
        out = []
        for i in _even(-6, 4):
            rep = lemma_chain(name, i=i, phase=phase)
            v = rep["value"]
            out.append(Instance({"i": i}, [[v]], v, _printed(K, printed, c),
                                extra={"eliminated": rep["eliminated"]}))
        return out
    return build


def _duprows(c, phase):
    R = _ctx(5)
    M = _cmatrix_matrix(R)
    M = [M[0], M[0], M[2], M[3]]
    v = det(M)
    inst = Instance({}, M, v, R.cyclo.zero())
    return [inst]


REGISTRY = [
    Case("gen.pree.gap2", "2x2 for Z_i Z_i' at i-i'=2, s=3..6", "value", _pree(2), "(1/m)eps w^{-2i} f(2), f(2)=2-2w^4"),
    Case("gen.pree.gap4", "2x2 for Z_i Z_i' at i-i'=4, s=3..6", "value", _pree(4), "(1/m)eps w^{-2i} f(4), f(4)=(w^4-1)(-2w^4+w^2-2)"),
    Case("gen.pree.scan", "2x2 nonvanishing for all even gaps up to m", "nonzero", _pree_scan),
    Case("gen.beta_n", "g2(i,i',n) != 0 for a split of every even degree", "nonzero", _beta_n),
    Case("gen.rmk", "c(a1,as,1) and c(as,a1,1) nonzero", "nonzero", _rmk),
    Case("a5.oddpair", "3x3 for Z_j Z_j, s=3", "value", _a5_oddpair, "h1(j+1,j-1)(-2w^3+2w^2+2)"),
    Case("a5.evengap", "2x2 for Z_i Z_i+2, s=3", "value", _a5_evengap, "6w^3-6w^2+2"),
    Case("a5.evensq", "2x2 for Z_2j+2(b2), s=3", "value", _a5_evensq, "h1(j+2,j)(w^-1+w+1)"),
    Case("a7.oddpair", "2x2 for Z_j Z_j', s=4", "value", _a7_oddpair, "(1/14)eps(nu a4,a4)w^{-j-1}(1-w^{j-j'+1})(1+w)"),
    Case("a7.oddsq", "3x3 for Z_j Z_j, s=4", "value", _a7_oddsq, "h1(1,j+1,j-1)(-2w^5+w^4-w^3+2w^2+2)"),
    Case("a7.beta2", "4x4 for Z_j Z_j+2, s=4", "value", _a7_beta2, "h1(1,j+2,j)h1(3,-j+2,-j-4)(-4w^5+4w^2+6)"),
    Case("a9.oddpair.gap2", "4x4 for Z_j Z_j', j-j'=2, s=5", "value", _a9_oddpair(2), "w^-4(3w^5+6w^4+6w^3+3w^2-3)"),
    Case("a9.oddpair.gap4", "4x4 for Z_j Z_j', j-j'=4, s=5", "value", _a9_oddpair(4), "w^-8(6w^5+6w^4-6w^2-6w-6)"),
    Case("a9.cmatrix", "4x4 band matrix of c(a1,b2,n), s=5", "value", _a9_cmatrix, "3w^5-4w^4+2w^3-3w^2+2w+2"),
    Case("a9.lem1.d", "d(i) from the relation at (i+1,i-1)", "value", _a9_lemma_const("d"), "d(i)"),
    Case("a9.lem2.e", "e(i) by eliminating Z_i+2 Z_i", "value", _a9_lemma_const("e"), "e(i)"),
    Case("a9.lem3_2", "coefficient of Z_i Z_i+3 after eliminating Z_i+1 Z_i+2", "value", _lemma("lem3_2"), "1/2w^3+1/2w^2-1/2"),
    Case("a9.lem4", "coefficient of Z_i Z_i Z_i+3", "value", _lemma("lem4"), "w^5-w^2"),
    Case("selftest.duprows", "duplicated rows give determinant 0", "value", _duprows, "0"),
]

CASES = {c.case_id: c for c in REGISTRY}


def check_determinant(case_id, twist=1, phase="derived"):
    case = CASES[case_id]
    try:
        insts = case.run(twist, phase)
    except ZeroDivisionError as exc:
        return {"case_id": case_id, "title": case.title, "kind": case.kind, "verdict": "fail",
                "twist": twist, "instances": 0, "failures": [str(exc)], "params": {},
                "matrix": [], "determinant": "undefined", "expected": case.exact or "nonzero",
                "printed": case.exact, "extraction_agrees": None, "cofactor_agrees": None, "extra": {}, "extra_all": {}}
    bad = [x for x in insts if not x.ok]
    ext = [x.extraction_agrees for x in insts if x.extracted is not None]
    cof = [x.cofactor_agrees for x in insts if x.cofactor_agrees is not None]
    first = bad[0] if bad else insts[0]
    return {
        "case_id": case_id,
        "title": case.title,
        "kind": case.kind,
        "verdict": "pass" if not bad else "fail",
        "twist": twist if case.kind == "value" else None,
        "instances": len(insts),
        "failures": [x.params for x in bad],
        "params": first.params,
        "matrix": [[str(e) for e in row] for row in first.matrix],
        "determinant": str(first.value),
        "expected": str(first.expected) if first.expected is not None else "nonzero",
        "printed": case.exact,
        "extraction_agrees": all(ext) if ext else None,
        "cofactor_agrees": all(cof) if cof else None,
        "extra": {k: v for k, v in first.extra.items()},
        "extra_all": _summarize_extra(insts),
    }


def _summarize_extra(insts):
    out = {}
    for x in insts:
        for k, v in x.extra.items():
            if isinstance(v, bool):
                out[k] = out.get(k, True) and v
    return out


def value_cases():
    return [c.case_id for c in REGISTRY if c.kind == "value"]


def find_twist(candidates=None):
    """Smallest c (coprime to every m used) under which all exact-value cases pass."""
    if candidates is None:
        candidates = [c for c in range(1, 6930) if gcd(c, 6930) == 1][:8]
    for c in candidates:
        if all(check_determinant(cid, twist=c)["verdict"] == "pass" for cid in value_cases()):
            return c
    return None


# ------------------------------------------------------------ lemma chains

def eliminate(r1, r2, sym):
    """r1 - (r1[sym]/r2[sym]) r2; raises when the pivot vanishes."""
    p = r2.coefficient(sym)
    if p.is_zero():
        if r1.coefficient(sym).is_zero():
            return r1.copy()
        raise ZeroDivisionError("elimination pivot %s vanishes" % sym.label(r1.rctx))
    return r1 - r2.scale(r1.coefficient(sym) / p)


def lemma_value(name, i, phase="derived"):
    """d(i) or e(i) recomputed from the relations named in their proofs (s=5)."""
    R = _ctx(5)
    a1, b2 = R.alpha(1), R.beta(2)
    rel = lambda a, b: tensor_vanishing(R, extract_relation(R, a1, a1, a, b, phase=phase))
    if name == "d":
        r = rel(i + 1, i - 1)
        return -r.coefficient(Pair(i, a1, i, a1)) / r.coefficient(Single(2 * i, b2))
    if name == "e":
        r = eliminate(rel(i + 2, i), rel(i + 3, i - 1), Pair(i + 2, a1, i, a1))
        return -r.coefficient(Pair(i, a1, i + 2, a1)) / r.coefficient(Single(2 * i + 2, b2))
    raise KeyError(name)


def lemma_chain(case, i=-4, phase="derived"):
    R = _ctx(5)
    a1, a5 = R.alpha(1), R.alpha(5)

    def Zr(n):
        return a1 if n % 2 == 0 else a5

    def rel(a, b):
        return tensor_vanishing(R, extract_relation(R, a1, a5, a, b, phase=phase))

    if case == "lem3_2":
        bound = (i, i + 3)
        r1 = mod_T(rel(i + 2, i + 1), bound)
        r2 = mod_T(rel(i + 1, i + 2), bound)
        X = Pair(i + 1, a5, i + 2, a1)
        r = eliminate(r1, r2, X)
        lead = Pair(i + 2, a1, i + 1, a5)
        r = r.scale(r.coefficient(lead).inv())
        value = r.coefficient(Pair(i, a1, i + 3, a5))
        return {"case": case, "i": i, "value": value, "eliminated": X.label(R),
                "residual": str(r)}
    if case == "lem4":
        bound = (i, i, i + 3)
        inu = mod_T(rel(i + 1, i + 2).mul_left(i, Zr(i)), bound)
        # keep the p = 1 words; the p >= 3 words lie in T by the contiguous-part propositions
        raw = rel(i + 1, i).filter(lambda s: len(s) == 2 and s.indices in ((i, i + 1), (i - 1, i + 2)))
        innu = raw.mul_right(i + 2, Zr(i + 2))
        X = ZSymbol([(i, a1), (i + 1, a5), (i + 2, a1)])
        r = eliminate(inu, innu, X)
        tail = ZSymbol([(i - 1, a5), (i + 2, a1), (i + 2, a1)])
        r = r.scale(-r.coefficient(tail).inv())
        value = r.coefficient(ZSymbol([(i, a1), (i, a1), (i + 3, a5)]))
        return {"case": case, "i": i, "value": value, "eliminated": X.label(R),
                "residual": str(r)}
    raise KeyError("unknown lemma chain %r" % case)
