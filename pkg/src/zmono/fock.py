"""Truncated principal Fock model of W = L(L0) x L(L1) with exact Z-operator action.

Each tensor slot is the polynomial ring in variables x_{n,mu} (n > 0 with a
nonzero omega^{-n}-eigenspace of nu on the Cartan), graded by x-degree.  The
Heisenberg mode a_(-n) t^{-n} multiplies by the matching linear form and
a_(n) t^n acts as a derivation; on a slot of level 1,

    [a_(n) t^n, b_(-n) t^{-n}] = (n/m) <a_(n), b_(-n)>.

On W the level-1 slot operators X(b, z) = c E^-(-b, z) E^+(-b, z) combine
with the diagonal level-2 exponentials into

    Z(b, z) = c0 Y(-b) x Y(b) + c1 Y(b) x Y(-b),    Y(g) = E^-(g) E^+(g) at k = 2,

and the scalars c0, c1 are calibrated (see `calibrate`).  Z_i is the
coefficient of z^i; it lowers the total x-degree by i.  A vector of degree D
is a column over the monomial basis of W_D, ordered by sector (d0, d1) with
d0 + d1 = D, row-major inside a sector.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, lcm

import flint
import numpy as np

from .cyclo import galois_twist
from .gcr import cpoly, extract_relation, gt_T, named_constant
from .laurent import DEFAULT_ORDER
from .qseries import QSeries
from .linalg import QwMat, nullspace, rank_of_columns, solve
from .rootsystem import RootContext, RootVec, extended_pairing, project_vector, representative


class TruncationError(ArithmeticError):
    """An operator would leave the degree window of the model."""


class CalibrationError(ArithmeticError):
    pass


# ---------------------------------------------------------------- exponents

class ExponentTable:
    """Eigen-decomposition of nu on the Cartan: basis of each omega^n-eigenspace."""

    def __init__(self, rctx):
        self.rctx = R = rctx
        self.m = R.m
        self.basis = {}
        for n in range(R.m):
            vecs = []
            for i in range(1, R.rank + 1):
                v = project_vector(R, R.alpha(i), n)
                if all(c.is_zero() for c in v):
                    continue
                if rank_of_columns(vecs + [v]) > len(vecs):
                    vecs.append(v)
            self.basis[n] = vecs
        self.multiplicity = {n: len(b) for n, b in self.basis.items()}
        # gram[n][mu][nu] = <e_{n,mu}, e_{-n,nu}>
        self.gram = {n: [[extended_pairing(R, e, f) for f in self.basis[-n % R.m]]
                          for e in self.basis[n]] for n in range(R.m)}

    def total(self):
        return sum(self.multiplicity.values())

    def coords(self, a_root, n):
        """Coordinates of a_(n) in the chosen basis of the omega^n-eigenspace."""
        vecs = self.basis[n % self.m]
        target = project_vector(self.rctx, RootVec(a_root), n)
        if not vecs:
            return []
        x, _ = solve(vecs, target)
        if x is None:
            raise ArithmeticError("projection outside its eigenspace")
        return x

    def is_eigenvector(self, n, mu):
        """nu e = omega^n e, checked on coordinates."""
        R = self.rctx
        e = self.basis[n % self.m][mu]
        N = R.nu_matrix(1).matrix
        ne = [sum((e[j] * N[i][j] for j in range(R.rank) if N[i][j]), R.cyclo.zero())
              for i in range(R.rank)]
        w = R.cyclo.omega(n)
        return all((a - w * b).is_zero() for a, b in zip(ne, e))


def exponents(rctx):
    return ExponentTable(rctx if isinstance(rctx, RootContext) else RootContext(rctx))


# ---------------------------------------------------------------- one slot

def _to_array(ctx, entries, nrows, ncols):
    """dict (i, j) -> CycloNum to (integer array (phi, r, c), den)."""
    den = 1
    for v in entries.values():
        den = lcm(den, int(v.poly.denom()))
    arr = np.zeros((ctx.degree, nrows, ncols), dtype=object)
    for (i, j), v in entries.items():
        f = den // int(v.poly.denom())
        for k, c in enumerate(v.poly.numer().coeffs()):
            if c != 0:
                arr[k, i, j] += int(c) * f
    return arr, den


class SlotOp:
    """Graded operator on one slot: (d, t) -> integer array (phi, p(t), p(d)), one common denominator."""

    def __init__(self, blocks, den):
        self.blocks = blocks
        self.den = den

    def get(self, d, t, slot):
        if (d, t) in self.blocks:
            return self.blocks[(d, t)]
        return None

    @classmethod
    def from_entries(cls, ctx, slot, entries):
        """entries: (d, t) -> {(row, col): CycloNum}."""
        den = 1
        for ent in entries.values():
            for v in ent.values():
                den = lcm(den, int(v.poly.denom()))
        blocks = {}
        for (d, t), ent in entries.items():
            if not ent:
                continue
            arr, dd = _to_array(ctx, ent, slot.dim(t), slot.dim(d))
            blocks[(d, t)] = arr * (den // dd)
        return cls(blocks, den)


class Slot:
    """Polynomial slot: monomials in x_{n,mu}, graded by sum of n, up to cap."""

    def __init__(self, table, cap):
        self.table = table
        self.cap = cap
        self.vars = [(n, mu) for n in range(1, cap + 1)
                     for mu in range(table.multiplicity[-n % table.m])]
        self._basis = {0: [tuple(0 for _ in self.vars)]}
        for d in range(1, cap + 1):
            self._basis[d] = self._monomials(d)
        self._index = {d: {mono: i for i, mono in enumerate(b)} for d, b in self._basis.items()}

    def _monomials(self, d):
        out = []
        nv = len(self.vars)

        def rec(k, left, cur):
            if left == 0:
                out.append(tuple(cur + [0] * (nv - len(cur))))
                return
            if k == nv:
                return
            n = self.vars[k][0]
            for e in range(left // n, -1, -1):
                rec(k + 1, left - e * n, cur + [e])
        rec(0, d, [])
        return out

    def basis(self, d):
        return self._basis.get(d, []) if d >= 0 else []

    def dim(self, d):
        return len(self.basis(d))

    def index(self, d, mono):
        return self._index[d][mono]

    def degree(self, mono):
        return sum(e * v[0] for e, v in zip(mono, self.vars))


# ---------------------------------------------------------------- the model

def _fold_raw(ctx, raw):
    """Reduce an array indexed by powers 0..2phi-2 of omega to phi parts."""
    d = ctx.degree
    parts = raw[:d].copy()
    for k in range(d, raw.shape[0]):
        if not raw[k].any():
            continue
        for t, c in enumerate(_reduction(ctx, k)):
            if c:
                parts[t] = parts[t] + raw[k] * c
    return parts


@lru_cache(maxsize=None)
def _reduction_cached(m, k):
    from .cyclo import CycloContext
    return tuple(int(c) for c in CycloContext(m=m).omega(k).coeffs)


def _reduction(ctx, k):
    return _reduction_cached(ctx.m, k)


def _qwmat(ctx, parts, den):
    nr, nc = parts.shape[1], parts.shape[2]
    fl = [flint.fmpz_mat(nr, nc, [int(x) for x in p.ravel()]) for p in parts]
    return QwMat(ctx, fl, den, nr, nc).normalized()


class FockModel:
    """W = L(L0) x L(L1) truncated at x-degree `cap`, with Z scalars per root orbit."""

    def __init__(self, s, cap=10, scalars=None):
        self.rctx = R = s if isinstance(s, RootContext) else RootContext(s)
        self.s = R.s
        self.m = R.m
        self.K = R.cyclo
        self.cap = cap
        self.table = ExponentTable(R)
        self.slot = Slot(self.table, cap)
        self.scalars = dict(scalars) if scalars else {}
        self._Y = {}
        self._zmat = {}
        self._heis = {}
        self._offsets = {}

    # ---- bookkeeping
    def with_scalars(self, scalars):
        """Same slot data, new scalars."""
        other = FockModel.__new__(FockModel)
        other.__dict__.update(self.__dict__)
        other.scalars = dict(scalars)
        other._zmat = {}
        return other

    def sectors(self, D):
        return [(d0, D - d0) for d0 in range(D + 1)]

    def offsets(self, D):
        if D not in self._offsets:
            off, pos = {}, 0
            for d0, d1 in self.sectors(D):
                off[(d0, d1)] = pos
                pos += self.slot.dim(d0) * self.slot.dim(d1)
            self._offsets[D] = (off, pos)
        return self._offsets[D]

    def dim(self, D):
        if D < 0 or D > self.cap:
            return 0
        return self.offsets(D)[1]

    def basis_labels(self, D):
        out = []
        for d0, d1 in self.sectors(D):
            for a in self.slot.basis(d0):
                for b in self.slot.basis(d1):
                    out.append((a, b))
        return out

    def vacuum(self):
        return FockVector(self, {0: QwMat.column(self.K, [self.K.one()])})

    def basis_vector(self, D, k):
        vals = [self.K.zero()] * self.dim(D)
        vals[k] = self.K.one()
        return FockVector(self, {D: QwMat.column(self.K, vals)})

    # ---- slot data for a root
    def tau(self, gamma, n):
        """Translation amounts 1/2 <g_(n), e_{-n,mu}> for the variables of degree n."""
        T = self.table
        gn = project_vector(self.rctx, gamma, n)
        return [extended_pairing(self.rctx, gn, e) / 2 for e in T.basis[-n % self.m]]

    def kappa(self, gamma, n):
        """g_(-n) = sum_mu kappa_mu e_{-n,mu}."""
        return self.table.coords(gamma, -n)

    def Y(self, gamma):
        """Slot operator E^-(g) E^+(g) at level 2, graded (d, t) with factor z^{d-t}."""
        gamma = RootVec(gamma)
        if gamma in self._Y:
            return self._Y[gamma]
        K, S, cap = self.K, self.slot, self.cap
        tau = [None] * len(S.vars)
        b = [None] * len(S.vars)
        for n in range(1, cap + 1):
            if self.table.multiplicity[-n % self.m] == 0:
                continue
            tn, kn = self.tau(gamma, n), self.kappa(gamma, n)
            for k, (vn, mu) in enumerate(S.vars):
                if vn == n:
                    tau[k] = tn[mu]
                    b[k] = kn[mu] * Fraction(-self.m, 2 * n)
        # exp(sum b_v x_v) coefficients, per monomial
        G = {}
        for u in range(cap + 1):
            for mono in S.basis(u):
                c = K.one()
                for k, e in enumerate(mono):
                    if e:
                        c = c * (b[k] ** e) / factorial(e)
                G[mono] = c
        entries = {}
        for d in range(cap + 1):
            for col, mono in enumerate(S.basis(d)):
                ranges = [range(e + 1) for e in mono]
                for sub in product(*ranges):
                    coef = K.one()
                    for k, (e, f) in enumerate(zip(mono, sub)):
                        if f:
                            coef = coef * (tau[k] ** f) * comb(e, f)
                    if coef.is_zero():
                        continue
                    rest = tuple(e - f for e, f in zip(mono, sub))
                    r_deg = S.degree(rest)
                    for u in range(cap - r_deg + 1):
                        for nu in S.basis(u):
                            g = G[nu]
                            if g.is_zero():
                                continue
                            tgt = tuple(x + y for x, y in zip(rest, nu))
                            t = r_deg + u
                            row = S.index(t, tgt)
                            ent = entries.setdefault((d, t), {})
                            v = coef * g
                            ent[(row, col)] = ent[(row, col)] + v if (row, col) in ent else v
        op = SlotOp.from_entries(K, S, entries)
        self._Y[gamma] = op
        return op

    def slot_matrix(self, op, d, t):
        arr = op.blocks.get((d, t))
        if arr is None:
            return QwMat.zeros(self.K, self.slot.dim(t), self.slot.dim(d))
        return _qwmat(self.K, arr, op.den)

    # ---- scalars
    def scalar_pair(self, gamma):
        rep, _ = representative(self.rctx, RootVec(gamma))
        if rep not in self.scalars:
            raise CalibrationError("no scalars for the orbit of %s" % self.rctx.name(rep))
        return self.scalars[rep]

    # ---- W-level assembly
    def _tensor(self, terms, D, T):
        """sum_k c_k (A_k x B_k) from W_D to W_T; each A_k, B_k a SlotOp."""
        K = self.K
        offD, nD = self.offsets(D)
        offT, nT = self.offsets(T)
        phi = K.degree
        total = QwMat.zeros(K, nT, nD)
        for c, A, B in terms:
            if c == 0:
                continue
            raw = np.zeros((2 * phi - 1, nT, nD), dtype=object)
            hit = False
            for d0, d1 in self.sectors(D):
                for t0, t1 in self.sectors(T):
                    a = A.blocks.get((d0, t0))
                    bb = B.blocks.get((d1, t1))
                    if a is None or bb is None:
                        continue
                    r0, c0 = offT[(t0, t1)], offD[(d0, d1)]
                    nr = a.shape[1] * bb.shape[1]
                    nc = a.shape[2] * bb.shape[2]
                    for i in range(phi):
                        if not a[i].any():
                            continue
                        for j in range(phi):
                            if not bb[j].any():
                                continue
                            raw[i + j, r0:r0 + nr, c0:c0 + nc] += np.kron(a[i], bb[j])
                            hit = True
            if not hit:
                continue
            M = _qwmat(K, _fold_raw(K, raw), A.den * B.den)
            total = total + M.scale(c)
        return total.normalized()

    def identity_op(self):
        if "id" not in self._heis:
            blocks = {(d, d): np.array([np.eye(self.slot.dim(d), dtype=object) * 1]
                                       + [np.zeros((self.slot.dim(d),) * 2, dtype=object)
                                          for _ in range(self.K.degree - 1)])
                      for d in range(self.cap + 1)}
            self._heis["id"] = SlotOp(blocks, 1)
        return self._heis["id"]

    def zmat(self, gamma, i, D):
        """Matrix of Z_i(gamma): W_D -> W_{D-i}."""
        gamma = RootVec(gamma)
        T = D - i
        if D < 0 or D > self.cap:
            raise TruncationError("source degree %d outside 0..%d" % (D, self.cap))
        if T > self.cap:
            raise TruncationError("Z_%d sends degree %d to %d > cap %d" % (i, D, T, self.cap))
        if T < 0:
            return QwMat.zeros(self.K, 0, self.dim(D))
        key = (gamma, i, D)
        if key not in self._zmat:
            c0, c1 = self.scalar_pair(gamma)
            Yp, Ym = self.Y(gamma), self.Y(-gamma)
            self._zmat[key] = self._tensor([(c0, Ym, Yp), (c1, Yp, Ym)], D, T)
        return self._zmat[key]

    def z_apply(self, i, gamma, v):
        out = {}
        for D, col in v.parts.items():
            T = D - i
            if T < 0:
                continue
            out[T] = self.zmat(gamma, i, D) @ col
        return FockVector(self, out)

    # ---- Heisenberg
    def heis_slot(self, vec, n):
        """Slot operator of a_(n) t^n where vec holds the coordinates of a_(n)."""
        key = ("h", n, tuple(str(c) for c in vec))
        if key in self._heis:
            return self._heis[key]
        S, K = self.slot, self.K
        entries = {}
        if n < 0:
            coords, _ = solve(self.table.basis[n % self.m], vec) if self.table.basis[n % self.m] else ([], True)
            if coords is None:
                raise ArithmeticError("vector not in the omega^%d eigenspace" % n)
            coef = {k: coords[mu] for k, (vn, mu) in enumerate(S.vars) if vn == -n}
            for d in range(self.cap + n + 1):
                ent = {}
                for col, mono in enumerate(S.basis(d)):
                    for k, c in coef.items():
                        tgt = list(mono)
                        tgt[k] += 1
                        ent[(S.index(d - n, tuple(tgt)), col)] = c
                entries[(d, d - n)] = ent
        else:
            e_list = self.table.basis[-n % self.m]
            coef = {}
            for k, (vn, mu) in enumerate(S.vars):
                if vn == n:
                    coef[k] = extended_pairing(self.rctx, vec, e_list[mu]) * Fraction(n, self.m)
            for d in range(n, self.cap + 1):
                ent = {}
                for col, mono in enumerate(S.basis(d)):
                    for k, c in coef.items():
                        if mono[k] and not c.is_zero():
                            tgt = list(mono)
                            tgt[k] -= 1
                            r = S.index(d - n, tuple(tgt))
                            ent[(r, col)] = ent.get((r, col), K.zero()) + c * mono[k]
                entries[(d, d - n)] = ent
        op = SlotOp.from_entries(K, S, entries)
        self._heis[key] = op
        return op

    def heis_mat(self, vec, n, D):
        """Diagonal action a x 1 + 1 x a of a_(n) t^n: W_D -> W_{D-n}."""
        if n == 0:
            raise ValueError("nu has no fixed vectors on the Cartan; there is no zero mode")
        H, I = self.heis_slot(vec, n), self.identity_op()
        T = D - n
        if T < 0:
            return QwMat.zeros(self.K, 0, self.dim(D))
        if T > self.cap:
            raise TruncationError("degree %d beyond cap" % T)
        return self._tensor([(1, H, I), (1, I, H)], D, T)

    def heis_apply(self, a_root, n, v):
        vec = project_vector(self.rctx, RootVec(a_root), n)
        out = {}
        for D, col in v.parts.items():
            if D - n >= 0:
                out[D - n] = self.heis_mat(vec, n, D) @ col
        return FockVector(self, out)

    def annihilators(self, D):
        """Stacked matrices of e_{n,mu} t^n on W_D for all n <= D with nonzero eigenspace."""
        mats = []
        for n in range(1, D + 1):
            for vec in self.table.basis[n % self.m]:
                mats.append(self.heis_mat(vec, n, D))
        return mats

    # ---- words
    def word_apply(self, word, v):
        """Apply Z_{i_1}(g_1) ... Z_{i_l}(g_l), rightmost first; word = [(i, g), ...]."""
        for i, g in reversed(list(word)):
            v = self.z_apply(i, g, v)
        return v


class FockVector:
    """Homogeneous components: degree -> column QwMat over the basis of W_D."""

    def __init__(self, model, parts):
        self.model = model
        self.parts = {D: c for D, c in parts.items() if c.nrows}

    def __add__(self, other):
        out = dict(self.parts)
        for D, c in other.parts.items():
            out[D] = out[D] + c if D in out else c
        return FockVector(self.model, out)

    def __neg__(self):
        return FockVector(self.model, {D: -c for D, c in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return FockVector(self.model, {D: col.scale(c) for D, col in self.parts.items()})

    def is_zero(self):
        return all(c.is_zero() for c in self.parts.values())

    def component(self, D):
        if D in self.parts:
            return self.parts[D]
        return QwMat.zeros(self.model.K, self.model.dim(D), 1)

    def degrees(self):
        return sorted(D for D, c in self.parts.items() if not c.is_zero())

    def __eq__(self, other):
        return (self - other).is_zero()


# ---------------------------------------------------------------- calibration

def shorthand_root(rctx, i):
    """Z_i = Z_i(alpha_1) for even i and Z_i(alpha_s) for odd i."""
    return rctx.alpha(1) if i % 2 == 0 else rctx.alpha(rctx.s)


def vanishing_parity(rctx, beta):
    """Index parity on which Z(beta) vanishes in W: even for alpha_s, odd otherwise."""
    return 0 if RootVec(beta) == rctx.alpha(rctx.s) else 1


def _sign_constraints(model, beta, cap):
    """Rows [T0 entry, T1 entry] of c0 Y(-b) x Y(b) + c1 Y(b) x Y(-b) on vanishing indices."""
    Yp, Ym = model.Y(beta), model.Y(-beta)
    par = vanishing_parity(model.rctx, beta)
    rows = []
    for D in range(cap + 1):
        for T in range(cap + 1):
            if (D - T) % 2 != par:
                continue
            for d0, d1 in model.sectors(D):
                for t0, t1 in model.sectors(T):
                    A0, B0 = model.slot_matrix(Ym, d0, t0), model.slot_matrix(Yp, d1, t1)
                    A1, B1 = model.slot_matrix(Yp, d0, t0), model.slot_matrix(Ym, d1, t1)
                    a0, b0, a1, b1 = (M.to_rows() for M in (A0, B0, A1, B1))
                    for i, j in product(range(A0.nrows), range(A0.ncols)):
                        for k, l in product(range(B0.nrows), range(B0.ncols)):
                            x, y = a0[i][j] * b0[k][l], a1[i][j] * b1[k][l]
                            if not (x.is_zero() and y.is_zero()):
                                rows.append([x, y])
    return rows


def sign_ratio(model, beta, cap=4):
    """c1/c0 forced by the vanishing of Z(beta) on its vanishing parity."""
    rows = _sign_constraints(model, beta, cap)
    ns = nullspace(rows) if rows else []
    if len(ns) != 1 or ns[0][0].is_zero():
        raise CalibrationError("vanishing constraints for %s leave %d free scalars"
                               % (model.rctx.name(RootVec(beta)), len(ns)))
    return ns[0][1] / ns[0][0]


def vacuum_value(model, rel):
    """Scalar by which a relation acts on the vacuum, split as (pairs, singles, const)."""
    K = model.K
    out = [K.zero(), K.zero(), K.zero()]
    v = model.vacuum()
    for sym, c in rel.items():
        if len(sym) == 0:
            out[2] = out[2] + c
            continue
        w = model.word_apply(sym, v)
        val = w.component(0)
        if val.nrows:
            k = 2 - len(sym)
            out[k] = out[k] + c * val.entry(0, 0)
    return out


def calibrate(s, cap=4, model=None):
    """Scalars {rep: (c0, c1)}: signs from the vanishing relations, one global scale from the GCR."""
    model = model or FockModel(s, cap=max(cap, 4))
    R = model.rctx
    signs = {b: sign_ratio(model, b, cap) for b in R.phi_prime}
    unit = model.with_scalars({b: (model.K.one(), r) for b, r in signs.items()})
    a1 = R.alpha(1)
    eqs = []
    for a in (1, 2):
        rel = extract_relation(R, a1, a1, a, -a, P=max(DEFAULT_ORDER, 2 * a + 2))
        eqs.append(vacuum_value(unit, rel))
    (L1, S1, C1), (L2, S2, C2) = eqs
    den = S1 * L2 - S2 * L1
    if den.is_zero():
        raise CalibrationError("vacuum equations do not determine the scale")
    lam = (C2 * L1 - C1 * L2) / den
    for L, S, C in eqs:
        if not (lam * lam * L + lam * S + C).is_zero():
            raise CalibrationError("no common scale solves both vacuum equations")
    return {b: (lam, lam * r) for b, r in signs.items()}, {"scale": lam, "ratios": signs}


def calibrated_model(s, cap=10):
    model = FockModel(s, cap=cap)
    scalars, _ = calibrate(s, cap=4, model=model)
    return model.with_scalars(scalars)


def tensor_counterexample(model, beta, cap=None):
    """First (i, D) with Z_i(beta) nonzero on W_D for i of the vanishing parity, or None."""
    cap = model.cap if cap is None else cap
    par = vanishing_parity(model.rctx, beta)
    for D in range(cap + 1):
        for T in range(cap + 1):
            if (D - T) % 2 == par and not model.zmat(beta, D - T, D).is_zero():
                return D - T, D
    return None


def tensor_check(model, beta, cap=None):
    """Z_i(beta) = 0 on every basis vector of degree <= cap for i of the vanishing parity."""
    return tensor_counterexample(model, beta, cap) is None


# ---------------------------------------------------------------- GCR on W

class Inconclusive(Exception):
    pass


def relation_matrix(model, rel, D):
    """Realization of a relation on W_D (as a matrix into W_{D-a-b})."""
    total = None
    for sym, c in rel.items():
        if not sym:
            M = QwMat.identity(model.K, model.dim(D))
        else:
            M, cur = None, D
            for i, g in reversed(list(sym)):
                Z = model.zmat(g, i, cur)
                M = Z if M is None else Z @ M
                cur -= i
                if cur < 0:
                    break
            if cur < 0 or M.nrows == 0:
                continue
        M = M.scale(c)
        total = M if total is None else total + M
    return total


def gcr_check(model, alpha, beta, a, b, cap=8, phase="derived"):
    """Relation for (alpha, beta) at bidegree (a, b) on every basis vector of degree <= cap."""
    need = max(cap - min(a, b), cap - min(a, 0) - min(b, 0))
    if need > model.cap:
        raise Inconclusive("degree %d reached by the relation exceeds model cap %d" % (need, model.cap))
    P = max(DEFAULT_ORDER, cap - min(a, b) + 1)
    rel = extract_relation(model.rctx, alpha, beta, a, b, P=P, phase=phase)
    for D in range(cap + 1):
        if D - a - b < 0:
            continue
        M = relation_matrix(model, rel, D)
        if M is not None and not M.is_zero():
            return False
    return True


# ---------------------------------------------------------------- vacuum space and spans

def _stack_rank(mats, ncols):
    rows = []
    for M in mats:
        rows.extend(M.to_rows())
    if not rows:
        return 0
    return QwMat.from_rows(mats[0].ctx, rows).rank()


def vacuum_character(rctx, N):
    """prod_{n >= 1} (1 - q^n)^{-mult(n)}: graded dimension of the free Heisenberg module."""
    mult = exponents(rctx).multiplicity
    out = QSeries.one(N)
    for n in range(1, N + 1):
        for _ in range(mult[n % rctx.m]):
            out = out / QSeries([1] + [0] * (n - 1) + [-1], N)
    return out


def vacuum_dim(model, d):
    """dim of the joint kernel of all annihilation modes on W_d."""
    mats = [M for M in model.annihilators(d) if M.nrows]
    return model.dim(d) - (_stack_rank(mats, model.dim(d)) if mats else 0)


def _word_vectors(model, words, root_of=None):
    """Z-word images of the vacuum, memoized on suffixes; words are index tuples."""
    root_of = root_of or (lambda i: shorthand_root(model.rctx, i))
    memo = {(): model.vacuum()}

    def get(word):
        if word in memo:
            return memo[word]
        rest = get(word[1:])
        memo[word] = model.z_apply(word[0], root_of(word[0]), rest)
        return memo[word]
    return [get(tuple(w)) for w in words]


def span_rank(model, tuples, d, root_of=None):
    """Rank of {Z_{i1}...Z_{il} vacuum} inside W_d."""
    for t in tuples:
        if sum(t) != -d:
            raise ValueError("tuple %r does not sum to %d" % (t, -d))
    vecs = _word_vectors(model, tuples, root_of)
    cols = [v.component(d) for v in vecs]
    cols = [c for c in cols if not c.is_zero()]
    if not cols:
        return 0
    M = cols[0]
    for c in cols[1:]:
        M = M.hstack(c)
    return M.rank()


def partitions_of(d, max_part=None):
    max_part = d if max_part is None else max_part
    if d == 0:
        yield ()
        return
    for k in range(min(d, max_part), 0, -1):
        for rest in partitions_of(d - k, k):
            yield (k,) + rest


def partition_words(d, keep=None):
    """Index tuples (-l1, ..., -lk) for partitions l1 >= ... >= lk of d."""
    return [tuple(-x for x in p) for p in partitions_of(d) if keep is None or keep(p)]


# ---------------------------------------------------------------- T-span membership

def _suffix_ok(word, cap):
    tot = 0
    for x in reversed(word):
        tot += x
        if not -cap <= tot <= 0:
            return False
    return True


def words_to(total, length, cap):
    """Index words of the given length whose right partial sums stay in [-cap, 0]."""
    out = []

    def rec(k, acc, suffix):
        if k == 0:
            if acc == total:
                out.append(tuple(suffix))
            return
        for x in range(-cap - acc, -acc + 1):
            if k == 1 and acc + x != total:
                continue
            rec(k - 1, acc + x, [x] + suffix)
    rec(length, 0, [])
    return out


def odd_count(word):
    return sum(1 for x in word if x % 2)


def t_family(bound, total, cap, odd=None, extra_even_length=None):
    """Words of the spanning family T~(bound) at the given total, optionally intersected
    with S~(odd) and joined with S~(0) words up to length extra_even_length."""
    l = len(bound)
    fam = []
    for k in range(l + 1):
        for w in words_to(total, k, cap):
            if k == l and not gt_T(w, bound):
                continue
            if odd is not None and (odd < 0 or odd_count(w) != odd):
                continue
            fam.append(w)
    if extra_even_length is not None:
        for k in range(extra_even_length + 1):
            for w in words_to(total, k, cap):
                if odd_count(w) == 0 and w not in fam:
                    fam.append(w)
    return fam


def _expr_vector(model, expr):
    """expr: list of (coefficient, word); a word is a tuple of indices or of (index, root)."""
    total = None
    for c, word in expr:
        factors = [f if isinstance(f, tuple) else (f, shorthand_root(model.rctx, f)) for f in word]
        v = model.word_apply(factors, model.vacuum()).scale(c)
        total = v if total is None else total + v
    return total


def t_span_membership(model, expr, bound, cap=None, odd=None, extra_even_length=None,
                      extra_words=()):
    """expr (on the vacuum) lies in the span of the family T~(bound), as configured.

    Returns (member, info).  extra_words are added to the family verbatim.
    """
    cap = model.cap if cap is None else cap
    target = _expr_vector(model, expr)
    degs = target.degrees()
    if len(degs) > 1:
        raise ValueError("expression is not homogeneous")
    if not degs:
        return True, {"family": 0, "degree": None, "zero": True}
    D = degs[0]
    fam = t_family(tuple(bound), -D, cap, odd, extra_even_length)
    fam = fam + [w for w in extra_words if w not in fam]
    vecs = [model.word_apply([f if isinstance(f, tuple) else (f, shorthand_root(model.rctx, f))
                              for f in w], model.vacuum()) for w in fam]
    cols = [v.component(D) for v in vecs]
    cols = [c for c in cols if not c.is_zero()]
    t = target.component(D)
    if not cols:
        return t.is_zero(), {"family": 0, "degree": D}
    M = cols[0]
    for c in cols[1:]:
        M = M.hstack(c)
    r0 = M.rank()
    r1 = M.hstack(t).rank()
    return r0 == r1, {"family": len(fam), "degree": D, "rank": r0}


# ---------------------------------------------------------------- straightening

PRINTED_C1 = {5: 11, 3: -11, 2: -7, 1: 9, 0: 4}
PRINTED_C2 = {5: Fraction(-1, 18), 4: Fraction(1, 6), 2: Fraction(-1, 9), 1: Fraction(-1, 9),
              0: Fraction(1, 9)}


def straightening_a9(model=None, twist=1):
    """Solve Z_-2 Z_-2 v = c1 Z_-3 Z_-1 v + c2 Z_-4 v in W (s = 5)."""
    model = model or calibrated_model(5, cap=4)
    if model.s != 5:
        raise ValueError("the straightening relation is stated for s = 5")
    K = model.K
    lhs, w31, w4 = _word_vectors(model, [(-2, -2), (-3, -1), (-4,)])
    cols = [w31.component(4).column_values(), w4.component(4).column_values()]
    x, unique = solve(cols, lhs.component(4).column_values())
    printed = (galois_twist(cpoly(K, PRINTED_C1), twist), galois_twist(cpoly(K, PRINTED_C2), twist))
    rep = {"exists": x is not None, "unique": bool(unique), "twist": twist,
           "printed": [str(p) for p in printed]}
    if x is None:
        rep.update(ok=False, c1=None, c2=None)
        return rep
    rep.update(c1=str(x[0]), c2=str(x[1]), ok=unique and x[0] == printed[0] and x[1] == printed[1],
               values=x)
    return rep


# ---------------------------------------------------------------- membership suite

_MODELS = {}


def shared_model(s, cap):
    """Calibrated model cached per (s, cap); a larger cached cap is reused."""
    for (s2, c2), M in _MODELS.items():
        if s2 == s and c2 >= cap:
            return M
    M = calibrated_model(s, cap=cap)
    _MODELS[(s, cap)] = M
    return M


class MembershipCase:
    def __init__(self, case_id, s, statement, instances):
        self.case_id = case_id
        self.s = s
        self.statement = statement
        self.instances = instances   # list of (params, builder); builder(R) -> kwargs


def _z(*idx):
    return [(1, tuple(idx))]


def _t(bound, expr, **kw):
    return dict(expr=expr, bound=tuple(bound), **kw)


def _case_list():
    cases = []

    def add(cid, s, statement, params, build):
        cases.append(MembershipCase(cid, s, statement, [(p, (lambda p=p: build(RootContext(s), *p)))
                                                        for p in params]))
    # general level-2 statements, tested at small s
    add("pree.a", 3, "Z_i Z_i' v in S(0; i-1, i'+1)", [(-2, -4), (-2, -6)],
        lambda R, i, j: _t((i - 1, j + 1), _z(i, j), odd=0))
    add("pree.b", 3, "Z_i Z_i' v in S(0; i, i')", [(-2, -4), (-2, -6)],
        lambda R, i, j: _t((i, j), _z(i, j), odd=0))
    add("pree.c", 3, "Z_{i+i'}(b2) v in S(0; i-1, i'+1)", [(-2, -4), (-4, -6)],
        lambda R, i, j: _t((i - 1, j + 1), [(1, ((i + j, R.beta(2)),))], odd=0))
    add("preo", 3, "Z_i Z_j v in S(1; i, j), i even > j odd", [(-2, -3), (-2, -5)],
        lambda R, i, j: _t((i, j), _z(i, j), odd=1))
    add("preo.rev", 3, "Z_j Z_i v in S(1; j, i), j odd > i even", [(-1, -2), (-3, -4)],
        lambda R, j, i: _t((j, i), _z(j, i), odd=1))
    add("beta_n", 4, "Z_a(b_n) v in span S~(0; v)", [(-4, 3), (-6, 3)],
        lambda R, a, n: _t((), [(1, ((a, R.beta(n)),))], extra_even_length=-a // 2))
    add("proo", 3, "Z_j Z_j' v in span((S~(2) n T~(j, j')) u S~(0))", [(-1, -3), (-1, -5)],
        lambda R, j, jp: _t((j, jp), _z(j, jp), odd=2, extra_even_length=-(j + jp) // 2))
    add("rmk.even", 3, "Z_i Z_{i+1} v in S(1; i, i+1), i even", [(-2,), (-4,)],
        lambda R, i: _t((i, i + 1), _z(i, i + 1), odd=1))
    add("rmk.odd", 3, "Z_j Z_{j+1} v in S(1; j, j+1), j odd", [(-3,), (-5,)],
        lambda R, j: _t((j, j + 1), _z(j, j + 1), odd=1))
    # A(2)_5 and A(2)_7
    for s in (3, 4):
        tag = "a%d" % (2 * s - 1)
        add(tag + ".oddpair", s, "Z_j Z_j' v in T(j, j'), j > j' odd", [(-1, -3), (-1, -5)],
            lambda R, j, jp: _t((j, jp), _z(j, jp)))
        add(tag + ".oddsq", s, "Z_j Z_j v in T(j, j), j odd", [(-1,), (-3,)],
            lambda R, j: _t((j, j), _z(j, j)))
        add(tag + ".evensq", s, "Z_i Z_i v in T(i, i), i even", [(-2,), (-4,)],
            lambda R, i: _t((i, i), _z(i, i)))
    add("a5.beta2", 3, "Z_2j(b2) v in T(j-1, j+1), j odd", [(-1,), (-3,)],
        lambda R, j: _t((j - 1, j + 1), [(1, ((2 * j, R.beta(2)),))]))
    add("a5.evengap", 3, "Z_i Z_{i+2} v in T(i, i+2), i even", [(-4,), (-6,)],
        lambda R, i: _t((i, i + 2), _z(i, i + 2)))
    # A(2)_9
    add("a9.oddpair", 5, "Z_j Z_j' v in T(j, j'), j >= j' odd", [(-1, -3), (-3, -3)],
        lambda R, j, jp: _t((j, jp), _z(j, jp)))
    add("a9.oddbeta", 5, "Z_{j+j'}(b_n) v in T(j, j')", [(-1, -3, 2), (-3, -3, 3)],
        lambda R, j, jp, n: _t((j, jp), [(1, ((j + jp, R.beta(n)),))]))
    add("a9.lem1", 5, "(d(i) Z_i Z_i - Z_2i(b2)) v in T(i, i)", [(-2,), (-4,)],
        lambda R, i: _t((i, i), [(named_constant(5, "d", i), (i, i)),
                                  (-1, ((2 * i, R.beta(2)),))]))
    add("a9.lem1.T2", 5, "(d(i) Z_i Z_i - Z_2i(b2)) v in T''(i, i)", [(-2,), (-4,)],
        lambda R, i: _t((i, i), [(named_constant(5, "d", i), (i, i)),
                                  (-1, ((2 * i, R.beta(2)),))], t2=True))
    add("a9.lem2", 5, "(e(i) Z_i Z_{i+2} - Z_{2i+2}(b2)) v in T(i, i+2)", [(-4,), (-6,)],
        lambda R, i: _t((i, i + 2), [(named_constant(5, "e", i), (i, i + 2)),
                                      (-1, ((2 * i + 2, R.beta(2)),))]))
    add("a9.lem2.T2", 5, "(e(i) Z_i Z_{i+2} - Z_{2i+2}(b2)) v in T''(i, i+2)", [(-4,), (-6,)],
        lambda R, i: _t((i, i + 2), [(named_constant(5, "e", i), (i, i + 2)),
                                      (-1, ((2 * i + 2, R.beta(2)),))], t2=True))
    add("a9.triple", 5, "Z_i Z_i Z_i v in T(i, i, i)", [(-2,), (-4,)],
        lambda R, i: _t((i, i, i), _z(i, i, i)))
    add("a9.triple_up", 5, "Z_i Z_i Z_{i+2} v in T(i, i, i+2)", [(-2,), (-4,)],
        lambda R, i: _t((i, i, i + 2), _z(i, i, i + 2)))
    add("a9.triple_down", 5, "Z_{i-2} Z_i Z_i v in T(i-2, i, i)", [(-2,), (0,)],
        lambda R, i: _t((i - 2, i, i), _z(i - 2, i, i)))
    add("a9.lem3_1", 5, "Z_i Z_j v in T((i+j-1)/2, (i+j+1)/2), mixed parity, i-j >= -1",
        [(-2, -3), (-3, -2)],
        lambda R, i, j: _t(((i + j - 1) // 2, (i + j + 1) // 2), _z(i, j)))
    add("a9.lem3_2", 5, "(Z_{i+2} Z_{i+1} + (w^3/2 + w^2/2 - 1/2) Z_i Z_{i+3}) v in T(i, i+3)",
        [(-4,), (-6,)],
        lambda R, i: _t((i, i + 3), [(1, (i + 2, i + 1)),
                                      (R.cyclo.from_coeffs([Fraction(-1, 2), 0, Fraction(1, 2),
                                                            Fraction(1, 2)]), (i, i + 3))]))
    add("a9.lem4", 5, "((w^5 - w^2) Z_i Z_i Z_{i+3} - Z_{i-1} Z_{i+2} Z_{i+2}) v in T(i, i, i+3)",
        [(-4,), (-2,)],
        lambda R, i: _t((i, i, i + 3), [(R.cyclo.omega(5) - R.cyclo.omega(2), (i, i, i + 3)),
                                         (-1, (i - 1, i + 2, i + 2))]))
    add("a9.odd_triple_up", 5, "Z_i Z_i Z_{i+3} v in T(i, i, i+3)", [(-4,), (-2,)],
        lambda R, i: _t((i, i, i + 3), _z(i, i, i + 3)))
    add("a9.odd_triple_down", 5, "Z_{i-3} Z_i Z_i v in T(i-3, i, i)", [(-2,), (0,)],
        lambda R, i: _t((i - 3, i, i), _z(i - 3, i, i)))
    return cases


MEMBERSHIP_CASES = None


def membership_cases():
    global MEMBERSHIP_CASES
    if MEMBERSHIP_CASES is None:
        MEMBERSHIP_CASES = {c.case_id: c for c in _case_list()}
    return MEMBERSHIP_CASES


def t2_words(bound, total):
    """Words of T''(i, j): Z_{i-2k} Z_{j+2k} (k >= 1), Z_l and the empty word, at the given total."""
    i, j = bound
    out = [(), (total,)]
    k = 1
    while j + 2 * k <= 0:
        out.append((i - 2 * k, j + 2 * k))
        k += 1
    return [w for w in out if sum(w) == total]


def run_membership(case_id, cap=None):
    """Run both instances of a membership case; returns a report dict."""
    case = membership_cases()[case_id]
    results = []
    for params, build in case.instances:
        spec = build()
        # degree of the expression
        D = -sum(f if not isinstance(f, tuple) else f[0] for f in spec["expr"][0][1])
        fam_cap = max(D, 1) if cap is None else cap
        model = shared_model(case.s, max(fam_cap, D, 4))
        if spec.get("t2"):
            words = t2_words(spec["bound"], -D)
            ok, info = t_span_membership(model, spec["expr"], spec["bound"], fam_cap,
                                         odd=-1, extra_words=words)
        else:
            ok, info = t_span_membership(model, spec["expr"], spec["bound"], fam_cap,
                                         odd=spec.get("odd"),
                                         extra_even_length=spec.get("extra_even_length"))
        results.append({"params": params, "ok": ok, "degree": D, "cap": fam_cap, **info})
    return {"case_id": case_id, "s": case.s, "statement": case.statement,
            "ok": all(r["ok"] for r in results), "instances": results}
