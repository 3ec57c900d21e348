"""Independent Lyubeznik tables for monomial ideals.

Everything here is Z^{n+1}-graded.  A multigraded map between free modules
with generator multidegrees ``rows`` and ``cols`` has entry ``c * x^(cols[k]
- rows[r])``, so it is stored as a plain scalar matrix; restricting it to a
multidegree ``a`` selects the generators of degree <= a.  The Frobenius
functor keeps the scalars and multiplies every degree by p.

R/I is resolved by its Taylor complex, whose comparison map to the Taylor
complex of I^[p] is multiplication by lcm_S^(p-1) on e_S (scalar identity).
The inner module E = Ext(R/I, R) is resolved by linear algebra in each
multidegree of a window {a >= lower bound, |a| <= H}; H is doubled until two
consecutive windows give the same answers.

Nothing in this module uses the Gröbner/Schreyer machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .errors import EmptyScheme, NonMonomialInput, OracleInconclusive, ResourceLimit
from .ring import Ideal, Monomial

MAX_TAYLOR_GENERATORS = 10
MAX_DOUBLINGS = 3

Deg = tuple[int, ...]


@dataclass
class ScalarMap:
    """Multigraded map ⊕R(-cols[k]) -> ⊕R(-rows[r]) stored by its scalars."""

    mat: np.ndarray
    rows: list[Deg]
    cols: list[Deg]

    def transpose(self) -> ScalarMap:
        return ScalarMap(
            self.mat.T.copy(), [tuple(-x for x in d) for d in self.cols], [tuple(-x for x in d) for d in self.rows]
        )


def _leq(a: Deg, b: Deg) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _idx(degs: list[Deg], a: Deg) -> list[int]:
    return [k for k, d in enumerate(degs) if _leq(d, a)]


@dataclass
class TaylorComplex:
    generators: list[Monomial]
    subsets: list[list[tuple[int, ...]]]  # subsets[k]: index sets of size k, binary order
    degrees: list[list[Deg]]  # multidegree of lcm_S
    differentials: list[ScalarMap]  # differentials[k-1] : T_k -> T_{k-1}

    @property
    def length(self) -> int:
        return len(self.generators)

    def d(self, k: int, nvars: int) -> ScalarMap:
        if 1 <= k <= self.length:
            return self.differentials[k - 1]
        rows = self.degrees[k - 1] if 0 <= k - 1 <= self.length else []
        cols = self.degrees[k] if 0 <= k <= self.length else []
        return ScalarMap(np.zeros((len(rows), len(cols)), dtype=np.int64), rows, cols)

    def module(self, k: int) -> list[Deg]:
        return self.degrees[k] if 0 <= k <= self.length else []


def taylor_resolution(gens: list[Monomial], nvars: int | None = None, p: int = 2) -> TaylorComplex:
    """Taylor complex of R/(gens); subsets of each size in binary (bitmask) order."""
    r = len(gens)
    if r > MAX_TAYLOR_GENERATORS:
        raise ResourceLimit(f"Taylor complex on {r} > {MAX_TAYLOR_GENERATORS} generators")
    if nvars is None:
        nvars = len(gens[0]) if gens else 0
    zero = (0,) * nvars
    by_size: list[list[tuple[int, ...]]] = [[] for _ in range(r + 1)]
    for mask in range(1 << r):
        S = tuple(k for k in range(r) if mask >> k & 1)
        by_size[len(S)].append(S)

    def lcm(S):
        out = zero
        for k in S:
            out = tuple(max(x, y) for x, y in zip(out, gens[k]))
        return out

    degrees = [[lcm(S) for S in level] for level in by_size]
    diffs = []
    for k in range(1, r + 1):
        pos = {S: i for i, S in enumerate(by_size[k - 1])}
        mat = np.zeros((len(by_size[k - 1]), len(by_size[k])), dtype=np.int64)
        for c, S in enumerate(by_size[k]):
            for t, s in enumerate(S):
                face = S[:t] + S[t + 1:]
                mat[pos[face], c] = (-1) ** t % p
        diffs.append(ScalarMap(mat, degrees[k - 1], degrees[k]))
    T = TaylorComplex(list(gens), by_size, degrees, diffs)
    for k in range(1, r):
        assert not ((diffs[k - 1].mat @ diffs[k].mat) % p).any(), "Taylor d^2 != 0"
    return T


# -- multidegree windows ----------------------------------------------------


def _window(lo: Deg, H: int) -> list[Deg]:
    """Multidegrees a >= lo with |a| <= H, sorted by total degree then lex."""
    n = len(lo)
    budget = H - sum(lo)
    out: list[Deg] = []

    def rec(prefix, left):
        if len(prefix) == n:
            out.append(tuple(x + l for x, l in zip(prefix, lo)))
            return
        for b in range(left + 1):
            rec(prefix + (b,), left - b)

    if budget >= 0:
        rec((), budget)
    out.sort(key=lambda a: (sum(a), a))
    return out


def _grid(degree_lists: list[list[Deg]], lo: Deg, H: int) -> list[Deg]:
    """Window points whose coordinates all occur in ``degree_lists`` (or equal lo).

    Every piece we ever take depends on ``a`` only through the sets
    {k : deg_k <= a}; rounding each coordinate of ``a`` down to the nearest
    occurring value leaves those sets unchanged, so minimal generators can
    only sit at these points.
    """
    n = len(lo)
    values = []
    for k in range(n):
        vs = {lo[k]} | {d[k] for degs in degree_lists for d in degs if d[k] >= lo[k]}
        values.append(sorted(vs))
    out: list[Deg] = []

    def rec(prefix, total):
        k = len(prefix)
        if k == n:
            out.append(prefix)
            return
        rest = sum(lo[k + 1:])
        for v in values[k]:
            if total + v + rest > H:
                break
            rec(prefix + (v,), total + v)

    rec((), 0)
    out.sort(key=lambda a: (sum(a), a))
    return out


def _col_space(A: np.ndarray, p: int) -> np.ndarray:
    """Columns forming a basis of the column space of A."""
    if A.size == 0:
        return np.zeros((A.shape[0], 0), dtype=np.int64)
    R, piv = linalg.rref(A.T, p)
    return R[: len(piv)].T.copy()


def _extend_basis(base: np.ndarray, cand: np.ndarray, p: int) -> list[int]:
    """Indices of candidate columns that enlarge span(base), chosen greedily."""
    if cand.shape[1] == 0:
        return []
    r0 = linalg.rank(base, p) if base.size else 0
    if base.size and linalg.rank(np.hstack([base, cand]), p) == r0:
        return []
    chosen = []
    cur = base
    r = linalg.rank(cur, p) if cur.size else 0
    for k in range(cand.shape[1]):
        trial = np.hstack([cur, cand[:, k:k + 1]]) if cur.size else cand[:, k:k + 1]
        r2 = linalg.rank(trial, p)
        if r2 > r:
            chosen.append(k)
            cur, r = trial, r2
    return chosen


class _Subspaces:
    """A graded submodule U of a free module, known through its pieces U_a."""

    def __init__(self, ambient: list[Deg], piece_fn, p: int):
        self.ambient = ambient
        self.piece_fn = piece_fn  # a -> (index list, spanning columns over those indices)
        self.p = p


def _find_generators(U: _Subspaces, window: list[Deg], quotient_fn=None) -> tuple[list[Deg], np.ndarray]:
    """Minimal generators of U (modulo quotient_fn's spaces) in the window.

    Returns the generator degrees and a scalar matrix whose columns are the
    generators as full-length vectors over U.ambient.
    """
    p = U.p
    amb = U.ambient
    degs: list[Deg] = []
    vecs: list[np.ndarray] = []
    for a in window:
        idx, span = U.piece_fn(a)
        if span.shape[1] == 0:
            continue
        existing = [v[idx] for d, v in zip(degs, vecs) if _leq(d, a)]
        base = np.array(existing, dtype=np.int64).T if existing else np.zeros((len(idx), 0), dtype=np.int64)
        if quotient_fn is not None:
            q = quotient_fn(a)
            if q.shape[1]:
                base = np.hstack([base, q]) if base.size else q
        basis = _col_space(span, p)
        for k in _extend_basis(base, basis, p):
            full = np.zeros(len(amb), dtype=np.int64)
            full[idx] = basis[:, k]
            degs.append(a)
            vecs.append(full)
            base = np.hstack([base, basis[:, k:k + 1]]) if base.size else basis[:, k:k + 1]
    mat = np.array(vecs, dtype=np.int64).T if vecs else np.zeros((len(amb), 0), dtype=np.int64)
    return degs, mat


def _restrict(A: ScalarMap, a: Deg) -> tuple[np.ndarray, list[int], list[int]]:
    ri, ci = _idx(A.rows, a), _idx(A.cols, a)
    return A.mat[np.ix_(ri, ci)], ri, ci


def _kernel_piece(A: ScalarMap, a: Deg, p: int):
    M, ri, ci = _restrict(A, a)
    if not ci:
        return ci, np.zeros((0, 0), dtype=np.int64)
    if not ri:
        return ci, np.eye(len(ci), dtype=np.int64)
    return ci, linalg.nullspace(M, p)


def _image_piece(A: ScalarMap, a: Deg, p: int):
    """Columns spanning im(A)_a, over the row indices of degree <= a."""
    M, ri, ci = _restrict(A, a)
    return ri, M % p


def _solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if A.shape[1] == 0:
        if (b % p).any():
            raise AssertionError("oracle: unsolvable lift")
        return np.zeros(0, dtype=np.int64)
    x = linalg.solve(A, b, p)
    if x is None:
        raise AssertionError("oracle: unsolvable lift")
    return x


@dataclass
class _Resolution:
    """Generators and scalar differentials of a multigraded resolution of E."""

    gens: list[list[Deg]]  # gens[k]: degrees of Q_k
    diffs: list[ScalarMap]  # diffs[k-1]: Q_k -> Q_{k-1}
    reps: np.ndarray  # columns: E-generators as cycles in the Ext ambient

    def d(self, k: int) -> ScalarMap:
        if 1 <= k <= len(self.diffs):
            return self.diffs[k - 1]
        rows = self.gens[k - 1] if 0 <= k - 1 < len(self.gens) else []
        cols = self.gens[k] if 0 <= k < len(self.gens) else []
        return ScalarMap(np.zeros((len(rows), len(cols)), dtype=np.int64), rows, cols)


def _ext_pieces(T_up: ScalarMap, T_down: ScalarMap, ambient: list[Deg], p: int):
    """Cycle and boundary pieces of ker(T_up) / im(T_down) inside ``ambient``."""

    def cycles(a):
        idx = _idx(ambient, a)
        M, ri, ci = _restrict(T_up, a)
        assert ci == idx
        if not idx:
            return idx, np.zeros((0, 0), dtype=np.int64)
        if not ri:
            return idx, np.eye(len(idx), dtype=np.int64)
        return idx, linalg.nullspace(M, p)

    def boundaries(a):
        M, ri, ci = _restrict(T_down, a)
        return M % p

    return cycles, boundaries


def _resolve_ext(T: TaylorComplex, t: int, nvars: int, p: int, H: int, length: int) -> _Resolution:
    amb = [tuple(-x for x in d) for d in T.module(t)]
    up = T.d(t + 1, nvars).transpose()  # T_t^∨ -> T_{t+1}^∨
    down = T.d(t, nvars).transpose()  # T_{t-1}^∨ -> T_t^∨
    cycles, boundaries = _ext_pieces(up, down, amb, p)
    if not amb:
        return _Resolution([[]] * (length + 1), [], np.zeros((0, 0), dtype=np.int64))
    lo = tuple(min(d[k] for d in amb) for k in range(nvars))
    window = _grid([amb, down.cols], lo, H)
    degs0, reps = _find_generators(_Subspaces(amb, cycles, p), window, boundaries)
    gens = [degs0]
    diffs: list[ScalarMap] = []

    # K_0 = {c in Q_0 : reps c is a boundary}
    def k0_piece(a):
        ci = _idx(degs0, a)
        G = reps[np.ix_(_idx(amb, a), ci)]
        B = boundaries(a)
        if not ci:
            return ci, np.zeros((0, 0), dtype=np.int64)
        N = linalg.nullspace(np.hstack([G, B]) if B.size else G, p)
        return ci, N[: len(ci)]

    piece = k0_piece
    ambient = degs0
    for k in range(1, length + 1):
        degs, mat = _find_generators(_Subspaces(ambient, piece, p), window)
        dk = ScalarMap(mat, ambient, degs)
        diffs.append(dk)
        gens.append(degs)
        piece = (lambda A: (lambda a: _kernel_piece(A, a, p)))(dk)
        ambient = degs
    return _Resolution(gens, diffs, reps)


def _quotient_basis(Z: np.ndarray, B: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis columns of span(Z) modulo span(B), and a basis of span(B)."""
    Bb = _col_space(B, p) if B.size else np.zeros((Z.shape[0], 0), dtype=np.int64)
    Zb = _col_space(Z, p) if Z.size else np.zeros((Z.shape[0], 0), dtype=np.int64)
    chosen = _extend_basis(Bb, Zb, p)
    return Zb[:, chosen], Bb


def _coords(Q: np.ndarray, B: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of v on the columns of Q modulo span(B)."""
    A = np.hstack([Q, B]) if B.size else Q
    if A.shape[1] == 0:
        assert not (v % p).any()
        return np.zeros(0, dtype=np.int64)
    x = linalg.solve(A, v, p)
    assert x is not None, "oracle: image is not a cycle"
    return x[: Q.shape[1]]


def _zero_slices(lower: Deg) -> list[Deg]:
    """Multidegrees a >= lower with |a| = 0."""
    return [a for a in _window(lower, 0) if sum(a) == 0]


def _cell_data(res: _Resolution, res_p_diffs, theta: list[np.ndarray], u: int, nvars: int, p: int):
    """(dim M_0, f_0 matrix) for M = Ext^u(E, R)."""
    gens_u = res.gens[u] if u < len(res.gens) else []
    amb = [tuple(-x for x in d) for d in gens_u]
    if not amb:
        return 0, np.zeros((0, 0), dtype=np.int64)
    up = res.d(u + 1).transpose()
    down = res.d(u).transpose()
    lower = tuple(min(d[k] for d in amb) for k in range(nvars))
    pieces = {}
    order = []
    for a in _zero_slices(lower):
        idx = _idx(amb, a)
        if not idx:
            continue
        M, ri, ci = _restrict(up, a)
        Z = np.eye(len(idx), dtype=np.int64) if not ri else linalg.nullspace(M, p)
        Bm, _, _ = _restrict(down, a)
        Qb, Bb = _quotient_basis(Z, Bm % p, p)
        if Qb.shape[1]:
            pieces[a] = (idx, Qb, Bb)
            order.append(a)
    offsets = {}
    total = 0
    for a in order:
        offsets[a] = total
        total += pieces[a][1].shape[1]
    F = np.zeros((total, total), dtype=np.int64)
    back = theta[u].T % p  # (Q_u^[p])^∨ -> Q_u^∨, same scalars
    for a in order:
        idx, Qb, _ = pieces[a]
        pa = tuple(p * x for x in a)
        for k in range(Qb.shape[1]):
            v = np.zeros(len(amb), dtype=np.int64)
            v[idx] = Qb[:, k]
            w = (back @ v) % p  # lives in multidegree p*a
            col = offsets[a] + k
            if pa in pieces:
                tidx, tQ, tB = pieces[pa]
                assert not np.delete(w, tidx).any()
                F[offsets[pa]:offsets[pa] + tQ.shape[1], col] = _coords(tQ, tB, w[tidx], p)
            else:
                # M_{pa} = 0: w must be a boundary (or lie outside the support)
                tidx = _idx(amb, pa)
                if w.any():
                    Bm, _, _ = _restrict(down, pa)
                    _coords(np.zeros((len(tidx), 0), dtype=np.int64), Bm % p, w[tidx], p)
    return total, F


def _stable_rank(F: np.ndarray, p: int) -> int:
    r = F.shape[0]
    if r == 0:
        return 0
    return linalg.rank(linalg.matpow(F, r, p), p)


def monomial_krull_dimension(gens: list[Monomial], nvars: int) -> int:
    """Largest set of variables containing the support of no generator."""
    supports = [frozenset(k for k, e in enumerate(g) if e) for g in gens]
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            s = set(S)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def _outer_results(T: TaylorComplex, j: int, nvars: int, p: int, H: int):
    """For one j: per-i (dim M_0, f_0 matrix), computed with window H."""
    n = nvars - 1
    t = n + 1 - j
    length = n + 2
    res = _resolve_ext(T, t, nvars, p, H, length)
    if not res.gens[0]:
        return None
    # psi_0: E -> F(E) = Ext^t(R/I^[p], R); on the Taylor ambient it is the identity scalar map
    amb = [tuple(-x for x in d) for d in T.module(t)]
    amb_p = [tuple(p * x for x in d) for d in amb]
    down = T.d(t, nvars).transpose()
    down_p = ScalarMap(down.mat, [tuple(p * x for x in d) for d in down.rows], [tuple(p * x for x in d) for d in down.cols])
    degs0 = res.gens[0]
    degs0_p = [tuple(p * x for x in d) for d in degs0]
    psi0 = np.zeros((len(degs0), len(degs0)), dtype=np.int64)
    for c, a in enumerate(degs0):
        idx = _idx(amb_p, a)
        w = res.reps[idx, c]
        gi = _idx(degs0_p, a)
        G = res.reps[np.ix_(idx, gi)]
        Bm, _, _ = _restrict(down_p, a)
        A = np.hstack([G, Bm % p]) if Bm.size else G
        assert not np.delete(res.reps[:, c], idx).any()
        x = _solve(A, w, p)
        psi0[gi, c] = x[: len(gi)]
    # theta_k: Q_k -> Q_k^[p] with d^[p]_k theta_k = theta_{k-1} d_k
    theta = [psi0]
    for k in range(1, length + 1):
        dk = res.d(k)
        src = res.gens[k]
        tgt_p = [tuple(p * x for x in d) for d in src]
        th = np.zeros((len(src), len(src)), dtype=np.int64)
        rhs_all = (theta[-1] @ dk.mat) % p  # Q_k -> Q_{k-1}^[p]
        prev_p = [tuple(p * x for x in d) for d in res.gens[k - 1]]
        for c, a in enumerate(src):
            ri = _idx(prev_p, a)
            ci = _idx(tgt_p, a)
            assert not np.delete(rhs_all[:, c], ri).any()
            x = _solve(dk.mat[np.ix_(ri, ci)], rhs_all[ri, c], p)
            th[ci, c] = x
        theta.append(th)
    out = {}
    for i in range(0, n + 2):
        u = n + 1 - i
        out[i] = _cell_data(res, None, theta, u, nvars, p)
    return out


def oracle_lyubeznik_monomial(cone, window: int | None = None):
    """Lyubeznik table of a monomial ideal via Taylor complexes and linear algebra."""
    from .cone import LyubeznikTable

    I: Ideal = cone.ideal
    if not I.is_monomial():
        raise NonMonomialInput("oracle only handles monomial ideals")
    ctx = I.ctx
    nvars, p = ctx.nvars, ctx.p
    gens = [g.terms[0][0] for g in I.generators]
    dim = monomial_krull_dimension(gens, nvars)
    if dim == 0:
        raise EmptyScheme("Proj(R/I) is empty")
    d = dim - 1
    T = taylor_resolution(gens, nvars, p)
    H0 = window if window is not None else 3 * nvars
    table = [[0] * (d + 2) for _ in range(d + 2)]
    for j in range(d + 2):
        H = H0
        prev = _UNSET = object()
        for _ in range(MAX_DOUBLINGS + 1):
            res = _outer_results(T, j, nvars, p, H)
            summary = None if res is None else tuple(
                (res[i][0], _stable_rank(res[i][1], p)) for i in range(d + 2)
            )
            if prev is not _UNSET and summary == prev:
                break
            prev = summary
            H *= 2
        else:
            raise OracleInconclusive(f"window did not stabilize for j={j} up to |a| <= {H // 2}")
        if summary is not None:
            for i in range(d + 2):
                table[i][j] = summary[i][1]
    return LyubeznikTable(tuple(tuple(r) for r in table))
