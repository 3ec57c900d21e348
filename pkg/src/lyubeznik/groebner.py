"""Buchberger engine for submodules of twisted free modules over F_p[x].

Vectors are handled internally as nested dicts ``{position: {monomial:
coeff}}``.  Terms are compared position-over-term: a smaller position is
larger, and monomials within a position are compared by the monomial order
(grevlex unless stated otherwise).

The public surface works with :class:`~lyubeznik.matrices.GradedMatrix`
columns: :func:`buchberger`, :func:`normal_form`, :func:`syzygies` and
:func:`lift_columns`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import ContextMismatch, NotInImage
from .matrices import GradedMatrix
from .ring import Monomial, Polynomial, PolyRingCtx, grevlex_key

Vec = dict[int, dict[Monomial, int]]


class MonomialOrder:
    """A monomial order together with the grading used for pair selection."""

    def __init__(self, name: str, key: Callable[[Monomial], tuple], weights: Sequence[int] | None = None):
        self.name = name
        self.key = lru_cache(maxsize=1 << 16)(key)
        self.weights = tuple(weights) if weights is not None else None

    def degree(self, m: Monomial) -> int:
        if self.weights is None:
            return sum(m)
        return sum(w * e for w, e in zip(self.weights, m))

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name})"


GREVLEX = MonomialOrder("grevlex", grevlex_key)


def elimination_order(n_eliminate: int, weights: Sequence[int] | None = None) -> MonomialOrder:
    """Block order: the first ``n_eliminate`` variables beat the rest; grevlex in each block."""

    def key(m: Monomial) -> tuple:
        return grevlex_key(m[:n_eliminate]) + grevlex_key(m[n_eliminate:])

    return MonomialOrder(f"block({n_eliminate})", key, weights)


# -- vector helpers ---------------------------------------------------------


def _copy(v: Vec) -> Vec:
    return {pos: dict(poly) for pos, poly in v.items()}


def _addmul(v: Vec, g: Vec, t: Monomial, c: int, p: int) -> None:
    """v += c * x^t * g, in place."""
    for pos, poly in g.items():
        tgt = v.get(pos)
        if tgt is None:
            tgt = v[pos] = {}
        for m, a in poly.items():
            mm = tuple([x + y for x, y in zip(m, t)])
            s = (tgt.get(mm, 0) + a * c) % p
            if s:
                tgt[mm] = s
            elif mm in tgt:
                del tgt[mm]
        if not tgt:
            del v[pos]


def _scale(v: Vec, c: int, p: int) -> Vec:
    return {pos: {m: a * c % p for m, a in poly.items()} for pos, poly in v.items()}


def _lead(v: Vec, key) -> tuple[int, Monomial, int]:
    pos = min(v)
    poly = v[pos]
    m = max(poly, key=key)
    return pos, m, poly[m]


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _quot(b: Monomial, a: Monomial) -> Monomial:
    return tuple([y - x for x, y in zip(a, b)])


def vec_from_column(col: Sequence[Polynomial]) -> Vec:
    return {r: f.as_dict() for r, f in enumerate(col) if f}


def column_from_vec(ctx: PolyRingCtx, v: Vec, rank: int) -> tuple[Polynomial, ...]:
    return tuple(Polynomial._raw(ctx, dict(v[r])) if r in v else ctx.zero() for r in range(rank))


@dataclass(frozen=True)
class ModuleElement:
    """A homogeneous element of a twisted free module ⊕ R(-twists[c])."""

    components: tuple[Polynomial, ...]
    twists: tuple[int, ...]

    def __post_init__(self):
        if len(self.components) != len(self.twists):
            raise ValueError("one twist per component required")
        degs = {f.degree() + a for f, a in zip(self.components, self.twists) if f}
        if len(degs) > 1 or not all(f.is_homogeneous() for f in self.components):
            raise ValueError("module element is not homogeneous")

    @property
    def ctx(self) -> PolyRingCtx:
        return self.components[0].ctx

    def is_zero(self) -> bool:
        return not any(self.components)

    def degree(self) -> int | None:
        for f, a in zip(self.components, self.twists):
            if f:
                return f.degree() + a
        return None


# -- the engine -------------------------------------------------------------


class GroebnerBasis:
    """Gröbner basis of the submodule generated by some input vectors.

    ``elements[k]`` is monic and, when tracking is on, equals
    ``sum_c reps[k][c] * gens[c]``.  Elements are auto-reduced: no lead term
    divides another.
    """

    def __init__(self, ctx: PolyRingCtx, rank: int, twists: Sequence[int], order: MonomialOrder,
                 elements: list[Vec], reps: list[Vec] | None, ngens: int):
        self.ctx = ctx
        self.rank = rank
        self.twists = tuple(twists)
        self.order = order
        self.elements = elements
        self.reps = reps
        self.ngens = ngens
        self.leads = [_lead(g, order.key)[:2] for g in elements]
        self._by_pos: dict[int, list[tuple[int, Monomial]]] = {}
        for k, (pos, m) in enumerate(self.leads):
            self._by_pos.setdefault(pos, []).append((k, m))

    def __len__(self) -> int:
        return len(self.elements)

    def reduce(self, v: Vec, with_quotients: bool = False):
        """Full division of ``v``; returns the remainder (and quotients).

        Always divides by the earliest basis element whose lead term divides.
        """
        p = self.ctx.p
        key = self.order.key
        v = _copy(v)
        rem: Vec = {}
        quots: dict[int, dict[Monomial, int]] = {}
        by_pos = self._by_pos
        while v:
            pos, m, c = _lead(v, key)
            hit = None
            for k, lm in by_pos.get(pos, ()):
                if _divides(lm, m):
                    hit = k
                    break
            if hit is None:
                rem.setdefault(pos, {})[m] = c
                del v[pos][m]
                if not v[pos]:
                    del v[pos]
                continue
            t = _quot(m, self.leads[hit][1])
            _addmul(v, self.elements[hit], t, p - c, p)
            if with_quotients:
                q = quots.setdefault(hit, {})
                s = (q.get(t, 0) + c) % p
                if s:
                    q[t] = s
                else:
                    q.pop(t, None)
        if with_quotients:
            return rem, quots
        return rem

    def express(self, quots: dict[int, dict[Monomial, int]]) -> Vec:
        """Turn quotients on basis elements into a combination of the input generators."""
        if self.reps is None:
            raise ValueError("basis was computed without tracking")
        p = self.ctx.p
        out: Vec = {}
        for k, q in quots.items():
            for t, c in q.items():
                _addmul(out, self.reps[k], t, c, p)
        return out

    def lead_module(self) -> set[tuple[int, Monomial]]:
        return set(self.leads)

    def minimal_leads(self) -> frozenset[tuple[int, Monomial]]:
        return frozenset(self.leads)


def _pair_degree(order: MonomialOrder, twists, pos: int, m: Monomial) -> int:
    return order.degree(m) + twists[pos]


def _compute(ctx: PolyRingCtx, rank: int, twists: Sequence[int], gens: Sequence[Vec],
             order: MonomialOrder, track: bool) -> GroebnerBasis:
    p = ctx.p
    key = order.key
    ngens = len(gens)
    G: list[Vec] = []
    R: list[Vec] = []
    L: list[tuple[int, Monomial]] = []
    alive: list[bool] = []
    pairs: list[tuple[int, int, int, Monomial]] = []  # (i, j, pos, lcm)

    # items are processed by degree; input generators precede pairs of equal degree
    todo_gens = []
    for c, g in enumerate(gens):
        if g:
            pos, m, _ = _lead(g, key)
            todo_gens.append((_pair_degree(order, twists, pos, m), c))
    todo_gens.sort()

    def reduce_full(v: Vec, rep: Vec | None):
        rem: Vec = {}
        while v:
            pos, m, c = _lead(v, key)
            hit = None
            for k in range(len(G)):
                if L[k][0] == pos and _divides(L[k][1], m):
                    hit = k
                    break
            if hit is None:
                rem.setdefault(pos, {})[m] = c
                del v[pos][m]
                if not v[pos]:
                    del v[pos]
                continue
            t = _quot(m, L[hit][1])
            _addmul(v, G[hit], t, p - c, p)
            if rep is not None:
                _addmul(rep, R[hit], t, p - c, p)
        return rem

    def add(h: Vec, rep: Vec | None) -> None:
        pos, m, c = _lead(h, key)
        inv = pow(c, p - 2, p)
        h = _scale(h, inv, p)
        if rep is not None:
            rep = _scale(rep, inv, p)
        new = len(G)
        # Gebauer–Möller update
        cand = []
        for k in range(new):
            if alive[k] and L[k][0] == pos:
                cand.append((k, _lcm(L[k][1], m)))
        keep_old = []
        for (i, j, ppos, lc) in pairs:
            if (ppos == pos and _divides(m, lc) and _lcm(L[i][1], m) != lc
                    and _lcm(L[j][1], m) != lc):
                continue
            keep_old.append((i, j, ppos, lc))
        fresh = []
        for idx, (k, lc) in enumerate(cand):
            coprime = rank == 1 and all(a == 0 or b == 0 for a, b in zip(L[k][1], m))
            redundant = False
            for idx2, (k2, lc2) in enumerate(cand):
                if idx2 == idx:
                    continue
                if _divides(lc2, lc) and (lc2 != lc or idx2 < idx):
                    redundant = True
                    break
            if not redundant and not coprime:
                fresh.append((k, new, pos, lc))
        pairs[:] = keep_old + fresh
        for k in range(new):
            if alive[k] and L[k][0] == pos and _divides(m, L[k][1]):
                alive[k] = False
        G.append(h)
        R.append(rep if rep is not None else {})
        L.append((pos, m))
        alive.append(True)

    gi = 0
    while gi < len(todo_gens) or pairs:
        pair_deg = None
        if pairs:
            best = min(range(len(pairs)),
                       key=lambda t: (_pair_degree(order, twists, pairs[t][2], pairs[t][3]), t))
            pair_deg = _pair_degree(order, twists, pairs[best][2], pairs[best][3])
        if gi < len(todo_gens) and (pair_deg is None or todo_gens[gi][0] <= pair_deg):
            c = todo_gens[gi][1]
            gi += 1
            v = _copy(gens[c])
            rep = {c: {(0,) * ctx.nvars: 1}} if track else None
        else:
            i, j, pos, lc = pairs.pop(best)
            v: Vec = {}
            rep = {} if track else None
            ti, tj = _quot(lc, L[i][1]), _quot(lc, L[j][1])
            _addmul(v, G[i], ti, 1, p)
            _addmul(v, G[j], tj, p - 1, p)
            if track:
                _addmul(rep, R[i], ti, 1, p)
                _addmul(rep, R[j], tj, p - 1, p)
        h = reduce_full(v, rep)
        if h:
            add(h, rep)

    keep = [k for k in range(len(G)) if alive[k]]
    # drop later duplicates of a lead term divisible by an earlier survivor
    final = []
    for k in keep:
        if any(L[f][0] == L[k][0] and _divides(L[f][1], L[k][1]) for f in final):
            continue
        final.append(k)
    return GroebnerBasis(
        ctx, rank, twists, order,
        [G[k] for k in final],
        [R[k] for k in final] if track else None,
        ngens,
    )


def groebner_of_vectors(ctx: PolyRingCtx, rank: int, twists: Sequence[int], gens: Sequence[Vec],
                        order: MonomialOrder = GREVLEX, track: bool = False) -> GroebnerBasis:
    return _compute(ctx, rank, twists, gens, order, track)


def buchberger(gens, order: MonomialOrder = GREVLEX, track: bool = False) -> GroebnerBasis:
    """Gröbner basis of the submodule (or ideal) generated by ``gens``.

    ``gens`` is a GradedMatrix (its columns), a list of ModuleElements, or a
    list of Polynomials (rank one).
    """
    if isinstance(gens, GradedMatrix):
        vecs = [vec_from_column(col) for col in gens.columns()]
        return _compute(gens.ctx, gens.nrows, gens.row_twists, vecs, order, track)
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list has no ambient; pass a GradedMatrix")
    if isinstance(gens[0], Polynomial):
        ctx = gens[0].ctx
        if any(g.ctx != ctx for g in gens):
            raise ContextMismatch("generators live in different rings")
        return _compute(ctx, 1, (0,), [{0: g.as_dict()} if g else {} for g in gens], order, track)
    ctx = gens[0].ctx
    twists = gens[0].twists
    if any(g.twists != twists for g in gens):
        raise ContextMismatch("generators live in different free modules")
    vecs = [vec_from_column(g.components) for g in gens]
    return _compute(ctx, len(twists), twists, vecs, order, track)


def basis_polynomials(gb: GroebnerBasis) -> list[Polynomial]:
    """Rank-one basis elements as Polynomials."""
    return [Polynomial._raw(gb.ctx, dict(g.get(0, {}))) for g in gb.elements]


def basis_columns(gb: GroebnerBasis) -> list[tuple[Polynomial, ...]]:
    return [column_from_vec(gb.ctx, g, gb.rank) for g in gb.elements]


def normal_form(v, gb: GroebnerBasis):
    """Remainder of full division; zero iff ``v`` lies in the submodule."""
    if isinstance(v, Polynomial):
        rem = gb.reduce({0: v.as_dict()} if v else {})
        return Polynomial._raw(gb.ctx, dict(rem.get(0, {})))
    if isinstance(v, ModuleElement):
        rem = gb.reduce(vec_from_column(v.components))
        return ModuleElement(column_from_vec(gb.ctx, rem, gb.rank), v.twists)
    rem = gb.reduce(vec_from_column(v))
    return column_from_vec(gb.ctx, rem, gb.rank)


class ColumnModule:
    """The submodule spanned by the columns of a GradedMatrix, with lifting."""

    def __init__(self, A: GradedMatrix, order: MonomialOrder = GREVLEX):
        self.A = A
        self.gb = buchberger(A, order=order, track=True)

    def contains(self, col: Sequence[Polynomial]) -> bool:
        return not self.gb.reduce(vec_from_column(col))

    def lift_vector(self, col: Sequence[Polynomial]) -> Vec | None:
        rem, quots = self.gb.reduce(vec_from_column(col), with_quotients=True)
        if rem:
            return None
        return self.gb.express(quots)

    def lift(self, B: GradedMatrix) -> GradedMatrix:
        A = self.A
        if B.row_twists != A.row_twists:
            raise ValueError("lift target lives in a different free module")
        cols = []
        for c, col in enumerate(B.columns()):
            x = self.lift_vector(col)
            if x is None:
                raise NotInImage(f"column {c} is not in the column span")
            cols.append(column_from_vec(A.ctx, x, A.ncols))
        return GradedMatrix.from_columns(A.ctx, cols, A.col_twists, B.col_twists)


def lift_columns(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """Solve ``A @ X == B`` for a degree-preserving X (deterministic)."""
    return ColumnModule(A).lift(B)


def _schreyer_pairs(gb: GroebnerBasis) -> list[tuple[int, int]]:
    """S-pairs whose syzygies generate the lead module of Syz (Schreyer order)."""
    out = []
    leads = gb.leads
    s = len(leads)
    for k in range(s):
        pos_k, mk = leads[k]
        cands = []
        for l in range(k + 1, s):
            if leads[l][0] == pos_k:
                lc = _lcm(mk, leads[l][1])
                cands.append((l, _quot(lc, mk)))
        for idx, (l, u) in enumerate(cands):
            redundant = False
            for idx2, (l2, u2) in enumerate(cands):
                if idx2 != idx and _divides(u2, u) and (u2 != u or idx2 < idx):
                    redundant = True
                    break
            if not redundant:
                out.append((k, l))
    return out


def syzygies(A: GradedMatrix, gb: GroebnerBasis | None = None) -> GradedMatrix:
    """Generators of ker(A) by Schreyer's method, as a GradedMatrix.

    Output rows carry A's column twists; output columns are sorted by degree.
    """
    ctx, p = A.ctx, A.ctx.p
    if gb is None:
        gb = buchberger(A, track=True)
    one = (0,) * ctx.nvars
    found: list[tuple[int, Vec]] = []

    for k, l in _schreyer_pairs(gb):
        pos, mk = gb.leads[k]
        ml = gb.leads[l][1]
        lc = _lcm(mk, ml)
        tk, tl = _quot(lc, mk), _quot(lc, ml)
        v: Vec = {}
        _addmul(v, gb.elements[k], tk, 1, p)
        _addmul(v, gb.elements[l], tl, p - 1, p)
        rem, quots = gb.reduce(v, with_quotients=True)
        assert not rem, "basis is not a Gröbner basis"
        quots.setdefault(k, {})
        quots.setdefault(l, {})
        # sigma = tk e_k - tl e_l - sum q_m e_m, pushed through the representations
        sig = {m: {t: (p - c) % p for t, c in q.items()} for m, q in quots.items()}
        sig[k][tk] = (sig[k].get(tk, 0) + 1) % p
        sig[l][tl] = (sig[l].get(tl, 0) - 1) % p
        sig = {m: {t: c for t, c in q.items() if c} for m, q in sig.items()}
        w = gb.express({m: q for m, q in sig.items() if q})
        if w:
            found.append((_pair_degree(gb.order, gb.twists, pos, lc), w))

    for c, col in enumerate(A.columns()):
        vec = vec_from_column(col)
        if not vec:
            found.append((A.col_twists[c], {c: {one: 1}}))
            continue
        rem, quots = gb.reduce(vec, with_quotients=True)
        assert not rem
        w = gb.express(quots)
        _addmul(w, {c: {one: 1}}, one, p - 1, p)
        if w:
            found.append((A.col_twists[c], _scale(w, p - 1, p)))

    found.sort(key=lambda dw: dw[0])
    uniq: list[tuple[int, Vec]] = []
    seen = set()
    for d, w in found:
        sig = tuple(sorted((pos, tuple(sorted(poly.items()))) for pos, poly in w.items()))
        if sig in seen:
            continue
        seen.add(sig)
        uniq.append((d, w))
    cols = [column_from_vec(ctx, w, A.ncols) for _, w in uniq]
    return GradedMatrix.from_columns(ctx, cols, A.col_twists, [d for d, _ in uniq])


def ideal_groebner(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    gens = [g for g in gens if g]
    if not gens:
        return []
    return basis_polynomials(buchberger(gens, order=order))


def _divide_out(f: Polynomial, divisors: Sequence[Polynomial], key) -> Polynomial:
    """Remainder of f on division by ``divisors`` (every term, not just the lead)."""
    ctx = f.ctx
    p = ctx.p
    rest = dict(f.as_dict())
    rem: dict[Monomial, int] = {}
    leads = [(max(g.as_dict(), key=key), g) for g in divisors]
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for lm, g in leads:
            if _divides(lm, m):
                q = _quot(m, lm)
                factor = c * pow(g.coeff(lm), p - 2, p) % p
                for gm, gc in g:
                    mm = tuple(x + y for x, y in zip(gm, q))
                    s = (rest.get(mm, 0) - factor * gc) % p
                    if s:
                        rest[mm] = s
                    else:
                        rest.pop(mm, None)
                break
        else:
            rem[m] = c
            del rest[m]
    return Polynomial._raw(ctx, rem)


def reduced_groebner(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    """The reduced Gröbner basis: monic, minimal leads, tails fully reduced; sorted by lead, largest first."""
    key = order.key
    G = ideal_groebner(gens, order)
    lead = {id(g): max(g.as_dict(), key=key) for g in G}
    minimal = []
    for g in sorted(G, key=lambda g: key(lead[id(g)])):
        if not any(_divides(lead[id(h)], lead[id(g)]) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        r = _divide_out(g, minimal[:k] + minimal[k + 1:], key)
        lc = r.coeff(max(r.as_dict(), key=key))
        out.append(r.scale(pow(lc, g.ctx.p - 2, g.ctx.p)))
    out.sort(key=lambda g: key(max(g.as_dict(), key=key)), reverse=True)
    return out
