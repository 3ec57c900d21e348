"""Graded free resolutions by iterated Schreyer syzygies, and minimalization."""
from __future__ import annotations

from dataclasses import dataclass

from .groebner import syzygies
from .matrices import GradedMatrix


@dataclass(frozen=True)
class FreeResolution:
    """``differentials[t-1]`` is d_t : F_t -> F_{t-1}; coker d_1 is the resolved module."""

    differentials: tuple[GradedMatrix, ...]

    def __post_init__(self):
        ds = self.differentials
        if not ds:
            raise ValueError("a resolution needs at least d_1")
        for t in range(len(ds) - 1):
            if ds[t].col_twists != ds[t + 1].row_twists:
                raise ValueError(f"twists of d_{t + 1} and d_{t + 2} do not match")

    @property
    def ctx(self):
        return self.differentials[0].ctx

    @property
    def length(self) -> int:
        return len(self.differentials)

    @property
    def augmentation(self) -> GradedMatrix:
        return self.differentials[0]

    def d(self, t: int) -> GradedMatrix:
        """d_t for 1 <= t <= length; a zero map outside that range."""
        if 1 <= t <= self.length:
            return self.differentials[t - 1]
        if t == 0:
            return GradedMatrix.zeros(self.ctx, (), self.twists(0))
        return GradedMatrix.zeros(self.ctx, self.twists(t - 1), ())

    def twists(self, t: int) -> tuple[int, ...]:
        """Generator degrees of F_t."""
        if t == 0:
            return self.differentials[0].row_twists
        if 1 <= t <= self.length:
            return self.differentials[t - 1].col_twists
        return ()

    def ranks(self) -> list[int]:
        return [len(self.twists(t)) for t in range(self.length + 1)]

    def betti(self) -> list[dict[int, int]]:
        out = []
        for t in range(self.length + 1):
            counts: dict[int, int] = {}
            for a in self.twists(t):
                counts[a] = counts.get(a, 0) + 1
            out.append(dict(sorted(counts.items())))
        return out

    def is_complex(self) -> bool:
        ds = self.differentials
        return all((ds[t] @ ds[t + 1]).is_zero() for t in range(len(ds) - 1))

    def frobenius(self, e: int = 1) -> FreeResolution:
        return FreeResolution(tuple(d.frobenius(e) for d in self.differentials))

    def is_minimal(self) -> bool:
        return not any(_find_unit(d) for d in self.differentials)


def free_resolution(presentation, length: int) -> FreeResolution:
    """Resolve coker(presentation) through homological degree ``length``.

    ``presentation`` is a GradedMatrix or anything with a ``relations``
    attribute.  Once a kernel vanishes the remaining differentials are maps
    out of the zero module.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    d1 = getattr(presentation, "relations", presentation)
    ds = [d1]
    while len(ds) < length:
        last = ds[-1]
        if last.ncols == 0:
            ds.append(GradedMatrix.zeros(last.ctx, (), ()))
            continue
        ds.append(syzygies(last))
    res = FreeResolution(tuple(ds))
    assert res.is_complex(), "d_t d_{t+1} != 0"
    return res


def _find_unit(d: GradedMatrix):
    for c in range(d.ncols):
        for r in range(d.nrows):
            f = d.entries[r][c]
            if f and d.col_twists[c] == d.row_twists[r]:
                return r, c
    return None


def _cancel(ds: list[GradedMatrix], t: int, r: int, c: int) -> None:
    """Split off the unit at (r, c) of d_t (list index t - 1)."""
    D = ds[t - 1]
    ctx = D.ctx
    p = ctx.p
    u = D.entries[r][c].coeff((0,) * ctx.nvars)
    uinv = pow(u, p - 2, p)
    rows = [k for k in range(D.nrows) if k != r]
    cols = [k for k in range(D.ncols) if k != c]
    new = []
    for s in rows:
        vs = D.entries[s][c]
        row = []
        for k in cols:
            f = D.entries[s][k]
            a = D.entries[r][k]
            if vs and a:
                f = f - (vs * a).scale(uinv)
            row.append(f)
        new.append(row)
    ds[t - 1] = GradedMatrix(
        ctx, new, [D.row_twists[s] for s in rows], [D.col_twists[k] for k in cols], check=False
    )
    if t >= 2:
        ds[t - 2] = ds[t - 2].select_columns([k for k in range(ds[t - 2].ncols) if k != r])
    if t < len(ds):
        ds[t] = ds[t].select_rows([k for k in range(ds[t].nrows) if k != c])


def minimalize(res: FreeResolution, keep_generators: bool = True) -> FreeResolution:
    """Cancel unit entries until no differential has one.

    With ``keep_generators`` the generators of F_0 (hence the presentation of
    the resolved module) are left alone and units in d_1 are not touched.
    """
    ds = list(res.differentials)
    changed = True
    while changed:
        changed = False
        for t in range(1, len(ds) + 1):
            if t == 1 and keep_generators:
                continue
            hit = _find_unit(ds[t - 1])
            if hit:
                _cancel(ds, t, *hit)
                changed = True
                break
    out = FreeResolution(tuple(ds))
    assert out.is_complex()
    return out
