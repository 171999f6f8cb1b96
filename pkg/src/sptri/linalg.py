"""Row reduction over exact or floating scalars.

Everything here works on plain lists of coordinate vectors, which keeps it
usable for symmetric-matrix coordinates, Lie-algebra coordinates and linear
systems alike.  ``tol == 0`` means exact arithmetic; exact pivots are the
first nonzero entry, floating pivots the largest one.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import DEFAULT_TOL, is_zero


def auto_tol(tol, *collections):
    """Resolve ``tol=None``: 0 when every entry is exact, else the default."""
    if tol is not None:
        return tol
    for coll in collections:
        for x in _flatten(coll):
            if not isinstance(x, Fraction):
                return DEFAULT_TOL
    return 0


def _flatten(obj):
    if isinstance(obj, (list, tuple)):
        for item in obj:
            yield from _flatten(item)
    elif hasattr(obj, "entries"):
        yield from obj.entries()
    else:
        yield obj


def rref(vectors, tol=None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero reduced rows.
    """
    rows = [list(v) for v in vectors]
    tol = auto_tol(tol, rows)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        candidates = [i for i in range(r, len(rows)) if not is_zero(rows[i][c], tol)]
        if not candidates:
            continue
        if tol:
            p = max(candidates, key=lambda i: abs(rows[i][c]))
        else:
            p = candidates[0]
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c], 0):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    out = rows[:r]
    if tol:
        out = [[0 if abs(x) <= tol else x for x in row] for row in out]
    return out, pivots


def rank(vectors, tol=None) -> int:
    return len(rref(vectors, tol)[0])


def in_span(vector, basis, tol=None) -> bool:
    if not basis:
        return all(is_zero(x, auto_tol(tol, vector)) for x in vector)
    tol = auto_tol(tol, vector, basis)
    return rank(list(basis) + [list(vector)], tol) == rank(basis, tol)


def nullspace(rows, ncols, tol=None):
    """Basis of ``{x : rows @ x = 0}``."""
    red, pivots = rref(rows, tol) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(a_rows, b, tol=None):
    """A particular solution of ``A x = b`` (free variables set to 0), or ``None``."""
    tol = auto_tol(tol, a_rows, b)
    ncols = len(a_rows[0])
    aug = [list(r) + [bi] for r, bi in zip(a_rows, b)]
    red, pivots = rref(aug, tol)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    residual = max((abs(sum(ai * xi for ai, xi in zip(r, x)) - bi) for r, bi in zip(a_rows, b)),
                   default=0)
    if tol and residual > tol * max(1.0, max((abs(bi) for bi in b), default=1.0)):
        return None
    return x


def coordinates(vector, basis, tol=None):
    """Coordinates of ``vector`` in ``basis`` (columns), or ``None`` if outside the span."""
    if not basis:
        return [] if all(is_zero(x, auto_tol(tol, vector)) for x in vector) else None
    a_rows = [[basis[j][i] for j in range(len(basis))] for i in range(len(vector))]
    return solve(a_rows, list(vector), tol)
