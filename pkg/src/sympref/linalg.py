"""Small exact linear algebra helpers over cyclotomic scalars.

Matrices are tuples of row tuples of Cyclotomic.  Everything here is
deterministic: pivots are always chosen in index order, so bases produced
from the same input are bit-identical across runs.
"""

from __future__ import annotations

from .cyclo import Cyclotomic


def identity_matrix(size):
    return tuple(tuple(Cyclotomic.one() if i == j else Cyclotomic.zero()
                       for j in range(size)) for i in range(size))


def mat_mul(a, b):
    size_i = len(a)
    size_k = len(b)
    size_j = len(b[0])
    out = []
    for i in range(size_i):
        row = []
        for j in range(size_j):
            acc = Cyclotomic.zero()
            for k in range(size_k):
                x = a[i][k]
                if not x.is_zero():
                    y = b[k][j]
                    if not y.is_zero():
                        acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = Cyclotomic.zero()
        for x, y in zip(row, v):
            if not x.is_zero():
                y = Cyclotomic.lift(y)
                if not y.is_zero():
                    acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def transpose(a):
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def mat_inverse(a):
    size = len(a)
    work = [list(row) for row in a]
    inv = [list(row) for row in identity_matrix(size)]
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if not work[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col].inverse()
        work[col] = [x * scale for x in work[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(size):
            if r == col or work[r][col].is_zero():
                continue
            f = work[r][col]
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def column_space_basis(a):
    """Columns of the reduced column echelon form, as coordinate tuples."""
    size = len(a)
    cols = [[a[r][c] for r in range(size)] for c in range(len(a[0]))]
    basis = []
    pivot_rows = []
    for col in cols:
        col = list(col)
        for prow, b in zip(pivot_rows, basis):
            f = col[prow]
            if not f.is_zero():
                col = [x - f * y for x, y in zip(col, b)]
        prow = next((r for r, x in enumerate(col) if not x.is_zero()), None)
        if prow is None:
            continue
        scale = col[prow].inverse()
        col = [x * scale for x in col]
        for b in basis:
            f = b[prow]
            if not f.is_zero():
                for r in range(size):
                    b[r] = b[r] - f * col[r]
        basis.append(col)
        pivot_rows.append(prow)
    return [tuple(b) for b in basis]


def rank_of_rows(rows):
    """Rank of a sparse row list; each row is a dict col -> Cyclotomic."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        while row:
            c = min(row)
            if c in pivots:
                f = row.pop(c)
                for cc, vv in pivots[c].items():
                    if cc == c:
                        continue
                    s = row.get(cc, Cyclotomic.zero()) - f * vv
                    if s.is_zero():
                        row.pop(cc, None)
                    else:
                        row[cc] = s
            else:
                inv = row[c].inverse()
                pivots[c] = {cc: vv * inv for cc, vv in row.items()}
                rank += 1
                row = {}
    return rank


def determinant(a):
    size = len(a)
    work = [list(row) for row in a]
    det = Cyclotomic.one()
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if not work[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return Cyclotomic.zero()
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        inv = work[col][col].inverse()
        for r in range(col + 1, size):
            if work[r][col].is_zero():
                continue
            f = work[r][col] * inv
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


def pfaffian(a):
    """Pfaffian of an antisymmetric matrix of even size, by expansion."""
    size = len(a)
    if size == 0:
        return Cyclotomic.one()
    idx = list(range(size))

    def rec(active):
        if not active:
            return Cyclotomic.one()
        i = active[0]
        rest = active[1:]
        total = Cyclotomic.zero()
        for pos, j in enumerate(rest):
            v = a[i][j]
            if v.is_zero():
                continue
            sign = 1 if pos % 2 == 0 else -1
            sub = [x for x in rest if x != j]
            total = total + (v * sign) * rec(sub)
        return total

    return rec(idx)
