"""Exact integer matrix algebra: Smith/Hermite normal forms and congruence solving.

Matrices are tuples of tuples of Python ints (arbitrary precision, immutable,
hashable).  Everything here is pure and deterministic; no floating point
anywhere.  These routines are the computational substrate for all group and
morphism constructions in the rest of the package.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]


class DimensionError(ValueError):
    """Raised when matrix/vector shapes do not match."""


def freeze(rows: Iterable[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def dims(a: Matrix) -> tuple[int, int]:
    return len(a), len(a[0]) if a else 0


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = dims(a)
    rb, cb = dims(b)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if dims(a) != dims(b):
        raise DimensionError("shape mismatch in addition")
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    r, c = dims(a)
    if len(v) != c:
        raise DimensionError("vector length mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return b
    if not b:
        return a
    if len(a) != len(b):
        raise DimensionError("row count mismatch in hstack")
    return tuple(ra + rb for ra, rb in zip(a, b))


def det(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, m = dims(a)
    if n != m:
        raise DimensionError("determinant of non-square matrix")
    if n == 0:
        return 1
    w = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if w[k][k] == 0:
            for i in range(k + 1, n):
                if w[i][k] != 0:
                    w[k], w[i] = w[i], w[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) // prev
            w[i][k] = 0
        prev = w[k][k]
    return sign * w[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """u @ a @ v == s with u, v unimodular and s in Smith normal form.

    The diagonal of s is non-negative, each entry divides the next (every
    integer divides 0, so zero entries come last), and s is unique for a
    given input.  u_inv and v_inv are the exact integer inverses.
    """

    u: Matrix
    s: Matrix
    v: Matrix
    u_inv: Matrix
    v_inv: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        r, c = dims(self.s)
        return tuple(self.s[i][i] for i in range(min(r, c)))


def _divides(a: int, b: int) -> bool:
    # divisibility with the "everything divides 0" convention
    if a == 0:
        return b == 0
    return b % a == 0


def snf(a: Matrix) -> SnfDecomposition:
    """Smith normal form with full transform bookkeeping."""
    m, n = dims(a)
    s = [list(row) for row in a]
    u = [list(row) for row in identity(m)]
    ui = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]
    vi = [list(row) for row in identity(n)]

    def row_swap(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for r in ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i: int) -> None:
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]
        for r in ui:
            r[i] = -r[i]

    def row_axpy(i: int, j: int, q: int) -> None:
        # row_i += q * row_j
        s[i] = [x + q * y for x, y in zip(s[i], s[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for r in ui:
            r[j] -= q * r[i]

    def col_swap(i: int, j: int) -> None:
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vi[i], vi[j] = vi[j], vi[i]

    def col_axpy(j: int, k: int, q: int) -> None:
        # col_j += q * col_k
        for r in s:
            r[j] += q * r[k]
        for r in v:
            r[j] += q * r[k]
        vi[k] = [x - q * y for x, y in zip(vi[k], vi[j])]

    t = 0
    limit = min(m, n)
    while t < limit:
        # pick the entry of least nonzero magnitude as pivot
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        if s[t][t] < 0:
            row_neg(t)

        dirty = False
        for i in range(t + 1, m):
            if s[i][t] != 0:
                q = s[i][t] // s[t][t]
                if q:
                    row_axpy(i, t, -q)
                if s[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if s[t][j] != 0:
                q = s[t][j] // s[t][t]
                if q:
                    col_axpy(j, t, -q)
                if s[t][j] != 0:
                    dirty = True
        if dirty:
            continue

        # pivot must divide every remaining entry for the divisibility chain
        d = s[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if s[i][j] % d != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_axpy(t, bad, 1)
            continue
        t += 1

    return SnfDecomposition(freeze(u), freeze(s), freeze(v), freeze(ui), freeze(vi))


def _reduce_mod(x: int, modulus: int) -> int:
    return x % modulus if modulus else x


def _augment_with_moduli(a: Matrix, moduli: Sequence[int]) -> tuple[Matrix, int]:
    """Append one slack column per positive modulus; returns (matrix, n_vars)."""
    m, n = dims(a)
    if len(moduli) != m:
        raise DimensionError("one modulus required per row")
    extra = [i for i, md in enumerate(moduli) if md]
    rows = []
    for i in range(m):
        slack = tuple(moduli[i] if i == k else 0 for k in extra)
        rows.append(tuple(a[i]) + slack)
    if m == 0:
        return (), n
    return freeze(rows), n


def solve_congruences(
    a: Matrix, b: Sequence[int], moduli: Sequence[int], ncols: Optional[int] = None
) -> Optional[tuple[int, ...]]:
    """One solution x of A·x ≡ b (mod moduli, row-wise), or None if none exists.

    A modulus of 0 on a row means that equation holds exactly over the
    integers.  Completeness comes from exact lattice solving, not search.
    ncols disambiguates systems with zero rows.
    """
    m, n = dims(a)
    if ncols is not None:
        n = ncols
    if len(b) != m:
        raise DimensionError("right-hand side length mismatch")
    if m == 0:
        return (0,) * n
    aug, nvars = _augment_with_moduli(a, moduli)
    dec = snf(aug)
    c = mat_vec(dec.u, b)
    rows, cols = dims(dec.s)
    w = [0] * cols
    for i in range(rows):
        d = dec.s[i][i] if i < cols else 0
        if d:
            if c[i] % d != 0:
                return None
            w[i] = c[i] // d
        elif c[i] != 0:
            return None
    y = mat_vec(dec.v, w)
    return tuple(y[:nvars])


def solution_lattice(
    a: Matrix, moduli: Sequence[int], ncols: Optional[int] = None
) -> Matrix:
    """Columns generating every solution of the homogeneous system A·x ≡ 0.

    Returned as an n×k matrix (k generators); every integer combination of
    the columns is a solution and conversely.  ncols disambiguates systems
    with zero rows.
    """
    m, n = dims(a)
    if ncols is not None:
        n = ncols
    if m == 0:
        return identity(n)
    aug, nvars = _augment_with_moduli(a, moduli)
    dec = snf(aug)
    rows, cols = dims(dec.s)
    free = [j for j in range(cols) if j >= rows or dec.s[j][j] == 0]
    gens = [[dec.v[i][j] for j in free] for i in range(nvars)]
    return freeze(gens)


def hnf_rows(vectors: Iterable[Sequence[int]], width: int) -> Matrix:
    """Canonical row Hermite basis of the lattice spanned by the given rows.

    Unique per lattice: pivots positive, strictly increasing pivot columns,
    entries above each pivot reduced into [0, pivot).  Zero rows dropped.
    """
    basis: list[list[int]] = []  # kept sorted by pivot column
    pivcol: list[int] = []

    for vec0 in vectors:
        if len(vec0) != width:
            raise DimensionError("generator width mismatch")
        vec = list(vec0)
        j = 0
        while True:
            lead = next((c for c in range(j, width) if vec[c]), None)
            if lead is None:
                break
            j = lead
            pos = bisect.bisect_left(pivcol, j)
            if pos == len(pivcol) or pivcol[pos] != j:
                basis.insert(pos, vec)
                pivcol.insert(pos, j)
                break
            row = basis[pos]
            p = row[j]
            x = vec[j]
            if x % p == 0:
                q = x // p
                for c in range(j, width):
                    vec[c] -= q * row[c]
            else:
                g, s0, t0 = _xgcd(p, x)
                pg, xg = p // g, x // g
                for c in range(j, width):
                    rc, vc = row[c], vec[c]
                    row[c] = s0 * rc + t0 * vc
                    vec[c] = -xg * rc + pg * vc

    # normalization pass: positive pivots, then reduce entries above each
    # pivot left to right (reducing at column j only perturbs columns > j,
    # which later iterations clean up)
    for idx in range(len(basis)):
        if basis[idx][pivcol[idx]] < 0:
            basis[idx] = [-x for x in basis[idx]]
    for idx in range(len(basis)):
        j = pivcol[idx]
        p = basis[idx][j]
        for k in range(idx):
            x = basis[k][j]
            q = x // p
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[idx])]
    return freeze(basis)


class SeededHnf:
    """Canonical HNF accumulator over a fixed full-rank diagonal lattice.

    For positive moduli (d_1, ..., d_n), canonical(extra) equals
    hnf_rows(extra + diag-rows, n) but avoids the general bookkeeping: the
    basis always stays upper triangular with positive pivots on the diagonal.
    """

    __slots__ = ("n", "_template")

    def __init__(self, moduli: Sequence[int]):
        if any(d <= 0 for d in moduli):
            raise ValueError("SeededHnf needs positive moduli")
        self.n = len(moduli)
        self._template = [
            [moduli[i] if j == i else 0 for j in range(self.n)]
            for i in range(self.n)
        ]

    def canonical(self, extra: Iterable[Sequence[int]]) -> Matrix:
        n = self.n
        basis = [row[:] for row in self._template]
        for v0 in extra:
            v = list(v0)
            for j in range(n):
                x = v[j]
                if x == 0:
                    continue
                row = basis[j]
                p = row[j]
                if x % p == 0:
                    q = x // p
                    for c in range(j, n):
                        v[c] -= q * row[c]
                else:
                    g, s0, t0 = _xgcd(p, x)
                    pg, xg = p // g, x // g
                    for c in range(j, n):
                        rc, vc = row[c], v[c]
                        row[c] = s0 * rc + t0 * vc
                        v[c] = pg * vc - xg * rc
        for j in range(1, n):
            p = basis[j][j]
            rowj = basis[j]
            for k in range(j):
                q = basis[k][j] // p
                if q:
                    rowk = basis[k]
                    for c in range(j, n):
                        rowk[c] -= q * rowj[c]
        return tuple(tuple(r) for r in basis)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b), g >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    return _xgcd(a, b)


def reduce_against_rows(vec: Sequence[int], basis: Matrix) -> tuple[int, ...]:
    """Residue of vec modulo the lattice spanned by canonical HNF rows."""
    v = list(vec)
    for row in basis:
        j = next(c for c in range(len(row)) if row[c])
        if v[j]:
            q = v[j] // row[j]
            if q:
                for c in range(j, len(v)):
                    v[c] -= q * row[c]
    return tuple(v)


def row_lattice_contains(basis: Matrix, vec: Sequence[int]) -> bool:
    v = list(vec)
    for row in basis:
        j = next(c for c in range(len(row)) if row[c])
        if v[j]:
            if v[j] % row[j] != 0:
                return False
            q = v[j] // row[j]
            for c in range(j, len(v)):
                v[c] -= q * row[c]
    return not any(v)


def lattice_index(basis: Matrix, width: int) -> Optional[int]:
    """Index of the row lattice in Z^width; None when not full rank."""
    if len(basis) < width:
        return None
    result = 1
    for row in basis:
        j = next(c for c in range(len(row)) if row[c])
        result *= row[j]
    return abs(result)


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("prime_factors needs n >= 1")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_radical(n: int) -> int:
    """Product of the distinct primes dividing n (n >= 1)."""
    r = 1
    for p in prime_factors(n):
        r *= p
    return r


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in prime_factors(n).values())
