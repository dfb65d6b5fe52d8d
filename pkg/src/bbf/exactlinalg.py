"""Exact linear algebra over the integers and rationals.

All routines are free of floating point: Fraction (or plain int) in,
Fraction/int out.  Matrices are lists/tuples of row sequences; nothing
here mutates its arguments unless explicitly stated.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = int | Fraction
IntVec = tuple[int, ...]
RatVec = tuple[Rational, ...]


def vec_int(v: Iterable[int]) -> IntVec:
    return tuple(int(x) for x in v)


def vec_rat(v: Iterable[Rational]) -> RatVec:
    out = []
    for x in v:
        f = Fraction(x)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


def dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    assert len(u) == len(v), "dimension mismatch in dot product"
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Sequence[Sequence[Rational]], v: Sequence[Rational]) -> list[Rational]:
    return [dot(row, v) for row in m]


def mat_mul(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]) -> list[list[Rational]]:
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def gram_restrict(basis: Sequence[Sequence[Rational]], gram: Sequence[Sequence[Rational]]) -> list[list[Rational]]:
    """basis . gram . basis^T for a set of row vectors."""
    gb = [mat_vec(gram, row) for row in basis]
    return [[dot(row, g) for g in gb] for row in basis]


def is_symmetric(m: Sequence[Sequence[Rational]]) -> bool:
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_part(v: Sequence[int]) -> IntVec:
    """Divide out the gcd of the coordinates (zero vector unchanged)."""
    g = content(v)
    if g <= 1:
        return vec_int(v)
    return tuple(x // g for x in v)


def sign_normalize(v: Sequence[int]) -> IntVec:
    """Flip sign so the first nonzero coordinate is positive."""
    for x in v:
        if x > 0:
            return vec_int(v)
        if x < 0:
            return tuple(-y for y in v)
    return vec_int(v)


def clear_denominators(v: Sequence[Rational]) -> IntVec:
    """Scale a rational vector by a positive integer to a primitive integer vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    return primitive_part(w)


# ---------------------------------------------------------------------------
# determinants, inertia, row reduction
# ---------------------------------------------------------------------------

def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    assert all(len(row) == n for row in a), "determinant needs a square matrix"
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_rational(m: Sequence[Sequence[Rational]]) -> Fraction:
    """Determinant of a rational matrix, via row scaling + Bareiss."""
    n = len(m)
    scale = Fraction(1)
    rows = []
    for row in m:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        scale /= den
        rows.append([int(Fraction(x) * den) for x in row])
    return scale * det_bareiss(rows) if n else Fraction(1)


def inertia(m: Sequence[Sequence[Rational]]) -> tuple[int, int, int]:
    """Counts (positive, negative, zero) of eigenvalue signs of a symmetric
    matrix, by exact congruence diagonalization (Lagrange reduction).

    Never touches floating point, so it is safe arbitrarily close to
    degeneracy.
    """
    assert is_symmetric(m), "inertia needs a symmetric matrix"
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    live = list(range(n))
    pos = neg = zero = 0
    while live:
        pivot_idx = next((i for i in live if a[i][i] != 0), None)
        if pivot_idx is None:
            # all diagonal entries vanish; hunt for an off-diagonal entry
            hyp = None
            for ii, i in enumerate(live):
                for j in live[ii + 1:]:
                    if a[i][j] != 0:
                        hyp = (i, j)
                        break
                if hyp:
                    break
            if hyp is None:
                zero += len(live)
                break
            i, j = hyp
            # congruence e_i -> e_i + e_j turns the 2x2 hyperbolic block
            # into one with a nonzero diagonal entry
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot_idx = i
        p = pivot_idx
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        live.remove(p)
        for i in live:
            if a[i][p] == 0:
                continue
            f = a[i][p] / d
            for j in live:
                a[i][j] -= f * a[p][j]
            a[i][p] = 0
        for j in live:
            a[p][j] = 0
    return pos, neg, zero


def diagonalize_symmetric(m: Sequence[Sequence[Rational]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Congruence diagonalization of a symmetric matrix: returns (T, diag)
    with T . m . T^T equal to the diagonal matrix with entries diag.

    Rows of T express the diagonalizing basis in the original coordinates.
    """
    assert is_symmetric(m), "diagonalization needs a symmetric matrix"
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    t = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    live = list(range(n))
    order: list[int] = []
    while live:
        pivot_idx = next((i for i in live if a[i][i] != 0), None)
        if pivot_idx is None:
            hyp = None
            for ii, i in enumerate(live):
                for j in live[ii + 1:]:
                    if a[i][j] != 0:
                        hyp = (i, j)
                        break
                if hyp:
                    break
            if hyp is None:
                order.extend(live)
                break
            i, j = hyp
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            t[i] = [x + y for x, y in zip(t[i], t[j])]
            pivot_idx = i
        p = pivot_idx
        d = a[p][p]
        live.remove(p)
        order.append(p)
        for i in live:
            if a[i][p] == 0:
                continue
            f = a[i][p] / d
            for j in range(n):
                a[i][j] -= f * a[p][j]
            for j in range(n):
                a[j][i] -= f * a[j][p]
            t[i] = [x - f * y for x, y in zip(t[i], t[p])]
    perm_t = [t[p] for p in order]
    diag = [a[p][p] for p in order]
    return perm_t, diag


def rref(m: Sequence[Sequence[Rational]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals, with pivot columns."""
    rows = [[Fraction(x) for x in row] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r] + [[Fraction(0)] * ncols for _ in range(nrows - r)], pivots


def rank(m: Sequence[Sequence[Rational]]) -> int:
    return len(rref(m)[1])


def row_space_equal(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]) -> bool:
    ra, pa = rref(a)
    rb, pb = rref(b)
    return pa == pb and ra[:len(pa)] == rb[:len(pb)]


def solve_in_row_space(basis: Sequence[Sequence[Rational]], target: Sequence[Rational]) -> list[Fraction] | None:
    """Coefficients c with c . basis == target, or None if target is outside."""
    ncols = len(target)
    aug = [[Fraction(x) for x in row] + [Fraction(0)] * len(basis) for row in basis]
    for i in range(len(basis)):
        aug[i][ncols + i] = Fraction(1)
    red, pivots = rref(aug)
    coeffs = [Fraction(0)] * len(basis)
    resid = [Fraction(x) for x in target]
    for i, p in enumerate(pivots):
        if p >= ncols:
            continue
        if resid[p] != 0:
            f = resid[p] / red[i][p]
            resid = [x - f * y for x, y in zip(resid, red[i][:ncols])]
            for j in range(len(basis)):
                coeffs[j] += f * red[i][ncols + j]
    if any(x != 0 for x in resid):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# Hermite normal form and integer kernels
# ---------------------------------------------------------------------------

def hnf(m: Sequence[Sequence[int]]) -> list[IntVec]:
    """Row-style Hermite normal form: pivots positive, entries above each
    pivot reduced into [0, pivot).  Zero rows are dropped."""
    h, _ = hnf_with_transform(m)
    return h


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b == g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_with_transform(m: Sequence[Sequence[int]]) -> tuple[list[IntVec], list[IntVec]]:
    """(H, U) with U unimodular, U . m == H (H in row HNF, zero rows last,
    then dropped from H but kept in U)."""
    rows = [list(map(int, row)) for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, nrows):
            if rows[i][c] == 0:
                continue
            a, b = rows[r][c], rows[i][c]
            g, s, t = xgcd(a, b)
            aa, bb = a // g, b // g
            # unimodular 2x2: [[s, t], [-bb, aa]] has determinant 1
            new_r = [s * x + t * y for x, y in zip(rows[r], rows[i])]
            new_i = [-bb * x + aa * y for x, y in zip(rows[r], rows[i])]
            rows[r], rows[i] = new_r, new_i
            new_ur = [s * x + t * y for x, y in zip(u[r], u[i])]
            new_ui = [-bb * x + aa * y for x, y in zip(u[r], u[i])]
            u[r], u[i] = new_ur, new_ui
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
            u[r] = [-x for x in u[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == nrows:
            break
    h = [vec_int(row) for row in rows[:r]]
    return h, [vec_int(row) for row in u]


def kernel_int(m: Sequence[Sequence[int]], ncols: int | None = None, canonical: bool = True) -> list[IntVec]:
    """Basis of the saturated integer kernel {z : m . z == 0} of an integer
    constraint matrix (each row of m is one linear condition).

    The result spans exactly the integer points of the rational kernel, so
    it is automatically a primitive (saturated) sublattice.  With
    canonical=True the basis is returned in row Hermite normal form.
    """
    if ncols is None:
        assert m, "kernel_int needs at least one row or an explicit ncols"
        ncols = len(m[0])
    if not m:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    # Column-reduce m by a unimodular transform tracked in u: the rows of u
    # that map m's rows to zero span the kernel.
    cols = [[int(row[j]) for row in m] for j in range(ncols)]
    nleft = len(m)
    u = [[1 if k == j else 0 for k in range(ncols)] for j in range(ncols)]
    r = 0
    for c in range(nleft):
        pivot = next((i for i in range(r, ncols) if cols[i][c] != 0), None)
        if pivot is None:
            continue
        cols[r], cols[pivot] = cols[pivot], cols[r]
        u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, ncols):
            if cols[i][c] == 0:
                continue
            a, b = cols[r][c], cols[i][c]
            g, s, t = xgcd(a, b)
            aa, bb = a // g, b // g
            cols[r], cols[i] = (
                [s * p + t * q for p, q in zip(cols[r], cols[i])],
                [-bb * p + aa * q for p, q in zip(cols[r], cols[i])],
            )
            u[r], u[i] = (
                [s * p + t * q for p, q in zip(u[r], u[i])],
                [-bb * p + aa * q for p, q in zip(u[r], u[i])],
            )
        r += 1
        if r == ncols:
            break
    kernel = [vec_int(u[i]) for i in range(r, ncols)]
    if canonical:
        kernel = hnf(kernel)
    return kernel


def kernel_rational_constraints(constraints: Sequence[Sequence[Rational]], ncols: int) -> list[IntVec]:
    """Saturated integer kernel of rational linear conditions."""
    cleared = []
    for row in constraints:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        cleared.append([int(Fraction(x) * den) for x in row])
    return kernel_int(cleared, ncols)


# ---------------------------------------------------------------------------
# integral LLL on a Gram matrix (performance only: never part of any
# accept/reject decision, since enumeration results are basis independent)
# ---------------------------------------------------------------------------

def integral_gso(g: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """All-integer Gram-Schmidt data for a positive-definite integer Gram:
    (lam, d) with mu_ij = lam[i][j]/d[j+1], |b*_i|^2 = d[i+1]/d[i], d[0]=1."""
    n = len(g)
    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = g[i][j]
            for k in range(j):
                s = (d[k + 1] * s - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = s
            else:
                if s <= 0:
                    raise ValueError("gram matrix is not positive definite")
                d[i + 1] = s
    return lam, d


def lll_gram(gram: Sequence[Sequence[int]]) -> tuple[list[IntVec], list[list[int]]]:
    """LLL-reduce a positive-definite integer Gram matrix.

    Returns (U, G') with U unimodular and G' = U . gram . U^T reduced
    (delta = 3/4).  All-integer de Weger arithmetic; no floats, no
    Fractions.
    """
    n = len(gram)
    g = [[int(x) for x in row] for row in gram]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n <= 1:
        if n == 1 and g[0][0] <= 0:
            raise ValueError("gram matrix is not positive definite")
        return [vec_int(r) for r in u], g

    lam, d = integral_gso(g)

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            u[k] = [x - q * y for x, y in zip(u[k], u[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    k = 1
    while k < n:
        red(k, k - 1)
        if 4 * (d[k - 1] * d[k + 1] + lam[k][k - 1] ** 2) < 3 * d[k] ** 2:
            # swap b_k, b_{k-1} with the standard lambda/d bookkeeping
            u[k], u[k - 1] = u[k - 1], u[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            lam_kk = lam[k][k - 1]
            b_new = (d[k - 1] * d[k + 1] + lam_kk ** 2) // d[k]
            for i in range(k + 1, n):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_kk * t) // d[k]
                lam[i][k - 1] = (b_new * t + lam_kk * lam[i][k]) // d[k + 1]
            d[k] = b_new
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1

    reduced = mat_mul(mat_mul(u, g), list(zip(*u)))
    return [vec_int(r) for r in u], [[int(x) for x in row] for row in reduced]


# ---------------------------------------------------------------------------
# short vector enumeration (Fincke-Pohst with exact rational LDL)
# ---------------------------------------------------------------------------

def ldl(gram: Sequence[Sequence[Rational]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact LDL data for a positive-definite symmetric matrix:
    q(x) = sum_i d[i] * (x[i] + sum_{j>i} mu[i][j] x[j])^2."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            aij = a[i][j]
            for k in range(j, n):
                a[j][k] -= mu[i][k] * aij
    return d, mu


def short_vectors(
    gram: Sequence[Sequence[Rational]],
    bound: Rational,
    reduce: bool = True,
) -> list[tuple[IntVec, Rational]]:
    """All integer vectors z (including both signs) with
    0 < z . gram . z^T <= bound, for positive-definite gram.

    Output is sorted lexicographically.  LLL preprocessing is optional and
    only affects speed, never the result set.
    """
    n = len(gram)
    if n == 0 or Fraction(bound) <= 0:
        return []
    integral = all(isinstance(x, int) for row in gram for x in row)
    if integral:
        int_bound = int(Fraction(bound))  # integer vectors on an integer gram have integer norms
        if reduce:
            u, reduced = lll_gram(gram)  # type: ignore[arg-type]
            found = _enumerate_int(reduced, int_bound)
            out: list[tuple[IntVec, Rational]] = []
            for zred, norm in found:
                z = tuple(sum(zred[i] * u[i][j] for i in range(n)) for j in range(n))
                out.append((vec_int(z), norm))
        else:
            out = list(_enumerate_int([list(map(int, r)) for r in gram], int_bound))
    else:
        out = _enumerate_ldl(gram, Fraction(bound))
    out.sort(key=lambda pair: pair[0])
    return out


def _enumerate_int(gram: list[list[int]], bound: int) -> list[tuple[IntVec, int]]:
    """Fincke-Pohst over a positive-definite integer Gram with all-integer
    pruning arithmetic.  Remaining budgets are carried as unreduced integer
    fractions; every comparison is an exact integer cross-multiplication."""
    n = len(gram)
    lam, d = integral_gso(gram)
    results: list[tuple[IntVec, int]] = []
    x = [0] * n

    def descend(j: int, t_num: int, t_den: int) -> None:
        # level j uses |b*_j|^2 = d[j+1]/d[j] and center -C/d[j+1]
        c = 0
        for i in range(j + 1, n):
            if x[i]:
                c += lam[i][j] * x[i]
        dj, dj1 = d[j], d[j + 1]
        lim = t_num * dj * dj1
        new_den = t_den * dj * dj1
        for direction in (0, 1):
            xj = -c // dj1 + direction  # floor of the real center, then +1
            while True:
                s = dj1 * xj + c
                rem = lim - s * s * t_den
                if rem < 0:
                    break
                if j == 0:
                    x[0] = xj
                    if any(x):
                        # rem/new_den = bound - q(x), an exact integer
                        results.append((vec_int(x), bound - rem // new_den))
                else:
                    x[j] = xj
                    descend(j - 1, rem, new_den)
                xj = xj - 1 if direction == 0 else xj + 1
        x[j] = 0

    descend(n - 1, bound, 1)
    return results


def _enumerate_ldl(gram: Sequence[Sequence[Rational]], bound: Fraction) -> list[tuple[IntVec, Rational]]:
    n = len(gram)
    d, mu = ldl(gram)
    results: list[tuple[IntVec, Rational]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        # offset of the affine center at this level
        c = sum(mu[i][j] * x[j] for j in range(i + 1, n)) if i < n - 1 else Fraction(0)
        di = d[i]
        base = -c
        x0 = base.numerator // base.denominator  # floor
        xi = x0
        while di * (xi + c) ** 2 <= remaining:
            x[i] = xi
            used = di * (xi + c) ** 2
            if i == 0:
                norm = bound - (remaining - used)
                if norm > 0:
                    results.append((vec_int(x), norm if norm.denominator > 1 else int(norm)))
            else:
                descend(i - 1, remaining - used)
            xi -= 1
        xi = x0 + 1
        while di * (xi + c) ** 2 <= remaining:
            x[i] = xi
            used = di * (xi + c) ** 2
            if i == 0:
                norm = bound - (remaining - used)
                if norm > 0:
                    results.append((vec_int(x), norm if norm.denominator > 1 else int(norm)))
            else:
                descend(i - 1, remaining - used)
            xi += 1
        x[i] = 0

    descend(n - 1, bound)
    return results


def vectors_of_norms(
    gram: Sequence[Sequence[int]],
    norms: Iterable[int],
    reduce: bool = True,
) -> dict[int, list[IntVec]]:
    """Integer vectors of a positive-definite integer gram hitting each of
    the given exact positive norms."""
    targets = sorted(set(int(t) for t in norms))
    assert targets and targets[0] > 0, "norm targets must be positive here"
    table: dict[int, list[IntVec]] = {t: [] for t in targets}
    for z, norm in short_vectors(gram, targets[-1], reduce=reduce):
        if isinstance(norm, int) and norm in table:
            table[norm].append(z)
    return table
