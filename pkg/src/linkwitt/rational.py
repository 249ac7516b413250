"""Exact arithmetic over the rationals.

Matrices, univariate polynomials, polynomial factorization and real root
isolation, all with `fractions.Fraction` entries.  No floating point is used
anywhere; every sign determination of a real algebraic number goes through
Sturm sequences and rational interval arithmetic.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def rat(x) -> Fraction:
    """Parse a rational from an int, Fraction or a 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as 'p/q', or 'p' when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class QMatrix:
    """Dense rational matrix, row-major.  Treated as immutable by convention."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        data = [[rat(x) for x in row] for row in data]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("shape mismatch")
        self.rows = rows
        self.cols = cols
        self.data = data

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix(rows, cols, [[Q0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(n, n, [[Q1 if i == j else Q0 for j in range(n)]
                              for i in range(n)])

    @staticmethod
    def from_rows(rows) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return QMatrix(len(rows), ncols, rows)

    @staticmethod
    def column(entries) -> "QMatrix":
        return QMatrix(len(entries), 1, [[x] for x in entries])

    @staticmethod
    def diag(blocks) -> "QMatrix":
        """Block-diagonal assembly."""
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = [[Q0] * c for _ in range(r)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[i0 + i][j0:j0 + b.cols] = list(b.data[i])
            i0 += b.rows
            j0 += b.cols
        return QMatrix(r, c, out)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def col(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def copy(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [list(r) for r in self.data])

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       [[self.data[i][j] for i in range(self.rows)]
                        for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(tuple(r) for r in self.data)))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return QMatrix(self.rows, self.cols,
                       [[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return QMatrix(self.rows, self.cols,
                       [[a - b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols,
                       [[-a for a in r] for r in self.data])

    def scale(self, c) -> "QMatrix":
        c = rat(c)
        return QMatrix(self.rows, self.cols,
                       [[c * a for a in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.transpose().data
        out = []
        for r in self.data:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Q0)
                        for c in ot])
        return QMatrix(self.rows, other.cols, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "QMatrix":
        if not self.is_square() or n < 0:
            raise ValueError("bad power")
        result = QMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def apply(self, vec: list) -> list:
        """Matrix times a plain list vector."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * x for a, x in zip(row, vec) if a and x), Q0)
                for row in self.data]

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows:
            raise ValueError("dimension mismatch")
        return QMatrix(self.rows, self.cols + other.cols,
                       [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def vstack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("dimension mismatch")
        return QMatrix(self.rows + other.rows, self.cols,
                       [list(r) for r in self.data + other.data])

    def submatrix(self, row_idx, col_idx) -> "QMatrix":
        return QMatrix(len(row_idx), len(col_idx),
                       [[self.data[i][j] for j in col_idx] for i in row_idx])

    def rref(self):
        """Reduced row echelon form.  Returns (R, pivot column list)."""
        m = [list(r) for r in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if m[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            if pv != 1:
                m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return QMatrix(self.rows, self.cols, m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        m = [list(r) for r in self.data]
        det = Q1
        for c in range(n):
            pr = None
            for i in range(c, n):
                if m[i][c]:
                    pr = i
                    break
            if pr is None:
                return Q0
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "QMatrix":
        res = solve_or_kernel(self)
        if res.inverse is None:
            raise ValueError("matrix is singular")
        return res.inverse

    def __repr__(self):
        body = "; ".join(" ".join(rat_str(x) for x in row)
                         for row in self.data)
        return f"QMatrix({self.rows}x{self.cols}: {body})"


class SolveResult:
    """Outcome of solve_or_kernel: rank, kernel basis, particular solution,
    inverse (square full-rank case only)."""

    def __init__(self, rank, kernel, particular, inverse):
        self.rank = rank
        self.kernel = kernel          # list of column vectors (plain lists)
        self.particular = particular  # list | None | "inconsistent"
        self.inverse = inverse        # QMatrix | None


def solve_or_kernel(M: QMatrix, b: QMatrix | None = None) -> SolveResult:
    """Gaussian elimination in one sweep: rank, null-space basis, a particular
    solution of M x = b (or "inconsistent"), and the inverse when M is square
    and regular."""
    n, m = M.rows, M.cols
    aug = M
    if b is not None:
        if b.rows != n:
            raise ValueError("dimension mismatch")
        aug = M.hstack(b)
    want_inverse = M.is_square()
    if want_inverse:
        aug = aug.hstack(QMatrix.identity(n))
    R, pivots = aug.rref()
    pivots_main = [c for c in pivots if c < m]
    rank = len(pivots_main)

    kernel = []
    pivset = set(pivots_main)
    free = [c for c in range(m) if c not in pivset]
    for fc in free:
        v = [Q0] * m
        v[fc] = Q1
        for r, pc in enumerate(pivots_main):
            v[pc] = -R.data[r][fc]
        kernel.append(v)

    particular = None
    if b is not None:
        bcol = m  # single-column rhs expected
        if b.cols != 1:
            raise ValueError("right-hand side must be a single column")
        consistent = all(R.data[r][bcol] == 0 for r in range(rank, n))
        if not consistent:
            particular = "inconsistent"
        else:
            v = [Q0] * m
            for r, pc in enumerate(pivots_main):
                v[pc] = R.data[r][bcol]
            particular = v

    inverse = None
    if want_inverse and rank == n == m:
        off = m + (1 if b is not None else 0)
        inverse = QMatrix(n, n, [row[off:off + n] for row in R.data])
    return SolveResult(rank, kernel, particular, inverse)


class RowSpace:
    """Incremental row space in echelon form; backbone of spinning and Krylov
    iterations."""

    def __init__(self, width: int):
        self.width = width
        self.rows = []      # echelon rows, leading entry 1
        self.pivots = []    # pivot column of each row

    def reduce(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert a vector; returns True if it enlarged the space."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        lead = v[p]
        if lead != 1:
            v = [x / lead for x in v]
        for row in self.rows:
            if row[p]:
                f = row[p]
                row[:] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        order = sorted(range(len(self.pivots)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def contains(self, vec) -> bool:
        return all(not x for x in self.reduce(vec))

    def dim(self) -> int:
        return len(self.rows)

    def basis_matrix(self) -> QMatrix:
        return QMatrix.from_rows(self.rows) if self.rows \
            else QMatrix.zeros(0, self.width)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class QPoly:
    """Univariate rational polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def zero() -> "QPoly":
        return QPoly([])

    @staticmethod
    def one() -> "QPoly":
        return QPoly([1])

    @staticmethod
    def x() -> "QPoly":
        return QPoly([0, 1])

    @staticmethod
    def constant(c) -> "QPoly":
        return QPoly([c])

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Q0

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        l = self.lc()
        return QPoly([c / l for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly([rat(other) * c for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return QPoly.zero()
        out = [Q0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "QPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        lead = d[-1]
        q = [Q0] * max(0, len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            if r[i]:
                f = r[i] / lead
                q[i - dd] = f
                for j, c in enumerate(d):
                    r[i - dd + j] -= f * c
        return QPoly(q), QPoly(r)

    def __mod__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[0]

    def gcd(self, other: "QPoly") -> "QPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x: Fraction) -> Fraction:
        acc = Q0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, M: QMatrix) -> QMatrix:
        acc = QMatrix.zeros(M.rows, M.cols)
        for c in reversed(self.coeffs):
            acc = acc * M
            if c:
                acc = acc + QMatrix.identity(M.rows).scale(c)
        return acc

    def compose(self, inner: "QPoly") -> "QPoly":
        acc = QPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + QPoly.constant(c)
        return acc

    def squarefree_part(self) -> "QPoly":
        if self.degree() <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self.monic()
        return (self // g).monic()

    def __repr__(self):
        if self.is_zero():
            return "QPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(rat_str(c))
            elif i == 1:
                terms.append(f"{rat_str(c)}*x")
            else:
                terms.append(f"{rat_str(c)}*x^{i}")
        return "QPoly(" + " + ".join(terms) + ")"


def minimal_polynomial(M: QMatrix) -> QPoly:
    """Monic minimal polynomial, by Krylov iteration from each basis vector
    and lcm of the per-vector annihilators."""
    if not M.is_square():
        raise ValueError("minimal polynomial of non-square matrix")
    n = M.rows
    if n == 0:
        return QPoly.one()
    result = QPoly.one()
    space = RowSpace(n)   # union of Krylov spaces handled so far
    for start in range(n):
        e = [Q1 if i == start else Q0 for i in range(n)]
        if space.contains(e):
            continue
        # Krylov chain from e until the first linear dependence
        chain = RowSpace(n)
        vec = e
        powers = [e]
        while chain.add(vec):
            vec = M.apply(vec)
            powers.append(vec)
        A = QMatrix.from_rows(powers[:-1]).transpose()
        res = solve_or_kernel(A, QMatrix.column(powers[-1]))
        sol = res.particular
        assert sol != "inconsistent" and sol is not None
        ann = QPoly([-c for c in sol] + [Q1])
        result = _poly_lcm(result, ann)
        for p in powers[:-1]:
            space.add(p)
        if space.dim() == n and result.degree() == n:
            break
    return result.monic()


def _poly_lcm(a: QPoly, b: QPoly) -> QPoly:
    if a.is_zero() or b.is_zero():
        return QPoly.zero()
    g = a.gcd(b)
    return ((a * b) // g).monic()


# ---------------------------------------------------------------------------
# factorization over Q (Zassenhaus)
# ---------------------------------------------------------------------------

_CZ_RNG = random.Random(0x5EEDED)


def _pm_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pm_trim(out)


def _pm_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            f = a[i] * inv % p
            q[i - db] = f
            for j, c in enumerate(b):
                a[i - db + j] = (a[i - db + j] - f * c) % p
    return _pm_trim(q), _pm_trim(a)


def _pm_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pm_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _pm_powmod(a, e, mod, p):
    result = [1]
    base = _pm_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _pm_divmod(_pm_mul(result, base, p), mod, p)[1]
        base = _pm_divmod(_pm_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _factor_mod_p(f, p):
    """Factor a squarefree monic polynomial mod p into monic irreducibles."""
    # distinct degree
    factors = []
    h = [0, 1]
    v = list(f)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _pm_powmod(h, p, v, p)
        g = _pm_gcd([(x - y) % p for x, y in
                     itertools.zip_longest(h, [0, 1], fillvalue=0)], v, p)
        if len(g) > 1:
            factors.extend(_equal_degree_split(g, d, p))
            v = _pm_divmod(v, g, p)[0]
            h = _pm_divmod(h, v, p)[1]
    if len(v) > 1:
        factors.append(v)
    return factors


def _equal_degree_split(g, d, p):
    """Cantor-Zassenhaus on a product g of irreducibles of degree d."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        r = [_CZ_RNG.randrange(p) for _ in range(n)] + [1]
        r = _pm_trim(r)
        t = _pm_powmod(r, (p ** d - 1) // 2, g, p)
        t = list(t)
        if t:
            t[0] = (t[0] - 1) % p
        t = _pm_trim(t)
        h = _pm_gcd(t, g, p)
        if 0 < len(h) - 1 < n:
            return (_equal_degree_split(h, d, p)
                    + _equal_degree_split(_pm_divmod(g, h, p)[0], d, p))


def _hensel_lift_factors(F, mods, p, target):
    """Lift a mod-p factorization of a monic integer polynomial F (F = prod
    mods mod p) to a factorization mod p**k >= target.  Linear lifting with
    precomputed CRT idempotents."""
    r = len(mods)
    if r == 1:
        return [list(F)]
    # Bezout data mod p: t_i * prod_{l != i} g_l == 1 (mod g_i, p)
    ts = []
    for i in range(r):
        u = [1]
        for l in range(r):
            if l != i:
                u = _pm_mul(u, mods[l], p)
        u = _pm_divmod(u, mods[i], p)[1]
        # invert u mod g_i via extended euclid in GF(p)[x]
        t = _pm_invmod(u, mods[i], p)
        ts.append(t)
    q = p
    gs = [list(g) for g in mods]
    while q < target:
        # error term e = (F - prod gs)/q mod p
        prod = [1]
        for g in gs:
            prod = _int_poly_mul(prod, g)
        e = [(a - b) for a, b in
             itertools.zip_longest(F, prod, fillvalue=0)]
        assert all(x % q == 0 for x in e)
        e = [(x // q) % p for x in e]
        e = _pm_trim(e)
        for i in range(r):
            delta = _pm_divmod(_pm_mul(e, ts[i], p), mods[i], p)[1]
            gi = gs[i]
            for j, c in enumerate(delta):
                if c:
                    if j < len(gi):
                        gi[j] += q * c
                    else:
                        raise AssertionError("degree escape in lifting")
        q *= p
    return gs


def _pm_invmod(a, m, p):
    """Inverse of a mod (m, p) in GF(p)[x]."""
    r0, r1 = list(m), _pm_divmod(a, m, p)[1]
    s0, s1 = [], [1]
    while r1:
        q, r = _pm_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pm_trim([(x - y) % p for x, y in
                               itertools.zip_longest(
                                   s0, _pm_mul(q, s1, p), fillvalue=0)])
    if len(r0) != 1:
        raise ValueError("element not invertible")
    inv = pow(r0[0], p - 2, p)
    return [x * inv % p for x in s0]


def _int_poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_divmod(a, b):
    """Exact division attempt in Z[x]; returns (q, r) with fractions cleared
    only when b is monic."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            if a[i] % b[-1] != 0:
                return None, a
            f = a[i] // b[-1]
            q[i - db] = f
            for j, c in enumerate(b):
                a[i - db + j] -= f * c
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _symmetric(x, q):
    x %= q
    return x - q if 2 * x > q else x


def _factor_squarefree_monic_int(F):
    """Factor a squarefree monic polynomial in Z[x] into monic irreducibles
    (Zassenhaus: factor mod p, Hensel lift past the Mignotte bound, subset
    recombination)."""
    n = len(F) - 1
    if n == 1:
        return [list(F)]
    # prime of good reduction
    p = 3
    while True:
        if F[-1] % p != 0:
            fp = [c % p for c in F]
            dfp = _pm_trim([i * c % p for i, c in enumerate(fp)][1:])
            if dfp and len(_pm_gcd(fp, dfp, p)) == 1:
                break
        p = _next_prime(p)
    modfactors = _factor_mod_p([c % p for c in F], p)
    if len(modfactors) == 1:
        return [list(F)]
    # Mignotte-style bound on coefficients of any monic factor
    height = max(abs(c) for c in F)
    bound = 2 ** n * int(math.isqrt(n + 1) + 1) * height
    target = 2 * bound + 1
    lifted = _hensel_lift_factors(F, modfactors, p, target)
    q = p
    while q < target:
        q *= p
    lifted = [[_symmetric(c, q) for c in g] for g in lifted]

    # recombination
    result = []
    remaining = list(range(len(lifted)))
    current = list(F)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in itertools.combinations(remaining, size):
            cand = [1]
            for i in subset:
                cand = _int_poly_mul(cand, lifted[i])
            cand = [_symmetric(c % q, q) for c in cand]
            while cand and cand[-1] == 0:
                cand.pop()
            if not cand or cand[-1] != 1:
                continue
            if any(abs(c) > bound for c in cand):
                continue
            quo, rem = _int_poly_divmod(current, cand)
            if quo is not None and not rem:
                result.append(cand)
                current = quo
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            size += 1
    if len(current) > 1:
        result.append(current)
    return result


def _next_prime(p):
    candidate = p + 2
    while True:
        if all(candidate % d for d in range(3, int(math.isqrt(candidate)) + 1, 2)):
            return candidate
        candidate += 2


def _squarefree_decomposition(p: QPoly):
    """Yun's algorithm (characteristic zero): monic p -> [(part, multiplicity)]."""
    parts = []
    d = p.derivative()
    g = p.gcd(d)
    if g.degree() == 0:
        return [(p.monic(), 1)]
    w = p // g
    y = d // g
    z = y - w.derivative()
    k = 1
    while not w.is_zero() and w.degree() > 0:
        f = w.gcd(z)
        if f.degree() > 0:
            parts.append((f.monic(), k))
        w2 = w // f
        y2 = z // f
        z = y2 - w2.derivative()
        w = w2
        k += 1
    return parts


def factor_rational_poly(p: QPoly):
    """Factor into monic irreducibles over Q.

    Returns (content, [(factor, multiplicity), ...]) with content a rational
    scalar such that content * prod(factor^mult) == p.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    content = p.lc()
    monic = p.monic()
    if monic.degree() == 0:
        return content, []
    out = []
    for part, mult in _squarefree_decomposition(monic):
        if part.degree() == 0:
            continue
        # clear denominators: primitive integer model of the monic part
        den = 1
        for c in part.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in part.coeffs]
        a = ints[-1]
        if a != 1:
            # monicize: G(x) = a^(n-1) * P(x/a) is monic with integer coeffs
            n = len(ints) - 1
            G = [ints[i] * a ** (n - 1 - i) for i in range(n)] + [1]
        else:
            G = ints
        for gi in _factor_squarefree_monic_int(G):
            if a != 1:
                # map back: factor of P is gi(a x) made monic
                d = len(gi) - 1
                coeffs = [Fraction(gi[i] * a ** i) for i in range(d + 1)]
                fact = QPoly(coeffs).monic()
            else:
                fact = QPoly([Fraction(c) for c in gi])
            out.append((fact, mult))
    out.sort(key=lambda fm: (fm[0].degree(), [str(c) for c in fm[0].coeffs]))
    return content, out


def is_irreducible(p: QPoly) -> bool:
    if p.degree() <= 0:
        return False
    _, factors = factor_rational_poly(p)
    return len(factors) == 1 and factors[0][1] == 1


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation
# ---------------------------------------------------------------------------

def sturm_chain(p: QPoly):
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree() > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return [q for q in chain if not q.is_zero()]


def _sign_variations(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q.eval(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: QPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(p.lc())
    return 1 + max((abs(c) for c in p.coeffs[:-1]), default=Q0) / lead


def count_real_roots(p: QPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]; p need not be squarefree."""
    sf = p.squarefree_part()
    chain = sturm_chain(sf)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def real_root_data(p: QPoly, interval=None):
    """Distinct real roots of p: (count, list of isolating open intervals).

    Each interval (a, b) has rational endpoints, contains exactly one root,
    and the intervals are pairwise disjoint.  The squarefree part is taken
    internally.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    sf = p.squarefree_part()
    if sf.degree() <= 0:
        return 0, []
    chain = sturm_chain(sf)
    if interval is None:
        B = root_bound(sf)
        lo, hi = -B, B
    else:
        lo, hi = rat(interval[0]), rat(interval[1])
        # nudge endpoints off roots
        lo = _nudge_off_root(sf, lo, down=True)
        hi = _nudge_off_root(sf, hi, down=False)

    def var(x):
        return _sign_variations(chain, x)

    intervals = []

    def isolate(a, b, va, vb):
        k = va - vb
        if k == 0:
            return
        if k == 1:
            intervals.append((a, b))
            return
        mid = (a + b) / 2
        while sf.eval(mid) == 0:
            mid = (a + mid) / 2
        vm = var(mid)
        isolate(a, mid, va, vm)
        isolate(mid, b, vm, vb)

    isolate(lo, hi, var(lo), var(hi))
    intervals.sort()
    return len(intervals), intervals


def _nudge_off_root(p: QPoly, x: Fraction, down: bool) -> Fraction:
    step = Fraction(1, 2)
    while p.eval(x) == 0:
        x = x - step if down else x + step
        step /= 2
    return x


def refine_isolating_interval(p: QPoly, interval, max_width: Fraction):
    """Bisect an isolating interval of a squarefree p until narrower than
    max_width.  Keeps the sign-change invariant p(a) p(b) < 0."""
    a, b = interval
    fa = p.eval(a)
    if fa == 0:
        raise ValueError("endpoint is a root")
    while b - a > max_width:
        m = (a + b) / 2
        fm = p.eval(m)
        if fm == 0:
            # shift m slightly; the root is interior and irrational-safe
            m = (a + m) / 2
            fm = p.eval(m)
        if (fa > 0) != (fm > 0):
            b = m
        else:
            a, fa = m, fm
    return a, b


def _interval_add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _interval_mul(x, y):
    vals = [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
    return (min(vals), max(vals))


def interval_eval(p: QPoly, interval):
    """Horner evaluation of p over a rational interval."""
    acc = (Q0, Q0)
    for c in reversed(p.coeffs):
        acc = _interval_add(_interval_mul(acc, interval), (c, c))
    return acc


def sign_at_root(g: QPoly, h: QPoly, interval) -> int:
    """Sign of g(r) where r is the unique root of squarefree h inside the
    isolating interval.  Requires g(r) != 0, guaranteed when h is irreducible
    and 0 < deg g < deg h, or g a nonzero constant."""
    if g.is_zero():
        raise ValueError("sign of zero requested")
    if g.degree() == 0:
        return 1 if g.coeffs[0] > 0 else -1
    a, b = interval
    if h.eval(a) == 0 or h.eval(b) == 0:
        raise ValueError("interval endpoints must not be roots")
    while True:
        lo, hi = interval_eval(g, (a, b))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        a, b = refine_isolating_interval(h, (a, b), (b - a) / 4)


# ---------------------------------------------------------------------------
# integers: factorization, squarefree parts, Hilbert symbols live on top
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")


def factor_int(n: int) -> dict:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n <= 0:
        raise ValueError("positive integer expected")
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    while d * d <= n and d < 100000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if _is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
            else:
                f = _pollard_rho(m)
                stack.extend([f, m // f])
    return out


def squarefree_part(x) -> int:
    """Squarefree integer representing the square class of a nonzero
    rational."""
    x = rat(x)
    if x == 0:
        raise ValueError("zero has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p, e in factor_int(n).items():
        if e % 2:
            out *= p
    return sign * out
