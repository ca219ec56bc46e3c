"""Exact linear algebra over arbitrary-precision rationals.

Dense matrices of gmpy2 rationals.  Sizes in this project stay small
(a few hundred columns), so density is affordable and keeps every
canonical-form computation deterministic: rref output is the unique
reduced row echelon form, kernel bases and particular solutions are
derived from it by fixed conventions (free variables zeroed).

A dict-based :class:`SparseReducer` is provided for the handful of large
but structured rank computations (thousands of columns, rows with few
nonzeros) that appear in the 12-variable family checks.
"""

from fractions import Fraction

from gmpy2 import mpq

from .errors import NoSolutionError

QQ = mpq  # the working rational type; exact, arbitrary precision

_ZERO = mpq(0)
_ONE = mpq(1)


def to_q(x):
    """Coerce int / Fraction / str / mpq to the working rational type."""
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Mat:
    """Dense matrix with exact rational entries, immutable by convention."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [[to_q(x) for x in row] for row in rows]
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols})"

    def transpose(self):
        return Mat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                   self.nrows)

    def mul_vec(self, v):
        v = [to_q(x) for x in v]
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        return [sum((row[j] * v[j] for j in range(self.ncols)), _ZERO) for row in self.rows]

    def stack(self, other):
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return Mat(self.rows + other.rows, self.ncols)


def _rref_rows(rows, ncols):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            rows[r] = prow = [x * inv for x in prow]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                rows[i] = [a - f * b for a, b in zip(ri, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m: Mat):
    """Reduced row echelon form of ``m`` plus its pivot columns.

    The result is the unique RREF of the row space, so the output does
    not depend on any internal elimination order.
    """
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return Mat(rows, m.ncols), pivots


def rank(m: Mat) -> int:
    """Rank by fraction-free forward elimination on integer-scaled rows.

    Exact: each row is scaled by its denominator lcm (rank-invariant),
    elimination uses the two-term integer update with gcd stripping.
    """
    rows = []
    for r in m.rows:
        if not any(r):
            continue
        scale = 1
        for x in r:
            d = x.denominator
            if d != 1:
                scale = scale * d // _gcd(scale, d)
        ints = [int(x * scale) for x in r] if scale != 1 else [int(x) for x in r]
        g = 0
        for v in ints:
            if v:
                g = _gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        rows.append(ints)
    rnk = 0
    ncols = m.ncols
    for c in range(ncols):
        pr = None
        for i in range(rnk, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[rnk], rows[pr] = rows[pr], rows[rnk]
        prow = rows[rnk]
        p = prow[c]
        for i in range(rnk + 1, len(rows)):
            f = rows[i][c]
            if not f:
                continue
            ri = rows[i]
            new = [p * a - f * b for a, b in zip(ri, prow)]
            g = 0
            for v in new:
                if v:
                    g = _gcd(g, abs(v))
                    if g == 1:
                        break
            rows[i] = [v // g for v in new] if g > 1 else new
        rnk += 1
        if rnk == len(rows):
            break
    return rnk


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def row_space(m: Mat) -> Mat:
    """Canonical (rref, zero rows dropped) basis of the row space."""
    r, piv = rref(m)
    return Mat(r.rows[: len(piv)], m.ncols) if piv else Mat([], m.ncols)


def kernel_basis(m: Mat) -> Mat:
    """Canonical basis of the right null space, one row per free column.

    Row for free column f has a 1 in position f and, for each pivot
    column p_i, the entry -R[i][f] of the rref R.
    """
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    rows = []
    for f in free:
        v = [_ZERO] * m.ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            if R.rows[i][f]:
                v[p] = -R.rows[i][f]
        rows.append(v)
    return Mat(rows, m.ncols)


def solve(m: Mat, b):
    """Canonical particular solution of m x = b (free variables zeroed).

    Raises NoSolutionError when b is outside the column space.
    """
    return solve_many(m, [[to_q(x) for x in b]])[0]


def solve_many(m: Mat, bcols):
    """Solve m x = b for each column b of ``bcols`` (list of columns).

    All right-hand sides share one elimination.  Returns a list of
    solution vectors; raises NoSolutionError if any system is
    inconsistent.  Consistency of column t is read off soundly even when
    other right-hand sides are inconsistent: a nonzero entry in rows
    below the main rank witnesses b_t outside the column space.
    """
    ncols = m.ncols
    k = len(bcols)
    for b in bcols:
        if len(b) != m.nrows:
            raise ValueError("rhs length mismatch")
    aug = Mat(
        [list(m.rows[i]) + [to_q(b[i]) for b in bcols] for i in range(m.nrows)],
        ncols + k,
    )
    R, pivots = _rref_augmented(aug, ncols)
    main_rank = len(pivots)
    sols = []
    for t in range(k):
        col = ncols + t
        for i in range(main_rank, R.nrows):
            if R.rows[i][col]:
                raise NoSolutionError(f"rhs column {t} not in column space")
        x = [_ZERO] * ncols
        for i, p in enumerate(pivots):
            x[p] = R.rows[i][col]
        sols.append(x)
    return sols


class LinearSolver:
    """Factor a matrix once, then solve A x = b repeatedly.

    Stores the rref of [A | I]; each solve costs one matrix-vector
    product with the recorded row transform instead of a fresh
    elimination.  Solutions use the canonical free-variables-zero
    convention, matching :func:`solve`.
    """

    def __init__(self, a: Mat):
        self.ncols = a.ncols
        self.nrows = a.nrows
        aug = Mat([list(a.rows[i]) + [_ONE if j == i else _ZERO for j in range(a.nrows)]
                   for i in range(a.nrows)], a.ncols + a.nrows)
        R, pivots = _rref_augmented(aug, a.ncols)
        self.pivots = pivots
        self.rank = len(pivots)
        # T r = transformed rhs; rows of R beyond rank must pair with zero rhs
        self.transform = [row[a.ncols:] for row in R.rows]
        self.reduced = [row[: a.ncols] for row in R.rows]

    def solve(self, b):
        b = [to_q(x) for x in b]
        if len(b) != self.nrows:
            raise ValueError("rhs length mismatch")
        y = []
        for trow in self.transform:
            y.append(sum((t * bv for t, bv in zip(trow, b) if t and bv), _ZERO))
        for i in range(self.rank, self.nrows):
            if y[i]:
                raise NoSolutionError("rhs not in column space")
        x = [_ZERO] * self.ncols
        for i, p in enumerate(self.pivots):
            x[p] = y[i]
        return x

    def contains(self, b) -> bool:
        try:
            self.solve(b)
            return True
        except NoSolutionError:
            return False


def _rref_augmented(aug: Mat, main_cols: int):
    """rref that only chooses pivots among the first ``main_cols`` columns."""
    rows = [list(r) for r in aug.rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(main_cols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            rows[r] = prow = [x * inv for x in prow]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                rows[i] = [a - f * b for a, b in zip(ri, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Mat(rows, aug.ncols), pivots


class SparseReducer:
    """Incremental exact row reduction for sparse rows (dicts col -> value).

    Maintains a normalized pivot row per leading column.  Suited to the
    large block-structured systems in the family checks, where rows from
    different multidegree blocks have disjoint supports.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Return the residual of ``row`` after reduction (not inserted)."""
        row = {k: to_q(v) for k, v in row.items() if v}
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                return row
            f = row.pop(c)
            for k, v in piv.items():
                if k == c:
                    continue
                nv = row.get(k, _ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        res = self.reduce(row)
        if not res:
            return False
        c = min(res)
        inv = 1 / res[c]
        self.pivots[c] = {k: v * inv for k, v in res.items()} if inv != 1 else res
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def merge_disjoint(self, other):
        """Absorb pivots of a reducer over disjoint columns (no reduction)."""
        overlap = self.pivots.keys() & other.pivots.keys()
        if overlap:
            raise ValueError("pivot columns overlap; merge would be unsound")
        self.pivots.update(other.pivots)
