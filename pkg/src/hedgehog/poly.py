"""Sparse multivariate polynomials with tagged variables.

Variables are small integer codes with a fixed global order

    x1 < ... < x6 < y1 < ... < y6 < a1 < ... < a6 < b1 < ... < b6 < t < eps

where a_i acts on x_i and b_i on y_i as partial derivatives under the
contraction action, t is an ordinary scalar variable on both sides of
the action, and eps is nilpotent (eps^2 = 0, used only through
:class:`DualPoly`).

A monomial is a sorted tuple of (code, exponent) pairs with positive
exponents; a polynomial is a dict monomial -> rational with no zero
coefficients stored.
"""

from functools import lru_cache

from .linalg import QQ, to_q, _ZERO, _ONE

# variable code layout
X = tuple(range(0, 6))
Y = tuple(range(6, 12))
ALPHA = tuple(range(12, 18))
BETA = tuple(range(18, 24))
T = 24
EPS = 25

XY = X + Y
AB = ALPHA + BETA

_KIND_NAMES = {"x": X, "y": Y, "a": ALPHA, "b": BETA}


def var_name(code: int) -> str:
    if code < 6:
        return f"x{code + 1}"
    if code < 12:
        return f"y{code - 5}"
    if code < 18:
        return f"a{code - 11}"
    if code < 24:
        return f"b{code - 17}"
    return "t" if code == T else "eps"


def kind_of(code: int) -> str:
    if code < 6:
        return "x"
    if code < 12:
        return "y"
    if code < 18:
        return "a"
    if code < 24:
        return "b"
    return "t" if code == T else "eps"


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for c, e in m2:
        d[c] = d.get(c, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m, codes=None) -> int:
    if codes is None:
        return sum(e for _, e in m)
    cs = set(codes)
    return sum(e for c, e in m if c in cs)


def mono_weighted_degree(m, weights) -> int:
    """Weighted degree; ``weights`` maps kind letter -> weight (default 0)."""
    return sum(e * weights.get(kind_of(c), 0) for c, e in m)


class Poly:
    """Immutable-by-convention sparse polynomial over exact rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def zero():
        return Poly()

    @staticmethod
    def const(c):
        c = to_q(c)
        return Poly({(): c}) if c else Poly()

    @staticmethod
    def var(code, exp=1):
        if exp == 0:
            return Poly.const(1)
        return Poly({((code, exp),): _ONE})

    @staticmethod
    def monomial(mono, coeff=1):
        coeff = to_q(coeff)
        return Poly({tuple(mono): coeff}) if coeff else Poly()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, type(QQ(0)))):
            return self == Poly.const(other)
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, type(QQ(0)))):
            other = Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, _ZERO) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, type(QQ(0)))):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, type(QQ(0)))):
            f = to_q(other)
            if not f:
                return Poly()
            return Poly({m: c * f for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                nc = out.get(m, _ZERO) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return self * c

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), _ZERO)

    def constant_term(self):
        return self.terms.get((), _ZERO)

    def variables(self):
        seen = set()
        for m in self.terms:
            for c, _ in m:
                seen.add(c)
        return sorted(seen)

    def total_degree(self, codes=None) -> int:
        if not self.terms:
            return 0
        return max(mono_degree(m, codes) for m in self.terms)

    def homogeneous_degree(self, weights=None):
        """Degree if homogeneous (weighted if ``weights`` given), else None."""
        degs = set()
        for m in self.terms:
            d = mono_degree(m) if weights is None else mono_weighted_degree(m, weights)
            degs.add(d)
        if len(degs) == 1:
            return degs.pop()
        return None

    def __repr__(self):
        from .parse import poly_to_str

        return poly_to_str(self) if self.terms else "0"


def diff(p: Poly, code: int) -> Poly:
    """Literal partial derivative with respect to one variable."""
    out = {}
    for m, c in p.terms.items():
        md = dict(m)
        e = md.get(code)
        if not e:
            continue
        if e == 1:
            del md[code]
        else:
            md[code] = e - 1
        mono = tuple(sorted(md.items()))
        nc = out.get(mono, _ZERO) + c * e
        if nc:
            out[mono] = nc
        else:
            out.pop(mono, None)
    return Poly(out)


_OP_TO_TARGET = {c: c - 12 for c in ALPHA + BETA}  # a_i -> x_i, b_i -> y_i


def contract(op: Poly, target: Poly) -> Poly:
    """Apolarity action: ``op`` (in a/b/t) acts on ``target`` (in x/y/t).

    a_i and b_i act as genuine partial derivatives (with factorials);
    t is a scalar coefficient variable on both sides.  Multiplicative
    in the operator: (f*g) . F = f . (g . F).
    """
    for c in op.variables():
        if c < 12 or c == EPS:
            raise ValueError(f"operator contains non-operator variable {var_name(c)}")
    for c in target.variables():
        if 12 <= c < 24 or c == EPS:
            raise ValueError(f"target contains operator variable {var_name(c)}")
    out = {}
    for om, oc in op.terms.items():
        derivs = [(c, e) for c, e in om if c != T]
        t_exp = mono_degree(om, (T,))
        for tm, tc in target.terms.items():
            coeff = oc * tc
            md = dict(tm)
            ok = True
            for c, e in derivs:
                xc = _OP_TO_TARGET[c]
                have = md.get(xc, 0)
                if have < e:
                    ok = False
                    break
                for k in range(e):
                    coeff *= have - k
                if have == e:
                    del md[xc]
                else:
                    md[xc] = have - e
            if not ok or not coeff:
                continue
            if t_exp:
                md[T] = md.get(T, 0) + t_exp
            mono = tuple(sorted(md.items()))
            nc = out.get(mono, _ZERO) + coeff
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
    return Poly(out)


def substitute(p: Poly, assignment) -> Poly:
    """Substitute polynomials for variables; unmapped variables stay fixed.

    ``assignment`` maps variable codes to Poly (or int/rational).
    """
    assignment = {c: (v if isinstance(v, Poly) else Poly.const(v))
                  for c, v in assignment.items()}
    out = Poly()
    for m, c in p.terms.items():
        term = Poly.const(c)
        for code, e in m:
            repl = assignment.get(code)
            if repl is None:
                term = term * Poly.var(code, e)
            else:
                term = term * repl ** e
        out = out + term
    return out


def graded_component(p: Poly, d: int, weights) -> Poly:
    """Sum of terms of weighted degree d; ``weights`` maps kind -> weight."""
    out = {m: c for m, c in p.terms.items() if mono_weighted_degree(m, weights) == d}
    return Poly(out)


@lru_cache(maxsize=None)
def monomial_basis(codes, d):
    """Monomials of degree d in the given codes, graded-lex descending.

    Returns (tuple of monomials, dict monomial -> index).
    """
    codes = tuple(codes)
    monos = []

    def rec(i, remaining, acc):
        if i == len(codes) - 1:
            if remaining:
                acc = acc + ((codes[i], remaining),)
            monos.append(tuple(sorted(acc)))
            return
        for e in range(remaining, -1, -1):
            rec(i + 1, remaining - e, acc + ((codes[i], e),) if e else acc)

    if d == 0:
        monos.append(())
    elif len(codes) == 0:
        return (), {}
    else:
        rec(0, d, ())
    index = {m: i for i, m in enumerate(monos)}
    return tuple(monos), index


def monomial_coordinates(codes, d):
    """Ordered monomial list for the degree-d coordinate space."""
    return list(monomial_basis(tuple(codes), d)[0])


def vectorize(p: Poly, codes, d):
    """Coefficient vector of a d-homogeneous polynomial in the given codes."""
    monos, index = monomial_basis(tuple(codes), d)
    v = [_ZERO] * len(monos)
    for m, c in p.terms.items():
        i = index.get(m)
        if i is None:
            raise ValueError(f"term {m} outside degree-{d} space in given variables")
        v[i] = c
    return v


def devectorize(vec, codes, d) -> Poly:
    monos, _ = monomial_basis(tuple(codes), d)
    if len(vec) != len(monos):
        raise ValueError("length mismatch")
    return Poly({m: to_q(c) for m, c in zip(monos, vec) if c})


def sparse_vectorize(p: Poly, codes, d):
    """Coefficient dict index -> value (for the sparse reducer)."""
    _, index = monomial_basis(tuple(codes), d)
    out = {}
    for m, c in p.terms.items():
        i = index.get(m)
        if i is None:
            raise ValueError(f"term {m} outside degree-{d} space in given variables")
        out[i] = c
    return out


class DualPoly:
    """Pair real + eps * inf with eps^2 = 0; both parts eps-free."""

    __slots__ = ("real", "eps")

    def __init__(self, real=None, eps=None):
        self.real = real if real is not None else Poly()
        self.eps = eps if eps is not None else Poly()

    def __add__(self, other):
        return DualPoly(self.real + other.real, self.eps + other.eps)

    def __sub__(self, other):
        return DualPoly(self.real - other.real, self.eps - other.eps)

    def __mul__(self, other):
        if isinstance(other, DualPoly):
            return DualPoly(self.real * other.real,
                            self.real * other.eps + self.eps * other.real)
        return DualPoly(self.real * other, self.eps * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, DualPoly)
                and self.real == other.real and self.eps == other.eps)

    __hash__ = None

    def __repr__(self):
        return f"({self.real!r}) + eps*({self.eps!r})"
