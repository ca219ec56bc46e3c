"""Catalecticant matrices, perp ideals, apolar algebras, Hilbert functions.

The contraction pairing is encoded in matrices with rows indexed by
operator monomials (degree d) and columns by target monomials (degree
e - d): row i is the coefficient vector of (operator monomial i) acting
on F.  The degree-d piece of the perp ideal is the left kernel, i.e.
the kernel of the transposed matrix.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import DegenerateInput, NoSolutionError, NotHomogeneousCubic
from .linalg import LinearSolver, Mat, kernel_basis, rank, row_space
from .poly import (ALPHA, X, Poly, contract, devectorize, diff,
                   monomial_basis, vectorize)


@dataclass
class GradedSubspace:
    """Canonical (rref) basis of a subspace of a degree-d monomial space."""

    codes: tuple
    degree: int
    basis: Mat

    def __post_init__(self):
        self.basis = row_space(self.basis)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    def polys(self):
        return [devectorize(row, self.codes, self.degree) for row in self.basis.rows]

    def solver(self) -> LinearSolver:
        """Membership solver against the transposed basis (columns = basis)."""
        return LinearSolver(self.basis.transpose())

    def contains_poly(self, p: Poly) -> bool:
        return self.solver().contains(vectorize(p, self.codes, self.degree))

    def __eq__(self, other):
        return (isinstance(other, GradedSubspace)
                and self.codes == other.codes
                and self.degree == other.degree
                and self.basis == other.basis)


class HilbertFunction:
    """Finite sequence of graded dimensions, trailing zeros trimmed."""

    def __init__(self, values):
        vals = list(values)
        while vals and vals[-1] == 0:
            vals.pop()
        self.values = tuple(vals)

    def __eq__(self, other):
        if isinstance(other, HilbertFunction):
            return self.values == other.values
        return self.values == tuple(other)

    def __getitem__(self, d):
        return self.values[d] if 0 <= d < len(self.values) else 0

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return f"HilbertFunction{self.values}"

    def total(self):
        return sum(self.values)


def _target_degree(F: Poly, target_codes) -> int:
    deg = F.homogeneous_degree()
    if deg is None:
        raise ValueError("form must be homogeneous")
    return deg


def catalecticant_matrix(F: Poly, d: int, op_codes=ALPHA, target_codes=X) -> Mat:
    """Matrix of degree-d operators acting on F, in monomial coordinates.

    Rows: operator monomials of degree d; columns: target monomials of
    degree e-d.  For d > e the matrix has zero target columns.
    """
    if F.is_zero():
        raise DegenerateInput("zero form")
    e = _target_degree(F, target_codes)
    op_monos, _ = monomial_basis(tuple(op_codes), d)
    if d > e:
        return Mat([[] for _ in op_monos], 0)
    rows = []
    for m in op_monos:
        image = contract(Poly.monomial(m), F)
        rows.append(vectorize(image, target_codes, e - d))
    ncols = len(monomial_basis(tuple(target_codes), e - d)[0])
    return Mat(rows, ncols)


def perp_degree(F: Poly, d: int, op_codes=ALPHA, target_codes=X) -> GradedSubspace:
    """rref-canonical basis of the degree-d piece of the perp ideal of F."""
    cat = catalecticant_matrix(F, d, op_codes, target_codes)
    ker = kernel_basis(cat.transpose())
    return GradedSubspace(tuple(op_codes), d, ker)


def hilbert_function(F: Poly, op_codes=ALPHA, target_codes=X) -> HilbertFunction:
    """Hilbert function of the apolar algebra of F (ranks of catalecticants)."""
    if F.is_zero():
        raise DegenerateInput("zero form has the zero ring as apolar algebra")
    e = _target_degree(F, target_codes)
    return HilbertFunction(
        rank(catalecticant_matrix(F, d, op_codes, target_codes)) for d in range(e + 1)
    )


def ev_preimage(F: Poly, target: Poly, op_codes=ALPHA, target_codes=X) -> Poly:
    """Canonical operator h (free variables zeroed) with h . F = target.

    Raises NoSolutionError when the target is outside the image of the
    evaluation map in its degree.
    """
    if F.is_zero():
        raise DegenerateInput("zero form")
    e = _target_degree(F, target_codes)
    td = target.homogeneous_degree()
    if td is None:
        raise ValueError("target must be homogeneous")
    if target.is_zero() or td > e:
        if target.is_zero():
            return Poly.zero()
        raise NoSolutionError("target degree exceeds the form degree")
    d = e - td
    cat = catalecticant_matrix(F, d, op_codes, target_codes)
    sol = cat.transpose()
    coords = vectorize(target, target_codes, td)
    from .linalg import solve

    x = solve(sol, coords)
    return devectorize(x, op_codes, d)


@dataclass
class Condition1Report:
    passed: bool
    hf: HilbertFunction
    hf_ok: bool
    form_nonzero: bool
    partials_rank: int
    coordinates_in_image: bool
    constants_in_image: bool

    def checks(self):
        return {
            "hf_is_1661": self.hf_ok,
            "form_nonzero": self.form_nonzero,
            "partials_independent": self.partials_rank == 6,
            "coordinates_in_image": self.coordinates_in_image,
            "constants_in_image": self.constants_in_image,
        }


def general_enough_condition1(F: Poly) -> Condition1Report:
    """First genericity condition for a cubic in six variables.

    Checks that the Hilbert function is (1,6,6,1) and that the 14
    listed elements (F, its six first partials, the six coordinates, 1)
    are independent and lie in the image of evaluation; for homogeneous
    cubics the two formulations agree degree by degree and both are
    verified.
    """
    if F.is_zero():
        raise DegenerateInput("zero form")
    hf = hilbert_function(F)
    hf_ok = hf == (1, 6, 6, 1)
    partial_rows = Mat([vectorize(diff(F, i), X, 2) for i in range(6)], ncols=21)
    partials_rank = rank(partial_rows)
    coords_ok = rank(catalecticant_matrix(F, 2)) == 6
    consts_ok = rank(catalecticant_matrix(F, 3)) == 1
    passed = hf_ok and partials_rank == 6 and coords_ok and consts_ok
    return Condition1Report(passed, hf, hf_ok, not F.is_zero(), partials_rank,
                            coords_ok, consts_ok)


class ApolarCubic:
    """Cached apolarity data for one cubic form in x1..x6.

    Holds the perp pieces, the Hilbert function, the canonical socle
    preimage g (g . F = 1) and the canonical quadrics Q_i (Q_i . F = x_i)
    coming from the free-variables-zero solve convention.
    """

    def __init__(self, F: Poly):
        if F.is_zero():
            raise DegenerateInput("zero form")
        for c in F.variables():
            if c not in X:
                raise NotHomogeneousCubic("form must use x1..x6 only")
        if F.homogeneous_degree() != 3:
            raise NotHomogeneousCubic("form must be a homogeneous cubic")
        self.F = F
        self._perp = {}

    def perp(self, d: int) -> GradedSubspace:
        if d not in self._perp:
            self._perp[d] = perp_degree(self.F, d)
        return self._perp[d]

    @cached_property
    def hf(self) -> HilbertFunction:
        return hilbert_function(self.F)

    @cached_property
    def condition1(self) -> Condition1Report:
        return general_enough_condition1(self.F)

    @cached_property
    def g(self) -> Poly:
        return ev_preimage(self.F, Poly.const(1))

    @cached_property
    def Q_list(self):
        return [ev_preimage(self.F, Poly.var(i)) for i in range(6)]

    @cached_property
    def partials(self):
        return [diff(self.F, i) for i in range(6)]

    def reduce_by_ev(self, p: Poly):
        """Image of a degree-<=3 operator polynomial under evaluation on F."""
        return contract(p, self.F)
