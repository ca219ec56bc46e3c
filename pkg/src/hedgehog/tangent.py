"""Graded pieces of Hom(I, S/I) and the tangent vectors at the fixed point.

Grading convention: a homomorphism has degree k when it shifts degrees
by k, i.e. it maps the degree-n piece of the ideal into the degree-(n+k)
piece of the quotient.  Under this convention both the translation
derivatives and the socle-image tangents sit in degree -1.

A degree-k homomorphism is recorded by its generator images, written in
fixed quotient-basis coordinates; the defining constraints are the
first syzygies of the presentation (complete once the resolution-shape
condition is verified, so no higher differentials are needed).

Dual-number computations (deformation round-trips, barycenter traces)
work degree by degree in the slices of S[eps] with eps of weight one;
spanning is decided by eps-filtration linear algebra: the ideal slice
splits into its polynomial part (the ideal itself) and the eps layer
(the ideal plus syzygy images of the tangent representatives).
"""

from dataclasses import dataclass

from .apolarity import ApolarCubic
from .errors import (BasisFailure, PrerequisiteFailed, RoundTripFailure,
                     SyzygyViolation)
from .linalg import (LinearSolver, Mat, QQ, _ZERO, kernel_basis, rank,
                     to_q)
from .poly import (ALPHA, Poly, diff, monomial_basis, monomial_coordinates,
                   vectorize)
from .resolution import (IdealPresentation, betti_slice, ideal_degree_piece,
                         syzygy_degree, syzygy_rows_to_vectors)


class QuotientBasis:
    """Degree-by-degree representative bases of S/ideal with reductions.

    ``reps[d]`` lists the chosen representative polynomials of degree d;
    ``full_from`` marks the degree from which the ideal is everything
    (verified once at construction; being an ideal it then stays full).
    """

    def __init__(self, codes, pieces, reps, full_from):
        self.codes = tuple(codes)
        self.pieces = pieces
        self.reps = reps
        self.full_from = full_from
        self._solvers = {}
        for d, piece in pieces.items():
            nmono = len(monomial_basis(self.codes, d)[0])
            if piece.dim + len(reps.get(d, ())) != nmono:
                raise ValueError(f"degree {d}: ideal + representatives do not fill S_{d}")

    def rep_count(self, d: int) -> int:
        if d < 0 or d >= self.full_from:
            return 0
        return len(self.reps.get(d, ()))

    def _solver(self, d):
        if d not in self._solvers:
            piece = self.pieces[d]
            nmono = piece.ambient_dim
            cols = []
            for row in piece.basis.rows:
                cols.append(list(row))
            for p in self.reps.get(d, ()):
                cols.append(vectorize(p, self.codes, d))
            aug = Mat([[cols[c][r] for c in range(len(cols))] for r in range(nmono)],
                      len(cols))
            self._solvers[d] = (LinearSolver(aug), piece.dim)
        return self._solvers[d]

    def reduce(self, p: Poly, d: int = None):
        """Coordinates of the class of p in the degree-d representatives."""
        if p.is_zero():
            if d is None:
                raise ValueError("degree required for the zero polynomial")
            return [_ZERO] * self.rep_count(d)
        if d is None:
            d = p.homogeneous_degree()
            if d is None:
                raise ValueError("polynomial is not homogeneous")
        if d < 0:
            raise ValueError("negative degree")
        if d >= self.full_from:
            return []
        solver, ideal_dim = self._solver(d)
        x = solver.solve(vectorize(p, self.codes, d))
        return x[ideal_dim:]

    def rep_poly(self, d: int, coords) -> Poly:
        out = Poly.zero()
        for c, p in zip(coords, self.reps.get(d, ())):
            if c:
                out = out + p * c
        return out

    def in_ideal(self, p: Poly, d: int = None) -> bool:
        return all(not c for c in self.reduce(p, d))


def quotient_for_ideal(apolar: ApolarCubic, pres: IdealPresentation) -> QuotientBasis:
    """S/I for I = (perp quadrics, g): representatives {1}, {a_i}, {Q_i}.

    Verifies that the ideal fills all of degree 3, which forces fullness
    in every higher degree.
    """
    pieces = {
        0: ideal_degree_piece([], 0),
        1: ideal_degree_piece([], 1),
        2: apolar.perp(2),
        3: ideal_degree_piece(pres.generators, 3),
    }
    if pieces[3].dim != len(monomial_basis(ALPHA, 3)[0]):
        raise PrerequisiteFailed("ideal does not fill degree 3; quotient is not (1,6,6)")
    reps = {0: [Poly.const(1)],
            1: [Poly.var(c) for c in ALPHA],
            2: list(apolar.Q_list)}
    return QuotientBasis(ALPHA, {d: pieces[d] for d in (0, 1, 2)}, reps, full_from=3)


def quotient_for_perp(apolar: ApolarCubic) -> QuotientBasis:
    """S/F-perp: representatives {1}, {a_i}, {Q_i}, {g} (Hilbert function 1,6,6,1)."""
    pieces = {d: apolar.perp(d) for d in range(4)}
    if apolar.perp(4).dim != len(monomial_basis(ALPHA, 4)[0]):
        raise PrerequisiteFailed("perp does not fill degree 4")
    reps = {0: [Poly.const(1)],
            1: [Poly.var(c) for c in ALPHA],
            2: list(apolar.Q_list),
            3: [apolar.g]}
    return QuotientBasis(ALPHA, pieces, reps, full_from=4)


def perp_presentation(apolar: ApolarCubic, betti=None) -> IdealPresentation:
    """Presentation of the perp ideal itself: 15 quadrics, 35 syzygies."""
    if not apolar.condition1.passed:
        raise PrerequisiteFailed("condition (1) does not hold")
    if betti is None:
        betti = betti_slice(apolar)
    if not betti.condition2_ok():
        raise PrerequisiteFailed("condition (2) does not hold")
    quadrics = apolar.perp(2).polys()
    kern = syzygy_degree(quadrics, 3)
    syz = list(syzygy_rows_to_vectors(kern, quadrics, 3))
    pres = IdealPresentation(generators=quadrics, gen_degrees=[2] * 15,
                             syzygies=syz, syz_degrees=[3] * len(syz))
    pres.verify_syzygies()
    return pres


@dataclass
class TangentVector:
    """Generator-image tuple of one homomorphism of fixed degree."""

    degree: int
    images: tuple  # per generator: tuple of quotient coordinates

    def flat(self):
        out = []
        for img in self.images:
            out.extend(img)
        return out

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return TangentVector(self.degree, tuple(
            tuple(a + b for a, b in zip(u, v))
            for u, v in zip(self.images, other.images)))

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, c):
        c = to_q(c)
        return TangentVector(self.degree, tuple(
            tuple(a * c for a in u) for u in self.images))

    __rmul__ = __mul__

    def is_zero(self):
        return all(not c for img in self.images for c in img)


@dataclass
class HomPiece:
    degree: int
    basis: list
    gen_widths: list

    @property
    def dim(self):
        return len(self.basis)


def image_layout(pres: IdealPresentation, quot: QuotientBasis, k: int):
    return [quot.rep_count(dg + k) for dg in pres.gen_degrees]


def hom_degree_piece(pres: IdealPresentation, quot: QuotientBasis, k: int) -> HomPiece:
    """Canonical basis of the degree-k homomorphisms I -> S/I.

    Unknowns are generator-image coordinates; one linear block of
    constraints per syzygy, expressed in the quotient coordinates of the
    syzygy degree.  Vacuous blocks (zero-dimensional targets) are
    skipped.
    """
    widths = image_layout(pres, quot, k)
    total = sum(widths)
    if total == 0:
        return HomPiece(k, [], widths)
    offsets = []
    pos = 0
    for w in widths:
        offsets.append(pos)
        pos += w
    rows = []
    for syz, sd in zip(pres.syzygies, pres.syz_degrees):
        tgt = quot.rep_count(sd + k)
        if tgt == 0:
            continue
        block = [[_ZERO] * total for _ in range(tgt)]
        for i, coeff in enumerate(syz):
            if widths[i] == 0 or coeff.is_zero():
                continue
            gen_rep_deg = pres.gen_degrees[i] + k
            for j, rep in enumerate(quot.reps.get(gen_rep_deg, ())):
                prod = coeff * rep
                coords = quot.reduce(prod, sd + k)
                col = offsets[i] + j
                for r, c in enumerate(coords):
                    if c:
                        block[r][col] = c
        rows.extend(block)
    kern = kernel_basis(Mat(rows, total)) if rows else Mat.identity(total)
    basis = []
    for row in kern.rows:
        images = []
        for i, w in enumerate(widths):
            images.append(tuple(row[offsets[i]:offsets[i] + w]))
        basis.append(TangentVector(k, tuple(images)))
    return HomPiece(k, basis, widths)


def check_tangent(pres: IdealPresentation, quot: QuotientBasis,
                  tv: TangentVector) -> bool:
    """Symbolic verification that all syzygy constraints hold."""
    reps = [quot.rep_poly(dg + tv.degree, img)
            for dg, img in zip(pres.gen_degrees, tv.images)]
    for syz, sd in zip(pres.syzygies, pres.syz_degrees):
        total = Poly.zero()
        for coeff, rep in zip(syz, reps):
            if coeff and rep:
                total = total + coeff * rep
        if not all(not c for c in quot.reduce(total, sd + tv.degree)):
            return False
    return True


def derivative_tangent(i: int, pres: IdealPresentation,
                       quot: QuotientBasis) -> TangentVector:
    """The translation tangent: f -> df/da_i mod I (degree -1); i in 1..6."""
    code = ALPHA[i - 1]
    images = []
    for gen, dg in zip(pres.generators, pres.gen_degrees):
        images.append(tuple(quot.reduce(diff(gen, code), dg - 1)))
    tv = TangentVector(-1, tuple(images))
    if not check_tangent(pres, quot, tv):
        raise SyzygyViolation(f"derivative tangent {i} fails a syzygy constraint")
    return tv


def xq_tangent(Q: Poly, pres: IdealPresentation,
               quot: QuotientBasis) -> TangentVector:
    """The tangent killing the quadric generators and sending g to Q."""
    images = []
    for gen, dg in zip(pres.generators, pres.gen_degrees):
        if dg == 2:
            images.append(tuple([_ZERO] * quot.rep_count(1)))
        else:
            images.append(tuple(quot.reduce(Q, 2)))
    tv = TangentVector(-1, tuple(images))
    if not check_tangent(pres, quot, tv):
        raise SyzygyViolation("x_Q tangent fails a syzygy constraint")
    return tv


def span_dim(tangents) -> int:
    if not tangents:
        return 0
    return rank(Mat([tv.flat() for tv in tangents],
                    ncols=len(tangents[0].flat())))


def in_span(tv: TangentVector, tangents) -> bool:
    flats = [t.flat() for t in tangents]
    mat = Mat([[flats[c][r] for c in range(len(flats))]
               for r in range(len(tv.flat()))], len(flats))
    return LinearSolver(mat).contains(tv.flat())


def y_basis(apolar: ApolarCubic, pres: IdealPresentation,
            quot: QuotientBasis):
    """The six fiber tangents: x_{Q_i} minus one thirteenth of d_i."""
    out = []
    for i in range(1, 7):
        xi = xq_tangent(apolar.Q_list[i - 1], pres, quot)
        di = derivative_tangent(i, pres, quot)
        out.append(xi - di * QQ(1, 13))
    return out


class DualSlice:
    """Degree-n slice of S[eps] modulo the deformation ideal of a tangent.

    The deformation ideal of delta is generated by g_j - eps * u_j with
    u_j representative polynomials of the images; eps has weight one, so
    the slice at total degree n is S_n + eps S_{n-1}.  Candidate basis
    vectors are the quotient representatives and eps times the previous
    degree's representatives.
    """

    def __init__(self, pres: IdealPresentation, quot: QuotientBasis,
                 image_reps, n: int):
        self.n = n
        self.quot = quot
        codes = quot.codes
        s_n, _ = monomial_basis(codes, n)
        s_prev, _ = monomial_basis(codes, n - 1) if n >= 1 else ((), {})
        self.dim_s = len(s_n)
        self.dim_eps = len(s_prev)
        cols = []
        for gen, dg, u in zip(pres.generators, pres.gen_degrees, image_reps):
            if dg <= n:
                for m in monomial_coordinates(codes, n - dg):
                    main = Poly.monomial(m) * gen
                    epspart = Poly.monomial(m) * u * -1 if u else Poly.zero()
                    cols.append((vectorize(main, codes, n),
                                 vectorize(epspart, codes, n - 1)
                                 if n >= 1 else []))
            if dg <= n - 1:
                for m in monomial_coordinates(codes, n - 1 - dg):
                    epsg = Poly.monomial(m) * gen
                    cols.append(([_ZERO] * self.dim_s,
                                 vectorize(epsg, codes, n - 1)))
        self.ideal_cols = len(cols)
        self.cand_info = []  # (kind, degree, index) kind in ("one", "eps")
        for j, p in enumerate(quot.reps.get(n, ()) if n < quot.full_from else ()):
            cols.append((vectorize(p, codes, n), [_ZERO] * self.dim_eps))
            self.cand_info.append(("one", n, j))
        if n >= 1 and n - 1 < quot.full_from:
            for j, p in enumerate(quot.reps.get(n - 1, ())):
                cols.append(([_ZERO] * self.dim_s, vectorize(p, codes, n - 1)))
                self.cand_info.append(("eps", n - 1, j))
        nrows = self.dim_s + self.dim_eps
        self.solver = LinearSolver(
            Mat([[col[0][r] if r < self.dim_s else col[1][r - self.dim_s]
                  for col in cols] for r in range(nrows)], len(cols)))
        if self.solver.rank != nrows:
            raise BasisFailure(
                f"slice degree {n}: ideal plus candidates do not span "
                f"({self.solver.rank} of {nrows})")
        self.ideal_rank = sum(1 for p in self.solver.pivots if p < self.ideal_cols)

    def reduce(self, main: Poly, epspart: Poly = None):
        """k[eps]-coordinates of (main + eps*epspart) over the candidates."""
        vec = (vectorize(main, self.quot.codes, self.n)
               + (vectorize(epspart or Poly.zero(), self.quot.codes, self.n - 1)
                  if self.n >= 1 else []))
        x = self.solver.solve(vec)
        return x[self.ideal_cols:]


def _image_reps(quot: QuotientBasis, pres: IdealPresentation, tv: TangentVector):
    return [quot.rep_poly(dg + tv.degree, img)
            for dg, img in zip(pres.gen_degrees, tv.images)]


@dataclass
class RoundTripReport:
    slice_dims: list
    total_dim: int
    recovered: bool


def deformation_roundtrip(delta: TangentVector, pres: IdealPresentation,
                          quot: QuotientBasis) -> RoundTripReport:
    """Deform I along a degree -1 tangent and verify freeness and recovery.

    Builds I' = (f - eps delta(f)) and checks the candidate classes
    (representatives and eps times representatives) give a free basis
    over the dual numbers: each slice through the last non-full degree
    is verified densely (ideal rank plus independent candidates fill the
    slice); higher slices are full because the ideal already contains a
    full degree.  Finally delta is recovered from the ideal itself.
    """
    if delta.degree != -1:
        raise ValueError("round trip expects a degree -1 tangent")
    if not check_tangent(pres, quot, delta):
        raise RoundTripFailure("images violate a syzygy constraint")
    reps = _image_reps(quot, pres, delta)

    # eps-filtration layer: syzygy images must land in the ideal exactly,
    # otherwise the eps layer of I' is larger than eps * I
    for s_idx, (syz, sd) in enumerate(zip(pres.syzygies, pres.syz_degrees)):
        w = Poly.zero()
        for coeff, u in zip(syz, reps):
            if coeff and u:
                w = w + coeff * u
        if w and not quot.in_ideal(w, sd - 1):
            raise RoundTripFailure(f"syzygy {s_idx}: eps layer escapes the ideal")

    codes = quot.codes
    dims = []
    slices = {}
    for n in range(0, quot.full_from + 1):
        sl = DualSlice(pres, quot, reps, n)
        slices[n] = sl
        n_mono = len(monomial_basis(codes, n)[0])
        p_mono = len(monomial_basis(codes, n - 1)[0]) if n >= 1 else 0
        ideal_n = n_mono - quot.rep_count(n)
        ideal_prev = p_mono - quot.rep_count(n - 1) if n >= 1 else 0
        if sl.ideal_rank != ideal_n + ideal_prev:
            raise RoundTripFailure(
                f"slice {n}: deformation ideal has dimension {sl.ideal_rank}, "
                f"expected {ideal_n + ideal_prev}")
        dims.append(len(sl.cand_info))
    total = sum(dims)
    if total != 2 * sum(quot.rep_count(d) for d in range(quot.full_from)):
        raise RoundTripFailure("candidate count does not double the quotient")

    # recover delta from I': the element with polynomial part g_j has
    # eps part congruent to -delta(g_j), so the candidate coordinates of
    # g_j in the slice are exactly the image coordinates
    for j, (gen, dg) in enumerate(zip(pres.generators, pres.gen_degrees)):
        sl = slices[dg]
        coords = sl.reduce(gen)
        rec = [_ZERO] * quot.rep_count(dg - 1)
        for c, (kind, _d, idx) in zip(coords, sl.cand_info):
            if kind == "one" and c:
                raise RoundTripFailure(f"generator {j} is not in the ideal mod eps")
            if kind == "eps":
                rec[idx] = c
        if rec != list(delta.images[j]):
            raise RoundTripFailure(f"generator {j}: recovered image differs")
    return RoundTripReport(slice_dims=dims, total_dim=total, recovered=True)


def dual_slices_for(pres, quot, delta):
    reps = _image_reps(quot, pres, delta)
    return {n: DualSlice(pres, quot, reps, n) for n in range(0, quot.full_from + 1)}


def multiplication_trace(Q: Poly, j: int, apolar: ApolarCubic,
                         pres: IdealPresentation, quot: QuotientBasis):
    """Trace of multiplication by a_j on S[eps]/I' for the tangent x_Q.

    Returns (real, eps) parts of the trace over the dual numbers; the
    thirteen candidate classes are verified to span along the way.
    """
    delta = xq_tangent(Q, pres, quot)
    slices = dual_slices_for(pres, quot, delta)
    code = ALPHA[j - 1]
    basis = []  # (degree, poly) for the 13 k[eps]-basis elements
    for d in range(0, quot.full_from):
        for p in quot.reps.get(d, ()):
            basis.append((d, p))
    tr_real = _ZERO
    tr_eps = _ZERO
    for bi, (d, p) in enumerate(basis):
        prod = Poly.var(code) * p
        sl = slices[d + 1]
        coords = sl.reduce(prod)
        for c, (kind, cd, idx) in zip(coords, sl.cand_info):
            if not c:
                continue
            # identify which of the 13 basis elements this candidate is
            flat_idx = sum(quot.rep_count(dd) for dd in range(cd)) + idx
            if flat_idx == bi:
                if kind == "one":
                    tr_real += c
                else:
                    tr_eps += c
    return tr_real, tr_eps


def barycenter_trace(i: int, j: int, apolar: ApolarCubic,
                     pres: IdealPresentation, quot: QuotientBasis):
    """Trace of mult-by-a_j on the deformation along x_{Q_i}; contract d_ij*eps."""
    real, eps = multiplication_trace(apolar.Q_list[i - 1], j, apolar, pres, quot)
    if real:
        raise BasisFailure("trace has a non-eps part")
    return eps
