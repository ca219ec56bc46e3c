"""Primary obstruction calculus at the truncated point.

The quadratic obstruction is evaluated through explicit chain-level
lifts of the tangent vectors against the adjusted presentation.  Only
its vanishing locus is needed downstream, and membership in the image
of the relevant dual map is a concrete solvable linear system, so the
obstruction target is never materialized as a quotient module.

Two independent routes decide kernel membership: chain-level
solvability of the lift system, and the closed-form criterion (the
associated quadric lies in the span of the first partials).  They must
agree on every basis element of the symmetric square, and the kernel
must equal the span of the partials rewritten in the fiber tangent
coordinates.
"""

from dataclasses import dataclass

from .apolarity import ApolarCubic, GradedSubspace
from .errors import (AnnihilatorMismatch, ExtensionFailure, FormulaMismatch,
                     KernelMismatch, LiftFailure, NoSolutionError)
from .linalg import (LinearSolver, Mat, QQ, _ONE, _ZERO, kernel_basis, to_q)
from .poly import ALPHA, X, Poly, contract, diff, monomial_basis, \
    monomial_coordinates, vectorize
from .resolution import (IdealPresentation, _syzygy_blocks,
                         syzygy_coordinate_matrix)
from .tangent import QuotientBasis, TangentVector, check_tangent


@dataclass
class LiftData:
    """Chain-lift data of the tangent sending g to a quadric class Q.

    a[k] is the constant ev_F(a_k Q); a_lin[k] holds the linear forms
    writing a_k Q - a[k] g over the quadric generators; the shared b
    quadrics live in the presentation's degree-4 relations.
    """

    Q: Poly
    a: list
    a_lin: list


@dataclass
class SymSquareElement:
    """Symmetric 6x6 coefficient matrix on the fiber tangent basis."""

    d: list

    def __post_init__(self):
        self.d = [[to_q(x) for x in row] for row in self.d]
        for l in range(6):
            for m in range(6):
                if self.d[l][m] != self.d[m][l]:
                    raise ValueError("coefficient matrix must be symmetric")

    @classmethod
    def zero(cls):
        return cls([[_ZERO] * 6 for _ in range(6)])

    @classmethod
    def basis_element(cls, l: int, m: int):
        """Symmetric product of basis vectors l and m (1-based indices)."""
        d = [[_ZERO] * 6 for _ in range(6)]
        if l == m:
            d[l - 1][m - 1] = _ONE
        else:
            d[l - 1][m - 1] = QQ(1, 2)
            d[m - 1][l - 1] = QQ(1, 2)
        return cls(d)

    @classmethod
    def from_x_quadric(cls, q: Poly):
        """Element whose associated quadric sum d_lm x_l x_m equals q."""
        d = [[_ZERO] * 6 for _ in range(6)]
        for mono, c in q.terms.items():
            codes = sorted(dict(mono))
            if len(codes) == 1:
                d[codes[0]][codes[0]] = c
            else:
                l, m = codes
                d[l][m] = c / 2
                d[m][l] = c / 2
        return cls(d)

    def to_x_quadric(self) -> Poly:
        out = Poly.zero()
        for l in range(6):
            for m in range(l, 6):
                c = self.d[l][m] if l == m else 2 * self.d[l][m]
                if c:
                    out = out + Poly.var(X[l]) * Poly.var(X[m]) * c
        return out

    def vector21(self):
        return vectorize(self.to_x_quadric(), X, 2)

    def plus(self, other):
        return SymSquareElement([[a + b for a, b in zip(r1, r2)]
                                 for r1, r2 in zip(self.d, other.d)])

    def scaled(self, c):
        c = to_q(c)
        return SymSquareElement([[x * c for x in row] for row in self.d])


def sym2_pairing(eta_pair, vec_pair):
    """Duality pairing of products of dual-basis functionals and vectors.

    Value of (eta_i eta_j) on (v_l v_m) under the symmetric-tensor
    convention: one half of (delta_il delta_jm + delta_im delta_jl).
    """
    i, j = eta_pair
    l, m = vec_pair

    def dl(a, b):
        return _ONE if a == b else _ZERO

    return (dl(i, l) * dl(j, m) + dl(i, m) * dl(j, l)) / 2


_SYM_BASIS_PAIRS = [(l, m) for l in range(1, 7) for m in range(l, 7)]


class ObstructionCalculus:
    """Presentation-level data shared by all obstruction checks."""

    def __init__(self, apolar: ApolarCubic, pres: IdealPresentation,
                 quot: QuotientBasis):
        self.apolar = apolar
        self.pres = pres
        self.quot = quot
        self.quadrics = pres.generators[:15]
        self.g = pres.generators[15]
        self.b_rows = [syz[:15] for syz, sd in zip(pres.syzygies, pres.syz_degrees)
                       if sd == 4]
        if len(self.b_rows) != 6:
            raise LiftFailure("presentation lacks the six degree-4 relations")
        self._deg3 = LinearSolver(syzygy_coordinate_matrix(self.quadrics, 3))
        self._lifts = {}
        self._membership = None
        self._amat = None
        self._n_syz3 = sum(1 for sd in pres.syz_degrees if sd == 3)

    # -- lifts -----------------------------------------------------------

    def build_lifts(self, Q: Poly) -> LiftData:
        """Canonical lift data for the tangent g -> Q; identities re-verified."""
        key = tuple(sorted(Q.terms.items()))
        if key in self._lifts:
            return self._lifts[key]
        a = []
        a_lin = []
        blocks = _syzygy_blocks(self.quadrics, 3, self.quot.codes)
        for k_code in ALPHA:
            prod = Poly.var(k_code) * Q
            ak = contract(prod, self.apolar.F).constant_term()
            residual = prod - self.g * ak
            try:
                sol = self._deg3.solve(vectorize(residual, self.quot.codes, 3))
            except NoSolutionError as exc:
                raise LiftFailure("residual escapes the quadric span") from exc
            lin = []
            pos = 0
            for _i, monos in blocks:
                coeffs = sol[pos:pos + len(monos)]
                pos += len(monos)
                lin.append(Poly({m: to_q(c) for m, c in zip(monos, coeffs) if c}))
            total = Poly.zero()
            for li, gi in zip(lin, self.quadrics):
                total = total + li * gi
            if total != residual:
                raise LiftFailure("lift identity failed symbolically")
            a.append(ak)
            a_lin.append(lin)
        data = LiftData(Q, a, a_lin)
        self._lifts[key] = data
        return data

    # -- chain-level obstruction -------------------------------------------

    def _chain_on_h(self, lift_first: LiftData, lift_second: LiftData,
                    k: int) -> Poly:
        """q s1(first) s2(second) on H_{k+1}: s2 sends H to the E/G column,
        s1 kills the E part and sends G to the first quadric."""
        return lift_first.Q * lift_second.a[k]

    def omega_image_element(self, D: SymSquareElement):
        """Chain-level representative r: images of H_1..H_6 in (S/I)_2.

        Evaluated by the lift formula on the socle-type tangents
        (derivative cross terms vanish by the translation-extension
        argument, certified separately) and cross-checked against the
        closed form 2 sum_l d_lk Q_l.
        """
        lifts = [self.build_lifts(q) for q in self.apolar.Q_list]
        r = []
        for k in range(6):
            acc = Poly.zero()
            for l in range(6):
                for m in range(6):
                    c = D.d[l][m]
                    if not c:
                        continue
                    acc = acc + (self._chain_on_h(lifts[l], lifts[m], k)
                                 + self._chain_on_h(lifts[m], lifts[l], k)) * c
            coords = self.quot.reduce(acc, 2)
            closed = [_ZERO] * len(coords)
            for l in range(6):
                cc = 2 * D.d[l][k]
                if cc:
                    qc = self.quot.reduce(self.apolar.Q_list[l], 2)
                    closed = [x + cc * y for x, y in zip(closed, qc)]
            if closed != coords:
                raise FormulaMismatch(f"chain level and closed form differ at H_{k + 1}")
            r.append(coords)
        return r

    # -- membership system ---------------------------------------------------

    def _membership_solver(self) -> LinearSolver:
        """System p(E_i) = s_i in (S/I)_0, p(G) = s in (S/I)_1 with
        p d_1 = 0 on the cubic relations and p d_1 = r on the H_k."""
        if self._membership is None:
            rows = []
            for syz, sd in zip(self.pres.syzygies, self.pres.syz_degrees):
                if sd != 3:
                    continue
                block = [[_ZERO] * 21 for _ in range(6)]
                for i in range(15):
                    v = syz[i]
                    if v.is_zero():
                        continue
                    for rr, c in enumerate(self.quot.reduce(v, 1)):
                        if c:
                            block[rr][i] = c
                rows.extend(block)
            for k, brow in enumerate(self.b_rows):
                block = [[_ZERO] * 21 for _ in range(6)]
                for i in range(15):
                    if brow[i].is_zero():
                        continue
                    for rr, c in enumerate(self.quot.reduce(brow[i], 2)):
                        if c:
                            block[rr][i] = c
                for cc, rep in enumerate(self.quot.reps[1]):
                    prod = Poly.var(ALPHA[k]) * rep
                    for rr, c in enumerate(self.quot.reduce(prod, 2)):
                        if c:
                            block[rr][15 + cc] = c
                rows.extend(block)
            self._amat = Mat(rows, 21)
            self._membership = LinearSolver(self._amat)
        return self._membership

    def membership_rhs(self, r):
        rhs = [_ZERO] * (6 * self._n_syz3)
        for k in range(6):
            rhs.extend(r[k])
        return rhs

    def membership_in_image(self, r) -> bool:
        """Is the representative r hit by a map p with the required vanishing?"""
        solver = self._membership_solver()
        return solver.contains(self.membership_rhs(r))

    # -- kernel, two routes -----------------------------------------------

    def partial_span(self) -> GradedSubspace:
        """Span of the six first partials of F as degree-2 x-quadrics."""
        return GradedSubspace(
            X, 2, Mat([vectorize(p, X, 2) for p in self.apolar.partials], 21))

    def omega_kernel(self) -> GradedSubspace:
        """Kernel of the obstruction on the 21-dimensional symmetric square.

        Route one: lambda-preimage of the membership system's column
        space (chain level).  Route two: per-element closed-form
        criterion.  Both routes are compared element by element and as
        subspaces, then against the substituted partial span.
        """
        self._membership_solver()
        basis_elems = [SymSquareElement.basis_element(l, m)
                       for (l, m) in _SYM_BASIS_PAIRS]
        c_cols = [self.membership_rhs(self.omega_image_element(D))
                  for D in basis_elems]
        pspan = self.partial_span()
        psolver = pspan.solver()

        # element-wise agreement of the two routes on all 21 basis elements
        for D, col in zip(basis_elems, c_cols):
            member_chain = self._membership.contains(col)
            member_closed = psolver.contains(D.vector21())
            if member_chain != member_closed:
                raise KernelMismatch(
                    "routes disagree on a symmetric-square basis element")

        # subspace route: kernel of [C | -A] projected to the lambda block
        amat = self._amat
        nrows = amat.nrows
        stacked = Mat([[c_cols[j][r] for j in range(21)]
                       + [-amat.rows[r][u] for u in range(21)]
                       for r in range(nrows)], 42)
        kern = kernel_basis(stacked)
        basis_vecs = [D.vector21() for D in basis_elems]
        rows = []
        for row in kern.rows:
            vec = [_ZERO] * 21
            for c, bv in zip(row[:21], basis_vecs):
                if c:
                    vec = [x + c * y for x, y in zip(vec, bv)]
            rows.append(vec)
        route1 = GradedSubspace(X, 2, Mat(rows, 21) if rows else Mat([], 21))
        if route1 != pspan:
            raise KernelMismatch("kernel differs from the span of the partials")
        return route1

    # -- annihilator ---------------------------------------------------------

    def kernel_annihilator_check(self, kernel: GradedSubspace) -> GradedSubspace:
        """Annihilator of ker Omega under contraction equals the perp quadrics.

        The pairing is the derivative action of degree-2 operator
        monomials on the kernel elements written as quadrics in the
        fiber coordinates (squares pair with the factor 2).
        """
        kernel_polys = kernel.polys()
        alpha_monos, _ = monomial_basis(ALPHA, 2)
        rows = []
        for m in alpha_monos:
            op = Poly.monomial(m)
            rows.append([contract(op, kp).constant_term() for kp in kernel_polys])
        pairing = Mat(rows, len(kernel_polys))
        ann_space = GradedSubspace(ALPHA, 2, kernel_basis(pairing.transpose()))
        if ann_space != self.apolar.perp(2):
            raise AnnihilatorMismatch("annihilator of ker Omega is not the perp")
        return ann_space


def cross_term_vanishing(calc: ObstructionCalculus, delta: TangentVector,
                         i: int):
    """Certify the two-parameter extension of the pair (delta, derivative i).

    Builds the translated deformation ideal over k[e,e']/(e^2, e'^2) and
    verifies its quotient is free of rank 13 by layer bookkeeping: the
    syzygy images of both tangents lie in the ideal and the
    second-order correction classes vanish; low slices are also checked
    by a dense rank computation.
    """
    pres, quot = calc.pres, calc.quot
    code = ALPHA[i - 1]
    if not check_tangent(pres, quot, delta):
        raise ExtensionFailure("delta is not a valid tangent")
    u_reps = [quot.rep_poly(dg - 1, img)
              for dg, img in zip(pres.gen_degrees, delta.images)]
    d_reps = [diff(gen, code) for gen in pres.generators]

    # the generators restrict to the two deformations being extended:
    # setting eps' to zero leaves g_j - eps u_j (the given tangent), and
    # setting eps to zero leaves the translation tangent, whose images
    # are the classes of the literal derivatives
    from .tangent import derivative_tangent

    d_tangent = derivative_tangent(i, pres, quot)
    for j, (dgj, dg) in enumerate(zip(d_reps, pres.gen_degrees)):
        if quot.reduce(dgj, dg - 1) != list(d_tangent.images[j]):
            raise ExtensionFailure("translation restriction mismatch")

    solver_by_degree = {}

    def express(w: Poly, n: int):
        """Write an ideal element exactly over the generators (canonical)."""
        if n not in solver_by_degree:
            solver_by_degree[n] = LinearSolver(
                syzygy_coordinate_matrix(pres.generators, n, quot.codes))
        sol = solver_by_degree[n].solve(vectorize(w, quot.codes, n))
        out = []
        pos = 0
        for _bi, monos in _syzygy_blocks(pres.generators, n, quot.codes):
            coeffs = sol[pos:pos + len(monos)]
            pos += len(monos)
            out.append(Poly({m: to_q(c) for m, c in zip(monos, coeffs) if c}))
        return out

    kappa_checked = 0
    for s_idx, (syz, sd) in enumerate(zip(pres.syzygies, pres.syz_degrees)):
        w_eps = Poly.zero()
        w_epsp = Poly.zero()
        kappa = Poly.zero()
        for v, u, dgj in zip(syz, u_reps, d_reps):
            if v.is_zero():
                continue
            if u:
                w_eps = w_eps + v * u
                du = diff(u, code)
                if du:
                    kappa = kappa + v * du
            if dgj:
                w_epsp = w_epsp + v * dgj
        if w_eps and not quot.in_ideal(w_eps, sd - 1):
            raise ExtensionFailure(f"syzygy {s_idx}: eps layer escapes the ideal")
        if w_epsp and not quot.in_ideal(w_epsp, sd - 1):
            raise ExtensionFailure(f"syzygy {s_idx}: eps' layer escapes the ideal")
        a_coeffs = express(w_eps, sd - 1) if w_eps else None
        c_coeffs = express(w_epsp, sd - 1) if w_epsp else None
        if a_coeffs:
            for a_j, dgj in zip(a_coeffs, d_reps):
                if a_j and dgj:
                    kappa = kappa - a_j * dgj
        if c_coeffs:
            for c_j, uj in zip(c_coeffs, u_reps):
                if c_j and uj:
                    kappa = kappa - c_j * uj
        if kappa:
            to_check = [kappa]
            if sd == 3:
                to_check.extend(Poly.var(l) * kappa for l in ALPHA)
            for w in to_check:
                if not quot.in_ideal(w):
                    raise ExtensionFailure(
                        f"syzygy {s_idx}: second-order class does not vanish")
                kappa_checked += 1
        else:
            kappa_checked += 1

    _dense_bi_dual_slices(pres, quot, u_reps, d_reps, code)
    return {"kappa_classes_checked": kappa_checked}


def _dense_bi_dual_slices(pres, quot, u_reps, d_reps, code, max_degree=3):
    """Rank check of the two-parameter deformation ideal in low degrees."""
    from .linalg import rank

    codes = quot.codes
    for n in range(2, max_degree + 1):
        dims = [len(monomial_basis(codes, n - w)[0]) if n - w >= 0 else 0
                for w in (0, 1, 1, 2)]
        offs = [0]
        for dsize in dims[:-1]:
            offs.append(offs[-1] + dsize)
        total = sum(dims)
        degs = [n, n - 1, n - 1, n - 2]
        rows = []

        def add_row(parts):
            row = [_ZERO] * total
            for block, poly in enumerate(parts):
                if poly is None or poly.is_zero():
                    continue
                for r, c in enumerate(vectorize(poly, codes, degs[block])):
                    if c:
                        row[offs[block] + r] = c
            rows.append(row)

        for j, (gen, dg) in enumerate(zip(pres.generators, pres.gen_degrees)):
            u, dgj = u_reps[j], d_reps[j]
            ddu = diff(u, code) if u else Poly.zero()
            layer_parts = (
                (0, (gen, -u if u else None, -dgj if dgj else None,
                     ddu if ddu else None)),
                (1, (None, gen, None, -dgj if dgj else None)),
                (1, (None, None, gen, -u if u else None)),
                (2, (None, None, None, gen)),
            )
            for w, parts in layer_parts:
                mdeg = n - dg - w
                if mdeg < 0:
                    continue
                for m in monomial_coordinates(codes, mdeg):
                    mp = Poly.monomial(m)
                    add_row(tuple(p * mp if p else None for p in parts))
        got = rank(Mat(rows, total)) if rows else 0
        want = total - (quot.rep_count(n) + 2 * quot.rep_count(n - 1)
                        + quot.rep_count(n - 2))
        if got != want:
            raise ExtensionFailure(
                f"two-parameter slice {n}: ideal rank {got}, expected {want}")
