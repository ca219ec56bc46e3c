import random

import pytest

from hedgehog.errors import PrerequisiteFailed
from hedgehog.apolarity import ApolarCubic
from hedgehog.linalg import Mat, QQ, solve
from hedgehog.parse import parse_cubic
from hedgehog.poly import ALPHA, Poly, vectorize
from hedgehog.resolution import (_koszul_beta2,
                                 build_adjusted_presentation,
                                 ideal_degree_piece, minimal_generators,
                                 minimal_syzygies, perp_pieces, syzygy_degree,
                                 syzygy_rows_to_vectors)


def a(i):
    return Poly.var(ALPHA[i - 1])


def test_ideal_degree_piece_perp(apolar):
    gens = apolar.perp(2).polys()
    assert ideal_degree_piece(gens, 3).dim == 55
    assert ideal_degree_piece(gens, 4).dim == 126


def test_ideal_degree_piece_single_variable():
    assert ideal_degree_piece([a(1)], 2).dim == 6


def test_minimal_generators_reference(apolar):
    beta0 = minimal_generators(perp_pieces(apolar, 4), 4)
    assert {d: v for d, v in beta0.items() if d >= 2} == {2: 15, 3: 0, 4: 0}


def test_minimal_generators_monomial_cubic():
    ap = ApolarCubic(parse_cubic("x1^3"))
    beta0 = minimal_generators(perp_pieces(ap, 4), 4)
    assert beta0[1] == 5
    assert beta0[2] == 0
    assert beta0[3] == 0
    assert beta0[4] == 1


def test_minimal_generators_zero_ideal():
    assert minimal_generators({}, 3) == {0: 0, 1: 0, 2: 0, 3: 0}


def test_syzygy_degree_reference(apolar):
    assert syzygy_degree(apolar.perp(2).polys(), 3).nrows == 35


def test_koszul_pair_syzygy():
    gens = [a(1) ** 2, a(2) ** 2]
    kern = syzygy_degree(gens, 4)
    # Koszul relation (g, -f) lives in the degree-4 kernel
    target = (vectorize(a(2) ** 2, ALPHA, 2)
              + [-c for c in vectorize(a(1) ** 2, ALPHA, 2)])
    coords = Mat([[kern.rows[r][c] for r in range(kern.nrows)]
                  for c in range(kern.ncols)], kern.nrows)
    solve(coords, target)  # raises if the Koszul syzygy is not in the span


def test_single_generator_has_no_syzygies():
    for d in range(2, 6):
        assert syzygy_degree([a(1) ** 2], d).nrows == 0


def test_minimal_syzygies_reference(apolar, betti):
    assert betti.beta1 == {3: 35, 4: 0, 5: 0}


def test_minimal_syzygies_principal_ideal():
    assert minimal_syzygies([a(3) ** 2], 5) == {3: 0, 4: 0, 5: 0}


def test_minimal_syzygies_small_pair():
    beta1 = minimal_syzygies([a(1) ** 2, a(1) * a(2)], 4)
    assert beta1 == {3: 1, 4: 0}
    kern = syzygy_degree([a(1) ** 2, a(1) * a(2)], 3)
    vecs = syzygy_rows_to_vectors(kern, [a(1) ** 2, a(1) * a(2)], 3)
    assert len(vecs) == 1
    v = vecs[0]
    assert v[0] * a(1) ** 2 + v[1] * a(1) * a(2) == Poly.zero()


def test_koszul_route_matches_literal(apolar):
    gens = apolar.perp(2).polys()
    literal = minimal_syzygies(gens, 4)
    assert _koszul_beta2(gens, 3) == literal[3] == 35
    assert _koszul_beta2(gens, 4) == literal[4] == 0


def test_betti_independent_of_generator_basis(apolar):
    gens = apolar.perp(2).polys()
    rng = random.Random(11)
    for _ in range(2):
        # random invertible change: a product of elementary operations
        new_gens = list(gens)
        for _ in range(8):
            i, j = rng.sample(range(15), 2)
            c = rng.choice([-2, -1, 1, 2])
            new_gens[i] = new_gens[i] + new_gens[j] * c
        s = rng.randrange(15)
        new_gens[s] = new_gens[s] * QQ(rng.choice([-3, -1, 2]), 2)
        assert minimal_syzygies(new_gens, 4) == {3: 35, 4: 0}
        assert ideal_degree_piece(new_gens, 3).dim == 55


def test_adjusted_presentation_shape(apolar, betti, pres):
    assert len(pres.generators) == 16
    assert pres.gen_degrees == [2] * 15 + [3]
    assert len(pres.syzygies) == 41
    assert pres.syz_degrees == [3] * 35 + [4] * 6


def test_adjusted_presentation_relations_exact(apolar, pres):
    pres.verify_syzygies()
    # the six degree-4 relations have the variable in the last slot
    for k, syz in enumerate(pres.syzygies[35:]):
        assert syz[15] == Poly.var(ALPHA[k])
        total = Poly.zero()
        for coeff, gen in zip(syz, pres.generators):
            total = total + coeff * gen
        assert total.is_zero()


def test_socle_solvability_certificate(apolar):
    # -a_k g lies in degree 4 of the perp, which is everything
    assert apolar.perp(4).dim == 126


def test_presentation_requires_conditions():
    ap = ApolarCubic(parse_cubic("x1^3"))
    with pytest.raises(PrerequisiteFailed):
        build_adjusted_presentation(ap)


def test_presentation_rejects_bad_socle(apolar, betti):
    with pytest.raises(PrerequisiteFailed):
        build_adjusted_presentation(apolar, betti, g=a(1) ** 3)


def test_degree_six_safety_margin(apolar):
    # the quotient algebra vanishes in degree four, so the degree-six
    # Koszul middle term is empty and no late syzygies can appear
    assert _koszul_beta2(apolar.perp(2).polys(), 6) == 0


def test_routes_agree_on_complete_intersections():
    a1, a2, a3 = (Poly.var(ALPHA[i]) for i in range(3))
    assert _koszul_beta2([a1 ** 2, a2 ** 2], 4) == 1
    assert minimal_syzygies([a1 ** 2, a2 ** 2], 5) == {3: 0, 4: 1, 5: 0}
    assert _koszul_beta2([a1 ** 2, a2 ** 2, a3 ** 2], 4) == 3
    assert minimal_syzygies([a1 ** 2, a2 ** 2, a3 ** 2], 5) == {3: 0, 4: 3, 5: 0}
