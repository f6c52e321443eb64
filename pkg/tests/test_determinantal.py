import numpy as np
import pytest

from sextica.bundles import BundleSpec
from sextica.determinantal import (
    branch_sextic,
    contraction_holds,
    corank2_ideal,
    is_probably_irreducible,
    jacobian_ideal,
    koszul_presentation,
    nodality_check,
    plane_double_contact,
    presentation_fitting,
    sample_phi,
    section_from_matrix,
    section_space,
)
from sextica.bundles import cohomology_table
from sextica.errors import DegenerateError
from sextica.ideals import GradedIdeal, ideal_degree, ideal_equal, saturate_irrelevant
from sextica.matrix import MatrixOfForms
from sextica.pipeline import PRESETS
from sextica.poly import HomogeneousPoly, LinearChange, parse_poly

P = 32003


def F(s):
    return parse_poly(s, P)


def diag_section(seed=0):
    rng = np.random.default_rng(seed)
    q = [HomogeneousPoly.random(P, 2, rng) for _ in range(3)]
    M = MatrixOfForms(P, [-2] * 3, [-4] * 3, [[q[0], 0, 0], [0, q[1], 0], [0, 0, q[2]]])
    return section_from_matrix(PRESETS["Z32"].spec, M), q


def test_shapes_forced_by_twists():
    S = sample_phi(PRESETS["Z32"].spec, 42, P)
    assert S.realized.shape == (3, 3) and S.realized.is_symmetric()
    assert all(f.degree == 2 for row in S.realized.entries for f in row)
    T = sample_phi(PRESETS["Z35"].spec, 3, P)
    assert T.realized.shape == (6, 6) and all(f.degree == 1 for row in T.realized.entries for f in row)


def test_sampling_is_deterministic():
    a = sample_phi(PRESETS["Z31"].spec, 9, P)
    b = sample_phi(PRESETS["Z31"].spec, 9, P)
    assert a.coefficients == b.coefficients
    assert a.realized.to_json() == b.realized.to_json()
    assert sample_phi(PRESETS["Z31"].spec, 10, P).coefficients != a.coefficients


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_lifted_block_kills_variables(seed):
    S = sample_phi(PRESETS["Z40"].spec, seed, P)
    assert S.lifted and S.realized.is_symmetric() and contraction_holds(S)


@pytest.mark.parametrize("name,m", [("Z31", 7), ("Z32", 6), ("Z35", 7), ("Z40", 6), ("A24", 6)])
def test_section_space_dimension_is_h0(name, m):
    spec = PRESETS[name].spec
    assert section_space(spec, P).dim == cohomology_table(spec, "S2E", m).dims[0]


def test_branch_sextic_degree_and_irreducibility(section):
    for name in ("Z31", "Z32"):
        B = branch_sextic(section(name, 1))
        assert B.degree == 6 and is_probably_irreducible(B)


def test_split_branch_equals_determinant(section):
    S = section("Z32", 1)
    assert branch_sextic(S) == S.realized.determinant().monic()


def test_diagonal_matrix_is_flagged():
    S, q = diag_section()
    B = branch_sextic(S)
    assert B == (q[0] * q[1] * q[2]).monic()
    assert not is_probably_irreducible(B)
    with pytest.raises(DegenerateError):
        corank2_ideal(S)


def test_corank2_degrees(section):
    assert ideal_degree(corank2_ideal(section("Z32", 2))) == 32
    assert ideal_degree(corank2_ideal(section("Z35", 2))) == 35


def test_jacobian_examples(section):
    fermat = F("x0^6 + x1^6 + x2^6 + x3^6")
    assert ideal_degree(jacobian_ideal(fermat)) == 0
    rep = nodality_check(fermat)
    assert rep.nodal and rep.dimension == -1
    S = section("Z31", 2)
    J = jacobian_ideal(branch_sextic(S))
    assert ideal_degree(J) == 31 and ideal_equal(J, corank2_ideal(S))
    rng = np.random.default_rng(1)
    bad = F("x0^2") * HomogeneousPoly.random(P, 4, rng)
    rep = nodality_check(bad)
    assert not rep.nodal and rep.dimension > 0


def test_nodal_sample_and_a2_point(section):
    rep = nodality_check(branch_sextic(section("Z35", 3)))
    assert rep.nodal and rep.degree == 35 and rep.eliminant_degree == 35
    rng = np.random.default_rng(2)
    B = F("x3^4*x0*x1 + x3^3*x2^3")
    for e in HomogeneousPoly.random(P, 6, rng).terms:
        if e[3] <= 2 and e != (0, 0, 3, 3):
            B = B + HomogeneousPoly(P, 6, {e: int(rng.integers(1, P))})
    rep = nodality_check(B)
    assert not rep.nodal


def test_sing_contains_w(section):
    for name in ("Z31", "A24"):
        S = section(name, 4)
        J = jacobian_ideal(branch_sextic(S))
        assert J.is_subset_of(corank2_ideal(S))


def test_plane_contact_examples(section):
    rng = np.random.default_rng(6)
    h = F("x0 + 2*x1 + 3*x2 + 5*x3")
    C = HomogeneousPoly.random(P, 3, rng)
    B = C * C + h * HomogeneousPoly.random(P, 5, rng)
    pc = plane_double_contact(B, h)
    assert pc is not None and pc.reduced
    # C agrees with the recovered cubic on the plane, up to scalar
    from sextica.determinantal import restrict_to_plane

    Cr, _ = restrict_to_plane(C, h)
    assert Cr.monic() == pc.cubic.monic()
    Bz = branch_sextic(section("Z32", 1))
    assert plane_double_contact(Bz, HomogeneousPoly.random(P, 1, rng)) is None
    x3 = F("x3")
    B = F("x0^6") + x3 * HomogeneousPoly.random(P, 5, rng)
    pc = plane_double_contact(B, x3)
    assert pc is not None and pc.cubic == F("x0^3") and not pc.reduced


@pytest.mark.parametrize("name", ["Z32", "Z35"])
def test_fitting_ideals_presentation_independent(name, section):
    S = section(name, 5)
    M = S.realized
    n = M.shape[0]
    rng = np.random.default_rng(8)

    def const(rng):
        while True:
            A = rng.integers(0, P, (n, n))
            from sextica.linalg import rank_mod

            if rank_mod(A, P) == n:
                return A

    A, Bm = const(rng), const(rng)
    ent = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = HomogeneousPoly.zero(P, M[0, 0].degree)
            for k in range(n):
                for l in range(n):
                    c = int(A[i, k]) * int(Bm[l, j]) % P
                    if c:
                        acc = acc + M[k, l].scale(c)
            ent[i][j] = acc
    N = MatrixOfForms(P, M.row_twists, M.col_twists, ent)
    assert ideal_equal(presentation_fitting(N, 1), corank2_ideal(S))
    assert presentation_fitting(N, 0).basis[0] == branch_sextic(S)


def test_koszul_presentation_of_omega_family(section):
    S = section("Z40", 1)
    P7 = koszul_presentation(S)
    assert P7.shape == (7, 9)
    assert presentation_fitting(P7, 0).basis[0] == branch_sextic(S)
    assert ideal_equal(presentation_fitting(P7, 1), corank2_ideal(S))
