import random
from fractions import Fraction

import pytest
import sympy

from courant_deform.algebra import CourantPairData
from courant_deform.cohomology import named_cochain
from courant_deform.deformation import (BaseError, CertificateError, DeformationData, DeformationError,
                                        ExtensionError,
                                        ExtensionSpec, HomError, LocalBase, RingHom, check_deformation,
                                        classifying_map, derivations, equivalent_infinitesimal,
                                        extend_deformation, fiber, harrison_cohomology, obstruction, push_out,
                                        random_triple, solve_correction, summary_for, triple_add,
                                        trivial_deformation, universal_infinitesimal,
                                        vector_to_triple, versal, versal_step, zero_triple)
from courant_deform.documents import AlgebraDocument, dumps
from courant_deform.exactmath import ExactMatrix
from courant_deform.fixtures import CORRECTED_BASES

from conftest import pair
from oracles import delta_matrix, derivation_oracle, harrison_oracle, harrison_space, oracle_liftable


@pytest.fixture(scope="module")
def eta1(p1_one):
    return universal_infinitesimal(p1_one, "poisson")


def along(eta, i, k=2):
    """Push eta along g_i -> t, other generators -> 0, into K[t]/(t^k)."""
    R = LocalBase.truncated(k)
    imgs = [[1 if j == i else 0] + [0] * (R.n - 1) for j in range(eta.base.n)]
    return push_out(eta, RingHom.from_ideal_images(eta.base, R, imgs))


# --- bases and homs ---------------------------------------------------------------


def test_truncated_base():
    R = LocalBase.truncated(4)
    assert R.dimR == 4 and R.labels == ["t", "t^2", "t^3"]
    assert R.validate() == []
    assert R.nilpotency_index() == 4
    assert R.mul([0, 1, 0, 0], [0, 0, 1, 0]) == [0, 0, 0, 1]
    assert R.order([0, 0, 1, 0]) == 2


def test_ground_and_infinitesimal():
    K = LocalBase.ground()
    assert K.dimR == 1 and K.nilpotency_index() == 1
    C = LocalBase.infinitesimal(3)
    assert C.is_infinitesimal() and C.nilpotency_index() == 2


def test_invalid_bases():
    mult = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    mult[0][1][2] = 1  # m1 m2 = m3 but m2 m1 = 0
    bad = LocalBase(3, mult)
    assert any("commutative" in e for e in bad.validate())
    loop = LocalBase(1, [[[1]]])
    assert any("nilpotent" in e for e in loop.validate())
    with pytest.raises(BaseError):
        LocalBase(2, [[[0]]])


def test_ring_homs():
    R2, R3 = LocalBase.truncated(2), LocalBase.truncated(3)
    assert RingHom.from_ideal_images(R3, R2, [[1], [0]]).matrix == [[1, 0, 0], [0, 1, 0]]
    with pytest.raises(HomError):
        # t^2 must go to (image of t)^2 = t^2 != 0 in K[t]/(t^3)
        RingHom.from_ideal_images(R3, R3, [[1, 0], [0, 0]])
    with pytest.raises(HomError):
        RingHom(R2, R2, [[1, 1], [0, 1]])


# --- deformation axioms -----------------------------------------------------------


def test_trivial_deformation_passes(p2):
    for k in (1, 2, 3):
        assert check_deformation(trivial_deformation(p2, LocalBase.truncated(k), "poisson")) == []
        assert check_deformation(trivial_deformation(p2, LocalBase.truncated(k), "courant")) == []


def test_non_cocycle_gives_associativity_witness(p1_one):
    t = zero_triple(p1_one)
    a1 = ExactMatrix.zeros(3, 9)
    a1.entries[0][0] = Fraction(1)  # e1 e1 -> e1, not a Hochschild cocycle
    d = DeformationData(LocalBase.truncated(2), p1_one, "courant", [(a1, t[1], t[2])])
    wit = check_deformation(d)
    assert any(w.axiom == "associativity" and w.order == 1 for w in wit)


def test_anchor_and_bracket_must_agree_for_poisson_type(p1_one):
    t = zero_triple(p1_one)
    b = ExactMatrix.zeros(3, 9)
    b.entries[0][1] = Fraction(1)
    with pytest.raises(DeformationError):
        DeformationData(LocalBase.truncated(2), p1_one, "poisson", [(t[0], t[1], b)])


def _doc_text(cp):
    return dumps(AlgebraDocument("courant-pair", "x", cp, ""))


@pytest.mark.parametrize("name,dim", [("p1", 8), ("p2", 10)])
def test_universal_infinitesimal(name, dim):
    cp = pair(name, "1" if name == "p1" else None)
    eta = universal_infinitesimal(cp, "poisson")
    assert eta.base.dimR == dim
    assert check_deformation(eta) == []
    back = push_out(eta, RingHom.augmentation(eta.base))
    assert back.base.n == 0 and back.triples == []
    assert _doc_text(fiber(back)) == _doc_text(cp)
    assert _doc_text(fiber(eta)) == _doc_text(cp)


def test_universal_with_listed_representatives(p1_one):
    reps = [named_cochain("p1", nm, p1_one, corrected=True) for nm in CORRECTED_BASES[("p1", "poisson")]]
    eta = universal_infinitesimal(p1_one, "poisson", reps)
    assert check_deformation(eta) == []
    # g1 is dual to alpha1, whose bracket part has X1 at (e3; e1 e1)
    a1, a2, a3 = eta.triples[0]
    assert a3.entries[2][0] == 1 and a2 == a3


def test_push_out_identity_and_one_generator(eta1):
    assert push_out(eta1, RingHom.identity(eta1.base)) == eta1
    d = along(eta1, 0)
    assert d.base.n == 1 and d.triples[0] == eta1.triples[0]
    assert check_deformation(d) == []


def test_universal_property(eta1):
    rng = random.Random(1)
    summ = summary_for("poisson", 2, eta1.cp)
    cx = summ.complex
    d = along(eta1, 2)
    # move it inside its class
    gamma = [Fraction(rng.randint(-3, 3)) for _ in range(cx.dim(1))]
    shift = vector_to_triple(cx.total_delta(1).apply(gamma), "poisson", eta1.cp)
    d = DeformationData(d.base, d.cp, d.flavor, [triple_add(d.triples[0], shift)])
    hom = classifying_map(d, eta1)
    assert [hom.matrix[1][i + 1] for i in range(eta1.base.n)] == [int(i == 2) for i in range(eta1.base.n)]
    assert equivalent_infinitesimal(push_out(eta1, hom), d)


# --- equivalence ---------------------------------------------------------------------


def _perturbed(eta, rng, cocycle=False):
    summ = summary_for(eta.flavor, 2, eta.cp)
    cx = summ.complex
    triples = []
    for t in eta.triples:
        gamma = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(cx.dim(1))]
        triples.append(triple_add(t, vector_to_triple(cx.total_delta(1).apply(gamma), eta.flavor, eta.cp)))
    if cocycle:
        k = rng.randrange(len(triples))
        coeffs = [rng.randint(-2, 2) for _ in summ.nu]
        coeffs[rng.randrange(len(coeffs))] = rng.choice([1, -1, 3])
        v = [sum(c * r.vector()[i] for c, r in zip(coeffs, summ.nu)) for i in range(cx.dim(2))]
        triples[k] = triple_add(triples[k], vector_to_triple(v, eta.flavor, eta.cp))
    return DeformationData(eta.base, eta.cp, eta.flavor, triples)


def test_equivalent_to_itself(eta1):
    assert equivalent_infinitesimal(eta1, eta1)


def test_coboundary_perturbations_are_equivalent(eta1):
    rng = random.Random(20)
    for _ in range(20):
        assert equivalent_infinitesimal(eta1, _perturbed(eta1, rng))


def test_class_changing_perturbations_are_not(eta1):
    rng = random.Random(10)
    for _ in range(10):
        assert not equivalent_infinitesimal(eta1, _perturbed(eta1, rng, cocycle=True))


def test_trivial_versus_nonzero_class(eta1):
    d = along(eta1, 0)
    assert not equivalent_infinitesimal(trivial_deformation(eta1.cp, d.base, "poisson"), d)


def test_equivalence_needs_infinitesimal_base(p2):
    d = trivial_deformation(p2, LocalBase.truncated(3), "poisson")
    with pytest.raises(BaseError):
        equivalent_infinitesimal(d, d)


# --- obstructions --------------------------------------------------------------------


def test_trivial_extends_with_zero_class(p2):
    d = trivial_deformation(p2, LocalBase.ground(), "poisson")
    res = obstruction(d, ExtensionSpec.truncated(1))
    assert not any(res.theta.vector()) and res.vanishes()
    ext = extend_deformation(d, ExtensionSpec.truncated(1), [zero_triple(p2)])
    assert ext == trivial_deformation(p2, LocalBase.truncated(2), "poisson")


def test_second_order_lifting_matches_oracle(eta1):
    verdicts = {}
    for i in range(eta1.base.n):
        d = along(eta1, i)
        ext = ExtensionSpec.truncated(2)
        res = obstruction(d, ext)
        cx = res.summary.complex
        assert not any(cx.total_delta(3).apply(res.theta.vector()))
        liftable, theta = oracle_liftable(d, ext)
        assert res.theta.vector() == theta
        assert res.vanishes() == liftable
        gamma = solve_correction(d, ext)
        assert (gamma is not None) == liftable
        if gamma is not None:
            new = extend_deformation(d, ext, gamma)
            assert check_deformation(new) == []
            assert push_out(new, ext.projection()) == d
            assert _doc_text(fiber(new)) == _doc_text(eta1.cp)
        verdicts[i] = liftable
    assert [i for i, ok in verdicts.items() if not ok] == [4, 5]


def test_obstruction_class_is_lift_independent(p2):
    eta = universal_infinitesimal(p2, "poisson")
    # a one-dimensional extension of C_1: g1 g1 = n1
    n = eta.base.n
    psi = [[1 if (i, j) == (0, 0) else 0 for j in range(n)] for i in range(n)]
    ext = ExtensionSpec(eta.base, [psi])
    a = obstruction(eta, ext, [random_triple(p2, "poisson", random.Random(1))], recheck_seed=None)
    b = obstruction(eta, ext, [random_triple(p2, "poisson", random.Random(2))], recheck_seed=None)
    assert a.classes == b.classes
    assert a.theta.vector() != b.theta.vector()


def test_bad_certificate_is_rejected(eta1):
    d = along(eta1, 0)
    ext = ExtensionSpec.truncated(2)
    bad = random_triple(eta1.cp, "poisson", random.Random(0))
    with pytest.raises(CertificateError):
        extend_deformation(d, ext, [bad])


def test_extension_must_be_commutative():
    R = LocalBase.truncated(3)
    with pytest.raises(ExtensionError):
        ExtensionSpec(R, [[[0, 1], [0, 0]]])


# --- Harrison cohomology ----------------------------------------------------------------


@pytest.fixture(scope="module")
def bases(p1_one):
    return {"K": LocalBase.ground(), "K[t]/t^2": LocalBase.truncated(2), "K[t]/t^3": LocalBase.truncated(3),
            "C1": universal_infinitesimal(p1_one, "poisson").base}


@pytest.mark.parametrize("name,dim", [("K", 0), ("K[t]/t^2", 1), ("K[t]/t^3", 1), ("C1", 7)])
def test_harrison_h1_is_derivations(bases, name, dim):
    R = bases[name]
    h = harrison_cohomology(R, 1)
    assert h.dimH == derivations(R) == derivation_oracle(R) == harrison_oracle(R, 1) == dim


def test_harrison_ground_field():
    K = LocalBase.ground()
    for q in (1, 2, 3):
        assert harrison_cohomology(K, q).dimH == 0 == harrison_oracle(K, q)


@pytest.mark.parametrize("k,q", [(2, 2), (3, 2), (2, 3), (3, 1)])
def test_harrison_against_oracle(k, q):
    R = LocalBase.truncated(k)
    assert harrison_cohomology(R, q).dimH == harrison_oracle(R, q)


def test_harrison_h2_dual_numbers():
    R = LocalBase.truncated(2)
    h = harrison_cohomology(R, 2)
    assert h.dimH == 1
    assert h.representatives == [{3: 1}]  # psi(t, t) = 1
    # the t^3 extension cocycle is closed and not a coboundary
    psi = sympy.Matrix([0, 0, 0, 1])
    assert (delta_matrix(R, 2) * psi).is_zero_matrix
    B = delta_matrix(R, 1) * harrison_space(2, 1)
    assert B.row_join(psi).rank() == B.rank() + 1
    ext = ExtensionSpec.truncated(2)
    assert ext.total_base() == LocalBase.truncated(3)


# --- versal step ------------------------------------------------------------------------


def test_versal_step_p1(eta1):
    st = versal_step(eta1.base, eta1)
    assert push_out(st.deformation, st.extension.projection()) == eta1
    assert check_deformation(st.deformation) == []
    assert (st.harrison_dim, st.obstruction_rank, st.kernel_dim) == (28, 3, 25)
    assert st.base.dimR == eta1.base.dimR + 25


def test_versal_with_zero_cohomology():
    # A = K with e e = e and L = 0: H^2 = 0, so C_1 = K and the step does nothing
    cp = CourantPairData(1, 0, [[[1]]], [], [])
    steps = versal(cp, "courant", depth=2)
    assert steps[0].base.n == 0
    assert steps[1].base.n == 0 and steps[1].kernel_dim == 0
