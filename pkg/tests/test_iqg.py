"""Presentation relations and the q-identity toolbox."""

import pytest

from ihall.ihall import HallAlgebra
from ihall.iqg import (
    Psi,
    adu_triples,
    binomial_product_residual,
    build_relation_suite,
    km1_residual,
    km3_residual,
    km5_residual,
    kmrd_residual,
    p_exponent,
    qbinom_alt_residual,
    qbinom_high_residual,
    qbinom_low_residual,
    relation_residual,
    run_identity_suites,
    run_t_suite,
    t1_value,
    t_value,
    verify_presentation,
)
from ihall.iquiver import IQuiver, builtin_iquiver


def test_suite_shapes():
    sizes = {
        "rank1-split": 1,
        "a2-split": 9,
        "a3-quasisplit": 20,
        "kronecker-r1": 7,
    }
    for name, want in sizes.items():
        suite = build_relation_suite(builtin_iquiver(name))
        assert len(suite) == want
        assert len({inst.label for inst in suite}) == want


def test_suite_kinds_a2():
    suite = build_relation_suite(builtin_iquiver("a2-split"))
    kinds = sorted(inst.kind for inst in suite)
    assert kinds == ["fixed-serre"] * 4 + ["torus-b"] * 4 + ["torus-torus"]


def test_suite_kinds_kronecker():
    suite = build_relation_suite(builtin_iquiver("kronecker-r1"))
    kinds = sorted(inst.kind for inst in suite)
    assert kinds == ["pair"] * 2 + ["torus-b"] * 4 + ["torus-torus"]


def test_suite_requires_virtually_acyclic():
    iq = IQuiver(
        ["1", "2"],
        [("a", "1", "2"), ("b", "2", "1")],
        tau={"1": "1", "2": "2"},
        tau_arrows={"a": "a", "b": "b"},
    )
    with pytest.raises(ValueError):
        build_relation_suite(iq)


def test_presentation_residuals_vanish():
    for name in ("a2-split", "kronecker-r1"):
        for q in (2, 3):
            alg = HallAlgebra(builtin_iquiver(name), q)
            for label, res in verify_presentation(alg):
                assert res.is_zero(), label


def test_single_residual_nonvacuous():
    # perturbing the target q makes a fixed-serre residual visibly nonzero
    alg = HallAlgebra(builtin_iquiver("a2-split"), 2)
    psi = Psi(alg)
    suite = build_relation_suite(alg.iq)
    inst = next(i for i in suite if i.kind == "fixed-serre")
    assert relation_residual(alg, inst, psi).is_zero()
    # a single summand of the alternating sum is nonzero on its own
    assert not (psi.B(inst.i) * psi.B(inst.j) * psi.B(inst.i)).is_zero()


def test_psi_normalization():
    alg = HallAlgebra(builtin_iquiver("a2-split"), 2)
    psi = Psi(alg)
    assert psi.B("1") == alg.simple("1").scale(-1)
    assert psi.K("1") == alg.torus_k("1").scale(alg.scalar(-1) / 2)

    algk = HallAlgebra(builtin_iquiver("kronecker-r1"), 2)
    psik = Psi(algk)
    # representative of the orbit carries the minus sign, its partner a v
    assert psik.B("1") == algk.simple("1").scale(-1)
    assert psik.B("2") == algk.simple("2").scale(algk.v_pow(1))
    assert psik.K("1") == algk.torus_k("1").scale(algk.v_pow(1))


def test_p_exponent_value():
    assert p_exponent(1, 1, 0, 1, 1) == 3
    assert p_exponent(1, 2, 1, 1, 1) == 2


def test_t_hand_values():
    assert t_value(1, 0, 1).is_zero()
    assert t_value(2, 1, 0).is_zero()
    assert t1_value(2, 1, 0).is_zero()
    # outside the stated domain the sum need not vanish
    assert not t_value(1, 0, 0).is_zero()


def test_adu_domain():
    triples = list(adu_triples(2))
    assert len(triples) == 9
    assert (0, 0, 1) in triples
    assert (2, 1, 1) in triples
    assert (1, 0, 0) not in triples
    for a, d, u in triples:
        assert 0 <= d <= (a + 1) // 2
        assert 0 <= u <= a + 1 - 2 * d
        assert (d, u) != (0, 0)


def test_t_sums_vanish_small():
    for a, d, u in adu_triples(4):
        assert t_value(a, d, u).is_zero(), (a, d, u)
        assert t1_value(a, d, u).is_zero(), (a, d, u)


def test_km_identities_small():
    for p in range(1, 7):
        assert km1_residual(p).is_zero()
        assert km3_residual(p).is_zero()
        assert km5_residual(p).is_zero()
    for d in range(1, 7):
        assert kmrd_residual(d).is_zero()


def test_qbinom_identities_small():
    for p in range(1, 7):
        assert qbinom_low_residual(p).is_zero()
        assert qbinom_high_residual(p).is_zero()
        for d in range(-(p - 1), p):
            if (d - (p - 1)) % 2 == 0:
                assert qbinom_alt_residual(p, d).is_zero()
    for p in range(4):
        for zexp in (-2, 0, 1, 3):
            assert binomial_product_residual(p, zexp).is_zero()


def test_runner_names():
    names = [name for name, ok in run_identity_suites(pmax=4, dmax=4, amax=2)]
    assert names == [
        "km-factorial",
        "km-double-factorial",
        "km-binomial-product",
        "km-alternating",
        "qbinom-alternating",
        "qbinom-low",
        "qbinom-high",
    ]
    assert all(ok for _, ok in run_identity_suites(pmax=4, dmax=4, amax=2))
    assert all(ok for _, ok in run_t_suite(amax=3))
