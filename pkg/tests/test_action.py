import random

import pytest

from homolift import action as ac
from homolift import surfaces as sf
from homolift import zkmod as zk
from oracles import all_invariant_subgroups, all_vectors, subgroup_as_set


def order3_genus0(k):
    """Pair blocks on (1,2), twist on 3: the genus-3 order-3 action."""
    return sf.order3_action(0, 4, 1, k)


def s3_genus4(k):
    return sf.s3_action(5, k)


def test_word_matrix_homomorphism():
    act = s3_genus4(3).action
    w1 = act.word_matrix("r.h")
    assert w1.rows == (act.matrix("r") @ act.matrix("h")).rows
    assert act.word_matrix("r.r.r").rows == zk.MatrixZk.identity(3, 8).rows
    assert act.word_matrix("r^-1").rows == act.inverse_matrix("r").rows
    assert act.word_matrix("r^2").rows == (act.matrix("r") @ act.matrix("r")).rows


def test_action_requires_invertible_matrices():
    bad = zk.MatrixZk(zk.Modulus(4), ((2, 0), (0, 1)))
    with pytest.raises(zk.NotInvertible):
        ac.Action(zk.Modulus(4), 2, ("x",), (bad,))


def test_full_module_always_invariant():
    setup = s3_genus4(3)
    assert ac.is_invariant(setup.action, zk.full_module(3, 8))


def test_sec611_n1_not_invariant():
    setup = order3_genus0(2)
    g = setup.genus
    n1 = zk.span(2, 2 * g, [
        sf.basis_vector(2, g, "a", 1).coords,
        sf.basis_vector(2, g, "a", 3).coords,
        sf.basis_vector(2, g, "b", 1).coords,
        sf.basis_vector(2, g, "b", 2).coords,
        sf.basis_vector(2, g, "b", 3).coords,
    ])
    assert not ac.is_invariant(setup.action, n1)


def test_sec633_n1_invariant():
    setup = sf.order3_action(1, 5, 1, 3)
    g = setup.genus
    rows = [
        sf.combo(3, g, ("a", 1, 1), ("a", 2, -1)).coords,
        sf.combo(3, g, ("a", 1, 1), ("a", 3, -1)).coords,
    ]
    rows += [sf.basis_vector(3, g, "a", i).coords for i in range(4, 8)]
    rows += [sf.basis_vector(3, g, "b", i).coords for i in range(1, 8)]
    n1 = zk.span(3, 2 * g, rows)
    assert len(n1.rows) == 13
    assert ac.is_invariant(setup.action, n1)


def test_minimal_closure_empty_is_trivial():
    setup = s3_genus4(3)
    assert ac.minimal_invariant_subgroup(setup.action, []).is_trivial()


def test_minimal_closure_bg_free_cyclic():
    setup = sf.free_cyclic_action(2, 1, 4)
    bg = setup.defect
    closure = ac.minimal_invariant_subgroup(setup.action, [bg])
    assert closure.rows == zk.span(4, 6, [bg.coords]).rows


def test_minimal_closure_bg_s3():
    setup = s3_genus4(3)
    bg = sf.basis_vector(3, 4, "b", 4)
    closure = ac.minimal_invariant_subgroup(setup.action, [bg])
    assert closure.rows == zk.span(3, 8, [bg.coords]).rows


def test_core_of_invariant_subgroup_is_itself():
    setup = s3_genus4(3)
    g = setup.genus
    n1 = zk.span(3, 2 * g, [
        sf.basis_vector(3, g, "a", i).coords for i in (1, 2, 3)
    ] + [sf.basis_vector(3, g, "b", i).coords for i in (1, 2, 3)])
    assert ac.is_invariant(setup.action, n1)
    assert ac.core(setup.action, n1).rows == n1.rows


def test_core_sec611():
    setup = order3_genus0(3)
    g = setup.genus
    n1 = zk.span(3, 2 * g, [
        sf.basis_vector(3, g, "a", 1).coords,
        sf.basis_vector(3, g, "a", 3).coords,
        sf.basis_vector(3, g, "b", 1).coords,
        sf.basis_vector(3, g, "b", 2).coords,
        sf.basis_vector(3, g, "b", 3).coords,
    ])
    expected = zk.span(3, 2 * g, [
        sf.basis_vector(3, g, "a", 3).coords,
        sf.basis_vector(3, g, "b", 1).coords,
        sf.basis_vector(3, g, "b", 2).coords,
        sf.basis_vector(3, g, "b", 3).coords,
    ])
    assert ac.core(setup.action, n1).rows == expected.rows


def test_core_sec744():
    setup = s3_genus4(3)
    g = setup.genus
    n1 = zk.span(3, 2 * g, [
        sf.basis_vector(3, g, "a", 1).coords,
        sf.basis_vector(3, g, "a", 2).coords,
        sf.basis_vector(3, g, "a", 4).coords,
        sf.basis_vector(3, g, "b", 1).coords,
        sf.basis_vector(3, g, "b", 2).coords,
        sf.basis_vector(3, g, "b", 3).coords,
    ])
    expected = zk.span(3, 2 * g, [
        sf.basis_vector(3, g, "a", 4).coords,
        sf.basis_vector(3, g, "b", 1).coords,
        sf.basis_vector(3, g, "b", 2).coords,
        sf.basis_vector(3, g, "b", 3).coords,
    ])
    assert ac.core(setup.action, n1).rows == expected.rows


def small_test_action():
    """Order-3 action on Z_3^4 (two companion blocks): 81 vectors."""
    comp = ((0, 2, 0, 0), (1, 2, 0, 0), (0, 0, 0, 2), (0, 0, 1, 2))
    mat = zk.MatrixZk(zk.Modulus(3), comp)
    return ac.Action(zk.Modulus(3), 4, ("psi",), (mat,))


def test_core_and_closure_extremal_vs_exhaustive():
    act = small_test_action()
    k, n = 3, 4
    subgroup_sets = all_invariant_subgroups(act, k, n)
    rng = random.Random(17)
    for _ in range(25):
        gens = [tuple(rng.randrange(k) for _ in range(n)) for _ in range(rng.randint(0, 2))]
        n1 = zk.span(k, n, gens or [(0,) * n])
        core = ac.core(act, n1)
        core_set = subgroup_as_set(core)
        n1_set = subgroup_as_set(n1)
        assert core_set <= n1_set
        assert ac.is_invariant(act, core)
        for inv in subgroup_sets:
            if inv <= n1_set:
                assert inv <= core_set
        closure = ac.minimal_invariant_subgroup(act, [zk.vector(k, g) for g in gens])
        closure_set = subgroup_as_set(closure)
        assert set(gens) <= closure_set
        assert ac.is_invariant(act, closure)
        for inv in subgroup_sets:
            if set(gens) <= inv:
                assert closure_set <= inv


def test_core_and_closure_monotone():
    act = small_test_action()
    k, n = 3, 4
    rng = random.Random(29)
    for _ in range(20):
        rows1 = [tuple(rng.randrange(k) for _ in range(n))]
        rows2 = rows1 + [tuple(rng.randrange(k) for _ in range(n))]
        s_small = zk.span(k, n, rows1)
        s_big = zk.span(k, n, rows2)
        assert zk.subgroup_contains(
            ac.core(act, s_big), ac.core(act, s_small)
        )
        c_small = ac.minimal_invariant_subgroup(act, [zk.vector(k, r) for r in rows1])
        c_big = ac.minimal_invariant_subgroup(act, [zk.vector(k, r) for r in rows2])
        assert zk.subgroup_contains(c_big, c_small)


def test_induced_quotient_full_module_is_trivial():
    setup = order3_genus0(3)
    qmod, qact = ac.induced_quotient_action(setup.action, zk.full_module(3, 6))
    assert qmod.invariants == ()
    assert qmod.size == 1
    assert qact.apply(qact.generator("psi"), ()) == ()


def test_induced_quotient_sec611_action():
    for k in (2, 3, 4):
        setup = order3_genus0(k)
        g = setup.genus
        n2 = zk.span(k, 2 * g, [
            sf.basis_vector(k, g, "a", 3).coords,
            sf.basis_vector(k, g, "b", 1).coords,
            sf.basis_vector(k, g, "b", 2).coords,
            sf.basis_vector(k, g, "b", 3).coords,
        ])
        qmod, qact = ac.induced_quotient_action(setup.action, n2)
        assert qmod.invariants == (k, k)
        pa1 = qmod.project(sf.basis_vector(k, g, "a", 1).coords)
        pa2 = qmod.project(sf.basis_vector(k, g, "a", 2).coords)
        mat = qact.generator("psi")
        assert qact.apply(mat, pa1) == pa2
        assert qact.apply(mat, pa2) == qmod.neg(qmod.add(pa1, pa2))


def test_induced_quotient_by_bg_line_free_cyclic():
    setup = sf.free_cyclic_action(2, 1, 3)
    g = setup.genus
    line = zk.span(3, 2 * g, [setup.defect.coords])
    qmod, qact = ac.induced_quotient_action(setup.action, line)
    assert qmod.invariants == (3,) * (2 * g - 1)
    # induced map still cycles the images of a_1 and a_2
    pa1 = qmod.project(sf.basis_vector(3, g, "a", 1).coords)
    pa2 = qmod.project(sf.basis_vector(3, g, "a", 2).coords)
    assert qact.apply(qact.generator("psi"), pa1) == pa2
    assert qact.apply(qact.generator("psi"), pa2) == pa1


def test_induced_matrices_satisfy_relator_identities():
    setup = s3_genus4(3)
    g = setup.genus
    n = zk.span(3, 2 * g, [
        sf.basis_vector(3, g, "a", 4).coords,
        sf.basis_vector(3, g, "b", 1).coords,
        sf.basis_vector(3, g, "b", 2).coords,
        sf.basis_vector(3, g, "b", 3).coords,
    ])
    qmod, qact = ac.induced_quotient_action(setup.action, n)
    r, h = qact.generator("r"), qact.generator("h")
    for q in [qmod.project(v) for v in all_vectors(3, 2 * g)[:30]]:
        r3 = qact.apply(r, qact.apply(r, qact.apply(r, q)))
        h2 = qact.apply(h, qact.apply(h, q))
        rh = qact.apply(r, qact.apply(h, q))
        rhrh = qact.apply(r, qact.apply(h, rh))
        assert r3 == q and h2 == q and rhrh == q


def test_induced_quotient_requires_invariance():
    setup = order3_genus0(3)
    g = setup.genus
    n1 = zk.span(3, 2 * g, [sf.basis_vector(3, g, "a", 1).coords])
    with pytest.raises(ac.NotInvariant):
        ac.induced_quotient_action(setup.action, n1)


def identity_action(k, n):
    return ac.Action(zk.Modulus(k), n, ("e",), (zk.MatrixZk.identity(k, n),))


def test_enumerate_identity_index2():
    subs = ac.enumerate_invariant_subgroups(
        identity_action(2, 2), ac.EnumConstraints(quotient_invariants=(2,))
    )
    assert len(subs) == 3
    assert subs == tuple(sorted(subs, key=lambda s: s.rows))


def test_enumerate_sec741_counts():
    setup = s3_genus4(3)
    subs = ac.enumerate_invariant_subgroups(
        setup.action, ac.EnumConstraints(quotient_invariants=(3,))
    )
    assert len(subs) == 40
    bg = sf.basis_vector(3, 4, "b", 4)
    with_bg = [s for s in subs if zk.contains(s, bg)]
    assert len(with_bg) == 13
    assert all(zk.quotient_invariants(s) == (3,) for s in subs)
    contained = ac.enumerate_invariant_subgroups(
        setup.action,
        ac.EnumConstraints(quotient_invariants=(3,), contains_vectors=(bg,)),
    )
    assert len(contained) == 13
    assert [s.rows for s in contained] == [s.rows for s in with_bg]
    excluded = ac.enumerate_invariant_subgroups(
        setup.action,
        ac.EnumConstraints(quotient_invariants=(3,), excludes_vectors=(bg,)),
    )
    assert len(excluded) == 27


def test_enumerate_matches_exhaustive_oracle():
    act = small_test_action()
    k, n = 3, 4
    sets = all_invariant_subgroups(act, k, n)
    index3 = {s for s in sets if len(s) == k ** (n - 1)}
    subs = ac.enumerate_invariant_subgroups(act, ac.EnumConstraints(quotient_invariants=(3,)))
    assert {frozenset(subgroup_as_set(s)) for s in subs} == index3
    rows = [s.rows for s in subs]
    assert rows == sorted(rows) and len(set(rows)) == len(rows)
    # tower route must agree on the same constraint set
    towers = ac._enumerate_towers(act, ac.EnumConstraints(quotient_invariants=(3,)))
    assert [s.rows for s in towers] == rows


def test_enumerate_budget_exceeded():
    setup = s3_genus4(3)
    with pytest.raises(ac.BudgetExceeded) as info:
        ac.enumerate_invariant_subgroups(
            setup.action, ac.EnumConstraints(quotient_invariants=(3,), budget=100)
        )
    assert info.value.candidates == 3280


def test_enumerate_workers_match_sequential():
    setup = s3_genus4(3)
    seq = ac.enumerate_invariant_subgroups(
        setup.action, ac.EnumConstraints(quotient_invariants=(3,))
    )
    par = ac.enumerate_invariant_subgroups(
        setup.action, ac.EnumConstraints(quotient_invariants=(3,)), workers=2
    )
    assert [s.rows for s in seq] == [s.rows for s in par]
