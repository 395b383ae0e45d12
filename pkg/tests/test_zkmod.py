import random

import pytest

from homolift import zkmod as zk
from oracles import all_vectors, brute_span


def rows_of(*rows):
    return tuple(tuple(r) for r in rows)


def test_modulus_rejects_one_and_negative():
    with pytest.raises(ValueError):
        zk.Modulus(1)
    with pytest.raises(ValueError):
        zk.Modulus(-2)
    assert not zk.Modulus(0).finite
    assert zk.Modulus(7).finite


def test_howell_identity_over_z5():
    s = zk.span(5, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert s.rows == rows_of((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert s.is_full()


def test_howell_z4_subgroup_of_order_four():
    s = zk.span(4, 2, [(2, 0), (0, 2)])
    assert s.rows == rows_of((2, 0), (0, 2))
    assert zk.subgroup_order(s) == 4
    assert len(brute_span([(2, 0), (0, 2)], 2, 4)) == 4


def test_howell_z6_span_equality():
    s1 = zk.span(6, 2, [(1, 1), (0, 3)])
    s2 = zk.span(6, 2, [(1, 4), (0, 3)])
    assert brute_span([(1, 1), (0, 3)], 2, 6) == brute_span([(1, 4), (0, 3)], 2, 6)
    assert s1.rows == s2.rows


def test_howell_idempotent_random():
    rng = random.Random(7)
    for _ in range(200):
        k = rng.choice([2, 3, 4, 5, 6, 8, 9])
        n = rng.randint(1, 4)
        rows = [[rng.randrange(k) for _ in range(n)] for _ in range(rng.randint(1, 4))]
        s = zk.span(k, n, rows)
        assert zk.span(k, n, s.rows).rows == s.rows


def test_howell_canonical_vs_bruteforce_random():
    rng = random.Random(11)
    for _ in range(250):
        k = rng.choice([2, 3, 4, 5, 6])
        n = rng.randint(1, 3)
        r1 = [[rng.randrange(k) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        r2 = [[rng.randrange(k) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        s1, s2 = zk.span(k, n, r1), zk.span(k, n, r2)
        assert (s1.rows == s2.rows) == (brute_span(r1, n, k) == brute_span(r2, n, k))
        assert brute_span(s1.rows or [(0,) * n], n, k) == brute_span(r1, n, k)
        assert zk.subgroup_order(s1) == len(brute_span(r1, n, k))


def test_hermite_over_z():
    s = zk.span(0, 2, [(2, 0), (0, 2), (1, 1)])
    assert s.rows == rows_of((1, 1), (0, 2))
    assert zk.quotient_invariants(s) == (2,)
    t = zk.span(0, 2, [(1, 1), (2, 0)])
    assert t.rows == s.rows


def test_hermite_free_quotient_reports_zero():
    s = zk.span(0, 3, [(1, 0, 0)])
    assert zk.quotient_invariants(s) == (0, 0)


def test_solve_identity_trivial():
    a = zk.MatrixZk.identity(7, 3)
    b = zk.vector(7, (2, 5, 6))
    sol = zk.solve_linear(a, b)
    assert sol.particular.coords == b.coords
    assert sol.kernel.is_trivial()


def test_solve_3x_mod9():
    a = zk.MatrixZk(zk.Modulus(9), ((3,),))
    assert zk.solve_linear(a, zk.vector(9, (1,))) is None
    sol = zk.solve_linear(a, zk.vector(9, (6,)))
    sols = {(sol.particular.coords[0] + c * sol.kernel.rows[0][0]) % 9 for c in range(9)}
    assert sols == {2, 5, 8}
    assert brute_span(sol.kernel.rows, 1, 9) == {(0,), (3,), (6,)}


def test_solve_properties_random():
    rng = random.Random(23)
    for _ in range(150):
        k = rng.choice([2, 3, 4, 6])
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        a = zk.MatrixZk(zk.Modulus(k), tuple(
            tuple(rng.randrange(k) for _ in range(n)) for _ in range(m)
        ))
        b = zk.vector(k, [rng.randrange(k) for _ in range(m)])
        expected = [
            v for v in all_vectors(k, n)
            if a.apply(zk.vector(k, v)).coords == b.coords
        ]
        sol = zk.solve_linear(a, b)
        if sol is None:
            assert expected == []
        else:
            assert a.apply(sol.particular).coords == b.coords
            kernel_set = brute_span(sol.kernel.rows, n, k)
            assert len(kernel_set) == len(expected)
            assert {
                tuple((sol.particular.coords[i] + d[i]) % k for i in range(n))
                for d in kernel_set
            } == set(expected)


def test_solve_dimension_and_modulus_errors():
    a = zk.MatrixZk.identity(4, 2)
    with pytest.raises(zk.DimensionMismatch):
        zk.solve_linear(a, zk.vector(4, (1, 2, 3)))
    with pytest.raises(zk.ModulusMismatch):
        zk.solve_linear(a, zk.vector(5, (1, 2)))


def test_intersect_idempotent():
    s = zk.span(6, 3, [(2, 1, 0), (0, 3, 3)])
    assert zk.subgroup_intersect(s, s).rows == s.rows


def test_sum_intersect_quotient_z4():
    s1 = zk.span(4, 2, [(1, 0)])
    s2 = zk.span(4, 2, [(0, 1)])
    assert zk.subgroup_intersect(s1, s2).is_trivial()
    assert zk.subgroup_sum(s1, s2).is_full()
    assert zk.quotient_invariants(s1) == (4,)


def test_sec41_n1_quotient_is_z4():
    # g = 3, k = 4: N_1 = <a_1, a_2, a_3, b_2, b_1 b_3^2>
    n1 = zk.span(4, 6, [
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 0, 1, 0, 2),
    ])
    assert zk.quotient_invariants(n1) == (4,)


def test_lattice_laws_exhaustive_small():
    for k, n in ((2, 3), (3, 2)):
        subgroups = []
        seen = set()
        for v1 in all_vectors(k, n):
            for v2 in all_vectors(k, n):
                s = zk.span(k, n, [v1, v2])
                if s.rows not in seen:
                    seen.add(s.rows)
                    subgroups.append(s)
        for s1 in subgroups:
            for s2 in subgroups:
                assert zk.subgroup_sum(s1, s2).rows == zk.subgroup_sum(s2, s1).rows
                assert zk.subgroup_intersect(s1, s2).rows == zk.subgroup_intersect(s2, s1).rows
                assert zk.subgroup_sum(s1, zk.subgroup_intersect(s1, s2)).rows == s1.rows
                assert zk.subgroup_intersect(s1, zk.subgroup_sum(s1, s2)).rows == s1.rows


def test_order_times_quotient_order():
    rng = random.Random(3)
    for _ in range(100):
        k = rng.choice([2, 3, 4, 5, 6, 8])
        n = rng.randint(1, 3)
        s = zk.span(k, n, [[rng.randrange(k) for _ in range(n)] for _ in range(2)])
        quotient = 1
        for d in zk.quotient_invariants(s):
            quotient *= d
        assert zk.subgroup_order(s) * quotient == k**n


def test_contains_and_membership():
    s = zk.span(4, 2, [(2, 0), (0, 1)])
    assert zk.contains(s, zk.vector(4, (2, 3)))
    assert not zk.contains(s, zk.vector(4, (1, 0)))
    members = brute_span(s.rows, 2, 4)
    for v in all_vectors(4, 2):
        assert zk.contains(s, zk.vector(4, v)) == (v in members)


def test_subgroup_order_infinite_error():
    s = zk.span(0, 2, [(1, 0)])
    with pytest.raises(zk.InfiniteOrder):
        zk.subgroup_order(s)
    assert zk.subgroup_order(zk.trivial_subgroup(0, 2)) == 1


def test_rank_mismatch_errors():
    s1 = zk.span(4, 2, [(1, 0)])
    s2 = zk.span(4, 3, [(1, 0, 0)])
    with pytest.raises(zk.RankMismatch):
        zk.subgroup_sum(s1, s2)
    with pytest.raises(zk.ModulusMismatch):
        zk.subgroup_sum(s1, zk.span(5, 2, [(1, 0)]))


def test_matrix_inverse_and_power():
    m = zk.MatrixZk(zk.Modulus(5), ((2, 1), (1, 1)))
    inv = m.inverse()
    assert (m @ inv).rows == zk.MatrixZk.identity(5, 2).rows
    assert m.power(0).rows == zk.MatrixZk.identity(5, 2).rows
    singular = zk.MatrixZk(zk.Modulus(4), ((2, 0), (0, 1)))
    assert not singular.is_invertible()


def test_relative_quotient_invariants_sec41():
    n1 = zk.span(4, 6, [
        (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 1, 0), (0, 0, 0, 1, 0, 2),
    ])
    n2 = zk.span(4, 6, [
        (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 2, 0, 0), (0, 0, 0, 0, 2, 0), (0, 0, 0, 1, 1, 2),
    ])
    assert zk.subgroup_contains(n1, n2)
    assert zk.quotient_invariants(n2) == (2, 4)
    assert zk.relative_quotient_invariants(n1, n2) == (2,)
    with pytest.raises(zk.ZkmodError):
        zk.relative_quotient_invariants(n2, n1)


def test_smith_normal_form_diag():
    diag = zk.smith_normal_form([(2, 4, 4), (-6, 6, 12), (10, 4, 16)], 3)
    assert diag == (2, 2, 156)
    assert diag[0] and diag[1] and diag[2] % diag[1] == 0 and diag[1] % diag[0] == 0


def test_quotient_module_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        k = rng.choice([2, 3, 4, 6])
        n = rng.randint(1, 3)
        s = zk.span(k, n, [[rng.randrange(k) for _ in range(n)] for _ in range(2)])
        qm = zk.QuotientModule.from_subgroup(s)
        sizes = 1
        for d in qm.invariants:
            sizes *= d
        assert sizes == qm.size
        for v in all_vectors(k, n)[:20]:
            q = qm.project(v)
            assert qm.project_vector(qm.lift(q)) == q
        # kernel of projection is exactly the subgroup
        members = brute_span(s.rows, n, k)
        for v in all_vectors(k, n):
            assert (qm.project(v) == qm.zero()) == (v in members)
