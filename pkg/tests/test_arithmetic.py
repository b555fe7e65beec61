import itertools

import pytest

from arimat.arithmetic import (
    GroupList,
    LabelledGraph,
    MultiplicityTable,
    arith_power,
    classify,
    find_multiplicative_basis,
    full_table,
    gcd_consistency,
    labelled_lift,
    labelled_power,
    labelled_to_list,
    lift,
    multiplicity,
    quotient,
    verify_axioms,
)
from arimat.errors import (
    BadShape,
    HasTorsion,
    LabelledMatroidMismatch,
    LoopEdge,
    NoMultiplicativeBasis,
    NotRegular,
    TooLarge,
)
from arimat.exactmat import Matrix
from arimat.matroid import is_regular

from oracles import (
    col_rank,
    cofactor_det,
    columns,
    gcd_formula_multiplicity,
    lattice_point_multiplicity,
    random_int_matrix,
    random_regular_rank2,
    random_tu_times_scaling,
    seeded,
)

GRAPHIC = [[1, 0, 1], [0, 3, -2]]
K3 = [[1, 1, 1], [0, 2, 4]]
C4 = [[1, 1, 2, 1], [0, 2, 1, 2], [0, 0, 3, 2]]
U24 = [[1, 0, 1, 1], [0, 1, 1, 2]]
Z2_TORSION = GroupList([[1, 0, 1, -1]], [[0, 1, 1, 1]], [2])
TRIANGLE = (0, 1, 2)


def table_from(size, rank, m):
    return MultiplicityTable(size, rank, m)


def m12_table():
    # rank-1 matroid on two parallel elements: m = 1, 6, 6, 1
    return table_from(2, [0, 1, 1, 1], [1, 6, 6, 1])


def triangle(labels, kinds=("regular",) * 3):
    edges = ((0, 1), (1, 2), (0, 2))
    return LabelledGraph(TRIANGLE, tuple((t, h, l, k) for (t, h), l, k in zip(edges, labels, kinds)))


def random_graph(rng):
    nv = rng.randint(2, 4)
    ne = rng.randint(1, 5)
    edges = []
    for _ in range(ne):
        t, h = rng.sample(range(nv), 2)
        edges.append([t, h, rng.randint(1, 4), "regular"])
    if ne > 1 and rng.random() < 0.5:
        edges[rng.randrange(1, ne)][3] = "dotted"
    return LabelledGraph(tuple(range(nv)), tuple(map(tuple, edges)))


class TestGroupList:
    def test_residues_reduced(self):
        gl = GroupList([[1, 0]], [[3, -1]], [2])
        assert gl.torsion_rows == ((1, 1),)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Z2_TORSION.moduli = (3,)

    def test_bad_moduli(self):
        with pytest.raises(BadShape):
            GroupList([[1]], [[1]], [0])
        with pytest.raises(BadShape):
            GroupList([[1]], [[1]], [])

    def test_lift_z2_torsion(self):
        m, y = lift(Z2_TORSION)
        assert m == Matrix([[1, 0, 1, -1, 0], [0, 1, 1, 1, 2]])
        assert y == (4,)

    def test_lift_torsion_free(self):
        m, y = lift(GroupList.from_matrix(Matrix(GRAPHIC)))
        assert m == Matrix(GRAPHIC) and y == ()


class TestMultiplicity:
    def test_k3_examples(self):
        gl = GroupList(K3)
        assert multiplicity(gl, [0, 1]) == 2
        assert multiplicity(gl, [1]) == 1
        assert multiplicity(gl, []) == 1

    def test_z2_torsion(self):
        assert multiplicity(Z2_TORSION, []) == 2
        assert multiplicity(Z2_TORSION, [0]) == 2
        assert full_table(Z2_TORSION).rank_of([0, 1, 2, 3]) == 1

    def test_z2_torsion_pair(self):
        assert multiplicity(Z2_TORSION, [0, 1]) == 1

    def test_z2_torsion_matroids(self):
        # (0, 1 mod 2) has no free part, so it is a loop of the underlying matroid
        t = full_table(Z2_TORSION)
        assert [t.rank_of([e]) for e in range(4)] == [1, 0, 1, 1]
        m, _ = lift(Z2_TORSION)
        assert not is_regular(Matrix([r[:4] for r in m.rows]))

    def test_bases_are_determinants(self):
        rng = seeded(31)
        for _ in range(40):
            d = rng.randint(1, 3)
            rows = random_int_matrix(rng, d, rng.randint(d, 5), -3, 3)
            gl = GroupList(rows)
            for B in itertools.combinations(range(len(rows[0])), d):
                det_b = cofactor_det(columns(rows, B))
                if det_b:
                    assert multiplicity(gl, B) == abs(det_b)

    def test_lattice_points_and_gcd_formula(self):
        rng = seeded(32)
        for _ in range(25):
            d = rng.randint(1, 2)
            n = rng.randint(1, 4)
            rows = random_int_matrix(rng, d, n, -3, 3)
            t = full_table(GroupList(rows))
            for s in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1)):
                if col_rank(rows, s) == 0:
                    continue
                assert t.m_of(s) == gcd_formula_multiplicity(rows, s)
                if col_rank(rows, s) == len(s):
                    assert t.m_of(s) == lattice_point_multiplicity(rows, s)

    def test_torsion_independent(self):
        rng = seeded(33)
        checked = 0
        for _ in range(60):
            d = rng.randint(1, 2)
            n = rng.randint(1, 4)
            q = rng.randint(2, 4)
            free = random_int_matrix(rng, d, n, -3, 3)
            tors = [[rng.randrange(q) for _ in range(n)]]
            gl = GroupList(free, tors, [q])
            free_t = full_table(GroupList(free))
            t = full_table(gl)
            for s in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(d + 1)):
                if col_rank(free, s) == len(s):
                    assert t.m_of(s) == free_t.m_of(s) * q
                    checked += 1
        assert checked > 50

    def test_zero_torsion_rows(self):
        rng = seeded(34)
        for _ in range(40):
            d = rng.randint(1, 2)
            n = rng.randint(1, 4)
            q = rng.randint(2, 4)
            free = random_int_matrix(rng, d, n, -3, 3)
            gl = GroupList(free, [[0] * n], [q])
            free_t = full_table(GroupList(free))
            t = full_table(gl)
            for s in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(d + 1)):
                if col_rank(free, s) == len(s):
                    assert t.m_of(s) == free_t.m_of(s) * q

    def test_empty_set_with_torsion(self):
        gl = GroupList([[1, 2]], [[0, 0], [1, 0]], [2, 3])
        assert multiplicity(gl, []) == 6

    def test_table_cap(self, monkeypatch):
        monkeypatch.setenv("ARIMAT_CAP", "2")
        with pytest.raises(TooLarge):
            full_table(GroupList(K3))


class TestTableProperties:
    def corpus(self):
        rng = seeded(35)
        out = []
        for _ in range(30):
            d = rng.randint(1, 3)
            out.append(GroupList(random_int_matrix(rng, d, rng.randint(d, 5), -3, 3)))
        for _ in range(10):
            n = rng.randint(1, 4)
            q = rng.randint(2, 4)
            out.append(GroupList(random_int_matrix(rng, 1, n, -3, 3), [[rng.randrange(q) for _ in range(n)]], [q]))
        return out

    def test_gcd_consistency_on_representable(self):
        for gl in self.corpus():
            if gl.has_torsion():
                continue
            assert gcd_consistency(full_table(gl)) == []

    def test_axioms_on_representable(self):
        for gl in self.corpus():
            report = verify_axioms(full_table(gl))
            assert report.passed
            assert report.rank_ok

    def test_gcd_consistency_refuses_torsion(self):
        with pytest.raises(HasTorsion):
            gcd_consistency(full_table(Z2_TORSION))

    def test_m12(self):
        t = m12_table()
        (v,) = gcd_consistency(t)
        assert v.subset == (0, 1) and v.m == 1 and v.expected == 6
        assert verify_axioms(t).passed

    def test_trivial_multiplicity(self):
        t = full_table(GroupList(U24))
        ones = MultiplicityTable(4, t.rank, [1] * 16)
        assert gcd_consistency(ones) == []
        assert verify_axioms(ones).passed

    def test_a1_violation(self):
        t = table_from(2, [0, 1, 1, 2], [1, 2, 1, 3])
        report = verify_axioms(t)
        assert not report.passed
        assert any(not c.passed for c in report.a1_checks)

    def test_power_of_table(self):
        t = full_table(GroupList(K3)).power(2)
        assert t == full_table(GroupList([[1, 1, 3], [0, 4, 16]]))

    def test_table_shape(self):
        with pytest.raises(BadShape):
            table_from(2, [0, 1, 1], [1, 1, 1])
        with pytest.raises(BadShape):
            table_from(1, [0, 1], [1, 0])


class TestClassification:
    def test_graphic(self):
        gl = GroupList(GRAPHIC)
        assert find_multiplicative_basis(gl) == (0, 1)
        c = classify(gl)
        assert c.regular and c.weakly_multiplicative and not c.strongly_multiplicative
        assert c.multiplicative_basis == (0, 1)

    def test_k3(self):
        c = classify(GroupList(K3))
        assert c.regular and not c.weakly_multiplicative and not c.strongly_multiplicative

    def test_c4(self):
        c = classify(GroupList(C4))
        assert c.regular and not c.weakly_multiplicative

    def test_u24(self):
        assert not classify(GroupList(U24)).regular

    def test_torsion_refused(self):
        with pytest.raises(HasTorsion):
            find_multiplicative_basis(Z2_TORSION)

    def test_unimodular_is_strong(self):
        c = classify(GroupList([[1, 0, 1], [0, 1, 1]]))
        assert c.strongly_multiplicative and c.weakly_multiplicative

    def test_supplied_lifting(self):
        g = LabelledGraph((0, 1), ((0, 1, 2, "regular"), (0, 1, 3, "dotted")))
        gl = labelled_to_list(g)
        c = classify(gl, labelled_lift(g))
        assert c.lift == "supplied"

    def test_supplied_lifting_mismatch(self):
        with pytest.raises(LabelledMatroidMismatch):
            classify(GroupList(K3), (Matrix(GRAPHIC), ()))


class TestQuotient:
    def test_dotted_example(self):
        gl = quotient([[-2, -3], [2, 3]], [1])
        t = full_table(gl)
        assert t.m_of([]) == 3
        assert t.m_of([0]) == 1

    def test_no_y(self):
        assert quotient([[1, 2]], []) == GroupList([[1, 2]])

    def test_round_trip_through_lift(self):
        rng = seeded(36)
        for _ in range(20):
            n = rng.randint(1, 4)
            q = rng.randint(2, 5)
            gl = GroupList(random_int_matrix(rng, 2, n, -3, 3), [[rng.randrange(q) for _ in range(n)]], [q])
            m, y = lift(gl)
            assert full_table(quotient(m.int_rows(), list(y))) == full_table(gl)


class TestArithPower:
    def test_graphic(self):
        for k in (0, 2, 3):
            out = arith_power(GroupList(GRAPHIC), k)
            assert full_table(out) == full_table(GroupList([[1, 0, 1], [0, 3 ** k, (-2) ** k]]))
        assert arith_power(GroupList(GRAPHIC), 2) == GroupList([[1, 0, 1], [0, 9, 4]])

    def test_identity_power(self):
        assert arith_power(Z2_TORSION, 1) is Z2_TORSION

    def test_k3_no_basis(self):
        with pytest.raises(NoMultiplicativeBasis):
            arith_power(GroupList(K3), 2)

    def test_c4_no_basis(self):
        with pytest.raises(NoMultiplicativeBasis):
            arith_power(GroupList(C4), 2)

    def test_u24_certificate(self):
        with pytest.raises(NotRegular) as e:
            arith_power(GroupList(U24), 2)
        assert e.value.certificate.products == (1, 1, 4)

    def test_z2_torsion_lift_not_regular(self):
        with pytest.raises(NotRegular) as e:
            arith_power(Z2_TORSION, 2)
        assert e.value.certificate is None

    def test_negative_k(self):
        with pytest.raises(ValueError):
            arith_power(GroupList(GRAPHIC), -1)

    def test_random_round_trip(self):
        rng = seeded(37)
        done = 0
        mats = [random_regular_rank2(rng, rng.randint(2, 5)) for _ in range(40)]
        mats += [random_tu_times_scaling(rng, 2, rng.randint(2, 5)) for _ in range(20)]
        for rows in mats:
            gl = GroupList(rows)
            if not classify(gl).weakly_multiplicative:
                with pytest.raises(NoMultiplicativeBasis):
                    arith_power(gl, 2)
                continue
            for k in (0, 2, 3):
                assert full_table(arith_power(gl, k)) == full_table(gl).power(k)
            done += 1
        assert done >= 10

    def test_torsion_round_trip(self):
        rng = seeded(38)
        done = 0
        for _ in range(80):
            n = rng.randint(1, 4)
            q = rng.randint(2, 4)
            gl = GroupList(random_int_matrix(rng, 1, n, -2, 2), [[rng.randrange(q) for _ in range(n)]], [q])
            m, _ = lift(gl)
            if not is_regular(m) or not classify(gl).weakly_multiplicative:
                continue
            for k in (0, 2, 3):
                assert full_table(arith_power(gl, k)) == full_table(gl).power(k)
            done += 1
        assert done >= 10


class TestLabelledGraphs:
    def test_unit_triangle(self):
        t = full_table(labelled_to_list(triangle((1, 1, 1))))
        assert set(t.m) == {1}
        assert t.rank_of([0, 1, 2]) == 2

    def test_labelled_triangle(self):
        t = full_table(labelled_to_list(triangle((1, 2, 3))))
        assert t.m_of([0, 1]) == 2
        assert t.m_of([0, 1, 2]) == 1

    def test_two_vertex_dotted(self):
        g = LabelledGraph((0, 1), ((0, 1, 2, "regular"), (0, 1, 3, "dotted")))
        t = full_table(labelled_to_list(g))
        assert t.m_of([]) == 3 and t.m_of([0]) == 1
        assert full_table(labelled_power(g, 2)).m_of([]) == 9

    def test_power_triangle(self):
        t = full_table(labelled_power(triangle((1, 2, 3)), 2))
        assert t.m_of([0, 1, 2]) == 1
        assert t == full_table(labelled_to_list(triangle((1, 2, 3)))).power(2)

    def test_unit_labels_unchanged(self):
        g = triangle((1, 1, 1))
        assert labelled_power(g, 5) == labelled_to_list(g)

    def test_loop(self):
        with pytest.raises(LoopEdge):
            LabelledGraph((0,), ((0, 0, 1, "regular"),))

    def test_bad_edges(self):
        with pytest.raises(BadShape):
            LabelledGraph((0, 1), ((0, 2, 1, "regular"),))
        with pytest.raises(BadShape):
            LabelledGraph((0, 1), ((0, 1, 0, "regular"),))
        with pytest.raises(BadShape):
            LabelledGraph((0, 1), ((0, 1, 1, "dashed"),))

    def test_random_graphs(self):
        rng = seeded(39)
        for _ in range(40):
            g = random_graph(rng)
            base = full_table(labelled_to_list(g))
            for k in (2, 3):
                assert full_table(labelled_power(g, k)) == base.power(k)
            m, y = labelled_lift(g)
            c = classify(labelled_to_list(g), (m, y))
            assert c.regular and c.strongly_multiplicative
