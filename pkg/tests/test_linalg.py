"""Dense linear algebra over F_p used by the module enumeration."""

from hypothesis import given, settings, strategies as st

from ihall import linalg


def rand_matrix(draw, rows, cols, p):
    return tuple(
        tuple(draw(st.integers(min_value=0, max_value=p - 1)) for _ in range(cols))
        for _ in range(rows)
    )


matrices = st.integers(min_value=2, max_value=3).flatmap(
    lambda p: st.tuples(
        st.just(p),
        st.integers(min_value=0, max_value=4),
        st.integers(min_value=0, max_value=4),
    ).flatmap(
        lambda t: st.tuples(
            st.just(t[0]),
            st.lists(
                st.lists(
                    st.integers(min_value=0, max_value=t[0] - 1),
                    min_size=t[2],
                    max_size=t[2],
                ).map(tuple),
                min_size=t[1],
                max_size=t[1],
            ).map(tuple),
        )
    )
)


def test_rref_fixed_example():
    rows, pivots = linalg.rref([(1, 1, 0), (0, 1, 2)], 3)
    assert pivots == (0, 1)
    assert rows == ((1, 0, 1), (0, 1, 2))


@given(matrices)
@settings(max_examples=80)
def test_rref_is_idempotent(pm):
    p, mat = pm
    rows, pivots = linalg.rref(mat, p)
    again, piv2 = linalg.rref(rows, p)
    assert rows == again and pivots == piv2
    assert len(rows) == linalg.rank(mat, p)


@given(matrices)
@settings(max_examples=80)
def test_nullspace_annihilates(pm):
    p, mat = pm
    ns = linalg.nullspace(mat, p)
    cols = len(mat[0]) if mat else 0
    assert len(ns) == cols - linalg.rank(mat, p) if mat else ns == ()
    for v in ns:
        out = linalg.mat_vec(mat, v, p)
        assert all(x == 0 for x in out)


def test_inverse_roundtrip():
    m = ((1, 2), (1, 1))
    inv = linalg.inverse(m, 3)
    assert linalg.mat_mul(m, inv, 3) == linalg.identity(2)


def test_gl_order():
    assert linalg.gl_order(0, 2) == 1
    assert linalg.gl_order(2, 2) == 6
    assert linalg.gl_order(3, 2) == 168
    assert linalg.gl_order(2, 3) == 48


def test_gl_generators_generate():
    # closure of the generators reaches the full group at small size
    p, d = 3, 2
    gens = linalg.gl_generators(d, p)
    seen = {linalg.identity(d)}
    frontier = [linalg.identity(d)]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = linalg.mat_mul(g, cur, p)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    assert len(seen) == linalg.gl_order(d, p)


def test_subspace_count_matches_enumeration():
    for n, k, p in [(3, 1, 2), (3, 2, 2), (4, 2, 2), (3, 1, 3)]:
        listed = list(linalg.enumerate_rref_bases(n, k, p))
        assert len(listed) == linalg.subspace_count(n, k, p)
        assert len(set(listed)) == len(listed)


# frozen counts of d x d matrices with E^2 = 0, checked against a dense scan
SQ0_COUNTS = {
    (0, 2): 1,
    (1, 2): 1,
    (2, 2): 4,
    (3, 2): 22,
    (0, 3): 1,
    (2, 3): 9,
    (3, 3): 105,
    (4, 3): 7281,
}


def test_square_zero_counts():
    for (d, p), want in SQ0_COUNTS.items():
        mats = linalg.square_zero_matrices(d, p)
        assert len(mats) == want
        assert len(set(mats)) == want


def test_square_zero_dense_crosscheck():
    from itertools import product

    for d, p in [(2, 2), (2, 3), (3, 2)]:
        dense = set()
        for flat in product(range(p), repeat=d * d):
            m = tuple(tuple(flat[i * d : (i + 1) * d]) for i in range(d))
            if all(
                x == 0 for row in linalg.mat_mul(m, m, p) for x in row
            ):
                dense.add(m)
        assert dense == set(linalg.square_zero_matrices(d, p))


def test_quotient_data_dimensions():
    # quotient of F_2^3 by a line has dimension 2
    amb = linalg.identity(3)
    sub, piv = linalg.rref([(1, 1, 0)], 2)
    reps, project = linalg.quotient_data(amb, (0, 1, 2), sub, 2)
    assert len(reps) == 2
    img = project((1, 1, 0))
    assert all(x == 0 for x in img)
