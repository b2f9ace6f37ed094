import pytest

from pvp.fields import SHIFT, Q_DILATION, parse_ratfunc
from pvp.matrices import (
    BlockLowerTriangular,
    BlockMatrix,
    DimensionError,
    Jet,
    SingularMatrixError,
    SqMatrix,
    binomial,
    block_to_jet,
    jet_inv,
    jet_mul,
    jet_to_block,
    mat_delta,
    mat_det,
    mat_inv,
    mat_mul,
    mat_sigma,
)
from pvp.selftest import random_constant_matrix, random_jet, random_matrix


def M(rows, spec=SHIFT):
    return SqMatrix(tuple(tuple(parse_ratfunc(spec, e) for e in r) for r in rows))


def test_det_identity():
    assert mat_det(SqMatrix.identity(2, SHIFT.field.one)) == 1


def test_inv_diagonal():
    assert mat_inv(M([["x", "0"], ["0", "1"]])) == M([["1/x", "0"], ["0", "1"]])


def test_inv_round_trip(spec, rng):
    for m in (1, 2, 3):
        a = random_matrix(spec, rng, m, degree=2, den_degree=1)
        assert mat_mul(a, mat_inv(a)) == SqMatrix.identity(m, spec.field.one)


def test_det_matches_cofactor_expansion(spec, rng):
    def cofactor(a):
        m = a.dim
        if m == 1:
            return a[0, 0]
        total = a.zero
        for j in range(m):
            minor = SqMatrix(tuple(tuple(a[i, k] for k in range(m) if k != j) for i in range(1, m)))
            total = total + (-1) ** j * a[0, j] * cofactor(minor)
        return total

    for m in (1, 2, 3, 4):
        a = SqMatrix(tuple(tuple(random_matrix(spec, rng, 1, 1)[0, 0] for _ in range(m)) for _ in range(m)))
        assert a.det() == cofactor(a)


def test_det_needs_row_swap():
    a = M([["0", "1"], ["1", "0"]])
    assert a.det() == -1


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        mat_inv(M([["x", "x"], ["1", "1"]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(M([["x"]]), M([["1", "0"], ["0", "1"]]))
    with pytest.raises(DimensionError):
        SqMatrix(((1, 2),))


def test_mat_sigma_delta_examples():
    assert mat_delta(SHIFT, M([["x", "1"], ["0", "x^2"]])) == M([["1", "0"], ["0", "2*x"]])
    assert mat_sigma(SHIFT, M([["x"]])) == M([["x + 1"]])
    assert mat_delta(SHIFT, M([["x^2"]]), times=2) == M([["2"]])


def test_mat_sigma_delta_commute(spec, rng):
    a = random_matrix(spec, rng, 2, degree=2, den_degree=1)
    assert mat_sigma(spec, mat_delta(spec, a)) == mat_delta(spec, mat_sigma(spec, a))


def test_mul_associative(spec, rng):
    a, b, c = (random_matrix(spec, rng, 2, degree=1, den_degree=1) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_jet_mul_order_one(rng):
    b = random_jet(SHIFT, rng, 2, 1)
    c = random_jet(SHIFT, rng, 2, 1)
    prod = jet_mul(b, c)
    b0, b1 = b.terms
    c0, c1 = c.terms
    assert prod.terms == (b0 * c0, b1 * c0 + b0 * c1)


def test_unit_is_identity(rng):
    c = random_jet(SHIFT, rng, 2, 1)
    unit = Jet.unit(1, 2, SHIFT.field.one)
    assert jet_mul(unit, c) == c == jet_mul(c, unit)


def test_jet_associativity_order_two(spec, rng):
    b, c, d = (random_jet(spec, rng, 2, 2) for _ in range(3))
    # expand ((BC)D)^(2) by hand from the Leibniz rule
    B, C, D = b.terms, c.terms, d.terms
    expected_top = (
        B[2] * C[0] * D[0] + B[0] * C[2] * D[0] + B[0] * C[0] * D[2]
        + (B[1] * C[1] * D[0] + B[1] * C[0] * D[1] + B[0] * C[1] * D[1]).scale(2)
    )
    left = jet_mul(jet_mul(b, c), d)
    assert left == jet_mul(b, jet_mul(c, d))
    assert left.terms[2] == expected_top


def test_jet_inv_order_one(rng):
    b = random_jet(SHIFT, rng, 2, 1)
    b0, b1 = b.terms
    b0i = b0.inv()
    assert jet_inv(b).terms == (b0i, -(b0i * b1 * b0i))


def test_jet_inv_unit():
    unit = Jet.unit(3, 2, SHIFT.field.one)
    assert jet_inv(unit) == unit


def test_jet_inv_round_trip(spec, rng):
    b = random_jet(spec, rng, 2, 2)
    unit = Jet.unit(2, 2, spec.field.one)
    assert jet_mul(b, jet_inv(b)) == unit == jet_mul(jet_inv(b), b)


def test_jet_inv_singular():
    zero = SqMatrix.zeros(1, SHIFT(0))
    with pytest.raises(SingularMatrixError):
        jet_inv(Jet((zero, zero)))


def test_jet_shape_errors(rng):
    with pytest.raises(DimensionError):
        jet_mul(random_jet(SHIFT, rng, 2, 1), random_jet(SHIFT, rng, 2, 2))
    with pytest.raises(DimensionError):
        jet_mul(random_jet(SHIFT, rng, 1, 1), random_jet(SHIFT, rng, 2, 1))


def test_jet_to_block_order_one(rng):
    b = random_jet(SHIFT, rng, 2, 1)
    blk = jet_to_block(b)
    zero = SqMatrix.zeros(2, SHIFT(0))
    assert blk.blocks == ((b.terms[0], zero), (b.terms[1], b.terms[0]))


def test_jet_to_block_order_three_row():
    one = SHIFT.field.one
    terms = tuple(SqMatrix(((one * (k + 2),),)) for k in range(4))
    blk = jet_to_block(Jet(terms))
    # bottom row: B''', 3B'', 3B', B
    assert [blk.block(3, c)[0, 0] for c in range(4)] == [5, 12, 9, 2]


def test_jet_to_block_unit():
    unit = Jet.unit(2, 2, SHIFT.field.one)
    assert jet_to_block(unit).flatten() == SqMatrix.identity(6, SHIFT.field.one)


def test_block_homomorphism_and_injectivity(spec, rng):
    for n in range(4):
        b, c = random_jet(spec, rng, 2, n), random_jet(spec, rng, 2, n)
        assert jet_to_block(jet_mul(b, c)) == jet_to_block(b) * jet_to_block(c)
        assert block_to_jet(jet_to_block(b)) == b


def test_constant_jet_behaves_as_matrix(rng):
    a = random_constant_matrix(SHIFT, rng, 2)
    b = random_constant_matrix(SHIFT, rng, 2)
    prod = jet_mul(Jet.constant(a, 2), Jet.constant(b, 2))
    assert prod == Jet.constant(a * b, 2)


def test_block_lower_triangular_invariants():
    one = SHIFT.field.one
    eye = SqMatrix.identity(1, one)
    zero = SqMatrix.zeros(1, one - one)
    with pytest.raises(DimensionError):
        BlockLowerTriangular(((eye, eye), (zero, eye)))
    with pytest.raises(DimensionError):
        BlockLowerTriangular(((eye, zero), (zero, eye.scale(2))))
    assert not BlockMatrix(((eye, eye), (zero, eye))).is_lower_triangular()


def test_binomial():
    assert [binomial(4, k) for k in range(5)] == [1, 4, 6, 4, 1]


def test_json_round_trip(rng):
    b = random_jet(Q_DILATION, rng, 2, 1)
    fmt = lambda e: str(e)  # noqa: E731
    from pvp.fields import format_ratfunc

    data = b.to_json(lambda e: format_ratfunc(Q_DILATION, e))
    assert data["order"] == 1
    assert Jet.from_json(data, lambda t: parse_ratfunc(Q_DILATION, t)) == b
    with pytest.raises(DimensionError):
        Jet.from_json({"order": 2, "matrices": data["matrices"]}, lambda t: parse_ratfunc(Q_DILATION, t))
