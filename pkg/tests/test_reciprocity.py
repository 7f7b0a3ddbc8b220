#-----------------------------------------------------------------------------+
# test_reciprocity.py
#-----------------------------------------------------------------------------+
import json, logging, random, pytest
import mpmath
from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from model.cm_numerics import BigComplex, ImagQuadOrder, class_invariant, invariant_quotient
from model.efmodelconstants import RC_REFERENCE_POLYS
from model.efmodelerrors import *
from model.eta_quotients import EtaQuotient, g04, h_quotient
from model.reciprocity import *

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

DISCS = (-3, -4, -7, -8, -15, -20, -23)

def _gamma(order: ImagQuadOrder, t: int, s: int) -> Mat2:
    return Mat2(t - order.B * s, -order.C * s, s, t, order.conductor)

#-----------------------------------------------------------------------------+
#region class numbers and degrees
def test_class_number():
    expected = {-3: 1, -4: 1, -7: 1, -8: 1, -15: 2, -20: 2, -23: 3, -163: 1, -47: 5}
    for d, h in expected.items():
        assert class_number(d) == h, f"h({d}) = {class_number(d)}, expected {h}"
    with pytest.raises(NotFundamental):
        class_number(-12)
    with pytest.raises(NotFundamental):
        class_number(5)

def test_kronecker_symbol():
    assert [kronecker_symbol(-7, p) for p in (2, 3, 5, 7, 11)] == [1, -1, -1, 0, 1]
    assert kronecker_symbol(-8, 2) == 0 and kronecker_symbol(-3, 2) == -1
    assert kronecker_symbol(-23, 2) == 1

def test_degree_formula():
    assert degree_formula(ImagQuadOrder(-7, 12)) == 8
    assert degree_formula(ImagQuadOrder(-8, 4)) == 4
    assert degree_formula(ImagQuadOrder(-4, 2)) == 1
    assert degree_formula(ImagQuadOrder(-3, 2)) == 1
    assert degree_formula(ImagQuadOrder(-23, 1)) == 3
    for d in (-7, -8, -15):
        for m in (3, 4, 5):
            assert relative_degree(ImagQuadOrder(d), m) == 2, f"[H_2^{m} : H_2^{m - 1}] for d={d}"
#endregion class numbers and degrees
#-----------------------------------------------------------------------------+
#region W and cosets
def test_build_W_and_kernel():
    order = ImagQuadOrder(-7, 12)
    W = build_W(order)
    assert W[0] == Mat2.identity(12), "t = 0 gives no units for d_K = -7"
    assert all(g.is_unit() for g in W) and len(set(W)) == len(W)
    assert kernel_matrices(order) == [Mat2.identity(12), Mat2(-1, 0, 0, -1, 12)]
    assert len(kernel_matrices(ImagQuadOrder(-4, 8))) == 4
    assert len(kernel_matrices(ImagQuadOrder(-3, 7))) == 6
    assert kernel_matrices(ImagQuadOrder(-4, 4))[2] == Mat2(0, -1, 1, 0, 4)
    with pytest.raises(ValueError):
        build_W(ImagQuadOrder(-7, 1))

def test_w_closure():
    for d in (-3, -4, -7, -8):
        for N in (2, 4, 6, 8, 12):
            assert w_closure_check(ImagQuadOrder(d, N)), f"W not closed for d={d}, N={N}"

def test_coset_count_matches_degree():
    for d in DISCS:
        for N in (2, 3, 4, 5, 6, 8, 12):
            order = ImagQuadOrder(d, N)
            reps = coset_reps(order)
            assert len(reps) * class_number(d) == degree_formula(order), \
                f"{len(reps)} cosets for d={d}, N={N}"

def test_coset_reps_shape():
    order = ImagQuadOrder(-7, 12)
    reps = coset_reps(order)
    assert reps[0] == (1, Mat2.identity(12)), "identity coset comes first"
    gammas = [Mat2(1, 0, 0, d, 12) * alpha for d, alpha in reps]
    for (d, alpha), g in zip(reps, gammas):
        assert alpha.det() == 1 and g.det() == d
    for i, g in enumerate(gammas):
        for h in gammas[i + 1:]:
            assert not same_coset(order, g, h), f"{g} and {h} share a coset"
    for t, s in ((1, 2), (1, 4)):
        target = _gamma(order, t, s)
        assert sum(same_coset(order, g, target) for g in gammas) == 1, \
            f"gamma({t},{s}) is not covered exactly once"
    d, alpha = sl2_part(_gamma(order, 1, 2))
    assert d == 7 and alpha == Mat2(11, 8, 2, 7, 12)
    d, _ = sl2_part(_gamma(order, 1, 4))
    assert d == 5
#endregion W and cosets
#-----------------------------------------------------------------------------+
#region SL2 lifting
def test_sl2_lift_examples():
    assert sl2_lift(Mat2(11, 8, 2, 7, 12)) == Mat2(-1, -4, 2, 7)
    assert sl2_lift(Mat2(1, 0, 6, 1, 12)) == Mat2(1, 0, 6, 1)
    assert sl2_lift(Mat2(11, 0, 0, 11, 12)) == Mat2(-1, 0, 0, -1)
    lift = sl2_lift(Mat2(5, 0, 0, 5, 12))
    assert lift.det() == 1 and lift.reduce(12) == Mat2(5, 0, 0, 5, 12)
    assert sl2_lift(Mat2(2, 1, 1, 1)) == Mat2(2, 1, 1, 1)

def test_sl2_lift_random():
    rng = random.Random(5)
    for _ in range(40):
        N = rng.choice([4, 8, 12, 16, 24])
        a, b, c = rng.randrange(N), rng.randrange(N), rng.randrange(N)
        d = rng.randrange(N)
        alpha = Mat2(a, b, c, d, N)
        if alpha.det() != 1:
            continue
        lift = sl2_lift(alpha)
        assert lift.modulus == 0 and lift.det() == 1, f"lift of {alpha} is {lift}"
        assert lift.reduce(N) == alpha

def test_sl2_lift_errors():
    with pytest.raises(NotUnimodular):
        sl2_lift(Mat2(2, 0, 0, 1, 12))
    with pytest.raises(NotUnimodular):
        sl2_lift(Mat2(2, 0, 0, 1))
#endregion SL2 lifting
#-----------------------------------------------------------------------------+
#region Galois orbits and minimal polynomials
def test_conjugates_of_invariant():
    order = ImagQuadOrder(-7, 12)
    orbit = invariant_orbit(order, 60)
    assert orbit.degree == 8 and len(orbit.reps) == 8
    first = orbit.values[0].value
    with mpmath.workdps(60):
        assert abs(first - class_invariant(order, 60).value) < mpmath.mpf(10) ** -40
    data = json.loads(orbit.to_json())
    assert set(data) == {"d_K", "N", "degree", "reps", "values"}
    assert data["reps"][0] == [1, [[1, 0], [0, 1]]]
    with pytest.raises(LevelMismatch):
        conjugates_of_invariant(ImagQuadOrder(-7, 8), invariant_quotient(12), 60)
    with pytest.raises(ValueError):
        conjugates_of_invariant(order, EtaQuotient(12, {1: 2, 2: 2}), 60)

EXAMPLE_POLY = (1, 64, 2365, 56176, 1025614, 13744576, 99275140, 263731264, 1)

def test_min_poly_example(caplog):
    order = ImagQuadOrder(-7, 12)
    report = min_poly_from_orbit(invariant_orbit(order, 120), 120)
    assert report.degree == 8 and report.coeffs == EXAMPLE_POLY, f"coeffs {report.coeffs}"
    assert report.trace_check, "trace differs from minus the second coefficient"
    assert mpmath.mpf(report.max_rounding_residual) < mpmath.mpf(10) ** -60
    # the printed reference carries 5617 where 56176 is computed
    assert RC_REFERENCE_POLYS[(-7, 12)][3] == 5617
    app_logger = ef_logging_setup(EF_APP_NAME)
    app_logger.propagate = True
    caplog.set_level(logging.WARNING)
    try:
        assert reference_check(order, report.coeffs) is False
    finally:
        app_logger.propagate = False
    assert "differs from the reference" in caplog.text and "56176" in caplog.text
    assert reference_check(ImagQuadOrder(-7, 4), (1, 2)) is None
    data = json.loads(report.to_json())
    assert data["degree"] == 8 and len(data["poly"]) == 9 and data["digits"] == 120
    assert MinPolyReport.from_dict(data) == report

def test_min_poly_rounding_failure():
    order = ImagQuadOrder(-7, 12)
    with mpmath.workdps(60):
        half = BigComplex.from_mpc(mpmath.mpc("0.5"), 60)
    orbit = GaloisOrbit(order, ((1, Mat2.identity()),), (half,))
    with pytest.raises(RoundingFailure) as info:
        min_poly_from_orbit(orbit, 60)
    assert info.value.digits == 60 and info.value.advised_digits == 210
    with pytest.raises(ValueError):
        GaloisOrbit(order, (), (half,))

def test_min_poly_quadratic_orbit():
    report = min_poly_from_orbit(invariant_orbit(ImagQuadOrder(-7, 4), 60), 60)
    assert report.degree == 2 and report.coeffs[0] == 1

@pytest.mark.slow
def test_stable_min_poly_example():
    order = ImagQuadOrder(-7, 12)
    report = stable_min_poly(order, digits=300)
    assert report.stable and report.degree == 8 and report.coeffs[0] == 1
    assert report.coeffs == EXAMPLE_POLY and report.reference_match is False
    with mpmath.workdps(20):
        assert mpmath.mpf(report.max_rounding_residual) < mpmath.mpf(10) ** -150
#endregion Galois orbits and minimal polynomials
#-----------------------------------------------------------------------------+
#region sign flip and integrality
@pytest.mark.slow
@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("d_K", [-7, -8])
def test_sign_flip_grid(m, d_K):
    order = ImagQuadOrder(d_K, 2 ** m)
    residual, size = sign_flip_residual(m, order, 300)
    with mpmath.workdps(300):
        assert size > mpmath.mpf(10) ** -10, f"h_{m}(tau_K) vanishes for d_K={d_K}"
        assert residual < mpmath.mpf(10) ** -150 * max(1, size), \
            f"m={m}, d_K={d_K}: residual {mpmath.nstr(residual, 5)}"
    assert verify_sign_flip(m, order, 300)

def test_verify_sign_flip():
    assert verify_sign_flip(3, ImagQuadOrder(-7, 8), 60)
    assert verify_sign_flip(4, ImagQuadOrder(-8, 16), 60)
    with pytest.raises(LevelMismatch):
        verify_sign_flip(3, ImagQuadOrder(-7, 12), 60)
    with pytest.raises(ValueError):
        verify_sign_flip(2, ImagQuadOrder(-7, 4), 60)
    assert sign_flip_matrix(ImagQuadOrder(-7), 3) in build_W(ImagQuadOrder(-7, 8))

def test_integrality_power():
    assert integrality_power(4) == 4 and integrality_power(2) == 12
    with pytest.raises(ValueError):
        integrality_power(1)

def test_integrality_check():
    report = integrality_check(2, ImagQuadOrder(-4), 60)
    assert report.k == 12 and report.poly == (1,) + (0,) * 11 + (-8,), f"P_x = {report.poly}"
    assert report.monic_integral and report.norm_divides
    report = integrality_check(4, ImagQuadOrder(-7), 80)
    assert report.k == 4 and len(report.poly) == 9
    assert report.monic_integral and report.norm_divides, f"report {report.to_dict()}"
    data = json.loads(report.to_json())
    assert data["degree"] == 8 and IntegralityReport.from_dict(data) == report
#endregion sign flip and integrality
#-----------------------------------------------------------------------------+
