#-----------------------------------------------------------------------------+
# test_cm_numerics.py
#-----------------------------------------------------------------------------+
import json, random, pytest
import mpmath
from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from model.cm_numerics import *
from model.efmodelerrors import *
from model.eta_quotients import EtaQuotient, eta_quotient_series, g04

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

def _close(x, y, exponent: int) -> bool:
    x, y = mpmath.mpc(x), mpmath.mpc(y)
    return abs(x - y) <= mpmath.mpf(10) ** -exponent * max(1, abs(x))

#-----------------------------------------------------------------------------+
#region ImagQuadOrder and BigComplex
def test_fundamental_discriminants():
    assert [d for d in range(-24, 0) if is_fundamental_discriminant(d)] == \
        [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
    assert not is_fundamental_discriminant(5)

def test_imag_quad_order():
    order = ImagQuadOrder(-7, 12)
    assert (order.B, order.C) == (1, 2)
    assert (ImagQuadOrder(-4).B, ImagQuadOrder(-4).C) == (0, 1)
    assert (ImagQuadOrder(-8).B, ImagQuadOrder(-8).C) == (0, 2)
    assert order.with_conductor(4) == ImagQuadOrder(-7, 4)
    data = json.loads(order.to_json())
    assert data == {"d_K": -7, "conductor": 12, "B": 1, "C": 2}
    assert ImagQuadOrder.from_dict(data) == order
    with pytest.raises(NotFundamental):
        ImagQuadOrder(-12)
    with pytest.raises(InvalidOrder):
        ImagQuadOrder(-7, 0)
    with pytest.raises(TypeError):
        ImagQuadOrder(-7.0)

def test_big_complex():
    with mpmath.workdps(60):
        x = BigComplex.from_mpc(mpmath.mpc(1, 2), 60)
        y = BigComplex.from_mpc(mpmath.mpc("0.5"), 80)
    z = x * y + 1
    assert z.precision == 80 and complex(z) == pytest.approx(1.5 + 1j)
    assert complex(-x) == pytest.approx(-1 - 2j) and float(abs(x)) == pytest.approx(5 ** 0.5)
    assert x.real_part().im == 0
    data = json.loads(x.to_json())
    assert data["digits"] == 60 and BigComplex.from_dict(data) == x
    with pytest.raises(ValueError):
        BigComplex.from_mpc(1, 20)
#endregion ImagQuadOrder and BigComplex
#-----------------------------------------------------------------------------+
#region precision and reduction
def test_precision_ladder():
    assert precision_ladder() == (300, 450, 700)
    assert precision_ladder(450) == (450, 700)
    assert precision_ladder(100) == (100, 250, 500)
    with pytest.raises(ValueError):
        precision_ladder(10)

def test_tau_point():
    with mpmath.workdps(80):
        tau = tau_point(ImagQuadOrder(-7), 60).value
        assert _close(tau, mpmath.mpc(-1, mpmath.sqrt(7)) / 2, 55)
        assert _close(tau ** 2 + tau + 2, 0, 55), "tau_K is not a root of X^2 + X + 2"
        assert _close(tau_point(ImagQuadOrder(-4), 60).value, 1j, 55)

def test_reduce_to_fundamental_domain():
    rng = random.Random(7)
    with mpmath.workdps(40):
        for _ in range(20):
            tau = mpmath.mpc(rng.uniform(-3, 3), rng.uniform(0.01, 2))
            tau_red, gamma = reduce_to_fundamental_domain(tau)
            assert gamma.det() == 1 and _close(gamma.act(tau), tau_red, 25)
            assert abs(tau_red.real) <= 0.5 + 1e-20 and abs(tau_red) >= 1 - 1e-20
    with pytest.raises(NonPositiveImaginaryPart):
        reduce_to_fundamental_domain(mpmath.mpc(0, -1))
#endregion precision and reduction
#-----------------------------------------------------------------------------+
#region eta and j
def test_eta_at_i():
    with mpmath.workdps(120):
        expected = mpmath.gamma(mpmath.mpf(1) / 4) / (2 * mpmath.pi ** (mpmath.mpf(3) / 4))
        assert _close(eval_eta(1j, 100).value, expected, 95)

def test_eta_transformations():
    tau = mpmath.mpc("0.13", "0.37")
    with mpmath.workdps(80):
        eta = eval_eta(tau, 60).value
        shifted = eval_eta(tau + 1, 60).value
        assert _close(shifted, mpmath.expjpi(mpmath.mpf(1) / 12) * eta, 55)
        inverted = eval_eta(-1 / tau, 60).value
        assert _close(inverted, mpmath.sqrt(-1j * tau) * eta, 55)
        direct = eval_eta(tau, 60, reduce=False).value
        assert _close(direct, eta, 50), "direct and reduced eta disagree"
    with pytest.raises(ValueError):
        eval_eta(mpmath.mpc("0.1", "0.0001"), 60, reduce=False)
    with pytest.raises(NonPositiveImaginaryPart):
        eval_eta(mpmath.mpc(0, 0), 60)

def test_eta_translation_phase():
    tau = mpmath.mpc("0.21", "0.9")
    with mpmath.workdps(80):
        eta = eval_eta(tau, 60).value
        for n in (1, 2, 5, -3, 13):
            ratio = eval_eta(tau + n, 60).value / eta
            assert _close(ratio, mpmath.expjpi(mpmath.mpf(n) / 12), 55), \
                f"eta(tau + {n}) / eta(tau) = {mpmath.nstr(ratio, 10)}"
        # points that reduce through several translations and inversions
        for z in (mpmath.mpc("3.7", "0.05"), mpmath.mpc("-2.45", "0.3")):
            assert _close(eval_eta(z, 60).value, eval_eta(z, 60, reduce=False).value, 45), \
                f"reduced and direct eta disagree at {z}"

def test_eval_j_special_values():
    with mpmath.workdps(80):
        assert _close(eval_j(1j, 60).value, 1728, 50)
        assert _close(eval_j(tau_point(ImagQuadOrder(-3), 60), 60).value, 0, 50)
        assert _close(eval_j(tau_point(ImagQuadOrder(-7), 60), 60).value, -3375, 50)
        assert _close(eval_j(tau_point(ImagQuadOrder(-8), 60), 60).value, 8000, 50)

def test_eval_series_matches_eta_quotient():
    tau = mpmath.mpc("0.2", "1.5")
    series = eta_quotient_series(g04(), 60)
    with mpmath.workdps(80):
        assert _close(eval_series(series, tau, 60).value,
                      eval_eta_quotient(g04(), tau, 60).value, 40)
#endregion eta and j
#-----------------------------------------------------------------------------+
#region class invariant
def test_invariant_quotient():
    assert invariant_quotient(12) == EtaQuotient(12, {3: -8, 12: 8})
    assert invariant_quotient(4).weight == 0
    with pytest.raises(ConductorNotDivisibleBy4):
        invariant_quotient(6)

def test_class_invariant_is_real():
    value = class_invariant(ImagQuadOrder(-7, 12), 100)
    assert value.im == 0 and value.precision == 100
    assert realness_holds(value, 100)
    with pytest.raises(ConductorNotDivisibleBy4):
        class_invariant(ImagQuadOrder(-7, 6), 60)

def test_class_invariant_is_fourth_power():
    order = ImagQuadOrder(-7, 12)
    with mpmath.workdps(100):
        tau0 = 3 * tau_point(order, 100).value
        x = 4 * eval_eta_quotient(EtaQuotient(4, {1: -2, 4: 2}), tau0, 80).value
        assert _close(class_invariant(order, 80).value, x ** 4, 70)
#endregion class invariant
#-----------------------------------------------------------------------------+
