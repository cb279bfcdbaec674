import math

import orlicz_lab as ol


def test_young_eval():
    a = ol.YoungParams(2.0, 0.0)
    assert ol.young_eval(a, 3.0) == 9.0
    b = ol.YoungParams(2.0, 1.0)
    assert abs(ol.young_eval(b, 1.0) - math.log(math.e + 1.0)) < 1e-12
    assert abs(ol.young_inverse(a, 9.0) - 3.0) < 1e-9


def test_conjugate_of_square():
    a = ol.YoungParams(2.0, 0.0)
    assert abs(ol.conjugate_eval(a, 2.0) - 1.0) < 1e-9


def test_luxemburg_matches_lp_for_pure_powers():
    dom = ol.interval(0.0, 1.0, 200)
    f = [math.sin(3.0 * x) + 1.5 for x in dom.nodes]
    lux = ol.luxemburg_norm(dom, f, ol.YoungParams(2.0, 0.0)).value
    assert abs(lux - ol.lp_norm(dom, f, 2.0)) < 1e-8


def test_poisson_solve_hits_analytic_max():
    dom = ol.radial_ball(3, 1.0, 201, placement="vertex")
    u = ol.solve_dirichlet(dom, [1.0] * len(dom))
    assert abs(u[0] - 1.0 / 6.0) < 1e-3


def test_exponent_identities():
    beta, b, b_bar, p, gamma = ol.exponent_triple(3.0, 0.5)
    assert abs(gamma - 1.0) < 1e-12
    assert abs(1.0 / b + 1.0 / b_bar + 1.0 / p - 1.0) < 1e-12
    assert abs(beta - 0.125) < 1e-14
    assert abs(b - 5.25) < 1e-13
    assert abs(b_bar - 1.35) < 1e-13


def test_induction_verifier():
    tau0 = ol.tau0_threshold(1.0, 2.0 / 1.5 - 1.0)
    holds, first_fail = ol.induction_verify(2.0, 10000, 3.0, 2.0, tau0, 1.0)
    assert holds and first_fail == -1


def test_indicator_norm_closed_case():
    assert abs(ol.indicator_norm(ol.YoungParams(2.0, 0.0), 1.0) - 0.5) < 1e-9
