import mpmath
import numpy as np
import pytest
from hypothesis import given, settings

from lambdaelim import LambdaParams, ReducedParams, State3, reduce
from lambdaelim.exact import (
    build_hamiltonian,
    characteristic_polynomial,
    characteristic_roots,
    companion_roots,
    decompose,
    eigenfrequencies,
    exact_propagator,
    propagate_exact,
)

from conftest import expm_propagator, halving_ratios, lambda_params, ode_oracle, random_params


def mp_roots(red):
    """Roots of the characteristic cubic at 50 digits, sorted like the package."""
    mpmath.mp.dps = 50
    e = mpmath.mpf(red.epsilon)
    s = mpmath.mpf(red.signed_lam)
    wa = mpmath.mpf(abs(red.lambda_a)) ** 2
    wb = mpmath.mpf(abs(red.lambda_b)) ** 2
    coeffs = [1, -1, -(s**2 + wa + wb) * e**2, s**2 * e**2 + s * e**3 * (wa - wb)]
    r = sorted(float(mpmath.re(x)) for x in mpmath.polyroots(coeffs, maxsteps=200, extraprec=200))
    k3 = int(np.argmin([abs(x - 1) for x in r]))
    return np.array([x for i, x in enumerate(r) if i != k3] + [r[k3]])


def test_hamiltonian_entries(ref):
    h = build_hamiltonian(ref)
    assert h[0, 2] == pytest.approx(0.05 * np.exp(1j * np.pi / 3), abs=1e-16)
    assert h[2, 0] == pytest.approx(0.05 * np.exp(-1j * np.pi / 3), abs=1e-16)
    assert h[2, 2] == 1.0
    assert h[0, 1] == h[1, 0] == 0
    np.testing.assert_allclose(h, h.conj().T, atol=0)


def test_hamiltonian_trivial_cases():
    np.testing.assert_array_equal(build_hamiltonian(LambdaParams(0, 1, 0, 0)), np.diag([0, 0, 1]))
    h = build_hamiltonian(LambdaParams(0.2, 1, 0.1, 0))
    assert h[0, 0] == pytest.approx(-0.1) and h[1, 1] == pytest.approx(0.1)


def test_roots_decoupled_limit():
    red = ReducedParams(0.05, 0.0, 0.0, 0.0)
    np.testing.assert_array_equal(characteristic_roots(red), [0.0, 0.0, 1.0])
    np.testing.assert_array_equal(eigenfrequencies(LambdaParams(0, 1, 0, 0)), [0.0, 0.0, 1.0])


def test_roots_against_high_precision_cubic(ref):
    red = reduce(ref)
    x = characteristic_roots(red)
    np.testing.assert_allclose(x, mp_roots(red), rtol=0, atol=1e-12)
    np.testing.assert_allclose(x, companion_roots(red), rtol=0, atol=1e-12)
    assert abs(x[0] + 0.05) <= 2.5e-3 * 1.1  # -lam eps + O(eps^2)
    assert abs(x[2] - 1) <= 2.5e-3 * 2.1


@settings(max_examples=100, deadline=None)
@given(lambda_params())
def test_vieta_and_reality(p):
    red = reduce(p)
    x = characteristic_roots(red)
    assert x.dtype.kind == "f"
    e, s = red.epsilon, red.signed_lam
    wa, wb = abs(red.lambda_a) ** 2, abs(red.lambda_b) ** 2
    assert x.sum() == pytest.approx(1.0, abs=1e-12)
    assert x[0] * x[1] + x[0] * x[2] + x[1] * x[2] == pytest.approx(-(s * s + wa + wb) * e * e, abs=1e-12)
    assert np.prod(x) == pytest.approx(-(s * s) * e * e - s * e**3 * (wa - wb), abs=1e-12)
    assert x[0] <= x[1]


def test_zero_root_at_zero_detuning():
    for oa, ob in [(0.1, 0.05j), (0.03, 0.1), (0.1 * np.exp(0.3j), 0.07)]:
        x = characteristic_roots(reduce(LambdaParams(0.0, 1.0, oa, ob)))
        assert abs(x[1]) <= 1e-14
        assert x[0] < 0


def test_characteristic_polynomial_coefficients(ref):
    c = characteristic_polynomial(reduce(ref))
    np.testing.assert_allclose(c, [1, -1, -0.0075, 0.0025], rtol=1e-14)


def test_decompose_boundary_conditions(ref, ref_initial):
    d = decompose(ref, ref_initial)
    np.testing.assert_allclose(d.coefficients.sum(axis=1), ref_initial.to_array(), atol=1e-12)


def test_decompose_eigenstate_initial():
    d = decompose(LambdaParams(0, 1, 0, 0), State3(0, 0, 1))
    np.testing.assert_allclose(d.C, [0, 0, 1], atol=0)
    np.testing.assert_allclose(d.coefficients[:2], 0, atol=0)


def test_decompose_dark_state_has_no_excited_component():
    oa, ob = 0.08 * np.exp(0.4j), 0.1 * np.exp(-1.1j)
    p = LambdaParams(0.0, 1.0, oa, ob)
    for a0, b0 in [(1, 0), (0, 1), (np.sqrt(0.3), np.sqrt(0.7) * 1j)]:
        d = decompose(p, State3(a0, b0))
        assert abs(d.C[1]) <= 1e-15
    # eigenvector of the zero root is (Ob, -Oa, 0) up to a phase
    v = decompose(p, State3(1, 0)).eigenvectors[:, 1]
    dark = np.array([ob, -oa, 0]) / np.hypot(abs(oa), abs(ob))
    assert abs(abs(np.vdot(dark, v)) - 1) <= 1e-14


def test_excited_mode_amplitude_leading_order(ref, ref_initial):
    res = []
    for f in (1, 0.5, 0.25):
        p = ref.scaled(f)
        red = reduce(p)
        c3 = decompose(p, ref_initial).C[2]
        pred = (red.lambda_a * ref_initial.alpha + red.lambda_b * ref_initial.beta) * red.epsilon
        res.append(abs(c3 - pred))
    r = halving_ratios(res)
    assert np.all(np.abs(r / 4 - 1) <= 0.25), r


def test_propagation_at_zero_returns_initial(ref, ref_initial):
    tr = propagate_exact(decompose(ref, ref_initial), [0.0])
    np.testing.assert_allclose(tr.amplitudes[0], ref_initial.to_array(), atol=1e-15)


def test_far_detuned_two_level_bound():
    p = LambdaParams(0.0, 1.0, 0.05, 0.0)
    t = np.linspace(0, 200, 2001)
    tr = propagate_exact(decompose(p, State3(1, 0)), t)
    ref = ode_oracle(p, [1, 0, 0], t)
    np.testing.assert_allclose(tr.amplitudes, ref, atol=1e-8)
    assert np.max(np.abs(tr.gamma) ** 2) <= (0.05) ** 2 * (1 + 0.1)


def test_fig2_matches_ode_oracle(ref, ref_initial):
    t = np.linspace(0, 200, 2001)
    tr = propagate_exact(decompose(ref, ref_initial), t)
    ref = ode_oracle(ref, ref_initial.to_array(), t)
    assert np.max(np.abs(tr.amplitudes - ref)) <= 1e-8
    assert tr.max_norm_error <= 1e-12


def test_random_parameters_match_ode_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = random_params(rng)
        phi = rng.uniform(0, 2 * np.pi)
        init = State3(np.cos(0.4), np.sin(0.4) * np.exp(1j * phi))
        t = np.linspace(0, 200 / abs(p.big_delta), 201)
        tr = propagate_exact(decompose(p, init), t)
        ref = ode_oracle(p, init.to_array(), t)
        assert np.max(np.abs(tr.amplitudes - ref)) <= 1e-8
        assert tr.max_norm_error <= 1e-12


def test_exact_propagator_matches_expm(ref):
    for t in (0.0, 1.0, 37.5, 200.0):
        np.testing.assert_allclose(exact_propagator(ref, t), expm_propagator(ref, t), atol=1e-12)
    u = exact_propagator(ref, np.array([1.0, 2.0]))
    assert u.shape == (2, 3, 3)


def test_root_leading_orders_ratio_test(ref):
    res = {"x1": [], "x2": [], "x3": []}
    for f in (2, 1, 0.5):  # eps = 0.1, 0.05, 0.025
        p = ref.scaled(f)
        red = reduce(p)
        x = characteristic_roots(red)
        res["x1"].append(x[0] + red.lam * red.epsilon)
        res["x2"].append(x[1] - red.lam * red.epsilon)
        res["x3"].append(x[2] - 1)
    for name, r in res.items():
        ratios = halving_ratios(r)
        assert np.all(np.abs(ratios / 4 - 1) <= 0.25), (name, ratios)


def test_negative_detuning_relabeling():
    # delta < 0 is the delta > 0 problem with a and b exchanged
    p = LambdaParams(-0.1, 1.0, 0.08j, 0.1)
    q = LambdaParams(0.1, 1.0, 0.1, 0.08j)
    np.testing.assert_allclose(eigenfrequencies(p), eigenfrequencies(q), atol=1e-15)
    x = eigenfrequencies(p)
    assert x[0] == pytest.approx(-0.05, abs=2.5e-3 * 2)
