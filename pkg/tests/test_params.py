import math

import pytest
from hypothesis import given, strategies as st

from photokam.errors import DomainError
from photokam.params import (C_D_DEFAULT, SystemParams, derive_params, drag_strength,
                             load_config, parse_config)

mus = st.floats(1e-6, 0.5)
q1s = st.floats(1e-3, 1.0)
a2s = st.one_of(st.just(0.0), st.floats(1e-12, 1.0))


def test_classical_limit():
    p = derive_params(0.01, 1.0, 0.0, C_D_DEFAULT)
    assert (p.eps, p.w1, p.n, p.delta) == (0.0, 0.0, 1.0, 1.0)
    assert p.gamma == pytest.approx(0.98, abs=1e-15)
    assert p.is_classical


def test_drag_strength_value():
    p = derive_params(0.01, 0.99)
    assert p.eps == pytest.approx(0.01, abs=1e-15)
    assert p.w1 == pytest.approx(0.99 * 0.01 / 299792458, rel=1e-12)
    assert p.w1 == pytest.approx(3.3023e-11, rel=1e-4)


def test_mean_motion_with_oblateness():
    assert derive_params(0.01, 1.0, 0.01).n == pytest.approx(1.0074720, abs=1e-7)


@pytest.mark.parametrize("kwargs", [
    dict(mu=0.0), dict(mu=-0.1), dict(mu=0.51), dict(mu=0.1, q1=1.01),
    dict(mu=0.1, q1=0.0), dict(mu=0.1, a2=-1e-9), dict(mu=0.1, c_d=0.0),
    dict(mu=float("nan")), dict(mu=0.1, a2=float("inf")),
])
def test_rejects_out_of_domain(kwargs):
    with pytest.raises(DomainError):
        derive_params(**kwargs)


def test_mu_half_allowed():
    assert derive_params(0.5).gamma == 0.0


@given(mus, q1s, a2s)
def test_invariants(mu, q1, a2):
    p = derive_params(mu, q1, a2)
    assert p.w1 >= 0
    assert (p.w1 == 0) == (q1 == 1.0)
    assert p.n >= 1 and (p.n == 1) == (a2 == 0)
    assert 0 <= p.gamma < 1


@given(mus, q1s, a2s)
def test_rederive_is_bitwise_identical(mu, q1, a2):
    p = derive_params(mu, q1, a2)
    again = derive_params(p.mu, p.q1, p.a2, p.c_d)
    assert again.as_dict() == p.as_dict()
    assert p.replace() == p


@given(mus, st.floats(1e-6, 0.25))
def test_w1_linear_in_eps(mu, s):
    assert drag_strength(mu, 1 - 2 * s) == pytest.approx(2 * drag_strength(mu, 1 - s), rel=1e-13)


def test_frozen():
    p = derive_params(0.1)
    with pytest.raises(AttributeError):
        p.mu = 0.2


def test_replace_revalidates():
    with pytest.raises(DomainError):
        derive_params(0.1).replace(q1=2.0)
    assert isinstance(derive_params(0.1).replace(a2=0.1), SystemParams)


def test_parse_config(tmp_path):
    text = "# comment\nmu = 0.01\nq1=0.98  # inline\n\na2=0.001\ncd=1e4\n"
    cfg = parse_config(text)
    assert cfg == {"mu": 0.01, "q1": 0.98, "a2": 0.001, "c_d": 1e4}
    path = tmp_path / "run.cfg"
    path.write_text(text)
    assert load_config(path) == cfg
    assert derive_params(**cfg).w1 == pytest.approx(0.99 * 0.02 / 1e4)


@pytest.mark.parametrize("text", ["speed=3", "mu", "mu=abc"])
def test_parse_config_errors(text):
    with pytest.raises(DomainError):
        parse_config(text)


def test_default_light_speed():
    assert C_D_DEFAULT == 299792458.0
    assert math.isclose(derive_params(0.2, 0.9).w1, 0.8 * 0.1 / C_D_DEFAULT)
