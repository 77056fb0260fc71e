import math

import pytest

import shankslab as sl


@pytest.fixture(scope="module")
def table():
    return sl.find_zeros(300)


def test_zeta_at_two():
    assert abs(sl.zeta(2.0).real - math.pi**2 / 6) < 1e-12
    assert abs(sl.zeta(2.0, 1).real + 0.9375482543) < 1e-10


def test_first_zero_and_derivative(table):
    assert len(table) == 300
    gammas = table.gammas
    assert abs(gammas[0] - 14.134725141734693) < 1e-9
    assert all(a < b for a, b in zip(gammas, gammas[1:]))
    d = sl.zeta(complex(0.5, gammas[0]), 1)
    assert abs(d.real - 0.7832965119) < 1e-9


def test_verify_and_round_trip(table, tmp_path):
    report = sl.verify_table(table)
    assert report.passed
    for fmt in ("binary", "plain-text"):
        path = tmp_path / f"zeros.{fmt}"
        sl.export_zeros(table, path, fmt)
        back = sl.import_zeros(path, fmt)
        assert back.gammas == table.gammas
        assert back.t_max == table.t_max


def test_broken_table_fails_verification(table):
    gammas = table.gammas
    del gammas[10]
    assert not sl.verify_table(sl.ZeroTable(gammas, table.t_max)).passed


def test_moments_signs(table):
    T = table.t_max
    for n in (1, 2, 3):
        s = sl.discrete_sum(n, table, T)
        assert (s.real > 0) == (n % 2 == 1)
        assert math.copysign(1, sl.leading_term(n, T)) == (1 if n % 2 else -1)
    verdict = sl.shanks_verdict(1, table, T)
    assert verdict.sign_ok and verdict.count == 300


def test_moment_series_fields(table):
    series = sl.moment_series(1, table)
    assert [c.T for c in series] == sorted(c.T for c in series)
    for c in series:
        assert c.fujii is not None
        assert c.residual_leading == c.empirical.real - c.leading
    assert sl.moment_series(2, table, [200.0])[0].fujii is None


def test_landau_gonek_and_chain(table):
    assert sl.landau_gonek(6, table, 500.0).predicted == 0.0
    sieve = sl.SieveTable(5000)
    r = sl.heuristic_chain(1, table, 300.0, sieve)
    assert r.rel_dev_A_B < 1e-9
    assert r.dev_A_S <= r.tail_budget


def test_scatter_csv(table, tmp_path):
    path = tmp_path / "scatter.csv"
    sl.scatter_export(1, table, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,gamma,re,im"
    assert len(lines) == 301


def test_errors(table):
    with pytest.raises(sl.RangeError):
        sl.discrete_sum(1, table, table.t_max + 10)
    with pytest.raises(ValueError):
        sl.leading_term(1, 2 * math.pi)
    with pytest.raises(sl.InsufficientDataError):
        sl.shanks_verdict(1, table, 50.0)
    with pytest.raises(OSError):
        sl.import_zeros("/nonexistent/zeros.ztbl")
    with pytest.raises(ValueError):
        sl.EvalParams(bernoulli_order=0)
