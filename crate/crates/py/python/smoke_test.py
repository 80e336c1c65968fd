"""Smoke test for the dini_py extension module.

Build and install it first:

    pip install --no-build-isolation -e crates/py

then run ``python crates/py/python/smoke_test.py``.
"""

import json
import math

import dini_py


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    for x in (0.3, 1.0, 7.5, 29.0):
        pref = math.sqrt(2.0 / (math.pi * x))
        assert close(dini_py.dini(0.5, x), pref * x * math.cos(x), 1e-12)
        g, gp = dini_py.g_pair(0.5, x)
        assert close(g, math.sin(x), 1e-12)
        assert close(gp, math.cos(x), 1e-12)

    table = dini_py.zero_table(0.5, 5)
    assert len(table) == 5
    for n in range(1, 6):
        assert abs(table.zero(n) - (2 * n - 1) * math.pi / 2) < 1e-11
    assert abs(dini_py.bessel_zero(0.0, 1) - 2.404825557695773) < 1e-12

    for nu in (-0.5, 0.0, 1.0, 2.0):
        enc = dini_py.rayleigh_enclosure(nu, 1, 1e-7)
        assert dini_py.eta2_exact(nu) in enc
        assert enc.width() <= 1e-7

    value, coefficients, remainder = dini_py.logderiv_power_series(0.5, 0.5, 40)
    assert abs(value - (0.5 - 0.5 * math.tan(0.5))) <= remainder + 1e-12
    assert abs(coefficients[1] - 1.0 / 6.0) < 1e-8
    assert abs(coefficients[2] - 1.0 / 15.0) < 1e-8

    report = dini_py.eta_check(0.0)
    assert report.passed and report.verdict == "PASS"
    assert report.params["closed_form"] == 0.75
    assert dini_py.PropertyReport.from_json(report.to_json()) == report
    assert json.loads(report.to_json())["verdict"] == "PASS"

    assert dini_py.trig_case(0.2, 0.5).passed
    assert dini_py.log_concavity("g_prime", 1.0, component=1).passed

    rows = dini_py.figure_data()
    assert len(rows) == 500 and rows[0] == (0.0, 0.0, 0.0)

    suite = dict(dini_py.report_suite(nu_grid=[0.0, 1.0], mu_offsets=[0.0], grid_points=6, pairs=10))
    assert all(r.passed for r in suite.values()), {k: r.verdict for k, r in suite.items()}

    try:
        dini_py.dini(-1.5, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("order below -1 must raise ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
